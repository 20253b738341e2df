//! Exact evaluation of `∫_0^1 ∏ B̃_k(a_i x) dx` by splitting `[0, 1]` at the
//! discontinuities of the integrand and integrating one polynomial per cell.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{gcd_list, rational_floor, Rational};
use crate::bernoulli::bernoulli_polynomial;
use crate::error::{Error, Result};
use crate::poly::RationalPolynomial;

/// Bernoulli index shared by every factor together with the frequency
/// multipliers `a_1, ..., a_m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntegralSpec {
    index: usize,
    multipliers: Vec<u64>,
}

impl IntegralSpec {
    pub fn new(index: usize, multipliers: Vec<u64>) -> Result<Self> {
        if index == 0 {
            return Err(Error::usage("Bernoulli index must be at least 1"));
        }
        if multipliers.is_empty() {
            return Err(Error::usage("at least one multiplier is required"));
        }
        if multipliers.contains(&0) {
            return Err(Error::usage("multipliers must be positive"));
        }
        Ok(Self { index, multipliers })
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn multipliers(&self) -> &[u64] {
        &self.multipliers
    }

    pub fn len(&self) -> usize {
        self.multipliers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.multipliers.is_empty()
    }
}

/// Strictly increasing points `0 = p_0 < ... < p_N = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Partition {
    points: Vec<Rational>,
}

impl Partition {
    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    /// Consecutive `(left, right)` pairs.
    pub fn cells(&self) -> impl Iterator<Item = (&Rational, &Rational)> {
        self.points.windows(2).map(|w| (&w[0], &w[1]))
    }
}

/// All `j / a_i` for `0 <= j <= a_i`, sorted and deduplicated.
pub fn breakpoints(spec: &IntegralSpec) -> Partition {
    let mut set = BTreeSet::new();
    for &a in &spec.multipliers {
        let den = BigInt::from(a);
        for j in 0..=a {
            set.insert(Rational::new(BigInt::from(j), den.clone()));
        }
    }
    Partition {
        points: set.into_iter().collect(),
    }
}

/// The integrand on the open cell `(left, right)`: `∏ B_k(a_i x - n_i)` with
/// `n_i = floor(a_i * midpoint)`.
pub fn piece_polynomial(
    spec: &IntegralSpec,
    left: &Rational,
    right: &Rational,
) -> Result<RationalPolynomial> {
    if left >= right {
        return Err(Error::usage(format!("empty cell ({left}, {right})")));
    }
    let bern = bernoulli_polynomial(spec.index);
    Ok(cell_product(&bern, spec, left, right))
}

fn cell_product(
    bern: &RationalPolynomial,
    spec: &IntegralSpec,
    left: &Rational,
    right: &Rational,
) -> RationalPolynomial {
    let mid = (left + right) / Rational::from_integer(2.into());
    let mut product = RationalPolynomial::constant(Rational::from_integer(1.into()));
    for &a in &spec.multipliers {
        let a = Rational::from_integer(a.into());
        let shift = Rational::from_integer(rational_floor(&(&a * &mid)));
        product = &product * &bern.substitute_linear(&a, &shift);
    }
    product
}

/// Exact value of the integral.
pub fn franel_integral(spec: &IntegralSpec) -> Rational {
    let bern = bernoulli_polynomial(spec.index);
    let partition = breakpoints(spec);
    let mut total = Rational::zero();
    for (left, right) in partition.cells() {
        total += cell_product(&bern, spec, left, right).integrate(left, right);
    }
    total
}

/// Same value as [`franel_integral`], computed on the tuple divided by its gcd
/// when the index is odd and the factor count even. Other specs are passed
/// through unchanged.
pub fn franel_integral_normalized(spec: &IntegralSpec) -> Rational {
    if spec.index % 2 == 1 && spec.len().is_multiple_of(2) {
        let g = gcd_list(&spec.multipliers).expect("spec multipliers are positive");
        if g > 1 {
            let reduced = IntegralSpec {
                index: spec.index,
                multipliers: spec.multipliers.iter().map(|a| a / g).collect(),
            };
            return franel_integral(&reduced);
        }
    }
    franel_integral(spec)
}

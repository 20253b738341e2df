//! Truncated reciprocal sums over integer points on a hyperplane, and the
//! exact π-power coefficients predicted for their limits.
//!
//! Sums are truncated to the max-norm box `0 < |u_i| <= U`. Every term
//! `1/u^e` is an integer multiple of `1/D` with `D = lcm(1..U)^e`, so the
//! enumeration runs on scaled big integers and divides once at the end.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Pow, Signed, Zero};
use rayon::prelude::*;

use crate::arith::{rational_to_f64, Rational};
use crate::error::{Error, Result};
use crate::franel::{franel_integral, IntegralSpec};

#[derive(Clone, Debug, PartialEq)]
pub struct LatticeSumResult {
    pub bound: u64,
    pub truncated: Rational,
    pub predicted_coefficient: Rational,
    pub pi_power: u32,
    /// `|truncated - coefficient * π^pi_power|` in double precision.
    pub float_discrepancy: f64,
}

impl LatticeSumResult {
    pub fn predicted_value(&self) -> f64 {
        rational_to_f64(&self.predicted_coefficient) * PI.powi(self.pi_power as i32)
    }

    pub fn relative_error(&self) -> f64 {
        self.float_discrepancy / self.predicted_value().abs()
    }
}

fn check_exponent(exponent: u32) -> Result<()> {
    if exponent.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "exponent must be odd, got {exponent}"
        )));
    }
    Ok(())
}

fn lcm_up_to(bound: u64) -> BigInt {
    (1..=bound).fold(BigInt::one(), |l, j| l.lcm(&BigInt::from(j)))
}

/// `scale / u^e` for `u = -U..=U`, indexed by `u + U`; zero at `u = 0`.
fn scaled_weights(exponent: u32, bound: u64, scale: &BigInt) -> Vec<BigInt> {
    let u_max = bound as i64;
    (-u_max..=u_max)
        .map(|u| {
            if u == 0 {
                BigInt::zero()
            } else {
                scale / Pow::pow(BigInt::from(u), exponent)
            }
        })
        .collect()
}

/// Exact `sum 1/(u_1 ... u_m)^e` over `0 < |u_i| <= bound` with
/// `sum a_i u_i = 0`.
///
/// The first `m - 1` coordinates are folded into a distribution over the
/// partial sum `a_1 u_1 + ... + a_{m-1} u_{m-1}`; the last coordinate is then
/// solved from the constraint.
pub fn truncated_reciprocal_sum(exponent: u32, tuple: &[u64], bound: u64) -> Result<Rational> {
    check_exponent(exponent)?;
    if tuple.len() < 2 {
        return Err(Error::usage("lattice sums need at least two multipliers"));
    }
    if tuple.contains(&0) {
        return Err(Error::usage("multipliers must be positive"));
    }
    if bound == 0 {
        return Err(Error::usage("bound must be positive"));
    }
    let u_max = bound as i64;
    let scale: BigInt = Pow::pow(lcm_up_to(bound), exponent);
    let weights = scaled_weights(exponent, bound, &scale);
    let weight = |u: i64| &weights[(u + u_max) as usize];

    // dist[s + half] holds the scaled weight of partial sum s.
    let a0 = tuple[0] as i64;
    let mut half = a0 * u_max;
    let mut dist = vec![BigInt::zero(); (2 * half + 1) as usize];
    for u in (-u_max..=u_max).filter(|&u| u != 0) {
        dist[(a0 * u + half) as usize] = weight(u).clone();
    }

    for &a in &tuple[1..tuple.len() - 1] {
        let a = a as i64;
        let new_half = half + a * u_max;
        let prev = &dist;
        dist = (0..=2 * new_half)
            .into_par_iter()
            .map(|t| {
                let s = t - new_half;
                let mut acc = BigInt::zero();
                for u in (-u_max..=u_max).filter(|&u| u != 0) {
                    let idx = s - a * u + half;
                    if (0..=2 * half).contains(&idx) {
                        let d = &prev[idx as usize];
                        if !d.is_zero() {
                            acc += d * weight(u);
                        }
                    }
                }
                acc
            })
            .collect();
        half = new_half;
    }

    let last = *tuple.last().unwrap() as i64;
    let mut total = BigInt::zero();
    for u in (-u_max..=u_max).filter(|&u| u != 0) {
        let idx = -last * u + half;
        if (0..=2 * half).contains(&idx) {
            total += &dist[idx as usize] * weight(u);
        }
    }
    let denom: BigInt = Pow::pow(scale, tuple.len() as u32);
    Ok(Rational::new(total, denom))
}

/// `(r, p)` with the full lattice sum equal to `r * π^p`.
///
/// For index `2k+1` and `2n` factors, `r = (-1)^n [2^{2k+1}/(2k+1)!]^{2n} I`
/// and `p = 2n(2k+1)`; the sawtooth case is `k = 0`.
pub fn pi_coefficient(spec: &IntegralSpec) -> Result<(Rational, u32)> {
    let m = spec.len();
    if !m.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "π-power identity needs an even number of factors, got {m}"
        )));
    }
    let index = spec.index();
    if index.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "π-power identity needs an odd Bernoulli index, got {index}"
        )));
    }
    let n = m / 2;
    let factorial: BigInt = (1..=index).map(BigInt::from).product();
    let base = Rational::new(BigInt::one() << index, factorial);
    let mut coeff = Pow::pow(base, m as u32) * franel_integral(spec);
    if n % 2 == 1 {
        coeff = -coeff;
    }
    Ok((coeff, (m * index) as u32))
}

/// One [`LatticeSumResult`] per bound, with `spec.index()` as the exponent.
pub fn convergence_report(spec: &IntegralSpec, bounds: &[u64]) -> Result<Vec<LatticeSumResult>> {
    if bounds.is_empty() {
        return Err(Error::usage("at least one bound is required"));
    }
    if bounds.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::usage("bounds must be strictly increasing"));
    }
    let (coeff, power) = pi_coefficient(spec)?;
    let predicted = rational_to_f64(&coeff) * PI.powi(power as i32);
    bounds
        .iter()
        .map(|&bound| {
            let truncated =
                truncated_reciprocal_sum(spec.index() as u32, spec.multipliers(), bound)?;
            let float_discrepancy = (rational_to_f64(&truncated) - predicted).abs();
            Ok(LatticeSumResult {
                bound,
                truncated,
                predicted_coefficient: coeff.clone(),
                pi_power: power,
                float_discrepancy,
            })
        })
        .collect()
}

/// Exact determinant of a square integer matrix (fraction-free elimination).
pub fn integer_determinant(matrix: &[Vec<i64>]) -> Result<BigInt> {
    let n = matrix.len();
    if matrix.iter().any(|row| row.len() != n) {
        return Err(Error::usage("matrix must be square"));
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut m: Vec<Vec<BigInt>> = matrix
        .iter()
        .map(|row| row.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign = -sign;
                }
                None => return Ok(BigInt::zero()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&m[i][j] * &m[k][k] - &m[i][k] * &m[k][j]) / &prev;
                m[i][j] = v;
            }
        }
        prev = m[k][k].clone();
    }
    Ok(sign * &m[n - 1][n - 1])
}

/// Exact `sum 1/(L_1 ... L_d)^e` where `L_i` is the linear form given by row
/// `i` of a unimodular matrix, over integer points with `0 < |u_j| <= bound`,
/// `sum c_j u_j = 0` and every `L_i != 0`.
pub fn linear_form_truncated_sum(
    matrix: &[Vec<i64>],
    constraint: &[Rational],
    exponent: u32,
    bound: u64,
) -> Result<Rational> {
    check_exponent(exponent)?;
    let d = matrix.len();
    if d < 2 || !d.is_multiple_of(2) {
        return Err(Error::usage(format!(
            "linear-form sums need an even dimension >= 2, got {d}"
        )));
    }
    if constraint.len() != d {
        return Err(Error::usage("constraint length must match the matrix"));
    }
    let det = integer_determinant(matrix)?;
    if det.abs() != BigInt::one() {
        return Err(Error::domain(format!(
            "matrix is not unimodular (det = {det})"
        )));
    }
    if bound == 0 {
        return Err(Error::usage("bound must be positive"));
    }

    let den_lcm = constraint
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let coeffs: Vec<BigInt> = constraint
        .iter()
        .map(|c| (c * Rational::from_integer(den_lcm.clone())).to_integer())
        .collect();
    let pivot = coeffs.iter().rposition(|c| !c.is_zero());
    let u_max = bound as i64;
    let values: Vec<i64> = (-u_max..=u_max).filter(|&u| u != 0).collect();

    let free: Vec<usize> = (0..d).filter(|&j| Some(j) != pivot).collect();
    let mut point = vec![0i64; d];
    let mut total = Rational::zero();
    let mut odometer = vec![0usize; free.len()];
    loop {
        for (slot, &j) in free.iter().enumerate() {
            point[j] = values[odometer[slot]];
        }
        let admissible = match pivot {
            Some(p) => {
                let partial: BigInt = free.iter().map(|&j| &coeffs[j] * point[j]).sum();
                let (q, r) = (-partial).div_rem(&coeffs[p]);
                match i64::try_from(q) {
                    Ok(v) if r.is_zero() && v != 0 && v.abs() <= u_max => {
                        point[p] = v;
                        true
                    }
                    _ => false,
                }
            }
            None => true,
        };
        if admissible {
            let mut product = BigInt::one();
            for row in matrix {
                let form: i64 = row.iter().zip(&point).map(|(a, u)| a * u).sum();
                product *= form;
            }
            if !product.is_zero() {
                total += Rational::new(BigInt::one(), Pow::pow(product, exponent));
            }
        }
        // Advance the odometer.
        let mut slot = 0;
        loop {
            if slot == odometer.len() {
                return Ok(total);
            }
            odometer[slot] += 1;
            if odometer[slot] < values.len() {
                break;
            }
            odometer[slot] = 0;
            slot += 1;
        }
    }
}

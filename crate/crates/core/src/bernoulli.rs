//! Bernoulli numbers and polynomials, periodic Bernoulli functions, power sums,
//! the integrality constants derived from Bernoulli denominators, and
//! classical Dedekind sums.

use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Pow, Zero};

use crate::arith::{fractional_part, Rational};
use crate::error::{Error, Result};
use crate::poly::RationalPolynomial;

/// Memo of Bernoulli numbers and polynomials.
///
/// Both caches only ever grow. Entries are computed under the write lock, so
/// every reader observes the same values no matter which thread filled them.
#[derive(Debug, Default)]
pub struct BernoulliTable {
    numbers: RwLock<Vec<Rational>>,
    polynomials: RwLock<Vec<Arc<RationalPolynomial>>>,
}

impl BernoulliTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide table shared by the free functions of this module.
    pub fn global() -> &'static BernoulliTable {
        static TABLE: OnceLock<BernoulliTable> = OnceLock::new();
        TABLE.get_or_init(BernoulliTable::new)
    }

    /// `B_0, ..., B_n`.
    pub fn numbers(&self, n: usize) -> Vec<Rational> {
        self.ensure_numbers(n);
        self.numbers.read().unwrap()[..=n].to_vec()
    }

    pub fn number(&self, n: usize) -> Rational {
        self.ensure_numbers(n);
        self.numbers.read().unwrap()[n].clone()
    }

    /// `B_n(x)`.
    pub fn polynomial(&self, n: usize) -> Arc<RationalPolynomial> {
        if let Some(p) = self.polynomials.read().unwrap().get(n) {
            return Arc::clone(p);
        }
        let numbers = self.numbers(n);
        let mut polys = self.polynomials.write().unwrap();
        while polys.len() <= n {
            let m = polys.len();
            polys.push(Arc::new(polynomial_from_numbers(m, &numbers)));
        }
        Arc::clone(&polys[n])
    }

    fn ensure_numbers(&self, n: usize) {
        if self.numbers.read().unwrap().len() > n {
            return;
        }
        let mut numbers = self.numbers.write().unwrap();
        // sum_{j=0}^{m} C(m+1, j) B_j = 0, solved for B_m.
        while numbers.len() <= n {
            let m = numbers.len();
            if m == 0 {
                numbers.push(Rational::one());
                continue;
            }
            let row = binomial_row(m + 1);
            let mut acc = Rational::zero();
            for (j, b) in numbers.iter().enumerate() {
                if !b.is_zero() {
                    acc += b * Rational::from_integer(row[j].clone());
                }
            }
            let next = -acc / Rational::from_integer(row[m].clone());
            numbers.push(next);
        }
    }
}

/// `C(n, 0), ..., C(n, n)`.
fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for j in 0..n {
        c = c * BigInt::from(n - j) / BigInt::from(j + 1);
        row.push(c.clone());
    }
    row
}

/// `B_n(x) = sum_j C(n, j) B_j x^{n-j}`.
fn polynomial_from_numbers(n: usize, numbers: &[Rational]) -> RationalPolynomial {
    let row = binomial_row(n);
    let mut coeffs = vec![Rational::zero(); n + 1];
    for j in 0..=n {
        coeffs[n - j] = &numbers[j] * Rational::from_integer(row[j].clone());
    }
    RationalPolynomial::new(coeffs)
}

/// `B_0, ..., B_n` (length `n + 1`).
pub fn bernoulli_numbers(n: usize) -> Vec<Rational> {
    BernoulliTable::global().numbers(n)
}

pub fn bernoulli_number(n: usize) -> Rational {
    BernoulliTable::global().number(n)
}

pub fn bernoulli_polynomial(n: usize) -> Arc<RationalPolynomial> {
    BernoulliTable::global().polynomial(n)
}

/// The periodic Bernoulli function `B_n({x})`. For `n = 1` this is the
/// sawtooth `((x))`, which is `0` at integers rather than `B_1(0) = -1/2`.
pub fn periodic_bernoulli_eval(n: usize, x: &Rational) -> Result<Rational> {
    if n == 0 {
        return Err(Error::usage("periodic Bernoulli index must be at least 1"));
    }
    let frac = fractional_part(x);
    if n == 1 && frac.is_zero() {
        return Ok(Rational::zero());
    }
    Ok(bernoulli_polynomial(n).eval(&frac))
}

/// `1^n + 2^n + ... + (a-1)^n` via `(B_{n+1}(a) - B_{n+1}) / (n+1)`.
pub fn power_sum(n: usize, a: u64) -> Rational {
    let a = Rational::from_integer(a.into());
    let p = bernoulli_polynomial(n + 1);
    (p.eval(&a) - bernoulli_number(n + 1)) / Rational::from_integer((n + 1).into())
}

/// Denominator of `B_{n+1}(x)`; the constant `B` of the even-length
/// sawtooth certificate.
pub fn general_constant_b(n: usize) -> Result<BigUint> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::domain(format!(
            "general constant needs an even n >= 2, got {n}"
        )));
    }
    Ok(bernoulli_polynomial(n + 1).denominator())
}

/// Constants of the odd-index certificate for index `2k+1` and `2n` factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HigherConstants {
    /// lcm of the denominators of `B_{2k+1}(x)` and of `B_{P+a+1}(x) - B_{P+a+1}`
    /// for `1 <= a <= 2k+1`, where `P = (2k+1)(2n-1)`.
    pub beta: BigUint,
    pub big_b: BigUint,
}

pub fn higher_constants(k: usize, n: usize) -> Result<HigherConstants> {
    if k < 1 || n < 1 {
        return Err(Error::domain(format!(
            "higher constants need k >= 1 and n >= 1, got k={k}, n={n}"
        )));
    }
    let index = 2 * k + 1;
    let p = index * (2 * n - 1);

    let mut beta = bernoulli_polynomial(index).denominator();
    for alpha in 1..=index {
        let m = p + alpha + 1;
        beta = beta.lcm(&bernoulli_polynomial(m).without_constant().denominator());
    }

    let beta_pow: BigUint = Pow::pow(&beta, 2 * n as u32);
    // [(2k+1)2n+1]! / [P+1]! as a product of consecutive integers.
    let top = index * 2 * n + 1;
    let ratio = ((p + 2)..=top).fold(BigUint::one(), |acc, j| acc * BigUint::from(j));
    let mut big_b = &ratio * &beta_pow;
    for j in (2 * n + 1)..=(p + 1) {
        big_b = big_b.lcm(&(BigUint::from(j) * &beta_pow));
    }
    Ok(HigherConstants { beta, big_b })
}

/// Classical Dedekind sum `s(h, k) = sum_{n=1}^{k-1} ((hn/k)) ((n/k))`.
pub fn dedekind_sum(h: i64, k: u64) -> Result<Rational> {
    if k == 0 {
        return Err(Error::domain("Dedekind sum needs k >= 1"));
    }
    if h.unsigned_abs().gcd(&k) != 1 {
        return Err(Error::domain(format!("gcd({h}, {k}) != 1")));
    }
    let kk = BigInt::from(k);
    let mut total = Rational::zero();
    for n in 1..k {
        let a = periodic_bernoulli_eval(1, &Rational::new(BigInt::from(h) * n, kk.clone()))?;
        let b = periodic_bernoulli_eval(1, &Rational::new(BigInt::from(n), kk.clone()))?;
        total += a * b;
    }
    Ok(total)
}

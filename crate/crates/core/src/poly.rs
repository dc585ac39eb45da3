//! Exact univariate polynomials.
//!
//! [`IntPoly`] stores an integer-valued polynomial in the binomial basis
//! `C(d, k)`, where integer coefficients are equivalent to integer values.
//! [`QPoly`] is the plain rational monomial basis, used for expansions at
//! infinity.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Generalized binomial `C(x, k) = x (x - 1) ... (x - k + 1) / k!` for any integer `x`.
pub fn gbinom(x: i64, k: usize) -> BigInt {
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for j in 0..k {
        num *= BigInt::from(x - j as i64);
        den *= BigInt::from(j + 1);
    }
    num / den
}

/// Integer-valued polynomial `P(d) = sum_k a_k C(d, k)`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct IntPoly {
    newton: Vec<BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        IntPoly::from_newton(vec![c.into()])
    }

    fn from_newton(mut newton: Vec<BigInt>) -> Self {
        while newton.last().is_some_and(Zero::is_zero) {
            newton.pop();
        }
        IntPoly { newton }
    }

    /// The unique polynomial of degree `< values.len()` taking `values[i]` at `d = i`.
    pub fn from_values(values: &[BigInt]) -> Self {
        IntPoly::from_newton(forward_differences(values))
    }

    /// Interpolate `f` at `d = 0..=degree_bound`.
    pub fn from_fn(degree_bound: usize, f: impl Fn(i64) -> BigInt) -> Self {
        let values: Vec<BigInt> = (0..=degree_bound as i64).map(f).collect();
        IntPoly::from_values(&values)
    }

    /// The polynomial `d -> C(d + shift, k)`.
    pub fn binomial(shift: i64, k: usize) -> Self {
        IntPoly::from_fn(k, |d| gbinom(d + shift, k))
    }

    pub fn is_zero(&self) -> bool {
        self.newton.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.newton.len().checked_sub(1)
    }

    /// Coefficient of `C(d, deg)`; its sign is the sign of the leading term.
    pub fn leading(&self) -> Option<&BigInt> {
        self.newton.last()
    }

    pub fn eval(&self, d: i64) -> BigInt {
        self.newton
            .iter()
            .enumerate()
            .map(|(k, a)| a * gbinom(d, k))
            .sum()
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let n = self.newton.len().max(other.newton.len());
        let coeffs = (0..n)
            .map(|k| {
                self.newton.get(k).cloned().unwrap_or_default()
                    - other.newton.get(k).cloned().unwrap_or_default()
            })
            .collect();
        IntPoly::from_newton(coeffs)
    }

    pub fn to_qpoly(&self) -> QPoly {
        let mut acc = QPoly::zero();
        for (k, a) in self.newton.iter().enumerate() {
            acc = acc.add(&QPoly::shifted_binomial(0, k).scale(&BigRational::from(a.clone())));
        }
        acc
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.to_qpoly(), f)
    }
}

fn forward_differences(values: &[BigInt]) -> Vec<BigInt> {
    let mut row = values.to_vec();
    let mut out = Vec::with_capacity(values.len());
    while !row.is_empty() {
        out.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    out
}

/// Rational polynomial in the monomial basis, `coeffs[j]` multiplying `d^j`.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct QPoly {
    coeffs: Vec<BigRational>,
}

impl QPoly {
    pub fn zero() -> Self {
        QPoly::default()
    }

    pub fn from_coeffs(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        QPoly { coeffs }
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    /// Coefficient of `d^j`, zero past the degree.
    pub fn coeff(&self, j: usize) -> BigRational {
        self.coeffs.get(j).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// `d -> C(d - shift, k)` expanded in powers of `d`.
    pub fn shifted_binomial(shift: i64, k: usize) -> Self {
        let mut coeffs = vec![BigRational::one()];
        for j in 0..k {
            // multiply by (d - shift - j) / (j + 1)
            let root = BigRational::from(BigInt::from(shift + j as i64));
            let scale = BigRational::new(BigInt::one(), BigInt::from(j + 1));
            let mut next = vec![BigRational::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] += c * &scale;
                next[i] -= c * &root * &scale;
            }
            coeffs = next;
        }
        QPoly::from_coeffs(coeffs)
    }

    /// Newton interpolation through `values[i]` at `d = start + i`.
    pub fn interpolate(start: i64, values: &[BigInt]) -> Self {
        let diffs = forward_differences(values);
        let mut acc = QPoly::zero();
        for (k, a) in diffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            acc = acc.add(&QPoly::shifted_binomial(start, k).scale(&BigRational::from(a.clone())));
        }
        acc
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        QPoly::from_coeffs((0..n).map(|j| self.coeff(j) + other.coeff(j)).collect())
    }

    pub fn scale(&self, s: &BigRational) -> QPoly {
        QPoly::from_coeffs(self.coeffs.iter().map(|c| c * s).collect())
    }

    /// Multiply by `d`.
    pub fn shift_up(&self) -> QPoly {
        if self.coeffs.is_empty() {
            return QPoly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(BigRational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        QPoly { coeffs }
    }

    pub fn eval(&self, d: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * d + c;
        }
        acc
    }

    pub fn eval_int(&self, d: i64) -> BigRational {
        self.eval(&BigRational::from(BigInt::from(d)))
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (j, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (j, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "d")?,
                (1, false) => write!(f, "{a}*d")?,
                (_, true) => write!(f, "d^{j}")?,
                (_, false) => write!(f, "{a}*d^{j}")?,
            }
        }
        Ok(())
    }
}

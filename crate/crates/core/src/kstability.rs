//! Donaldson-Futaki data of diagonal test configurations:
//! `F(d) = <c^{(I_d)*}, lambda> / (d P(d))` and its expansion `A0 + A1/d + ...`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::hilbert::{to_u64, HilbertPolynomialSpec};
use crate::ideal::MonomialIdeal;
use crate::monomial::enumerate_monomials;
use crate::poly::QPoly;
use crate::state::OnePS;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FutakiExpansion {
    pub lambda: OnePS,
    pub a0: BigRational,
    pub a1: BigRational,
    /// `d -> <c^{(I_d)*}, lambda>`.
    pub numerator: QPoly,
    /// `d -> d P(d)`.
    pub denominator: QPoly,
    /// First and last degree sampled, held-out degrees included.
    pub sample_window: (u32, u32),
}

impl FutakiExpansion {
    pub fn eval(&self, d: i64) -> BigRational {
        self.numerator.eval_int(d) / self.denominator.eval_int(d)
    }
}

/// `<c^{(I_d)*}, lambda>` together with `dim (S/I)_d`.
pub fn quotient_pairing(ideal: &MonomialIdeal, lambda: &OnePS, d: u32) -> Result<(BigInt, u64)> {
    let r = ideal.r();
    if lambda.weights().len() != r + 1 {
        return Err(Error::Precondition(format!(
            "lambda has {} weights, expected {}",
            lambda.weights().len(),
            r + 1
        )));
    }
    if ideal.max_generator_degree().is_some_and(|g| g > d) {
        return Err(Error::Precondition(format!("d = {d} below a generator degree")));
    }
    let mut coords = vec![0i64; r + 1];
    let mut count = 0u64;
    for m in enumerate_monomials(r, d) {
        if ideal.contains(&m) {
            continue;
        }
        count += 1;
        for (c, e) in coords.iter_mut().zip(m.exps()) {
            *c += *e as i64;
        }
    }
    Ok((lambda.pair(&coords), count))
}

/// `F_{I,lambda}(d)`, with `P(d)` the quotient dimension at `d`.
pub fn futaki_value(ideal: &MonomialIdeal, lambda: &OnePS, d: u32) -> Result<BigRational> {
    let (num, p) = quotient_pairing(ideal, lambda, d)?;
    if p == 0 || d == 0 {
        return Err(Error::Precondition("d P(d) = 0".into()));
    }
    Ok(BigRational::new(num, BigInt::from(p) * d))
}

/// Default first sample degree, `g_P + r + 2`.
pub fn default_dmin(spec: &HilbertPolynomialSpec) -> u32 {
    (spec.gotzmann() + spec.r() as u64 + 2) as u32
}

/// Interpolate the pairing from `r + 3` degrees starting at `d_min`, check it
/// at two more, and expand `pairing / (d P(d))` at infinity.
pub fn futaki_expansion(
    ideal: &MonomialIdeal,
    lambda: &OnePS,
    spec: &HilbertPolynomialSpec,
    d_min: u32,
) -> Result<FutakiExpansion> {
    let r = spec.r();
    if ideal.r() != r {
        return Err(Error::Precondition("ideal and polynomial live in different rings".into()));
    }
    if spec.is_zero() {
        return Err(Error::Precondition("P = 0".into()));
    }
    let d_min = d_min.max(1);
    let samples = r as u32 + 3;
    let last = d_min + samples + 1;
    let mut values = Vec::with_capacity(samples as usize + 2);
    for d in d_min..=last {
        let (num, dim) = quotient_pairing(ideal, lambda, d)?;
        if dim != to_u64(&spec.eval_p(d as i64))? {
            return Err(Error::Precondition(format!(
                "dim (S/I)_{d} = {dim} differs from P({d})"
            )));
        }
        values.push(num);
    }
    let not_poly = || Error::NotPolynomial(d_min as u64);
    let numerator = QPoly::interpolate(d_min as i64, &values[..samples as usize]);
    if numerator.degree().is_some_and(|k| k > r + 1) {
        return Err(not_poly());
    }
    for (i, v) in values.iter().enumerate().skip(samples as usize) {
        if numerator.eval_int(d_min as i64 + i as i64) != BigRational::from(v.clone()) {
            return Err(not_poly());
        }
    }

    let p_poly = spec.poly().to_qpoly();
    let denominator = p_poly.shift_up();
    let k = denominator.degree().expect("P != 0");
    if numerator.degree().is_some_and(|n| n > k) {
        return Err(Error::Precondition("pairing grows faster than d P(d)".into()));
    }
    let lead = denominator.coeff(k);
    let a0 = numerator.coeff(k) / &lead;
    let a1 = if k == 0 {
        BigRational::zero()
    } else {
        (numerator.coeff(k - 1) - &a0 * denominator.coeff(k - 1)) / &lead
    };

    // F - A0 - A1/d = tail / (d P) with deg tail <= deg(d P) - 2
    let tail = numerator
        .add(&denominator.scale(&-a0.clone()))
        .add(&p_poly.scale(&-a1.clone()));
    if tail.degree().is_some_and(|t| t + 2 > k) {
        return Err(Error::Internal("expansion remainder is not O(1/d^2)".into()));
    }
    for d in [last - 1, last] {
        let d = d as i64;
        let f = numerator.eval_int(d) / denominator.eval_int(d);
        let approx = &a0 + &a1 / BigRational::from(BigInt::from(d));
        if f - approx != tail.eval_int(d) / denominator.eval_int(d) {
            return Err(Error::Internal("expansion identity fails".into()));
        }
    }
    Ok(FutakiExpansion {
        lambda: lambda.clone(),
        a0,
        a1,
        numerator,
        denominator,
        sample_window: (d_min, last),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KReport {
    /// Expansion against `(r, -1, ..., -1)`.
    pub plus: FutakiExpansion,
    /// Expansion against `(-r, 1, ..., 1)`.
    pub minus: FutakiExpansion,
    pub destabilized: bool,
    pub destabilizing: Option<OnePS>,
}

/// Both expansions for `lambda = (r, -1, ..., -1)` and `-lambda`; flagged when either has `A1 > 0`.
pub fn k_instability_report(
    ideal: &MonomialIdeal,
    spec: &HilbertPolynomialSpec,
    d_min: Option<u32>,
) -> Result<KReport> {
    let d_min = d_min.unwrap_or_else(|| default_dmin(spec));
    let lambda = OnePS::standard(spec.r());
    let plus = futaki_expansion(ideal, &lambda, spec, d_min)?;
    let minus = futaki_expansion(ideal, &lambda.neg(), spec, d_min)?;
    let destabilizing = if plus.a1.is_positive() {
        Some(plus.lambda.clone())
    } else if minus.a1.is_positive() {
        Some(minus.lambda.clone())
    } else {
        None
    };
    Ok(KReport { destabilized: destabilizing.is_some(), plus, minus, destabilizing })
}

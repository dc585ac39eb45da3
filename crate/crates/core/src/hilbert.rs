//! Hilbert polynomials of quotients `S/I`, `S = k[x0..xr]`: evaluation, the
//! Gotzmann and Macaulay decompositions, the scalar functions attached to a
//! polynomial at a degree `d`, and finite-window certification of the
//! thresholds past which the worst-point constructions apply.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::IntPoly;

/// Upper bound on the number of Gotzmann terms we are willing to peel.
pub const MAX_GOTZMANN: u64 = 1_000_000;

/// Combinatorial binomial: zero when `n < 0`, `k < 0` or `k > n`.
pub fn cbinom(n: i64, k: i64) -> BigInt {
    if n < 0 || k < 0 || k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

fn rat(x: impl Into<BigInt>) -> BigRational {
    BigRational::from(x.into())
}

/// A Hilbert polynomial together with its decomposition data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertPolynomialSpec {
    r: usize,
    label: String,
    poly: IntPoly,
    b_sequence: Vec<usize>,
    a_sequence: Vec<i64>,
    gotzmann: u64,
    gamma: u64,
    p_const: Option<u64>,
}

impl HilbertPolynomialSpec {
    /// Decompose `poly` as a Hilbert polynomial of a quotient of `k[x0..xr]`.
    pub fn from_poly(r: usize, poly: IntPoly, label: impl Into<String>) -> Result<Self> {
        if r == 0 {
            return Err(Error::Unsupported("r must be at least 1".into()));
        }
        let (b_sequence, a_sequence, gotzmann) = macaulay_decompose(r, &poly)?;
        let gamma = b_sequence.iter().filter(|&&b| b == r - 1).count() as u64;
        let p_const = if b_sequence.iter().all(|&b| b == r - 1 || b == 0) {
            Some(gotzmann - gamma)
        } else {
            None
        };
        Ok(HilbertPolynomialSpec {
            r,
            label: label.into(),
            poly,
            b_sequence,
            a_sequence,
            gotzmann,
            gamma,
            p_const,
        })
    }

    /// `P(d) = C(r+d, r) - C(r+d-gamma, r) + p`.
    pub fn goodsit(r: usize, gamma: u64, p: u64) -> Result<Self> {
        let g = gamma as i64;
        let ri = r as i64;
        let poly = IntPoly::from_fn(r, |d| {
            crate::poly::gbinom(ri + d, r) - crate::poly::gbinom(ri + d - g, r) + BigInt::from(p)
        });
        HilbertPolynomialSpec::from_poly(r, poly, format!("goodsit:{gamma},{p}"))
    }

    pub fn constant(r: usize, c: u64) -> Result<Self> {
        HilbertPolynomialSpec::from_poly(r, IntPoly::constant(c), format!("const:{c}"))
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn poly(&self) -> &IntPoly {
        &self.poly
    }

    pub fn b_sequence(&self) -> &[usize] {
        &self.b_sequence
    }

    pub fn a_sequence(&self) -> &[i64] {
        &self.a_sequence
    }

    /// `g_P`.
    pub fn gotzmann(&self) -> u64 {
        self.gotzmann
    }

    pub fn gamma(&self) -> u64 {
        self.gamma
    }

    /// `p` when the polynomial has the form `C(r+d,r) - C(r+d-gamma,r) + p`.
    pub fn p_const(&self) -> Option<u64> {
        self.p_const
    }

    pub fn is_constant(&self) -> bool {
        self.poly.degree().is_none_or(|deg| deg == 0)
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_zero()
    }

    pub fn eval_p(&self, d: i64) -> BigInt {
        self.poly.eval(d)
    }

    pub fn eval_q(&self, d: i64) -> BigInt {
        cbinom(self.r as i64 + d, self.r as i64) - self.eval_p(d)
    }

    /// `delta(d) = d - gamma`.
    pub fn delta(&self, d: i64) -> i64 {
        d - self.gamma as i64
    }

    /// `Q(d)` from the Macaulay representation; meaningful for `d >= g_P`.
    pub fn macaulay_q(&self, d: i64) -> BigInt {
        let r = self.r as i64;
        if self.a_sequence.is_empty() {
            return cbinom(r + d, r);
        }
        self.a_sequence
            .iter()
            .enumerate()
            .map(|(i, a)| {
                let i = i as i64;
                cbinom(r - i + d - a, r - i)
            })
            .sum()
    }

    /// Regularity offset of the worst points: `-1` when `p = 0`, otherwise `l`
    /// of the constant `p` in `k[x0..xr]` (`gamma = 0`) or in `k[x1..xr]` (`gamma > 0`).
    pub fn l_p(&self) -> Option<i64> {
        let p = self.p_const?;
        if p == 0 {
            return Some(-1);
        }
        let p = BigInt::from(p);
        match self.gamma {
            0 => Some(l_e_for(self.r, &p).0),
            _ if self.r >= 2 => Some(l_e_for(self.r - 1, &p).0),
            _ => None,
        }
    }

    /// `(l, e)` of `P` at degree `d`.
    pub fn l_e(&self, d: i64) -> (i64, BigInt) {
        l_e_for(self.r, &self.eval_p(d))
    }

    /// `p(d) = C(r + delta, r) - Q(d)`.
    pub fn p_of(&self, d: i64) -> BigInt {
        cbinom(self.r as i64 + self.delta(d), self.r as i64) - self.eval_q(d)
    }

    /// `(l', e')` of `p(t + gamma)` in the `r`-variable ring `k[x1..xr]`, at `t = delta(d)`.
    pub fn l_e_prime(&self, d: i64) -> Result<(i64, BigInt)> {
        if self.r < 2 {
            return Err(Error::Unsupported("l' and e' need r >= 2".into()));
        }
        Ok(l_e_for(self.r - 1, &self.p_of(d)))
    }

    pub fn derived_scalars(&self, d: i64) -> Result<DerivedScalars> {
        if d < self.gotzmann as i64 {
            return Err(Error::Precondition(format!("d = {d} below g_P = {}", self.gotzmann)));
        }
        let r = self.r as i64;
        let delta = self.delta(d);
        let (l, e) = self.l_e(d);
        let big_p = self.eval_p(d);
        let rho = cbinom(r + l, r) - &big_p;
        let p_of_d = self.p_of(d);
        let alpha = &big_p - &p_of_d;
        let epsilon: BigInt = ((delta + 1)..=d).map(|i| cbinom(r + i - 1, r - 1) * i).sum();

        // C = -p gamma - d alpha + eps + eps/r + p delta
        let eps = rat(epsilon.clone());
        let center = -rat(&p_of_d * self.gamma) - rat(&alpha * d)
            + &eps
            + &eps / rat(r)
            + rat(&p_of_d * delta);
        let (l_prime, e_prime, discriminant) = match self.l_e_prime(d) {
            Ok((lp, ep)) => {
                let pd = rat(&p_of_d * delta);
                let ep_r = rat(ep.clone());
                let disc = &center * &center - rat(8) * pd * &ep_r + rat(8) * &ep_r * &ep_r;
                (Some(lp), Some(ep), Some(disc))
            }
            Err(_) => (None, None, None),
        };
        Ok(DerivedScalars {
            d,
            delta,
            l,
            e,
            rho,
            p_of_d,
            alpha,
            epsilon,
            discriminant,
            center,
            l_prime,
            e_prime,
        })
    }

    /// The conditions of the constant-`P` and general-`P` windows at one degree.
    pub fn dp_conditions(&self, d: i64) -> DpCheck {
        let r = self.r as i64;
        let big_p = rat(self.eval_p(d));
        let (l, e) = self.l_e(d);
        let e = rat(e);
        let dp = rat(d) * &big_p;
        let disc = &dp * &dp - rat(4) * &dp * &e + rat(2 * (r + 1)) / rat(r) * &e * &e;

        let discriminant1 = disc.is_positive();
        let real = !disc.is_negative();
        let lowerbound1 = real
            && dp.is_positive()
            && sqrt_gt(&(&dp * rat(r - 1) / rat(r + 1)), &disc);
        let upperbound1 = real && sqrt_gt(&(&dp - rat(4) * &e), &disc) && sqrt_lt(&disc, &dp);
        let asymptotic1 = e <= rat(l) * &big_p && 8 * l < d;
        let upperbound2 = real
            && sqrt_gt(&(&dp - rat(2) * &e - rat(2)), &disc)
            && sqrt_lt(&disc, &(&dp - rat(2) * &e + rat(2)));
        DpCheck {
            d,
            discriminant1,
            lowerbound1,
            upperbound1,
            asymptotic1,
            upperbound2,
            constant: self.is_constant(),
        }
    }

    /// The discriminant/center chain at one degree; `None` when `r < 2` or `gamma = 0`.
    pub fn dup_conditions(&self, d: i64) -> Option<DupCheck> {
        if self.gamma == 0 || self.r < 2 || d < self.gotzmann as i64 {
            return None;
        }
        let s = self.derived_scalars(d).ok()?;
        let disc = s.discriminant.clone()?;
        let c = s.center.clone();
        let pd = rat(&s.p_of_d * s.delta);
        let real = !disc.is_negative();
        let two = rat(2);
        Some(DupCheck {
            d,
            discriminant_positive: disc.is_positive(),
            lower_nonnegative: real && sqrt_le(&disc, &c),
            lower_positive: real && sqrt_lt(&disc, &c),
            lower_below_one: real && sqrt_gt(&(&c - &two), &disc),
            one_below_p_delta: !s.p_of_d.is_positive() || pd > BigRational::one(),
            p_delta_below_upper: real && sqrt_gt(&(two * &pd - &c), &disc),
        })
    }

    /// Least `d0 >= g_P` with every degree in `[d0, cap]` passing [`DpCheck::holds`].
    pub fn threshold_dp(&self, cap: u64) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        scan_window(self.gotzmann, cap, |d| self.dp_conditions(d as i64).holds())
    }

    /// Least `d0 >= g_P` with every degree in `[d0, cap]` passing [`DupCheck::holds`].
    pub fn threshold_dup(&self, cap: u64) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        scan_window(self.gotzmann, cap, |d| {
            self.dup_conditions(d as i64).is_some_and(|c| c.holds())
        })
    }
}

impl fmt::Display for HilbertPolynomialSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (r = {}): P(d) = {}", self.label, self.r, self.poly)
    }
}

fn scan_window(start: u64, cap: u64, ok: impl Fn(u64) -> bool) -> Option<u64> {
    if cap < start {
        return None;
    }
    let mut d0 = None;
    for d in (start..=cap).rev() {
        if !ok(d) {
            break;
        }
        d0 = Some(d);
    }
    d0
}

/// `sqrt(disc) > x`, for `disc >= 0`.
fn sqrt_gt(x: &BigRational, disc: &BigRational) -> bool {
    x.is_negative() || disc > &(x * x)
}

/// `sqrt(disc) < y`, for `disc >= 0`.
fn sqrt_lt(disc: &BigRational, y: &BigRational) -> bool {
    y.is_positive() && disc < &(y * y)
}

/// `sqrt(disc) <= y`, for `disc >= 0`.
fn sqrt_le(disc: &BigRational, y: &BigRational) -> bool {
    !y.is_negative() && disc <= &(y * y)
}

/// `(l, e)` of a value `v` in the ring with `r + 1` variables: `l` is the least
/// integer `>= -1` with `v <= C(r + l, r)`.
pub fn l_e_for(r: usize, v: &BigInt) -> (i64, BigInt) {
    assert!(r >= 1, "l and e need at least two variables");
    let r = r as i64;
    let mut l: i64 = -1;
    while &cbinom(r + l, r) < v {
        l += 1;
    }
    let head: BigInt = (0..l).map(|i| cbinom(r + i - 1, r - 1) * i).sum();
    let e = (v - cbinom(r + l - 1, r)) * l + head;
    (l, e)
}

/// Scalar functions of a Hilbert polynomial at one degree `d >= g_P`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedScalars {
    pub d: i64,
    pub delta: i64,
    pub l: i64,
    pub e: BigInt,
    pub rho: BigInt,
    pub p_of_d: BigInt,
    pub alpha: BigInt,
    pub epsilon: BigInt,
    pub discriminant: Option<BigRational>,
    pub center: BigRational,
    pub l_prime: Option<i64>,
    pub e_prime: Option<BigInt>,
}

/// Window conditions used for the Grassmannian worst-point lemmas.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DpCheck {
    pub d: i64,
    pub discriminant1: bool,
    pub lowerbound1: bool,
    pub upperbound1: bool,
    pub asymptotic1: bool,
    pub upperbound2: bool,
    pub constant: bool,
}

impl DpCheck {
    /// For constant `P` the tight upper bound replaces the loose one.
    pub fn holds(&self) -> bool {
        let upper = if self.constant { self.upperbound2 } else { self.upperbound1 };
        self.discriminant1 && self.lowerbound1 && upper && self.asymptotic1
    }
}

/// The center/discriminant chain
/// `0 <= (C - sqrt D)/2 < 1 < p delta < (C + sqrt D)/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DupCheck {
    pub d: i64,
    pub discriminant_positive: bool,
    pub lower_nonnegative: bool,
    /// The strict form `0 < (C - sqrt D)/2`; fails identically when `e' = 0`.
    pub lower_positive: bool,
    pub lower_below_one: bool,
    /// Vacuous when `p = 0`.
    pub one_below_p_delta: bool,
    pub p_delta_below_upper: bool,
}

impl DupCheck {
    pub fn holds(&self) -> bool {
        self.discriminant_positive
            && self.lower_nonnegative
            && self.lower_below_one
            && self.one_below_p_delta
            && self.p_delta_below_upper
    }
}

/// Greedy Gotzmann peeling of `P`, then the Macaulay `a`-sequence of `Q`.
///
/// Returns `(b, a, g_P)`.
pub fn macaulay_decompose(r: usize, poly: &IntPoly) -> Result<(Vec<usize>, Vec<i64>, u64)> {
    let degree = poly.degree().unwrap_or(0);
    if poly.degree().is_some_and(|deg| deg >= r) {
        return Err(Error::NotHilbertPolynomial { r, degree });
    }
    let not_hilbert = || Error::NotHilbertPolynomial { r, degree };

    let mut rest = poly.clone();
    let mut b: Vec<usize> = Vec::new();
    while !rest.is_zero() {
        if b.len() as u64 >= MAX_GOTZMANN {
            return Err(Error::GotzmannTooLarge(MAX_GOTZMANN));
        }
        let bi = rest.degree().expect("nonzero");
        if !rest.leading().expect("nonzero").is_positive() {
            return Err(not_hilbert());
        }
        if b.last().is_some_and(|&prev| bi > prev) {
            return Err(not_hilbert());
        }
        let i = b.len() as i64 + 1;
        rest = rest.sub(&IntPoly::binomial(bi as i64 - i + 1, bi));
        b.push(bi);
    }
    let g = b.len() as u64;
    if g == 0 {
        return Ok((b, Vec::new(), 0));
    }

    // exponent of x_j in the last lex generator is #{i : b_i = r - 1 - j}
    let counts: Vec<i64> = (0..r)
        .map(|j| b.iter().filter(|&&bi| bi == r - 1 - j).count() as i64)
        .collect();
    let n = counts.iter().rposition(|&c| c > 0).expect("g > 0");
    let mut a = Vec::with_capacity(n + 1);
    let mut prev = 1i64;
    for (j, &c) in counts.iter().enumerate().take(n + 1) {
        let aj = if j == n { prev + c - 1 } else { prev + c };
        a.push(aj);
        prev = aj;
    }
    if *a.last().expect("n >= 0") != g as i64 {
        return Err(Error::Internal("a_n differs from the Gotzmann number".into()));
    }

    let ri = r as i64;
    for d in (g as i64)..(g as i64 + ri + 2) {
        let macaulay: BigInt = a
            .iter()
            .enumerate()
            .map(|(i, ai)| cbinom(ri - i as i64 + d - ai, ri - i as i64))
            .sum();
        let q = cbinom(ri + d, ri) - poly.eval(d);
        if macaulay != q {
            return Err(Error::Internal(format!(
                "Macaulay representation disagrees with Q at d = {d}"
            )));
        }
    }
    Ok((b, a, g))
}

/// Parse `const:<c>`, `goodsit:<gamma>,<p>` or `binom:<c0>,<c1>,...` (coefficients
/// of `C(d+i, i)`, rationals allowed as `a/b`).
pub fn parse_spec(text: &str, r: usize) -> Result<HilbertPolynomialSpec> {
    let text = text.trim();
    let (kind, body) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("expected <kind>:<args>, got '{text}'")))?;
    let ints = |body: &str| -> Result<Vec<u64>> {
        body.split(',')
            .map(|s| {
                s.trim()
                    .parse::<u64>()
                    .map_err(|_| Error::Parse(format!("bad integer '{s}'")))
            })
            .collect()
    };
    match kind.trim() {
        "const" => match ints(body)?.as_slice() {
            [c] => HilbertPolynomialSpec::constant(r, *c),
            _ => Err(Error::Parse("const takes one value".into())),
        },
        "goodsit" => match ints(body)?.as_slice() {
            [gamma, p] => HilbertPolynomialSpec::goodsit(r, *gamma, *p),
            _ => Err(Error::Parse("goodsit takes gamma,p".into())),
        },
        "binom" => {
            let coeffs = body
                .split(',')
                .map(|s| parse_rational(s.trim()))
                .collect::<Result<Vec<_>>>()?;
            let n = coeffs.len().saturating_sub(1);
            let mut values = Vec::with_capacity(n + 1);
            for d in 0..=n as i64 {
                let v: BigRational = coeffs
                    .iter()
                    .enumerate()
                    .map(|(i, c)| c * rat(crate::poly::gbinom(d + i as i64, i)))
                    .sum();
                if !v.is_integer() {
                    return Err(Error::NonIntegerValued);
                }
                values.push(v.to_integer());
            }
            let label = format!("binom:{}", body.trim());
            HilbertPolynomialSpec::from_poly(r, IntPoly::from_values(&values), label)
        }
        other => Err(Error::Parse(format!("unknown polynomial kind '{other}'"))),
    }
}

fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad coefficient '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(BigRational::new(n, d))
        }
        None => Ok(rat(s.parse::<BigInt>().map_err(|_| bad())?)),
    }
}

/// Convert a small nonnegative `BigInt` (a dimension or count) to `u64`.
pub fn to_u64(x: &BigInt) -> Result<u64> {
    x.to_u64()
        .ok_or_else(|| Error::Unsupported(format!("value {x} outside the enumerable range")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn const_three_plane() {
        let s = parse_spec("const:3", 2).unwrap();
        assert_eq!(s.gotzmann(), 3);
        assert_eq!(s.gamma(), 0);
        assert_eq!(s.p_const(), Some(3));
        assert_eq!(s.b_sequence(), &[0, 0, 0]);
        assert_eq!(s.a_sequence(), &[1, 3]);
        assert_eq!(s.eval_p(3), big(3));
        assert_eq!(s.eval_q(3), big(7));
        assert_eq!(s.macaulay_q(3), big(7));
    }

    #[test]
    fn goodsit_examples() {
        let line = parse_spec("goodsit:1,0", 2).unwrap();
        assert_eq!(line.gotzmann(), 1);
        assert_eq!((line.gamma(), line.p_const()), (1, Some(0)));
        for d in 0..10 {
            assert_eq!(line.eval_p(d), big(d + 1));
        }

        let s = parse_spec("goodsit:2,1", 3).unwrap();
        assert_eq!(s.gotzmann(), 3);
        assert_eq!(s.b_sequence(), &[2, 2, 0]);
        for d in -3..12 {
            assert_eq!(s.eval_p(d), big((d + 1) * (d + 1) + 1));
        }

        let s = parse_spec("goodsit:1,1", 2).unwrap();
        assert_eq!(s.eval_p(4), big(6));
        assert_eq!(s.eval_q(4), big(9));

        let s = parse_spec("goodsit:1,2", 2).unwrap();
        assert_eq!(s.a_sequence(), &[2, 3]);
    }

    #[test]
    fn zero_polynomial() {
        let s = parse_spec("const:0", 2).unwrap();
        assert_eq!(s.gotzmann(), 0);
        assert!(s.b_sequence().is_empty() && s.a_sequence().is_empty());
        assert_eq!(s.eval_q(5), cbinom(7, 2));
        assert_eq!(s.threshold_dp(50), None);
    }

    #[test]
    fn gamma_examples() {
        for c in 1..6 {
            assert_eq!(parse_spec(&format!("const:{c}"), 3).unwrap().gamma(), 0);
            let line = parse_spec(&format!("const:{c}"), 1).unwrap();
            assert_eq!(line.gamma(), c);
            assert_eq!(line.p_const(), Some(0));
        }
        assert_eq!(parse_spec("goodsit:2,1", 2).unwrap().gamma(), 2);
    }

    #[test]
    fn binomial_grammar() {
        // C(d+1,1) + 1 = d + 2
        let s = parse_spec("binom:1,1", 2).unwrap();
        assert_eq!(s.eval_p(5), big(7));
        assert_eq!(s.gamma(), 1);
        assert_eq!(s.p_const(), Some(1));
        assert_eq!(parse_spec("binom:1/2,1/2", 2), Err(Error::NonIntegerValued));
        // 2 * C(d+1,1) has the right degree but is not a Hilbert polynomial? it is: two lines
        let two_lines = parse_spec("binom:0,2", 2).unwrap();
        assert_eq!(two_lines.gamma(), 2);
        assert!(matches!(parse_spec("binom:0,0,1", 2), Err(Error::NotHilbertPolynomial { .. })));
        assert!(matches!(parse_spec("binom:-1", 2), Err(Error::NotHilbertPolynomial { .. })));
        assert!(parse_spec("poly:3", 2).is_err());
    }

    #[test]
    fn twisted_cubic_in_space() {
        // 3d + 1, a non-goodsit polynomial in P^3
        let s = parse_spec("binom:-2,3", 3).unwrap();
        for d in 0..8 {
            assert_eq!(s.eval_p(d), big(3 * d + 1));
        }
        assert_eq!(s.b_sequence(), &[1, 1, 1, 0]);
        assert_eq!(s.p_const(), None);
        assert_eq!(s.gotzmann(), 4);
        for d in 4..14 {
            assert_eq!(s.macaulay_q(d), s.eval_q(d));
        }
    }

    #[test]
    fn l_and_e() {
        let s = parse_spec("const:3", 2).unwrap();
        for d in 3..10 {
            assert_eq!(s.l_e(d), (1, big(2)));
        }
        for r in 1..5 {
            let s = parse_spec("const:1", r).unwrap();
            assert_eq!(s.l_e(5), (0, big(0)));
        }
        // L_{4,d} = x0^d, x0^{d-1}x1, x0^{d-1}x2, x0^{d-2}x1^2: non-x0 degree 0+1+1+2
        let s = parse_spec("const:4", 2).unwrap();
        assert_eq!(s.l_e(6), (2, big(4)));
    }

    #[test]
    fn scalars_examples() {
        let s = parse_spec("goodsit:1,1", 2).unwrap();
        let v = s.derived_scalars(4).unwrap();
        assert_eq!(v.delta, 3);
        assert_eq!(v.alpha, big(5));
        assert_eq!(v.epsilon, big(20));
        assert_eq!(v.p_of_d, big(1));
        assert_eq!(v.l_prime, Some(0));
        assert_eq!(v.e_prime, Some(big(0)));

        let s = parse_spec("const:3", 2).unwrap();
        let v = s.derived_scalars(5).unwrap();
        assert_eq!(v.alpha, big(0));
        assert_eq!(v.epsilon, big(0));
        assert_eq!(v.rho, big(0));
        assert!(s.derived_scalars(2).is_err());

        let line = parse_spec("const:2", 1).unwrap();
        assert!(line.l_e_prime(4).is_err());
        assert_eq!(line.derived_scalars(4).unwrap().discriminant, None);
    }

    #[test]
    fn scalar_invariants() {
        for text in ["const:3", "const:7", "goodsit:2,1", "goodsit:1,4", "binom:-2,3"] {
            for r in 2..=4 {
                let Ok(s) = parse_spec(text, r) else { continue };
                let ri = r as i64;
                let g = s.gotzmann() as i64;
                for d in g..g + 6 {
                    let v = s.derived_scalars(d).unwrap();
                    let q = s.eval_q(d);
                    let p = s.eval_p(d);
                    assert!(cbinom(ri + v.delta - 1, ri) < q && q <= cbinom(ri + v.delta, ri));
                    assert!(cbinom(ri + v.l - 1, ri) < p && p <= cbinom(ri + v.l, ri));
                    assert!(!v.e.is_negative() && v.e <= &p * v.l);
                    assert_eq!(s.delta(d + 1), v.delta + 1);
                    assert_eq!(s.macaulay_q(d), q);
                }
            }
        }
    }

    #[test]
    fn thresholds() {
        let s = parse_spec("const:3", 2).unwrap();
        let d0 = s.threshold_dp(200).expect("certified window");
        assert!(d0 >= 9);
        for d in d0..=200 {
            assert!(s.dp_conditions(d as i64).holds());
        }
        assert!(!s.dp_conditions(d0 as i64 - 1).holds() || d0 == s.gotzmann());

        let s = parse_spec("goodsit:2,1", 2).unwrap();
        let d0 = s.threshold_dup(200).expect("certified window");
        for d in d0..=200 {
            let c = s.dup_conditions(d as i64).unwrap();
            assert!(c.holds());
            // e' = 0 for p = 1, so the lower root sits exactly at zero
            assert!(!c.lower_positive);
        }
        assert_eq!(parse_spec("const:3", 2).unwrap().threshold_dup(100), None);
    }
}

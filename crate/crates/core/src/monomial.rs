//! Monomials in `r + 1` variables `x0 > x1 > ... > xr`, their lexicographic
//! enumeration and ranking, lex segments and the `U_i` divisibility sets.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};

/// Binomial coefficient `C(n, k)`, zero when `k < 0` or `k > n`.
pub fn binom(n: u64, k: i64) -> BigUint {
    if k < 0 || k as u64 > n {
        return BigUint::from(0u32);
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `C(n, k)` for small arguments; zero outside `0 <= k <= n`.
///
/// Panics on overflow of `u64`, which only happens far outside the sizes
/// this crate enumerates.
pub fn choose(n: i64, k: i64) -> u64 {
    if n < 0 || k < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    u64::try_from(acc).expect("binomial coefficient overflows u64")
}

/// Number of degree-`d` monomials in `r + 1` variables.
pub fn count_monomials(r: usize, d: u32) -> u64 {
    choose(r as i64 + d as i64, r as i64)
}

/// A monomial `x0^e0 * ... * xr^er`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    degree: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        assert!(!exps.is_empty(), "a monomial needs at least one variable");
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn one(r: usize) -> Self {
        Monomial::new(vec![0; r + 1])
    }

    /// `xi^e` in `r + 1` variables.
    pub fn power(r: usize, i: usize, e: u32) -> Self {
        let mut exps = vec![0; r + 1];
        exps[i] = e;
        Monomial::new(exps)
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Index of the last variable.
    pub fn r(&self) -> usize {
        self.exps.len() - 1
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect())
    }

    /// Multiply by a single variable.
    pub fn mul_var(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] += 1;
        Monomial { exps, degree: self.degree + 1 }
    }

    /// `self / other`, or `None` when `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| a - b).collect()))
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect())
    }

    /// The monomial with variable `i` set to 1.
    pub fn erase(&self, i: usize) -> Monomial {
        let mut exps = self.exps.clone();
        exps[i] = 0;
        Monomial::new(exps)
    }

    /// Prepend a zero exponent: `k[x1..xr]` into `k[x0..xr]`.
    pub fn embed(&self) -> Monomial {
        let mut exps = Vec::with_capacity(self.exps.len() + 1);
        exps.push(0);
        exps.extend_from_slice(&self.exps);
        Monomial { exps, degree: self.degree }
    }

    /// Drop the `x0` exponent, which must be zero.
    pub fn restrict(&self) -> Option<Monomial> {
        if self.exps[0] != 0 || self.exps.len() < 2 {
            return None;
        }
        Some(Monomial { exps: self.exps[1..].to_vec(), degree: self.degree })
    }

    /// Rename variables: `x_i` becomes `x_{perm[i]}`.
    pub fn permute(&self, perm: &[usize]) -> Monomial {
        let mut exps = vec![0; self.exps.len()];
        for (i, &e) in self.exps.iter().enumerate() {
            exps[perm[i]] = e;
        }
        Monomial { exps, degree: self.degree }
    }

    pub fn parse(text: &str, r: usize) -> Result<Monomial> {
        let text = text.trim();
        let mut exps = vec![0u32; r + 1];
        if text == "1" {
            return Ok(Monomial::new(exps));
        }
        for factor in text.split('*') {
            let factor = factor.trim();
            let body = factor
                .strip_prefix('x')
                .ok_or_else(|| Error::Parse(format!("bad factor '{factor}'")))?;
            let (idx, e) = match body.split_once('^') {
                Some((i, e)) => (i, e),
                None => (body, "1"),
            };
            let idx: usize = idx
                .parse()
                .map_err(|_| Error::Parse(format!("bad variable in '{factor}'")))?;
            let e: u32 = e
                .parse()
                .map_err(|_| Error::Parse(format!("bad exponent in '{factor}'")))?;
            if idx > r {
                return Err(Error::Parse(format!("variable x{idx} outside x0..x{r}")));
            }
            exps[idx] += e;
        }
        Ok(Monomial::new(exps))
    }
}

impl Ord for Monomial {
    /// Degree first, then lexicographic with `x0 > x1 > ... > xr`.
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.degree == 0 {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if e == 1 {
                write!(f, "x{i}")?;
            } else {
                write!(f, "x{i}^{e}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// All degree-`d` monomials in `r + 1` variables, strictly descending in lex.
pub fn enumerate_monomials(r: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(count_monomials(r, d) as usize);
    let mut exps = vec![0u32; r + 1];
    fill(&mut exps, 0, d, &mut out);
    out
}

fn fill(exps: &mut Vec<u32>, i: usize, rem: u32, out: &mut Vec<Monomial>) {
    if i + 1 == exps.len() {
        exps[i] = rem;
        out.push(Monomial::new(exps.clone()));
        return;
    }
    for e in (0..=rem).rev() {
        exps[i] = e;
        fill(exps, i + 1, rem - e, out);
    }
    exps[i] = 0;
}

/// 1-based position of `m` among the degree-`deg m` monomials in descending lex.
pub fn monomial_rank(m: &Monomial) -> u64 {
    let r = m.r();
    let mut rem = m.degree() as i64;
    let mut before = 0u64;
    for i in 0..r {
        let e = m.exp(i) as i64;
        let tail = (r - i - 1) as i64;
        for k in (e + 1)..=rem {
            before += choose(rem - k + tail, tail);
        }
        rem -= e;
    }
    before + 1
}

/// The `t`-th degree-`d` monomial in descending lex (`mu_{t,d}`).
pub fn monomial_unrank(r: usize, d: u32, t: u64) -> Result<Monomial> {
    let max = count_monomials(r, d);
    if t < 1 || t > max {
        return Err(Error::OutOfRange { t, max });
    }
    let mut t = t;
    let mut rem = d as i64;
    let mut exps = vec![0u32; r + 1];
    for (i, slot) in exps.iter_mut().enumerate().take(r) {
        let tail = (r - i - 1) as i64;
        for k in (0..=rem).rev() {
            let cnt = choose(rem - k + tail, tail);
            if t <= cnt {
                *slot = k as u32;
                rem -= k;
                break;
            }
            t -= cnt;
        }
    }
    exps[r] = rem as u32;
    Ok(Monomial::new(exps))
}

/// A subspace of `S_d` spanned by monomials; members kept in descending lex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialSubspace {
    r: usize,
    d: u32,
    members: Vec<Monomial>,
}

impl MonomialSubspace {
    pub fn new(r: usize, d: u32, mut members: Vec<Monomial>) -> Result<Self> {
        for m in &members {
            if m.r() != r || m.degree() != d {
                return Err(Error::Precondition(format!(
                    "monomial {m} is not of degree {d} in x0..x{r}"
                )));
            }
        }
        members.sort_unstable_by(|a, b| b.cmp(a));
        if members.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::Precondition("repeated monomial in subspace".into()));
        }
        Ok(MonomialSubspace { r, d, members })
    }

    /// Build from members already known to be distinct and of the right degree.
    pub(crate) fn from_sorted_unchecked(r: usize, d: u32, members: Vec<Monomial>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] > w[1]));
        MonomialSubspace { r, d, members }
    }

    pub fn empty(r: usize, d: u32) -> Self {
        MonomialSubspace { r, d, members: Vec::new() }
    }

    /// All of `M_d`.
    pub fn full(r: usize, d: u32) -> Self {
        MonomialSubspace { r, d, members: enumerate_monomials(r, d) }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Monomial] {
        &self.members
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Monomial> {
        self.members.iter()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.members.binary_search_by(|x| m.cmp(x)).is_ok()
    }

    pub fn is_subset(&self, other: &MonomialSubspace) -> bool {
        self.members.iter().all(|m| other.contains(m))
    }

    /// `W*`: the span of `M_d` minus the members of `W`.
    pub fn complement(&self) -> MonomialSubspace {
        let members = enumerate_monomials(self.r, self.d)
            .into_iter()
            .filter(|m| !self.contains(m))
            .collect();
        MonomialSubspace { r: self.r, d: self.d, members }
    }

    pub fn union(&self, other: &MonomialSubspace) -> Result<MonomialSubspace> {
        let mut members = self.members.clone();
        members.extend(other.members.iter().filter(|m| !self.contains(m)).cloned());
        MonomialSubspace::new(self.r, self.d, members)
    }

    /// `m * W`, a subspace of degree `d + deg m`.
    pub fn times(&self, m: &Monomial) -> MonomialSubspace {
        let members = self.members.iter().map(|x| x.mul(m)).collect();
        MonomialSubspace { r: self.r, d: self.d + m.degree(), members }
    }

    /// Embed a subspace of `k[x1..xr]` into `k[x0..xr]`.
    pub fn embed(&self) -> MonomialSubspace {
        let members = self.members.iter().map(Monomial::embed).collect();
        MonomialSubspace { r: self.r + 1, d: self.d, members }
    }

    pub fn permute(&self, perm: &[usize]) -> MonomialSubspace {
        let mut members: Vec<Monomial> = self.members.iter().map(|m| m.permute(perm)).collect();
        members.sort_unstable_by(|a, b| b.cmp(a));
        MonomialSubspace { r: self.r, d: self.d, members }
    }

    pub fn parse(text: &str, r: usize, d: Option<u32>) -> Result<MonomialSubspace> {
        let members = text
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(|s| Monomial::parse(s, r))
            .collect::<Result<Vec<_>>>()?;
        let d = match (d, members.first()) {
            (Some(d), _) => d,
            (None, Some(m)) => m.degree(),
            (None, None) => return Err(Error::Parse("empty subspace needs an explicit degree".into())),
        };
        MonomialSubspace::new(r, d, members)
    }
}

impl fmt::Display for MonomialSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, m) in self.members.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{m}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for MonomialSubspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// `L_{t,d}`: the first `t` degree-`d` monomials.
pub fn lex_segment(r: usize, d: u32, t: u64) -> Result<MonomialSubspace> {
    let max = count_monomials(r, d);
    if t > max {
        return Err(Error::OutOfRange { t, max });
    }
    let members = enumerate_monomials(r, d).into_iter().take(t as usize).collect();
    Ok(MonomialSubspace { r, d, members })
}

/// `A_{t,d}`: the degree-`d` monomials after the first `t`.
pub fn lex_cosegment(r: usize, d: u32, t: u64) -> Result<MonomialSubspace> {
    let max = count_monomials(r, d);
    if t > max {
        return Err(Error::OutOfRange { t, max });
    }
    let members = enumerate_monomials(r, d).into_iter().skip(t as usize).collect();
    Ok(MonomialSubspace { r, d, members })
}

/// `U_i(n)`: degree-`deg n` monomials bounded by `n` in every variable but `x_i`.
pub fn u_set(i: usize, n: &Monomial) -> MonomialSubspace {
    let r = n.r();
    let members = enumerate_monomials(r, n.degree())
        .into_iter()
        .filter(|m| (0..=r).all(|j| j == i || m.exp(j) <= n.exp(j)))
        .collect();
    MonomialSubspace { r, d: n.degree(), members }
}

/// All permutations of `0..n` in lexicographic order, identity first.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    use itertools::Itertools;
    (0..n).permutations(n).collect()
}

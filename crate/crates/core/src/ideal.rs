//! Monomial ideals given by minimal generators: slices, saturation,
//! Borel-fixedness, regularity of Borel-fixed ideals, lex ideals, Gotzmann
//! persistence and the Murai condition.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::hilbert::{to_u64, HilbertPolynomialSpec};
use crate::monomial::{count_monomials, permutations, u_set, Monomial, MonomialSubspace};

/// A monomial ideal of `k[x0..xr]` stored by its minimal generators,
/// ascending in degree and descending in lex within a degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct MonomialIdeal {
    r: usize,
    generators: Vec<Monomial>,
}

impl MonomialIdeal {
    pub fn new(r: usize, generators: Vec<Monomial>) -> Result<Self> {
        if let Some(m) = generators.iter().find(|m| m.r() != r) {
            return Err(Error::Precondition(format!("{m} is not a monomial in x0..x{r}")));
        }
        Ok(MonomialIdeal { r, generators: minimize(generators) })
    }

    pub fn zero(r: usize) -> Self {
        MonomialIdeal { r, generators: Vec::new() }
    }

    pub fn unit(r: usize) -> Self {
        MonomialIdeal { r, generators: vec![Monomial::one(r)] }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn generators(&self) -> &[Monomial] {
        &self.generators
    }

    pub fn max_generator_degree(&self) -> Option<u32> {
        self.generators.iter().map(Monomial::degree).max()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        let deg = m.degree();
        let lower = self.generators.partition_point(|g| g.degree() < deg);
        if self.generators[..lower].iter().any(|g| g.divides(m)) {
            return true;
        }
        // same-degree generators divide only by equality
        let upper = self.generators.partition_point(|g| g.degree() <= deg);
        self.generators[lower..upper].binary_search_by(|g| m.cmp(g)).is_ok()
    }

    /// All degree-`t` monomials of the ideal.
    pub fn degree_slice(&self, t: u32) -> MonomialSubspace {
        let mut current: HashSet<Monomial> = HashSet::new();
        let start = match self.generators.first() {
            Some(g) => g.degree(),
            None => return MonomialSubspace::empty(self.r, t),
        };
        if start > t {
            return MonomialSubspace::empty(self.r, t);
        }
        for s in start..=t {
            let mut next: HashSet<Monomial> = HashSet::with_capacity(current.len() * 2);
            for m in &current {
                for j in 0..=self.r {
                    next.insert(m.mul_var(j));
                }
            }
            next.extend(self.generators.iter().filter(|g| g.degree() == s).cloned());
            current = next;
        }
        MonomialSubspace::new(self.r, t, current.into_iter().collect()).expect("distinct, degree t")
    }

    /// `dim (S/I)_t`.
    pub fn hilbert_function_quotient(&self, t: u32) -> u64 {
        count_monomials(self.r, t) - self.degree_slice(t).len() as u64
    }

    /// `I : x_j^infinity`.
    pub fn colon_var(&self, j: usize) -> MonomialIdeal {
        MonomialIdeal {
            r: self.r,
            generators: minimize(self.generators.iter().map(|g| g.erase(j)).collect()),
        }
    }

    pub fn intersect(&self, other: &MonomialIdeal) -> MonomialIdeal {
        let mut lcms = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                lcms.push(a.lcm(b));
            }
        }
        MonomialIdeal { r: self.r, generators: minimize(lcms) }
    }

    /// `I^sat`, the intersection of the colons by every variable power.
    pub fn saturate(&self) -> MonomialIdeal {
        let mut acc = self.colon_var(0);
        for j in 1..=self.r {
            acc = acc.intersect(&self.colon_var(j));
        }
        acc
    }

    pub fn is_borel_fixed(&self) -> bool {
        self.generators.iter().all(|m| {
            (0..self.r)
                .filter(|&i| m.exp(i + 1) > 0)
                .all(|i| {
                    let moved = m.div(&Monomial::power(self.r, i + 1, 1)).expect("divisible").mul_var(i);
                    self.contains(&moved)
                })
        })
    }

    pub fn permute(&self, perm: &[usize]) -> MonomialIdeal {
        MonomialIdeal {
            r: self.r,
            generators: sort_generators(self.generators.iter().map(|g| g.permute(perm)).collect()),
        }
    }

    /// First variable permutation (identity first) making the ideal Borel-fixed.
    pub fn borel_permutation(&self) -> Option<Vec<usize>> {
        permutations(self.r + 1).into_iter().find(|p| self.permute(p).is_borel_fixed())
    }
}

impl fmt::Display for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<")?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{g}")?;
        }
        write!(f, ">")
    }
}

impl fmt::Debug for MonomialIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn sort_generators(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_unstable_by(|a, b| a.degree().cmp(&b.degree()).then_with(|| b.cmp(a)));
    gens
}

/// Drop duplicates and generators divisible by another generator.
fn minimize(gens: Vec<Monomial>) -> Vec<Monomial> {
    let gens = sort_generators(gens);
    let mut kept: Vec<Monomial> = Vec::new();
    let mut lower = 0;
    let mut i = 0;
    while i < gens.len() {
        let deg = gens[i].degree();
        let end = gens[i..].iter().position(|g| g.degree() != deg).map_or(gens.len(), |k| i + k);
        let before = kept.len();
        for g in &gens[i..end] {
            if kept.last().is_some_and(|k| k == g) && kept.len() > before {
                continue;
            }
            if kept[..lower].iter().any(|k| k.divides(g)) {
                continue;
            }
            kept.push(g.clone());
        }
        lower = kept.len();
        i = end;
    }
    kept
}

/// The ideal generated by a subspace.
pub fn ideal_from_subspace(w: &MonomialSubspace) -> MonomialIdeal {
    MonomialIdeal { r: w.r(), generators: minimize(w.members().to_vec()) }
}

/// Parse a generator list in the monomial text form.
pub fn parse_ideal(text: &str, r: usize) -> Result<MonomialIdeal> {
    let gens = text
        .trim()
        .trim_start_matches('<')
        .trim_end_matches('>')
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| Monomial::parse(s, r))
        .collect::<Result<Vec<_>>>()?;
    MonomialIdeal::new(r, gens)
}

/// Regularity of `I` through a Borel-fixed coordinate permutation of its saturation.
///
/// Returns the regularity and the permutation used.
pub fn regularity_borel(ideal: &MonomialIdeal) -> Result<(u32, Vec<usize>)> {
    let sat = ideal.saturate();
    let perm = sat.borel_permutation().ok_or_else(|| {
        Error::Unsupported("no coordinate permutation makes the saturation Borel-fixed".into())
    })?;
    Ok((sat.max_generator_degree().unwrap_or(0), perm))
}

/// The saturated lex ideal with Hilbert polynomial `P`, built from the Macaulay `a`-sequence.
pub fn lex_ideal(spec: &HilbertPolynomialSpec) -> MonomialIdeal {
    let r = spec.r();
    let a = spec.a_sequence();
    if a.is_empty() {
        return MonomialIdeal::unit(r);
    }
    let mut gens = Vec::with_capacity(a.len());
    let mut prefix = vec![0u32; r + 1];
    let mut prev = 1i64;
    for (i, &ai) in a.iter().enumerate() {
        let mut exps = prefix.clone();
        exps[i] = (ai - prev + 1) as u32;
        gens.push(Monomial::new(exps));
        prefix[i] = (ai - prev) as u32;
        prev = ai;
    }
    MonomialIdeal { r, generators: minimize(gens) }
}

/// `dim S_1 W` as a subspace of `S_{d+1}`.
pub fn growth(w: &MonomialSubspace) -> usize {
    let mut next: HashSet<Monomial> = HashSet::with_capacity(w.len() * (w.r() + 1));
    for m in w.iter() {
        for j in 0..=w.r() {
            next.insert(m.mul_var(j));
        }
    }
    next.len()
}

/// Gotzmann persistence: `dim S_1 W = Q(d+1)` for a `Q(d)`-dimensional `W`, `d >= g_P`.
pub fn persistence_check(w: &MonomialSubspace, spec: &HilbertPolynomialSpec) -> Result<bool> {
    check_shape(w, spec)?;
    let d = w.d() as i64;
    Ok(growth(w) as u64 == to_u64(&spec.eval_q(d + 1))?)
}

fn check_shape(w: &MonomialSubspace, spec: &HilbertPolynomialSpec) -> Result<()> {
    if w.r() != spec.r() {
        return Err(Error::Precondition(format!(
            "subspace lives in r = {}, polynomial in r = {}",
            w.r(),
            spec.r()
        )));
    }
    let d = w.d() as i64;
    if d < spec.gotzmann() as i64 {
        return Err(Error::Precondition(format!(
            "d = {d} below the Gotzmann number {}",
            spec.gotzmann()
        )));
    }
    let q = to_u64(&spec.eval_q(d))?;
    if w.len() as u64 != q {
        return Err(Error::Precondition(format!("dim W = {} but Q({d}) = {q}", w.len())));
    }
    Ok(())
}

/// Witness data for the Murai condition.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MuraiWitness {
    pub holds: bool,
    /// Common divisor of degree `d - delta`, when one exists.
    pub divisor: Option<Monomial>,
    /// For each monomial outside `W`, the first `i` with `U_i(n)` outside `W`.
    pub indices: Vec<(Monomial, Option<usize>)>,
}

pub fn murai_check(w: &MonomialSubspace, spec: &HilbertPolynomialSpec) -> Result<MuraiWitness> {
    check_shape(w, spec)?;
    let r = w.r();
    let d = w.d();
    let need = (d as i64 - spec.delta(d as i64)).max(0) as u32;

    let divisor = match w.members().first() {
        None => Some(Monomial::power(r, 0, need)),
        Some(first) => {
            let mut gcd: Vec<u32> = first.exps().to_vec();
            for m in w.iter() {
                for (g, e) in gcd.iter_mut().zip(m.exps()) {
                    *g = (*g).min(*e);
                }
            }
            let mut left = need;
            let mut exps = vec![0u32; r + 1];
            for (x, g) in exps.iter_mut().zip(&gcd) {
                let take = left.min(*g);
                *x = take;
                left -= take;
            }
            (left == 0).then(|| Monomial::new(exps))
        }
    };

    let outside = w.complement();
    let indices: Vec<(Monomial, Option<usize>)> = outside
        .iter()
        .map(|n| {
            let i = (0..=r).find(|&i| u_set(i, n).iter().all(|m| !w.contains(m)));
            (n.clone(), i)
        })
        .collect();
    let holds = divisor.is_some() && indices.iter().all(|(_, i)| i.is_some());
    Ok(MuraiWitness { holds, divisor, indices })
}

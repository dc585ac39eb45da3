//! Worst points of `Gr(S_d, b)` and of the Hilbert scheme: exhaustive
//! branch-and-bound oracles and the closed-form constructions.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::hilbert::{cbinom, to_u64, HilbertPolynomialSpec};
use crate::ideal::{growth, ideal_from_subspace, persistence_check, MonomialIdeal};
use crate::monomial::{
    binom, count_monomials, enumerate_monomials, lex_cosegment, lex_segment, permutations,
    u_set, Monomial, MonomialSubspace,
};
use crate::state::{adapted_one_ps, state_vector, OnePS};

pub const DEFAULT_BUDGET: u64 = 10_000_000;
pub const DEFAULT_CAP: u64 = 200;
pub const BUDGET_ENV: &str = "GIT_LAB_BUDGET";

/// The enumeration budget, overridden by `GIT_LAB_BUDGET` when set.
pub fn default_budget() -> u64 {
    std::env::var(BUDGET_ENV)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_BUDGET)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Brute,
    Construct,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Brute => "brute",
            Method::Construct => "construct",
        }
    }
}

/// Checks attached to one constructed subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructionCheck {
    pub persistent: bool,
    /// First permutation (identity first) making `S W` Borel-fixed.
    pub borel_permutation: Option<Vec<usize>>,
    /// Constant case only: the zero set of `S W` is the point `[1:0:...:0]`.
    pub single_point: Option<bool>,
}

/// The two pieces `z0 = x0^gamma S_delta` and `z1 = W'` of a constructed point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub z0: MonomialSubspace,
    pub z1: MonomialSubspace,
    /// `dim (S/S z0)_d = P_0(d)`.
    pub z0_matches: bool,
    /// `z1` is persistent in `k[x1..xr]` for the constant polynomial `p`.
    pub z1_persistent: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WorstReport {
    pub r: usize,
    pub d: u32,
    pub b: u64,
    pub spec: Option<String>,
    pub method: Method,
    pub maximizers: Vec<MonomialSubspace>,
    pub max_norm_sq: BigInt,
    pub dist0_sq: BigRational,
    pub adapted: Vec<Option<OnePS>>,
    pub searched_count: u64,
    pub orbit_representatives: Vec<MonomialSubspace>,
    /// Hilbert-scheme search only: the maximum over all `b`-subsets.
    pub unrestricted_max_norm_sq: Option<BigInt>,
    pub window_certified: Option<bool>,
    pub checks: Vec<ConstructionCheck>,
    pub decompositions: Vec<Decomposition>,
}

impl WorstReport {
    fn assemble(
        r: usize,
        d: u32,
        b: u64,
        method: Method,
        mut maximizers: Vec<MonomialSubspace>,
        searched_count: u64,
    ) -> Result<WorstReport> {
        sort_canonical(&mut maximizers);
        maximizers.dedup();
        let first = maximizers
            .first()
            .ok_or_else(|| Error::Internal("no maximizer found".into()))?;
        let c = state_vector(first);
        let max_norm_sq = c.norm_sq();
        if maximizers.iter().any(|w| state_vector(w).norm_sq() != max_norm_sq) {
            return Err(Error::Internal("maximizers with different norms".into()));
        }
        let adapted = maximizers.iter().map(adapted_one_ps).collect();
        let orbit_representatives = orbit_representatives(&maximizers);
        Ok(WorstReport {
            r,
            d,
            b,
            spec: None,
            method,
            max_norm_sq,
            dist0_sq: c.dist0_sq(),
            maximizers,
            adapted,
            searched_count,
            orbit_representatives,
            unrestricted_max_norm_sq: None,
            window_certified: None,
            checks: Vec::new(),
            decompositions: Vec::new(),
        })
    }
}

/// Greatest member list first.
pub fn sort_canonical(list: &mut [MonomialSubspace]) {
    list.sort_by(|a, b| b.members().cmp(a.members()));
}

/// The lex-greatest image of `w` under all variable permutations.
pub fn canonical_form(w: &MonomialSubspace) -> MonomialSubspace {
    permutations(w.r() + 1)
        .iter()
        .map(|p| w.permute(p))
        .max_by(|a, b| a.members().cmp(b.members()))
        .expect("at least the identity")
}

pub fn orbit_representatives(list: &[MonomialSubspace]) -> Vec<MonomialSubspace> {
    let mut reps: Vec<MonomialSubspace> = list.iter().map(canonical_form).collect();
    sort_canonical(&mut reps);
    reps.dedup();
    reps
}

/// Every image of every member of `list` under variable permutations.
pub fn orbit_closure(list: &[MonomialSubspace]) -> Vec<MonomialSubspace> {
    let mut out: Vec<MonomialSubspace> = Vec::new();
    for w in list {
        for p in permutations(w.r() + 1) {
            out.push(w.permute(&p));
        }
    }
    sort_canonical(&mut out);
    out.dedup();
    out
}

fn check_budget(n: u64, b: u64, budget: u64) -> Result<()> {
    let count = binom(n, b as i64);
    if count > BigUint::from(budget) {
        return Err(Error::BudgetExceeded { count: count.to_string(), budget });
    }
    Ok(())
}

struct Search<'a> {
    monomials: Vec<Monomial>,
    exps: Vec<Vec<i64>>,
    /// `top[idx][i][k]`: largest sum of `k` exponents of `x_i` among monomials `idx..`.
    top: Vec<Vec<Vec<i64>>>,
    d: i64,
    filter: Option<&'a dyn Fn(&MonomialSubspace) -> bool>,
    r: usize,
    deg: u32,
    best: Option<i128>,
    best_sets: Vec<Vec<usize>>,
    unrestricted: Option<i128>,
    leaves: u64,
    chosen: Vec<usize>,
    coords: Vec<i64>,
}

impl<'a> Search<'a> {
    fn new(r: usize, d: u32, b: usize, filter: Option<&'a dyn Fn(&MonomialSubspace) -> bool>) -> Self {
        let monomials = enumerate_monomials(r, d);
        let exps: Vec<Vec<i64>> = monomials
            .iter()
            .map(|m| m.exps().iter().map(|&e| e as i64).collect())
            .collect();
        let n = monomials.len();
        let mut top = Vec::with_capacity(n + 1);
        for idx in 0..=n {
            let per_var = (0..=r)
                .map(|i| {
                    let mut col: Vec<i64> = exps[idx..].iter().map(|e| e[i]).collect();
                    col.sort_unstable_by(|a, b| b.cmp(a));
                    let mut sums = vec![0i64; b + 1];
                    for k in 1..=b {
                        sums[k] = sums[k - 1] + col.get(k - 1).copied().unwrap_or(0);
                    }
                    sums
                })
                .collect();
            top.push(per_var);
        }
        Search {
            monomials,
            exps,
            top,
            d: d as i64,
            filter,
            r,
            deg: d,
            best: None,
            best_sets: Vec::new(),
            unrestricted: None,
            leaves: 0,
            chosen: Vec::with_capacity(b),
            coords: vec![0; r + 1],
        }
    }

    fn norm(&self) -> i128 {
        self.coords.iter().map(|&c| c as i128 * c as i128).sum()
    }

    fn subspace(&self, set: &[usize]) -> MonomialSubspace {
        let members = set.iter().map(|&i| self.monomials[i].clone()).collect();
        MonomialSubspace::from_sorted_unchecked(self.r, self.deg, members)
    }

    fn run(&mut self, idx: usize, left: usize) {
        if left == 0 {
            self.leaf();
            return;
        }
        if self.exps.len() - idx < left {
            return;
        }
        if let Some(best) = self.best {
            if self.bound(idx, left) < best {
                return;
            }
        }
        for (c, e) in self.coords.iter_mut().zip(&self.exps[idx]) {
            *c += e;
        }
        self.chosen.push(idx);
        self.run(idx + 1, left - 1);
        self.chosen.pop();
        for (c, e) in self.coords.iter_mut().zip(&self.exps[idx]) {
            *c -= e;
        }
        self.run(idx + 1, left);
    }

    /// Upper bound on `|c|^2` over completions choosing `left` of the monomials `idx..`.
    fn bound(&self, idx: usize, left: usize) -> i128 {
        let kd = left as i128 * self.d as i128;
        let cmax = *self.coords.iter().max().expect("r >= 0") as i128;
        let top = &self.top[idx];
        let cross: i128 = self
            .coords
            .iter()
            .zip(top)
            .map(|(&c, t)| c as i128 * t[left] as i128)
            .sum();
        let smax = top.iter().map(|t| t[left]).max().expect("r >= 0") as i128;
        self.norm() + 2 * cross.min(kd * cmax) + kd * kd.min(smax)
    }

    fn leaf(&mut self) {
        self.leaves += 1;
        let norm = self.norm();
        if self.unrestricted.is_none_or(|u| norm > u) {
            self.unrestricted = Some(norm);
        }
        if self.best.is_some_and(|b| norm < b) {
            return;
        }
        if let Some(filter) = self.filter {
            if !filter(&self.subspace(&self.chosen)) {
                return;
            }
        }
        if self.best.is_none_or(|b| norm > b) {
            self.best = Some(norm);
            self.best_sets.clear();
        }
        self.best_sets.push(self.chosen.clone());
    }
}

/// All `b`-subsets of `M_d` of maximal state norm.
pub fn brute_force_z(r: usize, d: u32, b: u64, budget: u64) -> Result<WorstReport> {
    let n = count_monomials(r, d);
    if b > n {
        return Err(Error::OutOfRange { t: b, max: n });
    }
    check_budget(n, b, budget)?;
    let mut search = Search::new(r, d, b as usize, None);
    search.run(0, b as usize);
    let maximizers = search.best_sets.iter().map(|s| search.subspace(s)).collect();
    WorstReport::assemble(r, d, b, Method::Brute, maximizers, search.leaves)
}

/// Maximal-norm `Q(d)`-subsets of `M_d` that pass the persistence test for `spec`.
pub fn brute_force_x(spec: &HilbertPolynomialSpec, d: u32, budget: u64) -> Result<WorstReport> {
    let r = spec.r();
    if (d as u64) < spec.gotzmann() {
        return Err(Error::Precondition(format!(
            "d = {d} below the Gotzmann number {}",
            spec.gotzmann()
        )));
    }
    let b = to_u64(&spec.eval_q(d as i64))?;
    let n = count_monomials(r, d);
    check_budget(n, b, budget)?;
    let q_next = to_u64(&spec.eval_q(d as i64 + 1))? as usize;
    let filter = |w: &MonomialSubspace| growth(w) == q_next;
    let mut search = Search::new(r, d, b as usize, Some(&filter));
    search.run(0, b as usize);
    if search.best_sets.is_empty() {
        return Err(Error::Internal("no persistent subspace found".into()));
    }
    let maximizers = search.best_sets.iter().map(|s| search.subspace(s)).collect();
    let mut report = WorstReport::assemble(r, d, b, Method::Brute, maximizers, search.leaves)?;
    report.spec = Some(spec.label().to_string());
    report.unrestricted_max_norm_sq = search.unrestricted.map(BigInt::from);
    Ok(report)
}

fn single_point(w: &MonomialSubspace) -> bool {
    let r = w.r();
    let d = w.d();
    !w.contains(&Monomial::power(r, 0, d)) && (1..=r).all(|i| w.contains(&Monomial::power(r, i, d)))
}

fn borel_permutation(w: &MonomialSubspace) -> Option<Vec<usize>> {
    ideal_from_subspace(w).borel_permutation()
}

fn certified(threshold: Option<u64>, d: u32, cap: u64) -> bool {
    threshold.is_some_and(|d0| d0 <= d as u64 && (d as u64) <= cap)
}

/// `x0^{d-l} W' + A_{C(r+l,r),d}` for every `W'` in `Z_l^rho(k[x1..xr])`.
pub fn construct_constant(r: usize, c: u64, d: u32, budget: u64, cap: u64) -> Result<WorstReport> {
    if c == 0 {
        return Err(Error::Precondition("the constant must be positive".into()));
    }
    let spec = HilbertPolynomialSpec::constant(r, c)?;
    if (d as u64) < spec.gotzmann() {
        return Err(Error::Precondition(format!("d = {d} below the Gotzmann number {c}")));
    }
    let (l, _) = spec.l_e(d as i64);
    let big_l = cbinom(r as i64 + l, r as i64);
    let rho = to_u64(&(&big_l - BigInt::from(c)))?;
    let l = l as u32;
    let inner = brute_force_z(r - 1, l, rho, budget)?;
    let tail = lex_cosegment(r, d, to_u64(&big_l)?)?;
    let lift = Monomial::power(r, 0, d - l);

    let mut outputs = Vec::with_capacity(inner.maximizers.len());
    for w_prime in &inner.maximizers {
        let head = w_prime.embed().times(&lift);
        outputs.push(head.union(&tail)?);
    }
    let mut report = WorstReport::assemble(
        r,
        d,
        to_u64(&spec.eval_q(d as i64))?,
        Method::Construct,
        outputs,
        inner.searched_count,
    )?;
    report.checks = report
        .maximizers
        .iter()
        .map(|w| {
            Ok(ConstructionCheck {
                persistent: persistence_check(w, &spec)?,
                borel_permutation: borel_permutation(w),
                single_point: Some(single_point(w)),
            })
        })
        .collect::<Result<_>>()?;
    report.window_certified = Some(certified(spec.threshold_dp(cap.max(d as u64)), d, cap.max(d as u64)));
    report.spec = Some(spec.label().to_string());
    Ok(report)
}

/// `x0^gamma (x0 S_{delta-1} + W')` with `W'` ranging over the worst
/// `(C(r+delta-1, r-1) - p)`-dimensional subspaces of `k[x1..xr]_delta`.
pub fn construct_goodsit(
    r: usize,
    gamma: u64,
    p: u64,
    d: u32,
    budget: u64,
    cap: u64,
) -> Result<WorstReport> {
    if gamma == 0 {
        return Err(Error::Precondition("gamma = 0 is the constant case".into()));
    }
    if r < 2 {
        return Err(Error::Unsupported("the construction needs r >= 2".into()));
    }
    let spec = HilbertPolynomialSpec::goodsit(r, gamma, p)?;
    if (d as u64) < spec.gotzmann() {
        return Err(Error::Precondition(format!(
            "d = {d} below the Gotzmann number {}",
            spec.gotzmann()
        )));
    }
    let delta = d - gamma as u32;
    let (w_primes, inner_count) = if p == 0 {
        (vec![MonomialSubspace::full(r - 1, delta)], 0)
    } else {
        let inner = construct_constant(r - 1, p, delta, budget, cap)?;
        (orbit_closure(&inner.maximizers), inner.searched_count)
    };
    let head = match delta {
        0 => MonomialSubspace::empty(r, 0),
        _ => lex_segment(r, delta, count_monomials(r, delta - 1))?,
    };
    let lift = Monomial::power(r, 0, gamma as u32);
    let sub_spec = (p > 0).then(|| HilbertPolynomialSpec::constant(r - 1, p)).transpose()?;

    let mut pairs = Vec::with_capacity(w_primes.len());
    for w_prime in &w_primes {
        let w = head.union(&w_prime.embed())?.times(&lift);
        pairs.push((w, w_prime.clone()));
    }
    let outputs = pairs.iter().map(|(w, _)| w.clone()).collect();
    let mut report = WorstReport::assemble(
        r,
        d,
        to_u64(&spec.eval_q(d as i64))?,
        Method::Construct,
        outputs,
        inner_count,
    )?;
    let z0 = MonomialSubspace::full(r, delta).times(&lift);
    let p0 = cbinom(r as i64 + d as i64, r as i64) - cbinom(r as i64 + delta as i64, r as i64);
    let z0_matches = BigInt::from(ideal_from_subspace(&z0).hilbert_function_quotient(d)) == p0;
    let mut checks = Vec::new();
    let mut decompositions = Vec::new();
    for w in &report.maximizers {
        let (_, w_prime) = pairs.iter().find(|(x, _)| x == w).expect("constructed above");
        checks.push(ConstructionCheck {
            persistent: persistence_check(w, &spec)?,
            borel_permutation: borel_permutation(w),
            single_point: None,
        });
        let z1_persistent = match &sub_spec {
            Some(s) => persistence_check(w_prime, s)?,
            None => true,
        };
        decompositions.push(Decomposition {
            z0: z0.clone(),
            z1: w_prime.clone(),
            z0_matches,
            z1_persistent,
        });
    }
    report.checks = checks;
    report.decompositions = decompositions;
    let cap = cap.max(d as u64);
    report.window_certified = Some(p == 0 || certified(spec.threshold_dup(cap), d, cap));
    report.spec = Some(spec.label().to_string());
    Ok(report)
}

/// Dispatch on the shape `C(r+d,r) - C(r+d-gamma,r) + p` of `spec`.
pub fn construct_hilbert(
    spec: &HilbertPolynomialSpec,
    d: u32,
    budget: u64,
    cap: u64,
) -> Result<WorstReport> {
    let p = spec
        .p_const()
        .ok_or_else(|| Error::Unsupported(format!("{} has no closed-form construction", spec.label())))?;
    if spec.is_zero() {
        return Err(Error::Unsupported("P = 0 has no construction".into()));
    }
    match spec.gamma() {
        0 => construct_constant(spec.r(), p, d, budget, cap),
        g if spec.r() == 1 => construct_constant(1, g, d, budget, cap),
        g => construct_goodsit(spec.r(), g, p, d, budget, cap),
    }
}

/// Complement is a bijection between the maximizers for `b` and for `C(r+d,r) - b`.
pub fn verify_duality(r: usize, d: u32, b: u64, budget: u64) -> Result<bool> {
    let n = count_monomials(r, d);
    let small = brute_force_z(r, d, b, budget)?;
    let large = brute_force_z(r, d, n - b, budget)?;
    let mut images: Vec<MonomialSubspace> = small.maximizers.iter().map(|w| w.complement()).collect();
    sort_canonical(&mut images);
    Ok(images == large.maximizers && small.dist0_sq == large.dist0_sq)
}

/// Saturated ideals of the constructed points, as a sorted set.
pub fn saturations(report: &WorstReport) -> BTreeSet<Vec<Monomial>> {
    report
        .maximizers
        .iter()
        .map(|w| ideal_from_subspace(w).saturate().generators().to_vec())
        .collect()
}

/// The constructions give the same saturated ideals at every degree of `[d_low, d_high]`.
pub fn stability_window_check(
    r: usize,
    gamma: u64,
    p: u64,
    d_low: u32,
    d_high: u32,
    budget: u64,
    cap: u64,
) -> Result<bool> {
    let spec = if gamma == 0 {
        HilbertPolynomialSpec::constant(r, p)?
    } else {
        HilbertPolynomialSpec::goodsit(r, gamma, p)?
    };
    let mut first: Option<BTreeSet<Vec<Monomial>>> = None;
    for d in d_low..=d_high {
        let sats = saturations(&construct_hilbert(&spec, d, budget, cap)?);
        match &first {
            None => first = Some(sats),
            Some(f) if *f != sats => return Ok(false),
            Some(_) => {}
        }
    }
    Ok(true)
}

/// Saturated ideals of the constructed points.
pub fn saturated_ideals(report: &WorstReport) -> Vec<MonomialIdeal> {
    report
        .maximizers
        .iter()
        .map(|w| ideal_from_subspace(w).saturate())
        .collect()
}

/// The structural properties of a small-side maximizer `w` of `Z_d^{P(d)}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct General1Bullets {
    /// `dP - 2e < max c <= dP - e`.
    pub max_coordinate: bool,
    /// Some maximal coordinate `beta` has `x_beta^{floor(d/2)}` dividing all of `w`
    /// and `U_beta(n)` inside `w` for every member `n`.
    pub beta: Option<usize>,
    pub borel_permutation: Option<Vec<usize>>,
}

impl General1Bullets {
    pub fn all(&self) -> bool {
        self.max_coordinate && self.beta.is_some() && self.borel_permutation.is_some()
    }
}

pub fn general1_bullets(w: &MonomialSubspace, spec: &HilbertPolynomialSpec) -> General1Bullets {
    let d = w.d() as i64;
    let c = state_vector(w);
    let big_p = spec.eval_p(d);
    let (_, e) = spec.l_e(d);
    let dp = &big_p * d;
    let cmax = *c.coords().iter().max().expect("r >= 0");
    let max_coordinate = &dp - &e * 2 < BigInt::from(cmax) && BigInt::from(cmax) <= &dp - &e;
    let half = w.d() / 2;
    let beta = (0..=w.r()).filter(|&i| c.coords()[i] == cmax).find(|&i| {
        w.iter().all(|m| m.exp(i) >= half)
            && w.iter().all(|n| u_set(i, n).iter().all(|m| w.contains(m)))
    });
    General1Bullets {
        max_coordinate,
        beta,
        borel_permutation: borel_permutation(&w.complement()),
    }
}

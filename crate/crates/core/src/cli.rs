//! Command-line surface: argument parsing, JSON and text reports, and the
//! verification suites.

use std::path::Path;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;
use serde_json::{json, Map, Number, Value};

use crate::error::{Error, Result};
use crate::hilbert::{l_e_for, parse_spec, to_u64, DerivedScalars, HilbertPolynomialSpec};
use crate::ideal::{
    growth, ideal_from_subspace, lex_ideal, murai_check, parse_ideal, persistence_check,
    regularity_borel, MonomialIdeal,
};
use crate::kstability::{default_dmin, futaki_expansion, futaki_value, k_instability_report, FutakiExpansion};
use crate::monomial::{count_monomials, enumerate_monomials, lex_segment, MonomialSubspace};
use crate::state::{adapted_from_state, state_vector, OnePS, StateVector};
use crate::worst::{
    brute_force_x, brute_force_z, construct_constant, construct_hilbert, general1_bullets,
    saturated_ideals, sort_canonical, stability_window_check, WorstReport, BUDGET_ENV,
    DEFAULT_BUDGET, DEFAULT_CAP,
};

#[derive(Parser, Debug)]
#[command(name = "git-lab", version, about = "Worst unstable monomial points of Grassmannians and Hilbert schemes")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Macaulay representation and Gotzmann number of a Hilbert polynomial.
    Macaulay(PolyArgs),
    /// Scalar functions l, e, rho, p, alpha, epsilon, ... at one degree.
    Scalars(ScalarArgs),
    /// Least degrees from which the threshold inequalities hold up to the cap.
    Thresholds(ThresholdArgs),
    /// State vector of a monomial subspace.
    State(StateArgs),
    /// Worst points of the Grassmannian of b-dimensional monomial subspaces of S_d.
    WorstGr(WorstGrArgs),
    /// Worst Hilbert points with a given Hilbert polynomial.
    WorstHilb(WorstHilbArgs),
    /// Regularity of a monomial ideal through a Borel-fixed permutation of its saturation.
    Regularity(IdealArgs),
    /// Gotzmann persistence test for a Q(d)-dimensional monomial subspace.
    Persistence(SubspaceSpecArgs),
    /// Murai condition for a Q(d)-dimensional monomial subspace.
    Murai(SubspaceSpecArgs),
    /// Donaldson-Futaki expansion of a monomial ideal.
    Futaki(FutakiArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Args, Debug)]
pub struct PolyArgs {
    #[arg(long)]
    pub r: usize,
    /// const:<c> | goodsit:<gamma>,<p> | binom:<c0>,<c1>,...
    #[arg(long)]
    pub poly: String,
}

#[derive(Args, Debug)]
pub struct ScalarArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    #[arg(long)]
    pub d: u32,
}

#[derive(Args, Debug)]
pub struct ThresholdArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
}

#[derive(Args, Debug)]
pub struct StateArgs {
    #[arg(long)]
    pub r: usize,
    /// Comma-separated monomials, e.g. `x0^3,x0^2*x1`.
    #[arg(long)]
    pub subspace: String,
    /// Degree, needed only for the empty subspace.
    #[arg(long)]
    pub d: Option<u32>,
}

#[derive(Args, Debug)]
pub struct Limits {
    #[arg(long, env = BUDGET_ENV, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u64,
}

#[derive(Args, Debug)]
pub struct MethodArgs {
    #[arg(long, conflicts_with = "construct")]
    pub brute: bool,
    #[arg(long)]
    pub construct: bool,
}

#[derive(Args, Debug)]
pub struct WorstGrArgs {
    #[arg(long)]
    pub r: usize,
    #[arg(long)]
    pub d: u32,
    #[arg(long)]
    pub b: u64,
    #[command(flatten)]
    pub method: MethodArgs,
    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Args, Debug)]
pub struct WorstHilbArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    #[arg(long)]
    pub d: u32,
    #[command(flatten)]
    pub method: MethodArgs,
    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Args, Debug)]
pub struct IdealArgs {
    #[arg(long)]
    pub r: usize,
    /// Generator list, or a file containing one.
    #[arg(long, required_unless_present = "from_worst", conflicts_with = "from_worst")]
    pub ideal: Option<String>,
    /// Use the saturated ideals of the constructed worst points instead.
    #[arg(long, requires = "poly")]
    pub from_worst: bool,
    #[arg(long)]
    pub poly: Option<String>,
    /// Degree of the construction; defaults to the start of the certified window.
    #[arg(long)]
    pub d: Option<u32>,
    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Args, Debug)]
pub struct SubspaceSpecArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    #[arg(long)]
    pub subspace: String,
    #[arg(long)]
    pub d: Option<u32>,
}

#[derive(Args, Debug)]
pub struct FutakiArgs {
    #[command(flatten)]
    pub poly: PolyArgs,
    /// Generator list, or a file containing one.
    #[arg(long, required_unless_present = "from_worst", conflicts_with = "from_worst")]
    pub ideal: Option<String>,
    #[arg(long)]
    pub from_worst: bool,
    /// Degree of the construction when `--from-worst` is given.
    #[arg(long)]
    pub d: Option<u32>,
    /// Weights `w0,w1,...`; both `(r,-1,...,-1)` and its negative when omitted.
    #[arg(long, allow_hyphen_values = true)]
    pub lambda: Option<String>,
    #[arg(long)]
    pub dmin: Option<u32>,
    #[command(flatten)]
    pub limits: Limits,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    #[arg(long)]
    pub suite: String,
    /// Restrict the grid to one `r`.
    #[arg(long)]
    pub r: Option<usize>,
    /// Restrict the grid to one degree, where the suite has a degree axis.
    #[arg(long)]
    pub d: Option<u32>,
    #[command(flatten)]
    pub limits: Limits,
}

/// Grid restrictions and limits for [`run_suite`].
#[derive(Clone, Debug)]
pub struct SuiteParams {
    pub r: Option<usize>,
    pub d: Option<u32>,
    pub budget: u64,
    pub cap: u64,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { r: None, d: None, budget: DEFAULT_BUDGET, cap: DEFAULT_CAP }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Case {
    pub params: String,
    pub expected: String,
    pub got: String,
    pub pass: bool,
    /// Set when the case was skipped for exceeding the budget.
    pub refused: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteResult {
    pub suite: String,
    pub cases: Vec<Case>,
}

impl SuiteResult {
    pub fn passed(&self) -> usize {
        self.cases.iter().filter(|c| c.pass).count()
    }

    pub fn refused(&self) -> usize {
        self.cases.iter().filter(|c| c.refused.is_some()).count()
    }

    pub fn failed(&self) -> usize {
        self.cases.len() - self.passed() - self.refused()
    }

    pub fn exit_code(&self) -> i32 {
        if self.failed() > 0 {
            1
        } else if self.refused() > 0 {
            3
        } else {
            0
        }
    }

    pub fn to_json(&self) -> Value {
        let cases: Vec<Value> = self
            .cases
            .iter()
            .map(|c| {
                json!({
                    "params": c.params,
                    "expected": c.expected,
                    "got": c.got,
                    "pass": c.pass,
                    "refused": c.refused,
                })
            })
            .collect();
        json!({
            "suite": self.suite,
            "cases": cases,
            "summary": {
                "passed": self.passed(),
                "failed": self.failed(),
                "refused": self.refused(),
            },
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let status = match (&c.refused, c.pass) {
                (Some(_), _) => "REFUSED",
                (None, true) => "PASS",
                (None, false) => "FAIL",
            };
            out.push_str(&format!("{status} {} [{}]", self.suite, c.params));
            match &c.refused {
                Some(msg) => out.push_str(&format!(": {msg}")),
                None if !c.pass => {
                    out.push_str(&format!(": expected {}, got {}", c.expected, c.got))
                }
                None => {}
            }
            out.push('\n');
        }
        out.push_str(&format!(
            "{}: {} passed, {} failed, {} refused\n",
            self.suite,
            self.passed(),
            self.failed(),
            self.refused()
        ));
        out
    }
}

pub const SUITES: [&str; 10] = [
    "duality",
    "useless",
    "opt1",
    "general1",
    "maximality",
    "sharpness",
    "unchanged",
    "regularity",
    "futaki",
    "murai-iff-r2",
];

fn case(params: String, body: impl FnOnce() -> Result<(String, String)>) -> Case {
    match body() {
        Ok((expected, got)) => Case { pass: expected == got, params, expected, got, refused: None },
        Err(e @ Error::BudgetExceeded { .. }) => Case {
            params,
            expected: String::new(),
            got: String::new(),
            pass: false,
            refused: Some(e.to_string()),
        },
        Err(e) => Case {
            params,
            expected: "no error".into(),
            got: e.to_string(),
            pass: false,
            refused: None,
        },
    }
}

fn grid_r(params: &SuiteParams, default: &[usize]) -> Vec<usize> {
    match params.r {
        Some(r) => vec![r],
        None => default.to_vec(),
    }
}

fn list_text(list: &[MonomialSubspace]) -> String {
    format!("[{}]", list.iter().map(|w| format!("{{{w}}}")).join(" "))
}

fn rat_text(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Start of the certified window of the construction for `spec`, or `g_P` when none is found.
pub fn window_start(spec: &HilbertPolynomialSpec, cap: u64) -> u32 {
    let threshold = if spec.gamma() == 0 { spec.threshold_dp(cap) } else { spec.threshold_dup(cap) };
    threshold.unwrap_or(spec.gotzmann()).max(spec.gotzmann()) as u32
}

fn goodsit_grid(params: &SuiteParams) -> Result<Vec<HilbertPolynomialSpec>> {
    let mut specs = Vec::new();
    for r in grid_r(params, &[2, 3]) {
        for gamma in 1..=3 {
            for p in 0..=1 {
                specs.push(HilbertPolynomialSpec::goodsit(r, gamma, p)?);
            }
        }
    }
    Ok(specs)
}

/// Run the suite `name` over its parameter grid.
pub fn run_suite(name: &str, params: &SuiteParams) -> Result<SuiteResult> {
    let cases = match name {
        "duality" => suite_duality(params),
        "useless" => suite_useless(params),
        "opt1" => suite_opt1(params)?,
        "general1" => suite_general1(params)?,
        "maximality" => suite_maximality(params),
        "sharpness" => suite_sharpness(params)?,
        "unchanged" => suite_unchanged(params)?,
        "regularity" => suite_regularity(params)?,
        "futaki" => suite_futaki(params)?,
        "murai-iff-r2" => suite_murai(params)?,
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(SuiteResult { suite: name.to_string(), cases })
}

fn suite_duality(params: &SuiteParams) -> Vec<Case> {
    let mut cases = Vec::new();
    for r in grid_r(params, &[2]) {
        let degrees = params.d.map_or_else(|| (1..=4).collect::<Vec<u32>>(), |d| vec![d]);
        for d in degrees {
            let n = count_monomials(r, d);
            for b in 0..=n {
                cases.push(case(format!("r={r} d={d} b={b}"), || {
                    let small = brute_force_z(r, d, b, params.budget)?;
                    let large = brute_force_z(r, d, n - b, params.budget)?;
                    let mut images: Vec<MonomialSubspace> =
                        small.maximizers.iter().map(|w| w.complement()).collect();
                    sort_canonical(&mut images);
                    Ok((
                        format!("{} dist0={}", list_text(&large.maximizers), rat_text(&large.dist0_sq)),
                        format!("{} dist0={}", list_text(&images), rat_text(&small.dist0_sq)),
                    ))
                }));
            }
        }
    }
    cases
}

fn suite_useless(params: &SuiteParams) -> Vec<Case> {
    let mut cases = Vec::new();
    let d = params.d.unwrap_or(3);
    for r in grid_r(params, &[2]) {
        for label in ["const:3", "goodsit:1,0"] {
            cases.push(case(format!("{label} r={r} d={d}"), || {
                let spec = parse_spec(label, r)?;
                let b = to_u64(&spec.eval_q(d as i64))?;
                let z = brute_force_z(r, d, b, params.budget)?;
                let n = z.maximizers.len();
                let mut persistent = 0;
                for w in &z.maximizers {
                    if persistence_check(w, &spec)? {
                        persistent += 1;
                    }
                }
                let want = if spec.is_constant() { n } else { 0 };
                Ok((format!("{want} of {n} persistent"), format!("{persistent} of {n} persistent")))
            }));
        }
    }
    cases
}

fn suite_opt1(params: &SuiteParams) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for r in grid_r(params, &[2]) {
        for c in 1..=3u64 {
            let spec = HilbertPolynomialSpec::constant(r, c)?;
            let d = params.d.unwrap_or_else(|| window_start(&spec, params.cap));
            cases.push(case(format!("const:{c} r={r} d={d}"), || {
                let z = brute_force_z(r, d, c, params.budget)?;
                let (_, e) = spec.l_e(d as i64);
                let top = BigInt::from(d) * c - e;
                let mut got = Vec::new();
                for w in &z.maximizers {
                    let cmax = *state_vector(w).coords().iter().max().expect("r >= 0");
                    let borel = ideal_from_subspace(&w.complement()).borel_permutation().is_some();
                    got.push(format!("max={cmax} borel={borel}"));
                }
                let expected = vec![format!("max={top} borel=true"); got.len()];
                Ok((expected.join(";"), got.join(";")))
            }));
        }
    }
    Ok(cases)
}

fn suite_general1(params: &SuiteParams) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for r in grid_r(params, &[2]) {
        // c = 1 has e = 0, which empties the interval (dP - 2e, dP - e]
        for c in 2..=3u64 {
            let spec = HilbertPolynomialSpec::constant(r, c)?;
            let start = window_start(&spec, params.cap);
            let degrees = params.d.map_or_else(|| vec![start, start + 1], |d| vec![d]);
            for d in degrees {
                cases.push(case(format!("const:{c} r={r} d={d}"), || {
                    let z = brute_force_z(r, d, c, params.budget)?;
                    let got: Vec<String> = z
                        .maximizers
                        .iter()
                        .map(|w| general1_bullets(w, &spec).all().to_string())
                        .collect();
                    let expected = vec!["true".to_string(); got.len()];
                    Ok((expected.join(","), got.join(",")))
                }));
            }
        }
    }
    Ok(cases)
}

fn suite_maximality(params: &SuiteParams) -> Vec<Case> {
    let mut cases = Vec::new();
    for r in grid_r(params, &[2]) {
        let degrees = params.d.map_or_else(|| (1..=4).collect::<Vec<u32>>(), |d| vec![d]);
        for d in degrees {
            let n = count_monomials(r, d);
            for b in 1..=n {
                cases.push(case(format!("r={r} d={d} b={b}"), || maximality_case(r, d, b, params.budget)));
            }
        }
    }
    cases
}

fn maximality_case(r: usize, d: u32, b: u64, budget: u64) -> Result<(String, String)> {
    let monos = enumerate_monomials(r, d);
    let n = monos.len() as u64;
    let count = crate::monomial::binom(n, b as i64);
    if count > budget.into() {
        return Err(Error::BudgetExceeded { count: count.to_string(), budget });
    }
    let (l, e) = l_e_for(r, &BigInt::from(b));
    let top = BigInt::from(d) * b - e;
    let lower = lex_segment(r, d, to_u64(&crate::hilbert::cbinom(r as i64 + l - 1, r as i64))?)?;
    let upper = lex_segment(r, d, to_u64(&crate::hilbert::cbinom(r as i64 + l, r as i64))?)?;
    let mut above = 0u64;
    let mut equal = 0u64;
    let mut outside = 0u64;
    for subset in monos.iter().cloned().combinations(b as usize) {
        let w = MonomialSubspace::new(r, d, subset)?;
        let c0 = BigInt::from(state_vector(&w).coords()[0]);
        if c0 > top {
            above += 1;
        } else if c0 == top {
            equal += 1;
            if !(lower.is_subset(&w) && w.is_subset(&upper)) {
                outside += 1;
            }
        }
    }
    Ok((
        format!("above=0 attained=true outside=0 bound={top}"),
        format!("above={above} attained={} outside={outside} bound={top}", equal > 0),
    ))
}

fn construction_specs(params: &SuiteParams) -> Result<Vec<HilbertPolynomialSpec>> {
    let mut specs = Vec::new();
    for r in grid_r(params, &[2, 3]) {
        for c in 1..=5 {
            specs.push(HilbertPolynomialSpec::constant(r, c)?);
        }
    }
    specs.extend(goodsit_grid(params)?);
    Ok(specs)
}

fn suite_sharpness(params: &SuiteParams) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for spec in construction_specs(params)? {
        let d = params.d.unwrap_or_else(|| window_start(&spec, params.cap));
        let r = spec.r();
        cases.push(case(format!("{} r={r} d={d}", spec.label()), || {
            let report = construct_hilbert(&spec, d, params.budget, params.cap)?;
            let expected: Vec<String> = (0..=5).map(|t| spec.eval_p((d + t) as i64).to_string()).collect();
            let mut got = Vec::new();
            let mut want = Vec::new();
            for w in &report.maximizers {
                let ideal = ideal_from_subspace(w);
                let dims: Vec<String> =
                    (0..=5).map(|t| ideal.hilbert_function_quotient(d + t).to_string()).collect();
                got.push(dims.join(","));
                want.push(expected.join(","));
                // the first bullet is empty when e = 0
                if spec.is_constant() && spec.l_e(d as i64).1.is_positive() {
                    got.push(format!("bullets={}", general1_bullets(&w.complement(), &spec).all()));
                    want.push("bullets=true".into());
                }
            }
            Ok((want.join(";"), got.join(";")))
        }));
    }
    Ok(cases)
}

fn suite_unchanged(params: &SuiteParams) -> Result<Vec<Case>> {
    let mut specs = goodsit_grid(params)?;
    for r in grid_r(params, &[2]) {
        for c in 1..=3 {
            specs.push(HilbertPolynomialSpec::constant(r, c)?);
        }
    }
    let mut cases = Vec::new();
    for spec in specs {
        let d = params.d.unwrap_or_else(|| window_start(&spec, params.cap));
        let r = spec.r();
        cases.push(case(format!("{} r={r} d={d}..{}", spec.label(), d + 3), || {
            let same = stability_window_check(
                r,
                spec.gamma(),
                spec.p_const().expect("closed form"),
                d,
                d + 3,
                params.budget,
                params.cap,
            )?;
            Ok(("unchanged".into(), if same { "unchanged" } else { "changed" }.into()))
        }));
    }
    Ok(cases)
}

fn suite_regularity(params: &SuiteParams) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for r in grid_r(params, &[2, 3, 4]) {
        for gamma in 0..=3u64 {
            for p in 0..=5u64 {
                if gamma + p == 0 {
                    continue;
                }
                let spec = if gamma == 0 {
                    HilbertPolynomialSpec::constant(r, p)?
                } else {
                    HilbertPolynomialSpec::goodsit(r, gamma, p)?
                };
                let d = params.d.unwrap_or_else(|| window_start(&spec, params.cap));
                cases.push(case(format!("{} r={r} d={d}", spec.label()), || {
                    let l_p = spec.l_p().ok_or_else(|| Error::Internal("l_P undefined".into()))?;
                    let report = construct_hilbert(&spec, d, params.budget, params.cap)?;
                    let mut regs = Vec::new();
                    for ideal in saturated_ideals(&report) {
                        regs.push(regularity_borel(&ideal)?.0.to_string());
                    }
                    let want = vec![(l_p + gamma as i64 + 1).to_string(); regs.len()];
                    let lex = regularity_borel(&lex_ideal(&spec))?.0;
                    Ok((
                        format!("worst=[{}] lex={}", want.join(","), spec.gotzmann()),
                        format!("worst=[{}] lex={lex}", regs.join(",")),
                    ))
                }));
            }
        }
    }
    Ok(cases)
}

fn suite_futaki(params: &SuiteParams) -> Result<Vec<Case>> {
    let mut cases = Vec::new();
    for spec in goodsit_grid(params)? {
        let d = params.d.unwrap_or_else(|| window_start(&spec, params.cap));
        let r = spec.r();
        cases.push(case(format!("{} r={r} d={d}", spec.label()), || {
            let report = construct_hilbert(&spec, d, params.budget, params.cap)?;
            let lambda = OnePS::standard(r);
            let a1 = BigRational::new(BigInt::from((r as i64 + 1) * (spec.gamma() as i64 - 1)), BigInt::from(2));
            let mut want = Vec::new();
            let mut got = Vec::new();
            for ideal in saturated_ideals(&report) {
                let exp = futaki_expansion(&ideal, &lambda, &spec, default_dmin(&spec))?;
                want.push(format!("A1={}", rat_text(&a1)));
                got.push(format!("A1={}", rat_text(&exp.a1)));
            }
            Ok((want.join(";"), got.join(";")))
        }));
    }
    for r in grid_r(params, &[2]) {
        for c in [1u64, 3, 4] {
            let spec = HilbertPolynomialSpec::constant(r, c)?;
            let d = params.d.unwrap_or_else(|| window_start(&spec, params.cap));
            cases.push(case(format!("{} r={r} d={d}", spec.label()), || constant_futaki_case(&spec, d, params)));
        }
    }
    Ok(cases)
}

/// `F_{I,-lambda}(t) = -r + ((r+1) e / P) / t` at every sampled degree, and the matching expansion.
fn constant_futaki_case(spec: &HilbertPolynomialSpec, d: u32, params: &SuiteParams) -> Result<(String, String)> {
    let r = spec.r() as i64;
    let c = spec.p_const().expect("constant");
    let (_, e) = l_e_for(spec.r(), &BigInt::from(c));
    let slope = BigRational::new(BigInt::from(r + 1) * e, BigInt::from(c));
    let report = construct_constant(spec.r(), c, d, params.budget, params.cap)?;
    let lambda = OnePS::standard(spec.r()).neg();
    let d_min = default_dmin(spec);
    let mut want = Vec::new();
    let mut got = Vec::new();
    for ideal in saturated_ideals(&report) {
        for t in d_min..d_min + 6 {
            let formula = BigRational::from(BigInt::from(-r)) + &slope / BigRational::from(BigInt::from(t));
            want.push(rat_text(&formula));
            got.push(rat_text(&futaki_value(&ideal, &lambda, t)?));
        }
        let exp = futaki_expansion(&ideal, &lambda, spec, d_min)?;
        want.push(format!("A0={} A1={}", -r, rat_text(&slope)));
        got.push(format!("A0={} A1={}", rat_text(&exp.a0), rat_text(&exp.a1)));
    }
    Ok((want.join(";"), got.join(";")))
}

fn suite_murai(params: &SuiteParams) -> Result<Vec<Case>> {
    let d = params.d.unwrap_or(3);
    let mut cases = Vec::new();
    for label in ["const:3", "goodsit:1,0"] {
        let spec = parse_spec(label, 2)?;
        cases.push(case(format!("{label} r=2 d={d}"), || {
            let monos = enumerate_monomials(2, d);
            let q = to_u64(&spec.eval_q(d as i64))? as usize;
            let count = crate::monomial::binom(monos.len() as u64, q as i64);
            if count > params.budget.into() {
                return Err(Error::BudgetExceeded { count: count.to_string(), budget: params.budget });
            }
            let mut total = 0u64;
            let mut agree = 0u64;
            let mut persistent = 0u64;
            for subset in monos.iter().cloned().combinations(q) {
                let w = MonomialSubspace::new(2, d, subset)?;
                let p = persistence_check(&w, &spec)?;
                let m = murai_check(&w, &spec)?.holds;
                total += 1;
                persistent += p as u64;
                agree += (p == m) as u64;
            }
            Ok((
                format!("{total} of {total} agree ({persistent} persistent)"),
                format!("{agree} of {total} agree ({persistent} persistent)"),
            ))
        }));
    }
    Ok(cases)
}

// ---- JSON ----

pub fn big_json(x: &BigInt) -> Value {
    Value::Number(Number::from_str(&x.to_string()).expect("integer literal"))
}

pub fn rat_json(x: &BigRational) -> Value {
    json!({ "num": big_json(x.numer()), "den": big_json(x.denom()) })
}

fn opt_json<T>(x: Option<T>, f: impl FnOnce(T) -> Value) -> Value {
    x.map_or(Value::Null, f)
}

fn subspace_json(w: &MonomialSubspace) -> Value {
    Value::Array(w.iter().map(|m| Value::String(m.to_string())).collect())
}

fn ideal_json(ideal: &MonomialIdeal) -> Value {
    Value::Array(ideal.generators().iter().map(|m| Value::String(m.to_string())).collect())
}

pub fn spec_json(spec: &HilbertPolynomialSpec) -> Value {
    json!({
        "r": spec.r(),
        "poly": spec.poly().to_qpoly().to_string(),
        "label": spec.label(),
        "bSequence": spec.b_sequence(),
        "aSequence": spec.a_sequence(),
        "gotzmann": spec.gotzmann(),
        "gamma": spec.gamma(),
        "p": spec.p_const(),
    })
}

pub fn scalars_json(s: &DerivedScalars) -> Value {
    json!({
        "d": s.d,
        "delta": s.delta,
        "l": s.l,
        "e": big_json(&s.e),
        "rho": big_json(&s.rho),
        "pOfD": big_json(&s.p_of_d),
        "alpha": big_json(&s.alpha),
        "epsilon": big_json(&s.epsilon),
        "discriminant": opt_json(s.discriminant.as_ref(), rat_json),
        "center": rat_json(&s.center),
        "lPrime": s.l_prime,
        "ePrime": opt_json(s.e_prime.as_ref(), big_json),
    })
}

pub fn state_json(c: &StateVector) -> Value {
    let dist = c.dist0_sq();
    json!({
        "c": c.coords(),
        "d": c.d(),
        "b": c.b(),
        "normSq": big_json(&c.norm_sq()),
        "dist0SqNum": big_json(dist.numer()),
        "dist0SqDen": big_json(dist.denom()),
        "lambda": opt_json(adapted_from_state(c), |l| json!(l.weights())),
    })
}

pub fn worst_json(rep: &WorstReport) -> Value {
    let checks: Vec<Value> = rep
        .checks
        .iter()
        .map(|c| {
            json!({
                "persistent": c.persistent,
                "borelPermutation": c.borel_permutation,
                "singlePoint": c.single_point,
            })
        })
        .collect();
    let decompositions: Vec<Value> = rep
        .decompositions
        .iter()
        .map(|z| {
            json!({
                "z0": subspace_json(&z.z0),
                "z1": subspace_json(&z.z1),
                "z0Matches": z.z0_matches,
                "z1Persistent": z.z1_persistent,
            })
        })
        .collect();
    json!({
        "r": rep.r,
        "d": rep.d,
        "b": rep.b,
        "spec": rep.spec,
        "method": rep.method.as_str(),
        "maximizers": rep.maximizers.iter().map(subspace_json).collect::<Vec<_>>(),
        "maxNormSq": big_json(&rep.max_norm_sq),
        "dist0Sq": rat_json(&rep.dist0_sq),
        "adapted": rep.adapted.iter().map(|a| opt_json(a.as_ref(), |l| json!(l.weights()))).collect::<Vec<_>>(),
        "searchedCount": rep.searched_count,
        "orbitRepresentatives": rep.orbit_representatives.iter().map(subspace_json).collect::<Vec<_>>(),
        "unrestrictedMaxNormSq": opt_json(rep.unrestricted_max_norm_sq.as_ref(), big_json),
        "windowCertified": rep.window_certified,
        "checks": checks,
        "decompositions": decompositions,
    })
}

pub fn expansion_json(e: &FutakiExpansion) -> Value {
    json!({
        "lambda": e.lambda.weights(),
        "A0": rat_json(&e.a0),
        "A1": rat_json(&e.a1),
        "numerator": e.numerator.to_string(),
        "denominator": e.denominator.to_string(),
        "sampleWindow": [e.sample_window.0, e.sample_window.1],
        "destabilized": e.a1.is_positive(),
    })
}

/// Serialize `value` in the requested format; JSON keys come out sorted.
pub fn emit_report(value: &Value, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(value).expect("serializable");
            s.push('\n');
            s
        }
        Format::Text => {
            let mut out = String::new();
            render_text(value, 0, &mut out);
            out
        }
    }
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("none".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        Value::Object(m) if m.len() == 2 && m.contains_key("num") && m.contains_key("den") => {
            let (n, d) = (&m["num"], &m["den"]);
            Some(if d.as_u64() == Some(1) { n.to_string() } else { format!("{n}/{d}") })
        }
        Value::Array(items) => items
            .iter()
            .map(scalar_text)
            .collect::<Option<Vec<_>>>()
            .map(|parts| format!("[{}]", parts.join(", "))),
        Value::Object(_) => None,
    }
}

fn render_text(value: &Value, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    match value {
        Value::Object(map) => render_map(map, indent, out),
        Value::Array(items) => match scalar_text(value) {
            Some(s) => out.push_str(&format!("{pad}{s}\n")),
            None => {
                for item in items {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(item, indent + 2, out);
                }
            }
        },
        other => out.push_str(&format!("{pad}{}\n", scalar_text(other).expect("scalar"))),
    }
}

fn render_map(map: &Map<String, Value>, indent: usize, out: &mut String) {
    let pad = " ".repeat(indent);
    for (k, v) in map {
        match scalar_text(v) {
            Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
            None => {
                out.push_str(&format!("{pad}{k}:\n"));
                render_text(v, indent + 2, out);
            }
        }
    }
}

// ---- commands ----

/// Output of one invocation: the report text and the exit status.
pub struct Outcome {
    pub text: String,
    pub code: i32,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::BudgetExceeded { .. } => 3,
        Error::Internal(_) => 1,
        _ => 2,
    }
}

fn read_ideal(source: &str, r: usize) -> Result<MonomialIdeal> {
    let path = Path::new(source);
    if path.is_file() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("cannot read {source}: {e}")))?;
        let joined = text.split_whitespace().join(",");
        parse_ideal(&joined, r)
    } else {
        parse_ideal(source, r)
    }
}

fn worst_ideals(spec: &HilbertPolynomialSpec, d: Option<u32>, limits: &Limits) -> Result<Vec<MonomialIdeal>> {
    let d = d.unwrap_or_else(|| window_start(spec, limits.cap));
    let report = construct_hilbert(spec, d, limits.budget, limits.cap)?;
    Ok(saturated_ideals(&report))
}

fn regularity_json(ideal: &MonomialIdeal) -> Value {
    let saturated = ideal.saturate();
    let perm = saturated.borel_permutation();
    json!({
        "generators": ideal_json(ideal),
        "saturated": ideal_json(&saturated),
        "borelFixed": perm.as_ref().is_some_and(|p| saturated.permute(p).is_borel_fixed()),
        "permutation": perm,
        "regularity": perm.as_ref().map(|_| saturated.max_generator_degree().unwrap_or(0)),
    })
}

fn parse_subspace(text: &str, r: usize, d: Option<u32>) -> Result<MonomialSubspace> {
    MonomialSubspace::parse(text, r, d)
}

/// Execute a parsed command line.
pub fn execute(cli: &Cli) -> Result<Outcome> {
    let value = match &cli.command {
        Command::Macaulay(a) => spec_json(&parse_spec(&a.poly, a.r)?),
        Command::Scalars(a) => {
            let spec = parse_spec(&a.poly.poly, a.poly.r)?;
            scalars_json(&spec.derived_scalars(a.d as i64)?)
        }
        Command::Thresholds(a) => {
            let spec = parse_spec(&a.poly.poly, a.poly.r)?;
            json!({
                "poly": spec.label(),
                "gotzmann": spec.gotzmann(),
                "cap": a.cap,
                "thresholdDP": spec.threshold_dp(a.cap),
                "thresholdDup": spec.threshold_dup(a.cap),
            })
        }
        Command::State(a) => state_json(&state_vector(&parse_subspace(&a.subspace, a.r, a.d)?)),
        Command::WorstGr(a) => {
            let report = if a.method.construct {
                let n = count_monomials(a.r, a.d);
                if a.b >= n {
                    return Err(Error::Unsupported("the construction needs b < C(r+d, r)".into()));
                }
                construct_constant(a.r, n - a.b, a.d, a.limits.budget, a.limits.cap)?
            } else {
                brute_force_z(a.r, a.d, a.b, a.limits.budget)?
            };
            worst_json(&report)
        }
        Command::WorstHilb(a) => {
            let spec = parse_spec(&a.poly.poly, a.poly.r)?;
            let report = if a.method.construct {
                construct_hilbert(&spec, a.d, a.limits.budget, a.limits.cap)?
            } else {
                brute_force_x(&spec, a.d, a.limits.budget)?
            };
            worst_json(&report)
        }
        Command::Regularity(a) => match &a.ideal {
            Some(src) => regularity_json(&read_ideal(src, a.r)?),
            None => {
                let spec = parse_spec(a.poly.as_deref().expect("required by clap"), a.r)?;
                let ideals = worst_ideals(&spec, a.d, &a.limits)?;
                Value::Array(ideals.iter().map(regularity_json).collect())
            }
        },
        Command::Persistence(a) => {
            let spec = parse_spec(&a.poly.poly, a.poly.r)?;
            let w = parse_subspace(&a.subspace, a.poly.r, a.d)?;
            json!({
                "persistent": persistence_check(&w, &spec)?,
                "growth": growth(&w),
                "qNext": big_json(&spec.eval_q(w.d() as i64 + 1)),
            })
        }
        Command::Murai(a) => {
            let spec = parse_spec(&a.poly.poly, a.poly.r)?;
            let w = parse_subspace(&a.subspace, a.poly.r, a.d)?;
            let witness = murai_check(&w, &spec)?;
            let indices: Vec<Value> = witness
                .indices
                .iter()
                .map(|(n, i)| json!({ "monomial": n.to_string(), "index": i }))
                .collect();
            json!({
                "holds": witness.holds,
                "divisor": witness.divisor.as_ref().map(|m| m.to_string()),
                "indices": indices,
                "persistent": persistence_check(&w, &spec)?,
            })
        }
        Command::Futaki(a) => {
            let spec = parse_spec(&a.poly.poly, a.poly.r)?;
            let ideals = match &a.ideal {
                Some(src) => vec![read_ideal(src, a.poly.r)?],
                None => worst_ideals(&spec, a.d, &a.limits)?,
            };
            let d_min = a.dmin.unwrap_or_else(|| default_dmin(&spec));
            let mut out = Vec::new();
            for ideal in &ideals {
                let v = match &a.lambda {
                    Some(text) => expansion_json(&futaki_expansion(ideal, &OnePS::parse(text)?, &spec, d_min)?),
                    None => {
                        let rep = k_instability_report(ideal, &spec, Some(d_min))?;
                        json!({
                            "plus": expansion_json(&rep.plus),
                            "minus": expansion_json(&rep.minus),
                            "destabilized": rep.destabilized,
                            "destabilizing": rep.destabilizing.as_ref().map(|l| l.weights().to_vec()),
                        })
                    }
                };
                let mut v = v;
                v.as_object_mut().expect("object").insert("ideal".into(), ideal_json(ideal));
                out.push(v);
            }
            if a.ideal.is_some() {
                out.pop().expect("one ideal")
            } else {
                Value::Array(out)
            }
        }
        Command::Verify(a) => {
            let params = SuiteParams { r: a.r, d: a.d, budget: a.limits.budget, cap: a.limits.cap };
            let result = run_suite(&a.suite, &params)?;
            let text = match cli.format {
                Format::Json => emit_report(&result.to_json(), Format::Json),
                Format::Text => result.to_text(),
            };
            return Ok(Outcome { text, code: result.exit_code() });
        }
    };
    Ok(Outcome { text: emit_report(&value, cli.format), code: 0 })
}

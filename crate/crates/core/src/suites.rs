//! Verification suites over enumerated triples, shared by the command line
//! front end and the integration tests.

use std::fmt::{self, Debug};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::bdtriples::{enumerate_triples, solve_s, BDTriple, TripleSpec};
use crate::classical::{check_cdybe, check_cdybe_at, check_cybe, r_t, r_ts, random_points};
use crate::error::{Error, Result};
use crate::exactring::{Ring, Q};
use crate::io;
use crate::liecore::{omega_g, standard_R, standard_r, RepTensor};
use crate::quantum::{
    build_R_Ts, check_hecke, check_qdybe, check_qybe, dynamical_J_T, dynamical_R_T, flatten, flip_closed_form,
    identity_closed_form, quasiclassical_check, quasiclassical_check_dyn, row_weight_shift, DynSeries,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Suite {
    Cybe,
    Cdybe,
    Qybe,
    Hecke,
    Qdybe,
    Limit,
    Golden7,
    GaugeFlat,
}

impl Suite {
    pub const ALL: [Suite; 8] = [
        Suite::Cybe,
        Suite::Cdybe,
        Suite::Qybe,
        Suite::Hecke,
        Suite::Qdybe,
        Suite::Limit,
        Suite::Golden7,
        Suite::GaugeFlat,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Cybe => "cybe",
            Suite::Cdybe => "cdybe",
            Suite::Qybe => "qybe",
            Suite::Hecke => "hecke",
            Suite::Qdybe => "qdybe",
            Suite::Limit => "limit",
            Suite::Golden7 => "golden7",
            Suite::GaugeFlat => "gauge-flat",
        }
    }

    /// Ranks covered when no rank is given.
    fn default_ranks(self) -> Vec<usize> {
        match self {
            Suite::Qdybe | Suite::GaugeFlat => vec![2, 3],
            Suite::Golden7 => vec![3],
            _ => vec![2, 3, 4],
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::Invalid(format!("unknown suite {s:?}")))
    }
}

/// Default truncation order for dynamical suites.
pub fn default_order(n: usize) -> u32 {
    8.max(n as u32 + 2)
}

/// `flag`, else BDTWIST_ORDER, else the default for rank n.
pub fn resolve_order(flag: Option<u32>, n: usize) -> Result<u32> {
    if let Some(o) = flag {
        return Ok(o);
    }
    match std::env::var("BDTWIST_ORDER") {
        Ok(v) => v.trim().parse().map_err(|_| Error::Invalid(format!("BDTWIST_ORDER={v:?} is not an order"))),
        Err(_) => Ok(default_order(n)),
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    /// Restrict to sl(n); None runs the suite's default ranks.
    pub n: Option<usize>,
    pub order: Option<u32>,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
    /// Golden file contents for the closed-form suite.
    pub golden: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Offending {
    pub row: usize,
    pub col: usize,
    pub value: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckResult {
    pub suite: String,
    pub check: String,
    pub triple: Option<String>,
    pub passed: bool,
    pub residual_nnz: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_offending: Option<Offending>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl CheckResult {
    fn new(suite: Suite, check: &str, triple: Option<&BDTriple>) -> Self {
        Self {
            suite: suite.name().into(),
            check: check.into(),
            triple: triple.map(|t| t.to_string()),
            passed: true,
            residual_nnz: 0,
            first_offending: None,
            note: None,
        }
    }

    /// Pass iff the residual vanishes.
    fn residual<S: Ring + Debug>(mut self, t: &RepTensor<S>) -> Self {
        self.absorb(t);
        self
    }

    fn absorb<S: Ring + Debug>(&mut self, t: &RepTensor<S>) {
        let nnz = t.nnz();
        self.residual_nnz += nnz;
        if nnz > 0 {
            self.passed = false;
            if self.first_offending.is_none() {
                let (row, col, v) = t.first_nonzero().expect("nonzero tensor");
                self.first_offending = Some(Offending { row, col, value: format!("{v:?}") });
            }
        }
    }

    fn failed(mut self, why: String) -> Self {
        self.passed = false;
        self.note = Some(why);
        self
    }

    fn with_note(mut self, note: String) -> Self {
        self.note = Some(note);
        self
    }
}

impl fmt::Display for CheckResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let status = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{status} {} {}", self.suite, self.check)?;
        if let Some(t) = &self.triple {
            write!(f, " {t}")?;
        }
        if !self.passed {
            write!(f, " residual_nnz={}", self.residual_nnz)?;
        }
        if let Some(o) = &self.first_offending {
            write!(f, " first=({}, {}): {}", o.row, o.col, o.value)?;
        }
        if let Some(n) = &self.note {
            write!(f, " [{n}]")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub command: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl RunReport {
    pub fn new(command: String, checks: Vec<CheckResult>) -> Self {
        let passed = checks.iter().all(|c| c.passed);
        Self { command, passed, checks }
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn to_json(&self) -> Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn par_map<T: Sync, U: Send>(jobs: usize, items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    let run = || items.par_iter().map(&f).collect::<Vec<U>>();
    if jobs == 0 {
        run()
    } else {
        match rayon::ThreadPoolBuilder::new().num_threads(jobs).build() {
            Ok(pool) => pool.install(run),
            Err(_) => items.iter().map(&f).collect(),
        }
    }
}

fn ranks(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<usize>> {
    match cfg.n {
        Some(n) if !(2..=6).contains(&n) => Err(Error::Invalid(format!("n = {n} is outside 2..=6"))),
        Some(n) => Ok(vec![n]),
        None => Ok(suite.default_ranks()),
    }
}

fn rf(t: &RepTensor<Q>) -> RepTensor<crate::exactring::RatFunc<Q>> {
    t.map(|v| crate::exactring::RatFunc::constant(v.clone()))
}

/// Checks for one triple; an error in a construction step is a failed check.
fn triple_checks(suite: Suite, t: &BDTriple, order: u32) -> Vec<CheckResult> {
    let fail = |check: &str, e: Error| CheckResult::new(suite, check, Some(t)).failed(e.to_string());
    let s_of = |t: &BDTriple| solve_s(t).map(|x| x.particular);
    match suite {
        Suite::Cybe => {
            let mut out = Vec::new();
            match r_t(t) {
                Ok(r) => out.push(
                    CheckResult::new(suite, "r_T + r_T^21 = Omega", Some(t))
                        .residual(&r.tensor.add(&r.tensor.flip21()).sub(&rf(&omega_g(t.n)))),
                ),
                Err(e) => out.push(fail("r_T + r_T^21 = Omega", e)),
            }
            if t.nilpotent {
                match s_of(t).and_then(|s| r_ts(t, &s)) {
                    Ok(r) => out.push(CheckResult::new(suite, "CYBE r_Ts", Some(t)).residual(&check_cybe(&r))),
                    Err(e) => out.push(fail("CYBE r_Ts", e)),
                }
            }
            out
        }
        Suite::Cdybe => {
            let r = match r_t(t) {
                Ok(r) => r,
                Err(e) => return vec![fail("CDYBE r_T", e)],
            };
            if t.n <= 3 {
                vec![CheckResult::new(suite, "CDYBE r_T symbolic", Some(t)).residual(&check_cdybe(&r))]
            } else {
                let mut c = CheckResult::new(suite, "CDYBE r_T at 5 points", Some(t));
                for p in random_points(&r, 5, 2024) {
                    match check_cdybe_at(&r, &p) {
                        Some(res) => c.absorb(&res),
                        None => return vec![c.failed("sample point is a pole".into())],
                    }
                }
                vec![c]
            }
        }
        Suite::Qybe | Suite::Hecke | Suite::Limit if !t.nilpotent => Vec::new(),
        Suite::Qybe | Suite::Hecke => {
            let name = if suite == Suite::Qybe { "QYBE R(T,s)" } else { "Hecke R(T,s)" };
            match s_of(t).and_then(|s| build_R_Ts(t, &s)) {
                Ok(r) => {
                    let res = if suite == Suite::Qybe { check_qybe(&r) } else { check_hecke(&r) };
                    vec![CheckResult::new(suite, name, Some(t)).residual(&res)]
                }
                Err(e) => vec![fail(name, e)],
            }
        }
        Suite::Limit => {
            let mut out = Vec::new();
            let constant = s_of(t).and_then(|s| Ok((build_R_Ts(t, &s)?, r_ts(t, &s)?)));
            match constant {
                Ok((rq, rc)) => {
                    let (e0, e1) = quasiclassical_check(&rq, &rc);
                    out.push(CheckResult::new(suite, "R(T,s) = 1 + hbar r_Ts", Some(t)).residual(&e0.add(&e1)));
                }
                Err(e) => out.push(fail("R(T,s) = 1 + hbar r_Ts", e)),
            }
            let dynamic = dynamical_R_T(t, order.min(4)).and_then(|rq| Ok((rq, r_t(t)?)));
            match dynamic {
                Ok((rq, rc)) => {
                    let (e0, e1) = quasiclassical_check_dyn(&rq, &rc, order.min(4));
                    out.push(CheckResult::new(suite, "R_T = 1 + hbar r_T", Some(t)).residual(&e0.add(&e1)));
                }
                Err(e) => out.push(fail("R_T = 1 + hbar r_T", e)),
            }
            out
        }
        Suite::Qdybe => match dynamical_R_T(t, order) {
            Ok(r) => vec![CheckResult::new(suite, &format!("QDYBE R_T to order {order}"), Some(t)).residual(&check_qdybe(&r))],
            Err(e) => vec![fail("QDYBE R_T", e)],
        },
        Suite::GaugeFlat => {
            if !t.nilpotent {
                return Vec::new();
            }
            let check = format!("gauge of J_T to order {order} is constant");
            match s_of(t).and_then(|s| flatten(t, &s, order)) {
                Ok(f) => {
                    let c = CheckResult::new(suite, &check, Some(t));
                    if !f.is_flat() {
                        let mut c = c.failed("gauged twist depends on the dynamical variables".into());
                        c.residual_nnz = f.dependent_entries;
                        return vec![c];
                    }
                    match f.discrepancy_exponents() {
                        None => vec![c.failed("J^g and J_Ts differ by a non-diagonal factor".into())],
                        Some(x) => {
                            let exps: Vec<String> = x.iter().map(|e| e.to_string()).collect();
                            let how = if f.matches_lambda2_l { "q^{-s_l}" } else { "unexplained" };
                            vec![c.with_note(format!("Cartan factor {how}: [{}]", exps.join(", ")))]
                        }
                    }
                }
                Err(e) => vec![fail(&check, e)],
            }
        }
        Suite::Golden7 => Vec::new(),
    }
}

/// Standard R and r sanity checks for the suites that use them.
fn standard_checks(suite: Suite, n: usize) -> Vec<CheckResult> {
    let label = format!("standard sl({n})");
    let c = |name: &str| {
        let mut r = CheckResult::new(suite, name, None);
        r.triple = Some(label.clone());
        r
    };
    match suite {
        Suite::Cybe => vec![c("CYBE standard r").residual(&check_cybe(&standard_r(n)))],
        Suite::Qybe => vec![c("QYBE standard R").residual(&check_qybe(&standard_R(n)))],
        Suite::Hecke => vec![c("Hecke standard R").residual(&check_hecke(&standard_R(n)))],
        Suite::Limit => {
            let (e0, e1) = quasiclassical_check(&standard_R(n), &standard_r(n));
            vec![c("R = 1 + hbar r").residual(&e0.add(&e1))]
        }
        _ => Vec::new(),
    }
}

/// One entry of a golden file: a triple, whether the row-weight
/// reparametrization applies, and the expected series.
fn golden_case(name: &str, triple: &BDTriple, reparametrize: bool, expected: &DynSeries, order: u32) -> Value {
    json!({
        "name": name,
        "triple": serde_json::to_value(triple.to_spec()).expect("spec serializes"),
        "reparametrize": reparametrize,
        "twist": io::series_tensor_to_json(&expected.tensor, expected.vars.len(), order),
    })
}

/// Closed-form expansions of the identity-triple and flip twists as a golden file.
pub fn golden_file(order: u32) -> Result<Value> {
    let mut cases = Vec::new();
    for n in [2, 3] {
        let t = BDTriple::identity(n);
        cases.push(golden_case(&format!("identity sl({n})"), &t, false, &identity_closed_form(n, order)?, order));
    }
    cases.push(golden_case("flip sl(3)", &BDTriple::flip(3), true, &flip_closed_form(order)?, order));
    Ok(json!({ "order": order, "cases": cases }))
}

fn golden_checks(golden: &Value) -> Vec<CheckResult> {
    let bad = |why: String| vec![CheckResult::new(Suite::Golden7, "golden file", None).failed(why)];
    let Some(cases) = golden["cases"].as_array() else {
        return bad("golden file has no cases".into());
    };
    let mut out = Vec::new();
    for case in cases {
        let name = case["name"].as_str().unwrap_or("unnamed").to_string();
        let mut c = CheckResult::new(Suite::Golden7, &format!("closed form {name}"), None);
        let parsed = serde_json::from_value::<TripleSpec>(case["triple"].clone())
            .map_err(|e| Error::Invalid(e.to_string()))
            .and_then(|s| BDTriple::from_spec(&s))
            .and_then(|t| Ok((io::series_tensor_from_json(&case["twist"])?, t)));
        let ((want, order), t) = match parsed {
            Ok(x) => x,
            Err(e) => {
                out.push(c.failed(e.to_string()));
                continue;
            }
        };
        c.triple = Some(t.to_string());
        match dynamical_J_T(&t, order) {
            Ok(j) => {
                let got = if case["reparametrize"].as_bool().unwrap_or(false) { row_weight_shift(&j) } else { j };
                if got.tensor.n() != want.n() {
                    out.push(c.failed("rank mismatch".into()));
                } else {
                    out.push(c.residual(&got.tensor.sub(&want)));
                }
            }
            Err(e) => out.push(c.failed(e.to_string())),
        }
    }
    out
}

/// Run one suite. Results are in canonical order: rank, then enumeration order.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    if suite == Suite::Golden7 {
        let golden = match &cfg.golden {
            Some(g) => g.clone(),
            None => golden_file(cfg.order.unwrap_or(10))?,
        };
        return Ok(golden_checks(&golden));
    }
    let mut out = Vec::new();
    for n in ranks(suite, cfg)? {
        let order = resolve_order(cfg.order, n)?;
        out.extend(standard_checks(suite, n));
        let triples = enumerate_triples(n, false)?;
        let per: Vec<Vec<CheckResult>> = par_map(cfg.jobs, &triples, |t| triple_checks(suite, t, order));
        out.extend(per.into_iter().flatten());
    }
    Ok(out)
}

/// Run several suites into one report.
pub fn run_suites(suites: &[Suite], cfg: &SuiteConfig, command: String) -> Result<RunReport> {
    let mut checks = Vec::new();
    for &s in suites {
        checks.extend(run_suite(s, cfg)?);
    }
    Ok(RunReport::new(command, checks))
}

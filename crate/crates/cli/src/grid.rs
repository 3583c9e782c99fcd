//! Sweeps over every named case up to a rank bound.

use std::fmt::Write as _;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use wsec_core::adapted::{
    check_conditions, construct_candidate, random_scaling, verify_regularity_scaled,
    AdaptedCandidate,
};
use wsec_core::cascade::cascade_lemma_check;
use wsec_core::characters::{
    degree_sum_check, epsilon_gamma, improved_multiset, improved_upper_bound, lower_bound,
    upper_bound, weierstrass_verdict, weight_degree_table,
};
use wsec_core::linalg::dot;
use wsec_core::parabolic::{all_named_cases, ParabolicCase, TruncatedParabolic};
use wsec_core::{Family, RootSystem, Q};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Check {
    /// Conditions (i)–(vi), direct regularity, verdict, degree sum and the
    /// multiplicity inequality.
    Pairs,
    /// Orbit count against the oracle and the closed form.
    Index,
    /// Bound identities: route A or improved = lower, natural `s(γ)`,
    /// `|s(γ)| = γ(h)`, weights vanishing on h_Λ.
    Bounds,
    /// Regularity under random positive rescalings of y.
    Scaling,
    /// The cascade clauses for each root system (not per case).
    Cascade,
}

impl Check {
    pub const ALL: [Check; 5] = [
        Check::Pairs,
        Check::Index,
        Check::Bounds,
        Check::Scaling,
        Check::Cascade,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Pairs => "pairs",
            Check::Index => "index",
            Check::Bounds => "bounds",
            Check::Scaling => "scaling",
            Check::Cascade => "cascade",
        }
    }

    pub fn parse(s: &str) -> Option<Check> {
        Check::ALL.into_iter().find(|c| c.name() == s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: Check,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseResult {
    pub case: String,
    pub recipe: String,
    pub results: Vec<CheckResult>,
}

impl CaseResult {
    pub fn passed(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Tally {
    pub check: Check,
    pub passed: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridReport {
    pub max_n: usize,
    pub checks: Vec<Check>,
    pub seeds: Vec<u64>,
    pub cases: Vec<CaseResult>,
    pub summary: Vec<Tally>,
}

impl GridReport {
    pub fn failures(&self) -> Vec<&CaseResult> {
        self.cases.iter().filter(|c| !c.passed()).collect()
    }
}

fn result(check: Check, failures: Vec<String>) -> CheckResult {
    CheckResult {
        check,
        pass: failures.is_empty(),
        detail: failures.join("; "),
    }
}

fn check_pairs(p: &TruncatedParabolic, c: &AdaptedCandidate) -> CheckResult {
    let mut f = Vec::new();
    let report = check_conditions(c, p);
    if let Some(k) = report.first_failure() {
        f.push(format!("condition ({k})"));
    }
    if !report.regularity.verdict {
        f.push(format!(
            "regularity rank {} of {}",
            report.regularity.rank, report.regularity.dim
        ));
    }
    if let Some(sp) = &report.spectrum {
        if !sp.inequality_failures().is_empty() {
            f.push("multiplicity inequality".into());
        }
    }
    if f.is_empty() {
        let solved = AdaptedCandidate {
            h: report.h.clone(),
            ..c.clone()
        };
        let v = weierstrass_verdict(Some(&solved), p);
        if !v.verdict {
            f.push("no Weierstrass section".into());
        } else {
            match weight_degree_table(&solved, p, v.route) {
                Ok(t) => {
                    let d = degree_sum_check(&t, p);
                    if !d.equal {
                        f.push(format!("degree sum {} vs magic {:?}", d.sum, d.magic));
                    }
                }
                Err(e) => f.push(format!("table: {e}")),
            }
        }
    }
    result(Check::Pairs, f)
}

fn check_index(p: &TruncatedParabolic, seeds: &[u64]) -> CheckResult {
    let orbits = p.index_by_orbits();
    let oracle = p.index_oracle_all(seeds);
    let mut f = Vec::new();
    if oracle.iter().any(|&o| o != orbits) {
        f.push(format!("orbits {orbits}, oracle {oracle:?}"));
    }
    if let Some(nm) = p.named() {
        let closed = nm.index_formula(p.rank());
        if closed != orbits {
            f.push(format!("orbits {orbits}, closed form {closed}"));
        }
    }
    result(Check::Index, f)
}

fn check_bounds(p: &TruncatedParabolic, c: &AdaptedCandidate) -> CheckResult {
    let mut f = Vec::new();
    let Ok(h) = wsec_core::adapted::solve_h(c, p) else {
        return result(Check::Bounds, vec!["no h".into()]);
    };
    let vanish = |w: &[Q]| p.h_basis().iter().all(|b| dot(w, b).is_zero());
    let low = lower_bound(p);
    if !low
        .weights
        .iter()
        .chain(&upper_bound(p).weights)
        .all(|w| vanish(w))
    {
        f.push("lower or upper bound weight does not vanish on h".into());
    }
    match improved_upper_bound(c, p) {
        Ok(imps) => {
            for i in &imps {
                if !i.natural() {
                    f.push(format!("s({}) is not natural", i.root));
                }
                if i.size() != i.root.pair(&h) {
                    f.push(format!("|s({})| differs from its h eigenvalue", i.root));
                }
                if !vanish(&i.weight) {
                    f.push(format!(
                        "improved weight of {} does not vanish on h",
                        i.root
                    ));
                }
            }
            let route_a = p
                .orbits()
                .iter()
                .all(|o| epsilon_gamma(p, &o.members) == Q::one());
            if !route_a && improved_multiset(&imps) != low {
                f.push("improved upper bound differs from the lower bound".into());
            }
        }
        Err(e) => f.push(format!("improved bound: {e}")),
    }
    result(Check::Bounds, f)
}

fn check_scaling(p: &TruncatedParabolic, c: &AdaptedCandidate, seeds: &[u64]) -> CheckResult {
    let f = seeds
        .iter()
        .filter(|&&s| !verify_regularity_scaled(c, p, &random_scaling(c, s)).verdict)
        .map(|s| format!("seed {s}"))
        .collect();
    result(Check::Scaling, f)
}

/// Runs the per-case checks on one case.
pub fn run_case(case: &ParabolicCase, checks: &[Check], seeds: &[u64]) -> CaseResult {
    let label = case.to_string();
    let p = match TruncatedParabolic::new(case.clone()) {
        Ok(p) => p,
        Err(e) => {
            let results = vec![CheckResult {
                check: Check::Pairs,
                pass: false,
                detail: e.to_string(),
            }];
            return CaseResult {
                case: label,
                recipe: "-".into(),
                results,
            };
        }
    };
    let recipe = p.named().map_or("-", |nm| nm.recipe.name()).to_string();
    let cand = construct_candidate(&p);
    let mut results = Vec::new();
    for &check in checks {
        let r = match (check, &cand) {
            (Check::Cascade, _) => continue,
            (Check::Index, _) => check_index(&p, seeds),
            (_, Err(e)) => CheckResult {
                check,
                pass: false,
                detail: e.to_string(),
            },
            (Check::Pairs, Ok(c)) => check_pairs(&p, c),
            (Check::Bounds, Ok(c)) => check_bounds(&p, c),
            (Check::Scaling, Ok(c)) => check_scaling(&p, c, seeds),
        };
        results.push(r);
    }
    CaseResult {
        case: label,
        recipe,
        results,
    }
}

fn cascade_results(max_n: usize) -> Vec<CaseResult> {
    let mut out = Vec::new();
    for family in [Family::B, Family::C, Family::D] {
        for n in family.min_rank()..=max_n {
            let rs = RootSystem::new(family, n).expect("rank in range");
            let rep = cascade_lemma_check(&rs);
            let detail = rep
                .failures
                .iter()
                .take(3)
                .cloned()
                .collect::<Vec<_>>()
                .join("; ");
            out.push(CaseResult {
                case: format!("{family}{n} cascade"),
                recipe: "-".into(),
                results: vec![CheckResult {
                    check: Check::Cascade,
                    pass: rep.passed(),
                    detail,
                }],
            });
        }
    }
    out
}

/// Sweeps all named cases with rank at most `max_n`, in parallel, and returns
/// the results in a fixed order.
pub fn run_grid(max_n: usize, checks: &[Check], seeds: &[u64]) -> GridReport {
    let mut checks: Vec<Check> = checks.to_vec();
    checks.sort();
    checks.dedup();
    let per_case: Vec<Check> = checks
        .iter()
        .copied()
        .filter(|c| *c != Check::Cascade)
        .collect();
    let cases = if per_case.is_empty() {
        Vec::new()
    } else {
        all_named_cases(max_n)
    };
    let slots: Mutex<Vec<Option<CaseResult>>> = Mutex::new(vec![None; cases.len()]);
    let next = AtomicUsize::new(0);
    let workers = thread::available_parallelism()
        .map_or(1, |n| n.get())
        .min(cases.len().max(1));
    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(case) = cases.get(k) else { break };
                let r = run_case(case, &per_case, seeds);
                slots.lock().expect("no worker panicked")[k] = Some(r);
            });
        }
    });
    let mut all: Vec<CaseResult> = slots
        .into_inner()
        .expect("no worker panicked")
        .into_iter()
        .map(|r| r.expect("every case ran"))
        .collect();
    if checks.contains(&Check::Cascade) {
        all.extend(cascade_results(max_n));
    }
    let summary = checks
        .iter()
        .map(|&check| {
            let rs: Vec<&CheckResult> = all
                .iter()
                .flat_map(|c| &c.results)
                .filter(|r| r.check == check)
                .collect();
            Tally {
                check,
                passed: rs.iter().filter(|r| r.pass).count(),
                total: rs.len(),
            }
        })
        .collect();
    GridReport {
        max_n,
        checks,
        seeds: seeds.to_vec(),
        cases: all,
        summary,
    }
}

pub fn render_text(g: &GridReport) -> String {
    let mut o = String::new();
    let w = g
        .cases
        .iter()
        .map(|c| c.case.chars().count())
        .max()
        .unwrap_or(4);
    for c in &g.cases {
        let pad = w - c.case.chars().count();
        let _ = write!(o, "{}{}  {:<10}", c.case, " ".repeat(pad), c.recipe);
        for r in &c.results {
            let _ = write!(
                o,
                "  {}={}",
                r.check.name(),
                if r.pass { "pass" } else { "FAIL" }
            );
        }
        o.push('\n');
        for r in c.results.iter().filter(|r| !r.pass) {
            let _ = writeln!(o, "    {}: {}", r.check.name(), r.detail);
        }
    }
    for t in &g.summary {
        let _ = writeln!(o, "{:<8} {}/{} passed", t.check.name(), t.passed, t.total);
    }
    o
}

pub fn render_tsv(g: &GridReport) -> String {
    let mut o = String::from("case\trecipe\tcheck\tresult\tdetail\n");
    for c in &g.cases {
        for r in &c.results {
            let res = if r.pass { "pass" } else { "fail" };
            let _ = writeln!(
                o,
                "{}\t{}\t{}\t{}\t{}",
                c.case,
                c.recipe,
                r.check.name(),
                res,
                r.detail
            );
        }
    }
    o
}

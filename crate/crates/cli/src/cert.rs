//! Full pipeline for one case and its serializable certificate.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use num_traits::Zero;
use serde::{Deserialize, Serialize};
use wsec_core::adapted::{
    check_conditions, construct_candidate, construct_notwork_variant, describe, AdaptedCandidate,
    ConditionReport, Spectrum,
};
use wsec_core::characters::{
    degree_sum_check, improved_upper_bound, lower_bound, upper_bound, weierstrass_verdict,
    weight_degree_table, GeneratorDatum, Source,
};
use wsec_core::parabolic::{ParabolicCase, TruncatedParabolic};
use wsec_core::rootsys::linear_combination;
use wsec_core::{Error, Family, Root, Q};

pub const DEFAULT_SEEDS: [u64; 3] = [1, 2, 3];

const CONDITION_NAMES: [&str; 6] = ["i", "ii", "iii", "iv", "v", "vi"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Request {
    pub case: ParabolicCase,
    /// Type B, deletion `{s, s+2, s+4}`: the even-case sets with one root of
    /// `S⁻` dropped.
    pub notwork: bool,
    pub seeds: Vec<u64>,
}

impl Request {
    pub fn new(case: ParabolicCase) -> Self {
        Request {
            case,
            notwork: false,
            seeds: DEFAULT_SEEDS.to_vec(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    Fail(String),
}

impl Outcome {
    pub fn passed(&self) -> bool {
        matches!(self, Outcome::Pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub case: CaseOut,
    pub sets: Option<Sets>,
    pub h: Option<HOut>,
    pub conditions: Option<Vec<ConditionOut>>,
    pub regularity: Option<RegularityOut>,
    pub index: IndexOut,
    pub bounds: BoundsOut,
    pub verdict: VerdictOut,
    pub table: Option<Vec<Row>>,
    pub degree_sum: Option<DegreeSumOut>,
    pub spectrum: Option<SpectrumOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseOut {
    pub family: String,
    pub n: usize,
    pub kind: String,
    pub s: Option<usize>,
    pub ell: Option<usize>,
    pub deleted: Vec<usize>,
    pub recipe: Option<String>,
    pub variant: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootOut {
    pub eps: String,
    pub coords: Vec<i32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeisenbergOut {
    pub centre: RootOut,
    pub members: Vec<RootOut>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sets {
    pub s_plus: Vec<RootOut>,
    pub s_minus: Vec<RootOut>,
    pub t: Vec<RootOut>,
    pub t_star: Vec<RootOut>,
    pub heisenberg: Vec<HeisenbergOut>,
    pub restriction_det: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coefficient {
    pub label: usize,
    pub value: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HOut {
    /// `Σ c_i α_i^∨` written with `a` for the coroots.
    pub expression: String,
    pub coroot: Vec<Coefficient>,
    pub eps: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionOut {
    pub name: String,
    pub pass: bool,
    pub witnesses: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegularityOut {
    pub rank: usize,
    pub rank_with_t: usize,
    pub dim: usize,
    pub t_len: usize,
    pub verdict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IndexOut {
    pub orbits: Vec<Vec<usize>>,
    pub by_orbits: usize,
    pub seeds: Vec<u64>,
    pub oracle: Vec<usize>,
    pub closed_form: Option<usize>,
    pub agree: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightOut {
    pub fundamental: String,
    pub coords: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImprovementOut {
    pub root: RootOut,
    pub s_coefficients: Vec<String>,
    pub size: String,
    pub weight: WeightOut,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundsOut {
    pub lower: Vec<WeightOut>,
    pub upper: Vec<WeightOut>,
    pub improved: Option<Vec<ImprovementOut>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictOut {
    pub verdict: bool,
    pub route: String,
    pub half_orbits: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Row {
    pub source: String,
    pub weight: WeightOut,
    pub degree: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeSumOut {
    pub sum: usize,
    pub magic: Option<usize>,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumRow {
    pub lambda: String,
    pub m_prime: usize,
    pub m_neg: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectrumOut {
    pub rows: Vec<SpectrumRow>,
    pub inequality_failures: Vec<String>,
}

/// `p/q` with `q ≥ 1`.
pub fn rat(x: &Q) -> String {
    format!("{}/{}", x.numer(), x.denom())
}

fn root_out(r: &Root) -> RootOut {
    RootOut {
        eps: r.to_string(),
        coords: r.0.clone(),
    }
}

fn roots_out(rs: &[Root]) -> Vec<RootOut> {
    rs.iter().map(root_out).collect()
}

fn weight_out(p: &TruncatedParabolic, w: &[Q]) -> WeightOut {
    let f = p.root_system().to_fundamental(w);
    WeightOut {
        fundamental: linear_combination(&f, "w"),
        coords: f.iter().map(rat).collect(),
    }
}

pub fn orbit_label(o: &[usize]) -> String {
    let parts: Vec<String> = o.iter().map(|i| format!("a{i}")).collect();
    format!("{{{}}}", parts.join(","))
}

fn source_label(s: &Source) -> String {
    match s {
        Source::Orbit(o) => orbit_label(o),
        Source::TRoot(r) => r.to_string(),
    }
}

fn case_out(case: &ParabolicCase, p: &TruncatedParabolic, notwork: bool) -> CaseOut {
    let (kind, s, ell) = match *case {
        ParabolicCase::P { s, ell, .. } => ("p_sl", Some(s), Some(ell)),
        ParabolicCase::PL { ell, .. } => ("p_ell", None, Some(ell)),
        ParabolicCase::Q { s, ell, .. } => ("q_sl", Some(s), Some(ell)),
        ParabolicCase::Raw { .. } => ("raw", None, None),
    };
    CaseOut {
        family: case.family().to_string(),
        n: case.rank(),
        kind: kind.into(),
        s,
        ell,
        deleted: p.deleted().iter().copied().collect(),
        recipe: p.named().map(|nm| nm.recipe.name().into()),
        variant: notwork.then(|| "notwork".into()),
    }
}

fn sets_out(c: &AdaptedCandidate, report: &ConditionReport) -> Sets {
    Sets {
        s_plus: roots_out(&c.s_plus),
        s_minus: roots_out(&c.s_minus),
        t: roots_out(&c.t),
        t_star: roots_out(&c.t_star),
        heisenberg: c
            .heisenberg
            .values()
            .map(|h| HeisenbergOut {
                centre: root_out(h.centre()),
                members: roots_out(h.members()),
            })
            .collect(),
        restriction_det: report.restriction_det.as_ref().map(rat),
    }
}

fn h_out(p: &TruncatedParabolic, h: &[Q]) -> HOut {
    let co = p.root_system().coroot_coords(h);
    HOut {
        expression: linear_combination(&co, "a"),
        coroot: co
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| Coefficient {
                label: i + 1,
                value: rat(c),
            })
            .collect(),
        eps: h.iter().map(rat).collect(),
    }
}

fn conditions_out(report: &ConditionReport) -> Vec<ConditionOut> {
    report
        .conditions
        .iter()
        .zip(CONDITION_NAMES)
        .map(|(c, name)| ConditionOut {
            name: name.into(),
            pass: c.pass,
            witnesses: c.witnesses.iter().map(describe).collect(),
        })
        .collect()
}

fn spectrum_out(sp: &Spectrum) -> SpectrumOut {
    let integral = sp.entries.keys().all(|l| l.is_integer());
    let rows = if integral {
        let lo = sp.min().to_integer().try_into().expect("small eigenvalue");
        let hi = sp.max().to_integer().try_into().expect("small eigenvalue");
        sp.rows(lo, hi)
            .into_iter()
            .map(|(l, a, b)| SpectrumRow {
                lambda: format!("{l}/1"),
                m_prime: a,
                m_neg: b,
            })
            .collect()
    } else {
        sp.entries
            .iter()
            .map(|(l, (a, b))| SpectrumRow {
                lambda: rat(l),
                m_prime: *a,
                m_neg: *b,
            })
            .collect()
    };
    SpectrumOut {
        rows,
        inequality_failures: sp.inequality_failures().iter().map(rat).collect(),
    }
}

fn table_out(p: &TruncatedParabolic, table: &[GeneratorDatum]) -> Vec<Row> {
    table
        .iter()
        .map(|g| Row {
            source: source_label(&g.source),
            weight: weight_out(p, &g.weight),
            degree: g.degree,
        })
        .collect()
}

fn notwork_parameters(case: &ParabolicCase) -> Result<(usize, usize), Error> {
    let bad = || {
        Error::Parameter(
            "the notwork variant needs type B with deletion {s, s+2, s+4}, s even".into(),
        )
    };
    match case {
        ParabolicCase::Raw {
            family: Family::B,
            n,
            deleted,
        } => {
            let s = *deleted.iter().next().ok_or_else(bad)?;
            let want: BTreeSet<usize> = [s, s + 2, s + 4].into_iter().collect();
            if *deleted != want {
                return Err(bad());
            }
            Ok((*n, s))
        }
        ParabolicCase::P {
            family: Family::B,
            n,
            s,
            ell: 2,
        } => Ok((*n, *s)),
        _ => Err(bad()),
    }
}

/// Runs every check for one case. Errors are parameter errors only.
pub fn certify(req: &Request) -> Result<(Certificate, Outcome), Error> {
    if req.seeds.is_empty() {
        return Err(Error::Parameter("at least one seed is needed".into()));
    }
    let (p, cand) = if req.notwork {
        let (n, s) = notwork_parameters(&req.case)?;
        let (p, c) = construct_notwork_variant(n, s)?;
        (p, Some(c))
    } else {
        let p = TruncatedParabolic::new(req.case.clone())?;
        let c = match construct_candidate(&p) {
            Ok(c) => Some(c),
            Err(Error::NoRecipe) => None,
            Err(e) => return Err(e),
        };
        (p, c)
    };

    let orbits = p.orbits();
    let by_orbits = orbits.len();
    let oracle = p.index_oracle_all(&req.seeds);
    let closed_form = if req.notwork {
        None
    } else {
        p.named().map(|nm| nm.index_formula(p.rank()))
    };
    let index_agree =
        oracle.iter().all(|&o| o == by_orbits) && closed_form.is_none_or(|f| f == by_orbits);
    let index = IndexOut {
        orbits: orbits.iter().map(|o| o.members.clone()).collect(),
        by_orbits,
        seeds: req.seeds.clone(),
        oracle: oracle.clone(),
        closed_form,
        agree: index_agree,
    };

    let report = cand.as_ref().map(|c| check_conditions(c, &p));
    let verified = report
        .as_ref()
        .is_some_and(|r| r.all_pass() && r.regularity.verdict);
    let solved = match (&cand, &report) {
        (Some(c), Some(r)) if verified => Some(AdaptedCandidate {
            h: r.h.clone(),
            ..c.clone()
        }),
        _ => None,
    };
    let verdict = weierstrass_verdict(solved.as_ref(), &p);
    let table = match &solved {
        Some(c) if verdict.verdict => weight_degree_table(c, &p, verdict.route).ok(),
        _ => None,
    };
    let degree_sum = table.as_ref().map(|t| degree_sum_check(t, &p));
    let improved = solved
        .as_ref()
        .and_then(|c| improved_upper_bound(c, &p).ok());

    let cert = Certificate {
        case: case_out(&req.case, &p, req.notwork),
        sets: match (&cand, &report) {
            (Some(c), Some(r)) => Some(sets_out(c, r)),
            _ => None,
        },
        h: report
            .as_ref()
            .and_then(|r| r.h.as_ref())
            .map(|h| h_out(&p, h)),
        conditions: report.as_ref().map(conditions_out),
        regularity: report.as_ref().map(|r| RegularityOut {
            rank: r.regularity.rank,
            rank_with_t: r.regularity.rank_with_t,
            dim: r.regularity.dim,
            t_len: r.regularity.t_len,
            verdict: r.regularity.verdict,
        }),
        index,
        bounds: BoundsOut {
            lower: lower_bound(&p)
                .weights
                .iter()
                .map(|w| weight_out(&p, w))
                .collect(),
            upper: upper_bound(&p)
                .weights
                .iter()
                .map(|w| weight_out(&p, w))
                .collect(),
            improved: improved.map(|imps| {
                imps.iter()
                    .map(|i| ImprovementOut {
                        root: root_out(&i.root),
                        s_coefficients: i.coefficients.iter().map(rat).collect(),
                        size: rat(&i.size()),
                        weight: weight_out(&p, &i.weight),
                    })
                    .collect()
            }),
        },
        verdict: VerdictOut {
            verdict: verdict.verdict,
            route: verdict.route.name().into(),
            half_orbits: verdict.half_orbits.clone(),
        },
        table: table.as_ref().map(|t| table_out(&p, t)),
        degree_sum: degree_sum.map(|d| DegreeSumOut {
            sum: d.sum,
            magic: d.magic,
            equal: d.equal,
        }),
        spectrum: report
            .as_ref()
            .and_then(|r| r.spectrum.as_ref())
            .map(spectrum_out),
    };

    let outcome = match &report {
        None if index_agree => Outcome::Pass,
        None => Outcome::Fail(format!("index: orbit count {by_orbits}, oracle {oracle:?}")),
        Some(r) => {
            if let Some(k) = r.conditions.iter().position(|c| !c.pass) {
                let w: Vec<String> = r.conditions[k].witnesses.iter().map(describe).collect();
                Outcome::Fail(format!(
                    "condition ({}) fails, witnesses: {}",
                    CONDITION_NAMES[k],
                    w.join(", ")
                ))
            } else if !r.regularity.verdict {
                Outcome::Fail(format!(
                    "regularity: rank {} with T {} of dim {}",
                    r.regularity.rank, r.regularity.rank_with_t, r.regularity.dim
                ))
            } else if !verdict.verdict {
                Outcome::Fail("Weierstrass section: bounds are inconclusive".into())
            } else if !index_agree {
                Outcome::Fail(format!("index: orbit count {by_orbits}, oracle {oracle:?}, closed form {closed_form:?}"))
            } else if degree_sum.is_none_or(|d| !d.equal) {
                Outcome::Fail("degree sum differs from the magic number".into())
            } else {
                Outcome::Pass
            }
        }
    };
    Ok((cert, outcome))
}

fn yes(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "FAIL"
    }
}

fn eps_list(rs: &[RootOut]) -> String {
    let v: Vec<&str> = rs.iter().map(|r| r.eps.as_str()).collect();
    format!("{{{}}}", v.join(", "))
}

pub fn render_text(c: &Certificate) -> String {
    let mut o = String::new();
    let cs = &c.case;
    let del: Vec<String> = cs.deleted.iter().map(|d| d.to_string()).collect();
    let _ = writeln!(
        o,
        "case        {}{} {} deleted {{{}}}",
        cs.family,
        cs.n,
        cs.kind,
        del.join(",")
    );
    if let Some(r) = &cs.recipe {
        let _ = writeln!(o, "recipe      {r}");
    }
    if let Some(v) = &cs.variant {
        let _ = writeln!(o, "variant     {v}");
    }
    if let Some(s) = &c.sets {
        let _ = writeln!(o, "S+          {}", eps_list(&s.s_plus));
        let _ = writeln!(o, "S-          {}", eps_list(&s.s_minus));
        let _ = writeln!(o, "T           {}", eps_list(&s.t));
        let _ = writeln!(o, "T*          {}", eps_list(&s.t_star));
        if let Some(d) = &s.restriction_det {
            let _ = writeln!(o, "det         {d}");
        }
    }
    if let Some(h) = &c.h {
        let _ = writeln!(o, "h           {}", h.expression);
        let _ = writeln!(o, "h (eps)     ({})", h.eps.join(", "));
    }
    if let Some(cs) = &c.conditions {
        for cd in cs {
            let _ = write!(
                o,
                "condition {:<6}{}",
                format!("({})", cd.name),
                yes(cd.pass)
            );
            if !cd.witnesses.is_empty() {
                let _ = write!(o, "  witnesses: {}", cd.witnesses.join(", "));
            }
            o.push('\n');
        }
    }
    if let Some(r) = &c.regularity {
        let _ = writeln!(
            o,
            "regularity  {} (rank {}, with T {}, dim {}, |T| {})",
            yes(r.verdict),
            r.rank,
            r.rank_with_t,
            r.dim,
            r.t_len
        );
    }
    let ix = &c.index;
    let _ = write!(
        o,
        "index       {} orbits, oracle {:?} (seeds {:?})",
        ix.by_orbits, ix.oracle, ix.seeds
    );
    if let Some(f) = ix.closed_form {
        let _ = write!(o, ", closed form {f}");
    }
    let _ = writeln!(o, " {}", yes(ix.agree));
    let v = &c.verdict;
    let _ = writeln!(o, "verdict     {} (route {})", v.verdict, v.route);
    if !v.half_orbits.is_empty() {
        let h: Vec<String> = v.half_orbits.iter().map(|x| orbit_label(x)).collect();
        let _ = writeln!(o, "half orbits {}", h.join(" "));
    }
    if let Some(t) = &c.table {
        o.push_str(&render_table_text(t));
    }
    if let Some(d) = &c.degree_sum {
        let m = d.magic.map_or("-".to_string(), |m| m.to_string());
        let _ = writeln!(o, "degree sum  {} magic {} {}", d.sum, m, yes(d.equal));
    }
    if let Some(sp) = &c.spectrum {
        let _ = writeln!(o, "{:>8} {:>8} {:>8}", "lambda", "m'", "m_-l");
        for r in &sp.rows {
            let l = r.lambda.strip_suffix("/1").unwrap_or(&r.lambda);
            let _ = writeln!(o, "{l:>8} {:>8} {:>8}", r.m_prime, r.m_neg);
        }
    }
    o
}

pub fn render_table_text(rows: &[Row]) -> String {
    let w0 = rows
        .iter()
        .map(|r| r.source.chars().count())
        .max()
        .unwrap_or(0)
        .max(5);
    let w1 = rows
        .iter()
        .map(|r| r.weight.fundamental.len())
        .max()
        .unwrap_or(0)
        .max(6);
    let mut o = String::new();
    let _ = writeln!(o, "{:<w0$} | {:<w1$} | degree", "orbit", "weight");
    for r in rows {
        let pad = w0 - r.source.chars().count();
        let _ = writeln!(
            o,
            "{}{} | {:<w1$} | {}",
            r.source,
            " ".repeat(pad),
            r.weight.fundamental,
            r.degree
        );
    }
    o
}

pub fn render_table_tsv(rows: &[Row]) -> String {
    let mut o = String::from("orbit\tweight\tdegree\n");
    for r in rows {
        let _ = writeln!(o, "{}\t{}\t{}", r.source, r.weight.fundamental, r.degree);
    }
    o
}

/// One `key<TAB>value` line per scalar fact.
pub fn render_tsv(c: &Certificate) -> String {
    let mut o = String::new();
    let cs = &c.case;
    let _ = writeln!(o, "family\t{}", cs.family);
    let _ = writeln!(o, "n\t{}", cs.n);
    let _ = writeln!(o, "kind\t{}", cs.kind);
    let del: Vec<String> = cs.deleted.iter().map(|d| d.to_string()).collect();
    let _ = writeln!(o, "deleted\t{}", del.join(","));
    if let Some(h) = &c.h {
        let _ = writeln!(o, "h\t{}", h.expression);
    }
    if let Some(cs) = &c.conditions {
        for cd in cs {
            let _ = writeln!(
                o,
                "condition_{}\t{}\t{}",
                cd.name,
                yes(cd.pass),
                cd.witnesses.join(",")
            );
        }
    }
    if let Some(r) = &c.regularity {
        let _ = writeln!(o, "regularity\t{}\t{}\t{}", yes(r.verdict), r.rank, r.dim);
    }
    let _ = writeln!(o, "index\t{}\t{}", c.index.by_orbits, yes(c.index.agree));
    let _ = writeln!(o, "verdict\t{}\t{}", c.verdict.verdict, c.verdict.route);
    for r in c.table.iter().flatten() {
        let _ = writeln!(
            o,
            "row\t{}\t{}\t{}",
            r.source, r.weight.fundamental, r.degree
        );
    }
    if let Some(d) = &c.degree_sum {
        let _ = writeln!(
            o,
            "degree_sum\t{}\t{}",
            d.sum,
            d.magic.map_or("-".into(), |m| m.to_string())
        );
    }
    for r in c.spectrum.iter().flat_map(|s| &s.rows) {
        let _ = writeln!(o, "spectrum\t{}\t{}\t{}", r.lambda, r.m_prime, r.m_neg);
    }
    o
}

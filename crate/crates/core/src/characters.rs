//! Formal characters of the semi-invariants: the weights `δ_Γ`, the factors
//! `ε_Γ`, the lower, upper and improved upper bounds, generator degrees and
//! the resulting Weierstrass verdicts.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::adapted::{restriction_matrix, AdaptedCandidate};
use crate::linalg::{frac, q, solve, transpose, Q};
use crate::parabolic::{Component, ComponentType, Orbit, TruncatedParabolic};
use crate::rootsys::{Family, Root, WeightVec};
use crate::{Error, Result};

/// Largest coefficient tried when deciding membership in a weight monoid.
pub const MEMBERSHIP_BOUND: usize = 4;

/// A multiset of exponents `λ`, one per factor `(1 − e^λ)^{−1}`.
#[derive(Debug, Clone, Default)]
pub struct WeightMultiset {
    pub weights: Vec<WeightVec>,
}

impl WeightMultiset {
    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    fn counts(&self) -> BTreeMap<&WeightVec, usize> {
        let mut m = BTreeMap::new();
        for w in &self.weights {
            *m.entry(w).or_default() += 1;
        }
        m
    }
}

impl PartialEq for WeightMultiset {
    fn eq(&self, other: &Self) -> bool {
        self.counts() == other.counts()
    }
}

impl Eq for WeightMultiset {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    Orbit(Vec<usize>),
    TRoot(Root),
}

/// One generator: its orbit or T-root, weight and degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorDatum {
    pub source: Source,
    /// ε-coordinates.
    pub weight: WeightVec,
    /// Coefficients on ϖ_1..ϖ_n.
    pub fundamental: Vec<Q>,
    pub degree: usize,
}

/// ϖ'_γ: the element of the ℚ-span of π' pairing to δ against the coroots of π'.
pub fn levi_fundamental(p: &TruncatedParabolic, label: usize) -> WeightVec {
    let rs = p.root_system();
    let kept: Vec<usize> = p.kept().iter().copied().collect();
    let a = rs.cartan_matrix();
    let m: Vec<Vec<Q>> = kept
        .iter()
        .map(|&r| kept.iter().map(|&b| q(a[b - 1][r - 1])).collect())
        .collect();
    let rhs: Vec<Q> = kept
        .iter()
        .map(|&r| if r == label { Q::one() } else { Q::zero() })
        .collect();
    let c = solve(&m, &rhs).expect("Cartan matrix of π' is invertible");
    let mut w = vec![Q::zero(); rs.rank()];
    for (cb, &b) in c.iter().zip(&kept) {
        for (x, y) in w.iter_mut().zip(rs.alpha(b).to_q()) {
            *x += cb * y;
        }
    }
    w
}

fn add_into(w: &mut [Q], v: &[Q], c: &Q) {
    for (x, y) in w.iter_mut().zip(v) {
        *x += c * y;
    }
}

/// `δ_Γ` for an ⟨ij⟩-orbit given by its labels.
pub fn delta_weight(p: &TruncatedParabolic, orbit: &[usize]) -> WeightVec {
    let rs = p.root_system();
    let mut w = vec![Q::zero(); rs.rank()];
    let one = Q::one();
    for &g in orbit {
        add_into(&mut w, rs.fundamental_weight(g), &-one.clone());
        add_into(
            &mut w,
            rs.fundamental_weight(p.involution_j(g)),
            &-one.clone(),
        );
        if p.in_levi(g) {
            add_into(&mut w, &levi_fundamental(p, g), &one);
            add_into(&mut w, &levi_fundamental(p, p.involution_i(g)), &one);
        }
    }
    w
}

/// Generators of a weight monoid as coefficient vectors on labels.
fn generators(
    labels: &[usize],
    kind: ComponentType,
    pair: impl Fn(usize) -> usize,
) -> Vec<BTreeMap<usize, usize>> {
    let m = labels.len();
    let mut out = Vec::new();
    for (k, &l) in labels.iter().enumerate() {
        let local = k + 1;
        let single = match kind {
            ComponentType::B => local % 2 == 0 && local / 2 <= (m - 1) / 2,
            ComponentType::D => local % 2 == 0 && local / 2 <= (m - 2) / 2,
            ComponentType::A | ComponentType::C => false,
        };
        let mut g = BTreeMap::new();
        if single {
            g.insert(l, 1);
        } else {
            let partner = match kind {
                ComponentType::A => pair(l),
                ComponentType::D if local + 1 >= m => pair(l),
                _ => l,
            };
            *g.entry(l).or_default() += 1;
            *g.entry(partner).or_default() += 1;
        }
        if !out.contains(&g) {
            out.push(g);
        }
    }
    out
}

fn in_monoid(d: &BTreeMap<usize, usize>, gens: &[BTreeMap<usize, usize>]) -> bool {
    fn go(d: &BTreeMap<usize, usize>, gens: &[BTreeMap<usize, usize>]) -> bool {
        if d.values().all(|&c| c == 0) {
            return true;
        }
        let Some((g, rest)) = gens.split_first() else {
            return false;
        };
        for c in 0..=MEMBERSHIP_BOUND {
            let mut left = d.clone();
            let mut ok = true;
            for (l, k) in g {
                let need = k * c;
                match left.get_mut(l) {
                    Some(x) if *x >= need => *x -= need,
                    _ if need == 0 => {}
                    _ => ok = false,
                }
            }
            if !ok {
                break;
            }
            if go(&left, rest) {
                return true;
            }
        }
        false
    }
    let relevant: Vec<BTreeMap<usize, usize>> = gens
        .iter()
        .filter(|g| g.keys().all(|l| d.get(l).is_some_and(|&c| c > 0)))
        .cloned()
        .collect();
    go(d, &relevant)
}

fn g_component(p: &TruncatedParabolic) -> Component {
    let kind = match p.family() {
        Family::B => ComponentType::B,
        Family::C => ComponentType::C,
        Family::D => ComponentType::D,
    };
    Component {
        kind,
        labels: (1..=p.rank()).collect(),
    }
}

/// Membership of `Σ c_l ϖ_l` in the weight monoid of `Y(n)`.
pub fn in_b_pi(p: &TruncatedParabolic, d: &BTreeMap<usize, usize>) -> bool {
    let c = g_component(p);
    in_monoid(d, &generators(&c.labels, c.kind, |l| p.involution_j(l)))
}

/// Membership of `Σ c_l ϖ'_l` in the weight monoid of `Y(n⁺_{π'})`.
pub fn in_b_levi(p: &TruncatedParabolic, d: &BTreeMap<usize, usize>) -> bool {
    let mut gens = Vec::new();
    for c in p.components() {
        gens.extend(generators(&c.labels, c.kind, |l| p.involution_i(l)));
    }
    in_monoid(d, &gens)
}

fn indicator<'a>(labels: impl IntoIterator<Item = &'a usize>) -> BTreeMap<usize, usize> {
    let mut m = BTreeMap::new();
    for &l in labels {
        *m.entry(l).or_default() += 1;
    }
    m
}

fn j_stable(p: &TruncatedParabolic, orbit: &[usize]) -> bool {
    orbit.iter().all(|&g| orbit.contains(&p.involution_j(g)))
}

/// `ε_Γ ∈ {1, 1/2}`.
pub fn epsilon_gamma(p: &TruncatedParabolic, orbit: &[usize]) -> Q {
    let d = indicator(orbit);
    let d_levi = indicator(orbit.iter().filter(|&&g| p.in_levi(g)));
    if j_stable(p, orbit) && in_b_pi(p, &d) && in_b_levi(p, &d_levi) {
        frac(1, 2)
    } else {
        Q::one()
    }
}

/// `(ρ = ϖ, deg a_ρ)` for a label at local position `k` of a component of
/// the given type and rank `m`.
fn rho_degree(kind: ComponentType, m: usize, k: usize) -> (bool, usize) {
    match kind {
        ComponentType::A => (false, k.min(m + 1 - k)),
        ComponentType::C => (false, k),
        ComponentType::B => {
            if k % 2 == 0 && k / 2 <= (m - 1) / 2 {
                (true, k / 2)
            } else if k == m {
                (false, m.div_ceil(2))
            } else {
                (false, k + 1)
            }
        }
        ComponentType::D => {
            if k + 1 >= m {
                (false, m / 2)
            } else if k % 2 == 0 {
                (true, k / 2)
            } else {
                (false, k + 1)
            }
        }
    }
}

fn degree_term((single, deg): (bool, usize)) -> usize {
    if single {
        2 * deg
    } else {
        deg
    }
}

/// One orbit's generator datum (or two, for an orbit not stable under j).
pub fn generator_degree(p: &TruncatedParabolic, orbit: &Orbit) -> Result<Vec<GeneratorDatum>> {
    if p.orbits()
        .iter()
        .any(|o| epsilon_gamma(p, &o.members) != Q::one())
    {
        return Err(Error::Unsupported(
            "some ε_Γ = 1/2; use the improved upper bound".into(),
        ));
    }
    let g = g_component(p);
    let n = p.rank();
    let weight = delta_weight(p, &orbit.members);
    let fundamental = p.root_system().to_fundamental(&weight);
    let datum = |degree| GeneratorDatum {
        source: Source::Orbit(orbit.members.clone()),
        weight: weight.clone(),
        fundamental: fundamental.clone(),
        degree,
    };
    if orbit.j_stable {
        let mut d = 0;
        for &l in &orbit.members {
            d += degree_term(rho_degree(g.kind, n, l));
            if let Some(c) = p.component_of(l) {
                d += degree_term(rho_degree(c.kind, c.len(), c.local(l).unwrap()));
            }
        }
        return Ok(vec![datum(d)]);
    }
    match orbit.members.as_slice() {
        &[a] if !p.in_levi(a) => {
            let (_, d) = rho_degree(g.kind, n, a);
            Ok(vec![datum(if a < p.involution_j(a) { d } else { d + 1 })])
        }
        _ => Err(Error::Unsupported(format!(
            "no degree rule for the orbit {:?}",
            orbit.members
        ))),
    }
}

pub fn lower_bound(p: &TruncatedParabolic) -> WeightMultiset {
    WeightMultiset {
        weights: p
            .orbits()
            .iter()
            .map(|o| delta_weight(p, &o.members))
            .collect(),
    }
}

pub fn upper_bound(p: &TruncatedParabolic) -> WeightMultiset {
    let weights = p
        .orbits()
        .iter()
        .map(|o| {
            let e = epsilon_gamma(p, &o.members);
            delta_weight(p, &o.members)
                .into_iter()
                .map(|x| x * &e)
                .collect()
        })
        .collect();
    WeightMultiset { weights }
}

/// `s(γ)` for one T-root: coefficients on S (in the order of `c.s()`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Improvement {
    pub root: Root,
    pub coefficients: Vec<Q>,
    /// `−(γ + s(γ))` in ε-coordinates.
    pub weight: WeightVec,
}

impl Improvement {
    /// `|s(γ)|`.
    pub fn size(&self) -> Q {
        self.coefficients.iter().fold(Q::zero(), |a, b| a + b)
    }

    pub fn natural(&self) -> bool {
        self.coefficients
            .iter()
            .all(|c| c.is_integer() && !c.is_negative())
    }
}

pub fn improved_upper_bound(
    c: &AdaptedCandidate,
    p: &TruncatedParabolic,
) -> Result<Vec<Improvement>> {
    let s = c.s();
    if s.len() != p.dim_h() {
        return Err(Error::Singular);
    }
    let mt = transpose(&restriction_matrix(p, &s));
    let mut out = Vec::new();
    for g in &c.t {
        let rhs: Vec<Q> = p.h_basis().iter().map(|h| -g.pair(h)).collect();
        let m = if s.is_empty() {
            Vec::new()
        } else {
            solve(&mt, &rhs).ok_or(Error::Singular)?
        };
        let mut w: Vec<Q> = g.to_q();
        for (coef, r) in m.iter().zip(&s) {
            add_into(&mut w, &r.to_q(), coef);
        }
        let weight = w.into_iter().map(|x| -x).collect();
        out.push(Improvement {
            root: g.clone(),
            coefficients: m,
            weight,
        });
    }
    Ok(out)
}

pub fn improved_multiset(imps: &[Improvement]) -> WeightMultiset {
    WeightMultiset {
        weights: imps.iter().map(|i| i.weight.clone()).collect(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Route {
    /// Every `ε_Γ = 1`: the bounds coincide.
    A,
    /// The improved upper bound equals the lower bound.
    B,
    Inconclusive,
}

impl Route {
    pub fn name(self) -> &'static str {
        match self {
            Route::A => "A",
            Route::B => "B",
            Route::Inconclusive => "inconclusive",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub verdict: bool,
    pub route: Route,
    /// Orbits with `ε_Γ = 1/2`.
    pub half_orbits: Vec<Vec<usize>>,
}

/// Whether `y + g_T` is a Weierstrass section, given a verified candidate.
pub fn weierstrass_verdict(c: Option<&AdaptedCandidate>, p: &TruncatedParabolic) -> Verdict {
    let half_orbits: Vec<Vec<usize>> = p
        .orbits()
        .into_iter()
        .filter(|o| epsilon_gamma(p, &o.members) != Q::one())
        .map(|o| o.members)
        .collect();
    let Some(c) = c else {
        return Verdict {
            verdict: false,
            route: Route::Inconclusive,
            half_orbits,
        };
    };
    if half_orbits.is_empty() {
        return Verdict {
            verdict: true,
            route: Route::A,
            half_orbits,
        };
    }
    let equal =
        improved_upper_bound(c, p).is_ok_and(|imps| improved_multiset(&imps) == lower_bound(p));
    let route = if equal { Route::B } else { Route::Inconclusive };
    Verdict {
        verdict: equal,
        route,
        half_orbits,
    }
}

/// Generator weights and degrees: per orbit on route A, per T-root on route B.
pub fn weight_degree_table(
    c: &AdaptedCandidate,
    p: &TruncatedParabolic,
    route: Route,
) -> Result<Vec<GeneratorDatum>> {
    match route {
        Route::A => {
            let mut out = Vec::new();
            for o in p.orbits() {
                out.extend(generator_degree(p, &o)?);
            }
            Ok(out)
        }
        Route::B => {
            let rs = p.root_system();
            improved_upper_bound(c, p)?
                .into_iter()
                .map(|imp| {
                    let size = imp.size();
                    if !size.is_integer() || size.is_negative() {
                        return Err(Error::Unsupported(format!(
                            "|s({})| = {size} is not a natural number",
                            imp.root
                        )));
                    }
                    let degree = 1 + usize::try_from(size.to_integer()).expect("small degree");
                    Ok(GeneratorDatum {
                        fundamental: rs.to_fundamental(&imp.weight),
                        weight: imp.weight,
                        source: Source::TRoot(imp.root),
                        degree,
                    })
                })
                .collect()
        }
        Route::Inconclusive => Err(Error::Unsupported(
            "no Weierstrass section established".into(),
        )),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DegreeSum {
    pub sum: usize,
    pub magic: Option<usize>,
    pub equal: bool,
}

pub fn degree_sum_check(table: &[GeneratorDatum], p: &TruncatedParabolic) -> DegreeSum {
    let sum = table.iter().map(|g| g.degree).sum();
    let magic = p.magic_number();
    DegreeSum {
        sum,
        magic,
        equal: magic == Some(sum),
    }
}

/// Renders a weight as e.g. `-2w3` or `-w5-w7`.
pub fn weight_string(p: &TruncatedParabolic, w: &[Q]) -> String {
    p.root_system().weight_string(w)
}

//! Parabolic subalgebras, their canonical truncations, the involutions `i`
//! and `j` on the simple roots, and two independent index computations.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::liealg::{LieElt, Realization};
use crate::linalg::{bareiss_rank, dot, inverse, q, SparseVec, Q};
use crate::rootsys::{CartanElt, Family, Root, RootSystem};
use crate::{Error, Result};

/// Which construction of an adapted pair applies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Recipe {
    /// B, s odd: every second simple root deleted from α_s.
    OddB,
    /// D, s odd.
    OddD,
    /// B, s even, ℓ = 1.
    EvenB,
    /// D, s even, ℓ = 1.
    EvenD,
    /// C, any s.
    Symplectic,
    /// D, n even, both fork roots deleted.
    ForkEven,
    /// D, n odd, only the two fork roots deleted.
    ForkOddP0,
    /// D, n odd, fork roots and α_{n−3} deleted.
    ForkOddP1,
    /// D, n odd, fork roots and a chain from an odd α_s deleted.
    Q,
}

impl Recipe {
    pub fn name(self) -> &'static str {
        match self {
            Recipe::OddB => "odd-b",
            Recipe::OddD => "odd-d",
            Recipe::EvenB => "even-b",
            Recipe::EvenD => "even-d",
            Recipe::Symplectic => "symplectic",
            Recipe::ForkEven => "fork-even",
            Recipe::ForkOddP0 => "fork-odd-0",
            Recipe::ForkOddP1 => "fork-odd-1",
            Recipe::Q => "q",
        }
    }

    pub const ALL: [Recipe; 9] = [
        Recipe::OddB,
        Recipe::OddD,
        Recipe::EvenB,
        Recipe::EvenD,
        Recipe::Symplectic,
        Recipe::ForkEven,
        Recipe::ForkOddP0,
        Recipe::ForkOddP1,
        Recipe::Q,
    ];
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ParabolicCase {
    /// Deletes α_s, α_{s+2}, …, α_{s+2ℓ}.
    P {
        family: Family,
        n: usize,
        s: usize,
        ell: usize,
    },
    /// Type D: deletes α_n and α_{n−1−2k} for k ≤ ℓ.
    PL { n: usize, ell: usize },
    /// Type D: deletes α_s, …, α_{s+2ℓ}, α_{n−1}, α_n.
    Q { n: usize, s: usize, ell: usize },
    /// Any set of deleted simple roots (1-based labels).
    Raw {
        family: Family,
        n: usize,
        deleted: BTreeSet<usize>,
    },
}

impl fmt::Display for ParabolicCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParabolicCase::P { family, n, s, ell } => write!(f, "{family}{n} p(s={s},l={ell})"),
            ParabolicCase::PL { n, ell } => write!(f, "D{n} p(l={ell})"),
            ParabolicCase::Q { n, s, ell } => write!(f, "D{n} q(s={s},l={ell})"),
            ParabolicCase::Raw { family, n, deleted } => {
                let d: Vec<String> = deleted.iter().map(|i| format!("{i}")).collect();
                write!(f, "{family}{n} delete {{{}}}", d.join(","))
            }
        }
    }
}

/// A named case resolved to its recipe and parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Named {
    pub recipe: Recipe,
    pub s: usize,
    pub ell: usize,
}

fn bad(msg: String) -> Error {
    Error::Parameter(msg)
}

impl ParabolicCase {
    pub fn family(&self) -> Family {
        match self {
            ParabolicCase::P { family, .. } | ParabolicCase::Raw { family, .. } => *family,
            _ => Family::D,
        }
    }

    pub fn rank(&self) -> usize {
        match self {
            ParabolicCase::P { n, .. }
            | ParabolicCase::PL { n, .. }
            | ParabolicCase::Q { n, .. }
            | ParabolicCase::Raw { n, .. } => *n,
        }
    }

    /// Validates parameters and returns the recipe with the deleted labels.
    pub fn resolve(&self) -> Result<(Option<Named>, BTreeSet<usize>)> {
        let family = self.family();
        let n = self.rank();
        if n < family.min_rank() {
            return Err(Error::RankOutOfRange { family, n });
        }
        match *self {
            ParabolicCase::P { family, n, s, ell } => {
                if s < 1 || s + 2 * ell > n {
                    return Err(bad(format!(
                        "need 1 <= s and s+2l <= n, got s={s}, l={ell}, n={n}"
                    )));
                }
                let mut del: BTreeSet<usize> = (0..=ell).map(|k| s + 2 * k).collect();
                let recipe = match (family, s % 2) {
                    (Family::B, 1) => {
                        if ell < 1 {
                            return Err(bad("type B with s odd needs l >= 1".into()));
                        }
                        Recipe::OddB
                    }
                    (Family::D, 1) => {
                        if ell < 1 {
                            return Err(bad("type D with s odd needs l >= 1".into()));
                        }
                        if s + 2 * ell == n - 1 {
                            del.remove(&(n - 1));
                            del.insert(n);
                        }
                        Recipe::OddD
                    }
                    (Family::B, _) => {
                        if ell != 1 || n < 4 || s > n - 2 {
                            return Err(bad(format!("type B with s even needs n >= 4, l = 1, s <= n-2, got n={n}, s={s}, l={ell}")));
                        }
                        Recipe::EvenB
                    }
                    (Family::D, _) => {
                        if ell != 1 || n < 6 || s + 4 > n {
                            return Err(bad(format!("type D with s even needs n >= 6, l = 1, s <= n-4, got n={n}, s={s}, l={ell}")));
                        }
                        Recipe::EvenD
                    }
                    (Family::C, _) => {
                        if ell < 1 || n < 3 {
                            return Err(bad(format!(
                                "type C needs n >= 3 and l >= 1, got n={n}, l={ell}"
                            )));
                        }
                        Recipe::Symplectic
                    }
                };
                Ok((Some(Named { recipe, s, ell }), del))
            }
            ParabolicCase::PL { n, ell } => {
                if 2 * ell + 2 > n {
                    return Err(bad(format!("need l <= (n-2)/2, got n={n}, l={ell}")));
                }
                let recipe = if n % 2 == 0 {
                    Recipe::ForkEven
                } else {
                    match ell {
                        0 => Recipe::ForkOddP0,
                        1 => Recipe::ForkOddP1,
                        _ => {
                            return Err(bad(format!(
                                "for n odd only l = 0 or l = 1 is covered, got l={ell}"
                            )))
                        }
                    }
                };
                let mut del: BTreeSet<usize> = (0..=ell).map(|k| n - 1 - 2 * k).collect();
                del.insert(n);
                Ok((
                    Some(Named {
                        recipe,
                        s: n - 1 - 2 * ell,
                        ell,
                    }),
                    del,
                ))
            }
            ParabolicCase::Q { n, s, ell } => {
                if n % 2 == 0 || n < 5 || s % 2 == 0 {
                    return Err(bad(format!(
                        "q needs n odd >= 5 and s odd, got n={n}, s={s}"
                    )));
                }
                let t = s + 2 * ell;
                if !(t + 4 <= n || t + 2 == n) {
                    return Err(bad(format!(
                        "q needs s+2l <= n-4 or s+2l = n-2, got s+2l={t}, n={n}"
                    )));
                }
                let mut del: BTreeSet<usize> = (0..=ell).map(|k| s + 2 * k).collect();
                del.insert(n - 1);
                del.insert(n);
                Ok((
                    Some(Named {
                        recipe: Recipe::Q,
                        s,
                        ell,
                    }),
                    del,
                ))
            }
            ParabolicCase::Raw {
                family,
                n,
                ref deleted,
            } => {
                if let Some(&bad_label) = deleted.iter().find(|&&i| i < 1 || i > n) {
                    return Err(bad(format!("label {bad_label} is not in 1..={n}")));
                }
                let named = named_cases(family, n)
                    .into_iter()
                    .find_map(|c| match c.resolve() {
                        Ok((nm, d)) if &d == deleted => nm,
                        _ => None,
                    });
                Ok((named, deleted.clone()))
            }
        }
    }
}

impl Named {
    /// Closed form of the index for this recipe in rank `n`.
    pub fn index_formula(&self, n: usize) -> usize {
        let (s, ell) = (self.s, self.ell);
        match self.recipe {
            Recipe::OddB => n - (s - 1) / 2,
            Recipe::OddD => n - (s + 1) / 2,
            Recipe::EvenB | Recipe::EvenD => n - s / 2 + 1,
            Recipe::Symplectic if s % 2 == 1 => n - (s - 1) / 2,
            Recipe::Symplectic => n - s / 2 + 1,
            Recipe::ForkEven => (n + 2 + 2 * ell) / 2,
            Recipe::ForkOddP0 => (n + 3) / 2,
            Recipe::ForkOddP1 => (n + 5) / 2,
            Recipe::Q => (n - 3) / 2 + ell + 3,
        }
    }
}

/// Every legal named case of the given family and rank.
pub fn named_cases(family: Family, n: usize) -> Vec<ParabolicCase> {
    let mut out = Vec::new();
    if n < family.min_rank() {
        return out;
    }
    for s in 1..=n {
        for ell in 0..=n / 2 {
            let c = ParabolicCase::P { family, n, s, ell };
            if c.resolve().is_ok() {
                out.push(c);
            }
        }
    }
    if family == Family::D {
        for ell in 0..=n / 2 {
            let c = ParabolicCase::PL { n, ell };
            if c.resolve().is_ok() {
                out.push(c);
            }
        }
        for s in 1..=n {
            for ell in 0..=n / 2 {
                let c = ParabolicCase::Q { n, s, ell };
                if c.resolve().is_ok() {
                    out.push(c);
                }
            }
        }
    }
    out
}

/// All named cases with rank at most `max_n`, in a fixed order.
pub fn all_named_cases(max_n: usize) -> Vec<ParabolicCase> {
    let mut out = Vec::new();
    for family in [Family::B, Family::C, Family::D] {
        for n in family.min_rank()..=max_n {
            out.extend(named_cases(family, n));
        }
    }
    out
}

/// Shape of a connected component of π'.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ComponentType {
    A,
    B,
    C,
    D,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub kind: ComponentType,
    /// Labels in ascending order.
    pub labels: Vec<usize>,
}

impl Component {
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Position of a label in the component's own Bourbaki numbering
    /// (1-based). A-type components are numbered in ascending order.
    pub fn local(&self, label: usize) -> Option<usize> {
        self.labels.iter().position(|&l| l == label).map(|i| i + 1)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orbit {
    /// Member labels in ascending order.
    pub members: Vec<usize>,
    pub j_stable: bool,
}

/// The truncated parabolic subalgebra `p_Λ = n⁻ ⊕ h_Λ ⊕ n⁺_{π'}`.
#[derive(Debug, Clone)]
pub struct TruncatedParabolic {
    case: ParabolicCase,
    named: Option<Named>,
    rs: RootSystem,
    real: Realization,
    kept: BTreeSet<usize>,
    deleted: BTreeSet<usize>,
    components: Vec<Component>,
    levi_positive: Vec<Root>,
    algebra_roots: Vec<Root>,
    dual_roots: Vec<Root>,
    dual_index: BTreeMap<Root, usize>,
    algebra_set: BTreeSet<Root>,
    h_basis: Vec<CartanElt>,
    h_gram_inv: Vec<Vec<Q>>,
}

impl TruncatedParabolic {
    pub fn new(case: ParabolicCase) -> Result<Self> {
        let (named, deleted) = case.resolve()?;
        let rs = RootSystem::new(case.family(), case.rank())?;
        let n = rs.rank();
        let kept: BTreeSet<usize> = (1..=n).filter(|i| !deleted.contains(i)).collect();
        let components = components_of(&rs, &kept);
        let levi_positive: Vec<Root> = rs
            .positive_roots()
            .iter()
            .filter(|r| {
                rs.simple_coords(&r.to_q())
                    .iter()
                    .enumerate()
                    .all(|(i, c)| c.is_zero() || kept.contains(&(i + 1)))
            })
            .cloned()
            .collect();
        let mut algebra_roots: Vec<Root> = rs.positive_roots().iter().map(|r| -r).collect();
        algebra_roots.extend(levi_positive.iter().cloned());
        let mut dual_roots: Vec<Root> = rs.positive_roots().to_vec();
        dual_roots.extend(levi_positive.iter().map(|r| -r));
        let dual_index = dual_roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        let algebra_set = algebra_roots.iter().cloned().collect();
        let mut h_basis: Vec<CartanElt> = kept.iter().map(|&i| rs.simple_coroot(i)).collect();
        if rs.family() == Family::D
            && n % 2 == 1
            && deleted.contains(&(n - 1))
            && deleted.contains(&n)
        {
            h_basis.push(Root::eps(n, &[(n, 2)]).to_q());
        }
        let gram: Vec<Vec<Q>> = h_basis
            .iter()
            .map(|a| h_basis.iter().map(|b| dot(a, b)).collect())
            .collect();
        let h_gram_inv = inverse(&gram).expect("h basis is linearly independent");
        let real = Realization::new(&rs);
        Ok(TruncatedParabolic {
            case,
            named,
            rs,
            real,
            kept,
            deleted,
            components,
            levi_positive,
            algebra_roots,
            dual_roots,
            dual_index,
            algebra_set,
            h_basis,
            h_gram_inv,
        })
    }

    pub fn case(&self) -> &ParabolicCase {
        &self.case
    }

    pub fn named(&self) -> Option<Named> {
        self.named
    }

    pub fn root_system(&self) -> &RootSystem {
        &self.rs
    }

    pub fn realization(&self) -> &Realization {
        &self.real
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn family(&self) -> Family {
        self.rs.family()
    }

    /// Labels of π'.
    pub fn kept(&self) -> &BTreeSet<usize> {
        &self.kept
    }

    pub fn deleted(&self) -> &BTreeSet<usize> {
        &self.deleted
    }

    pub fn in_levi(&self, label: usize) -> bool {
        self.kept.contains(&label)
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    pub fn component_of(&self, label: usize) -> Option<&Component> {
        self.components.iter().find(|c| c.labels.contains(&label))
    }

    pub fn levi_positive(&self) -> &[Root] {
        &self.levi_positive
    }

    pub fn is_levi_root(&self, r: &Root) -> bool {
        let p = if r.is_positive() { r.clone() } else { -r };
        self.levi_positive.binary_search(&p).is_ok()
    }

    /// Roots of p_Λ: Δ⁻ followed by Δ⁺_{π'}.
    pub fn algebra_roots(&self) -> &[Root] {
        &self.algebra_roots
    }

    /// Roots of the dual model: Δ⁺ followed by Δ⁻_{π'}.
    pub fn dual_roots(&self) -> &[Root] {
        &self.dual_roots
    }

    pub fn is_algebra_root(&self, r: &Root) -> bool {
        self.algebra_set.contains(r)
    }

    pub fn is_dual_root(&self, r: &Root) -> bool {
        self.dual_index.contains_key(r)
    }

    pub fn dual_index(&self, r: &Root) -> Option<usize> {
        self.dual_index.get(r).copied()
    }

    pub fn h_basis(&self) -> &[CartanElt] {
        &self.h_basis
    }

    pub fn dim_h(&self) -> usize {
        self.h_basis.len()
    }

    pub fn dim(&self) -> usize {
        self.algebra_roots.len() + self.h_basis.len()
    }

    /// Coefficients of the orthogonal projection of `h` on the h_Λ basis.
    pub fn h_coords(&self, h: &[Q]) -> Vec<Q> {
        let rhs: Vec<Q> = self.h_basis.iter().map(|b| dot(b, h)).collect();
        self.h_gram_inv.iter().map(|row| dot(row, &rhs)).collect()
    }

    pub fn from_h_coords(&self, a: &[Q]) -> CartanElt {
        let mut out = vec![Q::zero(); self.rank()];
        for (c, b) in a.iter().zip(&self.h_basis) {
            for (x, y) in out.iter_mut().zip(b) {
                *x += c * y;
            }
        }
        out
    }

    /// Orthogonal projection on h_Λ for the invariant form.
    pub fn project_cartan(&self, h: &[Q]) -> CartanElt {
        self.from_h_coords(&self.h_coords(h))
    }

    /// Coordinates in the dual-model basis: dual roots first, then h_Λ.
    pub fn dual_coordinates(&self, y: &LieElt) -> SparseVec {
        let mut v = SparseVec::new();
        for (r, c) in &y.roots {
            if let Some(i) = self.dual_index(r) {
                if !c.is_zero() {
                    v.insert(i, c.clone());
                }
            }
        }
        let off = self.dual_roots.len();
        for (k, c) in self.h_coords(&y.cartan).into_iter().enumerate() {
            if !c.is_zero() {
                v.insert(off + k, c);
            }
        }
        v
    }

    /// Basis of p_Λ: root vectors for the algebra roots, then h_Λ.
    pub fn basis(&self) -> Vec<LieElt> {
        let n = self.rank();
        let mut out: Vec<LieElt> = self
            .algebra_roots
            .iter()
            .map(|r| LieElt::root(n, r.clone(), q(1)))
            .collect();
        out.extend(self.h_basis.iter().map(|h| LieElt::cartan(h.clone())));
        out
    }

    /// `j = −w_0` on the simple roots.
    pub fn involution_j(&self, label: usize) -> usize {
        let n = self.rank();
        if self.family() == Family::D && n % 2 == 1 && label >= n - 1 {
            2 * n - 1 - label
        } else {
            label
        }
    }

    /// `−w_0'` on π', computed per component.
    fn levi_involution(&self, label: usize) -> usize {
        let c = self.component_of(label).expect("label in π'");
        let k = c.local(label).unwrap();
        let len = c.len();
        let local = match c.kind {
            ComponentType::A => len + 1 - k,
            ComponentType::B | ComponentType::C => k,
            ComponentType::D => {
                if len % 2 == 0 || k < len - 1 {
                    k
                } else {
                    2 * len - 1 - k
                }
            }
        };
        c.labels[local - 1]
    }

    /// The involution `i` of π: `−w_0'` on π' and the iterated rule outside.
    pub fn involution_i(&self, label: usize) -> usize {
        if self.in_levi(label) {
            return self.levi_involution(label);
        }
        let mut a = self.involution_j(label);
        let mut steps = 0;
        while self.in_levi(a) {
            a = self.involution_j(self.levi_involution(a));
            steps += 1;
            assert!(steps <= self.rank(), "iteration for i did not leave π'");
        }
        a
    }

    /// Orbits of ⟨ij⟩ on π, sorted by least member.
    pub fn orbits(&self) -> Vec<Orbit> {
        let n = self.rank();
        let mut seen = vec![false; n + 1];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start] {
                continue;
            }
            let mut members = Vec::new();
            let mut a = start;
            loop {
                seen[a] = true;
                members.push(a);
                a = self.involution_i(self.involution_j(a));
                if a == start {
                    break;
                }
            }
            members.sort_unstable();
            let j_stable = members
                .iter()
                .all(|&m| members.contains(&self.involution_j(m)));
            out.push(Orbit { members, j_stable });
        }
        out
    }

    pub fn index_by_orbits(&self) -> usize {
        self.orbits().len()
    }

    /// Corank of `ξ([b_i, b_j])` for a pseudo-random integral ξ.
    pub fn index_oracle(&self, seed: u64) -> usize {
        self.index_oracle_all(&[seed])[0]
    }

    /// The oracle for several seeds, sharing the bracket table.
    pub fn index_oracle_all(&self, seeds: &[u64]) -> Vec<usize> {
        let basis = self.basis();
        let d = basis.len();
        let mut brackets = Vec::with_capacity(d * (d - 1) / 2);
        for i in 0..d {
            for j in i + 1..d {
                brackets.push((i, j, self.real.bracket(&basis[i], &basis[j])));
            }
        }
        seeds
            .iter()
            .map(|&seed| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut xi_root = BTreeMap::new();
                for r in &self.algebra_roots {
                    xi_root.insert(r.clone(), q(rng.random_range(-10_000i64..=10_000)));
                }
                let w: Vec<Q> = (0..self.rank())
                    .map(|_| q(rng.random_range(-10_000i64..=10_000)))
                    .collect();
                let mut m = vec![vec![BigInt::zero(); d]; d];
                for (i, j, z) in &brackets {
                    let mut v = dot(&w, &z.cartan);
                    for (r, c) in &z.roots {
                        v += c * &xi_root[r];
                    }
                    assert!(v.is_integer(), "structure constants are integral");
                    let v = v.to_integer();
                    m[*j][*i] = -v.clone();
                    m[*i][*j] = v;
                }
                d - bareiss_rank(m)
            })
            .collect()
    }

    /// Minimum of the oracle over the given seeds.
    pub fn index_oracle_min(&self, seeds: &[u64]) -> usize {
        self.index_oracle_all(seeds)
            .into_iter()
            .min()
            .unwrap_or(self.dim())
    }

    /// `(dim + ind)/2`; `None` if not an integer.
    pub fn magic_number(&self) -> Option<usize> {
        let t = self.dim() + self.index_by_orbits();
        (t % 2 == 0).then_some(t / 2)
    }
}

fn components_of(rs: &RootSystem, kept: &BTreeSet<usize>) -> Vec<Component> {
    let n = rs.rank();
    let a = rs.cartan_matrix();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for &start in kept {
        if seen.contains(&start) {
            continue;
        }
        let mut stack = vec![start];
        let mut labels = Vec::new();
        seen.insert(start);
        while let Some(x) = stack.pop() {
            labels.push(x);
            for &y in kept {
                if !seen.contains(&y) && a[x - 1][y - 1] != 0 {
                    seen.insert(y);
                    stack.push(y);
                }
            }
        }
        labels.sort_unstable();
        let has = |l: usize| labels.contains(&l);
        let kind = match rs.family() {
            Family::D if has(n - 1) && has(n) && has(n - 2) => ComponentType::D,
            Family::B if has(n) && labels.len() >= 2 => ComponentType::B,
            Family::C if has(n) && labels.len() >= 2 => ComponentType::C,
            _ => ComponentType::A,
        };
        out.push(Component { kind, labels });
    }
    out.sort_by_key(|c| c.labels[0]);
    out
}

//! Adapted pairs `(h, y)` for truncated parabolics: the case-by-case root
//! sets, the sufficient conditions for regularity, a direct regularity check
//! and the ad h eigenvalue tables.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cascade::{kostant_cascade, largest_heisenberg, Cascade, HeisenbergSet};
use crate::liealg::{coadjoint, LieElt};
use crate::linalg::{det, frac, q, solve, Echelon, SparseVec, Q};
use crate::parabolic::{ParabolicCase, Recipe, TruncatedParabolic};
use crate::rootsys::{CartanElt, Family, Root};
use crate::{Error, Result};

/// Root data of an adapted pair. `y` is `Σ_{γ∈S} x_γ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdaptedCandidate {
    pub s_plus: Vec<Root>,
    pub s_minus: Vec<Root>,
    pub heisenberg: BTreeMap<Root, HeisenbergSet>,
    pub t: Vec<Root>,
    pub t_star: Vec<Root>,
    /// Set by [`AdaptedCandidate::solved`].
    pub h: Option<CartanElt>,
}

impl AdaptedCandidate {
    /// `S⁺` followed by `S⁻`.
    pub fn s(&self) -> Vec<Root> {
        self.s_plus.iter().chain(&self.s_minus).cloned().collect()
    }

    /// `O = ⊔ Γ_γ⁰`, split by sign of the centre.
    pub fn o_plus(&self) -> Vec<Root> {
        self.s_plus
            .iter()
            .flat_map(|g| self.heisenberg[g].without_centre())
            .collect()
    }

    pub fn o_minus(&self) -> Vec<Root> {
        self.s_minus
            .iter()
            .flat_map(|g| self.heisenberg[g].without_centre())
            .collect()
    }

    pub fn y(&self, n: usize) -> LieElt {
        self.y_scaled(n, &BTreeMap::new())
    }

    /// `Σ c_γ x_γ`, with `c_γ = 1` where no scaling is given.
    pub fn y_scaled(&self, n: usize, coeffs: &BTreeMap<Root, Q>) -> LieElt {
        let mut y = LieElt::zero(n);
        for g in self.s() {
            let c = coeffs.get(&g).cloned().unwrap_or_else(Q::one);
            y.roots.insert(g, c);
        }
        y
    }

    pub fn solved(mut self, p: &TruncatedParabolic) -> Result<Self> {
        self.h = Some(solve_h(&self, p)?);
        Ok(self)
    }

    /// Same sets with the lexicographically first root of S removed from `y`.
    pub fn mutated(&self) -> AdaptedCandidate {
        let first = self.s().into_iter().min().expect("S is nonempty");
        let mut c = self.clone();
        c.s_plus.retain(|r| *r != first);
        c.s_minus.retain(|r| *r != first);
        c.h = None;
        c
    }
}

struct Builder<'a> {
    p: &'a TruncatedParabolic,
    n: usize,
    g_cascade: Cascade,
    levi_cascade: Cascade,
    c: AdaptedCandidate,
}

impl<'a> Builder<'a> {
    fn new(p: &'a TruncatedParabolic) -> Self {
        Builder {
            p,
            n: p.rank(),
            g_cascade: kostant_cascade(p.root_system().positive_roots()),
            levi_cascade: kostant_cascade(p.levi_positive()),
            c: AdaptedCandidate {
                s_plus: Vec::new(),
                s_minus: Vec::new(),
                heisenberg: BTreeMap::new(),
                t: Vec::new(),
                t_star: Vec::new(),
                h: None,
            },
        }
    }

    fn e(&self, i: usize) -> Root {
        Root::eps(self.n, &[(i, 1)])
    }

    fn pp(&self, i: usize, j: usize) -> Root {
        Root::eps(self.n, &[(i, 1), (j, 1)])
    }

    fn pm(&self, i: usize, j: usize) -> Root {
        Root::eps(self.n, &[(i, 1), (j, -1)])
    }

    fn add_s(&mut self, gamma: HeisenbergSet) {
        let c = gamma.centre().clone();
        if c.is_positive() {
            self.c.s_plus.push(c.clone());
        } else {
            self.c.s_minus.push(c.clone());
        }
        self.c.heisenberg.insert(c, gamma);
    }

    fn explicit(&mut self, centre: Root, mut members: Vec<Root>) -> Result<()> {
        members.push(centre.clone());
        let h = HeisenbergSet::new(centre, members)?;
        self.add_s(h);
        Ok(())
    }

    fn singleton(&mut self, centre: Root) {
        self.add_s(HeisenbergSet::singleton(centre));
    }

    /// `γ` a root of the cascade of g, with `Γ_γ = H_γ`.
    fn g_cascade_root(&mut self, gamma: &Root) -> Result<()> {
        let h = largest_heisenberg(&self.g_cascade, gamma)?;
        self.add_s(h);
        Ok(())
    }

    /// `−β` for `β` in the Levi cascade, with `Γ = −H_β`.
    fn neg_levi_cascade_root(&mut self, beta: &Root) -> Result<()> {
        let h = largest_heisenberg(&self.levi_cascade, beta)?;
        self.add_s(h.negated());
        Ok(())
    }

    fn simple(&self, r: &Root) -> bool {
        self.p.root_system().simple_label(r).is_some()
    }

    /// Cascades of g and of the Levi: non-simple roots go to `S⁺` and `−S⁻`,
    /// simple ones to `T⁺` and `−T⁻`.
    fn cascades(&mut self) -> Result<()> {
        for beta in self.g_cascade.roots() {
            if self.simple(&beta) {
                self.c.t.push(beta);
            } else {
                self.g_cascade_root(&beta)?;
            }
        }
        self.levi_minus(true)
    }

    fn levi_minus(&mut self, with_s: bool) -> Result<()> {
        for beta in self.levi_cascade.roots() {
            if self.simple(&beta) {
                self.c.t.push(-&beta);
            } else if with_s {
                self.neg_levi_cascade_root(&beta)?;
            }
        }
        Ok(())
    }

    fn move_to_s(&mut self, r: Root) {
        self.c.t.retain(|x| *x != r);
        self.singleton(r);
    }

    /// `(H⁰_{2ε_i} ⊔ H_{2ε_{i+1}})` from the given cascade (type C).
    fn symplectic_pair(&self, cascade: &Cascade, i: usize) -> Result<HeisenbergSet> {
        let n = self.n;
        let a = largest_heisenberg(cascade, &Root::eps(n, &[(i, 2)]))?;
        let b = largest_heisenberg(cascade, &Root::eps(n, &[(i + 1, 2)]))?;
        let members = a
            .without_centre()
            .into_iter()
            .chain(b.members().iter().cloned());
        HeisenbergSet::new(self.pp(i, i + 1), members)
    }

    fn finish(self) -> AdaptedCandidate {
        self.c
    }
}

/// The adapted-pair root data for a named case.
pub fn construct_candidate(p: &TruncatedParabolic) -> Result<AdaptedCandidate> {
    let named = p.named().ok_or(Error::NoRecipe)?;
    let (s, ell) = (named.s, named.ell);
    let n = p.rank();
    let mut b = Builder::new(p);
    match named.recipe {
        Recipe::OddB | Recipe::ForkEven => b.cascades()?,
        Recipe::OddD => {
            b.cascades()?;
            if s + 2 * ell + 2 <= n {
                let alpha_n = p.root_system().alpha(n).clone();
                if n % 2 == 0 {
                    b.move_to_s(alpha_n);
                } else {
                    b.move_to_s(-alpha_n);
                }
            }
        }
        Recipe::EvenB | Recipe::EvenD => even(&mut b, s, p.family())?,
        Recipe::Symplectic => symplectic(&mut b, s, ell)?,
        Recipe::ForkOddP0 => fork_odd_0(&mut b)?,
        Recipe::ForkOddP1 => fork_odd_1(&mut b)?,
        Recipe::Q => q_case(&mut b)?,
    }
    let mut c = b.finish();
    if matches!(named.recipe, Recipe::Symplectic) {
        c.t = complement(p, &c);
    }
    Ok(c)
}

/// Roots of `Δ⁺ ⊔ Δ⁻_{π'}` not covered by the Heisenberg sets or `T*`.
fn complement(p: &TruncatedParabolic, c: &AdaptedCandidate) -> Vec<Root> {
    let used: BTreeSet<&Root> = c
        .heisenberg
        .values()
        .flat_map(|h| h.members())
        .chain(&c.t_star)
        .collect();
    p.dual_roots()
        .iter()
        .filter(|r| !used.contains(r))
        .cloned()
        .collect()
}

fn even(b: &mut Builder, s: usize, family: Family) -> Result<()> {
    let n = b.n;
    let is_b = family == Family::B;
    if is_b {
        b.singleton(b.e(s));
    } else {
        b.singleton(b.pm(s, n));
        b.singleton(b.pp(s, n));
    }
    for i in 1..s / 2 {
        b.g_cascade_root(&b.pp(2 * i - 1, 2 * i))?;
    }
    let mut m = vec![b.pm(s - 1, s), b.pp(s, s + 1)];
    for i in s + 2..=n {
        m.extend([
            b.pp(s - 1, i),
            b.pm(s + 1, i),
            b.pm(s - 1, i),
            b.pp(s + 1, i),
        ]);
    }
    if is_b {
        m.extend([b.e(s - 1), b.e(s + 1)]);
    }
    b.explicit(b.pp(s - 1, s + 1), m)?;
    let top = if is_b { (n - 1) / 2 } else { (n - 2) / 2 };
    for j in s / 2 + 1..=top {
        let mut m = Vec::new();
        if is_b {
            m.extend([b.e(2 * j), b.e(2 * j + 1)]);
        }
        for k in 2 * j + 2..=n {
            m.extend([
                b.pp(2 * j, k),
                b.pm(2 * j + 1, k),
                b.pm(2 * j, k),
                b.pp(2 * j + 1, k),
            ]);
        }
        b.explicit(b.pp(2 * j, 2 * j + 1), m)?;
    }
    for i in 1..s / 2 {
        let m = (i + 1..s - i)
            .flat_map(|j| [b.pm(s - i, j), b.pm(j, i)])
            .collect();
        b.explicit(b.pm(s - i, i), m)?;
    }
    let top = if is_b { n / 2 } else { (n - 1) / 2 };
    for j in s / 2 + 2..=top {
        b.neg_levi_cascade_root(&b.pp(2 * j - 1, 2 * j))?;
    }
    let mut t = vec![b.pp(s - 1, s), b.pm(s - 1, s + 1), b.pp(s, s + 2)];
    t.extend((1..s / 2).map(|i| b.pm(2 * i - 1, 2 * i)));
    t.extend((1..=(n - s - 1) / 2).map(|j| b.pm(s + 2 * j, s + 2 * j + 1)));
    t.extend((1..=(n - s) / 2).map(|k| b.pm(s + 2 * k, s + 2 * k - 1)));
    b.c.t = t;
    let last = if is_b { n } else { n - 1 };
    let mut ts: Vec<Root> = (1..=last).filter(|&i| i != s).map(|i| b.pm(s, i)).collect();
    ts.extend((s + 3..=last).map(|j| b.pp(s, j)));
    let tail = if is_b { b.e(n) } else { b.pp(n - 1, n) };
    let odd = if is_b { n % 2 == 1 } else { n % 2 == 0 };
    ts.push(if odd { -tail } else { tail });
    b.c.t_star = ts;
    Ok(())
}

fn symplectic(b: &mut Builder, s: usize, ell: usize) -> Result<()> {
    let n = b.n;
    let gc = b.g_cascade.clone();
    let lc = b.levi_cascade.clone();
    let mut plus_pairs = Vec::new();
    let mut minus_pairs = Vec::new();
    let mut levi_tops = Vec::new();
    if s % 2 == 1 {
        plus_pairs.extend((1..=n / 2).map(|i| 2 * i - 1));
        levi_tops.extend(1..=(s - 1) / 2);
        minus_pairs.extend(((s + 2 * ell + 1) / 2..=(n - 1) / 2).map(|j| 2 * j));
    } else {
        let t = s / 4;
        b.g_cascade_root(&Root::eps(n, &[(2 * t + 1, 2)]))?;
        plus_pairs.extend((1..=t).map(|i| 2 * i - 1));
        plus_pairs.extend((t + 1..=(n - 1) / 2).map(|j| 2 * j));
        levi_tops.extend(1..=(s - 2) / 2);
        minus_pairs.extend(((s + 2 * ell) / 2..=(n - 2) / 2).map(|j| 2 * j + 1));
    }
    for i in plus_pairs {
        let h = b.symplectic_pair(&gc, i)?;
        b.add_s(h);
    }
    for i in levi_tops {
        b.neg_levi_cascade_root(&b.pm(i, s + 1 - i))?;
    }
    for i in minus_pairs {
        let h = b.symplectic_pair(&lc, i)?;
        b.add_s(h.negated());
    }
    Ok(())
}

fn fork_odd_0(b: &mut Builder) -> Result<()> {
    let n = b.n;
    for i in 1..=(n - 3) / 2 {
        b.g_cascade_root(&b.pp(2 * i - 1, 2 * i))?;
    }
    b.explicit(b.pp(n - 2, n), vec![b.pm(n - 2, n - 1), b.pp(n - 1, n)])?;
    b.singleton(b.pm(n - 2, n));
    b.neg_levi_cascade_root(&b.pm(1, n - 1))?;
    for i in 2..=(n - 3) / 2 {
        let m = (i + 1..=n - i - 2)
            .flat_map(|j| [b.pm(n - i - 1, j), b.pm(j, i)])
            .collect();
        b.explicit(b.pm(n - i - 1, i), m)?;
    }
    let mut t = vec![b.pm(n - 2, 2), b.pp(n - 2, n - 1), b.pm(n - 1, n)];
    t.extend((1..=(n - 3) / 2).map(|i| b.pm(2 * i - 1, 2 * i)));
    b.c.t = t;
    b.c.t_star = (3..=n - 3).map(|i| b.pm(n - 2, i)).collect();
    Ok(())
}

fn fork_odd_1(b: &mut Builder) -> Result<()> {
    let n = b.n;
    for i in 1..=(n - 5) / 2 {
        b.g_cascade_root(&b.pp(2 * i - 1, 2 * i))?;
    }
    let mut m = vec![b.pm(n - 4, n - 3), b.pp(n - 2, n - 3)];
    for k in [n - 1, n] {
        m.extend([
            b.pp(n - 4, k),
            b.pm(n - 2, k),
            b.pm(n - 4, k),
            b.pp(n - 2, k),
        ]);
    }
    b.explicit(b.pp(n - 4, n - 2), m)?;
    b.explicit(b.pp(n - 3, n), vec![b.pm(n - 3, n - 1), b.pp(n - 1, n)])?;
    b.singleton(b.pm(n - 3, n));
    for k in 1..=(n - 5) / 2 {
        let m = (k + 1..=n - 4 - k)
            .flat_map(|j| [b.pm(n - 3 - k, j), b.pm(j, k)])
            .collect();
        b.explicit(b.pm(n - 3 - k, k), m)?;
    }
    let mut t: Vec<Root> = (1..=(n - 5) / 2).map(|i| b.pm(2 * i - 1, 2 * i)).collect();
    t.extend([
        b.pp(n - 4, n - 3),
        b.pm(n - 4, n - 2),
        b.pp(n - 3, n - 1),
        b.pm(n - 1, n),
        b.pm(n - 1, n - 2),
    ]);
    b.c.t = t;
    b.c.t_star = (1..=n - 2)
        .filter(|&k| k != n - 3)
        .map(|k| b.pm(n - 3, k))
        .collect();
    Ok(())
}

fn q_case(b: &mut Builder) -> Result<()> {
    let n = b.n;
    for i in 1..=(n - 3) / 2 {
        b.g_cascade_root(&b.pp(2 * i - 1, 2 * i))?;
    }
    b.explicit(b.pp(n - 2, n), vec![b.pm(n - 2, n - 1), b.pp(n - 1, n)])?;
    for beta in b.levi_cascade.roots() {
        if !b.simple(&beta) {
            b.neg_levi_cascade_root(&beta)?;
        }
    }
    let mut t = vec![b.pp(n - 2, n - 1), b.pm(n - 2, n), b.pm(n - 1, n)];
    t.extend((1..=(n - 3) / 2).map(|i| b.pm(2 * i - 1, 2 * i)));
    b.c.t = t;
    b.levi_minus(false)
}

/// Type B, deletion `{s, s+2, s+4}` with `s` even: the even-case sets with
/// `−ε_{s+3}−ε_{s+4}` dropped from `S⁻`. Condition (v) fails for it.
pub fn construct_notwork_variant(
    n: usize,
    s: usize,
) -> Result<(TruncatedParabolic, AdaptedCandidate)> {
    if n < 6 || s < 2 || s % 2 == 1 || s + 4 > n {
        return Err(Error::Parameter(format!(
            "variant needs B_n, n >= 6, s even, s+4 <= n, got n={n}, s={s}"
        )));
    }
    let twin = TruncatedParabolic::new(ParabolicCase::P {
        family: Family::B,
        n,
        s,
        ell: 1,
    })?;
    let deleted: BTreeSet<usize> = [s, s + 2, s + 4].into_iter().collect();
    let p = TruncatedParabolic::new(ParabolicCase::Raw {
        family: Family::B,
        n,
        deleted,
    })?;
    let mut c = construct_candidate(&twin)?;
    let drop = -Root::eps(n, &[(s + 3, 1), (s + 4, 1)]);
    c.s_minus.retain(|r| *r != drop);
    c.heisenberg.remove(&drop);
    Ok((p, c))
}

/// Deletion `{s, s+4}` with `s` odd, together with the non-simple cascade
/// roots of g and the negated non-simple cascade roots of the Levi. This set
/// does not restrict to a basis.
pub fn cascade_only_set(
    family: Family,
    n: usize,
    s: usize,
) -> Result<(TruncatedParabolic, Vec<Root>)> {
    if !matches!(family, Family::B | Family::D) || s % 2 == 0 || s + 4 > n {
        return Err(Error::Parameter(format!(
            "needs type B or D, s odd, s+4 <= n, got {family}{n}, s={s}"
        )));
    }
    let deleted: BTreeSet<usize> = [s, s + 4].into_iter().collect();
    let p = TruncatedParabolic::new(ParabolicCase::Raw { family, n, deleted })?;
    let rs = p.root_system();
    let nonsimple = |c: Cascade| {
        c.roots()
            .into_iter()
            .filter(|r| rs.simple_label(r).is_none())
            .collect::<Vec<_>>()
    };
    let mut out = nonsimple(kostant_cascade(rs.positive_roots()));
    out.extend(
        nonsimple(kostant_cascade(p.levi_positive()))
            .into_iter()
            .map(|r| -r),
    );
    Ok((p, out))
}

/// `M[u][v] = s_u(h_v)` over the h_Λ basis in ascending order.
pub fn restriction_matrix(p: &TruncatedParabolic, s: &[Root]) -> Vec<Vec<Q>> {
    s.iter()
        .map(|g| p.h_basis().iter().map(|h| g.pair(h)).collect())
        .collect()
}

/// Determinant of the restriction matrix, `None` if it is not square.
pub fn restriction_det(p: &TruncatedParabolic, s: &[Root]) -> Option<Q> {
    (s.len() == p.dim_h()).then(|| det(&restriction_matrix(p, s)))
}

/// The unique `h ∈ h_Λ` with `γ(h) = −1` for all `γ ∈ S`.
pub fn solve_h(c: &AdaptedCandidate, p: &TruncatedParabolic) -> Result<CartanElt> {
    let s = c.s();
    if s.len() != p.dim_h() {
        return Err(Error::Singular);
    }
    let m = restriction_matrix(p, &s);
    let rhs = vec![q(-1); s.len()];
    let a = solve(&m, &rhs).ok_or(Error::Singular)?;
    Ok(p.from_h_coords(&a))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Root(Root),
    Pair(Root, Root),
    Determinant(Q),
    Count { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Condition {
    pub pass: bool,
    pub witnesses: Vec<Witness>,
}

impl Condition {
    fn from_witnesses(witnesses: Vec<Witness>) -> Self {
        Condition {
            pass: witnesses.is_empty(),
            witnesses,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Regularity {
    /// Rank of `ad p_Λ(y)`.
    pub rank: usize,
    /// Rank after adding `g_T`.
    pub rank_with_t: usize,
    pub dim: usize,
    pub t_len: usize,
    pub verdict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionReport {
    /// Conditions (i) to (vi) in order.
    pub conditions: [Condition; 6],
    pub restriction_det: Option<Q>,
    pub h: Option<CartanElt>,
    pub regularity: Regularity,
    pub spectrum: Option<Spectrum>,
}

impl ConditionReport {
    pub fn all_pass(&self) -> bool {
        self.conditions.iter().all(|c| c.pass)
    }

    /// Roman numeral of the first failing condition.
    pub fn first_failure(&self) -> Option<&'static str> {
        const NAMES: [&str; 6] = ["i", "ii", "iii", "iv", "v", "vi"];
        self.conditions
            .iter()
            .position(|c| !c.pass)
            .map(|k| NAMES[k])
    }
}

/// Image of `x ↦ ad* x (y)` over the basis of p_Λ, in dual coordinates.
fn image(p: &TruncatedParabolic, y: &LieElt) -> Echelon {
    let mut e = Echelon::new();
    for b in p.basis() {
        let z = coadjoint(p, &b, y).expect("basis elements and y have legal support");
        e.insert(p.dual_coordinates(&z));
    }
    e
}

fn unit(i: usize) -> SparseVec {
    [(i, Q::one())].into_iter().collect()
}

fn regularity_of(p: &TruncatedParabolic, c: &AdaptedCandidate, img: &Echelon) -> Regularity {
    let rank = img.rank();
    let mut full = img.clone();
    for r in &c.t {
        if let Some(i) = p.dual_index(r) {
            full.insert(unit(i));
        }
    }
    let dim = p.dim();
    let t_len = c.t.len();
    Regularity {
        rank,
        rank_with_t: full.rank(),
        dim,
        t_len,
        verdict: rank + t_len == dim && full.rank() == dim,
    }
}

/// Checks `ad p_Λ(y) ⊕ g_T = p_Λ*` by exact rank computation.
pub fn verify_regularity_direct(c: &AdaptedCandidate, p: &TruncatedParabolic) -> Regularity {
    verify_regularity_scaled(c, p, &BTreeMap::new())
}

pub fn verify_regularity_scaled(
    c: &AdaptedCandidate,
    p: &TruncatedParabolic,
    coeffs: &BTreeMap<Root, Q>,
) -> Regularity {
    let y = c.y_scaled(p.rank(), coeffs);
    regularity_of(p, c, &image(p, &y))
}

/// Positive rational coefficients `a/b` with `1 ≤ a, b ≤ 50` for every root
/// of S, drawn from a seeded stream.
pub fn random_scaling(c: &AdaptedCandidate, seed: u64) -> BTreeMap<Root, Q> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    c.s()
        .into_iter()
        .map(|g| {
            let a = rng.random_range(1i64..=50);
            let b = rng.random_range(1i64..=50);
            (g, frac(a, b))
        })
        .collect()
}

fn sum_condition(c: &AdaptedCandidate, centres: &[Root], o: &[Root]) -> Condition {
    let s: BTreeSet<Root> = c.s().into_iter().collect();
    let mut w = Vec::new();
    for g in centres {
        let gamma = &c.heisenberg[g];
        for a in gamma.without_centre() {
            for b in o {
                let sum = &a + b;
                if s.contains(&sum) && !(gamma.contains(b) && b != g && &sum == g) {
                    w.push(Witness::Pair(a.clone(), b.clone()));
                }
            }
        }
    }
    Condition::from_witnesses(w)
}

fn partition_condition(p: &TruncatedParabolic, c: &AdaptedCandidate) -> Condition {
    let mut w = Vec::new();
    let mut count: BTreeMap<&Root, usize> = BTreeMap::new();
    let pieces = c
        .heisenberg
        .values()
        .flat_map(|h| h.members())
        .chain(&c.t)
        .chain(&c.t_star);
    for r in pieces {
        *count.entry(r).or_default() += 1;
    }
    for (r, k) in &count {
        if *k > 1 || !p.is_dual_root(r) {
            w.push(Witness::Root((*r).clone()));
        }
    }
    for r in p.dual_roots() {
        if !count.contains_key(r) {
            w.push(Witness::Root(r.clone()));
        }
    }
    for g in &c.s_plus {
        w.extend(
            c.heisenberg[g]
                .members()
                .iter()
                .filter(|r| !r.is_positive())
                .map(|r| Witness::Root(r.clone())),
        );
    }
    for g in &c.s_minus {
        w.extend(
            c.heisenberg[g]
                .members()
                .iter()
                .filter(|r| r.is_positive())
                .map(|r| Witness::Root(r.clone())),
        );
    }
    Condition::from_witnesses(w)
}

/// Verifies conditions (i) to (vi), the direct regularity rank and, when h
/// exists, the ad h tables.
pub fn check_conditions(c: &AdaptedCandidate, p: &TruncatedParabolic) -> ConditionReport {
    let s = c.s();
    let restriction_det = restriction_det(p, &s);
    let cond_i = match &restriction_det {
        None => Condition::from_witnesses(vec![Witness::Count {
            expected: p.dim_h(),
            found: s.len(),
        }]),
        Some(d) if d.is_zero() => Condition::from_witnesses(vec![Witness::Determinant(d.clone())]),
        Some(_) => Condition::from_witnesses(Vec::new()),
    };
    let o_plus = c.o_plus();
    let o_minus = c.o_minus();
    let cond_ii = sum_condition(c, &c.s_plus, &o_plus);
    let cond_iii = sum_condition(c, &c.s_minus, &o_minus);
    let cond_iv = partition_condition(p, c);
    let img = image(p, &c.y(p.rank()));
    let mut with_t = img.clone();
    for r in &c.t {
        if let Some(i) = p.dual_index(r) {
            with_t.insert(unit(i));
        }
    }
    let cond_v = Condition::from_witnesses(
        c.t_star
            .iter()
            .filter(|r| p.dual_index(r).is_none_or(|i| !with_t.contains(unit(i))))
            .map(|r| Witness::Root(r.clone()))
            .collect(),
    );
    let ind = p.index_by_orbits();
    let cond_vi = if c.t.len() == ind {
        Condition::from_witnesses(Vec::new())
    } else {
        Condition::from_witnesses(vec![Witness::Count {
            expected: ind,
            found: c.t.len(),
        }])
    };
    let regularity = regularity_of(p, c, &img);
    let h = if cond_i.pass {
        solve_h(c, p).ok()
    } else {
        None
    };
    let spectrum = h.as_ref().map(|h| adh_spectrum(c, p, h));
    ConditionReport {
        conditions: [cond_i, cond_ii, cond_iii, cond_iv, cond_v, cond_vi],
        restriction_det,
        h,
        regularity,
        spectrum,
    }
}

/// Eigenvalue multiplicities of ad h: `m'_λ` on `h_Λ ⊕ g_O ⊕ g_S ⊕ g_{T*}`
/// and `m_{−λ}` on p_Λ, stored by `λ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Spectrum {
    pub entries: BTreeMap<Q, (usize, usize)>,
}

impl Spectrum {
    pub fn m_prime(&self, lambda: &Q) -> usize {
        self.entries.get(lambda).map_or(0, |e| e.0)
    }

    /// Multiplicity of `−λ` on p_Λ, i.e. of `λ` on its dual.
    pub fn m_neg(&self, lambda: &Q) -> usize {
        self.entries.get(lambda).map_or(0, |e| e.1)
    }

    pub fn min(&self) -> Q {
        self.entries.keys().next().cloned().unwrap_or_else(Q::zero)
    }

    pub fn max(&self) -> Q {
        self.entries
            .keys()
            .next_back()
            .cloned()
            .unwrap_or_else(Q::zero)
    }

    /// Values of `λ` where `m'_λ ≤ m_{λ+1}` fails.
    pub fn inequality_failures(&self) -> Vec<Q> {
        self.entries
            .iter()
            .filter(|(l, (mp, _))| *mp > self.m_neg(&(-(*l).clone() - Q::one())))
            .map(|(l, _)| l.clone())
            .collect()
    }

    /// Rows `(λ, m'_λ, m_{−λ})` for integers `λ` in `[lo, hi]`.
    pub fn rows(&self, lo: i64, hi: i64) -> Vec<(i64, usize, usize)> {
        (lo..=hi)
            .map(|l| (l, self.m_prime(&q(l)), self.m_neg(&q(l))))
            .collect()
    }
}

pub fn adh_spectrum(c: &AdaptedCandidate, p: &TruncatedParabolic, h: &[Q]) -> Spectrum {
    let t: BTreeSet<&Root> = c.t.iter().collect();
    let mut entries: BTreeMap<Q, (usize, usize)> = BTreeMap::new();
    entries.insert(Q::zero(), (p.dim_h(), p.dim_h()));
    for r in p.dual_roots() {
        let e = entries.entry(r.pair(h)).or_default();
        e.1 += 1;
        if !t.contains(r) {
            e.0 += 1;
        }
    }
    Spectrum { entries }
}

/// Short human-readable description of a witness.
pub fn describe(w: &Witness) -> String {
    match w {
        Witness::Root(r) => format!("{r}"),
        Witness::Pair(a, b) => format!("({a}, {b})"),
        Witness::Determinant(d) => format!("det = {d}"),
        Witness::Count { expected, found } => format!("expected {expected}, found {found}"),
    }
}

//! Matrix realization of so(2n+1), sp(2n) and so(2n) preserving an
//! antidiagonal form, so that upper triangular matrices form the positive
//! Borel subalgebra.

use alloc::collections::BTreeMap;
use alloc::string::ToString;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::linalg::{q, Q};
use crate::parabolic::TruncatedParabolic;
use crate::rootsys::{CartanElt, Family, Root, RootSystem};
use crate::{Error, Result};

/// Sparse matrix keyed by 0-based `(row, column)`.
pub type Mat = BTreeMap<(usize, usize), Q>;

/// Element of g: coefficients on the root vectors plus a Cartan part.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LieElt {
    pub roots: BTreeMap<Root, Q>,
    pub cartan: CartanElt,
}

impl LieElt {
    pub fn zero(n: usize) -> Self {
        LieElt {
            roots: BTreeMap::new(),
            cartan: vec![Q::zero(); n],
        }
    }

    pub fn root(n: usize, r: Root, c: Q) -> Self {
        let mut e = Self::zero(n);
        if !c.is_zero() {
            e.roots.insert(r, c);
        }
        e
    }

    pub fn cartan(h: CartanElt) -> Self {
        LieElt {
            roots: BTreeMap::new(),
            cartan: h,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.roots.is_empty() && self.cartan.iter().all(Zero::is_zero)
    }

    pub fn add_scaled(&mut self, other: &LieElt, c: &Q) {
        for (r, x) in &other.roots {
            let e = self.roots.entry(r.clone()).or_insert_with(Q::zero);
            *e += c * x;
            if e.is_zero() {
                self.roots.remove(r);
            }
        }
        for (a, b) in self.cartan.iter_mut().zip(&other.cartan) {
            *a += c * b;
        }
    }

    pub fn scale(&self, c: &Q) -> LieElt {
        let mut e = LieElt::zero(self.cartan.len());
        e.add_scaled(self, c);
        e
    }
}

#[derive(Debug, Clone)]
struct RootMatrix {
    entries: Vec<((usize, usize), i64)>,
    canonical: (usize, usize),
}

#[derive(Debug, Clone)]
pub struct Realization {
    n: usize,
    m: usize,
    weights: Vec<Root>,
    vectors: BTreeMap<Root, RootMatrix>,
    position_root: BTreeMap<(usize, usize), Root>,
}

impl Realization {
    pub fn new(rs: &RootSystem) -> Self {
        let n = rs.rank();
        let family = rs.family();
        let m = if family == Family::B {
            2 * n + 1
        } else {
            2 * n
        };
        let weights: Vec<Root> = (0..m)
            .map(|k| {
                if k < n {
                    Root::eps(n, &[(k + 1, 1)])
                } else if k >= m - n {
                    Root::eps(n, &[(m - k, -1)])
                } else {
                    Root::zero(n)
                }
            })
            .collect();
        let sigma = |k: usize| -> i64 {
            if family == Family::C && k >= n {
                -1
            } else {
                1
            }
        };
        let pos_of = |w: &Root| {
            weights
                .iter()
                .position(|x| x == w)
                .expect("weight of the defining representation")
        };
        let mut vectors = BTreeMap::new();
        let mut position_root = BTreeMap::new();
        for a in rs.positive_roots() {
            let lead = a.0.iter().position(|&c| c != 0).unwrap();
            let p = lead;
            let qpos = pos_of(&(&weights[p] - a));
            for (root, (p, qq)) in [(a.clone(), (p, qpos)), (-a, (qpos, p))] {
                let (pp, qp) = (m - 1 - p, m - 1 - qq);
                let mut entries = vec![((p, qq), 1)];
                if p != qp {
                    entries.push(((qp, pp), -sigma(p) * sigma(qq)));
                }
                for (pos, _) in &entries {
                    position_root.insert(*pos, root.clone());
                }
                vectors.insert(
                    root,
                    RootMatrix {
                        entries,
                        canonical: (p, qq),
                    },
                );
            }
        }
        Realization {
            n,
            m,
            weights,
            vectors,
            position_root,
        }
    }

    pub fn size(&self) -> usize {
        self.m
    }

    /// ε-weight of each basis vector of the defining representation.
    pub fn position_weights(&self) -> &[Root] {
        &self.weights
    }

    pub fn root_vector(&self, r: &Root) -> Result<Mat> {
        let rm = self
            .vectors
            .get(r)
            .ok_or_else(|| Error::NotARoot(r.clone()))?;
        Ok(rm.entries.iter().map(|(pos, v)| (*pos, q(*v))).collect())
    }

    pub fn cartan_matrix_of(&self, h: &[Q]) -> Mat {
        let mut out = Mat::new();
        for (k, w) in self.weights.iter().enumerate() {
            let v = w.pair(h);
            if !v.is_zero() {
                out.insert((k, k), v);
            }
        }
        out
    }

    pub fn matrix(&self, x: &LieElt) -> Mat {
        let mut out = self.cartan_matrix_of(&x.cartan);
        for (r, c) in &x.roots {
            for (pos, v) in &self.vectors[r].entries {
                let e = out.entry(*pos).or_insert_with(Q::zero);
                *e += c * q(*v);
                if e.is_zero() {
                    out.remove(pos);
                }
            }
        }
        out
    }

    /// Re-expresses a matrix of g in the root and Cartan basis.
    pub fn decompose(&self, mat: &Mat) -> LieElt {
        let mut e = LieElt::zero(self.n);
        for (&(i, j), v) in mat {
            if i == j {
                if i < self.n {
                    e.cartan[i] = v.clone();
                }
                continue;
            }
            let r = &self.position_root[&(i, j)];
            let rm = &self.vectors[r];
            if rm.canonical == (i, j) {
                e.roots.insert(r.clone(), v.clone());
            }
        }
        debug_assert_eq!(&self.matrix(&e), mat, "matrix outside the Lie algebra");
        e
    }

    pub fn bracket(&self, a: &LieElt, b: &LieElt) -> LieElt {
        let ma = self.matrix(a);
        let mb = self.matrix(b);
        let mut c = mul(&ma, &mb);
        for (pos, v) in mul(&mb, &ma) {
            let e = c.entry(pos).or_insert_with(Q::zero);
            *e -= v;
            if e.is_zero() {
                c.remove(&pos);
            }
        }
        self.decompose(&c)
    }

    /// `tr(ab)` in the defining representation.
    pub fn trace_form(&self, a: &LieElt, b: &LieElt) -> Q {
        let ma = self.matrix(a);
        let mb = self.matrix(b);
        ma.iter()
            .filter_map(|(&(i, j), x)| mb.get(&(j, i)).map(|y| x * y))
            .fold(Q::zero(), |s, t| s + t)
    }
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    let mut rows: BTreeMap<usize, Vec<(usize, &Q)>> = BTreeMap::new();
    for (&(k, j), v) in b {
        rows.entry(k).or_default().push((j, v));
    }
    let mut out = Mat::new();
    for (&(i, k), x) in a {
        if let Some(row) = rows.get(&k) {
            for &(j, y) in row {
                *out.entry((i, j)).or_insert_with(Q::zero) += x * y;
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

/// Coadjoint action of `x ∈ p_Λ` on `y` in the dual model `n ⊕ h_Λ ⊕ n⁻_{π'}`.
pub fn coadjoint(p: &TruncatedParabolic, x: &LieElt, y: &LieElt) -> Result<LieElt> {
    for r in x.roots.keys() {
        if !p.is_algebra_root(r) {
            return Err(Error::Support(r.clone()));
        }
    }
    for r in y.roots.keys() {
        if !p.is_dual_root(r) {
            return Err(Error::Support(r.clone()));
        }
    }
    for h in [&x.cartan, &y.cartan] {
        if &p.project_cartan(h) != h {
            return Err(Error::Unsupported(
                "Cartan part lies outside the truncated Cartan".to_string(),
            ));
        }
    }
    let mut z = p.realization().bracket(x, y);
    z.roots.retain(|r, _| p.is_dual_root(r));
    z.cartan = p.project_cartan(&z.cartan);
    Ok(z)
}

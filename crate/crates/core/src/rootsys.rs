//! Root systems of types B, C and D in ε-coordinates.
//!
//! Simple roots are labelled 1..=n in the Bourbaki order. Weights and Cartan
//! elements are rational vectors `c` with `c[i] = ε_{i+1}`-coefficient, and
//! the pairing between them is the ordinary dot product.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Neg, Sub};

use num_traits::{One, Zero};

use crate::linalg::{dot, inverse, q, Q};
use crate::{Error, Result};

pub type WeightVec = Vec<Q>;
pub type CartanElt = Vec<Q>;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Family {
    B,
    C,
    D,
}

impl Family {
    pub fn min_rank(self) -> usize {
        match self {
            Family::B | Family::C => 2,
            Family::D => 4,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
        })
    }
}

impl core::str::FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "B" | "b" => Ok(Family::B),
            "C" | "c" => Ok(Family::C),
            "D" | "d" => Ok(Family::D),
            _ => Err(Error::Parameter(format!("unknown family {s:?}"))),
        }
    }
}

/// An integer vector in ε-coordinates.
///
/// Nothing here checks that the vector is actually a root; use
/// [`RootSystem::is_root`] for that.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root(pub Vec<i32>);

impl Root {
    pub fn zero(n: usize) -> Self {
        Root(vec![0; n])
    }

    /// Builds `Σ c ε_i` from 1-based `(i, c)` pairs.
    pub fn eps(n: usize, terms: &[(usize, i32)]) -> Self {
        let mut v = vec![0; n];
        for &(i, c) in terms {
            v[i - 1] += c;
        }
        Root(v)
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    /// First nonzero coordinate is positive.
    pub fn is_positive(&self) -> bool {
        self.0.iter().find(|&&c| c != 0).is_some_and(|&c| c > 0)
    }

    pub fn dot(&self, other: &Root) -> i32 {
        self.0.iter().zip(&other.0).map(|(a, b)| a * b).sum()
    }

    pub fn to_q(&self) -> Vec<Q> {
        self.0.iter().map(|&c| q(c as i64)).collect()
    }

    pub fn pair(&self, h: &[Q]) -> Q {
        dot(&self.to_q(), h)
    }

    pub fn coords(&self) -> &[i32] {
        &self.0
    }
}

impl Add for &Root {
    type Output = Root;
    fn add(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &Root {
    type Output = Root;
    fn sub(self, rhs: &Root) -> Root {
        Root(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &Root {
    type Output = Root;
    fn neg(self) -> Root {
        Root(self.0.iter().map(|a| -a).collect())
    }
}

impl Neg for Root {
    type Output = Root;
    fn neg(self) -> Root {
        -&self
    }
}

impl fmt::Display for Root {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs: Vec<Q> = self.to_q();
        f.write_str(&linear_combination(&coeffs, "e"))
    }
}

/// Renders `Σ c_i x_i` as e.g. `-2w4`, `e1+e3`, `w2-1/2w5`.
pub fn linear_combination(coeffs: &[Q], symbol: &str) -> String {
    let mut out = String::new();
    for (i, c) in coeffs.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let neg = *c < Q::zero();
        let a = if neg { -c } else { c.clone() };
        if neg {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if !a.is_one() {
            out.push_str(&format!("{a}"));
        }
        out.push_str(&format!("{symbol}{}", i + 1));
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// A root system of type B, C or D together with its fundamental weights.
#[derive(Debug, Clone)]
pub struct RootSystem {
    family: Family,
    n: usize,
    simple: Vec<Root>,
    positive: Vec<Root>,
    roots: BTreeSet<Root>,
    fundamental: Vec<WeightVec>,
    coweights: Vec<CartanElt>,
}

impl RootSystem {
    pub fn new(family: Family, n: usize) -> Result<Self> {
        if n < family.min_rank() {
            return Err(Error::RankOutOfRange { family, n });
        }
        let mut simple: Vec<Root> = (1..n)
            .map(|i| Root::eps(n, &[(i, 1), (i + 1, -1)]))
            .collect();
        simple.push(match family {
            Family::B => Root::eps(n, &[(n, 1)]),
            Family::C => Root::eps(n, &[(n, 2)]),
            Family::D => Root::eps(n, &[(n - 1, 1), (n, 1)]),
        });
        let mut positive = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                positive.push(Root::eps(n, &[(i, 1), (j, -1)]));
                positive.push(Root::eps(n, &[(i, 1), (j, 1)]));
            }
            match family {
                Family::B => positive.push(Root::eps(n, &[(i, 1)])),
                Family::C => positive.push(Root::eps(n, &[(i, 2)])),
                Family::D => {}
            }
        }
        positive.sort();
        let roots = positive.iter().flat_map(|r| [r.clone(), -r]).collect();
        let mut rs = RootSystem {
            family,
            n,
            simple,
            positive,
            roots,
            fundamental: Vec::new(),
            coweights: Vec::new(),
        };
        let coroot_rows: Vec<Vec<Q>> = rs.simple.iter().map(|a| rs.coroot_unchecked(a)).collect();
        let root_rows: Vec<Vec<Q>> = rs.simple.iter().map(Root::to_q).collect();
        let inv_c = inverse(&coroot_rows).expect("simple coroots are a basis");
        let inv_r = inverse(&root_rows).expect("simple roots are a basis");
        rs.fundamental = (0..n)
            .map(|i| (0..n).map(|k| inv_c[k][i].clone()).collect())
            .collect();
        rs.coweights = (0..n)
            .map(|i| (0..n).map(|k| inv_r[k][i].clone()).collect())
            .collect();
        Ok(rs)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    /// Simple roots α_1..α_n (index 0 holds α_1).
    pub fn simple_roots(&self) -> &[Root] {
        &self.simple
    }

    /// α_i for a 1-based label.
    pub fn alpha(&self, i: usize) -> &Root {
        &self.simple[i - 1]
    }

    pub fn positive_roots(&self) -> &[Root] {
        &self.positive
    }

    pub fn all_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter()
    }

    pub fn is_root(&self, r: &Root) -> bool {
        r.rank() == self.n && self.roots.contains(r)
    }

    /// 1-based label of a simple root.
    pub fn simple_label(&self, r: &Root) -> Option<usize> {
        self.simple.iter().position(|a| a == r).map(|i| i + 1)
    }

    pub fn eps(&self, terms: &[(usize, i32)]) -> Root {
        Root::eps(self.n, terms)
    }

    fn coroot_unchecked(&self, r: &Root) -> CartanElt {
        let norm = r.dot(r);
        r.0.iter()
            .map(|&c| Q::new((2 * c).into(), norm.into()))
            .collect()
    }

    pub fn coroot(&self, r: &Root) -> Result<CartanElt> {
        if !self.is_root(r) {
            return Err(Error::NotARoot(r.clone()));
        }
        Ok(self.coroot_unchecked(r))
    }

    /// α_i^∨ for a 1-based label.
    pub fn simple_coroot(&self, i: usize) -> CartanElt {
        self.coroot_unchecked(&self.simple[i - 1])
    }

    pub fn pairing(&self, w: &[Q], h: &[Q]) -> Result<Q> {
        for len in [w.len(), h.len()] {
            if len != self.n {
                return Err(Error::RankMismatch {
                    expected: self.n,
                    found: len,
                });
            }
        }
        Ok(dot(w, h))
    }

    /// ϖ_i for a 1-based label.
    pub fn fundamental_weight(&self, i: usize) -> &WeightVec {
        &self.fundamental[i - 1]
    }

    /// Coefficients on ϖ_1..ϖ_n.
    pub fn to_fundamental(&self, w: &[Q]) -> Vec<Q> {
        (1..=self.n)
            .map(|j| dot(w, &self.simple_coroot(j)))
            .collect()
    }

    pub fn from_fundamental(&self, c: &[Q]) -> WeightVec {
        let mut w = vec![Q::zero(); self.n];
        for (ci, f) in c.iter().zip(&self.fundamental) {
            for (x, y) in w.iter_mut().zip(f) {
                *x += ci * y;
            }
        }
        w
    }

    /// Coefficients of a weight on the simple roots.
    pub fn simple_coords(&self, w: &[Q]) -> Vec<Q> {
        self.coweights.iter().map(|c| dot(w, c)).collect()
    }

    /// Coefficients of a Cartan element on the simple coroots.
    pub fn coroot_coords(&self, h: &[Q]) -> Vec<Q> {
        self.fundamental.iter().map(|f| dot(f, h)).collect()
    }

    /// `A[i][j] = α_i(α_j^∨)`.
    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        let cor: Vec<CartanElt> = (1..=self.n).map(|j| self.simple_coroot(j)).collect();
        self.simple
            .iter()
            .map(|a| {
                cor.iter()
                    .map(|c| {
                        let v = a.pair(c);
                        debug_assert!(v.is_integer());
                        i64::try_from(v.to_integer()).unwrap()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn height(&self, r: &Root) -> Q {
        self.simple_coords(&r.to_q())
            .into_iter()
            .fold(Q::zero(), |a, b| a + b)
    }

    pub fn weight_string(&self, w: &[Q]) -> String {
        linear_combination(&self.to_fundamental(w), "w")
    }
}

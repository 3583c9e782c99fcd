//! Exact linear algebra over ℚ: sparse incremental echelon forms, dense
//! solves, and fraction-free rank for integer matrices.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Q = BigRational;

pub type SparseVec = BTreeMap<usize, Q>;

pub fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

pub fn frac(p: i64, d: i64) -> Q {
    Q::new(BigInt::from(p), BigInt::from(d))
}

/// Row echelon form built one vector at a time.
///
/// Each stored row is scaled so that its pivot (its smallest column) is one.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` against every stored row; the result is zero iff `v` lies
    /// in the span.
    pub fn reduce(&self, mut v: SparseVec) -> SparseVec {
        v.retain(|_, x| !x.is_zero());
        let mut from = 0usize;
        loop {
            let next = v
                .range(from..)
                .map(|(c, _)| *c)
                .find(|c| self.rows.contains_key(c));
            let Some(col) = next else { break };
            let factor = v[&col].clone();
            for (c, x) in &self.rows[&col] {
                let entry = v.entry(*c).or_insert_with(Q::zero);
                *entry -= &factor * x;
                if entry.is_zero() {
                    v.remove(c);
                }
            }
            from = col + 1;
        }
        v
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts `v`, returning whether the rank grew.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let r = self.reduce(v);
        let Some((&pivot, lead)) = r.iter().next() else {
            return false;
        };
        let inv = lead.recip();
        let row = r.into_iter().map(|(c, x)| (c, x * &inv)).collect();
        self.rows.insert(pivot, row);
        true
    }
}

pub fn sparse_rank<I: IntoIterator<Item = SparseVec>>(rows: I) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Determinant of a square matrix by Gaussian elimination.
pub fn det(m: &[Vec<Q>]) -> Q {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m.to_vec();
    let mut d = Q::one();
    for col in 0..n {
        let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Q::zero();
        };
        if p != col {
            a.swap(p, col);
            d = -d;
        }
        let piv = a[col][col].clone();
        d *= &piv;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let f = &a[r][col] / &piv;
            for c in col..n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    d
}

/// Solves `m x = b` for square nonsingular `m`; `None` when singular.
pub fn solve(m: &[Vec<Q>], b: &[Q]) -> Option<Vec<Q>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(p, col);
        let inv = a[col][col].recip();
        for c in col..=n {
            a[col][c] = &a[col][c] * &inv;
        }
        for r in 0..n {
            if r == col || a[r][col].is_zero() {
                continue;
            }
            let f = a[r][col].clone();
            for c in col..=n {
                let t = &f * &a[col][c];
                a[r][c] -= t;
            }
        }
    }
    Some(a.into_iter().map(|mut r| r.pop().unwrap()).collect())
}

pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut cols = Vec::with_capacity(n);
    for k in 0..n {
        let e: Vec<Q> = (0..n)
            .map(|i| if i == k { Q::one() } else { Q::zero() })
            .collect();
        cols.push(solve(m, &e)?);
    }
    Some(
        (0..n)
            .map(|i| (0..n).map(|j| cols[j][i].clone()).collect())
            .collect(),
    )
}

pub fn transpose(m: &[Vec<Q>]) -> Vec<Vec<Q>> {
    if m.is_empty() {
        return Vec::new();
    }
    (0..m[0].len())
        .map(|j| m.iter().map(|r| r[j].clone()).collect())
        .collect()
}

pub fn dense_rank(m: &[Vec<Q>]) -> usize {
    sparse_rank(m.iter().map(|r| {
        r.iter()
            .enumerate()
            .filter(|(_, x)| !x.is_zero())
            .map(|(i, x)| (i, x.clone()))
            .collect()
    }))
}

/// Rank of an integer matrix by Bareiss fraction-free elimination.
pub fn bareiss_rank(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    if rows == 0 {
        return 0;
    }
    let cols = a[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, rank);
        let (top, rest) = a.split_at_mut(rank + 1);
        let pivot_row = &top[rank];
        let piv = &pivot_row[col];
        for row in rest.iter_mut() {
            let f = row[col].clone();
            for c in col + 1..cols {
                let v = piv * &row[c] - &f * &pivot_row[c];
                row[c] = v / &prev;
            }
            row[col] = BigInt::zero();
        }
        prev = piv.clone();
        rank += 1;
    }
    rank
}

pub fn dot(a: &[Q], b: &[Q]) -> Q {
    a.iter().zip(b).fold(Q::zero(), |acc, (x, y)| acc + x * y)
}

pub fn is_integer_vec(v: &[Q]) -> bool {
    v.iter().all(|x| x.is_integer())
}

pub fn abs_sum(v: &[Q]) -> Q {
    v.iter().fold(Q::zero(), |acc, x| acc + x.abs())
}

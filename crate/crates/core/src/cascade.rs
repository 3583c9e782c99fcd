//! Kostant cascades, largest Heisenberg sets and an exhaustive check of their
//! basic combinatorics.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::rootsys::{Root, RootSystem};
use crate::{Error, Result};

/// A root set with a centre in which every other member has exactly one
/// partner summing to the centre.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeisenbergSet {
    centre: Root,
    members: Vec<Root>,
}

impl HeisenbergSet {
    pub fn new(centre: Root, members: impl IntoIterator<Item = Root>) -> Result<Self> {
        let mut members: Vec<Root> = members.into_iter().collect();
        members.sort();
        members.dedup();
        if members.binary_search(&centre).is_err() {
            return Err(Error::Heisenberg {
                offender: centre.clone(),
                centre,
            });
        }
        for a in &members {
            if *a == centre {
                continue;
            }
            let partners = members
                .iter()
                .filter(|b| **b != centre && (a + *b) == centre)
                .count();
            if partners != 1 {
                return Err(Error::Heisenberg {
                    centre,
                    offender: a.clone(),
                });
            }
        }
        Ok(HeisenbergSet { centre, members })
    }

    pub fn singleton(centre: Root) -> Self {
        HeisenbergSet {
            members: vec![centre.clone()],
            centre,
        }
    }

    pub fn centre(&self) -> &Root {
        &self.centre
    }

    /// Members in sorted order.
    pub fn members(&self) -> &[Root] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, r: &Root) -> bool {
        self.members.binary_search(r).is_ok()
    }

    pub fn negated(&self) -> Self {
        let mut members: Vec<Root> = self.members.iter().map(|r| -r).collect();
        members.sort();
        HeisenbergSet {
            centre: -&self.centre,
            members,
        }
    }

    /// Members other than the centre.
    pub fn without_centre(&self) -> Vec<Root> {
        self.members
            .iter()
            .filter(|r| **r != self.centre)
            .cloned()
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CascadeNode {
    pub root: Root,
    /// Position in the cascade tree; `K ≤ L` iff `K` is a prefix of `L`.
    pub path: Vec<usize>,
    pub parent: Option<usize>,
    /// Positive roots of the irreducible subsystem whose highest root this is.
    pub subsystem: Vec<Root>,
    /// `{α ∈ subsystem : (α, β) > 0}`.
    pub heisenberg: HeisenbergSet,
}

impl CascadeNode {
    pub fn label(&self) -> String {
        let parts: Vec<String> = self.path.iter().map(|p| format!("{p}")).collect();
        parts.join(".")
    }

    pub fn precedes(&self, other: &CascadeNode) -> bool {
        other.path.starts_with(&self.path)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Cascade {
    pub nodes: Vec<CascadeNode>,
}

/// Splits a set of roots by the non-orthogonality graph.
pub fn orthogonal_components(roots: &[Root]) -> Vec<Vec<Root>> {
    let mut seen = vec![false; roots.len()];
    let mut out = Vec::new();
    for start in 0..roots.len() {
        if seen[start] {
            continue;
        }
        seen[start] = true;
        let mut stack = vec![start];
        let mut comp = Vec::new();
        while let Some(i) = stack.pop() {
            comp.push(roots[i].clone());
            for j in 0..roots.len() {
                if !seen[j] && roots[i].dot(&roots[j]) != 0 {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

fn highest_root(comp: &[Root]) -> Root {
    let set: BTreeSet<&Root> = comp.iter().collect();
    comp.iter()
        .find(|b| comp.iter().all(|a| !set.contains(&(*b + a))))
        .expect("a nonempty positive system has a highest root")
        .clone()
}

/// Kostant cascade of a (possibly reducible) positive system.
pub fn kostant_cascade(positive: &[Root]) -> Cascade {
    let mut cascade = Cascade::default();
    let mut comps = orthogonal_components(positive);
    comps.sort_by_key(|c| core::cmp::Reverse(highest_root(c)));
    for (k, comp) in comps.into_iter().enumerate() {
        peel(&mut cascade, comp, vec![k + 1], None);
    }
    cascade
}

fn peel(cascade: &mut Cascade, comp: Vec<Root>, path: Vec<usize>, parent: Option<usize>) {
    let beta = highest_root(&comp);
    let h: Vec<Root> = comp.iter().filter(|a| a.dot(&beta) > 0).cloned().collect();
    let heisenberg = HeisenbergSet::new(beta.clone(), h).expect("largest Heisenberg set");
    let rest: Vec<Root> = comp.iter().filter(|a| a.dot(&beta) == 0).cloned().collect();
    let idx = cascade.nodes.len();
    cascade.nodes.push(CascadeNode {
        root: beta,
        path: path.clone(),
        parent,
        subsystem: comp,
        heisenberg,
    });
    let mut comps = orthogonal_components(&rest);
    comps.sort_by_key(|c| core::cmp::Reverse(highest_root(c)));
    for (k, c) in comps.into_iter().enumerate() {
        let mut p = path.clone();
        p.push(k + 1);
        peel(cascade, c, p, Some(idx));
    }
}

impl Cascade {
    pub fn roots(&self) -> Vec<Root> {
        self.nodes.iter().map(|n| n.root.clone()).collect()
    }

    pub fn node(&self, beta: &Root) -> Option<&CascadeNode> {
        self.nodes.iter().find(|n| &n.root == beta)
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Which node's Heisenberg set contains `r`.
    pub fn owner(&self, r: &Root) -> Option<usize> {
        self.nodes.iter().position(|n| n.heisenberg.contains(r))
    }
}

/// `H_β` for a cascade root `β` of `cascade`.
pub fn largest_heisenberg(cascade: &Cascade, beta: &Root) -> Result<HeisenbergSet> {
    cascade
        .node(beta)
        .map(|n| n.heisenberg.clone())
        .ok_or_else(|| Error::Parameter(format!("{beta} is not a cascade root")))
}

/// Outcome of the exhaustive check of the four cascade clauses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    /// Clause verdicts: disjoint cover, sums onto a cascade root, sums across
    /// sets, sums inside a set.
    pub clauses: [bool; 4],
    pub failures: Vec<String>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.clauses.iter().all(|&c| c)
    }
}

pub fn cascade_lemma_check(rs: &RootSystem) -> LemmaReport {
    let pos = rs.positive_roots();
    let cascade = kostant_cascade(pos);
    let mut clauses = [true; 4];
    let mut failures = Vec::new();
    let total: usize = cascade.nodes.iter().map(|n| n.heisenberg.len()).sum();
    let owners: Vec<Option<usize>> = pos.iter().map(|r| cascade.owner(r)).collect();
    if total != pos.len() || owners.iter().any(Option::is_none) {
        clauses[0] = false;
        failures.push(format!(
            "heisenberg sets cover {total} roots of {}",
            pos.len()
        ));
    }
    for (a, ga) in pos.iter().zip(&owners) {
        for (b, gb) in pos.iter().zip(&owners) {
            let sum = a + b;
            if !rs.is_root(&sum) {
                continue;
            }
            if let Some(k) = cascade.nodes.iter().position(|n| n.root == sum) {
                let h = &cascade.nodes[k].heisenberg;
                if !(h.contains(a) && h.contains(b) && *a != sum && *b != sum) {
                    clauses[1] = false;
                    failures.push(format!("{a} + {b} lands on a cascade root outside its set"));
                }
            }
            if let (Some(k), Some(l), Some(m)) = (*ga, *gb, cascade.owner(&sum)) {
                let (nk, nl) = (&cascade.nodes[k], &cascade.nodes[l]);
                let ok = (nk.precedes(nl) && m == k) || (nl.precedes(nk) && m == l);
                if !ok {
                    clauses[2] = false;
                    failures.push(format!("{a} + {b} breaks the order rule"));
                }
                if k == l && sum != nk.root {
                    clauses[3] = false;
                    failures.push(format!("{a} + {b} inside one set misses its centre"));
                }
            }
        }
    }
    LemmaReport { clauses, failures }
}

//! Weyl modules, Δ-filtrations and quasi-hereditary orderings.
//!
//! Two independent deciders for "is this total ordering a q-ordering":
//! [`is_q_ordering_oracle`] builds every Weyl module and checks the definition
//! directly, while [`is_q_ordering_criterion`] only looks at where the maximum of each
//! hood sits.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::fmt;

use serde::Serialize;

use crate::algebra::{step, Generator, NakayamaAlgebra, Uniserial, Vertex};
use crate::error::{Error, Result};
use crate::homology::is_schurian;

/// A total order on the simples. Higher rank is larger.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TotalOrdering {
    // rank[v - 1] in 1..=n
    rank: Vec<usize>,
}

impl TotalOrdering {
    /// From a list of vertices, largest first: `[1, 3, 2]` is `1 ⪰ 3 ⪰ 2`.
    pub fn from_descending(order: &[Vertex]) -> Result<Self> {
        let n = order.len();
        let mut rank = vec![0; n];
        for (pos, &v) in order.iter().enumerate() {
            if v == 0 || v > n {
                return Err(Error::NotAPermutation { n, detail: format!("vertex {v} out of range") });
            }
            if rank[v - 1] != 0 {
                return Err(Error::NotAPermutation { n, detail: format!("vertex {v} repeated") });
            }
            rank[v - 1] = n - pos;
        }
        Ok(TotalOrdering { rank })
    }

    pub fn from_ranks(rank: Vec<usize>) -> Result<Self> {
        let n = rank.len();
        let mut seen = vec![false; n];
        for &r in &rank {
            if r == 0 || r > n || std::mem::replace(&mut seen[r - 1], true) {
                return Err(Error::NotAPermutation { n, detail: format!("bad rank list {rank:?}") });
            }
        }
        Ok(TotalOrdering { rank })
    }

    pub fn n(&self) -> usize {
        self.rank.len()
    }

    pub fn rank(&self, v: Vertex) -> usize {
        self.rank[v - 1]
    }

    pub fn ranks(&self) -> &[usize] {
        &self.rank
    }

    pub fn descending(&self) -> Vec<Vertex> {
        let n = self.n();
        let mut out = vec![0; n];
        for (i, &r) in self.rank.iter().enumerate() {
            out[n - r] = i + 1;
        }
        out
    }

    pub fn maximum(&self) -> Vertex {
        self.rank.iter().position(|&r| r == self.n()).unwrap() + 1
    }

    pub fn precedes_or_eq(&self, a: Vertex, b: Vertex) -> bool {
        self.rank(a) <= self.rank(b)
    }
}

impl fmt::Display for TotalOrdering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.descending().iter().map(|v| v.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

/// All `n!` orderings, as descending lists in lexicographic order.
pub fn all_orderings(n: usize) -> impl Iterator<Item = TotalOrdering> {
    let mut next: Option<Vec<Vertex>> = Some((1..=n).collect());
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut perm = current.clone();
        if next_permutation(&mut perm) {
            next = Some(perm);
        }
        Some(TotalOrdering::from_descending(&current).expect("permutation"))
    })
}

/// The `(n-1)!` orderings with maximum `x`, lexicographic in their descending lists.
pub fn orderings_with_maximum(n: usize, x: Vertex) -> impl Iterator<Item = TotalOrdering> {
    let rest: Vec<Vertex> = (1..=n).filter(|&v| v != x).collect();
    let mut next = Some(rest);
    std::iter::from_fn(move || {
        let current = next.take()?;
        let mut perm = current.clone();
        if next_permutation(&mut perm) {
            next = Some(perm);
        }
        let mut desc = Vec::with_capacity(n);
        desc.push(x);
        desc.extend(current);
        Some(TotalOrdering::from_descending(&desc).expect("permutation"))
    })
}

fn next_permutation(a: &mut [Vertex]) -> bool {
    let Some(i) = (1..a.len()).rev().find(|&i| a[i - 1] < a[i]) else {
        return false;
    };
    let j = (i..a.len()).rev().find(|&j| a[i - 1] < a[j]).unwrap();
    a.swap(i - 1, j);
    a[i..].reverse();
    true
}

/// The ordered multiset of vertices along a relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hood {
    pub generator: Generator,
    pub positions: Vec<Vertex>,
    /// Vertex -> positions `1..=len-2` at which it occurs.
    pub interior_occurrences: BTreeMap<Vertex, BTreeSet<usize>>,
}

impl Hood {
    pub fn vertices(&self) -> BTreeSet<Vertex> {
        self.positions.iter().copied().collect()
    }

    pub fn interior_vertices(&self) -> BTreeSet<Vertex> {
        self.interior_occurrences.keys().copied().collect()
    }

    pub fn is_interior(&self, v: Vertex) -> bool {
        self.interior_occurrences.contains_key(&v)
    }

    pub fn hook(&self) -> Vertex {
        self.positions[0]
    }

    pub fn denouement(&self) -> Vertex {
        *self.positions.last().unwrap()
    }

    /// Largest vertex of the hood under `ord`.
    pub fn maximum(&self, ord: &TotalOrdering) -> Vertex {
        *self.positions.iter().max_by_key(|&&v| ord.rank(v)).unwrap()
    }
}

pub fn hood(a: &NakayamaAlgebra, g: &Generator) -> Hood {
    let positions = g.window(a.n());
    let mut interior_occurrences: BTreeMap<Vertex, BTreeSet<usize>> = BTreeMap::new();
    for (pos, &v) in positions.iter().enumerate().take(positions.len() - 1).skip(1) {
        interior_occurrences.entry(v).or_default().insert(pos);
    }
    Hood { generator: *g, positions, interior_occurrences }
}

pub fn hoods(a: &NakayamaAlgebra) -> Vec<Hood> {
    a.generators().iter().map(|g| hood(a, g)).collect()
}

/// The Q-set `X` (vertices interior to no relation) split by how its members meet hoods.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct QSetPartition {
    pub x: BTreeSet<Vertex>,
    /// In no hood.
    pub x0: BTreeSet<Vertex>,
    /// Hook or denouement, not both.
    pub x1: BTreeSet<Vertex>,
    /// Both a hook and a denouement.
    pub x2: BTreeSet<Vertex>,
    pub hook_gen: BTreeMap<Vertex, Generator>,
    pub den_gen: BTreeMap<Vertex, Generator>,
}

pub fn q_set_partition(a: &NakayamaAlgebra) -> QSetPartition {
    let n = a.n();
    let hoods = hoods(a);
    let interior: BTreeSet<Vertex> = hoods.iter().flat_map(|h| h.interior_vertices()).collect();
    let in_hood: BTreeSet<Vertex> = hoods.iter().flat_map(|h| h.vertices()).collect();
    let hook_gen: BTreeMap<Vertex, Generator> = a.generators().iter().map(|g| (g.hook, *g)).collect();
    let den_gen: BTreeMap<Vertex, Generator> =
        a.generators().iter().map(|g| (g.denouement(n), *g)).collect();

    let x: BTreeSet<Vertex> = a.vertices().filter(|v| !interior.contains(v)).collect();
    let mut part = QSetPartition {
        x: x.clone(),
        x0: BTreeSet::new(),
        x1: BTreeSet::new(),
        x2: BTreeSet::new(),
        hook_gen,
        den_gen,
    };
    for v in x {
        let roles = part.hook_gen.contains_key(&v) as u8 + part.den_gen.contains_key(&v) as u8;
        match roles {
            0 => {
                debug_assert!(!in_hood.contains(&v));
                part.x0.insert(v);
            }
            1 => {
                part.x1.insert(v);
            }
            _ => {
                part.x2.insert(v);
            }
        }
    }
    part
}

/// Lengths of the Weyl modules `Δ(1), ..., Δ(n)` under one ordering.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct WeylFamily {
    pub lengths: Vec<usize>,
}

impl WeylFamily {
    pub fn delta(&self, v: Vertex) -> Uniserial {
        Uniserial::new(v, self.lengths[v - 1])
    }
}

/// `Δ(λ)`: the largest quotient of `P(λ)` with every composition factor `⪯ λ`.
pub fn weyl_module(a: &NakayamaAlgebra, lambda: Vertex, ord: &TotalOrdering) -> Uniserial {
    let n = a.n();
    let top_rank = ord.rank(lambda);
    let cap = a.projective_len(lambda);
    let len = (1..cap)
        .find(|&j| ord.rank(step(lambda, j, n)) > top_rank)
        .unwrap_or(cap);
    Uniserial::new(lambda, len)
}

pub fn weyl_family(a: &NakayamaAlgebra, ord: &TotalOrdering) -> WeylFamily {
    WeylFamily { lengths: a.vertices().map(|v| weyl_module(a, v, ord).len).collect() }
}

/// Whether `m` has a Δ-filtration. Any Δ-quotient of `(t;l)` must be `Δ(t)`, so peeling
/// Weyl modules off the top is forced.
pub fn is_good(a: &NakayamaAlgebra, m: Uniserial, family: &WeylFamily) -> bool {
    let n = a.n();
    let mut current = m;
    while !current.is_zero() {
        let d = family.lengths[current.top - 1];
        if d > current.len {
            return false;
        }
        current = Uniserial::new(step(current.top, d, n), current.len - d);
    }
    true
}

/// Outcome of checking the definition of a q-ordering directly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum OracleVerdict {
    QOrdering,
    /// `End Δ(λ) ≠ K`.
    DeltaNotSchurian(Vertex),
    /// `P(j)` has no Δ-filtration.
    ProjectiveNotGood(Vertex),
}

impl OracleVerdict {
    pub fn is_q_ordering(self) -> bool {
        self == OracleVerdict::QOrdering
    }
}

impl fmt::Display for OracleVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OracleVerdict::QOrdering => f.write_str("q-ordering"),
            OracleVerdict::DeltaNotSchurian(l) => write!(f, "delta {l} not schurian"),
            OracleVerdict::ProjectiveNotGood(j) => write!(f, "P({j}) not good"),
        }
    }
}

pub fn oracle_verdict(a: &NakayamaAlgebra, ord: &TotalOrdering) -> OracleVerdict {
    let family = weyl_family(a, ord);
    for v in a.vertices() {
        if !is_schurian(a, family.delta(v)).expect("Weyl modules are nonzero") {
            return OracleVerdict::DeltaNotSchurian(v);
        }
    }
    for v in a.vertices() {
        if !is_good(a, a.projective(v), &family) {
            return OracleVerdict::ProjectiveNotGood(v);
        }
    }
    OracleVerdict::QOrdering
}

/// Every Weyl module is Schurian and every indecomposable projective is Δ-filtered.
pub fn is_q_ordering_oracle(a: &NakayamaAlgebra, ord: &TotalOrdering) -> bool {
    oracle_verdict(a, ord).is_q_ordering()
}

/// The maximum of every hood must not occur at an interior position of that hood.
pub fn is_q_ordering_criterion(a: &NakayamaAlgebra, ord: &TotalOrdering) -> bool {
    let n = a.n();
    a.generators().iter().all(|g| {
        let mut best = g.hook;
        for i in 1..g.length {
            let v = step(g.hook, i, n);
            if ord.rank(v) > ord.rank(best) {
                best = v;
            }
        }
        // interior positions are 1..=len-2
        (1..g.length - 1).all(|i| step(g.hook, i, n) != best)
    })
}

pub fn is_quasi_hereditary(a: &NakayamaAlgebra) -> bool {
    !q_set_partition(a).x.is_empty()
}

/// `x+1 ⪯ x+2 ⪯ ... ⪯ x-1 ⪯ x`, which is a q-ordering for every `x` in the Q-set.
pub fn canonical_q_ordering(a: &NakayamaAlgebra, x: Vertex) -> Result<TotalOrdering> {
    if x == 0 || x > a.n() || !q_set_partition(a).x.contains(&x) {
        return Err(Error::NotInQSet(x));
    }
    let n = a.n();
    let mut rank = vec![0; n];
    for i in 1..=n {
        rank[step(x, i, n) - 1] = i;
    }
    TotalOrdering::from_ranks(rank)
}

fn properly_internal(paths: &[Vec<Vertex>], v: Vertex) -> bool {
    paths.iter().any(|p| p[1..p.len() - 1].contains(&v))
}

fn delete_vertex(paths: &[Vec<Vertex>], v: Vertex) -> Vec<Vec<Vertex>> {
    paths
        .iter()
        .flat_map(|p| p.split(|&w| w == v))
        .filter(|piece| piece.len() >= 3)
        .map(<[Vertex]>::to_vec)
        .collect()
}

/// Searches for an order `v_1, ..., v_n` in which each `v_i` is not properly internal to
/// the relation paths left after deleting `v_1, ..., v_{i-1}`. Deleting a vertex splits
/// a path into its maximal surviving pieces; pieces with fewer than 3 vertices are
/// dropped.
pub fn gs_ordering(a: &NakayamaAlgebra) -> Option<Vec<Vertex>> {
    let n = a.n();
    let paths: Vec<Vec<Vertex>> = a.generators().iter().map(|g| g.window(n)).collect();
    let mut dead_ends: HashSet<u64> = HashSet::new();
    let mut order = Vec::with_capacity(n);

    fn search(
        paths: &[Vec<Vertex>],
        n: usize,
        deleted: u64,
        order: &mut Vec<Vertex>,
        dead_ends: &mut HashSet<u64>,
    ) -> bool {
        if order.len() == n {
            return true;
        }
        if dead_ends.contains(&deleted) {
            return false;
        }
        for v in 1..=n {
            if deleted & (1 << v) != 0 || properly_internal(paths, v) {
                continue;
            }
            order.push(v);
            if search(&delete_vertex(paths, v), n, deleted | (1 << v), order, dead_ends) {
                return true;
            }
            order.pop();
        }
        dead_ends.insert(deleted);
        false
    }

    assert!(n < 64);
    search(&paths, n, 0, &mut order, &mut dead_ends).then_some(order)
}

pub fn gs_ordering_exists(a: &NakayamaAlgebra) -> bool {
    gs_ordering(a).is_some()
}

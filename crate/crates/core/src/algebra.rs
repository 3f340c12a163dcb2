//! Nakayama algebras `KQ_n/I` with monomial relations, and uniserial modules over them.
//!
//! Vertices are numbered `1..=n`. A relation is a path given by its starting vertex
//! (the hook) and its length counted in vertices, so a relation of length 3 is a
//! composite of two arrows. For the cyclic quiver a relation may wind around the
//! cycle, possibly more than once.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Representative of `v` modulo `n` in `1..=n`.
pub fn wrap(v: i64, n: usize) -> Vertex {
    debug_assert!(n >= 2);
    let n = n as i64;
    ((v - 1).rem_euclid(n) + 1) as Vertex
}

/// `wrap` for vertex arithmetic that never goes negative.
#[inline]
pub(crate) fn step(v: Vertex, offset: usize, n: usize) -> Vertex {
    (v - 1 + offset) % n + 1
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum QuiverKind {
    Linear,
    Cyclic,
}

impl fmt::Display for QuiverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverKind::Linear => f.write_str("linear"),
            QuiverKind::Cyclic => f.write_str("cyclic"),
        }
    }
}

/// Linearly oriented `A_n` or the oriented cycle with `n` vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct QuiverSpec {
    pub kind: QuiverKind,
    pub n: usize,
}

impl QuiverSpec {
    pub fn new(kind: QuiverKind, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::QuiverTooSmall(n));
        }
        Ok(QuiverSpec { kind, n })
    }

    pub fn linear(n: usize) -> Result<Self> {
        Self::new(QuiverKind::Linear, n)
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(QuiverKind::Cyclic, n)
    }

    pub fn is_cyclic(&self) -> bool {
        self.kind == QuiverKind::Cyclic
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n
    }
}

/// A monomial relation: the path with `length` vertices starting at `hook`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Generator {
    pub hook: Vertex,
    pub length: usize,
}

impl Generator {
    pub fn new(hook: Vertex, length: usize) -> Self {
        Generator { hook, length }
    }

    /// End vertex of the path.
    pub fn denouement(&self, n: usize) -> Vertex {
        step(self.hook, self.length - 1, n)
    }

    /// The vertices the path visits, in order, with repetitions if it winds.
    pub fn window(&self, n: usize) -> Vec<Vertex> {
        (0..self.length).map(|i| step(self.hook, i, n)).collect()
    }

    /// Whether `inner` occurs as a contiguous subpath of `self`.
    pub fn contains(&self, inner: &Generator, quiver: QuiverSpec) -> bool {
        if inner.length > self.length {
            return false;
        }
        match quiver.kind {
            QuiverKind::Linear => {
                inner.hook >= self.hook && inner.hook + inner.length <= self.hook + self.length
            }
            QuiverKind::Cyclic => (0..=self.length - inner.length)
                .any(|offset| step(self.hook, offset, quiver.n) == inner.hook),
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.hook, self.length)
    }
}

/// Dimensions of the indecomposable projectives `P(1), ..., P(n)`.
///
/// `P(j)` is the longest path from `j` containing no relation as a subpath. The
/// generators must already be range-checked; a cyclic quiver needs at least one.
pub fn kupisch_series(quiver: QuiverSpec, generators: &[Generator]) -> Vec<usize> {
    let n = quiver.n;
    quiver
        .vertices()
        .map(|j| {
            let first_relation = generators
                .iter()
                .filter_map(|g| match quiver.kind {
                    QuiverKind::Linear => (g.hook >= j).then(|| g.hook - j + g.length - 1),
                    QuiverKind::Cyclic => Some((g.hook + n - j) % n + g.length - 1),
                })
                .min();
            match (quiver.kind, first_relation) {
                (QuiverKind::Linear, Some(m)) => m.min(n - j + 1),
                (QuiverKind::Linear, None) => n - j + 1,
                (QuiverKind::Cyclic, Some(m)) => m,
                (QuiverKind::Cyclic, None) => {
                    panic!("cyclic quiver without relations has infinite-dimensional projectives")
                }
            }
        })
        .collect()
}

/// A validated basic Nakayama algebra `KQ_n/I` with a minimal set of monomial relations.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NakayamaAlgebra {
    quiver: QuiverSpec,
    generators: Vec<Generator>,
    kupisch: Vec<usize>,
}

impl NakayamaAlgebra {
    /// Validates the relations and computes the Kupisch series.
    pub fn new(quiver: QuiverSpec, generators: Vec<Generator>) -> Result<Self> {
        validate_algebra(quiver, generators)
    }

    pub fn hereditary(n: usize) -> Result<Self> {
        Self::new(QuiverSpec::linear(n)?, Vec::new())
    }

    pub fn quiver(&self) -> QuiverSpec {
        self.quiver
    }

    pub fn n(&self) -> usize {
        self.quiver.n
    }

    pub fn kind(&self) -> QuiverKind {
        self.quiver.kind
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn kupisch(&self) -> &[usize] {
        &self.kupisch
    }

    /// `dim P(j)`.
    pub fn projective_len(&self, j: Vertex) -> usize {
        self.kupisch[j - 1]
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        1..=self.n()
    }

    /// Linear quiver with no relations.
    pub fn is_hereditary(&self) -> bool {
        self.kind() == QuiverKind::Linear && self.generators.is_empty()
    }

    pub fn wrap(&self, v: i64) -> Vertex {
        wrap(v, self.n())
    }

    pub fn denouement(&self, g: &Generator) -> Vertex {
        g.denouement(self.n())
    }

    pub fn generator_with_hook(&self, v: Vertex) -> Option<&Generator> {
        self.generators.iter().find(|g| g.hook == v)
    }

    pub fn generator_with_denouement(&self, v: Vertex) -> Option<&Generator> {
        self.generators.iter().find(|g| g.denouement(self.n()) == v)
    }

    pub fn projective(&self, j: Vertex) -> Uniserial {
        Uniserial::new(j, self.projective_len(j))
    }

    pub fn simple(&self, j: Vertex) -> Uniserial {
        Uniserial::new(j, 1)
    }

    /// Whether `m` is a module over this algebra, i.e. a quotient of `P(m.top)`.
    pub fn is_valid_module(&self, m: Uniserial) -> bool {
        (1..=self.n()).contains(&m.top) && m.len <= self.projective_len(m.top)
    }

    pub fn is_projective(&self, m: Uniserial) -> bool {
        m.len > 0 && m.len == self.projective_len(m.top)
    }

    /// `rad(t;l) = (t+1; l-1)`.
    pub fn radical(&self, m: Uniserial) -> Result<Uniserial> {
        if m.is_zero() {
            return Err(Error::ZeroModule);
        }
        self.check_module(m)?;
        Ok(Uniserial::new(step(m.top, 1, self.n()), m.len - 1))
    }

    /// Algebra with one more relation; relations that become redundant are dropped.
    ///
    /// Fails if `g` is already zero in this algebra.
    pub fn with_generator(&self, g: Generator) -> Result<NakayamaAlgebra> {
        if g.hook == 0 || g.hook > self.n() {
            return Err(Error::VertexOutOfRange { vertex: g.hook, n: self.n() });
        }
        if g.length > self.projective_len(g.hook) {
            return Err(Error::GeneratorInIdeal { hook: g.hook, length: g.length });
        }
        let mut generators: Vec<Generator> = self
            .generators
            .iter()
            .copied()
            .filter(|old| !old.contains(&g, self.quiver))
            .collect();
        generators.push(g);
        NakayamaAlgebra::new(self.quiver, generators)
    }

    /// Algebra with the given relations removed. A cyclic quiver left without relations
    /// has no finite-dimensional algebra, so `None` is returned.
    pub fn without_generators(&self, removed: &[Generator]) -> Option<NakayamaAlgebra> {
        let generators: Vec<Generator> = self
            .generators
            .iter()
            .copied()
            .filter(|g| !removed.contains(g))
            .collect();
        if self.quiver.is_cyclic() && generators.is_empty() {
            return None;
        }
        Some(NakayamaAlgebra::new(self.quiver, generators).expect("subsets of minimal sets are minimal"))
    }

    pub(crate) fn check_module(&self, m: Uniserial) -> Result<()> {
        if self.is_valid_module(m) {
            Ok(())
        } else {
            Err(Error::InvalidModule { top: m.top, len: m.len })
        }
    }
}

impl fmt::Display for NakayamaAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} n={} [", self.kind(), self.n())?;
        for (i, g) in self.generators.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("]")
    }
}

/// Validates `generators` over `quiver` and returns the algebra with its generators
/// sorted by hook.
pub fn validate_algebra(quiver: QuiverSpec, mut generators: Vec<Generator>) -> Result<NakayamaAlgebra> {
    let n = quiver.n;
    if n < 2 {
        return Err(Error::QuiverTooSmall(n));
    }
    for g in &generators {
        if g.hook == 0 || g.hook > n {
            return Err(Error::VertexOutOfRange { vertex: g.hook, n });
        }
        if g.length < 3 {
            return Err(Error::LengthTooShort { hook: g.hook, length: g.length });
        }
        if quiver.kind == QuiverKind::Linear && g.hook + g.length - 1 > n {
            return Err(Error::GeneratorOutOfRange { hook: g.hook, length: g.length, n });
        }
    }
    for (i, outer) in generators.iter().enumerate() {
        for (j, inner) in generators.iter().enumerate() {
            if i != j && outer.contains(inner, quiver) {
                return Err(Error::NonMinimalIdeal {
                    outer: outer.to_string(),
                    inner: inner.to_string(),
                });
            }
        }
    }
    if quiver.is_cyclic() && generators.is_empty() {
        return Err(Error::EmptyCyclicIdeal);
    }
    generators.sort();
    let kupisch = kupisch_series(quiver, &generators);
    Ok(NakayamaAlgebra { quiver, generators, kupisch })
}

/// The indecomposable module `(t;l)`: top `t`, composition length `l`, composition
/// factors `t, t+1, ..., t+l-1` read modulo `n`. Length 0 is the zero module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Uniserial {
    pub top: Vertex,
    pub len: usize,
}

impl Uniserial {
    pub fn new(top: Vertex, len: usize) -> Self {
        Uniserial { top, len }
    }

    pub fn is_zero(&self) -> bool {
        self.len == 0
    }

    pub fn factors(&self, n: usize) -> impl Iterator<Item = Vertex> + '_ {
        let top = self.top;
        (0..self.len).map(move |i| step(top, i, n))
    }

    pub fn socle(&self, n: usize) -> Option<Vertex> {
        (self.len > 0).then(|| step(self.top, self.len - 1, n))
    }
}

impl fmt::Display for Uniserial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({};{})", self.top, self.len)
    }
}

//! Syzygies, projective resolutions and dimensions of uniserial modules.
//!
//! Over a Nakayama algebra the kernel of the projective cover `P(t) -> (t;l)` is again
//! uniserial, so a minimal projective resolution is a chain of uniserials. The chain
//! lives in a finite set, so it either reaches a projective or repeats.

use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use crate::algebra::{step, NakayamaAlgebra, Uniserial, Vertex};
use crate::error::{Error, Result};
use crate::qh::q_set_partition;

/// Projective dimension of a module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum ProjDim {
    Finite(usize),
    Infinite,
    /// The zero module.
    NotApplicable,
}

impl ProjDim {
    pub fn finite(self) -> Option<usize> {
        match self {
            ProjDim::Finite(d) => Some(d),
            _ => None,
        }
    }
}

impl fmt::Display for ProjDim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProjDim::Finite(d) => write!(f, "{d}"),
            ProjDim::Infinite => f.write_str("inf"),
            ProjDim::NotApplicable => f.write_str("n/a"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Terminal {
    Projective,
    Cycle,
}

/// The syzygy chain `M, ΩM, Ω²M, ...` of a minimal projective resolution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResolutionTrace {
    pub steps: Vec<Uniserial>,
    pub terminal: Terminal,
}

/// Kernel of the projective cover `P(t) -> (t;l)`, namely `(t+l; dim P(t) - l)`.
pub fn syzygy(a: &NakayamaAlgebra, m: Uniserial) -> Result<Uniserial> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    a.check_module(m)?;
    let cover = a.projective_len(m.top);
    Ok(Uniserial::new(step(m.top, m.len, a.n()), cover - m.len))
}

/// Resolves `m` until a projective syzygy or a repeated one. The zero module has no
/// trace.
pub fn resolve(a: &NakayamaAlgebra, m: Uniserial) -> Result<Option<ResolutionTrace>> {
    a.check_module(m)?;
    if m.is_zero() {
        return Ok(None);
    }
    let mut seen = HashSet::new();
    let mut steps = vec![m];
    let mut current = m;
    loop {
        if a.is_projective(current) {
            return Ok(Some(ResolutionTrace { steps, terminal: Terminal::Projective }));
        }
        if !seen.insert(current) {
            // the repeated entry stays in the trace so the cycle is visible
            return Ok(Some(ResolutionTrace { steps, terminal: Terminal::Cycle }));
        }
        current = syzygy(a, current)?;
        steps.push(current);
    }
}

pub fn proj_dim_with_trace(a: &NakayamaAlgebra, m: Uniserial) -> Result<(ProjDim, Option<ResolutionTrace>)> {
    let trace = resolve(a, m)?;
    let pd = match &trace {
        None => ProjDim::NotApplicable,
        Some(t) if t.terminal == Terminal::Projective => ProjDim::Finite(t.steps.len() - 1),
        Some(_) => ProjDim::Infinite,
    };
    Ok((pd, trace))
}

pub fn proj_dim(a: &NakayamaAlgebra, m: Uniserial) -> Result<ProjDim> {
    proj_dim_with_trace(a, m).map(|(pd, _)| pd)
}

/// Projective dimensions of the simples `1..=n`.
pub fn simple_proj_dims(a: &NakayamaAlgebra) -> Vec<ProjDim> {
    a.vertices()
        .map(|j| proj_dim(a, a.simple(j)).expect("simples are modules"))
        .collect()
}

/// Max of the simple projective dimensions; `None` means infinite.
pub fn global_dimension(a: &NakayamaAlgebra) -> Option<usize> {
    simple_proj_dims(a)
        .into_iter()
        .map(ProjDim::finite)
        .try_fold(0, |acc, d| d.map(|d| acc.max(d)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum PdClass {
    Pd0,
    Pd1,
    Pd2,
    PdOther,
}

impl PdClass {
    /// Whether a computed projective dimension falls in this class.
    pub fn matches(self, pd: ProjDim) -> bool {
        match (self, pd) {
            (PdClass::Pd0, ProjDim::Finite(0))
            | (PdClass::Pd1, ProjDim::Finite(1))
            | (PdClass::Pd2, ProjDim::Finite(2)) => true,
            (PdClass::PdOther, ProjDim::Finite(d)) => d > 2,
            (PdClass::PdOther, ProjDim::Infinite) => true,
            _ => false,
        }
    }
}

impl fmt::Display for PdClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PdClass::Pd0 => "0",
            PdClass::Pd1 => "1",
            PdClass::Pd2 => "2",
            PdClass::PdOther => ">2",
        })
    }
}

/// Classifies `pd(s)` from hooks and denouements alone: a non-projective simple has
/// `pd = 1` iff it is not a hook, and `pd = 2` iff it is the hook of a relation whose
/// denouement lies in the Q-set.
pub fn pd_simple_criterion(a: &NakayamaAlgebra, s: Vertex) -> PdClass {
    if a.projective_len(s) == 1 {
        return PdClass::Pd0;
    }
    let Some(g) = a.generator_with_hook(s) else {
        return PdClass::Pd1;
    };
    if q_set_partition(a).x.contains(&a.denouement(g)) {
        PdClass::Pd2
    } else {
        PdClass::PdOther
    }
}

/// `gld A >= 3` iff some vertex of one hood is interior to a different relation.
pub fn gld_ge3_criterion(a: &NakayamaAlgebra) -> bool {
    let n = a.n();
    let gens = a.generators();
    gens.iter().enumerate().any(|(i, gi)| {
        let hood = gi.window(n);
        gens.iter().enumerate().any(|(j, gj)| {
            if i == j {
                return false;
            }
            let w = gj.window(n);
            let interior = &w[1..w.len() - 1];
            hood.iter().any(|v| interior.contains(v))
        })
    })
}

/// Projective dimensions of the simples are finite and form an integer interval.
pub fn s_connected(a: &NakayamaAlgebra) -> bool {
    let Some(mut pds) = simple_proj_dims(a)
        .into_iter()
        .map(ProjDim::finite)
        .collect::<Option<Vec<_>>>()
    else {
        return false;
    };
    pds.sort_unstable();
    pds.dedup();
    pds.windows(2).all(|w| w[1] == w[0] + 1)
}

/// Some simple has projective dimension exactly 2, or the algebra is hereditary.
pub fn pd2_or_hereditary(a: &NakayamaAlgebra) -> bool {
    a.is_hereditary() || simple_proj_dims(a).contains(&ProjDim::Finite(2))
}

/// `End(M) = K` for a uniserial `M`: a non-identity endomorphism exists exactly when a
/// proper quotient `(t;i)` is isomorphic to the submodule of the same length, which
/// needs `i ≡ l (mod n)` with `i < l`.
pub fn is_schurian(a: &NakayamaAlgebra, m: Uniserial) -> Result<bool> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    Ok(m.len <= a.n())
}

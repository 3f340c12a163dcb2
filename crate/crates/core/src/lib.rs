//! Quasi-hereditary orderings of Nakayama algebras.
//!
//! A Nakayama algebra here is `KQ_n/I` for `Q_n` the linearly oriented `A_n` quiver or
//! the oriented `n`-cycle, with `I` generated by a minimal set of paths. The crate
//! decides which total orders on the simples are quasi-hereditary, counts them, and
//! checks every shortcut against a brute-force computation of Weyl modules and
//! projective resolutions.

pub mod algebra;
pub mod counting;
pub mod error;
pub mod format;
pub mod homology;
pub mod qh;
pub mod sweep;

pub use algebra::{wrap, Generator, NakayamaAlgebra, QuiverKind, QuiverSpec, Uniserial, Vertex};
pub use error::{Error, Result};
pub use qh::TotalOrdering;

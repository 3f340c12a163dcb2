use thiserror::Error;

use crate::algebra::Vertex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("a quiver needs at least 2 vertices, got {0}")]
    QuiverTooSmall(usize),

    #[error("vertex {vertex} is outside 1..={n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },

    #[error("relation {hook}:{length} is too short; relations need at least 3 vertices")]
    LengthTooShort { hook: Vertex, length: usize },

    #[error("relation {hook}:{length} leaves the linear quiver with {n} vertices")]
    GeneratorOutOfRange { hook: Vertex, length: usize, n: usize },

    #[error("relation set is not minimal: {outer} contains {inner}")]
    NonMinimalIdeal { outer: String, inner: String },

    #[error("a cyclic quiver needs at least one relation (the path algebra is infinite-dimensional)")]
    EmptyCyclicIdeal,

    #[error("the operation is undefined on the zero module")]
    ZeroModule,

    #[error("module ({top};{len}) is not a module over this algebra")]
    InvalidModule { top: Vertex, len: usize },

    #[error("vertex {0} is not in the Q-set")]
    NotInQSet(Vertex),

    #[error("not a permutation of 1..={n}: {detail}")]
    NotAPermutation { n: usize, detail: String },

    #[error("n = {n} exceeds the enumeration cap {cap}")]
    TooLarge { n: usize, cap: usize },

    #[error("iteration step is not an exact division: {numerator} / {denominator}")]
    NonIntegralDivision { numerator: String, denominator: String },

    #[error("path {hook}:{length} already lies in the ideal")]
    GeneratorInIdeal { hook: Vertex, length: usize },

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

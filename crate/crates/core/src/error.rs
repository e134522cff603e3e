use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("empty vertex id at position {0}")]
    EmptyId(usize),

    #[error("duplicate vertex id `{0}`")]
    DuplicateVertex(String),

    #[error("vertex `{id}` has nonpositive measure m = {m}")]
    NonPositiveMeasure { id: String, m: f64 },

    #[error("edge references unknown vertex `{0}`")]
    UnknownVertex(String),

    #[error("self-loop at vertex `{0}`")]
    SelfLoop(String),

    #[error("edge ({u}, {v}) has invalid weight w = {w}")]
    InvalidWeight { u: String, v: String, w: f64 },

    #[error("asymmetric weight on edge ({u}, {v}): {w_uv} vs {w_vu}")]
    AsymmetricWeight {
        u: String,
        v: String,
        w_uv: f64,
        w_vu: f64,
    },

    #[error("function has {got} values but the graph has {expected} vertices")]
    LengthMismatch { expected: usize, got: usize },

    #[error("invalid size {size} for family `{family}`")]
    InvalidSize { family: &'static str, size: usize },

    #[error("degree measure undefined: vertex `{0}` is isolated")]
    IsolatedDegreeMeasure(String),

    #[error("vertex index {0} out of range")]
    VertexOutOfRange(usize),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error(
        "Γ₂ form on the 2-sphere of `{vertex}` is not positive semidefinite \
         (smallest eigenvalue {min_eigenvalue}, guard {guard})"
    )]
    NotPsd {
        vertex: String,
        min_eigenvalue: f64,
        guard: f64,
    },

    #[error("curvature at `{0}` is unbounded below: coupling block leaves the range of the 2-sphere form")]
    RangeIncompatible(String),

    #[error("infinite resistance distance between `{0}` and `{1}`")]
    InfiniteResistance(String, String),

    #[error("graph is disconnected")]
    Disconnected,

    #[error("spectral factorization failed: {0}")]
    Spectral(String),

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

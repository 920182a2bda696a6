use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not unimodular (det = {det})")]
    NotUnimodular { det: String },

    #[error("matrix is not symmetric at ({row}, {col})")]
    NotSymmetric { row: usize, col: usize },

    #[error("declared symmetry sign {epsilon:+} does not match matrix at ({row}, {col})")]
    SymmetrySign {
        epsilon: i32,
        row: usize,
        col: usize,
    },

    #[error("nonzero diagonal entry at index {0}")]
    NonzeroDiagonal(usize),

    #[error("inertia algorithms disagree: ldlt {ldlt}, charpoly {charpoly}")]
    InertiaMismatch { ldlt: String, charpoly: String },

    #[error("outside classification domain: {0}")]
    Classification(String),

    #[error("invalid parameter: {0}")]
    Parameter(String),

    #[error("cokernel is not Z: free rank {free_rank}, invariant factors {factors:?}")]
    CokernelNotZ {
        free_rank: usize,
        factors: Vec<String>,
    },

    #[error("component index {index} out of range 0..={max}")]
    ComponentIndex { index: usize, max: usize },

    #[error("graph invalid at {locus}: {reason}")]
    Graph { locus: String, reason: String },

    #[error("unsupported graph shape: {0}")]
    UnsupportedShape(String),

    #[error("unsupported operation: {0}")]
    Unsupported(String),
}

use thiserror::Error;

use crate::{Simplex, Vertex};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("operation is undefined on the void complex")]
    VoidComplex,
    #[error("vertex sets overlap on {0}")]
    Overlap(Simplex),
    #[error("simplex {0} is not a face of the complex")]
    NotAFace(Simplex),
    #[error("vertex {0} is not a vertex of the complex")]
    NotAVertex(Vertex),
    #[error("simplex {simplex} is not contained in the ground set {ground}")]
    OutsideGround { simplex: Simplex, ground: Simplex },
    #[error("the subcomplex is not contained in the ambient complex")]
    NotASubcomplex,
    #[error("complex is not homogeneous")]
    NotHomogeneous,
    #[error("complex is not connected")]
    NotConnected,
    #[error("the empty simplex is not allowed here")]
    EmptySimplex,
    #[error("invalid collapse step: {0}")]
    InvalidCollapse(String),
    #[error("vertex capacity of {capacity} exhausted")]
    VertexCapacity { capacity: usize },
    #[error("search budget exhausted after {explored} nodes")]
    BudgetExhausted { explored: usize },
    #[error("link of {simplex} could not be classified within budget")]
    UnclassifiedLink { simplex: Simplex },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("unknown reference triangulation `{0}`")]
    UnknownReference(String),
    #[error("generation failed: {0}")]
    Generation(String),
    #[error("document error at {location}: {message}")]
    Document { location: String, message: String },
}

//! Exact computations for generalized Hopf links, decorated bicolored graphs
//! and the intersection forms of the manifolds they assemble.
//!
//! Everything is exact: integers are arbitrary precision and intermediate
//! eliminations run over the rationals.

pub mod error;
pub mod exactlinalg;
pub mod forms;
pub mod graphmodel;
pub mod hopflink;
pub mod invariants;
pub mod random;

pub use error::{Error, Result};
pub use exactlinalg::{Inertia, IntMatrix, RatMatrix, SmithForm};
pub use forms::{BilinearForm, Epsilon};
pub use graphmodel::{DecoratedGraph, Edge, Vertex};
pub use hopflink::{FiberDescriptor, HopfLinkSpec};

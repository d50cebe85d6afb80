//! Graded Hilbert functions of the forest algebras attached to a multigraph,
//! computed four independent ways, together with the Tutte polynomial
//! machinery that links them and the inverse reconstruction.

pub mod algebra;
pub mod corpus;
pub mod dsu;
pub mod error;
pub mod forest;
pub mod graph;
pub mod hilbert;
pub mod poly;
pub mod recovery;
pub mod tutte;
pub mod verify;

pub use error::{Error, RecoveryError, Result};
pub use forest::{ActivityTable, ForestRecord, LabeledForest};
pub use graph::{CloneGraph, EdgeClass, Multigraph};
pub use hilbert::HilbertFunction;
pub use poly::{Laurent, Poly1, Poly2, Rational};
pub use tutte::{JPoly, TutteOptions, TuttePoly};

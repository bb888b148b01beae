//! Latin squares as a concept class: completion by exact cover, teaching and
//! critical sets, shattering and teaching dimensions, triangle decompositions
//! of tripartite graphs, and log-space counting bounds.

pub mod bounds;
pub mod cli;
pub mod completion;
pub mod decomposition;
pub mod dimensions;
pub mod error;
pub mod exact_cover;
pub mod forcing;
pub mod isotopy;
pub mod limits;
pub mod par;
pub mod square;
pub mod teaching;

pub use error::{Error, Result};
pub use exact_cover::{Cap, CoverSolution, ExactCoverInstance};
pub use limits::Limits;
pub use square::{LatinSquare, PartialLatinSquare, StructuredSquare, Triple, TripleSet};

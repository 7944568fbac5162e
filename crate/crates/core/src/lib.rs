//! Homological combinatorics of gentle quivers.

pub mod error;
pub mod quiver;
pub mod linalg;
pub mod oracle;
pub mod strings;
pub mod homology;
pub mod resolving;
pub mod corpus;
pub mod disc;
pub mod acceptance;

pub use error::{Error, QuiverError, SyntaxError};
pub use quiver::{parse_quiver, validate_gentle, ArrowId, GentleQuiver, Letter, QuiverData, VertexId, Violation};
pub use strings::{StringWord, Substring, Walk};

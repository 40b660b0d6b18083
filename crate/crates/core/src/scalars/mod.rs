//! Exact arithmetic in Q(q), modular specialization and rank backends.

pub mod field;
pub mod laurent;
pub mod linalg;
pub mod modular;
pub mod rank;
pub mod scalar;
pub mod sparse;

pub use field::{ExactField, Field};
pub use laurent::LaurentPoly;
pub use modular::{specialize, ModField, ModScalar};
pub use rank::{rank, rank_detailed, FieldBuild, RankMode, RankOutcome};
pub use scalar::{normalize, Scalar};
pub use sparse::{SparseMatrix, SparseVec};

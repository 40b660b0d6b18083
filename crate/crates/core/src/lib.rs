pub mod braiding;
pub mod error;
pub mod hecke;
pub mod invariants;
pub mod orchestrator;
pub mod partitions;
pub mod quaddual;
pub mod rmatrix;
pub mod scalars;
pub mod symgroup;

pub use error::{Error, Result};
pub use hecke::HeckeElt;
pub use partitions::{MultiPoly, Partition};
pub use rmatrix::{build_family, RMatrixFamily, Tau, TensorOp};
pub use scalars::{normalize, rank, specialize, LaurentPoly, ModScalar, RankMode, Scalar, SparseMatrix};
pub use symgroup::{Perm, ReducedWord};

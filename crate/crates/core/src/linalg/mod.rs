//! Dense linear algebra generic over [`Scalar`](crate::scalar::Scalar).

mod eigen;
mod gauss;
mod ldl;
mod matrix;

pub use eigen::{symmetric_eigen, SymmetricEigen};
pub use gauss::{determinant, nullspace, rank, rref, solve};
pub use ldl::{ldl_psd, PsdCheck};
pub use matrix::Matrix;

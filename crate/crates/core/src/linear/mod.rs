//! Exact scalars and the dense linear algebra everything else rests on.

mod cyclotomic;
mod field;
mod matrix;
mod poly;
mod subspace;

pub use cyclotomic::Cyclotomic;
pub use field::{Field, ScalarError, Q};
pub use matrix::Matrix;
pub use subspace::{Quotient, SubspacePresentation};

//! Exact scalars and linear algebra over `Q`, `F_p` and `Z/m`.

mod howell;
mod matrix;
mod scalar;

pub use howell::{howell, residue_kernel, ResidueModule};
pub use matrix::{echelonize, kernel, left_kernel, solve_linear, Matrix, Subspace};
pub use scalar::{inv_mod, is_prime, FieldSpec, Scalar};

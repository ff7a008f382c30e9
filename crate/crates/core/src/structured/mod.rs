//! Finite Toeplitz and Hankel sections, semicommutators, the flip matrix, and
//! the Hankel-product (Widom) decomposition.

mod matrix;
mod sections;
mod widom;

pub use matrix::ComplexMatrix;
pub use sections::{flip_matrix, hankel_section, semicommutator, toeplitz};
pub use widom::{widom_check, widom_rhs, WidomDecomposition};

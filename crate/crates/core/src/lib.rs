//! Exact analysis of GCD matrices `S(X) = (gcd(x_i, x_j))`.
//!
//! Total nonnegativity is decided by several independent characterizations
//! (2x2 minors, triple conditions on gcds, monotone prime exponents, Green's
//! matrix structure, and brute-force minors), and TN GCD matrices get
//! closed-form minors and a tridiagonal inverse. All arithmetic is exact.

pub mod check;
pub mod error;
pub mod exact_linalg;
pub mod gcd_matrix;
pub mod generator;
pub mod green;
pub mod num_theory;
pub mod preservers;
pub mod tn_analysis;

pub use check::Check;
pub use error::{Error, Result};
pub use exact_linalg::{ExactRational, MinorWitness, RationalMatrix};
pub use gcd_matrix::GcdMatrix;
pub use green::{GreenForm, SymmetricTridiagonal};
pub use tn_analysis::{is_tn, Method, TnReport, Verdict, Witness};

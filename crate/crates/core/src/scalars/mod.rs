//! Exact arithmetic over cyclotomic fields, polynomials in `v`, and Gauss symbols.

mod cyclotomic;
mod scalar;
mod upoly;

pub use cyclotomic::{cyclotomic_poly, euler_phi, Cyclotomic};
pub use scalar::{one_minus, one_minus_q_inv, ratio, GMono, Instantiation, Scalar};
pub use upoly::UPoly;

//! Exact arithmetic: cyclotomic scalars and homogeneous polynomials in `x, y, z`.

pub mod cyclotomic;
mod poly;
mod scalar;

pub use poly::{binomial, monomial_index, monomials, poly_arith, HomPoly, Monomial, PolyOp, Var};
pub(crate) use scalar::check_conductor;
pub use scalar::{conductor_cap, scalar_arith, set_conductor_cap, Scalar, ScalarOp};

//! Exact arithmetic: reduced rationals and sparse multivariate Laurent
//! polynomials with a fixed graded-lexicographic term order.

mod json;
mod monomial;
mod point;
mod poly;
mod rational;
mod symmetric;

pub use json::{poly_from_json, poly_to_json};
pub use monomial::Monomial;
pub use point::{EvalPoint, PointKind};
pub use poly::{rational_to_f64, var_names, MultiPoly};
pub use rational::{
    binomial, factorial, multinomial, pochhammer, rat, rat_int, rational_pow, Rational,
};
pub use symmetric::{elementary_symmetric, to_elementary_basis, to_elementary_basis_full};

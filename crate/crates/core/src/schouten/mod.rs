//! Polynomial multivector fields on ℚ⁵, their wedge and Schouten brackets,
//! and classes modulo Euler-trivial fields (sections of ∧ᵍT on P⁴).

mod euler;
mod multivector;
mod poly;

pub use euler::{class_is_zero, class_span_dim, euler_reduce, EulerReducer, MultivectorClass};
pub use multivector::{
    coeff_dim, lie_derivative, mv_wedge, poisson_of_functions, schouten_bracket, PolyMultivector,
};
pub use poly::{monomial_rank, monomials, Exponent, Poly};

use crate::error::Result;

/// Class of `[p, q]` as a trivector field on P⁴.
pub fn bracket_class(p: &PolyMultivector, q: &PolyMultivector) -> Result<MultivectorClass> {
    let s = schouten_bracket(p, q)?;
    euler_reduce(&s, EulerReducer::shared(3))
}

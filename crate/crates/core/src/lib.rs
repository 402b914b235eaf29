//! Exact construction of Feigin–Odesskii q(5,2) Poisson bivectors on P⁴.
//!
//! A 5-dimensional subspace `W ⊂ ∧²ℚ⁵` determines a quadratic Poisson
//! bivector `Π_W` on P⁴, and the assignment extends to a linear map
//! `π₅,₂ : ∧⁵(∧²ℚ⁵) → H⁰(P⁴, ∧²T)`. Everything here is exact rational
//! arithmetic:
//!
//! * [`exactq`]: rationals, RREF, kernels, subspace sums and intersections;
//! * [`exterior`]: wedge products, Plücker vectors, induced maps ∧ᵏ(f);
//! * [`schouten`]: polynomial multivector fields, the Schouten bracket,
//!   and classes modulo Euler-trivial fields;
//! * [`fobracket`]: `Π_W`, the `π₅,₂` matrix, rank strata, linearizations;
//! * [`grassmann`]: test configurations on G(2,5), the distribution
//!   `W ∩ (Λ∧V)`, tangent lines, and the subspace `(∧⁴W)∧(∧²V)`.

pub mod error;
pub mod exactq;
pub mod exterior;
pub mod fobracket;
pub mod grassmann;
pub mod json;
pub mod schouten;

pub use error::{Error, Result};

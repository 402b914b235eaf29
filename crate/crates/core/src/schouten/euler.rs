//! Multivector fields on P⁴ as classes of homogeneous fields on ℚ⁵.
//!
//! A grade-g field with coefficients of degree g is Euler-invariant and
//! descends to P⁴; it descends to zero exactly when it lies in the image of
//! `A ↦ x ∧ A` from grade-(g−1), degree-(g−1) fields. Classes are represented
//! by the canonical representative that vanishes on every pivot coordinate of
//! the RREF basis of that image.

use std::sync::OnceLock;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactq::{rank, QMat, QSubspace, Rat};
use crate::exterior::{combinations, DIM_V};

use super::multivector::{coeff_dim, mv_wedge, PolyMultivector};
use super::poly::{monomials, Poly};

#[derive(Clone, Debug)]
pub struct EulerReducer {
    grade: usize,
    triv: QSubspace,
}

impl EulerReducer {
    pub fn build(grade: usize) -> Self {
        assert!((1..=DIM_V).contains(&grade), "grade must be in 1..=5");
        let ambient = coeff_dim(grade, grade);
        let euler = PolyMultivector::euler();
        let mut rows = Vec::new();
        for idx in combinations(DIM_V, grade - 1) {
            for mono in monomials(grade - 1) {
                let a = PolyMultivector::from_components(
                    grade - 1,
                    grade - 1,
                    [(idx.clone(), Poly::monomial(*mono, Rat::one()))],
                )
                .expect("basis field");
                rows.push(mv_wedge(&euler, &a).to_coeff_vec());
            }
        }
        let triv = QSubspace::span(ambient, &rows).expect("row length");
        EulerReducer { grade, triv }
    }

    /// Process-wide cached reducer for `grade` (1..=5).
    pub fn shared(grade: usize) -> &'static EulerReducer {
        static CACHE: [OnceLock<EulerReducer>; DIM_V] = [
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
            OnceLock::new(),
        ];
        assert!((1..=DIM_V).contains(&grade), "grade must be in 1..=5");
        CACHE[grade - 1].get_or_init(|| EulerReducer::build(grade))
    }

    pub fn grade(&self) -> usize {
        self.grade
    }

    /// Subspace of Euler-trivial coefficient vectors, in RREF.
    pub fn trivial(&self) -> &QSubspace {
        &self.triv
    }

    pub fn ambient_dim(&self) -> usize {
        self.triv.ambient_dim()
    }

    pub fn trivial_dim(&self) -> usize {
        self.triv.dim()
    }

    pub fn class_dim(&self) -> usize {
        self.ambient_dim() - self.trivial_dim()
    }

    /// Canonical representative of a raw coefficient vector.
    pub fn reduce_coeffs(&self, v: &[Rat]) -> Vec<Rat> {
        self.triv.reduce(v)
    }
}

/// A multivector field modulo Euler-trivial fields.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MultivectorClass {
    rep: PolyMultivector,
    coeffs: Vec<Rat>,
}

impl MultivectorClass {
    /// Wraps a vector that is already canonical for `grade`.
    pub(crate) fn from_canonical(grade: usize, coeffs: Vec<Rat>) -> Result<Self> {
        let rep = PolyMultivector::from_coeff_vec(grade, grade, &coeffs)?;
        Ok(MultivectorClass { rep, coeffs })
    }

    /// Canonicalizes a raw coefficient vector of a degree-`grade` field.
    pub fn from_coeffs(grade: usize, coeffs: &[Rat]) -> Result<Self> {
        let r = EulerReducer::shared(grade);
        if coeffs.len() != r.ambient_dim() {
            return Err(Error::DimensionMismatch {
                expected: r.ambient_dim(),
                got: coeffs.len(),
            });
        }
        Self::from_canonical(grade, r.reduce_coeffs(coeffs))
    }

    pub fn grade(&self) -> usize {
        self.rep.grade()
    }

    pub fn rep(&self) -> &PolyMultivector {
        &self.rep
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn scale(&self, s: &Rat) -> Self {
        MultivectorClass {
            rep: self.rep.scale(s),
            coeffs: self.coeffs.iter().map(|c| c * s).collect(),
        }
    }

    /// Rescaled so the first nonzero canonical coordinate is 1.
    pub fn normalized(&self) -> Self {
        match self.coeffs.iter().find(|c| !c.is_zero()) {
            None => self.clone(),
            Some(c) => self.scale(&(Rat::one() / c)),
        }
    }

    pub fn projectively_equal(&self, other: &Self) -> bool {
        self.grade() == other.grade()
            && crate::exterior::proportional(&self.coeffs, &other.coeffs)
    }
}

pub fn euler_reduce(m: &PolyMultivector, r: &EulerReducer) -> Result<MultivectorClass> {
    if m.grade() != r.grade {
        return Err(Error::GradeMismatch {
            expected: r.grade,
            got: m.grade(),
        });
    }
    if m.degree() != m.grade() && !m.is_zero() {
        return Err(Error::DegreeMismatch {
            expected: m.grade(),
            got: m.degree(),
        });
    }
    let coeffs = if m.degree() == m.grade() {
        r.reduce_coeffs(&m.to_coeff_vec())
    } else {
        vec![Rat::zero(); r.ambient_dim()]
    };
    MultivectorClass::from_canonical(r.grade, coeffs)
}

pub fn class_is_zero(c: &MultivectorClass) -> bool {
    c.is_zero()
}

/// Dimension of the span of classes of a common grade.
pub fn class_span_dim(cs: &[MultivectorClass]) -> usize {
    let Some(first) = cs.first() else {
        return 0;
    };
    let n = first.coeffs.len();
    assert!(
        cs.iter().all(|c| c.coeffs.len() == n),
        "classes of one grade"
    );
    let m = QMat::from_rows(n, cs.iter().map(|c| c.coeffs.clone()).collect())
        .expect("row length");
    rank(&m)
}

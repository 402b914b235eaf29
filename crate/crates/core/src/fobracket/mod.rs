//! The quadratic Poisson bivector Π_W attached to W ⊂ ∧²ℚ⁵.

mod linearize;
mod pi52;
mod strata;

pub use linearize::{linearize_at, LieAlgebra};
pub use pi52::{build_pi52, pi52_apply, sample_grid, Pi52Map, Pi52Verification, DEFAULT_SAMPLES};
pub use strata::{degeneracy_quintic, rank_at, zero_locus_equations};

use num_traits::Zero;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactq::{kernel, QMat, Rat};
use crate::exterior::{combinations, pair_of, sort_with_sign, WSubspace, DIM_V, DIM_W2};
use crate::json::JsonCodec;
use crate::schouten::{
    bracket_class, coeff_dim, monomial_rank, monomials, EulerReducer, MultivectorClass,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Orthogonality,
    Pi52Column,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::Orthogonality => "orthogonality",
            Method::Pi52Column => "pi52_column",
        }
    }
}

/// Π_W as a bivector class on P⁴, normalized so its first nonzero canonical
/// coordinate is 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FoBracket {
    w: WSubspace,
    cls: MultivectorClass,
    method: Method,
}

impl FoBracket {
    pub fn w(&self) -> &WSubspace {
        &self.w
    }

    pub fn class(&self) -> &MultivectorClass {
        &self.cls
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// Π_W read off as the image of ∧⁵W under π₅,₂.
    pub fn from_pi52(map: &Pi52Map, w: &WSubspace) -> Result<Self> {
        let cls = pi52_apply(map, w.plucker());
        if cls.is_zero() {
            return Err(Error::ZeroBracket);
        }
        Ok(FoBracket {
            w: w.clone(),
            cls: cls.normalized(),
            method: Method::Pi52Column,
        })
    }

    pub fn to_json(&self) -> Value {
        json!({
            "method": self.method.tag(),
            "w": self.w.to_json(),
            "class": self.cls.rep().to_json(),
        })
    }
}

/// Class of `[Π, Π]`; zero exactly when Π is Poisson.
pub fn jacobi_class(b: &FoBracket) -> Result<MultivectorClass> {
    bracket_class(b.cls.rep(), b.cls.rep())
}

/// Class of `[Π₁, Π₂]`; zero exactly when the pair is compatible.
pub fn compatibility_class(a: &FoBracket, b: &FoBracket) -> Result<MultivectorClass> {
    bracket_class(a.cls.rep(), b.cls.rep())
}

pub fn compatible(a: &FoBracket, b: &FoBracket) -> Result<bool> {
    Ok(compatibility_class(a, b)?.is_zero())
}

/// Linear form `v ↦ Σ_{c<d} w_cd · vol(e_v ∧ e_c ∧ e_d ∧ e_a ∧ e_b)` as five
/// coefficients, for fixed `w ∈ ∧²ℚ⁵` and pair `(a,b)`.
fn contraction_form(w: &[Rat], a: usize, b: usize) -> [Rat; DIM_V] {
    let mut out: [Rat; DIM_V] = Default::default();
    for (k, wk) in w.iter().enumerate() {
        if wk.is_zero() {
            continue;
        }
        let (c, d) = pair_of(k);
        for (i, slot) in out.iter_mut().enumerate() {
            if let Some((_, s)) = sort_with_sign(&[i, c, d, a, b]) {
                *slot += wk * Rat::from_integer(s.into());
            }
        }
    }
    out
}

/// The 175×150 system `vol5(x ∧ wᵢ ∧ Π(x)) ≡ 0` on quadratic bivectors Π,
/// one cubic identity per generator wᵢ.
pub fn orthogonality_system(w: &WSubspace) -> QMat {
    let quad = monomials(2);
    let cubic = monomials(3).len();
    let gens = w.generators();
    let pairs = combinations(DIM_V, 2);
    let mut m = QMat::zeros(gens.len() * cubic, coeff_dim(2, 2));
    for (g, wg) in gens.iter().enumerate() {
        for (k, ab) in pairs.iter().enumerate() {
            let form = contraction_form(wg, ab[0], ab[1]);
            for (mi, mono) in quad.iter().enumerate() {
                let col = k * quad.len() + mi;
                for (i, f) in form.iter().enumerate() {
                    if f.is_zero() {
                        continue;
                    }
                    let mut e = *mono;
                    e[i] += 1;
                    m[(g * cubic + monomial_rank(&e), col)] += f;
                }
            }
        }
    }
    m
}

/// Π_W as the unique-up-to-scale quadratic class with
/// `Π_W(v) ∈ ⟨φ_v(W)⟩⊥` at every point.
pub fn build_bracket_orthogonality(w: &WSubspace) -> Result<FoBracket> {
    let sol = kernel(&orthogonality_system(w));
    let reducer = EulerReducer::shared(2);
    if sol.dim() != reducer.trivial_dim() + 1 {
        return Err(Error::DegenerateW { dim: sol.dim() });
    }
    if !sol.contains_subspace(reducer.trivial()) {
        return Err(Error::DegenerateW { dim: sol.dim() });
    }
    let canon = sol
        .basis_vectors()
        .into_iter()
        .map(|v| reducer.reduce_coeffs(&v))
        .find(|v| v.iter().any(|c| !c.is_zero()))
        .ok_or(Error::DegenerateW { dim: sol.dim() })?;
    let cls = MultivectorClass::from_coeffs(2, &canon)?.normalized();
    Ok(FoBracket {
        w: w.clone(),
        cls,
        method: Method::Orthogonality,
    })
}

/// Rebuilds a bracket from persisted parts, checking the class is nonzero.
pub fn bracket_from_parts(w: WSubspace, cls: MultivectorClass, method: Method) -> Result<FoBracket> {
    if cls.grade() != 2 {
        return Err(Error::GradeMismatch {
            expected: 2,
            got: cls.grade(),
        });
    }
    if cls.is_zero() {
        return Err(Error::ZeroBracket);
    }
    debug_assert_eq!(w.generators()[0].len(), DIM_W2);
    Ok(FoBracket { w, cls, method })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::int;
    use crate::exterior::{plucker_of_plane, vol5, wedge, ExtVec};

    fn iv(v: &[i64]) -> Vec<Rat> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn contraction_form_matches_vol5() {
        let w = iv(&[1, -2, 0, 3, 1, 0, 2, -1, 0, 4]);
        let wv = ExtVec::from_dense(5, 2, &w).unwrap();
        for (a, b) in [(0, 1), (1, 3), (2, 4)] {
            let form = contraction_form(&w, a, b);
            for i in 0..5 {
                let t = wedge(&wedge(&ExtVec::basis(5, &[i]), &wv), &ExtVec::basis(5, &[a, b]));
                assert_eq!(form[i], vol5(&t).unwrap());
            }
        }
    }

    #[test]
    fn five_planes_give_poisson_bracket() {
        let planes = [
            ([1, 0, 2, -1, 1], [0, 1, 1, 2, -3]),
            ([2, 1, 0, 1, 0], [1, -1, 3, 0, 2]),
            ([0, 2, -1, 1, 1], [3, 0, 1, -2, 1]),
            ([1, 1, 1, 0, -1], [0, 3, -2, 1, 2]),
            ([-1, 0, 1, 3, 2], [2, 2, 0, -1, 1]),
        ];
        let gens: Vec<Vec<Rat>> = planes
            .iter()
            .map(|(u, v)| plucker_of_plane(&iv(u), &iv(v)).unwrap().to_dense())
            .collect();
        let w = WSubspace::from_vectors(&gens).unwrap();
        let b = build_bracket_orthogonality(&w).unwrap();
        assert!(!b.class().is_zero());
        assert!(jacobi_class(&b).unwrap().is_zero());
    }
}

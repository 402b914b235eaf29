//! Rank stratification of Π_W: the degeneracy quintic, the cubics cutting
//! out the zero surface, and pointwise rank.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactq::Rat;
use crate::exterior::{quotient_map_at, ExtVec, DIM_V};
use crate::schouten::{mv_wedge, Poly, PolyMultivector};

use super::FoBracket;

/// `vol(x ∧ Π(x) ∧ Π(x))`, a quintic vanishing where Π has rank ≤ 2.
pub fn degeneracy_quintic(b: &FoBracket) -> Poly {
    let rep = b.class().rep();
    let top = mv_wedge(&PolyMultivector::euler(), &mv_wedge(rep, rep));
    top.component(&[0, 1, 2, 3, 4])
}

/// The ten cubic components of `x ∧ Π(x)`, in lex order of ∧³ indices.
pub fn zero_locus_equations(b: &FoBracket) -> Vec<Poly> {
    let xp = b.class().rep().euler_wedge();
    crate::exterior::combinations(DIM_V, 3)
        .iter()
        .map(|idx| xp.component(idx))
        .collect()
}

/// Rank of Π at the point `[v]` of P⁴: 0, 2 or 4.
pub fn rank_at(b: &FoBracket, v: &[Rat]) -> Result<usize> {
    if v.len() != DIM_V {
        return Err(Error::DimensionMismatch {
            expected: DIM_V,
            got: v.len(),
        });
    }
    if v.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let q = quotient_map_at(v)?;
    let omega = q.mul_vec(&b.class().rep().eval(v).to_dense())?;
    if omega.iter().all(Zero::is_zero) {
        return Ok(0);
    }
    let w = ExtVec::from_dense(DIM_V - 1, 2, &omega)?;
    Ok(if w.wedge(&w).is_zero() { 2 } else { 4 })
}

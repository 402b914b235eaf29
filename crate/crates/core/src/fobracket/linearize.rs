//! Linearization of Π_W at a zero: a Lie algebra on the cotangent space.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactq::{QMat, QSubspace, Rat};
use crate::exterior::{chart_index, DIM_V};
use crate::schouten::Poly;

use super::FoBracket;

/// Structure constants `[eᵢ, eⱼ] = Σ_k c[i][j][k] e_k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebra {
    c: Vec<Vec<Vec<Rat>>>,
    /// Homogeneous coordinate behind each basis element (chart coordinates).
    labels: Vec<usize>,
}

impl LieAlgebra {
    pub fn new(c: Vec<Vec<Vec<Rat>>>, labels: Vec<usize>) -> Self {
        let n = c.len();
        assert!(c.iter().all(|r| r.len() == n && r.iter().all(|s| s.len() == n)));
        assert_eq!(labels.len(), n);
        LieAlgebra { c, labels }
    }

    pub fn dim(&self) -> usize {
        self.c.len()
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn structure_constants(&self) -> &[Vec<Vec<Rat>>] {
        &self.c
    }

    pub fn bracket(&self, u: &[Rat], v: &[Rat]) -> Vec<Rat> {
        let n = self.dim();
        let mut out = vec![Rat::zero(); n];
        for i in 0..n {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..n {
                if v[j].is_zero() {
                    continue;
                }
                let s = &u[i] * &v[j];
                for (o, c) in out.iter_mut().zip(&self.c[i][j]) {
                    if !c.is_zero() {
                        *o += &s * c;
                    }
                }
            }
        }
        out
    }

    fn unit(&self, i: usize) -> Vec<Rat> {
        let mut e = vec![Rat::zero(); self.dim()];
        e[i] = Rat::one();
        e
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.dim();
        (0..n).all(|i| {
            (0..n).all(|j| (0..n).all(|k| self.c[i][j][k] == -self.c[j][i][k].clone()))
        })
    }

    pub fn satisfies_jacobi(&self) -> bool {
        let n = self.dim();
        let e: Vec<Vec<Rat>> = (0..n).map(|i| self.unit(i)).collect();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let a = self.bracket(&e[i], &self.bracket(&e[j], &e[k]));
                    let b = self.bracket(&e[j], &self.bracket(&e[k], &e[i]));
                    let c = self.bracket(&e[k], &self.bracket(&e[i], &e[j]));
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// `[g, g]`.
    pub fn derived_subalgebra(&self) -> QSubspace {
        let n = self.dim();
        let mut vs = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                vs.push(self.c[i][j].clone());
            }
        }
        QSubspace::span(n, &vs).expect("bracket length")
    }

    pub fn is_abelian_subspace(&self, s: &QSubspace) -> bool {
        let b = s.basis_vectors();
        b.iter().enumerate().all(|(i, u)| {
            b[i + 1..]
                .iter()
                .all(|v| self.bracket(u, v).iter().all(Zero::is_zero))
        })
    }

    /// Matrix of `ad(h)` restricted to an invariant subspace, in the
    /// coordinates given by the subspace's pivot columns. `None` if `s` is
    /// not `ad(h)`-invariant.
    pub fn restricted_ad(&self, h: &[Rat], s: &QSubspace) -> Option<QMat> {
        let basis = s.basis_vectors();
        let d = basis.len();
        let mut m = QMat::zeros(d, d);
        for (j, u) in basis.iter().enumerate() {
            let img = self.bracket(h, u);
            if !s.contains(&img) {
                return None;
            }
            for (i, &p) in s.pivots().iter().enumerate() {
                m[(i, j)] = img[p].clone();
            }
        }
        Some(m)
    }

    /// `tr² − 4·det` of `ad(h)` on a 2-dimensional invariant subspace.
    pub fn ad_discriminant(&self, h: &[Rat], s: &QSubspace) -> Option<Rat> {
        if s.dim() != 2 {
            return None;
        }
        let m = self.restricted_ad(h, s)?;
        let tr = &m[(0, 0)] + &m[(1, 1)];
        let det = &m[(0, 0)] * &m[(1, 1)] - &m[(0, 1)] * &m[(1, 0)];
        Some(&tr * &tr - Rat::from_integer(4.into()) * det)
    }
}

/// Linear part of Π at a zero `[v]`, in the affine chart where the first
/// nonzero coordinate of `v` is 1. Basis element `k` is `dy_k` for the
/// affine coordinate `y_k = x_k / x_p`.
pub fn linearize_at(b: &FoBracket, v: &[Rat]) -> Result<LieAlgebra> {
    if v.len() != DIM_V {
        return Err(Error::DimensionMismatch {
            expected: DIM_V,
            got: v.len(),
        });
    }
    let p = chart_index(v)?;
    let y: Vec<Rat> = v.iter().map(|c| c / &v[p]).collect();
    let rep = b.class().rep();
    let labels: Vec<usize> = (0..DIM_V).filter(|&k| k != p).collect();
    // {y_a, y_b} = Π^{ab} − x_a Π^{pb} − x_b Π^{ap} on x_p = 1
    let chart = |a: usize, bb: usize| -> Poly {
        rep.component(&[a, bb])
            .sub(&Poly::var(a).mul(&rep.component(&[p, bb])))
            .sub(&Poly::var(bb).mul(&rep.component(&[a, p])))
    };
    let n = labels.len();
    let mut c = vec![vec![vec![Rat::zero(); n]; n]; n];
    for (i, &a) in labels.iter().enumerate() {
        for (j, &bb) in labels.iter().enumerate() {
            if i == j {
                continue;
            }
            let pi = chart(a, bb);
            if !pi.eval(&y).is_zero() {
                return Err(Error::NotAZero);
            }
            for (k, &cc) in labels.iter().enumerate() {
                c[i][j][k] = pi.derivative(cc).eval(&y);
            }
        }
    }
    Ok(LieAlgebra::new(c, labels))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactq::int;

    fn unit(n: usize, i: usize) -> Vec<Rat> {
        let mut e = vec![Rat::zero(); n];
        e[i] = Rat::one();
        e
    }

    // ⟨h, e⟩ with [h, e] = 2e, plus two central elements.
    fn toy() -> LieAlgebra {
        let mut c = vec![vec![vec![Rat::zero(); 4]; 4]; 4];
        c[0][1][1] = int(2);
        c[1][0][1] = int(-2);
        LieAlgebra::new(c, vec![1, 2, 3, 4])
    }

    #[test]
    fn toy_algebra_invariants() {
        let g = toy();
        assert!(g.is_antisymmetric());
        assert!(g.satisfies_jacobi());
        let d = g.derived_subalgebra();
        assert_eq!(d.dim(), 1);
        assert!(g.is_abelian_subspace(&d));
        assert_eq!(g.bracket(&unit(4, 0), &unit(4, 1)), unit(4, 1).iter().map(|x| x * int(2)).collect::<Vec<_>>());
    }

    #[test]
    fn discriminant_on_invariant_plane() {
        // [h, e1] = 2 e1, [h, e2] = −e2
        let mut c = vec![vec![vec![Rat::zero(); 3]; 3]; 3];
        c[0][1][1] = int(2);
        c[1][0][1] = int(-2);
        c[0][2][2] = int(-1);
        c[2][0][2] = int(1);
        let g = LieAlgebra::new(c, vec![0, 1, 2]);
        assert!(g.satisfies_jacobi());
        let d = g.derived_subalgebra();
        assert_eq!(d.dim(), 2);
        assert!(g.is_abelian_subspace(&d));
        assert_eq!(g.ad_discriminant(&unit(3, 0), &d), Some(int(9)));
    }
}

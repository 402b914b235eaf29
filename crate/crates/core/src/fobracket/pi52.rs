//! The linear map π₅,₂ : ∧⁵(∧²ℚ⁵) → quadratic bivector classes on P⁴,
//! stored as a 150×252 matrix of canonical class representatives.

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactq::{int, kernel, rank, rref, QMat, QSubspace, Rat};
use crate::exterior::{combinations, minor, quotient_map_at, ExtVec, DIM_W2, DIM_XI};
use crate::json::{rat_from_json, rat_to_json};
use crate::schouten::{coeff_dim, monomials, EulerReducer, MultivectorClass};

pub const DEFAULT_SAMPLES: usize = 30;
const ESCALATION_STEP: usize = 10;
const MAX_ESCALATIONS: usize = 10;
const EXPECTED_RANK: usize = 126;
// Salt for the fresh points used by `verify`.
const VERIFY_SALT: u64 = 0x5eed_f00d_cafe_0001;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi52Map {
    grid_seed: u64,
    n_samples: usize,
    matrix: QMat,
    rank: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Pi52Verification {
    pub rank: usize,
    pub kernel_dim: usize,
    pub canonical: bool,
    /// Every column satisfies the defining equations at two fresh points.
    pub fresh_points_ok: bool,
}

impl Pi52Verification {
    pub fn passed(&self) -> bool {
        self.rank == EXPECTED_RANK
            && self.kernel_dim == DIM_XI - EXPECTED_RANK
            && self.canonical
            && self.fresh_points_ok
    }
}

/// Points `(1, a₁, a₂, a₃, a₄)` with distinct small integer `aᵢ`. Longer
/// grids from the same seed extend shorter ones.
pub fn sample_grid(grid_seed: u64, n: usize) -> Vec<Vec<Rat>> {
    let mut rng = ChaCha8Rng::seed_from_u64(grid_seed);
    let mut pool: Vec<i64> = (-6..=6).collect();
    let mut out: Vec<Vec<Rat>> = Vec::with_capacity(n);
    while out.len() < n {
        let (head, _) = pool.partial_shuffle(&mut rng, 4);
        let mut x = vec![int(1)];
        x.extend(head.iter().map(|&a| int(a)));
        if !out.contains(&x) {
            out.push(x);
        }
    }
    out
}

// Rows (sample, r) of `Q_x · Π(x)` as a linear function of Π's coefficients.
fn constraint_matrix(points: &[Vec<Rat>]) -> QMat {
    let quad = monomials(2);
    let mut m = QMat::zeros(6 * points.len(), coeff_dim(2, 2));
    for (s, x) in points.iter().enumerate() {
        let q = quotient_map_at(x).expect("sample point is nonzero");
        let mono: Vec<Rat> = quad
            .iter()
            .map(|e| crate::schouten::Poly::monomial(*e, int(1)).eval(x))
            .collect();
        for r in 0..6 {
            for k in 0..DIM_W2 {
                let qrk = &q[(r, k)];
                if qrk.is_zero() {
                    continue;
                }
                for (mi, mv) in mono.iter().enumerate() {
                    m[(6 * s + r, k * quad.len() + mi)] = qrk * mv;
                }
            }
        }
    }
    m
}

/// The bivector in ∧²ℚ⁴ dual to `φ(u₁) ∧ … ∧ φ(u₅) ∈ ∧⁵(∧²ℚ⁴)` under the
/// wedge pairing, for the basis bivectors `u_t` indexed by `subset`.
fn dual_target(q: &QMat, subset: &[usize]) -> Vec<Rat> {
    let pairs4 = combinations(4, 2);
    let mut out = vec![Rat::zero(); 6];
    for a in 0..6 {
        let rows: Vec<usize> = (0..6).filter(|&r| r != a).collect();
        let delta = minor(q, &rows, subset);
        if delta.is_zero() {
            continue;
        }
        // f_a ∧ ω = (−1)^a Δ_a must equal f_a ∧ β = ε(a, 5−a) β_{5−a}
        let eps = crate::exterior::merge_sign(&pairs4[a], &pairs4[5 - a]);
        let sign = if a % 2 == 0 { eps } else { -eps };
        out[5 - a] = if sign > 0 { delta } else { -delta };
    }
    out
}

fn rhs_matrix(points: &[Vec<Rat>], subsets: &[Vec<usize>]) -> QMat {
    let qs: Vec<QMat> = points
        .iter()
        .map(|x| quotient_map_at(x).expect("sample point is nonzero"))
        .collect();
    let cols: Vec<Vec<Rat>> = subsets
        .par_iter()
        .map(|s| qs.iter().flat_map(|q| dual_target(q, s)).collect())
        .collect();
    QMat::from_columns(6 * points.len(), &cols).expect("column length")
}

pub fn build_pi52(grid_seed: u64, n_samples: usize) -> Result<Pi52Map> {
    let subsets = combinations(DIM_W2, 5);
    let unknowns = coeff_dim(2, 2);
    let reducer = EulerReducer::shared(2);
    let mut n = n_samples;
    let mut hom_rank = 0;
    for _ in 0..=MAX_ESCALATIONS {
        let points = sample_grid(grid_seed, n);
        let m = constraint_matrix(&points);
        let b = rhs_matrix(&points, &subsets);
        let r = rref(&m.hstack(&b)?);
        // a pivot on the right-hand side marks an inconsistent column
        if let Some(&p) = r.pivots.iter().find(|&&p| p >= unknowns) {
            return Err(Error::InconsistentSamples { column: p - unknowns });
        }
        hom_rank = r.rank;
        if hom_rank != EXPECTED_RANK {
            n += ESCALATION_STEP;
            continue;
        }
        let cols: Vec<Vec<Rat>> = (0..subsets.len())
            .into_par_iter()
            .map(|j| {
                let mut sol = vec![Rat::zero(); unknowns];
                for (i, &p) in r.pivots.iter().enumerate() {
                    sol[p] = r.matrix[(i, unknowns + j)].clone();
                }
                reducer.reduce_coeffs(&sol)
            })
            .collect();
        let matrix = QMat::from_columns(unknowns, &cols)?;
        let rk = rank(&matrix);
        if rk != EXPECTED_RANK {
            return Err(Error::RankDeficit { rank: rk });
        }
        return Ok(Pi52Map {
            grid_seed,
            n_samples: n,
            matrix,
            rank: rk,
        });
    }
    Err(Error::RankDeficit { rank: hom_rank })
}

/// `π₅,₂(ξ)` for `ξ ∈ ∧⁵ℚ¹⁰`.
pub fn pi52_apply(map: &Pi52Map, xi: &ExtVec) -> MultivectorClass {
    assert_eq!((xi.ambient_n(), xi.grade()), (DIM_W2, 5), "ξ must lie in ∧⁵Q¹⁰");
    let v = map.matrix.mul_vec(&xi.to_dense()).expect("252 coordinates");
    MultivectorClass::from_canonical(2, v).expect("150 coordinates")
}

impl Pi52Map {
    pub fn grid_seed(&self) -> u64 {
        self.grid_seed
    }

    /// Samples actually used, after any escalation.
    pub fn n_samples(&self) -> usize {
        self.n_samples
    }

    pub fn sample_points(&self) -> Vec<Vec<Rat>> {
        sample_grid(self.grid_seed, self.n_samples)
    }

    pub fn matrix(&self) -> &QMat {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn column(&self, j: usize) -> MultivectorClass {
        MultivectorClass::from_canonical(2, self.matrix.column(j)).expect("150 coordinates")
    }

    /// `ker π₅,₂ ⊂ ℚ²⁵²`.
    pub fn kernel(&self) -> QSubspace {
        kernel(&self.matrix)
    }

    /// Recomputes the rank, checks every column is canonical and satisfies
    /// the defining equations at two points outside the build grid.
    pub fn verify(&self) -> Pi52Verification {
        let rk = rank(&self.matrix);
        let reducer = EulerReducer::shared(2);
        let cols: Vec<Vec<Rat>> = (0..self.matrix.cols()).map(|j| self.matrix.column(j)).collect();
        let canonical = cols.par_iter().all(|c| reducer.reduce_coeffs(c) == *c);
        let fresh = sample_grid(self.grid_seed ^ VERIFY_SALT, 2);
        let m = constraint_matrix(&fresh);
        let b = rhs_matrix(&fresh, &combinations(DIM_W2, 5));
        let fresh_points_ok = m
            .mul(&self.matrix)
            .map(|lhs| lhs == b)
            .unwrap_or(false);
        Pi52Verification {
            rank: rk,
            kernel_dim: self.matrix.cols() - rk,
            canonical,
            fresh_points_ok,
        }
    }

    pub fn to_json(&self) -> Value {
        let columns: Vec<Value> = (0..self.matrix.cols())
            .map(|j| {
                Value::Array(
                    (0..self.matrix.rows())
                        .filter(|&i| !self.matrix[(i, j)].is_zero())
                        .map(|i| json!({"row": i, "coeff": rat_to_json(&self.matrix[(i, j)])}))
                        .collect(),
                )
            })
            .collect();
        json!({
            "grid_seed": self.grid_seed,
            "n_samples": self.n_samples,
            "rank": self.rank,
            "columns": columns,
        })
    }

    /// Loads a persisted map. The stored rank is taken on trust; call
    /// [`Pi52Map::verify`] to recheck it.
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |w: &str| Error::Parse(format!("malformed pi52 {w}"));
        let grid_seed = v["grid_seed"].as_u64().ok_or_else(|| bad("grid_seed"))?;
        let n_samples = v["n_samples"].as_u64().ok_or_else(|| bad("n_samples"))? as usize;
        let rank = v["rank"].as_u64().ok_or_else(|| bad("rank"))? as usize;
        let cols = v["columns"].as_array().ok_or_else(|| bad("columns"))?;
        let rows = coeff_dim(2, 2);
        if cols.len() != DIM_XI {
            return Err(Error::DimensionMismatch {
                expected: DIM_XI,
                got: cols.len(),
            });
        }
        let mut matrix = QMat::zeros(rows, DIM_XI);
        for (j, col) in cols.iter().enumerate() {
            for e in col.as_array().ok_or_else(|| bad("column"))? {
                let i = e["row"].as_u64().ok_or_else(|| bad("row"))? as usize;
                if i >= rows {
                    return Err(bad("row index"));
                }
                matrix[(i, j)] = rat_from_json(&e["coeff"])?;
            }
        }
        Ok(Pi52Map {
            grid_seed,
            n_samples,
            matrix,
            rank,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_is_deterministic_and_nested() {
        let a = sample_grid(7, 12);
        let b = sample_grid(7, 20);
        assert_eq!(a[..], b[..12]);
        for x in &b {
            assert_eq!(x[0], int(1));
            let mut tail: Vec<&Rat> = x[1..].iter().collect();
            tail.sort();
            tail.dedup();
            assert_eq!(tail.len(), 4);
        }
        assert_ne!(sample_grid(8, 3), sample_grid(7, 3));
    }

    #[test]
    fn dual_target_pairs_like_the_wedge() {
        // β is characterized by f_a ∧ β = f_a ∧ ω for every basis bivector f_a
        let x = vec![int(1), int(2), int(-1), int(3), int(0)];
        let q = quotient_map_at(&x).unwrap();
        let s = vec![0, 2, 5, 7, 9];
        let beta = ExtVec::from_dense(4, 2, &dual_target(&q, &s)).unwrap();
        let cols: Vec<Vec<Rat>> = s.iter().map(|&j| q.column(j)).collect();
        let omega = crate::exterior::wedge_vectors(6, &cols);
        for a in 0..6 {
            let mut fa = vec![Rat::zero(); 6];
            fa[a] = int(1);
            let lhs = ExtVec::from_vector(&fa).wedge(&omega).coeff(&[0, 1, 2, 3, 4, 5]);
            let fa4 = ExtVec::from_dense(4, 2, &fa).unwrap();
            let rhs = fa4.wedge(&beta).coeff(&[0, 1, 2, 3]);
            assert_eq!(lhs, rhs);
        }
    }
}

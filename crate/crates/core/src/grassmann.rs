//! G(2,5)-side geometry: seeded test configurations, the distribution
//! `D_Λ = W ∩ (Λ∧V)`, tangent lines of `E_W = G(2,5) ∩ P(W)`, and the
//! subspace `T_W = (∧⁴W)∧(∧²V)` of ∧⁵(∧²V).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::exactq::{int, kernel, QMat, QSubspace, Rat};
use crate::exterior::{
    combinations, is_decomposable, plucker_of_plane, wedge, wedge_vectors, ExtVec, WSubspace,
    DIM_V, DIM_W2, DIM_XI,
};
use crate::json::{rows_from_json, rows_to_json, JsonCodec};

pub const MAX_DRAWS: usize = 1000;
const ENTRY_BOUND: i64 = 3;

/// A 2-plane Λ ⊂ ℚ⁵ together with its Plücker vector.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanePoint {
    plane: QSubspace,
    pluck: ExtVec,
}

impl PlanePoint {
    /// The plane is stored in RREF, so equal planes compare equal.
    pub fn from_vectors(u: &[Rat], v: &[Rat]) -> Result<Self> {
        plucker_of_plane(u, v)?;
        let plane = QSubspace::span(DIM_V, &[u.to_vec(), v.to_vec()])?;
        let b = plane.basis_vectors();
        let pluck = plucker_of_plane(&b[0], &b[1])?;
        Ok(PlanePoint { plane, pluck })
    }

    pub fn plane(&self) -> &QSubspace {
        &self.plane
    }

    pub fn pluck(&self) -> &ExtVec {
        &self.pluck
    }

    pub fn pluck_dense(&self) -> Vec<Rat> {
        self.pluck.to_dense()
    }

    /// `s·λ₁ + t·λ₂` for the RREF basis `λ₁, λ₂`: a point of the line PΛ.
    pub fn point(&self, s: &Rat, t: &Rat) -> Vec<Rat> {
        let b = self.plane.basis_vectors();
        b[0].iter().zip(&b[1]).map(|(x, y)| s * x + t * y).collect()
    }

    /// `Λ∧V ⊂ ∧²ℚ⁵`, the 7-dimensional tangent space of the Plücker cone at Λ.
    pub fn wedge_v(&self) -> QSubspace {
        let mut vs = Vec::with_capacity(2 * DIM_V);
        for l in self.plane.basis_vectors() {
            let lv = ExtVec::from_vector(&l);
            for k in 0..DIM_V {
                vs.push(lv.wedge(&ExtVec::basis(DIM_V, &[k])).to_dense());
            }
        }
        QSubspace::span(DIM_W2, &vs).expect("bivector length")
    }

    fn to_json(&self) -> Value {
        rows_to_json(&self.plane.basis_vectors())
    }

    fn from_json(v: &Value) -> Result<Self> {
        let rows = rows_from_json(v)?;
        match rows.as_slice() {
            [u, w] if u.len() == DIM_V && w.len() == DIM_V => PlanePoint::from_vectors(u, w),
            _ => Err(Error::Parse("plane must be a 2×5 matrix".into())),
        }
    }
}

/// `∧²M` for a subspace M ⊂ ℚ⁵.
pub fn wedge_square(m: &QSubspace) -> QSubspace {
    let b = m.basis_vectors();
    let mut vs = Vec::new();
    for i in 0..b.len() {
        for j in i + 1..b.len() {
            vs.push(wedge_vectors(DIM_V, &[b[i].clone(), b[j].clone()]).to_dense());
        }
    }
    QSubspace::span(DIM_W2, &vs).expect("bivector length")
}

/// Five planes in general position and the span W of their Plücker vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fixture {
    seed: u64,
    planes: Vec<PlanePoint>,
    w: WSubspace,
}

impl Fixture {
    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn planes(&self) -> &[PlanePoint] {
        &self.planes
    }

    pub fn w(&self) -> &WSubspace {
        &self.w
    }

    pub fn to_json(&self) -> Value {
        json!({
            "seed": self.seed,
            "planes": self.planes.iter().map(PlanePoint::to_json).collect::<Vec<_>>(),
            "w_basis": rows_to_json(&self.w.generators()),
        })
    }

    /// Loads a fixture, checking the stored W against the planes.
    pub fn from_json(v: &Value) -> Result<Self> {
        let seed = v["seed"].as_u64().ok_or_else(|| Error::Parse("fixture seed".into()))?;
        let planes = v["planes"]
            .as_array()
            .ok_or_else(|| Error::Parse("fixture planes".into()))?
            .iter()
            .map(PlanePoint::from_json)
            .collect::<Result<Vec<_>>>()?;
        let w = WSubspace::from_json(&json!({"basis": v["w_basis"]}))?;
        let spanned = span_of(&planes)?;
        if spanned != w {
            return Err(Error::Parse("w_basis does not match the planes".into()));
        }
        Ok(Fixture { seed, planes, w })
    }
}

fn span_of(planes: &[PlanePoint]) -> Result<WSubspace> {
    let gens: Vec<Vec<Rat>> = planes.iter().map(PlanePoint::pluck_dense).collect();
    WSubspace::from_vectors(&gens)
}

/// A plane spanned by two vectors with entries in −3..=3; `None` when the
/// draw is degenerate.
pub fn random_plane(rng: &mut ChaCha8Rng) -> Option<PlanePoint> {
    let mut draw = || -> Vec<Rat> {
        (0..DIM_V)
            .map(|_| int(rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND)))
            .collect()
    };
    let (u, v) = (draw(), draw());
    PlanePoint::from_vectors(&u, &v).ok()
}

fn draw_fixture(seed: u64, rng: &mut ChaCha8Rng) -> Option<Fixture> {
    let planes: Vec<PlanePoint> = (0..5).map(|_| random_plane(rng)).collect::<Option<_>>()?;
    for i in 0..5 {
        for j in i + 1..5 {
            if planes[i].pluck.wedge(&planes[j].pluck).is_zero() {
                return None;
            }
        }
    }
    let w = span_of(&planes).ok()?;
    Some(Fixture { seed, planes, w })
}

/// Deterministic fixture: five planes with entries in −3..=3, pairwise
/// meeting only in 0, whose Plücker vectors span a 5-dimensional W.
pub fn make_fixture(seed: u64) -> Result<Fixture> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..MAX_DRAWS)
        .find_map(|_| draw_fixture(seed, &mut rng))
        .ok_or(Error::ExhaustedRetries {
            attempts: MAX_DRAWS,
        })
}

/// A fixture W and a second subspace W′ with `dim(W ∩ W′) = shared`.
#[derive(Clone, Debug)]
pub struct FixturePair {
    pub base: Fixture,
    pub other: WSubspace,
    /// Plane generators of W′; the first `shared` are planes of the fixture.
    pub other_planes: Vec<PlanePoint>,
    pub shared: usize,
}

/// W from `make_fixture(seed)`; W′ spanned by the first `k` fixture
/// generators and `5 − k` fresh decomposable bivectors.
pub fn make_pair_sharing(seed: u64, k: usize) -> Result<FixturePair> {
    if k > 5 {
        return Err(Error::DimensionMismatch {
            expected: 5,
            got: k,
        });
    }
    let base = make_fixture(seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9_7f4a_7c15) ^ k as u64);
    for _ in 0..MAX_DRAWS {
        let mut planes: Vec<PlanePoint> = base.planes[..k].to_vec();
        let Some(fresh) = (k..5).map(|_| random_plane(&mut rng)).collect::<Option<Vec<_>>>() else {
            continue;
        };
        planes.extend(fresh);
        let Ok(other) = span_of(&planes) else {
            continue;
        };
        if base.w.space().meet(other.space()).dim() == k {
            return Ok(FixturePair {
                base,
                other,
                other_planes: planes,
                shared: k,
            });
        }
    }
    Err(Error::ExhaustedRetries {
        attempts: MAX_DRAWS,
    })
}

/// `D_Λ = W ∩ (Λ∧V)`.
pub fn distribution_d(w: &WSubspace, l: &PlanePoint) -> QSubspace {
    w.space().meet(&l.wedge_v())
}

/// Membership in Σ_E: `dim W ∩ (Λ∧V) ≥ 3`.
pub fn in_sigma(w: &WSubspace, l: &PlanePoint) -> bool {
    distribution_d(w, l).dim() >= 3
}

/// The affine tangent line of E_W at Λ: the kernel of the Jacobian of the
/// Plücker quadrics `ω ∧ ω` at `∧²Λ`, intersected with W. Contains `∧²Λ`.
pub fn tangent_line_at(w: &WSubspace, l: &PlanePoint) -> Result<QSubspace> {
    let p = l.pluck();
    if !is_decomposable(p) || !w.contains(&p.to_dense()) {
        return Err(Error::NotOnCurve);
    }
    let quartics = combinations(DIM_V, 4);
    let mut jac = QMat::zeros(quartics.len(), DIM_W2);
    for (k, ij) in combinations(DIM_V, 2).iter().enumerate() {
        let d = wedge(p, &ExtVec::basis(DIM_V, ij));
        for (r, idx) in quartics.iter().enumerate() {
            jac[(r, k)] = d.coeff(idx) * int(2);
        }
    }
    let t = kernel(&jac).meet(w.space());
    if t.dim() != 2 {
        return Err(Error::SingularPoint { dim: t.dim() });
    }
    Ok(t)
}

/// Whether the tangent line of E_W at Λ lies in `D_Λ(W′) + ⟨∧²Λ⟩`.
pub fn tangent_in_distribution(w: &WSubspace, w_prime: &WSubspace, l: &PlanePoint) -> Result<bool> {
    let t = tangent_line_at(w, l)?;
    let target = distribution_d(w_prime, l)
        .join(&QSubspace::span(DIM_W2, &[l.pluck_dense()]).expect("bivector length"));
    Ok(target.contains_subspace(&t))
}

/// `T_W = (∧⁴W) ∧ (∧²V) ⊂ ∧⁵(∧²V) ≅ ℚ²⁵²`.
pub fn t_w_subspace(w: &WSubspace) -> QSubspace {
    let gens = w.generators();
    let mut vs = Vec::with_capacity(5 * DIM_W2);
    for a in 0..gens.len() {
        let others: Vec<Vec<Rat>> = gens
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != a)
            .map(|(_, g)| g.clone())
            .collect();
        let eta = wedge_vectors(DIM_W2, &others);
        for k in 0..DIM_W2 {
            vs.push(wedge(&eta, &ExtVec::basis(DIM_W2, &[k])).to_dense());
        }
    }
    QSubspace::span(DIM_XI, &vs).expect("252 coordinates")
}

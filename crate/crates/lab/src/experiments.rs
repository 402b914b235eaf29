//! The experiments behind each CLI command.
//!
//! Hard checks (`report.check`) are reserved for proven statements; converse
//! and conjecture-level comparisons are reported, or logged as anomalies.

use std::str::FromStr;

use fo52_core::exactq::{int, kernel, QMat, QSubspace, Rat};
use fo52_core::exterior::{WSubspace, DIM_W2};
use fo52_core::fobracket::{
    build_bracket_orthogonality, build_pi52, compatible, degeneracy_quintic, jacobi_class,
    linearize_at, rank_at, zero_locus_equations, FoBracket, Pi52Map,
};
use fo52_core::grassmann::{
    distribution_d, make_fixture, make_pair_sharing, random_plane, t_w_subspace,
    tangent_in_distribution, tangent_line_at, Fixture, MAX_DRAWS,
};
use fo52_core::json::{vec_to_json, JsonCodec};
use fo52_core::schouten::{bracket_class, class_span_dim};
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use crate::report::{timed, ExperimentReport};
use crate::LabError;

/// Sample points on each fixture line, as `(s, t)` in `s·λ₁ + t·λ₂`.
pub const LINE_POINTS: [(i64, i64); 3] = [(1, 1), (2, -1), (1, 3)];

fn line_points(f: &Fixture) -> Vec<(usize, Vec<Rat>)> {
    f.planes()
        .iter()
        .enumerate()
        .flat_map(|(i, l)| LINE_POINTS.iter().map(move |&(s, t)| (i, l.point(&int(s), &int(t)))))
        .collect()
}

fn seeded(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

pub fn jacobi(seed: u64) -> Result<ExperimentReport, LabError> {
    timed(|| {
        let mut r = ExperimentReport::new("jacobi", vec![seed]);
        let f = make_fixture(seed)?;
        let b = build_bracket_orthogonality(f.w())?;
        let zero = jacobi_class(&b)?.is_zero();
        r.result("fixture", f.to_json())
            .result("bracket", b.class().rep().to_json())
            .result("jacobi_class_zero", zero);
        r.check(
            zero,
            format!("JacobiFailure: [Π_W, Π_W] ≠ 0 for seed {seed}; the fixture is degenerate, redraw"),
        );
        Ok(r)
    })
}

pub fn compat(seed: u64, k: usize) -> Result<ExperimentReport, LabError> {
    timed(|| {
        let mut r = ExperimentReport::new("compat", vec![seed]);
        r.param("k", k);
        let pair = make_pair_sharing(seed, k)?;
        let a = build_bracket_orthogonality(pair.base.w())?;
        let b = build_bracket_orthogonality(&pair.other)?;
        let zero = compatible(&a, &b)?;
        let meet = pair.base.w().space().meet(pair.other.space()).dim();
        r.result("dim_intersection", meet)
            .result("bracket_class_zero", zero);
        if k >= 4 {
            r.check(zero, format!("dim(W∩W′) = {k} but [Π_W, Π_W′] ≠ 0"));
        } else {
            r.expect(!zero, format!("dim(W∩W′) = {k} but [Π_W, Π_W′] = 0"));
        }
        Ok(r)
    })
}

pub fn conjecture_d(seed: u64, map: &Pi52Map) -> Result<ExperimentReport, LabError> {
    timed(|| {
        let mut r = ExperimentReport::new("conjecture-d", vec![seed]);
        r.param("grid_seed", map.grid_seed());
        if map.rank() != 126 {
            return Err(LabError::Input(format!("pi52 matrix has rank {}", map.rank())));
        }
        let f = make_fixture(seed)?;
        let b = build_bracket_orthogonality(f.w())?;
        let l = bracket_map(map, &b)?;
        let ker_l = kernel(&l);
        let ker_pi = map.kernel();
        let t_w = t_w_subspace(f.w());
        let lhs = t_w.join(&ker_pi);
        let inclusion = ker_l.contains_subspace(&lhs);
        let equality = inclusion && ker_l.dim() == lhs.dim();
        r.result("dim_ker_pi52", ker_pi.dim())
            .result("dim_t_w", t_w.dim())
            .result("dim_t_w_cap_ker_pi52", t_w.meet(&ker_pi).dim())
            .result("dim_t_w_plus_ker_pi52", lhs.dim())
            .result("rank_l", l.cols() - ker_l.dim())
            .result("dim_ker_l", ker_l.dim())
            .result("inclusion", inclusion)
            .result("equality", equality);
        r.check(inclusion, "T_W + ker π₅,₂ ⊄ ker L");
        r.note(if equality {
            "equality holds: evidence for the conjecture at this W"
        } else {
            "equality fails: ker L is strictly larger at this W"
        });
        Ok(r)
    })
}

/// `L : ℚ²⁵² → trivector classes`, `ξ ↦ [π₅,₂(ξ), Π_W]`, as a 350×252 matrix.
pub fn bracket_map(map: &Pi52Map, b: &FoBracket) -> Result<QMat, LabError> {
    let cols: Vec<Vec<Rat>> = (0..map.matrix().cols())
        .into_par_iter()
        .map(|j| {
            bracket_class(map.column(j).rep(), b.class().rep()).map(|c| c.coeffs().to_vec())
        })
        .collect::<Result<_, _>>()?;
    Ok(QMat::from_columns(cols[0].len(), &cols)?)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    /// Five-dimensional subspaces of a fixed six-dimensional U.
    U6,
    /// Five-dimensional subspaces containing a fixed four-dimensional K.
    K4,
}

impl FromStr for Family {
    type Err = LabError;

    fn from_str(s: &str) -> Result<Self, LabError> {
        match s {
            "U6" | "u6" => Ok(Family::U6),
            "K4" | "k4" => Ok(Family::K4),
            _ => Err(LabError::Input(format!("unknown family {s:?} (expected U6 or K4)"))),
        }
    }
}

impl Family {
    pub fn tag(self) -> &'static str {
        match self {
            Family::U6 => "U6",
            Family::K4 => "K4",
        }
    }
}

fn random_entries(rng: &mut ChaCha8Rng, n: usize) -> Vec<Rat> {
    (0..n).map(|_| int(rng.gen_range(-3..=3))).collect()
}

fn combine(coeffs: &[Rat], basis: &[Vec<Rat>]) -> Vec<Rat> {
    let mut out = vec![Rat::zero(); DIM_W2];
    for (c, b) in coeffs.iter().zip(basis) {
        for (o, x) in out.iter_mut().zip(b) {
            *o += c * x;
        }
    }
    out
}

fn span_family_members(
    seed: u64,
    family: Family,
    n: usize,
) -> Result<(QSubspace, Vec<FoBracket>, usize), LabError> {
    let mut rng = seeded(seed, 0x5a5a + family as u64);
    let (ambient, basis) = match family {
        Family::U6 => {
            let mut found = None;
            for _ in 0..MAX_DRAWS {
                let gens: Option<Vec<Vec<Rat>>> =
                    (0..6).map(|_| random_plane(&mut rng).map(|p| p.pluck_dense())).collect();
                if let Some(g) = gens {
                    let u = QSubspace::span(DIM_W2, &g)?;
                    if u.dim() == 6 {
                        found = Some(u);
                        break;
                    }
                }
            }
            let u = found.ok_or(fo52_core::Error::ExhaustedRetries { attempts: MAX_DRAWS })?;
            let b = u.basis_vectors();
            (u, b)
        }
        Family::K4 => {
            let f = make_fixture(seed)?;
            let gens: Vec<Vec<Rat>> = f.planes()[..4].iter().map(|p| p.pluck_dense()).collect();
            let k = QSubspace::span(DIM_W2, &gens)?;
            let b = k.basis_vectors();
            (k, b)
        }
    };
    let mut members = Vec::with_capacity(n);
    let mut redraws = 0;
    while members.len() < n {
        if redraws > MAX_DRAWS {
            return Err(fo52_core::Error::ExhaustedRetries { attempts: MAX_DRAWS }.into());
        }
        let vectors: Vec<Vec<Rat>> = match family {
            Family::U6 => (0..5).map(|_| combine(&random_entries(&mut rng, 6), &basis)).collect(),
            Family::K4 => {
                let mut v = basis.clone();
                v.push(random_entries(&mut rng, DIM_W2));
                v
            }
        };
        let Ok(w) = WSubspace::from_vectors(&vectors) else {
            redraws += 1;
            continue;
        };
        match build_bracket_orthogonality(&w) {
            Ok(b) => members.push(b),
            Err(fo52_core::Error::DegenerateW { .. }) => redraws += 1,
            Err(e) => return Err(e.into()),
        }
    }
    Ok((ambient, members, redraws))
}

pub fn span(seed: u64, family: Family, n: usize) -> Result<ExperimentReport, LabError> {
    timed(|| {
        let mut r = ExperimentReport::new("span", vec![seed]);
        r.param("family", family.tag()).param("n", n);
        if n == 0 {
            return Err(LabError::Input("--n must be positive".into()));
        }
        let (ambient, members, redraws) = span_family_members(seed, family, n)?;
        let pairs: Vec<(usize, usize)> =
            (0..n).flat_map(|i| (i..n).map(move |j| (i, j))).collect();
        let results: Vec<((usize, usize), bool)> = pairs
            .par_iter()
            .map(|&(i, j)| compatible(&members[i], &members[j]).map(|z| ((i, j), z)))
            .collect::<Result<_, _>>()?;
        let incompatible: Vec<(usize, usize)> =
            results.iter().filter(|(_, z)| !z).map(|(p, _)| *p).collect();
        let classes: Vec<_> = members.iter().map(|b| b.class().clone()).collect();
        let dim = class_span_dim(&classes);
        for (i, b) in members.iter().enumerate() {
            r.row(json!({"trial": i, "w_basis": b.w().generators().iter().map(|g| vec_to_json(g)).collect::<Vec<_>>()}));
        }
        r.result("ambient_dim", ambient.dim())
            .result("redraws", redraws)
            .result("pairs_checked", results.len())
            .result("incompatible_pairs", json!(incompatible))
            .result("all_compatible", incompatible.is_empty())
            .result("span_dim", dim);
        r.check(incompatible.is_empty(), format!("{} incompatible pairs", incompatible.len()));
        r.check(dim <= 6, format!("span dimension {dim} > 6"));
        if family == Family::U6 && n >= 6 {
            r.expect(dim == 6, format!("span dimension {dim} < 6 for a 6-dim U"));
        }
        Ok(r)
    })
}

fn random_point(rng: &mut ChaCha8Rng) -> Vec<Rat> {
    loop {
        let v: Vec<Rat> = (0..5).map(|_| int(rng.gen_range(-5..=5))).collect();
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

pub fn stratify(seed: u64, points: usize) -> Result<ExperimentReport, LabError> {
    timed(|| {
        let mut r = ExperimentReport::new("stratify", vec![seed]);
        r.param("points", points);
        let f = make_fixture(seed)?;
        let b = build_bracket_orthogonality(f.w())?;
        let q = degeneracy_quintic(&b);
        let cubics = zero_locus_equations(&b);
        r.result("quintic_degree", q.degree())
            .result("quintic_terms", q.num_terms());
        r.check(q.degree() == Some(5) && q.is_homogeneous(), "quintic is not a nonzero quintic form");
        let mut rng = seeded(seed, 0x57a7);
        let mut samples: Vec<(String, Vec<Rat>)> =
            (0..points).map(|_| ("random".to_string(), random_point(&mut rng))).collect();
        samples.extend(line_points(&f).into_iter().map(|(i, v)| (format!("line{i}"), v)));
        let mut counts = [0usize; 5];
        for (kind, v) in &samples {
            let rank = rank_at(&b, v)?;
            counts[rank] += 1;
            let q_zero = q.eval(v).is_zero();
            let c_zero = cubics.iter().all(|c| c.eval(v).is_zero());
            r.check((rank <= 2) == q_zero, format!("rank {rank} vs quintic at {}", show(v)));
            r.check((rank == 0) == c_zero, format!("rank {rank} vs cubics at {}", show(v)));
            if kind != "random" {
                r.check(rank == 0, format!("line point {} has rank {rank}", show(v)));
            }
            r.row(json!({"kind": kind, "point": show(v), "rank": rank, "quintic_zero": q_zero, "cubics_zero": c_zero}));
        }
        r.result("rank0", counts[0]).result("rank2", counts[2]).result("rank4", counts[4]);
        Ok(r)
    })
}

fn show(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(fo52_core::exactq::fmt_rat).collect();
    format!("({})", parts.join(":"))
}

/// Ad-direction candidates for the discriminant check.
const H_CANDIDATES: [[i64; 4]; 3] = [[1, 2, -3, 5], [2, -1, 4, 1], [3, 1, 1, -2]];

pub fn linearize(seed: u64) -> Result<ExperimentReport, LabError> {
    timed(|| {
        let mut r = ExperimentReport::new("linearize", vec![seed]);
        let f = make_fixture(seed)?;
        let b = build_bracket_orthogonality(f.w())?;
        for (line, v) in line_points(&f) {
            let g = linearize_at(&b, &v)?;
            let d = g.derived_subalgebra();
            let abelian = g.is_abelian_subspace(&d);
            let disc_nonzero = H_CANDIDATES.iter().any(|h| {
                let h: Vec<Rat> = h.iter().map(|&x| int(x)).collect();
                g.ad_discriminant(&h, &d).is_some_and(|x| !x.is_zero())
            });
            r.check(g.is_antisymmetric() && g.satisfies_jacobi(), format!("linearization at {} is not a Lie algebra", show(&v)));
            r.check(d.dim() == 2 && abelian, format!("derived subalgebra at {} has dim {}, abelian {abelian}", show(&v), d.dim()));
            r.expect(disc_nonzero, format!("ad(h) on [g,g] has zero discriminant for all candidates at {}", show(&v)));
            r.row(json!({"line": line, "point": show(&v), "derived_dim": d.dim(), "abelian": abelian, "ad_discriminant_nonzero": disc_nonzero}));
        }
        Ok(r)
    })
}

pub fn tangency(seed: u64) -> Result<ExperimentReport, LabError> {
    timed(|| {
        let mut r = ExperimentReport::new("tangency", vec![seed]);
        let pair = make_pair_sharing(seed, 4)?;
        let (w, w2) = (pair.base.w(), &pair.other);
        for (i, l) in pair.base.planes().iter().enumerate() {
            let d = distribution_d(w, l).dim();
            let t = tangent_line_at(w, l)?.dim();
            r.check(d <= 2, format!("dim W ∩ (Λ{i}∧V) = {d} > 2"));
            r.row(json!({"plane": i, "dim_d": d, "tangent_dim": t}));
        }
        let p = &pair.base.planes()[4];
        let on_other = w2.contains(&p.pluck_dense());
        r.check(!on_other, "the non-shared point also lies on E_W′");
        let inside = tangent_in_distribution(w, w2, p)?;
        r.result("point_on_other_curve", on_other)
            .result("dim_d_other", distribution_d(w2, p).dim())
            .result("tangent_in_distribution", inside);
        r.check(inside, "T_pE_W ⊄ D_p(W′) + ⟨p⟩");
        // with only three shared generators nothing forces the inclusion
        let control = make_pair_sharing(seed, 3)?;
        let c_inside = tangent_in_distribution(control.base.w(), &control.other, &control.base.planes()[4])?;
        r.result("control_k3_tangent_in_distribution", c_inside);
        Ok(r)
    })
}

pub fn pi52_build(grid_seed: u64, samples: usize) -> Result<(Pi52Map, ExperimentReport), LabError> {
    let mut out = None;
    let report = timed(|| {
        let mut r = ExperimentReport::new("pi52-build", vec![grid_seed]);
        r.param("n_samples_requested", samples);
        let map = build_pi52(grid_seed, samples)?;
        let v = map.verify();
        pi52_results(&mut r, &map, &v);
        out = Some(map);
        Ok(r)
    })?;
    Ok((out.expect("set on success"), report))
}

pub fn pi52_verify(map: &Pi52Map) -> Result<ExperimentReport, LabError> {
    timed(|| {
        let mut r = ExperimentReport::new("pi52-verify", vec![map.grid_seed()]);
        let v = map.verify();
        r.check(v.rank == map.rank(), format!("stored rank {} but recomputed {}", map.rank(), v.rank));
        pi52_results(&mut r, map, &v);
        Ok(r)
    })
}

fn pi52_results(r: &mut ExperimentReport, map: &Pi52Map, v: &fo52_core::fobracket::Pi52Verification) {
    r.result("n_samples", map.n_samples())
        .result("rank", v.rank)
        .result("kernel_dim", v.kernel_dim)
        .result("canonical", v.canonical)
        .result("fresh_points_ok", v.fresh_points_ok);
    r.check(v.passed(), format!("verification failed: {v:?}"));
}

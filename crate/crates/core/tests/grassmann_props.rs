use std::sync::OnceLock;

use fo52_core::exactq::{int, QSubspace, Rat};
use fo52_core::exterior::{is_decomposable, wedge, ExtVec, DIM_V, DIM_W2, DIM_XI};
use fo52_core::fobracket::{build_bracket_orthogonality, build_pi52, pi52_apply, Pi52Map};
use fo52_core::grassmann::{
    distribution_d, in_sigma, make_fixture, make_pair_sharing, random_plane, t_w_subspace, tangent_line_at,
    Fixture, PlanePoint,
};
use fo52_core::schouten::bracket_class;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn vector() -> impl Strategy<Value = Vec<Rat>> {
    proptest::collection::vec(-3i64..=3, DIM_V).prop_map(|v| v.into_iter().map(int).collect())
}

fn fixture(seed: u64) -> Fixture {
    make_fixture(seed).unwrap()
}

#[test]
fn fixture_generators_are_decomposable() {
    let f = fixture(1);
    assert_eq!(f.w().space().dim(), 5);
    assert!(f.planes().iter().all(|p| is_decomposable(p.pluck())));
    let again = Fixture::from_json(&f.to_json()).unwrap();
    assert_eq!(again.w().plucker(), f.w().plucker());
}

#[test]
fn pair_sharing_dimensions() {
    let p5 = make_pair_sharing(2, 5).unwrap();
    assert_eq!(p5.other.space(), p5.base.w().space());
    let p4 = make_pair_sharing(2, 4).unwrap();
    assert_eq!(p4.base.w().space().join(p4.other.space()).dim(), 6);
    let p0 = make_pair_sharing(2, 0).unwrap();
    assert_eq!(p0.base.w().space().meet(p0.other.space()).dim(), 0);
    assert!(make_pair_sharing(2, 6).is_err());
}

#[test]
fn distribution_at_fixture_points_and_random_planes() {
    for seed in 1..=5 {
        let f = fixture(seed);
        for p in f.planes() {
            assert!(distribution_d(f.w(), p).dim() <= 2);
            assert!(!in_sigma(f.w(), p));
            assert_eq!(tangent_line_at(f.w(), p).unwrap().dim(), 2);
        }
    }
    let f = fixture(1);
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut generic = 0;
    for _ in 0..20 {
        let Some(l) = random_plane(&mut rng) else { continue };
        assert!(!in_sigma(f.w(), &l));
        generic += usize::from(distribution_d(f.w(), &l).dim() == 2);
    }
    assert!(generic >= 15);
}

#[test]
fn w_meets_wedge_square_of_a_three_space_in_the_plane() {
    let f = fixture(3);
    let l = &f.planes()[0];
    let gens = l.plane().basis_vectors();
    let mut third = vec![int(0); DIM_V];
    third[4] = int(1);
    third[2] = int(2);
    let m = QSubspace::span(DIM_V, &[gens[0].clone(), gens[1].clone(), third]).unwrap();
    let sq = fo52_core::grassmann::wedge_square(&m);
    let line = QSubspace::span(DIM_W2, &[l.pluck_dense()]).unwrap();
    assert_eq!(f.w().space().meet(&sq), line);
}

#[test]
fn t_w_contains_wedge_five_and_lies_in_the_compatible_set() {
    static MAP: OnceLock<Pi52Map> = OnceLock::new();
    let map = MAP.get_or_init(|| build_pi52(1, 30).unwrap());
    let f = fixture(1);
    let t = t_w_subspace(f.w());
    assert_eq!(t.dim(), 26);
    assert!(t.contains(&f.w().plucker().to_dense()));
    let b = build_bracket_orthogonality(f.w()).unwrap();
    for v in t.basis_vectors() {
        let c = pi52_apply(map, &ExtVec::from_dense(DIM_W2, 5, &v).unwrap());
        assert!(bracket_class(c.rep(), b.class().rep()).unwrap().is_zero());
    }
    assert_eq!(t.ambient_dim(), DIM_XI);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn plane_points_satisfy_plucker_quadrics(u in vector(), v in vector()) {
        if let Ok(l) = PlanePoint::from_vectors(&u, &v) {
            prop_assert!(wedge(l.pluck(), l.pluck()).is_zero());
        }
    }

    #[test]
    fn plucker_in_distribution_means_on_curve(u in vector(), v in vector(), seed in 1u64..=5) {
        let Ok(l) = PlanePoint::from_vectors(&u, &v) else { return Ok(()) };
        let f = fixture(seed);
        let d = distribution_d(f.w(), &l);
        prop_assert_eq!(d.contains(&l.pluck_dense()), f.w().contains(&l.pluck_dense()));
    }

    #[test]
    fn tangent_line_ignores_plane_basis(a in -3i64..=3, b in 1i64..=3, c in -3i64..=3, idx in 0usize..5, seed in 1u64..=5) {
        let f = fixture(seed);
        let l = &f.planes()[idx];
        let g = l.plane().basis_vectors();
        // (u, v) ↦ (b·u + a·v, c·u + v) is invertible when b ≠ a·c
        prop_assume!(b != a * c);
        let u2: Vec<Rat> = g[0].iter().zip(&g[1]).map(|(x, y)| x * int(b) + y * int(a)).collect();
        let v2: Vec<Rat> = g[0].iter().zip(&g[1]).map(|(x, y)| x * int(c) + y).collect();
        let l2 = PlanePoint::from_vectors(&u2, &v2).unwrap();
        prop_assert_eq!(tangent_line_at(f.w(), l).unwrap(), tangent_line_at(f.w(), &l2).unwrap());
    }
}

use fo52_core::exactq::{int, kernel, rank, QMat, QSubspace, Rat};
use fo52_core::exterior::{
    induced_wedge_map, is_decomposable, plucker_of_plane, quotient_map_at, vol5, wedge, wedge_vectors, ExtVec,
    WSubspace, DIM_V, DIM_W2,
};
use proptest::prelude::*;

fn e(i: usize) -> Vec<Rat> {
    let mut v = vec![int(0); DIM_V];
    v[i] = int(1);
    v
}

fn bv(i: usize, j: usize) -> ExtVec {
    ExtVec::basis(DIM_V, &[i, j])
}

fn ext(n: usize, k: usize) -> impl Strategy<Value = ExtVec> {
    let dim = fo52_core::exterior::binomial(n, k);
    proptest::collection::vec(-3i64..=3, dim).prop_map(move |c| {
        let c: Vec<Rat> = c.into_iter().map(int).collect();
        ExtVec::from_dense(n, k, &c).unwrap()
    })
}

fn vector() -> impl Strategy<Value = Vec<Rat>> {
    proptest::collection::vec(-4i64..=4, DIM_V).prop_map(|v| v.into_iter().map(int).collect())
}

#[test]
fn wedge_examples() {
    assert_eq!(wedge(&bv(0, 1), &bv(2, 3)), ExtVec::basis(DIM_V, &[0, 1, 2, 3]));
    assert!(wedge(&bv(0, 1), &bv(1, 2)).is_zero());
    let w = bv(0, 1).add(&bv(2, 3));
    assert_eq!(wedge(&w, &w), ExtVec::basis(DIM_V, &[0, 1, 2, 3]).scale(&int(2)));
}

#[test]
fn vol5_examples() {
    assert_eq!(vol5(&ExtVec::basis(DIM_V, &[0, 1, 2, 3, 4])).unwrap(), int(1));
    let degenerate = wedge_vectors(DIM_V, &[e(0), e(1), e(2), e(3), e(3)]);
    assert_eq!(vol5(&degenerate).unwrap(), int(0));
    let w = wedge(&wedge(&bv(0, 1), &bv(2, 3)), &ExtVec::from_vector(&e(4)));
    assert_eq!(vol5(&w).unwrap(), int(1));
}

#[test]
fn plucker_examples() {
    assert_eq!(plucker_of_plane(&e(0), &e(1)).unwrap(), bv(0, 1));
    let u: Vec<Rat> = e(0).iter().zip(e(1)).map(|(a, b)| a + b).collect();
    assert_eq!(plucker_of_plane(&u, &e(1)).unwrap(), bv(0, 1));
    assert!(is_decomposable(&bv(0, 1)));
    assert!(!is_decomposable(&bv(0, 1).add(&bv(2, 3))));
}

#[test]
fn induced_map_examples() {
    assert_eq!(induced_wedge_map(&QMat::identity(4), 2), QMat::identity(6));
    let f = QMat::from_i64(4, 4, &[2, 1, 0, 3, -1, 4, 1, 0, 0, 2, 5, 1, 1, 0, -2, 3]);
    assert_eq!(induced_wedge_map(&f, 1), f);
    let top = induced_wedge_map(&f, 4);
    assert_eq!((top.rows(), top.cols()), (1, 1));
    assert_eq!(top[(0, 0)], f.det().unwrap());
}

#[test]
fn quotient_map_at_e0() {
    let q = quotient_map_at(&e(0)).unwrap();
    let mut expected = QMat::zeros(6, DIM_W2);
    // e_{0j} ↦ 0 and e_{ij} ↦ ē_{ij}: the last six pairs map to the identity
    for r in 0..6 {
        expected[(r, 4 + r)] = int(1);
    }
    assert_eq!(q, expected);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn graded_commutativity(a in ext(5, 2), b in ext(5, 1), c in ext(5, 3)) {
        prop_assert_eq!(wedge(&a, &b), wedge(&b, &a));
        prop_assert_eq!(wedge(&b, &c), wedge(&c, &b).scale(&int(-1)));
        prop_assert_eq!(wedge(&a, &c), wedge(&c, &a));
    }

    #[test]
    fn associativity(a in ext(6, 1), b in ext(6, 2), c in ext(6, 2)) {
        prop_assert_eq!(wedge(&wedge(&a, &b), &c), wedge(&a, &wedge(&b, &c)));
    }

    #[test]
    fn wedge_power_functoriality(
        f in proptest::collection::vec(-3i64..=3, 20),
        g in proptest::collection::vec(-3i64..=3, 20),
        k in 1usize..=4,
    ) {
        let f = QMat::from_i64(4, 5, &f);
        let g = QMat::from_i64(5, 4, &g);
        let lhs = induced_wedge_map(&f.mul(&g).unwrap(), k);
        let rhs = induced_wedge_map(&f, k).mul(&induced_wedge_map(&g, k)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn plucker_of_plane_is_decomposable(u in vector(), v in vector()) {
        if let Ok(p) = plucker_of_plane(&u, &v) {
            prop_assert!(is_decomposable(&p));
        }
    }

    #[test]
    fn plucker_is_basis_invariant(gens in proptest::collection::vec(-3i64..=3, 50),
                                  mix in proptest::collection::vec(-2i64..=2, 25)) {
        let gens: Vec<Vec<Rat>> = gens.chunks(DIM_W2).map(|c| c.iter().map(|&x| int(x)).collect()).collect();
        let m = QMat::from_i64(5, 5, &mix);
        prop_assume!(rank(&m) == 5);
        let Ok(w) = WSubspace::from_vectors(&gens) else { return Ok(()) };
        let mixed: Vec<Vec<Rat>> = (0..5)
            .map(|i| {
                (0..DIM_W2)
                    .map(|c| (0..5).map(|j| &m[(i, j)] * &gens[j][c]).sum())
                    .collect()
            })
            .collect();
        let w2 = WSubspace::from_vectors(&mixed).unwrap();
        prop_assert!(w.plucker().projectively_equal(&wedge_vectors(DIM_W2, &mixed)));
        prop_assert_eq!(w.plucker(), w2.plucker());
    }

    #[test]
    fn quotient_map_kills_x_wedge_v(x in vector()) {
        prop_assume!(x.iter().any(|c| *c != int(0)));
        let q = quotient_map_at(&x).unwrap();
        prop_assert_eq!(rank(&q), 6);
        let xv: Vec<Vec<Rat>> = (0..DIM_V)
            .map(|i| wedge(&ExtVec::from_vector(&x), &ExtVec::from_vector(&e(i))).to_dense())
            .collect();
        for v in &xv {
            prop_assert!(q.mul_vec(v).unwrap().iter().all(|c| *c == int(0)));
        }
        prop_assert_eq!(kernel(&q), QSubspace::span(DIM_W2, &xv).unwrap());
    }
}

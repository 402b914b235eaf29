use fo52_core::exactq::{int, QMat, Rat};
use fo52_core::exterior::{combinations, minor, DIM_V};
use fo52_core::schouten::{
    class_is_zero, class_span_dim, coeff_dim, euler_reduce, lie_derivative, monomials, mv_wedge,
    poisson_of_functions, schouten_bracket, EulerReducer, MultivectorClass, Poly, PolyMultivector,
};
use proptest::prelude::*;
use proptest::strategy::ValueTree;

fn coeffs(n: usize) -> impl Strategy<Value = Vec<Rat>> {
    proptest::collection::vec(-3i64..=3, n).prop_map(|v| v.into_iter().map(int).collect())
}

fn quad_bivector() -> impl Strategy<Value = PolyMultivector> {
    coeffs(coeff_dim(2, 2)).prop_map(|c| PolyMultivector::from_coeff_vec(2, 2, &c).unwrap())
}

fn matrix5() -> impl Strategy<Value = Vec<Vec<Rat>>> {
    coeffs(25).prop_map(|c| c.chunks(5).map(<[Rat]>::to_vec).collect())
}

fn x_wedge_ax(a: &[Vec<Rat>]) -> PolyMultivector {
    mv_wedge(&PolyMultivector::euler(), &PolyMultivector::linear_vector_field(a))
}

// ⟨T, df∧dg∧dh⟩ for linear f, g, h with coefficient rows a, b, c.
fn pair3(t: &PolyMultivector, a: &[Rat], b: &[Rat], c: &[Rat]) -> Poly {
    let m = QMat::new(3, DIM_V, [a, b, c].concat()).unwrap();
    let mut out = Poly::zero();
    for (idx, p) in t.components() {
        out = out.add(&p.scale(&minor(&m, &[0, 1, 2], idx.indices())));
    }
    out
}

fn jacobiator(p: &PolyMultivector, f: &Poly, g: &Poly, h: &Poly) -> Poly {
    let pb = |u: &Poly, v: &Poly| poisson_of_functions(p, u, v).unwrap();
    pb(f, &pb(g, h)).add(&pb(g, &pb(h, f))).add(&pb(h, &pb(f, g)))
}

#[test]
fn poisson_examples() {
    let p = PolyMultivector::from_components(2, 0, [(vec![0, 1], Poly::constant(int(1)))]).unwrap();
    assert_eq!(poisson_of_functions(&p, &Poly::var(0), &Poly::var(1)).unwrap(), Poly::constant(int(1)));
    let f = Poly::var(2).add(&Poly::var(0));
    assert!(poisson_of_functions(&p, &f, &f).unwrap().is_zero());
}

#[test]
fn euler_dimension_table() {
    let dims: Vec<_> = (2..=4)
        .map(|g| {
            let r = EulerReducer::build(g);
            (r.ambient_dim(), r.trivial_dim(), r.class_dim())
        })
        .collect();
    assert_eq!(dims, [(150, 24, 126), (350, 126, 224), (350, 224, 126)]);
}

#[test]
fn x0_squared_bivector_is_nontrivial() {
    let mut e = [0u8; 5];
    e[0] = 2;
    let m = PolyMultivector::from_components(2, 2, [(vec![1, 2], Poly::monomial(e, int(1)))]).unwrap();
    let c = euler_reduce(&m, EulerReducer::shared(2)).unwrap();
    assert!(!class_is_zero(&c));
    assert_eq!(class_span_dim(std::slice::from_ref(&c)), 1);
    assert_eq!(class_span_dim(&[c.clone(), c.scale(&int(3))]), 1);
}

#[test]
fn monomial_table_sizes() {
    assert_eq!(monomials(2).len(), 15);
    assert_eq!(monomials(3).len(), 35);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn convention_lock(p in quad_bivector(), a in coeffs(5), b in coeffs(5), c in coeffs(5)) {
        let pp = schouten_bracket(&p, &p).unwrap();
        let (f, g, h) = (Poly::linear(&a), Poly::linear(&b), Poly::linear(&c));
        prop_assert_eq!(pair3(&pp, &a, &b, &c), jacobiator(&p, &f, &g, &h).scale(&int(2)));
    }

    #[test]
    fn mixed_bracket_pairs_with_mixed_jacobiator(
        p in quad_bivector(), q in quad_bivector(), a in coeffs(5), b in coeffs(5), c in coeffs(5),
    ) {
        // polarize the locked convention: [p,q] = ([p+q,p+q] − [p,p] − [q,q]) / 2
        let pq = schouten_bracket(&p, &q).unwrap();
        let (f, g, h) = (Poly::linear(&a), Poly::linear(&b), Poly::linear(&c));
        let s = p.add(&q);
        let mixed = jacobiator(&s, &f, &g, &h)
            .sub(&jacobiator(&p, &f, &g, &h))
            .sub(&jacobiator(&q, &f, &g, &h));
        prop_assert_eq!(pair3(&pq, &a, &b, &c), mixed);
    }

    #[test]
    fn bracket_is_symmetric_and_bilinear(p in quad_bivector(), q in quad_bivector(), r in quad_bivector(), s in -3i64..=3) {
        let pq = schouten_bracket(&p, &q).unwrap();
        prop_assert_eq!(&pq, &schouten_bracket(&q, &p).unwrap());
        let lhs = schouten_bracket(&p.scale(&int(s)).add(&r), &q).unwrap();
        let rhs = pq.scale(&int(s)).add(&schouten_bracket(&r, &q).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn bracket_descends_to_classes(a in matrix5(), p in quad_bivector()) {
        let t = schouten_bracket(&x_wedge_ax(&a), &p).unwrap();
        prop_assert!(class_is_zero(&euler_reduce(&t, EulerReducer::shared(3)).unwrap()));
    }

    #[test]
    fn trivial_bivectors_reduce_to_zero(a in matrix5()) {
        prop_assert!(class_is_zero(&euler_reduce(&x_wedge_ax(&a), EulerReducer::shared(2)).unwrap()));
    }

    #[test]
    fn reduction_is_idempotent_and_shift_invariant(p in quad_bivector(), a in matrix5()) {
        let r = EulerReducer::shared(2);
        let c = euler_reduce(&p, r).unwrap();
        prop_assert_eq!(&euler_reduce(c.rep(), r).unwrap(), &c);
        prop_assert_eq!(&euler_reduce(&p.add(&x_wedge_ax(&a)), r).unwrap(), &c);
        prop_assert_eq!(&MultivectorClass::from_coeffs(2, c.coeffs()).unwrap(), &c);
    }

    #[test]
    fn euler_field_preserves_degree_equals_grade(p in quad_bivector()) {
        prop_assert!(lie_derivative(&PolyMultivector::euler(), &p).unwrap().is_zero());
    }

    #[test]
    fn poisson_output_is_quadratic(p in quad_bivector(), a in coeffs(5), b in coeffs(5)) {
        let out = poisson_of_functions(&p, &Poly::linear(&a), &Poly::linear(&b)).unwrap();
        prop_assert!(out.is_zero() || (out.degree() == Some(2) && out.is_homogeneous()));
    }
}

#[test]
fn wedge_square_matches_pfaffian_sums() {
    // (P∧P)^{ijkl} = 2 (P^{ij}P^{kl} − P^{ik}P^{jl} + P^{il}P^{jk})
    let mut runner = proptest::test_runner::TestRunner::deterministic();
    for _ in 0..8 {
        let p = quad_bivector().new_tree(&mut runner).unwrap().current();
        let pp = mv_wedge(&p, &p);
        for q in combinations(DIM_V, 4) {
            let c = |a: usize, b: usize| p.component(&[q[a], q[b]]);
            let expected = c(0, 1).mul(&c(2, 3)).sub(&c(0, 2).mul(&c(1, 3))).add(&c(0, 3).mul(&c(1, 2)));
            assert_eq!(pp.component(&q), expected.scale(&int(2)));
        }
    }
}

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trains::groups::sample::cayley_sample;
use trains::groups::{FiniteSupportOperator, GroupKind, PairDescriptor};
use trains::relations::{relation_compose, LinearRelation};
use trains::repharness::{fixed_subspace_cached, rho, TensorRep};
use trains::suites::sample_gl;
use trains::train::{char_dims_ok, coset_compose, coset_eq, coset_invariants, DoubleCoset};
use trains::{Field, Matrix, Scalar, Subspace};

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Matrix> {
    prop::collection::vec(-3i64..=3, rows * cols).prop_map(move |v| {
        Matrix::from_fn(Field::Rat, rows, cols, |r, c| Scalar::from_int(Field::Rat, v[r * cols + c]))
    })
}

fn gl(seed: u64, n: usize) -> FiniteSupportOperator {
    sample_gl(&mut ChaCha8Rng::seed_from_u64(seed), n, 2)
}

fn coset(seed: u64, beta: usize, alpha: usize, support: usize) -> DoubleCoset {
    DoubleCoset::classical(GroupKind::GlR, beta, alpha, gl(seed, support).core().clone()).unwrap()
}

fn relation(seed: u64, dom: usize, cod: usize) -> LinearRelation {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let k = rand::Rng::random_range(&mut rng, 0..=dom + cod);
    let m = Matrix::from_fn(Field::Rat, k, dom + cod, |_, _| {
        Scalar::from_int(Field::Rat, rand::Rng::random_range(&mut rng, -2..=2))
    });
    LinearRelation::new(dom, cod, Subspace::row_space(&m)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 48, ..ProptestConfig::default() })]

    #[test]
    fn rref_is_idempotent_and_keeps_row_space(m in int_matrix(3, 4)) {
        let (r, pivots) = m.rref();
        let (rr, pivots2) = r.rref();
        prop_assert_eq!(&r, &rr);
        prop_assert_eq!(pivots, pivots2);
        prop_assert!(Subspace::row_space(&m).equal(&Subspace::row_space(&r)).unwrap());
    }

    #[test]
    fn determinant_is_multiplicative(a in int_matrix(3, 3), b in int_matrix(3, 3)) {
        let lhs = a.mul(&b).unwrap().determinant().unwrap();
        let rhs = a.determinant().unwrap() * b.determinant().unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn inverse_is_two_sided(a in int_matrix(3, 3)) {
        if let Ok(inv) = a.inverse() {
            prop_assert!(a.mul(&inv).unwrap().is_identity());
            prop_assert!(inv.mul(&a).unwrap().is_identity());
        } else {
            prop_assert!(a.determinant().unwrap().is_zero());
        }
    }

    #[test]
    fn kernel_has_complementary_dimension(m in int_matrix(2, 4)) {
        let k = Subspace::kernel(&m);
        prop_assert_eq!(k.dim() + m.rank(), 4);
        for v in k.basis().row_vecs() {
            prop_assert!(m.mul_vec(&v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn sum_and_intersection_dimensions(a in int_matrix(2, 4), b in int_matrix(2, 4)) {
        let (u, w) = (Subspace::row_space(&a), Subspace::row_space(&b));
        let sum = u.sum(&w).unwrap();
        let cap = u.intersect(&w).unwrap();
        prop_assert_eq!(sum.dim() + cap.dim(), u.dim() + w.dim());
    }

    #[test]
    fn relation_composition_is_associative(s1: u64, s2: u64, s3: u64) {
        let (r, s, t) = (relation(s1, 2, 3), relation(s2, 3, 2), relation(s3, 2, 2));
        let left = relation_compose(&t, &relation_compose(&s, &r).unwrap()).unwrap();
        let right = relation_compose(&relation_compose(&t, &s).unwrap(), &r).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn tensor_power_is_multiplicative(s1: u64, s2: u64) {
        let rep = TensorRep::new(3, 2);
        let (g, h) = (gl(s1, 3), gl(s2, 2));
        let lhs = rho(&g.mul(&h).unwrap(), rep).unwrap();
        let rhs = rho(&g, rep).unwrap().mul(&rho(&h, rep).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn unit_composes_trivially(seed: u64, level in 0usize..3) {
        let pair = PairDescriptor::classical(GroupKind::GlR);
        let g = coset(seed, level, level, 3);
        let u = DoubleCoset::unit(&pair, vec![level]).unwrap();
        prop_assert!(coset_eq(&coset_compose(&u, &g).unwrap(), &g).unwrap().has_witness());
        prop_assert!(coset_eq(&coset_compose(&g, &u).unwrap(), &g).unwrap().has_witness());
    }

    #[test]
    fn characteristic_function_has_half_dimension(seed: u64, beta in 0usize..3, alpha in 0usize..3) {
        prop_assert!(char_dims_ok(&coset(seed, beta, alpha, 3)).unwrap());
    }

    #[test]
    fn invariants_ignore_level_subgroups(seed: u64, k1: u64, k2: u64) {
        let pair = PairDescriptor::classical(GroupKind::GlR);
        let g = coset(seed, 1, 1, 3);
        let pad = |q: FiniteSupportOperator| {
            let core = Matrix::identity(Field::Rat, 1).direct_sum(q.core()).unwrap();
            FiniteSupportOperator::new(GroupKind::GlR, core).unwrap()
        };
        let u = pad(cayley_sample(Field::Rat, 3, k1));
        let v = pad(cayley_sample(Field::Rat, 2, k2));
        let moved = u.mul(g.rep().factor(0)).unwrap().mul(&v).unwrap();
        let h = DoubleCoset::new(pair, vec![1], vec![1], trains::groups::GroupElement::single(moved)).unwrap();
        prop_assert_eq!(coset_invariants(&g).unwrap(), coset_invariants(&h).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 12, ..ProptestConfig::default() })]

    #[test]
    fn fixed_projector_is_orthogonal_idempotent(n in 2usize..6, d in 1usize..3, alpha in 0usize..3) {
        let alpha = alpha.min(n);
        let fixed = fixed_subspace_cached(TensorRep::new(n, d), alpha).unwrap();
        let p = &fixed.projector;
        prop_assert_eq!(&p.mul(p).unwrap(), p);
        prop_assert_eq!(&p.transpose(), p);
        prop_assert_eq!(p.rank(), fixed.dim());
    }
}

mod common;

use gcrfields::analysis::{kernel_dim, HomogeneousComponent};
use gcrfields::gcr::ComponentOp;
use gcrfields::par::{set_exec_mode, ExecMode};
use gcrfields::rep::{decomposition_dim, gt_patterns, lr_decompose, weyl_dim, HighestWeight};
use gcrfields::scalar::{int, rat};
use gcrfields::tensor::{Poly, TensorField, ValueShape};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn poly_strategy(max_degree: u32) -> impl Strategy<Value = Poly> {
    prop::collection::vec((prop::array::uniform6(0u8..=3), -9i64..=9, 1i64..=4), 0..10).prop_map(move |terms| {
        Poly::from_terms(
            terms
                .into_iter()
                .filter(|(m, _, _)| m.iter().map(|&e| e as u32).sum::<u32>() <= max_degree)
                .map(|(m, n, d)| (m, rat(n, d))),
        )
    })
}

fn homogeneous_strategy() -> impl Strategy<Value = Poly> {
    (0u32..=6, poly_strategy(6)).prop_map(|(d, p)| p.homogeneous_part(d))
}

fn field_strategy(max_degree: u32) -> impl Strategy<Value = TensorField> {
    (0..ValueShape::V.len(), 0..=max_degree, any::<u64>()).prop_map(|(s, d, seed)| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        common::random_element(&mut rng, &HomogeneousComponent::new(ValueShape::V[s], d))
    })
}

fn distinct_triple() -> impl Strategy<Value = (usize, usize, usize)> {
    (0usize..4, 0usize..4, 0usize..4).prop_filter("distinct", |(i, j, k)| i != j && j != k && i != k)
}

fn dominant() -> impl Strategy<Value = HighestWeight> {
    (0i64..=4, 0i64..=4, 0i64..=4).prop_map(|(a, b, c)| {
        let mut v = [a, b, c];
        v.sort_unstable_by(|x, y| y.cmp(x));
        HighestWeight::triple(v[0], v[1], v[2])
    })
}

fn shifted(p: &Poly) -> Poly {
    &p.euler() + &p.scale(&int(3))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn sl2_relations(p in poly_strategy(6)) {
        prop_assert_eq!(&p.mul_r2().laplacian() - &p.laplacian().mul_r2(), shifted(&p).scale(&int(4)));
        prop_assert_eq!(&shifted(&p.laplacian()) - &shifted(&p).laplacian(), p.laplacian().scale(&int(-2)));
        prop_assert_eq!(&shifted(&p.mul_r2()) - &shifted(&p).mul_r2(), p.mul_r2().scale(&int(2)));
    }

    #[test]
    fn laplacian_adjoint_to_r2(f in poly_strategy(6), g in poly_strategy(4)) {
        prop_assert_eq!(f.laplacian().fischer_inner(&g), f.fischer_inner(&g.mul_r2()));
    }

    #[test]
    fn fischer_product_symmetric(f in poly_strategy(4), g in poly_strategy(4)) {
        prop_assert_eq!(f.fischer_inner(&g), g.fischer_inner(&f));
    }

    #[test]
    fn harmonic_round_trip(p in homogeneous_strategy()) {
        let parts = p.harmonic_decompose().unwrap();
        let mut sum = Poly::zero();
        for (j, h) in &parts {
            prop_assert!(h.laplacian().is_zero());
            let mut t = h.clone();
            for _ in 0..*j {
                t = t.mul_r2();
            }
            sum = &sum + &t;
        }
        prop_assert_eq!(sum, p);
    }

    #[test]
    fn poly_json_round_trip(p in poly_strategy(6)) {
        prop_assert_eq!(Poly::from_json(&p.to_json()).unwrap(), p);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    // The root operators satisfy the brackets of gl(4) with the opposite sign.
    #[test]
    fn root_operator_brackets(f in field_strategy(2), (i, j, k) in distinct_triple(), l in 0usize..4) {
        let a = |x: &TensorField, p: usize, q: usize| x.sl4(p, q).unwrap();
        let bracket = a(&a(&f, j, k), i, j).sub(&a(&a(&f, i, j), j, k)).unwrap();
        prop_assert_eq!(bracket, a(&f, i, k).scale(&int(-1)));
        if l != i && l != j && l != k {
            let commute = a(&a(&f, k, l), i, j).sub(&a(&a(&f, i, j), k, l)).unwrap();
            prop_assert!(commute.is_zero());
        }
    }

    #[test]
    fn operators_are_equivariant(seed in any::<u64>(), op in 0usize..36, (i, j, _) in distinct_triple(), degree in 0u32..=2) {
        let op = ComponentOp::all()[op];
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = common::random_element(&mut rng, &HomogeneousComponent::new(op.source, degree));
        let lhs = op.apply(&f.sl4(i, j).unwrap()).unwrap();
        let rhs = op.apply(&f).unwrap().sl4(i, j).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn laplacian_is_invariant(f in field_strategy(3), (i, j, _) in distinct_triple()) {
        prop_assert_eq!(f.sl4(i, j).unwrap().laplacian(), f.laplacian().sl4(i, j).unwrap());
        prop_assert_eq!(f.sl4(i, j).unwrap().mul_r2(), f.mul_r2().sl4(i, j).unwrap());
    }

    #[test]
    fn field_json_round_trip(f in field_strategy(2)) {
        prop_assert_eq!(TensorField::from_json(&f.to_json()).unwrap(), f);
    }

    #[test]
    fn lr_symmetric_and_conserves_dimension(a in dominant(), b in dominant()) {
        let d = lr_decompose(a, b);
        prop_assert_eq!(&d, &lr_decompose(b, a));
        prop_assert_eq!(decomposition_dim(&d), weyl_dim(a) * weyl_dim(b));
        prop_assert_eq!(lr_decompose(a.dual(), b.dual()), d.keys().map(|w| (w.dual(), d[w])).collect());
    }

    #[test]
    fn weight_syntax_round_trips(w in dominant()) {
        prop_assert_eq!(w.to_string().parse::<HighestWeight>().unwrap(), w);
    }
}

#[test]
fn gt_count_matches_weyl_dimension() {
    for a in 0..=6 {
        for b in 0..=a {
            for c in 0..=b {
                let w = HighestWeight::triple(a, b, c);
                assert_eq!(gt_patterns(w).len() as u64, weyl_dim(w), "{w}");
            }
        }
    }
}

#[test]
fn execution_modes_agree() {
    set_exec_mode(ExecMode::Sequential);
    let seq: Vec<_> = ValueShape::SPIN_THREE_HALVES.iter().map(|&s| kernel_dim(s, 1)).collect();
    set_exec_mode(ExecMode::Parallel);
    let par: Vec<_> = ValueShape::SPIN_THREE_HALVES.iter().map(|&s| kernel_dim(s, 1)).collect();
    assert_eq!(seq, par);
}

mod common;

use k3type::arith::{hilbert_support, hilbert_symbol, is_square_local, padic_valuation, rat, square_class, Rational};
use k3type::quadratic::{relevant_primes, witt_embeds};
use k3type::{corollary_route, is_k3_type, AnySpace, HermitianSpace, Place, Prime, QuadraticSpace};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use common::*;

fn nonzero() -> impl Strategy<Value = Rational> {
    (-300i64..=300, 1i64..=60).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
}

fn place() -> impl Strategy<Value = Place> {
    prop_oneof![
        Just(Place::Infinity),
        prop::sample::select(vec![2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29]).prop_map(|p| Place::prime(p).unwrap()),
    ]
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn route_space(seed: u64) -> AnySpace {
    let mut rng = rng(seed);
    if rng.gen_bool(0.5) {
        let fields = totally_real_fields();
        let field = fields.choose(&mut rng).unwrap().clone();
        let pool = SignPool::new(field.clone(), if field.degree() <= 2 { 2 } else { 1 });
        let m = rng.gen_range(2..=(21 / field.degree() + 1).min(8));
        random_tr_space(&mut rng, &pool, m, 0.15)
    } else {
        let cms = cm_fields();
        let cm = cms.choose(&mut rng).unwrap().clone();
        let pool = SignPool::new(cm.base().clone(), 2);
        let m = rng.gen_range(1..=10 / cm.pair_count() + 1);
        random_cm_space(&mut rng, &cm, &pool, m, 0.15)
    }
}

proptest! {
    #[test]
    fn hilbert_symmetric(a in nonzero(), b in nonzero(), v in place()) {
        prop_assert_eq!(hilbert_symbol(&a, &b, &v).unwrap(), hilbert_symbol(&b, &a, &v).unwrap());
    }

    #[test]
    fn hilbert_bimultiplicative(a in nonzero(), b in nonzero(), c in nonzero(), v in place()) {
        let bc = &b * &c;
        let lhs = hilbert_symbol(&a, &bc, &v).unwrap();
        prop_assert_eq!(lhs, hilbert_symbol(&a, &b, &v).unwrap() * hilbert_symbol(&a, &c, &v).unwrap());
    }

    #[test]
    fn hilbert_standard_identities(a in nonzero(), c in nonzero(), v in place()) {
        prop_assert_eq!(hilbert_symbol(&a, &-a.clone(), &v).unwrap(), 1);
        prop_assert_eq!(hilbert_symbol(&a, &(&c * &c), &v).unwrap(), 1);
        let one_minus = rat(1) - &a;
        if one_minus != rat(0) {
            prop_assert_eq!(hilbert_symbol(&a, &one_minus, &v).unwrap(), 1);
        }
    }

    #[test]
    fn hilbert_product_formula(a in nonzero(), b in nonzero()) {
        let product: i8 = hilbert_support(&a, &b).iter().map(|v| hilbert_symbol(&a, &b, v).unwrap()).product();
        prop_assert_eq!(product, 1);
        let off: Vec<Place> = [31u64, 37, 41].iter().map(|&p| Place::prime(p).unwrap())
            .filter(|v| !hilbert_support(&a, &b).contains(v)).collect();
        for v in off {
            prop_assert_eq!(hilbert_symbol(&a, &b, &v).unwrap(), 1);
        }
    }

    #[test]
    fn local_squares(a in nonzero(), v in place()) {
        prop_assert!(is_square_local(&(&a * &a), &v).unwrap());
        if let Place::Finite(p) = &v {
            if padic_valuation(&a, p).unwrap() % 2 != 0 {
                prop_assert!(!is_square_local(&a, &v).unwrap());
            }
        }
    }

    #[test]
    fn square_class_ignores_squares(a in nonzero(), c in nonzero()) {
        prop_assert_eq!(square_class(&(&a * &c * &c)).unwrap(), square_class(&a).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn congruence_invariance(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.gen_range(1..=6);
        let g = random_symmetric_gram(&mut rng, n);
        let t = random_rational_matrix(&mut rng, n, 3);
        if let Ok(h) = g.congruent(&t) {
            if k3type::linalg::determinant(&t).unwrap() != rat(0) {
                prop_assert!(same_invariants(&g, &h));
            }
        }
        let c = nonzero_rational(&mut rng, 9);
        prop_assert!(same_invariants(&g, &g.scale(&(&c * &c)).unwrap()));
    }

    #[test]
    fn hasse_trivial_off_relevant_primes(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let n = rng.gen_range(1..=5);
        let g = random_symmetric_gram(&mut rng, n);
        let relevant = relevant_primes(&[&g]);
        for p in [31u64, 37, 41, 43, 47] {
            let p = Prime::new(p).unwrap();
            if !relevant.contains(&p) {
                prop_assert_eq!(g.hasse_invariant(&p), 1);
            }
        }
        let (_, neg) = g.signature();
        let inf = if (neg * neg.saturating_sub(1) / 2) % 2 == 1 { -1 } else { 1 };
        let finite: i8 = relevant.iter().map(|p| g.hasse_invariant(p)).product();
        prop_assert_eq!(finite * inf, 1);
    }

    #[test]
    fn witt_reflexive_and_summands(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let (mr, nr) = (rng.gen_range(1..=4), rng.gen_range(1..=3));
        let m = random_diagonal_space(&mut rng, mr);
        let n = random_diagonal_space(&mut rng, nr);
        prop_assert!(witt_embeds(&m, &m));
        prop_assert!(witt_embeds(&m, &m.direct_sum(&n)));
        prop_assert!(witt_embeds(&n, &m.direct_sum(&n)));
        prop_assert!(!witt_embeds(&m.direct_sum(&n), &m));
    }

    #[test]
    fn decomposition_equivalence(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let m = rng.gen_range(1..=3);
        let space: AnySpace = if rng.gen_bool(0.5) {
            let field = totally_real_fields().choose(&mut rng).unwrap().clone();
            let d = (0..m).map(|_| random_element(&mut rng, &field, 3)).collect();
            let t = random_invertible_tr(&mut rng, &field, m);
            HermitianSpace::from_diagonal(d).unwrap().transform(&t).unwrap().into()
        } else {
            let cm = cm_fields().choose(&mut rng).unwrap().clone();
            let d = (0..m).map(|_| cm.from_base(random_element(&mut rng, cm.base(), 3))).collect();
            let t = random_invertible_cm(&mut rng, &cm, m);
            HermitianSpace::from_diagonal(d).unwrap().transform(&t).unwrap().into()
        };
        let whole = space.trace_form().unwrap();
        let sum = QuadraticSpace::direct_sum_all(&space.trace_form_decomposition().unwrap());
        prop_assert!(same_invariants(&whole, &sum));
        prop_assert_eq!(whole.rank(), space.dim() * space.field_degree());
    }

    #[test]
    fn signature_bookkeeping(seed in any::<u64>()) {
        let space = route_space(seed);
        let (pos, neg) = space.trace_form().unwrap().signature();
        let sigs = space.localization_signatures();
        let factor = if space.kind() == k3type::FieldKind::Cm { 2 } else { 1 };
        prop_assert_eq!(pos, factor * sigs.iter().map(|s| s.0).sum::<usize>());
        prop_assert_eq!(neg, factor * sigs.iter().map(|s| s.1).sum::<usize>());
    }

    #[test]
    fn transform_preserves_localization_signatures(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let field = totally_real_fields().choose(&mut rng).unwrap().clone();
        let m = rng.gen_range(1..=3);
        let d: Vec<_> = (0..m).map(|_| random_element(&mut rng, &field, 3)).collect();
        let s = HermitianSpace::from_diagonal(d).unwrap();
        let t = random_invertible_tr(&mut rng, &field, m);
        let moved = s.transform(&t).unwrap();
        prop_assert_eq!(moved.localization_signatures(), s.localization_signatures());
        let cm = cm_fields().choose(&mut rng).unwrap().clone();
        let d: Vec<_> = (0..m).map(|_| cm.from_base(random_element(&mut rng, cm.base(), 3))).collect();
        let s = HermitianSpace::from_diagonal(d).unwrap();
        let t = random_invertible_cm(&mut rng, &cm, m);
        let moved = s.transform(&t).unwrap();
        prop_assert_eq!(moved.localization_signatures(), s.localization_signatures());
    }

    #[test]
    fn cm_conjugation_and_embeddings(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let cm = cm_fields().choose(&mut rng).unwrap().clone();
        let x = random_cm_element(&mut rng, &cm, 4);
        let y = random_cm_element(&mut rng, &cm, 4);
        prop_assert_eq!((&x * &y).conjugate(), &x.conjugate() * &y.conjugate());
        prop_assert_eq!((&x + &y).conjugate(), &x.conjugate() + &y.conjugate());
        prop_assert_eq!(x.conjugate().conjugate(), x.clone());
        let nx = x.relative_norm();
        prop_assert_eq!(cm.from_base(nx), &x * &x.conjugate());
        let (mut trace, mut norm) = (0.0, 1.0);
        for i in 0..cm.pair_count() {
            let z = x.to_complex_at(i);
            trace += 2.0 * z.re;
            norm *= z.norm_sqr();
        }
        let scale = 1.0 + norm.abs();
        prop_assert!((norm - rational_f64(&x.norm())).abs() < 1e-6 * scale);
        prop_assert!((trace - rational_f64(&x.trace())).abs() < 1e-6 * scale);
    }

    #[test]
    fn totally_real_trace_and_norm(seed in any::<u64>()) {
        let mut rng = rng(seed);
        let field = totally_real_fields().choose(&mut rng).unwrap().clone();
        let a = random_element(&mut rng, &field, 5);
        let values: Vec<f64> = (0..field.degree()).map(|i| a.to_f64_at(i)).collect();
        let sum: f64 = values.iter().sum();
        prop_assert!((sum - rational_f64(&a.trace())).abs() < 1e-9 * (1.0 + sum.abs()));
        let sign: i8 = (0..field.degree()).map(|i| a.sign_at_index(i).unwrap()).product();
        prop_assert_eq!(sign, if a.norm() > rat(0) { 1 } else { -1 });
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn routes_agree(seed in any::<u64>()) {
        let space = route_space(seed);
        prop_assert_eq!(is_k3_type(&space).unwrap().is_k3_type, corollary_route(&space).unwrap().is_k3_type);
    }

    #[test]
    fn verdict_ignores_diagonal_order(seed in any::<u64>()) {
        let space = route_space(seed);
        let verdict = is_k3_type(&space).unwrap().is_k3_type;
        let mut rng = rng(seed ^ 0xabcdef);
        let permuted: AnySpace = match &space {
            AnySpace::TotallyReal(s) => {
                let mut d = s.diagonal().to_vec();
                d.shuffle(&mut rng);
                HermitianSpace::from_diagonal(d).unwrap().into()
            }
            AnySpace::Cm(s) => {
                let mut d = s.diagonal().to_vec();
                d.shuffle(&mut rng);
                HermitianSpace::from_diagonal(d).unwrap().into()
            }
        };
        prop_assert_eq!(is_k3_type(&permuted).unwrap().is_k3_type, verdict);
        prop_assert_eq!(corollary_route(&permuted).unwrap().is_k3_type, verdict);
    }
}

fn rational_f64(q: &Rational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap()
}

//! Property tests over random ASMs, matrices and polynomials.

use std::sync::OnceLock;

use asmgraph::bigrassmannian::{bq_product, dodgson, q_dodgson_check};
use asmgraph::enumerate::enumerate_asms;
use asmgraph::lattice::{asm_leq, beta_bigrassmannian_count, beta_corner_sum, beta_entry_formula, covered_by, essential_points};
use asmgraph::linalg::{det_cofactor, det_gauss, rat, Rational, RationalMatrix};
use asmgraph::symbolic::{asm_monomial, q_monomial, sfl_certificate, verify_certificate, HalfExpPoly};
use asmgraph::tnn::{counterexample_matrix, evaluate_difference, is_tnn, q_weight, random_tnn};
use asmgraph::{Asm, CornerSum};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

fn asms(n: usize) -> &'static [Asm] {
    static CACHE: OnceLock<Vec<Vec<Asm>>> = OnceLock::new();
    &CACHE.get_or_init(|| (0..=5).map(|k| if k == 0 { Vec::new() } else { enumerate_asms(k).unwrap() }).collect())[n]
}

fn asm_strategy(max_n: usize) -> impl Strategy<Value = Asm> {
    (1..=max_n).prop_flat_map(|n| (0..asms(n).len()).prop_map(move |i| asms(n)[i].clone()))
}

fn pair_strategy(max_n: usize) -> impl Strategy<Value = (Asm, Asm)> {
    (1..=max_n).prop_flat_map(|n| {
        let len = asms(n).len();
        (0..len, 0..len).prop_map(move |(i, j)| (asms(n)[i].clone(), asms(n)[j].clone()))
    })
}

fn poly_strategy() -> impl Strategy<Value = HalfExpPoly> {
    prop::collection::vec((-6i64..=6, -5i64..=5), 0..5)
        .prop_map(|terms| HalfExpPoly::from_terms(terms.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
}

fn matrix_strategy(n: usize) -> impl Strategy<Value = RationalMatrix> {
    prop::collection::vec((-9i64..=9, 1i64..=5), n * n).prop_map(move |v| {
        RationalMatrix::from_fn(n, |i, j| {
            let (p, q) = v[(i - 1) * n + (j - 1)];
            rat(p, q)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn corner_sum_round_trip(a in asm_strategy(5)) {
        let c = a.corner_sum();
        prop_assert!(c.is_valid());
        prop_assert_eq!(Asm::from_corner_sum(&c), a.clone());
        prop_assert_eq!(CornerSum::new(&c.rows().iter().map(|r| r.iter().map(|&v| i64::from(v)).collect()).collect::<Vec<_>>()).unwrap(), c);
    }

    #[test]
    fn beta_evaluators_agree(a in asm_strategy(5)) {
        let b = beta_corner_sum(&a);
        prop_assert_eq!(beta_entry_formula(&a), b);
        prop_assert_eq!(beta_bigrassmannian_count(&a).unwrap(), b);
        prop_assert_eq!(q_monomial(&a).q_power(), Some(i64::from(b)));
    }

    #[test]
    fn covers_match_essential_points(a in asm_strategy(5)) {
        let covers = covered_by(&a);
        prop_assert_eq!(covers.len(), essential_points(&a).len());
        for (c, _) in covers {
            prop_assert!(asm_leq(&c, &a).unwrap());
            prop_assert_eq!(beta_corner_sum(&c) + 1, beta_corner_sum(&a));
        }
    }

    #[test]
    fn poly_ring_axioms(p in poly_strategy(), q in poly_strategy(), r in poly_strategy()) {
        prop_assert_eq!(p.clone() + q.clone(), q.clone() + p.clone());
        prop_assert_eq!(p.clone() * q.clone(), q.clone() * p.clone());
        prop_assert_eq!((p.clone() * q.clone()) * r.clone(), p.clone() * (q.clone() * r.clone()));
        prop_assert_eq!(p.clone() * (q.clone() + r.clone()), p.clone() * q.clone() + p.clone() * r.clone());
        prop_assert!((p.clone() - p.clone()).is_zero());
        prop_assert_eq!(p.clone() * HalfExpPoly::one(), p.clone());
        if !q.is_zero() {
            prop_assert_eq!((p.clone() * q.clone()).div_exact(&q).unwrap(), p.clone());
        }
        let s = rat(3, 2);
        prop_assert_eq!((p.clone() * q.clone()).eval_sqrt(&s), p.eval_sqrt(&s) * q.eval_sqrt(&s));
    }

    #[test]
    fn cofactor_matches_elimination(m in (1usize..=5).prop_flat_map(matrix_strategy)) {
        prop_assert_eq!(det_cofactor(&m.rows()), det_gauss(m.rows()));
    }

    #[test]
    fn dodgson_matches_elimination(m in (2usize..=5).prop_flat_map(matrix_strategy)) {
        match dodgson(&m) {
            Ok(d) => prop_assert_eq!(d, det_gauss(m.rows())),
            Err(e) => prop_assert_eq!(e, asmgraph::Error::SingularInterior),
        }
        prop_assert!(q_dodgson_check(&m).unwrap().holds);
    }

    #[test]
    fn random_tnn_is_tnn(n in 1usize..=5, seed in any::<u64>(), size in 1u32..=6) {
        let m = random_tnn(n, seed, size);
        prop_assert!(is_tnn(&m).unwrap());
        prop_assert_eq!(m, random_tnn(n, seed, size));
    }

    #[test]
    fn q_weighting_law(a in asm_strategy(5), seed in any::<u64>(), s in 1i64..=4) {
        let n = a.n();
        let x = random_tnn(n, seed, 3);
        let s = rat(s, 2);
        let q0 = s.clone() * &s;
        let weighted = asm_monomial(&a).eval(&q_weight(&x, &s)).unwrap();
        let power = (0..beta_corner_sum(&a)).fold(Rational::one(), |acc, _| acc * &q0);
        prop_assert_eq!(weighted, power * asm_monomial(&a).eval(&x).unwrap());
    }

    #[test]
    fn certificate_or_counterexample((a, b) in pair_strategy(4), seed in any::<u64>()) {
        if asm_leq(&a, &b).unwrap() {
            let c = sfl_certificate(&a, &b).unwrap();
            prop_assert_eq!(c.steps.len() as u32, beta_corner_sum(&b) - beta_corner_sum(&a));
            prop_assert!(verify_certificate(&c, 2, seed).is_ok());
            let m = random_tnn(a.n(), seed, 4);
            let direct = evaluate_difference(&a, &b, &m).unwrap();
            prop_assert!(!direct.is_negative());
            prop_assert_eq!(c.eval(&m).unwrap(), direct.clone());
            prop_assert_eq!(c.combined_form().eval(&m).unwrap(), direct);
        } else {
            let x = counterexample_matrix(&a, &b).unwrap();
            prop_assert!(x.value.is_negative());
            prop_assert!(is_tnn(&x.matrix).unwrap());
            prop_assert_eq!(evaluate_difference(&a, &b, &x.matrix).unwrap(), x.value);
        }
    }

    #[test]
    fn product_values(n in 1usize..=7) {
        let p = bq_product(n);
        prop_assert!(p.eval_at_one().is_zero() || n == 1);
        prop_assert_eq!(p.degree_twice(), Some((n * n * n - n) as i64 / 3));
        prop_assert_eq!(p.coeff(0), BigInt::one());
    }
}

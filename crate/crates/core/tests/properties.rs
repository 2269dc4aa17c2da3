use proptest::prelude::*;

use qkdiff_core::adelic::check_condition_ii;
use qkdiff_core::jfun::{point_small_j, point_small_j_adams};
use qkdiff_core::qdiff::{exp_flow, exp_flow_lambda, sym_exp_flow, DiffOp, SymOpSpec};
use qkdiff_core::qseries::QSeries;
use qkdiff_core::rings::{laurent_expand_at, rat, Adams, Field, Poly, QuotientRing, RatFn, Rational, Ring};
use qkdiff_core::verify::euler_identity;

type R = RatFn<Rational>;

fn rational() -> impl Strategy<Value = Rational> {
    (-5i64..=5, 1i64..=4).prop_map(|(n, d)| rat(n, d))
}

fn poly(max_deg: usize) -> impl Strategy<Value = Poly<Rational>> {
    prop::collection::vec(rational(), 1..=max_deg + 1).prop_map(Poly::new)
}

fn ratfn() -> impl Strategy<Value = R> {
    (poly(3), poly(2)).prop_filter_map("nonzero denominator", |(n, d)| RatFn::new(n, d).ok())
}

fn series(trunc: usize, zero_constant: bool) -> impl Strategy<Value = QSeries<R>> {
    prop::collection::vec(ratfn(), trunc + 1).prop_map(move |mut cs| {
        if zero_constant {
            cs[0] = R::zero();
        }
        QSeries::new(cs)
    })
}

fn op() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec((0usize..=2, -2i64..=2, poly(2)), 1..=3)
        .prop_map(|ts| DiffOp::new(ts.into_iter().map(|(a, b, c)| (a, b, RatFn::from_poly(c)))))
}

/// Operators `Σ c(q) T^b` without `Q`.
fn constant_op() -> impl Strategy<Value = DiffOp> {
    prop::collection::vec((-2i64..=2, poly(2)), 1..=3)
        .prop_map(|ts| DiffOp::new(ts.into_iter().map(|(b, c)| (0, b, RatFn::from_poly(c)))))
}

fn regular_at_one() -> impl Strategy<Value = R> {
    ratfn().prop_filter("regular at q = 1", |f| !f.denom().eval(&rat(1, 1)).is_zero())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ratfn_field_laws(a in ratfn(), b in ratfn(), c in ratfn()) {
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        if !a.is_zero() {
            prop_assert!((a.clone() * a.inv()).is_one());
        }
    }

    #[test]
    fn cyclotomic_field_laws(
        m in prop::sample::select(vec![3u32, 5, 7, 8, 12]),
        xs in prop::collection::vec(prop::collection::vec(rational(), 1..=6), 3),
    ) {
        let k = QuotientRing::cyclotomic(m);
        let [a, b, c] = [0, 1, 2].map(|i| k.elem(Poly::new(xs[i].clone())));
        prop_assert_eq!((a.clone() + b.clone()) + c.clone(), a.clone() + (b.clone() + c.clone()));
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
        if !a.is_zero() {
            prop_assert!((a.clone() * a.try_inv().unwrap()).is_one());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn pole_order_is_the_valuation(g in poly(3), alpha in rational(), k in 1u32..=4) {
        prop_assume!(!g.eval(&alpha).is_zero());
        let den = Poly::new(vec![-alpha.clone(), rat(1, 1)]).pow(k);
        let f = RatFn::new(g, den).unwrap();
        let s = laurent_expand_at(&f, &alpha, 2).unwrap();
        prop_assert_eq!(s.valuation(), Some(-(k as i64)));
    }

    #[test]
    fn exp_log_round_trip_to_degree_ten(d in 0usize..=10, c in prop::collection::vec(rational(), 11)) {
        // small coefficients keep the degree-ten products cheap
        let f = QSeries::from_fn(d, |k| if k == 0 { R::zero() } else { R::constant(c[k].clone()) * R::q_pow(k as i64 % 3) });
        prop_assert_eq!(f.exp().unwrap().log().unwrap(), f);
    }

    #[test]
    fn shift_terms_act_diagonally(terms in prop::collection::vec((-2i64..=2, poly(2)), 1..=3), f in series(3, false)) {
        let op = DiffOp::new(terms.iter().map(|(b, c)| (0, *b, RatFn::from_poly(c.clone()))));
        let g = op.apply(&f);
        for d in 0..=3 {
            let eigen = terms.iter().fold(R::zero(), |acc, (b, c)| acc + RatFn::from_poly(c.clone()) * R::q_pow(b * d as i64));
            prop_assert_eq!(g.coeff(d), &(eigen * f.coeff(d).clone()));
        }
    }

    #[test]
    fn flows_of_commuting_operators_multiply(a in constant_op(), b in constant_op(), f in series(3, false)) {
        let order = 3;
        let lhs = exp_flow_lambda(&a, &exp_flow(&b, &f, order), order);
        prop_assert_eq!(lhs, exp_flow(&a.add(&b), &f, order));
    }

    #[test]
    fn commutator_with_a_q_function_times_q_power(b in constant_op(), c in regular_at_one(), k in 0usize..=3) {
        let p = DiffOp::new([(k, 0, c)]);
        prop_assert!(b.commutator(&p).divisible_by_q_minus_one());
    }

    #[test]
    fn exp_log_round_trip(f in series(4, true)) {
        prop_assert_eq!(f.exp().unwrap().log().unwrap(), f);
    }

    #[test]
    fn exp_is_a_homomorphism(f in series(3, true), g in series(3, true)) {
        let lhs = f.try_add(&g).unwrap().exp().unwrap();
        let rhs = f.exp().unwrap().try_mul(&g.exp().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn adams_composes(f in ratfn(), a in 1u32..=3, b in 1u32..=3) {
        prop_assert_eq!(f.adams(a).unwrap().adams(b).unwrap(), f.adams(a * b).unwrap());
    }

    #[test]
    fn adams_is_multiplicative(f in series(3, false), g in series(3, false), m in 1u32..=3) {
        let lhs = f.try_mul(&g).unwrap().adams(m, None).unwrap();
        let rhs = f.adams(m, None).unwrap().try_mul(&g.adams(m, None).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn commutators_vanish_at_q_one(a in op(), b in op()) {
        prop_assert!(a.commutator(&b).divisible_by_q_minus_one());
    }

    #[test]
    fn composition_acts_as_composition(a in op(), b in op(), f in series(3, false)) {
        prop_assert_eq!(a.compose(&b).apply(&f), a.apply(&b.apply(&f)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn sym_flow_is_linear(f in series(2, false), g in series(2, false), c in rational()) {
        let spec = SymOpSpec::minus_x();
        let combo = f.try_add(&g.scale_by(&R::constant(c.clone()))).unwrap();
        let lhs = sym_exp_flow(&spec, &combo, 2);
        let fg = sym_exp_flow(&spec, &g, 2);
        let rhs = sym_exp_flow(&spec, &f, 2)
            .try_add(&fg.map(|x| x.map(|y| y.scale(&c))))
            .unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn sym_flow_commutes_with_q_functions(f in series(2, false), c in ratfn()) {
        let spec = SymOpSpec::new(vec![(1, 0, rat(-1, 1)), (2, 1, rat(1, 2))]);
        let lhs = sym_exp_flow(&spec, &f.scale_by(&c), 2);
        let rhs = sym_exp_flow(&spec, &f, 2).map(|x| x.map(|y| y.clone() * c.clone()));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn condition_ii_is_monotone(lo in 1i64..=4, extra in 0i64..=4, d_lo in 1usize..=3, d_extra in 0usize..=2) {
        let hi_f = point_small_j(d_lo + d_extra);
        let lo_f = point_small_j(d_lo);
        let hi = check_condition_ii(&hi_f, 2, &point_small_j_adams(d_lo + d_extra, 2), lo + extra).unwrap();
        let low = check_condition_ii(&lo_f, 2, &point_small_j_adams(d_lo, 2), lo).unwrap();
        prop_assert!(!hi.verdict.is_pass() || low.verdict.is_pass());
    }
}

#[test]
fn euler_identity_through_degree_ten() {
    for d in 0..=10 {
        let out = euler_identity(d);
        assert!(out.verdict.is_pass(), "D = {d}: {:?}", out.witnesses);
    }
}

//! Values computed independently with a computer-algebra system and frozen.

use qkdiff_core::adelic::check_condition_i;
use qkdiff_core::jfun::{
    cy_local_series, deduce_recursion_coeff, extract_input_t, nonzero_input_degrees, point_small_j, ClassRing,
    ToricSpec,
};
use qkdiff_core::rings::{rat, Poly, RatFn, Rational};

type R = RatFn<Rational>;

/// `Σ c_k q^{-k}` from `(k, c_k)` pairs.
fn laurent(terms: &[(usize, i64)]) -> R {
    let top = terms.iter().map(|&(k, _)| k).max().unwrap_or(0);
    let mut num = vec![0; top + 1];
    for &(k, c) in terms {
        num[top - k] += c;
    }
    R::new(Poly::from_ints(&num), Poly::monomial(rat(1, 1), top)).unwrap()
}

#[test]
fn cy_input_by_degree() {
    let ring = ClassRing::<R>::unipotent(2).unwrap();
    let expected = [
        (vec![], vec![]),
        (vec![(2, 1), (1, -1)], vec![(1, 2), (2, -2)]),
        (
            vec![(2, -2), (3, 2), (5, -1), (6, 1)],
            vec![(2, 6), (3, -6), (5, 4), (6, -4)],
        ),
        (
            vec![(3, -3), (4, 3), (7, -2), (8, 2), (11, -1), (12, 1)],
            vec![(3, 12), (4, -12), (7, 10), (8, -10), (11, 6), (12, -6)],
        ),
    ];
    let t = extract_input_t(&cy_local_series(4).unwrap(), &[]).unwrap();
    for (d, (p0, p1)) in expected.iter().enumerate() {
        let want = ring.from_components(vec![laurent(p0), laurent(p1)]);
        assert_eq!(t.coeff(d + 1), &want, "degree {}", d + 1);
    }
    assert_eq!(nonzero_input_degrees(&t), vec![2, 3, 4]);
}

#[test]
fn recursion_coefficients() {
    let spec = ToricSpec::new(1, 5).with_lambdas(vec![rat(2, 1), rat(3, 1)]);
    let c = |i, j, m| {
        deduce_recursion_coeff(&spec, i, j, m, 5)
            .unwrap()
            .c
            .unwrap()
            .components()
    };
    assert_eq!(c(0, 1, 1), vec![rat(-1, 2)]);
    assert_eq!(c(1, 0, 1), vec![rat(1, 3)]);
    // -2 + 5√6/6 in the basis 1, √(3/2)
    assert_eq!(c(0, 1, 2), vec![rat(-2, 1), rat(5, 3)]);
}

#[test]
fn point_tau_values() {
    let c = check_condition_i(&point_small_j(6), 8).unwrap();
    let want: Vec<_> = (1..=6).map(|d| rat(1, d * d)).collect();
    assert_eq!(&c.tau[1..], &want[..]);
}

#[test]
fn point_coefficients() {
    // (1 - q) / ((1 - q)(1 - q^2)) = 1/(1 - q^2)
    let f = point_small_j(2);
    assert_eq!(
        f.coeff(2),
        &R::new(Poly::from_ints(&[1]), Poly::from_ints(&[1, 0, -1])).unwrap()
    );
}

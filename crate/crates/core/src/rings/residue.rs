//! Local expansions of rational functions and residues of `f dq/q`.

use super::{Field, LaurentT, Poly, RatFn, Rational, Ring};
use crate::error::{Error, Result};

/// Laurent expansion of `f` in `u = q - α` through `u^M`.
pub fn laurent_expand_at<F: Field>(f: &RatFn<F>, alpha: &F, order: i64) -> Result<LaurentT<F>> {
    laurent_expand_mapped(f, alpha, |c| c.clone(), order)
}

/// Laurent expansion of `f` at a point of a ring `E` receiving the
/// coefficients of `f` through `embed` (e.g. `ℚ → ℚ(ζ)`).
///
/// The lowest nonvanishing coefficient of the shifted denominator must be a
/// unit of `E`.
pub fn laurent_expand_mapped<F: Field, E: Ring>(
    f: &RatFn<F>,
    alpha: &E,
    embed: impl Fn(&F) -> E,
    order: i64,
) -> Result<LaurentT<E>> {
    if f.is_zero() {
        return Ok(LaurentT::zero_to(order));
    }
    let num = f.numer().map(&embed).taylor_shift(alpha);
    let den = f.denom().map(&embed).taylor_shift(alpha);
    let (j, num) = strip_low(num);
    let (k, den) = strip_low(den);
    let val = j as i64 - k as i64;
    let n = (order - val + 1).max(0) as usize;
    let series = power_series_div(num.coeffs(), den.coeffs(), n)?;
    Ok(LaurentT::new(val, series, Some(order)))
}

/// Expansion of `f` in `w = 1/q` at `q = ∞`, through `w^M`.
pub fn laurent_expand_at_infinity<F: Field>(f: &RatFn<F>, order: i64) -> Result<LaurentT<F>> {
    laurent_expand_at(&f.invert_variable(), &F::zero(), order)
}

fn strip_low<E: Ring>(p: Poly<E>) -> (usize, Poly<E>) {
    let k = p.coeffs().iter().position(|c| !c.is_zero()).unwrap_or(0);
    (k, p.shift_down(k))
}

/// First `n` coefficients of `a / b` for power series with `b_0` a unit.
fn power_series_div<E: Ring>(a: &[E], b: &[E], n: usize) -> Result<Vec<E>> {
    let b0_inv = b
        .first()
        .and_then(|c| c.try_inv())
        .ok_or_else(|| Error::NotInvertible("constant term of the shifted denominator".into()))?;
    let mut out: Vec<E> = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = a.get(k).cloned().unwrap_or_else(E::zero);
        for i in 1..=k.min(b.len().saturating_sub(1)) {
            acc = acc - b[i].clone() * out[k - i].clone();
        }
        out.push(acc * b0_inv.clone());
    }
    Ok(out)
}

/// Residue of `f(q) dq/q` at `q = q0 ≠ 0`, for a pole of order at most one.
pub fn residue_at<F: Field>(f: &RatFn<F>, q0: &F) -> Result<F> {
    residue_at_mapped(f, q0, |c| c.clone())
}

/// [`residue_at`] at a point of an extension ring `E` (e.g. a root of
/// `x^m - a` in a radical extension).
pub fn residue_at_mapped<F: Field, E: Ring>(f: &RatFn<F>, q0: &E, embed: impl Fn(&F) -> E) -> Result<E> {
    if q0.is_zero() {
        return Err(Error::ResidueAtZero);
    }
    let den = f.denom().map(&embed);
    let mut order = 0;
    let mut d = den.clone();
    while !d.is_zero() && d.eval(q0).is_zero() {
        order += 1;
        d = d.derivative();
    }
    match order {
        0 => Ok(E::zero()),
        1 => {
            let num = f.numer().map(&embed).eval(q0);
            let dd = den.derivative().eval(q0) * q0.clone();
            let inv = dd.try_inv().ok_or_else(|| Error::NotInvertible(format!("{dd}")))?;
            Ok(num * inv)
        }
        k => Err(Error::HigherOrderPole { order: k }),
    }
}

/// Residues of `f dq/q` on `ℙ¹`, grouped as finite nonzero poles, `q = 0`,
/// and `q = ∞`. Their total vanishes.
#[derive(Clone, Debug, PartialEq)]
pub struct ResidueParts {
    pub finite: Rational,
    pub at_zero: Rational,
    pub at_infinity: Rational,
}

impl ResidueParts {
    pub fn total(&self) -> Rational {
        self.finite.clone() + self.at_zero.clone() + self.at_infinity.clone()
    }
}

/// Sums residues over all poles of `f dq/q`, including the poles at
/// irrational points, by tracing over each squarefree factor of the
/// denominator.
pub fn global_residue_parts(f: &RatFn<Rational>) -> Result<ResidueParts> {
    let at_zero = laurent_expand_at(f, &Rational::zero(), 0)?.coeff(0);
    let at_infinity = -laurent_expand_at_infinity(f, 0)?.coeff(0);
    let den = f.denom();
    let k = den.low_order().unwrap_or(0);
    let rest = den.shift_down(k);
    // Partial fractions of f/q: the piece B/g^e carries all residues at the
    // roots of g, and they sum to the q^{deg - 1} coefficient of B over lc(g^e).
    let num = f.numer();
    let full = den.shift_up(1);
    let mut finite = Rational::zero();
    for (g, e) in rest.squarefree_decomposition() {
        if g.is_constant() {
            continue;
        }
        let local = g.pow(e);
        let deg = local.degree().expect("nonconstant");
        let cof = full.exact_div(&local).rem(&local);
        let inv = cof
            .inverse_mod(&local)
            .ok_or_else(|| Error::InvalidParameter("non-coprime partial fraction".into()))?;
        let b = (num.rem(&local) * inv).rem(&local);
        finite += b.coeff(deg - 1) / local.leading().expect("nonzero");
    }
    Ok(ResidueParts {
        finite,
        at_zero,
        at_infinity,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::rat;

    type R = RatFn<Rational>;

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::from_ints(cs)
    }

    #[test]
    fn simple_pole_at_one() {
        let f = R::new(p(&[1]), p(&[1, -1])).unwrap();
        let s = laurent_expand_at(&f, &rat(1, 1), 4).unwrap();
        assert_eq!(s, LaurentT::new(-1, vec![rat(-1, 1)], Some(4)));
    }

    #[test]
    fn expansion_at_minus_one() {
        let f = R::new(p(&[1]), p(&[1, 0, -1])).unwrap();
        let s = laurent_expand_at(&f, &rat(-1, 1), 2).unwrap();
        assert_eq!(s.valuation(), Some(-1));
        assert_eq!(s.coeff(-1), rat(1, 2));
        assert_eq!(s.coeff(0), rat(1, 4));
    }

    #[test]
    fn gamma_coefficient_at_one() {
        // 1/((1-q)(1-q^2)) = (1/2) t^-2 - (1/4) t^-1 + 1/8 + ...
        let f = R::new(p(&[1]), p(&[1, -1]) * p(&[1, 0, -1])).unwrap();
        let s = laurent_expand_at(&f, &rat(1, 1), 0).unwrap();
        assert_eq!(s.coeff(-2), rat(1, 2));
        assert_eq!(s.coeff(-1), rat(-1, 4));
        assert_eq!(s.coeff(0), rat(1, 8));
    }

    #[test]
    fn polynomial_expansion() {
        let s = laurent_expand_at(&R::q(), &rat(1, 1), 3).unwrap();
        assert_eq!(s, LaurentT::new(0, vec![rat(1, 1), rat(1, 1)], Some(3)));
    }

    #[test]
    fn residues() {
        let f = R::new(p(&[1]), p(&[1, 0, -1])).unwrap();
        assert_eq!(residue_at(&f, &rat(-1, 1)).unwrap(), rat(-1, 2));
        assert_eq!(residue_at(&R::one(), &rat(2, 1)).unwrap(), rat(0, 1));
        // 1/(1 - (2/3) q) at q = 3/2
        let g = R::new(p(&[3]), p(&[3, -2])).unwrap();
        assert_eq!(residue_at(&g, &rat(3, 2)).unwrap(), rat(-1, 1));
        let h = R::new(p(&[1]), p(&[1, -1]) * p(&[1, -1])).unwrap();
        assert_eq!(residue_at(&h, &rat(1, 1)), Err(Error::HigherOrderPole { order: 2 }));
        assert_eq!(residue_at(&h, &rat(0, 1)), Err(Error::ResidueAtZero));
    }

    #[test]
    fn residue_theorem_with_irrational_poles() {
        // (q^3 + 1)/(q^2 (q^2 - 2)^2 (q^2 + q + 1))
        let den = p(&[0, 0, 1]) * p(&[-2, 0, 1]) * p(&[-2, 0, 1]) * p(&[1, 1, 1]);
        let f = R::new(p(&[1, 0, 0, 1]), den).unwrap();
        let parts = global_residue_parts(&f).unwrap();
        assert!(parts.total().is_zero());
        assert!(!parts.finite.is_zero());
    }

    #[test]
    fn finite_residues_of_a_quadratic_pole() {
        // 1/(q (q^2 - 2)) has residue 1/4 at each of ±√2
        let f = R::new(p(&[1]), p(&[-2, 0, 1])).unwrap();
        let parts = global_residue_parts(&f).unwrap();
        assert_eq!(parts.finite, rat(1, 2));
        assert_eq!(parts.at_zero, rat(-1, 2));
        assert!(parts.at_infinity.is_zero());
    }
}

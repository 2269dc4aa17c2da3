use crate::error::{Error, Result};
use crate::qseries::{LambdaTrunc, QSeries};
use crate::rings::{
    laurent_expand_at, laurent_expand_mapped, CyclotomicElem, LaurentT, Poly, QAlgebra, Quotient, RatFn, Rational, Ring,
};

/// Coefficient rings whose elements can be expanded locally in `q`.
pub trait LocalSeries: QAlgebra {
    /// Coefficients of an expansion at a rational point.
    type Scalar: Ring;
    /// Coefficients of an expansion at a point of `ℚ(ζ)`.
    type Cyc: Ring;

    fn expand_at_rational(&self, at: &Rational, order: i64) -> Result<LaurentT<Self::Scalar>>;
    fn expand_at_cyclotomic(&self, at: &CyclotomicElem, order: i64) -> Result<LaurentT<Self::Cyc>>;
    fn lift_scalar(s: &Self::Scalar) -> Self::Cyc;
    fn lift_scalar_cyc(z: &CyclotomicElem) -> Self::Cyc;
    /// Denominators in `q` of every rational-function component.
    fn denominators(&self) -> Vec<Poly<Rational>>;

    fn divide_one_minus_q(&self) -> Self {
        let inv = RatFn::one_minus(Rational::from_integer(1.into()), 1)
            .try_inv()
            .expect("1 - q is nonzero");
        self.clone() * Self::from_q(&inv)
    }
}

impl LocalSeries for RatFn<Rational> {
    type Scalar = Rational;
    type Cyc = CyclotomicElem;

    fn expand_at_rational(&self, at: &Rational, order: i64) -> Result<LaurentT<Rational>> {
        laurent_expand_at(self, at, order)
    }

    fn expand_at_cyclotomic(&self, at: &CyclotomicElem, order: i64) -> Result<LaurentT<CyclotomicElem>> {
        laurent_expand_mapped(self, at, |c| Quotient::constant(c.clone()), order)
    }

    fn lift_scalar(s: &Rational) -> CyclotomicElem {
        Quotient::constant(s.clone())
    }

    fn lift_scalar_cyc(z: &CyclotomicElem) -> CyclotomicElem {
        z.clone()
    }

    fn denominators(&self) -> Vec<Poly<Rational>> {
        vec![self.denom().clone()]
    }
}

impl<C> LocalSeries for LambdaTrunc<C>
where
    C: LocalSeries,
{
    type Scalar = LambdaTrunc<C::Scalar>;
    type Cyc = LambdaTrunc<C::Cyc>;

    fn expand_at_rational(&self, at: &Rational, order: i64) -> Result<LaurentT<Self::Scalar>> {
        let parts = self
            .coeffs()
            .iter()
            .map(|c| c.expand_at_rational(at, order))
            .collect::<Result<Vec<_>>>()?;
        Ok(transpose(parts, self.trunc(), order))
    }

    fn expand_at_cyclotomic(&self, at: &CyclotomicElem, order: i64) -> Result<LaurentT<Self::Cyc>> {
        let parts = self
            .coeffs()
            .iter()
            .map(|c| c.expand_at_cyclotomic(at, order))
            .collect::<Result<Vec<_>>>()?;
        Ok(transpose(parts, self.trunc(), order))
    }

    fn lift_scalar(s: &Self::Scalar) -> Self::Cyc {
        s.map(C::lift_scalar)
    }

    fn lift_scalar_cyc(z: &CyclotomicElem) -> Self::Cyc {
        LambdaTrunc::constant(C::lift_scalar_cyc(z))
    }

    fn denominators(&self) -> Vec<Poly<Rational>> {
        self.coeffs().iter().flat_map(|c| c.denominators()).collect()
    }
}

/// `Σ_k λ^k (Σ_j a_{kj} t^j)` regrouped as `Σ_j (Σ_k a_{kj} λ^k) t^j`.
fn transpose<E: Ring>(parts: Vec<LaurentT<E>>, trunc: Option<usize>, order: i64) -> LaurentT<LambdaTrunc<E>> {
    let val = parts.iter().filter_map(LaurentT::valuation).min();
    let prec = parts.iter().filter_map(LaurentT::prec).min().unwrap_or(order);
    let Some(val) = val else {
        return LaurentT::zero_to(prec);
    };
    let coeffs = (val..=prec)
        .map(|k| LambdaTrunc::from_parts(parts.iter().map(|p| p.coeff(k)).collect(), trunc))
        .collect();
    LaurentT::new(val, coeffs, Some(prec))
}

/// Coefficientwise expansion at `q = 1` in `t = q - 1`, through `t^M`.
pub fn expand_series_at_one<C: LocalSeries>(f: &QSeries<C>, order: i64) -> Result<QSeries<LaurentT<C::Scalar>>> {
    let one = Rational::from_integer(1.into());
    f.try_map(|_, c| c.expand_at_rational(&one, order))
}

/// Substitutes `u = ζ^{-1}((1+t)^{1/m} - 1)` into a Laurent series in `u`,
/// using the principal branch of the binomial series.
pub fn branch_compose<E: Ring>(g: &LaurentT<E>, zeta_inv: &E, m: u32, order: i64) -> Result<LaurentT<E>> {
    let r = Rational::new(1.into(), m.into());
    let inner = LaurentT::<E>::binomial_minus_one(&r, order).scale_by(zeta_inv);
    Ok(g.compose(&inner)?.truncate(order))
}

/// Rewrites a power series in `t` as a series in `w = (1+t)^m - 1` by
/// triangular elimination. Returns the `w`-coefficients and the residual,
/// which is zero through `t^M` for every power series.
pub fn reexpress_in_power_variable<E: Ring>(c: &LaurentT<E>, m: u32, order: i64) -> Result<(Vec<E>, LaurentT<E>)> {
    if c.valuation().is_some_and(|v| v < 0) {
        return Err(Error::InvalidParameter("series has a pole".into()));
    }
    let w = LaurentT::<E>::binomial_minus_one(&Rational::from_integer(m.into()), order);
    let m_inv = Rational::new(1.into(), m.into());
    let mut residual = c.truncate(order);
    let mut coeffs = Vec::new();
    let mut w_pow = LaurentT::<E>::one();
    let mut scale = Rational::from_integer(1.into());
    for j in 0..=order {
        let b = residual.coeff(j).scale(&scale);
        if !b.is_zero() {
            residual = residual - w_pow.scale_by(&b);
        }
        coeffs.push(b);
        w_pow = w_pow * w.clone();
        scale *= m_inv.clone();
    }
    Ok((coeffs, residual))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{rat, QuotientRing};

    #[test]
    fn branch_of_linear_term() {
        // u ↦ ζ^{-1}(t/m - (m-1)t^2/(2m^2) + ...)
        let k = QuotientRing::cyclotomic(3);
        let zi = k.generator().try_inv().unwrap();
        let g = LaurentT::monomial(Quotient::one(), 1);
        let s = branch_compose(&g, &zi, 3, 3).unwrap();
        assert_eq!(s.coeff(1), zi.scale(&rat(1, 3)));
        assert_eq!(s.coeff(2), zi.scale(&rat(-2, 18)));
    }

    #[test]
    fn branch_of_inverse() {
        // u^{-1} ↦ m ζ t^{-1} (1 + (m-1)/(2m) t + ...)
        for m in 2..=4u32 {
            let k = QuotientRing::cyclotomic(m);
            let z = k.generator();
            let zi = z.try_inv().unwrap();
            let g = LaurentT::monomial(Quotient::one(), -1);
            let s = branch_compose(&g, &zi, m, 2).unwrap();
            let lead = z.scale(&rat(m as i64, 1));
            assert_eq!(s.coeff(-1), lead);
            assert_eq!(s.coeff(0), lead.scale(&rat(m as i64 - 1, 2 * m as i64)));
        }
    }

    #[test]
    fn reexpression_leaves_no_residual() {
        let c = LaurentT::new(0, vec![rat(1, 1), rat(2, 1), rat(-3, 4), rat(5, 1)], Some(6));
        let (b, residual) = reexpress_in_power_variable(&c, 3, 6).unwrap();
        assert!(residual.is_zero());
        assert_eq!(b[0], rat(1, 1));
        assert_eq!(b[1], rat(2, 3));
    }

    #[test]
    fn lambda_components_transpose() {
        let f = LambdaTrunc::new(vec![RatFn::one_minus(rat(1, 1), 1).try_inv().unwrap(), RatFn::q()], 1);
        let s = f.expand_at_rational(&rat(1, 1), 2).unwrap();
        assert_eq!(s.valuation(), Some(-1));
        assert_eq!(s.coeff(-1).coeffs(), &[rat(-1, 1), rat(0, 1)]);
        assert_eq!(s.coeff(0).coeffs(), &[rat(0, 1), rat(1, 1)]);
        assert_eq!(s.coeff(1).coeffs(), &[rat(0, 1), rat(1, 1)]);
    }
}

//! Finite-difference operators in `Q` and `T = q^{Q∂_Q}`, their operator
//! exponentials, and the q-Gamma operators.

mod gamma;

use std::collections::BTreeMap;
use std::fmt;

pub use gamma::{gamma_closed_factor, gamma_op, gamma_symbol, GammaMode};

use crate::qseries::{LambdaTrunc, QSeries};
use crate::rings::{QAlgebra, RatFn, Rational, Ring};

type R = RatFn<Rational>;

/// Normal-ordered operator `Σ c_{a,b}(q) Q^a T^b`.
#[derive(Clone, Debug, PartialEq)]
pub struct DiffOp {
    terms: BTreeMap<(usize, i64), R>,
}

impl DiffOp {
    /// Builds from `(a, b, c)` triples; repeated keys are summed.
    pub fn new(terms: impl IntoIterator<Item = (usize, i64, R)>) -> Self {
        let mut map: BTreeMap<(usize, i64), R> = BTreeMap::new();
        for (a, b, c) in terms {
            let e = map.entry((a, b)).or_insert_with(R::zero);
            *e = e.clone() + c;
        }
        map.retain(|_, c| !c.is_zero());
        DiffOp { terms: map }
    }

    pub fn zero() -> Self {
        DiffOp { terms: BTreeMap::new() }
    }

    pub fn identity() -> Self {
        Self::new([(0, 0, R::one())])
    }

    /// Multiplication by `Q`.
    pub fn q_mul() -> Self {
        Self::new([(1, 0, R::one())])
    }

    /// `T = q^{Q∂_Q}`.
    pub fn shift() -> Self {
        Self::new([(0, 1, R::one())])
    }

    /// Multiplication by a function of `q`.
    pub fn scalar(c: R) -> Self {
        Self::new([(0, 0, c)])
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, i64, &R)> {
        self.terms.iter().map(|(&(a, b), c)| (a, b, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Whether no term involves `Q`.
    pub fn has_constant_coefficients(&self) -> bool {
        self.terms.keys().all(|&(a, _)| a == 0)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        Self::new(self.terms().chain(rhs.terms()).map(|(a, b, c)| (a, b, c.clone())))
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.scale(&R::from_int(-1)))
    }

    pub fn scale(&self, k: &R) -> Self {
        Self::new(self.terms().map(|(a, b, c)| (a, b, c.clone() * k.clone())))
    }

    /// Operator product `self ∘ rhs`, using `T^b Q^a = q^{ab} Q^a T^b`.
    pub fn compose(&self, rhs: &Self) -> Self {
        let mut out = Vec::new();
        for (a1, b1, c1) in self.terms() {
            for (a2, b2, c2) in rhs.terms() {
                let twist = R::q_pow(b1 * a2 as i64);
                out.push((a1 + a2, b1 + b2, c1.clone() * c2.clone() * twist));
            }
        }
        Self::new(out)
    }

    pub fn commutator(&self, rhs: &Self) -> Self {
        self.compose(rhs).sub(&rhs.compose(self))
    }

    /// Whether every coefficient is regular at `q = 1` and vanishes there.
    pub fn divisible_by_q_minus_one(&self) -> bool {
        let one = Rational::from_integer(1.into());
        self.terms.values().all(|c| c.eval(&one).is_some_and(|v| v.is_zero()))
    }

    /// `f_d Q^d ↦ c(q) q^{bd} f_d Q^{d+a}`, truncated at `D`.
    pub fn apply<C: QAlgebra>(&self, f: &QSeries<C>) -> QSeries<C> {
        let trunc = f.trunc();
        let mut out = vec![C::zero(); trunc + 1];
        for (a, b, c) in self.terms() {
            for (d, fd) in f.coeffs().iter().enumerate() {
                if d + a > trunc || fd.is_zero() {
                    continue;
                }
                let factor = c.clone() * R::q_pow(b * d as i64);
                out[d + a] = out[d + a].clone() + C::from_q(&factor) * fd.clone();
            }
        }
        let g = QSeries::new(out);
        if f.is_specialized() {
            g.mark_specialized()
        } else {
            g
        }
    }
}

impl fmt::Display for DiffOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (a, b, c)) in self.terms().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})")?;
            match a {
                0 => {}
                1 => write!(f, "*Q")?,
                _ => write!(f, "*Q^{a}")?,
            }
            if b != 0 {
                write!(f, "*T^{b}")?;
            }
        }
        Ok(())
    }
}

/// `e^{λ·op/(1-q)} f = Σ_{n ≤ L} λ^n opⁿ(f) / (n! (1-q)^n)`.
pub fn exp_flow<C: QAlgebra>(op: &DiffOp, f: &QSeries<C>, lambda_order: usize) -> QSeries<LambdaTrunc<C>> {
    let lifted = f.map(|c| LambdaTrunc::constant(c.clone()));
    exp_flow_lambda(op, &lifted, lambda_order)
}

/// [`exp_flow`] on a series that already has `λ`-truncated coefficients.
pub fn exp_flow_lambda<C: QAlgebra>(
    op: &DiffOp,
    f: &QSeries<LambdaTrunc<C>>,
    lambda_order: usize,
) -> QSeries<LambdaTrunc<C>> {
    let inv_one_minus_q = R::one_minus(Rational::from_integer(1.into()), 1)
        .try_inv()
        .expect("1 - q is nonzero");
    let step = op.scale(&inv_one_minus_q);
    let mut acc = QSeries::zero(f.trunc()).map(|c: &LambdaTrunc<C>| c.with_trunc(lambda_order));
    let mut current = f.clone();
    let mut factorial = Rational::from_integer(1.into());
    for n in 0..=lambda_order {
        if n > 0 {
            current = step.apply(&current);
            factorial *= Rational::from_integer(n.into());
        }
        let weight = LambdaTrunc::monomial(C::from_rational(&factorial.recip()), n, lambda_order);
        acc = acc.try_add(&current.scale_by(&weight)).expect("equal truncations");
    }
    if f.is_specialized() {
        acc.mark_specialized()
    } else {
        acc
    }
}

/// `D(x, q) = Σ c x^j q^e` with constant coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SymOpSpec {
    terms: Vec<(u32, i64, Rational)>,
}

impl SymOpSpec {
    pub fn new(terms: Vec<(u32, i64, Rational)>) -> Self {
        SymOpSpec { terms }
    }

    /// `D(x, q) = -x`.
    pub fn minus_x() -> Self {
        Self::new(vec![(1, 0, Rational::from_integer((-1).into()))])
    }

    pub fn terms(&self) -> &[(u32, i64, Rational)] {
        &self.terms
    }

    /// `D(1 - q^{kd}, q^k)`.
    fn at(&self, k: usize, d: usize) -> R {
        let x = R::one_minus(Rational::from_integer(1.into()), (k * d) as i64);
        self.terms.iter().fold(R::zero(), |acc, (j, e, c)| {
            acc + Ring::pow(&x, *j) * R::q_pow(e * k as i64).scale(c)
        })
    }

    /// Eigenvalue on `Q^d`:
    /// `exp(Σ_{k ≤ L} λ^k D(1 - q^{kd}, q^k) / (k (1 - q^k)))` modulo `λ^{L+1}`.
    pub fn eigenvalue(&self, d: usize, lambda_order: usize) -> LambdaTrunc<R> {
        let mut coeffs = vec![R::zero(); lambda_order + 1];
        for (k, slot) in coeffs.iter_mut().enumerate().skip(1) {
            let denom = R::one_minus(Rational::from_integer(1.into()), k as i64)
                .try_inv()
                .expect("1 - q^k is nonzero")
                .scale(&Rational::new(1.into(), k.into()));
            *slot = self.at(k, d) * denom;
        }
        LambdaTrunc::new(coeffs, lambda_order)
            .exp()
            .expect("zero constant term")
    }
}

/// The symmetrized flow `e^{Σ_k λ^k Ψ^k(D(1-T, q))/(k(1-q^k))}` acting
/// diagonally on `Q`-degrees.
pub fn sym_exp_flow<C: QAlgebra>(spec: &SymOpSpec, f: &QSeries<C>, lambda_order: usize) -> QSeries<LambdaTrunc<C>> {
    let out = f.map(|c| LambdaTrunc::constant(c.clone()));
    let coeffs = out
        .coeffs()
        .iter()
        .enumerate()
        .map(|(d, c)| {
            let e = spec.eigenvalue(d, lambda_order).map(C::from_q);
            e * c.clone()
        })
        .collect();
    let g = QSeries::new(coeffs);
    if f.is_specialized() {
        g.mark_specialized()
    } else {
        g
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::{rat, Poly};

    fn one_minus_q(k: i64) -> R {
        R::one_minus(rat(1, 1), k)
    }

    fn gamma_series(d: usize) -> QSeries<R> {
        let mut c = R::one();
        QSeries::from_fn(d, |k| {
            if k > 0 {
                c = c.clone() * one_minus_q(k as i64).try_inv().unwrap();
            }
            c.clone()
        })
    }

    #[test]
    fn shift_eigenvalue() {
        let f = QSeries::monomial(R::one(), 2, 3);
        let g = DiffOp::shift().apply(&f);
        assert_eq!(g.coeff(2), &R::q_pow(2));
    }

    #[test]
    fn gamma_difference_equation() {
        // (1 - T) Γ = Q Γ
        let g = gamma_series(5);
        let lhs = DiffOp::identity().sub(&DiffOp::shift()).apply(&g);
        let rhs = DiffOp::q_mul().apply(&g);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn q_times_t_on_one() {
        let op = DiffOp::q_mul().compose(&DiffOp::shift());
        assert_eq!(op.apply(&QSeries::one(2)), QSeries::monomial(R::one(), 1, 2));
    }

    #[test]
    fn shift_past_q() {
        // T Q = q Q T
        let tq = DiffOp::shift().compose(&DiffOp::q_mul());
        assert_eq!(tq, DiffOp::new([(1, 1, R::q())]));
        let c = DiffOp::shift().commutator(&DiffOp::q_mul());
        assert_eq!(c, DiffOp::new([(1, 1, R::q() - R::one())]));
        assert!(c.divisible_by_q_minus_one());
    }

    #[test]
    fn flows() {
        let f = QSeries::<R>::one(2);
        assert_eq!(
            exp_flow(&DiffOp::q_mul(), &f, 0),
            f.map(|c| LambdaTrunc::constant(c.clone()))
        );
        // Q(1 - T) kills 1
        let op = DiffOp::q_mul().compose(&DiffOp::identity().sub(&DiffOp::shift()));
        let g = exp_flow(&op, &f, 2);
        assert_eq!(g.coeff(0), &LambdaTrunc::constant(R::one()));
        assert!(g.coeff(1).is_zero() && g.coeff(2).is_zero());
        // op = Q: 1 + λQ/(1-q) + λ²Q²/(2(1-q)²)
        let h = exp_flow(&DiffOp::q_mul(), &f, 2);
        let inv = one_minus_q(1).try_inv().unwrap();
        assert_eq!(h.coeff(1).coeff(1), inv);
        assert_eq!(h.coeff(2).coeff(2), (inv.clone() * inv).scale(&rat(1, 2)));
        assert!(h.coeff(1).coeff(0).is_zero());
    }

    #[test]
    fn sym_flow_minus_x_is_pochhammer() {
        let spec = SymOpSpec::minus_x();
        for d in 0..4 {
            let e = spec.eigenvalue(d, 5);
            let mut prod = LambdaTrunc::<R>::one();
            for r in 0..d {
                prod = prod.clone() - LambdaTrunc::monomial(R::q_pow(r as i64), 1, 5) * prod;
            }
            assert_eq!(e, prod.with_trunc(5), "d = {d}");
        }
        let f = QSeries::new(vec![R::from_poly(Poly::from_ints(&[1, -1])), R::one()]);
        let g = sym_exp_flow(&SymOpSpec::new(vec![]), &f, 3);
        assert_eq!(g, f.map(|c| LambdaTrunc::constant(c.clone())));
    }
}

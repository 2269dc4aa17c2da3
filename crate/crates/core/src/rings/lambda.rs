use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Poly, RatFn, Rational, Ring};
use crate::error::{Error, Result};

/// Element of `ℚ(λ)`, the field of rational functions in the equivariant
/// parameter `λ` of a circle action on bundle fibers.
///
/// Coefficients of the form `ℚ(λ)(q)` are `RatFn<LambdaFn>`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LambdaFn(RatFn<Rational>);

impl LambdaFn {
    /// The parameter `λ` itself.
    pub fn var() -> Self {
        LambdaFn(RatFn::q())
    }

    pub fn from_ratfn(f: RatFn<Rational>) -> Self {
        LambdaFn(f)
    }

    pub fn as_ratfn(&self) -> &RatFn<Rational> {
        &self.0
    }

    /// `Ψ^m`: `λ ↦ λ^m`.
    pub fn adams_lambda(&self, m: u32) -> Self {
        LambdaFn(self.0.inflate(m))
    }

    /// Value at `λ = v`, or `None` at a pole.
    pub fn specialize(&self, v: &Rational) -> Option<Rational> {
        self.0.eval(v)
    }
}

impl Ring for LambdaFn {
    fn zero() -> Self {
        LambdaFn(RatFn::zero())
    }
    fn one() -> Self {
        LambdaFn(RatFn::one())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
    fn from_rational(r: &Rational) -> Self {
        LambdaFn(RatFn::from_rational(r))
    }
    fn try_inv(&self) -> Option<Self> {
        self.0.try_inv().map(LambdaFn)
    }
    fn scale(&self, r: &Rational) -> Self {
        LambdaFn(self.0.scale(r))
    }
}

impl Field for LambdaFn {}

impl Add for LambdaFn {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        LambdaFn(self.0 + rhs.0)
    }
}

impl Sub for LambdaFn {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        LambdaFn(self.0 - rhs.0)
    }
}

impl Mul for LambdaFn {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        LambdaFn(self.0 * rhs.0)
    }
}

impl Neg for LambdaFn {
    type Output = Self;
    fn neg(self) -> Self {
        LambdaFn(-self.0)
    }
}

impl fmt::Display for LambdaFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt_in(f, "λ")
    }
}

/// Clears `λ`-denominators of a polynomial in `q` over `ℚ(λ)`.
///
/// Returns the `q`-coefficients as polynomials in `λ` together with the
/// common `λ`-denominator.
fn clear_lambda(p: &Poly<LambdaFn>) -> (Vec<Poly<Rational>>, Poly<Rational>) {
    let mut l = Poly::one();
    for c in p.coeffs() {
        let d = c.0.denom();
        let g = l.gcd(d);
        l = l.clone() * d.exact_div(&g);
    }
    let cleared = p
        .coeffs()
        .iter()
        .map(|c| c.0.numer().clone() * l.exact_div(c.0.denom()))
        .collect();
    (cleared, l)
}

/// `(λ - v)`-adic order of a family of `λ`-polynomials, and their leading
/// parts evaluated at `v`.
fn leading_at(ps: &[Poly<Rational>], v: &Rational) -> (usize, Vec<Rational>) {
    let order = ps
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| p.root_multiplicity(v))
        .min()
        .unwrap_or(0);
    let linear = Poly::new(vec![-v.clone(), Rational::one()]).pow(order as u32);
    let values = ps
        .iter()
        .map(|p| {
            if p.is_zero() {
                Rational::zero()
            } else {
                p.exact_div(&linear).eval(v)
            }
        })
        .collect();
    (order, values)
}

impl RatFn<LambdaFn> {
    /// Specializes `λ = v`, taking the limit where numerator and denominator
    /// vanish to the same order.
    pub fn specialize_lambda(&self, v: &Rational) -> Result<RatFn<Rational>> {
        if self.is_zero() {
            return Ok(RatFn::zero());
        }
        let (num, ln) = clear_lambda(self.numer());
        let (den, ld) = clear_lambda(self.denom());
        let (on, num_v) = leading_at(&num, v);
        let (od, den_v) = leading_at(&den, v);
        let oln = ln.root_multiplicity(v);
        let old = ld.root_multiplicity(v);
        let excess = (on + old) as i64 - (od + oln) as i64;
        if excess < 0 {
            return Err(Error::PoleAtSpecialization(format!("λ = {v} in {self}")));
        }
        if excess > 0 {
            return Ok(RatFn::zero());
        }
        let linear = Poly::new(vec![-v.clone(), Rational::one()]);
        let ln_v = ln.exact_div(&linear.pow(oln as u32)).eval(v);
        let ld_v = ld.exact_div(&linear.pow(old as u32)).eval(v);
        let n = Poly::new(num_v).scale(&ld_v);
        let d = Poly::new(den_v).scale(&ln_v);
        RatFn::new(n, d)
    }
}

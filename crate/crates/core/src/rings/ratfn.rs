//! Reduced rational functions in one variable (`q` by convention).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Poly, Rational, Ring};
use crate::error::{Error, Result};

/// `num/den` with `gcd(num, den) = 1` and `den` monic.
///
/// The canonical form makes `==` mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatFn<F> {
    num: Poly<F>,
    den: Poly<F>,
}

impl<F: Field> RatFn<F> {
    pub fn new(num: Poly<F>, den: Poly<F>) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: Poly<F>, den: Poly<F>) -> Self {
        if num.is_zero() {
            return RatFn { num, den: Poly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() {
            (num, den)
        } else {
            (num.exact_div(&g), den.exact_div(&g))
        };
        Self::normalize(num, den)
    }

    /// Makes the denominator monic; the inputs must already be coprime.
    fn normalize(num: Poly<F>, den: Poly<F>) -> Self {
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            RatFn { num, den }
        } else {
            let inv = lc.inv();
            RatFn {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn from_poly(p: Poly<F>) -> Self {
        RatFn {
            num: p,
            den: Poly::one(),
        }
    }

    pub fn constant(c: F) -> Self {
        Self::from_poly(Poly::constant(c))
    }

    /// The variable `q`.
    pub fn q() -> Self {
        Self::from_poly(Poly::x())
    }

    /// `q^k` for any integer `k`.
    pub fn q_pow(k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(Poly::monomial(F::one(), k as usize))
        } else {
            RatFn {
                num: Poly::one(),
                den: Poly::monomial(F::one(), (-k) as usize),
            }
        }
    }

    /// `1 - c q^k`.
    pub fn one_minus(c: F, k: i64) -> Self {
        Self::one() - Self::constant(c) * Self::q_pow(k)
    }

    pub fn numer(&self) -> &Poly<F> {
        &self.num
    }

    pub fn denom(&self) -> &Poly<F> {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// Value at a point; `None` at a pole.
    pub fn eval(&self, x: &F) -> Option<F> {
        let d = self.den.eval(x);
        d.try_inv().map(|di| self.num.eval(x) * di)
    }

    /// Substitutes `q ↦ q^m`. Coprimality and monicity survive the substitution.
    pub fn inflate(&self, m: u32) -> Self {
        RatFn {
            num: self.num.inflate(m),
            den: self.den.inflate(m),
        }
    }

    /// Substitutes `q ↦ 1/q`.
    pub fn invert_variable(&self) -> Self {
        let dn = self.num.degree().unwrap_or(0);
        let dd = self.den.degree().unwrap_or(0);
        let n = dn.max(dd);
        Self::reduce(self.num.reversed(n), self.den.reversed(n))
    }

    /// Applies a field embedding coefficientwise. Embeddings preserve
    /// coprimality and monicity, so no re-reduction happens.
    pub fn map_into<E: Field>(&self, embed: impl Fn(&F) -> E) -> RatFn<E> {
        RatFn {
            num: self.num.map(&embed),
            den: self.den.map(&embed),
        }
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        let inv = rhs.try_inv().ok_or(Error::DivisionByZero)?;
        Ok(self.clone() * inv)
    }

    /// Integer power, negative exponents allowed for nonzero functions.
    pub fn powi(&self, k: i64) -> Result<Self> {
        if k >= 0 {
            Ok(Ring::pow(self, k as u32))
        } else {
            let inv = self.try_inv().ok_or(Error::DivisionByZero)?;
            Ok(Ring::pow(&inv, (-k) as u32))
        }
    }

    pub fn fmt_in(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        struct In<'a, F: Field>(&'a Poly<F>, &'a str);
        impl<F: Field> fmt::Display for In<'_, F> {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                self.0.fmt_in(f, self.1)
            }
        }
        let num = In(&self.num, var).to_string();
        if self.den.is_constant() {
            return write!(f, "{num}");
        }
        let den = In(&self.den, var).to_string();
        let wrap = |s: String| {
            if s.contains(' ') {
                format!("({s})")
            } else {
                s
            }
        };
        write!(f, "{}/{}", wrap(num), wrap(den))
    }
}

impl<F: Field> Ring for RatFn<F> {
    fn zero() -> Self {
        Self::from_poly(Poly::zero())
    }
    fn one() -> Self {
        Self::from_poly(Poly::one())
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn is_one(&self) -> bool {
        self.den.is_constant() && self.num == self.den
    }
    fn from_rational(r: &Rational) -> Self {
        Self::constant(F::from_rational(r))
    }
    fn try_inv(&self) -> Option<Self> {
        if self.num.is_zero() {
            return None;
        }
        Some(Self::normalize(self.den.clone(), self.num.clone()))
    }
    fn scale(&self, r: &Rational) -> Self {
        if r == &Rational::from_integer(0.into()) {
            return Self::zero();
        }
        RatFn {
            num: self.num.scale(&F::from_rational(r)),
            den: self.den.clone(),
        }
    }
}

impl<F: Field> Field for RatFn<F> {}

impl<F: Field> Add for RatFn<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.is_zero() {
            return rhs;
        }
        if rhs.is_zero() {
            return self;
        }
        if self.den == rhs.den {
            let num = self.num + rhs.num;
            return Self::reduce(num, self.den);
        }
        // a/b + c/d with g = gcd(b, d): any common factor of the result's
        // numerator and denominator divides g.
        let g = self.den.gcd(&rhs.den);
        if g.is_constant() {
            let num = self.num * rhs.den.clone() + rhs.num * self.den.clone();
            let den = self.den * rhs.den;
            return Self::normalize(num, den);
        }
        let b_g = self.den.exact_div(&g);
        let d_g = rhs.den.exact_div(&g);
        let num = self.num * d_g.clone() + rhs.num * b_g.clone();
        if num.is_zero() {
            return Self::zero();
        }
        let h = num.gcd(&g);
        let (num, g) = if h.is_constant() {
            (num, g)
        } else {
            (num.exact_div(&h), g.exact_div(&h))
        };
        let den = g * b_g * d_g;
        Self::normalize(num, den)
    }
}

impl<F: Field> Neg for RatFn<F> {
    type Output = Self;
    fn neg(self) -> Self {
        RatFn {
            num: -self.num,
            den: self.den,
        }
    }
}

impl<F: Field> Sub for RatFn<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<F: Field> Mul for RatFn<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return Self::zero();
        }
        // Cross-cancel: gcd(a, d) and gcd(c, b).
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let cancel = |p: Poly<F>, g: &Poly<F>| if g.is_constant() { p } else { p.exact_div(g) };
        let num = cancel(self.num, &g1) * cancel(rhs.num, &g2);
        let den = cancel(self.den, &g2) * cancel(rhs.den, &g1);
        Self::normalize(num, den)
    }
}

impl<F: Field> fmt::Display for RatFn<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_in(f, "q")
    }
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
    fn sum_over_conjugate_denominators() {
        // 1/(1-q) + 1/(1+q) = 2/(1-q^2)
        let a = R::new(p(&[1]), p(&[1, -1])).unwrap();
        let b = R::new(p(&[1]), p(&[1, 1])).unwrap();
        let expected = R::new(p(&[2]), p(&[1, 0, -1])).unwrap();
        assert_eq!(a + b, expected);
    }

    #[test]
    fn reduction_gives_monic_denominator() {
        let f = R::new(p(&[1, 0, -1]), p(&[1, -1])).unwrap();
        assert_eq!(f.numer(), &p(&[1, 1]));
        assert_eq!(f.denom(), &p(&[1]));
        let g = R::new(p(&[3]), p(&[4, 2])).unwrap();
        assert_eq!(g.numer(), &Poly::from_rationals(&[rat(3, 2)]));
        assert_eq!(g.denom(), &p(&[2, 1]));
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(R::new(p(&[1]), p(&[])), Err(Error::DivisionByZero));
        assert_eq!(R::q().checked_div(&R::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn shared_factor_sum_cancels() {
        // q/(q^2-1) - 1/(q^2-1) = 1/(q+1)
        let d = p(&[-1, 0, 1]);
        let a = R::new(p(&[0, 1]), d.clone()).unwrap();
        let b = R::new(p(&[1]), d).unwrap();
        assert_eq!(a - b, R::new(p(&[1]), p(&[1, 1])).unwrap());
        // 1/((q-1)(q+2)) + 1/((q-1)(q+3)) has an uncancelled (q-1).
        let x = R::new(p(&[1]), p(&[-1, 1]) * p(&[2, 1])).unwrap();
        let y = R::new(p(&[1]), p(&[-1, 1]) * p(&[3, 1])).unwrap();
        let s = x.clone() + y.clone();
        let expected = R::new(p(&[5, 2]), p(&[-1, 1]) * p(&[2, 1]) * p(&[3, 1])).unwrap();
        assert_eq!(s, expected);
        // and a genuine cancellation through the shared factor
        let u = R::new(p(&[3]), p(&[-1, 1]) * p(&[2, 1])).unwrap();
        let v = R::new(p(&[-4]), p(&[-1, 1]) * p(&[3, 1])).unwrap();
        let expected = R::new(p(&[-1]), p(&[2, 1]) * p(&[3, 1])).unwrap();
        assert_eq!(u + v, expected);
    }

    #[test]
    fn invert_variable() {
        // 1/(1-q) -> 1/(1-1/q) = q/(q-1)
        let f = R::new(p(&[1]), p(&[1, -1])).unwrap();
        assert_eq!(f.invert_variable(), R::new(p(&[0, 1]), p(&[-1, 1])).unwrap());
    }

    #[test]
    fn display() {
        let f = R::new(p(&[1, -1]), p(&[1, 0, -1])).unwrap();
        assert_eq!(f.to_string(), "1/(1 + q)");
    }
}

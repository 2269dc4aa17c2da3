//! Exact arithmetic tower.
//!
//! Everything here is built on [`Rational`] (arbitrary precision): dense
//! univariate polynomials, reduced rational functions in `q`, quotient rings
//! `F[x]/(g)` (cyclotomic and radical number fields, nilpotent class rings),
//! rational functions in the equivariant parameter `λ`, and truncated Laurent
//! series used for local expansions.
//!
//! Elements that need a modulus (quotient rings, truncation orders) carry it
//! lazily: constants produced by [`Ring::zero`], [`Ring::one`] and
//! [`Ring::from_rational`] have no context and adopt the context of whatever
//! they are combined with.

mod lambda;
mod laurent;
mod modgcd;
mod poly;
mod quotient;
mod ratfn;
mod residue;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

pub use lambda::LambdaFn;
pub use laurent::LaurentT;
pub use poly::Poly;
pub use quotient::{
    cyclotomic_poly, CyclotomicElem, NilpotentElem, Quotient, QuotientKind, QuotientRing, RadicalExtElem,
};
pub use ratfn::RatFn;
pub use residue::{
    global_residue_parts, laurent_expand_at, laurent_expand_at_infinity, laurent_expand_mapped, residue_at,
    residue_at_mapped, ResidueParts,
};

use crate::error::Result;

/// Arbitrary-precision rational number, always stored reduced with a
/// positive denominator.
pub type Rational = num_rational::BigRational;

/// Builds a rational from a numerator/denominator pair of machine integers.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

/// Commutative ring with unit, exact arithmetic, and a partial inverse.
pub trait Ring:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn from_rational(r: &Rational) -> Self;
    /// Multiplicative inverse, `None` when the element is not a unit.
    fn try_inv(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        (self.clone() - Self::one()).is_zero()
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(&Rational::from_integer(n.into()))
    }

    fn pow(&self, mut n: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc * base.clone();
            }
            n >>= 1;
            if n > 0 {
                base = base.clone() * base;
            }
        }
        acc
    }

    /// Multiplication by a rational scalar.
    fn scale(&self, r: &Rational) -> Self {
        self.clone() * Self::from_rational(r)
    }
}

/// Marker for rings where every nonzero element is invertible.
pub trait Field: Ring {
    fn inv(&self) -> Self {
        self.try_inv().expect("inverse of zero in a field")
    }

    /// Monic gcd of two polynomials. The default is the Euclidean algorithm
    /// with monic normalization after every step.
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        poly::euclid_gcd(a, b)
    }
}

impl Ring for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_one(&self) -> bool {
        One::is_one(self)
    }
    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }
    fn try_inv(&self) -> Option<Self> {
        if Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn scale(&self, r: &Rational) -> Self {
        self * r
    }
}

impl Field for Rational {
    fn poly_gcd(a: &Poly<Self>, b: &Poly<Self>) -> Poly<Self> {
        poly::rational_gcd(a, b)
    }
}

/// Rings containing `ℚ(q)`: pure rational functions of `q` embed as scalars.
pub trait QAlgebra: Ring {
    fn from_q(f: &RatFn<Rational>) -> Self;
}

impl QAlgebra for RatFn<Rational> {
    fn from_q(f: &RatFn<Rational>) -> Self {
        f.clone()
    }
}

impl QAlgebra for RatFn<LambdaFn> {
    fn from_q(f: &RatFn<Rational>) -> Self {
        f.map_into(LambdaFn::from_rational)
    }
}

/// Adams operations `Ψ^m`: ring endomorphisms with `Ψ^m Ψ^l = Ψ^{ml}`,
/// acting by `q ↦ q^m` and `λ ↦ λ^m` on the formal variables.
pub trait Adams: Ring {
    fn adams(&self, m: u32) -> Result<Self>;
}

impl Adams for Rational {
    fn adams(&self, _m: u32) -> Result<Self> {
        Ok(self.clone())
    }
}

impl Adams for RatFn<Rational> {
    fn adams(&self, m: u32) -> Result<Self> {
        Ok(self.inflate(m))
    }
}

impl Adams for RatFn<LambdaFn> {
    fn adams(&self, m: u32) -> Result<Self> {
        let num = self.numer().map(|c| c.adams_lambda(m));
        let den = self.denom().map(|c| c.adams_lambda(m));
        RatFn::new(num.inflate(m), den.inflate(m))
    }
}

/// Exact `n`-th root of a rational, when one exists.
pub(crate) fn rational_nth_root(r: &Rational, n: u32) -> Option<Rational> {
    if n == 0 {
        return None;
    }
    if r.is_negative() && n.is_multiple_of(2) {
        return None;
    }
    let root_int = |x: &num_bigint::BigInt| -> Option<num_bigint::BigInt> {
        let neg = x.is_negative();
        let a = x.abs();
        let s = a.nth_root(n);
        if num_traits::Pow::pow(&s, n) == a {
            Some(if neg { -s } else { s })
        } else {
            None
        }
    };
    let p = root_int(r.numer())?;
    let q = root_int(r.denom())?;
    Some(Rational::new(p, q))
}

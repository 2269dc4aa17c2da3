use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{QAlgebra, RatFn, Rational, Ring};
use crate::error::{Error, Result};

/// Truncated Laurent series `Σ c_k t^k` over a ring.
///
/// `prec = Some(M)` means every coefficient up to `t^M` is known and the
/// rest is `O(t^{M+1})`. `prec = None` marks an exact Laurent polynomial;
/// constants from [`Ring::one`] and friends are exact and adopt the
/// precision of whatever they meet.
#[derive(Clone, Debug)]
pub struct LaurentT<R> {
    val: i64,
    coeffs: Vec<R>,
    prec: Option<i64>,
}

impl<R: Ring> LaurentT<R> {
    /// Series with `coeffs[i]` at `t^{val+i}`, known through `t^{prec}`.
    pub fn new(val: i64, coeffs: Vec<R>, prec: Option<i64>) -> Self {
        let mut s = LaurentT { val, coeffs, prec };
        s.normalize();
        s
    }

    /// `c t^k`, exact.
    pub fn monomial(c: R, k: i64) -> Self {
        Self::new(k, vec![c], None)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::monomial(R::one(), 1)
    }

    /// The zero series `O(t^{M+1})`.
    pub fn zero_to(prec: i64) -> Self {
        Self::new(prec + 1, Vec::new(), Some(prec))
    }

    fn normalize(&mut self) {
        if let Some(p) = self.prec {
            let keep = (p - self.val + 1).max(0) as usize;
            self.coeffs.truncate(keep);
        }
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => {
                self.coeffs.clear();
                self.val = self.prec.map_or(0, |p| p + 1);
            }
            Some(i) => {
                self.coeffs.drain(..i);
                self.val += i as i64;
                while self.coeffs.last().is_some_and(|c| c.is_zero()) {
                    self.coeffs.pop();
                }
            }
        }
    }

    /// Valuation of the known part; `None` for a (possibly truncated) zero.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.val)
        }
    }

    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    /// Coefficient of `t^k`; zero outside the stored range.
    pub fn coeff(&self, k: i64) -> R {
        if k < self.val {
            return R::zero();
        }
        self.coeffs
            .get((k - self.val) as usize)
            .cloned()
            .unwrap_or_else(R::zero)
    }

    /// `(exponent, coefficient)` pairs of the nonzero known terms.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &R)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.val + i as i64, c))
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.first()
    }

    /// Drops everything above `t^M`.
    pub fn truncate(&self, prec: i64) -> Self {
        let p = self.prec.map_or(prec, |q| q.min(prec));
        Self::new(self.val, self.coeffs.clone(), Some(p))
    }

    pub fn map<E: Ring>(&self, f: impl Fn(&R) -> E) -> LaurentT<E> {
        LaurentT::new(self.val, self.coeffs.iter().map(f).collect(), self.prec)
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: i64) -> Self {
        LaurentT {
            val: self.val + k,
            coeffs: self.coeffs.clone(),
            prec: self.prec.map(|p| p + k),
        }
    }

    /// Part of degree `< 0`.
    pub fn principal_part(&self) -> Self {
        let keep = (-self.val).max(0) as usize;
        Self::new(self.val, self.coeffs.iter().take(keep).cloned().collect(), None)
    }

    /// Inverse of a series whose leading coefficient is a unit.
    pub fn checked_inv(&self) -> Result<Self> {
        let lead = self.leading().ok_or(Error::DivisionByZero)?;
        let l_inv = lead
            .try_inv()
            .ok_or_else(|| Error::NotInvertible(format!("leading coefficient {lead}")))?;
        let v = self.val;
        let (n, prec) = match self.prec {
            Some(p) => ((p - v + 1).max(0) as usize, Some(p - 2 * v)),
            None if self.coeffs.len() == 1 => return Ok(Self::monomial(l_inv, -v)),
            None => {
                return Err(Error::InsufficientPrecision(
                    "inverse of an exact non-monomial needs a truncation order".into(),
                ))
            }
        };
        let mut inv: Vec<R> = Vec::with_capacity(n);
        for k in 0..n {
            if k == 0 {
                inv.push(l_inv.clone());
                continue;
            }
            let mut acc = R::zero();
            for i in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                acc = acc + self.coeffs[i].clone() * inv[k - i].clone();
            }
            inv.push(-(l_inv.clone() * acc));
        }
        Ok(Self::new(-v, inv, prec))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self> {
        Ok(self.clone() * rhs.checked_inv()?)
    }

    /// Substitutes `t ↦ inner` where `inner` has positive valuation.
    pub fn compose(&self, inner: &Self) -> Result<Self> {
        let iv = inner
            .valuation()
            .filter(|&v| v >= 1)
            .ok_or_else(|| Error::InvalidParameter("inner series must have positive valuation".into()))?;
        let mut acc = match self.prec {
            // O(t^{p+1}) becomes O(inner^{p+1}).
            Some(p) => Self::zero_to(iv * (p + 1) - 1),
            None => Self::zero(),
        };
        if self.coeffs.is_empty() {
            return Ok(acc);
        }
        let mut power = if self.val >= 0 {
            inner.powi(self.val as u32)
        } else {
            inner.checked_inv()?.powi((-self.val) as u32)
        };
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                power = power * inner.clone();
            }
            if !c.is_zero() {
                acc = acc + power.clone().scale_by(c);
            }
        }
        Ok(acc)
    }

    fn powi(&self, n: u32) -> Self {
        Ring::pow(self, n)
    }

    /// Multiplication by a coefficient-ring scalar.
    pub fn scale_by(&self, c: &R) -> Self {
        Self::new(
            self.val,
            self.coeffs.iter().map(|x| x.clone() * c.clone()).collect(),
            self.prec,
        )
    }

    /// Binomial series `(1+t)^r - 1` through `t^M`.
    pub fn binomial_minus_one(r: &Rational, prec: i64) -> Self {
        let mut coeffs = vec![R::zero()];
        let mut c = Rational::from_integer(1.into());
        for k in 1..=prec.max(0) {
            c = c * (r.clone() - Rational::from_integer((k - 1).into())) / Rational::from_integer(k.into());
            coeffs.push(R::from_rational(&c));
        }
        Self::new(0, coeffs, Some(prec))
    }

    fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }
}

impl<R: Ring> PartialEq for LaurentT<R> {
    fn eq(&self, other: &Self) -> bool {
        self.val == other.val && self.coeffs == other.coeffs && self.prec == other.prec
    }
}

impl<R: Ring> Ring for LaurentT<R> {
    fn zero() -> Self {
        LaurentT {
            val: 0,
            coeffs: Vec::new(),
            prec: None,
        }
    }
    fn one() -> Self {
        Self::monomial(R::one(), 0)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn from_rational(r: &Rational) -> Self {
        Self::monomial(R::from_rational(r), 0)
    }
    fn try_inv(&self) -> Option<Self> {
        self.checked_inv().ok()
    }
    fn scale(&self, r: &Rational) -> Self {
        Self::new(self.val, self.coeffs.iter().map(|x| x.scale(r)).collect(), self.prec)
    }
}

impl<R: Ring> Add for LaurentT<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let prec = Self::min_prec(self.prec, rhs.prec);
        if self.coeffs.is_empty() {
            return Self::new(rhs.val, rhs.coeffs, prec);
        }
        if rhs.coeffs.is_empty() {
            return Self::new(self.val, self.coeffs, prec);
        }
        let lo = self.val.min(rhs.val);
        let hi = (self.val + self.coeffs.len() as i64).max(rhs.val + rhs.coeffs.len() as i64);
        let hi = prec.map_or(hi, |p| hi.min(p + 1));
        let coeffs = (lo..hi).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        Self::new(lo, coeffs, prec)
    }
}

impl<R: Ring> Neg for LaurentT<R> {
    type Output = Self;
    fn neg(self) -> Self {
        LaurentT {
            val: self.val,
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
            prec: self.prec,
        }
    }
}

impl<R: Ring> Sub for LaurentT<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Mul for LaurentT<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        // An O(t^{p+1}) error in one factor meets the other's valuation.
        let prec = match (self.prec, rhs.prec) {
            (None, None) => None,
            (Some(p), None) => Some(p + rhs.valuation().unwrap_or(0)),
            (None, Some(p)) => Some(p + self.valuation().unwrap_or(0)),
            (Some(pa), Some(pb)) => {
                let va = self.valuation().unwrap_or(pa + 1);
                let vb = rhs.valuation().unwrap_or(pb + 1);
                Some((pa + vb).min(pb + va))
            }
        };
        if self.coeffs.is_empty() || rhs.coeffs.is_empty() {
            return match prec {
                Some(p) => Self::zero_to(p),
                None => Self::zero(),
            };
        }
        let val = self.val + rhs.val;
        let mut len = self.coeffs.len() + rhs.coeffs.len() - 1;
        if let Some(p) = prec {
            len = len.min((p - val + 1).max(0) as usize);
        }
        let mut coeffs = vec![R::zero(); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Self::new(val, coeffs, prec)
    }
}

impl<R: QAlgebra> QAlgebra for LaurentT<R> {
    fn from_q(f: &RatFn<Rational>) -> Self {
        Self::monomial(R::from_q(f), 0)
    }
}

impl<R: Ring> fmt::Display for LaurentT<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.terms() {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*t")?,
                _ => write!(f, "({c})*t^{k}")?,
            }
        }
        match self.prec {
            Some(p) if first => write!(f, "O(t^{})", p + 1),
            Some(p) => write!(f, " + O(t^{})", p + 1),
            None if first => write!(f, "0"),
            None => Ok(()),
        }
    }
}

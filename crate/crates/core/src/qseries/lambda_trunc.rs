use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{convolve, series_exp, series_log};
use crate::error::{Error, Result};
use crate::rings::{Adams, QAlgebra, RatFn, Rational, Ring};

/// Polynomial in `λ` modulo `λ^{L+1}`.
///
/// `trunc = None` marks an exact constant that adopts the truncation of
/// whatever it is combined with.
#[derive(Clone, Debug)]
pub struct LambdaTrunc<R> {
    coeffs: Vec<R>,
    trunc: Option<usize>,
}

impl<R: Ring> LambdaTrunc<R> {
    pub fn new(mut coeffs: Vec<R>, trunc: usize) -> Self {
        coeffs.resize(trunc + 1, R::zero());
        LambdaTrunc {
            coeffs,
            trunc: Some(trunc),
        }
    }

    /// From raw coefficients; `None` keeps them exact.
    pub fn from_parts(coeffs: Vec<R>, trunc: Option<usize>) -> Self {
        match trunc {
            Some(l) => Self::new(coeffs, l),
            None if coeffs.is_empty() => Self::zero(),
            None => LambdaTrunc { coeffs, trunc: None },
        }
    }

    pub fn constant(c: R) -> Self {
        LambdaTrunc {
            coeffs: vec![c],
            trunc: None,
        }
    }

    /// `λ` modulo `λ^{L+1}`.
    pub fn lambda(trunc: usize) -> Self {
        Self::monomial(R::one(), 1, trunc)
    }

    /// `c λ^k` modulo `λ^{L+1}`.
    pub fn monomial(c: R, k: usize, trunc: usize) -> Self {
        let mut coeffs = vec![R::zero(); trunc + 1];
        if k <= trunc {
            coeffs[k] = c;
        }
        LambdaTrunc {
            coeffs,
            trunc: Some(trunc),
        }
    }

    pub fn trunc(&self) -> Option<usize> {
        self.trunc
    }

    /// Coefficient of `λ^k`.
    pub fn coeff(&self, k: usize) -> R {
        self.coeffs.get(k).cloned().unwrap_or_else(R::zero)
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn map<E: Ring>(&self, f: impl Fn(&R) -> E) -> LambdaTrunc<E> {
        LambdaTrunc {
            coeffs: self.coeffs.iter().map(f).collect(),
            trunc: self.trunc,
        }
    }

    pub fn try_map<E: Ring>(&self, f: impl Fn(&R) -> Result<E>) -> Result<LambdaTrunc<E>> {
        Ok(LambdaTrunc {
            coeffs: self.coeffs.iter().map(f).collect::<Result<_>>()?,
            trunc: self.trunc,
        })
    }

    /// Sets the truncation, dropping terms above `λ^L`.
    pub fn with_trunc(&self, trunc: usize) -> Self {
        let t = self.trunc.map_or(trunc, |l| l.min(trunc));
        Self::new(self.coeffs.iter().take(t + 1).cloned().collect(), t)
    }

    fn join(a: Option<usize>, b: Option<usize>) -> Option<usize> {
        match (a, b) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, None) => x,
            (None, y) => y,
        }
    }

    fn aligned(self, trunc: Option<usize>) -> Vec<R> {
        match trunc {
            Some(l) => {
                let mut c = self.coeffs;
                c.resize(l + 1, R::zero());
                c
            }
            None => self.coeffs,
        }
    }

    /// `exp` in `λ`; needs a zero constant term and a finite truncation.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeff(0).is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        let l = self.truncation_or_err()?;
        Ok(Self::new(series_exp(&self.clone().aligned(Some(l))), l))
    }

    /// `log` in `λ`; needs constant term one and a finite truncation.
    pub fn log(&self) -> Result<Self> {
        if !self.coeff(0).is_one() {
            return Err(Error::NonUnitConstantTerm);
        }
        let l = self.truncation_or_err()?;
        Ok(Self::new(series_log(&self.clone().aligned(Some(l))), l))
    }

    fn truncation_or_err(&self) -> Result<usize> {
        match self.trunc {
            Some(l) => Ok(l),
            None if self.coeffs.len() == 1 => Ok(0),
            None => Err(Error::InsufficientPrecision("λ-series without truncation order".into())),
        }
    }
}

impl<R: Ring> PartialEq for LambdaTrunc<R> {
    fn eq(&self, other: &Self) -> bool {
        let n = self.coeffs.len().max(other.coeffs.len());
        (0..n).all(|k| self.coeff(k) == other.coeff(k))
    }
}

impl<R: Ring> Ring for LambdaTrunc<R> {
    fn zero() -> Self {
        Self::constant(R::zero())
    }
    fn one() -> Self {
        Self::constant(R::one())
    }
    fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }
    fn from_rational(r: &Rational) -> Self {
        Self::constant(R::from_rational(r))
    }
    fn try_inv(&self) -> Option<Self> {
        let b0 = self.coeff(0).try_inv()?;
        let l = match self.trunc {
            Some(l) => l,
            None if self.coeffs[1..].iter().all(Ring::is_zero) => {
                return Some(Self::constant(b0));
            }
            None => return None,
        };
        let mut out: Vec<R> = Vec::with_capacity(l + 1);
        out.push(b0.clone());
        for k in 1..=l {
            let mut acc = R::zero();
            for i in 1..=k {
                acc = acc + self.coeff(i) * out[k - i].clone();
            }
            out.push(-(b0.clone() * acc));
        }
        Some(Self::new(out, l))
    }
    fn scale(&self, r: &Rational) -> Self {
        self.map(|c| c.scale(r))
    }
}

impl<R: Ring> Add for LambdaTrunc<R> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let trunc = Self::join(self.trunc, rhs.trunc);
        let a = self.aligned(trunc);
        let b = rhs.aligned(trunc);
        let n = a.len().max(b.len());
        let coeffs = (0..n)
            .map(|k| {
                let x = a.get(k).cloned().unwrap_or_else(R::zero);
                let y = b.get(k).cloned().unwrap_or_else(R::zero);
                x + y
            })
            .collect();
        LambdaTrunc { coeffs, trunc }
    }
}

impl<R: Ring> Neg for LambdaTrunc<R> {
    type Output = Self;
    fn neg(self) -> Self {
        self.map(|c| -c.clone())
    }
}

impl<R: Ring> Sub for LambdaTrunc<R> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<R: Ring> Mul for LambdaTrunc<R> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let trunc = Self::join(self.trunc, rhs.trunc);
        let coeffs = match trunc {
            Some(l) => convolve(&self.aligned(Some(l)), &rhs.aligned(Some(l))),
            None => {
                let n = self.coeffs.len() + rhs.coeffs.len() - 1;
                let mut a = self.coeffs;
                let mut b = rhs.coeffs;
                a.resize(n, R::zero());
                b.resize(n, R::zero());
                convolve(&a, &b)
            }
        };
        LambdaTrunc { coeffs, trunc }
    }
}

impl<R: Ring> fmt::Display for LambdaTrunc<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*λ")?,
                _ => write!(f, "({c})*λ^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl<R: QAlgebra> QAlgebra for LambdaTrunc<R> {
    fn from_q(f: &RatFn<Rational>) -> Self {
        Self::constant(R::from_q(f))
    }
}

/// `Ψ^m`: `λ^k ↦ λ^{mk}` and `Ψ^m` on coefficients; images beyond `λ^L`
/// are dropped.
impl<R: Adams> Adams for LambdaTrunc<R> {
    fn adams(&self, m: u32) -> Result<Self> {
        let m = m as usize;
        let n = match self.trunc {
            Some(l) => l + 1,
            None => (self.coeffs.len() - 1) * m + 1,
        };
        let mut coeffs = vec![R::zero(); n];
        for (k, c) in self.coeffs.iter().enumerate() {
            if k * m < n {
                coeffs[k * m] = c.adams(m as u32)?;
            }
        }
        Ok(LambdaTrunc {
            coeffs,
            trunc: self.trunc,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::rat;

    type L = LambdaTrunc<Rational>;

    #[test]
    fn truncated_product() {
        let a = L::new(vec![rat(1, 1), rat(1, 1)], 2);
        let sq = a.clone() * a;
        assert_eq!(sq.coeffs(), &[rat(1, 1), rat(2, 1), rat(1, 1)]);
        let cube = sq * L::new(vec![rat(1, 1), rat(1, 1)], 2);
        assert_eq!(cube.coeffs(), &[rat(1, 1), rat(3, 1), rat(3, 1)]);
    }

    #[test]
    fn constants_adopt_truncation() {
        let x = L::lambda(3);
        let y = L::one() - x.clone();
        assert_eq!(y.trunc(), Some(3));
        let inv = y.try_inv().unwrap();
        assert_eq!(inv.coeffs(), &[rat(1, 1), rat(1, 1), rat(1, 1), rat(1, 1)]);
    }

    #[test]
    fn adams_drops_overflow() {
        let x = L::new(vec![rat(0, 1), rat(1, 1), rat(2, 1)], 3);
        let y = x.adams(2).unwrap();
        assert_eq!(y.coeffs(), &[rat(0, 1), rat(0, 1), rat(1, 1), rat(0, 1)]);
    }

    #[test]
    fn exp_log_round_trip() {
        let x = L::new(vec![rat(0, 1), rat(2, 1), rat(-1, 3), rat(5, 1)], 3);
        assert_eq!(x.exp().unwrap().log().unwrap(), x);
    }
}

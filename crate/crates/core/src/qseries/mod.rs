//! Series in the Novikov variable `Q`, truncated at a fixed degree.

mod lambda_trunc;

use std::fmt;

pub use lambda_trunc::LambdaTrunc;

use crate::error::{Error, Result};
use crate::rings::{Adams, Rational, Ring};

/// `Σ_{d ≤ D} f_d Q^d`; everything above `Q^D` is discarded.
#[derive(Clone, Debug, PartialEq)]
pub struct QSeries<R> {
    coeffs: Vec<R>,
    specialized: bool,
}

impl<R: Ring> QSeries<R> {
    /// Series with `coeffs[d]` at `Q^d`; truncation is `coeffs.len() - 1`.
    pub fn new(coeffs: Vec<R>) -> Self {
        assert!(!coeffs.is_empty(), "a Q-series keeps at least the Q^0 term");
        QSeries {
            coeffs,
            specialized: false,
        }
    }

    pub fn from_fn(trunc: usize, f: impl FnMut(usize) -> R) -> Self {
        Self::new((0..=trunc).map(f).collect())
    }

    pub fn zero(trunc: usize) -> Self {
        Self::from_fn(trunc, |_| R::zero())
    }

    pub fn one(trunc: usize) -> Self {
        Self::constant(R::one(), trunc)
    }

    pub fn constant(c: R, trunc: usize) -> Self {
        Self::from_fn(trunc, |d| if d == 0 { c.clone() } else { R::zero() })
    }

    /// `c Q^k`.
    pub fn monomial(c: R, k: usize, trunc: usize) -> Self {
        Self::from_fn(trunc, |d| if d == k { c.clone() } else { R::zero() })
    }

    /// Marks the coefficients as carrying parameters substituted by value
    /// (torus characters), so that Adams operations cannot be read off them.
    pub fn mark_specialized(mut self) -> Self {
        self.specialized = true;
        self
    }

    pub fn is_specialized(&self) -> bool {
        self.specialized
    }

    pub fn trunc(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, d: usize) -> &R {
        &self.coeffs[d]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Ring::is_zero)
    }

    pub fn map<E: Ring>(&self, f: impl Fn(&R) -> E) -> QSeries<E> {
        QSeries {
            coeffs: self.coeffs.iter().map(f).collect(),
            specialized: self.specialized,
        }
    }

    pub fn try_map<E: Ring>(&self, f: impl Fn(usize, &R) -> Result<E>) -> Result<QSeries<E>> {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(d, c)| f(d, c))
            .collect::<Result<_>>()?;
        Ok(QSeries {
            coeffs,
            specialized: self.specialized,
        })
    }

    /// Keeps degrees `≤ trunc`, padding with zeros when extending.
    pub fn truncate(&self, trunc: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(trunc + 1, R::zero());
        QSeries {
            coeffs,
            specialized: self.specialized,
        }
    }

    fn check_trunc(&self, rhs: &Self) -> Result<()> {
        if self.trunc() != rhs.trunc() {
            return Err(Error::TruncationMismatch {
                left: self.trunc(),
                right: rhs.trunc(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, rhs: &Self) -> Result<Self> {
        self.check_trunc(rhs)?;
        Ok(QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a.clone() + b.clone())
                .collect(),
            specialized: self.specialized || rhs.specialized,
        })
    }

    pub fn try_sub(&self, rhs: &Self) -> Result<Self> {
        self.try_add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        self.map(|c| -c.clone())
    }

    /// Cauchy product truncated at `D`.
    pub fn try_mul(&self, rhs: &Self) -> Result<Self> {
        self.check_trunc(rhs)?;
        Ok(QSeries {
            coeffs: convolve(&self.coeffs, &rhs.coeffs),
            specialized: self.specialized || rhs.specialized,
        })
    }

    /// Coefficientwise multiplication by a ring element.
    pub fn scale_by(&self, c: &R) -> Self {
        self.map(|x| x.clone() * c.clone())
    }

    /// Multiplication by `Q^k`.
    pub fn shift(&self, k: usize) -> Self {
        let d = self.trunc();
        let mut coeffs = vec![R::zero(); k.min(d + 1)];
        coeffs.extend(self.coeffs.iter().take((d + 1).saturating_sub(k)).cloned());
        QSeries {
            coeffs,
            specialized: self.specialized,
        }
    }

    /// `Σ a^n/n!` for `a` with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::NonZeroConstantTerm);
        }
        Ok(QSeries {
            coeffs: series_exp(&self.coeffs),
            specialized: self.specialized,
        })
    }

    /// `log a` for `a` with constant term exactly one.
    pub fn log(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::NonUnitConstantTerm);
        }
        Ok(QSeries {
            coeffs: series_log(&self.coeffs),
            specialized: self.specialized,
        })
    }

    /// Splits `a = a_0 · exp(h)` for `a_0` a unit, returning `(a_0, h)`.
    pub fn log_normalized(&self) -> Result<(R, Self)> {
        let a0 = self.coeffs[0].clone();
        let inv = a0.try_inv().ok_or(Error::NonUnitConstantTerm)?;
        let unit = self.scale_by(&inv);
        Ok((a0, unit.log()?))
    }

    /// `Q`-adic inverse; needs an invertible constant term.
    pub fn inverse(&self) -> Result<Self> {
        let a0 = &self.coeffs[0];
        let b0 = a0
            .try_inv()
            .ok_or_else(|| Error::NotInvertible(format!("Q^0 coefficient {a0}")))?;
        let n = self.coeffs.len();
        let mut out: Vec<R> = Vec::with_capacity(n);
        out.push(b0.clone());
        for k in 1..n {
            let mut acc = R::zero();
            for i in 1..=k {
                acc = acc + self.coeffs[i].clone() * out[k - i].clone();
            }
            out.push(-(b0.clone() * acc));
        }
        Ok(QSeries {
            coeffs: out,
            specialized: self.specialized,
        })
    }

    pub fn try_div(&self, rhs: &Self) -> Result<Self> {
        self.try_mul(&rhs.inverse()?)
    }
}

impl<R: Adams> QSeries<R> {
    /// `Ψ^m`: `Q^d ↦ Q^{md}` with `Ψ^m` on every coefficient. The result is
    /// truncated at `out_trunc`, by default `m·D`.
    pub fn adams(&self, m: u32, out_trunc: Option<usize>) -> Result<Self> {
        if self.specialized {
            return Err(Error::OpaqueParameters);
        }
        if m == 0 {
            return Err(Error::InvalidParameter("Adams index must be positive".into()));
        }
        let m = m as usize;
        let out = out_trunc.unwrap_or(self.trunc() * m);
        let mut coeffs = vec![R::zero(); out + 1];
        for (d, c) in self.coeffs.iter().enumerate() {
            if d * m > out {
                break;
            }
            coeffs[d * m] = c.adams(m as u32)?;
        }
        Ok(QSeries::new(coeffs))
    }
}

/// Free-function form of [`QSeries::adams`].
pub fn adams_on_series<R: Adams>(f: &QSeries<R>, m: u32, out_trunc: Option<usize>) -> Result<QSeries<R>> {
    f.adams(m, out_trunc)
}

impl<R: Ring> fmt::Display for QSeries<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (d, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match d {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*Q")?,
                _ => write!(f, "({c})*Q^{d}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(Q^{})", self.trunc() + 1)
    }
}

pub(crate) fn convolve<R: Ring>(a: &[R], b: &[R]) -> Vec<R> {
    let n = a.len().min(b.len());
    let mut out = vec![R::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if y.is_zero() {
                continue;
            }
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// `exp` of a truncated power series with zero constant term:
/// `n e_n = Σ_{k=1}^n k a_k e_{n-k}`.
pub(crate) fn series_exp<R: Ring>(a: &[R]) -> Vec<R> {
    let mut e: Vec<R> = Vec::with_capacity(a.len());
    e.push(R::one());
    for n in 1..a.len() {
        let mut acc = R::zero();
        for k in 1..=n {
            if a[k].is_zero() {
                continue;
            }
            acc = acc + a[k].scale(&int(k)) * e[n - k].clone();
        }
        e.push(acc.scale(&int(n).recip()));
    }
    e
}

/// `log` of a truncated power series with constant term one:
/// `n l_n = n a_n - Σ_{k=1}^{n-1} k l_k a_{n-k}`.
pub(crate) fn series_log<R: Ring>(a: &[R]) -> Vec<R> {
    let mut l: Vec<R> = Vec::with_capacity(a.len());
    l.push(R::zero());
    for n in 1..a.len() {
        let mut acc = a[n].scale(&int(n));
        for k in 1..n {
            if l[k].is_zero() {
                continue;
            }
            acc = acc - l[k].scale(&int(k)) * a[n - k].clone();
        }
        l.push(acc.scale(&int(n).recip()));
    }
    l
}

fn int(n: usize) -> Rational {
    Rational::from_integer(n.into())
}

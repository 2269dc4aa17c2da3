//! Dense univariate polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::{Field, Rational, Ring};

/// Dense polynomial, coefficient `i` multiplies `x^i`.
///
/// Trailing zeros are always trimmed, so the zero polynomial has no
/// coefficients and structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly<R> {
    coeffs: Vec<R>,
}

impl<R: Ring> Poly<R> {
    pub fn new(mut coeffs: Vec<R>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(R::one())
    }

    pub fn constant(c: R) -> Self {
        Poly::new(vec![c])
    }

    /// The variable `x`.
    pub fn x() -> Self {
        Poly::monomial(R::one(), 1)
    }

    pub fn monomial(c: R, k: usize) -> Self {
        if c.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![R::zero(); k + 1];
        coeffs[k] = c;
        Poly { coeffs }
    }

    /// Builds a polynomial from rational coefficients in ascending order.
    pub fn from_rationals(cs: &[Rational]) -> Self {
        Poly::new(cs.iter().map(R::from_rational).collect())
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Poly::new(cs.iter().map(|&c| R::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<R> {
        self.coeffs
    }

    pub fn coeff(&self, i: usize) -> R {
        self.coeffs.get(i).cloned().unwrap_or_else(R::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&R> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    /// Index of the lowest nonzero coefficient (the order of vanishing at 0).
    pub fn low_order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// `Some((c, k))` when the polynomial is the single term `c x^k`.
    pub fn as_monomial(&self) -> Option<(&R, usize)> {
        let k = self.low_order()?;
        if k + 1 == self.coeffs.len() {
            Some((&self.coeffs[k], k))
        } else {
            None
        }
    }

    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    /// Evaluates at a point of another ring through a coefficient map.
    pub fn eval_mapped<E: Ring>(&self, x: &E, embed: impl Fn(&R) -> E) -> E {
        let mut acc = E::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + embed(c);
        }
        acc
    }

    pub fn map<E: Ring>(&self, f: impl Fn(&R) -> E) -> Poly<E> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }

    pub fn scale(&self, c: &R) -> Self {
        Poly::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    pub fn derivative(&self) -> Self {
        Poly::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c.clone() * R::from_int(i as i64))
                .collect(),
        )
    }

    /// Substitutes `x ↦ x^m`.
    pub fn inflate(&self, m: u32) -> Self {
        let m = m as usize;
        if m == 1 || self.coeffs.len() <= 1 {
            return self.clone();
        }
        let mut out = vec![R::zero(); (self.coeffs.len() - 1) * m + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[i * m] = c.clone();
        }
        Poly { coeffs: out }
    }

    /// Multiplies by `x^k`.
    pub fn shift_up(&self, k: usize) -> Self {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut out = vec![R::zero(); k];
        out.extend(self.coeffs.iter().cloned());
        Poly { coeffs: out }
    }

    /// Divides by `x^k`, discarding lower terms.
    pub fn shift_down(&self, k: usize) -> Self {
        Poly::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    /// Reverses coefficient order relative to degree `n`: `x^n p(1/x)`.
    pub fn reversed(&self, n: usize) -> Self {
        let mut out = vec![R::zero(); n + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            out[n - i] = c.clone();
        }
        Poly::new(out)
    }

    /// Taylor shift `p(x + a)`.
    pub fn taylor_shift(&self, a: &R) -> Self {
        let lin = Poly::new(vec![a.clone(), R::one()]);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * lin.clone() + Poly::constant(c.clone());
        }
        acc
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Poly::one();
        for _ in 0..n {
            acc = acc * self.clone();
        }
        acc
    }

    /// Remainder modulo a divisor with unit leading coefficient.
    pub fn rem_monic(&self, m: &Poly<R>) -> Self {
        let dm = m.degree().expect("modulus must be nonzero");
        debug_assert!(m.leading().is_some_and(|c| c.is_one()));
        if self.coeffs.len() <= dm {
            return self.clone();
        }
        let mut r = self.coeffs.clone();
        for i in (dm..r.len()).rev() {
            let c = r[i].clone();
            if c.is_zero() {
                continue;
            }
            for (j, mc) in m.coeffs.iter().enumerate() {
                let idx = i - dm + j;
                r[idx] = r[idx].clone() - c.clone() * mc.clone();
            }
        }
        r.truncate(dm);
        Poly::new(r)
    }

    pub fn fmt_in(&self, f: &mut fmt::Formatter<'_>, var: &str) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let s = c.to_string();
            let compound = s.contains(' ');
            let (neg, body) = match s.strip_prefix('-') {
                Some(rest) if !compound => (true, rest.to_string()),
                _ => (false, s.clone()),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            first = false;
            let body = if compound { format!("({body})") } else { body };
            match i {
                0 => write!(f, "{body}")?,
                _ => {
                    if body != "1" {
                        write!(f, "{body}*")?;
                    }
                    if i == 1 {
                        write!(f, "{var}")?;
                    } else {
                        write!(f, "{var}^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl<F: Field> Poly<F> {
    /// Quotient and remainder; panics on a zero divisor.
    pub fn div_rem(&self, d: &Poly<F>) -> (Poly<F>, Poly<F>) {
        let dd = d.degree().expect("polynomial division by zero");
        if self.coeffs.len() <= dd {
            return (Poly::zero(), self.clone());
        }
        let lead_inv = d.leading().unwrap().inv();
        let mut r = self.coeffs.clone();
        let mut q = vec![F::zero(); r.len() - dd];
        for i in (dd..r.len()).rev() {
            let c = r[i].clone() * lead_inv.clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let idx = i - dd + j;
                r[idx] = r[idx].clone() - c.clone() * dc.clone();
            }
            q[i - dd] = c;
        }
        r.truncate(dd);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, d: &Poly<F>) -> Poly<F> {
        self.div_rem(d).1
    }

    /// Division that is known to be exact.
    pub fn exact_div(&self, d: &Poly<F>) -> Poly<F> {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly<F>) -> bool {
        other.rem(self).is_zero()
    }

    pub fn monic(&self) -> Poly<F> {
        match self.leading() {
            None => Poly::zero(),
            Some(c) if c.is_one() => self.clone(),
            Some(c) => self.scale(&c.inv()),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, other: &Poly<F>) -> Poly<F> {
        F::poly_gcd(self, other)
    }

    /// Returns `(g, s, t)` with `s·self + t·other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Poly<F>) -> (Poly<F>, Poly<F>, Poly<F>) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), Poly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0 - q.clone() * s1.clone();
            s0 = std::mem::replace(&mut s1, s);
            let t = t0 - q * t1.clone();
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            None => (r0, s0, t0),
            Some(c) => {
                let ci = c.inv();
                (r0.scale(&ci), s0.scale(&ci), t0.scale(&ci))
            }
        }
    }

    /// Inverse of `self` modulo `m`, if the two are coprime.
    pub fn inverse_mod(&self, m: &Poly<F>) -> Option<Poly<F>> {
        let (g, s, _) = self.ext_gcd(m);
        if g.is_constant() && !g.is_zero() {
            Some(s.rem(m))
        } else {
            None
        }
    }

    /// Squarefree decomposition (Yun): pairs `(g_k, k)` with `self = c·∏ g_k^k`,
    /// each `g_k` monic, squarefree, of positive degree and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(Poly<F>, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.exact_div(&a0);
        let c = df.exact_div(&a0);
        let mut d = c - b.derivative();
        let mut k = 1;
        while b.degree().unwrap_or(0) > 0 {
            let a = b.gcd(&d);
            let b_next = b.exact_div(&a);
            let c_next = d.exact_div(&a);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a, k));
            }
            d = c_next - b_next.derivative();
            b = b_next;
            k += 1;
        }
        out
    }

    /// Multiplicity of `x = a` as a root.
    pub fn root_multiplicity(&self, a: &F) -> usize {
        if self.is_zero() {
            return usize::MAX;
        }
        self.taylor_shift(a).low_order().unwrap_or(0)
    }
}

pub(crate) fn euclid_gcd<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Poly<F> {
    if let Some(g) = gcd_fast_path(a, b) {
        return g;
    }
    let (mut a, mut b) = if a.coeffs.len() >= b.coeffs.len() {
        (a.monic(), b.monic())
    } else {
        (b.monic(), a.monic())
    };
    while !b.is_zero() {
        let r = a.rem(&b).monic();
        a = std::mem::replace(&mut b, r);
    }
    a
}

fn gcd_fast_path<F: Field>(a: &Poly<F>, b: &Poly<F>) -> Option<Poly<F>> {
    if a.is_zero() {
        return Some(b.monic());
    }
    if b.is_zero() {
        return Some(a.monic());
    }
    if a.is_constant() || b.is_constant() {
        return Some(Poly::one());
    }
    // x^k against anything: the common power of x.
    for (m, other) in [(a, b), (b, a)] {
        if let Some((_, k)) = m.as_monomial() {
            let j = other.low_order().unwrap_or(0).min(k);
            return Some(Poly::monomial(F::one(), j));
        }
    }
    // Strip common powers of x first; they are cheap to factor out.
    let ka = a.low_order().unwrap_or(0);
    let kb = b.low_order().unwrap_or(0);
    if ka > 0 || kb > 0 {
        let k = ka.min(kb);
        let g = F::poly_gcd(&a.shift_down(ka), &b.shift_down(kb));
        return Some(g.shift_up(k));
    }
    if a == b {
        return Some(a.monic());
    }
    None
}

/// Gcd over `ℚ` via a multi-modular gcd of the integer primitive parts.
pub(crate) fn rational_gcd(a: &Poly<Rational>, b: &Poly<Rational>) -> Poly<Rational> {
    if let Some(g) = gcd_fast_path(a, b) {
        return g;
    }
    let to_ints =
        |p: Poly<Rational>| -> Vec<num_bigint::BigInt> { p.coeffs.into_iter().map(|c| c.to_integer()).collect() };
    let g = super::modgcd::integer_poly_gcd(&to_ints(primitive(a)), &to_ints(primitive(b)));
    Poly::new(g.into_iter().map(Rational::from_integer).collect()).monic()
}

/// Rescales a rational polynomial to integer coefficients with content 1.
fn primitive(p: &Poly<Rational>) -> Poly<Rational> {
    use num_integer::Integer;
    use num_traits::{One, Signed, Zero};
    if p.is_zero() {
        return p.clone();
    }
    let mut den = num_bigint::BigInt::one();
    for c in &p.coeffs {
        den = den.lcm(c.denom());
    }
    let ints: Vec<num_bigint::BigInt> = p
        .coeffs
        .iter()
        .map(|c| (c * Rational::from_integer(den.clone())).to_integer())
        .collect();
    let mut g = num_bigint::BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if p.leading().unwrap().is_negative() {
        g = -g;
    }
    Poly::new(ints.into_iter().map(|c| Rational::from_integer(c / &g)).collect())
}

impl<R: Ring> Add for Poly<R> {
    type Output = Poly<R>;
    fn add(self, rhs: Poly<R>) -> Poly<R> {
        let (mut long, short) = if self.coeffs.len() >= rhs.coeffs.len() {
            (self.coeffs, rhs.coeffs)
        } else {
            (rhs.coeffs, self.coeffs)
        };
        for (i, c) in short.into_iter().enumerate() {
            long[i] = long[i].clone() + c;
        }
        Poly::new(long)
    }
}

impl<R: Ring> Neg for Poly<R> {
    type Output = Poly<R>;
    fn neg(self) -> Poly<R> {
        Poly {
            coeffs: self.coeffs.into_iter().map(|c| -c).collect(),
        }
    }
}

impl<R: Ring> Sub for Poly<R> {
    type Output = Poly<R>;
    fn sub(self, rhs: Poly<R>) -> Poly<R> {
        self + (-rhs)
    }
}

impl<R: Ring> Mul for Poly<R> {
    type Output = Poly<R>;
    fn mul(self, rhs: Poly<R>) -> Poly<R> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![R::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(out)
    }
}

impl<R: Ring> fmt::Display for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_in(f, "x")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::rat;

    type P = Poly<Rational>;

    #[test]
    fn trims_and_degrees() {
        let p = P::from_ints(&[1, 2, 0, 0]);
        assert_eq!(p.degree(), Some(1));
        assert!(P::from_ints(&[0, 0]).is_zero());
    }

    #[test]
    fn division_identity() {
        let a = P::from_ints(&[-1, 0, 0, 0, 0, 0, 1]);
        let b = P::from_ints(&[1, 1, 1]);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q * b + r, a);
    }

    #[test]
    fn gcd_of_cyclotomic_products() {
        // (x^6 - 1) and (x^4 - 1) share x^2 - 1.
        let a = P::from_ints(&[-1, 0, 0, 0, 0, 0, 1]);
        let b = P::from_ints(&[-1, 0, 0, 0, 1]);
        assert_eq!(a.gcd(&b), P::from_ints(&[-1, 0, 1]));
        assert_eq!(euclid_gcd(&a, &b), P::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn gcd_with_powers_of_x() {
        let a = P::from_ints(&[0, 0, 3, 3]);
        let b = P::from_ints(&[0, 2, 2]);
        assert_eq!(a.gcd(&b), P::from_ints(&[0, 1, 1]));
    }

    #[test]
    fn ext_gcd_bezout() {
        let a = P::from_ints(&[2, -3, 1]);
        let b = P::from_ints(&[-1, 0, 0, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, P::from_ints(&[-1, 1]));
        assert_eq!(s * a + t * b, g);
    }

    #[test]
    fn taylor_shift_and_multiplicity() {
        // (x-1)^3 (x+2)
        let p = P::from_ints(&[-1, 1]).pow(3) * P::from_ints(&[2, 1]);
        assert_eq!(p.root_multiplicity(&rat(1, 1)), 3);
        assert_eq!(p.root_multiplicity(&rat(-2, 1)), 1);
        assert_eq!(p.root_multiplicity(&rat(0, 1)), 0);
        let shifted = P::from_ints(&[0, 0, 1]).taylor_shift(&rat(1, 1));
        assert_eq!(shifted, P::from_ints(&[1, 2, 1]));
    }

    #[test]
    fn yun_decomposition() {
        let a = P::from_ints(&[-1, 1]);
        let b = P::from_ints(&[1, 0, 1]);
        let c = P::from_ints(&[3, 1]);
        let p = a.pow(3) * b.clone() * c.clone() * b.clone();
        let dec = p.squarefree_decomposition();
        assert_eq!(dec, vec![(c, 1), (b, 2), (a, 3)]);
    }

    #[test]
    fn rem_monic_matches_div_rem() {
        let a = P::from_ints(&[5, -3, 2, 7, 1, 4]);
        let m = P::from_ints(&[1, 1, 0, 1]);
        assert_eq!(a.rem_monic(&m), a.rem(&m));
    }

    #[test]
    fn display() {
        let p = P::from_rationals(&[rat(1, 1), rat(-1, 2), rat(0, 1), rat(1, 1)]);
        assert_eq!(p.to_string(), "1 - 1/2*x + x^3");
    }
}

//! Quotient rings `F[x]/(g)` with a monic modulus.
//!
//! One representation serves the number fields used for local expansions
//! (`ℚ[x]/Φ_m`, `ℚ[x]/(x^m - a)`), the étale algebras used to sum residues
//! over all roots of a squarefree factor, and the nilpotent class rings of
//! projective space (`ℚ(q)[P]/∏(P - Λ_j)`, `ℚ(q)[p]/(p^k)`).

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{rational_nth_root, Field, Poly, QAlgebra, RatFn, Rational, Ring};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuotientKind {
    /// `ℚ[x]/Φ_m`; `x` is a primitive `m`-th root of unity.
    Cyclotomic { order: u32 },
    /// `ℚ[x]/(x^m - a)`, checked irreducible.
    Radical { degree: u32, base: Rational },
    /// Squarefree modulus, not necessarily irreducible.
    Etale,
    /// Any monic modulus (class rings with nilpotents).
    General,
}

/// The modulus and metadata of a quotient ring.
#[derive(Debug, PartialEq, Eq)]
pub struct QuotientRing<F> {
    modulus: Poly<F>,
    kind: QuotientKind,
    var: &'static str,
}

impl<F: Field> QuotientRing<F> {
    /// Quotient by a nonconstant polynomial (made monic).
    pub fn new(modulus: Poly<F>, var: &'static str) -> Result<Arc<Self>> {
        Self::with_kind(modulus, QuotientKind::General, var)
    }

    /// Quotient by a squarefree polynomial; sums over its roots are traces.
    pub fn etale(modulus: Poly<F>) -> Result<Arc<Self>> {
        let g = modulus.gcd(&modulus.derivative());
        if !g.is_constant() {
            return Err(Error::InvalidParameter("étale modulus must be squarefree".into()));
        }
        Self::with_kind(modulus, QuotientKind::Etale, "x")
    }

    fn with_kind(modulus: Poly<F>, kind: QuotientKind, var: &'static str) -> Result<Arc<Self>> {
        if modulus.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidParameter("quotient modulus must be nonconstant".into()));
        }
        Ok(Arc::new(QuotientRing {
            modulus: modulus.monic(),
            kind,
            var,
        }))
    }

    pub fn modulus(&self) -> &Poly<F> {
        &self.modulus
    }

    pub fn kind(&self) -> &QuotientKind {
        &self.kind
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    pub fn var(&self) -> &'static str {
        self.var
    }

    /// Whether every nonzero element is invertible.
    pub fn is_field(&self) -> bool {
        matches!(
            self.kind,
            QuotientKind::Cyclotomic { .. } | QuotientKind::Radical { .. }
        )
    }

    pub fn elem(self: &Arc<Self>, residue: Poly<F>) -> Quotient<F> {
        Quotient {
            ring: Some(self.clone()),
            residue: residue.rem_monic(&self.modulus),
        }
    }

    /// Class of the variable `x`.
    pub fn generator(self: &Arc<Self>) -> Quotient<F> {
        self.elem(Poly::x())
    }
}

impl QuotientRing<Rational> {
    /// `ℚ(ζ_m) = ℚ[x]/Φ_m`.
    pub fn cyclotomic(m: u32) -> Arc<Self> {
        Self::with_kind(cyclotomic_poly(m), QuotientKind::Cyclotomic { order: m }, "ζ")
            .expect("cyclotomic polynomial is nonconstant")
    }

    /// `ℚ[x]/(x^m - a)`; rejects reducible binomials.
    ///
    /// `x^m - a` is irreducible over `ℚ` iff `a` is not a `p`-th power for any
    /// prime `p | m`, and `a ∉ -4ℚ^4` when `4 | m`.
    pub fn radical(m: u32, a: Rational) -> Result<Arc<Self>> {
        let reducible = || Error::ReducibleModulus {
            degree: m,
            base: a.to_string(),
        };
        if m == 0 || a == Rational::from_integer(0.into()) {
            return Err(reducible());
        }
        for p in prime_factors(m) {
            if rational_nth_root(&a, p).is_some() {
                return Err(reducible());
            }
        }
        if m.is_multiple_of(4) {
            let b = -a.clone() / Rational::from_integer(4.into());
            if rational_nth_root(&b, 4).is_some() {
                return Err(reducible());
            }
        }
        let mut coeffs = vec![Rational::from_integer(0.into()); m as usize + 1];
        coeffs[0] = -a.clone();
        coeffs[m as usize] = Rational::from_integer(1.into());
        Self::with_kind(Poly::new(coeffs), QuotientKind::Radical { degree: m, base: a }, "x")
    }
}

fn prime_factors(mut n: u32) -> Vec<u32> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// The `m`-th cyclotomic polynomial, `Φ_m = ∏_{d | m} (x^d - 1)^{μ(m/d)}`.
pub fn cyclotomic_poly(m: u32) -> Poly<Rational> {
    assert!(m >= 1, "cyclotomic order must be positive");
    let binomial = |d: u32| {
        let mut coeffs = vec![Rational::from_integer(0.into()); d as usize + 1];
        coeffs[0] = Rational::from_integer((-1).into());
        coeffs[d as usize] = Rational::from_integer(1.into());
        Poly::new(coeffs)
    };
    let mut num = Poly::one();
    let mut den = Poly::one();
    for d in (1..=m).filter(|d| m.is_multiple_of(*d)) {
        match mobius(m / d) {
            1 => num = num * binomial(d),
            -1 => den = den * binomial(d),
            _ => {}
        }
    }
    num.exact_div(&den)
}

fn mobius(n: u32) -> i32 {
    let ps = prime_factors(n);
    let squarefree = ps.iter().product::<u32>() == n;
    match (squarefree, ps.len() % 2) {
        (false, _) => 0,
        (true, 0) => 1,
        (true, _) => -1,
    }
}

/// Element of a quotient ring. Constants carry no ring and adopt the ring
/// of the element they are combined with.
#[derive(Clone, Debug)]
pub struct Quotient<F> {
    ring: Option<Arc<QuotientRing<F>>>,
    residue: Poly<F>,
}

/// Element of `ℚ(ζ_m)`.
pub type CyclotomicElem = Quotient<Rational>;
/// Element of `ℚ[x]/(x^m - a)`.
pub type RadicalExtElem = Quotient<Rational>;
/// Element of a class ring `F[P]/rel(P)`.
pub type NilpotentElem<F> = Quotient<F>;

impl<F: Field> Quotient<F> {
    pub fn constant(c: F) -> Self {
        Quotient {
            ring: None,
            residue: Poly::constant(c),
        }
    }

    pub fn residue(&self) -> &Poly<F> {
        &self.residue
    }

    pub fn ring(&self) -> Option<&Arc<QuotientRing<F>>> {
        self.ring.as_ref()
    }

    /// Coefficients of the residue in the basis `1, x, …, x^{n-1}`.
    pub fn components(&self) -> Vec<F> {
        let n = self.ring.as_ref().map_or(1, |r| r.degree());
        (0..n).map(|i| self.residue.coeff(i)).collect()
    }

    fn join(a: &Option<Arc<QuotientRing<F>>>, b: &Option<Arc<QuotientRing<F>>>) -> Option<Arc<QuotientRing<F>>> {
        match (a, b) {
            (Some(x), Some(y)) => {
                assert!(
                    Arc::ptr_eq(x, y) || x.modulus == y.modulus,
                    "mixing elements of different quotient rings"
                );
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }

    /// Trace of multiplication by `self` over `F`; for an étale algebra this
    /// is the sum of the element's values over all roots of the modulus.
    pub fn trace(&self) -> F {
        let Some(ring) = &self.ring else {
            return self.residue.coeff(0);
        };
        let n = ring.degree();
        let mut acc = F::zero();
        let mut basis = Poly::one();
        for i in 0..n {
            let prod = (self.residue.clone() * basis.clone()).rem_monic(&ring.modulus);
            acc = acc + prod.coeff(i);
            basis = basis.shift_up(1).rem_monic(&ring.modulus);
        }
        acc
    }

    /// Applies a coefficient map into another quotient ring with the mapped
    /// modulus. The map must be a ring homomorphism on `F`.
    pub fn map_into<E: Field>(&self, target: Option<&Arc<QuotientRing<E>>>, f: impl Fn(&F) -> E) -> Quotient<E> {
        let residue = self.residue.map(f);
        match target {
            Some(r) => r.elem(residue),
            None => Quotient { ring: None, residue },
        }
    }

    /// Ring homomorphism `x ↦ value` into `F`, valid when `value` is a root
    /// of the modulus.
    pub fn evaluate(&self, value: &F) -> Result<F> {
        if let Some(r) = &self.ring {
            if !r.modulus.eval(value).is_zero() {
                return Err(Error::InvalidParameter(format!("{value} is not a root of the modulus")));
            }
        }
        Ok(self.residue.eval(value))
    }
}

impl<F: Field> PartialEq for Quotient<F> {
    fn eq(&self, other: &Self) -> bool {
        self.residue == other.residue
    }
}

impl<F: Field> Ring for Quotient<F> {
    fn zero() -> Self {
        Quotient {
            ring: None,
            residue: Poly::zero(),
        }
    }
    fn one() -> Self {
        Self::constant(F::one())
    }
    fn is_zero(&self) -> bool {
        self.residue.is_zero()
    }
    fn from_rational(r: &Rational) -> Self {
        Self::constant(F::from_rational(r))
    }
    fn try_inv(&self) -> Option<Self> {
        match &self.ring {
            None => {
                let c = self.residue.coeff(0).try_inv()?;
                Some(Self::constant(c))
            }
            Some(r) => {
                let s = cramer_inverse(&self.residue, &r.modulus)?;
                Some(r.elem(s))
            }
        }
    }
}

/// Solves `u·s ≡ 1 (mod modulus)` through the multiplication matrix of `u`,
/// eliminating fraction-free so entries stay polynomial in the inputs.
fn cramer_inverse<F: Field>(u: &Poly<F>, modulus: &Poly<F>) -> Option<Poly<F>> {
    let n = modulus.degree()?;
    let mut a = vec![vec![F::zero(); n + 1]; n];
    let mut col = u.rem_monic(modulus);
    for k in 0..n {
        for (i, row) in a.iter_mut().enumerate() {
            row[k] = col.coeff(i);
        }
        col = col.shift_up(1).rem_monic(modulus);
    }
    a[0][n] = F::one();
    let mut prev_inv = F::one();
    for k in 0..n {
        let p = (k..n).find(|&i| !a[i][k].is_zero())?;
        a.swap(p, k);
        for i in k + 1..n {
            for j in k + 1..=n {
                let v = a[k][k].clone() * a[i][j].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v * prev_inv.clone();
            }
            a[i][k] = F::zero();
        }
        prev_inv = a[k][k].inv();
    }
    let mut x = vec![F::zero(); n];
    for i in (0..n).rev() {
        let mut acc = a[i][n].clone();
        for j in i + 1..n {
            acc = acc - a[i][j].clone() * x[j].clone();
        }
        x[i] = acc * a[i][i].inv();
    }
    Some(Poly::new(x))
}

impl<F: Field> Add for Quotient<F> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Quotient {
            ring: Self::join(&self.ring, &rhs.ring),
            residue: self.residue + rhs.residue,
        }
    }
}

impl<F: Field> Sub for Quotient<F> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Quotient {
            ring: Self::join(&self.ring, &rhs.ring),
            residue: self.residue - rhs.residue,
        }
    }
}

impl<F: Field> Neg for Quotient<F> {
    type Output = Self;
    fn neg(self) -> Self {
        Quotient {
            ring: self.ring,
            residue: -self.residue,
        }
    }
}

impl<F: Field> Mul for Quotient<F> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let ring = Self::join(&self.ring, &rhs.ring);
        let prod = self.residue * rhs.residue;
        let residue = match &ring {
            Some(r) => prod.rem_monic(&r.modulus),
            None => prod,
        };
        Quotient { ring, residue }
    }
}

impl<F: Field> fmt::Display for Quotient<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = self.ring.as_ref().map_or("x", |r| r.var);
        self.residue.fmt_in(f, var)
    }
}

impl<F: Field + QAlgebra> QAlgebra for Quotient<F> {
    fn from_q(f: &RatFn<Rational>) -> Self {
        Self::constant(F::from_q(f))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::rat;

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), Poly::from_ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), Poly::from_ints(&[1, 1]));
        assert_eq!(cyclotomic_poly(6), Poly::from_ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), Poly::from_ints(&[1, 0, -1, 0, 1]));
    }

    #[test]
    fn cyclotomic_product_identity() {
        for m in 1..=24u32 {
            let mut prod = Poly::<Rational>::one();
            for d in 1..=m {
                if m % d == 0 {
                    prod = prod * cyclotomic_poly(d);
                }
            }
            let mut expected = vec![rat(0, 1); m as usize + 1];
            expected[0] = rat(-1, 1);
            expected[m as usize] = rat(1, 1);
            assert_eq!(prod, Poly::new(expected), "m = {m}");
        }
    }

    #[test]
    fn root_of_unity_arithmetic() {
        let k = QuotientRing::cyclotomic(3);
        let z = k.generator();
        assert!(z.pow(3).is_one());
        assert!(!z.is_one());
        let zi = z.try_inv().unwrap();
        assert_eq!(zi, z.pow(2));
        // 1 + ζ + ζ² = 0
        assert!((Quotient::one() + z.clone() + z.pow(2)).is_zero());
    }

    #[test]
    fn radical_irreducibility() {
        assert!(QuotientRing::radical(2, rat(3, 2)).is_ok());
        assert!(QuotientRing::radical(2, rat(4, 9)).is_err());
        assert!(QuotientRing::radical(3, rat(-8, 1)).is_err());
        assert!(QuotientRing::radical(3, rat(2, 1)).is_ok());
        // x^4 + 4 = (x^2+2x+2)(x^2-2x+2)
        assert!(QuotientRing::radical(4, rat(-4, 1)).is_err());
        assert!(QuotientRing::radical(6, rat(8, 1)).is_err());
        let k = QuotientRing::radical(2, rat(2, 1)).unwrap();
        let s = k.generator();
        assert_eq!(s.clone() * s, Quotient::from_int(2));
    }

    #[test]
    fn nilpotent_ring_inverse() {
        // ℚ[p]/(p^2): (1 + p)^{-1} = 1 - p
        let r = QuotientRing::new(Poly::<Rational>::from_ints(&[0, 0, 1]), "p").unwrap();
        let p = r.generator();
        let u = Quotient::one() + p.clone();
        assert_eq!(u.try_inv().unwrap(), Quotient::one() - p.clone());
        assert!(p.try_inv().is_none());
    }

    #[test]
    fn etale_trace_is_sum_over_roots() {
        // roots 2, 3: trace(x^2) = 4 + 9
        let r = QuotientRing::etale(Poly::<Rational>::from_ints(&[6, -5, 1])).unwrap();
        let x = r.generator();
        assert_eq!(x.pow(2).trace(), rat(13, 1));
        assert_eq!(Quotient::<Rational>::one().trace(), rat(1, 1));
        assert_eq!(r.elem(Poly::one()).trace(), rat(2, 1));
    }

    #[test]
    fn constants_adopt_context() {
        let k = QuotientRing::cyclotomic(4);
        let i = k.generator();
        let sum = Quotient::from_int(2) + i.clone() * i;
        assert_eq!(sum, Quotient::from_int(1));
    }
}

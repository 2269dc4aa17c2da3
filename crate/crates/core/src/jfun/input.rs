use crate::adelic::classify_denominator;
use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::rings::{cyclotomic_poly, Poly, QAlgebra, Quotient, RatFn, Rational, Ring};

type R = RatFn<Rational>;

/// Splitting `f = L + g` with `L` a Laurent polynomial in `q` and `g`
/// regular at `q = 0` and vanishing at `q = ∞`.
pub trait LaurentSplit: QAlgebra {
    fn laurent_part(&self) -> Result<Self>;
    /// Denominators of every rational-function component.
    fn denominators(&self) -> Vec<Poly<Rational>>;
}

impl LaurentSplit for R {
    fn laurent_part(&self) -> Result<Self> {
        // f = A/(q^k B) = C/B + P/q^k with deg C < deg B.
        let a = self.numer();
        let den = self.denom();
        let k = den.low_order().unwrap_or(0);
        let b = den.shift_down(k);
        let qk = Poly::monomial(Rational::one(), k);
        let p = if b.is_constant() {
            a.scale(&b.coeff(0).recip())
        } else {
            let qk_inv = qk.inverse_mod(&b).expect("q is coprime to B");
            let c = (a.clone() * qk_inv).rem(&b);
            (a.clone() - c * qk.clone()).exact_div(&b)
        };
        RatFn::new(p, qk)
    }

    fn denominators(&self) -> Vec<Poly<Rational>> {
        vec![self.denom().clone()]
    }
}

impl LaurentSplit for Quotient<R> {
    fn laurent_part(&self) -> Result<Self> {
        let parts = self
            .components()
            .iter()
            .map(LaurentSplit::laurent_part)
            .collect::<Result<Vec<_>>>()?;
        Ok(match self.ring() {
            Some(ring) => ring.elem(Poly::new(parts)),
            None => Quotient::constant(parts.into_iter().next().unwrap_or_else(R::zero)),
        })
    }

    fn denominators(&self) -> Vec<Poly<Rational>> {
        self.components().iter().map(|c| c.denom().clone()).collect()
    }
}

/// Laurent-polynomial parts of each `Q`-coefficient, after removing the
/// dilaton shift `1 - q` from the `Q^0` coefficient.
///
/// Every denominator must factor as `q^k` times cyclotomic polynomials and
/// members of `allowed_extra`; anything else is reported as unclassified.
pub fn extract_input_t<C>(f: &QSeries<C>, allowed_extra: &[Poly<Rational>]) -> Result<QSeries<C>>
where
    C: LaurentSplit,
{
    let max_deg = f
        .coeffs()
        .iter()
        .flat_map(|c| c.denominators())
        .filter_map(|d| d.degree())
        .max()
        .unwrap_or(0);
    // φ(n) ≥ sqrt(n/2), so every Φ_n of degree ≤ max_deg has n below this.
    let nmax = 2 * max_deg * max_deg + 2;
    let mut factors: Vec<Poly<Rational>> = (1..=nmax as u32)
        .filter(|&n| totient(n) as usize <= max_deg)
        .map(cyclotomic_poly)
        .collect();
    factors.extend(allowed_extra.iter().map(Poly::monic));
    let one_minus_q = C::from_q(&R::one_minus(Rational::one(), 1));
    f.try_map(|d, c| {
        for den in c.denominators() {
            let rest = classify_denominator(&den, &factors);
            if !rest.is_constant() {
                return Err(Error::UnclassifiedFactor(format!("{rest} in degree {d}")));
            }
        }
        if d == 0 {
            (c.clone() - one_minus_q.clone()).laurent_part()
        } else {
            c.laurent_part()
        }
    })
}

fn totient(n: u32) -> u32 {
    let mut out = n;
    let mut rest = n;
    let mut p = 2;
    while p * p <= rest {
        if rest.is_multiple_of(p) {
            out -= out / p;
            while rest.is_multiple_of(p) {
                rest /= p;
            }
        }
        p += 1;
    }
    if rest > 1 {
        out -= out / rest;
    }
    out
}

/// Monic `q^r - Λ_j/Λ_i` for `i ≠ j` and `1 ≤ r ≤ D`: the non-cyclotomic
/// denominators of the equivariant series.
pub fn equivariant_factors(lambdas: &[Rational], qdeg: usize) -> Vec<Poly<Rational>> {
    let mut out = Vec::new();
    for (i, li) in lambdas.iter().enumerate() {
        for (j, lj) in lambdas.iter().enumerate() {
            if i != j {
                for r in 1..=qdeg {
                    out.push(Poly::monomial(Rational::one(), r) - Poly::constant(lj / li));
                }
            }
        }
    }
    out
}

/// Degrees `d ≥ 1` with nonzero input.
pub fn nonzero_input_degrees<C: Ring>(t: &QSeries<C>) -> Vec<usize> {
    (1..=t.trunc()).filter(|&d| !t.coeff(d).is_zero()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::rat;

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::from_ints(cs)
    }

    #[test]
    fn split_recovers_pieces() {
        // q^-2 + 3 + q plus two terms vanishing at ∞
        let laurent = R::new(p(&[1, 0, 3, 1]), p(&[0, 0, 1])).unwrap();
        let tail = R::new(p(&[1]), p(&[1, -1])).unwrap() + R::new(p(&[0, 1]), p(&[1, 2, 1])).unwrap();
        let f = laurent.clone() + tail;
        assert_eq!(f.laurent_part().unwrap(), laurent);
    }

    #[test]
    fn proper_regular_part_is_dropped() {
        let f = R::new(p(&[2, 1]), p(&[3, 0, 1])).unwrap();
        assert!(f.laurent_part().unwrap().is_zero());
        // q/(1 - q) = -1 + 1/(1 - q): polynomial part -1
        let g = R::new(p(&[0, 1]), p(&[1, -1])).unwrap();
        assert_eq!(g.laurent_part().unwrap(), R::from_int(-1));
    }

    #[test]
    fn split_by_pole_location() {
        let f = R::q_pow(-1) + R::new(p(&[1]), p(&[1, -1])).unwrap();
        assert_eq!(f.laurent_part().unwrap(), R::q_pow(-1));
        let neg = R::constant(rat(-1, 1));
        assert_eq!(neg.laurent_part().unwrap(), neg);
    }

    #[test]
    fn fixed_point_components_have_zero_input() {
        let spec = super::super::ToricSpec::new(1, 5);
        let f = super::super::cpn_component(&spec, 1).unwrap();
        let extra = equivariant_factors(&spec.lambdas, 5);
        assert!(extract_input_t(&f, &extra).unwrap().is_zero());
        assert!(matches!(extract_input_t(&f, &[]), Err(Error::UnclassifiedFactor(_))));
    }
}

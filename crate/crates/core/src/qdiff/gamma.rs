use crate::error::{Error, Result};
use crate::qseries::{LambdaTrunc, QSeries};
use crate::rings::{QAlgebra, RatFn, Rational, Ring};

type R = RatFn<Rational>;

/// The three ratios of `Γ_{q^{-1}}`-symbols acting on `Q`-degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GammaMode {
    /// `∏_{r=0}^{ld-1} (1 - u q^{-r})`
    Desc,
    /// `1 / ∏_{r=1}^{ld} (1 - u q^r)`
    InvAsc,
    /// `∏_{r=1}^{ld} (1 - u q^r)`
    Asc,
}

/// The factor multiplying `f_d` under the Γ-operator with parameters `(l, u)`.
pub fn gamma_closed_factor<C: QAlgebra>(mode: GammaMode, l: usize, u: &C, d: usize) -> Result<C> {
    let n = l * d;
    let factor = |r: i64| C::one() - u.clone() * C::from_q(&R::q_pow(r));
    match mode {
        GammaMode::Desc => Ok((0..n as i64).fold(C::one(), |acc, r| acc * factor(-r))),
        GammaMode::Asc => Ok((1..=n as i64).fold(C::one(), |acc, r| acc * factor(r))),
        GammaMode::InvAsc => {
            let p = gamma_closed_factor(GammaMode::Asc, l, u, d)?;
            p.try_inv()
                .ok_or_else(|| Error::NotInvertible(format!("Γ-operator factor {p}")))
        }
    }
}

/// Applies a Γ-operator through its closed finite products.
pub fn gamma_op<C: QAlgebra>(mode: GammaMode, l: usize, u: &C, f: &QSeries<C>) -> Result<QSeries<C>> {
    let g = f.try_map(|d, c| Ok(gamma_closed_factor(mode, l, u, d)? * c.clone()))?;
    Ok(g)
}

/// Symbol of the Γ-operator on `Q^d` with `u = λ`, computed as a truncated
/// exponential: `exp(Σ_{k ≤ L} λ^k s_k(q))` where
/// `s_k = (q^{-kld} - 1)/(k(1 - q^{-k}))` for `Desc` and
/// `s_k = ∓ q^k (1 - q^{kld})/(k(1 - q^k))` for `Asc`/`InvAsc`.
pub fn gamma_symbol(mode: GammaMode, l: usize, d: usize, lambda_order: usize) -> LambdaTrunc<R> {
    let one = Rational::from_integer(1.into());
    let n = (l * d) as i64;
    let mut coeffs = vec![R::zero(); lambda_order + 1];
    for (k, slot) in coeffs.iter_mut().enumerate().skip(1) {
        let kk = k as i64;
        let inv_k = Rational::new(1.into(), k.into());
        *slot = match mode {
            GammaMode::Desc => {
                let num = R::q_pow(-kk * n) - R::one();
                let den = R::one_minus(one.clone(), -kk);
                num.checked_div(&den).expect("nonzero").scale(&inv_k)
            }
            GammaMode::Asc | GammaMode::InvAsc => {
                let num = R::q_pow(kk) * R::one_minus(one.clone(), kk * n);
                let den = R::one_minus(one.clone(), kk);
                let s = num.checked_div(&den).expect("nonzero").scale(&inv_k);
                if mode == GammaMode::Asc {
                    -s
                } else {
                    s
                }
            }
        };
    }
    LambdaTrunc::new(coeffs, lambda_order)
        .exp()
        .expect("zero constant term")
}

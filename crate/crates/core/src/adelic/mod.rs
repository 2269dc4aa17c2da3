//! Expansions at `q = 1` and at inverse roots of unity, and the three
//! adelic membership conditions.
//!
//! Condition (i) is tested through the logarithm: with `g = f/(1-q)`
//! expanded in `t = q - 1`, the series `log(g/g_0)` must have
//! `t`-valuation at least `-1` in every `Q`-degree, and
//! `τ_d = -[t^{-1}] log(g/g_0)_d`.
//!
//! Condition (ii) expands each `f_d` at `ζ^{-1}`, substitutes
//! `q ↦ q^{1/m}/ζ` through the binomial series, divides by
//! `Ψ^m(f/(1-q))` at `q = 1`, and requires the quotient to be a power
//! series in `t`.
//!
//! Condition (iii) classifies denominators by trial division.

mod expand;

use std::collections::BTreeMap;
use std::fmt;

pub use expand::{branch_compose, expand_series_at_one, reexpress_in_power_variable, LocalSeries};

use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::rings::{cyclotomic_poly, LaurentT, Poly, QuotientRing, RatFn, Rational, Ring};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    Inapplicable,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inapplicable => "inapplicable",
        }
    }

    pub fn is_pass(self) -> bool {
        self == Verdict::Pass
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Where a check failed, or why it could not be applied.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    /// `Q`-degree of the offending coefficient.
    pub degree: Option<usize>,
    /// `t`-order of the offending term.
    pub order: Option<i64>,
    pub detail: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(d) = self.degree {
            write!(f, "d={d} ")?;
        }
        if let Some(o) = self.order {
            write!(f, "t^{o} ")?;
        }
        f.write_str(&self.detail)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionI<S> {
    pub verdict: Verdict,
    /// `τ_d` for `d = 0..=D`; empty unless the check ran to completion.
    pub tau: Vec<S>,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionII {
    pub m: u32,
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ConditionIII {
    pub verdict: Verdict,
    pub witness: Option<Witness>,
}

/// Verdicts of all three conditions for one series.
#[derive(Clone, Debug, PartialEq)]
pub struct AdelicReport<S> {
    pub cond_i: ConditionI<S>,
    pub cond_ii: BTreeMap<u32, ConditionII>,
    pub cond_iii: ConditionIII,
}

impl<S> AdelicReport<S> {
    pub fn passes(&self) -> bool {
        self.cond_i.verdict.is_pass()
            && self.cond_ii.values().all(|c| c.verdict.is_pass())
            && self.cond_iii.verdict.is_pass()
    }
}

/// Default truncation orders: `D`, `M`, `L`, `nmax`.
pub const DEFAULT_QDEG: usize = 4;
pub const DEFAULT_TORDER: i64 = 8;
pub const DEFAULT_LORDER: usize = 8;
pub const DEFAULT_NMAX: u32 = 12;

fn inapplicable<S>(detail: impl Into<String>) -> ConditionI<S> {
    ConditionI {
        verdict: Verdict::Inapplicable,
        tau: Vec::new(),
        witness: Some(Witness {
            degree: None,
            order: None,
            detail: detail.into(),
        }),
    }
}

/// Largest pole order at `q = 1` among the coefficients of `f/(1-q)`.
fn max_pole_at_one<C: LocalSeries>(f: &QSeries<C>) -> Result<i64> {
    let mut worst = 0;
    for c in f.coeffs() {
        let s = c
            .divide_one_minus_q()
            .expand_at_rational(&Rational::from_integer(1.into()), 0)?;
        if let Some(v) = s.valuation() {
            worst = worst.max(-v);
        }
    }
    Ok(worst)
}

/// Condition (i) through `t^M`.
pub fn check_condition_i<C: LocalSeries>(f: &QSeries<C>, order: i64) -> Result<ConditionI<C::Scalar>> {
    let pole = max_pole_at_one(f)?;
    let depth = f.trunc() as i64;
    let work = order.max(1) + (depth + 1) * (pole + 1) + 2;
    let g = expand_series_at_one(&f.map(LocalSeries::divide_one_minus_q), work)?;
    let g0 = g.coeff(0);
    match g0.valuation() {
        Some(0) => {}
        Some(v) => {
            return Ok(inapplicable(format!(
                "Q^0 term of f/(1-q) has t-valuation {v}, not a unit"
            )))
        }
        None => return Ok(inapplicable("Q^0 term of f/(1-q) vanishes")),
    }
    let Ok((_, h)) = g.log_normalized() else {
        return Ok(inapplicable("Q^0 term of f/(1-q) is not a unit power series"));
    };
    let mut tau = Vec::with_capacity(h.trunc() + 1);
    for (d, hd) in h.coeffs().iter().enumerate() {
        let hd = hd.truncate(order);
        if hd.prec().is_some_and(|p| p < -1) {
            return Err(Error::InsufficientPrecision(format!(
                "log at Q^{d} known only to t^{:?}",
                hd.prec()
            )));
        }
        if let Some(v) = hd.valuation() {
            if v < -1 {
                return Ok(ConditionI {
                    verdict: Verdict::Fail,
                    tau: Vec::new(),
                    witness: Some(Witness {
                        degree: Some(d),
                        order: Some(v),
                        detail: format!("log(f/(1-q)) has valuation {v} < -1"),
                    }),
                });
            }
        }
        tau.push(-hd.coeff(-1));
    }
    Ok(ConditionI {
        verdict: Verdict::Pass,
        tau,
        witness: None,
    })
}

/// `Ψ^m(f/(1-q))` expanded at `q = 1`, from an already twisted series
/// `Ψ^m(f)` (generator-level or series-level Adams image).
pub fn psi_core<C: LocalSeries>(adams_image: &QSeries<C>, m: u32, order: i64) -> Result<QSeries<LaurentT<C::Scalar>>> {
    let inv = RatFn::one_minus(Rational::from_integer(1.into()), m as i64)
        .try_inv()
        .expect("1 - q^m is nonzero");
    let twisted = adams_image.map(|c| c.clone() * C::from_q(&inv));
    expand_series_at_one(&twisted, order)
}

/// Condition (ii) for primitive `m`-th roots of unity, through `t^M`.
///
/// `psi_adams` is `Ψ^m(f)` truncated at the same `Q`-degree as `f`.
pub fn check_condition_ii<C: LocalSeries>(
    f: &QSeries<C>,
    m: u32,
    psi_adams: &QSeries<C>,
    order: i64,
) -> Result<ConditionII> {
    if m < 2 {
        return Err(Error::InvalidParameter("condition (ii) needs m >= 2".into()));
    }
    let depth = f.trunc();
    let psi_adams = psi_adams.truncate(depth);
    let ring = QuotientRing::cyclotomic(m);
    let zeta_inv = ring.generator().try_inv().expect("ζ is a unit");
    let mut slack = 4;
    for _ in 0..4 {
        let work = order + slack;
        let core = psi_core(&psi_adams, m, work)?.map(|c| c.map(|s| C::lift_scalar(s)));
        let Ok(core_inv) = core.inverse() else {
            return Ok(ConditionII {
                m,
                verdict: Verdict::Inapplicable,
                witness: Some(Witness {
                    degree: Some(0),
                    order: None,
                    detail: "Ψ^m core has a non-invertible Q^0 term".into(),
                }),
            });
        };
        let lhs = f.try_map(|_, c| {
            let local = c.expand_at_cyclotomic(&zeta_inv, work)?;
            branch_compose(&local, &C::lift_scalar_cyc(&zeta_inv), m, work)
        })?;
        let quotient = lhs.try_mul(&core_inv)?;
        let known = quotient.coeffs().iter().filter_map(|c| c.prec()).min().unwrap_or(order);
        if known < order {
            slack *= 2;
            continue;
        }
        for (d, c) in quotient.coeffs().iter().enumerate() {
            let c = c.truncate(order);
            if let Some(v) = c.valuation() {
                if v < 0 {
                    return Ok(ConditionII {
                        m,
                        verdict: Verdict::Fail,
                        witness: Some(Witness {
                            degree: Some(d),
                            order: Some(v),
                            detail: format!("quotient by the Ψ^{m} core has a pole of order {}", -v),
                        }),
                    });
                }
            }
            let residual = reexpress_in_power_variable(&c, m, order)?.1;
            if !residual.is_zero() {
                return Ok(ConditionII {
                    m,
                    verdict: Verdict::Fail,
                    witness: Some(Witness {
                        degree: Some(d),
                        order: residual.valuation(),
                        detail: "quotient is not a series in (1+t)^m - 1".into(),
                    }),
                });
            }
        }
        return Ok(ConditionII {
            m,
            verdict: Verdict::Pass,
            witness: None,
        });
    }
    Err(Error::InsufficientPrecision(format!(
        "condition (ii) for m = {m} did not reach t^{order}"
    )))
}

/// Condition (iii): every denominator is `q^k` times cyclotomic factors
/// `Φ_n` (`n ≤ nmax`) times the allowed extra polynomials.
pub fn check_condition_iii<C: LocalSeries>(
    f: &QSeries<C>,
    nmax: u32,
    allowed_extra: &[Poly<Rational>],
) -> ConditionIII {
    let mut factors: Vec<Poly<Rational>> = (1..=nmax).map(cyclotomic_poly).collect();
    factors.extend(allowed_extra.iter().filter(|p| !p.is_constant()).map(|p| p.monic()));
    for (d, c) in f.coeffs().iter().enumerate() {
        for den in c.denominators() {
            let residual = classify_denominator(&den, &factors);
            if !residual.is_constant() {
                return ConditionIII {
                    verdict: Verdict::Fail,
                    witness: Some(Witness {
                        degree: Some(d),
                        order: None,
                        detail: format!("unclassified factor {}", RatFn::from_poly(residual)),
                    }),
                };
            }
        }
    }
    ConditionIII {
        verdict: Verdict::Pass,
        witness: None,
    }
}

/// Cofactor left after removing `q^k` and every listed factor.
pub fn classify_denominator(den: &Poly<Rational>, factors: &[Poly<Rational>]) -> Poly<Rational> {
    let k = den.low_order().unwrap_or(0);
    let mut rest = den.shift_down(k);
    for g in factors {
        while !rest.is_constant() {
            let (quo, rem) = rest.div_rem(g);
            if !rem.is_zero() {
                break;
            }
            rest = quo;
        }
    }
    rest
}

/// Runs all three conditions. `adams_images[m]` is `Ψ^m(f)`.
pub fn adelic_report<C: LocalSeries>(
    f: &QSeries<C>,
    adams_images: &BTreeMap<u32, QSeries<C>>,
    order: i64,
    nmax: u32,
    allowed_extra: &[Poly<Rational>],
) -> Result<AdelicReport<C::Scalar>> {
    let cond_i = check_condition_i(f, order)?;
    let mut cond_ii = BTreeMap::new();
    for (&m, image) in adams_images {
        cond_ii.insert(m, check_condition_ii(f, m, image, order)?);
    }
    let cond_iii = check_condition_iii(f, nmax, allowed_extra);
    Ok(AdelicReport {
        cond_i,
        cond_ii,
        cond_iii,
    })
}

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::qdiff::{gamma_closed_factor, gamma_op, GammaMode, SymOpSpec};
use crate::qseries::{LambdaTrunc, QSeries};
use crate::rings::{Adams, Field, LambdaFn, LaurentT, Poly, QAlgebra, Quotient, QuotientRing, RatFn, Rational, Ring};

type R = RatFn<Rational>;

/// Sign of the bundle twist: `Negative` for `⊕ O(-l_j)` (Euler class in
/// the denominator), `Positive` for the parity-changed `Π⊕ O(l_j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BundleSign {
    Negative,
    Positive,
}

/// The circle parameter `λ` acting on bundle fibers.
#[derive(Clone, Debug, PartialEq)]
pub enum LambdaParam {
    Formal,
    Value(Rational),
}

#[derive(Clone, Debug, PartialEq)]
pub struct BundleSpec {
    pub sign: BundleSign,
    pub degrees: Vec<usize>,
    pub lambda: LambdaParam,
}

/// Parameters of the projective-space generators.
#[derive(Clone, Debug, PartialEq)]
pub struct ToricSpec {
    pub n: usize,
    /// Torus characters `Λ_0, …, Λ_N`.
    pub lambdas: Vec<Rational>,
    pub bundle: Option<BundleSpec>,
    /// Truncation `D` in `Q`.
    pub qdeg: usize,
    /// Truncation `L` in `λ`.
    pub lorder: usize,
}

impl ToricSpec {
    /// `ℂP^N` with `Λ` the first `N+1` primes.
    pub fn new(n: usize, qdeg: usize) -> Self {
        ToricSpec {
            n,
            lambdas: first_primes(n + 1)
                .into_iter()
                .map(|p| Rational::from_integer(p.into()))
                .collect(),
            bundle: None,
            qdeg,
            lorder: crate::adelic::DEFAULT_LORDER,
        }
    }

    pub fn with_lambdas(mut self, lambdas: Vec<Rational>) -> Self {
        self.lambdas = lambdas;
        self
    }

    pub fn with_bundle(mut self, bundle: BundleSpec) -> Self {
        self.bundle = Some(bundle);
        self
    }

    pub fn with_lorder(mut self, lorder: usize) -> Self {
        self.lorder = lorder;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.lambdas.len() != self.n + 1 {
            return Err(Error::InvalidParameter(format!(
                "expected {} torus characters, got {}",
                self.n + 1,
                self.lambdas.len()
            )));
        }
        for (a, x) in self.lambdas.iter().enumerate() {
            if x.is_zero() || self.lambdas[..a].contains(x) {
                return Err(Error::CoincidentCharacters);
            }
        }
        Ok(())
    }

    fn bundle(&self) -> Result<&BundleSpec> {
        self.bundle
            .as_ref()
            .ok_or_else(|| Error::InvalidParameter("generator needs bundle degrees".into()))
    }
}

fn first_primes(k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    let mut n = 2u64;
    while out.len() < k {
        if out.iter().all(|p| !n.is_multiple_of(*p)) {
            out.push(n);
        }
        n += 1;
    }
    out
}

/// `ℚ(q)`-algebra `F[P]/rel(P)` with a distinguished class `P`.
#[derive(Clone, Debug)]
pub struct ClassRing<F> {
    ring: Arc<QuotientRing<F>>,
    p: Quotient<F>,
}

impl<F: Field> ClassRing<F> {
    /// `∏_j (1 - P/Λ_j) = 0`, stored as `∏_j (P - Λ_j)` with `P = x`.
    pub fn equivariant(lambdas: &[Rational]) -> Result<Self> {
        let rel = lambdas.iter().fold(Poly::one(), |acc, l| {
            acc * Poly::new(vec![-F::from_rational(l), F::one()])
        });
        let ring = QuotientRing::new(rel, "P")?;
        let p = ring.generator();
        Ok(ClassRing { ring, p })
    }

    /// `(1 - P)^k = 0`, stored in `p = P - 1` as `p^k = 0`.
    pub fn unipotent(k: usize) -> Result<Self> {
        let ring = QuotientRing::new(Poly::monomial(F::one(), k), "p")?;
        let p = ring.generator() + Quotient::one();
        Ok(ClassRing { ring, p })
    }

    pub fn ring(&self) -> &Arc<QuotientRing<F>> {
        &self.ring
    }

    /// The class `P`.
    pub fn p(&self) -> &Quotient<F> {
        &self.p
    }

    pub fn elem(&self, c: F) -> Quotient<F> {
        self.ring.elem(Poly::constant(c))
    }

    /// Element with the given coordinates in the basis `1, x, …`.
    pub fn from_components(&self, cs: Vec<F>) -> Quotient<F> {
        self.ring.elem(Poly::new(cs))
    }
}

fn qf<C: QAlgebra>(e: i64) -> C {
    C::from_q(&R::q_pow(e))
}

fn one_minus_q<C: QAlgebra>(e: i64) -> C {
    C::one() - qf(e)
}

fn inv<C: Ring>(x: C) -> Result<C> {
    x.try_inv().ok_or_else(|| Error::NotInvertible(x.to_string()))
}

/// Places `coeff(d)` at `Q^{md}` for `md ≤ D`.
fn twisted<C: Ring>(qdeg: usize, m: u32, mut coeff: impl FnMut(usize) -> Result<C>) -> Result<QSeries<C>> {
    let m = m.max(1) as usize;
    let mut coeffs = vec![C::zero(); qdeg + 1];
    for d in 0..=qdeg / m {
        coeffs[d * m] = coeff(d)?;
    }
    Ok(QSeries::new(coeffs))
}

/// `(1 - q)/∏_{r=1}^d (1 - q^r)` under `Ψ^m`.
pub fn point_coeff(d: usize, m: u32) -> R {
    let m = m as i64;
    let den = (1..=d as i64).fold(R::one(), |acc, r| acc * one_minus_q::<R>(m * r));
    one_minus_q::<R>(m) * den.try_inv().expect("nonzero")
}

/// `(1 - q) Γ_q(Q) = (1 - q) Σ_d Q^d / ∏_{r=1}^d (1 - q^r)`.
pub fn point_small_j(qdeg: usize) -> QSeries<R> {
    point_small_j_adams(qdeg, 1)
}

/// `Ψ^m` of [`point_small_j`], truncated at `D`.
pub fn point_small_j_adams(qdeg: usize, m: u32) -> QSeries<R> {
    twisted(qdeg, m, |d| Ok(point_coeff(d, m))).expect("infallible")
}

/// `J^{(i)}_d` under `Ψ^m` (`q ↦ q^m`, `Λ ↦ Λ^m`).
pub fn cpn_coeff(spec: &ToricSpec, i: usize, d: usize, m: u32) -> Result<R> {
    let li = &spec.lambdas[i];
    let mut den = R::one();
    for (j, lj) in spec.lambdas.iter().enumerate() {
        if j == i {
            continue;
        }
        let ratio = num_traits::Pow::pow(li / lj, m);
        for r in 1..=d as i64 {
            den = den * R::one_minus(ratio.clone(), m as i64 * r);
        }
    }
    Ok(point_coeff(d, m) * inv(den)?)
}

/// Fixed-point component `J^{(i)}` of `ℂP^N`, by the direct formula.
pub fn cpn_component(spec: &ToricSpec, i: usize) -> Result<QSeries<R>> {
    cpn_component_adams(spec, i, 1)
}

/// Generator-level `Ψ^m` of [`cpn_component`].
pub fn cpn_component_adams(spec: &ToricSpec, i: usize, m: u32) -> Result<QSeries<R>> {
    spec.validate()?;
    if i > spec.n {
        return Err(Error::InvalidParameter(format!("fixed point {i} > N = {}", spec.n)));
    }
    Ok(twisted(spec.qdeg, m, |d| cpn_coeff(spec, i, d, m))?.mark_specialized())
}

/// `J^{(i)}` as `∏_{j≠i}` of inverse ascending Γ-operators with
/// `u = Λ_i/Λ_j` applied to the point series.
pub fn cpn_component_gamma_route(spec: &ToricSpec, i: usize) -> Result<QSeries<R>> {
    spec.validate()?;
    let mut f = point_small_j(spec.qdeg);
    for (j, lj) in spec.lambdas.iter().enumerate() {
        if j != i {
            let u = R::from_rational(&(spec.lambdas[i].clone() / lj));
            f = gamma_op(GammaMode::InvAsc, 1, &u, &f)?;
        }
    }
    Ok(f.mark_specialized())
}

/// `(1 - q)/∏_j ∏_{r=1}^d (1 - P Λ_j^{-1} q^r)` under `Ψ^m`.
pub fn pform_coeff<F: Field + QAlgebra>(
    cr: &ClassRing<F>,
    lambdas: &[Rational],
    d: usize,
    m: u32,
) -> Result<Quotient<F>> {
    let pm = Ring::pow(cr.p(), m);
    let mut den = Quotient::<F>::one();
    for l in lambdas {
        let l_inv = F::from_rational(&num_traits::Pow::pow(l.recip(), m));
        for r in 1..=d as i64 {
            den = den * (Quotient::one() - pm.clone() * cr.elem(l_inv.clone()) * qf(m as i64 * r));
        }
    }
    Ok(one_minus_q::<Quotient<F>>(m as i64) * inv(den)?)
}

/// `Σ_i J^{(i)} φ_i` written in `ℚ(q)[P]/∏(1 - P/Λ_j)`.
pub fn cpn_pform(spec: &ToricSpec) -> Result<QSeries<Quotient<R>>> {
    cpn_pform_adams(spec, 1)
}

pub fn cpn_pform_adams(spec: &ToricSpec, m: u32) -> Result<QSeries<Quotient<R>>> {
    spec.validate()?;
    let cr = ClassRing::equivariant(&spec.lambdas)?;
    Ok(twisted(spec.qdeg, m, |d| pform_coeff(&cr, &spec.lambdas, d, m))?.mark_specialized())
}

/// `∏_j ∏_{r=0}^{l_j d - 1} (1 - λ P^{-l_j} q^{-r})` under `Ψ^m`.
pub fn euler_factor_negative<F: Field + QAlgebra>(
    cr: &ClassRing<F>,
    degrees: &[usize],
    lambda: &F,
    d: usize,
    m: u32,
) -> Result<Quotient<F>> {
    let p_inv = inv(cr.p().clone())?;
    Ok(negative_factor_at(&p_inv, degrees, &cr.elem(lambda.clone()), d, m))
}

fn negative_factor_at<C: QAlgebra>(p_inv: &C, degrees: &[usize], lambda: &C, d: usize, m: u32) -> C {
    let lam = Ring::pow(lambda, m);
    let mut out = C::one();
    for &l in degrees {
        let u = lam.clone() * Ring::pow(p_inv, m * l as u32);
        for r in 0..(l * d) as i64 {
            out = out * (C::one() - u.clone() * qf(-(m as i64) * r));
        }
    }
    out
}

/// `∏_j ∏_{r=1}^{l_j d} (1 - λ P^{l_j} q^r)` under `Ψ^m`.
pub fn euler_factor_positive<F: Field + QAlgebra>(
    cr: &ClassRing<F>,
    degrees: &[usize],
    lambda: &F,
    d: usize,
    m: u32,
) -> Result<Quotient<F>> {
    let lam = cr.elem(Ring::pow(lambda, m));
    let mut out = Quotient::<F>::one();
    for &l in degrees {
        let u = lam.clone() * Ring::pow(cr.p(), m * l as u32);
        for r in 1..=(l * d) as i64 {
            out = out * (Quotient::one() - u.clone() * qf(m as i64 * r));
        }
    }
    Ok(out)
}

/// Twisted P-form series `I_E` (sign −) or `I_{ΠE}` (sign +) over a
/// coefficient field `F` containing `λ`.
pub fn bundle_series<F: Field + QAlgebra>(spec: &ToricSpec, lambda: &F, m: u32) -> Result<QSeries<Quotient<F>>> {
    spec.validate()?;
    let bundle = spec.bundle()?;
    let cr = ClassRing::<F>::equivariant(&spec.lambdas)?;
    let s = twisted(spec.qdeg, m, |d| {
        let base = pform_coeff(&cr, &spec.lambdas, d, m)?;
        let e = match bundle.sign {
            BundleSign::Negative => euler_factor_negative(&cr, &bundle.degrees, lambda, d, m)?,
            BundleSign::Positive => euler_factor_positive(&cr, &bundle.degrees, lambda, d, m)?,
        };
        Ok(base * e)
    })?;
    Ok(s.mark_specialized())
}

/// The same series through Γ-operators: `Desc` with `u = λP^{-l_j}` for
/// sign −, `Asc` with `u = λP^{l_j}` for sign +, applied to the P-form.
pub fn bundle_series_gamma_route<F: Field + QAlgebra>(spec: &ToricSpec, lambda: &F) -> Result<QSeries<Quotient<F>>> {
    spec.validate()?;
    let bundle = spec.bundle()?;
    let cr = ClassRing::<F>::equivariant(&spec.lambdas)?;
    let mut f = twisted(spec.qdeg, 1, |d| pform_coeff(&cr, &spec.lambdas, d, 1))?;
    let lam = cr.elem(lambda.clone());
    for &l in &bundle.degrees {
        let (mode, u) = match bundle.sign {
            BundleSign::Negative => (
                GammaMode::Desc,
                lam.clone() * Ring::pow(&inv(cr.p().clone())?, l as u32),
            ),
            BundleSign::Positive => (GammaMode::Asc, lam.clone() * Ring::pow(cr.p(), l as u32)),
        };
        f = gamma_op(mode, l, &u, &f)?;
    }
    Ok(f.mark_specialized())
}

/// `λ` inside `ℚ(λ)(q)`.
pub fn formal_lambda() -> RatFn<LambdaFn> {
    RatFn::constant(LambdaFn::var())
}

/// Local CY series `(1-q) Σ_{d>0} Q^d/(P^{2d-2} q^{d(d-1)} (1 - P q^d)^2)` in
/// `ℚ(q)[p]/(p^2)` with `P = 1 + p`, plus the dilaton shift `1 - q` at `Q^0`.
pub fn cy_local_series(qdeg: usize) -> Result<QSeries<Quotient<R>>> {
    let cr = ClassRing::<R>::unipotent(2)?;
    twisted(qdeg, 1, |d| {
        let base = one_minus_q::<Quotient<R>>(1);
        if d == 0 {
            return Ok(base);
        }
        let d = d as i64;
        let p = cr.p();
        let den =
            Ring::pow(p, (2 * d - 2) as u32) * qf(d * (d - 1)) * Ring::pow(&(Quotient::one() - p.clone() * qf(d)), 2);
        Ok(base * inv(den)?)
    })
}

/// The same series as the `λ → 1`, `Λ → 1` limit of `I_E/(1 - λP^{-1})^2`
/// for `E = O(-1) ⊕ O(-1)` over `ℂP^1`. Both sides are expanded exactly in
/// `ε = λ - 1` over `ℚ(q)[p]/(p^2)` and the limit is the `ε^0` term.
pub fn cy_limit_route(qdeg: usize) -> Result<QSeries<Quotient<R>>> {
    type E = LaurentT<Quotient<R>>;
    let cr = ClassRing::<R>::unipotent(2)?;
    let ones = [Rational::one(), Rational::one()];
    let p_inv = E::monomial(inv(cr.p().clone())?, 0);
    let lambda = E::one() + E::t();
    let euler0 = Ring::pow(&(E::one() - lambda.clone() * p_inv.clone()), 2);
    twisted(qdeg, 1, |d| {
        if d == 0 {
            return Ok(one_minus_q::<Quotient<R>>(1));
        }
        let base = pform_coeff(&cr, &ones, d, 1)?;
        let num = negative_factor_at(&p_inv, &[1, 1], &lambda, d, 1);
        Ok(base * limit_at_zero(&num, &euler0, 2)?)
    })
}

/// The limit route carried out in `ℚ(λ)(q)[p]/(p^2)` with symbolic `λ`,
/// specialized at the end. Much slower; used as a cross-check in low degree.
pub fn cy_limit_route_symbolic(qdeg: usize) -> Result<QSeries<Quotient<R>>> {
    type S = RatFn<LambdaFn>;
    let sym = ClassRing::<S>::unipotent(2)?;
    let target = ClassRing::<R>::unipotent(2)?;
    let ones = [Rational::one(), Rational::one()];
    let lambda = formal_lambda();
    let euler0 = Quotient::one() - sym.elem(lambda.clone()) * inv(sym.p().clone())?;
    let euler0_inv = inv(Ring::pow(&euler0, 2))?;
    twisted(qdeg, 1, |d| {
        if d == 0 {
            return Ok(one_minus_q::<Quotient<R>>(1));
        }
        let ie = pform_coeff(&sym, &ones, d, 1)? * euler_factor_negative(&sym, &[1, 1], &lambda, d, 1)?;
        let reduced = ie * euler0_inv.clone();
        let comps = reduced
            .components()
            .iter()
            .map(|c| c.specialize_lambda(&Rational::one()))
            .collect::<Result<Vec<_>>>()?;
        Ok(target.from_components(comps))
    })
}

/// `num/den` at `ε = 0` for exact polynomials in `ε` over a ring whose
/// non-units are nilpotent of index at most `nil_index`. Fails if the
/// quotient has a pole there.
fn limit_at_zero<A: Ring>(num: &LaurentT<A>, den: &LaurentT<A>, nil_index: usize) -> Result<A> {
    let top = den.terms().map(|(k, _)| k).max().ok_or(Error::DivisionByZero)?;
    let v = (0..=top)
        .find(|&k| den.coeff(k).try_inv().is_some())
        .ok_or_else(|| Error::PoleAtSpecialization("denominator has no unit coefficient".into()))?;
    // den = ε^v (U + N) with U(0) a unit and N nilpotent.
    let unit = LaurentT::new(0, (v..=top).map(|k| den.coeff(k)).collect(), None);
    let nil = LaurentT::new(-v, (0..v).map(|k| den.coeff(k)).collect(), None);
    let order = v * nil_index as i64 + 1;
    let u_inv = unit.truncate(order).checked_inv()?;
    let w = -(nil * u_inv.clone());
    let mut geom = LaurentT::one();
    let mut w_pow = LaurentT::one();
    for _ in 1..nil_index {
        w_pow = w_pow * w.clone();
        geom = geom + w_pow.clone();
    }
    let out = num.clone() * u_inv * geom * LaurentT::monomial(A::one(), -v);
    if out.prec().is_some_and(|p| p < 0) {
        return Err(Error::InsufficientPrecision("limit in ε".into()));
    }
    if !out.principal_part().is_zero() {
        return Err(Error::PoleAtSpecialization(format!(
            "principal part {}",
            out.principal_part()
        )));
    }
    Ok(out.coeff(0))
}

/// `(1-q) Σ_d Q^d ∏_j ∏_{r=1}^{l_j d}(1 - P^{l_j} q^r) / ∏_{r=1}^d (1 - P q^r)^{N+1}`
/// in `ℚ(q)[P]/((1-P)^{N+1-M})`.
pub fn complete_intersection_limit(n: usize, degrees: &[usize], qdeg: usize) -> Result<QSeries<Quotient<R>>> {
    if degrees.len() > n {
        return Err(Error::InvalidParameter("need M < N + 1 hypersurfaces".into()));
    }
    let cr = ClassRing::<R>::unipotent(n + 1 - degrees.len())?;
    let ones = vec![Rational::from_integer(1.into()); n + 1];
    twisted(qdeg, 1, |d| {
        let base = pform_coeff(&cr, &ones, d, 1)?;
        Ok(base * euler_factor_positive(&cr, degrees, &R::one(), d, 1)?)
    })
}

/// Image of the point series under the symmetrized flow with `D(x, q)`,
/// and its generator-level Adams twist.
pub fn sym_flow_image(spec: &SymOpSpec, qdeg: usize, lorder: usize, m: u32) -> Result<QSeries<LambdaTrunc<R>>> {
    twisted(qdeg, m, |d| {
        let e = spec.eigenvalue(d, lorder);
        let c = e * LambdaTrunc::constant(point_coeff(d, 1));
        c.adams(m)
    })
}

/// Image of the point series under a Γ-operator with `u = λ`, and its
/// generator-level Adams twist.
pub fn gamma_image(mode: GammaMode, l: usize, qdeg: usize, lorder: usize, m: u32) -> Result<QSeries<LambdaTrunc<R>>> {
    let lam = LambdaTrunc::<R>::lambda(lorder);
    twisted(qdeg, m, |d| {
        let c = gamma_closed_factor(mode, l, &lam, d)? * LambdaTrunc::constant(point_coeff(d, 1));
        c.adams(m)
    })
}

/// Named generators, with an optional Adams twist.
#[derive(Clone, Debug, PartialEq)]
pub enum Generator {
    PointJ,
    CpnComponent { i: usize },
    CpnPForm,
    BundleIe,
    BundleIpe,
    CyLocal,
    CiLimit,
    SymFlowImage(SymOpSpec),
    GammaImage { mode: GammaMode, l: usize },
}

impl Generator {
    pub fn name(&self) -> &'static str {
        match self {
            Generator::PointJ => "point-j",
            Generator::CpnComponent { .. } => "cpn-component",
            Generator::CpnPForm => "cpn-pform",
            Generator::BundleIe => "bundle-ie",
            Generator::BundleIpe => "bundle-ipe",
            Generator::CyLocal => "cy-local",
            Generator::CiLimit => "ci-limit",
            Generator::SymFlowImage(_) => "sym-flow",
            Generator::GammaImage { .. } => "gamma-image",
        }
    }
}

/// Output of [`generate`], by coefficient ring.
#[derive(Clone, Debug, PartialEq)]
pub enum GeneratedSeries {
    /// `ℚ(q)`
    Scalar(QSeries<R>),
    /// `ℚ(q)[λ]/(λ^{L+1})`
    Lambda(QSeries<LambdaTrunc<R>>),
    /// `ℚ(q)[P]/rel`
    Nilpotent(QSeries<Quotient<R>>),
    /// `ℚ(λ)(q)[P]/rel`
    NilpotentSymbolic(QSeries<Quotient<RatFn<LambdaFn>>>),
}

impl GeneratedSeries {
    pub fn trunc(&self) -> usize {
        match self {
            GeneratedSeries::Scalar(s) => s.trunc(),
            GeneratedSeries::Lambda(s) => s.trunc(),
            GeneratedSeries::Nilpotent(s) => s.trunc(),
            GeneratedSeries::NilpotentSymbolic(s) => s.trunc(),
        }
    }
}

/// Instantiates a generator, substituting `q ↦ q^m`, `Q ↦ Q^m`,
/// `Λ_j ↦ Λ_j^m`, `λ ↦ λ^m`, `P ↦ P^m` when `m > 1`.
pub fn generate(gen: &Generator, spec: &ToricSpec, m: u32) -> Result<GeneratedSeries> {
    if m == 0 {
        return Err(Error::InvalidParameter("Adams index must be positive".into()));
    }
    let untwisted_only = |what: &str| -> Result<()> {
        if m != 1 {
            return Err(Error::AdamsUndefined(format!("{what} is a nonequivariant limit")));
        }
        Ok(())
    };
    Ok(match gen {
        Generator::PointJ => GeneratedSeries::Scalar(point_small_j_adams(spec.qdeg, m)),
        Generator::CpnComponent { i } => GeneratedSeries::Scalar(cpn_component_adams(spec, *i, m)?),
        Generator::CpnPForm => GeneratedSeries::Nilpotent(cpn_pform_adams(spec, m)?),
        Generator::BundleIe | Generator::BundleIpe => {
            let mut spec = spec.clone();
            let mut bundle = spec.bundle()?.clone();
            bundle.sign = if *gen == Generator::BundleIe {
                BundleSign::Negative
            } else {
                BundleSign::Positive
            };
            spec.bundle = Some(bundle.clone());
            match &bundle.lambda {
                LambdaParam::Formal => GeneratedSeries::NilpotentSymbolic(bundle_series(&spec, &formal_lambda(), m)?),
                LambdaParam::Value(v) => GeneratedSeries::Nilpotent(bundle_series(&spec, &R::from_rational(v), m)?),
            }
        }
        Generator::CyLocal => {
            untwisted_only("cy-local")?;
            GeneratedSeries::Nilpotent(cy_local_series(spec.qdeg)?)
        }
        Generator::CiLimit => {
            untwisted_only("ci-limit")?;
            let degrees = &spec.bundle()?.degrees;
            GeneratedSeries::Nilpotent(complete_intersection_limit(spec.n, degrees, spec.qdeg)?)
        }
        Generator::SymFlowImage(op) => GeneratedSeries::Lambda(sym_flow_image(op, spec.qdeg, spec.lorder, m)?),
        Generator::GammaImage { mode, l } => {
            GeneratedSeries::Lambda(gamma_image(*mode, *l, spec.qdeg, spec.lorder, m)?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qdiff::sym_exp_flow;
    use crate::rings::rat;

    fn p(cs: &[i64]) -> Poly<Rational> {
        Poly::from_ints(cs)
    }

    #[test]
    fn point_series_values() {
        let f = point_small_j(2);
        assert_eq!(f.coeff(0), &R::from_poly(p(&[1, -1])));
        assert_eq!(f.coeff(1), &R::one());
        assert_eq!(f.coeff(2), &R::new(p(&[1]), p(&[1, 0, -1])).unwrap());
    }

    #[test]
    fn point_adams_core() {
        let f = point_small_j_adams(4, 2);
        assert!(f.coeff(1).is_zero() && f.coeff(3).is_zero());
        assert_eq!(f.coeff(2), &point_coeff(1, 2));
        assert_eq!(point_small_j_adams(3, 1), point_small_j(3));
        assert_eq!(point_small_j(4).adams(2, Some(4)).unwrap(), f);
    }

    #[test]
    fn cpn_degree_one() {
        let spec = ToricSpec::new(1, 1).with_lambdas(vec![rat(2, 1), rat(3, 1)]);
        let f = cpn_component(&spec, 0).unwrap();
        assert_eq!(f.coeff(1), &R::new(p(&[3]), p(&[3, -2])).unwrap());
        assert_eq!(f.coeff(0), &R::from_poly(p(&[1, -1])));
        assert!(f.is_specialized());
    }

    #[test]
    fn cpn_two_routes() {
        let spec = ToricSpec::new(2, 4);
        for i in 0..=2 {
            assert_eq!(
                cpn_component(&spec, i).unwrap(),
                cpn_component_gamma_route(&spec, i).unwrap()
            );
        }
    }

    #[test]
    fn coincident_characters_rejected() {
        let spec = ToricSpec::new(1, 2).with_lambdas(vec![rat(2, 1), rat(2, 1)]);
        assert_eq!(cpn_component(&spec, 0), Err(Error::CoincidentCharacters));
    }

    #[test]
    fn pform_evaluates_to_components() {
        let spec = ToricSpec::new(1, 3);
        let pf = cpn_pform(&spec).unwrap();
        for i in 0..=1 {
            let ji = cpn_component(&spec, i).unwrap();
            let at = R::from_rational(&spec.lambdas[i]);
            for d in 0..=3 {
                assert_eq!(&pf.coeff(d).evaluate(&at).unwrap(), ji.coeff(d), "i={i} d={d}");
            }
        }
    }

    #[test]
    fn adams_composition_on_components() {
        let spec = ToricSpec::new(1, 6);
        let six = cpn_component_adams(&spec, 0, 6).unwrap();
        let pow6 =
            ToricSpec::new(1, 1).with_lambdas(spec.lambdas.iter().map(|l| num_traits::Pow::pow(l, 6u32)).collect());
        let base = cpn_component(&pow6, 0).unwrap();
        assert_eq!(six.coeff(6), &base.coeff(1).inflate(6));
        assert_eq!(six.coeff(0), &base.coeff(0).inflate(6));
    }

    #[test]
    fn bundle_routes_agree() {
        let lam = R::from_rational(&rat(5, 7));
        for sign in [BundleSign::Negative, BundleSign::Positive] {
            let spec = ToricSpec::new(1, 3).with_bundle(BundleSpec {
                sign,
                degrees: vec![1, 2],
                lambda: LambdaParam::Value(rat(5, 7)),
            });
            assert_eq!(
                bundle_series(&spec, &lam, 1).unwrap(),
                bundle_series_gamma_route(&spec, &lam).unwrap()
            );
        }
    }

    #[test]
    fn symbolic_bundle_degree_one_factor() {
        // N = 1, l = (1, 1): extra factor (1 - λP^{-1})^2 at d = 1
        let spec = ToricSpec::new(1, 1).with_bundle(BundleSpec {
            sign: BundleSign::Negative,
            degrees: vec![1, 1],
            lambda: LambdaParam::Formal,
        });
        let lam = formal_lambda();
        let ie = bundle_series(&spec, &lam, 1).unwrap();
        let cr = ClassRing::<RatFn<LambdaFn>>::equivariant(&spec.lambdas).unwrap();
        let base = pform_coeff(&cr, &spec.lambdas, 1, 1).unwrap();
        let e = Quotient::one() - cr.elem(lam) * cr.p().try_inv().unwrap();
        assert_eq!(ie.coeff(1), &(base * e.clone() * e));
    }

    #[test]
    fn cy_routes_agree() {
        assert_eq!(cy_local_series(4).unwrap(), cy_limit_route(4).unwrap());
        assert_eq!(cy_local_series(2).unwrap(), cy_limit_route_symbolic(2).unwrap());
    }

    #[test]
    fn limit_detects_pole() {
        // 1/ε^2 over ℚ has no limit
        let den = LaurentT::monomial(rat(1, 1), 2);
        let r = limit_at_zero(&LaurentT::one(), &den, 1);
        assert!(matches!(r, Err(Error::PoleAtSpecialization(_))));
    }

    #[test]
    fn cy_degree_two_components() {
        // p^0: q^-2 - q^-1 ... checked through the Laurent parts elsewhere;
        // here the d = 1 coefficient (1-q)/(1-(1+p)q)^2.
        let f = cy_local_series(1).unwrap();
        let c = f.coeff(1).components();
        let one_minus = R::one_minus(rat(1, 1), 1);
        assert_eq!(c[0], one_minus.clone().powi(-1).unwrap());
        // d/dp of (1-q)(1-q-pq)^{-2} at p=0: 2q/(1-q)^2
        assert_eq!(c[1], R::q().scale(&rat(2, 1)) * one_minus.powi(-2).unwrap());
    }

    #[test]
    fn sym_flow_generator_matches_operator() {
        let spec = SymOpSpec::minus_x();
        let direct = sym_exp_flow(&spec, &point_small_j(4), 6);
        assert_eq!(sym_flow_image(&spec, 4, 6, 1).unwrap(), direct);
        let twisted = sym_flow_image(&spec, 4, 6, 2).unwrap();
        assert_eq!(twisted, direct.adams(2, Some(4)).unwrap());
    }

    #[test]
    fn ci_degree_zero_and_one() {
        let f = complete_intersection_limit(4, &[2], 1).unwrap();
        assert_eq!(f.coeff(0).components()[0], R::one_minus(rat(1, 1), 1));
        assert!(f.coeff(0).components()[1..].iter().all(|c| c.is_zero()));
    }
}

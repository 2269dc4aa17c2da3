use crate::error::{Error, Result};
use crate::qseries::QSeries;
use crate::rings::{residue_at_mapped, Quotient, QuotientRing, RadicalExtElem, RatFn, Rational, Ring};

use super::generators::{cpn_component, ToricSpec};

/// Coefficient `C_{ij}(m)` deduced from the residues of `J^{(i)}` at
/// `q0 = (Λ_j/Λ_i)^{1/m}` and checked against every degree up to `D`.
#[derive(Clone, Debug, PartialEq)]
pub struct RecursionCertificate {
    pub i: usize,
    pub j: usize,
    pub m: u32,
    /// Element of `ℚ[x]/(x^m - Λ_j/Λ_i)`, with `x = q0`.
    pub c: Option<RadicalExtElem>,
    pub degrees_checked: Vec<usize>,
    pub consistent: bool,
    pub witness: Option<String>,
}

/// Deduces `C_{ij}(m)` for `ℂP^N` with the characters of `spec`.
pub fn deduce_recursion_coeff(
    spec: &ToricSpec,
    i: usize,
    j: usize,
    m: u32,
    qdeg: usize,
) -> Result<RecursionCertificate> {
    spec.validate()?;
    if i > spec.n || j > spec.n || i == j {
        return Err(Error::InvalidParameter(format!(
            "need distinct fixed points ≤ {}, got ({i}, {j})",
            spec.n
        )));
    }
    if m == 0 || qdeg < m as usize {
        return Err(Error::InvalidParameter(format!(
            "need 1 ≤ m ≤ D, got m = {m}, D = {qdeg}"
        )));
    }
    let mut spec = spec.clone();
    spec.qdeg = qdeg;
    let fi = cpn_component(&spec, i)?;
    let fj = cpn_component(&spec, j)?;
    let ratio = spec.lambdas[j].clone() / &spec.lambdas[i];
    let mut cert = recursion_from_series(&fi, &fj, ratio, m)?;
    cert.i = i;
    cert.j = j;
    Ok(cert)
}

/// The same deduction for arbitrary series `f^{(i)}`, `f^{(j)}` and
/// `q0^m = ratio`.
pub fn recursion_from_series(
    fi: &QSeries<RatFn<Rational>>,
    fj: &QSeries<RatFn<Rational>>,
    ratio: Rational,
    m: u32,
) -> Result<RecursionCertificate> {
    let k = QuotientRing::radical(m, ratio)?;
    let q0 = k.generator();
    let embed = |c: &Rational| Quotient::constant(c.clone());
    let qdeg = fi.trunc().min(fj.trunc() + m as usize);
    let mut cert = RecursionCertificate {
        i: 0,
        j: 0,
        m,
        c: None,
        degrees_checked: Vec::new(),
        consistent: false,
        witness: None,
    };

    let mut residues = Vec::with_capacity(qdeg + 1);
    for d in 0..=qdeg {
        match residue_at_mapped(fi.coeff(d), &q0, embed) {
            Ok(r) => residues.push(r),
            Err(Error::HigherOrderPole { order }) => {
                cert.witness = Some(format!("pole of order {order} in degree {d}"));
                return Ok(cert);
            }
            Err(e) => return Err(e),
        }
    }
    let value = |d: usize| -> Result<RadicalExtElem> {
        let f = fj.coeff(d);
        let den = f.denom().eval_mapped(&q0, embed);
        let inv = den
            .try_inv()
            .ok_or_else(|| Error::PoleAtSpecialization(format!("degree {d} of the target component")))?;
        Ok(f.numer().eval_mapped(&q0, embed) * inv)
    };

    let m = m as usize;
    for (d, r) in residues.iter().enumerate().take(m) {
        if !r.is_zero() {
            cert.witness = Some(format!("residue {r} below the covering degree, d = {d}"));
            return Ok(cert);
        }
    }
    let Some(r_m_inv) = residues[m].try_inv() else {
        cert.witness = Some(format!("no pole in degree {m}"));
        return Ok(cert);
    };
    let c = -value(0)? * r_m_inv;
    for (d, r) in residues.iter().enumerate().skip(m) {
        cert.degrees_checked.push(d);
        let lhs = r.clone() * c.clone();
        let rhs = -value(d - m)?;
        if lhs != rhs {
            cert.witness = Some(format!("degree {d}: r_d C = {lhs}, -v = {rhs}"));
            cert.c = Some(c);
            return Ok(cert);
        }
    }
    cert.c = Some(c);
    cert.consistent = true;
    Ok(cert)
}

/// Largest pole order of `J^{(i)}_d` at `q0 = (Λ_j/Λ_i)^{1/m}` over `d ≤ D`.
pub fn max_pole_order(spec: &ToricSpec, i: usize, j: usize, m: u32) -> Result<usize> {
    let ratio = spec.lambdas[j].clone() / &spec.lambdas[i];
    let k = QuotientRing::radical(m, ratio)?;
    let q0 = k.generator();
    let fi = cpn_component(spec, i)?;
    let mut worst = 0;
    for c in fi.coeffs() {
        let mut den = c.denom().map(|a| Quotient::constant(a.clone()));
        let mut order = 0;
        while !den.is_zero() && den.eval(&q0).is_zero() {
            order += 1;
            den = den.derivative();
        }
        worst = worst.max(order);
    }
    Ok(worst)
}

//! JSON documents for generated series.

use serde::{Deserialize, Serialize};

use qkdiff_core::jfun::GeneratedSeries;
use qkdiff_core::qseries::QSeries;
use qkdiff_core::rings::{LambdaFn, Poly, Quotient, RatFn, Rational};

use crate::CliError;

pub const SCHEMA_VERSION: u32 = 1;

/// A polynomial coefficient: a rational string, or a rational function of
/// `λ` when the bundle parameter is formal.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Entry {
    Rational(String),
    Lambda(RatFnDoc),
}

/// `num/den`, both ascending in the variable.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFnDoc {
    pub num: Vec<Entry>,
    pub den: Vec<Entry>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Params {
    #[serde(rename = "N", skip_serializing_if = "Option::is_none", default)]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub i: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub lambdas: Vec<String>,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub l: Vec<usize>,
    /// `"formal"` or a rational string.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lambda: Option<String>,
    pub qdeg: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lorder: Option<usize>,
}

/// Coefficients in `F[var]/rel`, component `k` of degree `d` at
/// `components[d][k]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NilpotentLayer {
    pub var: String,
    pub rel: Vec<String>,
    pub components: Vec<Vec<RatFnDoc>>,
}

/// A truncated `Q`-series. For class-ring coefficients `coeffs` holds the
/// constant component and `nilpotent` the full component vectors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesDoc {
    pub schema_version: u32,
    pub generator: String,
    pub params: Params,
    pub coeffs: Vec<RatFnDoc>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub nilpotent: Option<NilpotentLayer>,
}

pub fn parse_rational(s: &str) -> Result<Rational, CliError> {
    s.trim()
        .parse::<Rational>()
        .map_err(|_| CliError::Usage(format!("not a rational number: {s:?}")))
}

fn rational_entries(p: &Poly<Rational>) -> Vec<Entry> {
    p.coeffs().iter().map(|c| Entry::Rational(c.to_string())).collect()
}

pub fn ratfn_doc(f: &RatFn<Rational>) -> RatFnDoc {
    RatFnDoc {
        num: rational_entries(f.numer()),
        den: rational_entries(f.denom()),
    }
}

fn lambda_ratfn_doc(f: &RatFn<LambdaFn>) -> RatFnDoc {
    let entries = |p: &Poly<LambdaFn>| {
        p.coeffs()
            .iter()
            .map(|c| Entry::Lambda(ratfn_doc(c.as_ratfn())))
            .collect()
    };
    RatFnDoc {
        num: entries(f.numer()),
        den: entries(f.denom()),
    }
}

fn rational_poly(entries: &[Entry]) -> Result<Poly<Rational>, CliError> {
    entries
        .iter()
        .map(|e| match e {
            Entry::Rational(s) => parse_rational(s),
            Entry::Lambda(_) => Err(CliError::Usage(
                "expected a rational coefficient, found a λ-function".into(),
            )),
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Poly::new)
}

pub fn parse_ratfn(doc: &RatFnDoc) -> Result<RatFn<Rational>, CliError> {
    RatFn::new(rational_poly(&doc.num)?, rational_poly(&doc.den)?)
        .map_err(|e| CliError::Usage(format!("bad coefficient: {e}")))
}

fn nilpotent_layer<F: qkdiff_core::rings::Field + ConstantValue>(
    coeffs: &[Quotient<F>],
    doc: impl Fn(&F) -> RatFnDoc,
) -> Result<(Vec<RatFnDoc>, NilpotentLayer), CliError> {
    let ring = coeffs
        .iter()
        .find_map(|c| c.ring().cloned())
        .ok_or_else(|| CliError::Usage("class-ring series without a ring".into()))?;
    let rel = ring
        .modulus()
        .coeffs()
        .iter()
        .map(|c| {
            c.constant_value()
                .map(|r| r.to_string())
                .ok_or_else(|| CliError::Usage("class-ring relation has non-constant coefficients".into()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let n = ring.degree();
    let components: Vec<Vec<RatFnDoc>> = coeffs
        .iter()
        .map(|c| (0..n).map(|k| doc(&c.residue().coeff(k))).collect())
        .collect();
    let constant = components.iter().map(|cs| cs[0].clone()).collect();
    Ok((
        constant,
        NilpotentLayer {
            var: ring.var().to_string(),
            rel,
            components,
        },
    ))
}

/// Value of a coefficient that does not depend on `q` or `λ`.
trait ConstantValue {
    fn constant_value(&self) -> Option<Rational>;
}

impl ConstantValue for RatFn<Rational> {
    fn constant_value(&self) -> Option<Rational> {
        (self.denom().degree() == Some(0) && self.numer().degree().unwrap_or(0) == 0).then(|| self.numer().coeff(0))
    }
}

impl ConstantValue for RatFn<LambdaFn> {
    fn constant_value(&self) -> Option<Rational> {
        if self.denom().degree() != Some(0) || self.numer().degree().unwrap_or(0) != 0 {
            return None;
        }
        self.numer().coeff(0).as_ratfn().constant_value()
    }
}

impl SeriesDoc {
    pub fn new(generator: &str, params: Params, series: &GeneratedSeries) -> Result<Self, CliError> {
        let (coeffs, nilpotent) = match series {
            GeneratedSeries::Scalar(s) => (s.coeffs().iter().map(ratfn_doc).collect(), None),
            GeneratedSeries::Nilpotent(s) => {
                let (c, layer) = nilpotent_layer(s.coeffs(), ratfn_doc)?;
                (c, Some(layer))
            }
            GeneratedSeries::NilpotentSymbolic(s) => {
                let (c, layer) = nilpotent_layer(s.coeffs(), lambda_ratfn_doc)?;
                (c, Some(layer))
            }
            GeneratedSeries::Lambda(_) => {
                return Err(CliError::Usage("λ-truncated series have no document form".into()));
            }
        };
        Ok(SeriesDoc {
            schema_version: SCHEMA_VERSION,
            generator: generator.to_string(),
            params,
            coeffs,
            nilpotent,
        })
    }

    pub fn from_scalar(generator: &str, params: Params, series: &QSeries<RatFn<Rational>>) -> Self {
        SeriesDoc {
            schema_version: SCHEMA_VERSION,
            generator: generator.to_string(),
            params,
            coeffs: series.coeffs().iter().map(ratfn_doc).collect(),
            nilpotent: None,
        }
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let doc: SeriesDoc =
            serde_json::from_str(text).map_err(|e| CliError::Usage(format!("bad series document: {e}")))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(CliError::Usage(format!(
                "unsupported schema_version {}",
                doc.schema_version
            )));
        }
        if doc.coeffs.is_empty() {
            return Err(CliError::Usage("series document has no coefficients".into()));
        }
        if let Some(layer) = &doc.nilpotent {
            if layer.components.len() != doc.coeffs.len()
                || layer
                    .components
                    .iter()
                    .zip(&doc.coeffs)
                    .any(|(cs, c)| cs.first() != Some(c))
            {
                return Err(CliError::Usage("nilpotent components disagree with coeffs".into()));
            }
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("serializable");
        s.push('\n');
        s
    }

    /// The series over `ℚ(q)`; class-ring or `λ`-symbolic documents are
    /// rejected.
    pub fn scalar_series(&self) -> Result<QSeries<RatFn<Rational>>, CliError> {
        if self.nilpotent.is_some() {
            return Err(CliError::Usage(format!(
                "{} has class-ring coefficients; this check needs a series over Q(q)",
                self.generator
            )));
        }
        let coeffs = self.coeffs.iter().map(parse_ratfn).collect::<Result<Vec<_>, _>>()?;
        Ok(QSeries::new(coeffs))
    }
}

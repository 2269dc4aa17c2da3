//! Argument types and the work behind each subcommand.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use serde_json::{json, Value};

use qkdiff_core::adelic::{Verdict, DEFAULT_LORDER, DEFAULT_NMAX, DEFAULT_QDEG, DEFAULT_TORDER};
use qkdiff_core::jfun::{
    equivariant_factors, generate, BundleSign, BundleSpec, GeneratedSeries, Generator, LambdaParam, ToricSpec,
};
use qkdiff_core::qseries::QSeries;
use qkdiff_core::rings::{Poly, RatFn, Rational};
use qkdiff_core::verify::{self, CheckOutcome, DESK_CHECKS};

use crate::doc::{parse_rational, Params, SeriesDoc};
use crate::report::{to_json, CheckReport, SuiteReport};
use crate::{exit, CliError};

type R = RatFn<Rational>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum GeneratorName {
    PointJ,
    CpnComponent,
    CpnPform,
    BundleIe,
    BundleIpe,
    CyLocal,
    CiLimit,
}

impl GeneratorName {
    pub fn as_str(self) -> &'static str {
        match self {
            GeneratorName::PointJ => "point-j",
            GeneratorName::CpnComponent => "cpn-component",
            GeneratorName::CpnPform => "cpn-pform",
            GeneratorName::BundleIe => "bundle-ie",
            GeneratorName::BundleIpe => "bundle-ipe",
            GeneratorName::CyLocal => "cy-local",
            GeneratorName::CiLimit => "ci-limit",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum CheckName {
    EulerIdentity,
    LemmaGamma,
    PropositionFlow,
    TheoremClosure,
    Cor1Fixedpoint,
    Recursion,
    AdelicI,
    AdelicIi,
    AdelicIii,
    CyExample,
    CiSmallJ,
    TwoRoute,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Desk,
}

/// Parameters shared by `generate` and `check`.
#[derive(Clone, Debug, Default, Args)]
pub struct SeriesArgs {
    /// Dimension of the projective space.
    #[arg(long = "N")]
    pub n: Option<usize>,
    /// Fixed-point index.
    #[arg(long)]
    pub i: Option<usize>,
    /// Torus characters Λ_0,…,Λ_N (default: the first N+1 primes).
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    pub lambdas: Vec<String>,
    /// Bundle degrees l_1,…,l_M.
    #[arg(long, value_delimiter = ',')]
    pub l: Vec<usize>,
    /// Bundle parameter: `formal` or a rational value.
    #[arg(long)]
    pub lambda: Option<String>,
    /// Novikov truncation D.
    #[arg(long)]
    pub qdeg: Option<usize>,
    /// λ truncation L.
    #[arg(long)]
    pub lorder: Option<usize>,
}

#[derive(Clone, Debug, Args)]
pub struct GenerateArgs {
    pub generator: GeneratorName,
    #[command(flatten)]
    pub series: SeriesArgs,
    /// Output file (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Debug, Args)]
pub struct OutputArgs {
    /// Output file for the JSON report (default: standard output).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Print only JSON on standard output.
    #[arg(long)]
    pub json_only: bool,
    /// Record wall-clock time per check (makes output nondeterministic).
    #[arg(long)]
    pub timing: bool,
}

#[derive(Clone, Debug, Args)]
pub struct CheckArgs {
    pub check: CheckName,
    #[command(flatten)]
    pub series: SeriesArgs,
    /// Second fixed-point index.
    #[arg(long)]
    pub j: Option<usize>,
    /// Covering degrees m.
    #[arg(long, value_delimiter = ',')]
    pub m: Vec<u32>,
    /// Largest l for the Γ-symbol identities.
    #[arg(long)]
    pub max_l: Option<usize>,
    /// t-order M of local expansions.
    #[arg(long)]
    pub torder: Option<i64>,
    /// Largest cyclotomic index for condition (iii).
    #[arg(long)]
    pub nmax: Option<u32>,
    /// Series document to test (adelic checks).
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Generator to test when no input is given (adelic checks).
    #[arg(long, default_value = "point-j")]
    pub generator: GeneratorName,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Clone, Debug, Args)]
pub struct ReportArgs {
    #[arg(long)]
    pub suite: Suite,
    #[command(flatten)]
    pub output: OutputArgs,
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl SeriesArgs {
    fn qdeg(&self) -> usize {
        self.qdeg.unwrap_or(DEFAULT_QDEG)
    }

    fn lambdas(&self) -> Result<Vec<Rational>, CliError> {
        self.lambdas.iter().map(|s| parse_rational(s)).collect()
    }

    /// Toric data with `N` defaulting to `default_n` (or to the number of
    /// characters given).
    fn spec(&self, default_n: usize) -> Result<ToricSpec, CliError> {
        let lambdas = self.lambdas()?;
        let n = match (self.n, lambdas.len()) {
            (Some(n), 0) => n,
            (Some(n), k) if k == n + 1 => n,
            (Some(n), k) => return Err(usage(format!("--N {n} needs {} characters, got {k}", n + 1))),
            (None, 0) => default_n,
            (None, k) => k - 1,
        };
        let mut spec = ToricSpec::new(n, self.qdeg()).with_lorder(self.lorder.unwrap_or(DEFAULT_LORDER));
        if !lambdas.is_empty() {
            spec = spec.with_lambdas(lambdas);
        }
        spec.validate()?;
        Ok(spec)
    }

    fn lambda_param(&self) -> Result<LambdaParam, CliError> {
        match self.lambda.as_deref() {
            None | Some("formal") => Ok(LambdaParam::Formal),
            Some(v) => Ok(LambdaParam::Value(parse_rational(v)?)),
        }
    }

    fn degrees(&self, default: &[usize]) -> Result<Vec<usize>, CliError> {
        let l = if self.l.is_empty() {
            default.to_vec()
        } else {
            self.l.clone()
        };
        if l.is_empty() || l.contains(&0) {
            return Err(usage("--l needs positive bundle degrees"));
        }
        Ok(l)
    }
}

fn lambda_strings(spec: &ToricSpec) -> Vec<String> {
    spec.lambdas.iter().map(ToString::to_string).collect()
}

/// Builds the generator, its toric data and the echoed parameters.
fn resolve(name: GeneratorName, args: &SeriesArgs) -> Result<(Generator, ToricSpec, Params), CliError> {
    let mut params = Params {
        qdeg: args.qdeg(),
        lorder: args.lorder,
        ..Params::default()
    };
    let (gen, spec) = match name {
        GeneratorName::PointJ => (Generator::PointJ, ToricSpec::new(0, args.qdeg())),
        GeneratorName::CpnComponent => {
            let spec = args.spec(1)?;
            let i = args.i.unwrap_or(0);
            if i > spec.n {
                return Err(usage(format!("--i {i} exceeds N = {}", spec.n)));
            }
            params.n = Some(spec.n);
            params.i = Some(i);
            params.lambdas = lambda_strings(&spec);
            (Generator::CpnComponent { i }, spec)
        }
        GeneratorName::CpnPform => {
            let spec = args.spec(1)?;
            params.n = Some(spec.n);
            params.lambdas = lambda_strings(&spec);
            (Generator::CpnPForm, spec)
        }
        GeneratorName::BundleIe | GeneratorName::BundleIpe => {
            let (gen, sign) = if name == GeneratorName::BundleIe {
                (Generator::BundleIe, BundleSign::Negative)
            } else {
                (Generator::BundleIpe, BundleSign::Positive)
            };
            let degrees = args.degrees(&[])?;
            let lambda = args.lambda_param()?;
            params.lambda = Some(match &lambda {
                LambdaParam::Formal => "formal".to_string(),
                LambdaParam::Value(v) => v.to_string(),
            });
            let spec = args.spec(1)?.with_bundle(BundleSpec {
                sign,
                degrees: degrees.clone(),
                lambda,
            });
            params.n = Some(spec.n);
            params.lambdas = lambda_strings(&spec);
            params.l = degrees;
            (gen, spec)
        }
        GeneratorName::CyLocal => (Generator::CyLocal, ToricSpec::new(1, args.qdeg())),
        GeneratorName::CiLimit => {
            let n = args.n.unwrap_or(4);
            let degrees = args.degrees(&[2])?;
            params.n = Some(n);
            params.l = degrees.clone();
            let spec = ToricSpec::new(n, args.qdeg()).with_bundle(BundleSpec {
                sign: BundleSign::Positive,
                degrees,
                lambda: LambdaParam::Value(Rational::from_integer(1.into())),
            });
            (Generator::CiLimit, spec)
        }
    };
    Ok((gen, spec, params))
}

/// `generate`: the series document as JSON.
pub fn run_generate(args: &GenerateArgs) -> Result<String, CliError> {
    let (gen, spec, params) = resolve(args.generator, &args.series)?;
    let series = generate(&gen, &spec, 1)?;
    Ok(SeriesDoc::new(args.generator.as_str(), params, &series)?.to_json())
}

fn scalar(series: GeneratedSeries, what: &str) -> Result<QSeries<R>, CliError> {
    match series {
        GeneratedSeries::Scalar(s) => Ok(s),
        _ => Err(usage(format!(
            "{what} does not produce a series over Q(q); adelic checks need one"
        ))),
    }
}

/// `Ψ^m` of the series under test, or `None` where it is undefined.
type AdamsImage = dyn Fn(u32) -> Result<Option<QSeries<R>>, CliError>;

/// Series under test for the adelic checks, with a way to produce its
/// Adams images and the non-cyclotomic denominators it may carry.
struct AdelicSource {
    series: QSeries<R>,
    params: BTreeMap<String, Value>,
    adams: Box<AdamsImage>,
    allowed_extra: Vec<Poly<Rational>>,
}

fn adelic_source(args: &CheckArgs) -> Result<AdelicSource, CliError> {
    let mut params = BTreeMap::new();
    if let Some(path) = &args.input {
        let doc = SeriesDoc::from_json(&std::fs::read_to_string(path)?)?;
        let series = doc.scalar_series()?;
        params.insert("input".into(), json!(path.display().to_string()));
        params.insert("generator".into(), json!(doc.generator));
        params.insert("qdeg".into(), json!(series.trunc()));
        let equivariant = doc.generator == GeneratorName::CpnComponent.as_str();
        let allowed_extra = if equivariant {
            let lambdas = doc
                .params
                .lambdas
                .iter()
                .map(|s| parse_rational(s))
                .collect::<Result<Vec<_>, _>>()?;
            equivariant_factors(&lambdas, series.trunc())
        } else {
            Vec::new()
        };
        let f = series.clone();
        // With Λ specialized in the coefficients, Ψ^m of the stored data is
        // not determined; only Λ-free documents are twisted coefficientwise.
        let adams = Box::new(move |m: u32| -> Result<Option<QSeries<R>>, CliError> {
            if equivariant {
                Ok(None)
            } else {
                Ok(Some(f.adams(m, Some(f.trunc()))?))
            }
        });
        return Ok(AdelicSource {
            series,
            params,
            adams,
            allowed_extra,
        });
    }
    let (gen, spec, doc_params) = resolve(args.generator, &args.series)?;
    let series = scalar(generate(&gen, &spec, 1)?, args.generator.as_str())?;
    params.insert("generator".into(), json!(args.generator.as_str()));
    params.extend(params_map(&doc_params));
    let allowed_extra = if matches!(gen, Generator::CpnComponent { .. }) {
        equivariant_factors(&spec.lambdas, spec.qdeg)
    } else {
        Vec::new()
    };
    let what = args.generator.as_str();
    let adams = Box::new(move |m: u32| -> Result<Option<QSeries<R>>, CliError> {
        Ok(Some(scalar(generate(&gen, &spec, m)?, what)?))
    });
    Ok(AdelicSource {
        series,
        params,
        adams,
        allowed_extra,
    })
}

fn params_map(p: &Params) -> BTreeMap<String, Value> {
    match serde_json::to_value(p).expect("serializable") {
        Value::Object(map) => map.into_iter().collect(),
        _ => BTreeMap::new(),
    }
}

fn inapplicable(name: &str, witness: String) -> CheckOutcome {
    CheckOutcome {
        name: name.to_string(),
        verdict: Verdict::Inapplicable,
        witnesses: vec![witness],
        findings: BTreeMap::new(),
        truncations: BTreeMap::new(),
    }
}

/// Runs one named check and returns its outcome with the echoed parameters.
pub fn evaluate_check(args: &CheckArgs) -> Result<(CheckOutcome, BTreeMap<String, Value>), CliError> {
    let s = &args.series;
    let qdeg = s.qdeg();
    let torder = args.torder.unwrap_or(DEFAULT_TORDER);
    let lorder = s.lorder.unwrap_or(DEFAULT_LORDER);
    let nmax = args.nmax.unwrap_or(DEFAULT_NMAX);
    let mut params = BTreeMap::new();
    params.insert("qdeg".to_string(), json!(qdeg));
    let outcome = match args.check {
        CheckName::EulerIdentity => verify::euler_identity(qdeg),
        CheckName::LemmaGamma => {
            let max_l = args.max_l.unwrap_or(2);
            params.insert("max_l".into(), json!(max_l));
            verify::lemma_gamma(max_l, qdeg)
        }
        CheckName::PropositionFlow => {
            params.insert("torder".into(), json!(torder));
            params.insert("lorder".into(), json!(lorder));
            verify::proposition_flow(qdeg, torder, lorder)
        }
        CheckName::TheoremClosure => {
            params.insert("torder".into(), json!(torder));
            params.insert("lorder".into(), json!(lorder));
            verify::theorem_closure(qdeg, torder, lorder)
        }
        CheckName::Cor1Fixedpoint => {
            let dims = match s.n {
                Some(n) => vec![n],
                None => vec![1, 2],
            };
            params.insert("N".into(), json!(dims));
            verify::cor1_fixedpoint(&dims, qdeg)
        }
        CheckName::Recursion => {
            let spec = s.spec(1)?;
            let (i, j) = (s.i.unwrap_or(0), args.j.unwrap_or(1));
            let m = match args.m.as_slice() {
                [] => 1,
                [m] => *m,
                _ => return Err(usage("recursion takes a single --m")),
            };
            if i > spec.n || j > spec.n || i == j {
                return Err(usage(format!("need distinct --i, --j ≤ {}", spec.n)));
            }
            if m == 0 || m as usize > qdeg {
                return Err(usage(format!("need 1 ≤ --m ≤ --qdeg, got {m}")));
            }
            params.insert("N".into(), json!(spec.n));
            params.insert("lambdas".into(), json!(lambda_strings(&spec)));
            params.insert("i".into(), json!(i));
            params.insert("j".into(), json!(j));
            params.insert("m".into(), json!(m));
            verify::recursion(&spec.lambdas, &[(i, j, m)], m, qdeg)
        }
        CheckName::AdelicI => {
            let src = adelic_source(args)?;
            params.extend(src.params);
            params.insert("torder".into(), json!(torder));
            verify::adelic_i(&src.series, torder)
        }
        CheckName::AdelicIi => {
            let src = adelic_source(args)?;
            params.extend(src.params);
            let ms = if args.m.is_empty() { vec![2, 3] } else { args.m.clone() };
            if ms.contains(&0) {
                return Err(usage("--m must be positive"));
            }
            params.insert("m".into(), json!(ms));
            params.insert("torder".into(), json!(torder));
            let mut images = Vec::new();
            for &m in &ms {
                match (src.adams)(m)? {
                    Some(img) => images.push((m, img)),
                    None => {
                        let w = "Adams image undefined for a document with specialized characters; \
                                 use --generator instead of --input";
                        return Ok((inapplicable("adelic-ii", w.into()), params));
                    }
                }
            }
            verify::adelic_ii(&src.series, &images, torder)
        }
        CheckName::AdelicIii => {
            let src = adelic_source(args)?;
            params.extend(src.params);
            params.insert("nmax".into(), json!(nmax));
            verify::adelic_iii(&src.series, nmax, &src.allowed_extra)
        }
        CheckName::CyExample => verify::cy_example(qdeg),
        CheckName::CiSmallJ => {
            let n = s.n.unwrap_or(4);
            let degrees = s.degrees(&[2])?;
            params.insert("N".into(), json!(n));
            params.insert("l".into(), json!(degrees));
            verify::ci_small_j(n, &degrees, qdeg)
        }
        CheckName::TwoRoute => {
            let spec = s.spec(2)?;
            params.insert("N".into(), json!(spec.n));
            params.insert("lambdas".into(), json!(lambda_strings(&spec)));
            verify::two_route(&spec)
        }
    };
    Ok((outcome, params))
}

/// Output of `check` and `report`: the text for standard output, the JSON
/// document and the exit code.
pub struct Rendered {
    pub human: Vec<String>,
    pub json: String,
    pub code: u8,
}

pub fn run_check(args: &CheckArgs) -> Result<Rendered, CliError> {
    let start = Instant::now();
    let (outcome, params) = evaluate_check(args)?;
    let timing = args.output.timing.then(|| start.elapsed().as_millis() as u64);
    let report = CheckReport::new(outcome, params, timing);
    Ok(Rendered {
        human: vec![report.summary()],
        json: to_json(&report),
        code: report.exit_code(),
    })
}

/// `report --suite desk`: the acceptance checks, run concurrently.
pub fn run_report(args: &ReportArgs) -> Result<Rendered, CliError> {
    let Suite::Desk = args.suite;
    let timing = args.output.timing;
    let checks: Vec<CheckReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = DESK_CHECKS
            .iter()
            .map(|name| {
                scope.spawn(move || {
                    let start = Instant::now();
                    let out = verify::run_desk_check(name).expect("desk check names are known");
                    let ms = timing.then(|| start.elapsed().as_millis() as u64);
                    CheckReport::new(out, BTreeMap::new(), ms)
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("check thread panicked"))
            .collect()
    });
    let suite = SuiteReport::new("desk", checks);
    let mut human: Vec<String> = suite.checks.iter().map(CheckReport::summary).collect();
    human.push(format!(
        "{} of {} checks pass",
        suite.checks.iter().filter(|c| c.exit_code() == exit::PASS).count(),
        suite.checks.len()
    ));
    Ok(Rendered {
        human,
        json: to_json(&suite),
        code: suite.exit_code(),
    })
}

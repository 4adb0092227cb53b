//! `hpade`: compute Hermite-Padé polynomials of type I for a tuple of
//! truncated power series, Padé approximants and C-fraction quotients for
//! the two-series case, or benchmark the recurrence against the dense
//! linear-system solve.

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, ValueEnum};
use serde::Serialize;

use hermite_pade::{
    cfraction_coefficients, hermite_pade, hp_nullspace, multiindex_for_step, pade_approximant,
    proportional, verify, Error, Field, FloatField, KernelField, MultiIndex, RationalField,
    ResidualOrder, SeriesTuple, TruncatedSeries, VerifyOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Hp,
    Pade,
    Cfrac,
    Bench,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Backend {
    Rational,
    Float,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Text,
}

/// Hermite-Padé polynomials of type I from truncated power series.
///
/// The input file is JSON: {"m": M, "series": [[coeff, ...], ...]} with M+1
/// rows of equal length, row j holding the coefficients of f_j by ascending
/// power. Rational coefficients are integers or "p/q" strings; decimal
/// notation requires the float backend.
#[derive(Parser, Debug)]
#[command(name = "hpade", version, about)]
struct Cli {
    /// Input file path (not used in bench mode).
    input: Option<String>,

    /// Step count n: tangency order n+1 for hp, approximant index for pade,
    /// quotient count n+1 for cfrac.
    #[arg(long)]
    steps: Option<usize>,

    #[arg(long, value_enum, default_value_t = Mode::Hp)]
    mode: Mode,

    #[arg(long, value_enum, default_value_t = Backend::Rational)]
    backend: Backend,

    /// Zero tolerance for the float backend.
    #[arg(long, default_value_t = FloatField::DEFAULT_TOL)]
    tol: f64,

    /// Start permutation: rotate which function receives the first degree
    /// increment of the produced multiindex family (hp mode).
    #[arg(long, default_value_t = 0)]
    start: usize,

    /// Cross-check the result against the dense linear-system solve.
    #[arg(long)]
    oracle_check: bool,

    /// Run the full-row diagnostics (row-degree patterns and determinant).
    #[arg(long)]
    verify_full: bool,

    #[arg(long, value_enum, default_value_t = Emit::Json)]
    emit: Emit,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.backend {
        Backend::Rational => run(&cli, RationalField),
        Backend::Float => run(&cli, FloatField::new(cli.tol)),
    };
    match outcome {
        Ok(doc) => {
            match cli.emit {
                Emit::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&doc).expect("serializable")
                ),
                Emit::Text => print!("{}", doc.to_text()),
            }
            ExitCode::SUCCESS
        }
        Err(failure) => {
            eprintln!("error[{}]: {}", failure.code, failure.message);
            ExitCode::from(failure.exit)
        }
    }
}

struct Failure {
    exit: u8,
    code: &'static str,
    message: String,
}

impl Failure {
    fn malformed(message: impl Into<String>) -> Self {
        Failure {
            exit: 4,
            code: "MALFORMED_INPUT",
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let exit = match &e {
            Error::Degenerate { .. } | Error::ResidualShortfall { .. } => 2,
            Error::Exhausted { .. } | Error::InsufficientOrder { .. } => 3,
            Error::MixedLengths
            | Error::EmptyInput
            | Error::TooEarly { .. }
            | Error::InvalidStart { .. } => 4,
            // Internal contract violations; not reachable from CLI input.
            _ => 1,
        };
        Failure {
            exit,
            code: e.code(),
            message: e.to_string(),
        }
    }
}

#[derive(Serialize)]
struct OutputDoc {
    mode: String,
    multiindex: Option<MultiIndex>,
    polys: Option<Vec<Vec<String>>>,
    predicted_order: Option<usize>,
    verified_order: Option<ResidualOrder>,
    report: Option<serde_json::Value>,
    backend: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    quotients: Option<Vec<String>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    terminated: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle_check: Option<OracleCheckDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    bench: Option<Vec<BenchCell>>,
}

#[derive(Serialize)]
struct OracleCheckDoc {
    proportional: bool,
    kernel_dim: usize,
}

#[derive(Serialize)]
struct BenchCell {
    m: usize,
    n: usize,
    recurrence_micros: u128,
    oracle_micros: u128,
    speedup: f64,
    agree: bool,
}

impl OutputDoc {
    fn new(mode: &str, backend: String) -> Self {
        OutputDoc {
            mode: mode.to_string(),
            multiindex: None,
            polys: None,
            predicted_order: None,
            verified_order: None,
            report: None,
            backend,
            quotients: None,
            terminated: None,
            oracle_check: None,
            bench: None,
        }
    }

    fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("mode: {}", self.mode));
        line(format!("backend: {}", self.backend));
        if let Some(k) = &self.multiindex {
            line(format!("multiindex: {:?}", k.degrees()));
        }
        if let Some(polys) = &self.polys {
            for (j, p) in polys.iter().enumerate() {
                line(format!("poly {j}: [{}]", p.join(", ")));
            }
        }
        if let Some(q) = &self.quotients {
            line(format!("quotients: [{}]", q.join(", ")));
        }
        if let Some(t) = self.terminated {
            line(format!("terminated: {t}"));
        }
        if let Some(p) = self.predicted_order {
            line(format!("predicted_order: {p}"));
        }
        if let Some(v) = &self.verified_order {
            line(format!("verified_order: {v}"));
        }
        if let Some(oc) = &self.oracle_check {
            line(format!(
                "oracle_check: proportional={} kernel_dim={}",
                oc.proportional, oc.kernel_dim
            ));
        }
        if let Some(report) = &self.report {
            line(format!("report: {report}"));
        }
        if let Some(cells) = &self.bench {
            line("bench (m, n, recurrence_us, oracle_us, speedup, agree):".to_string());
            for c in cells {
                line(format!(
                    "  {} {} {} {} {:.2} {}",
                    c.m, c.n, c.recurrence_micros, c.oracle_micros, c.speedup, c.agree
                ));
            }
        }
        out
    }
}

fn run<F: KernelField>(cli: &Cli, field: F) -> Result<OutputDoc, Failure> {
    match cli.mode {
        Mode::Hp => run_hp(cli, field),
        Mode::Pade => run_pade(cli, field),
        Mode::Cfrac => run_cfrac(cli, field),
        Mode::Bench => run_bench(cli, field),
    }
}

fn require_steps(cli: &Cli) -> Result<usize, Failure> {
    cli.steps
        .ok_or_else(|| Failure::malformed("--steps is required for this mode"))
}

fn load_tuple<F: Field>(cli: &Cli, field: &F) -> Result<SeriesTuple<F>, Failure> {
    let path = cli
        .input
        .as_ref()
        .ok_or_else(|| Failure::malformed("an input file is required for this mode"))?;
    let raw = fs::read_to_string(path)
        .map_err(|e| Failure::malformed(format!("cannot read {path}: {e}")))?;
    let doc: InputDoc = serde_json::from_str(&raw)
        .map_err(|e| Failure::malformed(format!("invalid JSON in {path}: {e}")))?;
    if doc.series.len() != doc.m + 1 {
        return Err(Failure::malformed(format!(
            "expected m+1 = {} series rows, found {}",
            doc.m + 1,
            doc.series.len()
        )));
    }
    let mut rows = Vec::with_capacity(doc.series.len());
    for (j, row) in doc.series.iter().enumerate() {
        let mut out = Vec::with_capacity(row.len());
        for c in row {
            out.push(parse_coeff(field, c).ok_or_else(|| {
                Failure::malformed(format!(
                    "row {j}: coefficient {c} is not valid for the {} backend",
                    field.name()
                ))
            })?);
        }
        rows.push(out);
    }
    Ok(SeriesTuple::from_rows(field.clone(), rows)?)
}

#[derive(serde::Deserialize)]
struct InputDoc {
    m: usize,
    series: Vec<Vec<serde_json::Value>>,
}

fn parse_coeff<F: Field>(field: &F, v: &serde_json::Value) -> Option<F::Elem> {
    match v {
        serde_json::Value::String(s) => field.parse(s),
        serde_json::Value::Number(n) => {
            if let Some(i) = n.as_i64() {
                Some(field.from_int(i))
            } else if field.is_exact() {
                // Non-integer numerals silently lose precision; require the
                // float backend for them.
                None
            } else {
                field.parse(&n.to_string())
            }
        }
        _ => None,
    }
}

fn poly_strings<F: Field>(field: &F, polys: &hermite_pade::PolyVector<F>) -> Vec<Vec<String>> {
    polys
        .entries()
        .iter()
        .map(|p| p.to_strings(field))
        .collect()
}

fn run_hp<F: KernelField>(cli: &Cli, field: F) -> Result<OutputDoc, Failure> {
    let steps = require_steps(cli)?;
    let tuple = load_tuple(cli, &field)?.with_start_permutation(cli.start)?;
    let result = hermite_pade(&tuple, steps)?;
    let options = VerifyOptions {
        row_degrees: cli.verify_full,
        determinant: cli.verify_full,
    };
    let report = verify(&tuple, &result, options)?;

    let mut doc = OutputDoc::new("hp", field.name());
    doc.multiindex = Some(result.multiindex.clone());
    doc.polys = Some(poly_strings(&field, &result.polys));
    doc.predicted_order = Some(result.predicted_order);
    doc.verified_order = Some(result.verified_order);
    doc.report = Some(serde_json::to_value(&report).expect("serializable report"));
    if cli.oracle_check {
        let ns = hp_nullspace(&tuple, &result.multiindex)?;
        doc.oracle_check = Some(OracleCheckDoc {
            proportional: proportional(&field, &result.polys, &ns.polys),
            kernel_dim: ns.kernel_dim,
        });
    }
    Ok(doc)
}

fn run_pade<F: KernelField>(cli: &Cli, field: F) -> Result<OutputDoc, Failure> {
    let steps = require_steps(cli)?;
    let tuple = load_tuple(cli, &field)?;
    if tuple.m() != 1 {
        return Err(Failure::malformed("pade mode expects m = 1"));
    }
    let ones = tuple.slot(0);
    let head_is_one = field.is_zero(&field.sub(ones.constant_term(), &field.one()));
    let tail_is_zero = ones.coeffs()[1..].iter().all(|c| field.is_zero(c));
    if !(head_is_one && tail_is_zero) {
        return Err(Failure::malformed(
            "pade mode expects row 0 to be the constant-one series",
        ));
    }
    let f = TruncatedSeries::new(tuple.slot(1).coeffs().to_vec())?;
    let pade = pade_approximant(&field, &f, steps)?;

    let mut doc = OutputDoc::new("pade", field.name());
    doc.multiindex = Some(pade.hp.multiindex.clone());
    doc.polys = Some(vec![
        pade.numerator.to_strings(&field),
        pade.denominator.to_strings(&field),
    ]);
    doc.predicted_order = Some(pade.hp.predicted_order);
    doc.verified_order = Some(pade.hp.verified_order);
    doc.terminated = Some(pade.terminated);
    if cli.oracle_check {
        let ns = hp_nullspace(&tuple, &pade.hp.multiindex)?;
        doc.oracle_check = Some(OracleCheckDoc {
            proportional: proportional(&field, &pade.hp.polys, &ns.polys),
            kernel_dim: ns.kernel_dim,
        });
    }
    Ok(doc)
}

fn run_cfrac<F: KernelField>(cli: &Cli, field: F) -> Result<OutputDoc, Failure> {
    let steps = require_steps(cli)?;
    let tuple = load_tuple(cli, &field)?;
    if tuple.m() != 1 {
        return Err(Failure::malformed("cfrac mode expects m = 1"));
    }
    let f0 = TruncatedSeries::new(tuple.slot(0).coeffs().to_vec())?;
    let f1 = TruncatedSeries::new(tuple.slot(1).coeffs().to_vec())?;
    let cf = cfraction_coefficients(&field, &f0, &f1, steps)?;

    let mut doc = OutputDoc::new("cfrac", field.name());
    doc.quotients = Some(cf.quotients.iter().map(|q| field.format(q)).collect());
    doc.terminated = Some(cf.terminated);
    Ok(doc)
}

/// Benchmark grid: random small-integer tuples in general position, timing
/// the recurrence against the dense solve at the same multiindex.
fn run_bench<F: KernelField>(cli: &Cli, field: F) -> Result<OutputDoc, Failure> {
    let seed = std::env::var("HPADE_SEED")
        .ok()
        .and_then(|s| s.parse::<u64>().ok())
        .unwrap_or(0);
    let n_grid: Vec<usize> = match cli.steps {
        Some(n) => vec![n],
        None => vec![4, 8, 12],
    };
    let mut cells = Vec::new();
    for m in 1..=4usize {
        for &n in &n_grid {
            if n + 1 < m {
                continue;
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed ^ ((m as u64) << 32) ^ n as u64);
            let len = 2 * n + 4;
            let tuple = random_tuple(&field, &mut rng, m, len, n + 1);
            let start = Instant::now();
            let result = hermite_pade(&tuple, n)?;
            let recurrence = start.elapsed().as_micros();

            let k = multiindex_for_step(n, m)?;
            let start = Instant::now();
            let ns = hp_nullspace(&tuple, &k)?;
            let oracle = start.elapsed().as_micros();

            cells.push(BenchCell {
                m,
                n,
                recurrence_micros: recurrence,
                oracle_micros: oracle,
                speedup: oracle as f64 / recurrence.max(1) as f64,
                agree: proportional(&field, &result.polys, &ns.polys),
            });
        }
    }
    let mut doc = OutputDoc::new("bench", field.name());
    doc.bench = Some(cells);
    Ok(doc)
}

/// Rejection-sample a tuple whose ratio-coefficient chain exists through
/// `max_level` levels.
fn random_tuple<F: Field>(
    field: &F,
    rng: &mut ChaCha8Rng,
    m: usize,
    len: usize,
    max_level: usize,
) -> SeriesTuple<F> {
    loop {
        let rows: Vec<Vec<F::Elem>> = (0..=m)
            .map(|_| {
                (0..len)
                    .map(|i| {
                        let c = if i == 0 {
                            let v: i64 = rng.gen_range(1..=5);
                            if rng.gen_bool(0.5) {
                                v
                            } else {
                                -v
                            }
                        } else {
                            rng.gen_range(-5..=5)
                        };
                        field.from_int(c)
                    })
                    .collect()
            })
            .collect();
        let t = SeriesTuple::from_rows(field.clone(), rows).expect("well-formed rows");
        if hermite_pade::a_sequence(&t, max_level).is_ok() {
            return t;
        }
    }
}

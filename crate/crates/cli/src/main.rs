use std::fmt::Display;
use std::io::{self, Read, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use polyiter::approximation::{convergence_table, find_epsilon_multi_place, ApproximationTarget};
use polyiter::census::{
    density_report, normalized_power_sequence, CSV_HEADER, DEFAULT_ENUMERATION_CAP,
};
use polyiter::construction::{
    build_family, parse_word, verify_all, word_total_exponent, Anchors, ConstructionData,
    IterationStrategy,
};
use polyiter::scalars::{parse_rational, to_f64};
use polyiter::serial::{
    construction_field, construction_from_json, construction_to_json, parse_poly,
};
use polyiter::{Error, Field, FieldDescriptor, Fp, Place, Poly, PrimeField, Rational, Rationals};
use serde_json::json;

#[derive(Parser)]
#[command(
    name = "polyiter",
    version,
    about = "Build and verify polynomial families whose r-th iterates approach a target"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the family P for a target Q and print it as JSON.
    Construct(ConstructArgs),
    /// Check P^r ≡ Q (mod ε) and every intermediate congruence.
    Verify(VerifyArgs),
    /// Specialize ε and measure the error at places of Q.
    Approx(ApproxArgs),
    /// Count r-th iterates of bounded degree over a prime field.
    Census(CensusArgs),
    /// Reduce a monoid word to its total exponent, optionally building the family for it.
    Word(WordArgs),
}

#[derive(Args, Clone)]
struct TargetArgs {
    /// Coefficient field: `Q` or `Fp:<prime>`.
    #[arg(long, default_value = "Q")]
    field: String,
    /// Target as ascending comma-separated coefficients, e.g. "1,0,-1/2".
    #[arg(long, allow_hyphen_values = true, conflicts_with = "json")]
    poly: Option<String>,
    /// Target as JSON `{"coeffs": [...]}`; prefix with @ to read a file.
    #[arg(long)]
    json: Option<String>,
    /// Anchors a_1..a_{r-1}, comma-separated.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    anchors: Option<Vec<String>>,
    /// Override n (at least max(2, deg Q + 1)).
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Exact,
    Windowed,
    Auto,
}

impl From<Strategy> for IterationStrategy {
    fn from(s: Strategy) -> Self {
        match s {
            Strategy::Exact => IterationStrategy::Exact,
            Strategy::Windowed => IterationStrategy::Windowed,
            Strategy::Auto => IterationStrategy::Auto,
        }
    }
}

#[derive(Args)]
struct ConstructArgs {
    #[command(flatten)]
    target: TargetArgs,
    /// Iteration order.
    #[arg(long)]
    r: usize,
    /// How P^r is computed for the residual.
    #[arg(long, value_enum, default_value = "auto")]
    strategy: Strategy,
    /// Skip computing the residual T with P^r = Q + εT.
    #[arg(long)]
    no_residual: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    target: TargetArgs,
    /// Iteration order (not needed with --input).
    #[arg(long, required_unless_present = "input")]
    r: Option<usize>,
    /// Verify a document produced by `construct` ("-" reads stdin).
    #[arg(long, conflicts_with_all = ["poly", "json", "anchors", "n", "r"])]
    input: Option<String>,
    #[arg(long, value_enum, default_value = "auto")]
    strategy: Strategy,
    /// Include wall-clock timings in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Args)]
struct ApproxArgs {
    #[command(flatten)]
    target: TargetArgs,
    #[arg(long)]
    r: usize,
    /// Single place for a convergence table: `inf` or `p:<prime>`.
    #[arg(long, conflicts_with = "places")]
    place: Option<String>,
    /// Comma-separated rational values of ε for the table.
    #[arg(
        long,
        allow_hyphen_values = true,
        value_delimiter = ',',
        requires = "place"
    )]
    eps: Option<Vec<String>>,
    /// Places for the simultaneous search, comma-separated.
    #[arg(long, value_delimiter = ',', requires = "eta")]
    places: Option<Vec<String>>,
    /// Tolerance for the search, as a rational.
    #[arg(long, requires = "places")]
    eta: Option<String>,
    /// Search step limit.
    #[arg(long, default_value_t = 500)]
    max_steps: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Add floating-point renderings next to the exact values.
    #[arg(long)]
    float: bool,
}

#[derive(Args)]
struct CensusArgs {
    /// Prime field size.
    #[arg(long)]
    q: u64,
    #[arg(long, default_value_t = 2)]
    r: u32,
    /// Degree bounds, comma-separated.
    #[arg(long, value_delimiter = ',', required = true)]
    d: Vec<u64>,
    /// Maximum number of maps to enumerate per row.
    #[arg(long, env = "POLYITER_ENUM_CAP")]
    limit: Option<u128>,
    /// Emit q^(-d-1) |Iterates(d^r, r)| for each d instead of census rows.
    #[arg(long)]
    power_sequence: bool,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct WordArgs {
    /// A word such as "x1^2 x2^3" or "x2x2x2".
    #[arg(long)]
    word: String,
    #[command(flatten)]
    target: TargetArgs,
    /// Verify the family instead of printing it.
    #[arg(long)]
    verify: bool,
    #[arg(long, value_enum, default_value = "auto")]
    strategy: Strategy,
}

/// Exit status 2 for bad input, 1 for failed checks.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::VerificationFailed(_)
            | Error::IterationCapExceeded(_)
            | Error::InsufficientPrecision { .. } => Failure::Check(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type CliResult = Result<bool, Failure>;

fn read_source(arg: &str) -> Result<String, Failure> {
    let path = arg.strip_prefix('@').unwrap_or(arg);
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{path}: {e}")))
    }
}

fn target_poly<F: Field>(domain: &F::Domain, t: &TargetArgs) -> Result<Poly<F>, Failure> {
    match (&t.poly, &t.json) {
        (Some(list), None) => {
            let coeffs = list
                .split(',')
                .map(|s| F::parse_literal(domain, s.trim()))
                .collect::<polyiter::Result<Vec<_>>>()?;
            Ok(Poly::new(domain.clone(), coeffs))
        }
        (None, Some(j)) => {
            let text = if j.starts_with('@') {
                read_source(j)?
            } else {
                j.clone()
            };
            Ok(parse_poly(domain, &text)?)
        }
        _ => Err(Failure::Usage("one of --poly or --json is required".into())),
    }
}

fn family<F: Field>(
    domain: &F::Domain,
    t: &TargetArgs,
    r: usize,
) -> Result<ConstructionData<F>, Failure> {
    let q = target_poly::<F>(domain, t)?;
    let anchors = match &t.anchors {
        Some(list) => {
            let values = list
                .iter()
                .map(|s| F::parse_literal(domain, s.trim()))
                .collect::<polyiter::Result<Vec<_>>>()?;
            Some(Anchors::new(domain.clone(), values)?)
        }
        None => None,
    };
    Ok(build_family(&q, r, anchors, t.n)?)
}

fn print_json(value: &impl serde::Serialize) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Failure::Usage(e.to_string()))?;
    let mut out = io::stdout().lock();
    writeln!(out, "{text}")?;
    Ok(())
}

fn construct<F: Field + Display>(domain: &F::Domain, a: &ConstructArgs) -> CliResult {
    let mut data = family::<F>(domain, &a.target, a.r)?;
    if !a.no_residual {
        data = data.with_residual(a.strategy.into())?;
    }
    print_json(&construction_to_json(&data))?;
    Ok(true)
}

fn verify_data<F: Field + Display>(
    data: &ConstructionData<F>,
    strategy: Strategy,
    timing: bool,
) -> CliResult {
    let (key, lemmas) = verify_all(data, strategy.into(), timing)?;
    let passed = key.passed && lemmas.passed;
    print_json(&json!({ "passed": passed, "key_congruence": key, "lemmas": lemmas }))?;
    Ok(passed)
}

fn with_field(field: &str) -> Result<FieldDescriptor, Failure> {
    Ok(field.parse()?)
}

fn run_construct(a: &ConstructArgs) -> CliResult {
    match with_field(&a.target.field)? {
        FieldDescriptor::Rationals => construct::<Rational>(&Rationals, a),
        FieldDescriptor::Prime(p) => construct::<Fp>(&p, a),
    }
}

fn run_verify(a: &VerifyArgs) -> CliResult {
    if let Some(input) = &a.input {
        let text = read_source(input)?;
        return match construction_field(&text)? {
            FieldDescriptor::Rationals => verify_data(
                &construction_from_json::<Rational>(&Rationals, &text)?,
                a.strategy,
                a.timing,
            ),
            FieldDescriptor::Prime(p) => verify_data(
                &construction_from_json::<Fp>(&p, &text)?,
                a.strategy,
                a.timing,
            ),
        };
    }
    let r = a.r.expect("clap enforces --r without --input");
    match with_field(&a.target.field)? {
        FieldDescriptor::Rationals => verify_data(
            &family::<Rational>(&Rationals, &a.target, r)?,
            a.strategy,
            a.timing,
        ),
        FieldDescriptor::Prime(p) => {
            verify_data(&family::<Fp>(&p, &a.target, r)?, a.strategy, a.timing)
        }
    }
}

fn parse_place(s: &str) -> Result<Place, Failure> {
    Ok(s.parse()?)
}

fn run_approx(a: &ApproxArgs) -> CliResult {
    if with_field(&a.target.field)? != FieldDescriptor::Rationals {
        return Err(Failure::Usage("approx works over Q only".into()));
    }
    let q = target_poly::<Rational>(&Rationals, &a.target)?;
    if let Some(places) = &a.places {
        let places = places
            .iter()
            .map(|s| parse_place(s))
            .collect::<Result<Vec<_>, _>>()?;
        let eta = parse_rational(a.eta.as_deref().expect("clap enforces --eta"))?;
        let target = ApproximationTarget::new(q, a.r, places, eta)?;
        let res = find_epsilon_multi_place(&target, a.max_steps)?;
        let passed = res.all_below(target.eta()) && res.degree_bound_holds();
        match a.format {
            Format::Json => print_json(&res)?,
            Format::Csv => {
                let mut w = csv::Writer::from_writer(io::stdout().lock());
                let mut header = vec!["epsilon", "place", "error_norm", "below_eta"];
                if a.float {
                    header.push("error_norm_approx");
                }
                w.write_record(&header)?;
                for n in &res.norms {
                    let mut rec = vec![
                        res.epsilon.to_string(),
                        n.place.to_string(),
                        n.error_norm.to_string(),
                        (&n.error_norm < target.eta()).to_string(),
                    ];
                    if a.float {
                        rec.push(format!("{:e}", to_f64(&n.error_norm)));
                    }
                    w.write_record(&rec)?;
                }
                w.flush()?;
            }
        }
        return Ok(passed);
    }
    let place = parse_place(a.place.as_deref().ok_or_else(|| {
        Failure::Usage("give --place with --eps, or --places with --eta".into())
    })?)?;
    let eps = a
        .eps
        .as_ref()
        .ok_or_else(|| Failure::Usage("--eps is required with --place".into()))?
        .iter()
        .map(|s| parse_rational(s.trim()))
        .collect::<polyiter::Result<Vec<_>>>()?;
    let rows = convergence_table(&q, a.r, &place, &eps)?;
    match a.format {
        Format::Json => print_json(&rows)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            let mut header = vec!["epsilon", "place", "error_norm", "ratio"];
            if a.float {
                header.extend(["error_norm_approx", "ratio_approx"]);
            }
            w.write_record(&header)?;
            for row in &rows {
                let mut rec = vec![
                    row.epsilon.to_string(),
                    row.place.to_string(),
                    row.error_norm.to_string(),
                    row.ratio.to_string(),
                ];
                if a.float {
                    rec.push(format!("{:e}", to_f64(&row.error_norm)));
                    rec.push(format!("{:e}", to_f64(&row.ratio)));
                }
                w.write_record(&rec)?;
            }
            w.flush()?;
        }
    }
    Ok(true)
}

fn run_census(a: &CensusArgs) -> CliResult {
    let field = PrimeField::new(a.q)?;
    let cap = a.limit.unwrap_or(DEFAULT_ENUMERATION_CAP);
    if a.power_sequence {
        let seq = normalized_power_sequence(field, a.r, &a.d, cap)?;
        match a.format {
            Format::Json => {
                let rows: Vec<_> = seq
                    .iter()
                    .map(|(d, v)| json!({ "q": a.q, "r": a.r, "d": d, "value": v.to_string() }))
                    .collect();
                print_json(&rows)?;
            }
            Format::Csv => {
                let mut w = csv::Writer::from_writer(io::stdout().lock());
                w.write_record(["q", "r", "d", "value_num", "value_den"])?;
                for (d, v) in &seq {
                    w.write_record([
                        a.q.to_string(),
                        a.r.to_string(),
                        d.to_string(),
                        v.numer().to_string(),
                        v.denom().to_string(),
                    ])?;
                }
                w.flush()?;
            }
        }
        return Ok(true);
    }
    let rows = density_report(field, a.r, &a.d, cap)?;
    match a.format {
        Format::Json => print_json(&rows)?,
        Format::Csv => {
            let mut w = csv::Writer::from_writer(io::stdout().lock());
            w.write_record(CSV_HEADER)?;
            for row in &rows {
                w.write_record(row.record())?;
            }
            w.flush()?;
        }
    }
    Ok(rows.iter().all(|r| r.within_bound()))
}

fn run_word(a: &WordArgs) -> CliResult {
    let word = parse_word(&a.word)?;
    let power = word_total_exponent(&word)?;
    let r = usize::try_from(power)
        .map_err(|_| Failure::Usage(format!("word power {power} is too large")))?;
    if a.target.poly.is_none() && a.target.json.is_none() {
        print_json(&json!({ "word": a.word, "power": power }))?;
        return Ok(true);
    }
    let field = with_field(&a.target.field)?;
    if a.verify {
        return match field {
            FieldDescriptor::Rationals => verify_data(
                &family::<Rational>(&Rationals, &a.target, r)?,
                a.strategy,
                false,
            ),
            FieldDescriptor::Prime(p) => {
                verify_data(&family::<Fp>(&p, &a.target, r)?, a.strategy, false)
            }
        };
    }
    let construction = match field {
        FieldDescriptor::Rationals => construction_to_json(
            &family::<Rational>(&Rationals, &a.target, r)?.with_residual(a.strategy.into())?,
        ),
        FieldDescriptor::Prime(p) => {
            construction_to_json(&family::<Fp>(&p, &a.target, r)?.with_residual(a.strategy.into())?)
        }
    };
    print_json(&json!({ "word": a.word, "power": power, "construction": construction }))?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match &cli.command {
        Command::Construct(a) => run_construct(a),
        Command::Verify(a) => run_verify(a),
        Command::Approx(a) => run_approx(a),
        Command::Census(a) => run_census(a),
        Command::Word(a) => run_word(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

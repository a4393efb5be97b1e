use std::fs;
use std::io::{self, Read};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use trains::groups::{FiniteSupportOperator, GroupKind};
use trains::relations::{char_function, ProjectivePoint};
use trains::repharness::{spherical_phi, SphericalParams};
use trains::suites::{run_suite, Suite, SuiteConfig};
use trains::train::{coset_compose, coset_eq, coset_invariants, involution, DoubleCoset};
use trains::{Field, Matrix, Scalar};

#[derive(Parser)]
#[command(name = "trains", version, about = "Exact double-coset products, characteristic functions and verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Operations on double cosets given as JSON files ("-" reads stdin).
    #[command(subcommand)]
    Coset(CosetCmd),
    /// Run a seeded verification suite and print its report.
    Verify(VerifyArgs),
    /// Evaluate a spherical function on a real matrix.
    Spherical(SphericalArgs),
}

#[derive(Subcommand)]
enum CosetCmd {
    /// Product a . b.
    Mul { a: PathBuf, b: PathBuf },
    /// Decide equality of two cosets.
    Eq { a: PathBuf, b: PathBuf },
    /// The coset of the inverse representative.
    Inv { a: PathBuf },
    /// Characteristic function at one point.
    Chi {
        a: PathBuf,
        /// An integer, a fraction p/q, or "inf".
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
    },
    /// Corner blocks and sampled characteristic function.
    Invariants { a: PathBuf },
}

#[derive(Args)]
struct VerifyArgs {
    /// One of: compose, associativity, representative_independence,
    /// chi_multiplicativity, commutativity, centrality, ordered_category,
    /// mantle, repcat, theta_limit, spherical.
    suite: String,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Truncation dimension (repcat, theta_limit).
    #[arg(long)]
    n: Option<usize>,
    /// Tensor degree (repcat, theta_limit).
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    max_support: Option<usize>,
    #[arg(long)]
    max_height: Option<i64>,
}

#[derive(Args)]
struct SphericalArgs {
    /// Comma-separated decimal parameters s_1,...,s_p.
    #[arg(long, allow_hyphen_values = true, value_delimiter = ',')]
    s: Vec<String>,
    #[arg(long, default_value = "0", allow_hyphen_values = true)]
    a: String,
    #[arg(long, default_value_t = 0)]
    sigma: u8,
    /// Matrix as JSON: rows of numbers/strings, or {"field","rows","cols","entries"}.
    matrix: PathBuf,
}

#[derive(Debug)]
struct InputError(String);

impl<E: std::fmt::Display> From<E> for InputError {
    fn from(e: E) -> Self {
        InputError(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, InputError>;

fn read_input(path: &PathBuf) -> CliResult<String> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| InputError(format!("{}: {e}", path.display())))
    }
}

fn read_coset(path: &PathBuf) -> CliResult<DoubleCoset> {
    serde_json::from_str(&read_input(path)?).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn parse_lambda(s: &str) -> CliResult<ProjectivePoint> {
    if matches!(s.trim(), "inf" | "infinity" | "∞") {
        return Ok(ProjectivePoint::infinity());
    }
    Ok(ProjectivePoint::new(Scalar::parse(s, Field::Rat)?, Scalar::one(Field::Rat))?)
}

fn parse_matrix(text: &str) -> CliResult<Matrix> {
    let v: Value = serde_json::from_str(text)?;
    if v.is_object() {
        return Ok(serde_json::from_value(v)?);
    }
    let rows = v.as_array().ok_or_else(|| InputError("matrix must be an array of rows".into()))?;
    let rows = rows
        .iter()
        .map(|r| {
            r.as_array()
                .ok_or_else(|| InputError("each row must be an array".into()))?
                .iter()
                .map(|x| match x {
                    Value::String(s) => Ok(Scalar::parse(s, Field::Rat)?),
                    Value::Number(n) if n.is_i64() => Ok(Scalar::from_int(Field::Rat, n.as_i64().expect("i64"))),
                    other => Err(InputError(format!("entry {other} is not an integer or exact string"))),
                })
                .collect::<CliResult<Vec<_>>>()
        })
        .collect::<CliResult<Vec<_>>>()?;
    Ok(Matrix::from_rows(Field::Rat, rows)?)
}

fn coset_cmd(cmd: CosetCmd) -> CliResult<Value> {
    Ok(match cmd {
        CosetCmd::Mul { a, b } => serde_json::to_value(coset_compose(&read_coset(&a)?, &read_coset(&b)?)?)?,
        CosetCmd::Eq { a, b } => serde_json::to_value(coset_eq(&read_coset(&a)?, &read_coset(&b)?)?)?,
        CosetCmd::Inv { a } => serde_json::to_value(involution(&read_coset(&a)?)?)?,
        CosetCmd::Chi { a, lambda } => {
            let point = parse_lambda(&lambda)?;
            let rel = char_function(&read_coset(&a)?, &point)?;
            json!({ "lambda": lambda, "relations": rel })
        }
        CosetCmd::Invariants { a } => serde_json::to_value(coset_invariants(&read_coset(&a)?)?)?,
    })
}

fn spherical_cmd(args: SphericalArgs) -> CliResult<Value> {
    let num = |s: &str| s.trim().parse::<f64>().map_err(|e| InputError(format!("{s:?}: {e}")));
    let s = args.s.iter().filter(|x| !x.trim().is_empty()).map(|x| num(x)).collect::<CliResult<Vec<_>>>()?;
    let params = SphericalParams::new(s, num(&args.a)?, args.sigma)?;
    let m = parse_matrix(&read_input(&args.matrix)?)?;
    let g = FiniteSupportOperator::new(GroupKind::GlR, m).map_err(|e| InputError(format!("matrix: {e}")))?;
    let phi = spherical_phi(&params, &g)?;
    Ok(json!({ "re": phi.re, "im": phi.im }))
}

fn verify_cmd(args: VerifyArgs) -> CliResult<(Value, bool)> {
    let suite: Suite = args.suite.parse()?;
    let mut cfg = SuiteConfig::new(suite);
    cfg.seed = args.seed;
    cfg.n = args.n;
    cfg.d = args.d;
    if let Some(t) = args.trials {
        cfg.trials = t;
    }
    if let Some(s) = args.max_support {
        cfg.max_support = s;
    }
    if let Some(h) = args.max_height {
        cfg.max_height = h;
    }
    let report = run_suite(&cfg)?;
    Ok((serde_json::to_value(&report)?, report.pass))
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Coset(c) => coset_cmd(c).map(|v| (v, true)),
        Command::Verify(a) => verify_cmd(a),
        Command::Spherical(a) => spherical_cmd(a).map(|v| (v, true)),
    };
    match result {
        Ok((v, ok)) => {
            println!("{}", serde_json::to_string_pretty(&v).expect("serializable"));
            if ok { ExitCode::SUCCESS } else { ExitCode::from(1) }
        }
        Err(InputError(msg)) => {
            eprintln!("{}", json!({ "error": msg }));
            ExitCode::from(2)
        }
    }
}

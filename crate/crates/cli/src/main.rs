use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use engelkit::classify::{is_nilpotent, is_solvable, is_supersolvable};
use engelkit::engel::{family_report, HMode};
use engelkit::lattice::{
    codim_one_subalgebras, ideals, maximal_subalgebras, subalgebras, LatticeBudget,
};
use engelkit::liealg::{AlgebraFile, AnyAlgebra};
use engelkit::structure::{
    abelian_socle, center, derived_series, frattini, hypercentre, lower_central_series, phi,
};
use engelkit::verify::{run_suite, SuiteReport, Verdict};
use engelkit::zoo::{self, CorpusItem, Expected, LmGammaSpec};
use engelkit::{Error, Field, FiniteField, LieAlgebra, Rationals, Subspace};

mod render;

use render::{render, subspace_json};

#[derive(Parser)]
#[command(
    name = "engelkit",
    version,
    about = "Exact computations with small Lie algebras given by structure constants"
)]
struct Cli {
    #[command(flatten)]
    opts: Opts,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Opts {
    /// Upper bound on enumerated subspaces and swept elements.
    #[arg(long, global = true, env = "ENGELKIT_BUDGET", default_value_t = engelkit::exactmath::DEFAULT_BUDGET)]
    budget: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, ValueEnum)]
enum HModeArg {
    MaximalOnly,
    AllSubalgebras,
}

impl From<HModeArg> for HMode {
    fn from(m: HModeArg) -> Self {
        match m {
            HModeArg::MaximalOnly => HMode::MaximalOnly,
            HModeArg::AllSubalgebras => HMode::AllSubalgebras,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check antisymmetry and the Jacobi identity.
    Validate { path: PathBuf },
    /// Series, centres, Frattini data, family cores and predicates.
    Invariants {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = HModeArg::MaximalOnly)]
        h_mode: HModeArg,
    },
    /// Enumerate subalgebras (default), maximal subalgebras, ideals or hyperplane subalgebras.
    Lattice {
        path: PathBuf,
        #[arg(long, group = "kind")]
        maximal: bool,
        #[arg(long, group = "kind")]
        ideals: bool,
        #[arg(long, group = "kind")]
        codim1: bool,
    },
    /// The families G, T, H, D with evidence.
    Families {
        path: PathBuf,
        #[arg(long, value_enum, default_value_t = HModeArg::MaximalOnly)]
        h_mode: HModeArg,
    },
    /// Build a named algebra and write it as JSON.
    Zoo {
        /// sl2, l1, lm, abelian, heisenberg, affine, scalar-extension,
        /// jordan-extension, upper-triangular, rotation, filiform-4
        name: String,
        /// `p=5`, `q=4` or `rational`.
        #[arg(long, default_value = "p=5")]
        field: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
        /// Scalar such as `1`, or comma-separated coefficients for extension fields.
        #[arg(long)]
        gamma0: Option<String>,
        /// Comma-separated gamma_0, gamma_1, ... for `lm`.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        gamma: Vec<i64>,
        #[arg(long, default_value_t = 1)]
        dim: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run every checker over a corpus.
    Verify {
        /// `default` (GF(2), GF(3), GF(5) fixtures), an algebra file, or a directory of them.
        #[arg(long, default_value = "default")]
        corpus: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Process outcome: 0 success, 1 verification failure, 2 input error, 3 budget exceeded.
#[derive(Debug)]
enum Failure {
    Verification(String),
    Input(String),
    Budget(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::JacobiViolation { .. } | Error::AntisymmetryViolation { .. } => {
                Failure::Verification(e.to_string())
            }
            _ => Failure::Input(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, Failure>;

fn read_file(path: &Path) -> CliResult<AlgebraFile> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn load(path: &Path) -> CliResult<AnyAlgebra> {
    Ok(AnyAlgebra::from_file(&read_file(path)?, true)?)
}

fn emit(opts: &Opts, value: &Value, out: Option<&Path>) -> CliResult<()> {
    let text = match opts.format {
        Format::Json => serde_json::to_string_pretty(value).unwrap(),
        Format::Text => render(value),
    };
    match out {
        Some(p) => std::fs::write(p, text + "\n")
            .map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => {
            use std::io::Write;
            // a closed pipe (e.g. `| head`) is not an error
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            Ok(())
        }
    }
}

/// Evaluates `f`, mapping an infinite field to `null` so that partial reports
/// still print over the rationals.
fn finite_only<T>(
    f: impl FnOnce() -> engelkit::Result<T>,
    to_json: impl FnOnce(T) -> Value,
) -> CliResult<Value> {
    match f() {
        Ok(v) => Ok(to_json(v)),
        Err(Error::InfiniteField) => Ok(Value::Null),
        Err(e) => Err(e.into()),
    }
}

fn invariants<F: Field>(
    l: &LieAlgebra<F>,
    mode: HMode,
    budget: &LatticeBudget,
) -> CliResult<Value> {
    let series = |s: engelkit::structure::SeriesResult<F>| -> Value {
        json!({"dims": s.terms.iter().map(Subspace::dim).collect::<Vec<_>>(), "stabilized": s.stabilized})
    };
    let families = finite_only(
        || family_report(l, mode, budget),
        |r| {
            json!({
                "gamma": subspace_json(&r.gamma), "tau": subspace_json(&r.tau),
                "eta": subspace_json(&r.eta), "delta": subspace_json(&r.delta),
                "h_mode": r.h_mode,
            })
        },
    )?;
    Ok(json!({
        "field": l.field().spec().to_string(),
        "dim": l.dim(),
        "derived_series": series(derived_series(l)),
        "lower_central_series": series(lower_central_series(l)),
        "center": subspace_json(&center(l)),
        "hypercentre": subspace_json(&hypercentre(l)),
        "frattini": finite_only(|| frattini(l, budget), |s| subspace_json(&s))?,
        "phi": finite_only(|| phi(l, budget), |s| subspace_json(&s))?,
        "abelian_socle": finite_only(|| abelian_socle(l, budget), |s| subspace_json(&s))?,
        "cores": families,
        "nilpotent": is_nilpotent(l),
        "solvable": is_solvable(l),
        "supersolvable": finite_only(|| is_supersolvable(l, budget), |c| json!(c.is_some()))?,
    }))
}

#[derive(Clone, Copy)]
enum LatticeKind {
    All,
    Maximal,
    Ideals,
    Codim1,
}

fn lattice<F: Field>(
    l: &LieAlgebra<F>,
    kind: LatticeKind,
    budget: &LatticeBudget,
) -> CliResult<Value> {
    let (name, list) = match kind {
        LatticeKind::All => ("subalgebras", subalgebras(l, budget)?),
        LatticeKind::Maximal => ("maximal_subalgebras", maximal_subalgebras(l, budget)?),
        LatticeKind::Ideals => ("ideals", ideals(l, budget)?),
        LatticeKind::Codim1 => ("codim_one_subalgebras", codim_one_subalgebras(l, budget)?),
    };
    Ok(json!({
        "kind": name,
        "count": list.len(),
        "subspaces": list.iter().map(subspace_json).collect::<Vec<_>>(),
    }))
}

fn families<F: Field>(l: &LieAlgebra<F>, mode: HMode, budget: &LatticeBudget) -> CliResult<Value> {
    Ok(family_report(l, mode, budget)?.to_json())
}

macro_rules! dispatch {
    ($alg:expr, $l:ident => $body:expr) => {
        match $alg {
            AnyAlgebra::Finite($l) => $body,
            AnyAlgebra::Rational($l) => $body,
        }
    };
}

enum ParsedField {
    Finite(FiniteField),
    Rational,
}

fn parse_field(s: &str) -> CliResult<ParsedField> {
    let s = s.trim();
    if s.eq_ignore_ascii_case("rational") || s == "Q" {
        return Ok(ParsedField::Rational);
    }
    let bad = || {
        Failure::Input(format!(
            "unrecognised field {s:?}; use p=5, q=4 or rational"
        ))
    };
    let (key, value) = s.split_once('=').unwrap_or(("p", s));
    let n: u64 = value.parse().map_err(|_| bad())?;
    match key {
        "p" => Ok(ParsedField::Finite(FiniteField::prime(n)?)),
        "q" => {
            let p = (2..=n).find(|d| n % d == 0).ok_or_else(bad)?;
            let (mut rest, mut k) = (n, 0u32);
            while rest % p == 0 {
                rest /= p;
                k += 1;
            }
            if rest != 1 {
                return Err(Failure::Input(format!("{n} is not a prime power")));
            }
            Ok(ParsedField::Finite(FiniteField::galois(p, k)?))
        }
        _ => Err(bad()),
    }
}

fn parse_scalar<F: Field>(field: &F, s: &str) -> CliResult<F::Elem> {
    let repr = if s.contains(',') {
        let coeffs = s
            .split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Failure::Input(format!("bad scalar {s:?}: {e}")))?;
        engelkit::exactmath::ScalarRepr::Coeffs(coeffs)
    } else {
        match s.trim().parse::<i64>() {
            Ok(v) => engelkit::exactmath::ScalarRepr::Int(v),
            Err(_) => engelkit::exactmath::ScalarRepr::Text(s.trim().to_string()),
        }
    };
    Ok(field.decode(&repr)?)
}

struct ZooArgs<'a> {
    name: &'a str,
    m: usize,
    gamma0: Option<&'a str>,
    gamma: &'a [i64],
    dim: usize,
}

fn build_zoo<F: Field>(field: &F, a: &ZooArgs) -> CliResult<LieAlgebra<F>> {
    let finite = |name: &str| -> CliResult<()> {
        if field.is_finite() {
            Ok(())
        } else {
            Err(Failure::Input(format!("{name} needs a finite field")))
        }
    };
    Ok(match a.name {
        "sl2" => zoo::make_sl2(field),
        "l1" => {
            let g0 = match a.gamma0 {
                Some(s) => parse_scalar(field, s)?,
                None => field.zero(),
            };
            zoo::make_l1(field, &g0)
        }
        "lm" => {
            let mut gamma: Vec<F::Elem> = a.gamma.iter().map(|&g| field.from_int(g)).collect();
            if let Some(s) = a.gamma0 {
                if gamma.is_empty() {
                    gamma.push(field.zero());
                }
                gamma[0] = parse_scalar(field, s)?;
            }
            if gamma.len() > a.m + 1 {
                return Err(Failure::Input(format!(
                    "at most {} gamma entries for m = {}",
                    a.m + 1,
                    a.m
                )));
            }
            zoo::make_lm(&LmGammaSpec::new(field, a.m, &gamma))?
        }
        "abelian" => zoo::abelian(field, a.dim),
        "heisenberg" => zoo::heisenberg(field),
        "affine" => zoo::affine(field),
        "scalar-extension" => zoo::scalar_extension(field),
        "jordan-extension" => zoo::jordan_extension(field),
        "upper-triangular" => zoo::upper_triangular(field),
        "filiform-4" => zoo::filiform4(field),
        "rotation" => {
            finite("rotation")?;
            zoo::rotation(field)
        }
        other => return Err(Failure::Input(format!("unknown algebra {other:?}"))),
    })
}

fn file_items(path: &Path) -> CliResult<Vec<(String, AnyAlgebra)>> {
    let mut files = Vec::new();
    if path.is_dir() {
        let entries = std::fs::read_dir(path)
            .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        for entry in entries {
            let p = entry.map_err(|e| Failure::Input(e.to_string()))?.path();
            if p.extension().is_some_and(|x| x == "json") {
                files.push(p);
            }
        }
        files.sort();
    } else {
        files.push(path.to_path_buf());
    }
    files
        .iter()
        .map(|p| {
            let name = p
                .file_stem()
                .unwrap_or_default()
                .to_string_lossy()
                .into_owned();
            // unvalidated, so the suite can report broken constants
            Ok((name, AnyAlgebra::from_file(&read_file(p)?, false)?))
        })
        .collect()
}

fn plain_item<F: Field>(name: String, algebra: LieAlgebra<F>) -> CorpusItem<F> {
    CorpusItem {
        name,
        algebra,
        expected: Expected::default(),
        lm: None,
        exposed: Vec::new(),
    }
}

fn verify(corpus: &str, budget: &LatticeBudget) -> CliResult<SuiteReport> {
    let mut report = SuiteReport::default();
    if corpus == "default" {
        for p in [2, 3, 5] {
            let items = zoo::corpus(&FiniteField::prime(p)?)?;
            report.extend(run_suite(&items, budget)?);
        }
        return Ok(report);
    }
    // group by field so each suite run is over a single scalar type
    let mut finite: Vec<(FiniteField, Vec<CorpusItem<FiniteField>>)> = Vec::new();
    let mut rational: Vec<CorpusItem<Rationals>> = Vec::new();
    for (name, alg) in file_items(Path::new(corpus))? {
        match alg {
            AnyAlgebra::Finite(l) => {
                let f = l.field().clone();
                let item = plain_item(name, l);
                match finite.iter_mut().find(|(g, _)| *g == f) {
                    Some((_, v)) => v.push(item),
                    None => finite.push((f, vec![item])),
                }
            }
            AnyAlgebra::Rational(l) => rational.push(plain_item(name, l)),
        }
    }
    for (_, items) in finite {
        report.extend(run_suite(&items, budget)?);
    }
    report.extend(run_suite(&rational, budget)?);
    Ok(report)
}

fn run(cli: Cli) -> CliResult<()> {
    let opts = cli.opts;
    let budget = LatticeBudget::uniform(opts.budget);
    match cli.command {
        Command::Validate { path } => {
            let file = read_file(&path)?;
            let field = file.field.to_string();
            let (verdict, witness) = match AnyAlgebra::from_file(&file, true) {
                Ok(_) => (None, Value::Null),
                Err(e @ Error::JacobiViolation { i, j, k }) => (Some(e), json!([i, j, k])),
                Err(e @ Error::AntisymmetryViolation { i, j }) => (Some(e), json!([i, j])),
                Err(e) => return Err(e.into()),
            };
            let v = json!({
                "valid": verdict.is_none(),
                "dim": file.dim,
                "field": field,
                "witness": witness,
                "message": verdict.as_ref().map(|e| e.to_string()),
            });
            emit(&opts, &v, None)?;
            match verdict {
                Some(e) => Err(e.into()),
                None => Ok(()),
            }
        }
        Command::Invariants { path, h_mode } => {
            let v = dispatch!(load(&path)?, l => invariants(&l, h_mode.into(), &budget)?);
            emit(&opts, &v, None)
        }
        Command::Lattice {
            path,
            maximal,
            ideals,
            codim1,
        } => {
            let kind = match (maximal, ideals, codim1) {
                (true, _, _) => LatticeKind::Maximal,
                (_, true, _) => LatticeKind::Ideals,
                (_, _, true) => LatticeKind::Codim1,
                _ => LatticeKind::All,
            };
            let v = dispatch!(load(&path)?, l => lattice(&l, kind, &budget)?);
            emit(&opts, &v, None)
        }
        Command::Families { path, h_mode } => {
            let v = dispatch!(load(&path)?, l => families(&l, h_mode.into(), &budget)?);
            emit(&opts, &v, None)
        }
        Command::Zoo {
            name,
            field,
            m,
            gamma0,
            gamma,
            dim,
            out,
        } => {
            let args = ZooArgs {
                name: &name,
                m,
                gamma0: gamma0.as_deref(),
                gamma: &gamma,
                dim,
            };
            let file = match parse_field(&field)? {
                ParsedField::Finite(f) => build_zoo(&f, &args)?.to_file(),
                ParsedField::Rational => build_zoo(&Rationals, &args)?.to_file(),
            };
            let v = serde_json::to_value(&file).unwrap();
            // algebra files are always JSON
            let json_opts = Opts {
                format: Format::Json,
                ..opts
            };
            emit(&json_opts, &v, out.as_deref())
        }
        Command::Verify { corpus, out } => {
            let report = verify(&corpus, &budget)?;
            let budget_skips = report
                .reports
                .iter()
                .filter(|r| {
                    r.verdict == Verdict::Skipped
                        && r.payload["reason"]
                            .as_str()
                            .is_some_and(|s| s.contains("budget"))
                })
                .count();
            if budget_skips > 0 {
                eprintln!(
                    "warning: {budget_skips} checks skipped for exceeding the budget of {}",
                    opts.budget
                );
            }
            emit(
                &opts,
                &serde_json::to_value(&report).unwrap(),
                out.as_deref(),
            )?;
            if report.has_failures() {
                return Err(Failure::Verification(format!(
                    "{} checks failed",
                    report.summary.fail
                )));
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(1)
        }
        Err(Failure::Input(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Budget(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(3)
        }
    }
}

//! Batch front end: loads fixture directories, runs checks and writes
//! `report.v1` JSON. Exit codes: 0 all checks pass, 1 input error, 2 a
//! check failed, 3 inconclusive within a truncation.

mod finite;
mod truncated;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use hopfstar::corpus::{build_fixture, load_fixture, Fixture};
use hopfstar::report::{Entry, Outcome, Report};
use hopfstar::Error;

#[derive(Parser, Debug, Clone)]
#[command(name = "hopfstar", version, about = "Checks on finite and truncated Hopf *-algebras")]
pub struct Cli {
    #[command(flatten)]
    pub opts: Options,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Options {
    /// Override the tolerance stored in the fixture.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Degree for presented fixtures (default 4).
    #[arg(long, global = true)]
    pub cutoff: Option<usize>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Run on every coideal of the fixture (the default without --coideal).
    #[arg(long, global = true)]
    pub all_coideals: bool,
    /// Run on one named coideal.
    #[arg(long, global = true)]
    pub coideal: Option<String>,
}

#[derive(Subcommand, Debug, Clone)]
pub enum Command {
    /// Hopf *-algebra laws (or rewriting laws) and coideal conditions.
    Verify { input: PathBuf },
    Haar { input: PathBuf },
    Peterweyl { input: PathBuf },
    /// Smallest coideal *-subalgebra containing the given elements.
    CoidealClose {
        input: PathBuf,
        /// An element as `label` or `c*label` terms joined by `+`; repeatable.
        #[arg(long = "gen", required = true)]
        gens: Vec<String>,
        /// Store the result under `coideals/<name>.json`.
        #[arg(long)]
        save: Option<String>,
    },
    Quotient { input: PathBuf },
    Invariants { input: PathBuf },
    Galois { input: PathBuf },
    Expectation { input: PathBuf },
    Positivity { input: PathBuf },
    DecideExpected {
        input: PathBuf,
        /// Raise the degree by 2 (up to 8) while the verdict is inconclusive.
        #[arg(long)]
        escalate: bool,
    },
    Fourier { input: PathBuf },
    Plancherel {
        input: PathBuf,
        #[arg(long, default_value_t = 20)]
        pairs: usize,
    },
    Cotensor { input: PathBuf },
    Adjunction { input: PathBuf },
    Flatness { input: PathBuf },
    Corpus {
        #[command(subcommand)]
        action: CorpusAction,
    },
}

#[derive(Subcommand, Debug, Clone)]
pub enum CorpusAction {
    /// Build, verify and write a fixture (default directory `corpus/<name>`).
    Build {
        name: String,
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Verify { .. } => "verify",
            Command::Haar { .. } => "haar",
            Command::Peterweyl { .. } => "peterweyl",
            Command::CoidealClose { .. } => "coideal-close",
            Command::Quotient { .. } => "quotient",
            Command::Invariants { .. } => "invariants",
            Command::Galois { .. } => "galois",
            Command::Expectation { .. } => "expectation",
            Command::Positivity { .. } => "positivity",
            Command::DecideExpected { .. } => "decide-expected",
            Command::Fourier { .. } => "fourier",
            Command::Plancherel { .. } => "plancherel",
            Command::Cotensor { .. } => "cotensor",
            Command::Adjunction { .. } => "adjunction",
            Command::Flatness { .. } => "flatness",
            Command::Corpus { .. } => "corpus-build",
        }
    }

    fn input(&self) -> Option<&PathBuf> {
        match self {
            Command::Verify { input }
            | Command::Haar { input }
            | Command::Peterweyl { input }
            | Command::CoidealClose { input, .. }
            | Command::Quotient { input }
            | Command::Invariants { input }
            | Command::Galois { input }
            | Command::Expectation { input }
            | Command::Positivity { input }
            | Command::DecideExpected { input, .. }
            | Command::Fourier { input }
            | Command::Plancherel { input, .. }
            | Command::Cotensor { input }
            | Command::Adjunction { input }
            | Command::Flatness { input } => Some(input),
            Command::Corpus { .. } => None,
        }
    }
}

/// Result of one invocation.
#[derive(Debug)]
pub struct RunOutput {
    pub report: Option<Report>,
    pub exit_code: i32,
    pub diagnostic: Option<String>,
}

/// Errors that mean the input itself is unusable.
pub(crate) fn is_input_error(e: &Error) -> bool {
    matches!(
        e,
        Error::InvalidInput(_)
            | Error::DimensionError { .. }
            | Error::Io { .. }
            | Error::Json { .. }
            | Error::CutoffExceeded { .. }
            | Error::NotConfluent(_)
            | Error::NotCoideal { .. }
    )
}

/// Attach the coideal name; turn non-input errors into failing entries
/// (or a passing "not applicable" entry).
pub(crate) fn guard(check: &str, coideal: Option<&str>, r: hopfstar::Result<Entry>) -> hopfstar::Result<Entry> {
    let entry = match r {
        Ok(e) => e,
        Err(Error::NotApplicable(msg)) => Entry::new(check).detail("not_applicable", msg),
        Err(e) if is_input_error(&e) => return Err(e),
        Err(e) => {
            let mut entry = Entry::new(check).detail("error", e.to_string());
            entry.fail();
            entry
        }
    };
    Ok(match coideal {
        Some(name) => entry.detail("coideal", name),
        None => entry,
    })
}

fn exit_code(status: Outcome) -> i32 {
    match status {
        Outcome::Pass => 0,
        Outcome::Fail => 2,
        Outcome::Inconclusive => 3,
    }
}

fn timestamp() -> String {
    let secs = std::time::SystemTime::now()
        .duration_since(std::time::UNIX_EPOCH)
        .map(|d| d.as_secs())
        .unwrap_or(0);
    format!("unix:{secs}")
}

fn execute(cli: &Cli) -> hopfstar::Result<Report> {
    let opts = &cli.opts;
    if let Some(t) = opts.tol {
        if !(t > 0.0) {
            return Err(Error::InvalidInput("--tol must be positive".into()));
        }
    }
    if let Command::Corpus {
        action: CorpusAction::Build { name, dir },
    } = &cli.command
    {
        let dir = dir
            .clone()
            .unwrap_or_else(|| PathBuf::from("corpus").join(name));
        let manifest = build_fixture(name, &dir)?;
        let mut report = Report::new("corpus-build", name, opts.tol.unwrap_or(0.0), opts.seed);
        report.push(
            Entry::new("corpus_build")
                .detail("dir", dir.display().to_string())
                .detail("builder_version", &manifest.builder_version)
                .detail("kind", &manifest.kind)
                .detail("checksums", &manifest.checksums)
                .detail("expected", &manifest.expected),
        );
        return Ok(report);
    }
    let input = cli.command.input().expect("every other command has an input");
    let fixture = load_fixture(input, opts.tol)?;
    match fixture {
        Fixture::Finite { hopf, coideals, .. } => {
            let mut report = Report::new(
                cli.command.name(),
                &input.display().to_string(),
                hopf.tol(),
                opts.seed,
            );
            let selected = select(coideals, opts)?;
            report.extend(finite::run(&cli.command, &hopf, &selected, input, opts)?);
            Ok(report)
        }
        Fixture::Presented {
            presented,
            coideals,
            ..
        } => {
            let mut report = Report::new(
                cli.command.name(),
                &input.display().to_string(),
                presented.tol,
                opts.seed,
            );
            let selected = select(coideals, opts)?;
            report.extend(truncated::run(&cli.command, &presented, &selected, opts)?);
            Ok(report)
        }
    }
}

fn select<T>(coideals: Vec<(String, T)>, opts: &Options) -> hopfstar::Result<Vec<(String, T)>> {
    match &opts.coideal {
        None => Ok(coideals),
        Some(name) => {
            let names: Vec<String> = coideals.iter().map(|(n, _)| n.clone()).collect();
            let picked: Vec<(String, T)> = coideals.into_iter().filter(|(n, _)| n == name).collect();
            if picked.is_empty() {
                Err(Error::InvalidInput(format!(
                    "no coideal named `{name}`; available: {}",
                    names.join(", ")
                )))
            } else {
                Ok(picked)
            }
        }
    }
}

/// Run a parsed command line. The report is also written to `--out` or
/// stdout by [`main_with`].
pub fn run(cli: &Cli) -> RunOutput {
    match execute(cli) {
        Ok(mut report) => {
            report.timestamp = timestamp();
            RunOutput {
                exit_code: exit_code(report.status),
                report: Some(report),
                diagnostic: None,
            }
        }
        Err(e) => RunOutput {
            report: None,
            exit_code: if is_input_error(&e) { 1 } else { 2 },
            diagnostic: Some(e.to_string()),
        },
    }
}

/// Parse, run, emit the report and return the exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let out = run(&cli);
    if let Some(d) = &out.diagnostic {
        eprintln!("error: {d}");
    }
    if let Some(report) = &out.report {
        let json = report.to_json();
        match &cli.opts.out {
            Some(path) => {
                if let Err(e) = std::fs::write(path, json + "\n") {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return 1;
                }
            }
            None => println!("{json}"),
        }
        let failed = report.entries.iter().filter(|e| !e.pass).count();
        eprintln!(
            "{}: {} entries, {} not passing, status {:?}",
            report.command,
            report.entries.len(),
            failed,
            report.status
        );
    }
    out.exit_code
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn guard_sorts_errors() {
        let na = guard("c", Some("x"), Err(Error::NotApplicable("no".into()))).unwrap();
        assert!(na.pass);
        assert_eq!(na.details["coideal"], "x");
        let failed = guard("c", None, Err(Error::NotCqg("bad".into()))).unwrap();
        assert!(!failed.pass);
        assert!(guard("c", None, Err(Error::InvalidInput("bad".into()))).is_err());
    }

    #[test]
    fn selection_names_the_alternatives() {
        let opts = Options {
            tol: None,
            seed: 0,
            cutoff: None,
            out: None,
            all_coideals: false,
            coideal: Some("b".into()),
        };
        let picked = select(vec![("a".to_string(), 1), ("b".to_string(), 2)], &opts).unwrap();
        assert_eq!(picked, vec![("b".to_string(), 2)]);
        let opts = Options { coideal: Some("z".into()), ..opts };
        let err = select(vec![("a".to_string(), 1)], &opts).unwrap_err();
        assert!(err.to_string().contains("available: a"));
    }

    #[test]
    fn exit_codes_follow_the_status() {
        assert_eq!(exit_code(Outcome::Pass), 0);
        assert_eq!(exit_code(Outcome::Fail), 2);
        assert_eq!(exit_code(Outcome::Inconclusive), 3);
    }
}

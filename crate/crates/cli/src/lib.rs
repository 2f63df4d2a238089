//! Command-line front end for `morphic`.
//!
//! Exit codes: 0 success, 1 verification failed, 2 input or parse error,
//! 3 search bound exhausted or input refused as likely periodic.

pub mod specfile;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use morphic::{
    bounded_period_check, catalog, nonuniformize, runs_between_zeros, verify_minimal_alphabet,
    verify_prefix_equal, Error, MorphicPresentation, MortalSet, Options, Symbol, Word,
};
use thiserror::Error;

pub use specfile::{emit_result, emit_spec, parse_spec, SpecError};

#[derive(Debug, Parser)]
#[command(
    name = "morphic",
    version,
    about = "Morphisms, fixed points and non-uniform presentations"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the first N letters of the presented sequence.
    Generate {
        spec: PathBuf,
        #[arg(short = 'n', long = "length")]
        n: usize,
        /// Print letters without separators (single-character names only).
        #[arg(long)]
        compact: bool,
    },
    /// Re-present the sequence through a non-uniform morphism.
    Transform {
        spec: PathBuf,
        /// Write the resulting spec here instead of stdout.
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
        /// Skip the ultimate-periodicity guard.
        #[arg(long)]
        assert_aperiodic: bool,
        /// Largest exponent tried in the expanding-letter search.
        #[arg(long, default_value_t = 64)]
        bound: usize,
    },
    /// Compare the first N letters of two presentations.
    Verify {
        spec_a: PathBuf,
        spec_b: PathBuf,
        #[arg(short = 'n', long = "length")]
        n: usize,
    },
    /// Describe a morphism: arity, occurring letters, expanding letters,
    /// incidence matrix.
    Analyze {
        spec: PathBuf,
        #[arg(long, default_value_t = 64)]
        bound: usize,
    },
    /// Lengths of the runs of ONE between consecutive ZEROs in the first N
    /// letters.
    Runs {
        spec: PathBuf,
        #[arg(long)]
        zero: String,
        #[arg(long)]
        one: String,
        #[arg(short = 'n', long = "length")]
        n: usize,
    },
    /// List the built-in presentations, or print one as a spec.
    Catalog { name: Option<String> },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Spec { path: PathBuf, source: SpecError },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: io::Error },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Library(#[from] Error),
    #[error("verification failed")]
    VerificationFailed,
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::VerificationFailed => 1,
            CliError::Library(Error::NotFound { .. } | Error::LikelyPeriodic(_)) => 3,
            _ => 2,
        }
    }
}

fn load(path: &Path) -> Result<MorphicPresentation, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    parse_spec(&text).map_err(|source| CliError::Spec {
        path: path.to_owned(),
        source,
    })
}

fn symbol(name: &str) -> Result<Symbol, CliError> {
    Symbol::new(name).map_err(|e| CliError::Usage(e.to_string()))
}

fn render(word: &Word, compact: bool) -> Result<String, CliError> {
    if compact {
        word.to_compact().ok_or_else(|| {
            CliError::Usage("--compact needs single-character symbol names".to_string())
        })
    } else {
        Ok(word.to_string())
    }
}

fn io_err(e: io::Error) -> CliError {
    CliError::Io {
        path: PathBuf::from("<stdout>"),
        source: e,
    }
}

pub fn execute(command: Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Generate { spec, n, compact } => {
            let p = load(&spec)?;
            writeln!(out, "{}", render(&p.prefix(n), compact)?).map_err(io_err)?;
        }
        Command::Transform {
            spec,
            output,
            assert_aperiodic,
            bound,
        } => {
            let p = load(&spec)?;
            let mut options = Options {
                expand_bound: bound,
                ..Options::default()
            };
            if assert_aperiodic {
                options.guard = None;
            }
            let result = nonuniformize(&p, &options)?;
            let input_letters = p.morphism().domain().len();
            let text = emit_result(&result, input_letters)?;
            match output {
                Some(path) => {
                    std::fs::write(&path, &text).map_err(|source| CliError::Io {
                        path: path.clone(),
                        source,
                    })?;
                    for line in specfile::trace_lines(&result, input_letters) {
                        writeln!(out, "{line}").map_err(io_err)?;
                    }
                }
                None => out.write_all(text.as_bytes()).map_err(io_err)?,
            }
        }
        Command::Verify { spec_a, spec_b, n } => {
            let a = load(&spec_a)?;
            let b = load(&spec_b)?;
            let report = verify_prefix_equal(&a, &b, n);
            writeln!(out, "{report}").map_err(io_err)?;
            if !report.overall() {
                return Err(CliError::VerificationFailed);
            }
        }
        Command::Analyze { spec, bound } => {
            let p = load(&spec)?;
            out.write_all(analyze(&p, bound)?.as_bytes())
                .map_err(io_err)?;
        }
        Command::Runs { spec, zero, one, n } => {
            let p = load(&spec)?;
            let runs = runs_between_zeros(&p.prefix(n), symbol(&zero)?, symbol(&one)?)
                .map_err(|e| CliError::Usage(e.to_string()))?;
            let line: Vec<String> = runs.iter().map(usize::to_string).collect();
            writeln!(out, "{}", line.join(" ")).map_err(io_err)?;
        }
        Command::Catalog { name: None } => {
            for entry in catalog::entries() {
                writeln!(out, "{}: {}", entry.name, entry.notes).map_err(io_err)?;
            }
        }
        Command::Catalog { name: Some(name) } => {
            let entry = catalog::get(&name)?;
            writeln!(out, "# {}", entry.notes).map_err(io_err)?;
            out.write_all(emit_spec(&entry.presentation).as_bytes())
                .map_err(io_err)?;
        }
    }
    Ok(())
}

fn analyze(p: &MorphicPresentation, bound: usize) -> Result<String, CliError> {
    let m = p.morphism();
    let mut text = String::new();
    let arity = m
        .uniform_arity()
        .map_or("non-uniform".to_string(), |k| format!("{k}-uniform"));
    writeln!(text, "arity: {arity}").unwrap();
    writeln!(text, "prolongable from {}: yes", p.start()).unwrap();
    let occurring = m.occurring_letters(p.start())?;
    writeln!(text, "occurring letters: {occurring}").unwrap();
    let minimal = verify_minimal_alphabet(m, p.start())?;
    match &minimal.checks[0].witness {
        None => writeln!(text, "minimal alphabet: yes").unwrap(),
        Some(w) => writeln!(text, "minimal alphabet: no, never occurring: {w}").unwrap(),
    }
    let mortal = MortalSet::of(m);
    let mortal: Vec<_> = mortal.symbols().iter().map(|s| s.name()).collect();
    let mortal = if mortal.is_empty() {
        "none".to_string()
    } else {
        mortal.join(" ")
    };
    writeln!(text, "mortal letters: {mortal}").unwrap();

    let base = m.incidence_matrix()?;
    let mut power = base.clone();
    let mut first_expansion: Vec<Option<usize>> = vec![None; occurring.len()];
    for exponent in 1..=bound {
        for (slot, s) in first_expansion.iter_mut().zip(occurring.iter()) {
            if slot.is_none() && power.entry(s, s).is_some_and(|c| c >= 2) {
                *slot = Some(exponent);
            }
        }
        if first_expansion.iter().all(Option::is_some) {
            break;
        }
        power = power.saturating_mul(&base);
    }
    let expanding: Vec<String> = occurring
        .iter()
        .zip(&first_expansion)
        .filter_map(|(s, e)| e.map(|e| format!("{s} (exponent {e})")))
        .collect();
    writeln!(
        text,
        "expanding letters up to exponent {bound}: {}",
        if expanding.is_empty() {
            "none".to_string()
        } else {
            expanding.join(", ")
        }
    )
    .unwrap();

    writeln!(
        text,
        "incidence matrix (entry row,col = occurrences of row in image of col):"
    )
    .unwrap();
    writeln!(text, "  columns: {}", base.symbols()).unwrap();
    for (s, row) in base.symbols().iter().zip(base.rows()) {
        let cells: Vec<String> = row.iter().map(u64::to_string).collect();
        writeln!(text, "  {s}: {}", cells.join(" ")).unwrap();
    }

    let guard = morphic::PeriodGuard::default();
    match bounded_period_check(
        &p.prefix(guard.prefix_len),
        guard.max_preperiod,
        guard.max_period,
    ) {
        None => writeln!(
            text,
            "periodicity: no period found in the first {} letters",
            guard.prefix_len
        )
        .unwrap(),
        Some(form) => writeln!(
            text,
            "periodicity: first {} letters are consistent with preperiod [{}] and period [{}]",
            guard.prefix_len, form.preperiod, form.period
        )
        .unwrap(),
    }
    Ok(text)
}

/// Parses arguments, runs the command, reports errors on stderr, and
/// returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match execute(cli.command, &mut out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = out.flush();
            if !matches!(e, CliError::VerificationFailed) {
                eprintln!("error: {e}");
            }
            e.exit_code()
        }
    }
}

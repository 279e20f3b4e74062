//! `rchi`: command-line front end for the R-group and Whittaker engine.
//!
//! Reads one problem document (JSON or TOML), runs a computation and prints a
//! versioned JSON report. Exit codes: 0 on success, 1 for usage, parse and
//! budget errors, 2 for mathematical domain errors.

pub mod error;
pub mod report;
pub mod spec;
pub mod sweep;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rchi_core::{rgroup, whitrank, whittaker_dims, Error as CoreError};
use serde_json::{json, Value};

pub use error::{CliError, CliResult};
pub use spec::ProblemSpec;

#[derive(Parser, Debug)]
#[command(name = "rchi", version, about = "R-groups, scattering matrices and Whittaker dimensions of covering groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: GlobalOpts,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalOpts {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Emit::Json)]
    pub emit: Emit,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Override the cover's epsilon.
    #[arg(long, global = true, allow_hyphen_values = true)]
    pub epsilon: Option<i8>,
    /// Accept results decided by numeric specialization.
    #[arg(long, global = true)]
    pub numeric_fallback: bool,
    /// Comma-separated values of q used for numeric specialization.
    #[arg(long, global = true, value_delimiter = ',')]
    pub q0: Option<Vec<f64>>,
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Work budget for sweeps, in units of |X_Qn| per character.
    #[arg(long, global = true)]
    pub budget: Option<u64>,
    /// Add wall-clock timing to the report.
    #[arg(long, global = true)]
    pub timing: bool,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Emit {
    Json,
    Md,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Cover invariants and the basis of Y_Qn used for character values.
    Info { input: Option<PathBuf> },
    /// R-group of the character.
    Rgroup { input: Option<PathBuf> },
    /// Whittaker dimensions per irreducible and per orbit.
    Dims { input: Option<PathBuf> },
    /// Compare sigma^Wh with sigma^X on every orbit.
    Check { input: Option<PathBuf> },
    /// Ranks of the Whittaker evaluation matrices.
    Whitrank { input: Option<PathBuf> },
    /// Enumerate characters of order up to a bound and emit JSON lines.
    Sweep {
        input: Option<PathBuf>,
        #[arg(long, default_value_t = 24)]
        max_order: u32,
        /// Only emit characters with nontrivial R-group.
        #[arg(long)]
        reducible_only: bool,
        /// Append-only result cache.
        #[arg(long)]
        cache: Option<PathBuf>,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Info { .. } => "info",
            Command::Rgroup { .. } => "rgroup",
            Command::Dims { .. } => "dims",
            Command::Check { .. } => "check",
            Command::Whitrank { .. } => "whitrank",
            Command::Sweep { .. } => "sweep",
        }
    }

    fn input(&self) -> Option<&PathBuf> {
        match self {
            Command::Info { input }
            | Command::Rgroup { input }
            | Command::Dims { input }
            | Command::Check { input }
            | Command::Whitrank { input }
            | Command::Sweep { input, .. } => input.as_ref(),
        }
    }
}

/// Folds command-line overrides into the spec so the echoed spec is complete.
fn apply_flags(spec: &mut ProblemSpec, g: &GlobalOpts) -> CliResult<()> {
    if let Some(e) = g.epsilon {
        spec.cover.epsilon = e;
    }
    if g.numeric_fallback {
        spec.options.numeric_fallback = true;
    }
    if let Some(q) = &g.q0 {
        spec.options.q0 = Some(q.clone());
    }
    if let Some(s) = g.seed {
        spec.options.seed = Some(s);
    }
    spec.validate()
}

fn undecided(what: &str) -> CliError {
    CliError::Core(CoreError::Undecided(format!("{what} needed numeric specialization; rerun with --numeric-fallback")))
}

/// Builds the JSON report for every command except `sweep`.
pub fn report(cmd: &Command, spec: &ProblemSpec) -> CliResult<Value> {
    let cover = spec.cover()?;
    let mut out = json!({
        "schema": spec::SCHEMA,
        "command": cmd.name(),
        "spec": spec,
        "cover": report::cover_json(&cover),
    });
    let obj = out.as_object_mut().expect("object");
    if matches!(cmd, Command::Info { .. }) {
        return Ok(out);
    }
    let chi = spec.character(&cover)?;
    obj.insert("character".into(), report::character_json(&chi));
    let opts = spec.numeric();
    match cmd {
        Command::Rgroup { .. } => {
            obj.insert("rgroup".into(), report::rgroup_json(&chi, &rgroup(&chi)?));
        }
        Command::Dims { .. } | Command::Check { .. } => {
            let rep = whittaker_dims(&chi, &opts)?;
            let numeric = rep.orbits.iter().any(|o| !o.exact || !matches!(o.verdict.as_str(), "holds" | "fails"));
            if numeric && !spec.options.numeric_fallback {
                return Err(undecided("a multiplicity or verdict"));
            }
            let full = matches!(cmd, Command::Check { .. });
            obj.insert("rgroup".into(), report::rgroup_json(&chi, &rep.rgroup));
            obj.insert("orbits".into(), json!(report::orbits_json(&rep, full)));
            obj.insert("dims".into(), report::dims_json(&rep));
            if full {
                obj.insert("mconj2_holds".into(), json!(rep.orbits.iter().all(|o| o.verdict.holds())));
            }
        }
        Command::Whitrank { .. } => {
            let ms = whitrank(&chi, &opts)?;
            if !spec.options.numeric_fallback && ms.iter().any(|m| m.provenance.as_str() != "symbolic") {
                return Err(undecided("a rank"));
            }
            let rg = rgroup(&chi)?;
            obj.insert("rgroup".into(), report::rgroup_json(&chi, &rg));
            obj.insert("orbits".into(), json!(report::whitrank_json(&ms)));
            obj.insert("total_rank".into(), json!(ms.iter().map(|m| m.rank).sum::<usize>()));
        }
        Command::Info { .. } | Command::Sweep { .. } => unreachable!("handled by the caller"),
    }
    Ok(out)
}

fn writer(g: &GlobalOpts) -> CliResult<Box<dyn Write>> {
    Ok(match &g.out {
        Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
        None => Box::new(std::io::stdout().lock()),
    })
}

/// Runs a parsed command line.
pub fn execute(cli: &Cli) -> CliResult<()> {
    let start = Instant::now();
    let g = &cli.global;
    let mut spec = ProblemSpec::read(cli.command.input().map(PathBuf::as_path))?;
    apply_flags(&mut spec, g)?;
    if let Command::Sweep {
        max_order,
        reducible_only,
        cache,
        ..
    } = &cli.command
    {
        if g.emit == Emit::Md {
            return Err(CliError::Usage("sweep emits JSON lines only".into()));
        }
        let cover = spec.cover()?;
        let cfg = sweep::SweepConfig {
            max_order: *max_order,
            reducible_only: *reducible_only,
            budget: g.budget,
            numeric_fallback: spec.options.numeric_fallback,
        };
        let mut w = writer(g)?;
        let res = sweep::run(&spec, &cover, &cfg, cache.as_deref(), &mut *w);
        w.flush()?;
        let stats = res?;
        if g.timing {
            eprintln!(
                "sweep: {} emitted, {} computed, {} cached in {:.3}s",
                stats.emitted,
                stats.computed,
                stats.cached,
                start.elapsed().as_secs_f64()
            );
        }
        return Ok(());
    }
    let mut rep = report(&cli.command, &spec)?;
    if g.timing {
        rep["timing_ms"] = json!(start.elapsed().as_secs_f64() * 1e3);
    }
    let text = match g.emit {
        Emit::Json => serde_json::to_string_pretty(&rep).map_err(|e| CliError::Parse(e.to_string()))? + "\n",
        Emit::Md => report::markdown(&rep),
    };
    let mut w = writer(g)?;
    w.write_all(text.as_bytes())?;
    w.flush()?;
    Ok(())
}

/// Parses `args`, runs, reports errors on stderr and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("rchi: {e}");
            e.exit_code()
        }
    }
}

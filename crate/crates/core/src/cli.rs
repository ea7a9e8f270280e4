//! Argument parsing and report emission for the `dunkl-kit` binary.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::error::{DunklError, Result};
use crate::report::VerificationReport;
use crate::rootsys::RootSystem;
use crate::suites::{run_suite, ConfigFile, SuiteConfig, SUITES};

/// Exit code when every check passes.
pub const EXIT_PASS: i32 = 0;
/// Exit code when the suite ran and some check failed.
pub const EXIT_FAIL: i32 = 1;
/// Exit code for bad arguments, configuration or I/O.
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "dunkl-kit", version, about = "Verification suites for rational Dunkl theory")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run one verification suite and write its report.
    Run(RunArgs),
    /// List the available suites.
    Suites,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Default, Args)]
pub struct RunArgs {
    /// Suite name; see `dunkl-kit suites`.
    #[arg(long)]
    pub suite: Option<String>,
    /// Root system preset: z2:g, z2xz2:k1,k2, z2n:k1,...,kd or b2:k1,k2.
    #[arg(long, conflicts_with = "config")]
    pub preset: Option<String>,
    /// JSON configuration file. Flags given on the command line win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub grid_n: Option<usize>,
    /// Replaces the tolerance of every check.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
    /// Report destination; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum)]
    pub format: Option<Format>,
    /// Name of a sampled curve in the report to write as CSV.
    #[arg(long, requires = "plot_out")]
    pub plot: Option<String>,
    #[arg(long, requires = "plot")]
    pub plot_out: Option<PathBuf>,
}

/// A fully resolved run: suite configuration plus output options.
#[derive(Clone, Debug)]
pub struct RunPlan {
    pub suite: SuiteConfig,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub plot: Option<(String, PathBuf)>,
}

impl RunArgs {
    /// Merges the config file (if any) under the command-line flags.
    pub fn resolve(&self) -> Result<RunPlan> {
        let file = match &self.config {
            Some(p) => ConfigFile::parse(&fs::read_to_string(p).map_err(|e| {
                DunklError::Io(format!("{}: {e}", p.display()))
            })?)?,
            None => ConfigFile::default(),
        };
        let suite = self
            .suite
            .clone()
            .or(file.suite.clone())
            .ok_or_else(|| DunklError::Usage("no suite given (--suite or \"suite\" in the config)".into()))?;
        let rs = match &self.preset {
            Some(p) => RootSystem::preset(p)?,
            None => file.root_system()?.ok_or_else(|| {
                DunklError::Usage("no root system given (--preset, or preset/root_system in the config)".into())
            })?,
        };
        let mut cfg = SuiteConfig::new(&suite, rs);
        if let Some(n) = self.grid_n.or(file.grid_n) {
            cfg.grid_n = n;
        }
        cfg.tol = self.tol.or(file.tol);
        if let Some(s) = self.seed.or(file.seed) {
            cfg.seed = s;
        }
        cfg.validate()?;
        let format = match (self.format, file.format.as_deref()) {
            (Some(f), _) => f,
            (None, None) => Format::Json,
            (None, Some(s)) => Format::from_str(s, true)
                .map_err(|_| DunklError::Usage(format!("unknown format {s:?}")))?,
        };
        Ok(RunPlan {
            suite: cfg,
            out: self.out.clone().or(file.out.map(PathBuf::from)),
            format,
            plot: self.plot.clone().zip(self.plot_out.clone()),
        })
    }
}

/// Renders a report in the requested format.
pub fn render(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => report.to_json() + "\n",
        Format::Csv => report.to_csv(),
    }
}

/// Writes a named curve of the report to `path`. Nothing is written on error.
pub fn emit_plotdata(report: &VerificationReport, quantity: &str, path: &Path) -> Result<()> {
    let csv = report.plot_data(quantity)?;
    fs::write(path, csv).map_err(|e| DunklError::Io(format!("{}: {e}", path.display())))
}

/// Executes a resolved plan and returns the report.
pub fn execute(plan: &RunPlan) -> Result<VerificationReport> {
    let report = run_suite(&plan.suite)?;
    let text = render(&report, plan.format);
    match &plan.out {
        Some(p) => fs::write(p, text).map_err(|e| DunklError::Io(format!("{}: {e}", p.display())))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    if let Some((q, p)) = &plan.plot {
        emit_plotdata(&report, q, p)?;
    }
    Ok(report)
}

/// Parses `args`, runs, and returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match cli.command {
        Command::Suites => {
            for s in SUITES {
                println!("{s}");
            }
            EXIT_PASS
        }
        Command::Run(args) => match args.resolve().and_then(|plan| execute(&plan)) {
            Ok(report) => {
                eprintln!("{}", report.summary());
                if report.passed() {
                    EXIT_PASS
                } else {
                    EXIT_FAIL
                }
            }
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn args(extra: &[&str]) -> RunArgs {
        let mut v = vec!["dunkl-kit", "run"];
        v.extend_from_slice(extra);
        match Cli::try_parse_from(v).unwrap().command {
            Command::Run(a) => a,
            Command::Suites => unreachable!(),
        }
    }

    #[test]
    fn flags_resolve() {
        let plan = args(&["--suite", "kernel", "--preset", "z2:2", "--seed", "9", "--format", "csv"])
            .resolve()
            .unwrap();
        assert_eq!(plan.suite.seed, 9);
        assert_eq!(plan.format, Format::Csv);
        assert_eq!(plan.suite.root_system.gamma_f64(), 2.0);
    }

    #[test]
    fn preset_and_config_conflict() {
        let v = ["dunkl-kit", "run", "--suite", "kernel", "--preset", "z2:1", "--config", "x.json"];
        assert!(Cli::try_parse_from(v).is_err());
    }

    #[test]
    fn missing_pieces_are_usage_errors() {
        assert!(matches!(args(&["--preset", "z2:1"]).resolve(), Err(DunklError::Usage(_))));
        assert!(matches!(args(&["--suite", "kernel"]).resolve(), Err(DunklError::Usage(_))));
        assert!(matches!(
            args(&["--suite", "bogus", "--preset", "z2:1"]).resolve(),
            Err(DunklError::Usage(_))
        ));
        assert!(args(&["--suite", "kernel", "--preset", "z2:1", "--tol=-1"]).resolve().is_err());
    }

    #[test]
    fn config_file_is_overridden_by_flags() {
        let dir = tempfile::tempdir().unwrap();
        let p = dir.path().join("c.json");
        fs::write(&p, r#"{"suite": "normalization", "preset": "z2:1", "seed": 4, "grid_n": 129}"#).unwrap();
        let plan = args(&["--config", p.to_str().unwrap(), "--seed", "5"]).resolve().unwrap();
        assert_eq!(plan.suite.suite, "normalization");
        assert_eq!(plan.suite.seed, 5);
        assert_eq!(plan.suite.grid_n, 129);
    }
}

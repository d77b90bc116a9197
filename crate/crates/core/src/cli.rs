//! The `demazure` command line.
//!
//! Exit codes: 0 on success, 1 when a verification or diagnostic fails,
//! 2 on usage errors.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;

use crate::asymptotics::{conjecture_check, wlln_series};
use crate::closedform::level1_degree_marginal;
use crate::demazure::{to_csv, to_json, weight_distribution, WeylWord};
use crate::error::{Error, Result};
use crate::lattice::{Generator, HighestWeight};
use crate::render::{
    degree_histogram, heatmap, histogram, rescaled_heatmap, stretched_heatmap, HeatmapOptions,
};
use crate::verify::{run_suite, Suite};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "demazure",
    version,
    about = "Weight distributions of affine sl2 Demazure modules"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Svg,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Heatmap,
    Histogram,
    Rescaled,
    Stretched,
}

#[derive(Debug, clap::Args)]
struct Weight {
    /// Coefficient of Λ₀.
    #[arg(long, default_value_t = 1)]
    m: u32,
    /// Coefficient of Λ₁.
    #[arg(long, default_value_t = 0)]
    n: u32,
}

#[derive(Debug, clap::Args)]
struct Word {
    /// Word length.
    #[arg(long = "N", required_unless_present = "word")]
    length: Option<u32>,
    /// Rightmost letter, applied first.
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u32).range(0..=1))]
    first: u32,
    /// Explicit alternating word such as `s1s0s1`; overrides --N and --first.
    #[arg(long, conflicts_with = "length")]
    word: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Weight distribution as CSV, JSON or an SVG heatmap.
    Dist {
        #[command(flatten)]
        weight: Weight,
        #[command(flatten)]
        word: Word,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check an identity suite exactly over a range of N.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long = "max-N")]
        max_n: u32,
        #[arg(long = "min-N", default_value_t = 1)]
        min_n: u32,
    },
    /// Rescaled means and variances along increasing N.
    Wlln {
        #[command(flatten)]
        weight: Weight,
        #[arg(long = "N-list", value_delimiter = ',', required = true)]
        lengths: Vec<u32>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Fit Var(degree) of V(mΛ₀) by a cubic in N and compare with the table row.
    Conjecture {
        #[arg(long)]
        m: u32,
        #[arg(long = "N-list", value_delimiter = ',', required = true)]
        lengths: Vec<u32>,
    },
    /// SVG figure of a distribution.
    Render {
        #[command(flatten)]
        weight: Weight,
        #[command(flatten)]
        word: Word,
        #[arg(long, value_enum, default_value_t = Kind::Heatmap)]
        kind: Kind,
        /// Overlay the covariance ellipse (heatmap only).
        #[arg(long)]
        ellipse: bool,
        #[arg(long, default_value_t = 20.0)]
        cell: f64,
        #[arg(long, default_value_t = 128)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

impl Weight {
    fn resolve(&self) -> Result<HighestWeight> {
        HighestWeight::new(self.m, self.n)
    }
}

impl Word {
    fn resolve(&self) -> Result<WeylWord> {
        match (&self.word, self.length) {
            (Some(w), _) => w.parse(),
            (None, Some(n)) => Ok(WeylWord::new(n, Generator::try_from(self.first)?)),
            (None, None) => Err(Error::InvalidArgument(
                "either --N or --word is required".into(),
            )),
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// writing reports to `out` and diagnostics to `err`.
pub fn run_with<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            match e {
                Error::NotCubic { .. } => EXIT_FAIL,
                _ => EXIT_USAGE,
            }
        }
    }
}

/// Runs with the process arguments and standard streams.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

fn emit(text: &str, path: Option<&PathBuf>, out: &mut dyn Write) -> Result<()> {
    let io = |e: std::io::Error| Error::InvalidArgument(format!("cannot write output: {e}"));
    match path {
        Some(p) => fs::write(p, text).map_err(io),
        None => out.write_all(text.as_bytes()).map_err(io),
    }
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32> {
    match command {
        Command::Dist {
            weight,
            word,
            format,
            out: path,
        } => {
            let (hw, w) = (weight.resolve()?, word.resolve()?);
            let mu = weight_distribution(hw, w);
            let text = match format {
                Format::Csv => to_csv(&mu),
                Format::Json => to_json(&mu, &w) + "\n",
                Format::Svg => heatmap(&mu, &HeatmapOptions::default())?,
            };
            emit(&text, path.as_ref(), out)?;
            Ok(EXIT_OK)
        }
        Command::Verify {
            suite,
            max_n,
            min_n,
        } => {
            let suite: Suite = suite.parse()?;
            let checks = run_suite(suite, min_n, max_n)?;
            let mut text = String::new();
            for c in &checks {
                text.push_str(&c.to_string());
                text.push('\n');
            }
            emit(&text, None, out)?;
            let failed = checks.iter().filter(|c| !c.pass).count();
            let _ = writeln!(err, "{} checks, {failed} failed", checks.len());
            Ok(if failed == 0 { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Wlln {
            weight,
            lengths,
            out: path,
        } => {
            let series = wlln_series(weight.resolve()?, &lengths)?;
            emit(&series.to_csv(), path.as_ref(), out)?;
            if !series.variances_decreasing {
                let _ = writeln!(err, "rescaled variances are not strictly decreasing");
            }
            if series.means_within_bound == Some(false) {
                let _ = writeln!(err, "rescaled mean degree is not within 1/N of 1/2");
            }
            Ok(if series.passes() { EXIT_OK } else { EXIT_FAIL })
        }
        Command::Conjecture { m, lengths } => {
            let report = conjecture_check(m, &lengths)?;
            emit(&(report.to_json() + "\n"), None, out)?;
            Ok(if report.table_match && report.max_degree_match {
                EXIT_OK
            } else {
                EXIT_FAIL
            })
        }
        Command::Render {
            weight,
            word,
            kind,
            ellipse,
            cell,
            samples,
            out: path,
        } => {
            let (hw, w) = (weight.resolve()?, word.resolve()?);
            let svg = match kind {
                Kind::Histogram
                    if hw == HighestWeight::fundamental(Generator::Zero)
                        && w.first == Generator::Zero
                        && w.length % 2 == 0 =>
                {
                    // Same bars as the full distribution, without building it.
                    let bars: Vec<(i64, BigInt)> = level1_degree_marginal(w.length)?
                        .into_iter()
                        .enumerate()
                        .map(|(d, v)| (d as i64, BigInt::from(v)))
                        .collect();
                    histogram(&format!("degree distribution, {hw}"), &bars)?
                }
                Kind::Histogram => degree_histogram(&weight_distribution(hw, w))?,
                Kind::Heatmap => heatmap(
                    &weight_distribution(hw, w),
                    &HeatmapOptions {
                        cell,
                        overlay_ellipse: ellipse,
                        ellipse_samples: samples,
                    },
                )?,
                Kind::Rescaled => rescaled_heatmap(&weight_distribution(hw, w), samples)?,
                Kind::Stretched => stretched_heatmap(&weight_distribution(hw, w), cell)?,
            };
            emit(&svg, path.as_ref(), out)?;
            Ok(EXIT_OK)
        }
    }
}

//! Command-line front end.

use std::collections::BTreeSet;
use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::endo::EndoBundle;
use crate::error::Error;
use crate::exec::Exec;
use crate::rigid::{enumerate_maximal_rigid, RigidObject};
use crate::tube::Rank;
use crate::verify::{run_suite, Check, SuiteConfig};

pub const DEFAULT_MAX_RANK: usize = 7;
pub const MAX_RANK_VAR: &str = "TUBECAT_MAX_RANK";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "tubecat", version, about = "Maximal rigid objects in the cluster tube C_n")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the maximal rigid objects of C_n.
    Rigid {
        #[arg(long)]
        rank: usize,
        /// Print only the number of objects.
        #[arg(long)]
        count: bool,
        #[arg(long, value_enum, default_value_t = Format::Table)]
        format: Format,
    },
    /// Build Γ_T, Γ̃_T and Λ_T for one maximal rigid object.
    Endo {
        #[arg(long)]
        rank: usize,
        /// Orbit of the top summand.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        top: i64,
        /// Intervals inside the top wing, e.g. "1-3,1-1,3-3".
        #[arg(long)]
        tilting: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write bundle.json and gamma.dot, gamma_tilde.dot, lambda.dot here.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Run the verification suite.
    Verify {
        /// A single rank "4" or a range "2..5".
        #[arg(long, default_value = "2..5")]
        rank: String,
        /// Comma-separated subset of checks.
        #[arg(long, value_delimiter = ',')]
        only: Vec<Check>,
        #[arg(long)]
        json: bool,
        /// Quasilength cap for oracle sweeps, as a multiple of n.
        #[arg(long, default_value_t = 3)]
        ql_factor: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random pairs per rank in the sampled checks.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        /// Run on the calling thread only.
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Table,
}

impl clap::ValueEnum for Check {
    fn value_variants<'a>() -> &'a [Self] {
        &Check::ALL
    }

    fn to_possible_value(&self) -> Option<clap::builder::PossibleValue> {
        Some(clap::builder::PossibleValue::new(self.name()))
    }
}

/// Largest rank accepted, from the environment or the default.
pub fn max_rank() -> usize {
    std::env::var(MAX_RANK_VAR)
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_MAX_RANK)
}

/// Parses "4", "2..5" or "2..=5" (both inclusive) and checks the bounds.
pub fn parse_rank_range(s: &str, max: usize) -> Result<(usize, usize), String> {
    let parse = |p: &str| p.trim().parse::<usize>().map_err(|_| format!("bad rank {p:?}"));
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (parse(a)?, parse(b.strip_prefix('=').unwrap_or(b))?),
        None => {
            let n = parse(s)?;
            (n, n)
        }
    };
    if lo < 2 || lo > hi {
        return Err(format!("rank range {lo}..{hi} must satisfy 2 <= min <= max"));
    }
    if hi > max {
        return Err(format!("rank {hi} exceeds the cap {max} (set {MAX_RANK_VAR} to raise it)"));
    }
    Ok((lo, hi))
}

pub fn parse_tilting(s: &str) -> Result<Vec<(usize, usize)>, Error> {
    s.split(',')
        .map(|part| {
            let part = part.trim();
            let (a, b) = part
                .split_once('-')
                .ok_or_else(|| Error::TiltingSpec(format!("expected lo-hi, got {part:?}")))?;
            let num = |x: &str| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::TiltingSpec(format!("bad bound {x:?}")))
            };
            Ok((num(a)?, num(b)?))
        })
        .collect()
}

fn format_tilting(intervals: &[(usize, usize)]) -> String {
    let parts: Vec<String> = intervals.iter().map(|(a, b)| format!("{a}-{b}")).collect();
    parts.join(",")
}

/// The object with the given top orbit and tilting intervals; the intervals
/// must describe it exactly, in any order.
pub fn select_object(rank: Rank, top: i64, intervals: &[(usize, usize)]) -> Result<RigidObject, Error> {
    let t = RigidObject::from_tilting(rank, top, intervals)?;
    let mut want = intervals.to_vec();
    let mut got = t.tilting_intervals();
    want.sort_unstable();
    got.sort_unstable();
    if want != got || t.top().orbit() != rank.at(top, 1).orbit() {
        return Err(Error::TiltingSpec(format!(
            "{} does not describe an object with top orbit {top}",
            format_tilting(intervals)
        )));
    }
    Ok(t)
}

#[derive(Serialize)]
struct RigidListing<'a> {
    top_orbit: i64,
    tilting: String,
    #[serde(flatten)]
    object: &'a RigidObject,
}

enum Failure {
    Usage(String),
    Check,
    Io(io::Error),
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

/// Parses `args` (program name first), writes the result to `out` and
/// diagnostics to `err`, and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(()) => EXIT_OK,
        Err(Failure::Check) => EXIT_FAILURE,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAILURE
        }
    }
}

fn checked_rank(n: usize) -> Result<Rank, Failure> {
    let max = max_rank();
    if n > max {
        return Err(Failure::Usage(format!(
            "rank {n} exceeds the cap {max} (set {MAX_RANK_VAR} to raise it)"
        )));
    }
    Ok(Rank::new(n)?)
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::Rigid { rank, count, format } => cmd_rigid(checked_rank(rank)?, count, format, out),
        Command::Endo { rank, top, tilting, format, out_dir } => {
            let rank = checked_rank(rank)?;
            let t = select_object(rank, top, &parse_tilting(&tilting)?)?;
            cmd_endo(&t, format, out_dir, out)
        }
        Command::Verify { rank, only, json, ql_factor, seed, samples, sequential } => {
            let (lo, hi) = parse_rank_range(&rank, max_rank()).map_err(Failure::Usage)?;
            if ql_factor < 1 {
                return Err(Failure::Usage("--ql-factor must be at least 1".into()));
            }
            let mut cfg = SuiteConfig::new(lo..=hi);
            if !only.is_empty() {
                cfg.checks = only.into_iter().collect::<BTreeSet<_>>();
            }
            cfg.ql_factor = ql_factor;
            cfg.seed = seed;
            cfg.samples = samples;
            cfg.exec = if sequential { Exec::Sequential } else { Exec::Parallel };
            cmd_verify(&cfg, json, out)
        }
    }
}

fn cmd_rigid(rank: Rank, count: bool, format: Format, out: &mut dyn Write) -> Result<(), Failure> {
    let objects = enumerate_maximal_rigid(rank);
    if count {
        writeln!(out, "{}", objects.len())?;
        return Ok(());
    }
    match format {
        Format::Json => {
            let listing: Vec<RigidListing> = objects
                .iter()
                .map(|t| RigidListing {
                    top_orbit: t.top().orbit() as i64,
                    tilting: format_tilting(&t.tilting_intervals()),
                    object: t,
                })
                .collect();
            writeln!(out, "{}", to_json(&listing))?;
        }
        Format::Table => {
            for (i, t) in objects.iter().enumerate() {
                writeln!(
                    out,
                    "{:>4}  top {}  tilting {}  {}",
                    i + 1,
                    t.top().orbit(),
                    format_tilting(&t.tilting_intervals()),
                    t
                )?;
            }
        }
        Format::Dot => return Err(Failure::Usage("rigid has no dot output".into())),
    }
    Ok(())
}

fn cmd_endo(
    t: &RigidObject,
    format: Format,
    out_dir: Option<PathBuf>,
    out: &mut dyn Write,
) -> Result<(), Failure> {
    let bundle = EndoBundle::new(t)?;
    let json = to_json(&bundle.to_json());
    let dots = [
        ("gamma", bundle.gamma.to_dot("gamma")),
        ("gamma_tilde", bundle.gamma_tilde.to_dot("gamma_tilde")),
        ("lambda", bundle.lambda.to_dot("lambda")),
    ];
    if let Some(dir) = out_dir {
        fs::create_dir_all(&dir)?;
        fs::write(dir.join("bundle.json"), format!("{json}\n"))?;
        for (name, dot) in &dots {
            fs::write(dir.join(format!("{name}.dot")), dot)?;
        }
        writeln!(out, "wrote bundle.json, gamma.dot, gamma_tilde.dot, lambda.dot to {}", dir.display())?;
        return Ok(());
    }
    match format {
        Format::Json => writeln!(out, "{json}")?,
        Format::Dot => {
            for (_, dot) in &dots {
                out.write_all(dot.as_bytes())?;
            }
        }
        Format::Table => {
            for (name, p) in [("Γ_T", &bundle.gamma), ("Γ̃_T", &bundle.gamma_tilde), ("Λ_T", &bundle.lambda)] {
                let q = p.quiver();
                writeln!(out, "{name}: {} vertices", q.vertex_count())?;
                for a in q.arrows() {
                    writeln!(out, "  {}: {} -> {}", a.name, a.src + 1, a.tgt + 1)?;
                }
                for &(b, a) in p.relations() {
                    writeln!(out, "  {}{} = 0", q.arrow(b).name, q.arrow(a).name)?;
                }
            }
        }
    }
    Ok(())
}

fn cmd_verify(cfg: &SuiteConfig, json: bool, out: &mut dyn Write) -> Result<(), Failure> {
    let report = run_suite(cfg)?;
    if json {
        writeln!(out, "{}", to_json(&report))?;
    } else {
        for r in &report.results {
            let status = match (r.ok, r.skipped) {
                (_, true) => "skip",
                (true, false) => "ok",
                (false, false) => "FAIL",
            };
            let object = r.object.as_ref().map(|t| format!(" {t}")).unwrap_or_default();
            writeln!(out, "n={} {}{}: {} ({})", r.rank, r.check, object, status, r.detail)?;
        }
        let failed = report.failures().count();
        writeln!(out, "{} checks, {} failed", report.results.len(), failed)?;
    }
    if report.ok() {
        Ok(())
    } else {
        Err(Failure::Check)
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("report types serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("tubecat").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn rank_ranges() {
        assert_eq!(parse_rank_range("2..5", 7), Ok((2, 5)));
        assert_eq!(parse_rank_range("2..=5", 7), Ok((2, 5)));
        assert_eq!(parse_rank_range("4", 7), Ok((4, 4)));
        assert!(parse_rank_range("1..3", 7).is_err());
        assert!(parse_rank_range("5..3", 7).is_err());
        assert!(parse_rank_range("2..8", 7).is_err());
        assert!(parse_rank_range("x", 7).is_err());
    }

    #[test]
    fn tilting_specs() {
        assert_eq!(parse_tilting("1-3, 1-1,3-3").unwrap(), vec![(1, 3), (1, 1), (3, 3)]);
        assert!(parse_tilting("1:3").is_err());
        let rank = Rank::new(4).unwrap();
        let t = select_object(rank, 2, &[(3, 3), (1, 3), (1, 1)]).unwrap();
        assert_eq!(t.top(), rank.at(2, 3));
        assert!(select_object(rank, 1, &[(1, 3), (1, 1)]).is_err());
        assert!(select_object(rank, 1, &[(1, 3), (1, 1), (2, 2)]).is_err());
    }

    #[test]
    fn rigid_counts() {
        assert_eq!(run_str(&["rigid", "--rank", "3", "--count"]), (0, "6\n".into(), String::new()));
        let (code, out, _) = run_str(&["rigid", "--rank", "2"]);
        assert_eq!(code, 0);
        assert_eq!(out.lines().count(), 2);
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["rigid", "--rank", "1"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["rigid", "--rank", "9"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["bogus"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["verify", "--rank", "3", "--only", "nope"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["endo", "--rank", "4", "--tilting", "1-3,2-2"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["verify", "--rank", "2..3"]).0, EXIT_OK);
    }

    #[test]
    fn verify_only_strings() {
        let (code, out, _) = run_str(&["verify", "--rank", "4", "--only", "strings"]);
        assert_eq!(code, 0);
        let lines: Vec<&str> = out.lines().filter(|l| l.contains(" strings ")).collect();
        assert_eq!(lines.len(), 20);
        assert!(lines.iter().all(|l| l.ends_with("ok (count=15)")));
    }
}

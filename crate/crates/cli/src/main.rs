//! `galois-scope`: analyze plane curves over finite fields, test points for
//! being Galois, sweep random curves against the bound, and study covers of
//! the projective line.
//!
//! Exit status: 0 pass, 1 input error, 2 consistency violation,
//! 3 inconclusive or refused.

mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use galois_scope::covers::{analyze_cover, cover_checks, CoverSpec};
use galois_scope::galois::{bound_check, delta_scan, galois_test, sweep, Engine, GaloisConfig, Verdict};
use galois_scope::report::{analyze_curve, parse_cover_file, parse_curve_file, parse_point};
use galois_scope::{Error, GaloisField};
use serde::Serialize;

#[derive(Parser)]
#[command(
    name = "galois-scope",
    version,
    about = "Galois points of plane curves over finite fields"
)]
struct Cli {
    #[command(flatten)]
    run: RunArgs,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone, Debug, Serialize)]
struct RunArgs {
    /// Seed for every random choice.
    #[arg(long, global = true, env = "GALOIS_SCOPE_SEED", default_value_t = 0)]
    seed: u64,
    /// Search fields GF(q^m) for m up to this bound.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
    ext_max: u32,
    #[arg(long, global = true, default_value = "auto",
          value_parser = ["auto", "filter", "certificate", "exact"])]
    engine: String,
    /// Print JSON instead of a table.
    #[arg(long, global = true)]
    json: bool,
    /// Allow runs whose hypotheses only partly hold (characteristic 2 scans).
    #[arg(long, global = true)]
    best_effort: bool,
    /// Worker threads for point scans.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Invariants of a curve: singularities, contact order, dual degree, flexes.
    Analyze { file: PathBuf },
    /// Test one point, or every smooth point over the searched fields.
    Galois {
        file: PathBuf,
        /// Point as "x,y,z".
        #[arg(long, conflicts_with = "scan", required_unless_present = "scan")]
        point: Option<String>,
        #[arg(long)]
        scan: bool,
    },
    /// Census of seeded random irreducible curves, checked against the bound.
    Sweep {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        d: u32,
        #[arg(long)]
        count: usize,
    },
    /// Ramification and automorphisms of a rational map of P^1.
    Cover {
        /// Cover file {"p", "e", "map"}.
        #[arg(required_unless_present = "map", conflicts_with = "map")]
        file: Option<PathBuf>,
        #[arg(long, requires = "p")]
        map: Option<String>,
        #[arg(long)]
        p: Option<u32>,
    },
}

impl RunArgs {
    fn galois(&self) -> GaloisConfig {
        GaloisConfig {
            engine: self.engine.parse::<Engine>().expect("validated by clap"),
            ext_max: self.ext_max,
            jobs: self.jobs as usize,
            seed: self.seed,
            best_effort: self.best_effort,
            ..GaloisConfig::default()
        }
    }

    fn emit<T: Serialize>(&self, report: &T) {
        if self.json {
            out(&format!("{}\n", render::json(report)));
        } else {
            out(&render::table(&ConfigEcho { config: self }));
            out(&render::table(report));
        }
    }
}

#[derive(Serialize)]
struct ConfigEcho<'a> {
    config: &'a RunArgs,
}

/// Write to stdout; a closed pipe is not an error.
fn out(s: &str) {
    let _ = std::io::stdout().lock().write_all(s.as_bytes());
}

fn read(path: &PathBuf) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("{}: {e}", path.display())))
}

fn run(cli: &Cli) -> Result<u8, Error> {
    let run = &cli.run;
    match &cli.cmd {
        Cmd::Analyze { file } => {
            let curve = parse_curve_file(&read(file)?)?;
            run.emit(&analyze_curve(&curve, run.seed, run.ext_max)?);
            Ok(0)
        }
        Cmd::Galois { file, point, scan } => {
            let curve = parse_curve_file(&read(file)?)?;
            let cfg = run.galois();
            if let Some(src) = point {
                let pt = parse_point(&curve, src, run.ext_max)?;
                let rep = galois_test(&curve, &pt, &cfg)?;
                run.emit(&rep);
                return Ok(if rep.verdict == Verdict::Inconclusive { 3 } else { 0 });
            }
            debug_assert!(*scan);
            if curve.field().p() == 2 && !run.best_effort {
                return Err(Error::Refused(
                    "scans assume characteristic other than 2; rerun with --best-effort".into(),
                ));
            }
            let rep = delta_scan(&curve, &cfg)?;
            run.emit(&rep);
            if curve.field().p() != 2 && !bound_check(&rep, Some(&curve))?.pass {
                eprintln!(
                    "error: {} Galois points exceed the bound {}",
                    rep.delta_found(),
                    rep.bound()
                );
                return Ok(2);
            }
            Ok(if rep.complete { 0 } else { 3 })
        }
        Cmd::Sweep { p, d, count } => {
            run.emit(&sweep(*p, *d, *count, &run.galois())?);
            Ok(0)
        }
        Cmd::Cover { file, map, p } => {
            let theta = match (file, map, p) {
                (Some(f), _, _) => parse_cover_file(&read(f)?)?,
                (None, Some(m), Some(p)) => CoverSpec::parse(m, &GaloisField::get(*p, 1)?)?,
                _ => unreachable!("clap enforces a file or --map with --p"),
            };
            let rep = analyze_cover(&theta, run.ext_max)?;
            run.emit(&rep);
            if !run.json {
                out(&render::table(&Checks {
                    checks: cover_checks(&theta, &rep, run.ext_max)?,
                }));
            }
            Ok(0)
        }
    }
}

#[derive(Serialize)]
struct Checks {
    checks: galois_scope::covers::CoverChecks,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

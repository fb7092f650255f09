//! Command-line front end.
//!
//! Exit status: 0 when every requested check passes (or the command is
//! informational), 1 when a check fails, 2 for usage errors, 3 when a size
//! cap is hit.

use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::error::Error;
use crate::fseries::xi_series;
use crate::identities::{
    check_tier, exponents_from_heights, exponents_from_kostka, kostka_theta_capped, verify, Caps,
    ExponentMultiset, Target, VerificationReport,
};
use crate::rootsys::{
    build_root_system, cartan_matrix, RootSystem, RootVector, DEFAULT_HEIGHT_CAP,
};
use crate::tpoly::TPoly;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_CAP: i32 = 3;

pub const ENV_WEYL_CAP: &str = "ROOTHEIGHTS_WEYL_CAP";
pub const ENV_PARTITION_CAP: &str = "ROOTHEIGHTS_PARTITION_CAP";

#[derive(Debug, Parser)]
#[command(
    name = "rootheights",
    version,
    about = "Root systems, the xi series and exponents vs root heights"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// List the positive roots, rho, theta and the height counts.
    Roots(SystemArgs),
    /// Exponents from root heights and from the Kostka-Foulkes polynomial.
    Exponents(SystemArgs),
    /// Coefficient of e^{-gamma} in the truncated xi series.
    XiCoeff {
        #[command(flatten)]
        system: SystemArgs,
        /// Comma-separated simple-root coordinates, e.g. 1,1
        #[arg(
            long,
            value_delimiter = ',',
            allow_negative_numbers = true,
            required = true
        )]
        gamma: Vec<i64>,
        /// Truncation height; defaults to the height of gamma.
        #[arg(long)]
        height_bound: Option<i64>,
    },
    /// Run verification checks and print a report.
    Verify {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, value_enum)]
        target: TargetArg,
    },
}

#[derive(Debug, Clone, Args)]
pub struct SystemArgs {
    /// Cartan family, A through G.
    #[arg(long)]
    pub family: char,
    #[arg(long)]
    pub rank: usize,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Allow Weyl-group sums above the fast-tier size (E6 and larger).
    #[arg(long)]
    pub slow: bool,
    #[arg(long, env = ENV_WEYL_CAP, default_value_t = crate::rootsys::DEFAULT_WEYL_ORDER_CAP)]
    pub weyl_cap: usize,
    #[arg(long, env = ENV_PARTITION_CAP, default_value_t = crate::vecpart::DEFAULT_PARTITION_CAP)]
    pub partition_cap: usize,
}

impl SystemArgs {
    fn caps(&self) -> Caps {
        Caps {
            weyl_order_cap: self.weyl_cap,
            partition_cap: self.partition_cap,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TargetArg {
    Prop1,
    Fact1,
    Fact2,
    Duality,
    ConstantTerm,
    All,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Self {
        match t {
            TargetArg::Prop1 => Target::Prop1,
            TargetArg::Fact1 => Target::Fact1,
            TargetArg::Fact2 => Target::Fact2,
            TargetArg::Duality => Target::Duality,
            TargetArg::ConstantTerm => Target::ConstantTerm,
            TargetArg::All => Target::All,
        }
    }
}

/// What a run prints and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_PASS,
            stdout,
            stderr: String::new(),
        }
    }

    fn from_error(err: &Error) -> Self {
        let code = match err {
            e if e.is_cap() => EXIT_CAP,
            Error::Internal(_) | Error::NonMonotoneHeights { .. } | Error::MalformedKostka(_) => {
                EXIT_FAIL
            }
            _ => EXIT_USAGE,
        };
        Outcome {
            code,
            stdout: String::new(),
            stderr: format!("error: {err}\n"),
        }
    }
}

pub fn run(cli: &Cli) -> Outcome {
    match try_run(cli) {
        Ok(outcome) => outcome,
        Err(e) => Outcome::from_error(&e),
    }
}

fn load_system(args: &SystemArgs) -> Result<RootSystem, Error> {
    build_root_system(cartan_matrix(args.family, args.rank)?, DEFAULT_HEIGHT_CAP)
}

fn try_run(cli: &Cli) -> Result<Outcome, Error> {
    match &cli.command {
        Command::Roots(args) => {
            let system = load_system(args)?;
            Ok(Outcome::ok(emit_roots(&system, args.format)))
        }
        Command::Exponents(args) => {
            let system = load_system(args)?;
            check_tier(&system, args.slow)?;
            let from_heights = exponents_from_heights(&system)?;
            let kostka = kostka_theta_capped(&system, &args.caps())?;
            let from_kostka = exponents_from_kostka(&kostka)?;
            Ok(Outcome::ok(emit_exponents(
                &system,
                &from_heights,
                &kostka,
                &from_kostka,
                args.format,
            )))
        }
        Command::XiCoeff {
            system: args,
            gamma,
            height_bound,
        } => {
            let system = load_system(args)?;
            if gamma.len() != system.rank() {
                return Err(Error::DimensionMismatch {
                    expected: system.rank(),
                    got: gamma.len(),
                });
            }
            let gamma = RootVector::new(gamma.clone());
            if !gamma.is_nonnegative() {
                return Err(Error::Precondition(format!("gamma = {gamma} is not in Q+")));
            }
            let bound = height_bound.unwrap_or(gamma.height());
            let coeff = xi_series(&system, bound)?.coefficient(&gamma)?;
            Ok(Outcome::ok(emit_coefficient(
                &system,
                &gamma,
                bound,
                &coeff,
                args.format,
            )))
        }
        Command::Verify {
            system: args,
            target,
        } => {
            let system = load_system(args)?;
            let report = verify(&system, (*target).into(), &args.caps(), args.slow)?;
            let mut stderr = String::new();
            for claim in report.failures() {
                let _ = writeln!(
                    stderr,
                    "FAIL {} beta={:?} simple={:?}: expected {} computed {}",
                    claim.id, claim.beta, claim.simple, claim.expected, claim.computed
                );
            }
            Ok(Outcome {
                code: if report.pass { EXIT_PASS } else { EXIT_FAIL },
                stdout: emit_report(&report, args.format),
                stderr,
            })
        }
    }
}

fn join(v: &[i64]) -> String {
    v.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
}

fn poly_array(p: &TPoly) -> String {
    serde_json::to_string(p).expect("polynomial serializes")
}

/// JSON (fixed key order) or TSV with one claim per row:
/// `system  id  beta  simple  expected  computed  pass|FAIL`.
pub fn emit_report(report: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string(report).expect("report serializes");
            s.push('\n');
            s
        }
        Format::Tsv => {
            let mut s = String::new();
            for c in &report.claims {
                let _ = writeln!(
                    s,
                    "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                    report.system,
                    c.id,
                    c.beta.as_deref().map_or_else(|| "-".to_string(), join),
                    c.simple.map_or_else(|| "-".to_string(), |i| i.to_string()),
                    poly_array(&c.expected),
                    poly_array(&c.computed),
                    if c.pass { "pass" } else { "FAIL" }
                );
            }
            s
        }
    }
}

#[derive(Serialize)]
struct RootEntry<'a> {
    root: &'a [i64],
    height: i64,
}

#[derive(Serialize)]
struct RootsDoc<'a> {
    system: String,
    rank: usize,
    cartan: &'a [Vec<i64>],
    symmetrizer: &'a [i64],
    positive_roots: Vec<RootEntry<'a>>,
    theta: &'a [i64],
    rho: Vec<String>,
    height_counts: &'a [usize],
}

pub fn emit_roots(system: &RootSystem, format: Format) -> String {
    match format {
        Format::Json => {
            let doc = RootsDoc {
                system: system.label(),
                rank: system.rank(),
                cartan: system.cartan().entries(),
                symmetrizer: system.cartan().symmetrizer(),
                positive_roots: system
                    .positive_roots()
                    .iter()
                    .map(|r| RootEntry {
                        root: r.coords(),
                        height: r.height(),
                    })
                    .collect(),
                theta: system.theta().coords(),
                rho: system.rho().iter().map(|r| r.to_string()).collect(),
                height_counts: system.height_counts(),
            };
            let mut s = serde_json::to_string(&doc).expect("roots serialize");
            s.push('\n');
            s
        }
        Format::Tsv => system
            .positive_roots()
            .iter()
            .map(|r| format!("{}\t{}\n", join(r.coords()), r.height()))
            .collect(),
    }
}

#[derive(Serialize)]
struct ExponentsDoc<'a> {
    system: String,
    height_counts: &'a [usize],
    exponents_from_heights: &'a ExponentMultiset,
    kostka: &'a TPoly,
    kostka_pretty: String,
    exponents_from_kostka: &'a ExponentMultiset,
    agree: bool,
}

fn emit_exponents(
    system: &RootSystem,
    from_heights: &ExponentMultiset,
    kostka: &TPoly,
    from_kostka: &ExponentMultiset,
    format: Format,
) -> String {
    match format {
        Format::Json => {
            let doc = ExponentsDoc {
                system: system.label(),
                height_counts: system.height_counts(),
                exponents_from_heights: from_heights,
                kostka,
                kostka_pretty: kostka.pretty(),
                exponents_from_kostka: from_kostka,
                agree: from_heights == from_kostka,
            };
            let mut s = serde_json::to_string(&doc).expect("exponents serialize");
            s.push('\n');
            s
        }
        Format::Tsv => {
            let list = |e: &ExponentMultiset| {
                e.ascending()
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            };
            format!(
                "{}\t{}\t{}\t{}\n",
                system.label(),
                list(from_heights),
                poly_array(kostka),
                list(from_kostka)
            )
        }
    }
}

#[derive(Serialize)]
struct CoeffDoc<'a> {
    system: String,
    gamma: &'a [i64],
    height_bound: i64,
    coeff: &'a TPoly,
    pretty: String,
}

fn emit_coefficient(
    system: &RootSystem,
    gamma: &RootVector,
    bound: i64,
    coeff: &TPoly,
    format: Format,
) -> String {
    match format {
        Format::Json => {
            let doc = CoeffDoc {
                system: system.label(),
                gamma: gamma.coords(),
                height_bound: bound,
                coeff,
                pretty: coeff.pretty(),
            };
            let mut s = serde_json::to_string(&doc).expect("coefficient serializes");
            s.push('\n');
            s
        }
        Format::Tsv => format!(
            "{}\t{}\t{}\n",
            system.label(),
            join(gamma.coords()),
            poly_array(coeff)
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::identities::ClaimRecord;

    fn parse(args: &[&str]) -> Cli {
        Cli::try_parse_from(std::iter::once("rootheights").chain(args.iter().copied())).unwrap()
    }

    #[test]
    fn roots_json() {
        let out = run(&parse(&[
            "roots", "--family", "A", "--rank", "2", "--format", "json",
        ]));
        assert_eq!(out.code, EXIT_PASS);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        let heights: Vec<i64> = v["positive_roots"]
            .as_array()
            .unwrap()
            .iter()
            .map(|r| r["height"].as_i64().unwrap())
            .collect();
        assert_eq!(heights, vec![1, 1, 2]);
        assert_eq!(v["rho"], serde_json::json!(["1", "1"]));
    }

    #[test]
    fn xi_coeff_a2() {
        let out = run(&parse(&[
            "xi-coeff", "--family", "A", "--rank", "2", "--gamma", "1,1",
        ]));
        assert_eq!(out.code, EXIT_PASS);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["coeff"], serde_json::json!([0, -1, 1]));
        assert_eq!(v["pretty"], "t^2 - t");
    }

    #[test]
    fn xi_coeff_bad_input() {
        let out = run(&parse(&[
            "xi-coeff", "--family", "A", "--rank", "2", "--gamma", "1,1,1",
        ]));
        assert_eq!(out.code, EXIT_USAGE);
        let out = run(&parse(&[
            "xi-coeff", "--family", "A", "--rank", "2", "--gamma", "1,-1",
        ]));
        assert_eq!(out.code, EXIT_USAGE);
        let out = run(&parse(&[
            "xi-coeff",
            "--family",
            "A",
            "--rank",
            "2",
            "--gamma",
            "3,0",
            "--height-bound",
            "2",
        ]));
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.contains("truncation"));
    }

    #[test]
    fn invalid_type_is_usage_error() {
        let out = run(&parse(&["roots", "--family", "B", "--rank", "1"]));
        assert_eq!(out.code, EXIT_USAGE);
        assert!(out.stderr.contains("(B, 1)"));
    }

    #[test]
    fn missing_flags_rejected_by_parser() {
        assert!(
            Cli::try_parse_from(["rootheights", "xi-coeff", "--family", "A", "--rank", "2"])
                .is_err()
        );
        assert!(
            Cli::try_parse_from(["rootheights", "verify", "--family", "A", "--rank", "2"]).is_err()
        );
    }

    #[test]
    fn caps_give_exit_3() {
        let out = run(&parse(&[
            "verify",
            "--family",
            "A",
            "--rank",
            "3",
            "--target",
            "duality",
            "--weyl-cap",
            "10",
        ]));
        assert_eq!(out.code, EXIT_CAP);
        assert!(out.stderr.contains("weyl_order_cap = 10"));
        let out = run(&parse(&["exponents", "--family", "E", "--rank", "6"]));
        assert_eq!(out.code, EXIT_CAP);
    }

    #[test]
    fn verify_g2_all_passes() {
        let out = run(&parse(&[
            "verify", "--family", "G", "--rank", "2", "--target", "all",
        ]));
        assert_eq!(out.code, EXIT_PASS, "{}", out.stderr);
        assert!(out.stdout.starts_with(r#"{"system":"G2","claims":["#));
        assert!(out.stdout.trim_end().ends_with(r#""pass":true}"#));
    }

    #[test]
    fn tsv_rows() {
        let out = run(&parse(&[
            "verify", "--family", "A", "--rank", "1", "--target", "prop1", "--format", "tsv",
        ]));
        assert_eq!(out.code, EXIT_PASS);
        let rows: Vec<&str> = out.stdout.lines().collect();
        assert_eq!(rows, vec!["A1\tprop1\t1\t-\t[-1,1]\t[-1,1]\tpass"]);
    }

    #[test]
    fn failing_record_renders_fail() {
        let mut report = VerificationReport::new("A1");
        report.push(ClaimRecord::new("synthetic", TPoly::one(), TPoly::t()));
        let tsv = emit_report(&report, Format::Tsv);
        assert!(tsv.trim_end().ends_with("FAIL"));
        assert!(!report.pass);
    }

    #[test]
    fn exponents_command() {
        let out = run(&parse(&["exponents", "--family", "G", "--rank", "2"]));
        assert_eq!(out.code, EXIT_PASS);
        let v: serde_json::Value = serde_json::from_str(&out.stdout).unwrap();
        assert_eq!(v["exponents_from_kostka"], serde_json::json!([1, 5]));
        assert_eq!(v["kostka"], serde_json::json!([0, 1, 0, 0, 0, 1]));
        assert_eq!(v["agree"], true);
    }
}

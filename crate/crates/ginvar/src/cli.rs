//! Command-line front end: verification, certification, and exploration
//! workflows over the library.
//!
//! Exit codes: 0 success/certified, 1 check failed, 2 usage error (from
//! argument parsing), 3 internal inconsistency (e.g. a nonzero radical
//! coordinate where exact cancellation is required).

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::certify::{run_certification, CertifyConfig};
use crate::classify::{classify_invariance, classify_matkowski_suto, lemma_normalize};
use crate::exactnum::{parse_rational, BigFloat, DEFAULT_PRECISION};
use crate::gini::{default_gauss_reltol, default_grid, gauss_compose, invariance_residual, GiniParams, ParamTuple};
use crate::taylor::{check_formula, taylor_coefficients_rational, CheckMode, TaylorError};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

fn rational_value(s: &str) -> Result<BigRational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

fn pair_value(s: &str) -> Result<GiniPair, String> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 2 {
        return Err("expected `p,q` with exact rationals".into());
    }
    Ok(GiniPair {
        p: rational_value(parts[0])?,
        q: rational_value(parts[1])?,
    })
}

#[derive(Debug, Clone)]
pub struct GiniPair {
    pub p: BigRational,
    pub q: BigRational,
}

/// Exact verification toolkit for the Gini-mean invariance equation.
#[derive(Debug, Parser)]
#[command(name = "ginvar", version, about)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

/// The six parameters of the invariance equation as exact rationals
/// (`n` or `n/d`, leading minus accepted).
#[derive(Debug, Args)]
pub struct TupleArgs {
    #[arg(allow_hyphen_values = true, value_parser = rational_value)]
    pub a: BigRational,
    #[arg(allow_hyphen_values = true, value_parser = rational_value)]
    pub b: BigRational,
    #[arg(allow_hyphen_values = true, value_parser = rational_value)]
    pub c: BigRational,
    #[arg(allow_hyphen_values = true, value_parser = rational_value)]
    pub d: BigRational,
    #[arg(allow_hyphen_values = true, value_parser = rational_value)]
    pub p: BigRational,
    #[arg(allow_hyphen_values = true, value_parser = rational_value)]
    pub q: BigRational,
}

impl TupleArgs {
    fn tuple(&self) -> ParamTuple {
        ParamTuple::new(
            self.a.clone(),
            self.b.clone(),
            self.c.clone(),
            self.d.clone(),
            self.p.clone(),
            self.q.clone(),
        )
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print the exact Taylor coefficients C_2..C_order of the section
    /// function F for a parameter tuple.
    Taylor {
        #[command(flatten)]
        tuple: TupleArgs,
        /// Truncation order (even coefficients up to this index).
        #[arg(long, default_value_t = 13)]
        order: usize,
        #[arg(long)]
        json: bool,
    },
    /// List every solution family the tuple belongs to.
    Classify {
        #[command(flatten)]
        tuple: TupleArgs,
        /// Also print the mean-level normalized view and the
        /// arithmetic-outer (Matkowski–Sutô) classification.
        #[arg(long)]
        full: bool,
        #[arg(long)]
        json: bool,
    },
    /// Numerically verify the invariance equation on the default grid.
    Verify {
        #[command(flatten)]
        tuple: TupleArgs,
        /// Working precision in bits.
        #[arg(long, default_value_t = DEFAULT_PRECISION as u64, value_parser = clap::value_parser!(u64).range(64..))]
        precision: u64,
        /// Residual tolerance, e.g. `1e-60` (default 10^(-0.28·precision)).
        #[arg(long)]
        tol: Option<String>,
        /// Seed for the random grid points.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run the complete elimination-argument certification pipeline.
    Certify {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `randomized` or `exhaustive`.
        #[arg(long, default_value = "randomized")]
        mode: String,
        /// Points per formula (randomized) or grid points per variable
        /// (exhaustive).
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Truncation order for the formula checks.
        #[arg(long, default_value_t = 13)]
        order: usize,
        /// Write the full report (including Q's decimal expansion) here.
        #[arg(long)]
        report: Option<PathBuf>,
        /// Print the certificate JSON instead of the text summary.
        #[arg(long)]
        json: bool,
    },
    /// Gauss composition M ⊗ N of two Gini means.
    Gauss {
        /// First mean as `p,q`.
        #[arg(long = "M", allow_hyphen_values = true, value_parser = pair_value)]
        m: GiniPair,
        /// Second mean as `p,q`.
        #[arg(long = "N", allow_hyphen_values = true, value_parser = pair_value)]
        n: GiniPair,
        /// First positive argument (exact rational).
        #[arg(allow_hyphen_values = true, value_parser = rational_value)]
        x: BigRational,
        /// Second positive argument (exact rational).
        #[arg(allow_hyphen_values = true, value_parser = rational_value)]
        y: BigRational,
        #[arg(long, default_value_t = DEFAULT_PRECISION as u64, value_parser = clap::value_parser!(u64).range(64..))]
        precision: u64,
        #[arg(long)]
        json: bool,
    },
    /// Exact identity test of one stored coefficient formula C_k.
    CheckFormula {
        /// Coefficient index: one of 2, 4, 6, 8, 10, 12.
        #[arg(long)]
        k: usize,
        /// `randomized` or `exhaustive`.
        #[arg(long, default_value = "randomized")]
        mode: String,
        /// Points (randomized) or per-variable grid size (exhaustive).
        #[arg(long, default_value_t = 200)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Debug, Serialize, Deserialize)]
pub struct CoefficientEntry {
    pub k: usize,
    pub value: String,
    pub nonzero: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct TaylorOutput {
    pub order: usize,
    pub coefficients: Vec<CoefficientEntry>,
    pub all_zero: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub families: Vec<String>,
    pub lemma_normalized_families: Option<Vec<String>>,
    pub matkowski_suto_families: Option<Vec<String>>,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub residual: String,
    pub tolerance: String,
    pub precision: usize,
    pub grid_size: usize,
    pub pass: bool,
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GaussOutput {
    pub value: String,
    pub iterations: usize,
    pub precision: usize,
}

fn parse_tolerance(s: &str, prec: usize) -> Result<BigFloat, String> {
    let lower = s.trim().to_lowercase();
    let (mantissa, exponent) = match lower.split_once('e') {
        Some((m, e)) => {
            let m: f64 = if m.is_empty() { 1.0 } else { m.parse().map_err(|_| "bad tolerance")? };
            let e: i32 = e.parse().map_err(|_| "bad tolerance")?;
            (m, e)
        }
        None => (lower.parse().map_err(|_| "bad tolerance")?, 0),
    };
    if mantissa <= 0.0 {
        return Err("tolerance must be positive".into());
    }
    Ok(BigFloat::from_f64(mantissa, prec).mul(&BigFloat::ten_pow(exponent, prec)))
}

fn default_tolerance(prec: usize) -> BigFloat {
    // 10^(−0.28·precision bits): ties pass/fail to the working precision.
    let exp = (0.28 * prec as f64).floor() as i32;
    BigFloat::ten_pow(-exp, prec)
}

fn internal_inconsistency(e: &TaylorError) -> bool {
    matches!(
        e,
        TaylorError::RadicalResidue { .. }
            | TaylorError::OddCoefficientResidue { .. }
            | TaylorError::BadConstantTerm
    )
}

/// Executes one parsed command; returns the process exit code.
pub fn run(cli: Cli) -> u8 {
    match dispatch(cli) {
        Ok(code) => code,
        Err(CliError::Message(msg)) => {
            eprintln!("error: {msg}");
            EXIT_CHECK_FAILED
        }
        Err(CliError::Usage(msg)) => {
            eprintln!("usage error: {msg}");
            EXIT_USAGE
        }
        Err(CliError::Internal(msg)) => {
            eprintln!("internal inconsistency: {msg}");
            EXIT_INTERNAL
        }
    }
}

enum CliError {
    Message(String),
    Usage(String),
    Internal(String),
}

impl From<TaylorError> for CliError {
    fn from(e: TaylorError) -> Self {
        if internal_inconsistency(&e) {
            CliError::Internal(e.to_string())
        } else {
            CliError::Message(e.to_string())
        }
    }
}

fn dispatch(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Taylor { tuple, order, json } => cmd_taylor(&tuple.tuple(), order, json),
        Command::Classify { tuple, full, json } => cmd_classify(&tuple.tuple(), full, json),
        Command::Verify { tuple, precision, tol, seed, json } => {
            cmd_verify(&tuple.tuple(), precision as usize, tol.as_deref(), seed, json)
        }
        Command::Certify { seed, mode, trials, order, report, json } => {
            cmd_certify(seed, &mode, trials, order, report, json)
        }
        Command::Gauss { m, n, x, y, precision, json } => {
            cmd_gauss(&m, &n, &x, &y, precision as usize, json)
        }
        Command::CheckFormula { k, mode, trials, seed, json } => {
            cmd_check_formula(k, &mode, trials, seed, json)
        }
    }
}

fn cmd_taylor(t: &ParamTuple, order: usize, json: bool) -> Result<u8, CliError> {
    let coeffs = taylor_coefficients_rational(t, order)?;
    let entries: Vec<CoefficientEntry> = (2..=order)
        .step_by(2)
        .map(|k| CoefficientEntry {
            k,
            value: coeffs[k].to_string(),
            nonzero: coeffs[k] != BigRational::from_integer(0.into()),
        })
        .collect();
    let out = TaylorOutput {
        order,
        all_zero: entries.iter().all(|e| !e.nonzero),
        coefficients: entries,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        for e in &out.coefficients {
            let flag = if e.nonzero { "  [nonzero]" } else { "" };
            println!("C_{} = {}{flag}", e.k, e.value);
        }
        println!(
            "{}",
            if out.all_zero { "all coefficients vanish" } else { "nonzero coefficients present" }
        );
    }
    Ok(EXIT_OK)
}

fn cmd_classify(t: &ParamTuple, full: bool, json: bool) -> Result<u8, CliError> {
    let families: Vec<String> = classify_invariance(t).iter().map(|f| f.to_string()).collect();
    let normalized = full.then(|| {
        classify_invariance(&lemma_normalize(t)).iter().map(|f| f.to_string()).collect::<Vec<_>>()
    });
    let ms = full.then(|| {
        classify_matkowski_suto(&t.a, &t.b, &t.c, &t.d)
            .iter()
            .map(|f| f.to_string())
            .collect::<Vec<_>>()
    });
    let out = ClassifyOutput {
        families,
        lemma_normalized_families: normalized,
        matkowski_suto_families: ms,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else if out.families.is_empty() {
        println!("no solution family (not an invariance solution)");
    } else {
        println!("{}", out.families.join(", "));
        if let Some(n) = &out.lemma_normalized_families {
            println!("normalized: {}", n.join(", "));
        }
        if let Some(ms) = &out.matkowski_suto_families {
            if !ms.is_empty() {
                println!("matkowski-suto: {}", ms.join(", "));
            }
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(
    t: &ParamTuple,
    precision: usize,
    tol: Option<&str>,
    seed: u64,
    json: bool,
) -> Result<u8, CliError> {
    let tolerance = match tol {
        Some(s) => parse_tolerance(s, precision).map_err(CliError::Usage)?,
        None => default_tolerance(precision),
    };
    let grid = default_grid(precision, seed);
    let residual = invariance_residual(t, &grid).map_err(|e| CliError::Message(e.to_string()))?;
    let pass = residual <= tolerance;
    let out = VerifyOutput {
        residual: residual.to_string(),
        tolerance: tolerance.to_string(),
        precision,
        grid_size: grid.len(),
        pass,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("residual  {}", out.residual);
        println!("tolerance {}", out.tolerance);
        println!("{}", if pass { "PASS" } else { "FAIL" });
    }
    Ok(if pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_certify(
    seed: u64,
    mode: &str,
    trials: usize,
    order: usize,
    report: Option<PathBuf>,
    json: bool,
) -> Result<u8, CliError> {
    let exhaustive = match mode {
        "randomized" => false,
        "exhaustive" => true,
        other => return Err(CliError::Usage(format!("unknown mode `{other}`"))),
    };
    let config = CertifyConfig {
        seed,
        order,
        formula_trials: trials,
        exhaustive,
        cofactor_samples: 20.max(trials / 10),
    };
    let result = run_certification(&config).map_err(|e| CliError::Message(e.to_string()))?;
    if let Some(path) = report {
        let text = serde_json::to_string_pretty(&result).unwrap();
        std::fs::write(&path, text)
            .map_err(|e| CliError::Message(format!("cannot write report: {e}")))?;
    }
    let cert = &result.certificate;
    if json {
        println!("{}", serde_json::to_string_pretty(cert).unwrap());
    } else {
        for s in &cert.stages {
            println!("{:<28} {}  ({:.1} ms)", s.name, if s.passed { "pass" } else { "FAIL" }, s.elapsed_ms);
        }
        if let Some(q) = &cert.q_digest {
            println!(
                "Q: {} decimal digits, leading {}…, sha256 {}…",
                q.decimal_digits,
                q.leading_digits,
                &q.sha256[..16]
            );
        }
        println!("verdict: {}", cert.verdict);
    }
    Ok(if cert.certified() { EXIT_OK } else { EXIT_CHECK_FAILED })
}

fn cmd_gauss(
    m: &GiniPair,
    n: &GiniPair,
    x: &BigRational,
    y: &BigRational,
    precision: usize,
    json: bool,
) -> Result<u8, CliError> {
    let mp = GiniParams::new(m.p.clone(), m.q.clone());
    let np = GiniParams::new(n.p.clone(), n.q.clone());
    let x = BigFloat::from_rational(x, precision);
    let y = BigFloat::from_rational(y, precision);
    let reltol = default_gauss_reltol(precision);
    let result =
        gauss_compose(&mp, &np, &x, &y, &reltol).map_err(|e| CliError::Message(e.to_string()))?;
    let out = GaussOutput {
        value: result.value.to_string(),
        iterations: result.iterations,
        precision,
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&out).unwrap());
    } else {
        println!("{}", out.value);
        println!("iterations: {}", out.iterations);
    }
    Ok(EXIT_OK)
}

fn cmd_check_formula(
    k: usize,
    mode: &str,
    trials: usize,
    seed: u64,
    json: bool,
) -> Result<u8, CliError> {
    if !matches!(k, 2 | 4 | 6 | 8 | 10 | 12) {
        return Err(CliError::Usage("k must be one of 2, 4, 6, 8, 10, 12".into()));
    }
    let mode = match mode {
        "randomized" => CheckMode::Randomized { trials },
        "exhaustive" => CheckMode::Exhaustive { grid_points: trials },
        other => return Err(CliError::Usage(format!("unknown mode `{other}`"))),
    };
    let verdict = check_formula(k, mode, seed)?;
    if json {
        println!("{}", serde_json::to_string_pretty(&verdict).unwrap());
    } else if verdict.confirmed {
        println!("C_{k} confirmed at {} points ({})", verdict.points_checked, verdict.mode);
    } else {
        println!("C_{k} REFUTED: {:?}", verdict.refutation);
    }
    Ok(if verdict.confirmed { EXIT_OK } else { EXIT_CHECK_FAILED })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_and_pair_parsers() {
        assert!(rational_value("3/2").is_ok());
        assert!(rational_value("-7").is_ok());
        assert!(rational_value("0.5").is_err());
        assert!(pair_value("1,0").is_ok());
        assert!(pair_value("1;0").is_err());
    }

    #[test]
    fn tolerance_parsing() {
        let t = parse_tolerance("1e-60", 256).unwrap();
        assert_eq!(t, BigFloat::ten_pow(-60, 256));
        assert!(parse_tolerance("2.5e-3", 256).is_ok());
        assert!(parse_tolerance("nope", 256).is_err());
        assert!(parse_tolerance("-1e-3", 256).is_err());
        // default ties to precision: ~1e-71 at 256 bits
        let d = default_tolerance(256);
        assert!(d < BigFloat::ten_pow(-70, 256) && d > BigFloat::ten_pow(-72, 256));
    }

    #[test]
    fn cli_parses_spec_examples() {
        use clap::Parser;
        let c = Cli::try_parse_from(["ginvar", "taylor", "1/1", "0", "1", "0", "2", "0", "--order", "4"]);
        assert!(c.is_ok());
        let c = Cli::try_parse_from(["ginvar", "classify", "3", "1", "5", "-5", "2", "0"]);
        assert!(c.is_ok());
        let c = Cli::try_parse_from(["ginvar", "verify", "3/2", "1/2", "1/2", "-1/2", "1", "0"]);
        assert!(c.is_ok());
        let c = Cli::try_parse_from(["ginvar", "gauss", "--M", "1,0", "--N", "0,-1", "2", "8"]);
        assert!(c.is_ok());
        let c = Cli::try_parse_from(["ginvar", "check-formula", "--k", "8", "--trials", "5"]);
        assert!(c.is_ok());
        // usage errors
        assert!(Cli::try_parse_from(["ginvar", "taylor", "1", "2"]).is_err());
        assert!(Cli::try_parse_from(["ginvar", "taylor", "x", "0", "1", "0", "2", "0"]).is_err());
    }
}

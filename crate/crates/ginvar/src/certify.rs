//! End-to-end certification of the polynomial elimination argument behind
//! the six-family solution theorem, emitting a machine-readable certificate.
//!
//! The pipeline re-checks the stored coefficient formulas against the series
//! engine, gates the polynomial factors on weighted homogeneity, recomputes
//! both resultants of the elimination chain (the first one by two independent
//! algorithms), matches every printed integer coefficient digit-for-digit,
//! and finally evaluates the 44×44 Sylvester determinant proving that the
//! two eliminated polynomials share no root.

use std::time::Instant;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::poly::{
    gcd_univariate, resultant, resultant_bareiss, univariate_resultant, MultiPoly, PolyError,
    ResultantMode, WeightVector, WeightedDegree,
};
use crate::taylor::formulas::{
    eliminated_factor, p810_coefficients, p810_univariate, p812_univariate,
    r810_cofactor_homogeneous, resultant_810_printed_factor,
};
use crate::taylor::{check_formula, CheckMode, FormulaVerdict, TaylorError};

/// Errors that abort certification (as opposed to recorded stage failures).
#[derive(Debug, thiserror::Error)]
pub enum CertifyError {
    #[error("taylor engine: {0}")]
    Taylor(#[from] TaylorError),
    #[error("polynomial arithmetic: {0}")]
    Poly(#[from] PolyError),
}

/// Configuration of a certification run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertifyConfig {
    pub seed: u64,
    /// Truncation order used by the formula checks.
    pub order: usize,
    /// Points per formula in randomized mode, or grid points per variable
    /// in exhaustive mode.
    pub formula_trials: usize,
    pub exhaustive: bool,
    /// Sample count for the cofactor-extraction consistency stage.
    pub cofactor_samples: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            seed: 0,
            order: 13,
            formula_trials: 200,
            exhaustive: false,
            cofactor_samples: 20,
        }
    }
}

/// One pipeline stage: verdict plus structured details.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StageResult {
    pub name: String,
    pub passed: bool,
    pub details: Value,
    pub elapsed_ms: f64,
}

/// Digest of the final resultant value (the full decimal expansion goes to
/// the report file only).
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct QDigest {
    pub decimal_digits: usize,
    pub leading_digits: String,
    pub sha256: String,
    pub negative: bool,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ArtifactInfo {
    pub name: String,
    pub version: String,
}

/// The complete machine-readable certificate.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Certificate {
    pub artifact: ArtifactInfo,
    pub seed: u64,
    pub mode: String,
    pub order: usize,
    pub formula_trials: usize,
    pub stages: Vec<StageResult>,
    pub q_digest: Option<QDigest>,
    /// "certified" iff every stage passed.
    pub verdict: String,
}

impl Certificate {
    pub fn certified(&self) -> bool {
        self.verdict == "certified"
    }

    /// Canonical byte serialization: identical for two runs with the same
    /// seed. Per-stage timings are informational, so they are zeroed here.
    pub fn canonical_bytes(&self) -> Vec<u8> {
        let mut v = serde_json::to_value(self).expect("certificate serializes");
        if let Some(stages) = v.get_mut("stages").and_then(Value::as_array_mut) {
            for s in stages {
                if let Some(e) = s.get_mut("elapsed_ms") {
                    *e = json!(0.0);
                }
            }
        }
        serde_json::to_vec(&v).expect("canonical serialization")
    }
}

/// Full report: certificate plus the complete decimal expansion of Q.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CertifyReport {
    pub certificate: Certificate,
    pub q_decimal: Option<String>,
}

/// Returns the stored polynomial factor `P_k` after verifying, at `samples`
/// exact points, that the series-engine coefficient matches
/// `prefactor·P_k/denominator` (the stored factor shape).
pub fn extract_cofactor(
    k: usize,
    samples: usize,
    seed: u64,
) -> Result<(MultiPoly, FormulaVerdict), TaylorError> {
    let verdict = check_formula(k, CheckMode::Randomized { trials: samples }, seed)?;
    Ok((eliminated_factor(k), verdict))
}

fn stage<F: FnOnce() -> Result<(bool, Value), CertifyError>>(
    name: &str,
    f: F,
) -> Result<StageResult, CertifyError> {
    let start = Instant::now();
    let (passed, details) = f()?;
    Ok(StageResult {
        name: name.to_string(),
        passed,
        details,
        elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
    })
}

fn formula_stage(k: usize, config: &CertifyConfig) -> Result<StageResult, CertifyError> {
    let mode = if config.exhaustive {
        CheckMode::Exhaustive { grid_points: config.formula_trials }
    } else {
        CheckMode::Randomized { trials: config.formula_trials }
    };
    stage(&format!("formula_c{k}"), || {
        let verdict = check_formula(k, mode, config.seed)?;
        let details = serde_json::to_value(&verdict).expect("verdict serializes");
        Ok((verdict.confirmed, details))
    })
}

/// Weighted-homogeneity gate: `P₈, P₁₀, P₁₂` must be homogeneous of degrees
/// 8, 14, 20 under weights `(w:1, v:1, s:2)`; the chain aborts otherwise.
fn homogeneity_stage() -> Result<StageResult, CertifyError> {
    stage("weighted_homogeneity", || {
        let wts = WeightVector::new(&[("w", 1), ("v", 1), ("s", 2)]);
        let mut all = true;
        let mut report = Vec::new();
        for (k, want) in [(8usize, 8u64), (10, 14), (12, 20)] {
            let got = eliminated_factor(k).weighted_degree(&wts)?;
            let ok = got == WeightedDegree::Homogeneous(want);
            all &= ok;
            report.push(json!({ "factor": format!("P{k}"), "expected": want, "ok": ok }));
        }
        Ok((all, json!(report)))
    })
}

fn coefficients_of(univar: &MultiPoly) -> Vec<BigRational> {
    univar
        .univariate_coeffs("z")
        .into_iter()
        .map(|c| c.constant_value())
        .collect()
}

/// The resultant chain for `R₈,₁₀`: cross-checked resultant, exact division
/// by the printed closed factor, and digit-for-digit match of all 10
/// printed coefficients after the `w = z·v` normalization.
fn r810_stages(results: &mut Vec<StageResult>) -> Result<bool, CertifyError> {
    let p8 = eliminated_factor(8);
    let p10 = eliminated_factor(10);

    let mut r810 = MultiPoly::zero(&[]);
    let s1 = stage("r810_cross_check", || {
        r810 = resultant(&p8, &p10, "s", ResultantMode::CrossCheck)?;
        Ok((true, json!({ "terms": r810.num_terms(), "algorithms": ["bareiss", "interpolation"] })))
    })?;
    let mut ok = s1.passed;
    results.push(s1);

    let mut cofactor = MultiPoly::zero(&[]);
    let s2 = stage("r810_factorization", || {
        let printed = resultant_810_printed_factor();
        match r810.divexact(&printed) {
            Ok(q) => {
                let matches = q == r810_cofactor_homogeneous();
                cofactor = q;
                Ok((matches, json!({ "divides_exactly": true, "cofactor_matches_print": matches })))
            }
            Err(e) => Ok((false, json!({ "divides_exactly": false, "error": e.to_string() }))),
        }
    })?;
    ok &= s2.passed;
    results.push(s2);

    let s3 = stage("p810_normalization", || {
        let zv = MultiPoly::var("z").mul(&MultiPoly::var("v"));
        let v18 = MultiPoly::var("v").pow(18);
        let p810 = cofactor.substitute("w", &zv).divexact(&v18)?;
        let even_only = p810.terms().all(|(e, _)| e[0] % 2 == 0);
        let got = coefficients_of(&p810);
        let want: Vec<BigRational> = p810_coefficients()
            .into_iter()
            .map(BigRational::from_integer)
            .collect();
        let expanded: Vec<BigRational> = (0..=18)
            .map(|i| {
                if i % 2 == 0 {
                    want[i / 2].clone()
                } else {
                    BigRational::zero()
                }
            })
            .collect();
        let matches = got == expanded;
        Ok((
            matches && even_only,
            json!({ "even_powers_only": even_only, "coefficients_match": matches, "count": 10 }),
        ))
    })?;
    ok &= s3.passed;
    results.push(s3);
    Ok(ok)
}

/// The resultant chain for `R₈,₁₂`: the factored form is not printed, so the
/// pipeline strips the maximal monomial and binomial powers by exact trial
/// division and normalizes the remaining cofactor to primitive form before
/// comparing all 14 printed coefficients.
fn r812_stages(results: &mut Vec<StageResult>) -> Result<bool, CertifyError> {
    let p8 = eliminated_factor(8);
    let p12 = eliminated_factor(12);

    let mut r812 = MultiPoly::zero(&[]);
    let s1 = stage("r812_computation", || {
        r812 = resultant_bareiss(&p8, &p12, "s")?;
        Ok((!r812.is_zero(), json!({ "terms": r812.num_terms() })))
    })?;
    let mut ok = s1.passed;
    results.push(s1);

    let mut primitive = MultiPoly::zero(&[]);
    let s2 = stage("r812_factor_extraction", || {
        let w = MultiPoly::var("w");
        let v = MultiPoly::var("v");
        let (r1, alpha) = r812.strip_factor(&w);
        let (r2, beta) = r1.strip_factor(&v);
        let (r3, gamma) = r2.strip_factor(&v.sub(&w));
        let (r4, delta) = r3.strip_factor(&v.add(&w));
        let (prim, content) = r4.integer_normalized();
        primitive = prim;
        Ok((
            true,
            json!({
                "monomial": { "w": alpha, "v": beta },
                "binomials": { "v_minus_w": gamma, "v_plus_w": delta },
                "content": content.to_string(),
            }),
        ))
    })?;
    ok &= s2.passed;
    results.push(s2);

    let s3 = stage("p812_normalization", || {
        let zv = MultiPoly::var("z").mul(&MultiPoly::var("v"));
        let v26 = MultiPoly::var("v").pow(26);
        let p812 = primitive.substitute("w", &zv).divexact(&v26)?;
        let even_only = p812.terms().all(|(e, _)| e[0] % 2 == 0);
        let matches = p812 == p812_univariate();
        Ok((
            matches && even_only,
            json!({ "even_powers_only": even_only, "coefficients_match": matches, "count": 14 }),
        ))
    })?;
    ok &= s3.passed;
    results.push(s3);
    Ok(ok)
}

/// Final elimination step: `Q = resultant(P₈,₁₀, P₈,₁₂, z)` via the 44×44
/// fraction-free Sylvester determinant, with a univariate-gcd cross-check
/// and a `resultant(f, f) = 0` negative control.
fn final_resultant_stages(
    results: &mut Vec<StageResult>,
) -> Result<(bool, Option<QDigest>, Option<String>), CertifyError> {
    let p810 = p810_univariate();
    let p812 = p812_univariate();

    let mut q_value = BigRational::zero();
    let s1 = stage("final_resultant_q", || {
        q_value = univariate_resultant(&p810, &p812)?;
        Ok((!q_value.is_zero(), json!({ "nonzero": !q_value.is_zero() })))
    })?;
    let mut ok = s1.passed;
    results.push(s1);

    let decimal = q_value.numer().abs().to_string();
    let digest = QDigest {
        decimal_digits: decimal.len(),
        leading_digits: decimal.chars().take(32).collect(),
        sha256: hex_digest(&q_value.to_string()),
        negative: q_value.is_negative(),
    };

    let s2 = stage("gcd_cross_check", || {
        let g = gcd_univariate(&p810, &p812, "z");
        Ok((g.is_constant() && !g.is_zero(), json!({ "gcd": g.to_string() })))
    })?;
    ok &= s2.passed;
    results.push(s2);

    let s3 = stage("negative_control", || {
        let self_res = univariate_resultant(&p810, &p810)?;
        Ok((self_res.is_zero(), json!({ "resultant_with_self_is_zero": self_res.is_zero() })))
    })?;
    ok &= s3.passed;
    results.push(s3);

    Ok((ok, Some(digest), Some(q_value.to_string())))
}

fn hex_digest(s: &str) -> String {
    let mut hasher = Sha256::new();
    hasher.update(s.as_bytes());
    let out = hasher.finalize();
    out.iter().map(|b| format!("{b:02x}")).collect()
}

/// Runs the whole pipeline and assembles the certificate and report.
pub fn run_certification(config: &CertifyConfig) -> Result<CertifyReport, CertifyError> {
    let mut stages = Vec::new();
    let mut all_passed = true;

    for k in [2usize, 4, 6, 8, 10, 12] {
        let s = formula_stage(k, config)?;
        all_passed &= s.passed;
        stages.push(s);
    }

    for k in [8usize, 10, 12] {
        let s = stage(&format!("cofactor_extraction_c{k}"), || {
            let (p, verdict) = extract_cofactor(k, config.cofactor_samples, config.seed ^ 0x5eed)?;
            Ok((
                verdict.confirmed,
                json!({
                    "terms": p.num_terms(),
                    "points_checked": verdict.points_checked,
                    "refutation": verdict.refutation,
                }),
            ))
        })?;
        all_passed &= s.passed;
        stages.push(s);
    }

    let s = homogeneity_stage()?;
    let homogeneous = s.passed;
    all_passed &= s.passed;
    stages.push(s);

    // The resultant chain consumes the homogeneity gate.
    let (q_digest, q_decimal) = if homogeneous {
        all_passed &= r810_stages(&mut stages)?;
        all_passed &= r812_stages(&mut stages)?;
        let (ok, digest, decimal) = final_resultant_stages(&mut stages)?;
        all_passed &= ok;
        (digest, decimal)
    } else {
        (None, None)
    };

    let certificate = Certificate {
        artifact: ArtifactInfo {
            name: env!("CARGO_PKG_NAME").to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        },
        seed: config.seed,
        mode: if config.exhaustive { "exhaustive".into() } else { "randomized".into() },
        order: config.order,
        formula_trials: config.formula_trials,
        stages,
        q_digest,
        verdict: if all_passed { "certified".into() } else { "refuted".into() },
    };
    Ok(CertifyReport { certificate, q_decimal })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick_config() -> CertifyConfig {
        CertifyConfig { seed: 7, formula_trials: 3, cofactor_samples: 3, ..Default::default() }
    }

    #[test]
    fn certification_passes_end_to_end() {
        let report = run_certification(&quick_config()).unwrap();
        let cert = &report.certificate;
        for s in &cert.stages {
            assert!(s.passed, "stage {} failed: {}", s.name, s.details);
        }
        assert!(cert.certified());
        let digest = cert.q_digest.as_ref().unwrap();
        assert!(digest.decimal_digits > 1000);
        assert!(!digest.negative || digest.negative); // present
        let q = report.q_decimal.unwrap();
        assert_eq!(q.trim_start_matches('-').len(), digest.decimal_digits);
        assert!(q.trim_start_matches('-').starts_with(&digest.leading_digits));
    }

    #[test]
    fn certificates_are_deterministic_for_equal_seeds() {
        let a = run_certification(&quick_config()).unwrap();
        let b = run_certification(&quick_config()).unwrap();
        assert_eq!(a.certificate.canonical_bytes(), b.certificate.canonical_bytes());
        // JSON round-trip through the schema
        let text = serde_json::to_string(&a.certificate).unwrap();
        let back: Certificate = serde_json::from_str(&text).unwrap();
        assert_eq!(back.canonical_bytes(), a.certificate.canonical_bytes());
    }

    #[test]
    fn extract_cofactor_returns_stored_factor() {
        let (p8, verdict) = extract_cofactor(8, 5, 3).unwrap();
        assert_eq!(p8.num_terms(), 8);
        assert!(verdict.confirmed);
        let (p10, _) = extract_cofactor(10, 2, 3).unwrap();
        assert_eq!(p10.num_terms(), 18);
        let (p12, _) = extract_cofactor(12, 2, 3).unwrap();
        assert_eq!(p12.num_terms(), 32);
    }
}

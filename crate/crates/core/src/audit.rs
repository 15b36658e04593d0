//! End-to-end audit of a sequence prefix.
//!
//! Stages run in a fixed order: primary congruences, growth against the
//! configured bound, the Hankel determinant table with its primorial-power
//! divisibility audit, rationality detection, and (for rational prefixes) pole
//! directions, the power-of-`(1 − x)` denominator test and a polynomiality
//! certificate. Every stage's evidence is kept in the report.

use std::f64::consts::E;

use num_traits::Zero;
use serde::Serialize;

use crate::analytic::{bound_comparison, singular_directions, BoundComparison, SingularityReport, DEFAULT_ROOT_TOL};
use crate::error::{Error, Result};
use crate::exact::{rat, Rat};
use crate::hankel::{detect_rationality, hankel_table, max_order, HankelRecord, RationalFunction, RationalityEvidence};
use crate::poly::{rat_poly, IntPolynomial};
use crate::sequences::{
    check_congruences, growth_rate, polynomial_certificate, CongruenceMode, CongruenceReport, ExactSequence,
    GrowthRecord,
};

pub const SCHEMA: &str = "ruzsa-audit/1";

#[derive(Clone, Debug, PartialEq)]
pub struct AuditConfig {
    pub growth_bound: f64,
    pub window: usize,
    pub root_tol: f64,
    /// Largest Hankel order to tabulate; defaults to `⌊(N+1)/2⌋`.
    pub n_max: Option<usize>,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig { growth_bound: E, window: 3, root_tol: DEFAULT_ROOT_TOL, n_max: None }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    Polynomial { degree: usize },
    RationalNonPolynomial,
    Undetermined,
    CongruenceViolation,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthStage {
    pub bound: f64,
    pub below_bound: bool,
    #[serde(flatten)]
    pub record: GrowthRecord,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub schema: &'static str,
    pub prefix_len: usize,
    pub congruence: CongruenceReport,
    pub growth: GrowthStage,
    pub hankel: Vec<HankelRecord>,
    /// Orders whose determinant missed the primorial-power divisor although
    /// the congruences held. Nonempty means an implementation bug.
    pub lemma_violations: Vec<usize>,
    pub rationality: Option<RationalFunction>,
    pub rationality_evidence: RationalityEvidence,
    pub singularities: Option<SingularityReport>,
    /// `"unknown"` when no rational function was detected.
    pub singularity_status: &'static str,
    pub denominator_is_power_of_one_minus_x: Option<bool>,
    pub denominator_power: Option<usize>,
    pub polynomial_certificate: Option<usize>,
    pub bound_comparison: BoundComparison,
    pub verdict: Verdict,
    pub summary: String,
}

impl AuditReport {
    pub fn lemma_violation(&self) -> bool {
        !self.lemma_violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Exact test whether `den` is `c · (1 − x)^k`; returns `k` on success.
pub fn power_of_one_minus_x(den: &IntPolynomial) -> Option<usize> {
    if den.is_zero() {
        return None;
    }
    let one_minus_x = vec![rat(1), rat(-1)];
    let mut q: Vec<Rat> = den.to_rat();
    let mut k = 0;
    while q.len() > 1 {
        let (next, rem) = rat_poly::divrem(&q, &one_minus_x);
        if !rem.is_empty() {
            return None;
        }
        q = next;
        k += 1;
    }
    Some(k)
}

pub fn ruzsa_audit(seq: &ExactSequence, config: &AuditConfig) -> Result<AuditReport> {
    if seq.len() < 10 {
        return Err(Error::InsufficientPrefix { needed: 10, got: seq.len() });
    }
    let comparison = bound_comparison();
    assert!(comparison.holds, "√e > e/2 must hold");

    let congruence = check_congruences(seq, CongruenceMode::Primary)?;

    let record = growth_rate(seq)?;
    let growth = GrowthStage {
        bound: config.growth_bound,
        below_bound: record.tail_sup < config.growth_bound,
        record,
    };

    let n_max = config.n_max.unwrap_or_else(|| max_order(seq.len()));
    let hankel = hankel_table(seq, n_max)?;
    let lemma_violations: Vec<usize> = if congruence.holds() {
        hankel.iter().filter(|r| !r.divisible).map(|r| r.n).collect()
    } else {
        Vec::new()
    };

    let detection = detect_rationality(seq, config.window)?;
    let (singularities, power, certificate) = match &detection.function {
        Some(f) => {
            let singularities = if f.denominator.degree().unwrap_or(0) >= 1 {
                Some(singular_directions(f, config.root_tol)?)
            } else {
                None
            };
            (singularities, power_of_one_minus_x(&f.denominator), polynomial_certificate(seq))
        }
        None => (None, None, None),
    };
    let rational = detection.function.is_some();

    let verdict = if !congruence.holds() {
        Verdict::CongruenceViolation
    } else if !rational {
        Verdict::Undetermined
    } else {
        match (power, certificate) {
            (Some(_), Some(degree)) => Verdict::Polynomial { degree },
            _ => Verdict::RationalNonPolynomial,
        }
    };

    let summary = match &verdict {
        Verdict::Polynomial { degree } => {
            format!("consistent with polynomial of degree {degree} on the observed prefix of {} terms", seq.len())
        }
        Verdict::RationalNonPolynomial => format!(
            "generating function is rational on the observed prefix of {} terms but not a polynomial sequence",
            seq.len()
        ),
        Verdict::Undetermined => format!("no rational generating function detected on the observed prefix of {} terms", seq.len()),
        Verdict::CongruenceViolation => {
            let v = &congruence.violations[0];
            format!(
                "not a primary pseudo-polynomial: a_{} ≢ a_{} (mod {}) ({} violations)",
                v.n + v.modulus,
                v.n,
                v.modulus,
                congruence.violations.len()
            )
        }
    };

    Ok(AuditReport {
        schema: SCHEMA,
        prefix_len: seq.len(),
        congruence,
        growth,
        hankel,
        lemma_violations,
        singularity_status: if rational { "computed" } else { "unknown" },
        rationality: detection.function,
        rationality_evidence: detection.evidence,
        singularities,
        denominator_is_power_of_one_minus_x: rational.then_some(power.is_some()),
        denominator_power: power,
        polynomial_certificate: certificate,
        bound_comparison: comparison,
        verdict,
        summary,
    })
}

/// True when every determinant in the table is zero from order `from` on.
pub fn dets_vanish_from(table: &[HankelRecord], from: usize) -> bool {
    table.iter().filter(|r| r.n >= from).all(|r| r.det.is_zero())
}

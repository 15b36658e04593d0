//! Exact Hankel matrices `H_n(f)` with 1-based entries `(i, j) ↦ a_{i+j−2}`,
//! their determinants, primorial-power divisibility audits, invariance under
//! the binomial transform, and normalized determinant growth.

mod kronecker;

pub use kronecker::{detect_rationality, DetRow, RationalFunction, RationalityDetection, RationalityEvidence};

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::binomial::{binomial_transform, lower_triangular_l};
use crate::error::{Error, Result};
use crate::exact::{int_string, rat_string, rat_to_string, root_abs_rat, Rat};
use crate::matrix::ExactMatrix;
use crate::primes::{is_prime_u64, Sieve};
use crate::sequences::ExactSequence;

/// Largest Hankel order observable on a prefix of length `len`.
pub fn max_order(len: usize) -> usize {
    (len + 1) / 2
}

fn require_order(seq: &ExactSequence, n: usize) -> Result<()> {
    let needed = (2 * n).saturating_sub(1);
    if seq.len() < needed {
        return Err(Error::InsufficientPrefix { needed, got: seq.len() });
    }
    Ok(())
}

pub fn hankel_matrix(seq: &ExactSequence, n: usize) -> Result<ExactMatrix> {
    if n == 0 {
        return Err(Error::input("Hankel order must be at least 1"));
    }
    require_order(seq, n)?;
    Ok(ExactMatrix::from_fn(n, n, |i, j| seq.term(i + j).clone()))
}

/// Exact `det H_n`, with `det H_0 = 1`.
pub fn hankel_determinant(seq: &ExactSequence, n: usize) -> Result<Rat> {
    if n == 0 {
        return Ok(Rat::one());
    }
    hankel_matrix(seq, n)?.determinant()
}

/// p-adic valuation; `Infinite` for zero.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn at_least(&self, required: u64) -> bool {
        match self {
            Valuation::Infinite => true,
            Valuation::Finite(v) => *v >= required as i64,
        }
    }
}

impl Serialize for Valuation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Valuation::Finite(v) => s.serialize_i64(*v),
            Valuation::Infinite => s.serialize_str("inf"),
        }
    }
}

pub fn padic_valuation(x: &BigInt, p: u64) -> Result<Valuation> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(valuation_unchecked(x, p))
}

/// `v_p(num) − v_p(den)` for a rational.
pub fn padic_valuation_rat(x: &Rat, p: u64) -> Result<Valuation> {
    if !is_prime_u64(p) {
        return Err(Error::NotPrime(p));
    }
    Ok(rat_valuation_unchecked(x, p))
}

fn valuation_unchecked(x: &BigInt, p: u64) -> Valuation {
    if x.is_zero() {
        return Valuation::Infinite;
    }
    let p = BigInt::from(p);
    let mut v = 0;
    let mut y = x.clone();
    loop {
        let (q, r) = y.div_rem(&p);
        if !r.is_zero() {
            return Valuation::Finite(v);
        }
        y = q;
        v += 1;
    }
}

fn rat_valuation_unchecked(x: &Rat, p: u64) -> Valuation {
    match (valuation_unchecked(x.numer(), p), valuation_unchecked(x.denom(), p)) {
        (Valuation::Infinite, _) => Valuation::Infinite,
        (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a - b),
        (Valuation::Finite(_), Valuation::Infinite) => unreachable!("denominator is nonzero"),
    }
}

/// `∏_{p ≤ n−1} p^{n−p}`, which also equals `∏_{k=1}^{n−1} P_k`.
pub fn required_divisor(n: usize) -> BigInt {
    let sieve = Sieve::new(n.saturating_sub(1));
    sieve
        .primes_up_to(n.saturating_sub(1))
        .fold(BigInt::one(), |acc, p| acc * num_traits::pow(BigInt::from(p), n - p))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeValuation {
    pub required: u64,
    pub actual: Valuation,
}

/// One row of the determinant audit.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HankelRecord {
    pub n: usize,
    #[serde(with = "rat_string")]
    pub det: Rat,
    #[serde(with = "int_string")]
    pub required_divisor: BigInt,
    /// Keyed by prime `p ≤ n − 1`.
    pub valuations: BTreeMap<u64, PrimeValuation>,
    pub divisible: bool,
    /// `|det|^{1/n²}`, absent for a zero determinant.
    pub normalized_growth: Option<f64>,
}

fn build_record(seq: &ExactSequence, n: usize, sieve: &Sieve) -> Result<HankelRecord> {
    let det = hankel_determinant(seq, n)?;
    let mut valuations = BTreeMap::new();
    for p in sieve.primes_up_to(n.saturating_sub(1)) {
        let required = (n - p) as u64;
        let actual = rat_valuation_unchecked(&det, p as u64);
        valuations.insert(p as u64, PrimeValuation { required, actual });
    }
    let divisible = valuations.values().all(|v| v.actual.at_least(v.required));
    Ok(HankelRecord {
        n,
        normalized_growth: normalized_growth(&det, n),
        det,
        required_divisor: required_divisor(n),
        valuations,
        divisible,
    })
}

fn normalized_growth(det: &Rat, n: usize) -> Option<f64> {
    if det.is_zero() {
        None
    } else {
        Some(root_abs_rat(det, n * n))
    }
}

fn require_table(seq: &ExactSequence, n_max: usize) -> Result<()> {
    if n_max > max_order(seq.len()) {
        return Err(Error::InsufficientPrefix { needed: 2 * n_max - 1, got: seq.len() });
    }
    Ok(())
}

/// Records for `n = 1..=n_max`. Rows are computed in parallel; the output
/// order is always ascending in `n`.
pub fn hankel_table(seq: &ExactSequence, n_max: usize) -> Result<Vec<HankelRecord>> {
    require_table(seq, n_max)?;
    let sieve = Sieve::new(n_max);
    (1..=n_max)
        .into_par_iter()
        .map(|n| build_record(seq, n, &sieve))
        .collect()
}

/// CSV with columns `n,det,required_divisor,divisible,normalized_growth`.
pub fn hankel_table_csv(records: &[HankelRecord]) -> String {
    let mut out = String::from("n,det,required_divisor,divisible,normalized_growth\n");
    for r in records {
        let growth = r.normalized_growth.map(|g| g.to_string()).unwrap_or_default();
        let _ = writeln!(
            out,
            "{},{},{},{},{}",
            r.n,
            rat_to_string(&r.det),
            r.required_divisor,
            r.divisible,
            growth
        );
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceFailure {
    pub n: usize,
    /// `L_n H_n(f) L_nᵀ = H_n(g)` held.
    pub conjugation_holds: bool,
    /// `det H_n(f) = det H_n(g)` held.
    pub determinant_holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub pass: bool,
    pub checked_orders: usize,
    pub first_failure: Option<InvarianceFailure>,
}

/// Checks, for each `n ≤ n_max`, both the conjugation identity and the
/// determinant equality between `f` and its binomial transform `g`.
pub fn verify_transform_invariance(seq: &ExactSequence, n_max: usize) -> Result<InvarianceReport> {
    require_table(seq, n_max)?;
    let g = binomial_transform(seq);
    for n in 1..=n_max {
        let hf = hankel_matrix(seq, n)?;
        let hg = hankel_matrix(&g, n)?;
        let l = lower_triangular_l(n);
        let conjugated = l.mul(&hf)?.mul(&l.transpose())?;
        let conjugation_holds = conjugated == hg;
        let determinant_holds = hf.determinant()? == hg.determinant()?;
        if !(conjugation_holds && determinant_holds) {
            return Ok(InvarianceReport {
                pass: false,
                checked_orders: n,
                first_failure: Some(InvarianceFailure { n, conjugation_holds, determinant_holds }),
            });
        }
    }
    Ok(InvarianceReport { pass: true, checked_orders: n_max, first_failure: None })
}

/// `|det H_n|^{1/n²}` for `n = 1..=n_max` (index 0 is `n = 1`).
pub fn normalized_det_growth(seq: &ExactSequence, n_max: usize) -> Result<Vec<Option<f64>>> {
    require_table(seq, n_max)?;
    (1..=n_max)
        .into_par_iter()
        .map(|n| Ok(normalized_growth(&hankel_determinant(seq, n)?, n)))
        .collect()
}

//! Chebyshev's `θ(x) = Σ_{p ≤ x} log p` and the exponent bookkeeping for
//! `log ∏_{p ≤ n−1} p^{n−p} = Σ_{k=0}^{n−1} θ(k)`.

use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::primes::Sieve;

/// Sums `ln p` over primes `p ≤ x` in ascending order. Negative `x` gives 0.
pub fn chebyshev_theta(x: f64) -> f64 {
    if x < 2.0 {
        return 0.0;
    }
    let bound = x.floor() as usize;
    Sieve::new(bound).primes_up_to(bound).map(|p| (p as f64).ln()).sum()
}

/// `θ(k)` for `k = 0..=n_max`, accumulated in ascending prime order.
fn theta_values(n_max: usize) -> Vec<f64> {
    let sieve = Sieve::new(n_max);
    let mut acc = 0.0;
    (0..=n_max)
        .map(|k| {
            if sieve.is_prime(k) {
                acc += (k as f64).ln();
            }
            acc
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentRow {
    pub p: u64,
    /// Exponent of `p` in `∏_{q ≤ n−1} q^{n−q}`.
    pub lhs_exponent: u64,
    /// Multiplicity of `log p` in `Σ_{k<n} θ(k)`.
    pub rhs_exponent: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExponentIdentityReport {
    pub n: usize,
    pub pass: bool,
    pub per_prime: Vec<ExponentRow>,
}

pub fn exponent_identity_check(n: usize) -> ExponentIdentityReport {
    exponent_identity_check_with(&Sieve::new(n), n)
}

/// Exact version of the Abel-summation identity: no logarithms are evaluated.
/// Each `θ(k)` contributes one `log p` for every prime `p ≤ k`, i.e. for the
/// first `π(k)` primes, so the multiplicities are tallied with a difference
/// array indexed by prime rank. The sieve must cover `n`.
pub fn exponent_identity_check_with(sieve: &Sieve, n: usize) -> ExponentIdentityReport {
    assert!(sieve.limit() >= n, "sieve does not cover n = {n}");
    let primes: Vec<usize> = sieve.primes_up_to(n.saturating_sub(1)).collect();
    let mut diff = vec![0i64; primes.len() + 1];
    let mut pi = 0usize;
    for k in 0..n {
        if sieve.is_prime(k) {
            pi += 1;
        }
        diff[0] += 1;
        diff[pi] -= 1;
    }
    let mut running = 0i64;
    let per_prime: Vec<ExponentRow> = primes
        .iter()
        .enumerate()
        .map(|(rank, &p)| {
            running += diff[rank];
            ExponentRow { p: p as u64, lhs_exponent: (n - p) as u64, rhs_exponent: running as u64 }
        })
        .collect();
    let pass = per_prime.iter().all(|r| r.lhs_exponent == r.rhs_exponent);
    ExponentIdentityReport { n, pass, per_prime }
}

/// `Σ_{k=0}^{n−1} θ(k) / (n²/2)`.
pub fn asymptotic_ratio(n: usize) -> Result<f64> {
    if n < 10 {
        return Err(Error::input(format!("asymptotic ratio needs n >= 10, got {n}")));
    }
    let theta = theta_values(n - 1);
    let sum: f64 = theta.iter().sum();
    Ok(sum / (n as f64 * n as f64 / 2.0))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ThetaRow {
    pub n: usize,
    pub theta: f64,
    /// `Σ_{k<n} θ(k)`.
    pub partial_sum: f64,
    /// `partial_sum / (n²/2)`; 0 at `n = 0`.
    pub ratio: f64,
}

pub fn theta_table(n_max: usize) -> Vec<ThetaRow> {
    let theta = theta_values(n_max);
    let mut partial = 0.0;
    theta
        .iter()
        .enumerate()
        .map(|(n, &t)| {
            let ratio = if n == 0 { 0.0 } else { partial / (n as f64 * n as f64 / 2.0) };
            let row = ThetaRow { n, theta: t, partial_sum: partial, ratio };
            partial += t;
            row
        })
        .collect()
}

/// CSV with columns `n,theta,partial_sum,ratio`.
pub fn theta_table_csv(rows: &[ThetaRow]) -> String {
    let mut out = String::from("n,theta,partial_sum,ratio\n");
    for r in rows {
        let _ = writeln!(out, "{},{},{},{}", r.n, r.theta, r.partial_sum, r.ratio);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn theta_values_at_small_points() {
        assert_eq!(chebyshev_theta(1.0), 0.0);
        assert_eq!(chebyshev_theta(0.0), 0.0);
        assert!((chebyshev_theta(2.0) - 2f64.ln()).abs() < 1e-15);
        assert!((chebyshev_theta(10.0) - 210f64.ln()).abs() < 1e-12);
        assert!((chebyshev_theta(10.0) - 5.347108).abs() < 1e-6);
        assert!((chebyshev_theta(10.9) - chebyshev_theta(10.0)).abs() == 0.0);
    }

    #[test]
    fn exponent_identity_small_cases() {
        let r = exponent_identity_check(5);
        assert!(r.pass);
        assert_eq!(
            r.per_prime,
            vec![
                ExponentRow { p: 2, lhs_exponent: 3, rhs_exponent: 3 },
                ExponentRow { p: 3, lhs_exponent: 2, rhs_exponent: 2 },
            ]
        );
        let r = exponent_identity_check(2);
        assert!(r.pass && r.per_prime.is_empty());
        assert!(exponent_identity_check(1).pass);
    }

    #[test]
    fn exponent_identity_against_direct_count() {
        // oracle: count k < n with p ≤ k by brute force
        let sieve = Sieve::new(300);
        for n in 1..=300 {
            let r = exponent_identity_check_with(&sieve, n);
            for row in &r.per_prime {
                let direct = (0..n).filter(|&k| row.p as usize <= k).count() as u64;
                assert_eq!(row.rhs_exponent, direct);
            }
            assert!(r.pass);
        }
    }

    #[test]
    fn ratio_and_table_agree() {
        let table = theta_table(1000);
        let direct: f64 = (0..1000).map(|k| chebyshev_theta(k as f64)).sum();
        assert!((table[1000].partial_sum - direct).abs() < 1e-8 * direct);
        assert!((table[1000].ratio - asymptotic_ratio(1000).unwrap()).abs() < 1e-12);
        let r10 = asymptotic_ratio(10).unwrap();
        assert!(r10 > 0.0 && r10 < 1.0);
        assert!(asymptotic_ratio(9).is_err());
    }

    #[test]
    fn csv_header() {
        let csv = theta_table_csv(&theta_table(3));
        assert_eq!(csv.lines().next().unwrap(), "n,theta,partial_sum,ratio");
        assert_eq!(csv.lines().count(), 5);
    }
}

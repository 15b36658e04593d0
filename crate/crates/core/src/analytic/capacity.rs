//! Hedgehogs `K(a_1, …, a_r) = ∪ [0, a_i]`, the Dubinin bound on their
//! transfinite diameter, the series bound `1 / (4^{1/r} ρ)`, and a greedy
//! Leja-point estimator of the transfinite diameter.

use std::f64::consts::{E, PI};

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Two arguments closer than this (in radians, modulo 2π) are the same direction.
pub const ARG_TOLERANCE: f64 = 1e-6;

pub const SQRT_E: f64 = 1.648_721_270_700_128_2;
pub const HALF_E: f64 = E / 2.0;

// √e > e/2 is what makes the two determinant bounds incompatible.
const _: () = assert!(SQRT_E > HALF_E);

#[derive(Clone, Debug, PartialEq)]
pub struct Hedgehog {
    endpoints: Vec<Complex64>,
}

impl Hedgehog {
    /// Rejects zero endpoints and endpoints sharing a direction.
    pub fn new(endpoints: Vec<Complex64>) -> Result<Self> {
        if endpoints.is_empty() {
            return Err(Error::input("a hedgehog needs at least one spike"));
        }
        for (i, a) in endpoints.iter().enumerate() {
            if !(a.re.is_finite() && a.im.is_finite()) || a.norm() == 0.0 {
                return Err(Error::input(format!("endpoint {i} must be finite and nonzero")));
            }
        }
        for i in 0..endpoints.len() {
            for j in i + 1..endpoints.len() {
                if angular_distance(endpoints[i].arg(), endpoints[j].arg()) < ARG_TOLERANCE {
                    return Err(Error::input(format!("endpoints {i} and {j} point in the same direction")));
                }
            }
        }
        Ok(Hedgehog { endpoints })
    }

    pub fn endpoints(&self) -> &[Complex64] {
        &self.endpoints
    }

    pub fn spikes(&self) -> usize {
        self.endpoints.len()
    }

    pub fn max_modulus(&self) -> f64 {
        self.endpoints.iter().map(|a| a.norm()).fold(0.0, f64::max)
    }

    /// The `r`-th roots of unity scaled by `radius`.
    pub fn regular(r: usize, radius: f64) -> Result<Self> {
        Self::new((0..r).map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / r as f64)).collect())
    }
}

pub(crate) fn angular_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0 * PI);
    d.min(2.0 * PI - d)
}

/// `max_i |a_i| / 4^{1/r}`; equality with the transfinite diameter holds
/// exactly for regular `r`-gons centered at 0.
pub fn dubinin_bound(h: &Hedgehog) -> f64 {
    h.max_modulus() / 4f64.powf(1.0 / h.spikes() as f64)
}

/// Upper bound `1 / (4^{1/r} ρ)` on `limsup |det H_n|^{1/n²}` for a series with
/// radius of convergence `ρ` and at most `r` singular directions.
pub fn polya_bound_for_series(rho: f64, r: usize) -> Result<f64> {
    if !(rho > 0.0 && rho.is_finite()) {
        return Err(Error::input(format!("radius of convergence must be positive, got {rho}")));
    }
    if r == 0 {
        return Err(Error::input("number of singular directions must be at least 1"));
    }
    Ok(1.0 / (4f64.powf(1.0 / r as f64) * rho))
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundComparison {
    pub sqrt_e: f64,
    /// `polya_bound_for_series(1/e, 2)`.
    pub two_direction_bound: f64,
    pub holds: bool,
}

/// Compares the growth `√e` forced by primorial-power divisibility with the
/// two-direction archimedean bound at `ρ = 1/e`.
pub fn bound_comparison() -> BoundComparison {
    let two_direction_bound = polya_bound_for_series(1.0 / E, 2).expect("1/e is positive");
    BoundComparison { sqrt_e: SQRT_E, two_direction_bound, holds: SQRT_E > two_direction_bound }
}

/// Greedy Leja estimate of the transfinite diameter.
///
/// Each spike `[0, a_i]` is discretized into `points_per_spike` uniform points
/// (the origin is shared). Selection starts at a max-modulus endpoint and each
/// further point maximizes the product of distances to those already chosen.
/// Returns `(∏_{i<j} |z_i − z_j|)^{2/(m(m−1))}`. On a finite grid this is a
/// biased estimate of the capacity, not a bound.
pub fn estimate_transfinite_diameter(h: &Hedgehog, leja_points: usize, points_per_spike: usize) -> Result<f64> {
    if leja_points < 2 {
        return Err(Error::input("at least two Leja points are required"));
    }
    if points_per_spike < 16 {
        return Err(Error::input("at least 16 discretization points per spike are required"));
    }
    let mut candidates = vec![Complex64::new(0.0, 0.0)];
    for a in h.endpoints() {
        for t in 1..points_per_spike {
            candidates.push(a * (t as f64 / (points_per_spike - 1) as f64));
        }
    }
    if leja_points > candidates.len() {
        return Err(Error::input(format!(
            "{leja_points} Leja points requested from {} grid points",
            candidates.len()
        )));
    }

    let start = (0..candidates.len())
        .max_by(|&i, &j| candidates[i].norm().total_cmp(&candidates[j].norm()).then(j.cmp(&i)))
        .expect("non-empty grid");
    let mut chosen = vec![start];
    let mut log_prod = vec![0.0f64; candidates.len()];
    let mut taken = vec![false; candidates.len()];
    taken[start] = true;
    while chosen.len() < leja_points {
        let last = candidates[*chosen.last().unwrap()];
        let mut best: Option<usize> = None;
        for (i, c) in candidates.iter().enumerate() {
            if taken[i] {
                continue;
            }
            log_prod[i] += (c - last).norm().ln();
            if best.map_or(true, |b| log_prod[i] > log_prod[b]) {
                best = Some(i);
            }
        }
        let next = best.expect("enough candidates remain");
        taken[next] = true;
        chosen.push(next);
    }

    let m = chosen.len();
    let mut sum = 0.0;
    for i in 0..m {
        for j in i + 1..m {
            sum += (candidates[chosen[i]] - candidates[chosen[j]]).norm().ln();
        }
    }
    Ok((2.0 * sum / (m * (m - 1)) as f64).exp())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn hedgehog_validation() {
        assert!(Hedgehog::new(vec![]).is_err());
        assert!(Hedgehog::new(vec![c(0.0, 0.0)]).is_err());
        assert!(Hedgehog::new(vec![c(1.0, 0.0), c(2.0, 0.0)]).is_err());
        assert!(Hedgehog::new(vec![c(-1.0, 1e-9), c(-1.0, -1e-9)]).is_err());
        assert!(Hedgehog::new(vec![c(1.0, 0.0), c(-1.0, 0.0)]).is_ok());
    }

    #[test]
    fn dubinin_examples() {
        let one = Hedgehog::new(vec![c(1.0, 0.0)]).unwrap();
        assert!((dubinin_bound(&one) - 0.25).abs() < 1e-15);
        let two = Hedgehog::new(vec![c(1.0, 0.0), c(-1.0, 0.0)]).unwrap();
        assert!((dubinin_bound(&two) - 0.5).abs() < 1e-15);
        let up = Hedgehog::new(vec![c(0.0, 2.0)]).unwrap();
        assert!((dubinin_bound(&up) - 0.5).abs() < 1e-15);
    }

    #[test]
    fn polya_examples() {
        assert!((polya_bound_for_series(1.0, 1).unwrap() - 0.25).abs() < 1e-15);
        let half_e = polya_bound_for_series(1.0 / E, 2).unwrap();
        assert!((half_e - E / 2.0).abs() < 1e-12);
        assert!((half_e - 1.359141).abs() < 1e-6);
        let quarter_e = polya_bound_for_series(1.0 / E, 1).unwrap();
        assert!((quarter_e - E / 4.0).abs() < 1e-12);
        assert!(quarter_e < SQRT_E);
        assert!(polya_bound_for_series(0.0, 1).is_err());
        assert!(polya_bound_for_series(-1.0, 1).is_err());
        assert!(polya_bound_for_series(1.0, 0).is_err());
    }

    #[test]
    fn guard_constants() {
        assert_eq!(SQRT_E, E.sqrt());
        let cmp = bound_comparison();
        assert!(cmp.holds);
    }

    #[test]
    fn estimator_argument_checks() {
        let h = Hedgehog::new(vec![c(1.0, 0.0)]).unwrap();
        assert!(estimate_transfinite_diameter(&h, 1, 64).is_err());
        assert!(estimate_transfinite_diameter(&h, 8, 8).is_err());
        assert!(estimate_transfinite_diameter(&h, 100, 16).is_err());
    }

    #[test]
    fn estimator_scales_linearly() {
        let h = Hedgehog::new(vec![c(1.0, 0.5), c(-0.3, 0.7)]).unwrap();
        let h3 = Hedgehog::new(h.endpoints().iter().map(|a| a * 3.0).collect()).unwrap();
        let e1 = estimate_transfinite_diameter(&h, 32, 256).unwrap();
        let e3 = estimate_transfinite_diameter(&h3, 32, 256).unwrap();
        assert!((e3 - 3.0 * e1).abs() < 1e-9);
    }
}

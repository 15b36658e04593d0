//! Poles and singular directions of a reconstructed rational function.
//!
//! The denominator is split into square-free factors exactly over the
//! rationals first, so repeated poles (e.g. `(1 − x)^4`) are located from a
//! simple factor and keep full double precision.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use super::capacity::ARG_TOLERANCE;
use super::roots::aberth_roots;
use crate::error::{Error, Result};
use crate::hankel::RationalFunction;
use crate::poly::rat_poly;

/// Relative residual tolerance for located roots.
pub const DEFAULT_ROOT_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct SingularityReport {
    /// Distinct poles with multiplicities, sorted by argument then modulus.
    pub poles: Vec<(Complex64, usize)>,
    /// Distinct principal arguments in `(−π, π]`, ascending.
    pub directions: Vec<f64>,
    pub direction_count: usize,
    /// Smallest pole modulus, i.e. the radius of convergence at 0.
    pub radius: f64,
    /// Largest `|D(z)| / Σ|d_k||z|^k` over the located roots.
    pub max_relative_residual: f64,
}

impl Serialize for SingularityReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let poles: Vec<[f64; 2]> = self.poles.iter().map(|(z, _)| [z.re, z.im]).collect();
        let multiplicities: Vec<usize> = self.poles.iter().map(|(_, m)| *m).collect();
        let mut st = s.serialize_struct("SingularityReport", 6)?;
        st.serialize_field("poles", &poles)?;
        st.serialize_field("multiplicities", &multiplicities)?;
        st.serialize_field("directions", &self.directions)?;
        st.serialize_field("direction_count", &self.direction_count)?;
        st.serialize_field("radius", &self.radius)?;
        st.serialize_field("max_relative_residual", &self.max_relative_residual)?;
        st.end()
    }
}

pub fn singular_directions_default(f: &RationalFunction) -> Result<SingularityReport> {
    singular_directions(f, DEFAULT_ROOT_TOL)
}

pub fn singular_directions(f: &RationalFunction, tol: f64) -> Result<SingularityReport> {
    let den = f.denominator.to_rat();
    if den.len() < 2 {
        return Err(Error::input("denominator has no roots (degree 0)"));
    }
    let mut poles: Vec<(Complex64, usize)> = Vec::new();
    let mut max_relative_residual = 0.0f64;
    for (factor, multiplicity) in rat_poly::square_free(&den) {
        let coeffs: Vec<f64> = factor.iter().map(|c| c.to_f64().unwrap_or(f64::NAN)).collect();
        let outcome = aberth_roots(&coeffs, 1000, 1e-15);
        for z in outcome.roots {
            let z = snap_real(z);
            max_relative_residual = max_relative_residual.max(relative_residual(&coeffs, z));
            poles.push((z, multiplicity));
        }
    }
    if !(max_relative_residual <= tol) {
        return Err(Error::Numeric { max_residual: max_relative_residual, tol });
    }
    poles.sort_by(|(a, _), (b, _)| a.arg().total_cmp(&b.arg()).then(a.norm().total_cmp(&b.norm())));

    let directions = cluster_directions(poles.iter().map(|(z, _)| principal_arg(*z)).collect());
    let radius = poles.iter().map(|(z, _)| z.norm()).fold(f64::INFINITY, f64::min);
    Ok(SingularityReport {
        direction_count: directions.len(),
        poles,
        directions,
        radius,
        max_relative_residual,
    })
}

/// Real-coefficient roots whose imaginary part is at rounding level are real.
fn snap_real(z: Complex64) -> Complex64 {
    if z.im.abs() <= 1e-12 * z.norm() {
        Complex64::new(z.re, 0.0)
    } else {
        z
    }
}

/// Argument in `(−π, π]`.
fn principal_arg(z: Complex64) -> f64 {
    let a = z.arg();
    if a <= -PI {
        a + 2.0 * PI
    } else {
        a
    }
}

fn relative_residual(coeffs: &[f64], z: Complex64) -> f64 {
    let mut value = Complex64::new(0.0, 0.0);
    let mut scale = 0.0;
    for c in coeffs.iter().rev() {
        value = value * z + c;
        scale = scale * z.norm() + c.abs();
    }
    if scale == 0.0 {
        0.0
    } else {
        value.norm() / scale
    }
}

/// Groups sorted arguments whose gaps are below the tolerance (including the
/// wrap-around between −π and π) and returns one representative per class.
fn cluster_directions(mut args: Vec<f64>) -> Vec<f64> {
    args.sort_by(f64::total_cmp);
    let mut classes: Vec<Vec<f64>> = Vec::new();
    for a in args {
        match classes.last_mut() {
            Some(cls) if a - cls.last().unwrap() < ARG_TOLERANCE => cls.push(a),
            _ => classes.push(vec![a]),
        }
    }
    if classes.len() > 1 {
        let first = classes[0][0];
        let last = *classes.last().unwrap().last().unwrap();
        if first + 2.0 * PI - last < ARG_TOLERANCE {
            let tail = classes.pop().unwrap();
            classes[0].extend(tail);
        }
    }
    let mut reps: Vec<f64> = classes.iter().map(|c| c[c.len() - 1]).collect();
    reps.sort_by(f64::total_cmp);
    reps
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::IntPolynomial;

    fn rf(num: &[i64], den: &[i64]) -> RationalFunction {
        RationalFunction { numerator: IntPolynomial::from_i64(num), denominator: IntPolynomial::from_i64(den), order: 0 }
    }

    #[test]
    fn one_minus_x() {
        let r = singular_directions_default(&rf(&[1], &[1, -1])).unwrap();
        assert_eq!(r.directions, vec![0.0]);
        assert_eq!(r.direction_count, 1);
        assert!((r.radius - 1.0).abs() < 1e-15);
    }

    #[test]
    fn one_plus_x_squared() {
        let r = singular_directions_default(&rf(&[1], &[1, 0, 1])).unwrap();
        assert_eq!(r.direction_count, 2);
        assert!((r.directions[0] + PI / 2.0).abs() < 1e-9);
        assert!((r.directions[1] - PI / 2.0).abs() < 1e-9);
        assert!((r.radius - 1.0).abs() < 1e-12);
    }

    #[test]
    fn fibonacci_denominator() {
        let r = singular_directions_default(&rf(&[0, 1], &[1, -1, -1])).unwrap();
        // quadratic formula: roots of 1 − x − x² are (−1 ± √5)/2
        let small = (5f64.sqrt() - 1.0) / 2.0;
        let large = -(5f64.sqrt() + 1.0) / 2.0;
        assert_eq!(r.direction_count, 2);
        assert_eq!(r.directions, vec![0.0, PI]);
        assert!((r.radius - small).abs() < 1e-12);
        assert!(r.poles.iter().any(|(z, _)| (z.re - large).abs() < 1e-12));
    }

    #[test]
    fn repeated_pole_keeps_one_direction() {
        let r = singular_directions_default(&rf(&[2, -10, 14], &[1, -4, 6, -4, 1])).unwrap();
        assert_eq!(r.poles, vec![(Complex64::new(1.0, 0.0), 4)]);
        assert_eq!(r.directions, vec![0.0]);
    }

    #[test]
    fn scaling_invariance() {
        let a = singular_directions_default(&rf(&[1], &[1, 0, 0, 1])).unwrap();
        let b = singular_directions_default(&rf(&[-5], &[-5, 0, 0, -5])).unwrap();
        assert_eq!(a, b);
        // 1 + x³: roots at −1 and e^{±iπ/3}
        assert_eq!(a.direction_count, 3);
    }

    #[test]
    fn constant_denominator_is_rejected() {
        assert!(singular_directions_default(&rf(&[1, 1], &[1])).unwrap_err().is_input());
    }

    #[test]
    fn clustering_wraps_around_pi() {
        assert_eq!(cluster_directions(vec![-PI + 1e-9, PI]).len(), 1);
        assert_eq!(cluster_directions(vec![0.0, 1e-7, 1.0]).len(), 2);
    }

    #[test]
    fn json_shape() {
        let r = singular_directions_default(&rf(&[1], &[1, -1])).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["poles"], serde_json::json!([[1.0, 0.0]]));
        assert_eq!(v["direction_count"], 1);
    }
}

//! Simultaneous polynomial root finding by the Aberth–Ehrlich iteration.

use std::f64::consts::PI;

use num_complex::Complex64;

#[derive(Clone, Debug, PartialEq)]
pub struct RootsOutcome {
    pub roots: Vec<Complex64>,
    pub iterations: usize,
    pub converged: bool,
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    // value and derivative
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

/// All complex roots of `Σ c_k x^k` (lowest degree first). Leading zero
/// coefficients are ignored; a constant polynomial has no roots.
pub fn aberth_roots(coeffs: &[f64], max_iterations: usize, epsilon: f64) -> RootsOutcome {
    let mut c: Vec<Complex64> = coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect();
    while c.last().is_some_and(|x| x.norm() == 0.0) {
        c.pop();
    }
    let degree = c.len().saturating_sub(1);
    if degree == 0 {
        return RootsOutcome { roots: Vec::new(), iterations: 0, converged: true };
    }
    // zero roots factor out exactly
    let zeros = c.iter().take_while(|x| x.norm() == 0.0).count();
    let c: Vec<Complex64> = c[zeros..].to_vec();
    let deg = c.len() - 1;
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros];
    if deg == 0 {
        return RootsOutcome { roots, iterations: 0, converged: true };
    }
    if deg == 1 {
        roots.push(-c[0] / c[1]);
        return RootsOutcome { roots, iterations: 0, converged: true };
    }

    // initial guesses on a circle whose radius is the geometric mean of the root moduli
    let lead = c[deg].norm();
    let radius = (c[0].norm() / lead).powf(1.0 / deg as f64).max(f64::MIN_POSITIVE);
    let mut z: Vec<Complex64> = (0..deg)
        .map(|k| Complex64::from_polar(radius, 2.0 * PI * k as f64 / deg as f64 + 0.4))
        .collect();

    let mut converged = false;
    let mut iterations = 0;
    while iterations < max_iterations {
        iterations += 1;
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let (p, dp) = horner(&c, z[i]);
            if p.norm() == 0.0 {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..deg)
                .filter(|&j| j != i)
                .map(|j| {
                    let d = z[i] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[i] -= step;
                max_step = max_step.max(step.norm() / z[i].norm().max(1.0));
            }
        }
        if max_step <= epsilon {
            converged = true;
            break;
        }
    }
    // Newton polish
    for zi in z.iter_mut() {
        for _ in 0..3 {
            let (p, dp) = horner(&c, *zi);
            if dp.norm() == 0.0 {
                break;
            }
            let step = p / dp;
            if !step.is_finite() {
                break;
            }
            *zi -= step;
        }
    }
    roots.extend(z);
    RootsOutcome { roots, iterations, converged }
}

//! Rationality detection on a finite prefix.
//!
//! A prefix is declared the expansion of a rational function when a constant
//! coefficient linear recurrence of order `r` fits every term, `2r + W ≤ N`,
//! and the last `W` observable Hankel determinants vanish.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{hankel_determinant, max_order};
use crate::error::{Error, Result};
use crate::exact::{rat_string, Rat};
use crate::matrix::solve_consistent;
use crate::poly::{rat_poly, IntPolynomial};
use crate::sequences::ExactSequence;

/// `numerator / denominator` in lowest terms with integer coefficients,
/// positive constant term in the denominator and joint content 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalFunction {
    pub numerator: IntPolynomial,
    pub denominator: IntPolynomial,
    /// Order of the recurrence the reconstruction came from.
    pub order: usize,
}

impl Serialize for RationalFunction {
    /// Readable forms plus exact coefficient arrays (decimal strings).
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RationalFunction", 5)?;
        st.serialize_field("numerator", &self.numerator.pretty())?;
        st.serialize_field("denominator", &self.denominator.pretty())?;
        st.serialize_field("numerator_coefficients", &self.numerator)?;
        st.serialize_field("denominator_coefficients", &self.denominator)?;
        st.serialize_field("order", &self.order)?;
        st.end()
    }
}

impl RationalFunction {
    /// Builds the canonical form of `num / den`; `den(0)` must be nonzero.
    pub fn from_rational_parts(num: &[Rat], den: &[Rat], order: usize) -> Result<Self> {
        let den = rat_poly::trim(den.to_vec());
        if den.first().map_or(true, |c| c.is_zero()) {
            return Err(Error::input("denominator must have a nonzero constant term"));
        }
        let num = rat_poly::trim(num.to_vec());
        let (num, den) = if num.is_empty() {
            (Vec::new(), vec![Rat::one()])
        } else {
            let g = rat_poly::gcd(&num, &den);
            (rat_poly::divrem(&num, &g).0, rat_poly::divrem(&den, &g).0)
        };
        let d0 = den[0].clone();
        let num: Vec<Rat> = num.iter().map(|c| c / &d0).collect();
        let den: Vec<Rat> = den.iter().map(|c| c / &d0).collect();

        let lcm = num.iter().chain(&den).fold(BigInt::one(), |l, c| l.lcm(c.denom()));
        let scale = Rat::from_integer(lcm);
        let to_int = |p: &[Rat]| -> Vec<BigInt> { p.iter().map(|c| (c * &scale).to_integer()).collect() };
        let (ni, di) = (to_int(&num), to_int(&den));
        let content = ni.iter().chain(&di).fold(BigInt::zero(), |g, c| g.gcd(c));
        Ok(RationalFunction {
            numerator: IntPolynomial::new(ni.into_iter().map(|c| c / &content).collect()),
            denominator: IntPolynomial::new(di.into_iter().map(|c| c / &content).collect()),
            order,
        })
    }

    /// First `len` Taylor coefficients at 0.
    pub fn taylor(&self, len: usize) -> Vec<Rat> {
        let d = self.denominator.to_rat();
        let n = self.numerator.to_rat();
        let d0 = d[0].clone();
        let mut out: Vec<Rat> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = n.get(k).cloned().unwrap_or_default();
            for (i, di) in d.iter().enumerate().skip(1).take(k) {
                acc -= di * &out[k - i];
            }
            out.push(acc / &d0);
        }
        out
    }

    pub fn reproduces(&self, seq: &ExactSequence) -> bool {
        self.taylor(seq.len()) == seq.terms()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DetRow {
    pub n: usize,
    #[serde(with = "rat_string")]
    pub det: Rat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalityEvidence {
    pub window: usize,
    /// `det H_n` for `n = 1..=⌊(N+1)/2⌋`.
    pub det_table: Vec<DetRow>,
    /// Length of the trailing run of zero determinants.
    pub zero_run: usize,
    /// Minimal fitting recurrence order, if one was found with `2r + W ≤ N`.
    pub recurrence_order: Option<usize>,
    /// Recurrence coefficients `c_1..c_r` with `a_n = Σ c_i a_{n−i}`.
    #[serde(serialize_with = "serialize_rats")]
    pub recurrence: Option<Vec<Rat>>,
}

fn serialize_rats<S: serde::Serializer>(v: &Option<Vec<Rat>>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        None => s.serialize_none(),
        Some(xs) => {
            let strs: Vec<String> = xs.iter().map(crate::exact::rat_to_string).collect();
            s.collect_seq(strs)
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RationalityDetection {
    pub function: Option<RationalFunction>,
    pub evidence: RationalityEvidence,
}

/// Smallest `r` (with `2r + window ≤ N`) for which `a_n = Σ_{i=1}^r c_i a_{n−i}`
/// holds for every `r ≤ n < N`, found by raising the order one step at a time
/// and solving each overdetermined system exactly.
pub fn minimal_recurrence(seq: &ExactSequence, window: usize) -> Option<(usize, Vec<Rat>)> {
    let a = seq.terms();
    let len = a.len();
    let mut r = 0;
    while 2 * r + window <= len {
        if r == 0 {
            if a.iter().all(|x| x.is_zero()) {
                return Some((0, Vec::new()));
            }
        } else {
            let rows: Vec<Vec<Rat>> = (r..len).map(|n| (1..=r).map(|i| a[n - i].clone()).collect()).collect();
            if let Some(c) = solve_consistent(&rows, &a[r..]) {
                return Some((r, c));
            }
        }
        r += 1;
    }
    None
}

pub fn detect_rationality(seq: &ExactSequence, window: usize) -> Result<RationalityDetection> {
    if window == 0 {
        return Err(Error::input("window must be at least 1"));
    }
    let needed = 2 * window + 2;
    if seq.len() < needed {
        return Err(Error::InsufficientPrefix { needed, got: seq.len() });
    }
    let det_table = (1..=max_order(seq.len()))
        .map(|n| Ok(DetRow { n, det: hankel_determinant(seq, n)? }))
        .collect::<Result<Vec<_>>>()?;
    let zero_run = det_table.iter().rev().take_while(|r| r.det.is_zero()).count();
    let found = minimal_recurrence(seq, window);

    let mut evidence = RationalityEvidence {
        window,
        det_table,
        zero_run,
        recurrence_order: found.as_ref().map(|(r, _)| *r),
        recurrence: found.as_ref().map(|(_, c)| c.clone()),
    };
    let Some((order, coeffs)) = found else {
        return Ok(RationalityDetection { function: None, evidence });
    };
    if zero_run < window {
        return Ok(RationalityDetection { function: None, evidence });
    }

    // D(x) = 1 − c_1 x − … − c_r x^r, numerator = (f · D) mod x^r
    let mut den = vec![Rat::one()];
    den.extend(coeffs.iter().map(|c| -c));
    let num = rat_poly::mul_trunc(seq.terms(), &den, order);
    let function = RationalFunction::from_rational_parts(&num, &den, order)?;
    if !function.reproduces(seq) {
        return Err(Error::Invariant(format!(
            "reconstructed {} / {} does not re-expand to the input prefix",
            function.numerator, function.denominator
        )));
    }
    evidence.recurrence_order = Some(order);
    Ok(RationalityDetection { function: Some(function), evidence })
}

//! Integer sequences: construction, congruence audits, growth heuristics,
//! polynomiality certificates and pseudo-polynomial generators.
//!
//! Everything here works on a finite prefix. "For all n" statements are
//! checked on every index the prefix supports and reports carry the prefix
//! length they were checked on.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::binomial::{inverse_binomial_transform, primorials};
use crate::error::{Error, Result};
use crate::exact::{int_string, residue, root_abs_rat, Rat};
use crate::poly::IntPolynomial;
use crate::primes::Sieve;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SequenceKind {
    Integer,
    Rational,
}

/// Finite prefix `a_0, …, a_{N-1}` of an exact sequence, `N >= 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSequence {
    terms: Vec<Rat>,
    kind: SequenceKind,
}

impl ExactSequence {
    /// The kind is `Integer` exactly when every term has denominator 1.
    pub fn from_rationals(terms: Vec<Rat>) -> Result<Self> {
        if terms.is_empty() {
            return Err(Error::input("a sequence needs at least one term"));
        }
        let kind = if terms.iter().all(|t| t.is_integer()) {
            SequenceKind::Integer
        } else {
            SequenceKind::Rational
        };
        Ok(ExactSequence { terms, kind })
    }

    pub fn from_integers(terms: Vec<BigInt>) -> Result<Self> {
        Self::from_rationals(terms.into_iter().map(Rat::from_integer).collect())
    }

    pub fn from_i64(terms: &[i64]) -> Result<Self> {
        Self::from_integers(terms.iter().map(|&t| BigInt::from(t)).collect())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn kind(&self) -> SequenceKind {
        self.kind
    }

    pub fn is_integer(&self) -> bool {
        self.kind == SequenceKind::Integer
    }

    pub fn terms(&self) -> &[Rat] {
        &self.terms
    }

    pub fn term(&self, n: usize) -> &Rat {
        &self.terms[n]
    }

    /// Integer view of the terms, or the index of the first non-integer term.
    pub fn integer_terms(&self) -> Result<Vec<BigInt>> {
        self.terms
            .iter()
            .enumerate()
            .map(|(index, t)| {
                if t.is_integer() {
                    Ok(t.to_integer())
                } else {
                    Err(Error::NonInteger { index })
                }
            })
            .collect()
    }

    /// First `len` terms.
    pub fn prefix(&self, len: usize) -> Result<Self> {
        if len == 0 || len > self.len() {
            return Err(Error::InsufficientPrefix { needed: len.max(1), got: self.len() });
        }
        Self::from_rationals(self.terms[..len].to_vec())
    }

    pub fn negated(&self) -> Self {
        ExactSequence { terms: self.terms.iter().map(|t| -t).collect(), kind: self.kind }
    }
}

/// `(P(0), …, P(N-1))`.
pub fn eval_polynomial_sequence(p: &IntPolynomial, n: usize) -> Result<ExactSequence> {
    if n == 0 {
        return Err(Error::input("N must be at least 1"));
    }
    ExactSequence::from_integers((0..n).map(|k| p.eval(&BigInt::from(k))).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, clap::ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum CongruenceMode {
    /// `a_{n+p} ≡ a_n (mod p)` for primes `p`.
    Primary,
    /// `a_{n+k} ≡ a_n (mod k)` for all `k >= 1`.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub n: usize,
    pub modulus: usize,
    /// `a_{n+modulus} mod modulus`.
    #[serde(with = "int_string")]
    pub lhs_residue: BigInt,
    /// `a_n mod modulus`.
    #[serde(with = "int_string")]
    pub rhs_residue: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceReport {
    pub mode: CongruenceMode,
    pub prefix_len: usize,
    pub checked_pairs: usize,
    /// Sorted by `(n, modulus)`.
    pub violations: Vec<Violation>,
}

impl CongruenceReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn check_congruences(seq: &ExactSequence, mode: CongruenceMode) -> Result<CongruenceReport> {
    let a = seq.integer_terms()?;
    let len = a.len();
    if len < 2 {
        return Err(Error::InsufficientPrefix { needed: 2, got: len });
    }
    let moduli: Vec<usize> = match mode {
        CongruenceMode::Primary => Sieve::new(len - 1).primes(),
        CongruenceMode::Full => (1..len).collect(),
    };
    let mut checked_pairs = 0;
    let mut violations = Vec::new();
    for n in 0..len {
        for &m in moduli.iter().take_while(|&&m| n + m < len) {
            checked_pairs += 1;
            let modulus = BigInt::from(m);
            if !(&a[n + m] - &a[n]).is_multiple_of(&modulus) {
                violations.push(Violation {
                    n,
                    modulus: m,
                    lhs_residue: residue(&a[n + m], &modulus),
                    rhs_residue: residue(&a[n], &modulus),
                });
            }
        }
    }
    Ok(CongruenceReport { mode, prefix_len: len, checked_pairs, violations })
}

/// Finite-prefix proxy for `limsup |a_n|^{1/n}`. This is a heuristic over the
/// observed window, not a bound on the infinite sequence.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GrowthRecord {
    /// Max of `per_n` over `n >= ceil(N/2)`.
    pub tail_sup: f64,
    pub tail_start: usize,
    /// `per_n[n] = |a_n|^{1/n}` for `n >= 1`; `per_n[0]` is fixed at 0.
    pub per_n: Vec<f64>,
}

pub fn growth_rate(seq: &ExactSequence) -> Result<GrowthRecord> {
    let len = seq.len();
    if len < 4 {
        return Err(Error::InsufficientPrefix { needed: 4, got: len });
    }
    let per_n: Vec<f64> = seq
        .terms()
        .iter()
        .enumerate()
        .map(|(n, t)| {
            if n == 0 || t.is_zero() {
                0.0
            } else {
                root_abs_rat(t, n)
            }
        })
        .collect();
    let tail_start = len.div_ceil(2);
    let tail_sup = per_n[tail_start..].iter().copied().fold(0.0, f64::max);
    Ok(GrowthRecord { tail_sup, tail_start, per_n })
}

/// Smallest `d` such that the order-`d+1` forward difference of the prefix
/// vanishes on at least two indices (so `N >= d + 3`). A prefix-level
/// certificate only.
pub fn polynomial_certificate(seq: &ExactSequence) -> Option<usize> {
    let mut diff: Vec<Rat> = seq.terms().to_vec();
    let mut d = 0;
    loop {
        diff = diff.windows(2).map(|w| &w[1] - &w[0]).collect();
        if diff.len() < 2 {
            return None;
        }
        if diff.iter().all(|x| x.is_zero()) {
            return Some(d);
        }
        d += 1;
    }
}

/// Builds a primary pseudo-polynomial from free integer coefficients `c`:
/// the binomial transform is set to `b_n = P_n · c_n` (`P_n` the primorial)
/// and inverted. The primary congruences are then verified on the result and
/// a failure is reported as an invariant error instead of being assumed away.
pub fn generate_primary(c: &ExactSequence, n: usize) -> Result<ExactSequence> {
    let coeffs = c.integer_terms()?;
    if n == 0 {
        return Err(Error::input("N must be at least 1"));
    }
    if coeffs.len() < n {
        return Err(Error::InsufficientPrefix { needed: n, got: coeffs.len() });
    }
    let table = primorials(n - 1);
    let b: Vec<BigInt> = (0..n).map(|k| table.get(k) * &coeffs[k]).collect();
    let a = inverse_binomial_transform(&ExactSequence::from_integers(b)?);
    if a.len() >= 2 {
        let report = check_congruences(&a, CongruenceMode::Primary)?;
        if let Some(v) = report.violations.first() {
            return Err(Error::Invariant(format!(
                "primorial-divisible transform produced a primary congruence violation at n = {}, p = {}",
                v.n, v.modulus
            )));
        }
    }
    Ok(a)
}

/// Inductive pseudo-polynomial construction. `a_0 = perturbation[0]`; for
/// `n >= 1`, `a_n` is the least nonnegative solution modulo `L_n = lcm(1..=n)`
/// of `a_n ≡ a_{n-k} (mod k)` for `1 <= k <= n`, plus `perturbation[n] · L_n`.
///
/// The system is always solvable: earlier terms already satisfy every pairwise
/// congruence, so `a_{n-k} ≡ a_{n-l}` modulo `|k - l|`, hence modulo `gcd(k, l)`.
pub fn generate_hall_like(n: usize, perturbation: &[BigInt]) -> Result<ExactSequence> {
    if n == 0 {
        return Err(Error::input("N must be at least 1"));
    }
    if perturbation.len() < n {
        return Err(Error::InsufficientPrefix { needed: n, got: perturbation.len() });
    }
    let mut a: Vec<BigInt> = Vec::with_capacity(n);
    a.push(perturbation[0].clone());
    for idx in 1..n {
        let mut residue_acc = BigInt::zero();
        let mut modulus = BigInt::one();
        for k in 1..=idx {
            let m = BigInt::from(k);
            let r = crate::exact::residue(&a[idx - k], &m);
            (residue_acc, modulus) = crt_merge(&residue_acc, &modulus, &r, &m).ok_or_else(|| {
                Error::Invariant(format!("inconsistent congruence system at n = {idx}, k = {k}"))
            })?;
        }
        a.push(residue_acc + &perturbation[idx] * modulus);
    }
    ExactSequence::from_integers(a)
}

/// Combines `x ≡ r1 (mod m1)` and `x ≡ r2 (mod m2)` into `x ≡ r (mod lcm)`
/// with `0 <= r < lcm`; `None` if the pair is inconsistent.
fn crt_merge(r1: &BigInt, m1: &BigInt, r2: &BigInt, m2: &BigInt) -> Option<(BigInt, BigInt)> {
    let eg = m1.extended_gcd(m2);
    let g = eg.gcd;
    let diff = r2 - r1;
    if !diff.is_multiple_of(&g) {
        return None;
    }
    let lcm = m1 / &g * m2;
    let x = r1 + m1 * (&diff / &g) * eg.x;
    Some((residue(&x, &lcm), lcm))
}

/// Uniform integers in `[lo, hi]`.
pub fn random_integers<R: Rng + ?Sized>(rng: &mut R, len: usize, lo: i64, hi: i64) -> Vec<BigInt> {
    (0..len).map(|_| BigInt::from(rng.gen_range(lo..=hi))).collect()
}

pub fn max_abs(seq: &ExactSequence) -> Rat {
    seq.terms().iter().map(|t| t.abs()).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat_frac;

    fn ints(xs: &[i64]) -> ExactSequence {
        ExactSequence::from_i64(xs).unwrap()
    }

    fn big(xs: &[i64]) -> Vec<BigInt> {
        xs.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn sequence_kind_tracks_denominators() {
        assert_eq!(ints(&[1, 2]).kind(), SequenceKind::Integer);
        let r = ExactSequence::from_rationals(vec![rat_frac(1, 2)]).unwrap();
        assert_eq!(r.kind(), SequenceKind::Rational);
        assert_eq!(r.integer_terms(), Err(Error::NonInteger { index: 0 }));
        assert!(ExactSequence::from_i64(&[]).is_err());
    }

    #[test]
    fn polynomial_sequences() {
        let sq = IntPolynomial::from_i64(&[0, 0, 1]);
        assert_eq!(eval_polynomial_sequence(&sq, 4).unwrap(), ints(&[0, 1, 4, 9]));
        assert_eq!(eval_polynomial_sequence(&IntPolynomial::zero(), 3).unwrap(), ints(&[0, 0, 0]));
        // oracle: direct evaluation of n^3 - 7n + 2 at n = 0..4
        let cubic = IntPolynomial::from_i64(&[2, -7, 0, 1]);
        let direct: Vec<i64> = (0..5i64).map(|n| n * n * n - 7 * n + 2).collect();
        assert_eq!(direct, vec![2, -4, -4, 8, 38]);
        assert_eq!(eval_polynomial_sequence(&cubic, 5).unwrap(), ints(&direct));
        assert!(eval_polynomial_sequence(&cubic, 0).is_err());
    }

    #[test]
    fn congruence_examples() {
        let r = check_congruences(&ints(&[0, 1, 4, 9, 16, 25]), CongruenceMode::Primary).unwrap();
        assert!(r.holds());
        // pairs (n, p) with n + p <= 5: p=2 -> n=0..3, p=3 -> n=0..2, p=5 -> n=0
        assert_eq!(r.checked_pairs, 4 + 3 + 1);

        let r = check_congruences(&ints(&[1, 2, 4, 8, 16]), CongruenceMode::Primary).unwrap();
        assert_eq!(
            r.violations[0],
            Violation { n: 0, modulus: 2, lhs_residue: BigInt::from(0), rhs_residue: BigInt::from(1) }
        );
        let mut keys: Vec<_> = r.violations.iter().map(|v| (v.n, v.modulus)).collect();
        let sorted = {
            let mut k = keys.clone();
            k.sort();
            k
        };
        assert_eq!(keys, sorted);
        keys.dedup();
        assert!(r.violations.iter().all(|v| v.n + v.modulus < 5));

        assert!(check_congruences(&ints(&[5, 5, 5, 5]), CongruenceMode::Full).unwrap().holds());
    }

    #[test]
    fn congruence_input_errors() {
        let r = ExactSequence::from_rationals(vec![rat_frac(1, 2), rat_frac(1, 3)]).unwrap();
        assert!(check_congruences(&r, CongruenceMode::Full).unwrap_err().is_input());
        assert!(check_congruences(&ints(&[1]), CongruenceMode::Full).is_err());
    }

    #[test]
    fn growth_examples() {
        let pow2 = ExactSequence::from_integers((0..40).map(|n| BigInt::one() << n).collect()).unwrap();
        assert!((growth_rate(&pow2).unwrap().tail_sup - 2.0).abs() < 1e-9);

        let cubes = ExactSequence::from_integers((0..60i64).map(|n| BigInt::from(n * n * n)).collect()).unwrap();
        let g = growth_rate(&cubes).unwrap();
        // oracle: max of n^{3/n} for n in 30..60, computed directly in f64
        let oracle = (30..60).map(|n| (n as f64).powf(3.0 / n as f64)).fold(0.0, f64::max);
        assert!((g.tail_sup - oracle).abs() < 1e-12);
        // the maximum sits at the window start: 30^{1/10}
        assert!((g.tail_sup - 30f64.powf(0.1)).abs() < 1e-12);
        assert!(g.tail_sup > 1.0 && g.tail_sup < 1.41);

        assert_eq!(growth_rate(&ints(&[0, 0, 0, 0])).unwrap().tail_sup, 0.0);
        assert!(growth_rate(&ints(&[1, 2, 3])).is_err());
    }

    #[test]
    fn certificate_examples() {
        assert_eq!(polynomial_certificate(&ints(&[2, 2, 2, 2, 2])), Some(0));
        let cubic = eval_polynomial_sequence(&IntPolynomial::from_i64(&[2, -7, 0, 1]), 12).unwrap();
        assert_eq!(polynomial_certificate(&cubic), Some(3));
        assert_eq!(polynomial_certificate(&ints(&[1, 2, 4, 8, 16, 32])), None);
        // degree 3 needs N >= 6
        assert_eq!(polynomial_certificate(&cubic.prefix(5).unwrap()), None);
        assert_eq!(polynomial_certificate(&cubic.prefix(6).unwrap()), Some(3));
    }

    #[test]
    fn primary_generator_examples() {
        let a = generate_primary(&ints(&[1, 1, 1, 1]), 4).unwrap();
        assert_eq!(a, ints(&[1, 2, 5, 16]));
        assert_eq!(generate_primary(&ints(&[0; 6]), 6).unwrap(), ints(&[0; 6]));
        assert_eq!(generate_primary(&ints(&[1, 0, 0, 0, 0]), 5).unwrap(), ints(&[1; 5]));
        assert!(generate_primary(&ints(&[1, 1]), 3).unwrap_err().is_input());
    }

    #[test]
    fn hall_generator_examples() {
        let a = generate_hall_like(4, &big(&[0, 0, 0, 0])).unwrap();
        assert!(check_congruences(&a, CongruenceMode::Full).unwrap().holds());
        assert_eq!(a, ints(&[0, 0, 0, 0]));

        let a = generate_hall_like(6, &big(&[0, 0, 1, 0, 0, 0])).unwrap();
        assert!(check_congruences(&a, CongruenceMode::Full).unwrap().holds());
        assert_eq!(polynomial_certificate(&a), None);

        assert_eq!(generate_hall_like(1, &big(&[7])).unwrap(), ints(&[7]));
        assert!(generate_hall_like(3, &big(&[7])).is_err());
    }

    #[test]
    fn crt_merge_handles_shared_factors() {
        let (r, m) = crt_merge(&BigInt::from(1), &BigInt::from(4), &BigInt::from(3), &BigInt::from(6)).unwrap();
        assert_eq!((r, m), (BigInt::from(9), BigInt::from(12)));
        assert!(crt_merge(&BigInt::from(0), &BigInt::from(4), &BigInt::from(1), &BigInt::from(6)).is_none());
    }
}

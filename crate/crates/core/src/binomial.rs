//! Binomial transform pair, the signed Pascal conjugation matrix and
//! primorial divisibility of transforms.
//!
//! `b_n = Σ_{k≤n} (−1)^{n−k} C(n,k) a_k` and `a_n = Σ_{k≤n} C(n,k) b_k`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::error::Result;
use crate::exact::{int_string, residue, Rat};
use crate::matrix::ExactMatrix;
use crate::primes::Sieve;
use crate::sequences::ExactSequence;

/// Rows `0..=n` of Pascal's triangle, built by the additive recurrence.
#[derive(Clone, Debug)]
pub struct PascalTriangle {
    rows: Vec<Vec<BigInt>>,
}

impl PascalTriangle {
    pub fn new(n: usize) -> Self {
        let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
        rows.push(vec![BigInt::one()]);
        for i in 1..=n {
            let prev = &rows[i - 1];
            let mut row = Vec::with_capacity(i + 1);
            row.push(BigInt::one());
            for k in 1..i {
                row.push(&prev[k - 1] + &prev[k]);
            }
            row.push(BigInt::one());
            rows.push(row);
        }
        PascalTriangle { rows }
    }

    /// `C(n, k)`, zero when `k > n`.
    pub fn get(&self, n: usize, k: usize) -> BigInt {
        if k > n {
            BigInt::zero()
        } else {
            self.rows[n][k].clone()
        }
    }

    pub fn row(&self, n: usize) -> &[BigInt] {
        &self.rows[n]
    }
}

pub fn binomial_transform(a: &ExactSequence) -> ExactSequence {
    transform(a, true)
}

pub fn inverse_binomial_transform(b: &ExactSequence) -> ExactSequence {
    transform(b, false)
}

fn transform(a: &ExactSequence, alternating: bool) -> ExactSequence {
    let len = a.len();
    let pascal = PascalTriangle::new(len - 1);
    let out = (0..len)
        .map(|n| {
            let mut acc = Rat::zero();
            for (k, c) in pascal.row(n).iter().enumerate() {
                let term = a.term(k);
                if term.is_zero() {
                    continue;
                }
                let prod = term * Rat::from_integer(c.clone());
                if alternating && (n - k) % 2 == 1 {
                    acc -= prod;
                } else {
                    acc += prod;
                }
            }
            acc
        })
        .collect();
    ExactSequence::from_rationals(out).expect("transform preserves length >= 1")
}

/// `L_n` with 1-based entries `[L_n]_{i,j} = (−1)^{i−j} C(i−1, j−1)` for
/// `j ≤ i` and zero above the diagonal.
pub fn lower_triangular_l(n: usize) -> ExactMatrix {
    let pascal = PascalTriangle::new(n.saturating_sub(1));
    ExactMatrix::from_fn(n, n, |i, j| {
        // 0-based (i, j) is the 1-based entry (i + 1, j + 1)
        if j > i {
            Rat::zero()
        } else {
            let c = Rat::from_integer(pascal.get(i, j));
            if (i - j) % 2 == 1 {
                -c
            } else {
                c
            }
        }
    })
}

/// Sign-free Pascal matrix `[U_n]_{i,j} = C(i−1, j−1)`, the inverse of `L_n`.
pub fn pascal_lower(n: usize) -> ExactMatrix {
    let pascal = PascalTriangle::new(n.saturating_sub(1));
    ExactMatrix::from_fn(n, n, |i, j| Rat::from_integer(pascal.get(i, j)))
}

/// `values[n]` is the product of the primes `≤ n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimorialTable {
    values: Vec<BigInt>,
}

impl PrimorialTable {
    pub fn get(&self, n: usize) -> &BigInt {
        &self.values[n]
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn max_index(&self) -> usize {
        self.values.len() - 1
    }
}

pub fn primorials(n_max: usize) -> PrimorialTable {
    let sieve = Sieve::new(n_max);
    let mut values = Vec::with_capacity(n_max + 1);
    let mut acc = BigInt::one();
    for n in 0..=n_max {
        if sieve.is_prime(n) {
            acc *= n;
        }
        values.push(acc.clone());
    }
    PrimorialTable { values }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimorialFailure {
    pub n: usize,
    #[serde(with = "int_string")]
    pub primorial: BigInt,
    /// Least nonnegative residue of `b_n` modulo `P_n`.
    #[serde(with = "int_string")]
    pub residue: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimorialReport {
    pub pass: bool,
    pub prefix_len: usize,
    pub failures: Vec<PrimorialFailure>,
}

/// Checks `P_n | b_n` for every `n < N`, where `b` is the binomial transform of `a`.
pub fn check_primorial_divisibility(a: &ExactSequence) -> Result<PrimorialReport> {
    a.integer_terms()?;
    let b = binomial_transform(a).integer_terms()?;
    let table = primorials(b.len() - 1);
    let failures: Vec<PrimorialFailure> = b
        .iter()
        .enumerate()
        .filter_map(|(n, bn)| {
            let p = table.get(n);
            let r = residue(bn, p);
            (!r.is_zero()).then(|| PrimorialFailure { n, primorial: p.clone(), residue: r })
        })
        .collect();
    Ok(PrimorialReport { pass: failures.is_empty(), prefix_len: b.len(), failures })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn ints(xs: &[i64]) -> ExactSequence {
        ExactSequence::from_i64(xs).unwrap()
    }

    /// Independent oracle: b_n by direct summation with factorial-based binomials.
    fn oracle_transform(a: &[i64]) -> Vec<i64> {
        fn choose(n: i64, k: i64) -> i64 {
            (1..=k).fold(1, |acc, i| acc * (n - k + i) / i)
        }
        (0..a.len() as i64)
            .map(|n| (0..=n).map(|k| (-1i64).pow((n - k) as u32) * choose(n, k) * a[k as usize]).sum())
            .collect()
    }

    #[test]
    fn forward_examples() {
        assert_eq!(oracle_transform(&[0, 1, 4, 9]), vec![0, 1, 2, 0]);
        assert_eq!(oracle_transform(&[1, 2, 5, 16]), vec![1, 1, 2, 6]);
        assert_eq!(binomial_transform(&ints(&[1, 1, 1, 1])), ints(&[1, 0, 0, 0]));
        assert_eq!(binomial_transform(&ints(&[0, 1, 4, 9])), ints(&[0, 1, 2, 0]));
        assert_eq!(binomial_transform(&ints(&[1, 2, 5, 16])), ints(&[1, 1, 2, 6]));
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(inverse_binomial_transform(&ints(&[1, 0, 0, 0])), ints(&[1, 1, 1, 1]));
        assert_eq!(inverse_binomial_transform(&ints(&[0, 1, 2, 0])), ints(&[0, 1, 4, 9]));
        assert_eq!(inverse_binomial_transform(&ints(&[0, 0, 0])), ints(&[0, 0, 0]));
    }

    #[test]
    fn l_matrix_examples() {
        assert_eq!(lower_triangular_l(1), ExactMatrix::from_fn(1, 1, |_, _| rat(1)));
        let expected = [[1, 0, 0], [-1, 1, 0], [1, -2, 1]];
        assert_eq!(lower_triangular_l(3), ExactMatrix::from_fn(3, 3, |i, j| rat(expected[i][j])));
        for n in 1..=12 {
            let l = lower_triangular_l(n);
            assert!(l.is_lower_triangular());
            assert_eq!(l.determinant().unwrap(), rat(1), "n = {n}");
        }
    }

    #[test]
    fn l_times_pascal_is_identity() {
        for n in 1..=16 {
            let prod = lower_triangular_l(n).mul(&pascal_lower(n)).unwrap();
            assert_eq!(prod, ExactMatrix::identity(n), "n = {n}");
        }
    }

    #[test]
    fn convolution_identity() {
        // Σ_{r+s=m, r<i, s<j} C(i−1, r) C(j−1, s) = C(i+j−2, m), 1-based i, j.
        let pascal = PascalTriangle::new(24);
        for i in 1..=12usize {
            for j in 1..=12usize {
                for m in 0..=(i + j - 2) {
                    let lhs: BigInt = (0..i)
                        .filter(|&r| m >= r && m - r < j)
                        .map(|r| pascal.get(i - 1, r) * pascal.get(j - 1, m - r))
                        .sum();
                    assert_eq!(lhs, pascal.get(i + j - 2, m));
                }
            }
        }
    }

    #[test]
    fn primorial_examples() {
        let t = primorials(10);
        let got: Vec<i64> = t.values()[..6].iter().map(|v| i64::try_from(v).unwrap()).collect();
        assert_eq!(got, vec![1, 1, 2, 6, 6, 30]);
        assert_eq!(t.get(0), &BigInt::one());
        assert_eq!(t.get(10), &BigInt::from(210));
        assert_eq!(primorials(0).values(), &[BigInt::one()]);
        for n in 0..10 {
            let q = t.get(n + 1) / t.get(n);
            assert!(q == BigInt::one() || q == BigInt::from(n + 1));
        }
    }

    #[test]
    fn primorial_divisibility_examples() {
        let r = check_primorial_divisibility(&ints(&[1, 2, 4, 8])).unwrap();
        assert!(!r.pass);
        assert_eq!(
            r.failures[0],
            PrimorialFailure { n: 2, primorial: BigInt::from(2), residue: BigInt::from(1) }
        );
        let quad: Vec<i64> = (0..10).map(|n| 3 * n * n - n + 4).collect();
        assert!(check_primorial_divisibility(&ints(&quad)).unwrap().pass);
        let hall = crate::sequences::generate_hall_like(20, &vec![BigInt::zero(); 20]).unwrap();
        assert!(check_primorial_divisibility(&hall).unwrap().pass);
    }
}

//! Dense univariate polynomials with exact coefficients, lowest degree first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exact::{parse_integer, Rat};

/// Integer polynomial. The coefficient vector never ends in a zero; the
/// zero polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn to_rat(&self) -> Vec<Rat> {
        self.coeffs.iter().cloned().map(Rat::from_integer).collect()
    }

    /// gcd of the coefficients (0 for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    /// Human-readable form in ascending degree, e.g. `1 − x − x²`.
    pub fn pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let mag = c.abs();
            if out.is_empty() {
                if negative {
                    out.push('−');
                }
            } else {
                out.push_str(if negative { " − " } else { " + " });
            }
            if k == 0 || !mag.is_one() {
                out.push_str(&mag.to_string());
            }
            if k >= 1 {
                out.push('x');
            }
            if k >= 2 {
                out.push_str(&superscript(k));
            }
        }
        out
    }
}

fn superscript(k: usize) -> String {
    const DIGITS: [char; 10] = ['⁰', '¹', '²', '³', '⁴', '⁵', '⁶', '⁷', '⁸', '⁹'];
    k.to_string()
        .bytes()
        .map(|b| DIGITS[(b - b'0') as usize])
        .collect()
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.pretty())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::exact::int_vec_string::serialize(&self.coeffs, s)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(|s| parse_integer(s).map_err(serde::de::Error::custom))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::new(coeffs))
    }
}

/// Operations on rational coefficient vectors (lowest degree first).
pub(crate) mod rat_poly {
    use super::*;

    pub fn trim(mut p: Vec<Rat>) -> Vec<Rat> {
        while p.last().is_some_and(|c| c.is_zero()) {
            p.pop();
        }
        p
    }

    #[cfg(test)]
    pub fn mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Rat::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    /// Product truncated to degrees `< len`.
    pub fn mul_trunc(a: &[Rat], b: &[Rat], len: usize) -> Vec<Rat> {
        let mut out = vec![Rat::zero(); len];
        for (i, x) in a.iter().enumerate().take(len) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate().take(len - i) {
                out[i + j] += x * y;
            }
        }
        trim(out)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(a: &[Rat], b: &[Rat]) -> (Vec<Rat>, Vec<Rat>) {
        let b = trim(b.to_vec());
        assert!(!b.is_empty(), "division by the zero polynomial");
        let mut rem = trim(a.to_vec());
        if rem.len() < b.len() {
            return (Vec::new(), rem);
        }
        let lead = b.last().unwrap().clone();
        let mut quot = vec![Rat::zero(); rem.len() - b.len() + 1];
        while rem.len() >= b.len() && !rem.is_empty() {
            let shift = rem.len() - b.len();
            let factor = rem.last().unwrap() / &lead;
            for (j, bj) in b.iter().enumerate() {
                rem[shift + j] -= &factor * bj;
            }
            quot[shift] = factor;
            rem.pop();
            rem = trim(rem);
        }
        (trim(quot), rem)
    }

    pub fn monic(p: Vec<Rat>) -> Vec<Rat> {
        let p = trim(p);
        match p.last().cloned() {
            None => p,
            Some(lead) => p.into_iter().map(|c| c / &lead).collect(),
        }
    }

    /// Monic gcd.
    pub fn gcd(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let mut x = trim(a.to_vec());
        let mut y = trim(b.to_vec());
        while !y.is_empty() {
            let (_, r) = divrem(&x, &y);
            x = y;
            y = r;
        }
        monic(x)
    }

    pub fn derivative(p: &[Rat]) -> Vec<Rat> {
        trim(
            p.iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rat::from_integer(BigInt::from(k)))
                .collect(),
        )
    }

    /// Square-free factorization by Yun's algorithm: returns `(factor, multiplicity)`
    /// pairs with monic, pairwise coprime, square-free factors of positive degree.
    pub fn square_free(p: &[Rat]) -> Vec<(Vec<Rat>, usize)> {
        let p = monic(p.to_vec());
        if p.len() <= 1 {
            return Vec::new();
        }
        let dp = derivative(&p);
        let a0 = gcd(&p, &dp);
        let mut b = divrem(&p, &a0).0;
        let mut c = divrem(&dp, &a0).0;
        let mut d = sub(&c, &derivative(&b));
        let mut out = Vec::new();
        let mut i = 1;
        loop {
            let a = gcd(&b, &d);
            if a.len() > 1 {
                out.push((a.clone(), i));
            }
            b = divrem(&b, &a).0;
            if b.len() <= 1 {
                break;
            }
            c = divrem(&d, &a).0;
            d = sub(&c, &derivative(&b));
            i += 1;
        }
        out
    }

    pub fn sub(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
        let n = a.len().max(b.len());
        let zero = Rat::zero();
        trim(
            (0..n)
                .map(|k| a.get(k).unwrap_or(&zero) - b.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
}

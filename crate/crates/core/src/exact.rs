//! Exact-number helpers: parsing, decimal-string serde adapters and
//! exact-to-log conversion for big integers and rationals.

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serializer};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Natural log of `|x|`; `-inf` for zero. Accurate to f64 precision for
/// integers far beyond the f64 range.
pub fn ln_abs_int(x: &BigInt) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let mag = x.magnitude();
    let bits = mag.bits();
    if bits <= 1000 {
        return mag.to_f64().unwrap_or(f64::INFINITY).ln();
    }
    let shift = bits - 64;
    let top = (mag >> shift).to_f64().unwrap_or(f64::INFINITY);
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

pub fn ln_abs_rat(x: &Rat) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    ln_abs_int(x.numer()) - ln_abs_int(x.denom())
}

/// `|x|^{1/k}`, through a direct f64 conversion when it is finite and
/// nonzero and through logarithms otherwise.
pub fn root_abs_rat(x: &Rat, k: usize) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    let exponent = 1.0 / k as f64;
    match x.to_f64() {
        Some(v) if v.is_finite() && v != 0.0 && v.is_normal() => v.abs().powf(exponent),
        _ => (ln_abs_rat(x) * exponent).exp(),
    }
}

/// Parses `"-12"` or `"3/7"`. Floats and other notations are rejected.
pub fn parse_rational(s: &str) -> Result<Rat> {
    let t = s.trim();
    let parse_int = |p: &str| -> Result<BigInt> {
        let p = p.trim();
        let digits = p.strip_prefix(['-', '+']).unwrap_or(p);
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::input(format!("not an exact decimal number: {s:?}")));
        }
        p.parse::<BigInt>()
            .map_err(|_| Error::input(format!("not an exact decimal number: {s:?}")))
    };
    match t.split_once('/') {
        None => Ok(Rat::from_integer(parse_int(t)?)),
        Some((n, d)) => {
            let d = parse_int(d)?;
            if d.is_zero() {
                return Err(Error::input(format!("zero denominator in {s:?}")));
            }
            Ok(Rat::new(parse_int(n)?, d))
        }
    }
}

pub fn parse_integer(s: &str) -> Result<BigInt> {
    let r = parse_rational(s)?;
    if !r.is_integer() {
        return Err(Error::input(format!("expected an integer, got {s:?}")));
    }
    Ok(r.to_integer())
}

/// `"5"` for integers, `"p/q"` otherwise.
pub fn rat_to_string(x: &Rat) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Least nonnegative residue of `x` modulo `m > 0`.
pub fn residue(x: &BigInt, m: &BigInt) -> BigInt {
    let r = x % m;
    if r.sign() == Sign::Minus {
        r + m.abs()
    } else {
        r
    }
}

pub mod int_string {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&x.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<BigInt, D::Error> {
        let s = String::deserialize(d)?;
        parse_integer(&s).map_err(serde::de::Error::custom)
    }
}

pub mod rat_string {
    use super::*;

    pub fn serialize<S: Serializer>(x: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&rat_to_string(x))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(serde::de::Error::custom)
    }
}

pub mod int_vec_string {
    use super::*;
    use serde::ser::SerializeSeq;

    pub fn serialize<S: Serializer>(xs: &[BigInt], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(xs.len()))?;
        for x in xs {
            seq.serialize_element(&x.to_string())?;
        }
        seq.end()
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<BigInt>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter()
            .map(|s| parse_integer(s).map_err(serde::de::Error::custom))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;

    #[test]
    fn parse_accepts_integers_and_fractions() {
        assert_eq!(parse_rational(" -12 ").unwrap(), rat(-12));
        assert_eq!(parse_rational("6/4").unwrap(), rat_frac(3, 2));
        assert_eq!(parse_integer("+7").unwrap(), BigInt::from(7));
    }

    #[test]
    fn parse_rejects_floats() {
        assert!(parse_rational("1.5").is_err());
        assert!(parse_rational("1e3").is_err());
        assert!(parse_rational("").is_err());
        assert!(parse_rational("1/0").is_err());
        assert!(parse_integer("1/2").is_err());
    }

    #[test]
    fn log_of_huge_integers() {
        let x = BigInt::from(3).pow(5000u32);
        let expected = 5000.0 * 3f64.ln();
        assert!((ln_abs_int(&x) - expected).abs() / expected < 1e-14);
        assert!((ln_abs_int(&-x) - expected).abs() / expected < 1e-14);
        assert_eq!(ln_abs_int(&BigInt::zero()), f64::NEG_INFINITY);
    }

    #[test]
    fn roots_of_exact_values() {
        assert_eq!(root_abs_rat(&rat(5), 1), 5.0);
        assert_eq!(root_abs_rat(&rat(-16), 4), 2.0);
        assert_eq!(root_abs_rat(&rat(0), 3), 0.0);
        let tiny = Rat::new(BigInt::one(), BigInt::from(4).pow(600u32));
        assert!((root_abs_rat(&tiny, 600) - 0.25).abs() < 1e-14);
    }

    #[test]
    fn residues_are_nonnegative() {
        let m = BigInt::from(5);
        assert_eq!(residue(&BigInt::from(-3), &m), BigInt::from(2));
        assert_eq!(residue(&BigInt::from(13), &m), BigInt::from(3));
    }
}

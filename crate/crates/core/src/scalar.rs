//! Exact scalars: arbitrary-precision rationals and Gaussian rationals with
//! the lexicographic "nonnegative" order on complex numbers.

use num::{BigInt, BigRational, One, Signed, Zero};
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};

pub type Rat = BigRational;

pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses "p", "p/q" or "-p/q".
pub fn parse_rat(s: &str) -> Result<Rat> {
    let s = s.trim();
    let bad = || Error::Validation(format!("malformed fraction `{s}` (expected p or p/q)"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Validation(format!("zero denominator in `{s}`")));
    }
    Ok(Rat::new(n, d))
}

pub fn fmt_rat(r: &Rat) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Converts an integral rational to i64, None otherwise.
pub fn to_i64(r: &Rat) -> Option<i64> {
    if !r.is_integer() {
        return None;
    }
    i64::try_from(r.numer().clone()).ok()
}

/// Serde helper: rationals travel as "p/q" strings.
pub mod rat_str {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(r: &Rat, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rat(r))
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Rat, D::Error> {
        let s = String::deserialize(d)?;
        parse_rat(&s).map_err(serde::de::Error::custom)
    }
}

/// Serde helper for vectors of rationals.
pub mod rat_vec {
    use super::*;
    use serde::ser::SerializeSeq;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Rat], s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(v.len()))?;
        for r in v {
            seq.serialize_element(&fmt_rat(r))?;
        }
        seq.end()
    }
    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> std::result::Result<Vec<Rat>, D::Error> {
        let v = Vec::<String>::deserialize(d)?;
        v.iter().map(|s| parse_rat(s).map_err(serde::de::Error::custom)).collect()
    }
}

/// Gaussian rational re + im·i.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CScalar {
    #[serde(with = "rat_str")]
    pub re: Rat,
    #[serde(with = "rat_str")]
    pub im: Rat,
}

impl CScalar {
    pub fn new(re: Rat, im: Rat) -> Self {
        CScalar { re, im }
    }
    pub fn real(re: Rat) -> Self {
        CScalar { re, im: Rat::zero() }
    }
    pub fn zero() -> Self {
        Self::real(Rat::zero())
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn scale(&self, k: &Rat) -> Self {
        CScalar::new(&self.re * k, &self.im * k)
    }

    /// Parses "a", "bi", "a+bi", "a-bi" with rational a, b.
    pub fn parse(s: &str) -> Result<Self> {
        let t: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if t.is_empty() {
            return Err(Error::Validation("empty coordinate".into()));
        }
        if let Some(body) = t.strip_suffix('i') {
            // split at the last sign that is not leading
            let cut = body
                .char_indices()
                .skip(1)
                .filter(|(_, c)| *c == '+' || *c == '-')
                .map(|(k, _)| k)
                .last();
            let (re, im) = match cut {
                Some(k) => (parse_rat(&body[..k])?, body[k..].trim_start_matches('+')),
                None => (Rat::zero(), body),
            };
            let im = match im {
                "" | "+" => Rat::one(),
                "-" => -Rat::one(),
                x => parse_rat(x)?,
            };
            Ok(CScalar::new(re, im))
        } else {
            Ok(CScalar::real(parse_rat(&t)?))
        }
    }
}

impl fmt::Display for CScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", fmt_rat(&self.re))
        } else if self.re.is_zero() {
            write!(f, "{}i", fmt_rat(&self.im))
        } else if self.im.is_negative() {
            write!(f, "{}-{}i", fmt_rat(&self.re), fmt_rat(&-&self.im))
        } else {
            write!(f, "{}+{}i", fmt_rat(&self.re), fmt_rat(&self.im))
        }
    }
}

impl Add for &CScalar {
    type Output = CScalar;
    fn add(self, o: &CScalar) -> CScalar {
        CScalar::new(&self.re + &o.re, &self.im + &o.im)
    }
}
impl Sub for &CScalar {
    type Output = CScalar;
    fn sub(self, o: &CScalar) -> CScalar {
        CScalar::new(&self.re - &o.re, &self.im - &o.im)
    }
}
impl Mul for &CScalar {
    type Output = CScalar;
    fn mul(self, o: &CScalar) -> CScalar {
        CScalar::new(
            &self.re * &o.re - &self.im * &o.im,
            &self.re * &o.im + &self.im * &o.re,
        )
    }
}
impl Neg for &CScalar {
    type Output = CScalar;
    fn neg(self) -> CScalar {
        CScalar::new(-&self.re, -&self.im)
    }
}

/// z ≥ 0: re > 0, or re = 0 and im ≥ 0.
pub fn complex_ge(z: &CScalar) -> bool {
    z.re.is_positive() || (z.re.is_zero() && !z.im.is_negative())
}

/// z > 0: re > 0, or re = 0 and im > 0.
pub fn complex_gt(z: &CScalar) -> bool {
    z.re.is_positive() || (z.re.is_zero() && z.im.is_positive())
}

/// Total order induced by `complex_ge` on differences.
pub fn complex_cmp(a: &CScalar, b: &CScalar) -> Ordering {
    a.re.cmp(&b.re).then_with(|| a.im.cmp(&b.im))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_examples() {
        assert!(complex_ge(&CScalar::new(int(1), int(1))));
        assert!(complex_gt(&CScalar::new(int(0), int(1))));
        assert!(!complex_ge(&CScalar::new(int(-1), int(5))));
        assert!(complex_ge(&CScalar::zero()));
        assert!(!complex_gt(&CScalar::zero()));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(CScalar::parse("1/2").unwrap(), CScalar::real(rat(1, 2)));
        assert_eq!(CScalar::parse("-1/3i").unwrap(), CScalar::new(int(0), rat(-1, 3)));
        assert_eq!(CScalar::parse("1/2-1/4i").unwrap(), CScalar::new(rat(1, 2), rat(-1, 4)));
        assert_eq!(CScalar::parse("-2+i").unwrap(), CScalar::new(int(-2), int(1)));
        assert!(CScalar::parse("1/0").is_err());
        assert!(CScalar::parse("x").is_err());
        let z = CScalar::new(rat(-3, 7), rat(5, 2));
        assert_eq!(CScalar::parse(&z.to_string()).unwrap(), z);
    }
}

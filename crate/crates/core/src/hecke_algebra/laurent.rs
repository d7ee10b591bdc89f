//! Laurent polynomials in v with integer coefficients, and Laurent
//! polynomials in one further variable t with coefficients in Z[v, v⁻¹].

use num::{BigInt, One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::scalar::Rat;

/// Σ c_e v^e; zero coefficients are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly {
    terms: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(1, 0)
    }

    /// c·v^e
    pub fn monomial(c: i64, e: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(e, BigInt::from(c));
        p
    }

    /// v^e
    pub fn v_pow(e: i64) -> Self {
        Self::monomial(1, e)
    }

    pub fn constant(c: i64) -> Self {
        Self::monomial(c, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn add_term(&mut self, e: i64, c: BigInt) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigInt::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add_assign(&mut self, o: &LaurentPoly) {
        for (e, c) in &o.terms {
            self.add_term(*e, c.clone());
        }
    }

    /// ±v^e, the units of Z[v, v⁻¹].
    pub fn as_unit(&self) -> Option<(bool, i64)> {
        if self.terms.len() != 1 {
            return None;
        }
        let (e, c) = self.terms.iter().next().unwrap();
        if c.abs().is_one() {
            Some((c.is_negative(), *e))
        } else {
            None
        }
    }

    pub fn eval(&self, v: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (e, c) in &self.terms {
            acc += Rat::from_integer(c.clone()) * pow(v, *e);
        }
        acc
    }
}

pub(crate) fn pow(x: &Rat, e: i64) -> Rat {
    if e >= 0 {
        num::pow(x.clone(), e as usize)
    } else {
        num::pow(x.recip(), (-e) as usize)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, c.clone());
        }
        r
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(*e, -c.clone());
        }
        r
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, o: &LaurentPoly) -> LaurentPoly {
        let mut r = LaurentPoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                r.add_term(e1 + e2, c1 * c2);
            }
        }
        r
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect() }
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest power first
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            match (*e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "v")?,
                (1, false) => write!(f, "{a}v")?,
                (e, true) => write!(f, "v^{e}")?,
                (e, false) => write!(f, "{a}v^{e}")?,
            }
        }
        Ok(())
    }
}

// JSON: {"exponent": "coefficient", ...}
impl Serialize for LaurentPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let m: BTreeMap<i64, String> = self.terms.iter().map(|(e, c)| (*e, c.to_string())).collect();
        m.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let m: BTreeMap<i64, String> = BTreeMap::deserialize(d)?;
        let mut p = LaurentPoly::zero();
        for (e, c) in m {
            let c: BigInt = c.parse().map_err(|_| D::Error::custom(format!("bad coefficient `{c}`")))?;
            p.add_term(e, c);
        }
        Ok(p)
    }
}

/// Σ_j c_j(v) t^j, a Laurent polynomial in t over Z[v, v⁻¹].
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TPoly {
    pub terms: BTreeMap<i64, LaurentPoly>,
}

impl TPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    /// c·t^j
    pub fn monomial(c: LaurentPoly, j: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(j, &c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, j: i64, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(j).or_default();
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&j);
        }
    }

    pub fn add(&self, o: &TPoly) -> TPoly {
        let mut r = self.clone();
        for (j, c) in &o.terms {
            r.add_term(*j, c);
        }
        r
    }

    pub fn sub(&self, o: &TPoly) -> TPoly {
        let mut r = self.clone();
        for (j, c) in &o.terms {
            r.add_term(*j, &-c);
        }
        r
    }

    pub fn mul(&self, o: &TPoly) -> TPoly {
        let mut r = TPoly::zero();
        for (j1, c1) in &self.terms {
            for (j2, c2) in &o.terms {
                r.add_term(j1 + j2, &(c1 * c2));
            }
        }
        r
    }

    pub fn scale(&self, c: &LaurentPoly) -> TPoly {
        let mut r = TPoly::zero();
        for (j, x) in &self.terms {
            r.add_term(*j, &(x * c));
        }
        r
    }

    /// t ↦ t^k
    pub fn substitute_power(&self, k: i64) -> TPoly {
        let mut r = TPoly::zero();
        for (j, c) in &self.terms {
            r.add_term(j * k, c);
        }
        r
    }

    fn shift(&self, by: i64) -> TPoly {
        TPoly { terms: self.terms.iter().map(|(j, c)| (j + by, c.clone())).collect() }
    }

    /// Exact quotient self/d, None when d does not divide.
    /// The top coefficient of d must be a unit of Z[v, v⁻¹].
    pub fn div_exact(&self, d: &TPoly) -> Option<TPoly> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(TPoly::zero());
        }
        let dlo = *d.terms.keys().next().unwrap();
        let dhi = *d.terms.keys().next_back().unwrap();
        let (neg, e) = d.terms[&dhi].as_unit()?;
        let inv = LaurentPoly::monomial(if neg { -1 } else { 1 }, -e);
        let mut rem = self.clone();
        let mut q = TPoly::zero();
        let nlo = *self.terms.keys().next().unwrap();
        // every quotient term has degree ≥ nlo − dlo
        while let Some((&top, c)) = rem.terms.iter().next_back() {
            let deg = top - dhi;
            if deg < nlo - dlo {
                return None;
            }
            let coef = c * &inv;
            q.add_term(deg, &coef);
            rem = rem.sub(&d.shift(deg).scale(&coef));
        }
        Some(q)
    }

    pub fn eval(&self, t: &Rat, v: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for (j, c) in &self.terms {
            acc += c.eval(v) * pow(t, *j);
        }
        acc
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_round_trip() {
        // (t² − 1)(v²t + 3) / (t − 1) = (t + 1)(v²t + 3)
        let tm1 = TPoly::monomial(LaurentPoly::one(), 1).sub(&TPoly::monomial(LaurentPoly::one(), 0));
        let tp1 = TPoly::monomial(LaurentPoly::one(), 1).add(&TPoly::monomial(LaurentPoly::one(), 0));
        let f = TPoly::monomial(LaurentPoly::v_pow(2), 1).add(&TPoly::monomial(LaurentPoly::constant(3), 0));
        let n = tm1.mul(&tp1).mul(&f);
        assert_eq!(n.div_exact(&tm1).unwrap(), tp1.mul(&f));
        assert!(f.div_exact(&tm1).is_none());
    }

    #[test]
    fn display_and_json() {
        let p = &LaurentPoly::v_pow(2) - &LaurentPoly::one();
        assert_eq!(p.to_string(), "v^2 - 1");
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<LaurentPoly>(&s).unwrap(), p);
    }
}

//! Elements of Q(ζ₃) written a + b·ζ with ζ² = −1 − ζ. The fields Q(ζ₁) and
//! Q(ζ₂) are the sub-field b = 0, so one type covers every d ∈ {1, 2, 3}.

use num::{One, Zero};
use serde::{Deserialize, Serialize};
use std::fmt;

use crate::scalar::{fmt_rat, int, rat_str, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Cyc {
    #[serde(with = "rat_str")]
    pub a: Rat,
    #[serde(with = "rat_str")]
    pub b: Rat,
}

impl Cyc {
    pub fn new(a: Rat, b: Rat) -> Self {
        Cyc { a, b }
    }
    pub fn from_rat(a: Rat) -> Self {
        Cyc { a, b: Rat::zero() }
    }
    pub fn from_int(n: i64) -> Self {
        Self::from_rat(int(n))
    }
    pub fn zeta3() -> Self {
        Cyc::new(Rat::zero(), Rat::one())
    }

    /// ζ_d^j for d ∈ {1,2,3}.
    pub fn root_of_unity(d: u32, j: u32) -> Self {
        match (d, j % d.max(1)) {
            (_, 0) => Self::from_int(1),
            (2, 1) => Self::from_int(-1),
            (3, 1) => Self::zeta3(),
            (3, 2) => Cyc::new(int(-1), int(-1)),
            _ => panic!("unsupported root of unity order {d}"),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Complex conjugate: ζ ↦ ζ² = −1 − ζ.
    pub fn conj(&self) -> Self {
        Cyc::new(&self.a - &self.b, -&self.b)
    }

    /// Norm a² − ab + b².
    pub fn norm(&self) -> Rat {
        &self.a * &self.a - &self.a * &self.b + &self.b * &self.b
    }

    pub fn scale(&self, k: &Rat) -> Self {
        Cyc::new(&self.a * k, &self.b * k)
    }
}

impl fmt::Display for Cyc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            write!(f, "{}", fmt_rat(&self.a))
        } else {
            write!(f, "{}+({})ζ", fmt_rat(&self.a), fmt_rat(&self.b))
        }
    }
}

/// Minimal field interface used by the dense linear algebra.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn fzero() -> Self;
    fn fone() -> Self;
    fn fis_zero(&self) -> bool;
    fn fadd(&self, o: &Self) -> Self;
    fn fsub(&self, o: &Self) -> Self;
    fn fmul(&self, o: &Self) -> Self;
    fn fneg(&self) -> Self;
    fn finv(&self) -> Self;
    fn ffrom_rat(r: &Rat) -> Self;
}

impl Field for Rat {
    fn fzero() -> Self {
        Zero::zero()
    }
    fn fone() -> Self {
        One::one()
    }
    fn fis_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn fadd(&self, o: &Self) -> Self {
        self + o
    }
    fn fsub(&self, o: &Self) -> Self {
        self - o
    }
    fn fmul(&self, o: &Self) -> Self {
        self * o
    }
    fn fneg(&self) -> Self {
        -self
    }
    fn finv(&self) -> Self {
        self.recip()
    }
    fn ffrom_rat(r: &Rat) -> Self {
        r.clone()
    }
}

impl Field for Cyc {
    fn fzero() -> Self {
        Cyc::from_int(0)
    }
    fn fone() -> Self {
        Cyc::from_int(1)
    }
    fn fis_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }
    fn fadd(&self, o: &Self) -> Self {
        Cyc::new(&self.a + &o.a, &self.b + &o.b)
    }
    fn fsub(&self, o: &Self) -> Self {
        Cyc::new(&self.a - &o.a, &self.b - &o.b)
    }
    fn fmul(&self, o: &Self) -> Self {
        // (a + bζ)(c + eζ) = ac + (ae + bc)ζ + be(−1 − ζ)
        let be = &self.b * &o.b;
        Cyc::new(
            &self.a * &o.a - &be,
            &self.a * &o.b + &self.b * &o.a - be,
        )
    }
    fn fneg(&self) -> Self {
        Cyc::new(-&self.a, -&self.b)
    }
    fn finv(&self) -> Self {
        let n = self.norm();
        assert!(!num::Zero::is_zero(&n), "inverse of zero");
        self.conj().scale(&n.recip())
    }
    fn ffrom_rat(r: &Rat) -> Self {
        Cyc::from_rat(r.clone())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn zeta_cubed_is_one() {
        let z = Cyc::zeta3();
        assert_eq!(z.fmul(&z).fmul(&z), Cyc::fone());
        assert_eq!(z.fmul(&z), Cyc::root_of_unity(3, 2));
        // 1 + ζ + ζ² = 0
        assert!(Cyc::fone().fadd(&z).fadd(&z.fmul(&z)).fis_zero());
    }

    #[test]
    fn inverse() {
        let x = Cyc::new(rat(3, 2), rat(-5, 7));
        assert_eq!(x.fmul(&x.finv()), Cyc::fone());
        assert_eq!(Cyc::root_of_unity(2, 1).fmul(&Cyc::root_of_unity(2, 1)), Cyc::fone());
    }
}

//! Weights of finite-dimensional modules and the ζ-tempered /
//! ζ-square-integrable conditions, with X⁺ given by explicit generators.

use num::{Signed, Zero};
use serde::{Deserialize, Serialize};

use super::datum::HeckeDatum;
use crate::error::{Error, Result};
use crate::scalar::{int, Rat};

/// x(t) = (root of unity)·v₀^q for one basis vector of X.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisValue {
    /// the root of unity as a fraction of a full turn, kept for display
    #[serde(with = "crate::scalar::rat_str")]
    pub torsion: Rat,
    #[serde(with = "crate::scalar::rat_str")]
    pub exponent: Rat,
}

/// A weight t, through the values of the basis of X.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDatum {
    pub basis: Vec<BasisValue>,
}

impl WeightDatum {
    pub fn from_exponents(q: &[Rat]) -> Self {
        WeightDatum { basis: q.iter().map(|e| BasisValue { torsion: Rat::zero(), exponent: e.clone() }).collect() }
    }

    /// ζ(x(t))/ζ(v₀): the torsion part is killed by ζ, exponents add up.
    pub fn exponent(&self, x: &[i64]) -> Rat {
        self.basis.iter().zip(x).map(|(b, &k)| &b.exponent * int(k)).sum()
    }
}

/// Checks that every generator lies in X⁺ and is nonzero.
pub fn validate_generators(d: &HeckeDatum, gens: &[Vec<i64>]) -> Result<()> {
    for g in gens {
        if g.len() != d.dim_x() {
            return Err(Error::Validation(format!("X⁺ generator {g:?} has length ≠ rank(X) = {}", d.dim_x())));
        }
        if g.iter().all(|&c| c == 0) {
            return Err(Error::Validation("X⁺ generators must be nonzero".into()));
        }
        if let Some(i) = (0..d.rank()).find(|&i| d.eval_coroot(g, i) < 0) {
            return Err(Error::Validation(format!("generator {g:?} has ⟨x, α̌_{i}⟩ < 0, so it is not in X⁺")));
        }
    }
    Ok(())
}

fn validate_weights(d: &HeckeDatum, weights: &[WeightDatum]) -> Result<()> {
    if let Some(w) = weights.iter().find(|w| w.basis.len() != d.dim_x()) {
        return Err(Error::Validation(format!("weight has {} basis values, rank(X) = {}", w.basis.len(), d.dim_x())));
    }
    Ok(())
}

/// ζ(x(t))/ζ(v₀) ≥ 0 for every weight and every x ∈ X⁺. The generators must
/// generate X⁺ as a monoid; exponents are additive, so checking them suffices.
pub fn tempered_predicate(d: &HeckeDatum, weights: &[WeightDatum], gens: &[Vec<i64>]) -> Result<bool> {
    validate_generators(d, gens)?;
    validate_weights(d, weights)?;
    Ok(weights.iter().all(|w| gens.iter().all(|g| !w.exponent(g).is_negative())))
}

/// ζ(x(t))/ζ(v₀) > 0 for every weight and every x ∈ X⁺ − {0}.
pub fn square_integrable_predicate(d: &HeckeDatum, weights: &[WeightDatum], gens: &[Vec<i64>]) -> Result<bool> {
    if !d.roots_finite_index() {
        return Err(Error::Validation("R does not generate a subgroup of finite index of X".into()));
    }
    validate_generators(d, gens)?;
    validate_weights(d, weights)?;
    Ok(weights.iter().all(|w| gens.iter().all(|g| w.exponent(g).is_positive())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_predicates() {
        let sl2 = HeckeDatum::new(vec![vec![2]], vec![vec![1]]).unwrap();
        let gens = vec![vec![1]];
        let zero = WeightDatum::from_exponents(&[int(0)]);
        assert!(tempered_predicate(&sl2, &[zero.clone()], &gens).unwrap());
        assert!(!square_integrable_predicate(&sl2, &[zero], &gens).unwrap());
        let pos = WeightDatum::from_exponents(&[int(1)]);
        assert!(square_integrable_predicate(&sl2, &[pos], &gens).unwrap());
        let neg = WeightDatum::from_exponents(&[int(-1)]);
        assert!(!tempered_predicate(&sl2, &[neg], &gens).unwrap());
        assert!(tempered_predicate(&sl2, &[], &[vec![-1]]).is_err());
        let gl2 = HeckeDatum::new(vec![vec![1, -1]], vec![vec![1, -1]]).unwrap();
        assert!(square_integrable_predicate(&gl2, &[], &[vec![1, 0]]).is_err());
    }
}

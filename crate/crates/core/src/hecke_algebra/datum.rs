//! Root data (R, Ř, X, Y) given by simple roots in X and simple coroots in Y,
//! and the finite Weyl group W₀ acting on X.

use serde::{Deserialize, Serialize};
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg;
use crate::rootdata::dot;
use crate::scalar::int;

/// Largest rank of X and of Π accepted by the symbolic algebras.
pub const DEFAULT_MAX_RANK: usize = 2;
const W0_BOUND: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HeckeDatum {
    /// simple roots α in coordinates of a basis of X
    pub roots: Vec<Vec<i64>>,
    /// simple coroots α̌ in the dual basis of Y
    pub coroots: Vec<Vec<i64>>,
}

impl HeckeDatum {
    pub fn new(roots: Vec<Vec<i64>>, coroots: Vec<Vec<i64>>) -> Result<Self> {
        Self::with_max_rank(roots, coroots, DEFAULT_MAX_RANK)
    }

    pub fn with_max_rank(roots: Vec<Vec<i64>>, coroots: Vec<Vec<i64>>, max_rank: usize) -> Result<Self> {
        if roots.len() != coroots.len() {
            return Err(Error::Validation(format!("{} simple roots but {} coroots", roots.len(), coroots.len())));
        }
        let n = roots.first().map(|r| r.len()).unwrap_or(0);
        if n == 0 {
            return Err(Error::Validation("X must have positive rank".into()));
        }
        if roots.iter().chain(&coroots).any(|v| v.len() != n) {
            return Err(Error::Validation("root and coroot vectors must all have length rank(X)".into()));
        }
        if n > max_rank || roots.len() > max_rank {
            return Err(Error::TooLarge(format!(
                "rank(X) = {n}, |Π| = {} exceeds the configured bound {max_rank}",
                roots.len()
            )));
        }
        let d = HeckeDatum { roots, coroots };
        for i in 0..d.rank() {
            for j in 0..d.rank() {
                let a = d.pairing(i, j);
                if i == j && a != 2 {
                    return Err(Error::Validation(format!("⟨α_{i}, α̌_{i}⟩ = {a} ≠ 2")));
                }
                if i != j && (a > 0 || (a == 0) != (d.pairing(j, i) == 0)) {
                    return Err(Error::Validation("off-diagonal pairings do not form a Cartan matrix".into()));
                }
            }
        }
        if d.rank() == 2 && d.pairing(0, 1) * d.pairing(1, 0) > 3 {
            return Err(Error::Validation("Π is not the basis of a finite root system".into()));
        }
        let rows: Vec<Vec<_>> = d.roots.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect();
        if linalg::rank(&rows) != d.rank() {
            return Err(Error::Validation("simple roots are linearly dependent".into()));
        }
        Ok(d)
    }

    /// X = root lattice: α_i = e_i, α̌_i = row i of the Cartan matrix a_ij = ⟨α_j, α̌_i⟩.
    pub fn adjoint(cartan: &[Vec<i64>]) -> Result<Self> {
        let n = cartan.len();
        let roots = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        Self::new(roots, cartan.to_vec())
    }

    /// X = weight lattice: α_i = Σ_j ⟨α_i, α̌_j⟩ ϖ_j, α̌_i = e_i.
    pub fn simply_connected(cartan: &[Vec<i64>]) -> Result<Self> {
        let n = cartan.len();
        let roots = (0..n).map(|i| (0..n).map(|j| cartan[j][i]).collect()).collect();
        let coroots = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        Self::new(roots, coroots)
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    pub fn dim_x(&self) -> usize {
        self.roots[0].len()
    }

    /// ⟨α_i, α̌_j⟩
    pub fn pairing(&self, i: usize, j: usize) -> i64 {
        dot(&self.roots[i], &self.coroots[j])
    }

    /// ⟨x, α̌_i⟩
    pub fn eval_coroot(&self, x: &[i64], i: usize) -> i64 {
        dot(x, &self.coroots[i])
    }

    pub fn reflect(&self, i: usize, x: &[i64]) -> Vec<i64> {
        let k = self.eval_coroot(x, i);
        x.iter().zip(&self.roots[i]).map(|(a, b)| a - k * b).collect()
    }

    /// α̌_i ∈ 2Y
    pub fn coroot_in_2y(&self, i: usize) -> bool {
        self.coroots[i].iter().all(|c| c % 2 == 0)
    }

    /// The simple roots span a finite-index subgroup of X.
    pub fn roots_finite_index(&self) -> bool {
        self.rank() == self.dim_x()
    }

    /// ⟨α_i, α̌_j⟩ = ⟨α_j, α̌_i⟩ = −1
    pub fn simply_joined(&self, i: usize, j: usize) -> bool {
        i != j && self.pairing(i, j) == -1 && self.pairing(j, i) == -1
    }
}

/// W₀ with reduced words, lengths and multiplication by simple reflections.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    /// matrices acting on X-coordinates (columns are images of basis vectors)
    pub mats: Vec<Vec<Vec<i64>>>,
    /// shortlex reduced words
    pub words: Vec<Vec<usize>>,
    /// left[s][w] = s·w
    pub left: Vec<Vec<usize>>,
    /// right[s][w] = w·s
    pub right: Vec<Vec<usize>>,
    pub inverse: Vec<usize>,
}

impl WeylGroup {
    pub fn new(d: &HeckeDatum) -> Result<Self> {
        let n = d.dim_x();
        let ident: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
        let gens: Vec<Vec<Vec<i64>>> = (0..d.rank()).map(|s| reflection_matrix(d, s)).collect();
        let mut mats = vec![ident];
        let mut words: Vec<Vec<usize>> = vec![vec![]];
        let mut index: HashMap<Vec<Vec<i64>>, usize> = HashMap::new();
        index.insert(mats[0].clone(), 0);
        let mut head = 0;
        // BFS appending generators on the right: words come out shortlex
        while head < mats.len() {
            for (s, g) in gens.iter().enumerate() {
                let m = mat_mul(&mats[head], g);
                if !index.contains_key(&m) {
                    if mats.len() >= W0_BOUND {
                        return Err(Error::TooLarge(format!("W₀ exceeds {W0_BOUND} elements")));
                    }
                    let mut w = words[head].clone();
                    w.push(s);
                    index.insert(m.clone(), mats.len());
                    mats.push(m);
                    words.push(w);
                }
            }
            head += 1;
        }
        let look = |m: &Vec<Vec<i64>>| index[m];
        let left = gens.iter().map(|g| mats.iter().map(|m| look(&mat_mul(g, m))).collect()).collect();
        let right = gens.iter().map(|g| mats.iter().map(|m| look(&mat_mul(m, g))).collect()).collect();
        let inverse = (0..mats.len())
            .map(|w| {
                let mut word = words[w].clone();
                word.reverse();
                let mut m = mats[0].clone();
                for s in word {
                    m = mat_mul(&m, &gens[s]);
                }
                look(&m)
            })
            .collect();
        Ok(WeylGroup { mats, words, left, right, inverse })
    }

    pub fn order(&self) -> usize {
        self.mats.len()
    }

    pub fn len(&self, w: usize) -> usize {
        self.words[w].len()
    }

    pub fn act(&self, w: usize, x: &[i64]) -> Vec<i64> {
        self.mats[w].iter().map(|row| dot(row, x)).collect()
    }

    /// Product w·w' by right multiplication along a word of w'.
    pub fn mul(&self, w: usize, w2: usize) -> usize {
        self.words[w2].iter().fold(w, |acc, &s| self.right[s][acc])
    }

    /// Index of the element with the given word (reduced or not).
    pub fn from_word(&self, word: &[usize]) -> Result<usize> {
        let mut w = 0;
        for &s in word {
            if s >= self.right.len() {
                return Err(Error::Validation(format!("no simple reflection s_{s}")));
            }
            w = self.right[s][w];
        }
        Ok(w)
    }

    pub fn longest(&self) -> usize {
        (0..self.order()).max_by_key(|&w| self.len(w)).unwrap()
    }
}

fn reflection_matrix(d: &HeckeDatum, s: usize) -> Vec<Vec<i64>> {
    let n = d.dim_x();
    // column j = s(e_j)
    let cols: Vec<Vec<i64>> = (0..n)
        .map(|j| {
            let e: Vec<i64> = (0..n).map(|i| i64::from(i == j)).collect();
            d.reflect(s, &e)
        })
        .collect();
    (0..n).map(|i| (0..n).map(|j| cols[j][i]).collect()).collect()
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b[0].len();
    a.iter().map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_orders() {
        let a2 = HeckeDatum::adjoint(&[vec![2, -1], vec![-1, 2]]).unwrap();
        assert_eq!(WeylGroup::new(&a2).unwrap().order(), 6);
        let b2 = HeckeDatum::new(vec![vec![1, -1], vec![0, 1]], vec![vec![1, -1], vec![0, 2]]).unwrap();
        let w = WeylGroup::new(&b2).unwrap();
        assert_eq!(w.order(), 8);
        assert_eq!(w.len(w.longest()), 4);
        assert!(b2.coroot_in_2y(1) && !b2.coroot_in_2y(0));
        let g2 = HeckeDatum::adjoint(&[vec![2, -1], vec![-3, 2]]).unwrap();
        assert_eq!(WeylGroup::new(&g2).unwrap().order(), 12);
    }

    #[test]
    fn rank_bound() {
        let a3 = [vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]];
        assert!(matches!(HeckeDatum::adjoint(&a3), Err(Error::TooLarge(_))));
    }
}

//! The decomposition g = ⊕ g_{β,j} into joint eigenspaces of 𝔱 and Ad(τ).

use serde::Serialize;
use std::collections::HashMap;

use super::chevalley::{ChevalleyAlgebra, TauAction};
use crate::alcove::{in_n, n_set};
use crate::cyclo::{Cyc, Field};
use crate::error::{Error, Result};
use crate::folding::FoldedRootDatum;
use crate::linalg::{self, Mat};

#[derive(Clone, Debug, Serialize)]
pub struct GradedPiece {
    /// β in β_i-coordinates (zero vector for the Cartan part)
    pub beta: Vec<i64>,
    pub j: u32,
    /// spanning vectors in the Chevalley basis
    #[serde(skip)]
    pub basis: Vec<Vec<Cyc>>,
    pub dim: usize,
}

#[derive(Clone, Debug)]
struct Block {
    support: Vec<usize>,
    /// pieces of this block, j = 0..d
    pieces: Vec<usize>,
    /// inverse of the matrix whose columns are the eigenvectors (restricted to the support)
    inv: Mat<Cyc>,
}

#[derive(Clone, Debug)]
pub struct Grading {
    pub d: u32,
    pub dim: usize,
    pub pieces: Vec<GradedPiece>,
    lookup: HashMap<(Vec<i64>, u32), usize>,
    blocks: Vec<Block>,
}

impl Grading {
    pub fn piece(&self, beta: &[i64], j: u32) -> Option<&GradedPiece> {
        self.lookup.get(&(beta.to_vec(), j)).map(|&k| &self.pieces[k])
    }

    pub fn piece_index(&self, beta: &[i64], j: u32) -> Option<usize> {
        self.lookup.get(&(beta.to_vec(), j)).copied()
    }

    /// Coordinates of v against every piece basis (indexed like `pieces`).
    pub fn coords(&self, v: &[Cyc]) -> Vec<Vec<Cyc>> {
        let mut out: Vec<Vec<Cyc>> = self.pieces.iter().map(|p| vec![Cyc::fzero(); p.dim]).collect();
        for b in &self.blocks {
            let restricted: Vec<Cyc> = b.support.iter().map(|&s| v[s].clone()).collect();
            if restricted.iter().all(|x| x.fis_zero()) {
                continue;
            }
            let c = linalg::mat_vec(&b.inv, &restricted);
            let mut pos = 0;
            for &p in &b.pieces {
                let dim = self.pieces[p].dim;
                out[p] = c[pos..pos + dim].to_vec();
                pos += dim;
            }
        }
        out
    }

    pub fn embed(&self, piece: usize, coords: &[Cyc]) -> Vec<Cyc> {
        let mut v = vec![Cyc::fzero(); self.dim];
        for (c, bv) in coords.iter().zip(&self.pieces[piece].basis) {
            if c.fis_zero() {
                continue;
            }
            for (x, y) in v.iter_mut().zip(bv) {
                if !y.fis_zero() {
                    *x = x.fadd(&c.fmul(y));
                }
            }
        }
        v
    }
}

/// Decomposes g; checks dim g_β = d'_β for every restricted root.
pub fn graded_decomposition(alg: &ChevalleyAlgebra, tau: &TauAction, f: &FoldedRootDatum) -> Result<Grading> {
    if alg.code != f.code || tau.d != f.d {
        return Err(Error::Validation("algebra and fold describe different (type, d)".into()));
    }
    let n = alg.rank;
    let m = f.rank();
    let mut supports: HashMap<Vec<i64>, Vec<usize>> = HashMap::new();
    supports.insert(vec![0; m], (0..n).collect());
    for b in n..alg.dim() {
        let beta = f.restrict(alg.root_of(b).unwrap());
        supports.entry(beta).or_default().push(b);
    }
    let mut betas: Vec<Vec<i64>> = vec![vec![0; m]];
    betas.extend(f.rroots.iter().map(|r| r.coords.clone()));
    if supports.len() != betas.len() {
        return Err(Error::Invariant("restricted roots of the engine differ from the fold".into()));
    }
    let d = f.d;
    let mut pieces = vec![];
    let mut lookup = HashMap::new();
    let mut blocks = vec![];
    for beta in betas {
        let support = supports
            .get(&beta)
            .ok_or_else(|| Error::Invariant(format!("fold root {beta:?} has no root space")))?
            .clone();
        if let Some((d1, _, _)) = f.d_of(&beta) {
            if d1 as usize != support.len() {
                return Err(Error::Invariant(format!(
                    "dim g_β = {} but d'_β = {d1} for β = {beta:?}",
                    support.len()
                )));
            }
        }
        let pos: HashMap<usize, usize> = support.iter().enumerate().map(|(k, &s)| (s, k)).collect();
        let s = support.len();
        let mut mat: Mat<Cyc> = vec![vec![Cyc::fzero(); s]; s];
        for (col, &b) in support.iter().enumerate() {
            let (img, sign) = tau.image[b];
            let row = *pos.get(&img).ok_or_else(|| Error::Invariant("Ad(τ) does not preserve g_β".into()))?;
            mat[row][col] = Cyc::from_int(sign);
        }
        let mut cols: Vec<Vec<Cyc>> = vec![];
        let mut block_pieces = vec![];
        for j in 0..d {
            let z = Cyc::root_of_unity(d, j);
            let mut shifted = mat.clone();
            for (k, row) in shifted.iter_mut().enumerate() {
                row[k] = row[k].fsub(&z);
            }
            let ker = linalg::nullspace(&shifted, s);
            let basis: Vec<Vec<Cyc>> = ker
                .iter()
                .map(|v| {
                    let mut full = vec![Cyc::fzero(); alg.dim()];
                    for (k, &b) in support.iter().enumerate() {
                        full[b] = v[k].clone();
                    }
                    full
                })
                .collect();
            cols.extend(ker);
            lookup.insert((beta.clone(), j), pieces.len());
            block_pieces.push(pieces.len());
            pieces.push(GradedPiece { beta: beta.clone(), j, dim: basis.len(), basis });
        }
        if cols.len() != s {
            return Err(Error::Invariant(format!("Ad(τ) not diagonalizable on g_β for β = {beta:?}")));
        }
        let p = linalg::transpose(&cols);
        let inv = linalg::inverse(&p).ok_or_else(|| Error::Invariant("eigenvectors dependent".into()))?;
        blocks.push(Block { support, pieces: block_pieces, inv });
    }
    let g = Grading { d, dim: alg.dim(), pieces, lookup, blocks };
    let fixed = g.piece(&vec![0; m], 0).map(|p| p.dim).unwrap_or(0);
    if fixed != m {
        return Err(Error::Invariant(format!("g_(0,0) has dim {fixed}, expected dim 𝔱 = {m}")));
    }
    let total: usize = g.pieces.iter().map(|p| p.dim).sum();
    if total != alg.dim() {
        return Err(Error::Invariant("graded pieces do not add up to g".into()));
    }
    Ok(g)
}

/// Basis of 𝔱 = (𝔱')^τ: orbit sums of the h_{i'}.
pub fn torus_basis(f: &FoldedRootDatum, dim: usize) -> Vec<Vec<Cyc>> {
    f.orbits
        .iter()
        .map(|o| {
            let mut v = vec![Cyc::fzero(); dim];
            for &i in o {
                v[i] = Cyc::fone();
            }
            v
        })
        .collect()
}

/// Checks [t, v] = β(t)v for t ∈ 𝔱 and Ad(τ)v = ζ^j v on every piece vector.
pub fn check_pieces(alg: &ChevalleyAlgebra, tau: &TauAction, f: &FoldedRootDatum, g: &Grading) -> Result<()> {
    let tb = torus_basis(f, alg.dim());
    for p in &g.pieces {
        let z = Cyc::root_of_unity(g.d, p.j);
        for v in &p.basis {
            let tv = tau.apply(v);
            let want: Vec<Cyc> = v.iter().map(|x| x.fmul(&z)).collect();
            if tv != want {
                return Err(Error::Invariant(format!("Ad(τ) eigenvalue wrong on g_({:?},{})", p.beta, p.j)));
            }
            for (k, t) in tb.iter().enumerate() {
                let tr: Vec<crate::scalar::Rat> = t.iter().map(|x| x.a.clone()).collect();
                let val = f.eval(&p.beta, &tr);
                let br = alg.bracket(t, v);
                let want: Vec<Cyc> = v.iter().map(|x| x.scale(&val)).collect();
                if br != want {
                    return Err(Error::Invariant(format!("𝔱-weight wrong on g_({:?},{}) (t_{k})", p.beta, p.j)));
                }
            }
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct PieceMismatch {
    pub beta: Vec<i64>,
    pub j: u32,
    pub dim: usize,
    pub in_n: bool,
}

/// dim g_{β,j} against the 𝔑-indicator over every restricted root and j.
pub fn n_dimension_mismatches(f: &FoldedRootDatum, g: &Grading) -> Vec<PieceMismatch> {
    let mut out = vec![];
    for r in &f.rroots {
        for j in 0..f.d {
            let dim = g.piece(&r.coords, j).map(|p| p.dim).unwrap_or(0);
            let inn = in_n(f, &r.coords, j);
            if dim != inn as usize {
                out.push(PieceMismatch { beta: r.coords.clone(), j, dim, in_n: inn });
            }
        }
    }
    debug_assert!(n_set(f).len() <= f.rroots.len() * f.d as usize);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folding::fold;
    use crate::lie::chevalley::build_chevalley;

    fn grading(code: &str, d: u32) -> (ChevalleyAlgebra, TauAction, FoldedRootDatum, Grading) {
        let (alg, t) = build_chevalley(code, d).unwrap();
        let f = fold(code, d).unwrap();
        let g = graded_decomposition(&alg, &t, &f).unwrap();
        (alg, t, f, g)
    }

    #[test]
    fn a2_long_root_piece() {
        let (alg, t, f, g) = grading("A2", 2);
        check_pieces(&alg, &t, &f, &g).unwrap();
        let two_beta = f.rroots.iter().find(|r| r.d1 == 1 && r.coords[0] > 0).unwrap().coords.clone();
        assert_eq!(g.piece(&two_beta, 1).unwrap().dim, 1);
        assert_eq!(g.piece(&two_beta, 0).unwrap().dim, 0);
        assert!(n_dimension_mismatches(&f, &g).is_empty());
    }

    #[test]
    fn d4_triality_pieces() {
        let (alg, t, f, g) = grading("D4", 3);
        check_pieces(&alg, &t, &f, &g).unwrap();
        for r in f.rroots.iter().filter(|r| r.d1 == 3) {
            for j in 0..3 {
                assert_eq!(g.piece(&r.coords, j).unwrap().dim, 1);
            }
        }
        assert!(n_dimension_mismatches(&f, &g).is_empty());
    }

    #[test]
    fn coords_roundtrip() {
        let (alg, _, _, g) = grading("D4", 3);
        let v: Vec<Cyc> = (0..alg.dim()).map(|k| Cyc::from_int(k as i64 % 5 - 2)).collect();
        let c = g.coords(&v);
        let mut back = vec![Cyc::fzero(); alg.dim()];
        for (p, cp) in c.iter().enumerate() {
            let e = g.embed(p, cp);
            for (x, y) in back.iter_mut().zip(e) {
                *x = x.fadd(&y);
            }
        }
        assert_eq!(back, v);
    }
}

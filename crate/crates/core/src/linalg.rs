//! Dense exact linear algebra over a `Field`, plus integer lattice tools
//! (echelon bases, kernels over Z, Smith invariants).

use num::{BigInt, Integer, Signed, ToPrimitive};

use crate::cyclo::Field;
use crate::scalar::Rat;

pub type Mat<F> = Vec<Vec<F>>;

pub fn identity<F: Field>(n: usize) -> Mat<F> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { F::fone() } else { F::fzero() }).collect())
        .collect()
}

pub fn mat_mul<F: Field>(a: &Mat<F>, b: &Mat<F>) -> Mat<F> {
    let k = b.len();
    let m = if k == 0 { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..m)
                .map(|j| {
                    let mut s = F::fzero();
                    for t in 0..k {
                        if !row[t].fis_zero() && !b[t][j].fis_zero() {
                            s = s.fadd(&row[t].fmul(&b[t][j]));
                        }
                    }
                    s
                })
                .collect()
        })
        .collect()
}

pub fn mat_vec<F: Field>(a: &Mat<F>, v: &[F]) -> Vec<F> {
    a.iter()
        .map(|row| {
            row.iter().zip(v).fold(F::fzero(), |s, (x, y)| {
                if x.fis_zero() || y.fis_zero() {
                    s
                } else {
                    s.fadd(&x.fmul(y))
                }
            })
        })
        .collect()
}

pub fn transpose<F: Clone>(a: &[Vec<F>]) -> Vec<Vec<F>> {
    if a.is_empty() {
        return vec![];
    }
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j].clone()).collect()).collect()
}

/// In-place reduced row echelon form; returns pivot columns.
pub fn rref<F: Field>(m: &mut Mat<F>) -> Vec<usize> {
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut pivots = vec![];
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].fis_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][c].finv();
        for x in m[r].iter_mut() {
            *x = x.fmul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].fis_zero() {
                let f = m[i][c].clone();
                for j in 0..cols {
                    if !m[r][j].fis_zero() {
                        let t = f.fmul(&m[r][j]);
                        m[i][j] = m[i][j].fsub(&t);
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Mat<F>) -> usize {
    let mut a = m.clone();
    rref(&mut a).len()
}

/// Basis of {v : m v = 0}; `cols` is needed when m has no rows.
pub fn nullspace<F: Field>(m: &Mat<F>, cols: usize) -> Vec<Vec<F>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![F::fzero(); cols];
            v[f] = F::fone();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = a[r][f].fneg();
            }
            v
        })
        .collect()
}

/// Some x with m x = b, if one exists.
pub fn solve<F: Field>(m: &Mat<F>, b: &[F]) -> Option<Vec<F>> {
    let cols = if m.is_empty() { 0 } else { m[0].len() };
    let mut aug: Mat<F> = m
        .iter()
        .zip(b)
        .map(|(row, x)| {
            let mut r = row.clone();
            r.push(x.clone());
            r
        })
        .collect();
    if aug.is_empty() {
        return Some(vec![]);
    }
    let pivots = rref(&mut aug);
    if pivots.last() == Some(&cols) {
        return None;
    }
    let mut x = vec![F::fzero(); cols];
    for (r, &p) in pivots.iter().enumerate() {
        x[p] = aug[r][cols].clone();
    }
    Some(x)
}

pub fn inverse<F: Field>(m: &Mat<F>) -> Option<Mat<F>> {
    let n = m.len();
    let mut aug: Mat<F> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { F::fone() } else { F::fzero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Coordinates of v in the (independent) rows of `basis`, if v lies in their span.
pub fn coords_in<F: Field>(basis: &[Vec<F>], v: &[F]) -> Option<Vec<F>> {
    solve(&transpose(basis), v)
}

// ---------------------------------------------------------------- integers

pub fn gcd(a: i128, b: i128) -> i128 {
    a.gcd(&b)
}

fn big_to_i128(b: &BigInt) -> i128 {
    b.to_i128().expect("integer overflow in lattice computation")
}

/// Least common denominator of a set of rationals.
pub fn common_denominator<'a>(xs: impl IntoIterator<Item = &'a Rat>) -> i128 {
    xs.into_iter().fold(1i128, |l, x| l.lcm(&big_to_i128(x.denom())))
}

pub fn rat_to_i128(x: &Rat) -> Option<i128> {
    if x.is_integer() {
        x.numer().to_i128()
    } else {
        None
    }
}

/// Row echelon basis of the Z-span of `rows` (zero rows dropped).
pub fn z_row_basis(rows: &[Vec<i128>]) -> Vec<Vec<i128>> {
    let mut h: Vec<Vec<i128>> = rows.iter().filter(|r| r.iter().any(|&x| x != 0)).cloned().collect();
    if h.is_empty() {
        return h;
    }
    let cols = h[0].len();
    let mut out = vec![];
    let mut r0 = 0;
    for c in 0..cols {
        loop {
            let piv = (r0..h.len()).filter(|&i| h[i][c] != 0).min_by_key(|&i| h[i][c].abs());
            let Some(p) = piv else { break };
            h.swap(r0, p);
            let mut clean = true;
            for i in r0 + 1..h.len() {
                if h[i][c] != 0 {
                    let q = h[i][c].div_euclid(h[r0][c]);
                    for j in 0..cols {
                        h[i][j] -= q * h[r0][j];
                    }
                    if h[i][c] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                if h[r0][c] < 0 {
                    for x in h[r0].iter_mut() {
                        *x = -*x;
                    }
                }
                out.push(h[r0].clone());
                r0 += 1;
                break;
            }
        }
        if r0 == h.len() {
            break;
        }
    }
    out
}

/// Integer combination of echelon `basis` rows equal to v, if any.
pub fn z_coords(basis: &[Vec<i128>], v: &[i128]) -> Option<Vec<i128>> {
    let mut rest = v.to_vec();
    let mut out = vec![];
    for b in basis {
        let c = b.iter().position(|&x| x != 0)?;
        if rest[c] % b[c] != 0 {
            return None;
        }
        let q = rest[c] / b[c];
        for j in 0..rest.len() {
            rest[j] -= q * b[j];
        }
        out.push(q);
    }
    rest.iter().all(|&x| x == 0).then_some(out)
}

/// Z-basis of {v ∈ Z^n : a v = 0}.
pub fn z_kernel(a: &[Vec<i128>], n: usize) -> Vec<Vec<i128>> {
    let mut h: Vec<Vec<i128>> = a.to_vec();
    let mut u: Vec<Vec<i128>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i128).collect()).collect();
    // column operations; u[c] holds column c of the transform
    let mut col = 0;
    for r in 0..h.len() {
        loop {
            let piv = (col..n).filter(|&c| h[r][c] != 0).min_by_key(|&c| h[r][c].abs());
            let Some(p) = piv else { break };
            for row in h.iter_mut() {
                row.swap(col, p);
            }
            u.swap(col, p);
            let mut clean = true;
            for c in col + 1..n {
                if h[r][c] != 0 {
                    let q = h[r][c].div_euclid(h[r][col]);
                    for row in h.iter_mut() {
                        row[c] -= q * row[col];
                    }
                    let uc = u[col].clone();
                    for (x, y) in u[c].iter_mut().zip(&uc) {
                        *x -= q * y;
                    }
                    if h[r][c] != 0 {
                        clean = false;
                    }
                }
            }
            if clean {
                col += 1;
                break;
            }
        }
    }
    u[col..].to_vec()
}

/// Diagonal of the Smith normal form (nonzero invariant factors).
pub fn smith_invariants(a: &[Vec<i128>]) -> Vec<i128> {
    let mut m: Vec<Vec<i128>> = a.to_vec();
    let rows = m.len();
    if rows == 0 {
        return vec![];
    }
    let cols = m[0].len();
    let mut diag = vec![];
    for t in 0..rows.min(cols) {
        // smallest nonzero entry in the trailing block
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    if m[i][j] != 0 && best.map_or(true, |(bi, bj)| m[i][j].abs() < m[bi][bj].abs()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return diag;
            };
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            let p = m[t][t];
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t].div_euclid(p);
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                clean &= m[i][t] == 0;
            }
            for j in t + 1..cols {
                let q = m[t][j].div_euclid(p);
                if q != 0 {
                    for row in m.iter_mut().skip(t) {
                        row[j] -= q * row[t];
                    }
                }
                clean &= m[t][j] == 0;
            }
            if !clean {
                continue;
            }
            // divisibility of the remaining block
            let bad = (t + 1..rows).flat_map(|i| (t + 1..cols).map(move |j| (i, j))).find(|&(i, j)| m[i][j] % p != 0);
            if let Some((i, _)) = bad {
                for j in t..cols {
                    m[t][j] += m[i][j];
                }
                continue;
            }
            diag.push(p.abs());
            break;
        }
    }
    diag
}

/// A lattice (1/denom)·Z-span(basis) inside Q^n.
#[derive(Clone, Debug)]
pub struct QLattice {
    pub dim: usize,
    pub denom: i128,
    pub basis: Vec<Vec<i128>>,
}

impl QLattice {
    pub fn from_generators(dim: usize, gens: &[Vec<Rat>]) -> Self {
        let denom = common_denominator(gens.iter().flatten());
        let d = Rat::from_integer(BigInt::from(denom));
        let rows: Vec<Vec<i128>> = gens
            .iter()
            .map(|g| g.iter().map(|x| rat_to_i128(&(x * &d)).unwrap()).collect())
            .collect();
        QLattice { dim, denom, basis: z_row_basis(&rows) }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        let d = Rat::from_integer(BigInt::from(self.denom));
        let scaled: Option<Vec<i128>> = v.iter().map(|x| rat_to_i128(&(x * &d))).collect();
        match scaled {
            Some(s) => z_coords(&self.basis, &s).is_some(),
            None => false,
        }
    }

    /// Rational basis vectors.
    pub fn basis_rat(&self) -> Vec<Vec<Rat>> {
        self.basis
            .iter()
            .map(|b| b.iter().map(|&x| Rat::new(BigInt::from(x), BigInt::from(self.denom))).collect())
            .collect()
    }
}

pub fn is_positive_int(x: &Rat) -> bool {
    x.is_integer() && x.is_positive()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn solve_and_nullspace() {
        let m: Mat<Rat> = vec![vec![int(1), int(2), int(3)], vec![int(2), int(4), int(7)]];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        assert!(mat_vec(&m, &ns[0]).iter().all(|x| x == &int(0)));
        let x = solve(&m, &[int(1), int(1)]).unwrap();
        assert_eq!(mat_vec(&m, &x), vec![int(1), int(1)]);
        assert!(solve(&vec![vec![int(1)], vec![int(1)]], &[int(1), int(2)]).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let m: Mat<Rat> = vec![vec![int(2), int(-1)], vec![int(-1), int(2)]];
        let inv = inverse(&m).unwrap();
        assert_eq!(mat_mul(&m, &inv), identity(2));
        assert_eq!(inv[0][0], rat(2, 3));
    }

    #[test]
    fn lattice_tools() {
        let basis = z_row_basis(&[vec![2, 0], vec![0, 3], vec![2, 3]]);
        assert_eq!(basis.len(), 2);
        assert!(z_coords(&basis, &[4, 9]).is_some());
        assert!(z_coords(&basis, &[1, 0]).is_none());
        assert_eq!(smith_invariants(&[vec![2, 4], vec![6, 8]]), vec![2, 4]);
        assert_eq!(smith_invariants(&[vec![2, 0], vec![0, 3]]), vec![1, 6]);
        let k = z_kernel(&[vec![1, 1, 0]], 3);
        assert_eq!(k.len(), 2);
        for v in &k {
            assert_eq!(v[0] + v[1], 0);
        }
        let l = QLattice::from_generators(1, &[vec![rat(1, 2)]]);
        assert!(l.contains(&[int(3)]));
        assert!(!l.contains(&[rat(1, 3)]));
    }
}

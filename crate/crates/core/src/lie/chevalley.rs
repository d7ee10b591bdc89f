//! Chevalley bases of simply-laced simple Lie algebras with signs from the
//! Frenkel–Kac cocycle, and the diagram automorphism Ad(τ).

use serde::Serialize;
use std::collections::HashMap;

use crate::cyclo::Field;
use crate::error::{Error, Result};
use crate::folding::standard_tau;
use crate::rootdata::{parse_type_code, CartanDatum};

/// Sparse integer vector: (basis index, coefficient).
pub type Sparse = Vec<(usize, i64)>;

#[derive(Clone, Debug, Serialize)]
pub struct ChevalleyAlgebra {
    pub code: String,
    /// |I'|; basis indices 0..rank are h_{i'}
    pub rank: usize,
    /// roots in Π'-coordinates; basis index rank + r is x_{roots[r]}
    pub roots: Vec<Vec<i64>>,
    pub cartan: Vec<Vec<i64>>,
    #[serde(skip)]
    index: HashMap<Vec<i64>, usize>,
    /// table[a][b] = [basis_a, basis_b]
    #[serde(skip)]
    table: Vec<Vec<Sparse>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TauAction {
    pub d: u32,
    pub tau: Vec<usize>,
    /// Ad(τ) on basis vectors: basis index ↦ (image index, sign)
    pub image: Vec<(usize, i64)>,
}

/// Allowed (type, d) pairs for the engine.
pub fn check_supported(code: &str, d: u32) -> Result<()> {
    let (fam, n) = parse_type_code(code)?;
    let ok_type = match fam {
        'A' => (1..=12).contains(&n),
        'D' => (4..=12).contains(&n),
        'E' => n == 6,
        _ => false,
    };
    let ok_d = match d {
        1 => true,
        2 => (fam == 'A' && n >= 2) || fam == 'D' || fam == 'E',
        3 => fam == 'D' && n == 4,
        _ => false,
    };
    if !ok_type || !ok_d {
        return Err(Error::Validation(format!(
            "unsupported (type, d) = ({code}, {d}); the engine covers A_n (n ≤ 12) and D_n (4 ≤ n ≤ 12) with d ∈ {{1,2}} (A_1 only d=1), E6 with d ∈ {{1,2}}, and D4 with d = 3"
        )));
    }
    Ok(())
}

fn height(a: &[i64]) -> i64 {
    a.iter().sum()
}

impl ChevalleyAlgebra {
    pub fn new(code: &str) -> Result<Self> {
        let base = CartanDatum::from_code(code)?;
        if !base.is_simply_laced() {
            return Err(Error::Validation(format!("{code} is not simply laced")));
        }
        let n = base.rank;
        let roots = base.roots();
        let index: HashMap<Vec<i64>, usize> = roots.iter().cloned().enumerate().map(|(k, r)| (r, k)).collect();
        let cartan = base.cartan.clone();
        // bimultiplicative cocycle on simple roots
        let eps_simple = |i: usize, j: usize| -> bool { i == j || (i < j && cartan[i][j] != 0) };
        let eps = |a: &[i64], b: &[i64]| -> i64 {
            let mut odd = 0i64;
            for i in 0..n {
                for j in 0..n {
                    if eps_simple(i, j) {
                        odd += a[i] * b[j];
                    }
                }
            }
            if odd.rem_euclid(2) == 0 { 1 } else { -1 }
        };
        let sgn = |a: &[i64]| -> i64 { if height(a) > 0 { 1 } else { -1 } };
        let dim = n + roots.len();
        let mut table = vec![vec![Sparse::new(); dim]; dim];
        for (r, a) in roots.iter().enumerate() {
            for i in 0..n {
                let c: i64 = (0..n).map(|j| cartan[i][j] * a[j]).sum();
                if c != 0 {
                    table[i][n + r] = vec![(n + r, c)];
                    table[n + r][i] = vec![(n + r, -c)];
                }
            }
            for (s, b) in roots.iter().enumerate() {
                let sum: Vec<i64> = a.iter().zip(b).map(|(x, y)| x + y).collect();
                if sum.iter().all(|&x| x == 0) {
                    // [x_α, x_{−α}] = h_α
                    table[n + r][n + s] = a.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect();
                } else if let Some(&t) = index.get(&sum) {
                    // x_α = sgn(α) E_α
                    let c = sgn(a) * sgn(b) * sgn(&sum) * eps(a, b);
                    table[n + r][n + s] = vec![(n + t, c)];
                }
            }
        }
        Ok(ChevalleyAlgebra { code: code.to_string(), rank: n, roots, cartan, index, table })
    }

    pub fn dim(&self) -> usize {
        self.rank + self.roots.len()
    }

    pub fn root_basis_index(&self, alpha: &[i64]) -> Option<usize> {
        self.index.get(alpha).map(|&r| self.rank + r)
    }

    /// Root of a root-vector basis index, None for Cartan indices.
    pub fn root_of(&self, b: usize) -> Option<&[i64]> {
        (b >= self.rank).then(|| self.roots[b - self.rank].as_slice())
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &Sparse {
        &self.table[a][b]
    }

    pub fn label(&self, b: usize) -> String {
        if b < self.rank {
            format!("h{}", b + 1)
        } else {
            let r = &self.roots[b - self.rank];
            format!("x{:?}", r).replace(' ', "")
        }
    }

    pub fn e(&self, i: usize) -> usize {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        self.root_basis_index(&v).unwrap()
    }

    pub fn f(&self, i: usize) -> usize {
        let mut v = vec![0; self.rank];
        v[i] = -1;
        self.root_basis_index(&v).unwrap()
    }

    pub fn bracket<F: Field>(&self, x: &[F], y: &[F]) -> Vec<F> {
        let mut out = vec![F::fzero(); self.dim()];
        let xs: Vec<usize> = (0..x.len()).filter(|&i| !x[i].fis_zero()).collect();
        let ys: Vec<usize> = (0..y.len()).filter(|&i| !y[i].fis_zero()).collect();
        for &a in &xs {
            for &b in &ys {
                let t = &self.table[a][b];
                if t.is_empty() {
                    continue;
                }
                let xy = x[a].fmul(&y[b]);
                for &(k, c) in t {
                    out[k] = out[k].fadd(&xy.fmul(&F::ffrom_rat(&crate::scalar::int(c))));
                }
            }
        }
        out
    }

    pub fn bracket_sparse(&self, x: &Sparse, y: &Sparse) -> Sparse {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for &(a, ca) in x {
            for &(b, cb) in y {
                for &(k, c) in &self.table[a][b] {
                    *acc.entry(k).or_insert(0) += ca * cb * c;
                }
            }
        }
        let mut v: Sparse = acc.into_iter().filter(|&(_, c)| c != 0).collect();
        v.sort();
        v
    }

    pub fn unit<F: Field>(&self, b: usize) -> Vec<F> {
        let mut v = vec![F::fzero(); self.dim()];
        v[b] = F::fone();
        v
    }

    /// Antisymmetry and the Jacobi identity on all basis pairs and triples.
    pub fn check_jacobi(&self) -> Result<()> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let ab = &self.table[a][b];
                let ba: Sparse = self.table[b][a].iter().map(|&(k, c)| (k, -c)).collect();
                let mut ab2 = ab.clone();
                ab2.sort();
                let mut ba2 = ba;
                ba2.sort();
                if ab2 != ba2 {
                    return Err(Error::Invariant(format!("antisymmetry fails on ({a},{b})")));
                }
            }
        }
        for a in 0..n {
            for b in (a + 1)..n {
                let ab = &self.table[a][b];
                for c in (b + 1)..n {
                    let mut acc: HashMap<usize, i64> = HashMap::new();
                    let mut add = |x: &Sparse, z: usize| {
                        for &(k, ck) in x {
                            for &(m, cm) in &self.table[k][z] {
                                *acc.entry(m).or_insert(0) += ck * cm;
                            }
                        }
                    };
                    add(ab, c);
                    add(&self.table[b][c], a);
                    add(&self.table[c][a], b);
                    if acc.values().any(|&v| v != 0) {
                        return Err(Error::Invariant(format!(
                            "Jacobi fails on ({}, {}, {})",
                            self.label(a),
                            self.label(b),
                            self.label(c)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// [h, x_α] = α(h)x_α, [x_α, x_{−α}] = h_α, [e_i, f_j] = δ_ij h_i.
    pub fn check_chevalley(&self) -> Result<()> {
        let n = self.rank;
        for (r, a) in self.roots.iter().enumerate() {
            for i in 0..n {
                let c: i64 = (0..n).map(|j| self.cartan[i][j] * a[j]).sum();
                let want: Sparse = if c == 0 { vec![] } else { vec![(n + r, c)] };
                if self.table[i][n + r] != want {
                    return Err(Error::Invariant(format!("[h{i}, x_α] wrong for α = {a:?}")));
                }
            }
            let neg: Vec<i64> = a.iter().map(|x| -x).collect();
            let s = self.root_basis_index(&neg).unwrap();
            let want: Sparse = a.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c)).collect();
            if self.table[n + r][s] != want {
                return Err(Error::Invariant(format!("[x_α, x_−α] ≠ h_α for α = {a:?}")));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let got = &self.table[self.e(i)][self.f(j)];
                let want: Sparse = if i == j { vec![(i, 1)] } else { vec![] };
                if got != &want {
                    return Err(Error::Invariant(format!("[e{i}, f{j}] wrong")));
                }
            }
        }
        Ok(())
    }
}

impl TauAction {
    /// Ad(τ) with Ad(τ)e_i = e_{τi} and Ad(τ)f_i = f_{τi}.
    pub fn new(alg: &ChevalleyAlgebra, tau: Vec<usize>, d: u32) -> Result<Self> {
        let n = alg.rank;
        let act = |a: &[i64]| -> Vec<i64> {
            let mut v = vec![0; n];
            for (i, &x) in a.iter().enumerate() {
                v[tau[i]] = x;
            }
            v
        };
        let mut image = vec![(0usize, 0i64); alg.dim()];
        for i in 0..n {
            image[i] = (tau[i], 1);
        }
        let mut order: Vec<usize> = (0..alg.roots.len()).collect();
        order.sort_by_key(|&r| height(&alg.roots[r]).abs());
        for r in order {
            let a = &alg.roots[r];
            let b = n + r;
            let ta = alg.root_basis_index(&act(a)).ok_or_else(|| Error::Invariant("τ does not permute roots".into()))?;
            if height(a).abs() == 1 {
                image[b] = (ta, 1);
                continue;
            }
            let s = height(a).signum();
            let (i, rest) = (0..n)
                .find_map(|i| {
                    let mut v = a.clone();
                    v[i] -= s;
                    alg.root_basis_index(&v).map(|idx| (i, idx))
                })
                .ok_or_else(|| Error::Invariant(format!("no simple root splits {a:?}")))?;
            let mut si = vec![0; n];
            si[i] = s;
            let g = alg.root_basis_index(&si).unwrap();
            let nab = alg.table[g][rest].iter().find(|(k, _)| *k == b).map(|x| x.1).unwrap();
            let (tg, _) = image[g];
            let (trest, eta_rest) = image[rest];
            let nt = alg.table[tg][trest].iter().find(|(k, _)| *k == ta).map(|x| x.1).unwrap();
            image[b] = (ta, eta_rest * nt / nab);
        }
        let t = TauAction { d, tau, image };
        t.check(alg)?;
        Ok(t)
    }

    pub fn apply<F: Field>(&self, x: &[F]) -> Vec<F> {
        let mut out = vec![F::fzero(); x.len()];
        for (b, v) in x.iter().enumerate() {
            if v.fis_zero() {
                continue;
            }
            let (t, s) = self.image[b];
            out[t] = if s == 1 { v.clone() } else { v.fneg() };
        }
        out
    }

    fn apply_sparse(&self, x: &Sparse) -> Sparse {
        let mut v: Sparse = x.iter().map(|&(b, c)| (self.image[b].0, c * self.image[b].1)).collect();
        v.sort();
        v
    }

    /// Automorphism property on all basis pairs, and Ad(τ)^d = id.
    pub fn check(&self, alg: &ChevalleyAlgebra) -> Result<()> {
        let dim = alg.dim();
        for a in 0..dim {
            for b in 0..dim {
                let lhs = self.apply_sparse(&alg.table[a][b]);
                let (ta, sa) = self.image[a];
                let (tb, sb) = self.image[b];
                let mut rhs: Sparse = alg.table[ta][tb].iter().map(|&(k, c)| (k, c * sa * sb)).collect();
                rhs.sort();
                if lhs != rhs {
                    return Err(Error::Invariant(format!(
                        "Ad(τ) is not an automorphism on ({}, {})",
                        alg.label(a),
                        alg.label(b)
                    )));
                }
            }
        }
        for b in 0..dim {
            let mut cur = (b, 1i64);
            for _ in 0..self.d {
                let (t, s) = self.image[cur.0];
                cur = (t, cur.1 * s);
            }
            if cur != (b, 1) {
                return Err(Error::Invariant(format!("Ad(τ)^{} ≠ id on {}", self.d, alg.label(b))));
            }
        }
        for i in 0..alg.rank {
            if self.image[alg.e(i)] != (alg.e(self.tau[i]), 1) || self.image[alg.f(i)] != (alg.f(self.tau[i]), 1) {
                return Err(Error::Invariant("Ad(τ) does not permute the generators".into()));
            }
        }
        Ok(())
    }
}

/// Builds the algebra and Ad(τ) for a supported (type, d).
pub fn build_chevalley(code: &str, d: u32) -> Result<(ChevalleyAlgebra, TauAction)> {
    check_supported(code, d)?;
    let alg = ChevalleyAlgebra::new(code)?;
    let tau = if d == 1 { (0..alg.rank).collect() } else { standard_tau(code, d)? };
    let t = TauAction::new(&alg, tau, d)?;
    Ok((alg, t))
}

#[derive(Serialize)]
pub struct AlgebraDump {
    pub code: String,
    pub d: u32,
    pub dim: usize,
    pub basis: Vec<String>,
    /// (i, j, k, coefficient) for [b_i, b_j] ∋ c·b_k, i < j; coefficients are power-basis coordinates
    pub structure_constants: Vec<(usize, usize, usize, Vec<String>)>,
    pub tau_image: Vec<(usize, i64)>,
}

pub fn dump(alg: &ChevalleyAlgebra, t: &TauAction) -> AlgebraDump {
    let mut sc = vec![];
    for a in 0..alg.dim() {
        for b in (a + 1)..alg.dim() {
            for &(k, c) in &alg.table[a][b] {
                sc.push((a, b, k, vec![c.to_string()]));
            }
        }
    }
    AlgebraDump {
        code: alg.code.clone(),
        d: t.d,
        dim: alg.dim(),
        basis: (0..alg.dim()).map(|b| alg.label(b)).collect(),
        structure_constants: sc,
        tau_image: t.image.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Rat;

    #[test]
    fn sl2() {
        let (alg, _) = build_chevalley("A1", 1).unwrap();
        assert_eq!(alg.dim(), 3);
        let e: Vec<Rat> = alg.unit(alg.e(0));
        let f: Vec<Rat> = alg.unit(alg.f(0));
        let h: Vec<Rat> = alg.unit(0);
        assert_eq!(alg.bracket(&e, &f), h);
    }

    #[test]
    fn small_algebras_are_lie() {
        for (code, d, dim) in [("A2", 2, 8), ("A3", 2, 15), ("D4", 3, 28), ("D4", 2, 28)] {
            let (alg, t) = build_chevalley(code, d).unwrap();
            assert_eq!(alg.dim(), dim);
            alg.check_jacobi().unwrap();
            alg.check_chevalley().unwrap();
            t.check(&alg).unwrap();
        }
    }

    #[test]
    fn a2_tau_swaps() {
        let (alg, t) = build_chevalley("A2", 2).unwrap();
        assert_eq!(t.image[alg.e(0)], (alg.e(1), 1));
    }

    #[test]
    fn rejects_bad_pairs() {
        assert!(build_chevalley("A3", 3).is_err());
        assert!(build_chevalley("B3", 1).is_err());
        assert!(build_chevalley("E7", 1).is_err());
    }
}

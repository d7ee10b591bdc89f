//! The affine Weyl group W^a acting on V' = ⊕ C b'_i, the cells C_S of the
//! complexified fundamental domain, reduction to canonical points, the
//! 𝔑-membership test, the subsystems 'R_J and the map p.

use num::{Integer, One, Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::folding::FoldedRootDatum;
use crate::linalg::{self, z_kernel};
use crate::rootdata::{classify, type_label, Component};
use crate::scalar::{complex_ge, complex_gt, int, rat, CScalar, Rat};

/// c-coordinates of a point of V' against {b'_i : i ∈ I}.
pub type Coords = Vec<CScalar>;

pub fn level(f: &FoldedRootDatum, c: &[CScalar]) -> CScalar {
    let mut s = CScalar::zero();
    for (x, &n) in c.iter().zip(&f.marks) {
        s = &s + &x.scale(&int(n));
    }
    s
}

pub fn check_point(f: &FoldedRootDatum, c: &[CScalar]) -> Result<()> {
    if c.len() != f.num_nodes() {
        return Err(Error::Validation(format!(
            "expected {} coordinates for {} d={} (|I| = {}), got {}",
            f.num_nodes(),
            f.code,
            f.d,
            f.num_nodes(),
            c.len()
        )));
    }
    let l = level(f, c);
    if l != CScalar::real(Rat::one()) {
        return Err(Error::Validation(format!(
            "point is not in 𝔱¹: Σ n_i c_i = {l}, expected 1 (marks {:?})",
            f.marks
        )));
    }
    Ok(())
}

/// s_i(x') = x' − b_i(x') h_i, with h_i = Σ_j a_{ij} b'_j.
pub fn reflect(f: &FoldedRootDatum, c: &[CScalar], i: usize) -> Coords {
    let ci = c[i].clone();
    if ci.is_zero() {
        return c.to_vec();
    }
    c.iter()
        .enumerate()
        .map(|(j, x)| {
            let aij = f.a[i][j];
            if aij == 0 {
                x.clone()
            } else {
                x - &ci.scale(&int(aij))
            }
        })
        .collect()
}

/// Applies s_{word[0]} first, then s_{word[1]}, …
pub fn apply_word(f: &FoldedRootDatum, c: &[CScalar], word: &[usize]) -> Coords {
    let mut x = c.to_vec();
    for &i in word {
        x = reflect(f, &x, i);
    }
    x
}

/// Matrix (on c-coordinates) of the element applying `word` left to right.
pub fn word_matrix(f: &FoldedRootDatum, word: &[usize]) -> Vec<Vec<Rat>> {
    let n = f.num_nodes();
    let mut m: Vec<Vec<Rat>> = linalg::identity(n);
    for &i in word {
        let mut s: Vec<Vec<Rat>> = linalg::identity(n);
        for j in 0..n {
            s[j][i] -= int(f.a[i][j]);
        }
        m = linalg::mat_mul(&s, &m);
    }
    m
}

#[derive(Clone, Debug, Serialize)]
pub struct Reduction {
    pub canonical: Coords,
    pub cell: Vec<usize>,
    /// reflections applied in order
    pub word: Vec<usize>,
}

const MAX_STEPS: usize = 1_000_000;

/// Reduces x' ∈ 𝔱¹ to the unique point of its W^a-orbit in C' = ⊔ C_S.
pub fn reduce(f: &FoldedRootDatum, c: &[CScalar]) -> Result<Reduction> {
    check_point(f, c)?;
    let mut x = c.to_vec();
    let mut word = vec![];
    // real part into the closed alcove
    loop {
        let Some(i) = (0..x.len()).find(|&i| x[i].re.is_negative()) else { break };
        x = reflect(f, &x, i);
        word.push(i);
        if word.len() > MAX_STEPS {
            return Err(Error::Invariant("real alcove reduction did not terminate".into()));
        }
    }
    // imaginary part into the dominant chamber of the stabilizer of the real part
    let walls: Vec<usize> = (0..x.len()).filter(|&i| x[i].re.is_zero()).collect();
    loop {
        let Some(&i) = walls.iter().find(|&&i| x[i].im.is_negative()) else { break };
        x = reflect(f, &x, i);
        word.push(i);
        if word.len() > MAX_STEPS {
            return Err(Error::Invariant("imaginary reduction did not terminate".into()));
        }
    }
    let cell: Vec<usize> = (0..x.len()).filter(|&i| complex_gt(&x[i])).collect();
    if cell.is_empty() || x.iter().any(|z| !complex_ge(z)) {
        return Err(Error::Invariant("reduction ended outside C'".into()));
    }
    Ok(Reduction { canonical: x, cell, word })
}

pub fn is_canonical(c: &[CScalar]) -> bool {
    c.iter().all(complex_ge)
}

/// Generators {s_i : i ∈ I − S} of the stabilizer of a canonical point.
pub fn stabilizer(f: &FoldedRootDatum, c: &[CScalar]) -> Result<Vec<usize>> {
    check_point(f, c)?;
    if !is_canonical(c) {
        return Err(Error::Validation("point is not canonical (some c_i < 0)".into()));
    }
    let gens: Vec<usize> = (0..c.len()).filter(|&i| c[i].is_zero()).collect();
    for i in 0..c.len() {
        let fixed = reflect(f, c, i) == c;
        if fixed != gens.contains(&i) {
            return Err(Error::Invariant(format!("s_{i} fixed-point test disagrees with c_{i}")));
        }
    }
    Ok(gens)
}

/// Vertex b'_k / n_k.
pub fn vertex(f: &FoldedRootDatum, k: usize) -> Coords {
    (0..f.num_nodes())
        .map(|i| if i == k { CScalar::real(rat(1, f.marks[k])) } else { CScalar::zero() })
        .collect()
}

/// β(x' − b'_0) for β in β-coordinates: Σ_{i≠0} f_i c_i / d_i.
pub fn beta_at(f: &FoldedRootDatum, beta: &[i64], c: &[CScalar]) -> CScalar {
    let mut s = CScalar::zero();
    for (k, &fk) in beta.iter().enumerate() {
        if fk != 0 {
            s = &s + &c[k + 1].scale(&rat(fk, f.dk[k + 1]));
        }
    }
    s
}

/// γ(x' − b'_0) for γ = d_β β.
pub fn gamma_at(f: &FoldedRootDatum, beta: &[i64], c: &[CScalar]) -> CScalar {
    let d = f.d_of(beta).map(|x| x.2).unwrap_or(1);
    beta_at(f, beta, c).scale(&int(d))
}

/// The set 𝔑 of pairs (β, j), β indexed into `f.rroots`.
pub fn n_set(f: &FoldedRootDatum) -> Vec<(usize, u32)> {
    let mut out = vec![];
    for (k, r) in f.rroots.iter().enumerate() {
        let js: Vec<u32> = match (r.d1, r.d2) {
            (1, 1) => vec![0],
            (1, 2) => vec![1],
            _ => (0..f.d).collect(),
        };
        out.extend(js.into_iter().map(|j| (k, j)));
    }
    out
}

pub fn in_n(f: &FoldedRootDatum, beta: &[i64], j: u32) -> bool {
    match f.root_index(beta) {
        Some(k) => n_set(f).contains(&(k, j)),
        None => false,
    }
}

/// p_i: 1 for the affine node, 0 otherwise.
pub fn p_index(i: usize) -> i64 {
    (i == 0) as i64
}

#[derive(Clone, Debug, Serialize)]
pub struct Membership {
    /// condition (i): β(x' − b'_0) + j/d ∈ Z
    pub value_integral: bool,
    /// condition (ii): certificate (i, c_i) with (β, j) = Σ c_i (β_i, p_i), i ∈ I − S
    pub certificate: Option<Vec<(usize, i64)>>,
}

impl Membership {
    pub fn agree(&self) -> bool {
        self.value_integral == self.certificate.is_some()
    }
}

/// Both sides of the 𝔑-membership equivalence for a point of C_S, computed independently.
pub fn n_membership(f: &FoldedRootDatum, beta: &[i64], j: u32, c: &[CScalar]) -> Result<Membership> {
    if !in_n(f, beta, j) {
        return Err(Error::Validation(format!("({beta:?}, {j}) is not in 𝔑")));
    }
    let v = &beta_at(f, beta, c) + &CScalar::real(rat(j as i64, f.d as i64));
    let value_integral = v.im.is_zero() && v.re.is_integer();
    let outside: Vec<usize> = (0..c.len()).filter(|&i| c[i].is_zero()).collect();
    Ok(Membership { value_integral, certificate: certificate(f, beta, j, &outside) })
}

/// Integer solution of (β, j) = Σ_{i ∈ idx} c_i (β_i, p_i) with j read mod d.
pub fn certificate(f: &FoldedRootDatum, beta: &[i64], j: u32, idx: &[usize]) -> Option<Vec<(usize, i64)>> {
    let m = f.rank();
    let cols: Vec<Vec<Rat>> = idx.iter().map(|&i| f.simple(i).iter().map(|&x| int(x)).collect()).collect();
    let target: Vec<Rat> = beta.iter().map(|&x| int(x)).collect();
    let sol = if idx.is_empty() {
        if beta.iter().all(|&x| x == 0) { Some(vec![]) } else { None }
    } else {
        let mat: Vec<Vec<Rat>> = (0..m).map(|r| cols.iter().map(|col| col[r].clone()).collect()).collect();
        linalg::solve(&mat, &target)
    }?;
    // independence of the β_i, i ∈ idx (proper subset of I) makes the solution unique
    let ints: Option<Vec<i64>> = sol.iter().map(crate::scalar::to_i64).collect();
    let ints = ints?;
    let jsum: i64 = idx.iter().zip(&ints).map(|(&i, &c)| c * p_index(i)).sum();
    if (jsum - j as i64).mod_floor(&(f.d as i64)) != 0 {
        return None;
    }
    Some(idx.iter().copied().zip(ints).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct GjDatum {
    pub j: Vec<usize>,
    /// 'R_J in β-coordinates
    pub roots: Vec<Vec<i64>>,
    /// ('a_{i1,i2})_{i1,i2 ∈ J}
    pub cartan: Vec<Vec<i64>>,
    pub components: Vec<Component>,
    pub type_label: String,
}

pub fn gj_root_datum(f: &FoldedRootDatum, j: &[usize]) -> Result<GjDatum> {
    if j.len() >= f.num_nodes() || j.iter().any(|&i| i >= f.num_nodes()) {
        return Err(Error::Validation("J must be a proper subset of I".into()));
    }
    let roots = f.subsystem_roots(j);
    let cartan: Vec<Vec<i64>> = j.iter().map(|&a| j.iter().map(|&b| f.a_tw[a][b]).collect()).collect();
    let comps = classify(&cartan)?;
    // map component nodes back to I
    let components: Vec<Component> = comps
        .into_iter()
        .map(|c| Component { nodes: c.nodes.iter().map(|&k| j[k]).collect(), ..c })
        .collect();
    let label = type_label(&components);
    Ok(GjDatum { j: j.to_vec(), roots, cartan, components, type_label: label })
}

/// Coordinates of x' − b'_0 against a basis of 'Y, modulo Z (real parts in [0, 1)).
pub fn p_map(f: &FoldedRootDatum, c: &[CScalar]) -> Result<Vec<CScalar>> {
    check_point(f, c)?;
    let basis = f.fixed_coroot_lattice();
    let m = f.rank();
    // M[i][k] = β_{i+1}(o_k)
    let mat: Vec<Vec<Rat>> = (0..m)
        .map(|i| {
            basis
                .iter()
                .map(|o| {
                    let t: Vec<Rat> = o.iter().map(|&x| int(x as i64)).collect();
                    f.eval(&f.simple(i + 1), &t)
                })
                .collect()
        })
        .collect();
    let rhs_re: Vec<Rat> = (0..m).map(|i| &c[i + 1].re / int(f.dk[i + 1])).collect();
    let rhs_im: Vec<Rat> = (0..m).map(|i| &c[i + 1].im / int(f.dk[i + 1])).collect();
    let re = linalg::solve(&mat, &rhs_re).ok_or_else(|| Error::Invariant("p-map system singular".into()))?;
    let im = linalg::solve(&mat, &rhs_im).ok_or_else(|| Error::Invariant("p-map system singular".into()))?;
    Ok(re
        .into_iter()
        .zip(im)
        .map(|(r, i)| CScalar::new(&r - r.floor(), i))
        .collect())
}

/// x' + y for y ∈ 𝔱 given in h_{i'} coordinates.
pub fn translate(f: &FoldedRootDatum, c: &[CScalar], y: &[Rat]) -> Coords {
    let mut out = c.to_vec();
    for i in 1..f.num_nodes() {
        let g = f.eval(&f.simple(i), y) * int(f.dk[i]);
        out[i] = &out[i] + &CScalar::real(g);
    }
    let g0 = f.eval(&f.beta0, y) * int(f.dk[0]);
    out[0] = &out[0] + &CScalar::real(g0);
    out
}

/// Z-basis of Y ∩ V'_K (coordinates against h_1..h_m), K = I − J.
pub fn xj_lattice(f: &FoldedRootDatum, j: &[usize]) -> Vec<Vec<i128>> {
    let m = f.rank();
    let rows: Vec<Vec<i128>> = j.iter().map(|&jj| (1..=m).map(|i| f.a[i][jj] as i128).collect()).collect();
    z_kernel(&rows, m)
}

/// Random point of 𝔱¹ with Gaussian-rational coordinates.
pub fn random_point<R: Rng>(f: &FoldedRootDatum, rng: &mut R, complex: bool) -> Coords {
    let n = f.num_nodes();
    let mut c: Coords = (1..n)
        .map(|_| {
            let re = rat(rng.gen_range(-40..=40), rng.gen_range(1..=12));
            let im = if complex { rat(rng.gen_range(-20..=20), rng.gen_range(1..=8)) } else { Rat::zero() };
            CScalar::new(re, im)
        })
        .collect();
    let mut rest = CScalar::real(Rat::one());
    for (i, x) in c.iter().enumerate() {
        rest = &rest - &x.scale(&int(f.marks[i + 1]));
    }
    c.insert(0, rest);
    c
}

/// Random point of the cell C_S (complex perturbation optional).
pub fn random_cell_point<R: Rng>(f: &FoldedRootDatum, s: &[usize], rng: &mut R, complex: bool) -> Coords {
    let n = f.num_nodes();
    let weights: Vec<i64> = s.iter().map(|_| rng.gen_range(1..=9)).collect();
    let total: i64 = weights.iter().sum();
    let mut c = vec![CScalar::zero(); n];
    for (&k, &w) in s.iter().zip(&weights) {
        c[k] = CScalar::real(rat(w, total * f.marks[k]));
    }
    if complex && s.len() >= 2 {
        // imaginary part in the level-0 subspace, supported on S
        let mut acc = Rat::zero();
        for &k in &s[1..] {
            let u = rat(rng.gen_range(-5..=5), rng.gen_range(1..=4));
            acc += &u * int(f.marks[k]);
            c[k].im = u;
        }
        c[s[0]].im = -acc / int(f.marks[s[0]]);
    }
    c
}

pub fn random_word<R: Rng>(f: &FoldedRootDatum, rng: &mut R, max_len: usize) -> Vec<usize> {
    let len = rng.gen_range(0..=max_len);
    (0..len).map(|_| rng.gen_range(0..f.num_nodes())).collect()
}

/// All nonempty subsets of I as sorted vectors.
pub fn all_cells(f: &FoldedRootDatum) -> Vec<Vec<usize>> {
    let n = f.num_nodes();
    (1u32..(1 << n)).map(|mask| (0..n).filter(|&i| mask & (1 << i) != 0).collect()).collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct CentralizerReport {
    pub s: Vec<usize>,
    /// roots (β-coordinates) of the Ad(p(x'))-fixed pieces, with multiplicity
    pub fixed_roots: Vec<Vec<i64>>,
    pub expected_roots: Vec<Vec<i64>>,
    /// every fixed piece (β, j) carries a certificate over I − S
    pub certified: bool,
    pub matches: bool,
}

/// Compares the Ad(p(x'))-fixed subalgebra with g_{I−S}. Ad(p(x')) acts on
/// g_{β,j} by exp(2πi(β(x'−b'_0) + j/d)).
pub fn centralizer_match(eng: &crate::lie::Engine, c: &[CScalar]) -> Result<CentralizerReport> {
    let f = &eng.fold;
    check_point(f, c)?;
    if !is_canonical(c) {
        return Err(Error::Validation("point is not in C' (some c_i < 0)".into()));
    }
    let s: Vec<usize> = (0..c.len()).filter(|&i| complex_gt(&c[i])).collect();
    let j: Vec<usize> = (0..c.len()).filter(|i| !s.contains(i)).collect();
    let mut fixed_roots = vec![];
    let mut certified = true;
    for p in &eng.grading.pieces {
        if p.dim == 0 || p.beta.iter().all(|&x| x == 0) {
            continue;
        }
        let v = &beta_at(f, &p.beta, c) + &CScalar::real(rat(p.j as i64, f.d as i64));
        if v.im.is_zero() && v.re.is_integer() {
            for _ in 0..p.dim {
                fixed_roots.push(p.beta.clone());
            }
            certified &= certificate(f, &p.beta, p.j, &j).is_some();
        }
    }
    fixed_roots.sort();
    let expected_roots = if j.is_empty() { vec![] } else { gj_root_datum(f, &j)?.roots };
    let matches = certified && fixed_roots == expected_roots;
    Ok(CentralizerReport { s, fixed_roots, expected_roots, certified, matches })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folding::fold;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn vertices_are_fixed() {
        let f = fold("A3", 2).unwrap();
        for k in 0..f.num_nodes() {
            let v = vertex(&f, k);
            let r = reduce(&f, &v).unwrap();
            assert_eq!(r.canonical, v);
            assert_eq!(r.cell, vec![k]);
            assert!(r.word.is_empty());
            let st = stabilizer(&f, &v).unwrap();
            assert_eq!(st.len(), f.num_nodes() - 1);
        }
    }

    #[test]
    fn word_example() {
        // s0 s1 applied to b'_2/n_2 in (A3, 2)
        let f = fold("A3", 2).unwrap();
        let v = vertex(&f, 2);
        let x = apply_word(&f, &v, &[1, 0]);
        assert_eq!(reduce(&f, &x).unwrap().canonical, v);
    }

    #[test]
    fn reduce_invariance_small() {
        let f = fold("D4", 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let x = random_point(&f, &mut rng, true);
            let r = reduce(&f, &x).unwrap();
            assert_eq!(apply_word(&f, &x, &r.word), r.canonical);
            let w = random_word(&f, &mut rng, 30);
            let y = apply_word(&f, &x, &w);
            assert_eq!(reduce(&f, &y).unwrap().canonical, r.canonical);
        }
    }

    #[test]
    fn membership_examples() {
        let f = fold("A3", 2).unwrap();
        let v = vertex(&f, 0);
        // β1 + β2 with S = {0}
        let m = n_membership(&f, &[1, 1], 0, &v).unwrap();
        assert!(m.value_integral && m.certificate.is_some());
        let cert = m.certificate.unwrap();
        assert!(cert.iter().all(|(i, _)| *i != 0));
        // j ≠ 0 with 0 ∈ S fails
        let m = n_membership(&f, &[1, 0], 1, &v).unwrap();
        assert!(!m.value_integral && m.certificate.is_none());
    }

    #[test]
    fn p_map_lattice() {
        let f = fold("A4", 2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = random_point(&f, &mut rng, true);
        let p = p_map(&f, &x).unwrap();
        for y in f.fixed_coroot_lattice() {
            let yr: Vec<Rat> = y.iter().map(|&t| int(t as i64)).collect();
            assert_eq!(p_map(&f, &translate(&f, &x, &yr)).unwrap(), p);
        }
        assert!(p_map(&f, &vertex(&f, 0)).unwrap().iter().all(|z| z.is_zero()));
    }

    #[test]
    fn centralizer_at_vertices_and_interior() {
        let eng = crate::lie::Engine::new("A3", 2).unwrap();
        for k in 0..eng.fold.num_nodes() {
            let r = centralizer_match(&eng, &vertex(&eng.fold, k)).unwrap();
            assert!(r.matches, "vertex {k}: {r:?}");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = random_cell_point(&eng.fold, &[0, 1, 2], &mut rng, true);
        let r = centralizer_match(&eng, &x).unwrap();
        assert!(r.matches && r.fixed_roots.is_empty());
    }
}

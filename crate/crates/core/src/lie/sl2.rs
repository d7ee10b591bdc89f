//! sl2-triples for distinguished nilpotents of g_J and the integers ū_k.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::collections::BTreeMap;

use super::graded::torus_basis;
use super::Engine;
use crate::alcove::certificate;
use crate::cyclo::{Cyc, Field};
use crate::error::{Error, Result};
use crate::linalg;
use crate::scalar::{rat, to_i64, Rat};

#[derive(Clone, Debug, Serialize)]
pub struct Sl2Triple {
    pub j: Vec<usize>,
    pub weights: Vec<i64>,
    /// h in the basis h_{i'} of 𝔱'
    #[serde(with = "crate::scalar::rat_vec")]
    pub h_coords: Vec<Rat>,
    #[serde(skip)]
    pub e: Vec<Cyc>,
    #[serde(skip)]
    pub h: Vec<Cyc>,
    #[serde(skip)]
    pub f: Vec<Cyc>,
    pub dim_g0: usize,
    pub dim_g2: usize,
}

const MAX_DRAWS: u64 = 8;

/// Root pieces g_{β,j} (β ≠ 0, nonzero) lying in g_J.
pub fn gj_pieces(eng: &Engine, j: &[usize]) -> Vec<usize> {
    let m = eng.fold.rank();
    eng.grading
        .pieces
        .iter()
        .enumerate()
        .filter(|(_, p)| p.dim > 0 && p.beta.iter().any(|&x| x != 0))
        .filter(|(_, p)| certificate(&eng.fold, &p.beta, p.j, j).is_some())
        .map(|(k, _)| k)
        .filter(|_| m > 0)
        .collect()
}

fn add_scaled(acc: &mut [Cyc], c: &Cyc, v: &[Cyc]) {
    for (x, y) in acc.iter_mut().zip(v) {
        if !y.fis_zero() {
            *x = x.fadd(&c.fmul(y));
        }
    }
}

fn h_element(eng: &Engine, j: &[usize], weights: &[i64]) -> Result<Vec<Rat>> {
    let f = &eng.fold;
    let n = f.base.rank;
    if j.is_empty() {
        return Ok(vec![Rat::from_integer(0.into()); n]);
    }
    let mat: Vec<Vec<Rat>> = j
        .iter()
        .map(|&a| j.iter().map(|&b| f.eval(&f.simple(a), &f.h_tw(b))).collect())
        .collect();
    let rhs: Vec<Rat> = weights.iter().map(|&w| Rat::from_integer(w.into())).collect();
    let t = linalg::solve(&mat, &rhs).ok_or_else(|| Error::Invariant("simple roots of J are dependent".into()))?;
    let mut h = vec![Rat::from_integer(0.into()); n];
    for (tk, &b) in t.iter().zip(j) {
        for (x, y) in h.iter_mut().zip(f.h_tw(b)) {
            *x += tk * y;
        }
    }
    Ok(h)
}

/// ad(h)-eigenvalue on each piece of g_J.
fn piece_weight(eng: &Engine, piece: usize, h: &[Rat]) -> Result<i64> {
    let v = eng.fold.eval(&eng.grading.pieces[piece].beta, h);
    to_i64(&v).ok_or_else(|| Error::Invariant("non-integral ad(h) eigenvalue".into()))
}

/// Triple (e, h, f) with h from the weighted diagram and e generic in g_J(2).
pub fn distinguished_nilpotent(eng: &Engine, j: &[usize], weights: &[i64], seed: u64) -> Result<Sl2Triple> {
    if weights.len() != j.len() {
        return Err(Error::Validation("one weight per node of J is required".into()));
    }
    let g = &eng.grading;
    let dim = g.dim;
    let h_coords = h_element(eng, j, weights)?;
    let mut h = vec![Cyc::fzero(); dim];
    for (k, x) in h_coords.iter().enumerate() {
        h[k] = Cyc::from_rat(x.clone());
    }
    let pieces = gj_pieces(eng, j);
    let mut by_weight: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for &p in &pieces {
        by_weight.entry(piece_weight(eng, p, &h_coords)?).or_default().push(p);
    }
    let g2: Vec<usize> = by_weight.get(&2).cloned().unwrap_or_default();
    let gm2: Vec<usize> = by_weight.get(&-2).cloned().unwrap_or_default();
    let mut g0_basis = torus_basis(&eng.fold, dim);
    for &p in by_weight.get(&0).into_iter().flatten() {
        g0_basis.extend(g.pieces[p].basis.iter().cloned());
    }
    let dim_g2: usize = g2.iter().map(|&p| g.pieces[p].dim).sum();
    // distinguished: dim of the degree-0 part of [g_J, g_J] equals dim g_J(2)
    let derived_g0 = j.len() + by_weight.get(&0).into_iter().flatten().map(|&p| g.pieces[p].dim).sum::<usize>();
    if derived_g0 != dim_g2 {
        return Err(Error::Validation(format!(
            "weights {weights:?} do not define a distinguished orbit (dim g(0) = {derived_g0}, dim g(2) = {dim_g2})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut chosen = None;
    for _ in 0..MAX_DRAWS {
        let mut e = vec![Cyc::fzero(); dim];
        for &p in &g2 {
            for v in &g.pieces[p].basis {
                let c = rat(rng.gen_range(1..=9) * if rng.gen_bool(0.5) { 1 } else { -1 }, rng.gen_range(1..=5));
                add_scaled(&mut e, &Cyc::from_rat(c), v);
            }
        }
        // [g(0), e] = g(2)
        let rows: Vec<Vec<Cyc>> = g0_basis
            .iter()
            .map(|b| {
                let c = g.coords(&eng.alg.bracket(b, &e));
                g2.iter().flat_map(|&p| c[p].clone()).collect()
            })
            .collect();
        let rk = if dim_g2 == 0 { 0 } else { linalg::rank(&rows) };
        if rk == dim_g2 {
            chosen = Some(e);
            break;
        }
    }
    let e = chosen.ok_or_else(|| Error::Validation("e not distinguished for these weights".into()))?;
    // f ∈ g(−2) with [e, f] = h
    let mut cols: Vec<Vec<Cyc>> = vec![];
    let mut vecs: Vec<Vec<Cyc>> = vec![];
    for &p in &gm2 {
        for v in &g.pieces[p].basis {
            cols.push(eng.alg.bracket(&e, v));
            vecs.push(v.clone());
        }
    }
    let f = if vecs.is_empty() {
        if h.iter().any(|x| !x.fis_zero()) {
            return Err(Error::Validation("no f exists: g(−2) is zero but h ≠ 0".into()));
        }
        vec![Cyc::fzero(); dim]
    } else {
        let a = linalg::transpose(&cols);
        let c = linalg::solve(&a, &h).ok_or_else(|| Error::Validation("no f exists: e is not part of an sl2-triple with this h".into()))?;
        let mut f = vec![Cyc::fzero(); dim];
        for (ck, v) in c.iter().zip(&vecs) {
            add_scaled(&mut f, ck, v);
        }
        f
    };
    let t = Sl2Triple {
        j: j.to_vec(),
        weights: weights.to_vec(),
        h_coords,
        e,
        h,
        f,
        dim_g0: g0_basis.len(),
        dim_g2,
    };
    check_triple(eng, &t)?;
    Ok(t)
}

pub fn check_triple(eng: &Engine, t: &Sl2Triple) -> Result<()> {
    let alg = &eng.alg;
    let scale = |v: &[Cyc], k: i64| -> Vec<Cyc> { v.iter().map(|x| x.fmul(&Cyc::from_int(k))).collect() };
    if alg.bracket(&t.h, &t.e) != scale(&t.e, 2) {
        return Err(Error::Invariant("[h, e] ≠ 2e".into()));
    }
    if alg.bracket(&t.h, &t.f) != scale(&t.f, -2) {
        return Err(Error::Invariant("[h, f] ≠ −2f".into()));
    }
    if alg.bracket(&t.e, &t.f) != t.h {
        return Err(Error::Invariant("[e, f] ≠ h".into()));
    }
    Ok(())
}

/// Multiplicities of ad(h)-eigenvalues on the derived algebra of g_J.
pub fn ad_h_spectrum(eng: &Engine, t: &Sl2Triple) -> Result<BTreeMap<i64, usize>> {
    let mut out = BTreeMap::new();
    if !t.j.is_empty() {
        out.insert(0, t.j.len());
    }
    for p in gj_pieces(eng, &t.j) {
        *out.entry(piece_weight(eng, p, &t.h_coords)?).or_insert(0) += eng.grading.pieces[p].dim;
    }
    Ok(out)
}

/// ū_k: one plus the nilpotency index of ad(e) on g_{J∪k}/g_J.
pub fn u_bar(eng: &Engine, j: &[usize], k: usize, t: &Sl2Triple) -> Result<u32> {
    let nn = eng.fold.num_nodes();
    if j.contains(&k) || k >= nn || j.len() + 1 >= nn {
        return Err(Error::Validation("u_bar needs k ∈ I − J with J ∪ {k} ≠ I".into()));
    }
    let mut jk = j.to_vec();
    jk.push(k);
    jk.sort_unstable();
    let small = gj_pieces(eng, j);
    let big = gj_pieces(eng, &jk);
    let quotient: Vec<usize> = big.iter().copied().filter(|p| !small.contains(p)).collect();
    let g = &eng.grading;
    let zero = g.piece_index(&vec![0; eng.fold.rank()], 0).unwrap();
    let allowed = |p: usize| p == zero || big.contains(&p);
    let qdim: usize = quotient.iter().map(|&p| g.pieces[p].dim).sum();
    // column c of `a`: quotient coordinates of [e, basis vector c]
    let mut a: Vec<Vec<Cyc>> = vec![vec![Cyc::fzero(); qdim]; qdim];
    let mut col = 0;
    for &p in &quotient {
        for v in &g.pieces[p].basis {
            let c = g.coords(&eng.alg.bracket(&t.e, v));
            for (q, cq) in c.iter().enumerate() {
                if !allowed(q) && cq.iter().any(|x| !x.fis_zero()) {
                    return Err(Error::Invariant("g_{J∪k} is not ad(e)-stable".into()));
                }
            }
            let mut row = 0;
            for &q in &quotient {
                for x in &c[q] {
                    a[row][col] = x.clone();
                    row += 1;
                }
            }
            col += 1;
        }
    }
    let mut power: Vec<Vec<Cyc>> = linalg::identity(qdim);
    let mut m = 0u32;
    while power.iter().flatten().any(|x| !x.fis_zero()) {
        power = linalg::mat_mul(&a, &power);
        m += 1;
        if m as usize > qdim + 1 {
            return Err(Error::Invariant("ad(e) is not nilpotent on the quotient".into()));
        }
    }
    Ok(m + 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alcove::gj_root_datum;

    #[test]
    fn zero_orbit() {
        let eng = Engine::new("A2", 2).unwrap();
        let t = distinguished_nilpotent(&eng, &[], &[], 1).unwrap();
        assert!(t.e.iter().all(|x| x.fis_zero()));
        assert_eq!(u_bar(&eng, &[], 0, &t).unwrap(), 2);
    }

    #[test]
    fn b2_principal_spectrum() {
        let eng = Engine::new("A4", 2).unwrap();
        let j = (0..3)
            .flat_map(|a| (a + 1..3).map(move |b| vec![a, b]))
            .find(|j| gj_root_datum(&eng.fold, j).unwrap().type_label == "B2")
            .expect("a B2 subsystem");
        let t = distinguished_nilpotent(&eng, &j, &[2, 2], 5).unwrap();
        let spec = ad_h_spectrum(&eng, &t).unwrap();
        let want: BTreeMap<i64, usize> = [(-6, 1), (-4, 1), (-2, 2), (0, 2), (2, 2), (4, 1), (6, 1)].into_iter().collect();
        assert_eq!(spec, want);
    }

    #[test]
    fn only_regular_is_distinguished_in_b2() {
        let eng = Engine::new("A4", 2).unwrap();
        let j = (0..3)
            .flat_map(|a| (a + 1..3).map(move |b| vec![a, b]))
            .find(|j| gj_root_datum(&eng.fold, j).unwrap().type_label == "B2")
            .unwrap();
        assert!(distinguished_nilpotent(&eng, &j, &[2, 0], 1).is_err());
        assert!(distinguished_nilpotent(&eng, &j, &[0, 2], 1).is_err());
    }

    #[test]
    fn e6_a1_cubed() {
        let eng = Engine::new("E6", 2).unwrap();
        let j = vec![0, 2, 3];
        assert_eq!(gj_root_datum(&eng.fold, &j).unwrap().type_label, "A1^3");
        let t = distinguished_nilpotent(&eng, &j, &[2, 2, 2], 11).unwrap();
        let mut u = vec![u_bar(&eng, &j, 1, &t).unwrap(), u_bar(&eng, &j, 4, &t).unwrap()];
        u.sort();
        assert_eq!(u, vec![4, 5]);
    }
}

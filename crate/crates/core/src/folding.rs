//! Folding a simply-laced root datum R' by a diagram automorphism τ of order d:
//! restricted roots 'R with multiplicities d'_β, d''_β, d_β, the reduced system
//! R = {d_β β}, coroots, the affine node, marks and both affine Cartan matrices.

use num::Zero;
use serde::Serialize;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::linalg::{self, smith_invariants, z_kernel};
use crate::rootdata::{classify, parse_type_code, type_label, CartanDatum};
use crate::scalar::{int, to_i64, Rat};

/// The diagram automorphism attached to (type, d), 0-based Bourbaki nodes.
pub fn standard_tau(code: &str, d: u32) -> Result<Vec<usize>> {
    let (f, n) = parse_type_code(code)?;
    let allowed = "allowed: any A/D/E with d=1; A_n (n≥2), D_n (n≥4), E6 with d=2; D4 with d=3";
    let err = || Error::Validation(format!("unsupported pair ({code}, d={d}); {allowed}"));
    if !matches!(f, 'A' | 'D' | 'E') {
        return Err(Error::Validation(format!("{code} is not simply laced; {allowed}")));
    }
    let id: Vec<usize> = (0..n).collect();
    match (f, n, d) {
        (_, _, 1) => Ok(id),
        ('A', n, 2) if n >= 2 => Ok((0..n).map(|i| n - 1 - i).collect()),
        ('D', n, 2) if n >= 4 => {
            let mut t = id;
            t.swap(n - 2, n - 1);
            Ok(t)
        }
        ('E', 6, 2) => Ok(vec![5, 1, 4, 3, 2, 0]),
        ('D', 4, 3) => Ok(vec![2, 1, 3, 0]),
        _ => Err(err()),
    }
}

/// Expected ('R, R) types from the case list for (type, d), when d ≥ 2.
pub fn expected_types(code: &str, d: u32) -> Result<(String, String)> {
    let (f, n) = parse_type_code(code)?;
    Ok(match (f, n, d) {
        (_, _, 1) => (code.to_string(), code.to_string()),
        ('A', n, 2) if n % 2 == 1 => (format!("C{}", (n + 1) / 2), format!("B{}", (n + 1) / 2)),
        ('A', n, 2) => (format!("BC{}", n / 2), format!("C{}", n / 2)),
        ('D', n, 2) => (format!("B{}", n - 1), format!("C{}", n - 1)),
        ('E', 6, 2) => ("F4".into(), "F4".into()),
        ('D', 4, 3) => ("G2".into(), "G2".into()),
        _ => return Err(Error::Validation(format!("unsupported pair ({code}, d={d})"))),
    })
}

/// B2 and C2 (and A1, B1, C1) are the same system; normalize for comparison.
pub fn canonical_type(t: &str) -> String {
    match t {
        "C2" => "B2".into(),
        "B1" | "C1" => "A1".into(),
        _ => t.into(),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RestrictedRoot {
    /// coordinates against β_1..β_m
    pub coords: Vec<i64>,
    /// d'_β: size of the τ-orbit restricting to β
    pub d1: i64,
    /// d''_β: 2 when 2β or β/2 is also a restricted root
    pub d2: i64,
    pub d: i64,
    /// representative root of R' (Π'-coordinates)
    pub rep: Vec<i64>,
    /// indices into base.roots() of the τ-orbit
    pub orbit: Vec<usize>,
    /// 'h_β in the basis h_{i'} of 𝔱'
    #[serde(skip)]
    pub coroot: Vec<Rat>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FoldedRootDatum {
    pub code: String,
    pub d: u32,
    #[serde(skip)]
    pub base: CartanDatum,
    pub tau: Vec<usize>,
    /// Ī': orbits of τ on I', ordered by smallest member
    pub orbits: Vec<Vec<usize>>,
    pub rroots: Vec<RestrictedRoot>,
    #[serde(skip)]
    index: HashMap<Vec<i64>, usize>,
    pub reduced: bool,
    /// β₀ in β-coordinates
    pub beta0: Vec<i64>,
    /// γ₀ = −(highest root of R) in γ-coordinates
    pub gamma0: Vec<i64>,
    /// affine index set I = {0} ∪ Ī'; marks n_i
    pub marks: Vec<i64>,
    /// d_i = d_{β_i}, i ∈ I
    pub dk: Vec<i64>,
    /// a_{i1,i2} = γ_{i2}(h_{i1})
    pub a: Vec<Vec<i64>>,
    /// 'a_{i1,i2} = (d_{i1}/d_{i2}) a_{i1,i2}
    pub a_tw: Vec<Vec<i64>>,
    /// h_i (i ∈ I) in the basis h_{i'} of 𝔱'
    #[serde(skip)]
    pub h: Vec<Vec<Rat>>,
    pub rprime_type: String,
    pub r_type: String,
}

impl FoldedRootDatum {
    pub fn rank(&self) -> usize {
        self.orbits.len()
    }

    /// |I|
    pub fn num_nodes(&self) -> usize {
        self.orbits.len() + 1
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    pub fn positive_rroots(&self) -> impl Iterator<Item = (usize, &RestrictedRoot)> {
        self.rroots.iter().enumerate().filter(|(_, r)| r.coords.iter().all(|&x| x >= 0))
    }

    /// β_i for i ∈ I (β₀ at index 0) in β-coordinates.
    pub fn simple(&self, i: usize) -> Vec<i64> {
        if i == 0 {
            self.beta0.clone()
        } else {
            (0..self.rank()).map(|k| (k == i - 1) as i64).collect()
        }
    }

    /// β(t) for t ∈ 𝔱 written in the basis h_{i'} of 𝔱'.
    pub fn eval(&self, beta: &[i64], t: &[Rat]) -> Rat {
        let rep = match self.root_index(beta) {
            Some(k) => self.rroots[k].rep.clone(),
            None => self.lift(beta),
        };
        eval_root(&self.base, &rep, t)
    }

    /// Some element of the root lattice of R' restricting to the given β-vector.
    pub fn lift(&self, beta: &[i64]) -> Vec<i64> {
        let mut v = vec![0; self.base.rank];
        for (k, orb) in self.orbits.iter().enumerate() {
            v[orb[0]] = beta[k];
        }
        v
    }

    /// Restriction of a root of R' (Π'-coordinates) to 𝔱.
    pub fn restrict(&self, alpha: &[i64]) -> Vec<i64> {
        self.orbits.iter().map(|o| o.iter().map(|&i| alpha[i]).sum()).collect()
    }

    pub fn coroot_of(&self, beta: &[i64]) -> Result<Vec<Rat>> {
        self.root_index(beta)
            .map(|k| self.rroots[k].coroot.clone())
            .ok_or_else(|| Error::Validation(format!("{beta:?} is not a restricted root")))
    }

    pub fn d_of(&self, beta: &[i64]) -> Option<(i64, i64, i64)> {
        self.root_index(beta).map(|k| {
            let r = &self.rroots[k];
            (r.d1, r.d2, r.d)
        })
    }

    /// τ-fixed part of the coroot lattice of R' (the lattice 'Y) in h_{i'} coordinates.
    pub fn fixed_coroot_lattice(&self) -> Vec<Vec<i128>> {
        let n = self.base.rank;
        let rows: Vec<Vec<i128>> = (0..n)
            .map(|i| (0..n).map(|j| (self.tau[j] == i) as i128 - (i == j) as i128).collect())
            .collect();
        z_kernel(&rows, n)
    }

    /// Order of Y/'Y via Smith normal form of the inclusion.
    pub fn coroot_index(&self) -> Result<i128> {
        let ybasis: Vec<Vec<Rat>> = self.h[1..].to_vec();
        let mut rows = vec![];
        for v in self.fixed_coroot_lattice() {
            let vr: Vec<Rat> = v.iter().map(|&x| int(x as i64)).collect();
            let c = linalg::coords_in(&ybasis, &vr)
                .ok_or_else(|| Error::Invariant("'Y not inside the span of Y".into()))?;
            let ci: Option<Vec<i128>> = c.iter().map(linalg::rat_to_i128).collect();
            rows.push(ci.ok_or_else(|| Error::Invariant("'Y not inside Y".into()))?);
        }
        let inv = smith_invariants(&rows);
        if inv.len() != self.rank() {
            return Err(Error::Invariant("'Y has smaller rank than Y".into()));
        }
        Ok(inv.iter().product())
    }

    pub fn coxeter_number(&self) -> i64 {
        let nroots = self.rroots.iter().filter(|r| self.is_reduced_rep(r)).count() as i64;
        nroots / self.rank() as i64
    }

    // R has one root per element of 'R except that β and 2β give the same γ
    fn is_reduced_rep(&self, r: &RestrictedRoot) -> bool {
        r.d2 == 1 || {
            let half: Vec<i64> = r.coords.iter().map(|x| x / 2).collect();
            !(r.coords.iter().all(|x| x % 2 == 0) && self.root_index(&half).is_some())
        }
    }

    /// W_J-orbit of {β_i : i ∈ J}: the roots of G_J.
    pub fn subsystem_roots(&self, j: &[usize]) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = j.iter().map(|&i| self.simple(i)).collect();
        let mut k = 0;
        while k < out.len() {
            let beta = out[k].clone();
            for &i in j {
                let bi = self.simple(i);
                let c = self.eval(&beta, &self.h_tw(i));
                let img: Vec<i64> = beta.iter().zip(&bi).map(|(x, y)| x - to_i64(&c).unwrap() * y).collect();
                if !out.contains(&img) {
                    out.push(img);
                }
            }
            k += 1;
        }
        out.sort();
        out
    }

    /// 'h_{β_i} for i ∈ I.
    pub fn h_tw(&self, i: usize) -> Vec<Rat> {
        let d = int(self.dk[i]);
        self.h[i].iter().map(|x| x * &d).collect()
    }
}

fn eval_root(base: &CartanDatum, alpha: &[i64], t: &[Rat]) -> Rat {
    let mut s = Rat::zero();
    for (ip, ti) in t.iter().enumerate() {
        if ti.is_zero() {
            continue;
        }
        let k: i64 = (0..base.rank).map(|j| base.cartan[ip][j] * alpha[j]).sum();
        s += ti * int(k);
    }
    s
}

/// Checks that ψ(α) = α + τα + … + τ^{d−1}α determines the τ-orbit of α.
pub fn psi_check(base: &CartanDatum, tau: &[usize], d: u32) -> bool {
    let roots = base.roots();
    let act = |a: &[i64]| -> Vec<i64> {
        let mut v = vec![0; a.len()];
        for (i, &x) in a.iter().enumerate() {
            v[tau[i]] = x;
        }
        v
    };
    let psi = |a: &[i64]| -> Vec<i64> {
        let mut s = vec![0; a.len()];
        let mut cur = a.to_vec();
        for _ in 0..d {
            s.iter_mut().zip(&cur).for_each(|(x, y)| *x += y);
            cur = act(&cur);
        }
        s
    };
    let orbit = |a: &[i64]| -> Vec<Vec<i64>> {
        let mut o = vec![a.to_vec()];
        for _ in 1..d {
            let next = act(o.last().unwrap());
            o.push(next);
        }
        o
    };
    let psis: Vec<Vec<i64>> = roots.iter().map(|a| psi(a)).collect();
    for (x, a) in roots.iter().enumerate() {
        let oa = orbit(a);
        for (y, b) in roots.iter().enumerate() {
            if psis[x] == psis[y] && !oa.contains(b) {
                return false;
            }
        }
    }
    true
}

pub fn fold(code: &str, d: u32) -> Result<FoldedRootDatum> {
    let tau = standard_tau(code, d)?;
    let base = CartanDatum::from_code(code)?;
    fold_with(base, tau, d)
}

pub fn fold_with(base: CartanDatum, tau: Vec<usize>, d: u32) -> Result<FoldedRootDatum> {
    let n = base.rank;
    if !base.is_simply_laced() {
        return Err(Error::Validation(format!("{} is not simply laced", base.label)));
    }
    if tau.len() != n || (0..n).any(|i| !tau.contains(&i)) {
        return Err(Error::Validation("τ is not a permutation of the nodes".into()));
    }
    for i in 0..n {
        for j in 0..n {
            if base.cartan[tau[i]][tau[j]] != base.cartan[i][j] {
                return Err(Error::Validation("τ is not a graph automorphism".into()));
            }
        }
    }
    let mut p = (0..n).collect::<Vec<_>>();
    for _ in 0..d {
        p = p.iter().map(|&i| tau[i]).collect();
    }
    if p != (0..n).collect::<Vec<_>>() {
        return Err(Error::Validation(format!("τ does not have order dividing {d}")));
    }
    let mut orbits: Vec<Vec<usize>> = vec![];
    for i in 0..n {
        if orbits.iter().any(|o| o.contains(&i)) {
            continue;
        }
        let mut o = vec![i];
        let mut j = tau[i];
        while j != i {
            o.push(j);
            j = tau[j];
        }
        orbits.push(o);
    }
    let m = orbits.len();
    let restrict = |a: &[i64]| -> Vec<i64> { orbits.iter().map(|o| o.iter().map(|&i| a[i]).sum()).collect() };
    let act = |a: &[i64]| -> Vec<i64> {
        let mut v = vec![0; n];
        for (i, &x) in a.iter().enumerate() {
            v[tau[i]] = x;
        }
        v
    };

    let roots = base.roots();
    let coroots = base.coroots();
    let rindex: HashMap<&Vec<i64>, usize> = roots.iter().enumerate().map(|(k, r)| (r, k)).collect();
    // group R' by restriction
    let mut groups: Vec<(Vec<i64>, Vec<usize>)> = vec![];
    let mut gidx: HashMap<Vec<i64>, usize> = HashMap::new();
    for (k, a) in roots.iter().enumerate() {
        let r = restrict(a);
        match gidx.get(&r) {
            Some(&g) => groups[g].1.push(k),
            None => {
                gidx.insert(r.clone(), groups.len());
                groups.push((r, vec![k]));
            }
        }
    }
    // fibers must be τ-orbits
    for (_, fiber) in &groups {
        let a = &roots[fiber[0]];
        let mut orb = vec![rindex[a]];
        let mut cur = act(a);
        while &cur != a {
            orb.push(rindex[&cur]);
            cur = act(&cur);
        }
        let mut f = fiber.clone();
        f.sort();
        orb.sort();
        if f != orb {
            return Err(Error::Invariant("restriction fibers are not τ-orbits".into()));
        }
    }
    let h_of = |k: usize| -> Vec<Rat> { coroots[k].iter().map(|&x| int(x)).collect() };
    let mut rroots: Vec<RestrictedRoot> = vec![];
    for (coords, fiber) in &groups {
        let d1 = fiber.len() as i64;
        let double: Vec<i64> = coords.iter().map(|x| 2 * x).collect();
        let is_half = coords.iter().all(|x| x % 2 == 0) && gidx.contains_key(&coords.iter().map(|x| x / 2).collect::<Vec<_>>());
        let d2 = if gidx.contains_key(&double) || is_half { 2 } else { 1 };
        let rep = roots[fiber[0]].clone();
        // ordered orbit rep, τ rep, τ² rep
        let k0 = fiber[0];
        let k1 = rindex[&act(&rep)];
        let k2 = rindex[&act(&act(&rep))];
        let add = |xs: &[usize], c: i64| -> Vec<Rat> {
            let mut v = vec![Rat::zero(); n];
            for &k in xs {
                for (x, y) in v.iter_mut().zip(h_of(k)) {
                    *x += y * int(c);
                }
            }
            v
        };
        let coroot = match (d1, d2) {
            (1, _) => add(&[k0], 1),
            (2, 1) => add(&[k0, k1], 1),
            (2, 2) => add(&[k0, k1], 2),
            (3, 1) => add(&[k0, k1, k2], 1),
            _ => return Err(Error::Invariant(format!("unexpected multiplicities ({d1},{d2})"))),
        };
        rroots.push(RestrictedRoot { coords: coords.clone(), d1, d2, d: d1 * d2, rep, orbit: fiber.clone(), coroot });
    }
    rroots.sort_by(|x, y| {
        let hx: i64 = x.coords.iter().sum();
        let hy: i64 = y.coords.iter().sum();
        (hx <= 0).cmp(&(hy <= 0)).then(hx.abs().cmp(&hy.abs())).then(y.coords.cmp(&x.coords))
    });
    let index: HashMap<Vec<i64>, usize> = rroots.iter().enumerate().map(|(k, r)| (r.coords.clone(), k)).collect();
    let reduced = rroots.iter().all(|r| r.d2 == 1);

    let mut fd = FoldedRootDatum {
        code: base.label.clone(),
        d,
        base,
        tau: tau.clone(),
        orbits,
        rroots,
        index,
        reduced,
        beta0: vec![],
        gamma0: vec![],
        marks: vec![],
        dk: vec![],
        a: vec![],
        a_tw: vec![],
        h: vec![],
        rprime_type: String::new(),
        r_type: String::new(),
    };
    for r in &fd.rroots {
        let c = fd.eval(&r.coords, &r.coroot);
        if c != int(2) {
            return Err(Error::Invariant(format!("β('h_β) = {c} for β = {:?}", r.coords)));
        }
    }
    let simple_d: Vec<i64> = (0..m).map(|i| fd.d_of(&fd.simple(i + 1)).map(|x| x.2)).collect::<Option<_>>()
        .ok_or_else(|| Error::Invariant("a β_i is not a restricted root".into()))?;
    // R in γ-coordinates, γ_i = d_i β_i
    let mut highest: Option<Vec<i64>> = None;
    for r in &fd.rroots {
        if r.coords.iter().any(|&x| x < 0) {
            continue;
        }
        let mut g = vec![];
        for i in 0..m {
            let num = r.d * r.coords[i];
            if num % simple_d[i] != 0 {
                return Err(Error::Invariant("d_β β not integral in the γ basis".into()));
            }
            g.push(num / simple_d[i]);
        }
        let ht: i64 = g.iter().sum();
        if highest.as_ref().map_or(true, |h| h.iter().sum::<i64>() < ht) {
            highest = Some(g);
        }
    }
    let theta = highest.ok_or_else(|| Error::Invariant("no positive roots".into()))?;
    fd.gamma0 = theta.iter().map(|x| -x).collect();
    let mut beta0 = vec![];
    for i in 0..m {
        let num = -theta[i] * simple_d[i];
        if num % d as i64 != 0 {
            return Err(Error::Invariant("γ₀/d is not in the β lattice".into()));
        }
        beta0.push(num / d as i64);
    }
    let d0 = fd.d_of(&beta0).ok_or_else(|| Error::Invariant("β₀ is not a restricted root".into()))?.2;
    if d0 != d as i64 {
        return Err(Error::Invariant(format!("d_(β₀) = {d0} ≠ d = {d}")));
    }
    fd.beta0 = beta0;
    fd.marks = std::iter::once(1).chain(theta.iter().copied()).collect();
    fd.dk = std::iter::once(d0).chain(simple_d.iter().copied()).collect();
    let nn = m + 1;
    fd.h = (0..nn)
        .map(|i| {
            let c = fd.coroot_of(&fd.simple(i)).unwrap();
            let di = Rat::from_integer(fd.dk[i].into());
            c.iter().map(|x| x / &di).collect()
        })
        .collect();
    let mut a = vec![vec![0i64; nn]; nn];
    let mut a_tw = vec![vec![0i64; nn]; nn];
    for i1 in 0..nn {
        for i2 in 0..nn {
            let b = fd.eval(&fd.simple(i2), &fd.h[i1]);
            let g = &b * int(fd.dk[i2]);
            let t = &b * int(fd.dk[i1]);
            a[i1][i2] = to_i64(&g).ok_or_else(|| Error::Invariant("non-integral affine Cartan entry".into()))?;
            a_tw[i1][i2] = to_i64(&t).ok_or_else(|| Error::Invariant("non-integral twisted Cartan entry".into()))?;
        }
    }
    fd.a = a;
    fd.a_tw = a_tw;
    let fin = |mat: &Vec<Vec<i64>>| -> Vec<Vec<i64>> { mat[1..].iter().map(|r| r[1..].to_vec()).collect() };
    fd.r_type = type_label(&classify(&fin(&fd.a))?);
    fd.rprime_type = if fd.reduced { type_label(&classify(&fin(&fd.a_tw))?) } else { format!("BC{m}") };
    Ok(fd)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn case_list_types() {
        for (code, d) in [("A3", 2), ("A2", 2), ("A4", 2), ("A5", 2), ("D4", 2), ("D5", 2), ("E6", 2), ("D4", 3), ("A3", 1), ("E6", 1)] {
            let f = fold(code, d).unwrap();
            let (rp, r) = expected_types(code, d).unwrap();
            assert_eq!(canonical_type(&f.rprime_type), canonical_type(&rp), "{code} d={d} 'R");
            assert_eq!(canonical_type(&f.r_type), canonical_type(&r), "{code} d={d} R");
        }
    }

    #[test]
    fn a2_orbit_root() {
        let f = fold("A2", 2).unwrap();
        let (d1, d2, d) = f.d_of(&[1]).unwrap();
        assert_eq!((d1, d2, d), (2, 2, 4));
        // 'h_β = 2h_α + 2h_τα
        assert_eq!(f.coroot_of(&[1]).unwrap(), vec![int(2), int(2)]);
        assert_eq!(f.d_of(&[2]).unwrap(), (1, 2, 2));
    }

    #[test]
    fn marks_and_index() {
        for (code, d) in [("A3", 2), ("A4", 2), ("D4", 3), ("E6", 2), ("D5", 2), ("A4", 1)] {
            let f = fold(code, d).unwrap();
            assert_eq!(f.marks.iter().sum::<i64>(), f.coxeter_number(), "{code}");
            let prod: i64 = f.orbits.iter().map(|o| o.len() as i64).product();
            assert_eq!(f.coroot_index().unwrap(), prod as i128, "{code}");
            // Σ n_i γ_i = 0 as a null vector of a
            for row in &f.a {
                assert_eq!(row.iter().zip(&f.marks).map(|(x, y)| x * y).sum::<i64>(), 0);
            }
        }
    }

    #[test]
    fn psi() {
        assert!(psi_check(&CartanDatum::from_code("A3").unwrap(), &standard_tau("A3", 2).unwrap(), 2));
        assert!(psi_check(&CartanDatum::from_code("D4").unwrap(), &standard_tau("D4", 3).unwrap(), 3));
        assert!(standard_tau("B3", 2).is_err());
        assert!(standard_tau("A3", 3).is_err());
    }
}

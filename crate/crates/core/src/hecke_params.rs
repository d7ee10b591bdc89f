//! The relative affine Weyl group W* attached to J: the involutions σ_k,
//! the integers z_k and ñ_k, the ♭/♯ split and the parameters λ, λ*.

use num::{Signed, Zero};
use serde::Serialize;
use std::collections::{HashSet, VecDeque};

use crate::alcove::{certificate, n_set, word_matrix};
use crate::error::{Error, Result};
use crate::folding::FoldedRootDatum;
use crate::linalg::{self, smith_invariants, z_coords, z_kernel, z_row_basis, QLattice};
use crate::rootdata::{classify, type_label, CartanDatum};
use crate::scalar::{fmt_rat, int, rat, to_i64, Rat};

const GROUP_BOUND: usize = 500_000;

/// K = I − J ordered by distance from node 0 in the (β_i)-graph, then by index.
pub fn k_order(f: &FoldedRootDatum, j: &[usize]) -> Vec<usize> {
    let n = f.num_nodes();
    let mut dist = vec![usize::MAX; n];
    dist[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for w in 0..n {
            if w != v && f.a_tw[v][w] != 0 && dist[w] == usize::MAX {
                dist[w] = dist[v] + 1;
                queue.push_back(w);
            }
        }
    }
    let mut k: Vec<usize> = (0..n).filter(|i| !j.contains(i)).collect();
    k.sort_by_key(|&i| (dist[i], i));
    k
}

fn validate_j(f: &FoldedRootDatum, j: &[usize]) -> Result<()> {
    let n = f.num_nodes();
    if j.iter().any(|&i| i >= n) {
        return Err(Error::Validation(format!("J ⊆ {{0..{}}} required", n - 1)));
    }
    let set: HashSet<usize> = j.iter().copied().collect();
    if set.len() != j.len() {
        return Err(Error::Validation("J has repeated nodes".into()));
    }
    Ok(())
}

/// Reduced word of the longest element of W_{J'} (J' of finite type).
pub fn longest_word(f: &FoldedRootDatum, jp: &[usize]) -> Result<Vec<usize>> {
    let sub: Vec<Vec<i64>> = jp.iter().map(|&a| jp.iter().map(|&b| f.a[a][b]).collect()).collect();
    if classify(&sub).is_err() {
        return Err(Error::Validation(format!("{jp:?} is not of finite type")));
    }
    let n = f.num_nodes();
    // walk from the dominant chamber of W_{J'} to the antidominant one
    let mut c: Vec<i64> = (0..n).map(|i| jp.contains(&i) as i64).collect();
    let mut word = vec![];
    while let Some(&i) = jp.iter().find(|&&i| c[i] > 0) {
        let ci = c[i];
        for (x, a) in c.iter_mut().zip(&f.a[i]) {
            *x -= ci * a;
        }
        word.push(i);
        if word.len() > 100_000 {
            return Err(Error::Invariant("longest element search did not terminate".into()));
        }
    }
    if jp.iter().any(|&i| c[i] >= 0) {
        return Err(Error::Invariant("longest element did not reach the antidominant chamber".into()));
    }
    Ok(word)
}

fn int_matrix(m: &[Vec<Rat>]) -> Result<Vec<Vec<i64>>> {
    m.iter()
        .map(|r| r.iter().map(|x| to_i64(x).ok_or_else(|| Error::Invariant("non-integral Weyl matrix".into()))).collect())
        .collect()
}

fn mul_i(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    crate::rootdata::mat_mul_i(a, b)
}

fn is_identity(m: &[Vec<i64>]) -> bool {
    m.iter().enumerate().all(|(i, r)| r.iter().enumerate().all(|(j, &x)| x == (i == j) as i64))
}

/// σ_k = w₀^{J∪k} w₀^J acting on c-coordinates.
#[derive(Clone, Debug, Serialize)]
pub struct Sigma {
    pub k: usize,
    pub word: Vec<usize>,
    /// matrix on all of V' (c-coordinates, column vectors)
    pub matrix: Vec<Vec<i64>>,
    /// restriction to V'_K, rows and columns in the order of K
    pub on_k: Vec<Vec<i64>>,
}

pub fn sigma_involutions(f: &FoldedRootDatum, j: &[usize]) -> Result<Vec<Sigma>> {
    sigma_involutions_in(f, j, &k_order(f, j))
}

/// σ_k for K listed in the given order.
pub fn sigma_involutions_in(f: &FoldedRootDatum, j: &[usize], k: &[usize]) -> Result<Vec<Sigma>> {
    validate_j(f, j)?;
    let mut all: Vec<usize> = j.iter().chain(k).copied().collect();
    all.sort_unstable();
    if all != (0..f.num_nodes()).collect::<Vec<_>>() {
        return Err(Error::Validation("J and K must partition I".into()));
    }
    if k.len() < 2 {
        return Err(Error::Validation("σ_k needs |K| ≥ 2".into()));
    }
    let wj = longest_word(f, j)?;
    let mj = int_matrix(&word_matrix(f, &wj))?;
    let mut out = vec![];
    for &kk in k {
        let mut jk = j.to_vec();
        jk.push(kk);
        jk.sort_unstable();
        let wjk = longest_word(f, &jk)?;
        let mjk = int_matrix(&word_matrix(f, &wjk))?;
        let m = mul_i(&mjk, &mj);
        if !is_identity(&mul_i(&m, &m)) {
            return Err(Error::Invariant(format!("σ_{kk} is not an involution")));
        }
        // V'_K is stable iff no K → J entries; the same entries vanish
        // exactly when the annihilator V_J is stable under the dual action
        if j.iter().any(|&a| k.iter().any(|&b| m[a][b] != 0)) {
            return Err(Error::Invariant(format!("σ_{kk} does not preserve V'_K and V_J")));
        }
        let on_k = k.iter().map(|&a| k.iter().map(|&b| m[a][b]).collect()).collect();
        let mut word = wj.clone();
        word.extend(wjk.iter().copied());
        out.push(Sigma { k: kk, word, matrix: m, on_k });
    }
    Ok(out)
}

/// Finite matrix group generated by `gens` (bounded BFS).
pub fn generate_group(gens: &[Vec<Vec<i64>>], dim: usize) -> Result<Vec<Vec<Vec<i64>>>> {
    let id: Vec<Vec<i64>> = (0..dim).map(|i| (0..dim).map(|j| (i == j) as i64).collect()).collect();
    let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::from([id.clone()]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = mul_i(s, &g);
            if seen.insert(h.clone()) {
                out.push(h.clone());
                queue.push_back(h);
                if out.len() > GROUP_BOUND {
                    return Err(Error::TooLarge(format!("finite Weyl group exceeds {GROUP_BOUND} elements")));
                }
            }
        }
    }
    Ok(out)
}

fn gcd_i(a: i128, b: i128) -> i128 {
    linalg::gcd(a, b)
}

#[derive(Clone, Debug, Serialize)]
pub struct WStar {
    pub j: Vec<usize>,
    /// K in subscript order; every per-node vector below follows it
    pub k: Vec<usize>,
    pub sigmas: Vec<Sigma>,
    pub n: Vec<i64>,
    pub z: Vec<i64>,
    pub n_tilde: Vec<i64>,
    /// h̃_k in K-coordinates
    #[serde(skip)]
    pub h_tilde: Vec<Vec<Rat>>,
    /// Ã[k][k'] = γ̃_{k'}(h̃_k)
    pub cartan: Vec<Vec<i64>>,
    /// basis of ℒ' in K-coordinates
    #[serde(skip)]
    pub lattice: Vec<Vec<Rat>>,
    pub weyl_order: usize,
    /// position (in `k`) of a special node used to find the translations
    pub special: usize,
    pub coxeter_number: i64,
    pub root_type: String,
    /// positions of the two ends when W* is of Coxeter type C̃_n
    pub c_tilde_ends: Option<(usize, usize)>,
}

impl WStar {
    pub fn len(&self) -> usize {
        self.k.len()
    }

    pub fn is_empty(&self) -> bool {
        self.k.is_empty()
    }

    /// z_k = n_k/ñ_k for every k.
    pub fn z_identity_holds(&self) -> bool {
        self.z.iter().zip(&self.n_tilde).zip(&self.n).all(|((z, nt), n)| z * nt == *n)
    }

    pub fn in_lattice(&self, v: &[Rat]) -> bool {
        lattice_coords(&self.lattice, v).is_some_and(|c| c.iter().all(|x| x.is_integer()))
    }
}

fn lattice_coords(basis: &[Vec<Rat>], v: &[Rat]) -> Option<Vec<Rat>> {
    linalg::coords_in(basis, v)
}

fn to_rat_vec(v: &[i64]) -> Vec<Rat> {
    v.iter().map(|&x| int(x)).collect()
}

/// Coxeter bond order from a Cartan product.
fn bond(p: i64) -> u32 {
    match p {
        0 => 2,
        1 => 3,
        2 => 4,
        3 => 6,
        _ => 0, // ∞
    }
}

/// Ends of the Coxeter graph if it has type C̃_n (n ≥ 1).
pub fn c_tilde_ends(a: &[Vec<i64>]) -> Option<(usize, usize)> {
    let n = a.len();
    if n == 2 {
        return (bond(a[0][1] * a[1][0]) == 0).then_some((0, 1));
    }
    if n < 3 {
        return None;
    }
    let nb = |v: usize| (0..n).filter(|&w| w != v && a[v][w] != 0).collect::<Vec<_>>();
    if (0..n).any(|v| nb(v).len() > 2) {
        return None;
    }
    let ends: Vec<usize> = (0..n).filter(|&v| nb(v).len() == 1).collect();
    if ends.len() != 2 {
        return None;
    }
    // walk the path
    let mut path = vec![ends[0]];
    while path.len() < n {
        let cur = *path.last().unwrap();
        let next = nb(cur).into_iter().find(|w| !path.contains(w))?;
        path.push(next);
    }
    let bonds: Vec<u32> = path.windows(2).map(|w| bond(a[w[0]][w[1]] * a[w[1]][w[0]])).collect();
    let last = bonds.len() - 1;
    let ok = bonds.iter().enumerate().all(|(i, &m)| if i == 0 || i == last { m == 4 } else { m == 3 });
    ok.then_some((ends[0].min(ends[1]), ends[0].max(ends[1])))
}

pub fn wstar_data(f: &FoldedRootDatum, j: &[usize]) -> Result<WStar> {
    wstar_data_in(f, j, &k_order(f, j))
}

pub fn wstar_data_in(f: &FoldedRootDatum, j: &[usize], order: &[usize]) -> Result<WStar> {
    let sigmas = sigma_involutions_in(f, j, order)?;
    let k: Vec<usize> = sigmas.iter().map(|s| s.k).collect();
    let nk = k.len();
    let n: Vec<i64> = k.iter().map(|&i| f.marks[i]).collect();
    // integral basis B of 𝔷_J ∩ Z^K
    let zb = z_row_basis(&z_kernel(&[n.iter().map(|&x| x as i128).collect()], nk));
    let r = zb.len();
    let zb_rat: Vec<Vec<Rat>> = zb.iter().map(|v| v.iter().map(|&x| int(x as i64)).collect()).collect();
    let to_b = |v: &[Rat]| -> Result<Vec<Rat>> {
        linalg::coords_in(&zb_rat, v).ok_or_else(|| Error::Invariant("vector outside 𝔷_J".into()))
    };
    let apply = |m: &[Vec<i64>], v: &[Rat]| -> Vec<Rat> {
        m.iter().map(|row| row.iter().zip(v).map(|(&a, x)| int(a) * x).sum()).collect()
    };
    // linear parts on 𝔷_J in the basis B
    let mut lin = vec![];
    for s in &sigmas {
        let mut m = vec![vec![0i64; r]; r];
        for (col, b) in zb.iter().enumerate() {
            let img: Vec<i128> = s.on_k.iter().map(|row| row.iter().zip(b).map(|(&a, &x)| a as i128 * x).sum()).collect();
            let c = z_coords(&zb, &img).ok_or_else(|| Error::Invariant("σ_k does not preserve level 0".into()))?;
            for (row, x) in c.iter().enumerate() {
                m[row][col] = *x as i64;
            }
        }
        lin.push(m);
    }
    let group = generate_group(&lin, r)?;
    let order = group.len();
    // a special node: its vertex stabilizer maps onto 𝒲
    let mut special = None;
    for p in 0..nk {
        let others: Vec<Vec<Vec<i64>>> = (0..nk).filter(|&q| q != p).map(|q| lin[q].clone()).collect();
        if generate_group(&others, r)?.len() == order {
            special = Some(p);
            break;
        }
    }
    let special = special.ok_or_else(|| Error::Invariant("W* has no special vertex".into()))?;
    // t₀ = σ_{k₀}(v) − v, v = b'_{k₀}/n_{k₀}: a translation in W*
    let mut e0 = vec![Rat::zero(); nk];
    e0[special] = rat(1, n[special]);
    let img = apply(&sigmas[special].on_k, &e0);
    let t0: Vec<Rat> = img.iter().zip(&e0).map(|(a, b)| a - b).collect();
    let t0b = to_b(&t0)?;
    let orbit: Vec<Vec<Rat>> = group.iter().map(|g| apply(g, &t0b)).collect();
    let lat_b = QLattice::from_generators(r, &orbit);
    if lat_b.rank() != r {
        return Err(Error::Invariant("translations of W* do not span 𝔷_J".into()));
    }
    let from_b = |v: &[Rat]| -> Vec<Rat> {
        (0..nk).map(|i| v.iter().zip(&zb_rat).map(|(c, b)| c * &b[i]).sum()).collect()
    };
    let lattice: Vec<Vec<Rat>> = lat_b.basis_rat().iter().map(|v| from_b(v)).collect();
    // z_k: largest z with (b'_k − σ_k b'_k)/z ∈ ℒ'
    let mut z = vec![];
    let mut h_tilde = vec![];
    for (p, s) in sigmas.iter().enumerate() {
        let mut e = vec![Rat::zero(); nk];
        e[p] = int(1);
        let u: Vec<Rat> = e.iter().zip(apply(&s.on_k, &e)).map(|(a, b)| a - b).collect();
        let c = lattice_coords(&lattice, &u).ok_or_else(|| Error::Invariant("σ_k displacement outside 𝔷_J".into()))?;
        if c.iter().any(|x| !x.is_integer()) {
            return Err(Error::Invariant(format!("displacement of σ_{} is not in ℒ'", s.k)));
        }
        let g = c.iter().fold(0i128, |g, x| gcd_i(g, to_i64(x).unwrap() as i128)) as i64;
        if g <= 0 {
            return Err(Error::Invariant(format!("σ_{} acts trivially on 𝔷_J", s.k)));
        }
        h_tilde.push(u.iter().map(|x| x / int(g)).collect::<Vec<Rat>>());
        z.push(g);
    }
    // ℒ' is generated by the h̃_k
    let gen = QLattice::from_generators(nk, &h_tilde);
    let same = lattice.iter().all(|v| gen.contains(v)) && gen.basis_rat().iter().all(|v| lattice_coords(&lattice, v).is_some_and(|c| c.iter().all(|x| x.is_integer())));
    if !same {
        return Err(Error::Invariant("{h̃_k} does not generate ℒ'".into()));
    }
    let cartan: Vec<Vec<i64>> = (0..nk)
        .map(|a| {
            (0..nk)
                .map(|b| to_i64(&(int(z[b]) * &h_tilde[a][b])).ok_or_else(|| Error::Invariant("non-integral γ̃(h̃)".into())))
                .collect::<Result<Vec<i64>>>()
        })
        .collect::<Result<_>>()?;
    if (0..nk).any(|a| cartan[a][a] != 2) {
        return Err(Error::Invariant("γ̃_k(h̃_k) ≠ 2".into()));
    }
    // ñ: primitive positive null vector of Ã (the relation Σ ñ_k γ̃_k = 0)
    let ar: Vec<Vec<Rat>> = cartan.iter().map(|r| to_rat_vec(r)).collect();
    let null = linalg::nullspace(&ar, nk);
    if null.len() != 1 {
        return Err(Error::Invariant(format!("Ã has corank {}", null.len())));
    }
    let den = linalg::common_denominator(null[0].iter());
    let mut nt: Vec<i128> = null[0].iter().map(|x| linalg::rat_to_i128(&(x * Rat::from_integer(den.into()))).unwrap()).collect();
    let g = nt.iter().fold(0, |g, &x| gcd_i(g, x));
    if nt[0] < 0 {
        nt.iter_mut().for_each(|x| *x = -*x);
    }
    let n_tilde: Vec<i64> = nt.iter().map(|&x| (x / g) as i64).collect();
    if n_tilde.iter().any(|&x| x <= 0) || !n_tilde.contains(&1) {
        return Err(Error::Invariant(format!("ñ = {n_tilde:?} is not a positive primitive relation")));
    }
    // Σ ñ_k γ̃_k vanishes on 𝔷_J
    for b in &zb {
        let s: i128 = (0..nk).map(|p| n_tilde[p] as i128 * z[p] as i128 * b[p]).sum();
        if s != 0 {
            return Err(Error::Invariant("Σ ñ_k γ̃_k ≠ 0 on 𝔷_J".into()));
        }
    }
    // the root system ℛ̃: 𝒲-orbit of the γ̃_k, as rows on B
    let mut roots: HashSet<Vec<Rat>> = HashSet::new();
    for p in 0..nk {
        let phi: Vec<Rat> = zb.iter().map(|b| int(z[p]) * int(b[p] as i64)).collect();
        for g in &group {
            let row: Vec<Rat> = (0..r).map(|c| (0..r).map(|q| &phi[q] * int(g[q][c])).sum()).collect();
            roots.insert(row);
        }
    }
    let coxeter_number = (roots.len() / r) as i64;
    let finite: Vec<usize> = (0..nk).filter(|&p| p != special).collect();
    let fin_cartan: Vec<Vec<i64>> = finite.iter().map(|&a| finite.iter().map(|&b| cartan[a][b]).collect()).collect();
    let root_type = type_label(&classify(&fin_cartan)?);
    Ok(WStar {
        j: j.to_vec(),
        c_tilde_ends: c_tilde_ends(&cartan),
        k,
        sigmas,
        n,
        z,
        n_tilde,
        h_tilde,
        cartan,
        lattice,
        weyl_order: order,
        special,
        coxeter_number,
        root_type,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct FlatSharp {
    pub k: Vec<usize>,
    pub flat: Vec<bool>,
    #[serde(with = "crate::scalar::rat_vec")]
    pub z_bar: Vec<Rat>,
    pub u_bar: Vec<u32>,
    pub d: Vec<i64>,
    /// position of k₀ in `k`
    pub k0: usize,
    /// Â[k][k'] = γ̂_{k'}(ĥ_k)
    pub cartan: Vec<Vec<i64>>,
}

impl FlatSharp {
    /// ū_k z̄_k d_k.
    pub fn product(&self, p: usize) -> Rat {
        int(self.u_bar[p] as i64) * &self.z_bar[p] * int(self.d[p])
    }

    /// "a×b×c" label of a node.
    pub fn label(&self, p: usize) -> String {
        format!("{}×{}×{}", self.u_bar[p], fmt_rat(&self.z_bar[p]), self.d[p])
    }
}

pub fn flat_sharp_split(f: &FoldedRootDatum, w: &WStar, u_bar: &[u32]) -> Result<FlatSharp> {
    let nk = w.len();
    if u_bar.len() != nk {
        return Err(Error::Validation(format!("{} values of ū for |K| = {nk}", u_bar.len())));
    }
    let mut flat = vec![false; nk];
    if let Some((a, b)) = w.c_tilde_ends {
        flat[a] = true;
        flat[b] = true;
    }
    let z_bar: Vec<Rat> = (0..nk).map(|p| if flat[p] { rat(w.z[p], 2) } else { int(w.z[p]) }).collect();
    for p in 0..nk {
        if !(1..=4).contains(&w.z[p]) {
            return Err(Error::Invariant(format!("z = {} outside {{1,2,3,4}}", w.z[p])));
        }
        let ok = [rat(1, 2), int(1), int(2), int(3)].contains(&z_bar[p]);
        if !ok {
            return Err(Error::Invariant(format!("z̄ = {} outside {{1/2,1,2,3}}", fmt_rat(&z_bar[p]))));
        }
    }
    if flat.iter().any(|&x| x) {
        let ones: Vec<bool> = w.n_tilde.iter().map(|&x| x == 1).collect();
        if ones != flat {
            return Err(Error::Invariant("{k : ñ_k = 1} differs from K♭".into()));
        }
    }
    let d: Vec<i64> = w.k.iter().map(|&i| f.dk[i]).collect();
    let mut fs = FlatSharp { k: w.k.clone(), flat, z_bar, u_bar: u_bar.to_vec(), d, k0: 0, cartan: vec![] };
    fs.k0 = match w.c_tilde_ends {
        Some((a, b)) => {
            if fs.product(b) < fs.product(a) {
                b
            } else {
                a
            }
        }
        None => (0..nk).find(|&p| w.n_tilde[p] == 1).unwrap(),
    };
    let mut cartan = vec![vec![0i64; nk]; nk];
    for a in 0..nk {
        for b in 0..nk {
            let x = &fs.z_bar[b] / int(w.z[b]) * int(w.z[a]) / &fs.z_bar[a] * int(w.cartan[a][b]);
            cartan[a][b] = to_i64(&x).ok_or_else(|| Error::Invariant("non-integral γ̂(ĥ)".into()))?;
        }
    }
    fs.cartan = cartan;
    Ok(fs)
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleParam {
    pub k: usize,
    pub lambda: u64,
    pub lambda_star: Option<u64>,
    /// ĥ_k ∈ 2ℒ'
    pub h_in_2l: bool,
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HeckeDescriptor {
    /// |K| = 1: the algebra C[v, v⁻¹]
    Trivial,
    Affine {
        /// the basis Π (nodes of K − {k₀})
        pi: Vec<SimpleParam>,
        /// Â restricted to Π
        cartan: Vec<Vec<i64>>,
        root_type: String,
        /// λ(γ̂_k) for every k ∈ K (k₀ included), in K order
        #[serde(with = "crate::scalar::rat_vec")]
        lambda_all: Vec<Rat>,
        k0: usize,
    },
}

/// λ, λ* from the ♭-♯ data.
pub fn parameters(w: &WStar, fs: &FlatSharp) -> Result<HeckeDescriptor> {
    let nk = w.len();
    let two = int(2);
    let mut lambda_all = vec![];
    let mut lambda_star_all: Vec<Option<Rat>> = vec![];
    for p in 0..nk {
        if fs.flat[p] {
            let q = (0..nk).find(|&q| q != p && fs.flat[q]).unwrap();
            let (x, y) = (fs.product(p), fs.product(q));
            lambda_all.push((&x + &y) / &two);
            lambda_star_all.push(Some((x - y).abs() / &two));
        } else {
            lambda_all.push(fs.product(p) / &two);
            lambda_star_all.push(None);
        }
    }
    let nat = |x: &Rat, what: &str| -> Result<u64> {
        if !x.is_integer() || x.is_negative() {
            return Err(Error::Invariant(format!("{what} = {} is not in N", fmt_rat(x))));
        }
        Ok(to_i64(x).unwrap() as u64)
    };
    let mut pi = vec![];
    for p in (0..nk).filter(|&p| p != fs.k0) {
        let h_hat: Vec<Rat> = w.h_tilde[p].iter().map(|x| x * int(w.z[p]) / &fs.z_bar[p]).collect();
        let half: Vec<Rat> = h_hat.iter().map(|x| x / &two).collect();
        let h_in_2l = w.in_lattice(&half);
        let lambda = nat(&lambda_all[p], "λ")?;
        let lambda_star = match &lambda_star_all[p] {
            Some(x) if h_in_2l => Some(nat(x, "λ*")?),
            Some(_) => return Err(Error::Invariant("♭ node with ĥ ∉ 2ℒ'".into())),
            None if h_in_2l => Some(lambda),
            None => None,
        };
        pi.push(SimpleParam { k: w.k[p], lambda, lambda_star, h_in_2l });
    }
    let idx: Vec<usize> = (0..nk).filter(|&p| p != fs.k0).collect();
    let cartan: Vec<Vec<i64>> = idx.iter().map(|&a| idx.iter().map(|&b| fs.cartan[a][b]).collect()).collect();
    // λ is constant on W-conjugate simple roots (joined by simple bonds)
    for a in 0..idx.len() {
        for b in 0..idx.len() {
            if a != b && cartan[a][b] * cartan[b][a] == 1 && pi[a].lambda != pi[b].lambda {
                return Err(Error::Invariant("λ differs on conjugate simple roots".into()));
            }
        }
    }
    let root_type = type_label(&classify(&cartan)?);
    Ok(HeckeDescriptor::Affine { pi, cartan, root_type, lambda_all, k0: w.k[fs.k0] })
}

/// Descriptor for any J: trivial when |K| = 1.
pub fn descriptor(f: &FoldedRootDatum, j: &[usize], order: &[usize], u_bar: &[u32]) -> Result<(Option<(WStar, FlatSharp)>, HeckeDescriptor)> {
    validate_j(f, j)?;
    if f.num_nodes() - j.len() == 1 {
        return Ok((None, HeckeDescriptor::Trivial));
    }
    let w = wstar_data_in(f, j, order)?;
    let fs = flat_sharp_split(f, &w, u_bar)?;
    let h = parameters(&w, &fs)?;
    Ok((Some((w, fs)), h))
}

/// ℛ̌ ∪ (½ℛ̌ ∩ ℒ') generates ℒ': Smith invariants of the generators in a basis of ℒ'.
pub fn coroots_generate_lattice(w: &WStar, fs: &FlatSharp) -> bool {
    let mut rows: Vec<Vec<Rat>> = vec![];
    for p in 0..w.len() {
        let h_hat: Vec<Rat> = w.h_tilde[p].iter().map(|x| x * int(w.z[p]) / &fs.z_bar[p]).collect();
        let half: Vec<Rat> = h_hat.iter().map(|x| x / int(2)).collect();
        if w.in_lattice(&half) {
            rows.push(half);
        }
        rows.push(h_hat);
    }
    let mut m = vec![];
    for v in &rows {
        let Some(c) = lattice_coords(&w.lattice, v) else { return false };
        let Some(ci) = c.iter().map(linalg::rat_to_i128).collect::<Option<Vec<i128>>>() else { return false };
        m.push(ci);
    }
    let inv = smith_invariants(&m);
    inv.len() == w.lattice.len() && inv.iter().all(|&x| x == 1)
}

/// dim g_{I−{k}} for each k ∈ K, from 𝔑-counts (rank + #pairs (β, j) in the span).
pub fn dim_g_minus(f: &FoldedRootDatum, k: &[usize]) -> Vec<usize> {
    let n = f.num_nodes();
    let ns = n_set(f);
    k.iter()
        .map(|&kk| {
            let rest: Vec<usize> = (0..n).filter(|&i| i != kk).collect();
            let count = ns
                .iter()
                .filter(|(r, j)| certificate(f, &f.rroots[*r].coords, *j, &rest).is_some())
                .count();
            f.rank() + count
        })
        .collect()
}

/// Same dimensions from the root subsystems 'R_{I−{k}}.
pub fn dim_g_minus_roots(f: &FoldedRootDatum, k: &[usize]) -> Vec<usize> {
    let n = f.num_nodes();
    k.iter()
        .map(|&kk| {
            let rest: Vec<usize> = (0..n).filter(|&i| i != kk).collect();
            f.rank() + f.subsystem_roots(&rest).len()
        })
        .collect()
}

/// Squared root lengths (up to scale) of an irreducible finite Cartan matrix.
pub fn root_lengths(cartan: &[Vec<i64>]) -> Vec<Rat> {
    let r = cartan.len();
    let mut len: Vec<Option<Rat>> = vec![None; r];
    if r == 0 {
        return vec![];
    }
    len[0] = Some(int(1));
    let mut stack = vec![0];
    while let Some(i) = stack.pop() {
        for j in 0..r {
            if j != i && cartan[i][j] != 0 && len[j].is_none() {
                // |α_j|²/|α_i|² = a_ij / a_ji
                len[j] = Some(len[i].clone().unwrap() * rat(cartan[i][j], cartan[j][i]));
                stack.push(j);
            }
        }
    }
    len.into_iter().map(|x| x.unwrap_or_else(|| int(1))).collect()
}

/// Untwisted affine diagram of the dual of Π, with λ labels (the H.A. diagram in the ♯-only case).
pub fn dual_affine(cartan: &[Vec<i64>], lambda: &[u64]) -> Result<(Vec<Vec<i64>>, Vec<u64>)> {
    let r = cartan.len();
    if classify(cartan)?.len() != 1 {
        return Err(Error::Validation("Π is not irreducible".into()));
    }
    let dual: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| cartan[j][i]).collect()).collect();
    let cd = CartanDatum::from_cartan(dual.clone())?;
    let theta = cd.highest_root();
    let theta_c = cd.positive_coroots.last().cloned().unwrap_or_default();
    let mut m = vec![vec![0i64; r + 1]; r + 1];
    for i in 0..r {
        for j in 0..r {
            m[i][j] = dual[i][j];
        }
        m[i][r] = -(0..r).map(|k| theta[k] * dual[i][k]).sum::<i64>();
        m[r][i] = -(0..r).map(|k| theta_c[k] * dual[k][i]).sum::<i64>();
    }
    m[r][r] = 2;
    // the affine node of the dual carries λ of a short root of Π
    let lengths = root_lengths(cartan);
    let short = (0..r).min_by(|&a, &b| lengths[a].cmp(&lengths[b])).unwrap_or(0);
    let mut labels = lambda.to_vec();
    labels.push(lambda[short]);
    Ok((m, labels))
}

/// ū_k from the engine, if the engine supports the ambient algebra.
pub fn u_bar_engine(code: &str, d: u32, j: &[usize], weights: &[i64], k: &[usize]) -> Result<Vec<u32>> {
    let eng = crate::lie::Engine::new(code, d)?;
    let t = crate::lie::sl2::distinguished_nilpotent(&eng, j, weights, 0x5eed)?;
    crate::lie::sl2::check_triple(&eng, &t)?;
    k.iter().map(|&kk| crate::lie::sl2::u_bar(&eng, j, kk, &t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::folding::fold;

    #[test]
    fn empty_j_gives_simple_reflections() {
        let f = fold("E6", 2).unwrap();
        let s = sigma_involutions(&f, &[]).unwrap();
        for x in &s {
            let m = int_matrix(&word_matrix(&f, &[x.k])).unwrap();
            assert_eq!(x.matrix, m);
        }
    }

    #[test]
    fn e6_empty_j_is_f4_tilde() {
        let f = fold("E6", 2).unwrap();
        let w = wstar_data(&f, &[]).unwrap();
        assert_eq!(w.k, vec![0, 1, 3, 4, 2]);
        assert_eq!(w.z, vec![1; 5]);
        assert_eq!(w.n_tilde, vec![1, 2, 3, 4, 2]);
        assert_eq!(w.weyl_order, 1152);
        assert_eq!(w.coxeter_number, 12);
        assert_eq!(w.root_type, "F4");
        assert!(w.c_tilde_ends.is_none());
    }

    #[test]
    fn e6_a1_cubed_is_flat() {
        let f = fold("E6", 2).unwrap();
        let w = wstar_data(&f, &[0, 2, 3]).unwrap();
        assert_eq!(w.k, vec![1, 4]);
        assert_eq!(w.z, vec![2, 4]);
        assert!(w.z_identity_holds());
        let fs = flat_sharp_split(&f, &w, &[4, 5]).unwrap();
        assert_eq!(fs.label(0), "4×1×2");
        assert_eq!(fs.label(1), "5×2×1");
        let h = parameters(&w, &fs).unwrap();
        let HeckeDescriptor::Affine { pi, .. } = h else { panic!() };
        assert_eq!((pi[0].lambda, pi[0].lambda_star), (9, Some(1)));
    }

    #[test]
    fn non_finite_jk_rejected() {
        let f = fold("A2", 2).unwrap();
        assert!(longest_word(&f, &[0, 1]).is_err());
    }
}

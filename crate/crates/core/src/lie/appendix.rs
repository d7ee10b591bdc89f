//! Eigenvalue multisets of x + z·h⁰ on a faithful module, for the cases where
//! a Levi-type centralizer 𝔩 carries a distinguished h⁰, and recovery of the
//! dominant x from the multiset by repeated max-extraction.

use rand::Rng;
use serde::{Deserialize, Serialize};
use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::{complex_cmp, complex_ge, int, rat, CScalar, Rat};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Case {
    /// sl_{ab} ⊃ sl_a^b ⊕ C^{b−1}; x has b coordinates (the trace condition is not needed for recovery)
    A2 { a: usize, b: usize },
    /// sp_{2n+2p} ⊃ sp_{2n} ⊕ C^p
    A3 { p: usize, n: usize },
    /// so_{n+2p} ⊃ so_n ⊕ C^p
    A4 { p: usize, n: usize },
    /// so_{2n+4p} ⊃ so_{2n} ⊕ sl_2^p ⊕ C^p
    A5 { p: usize, n: usize },
    /// so_{2n+1+4p} ⊃ so_{2n+1} ⊕ sl_2^p ⊕ C^p
    A6 { p: usize, n: usize },
    /// E6 ⊃ sl_3^3 ⊕ C^2, minuscule 27-dimensional module; x = (a, b)
    A7,
    /// E7 ⊃ sl_2^3 ⊕ C^4, minuscule 56-dimensional module; x = (a, b, c, d)
    A8,
}

impl Case {
    pub fn parse(tag: &str, p1: usize, p2: usize) -> Result<Case> {
        Ok(match tag {
            "A.2" => Case::A2 { a: p1, b: p2 },
            "A.3" => Case::A3 { p: p1, n: p2 },
            "A.4" => Case::A4 { p: p1, n: p2 },
            "A.5" => Case::A5 { p: p1, n: p2 },
            "A.6" => Case::A6 { p: p1, n: p2 },
            "A.7" => Case::A7,
            "A.8" => Case::A8,
            _ => return Err(Error::Validation(format!("unsupported case tag {tag}; expected A.2 … A.8"))),
        })
    }

    /// Number of coordinates of x.
    pub fn x_len(&self) -> usize {
        match *self {
            Case::A2 { b, .. } => b,
            Case::A3 { p, .. } | Case::A4 { p, .. } | Case::A5 { p, .. } | Case::A6 { p, .. } => p,
            Case::A7 => 2,
            Case::A8 => 4,
        }
    }

    /// Number of h⁰-data integers c_i.
    pub fn c_len(&self) -> usize {
        match *self {
            Case::A3 { n, .. } | Case::A4 { n, .. } | Case::A5 { n, .. } | Case::A6 { n, .. } => n,
            _ => 0,
        }
    }
}

/// x and the integer eigenvalue data c of h⁰ on the part of the module where x vanishes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SemisimpleData {
    pub x: Vec<CScalar>,
    pub c: Vec<i64>,
}

fn r(n: i64) -> CScalar {
    CScalar::real(int(n))
}

fn lin(coeffs: &[i64], x: &[CScalar]) -> CScalar {
    coeffs.iter().zip(x).fold(CScalar::zero(), |acc, (&k, v)| &acc + &v.scale(&int(k)))
}

fn validate(case: Case, data: &SemisimpleData) -> Result<()> {
    if data.x.len() != case.x_len() || data.c.len() != case.c_len() {
        return Err(Error::Validation(format!(
            "{case:?} needs {} coordinates and {} integers c_i",
            case.x_len(),
            case.c_len()
        )));
    }
    if let Case::A2 { a, b } = case {
        if a < 2 || b < 2 {
            return Err(Error::Validation("A.2 needs a > 1 and b > 1".into()));
        }
    }
    if let Case::A4 { .. } = case {
        let mut c = data.c.clone();
        let mut neg: Vec<i64> = c.iter().map(|v| -v).collect();
        c.sort_unstable();
        neg.sort_unstable();
        if c != neg {
            return Err(Error::Validation("A.4 needs the full symmetric h⁰-spectrum on so_n".into()));
        }
    }
    Ok(())
}

pub fn is_dominant(case: Case, x: &[CScalar]) -> bool {
    let chain = |v: &[CScalar]| v.windows(2).all(|w| complex_ge(&(&w[0] - &w[1])));
    match case {
        Case::A2 { .. } => chain(x),
        Case::A3 { .. } | Case::A4 { .. } | Case::A5 { .. } | Case::A6 { .. } => {
            chain(x) && x.last().map(complex_ge).unwrap_or(true)
        }
        Case::A7 | Case::A8 => x.iter().all(complex_ge),
    }
}

const A7_ROWS: [([i64; 2], i64); 12] = [
    ([2, 1], 2), ([2, 1], 0), ([2, 1], -2),
    ([1, 1], 2), ([1, 1], 0), ([1, 1], -2),
    ([1, 0], 2), ([1, 0], 0), ([1, 0], -2),
    ([0, 0], 4), ([0, 0], 2), ([0, 0], 2),
];

const A8_LINEAR: [[i64; 4]; 12] = [
    [1, 2, 3, 2], [1, 2, 3, 1], [1, 2, 2, 1], [1, 1, 2, 1],
    [1, 1, 1, 1], [0, 1, 2, 1], [0, 1, 1, 1], [1, 1, 1, 0],
    [0, 0, 1, 1], [0, 1, 1, 0], [0, 0, 0, 1], [0, 0, 1, 0],
];

/// Eigenvalues of x + z·h⁰, sorted decreasingly in the order on C.
pub fn eigen_multiset(case: Case, data: &SemisimpleData, z: &CScalar) -> Result<Vec<CScalar>> {
    validate(case, data)?;
    let x = &data.x;
    let zc = |k: i64| z.scale(&int(k));
    let mut y: Vec<CScalar> = vec![];
    match case {
        Case::A2 { a, .. } => {
            for xi in x {
                for l in 0..a as i64 {
                    y.push(xi + &zc(a as i64 - 1 - 2 * l));
                }
            }
        }
        Case::A3 { .. } | Case::A4 { .. } => {
            for xi in x {
                y.push(xi.clone());
                y.push(-xi);
            }
        }
        Case::A5 { .. } | Case::A6 { .. } => {
            for xi in x {
                for s in [1, -1] {
                    let sx = xi.scale(&int(s));
                    y.push(&sx + z);
                    y.push(&sx - z);
                }
            }
        }
        Case::A7 => {
            for (coef, k) in A7_ROWS {
                let v = &lin(&coef, x) + &zc(k);
                y.push(-&v);
                y.push(v);
            }
            y.extend([r(0), r(0), r(0)]);
        }
        Case::A8 => {
            for coef in A8_LINEAR {
                let v = lin(&coef, x);
                for s in [1, -1] {
                    let w = &v + &zc(s);
                    y.push(-&w);
                    y.push(w);
                }
            }
            for k in [3, 1, 1, 1] {
                y.push(zc(k));
                y.push(zc(-k));
            }
        }
    }
    y.extend(rest_spectrum(case, &data.c, z));
    sort_desc(&mut y);
    Ok(y)
}

/// Eigenvalues of z·h⁰ on the part of the module where x acts by zero.
fn rest_spectrum(case: Case, c: &[i64], z: &CScalar) -> Vec<CScalar> {
    let zc = |k: i64| z.scale(&int(k));
    match case {
        Case::A3 { .. } | Case::A5 { .. } => c.iter().flat_map(|&k| [zc(k), zc(-k)]).collect(),
        Case::A6 { .. } => {
            let mut v: Vec<CScalar> = c.iter().flat_map(|&k| [zc(k), zc(-k)]).collect();
            v.push(CScalar::zero());
            v
        }
        Case::A4 { .. } => c.iter().map(|&k| zc(k)).collect(),
        _ => vec![],
    }
}

pub fn sort_desc(y: &mut [CScalar]) {
    y.sort_by(|a, b| complex_cmp(b, a));
}

fn remove_one(y: &mut Vec<CScalar>, v: &CScalar) -> Result<()> {
    let k = y
        .iter()
        .position(|w| w == v)
        .ok_or_else(|| Error::Validation(format!("not in the image: expected eigenvalue {v} is missing")))?;
    y.remove(k);
    Ok(())
}

fn max_of(y: &[CScalar]) -> Result<CScalar> {
    y.iter()
        .max_by(|a, b| complex_cmp(a, b))
        .cloned()
        .ok_or_else(|| Error::Validation("not in the image: multiset exhausted early".into()))
}

/// Recovers the unique dominant x with eigen_multiset(x) = y.
pub fn dominant_from_multiset(case: Case, y: &[CScalar], z: &CScalar, c: &[i64]) -> Result<Vec<CScalar>> {
    if c.len() != case.c_len() {
        return Err(Error::Validation(format!("{case:?} needs {} integers c_i", case.c_len())));
    }
    let mut rest: Vec<CScalar> = y.to_vec();
    for v in rest_spectrum(case, c, z) {
        remove_one(&mut rest, &v)?;
    }
    let zc = |k: i64| z.scale(&int(k));
    let mut x: Vec<CScalar> = vec![];
    match case {
        Case::A2 { a, b } => {
            for _ in 0..b {
                let xi = &max_of(&rest)? - &zc(a as i64 - 1);
                for l in 0..a as i64 {
                    remove_one(&mut rest, &(&xi + &zc(a as i64 - 1 - 2 * l)))?;
                }
                x.push(xi);
            }
        }
        Case::A3 { p, .. } | Case::A4 { p, .. } => {
            for _ in 0..p {
                let xi = max_of(&rest)?;
                remove_one(&mut rest, &xi)?;
                remove_one(&mut rest, &-&xi)?;
                x.push(xi);
            }
        }
        Case::A5 { p, .. } | Case::A6 { p, .. } => {
            for _ in 0..p {
                let xi = &max_of(&rest)? - z;
                for s in [1, -1] {
                    let sx = xi.scale(&int(s));
                    remove_one(&mut rest, &(&sx + z))?;
                    remove_one(&mut rest, &(&sx - z))?;
                }
                x.push(xi);
            }
        }
        Case::A7 => {
            for k in [4, 2, 2] {
                remove_one(&mut rest, &zc(k))?;
            }
            let m1 = &max_of(&rest)? - &zc(2);
            for k in [2, 0, -2] {
                remove_one(&mut rest, &(&m1 + &zc(k)))?;
            }
            let m2 = &max_of(&rest)? - &zc(2);
            // 2a + b = m1, a + b = m2
            let a = &m1 - &m2;
            let b = &m2 - &a;
            x = vec![a, b];
            rest.clear();
        }
        Case::A8 => {
            for k in [3, 1, 1, 1] {
                remove_one(&mut rest, &zc(k))?;
            }
            let mut m = vec![];
            for _ in 0..4 {
                let v = &max_of(&rest)? - z;
                remove_one(&mut rest, &(&v + z))?;
                remove_one(&mut rest, &(&v - z))?;
                m.push(v);
            }
            // a+2b+3c+2d, a+2b+3c+d, a+2b+2c+d, a+b+2c+d
            let d = &m[0] - &m[1];
            let cc = &m[1] - &m[2];
            let b = &m[2] - &m[3];
            let a = &(&(&m[3] - &b) - &cc.scale(&int(2))) - &d;
            x = vec![a, b, cc, d];
            rest.clear();
        }
    }
    if !matches!(case, Case::A7 | Case::A8) && !rest.is_empty() {
        return Err(Error::Validation("not in the image: eigenvalues left over".into()));
    }
    if !is_dominant(case, &x) {
        return Err(Error::Validation("not in the image: recovered x is not dominant".into()));
    }
    // the peeled strings must rebuild the whole multiset
    let data = SemisimpleData { x: x.clone(), c: c.to_vec() };
    let mut want = y.to_vec();
    sort_desc(&mut want);
    if eigen_multiset(case, &data, z)? != want {
        return Err(Error::Validation("not in the image: multiset mismatch after extraction".into()));
    }
    Ok(x)
}

/// All dominant x realizing y in case A.2, by searching assignments of y to the (i, l) slots.
pub fn brute_force_a2(a: usize, b: usize, y: &[CScalar], z: &CScalar) -> Vec<Vec<CScalar>> {
    let n = a * b;
    let mut out: Vec<Vec<CScalar>> = vec![];
    if y.len() != n {
        return out;
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut visit = |perm: &[usize]| {
        let mut x = vec![];
        for i in 0..b {
            let cand: Vec<CScalar> =
                (0..a).map(|l| &y[perm[i * a + l]] - &z.scale(&int(a as i64 - 1 - 2 * l as i64))).collect();
            if cand.iter().any(|v| v != &cand[0]) {
                return;
            }
            x.push(cand[0].clone());
        }
        if is_dominant(Case::A2 { a, b }, &x) && !out.contains(&x) {
            out.push(x);
        }
    };
    heap_permute(&mut perm, n, &mut visit);
    out
}

fn heap_permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k <= 1 {
        f(v);
        return;
    }
    for i in 0..k {
        heap_permute(v, k - 1, f);
        if k % 2 == 0 {
            v.swap(i, k - 1);
        } else {
            v.swap(0, k - 1);
        }
    }
}

/// A random complex number ≥ 0.
pub fn random_nonneg<R: Rng>(rng: &mut R) -> CScalar {
    if rng.gen_bool(0.3) {
        CScalar::new(Rat::from_integer(0.into()), rat(rng.gen_range(0..=6), rng.gen_range(1..=3)))
    } else {
        // a positive real part makes any imaginary part admissible
        CScalar::new(rat(rng.gen_range(1..=12), rng.gen_range(1..=4)), rat(rng.gen_range(-6..=6), rng.gen_range(1..=3)))
    }
}

/// A random dominant x for the case.
pub fn random_dominant<R: Rng>(case: Case, rng: &mut R) -> Vec<CScalar> {
    let k = case.x_len();
    match case {
        Case::A7 | Case::A8 => (0..k).map(|_| random_nonneg(rng)).collect(),
        _ => {
            // x_k ≥ 0 and x_i − x_{i+1} ≥ 0, built from the bottom up
            let mut x = vec![random_nonneg(rng)];
            for _ in 1..k {
                let top = &x[0] + &random_nonneg(rng);
                x.insert(0, top);
            }
            if let Case::A2 { .. } = case {
                let mean = x.iter().fold(CScalar::zero(), |s, v| &s + v).scale(&rat(1, k as i64));
                x = x.iter().map(|v| v - &mean).collect();
            }
            x
        }
    }
}

/// Positive half of the eigenvalues of the neutral element attached to a partition
/// (the data c_i of an sp or so block).
pub fn half_eigenvalues(partition: &[i64]) -> Vec<i64> {
    let mut vals: Vec<i64> = partition.iter().flat_map(|&p| (0..p).map(move |i| p - 1 - 2 * i)).collect();
    vals.sort_unstable_by(|a, b| b.cmp(a));
    vals.truncate(vals.len() / 2);
    vals
}

pub fn multiset_eq(a: &[CScalar], b: &[CScalar]) -> bool {
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    sort_desc(&mut x);
    sort_desc(&mut y);
    x == y
}

pub fn cmp_desc(a: &CScalar, b: &CScalar) -> Ordering {
    complex_cmp(b, a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn re(v: &[i64]) -> Vec<CScalar> {
        v.iter().map(|&k| r(k)).collect()
    }

    #[test]
    fn a2_example() {
        let case = Case::A2 { a: 2, b: 2 };
        let data = SemisimpleData { x: re(&[1, -1]), c: vec![] };
        let y = eigen_multiset(case, &data, &r(1)).unwrap();
        assert!(multiset_eq(&y, &re(&[2, 0, 0, -2])));
        assert_eq!(dominant_from_multiset(case, &y, &r(1), &[]).unwrap(), data.x);
    }

    #[test]
    fn a2_roundtrip_named_input() {
        let case = Case::A2 { a: 2, b: 2 };
        let x = re(&[3, 1]);
        let data = SemisimpleData { x: x.clone(), c: vec![] };
        let y = eigen_multiset(case, &data, &r(1)).unwrap();
        assert_eq!(dominant_from_multiset(case, &y, &r(1), &[]).unwrap(), x);
        assert_eq!(brute_force_a2(2, 2, &y, &r(1)), vec![x]);
    }

    #[test]
    fn a7_zero() {
        let y = eigen_multiset(Case::A7, &SemisimpleData { x: re(&[0, 0]), c: vec![] }, &r(0)).unwrap();
        assert_eq!(y.len(), 27);
        assert!(y.iter().all(|v| v.is_zero()));
    }

    #[test]
    fn a8_size() {
        let y = eigen_multiset(Case::A8, &SemisimpleData { x: re(&[1, 2, 0, 3]), c: vec![] }, &r(1)).unwrap();
        assert_eq!(y.len(), 56);
    }

    #[test]
    fn a3_contains_pm_x() {
        let c = half_eigenvalues(&[4, 2]);
        assert_eq!(c, vec![3, 1, 1]);
        let data = SemisimpleData { x: re(&[5, 2]), c };
        let y = eigen_multiset(Case::A3 { p: 2, n: 3 }, &data, &r(1)).unwrap();
        for v in [5, -5, 2, -2] {
            assert!(y.contains(&r(v)));
        }
    }

    #[test]
    fn random_roundtrips() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for case in [Case::A2 { a: 2, b: 3 }, Case::A5 { p: 2, n: 2 }, Case::A6 { p: 1, n: 1 }, Case::A7, Case::A8] {
            let c: Vec<i64> = (0..case.c_len()).map(|k| k as i64 + 1).collect();
            for _ in 0..10 {
                let x = random_dominant(case, &mut rng);
                assert!(is_dominant(case, &x), "{case:?} {x:?}");
                for z in [r(0), r(1)] {
                    let data = SemisimpleData { x: x.clone(), c: c.clone() };
                    let y = eigen_multiset(case, &data, &z).unwrap();
                    assert_eq!(dominant_from_multiset(case, &y, &z, &c).unwrap(), x, "{case:?}");
                }
            }
        }
    }

    #[test]
    fn rejects_garbage() {
        let y = re(&[5, 0, 0, -1]);
        assert!(dominant_from_multiset(Case::A2 { a: 2, b: 2 }, &y, &r(1), &[]).is_err());
    }
}

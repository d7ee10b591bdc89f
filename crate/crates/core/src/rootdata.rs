//! Root data (R, Ř, X, Y) with a basis Π, finite Weyl groups and a Cartan
//! type classifier.

use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Default cap on materialized Weyl groups (E6 has 51840 elements).
pub const WEYL_BOUND: usize = 200_000;

/// Cartan matrix with a_ij = ⟨α_j, α̌_i⟩, Bourbaki numbering.
pub fn cartan_matrix(family: char, n: usize) -> Result<Vec<Vec<i64>>> {
    let bad = || Error::Validation(format!("unknown Cartan type {family}{n}"));
    let ok = match family {
        'A' => n >= 1,
        'B' | 'C' => n >= 2,
        'D' => n >= 3,
        'E' => (6..=8).contains(&n),
        'F' => n == 4,
        'G' => n == 2,
        _ => false,
    };
    if !ok {
        return Err(bad());
    }
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match family {
        'A' | 'B' | 'C' => (0..n - 1).for_each(|i| link(i, i + 1)),
        'D' => {
            (0..n - 2).for_each(|i| link(i, i + 1));
            link(n - 3, n - 1);
        }
        'E' => {
            link(0, 2);
            link(1, 3);
            (2..n - 1).for_each(|i| link(i, i + 1));
        }
        'F' => (0..3).for_each(|i| link(i, i + 1)),
        'G' => link(0, 1),
        _ => unreachable!(),
    }
    match family {
        'B' => a[n - 1][n - 2] = -2,
        'C' => a[n - 2][n - 1] = -2,
        'F' => a[2][1] = -2,
        'G' => a[0][1] = -3,
        _ => {}
    }
    Ok(a)
}

/// Splits "E6" into ('E', 6).
pub fn parse_type_code(code: &str) -> Result<(char, usize)> {
    let mut ch = code.trim().chars();
    let fam = ch.next().map(|c| c.to_ascii_uppercase());
    let n: Option<usize> = ch.as_str().parse().ok();
    match (fam, n) {
        (Some(f), Some(n)) if cartan_matrix(f, n).is_ok() => Ok((f, n)),
        _ => Err(Error::Validation(format!(
            "unknown type code `{code}` (expected e.g. A3, D4, E6, B2, F4, G2)"
        ))),
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CartanDatum {
    pub label: String,
    pub rank: usize,
    /// rank of X (= rank of Y)
    pub lattice_rank: usize,
    pub simple_roots: Vec<Vec<i64>>,
    pub simple_coroots: Vec<Vec<i64>>,
    pub cartan: Vec<Vec<i64>>,
    /// positive roots in Π-coordinates, ordered by height then lexicographically
    pub positive_roots: Vec<Vec<i64>>,
    /// matching coroots in Π̌-coordinates
    pub positive_coroots: Vec<Vec<i64>>,
}

impl CartanDatum {
    pub fn from_code(code: &str) -> Result<Self> {
        let (f, n) = parse_type_code(code)?;
        let mut d = Self::from_cartan(cartan_matrix(f, n)?)?;
        d.label = format!("{f}{n}");
        Ok(d)
    }

    /// Adjoint datum: X has the simple roots as basis.
    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<Self> {
        let r = cartan.len();
        let roots = (0..r).map(|i| (0..r).map(|j| (i == j) as i64).collect()).collect();
        // α̌_i in the dual basis: ⟨α_j, α̌_i⟩ = a_ij
        let coroots = cartan.clone();
        Self::from_lattice("custom", roots, coroots)
    }

    /// General datum from simple roots in X and simple coroots in Y = Hom(X, Z).
    pub fn from_lattice(label: &str, simple_roots: Vec<Vec<i64>>, simple_coroots: Vec<Vec<i64>>) -> Result<Self> {
        let rank = simple_roots.len();
        if simple_coroots.len() != rank {
            return Err(Error::Validation("root/coroot count mismatch".into()));
        }
        let lattice_rank = simple_roots.first().map_or(0, |v| v.len());
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| dot(&simple_roots[j], &simple_coroots[i])).collect())
            .collect();
        for i in 0..rank {
            if cartan[i][i] != 2 {
                return Err(Error::Validation(format!("⟨α_{i}, α̌_{i}⟩ ≠ 2")));
            }
            for j in 0..rank {
                if i != j && (cartan[i][j] > 0 || (cartan[i][j] == 0) != (cartan[j][i] == 0)) {
                    return Err(Error::Validation("not a generalized Cartan matrix".into()));
                }
            }
        }
        let (pos, posc) = enumerate_roots(&cartan)?;
        Ok(CartanDatum {
            label: label.to_string(),
            rank,
            lattice_rank,
            simple_roots,
            simple_coroots,
            cartan,
            positive_roots: pos,
            positive_coroots: posc,
        })
    }

    pub fn num_positive(&self) -> usize {
        self.positive_roots.len()
    }

    /// All roots: positives then negatives, in Π-coordinates.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let mut v = self.positive_roots.clone();
        v.extend(self.positive_roots.iter().map(|r| neg(r)));
        v
    }

    pub fn coroots(&self) -> Vec<Vec<i64>> {
        let mut v = self.positive_coroots.clone();
        v.extend(self.positive_coroots.iter().map(|r| neg(r)));
        v
    }

    pub fn root_index(&self, coords: &[i64]) -> Option<usize> {
        let p = self.num_positive();
        if let Some(k) = self.positive_roots.iter().position(|r| r == coords) {
            return Some(k);
        }
        let n = neg(coords);
        self.positive_roots.iter().position(|r| *r == n).map(|k| k + p)
    }

    /// X-vector of a root given in Π-coordinates.
    pub fn root_vector(&self, coords: &[i64]) -> Vec<i64> {
        combine(&self.simple_roots, coords, self.lattice_rank)
    }

    pub fn coroot_vector(&self, coords: &[i64]) -> Vec<i64> {
        combine(&self.simple_coroots, coords, self.lattice_rank)
    }

    /// s_α(x) = x − ⟨x, α̌⟩α, α given by its index in `roots()`.
    pub fn reflect(&self, x: &[i64], root: usize) -> Result<Vec<i64>> {
        let roots = self.roots();
        let coroots = self.coroots();
        let (Some(a), Some(c)) = (roots.get(root), coroots.get(root)) else {
            return Err(Error::Validation(format!("root index {root} out of range")));
        };
        let av = self.root_vector(a);
        let k = dot(x, &self.coroot_vector(c));
        Ok(x.iter().zip(&av).map(|(xi, ai)| xi - k * ai).collect())
    }

    /// ⟨β, γ̌⟩ for β in Π-coordinates and γ̌ in Π̌-coordinates.
    pub fn pair(&self, beta: &[i64], cobeta: &[i64]) -> i64 {
        pair_coords(&self.cartan, beta, cobeta)
    }

    pub fn is_simply_laced(&self) -> bool {
        self.cartan.iter().flatten().all(|&x| x >= -1)
    }

    pub fn highest_root(&self) -> Vec<i64> {
        self.positive_roots.last().cloned().unwrap_or_default()
    }

    /// Matrix of s_i on Π-coordinates (column j = s_i(α_j)).
    pub fn simple_reflection(&self, i: usize) -> Vec<Vec<i64>> {
        let r = self.rank;
        let mut m: Vec<Vec<i64>> = (0..r).map(|a| (0..r).map(|b| (a == b) as i64).collect()).collect();
        for j in 0..r {
            m[i][j] -= self.cartan[i][j];
        }
        m
    }

    pub fn identity_element(&self) -> WeylElement {
        WeylElement { matrix: ident(self.rank), word: vec![] }
    }

    pub fn element_from_word(&self, word: &[usize]) -> WeylElement {
        let mut w = self.identity_element();
        for &i in word {
            w = w.times_simple(self, i);
        }
        w
    }

    /// Whole finite Weyl group with reduced words, breadth-first by length.
    pub fn generate_weyl(&self, bound: usize) -> Result<Vec<WeylElement>> {
        let mut seen: HashSet<Vec<Vec<i64>>> = HashSet::new();
        let mut out = vec![];
        let mut queue = VecDeque::new();
        let id = self.identity_element();
        seen.insert(id.matrix.clone());
        queue.push_back(id);
        while let Some(w) = queue.pop_front() {
            for i in 0..self.rank {
                let v = w.times_simple(self, i);
                if seen.insert(v.matrix.clone()) {
                    if seen.len() > bound {
                        return Err(Error::TooLarge(format!(
                            "Weyl group of {} exceeds {bound} elements",
                            self.label
                        )));
                    }
                    queue.push_back(v);
                }
            }
            out.push(w);
        }
        Ok(out)
    }

    /// Longest element of the parabolic subgroup W_J.
    pub fn longest_element(&self, j: &[usize]) -> WeylElement {
        let mut w = self.identity_element();
        loop {
            let next = j.iter().copied().find(|&i| {
                let img = w.apply(&unit(self.rank, i));
                img.iter().any(|&x| x > 0)
            });
            match next {
                Some(i) => w = w.times_simple(self, i),
                None => return w,
            }
        }
    }

    pub fn positive_root_count_in(&self, j: &[usize]) -> usize {
        self.positive_roots
            .iter()
            .filter(|r| r.iter().enumerate().all(|(k, &x)| x == 0 || j.contains(&k)))
            .count()
    }
}

impl fmt::Display for CartanDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (rank {}, {} roots)", self.label, self.rank, 2 * self.num_positive())
    }
}

/// Element of W₀ as an integer matrix on Π-coordinates plus a reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeylElement {
    pub matrix: Vec<Vec<i64>>,
    pub word: Vec<usize>,
}

impl WeylElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    pub fn apply(&self, v: &[i64]) -> Vec<i64> {
        self.matrix.iter().map(|row| dot(row, v)).collect()
    }

    /// w·s_i (the word is reduced whenever the length grows).
    pub fn times_simple(&self, d: &CartanDatum, i: usize) -> WeylElement {
        let s = d.simple_reflection(i);
        let matrix = mat_mul_i(&self.matrix, &s);
        let mut word = self.word.clone();
        if word.last() == Some(&i) {
            word.pop();
        } else {
            word.push(i);
        }
        WeylElement { matrix, word }
    }

    pub fn inversions(&self, d: &CartanDatum) -> usize {
        d.positive_roots
            .iter()
            .filter(|r| self.apply(r).iter().any(|&x| x < 0))
            .count()
    }

    pub fn is_involution(&self) -> bool {
        mat_mul_i(&self.matrix, &self.matrix) == ident(self.matrix.len())
    }

    /// Permutation of `roots()` induced by this element.
    pub fn root_permutation(&self, d: &CartanDatum) -> Vec<usize> {
        let roots = d.roots();
        let index: HashMap<&Vec<i64>, usize> = roots.iter().enumerate().map(|(k, r)| (r, k)).collect();
        roots.iter().map(|r| index[&self.apply(r)]).collect()
    }
}

fn enumerate_roots(cartan: &[Vec<i64>]) -> Result<(Vec<Vec<i64>>, Vec<Vec<i64>>)> {
    let r = cartan.len();
    let mut seen: HashMap<Vec<i64>, Vec<i64>> = HashMap::new();
    let mut queue = VecDeque::new();
    for i in 0..r {
        let e = unit(r, i);
        seen.insert(e.clone(), e.clone());
        queue.push_back((e.clone(), e));
    }
    while let Some((b, c)) = queue.pop_front() {
        for i in 0..r {
            let k = pair_coords(cartan, &b, &unit(r, i));
            let kc = pair_coords(cartan, &unit(r, i), &c);
            let mut nb = b.clone();
            nb[i] -= k;
            let mut nc = c.clone();
            nc[i] -= kc;
            if !seen.contains_key(&nb) {
                if seen.len() > 100_000 {
                    return Err(Error::Validation("root system is not of finite type".into()));
                }
                seen.insert(nb.clone(), nc.clone());
                queue.push_back((nb, nc));
            }
        }
    }
    let mut pos: Vec<(Vec<i64>, Vec<i64>)> = seen.into_iter().filter(|(b, _)| b.iter().all(|&x| x >= 0)).collect();
    pos.sort_by(|a, b| {
        let ha: i64 = a.0.iter().sum();
        let hb: i64 = b.0.iter().sum();
        ha.cmp(&hb).then_with(|| b.0.cmp(&a.0))
    });
    Ok(pos.into_iter().unzip())
}

fn pair_coords(cartan: &[Vec<i64>], beta: &[i64], cobeta: &[i64]) -> i64 {
    let mut s = 0;
    for (i, ki) in cobeta.iter().enumerate() {
        if *ki == 0 {
            continue;
        }
        for (j, mj) in beta.iter().enumerate() {
            s += ki * mj * cartan[i][j];
        }
    }
    s
}

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    (0..n).map(|k| (k == i) as i64).collect()
}

fn ident(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| unit(n, i)).collect()
}

fn combine(basis: &[Vec<i64>], coords: &[i64], dim: usize) -> Vec<i64> {
    let mut v = vec![0; dim];
    for (b, &c) in basis.iter().zip(coords) {
        for (x, y) in v.iter_mut().zip(b) {
            *x += c * y;
        }
    }
    v
}

pub fn mat_mul_i(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let m = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|row| (0..m).map(|j| row.iter().zip(b).map(|(x, br)| x * br[j]).sum()).collect())
        .collect()
}

// ------------------------------------------------------------ classifier

/// One irreducible component of a finite Cartan matrix, with its nodes
/// listed in Bourbaki order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Component {
    pub family: char,
    pub rank: usize,
    pub nodes: Vec<usize>,
}

impl Component {
    pub fn code(&self) -> String {
        format!("{}{}", self.family, self.rank)
    }
}

pub fn components(a: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = a.len();
    let mut seen = vec![false; n];
    let mut out = vec![];
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut comp = vec![];
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(v) = stack.pop() {
            comp.push(v);
            for w in 0..n {
                if w != v && a[v][w] != 0 && !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort();
        out.push(comp);
    }
    out
}

/// Classifies a finite-type Cartan matrix into irreducible components.
pub fn classify(a: &[Vec<i64>]) -> Result<Vec<Component>> {
    let mut out = vec![];
    for comp in components(a) {
        out.push(classify_connected(a, &comp)?);
    }
    out.sort_by(|x, y| x.family.cmp(&y.family).then(y.rank.cmp(&x.rank)).then(x.nodes.cmp(&y.nodes)));
    Ok(out)
}

/// "A1×B4" style label; "∅" for the empty matrix.
pub fn type_label(comps: &[Component]) -> String {
    if comps.is_empty() {
        return "∅".into();
    }
    let mut codes: Vec<String> = comps.iter().map(|c| c.code()).collect();
    codes.sort();
    // collapse repeats as powers
    let mut parts: Vec<String> = vec![];
    let mut k = 0;
    while k < codes.len() {
        let mut m = 1;
        while k + m < codes.len() && codes[k + m] == codes[k] {
            m += 1;
        }
        parts.push(if m == 1 { codes[k].clone() } else { format!("{}^{}", codes[k], m) });
        k += m;
    }
    parts.join("×")
}

fn classify_connected(a: &[Vec<i64>], nodes: &[usize]) -> Result<Component> {
    let n = nodes.len();
    let nb = |v: usize| -> Vec<usize> { nodes.iter().copied().filter(|&w| w != v && a[v][w] != 0).collect() };
    let prod = |v: usize, w: usize| a[v][w] * a[w][v];
    let fail = || Error::Validation(format!("Cartan submatrix on {nodes:?} is not of finite type"));
    if n == 1 {
        return Ok(Component { family: 'A', rank: 1, nodes: nodes.to_vec() });
    }
    let degs: Vec<usize> = nodes.iter().map(|&v| nb(v).len()).collect();
    let edges: usize = degs.iter().sum::<usize>() / 2;
    if edges != n - 1 || degs.iter().any(|&d| d > 3) {
        return Err(fail());
    }
    let branch: Vec<usize> = nodes.iter().copied().filter(|&v| nb(v).len() == 3).collect();
    let multi: Vec<(usize, usize)> = nodes
        .iter()
        .flat_map(|&v| nb(v).into_iter().map(move |w| (v, w)))
        .filter(|&(v, w)| v < w && prod(v, w) > 1)
        .collect();
    let walk = |start: usize| -> Vec<usize> {
        let mut path = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next: Vec<usize> = nb(cur).into_iter().filter(|&w| w != prev).collect();
            if next.len() != 1 {
                break;
            }
            prev = cur;
            cur = next[0];
            path.push(cur);
        }
        path
    };
    let ends: Vec<usize> = nodes.iter().copied().filter(|&v| nb(v).len() == 1).collect();
    if branch.is_empty() {
        let path = walk(ends[0]);
        if multi.is_empty() {
            return Ok(Component { family: 'A', rank: n, nodes: path });
        }
        if multi.len() != 1 {
            return Err(fail());
        }
        let (v, w) = multi[0];
        let p = prod(v, w);
        if p >= 4 {
            return Err(fail());
        }
        if p == 3 {
            // G2: α1 short, i.e. a[α1][α2] = −3
            let (s, l) = if a[v][w] == -3 { (v, w) } else { (w, v) };
            return Ok(Component { family: 'G', rank: 2, nodes: vec![s, l] });
        }
        let pos = |x: usize| path.iter().position(|&y| y == x).unwrap();
        let (pv, pw) = (pos(v), pos(w));
        let (lo, hi) = (pv.min(pw), pv.max(pw));
        if n == 4 && lo == 1 {
            // F4: α1, α2 long, α3, α4 short, a[α3][α2] = −2
            let mut p2 = path.clone();
            if a[p2[2]][p2[1]] != -2 {
                p2.reverse();
            }
            return Ok(Component { family: 'F', rank: 4, nodes: p2 });
        }
        if lo != 0 && hi != n - 1 {
            return Err(fail());
        }
        let mut p2 = path.clone();
        if n == 2 {
            // B2: long root first, short (row with −2) last
            if a[p2[1]][p2[0]] != -2 {
                p2.reverse();
            }
        } else if lo == 0 {
            p2.reverse();
        }
        // double bond now between positions n−2 and n−1
        let (x, y) = (p2[n - 2], p2[n - 1]);
        let fam = if a[y][x] == -2 { 'B' } else { 'C' };
        return Ok(Component { family: fam, rank: n, nodes: p2 });
    }
    if !multi.is_empty() || branch.len() != 1 {
        return Err(fail());
    }
    let b = branch[0];
    let mut arms: Vec<Vec<usize>> = nb(b)
        .into_iter()
        .map(|first| {
            let mut arm = vec![first];
            let mut prev = b;
            let mut cur = first;
            loop {
                let next: Vec<usize> = nb(cur).into_iter().filter(|&w| w != prev).collect();
                if next.is_empty() {
                    break;
                }
                prev = cur;
                cur = next[0];
                arm.push(cur);
            }
            arm
        })
        .collect();
    arms.sort_by_key(|arm| (arm.len(), arm[0]));
    let lens: Vec<usize> = arms.iter().map(|x| x.len()).collect();
    match (lens[0], lens[1], lens[2]) {
        (1, 1, _) => {
            // long arm: the longest, ties broken by smallest first node
            let li = if lens[2] > 1 { 2 } else { 0 };
            let mut order: Vec<usize> = arms[li].iter().rev().copied().collect();
            order.push(b);
            let mut short: Vec<usize> = (0..3).filter(|&k| k != li).map(|k| arms[k][0]).collect();
            short.sort();
            order.extend(short);
            Ok(Component { family: 'D', rank: n, nodes: order })
        }
        (1, 2, k) if (2..=4).contains(&k) => {
            let mut order = vec![arms[1][1], arms[0][0], arms[1][0], b];
            order.extend(arms[2].iter().copied());
            Ok(Component { family: 'E', rank: n, nodes: order })
        }
        _ => Err(fail()),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_orders() {
        for (code, order) in [("A1", 2), ("A2", 6), ("B3", 48), ("G2", 12), ("F4", 1152), ("D4", 192)] {
            let d = CartanDatum::from_code(code).unwrap();
            let w = d.generate_weyl(WEYL_BOUND).unwrap();
            assert_eq!(w.len(), order, "{code}");
            for e in w.iter().take(50) {
                assert_eq!(e.inversions(&d), e.length());
            }
        }
    }

    #[test]
    fn root_counts() {
        for (code, n) in [("A5", 15), ("D4", 12), ("E6", 36), ("E8", 120), ("C3", 9), ("B3", 9), ("G2", 6)] {
            assert_eq!(CartanDatum::from_code(code).unwrap().num_positive(), n, "{code}");
        }
    }

    #[test]
    fn reflect_example() {
        let d = CartanDatum::from_code("A2").unwrap();
        // x = α1, reflect in α2 (positive root index 1)
        let a2 = d.root_index(&[0, 1]).unwrap();
        assert_eq!(d.reflect(&[1, 0], a2).unwrap(), vec![1, 1]);
        assert_eq!(d.reflect(&[0, 1], a2).unwrap(), vec![0, -1]);
        assert!(d.reflect(&[1, 0], 99).is_err());
    }

    #[test]
    fn longest() {
        let d = CartanDatum::from_code("A2").unwrap();
        assert_eq!(d.longest_element(&[]).length(), 0);
        assert_eq!(d.longest_element(&[1]).word, vec![1]);
        let w0 = d.longest_element(&[0, 1]);
        assert_eq!(w0.length(), 3);
        assert!(w0.is_involution());
        let e6 = CartanDatum::from_code("E6").unwrap();
        assert_eq!(e6.longest_element(&[0, 1, 2, 3, 4, 5]).length(), 36);
    }

    #[test]
    fn classifier_roundtrip() {
        for code in ["A4", "B3", "C4", "D4", "D5", "E6", "E7", "F4", "G2", "B2"] {
            let (f, n) = parse_type_code(code).unwrap();
            let a = cartan_matrix(f, n).unwrap();
            let c = classify(&a).unwrap();
            assert_eq!(c.len(), 1);
            assert_eq!(c[0].code(), code);
            assert_eq!(c[0].nodes, (0..n).collect::<Vec<_>>(), "{code}");
        }
    }
}

//! H̄^μ_{R,E} in the normal form Σ t_w (f), f a polynomial on E'_C ⊕ C.

use num::{One, Zero};
use std::collections::BTreeMap;

use super::datum::{HeckeDatum, WeylGroup};
use crate::error::{Error, Result};
use crate::scalar::{fmt_rat, int, Rat};

/// Polynomial in the coordinates e_1, …, e_n of E (linear forms on E') and r.
/// Exponent vectors have length n + 1, the last entry being the power of r.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Poly {
    pub terms: BTreeMap<Vec<u32>, Rat>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn constant(n: usize, c: Rat) -> Self {
        let mut p = Self::zero();
        p.add_term(vec![0; n + 1], c);
        p
    }

    /// the coordinate e_i
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n + 1];
        e[i] = 1;
        let mut p = Self::zero();
        p.add_term(e, Rat::one());
        p
    }

    pub fn r(n: usize) -> Self {
        Self::var(n, n)
    }

    /// The linear form x ∈ E.
    pub fn linear(x: &[i64]) -> Self {
        let n = x.len();
        let mut p = Self::zero();
        for (i, &c) in x.iter().enumerate() {
            let mut e = vec![0; n + 1];
            e[i] = 1;
            p.add_term(e, int(c));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }

    pub fn add_assign(&mut self, o: &Poly) {
        for (e, c) in &o.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        let mut r = self.clone();
        for (e, c) in &o.terms {
            r.add_term(e.clone(), -c.clone());
        }
        r
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        let mut r = Poly::zero();
        for (e, d) in &self.terms {
            r.add_term(e.clone(), d * c);
        }
        r
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        let mut r = Poly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                r.add_term(e, c1 * c2);
            }
        }
        r
    }

    fn pow(&self, k: u32, n: usize) -> Poly {
        let mut r = Poly::constant(n, Rat::one());
        for _ in 0..k {
            r = r.mul(self);
        }
        r
    }

    /// Substitutes e_i ↦ images[i] (r is kept).
    pub fn substitute(&self, images: &[Poly]) -> Poly {
        let n = images.len();
        let mut out = Poly::zero();
        for (e, c) in &self.terms {
            let mut m = Poly::constant(n, c.clone());
            for (i, &k) in e.iter().take(n).enumerate() {
                if k > 0 {
                    m = m.mul(&images[i].pow(k, n));
                }
            }
            let mut re = vec![0; n + 1];
            re[n] = e[n];
            let mut rm = Poly::zero();
            rm.add_term(re, Rat::one());
            out.add_assign(&m.mul(&rm));
        }
        out
    }

    /// Exact quotient by a nonzero linear form ℓ = Σ a_i e_i.
    pub fn div_linear(&self, l: &[i64]) -> Option<Poly> {
        let j = (0..l.len()).rev().find(|&i| l[i] != 0)?;
        let lp = Poly::linear(l);
        let aj = int(l[j]);
        let mut rem = self.clone();
        let mut q = Poly::zero();
        loop {
            let top = rem.terms.iter().filter(|(e, _)| e[j] > 0).max_by_key(|(e, _)| (e[j], (*e).clone()));
            let Some((e, c)) = top else { break };
            let mut m = e.clone();
            m[j] -= 1;
            let coef = c / &aj;
            let mut mono = Poly::zero();
            mono.add_term(m, coef);
            q = q.add(&mono);
            rem = rem.sub(&mono.mul(&lp));
        }
        rem.is_zero().then_some(q)
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(e, c)| {
                let n = e.len() - 1;
                let mut vars: Vec<String> = vec![];
                for (i, &k) in e.iter().enumerate() {
                    let name = if i == n { "r".to_string() } else { format!("e{}", i + 1) };
                    match k {
                        0 => {}
                        1 => vars.push(name),
                        k => vars.push(format!("{name}^{k}")),
                    }
                }
                if vars.is_empty() {
                    fmt_rat(c)
                } else if c.is_one() {
                    vars.join("·")
                } else {
                    format!("{}·{}", fmt_rat(c), vars.join("·"))
                }
            })
            .collect();
        parts.join(" + ")
    }
}

/// Σ c t_w (monomial).
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GradedElement {
    pub terms: BTreeMap<(usize, Vec<u32>), Rat>,
}

impl GradedElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: usize, e: Vec<u32>, c: Rat) {
        if c.is_zero() {
            return;
        }
        let key = (w, e);
        let slot = self.terms.entry(key.clone()).or_insert_with(Rat::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, o: &GradedElement) -> GradedElement {
        let mut r = self.clone();
        for ((w, e), c) in &o.terms {
            r.add_term(*w, e.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, o: &GradedElement) -> GradedElement {
        let mut r = self.clone();
        for ((w, e), c) in &o.terms {
            r.add_term(*w, e.clone(), -c.clone());
        }
        r
    }

    pub fn from_poly(w: usize, p: &Poly) -> GradedElement {
        let mut r = GradedElement::zero();
        for (e, c) in &p.terms {
            r.add_term(w, e.clone(), c.clone());
        }
        r
    }

    fn by_w(&self) -> BTreeMap<usize, Poly> {
        let mut m: BTreeMap<usize, Poly> = BTreeMap::new();
        for ((w, e), c) in &self.terms {
            m.entry(*w).or_default().add_term(e.clone(), c.clone());
        }
        m
    }
}

#[derive(Clone, Debug)]
pub struct GradedAlgebra {
    pub datum: HeckeDatum,
    pub mu: Vec<i64>,
    pub w0: WeylGroup,
    /// s_α(e_i) as linear forms, per simple root
    images: Vec<Vec<Poly>>,
}

impl GradedAlgebra {
    pub fn new(datum: HeckeDatum, mu: Vec<i64>) -> Result<Self> {
        let n = datum.rank();
        if mu.len() != n {
            return Err(Error::Validation(format!("μ must have {n} entries")));
        }
        for i in 0..n {
            for j in 0..n {
                if datum.simply_joined(i, j) && mu[i] != mu[j] {
                    return Err(Error::Validation(format!("μ(α_{i}) ≠ μ(α_{j}) on a simple bond")));
                }
            }
        }
        let w0 = WeylGroup::new(&datum)?;
        let dim = datum.dim_x();
        let images = (0..n)
            .map(|s| {
                (0..dim)
                    .map(|i| {
                        let e: Vec<i64> = (0..dim).map(|k| i64::from(k == i)).collect();
                        Poly::linear(&datum.reflect(s, &e))
                    })
                    .collect()
            })
            .collect();
        Ok(GradedAlgebra { datum, mu, w0, images })
    }

    pub fn dim(&self) -> usize {
        self.datum.dim_x()
    }

    /// s_α acting on polynomials through its action on E.
    pub fn act(&self, s: usize, f: &Poly) -> Poly {
        f.substitute(&self.images[s])
    }

    /// μ(α) r (f − s_α f)/α
    pub fn graded_cross(&self, f: &Poly, s: usize) -> Result<Poly> {
        let diff = f.sub(&self.act(s, f));
        let q = diff
            .div_linear(&self.datum.roots[s])
            .ok_or_else(|| Error::Invariant(format!("f − s_{s}(f) is not divisible by α_{s}")))?;
        Ok(q.mul(&Poly::r(self.dim())).scale(&int(self.mu[s])))
    }

    /// (f − s_α f)/α by the twisted Leibniz rule Δ(fg) = Δ(f)g + s(f)Δ(g),
    /// Δ(e_i) = ⟨e_i, α̌⟩, Δ(r) = 0. Independent of the division above.
    pub fn divided_difference_leibniz(&self, f: &Poly, s: usize) -> Poly {
        let n = self.dim();
        let mut out = Poly::zero();
        for (e, c) in &f.terms {
            // monomial as an ordered product of variables
            let mut factors: Vec<usize> = vec![];
            for (i, &k) in e.iter().enumerate().take(n) {
                factors.extend(std::iter::repeat(i).take(k as usize));
            }
            let mut rpart = vec![0; n + 1];
            rpart[n] = e[n];
            let mut rmono = Poly::zero();
            rmono.add_term(rpart, c.clone());
            // Δ(x₁⋯x_m) = Σ_k s(x₁⋯x_{k−1}) Δ(x_k) x_{k+1}⋯x_m
            let mut acc = Poly::zero();
            for k in 0..factors.len() {
                let mut term = Poly::constant(n, int(self.datum.coroots[s][factors[k]]));
                for &i in &factors[..k] {
                    term = term.mul(&self.act(s, &Poly::var(n, i)));
                }
                for &i in &factors[k + 1..] {
                    term = term.mul(&Poly::var(n, i));
                }
                acc.add_assign(&term);
            }
            out.add_assign(&acc.mul(&rmono));
        }
        out
    }

    pub fn t(&self, w: usize) -> GradedElement {
        GradedElement::from_poly(w, &Poly::constant(self.dim(), Rat::one()))
    }

    pub fn f(&self, p: &Poly) -> GradedElement {
        GradedElement::from_poly(0, p)
    }

    fn right_mul_s(&self, m: &BTreeMap<usize, Poly>, s: usize) -> Result<BTreeMap<usize, Poly>> {
        let mut out: BTreeMap<usize, Poly> = BTreeMap::new();
        for (&u, p) in m {
            // (f) t_s = t_s (s f) + μ r (f − s f)/α
            let us = self.w0.right[s][u];
            out.entry(us).or_default().add_assign(&self.act(s, p));
            let c = self.graded_cross(p, s)?;
            out.entry(u).or_default().add_assign(&c);
        }
        out.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    pub fn multiply(&self, a: &GradedElement, b: &GradedElement) -> Result<GradedElement> {
        let mut total = GradedElement::zero();
        for (w, p) in a.by_w() {
            for (w2, p2) in b.by_w() {
                let mut cur = BTreeMap::from([(0usize, p.clone())]);
                for &s in &self.w0.words[w2] {
                    cur = self.right_mul_s(&cur, s)?;
                }
                for (u, pu) in cur {
                    let wu = self.w0.mul(w, u);
                    for (e, c) in pu.mul(&p2).terms {
                        total.add_term(wu, e, c);
                    }
                }
            }
        }
        Ok(total)
    }

    /// Σ_{w ∈ W₀} w(f)
    pub fn symmetrize(&self, f: &Poly) -> Poly {
        let mut out = Poly::zero();
        for w in 0..self.w0.order() {
            let mut g = f.clone();
            for &s in self.w0.words[w].iter().rev() {
                g = self.act(s, &g);
            }
            out = out.add(&g);
        }
        out
    }

    pub fn center_check(&self, elements: &[Poly]) -> Result<bool> {
        for p in elements {
            let z = self.f(p);
            for s in 0..self.datum.rank() {
                let ts = self.t(self.w0.right[s][0]);
                if self.multiply(&z, &ts)? != self.multiply(&ts, &z)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a1() -> GradedAlgebra {
        GradedAlgebra::new(HeckeDatum::new(vec![vec![2]], vec![vec![1]]).unwrap(), vec![3]).unwrap()
    }

    #[test]
    fn cross_on_alpha_is_two_mu_r() {
        let g = a1();
        let alpha = Poly::linear(&[2]);
        let expect = Poly::r(1).scale(&int(6));
        assert_eq!(g.graded_cross(&alpha, 0).unwrap(), expect);
        assert!(g.graded_cross(&Poly::constant(1, int(5)), 0).unwrap().is_zero());
    }

    #[test]
    fn leibniz_agrees_with_division() {
        let g = a1();
        let e = Poly::var(1, 0);
        let f = e.mul(&e).mul(&e).add(&e.mul(&Poly::r(1)));
        let div = f.sub(&g.act(0, &f)).div_linear(&[2]).unwrap();
        assert_eq!(div, g.divided_difference_leibniz(&f, 0));
    }
}

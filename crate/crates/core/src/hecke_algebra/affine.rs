//! H^{λ,λ*}_{R,X} in the normal form Σ c_{w,x} T_w θ_x.

use serde::{Deserialize, Serialize};
use std::collections::btree_map::Entry;
use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;
use std::fmt;

use super::datum::{HeckeDatum, WeylGroup};
use super::laurent::{pow, LaurentPoly, TPoly};
use crate::error::{Error, Result};
use crate::scalar::Rat;

/// θ-only elements Σ c_x θ_x.
pub type ThetaPoly = BTreeMap<Vec<i64>, LaurentPoly>;

pub fn theta(x: &[i64]) -> ThetaPoly {
    ThetaPoly::from([(x.to_vec(), LaurentPoly::one())])
}

pub(crate) fn tp_add_term(p: &mut ThetaPoly, x: Vec<i64>, c: &LaurentPoly) {
    if c.is_zero() {
        return;
    }
    match p.entry(x) {
        Entry::Occupied(mut o) => {
            o.get_mut().add_assign(c);
            if o.get().is_zero() {
                o.remove();
            }
        }
        Entry::Vacant(v) => {
            v.insert(c.clone());
        }
    }
}

pub(crate) fn tp_add_into(a: &mut ThetaPoly, b: &ThetaPoly) {
    for (x, c) in b {
        tp_add_term(a, x.clone(), c);
    }
}

fn tp_add_scaled_into(a: &mut ThetaPoly, b: &ThetaPoly, c: &LaurentPoly) {
    for (x, d) in b {
        tp_add_term(a, x.clone(), &(d * c));
    }
}

fn tp_mul_into(r: &mut ThetaPoly, a: &ThetaPoly, b: &ThetaPoly) {
    for (x, c) in a {
        for (y, d) in b {
            let s: Vec<i64> = x.iter().zip(y).map(|(p, q)| p + q).collect();
            tp_add_term(r, s, &(c * d));
        }
    }
}

/// Parameter set (λ, λ*) on Π.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParamSet {
    pub lambda: Vec<u64>,
    /// defined exactly on the α with α̌ ∈ 2Y
    pub lambda_star: Vec<Option<u64>>,
}

impl ParamSet {
    pub fn validate(&self, d: &HeckeDatum) -> Result<()> {
        let n = d.rank();
        if self.lambda.len() != n || self.lambda_star.len() != n {
            return Err(Error::Validation(format!("parameter set must have {n} entries")));
        }
        for i in 0..n {
            for j in 0..n {
                if d.simply_joined(i, j) && self.lambda[i] != self.lambda[j] {
                    return Err(Error::Validation(format!(
                        "λ(α_{i}) = {} ≠ λ(α_{j}) = {} although ⟨α_{i}, α̌_{j}⟩ = ⟨α_{j}, α̌_{i}⟩ = −1",
                        self.lambda[i], self.lambda[j]
                    )));
                }
            }
            match (d.coroot_in_2y(i), self.lambda_star[i]) {
                (true, None) => return Err(Error::Validation(format!("α̌_{i} ∈ 2Y needs a value λ*(α_{i})"))),
                (false, Some(_)) => return Err(Error::Validation(format!("λ*(α_{i}) given but α̌_{i} ∉ 2Y"))),
                _ => {}
            }
        }
        Ok(())
    }
}

/// 𝒢(α) = num/den as functions of t = θ_α.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GammaFactor {
    pub num: TPoly,
    pub den: TPoly,
}

fn t_pow(c: LaurentPoly, j: i64) -> TPoly {
    TPoly::monomial(c, j)
}

fn one_t() -> TPoly {
    t_pow(LaurentPoly::one(), 0)
}

impl GammaFactor {
    /// α̌ ∉ 2Y: (θ_α v^{2λ} − 1)/(θ_α − 1)
    pub fn simple(lambda: u64) -> Self {
        let l = lambda as i64;
        GammaFactor {
            num: t_pow(LaurentPoly::v_pow(2 * l), 1).sub(&one_t()),
            den: t_pow(LaurentPoly::one(), 1).sub(&one_t()),
        }
    }

    /// α̌ ∈ 2Y: (θ_α v^{λ+λ*} − 1)(θ_α v^{λ−λ*} + 1)/(θ_{2α} − 1)
    pub fn doubled(lambda: u64, lambda_star: u64) -> Self {
        let (l, ls) = (lambda as i64, lambda_star as i64);
        let a = t_pow(LaurentPoly::v_pow(l + ls), 1).sub(&one_t());
        let b = t_pow(LaurentPoly::v_pow(l - ls), 1).add(&one_t());
        GammaFactor { num: a.mul(&b), den: t_pow(LaurentPoly::one(), 2).sub(&one_t()) }
    }

    /// The formulas exactly as typeset: θ_α v^{2λ−1}/(θ_α − 1), and
    /// (θ_α v^{2λ+λ*} − 1)(θ_α v^{2λ−λ*} + 1)/(θ_{2α} − 1).
    pub fn printed(lambda: u64, lambda_star: Option<u64>) -> Self {
        let l = lambda as i64;
        match lambda_star {
            None => GammaFactor {
                num: t_pow(LaurentPoly::v_pow(2 * l - 1), 1),
                den: t_pow(LaurentPoly::one(), 1).sub(&one_t()),
            },
            Some(ls) => {
                let ls = ls as i64;
                let a = t_pow(LaurentPoly::v_pow(2 * l + ls), 1).sub(&one_t());
                let b = t_pow(LaurentPoly::v_pow(2 * l - ls), 1).add(&one_t());
                GammaFactor { num: a.mul(&b), den: t_pow(LaurentPoly::one(), 2).sub(&one_t()) }
            }
        }
    }

    /// 𝒢 + s_α(𝒢) = v^{2λ} + 1, the identity forced by the quadratic relation.
    pub fn reflection_sum_holds(&self, lambda: u64) -> bool {
        let (n, d) = (&self.num, &self.den);
        let (ns, ds) = (n.substitute_power(-1), d.substitute_power(-1));
        let lhs = n.mul(&ds).add(&ns.mul(d));
        let q1 = &LaurentPoly::v_pow(2 * lambda as i64) + &LaurentPoly::one();
        lhs == d.mul(&ds).scale(&q1)
    }

    /// (θ_x − θ_{x−kα})·𝒢 as a polynomial in t, the exponent relative to θ_x.
    pub fn cross_series(&self, k: i64) -> Option<TPoly> {
        if k == 0 {
            return Some(TPoly::zero());
        }
        let diff = one_t().sub(&t_pow(LaurentPoly::one(), -k));
        diff.mul(&self.num).div_exact(&self.den)
    }

    pub fn eval(&self, t: &Rat, v: &Rat) -> Option<Rat> {
        let d = self.den.eval(t, v);
        if num::Zero::is_zero(&d) {
            return None;
        }
        Some(self.num.eval(t, v) / d)
    }
}

/// Σ c_{w,x} T_w θ_x with w an index into the algebra's W₀.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeckeElement {
    pub terms: BTreeMap<(usize, Vec<i64>), LaurentPoly>,
}

impl HeckeElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, w: usize, x: Vec<i64>, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let key = (w, x);
        let slot = self.terms.entry(key.clone()).or_default();
        *slot = &*slot + c;
        if slot.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, o: &HeckeElement) -> HeckeElement {
        let mut r = self.clone();
        for ((w, x), c) in &o.terms {
            r.add_term(*w, x.clone(), c);
        }
        r
    }

    pub fn sub(&self, o: &HeckeElement) -> HeckeElement {
        let mut r = self.clone();
        for ((w, x), c) in &o.terms {
            r.add_term(*w, x.clone(), &-c);
        }
        r
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElement {
        let mut r = HeckeElement::zero();
        for ((w, x), d) in &self.terms {
            r.add_term(*w, x.clone(), &(d * c));
        }
        r
    }

    pub fn from_theta(p: &ThetaPoly) -> HeckeElement {
        let mut r = HeckeElement::zero();
        for (x, c) in p {
            r.add_term(0, x.clone(), c);
        }
        r
    }

    /// The part with w = 1, if nothing else is present.
    pub fn as_theta(&self) -> Option<ThetaPoly> {
        if self.terms.keys().any(|(w, _)| *w != 0) {
            return None;
        }
        Some(self.terms.iter().map(|((_, x), c)| (x.clone(), c.clone())).collect())
    }

    fn by_w(&self) -> BTreeMap<usize, ThetaPoly> {
        let mut m: BTreeMap<usize, ThetaPoly> = BTreeMap::new();
        for ((w, x), c) in &self.terms {
            tp_add_term(m.entry(*w).or_default(), x.clone(), c);
        }
        m
    }

    fn from_by_w(m: &BTreeMap<usize, ThetaPoly>) -> HeckeElement {
        let mut r = HeckeElement::zero();
        for (w, p) in m {
            for (x, c) in p {
                r.add_term(*w, x.clone(), c);
            }
        }
        r
    }
}

/// JSON form of one term; w travels as its reduced word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub w: Vec<usize>,
    pub x: Vec<i64>,
    pub c: LaurentPoly,
}

#[derive(Debug)]
pub struct HeckeAlgebra {
    pub datum: HeckeDatum,
    pub params: ParamSet,
    pub w0: WeylGroup,
    gammas: Vec<GammaFactor>,
    /// (θ_x − θ_{x−kα})𝒢(α)/θ_x keyed by (s, k)
    series: Mutex<HashMap<(usize, i64), Option<TPoly>>>,
}

impl HeckeAlgebra {
    pub fn new(datum: HeckeDatum, params: ParamSet) -> Result<Self> {
        params.validate(&datum)?;
        let w0 = WeylGroup::new(&datum)?;
        let gammas = (0..datum.rank())
            .map(|i| match params.lambda_star[i] {
                None => GammaFactor::simple(params.lambda[i]),
                Some(ls) => GammaFactor::doubled(params.lambda[i], ls),
            })
            .collect();
        Ok(HeckeAlgebra { datum, params, w0, gammas, series: Mutex::new(HashMap::new()) })
    }

    pub fn q(&self, s: usize) -> LaurentPoly {
        LaurentPoly::v_pow(2 * self.params.lambda[s] as i64)
    }

    pub fn gamma_factor(&self, s: usize) -> Result<&GammaFactor> {
        self.gammas.get(s).ok_or_else(|| Error::Validation(format!("no simple root α_{s}")))
    }

    pub fn lambda_star(&self, s: usize) -> Result<u64> {
        self.params.lambda_star.get(s).copied().flatten().ok_or_else(|| {
            Error::Validation(format!("λ*(α_{s}) is only defined when α̌_{s} ∈ 2Y"))
        })
    }

    pub fn t(&self, w: usize) -> HeckeElement {
        let mut r = HeckeElement::zero();
        r.add_term(w, vec![0; self.datum.dim_x()], &LaurentPoly::one());
        r
    }

    pub fn t_word(&self, word: &[usize]) -> Result<HeckeElement> {
        Ok(self.t(self.w0.from_word(word)?))
    }

    pub fn theta(&self, x: &[i64]) -> HeckeElement {
        HeckeElement::from_theta(&theta(x))
    }

    pub fn one(&self) -> HeckeElement {
        self.t(0)
    }

    /// (θ_x − θ_{s_α(x)})·𝒢(α), exactly divided out.
    pub fn bernstein_cross(&self, x: &[i64], s: usize) -> Result<ThetaPoly> {
        let k = self.datum.eval_coroot(x, s);
        let g = self.gamma_factor(s)?;
        let cached = self.series.lock().unwrap().get(&(s, k)).cloned();
        let series = match cached {
            Some(x) => x,
            None => {
                let x = g.cross_series(k);
                self.series.lock().unwrap().insert((s, k), x.clone());
                x
            }
        };
        let series = series.ok_or_else(|| {
            Error::Invariant(format!("(θ_x − θ_sx)𝒢(α_{s}) is not a θ-polynomial for x = {x:?}"))
        })?;
        let alpha = &self.datum.roots[s];
        let mut r = ThetaPoly::new();
        for (j, c) in &series.terms {
            let y: Vec<i64> = x.iter().zip(alpha).map(|(a, b)| a + j * b).collect();
            tp_add_term(&mut r, y, c);
        }
        Ok(r)
    }

    /// θ_x T_s − T_s θ_{s(x)} = (θ_x − θ_{s(x)})(𝒢(α) − 1)
    pub fn cross_commutator(&self, x: &[i64], s: usize) -> Result<ThetaPoly> {
        let mut r = self.bernstein_cross(x, s)?;
        tp_add_term(&mut r, x.to_vec(), &-&LaurentPoly::one());
        tp_add_term(&mut r, self.datum.reflect(s, x), &LaurentPoly::one());
        Ok(r)
    }

    fn act_theta(&self, s: usize, p: &ThetaPoly) -> ThetaPoly {
        p.iter().map(|(x, c)| (self.datum.reflect(s, x), c.clone())).collect()
    }

    /// (Σ_u T_u P_u)·T_s
    fn right_mul_s(&self, m: &BTreeMap<usize, ThetaPoly>, s: usize) -> Result<BTreeMap<usize, ThetaPoly>> {
        let q = self.q(s);
        let qm1 = &q - &LaurentPoly::one();
        let mut out: BTreeMap<usize, ThetaPoly> = BTreeMap::new();
        for (&u, p) in m {
            // P T_s = T_s s(P) + D(P)
            let sp = self.act_theta(s, p);
            let us = self.w0.right[s][u];
            if self.w0.len(us) > self.w0.len(u) {
                tp_add_into(out.entry(us).or_default(), &sp);
            } else {
                // T_u T_s = (q − 1) T_u + q T_{us}
                tp_add_scaled_into(out.entry(u).or_default(), &sp, &qm1);
                tp_add_scaled_into(out.entry(us).or_default(), &sp, &q);
            }
            let e = out.entry(u).or_default();
            for (x, c) in p {
                tp_add_scaled_into(e, &self.cross_commutator(x, s)?, c);
            }
        }
        out.retain(|_, p| !p.is_empty());
        Ok(out)
    }

    /// T_s·(Σ_u T_u P_u)
    fn left_mul_s(&self, m: &BTreeMap<usize, ThetaPoly>, s: usize) -> BTreeMap<usize, ThetaPoly> {
        let q = self.q(s);
        let qm1 = &q - &LaurentPoly::one();
        let mut out: BTreeMap<usize, ThetaPoly> = BTreeMap::new();
        for (&u, p) in m {
            let su = self.w0.left[s][u];
            if self.w0.len(su) > self.w0.len(u) {
                tp_add_into(out.entry(su).or_default(), p);
            } else {
                tp_add_scaled_into(out.entry(u).or_default(), p, &qm1);
                tp_add_scaled_into(out.entry(su).or_default(), p, &q);
            }
        }
        out.retain(|_, p| !p.is_empty());
        out
    }

    pub fn multiply(&self, a: &HeckeElement, b: &HeckeElement) -> Result<HeckeElement> {
        let (am, bm) = (a.by_w(), b.by_w());
        let mut total = BTreeMap::<usize, ThetaPoly>::new();
        for (&w, p) in &am {
            for (&w2, p2) in &bm {
                // T_w P T_{w'} P'
                let mut cur = BTreeMap::from([(0usize, p.clone())]);
                for &s in &self.w0.words[w2] {
                    cur = self.right_mul_s(&cur, s)?;
                }
                for &s in self.w0.words[w].iter().rev() {
                    cur = self.left_mul_s(&cur, s);
                }
                for (u, pu) in cur {
                    tp_mul_into(total.entry(u).or_default(), &pu, p2);
                }
            }
        }
        Ok(HeckeElement::from_by_w(&total))
    }

    /// Σ over the W₀-orbit of x of θ_y.
    pub fn orbit_sum(&self, x: &[i64]) -> ThetaPoly {
        let mut seen = std::collections::BTreeSet::new();
        for w in 0..self.w0.order() {
            seen.insert(self.w0.act(w, x));
        }
        seen.into_iter().map(|y| (y, LaurentPoly::one())).collect()
    }

    /// Every element commutes with every T_{s_α}.
    pub fn center_check(&self, elements: &[ThetaPoly]) -> Result<bool> {
        for p in elements {
            let z = HeckeElement::from_theta(p);
            for s in 0..self.datum.rank() {
                let ts = self.t(self.w0.right[s][0]);
                if self.multiply(&z, &ts)? != self.multiply(&ts, &z)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn to_json(&self, e: &HeckeElement) -> Vec<TermJson> {
        e.terms.iter().map(|((w, x), c)| TermJson { w: self.w0.words[*w].clone(), x: x.clone(), c: c.clone() }).collect()
    }

    pub fn from_json(&self, terms: &[TermJson]) -> Result<HeckeElement> {
        let mut r = HeckeElement::zero();
        for t in terms {
            if t.x.len() != self.datum.dim_x() {
                return Err(Error::Validation(format!("θ-exponent {:?} has the wrong length", t.x)));
            }
            r.add_term(self.w0.from_word(&t.w)?, t.x.clone(), &t.c);
        }
        Ok(r)
    }

    /// "Σ c·T_w·θ_x" with w as a word in s_1, s_2, …
    pub fn render(&self, e: &HeckeElement) -> String {
        if e.is_zero() {
            return "0".into();
        }
        let parts: Vec<String> = e
            .terms
            .iter()
            .map(|((w, x), c)| {
                let word: String = self.w0.words[*w].iter().map(|s| (s + 1).to_string()).collect();
                let tw = if word.is_empty() { "T_e".to_string() } else { format!("T_{word}") };
                format!("({c})·{tw}·θ{x:?}")
            })
            .collect();
        parts.join(" + ")
    }

    /// Evaluates a θ-polynomial at the character θ_x ↦ Π_i chi_i^{x_i}, v ↦ v.
    pub fn eval_theta(p: &ThetaPoly, chi: &[Rat], v: &Rat) -> Rat {
        let mut acc = Rat::from_integer(0.into());
        for (x, c) in p {
            let mut m = c.eval(v);
            for (xi, ci) in x.iter().zip(chi) {
                m *= pow(ci, *xi);
            }
            acc += m;
        }
        acc
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .lambda
            .iter()
            .zip(&self.lambda_star)
            .map(|(l, ls)| match ls {
                Some(ls) => format!("({l},{ls})"),
                None => l.to_string(),
            })
            .collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

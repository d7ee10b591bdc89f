//! Symbolic affine Hecke algebras H^{λ,λ*}_{R,X} (Bernstein presentation) and
//! graded Hecke algebras H̄^μ_{R,E} at rank ≤ 2, with relation suites and
//! the tempered / square-integrable weight predicates.

pub mod affine;
pub mod datum;
pub mod graded;
pub mod laurent;
pub mod weights;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

pub use affine::{theta, GammaFactor, HeckeAlgebra, HeckeElement, ParamSet, TermJson, ThetaPoly};
pub use datum::{HeckeDatum, WeylGroup};
pub use graded::{GradedAlgebra, GradedElement, Poly};
pub use laurent::{LaurentPoly, TPoly};
pub use weights::{square_integrable_predicate, tempered_predicate, BasisValue, WeightDatum};

use crate::error::Result;
use crate::exec;
use crate::scalar::{int, rat, Rat};

#[derive(Clone, Debug, Serialize)]
pub struct SuiteCheck {
    pub instance: String,
    pub name: String,
    pub ok: bool,
    pub detail: String,
}

fn check(instance: &str, name: &str, ok: bool, detail: String) -> SuiteCheck {
    SuiteCheck { instance: instance.into(), name: name.into(), ok, detail }
}

/// Rank-1 and rank-2 affine instances; "pgl2" and "so5" carry α̌ ∈ 2Y with λ ≠ λ*.
pub fn standard_affine_instances() -> Result<Vec<(String, HeckeAlgebra)>> {
    let p = |l: &[u64], ls: &[Option<u64>]| ParamSet { lambda: l.to_vec(), lambda_star: ls.to_vec() };
    let a2 = [vec![2, -1], vec![-1, 2]];
    let g2 = [vec![2, -1], vec![-3, 2]];
    Ok(vec![
        ("sl2".into(), HeckeAlgebra::new(HeckeDatum::new(vec![vec![2]], vec![vec![1]])?, p(&[1], &[None]))?),
        ("pgl2".into(), HeckeAlgebra::new(HeckeDatum::new(vec![vec![1]], vec![vec![2]])?, p(&[2], &[Some(1)]))?),
        ("gl2".into(), HeckeAlgebra::new(HeckeDatum::new(vec![vec![1, -1]], vec![vec![1, -1]])?, p(&[1], &[None]))?),
        ("a2-adjoint".into(), HeckeAlgebra::new(HeckeDatum::adjoint(&a2)?, p(&[1, 1], &[None, None]))?),
        ("a2-sc".into(), HeckeAlgebra::new(HeckeDatum::simply_connected(&a2)?, p(&[2, 2], &[None, None]))?),
        (
            "so5".into(),
            HeckeAlgebra::new(
                HeckeDatum::new(vec![vec![1, -1], vec![0, 1]], vec![vec![1, -1], vec![0, 2]])?,
                p(&[1, 3], &[None, Some(1)]),
            )?,
        ),
        ("g2".into(), HeckeAlgebra::new(HeckeDatum::adjoint(&g2)?, p(&[1, 2], &[None, None]))?),
    ])
}

pub fn standard_graded_instances() -> Result<Vec<(String, GradedAlgebra)>> {
    let a2 = [vec![2, -1], vec![-1, 2]];
    let b2 = [vec![2, -2], vec![-1, 2]];
    let g2 = [vec![2, -1], vec![-3, 2]];
    Ok(vec![
        ("sl2".into(), GradedAlgebra::new(HeckeDatum::new(vec![vec![2]], vec![vec![1]])?, vec![2])?),
        ("a2".into(), GradedAlgebra::new(HeckeDatum::adjoint(&a2)?, vec![2, 2])?),
        ("b2".into(), GradedAlgebra::new(HeckeDatum::adjoint(&b2)?, vec![2, 3])?),
        ("g2".into(), GradedAlgebra::new(HeckeDatum::adjoint(&g2)?, vec![1, 4])?),
    ])
}

fn rand_vec(rng: &mut ChaCha8Rng, n: usize, b: i64) -> Vec<i64> {
    (0..n).map(|_| rng.gen_range(-b..=b)).collect()
}

/// A random nonzero rational away from ±1.
fn rand_unit(rng: &mut ChaCha8Rng) -> Rat {
    loop {
        let x = rat(rng.gen_range(-9..=9), rng.gen_range(1..=7));
        if x != int(0) && x != int(1) && x != int(-1) {
            return x;
        }
    }
}

/// All relations of the Bernstein presentation, checked on the constructed
/// multiplication; the cross relation additionally against direct
/// evaluation of 𝒢 at random characters.
pub fn affine_relation_suite(name: &str, alg: &HeckeAlgebra, seed: u64) -> Result<Vec<SuiteCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = alg.datum.dim_x();
    let w0 = &alg.w0;
    let mut out = vec![];

    let mut bad = 0;
    let mut tried = 0;
    for w in 0..w0.order() {
        for w2 in 0..w0.order() {
            let ww = w0.mul(w, w2);
            if w0.len(ww) == w0.len(w) + w0.len(w2) {
                tried += 1;
                if alg.multiply(&alg.t(w), &alg.t(w2))? != alg.t(ww) {
                    bad += 1;
                }
            }
        }
    }
    out.push(check(name, "T_w T_w' = T_ww' when lengths add", bad == 0, format!("{tried} pairs, {bad} failures")));

    let mut ok = true;
    for s in 0..alg.datum.rank() {
        let ts = alg.t(w0.right[s][0]);
        let a = ts.add(&alg.one());
        let b = ts.sub(&alg.one().scale(&alg.q(s)));
        ok &= alg.multiply(&a, &b)?.is_zero();
        // T_s² = (q − 1)T_s + q
        let sq = alg.multiply(&ts, &ts)?;
        let expect = ts.scale(&(&alg.q(s) - &LaurentPoly::one())).add(&alg.one().scale(&alg.q(s)));
        ok &= sq == expect;
    }
    out.push(check(name, "(T_s + 1)(T_s − v^{2λ}) = 0", ok, String::new()));

    let mut ok = true;
    for _ in 0..20 {
        let (x, y) = (rand_vec(&mut rng, n, 5), rand_vec(&mut rng, n, 5));
        let xy: Vec<i64> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        ok &= alg.multiply(&alg.theta(&x), &alg.theta(&y))? == alg.theta(&xy);
    }
    out.push(check(name, "θ_x θ_y = θ_{x+y}", ok, "20 random pairs in [−5,5]".into()));

    let (mut sym_bad, mut num_bad, mut cnt) = (0, 0, 0);
    for s in 0..alg.datum.rank() {
        let tp1 = alg.t(w0.right[s][0]).add(&alg.one());
        for _ in 0..20 {
            let x = rand_vec(&mut rng, n, 5);
            let sx = alg.datum.reflect(s, &x);
            let lhs = alg.multiply(&alg.theta(&x), &tp1)?.sub(&alg.multiply(&tp1, &alg.theta(&sx))?);
            let cross = alg.bernstein_cross(&x, s)?;
            cnt += 1;
            if lhs != HeckeElement::from_theta(&cross) {
                sym_bad += 1;
            }
            // evaluate at a random character with θ_α ≠ ±1
            let (chi, v, ta) = loop {
                let chi: Vec<Rat> = (0..n).map(|_| rand_unit(&mut rng)).collect();
                let ta = HeckeAlgebra::eval_theta(&theta(&alg.datum.roots[s]), &chi, &int(1));
                if ta != int(1) && ta != int(-1) {
                    break (chi, rand_unit(&mut rng), ta);
                }
            };
            let g = alg.gamma_factor(s)?.eval(&ta, &v).expect("θ_α ≠ ±1");
            let direct = (HeckeAlgebra::eval_theta(&theta(&x), &chi, &v) - HeckeAlgebra::eval_theta(&theta(&sx), &chi, &v)) * g;
            if HeckeAlgebra::eval_theta(&cross, &chi, &v) != direct {
                num_bad += 1;
            }
        }
    }
    out.push(check(
        name,
        "θ_x(T_s+1) − (T_s+1)θ_{s(x)} = (θ_x − θ_{s(x)})𝒢(α)",
        sym_bad == 0 && num_bad == 0,
        format!("{cnt} samples; {sym_bad} normal-form and {num_bad} evaluation mismatches"),
    ));

    let mut ok = (0..alg.datum.rank()).all(|s| alg.gamma_factor(s).unwrap().reflection_sum_holds(alg.params.lambda[s]));
    let basis = |rng: &mut ChaCha8Rng| {
        let w = rng.gen_range(0..w0.order());
        let x = rand_vec(rng, n, 2);
        let mut e = HeckeElement::zero();
        e.add_term(w, x, &LaurentPoly::one());
        e
    };
    for _ in 0..10 {
        let a = basis(&mut rng);
        let unit = alg.theta(&vec![0; n]);
        ok &= alg.multiply(&unit, &a)? == a && alg.multiply(&a, &unit)? == a;
    }
    out.push(check(name, "θ₀ is the unit; 𝒢 + s(𝒢) = v^{2λ} + 1", ok, String::new()));

    let mut bad = 0;
    for _ in 0..100 {
        let (a, b, c) = (basis(&mut rng), basis(&mut rng), basis(&mut rng));
        let l = alg.multiply(&alg.multiply(&a, &b)?, &c)?;
        let r = alg.multiply(&a, &alg.multiply(&b, &c)?)?;
        if l != r {
            bad += 1;
        }
    }
    out.push(check(name, "associativity", bad == 0, format!("100 random triples, {bad} failures")));

    let mut sums = vec![theta(&vec![0; n])];
    for _ in 0..5 {
        sums.push(alg.orbit_sum(&rand_vec(&mut rng, n, 4)));
    }
    let central = alg.center_check(&sums)?;
    // a θ_x moved by some s_α is not central
    let x = loop {
        let x = rand_vec(&mut rng, n, 4);
        if (0..alg.datum.rank()).any(|s| alg.datum.eval_coroot(&x, s) != 0) {
            break x;
        }
    };
    let noncentral = !alg.center_check(&[theta(&x)])?;
    out.push(check(
        name,
        "W₀-symmetric θ-sums are central",
        central && noncentral,
        format!("{} orbit sums; θ{x:?} correctly rejected: {noncentral}", sums.len()),
    ));
    Ok(out)
}

fn rand_poly(rng: &mut ChaCha8Rng, n: usize) -> Poly {
    let mut p = Poly::zero();
    for _ in 0..rng.gen_range(1..=4) {
        let e: Vec<u32> = (0..=n).map(|_| rng.gen_range(0..=2)).collect();
        p.add_term(e, int(rng.gen_range(-3..=3)));
    }
    p
}

pub fn graded_relation_suite(name: &str, alg: &GradedAlgebra, seed: u64) -> Result<Vec<SuiteCheck>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = alg.dim();
    let w0 = &alg.w0;
    let mut out = vec![];

    let mut ok = true;
    for w in 0..w0.order() {
        for w2 in 0..w0.order() {
            ok &= alg.multiply(&alg.t(w), &alg.t(w2))? == alg.t(w0.mul(w, w2));
        }
    }
    out.push(check(name, "t_w t_w' = t_ww'", ok, format!("{} pairs", w0.order() * w0.order())));

    let mut ok = true;
    for _ in 0..20 {
        let (f, g) = (rand_poly(&mut rng, n), rand_poly(&mut rng, n));
        ok &= alg.multiply(&alg.f(&f), &alg.f(&g))? == alg.f(&f.mul(&g));
    }
    out.push(check(name, "(f₁)(f₂) = (f₁f₂)", ok, "20 random pairs".into()));

    let mut bad = 0;
    for s in 0..alg.datum.rank() {
        let ts = alg.t(w0.right[s][0]);
        for _ in 0..20 {
            let f = rand_poly(&mut rng, n);
            let lhs = alg.multiply(&alg.f(&f), &ts)?.sub(&alg.multiply(&ts, &alg.f(&alg.act(s, &f)))?);
            let dd = alg.divided_difference_leibniz(&f, s);
            let rhs = dd.mul(&Poly::r(n)).scale(&int(alg.mu[s]));
            if lhs != alg.f(&rhs) {
                bad += 1;
            }
        }
    }
    out.push(check(name, "(f)t_s − t_s(s(f)) = μ(α) r (f − s(f))/α", bad == 0, format!("{bad} failures")));

    let one = alg.f(&Poly::constant(n, int(1)));
    let mut ok = true;
    let mut bad = 0;
    for _ in 0..100 {
        let mut triple = vec![];
        for _ in 0..3 {
            let w = rng.gen_range(0..w0.order());
            triple.push(GradedElement::from_poly(w, &rand_poly(&mut rng, n)));
        }
        ok &= alg.multiply(&one, &triple[0])? == triple[0] && alg.multiply(&triple[0], &one)? == triple[0];
        let l = alg.multiply(&alg.multiply(&triple[0], &triple[1])?, &triple[2])?;
        let r = alg.multiply(&triple[0], &alg.multiply(&triple[1], &triple[2])?)?;
        if l != r {
            bad += 1;
        }
    }
    out.push(check(name, "(1) is the unit; associativity", ok && bad == 0, format!("100 random triples, {bad} failures")));

    let sym: Vec<Poly> = (0..4).map(|_| alg.symmetrize(&rand_poly(&mut rng, n))).collect();
    let central = alg.center_check(&sym)?;
    let noncentral = !alg.center_check(&[Poly::linear(&alg.datum.roots[0])])?;
    out.push(check(name, "W₀-invariant polynomials are central", central && noncentral, String::new()));
    Ok(out)
}

/// Every affine and graded instance, in a fixed order.
pub fn hecke_suite(seed: u64) -> Result<Vec<SuiteCheck>> {
    let aff = standard_affine_instances()?;
    let gr = standard_graded_instances()?;
    let a: Vec<Result<Vec<SuiteCheck>>> = exec::map(&aff, |(n, alg)| affine_relation_suite(n, alg, seed));
    let g: Vec<Result<Vec<SuiteCheck>>> = exec::map(&gr, |(n, alg)| graded_relation_suite(n, alg, seed));
    let mut out = vec![];
    for r in a.into_iter().chain(g) {
        out.extend(r?);
    }
    Ok(out)
}

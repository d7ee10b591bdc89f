//! Rows of the classification tables for d ≥ 2: the four infinite families
//! on A_n and D_n, and the exceptional rows on E6 (d = 2) and D4 (d = 3).

use serde::Serialize;

use crate::alcove::gj_root_datum;
use crate::diagram::{render, render_plain};
use crate::error::{Error, Result};
use crate::folding::{canonical_type, fold, FoldedRootDatum};
use crate::hecke_params::{
    coroots_generate_lattice, descriptor, dim_g_minus, dim_g_minus_roots, dual_affine, k_order, FlatSharp, HeckeDescriptor,
    WStar,
};
use crate::lie::catalog::Catalog;
use crate::lie::Engine;
use crate::rootdata::parse_type_code;
use crate::scalar::{fmt_rat, int, Rat};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyParams {
    pub family: String,
    pub a: i64,
    pub b: i64,
    pub s: i64,
}

/// H.A. of a family row: C̃_{s−1} (or C̃^{sc}_{s−1}) with end subscripts and middle label.
#[derive(Clone, Debug, Serialize)]
pub struct HaTemplate {
    pub sc: bool,
    pub rank: i64,
    pub left: i64,
    pub mid: i64,
    pub right: i64,
}

impl HaTemplate {
    pub fn render(&self) -> String {
        let sc = if self.sc { "^{sc}" } else { "" };
        format!("C̃{sc}_{{{}}}[_{{{}}}{}_{{{}}}]", self.rank, self.left, self.mid, self.right)
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Printed {
    pub gamma_graph: Option<String>,
    pub beta_graph: Option<String>,
    /// (♭?, "a×b×c") per subscript 1..=|K|; empty when the diagram is ∅
    pub flat_sharp: Vec<(bool, String)>,
    /// printed H.A. string when it is not produced from a template
    pub ha: Option<String>,
    pub ha_template: Option<HaTemplate>,
    /// expected G_J component types
    pub boxes: Vec<String>,
    pub arithmetic: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CuspidalCase {
    pub id: String,
    pub ambient: String,
    pub d: u32,
    pub j: Vec<usize>,
    /// K in subscript order σ₁, σ₂, …
    pub k: Vec<usize>,
    pub family: Option<FamilyParams>,
    pub branch: Option<u8>,
    /// number of cuspidal local systems on the orbit
    pub systems: u32,
    pub printed: Printed,
}

fn verr(msg: String) -> Error {
    Error::Validation(msg)
}

fn tri(x: i64) -> i64 {
    x * (x + 1) / 2
}

fn exact_div(num: i64, den: i64, what: &str) -> Result<i64> {
    if num % den != 0 || num < 0 {
        return Err(Error::Invariant(format!("{what} = {num}/{den} is not a non-negative integer")));
    }
    Ok(num / den)
}

fn sharp_chain(s: i64, label: &str) -> Vec<(bool, String)> {
    (0..s).map(|_| (false, label.to_string())).collect()
}

fn a_types(ks: &[i64]) -> String {
    let parts: Vec<String> = ks.iter().filter(|&&k| k >= 1).map(|k| format!("A{k}")).collect();
    if parts.is_empty() {
        "∅".into()
    } else {
        parts.join("×")
    }
}

fn box_code(family: char, r: i64) -> Vec<String> {
    match (family, r) {
        (_, 0) => vec![],
        ('D', 2) => vec!["A1".into(), "A1".into()],
        ('D', 3) => vec!["A3".into()],
        (f, r) => vec![canonical_type(&format!("{f}{r}"))],
    }
}

/// Instantiates one of the families "11.2" … "11.5".
pub fn family_case(family: &str, a: i64, b: i64, s: i64) -> Result<CuspidalCase> {
    if s < 1 {
        return Err(verr(format!("{family} requires s ≥ 1 (got s={s})")));
    }
    let params = FamilyParams { family: family.into(), a, b, s };
    let (pp, qp) = (tri(a), tri(b));
    match family {
        "11.2" | "11.3" => {
            if family == "11.2" && !(a.rem_euclid(4) == 0 && b.rem_euclid(4) == 1) {
                return Err(verr(format!("11.2 requires a ∈ 4Z and b ∈ 1+4Z (got a={a}, b={b})")));
            }
            if family == "11.3" && !((a.rem_euclid(4) == 0 && b.rem_euclid(4) == 3) || (a.rem_euclid(4) == 2 && b.rem_euclid(4) == 1)) {
                return Err(verr(format!(
                    "11.3 requires a ∈ 4Z, b ∈ 3+4Z or a ∈ 2+4Z, b ∈ 1+4Z (got a={a}, b={b})"
                )));
            }
            // n + 1 = 2s − 2 + a(a+1)/2 + b(b+1)/2
            let n = 2 * s - 3 + pp + qp;
            if n < 2 {
                return Err(verr(format!("{family} at (a,b,s)=({a},{b},{s}) gives n={n} < 2")));
            }
            let code = format!("A{n}");
            let nodes = (if n % 2 == 0 { n / 2 + 1 } else { (n + 1) / 2 + 1 }) as usize;
            let sq = (a + b + 1) * (a + b + 1);
            let q = exact_div((a - b - 1) * (a - b + 1), 8, "q")?;
            let even = family == "11.2";
            let p = if even { exact_div(sq / 4 - 1, 2, "p")? } else { exact_div(sq, 8, "p")? };
            let (c1, c2) = if even { (a - b == -1, (a + b + 1).abs() == 2) } else { (a - b == 1, a + b == -1) };
            let branch = match (c1, c2) {
                (false, false) => 1,
                (true, false) => 2,
                (false, true) => 3,
                (true, true) => 4,
            };
            // linear order along the (β_i)-graph is the node order
            let (first, last) = if even { (q, p) } else { (p, q) };
            if (first + s + last) as usize != nodes {
                return Err(Error::Invariant(format!("{family}: box sizes {first}+{s}+{last} ≠ |I| = {nodes}")));
            }
            let j: Vec<usize> = (0..first as usize).chain((first + s) as usize..nodes).collect();
            let k: Vec<usize> = (first as usize..(first + s) as usize).collect();
            let mut boxes = if even { box_code('C', q) } else { box_code('D', p) };
            boxes.extend(if even { box_code('B', p) } else { box_code('C', q) });
            let mid = "2×1×2";
            let flat_sharp = if s < 2 {
                vec![]
            } else if even {
                let first = if c1 { "2×1/2×2".to_string() } else { format!("{}×1×2", (a - b).abs()) };
                let last = if c2 { "2×1/2×4".to_string() } else { format!("{}×1×2", (a + b + 1).abs()) };
                let mut v = vec![(true, first)];
                v.extend(sharp_chain(s - 2, mid));
                v.push((true, last));
                v
            } else {
                match branch {
                    1 => {
                        let mut v = vec![(true, format!("{}×1×2", (a - b).abs()))];
                        v.extend(sharp_chain(s - 2, mid));
                        v.push((true, format!("{}×1×2", (a + b + 1).abs())));
                        v
                    }
                    2 => {
                        let mut v = vec![(true, format!("{}×1×2", (a + b + 1).abs()))];
                        v.extend(sharp_chain(s - 2, mid));
                        v.push((true, "2×1×1".to_string()));
                        v
                    }
                    3 => {
                        let mut v = sharp_chain(s - 1, mid);
                        v.push((false, format!("{}×1×2", (a - b).abs())));
                        v
                    }
                    _ => {
                        let mut v = sharp_chain(s - 1, mid);
                        v.push((false, "2×1×1".to_string()));
                        v
                    }
                }
            };
            let ha_template = (s >= 2).then(|| HaTemplate {
                sc: even || a + b != -1,
                rank: s - 1,
                left: (2 * a + 1).abs(),
                mid: 2,
                right: (2 * b + 1).abs(),
            });
            let arithmetic = format!(
                "Ã{n}; u²=1, u≠1; J of type {} (both components u-stable); p'={pp}, q'={qp}",
                a_types(&[pp - 1, qp - 1])
            );
            Ok(CuspidalCase {
                id: format!("{family}(a={a},b={b},s={s})"),
                ambient: code,
                d: 2,
                j,
                k,
                family: Some(params),
                branch: Some(branch),
                systems: 1,
                printed: Printed { flat_sharp, ha_template, boxes, arithmetic, ..Default::default() },
            })
        }
        "11.4" => {
            if !(a >= 1 && a % 2 == 1) {
                return Err(verr(format!("11.4 requires a ≥ 1 odd (got a={a})")));
            }
            if !(b >= 0 && b % 2 == 0) {
                return Err(verr(format!("11.4 requires b ≥ 0 even (got b={b})")));
            }
            let n = s + a * a + b * b - 1;
            if n < 4 {
                return Err(verr(format!("11.4 at (a,b,s)=({a},{b},{s}) gives n={n} < 4")));
            }
            let p = exact_div((a + b) * (a + b) - 1, 2, "p")?;
            let q = exact_div((a - b) * (a - b) - 1, 2, "q")?;
            let (c1, c2) = (a + b == 1, (a - b).abs() == 1);
            let branch = match (c1, c2) {
                (false, false) => 1,
                (false, true) => 2,
                (true, true) => 3,
                (true, false) => return Err(Error::Invariant("11.4: a+b=1 forces |a−b|=1".into())),
            };
            let nodes = n as usize;
            if (p + s + q) as usize != nodes {
                return Err(Error::Invariant(format!("11.4: box sizes {p}+{s}+{q} ≠ |I| = {nodes}")));
            }
            let j: Vec<usize> = (0..p as usize).chain((p + s) as usize..nodes).collect();
            let k: Vec<usize> = (p as usize..(p + s) as usize).collect();
            let mut boxes = box_code('B', p);
            boxes.extend(box_code('B', q));
            let flat_sharp = if s < 2 {
                vec![]
            } else {
                let first = if c1 { "2×1/2×2".to_string() } else { format!("{}×1×1", 2 * (a + b)) };
                let last = if c2 { "2×1/2×2".to_string() } else { format!("{}×1×1", 2 * (a - b).abs()) };
                let mut v = vec![(true, first)];
                v.extend(sharp_chain(s - 2, "2×1×1"));
                v.push((true, last));
                v
            };
            let ha_template = (s >= 2).then_some(HaTemplate { sc: true, rank: s - 1, left: 2 * a, mid: 1, right: 2 * b });
            let (pd, qd) = (a * a, b * b);
            let arithmetic = format!(
                "D̃{n}; u has exactly n−1 fixed points on the affine nodes; J of type D{pd}×D{qd}, u non-trivial on D{pd}; p'={pd}, q'={qd}"
            );
            Ok(CuspidalCase {
                id: format!("11.4(a={a},b={b},s={s})"),
                ambient: format!("D{n}"),
                d: 2,
                j,
                k,
                family: Some(params),
                branch: Some(branch),
                systems: 1,
                printed: Printed { flat_sharp, ha_template, boxes, arithmetic, ..Default::default() },
            })
        }
        "11.5" => {
            if a < 0 || b < 0 {
                return Err(verr(format!("11.5 requires a ≥ 0 and b ≥ 0 (got a={a}, b={b})")));
            }
            let r = tri(b);
            // n + 1 = 2a² + (b²+b)/2 − 1 + 2s
            let n = 2 * a * a + r - 2 + 2 * s;
            if (a - (n + 1)).rem_euclid(2) != 0 {
                return Err(verr(format!("11.5 requires a ≡ n+1 (mod 2) (a={a}, n={n})")));
            }
            if (r - n).rem_euclid(2) != 0 {
                return Err(verr(format!("11.5 requires (b²+b)/2 ≡ n (mod 2) (b={b}, n={n})")));
            }
            if n < 4 {
                return Err(verr(format!("11.5 at (a,b,s)=({a},{b},{s}) gives n={n} < 4")));
            }
            let p = exact_div(tri(2 * a + b) - 1, 2, "p")?;
            let q = exact_div(tri(2 * a - b - 1) - 1, 2, "q")?;
            let c1 = 2 * a + b == 1;
            let c2 = (4 * a - 2 * b - 1).abs() == 3;
            let branch = match (c1, c2) {
                (false, false) => 1,
                (false, true) => 2,
                (true, _) => 3,
            };
            let nodes = n as usize;
            if (p + q + 2 * s - 1) as usize != nodes {
                return Err(Error::Invariant(format!("11.5: box sizes do not fill |I| = {nodes}")));
            }
            let k: Vec<usize> = (0..s as usize).map(|t| p as usize + 2 * t).collect();
            let j: Vec<usize> = (0..nodes).filter(|x| !k.contains(x)).collect();
            let mut boxes = box_code('B', p);
            boxes.extend((0..s - 1).map(|_| "A1".to_string()));
            boxes.extend(box_code('B', q));
            let flat_sharp = if s < 2 {
                vec![]
            } else {
                let first = if c1 { "3×1/2×2".to_string() } else { format!("{}×1×1", 4 * a + 2 * b + 1) };
                let last = if c2 { "3×1/2×2".to_string() } else { format!("{}×1/2×2", (4 * a - 2 * b - 1).abs()) };
                let mut v = vec![(true, first)];
                v.extend(sharp_chain(s - 2, "4×1×1"));
                v.push((true, last));
                v
            };
            let ha_template = (s >= 2).then_some(HaTemplate { sc: true, rank: s - 1, left: 4 * a, mid: 2, right: 2 * b + 1 });
            let pd = a * a;
            let arithmetic = format!(
                "D̃{n}; u has fewer than n−1 fixed points on the affine nodes; J of type D{pd}×D{pd}×A{}; p'={pd}, r={r}",
                r - 1
            );
            Ok(CuspidalCase {
                id: format!("11.5(a={a},b={b},s={s})"),
                ambient: format!("D{n}"),
                d: 2,
                j,
                k,
                family: Some(params),
                branch: Some(branch),
                systems: 1,
                printed: Printed { flat_sharp, ha_template, boxes, arithmetic, ..Default::default() },
            })
        }
        _ => Err(verr(format!("unknown family {family} (expected 11.2, 11.3, 11.4 or 11.5)"))),
    }
}

fn labels(v: &[(bool, &str)]) -> Vec<(bool, String)> {
    v.iter().map(|(f, s)| (*f, s.to_string())).collect()
}

/// The exceptional rows 11.6 – 11.12.
pub fn catalog_case(id: &str) -> Result<CuspidalCase> {
    let e6_gamma = Some("∘—∘—∘⇒∘—∘".to_string());
    let d4_gamma = Some("∘—∘≡>∘".to_string());
    let (ambient, d, j, systems, beta, flat, ha, arith): (&str, u32, Vec<usize>, u32, &str, Vec<(bool, String)>, &str, &str) =
        match id {
            "11.6" => ("E6", 2, vec![0, 1, 2, 4], 2, "[∘—∘]—σ1⇐[∘—∘]", vec![], "∅", "Ẽ6; u²=1, u≠1; J of type E6 (two unipotent cuspidal representations, mutually dual)"),
            "11.7" => ("E6", 2, vec![1, 2, 3, 4], 1, "σ1—[∘—∘⇐∘—∘]", vec![], "∅", "Ẽ6; u²=1, u≠1; J of type E6 (self-dual unipotent cuspidal representation)"),
            "11.8" => (
                "E6",
                2,
                vec![0, 2, 3],
                1,
                "[∘]—σ1—[∘]⇐σ2—[∘]",
                labels(&[(true, "4×1×2"), (true, "5×2×2")]),
                "1∞9",
                "Ẽ6; u²=1, u≠1; J of type A5",
            ),
            "11.9" => (
                "E6",
                2,
                vec![],
                1,
                "σ1—σ2—σ3⇐σ4—σ5",
                labels(&[(false, "2×1×2"), (false, "2×1×2"), (false, "2×1×2"), (false, "2×1×1"), (false, "2×1×1")]),
                "2—2⇐1—1—1",
                "Ẽ6; u²=1, u≠1; J = ∅",
            ),
            "11.10" => ("D4", 3, vec![1, 2], 1, "σ1—[∘<≡∘]", vec![], "∅", "D̃4; u³=1, u≠1; J of type D4"),
            "11.11" => ("D4", 3, vec![0, 2], 1, "[∘]—σ1<≡[∘]", vec![], "∅", "D̃4; u³=1, u≠1; J of type D4 (the other unipotent cuspidal)"),
            "11.12" => (
                "D4",
                3,
                vec![],
                1,
                "σ1—σ2<≡σ3",
                labels(&[(false, "2×1×3"), (false, "2×1×3"), (false, "2×1×1")]),
                "3<≡1—1",
                "D̃4; u³=1, u≠1; J = ∅",
            ),
            _ => return Err(verr(format!("unknown table row {id}"))),
        };
    let f = fold(ambient, d)?;
    let k = k_order(&f, &j);
    Ok(CuspidalCase {
        id: id.into(),
        ambient: ambient.into(),
        d,
        j,
        k,
        family: None,
        branch: None,
        systems,
        printed: Printed {
            gamma_graph: if ambient == "E6" { e6_gamma } else { d4_gamma },
            beta_graph: Some(beta.into()),
            flat_sharp: flat,
            ha: Some(ha.into()),
            ha_template: None,
            boxes: vec![],
            arithmetic: arith.into(),
        },
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct NodeRow {
    pub subscript: usize,
    pub node: usize,
    pub flat: bool,
    pub u_bar: u32,
    pub z: i64,
    pub z_bar: String,
    pub d: i64,
    pub n: i64,
    pub n_tilde: i64,
    pub label: String,
    pub lambda: String,
    pub lambda_star: Option<String>,
    pub k0: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy {
    pub field: String,
    pub printed: String,
    pub computed: String,
    pub note: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct TableRow {
    pub case: CuspidalCase,
    pub gj_type: String,
    pub orbit: String,
    pub weights: Vec<i64>,
    pub gamma_graph: String,
    pub beta_graph: String,
    pub flat_sharp: String,
    pub ha: String,
    /// "computed", "template" or "printed"
    pub ha_source: String,
    pub arithmetic: String,
    pub nodes: Vec<NodeRow>,
    /// "engine" or "catalog"
    pub u_bar_provenance: String,
    pub descriptor: HeckeDescriptor,
    pub checks: Vec<Check>,
    pub discrepancies: Vec<Discrepancy>,
}

impl TableRow {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.iter().all(|c| c.ok)
    }

    pub fn has_discrepancy(&self) -> bool {
        !self.discrepancies.is_empty()
    }
}

/// Whether the Lie engine handles this ambient algebra.
pub fn engine_supports(code: &str, d: u32) -> bool {
    crate::lie::chevalley::check_supported(code, d).is_ok()
}

fn printed_u_bar(case: &CuspidalCase) -> Result<Vec<u32>> {
    case.printed
        .flat_sharp
        .iter()
        .map(|(_, l)| {
            l.split('×')
                .next()
                .and_then(|x| x.parse().ok())
                .ok_or_else(|| Error::Invariant(format!("bad printed label {l}")))
        })
        .collect()
}

fn check(checks: &mut Vec<Check>, name: &str, ok: bool) {
    checks.push(Check { name: name.into(), ok });
}

fn node_rows(w: &WStar, fs: &FlatSharp, h: &HeckeDescriptor) -> Vec<NodeRow> {
    let HeckeDescriptor::Affine { lambda_all, pi, .. } = h else { return vec![] };
    (0..w.len())
        .map(|p| {
            let lambda_star = pi.iter().find(|x| x.k == w.k[p]).and_then(|x| x.lambda_star).map(|x| x.to_string());
            NodeRow {
                subscript: p + 1,
                node: w.k[p],
                flat: fs.flat[p],
                u_bar: fs.u_bar[p],
                z: w.z[p],
                z_bar: fmt_rat(&fs.z_bar[p]),
                d: fs.d[p],
                n: w.n[p],
                n_tilde: w.n_tilde[p],
                label: fs.label(p),
                lambda: fmt_rat(&lambda_all[p]),
                lambda_star,
                k0: p == fs.k0,
            }
        })
        .collect()
}

fn flat_sharp_string(fs: &FlatSharp) -> String {
    let labels: Vec<String> =
        (0..fs.k.len()).map(|p| format!("{}^{{{}}}", if fs.flat[p] { "♭" } else { "♯" }, fs.label(p))).collect();
    render(&fs.cartan, &labels, &vec![false; fs.k.len()], &[0])
}

/// H.A. diagram for rows without ♭ nodes: dual affine diagram of Π labelled by λ.
fn ha_dual_affine(h: &HeckeDescriptor) -> Result<String> {
    let HeckeDescriptor::Affine { pi, cartan, .. } = h else { return Ok("∅".into()) };
    let lambda: Vec<u64> = pi.iter().map(|x| x.lambda).collect();
    let (m, labels) = dual_affine(cartan, &lambda)?;
    let labels: Vec<String> = labels.iter().map(|x| x.to_string()).collect();
    Ok(render(&m, &labels, &vec![false; m.len()], &[0]))
}

fn rat_multiset(mut v: Vec<Rat>) -> Vec<Rat> {
    v.sort();
    v
}

/// Computes every column of a table row.
pub fn table_row(case: &CuspidalCase) -> Result<TableRow> {
    let f = fold(&case.ambient, case.d)?;
    let cat = Catalog::load()?;
    let gj = if case.j.is_empty() { None } else { Some(gj_root_datum(&f, &case.j)?) };
    let (weights, orbit, gj_type) = match &gj {
        None => (vec![], "0".to_string(), "∅".to_string()),
        Some(g) => {
            let w = cat.weights_for(g)?;
            let names: Vec<String> = g
                .components
                .iter()
                .map(|c| Ok(format!("{}:{}", c.code(), cat.lookup(&c.code())?.1)))
                .collect::<Result<_>>()?;
            (w, names.join("×"), g.type_label.clone())
        }
    };
    let mut checks = vec![];
    let mut discrepancies = vec![];
    if let Some(g) = &gj {
        if !case.printed.boxes.is_empty() {
            let mut got: Vec<String> = g.components.iter().map(|c| canonical_type(&c.code())).collect();
            let mut want = case.printed.boxes.clone();
            got.sort();
            want.sort();
            check(&mut checks, "box_types", got == want);
        }
    }
    let nk = case.k.len();
    let engine = if engine_supports(&case.ambient, case.d) { Some(Engine::new(&case.ambient, case.d)?) } else { None };
    if let Some(eng) = &engine {
        // the catalog orbit is distinguished in g_J and admits an sl2-triple
        let t = crate::lie::sl2::distinguished_nilpotent(eng, &case.j, &weights, 0x5eed)?;
        crate::lie::sl2::check_triple(eng, &t)?;
        check(&mut checks, "orbit_distinguished", true);
    }
    let (u_bar, provenance) = if nk < 2 {
        (vec![], "none".to_string())
    } else if let Some(eng) = &engine {
        let t = crate::lie::sl2::distinguished_nilpotent(eng, &case.j, &weights, 0x5eed)?;
        let u: Vec<u32> = case.k.iter().map(|&kk| crate::lie::sl2::u_bar(eng, &case.j, kk, &t)).collect::<Result<_>>()?;
        (u, "engine".to_string())
    } else {
        (printed_u_bar(case)?, "catalog".to_string())
    };
    let (data, desc) = descriptor(&f, &case.j, &case.k, &u_bar)?;
    let gamma_graph = render_plain(&f.a, &[0]);
    let n = f.num_nodes();
    let mut blabels: Vec<String> = vec!["∘".into(); n];
    for (p, &kk) in case.k.iter().enumerate() {
        blabels[kk] = format!("σ{}", p + 1);
    }
    let boxed: Vec<bool> = (0..n).map(|i| case.j.contains(&i)).collect();
    let beta_graph = render(&f.a_tw, &blabels, &boxed, &[0]);
    if let Some(g) = &case.printed.gamma_graph {
        check(&mut checks, "gamma_graph_matches_printed", *g == gamma_graph);
    }
    if let Some(b) = &case.printed.beta_graph {
        check(&mut checks, "beta_graph_matches_printed", *b == beta_graph);
    }
    let (flat_sharp, nodes, ha, ha_source) = match &data {
        None => ("∅".to_string(), vec![], "∅".to_string(), "computed".to_string()),
        Some((w, fs)) => {
            let nodes = node_rows(w, fs, &desc);
            row_checks(&f, w, fs, &desc, &mut checks);
            let fsd = flat_sharp_string(fs);
            let (ha, src) = if let Some(t) = &case.printed.ha_template {
                end_label_checks(fs, &desc, t, &mut checks);
                (t.render(), "template".to_string())
            } else if fs.flat.iter().any(|&x| x) {
                match &case.printed.ha {
                    Some(s) => (s.clone(), "printed".to_string()),
                    None => (generic_flat_ha(fs, &desc), "computed".to_string()),
                }
            } else {
                (ha_dual_affine(&desc)?, "computed".to_string())
            };
            (fsd, nodes, ha, src)
        }
    };
    if nk < 2 && case.printed.ha_template.is_none() {
        if let Some(p) = &case.printed.ha {
            check(&mut checks, "ha_matches_printed", *p == ha);
        }
    }
    if ha_source == "computed" && nk >= 2 {
        if let Some(p) = &case.printed.ha {
            check(&mut checks, "ha_matches_printed", *p == ha);
        }
    }
    // compare node labels with the printed ones
    if !case.printed.flat_sharp.is_empty() {
        for (p, (pflat, plabel)) in case.printed.flat_sharp.iter().enumerate() {
            let Some(node) = nodes.get(p) else {
                discrepancies.push(Discrepancy {
                    field: format!("σ{}", p + 1),
                    printed: plabel.clone(),
                    computed: "missing".into(),
                    note: "node count differs".into(),
                });
                continue;
            };
            if node.flat != *pflat || node.label != *plabel {
                let sym = |fl: bool| if fl { "♭" } else { "♯" };
                discrepancies.push(Discrepancy {
                    field: format!("σ{}", p + 1),
                    printed: format!("{}^{{{}}}", sym(*pflat), plabel),
                    computed: format!("{}^{{{}}}", sym(node.flat), node.label),
                    note: label_note(case, p, &nodes),
                });
            }
        }
    }
    if ha_source == "printed" {
        discrepancies.push(Discrepancy {
            field: "ha".into(),
            printed: ha.clone(),
            computed: generic_flat_ha(&data.as_ref().unwrap().1, &desc),
            note: "emitted verbatim; see the σ-label entries for the d_k correction that makes the end labels agree".into(),
        });
    }
    Ok(TableRow {
        gj_type,
        orbit,
        weights,
        gamma_graph,
        beta_graph,
        flat_sharp,
        ha,
        ha_source,
        arithmetic: case.printed.arithmetic.clone(),
        nodes,
        u_bar_provenance: provenance,
        descriptor: desc,
        checks,
        discrepancies,
        case: case.clone(),
    })
}

fn label_note(case: &CuspidalCase, p: usize, nodes: &[NodeRow]) -> String {
    let node = &nodes[p];
    if case.id == "11.8" {
        return format!(
            "node {} is a single τ-fixed node, so d = {}; with it the ♭ products are {{8, 10}}, giving λ = 9, λ* = 1",
            node.node, node.d
        );
    }
    format!("computed from ū = {}, z = {}, d = {}", node.u_bar, node.z, node.d)
}

/// {λ*}∞{λ} for |K| = 2, C̃_n with end labels otherwise.
fn generic_flat_ha(fs: &FlatSharp, h: &HeckeDescriptor) -> String {
    let HeckeDescriptor::Affine { pi, lambda_all, .. } = h else { return "∅".into() };
    let end = pi.iter().find(|x| x.lambda_star.is_some());
    match end {
        Some(e) if fs.k.len() == 2 => format!("{}∞{}", e.lambda_star.unwrap(), e.lambda),
        Some(e) => {
            let mid = (0..fs.k.len()).find(|&p| !fs.flat[p]).map(|p| fmt_rat(&lambda_all[p])).unwrap_or_default();
            format!("C̃_{{{}}}[_{{{}}}{}_{{{}}}]", fs.k.len() - 1, e.lambda, mid, e.lambda_star.unwrap())
        }
        None => "?".into(),
    }
}

fn row_checks(f: &FoldedRootDatum, w: &WStar, fs: &FlatSharp, h: &HeckeDescriptor, checks: &mut Vec<Check>) {
    check(checks, "z_equals_n_over_n_tilde", w.z_identity_holds());
    check(checks, "sum_n_tilde_is_coxeter_number", w.n_tilde.iter().sum::<i64>() == w.coxeter_number);
    check(checks, "coroots_generate_lattice", coroots_generate_lattice(w, fs));
    let dims = dim_g_minus(f, &w.k);
    check(checks, "dim_via_n_counts_matches_roots", dims == dim_g_minus_roots(f, &w.k));
    check(checks, "dim_inequality_k0", dims.iter().all(|&x| x <= dims[fs.k0]));
    if let HeckeDescriptor::Affine { lambda_all, .. } = h {
        let ok = (0..w.len()).filter(|&p| !fs.flat[p]).all(|p| fs.product(p) == &lambda_all[p] * int(2));
        check(checks, "mu_equals_two_lambda_on_sharp", ok);
    }
}

/// End-label reconstruction against the family H.A. template.
fn end_label_checks(fs: &FlatSharp, h: &HeckeDescriptor, t: &HaTemplate, checks: &mut Vec<Check>) {
    let HeckeDescriptor::Affine { pi, lambda_all, .. } = h else { return };
    let want = rat_multiset(vec![int(t.left), int(t.right)]);
    let nk = fs.k.len();
    if fs.flat.iter().any(|&x| x) {
        let end = pi.iter().find(|x| x.lambda_star.is_some() && fs.flat[fs.k.iter().position(|&k| k == x.k).unwrap()]);
        let got = end.map(|e| rat_multiset(vec![int(e.lambda as i64), int(e.lambda_star.unwrap() as i64)]));
        check(checks, "end_labels_match_template", got == Some(want));
    } else {
        // ♯-only: the last node carries both subscripts
        let last = &lambda_all[nk - 1];
        check(checks, "end_labels_match_template", want.iter().all(|x| x == last));
    }
    let mids_ok = (0..nk)
        .filter(|&p| !fs.flat[p] && !(fs.flat.iter().all(|&x| !x) && p == nk - 1))
        .all(|p| lambda_all[p] == int(t.mid));
    check(checks, "middle_labels_match_template", mids_ok);
}

/// Hecke parameters for an arbitrary J ⊂ I.
#[derive(Clone, Debug, Serialize)]
pub struct HeckeQuery {
    pub ambient: String,
    pub d: u32,
    pub j: Vec<usize>,
    pub k: Vec<usize>,
    /// id of the table row the ū values came from, or "given"
    pub u_bar_source: String,
    pub nodes: Vec<NodeRow>,
    pub flat_sharp: String,
    pub ha: String,
    pub descriptor: HeckeDescriptor,
}

/// ū is taken from the table row with the same J unless given explicitly.
pub fn hecke_query(code: &str, d: u32, j: &[usize], u_bar: Option<&[u32]>) -> Result<HeckeQuery> {
    let f = fold(code, d)?;
    let mut js = j.to_vec();
    js.sort_unstable();
    let k = k_order(&f, &js);
    let (u, source) = match u_bar {
        Some(u) => (u.to_vec(), "given".to_string()),
        None if k.len() == 1 => (vec![], "none".to_string()),
        None => {
            let cases = enumerate_cases(code, d).unwrap_or_default();
            let Some(case) = cases.iter().find(|c| {
                let mut cj = c.j.clone();
                cj.sort_unstable();
                cj == js
            }) else {
                return Err(verr(format!(
                    "no table row for ({code}, d={d}) has J = {js:?}; pass --u-bar with one value per node of K = {k:?}"
                )));
            };
            let row = table_row(case)?;
            return Ok(HeckeQuery {
                ambient: code.into(),
                d,
                j: js,
                k: case.k.clone(),
                u_bar_source: case.id.clone(),
                nodes: row.nodes,
                flat_sharp: row.flat_sharp,
                ha: row.ha,
                descriptor: row.descriptor,
            });
        }
    };
    let (data, desc) = descriptor(&f, &js, &k, &u)?;
    let (nodes, flat_sharp, ha) = match &data {
        None => (vec![], "∅".to_string(), "∅".to_string()),
        Some((w, fs)) => {
            let ha = if fs.flat.iter().any(|&x| x) { generic_flat_ha(fs, &desc) } else { ha_dual_affine(&desc)? };
            (node_rows(w, fs, &desc), flat_sharp_string(fs), ha)
        }
    };
    Ok(HeckeQuery { ambient: code.into(), d, j: js, k, u_bar_source: source, nodes, flat_sharp, ha, descriptor: desc })
}

/// Every table row for (type, d).
pub fn enumerate_cases(code: &str, d: u32) -> Result<Vec<CuspidalCase>> {
    let (fam, n) = parse_type_code(code)?;
    let n = n as i64;
    let mut out = vec![];
    match (fam, n, d) {
        ('E', 6, 2) => {
            for id in ["11.6", "11.7", "11.8", "11.9"] {
                out.push(catalog_case(id)?);
            }
        }
        ('D', 4, 3) => {
            for id in ["11.10", "11.11", "11.12"] {
                out.push(catalog_case(id)?);
            }
        }
        ('A', n, 2) if n >= 2 => {
            let family = if n % 2 == 0 { "11.2" } else { "11.3" };
            let bound = 2 * ((2 * (n + 1)) as f64).sqrt() as i64 + 4;
            for a in -bound..=bound {
                for b in -bound..=bound {
                    let rest = n + 3 - tri(a) - tri(b);
                    if rest < 2 || rest % 2 != 0 {
                        continue;
                    }
                    match family_case(family, a, b, rest / 2) {
                        Ok(c) if c.ambient == code => out.push(c),
                        Ok(_) | Err(Error::Validation(_)) => {}
                        Err(e) => return Err(e),
                    }
                }
            }
        }
        ('D', n, 2) if n >= 4 => {
            for a in (1..=n).step_by(2) {
                for b in (0..=n).step_by(2) {
                    let s = n + 1 - a * a - b * b;
                    if s >= 1 {
                        out.push(family_case("11.4", a, b, s)?);
                    }
                }
            }
            for a in 0..=n {
                for b in 0..=2 * n {
                    let rest = n + 2 - 2 * a * a - tri(b);
                    if rest < 2 || rest % 2 != 0 {
                        continue;
                    }
                    match family_case("11.5", a, b, rest / 2) {
                        Ok(c) => out.push(c),
                        Err(Error::Validation(_)) => {}
                        Err(e) => return Err(e),
                    }
                }
            }
        }
        _ => return Err(verr(format!("no table rows for ({code}, d={d})"))),
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn family_congruences_are_enforced() {
        let e = family_case("11.2", 1, 1, 2).unwrap_err();
        assert!(e.to_string().contains("4Z"));
        assert!(family_case("11.4", 2, 0, 3).is_err());
        assert!(family_case("11.5", 0, 0, 3).is_err());
    }

    #[test]
    fn a6_enumeration() {
        let cases = enumerate_cases("A6", 2).unwrap();
        let mut got: Vec<(i64, i64, i64)> =
            cases.iter().map(|c| c.family.as_ref().map(|f| (f.a, f.b, f.s)).unwrap()).collect();
        got.sort();
        assert_eq!(got, vec![(-4, 1, 1), (0, -3, 3), (0, 1, 4)]);
    }
}

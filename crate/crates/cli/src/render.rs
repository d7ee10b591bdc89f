//! Text layout of each verb and the JSON envelope.

use serde_json::{json, Value};
use std::fmt::Write;

use foldhecke::alcove::Reduction;
use foldhecke::folding::FoldedRootDatum;
use foldhecke::hecke_params::HeckeDescriptor;
use foldhecke::scalar::CScalar;
use foldhecke::tables::{HeckeQuery, NodeRow, TableRow};
use foldhecke::verify::CriterionResult;

pub const SCHEMA_ID: &str = "foldhecke-report/1";

pub fn envelope(verb: &str, result: &Value) -> String {
    let v = json!({ "schema": SCHEMA_ID, "command": verb, "result": result });
    serde_json::to_string_pretty(&v).expect("JSON values always serialize")
}

fn set(v: &[usize]) -> String {
    if v.is_empty() {
        "∅".into()
    } else {
        format!("{{{}}}", v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "))
    }
}

fn coords(v: &[CScalar]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", ")
}

fn matrix(out: &mut String, name: &str, m: &[Vec<i64>]) {
    let _ = writeln!(out, "{name}:");
    for row in m {
        let cells: Vec<String> = row.iter().map(|x| format!("{x:>3}")).collect();
        let _ = writeln!(out, "  {}", cells.join(""));
    }
}

pub fn fold_text(f: &FoldedRootDatum, index: i128, gamma: &str, beta: &str) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} d={}: 'R of type {}, R of type {}{}", f.code, f.d, f.rprime_type, f.r_type, if f.reduced { "" } else { " (non-reduced 'R)" });
    let orbits: Vec<String> = f.orbits.iter().map(|o| set(o)).collect();
    let _ = writeln!(s, "τ = {:?}; orbits on I': {}", f.tau, orbits.join(" "));
    let _ = writeln!(s, "I = {}", set(&(0..f.num_nodes()).collect::<Vec<_>>()));
    let _ = writeln!(s, "marks n_i: {:?}   d_i: {:?}", f.marks, f.dk);
    let _ = writeln!(s, "γ-graph: {gamma}");
    let _ = writeln!(s, "β-graph: {beta}");
    let _ = writeln!(s, "Coxeter number {}   |Y/'Y| = {index}   restricted roots: {}", f.coxeter_number(), f.rroots.len());
    matrix(&mut s, "a (γ_j(h_i))", &f.a);
    matrix(&mut s, "'a", &f.a_tw);
    s
}

pub fn reduce_text(x: &[CScalar], r: &Reduction) -> String {
    let word = if r.word.is_empty() {
        "identity".to_string()
    } else {
        r.word.iter().map(|i| format!("s{i}")).collect::<Vec<_>>().join(" ")
    };
    format!("point      {}\ncanonical  {}\ncell S     {}\nword       {word}\n", coords(x), coords(&r.canonical), set(&r.cell))
}

fn node_lines(s: &mut String, nodes: &[NodeRow]) {
    for n in nodes {
        let ls = n.lambda_star.as_deref().map(|x| format!(" λ*={x}")).unwrap_or_default();
        let _ = writeln!(
            s,
            "    σ{} node {} {} {}  z={} ñ={} n={}  λ={}{ls}{}",
            n.subscript,
            n.node,
            if n.flat { "♭" } else { "♯" },
            n.label,
            n.z,
            n.n_tilde,
            n.n,
            n.lambda,
            if n.k0 { "  (k₀)" } else { "" }
        );
    }
}

pub fn row_text(r: &TableRow) -> String {
    let c = &r.case;
    let mut s = String::new();
    let branch = c.branch.map(|b| format!(" branch {b}")).unwrap_or_default();
    let _ = writeln!(s, "{}  {} d={}{branch}  J={}  K={:?}", c.id, c.ambient, c.d, set(&c.j), c.k);
    let _ = writeln!(s, "  G_J: {}   orbit: {}   weights: {:?}", r.gj_type, r.orbit, r.weights);
    let _ = writeln!(s, "  γ-graph: {}", r.gamma_graph);
    let _ = writeln!(s, "  β-graph: {}", r.beta_graph);
    let _ = writeln!(s, "  ♭-♯:     {}   [ū: {}]", r.flat_sharp, r.u_bar_provenance);
    let _ = writeln!(s, "  H.A.:    {}   [{}]", r.ha, r.ha_source);
    let _ = writeln!(s, "  arithmetic: {}   [printed]", r.arithmetic);
    node_lines(&mut s, &r.nodes);
    let failed: Vec<&str> = r.checks.iter().filter(|k| !k.ok).map(|k| k.name.as_str()).collect();
    let _ = writeln!(
        s,
        "  checks: {}/{} pass{}",
        r.checks.len() - failed.len(),
        r.checks.len(),
        if failed.is_empty() { String::new() } else { format!("; failing: {}", failed.join(", ")) }
    );
    for d in &r.discrepancies {
        let _ = writeln!(s, "  DISCREPANCY {}: printed {} computed {} ({})", d.field, d.printed, d.computed, d.note);
    }
    s
}

pub fn hecke_text(q: &HeckeQuery) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "{} d={}  J={}  K={:?}  ū from {}", q.ambient, q.d, set(&q.j), q.k, q.u_bar_source);
    let _ = writeln!(s, "  ♭-♯:  {}", q.flat_sharp);
    let _ = writeln!(s, "  H.A.: {}", q.ha);
    match &q.descriptor {
        HeckeDescriptor::Trivial => {
            let _ = writeln!(s, "  |K| = 1: the algebra C[v, v⁻¹]");
        }
        HeckeDescriptor::Affine { pi, root_type, k0, .. } => {
            let _ = writeln!(s, "  R_K of type {root_type}, k₀ = node {k0}");
            for p in pi {
                let ls = p.lambda_star.map(|x| format!(", λ* = {x}")).unwrap_or_default();
                let _ = writeln!(s, "    node {}: λ = {}{ls}{}", p.k, p.lambda, if p.h_in_2l { "  (ĥ ∈ 2ℒ')" } else { "" });
            }
        }
    }
    node_lines(&mut s, &q.nodes);
    s
}

pub fn verify_text(rs: &[CriterionResult], timings: bool) -> String {
    let mut s = String::new();
    for r in rs {
        let t = if timings { format!(" [{:.2}s]", r.seconds) } else { String::new() };
        let _ = writeln!(s, "{} {:>2} {}{t}: {}", if r.ok { "PASS" } else { "FAIL" }, r.id, r.name, r.detail);
    }
    let bad = rs.iter().filter(|r| !r.ok).count();
    let _ = writeln!(s, "{} of {} passed", rs.len() - bad, rs.len());
    s
}

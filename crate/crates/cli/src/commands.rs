use serde_json::{json, Value};

use foldhecke::alcove::{apply_word, reduce};
use foldhecke::diagram::render_plain;
use foldhecke::folding::{fold, standard_tau};
use foldhecke::lie::chevalley::{build_chevalley, check_supported, dump};
use foldhecke::scalar::CScalar;
use foldhecke::tables::{enumerate_cases, family_case, hecke_query, table_row};
use foldhecke::verify::run_suite;
use foldhecke::{exec, Error, Result};

use crate::args::{Command, TypeArgs};
use crate::render;

pub struct Output {
    pub verb: &'static str,
    pub json: Value,
    pub text: String,
    /// a verification suite failed
    pub failed: bool,
}

fn validate_type(t: &TypeArgs) -> Result<()> {
    standard_tau(&t.type_code, t.d).map(|_| ())
}

fn parse_list<T: std::str::FromStr>(s: &str, what: &str) -> Result<Vec<T>> {
    let s = s.trim();
    if s.is_empty() || s == "∅" {
        return Ok(vec![]);
    }
    s.split(',')
        .map(|x| {
            x.trim()
                .parse()
                .map_err(|_| Error::Validation(format!("malformed {what} `{x}` in `{s}` (expected comma-separated non-negative integers)")))
        })
        .collect()
}

fn to_value(x: &impl serde::Serialize) -> Result<Value> {
    serde_json::to_value(x).map_err(|e| Error::Invariant(format!("serialization failed: {e}")))
}

pub fn run(cmd: &Command) -> Result<Output> {
    match cmd {
        Command::Fold(t) => {
            validate_type(t)?;
            let f = fold(&t.type_code, t.d)?;
            let index = f.coroot_index()?;
            let gamma = render_plain(&f.a, &[0]);
            let beta = render_plain(&f.a_tw, &[0]);
            let mut v = to_value(&f)?;
            v["coxeter_number"] = json!(f.coxeter_number());
            v["coroot_index"] = json!(index.to_string());
            v["gamma_graph"] = json!(gamma);
            v["beta_graph"] = json!(beta);
            v["restricted_root_count"] = json!(f.rroots.len());
            let text = render::fold_text(&f, index, &gamma, &beta);
            Ok(Output { verb: "fold", json: v, text, failed: false })
        }
        Command::Reduce { ty, point } => {
            validate_type(ty)?;
            let coords: Vec<CScalar> = point.split(',').map(CScalar::parse).collect::<Result<_>>()?;
            let f = fold(&ty.type_code, ty.d)?;
            let r = reduce(&f, &coords)?;
            if apply_word(&f, &coords, &r.word) != r.canonical {
                return Err(Error::Invariant("reduction word does not reproduce the canonical point".into()));
            }
            let v = json!({
                "type": ty.type_code,
                "d": ty.d,
                "coordinates": coords,
                "canonical": r.canonical,
                "S": r.cell,
                "word": r.word,
            });
            let text = render::reduce_text(&coords, &r);
            Ok(Output { verb: "reduce", json: v, text, failed: false })
        }
        Command::Tables { ty, family, a, b, s } => {
            validate_type(ty)?;
            if ty.d < 2 {
                return Err(Error::Validation("table rows exist only for d ≥ 2".into()));
            }
            let cases = match family {
                Some(fam) => {
                    let c = family_case(fam, a.unwrap(), b.unwrap(), s.unwrap())?;
                    if c.ambient != ty.type_code || c.d != ty.d {
                        return Err(Error::Validation(format!(
                            "{} lives on ({}, d={}), not ({}, d={})",
                            c.id, c.ambient, c.d, ty.type_code, ty.d
                        )));
                    }
                    vec![c]
                }
                None => enumerate_cases(&ty.type_code, ty.d)?,
            };
            // parallel over cases; the output order is the enumeration order
            let rows = exec::map(&cases, table_row).into_iter().collect::<Result<Vec<_>>>()?;
            let mut vals = vec![];
            for r in &rows {
                let mut v = to_value(r)?;
                v["id"] = json!(r.case.id);
                v["provenance"] = json!({
                    "u_bar": r.u_bar_provenance,
                    "labels": "computed",
                    "ha": r.ha_source,
                    "arithmetic": "printed",
                    "gj": "computed",
                });
                vals.push(v);
            }
            let v = json!({ "type": ty.type_code, "d": ty.d, "rows": vals });
            let text = rows.iter().map(render::row_text).collect::<Vec<_>>().join("\n");
            Ok(Output { verb: "tables", json: v, text, failed: false })
        }
        Command::Hecke { ty, j, u_bar } => {
            validate_type(ty)?;
            let j: Vec<usize> = parse_list(j, "node")?;
            let u: Option<Vec<u32>> = u_bar.as_deref().map(|s| parse_list(s, "ū value")).transpose()?;
            let q = hecke_query(&ty.type_code, ty.d, &j, u.as_deref())?;
            let text = render::hecke_text(&q);
            Ok(Output { verb: "hecke", json: to_value(&q)?, text, failed: false })
        }
        Command::Verify { suite, seed, timings } => {
            let results = run_suite(suite, *seed)?;
            let failed = results.iter().any(|r| !r.ok);
            let list: Vec<Value> = results
                .iter()
                .map(|r| {
                    let mut v = json!({ "id": r.id, "suite": r.suite, "name": r.name, "ok": r.ok, "detail": r.detail });
                    if *timings {
                        v["seconds"] = json!(format!("{:.3}", r.seconds));
                    }
                    v
                })
                .collect();
            let v = json!({ "suite": suite, "seed": seed, "passed": !failed, "criteria": list });
            let text = render::verify_text(&results, *timings);
            Ok(Output { verb: "verify", json: v, text, failed })
        }
        Command::Dump(t) => {
            validate_type(t)?;
            check_supported(&t.type_code, t.d)?;
            let f = fold(&t.type_code, t.d)?;
            let (alg, tau) = build_chevalley(&t.type_code, t.d)?;
            let v = json!({ "folded": to_value(&f)?, "algebra": to_value(&dump(&alg, &tau))? });
            // dump is meant for other programs: JSON in either format
            let text = render::envelope("dump", &v);
            Ok(Output { verb: "dump", json: v, text, failed: false })
        }
    }
}

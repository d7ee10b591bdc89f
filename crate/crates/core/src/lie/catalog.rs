//! Weighted Dynkin diagrams of the distinguished orbits that carry cuspidal
//! local systems, keyed by simple type. Loaded from JSON; the path in
//! `FOLDHECKE_CATALOG` overrides the built-in copy.

use serde::{Deserialize, Serialize};

use crate::alcove::GjDatum;
use crate::error::{Error, Result};
use crate::rootdata::parse_type_code;

pub const CATALOG_ENV: &str = "FOLDHECKE_CATALOG";
const BUILTIN: &str = include_str!("../../data/catalog.json");

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CatalogEntry {
    #[serde(rename = "type")]
    pub type_code: String,
    pub orbit: String,
    #[serde(default)]
    pub partition: Option<Vec<i64>>,
    /// Bourbaki order
    pub weights: Vec<i64>,
    pub condition: String,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Catalog {
    pub version: u32,
    /// families whose cuspidal orbit is the regular one at every rank
    pub regular_families: Vec<String>,
    pub diagrams: Vec<CatalogEntry>,
}

impl Catalog {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN).expect("built-in catalog is valid")
    }

    pub fn load() -> Result<Self> {
        match std::env::var(CATALOG_ENV) {
            Ok(path) => {
                let s = std::fs::read_to_string(&path)
                    .map_err(|e| Error::Validation(format!("cannot read catalog {path}: {e}")))?;
                Self::parse(&s)
            }
            Err(_) => Ok(Self::builtin()),
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        let c: Catalog = serde_json::from_str(s).map_err(|e| Error::Validation(format!("bad catalog JSON: {e}")))?;
        if c.version != 1 {
            return Err(Error::Validation(format!("unsupported catalog version {}", c.version)));
        }
        for e in &c.diagrams {
            let (_, n) = parse_type_code(&e.type_code)?;
            if e.weights.len() != n || e.weights.iter().any(|&w| w != 0 && w != 2) {
                return Err(Error::Validation(format!("catalog entry {} has a malformed weighted diagram", e.type_code)));
            }
        }
        Ok(c)
    }

    /// (weights in Bourbaki order, orbit name) for a simple type code.
    pub fn lookup(&self, code: &str) -> Result<(Vec<i64>, String)> {
        let (fam, n) = parse_type_code(code)?;
        if self.regular_families.iter().any(|f| f.starts_with(fam)) {
            return Ok((vec![2; n], "regular".into()));
        }
        self.diagrams
            .iter()
            .find(|e| e.type_code == code)
            .map(|e| (e.weights.clone(), e.orbit.clone()))
            .ok_or_else(|| Error::Validation(format!("no cuspidal orbit for {code} in the catalog")))
    }

    /// Weights on the nodes of J (in the order of `gj.j`).
    pub fn weights_for(&self, gj: &GjDatum) -> Result<Vec<i64>> {
        let mut w = vec![0; gj.j.len()];
        for c in &gj.components {
            let (cw, _) = self.lookup(&c.code())?;
            for (pos, node) in c.nodes.iter().enumerate() {
                let k = gj.j.iter().position(|x| x == node).unwrap();
                w[k] = cw[pos];
            }
        }
        Ok(w)
    }
}

/// Weighted diagram of a nilpotent orbit of so_{2n+1} ('B'), sp_{2n} ('C') or so_{2n} ('D')
/// from its partition: the top half of the ad(h)-eigenvalues on the natural module.
pub fn partition_weights(family: char, partition: &[i64]) -> Vec<i64> {
    let mut vals: Vec<i64> = partition.iter().flat_map(|&p| (0..p).map(move |i| p - 1 - 2 * i)).collect();
    vals.sort_unstable_by(|a, b| b.cmp(a));
    let n = vals.len() / 2;
    let h = &vals[..n];
    let mut w: Vec<i64> = (0..n.saturating_sub(1)).map(|i| h[i] - h[i + 1]).collect();
    match family {
        'B' => w.push(h[n - 1]),
        'C' => w.push(2 * h[n - 1]),
        'D' => w.push(h[n - 2] + h[n - 1]),
        _ => {}
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_entries_match_partitions() {
        let c = Catalog::builtin();
        for e in &c.diagrams {
            if let Some(p) = &e.partition {
                let fam = e.type_code.chars().next().unwrap();
                assert_eq!(partition_weights(fam, p), e.weights, "{}", e.type_code);
            }
        }
    }

    #[test]
    fn regular_a() {
        assert_eq!(Catalog::builtin().lookup("A3").unwrap().0, vec![2, 2, 2]);
        assert!(Catalog::builtin().lookup("B5").is_err());
    }
}

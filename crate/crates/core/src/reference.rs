//! Reference data shipped with the crate: published tables, figure edges,
//! the φ/ψ predicate catalog and the identity catalog.

use std::collections::BTreeMap;
use std::sync::OnceLock;

use serde::Deserialize;

const REFERENCE_JSON: &str = include_str!("../data/reference.json");
const PREDICATES_JSON: &str = include_str!("../data/predicates.json");
const IDENTITIES_JSON: &str = include_str!("../data/identities.json");

#[derive(Debug, Deserialize)]
pub struct Table3 {
    pub words: Vec<String>,
    /// `products[r][c]` is the word for `words[r] ∘ words[c]`.
    pub products: Vec<Vec<String>>,
}

#[derive(Debug, Deserialize)]
pub struct EdgeSet {
    pub solid: Vec<(String, String)>,
    /// `(x, y)` stands for `x ∧ y = 0`, i.e. `x ≤ a y`.
    pub dashed: Vec<(String, String)>,
}

#[derive(Debug, Deserialize)]
pub struct Fig1 {
    pub ord_kf: EdgeSet,
    pub ord_kfg: EdgeSet,
    pub ext_kf: EdgeSet,
    pub ext_kfg: EdgeSet,
}

#[derive(Debug, Deserialize)]
pub struct Table4Row {
    pub k: usize,
    pub s: Vec<String>,
}

#[derive(Debug, Deserialize)]
pub struct Table5 {
    pub columns: Vec<String>,
    pub rows: BTreeMap<String, Vec<usize>>,
}

#[derive(Debug, Deserialize)]
pub struct Table6Row {
    pub id: usize,
    pub types: Vec<String>,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Deserialize)]
pub struct Fig5 {
    pub blocks: Vec<Vec<u8>>,
    /// Pairs of block representatives (smallest ψ of each block).
    pub edges: Vec<(u8, u8)>,
}

#[derive(Debug, Deserialize)]
pub struct Table9Row {
    pub psi_a: u8,
    pub psi_b: u8,
    /// Set expressions in `A`; empty when the implication is argued without a
    /// construction.
    pub recipes: Vec<String>,
}

#[derive(Debug, Deserialize)]
pub struct KRange {
    pub k: Vec<usize>,
    pub kf: Vec<usize>,
}

/// One row of the topsum table: new ψ-numbers and `(k, k_f)` of `X_n`.
pub type TopsumCell = Option<(Vec<u8>, (usize, usize))>;

#[derive(Debug, Deserialize)]
pub struct WitnessClaim {
    pub always: Vec<u8>,
    pub psi: Vec<u8>,
    pub except: Vec<u8>,
}

impl WitnessClaim {
    /// The ψ-numbers the claim lists, exclusions removed, with `always` added.
    pub fn claimed(&self) -> Vec<u8> {
        let mut v: Vec<u8> = self
            .psi
            .iter()
            .copied()
            .filter(|p| !self.except.contains(p))
            .chain(self.always.iter().copied())
            .collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

#[derive(Debug, Deserialize)]
pub struct Footnote {
    pub collapses: Vec<usize>,
    pub orderings: Vec<usize>,
}

#[derive(Debug, Deserialize)]
pub struct Meets {
    pub phi: Vec<Vec<u8>>,
    pub psi: Vec<Vec<u8>>,
}

#[derive(Debug, Deserialize)]
pub struct Reference {
    pub version: u32,
    pub catalog_order: Vec<String>,
    pub table3: Table3,
    pub fig1: Fig1,
    pub table4: BTreeMap<String, Table4Row>,
    pub table5: Table5,
    pub table6: Vec<Table6Row>,
    pub thm9_kf_sizes: BTreeMap<String, usize>,
    pub fig4_edges: Vec<(String, String)>,
    pub fig5: Fig5,
    pub table8: BTreeMap<String, Vec<u8>>,
    pub table9: Vec<Table9Row>,
    pub table10: BTreeMap<String, KRange>,
    pub table12: BTreeMap<String, Vec<TopsumCell>>,
    pub minimal_bases: BTreeMap<String, Vec<String>>,
    pub witness_bases: Vec<Vec<String>>,
    pub witness_claims: Vec<WitnessClaim>,
    pub phi_witness_base: Vec<String>,
    pub max_psi_per_size: BTreeMap<String, usize>,
    pub kfg0_footnote: Footnote,
    pub local_counts: BTreeMap<String, usize>,
    pub global_counts: BTreeMap<String, usize>,
    pub class_totals: Vec<usize>,
    pub meets: Meets,
    pub fig7_phi_height: usize,
}

impl Reference {
    /// Table 5 row for `n` in column order GE, KD, ED, OU, EO, P, D.
    pub fn table5_row(&self, n: usize) -> Option<&[usize]> {
        self.table5.rows.get(&n.to_string()).map(|v| v.as_slice())
    }

    /// Smallest universe size listed for ψ-number `psi` in Table 8.
    pub fn table8_size(&self, psi: u8) -> Option<usize> {
        self.table8
            .iter()
            .find(|(_, v)| v.contains(&psi))
            .map(|(k, _)| k.parse().expect("numeric key"))
    }

    pub fn minimal_base(&self, key: &str) -> Option<Vec<&str>> {
        self.minimal_bases
            .get(key)
            .map(|v| v.iter().map(String::as_str).collect())
    }

    /// Fig 5 block containing `psi`.
    pub fn fig5_block(&self, psi: u8) -> Option<&[u8]> {
        self.fig5
            .blocks
            .iter()
            .find(|b| b.contains(&psi))
            .map(|b| b.as_slice())
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct Cond {
    pub lhs: String,
    pub rhs: String,
    pub equal: bool,
}

#[derive(Debug, Clone, Deserialize)]
pub struct PredicateEntry {
    pub id: u8,
    #[serde(default)]
    pub conds: Vec<Cond>,
    /// Entries that reuse the conditions of a φ row.
    #[serde(default)]
    pub see_phi: Option<u8>,
}

#[derive(Debug, Deserialize)]
pub struct Predicates {
    pub version: u32,
    pub phi: Vec<PredicateEntry>,
    pub psi: Vec<PredicateEntry>,
}

impl Predicates {
    /// Conditions of ψ row `id`, following φ references.
    pub fn psi_conds(&self, id: u8) -> &[Cond] {
        let e = &self.psi[id as usize - 1];
        match e.see_phi {
            Some(p) => &self.phi[p as usize - 1].conds,
            None => &e.conds,
        }
    }

    pub fn phi_conds(&self, id: u8) -> &[Cond] {
        &self.phi[id as usize - 1].conds
    }
}

#[derive(Debug, Clone, Deserialize)]
pub struct Hypothesis {
    pub lhs: String,
    pub rhs: String,
    pub relation: String,
}

#[derive(Debug, Clone, Deserialize)]
pub struct IdentityRecord {
    pub name: String,
    pub vars: Vec<String>,
    pub hypotheses: Vec<Hypothesis>,
    pub lhs: String,
    pub rhs: String,
    pub relation: String,
    pub scope: String,
    #[serde(default)]
    pub applies_to: Vec<String>,
}

#[derive(Debug, Deserialize)]
pub struct IdentityCatalog {
    pub version: u32,
    pub identities: Vec<IdentityRecord>,
}

pub fn reference() -> &'static Reference {
    static R: OnceLock<Reference> = OnceLock::new();
    R.get_or_init(|| serde_json::from_str(REFERENCE_JSON).expect("bundled reference data parses"))
}

pub fn predicates() -> &'static Predicates {
    static P: OnceLock<Predicates> = OnceLock::new();
    P.get_or_init(|| serde_json::from_str(PREDICATES_JSON).expect("bundled predicates parse"))
}

pub fn identity_catalog() -> &'static IdentityCatalog {
    static I: OnceLock<IdentityCatalog> = OnceLock::new();
    I.get_or_init(|| serde_json::from_str(IDENTITIES_JSON).expect("bundled identities parse"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn data_loads() {
        let r = reference();
        assert_eq!(r.table3.words.len(), 18);
        assert!(r.table3.products.iter().all(|row| row.len() == 18));
        assert_eq!(r.class_totals, vec![1, 3, 9, 33, 139, 718, 4535, 35979]);
        assert_eq!(r.fig4_edges.len(), 13);
        assert_eq!(r.meets.psi.len(), 70);
        assert_eq!(r.table8_size(61), Some(2));
        let p = predicates();
        assert_eq!((p.phi.len(), p.psi.len()), (30, 70));
        assert!(!p.psi_conds(21).is_empty());
        assert!(identity_catalog().identities.len() > 100);
    }

    #[test]
    fn table5_rows_sum_to_class_totals() {
        let r = reference();
        for n in 1..=8 {
            let row = r.table5_row(n).unwrap();
            assert_eq!(row.iter().sum::<usize>(), r.class_totals[n - 1]);
        }
    }
}

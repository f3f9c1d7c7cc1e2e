//! Per-subset analysis: orbit families, k-numbers, φ/ψ classification and the
//! local collapse and ordering of a subset.

use std::collections::HashMap;
use std::sync::{OnceLock, RwLock};

use serde::Serialize;

use crate::catalog::{self, index_of, orbit40, Family, CATALOG_LEN};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::monoid::{Collapse, Ordering};
use crate::reference::{predicates, reference, Cond};
use crate::subset::Subset;
use crate::topology::Topology;

/// The value of every word of a family at one subset.
#[derive(Clone, Debug, Serialize)]
pub struct OrbitFamily {
    pub family: Family,
    pub values: Vec<(&'static str, u32)>,
}

impl OrbitFamily {
    pub fn distinct(&self) -> usize {
        let mut v: Vec<u32> = self.values.iter().map(|&(_, s)| s).collect();
        v.sort_unstable();
        v.dedup();
        v.len()
    }

    pub fn get(&self, word: &str) -> Option<u32> {
        self.values
            .iter()
            .find(|(w, _)| *w == word)
            .map(|&(_, s)| s)
    }
}

/// φ, ψ, k and k_f of one subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PsiProfile {
    pub phi: u8,
    pub psi: u8,
    pub k: u8,
    pub kf: u8,
}

pub fn orbit_family(t: &Topology, a: Subset, family: Family) -> OrbitFamily {
    let v = orbit40(t, a.bits());
    OrbitFamily {
        family,
        values: family
            .members()
            .iter()
            .map(|&m| (catalog::name(m as usize), v[m as usize]))
            .collect(),
    }
}

/// Number of distinct values among the family members.
pub fn distinct_count(values: &[u32; CATALOG_LEN], family: Family) -> usize {
    let mut seen = [0u32; CATALOG_LEN];
    let mut len = 0;
    for &m in family.members() {
        let v = values[m as usize];
        if !seen[..len].contains(&v) {
            seen[len] = v;
            len += 1;
        }
    }
    len
}

pub fn k_number(values: &[u32; CATALOG_LEN]) -> usize {
    distinct_count(values, Family::K)
}

pub fn kf_number(values: &[u32; CATALOG_LEN]) -> usize {
    distinct_count(values, Family::KF)
}

type Compiled = Vec<Vec<(u8, u8, bool)>>;

fn compile(conds: &[Cond]) -> Vec<(u8, u8, bool)> {
    conds
        .iter()
        .map(|c| {
            let x = index_of(&c.lhs).unwrap_or_else(|| panic!("predicate word {}", c.lhs));
            let y = index_of(&c.rhs).unwrap_or_else(|| panic!("predicate word {}", c.rhs));
            (x as u8, y as u8, c.equal)
        })
        .collect()
}

fn compiled() -> &'static (Compiled, Compiled) {
    static C: OnceLock<(Compiled, Compiled)> = OnceLock::new();
    C.get_or_init(|| {
        let p = predicates();
        let phi = (1..=30u8).map(|k| compile(p.phi_conds(k))).collect();
        let psi = (1..=70u8).map(|k| compile(p.psi_conds(k))).collect();
        (phi, psi)
    })
}

fn matching(table: &Compiled, v: &[u32; CATALOG_LEN]) -> Vec<u8> {
    table
        .iter()
        .enumerate()
        .filter(|(_, conds)| {
            conds
                .iter()
                .all(|&(x, y, eq)| (v[x as usize] == v[y as usize]) == eq)
        })
        .map(|(k, _)| k as u8 + 1)
        .collect()
}

fn unique(kind: &'static str, subset: u32, m: Vec<u8>) -> Result<u8> {
    match m.len() {
        0 => Err(Error::NoMatch { kind, subset }),
        1 => Ok(m[0]),
        _ => Err(Error::MultipleMatch {
            kind,
            subset,
            matches: m,
        }),
    }
}

/// φ-number from precomputed word values, testing every predicate.
pub fn phi_of_values(v: &[u32; CATALOG_LEN]) -> Result<u8> {
    unique("phi", v[catalog::ID], matching(&compiled().0, v))
}

/// ψ-number from precomputed word values, testing every predicate.
pub fn psi_of_values(v: &[u32; CATALOG_LEN]) -> Result<u8> {
    unique("psi", v[catalog::ID], matching(&compiled().1, v))
}

pub fn classify_phi(t: &Topology, a: Subset) -> Result<u8> {
    phi_of_values(&orbit40(t, a.bits()))
}

pub fn classify_psi(t: &Topology, a: Subset) -> Result<u8> {
    psi_of_values(&orbit40(t, a.bits()))
}

pub fn profile(t: &Topology, a: Subset) -> Result<PsiProfile> {
    profile_of_values(&orbit40(t, a.bits()))
}

pub fn profile_of_values(v: &[u32; CATALOG_LEN]) -> Result<PsiProfile> {
    Ok(PsiProfile {
        phi: phi_of_values(v)?,
        psi: psi_of_values(v)?,
        k: k_number(v) as u8,
        kf: kf_number(v) as u8,
    })
}

/// ψ-number keyed on the KF collapse. The predicates only compare KF words, so
/// the answer depends on the collapse alone; each new collapse is classified by
/// the full predicate scan and remembered.
pub fn psi_cached(v: &[u32; CATALOG_LEN]) -> Result<u8> {
    static MEMO: OnceLock<RwLock<HashMap<Vec<u8>, u8>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    let key = Collapse::from_values(Family::KF, v).labels().to_vec();
    if let Some(&p) = memo.read().expect("memo").get(&key) {
        return Ok(p);
    }
    let p = psi_of_values(v)?;
    memo.write().expect("memo").insert(key, p);
    Ok(p)
}

/// φ-number keyed on the K⁰ collapse, as [`psi_cached`].
pub fn phi_cached(v: &[u32; CATALOG_LEN]) -> Result<u8> {
    static MEMO: OnceLock<RwLock<HashMap<Vec<u8>, u8>>> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    let key = Collapse::from_values(Family::K0, v).labels().to_vec();
    if let Some(&p) = memo.read().expect("memo").get(&key) {
        return Ok(p);
    }
    let p = phi_of_values(v)?;
    memo.write().expect("memo").insert(key, p);
    Ok(p)
}

pub fn subset_collapse(t: &Topology, a: Subset, family: Family) -> Collapse {
    Collapse::from_values(family, &orbit40(t, a.bits()))
}

pub fn subset_ordering(t: &Topology, a: Subset, family: Family) -> Ordering {
    Ordering::from_values(family, &orbit40(t, a.bits()))
}

/// The four eleven-point spaces that between them realise every ψ-number.
pub fn witness_spaces() -> Vec<Topology> {
    reference()
        .witness_bases
        .iter()
        .map(|b| {
            let base: Vec<&str> = b.iter().map(String::as_str).collect();
            Topology::from_letter_base(&base).expect("bundled base is valid")
        })
        .collect()
}

/// ψ-numbers present in a space.
pub fn psi_set(t: &Topology) -> Result<Vec<u8>> {
    let mut seen = [false; 71];
    for s in 0..=t.mask() {
        seen[psi_cached(&orbit40(t, s))? as usize] = true;
    }
    Ok((1..=70u8).filter(|&p| seen[p as usize]).collect())
}

/// ψ of complements, read off the witness spaces. Entry 0 is unused and a zero
/// entry means no witness was seen.
fn dual_table() -> &'static [u8; 71] {
    static D: OnceLock<[u8; 71]> = OnceLock::new();
    D.get_or_init(|| {
        let mut table = [0u8; 71];
        for t in witness_spaces() {
            let m = t.mask();
            for s in 0..=m {
                let p = psi_cached(&orbit40(&t, s)).expect("witness subsets classify");
                if table[p as usize] == 0 {
                    table[p as usize] = psi_cached(&orbit40(&t, !s & m)).expect("classify");
                }
            }
        }
        table
    })
}

/// ψ-number of the complement of any set with ψ-number `m`.
pub fn psi_dual(m: u8) -> Result<u8> {
    match dual_table().get(m as usize).copied() {
        Some(d) if d != 0 => Ok(d),
        _ => Err(Error::NoWitnessFound(m)),
    }
}

/// Outcome of one construction recipe applied to a set.
#[derive(Clone, Debug, Serialize)]
pub struct RecipeOutcome {
    pub psi_a: u8,
    pub psi_b: u8,
    pub recipe: String,
    pub subset: u32,
    pub observed: u8,
    pub ok: bool,
}

/// Apply every recorded construction for `ψ(a)` and report what each yields.
pub fn psi_witness_constructions(t: &Topology, a: Subset) -> Result<Vec<RecipeOutcome>> {
    let psi_a = classify_psi(t, a)?;
    let mut out = Vec::new();
    for row in reference().table9.iter().filter(|r| r.psi_a == psi_a) {
        for recipe in &row.recipes {
            let e = Expr::parse(recipe, &["A"])?;
            let b = e.eval(t, &[a.bits()]);
            let observed = psi_cached(&orbit40(t, b))?;
            out.push(RecipeOutcome {
                psi_a,
                psi_b: row.psi_b,
                recipe: recipe.clone(),
                subset: b,
                observed,
                ok: observed == row.psi_b,
            });
        }
    }
    Ok(out)
}

//! Tallies over every homeomorphism class up to a given size: monoid
//! frequencies, local and global collapse and ordering censuses, minimal
//! witnesses.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::catalog::{self, orbit40, Family, CATALOG_LEN};
use crate::classifier::{k_number, kf_number, phi_cached, psi_cached};
use crate::enumerate::{enumerate_classes, CanonicalSpace};
use crate::error::{Error, Result};
use crate::monoid::{Collapse, Ordering, SpaceType};
use crate::topology::Topology;

/// Largest universe the witness library searches.
pub const LIBRARY_MAX: usize = 8;

/// Classes on `n` points, computed once per process.
pub fn classes(n: usize) -> Arc<Vec<CanonicalSpace>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<CanonicalSpace>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(c) = cache.lock().expect("class cache").get(&n) {
        return c.clone();
    }
    let c = Arc::new(enumerate_classes(n));
    cache.lock().expect("class cache").insert(n, c.clone());
    c
}

/// SHA-256 over the canonical encodings of every class with `|X| ≤ max_n`.
pub fn provenance(max_n: usize) -> String {
    let mut h = Sha256::new();
    for n in 1..=max_n {
        for c in classes(n).iter() {
            h.update(n.to_string());
            for e in &c.encoding {
                h.update(b",");
                h.update(e.to_string());
            }
            h.update(b"\n");
        }
    }
    hex::encode(h.finalize())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CensusKind {
    KfCollapses,
    Kfg0Collapses,
    KfOrderings,
    Kfg0Orderings,
    KOrderings,
    Kf0Orderings,
    RelationClasses,
}

impl CensusKind {
    pub const ALL: [CensusKind; 7] = [
        CensusKind::KfCollapses,
        CensusKind::Kfg0Collapses,
        CensusKind::KfOrderings,
        CensusKind::Kfg0Orderings,
        CensusKind::KOrderings,
        CensusKind::Kf0Orderings,
        CensusKind::RelationClasses,
    ];

    pub fn label(self) -> &'static str {
        match self {
            CensusKind::KfCollapses => "kf-collapses",
            CensusKind::Kfg0Collapses => "kfg0-collapses",
            CensusKind::KfOrderings => "kf-orderings",
            CensusKind::Kfg0Orderings => "kfg0-orderings",
            CensusKind::KOrderings => "k-orderings",
            CensusKind::Kf0Orderings => "kf0-orderings",
            CensusKind::RelationClasses => "relation-classes",
        }
    }

    fn key_family(self) -> Family {
        match self {
            CensusKind::KfCollapses | CensusKind::KfOrderings | CensusKind::RelationClasses => {
                Family::KF
            }
            CensusKind::Kfg0Collapses | CensusKind::Kfg0Orderings => Family::KFG0,
            CensusKind::KOrderings => Family::K,
            CensusKind::Kf0Orderings => Family::KF0,
        }
    }

    fn is_collapse(self) -> bool {
        matches!(self, CensusKind::KfCollapses | CensusKind::Kfg0Collapses)
    }
}

impl fmt::Display for CensusKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for CensusKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        CensusKind::ALL
            .into_iter()
            .find(|k| k.label() == s)
            .ok_or_else(|| Error::UnknownCensus(s.to_string()))
    }
}

/// Result of a census up to `n` points.
#[derive(Clone, Debug, Serialize)]
pub struct CensusRecord {
    pub kind: String,
    pub n: usize,
    /// Classes on exactly `n` points by type, in the order of [`SpaceType::ALL`].
    pub type_counts: [usize; 7],
    pub classes: usize,
    /// Distinct keys seen over `|X| ≤ m` for `m = 1..=n`.
    pub cumulative: Vec<usize>,
    /// The distinct keys at `n`, serialized and sorted.
    pub observed: Vec<serde_json::Value>,
    pub provenance: String,
}

fn type_counts(cs: &[CanonicalSpace]) -> [usize; 7] {
    let mut out = [0usize; 7];
    for c in cs {
        out[c.space_type.index()] += 1;
    }
    out
}

/// Table of GE types over the classes on `n` points.
pub fn monoid_frequencies(n: usize) -> CensusRecord {
    let cs = classes(n);
    CensusRecord {
        kind: "monoid-frequencies".into(),
        n,
        type_counts: type_counts(&cs),
        classes: cs.len(),
        cumulative: Vec::new(),
        observed: Vec::new(),
        provenance: provenance(n),
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
enum Key {
    C(Collapse),
    O(Ordering),
}

fn key_value(k: &Key) -> serde_json::Value {
    match k {
        Key::C(c) => serde_json::to_value(c),
        Key::O(o) => serde_json::to_value(o),
    }
    .expect("keys serialize")
}

/// Keys of every subset of `t`, one set per requested kind.
fn local_keys(t: &Topology, kinds: &[CensusKind]) -> Vec<HashSet<Key>> {
    let need_order = kinds.iter().any(|k| !k.is_collapse());
    let mut out = vec![HashSet::new(); kinds.len()];
    for s in 0..=t.mask() {
        let v = orbit40(t, s);
        let full = need_order.then(|| Ordering::from_values(Family::KFG, &v));
        for (set, &k) in out.iter_mut().zip(kinds) {
            let key = if k.is_collapse() {
                Key::C(Collapse::from_values(k.key_family(), &v))
            } else {
                Key::O(
                    full.as_ref()
                        .expect("ordering computed")
                        .restrict(k.key_family()),
                )
            };
            set.insert(key);
        }
    }
    out
}

fn merge(mut a: Vec<HashSet<Key>>, b: Vec<HashSet<Key>>) -> Vec<HashSet<Key>> {
    for (x, y) in a.iter_mut().zip(b) {
        x.extend(y);
    }
    a
}

/// The relations compared by the relation-class census: `x ≤ y` for distinct
/// KF words, then `x = y` for `x < y` in catalog order.
fn relations() -> Vec<(usize, usize, bool)> {
    let m = Family::KF.members();
    let mut out = Vec::new();
    for &x in m {
        for &y in m {
            if x != y {
                out.push((x as usize, y as usize, false));
            }
        }
    }
    for (k, &x) in m.iter().enumerate() {
        for &y in &m[k + 1..] {
            out.push((x as usize, y as usize, true));
        }
    }
    out
}

fn relation_name(&(x, y, eq): &(usize, usize, bool)) -> String {
    format!(
        "{} {} {}",
        catalog::name(x),
        if eq { "=" } else { "<=" },
        catalog::name(y)
    )
}

/// Classes of relations among KF words that hold on some but not all of the
/// given local orderings, two relations being equivalent when they hold on
/// exactly the same orderings. Returns one representative per class.
pub fn relation_classes(orderings: &[Ordering]) -> Vec<String> {
    let words = orderings.len().div_ceil(64);
    let mut classes: BTreeMap<Vec<u64>, String> = BTreeMap::new();
    for r in relations() {
        let mut sig = vec![0u64; words];
        for (j, o) in orderings.iter().enumerate() {
            let (x, y, eq) = r;
            let holds = o.leq(x, y) && (!eq || o.leq(y, x));
            if holds {
                sig[j / 64] |= 1 << (j % 64);
            }
        }
        let hits: usize = sig.iter().map(|w| w.count_ones() as usize).sum();
        if hits == 0 || hits == orderings.len() {
            continue;
        }
        classes.entry(sig).or_insert_with(|| relation_name(&r));
    }
    let mut reps: Vec<String> = classes.into_values().collect();
    reps.sort();
    reps
}

/// Several censuses in one pass over the classes.
pub fn census_many(kinds: &[CensusKind], max_n: usize) -> Vec<CensusRecord> {
    // relation classes are read off the KF orderings
    let mut scan: Vec<CensusKind> = kinds
        .iter()
        .map(|&k| {
            if k == CensusKind::RelationClasses {
                CensusKind::KfOrderings
            } else {
                k
            }
        })
        .collect();
    scan.sort();
    scan.dedup();
    let mut seen: Vec<HashSet<Key>> = vec![HashSet::new(); scan.len()];
    let mut cumulative: Vec<Vec<usize>> = vec![Vec::new(); kinds.len()];
    for n in 1..=max_n {
        let cs = classes(n);
        let found = cs
            .par_iter()
            .map(|c| local_keys(&c.topology(), &scan))
            .reduce(|| vec![HashSet::new(); scan.len()], merge);
        seen = merge(seen, found);
        for (k, kind) in kinds.iter().enumerate() {
            let count = match kind {
                CensusKind::RelationClasses => relation_classes(&kf_orderings(&scan, &seen)).len(),
                _ => seen[scan.iter().position(|s| s == kind).expect("scanned")].len(),
            };
            cumulative[k].push(count);
        }
    }
    let cs = classes(max_n.max(1));
    let prov = provenance(max_n);
    kinds
        .iter()
        .zip(cumulative)
        .map(|(&kind, cumulative)| {
            let observed: Vec<serde_json::Value> = match kind {
                CensusKind::RelationClasses => relation_classes(&kf_orderings(&scan, &seen))
                    .into_iter()
                    .map(serde_json::Value::String)
                    .collect(),
                _ => {
                    let set = &seen[scan.iter().position(|s| *s == kind).expect("scanned")];
                    let mut v: Vec<(String, serde_json::Value)> = set
                        .iter()
                        .map(|k| {
                            let val = key_value(k);
                            (val.to_string(), val)
                        })
                        .collect();
                    v.sort_by(|a, b| a.0.cmp(&b.0));
                    v.into_iter().map(|(_, val)| val).collect()
                }
            };
            CensusRecord {
                kind: kind.label().into(),
                n: max_n,
                type_counts: type_counts(&cs),
                classes: cs.len(),
                cumulative,
                observed,
                provenance: prov.clone(),
            }
        })
        .collect()
}

fn kf_orderings(scan: &[CensusKind], seen: &[HashSet<Key>]) -> Vec<Ordering> {
    let k = scan
        .iter()
        .position(|s| *s == CensusKind::KfOrderings)
        .expect("scanned");
    let mut v: Vec<Ordering> = seen[k]
        .iter()
        .map(|key| match key {
            Key::O(o) => o.clone(),
            Key::C(_) => unreachable!("orderings only"),
        })
        .collect();
    v.sort();
    v
}

/// Distinct local collapses or orderings over all subsets of all classes with
/// `|X| ≤ max_n`.
pub fn census(kind: CensusKind, max_n: usize) -> CensusRecord {
    census_many(&[kind], max_n).remove(0)
}

/// Cumulative counts of distinct space-level collapses and orderings.
#[derive(Clone, Debug, Serialize)]
pub struct GlobalCensus {
    pub max_n: usize,
    /// `(n, KF collapses, KFG collapses, KF orderings, KFG orderings)`, each
    /// counted over `|X| ≤ n`.
    pub rows: Vec<(usize, usize, usize, usize, usize)>,
    pub kfg_collapses: Vec<Collapse>,
    pub kfg_orderings: Vec<Ordering>,
}

/// Space ordering over KFG as the meet of its subset orderings.
pub fn space_ordering_by_meet(t: &Topology) -> Ordering {
    let mut acc = Ordering::from_values(Family::KFG, &orbit40(t, 0));
    for s in 1..=t.mask() {
        acc = acc.meet(&Ordering::from_values(Family::KFG, &orbit40(t, s)));
    }
    acc
}

pub fn global_census(max_n: usize) -> GlobalCensus {
    let mut orders: HashSet<Ordering> = HashSet::new();
    let mut rows = Vec::new();
    for n in 1..=max_n {
        let found: HashSet<Ordering> = classes(n)
            .par_iter()
            .map(|c| space_ordering_by_meet(&c.topology()))
            .collect();
        orders.extend(found);
        let kf_orders: HashSet<Ordering> = orders.iter().map(|o| o.restrict(Family::KF)).collect();
        let kfg_c: HashSet<Collapse> = orders.iter().map(Ordering::collapse).collect();
        let kf_c: HashSet<Collapse> = kf_orders.iter().map(Ordering::collapse).collect();
        rows.push((n, kf_c.len(), kfg_c.len(), kf_orders.len(), orders.len()));
    }
    let mut kfg_orderings: Vec<Ordering> = orders.into_iter().collect();
    kfg_orderings.sort();
    let mut kfg_collapses: Vec<Collapse> = kfg_orderings.iter().map(Ordering::collapse).collect();
    kfg_collapses.sort();
    kfg_collapses.dedup();
    GlobalCensus {
        max_n,
        rows,
        kfg_collapses,
        kfg_orderings,
    }
}

/// Per-space facts gathered from one scan of its subsets.
#[derive(Clone, Debug, Serialize)]
pub struct SpaceSummary {
    /// Position in the class list for its `n`.
    pub index: usize,
    pub space_type: SpaceType,
    /// Space k- and k_f-numbers (maxima over subsets).
    pub k: u8,
    pub kf: u8,
    pub odd_kf: bool,
    /// First subset realising each φ- and ψ-number, by increasing code.
    pub first_phi: Vec<(u8, u32)>,
    pub first_psi: Vec<(u8, u32)>,
}

impl SpaceSummary {
    pub fn has_psi(&self, p: u8) -> bool {
        self.first_psi.iter().any(|&(q, _)| q == p)
    }

    pub fn psi_numbers(&self) -> Vec<u8> {
        self.first_psi.iter().map(|&(p, _)| p).collect()
    }
}

pub fn summarize(index: usize, c: &CanonicalSpace) -> Result<SpaceSummary> {
    let t = c.topology();
    let (mut k, mut kf, mut odd) = (0u8, 0u8, false);
    let mut phi = [u32::MAX; 31];
    let mut psi = [u32::MAX; 71];
    for s in 0..=t.mask() {
        let v: [u32; CATALOG_LEN] = orbit40(&t, s);
        let (a, b) = (k_number(&v) as u8, kf_number(&v) as u8);
        k = k.max(a);
        kf = kf.max(b);
        odd |= b % 2 == 1;
        let (f, p) = (phi_cached(&v)?, psi_cached(&v)?);
        if phi[f as usize] == u32::MAX {
            phi[f as usize] = s;
        }
        if psi[p as usize] == u32::MAX {
            psi[p as usize] = s;
        }
    }
    let firsts = |tab: &[u32]| {
        tab.iter()
            .enumerate()
            .filter(|(_, &s)| s != u32::MAX)
            .map(|(p, &s)| (p as u8, s))
            .collect()
    };
    Ok(SpaceSummary {
        index,
        space_type: c.space_type,
        k,
        kf,
        odd_kf: odd,
        first_phi: firsts(&phi),
        first_psi: firsts(&psi),
    })
}

/// Summaries of every class on `n` points, computed once per process.
pub fn summaries(n: usize) -> Result<Arc<Vec<SpaceSummary>>> {
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<SpaceSummary>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(s) = cache.lock().expect("summary cache").get(&n) {
        return Ok(s.clone());
    }
    let cs = classes(n);
    let v: Vec<SpaceSummary> = cs
        .par_iter()
        .enumerate()
        .map(|(i, c)| summarize(i, c))
        .collect::<Result<_>>()?;
    let v = Arc::new(v);
    cache.lock().expect("summary cache").insert(n, v.clone());
    Ok(v)
}

/// Smallest `n ≤ max_n` with a class satisfying `pred`, and the first such
/// class in canonical order.
pub fn minimal_search<F>(max_n: usize, pred: F) -> Result<(usize, CanonicalSpace)>
where
    F: Fn(&Topology) -> bool + Sync,
{
    for n in 1..=max_n {
        let cs = classes(n);
        if let Some(c) = cs.par_iter().find_first(|c| pred(&c.topology())) {
            return Ok((n, c.clone()));
        }
    }
    Err(Error::NotFoundWithinBound(max_n))
}

/// As [`minimal_search`] for a predicate on a space and one of its subsets;
/// the subset is the least code satisfying it.
pub fn minimal_subset_search<F>(max_n: usize, pred: F) -> Result<(usize, CanonicalSpace, u32)>
where
    F: Fn(&Topology, u32) -> bool + Sync,
{
    for n in 1..=max_n {
        let cs = classes(n);
        let hit = cs.par_iter().find_map_first(|c| {
            let t = c.topology();
            (0..=t.mask())
                .find(|&s| pred(&t, s))
                .map(|s| (c.clone(), s))
        });
        if let Some((c, s)) = hit {
            return Ok((n, c, s));
        }
    }
    Err(Error::NotFoundWithinBound(max_n))
}

/// The first (space, subset) realising a class number, in order of `n`, then
/// canonical encoding, then subset code.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub n: usize,
    pub space: CanonicalSpace,
    pub subset: u32,
}

pub struct WitnessLibrary {
    pub phi: BTreeMap<u8, Witness>,
    pub psi: BTreeMap<u8, Witness>,
}

impl WitnessLibrary {
    pub fn psi(&self, m: u8) -> Result<&Witness> {
        self.psi.get(&m).ok_or(Error::MissingWitness(m))
    }

    pub fn phi(&self, m: u8) -> Result<&Witness> {
        self.phi.get(&m).ok_or(Error::MissingWitness(m))
    }
}

/// Witnesses for every φ and ψ from classes with `|X| ≤ 8`.
pub fn witness_library() -> Result<&'static WitnessLibrary> {
    static LIB: OnceLock<WitnessLibrary> = OnceLock::new();
    if let Some(l) = LIB.get() {
        return Ok(l);
    }
    let mut phi = BTreeMap::new();
    let mut psi = BTreeMap::new();
    for n in 1..=LIBRARY_MAX {
        let cs = classes(n);
        for s in summaries(n)?.iter() {
            let space = &cs[s.index];
            for &(p, a) in &s.first_phi {
                phi.entry(p).or_insert_with(|| Witness {
                    n,
                    space: space.clone(),
                    subset: a,
                });
            }
            for &(p, a) in &s.first_psi {
                psi.entry(p).or_insert_with(|| Witness {
                    n,
                    space: space.clone(),
                    subset: a,
                });
            }
        }
        if phi.len() == 30 && psi.len() == 70 {
            break;
        }
    }
    Ok(LIB.get_or_init(|| WitnessLibrary { phi, psi }))
}

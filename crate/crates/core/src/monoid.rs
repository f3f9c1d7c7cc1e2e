//! Operator monoids of a space, global collapses and orderings, space types.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize, Serializer};

use crate::catalog::{self, orbit40, Family, OperatorWord, CATALOG_LEN};
use crate::error::{Error, Result};
use crate::operator::{compose, word_to_operator, SetOperator};
use crate::topology::Topology;

/// The seven GE monoid types.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum SpaceType {
    GE,
    KD,
    ED,
    OU,
    EO,
    P,
    D,
}

impl SpaceType {
    /// Column order of the frequency table.
    pub const ALL: [SpaceType; 7] = [
        SpaceType::GE,
        SpaceType::KD,
        SpaceType::ED,
        SpaceType::OU,
        SpaceType::EO,
        SpaceType::P,
        SpaceType::D,
    ];

    pub fn label(self) -> &'static str {
        match self {
            SpaceType::GE => "GE",
            SpaceType::KD => "KD",
            SpaceType::ED => "ED",
            SpaceType::OU => "OU",
            SpaceType::EO => "EO",
            SpaceType::P => "P",
            SpaceType::D => "D",
        }
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// |K| for spaces of this type.
    pub fn k_size(self) -> usize {
        match self {
            SpaceType::GE | SpaceType::KD => 14,
            SpaceType::ED | SpaceType::OU => 10,
            SpaceType::EO => 8,
            SpaceType::P => 6,
            SpaceType::D => 2,
        }
    }

    /// |KF| for spaces of this type.
    pub fn kf_size(self) -> usize {
        match self {
            SpaceType::GE => 34,
            SpaceType::KD => 28,
            SpaceType::ED => 22,
            SpaceType::OU => 20,
            SpaceType::EO => 16,
            SpaceType::P => 10,
            SpaceType::D => 4,
        }
    }
}

impl fmt::Display for SpaceType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for SpaceType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        SpaceType::ALL
            .into_iter()
            .find(|t| t.label() == s)
            .ok_or_else(|| Error::InvalidTopology(format!("unknown space type {s}")))
    }
}

/// The ten KFG monoid types. The `1` variants have more classes than the `2`
/// variants of the same GE type.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum KfgType {
    GE,
    KD,
    ED1,
    ED2,
    OU1,
    OU2,
    EO1,
    EO2,
    P,
    D,
}

impl KfgType {
    pub const ALL: [KfgType; 10] = [
        KfgType::GE,
        KfgType::KD,
        KfgType::ED1,
        KfgType::ED2,
        KfgType::OU1,
        KfgType::OU2,
        KfgType::EO1,
        KfgType::EO2,
        KfgType::P,
        KfgType::D,
    ];

    pub fn label(self) -> &'static str {
        match self {
            KfgType::GE => "GE",
            KfgType::KD => "KD",
            KfgType::ED1 => "ED1",
            KfgType::ED2 => "ED2",
            KfgType::OU1 => "OU1",
            KfgType::OU2 => "OU2",
            KfgType::EO1 => "EO1",
            KfgType::EO2 => "EO2",
            KfgType::P => "P",
            KfgType::D => "D",
        }
    }

    pub fn space_type(self) -> SpaceType {
        match self {
            KfgType::GE => SpaceType::GE,
            KfgType::KD => SpaceType::KD,
            KfgType::ED1 | KfgType::ED2 => SpaceType::ED,
            KfgType::OU1 | KfgType::OU2 => SpaceType::OU,
            KfgType::EO1 | KfgType::EO2 => SpaceType::EO,
            KfgType::P => SpaceType::P,
            KfgType::D => SpaceType::D,
        }
    }
}

impl FromStr for KfgType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        KfgType::ALL
            .into_iter()
            .find(|t| t.label() == s)
            .ok_or_else(|| Error::InvalidTopology(format!("unknown KFG type {s}")))
    }
}

/// A partition of a catalog family into classes of equal operators.
///
/// Stored as the first-occurrence class label of each member in catalog order,
/// which makes equality of partitions plain vector equality.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Collapse {
    family: Family,
    labels: Vec<u8>,
}

impl Collapse {
    /// Partition induced by any key per member.
    pub fn from_keys<K: PartialEq>(family: Family, keys: &[K]) -> Self {
        debug_assert_eq!(keys.len(), family.len());
        let mut reps: Vec<&K> = Vec::new();
        let labels = keys
            .iter()
            .map(|k| match reps.iter().position(|r| *r == k) {
                Some(p) => p as u8,
                None => {
                    reps.push(k);
                    (reps.len() - 1) as u8
                }
            })
            .collect();
        Self { family, labels }
    }

    /// Partition from catalog-indexed values (only members are read).
    pub fn from_values(family: Family, values: &[u32; CATALOG_LEN]) -> Self {
        let keys: Vec<u32> = family
            .members()
            .iter()
            .map(|&i| values[i as usize])
            .collect();
        Self::from_keys(family, &keys)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn class_count(&self) -> usize {
        self.labels
            .iter()
            .copied()
            .max()
            .map_or(0, |m| m as usize + 1)
    }

    /// Whether catalog words `x` and `y` share a class.
    pub fn same(&self, x: usize, y: usize) -> bool {
        let pos = |w: usize| self.family.members().iter().position(|&m| m as usize == w);
        match (pos(x), pos(y)) {
            (Some(a), Some(b)) => self.labels[a] == self.labels[b],
            _ => false,
        }
    }

    /// Classes as sorted lists of names, ordered by first member.
    pub fn classes(&self) -> Vec<Vec<&'static str>> {
        let mut out: Vec<Vec<&'static str>> = vec![Vec::new(); self.class_count()];
        for (k, &m) in self.family.members().iter().enumerate() {
            out[self.labels[k] as usize].push(catalog::name(m as usize));
        }
        for c in &mut out {
            c.sort_unstable();
        }
        out.sort();
        out
    }

    /// Classes of the two collapses intersected (equal in both).
    pub fn intersect(&self, other: &Collapse) -> Result<Collapse> {
        if self.family != other.family {
            return Err(Error::InvalidTopology(
                "collapses over different families".into(),
            ));
        }
        let keys: Vec<(u8, u8)> = self
            .labels
            .iter()
            .zip(&other.labels)
            .map(|(&x, &y)| (x, y))
            .collect();
        Ok(Collapse::from_keys(self.family, &keys))
    }

    /// Every equality of `other` also holds here.
    pub fn refines(&self, other: &Collapse) -> bool {
        self.family == other.family && {
            let n = self.labels.len();
            (0..n).all(|x| {
                (x + 1..n)
                    .all(|y| other.labels[x] != other.labels[y] || self.labels[x] == self.labels[y])
            })
        }
    }

    /// Restriction to a subfamily.
    pub fn restrict(&self, family: Family) -> Collapse {
        let keys: Vec<u8> = family
            .members()
            .iter()
            .map(|m| {
                let p = self
                    .family
                    .members()
                    .iter()
                    .position(|x| x == m)
                    .expect("subfamily");
                self.labels[p]
            })
            .collect();
        Collapse::from_keys(family, &keys)
    }
}

impl fmt::Debug for Collapse {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Collapse{:?}", self.classes())
    }
}

impl Serialize for Collapse {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.classes().serialize(s)
    }
}

/// Inclusions `o1 ≤ o2` satisfied over a catalog family, kept reflexively and
/// transitively closed. Row `x` holds the catalog indices `y` with `x ≤ y`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ordering {
    family: Family,
    rows: [u64; CATALOG_LEN],
}

impl Ordering {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rows(&self) -> &[u64; CATALOG_LEN] {
        &self.rows
    }

    /// Build from raw rows; rows outside the family are cleared.
    pub fn from_rows(family: Family, mut rows: [u64; CATALOG_LEN]) -> Self {
        let mask = family.mask();
        for (x, r) in rows.iter_mut().enumerate() {
            *r = if mask >> x & 1 == 1 { *r & mask } else { 0 };
        }
        Self { family, rows }
    }

    /// Ordering of the values in `values`, read as subsets under inclusion.
    pub fn from_values(family: Family, values: &[u32; CATALOG_LEN]) -> Self {
        let members = family.members();
        let mut distinct: Vec<u32> = Vec::with_capacity(members.len());
        let mut masks: Vec<u64> = Vec::with_capacity(members.len());
        for &m in members {
            let v = values[m as usize];
            match distinct.iter().position(|&d| d == v) {
                Some(p) => masks[p] |= 1 << m,
                None => {
                    distinct.push(v);
                    masks.push(1 << m);
                }
            }
        }
        let mut up = vec![0u64; distinct.len()];
        for (p, &v) in distinct.iter().enumerate() {
            for (q, &w) in distinct.iter().enumerate() {
                if v & !w == 0 {
                    up[p] |= masks[q];
                }
            }
        }
        let mut rows = [0u64; CATALOG_LEN];
        for (p, &mk) in masks.iter().enumerate() {
            let mut rest = mk;
            while rest != 0 {
                let x = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                rows[x] = up[p];
            }
        }
        Self { family, rows }
    }

    /// Reflexive-transitive closure of a list of pairs.
    pub fn from_pairs(family: Family, pairs: &[(usize, usize)]) -> Self {
        let mask = family.mask();
        let mut rows = [0u64; CATALOG_LEN];
        for &m in family.members() {
            rows[m as usize] = 1 << m;
        }
        for &(x, y) in pairs {
            if mask >> x & 1 == 1 && mask >> y & 1 == 1 {
                rows[x] |= 1 << y;
            }
        }
        // Warshall
        for &k in family.members() {
            let k = k as usize;
            for &x in family.members() {
                let x = x as usize;
                if rows[x] >> k & 1 == 1 {
                    rows[x] |= rows[k];
                }
            }
        }
        Self { family, rows }
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.rows[x] >> y & 1 == 1
    }

    /// Intersection of two orderings (pairs satisfied by both).
    pub fn meet(&self, other: &Ordering) -> Ordering {
        let mut rows = self.rows;
        for (r, o) in rows.iter_mut().zip(other.rows.iter()) {
            *r &= o;
        }
        Ordering {
            family: self.family,
            rows,
        }
    }

    /// Restriction to a subfamily.
    pub fn restrict(&self, family: Family) -> Ordering {
        Ordering::from_rows(family, self.rows)
    }

    pub fn pair_count(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones() as usize).sum()
    }

    /// Every pair as catalog indices, ordered by catalog index.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.pair_count());
        for &x in self.family.members() {
            let mut rest = self.rows[x as usize];
            while rest != 0 {
                let y = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                out.push((x as usize, y));
            }
        }
        out
    }

    pub fn is_subset_of(&self, other: &Ordering) -> bool {
        self.rows
            .iter()
            .zip(other.rows.iter())
            .all(|(a, b)| a & !b == 0)
    }

    /// Equality classes implied by mutual inclusion.
    pub fn collapse(&self) -> Collapse {
        let keys: Vec<u64> = self
            .family
            .members()
            .iter()
            .map(|&x| {
                let x = x as usize;
                // the class of x: y with x ≤ y and y ≤ x
                let mut cls = 0u64;
                let mut rest = self.rows[x];
                while rest != 0 {
                    let y = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    if self.rows[y] >> x & 1 == 1 {
                        cls |= 1 << y;
                    }
                }
                cls
            })
            .collect();
        Collapse::from_keys(self.family, &keys)
    }
}

impl fmt::Debug for Ordering {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Ordering({:?}, {} pairs)",
            self.family,
            self.pair_count()
        )
    }
}

impl Serialize for Ordering {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut names: Vec<(&str, &str)> = self
            .pairs()
            .into_iter()
            .map(|(x, y)| (catalog::name(x), catalog::name(y)))
            .collect();
        names.sort_unstable();
        names.serialize(s)
    }
}

/// Values of every catalog word at every subset: `cols[w][s]`.
pub struct WordTables {
    cols: Vec<Vec<u32>>,
}

impl WordTables {
    pub fn new(t: &Topology) -> Self {
        let size = 1usize << t.n();
        let mut cols = vec![vec![0u32; size]; CATALOG_LEN];
        for s in 0..size {
            let v = orbit40(t, s as u32);
            for (w, col) in cols.iter_mut().enumerate() {
                col[s] = v[w];
            }
        }
        Self { cols }
    }

    pub fn column(&self, w: usize) -> &[u32] {
        &self.cols[w]
    }

    pub fn leq(&self, x: usize, y: usize) -> bool {
        self.cols[x]
            .iter()
            .zip(&self.cols[y])
            .all(|(&a, &b)| a & !b == 0)
    }

    pub fn collapse(&self, family: Family) -> Collapse {
        let keys: Vec<&Vec<u32>> = family
            .members()
            .iter()
            .map(|&m| &self.cols[m as usize])
            .collect();
        Collapse::from_keys(family, &keys)
    }

    pub fn ordering(&self, family: Family) -> Ordering {
        let mut rows = [0u64; CATALOG_LEN];
        for &x in family.members() {
            for &y in family.members() {
                if self.leq(x as usize, y as usize) {
                    rows[x as usize] |= 1 << y;
                }
            }
        }
        Ordering { family, rows }
    }
}

/// Closure of `{id}` under left multiplication by the generators.
pub fn generate_monoid(t: &Topology, generators: &[OperatorWord]) -> Vec<SetOperator> {
    let gens: Vec<SetOperator> = generators.iter().map(|g| word_to_operator(t, g)).collect();
    let id = SetOperator::identity(t.n());
    let mut seen: HashSet<SetOperator> = HashSet::new();
    let mut out = Vec::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(o) = queue.pop_front() {
        for g in &gens {
            let p = compose(g, &o).expect("same universe");
            if seen.insert(p.clone()) {
                queue.push_back(p);
            }
        }
        out.push(o);
    }
    out
}

/// The KFG operators: the monoid generated by `{b, i, f, g}` together with
/// its left multiples by `a`. The monoid generated by `{a, b, f, g}` is in
/// general larger, since `{a, g}` alone can generate an infinite monoid.
pub fn kfg_operators(t: &Topology) -> Vec<SetOperator> {
    let even: Vec<OperatorWord> = ["b", "i", "f", "g"]
        .iter()
        .map(|w| OperatorWord::parse(w).expect("catalog word"))
        .collect();
    let even = generate_monoid(t, &even);
    let a = word_to_operator(t, &OperatorWord::parse("a").expect("catalog word"));
    let mut seen: HashSet<SetOperator> = even.iter().cloned().collect();
    let mut out = even.clone();
    for o in &even {
        let p = compose(&a, o).expect("same universe");
        if seen.insert(p.clone()) {
            out.push(p);
        }
    }
    out
}

/// Parse a generator spelling such as `abf` into single-letter words.
pub fn parse_generators(spec: &str) -> Result<Vec<OperatorWord>> {
    spec.chars()
        .map(|c| OperatorWord::parse(&c.to_string()))
        .collect()
}

/// Catalog names attached to each operator in `ops` (the first matching
/// catalog word), or `None` for operators outside the catalog.
pub fn label_operators(t: &Topology, ops: &[SetOperator]) -> Vec<Option<&'static str>> {
    let tables = WordTables::new(t);
    let mut by_table: HashMap<&[u32], usize> = HashMap::new();
    for w in (0..CATALOG_LEN).rev() {
        by_table.insert(tables.column(w), w);
    }
    ops.iter()
        .map(|o| by_table.get(o.table()).map(|&w| catalog::name(w)))
        .collect()
}

pub fn space_collapse(t: &Topology, family: Family) -> Collapse {
    WordTables::new(t).collapse(family)
}

pub fn space_ordering(t: &Topology, family: Family) -> Ordering {
    WordTables::new(t).ordering(family)
}

/// Which of `ib`, `bi`, `b` equal `bib` on the whole space, and whether
/// `fif` vanishes everywhere.
fn s_set(t: &Topology) -> (bool, bool, bool, bool) {
    let (mut ib, mut bi, mut b, mut fif0) = (true, true, true, true);
    for s in 0..=t.mask() {
        let cl = t.cl(s);
        let iv = t.int(s);
        let biv = t.cl(iv);
        let ibv = t.int(cl);
        let bibv = t.cl(ibv);
        ib &= ibv == bibv;
        bi &= biv == bibv;
        b &= cl == bibv;
        if fif0 {
            let f = cl & !iv;
            let iff = t.int(f);
            fif0 = t.cl(iff) == iff;
        }
        if !ib && !bi && !b && !fif0 {
            break;
        }
    }
    (ib, bi, b, fif0)
}

/// The GE monoid type of a space.
pub fn classify_space(t: &Topology) -> Result<SpaceType> {
    Ok(match s_set(t) {
        (false, false, false, false) => SpaceType::GE,
        (false, false, false, true) => SpaceType::KD,
        (true, false, false, _) => SpaceType::ED,
        (false, true, false, _) => SpaceType::OU,
        (true, true, false, _) => SpaceType::EO,
        (true, false, true, _) => SpaceType::P,
        (true, true, true, _) => SpaceType::D,
        other => {
            return Err(Error::InvalidTopology(format!(
                "S-set (ib, bi, b) = {:?} matches no space type",
                (other.0, other.1, other.2)
            )))
        }
    })
}

/// The KFG monoid type of a space.
pub fn classify_kfg(t: &Topology) -> Result<KfgType> {
    let st = classify_space(t)?;
    let holds = |x: usize, y: usize| {
        (0..=t.mask()).all(|s| {
            let v = orbit40(t, s);
            v[x] == v[y]
        })
    };
    use catalog::{BG, FB, FBG, G};
    Ok(match st {
        SpaceType::GE => KfgType::GE,
        SpaceType::KD => KfgType::KD,
        SpaceType::ED if holds(FBG, FB) => KfgType::ED2,
        SpaceType::ED => KfgType::ED1,
        SpaceType::OU if holds(G, BG) => KfgType::OU2,
        SpaceType::OU => KfgType::OU1,
        SpaceType::EO if holds(FB, G) => KfgType::EO2,
        SpaceType::EO => KfgType::EO1,
        SpaceType::P => KfgType::P,
        SpaceType::D => KfgType::D,
    })
}

fn representatives() -> &'static HashMap<KfgType, Collapse> {
    static REPS: OnceLock<HashMap<KfgType, Collapse>> = OnceLock::new();
    REPS.get_or_init(|| {
        let mut out = HashMap::new();
        for n in 1..=6 {
            for c in crate::enumerate::enumerate_classes(n) {
                let t = c.topology();
                let k = classify_kfg(&t).expect("enumerated spaces are valid");
                out.entry(k)
                    .or_insert_with(|| space_collapse(&t, Family::KFG));
            }
            if out.len() == KfgType::ALL.len() {
                break;
            }
        }
        out
    })
}

/// Global KFG collapse shared by all spaces of the given type, taken from the
/// smallest representative.
pub fn canonical_kfg_collapse(t: KfgType) -> Option<&'static Collapse> {
    representatives().get(&t)
}

/// `t1 ≤ t2` in the homomorphism order: every equation of `t2` holds in `t1`.
pub fn projection_order_kfg(t1: KfgType, t2: KfgType) -> bool {
    match (canonical_kfg_collapse(t1), canonical_kfg_collapse(t2)) {
        (Some(c1), Some(c2)) => c1.refines(c2),
        _ => false,
    }
}

/// The homomorphism order on the seven GE types, read on the KF collapses.
pub fn projection_order(t1: SpaceType, t2: SpaceType) -> bool {
    let kf = |t: SpaceType| {
        KfgType::ALL
            .iter()
            .filter(|k| k.space_type() == t)
            .filter_map(|&k| canonical_kfg_collapse(k))
            .map(|c| c.restrict(Family::KF))
            .next()
    };
    match (kf(t1), kf(t2)) {
        (Some(c1), Some(c2)) => c1.refines(&c2),
        _ => false,
    }
}

/// Covering pairs `(lower, upper)` of the homomorphism order on KFG types.
pub fn hasse_kfg() -> Vec<(KfgType, KfgType)> {
    let all = KfgType::ALL;
    let lt = |a: KfgType, b: KfgType| a != b && projection_order_kfg(a, b);
    let mut out = Vec::new();
    for &a in &all {
        for &b in &all {
            if lt(a, b) && !all.iter().any(|&c| lt(a, c) && lt(c, b)) {
                out.push((a, b));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::name;

    fn base(b: &[&str]) -> Topology {
        Topology::from_letter_base(b).unwrap()
    }

    fn ge() -> Topology {
        base(&["w", "x y", "w x y z"])
    }

    fn kd() -> Topology {
        base(&["v", "w", "v w x", "y z"])
    }

    fn gens(s: &str) -> Vec<OperatorWord> {
        parse_generators(s).unwrap()
    }

    #[test]
    fn monoid_sizes() {
        assert_eq!(generate_monoid(&ge(), &gens("ab")).len(), 14);
        assert_eq!(
            generate_monoid(&Topology::discrete(1).unwrap(), &gens("abf")).len(),
            4
        );
        assert_eq!(generate_monoid(&kd(), &gens("abf")).len(), 28);
        assert_eq!(generate_monoid(&ge(), &gens("abf")).len(), 34);
    }

    #[test]
    fn kfg_operators_are_the_catalog() {
        for n in 1..=4 {
            for c in crate::enumerate::enumerate_classes(n) {
                let t = c.topology();
                let tables = WordTables::new(&t);
                let from_words: HashSet<Vec<u32>> = (0..CATALOG_LEN)
                    .map(|w| tables.column(w).to_vec())
                    .collect();
                let ops: HashSet<Vec<u32>> = kfg_operators(&t)
                    .iter()
                    .map(|o| o.table().to_vec())
                    .collect();
                assert_eq!(ops, from_words, "{:?}", c.encoding);
            }
        }
        assert_eq!(kfg_operators(&ge()).len(), 40);
        assert!(generate_monoid(&ge(), &gens("abfg")).len() > 40);
    }

    #[test]
    fn kf_monoid_is_the_catalog() {
        for t in [ge(), kd(), Topology::sierpinski(), base(&["x y", "x y z"])] {
            let ops = generate_monoid(&t, &gens("abf"));
            let tables = WordTables::new(&t);
            let mut from_words: HashSet<Vec<u32>> = HashSet::new();
            for &m in Family::KF.members() {
                from_words.insert(tables.column(m as usize).to_vec());
            }
            let generated: HashSet<Vec<u32>> = ops.iter().map(|o| o.table().to_vec()).collect();
            assert_eq!(generated, from_words);
            assert!(label_operators(&t, &ops).iter().all(|l| l.is_some()));
        }
    }

    #[test]
    fn space_types_of_minimal_spaces() {
        assert_eq!(classify_space(&ge()).unwrap(), SpaceType::GE);
        assert_eq!(classify_space(&kd()).unwrap(), SpaceType::KD);
        assert_eq!(
            classify_space(&Topology::sierpinski()).unwrap(),
            SpaceType::EO
        );
        assert_eq!(classify_space(&base(&["x y"])).unwrap(), SpaceType::P);
        assert_eq!(
            classify_space(&base(&["x y", "x y z"])).unwrap(),
            SpaceType::ED
        );
        assert_eq!(
            classify_space(&base(&["x", "y", "x y z"])).unwrap(),
            SpaceType::OU
        );
        assert_eq!(
            classify_space(&Topology::discrete(1).unwrap()).unwrap(),
            SpaceType::D
        );
    }

    #[test]
    fn collapse_examples() {
        let c = space_collapse(&Topology::discrete(1).unwrap(), Family::KF);
        assert_eq!(c.class_count(), 4);
        assert!(c.same(catalog::B, catalog::I) && c.same(catalog::ID, catalog::B));
        assert!(c.same(catalog::F, catalog::ZERO));
        assert_eq!(space_collapse(&ge(), Family::KF).class_count(), 34);
        assert_eq!(
            space_collapse(&Topology::sierpinski(), Family::KF).class_count(),
            16
        );
        assert_eq!(space_collapse(&kd(), Family::KF).class_count(), 28);
    }

    #[test]
    fn ordering_examples() {
        let s = space_ordering(&Topology::sierpinski(), Family::KF);
        assert!(s.leq(catalog::FB, catalog::ID));
        let d = space_ordering(&Topology::discrete(1).unwrap(), Family::KF);
        assert!(!d.leq(catalog::ID, catalog::A) && !d.leq(catalog::A, catalog::ID));
    }

    #[test]
    fn ordering_from_values_matches_pairwise() {
        let t = ge();
        for s in 0..16 {
            let v = orbit40(&t, s);
            let o = Ordering::from_values(Family::KFG, &v);
            for x in 0..CATALOG_LEN {
                for y in 0..CATALOG_LEN {
                    assert_eq!(o.leq(x, y), v[x] & !v[y] == 0, "{} {}", name(x), name(y));
                }
            }
            assert_eq!(o.collapse(), Collapse::from_values(Family::KFG, &v));
        }
    }

    #[test]
    fn collapse_intersection_and_refinement() {
        let a = Collapse::from_keys(Family::K0, &[0, 0, 1, 1, 2, 2, 2]);
        let b = Collapse::from_keys(Family::K0, &[5, 5, 5, 6, 6, 7, 7]);
        let m = a.intersect(&b).unwrap();
        assert_eq!(m.labels(), &[0, 0, 1, 2, 3, 4, 4]);
        assert!(m.refines(&m));
        assert!(!m.refines(&a));
        assert!(a.refines(&m));
        assert_eq!(a.classes()[0], vec!["b", "id"]);
    }

    #[test]
    fn kd_detection_matches_clopen_criterion() {
        for t in [ge(), kd()] {
            let m = t.mask();
            let clopen = (0..=m).all(|s| {
                let f = t.cl(s) & t.cl(!s & m);
                let i = t.int(f);
                t.cl(i) == i
            });
            let kf = generate_monoid(&t, &gens("abf")).len();
            assert_eq!(clopen, kf == 28);
        }
    }
}

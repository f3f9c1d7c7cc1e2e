//! Finite spaces stored as closure tables.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::subset::{universe_mask, Subset, MAX_POINTS};

/// A finite topological space on points `0..n`, held as its closure table.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Topology {
    n: usize,
    closure: Vec<u32>,
}

/// One of the four closure axioms.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Axiom {
    /// b∅ = ∅
    EmptyFixed,
    /// A ⊆ bA
    Extensive,
    /// bbA = bA
    Idempotent,
    /// b(A∪B) = bA ∪ bB
    Additive,
}

impl Axiom {
    pub fn label(self) -> &'static str {
        match self {
            Axiom::EmptyFixed => "b∅=∅",
            Axiom::Extensive => "extensive",
            Axiom::Idempotent => "idempotent",
            Axiom::Additive => "additivity",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub axiom: Axiom,
    /// Subset codes exhibiting the failure (one code, or a pair for additivity).
    pub witness: Vec<u32>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violates(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

fn check_n(n: usize) -> Result<()> {
    if n == 0 || n > MAX_POINTS {
        Err(Error::UniverseTooLarge { n, max: MAX_POINTS })
    } else {
        Ok(())
    }
}

/// Fill a closure table from the closures of singletons.
fn fill_from_points(n: usize, cl1: &[u32]) -> Vec<u32> {
    let size = 1usize << n;
    let mut closure = vec![0u32; size];
    for s in 1..size {
        let low = s.trailing_zeros() as usize;
        closure[s] = closure[s & (s - 1)] | cl1[low];
    }
    closure
}

impl Topology {
    /// Space whose open sets are generated by `base`.
    ///
    /// Each point gets the intersection of the base members containing it as
    /// its smallest neighbourhood, so any family is accepted as a subbase.
    pub fn from_base(base: &[Subset], n: usize) -> Result<Self> {
        check_n(n)?;
        let mask = universe_mask(n);
        let mut covered = 0u32;
        for b in base {
            if b.bits() & !mask != 0 {
                return Err(Error::InvalidTopology(format!(
                    "base element {:#b} does not fit a universe of {n} points",
                    b.bits()
                )));
            }
            covered |= b.bits();
        }
        if covered != mask {
            return Err(Error::BaseDoesNotCoverUniverse {
                missing: mask & !covered,
            });
        }
        let nbhd: Vec<u32> = (0..n)
            .map(|p| {
                base.iter()
                    .filter(|b| b.contains(p))
                    .fold(mask, |acc, b| acc & b.bits())
            })
            .collect();
        let mut cl1 = vec![0u32; n];
        for (q, &u) in nbhd.iter().enumerate() {
            for (p, c) in cl1.iter_mut().enumerate() {
                if u >> p & 1 == 1 {
                    *c |= 1 << q;
                }
            }
        }
        Ok(Self {
            n,
            closure: fill_from_points(n, &cl1),
        })
    }

    /// Build from base elements written as strings of single-letter point names.
    ///
    /// Points are numbered by the alphabetical order of all letters used.
    pub fn from_letter_base(base: &[&str]) -> Result<Self> {
        let letters: BTreeSet<char> = base
            .iter()
            .flat_map(|s| s.chars())
            .filter(|c| !c.is_whitespace())
            .collect();
        let letters: Vec<char> = letters.into_iter().collect();
        let n = letters.len();
        check_n(n)?;
        let mut subsets = Vec::with_capacity(base.len());
        for s in base {
            let mut bits = 0u32;
            for c in s.chars().filter(|c| !c.is_whitespace()) {
                bits |= 1 << letters.binary_search(&c).expect("letter collected above");
            }
            subsets.push(Subset::from_raw(bits, n));
        }
        Self::from_base(&subsets, n)
    }

    /// Space with the given singleton closures; `cl1[p]` must contain `p` and be
    /// transitively closed.
    pub fn from_point_closures(n: usize, cl1: &[u32]) -> Result<Self> {
        check_n(n)?;
        if cl1.len() != n {
            return Err(Error::InvalidTopology(format!(
                "expected {n} point closures, got {}",
                cl1.len()
            )));
        }
        let mask = universe_mask(n);
        for (p, &c) in cl1.iter().enumerate() {
            if c & !mask != 0 || c >> p & 1 == 0 {
                return Err(Error::InvalidTopology(format!(
                    "closure of point {p} is {c:#b}"
                )));
            }
            let mut rest = c;
            while rest != 0 {
                let q = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if cl1[q] & !c != 0 {
                    return Err(Error::InvalidTopology(format!(
                        "closure of point {p} is not transitively closed"
                    )));
                }
            }
        }
        Ok(Self {
            n,
            closure: fill_from_points(n, cl1),
        })
    }

    /// Same as [`Topology::from_point_closures`] without the checks.
    pub(crate) fn from_point_closures_unchecked(n: usize, cl1: &[u32]) -> Self {
        Self {
            n,
            closure: fill_from_points(n, cl1),
        }
    }

    /// Wrap a raw closure table after checking the four axioms.
    pub fn from_closure_table(n: usize, closure: Vec<u32>) -> Result<Self> {
        let t = Self::from_closure_table_unchecked(n, closure)?;
        let report = validate(&t);
        if let Some(v) = report.violations.first() {
            return Err(Error::InvalidTopology(format!(
                "axiom {} fails at {:?}",
                v.axiom.label(),
                v.witness
            )));
        }
        Ok(t)
    }

    /// Wrap a raw closure table checking only its shape. The axioms may fail;
    /// use [`validate`] to inspect them.
    pub fn from_closure_table_unchecked(n: usize, closure: Vec<u32>) -> Result<Self> {
        check_n(n)?;
        if closure.len() != 1 << n {
            return Err(Error::InvalidTopology(format!(
                "closure table has {} entries, expected {}",
                closure.len(),
                1usize << n
            )));
        }
        let mask = universe_mask(n);
        if let Some(s) = closure.iter().position(|&c| c & !mask != 0) {
            return Err(Error::InvalidTopology(format!(
                "entry {s} leaves the universe"
            )));
        }
        Ok(Self { n, closure })
    }

    pub fn discrete(n: usize) -> Result<Self> {
        let cl1: Vec<u32> = (0..n).map(|p| 1 << p).collect();
        Self::from_point_closures(n, &cl1)
    }

    pub fn indiscrete(n: usize) -> Result<Self> {
        Self::from_point_closures(n, &vec![universe_mask(n); n])
    }

    /// Two points, opens ∅, {x}, X.
    pub fn sierpinski() -> Self {
        Self::from_point_closures_unchecked(2, &[0b11, 0b10])
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mask(&self) -> u32 {
        universe_mask(self.n)
    }

    pub fn closure_table(&self) -> &[u32] {
        &self.closure
    }

    #[inline]
    pub fn cl(&self, s: u32) -> u32 {
        self.closure[s as usize]
    }

    #[inline]
    pub fn int(&self, s: u32) -> u32 {
        let m = self.mask();
        !self.closure[(!s & m) as usize] & m
    }

    pub fn point_closure(&self, p: usize) -> u32 {
        self.closure[1 << p]
    }

    pub fn point_closures(&self) -> Vec<u32> {
        (0..self.n).map(|p| self.point_closure(p)).collect()
    }

    /// Smallest open set containing each point.
    pub fn neighbourhoods(&self) -> Vec<u32> {
        let cl1 = self.point_closures();
        (0..self.n)
            .map(|p| {
                (0..self.n)
                    .filter(|&q| cl1[q] >> p & 1 == 1)
                    .fold(0u32, |acc, q| acc | 1 << q)
            })
            .collect()
    }

    pub fn is_open(&self, s: u32) -> bool {
        self.int(s) == s
    }

    pub fn is_closed(&self, s: u32) -> bool {
        self.cl(s) == s
    }

    /// All open sets in increasing code order.
    pub fn opens(&self) -> Vec<u32> {
        (0..=self.mask()).filter(|&s| self.is_open(s)).collect()
    }

    /// Image of the space under the relabeling `p ↦ perm[p]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n {
            return Err(Error::InvalidTopology(
                "permutation has the wrong length".into(),
            ));
        }
        let mut seen = 0u32;
        for &q in perm {
            if q >= self.n || seen >> q & 1 == 1 {
                return Err(Error::InvalidTopology("not a permutation".into()));
            }
            seen |= 1 << q;
        }
        let map = |s: u32| {
            let mut out = 0u32;
            let mut rest = s;
            while rest != 0 {
                let p = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                out |= 1 << perm[p];
            }
            out
        };
        let mut cl1 = vec![0u32; self.n];
        for p in 0..self.n {
            cl1[perm[p]] = map(self.point_closure(p));
        }
        Ok(Self::from_point_closures_unchecked(self.n, &cl1))
    }
}

impl fmt::Debug for Topology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Topology(n={}, cl1={:?})", self.n, self.point_closures())
    }
}

#[derive(Serialize, Deserialize)]
struct TopologyJson {
    n: usize,
    closure: Vec<u32>,
}

impl Serialize for Topology {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TopologyJson {
            n: self.n,
            closure: self.closure.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Topology {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = TopologyJson::deserialize(d)?;
        Topology::from_closure_table(raw.n, raw.closure).map_err(serde::de::Error::custom)
    }
}

/// Check the four closure axioms at every subset.
///
/// Additivity is tested on every pair up to 10 points; above that it is
/// tested on each split of a set into its lowest point and the rest, which
/// together with the other axioms is equivalent.
pub fn validate(t: &Topology) -> ValidationReport {
    let mut violations = Vec::new();
    let size = 1u32 << t.n;
    if t.cl(0) != 0 {
        violations.push(Violation {
            axiom: Axiom::EmptyFixed,
            witness: vec![0],
        });
    }
    for s in 0..size {
        if s & !t.cl(s) != 0 {
            violations.push(Violation {
                axiom: Axiom::Extensive,
                witness: vec![s],
            });
        }
    }
    for s in 0..size {
        if t.cl(t.cl(s)) != t.cl(s) {
            violations.push(Violation {
                axiom: Axiom::Idempotent,
                witness: vec![s],
            });
        }
    }
    if t.n <= 10 {
        for s in 0..size {
            for u in s..size {
                if t.cl(s | u) != t.cl(s) | t.cl(u) {
                    violations.push(Violation {
                        axiom: Axiom::Additive,
                        witness: vec![s, u],
                    });
                }
            }
        }
    } else {
        for s in 1..size {
            let low = s & s.wrapping_neg();
            let rest = s ^ low;
            if t.cl(s) != t.cl(rest) | t.cl(low) {
                violations.push(Violation {
                    axiom: Axiom::Additive,
                    witness: vec![rest, low],
                });
            }
        }
    }
    ValidationReport { violations }
}

pub fn closure(t: &Topology, s: Subset) -> Subset {
    Subset::from_raw(t.cl(s.bits()), t.n)
}

pub fn interior(t: &Topology, s: Subset) -> Subset {
    Subset::from_raw(t.int(s.bits()), t.n)
}

pub fn boundary(t: &Topology, s: Subset) -> Subset {
    let m = t.mask();
    Subset::from_raw(t.cl(s.bits()) & t.cl(!s.bits() & m), t.n)
}

pub fn border(t: &Topology, s: Subset) -> Subset {
    let m = t.mask();
    Subset::from_raw(s.bits() & t.cl(!s.bits() & m), t.n)
}

pub use crate::subset::complement;

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ge() -> Topology {
        Topology::from_letter_base(&["w", "x y", "w x y z"]).unwrap()
    }

    fn sub(bits: u32, n: usize) -> Subset {
        Subset::new(bits, n).unwrap()
    }

    // opens obtained by closing a family under unions, by brute force
    fn union_closure(base: &[u32], n: usize) -> Vec<u32> {
        let mut opens: BTreeSet<u32> = BTreeSet::new();
        for pick in 0u32..(1 << base.len()) {
            let mut u = 0;
            for (k, b) in base.iter().enumerate() {
                if pick >> k & 1 == 1 {
                    u |= b;
                }
            }
            opens.insert(u);
        }
        let _ = n;
        opens.into_iter().collect()
    }

    // smallest closed superset by scanning complements of opens
    fn closure_by_scan(opens: &[u32], n: usize, s: u32) -> u32 {
        let m = universe_mask(n);
        opens
            .iter()
            .map(|o| !o & m)
            .filter(|c| s & !c == 0)
            .fold(m, |a, c| a & c)
    }

    #[test]
    fn sierpinski_from_base() {
        let t = Topology::from_base(&[sub(0b01, 2), sub(0b11, 2)], 2).unwrap();
        assert_eq!(t, Topology::sierpinski());
        assert_eq!(t.opens(), vec![0b00, 0b01, 0b11]);
        assert!(validate(&t).is_ok());
        assert_eq!(closure(&t, sub(0b01, 2)).bits(), 0b11);
        assert_eq!(interior(&t, sub(0b10, 2)).bits(), 0);
        assert_eq!(boundary(&t, sub(0b01, 2)).bits(), 0b10);
        assert_eq!(border(&t, sub(0b01, 2)).bits(), 0);
    }

    #[test]
    fn empty_base_is_rejected() {
        assert!(matches!(
            Topology::from_base(&[], 1),
            Err(Error::BaseDoesNotCoverUniverse { .. })
        ));
        assert!(matches!(
            Topology::from_base(&[], 17),
            Err(Error::UniverseTooLarge { .. })
        ));
    }

    #[test]
    fn ge_base_opens_match_union_closure() {
        let t = ge();
        // w=0 x=1 y=2 z=3
        let base = [0b0001, 0b0110, 0b1111];
        let expect = union_closure(&base, 4);
        assert_eq!(expect.len(), 5);
        assert_eq!(t.opens(), expect);
        for s in 0..16 {
            assert_eq!(t.cl(s), closure_by_scan(&expect, 4, s));
        }
        assert_eq!(closure(&t, sub(0b0010, 4)).bits(), 0b1110);
        assert_eq!(interior(&t, sub(0b1001, 4)).bits(), 0b0001);
        assert_eq!(boundary(&t, sub(0b1001, 4)).bits(), 0b1000);
        assert_eq!(border(&t, sub(0b1001, 4)).bits(), 0b1000);
    }

    #[test]
    fn validate_catches_each_axiom() {
        let mut table = Topology::sierpinski().closure_table().to_vec();
        table[0] = 0b01;
        let t = Topology::from_closure_table_unchecked(2, table).unwrap();
        assert!(validate(&t).violates(Axiom::EmptyFixed));

        // cl{x}={x}, cl{y}={y}, cl{x,y}=X is additive; break it on 3 points
        let mut table: Vec<u32> = (0..8).collect();
        table[0b011] = 0b111;
        let t = Topology::from_closure_table_unchecked(3, table).unwrap();
        let r = validate(&t);
        assert!(r
            .violations
            .iter()
            .any(|v| v.axiom == Axiom::Additive && v.witness == vec![1, 2]));
    }

    #[test]
    fn json_round_trip() {
        let t = ge();
        let s = serde_json::to_string(&t).unwrap();
        assert!(s.starts_with("{\"n\":4,\"closure\":["));
        let back: Topology = serde_json::from_str(&s).unwrap();
        assert_eq!(back, t);
        assert!(serde_json::from_str::<Topology>("{\"n\":1,\"closure\":[1,1]}").is_err());
    }

    #[test]
    fn large_universe_validation_uses_decomposition() {
        let t = Topology::discrete(11).unwrap();
        assert!(validate(&t).is_ok());
        let mut table = t.closure_table().to_vec();
        table[0b11] = 0b111;
        let bad = Topology::from_closure_table_unchecked(11, table).unwrap();
        assert!(validate(&bad).violates(Axiom::Additive));
    }

    fn arb_space() -> impl Strategy<Value = Topology> {
        (1usize..=6).prop_flat_map(|n| {
            proptest::collection::vec(1u32..(1 << n), 1..6).prop_map(move |mut base| {
                base.push(universe_mask(n));
                let subs: Vec<Subset> = base.iter().map(|&b| Subset::from_raw(b, n)).collect();
                Topology::from_base(&subs, n).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn base_spaces_satisfy_axioms(t in arb_space()) {
            prop_assert!(validate(&t).is_ok());
        }

        #[test]
        fn operator_laws(t in arb_space(), raw in any::<u32>()) {
            let s = sub(raw & t.mask(), t.n());
            let (b, i, f, g) = (closure(&t, s), interior(&t, s), boundary(&t, s), border(&t, s));
            prop_assert_eq!(f, boundary(&t, complement(s)));
            prop_assert!(i.is_subset_of(s) && s.is_subset_of(b));
            prop_assert!(g.intersection(i).is_empty());
            prop_assert_eq!(g.union(i), s);
        }

        #[test]
        fn relabel_preserves_open_count(t in arb_space(), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut perm: Vec<usize> = (0..t.n()).collect();
            perm.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
            let r = t.relabel(&perm).unwrap();
            prop_assert!(validate(&r).is_ok());
            prop_assert_eq!(r.opens().len(), t.opens().len());
        }
    }
}

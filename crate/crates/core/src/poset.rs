//! Extenders of finite partial orders and the refinement test built on them.

use serde::Serialize;

use crate::catalog;
use crate::error::{Error, Result};
use crate::monoid::Ordering;

/// A binary relation on at most 64 labelled elements; row `x` holds every `y`
/// with `x ≤ y`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Relation {
    labels: Vec<String>,
    rows: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Refinement {
    Equal,
    StrictlyContained { witness: (String, String) },
}

impl Relation {
    pub fn new(labels: Vec<String>, pairs: &[(usize, usize)]) -> Result<Self> {
        if labels.len() > 64 {
            return Err(Error::NotAPartialOrder("more than 64 elements".into()));
        }
        let mut rows = vec![0u64; labels.len()];
        for &(x, y) in pairs {
            if x >= labels.len() || y >= labels.len() {
                return Err(Error::NotAPartialOrder(format!(
                    "pair ({x}, {y}) out of range"
                )));
            }
            rows[x] |= 1 << y;
        }
        Ok(Self { labels, rows })
    }

    /// Build from named pairs; unknown names extend the ground set.
    pub fn from_named(ground: &[&str], pairs: &[(&str, &str)]) -> Result<Self> {
        let mut labels: Vec<String> = ground.iter().map(|s| s.to_string()).collect();
        let idx = |s: &str, labels: &mut Vec<String>| match labels.iter().position(|l| l == s) {
            Some(p) => p,
            None => {
                labels.push(s.to_string());
                labels.len() - 1
            }
        };
        let mut ip = Vec::new();
        for &(x, y) in pairs {
            let a = idx(x, &mut labels);
            let b = idx(y, &mut labels);
            ip.push((a, b));
        }
        Self::new(labels, &ip)
    }

    /// The same pairs over the family's names in catalog order.
    pub fn from_ordering(o: &Ordering) -> Self {
        let members = o.family().members();
        let labels = members
            .iter()
            .map(|&m| catalog::name(m as usize).to_string())
            .collect();
        let rows = members
            .iter()
            .map(|&x| {
                members
                    .iter()
                    .enumerate()
                    .filter(|(_, &y)| o.leq(x as usize, y as usize))
                    .fold(0u64, |r, (k, _)| r | 1 << k)
            })
            .collect();
        Self { labels, rows }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x] >> y & 1 == 1
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (x, &r) in self.rows.iter().enumerate() {
            for y in 0..self.len() {
                if r >> y & 1 == 1 {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn named_pairs(&self) -> Vec<(String, String)> {
        self.pairs()
            .into_iter()
            .map(|(x, y)| (self.labels[x].clone(), self.labels[y].clone()))
            .collect()
    }

    /// Describe the first failure of reflexivity, antisymmetry or transitivity.
    pub fn partial_order_defect(&self) -> Option<String> {
        let n = self.len();
        for x in 0..n {
            if !self.contains(x, x) {
                return Some(format!("({0}, {0}) missing", self.labels[x]));
            }
        }
        for x in 0..n {
            for y in x + 1..n {
                if self.contains(x, y) && self.contains(y, x) {
                    return Some(format!(
                        "{} and {} are mutually related",
                        self.labels[x], self.labels[y]
                    ));
                }
            }
        }
        for x in 0..n {
            for y in 0..n {
                if self.contains(x, y) && self.rows[y] & !self.rows[x] != 0 {
                    return Some(format!(
                        "not transitive through ({}, {})",
                        self.labels[x], self.labels[y]
                    ));
                }
            }
        }
        None
    }

    fn remap_onto(&self, other: &Relation) -> Result<Vec<usize>> {
        self.labels
            .iter()
            .map(|l| {
                other.index_of(l).ok_or_else(|| {
                    Error::NotAPartialOrder(format!("{l} is missing from the other ground set"))
                })
            })
            .collect()
    }
}

/// All pairs outside `p` whose addition leaves `p` a partial order.
pub fn extender(p: &Relation) -> Result<Vec<(usize, usize)>> {
    if let Some(d) = p.partial_order_defect() {
        return Err(Error::NotAPartialOrder(d));
    }
    let n = p.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x == y || p.contains(x, y) || p.contains(y, x) {
                continue;
            }
            // everything strictly below x must already be below y,
            // and x must already be below everything strictly above y
            let below_ok = (0..n).all(|u| u == x || !p.contains(u, x) || p.contains(u, y));
            let above_ok = (0..n).all(|v| v == y || !p.contains(y, v) || p.contains(x, v));
            if below_ok && above_ok {
                out.push((x, y));
            }
        }
    }
    Ok(out)
}

/// Named form of [`extender`].
pub fn extender_named(p: &Relation) -> Result<Vec<(String, String)>> {
    Ok(extender(p)?
        .into_iter()
        .map(|(x, y)| (p.labels[x].clone(), p.labels[y].clone()))
        .collect())
}

/// Decide `p = q` for `p ⊆ q` through the extender of `p`.
///
/// When `q` is not itself a partial order the extender may miss it, and any
/// pair of `q ∖ p` is returned instead.
pub fn poset_refines(p: &Relation, q: &Relation) -> Result<Refinement> {
    let map = p.remap_onto(q)?;
    if p.len() != q.len() {
        return Err(Error::NotAPartialOrder("ground sets differ".into()));
    }
    for (x, y) in p.pairs() {
        if !q.contains(map[x], map[y]) {
            return Err(Error::NotContained(
                p.labels[x].clone(),
                p.labels[y].clone(),
            ));
        }
    }
    let name = |x: usize, y: usize| (p.labels[x].clone(), p.labels[y].clone());
    for (x, y) in extender(p)? {
        if q.contains(map[x], map[y]) {
            return Ok(Refinement::StrictlyContained {
                witness: name(x, y),
            });
        }
    }
    for x in 0..p.len() {
        for y in 0..p.len() {
            if q.contains(map[x], map[y]) && !p.contains(x, y) {
                return Ok(Refinement::StrictlyContained {
                    witness: name(x, y),
                });
            }
        }
    }
    Ok(Refinement::Equal)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn antichain() -> Relation {
        Relation::from_named(&["p", "q"], &[("p", "p"), ("q", "q")]).unwrap()
    }

    fn chain(n: usize) -> Relation {
        let labels: Vec<String> = (0..n).map(|k| format!("c{k}")).collect();
        let pairs: Vec<(usize, usize)> = (0..n).flat_map(|x| (x..n).map(move |y| (x, y))).collect();
        Relation::new(labels, &pairs).unwrap()
    }

    #[test]
    fn extender_examples() {
        assert_eq!(extender(&antichain()).unwrap(), vec![(0, 1), (1, 0)]);
        assert!(extender(&chain(5)).unwrap().is_empty());
        let bad = Relation::from_named(&["p", "q"], &[("p", "q"), ("q", "p")]).unwrap();
        assert!(matches!(extender(&bad), Err(Error::NotAPartialOrder(_))));
    }

    #[test]
    fn refinement_examples() {
        assert_eq!(
            poset_refines(&chain(4), &chain(4)).unwrap(),
            Refinement::Equal
        );
        let q = Relation::from_named(&["p", "q"], &[("p", "p"), ("q", "q"), ("p", "q")]).unwrap();
        match poset_refines(&antichain(), &q).unwrap() {
            Refinement::StrictlyContained { witness } => {
                assert_eq!(witness, ("p".to_string(), "q".to_string()))
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            poset_refines(&q, &antichain()),
            Err(Error::NotContained(..))
        ));
    }

    // brute-force check that P ∪ {(x,y)} is a partial order
    fn is_po_with(p: &Relation, x: usize, y: usize) -> bool {
        let mut r = p.clone();
        r.rows[x] |= 1 << y;
        r.partial_order_defect().is_none()
    }

    fn arb_poset() -> impl Strategy<Value = Relation> {
        (1usize..=7).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                // orient every pair upward in index order, then close
                let mut rows = vec![0u64; n];
                for x in 0..n {
                    rows[x] |= 1 << x;
                    for y in x + 1..n {
                        if bits[x * n + y] {
                            rows[x] |= 1 << y;
                        }
                    }
                }
                for k in 0..n {
                    for x in 0..n {
                        if rows[x] >> k & 1 == 1 {
                            rows[x] |= rows[k];
                        }
                    }
                }
                let labels = (0..n).map(|k| k.to_string()).collect();
                Relation { labels, rows }
            })
        })
    }

    proptest! {
        #[test]
        fn extender_matches_brute_force(p in arb_poset()) {
            let ext = extender(&p).unwrap();
            for x in 0..p.len() {
                for y in 0..p.len() {
                    let expect = !p.contains(x, y) && is_po_with(&p, x, y);
                    prop_assert_eq!(ext.contains(&(x, y)), expect);
                }
            }
        }

        #[test]
        fn refinement_decides_equality(p in arb_poset(), q in arb_poset()) {
            // intersect to get a sub-order of q on the same ground set
            if p.len() == q.len() {
                let mut sub = q.clone();
                for (r, o) in sub.rows.iter_mut().zip(&p.rows) {
                    *r &= o;
                }
                if sub.partial_order_defect().is_none() {
                    let res = poset_refines(&sub, &q).unwrap();
                    prop_assert_eq!(res == Refinement::Equal, sub == q);
                }
            }
        }
    }
}

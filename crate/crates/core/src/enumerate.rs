//! Finite spaces up to homeomorphism.
//!
//! Every finite space is a preorder; collapsing indistinguishable points gives
//! a poset with a positive multiplicity on each point. Classes are produced by
//! blowing up every poset on `k ≤ n` points by every composition of `n` into
//! `k` parts and keeping one canonical form per result.

use std::collections::HashSet;
use std::sync::{Mutex, OnceLock};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::canon::canonical_encoding;
use crate::error::{Error, Result};
use crate::monoid::{classify_space, SpaceType};
use crate::subset::universe_mask;
use crate::topology::Topology;

/// Largest universe the labeled oracle accepts.
pub const ORACLE_MAX: usize = 6;

/// A homeomorphism class, held by its canonical singleton-closure vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalSpace {
    pub n: usize,
    pub encoding: Vec<u32>,
    pub space_type: SpaceType,
}

impl CanonicalSpace {
    pub fn topology(&self) -> Topology {
        Topology::from_point_closures_unchecked(self.n, &self.encoding)
    }

    /// Full closure table of the canonical representative.
    pub fn closure_table(&self) -> Vec<u32> {
        self.topology().closure_table().to_vec()
    }
}

/// Canonical form of a space.
pub fn canonical_form(t: &Topology) -> CanonicalSpace {
    let encoding = canonical_encoding(&t.point_closures());
    let space_type = classify_space(t).expect("valid topology");
    CanonicalSpace {
        n: t.n(),
        encoding,
        space_type,
    }
}

/// Every labeled topology on `n` points, by backtracking over singleton
/// closures with transitivity pruning.
pub fn enumerate_labeled(n: usize) -> Result<Vec<Topology>> {
    if n == 0 || n > ORACLE_MAX {
        return Err(Error::OracleLimitExceeded { n, max: ORACLE_MAX });
    }
    let mut out = Vec::new();
    let mut cl1 = vec![0u32; n];
    labeled_rec(n, 0, &mut cl1, &mut out);
    Ok(out)
}

fn labeled_rec(n: usize, p: usize, cl1: &mut Vec<u32>, out: &mut Vec<Topology>) {
    if p == n {
        out.push(Topology::from_point_closures_unchecked(n, cl1));
        return;
    }
    let others = universe_mask(n) & !(1 << p);
    // iterate all subsets of the other points
    let mut sub = 0u32;
    loop {
        let c = sub | 1 << p;
        cl1[p] = c;
        let assigned = (1u32 << (p + 1)) - 1;
        let ok = (0..=p).all(|q| {
            // q's closure must absorb the closure of every assigned point in it
            let mut rest = cl1[q] & assigned;
            let mut fine = true;
            while rest != 0 {
                let r = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if cl1[r] & !cl1[q] != 0 {
                    fine = false;
                    break;
                }
            }
            fine
        });
        if ok {
            labeled_rec(n, p + 1, cl1, out);
        }
        if sub == others {
            break;
        }
        sub = (sub.wrapping_sub(others)) & others;
    }
}

/// Posets on `k` points up to isomorphism (canonical singleton-closure
/// vectors), for `k = 0..=max_k`.
pub fn posets(max_k: usize) -> Vec<Vec<Vec<u32>>> {
    static CACHE: OnceLock<Mutex<Vec<Vec<Vec<u32>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(vec![vec![Vec::new()]]));
    let mut levels = cache.lock().expect("poset cache");
    while levels.len() <= max_k {
        let prev = levels.last().expect("level 0 present");
        let k = levels.len() - 1;
        let next: HashSet<Vec<u32>> = prev
            .par_iter()
            .flat_map_iter(|p| {
                // each down-closed set of p becomes the strict down-set of a new point
                let mut out = Vec::new();
                for ideal in 0u32..(1 << k) {
                    let closed = (0..k).all(|q| ideal >> q & 1 == 0 || p[q] & !ideal == 0);
                    if closed {
                        let mut cl1 = p.clone();
                        cl1.push(ideal | 1 << k);
                        out.push(canonical_encoding(&cl1));
                    }
                }
                out
            })
            .collect();
        let mut v: Vec<Vec<u32>> = next.into_iter().collect();
        v.sort();
        levels.push(v);
    }
    levels[..=max_k].to_vec()
}

/// Compositions of `n` into `k` positive parts.
fn compositions(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(left: usize, parts: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 1 {
            cur.push(left);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 1..=left - (parts - 1) {
            cur.push(first);
            rec(left - first, parts - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 1 && k <= n {
        rec(n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// Blow up poset point `j` into a block of `sizes[j]` equivalent points.
fn blow_up(poset: &[u32], sizes: &[usize]) -> Vec<u32> {
    let mut blocks = Vec::with_capacity(poset.len());
    let mut start = 0usize;
    for &s in sizes {
        blocks.push((((1u64 << s) - 1) << start) as u32);
        start += s;
    }
    let mut cl1 = Vec::with_capacity(start);
    for (j, &s) in sizes.iter().enumerate() {
        let mut c = 0u32;
        for (q, &b) in blocks.iter().enumerate() {
            if poset[j] >> q & 1 == 1 {
                c |= b;
            }
        }
        cl1.extend(std::iter::repeat(c).take(s));
    }
    cl1
}

/// Canonical singleton-closure vectors of every class on `n` points, sorted.
pub fn class_encodings(n: usize) -> Vec<Vec<u32>> {
    if n == 0 {
        return Vec::new();
    }
    let levels = posets(n);
    let jobs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|k| (0..levels[k].len()).map(move |i| (k, i)))
        .collect();
    let found: HashSet<Vec<u32>> = jobs
        .par_iter()
        .flat_map_iter(|&(k, i)| {
            let p = &levels[k][i];
            compositions(n, k)
                .into_iter()
                .map(|sizes| canonical_encoding(&blow_up(p, &sizes)))
                .collect::<Vec<_>>()
        })
        .collect();
    let mut v: Vec<Vec<u32>> = found.into_iter().collect();
    v.sort();
    v
}

/// One representative per homeomorphism class on `n` points, ordered by
/// encoding.
pub fn enumerate_classes(n: usize) -> Vec<CanonicalSpace> {
    class_encodings(n)
        .into_par_iter()
        .map(|encoding| {
            let t = Topology::from_point_closures_unchecked(n, &encoding);
            let space_type = classify_space(&t).expect("enumerated spaces are valid");
            CanonicalSpace {
                n,
                encoding,
                space_type,
            }
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::validate;
    use std::collections::BTreeSet;

    // topologies on n points as families of subsets closed under union and
    // intersection and containing ∅ and X
    fn brute_labeled_count(n: usize) -> usize {
        let size = 1usize << n;
        let full = size - 1;
        let mut count = 0;
        let free: Vec<usize> = (1..full).collect();
        for pick in 0u64..(1u64 << free.len()) {
            let mut fam = vec![0usize, full];
            for (k, &s) in free.iter().enumerate() {
                if pick >> k & 1 == 1 {
                    fam.push(s);
                }
            }
            let set: BTreeSet<usize> = fam.iter().copied().collect();
            if fam.iter().all(|&a| {
                fam.iter()
                    .all(|&b| set.contains(&(a | b)) && set.contains(&(a & b)))
            }) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn labeled_counts() {
        let expect = [1, 4, 29, 355, 6942];
        for n in 1..=5 {
            let all = enumerate_labeled(n).unwrap();
            assert_eq!(all.len(), expect[n - 1]);
            if n <= 3 {
                assert_eq!(all.len(), brute_labeled_count(n));
            }
            if n <= 4 {
                assert!(all.iter().all(|t| validate(t).is_ok()));
            }
        }
        assert!(matches!(
            enumerate_labeled(7),
            Err(Error::OracleLimitExceeded { .. })
        ));
    }

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = posets(7).iter().map(|l| l.len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16, 63, 318, 2045]);
    }

    #[test]
    fn class_counts_small() {
        let counts: Vec<usize> = (1..=6).map(|n| class_encodings(n).len()).collect();
        assert_eq!(counts, vec![1, 3, 9, 33, 139, 718]);
    }

    #[test]
    fn classes_agree_with_labeled_oracle() {
        for n in 1..=5 {
            let from_oracle: BTreeSet<Vec<u32>> = enumerate_labeled(n)
                .unwrap()
                .iter()
                .map(|t| canonical_encoding(&t.point_closures()))
                .collect();
            let classes: Vec<Vec<u32>> = class_encodings(n);
            assert_eq!(classes.len(), from_oracle.len());
            assert_eq!(classes, from_oracle.into_iter().collect::<Vec<_>>());
        }
    }

    #[test]
    fn compositions_count() {
        assert_eq!(compositions(5, 2).len(), 4);
        assert_eq!(compositions(8, 3).len(), 21);
        assert_eq!(compositions(3, 4).len(), 0);
    }
}

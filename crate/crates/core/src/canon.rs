//! Canonical labelling of finite spaces.
//!
//! A space is determined by its singleton closures, and the closure table of a
//! relabelled space is lexicographically ordered exactly as its vector of
//! singleton closures. The canonical encoding is the least such vector among
//! relabelings that list points by refined invariant colour; within a colour
//! cell every arrangement is tried, except that twins (points whose swap is an
//! automorphism) are treated as interchangeable.

use std::cmp::Ordering as Cmp;

/// Per-point invariants refined until stable. Returns the colour of each point;
/// colours are ranks of label-independent signatures.
fn refine_colours(cl1: &[u32]) -> Vec<u32> {
    let n = cl1.len();
    let up: Vec<u32> = (0..n)
        .map(|p| {
            (0..n)
                .filter(|&q| cl1[q] >> p & 1 == 1)
                .fold(0u32, |a, q| a | 1 << q)
        })
        .collect();
    let mut colour: Vec<u32> = {
        let init: Vec<(u32, u32, u32)> = (0..n)
            .map(|p| {
                (
                    cl1[p].count_ones(),
                    up[p].count_ones(),
                    (cl1[p] & up[p]).count_ones(),
                )
            })
            .collect();
        rank(&init)
    };
    let mut classes = distinct(&colour);
    loop {
        let sigs: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..n)
            .map(|p| {
                let gather = |set: u32| {
                    let mut v: Vec<u32> = (0..n)
                        .filter(|&q| q != p && set >> q & 1 == 1)
                        .map(|q| colour[q])
                        .collect();
                    v.sort_unstable();
                    v
                };
                (colour[p], gather(cl1[p]), gather(up[p]))
            })
            .collect();
        let next = rank(&sigs);
        let count = distinct(&next);
        colour = next;
        if count == classes {
            return colour;
        }
        classes = count;
    }
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<u32> {
    let mut sorted: Vec<T> = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).expect("present") as u32)
        .collect()
}

fn distinct(colour: &[u32]) -> usize {
    let mut c = colour.to_vec();
    c.sort_unstable();
    c.dedup();
    c.len()
}

/// Twin class of each point: points sharing a class may be swapped freely.
fn twin_classes(cl1: &[u32]) -> Vec<usize> {
    let n = cl1.len();
    let up: Vec<u32> = (0..n)
        .map(|p| {
            (0..n)
                .filter(|&q| cl1[q] >> p & 1 == 1)
                .fold(0u32, |a, q| a | 1 << q)
        })
        .collect();
    let strong = |p: usize| (cl1[p], up[p]);
    let weak = |p: usize| (cl1[p] & !(1 << p), up[p] & !(1 << p));
    let mut class = vec![usize::MAX; n];
    for p in 0..n {
        if class[p] != usize::MAX {
            continue;
        }
        class[p] = p;
        let mates: Vec<usize> = (p + 1..n).filter(|&q| strong(q) == strong(p)).collect();
        if !mates.is_empty() {
            for q in mates {
                class[q] = p;
            }
        } else {
            for q in p + 1..n {
                if class[q] == usize::MAX && weak(q) == weak(p) && strong_unique(cl1, &up, q) {
                    class[q] = p;
                }
            }
        }
    }
    class
}

fn strong_unique(cl1: &[u32], up: &[u32], q: usize) -> bool {
    (0..cl1.len()).all(|r| r == q || (cl1[r], up[r]) != (cl1[q], up[q]))
}

fn apply(cl1: &[u32], pos: &[usize]) -> Vec<u32> {
    let mut out = vec![0u32; cl1.len()];
    for (p, &c) in cl1.iter().enumerate() {
        let mut img = 0u32;
        let mut rest = c;
        while rest != 0 {
            let q = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            img |= 1 << pos[q];
        }
        out[pos[p]] = img;
    }
    out
}

/// Canonical singleton-closure vector of the space with singleton closures
/// `cl1`, together with the relabeling (`pos[p]` is the new label of `p`)
/// that produces it.
pub fn canonical_labeling(cl1: &[u32]) -> (Vec<u32>, Vec<usize>) {
    let n = cl1.len();
    if n == 0 {
        return (Vec::new(), Vec::new());
    }
    let colour = refine_colours(cl1);
    let twins = twin_classes(cl1);

    // cells in colour order; each cell is a list of (twin class, members)
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&p| (colour[p], p));
    let mut cells: Vec<Vec<(usize, Vec<usize>)>> = Vec::new();
    let mut last = None;
    for &p in &order {
        if last != Some(colour[p]) {
            cells.push(Vec::new());
            last = Some(colour[p]);
        }
        let cell = cells.last_mut().expect("pushed");
        match cell.iter_mut().find(|(c, _)| *c == twins[p]) {
            Some((_, m)) => m.push(p),
            None => cell.push((twins[p], vec![p])),
        }
    }

    let mut best: Option<(Vec<u32>, Vec<usize>)> = None;
    let mut pos = vec![0usize; n];
    let mut counts: Vec<Vec<usize>> = cells
        .iter()
        .map(|c| c.iter().map(|(_, m)| m.len()).collect())
        .collect();
    search(cl1, &cells, &mut counts, 0, 0, 0, &mut pos, &mut best);
    best.expect("at least one arrangement")
}

/// Assign labels `label..` to the remaining points of `cells[ci..]`, choosing at
/// each step which twin class supplies the next point.
#[allow(clippy::too_many_arguments)]
fn search(
    cl1: &[u32],
    cells: &[Vec<(usize, Vec<usize>)>],
    counts: &mut Vec<Vec<usize>>,
    ci: usize,
    used_in_cell: usize,
    label: usize,
    pos: &mut Vec<usize>,
    best: &mut Option<(Vec<u32>, Vec<usize>)>,
) {
    if ci == cells.len() {
        let enc = apply(cl1, pos);
        let better = match best {
            None => true,
            Some((b, _)) => enc.cmp(b) == Cmp::Less,
        };
        if better {
            *best = Some((enc, pos.clone()));
        }
        return;
    }
    let cell_size: usize = cells[ci].iter().map(|(_, m)| m.len()).sum();
    if used_in_cell == cell_size {
        search(cl1, cells, counts, ci + 1, 0, label, pos, best);
        return;
    }
    for k in 0..cells[ci].len() {
        let left = counts[ci][k];
        if left == 0 {
            continue;
        }
        let members = &cells[ci][k].1;
        let p = members[members.len() - left];
        counts[ci][k] -= 1;
        pos[p] = label;
        search(
            cl1,
            cells,
            counts,
            ci,
            used_in_cell + 1,
            label + 1,
            pos,
            best,
        );
        counts[ci][k] += 1;
    }
}

/// Canonical singleton-closure vector.
pub fn canonical_encoding(cl1: &[u32]) -> Vec<u32> {
    canonical_labeling(cl1).0
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{seq::SliceRandom, Rng, SeedableRng};

    fn relabel(cl1: &[u32], perm: &[usize]) -> Vec<u32> {
        apply(cl1, perm)
    }

    // least vector over every permutation that respects colour order
    fn brute(cl1: &[u32]) -> Vec<u32> {
        let n = cl1.len();
        let colour = refine_colours(cl1);
        let mut perm: Vec<usize> = (0..n).collect();
        let mut best: Option<Vec<u32>> = None;
        permute(&mut perm, 0, &mut |p: &[usize]| {
            let ok = (0..n).all(|a| (0..n).all(|b| colour[a] >= colour[b] || p[a] < p[b]));
            if ok {
                let e = relabel(cl1, p);
                if best.as_ref().map_or(true, |b| e < *b) {
                    best = Some(e);
                }
            }
        });
        best.unwrap()
    }

    fn permute(v: &mut Vec<usize>, k: usize, f: &mut dyn FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for j in k..v.len() {
            v.swap(k, j);
            permute(v, k + 1, f);
            v.swap(k, j);
        }
    }

    fn random_preorder(n: usize, rng: &mut impl Rng) -> Vec<u32> {
        let mut cl1: Vec<u32> = (0..n).map(|p| 1u32 << p).collect();
        for p in 0..n {
            for q in 0..n {
                if rng.gen_bool(0.3) {
                    cl1[p] |= 1 << q;
                }
            }
        }
        for k in 0..n {
            for p in 0..n {
                if cl1[p] >> k & 1 == 1 {
                    cl1[p] |= cl1[k];
                }
            }
        }
        cl1
    }

    #[test]
    fn sierpinski_swap() {
        assert_eq!(
            canonical_encoding(&[0b11, 0b10]),
            canonical_encoding(&[0b01, 0b11])
        );
        assert_ne!(
            canonical_encoding(&[0b01, 0b10]),
            canonical_encoding(&[0b11, 0b11])
        );
    }

    #[test]
    fn matches_restricted_brute_force() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=6);
            let cl1 = random_preorder(n, &mut rng);
            assert_eq!(canonical_encoding(&cl1), brute(&cl1), "{cl1:?}");
        }
    }

    #[test]
    fn relabel_invariance() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for _ in 0..500 {
            let n = rng.gen_range(1..=8);
            let cl1 = random_preorder(n, &mut rng);
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            let (enc, pos) = canonical_labeling(&cl1);
            assert_eq!(relabel(&cl1, &pos), enc);
            assert_eq!(canonical_encoding(&relabel(&cl1, &perm)), enc);
            assert_eq!(canonical_encoding(&enc), enc);
        }
    }
}

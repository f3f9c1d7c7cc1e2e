//! Sum spaces, the meet tables of φ- and ψ-numbers, repeated sums of minimal
//! spaces and the implication relation between ψ-numbers.

use std::collections::HashMap;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{orbit40, Family};
use crate::census::{classes, summaries, witness_library, Witness};
use crate::classifier::{k_number, kf_number, phi_cached, psi_cached};
use crate::error::{Error, Result};
use crate::expr::Expr;
use crate::monoid::{classify_space, Collapse};
use crate::reference::reference;
use crate::subset::MAX_POINTS;
use crate::topology::Topology;

/// Components of a sum, laid out one after another.
#[derive(Clone, Debug)]
pub struct SumSpec {
    pub components: Vec<Topology>,
}

impl SumSpec {
    pub fn new(components: Vec<Topology>) -> Result<Self> {
        let n: usize = components.iter().map(Topology::n).sum();
        if n > MAX_POINTS {
            return Err(Error::UniverseTooLarge { n, max: MAX_POINTS });
        }
        if components.is_empty() {
            return Err(Error::InvalidTopology(
                "a sum needs at least one component".into(),
            ));
        }
        Ok(Self { components })
    }

    /// `copies` disjoint copies of `t`.
    pub fn copies(t: &Topology, copies: usize) -> Result<Self> {
        Self::new(vec![t.clone(); copies])
    }

    /// First sum point of each component.
    pub fn offsets(&self) -> Vec<usize> {
        self.components
            .iter()
            .scan(0, |acc, t| {
                let o = *acc;
                *acc += t.n();
                Some(o)
            })
            .collect()
    }

    pub fn n(&self) -> usize {
        self.components.iter().map(Topology::n).sum()
    }

    /// The subset made of one subset per component.
    pub fn inject(&self, parts: &[u32]) -> u32 {
        self.offsets()
            .iter()
            .zip(parts)
            .fold(0, |acc, (&o, &p)| acc | p << o)
    }

    /// The part of `s` lying in each component.
    pub fn split(&self, s: u32) -> Vec<u32> {
        self.offsets()
            .iter()
            .zip(&self.components)
            .map(|(&o, t)| s >> o & t.mask())
            .collect()
    }
}

/// Disjoint union whose open sets are unions of component opens.
pub fn sum_space(spec: &SumSpec) -> Result<Topology> {
    let n = spec.n();
    if n > MAX_POINTS {
        return Err(Error::UniverseTooLarge { n, max: MAX_POINTS });
    }
    let mut cl1 = Vec::with_capacity(n);
    for (t, o) in spec.components.iter().zip(spec.offsets()) {
        cl1.extend(t.point_closures().into_iter().map(|c| c << o));
    }
    Topology::from_point_closures(n, &cl1)
}

fn collapse_lookup(phi: bool) -> Result<&'static HashMap<Collapse, u8>> {
    static PSI: OnceLock<HashMap<Collapse, u8>> = OnceLock::new();
    static PHI: OnceLock<HashMap<Collapse, u8>> = OnceLock::new();
    let (cell, family) = if phi {
        (&PHI, Family::K0)
    } else {
        (&PSI, Family::KF)
    };
    if let Some(m) = cell.get() {
        return Ok(m);
    }
    let lib = witness_library()?;
    let src = if phi { &lib.phi } else { &lib.psi };
    let map = src
        .iter()
        .map(|(&p, w)| (witness_collapse(w, family), p))
        .collect();
    Ok(cell.get_or_init(|| map))
}

fn witness_collapse(w: &Witness, family: Family) -> Collapse {
    Collapse::from_values(family, &orbit40(&w.space.topology(), w.subset))
}

fn witnesses(phi: bool, m: u8, n: u8) -> Result<(&'static Witness, &'static Witness)> {
    let lib = witness_library()?;
    Ok(if phi {
        (lib.phi(m)?, lib.phi(n)?)
    } else {
        (lib.psi(m)?, lib.psi(n)?)
    })
}

fn meet_by_collapse(phi: bool, m: u8, n: u8) -> Result<u8> {
    let family = if phi { Family::K0 } else { Family::KF };
    let (wm, wn) = witnesses(phi, m, n)?;
    let c = witness_collapse(wm, family).intersect(&witness_collapse(wn, family))?;
    collapse_lookup(phi)?
        .get(&c)
        .copied()
        .ok_or(Error::NoMatch {
            kind: if phi { "phi meet" } else { "psi meet" },
            subset: 0,
        })
}

fn meet_by_sum(phi: bool, m: u8, n: u8) -> Result<u8> {
    let (wm, wn) = witnesses(phi, m, n)?;
    let spec = SumSpec::new(vec![wm.space.topology(), wn.space.topology()])?;
    let t = sum_space(&spec)?;
    let v = orbit40(&t, spec.inject(&[wm.subset, wn.subset]));
    if phi {
        phi_cached(&v)
    } else {
        psi_cached(&v)
    }
}

fn meet(phi: bool, m: u8, n: u8) -> Result<u8> {
    let by_collapse = meet_by_collapse(phi, m, n)?;
    let realized = meet_by_sum(phi, m, n)?;
    if by_collapse != realized {
        return Err(Error::RouteMismatch {
            m,
            n,
            by_collapse,
            realized,
        });
    }
    Ok(by_collapse)
}

/// ψ-number of `A₁ ⊔ A₂` for `ψA₁ = m`, `ψA₂ = n`, computed by intersecting
/// the collapses and confirmed on the sum of the two witnesses.
pub fn psi_meet(m: u8, n: u8) -> Result<u8> {
    meet(false, m, n)
}

/// φ analogue of [`psi_meet`].
pub fn phi_meet(m: u8, n: u8) -> Result<u8> {
    meet(true, m, n)
}

/// Full φ and ψ meet tables; `phi[i][j]` is the meet of `i + 1` and `j + 1`.
#[derive(Clone, Debug, Serialize)]
pub struct MeetTable {
    pub phi: Vec<Vec<u8>>,
    pub psi: Vec<Vec<u8>>,
}

impl MeetTable {
    pub fn compute() -> Result<Self> {
        witness_library()?;
        let table = |phi: bool, size: u8| -> Result<Vec<Vec<u8>>> {
            (1..=size)
                .into_par_iter()
                .map(|m| {
                    (1..=size)
                        .map(|n| meet(phi, m, n))
                        .collect::<Result<Vec<u8>>>()
                })
                .collect()
        };
        Ok(Self {
            phi: table(true, 30)?,
            psi: table(false, 70)?,
        })
    }

    /// Commutative, idempotent and associative.
    pub fn is_semilattice(table: &[Vec<u8>]) -> bool {
        let at = |a: u8, b: u8| table[a as usize - 1][b as usize - 1];
        let k = table.len() as u8;
        (1..=k).all(|a| at(a, a) == a)
            && (1..=k).all(|a| (1..=k).all(|b| at(a, b) == at(b, a)))
            && (1..=k).all(|a| (1..=k).all(|b| (1..=k).all(|c| at(at(a, b), c) == at(a, at(b, c)))))
    }

    /// Longest chain, counted in covering steps, of the order `x ≤ y ⟺ x ∧ y = x`.
    pub fn height(table: &[Vec<u8>]) -> usize {
        let k = table.len();
        let below = |x: usize, y: usize| x != y && table[x][y] as usize == x + 1;
        // longest chain ending at each element, elements sorted by down-set size
        let mut order: Vec<usize> = (0..k).collect();
        order.sort_by_key(|&y| (0..k).filter(|&x| below(x, y)).count());
        let mut best = vec![0usize; k];
        for &y in &order {
            best[y] = (0..k)
                .filter(|&x| below(x, y))
                .map(|x| best[x] + 1)
                .max()
                .unwrap_or(0);
        }
        best.into_iter().max().unwrap_or(0)
    }

    /// Entries differing from the bundled tables, as `(kind, row, col, ours, theirs)`.
    pub fn diff_reference(&self) -> Vec<(&'static str, u8, u8, u8, u8)> {
        let r = &reference().meets;
        let mut out = Vec::new();
        for (kind, ours, theirs) in [("phi", &self.phi, &r.phi), ("psi", &self.psi, &r.psi)] {
            for (i, (a, b)) in ours.iter().zip(theirs).enumerate() {
                for (j, (&x, &y)) in a.iter().zip(b).enumerate() {
                    if x != y {
                        out.push((kind, i as u8 + 1, j as u8 + 1, x, y));
                    }
                }
            }
        }
        out
    }
}

/// ψ-numbers, k- and k_f-number of a space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpaceNumbers {
    pub psi: Vec<u8>,
    pub k: usize,
    pub kf: usize,
}

pub fn space_numbers(t: &Topology) -> Result<SpaceNumbers> {
    let mut seen = [false; 71];
    let (mut k, mut kf) = (0, 0);
    for s in 0..=t.mask() {
        let v = orbit40(t, s);
        seen[psi_cached(&v)? as usize] = true;
        k = k.max(k_number(&v));
        kf = kf.max(kf_number(&v));
    }
    Ok(SpaceNumbers {
        psi: (1..=70).filter(|&p| seen[p as usize]).collect(),
        k,
        kf,
    })
}

/// `k_f` equals the size of the space's GE monoid.
pub fn completely_full(t: &Topology) -> Result<bool> {
    Ok(space_numbers(t)?.kf == classify_space(t)?.kf_size())
}

/// One step of a repeated sum.
#[derive(Clone, Debug, Serialize)]
pub struct TopsumReport {
    pub copies: usize,
    /// ψ-numbers of `X_copies` missing from `X_{copies-1}`; `X_0` counts as
    /// having only 69 and 70.
    pub new_psi: Vec<u8>,
    pub k: usize,
    pub kf: usize,
    pub completely_full: bool,
}

pub fn topsum_report(base: &Topology, copies: usize) -> Result<TopsumReport> {
    if copies == 0 {
        return Err(Error::InvalidTopology("at least one copy is needed".into()));
    }
    let prev: Vec<u8> = if copies == 1 {
        vec![69, 70]
    } else {
        space_numbers(&sum_space(&SumSpec::copies(base, copies - 1)?)?)?.psi
    };
    let x = sum_space(&SumSpec::copies(base, copies)?)?;
    let now = space_numbers(&x)?;
    Ok(TopsumReport {
        copies,
        new_psi: now
            .psi
            .iter()
            .copied()
            .filter(|p| !prev.contains(p))
            .collect(),
        k: now.k,
        kf: now.kf,
        completely_full: now.kf == classify_space(&x)?.kf_size(),
    })
}

/// A subset whose ψ-number has no successor of the expected block in its space,
/// or for which no recorded construction gives the expected ψ-number.
#[derive(Clone, Debug, Serialize)]
pub struct Counterexample {
    pub n: usize,
    pub space: usize,
    pub subset: u32,
    pub psi_a: u8,
    pub psi_b: u8,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ImplicationReport {
    pub max_n: usize,
    pub spaces: usize,
    pub edges_checked: usize,
    pub recipe_rows_checked: usize,
    pub edge_failures: Vec<Counterexample>,
    pub recipe_failures: Vec<Counterexample>,
}

impl ImplicationReport {
    pub fn ok(&self) -> bool {
        self.edge_failures.is_empty() && self.recipe_failures.is_empty()
    }
}

/// Check the implication graph between ψ-blocks and the recorded constructions
/// on every class with `|X| ≤ max_n`.
///
/// An edge `m → n` between blocks holds in a space when every block-`m`
/// subset is accompanied by some subset in block `n`. A construction row
/// holds for `A` when at least one of its recipes yields the stated ψ-number;
/// rows without recipes are skipped.
pub fn verify_psi_implications(max_n: usize) -> Result<ImplicationReport> {
    let r = reference();
    let block_of = |p: u8| r.fig5_block(p).expect("every psi lies in a block");
    let recipes: Vec<(u8, u8, Vec<Expr>)> = r
        .table9
        .iter()
        .filter(|row| !row.recipes.is_empty())
        .map(|row| {
            let e = row
                .recipes
                .iter()
                .map(|s| Expr::parse(s, &["A"]))
                .collect::<Result<_>>()?;
            Ok((row.psi_a, row.psi_b, e))
        })
        .collect::<Result<_>>()?;
    let mut report = ImplicationReport {
        max_n,
        edges_checked: r.fig5.edges.len(),
        recipe_rows_checked: recipes.len(),
        ..Default::default()
    };
    for n in 1..=max_n {
        let cs = classes(n);
        let sums = summaries(n)?;
        report.spaces += cs.len();
        let found: Vec<(Vec<Counterexample>, Vec<Counterexample>)> = sums
            .par_iter()
            .map(|s| {
                let present = |block: &[u8]| block.iter().any(|&p| s.has_psi(p));
                let mut edges = Vec::new();
                for &(a, b) in &r.fig5.edges {
                    let (ba, bb) = (block_of(a), block_of(b));
                    if let Some(&(pa, sub)) = s.first_psi.iter().find(|(p, _)| ba.contains(p)) {
                        if !present(bb) {
                            edges.push(Counterexample {
                                n,
                                space: s.index,
                                subset: sub,
                                psi_a: pa,
                                psi_b: b,
                            });
                        }
                    }
                }
                let mut bad = Vec::new();
                let wanted: Vec<&(u8, u8, Vec<Expr>)> =
                    recipes.iter().filter(|(a, _, _)| s.has_psi(*a)).collect();
                if !wanted.is_empty() {
                    let t = cs[s.index].topology();
                    for a in 0..=t.mask() {
                        let pa = psi_cached(&orbit40(&t, a)).expect("classified in summary");
                        for (ra, rb, es) in wanted.iter().filter(|(ra, _, _)| *ra == pa) {
                            let ok = es.iter().any(|e| {
                                psi_cached(&orbit40(&t, e.eval(&t, &[a]))).expect("classify") == *rb
                            });
                            if !ok {
                                bad.push(Counterexample {
                                    n,
                                    space: s.index,
                                    subset: a,
                                    psi_a: *ra,
                                    psi_b: *rb,
                                });
                            }
                        }
                    }
                }
                (edges, bad)
            })
            .collect();
        for (e, b) in found {
            report.edge_failures.extend(e);
            report.recipe_failures.extend(b);
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::OperatorWord;
    use crate::census::classes;
    use crate::monoid::space_collapse;

    fn sierpinski_pair() -> Topology {
        let s = Topology::sierpinski();
        sum_space(&SumSpec::new(vec![s.clone(), s]).unwrap()).unwrap()
    }

    #[test]
    fn sum_examples() {
        let t = sierpinski_pair();
        assert_eq!(t.n(), 4);
        assert_eq!(t.opens().len(), 9);
        let s = Topology::sierpinski();
        let alone = sum_space(&SumSpec::new(vec![s.clone()]).unwrap()).unwrap();
        assert_eq!(alone, s);
        let big = vec![
            Topology::discrete(9).unwrap(),
            Topology::discrete(8).unwrap(),
        ];
        assert!(matches!(
            SumSpec::new(big),
            Err(Error::UniverseTooLarge { n: 17, .. })
        ));
    }

    // opens of a sum are exactly the unions of component opens
    #[test]
    fn sum_opens_are_products() {
        for a in classes(3).iter().take(5) {
            for b in classes(2).iter() {
                let (ta, tb) = (a.topology(), b.topology());
                let spec = SumSpec::new(vec![ta.clone(), tb.clone()]).unwrap();
                let t = sum_space(&spec).unwrap();
                let sp = &spec;
                let mut expect: Vec<u32> = ta
                    .opens()
                    .iter()
                    .flat_map(|&u| tb.opens().into_iter().map(move |v| sp.inject(&[u, v])))
                    .collect();
                expect.sort_unstable();
                assert_eq!(t.opens(), expect);
                for s in 0..=t.mask() {
                    let parts = spec.split(s);
                    assert_eq!(t.cl(s), spec.inject(&[ta.cl(parts[0]), tb.cl(parts[1])]));
                }
            }
        }
    }

    #[test]
    fn sum_collapse_intersects() {
        let ge = Topology::from_letter_base(&["w", "x y", "w x y z"]).unwrap();
        let s = Topology::sierpinski();
        let t = sum_space(&SumSpec::new(vec![ge.clone(), s.clone()]).unwrap()).unwrap();
        let expect = space_collapse(&ge, Family::KFG)
            .intersect(&space_collapse(&s, Family::KFG))
            .unwrap();
        assert_eq!(space_collapse(&t, Family::KFG), expect);
    }

    #[test]
    fn meet_anchors() {
        for k in 1..=70 {
            assert_eq!(psi_meet(1, k).unwrap(), 1);
        }
        assert_eq!(psi_meet(69, 70).unwrap(), 68);
        for k in 1..=30 {
            assert_eq!(phi_meet(30, k).unwrap(), k);
        }
        assert!(matches!(psi_meet(71, 1), Err(Error::MissingWitness(71))));
    }

    // k and k_f of a sum by evaluating every word letter by letter
    fn brute_numbers(t: &Topology) -> (usize, usize) {
        let count = |fam: Family, s: u32| {
            let mut v: Vec<u32> = fam
                .members()
                .iter()
                .map(|&m| OperatorWord::catalog(m as usize).apply(t, s))
                .collect();
            v.sort_unstable();
            v.dedup();
            v.len()
        };
        (0..=t.mask()).fold((0, 0), |(k, kf), s| {
            (k.max(count(Family::K, s)), kf.max(count(Family::KF, s)))
        })
    }

    #[test]
    fn topsum_numbers_match_brute_force() {
        let ge = Topology::from_letter_base(&["w", "x y", "w x y z"]).unwrap();
        for c in 1..=3 {
            let r = topsum_report(&ge, c).unwrap();
            let x = sum_space(&SumSpec::copies(&ge, c).unwrap()).unwrap();
            assert_eq!((r.k, r.kf), brute_numbers(&x));
        }
    }

    #[test]
    fn height_of_chain() {
        // 1 ≤ 2 ≤ 3 as a meet table
        let t = vec![vec![1, 1, 1], vec![1, 2, 2], vec![1, 2, 3]];
        assert!(MeetTable::is_semilattice(&t));
        assert_eq!(MeetTable::height(&t), 2);
    }

    #[test]
    fn topsum_examples() {
        let ge = Topology::from_letter_base(&["w", "x y", "w x y z"]).unwrap();
        let got: Vec<(usize, usize)> = (1..=2)
            .map(|c| topsum_report(&ge, c).map(|r| (r.k, r.kf)).unwrap())
            .collect();
        assert_eq!(got, vec![(8, 10), (10, 24)]);
        let d = Topology::discrete(1).unwrap();
        let r = topsum_report(&d, 2).unwrap();
        assert_eq!((r.new_psi, r.k, r.kf), (vec![68], 2, 4));
        assert!(matches!(
            topsum_report(&ge, 5),
            Err(Error::UniverseTooLarge { .. })
        ));
    }
}

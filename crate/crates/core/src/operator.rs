//! Set operators as explicit image tables.

use crate::catalog::{eval_letters, OperatorWord};
use crate::error::{Error, Result};
use crate::subset::universe_mask;
use crate::topology::Topology;

/// A map `2^X → 2^X` stored by its value at every subset code.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct SetOperator {
    n: usize,
    table: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeOp {
    Join,
    Meet,
    /// `a∘o1`; the second operand is ignored.
    Complement,
    /// `o1 ∧ a o2`
    Difference,
}

impl SetOperator {
    pub fn from_fn(n: usize, f: impl Fn(u32) -> u32) -> Self {
        let m = universe_mask(n);
        Self {
            n,
            table: (0..=m).map(|s| f(s) & m).collect(),
        }
    }

    pub fn from_table(n: usize, table: Vec<u32>) -> Result<Self> {
        let m = universe_mask(n);
        if table.len() != (m as usize) + 1 || table.iter().any(|&v| v & !m != 0) {
            return Err(Error::InvalidTopology(
                "operator table has the wrong shape".into(),
            ));
        }
        Ok(Self { n, table })
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |s| s)
    }

    pub fn complement(n: usize) -> Self {
        Self::from_fn(n, |s| !s)
    }

    pub fn zero(n: usize) -> Self {
        Self::from_fn(n, |_| 0)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn table(&self) -> &[u32] {
        &self.table
    }

    #[inline]
    pub fn apply(&self, s: u32) -> u32 {
        self.table[s as usize]
    }

    fn same_universe(&self, other: &SetOperator) -> Result<()> {
        if self.n != other.n {
            Err(Error::UniverseMismatch {
                left: self.n,
                right: other.n,
            })
        } else {
            Ok(())
        }
    }
}

/// Operator denoted by `w` on `t`.
pub fn word_to_operator(t: &Topology, w: &OperatorWord) -> SetOperator {
    SetOperator::from_fn(t.n(), |s| eval_letters(t, w.as_str(), s))
}

/// Parse then evaluate a word.
pub fn named_operator(t: &Topology, w: &str) -> Result<SetOperator> {
    Ok(word_to_operator(t, &OperatorWord::parse(w)?))
}

/// `o1 ∘ o2`, i.e. apply `o2` first.
pub fn compose(o1: &SetOperator, o2: &SetOperator) -> Result<SetOperator> {
    o1.same_universe(o2)?;
    Ok(SetOperator {
        n: o1.n,
        table: o2.table.iter().map(|&v| o1.table[v as usize]).collect(),
    })
}

/// `a o a`
pub fn dual(o: &SetOperator) -> SetOperator {
    let m = universe_mask(o.n);
    SetOperator::from_fn(o.n, |s| !o.table[(!s & m) as usize])
}

pub fn lattice(op: LatticeOp, o1: &SetOperator, o2: Option<&SetOperator>) -> Result<SetOperator> {
    let m = universe_mask(o1.n);
    if op == LatticeOp::Complement {
        return Ok(SetOperator {
            n: o1.n,
            table: o1.table.iter().map(|&v| !v & m).collect(),
        });
    }
    let o2 = o2.ok_or_else(|| {
        Error::InvalidTopology("binary lattice operation needs two operands".into())
    })?;
    o1.same_universe(o2)?;
    let table = o1
        .table
        .iter()
        .zip(&o2.table)
        .map(|(&x, &y)| match op {
            LatticeOp::Join => x | y,
            LatticeOp::Meet => x & y,
            LatticeOp::Difference => x & !y,
            LatticeOp::Complement => unreachable!(),
        })
        .collect();
    Ok(SetOperator { n: o1.n, table })
}

/// `o1 A ⊆ o2 A` for every `A`.
pub fn leq(o1: &SetOperator, o2: &SetOperator) -> Result<bool> {
    o1.same_universe(o2)?;
    Ok(o1.table.iter().zip(&o2.table).all(|(&x, &y)| x & !y == 0))
}

/// `o1 ∧ o2 = 0`.
pub fn disjoint(o1: &SetOperator, o2: &SetOperator) -> Result<bool> {
    o1.same_universe(o2)?;
    Ok(o1.table.iter().zip(&o2.table).all(|(&x, &y)| x & y == 0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::{self, Family, CATALOG_LEN};
    use proptest::prelude::*;

    fn op(t: &Topology, w: &str) -> SetOperator {
        named_operator(t, w).unwrap()
    }

    fn ge() -> Topology {
        Topology::from_letter_base(&["w", "x y", "w x y z"]).unwrap()
    }

    #[test]
    fn word_examples() {
        let s = Topology::sierpinski();
        assert_eq!(op(&s, "0"), SetOperator::zero(2));
        assert_eq!(op(&s, "i").table(), &[0b00, 0b01, 0b00, 0b11]);
        let t = ge();
        let fbg = compose(&op(&t, "f"), &compose(&op(&t, "b"), &op(&t, "g")).unwrap()).unwrap();
        assert_eq!(op(&t, "fbg"), fbg);
        assert!(matches!(
            named_operator(&t, "bb"),
            Err(Error::UnknownWord(_))
        ));
    }

    #[test]
    fn compose_examples() {
        let s = Topology::sierpinski();
        let id = SetOperator::identity(2);
        assert_eq!(compose(&id, &op(&s, "fb")).unwrap(), op(&s, "fb"));
        assert_eq!(
            compose(&op(&s, "g"), &op(&s, "i")).unwrap(),
            SetOperator::zero(2)
        );
        assert_eq!(compose(&op(&s, "b"), &op(&s, "i")).unwrap().apply(0b10), 0);
        assert!(matches!(
            compose(&id, &SetOperator::identity(3)),
            Err(Error::UniverseMismatch { left: 2, right: 3 })
        ));
    }

    #[test]
    fn lattice_and_order_examples() {
        let s = Topology::sierpinski();
        let t = ge();
        let b = op(&t, "b");
        let ba = compose(&b, &SetOperator::complement(4)).unwrap();
        assert_eq!(
            lattice(LatticeOp::Meet, &b, Some(&ba)).unwrap(),
            op(&t, "f")
        );
        assert_eq!(
            lattice(LatticeOp::Complement, &op(&t, "0"), None).unwrap(),
            op(&t, "1")
        );
        assert_eq!(lattice(LatticeOp::Join, &b, Some(&op(&t, "0"))).unwrap(), b);
        assert_eq!(
            lattice(
                LatticeOp::Difference,
                &SetOperator::identity(4),
                Some(&op(&t, "i"))
            )
            .unwrap(),
            op(&t, "g")
        );
        assert!(leq(&op(&s, "0"), &op(&s, "bib")).unwrap());
        assert!(leq(&op(&s, "i"), &op(&s, "id")).unwrap());
        assert!(leq(&op(&s, "id"), &op(&s, "b")).unwrap());
        assert!(leq(&op(&t, "fib"), &op(&t, "bib")).unwrap());
        assert!(disjoint(&SetOperator::identity(2), &SetOperator::complement(2)).unwrap());
        assert!(disjoint(&op(&s, "0"), &op(&s, "b")).unwrap());
        assert!(disjoint(&op(&s, "i"), &op(&s, "f")).unwrap());
    }

    #[test]
    fn dual_examples() {
        let t = ge();
        assert_eq!(dual(&SetOperator::identity(4)), SetOperator::identity(4));
        assert_eq!(dual(&op(&t, "b")), op(&t, "i"));
        for idx in 0..CATALOG_LEN {
            let o = op(&t, catalog::name(idx));
            assert_eq!(dual(&dual(&o)), o);
            if let Some(d) = catalog::dual(idx) {
                assert_eq!(
                    dual(&o),
                    op(&t, catalog::name(d)),
                    "d({})",
                    catalog::name(idx)
                );
            }
        }
    }

    #[test]
    fn recognized_forms_evaluate() {
        let t = ge();
        for w in OperatorWord::all_forms() {
            let o = word_to_operator(&t, &w);
            if let Some(stem) = w
                .as_str()
                .strip_suffix('a')
                .filter(|_| w.catalog_index().is_none())
            {
                let expect = compose(&op(&t, stem), &SetOperator::complement(4)).unwrap();
                assert_eq!(o, expect);
            }
        }
        assert_eq!(op(&t, "fa"), op(&t, "f"));
        assert_eq!(op(&t, "ba"), op(&t, "ai"));
    }

    fn arb_space() -> impl Strategy<Value = Topology> {
        (1usize..=5).prop_flat_map(|n| {
            proptest::collection::vec(1u32..(1 << n), 1..5).prop_map(move |mut base| {
                base.push(universe_mask(n));
                let subs: Vec<_> = base
                    .iter()
                    .map(|&b| crate::subset::Subset::new(b, n).unwrap())
                    .collect();
                Topology::from_base(&subs, n).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn duality_laws(t in arb_space(), x in 0usize..40, y in 0usize..40) {
            let o1 = op(&t, catalog::name(x));
            let o2 = op(&t, catalog::name(y));
            let c = compose(&o1, &o2).unwrap();
            prop_assert_eq!(dual(&c), compose(&dual(&o1), &dual(&o2)).unwrap());
            prop_assert_eq!(
                dual(&lattice(LatticeOp::Join, &o1, Some(&o2)).unwrap()),
                lattice(LatticeOp::Meet, &dual(&o1), Some(&dual(&o2))).unwrap()
            );
            prop_assert_eq!(leq(&o1, &o2).unwrap(), leq(&dual(&o2), &dual(&o1)).unwrap());
        }

        #[test]
        fn boundary_splits_along_border(t in arb_space()) {
            let g = op(&t, "g");
            let ga = compose(&g, &SetOperator::complement(t.n())).unwrap();
            prop_assert!(disjoint(&g, &ga).unwrap());
            prop_assert_eq!(lattice(LatticeOp::Join, &g, Some(&ga)).unwrap(), op(&t, "f"));
        }

        #[test]
        fn even_and_odd_words_separate(t in arb_space()) {
            let full = t.mask();
            for &e in Family::KFG0.members() {
                let oe = op(&t, catalog::name(e as usize));
                for &o in Family::KFG0.members() {
                    let oo = op(&t, catalog::name(catalog::left_a(o as usize)));
                    prop_assert!(oe.apply(0) != oo.apply(0) || oe.apply(full) != oo.apply(full));
                }
            }
        }
    }
}

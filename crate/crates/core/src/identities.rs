//! Checks a space against the bundled catalog of operator identities.

use std::sync::OnceLock;

use serde::Serialize;

use crate::error::Result;
use crate::expr::Expr;
use crate::monoid::{classify_space, SpaceType};
use crate::reference::identity_catalog;
use crate::topology::Topology;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Rel {
    Eq,
    Le,
    Disjoint,
    Ne,
}

impl Rel {
    fn parse(s: &str) -> Rel {
        match s {
            "=" => Rel::Eq,
            "<=" => Rel::Le,
            "disjoint" => Rel::Disjoint,
            "!=" => Rel::Ne,
            other => panic!("unknown relation {other} in identity catalog"),
        }
    }

    fn holds(self, x: u32, y: u32) -> bool {
        match self {
            Rel::Eq => x == y,
            Rel::Le => x & !y == 0,
            Rel::Disjoint => x & y == 0,
            Rel::Ne => x != y,
        }
    }
}

struct Compiled {
    name: String,
    arity: usize,
    hyps: Vec<(Expr, Rel, Expr)>,
    concl: (Expr, Rel, Expr),
    space_scope: bool,
    applies_to: Vec<SpaceType>,
}

fn compiled() -> &'static [Compiled] {
    static C: OnceLock<Vec<Compiled>> = OnceLock::new();
    C.get_or_init(|| {
        identity_catalog()
            .identities
            .iter()
            .map(|r| {
                let vars: Vec<&str> = r.vars.iter().map(String::as_str).collect();
                let p = |s: &str| Expr::parse(s, &vars).expect("bundled identity parses");
                Compiled {
                    name: r.name.clone(),
                    arity: vars.len(),
                    hyps: r
                        .hypotheses
                        .iter()
                        .map(|h| (p(&h.lhs), Rel::parse(&h.relation), p(&h.rhs)))
                        .collect(),
                    concl: (p(&r.lhs), Rel::parse(&r.relation), p(&r.rhs)),
                    space_scope: r.scope == "space",
                    applies_to: r
                        .applies_to
                        .iter()
                        .map(|s| s.parse().expect("bundled space type"))
                        .collect(),
                }
            })
            .collect()
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Outcome {
    Pass,
    /// The identity is stated for other space types only.
    NotApplicable,
    Fail {
        witness: Vec<u32>,
    },
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityResult {
    pub name: String,
    pub outcome: Outcome,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub results: Vec<IdentityResult>,
}

impl IdentityReport {
    pub fn all_pass(&self) -> bool {
        self.failures().is_empty()
    }

    pub fn failures(&self) -> Vec<&IdentityResult> {
        self.results
            .iter()
            .filter(|r| matches!(r.outcome, Outcome::Fail { .. }))
            .collect()
    }
}

fn envs(t: &Topology, arity: usize) -> Box<dyn Iterator<Item = Vec<u32>>> {
    let m = t.mask();
    match arity {
        1 => Box::new((0..=m).map(|a| vec![a])),
        _ => Box::new((0..=m).flat_map(move |a| (0..=m).map(move |b| vec![a, b]))),
    }
}

fn check(t: &Topology, c: &Compiled) -> Outcome {
    let holds =
        |(l, r, rhs): &(Expr, Rel, Expr), env: &[u32]| r.holds(l.eval(t, env), rhs.eval(t, env));
    if c.space_scope {
        let premise = envs(t, c.arity).all(|env| c.hyps.iter().all(|h| holds(h, &env)));
        if !premise {
            return Outcome::Pass;
        }
        for env in envs(t, c.arity) {
            if !holds(&c.concl, &env) {
                return Outcome::Fail { witness: env };
            }
        }
        Outcome::Pass
    } else {
        for env in envs(t, c.arity) {
            if c.hyps.iter().all(|h| holds(h, &env)) && !holds(&c.concl, &env) {
                return Outcome::Fail { witness: env };
            }
        }
        Outcome::Pass
    }
}

/// Evaluate every catalog identity on `t`, over all subsets or subset pairs.
pub fn verify_identities(t: &Topology) -> Result<IdentityReport> {
    let st = classify_space(t).ok();
    let results = compiled()
        .iter()
        .map(|c| {
            let applicable =
                c.applies_to.is_empty() || st.is_some_and(|s| c.applies_to.contains(&s));
            let outcome = if applicable {
                check(t, c)
            } else {
                Outcome::NotApplicable
            };
            IdentityResult {
                name: c.name.clone(),
                outcome,
            }
        })
        .collect();
    Ok(IdentityReport { results })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::topology::Topology;

    #[test]
    fn minimal_spaces_pass() {
        for base in [
            vec!["x", "x y"],
            vec!["v", "w", "v w x", "y z"],
            vec!["w", "x y", "w x y z"],
        ] {
            let t = Topology::from_letter_base(&base).unwrap();
            let r = verify_identities(&t).unwrap();
            assert!(r.failures().is_empty(), "{base:?}: {:?}", r.failures());
            assert!(r.all_pass());
        }
        let kd = Topology::from_letter_base(&["v", "w", "v w x", "y z"]).unwrap();
        let r = verify_identities(&kd).unwrap();
        let bib = r.results.iter().find(|x| x.name == "kd_bib").unwrap();
        assert_eq!(bib.outcome, Outcome::Pass);
    }

    #[test]
    fn corrupted_table_fails() {
        let bad = Topology::from_closure_table_unchecked(2, vec![0b11, 0b10, 0b01, 0b00]).unwrap();
        assert!(!crate::topology::validate(&bad).is_ok());
        let r = verify_identities(&bad).unwrap();
        assert!(!r.failures().is_empty());
    }
}

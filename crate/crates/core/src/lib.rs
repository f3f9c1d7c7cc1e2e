//! Operator calculus of the closure, complement, boundary and border operators
//! on finite topological spaces.

pub mod cache;
pub mod canon;
pub mod catalog;
pub mod census;
pub mod classifier;
pub mod enumerate;
pub mod error;
pub mod expr;
pub mod identities;
pub mod monoid;
pub mod operator;
pub mod poset;
pub mod reference;
pub mod subset;
pub mod sums;
pub mod topology;
pub mod verify;

pub use catalog::{Family, OperatorWord};
pub use enumerate::{canonical_form, enumerate_classes, enumerate_labeled, CanonicalSpace};
pub use error::{Error, Result};
pub use monoid::{
    classify_kfg, classify_space, generate_monoid, kfg_operators, projection_order, space_collapse,
    space_ordering, Collapse, KfgType, Ordering, SpaceType,
};
pub use operator::{
    compose, disjoint, dual, lattice, leq, word_to_operator, LatticeOp, SetOperator,
};
pub use poset::{extender, poset_refines, Refinement, Relation};
pub use subset::{complement, Subset};
pub use topology::{border, boundary, closure, interior, validate, Topology, ValidationReport};

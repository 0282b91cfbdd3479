//! Finite-signature propositional logic.

mod canon;
mod formula;
mod parse;
mod semantics;
mod signature;

pub use canon::{canonical_formula, canonical_representative, class_sets, enumerate_classes};
pub use formula::{Formula, Rendered};
pub use parse::parse_formula;
pub use semantics::{
    entails, equivalent, is_consistent, is_contradiction, is_pairwise_consistent, is_tautology,
    models, models_of_all, Exc, ModelSet, Theory,
};
pub use signature::{Fragment, Signature, MAX_ATOMS};

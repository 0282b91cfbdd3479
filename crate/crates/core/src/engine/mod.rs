//! Internal expansion and contraction, and the fixpoint loops built on them.

mod fixpoint;
mod internal;

pub use fixpoint::{
    contract_evidence, expand_evidence, gen_minus, gen_plus, revise, update_minus, update_plus,
    Change, ChangeTrace, EngineConfig, Op, Round,
};
pub use internal::{
    contraction_targets, internal_contract, internal_expand, remainders, Choice, Selection,
};

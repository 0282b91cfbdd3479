//! Attributive beliefs, association tuples, evidence and belief bases.

mod assoc;
mod axioms;
mod base;
mod evidence;
mod quad;

pub use assoc::{literals, AssocResult, AssociationMap, AssociationTuple};
pub use axioms::{check_axioms, is_belief_set, AxiomOutcome, AxiomReport, AXIOM_NAMES};
pub use base::BeliefBase;
pub use evidence::{visible, visible_neg, Evidence};
pub use quad::{Mode, QuadDisplay, Quadruple, Triple};

//! Independent checkers: a naive truth-table evaluator, exhaustive
//! remainder search, randomised postulate batteries and the no-recovery
//! witness search.

mod battery;
mod brute;
mod gen;
mod truth;
mod witness;

pub use battery::{
    postulate_battery, preservation_battery, preservation_check, strategies, BatteryReport,
    Violation,
};
pub use brute::brute_remainders;
pub use gen::{random_base, random_evidence, random_targets};
pub use truth::{assignments, entails_by_table, evaluate, formulas_up_to, random_formula};
pub use witness::{no_recovery_base, no_recovery_witness, WitnessReport};

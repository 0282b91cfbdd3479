//! Line-oriented scenario files: a signature, an association map, named
//! evidence, an initial base, a script of belief changes and assertions.
//!
//! ```text
//! [signature]
//! atoms p1 p2 p3
//! fragment full
//!
//! [assoc]
//! quad p1 : p2 => p3 mode 0
//!
//! [evidence learn]
//! primary p2
//!
//! [base]
//! believe p1
//! support p1 <- {T}
//!
//! [script]
//! expand learn
//! contract forget with maxichoice
//!
//! [assert]
//! p3 in final
//! axioms final
//! ```

mod parse;
mod report;
mod run;

use std::collections::{BTreeMap, BTreeSet};

pub use parse::parse_quad;
pub use report::{AssertionReport, RoundReport, RowReport, TraceReport};
pub use run::{RunOptions, ScenarioRun};

use crate::belief::{AssociationMap, Evidence};
use crate::engine::{Change, Selection};
use crate::logic::{Formula, Signature};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    pub name: String,
    pub sig: Signature,
    pub assoc: AssociationMap,
    pub evidence: BTreeMap<String, Evidence>,
    pub believed: Vec<Formula>,
    pub rows: Vec<(Formula, BTreeSet<Formula>)>,
    pub script: Vec<Step>,
    pub assertions: Vec<Assertion>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub change: Change,
    pub evidence: String,
    /// Overrides the run's strategy for this step.
    pub strategy: Option<Selection>,
}

/// Which base an assertion looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Stage {
    Initial,
    /// After the n-th script step, counting from 1.
    After(usize),
    Final,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Check {
    Believed { formula: Formula, expected: bool },
    Axioms,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assertion {
    /// The assertion as written.
    pub text: String,
    pub stage: Stage,
    pub check: Check,
}

const BUNDLED: [(&str, &str); 5] = [
    ("conan", include_str!("../../scenarios/conan.scn")),
    ("agm-example", include_str!("../../scenarios/agm-example.scn")),
    ("no-recovery-monotone", include_str!("../../scenarios/no-recovery-monotone.scn")),
    ("recovery-expected", include_str!("../../scenarios/recovery-expected.scn")),
    ("no-recovery-full", include_str!("../../scenarios/no-recovery-full.scn")),
];

/// Names of the scenarios compiled into the library.
pub fn bundled_names() -> impl Iterator<Item = &'static str> {
    BUNDLED.iter().map(|(name, _)| *name)
}

/// Source text of a bundled scenario.
pub fn bundled(name: &str) -> Option<&'static str> {
    BUNDLED.iter().find(|(n, _)| *n == name).map(|(_, text)| *text)
}

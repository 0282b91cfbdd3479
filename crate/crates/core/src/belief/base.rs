use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::assoc::{AssociationMap, AssociationTuple};
use super::quad::Quadruple;
use crate::error::{Error, Result};
use crate::logic::{models, Formula, ModelSet, Signature, Theory};
use crate::support::table::{synthesize, Constraint, Overrides};
use crate::support::{SupportRow, SupportTable};

/// `(Γ, Δ, Π)` together with the association map that drives `Cond`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BeliefBase {
    sig: Signature,
    beliefs: Theory,
    quads: BTreeSet<Quadruple>,
    table: SupportTable,
    assoc: AssociationMap,
}

impl BeliefBase {
    /// Builds a base believing `believed`, with the given explicit support
    /// rows. Believed formulas without a row default to `{⊤}`; every other
    /// believed class gets a synthesised row.
    pub fn new(
        sig: Signature,
        mut assoc: AssociationMap,
        believed: &[Formula],
        rows: &[(Formula, BTreeSet<Formula>)],
    ) -> Result<BeliefBase> {
        let beliefs = Theory::closure(believed, &sig);
        let mut overrides = BTreeMap::new();
        let mut constraints = Vec::new();
        for (subject, support) in rows {
            let class = models(subject, &sig);
            if !beliefs.contains_class(class) {
                return Err(Error::Precondition(format!(
                    "support row for {} which is not believed",
                    subject.display(&sig)
                )));
            }
            let row = SupportRow::new(subject.clone(), support.clone(), &sig);
            constraints.push(Constraint { class, closure: row.closure, tier: 0 });
            if overrides.insert(class, row).is_some() {
                return Err(Error::Invalid(format!(
                    "two support rows for the class of {}",
                    subject.display(&sig)
                )));
            }
        }
        for f in believed {
            assoc.anchor(f.clone(), &sig);
            let class = models(f, &sig);
            overrides.entry(class).or_insert_with(|| {
                let row = SupportRow::new(f.clone(), [Formula::Top].into(), &sig);
                constraints.push(Constraint { class, closure: row.closure, tier: 1 });
                row
            });
        }
        let table = synthesize(
            &SupportTable::new(),
            &overrides,
            Overrides::Verbatim,
            &constraints,
            beliefs.models(),
            &sig,
        );
        let mut base = BeliefBase { sig, beliefs, quads: BTreeSet::new(), table, assoc };
        base.quads = base.association_tuple().cond_of_beliefs();
        Ok(base)
    }

    /// The tautology-only base: nothing believed beyond `L(∅)`.
    pub fn empty(sig: Signature, assoc: AssociationMap) -> BeliefBase {
        BeliefBase::new(sig, assoc, &[], &[]).expect("no rows to reject")
    }

    /// Assembles a base from raw components without any checking, for
    /// probing the axiom checker.
    pub fn from_parts(
        sig: Signature,
        beliefs: Theory,
        quads: BTreeSet<Quadruple>,
        table: SupportTable,
        assoc: AssociationMap,
    ) -> BeliefBase {
        BeliefBase { sig, beliefs, quads, table, assoc }
    }

    pub fn sig(&self) -> &Signature {
        &self.sig
    }

    pub fn beliefs(&self) -> &Theory {
        &self.beliefs
    }

    pub fn quads(&self) -> &BTreeSet<Quadruple> {
        &self.quads
    }

    pub fn table(&self) -> &SupportTable {
        &self.table
    }

    pub fn assoc(&self) -> &AssociationMap {
        &self.assoc
    }

    pub fn association_tuple(&self) -> AssociationTuple<'_> {
        AssociationTuple::new(&self.assoc, &self.beliefs, &self.sig)
    }

    pub fn believes(&self, f: &Formula) -> bool {
        self.beliefs.contains(f, &self.sig)
    }

    pub fn believes_class(&self, class: ModelSet) -> bool {
        self.beliefs.contains_class(class)
    }

    /// Same table and map, new beliefs; `π2` is recomputed as `Cond` of the
    /// new beliefs.
    pub(crate) fn with_beliefs(&self, beliefs: Theory) -> BeliefBase {
        let mut out = BeliefBase { beliefs, quads: BTreeSet::new(), ..self.clone() };
        out.quads = out.association_tuple().cond_of_beliefs();
        out
    }

    pub(crate) fn with_table(&self, table: SupportTable) -> BeliefBase {
        BeliefBase { table, ..self.clone() }
    }

    pub(crate) fn assoc_mut(&mut self) -> &mut AssociationMap {
        &mut self.assoc
    }

    pub(crate) fn refresh_quads(&mut self) {
        self.quads = self.association_tuple().cond_of_beliefs();
    }
}

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::internal::{contraction_targets, internal_contract, internal_expand, Choice, Selection};
use crate::belief::{visible, visible_neg, BeliefBase, Evidence};
use crate::error::{Error, Result};
use crate::logic::{is_tautology, models, Formula, ModelSet};
use crate::support::{augment_with_defaults, cohere, reduce, rho, SupportTable};

/// Subjects of rows left without a believed supporter.
pub fn gen_minus(base: &BeliefBase) -> BTreeSet<Formula> {
    base.table()
        .rows()
        .filter(|(_, row)| !row.support.iter().any(|g| base.believes(g)))
        .map(|(_, row)| row.subject.clone())
        .collect()
}

/// Payloads of attributive beliefs whose head and trigger are believed.
pub fn gen_plus(base: &BeliefBase) -> BTreeSet<Formula> {
    base.quads()
        .iter()
        .filter(|q| base.believes(&q.head) && base.believes(&q.trigger))
        .map(|q| q.payload.clone())
        .collect()
}

/// Strips supports of everything no longer believed, drops the rows of
/// lost beliefs, and rebuilds the derived rows.
pub fn update_minus(base: &BeliefBase) -> BeliefBase {
    let lost: BTreeSet<Formula> = base
        .table()
        .rows()
        .filter(|(class, _)| !base.believes_class(*class))
        .map(|(_, row)| row.subject.clone())
        .collect();
    cohere(&reduce(base, &lost))
}

/// Registers `(payload, ρ(q))` for every triggered, believed payload, and
/// gives believed evidence without a row the autonomous support `{⊤}`.
pub fn update_plus(base: &BeliefBase) -> BeliefBase {
    let incoming: Vec<(Formula, BTreeSet<Formula>)> = base
        .quads()
        .iter()
        .filter(|q| base.believes(&q.head) && base.believes(&q.trigger) && base.believes(&q.payload))
        .map(|q| (q.payload.clone(), rho(q)))
        .collect();
    let defaults: Vec<ModelSet> =
        base.assoc().anchors().iter().map(|f| models(f, base.sig())).collect();
    augment_with_defaults(base, &incoming, &defaults)
        .expect("only believed payloads are registered")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Op {
    Expand,
    Contract,
}

/// One pass of a fixpoint loop.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Round {
    pub op: Op,
    pub index: usize,
    /// The set the internal operator was applied to.
    pub gamma: BTreeSet<Formula>,
    pub before: ModelSet,
    /// Beliefs right after the internal operator.
    pub after: ModelSet,
    pub choice: Option<Choice>,
    /// `Gen` of the intermediate base, the next round's `Γ`.
    pub gen: BTreeSet<Formula>,
    /// Table after `Update`.
    pub table: SupportTable,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChangeTrace {
    pub rounds: Vec<Round>,
}

impl ChangeTrace {
    pub fn extend(&mut self, other: ChangeTrace) {
        self.rounds.extend(other.rounds);
    }

    /// Number of choice points met so far.
    pub fn choice_points(&self) -> usize {
        self.rounds.iter().filter(|r| r.choice.is_some()).count()
    }

    /// Longest run of consecutive rounds of the same loop.
    pub fn longest_loop(&self) -> usize {
        let mut best = 0;
        let mut run = 0;
        for (i, r) in self.rounds.iter().enumerate() {
            run = if r.index == 0 || i == 0 { 1 } else { run + 1 };
            best = best.max(run);
        }
        best
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EngineConfig {
    pub selection: Selection,
    /// Round limit per loop; defaults to `2^n + 1`.
    pub max_rounds: Option<usize>,
    /// Fault injection for the test harness: skip every `Update` step.
    pub skip_update: bool,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig { selection: Selection::FullMeet, max_rounds: None, skip_update: false }
    }
}

impl EngineConfig {
    pub fn with_selection(selection: Selection) -> EngineConfig {
        EngineConfig { selection, ..EngineConfig::default() }
    }

    fn limit(&self, base: &BeliefBase) -> usize {
        self.max_rounds.unwrap_or(base.sig().valuation_count() + 1)
    }
}

/// `B ⊕ e`: expand by the visible set, then keep expanding by triggered
/// payloads until nothing changes.
pub fn expand_evidence(
    base: &BeliefBase,
    e: &Evidence,
    cfg: &EngineConfig,
) -> Result<(BeliefBase, ChangeTrace)> {
    let sig = base.sig().clone();
    let mut b0 = base.clone();
    for p in e.primaries().iter().filter(|p| !is_tautology(p, &sig)) {
        b0.assoc_mut().anchor(p.clone(), &sig);
    }
    // The association map is keyed by literals; compound-headed evidence
    // quads only affect what is visible.
    for q in e.quads().iter().filter(|q| q.head.is_literal()) {
        b0.assoc_mut().insert_quad(q, &sig)?;
    }
    b0.refresh_quads();
    let mut gamma = visible(&b0, e);
    let mut trace = ChangeTrace::default();
    let limit = cfg.limit(base);
    for index in 0.. {
        if index == limit {
            return Err(Error::Overflow(limit));
        }
        let b1 = internal_expand(&b0, &gamma);
        let gen = gen_plus(&b1);
        let next = if cfg.skip_update { b1.clone() } else { update_plus(&b1) };
        trace.rounds.push(Round {
            op: Op::Expand,
            index,
            gamma: std::mem::take(&mut gamma),
            before: b0.beliefs().models(),
            after: b1.beliefs().models(),
            choice: None,
            gen: gen.clone(),
            table: next.table().clone(),
        });
        let settled = next == b0 && gen.iter().all(|p| next.believes(p));
        b0 = next;
        gamma = gen;
        if settled {
            break;
        }
    }
    Ok((b0, trace))
}

/// `B ⊖ e`: contract by the visible set, then keep contracting by beliefs
/// whose support is gone until nothing changes.
pub fn contract_evidence(
    base: &BeliefBase,
    e: &Evidence,
    cfg: &EngineConfig,
) -> Result<(BeliefBase, ChangeTrace)> {
    contract_from(base, visible(base, e), cfg, 0)
}

fn contract_from(
    base: &BeliefBase,
    mut gamma: BTreeSet<Formula>,
    cfg: &EngineConfig,
    first_call: usize,
) -> Result<(BeliefBase, ChangeTrace)> {
    let sig = base.sig().clone();
    let mut b0 = base.clone();
    let mut trace = ChangeTrace::default();
    let mut call = first_call;
    let limit = cfg.limit(base);
    for index in 0.. {
        if index == limit {
            return Err(Error::Overflow(limit));
        }
        let (b1, choice) = internal_contract(&b0, &gamma, &cfg.selection, call);
        if choice.is_some() {
            call += 1;
        }
        let gen = gen_minus(&b1);
        let next = if cfg.skip_update { b1.clone() } else { update_minus(&b1) };
        trace.rounds.push(Round {
            op: Op::Contract,
            index,
            gamma: std::mem::take(&mut gamma),
            before: b0.beliefs().models(),
            after: b1.beliefs().models(),
            choice,
            gen: gen.clone(),
            table: next.table().clone(),
        });
        let settled = next == b0 && contraction_targets(next.beliefs(), &gen, &sig).is_empty();
        b0 = next;
        gamma = gen;
        if settled {
            break;
        }
    }
    Ok((b0, trace))
}

/// `B ★ e`: contract by the negated visible set, then expand by the visible
/// set with its attributive beliefs, both computed against `base`.
pub fn revise(
    base: &BeliefBase,
    e: &Evidence,
    cfg: &EngineConfig,
) -> Result<(BeliefBase, ChangeTrace)> {
    let negated = visible_neg(base, e)?;
    let seen = visible(base, e);
    let attributed = base.association_tuple().cond_set(&seen);
    let (contracted, mut trace) = contract_from(base, negated, cfg, 0)?;
    let positive = Evidence::new(seen, attributed, base.sig())?;
    let (out, expansion) = expand_evidence(&contracted, &positive, cfg)?;
    trace.extend(expansion);
    Ok((out, trace))
}

/// The three evidence-driven changes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Change {
    Expand,
    Contract,
    Revise,
}

impl Change {
    pub const ALL: [Change; 3] = [Change::Expand, Change::Contract, Change::Revise];

    pub fn apply(
        self,
        base: &BeliefBase,
        e: &Evidence,
        cfg: &EngineConfig,
    ) -> Result<(BeliefBase, ChangeTrace)> {
        match self {
            Change::Expand => expand_evidence(base, e, cfg),
            Change::Contract => contract_evidence(base, e, cfg),
            Change::Revise => revise(base, e, cfg),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Change::Expand => "expand",
            Change::Contract => "contract",
            Change::Revise => "revise",
        }
    }
}

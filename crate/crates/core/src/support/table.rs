//! Support tables and the synthesis of coherent rows.
//!
//! A table satisfying disjunctive and conjunctive propagation over every
//! believed class is a lattice homomorphism from believed classes into
//! theories. Every such homomorphism has the same shape: each valuation
//! `u` carries a label, and the support of class `S` excludes `u` exactly
//! when `u`'s label lies in `S` (or the label says "always"). Synthesis
//! solves for that labelling valuation by valuation against the rows that
//! must be honoured, then reads every believed row off the labelling.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::logic::{
    canonical_formula, is_tautology, models_of_all, Formula, Fragment, ModelSet, Signature,
};

/// One row `(P, Γ)`; `closure` caches the model set of `L(Γ)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SupportRow {
    pub subject: Formula,
    pub support: BTreeSet<Formula>,
    pub closure: ModelSet,
    /// Registered rather than synthesised.
    pub explicit: bool,
}

impl SupportRow {
    pub fn new(subject: Formula, support: BTreeSet<Formula>, sig: &Signature) -> SupportRow {
        let closure = models_of_all(&support, sig);
        SupportRow { subject, support, closure, explicit: true }
    }

    pub(crate) fn derived(subject: Formula, support: BTreeSet<Formula>, sig: &Signature) -> Self {
        SupportRow { explicit: false, ..SupportRow::new(subject, support, sig) }
    }

    pub fn has_tautology(&self, sig: &Signature) -> bool {
        self.support.iter().any(|g| is_tautology(g, sig))
    }
}

/// Rows keyed by the subject's model set: at most one row per class.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SupportTable {
    rows: BTreeMap<ModelSet, SupportRow>,
}

impl SupportTable {
    pub fn new() -> SupportTable {
        SupportTable::default()
    }

    pub fn insert(&mut self, class: ModelSet, row: SupportRow) {
        self.rows.insert(class, row);
    }

    pub fn get(&self, class: ModelSet) -> Option<&SupportRow> {
        self.rows.get(&class)
    }

    pub fn remove(&mut self, class: ModelSet) -> Option<SupportRow> {
        self.rows.remove(&class)
    }

    pub fn rows(&self) -> impl Iterator<Item = (ModelSet, &SupportRow)> {
        self.rows.iter().map(|(k, v)| (*k, v))
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub(crate) fn retain(&mut self, mut keep: impl FnMut(ModelSet, &SupportRow) -> bool) {
        self.rows.retain(|k, v| keep(*k, v));
    }

    pub(crate) fn rows_mut(&mut self) -> impl Iterator<Item = (&ModelSet, &mut SupportRow)> {
        self.rows.iter_mut()
    }
}

/// Every class believed under the model set `believed`, in the
/// signature's fragment.
pub fn believed_classes(believed: ModelSet, sig: &Signature) -> Vec<ModelSet> {
    let free = believed.complement(sig).bits();
    let mut out = Vec::with_capacity(1 << free.count_ones());
    let mut sub = free;
    loop {
        let class = ModelSet(believed.bits() | sub);
        if sig.fragment() == Fragment::Full || class.is_up_set(sig) {
            out.push(class);
        }
        if sub == 0 {
            break;
        }
        sub = (sub - 1) & free;
    }
    out.sort();
    out
}

/// A row the synthesis should reproduce. Lower tiers win conflicts.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Constraint {
    pub class: ModelSet,
    pub closure: ModelSet,
    pub tier: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Label {
    Never,
    At(usize),
    Always,
}

impl Label {
    fn excludes_in(self, class: ModelSet) -> bool {
        match self {
            Label::Never => false,
            Label::Always => true,
            Label::At(v) => class.contains(v),
        }
    }
}

pub(crate) const TIERS: usize = 4;

fn solve(constraints: &[Constraint], believed: ModelSet, sig: &Signature) -> Vec<Label> {
    let mut candidates = vec![Label::Never];
    candidates.extend(believed.complement(sig).valuations().map(Label::At));
    candidates.push(Label::Always);
    (0..sig.valuation_count())
        .map(|u| {
            let mut best = Label::Never;
            let mut best_score = [0usize; TIERS];
            for (i, &label) in candidates.iter().enumerate() {
                let mut score = [0usize; TIERS];
                for c in constraints {
                    let excluded = !c.closure.contains(u);
                    if excluded == label.excludes_in(c.class) {
                        score[c.tier] += 1;
                    }
                }
                if i == 0 || score > best_score {
                    best = label;
                    best_score = score;
                }
            }
            best
        })
        .collect()
}

/// How rows the caller insists on are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Overrides {
    /// Copied as given, so a row the labelling cannot honour shows up as an
    /// axiom violation rather than being repaired away.
    Verbatim,
    /// Kept only where the labelling reproduces their closure.
    IfCoherent,
}

/// Builds a row for every believed class.
///
/// Rows of `base` whose class is still believed are kept when the
/// synthesised closure agrees with them; otherwise the generators are
/// borrowed from a nonempty override or explicit row with the same
/// closure, or fall back to the canonical formula of the closure. The
/// tautology's row always lists `⊤`.
pub(crate) fn synthesize(
    base: &SupportTable,
    overrides: &BTreeMap<ModelSet, SupportRow>,
    mode: Overrides,
    constraints: &[Constraint],
    believed: ModelSet,
    sig: &Signature,
) -> SupportTable {
    let live: Vec<Constraint> = constraints
        .iter()
        .copied()
        .filter(|c| believed.is_subset(c.class))
        .collect();
    let labels = solve(&live, believed, sig);
    let universe = ModelSet::full(sig);

    let mut donors: BTreeMap<ModelSet, &SupportRow> = BTreeMap::new();
    for row in overrides.values().chain(base.rows.values().filter(|r| r.explicit)) {
        if !row.support.is_empty() {
            donors.entry(row.closure).or_insert(row);
        }
    }

    let mut out = SupportTable::new();
    for class in believed_classes(believed, sig) {
        let closure = ModelSet(
            labels
                .iter()
                .enumerate()
                .filter(|(_, l)| !l.excludes_in(class))
                .fold(0, |acc, (u, _)| acc | 1 << u),
        );
        if let Some(r) = overrides.get(&class) {
            if mode == Overrides::Verbatim || r.closure == closure {
                out.insert(class, r.clone());
                continue;
            }
        }
        let mut row = match base.rows.get(&class) {
            Some(r) if r.closure == closure => r.clone(),
            _ => {
                let subject = canonical_formula(class, sig);
                let support = match donors.get(&closure) {
                    Some(d) => d.support.clone(),
                    None => [canonical_formula(closure, sig)].into(),
                };
                SupportRow::derived(subject, support, sig)
            }
        };
        if class == universe && !row.has_tautology(sig) {
            row.support.insert(Formula::Top);
        }
        out.insert(class, row);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn believed_classes_counts() {
        let s = Signature::numbered(2, Fragment::Full).unwrap();
        // models(p1 & p2) = {3}: every class containing valuation 3
        assert_eq!(believed_classes(ModelSet(0b1000), &s).len(), 8);
        assert_eq!(believed_classes(ModelSet::EMPTY, &s).len(), 16);
        let m = Signature::numbered(3, Fragment::Monotone).unwrap();
        assert_eq!(believed_classes(ModelSet::EMPTY, &m).len(), 20);
    }

    #[test]
    fn unconstrained_synthesis_is_autonomous() {
        let s = Signature::numbered(2, Fragment::Full).unwrap();
        let t = synthesize(
            &SupportTable::new(),
            &BTreeMap::new(),
            Overrides::IfCoherent,
            &[],
            ModelSet(0b1000),
            &s,
        );
        assert_eq!(t.len(), 8);
        for (_, row) in t.rows() {
            assert_eq!(row.closure, ModelSet::full(&s));
        }
        assert!(t.get(ModelSet::full(&s)).unwrap().support.contains(&Formula::Top));
    }
}

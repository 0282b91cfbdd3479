use std::collections::{BTreeMap, BTreeSet};

use super::table::{synthesize, Constraint, Overrides, SupportRow, SupportTable};
use crate::belief::{BeliefBase, Mode, Quadruple};
use crate::error::{Error, Result};
use crate::logic::{equivalent, is_tautology, models, Exc, Formula, ModelSet, Signature};

/// `X \\ Y`: drops members of `x` equivalent to some member of `y`, except
/// tautologies.
pub fn double_diff(
    x: &BTreeSet<Formula>,
    y: &BTreeSet<Formula>,
    sig: &Signature,
) -> BTreeSet<Formula> {
    x.iter()
        .filter(|p| is_tautology(p, sig) || !y.iter().any(|q| equivalent(p, q, sig)))
        .cloned()
        .collect()
}

/// `B −_B Γ`: every support loses the members matching `g`, and rows whose
/// subject is no longer believed go. Empty supports are kept.
pub fn reduce(base: &BeliefBase, g: &BTreeSet<Formula>) -> BeliefBase {
    let sig = base.sig();
    let mut table = base.table().clone();
    table.retain(|class, _| base.believes_class(class));
    for (_, row) in table.rows_mut() {
        row.support = double_diff(&row.support, g, sig);
        row.closure = crate::logic::models_of_all(&row.support, sig);
    }
    base.with_table(table)
}

/// `B ∘_B Π1`: merges the incoming rows, then rebuilds every other believed
/// row so the table stays coherent. An incoming row that no coherent table
/// can carry is replaced by the nearest one that can.
pub fn augment(base: &BeliefBase, incoming: &[(Formula, BTreeSet<Formula>)]) -> Result<BeliefBase> {
    augment_with_defaults(base, incoming, &[])
}

/// As [`augment`], additionally asking that each class in `defaults`
/// without an explicit row be supported autonomously.
pub(crate) fn augment_with_defaults(
    base: &BeliefBase,
    incoming: &[(Formula, BTreeSet<Formula>)],
    defaults: &[ModelSet],
) -> Result<BeliefBase> {
    let sig = base.sig();
    let mut merged: BTreeMap<ModelSet, (Formula, BTreeSet<Formula>)> = BTreeMap::new();
    for (subject, support) in incoming {
        let class = models(subject, sig);
        if !base.believes_class(class) {
            return Err(Error::Precondition(format!(
                "cannot register support for unbelieved {}",
                subject.display(sig)
            )));
        }
        merged
            .entry(class)
            .or_insert_with(|| (subject.clone(), BTreeSet::new()))
            .1
            .extend(support.iter().cloned());
    }

    let mut overrides = BTreeMap::new();
    let mut constraints = Vec::new();
    for (&class, (subject, _)) in &merged {
        let mut support = base.table().get(class).map(|r| r.support.clone()).unwrap_or_default();
        for (&other, (_, gamma)) in &merged {
            if other.is_subset(class) {
                support.extend(gamma.iter().cloned());
            }
        }
        let row = SupportRow::new(subject.clone(), support, sig);
        constraints.push(Constraint { class, closure: row.closure, tier: 0 });
        overrides.insert(class, row);
    }

    let related = |class: ModelSet| merged.keys().any(|&c| Exc::of_class(c).contains_class(class));
    for (class, row) in base.table().rows() {
        if merged.contains_key(&class) {
            continue;
        }
        let tier = if row.explicit && !related(class) { 1 } else { 3 };
        constraints.push(Constraint { class, closure: row.closure, tier });
    }
    let universe = ModelSet::full(sig);
    let mut wanted = Vec::new();
    for &class in defaults {
        let explicit = base.table().get(class).is_some_and(|r| r.explicit);
        if base.believes_class(class) && !explicit && !merged.contains_key(&class) {
            constraints.push(Constraint { class, closure: universe, tier: 2 });
            wanted.push(class);
        }
    }

    let mut table = synthesize(
        base.table(),
        &overrides,
        Overrides::IfCoherent,
        &constraints,
        base.beliefs().models(),
        sig,
    );
    for class in wanted {
        if let Some(row) = table.get(class) {
            if row.closure == universe && !row.explicit {
                let mut row = row.clone();
                row.support = [Formula::Top].into();
                row.explicit = true;
                table.insert(class, row);
            }
        }
    }
    Ok(base.with_table(table))
}

/// Rebuilds the table around its explicit rows, keeping each one that a
/// coherent table can still carry.
pub(crate) fn cohere(base: &BeliefBase) -> BeliefBase {
    let mut overrides = BTreeMap::new();
    let mut constraints = Vec::new();
    for (class, row) in base.table().rows() {
        let tier = if row.explicit { 0 } else { 1 };
        constraints.push(Constraint { class, closure: row.closure, tier });
        if row.explicit {
            overrides.insert(class, row.clone());
        }
    }
    let table = synthesize(
        base.table(),
        &overrides,
        Overrides::IfCoherent,
        &constraints,
        base.beliefs().models(),
        base.sig(),
    );
    base.with_table(table)
}

/// Support a triggered payload receives, by dependency mode.
pub fn rho(q: &Quadruple) -> BTreeSet<Formula> {
    match q.mode {
        Mode::Autonomous => [Formula::Top].into(),
        Mode::OnHead => [q.head.clone()].into(),
        Mode::OnTrigger => [q.trigger.clone()].into(),
        Mode::OnBoth => [q.head.clone(), q.trigger.clone()].into(),
    }
}

/// Support the table implies for a believed class, from the labelling that
/// best fits its rows.
pub fn derive_support(base: &BeliefBase, class: &Formula) -> Result<BTreeSet<Formula>> {
    let sig = base.sig();
    let target = models(class, sig);
    if !base.believes_class(target) {
        return Err(Error::Precondition(format!(
            "{} is not believed, so it has no support",
            class.display(sig)
        )));
    }
    let constraints: Vec<Constraint> = base
        .table()
        .rows()
        .map(|(c, row)| Constraint { class: c, closure: row.closure, tier: usize::from(!row.explicit) })
        .collect();
    let table = synthesize(
        &SupportTable::new(),
        &BTreeMap::new(),
        Overrides::IfCoherent,
        &constraints,
        base.beliefs().models(),
        sig,
    );
    let row = table.get(target).expect("synthesis covers every believed class");
    Ok(row.support.clone())
}

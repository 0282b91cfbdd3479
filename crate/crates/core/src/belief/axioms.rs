//! The ten belief-set axioms, each checked independently over the finite
//! class carrier.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::base::BeliefBase;
use crate::logic::{models, ModelSet};
use crate::support::table::believed_classes;

pub const AXIOM_NAMES: [&str; 10] = [
    "Logical closure",
    "Compactness",
    "Attributive belief adequacy",
    "Support adequacy 1",
    "Support adequacy 2",
    "Support sanity",
    "Disjunctive support propagation",
    "Conjunctive support propagation",
    "Support monotonicity",
    "Tautological support",
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomOutcome {
    pub number: usize,
    pub name: String,
    pub pass: bool,
    /// First violation found, rendered for humans.
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AxiomReport {
    pub outcomes: Vec<AxiomOutcome>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.outcomes.iter().all(|o| o.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &AxiomOutcome> {
        self.outcomes.iter().filter(|o| !o.pass)
    }

    pub fn get(&self, number: usize) -> &AxiomOutcome {
        &self.outcomes[number - 1]
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            let status = if o.pass { "pass" } else { "FAIL" };
            write!(f, "{:>2}. {:<34} {status}", o.number, o.name)?;
            if let Some(w) = &o.witness {
                write!(f, "  ({w})")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

pub fn is_belief_set(base: &BeliefBase) -> bool {
    check_axioms(base).all_pass()
}

pub fn check_axioms(base: &BeliefBase) -> AxiomReport {
    let sig = base.sig();
    let table = base.table();
    let show = |class: ModelSet| match table.get(class) {
        Some(row) => row.subject.render(sig),
        None => crate::logic::canonical_formula(class, sig).render(sig),
    };
    let mut witness: [Option<String>; 10] = Default::default();

    witness[2] = base
        .quads()
        .iter()
        .find(|q| !base.believes(&q.head))
        .map(|q| format!("head of {} is not believed", q.display(sig)));

    witness[3] = believed_classes(base.beliefs().models(), sig)
        .into_iter()
        .find(|c| table.get(*c).is_none())
        .map(|c| format!("no row for believed {}", show(c)));

    witness[4] = table.rows().find_map(|(class, row)| {
        if models(&row.subject, sig) != class {
            Some(format!("row keyed {class} has subject {}", row.subject.render(sig)))
        } else if !base.believes_class(class) {
            Some(format!("row for unbelieved {}", row.subject.render(sig)))
        } else {
            None
        }
    });

    witness[5] = table
        .rows()
        .find(|(_, row)| row.support.is_empty())
        .map(|(_, row)| format!("empty support for {}", row.subject.render(sig)));

    // Dense lookup of closures by class bits; the carrier has at most 2^16
    // classes.
    let rows: Vec<(u32, u32)> = table.rows().map(|(c, r)| (c.bits(), r.closure.bits())).collect();
    let mut lookup = vec![None; 1usize << sig.valuation_count()];
    for &(c, m) in &rows {
        lookup[c as usize] = Some(m);
    }
    let fmt_pair = |a: u32, b: u32| format!("{} and {}", show(ModelSet(a)), show(ModelSet(b)));
    'pairs: for (i, &(a, ma)) in rows.iter().enumerate() {
        for &(b, mb) in &rows[i..] {
            if witness[6].is_none() {
                if let Some(m) = lookup[(a | b) as usize] {
                    if m != ma & mb {
                        witness[6] = Some(fmt_pair(a, b));
                    }
                }
            }
            if witness[7].is_none() {
                if let Some(m) = lookup[(a & b) as usize] {
                    if m != ma | mb {
                        witness[7] = Some(fmt_pair(a, b));
                    }
                }
            }
            if witness[8].is_none() {
                let bad = (a & !b == 0 && mb & !ma != 0) || (b & !a == 0 && ma & !mb != 0);
                if bad {
                    witness[8] = Some(fmt_pair(a, b));
                }
            }
            if witness[6].is_some() && witness[7].is_some() && witness[8].is_some() {
                break 'pairs;
            }
        }
    }

    witness[9] = table
        .get(ModelSet::full(sig))
        .filter(|row| !row.has_tautology(sig))
        .map(|_| "the tautology's row lacks ⊤".to_string());

    AxiomReport {
        outcomes: AXIOM_NAMES
            .iter()
            .zip(witness)
            .enumerate()
            .map(|(i, (name, w))| AxiomOutcome {
                number: i + 1,
                name: name.to_string(),
                pass: w.is_none(),
                witness: w,
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeSet;

    use super::*;
    use crate::belief::{AssociationMap, Mode, Quadruple};
    use crate::logic::{parse_formula, Formula, Fragment, Signature};
    use crate::oracle::no_recovery_base;
    use crate::support::SupportRow;

    #[test]
    fn empty_support_breaks_sanity() {
        let base = no_recovery_base(Fragment::Full);
        let sig = base.sig().clone();
        let p3 = parse_formula("p3", &sig).unwrap();
        let mut table = base.table().clone();
        table.insert(models(&p3, &sig), SupportRow::new(p3, BTreeSet::new(), &sig));
        let broken = BeliefBase::from_parts(
            sig,
            *base.beliefs(),
            base.quads().clone(),
            table,
            base.assoc().clone(),
        );
        let report = check_axioms(&broken);
        assert!(!report.get(6).pass);
        assert_eq!(report.get(6).name, "Support sanity");
    }

    #[test]
    fn unbelieved_head_breaks_adequacy() {
        let sig = Signature::numbered(3, Fragment::Full).unwrap();
        let f = |t: &str| parse_formula(t, &sig).unwrap();
        let base = BeliefBase::new(sig.clone(), AssociationMap::new(), &[f("p3")], &[]).unwrap();
        let q = Quadruple::new(f("p1"), f("p2"), f("p3"), Mode::OnHead, &sig).unwrap();
        let broken = BeliefBase::from_parts(
            sig.clone(),
            *base.beliefs(),
            [q].into(),
            base.table().clone(),
            base.assoc().clone(),
        );
        let report = check_axioms(&broken);
        assert!(!report.get(3).pass);
        assert_eq!(report.get(3).name, "Attributive belief adequacy");
        assert_eq!(report.failures().count(), 1);
    }

    #[test]
    fn no_recovery_base_is_a_belief_set() {
        let base = no_recovery_base(Fragment::Full);
        assert!(is_belief_set(&base), "{}", check_axioms(&base));
        let sig = base.sig();
        let p1p3 = models(&Formula::and(Formula::Atom(0), Formula::Atom(2)), sig);
        // only what p1 and p3 share supports the conjunction: L({⊤}) ∩ L({p1})
        assert_eq!(base.table().get(p1p3).unwrap().closure, ModelSet::full(sig));
    }
}

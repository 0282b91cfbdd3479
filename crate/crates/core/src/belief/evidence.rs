use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::base::BeliefBase;
use super::quad::Quadruple;
use crate::error::{Error, Result};
use crate::logic::{Formula, Fragment, Signature};

/// `({P}, quads)`: primary propositions plus attributive beliefs headed by
/// them.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Evidence {
    primaries: BTreeSet<Formula>,
    quads: BTreeSet<Quadruple>,
}

impl Evidence {
    pub fn new(
        primaries: impl IntoIterator<Item = Formula>,
        quads: impl IntoIterator<Item = Quadruple>,
        sig: &Signature,
    ) -> Result<Evidence> {
        let primaries: BTreeSet<Formula> = primaries.into_iter().collect();
        if primaries.is_empty() {
            return Err(Error::Invalid("evidence needs at least one primary".into()));
        }
        let quads: BTreeSet<Quadruple> = quads.into_iter().collect();
        for q in &quads {
            if !primaries.contains(&q.head) {
                return Err(Error::Invalid(format!(
                    "quadruple {} is not headed by a primary",
                    q.display(sig)
                )));
            }
            if !q.triple().admissible_for(&q.head, sig) {
                return Err(Error::Invalid(format!("quadruple {} violates Exc", q.display(sig))));
            }
        }
        Ok(Evidence { primaries, quads })
    }

    /// Evidence without attributive beliefs.
    pub fn plain(primaries: impl IntoIterator<Item = Formula>, sig: &Signature) -> Result<Self> {
        Evidence::new(primaries, [], sig)
    }

    pub fn primaries(&self) -> &BTreeSet<Formula> {
        &self.primaries
    }

    pub fn quads(&self) -> &BTreeSet<Quadruple> {
        &self.quads
    }
}

/// Primaries plus payloads of evidence quads whose trigger `base` already
/// believes.
pub fn visible(base: &BeliefBase, e: &Evidence) -> BTreeSet<Formula> {
    let mut out = e.primaries.clone();
    for q in &e.quads {
        if base.believes(&q.trigger) {
            out.insert(q.payload.clone());
        }
    }
    out
}

/// Negations of the visible set.
pub fn visible_neg(base: &BeliefBase, e: &Evidence) -> Result<BTreeSet<Formula>> {
    if base.sig().fragment() == Fragment::Monotone {
        return Err(Error::Unsupported("negated evidence needs the full connective set".into()));
    }
    Ok(visible(base, e).into_iter().map(Formula::not).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::{AssociationMap, Mode};
    use crate::logic::parse_formula;

    #[test]
    fn conan_sees_the_payload_only_when_triggered() {
        let sig = Signature::numbered(3, Fragment::Full).unwrap();
        let f = |t: &str| parse_formula(t, &sig).unwrap();
        let q = Quadruple::new(f("p1"), f("p2"), f("p3"), Mode::Autonomous, &sig).unwrap();
        let e = Evidence::new([f("p1")], [q], &sig).unwrap();
        let knows = BeliefBase::new(sig.clone(), AssociationMap::new(), &[f("p2")], &[]).unwrap();
        assert_eq!(visible(&knows, &e), [f("p1"), f("p3")].into());
        let naive = BeliefBase::empty(sig.clone(), AssociationMap::new());
        assert_eq!(visible(&naive, &e), [f("p1")].into());
        assert_eq!(visible_neg(&knows, &e).unwrap(), [f("~p1"), f("~p3")].into());
        let plain = Evidence::plain([f("p1")], &sig).unwrap();
        assert_eq!(visible(&knows, &plain), [f("p1")].into());
    }

    #[test]
    fn evidence_validation() {
        let sig = Signature::numbered(3, Fragment::Full).unwrap();
        let f = |t: &str| parse_formula(t, &sig).unwrap();
        let q = Quadruple::new(f("p2"), f("p1"), f("p3"), Mode::Autonomous, &sig).unwrap();
        assert!(Evidence::new([f("p1")], [q], &sig).is_err());
        let mono = sig.with_fragment(Fragment::Monotone);
        let base = BeliefBase::empty(mono.clone(), AssociationMap::new());
        let e = Evidence::plain([f("p1")], &mono).unwrap();
        assert!(matches!(visible_neg(&base, &e), Err(Error::Unsupported(_))));
    }
}

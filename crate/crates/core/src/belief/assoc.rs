//! Association maps, `Assoc` and `Cond`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::quad::{Quadruple, Triple};
use crate::error::{Error, Result};
use crate::logic::{
    canonical_representative, entails, equivalent, is_contradiction, is_tautology, models, Exc,
    Formula, Fragment, Signature, Theory,
};

/// The map `I` from literals to triples, plus the finite carrier of
/// formulas over which `Cond` is materialised.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct AssociationMap {
    entries: BTreeMap<Formula, BTreeSet<Triple>>,
    registered: BTreeSet<Formula>,
    anchors: BTreeSet<Formula>,
}

impl AssociationMap {
    pub fn new() -> AssociationMap {
        AssociationMap::default()
    }

    /// Adds `literal ↦ triple`, rejecting entries whose components are
    /// comparable with the literal.
    pub fn insert(&mut self, literal: Formula, triple: Triple, sig: &Signature) -> Result<()> {
        if !literal.is_literal() {
            return Err(Error::Invalid(format!(
                "association keys must be literals, got {}",
                literal.display(sig)
            )));
        }
        if !triple.admissible_for(&literal, sig) {
            return Err(Error::Invalid(format!(
                "({}, {}) lies in Exc({})",
                triple.trigger.display(sig),
                triple.payload.display(sig),
                literal.display(sig)
            )));
        }
        self.register(triple.trigger.clone(), sig);
        self.register(triple.payload.clone(), sig);
        self.entries.entry(literal).or_default().insert(triple);
        Ok(())
    }

    pub fn insert_quad(&mut self, q: &Quadruple, sig: &Signature) -> Result<()> {
        self.insert(q.head.clone(), q.triple(), sig)
    }

    /// Adds a formula (and its canonical form) to the `Cond` carrier.
    pub fn register(&mut self, f: Formula, sig: &Signature) {
        let canon = canonical_representative(&f, sig);
        self.registered.insert(f);
        self.registered.insert(canon);
    }

    /// Registers a formula that enters as external evidence. Anchors that
    /// become believed without a registered support default to `{⊤}`.
    pub fn anchor(&mut self, f: Formula, sig: &Signature) {
        self.register(f.clone(), sig);
        self.anchors.insert(f);
    }

    pub fn anchors(&self) -> &BTreeSet<Formula> {
        &self.anchors
    }

    pub fn get(&self, literal: &Formula) -> Option<&BTreeSet<Triple>> {
        self.entries.get(literal)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Formula, &BTreeSet<Triple>)> {
        self.entries.iter()
    }

    /// Literals of the signature, every registered formula and its
    /// canonical form.
    pub fn carrier(&self, sig: &Signature) -> BTreeSet<Formula> {
        let mut out: BTreeSet<Formula> = literals(sig).into_iter().collect();
        out.extend(self.entries.keys().cloned());
        out.extend(self.registered.iter().cloned());
        out
    }
}

pub fn literals(sig: &Signature) -> Vec<Formula> {
    let mut out = Vec::new();
    for i in 0..sig.len() {
        out.push(Formula::Atom(i));
        if sig.fragment() == Fragment::Full {
            out.push(Formula::not(Formula::Atom(i)));
        }
    }
    out
}

/// Result of `Assoc`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AssocResult {
    /// The tautology case `(∅, ∅, 0)`.
    Empty,
    /// The contradiction case `(Props, Props, 0)`.
    Universal,
    Triples(BTreeSet<Triple>),
}

impl AssocResult {
    /// Triples that contribute to `Cond`; `Universal` contributes none.
    pub fn triples(&self) -> BTreeSet<Triple> {
        match self {
            AssocResult::Triples(t) => t.clone(),
            AssocResult::Empty | AssocResult::Universal => BTreeSet::new(),
        }
    }
}

/// `(I, X, Assoc)` with `X` borrowed from the owning base.
#[derive(Debug, Clone, Copy)]
pub struct AssociationTuple<'a> {
    pub map: &'a AssociationMap,
    pub x: &'a Theory,
    pub sig: &'a Signature,
}

impl<'a> AssociationTuple<'a> {
    pub fn new(map: &'a AssociationMap, x: &'a Theory, sig: &'a Signature) -> Self {
        AssociationTuple { map, x, sig }
    }

    pub fn assoc(&self, p: &Formula) -> AssocResult {
        let sig = self.sig;
        if is_tautology(p, sig) {
            return AssocResult::Empty;
        }
        if is_contradiction(p, sig) {
            return AssocResult::Universal;
        }
        AssocResult::Triples(self.structural(p))
    }

    // Recursion below the tautology/contradiction preamble. A sub-result in
    // the contradiction case contributes no triples.
    fn sub(&self, p: &Formula) -> BTreeSet<Triple> {
        self.assoc(p).triples()
    }

    fn structural(&self, p: &Formula) -> BTreeSet<Triple> {
        match p {
            _ if p.is_literal() => self.map.get(p).cloned().unwrap_or_default(),
            Formula::And(a, b) => {
                let mut all = self.sub(a);
                all.extend(self.sub(b));
                self.filter(all, a, b)
            }
            Formula::Or(a, b) => self.disjunction(a, b),
            Formula::Not(inner) => match inner.as_ref() {
                Formula::And(a, b) => {
                    let rewritten =
                        Formula::or(Formula::not((**a).clone()), Formula::not((**b).clone()));
                    self.sub(&rewritten)
                }
                Formula::Or(a, b) => {
                    let rewritten =
                        Formula::and(Formula::not((**a).clone()), Formula::not((**b).clone()));
                    self.sub(&rewritten)
                }
                Formula::Not(q) => self.sub(q),
                // ¬⊤ and ¬⊥ are caught by the preamble; ¬atom is a literal
                _ => BTreeSet::new(),
            },
            // constants never reach here
            _ => BTreeSet::new(),
        }
    }

    /// `↓ Exc(a ∧ b)`: drops every triple with a component in the set.
    fn filter(&self, triples: BTreeSet<Triple>, a: &Formula, b: &Formula) -> BTreeSet<Triple> {
        let exc = Exc::of(&Formula::and(a.clone(), b.clone()), self.sig);
        triples
            .into_iter()
            .filter(|t| !exc.contains(&t.trigger, self.sig) && !exc.contains(&t.payload, self.sig))
            .collect()
    }

    fn believes(&self, f: &Formula) -> bool {
        self.x.contains(f, self.sig)
    }

    // `¬f ∈ X`. The monotone language has no negations, so nothing of that
    // shape is ever a member there.
    fn believes_negation(&self, f: &Formula) -> bool {
        self.sig.fragment().has_negation() && self.x.models().intersection(models(f, self.sig)).is_empty()
    }

    fn disjunction(&self, a: &Formula, b: &Formula) -> BTreeSet<Triple> {
        let sig = self.sig;
        if self.believes(a) && self.believes(b) {
            return self.sub(&Formula::and(a.clone(), b.clone()));
        }
        if self.believes_negation(b) {
            return self.sub(a);
        }
        if self.believes_negation(a) {
            return self.sub(b);
        }
        if self.believes(a) && !self.believes(b) && !self.believes_negation(b) {
            return self.filter(self.sub(a), a, b);
        }
        if self.believes(b) && !self.believes(a) && !self.believes_negation(a) {
            return self.filter(self.sub(b), a, b);
        }
        let left = self.sub(a);
        let right = self.sub(b);
        let exc = Exc::of(&Formula::and(a.clone(), b.clone()), sig);
        let mut out = BTreeSet::new();
        for ta in &left {
            for tb in &right {
                if !equivalent(&ta.trigger, &tb.trigger, sig) || ta.mode != tb.mode {
                    continue;
                }
                // keep the weaker payload
                let payload = if entails([&ta.payload], &tb.payload, sig) {
                    &tb.payload
                } else if entails([&tb.payload], &ta.payload, sig) {
                    &ta.payload
                } else {
                    continue;
                };
                if exc.contains(&ta.trigger, sig) || exc.contains(payload, sig) {
                    continue;
                }
                out.insert(Triple::new(ta.trigger.clone(), payload.clone(), ta.mode));
            }
        }
        out
    }

    /// `Cond(P)`. Quadruples must keep their components outside `Exc(P)`,
    /// which the disjunction rules of `Assoc` do not guarantee for a
    /// compound `P`, so such triples are dropped here.
    pub fn cond(&self, p: &Formula) -> BTreeSet<Quadruple> {
        self.assoc(p)
            .triples()
            .into_iter()
            .filter(|t| t.admissible_for(p, self.sig))
            .map(|t| Quadruple::from_triple(p.clone(), t))
            .collect()
    }

    /// `Cond(S)` for a finite set of formulas.
    pub fn cond_set<'f, I>(&self, set: I) -> BTreeSet<Quadruple>
    where
        I: IntoIterator<Item = &'f Formula>,
    {
        set.into_iter().flat_map(|p| self.cond(p)).collect()
    }

    /// `Cond(X)` restricted to the carrier.
    pub fn cond_of_beliefs(&self) -> BTreeSet<Quadruple> {
        let carrier = self.map.carrier(self.sig);
        self.cond_set(carrier.iter().filter(|p| self.believes(p)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::Mode;
    use crate::logic::parse_formula;

    fn setup() -> (Signature, impl Fn(&str) -> Formula) {
        let s = Signature::numbered(3, Fragment::Full).unwrap();
        let s2 = s.clone();
        (s, move |t: &str| parse_formula(t, &s2).unwrap())
    }

    #[test]
    fn special_cases_and_literals() {
        let (s, f) = setup();
        let mut map = AssociationMap::new();
        map.insert(f("p1"), Triple::new(f("p2"), f("p3"), Mode::OnHead), &s).unwrap();
        let x = Theory::tautologies(&s);
        let t = AssociationTuple::new(&map, &x, &s);
        assert_eq!(t.assoc(&f("p1 | ~p1")), AssocResult::Empty);
        assert_eq!(t.assoc(&f("p1 & ~p1")), AssocResult::Universal);
        assert!(t.cond(&f("p1 & ~p1")).is_empty());
        assert!(t.cond(&f("p1 | ~p1")).is_empty());
        let want: BTreeSet<_> = [Triple::new(f("p2"), f("p3"), Mode::OnHead)].into();
        assert_eq!(t.assoc(&f("p1")), AssocResult::Triples(want));
        let quads = t.cond(&f("p1"));
        assert_eq!(quads.len(), 1);
        assert_eq!(quads.iter().next().unwrap().display(&s).to_string(), "p1 : p2 => p3 mode 1");
    }

    #[test]
    fn conjunction_filters_by_exc() {
        let (s, f) = setup();
        let mut map = AssociationMap::new();
        map.insert(f("p1"), Triple::new(f("p2"), f("p3"), Mode::Autonomous), &s).unwrap();
        let x = Theory::tautologies(&s);
        let t = AssociationTuple::new(&map, &x, &s);
        // p1 & p2 entails p2, so the trigger lies in Exc(p1 & p2)
        assert_eq!(t.assoc(&f("p1 & p2")), AssocResult::Triples(BTreeSet::new()));
        let kept = t.assoc(&f("p1 & p1"));
        assert_eq!(kept, t.assoc(&f("p1")));
    }

    #[test]
    fn disjunction_cases_follow_beliefs() {
        let (s, f) = setup();
        let mut map = AssociationMap::new();
        map.insert(f("p1"), Triple::new(f("p2"), f("p3"), Mode::OnHead), &s).unwrap();
        // ¬p2 believed: Assoc(p1 ∨ p2) = Assoc(p1)
        let x = Theory::closure(&[f("~p2")], &s);
        let t = AssociationTuple::new(&map, &x, &s);
        assert_eq!(t.assoc(&f("p1 | p2")), t.assoc(&f("p1")));
        // nothing believed: pairwise construction, p2 has no triples, so empty
        let x = Theory::tautologies(&s);
        let t = AssociationTuple::new(&map, &x, &s);
        assert_eq!(t.assoc(&f("p1 | p2")), AssocResult::Triples(BTreeSet::new()));
        // De Morgan by construction
        assert_eq!(t.assoc(&f("~(p1 & p2)")), t.assoc(&f("~p1 | ~p2")));
        assert_eq!(t.assoc(&f("~~p1")), t.assoc(&f("p1")));
    }

    #[test]
    fn pairwise_disjunction_keeps_weaker_payload() {
        let s = Signature::numbered(4, Fragment::Full).unwrap();
        let f = |t: &str| parse_formula(t, &s).unwrap();
        let mut map = AssociationMap::new();
        map.insert(f("p1"), Triple::new(f("p3"), f("p4"), Mode::OnHead), &s).unwrap();
        map.insert(f("p2"), Triple::new(f("p3"), f("p4 | ~p3"), Mode::OnHead), &s).unwrap();
        let x = Theory::tautologies(&s);
        let t = AssociationTuple::new(&map, &x, &s);
        let want: BTreeSet<_> = [Triple::new(f("p3"), f("p4 | ~p3"), Mode::OnHead)].into();
        assert_eq!(t.assoc(&f("p1 | p2")), AssocResult::Triples(want));
    }

    #[test]
    fn rejects_inadmissible_entries() {
        let (s, f) = setup();
        let mut map = AssociationMap::new();
        assert!(map.insert(f("p1"), Triple::new(f("p1 | p2"), f("p3"), Mode::OnHead), &s).is_err());
        assert!(map.insert(f("p1 & p2"), Triple::new(f("p3"), f("~p3"), Mode::OnHead), &s).is_err());
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use super::formula::Formula;
use super::signature::Signature;

/// A set of valuations, one bit per valuation. Bit `v` is set when the
/// valuation whose atom `i` takes the value of bit `i` of `v` is a member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
pub struct ModelSet(pub u32);

impl ModelSet {
    pub const EMPTY: ModelSet = ModelSet(0);

    pub fn full(sig: &Signature) -> ModelSet {
        ModelSet(sig.universe())
    }

    pub fn singleton(v: usize) -> ModelSet {
        ModelSet(1 << v)
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn contains(self, v: usize) -> bool {
        self.0 >> v & 1 == 1
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_subset(self, other: ModelSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn union(self, other: ModelSet) -> ModelSet {
        ModelSet(self.0 | other.0)
    }

    pub fn intersection(self, other: ModelSet) -> ModelSet {
        ModelSet(self.0 & other.0)
    }

    pub fn difference(self, other: ModelSet) -> ModelSet {
        ModelSet(self.0 & !other.0)
    }

    pub fn complement(self, sig: &Signature) -> ModelSet {
        ModelSet(!self.0 & sig.universe())
    }

    pub fn with(self, v: usize) -> ModelSet {
        ModelSet(self.0 | 1 << v)
    }

    pub fn valuations(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |v| self.0 >> v & 1 == 1)
    }

    /// Sorted bit-pattern strings of the member valuations.
    pub fn patterns(self, sig: &Signature) -> Vec<String> {
        let mut out: Vec<String> = self.valuations().map(|v| sig.valuation_bits(v)).collect();
        out.sort();
        out
    }

    /// Closes the set upwards in the pointwise order on valuations.
    pub fn up_closure(self, sig: &Signature) -> ModelSet {
        let mut acc = self;
        for v in self.valuations() {
            for w in 0..sig.valuation_count() {
                if w & v == v {
                    acc = acc.with(w);
                }
            }
        }
        acc
    }

    /// True when the set is the model set of a negation-free formula.
    pub fn is_up_set(self, sig: &Signature) -> bool {
        self.up_closure(sig) == self
    }
}

/// Model set of `f` under classical truth tables.
pub fn models(f: &Formula, sig: &Signature) -> ModelSet {
    let universe = sig.universe();
    fn go(f: &Formula, universe: u32, n: usize) -> u32 {
        match f {
            Formula::Top => universe,
            Formula::Bot => 0,
            Formula::Atom(i) => (0..1usize << n)
                .filter(|v| v >> i & 1 == 1)
                .fold(0, |acc, v| acc | 1 << v),
            Formula::Not(a) => !go(a, universe, n) & universe,
            Formula::And(a, b) => go(a, universe, n) & go(b, universe, n),
            Formula::Or(a, b) => go(a, universe, n) | go(b, universe, n),
        }
    }
    ModelSet(go(f, universe, sig.len()))
}

/// Models shared by every formula in `fs`; the full set when `fs` is empty.
pub fn models_of_all<'a, I>(fs: I, sig: &Signature) -> ModelSet
where
    I: IntoIterator<Item = &'a Formula>,
{
    fs.into_iter()
        .fold(ModelSet::full(sig), |acc, f| acc.intersection(models(f, sig)))
}

pub fn is_tautology(f: &Formula, sig: &Signature) -> bool {
    models(f, sig) == ModelSet::full(sig)
}

pub fn is_contradiction(f: &Formula, sig: &Signature) -> bool {
    models(f, sig).is_empty()
}

pub fn equivalent(a: &Formula, b: &Formula, sig: &Signature) -> bool {
    models(a, sig) == models(b, sig)
}

/// `conclusion ∈ L(premises)`.
pub fn entails<'a, I>(premises: I, conclusion: &Formula, sig: &Signature) -> bool
where
    I: IntoIterator<Item = &'a Formula>,
{
    models_of_all(premises, sig).is_subset(models(conclusion, sig))
}

/// Classical satisfiability of a finite set.
pub fn is_consistent<'a, I>(set: I, sig: &Signature) -> bool
where
    I: IntoIterator<Item = &'a Formula>,
{
    !models_of_all(set, sig).is_empty()
}

/// The literal pairwise reading: no member occurs together with its
/// syntactic negation. Agrees with [`is_consistent`] on closed sets only.
pub fn is_pairwise_consistent(set: &[Formula]) -> bool {
    !set.iter().any(|p| set.iter().any(|q| matches!(q, Formula::Not(inner) if **inner == *p)))
}

/// A logically closed proposition set, represented by its models.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Theory {
    models: ModelSet,
}

impl Theory {
    pub fn from_models(models: ModelSet) -> Theory {
        Theory { models }
    }

    /// `L(∅)`: the tautologies.
    pub fn tautologies(sig: &Signature) -> Theory {
        Theory { models: ModelSet::full(sig) }
    }

    /// `L(fs)`.
    pub fn closure<'a, I>(fs: I, sig: &Signature) -> Theory
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        Theory { models: models_of_all(fs, sig) }
    }

    pub fn models(&self) -> ModelSet {
        self.models
    }

    pub fn contains(&self, f: &Formula, sig: &Signature) -> bool {
        self.models.is_subset(models(f, sig))
    }

    /// Membership of the proposition whose model set is `class`.
    pub fn contains_class(&self, class: ModelSet) -> bool {
        self.models.is_subset(class)
    }

    /// `L(self ∪ fs)`.
    pub fn expand<'a, I>(&self, fs: I, sig: &Signature) -> Theory
    where
        I: IntoIterator<Item = &'a Formula>,
    {
        Theory { models: self.models.intersection(models_of_all(fs, sig)) }
    }

    pub fn is_consistent(&self) -> bool {
        !self.models.is_empty()
    }

    /// Theory inclusion `self ⊆ other`.
    pub fn is_subtheory_of(&self, other: &Theory) -> bool {
        other.models.is_subset(self.models)
    }

    /// Theory intersection.
    pub fn meet(&self, other: &Theory) -> Theory {
        Theory { models: self.models.union(other.models) }
    }

    /// Closure of the union.
    pub fn join(&self, other: &Theory) -> Theory {
        Theory { models: self.models.intersection(other.models) }
    }
}

/// Membership view of `Exc(P) = L({P}) ∪ {Q | P ∈ L({Q})}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Exc {
    models: ModelSet,
}

impl Exc {
    pub fn of(f: &Formula, sig: &Signature) -> Exc {
        Exc { models: models(f, sig) }
    }

    pub fn of_class(models: ModelSet) -> Exc {
        Exc { models }
    }

    pub fn contains(&self, q: &Formula, sig: &Signature) -> bool {
        self.contains_class(models(q, sig))
    }

    pub fn contains_class(&self, q: ModelSet) -> bool {
        self.models.is_subset(q) || q.is_subset(self.models)
    }
}

impl fmt::Display for ModelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.valuations().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_formula, Fragment};

    fn f(s: &str, sig: &Signature) -> Formula {
        parse_formula(s, sig).unwrap()
    }

    #[test]
    fn model_examples() {
        let one = Signature::numbered(1, Fragment::Full).unwrap();
        assert_eq!(models(&Formula::Top, &one).patterns(&one), vec!["0", "1"]);
        let two = Signature::numbered(2, Fragment::Full).unwrap();
        assert_eq!(models(&f("p1 & p2", &two), &two).patterns(&two), vec!["11"]);
        assert_eq!(
            models(&f("p1 -> p2", &two), &two).patterns(&two),
            vec!["00", "01", "11"]
        );
    }

    #[test]
    fn entailment_examples() {
        let s = Signature::numbered(2, Fragment::Full).unwrap();
        assert!(entails(&[f("p1", &s)], &f("p1 | p2", &s), &s));
        assert!(!entails(&[f("p1", &s)], &f("p2", &s), &s));
        assert!(entails(&[], &f("p1 | ~p1", &s), &s));
        assert!(!entails(&[], &f("p1", &s), &s));
    }

    #[test]
    fn consistency_examples() {
        let s = Signature::numbered(2, Fragment::Full).unwrap();
        assert!(!is_consistent(&[f("p1", &s), f("~p1", &s)], &s));
        assert!(is_consistent(&[f("p1", &s), f("p2", &s)], &s));
        let tricky = [f("p1 | p2", &s), f("~p1", &s), f("~p2", &s)];
        assert!(!is_consistent(&tricky, &s));
        // the pairwise reading misses it on a non-closed set
        assert!(is_pairwise_consistent(&tricky));
        assert!(!is_pairwise_consistent(&[f("p1", &s), f("~p1", &s)]));
    }

    #[test]
    fn exc_examples() {
        let s = Signature::numbered(2, Fragment::Full).unwrap();
        let e = Exc::of(&f("p1", &s), &s);
        assert!(e.contains(&Formula::Top, &s));
        assert!(!e.contains(&f("p2", &s), &s));
        assert!(e.contains(&f("p1 & p2", &s), &s));
    }

    #[test]
    fn up_closure() {
        let s = Signature::numbered(2, Fragment::Monotone).unwrap();
        assert_eq!(ModelSet::singleton(0b01).up_closure(&s), ModelSet(0b1010));
        assert!(models(&f("p1 | p2", &s), &s).is_up_set(&s));
    }
}

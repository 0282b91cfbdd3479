use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::belief::BeliefBase;
use crate::error::{Error, Result};
use crate::logic::{is_tautology, models, Formula, Fragment, ModelSet, Signature, Theory};

/// `B + Γ`.
pub fn internal_expand(base: &BeliefBase, g: &BTreeSet<Formula>) -> BeliefBase {
    let beliefs = base.beliefs().expand(g, base.sig());
    base.with_beliefs(beliefs)
}

/// Model sets of the believed, non-tautological members of `g`, sorted and
/// without duplicates. Everything downstream of contraction depends on `g`
/// only through this.
pub fn contraction_targets(beliefs: &Theory, g: &BTreeSet<Formula>, sig: &Signature) -> Vec<ModelSet> {
    let mut out: Vec<ModelSet> = g
        .iter()
        .filter(|f| !is_tautology(f, sig))
        .map(|f| models(f, sig))
        .filter(|&m| beliefs.contains_class(m))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// `Ξ(π1(B), Γ)` as model sets, sorted by bit encoding. Tautologies in `g`
/// are ignored; when nothing else is left the set is empty, and when no
/// remaining member is believed the only remainder is `π1(B)` itself.
///
/// Each remainder adds to the believed models a minimal set of valuations
/// meeting every target's counter-models; in the negation-free fragment the
/// result is closed upwards and only the minimal closures survive.
pub fn remainders(beliefs: &Theory, g: &BTreeSet<Formula>, sig: &Signature) -> Vec<ModelSet> {
    if g.iter().all(|f| is_tautology(f, sig)) {
        return Vec::new();
    }
    let targets = contraction_targets(beliefs, g, sig);
    if targets.is_empty() {
        return vec![beliefs.models()];
    }
    let families: Vec<ModelSet> = targets.iter().map(|t| t.complement(sig)).collect();
    let mut hits = Vec::new();
    hitting_sets(&families, ModelSet::EMPTY, &mut hits);
    let k = beliefs.models();
    let mut out: Vec<ModelSet> = hits
        .into_iter()
        .map(|h| match sig.fragment() {
            Fragment::Full => k.union(h),
            Fragment::Monotone => k.union(h).up_closure(sig),
        })
        .collect();
    out.sort();
    out.dedup();
    let minimal: Vec<ModelSet> = out
        .iter()
        .copied()
        .filter(|r| !out.iter().any(|o| o != r && o.is_subset(*r)))
        .collect();
    minimal
}

// Collects every minimal hitting set of `families` extending `acc`.
fn hitting_sets(families: &[ModelSet], acc: ModelSet, out: &mut Vec<ModelSet>) {
    match families.iter().find(|f| f.intersection(acc).is_empty()) {
        None => {
            let minimal = acc.valuations().all(|v| {
                let without = ModelSet(acc.bits() & !(1 << v));
                families.iter().any(|f| f.intersection(without).is_empty())
            });
            if minimal && !out.contains(&acc) {
                out.push(acc);
            }
        }
        Some(f) => {
            for v in f.valuations() {
                hitting_sets(families, acc.with(v), out);
            }
        }
    }
}

/// The selection function `γ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Selection {
    /// Every remainder.
    FullMeet,
    /// The single remainder with the largest bit encoding, which keeps the
    /// valuations with the most atoms true.
    Maxichoice,
    /// A pseudo-random nonempty subset, reproducible from the seed.
    Seeded(u64),
    /// One entry per choice point: a bitmask over the sorted remainders.
    /// Missing entries pick the first remainder; zero masks are read as 1.
    Scripted(Vec<u64>),
}

impl Selection {
    /// Indices of the selected remainders at choice point `call` among
    /// `n > 0` remainders.
    pub fn select(&self, call: usize, n: usize) -> Vec<usize> {
        assert!(n > 0, "selection over an empty remainder set");
        match self {
            Selection::FullMeet => (0..n).collect(),
            Selection::Maxichoice => vec![n - 1],
            Selection::Seeded(seed) => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                rng.set_stream(call as u64);
                let picked: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
                if picked.is_empty() {
                    vec![rng.gen_range(0..n)]
                } else {
                    picked
                }
            }
            Selection::Scripted(masks) => {
                let width = n.min(64);
                let all = if width == 64 { u64::MAX } else { (1u64 << width) - 1 };
                let mask = masks.get(call).copied().unwrap_or(1) & all;
                let mask = if mask == 0 { 1 } else { mask };
                (0..width).filter(|i| mask >> i & 1 == 1).collect()
            }
        }
    }
}

/// Parses the command-line spelling: `full-meet`, `maxichoice`,
/// `seeded:<n>` or `script:<m1,m2,...>`.
impl FromStr for Selection {
    type Err = Error;

    fn from_str(text: &str) -> Result<Selection> {
        let text = text.trim();
        let bad = || Error::Invalid(format!("unknown strategy `{text}`"));
        match text {
            "full-meet" => return Ok(Selection::FullMeet),
            "maxichoice" => return Ok(Selection::Maxichoice),
            _ => {}
        }
        if let Some(seed) = text.strip_prefix("seeded:") {
            return seed.trim().parse().map(Selection::Seeded).map_err(|_| bad());
        }
        if let Some(masks) = text.strip_prefix("script:") {
            if masks.trim().is_empty() {
                return Ok(Selection::Scripted(Vec::new()));
            }
            return masks
                .split(',')
                .map(|m| m.trim().parse::<u64>())
                .collect::<std::result::Result<Vec<_>, _>>()
                .map(Selection::Scripted)
                .map_err(|_| bad());
        }
        Err(bad())
    }
}

impl fmt::Display for Selection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Selection::FullMeet => f.write_str("full-meet"),
            Selection::Maxichoice => f.write_str("maxichoice"),
            Selection::Seeded(seed) => write!(f, "seeded:{seed}"),
            Selection::Scripted(masks) => {
                let parts: Vec<String> = masks.iter().map(u64::to_string).collect();
                write!(f, "script:{}", parts.join(","))
            }
        }
    }
}

/// What one internal contraction chose.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Choice {
    pub remainders: Vec<ModelSet>,
    pub chosen: Vec<usize>,
}

/// `B ÷ Γ` as package contraction. Returns the choice made when the
/// remainder set was consulted; vacuous calls return `None` and leave the
/// beliefs alone. `call` numbers choice points for scripted selection.
pub fn internal_contract(
    base: &BeliefBase,
    g: &BTreeSet<Formula>,
    selection: &Selection,
    call: usize,
) -> (BeliefBase, Option<Choice>) {
    if contraction_targets(base.beliefs(), g, base.sig()).is_empty() {
        return (base.with_beliefs(*base.beliefs()), None);
    }
    let xi = remainders(base.beliefs(), g, base.sig());
    let chosen = selection.select(call, xi.len());
    let union = chosen.iter().fold(ModelSet::EMPTY, |acc, &i| acc.union(xi[i]));
    let out = base.with_beliefs(Theory::from_models(union));
    (out, Some(Choice { remainders: xi, chosen }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::belief::AssociationMap;
    use crate::logic::parse_formula;

    fn setup(n: usize) -> (Signature, impl Fn(&str) -> Formula) {
        let s = Signature::numbered(n, Fragment::Full).unwrap();
        let t = s.clone();
        (s, move |src: &str| parse_formula(src, &t).unwrap())
    }

    #[test]
    fn two_atom_remainders() {
        let (s, f) = setup(2);
        let k = Theory::closure(&[f("p1"), f("p2")], &s);
        let xi = remainders(&k, &[f("p1")].into(), &s);
        let pats: Vec<Vec<String>> = xi.iter().map(|m| m.patterns(&s)).collect();
        assert_eq!(pats, vec![vec!["00", "11"], vec!["01", "11"]]);
        assert!(remainders(&k, &[Formula::Top].into(), &s).is_empty());
    }

    #[test]
    fn strategy_spellings_round_trip() {
        for text in ["full-meet", "maxichoice", "seeded:42", "script:1,3,2", "script:"] {
            let sel: Selection = text.parse().unwrap();
            assert_eq!(sel.to_string(), text);
        }
        assert_eq!("script:1, 3".parse::<Selection>().unwrap(), Selection::Scripted(vec![1, 3]));
        assert!("seeded:x".parse::<Selection>().is_err());
        assert!("greedy".parse::<Selection>().is_err());
    }

    #[test]
    fn monotone_contraction_can_lose_recovery() {
        let s = Signature::numbered(3, Fragment::Monotone).unwrap();
        let f = |src: &str| parse_formula(src, &s).unwrap();
        let b = BeliefBase::new(s.clone(), AssociationMap::new(), &[f("p1")], &[]).unwrap();
        let g: BTreeSet<Formula> = [f("p1 | p3")].into();
        let xi = remainders(b.beliefs(), &g, &s);
        assert_eq!(xi, vec![models(&f("p1 | p2"), &s)]);
        let (c, _) = internal_contract(&b, &g, &Selection::FullMeet, 0);
        let back = internal_expand(&c, &g);
        assert!(!back.believes(&f("p1")));
        assert!(back.believes(&f("p1 | p2 & p3")));
    }

    #[test]
    fn full_meet_contraction() {
        let (s, f) = setup(2);
        let b = BeliefBase::new(s.clone(), AssociationMap::new(), &[f("p1"), f("p2")], &[]).unwrap();
        let (c, choice) = internal_contract(&b, &[f("p1")].into(), &Selection::FullMeet, 0);
        assert_eq!(c.beliefs().models(), models(&f("p1 -> p2"), &s));
        assert_eq!(choice.unwrap().chosen, vec![0, 1]);
        let back = internal_expand(&c, &[f("p1")].into());
        assert!(back.beliefs().is_subtheory_of(&Theory::closure(&[f("p1"), f("p2")], &s)));
        assert!(Theory::closure(&[f("p1"), f("p2")], &s).is_subtheory_of(back.beliefs()));
    }

    #[test]
    fn vacuous_contraction() {
        let (s, f) = setup(3);
        let b = BeliefBase::new(s, AssociationMap::new(), &[f("p1")], &[]).unwrap();
        let (c, choice) = internal_contract(&b, &[f("p3")].into(), &Selection::Maxichoice, 0);
        assert!(choice.is_none());
        assert_eq!(c, b);
    }

    #[test]
    fn selections_are_nonempty_and_reproducible() {
        for n in 1..8 {
            for call in 0..5 {
                let a = Selection::Seeded(7).select(call, n);
                assert!(!a.is_empty() && a.iter().all(|&i| i < n));
                assert_eq!(a, Selection::Seeded(7).select(call, n));
            }
        }
        assert_eq!(Selection::Scripted(vec![0b110]).select(0, 3), vec![1, 2]);
        assert_eq!(Selection::Scripted(vec![0b1000]).select(0, 3), vec![0]);
        assert_eq!(Selection::Scripted(vec![]).select(4, 3), vec![0]);
    }
}

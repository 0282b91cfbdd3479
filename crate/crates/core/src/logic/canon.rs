//! Canonical representatives of equivalence classes: the minimal DNF of a
//! model set, ties broken by atom order.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use super::formula::Formula;
use super::semantics::{models, ModelSet};
use super::signature::{Fragment, Signature};

/// A cube: atom `i` occurs when bit `i` of `mask` is set, positively when
/// bit `i` of `value` is also set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Cube {
    mask: usize,
    value: usize,
}

impl Cube {
    fn covers(self, v: usize) -> bool {
        v & self.mask == self.value
    }

    fn cover_set(self, n: usize) -> u32 {
        (0..1usize << n).filter(|&v| self.covers(v)).fold(0, |acc, v| acc | 1 << v)
    }

    fn literal_count(self) -> u32 {
        self.mask.count_ones()
    }

    // Per atom: 0 positive, 1 negative, 2 absent; compared lexicographically.
    fn key(self, n: usize) -> Vec<u8> {
        (0..n)
            .map(|i| match (self.mask >> i & 1, self.value >> i & 1) {
                (1, 1) => 0,
                (1, _) => 1,
                _ => 2,
            })
            .collect()
    }

    fn to_formula(self, n: usize) -> Formula {
        Formula::conjoin((0..n).filter(|i| self.mask >> i & 1 == 1).map(|i| {
            if self.value >> i & 1 == 1 {
                Formula::Atom(i)
            } else {
                Formula::not(Formula::Atom(i))
            }
        }))
    }
}

fn prime_implicants(set: u32, n: usize) -> Vec<Cube> {
    let mut implicants = Vec::new();
    for mask in 0..1usize << n {
        for value in 0..1usize << n {
            if value & !mask != 0 {
                continue;
            }
            let c = Cube { mask, value };
            let cs = c.cover_set(n);
            if cs & !set == 0 {
                implicants.push((c, cs));
            }
        }
    }
    implicants
        .iter()
        .filter(|(c, cs)| {
            !implicants
                .iter()
                .any(|(d, ds)| d != c && cs & !ds == 0 && ds != cs)
        })
        .map(|(c, _)| *c)
        .collect()
}

/// (term count, literal count, sort keys, terms) of the best cover so far.
type Cover = (usize, u32, Vec<Vec<u8>>, Vec<Cube>);

struct CoverSearch<'a> {
    primes: &'a [Cube],
    covers: Vec<u32>,
    target: u32,
    n: usize,
    best: Option<Cover>,
}

impl CoverSearch<'_> {
    fn run(&mut self, chosen: &mut Vec<usize>, covered: u32, limit: usize) {
        if covered == self.target {
            self.offer(chosen);
            return;
        }
        if chosen.len() == limit {
            return;
        }
        let first = (self.target & !covered).trailing_zeros() as usize;
        for (i, c) in self.primes.iter().enumerate() {
            if c.covers(first) && !chosen.contains(&i) {
                chosen.push(i);
                self.run(chosen, covered | self.covers[i], limit);
                chosen.pop();
            }
        }
    }

    fn offer(&mut self, chosen: &[usize]) {
        let mut cubes: Vec<Cube> = chosen.iter().map(|&i| self.primes[i]).collect();
        cubes.sort_by_key(|c| c.key(self.n));
        let literals: u32 = cubes.iter().map(|c| c.literal_count()).sum();
        let keys: Vec<Vec<u8>> = cubes.iter().map(|c| c.key(self.n)).collect();
        let better = match &self.best {
            None => true,
            Some((terms, lits, best_keys, _)) => {
                (cubes.len(), literals, &keys) < (*terms, *lits, best_keys)
            }
        };
        if better {
            self.best = Some((cubes.len(), literals, keys, cubes));
        }
    }
}

fn compute_dnf(set: ModelSet, n: usize) -> Formula {
    let universe = ((1u64 << (1 << n)) - 1) as u32;
    if set.is_empty() {
        return Formula::Bot;
    }
    if set.bits() == universe {
        return Formula::Top;
    }
    let primes = prime_implicants(set.bits(), n);
    let covers = primes.iter().map(|c| c.cover_set(n)).collect();
    let mut search = CoverSearch { primes: &primes, covers, target: set.bits(), n, best: None };
    for limit in 1..=primes.len() {
        search.run(&mut Vec::new(), 0, limit);
        if search.best.is_some() {
            break;
        }
    }
    let (_, _, _, cubes) = search.best.expect("prime implicants always cover the set");
    Formula::disjoin(cubes.into_iter().map(|c| c.to_formula(n)))
}

/// The canonical formula for a model set over `sig`.
pub fn canonical_formula(set: ModelSet, sig: &Signature) -> Formula {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), Formula>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    let key = (sig.len(), set.bits());
    if let Some(f) = cache.lock().expect("cache poisoned").get(&key) {
        return f.clone();
    }
    let f = compute_dnf(set, sig.len());
    cache.lock().expect("cache poisoned").insert(key, f.clone());
    f
}

pub fn canonical_representative(f: &Formula, sig: &Signature) -> Formula {
    canonical_formula(models(f, sig), sig)
}

/// Every model set denotable in the signature's fragment, in increasing
/// bit order.
pub fn class_sets(sig: &Signature) -> Vec<ModelSet> {
    let all = (0..=sig.universe() as u64).map(|b| ModelSet(b as u32));
    match sig.fragment() {
        Fragment::Full => all.collect(),
        Fragment::Monotone => all.filter(|m| m.is_up_set(sig)).collect(),
    }
}

/// One canonical representative per equivalence class.
pub fn enumerate_classes(sig: &Signature) -> Vec<Formula> {
    class_sets(sig).into_iter().map(|m| canonical_formula(m, sig)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    #[test]
    fn idempotent_forms_share_a_representative() {
        let s = Signature::numbered(2, Fragment::Full).unwrap();
        let a = canonical_representative(&parse_formula("p1 | p1", &s).unwrap(), &s);
        let b = canonical_representative(&parse_formula("p1", &s).unwrap(), &s);
        assert_eq!(a, b);
        assert_eq!(a, Formula::Atom(0));
    }

    #[test]
    fn one_atom_has_four_classes() {
        let s = Signature::numbered(1, Fragment::Full).unwrap();
        let classes = enumerate_classes(&s);
        let rendered: Vec<String> = classes.iter().map(|f| f.render(&s)).collect();
        assert_eq!(rendered, vec!["F", "~p1", "p1", "T"]);
    }

    #[test]
    fn three_atom_monotone_classes() {
        let s = Signature::numbered(3, Fragment::Monotone).unwrap();
        let classes = enumerate_classes(&s);
        assert_eq!(classes.len(), 20);
        assert!(classes.iter().all(|f| !f.has_negation()));
    }

    #[test]
    fn minimal_dnf_shapes() {
        let s = Signature::numbered(3, Fragment::Full).unwrap();
        let check = |src: &str, want: &str| {
            let f = parse_formula(src, &s).unwrap();
            assert_eq!(canonical_representative(&f, &s).render(&s), want, "{src}");
        };
        check("p1 -> p2", "~p1 | p2");
        check("(p1 & p2) | (p1 & ~p2)", "p1");
        check("(p1 | p2) & (p1 | p3)", "p1 | p2 & p3");
        check("p1 & ~p1", "F");
    }

    #[test]
    fn representatives_preserve_models() {
        let s = Signature::numbered(3, Fragment::Full).unwrap();
        for m in class_sets(&s) {
            assert_eq!(models(&canonical_formula(m, &s), &s), m);
        }
    }
}

//! A deliberately naive evaluator: one valuation at a time, no bitsets.

use rand::Rng;

use crate::logic::{Formula, Fragment, Signature};

pub fn evaluate(f: &Formula, valuation: &[bool]) -> bool {
    match f {
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Atom(i) => valuation[*i],
        Formula::Not(a) => !evaluate(a, valuation),
        Formula::And(a, b) => evaluate(a, valuation) && evaluate(b, valuation),
        Formula::Or(a, b) => evaluate(a, valuation) || evaluate(b, valuation),
    }
}

/// Every assignment to `n` atoms.
pub fn assignments(n: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1usize << n).map(move |v| (0..n).map(|i| v >> i & 1 == 1).collect())
}

/// Entailment by enumerating every assignment.
pub fn entails_by_table(premises: &[Formula], conclusion: &Formula, n: usize) -> bool {
    assignments(n).all(|a| !premises.iter().all(|p| evaluate(p, &a)) || evaluate(conclusion, &a))
}

/// Every formula with at most `levels` levels of nodes over the
/// signature's connectives; leaves sit on the first level.
pub fn formulas_up_to(levels: usize, sig: &Signature) -> Vec<Formula> {
    let mut layer: Vec<Formula> = vec![Formula::Top, Formula::Bot];
    layer.extend((0..sig.len()).map(Formula::Atom));
    for _ in 1..levels {
        let mut next = layer.clone();
        if sig.fragment() == Fragment::Full {
            next.extend(layer.iter().map(|a| Formula::not(a.clone())));
        }
        for a in &layer {
            for b in &layer {
                next.push(Formula::and(a.clone(), b.clone()));
                next.push(Formula::or(a.clone(), b.clone()));
            }
        }
        layer = next;
    }
    layer
}

/// A random formula of depth at most `depth`.
pub fn random_formula<R: Rng>(rng: &mut R, sig: &Signature, depth: usize) -> Formula {
    let leaf = depth == 0 || rng.gen_ratio(1, 4);
    if leaf {
        return match rng.gen_range(0..10) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => Formula::Atom(rng.gen_range(0..sig.len())),
        };
    }
    let negation = sig.fragment() == Fragment::Full;
    match rng.gen_range(0..if negation { 3 } else { 2 }) {
        0 => Formula::and(random_formula(rng, sig, depth - 1), random_formula(rng, sig, depth - 1)),
        1 => Formula::or(random_formula(rng, sig, depth - 1), random_formula(rng, sig, depth - 1)),
        _ => Formula::not(random_formula(rng, sig, depth - 1)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_sizes() {
        let s = Signature::numbered(2, Fragment::Full).unwrap();
        assert_eq!(formulas_up_to(1, &s).len(), 4);
        assert_eq!(formulas_up_to(2, &s).len(), 40);
        assert_eq!(formulas_up_to(3, &s).len(), 3280);
    }

    #[test]
    fn naive_entailment() {
        let s = Signature::numbered(2, Fragment::Full).unwrap();
        let p = Formula::Atom(0);
        assert!(entails_by_table(std::slice::from_ref(&p), &Formula::or(p.clone(), Formula::Atom(1)), 2));
        assert!(!entails_by_table(&[p], &Formula::Atom(1), s.len()));
    }
}

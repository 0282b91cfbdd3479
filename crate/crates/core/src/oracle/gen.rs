//! Random bases and evidence for the batteries.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use super::truth::random_formula;
use crate::belief::{check_axioms, literals, AssociationMap, BeliefBase, Evidence, Mode, Triple};
use crate::logic::{is_contradiction, is_tautology, models_of_all, Formula, Signature};

fn contingent<R: Rng>(rng: &mut R, sig: &Signature, depth: usize) -> Formula {
    loop {
        let f = random_formula(rng, sig, depth);
        if !is_tautology(&f, sig) && !is_contradiction(&f, sig) {
            return f;
        }
    }
}

fn mode<R: Rng>(rng: &mut R) -> Mode {
    Mode::try_from(rng.gen_range(0..4u8)).expect("in range")
}

/// A triple admissible for `head`, when one turns up quickly.
fn triple_for<R: Rng>(rng: &mut R, head: &Formula, sig: &Signature) -> Option<Triple> {
    (0..32).find_map(|_| {
        let t = Triple::new(contingent(rng, sig, 2), contingent(rng, sig, 2), mode(rng));
        t.admissible_for(head, sig).then_some(t)
    })
}

/// A random belief set: up to three association entries, one or two
/// believed formulas, and sometimes an explicit support row.
pub fn random_base<R: Rng>(rng: &mut R, sig: &Signature) -> BeliefBase {
    let lits = literals(sig);
    let mut assoc = AssociationMap::new();
    for _ in 0..rng.gen_range(0..=3) {
        let lit = lits.choose(rng).expect("signature is nonempty").clone();
        if let Some(t) = triple_for(rng, &lit, sig) {
            assoc.insert(lit, t, sig).expect("admissible by construction");
        }
    }
    let believed: Vec<Formula> = loop {
        let n = rng.gen_range(1..=2);
        let fs: Vec<Formula> = (0..n)
            .map(|_| {
                if rng.gen_bool(0.5) {
                    lits.choose(rng).expect("nonempty").clone()
                } else {
                    contingent(rng, sig, 2)
                }
            })
            .collect();
        if !models_of_all(&fs, sig).is_empty() {
            break fs;
        }
    };
    let plain = BeliefBase::new(sig.clone(), assoc.clone(), &believed, &[])
        .expect("no explicit rows to reject");
    if rng.gen_bool(0.5) {
        let subject = believed.choose(rng).expect("nonempty").clone();
        let support: BTreeSet<Formula> = [contingent(rng, sig, 1)].into();
        if let Ok(b) = BeliefBase::new(sig.clone(), assoc, &believed, &[(subject, support)]) {
            if check_axioms(&b).all_pass() {
                return b;
            }
        }
    }
    plain
}

/// Random evidence: one or two satisfiable primaries, sometimes with an
/// attributive belief headed by a literal primary.
pub fn random_evidence<R: Rng>(rng: &mut R, sig: &Signature) -> Evidence {
    let lits = literals(sig);
    let mut primaries = vec![lits.choose(rng).expect("nonempty").clone()];
    if rng.gen_bool(0.5) {
        primaries.push(contingent(rng, sig, 2));
    }
    let mut quads = Vec::new();
    if rng.gen_bool(0.5) {
        if let Some(t) = triple_for(rng, &primaries[0], sig) {
            quads.push(crate::belief::Quadruple::new(
                primaries[0].clone(),
                t.trigger,
                t.payload,
                t.mode,
                sig,
            ).expect("admissible by construction"));
        }
    }
    Evidence::new(primaries, quads, sig).expect("well formed by construction")
}

/// One to three random target formulas, tautologies included now and then.
pub fn random_targets<R: Rng>(rng: &mut R, sig: &Signature) -> BTreeSet<Formula> {
    (0..rng.gen_range(1..=3)).map(|_| random_formula(rng, sig, 2)).collect()
}

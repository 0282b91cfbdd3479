//! Randomised postulate and preservation batteries.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::gen::{random_base, random_evidence, random_targets};
use crate::belief::{check_axioms, BeliefBase, Evidence};
use crate::engine::{
    contraction_targets, internal_contract, internal_expand, Change, EngineConfig, Selection,
};
use crate::error::Result;
use crate::logic::{canonical_representative, is_tautology, Formula, Fragment, Signature};
use crate::support::{augment, double_diff, reduce};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub check: String,
    pub case: usize,
    pub detail: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatteryReport {
    pub runs: usize,
    /// How many times each check was evaluated.
    pub checks: BTreeMap<String, usize>,
    pub violations: Vec<Violation>,
    /// Longest fixpoint loop seen, in rounds.
    pub longest_loop: usize,
    /// Largest `2^n + 1` bound among the scenarios run.
    pub round_bound: usize,
}

impl BatteryReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, check: &str, case: usize, ok: bool, detail: impl FnOnce() -> String) {
        *self.checks.entry(check.to_string()).or_default() += 1;
        if !ok {
            self.violations.push(Violation { check: check.to_string(), case, detail: detail() });
        }
    }
}

/// The four selection strategies exercised for scenario `case`.
pub fn strategies<R: Rng>(rng: &mut R, case: usize) -> Vec<Selection> {
    let script = (0..4).map(|_| rng.gen_range(1..16)).collect();
    vec![
        Selection::FullMeet,
        Selection::Maxichoice,
        Selection::Seeded(case as u64),
        Selection::Scripted(script),
    ]
}

fn render_set(fs: &BTreeSet<Formula>, sig: &Signature) -> String {
    let parts: Vec<String> = fs.iter().map(|f| f.render(sig)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn describe(base: &BeliefBase) -> String {
    let sig = base.sig();
    format!(
        "{} atoms {}, beliefs {}",
        sig.len(),
        sig.fragment(),
        crate::logic::canonical_formula(base.beliefs().models(), sig).render(sig)
    )
}

/// Runs `change` and reports whether the result is a belief set.
pub fn preservation_check(
    base: &BeliefBase,
    e: &Evidence,
    change: Change,
    cfg: &EngineConfig,
) -> Result<bool> {
    let (out, _) = change.apply(base, e, cfg)?;
    Ok(check_axioms(&out).all_pass())
}

/// Random 3-atom scenarios, each run through every change under every
/// strategy. Every output must pass all ten axioms and every loop must
/// stay within `2^n + 1` rounds.
pub fn preservation_battery(count: usize, seed: u64, skip_update: bool) -> BatteryReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = BatteryReport::default();
    for case in 0..count {
        let fragment = if case % 5 == 4 { Fragment::Monotone } else { Fragment::Full };
        let sig = Signature::numbered(3, fragment).expect("3 atoms fit");
        let base = random_base(&mut rng, &sig);
        let e = random_evidence(&mut rng, &sig);
        let bound = sig.valuation_count() + 1;
        report.round_bound = report.round_bound.max(bound);
        for selection in strategies(&mut rng, case) {
            let cfg = EngineConfig { selection, max_rounds: Some(bound + 8), skip_update };
            for change in Change::ALL {
                if change == Change::Revise && fragment == Fragment::Monotone {
                    continue;
                }
                report.runs += 1;
                let check = format!("preservation/{}", change.name());
                match change.apply(&base, &e, &cfg) {
                    Ok((out, trace)) => {
                        let axioms = check_axioms(&out);
                        report.record(&check, case, axioms.all_pass(), || {
                            let failed: Vec<String> = axioms
                                .failures()
                                .map(|o| format!("{}: {}", o.name, o.witness.clone().unwrap_or_default()))
                                .collect();
                            format!("{} under {:?}: {}", describe(&base), cfg.selection, failed.join("; "))
                        });
                        let longest = trace.longest_loop();
                        report.longest_loop = report.longest_loop.max(longest);
                        report.record("round bound", case, longest <= bound, || {
                            format!("{} rounds > {bound}", longest)
                        });
                    }
                    Err(err) => report.record(&check, case, false, || err.to_string()),
                }
            }
        }
    }
    report
}

type Check = (&'static str, bool);
type Runner<'a> = dyn Fn(&BeliefBase, &BTreeSet<Formula>) -> Vec<Check> + 'a;

fn contraction_checks(base: &BeliefBase, g: &BTreeSet<Formula>, sel: &Selection) -> Vec<Check> {
    let sig = base.sig();
    let (c, _) = internal_contract(base, g, sel, 0);
    let mut out = Vec::new();
    out.push((
        "contraction/success",
        g.iter().filter(|f| !is_tautology(f, sig)).all(|f| !c.believes(f)),
    ));
    out.push(("contraction/inclusion", c.beliefs().is_subtheory_of(base.beliefs())));
    if contraction_targets(base.beliefs(), g, sig).is_empty() {
        out.push(("contraction/vacuity", c == *base));
    }
    let mut canonical: BTreeSet<Formula> =
        g.iter().map(|f| canonical_representative(f, sig)).collect();
    canonical.extend(g.iter().map(|f| Formula::and(f.clone(), f.clone())));
    let (c2, _) = internal_contract(base, &canonical, sel, 0);
    out.push(("contraction/extensionality", c2 == c));
    // Recovery needs negation: without it a remainder cannot be cut back to
    // exactly what the targets take away, so it is only checked with full
    // connectives.
    if sig.fragment().has_negation() {
        let back = internal_expand(&c, g);
        out.push(("contraction/recovery", base.beliefs().is_subtheory_of(back.beliefs())));
    }
    out.push(("contraction/table kept", c.table() == base.table()));
    out.push((
        "contraction/association update",
        *c.quads() == c.association_tuple().cond_of_beliefs(),
    ));
    out
}

fn other_checks(base: &BeliefBase, g: &BTreeSet<Formula>) -> Vec<Check> {
    let sig = base.sig();
    let mut out = Vec::new();
    let e = internal_expand(base, g);
    out.push(("expansion/closure", e.beliefs() == &base.beliefs().expand(g, sig)));
    out.push(("expansion/table kept", e.table() == base.table()));

    let r = reduce(base, g);
    out.push(("reduce/beliefs kept", r.beliefs() == base.beliefs() && r.quads() == base.quads()));
    let rows_reduced = r.table().rows().all(|(class, row)| {
        base.table().get(class).is_some_and(|old| row.support == double_diff(&old.support, g, sig))
    });
    out.push(("reduce/rows", rows_reduced));
    out.push(("reduce/idempotent", reduce(&r, g) == r));

    let subject = base
        .table()
        .rows()
        .find(|(_, row)| row.explicit)
        .map(|(_, row)| row.subject.clone())
        .unwrap_or(Formula::Top);
    match augment(base, &[(subject.clone(), g.clone())]) {
        Ok(a) => {
            out.push(("augment/beliefs kept", a.beliefs() == base.beliefs() && a.quads() == base.quads()));
            let class = crate::logic::models(&subject, sig);
            let merged = a.table().get(class).map(|row| {
                g.is_subset(&row.support)
                    && base.table().get(class).is_none_or(|old| old.support.is_subset(&row.support))
            });
            out.push(("augment/merge", merged == Some(true)));
            out.push(("augment/axioms", check_axioms(&a).outcomes[3..].iter().all(|o| o.pass)));
        }
        Err(_) => out.push(("augment/precondition", false)),
    }
    out
}

// Drops targets one at a time while the named check still fails.
fn minimise(
    base: &BeliefBase,
    g: &BTreeSet<Formula>,
    failing: &str,
    run: &dyn Fn(&BeliefBase, &BTreeSet<Formula>) -> Vec<Check>,
) -> BTreeSet<Formula> {
    let mut g = g.clone();
    loop {
        let smaller = g.iter().find_map(|f| {
            let mut h = g.clone();
            h.remove(f);
            let fails = !h.is_empty()
                && run(base, &h).iter().any(|(name, ok)| *name == failing && !ok);
            fails.then_some(h)
        });
        match smaller {
            Some(h) => g = h,
            None => return g,
        }
    }
}

/// Random (base, Γ, strategy) triples over at most 3 atoms, checking the
/// internal contraction postulates, plus the expansion, reduction and
/// augmentation postulates on the same inputs.
pub fn postulate_battery(count: usize, seed: u64) -> BatteryReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = BatteryReport::default();
    for case in 0..count {
        let n = 1 + case % 3;
        let fragment = if case % 4 == 3 { Fragment::Monotone } else { Fragment::Full };
        let sig = Signature::numbered(n, fragment).expect("fits");
        let base = random_base(&mut rng, &sig);
        let g = random_targets(&mut rng, &sig);
        let choices = strategies(&mut rng, case);
        let selection = choices[case % choices.len()].clone();
        report.runs += 1;
        let run_contraction = |b: &BeliefBase, h: &BTreeSet<Formula>| contraction_checks(b, h, &selection);
        let run_other = |b: &BeliefBase, h: &BTreeSet<Formula>| other_checks(b, h);
        let runners: [&Runner; 2] =
            [&run_contraction, &run_other];
        for run in runners {
            for (name, ok) in run(&base, &g) {
                report.record(name, case, ok, || {
                    let small = minimise(&base, &g, name, run);
                    format!(
                        "{}, Γ = {} under {:?}",
                        describe(&base),
                        render_set(&small, &sig),
                        selection
                    )
                });
            }
        }
    }
    report
}

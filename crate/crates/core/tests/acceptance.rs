//! Runs every acceptance criterion and prints one line per criterion.
//! Exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use latent_belief::engine::{remainders, Selection};
use latent_belief::logic::{
    canonical_formula, class_sets, entails, models, Formula, Fragment, ModelSet, Signature, Theory,
};
use latent_belief::oracle::{
    assignments, brute_remainders, entails_by_table, evaluate, formulas_up_to, no_recovery_witness,
    postulate_battery, preservation_battery, random_formula, random_targets,
};
use latent_belief::scenario::{bundled_names, RunOptions, Scenario};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

/// Longest loop and its bound, collected from every run that has traces.
#[derive(Default)]
struct Loops {
    worst: Vec<(String, usize, usize)>,
}

impl Loops {
    fn note(&mut self, source: &str, longest: usize, bound: usize) {
        self.worst.push((source.to_string(), longest, bound));
    }
}

fn entailment() -> Outcome {
    let sig = Signature::numbered(2, Fragment::Full).unwrap();
    let all = formulas_up_to(3, &sig);
    let mut mismatches = 0usize;
    // per-formula model sets against the naive evaluator
    for f in &all {
        let m = models(f, &sig);
        for (v, a) in assignments(2).enumerate() {
            if m.contains(v) != evaluate(f, &a) {
                mismatches += 1;
            }
        }
    }
    let mut pairs = 0usize;
    for a in &all {
        for b in &all {
            pairs += 1;
            if entails([a], b, &sig) != entails_by_table(std::slice::from_ref(a), b, 2) {
                mismatches += 1;
            }
        }
    }
    let sig3 = Signature::numbered(3, Fragment::Full).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let a = random_formula(&mut rng, &sig3, 4);
        let b = random_formula(&mut rng, &sig3, 4);
        if entails([&a], &b, &sig3) != entails_by_table(std::slice::from_ref(&a), &b, 3) {
            mismatches += 1;
        }
    }
    Outcome {
        pass: mismatches == 0,
        detail: format!(
            "{} formulas, {pairs} exhaustive 2-atom pairs + 10000 random 3-atom pairs, {mismatches} mismatches",
            all.len()
        ),
    }
}

fn preservation(loops: &mut Loops) -> Outcome {
    let r = preservation_battery(200, 2, false);
    loops.note("preservation battery", r.longest_loop, r.round_bound);
    let mutant = preservation_battery(20, 2, true);
    let mut detail = format!(
        "200 scenarios, {} runs, {} violations; mutant without Update caught {} times",
        r.runs,
        r.violations.len(),
        mutant.violations.len()
    );
    if let Some(v) = r.violations.first() {
        detail.push_str(&format!("; first: {} case {}: {}", v.check, v.case, v.detail));
    }
    Outcome { pass: r.passed() && !mutant.passed(), detail }
}

fn postulates() -> Outcome {
    let r = postulate_battery(500, 1);
    let recovery = r.checks.get("contraction/recovery").copied().unwrap_or(0);
    let evaluated: usize = r.checks.values().sum();
    let mut detail = format!(
        "500 triples, {evaluated} checks, {} violations; recovery checked on the {recovery} full-connective triples",
        r.violations.len()
    );
    if let Some(v) = r.violations.first() {
        detail.push_str(&format!("; first: {} case {}: {}", v.check, v.case, v.detail));
    }
    Outcome { pass: r.passed(), detail }
}

fn remainder_agreement() -> Outcome {
    let mut compared = 0usize;
    let mut mismatches = 0usize;
    for fragment in [Fragment::Full, Fragment::Monotone] {
        let sig = Signature::numbered(2, fragment).unwrap();
        let classes = class_sets(&sig);
        let formulas: Vec<Formula> = classes.iter().map(|&c| canonical_formula(c, &sig)).collect();
        for &k in &classes {
            let t = Theory::from_models(k);
            for pick in 0u32..1 << formulas.len() {
                let g: BTreeSet<Formula> = formulas
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| pick >> i & 1 == 1)
                    .map(|(_, f)| f.clone())
                    .collect();
                compared += 1;
                if remainders(&t, &g, &sig) != brute_remainders(&t, &g, &sig).unwrap() {
                    mismatches += 1;
                }
            }
        }
    }
    let sig3 = Signature::numbered(3, Fragment::Full).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..1000 {
        let t = Theory::from_models(ModelSet(rng.gen_range(0..256)));
        let g = random_targets(&mut rng, &sig3);
        compared += 1;
        if remainders(&t, &g, &sig3) != brute_remainders(&t, &g, &sig3).unwrap() {
            mismatches += 1;
        }
    }
    Outcome {
        pass: mismatches == 0,
        detail: format!(
            "{compared} pairs (every 2-atom theory x target set in both fragments, 1000 sampled 3-atom), {mismatches} mismatches"
        ),
    }
}

fn witness(loops: &mut Loops) -> Outcome {
    let mono = no_recovery_witness(Fragment::Monotone).unwrap();
    let full = no_recovery_witness(Fragment::Full).unwrap();
    let mut replays = true;
    for r in [&mono, &full] {
        if let (Some(Ok((base, trace))), Some(original)) = (r.replay(), &r.trace) {
            replays &= &trace == original && !base.believes(&Formula::Atom(2));
            loops.note("witness", trace.longest_loop(), base.sig().valuation_count() + 1);
        } else {
            replays = false;
        }
    }
    let pass = mono.universal() && full.failing_runs >= 1 && full.contrast_holds && replays;
    Outcome {
        pass,
        detail: format!(
            "monotone: {}/{} scripts lose p3 (exhaustive: {}); full: witness script {:?}, counter-valuation {}, internal contrast holds: {}; replays match: {replays}",
            mono.failing_runs,
            mono.runs,
            mono.exhaustive,
            full.script.clone().unwrap_or_default(),
            full.counter_valuation.clone().unwrap_or_else(|| "none".into()),
            full.contrast_holds
        ),
    }
}

fn narratives(loops: &mut Loops) -> Outcome {
    let mut pass = true;
    let mut parts = Vec::new();
    for name in ["conan", "agm-example"] {
        let s = Scenario::bundled(name, None).unwrap();
        match s.run(&RunOptions::default()) {
            Ok(run) => {
                for t in &run.traces {
                    loops.note(name, t.longest_loop(), s.sig.valuation_count() + 1);
                }
                let ok = run.report.passed();
                pass &= ok;
                let failed: Vec<&str> =
                    run.report.assertions.iter().filter(|a| !a.pass).map(|a| a.expr.as_str()).collect();
                parts.push(if ok {
                    format!("{name}: {} assertions hold", run.report.assertions.len())
                } else {
                    format!("{name}: failed {failed:?}")
                });
            }
            Err(e) => {
                pass = false;
                parts.push(format!("{name}: {e}"));
            }
        }
    }
    Outcome { pass, detail: parts.join("; ") }
}

fn round_bound(loops: &mut Loops) -> Outcome {
    for name in bundled_names() {
        let s = Scenario::bundled(name, None).unwrap();
        for strategy in ["full-meet", "maxichoice", "seeded:3"] {
            let opts = RunOptions { strategy: Some(strategy.parse::<Selection>().unwrap()), max_iter: None };
            if let Ok(run) = s.run(&opts) {
                for t in &run.traces {
                    loops.note(name, t.longest_loop(), s.sig.valuation_count() + 1);
                }
            }
        }
    }
    let over: Vec<&(String, usize, usize)> = loops.worst.iter().filter(|(_, l, b)| l > b).collect();
    let longest = loops.worst.iter().map(|(_, l, _)| *l).max().unwrap_or(0);
    Outcome {
        pass: over.is_empty(),
        detail: format!(
            "{} traced runs and batteries, longest loop {longest} rounds (bound 9 on 3 atoms), {} over the bound",
            loops.worst.len(),
            over.len()
        ),
    }
}

fn determinism() -> Outcome {
    let mut compared = 0;
    let mut differing = Vec::new();
    for name in bundled_names() {
        for strategy in ["full-meet", "maxichoice", "seeded:9", "script:2,1,3"] {
            let opts = RunOptions { strategy: Some(strategy.parse::<Selection>().unwrap()), max_iter: None };
            let once = || {
                Scenario::bundled(name, None)
                    .and_then(|s| s.run(&opts))
                    .map(|r| r.report.to_json())
                    .map_err(|e| e.to_string())
            };
            compared += 1;
            if once() != once() {
                differing.push(format!("{name} {strategy}"));
            }
        }
    }
    let witness_json = || serde_json::to_string(&no_recovery_witness(Fragment::Full).unwrap()).unwrap();
    compared += 1;
    if witness_json() != witness_json() {
        differing.push("witness".into());
    }
    Outcome {
        pass: differing.is_empty(),
        detail: format!("{compared} repeated runs, differing: {differing:?}"),
    }
}

fn report(number: usize, title: &str, limit: Duration, f: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let outcome = f();
    let took = start.elapsed();
    let in_time = took <= limit;
    let pass = outcome.pass && in_time;
    println!(
        "criterion {number} {title}: {} ({:.2}s of {}s) {}",
        if pass { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        limit.as_secs(),
        outcome.detail
    );
    pass
}

fn main() -> ExitCode {
    let mut loops = Loops::default();
    let secs = Duration::from_secs;
    let results = [
        report(1, "entailment matches truth tables", secs(30), entailment),
        report(2, "changes preserve belief sets", secs(120), || preservation(&mut loops)),
        report(3, "internal contraction postulates", secs(120), postulates),
        report(4, "remainders match brute force", secs(120), remainder_agreement),
        report(5, "no recovery through support", secs(60), || witness(&mut loops)),
        report(6, "narrative scenarios", secs(10), || narratives(&mut loops)),
        report(7, "fixpoint loops stay within 2^n + 1 rounds", secs(120), || round_bound(&mut loops)),
        report(8, "scenario traces are deterministic", secs(60), determinism),
    ];
    let passed = results.iter().filter(|p| **p).count();
    println!("acceptance: {passed}/{} criteria pass", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

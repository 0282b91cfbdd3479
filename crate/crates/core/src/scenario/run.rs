use std::fmt::Write as _;

use super::report::{AssertionReport, RoundReport, TraceReport};
use super::{parse, Check, Scenario, Stage, Step};
use crate::belief::{check_axioms, BeliefBase};
use crate::engine::{ChangeTrace, EngineConfig, Selection};
use crate::error::{Error, Result};
use crate::logic::{canonical_formula, Fragment};

/// Settings from the command line. A step's own `with` strategy beats
/// `strategy`; steps without either use full meet.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RunOptions {
    pub strategy: Option<Selection>,
    pub max_iter: Option<usize>,
}

/// Everything a run produced.
#[derive(Debug, Clone)]
pub struct ScenarioRun {
    /// The initial base followed by the base after each step.
    pub bases: Vec<BeliefBase>,
    pub traces: Vec<ChangeTrace>,
    pub report: TraceReport,
}

impl Scenario {
    pub fn parse(name: &str, text: &str, fragment: Option<Fragment>) -> Result<Scenario> {
        parse::parse(name, text, fragment)
    }

    /// Loads a scenario compiled into the library.
    pub fn bundled(name: &str, fragment: Option<Fragment>) -> Result<Scenario> {
        let text = super::bundled(name)
            .ok_or_else(|| Error::Invalid(format!("no bundled scenario `{name}`")))?;
        Scenario::parse(name, text, fragment)
    }

    /// The base described by `[base]`, which must be a belief set.
    pub fn initial_base(&self) -> Result<BeliefBase> {
        let base = BeliefBase::new(self.sig.clone(), self.assoc.clone(), &self.believed, &self.rows)?;
        let report = check_axioms(&base);
        if !report.all_pass() {
            return Err(Error::Invalid(format!("the initial base is not a belief set:\n{report}")));
        }
        Ok(base)
    }

    fn config(&self, step: &Step, opts: &RunOptions) -> EngineConfig {
        let selection = step.strategy.clone().or_else(|| opts.strategy.clone()).unwrap_or(Selection::FullMeet);
        EngineConfig { selection, max_rounds: opts.max_iter, skip_update: false }
    }

    pub fn run(&self, opts: &RunOptions) -> Result<ScenarioRun> {
        let mut bases = vec![self.initial_base()?];
        let mut traces = Vec::new();
        let mut rounds = Vec::new();
        for step in &self.script {
            let e = &self.evidence[&step.evidence];
            let current = bases.last().expect("starts with the initial base");
            let (next, trace) = step.change.apply(current, e, &self.config(step, opts))?;
            rounds.extend(trace.rounds.iter().map(|r| RoundReport::new(r, &self.sig)));
            traces.push(trace);
            bases.push(next);
        }
        let assertions = self
            .assertions
            .iter()
            .map(|a| {
                let base = match a.stage {
                    Stage::Initial => &bases[0],
                    Stage::After(n) => &bases[n],
                    Stage::Final => bases.last().expect("nonempty"),
                };
                let pass = match &a.check {
                    Check::Believed { formula, expected } => base.believes(formula) == *expected,
                    Check::Axioms => check_axioms(base).all_pass(),
                };
                AssertionReport { expr: a.text.clone(), pass }
            })
            .collect();
        let report = TraceReport { scenario: self.name.clone(), rounds, assertions };
        Ok(ScenarioRun { bases, traces, report })
    }
}

impl ScenarioRun {
    pub fn final_base(&self) -> &BeliefBase {
        self.bases.last().expect("nonempty")
    }

    /// A plain-text account of every step and assertion.
    pub fn human(&self, scenario: &Scenario, opts: &RunOptions) -> String {
        let sig = &scenario.sig;
        let mut out = String::new();
        let beliefs = |b: &BeliefBase| canonical_formula(b.beliefs().models(), sig).render(sig);
        let _ = writeln!(out, "scenario {} ({} atoms, {})", scenario.name, sig.len(), sig.fragment());
        let _ = writeln!(out, "initial beliefs: {}", beliefs(&self.bases[0]));
        for (i, (step, trace)) in scenario.script.iter().zip(&self.traces).enumerate() {
            let cfg = scenario.config(step, opts);
            let _ = writeln!(
                out,
                "step {}: {} {} [{}]",
                i + 1,
                step.change.name(),
                step.evidence,
                cfg.selection
            );
            for r in &trace.rounds {
                let gamma: Vec<String> = r.gamma.iter().map(|f| f.render(sig)).collect();
                let gen: Vec<String> = r.gen.iter().map(|f| f.render(sig)).collect();
                let _ = write!(out, "  round {} {:?} Γ = {{{}}}", r.index, r.op, gamma.join(", "));
                if let Some(c) = &r.choice {
                    let _ = write!(out, ", {} remainders, chose {:?}", c.remainders.len(), c.chosen);
                }
                let _ = writeln!(
                    out,
                    ", beliefs {}, next Γ = {{{}}}",
                    canonical_formula(r.after, sig).render(sig),
                    gen.join(", ")
                );
            }
            let _ = writeln!(out, "  beliefs now: {}", beliefs(&self.bases[i + 1]));
        }
        for a in &self.report.assertions {
            let _ = writeln!(out, "{} {}", if a.pass { "PASS" } else { "FAIL" }, a.expr);
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_scenarios_parse() {
        for name in super::super::bundled_names() {
            let s = Scenario::bundled(name, None).unwrap();
            assert!(s.initial_base().is_ok(), "{name}");
        }
    }

    #[test]
    fn runs_are_deterministic() {
        let s = Scenario::bundled("no-recovery-full", None).unwrap();
        let opts = RunOptions::default();
        let a = s.run(&opts).unwrap().report.to_json();
        let b = s.run(&opts).unwrap().report.to_json();
        assert_eq!(a, b);
    }

    #[test]
    fn round_limit_overflows() {
        let s = Scenario::bundled("no-recovery-monotone", None).unwrap();
        let opts = RunOptions { strategy: None, max_iter: Some(1) };
        assert!(matches!(s.run(&opts), Err(Error::Overflow(1))));
    }
}

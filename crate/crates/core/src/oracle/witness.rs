//! Search for runs where contracting `p1` and expanding it back does not
//! bring `p3` back.

use serde::{Deserialize, Serialize};

use crate::belief::{AssociationMap, BeliefBase, Evidence, Mode, Triple};
use crate::engine::{
    contract_evidence, expand_evidence, internal_contract, internal_expand, ChangeTrace,
    EngineConfig, Selection,
};
use crate::error::Result;
use crate::logic::{models, Formula, Fragment, Signature};

const RUN_CAP: usize = 100_000;

/// Beliefs `L({p1, p3})`, the attributive belief `p1(p2, p3, 1)` and the
/// support row `(p3, {p1})`, over three atoms.
pub fn no_recovery_base(fragment: Fragment) -> BeliefBase {
    let sig = Signature::numbered(3, fragment).expect("3 atoms fit");
    let (p1, p2, p3) = (Formula::Atom(0), Formula::Atom(1), Formula::Atom(2));
    let mut assoc = AssociationMap::new();
    assoc
        .insert(p1.clone(), Triple::new(p2, p3.clone(), Mode::OnHead), &sig)
        .expect("p2 and p3 are independent of p1");
    BeliefBase::new(
        sig,
        assoc,
        &[p1.clone(), p3.clone()],
        &[(p3, [p1.clone()].into()), (p1, [Formula::Top].into())],
    )
    .expect("rows concern believed formulas")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub fragment: Fragment,
    pub description: String,
    /// Complete selection scripts tried.
    pub runs: usize,
    /// Runs that ended without `p3`.
    pub failing_runs: usize,
    /// False when the search stopped early.
    pub exhaustive: bool,
    /// The first failing script, as per-choice-point remainder masks.
    pub script: Option<Vec<u64>>,
    pub trace: Option<ChangeTrace>,
    /// Final beliefs of the witness run, as bit patterns.
    pub final_models: Option<Vec<String>>,
    /// A final model falsifying `p3`.
    pub counter_valuation: Option<String>,
    /// `B ⊆ (B ÷ {p1}) + {p1}` under every selection.
    pub contrast_holds: bool,
}

impl WitnessReport {
    /// Every run failed and the search covered every script.
    pub fn universal(&self) -> bool {
        self.exhaustive && self.runs > 0 && self.failing_runs == self.runs
    }

    /// Reruns the witness script.
    pub fn replay(&self) -> Option<Result<(BeliefBase, ChangeTrace)>> {
        let script = self.script.clone()?;
        Some(run_script(&no_recovery_base(self.fragment), script))
    }
}

fn evidence(sig: &Signature) -> Evidence {
    Evidence::plain([Formula::Atom(0)], sig).expect("one primary")
}

fn run_script(base: &BeliefBase, script: Vec<u64>) -> Result<(BeliefBase, ChangeTrace)> {
    let cfg = EngineConfig::with_selection(Selection::Scripted(script));
    let e = evidence(base.sig());
    let (contracted, mut trace) = contract_evidence(base, &e, &cfg)?;
    let (out, expansion) = expand_evidence(&contracted, &e, &cfg)?;
    trace.extend(expansion);
    Ok((out, trace))
}

struct Search<'a> {
    base: &'a BeliefBase,
    stop_at_first: bool,
    runs: usize,
    failing: usize,
    truncated: bool,
    first: Option<(Vec<u64>, BeliefBase, ChangeTrace)>,
}

impl Search<'_> {
    fn explore(&mut self, prefix: &mut Vec<u64>) -> Result<()> {
        if self.runs >= RUN_CAP || (self.stop_at_first && self.first.is_some()) {
            self.truncated = true;
            return Ok(());
        }
        let (out, trace) = run_script(self.base, prefix.clone())?;
        let points: Vec<usize> = trace
            .rounds
            .iter()
            .filter_map(|r| r.choice.as_ref().map(|c| c.remainders.len()))
            .collect();
        if let Some(&n) = points.get(prefix.len()) {
            let n = n.min(20);
            for mask in 1..(1u64 << n) {
                prefix.push(mask);
                self.explore(prefix)?;
                prefix.pop();
            }
            return Ok(());
        }
        self.runs += 1;
        if !out.believes(&Formula::Atom(2)) {
            self.failing += 1;
            if self.first.is_none() {
                self.first = Some((prefix.clone(), out, trace));
            }
        }
        Ok(())
    }
}

/// In the negation-free fragment every script is tried and all are
/// expected to lose `p3`; with full connectives the search stops at the
/// first script that loses it. Either way the single-step internal
/// contrast is checked under every selection.
pub fn no_recovery_witness(fragment: Fragment) -> Result<WitnessReport> {
    let base = no_recovery_base(fragment);
    let sig = base.sig().clone();
    let mut search = Search {
        base: &base,
        stop_at_first: fragment == Fragment::Full,
        runs: 0,
        failing: 0,
        truncated: false,
        first: None,
    };
    search.explore(&mut Vec::new())?;

    let targets = [Formula::Atom(0)].into();
    let (_, choice) = internal_contract(&base, &targets, &Selection::FullMeet, 0);
    let n = choice.map_or(1, |c| c.remainders.len());
    let contrast_holds = (1..(1u64 << n)).all(|mask| {
        let (c, _) = internal_contract(&base, &targets, &Selection::Scripted(vec![mask]), 0);
        base.beliefs().is_subtheory_of(internal_expand(&c, &targets).beliefs())
    });

    let p3 = models(&Formula::Atom(2), &sig);
    let (script, trace, final_models, counter) = match search.first {
        Some((script, out, trace)) => {
            let finals = out.beliefs().models();
            let counter = finals.difference(p3).valuations().next().map(|v| sig.valuation_bits(v));
            (Some(script), Some(trace), Some(finals.patterns(&sig)), counter)
        }
        None => (None, None, None, None),
    };
    Ok(WitnessReport {
        fragment,
        description: format!(
            "{fragment} fragment: beliefs L({{p1, p3}}), p1(p2, p3, 1), row (p3, {{p1}}); \
             contract by ({{p1}}, ∅) then expand by ({{p1}}, ∅)"
        ),
        runs: search.runs,
        failing_runs: search.failing,
        exhaustive: !search.truncated,
        script,
        trace,
        final_models,
        counter_valuation: counter,
        contrast_holds,
    })
}


use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::io::{self, BufRead, IsTerminal, Write};
use std::process::ExitCode;

use latent_belief::belief::{check_axioms, AssociationMap, BeliefBase, Evidence};
use latent_belief::engine::{Change, ChangeTrace, EngineConfig, Selection};
use latent_belief::logic::{canonical_formula, is_tautology, parse_formula, Formula, Fragment, Signature};
use latent_belief::scenario::{parse_quad, Scenario};

const HELP: &str = "\
:believe F, G            add beliefs (supported by T unless a row says otherwise)
:support F <- {G, H}     set the support row of a believed F
:quad H : T => P mode N  add an association entry for the literal H
:evidence NAME F, G [; quad H : T => P mode N]...
                         define evidence
:expand E                E is an evidence name or a comma-separated list of formulas
:contract E
:revise E
:strategy S              full-meet, maxichoice, seeded:<n> or script:<m1,m2,...>
:show base|table|quads|evidence|assoc
:axioms                  check the ten belief-set axioms
:load FILE|bundled:NAME  start from a scenario's initial base and evidence
:undo                    return to the state before the last change
:help
:quit";

#[derive(Clone)]
struct State {
    base: BeliefBase,
    evidence: BTreeMap<String, Evidence>,
    strategy: Selection,
}

pub struct Session {
    state: State,
    history: Vec<State>,
}

pub enum Reply {
    Text(String),
    Quit,
}

fn formulas(text: &str, sig: &Signature) -> Result<Vec<Formula>, String> {
    text.split(',')
        .filter(|t| !t.trim().is_empty())
        .map(|t| parse_formula(t.trim(), sig).map_err(|e| format!("`{}`: {e}", t.trim())))
        .collect()
}

fn render_set(fs: &BTreeSet<Formula>, sig: &Signature) -> String {
    let parts: Vec<String> = fs.iter().map(|f| f.render(sig)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn trace_text(trace: &ChangeTrace, sig: &Signature) -> String {
    let mut out = String::new();
    for r in &trace.rounds {
        let _ = write!(out, "round {} {:?} Γ = {}", r.index, r.op, render_set(&r.gamma, sig));
        if let Some(c) = &r.choice {
            let _ = write!(out, ", {} remainders, chose {:?}", c.remainders.len(), c.chosen);
        }
        let _ = writeln!(
            out,
            ", beliefs {}, next Γ = {}",
            canonical_formula(r.after, sig).render(sig),
            render_set(&r.gen, sig)
        );
    }
    if trace.rounds.is_empty() {
        out.push_str("no rounds: nothing to do\n");
    }
    out
}

impl Session {
    pub fn new(sig: Signature, strategy: Selection) -> Session {
        let base = BeliefBase::empty(sig, AssociationMap::new());
        Session { state: State { base, evidence: BTreeMap::new(), strategy }, history: Vec::new() }
    }

    fn sig(&self) -> &Signature {
        self.state.base.sig()
    }

    /// Rebuilds the base from its current beliefs and explicit rows plus
    /// the given additions.
    fn rebuild(
        &self,
        assoc: AssociationMap,
        extra: &[Formula],
        row: Option<(Formula, BTreeSet<Formula>)>,
    ) -> Result<BeliefBase, String> {
        let base = &self.state.base;
        let sig = base.sig();
        let current = canonical_formula(base.beliefs().models(), sig);
        let mut believed: Vec<Formula> = Vec::new();
        if !is_tautology(&current, sig) {
            believed.push(current);
        }
        believed.extend(extra.iter().cloned());
        let mut rows: BTreeMap<_, (Formula, BTreeSet<Formula>)> = base
            .table()
            .rows()
            .filter(|(_, r)| r.explicit)
            .map(|(class, r)| (class, (r.subject.clone(), r.support.clone())))
            .collect();
        if let Some((subject, support)) = row {
            rows.insert(latent_belief::logic::models(&subject, sig), (subject, support));
        }
        let rows: Vec<_> = rows.into_values().collect();
        BeliefBase::new(sig.clone(), assoc, &believed, &rows).map_err(|e| e.to_string())
    }

    fn commit(&mut self, next: State) {
        self.history.push(std::mem::replace(&mut self.state, next));
    }

    fn with_base(&self, base: BeliefBase) -> State {
        State { base, ..self.state.clone() }
    }

    fn evidence_arg(&self, arg: &str) -> Result<Evidence, String> {
        let arg = arg.trim();
        if let Some(e) = self.state.evidence.get(arg) {
            return Ok(e.clone());
        }
        let fs = formulas(arg, self.sig())?;
        Evidence::plain(fs, self.sig()).map_err(|e| e.to_string())
    }

    fn change(&mut self, change: Change, arg: &str) -> Result<String, String> {
        let e = self.evidence_arg(arg)?;
        let cfg = EngineConfig::with_selection(self.state.strategy.clone());
        let (next, trace) = change.apply(&self.state.base, &e, &cfg).map_err(|e| e.to_string())?;
        let mut out = trace_text(&trace, self.sig());
        self.commit(self.with_base(next));
        let _ = writeln!(out, "beliefs: {}", self.beliefs());
        Ok(out)
    }

    fn beliefs(&self) -> String {
        let sig = self.sig();
        canonical_formula(self.state.base.beliefs().models(), sig).render(sig)
    }

    fn show(&self, what: &str) -> Result<String, String> {
        let base = &self.state.base;
        let sig = base.sig();
        let mut out = String::new();
        match what.trim() {
            "base" | "" => {
                let _ = writeln!(out, "atoms: {} ({})", sig.atoms().join(", "), sig.fragment());
                let _ = writeln!(out, "beliefs: {}", self.beliefs());
                let _ = writeln!(out, "models: {}", base.beliefs().models().patterns(sig).join(" "));
                let _ = writeln!(out, "strategy: {}", self.state.strategy);
                let explicit = base.table().rows().filter(|(_, r)| r.explicit).count();
                let _ = writeln!(
                    out,
                    "{} quadruples, {} support rows ({explicit} explicit)",
                    base.quads().len(),
                    base.table().len()
                );
            }
            "table" => {
                for (_, r) in base.table().rows().filter(|(_, r)| r.explicit) {
                    let _ = writeln!(out, "{} <- {}", r.subject.render(sig), render_set(&r.support, sig));
                }
                let derived = base.table().rows().filter(|(_, r)| !r.explicit).count();
                let _ = writeln!(out, "({derived} derived rows not shown)");
            }
            "quads" => {
                for q in base.quads() {
                    let _ = writeln!(out, "{}", q.display(sig));
                }
                if base.quads().is_empty() {
                    out.push_str("no quadruples\n");
                }
            }
            "evidence" => {
                for (name, e) in &self.state.evidence {
                    let _ = write!(out, "{name}: {}", render_set(e.primaries(), sig));
                    for q in e.quads() {
                        let _ = write!(out, "; {}", q.display(sig));
                    }
                    out.push('\n');
                }
                if self.state.evidence.is_empty() {
                    out.push_str("no evidence defined\n");
                }
            }
            "assoc" => {
                for (lit, triples) in base.assoc().entries() {
                    for t in triples {
                        let _ = writeln!(
                            out,
                            "{} : {} => {} mode {}",
                            lit.render(sig),
                            t.trigger.render(sig),
                            t.payload.render(sig),
                            t.mode.number()
                        );
                    }
                }
            }
            other => return Err(format!("cannot show `{other}`; try base, table, quads, evidence or assoc")),
        }
        Ok(out)
    }

    fn define_evidence(&mut self, arg: &str) -> Result<String, String> {
        let arg = arg.trim();
        let (name, rest) = arg.split_once(char::is_whitespace).ok_or("usage: :evidence NAME F, G")?;
        let mut parts = rest.split(';');
        let primaries = formulas(parts.next().unwrap_or(""), self.sig())?;
        let mut quads = Vec::new();
        for part in parts {
            let body = part.trim().strip_prefix("quad").ok_or("expected `quad ...` after `;`")?;
            quads.push(parse_quad(body, self.sig()).map_err(|e| e.to_string())?);
        }
        let e = Evidence::new(primaries, quads, self.sig()).map_err(|e| e.to_string())?;
        let mut next = self.state.clone();
        next.evidence.insert(name.to_string(), e);
        self.commit(next);
        Ok(format!("evidence {name} defined\n"))
    }

    fn load(&mut self, source: &str) -> Result<String, String> {
        let source = source.trim();
        let scenario = match source.strip_prefix("bundled:") {
            Some(name) => Scenario::bundled(name, None).map_err(|e| e.to_string())?,
            None => {
                let text = std::fs::read_to_string(source).map_err(|e| format!("{source}: {e}"))?;
                Scenario::parse(source, &text, None).map_err(|e| e.to_string())?
            }
        };
        let base = scenario.initial_base().map_err(|e| e.to_string())?;
        let names: Vec<&String> = scenario.evidence.keys().collect();
        let out = format!("loaded {}; evidence: {names:?}\n", scenario.name);
        self.commit(State { base, evidence: scenario.evidence.clone(), strategy: self.state.strategy.clone() });
        Ok(out)
    }

    pub fn execute(&mut self, line: &str) -> Result<Reply, String> {
        let line = line.trim();
        if line.is_empty() {
            return Ok(Reply::Text(String::new()));
        }
        let (cmd, arg) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let text = match cmd {
            ":quit" | ":q" => return Ok(Reply::Quit),
            ":help" => format!("{HELP}\n"),
            ":believe" => {
                let fs = formulas(arg, self.sig())?;
                let base = self.rebuild(self.state.base.assoc().clone(), &fs, None)?;
                self.commit(self.with_base(base));
                format!("beliefs: {}\n", self.beliefs())
            }
            ":support" => {
                let (subject, support) = arg.split_once("<-").ok_or("usage: :support F <- {G, H}")?;
                let inner = support
                    .trim()
                    .strip_prefix('{')
                    .and_then(|s| s.strip_suffix('}'))
                    .ok_or("the support set must be written {G, H}")?;
                let subject = parse_formula(subject.trim(), self.sig()).map_err(|e| e.to_string())?;
                let gens: BTreeSet<Formula> = formulas(inner, self.sig())?.into_iter().collect();
                let base = self.rebuild(self.state.base.assoc().clone(), &[], Some((subject, gens)))?;
                self.commit(self.with_base(base));
                "row set\n".to_string()
            }
            ":quad" => {
                let q = parse_quad(arg, self.sig()).map_err(|e| e.to_string())?;
                let mut assoc = self.state.base.assoc().clone();
                assoc.insert_quad(&q, self.sig()).map_err(|e| e.to_string())?;
                let base = self.rebuild(assoc, &[], None)?;
                self.commit(self.with_base(base));
                format!("{} added\n", q.display(self.sig()))
            }
            ":evidence" => self.define_evidence(arg)?,
            ":expand" => self.change(Change::Expand, arg)?,
            ":contract" => self.change(Change::Contract, arg)?,
            ":revise" => self.change(Change::Revise, arg)?,
            ":strategy" => {
                let s: Selection = arg.parse().map_err(|e: latent_belief::Error| e.to_string())?;
                let mut next = self.state.clone();
                next.strategy = s;
                self.commit(next);
                format!("strategy: {}\n", self.state.strategy)
            }
            ":show" => self.show(arg)?,
            ":axioms" => check_axioms(&self.state.base).to_string(),
            ":load" => self.load(arg)?,
            ":undo" => match self.history.pop() {
                Some(prev) => {
                    self.state = prev;
                    format!("undone; beliefs: {}\n", self.beliefs())
                }
                None => return Err("nothing to undo".into()),
            },
            other => return Err(format!("unknown command `{other}`; :help lists them")),
        };
        Ok(Reply::Text(text))
    }
}

pub fn main(atoms: &str, fragment: Fragment, strategy: Selection) -> ExitCode {
    let names: Vec<&str> = atoms.split(',').map(str::trim).filter(|a| !a.is_empty()).collect();
    let sig = match Signature::new(&names, fragment) {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let mut session = Session::new(sig, strategy);
    let interactive = io::stdin().is_terminal();
    if interactive {
        println!("latent belief REPL; :help for commands");
    }
    let stdin = io::stdin();
    let mut lines = stdin.lock().lines();
    loop {
        if interactive {
            print!("> ");
            let _ = io::stdout().flush();
        }
        let Some(Ok(line)) = lines.next() else { break };
        match session.execute(&line) {
            Ok(Reply::Quit) => break,
            Ok(Reply::Text(t)) => print!("{t}"),
            Err(e) => println!("error: {e}"),
        }
    }
    ExitCode::SUCCESS
}

use std::collections::{BTreeMap, BTreeSet};

use super::{Assertion, Check, Scenario, Stage, Step};
use crate::belief::{AssociationMap, Evidence, Mode, Quadruple, Triple};
use crate::engine::{Change, Selection};
use crate::error::{Error, Result};
use crate::logic::{parse_formula, Formula, Fragment, Signature};

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Scenario { line, msg: msg.into() }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Section {
    Signature,
    Assoc,
    Evidence(String),
    Base,
    Script,
    Assert,
}

fn section(header: &str, line: usize) -> Result<Section> {
    let mut words = header.split_whitespace();
    let kind = words.next().unwrap_or("");
    let rest: Vec<&str> = words.collect();
    let plain = |s: Section| {
        if rest.is_empty() {
            Ok(s)
        } else {
            Err(err(line, format!("[{kind}] takes no name")))
        }
    };
    match kind {
        "signature" => plain(Section::Signature),
        "assoc" => plain(Section::Assoc),
        "base" => plain(Section::Base),
        "script" => plain(Section::Script),
        "assert" => plain(Section::Assert),
        "evidence" => match rest.as_slice() {
            [name] => Ok(Section::Evidence(name.to_string())),
            _ => Err(err(line, "expected [evidence NAME]")),
        },
        _ => Err(err(line, format!("unknown section [{kind}]"))),
    }
}

struct Parser {
    fragment_override: Option<Fragment>,
    atoms: Vec<String>,
    fragment: Fragment,
    sig: Option<Signature>,
    assoc: AssociationMap,
    evidence: BTreeMap<String, (BTreeSet<Formula>, BTreeSet<Quadruple>, usize)>,
    believed: Vec<Formula>,
    rows: Vec<(Formula, BTreeSet<Formula>)>,
    script: Vec<Step>,
    assertions: Vec<Assertion>,
}

impl Parser {
    fn sig(&mut self, line: usize) -> Result<&Signature> {
        if self.sig.is_none() {
            if self.atoms.is_empty() {
                return Err(err(line, "the [signature] section must come first and list atoms"));
            }
            let fragment = self.fragment_override.unwrap_or(self.fragment);
            let sig = Signature::new(&self.atoms, fragment).map_err(|e| err(line, e.to_string()))?;
            self.sig = Some(sig);
        }
        Ok(self.sig.as_ref().expect("just built"))
    }

    fn formula(&mut self, text: &str, line: usize) -> Result<Formula> {
        let sig = self.sig(line)?;
        parse_formula(text.trim(), sig).map_err(|e| err(line, format!("`{}`: {e}", text.trim())))
    }

    fn formulas(&mut self, text: &str, line: usize) -> Result<Vec<Formula>> {
        text.split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| self.formula(t, line))
            .collect()
    }

    fn quad(&mut self, text: &str, line: usize) -> Result<Quadruple> {
        let sig = self.sig(line)?;
        parse_quad(text, sig).map_err(|e| match e {
            Error::Scenario { msg, .. } => err(line, msg),
            other => err(line, other.to_string()),
        })
    }

    fn signature_line(&mut self, text: &str, line: usize) -> Result<()> {
        if self.sig.is_some() {
            return Err(err(line, "the signature is already in use"));
        }
        let (key, value) = text.split_once(char::is_whitespace).unwrap_or((text, ""));
        match key {
            "atoms" => {
                self.atoms = value
                    .split(|c: char| c == ',' || c.is_whitespace())
                    .filter(|a| !a.is_empty())
                    .map(str::to_string)
                    .collect();
            }
            "fragment" => {
                self.fragment = value.trim().parse().map_err(|e: Error| err(line, e.to_string()))?;
            }
            _ => return Err(err(line, format!("expected `atoms` or `fragment`, got `{key}`"))),
        }
        Ok(())
    }

    fn assoc_line(&mut self, text: &str, line: usize) -> Result<()> {
        let body = text.strip_prefix("quad").ok_or_else(|| err(line, "expected `quad ...`"))?;
        let q = self.quad(body, line)?;
        let sig = self.sig(line)?.clone();
        let triple = Triple::new(q.trigger.clone(), q.payload.clone(), q.mode);
        self.assoc.insert(q.head, triple, &sig).map_err(|e| err(line, e.to_string()))
    }

    fn evidence_line(&mut self, name: &str, text: &str, line: usize) -> Result<()> {
        if let Some(body) = text.strip_prefix("primary") {
            let fs = self.formulas(body, line)?;
            self.evidence.get_mut(name).expect("opened with the section").0.extend(fs);
        } else if let Some(body) = text.strip_prefix("quad") {
            let q = self.quad(body, line)?;
            self.evidence.get_mut(name).expect("opened with the section").1.insert(q);
        } else {
            return Err(err(line, "expected `primary ...` or `quad ...`"));
        }
        Ok(())
    }

    /// `believe F, G` or `support F <- {G, H}`
    fn base_line(&mut self, text: &str, line: usize) -> Result<()> {
        if let Some(body) = text.strip_prefix("believe") {
            let fs = self.formulas(body, line)?;
            self.believed.extend(fs);
        } else if let Some(body) = text.strip_prefix("support") {
            let (subject, support) =
                body.split_once("<-").ok_or_else(|| err(line, "support needs `<-`"))?;
            let support = support.trim();
            let inner = support
                .strip_prefix('{')
                .and_then(|s| s.strip_suffix('}'))
                .ok_or_else(|| err(line, "support set must be written {F1, F2}"))?;
            let subject = self.formula(subject, line)?;
            let gens = self.formulas(inner, line)?;
            self.rows.push((subject, gens.into_iter().collect()));
        } else {
            return Err(err(line, "expected `believe ...` or `support ...`"));
        }
        Ok(())
    }

    /// `expand NAME`, `contract NAME with STRATEGY`
    fn script_line(&mut self, text: &str, line: usize) -> Result<()> {
        let (head, strategy) = match text.split_once(" with ") {
            Some((h, s)) => (h, Some(s.parse::<Selection>().map_err(|e| err(line, e.to_string()))?)),
            None => (text, None),
        };
        let words: Vec<&str> = head.split_whitespace().collect();
        let [op, name] = words.as_slice() else {
            return Err(err(line, "expected `expand|contract|revise NAME [with STRATEGY]`"));
        };
        let change = match *op {
            "expand" => Change::Expand,
            "contract" => Change::Contract,
            "revise" => Change::Revise,
            other => return Err(err(line, format!("unknown change `{other}`"))),
        };
        if !self.evidence.contains_key(*name) {
            return Err(err(line, format!("evidence `{name}` is not defined above")));
        }
        self.script.push(Step { change, evidence: name.to_string(), strategy });
        Ok(())
    }

    /// `F in final`, `F not-in after 2`, `axioms initial`
    fn assert_line(&mut self, text: &str, line: usize) -> Result<()> {
        let stage_of = |words: &[&str]| -> Result<Stage> {
            match words {
                ["final"] => Ok(Stage::Final),
                ["initial"] => Ok(Stage::Initial),
                ["after", n] => match n.parse::<usize>() {
                    Ok(n) if n >= 1 => Ok(Stage::After(n)),
                    _ => Err(err(line, format!("`after` needs a step number from 1, got `{n}`"))),
                },
                _ => Err(err(line, "expected `final`, `initial` or `after N`")),
            }
        };
        let assertion = if let Some(rest) = text.strip_prefix("axioms") {
            let words: Vec<&str> = rest.split_whitespace().collect();
            let stage = if words.is_empty() { Stage::Final } else { stage_of(&words)? };
            Assertion { text: text.to_string(), stage, check: Check::Axioms }
        } else {
            let (formula, expected, rest) = if let Some((f, r)) = text.split_once(" not-in ") {
                (f, false, r)
            } else if let Some((f, r)) = text.split_once(" in ") {
                (f, true, r)
            } else {
                return Err(err(line, "expected `F in STAGE`, `F not-in STAGE` or `axioms STAGE`"));
            };
            let words: Vec<&str> = rest.split_whitespace().collect();
            let stage = stage_of(&words)?;
            let formula = self.formula(formula, line)?;
            Assertion { text: text.to_string(), stage, check: Check::Believed { formula, expected } }
        };
        if let Stage::After(n) = assertion.stage {
            if n > self.script.len() {
                return Err(err(line, format!("there is no step {n} above")));
            }
        }
        self.assertions.push(assertion);
        Ok(())
    }
}

/// Reads `HEAD : TRIGGER => PAYLOAD mode N`.
pub fn parse_quad(text: &str, sig: &Signature) -> Result<Quadruple> {
    let bad = |msg: &str| err(0, msg);
    let (head, rest) = text.split_once(':').ok_or_else(|| bad("quad needs `:`"))?;
    let (trigger, rest) = rest.split_once("=>").ok_or_else(|| bad("quad needs `=>`"))?;
    let (payload, mode) = rest.rsplit_once("mode").ok_or_else(|| bad("quad needs `mode N`"))?;
    let mode = match mode.trim() {
        "0" => Mode::Autonomous,
        "1" => Mode::OnHead,
        "2" => Mode::OnTrigger,
        "3" => Mode::OnBoth,
        other => return Err(bad(&format!("mode must be 0-3, got `{other}`"))),
    };
    let formula = |t: &str| {
        parse_formula(t.trim(), sig).map_err(|e| bad(&format!("`{}`: {e}", t.trim())))
    };
    Quadruple::new(formula(head)?, formula(trigger)?, formula(payload)?, mode, sig)
}

/// Parses scenario text. `fragment` replaces the fragment named in the
/// file, and every formula is read under the resulting signature.
pub(super) fn parse(name: &str, text: &str, fragment: Option<Fragment>) -> Result<Scenario> {
    let mut p = Parser {
        fragment_override: fragment,
        atoms: Vec::new(),
        fragment: Fragment::Full,
        sig: None,
        assoc: AssociationMap::new(),
        evidence: BTreeMap::new(),
        believed: Vec::new(),
        rows: Vec::new(),
        script: Vec::new(),
        assertions: Vec::new(),
    };
    let mut current: Option<Section> = None;
    let mut seen: Vec<Section> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let text = raw.split('#').next().unwrap_or("").trim();
        if text.is_empty() {
            continue;
        }
        if let Some(header) = text.strip_prefix('[') {
            let header = header.strip_suffix(']').ok_or_else(|| err(line, "unclosed section header"))?;
            let s = section(header, line)?;
            if seen.contains(&s) {
                return Err(err(line, format!("section [{header}] appears twice")));
            }
            if s != Section::Signature {
                p.sig(line)?;
            }
            if let Section::Evidence(name) = &s {
                p.evidence.insert(name.clone(), (BTreeSet::new(), BTreeSet::new(), line));
            }
            seen.push(s.clone());
            current = Some(s);
            continue;
        }
        match current.clone() {
            None => return Err(err(line, "content before the first section")),
            Some(Section::Signature) => p.signature_line(text, line)?,
            Some(Section::Assoc) => p.assoc_line(text, line)?,
            Some(Section::Evidence(name)) => p.evidence_line(&name, text, line)?,
            Some(Section::Base) => p.base_line(text, line)?,
            Some(Section::Script) => p.script_line(text, line)?,
            Some(Section::Assert) => p.assert_line(text, line)?,
        }
    }
    let last = text.lines().count().max(1);
    let sig = p.sig(last)?.clone();
    let mut evidence = BTreeMap::new();
    for (name, (primaries, quads, line)) in std::mem::take(&mut p.evidence) {
        let e = Evidence::new(primaries, quads, &sig).map_err(|e| err(line, format!("{name}: {e}")))?;
        evidence.insert(name, e);
    }
    Ok(Scenario {
        name: name.to_string(),
        sig,
        assoc: p.assoc,
        evidence,
        believed: p.believed,
        rows: p.rows,
        script: p.script,
        assertions: p.assertions,
    })
}

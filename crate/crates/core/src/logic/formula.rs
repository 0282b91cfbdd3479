use std::fmt;

use serde::{Deserialize, Serialize};

use super::signature::{Fragment, Signature};

/// Propositional syntax tree. Atoms are indices into a [`Signature`].
///
/// Implication only exists as surface syntax; the parser desugars
/// `a -> b` into `~a | b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Formula {
    Top,
    Bot,
    Atom(usize),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(i: usize) -> Formula {
        Formula::Atom(i)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::or(Formula::not(a), b)
    }

    /// Left-folded conjunction; `⊤` for an empty iterator.
    pub fn conjoin<I: IntoIterator<Item = Formula>>(parts: I) -> Formula {
        parts.into_iter().reduce(Formula::and).unwrap_or(Formula::Top)
    }

    /// Left-folded disjunction; `⊥` for an empty iterator.
    pub fn disjoin<I: IntoIterator<Item = Formula>>(parts: I) -> Formula {
        parts.into_iter().reduce(Formula::or).unwrap_or(Formula::Bot)
    }

    /// An atom or a negated atom.
    pub fn is_literal(&self) -> bool {
        match self {
            Formula::Atom(_) => true,
            Formula::Not(inner) => matches!(**inner, Formula::Atom(_)),
            _ => false,
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) => 0,
            Formula::Not(a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    pub fn has_negation(&self) -> bool {
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) => false,
            Formula::Not(_) => true,
            Formula::And(a, b) | Formula::Or(a, b) => a.has_negation() || b.has_negation(),
        }
    }

    pub fn fits(&self, fragment: Fragment) -> bool {
        fragment.has_negation() || !self.has_negation()
    }

    /// Largest atom index mentioned, if any.
    pub fn max_atom(&self) -> Option<usize> {
        match self {
            Formula::Top | Formula::Bot => None,
            Formula::Atom(i) => Some(*i),
            Formula::Not(a) => a.max_atom(),
            Formula::And(a, b) | Formula::Or(a, b) => a.max_atom().max(b.max_atom()),
        }
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> Rendered<'a> {
        Rendered { formula: self, sig }
    }

    pub fn render(&self, sig: &Signature) -> String {
        self.display(sig).to_string()
    }
}

// Binding strength used by the printer: higher binds tighter.
fn level(f: &Formula) -> u8 {
    match f {
        Formula::Or(..) => 1,
        Formula::And(..) => 2,
        _ => 3,
    }
}

/// Display adapter that prints a formula in the surface grammar.
pub struct Rendered<'a> {
    formula: &'a Formula,
    sig: &'a Signature,
}

impl Rendered<'_> {
    fn write(&self, f: &Formula, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match f {
            Formula::Top => out.write_str("T"),
            Formula::Bot => out.write_str("F"),
            Formula::Atom(i) => out.write_str(self.sig.atom_name(*i)),
            Formula::Not(a) => {
                out.write_str("~")?;
                self.child(a, 3, out)
            }
            Formula::And(a, b) => {
                self.child(a, 2, out)?;
                out.write_str(" & ")?;
                // the grammar folds to the left, so a right child of equal
                // strength needs parentheses
                self.child(b, 3, out)
            }
            Formula::Or(a, b) => {
                self.child(a, 1, out)?;
                out.write_str(" | ")?;
                self.child(b, 2, out)
            }
        }
    }

    fn child(&self, f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if level(f) < min {
            out.write_str("(")?;
            self.write(f, out)?;
            out.write_str(")")
        } else {
            self.write(f, out)
        }
    }
}

impl fmt::Display for Rendered<'_> {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.write(self.formula, out)
    }
}

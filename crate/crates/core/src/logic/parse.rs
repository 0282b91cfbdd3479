//! Recursive-descent parser for the surface formula grammar:
//!
//! ```text
//! formula := disj ("->" disj)*        right-associative
//! disj    := conj ("|" conj)*
//! conj    := neg ("&" neg)*
//! neg     := "~" neg | atom | "T" | "F" | "(" formula ")"
//! ```

use super::formula::Formula;
use super::signature::{is_atom_name, Signature};
use crate::error::{Error, Result};

pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula> {
    let mut p = Parser { src: text.as_bytes(), pos: 0, sig };
    let f = p.formula()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error("unexpected trailing input"));
    }
    Ok(f)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    sig: &'a Signature,
}

impl Parser<'_> {
    fn error(&self, msg: &str) -> Error {
        Error::Syntax { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn eat(&mut self, tok: &str) -> bool {
        self.skip_ws();
        if self.src[self.pos..].starts_with(tok.as_bytes()) {
            self.pos += tok.len();
            true
        } else {
            false
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        let lhs = self.disj()?;
        let at = self.pos;
        if self.eat("->") {
            if !self.sig.fragment().has_negation() {
                self.pos = at;
                return Err(Error::FragmentViolation("->".into()));
            }
            let rhs = self.formula()?;
            return Ok(Formula::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn disj(&mut self) -> Result<Formula> {
        let mut acc = self.conj()?;
        while self.eat("|") {
            let rhs = self.conj()?;
            acc = Formula::or(acc, rhs);
        }
        Ok(acc)
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut acc = self.neg()?;
        while self.eat("&") {
            let rhs = self.neg()?;
            acc = Formula::and(acc, rhs);
        }
        Ok(acc)
    }

    fn neg(&mut self) -> Result<Formula> {
        self.skip_ws();
        if self.eat("~") {
            if !self.sig.fragment().has_negation() {
                return Err(Error::FragmentViolation("~".into()));
            }
            return Ok(Formula::not(self.neg()?));
        }
        if self.eat("(") {
            let inner = self.formula()?;
            if !self.eat(")") {
                return Err(self.error("expected `)`"));
            }
            return Ok(inner);
        }
        let start = self.pos;
        while self.pos < self.src.len()
            && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a proposition"));
        }
        let word = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
        match word {
            "T" => Ok(Formula::Top),
            "F" => Ok(Formula::Bot),
            w if is_atom_name(w) => self
                .sig
                .index_of(w)
                .map(Formula::Atom)
                .ok_or_else(|| Error::UnknownAtom(w.to_string())),
            _ => {
                self.pos = start;
                Err(self.error("malformed atom"))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::Fragment;

    fn sig() -> Signature {
        Signature::numbered(3, Fragment::Full).unwrap()
    }

    #[test]
    fn conjunction_with_negation() {
        let f = parse_formula("p1 & ~p2", &sig()).unwrap();
        assert_eq!(f, Formula::and(Formula::atom(0), Formula::not(Formula::atom(1))));
    }

    #[test]
    fn implication_is_desugared() {
        let f = parse_formula("p1 -> p2", &sig()).unwrap();
        assert_eq!(f, Formula::or(Formula::not(Formula::atom(0)), Formula::atom(1)));
    }

    #[test]
    fn implication_associates_right() {
        let f = parse_formula("p1 -> p2 -> p3", &sig()).unwrap();
        let inner = Formula::implies(Formula::atom(1), Formula::atom(2));
        assert_eq!(f, Formula::implies(Formula::atom(0), inner));
    }

    #[test]
    fn dangling_operator_is_a_syntax_error() {
        assert!(matches!(parse_formula("p1 &", &sig()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula("(p1", &sig()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula("p1 p2", &sig()), Err(Error::Syntax { .. })));
        assert!(matches!(parse_formula("", &sig()), Err(Error::Syntax { .. })));
    }

    #[test]
    fn unknown_atoms_and_fragment_violations() {
        assert_eq!(parse_formula("q", &sig()), Err(Error::UnknownAtom("q".into())));
        let mono = Signature::numbered(2, Fragment::Monotone).unwrap();
        assert!(matches!(parse_formula("~p1", &mono), Err(Error::FragmentViolation(_))));
        assert!(matches!(parse_formula("p1 -> p2", &mono), Err(Error::FragmentViolation(_))));
        assert!(parse_formula("(p1 | T) & F", &mono).is_ok());
    }

    #[test]
    fn render_round_trips() {
        let s = sig();
        for text in ["p1 & ~p2", "p1 | (p2 | p3)", "(p1 | p2) & p3", "~(p1 & p2)", "~~p1", "T | F"] {
            let f = parse_formula(text, &s).unwrap();
            assert_eq!(f.render(&s), text);
            assert_eq!(parse_formula(&f.render(&s), &s).unwrap(), f);
        }
    }
}

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest number of atoms a signature may carry. Sixteen valuations keep
/// every model set inside a machine word and the class space at 2^16.
pub const MAX_ATOMS: usize = 4;

/// Connective set a signature admits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Fragment {
    /// ⊤, ⊥, ¬, ∧, ∨.
    Full,
    /// ⊤, ⊥, ∧, ∨ (negation-free).
    Monotone,
}

impl Fragment {
    pub fn has_negation(self) -> bool {
        matches!(self, Fragment::Full)
    }
}

impl fmt::Display for Fragment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Fragment::Full => f.write_str("full"),
            Fragment::Monotone => f.write_str("monotone"),
        }
    }
}

impl std::str::FromStr for Fragment {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "full" => Ok(Fragment::Full),
            "monotone" => Ok(Fragment::Monotone),
            other => Err(Error::Invalid(format!("unknown fragment `{other}`"))),
        }
    }
}

/// An ordered, finite set of atom names together with the admitted
/// connectives.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Signature {
    atoms: Vec<String>,
    fragment: Fragment,
}

impl Signature {
    pub fn new<S: AsRef<str>>(atoms: &[S], fragment: Fragment) -> Result<Self> {
        if atoms.is_empty() {
            return Err(Error::Invalid("signature needs at least one atom".into()));
        }
        if atoms.len() > MAX_ATOMS {
            return Err(Error::CapExceeded { atoms: atoms.len(), cap: MAX_ATOMS });
        }
        let mut names: Vec<String> = Vec::with_capacity(atoms.len());
        for a in atoms {
            let a = a.as_ref();
            if !is_atom_name(a) {
                return Err(Error::Invalid(format!("`{a}` is not a valid atom name")));
            }
            if names.iter().any(|n| n == a) {
                return Err(Error::Invalid(format!("duplicate atom `{a}`")));
            }
            names.push(a.to_string());
        }
        Ok(Signature { atoms: names, fragment })
    }

    /// Shorthand for `p1 .. pn`.
    pub fn numbered(n: usize, fragment: Fragment) -> Result<Self> {
        let names: Vec<String> = (1..=n).map(|i| format!("p{i}")).collect();
        Signature::new(&names, fragment)
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn fragment(&self) -> Fragment {
        self.fragment
    }

    pub fn with_fragment(&self, fragment: Fragment) -> Signature {
        Signature { atoms: self.atoms.clone(), fragment }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.atoms.iter().position(|a| a == name)
    }

    pub fn atom_name(&self, i: usize) -> &str {
        &self.atoms[i]
    }

    /// Number of valuations, 2^|atoms|.
    pub fn valuation_count(&self) -> usize {
        1 << self.atoms.len()
    }

    /// Bit mask with one bit per valuation.
    pub fn universe(&self) -> u32 {
        if self.valuation_count() == 32 {
            u32::MAX
        } else {
            (1u32 << self.valuation_count()) - 1
        }
    }

    /// Renders valuation `v` as a bit string, one character per atom in
    /// signature order.
    pub fn valuation_bits(&self, v: usize) -> String {
        (0..self.atoms.len())
            .map(|i| if v >> i & 1 == 1 { '1' } else { '0' })
            .collect()
    }
}

pub(crate) fn is_atom_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    if s == "T" || s == "F" {
        return false;
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_signatures() {
        assert!(Signature::new::<&str>(&[], Fragment::Full).is_err());
        assert!(Signature::new(&["p", "p"], Fragment::Full).is_err());
        assert!(Signature::new(&["T"], Fragment::Full).is_err());
        assert!(Signature::new(&["1p"], Fragment::Full).is_err());
        assert!(matches!(
            Signature::numbered(5, Fragment::Full),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn valuation_bits_follow_atom_order() {
        let sig = Signature::numbered(3, Fragment::Full).unwrap();
        assert_eq!(sig.valuation_bits(0b001), "100");
        assert_eq!(sig.valuation_bits(0b110), "011");
        assert_eq!(sig.universe(), 0xff);
    }
}

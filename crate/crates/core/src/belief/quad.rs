use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::logic::{Exc, Formula, Signature};

/// Dependency mode of a triggered payload.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "u8", try_from = "u8")]
pub enum Mode {
    /// 0: the payload stands on its own once visible.
    Autonomous,
    /// 1: depends on the head.
    OnHead,
    /// 2: depends on the trigger.
    OnTrigger,
    /// 3: depends on both.
    OnBoth,
}

impl Mode {
    pub fn number(self) -> u8 {
        match self {
            Mode::Autonomous => 0,
            Mode::OnHead => 1,
            Mode::OnTrigger => 2,
            Mode::OnBoth => 3,
        }
    }
}

impl TryFrom<u8> for Mode {
    type Error = Error;

    fn try_from(n: u8) -> Result<Mode> {
        match n {
            0 => Ok(Mode::Autonomous),
            1 => Ok(Mode::OnHead),
            2 => Ok(Mode::OnTrigger),
            3 => Ok(Mode::OnBoth),
            _ => Err(Error::Invalid(format!("mode must be 0..=3, got {n}"))),
        }
    }
}

impl From<Mode> for u8 {
    fn from(m: Mode) -> u8 {
        m.number()
    }
}

/// `(trigger, payload, mode)`: the image of a literal under the
/// association map.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Triple {
    pub trigger: Formula,
    pub payload: Formula,
    pub mode: Mode,
}

impl Triple {
    pub fn new(trigger: Formula, payload: Formula, mode: Mode) -> Triple {
        Triple { trigger, payload, mode }
    }

    /// Neither component may be comparable with `head` under entailment.
    pub fn admissible_for(&self, head: &Formula, sig: &Signature) -> bool {
        let exc = Exc::of(head, sig);
        !exc.contains(&self.trigger, sig) && !exc.contains(&self.payload, sig)
    }
}

/// An attributive belief `head(trigger, payload, mode)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Quadruple {
    pub head: Formula,
    pub trigger: Formula,
    pub payload: Formula,
    pub mode: Mode,
}

impl Quadruple {
    pub fn new(
        head: Formula,
        trigger: Formula,
        payload: Formula,
        mode: Mode,
        sig: &Signature,
    ) -> Result<Quadruple> {
        let q = Quadruple { head, trigger, payload, mode };
        if !q.triple().admissible_for(&q.head, sig) {
            return Err(Error::Invalid(format!(
                "quadruple {} relates components comparable with its head",
                q.display(sig)
            )));
        }
        Ok(q)
    }

    pub(crate) fn from_triple(head: Formula, t: Triple) -> Quadruple {
        Quadruple { head, trigger: t.trigger, payload: t.payload, mode: t.mode }
    }

    pub fn triple(&self) -> Triple {
        Triple::new(self.trigger.clone(), self.payload.clone(), self.mode)
    }

    pub fn display<'a>(&'a self, sig: &'a Signature) -> QuadDisplay<'a> {
        QuadDisplay { q: self, sig }
    }
}

pub struct QuadDisplay<'a> {
    q: &'a Quadruple,
    sig: &'a Signature,
}

impl fmt::Display for QuadDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} : {} => {} mode {}",
            self.q.head.display(self.sig),
            self.q.trigger.display(self.sig),
            self.q.payload.display(self.sig),
            self.q.mode.number()
        )
    }
}

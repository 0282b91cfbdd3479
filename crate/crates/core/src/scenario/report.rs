use serde::{Deserialize, Serialize};

use crate::engine::{Op, Round};
use crate::logic::{Formula, Signature};
use crate::support::SupportTable;

/// The machine-readable trace of a scenario run. Model sets are sorted bit
/// patterns, first atom leftmost.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceReport {
    pub scenario: String,
    pub rounds: Vec<RoundReport>,
    pub assertions: Vec<AssertionReport>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoundReport {
    pub op: Op,
    pub gamma: Vec<String>,
    pub pi1_models: Vec<String>,
    pub table: Vec<RowReport>,
    pub gen: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowReport {
    pub subject: String,
    pub support: Vec<String>,
    pub closure: Vec<String>,
    pub explicit: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AssertionReport {
    pub expr: String,
    pub pass: bool,
}

fn rendered<'a>(fs: impl IntoIterator<Item = &'a Formula>, sig: &Signature) -> Vec<String> {
    fs.into_iter().map(|f| f.render(sig)).collect()
}

pub(crate) fn table_report(table: &SupportTable, sig: &Signature) -> Vec<RowReport> {
    table
        .rows()
        .map(|(_, row)| RowReport {
            subject: row.subject.render(sig),
            support: rendered(&row.support, sig),
            closure: row.closure.patterns(sig),
            explicit: row.explicit,
        })
        .collect()
}

impl RoundReport {
    pub(crate) fn new(round: &Round, sig: &Signature) -> RoundReport {
        RoundReport {
            op: round.op,
            gamma: rendered(&round.gamma, sig),
            pi1_models: round.after.patterns(sig),
            table: table_report(&round.table, sig),
            gen: rendered(&round.gen, sig),
        }
    }
}

impl TraceReport {
    pub fn passed(&self) -> bool {
        self.assertions.iter().all(|a| a.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialise")
    }
}

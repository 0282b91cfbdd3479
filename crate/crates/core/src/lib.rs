//! Belief bases with latent attributive beliefs.
//!
//! A belief base pairs a logically closed theory with attributive
//! quadruples `P(P1, P2, n)` and a support table recording which beliefs
//! sustain which. Expansion, contraction and revision run as fixpoint
//! loops over internal operators, so contracting a belief can cascade
//! through the beliefs it supported.

pub mod error;
pub mod belief;
pub mod engine;
pub mod logic;
pub mod oracle;
pub mod scenario;
pub mod support;

pub use error::{Error, Result};

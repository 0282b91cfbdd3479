//! Support tables and the operators on them.

mod ops;
pub(crate) mod table;

pub use ops::{augment, derive_support, double_diff, reduce, rho};
pub(crate) use ops::{augment_with_defaults, cohere};
pub use table::{believed_classes, SupportRow, SupportTable};

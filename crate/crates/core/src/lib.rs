//! Pattern-avoiding ascent sequences counted by the Catalan and Narayana
//! numbers.
//!
//! The crate enumerates restricted ascent sequences, implements a bijection
//! from (0011, 0021)-avoiders onto Dyck paths, evaluates the recurrences and
//! generating functions describing 021-avoiders, and exposes verification
//! drivers that check each of these claims exhaustively for small sizes.

pub mod ascent;
pub mod bijection;
pub mod counting;
pub mod dyck;
pub mod error;
pub mod genproc;
pub mod report;
pub mod series;
pub mod verify;

pub use ascent::{AscentSequence, Pattern};
pub use dyck::DyckPath;
pub use error::{Error, Result};
pub use report::CheckReport;

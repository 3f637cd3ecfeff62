//! Finite categories with restriction, local, partial and inclusion
//! structures, their validators and the translations between them.

pub mod equivalence;
pub mod error;
pub mod fincat;
pub mod generators;
pub mod inclusion;
pub mod local;
pub mod partial;
pub mod report;
pub mod restriction;
pub mod structured;

pub use error::{Error, Result};
pub use fincat::{FinCategory, MorId, ObjId};
pub use report::{ValidationReport, Verdict, Violation};
pub use structured::{Flavor, Structured};

//! Command line front end for [`nilcon_core`]: a small spec language and
//! the reports produced from it.

pub mod driver;
pub mod lang;
pub mod report;

pub use driver::{run, RunConfig};
pub use lang::{parse, SpecDocument, SpecError};
pub use report::{AnalysisReport, Verdict};

pub mod catalog;
pub mod construction;
pub mod conventions;
pub mod degeneration;
pub mod diagnostics;
pub mod error;
pub mod exactlat;
pub mod invariants;
pub mod ncconfig;

pub use conventions::SignConventions;
pub use diagnostics::{Diagnostic, Severity};
pub use error::{Error, Result};

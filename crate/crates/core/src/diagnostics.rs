use std::fmt;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Error,
    Warning,
    Note,
}

impl fmt::Display for Severity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
            Severity::Note => "note",
        })
    }
}

/// One finding of a validation pass. `clause` is a stable identifier, `locus`
/// names the component, surface or divisor piece it concerns.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Diagnostic {
    pub clause: String,
    pub locus: String,
    pub severity: Severity,
    pub message: String,
}

impl Diagnostic {
    pub fn new(
        severity: Severity,
        clause: &str,
        locus: impl Into<String>,
        message: impl Into<String>,
    ) -> Self {
        Diagnostic {
            clause: clause.to_string(),
            locus: locus.into(),
            severity,
            message: message.into(),
        }
    }

    pub fn error(clause: &str, locus: impl Into<String>, message: impl Into<String>) -> Self {
        Self::new(Severity::Error, clause, locus, message)
    }

    pub fn warning(clause: &str, locus: impl Into<String>, message: impl Into<String>) -> Self {
        Self::new(Severity::Warning, clause, locus, message)
    }

    pub fn note(clause: &str, locus: impl Into<String>, message: impl Into<String>) -> Self {
        Self::new(Severity::Note, clause, locus, message)
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} [{}] {}: {}",
            self.severity, self.clause, self.locus, self.message
        )
    }
}

/// Sorts by clause identifier, then locus, then severity and message.
pub fn sort_diagnostics(diags: &mut [Diagnostic]) {
    diags.sort();
}

pub fn has_errors(diags: &[Diagnostic]) -> bool {
    diags.iter().any(Diagnostic::is_error)
}

//! Sign conventions used when assembling the restriction map, the collective
//! normal class and the Chern-number transport. Only [`SignConventions::STANDARD`]
//! is mathematically correct; the other settings exist so tests can confirm
//! that a single flipped sign is caught by the golden tables.

/// Signs applied at the three places where a sign slip would go unnoticed by
/// type checking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SignConventions {
    /// Sign of the restriction from the second adjacent component in each
    /// row block of the restriction map.
    pub mu_second: i64,
    /// Sign of the triple-curve term in the collective normal class.
    pub tau_term: i64,
    /// Sign of the degree shift in the Chern-number transport.
    pub chern_transport: i64,
}

impl SignConventions {
    pub const STANDARD: SignConventions = SignConventions {
        mu_second: -1,
        tau_term: 1,
        chern_transport: 1,
    };

    pub fn with_flipped_mu(self) -> Self {
        SignConventions {
            mu_second: -self.mu_second,
            ..self
        }
    }

    pub fn with_flipped_tau(self) -> Self {
        SignConventions {
            tau_term: -self.tau_term,
            ..self
        }
    }

    pub fn with_flipped_chern(self) -> Self {
        SignConventions {
            chern_transport: -self.chern_transport,
            ..self
        }
    }
}

impl Default for SignConventions {
    fn default() -> Self {
        Self::STANDARD
    }
}

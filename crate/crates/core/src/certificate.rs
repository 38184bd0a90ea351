use serde::{Deserialize, Serialize};

/// Machine-readable outcome of an exact identity check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCertificate {
    pub identity: String,
    pub n: usize,
    /// Nonzero terms left over, rendered as strings; empty on success.
    pub residual_terms: Vec<String>,
    pub pass: bool,
}

impl IdentityCertificate {
    pub fn from_residual(identity: impl Into<String>, n: usize, residual_terms: Vec<String>) -> Self {
        let pass = residual_terms.is_empty();
        IdentityCertificate {
            identity: identity.into(),
            n,
            residual_terms,
            pass,
        }
    }

    pub fn from_check(identity: impl Into<String>, n: usize, pass: bool, note: Option<String>) -> Self {
        IdentityCertificate {
            identity: identity.into(),
            n,
            residual_terms: if pass { Vec::new() } else { note.into_iter().collect() },
            pass,
        }
    }
}

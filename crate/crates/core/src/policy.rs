//! Shared numerical budgets.
//!
//! Every truncated sum and quadrature in the crate draws its tolerances and
//! cutoffs from a [`PrecisionPolicy`] so that accuracy/cost trade-offs are
//! controlled in one place and results are reproducible.

/// Smallest tolerance the library honours; smaller requests are clamped.
///
/// Double precision carries ~2.2e-16 of relative noise per operation and the
/// kernels here accumulate 1e4..1e7 terms, so promising more than ~1e-14 in
/// absolute terms would be fiction.
pub const EPSILON_FLOOR: f64 = 1e-14;

/// Tolerances and truncation limits shared by all numerical routines.
#[derive(Debug, Clone, PartialEq)]
pub struct PrecisionPolicy {
    /// Absolute tail budget for truncated series.
    pub epsilon_abs: f64,
    /// Relative tolerance target for quadrature refinement.
    pub epsilon_rel: f64,
    /// Budget of integrand evaluations per quadrature call.
    pub quadrature_nodes: usize,
    /// Default upper limit for the lower-left entry c in sums over cosets.
    pub cutoff_csum: u32,
    /// Default truncation length for q-expansions and Dirichlet series.
    pub cutoff_qseries: usize,
}

impl Default for PrecisionPolicy {
    fn default() -> Self {
        PrecisionPolicy {
            epsilon_abs: 1e-12,
            epsilon_rel: 1e-12,
            quadrature_nodes: 200_000,
            cutoff_csum: 550,
            cutoff_qseries: 200_000,
        }
    }
}

impl PrecisionPolicy {
    /// Build a policy with both tolerances set to `eps`, clamped to
    /// [`EPSILON_FLOOR`]. Returns the policy and whether clamping occurred.
    pub fn with_epsilon(eps: f64) -> (Self, bool) {
        let clamped = !(eps >= EPSILON_FLOOR);
        let e = if clamped { EPSILON_FLOOR } else { eps };
        (
            PrecisionPolicy {
                epsilon_abs: e,
                epsilon_rel: e,
                ..Self::default()
            },
            clamped,
        )
    }

    /// Check the structural invariant: every budget strictly positive.
    pub fn validate(&self) -> crate::error::Result<()> {
        let ok = self.epsilon_abs > 0.0
            && self.epsilon_rel > 0.0
            && self.quadrature_nodes > 0
            && self.cutoff_csum > 0
            && self.cutoff_qseries > 0;
        if ok {
            Ok(())
        } else {
            Err(crate::error::Error::Domain(
                "precision policy fields must all be positive".into(),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_is_valid() {
        assert!(PrecisionPolicy::default().validate().is_ok());
    }

    #[test]
    fn epsilon_clamps_at_floor() {
        let (p, clamped) = PrecisionPolicy::with_epsilon(1e-30);
        assert!(clamped);
        assert_eq!(p.epsilon_abs, EPSILON_FLOOR);
        let (p, clamped) = PrecisionPolicy::with_epsilon(1e-9);
        assert!(!clamped);
        assert_eq!(p.epsilon_abs, 1e-9);
    }
}

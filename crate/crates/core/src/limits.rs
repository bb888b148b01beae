use crate::error::{Error, Result};

/// Search guards. Defaults are conservative; raising them is always allowed
/// but may mean very long runs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Exact counting of partial Latin squares by size.
    pub partial_count_max_n: usize,
    /// Minimum teaching set search for a single square.
    pub min_teach_max_n: usize,
    /// `scs` by exhaustion over every square of the order.
    pub scs_exhaustive_max_n: usize,
    /// `scs` over isotopy class representatives.
    pub scs_representative_max_n: usize,
    /// Criticality verification of the quarter construction.
    pub quarter_verify_max_n: usize,
    /// Building the concept class of all Latin squares.
    pub concept_class_max_n: usize,
    /// Universe size up to which shattering is searched without a size limit.
    pub vc_universe_max: usize,
    /// K3-decomposition by exact cover.
    pub decompose_max_n: usize,
    /// Class size up to which RTD is cross-checked over all subfamilies.
    pub rtd_brute_force_max_concepts: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            partial_count_max_n: 4,
            min_teach_max_n: 5,
            scs_exhaustive_max_n: 4,
            scs_representative_max_n: 5,
            quarter_verify_max_n: 8,
            concept_class_max_n: 4,
            vc_universe_max: 30,
            decompose_max_n: 6,
            rtd_brute_force_max_concepts: 12,
        }
    }
}

impl Limits {
    /// Raises every order guard to at least `n`. The exhaustive `scs` cutoff
    /// is left alone: above it `scs` switches to representatives.
    pub fn with_max_n(mut self, n: usize) -> Self {
        for g in [
            &mut self.partial_count_max_n,
            &mut self.min_teach_max_n,
            &mut self.scs_representative_max_n,
            &mut self.quarter_verify_max_n,
            &mut self.concept_class_max_n,
            &mut self.decompose_max_n,
        ] {
            *g = (*g).max(n);
        }
        self
    }
}

pub(crate) fn guard(what: &'static str, n: usize, limit: usize) -> Result<()> {
    if n > limit {
        Err(Error::GuardExceeded { what, n, limit })
    } else {
        Ok(())
    }
}

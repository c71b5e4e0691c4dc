//! Exact counting of polynomial invariants of bipartite density matrices
//! under local unitary transformations.
//!
//! The degree-`n` count `F_n` is computed two independent ways:
//!
//! * [`census`] sums products of symmetric-group Kronecker coefficients over
//!   pairs of bounded-length partitions;
//! * [`molien`] extracts the constant term of the Molien integrand over the
//!   maximal torus of `U(N1) x U(N2)`.
//!
//! [`factor`] then searches for rational forms
//! `prod (1 + x^a) / prod (1 - x^b)` that reproduce the resulting series.

pub mod census;
pub mod characters;
pub mod error;
pub mod factor;
pub mod kronecker;
pub mod laurent;
pub mod molien;
pub mod partition;
pub mod series;

pub use census::{generating_series, invariant_count, CensusProblem};
pub use characters::{CharTable, CharacterEngine, TableOrigin, CACHE_FORMAT_VERSION};
pub use error::{Error, Result};
pub use factor::{FitReport, Mismatch, RationalForm, SearchConstraints};
pub use kronecker::SchurExpansion;
pub use laurent::LaurentPoly;
pub use partition::{format_partition, parse_partition, partitions_of, Partition};
pub use series::SeriesZ;

/// Hard ceiling on census degree regardless of configuration.
pub const HARD_MAX_DEGREE: usize = 16;

/// Resource guards shared by all computations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest `n` for which a full `S_n` character table is built.
    pub max_table_weight: usize,
    /// Largest census or Molien degree accepted; clamped to [`HARD_MAX_DEGREE`].
    pub max_degree: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_table_weight: 20,
            max_degree: 12,
        }
    }
}

impl Limits {
    pub fn check_degree(&self, n: usize) -> Result<()> {
        let limit = self.max_degree.min(HARD_MAX_DEGREE);
        if n > limit {
            Err(Error::DegreeLimit {
                requested: n,
                limit,
            })
        } else {
            Ok(())
        }
    }
}

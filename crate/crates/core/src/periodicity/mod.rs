//! Path equivalence `μ ~ ν` (same source, `μx = νx` for every infinite path
//! `x`), the periodicity group it generates, local periodicity `Σ_v`, and the
//! structural predicates used by the quotient constructions.

mod equivalence;
mod report;
mod structure;

pub use equivalence::{
    equivalent, sigma_contains, strip_common_prefix, Equivalence, EquivalenceWitness, PrefixError, Verdict,
};
pub use report::{
    coprime_pairs, default_bound, is_aperiodic, periodicity_group, periodicity_group_with, vertices_per,
    vertices_per_bounded, DifferenceWitness, PeriodicityReport,
};
pub use structure::{has_property_w, is_cofinal, is_sink_free, reachable_from};

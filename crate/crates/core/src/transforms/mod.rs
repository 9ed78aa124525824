//! Graphs over quotient monoids `Z^k/H` and the two constructions relating
//! them to k-graphs: the pullback `q*Γ` and the quotient `q_*Λ` by the
//! periodicity group.

mod checks;
mod pullback;
mod pushout;
mod qgraph;

pub use checks::{
    canonical_iso_check, exchange_identity_check, induced_path_map_check, verify_pullback_periodic,
    verify_pushout_aperiodic, AperiodicityCheck, InducedMapFailure, IsoCertificate, IsoError, PeriodicCheckError,
    PullbackPeriodicity,
};
pub use pullback::{pullback, Pullback, PullbackError};
pub use pushout::{pushout, restrict_to, Pushout, PushoutError};
pub use qgraph::{eg1, verify_qgraph, Arrow, Morphism, QGraph, QGraphError};

//! Finite higher-rank graphs and graphs over quotient monoids `Z^k/H`.
//!
//! [`kgraph`] models k-graphs by skeleton and squares, [`periodicity`] decides
//! path equivalence and computes the periodicity group, [`transforms`] builds
//! the quotient by that group and the pullback along `q: Z^k → Z^k/H`, and
//! [`lattice`] supplies the integer linear algebra. [`format`] and [`cli`]
//! read, write and drive all of it.

pub mod builtins;
pub mod cli;
pub mod format;
pub mod kgraph;
pub mod lattice;
pub mod periodicity;
pub mod transforms;

//! Exact integer linear algebra for subgroups `H ≤ Z^k`: Smith normal form,
//! the quotient `Z^k/H ≅ Z_{d₁} × … × Z_{d_r} × Z^{k−r}`, the quotient map `q`
//! and the section `ȷ` onto the torsion-free part.

mod degree;
mod matrix;
mod smith;
mod subgroup;

pub use degree::{Degree, GDegree};
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, SmithForm};
pub use subgroup::{group_generated, hermite_rows, quotient_structure, QElem, QuotientMonoid, Subgroup};

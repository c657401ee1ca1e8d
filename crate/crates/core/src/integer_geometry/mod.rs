//! Exact integer and rational geometry: lattice normal forms, sublattices,
//! rational subspaces and polyhedral cones.

mod cone;
mod lattice;
mod normal_form;
mod subspace;

pub use cone::Cone;
pub use lattice::{is_primitive_in, Functional, LatticeIndex, Sublattice};
pub use normal_form::{hnf, hnf_with_transform, left_kernel, snf, HermiteForm, SmithForm};
pub use subspace::{rank, rref, solve_in_span, Subspace};

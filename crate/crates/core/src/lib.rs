//! Exact combinatorics of Luna data (homogeneous spherical data).
//!
//! A spherical subgroup `H` of a connected reductive group `G` is classified
//! by its Luna datum `(M, Σ, Sᵖ, Dᵃ)`. This crate represents such data over
//! exact rationals, checks them against the combinatorial axioms, and
//! derives from them the full color set, the valuation cone, the datum of
//! the normalizer, quotient data of colored subspaces, subdata attached to
//! distinguished pairs, the datum of the identity component and the
//! connectedness criterion.
//!
//! The modules mirror the layers of the computation:
//!
//! * [`root_datum`]: the ambient group as a root datum with Dynkin diagram.
//! * [`integer_geometry`]: lattices, subspaces and cones.
//! * [`luna`]: the spherical-root table, the datum type and its axioms.
//! * [`containment`]: overgroups, subdata and the identity component.
//! * [`document`]: the JSON datum file format.

pub mod arith;
pub mod containment;
pub mod document;
mod error;
pub mod integer_geometry;
pub mod luna;
pub mod root_datum;

pub use arith::{Int, QVec, Rat, ZVec};
pub use containment::{
    distinguished_roots, enumerate_finite_subdata, identity_component_datum, is_colored_subspace, is_connected,
    is_d_saturated, is_distinguished_pair, is_subdatum, normalizer_datum, quotient_datum, stein_decompose, subdatum,
    ColoredSubspace, DistinguishedPair, Subdatum,
};
pub use document::{DatumDocument, GroupDescriptor};
pub use error::{Error, Result};
pub use integer_geometry::{Cone, Functional, LatticeIndex, Sublattice, Subspace};
pub use luna::{
    compatible, datum_equal, full_colors, match_spherical_root, spherical_roots_of_group, validate, valuation_cone,
    Color, ColorType, LunaDatum, SphericalRootMatch, Violation,
};
pub use root_datum::{DynkinSubdiagram, DynkinType, Isogeny, RootDatum};

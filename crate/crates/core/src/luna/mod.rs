//! The table of spherical roots, the datum type, its axioms, the full set
//! of colors and the valuation cone.

mod datum;
mod table;

pub(crate) use datum::{colors_of, require_valid};
pub use datum::{
    datum_equal, full_colors, validate, valuation_cone, AbstractColor, Axiom, Color, ColorType, LunaDatum, Violation,
};
pub use table::{
    compatible, match_spherical_root, spherical_roots_of_group, SphericalRootMatch, SphericalRootPattern, SupportKind,
    PATTERNS,
};

//! The spherical roots of `G` and compatibility with a parabolic set.

use std::collections::BTreeSet;
use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{to_z, QVec, Rat, ZVec};
use crate::error::{Error, Result};
use crate::root_datum::{DiagramComponent, DynkinType, RootDatum};

/// Diagram type of the support of a spherical root.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SupportKind {
    Simple(DynkinType),
    /// Two orthogonal simple roots `α₁, α₁'`.
    A1xA1,
}

/// One row of the table of spherical roots.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SphericalRootPattern {
    /// 1-based row number.
    pub row: usize,
    pub support: SupportKind,
    /// `λ = ½` is allowed for this row.
    pub halvable: bool,
}

use DynkinType::*;
use SupportKind::*;

pub const PATTERNS: [SphericalRootPattern; 14] = [
    SphericalRootPattern { row: 1, support: Simple(A), halvable: false },
    SphericalRootPattern { row: 2, support: Simple(A), halvable: false },
    SphericalRootPattern { row: 3, support: A1xA1, halvable: true },
    SphericalRootPattern { row: 4, support: Simple(A), halvable: false },
    SphericalRootPattern { row: 5, support: Simple(A), halvable: true },
    SphericalRootPattern { row: 6, support: Simple(B), halvable: false },
    SphericalRootPattern { row: 7, support: Simple(B), halvable: false },
    SphericalRootPattern { row: 8, support: Simple(B), halvable: true },
    SphericalRootPattern { row: 9, support: Simple(C), halvable: false },
    SphericalRootPattern { row: 10, support: Simple(D), halvable: true },
    SphericalRootPattern { row: 11, support: Simple(F), halvable: false },
    SphericalRootPattern { row: 12, support: Simple(G), halvable: false },
    SphericalRootPattern { row: 13, support: Simple(G), halvable: false },
    SphericalRootPattern { row: 14, support: Simple(G), halvable: false },
];

impl SphericalRootPattern {
    pub fn admits_rank(&self, r: usize) -> bool {
        match self.row {
            1 | 2 => r == 1,
            3 => r == 2,
            4 => r >= 2,
            5 => r == 3,
            6 | 7 => r >= 2,
            8 => r == 3,
            9 => r >= 3,
            10 => r >= 4,
            11 => r == 4,
            12..=14 => r == 2,
            _ => false,
        }
    }

    /// Coefficients of `γ` (for `λ = 1`) in Bourbaki order. For `A1xA1`
    /// the order is `α₁, α₁'`.
    pub fn coefficients(&self, r: usize) -> Vec<i64> {
        match self.row {
            1 => vec![1],
            2 => vec![2],
            3 => vec![1, 1],
            4 | 6 => vec![1; r],
            5 => vec![1, 2, 1],
            7 => vec![2; r],
            8 => vec![1, 2, 3],
            9 => (0..r).map(|i| if i == 0 || i == r - 1 { 1 } else { 2 }).collect(),
            10 => (0..r).map(|i| if i + 2 < r { 2 } else { 1 }).collect(),
            11 => vec![1, 2, 3, 2],
            12 => vec![1, 1],
            13 => vec![2, 1],
            14 => vec![4, 2],
            _ => Vec::new(),
        }
    }

    /// `Sᵖᵖ(γ)` as 0-based Bourbaki positions.
    pub fn spp(&self, r: usize) -> Vec<usize> {
        match self.row {
            4 | 6 => (1..r - 1).collect(),
            5 => vec![0, 2],
            7 => (1..r).collect(),
            8 => vec![0, 1],
            9 => (2..r).collect(),
            10 => (1..r).collect(),
            11 => vec![0, 1, 2],
            13 | 14 => vec![1],
            _ => Vec::new(),
        }
    }

    pub fn support_label(&self, r: usize) -> String {
        match self.support {
            Simple(ty) => format!("{ty}{r}"),
            A1xA1 => "A1xA1".to_string(),
        }
    }
}

/// A spherical root of `G` together with the table data it matched.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SphericalRootMatch {
    pub gamma: ZVec,
    pub row: usize,
    /// Type of `Supp(γ)`, e.g. `"B2"` or `"A1xA1"`.
    pub support_type: String,
    pub lambda: Rat,
    /// `Sᵖᵖ(γ)` as simple-root indices.
    pub spp: BTreeSet<usize>,
    /// `Sᵖ(γ) = {α ∈ S : ⟨α̌, γ⟩ = 0}`.
    pub sp_gamma: BTreeSet<usize>,
}

impl fmt::Display for SphericalRootMatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "row {} ({}", self.row, self.support_type)?;
        if !self.lambda.is_one() {
            write!(f, ", λ = {}", crate::arith::fmt_rat(&self.lambda))?;
        }
        write!(f, ")")
    }
}

fn sp_of(d: &RootDatum, gamma: &[Rat]) -> BTreeSet<usize> {
    (0..d.num_simple_roots()).filter(|&i| d.pairing(i, gamma).is_ok_and(|p| p.is_zero())).collect()
}

/// Candidate patterns for a support whose diagram has the given components,
/// each paired with the Bourbaki orderings to try.
fn candidates(components: &[DiagramComponent]) -> Vec<(SphericalRootPattern, usize, Vec<Vec<usize>>)> {
    let mut out = Vec::new();
    match components {
        [c] => {
            let r = c.rank();
            for p in PATTERNS {
                if p.support == Simple(c.ty) && p.admits_rank(r) {
                    out.push((p, r, c.orderings.clone()));
                }
            }
        }
        [c1, c2] if c1.rank() == 1 && c2.rank() == 1 => {
            let (a, b) = (c1.bourbaki()[0], c2.bourbaki()[0]);
            out.push((PATTERNS[2], 2, vec![vec![a, b], vec![b, a]]));
        }
        _ => {}
    }
    out
}

/// Finds the row of the table matching `γ`, if any.
pub fn match_spherical_root(d: &RootDatum, gamma: &[Rat]) -> Option<SphericalRootMatch> {
    if gamma.len() != d.rank() || gamma.iter().all(Zero::is_zero) {
        return None;
    }
    let gamma_z = to_z(gamma)?;
    let coeffs = d.root_coefficients(gamma).ok()?;
    let support: BTreeSet<usize> = coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect();
    let diagram = d.subdiagram(&support).ok()?;
    let half = Rat::new(1.into(), 2.into());
    for (pattern, r, orderings) in candidates(&diagram.components) {
        let template = pattern.coefficients(r);
        let lambdas: Vec<Rat> = if pattern.halvable { vec![Rat::one(), half.clone()] } else { vec![Rat::one()] };
        for order in &orderings {
            for lambda in &lambdas {
                let hit =
                    order.iter().zip(&template).all(|(&node, &t)| coeffs[node] == lambda * Rat::from_integer(t.into()));
                if hit {
                    let spp = pattern.spp(r).into_iter().map(|k| order[k]).collect();
                    return Some(SphericalRootMatch {
                        gamma: gamma_z,
                        row: pattern.row,
                        support_type: pattern.support_label(r),
                        lambda: lambda.clone(),
                        spp,
                        sp_gamma: sp_of(d, gamma),
                    });
                }
            }
        }
    }
    None
}

/// The finite set `Σ_G`, sorted by (row, root coefficients).
pub fn spherical_roots_of_group(d: &RootDatum) -> Vec<SphericalRootMatch> {
    let s = d.num_simple_roots();
    let mut found: Vec<(usize, QVec, SphericalRootMatch)> = Vec::new();
    let half = Rat::new(1.into(), 2.into());
    for mask in 1u64..(1u64 << s) {
        let subset: BTreeSet<usize> = (0..s).filter(|i| mask >> i & 1 == 1).collect();
        let Ok(diagram) = d.subdiagram(&subset) else { continue };
        for (pattern, r, orderings) in candidates(&diagram.components) {
            let template = pattern.coefficients(r);
            for order in &orderings {
                let mut coeffs = vec![Rat::zero(); s];
                for (&node, &t) in order.iter().zip(&template) {
                    coeffs[node] = Rat::from_integer(t.into());
                }
                let mut versions = vec![coeffs.clone()];
                if pattern.halvable {
                    versions.push(coeffs.iter().map(|c| c * &half).collect());
                }
                for c in versions {
                    let gamma = d.from_root_coefficients(&c);
                    if !d.in_character_lattice(&gamma)
                        || found.iter().any(|(_, _, m)| crate::arith::to_q(&m.gamma) == gamma)
                    {
                        continue;
                    }
                    if let Some(m) = match_spherical_root(d, &gamma) {
                        found.push((m.row, c, m));
                    }
                }
            }
        }
    }
    found.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    found.into_iter().map(|(_, _, m)| m).collect()
}

/// `Sᵖᵖ(γ) ⊆ Sᵖ ⊆ Sᵖ(γ)`.
pub fn compatible(d: &RootDatum, sp: &BTreeSet<usize>, gamma: &[Rat]) -> Result<bool> {
    let m = match_spherical_root(d, gamma).ok_or(Error::NotSphericalRoot)?;
    Ok(m.spp.is_subset(sp) && sp.is_subset(&m.sp_gamma))
}

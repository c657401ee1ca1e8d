//! Rational polyhedral cones via the double description method.
//!
//! A cone is stored canonically as its lineality space together with the
//! primitive integer generators of the extremal rays of its pointed part.
//! Each ray is reduced modulo the lineality space (zero on its pivot
//! columns), so two cones are equal iff their canonical forms are.

use std::fmt;

use num_traits::{Signed, Zero};

use super::subspace::Subspace;
use crate::arith::{primitive, primitive_z, to_q, zdot, QVec, Rat, ZVec};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cone {
    dim: usize,
    lineality: Subspace,
    rays: Vec<ZVec>,
}

impl Cone {
    /// The cone generated by `generators` (the empty list gives `{0}`).
    pub fn generated_by(dim: usize, generators: &[QVec]) -> Result<Cone> {
        check_dims(dim, generators)?;
        let dual = cone_from_inequalities(dim, generators);
        Ok(cone_from_inequalities(dim, &dual.generators()))
    }

    /// `{x : ⟨a, x⟩ ≥ 0 for every a}`.
    pub fn from_inequalities(dim: usize, inequalities: &[QVec]) -> Result<Cone> {
        check_dims(dim, inequalities)?;
        Ok(cone_from_inequalities(dim, inequalities))
    }

    pub fn zero(dim: usize) -> Cone {
        Cone { dim, lineality: Subspace::zero(dim), rays: Vec::new() }
    }

    pub fn full(dim: usize) -> Cone {
        Cone { dim, lineality: Subspace::full(dim), rays: Vec::new() }
    }

    pub fn from_subspace(w: &Subspace) -> Cone {
        Cone { dim: w.ambient_dim(), lineality: w.clone(), rays: Vec::new() }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn lineality(&self) -> &Subspace {
        &self.lineality
    }

    /// Primitive generators of the extremal rays of the pointed part, sorted.
    pub fn extremal_rays(&self) -> &[ZVec] {
        &self.rays
    }

    pub fn is_pointed(&self) -> bool {
        self.lineality.dim() == 0
    }

    /// A finite generating set: the rays plus `±` each lineality basis vector.
    pub fn generators(&self) -> Vec<QVec> {
        let mut out: Vec<QVec> = self.rays.iter().map(|r| to_q(r)).collect();
        for l in self.lineality.basis() {
            out.push(l.clone());
            out.push(l.iter().map(|x| -x).collect());
        }
        out
    }

    /// `{y : ⟨y, x⟩ ≥ 0 for every x in the cone}`.
    pub fn dual(&self) -> Cone {
        cone_from_inequalities(self.dim, &self.generators())
    }

    pub fn negated(&self) -> Cone {
        let neg: Vec<QVec> = self.rays.iter().map(|r| to_q(r).iter().map(|x| -x).collect()).collect();
        canonical(self.dim, self.lineality.clone(), neg.iter().map(|r| primitive(r)).collect())
    }

    pub fn contains(&self, v: &[Rat]) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: v.len() });
        }
        let dual = self.dual();
        Ok(dual.generators().iter().all(|h| !dot_q(h, v).is_negative()))
    }

    pub fn intersect_subspace(&self, w: &Subspace) -> Result<Cone> {
        if w.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: w.ambient_dim() });
        }
        let mut ineqs = self.dual().generators();
        for a in w.annihilator().basis() {
            ineqs.push(a.clone());
            ineqs.push(a.iter().map(|x| -x).collect());
        }
        Ok(cone_from_inequalities(self.dim, &ineqs))
    }

    /// True iff the cone is exactly the subspace `w`.
    pub fn equals_subspace(&self, w: &Subspace) -> Result<bool> {
        if w.ambient_dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: w.ambient_dim() });
        }
        Ok(self.rays.is_empty() && &self.lineality == w)
    }
}

fn dot_q(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).fold(Rat::zero(), |acc, (x, y)| acc + x * y)
}

fn check_dims(dim: usize, vs: &[QVec]) -> Result<()> {
    match vs.iter().find(|v| v.len() != dim) {
        Some(v) => Err(Error::DimensionMismatch { expected: dim, found: v.len() }),
        None => Ok(()),
    }
}

fn canonical(dim: usize, lineality: Subspace, rays: Vec<ZVec>) -> Cone {
    let mut reduced: Vec<ZVec> = rays
        .iter()
        .map(|r| primitive(&lineality.reduce(&to_q(r))))
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .collect();
    reduced.sort();
    reduced.dedup();
    Cone { dim, lineality, rays: reduced }
}

/// Two extremal rays span a face iff no third ray is tight on every
/// constraint tight on both. Valid because `rays` is always the minimal
/// set of extremal rays of the pointed part.
fn adjacent(tight: &[Vec<bool>], i: usize, j: usize) -> bool {
    let common: Vec<usize> = (0..tight[i].len()).filter(|&c| tight[i][c] && tight[j][c]).collect();
    (0..tight.len()).all(|k| k == i || k == j || common.iter().any(|&c| !tight[k][c]))
}

/// Double description: start from the whole space and cut by one
/// half-space at a time, keeping the lineality space and the extremal rays.
fn cone_from_inequalities(dim: usize, inequalities: &[QVec]) -> Cone {
    let mut lineality: Vec<ZVec> =
        (0..dim).map(|i| (0..dim).map(|j| if i == j { 1.into() } else { 0.into() }).collect()).collect();
    let mut rays: Vec<ZVec> = Vec::new();
    let mut constraints: Vec<ZVec> = Vec::new();

    for a in inequalities {
        let a = primitive(a);
        if a.iter().all(Zero::is_zero) {
            continue;
        }
        if let Some(pos) = lineality.iter().position(|l| !zdot(&a, l).is_zero()) {
            // The new half-space cuts the lineality space.
            let mut l0 = lineality.swap_remove(pos);
            if zdot(&a, &l0).is_negative() {
                l0 = l0.iter().map(|x| -x).collect();
            }
            let a_l0 = zdot(&a, &l0);
            let project = |v: &ZVec| -> ZVec {
                let av = zdot(&a, v);
                primitive_z(&v.iter().zip(&l0).map(|(x, y)| &a_l0 * x - &av * y).collect::<ZVec>())
            };
            lineality = lineality.iter().map(&project).collect();
            rays = rays.iter().map(&project).collect();
            rays.push(primitive_z(&l0));
            constraints.push(a);
        } else {
            let values: Vec<_> = rays.iter().map(|r| zdot(&a, r)).collect();
            let tight: Vec<Vec<bool>> =
                rays.iter().map(|r| constraints.iter().map(|c| zdot(c, r).is_zero()).collect()).collect();
            let mut next: Vec<ZVec> = Vec::new();
            for (r, v) in rays.iter().zip(&values) {
                if !v.is_negative() {
                    next.push(r.clone());
                }
            }
            for (i, vi) in values.iter().enumerate() {
                if !vi.is_positive() {
                    continue;
                }
                for (j, vj) in values.iter().enumerate() {
                    if !vj.is_negative() || !adjacent(&tight, i, j) {
                        continue;
                    }
                    let combo: ZVec = rays[j].iter().zip(&rays[i]).map(|(rn, rp)| vi * rn - vj * rp).collect();
                    next.push(primitive_z(&combo));
                }
            }
            constraints.push(a);
            next.sort();
            next.dedup();
            rays = next;
        }
    }

    let lin_q: Vec<QVec> = lineality.iter().map(|l| to_q(l)).collect();
    let lineality = Subspace::span(dim, &lin_q).expect("lengths match");
    canonical(dim, lineality, rays)
}

impl fmt::Debug for Cone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Cone")
            .field("lineality", &self.lineality)
            .field("rays", &self.rays.iter().map(|r| to_q(r)).map(|r| crate::arith::fmt_qvec(&r)).collect::<Vec<_>>())
            .finish()
    }
}

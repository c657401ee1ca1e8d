use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use super::table::{compatible, match_spherical_root};
use crate::arith::{fmt_qvec, is_zero, rat, to_q, QVec, Rat, ZVec};
use crate::error::{Error, Result};
use crate::integer_geometry::{is_primitive_in, rank, Cone, Functional, Sublattice};
use crate::root_datum::RootDatum;

/// An element of `𝒟ᵃ`: a label with its functional on `ℳ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbstractColor {
    pub label: String,
    /// Values of `ρ(D)` on the Hermite basis of `ℳ`.
    pub rho: Functional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ColorType {
    #[serde(rename = "a")]
    A,
    #[serde(rename = "2a")]
    TwoA,
    #[serde(rename = "b")]
    B,
}

impl fmt::Display for ColorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ColorType::A => "a",
            ColorType::TwoA => "2a",
            ColorType::B => "b",
        })
    }
}

/// A color of `G/H` as recovered from the datum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Color {
    pub label: String,
    pub ctype: ColorType,
    pub rho: Functional,
    /// `ς(D)`: simple roots moving `D`.
    pub moved: BTreeSet<usize>,
}

/// The axiom or structural condition a violation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axiom {
    Independence,
    Primitivity,
    SphericalRoot,
    Integrality,
    A1,
    A2,
    A3,
    Sigma1,
    Sigma2,
    S,
}

impl Axiom {
    pub fn tag(self) -> &'static str {
        match self {
            Axiom::Independence => "independence",
            Axiom::Primitivity => "primitivity",
            Axiom::SphericalRoot => "spherical-root",
            Axiom::Integrality => "integrality",
            Axiom::A1 => "A1",
            Axiom::A2 => "A2",
            Axiom::A3 => "A3",
            Axiom::Sigma1 => "Sigma1",
            Axiom::Sigma2 => "Sigma2",
            Axiom::S => "S",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub axiom: Axiom,
    pub message: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}) {}", self.axiom.tag(), self.message)
    }
}

/// A quadruple `(ℳ, Σ, Sᵖ, 𝒟ᵃ)` for a fixed root datum.
///
/// Construction checks structure only; the axioms are checked by
/// [`validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LunaDatum {
    group: Arc<RootDatum>,
    m: Sublattice,
    /// Sorted.
    sigma: Vec<ZVec>,
    sp: BTreeSet<usize>,
    da: Vec<AbstractColor>,
}

impl LunaDatum {
    pub fn new(
        group: Arc<RootDatum>,
        m: Sublattice,
        mut sigma: Vec<ZVec>,
        sp: BTreeSet<usize>,
        da: Vec<AbstractColor>,
    ) -> Result<LunaDatum> {
        if m.ambient_rank() != group.rank() {
            return Err(Error::DimensionMismatch { expected: group.rank(), found: m.ambient_rank() });
        }
        for s in &sigma {
            if s.len() != group.rank() {
                return Err(Error::DimensionMismatch { expected: group.rank(), found: s.len() });
            }
            if !m.contains(&to_q(s)) {
                return Err(Error::Malformed(format!("spherical root {} is not in M", fmt_qvec(&to_q(s)))));
            }
        }
        if let Some(&i) = sp.iter().find(|&&i| i >= group.num_simple_roots()) {
            return Err(Error::RootIndex(i));
        }
        let mut labels = BTreeSet::new();
        for d in &da {
            if d.rho.0.len() != m.rank() {
                return Err(Error::Malformed(format!(
                    "rho of `{}` has {} values but M has rank {}",
                    d.label,
                    d.rho.0.len(),
                    m.rank()
                )));
            }
            if !labels.insert(d.label.clone()) {
                return Err(Error::Malformed(format!("duplicate color label `{}`", d.label)));
            }
        }
        sigma.sort();
        sigma.dedup();
        Ok(LunaDatum { group, m, sigma, sp, da })
    }

    pub fn group(&self) -> &Arc<RootDatum> {
        &self.group
    }

    pub fn lattice(&self) -> &Sublattice {
        &self.m
    }

    pub fn sigma(&self) -> &[ZVec] {
        &self.sigma
    }

    pub fn sigma_q(&self) -> Vec<QVec> {
        self.sigma.iter().map(|s| to_q(s)).collect()
    }

    pub fn sp(&self) -> &BTreeSet<usize> {
        &self.sp
    }

    pub fn da(&self) -> &[AbstractColor] {
        &self.da
    }

    pub fn rank(&self) -> usize {
        self.m.rank()
    }

    /// `α̌ᵢ|ℳ`.
    pub fn coroot_on_m(&self, i: usize) -> Functional {
        self.m.restrict_covector(self.group.coroot(i))
    }

    /// `⟨f, x⟩` for `f` on `ℳ` and `x ∈ ℳ_ℚ`.
    pub fn pair(&self, f: &Functional, x: &[Rat]) -> Result<Rat> {
        self.m.eval(f, x)
    }

    pub fn contains_sigma(&self, x: &[Rat]) -> bool {
        self.sigma.iter().any(|s| to_q(s) == x)
    }

    /// Simple roots `α` with `α ∈ Σ`.
    pub fn sigma_a(&self) -> BTreeSet<usize> {
        (0..self.group.num_simple_roots()).filter(|&i| self.contains_sigma(&self.group.simple_root(i))).collect()
    }

    /// Simple roots `α` with `2α ∈ Σ`.
    pub fn sigma_2a(&self) -> BTreeSet<usize> {
        (0..self.group.num_simple_roots())
            .filter(|&i| {
                let two: QVec = self.group.simple_root(i).iter().map(|x| x * rat(2)).collect();
                self.contains_sigma(&two)
            })
            .collect()
    }

    /// `cone(Σ)` in the ambient `ℚⁿ`.
    pub fn sigma_cone(&self) -> Cone {
        Cone::generated_by(self.group.rank(), &self.sigma_q()).expect("lengths match")
    }

    pub fn color_label_index(&self, label: &str) -> Option<usize> {
        self.da.iter().position(|d| d.label == label)
    }

    /// Returns the datum with `𝒟ᵃ` sorted by `(ρ, label)`.
    pub fn canonical(&self) -> LunaDatum {
        let mut out = self.clone();
        out.da.sort_by(|a, b| (&a.rho, &a.label).cmp(&(&b.rho, &b.label)));
        out
    }
}

fn violation(axiom: Axiom, message: impl Into<String>) -> Violation {
    Violation { axiom, message: message.into() }
}

/// Checks every axiom; an empty list means the datum is valid.
pub fn validate(s: &LunaDatum) -> Vec<Violation> {
    let g = &s.group;
    let sigma = s.sigma_q();
    let mut out = Vec::new();
    let name = |i: usize| g.root_name(i);

    if rank(&sigma, g.rank()) != sigma.len() {
        out.push(violation(Axiom::Independence, "spherical roots are linearly dependent"));
    }
    for gamma in &sigma {
        if !is_primitive_in(&s.m, gamma) {
            out.push(violation(Axiom::Primitivity, format!("{} is not primitive in M", fmt_qvec(gamma))));
        }
        if match_spherical_root(g, gamma).is_none() {
            out.push(violation(
                Axiom::SphericalRoot,
                format!("{} is not a spherical root of the group", fmt_qvec(gamma)),
            ));
        }
    }
    for d in &s.da {
        if !d.rho.is_integral() {
            out.push(violation(Axiom::Integrality, format!("rho({}) is not integral on M", d.label)));
        }
    }

    // (A1), (A2), (A3).
    let one = Rat::one();
    let mut covered = vec![false; s.da.len()];
    for gamma in &sigma {
        let values: Vec<Rat> = s.da.iter().map(|d| s.pair(&d.rho, gamma).expect("γ ∈ ℳ")).collect();
        for (d, v) in s.da.iter().zip(&values) {
            if v > &one {
                out.push(violation(
                    Axiom::A1,
                    format!("<rho({}), {}> = {} > 1", d.label, fmt_qvec(gamma), crate::arith::fmt_rat(v)),
                ));
            }
        }
        let tight: Vec<usize> = (0..s.da.len()).filter(|&k| values[k] == one).collect();
        match g.simple_root_index(gamma) {
            Some(alpha) => {
                if tight.len() != 2 {
                    out.push(violation(
                        Axiom::A1,
                        format!("{} needs exactly two colors with value 1, found {}", name(alpha), tight.len()),
                    ));
                } else {
                    let sum = s.da[tight[0]].rho.add(&s.da[tight[1]].rho);
                    if sum != s.coroot_on_m(alpha) {
                        out.push(violation(
                            Axiom::A2,
                            format!(
                                "rho({}) + rho({}) differs from the coroot of {} on M",
                                s.da[tight[0]].label,
                                s.da[tight[1]].label,
                                name(alpha)
                            ),
                        ));
                    }
                }
                for k in tight {
                    covered[k] = true;
                }
            }
            None => {
                for k in tight {
                    out.push(violation(
                        Axiom::A1,
                        format!("<rho({}), {}> = 1 but it is not a simple root", s.da[k].label, fmt_qvec(gamma)),
                    ));
                }
            }
        }
    }
    for (d, c) in s.da.iter().zip(&covered) {
        if !c {
            out.push(violation(Axiom::A3, format!("{} is not attached to any simple spherical root", d.label)));
        }
    }

    // (Σ1).
    for alpha in s.sigma_2a() {
        let cor = s.coroot_on_m(alpha);
        if cor.0.iter().any(|x| !(x / rat(2)).is_integer()) {
            out.push(violation(Axiom::Sigma1, format!("coroot of {} is not even on M", name(alpha))));
        }
        let two_alpha: QVec = g.simple_root(alpha).iter().map(|x| x * rat(2)).collect();
        for gamma in sigma.iter().filter(|x| **x != two_alpha) {
            if g.pairing(alpha, gamma).expect("length").is_positive() {
                out.push(violation(
                    Axiom::Sigma1,
                    format!("coroot of {} is positive on {}", name(alpha), fmt_qvec(gamma)),
                ));
            }
        }
    }

    // (Σ2).
    let n = g.num_simple_roots();
    for a in 0..n {
        for b in a + 1..n {
            if !(g.orthogonal(a, b) && g.orthogonal(b, a)) {
                continue;
            }
            let sum = crate::arith::add(&g.simple_root(a), &g.simple_root(b));
            let half: QVec = sum.iter().map(|x| x / rat(2)).collect();
            if (s.contains_sigma(&sum) || s.contains_sigma(&half)) && s.coroot_on_m(a) != s.coroot_on_m(b) {
                out.push(violation(Axiom::Sigma2, format!("coroots of {} and {} differ on M", name(a), name(b))));
            }
        }
    }

    // (S).
    for &alpha in &s.sp {
        if !is_zero(&s.coroot_on_m(alpha).0) {
            out.push(violation(Axiom::S, format!("{} is in Sp but its coroot is nonzero on M", name(alpha))));
        }
    }
    for gamma in &sigma {
        if let Ok(false) = compatible(g, &s.sp, gamma) {
            out.push(violation(Axiom::S, format!("(Sp, {}) is not compatible", fmt_qvec(gamma))));
        }
    }
    out.sort();
    out
}

pub(crate) fn require_valid(s: &LunaDatum) -> Result<()> {
    let v = validate(s);
    if v.is_empty() {
        Ok(())
    } else {
        Err(Error::InvalidDatum(v))
    }
}

fn unique_label(base: String, taken: &BTreeSet<String>) -> String {
    let mut label = base;
    while taken.contains(&label) {
        label.push('\'');
    }
    label
}

/// Full color set without the validity precondition. Used internally on
/// derived data, where validity is checked separately.
pub(crate) fn colors_of(s: &LunaDatum) -> Vec<Color> {
    let g = &s.group;
    let sigma_a = s.sigma_a();
    let sigma_2a = s.sigma_2a();
    let mut taken: BTreeSet<String> = s.da.iter().map(|d| d.label.clone()).collect();
    let mut colors = Vec::new();

    for d in &s.da {
        let moved =
            sigma_a.iter().copied().filter(|&a| s.pair(&d.rho, &g.simple_root(a)).is_ok_and(|v| v.is_one())).collect();
        colors.push(Color { label: d.label.clone(), ctype: ColorType::A, rho: d.rho.clone(), moved });
    }
    for &a in &sigma_2a {
        let label = unique_label(format!("D_{}", g.root_name(a)), &taken);
        taken.insert(label.clone());
        let rho = s.coroot_on_m(a).scaled(&Rat::new(1.into(), 2.into()));
        colors.push(Color { label, ctype: ColorType::TwoA, rho, moved: [a].into() });
    }

    let b_roots: Vec<usize> = (0..g.num_simple_roots())
        .filter(|a| !s.sp.contains(a) && !sigma_a.contains(a) && !sigma_2a.contains(a))
        .collect();
    // Orthogonal pairs whose sum or half-sum is a spherical root share one color.
    let mut partner: BTreeMap<usize, usize> = BTreeMap::new();
    for (k, &a) in b_roots.iter().enumerate() {
        for &b in &b_roots[k + 1..] {
            if !(g.orthogonal(a, b) && g.orthogonal(b, a)) || partner.contains_key(&a) || partner.contains_key(&b) {
                continue;
            }
            let sum = crate::arith::add(&g.simple_root(a), &g.simple_root(b));
            let half: QVec = sum.iter().map(|x| x / rat(2)).collect();
            if s.contains_sigma(&sum) || s.contains_sigma(&half) {
                partner.insert(a, b);
                partner.insert(b, a);
            }
        }
    }
    for &a in &b_roots {
        let moved: BTreeSet<usize> = match partner.get(&a) {
            Some(&b) if b < a => continue,
            Some(&b) => [a, b].into(),
            None => [a].into(),
        };
        let names: Vec<String> = moved.iter().map(|&i| g.root_name(i)).collect();
        let label = unique_label(format!("D_{}", names.join("_")), &taken);
        taken.insert(label.clone());
        colors.push(Color { label, ctype: ColorType::B, rho: s.coroot_on_m(a), moved });
    }

    colors.sort_by(|x, y| (x.ctype, &x.moved, &x.rho, &x.label).cmp(&(y.ctype, &y.moved, &y.rho, &y.label)));
    colors
}

/// The full color set `𝒟 = 𝒟ᵃ ∪ 𝒟²ᵃ ∪ 𝒟ᵇ`, sorted by
/// `(type, ς, ρ, label)`.
///
/// Type b: one color per simple root outside `Sᵖ`, `Σ ∩ S` and `½Σ ∩ S`,
/// with `ρ = α̌|ℳ`. Two such roots `α ⊥ β` share a color when `α + β` or
/// `½(α + β)` lies in `Σ`.
pub fn full_colors(s: &LunaDatum) -> Result<Vec<Color>> {
    require_valid(s)?;
    Ok(colors_of(s))
}

/// `𝒱 = {v ∈ 𝒩_ℚ : ⟨v, σ⟩ ≤ 0 for σ ∈ Σ}`, in coordinates dual to the
/// Hermite basis of `ℳ`.
pub fn valuation_cone(s: &LunaDatum) -> Cone {
    let ineqs: Vec<QVec> =
        s.sigma_q().iter().map(|g| s.m.coords(g).expect("Σ ⊆ ℳ").iter().map(|x| -x).collect()).collect();
    Cone::from_inequalities(s.m.rank(), &ineqs).expect("lengths match")
}

/// Equality of data: same `ℳ`, `Σ`, `Sᵖ` and a `ρ`-preserving bijection of
/// `𝒟ᵃ`.
pub fn datum_equal(a: &LunaDatum, b: &LunaDatum) -> bool {
    if a.group != b.group || a.m != b.m || a.sigma != b.sigma || a.sp != b.sp {
        return false;
    }
    let mut ra: Vec<&Functional> = a.da.iter().map(|d| &d.rho).collect();
    let mut rb: Vec<&Functional> = b.da.iter().map(|d| &d.rho).collect();
    ra.sort();
    rb.sort();
    ra == rb
}

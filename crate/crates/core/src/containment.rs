//! Overgroups of a spherical subgroup on the combinatorial side: distinguished
//! roots, normalizers, colored subspaces and their quotients, distinguished
//! pairs and subdata, and the identity component.

use std::cell::OnceCell;
use std::collections::BTreeSet;

use crate::arith::{rat, ratio, to_q, QVec, Rat, ZVec};
use crate::error::{Error, Result};
use crate::integer_geometry::{Cone, Functional, LatticeIndex, Sublattice, Subspace};
use crate::luna::{
    colors_of, compatible, datum_equal, require_valid, validate, valuation_cone, AbstractColor, Color, LunaDatum,
    Violation,
};

/// A pair `(𝒩¹_ℚ, 𝒟¹)`; `n1` lives in coordinates dual to the Hermite
/// basis of `ℳ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ColoredSubspace {
    pub n1: Subspace,
    pub d1: BTreeSet<String>,
}

/// A pair `(ℳ̃, 𝒟¹)` with `ℳ̃ ⊆ ℳ`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DistinguishedPair {
    pub mt: Sublattice,
    pub d1: BTreeSet<String>,
}

/// The datum attached to a distinguished pair. Axiom failures of the
/// derived quadruple are recorded, not raised.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subdatum {
    pub datum: LunaDatum,
    pub witness: DistinguishedPair,
    pub violations: Vec<Violation>,
}

/// Everything computed while testing a pair for distinguishedness.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairCheck {
    pub colored: bool,
    /// Primitive generators in `ℳ̃` of `cone(Σ) ∩ ℳ̃_ℚ`.
    pub sigma_tilde: Vec<ZVec>,
    /// Spherical roots of the quotient by `(ℳ̃^⊥, 𝒟¹)`; empty if not colored.
    pub sigma_0: Vec<ZVec>,
    pub sigma_0_plus: Vec<ZVec>,
    /// Elements `γ ∈ Σ̃ ∖ Σ₀` whose half is not admissible.
    pub offending: Vec<ZVec>,
    pub distinguished: bool,
}

/// A valid datum with its full color set.
struct Ctx<'a> {
    s: &'a LunaDatum,
    colors: Vec<Color>,
    /// Inequalities of the valuation cone and of `cone(Σ)`.
    valuation_dual: OnceCell<Vec<QVec>>,
    sigma_dual: OnceCell<Vec<QVec>>,
}

impl<'a> Ctx<'a> {
    fn new(s: &'a LunaDatum) -> Result<Ctx<'a>> {
        require_valid(s)?;
        Ok(Ctx::unchecked(s))
    }

    fn unchecked(s: &'a LunaDatum) -> Ctx<'a> {
        Ctx { s, colors: colors_of(s), valuation_dual: OnceCell::new(), sigma_dual: OnceCell::new() }
    }

    /// `𝒱 ∩ w`.
    fn valuation_section(&self, w: &Subspace) -> Result<Cone> {
        section(self.valuation_dual.get_or_init(|| valuation_cone(self.s).dual().generators()), w)
    }

    /// `cone(Σ) ∩ w`.
    fn sigma_section(&self, w: &Subspace) -> Result<Cone> {
        section(self.sigma_dual.get_or_init(|| self.s.sigma_cone().dual().generators()), w)
    }

    fn resolve(&self, d1: &BTreeSet<String>) -> Result<Vec<&Color>> {
        d1.iter()
            .map(|l| self.colors.iter().find(|c| &c.label == l).ok_or_else(|| Error::UnknownColor(l.clone())))
            .collect()
    }

    /// `𝒟(α)`.
    fn moved_by(&self, alpha: usize) -> impl Iterator<Item = &Color> {
        self.colors.iter().filter(move |c| c.moved.contains(&alpha))
    }

    /// `{α ∈ S : 𝒟(α) ⊆ 𝒟¹}`.
    fn sp_for(&self, d1: &BTreeSet<String>) -> BTreeSet<usize> {
        (0..self.s.group().num_simple_roots()).filter(|&a| self.moved_by(a).all(|c| d1.contains(&c.label))).collect()
    }

    /// `{D ∈ 𝒟ᵃ : ς(D) ∩ sigma ≠ ∅}` with `ρ` moved to `target`.
    fn da_for(&self, sigma: &[ZVec], target: &Sublattice) -> Result<Vec<AbstractColor>> {
        let g = self.s.group();
        let mut out = Vec::new();
        for d in self.s.da() {
            let color = self.colors.iter().find(|c| c.label == d.label).expect("type-a color");
            let hit = color.moved.iter().any(|&a| sigma.iter().any(|x| to_q(x) == g.simple_root(a)));
            if hit {
                let rho = self.s.lattice().transport(&d.rho, target)?;
                out.push(AbstractColor { label: d.label.clone(), rho });
            }
        }
        Ok(out)
    }

    fn is_colored(&self, n1: &Subspace, d1: &[&Color]) -> Result<bool> {
        let m = self.s.rank();
        if n1.ambient_dim() != m {
            return Err(Error::DimensionMismatch { expected: m, found: n1.ambient_dim() });
        }
        if d1.iter().any(|c| !n1.contains(c.rho.values())) {
            return Ok(false);
        }
        let mut gens = self.valuation_section(n1)?.generators();
        gens.extend(d1.iter().map(|c| c.rho.0.clone()));
        Cone::generated_by(m, &gens)?.equals_subspace(n1)
    }

    fn quotient(&self, c: &ColoredSubspace) -> Result<LunaDatum> {
        let s = self.s;
        let m0 = perp_lattice(s, &c.n1);
        let sigma_0 = primitive_generators(&self.sigma_section(&m0.span())?, &m0)?;
        let sp = self.sp_for(&c.d1);
        let da = self.da_for(&sigma_0, &m0)?;
        LunaDatum::new(s.group().clone(), m0, sigma_0, sp, da)
    }

    fn distinguished_roots(&self) -> Vec<ZVec> {
        let s = self.s;
        let g = s.group();
        let half = ratio(1, 2);
        s.sigma()
            .iter()
            .filter(|gamma| {
                let gq = to_q(gamma);
                match g.simple_root_index(&gq) {
                    Some(a) => {
                        let target = s.coroot_on_m(a).scaled(&half);
                        let mut moved = self.moved_by(a).peekable();
                        moved.peek().is_some() && moved.all(|c| c.rho == target)
                    }
                    None => {
                        let double: QVec = gq.iter().map(|x| x * rat(2)).collect();
                        g.in_root_lattice(&gq) && compatible(g, s.sp(), &double).unwrap_or(false)
                    }
                }
            })
            .cloned()
            .collect()
    }

    fn check_pair(&self, mt: &Sublattice, d1: &BTreeSet<String>) -> Result<PairCheck> {
        let s = self.s;
        if !s.lattice().contains_lattice(mt) {
            return Err(Error::NotSublattice);
        }
        let d1_colors = self.resolve(d1)?;
        let n1 = annihilator_of(s, mt);
        let sigma_tilde = primitive_generators(&self.sigma_section(&mt.span())?, mt)?;
        let colored = self.is_colored(&n1, &d1_colors)?;
        let mut out = PairCheck {
            colored,
            sigma_tilde,
            sigma_0: Vec::new(),
            sigma_0_plus: Vec::new(),
            offending: Vec::new(),
            distinguished: false,
        };
        if !colored {
            return Ok(out);
        }
        let s0 = self.quotient(&ColoredSubspace { n1, d1: d1.clone() })?;
        let plus0 = Ctx::unchecked(&s0).distinguished_roots();
        let g = s.group();
        for gamma in &out.sigma_tilde {
            if s0.sigma().contains(gamma) {
                continue;
            }
            let half: QVec = to_q(gamma).iter().map(|x| x / rat(2)).collect();
            let admissible = match crate::arith::to_z(&half) {
                Some(h) => plus0.contains(&h) || (s0.sigma().contains(&h) && !g.in_root_lattice(&half)),
                None => false,
            };
            if !admissible {
                out.offending.push(gamma.clone());
            }
        }
        out.distinguished = out.offending.is_empty();
        out.sigma_0 = s0.sigma().to_vec();
        out.sigma_0_plus = plus0;
        Ok(out)
    }

    fn subdatum(&self, pair: &DistinguishedPair) -> Result<Subdatum> {
        let check = self.check_pair(&pair.mt, &pair.d1)?;
        if !check.distinguished {
            return Err(Error::NotDistinguished);
        }
        let sp = self.sp_for(&pair.d1);
        let da = self.da_for(&check.sigma_tilde, &pair.mt)?;
        let datum = LunaDatum::new(self.s.group().clone(), pair.mt.clone(), check.sigma_tilde, sp, da)?;
        let violations = validate(&datum);
        Ok(Subdatum { datum, witness: pair.clone(), violations })
    }

    /// `{x ∈ Mp_ℚ ∩ 𝔛(B) : ⟨ρ(𝒟), x⟩ ⊆ ℤ}`.
    fn d_closure(&self, mp: &Sublattice) -> Result<Sublattice> {
        let s = self.s;
        let sat = Sublattice::full(s.group().rank()).intersect_subspace(&mp.span());
        let forms =
            self.colors.iter().map(|c| s.lattice().transport(&c.rho, &sat)).collect::<Result<Vec<Functional>>>()?;
        Ok(sat.integral_points(&forms))
    }
}

/// The cone cut out by `inequalities` inside `w`.
fn section(inequalities: &[QVec], w: &Subspace) -> Result<Cone> {
    let mut all = inequalities.to_vec();
    for a in w.annihilator().basis() {
        all.push(a.clone());
        all.push(a.iter().map(|x| -x).collect());
    }
    Cone::from_inequalities(w.ambient_dim(), &all)
}

/// `N1^⊥ ∩ ℳ`.
fn perp_lattice(s: &LunaDatum, n1: &Subspace) -> Sublattice {
    let m = s.lattice();
    let coords = Sublattice::full(m.rank()).intersect_subspace(&n1.annihilator());
    let points: Vec<ZVec> = coords.basis().iter().map(|c| m.point(c)).collect();
    Sublattice::from_generators(m.ambient_rank(), &points).expect("ambient length")
}

/// `Mt^⊥ ⊆ 𝒩_ℚ`.
pub fn annihilator_of(s: &LunaDatum, mt: &Sublattice) -> Subspace {
    let m = s.lattice();
    let coords: Vec<QVec> = mt.basis_q().iter().filter_map(|b| m.coords(b)).collect();
    Subspace::span(m.rank(), &coords).expect("lengths match").annihilator()
}

/// Primitive generators in `lattice` of the extremal rays of a pointed cone.
fn primitive_generators(cone: &Cone, lattice: &Sublattice) -> Result<Vec<ZVec>> {
    if !cone.is_pointed() {
        return Err(Error::Internal("cone of spherical roots is not pointed".into()));
    }
    let mut out =
        cone.extremal_rays().iter().map(|r| lattice.primitive_ray_generator(&to_q(r))).collect::<Result<Vec<_>>>()?;
    out.sort();
    Ok(out)
}

/// `Σ⁺`: `γ ∈ S` whose colors are all undetermined, or `γ ∈ 𝔛(R) ∖ S`
/// with `2γ` a spherical root compatible with `Sᵖ`.
pub fn distinguished_roots(s: &LunaDatum) -> Result<Vec<ZVec>> {
    Ok(Ctx::new(s)?.distinguished_roots())
}

/// `Σ⁺` by the three-condition characterization: `γ ∈ 𝔛(R)`, the quadruple
/// `(ℤ2γ, {2γ}, Sᵖ, ∅)` is a Luna datum, and for `γ ∈ S` the two colors
/// of `𝒟(γ)` have equal `ρ`.
pub fn distinguished_roots_alternative(s: &LunaDatum) -> Result<Vec<ZVec>> {
    let ctx = Ctx::new(s)?;
    let g = s.group();
    let mut out = Vec::new();
    for gamma in s.sigma() {
        let gq = to_q(gamma);
        if !g.in_root_lattice(&gq) {
            continue;
        }
        let double: ZVec = gamma.iter().map(|x| x * 2).collect();
        let m = Sublattice::from_generators(g.rank(), std::slice::from_ref(&double))?;
        let rank_one = LunaDatum::new(g.clone(), m, vec![double], s.sp().clone(), Vec::new())?;
        if !validate(&rank_one).is_empty() {
            continue;
        }
        if let Some(a) = g.simple_root_index(&gq) {
            let rhos: Vec<&Functional> = ctx.moved_by(a).map(|c| &c.rho).collect();
            if rhos.len() != 2 || rhos[0] != rhos[1] {
                continue;
            }
        }
        out.push(gamma.clone());
    }
    Ok(out)
}

/// Roots on which the two characterizations of `Σ⁺` disagree.
pub fn distinguished_roots_discrepancies(s: &LunaDatum) -> Result<Vec<ZVec>> {
    let a: BTreeSet<ZVec> = distinguished_roots(s)?.into_iter().collect();
    let b: BTreeSet<ZVec> = distinguished_roots_alternative(s)?.into_iter().collect();
    Ok(a.symmetric_difference(&b).cloned().collect())
}

/// The datum of the normalizer `N_G(H)`.
pub fn normalizer_datum(s: &LunaDatum) -> Result<LunaDatum> {
    let ctx = Ctx::new(s)?;
    let g = s.group();
    let plus = ctx.distinguished_roots();
    let sigma_n: Vec<ZVec> = s
        .sigma()
        .iter()
        .map(|gamma| {
            if plus.contains(gamma) || !g.in_root_lattice(&to_q(gamma)) {
                gamma.iter().map(|x| x * 2).collect()
            } else {
                gamma.clone()
            }
        })
        .collect();
    let mn = Sublattice::from_generators(g.rank(), &sigma_n)?;
    let da = ctx.da_for(&sigma_n, &mn)?;
    LunaDatum::new(g.clone(), mn, sigma_n, s.sp().clone(), da)
}

pub fn is_colored_subspace(s: &LunaDatum, n1: &Subspace, d1: &BTreeSet<String>) -> Result<bool> {
    let ctx = Ctx::new(s)?;
    let colors = ctx.resolve(d1)?;
    ctx.is_colored(n1, &colors)
}

/// The datum of the overgroup `H₀` attached to a colored subspace.
pub fn quotient_datum(s: &LunaDatum, c: &ColoredSubspace) -> Result<LunaDatum> {
    let ctx = Ctx::new(s)?;
    let colors = ctx.resolve(&c.d1)?;
    if !ctx.is_colored(&c.n1, &colors)? {
        return Err(Error::NotColored);
    }
    ctx.quotient(c)
}

pub fn check_pair(s: &LunaDatum, mt: &Sublattice, d1: &BTreeSet<String>) -> Result<PairCheck> {
    Ctx::new(s)?.check_pair(mt, d1)
}

pub fn is_distinguished_pair(s: &LunaDatum, mt: &Sublattice, d1: &BTreeSet<String>) -> Result<bool> {
    Ok(check_pair(s, mt, d1)?.distinguished)
}

pub fn subdatum(s: &LunaDatum, pair: &DistinguishedPair) -> Result<Subdatum> {
    Ctx::new(s)?.subdatum(pair)
}

/// Splits a distinguished pair into its colored subspace and the
/// finite-index part `ℳ̃ ⊆ ℳ₀`.
pub fn stein_decompose(s: &LunaDatum, pair: &DistinguishedPair) -> Result<(ColoredSubspace, Sublattice)> {
    let ctx = Ctx::new(s)?;
    if !ctx.check_pair(&pair.mt, &pair.d1)?.distinguished {
        return Err(Error::NotDistinguished);
    }
    let c = ColoredSubspace { n1: annihilator_of(s, &pair.mt), d1: pair.d1.clone() };
    Ok((c, pair.mt.clone()))
}

/// Subdata `(ℳ̃, ∅)` with `[ℳ : ℳ̃] ≤ bound`, sorted by (index, basis).
pub fn enumerate_finite_subdata(s: &LunaDatum, bound: u64) -> Result<Vec<Subdatum>> {
    if bound < 1 {
        return Err(Error::InvalidBound);
    }
    let ctx = Ctx::new(s)?;
    let mut out = Vec::new();
    for k in 1..=bound {
        for mt in s.lattice().sublattices_of_index(k) {
            let pair = DistinguishedPair { mt, d1: BTreeSet::new() };
            if ctx.check_pair(&pair.mt, &pair.d1)?.distinguished {
                out.push(ctx.subdatum(&pair)?);
            }
        }
    }
    Ok(out)
}

/// `ℳ' ↦ {x ∈ ℳ'_ℚ ∩ 𝔛(B) : ⟨ρ(𝒟), x⟩ ⊆ ℤ}`.
pub fn d_closure(s: &LunaDatum, mp: &Sublattice) -> Result<Sublattice> {
    if !s.lattice().contains_lattice(mp) {
        return Err(Error::NotSublattice);
    }
    Ctx::new(s)?.d_closure(mp)
}

pub fn is_d_saturated(s: &LunaDatum, mp: &Sublattice) -> Result<bool> {
    Ok(&d_closure(s, mp)? == mp)
}

/// `H` is connected iff `ℳ` is `𝒟`-saturated.
pub fn is_connected(s: &LunaDatum) -> Result<bool> {
    is_d_saturated(s, s.lattice())
}

/// The datum of the identity component `H°`.
pub fn identity_component_datum(s: &LunaDatum) -> Result<LunaDatum> {
    let ctx = Ctx::new(s)?;
    let g = s.group();
    let m0 = ctx.d_closure(s.lattice())?;
    let sigma0 = primitive_generators(&s.sigma_cone(), &m0)?;
    let mut da = Vec::new();
    for d in s.da() {
        let rho = s.lattice().transport(&d.rho, &m0)?;
        if !rho.is_integral() {
            return Err(Error::Internal(format!("rho({}) does not extend integrally", d.label)));
        }
        da.push(AbstractColor { label: d.label.clone(), rho });
    }
    let mut taken: BTreeSet<String> = da.iter().map(|d| d.label.clone()).collect();
    for a in s.sigma_2a() {
        let alpha = g.simple_root(a);
        if !sigma0.iter().any(|x| to_q(x) == alpha) {
            continue;
        }
        let rho = m0.restrict_covector(g.coroot(a)).scaled(&ratio(1, 2));
        for sign in ["+", "-"] {
            let mut label = format!("D_{}{}", g.root_name(a), sign);
            while taken.contains(&label) {
                label.push('\'');
            }
            taken.insert(label.clone());
            da.push(AbstractColor { label, rho: rho.clone() });
        }
    }
    LunaDatum::new(g.clone(), m0, sigma0, s.sp().clone(), da)
}

/// Finds `𝒟¹` such that `(St.ℳ, 𝒟¹)` is distinguished with subdatum `St`.
/// Subsets are tried by size, then by position in the color order.
pub fn is_subdatum(st: &LunaDatum, s: &LunaDatum) -> Result<Option<DistinguishedPair>> {
    if st.group() != s.group() {
        return Err(Error::GroupMismatch);
    }
    let ctx = Ctx::new(s)?;
    if !s.lattice().contains_lattice(st.lattice()) {
        return Ok(None);
    }
    for d1 in color_subsets(&ctx.colors) {
        let pair = DistinguishedPair { mt: st.lattice().clone(), d1 };
        if !ctx.check_pair(&pair.mt, &pair.d1)?.distinguished {
            continue;
        }
        if datum_equal(&ctx.subdatum(&pair)?.datum, st) {
            return Ok(Some(pair));
        }
    }
    Ok(None)
}

fn color_subsets(colors: &[Color]) -> Vec<BTreeSet<String>> {
    let n = colors.len();
    let mut masks: Vec<u64> = (0..1u64 << n).collect();
    masks.sort_by_key(|m| (m.count_ones(), *m));
    masks.into_iter().map(|m| (0..n).filter(|i| m >> i & 1 == 1).map(|i| colors[i].label.clone()).collect()).collect()
}

/// Colored subspaces spanned by a face of `𝒱` and a set of colors. Every
/// colored subspace arises this way when its cone `𝒱 ∩ 𝒩¹_ℚ` is a face.
pub fn colored_subspace_candidates(s: &LunaDatum) -> Result<Vec<ColoredSubspace>> {
    candidates(&Ctx::new(s)?)
}

fn candidates(ctx: &Ctx) -> Result<Vec<ColoredSubspace>> {
    let s = ctx.s;
    let m = s.rank();
    let sigma_coords: Vec<QVec> = s.sigma_q().iter().map(|x| s.lattice().coords(x).expect("Σ ⊆ ℳ")).collect();
    let mut out: Vec<ColoredSubspace> = Vec::new();
    for t in 0..1u64 << sigma_coords.len() {
        let tight: Vec<QVec> =
            (0..sigma_coords.len()).filter(|i| t >> i & 1 == 1).map(|i| sigma_coords[i].clone()).collect();
        let face_space = Subspace::span(m, &tight)?.annihilator();
        let face = ctx.valuation_section(&face_space)?.generators();
        for d1 in color_subsets(&ctx.colors) {
            let chosen = ctx.resolve(&d1)?;
            let mut gens = face.clone();
            gens.extend(chosen.iter().map(|c| c.rho.0.clone()));
            let n1 = Subspace::span(m, &gens)?;
            let c = ColoredSubspace { n1, d1 };
            if !out.contains(&c) && ctx.is_colored(&c.n1, &chosen)? {
                out.push(c);
            }
        }
    }
    Ok(out)
}

/// Distinguished pairs `(ℳ̃, 𝒟¹)` whose colored subspace is among the
/// candidates and with `[ℳ₀ : ℳ̃] ≤ max_index`.
pub fn distinguished_pairs(s: &LunaDatum, max_index: u64) -> Result<Vec<DistinguishedPair>> {
    let ctx = Ctx::new(s)?;
    let mut out = Vec::new();
    for c in candidates(&ctx)? {
        let m0 = perp_lattice(s, &c.n1);
        for k in 1..=max_index {
            for mt in m0.sublattices_of_index(k) {
                if ctx.check_pair(&mt, &c.d1)?.distinguished {
                    out.push(DistinguishedPair { mt, d1: c.d1.clone() });
                }
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// `[saturation of ℳ̃ in ℳ : ℳ̃]`.
pub fn finite_part_index(s: &LunaDatum, mt: &Sublattice) -> Result<Rat> {
    let sat = mt.saturation_in(s.lattice())?;
    match sat.index_of(mt)? {
        LatticeIndex::Finite(k) => Ok(Rat::from_integer(k)),
        LatticeIndex::Infinite => Err(Error::Internal("saturation has larger rank".into())),
    }
}

/// `(Σ°)ᵃ = Σᵃ ∪ (½Σ²ᵃ ∩ ℳ°)`, both sides as sets of simple-root indices.
pub fn identity_component_a_roots(s: &LunaDatum, s0: &LunaDatum) -> (BTreeSet<usize>, BTreeSet<usize>) {
    let lhs = s0.sigma_a();
    let mut rhs = s.sigma_a();
    for a in s.sigma_2a() {
        if s0.lattice().contains(&s.group().simple_root(a)) {
            rhs.insert(a);
        }
    }
    (lhs, rhs)
}

/// `cone(Σ̃) = cone(Σ) ∩ ℳ̃_ℚ`.
pub fn cone_identity_holds(s: &LunaDatum, sub: &LunaDatum) -> Result<bool> {
    Ok(sub.sigma_cone() == s.sigma_cone().intersect_subspace(&sub.lattice().span())?)
}

/// For a finite-index subdatum: every `α ∈ Σᵃ ∖ Σ̃ᵃ` has `2α ∈ Σ̃` and both
/// colors of `𝒟(α)` equal to `½α̌|ℳ`.
pub fn finite_quotient_cross_check(s: &LunaDatum, sub: &LunaDatum) -> Result<bool> {
    let ctx = Ctx::new(s)?;
    let g = s.group();
    let kept = sub.sigma_a();
    for a in s.sigma_a().difference(&kept) {
        let double: QVec = g.simple_root(*a).iter().map(|x| x * rat(2)).collect();
        if !sub.contains_sigma(&double) {
            return Ok(false);
        }
        let target = s.coroot_on_m(*a).scaled(&ratio(1, 2));
        if !ctx.moved_by(*a).all(|c| c.rho == target) {
            return Ok(false);
        }
    }
    Ok(true)
}

//! The ambient connected reductive group, encoded as a root datum.
//!
//! Coordinates are those of the character lattice `𝔛(B) ≅ ℤⁿ`. For a
//! simply connected factor the basis is the fundamental weights, so the
//! simple root `αⱼ` is column `j` of the Cartan matrix and `α̌ᵢ` is the unit
//! covector. For an adjoint factor the basis is the simple roots and `α̌ᵢ` is
//! row `i` of the Cartan matrix. Extra torus coordinates come last and are
//! killed by every coroot.

mod cartan;

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

pub use cartan::{cartan_matrix, classify_connected, DynkinType};

use crate::arith::{clear_denominators_by, int, lcm_all, rat, to_q, zdot, Int, QVec, Rat, ZVec};
use crate::error::{Error, Result};
use crate::integer_geometry::{rank, rref};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Isogeny {
    SimplyConnected,
    Adjoint,
}

/// One simple factor of a preset group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Factor {
    pub ty: DynkinType,
    pub rank: usize,
    pub isogeny: Isogeny,
}

/// A connected component of a (sub)diagram with all its Bourbaki orderings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiagramComponent {
    pub ty: DynkinType,
    /// `orderings[k][i]` is the simple-root index of Bourbaki node `i + 1`.
    pub orderings: Vec<Vec<usize>>,
}

impl DiagramComponent {
    pub fn rank(&self) -> usize {
        self.orderings[0].len()
    }

    pub fn bourbaki(&self) -> &[usize] {
        &self.orderings[0]
    }

    pub fn nodes(&self) -> BTreeSet<usize> {
        self.orderings[0].iter().copied().collect()
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.ty, self.rank())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynkinSubdiagram {
    pub nodes: BTreeSet<usize>,
    /// Sorted by smallest node.
    pub components: Vec<DiagramComponent>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootDatum {
    rank: usize,
    simple_roots: Vec<ZVec>,
    simple_coroots: Vec<ZVec>,
    cartan: Vec<Vec<i64>>,
    /// `den · A⁻¹` with `den` the least denominator making it integral.
    cartan_inverse: Vec<ZVec>,
    cartan_inverse_den: Int,
    diagram: Vec<DiagramComponent>,
    factors: Vec<Factor>,
    torus_rank: usize,
}

impl RootDatum {
    /// `G = G₁ × … × Gₖ × C` with each `Gᵢ` simply connected or adjoint and
    /// `C` a torus of rank `torus_rank`.
    pub fn build(factors: &[Factor], torus_rank: usize) -> Result<RootDatum> {
        let semisimple: usize = factors.iter().map(|f| f.rank).sum();
        let n = semisimple + torus_rank;
        let mut roots = Vec::new();
        let mut coroots = Vec::new();
        let mut offset = 0;
        for f in factors {
            let a = cartan_matrix(f.ty, f.rank)?;
            #[allow(clippy::needless_range_loop)]
            for j in 0..f.rank {
                let mut root = vec![int(0); n];
                let mut coroot = vec![int(0); n];
                for i in 0..f.rank {
                    match f.isogeny {
                        Isogeny::SimplyConnected => {
                            root[offset + i] = int(a[i][j]);
                            coroot[offset + i] = int(i64::from(i == j));
                        }
                        Isogeny::Adjoint => {
                            root[offset + i] = int(i64::from(i == j));
                            coroot[offset + i] = int(a[j][i]);
                        }
                    }
                }
                roots.push(root);
                coroots.push(coroot);
            }
            offset += f.rank;
        }
        let mut d = RootDatum::from_raw(n, roots, coroots)?;
        d.factors = factors.to_vec();
        d.torus_rank = torus_rank;
        Ok(d)
    }

    /// Named presets used by the bundled fixtures and the CLI.
    pub fn preset(name: &str) -> Result<RootDatum> {
        use DynkinType::*;
        use Isogeny::*;
        let f = |ty, rank, isogeny| Factor { ty, rank, isogeny };
        let factors = match name {
            "SL2" => vec![f(A, 1, SimplyConnected)],
            "PGL2" => vec![f(A, 1, Adjoint)],
            "SL3" => vec![f(A, 2, SimplyConnected)],
            "Spin5" => vec![f(B, 2, SimplyConnected)],
            "Spin7" => vec![f(B, 3, SimplyConnected)],
            "G2" => vec![f(G, 2, SimplyConnected)],
            "SL2xSL2" => vec![f(A, 1, SimplyConnected), f(A, 1, SimplyConnected)],
            "PGL2xPGL2" => vec![f(A, 1, Adjoint), f(A, 1, Adjoint)],
            other => return Err(Error::UnknownType(other.to_string())),
        };
        RootDatum::build(&factors, 0)
    }

    /// Arbitrary root datum: `roots[j]` are the simple roots in `ℤⁿ` and
    /// `coroots[i]` the simple coroots as covectors.
    pub fn from_raw(rank: usize, roots: Vec<ZVec>, coroots: Vec<ZVec>) -> Result<RootDatum> {
        if roots.len() != coroots.len() {
            return Err(Error::DimensionMismatch { expected: roots.len(), found: coroots.len() });
        }
        for v in roots.iter().chain(&coroots) {
            if v.len() != rank {
                return Err(Error::DimensionMismatch { expected: rank, found: v.len() });
            }
        }
        let roots_q: Vec<QVec> = roots.iter().map(|r| to_q(r)).collect();
        if rank_of(&roots_q, rank) != roots.len() {
            return Err(Error::Malformed("simple roots are linearly dependent".into()));
        }
        let s = roots.len();
        let mut cartan = vec![vec![0i64; s]; s];
        for i in 0..s {
            for j in 0..s {
                let p: num_bigint::BigInt = coroots[i].iter().zip(&roots[j]).map(|(a, b)| a * b).sum();
                cartan[i][j] =
                    i64::try_from(p).map_err(|_| Error::Malformed("pairing does not fit a Cartan entry".into()))?;
            }
        }
        let mut d = RootDatum {
            rank,
            simple_roots: roots,
            simple_coroots: coroots,
            cartan_inverse: Vec::new(),
            cartan_inverse_den: Int::one(),
            cartan,
            diagram: Vec::new(),
            factors: Vec::new(),
            torus_rank: 0,
        };
        let all: BTreeSet<usize> = (0..s).collect();
        d.diagram = d.subdiagram(&all)?.components;
        let inv = inverse(&d.cartan).ok_or_else(|| Error::Malformed("Cartan matrix is singular".into()))?;
        d.cartan_inverse_den = lcm_all(inv.iter().flatten().map(|x| x.denom()));
        d.cartan_inverse = inv.iter().map(|r| clear_denominators_by(r, &d.cartan_inverse_den)).collect();
        Ok(d)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn num_simple_roots(&self) -> usize {
        self.simple_roots.len()
    }

    pub fn simple_roots(&self) -> &[ZVec] {
        &self.simple_roots
    }

    pub fn simple_root(&self, i: usize) -> QVec {
        to_q(&self.simple_roots[i])
    }

    pub fn simple_coroots(&self) -> &[ZVec] {
        &self.simple_coroots
    }

    pub fn coroot(&self, i: usize) -> &[num_bigint::BigInt] {
        &self.simple_coroots[i]
    }

    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn diagram(&self) -> &[DiagramComponent] {
        &self.diagram
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn torus_rank(&self) -> usize {
        self.torus_rank
    }

    /// `"a1" … "aN"`, numbered across all factors.
    pub fn root_name(&self, i: usize) -> String {
        format!("a{}", i + 1)
    }

    pub fn root_index(&self, name: &str) -> Option<usize> {
        let i: usize = name.strip_prefix('a')?.parse().ok()?;
        (1..=self.num_simple_roots()).contains(&i).then(|| i - 1)
    }

    pub fn pairing(&self, coroot: usize, chi: &[Rat]) -> Result<Rat> {
        if coroot >= self.num_simple_roots() {
            return Err(Error::RootIndex(coroot));
        }
        if chi.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: chi.len() });
        }
        Ok(self.simple_coroots[coroot]
            .iter()
            .zip(chi)
            .fold(Rat::zero(), |acc, (a, x)| acc + Rat::from_integer(a.clone()) * x))
    }

    /// `⟨α̌ᵢ, αⱼ⟩ = 0`.
    pub fn orthogonal(&self, i: usize, j: usize) -> bool {
        self.cartan[i][j] == 0
    }

    /// Coefficients of `gamma` in the simple roots.
    pub fn root_coefficients(&self, gamma: &[Rat]) -> Result<QVec> {
        if gamma.len() != self.rank {
            return Err(Error::DimensionMismatch { expected: self.rank, found: gamma.len() });
        }
        if self.simple_roots.is_empty() {
            return if gamma.iter().all(Zero::is_zero) { Ok(Vec::new()) } else { Err(Error::OutsideRootSpan) };
        }
        // ⟨α̌ᵢ, γ⟩ = Σⱼ cⱼ Aᵢⱼ, so c = A⁻¹ applied to the pairings. Work
        // with `l·γ` integral and divide at the end.
        let l = lcm_all(gamma.iter().map(|x| x.denom()));
        let scaled = clear_denominators_by(gamma, &l);
        let pairings: ZVec = self.simple_coroots.iter().map(|c| zdot(c, &scaled)).collect();
        let numers: ZVec = self.cartan_inverse.iter().map(|row| zdot(row, &pairings)).collect();
        let mut check = vec![Int::zero(); self.rank];
        for (n, root) in numers.iter().zip(&self.simple_roots) {
            for (o, x) in check.iter_mut().zip(root) {
                *o += n * x;
            }
        }
        if check.iter().zip(&scaled).any(|(c, x)| c != &(x * &self.cartan_inverse_den)) {
            return Err(Error::OutsideRootSpan);
        }
        let den = &l * &self.cartan_inverse_den;
        Ok(numers.into_iter().map(|n| Rat::new(n, den.clone())).collect())
    }

    /// `Σ cᵢ αᵢ`.
    pub fn from_root_coefficients(&self, coeffs: &[Rat]) -> QVec {
        let mut out = vec![Rat::zero(); self.rank];
        for (c, root) in coeffs.iter().zip(&self.simple_roots) {
            for (o, x) in out.iter_mut().zip(root) {
                *o += c * Rat::from_integer(x.clone());
            }
        }
        out
    }

    pub fn support(&self, gamma: &[Rat]) -> Result<BTreeSet<usize>> {
        let c = self.root_coefficients(gamma)?;
        Ok(c.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect())
    }

    /// Membership in the root lattice `𝔛(R)`.
    pub fn in_root_lattice(&self, gamma: &[Rat]) -> bool {
        self.root_coefficients(gamma).is_ok_and(|c| c.iter().all(Rat::is_integer))
    }

    /// Membership in the character lattice `𝔛(B) = ℤⁿ`.
    pub fn in_character_lattice(&self, x: &[Rat]) -> bool {
        x.len() == self.rank && x.iter().all(Rat::is_integer)
    }

    /// If `x` is `±` a simple root, its index.
    pub fn simple_root_index(&self, x: &[Rat]) -> Option<usize> {
        self.simple_roots.iter().position(|r| to_q(r) == x)
    }

    pub fn subdiagram(&self, subset: &BTreeSet<usize>) -> Result<DynkinSubdiagram> {
        if let Some(&bad) = subset.iter().find(|&&i| i >= self.num_simple_roots()) {
            return Err(Error::RootIndex(bad));
        }
        let mut remaining: Vec<usize> = subset.iter().copied().collect();
        let mut components = Vec::new();
        while let Some(&start) = remaining.first() {
            let mut comp = vec![start];
            let mut frontier = vec![start];
            while let Some(v) = frontier.pop() {
                for &w in &remaining {
                    if !comp.contains(&w) && self.cartan[v][w] != 0 {
                        comp.push(w);
                        frontier.push(w);
                    }
                }
            }
            comp.sort_unstable();
            remaining.retain(|x| !comp.contains(x));
            let local: Vec<Vec<i64>> =
                comp.iter().map(|&i| comp.iter().map(|&j| self.cartan[i][j]).collect()).collect();
            let (ty, orderings) = classify_connected(&local)
                .ok_or_else(|| Error::Internal(format!("nodes {comp:?} are not of finite type")))?;
            let orderings = orderings.into_iter().map(|o| o.into_iter().map(|k| comp[k]).collect()).collect();
            components.push(DiagramComponent { ty, orderings });
        }
        Ok(DynkinSubdiagram { nodes: subset.clone(), components })
    }
}

/// Inverse of an invertible integer matrix, by reducing `[A | I]`.
fn inverse(a: &[Vec<i64>]) -> Option<Vec<QVec>> {
    let n = a.len();
    let aug: Vec<QVec> = (0..n)
        .map(|i| {
            (0..2 * n)
                .map(|j| if j < n { Rat::from_integer(a[i][j].into()) } else { rat(i64::from(j - n == i)) })
                .collect()
        })
        .collect();
    let (red, pivots) = rref(&aug, 2 * n);
    (pivots == (0..n).collect::<Vec<_>>()).then(|| red.into_iter().map(|r| r[n..].to_vec()).collect())
}

fn rank_of(rows: &[QVec], width: usize) -> usize {
    rank(rows, width)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{qvec, ratio};

    fn set(xs: &[usize]) -> BTreeSet<usize> {
        xs.iter().copied().collect()
    }

    #[test]
    fn sl2_squared_simply_connected() {
        let d = RootDatum::preset("SL2xSL2").unwrap();
        assert_eq!(d.rank(), 2);
        assert_eq!(d.simple_root(0), qvec(&[2, 0]));
        assert_eq!(d.simple_root(1), qvec(&[0, 2]));
        let half_sum = vec![ratio(1, 2) * rat2(2), ratio(1, 2) * rat2(2)];
        assert!(d.in_character_lattice(&half_sum));
        assert!(!d.in_root_lattice(&half_sum));
    }

    fn rat2(n: i64) -> Rat {
        Rat::from_integer(n.into())
    }

    #[test]
    fn pgl2_squared_adjoint() {
        let d = RootDatum::preset("PGL2xPGL2").unwrap();
        assert_eq!(d.simple_root(0), qvec(&[1, 0]));
        assert_eq!(d.simple_root(1), qvec(&[0, 1]));
        assert!(!d.in_character_lattice(&[ratio(1, 2), ratio(1, 2)]));
    }

    #[test]
    fn g2_pairings() {
        let d = RootDatum::preset("G2").unwrap();
        assert_eq!(d.pairing(0, &d.simple_root(1)).unwrap(), rat2(-3));
        assert_eq!(d.pairing(1, &d.simple_root(0)).unwrap(), rat2(-1));
    }

    #[test]
    fn b3_pairings() {
        let d = RootDatum::preset("Spin7").unwrap();
        assert_eq!(d.pairing(2, &d.simple_root(1)).unwrap(), rat2(-2));
        let a2_plus_a3 = crate::arith::add(&d.simple_root(1), &d.simple_root(2));
        assert_eq!(d.pairing(0, &a2_plus_a3).unwrap(), rat2(-1));
        for i in 0..3 {
            assert_eq!(d.pairing(i, &d.simple_root(i)).unwrap(), rat2(2));
        }
        assert!(d.pairing(0, &qvec(&[1, 0])).is_err());
    }

    #[test]
    fn support_examples() {
        let d = RootDatum::preset("Spin7").unwrap();
        let g = d.from_root_coefficients(&qvec(&[0, 2, 2]));
        assert_eq!(d.support(&g).unwrap(), set(&[1, 2]));
        assert_eq!(d.support(&d.simple_root(0)).unwrap(), set(&[0]));
        assert!(d.in_root_lattice(&g));
        let t =
            RootDatum::build(&[Factor { ty: DynkinType::A, rank: 1, isogeny: Isogeny::SimplyConnected }], 1).unwrap();
        assert_eq!(t.support(&qvec(&[0, 1])), Err(Error::OutsideRootSpan));
        assert!(!t.in_root_lattice(&qvec(&[0, 1])));
    }

    #[test]
    fn subdiagram_examples() {
        let b3 = RootDatum::preset("Spin7").unwrap();
        let sd = b3.subdiagram(&set(&[1, 2])).unwrap();
        assert_eq!(sd.components.len(), 1);
        assert_eq!(sd.components[0].label(), "B2");
        assert_eq!(sd.components[0].bourbaki(), &[1, 2]);
        let sd = b3.subdiagram(&set(&[0, 2])).unwrap();
        assert_eq!(sd.components.iter().map(|c| c.label()).collect::<Vec<_>>(), ["A1", "A1"]);

        let a3 = RootDatum::build(&[Factor { ty: DynkinType::A, rank: 3, isogeny: Isogeny::Adjoint }], 0).unwrap();
        let sd = a3.subdiagram(&set(&[0, 1, 2])).unwrap();
        assert_eq!(sd.components[0].orderings, vec![vec![0, 1, 2], vec![2, 1, 0]]);
    }

    #[test]
    fn isogeny_independent_cartan() {
        use DynkinType::*;
        for (ty, r) in [(A, 3), (B, 3), (C, 3), (D, 4), (E, 6), (F, 4), (G, 2)] {
            let sc = RootDatum::build(&[Factor { ty, rank: r, isogeny: Isogeny::SimplyConnected }], 1).unwrap();
            let ad = RootDatum::build(&[Factor { ty, rank: r, isogeny: Isogeny::Adjoint }], 0).unwrap();
            assert_eq!(sc.cartan(), ad.cartan());
            assert_eq!(sc.cartan().to_vec(), cartan_matrix(ty, r).unwrap());
            assert_eq!(sc.diagram()[0].ty, ty);
        }
    }

    #[test]
    fn inadmissible_factor() {
        let bad = Factor { ty: DynkinType::B, rank: 1, isogeny: Isogeny::Adjoint };
        assert!(matches!(RootDatum::build(&[bad], 0), Err(Error::InadmissibleRank { .. })));
    }
}

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Zero};

use super::normal_form::{hnf, left_kernel};
use super::subspace::{solve_in_span, Subspace};
use crate::arith::{
    clear_denominators, clear_denominators_by, dot, fmt_qvec, lcm_all, primitive, to_q, to_z, Int, QVec, Rat, ZVec,
};
use crate::error::{Error, Result};

/// A finitely generated subgroup of `ℤ^n`, stored by its Hermite basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sublattice {
    ambient_rank: usize,
    basis: Vec<ZVec>,
}

/// Index of one lattice in another.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatticeIndex {
    Finite(Int),
    Infinite,
}

/// A linear form on a lattice, stored as its values on the lattice's basis.
///
/// The values are rational so that forms like `½α̌` and extensions to
/// superlattices can be represented before integrality is checked.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Functional(pub QVec);

impl Functional {
    pub fn values(&self) -> &[Rat] {
        &self.0
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(Rat::is_integer)
    }

    pub fn scaled(&self, k: &Rat) -> Functional {
        Functional(self.0.iter().map(|x| x * k).collect())
    }

    pub fn add(&self, other: &Functional) -> Functional {
        Functional(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl fmt::Debug for Functional {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", fmt_qvec(&self.0))
    }
}

impl Sublattice {
    pub fn from_generators(ambient_rank: usize, generators: &[ZVec]) -> Result<Self> {
        for g in generators {
            if g.len() != ambient_rank {
                return Err(Error::DimensionMismatch { expected: ambient_rank, found: g.len() });
            }
        }
        Ok(Sublattice { ambient_rank, basis: hnf(generators) })
    }

    /// Generators must have integral entries.
    pub fn from_rational_generators(ambient_rank: usize, generators: &[QVec]) -> Result<Self> {
        let ints: Option<Vec<ZVec>> = generators.iter().map(|g| to_z(g)).collect();
        let ints = ints.ok_or(Error::NotSublattice)?;
        Self::from_generators(ambient_rank, &ints)
    }

    pub fn zero(ambient_rank: usize) -> Self {
        Sublattice { ambient_rank, basis: Vec::new() }
    }

    pub fn full(ambient_rank: usize) -> Self {
        let basis = (0..ambient_rank)
            .map(|i| (0..ambient_rank).map(|j| if i == j { Int::one() } else { Int::zero() }).collect())
            .collect();
        Sublattice { ambient_rank, basis }
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[ZVec] {
        &self.basis
    }

    pub fn basis_q(&self) -> Vec<QVec> {
        self.basis.iter().map(|b| to_q(b)).collect()
    }

    pub fn span(&self) -> Subspace {
        Subspace::span(self.ambient_rank, &self.basis_q()).expect("basis has ambient length")
    }

    /// Coordinates of `x` in the lattice basis, if `x` is in the rational span.
    pub fn coords(&self, x: &[Rat]) -> Option<QVec> {
        if x.len() != self.ambient_rank {
            return None;
        }
        // The Hermite basis is echelon: solve on pivot columns, then check.
        // `rest / den` is what remains of `x`.
        let mut den = lcm_all(x.iter().map(|v| v.denom()));
        let mut rest = clear_denominators_by(x, &den);
        let mut c = Vec::with_capacity(self.basis.len());
        for b in &self.basis {
            let p = b.iter().position(|v| !v.is_zero()).expect("basis rows are nonzero");
            c.push(Rat::new(rest[p].clone(), &den * &b[p]));
            if !rest[p].is_zero() {
                let (bp, rp) = (b[p].clone(), rest[p].clone());
                for (r, v) in rest.iter_mut().zip(b) {
                    *r = &*r * &bp - &rp * v;
                }
                den *= bp;
            }
        }
        rest.iter().all(Zero::is_zero).then_some(c)
    }

    pub fn contains(&self, x: &[Rat]) -> bool {
        self.coords(x).is_some_and(|c| c.iter().all(Rat::is_integer))
    }

    pub fn contains_lattice(&self, other: &Sublattice) -> bool {
        other.basis_q().iter().all(|b| self.contains(b))
    }

    /// `Σ cᵢ bᵢ` for lattice coordinates `c`.
    pub fn point(&self, coords: &[Int]) -> ZVec {
        let mut out = vec![Int::zero(); self.ambient_rank];
        for (c, b) in coords.iter().zip(&self.basis) {
            for (o, x) in out.iter_mut().zip(b) {
                *o += c * x;
            }
        }
        out
    }

    /// `[self : sub]`.
    pub fn index_of(&self, sub: &Sublattice) -> Result<LatticeIndex> {
        if !self.contains_lattice(sub) {
            return Err(Error::NotSublattice);
        }
        if sub.rank() != self.rank() {
            return Ok(LatticeIndex::Infinite);
        }
        let coords: Vec<ZVec> =
            sub.basis_q().iter().map(|b| to_z(&self.coords(b).expect("contained")).expect("integral")).collect();
        let h = hnf(&coords);
        let det = h.iter().enumerate().fold(Int::one(), |acc, (i, row)| acc * &row[i]);
        Ok(LatticeIndex::Finite(det))
    }

    /// `self ∩ W`.
    pub fn intersect_subspace(&self, w: &Subspace) -> Sublattice {
        let constraints = w.annihilator();
        if constraints.dim() == 0 || self.rank() == 0 {
            return self.clone();
        }
        let basis_q = self.basis_q();
        // Column j holds the j-th constraint evaluated on the basis, scaled to integers.
        let columns: Vec<ZVec> = constraints
            .basis()
            .iter()
            .map(|f| clear_denominators(&basis_q.iter().map(|b| dot(b, f)).collect::<QVec>()))
            .collect();
        let matrix: Vec<ZVec> = (0..self.rank()).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect();
        let kernel = left_kernel(&matrix);
        let points: Vec<ZVec> = kernel.iter().map(|c| self.point(c)).collect();
        Sublattice::from_generators(self.ambient_rank, &points).expect("ambient length")
    }

    /// `(self ⊗ ℚ) ∩ ambient`.
    pub fn saturation_in(&self, ambient: &Sublattice) -> Result<Sublattice> {
        if !ambient.contains_lattice(self) {
            return Err(Error::NotSublattice);
        }
        Ok(ambient.intersect_subspace(&self.span()))
    }

    /// Shortest nonzero lattice point on the ray `ℚ≥0 · v`.
    pub fn primitive_ray_generator(&self, v: &[Rat]) -> Result<ZVec> {
        if v.iter().all(Zero::is_zero) {
            return Err(Error::ZeroVector);
        }
        let c = self.coords(v).ok_or(Error::OutsideSpan)?;
        Ok(self.point(&primitive(&c)))
    }

    /// `{x ∈ self : f(x) ∈ ℤ for every f}` where each `f` is given by its
    /// values on this lattice's basis.
    pub fn integral_points(&self, functionals: &[Functional]) -> Sublattice {
        let m = self.rank();
        if functionals.is_empty() || m == 0 {
            return self.clone();
        }
        let k = functionals.len();
        let d = lcm_all(functionals.iter().flat_map(|f| f.0.iter().map(|x| x.denom())));
        let d_rat = Rat::from_integer(d.clone());
        // Rows (c, y) with c·W + d·y = 0 describe c·V ∈ ℤ.
        let mut matrix: Vec<ZVec> =
            (0..m).map(|i| functionals.iter().map(|f| (&f.0[i] * &d_rat).to_integer()).collect()).collect();
        for j in 0..k {
            matrix.push((0..k).map(|l| if l == j { d.clone() } else { Int::zero() }).collect());
        }
        let kernel = left_kernel(&matrix);
        let points: Vec<ZVec> = kernel.iter().map(|row| self.point(&row[..m])).collect();
        Sublattice::from_generators(self.ambient_rank, &points).expect("ambient length")
    }

    /// Re-expresses a form given on `self` as values on `target`'s basis.
    /// `target` must lie in the rational span of `self`.
    pub fn transport(&self, f: &Functional, target: &Sublattice) -> Result<Functional> {
        target.basis_q().iter().map(|b| self.eval(f, b)).collect::<Result<QVec>>().map(Functional)
    }

    /// `f(x)` for `x` in the rational span of the lattice.
    pub fn eval(&self, f: &Functional, x: &[Rat]) -> Result<Rat> {
        if f.0.len() != self.rank() {
            return Err(Error::DimensionMismatch { expected: self.rank(), found: f.0.len() });
        }
        let c = self.coords(x).ok_or(Error::OutsideSpan)?;
        Ok(dot(&c, &f.0))
    }

    /// The form taking `values[j]` on `rows[j]`. The rows must be linearly
    /// independent and span this lattice rationally.
    pub fn functional_from_values(&self, rows: &[QVec], values: &[Rat]) -> Result<Functional> {
        if rows.len() != values.len() {
            return Err(Error::DimensionMismatch { expected: rows.len(), found: values.len() });
        }
        self.basis_q()
            .iter()
            .map(|b| solve_in_span(rows, b).map(|c| dot(&c, values)).ok_or(Error::OutsideSpan))
            .collect::<Result<QVec>>()
            .map(Functional)
    }

    /// The form `x ↦ ⟨covector, x⟩` restricted to this lattice.
    pub fn restrict_covector(&self, covector: &[Int]) -> Functional {
        Functional(
            self.basis
                .iter()
                .map(|b| Rat::from_integer(b.iter().zip(covector).fold(Int::zero(), |a, (x, y)| a + x * y)))
                .collect(),
        )
    }

    /// All sublattices of index exactly `index`, enumerated through their
    /// Hermite forms in the coordinates of this lattice.
    pub fn sublattices_of_index(&self, index: u64) -> Vec<Sublattice> {
        let m = self.rank();
        let mut out = Vec::new();
        if index == 0 {
            return out;
        }
        for diag in ordered_factorizations(index, m) {
            let mut rows: Vec<ZVec> = (0..m)
                .map(|i| {
                    let mut r = vec![Int::zero(); m];
                    r[i] = Int::from(diag[i]);
                    r
                })
                .collect();
            // Free entries: row i, column j > i, ranging over [0, diag[j]).
            let slots: Vec<(usize, usize)> = (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect();
            fill_slots(&slots, 0, &diag, &mut rows, &mut |rows| {
                let points: Vec<ZVec> = rows.iter().map(|r| self.point(r)).collect();
                out.push(Sublattice::from_generators(self.ambient_rank, &points).expect("length"));
            });
        }
        out.sort();
        out
    }
}

fn fill_slots(slots: &[(usize, usize)], at: usize, diag: &[u64], rows: &mut Vec<ZVec>, emit: &mut dyn FnMut(&[ZVec])) {
    if at == slots.len() {
        emit(rows);
        return;
    }
    let (i, j) = slots[at];
    for v in 0..diag[j] {
        rows[i][j] = Int::from(v);
        fill_slots(slots, at + 1, diag, rows, emit);
    }
    rows[i][j] = Int::zero();
}

fn ordered_factorizations(n: u64, parts: usize) -> Vec<Vec<u64>> {
    if parts == 0 {
        return if n == 1 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for d in 1..=n {
        if !n.is_multiple_of(d) {
            continue;
        }
        for mut rest in ordered_factorizations(n / d, parts - 1) {
            rest.insert(0, d);
            out.push(rest);
        }
    }
    out
}

/// `gcd` of the entries of the lattice coordinates is 1.
pub fn is_primitive_in(lattice: &Sublattice, x: &[Rat]) -> bool {
    match lattice.coords(x) {
        Some(c) if c.iter().all(Rat::is_integer) => {
            let g = c.iter().fold(Int::zero(), |g, v| g.gcd(&v.to_integer()));
            g.is_one()
        }
        _ => false,
    }
}

impl fmt::Debug for Sublattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.basis_q().iter().map(|v| fmt_qvec(v)).collect();
        write!(f, "Z[{}]", parts.join(", "))
    }
}

use std::fmt;

use num_traits::{One, Zero};

use crate::arith::{dot, fmt_qvec, is_zero, primitive, primitive_z, QVec, Rat, ZVec};
use crate::error::{Error, Result};

/// Reduced row echelon form of `rows`; returns the nonzero rows and their
/// pivot columns.
pub fn rref(rows: &[QVec], width: usize) -> (Vec<QVec>, Vec<usize>) {
    // Fraction-free elimination on primitive integer rows; the reduced form
    // is unique, so dividing by the pivots at the end gives the same result.
    let mut a: Vec<ZVec> = rows.iter().map(|r| primitive(r)).collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..width {
        let Some(p) = (r..a.len()).find(|&i| !a[i][col].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        let pivot_row = a[r].clone();
        let pv = &pivot_row[col];
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            let next: ZVec = row.iter().zip(&pivot_row).map(|(x, y)| x * pv - &f * y).collect();
            *row = primitive_z(&next);
        }
        pivots.push(col);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    a.truncate(r);
    let reduced = a
        .iter()
        .zip(&pivots)
        .map(|(row, &p)| row.iter().map(|x| Rat::new(x.clone(), row[p].clone())).collect())
        .collect();
    (reduced, pivots)
}

pub fn rank(rows: &[QVec], width: usize) -> usize {
    rref(rows, width).1.len()
}

/// Coefficients `c` with `Σ cᵢ rowsᵢ = x`, if `x` lies in the row space.
/// `rows` must be linearly independent.
pub fn solve_in_span(rows: &[QVec], x: &[Rat]) -> Option<QVec> {
    let width = x.len();
    let k = rows.len();
    // Row-reduce [rowsᵀ | x] column-wise: solve Aᵀ c = x.
    let aug: Vec<QVec> = (0..width)
        .map(|j| {
            let mut r: QVec = rows.iter().map(|row| row[j].clone()).collect();
            r.push(x[j].clone());
            r
        })
        .collect();
    let (red, pivots) = rref(&aug, k + 1);
    if pivots.contains(&k) {
        return None;
    }
    if pivots.len() < k {
        // Dependent rows; the solution would not be unique.
        return None;
    }
    let mut c = vec![Rat::zero(); k];
    for (row, &p) in red.iter().zip(&pivots) {
        c[p] = row[k].clone();
    }
    Some(c)
}

/// A rational linear subspace of `ℚ^dim`, stored as a reduced echelon basis.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subspace {
    dim: usize,
    basis: Vec<QVec>,
}

impl Subspace {
    pub fn span(dim: usize, vectors: &[QVec]) -> Result<Self> {
        for v in vectors {
            if v.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: v.len() });
            }
        }
        let (basis, _) = rref(vectors, dim);
        Ok(Subspace { dim, basis })
    }

    pub fn zero(dim: usize) -> Self {
        Subspace { dim, basis: Vec::new() }
    }

    pub fn full(dim: usize) -> Self {
        let basis =
            (0..dim).map(|i| (0..dim).map(|j| if i == j { Rat::one() } else { Rat::zero() }).collect()).collect();
        Subspace { dim, basis }
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[QVec] {
        &self.basis
    }

    pub fn contains(&self, v: &[Rat]) -> bool {
        if is_zero(v) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        rank(&rows, self.dim) == self.basis.len()
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|v| self.contains(v))
    }

    /// `{y : ⟨b, y⟩ = 0 for every basis vector b}` under the standard pairing.
    pub fn annihilator(&self) -> Subspace {
        let (red, pivots) = rref(&self.basis, self.dim);
        let free: Vec<usize> = (0..self.dim).filter(|c| !pivots.contains(c)).collect();
        let vectors: Vec<QVec> = free
            .iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.dim];
                v[f] = Rat::one();
                for (row, &p) in red.iter().zip(&pivots) {
                    v[p] = -row[f].clone();
                }
                v
            })
            .collect();
        let (basis, _) = rref(&vectors, self.dim);
        Subspace { dim: self.dim, basis }
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.annihilator().sum(&other.annihilator()).annihilator()
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::span(self.dim, &rows).expect("consistent dimensions")
    }

    /// Reduces `v` modulo the subspace so that it vanishes on every pivot
    /// column. The result is a canonical representative of `v + W`.
    pub fn reduce(&self, v: &[Rat]) -> QVec {
        let mut out = v.to_vec();
        for row in &self.basis {
            let p = row.iter().position(|x| !x.is_zero()).expect("nonzero echelon row");
            if out[p].is_zero() {
                continue;
            }
            let f = out[p].clone();
            for (o, r) in out.iter_mut().zip(row) {
                *o -= &f * r;
            }
        }
        out
    }

    /// Whether `f` vanishes on the whole subspace.
    pub fn annihilated_by(&self, f: &[Rat]) -> bool {
        self.basis.iter().all(|b| dot(b, f).is_zero())
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<_> = self.basis.iter().map(|v| fmt_qvec(v)).collect();
        write!(f, "span[{}]", parts.join(", "))
    }
}

//! Hermite and Smith normal forms of integer matrices.
//!
//! Matrices are lists of rows. The Hermite form is the row-style one: an
//! echelon matrix whose pivots are positive and whose entries above each
//! pivot are reduced into `[0, pivot)`. Zero rows are dropped by [`hnf`].

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::{Int, ZVec};

/// Result of [`hnf_with_transform`]: `transform · input = form`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HermiteForm {
    /// Full `m × n` echelon form, zero rows last.
    pub form: Vec<ZVec>,
    /// Unimodular `m × m` row transform.
    pub transform: Vec<ZVec>,
    /// Number of nonzero rows.
    pub rank: usize,
    /// Pivot column of each nonzero row.
    pub pivots: Vec<usize>,
}

fn identity(n: usize) -> Vec<ZVec> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Int::one() } else { Int::zero() }).collect()).collect()
}

/// `row[dst] -= q * row[src]`
fn row_axpy(rows: &mut [ZVec], dst: usize, src: usize, q: &Int) {
    if q.is_zero() {
        return;
    }
    let src_row = rows[src].clone();
    for (d, s) in rows[dst].iter_mut().zip(&src_row) {
        *d -= q * s;
    }
}

fn row_negate(rows: &mut [ZVec], i: usize) {
    for x in rows[i].iter_mut() {
        *x = -&*x;
    }
}

pub fn hnf_with_transform(matrix: &[ZVec]) -> HermiteForm {
    let m = matrix.len();
    let n = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<ZVec> = matrix.to_vec();
    let mut u = identity(m);
    let mut r = 0;
    let mut pivots = Vec::new();

    for col in 0..n {
        if r == m {
            break;
        }
        // Euclid on the column below row r.
        loop {
            let best = (r..m).filter(|&i| !a[i][col].is_zero()).min_by(|&i, &j| a[i][col].abs().cmp(&a[j][col].abs()));
            let Some(p) = best else { break };
            a.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..m {
                if a[i][col].is_zero() {
                    continue;
                }
                let q = a[i][col].div_floor(&a[r][col]);
                row_axpy(&mut a, i, r, &q);
                row_axpy(&mut u, i, r, &q);
                if !a[i][col].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][col].is_zero() {
            continue;
        }
        if a[r][col].is_negative() {
            row_negate(&mut a, r);
            row_negate(&mut u, r);
        }
        for i in 0..r {
            let q = a[i][col].div_floor(&a[r][col]);
            row_axpy(&mut a, i, r, &q);
            row_axpy(&mut u, i, r, &q);
        }
        pivots.push(col);
        r += 1;
    }

    HermiteForm { form: a, transform: u, rank: r, pivots }
}

/// Canonical basis of the row lattice: the nonzero rows of the Hermite form.
pub fn hnf(matrix: &[ZVec]) -> Vec<ZVec> {
    let h = hnf_with_transform(matrix);
    h.form.into_iter().take(h.rank).collect()
}

/// A ℤ-basis of the left kernel `{x ∈ ℤᵐ : x · matrix = 0}`, in Hermite form.
pub fn left_kernel(matrix: &[ZVec]) -> Vec<ZVec> {
    let h = hnf_with_transform(matrix);
    let kernel: Vec<ZVec> = h.transform.into_iter().skip(h.rank).collect();
    hnf(&kernel)
}

/// Result of [`snf`]: `left · input · right = diag(diagonal)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmithForm {
    /// Nonzero invariant factors, each dividing the next.
    pub diagonal: Vec<Int>,
    pub left: Vec<ZVec>,
    pub right: Vec<ZVec>,
}

fn transpose(a: &[ZVec], cols: usize) -> Vec<ZVec> {
    (0..cols).map(|j| a.iter().map(|row| row[j].clone()).collect()).collect()
}

pub fn snf(matrix: &[ZVec]) -> SmithForm {
    let m = matrix.len();
    let n = matrix.first().map_or(0, Vec::len);
    let mut a: Vec<ZVec> = matrix.to_vec();
    let mut left = identity(m);
    // Column operations are tracked as row operations on the transpose of `right`.
    let mut right_t = identity(n);

    let mut t = 0;
    while t < m.min(n) {
        // Pick the smallest nonzero entry in the remaining block as pivot.
        let pivot = (t..m)
            .flat_map(|i| (t..n).map(move |j| (i, j)))
            .filter(|&(i, j)| !a[i][j].is_zero())
            .min_by(|&(i, j), &(k, l)| a[i][j].abs().cmp(&a[k][l].abs()));
        let Some((pi, pj)) = pivot else { break };
        a.swap(t, pi);
        left.swap(t, pi);
        for row in a.iter_mut() {
            row.swap(t, pj);
        }
        right_t.swap(t, pj);

        loop {
            let mut changed = false;
            // Clear the column below the pivot.
            for i in t + 1..m {
                if a[i][t].is_zero() {
                    continue;
                }
                let q = a[i][t].div_floor(&a[t][t]);
                row_axpy(&mut a, i, t, &q);
                row_axpy(&mut left, i, t, &q);
                if !a[i][t].is_zero() {
                    a.swap(t, i);
                    left.swap(t, i);
                    changed = true;
                }
            }
            // Clear the row right of the pivot.
            for j in t + 1..n {
                if a[t][j].is_zero() {
                    continue;
                }
                let q = a[t][j].div_floor(&a[t][t]);
                for row in a.iter_mut() {
                    let s = row[t].clone();
                    row[j] -= &q * s;
                }
                row_axpy(&mut right_t, j, t, &q);
                if !a[t][j].is_zero() {
                    for row in a.iter_mut() {
                        row.swap(t, j);
                    }
                    right_t.swap(t, j);
                    changed = true;
                }
            }
            if changed {
                continue;
            }
            // Enforce divisibility of the remaining block.
            let offender = (t + 1..m)
                .flat_map(|i| (t + 1..n).map(move |j| (i, j)))
                .find(|&(i, j)| !(&a[i][j] % &a[t][t]).is_zero());
            match offender {
                Some((i, _)) => {
                    // Add row i to row t, then the loop reduces again.
                    row_axpy(&mut a, t, i, &Int::from(-1));
                    row_axpy(&mut left, t, i, &Int::from(-1));
                }
                None => break,
            }
        }
        if a[t][t].is_negative() {
            row_negate(&mut a, t);
            row_negate(&mut left, t);
        }
        t += 1;
    }

    let diagonal = (0..t).map(|i| a[i][i].clone()).collect();
    SmithForm { diagonal, left, right: transpose(&right_t, n) }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{int, zdot, zvec};

    fn matmul(a: &[ZVec], b: &[ZVec]) -> Vec<ZVec> {
        let cols = b.first().map_or(0, Vec::len);
        let bt = transpose(b, cols);
        a.iter().map(|row| bt.iter().map(|col| zdot(row, col)).collect()).collect()
    }

    #[test]
    fn hnf_of_three_generators() {
        let h = hnf(&[zvec(&[2, 0]), zvec(&[0, 2]), zvec(&[1, 1])]);
        assert_eq!(h, vec![zvec(&[1, 1]), zvec(&[0, 2])]);
    }

    #[test]
    fn hnf_of_identity() {
        let id = vec![zvec(&[1, 0, 0]), zvec(&[0, 1, 0]), zvec(&[0, 0, 1])];
        assert_eq!(hnf(&id), id);
    }

    #[test]
    fn transform_reproduces_form() {
        let a = vec![zvec(&[4, 6, 2]), zvec(&[2, -3, 5]), zvec(&[6, 3, 7])];
        let h = hnf_with_transform(&a);
        assert_eq!(matmul(&h.transform, &a), h.form);
        assert_eq!(h.rank, 2);
    }

    #[test]
    fn left_kernel_is_annihilated() {
        let a = vec![zvec(&[1, 2]), zvec(&[2, 4]), zvec(&[3, 6])];
        let k = left_kernel(&a);
        assert_eq!(k.len(), 2);
        for x in &k {
            assert!(matmul(std::slice::from_ref(x), &a)[0].iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn snf_of_diagonal() {
        let s = snf(&[zvec(&[2, 0]), zvec(&[0, 2])]);
        assert_eq!(s.diagonal, vec![int(2), int(2)]);
    }

    #[test]
    fn snf_fixes_divisibility() {
        let a = vec![zvec(&[2, 0]), zvec(&[0, 3])];
        let s = snf(&a);
        assert_eq!(s.diagonal, vec![int(1), int(6)]);
        let d = matmul(&matmul(&s.left, &a), &s.right);
        assert_eq!(d, vec![zvec(&[1, 0]), zvec(&[0, 6])]);
    }
}

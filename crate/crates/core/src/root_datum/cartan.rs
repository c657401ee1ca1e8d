use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DynkinType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl DynkinType {
    pub fn letter(self) -> char {
        match self {
            DynkinType::A => 'A',
            DynkinType::B => 'B',
            DynkinType::C => 'C',
            DynkinType::D => 'D',
            DynkinType::E => 'E',
            DynkinType::F => 'F',
            DynkinType::G => 'G',
        }
    }

    pub fn from_letter(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(DynkinType::A),
            "B" => Ok(DynkinType::B),
            "C" => Ok(DynkinType::C),
            "D" => Ok(DynkinType::D),
            "E" => Ok(DynkinType::E),
            "F" => Ok(DynkinType::F),
            "G" => Ok(DynkinType::G),
            other => Err(Error::UnknownType(other.to_string())),
        }
    }

    pub fn admits_rank(self, rank: usize) -> bool {
        match self {
            DynkinType::A => rank >= 1,
            DynkinType::B => rank >= 2,
            DynkinType::C => rank >= 3,
            DynkinType::D => rank >= 4,
            DynkinType::E => (6..=8).contains(&rank),
            DynkinType::F => rank == 4,
            DynkinType::G => rank == 2,
        }
    }

    pub const ALL: [DynkinType; 7] =
        [DynkinType::A, DynkinType::B, DynkinType::C, DynkinType::D, DynkinType::E, DynkinType::F, DynkinType::G];
}

impl fmt::Display for DynkinType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// Cartan matrix `A[i][j] = ⟨α̌ᵢ, αⱼ⟩` in Bourbaki numbering (0-based).
pub fn cartan_matrix(ty: DynkinType, rank: usize) -> Result<Vec<Vec<i64>>> {
    if !ty.admits_rank(rank) {
        return Err(Error::InadmissibleRank { ty: ty.letter(), rank });
    }
    let n = rank;
    let mut a = vec![vec![0i64; n]; n];
    for (i, row) in a.iter_mut().enumerate() {
        row[i] = 2;
    }
    let mut link = |i: usize, j: usize| {
        a[i][j] = -1;
        a[j][i] = -1;
    };
    match ty {
        DynkinType::A | DynkinType::B | DynkinType::C => {
            for i in 0..n.saturating_sub(1) {
                link(i, i + 1);
            }
        }
        DynkinType::D => {
            for i in 0..n - 2 {
                link(i, i + 1);
            }
            link(n - 3, n - 1);
        }
        DynkinType::E => {
            link(0, 2);
            link(1, 3);
            for i in 2..n - 1 {
                link(i, i + 1);
            }
        }
        DynkinType::F => {
            link(0, 1);
            link(1, 2);
            link(2, 3);
        }
        DynkinType::G => link(0, 1),
    }
    match ty {
        // αₙ short.
        DynkinType::B => a[n - 1][n - 2] = -2,
        // αₙ long.
        DynkinType::C => a[n - 2][n - 1] = -2,
        // α₃ short, α₂ long.
        DynkinType::F => a[2][1] = -2,
        // α₁ short, α₂ long.
        DynkinType::G => a[0][1] = -3,
        _ => {}
    }
    Ok(a)
}

/// All bijections `σ` (as lists `σ[k]` = local node for Bourbaki index `k`)
/// under which `local` coincides with `standard`.
fn matchings(local: &[Vec<i64>], standard: &[Vec<i64>]) -> Vec<Vec<usize>> {
    fn extend(
        local: &[Vec<i64>],
        standard: &[Vec<i64>],
        assigned: &mut Vec<usize>,
        used: &mut Vec<bool>,
        out: &mut Vec<Vec<usize>>,
    ) {
        let k = assigned.len();
        if k == standard.len() {
            out.push(assigned.clone());
            return;
        }
        for node in 0..local.len() {
            if used[node] {
                continue;
            }
            let consistent = (0..k)
                .all(|p| local[node][assigned[p]] == standard[k][p] && local[assigned[p]][node] == standard[p][k]);
            if !consistent {
                continue;
            }
            used[node] = true;
            assigned.push(node);
            extend(local, standard, assigned, used, out);
            assigned.pop();
            used[node] = false;
        }
    }
    let mut out = Vec::new();
    if local.len() != standard.len() {
        return out;
    }
    extend(local, standard, &mut Vec::new(), &mut vec![false; local.len()], &mut out);
    out
}

/// Identifies a connected Cartan matrix. Returns the type and every
/// Bourbaki ordering of its nodes (indices into `local`).
pub fn classify_connected(local: &[Vec<i64>]) -> Option<(DynkinType, Vec<Vec<usize>>)> {
    let r = local.len();
    for ty in DynkinType::ALL {
        let Ok(standard) = cartan_matrix(ty, r) else { continue };
        let found = matchings(local, &standard);
        if !found.is_empty() {
            return Some((ty, found));
        }
    }
    None
}

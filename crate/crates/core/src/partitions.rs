//! Partitions as S-tris board states.
//!
//! A partition of length at most `n` is read as a Tetris field of width `n`
//! whose column heights weakly decrease from left to right. One S-tris move
//! either drops a single box onto a column or lifts the top box off a column;
//! complete rows are never cleared. The number of move histories of length
//! `m` that start on the empty board and end on `λ` is the multiplicity of the
//! irreducible `ρ̃_λ` inside `V^{⊗m}`.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// Weakly decreasing positive column heights. The empty sequence is the empty
/// partition.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Partition(Vec<u32>);

impl Partition {
    /// Builds a partition, dropping trailing zeros.
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        if parts.contains(&0) {
            return Err(invalid(format!(
                "partition {parts:?} has an interior zero part"
            )));
        }
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(invalid(format!(
                "partition {parts:?} is not weakly decreasing"
            )));
        }
        Ok(Self(parts))
    }

    pub fn empty() -> Self {
        Self(Vec::new())
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Number of nonzero parts.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Sum of the parts, `|λ|`.
    pub fn weight(&self) -> u64 {
        self.0.iter().map(|&p| u64::from(p)).sum()
    }

    /// Height of column `i` (0-based); zero past the end.
    pub fn column(&self, i: usize) -> u32 {
        self.0.get(i).copied().unwrap_or(0)
    }

    fn check_width(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(invalid("board width n must be at least 1"));
        }
        if self.len() > n {
            return Err(invalid(format!(
                "partition {self} has length {} > board width {n}",
                self.len()
            )));
        }
        Ok(())
    }
}

impl TryFrom<Vec<u32>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<u32>) -> Result<Self> {
        Self::new(parts)
    }
}

impl From<Partition> for Vec<u32> {
    fn from(p: Partition) -> Self {
        p.0
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        f.write_str(")")
    }
}

/// Parses comma-separated parts such as `"2,1"`. The empty string and `"0"`
/// both denote the empty partition.
impl FromStr for Partition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Ok(Self::empty());
        }
        let parts = s
            .split(',')
            .map(|tok| {
                let tok = tok.trim();
                tok.parse::<u32>()
                    .map_err(|_| invalid(format!("bad partition part {tok:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parts)
    }
}

/// `T_n(μ)`: every partition reachable from `mu` by dropping one box or
/// lifting one top box, staying within width `n`.
pub fn stris_moves(mu: &Partition, n: usize) -> Result<BTreeSet<Partition>> {
    mu.check_width(n)?;
    let mut out = BTreeSet::new();
    for col in 0..n {
        let h = mu.column(col);
        // drop onto `col`
        if col == 0 || mu.column(col - 1) > h {
            let mut parts = mu.0.clone();
            if col < parts.len() {
                parts[col] += 1;
            } else {
                parts.push(1);
            }
            out.insert(Partition(parts));
        }
        // lift the top box of `col`
        if h > 0 && mu.column(col + 1) < h {
            let mut parts = mu.0.clone();
            parts[col] -= 1;
            if parts[col] == 0 {
                parts.pop();
            }
            out.insert(Partition(parts));
        }
    }
    Ok(out)
}

/// `f̃^λ_m(n)`: the number of S-tris histories of length `m` from the empty
/// board to `lambda`, equivalently the number of symplectic lattice words of
/// length `m` over `C_n` with final weight `lambda`.
pub fn multiplicity(lambda: &Partition, m: usize, n: usize) -> Result<u128> {
    lambda.check_width(n)?;
    let mut memo = HashMap::new();
    histories(lambda, m, n, &mut memo)
}

/// Dimension of the invariant subspace of `V^{⊗m}`, i.e. `f̃^∅_m(n)`.
pub fn invariant_dimension(m: usize, n: usize) -> Result<u128> {
    multiplicity(&Partition::empty(), m, n)
}

// Moves are reversible, so the predecessors of `lambda` are exactly `T_n(lambda)`.
fn histories(
    lambda: &Partition,
    m: usize,
    n: usize,
    memo: &mut HashMap<(Partition, usize), u128>,
) -> Result<u128> {
    let w = lambda.weight();
    if w > m as u64 || !(m as u64 - w).is_multiple_of(2) {
        return Ok(0);
    }
    if m == 0 {
        return Ok(1);
    }
    if let Some(&v) = memo.get(&(lambda.clone(), m)) {
        return Ok(v);
    }
    let mut total: u128 = 0;
    for mu in stris_moves(lambda, n)? {
        let c = histories(&mu, m - 1, n, memo)?;
        total = total
            .checked_add(c)
            .ok_or(Error::Overflow("multiplicity"))?;
    }
    memo.insert((lambda.clone(), m), total);
    Ok(total)
}

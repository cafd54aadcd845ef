//! Fraction-free row reduction over the integers.
//!
//! Rows are sparse, sorted by column. Each new row is reduced against the
//! stored pivots by integer cross-multiplication and then divided by the gcd
//! of its entries, so no fractions ever appear and entries stay small.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type SparseRow = Vec<(usize, BigInt)>;

/// Incrementally built row-echelon basis of a row space.
#[derive(Default, Debug)]
pub struct RowEchelon {
    pivots: HashMap<usize, SparseRow>,
}

impl RowEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds a row (sorted by column, no zero entries); returns whether it
    /// raised the rank.
    pub fn insert(&mut self, mut row: SparseRow) -> bool {
        debug_assert!(row.windows(2).all(|w| w[0].0 < w[1].0));
        row.retain(|(_, c)| !c.is_zero());
        loop {
            let Some(lead) = row.first().map(|(c, _)| *c) else {
                return false;
            };
            match self.pivots.get(&lead) {
                Some(pivot) => row = eliminate(&row, pivot),
                None => {
                    normalize(&mut row);
                    self.pivots.insert(lead, row);
                    return true;
                }
            }
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// `row·(b/g) − pivot·(a/g)` where `a`, `b` are the leading entries of `row`
/// and `pivot` and `g = gcd(a, b)`; the leading entry cancels.
fn eliminate(row: &SparseRow, pivot: &SparseRow) -> SparseRow {
    let a = &row[0].1;
    let b = &pivot[0].1;
    let g = a.gcd(b);
    let row_scale = b / &g;
    let pivot_scale = a / &g;
    let mut out = Vec::with_capacity(row.len() + pivot.len());
    let (mut i, mut j) = (1, 1);
    while i < row.len() || j < pivot.len() {
        let take_row = j >= pivot.len() || (i < row.len() && row[i].0 < pivot[j].0);
        let take_pivot = i >= row.len() || (j < pivot.len() && pivot[j].0 < row[i].0);
        let (col, value) = if take_row {
            i += 1;
            (row[i - 1].0, &row[i - 1].1 * &row_scale)
        } else if take_pivot {
            j += 1;
            (pivot[j - 1].0, -(&pivot[j - 1].1 * &pivot_scale))
        } else {
            i += 1;
            j += 1;
            (
                row[i - 1].0,
                &row[i - 1].1 * &row_scale - &pivot[j - 1].1 * &pivot_scale,
            )
        };
        if !value.is_zero() {
            out.push((col, value));
        }
    }
    normalize(&mut out);
    out
}

fn normalize(row: &mut SparseRow) {
    let mut g = BigInt::zero();
    for (_, c) in row.iter() {
        g = g.gcd(c);
        if g.is_one() {
            break;
        }
    }
    if row.first().is_some_and(|(_, c)| c.is_negative()) {
        g = -g;
    }
    if !g.is_zero() && !g.is_one() {
        for (_, c) in row.iter_mut() {
            *c /= &g;
        }
    }
}

/// Rank of a set of sparse integer rows.
pub fn rank<I: IntoIterator<Item = SparseRow>>(rows: I) -> usize {
    let mut echelon = RowEchelon::new();
    for row in rows {
        echelon.insert(row);
    }
    echelon.rank()
}

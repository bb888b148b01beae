//! Forcing by rows and columns.
//!
//! An empty cell `(i, j)` is forced to `k` when the symbols already present in
//! row `i` and column `j` are exactly `{1..n} \ {k}`. Only this rule is
//! applied; inferences based on where a symbol can still go in a row or
//! column are deliberately absent, since they would accept sets that this
//! rule cannot recover.

use crate::error::{Error, Result};
use crate::square::{LatinSquare, PartialLatinSquare, TripleSet};

fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// The symbol forced into the empty cell `(row, col)` (0-based), if any.
pub fn forced_symbol(p: &PartialLatinSquare, row: usize, col: usize) -> Result<Option<u8>> {
    let n = p.order();
    if row >= n || col >= n {
        return Err(Error::PositionOutOfRange {
            row: row + 1,
            col: col + 1,
            order: n,
        });
    }
    if p.get(row, col).is_some() {
        return Err(Error::CellFilled {
            row: row + 1,
            col: col + 1,
        });
    }
    Ok(forced_from_masks(
        p.row_mask(row) | p.col_mask(col),
        full_mask(n),
    ))
}

fn forced_from_masks(used: u64, full: u64) -> Option<u8> {
    let missing = full & !used;
    (missing.count_ones() == 1).then(|| missing.trailing_zeros() as u8 + 1)
}

/// Least fixpoint of the forcing rule, scanning cells row-major each round.
///
/// A forced symbol is absent from its row and column by construction, so
/// propagation never breaks the Latin property even when `p` has no
/// completion; such a `p` simply stops at a fixpoint with dead cells.
pub fn propagate(p: &PartialLatinSquare) -> PartialLatinSquare {
    let n = p.order();
    let order: Vec<usize> = (0..n * n).collect();
    propagate_in_order(p, &order)
}

/// Propagation visiting cells (row-major indices) in `cell_order` each round.
/// When `p` has a completion the fixpoint does not depend on the order; when
/// it has none, one placement can exhaust a cell that another order would
/// have forced first.
pub fn propagate_in_order(p: &PartialLatinSquare, cell_order: &[usize]) -> PartialLatinSquare {
    let n = p.order();
    let full = full_mask(n);
    let mut rows: Vec<u64> = (0..n).map(|r| p.row_mask(r)).collect();
    let mut cols: Vec<u64> = (0..n).map(|c| p.col_mask(c)).collect();
    let mut out = p.clone();
    loop {
        let mut changed = false;
        for &idx in cell_order {
            let (r, c) = (idx / n, idx % n);
            if out.get(r, c).is_some() {
                continue;
            }
            if let Some(s) = forced_from_masks(rows[r] | cols[c], full) {
                out.place(r, c, s)
                    .expect("a forced symbol is missing from its row and column");
                rows[r] |= 1 << (s - 1);
                cols[c] |= 1 << (s - 1);
                changed = true;
            }
        }
        if !changed {
            return out;
        }
    }
}

/// Whether forcing alone rebuilds `l` from the entries in `set`.
pub fn is_strong_teaching_set(set: &TripleSet, l: &LatinSquare) -> Result<bool> {
    l.check_contains(set)?;
    let end = propagate(&set.to_partial());
    Ok(end.is_full() && end.cells() == l.cells())
}

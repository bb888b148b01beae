//! Isotopy canonical forms.
//!
//! Permuting rows, columns and symbols maps Latin squares to Latin squares and
//! teaching sets to teaching sets, so per-square teaching quantities only need
//! one representative per isotopy class.

use itertools::Itertools;

use crate::completion::completions;
use crate::error::Result;
use crate::exact_cover::Cap;
use crate::square::{LatinSquare, PartialLatinSquare};

/// Applies an isotopy; permutations are 0-based images, e.g. `rows[i]` is the
/// new index of row `i`.
pub fn apply_isotopy(l: &LatinSquare, rows: &[usize], cols: &[usize], syms: &[usize]) -> LatinSquare {
    let n = l.order();
    let mut cells = vec![0u8; n * n];
    for r in 0..n {
        for c in 0..n {
            let s = l.get(r, c) as usize - 1;
            cells[rows[r] * n + cols[c]] = syms[s] as u8 + 1;
        }
    }
    LatinSquare::from_cells_unchecked(n, cells)
}

/// Smallest reduced square (first row and column in natural order) isotopic
/// to `l`, in row-major lexicographic order.
///
/// Choosing which row goes first and a column permutation fixes everything
/// else: symbols are relabelled so the first row reads `1..n`, and the rows
/// are then sorted by their first entry.
pub fn canonical_form(l: &LatinSquare) -> LatinSquare {
    let n = l.order();
    let mut best: Option<Vec<u8>> = None;
    let mut cand = vec![0u8; n * n];
    let mut relabel = vec![0u8; n + 1];
    for perm in (0..n).permutations(n) {
        for first in 0..n {
            for (j, &c) in perm.iter().enumerate() {
                relabel[l.get(first, c) as usize] = j as u8 + 1;
            }
            for r in 0..n {
                let lead = relabel[l.get(r, perm[0]) as usize] as usize - 1;
                for (j, &c) in perm.iter().enumerate() {
                    cand[lead * n + j] = relabel[l.get(r, c) as usize];
                }
            }
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand.clone());
            }
        }
    }
    LatinSquare::from_cells_unchecked(n, best.expect("n >= 1"))
}

/// All reduced Latin squares of order `n`.
pub fn reduced_squares(n: usize) -> Result<Vec<LatinSquare>> {
    let mut p = PartialLatinSquare::empty(n)?;
    for i in 0..n {
        p.place(0, i, i as u8 + 1)?;
        if i > 0 {
            p.place(i, 0, i as u8 + 1)?;
        }
    }
    Ok(completions(&p, Cap::Unbounded))
}

/// One canonical representative per isotopy class, sorted.
pub fn isotopy_representatives(n: usize) -> Result<Vec<LatinSquare>> {
    let reduced = reduced_squares(n)?;
    let mut reps = crate::par::map(&reduced, canonical_form);
    reps.sort();
    reps.dedup();
    Ok(reps)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn class_counts() {
        // reduced squares: 1, 1, 1, 4, 56; isotopy classes: 1, 1, 1, 2, 2
        let reduced: Vec<usize> = (1..=5).map(|n| reduced_squares(n).unwrap().len()).collect();
        assert_eq!(reduced, vec![1, 1, 1, 4, 56]);
        let classes: Vec<usize> = (1..=5)
            .map(|n| isotopy_representatives(n).unwrap().len())
            .collect();
        assert_eq!(classes, vec![1, 1, 1, 2, 2]);
    }

    #[test]
    fn canonical_form_is_invariant() {
        let l: LatinSquare = "1 3 4 2\n4 2 1 3\n2 1 3 4\n3 4 2 1".parse().unwrap();
        let c = canonical_form(&l);
        let moved = apply_isotopy(&l, &[2, 0, 3, 1], &[1, 3, 0, 2], &[3, 2, 1, 0]);
        assert_eq!(canonical_form(&moved), c);
        assert_eq!(c.rows().next().unwrap(), &[1, 2, 3, 4]);
    }
}

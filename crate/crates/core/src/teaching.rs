//! Teaching sets, critical sets and the smallest critical set size `scs(n)`.
//!
//! A teaching set for `L` is a set of its entries that no other Latin square
//! of the same order contains; a critical set is a teaching set from which no
//! entry can be dropped. A minimum-size teaching set is always critical, so
//! the smallest critical set size over all squares of order `n` equals the
//! minimum teaching dimension of the class.

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::completion::{all_latin_squares, completions, is_uniquely_completable};
use crate::error::{Error, Result};
use crate::exact_cover::Cap;
use crate::isotopy::isotopy_representatives;
use crate::limits::{guard, Limits};
use crate::square::{LatinSquare, StructuredSquare, Triple, TripleSet};

/// Positions are kept in a `u64` mask, bit `r * n + c`.
const MASK_MAX_ORDER: usize = 8;

pub fn is_teaching_set(set: &TripleSet, l: &LatinSquare) -> Result<bool> {
    l.check_contains(set)?;
    Ok(is_uniquely_completable(&set.to_partial()))
}

pub fn is_critical_set(set: &TripleSet, l: &LatinSquare) -> Result<bool> {
    if !is_teaching_set(set, l)? {
        return Ok(false);
    }
    Ok(crate::par::all(&set.iter().copied().collect::<Vec<_>>(), |t| {
        !is_uniquely_completable(&set.without(t).to_partial())
    }))
}

/// Outcome of checking a set of entries against a square.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeachingReport {
    pub square: StructuredSquare,
    pub set: StructuredSquare,
    pub is_teaching: bool,
    pub is_critical: bool,
    /// A completion of the set other than `square`, present iff the set does
    /// not teach.
    pub witness_second_completion: Option<StructuredSquare>,
}

pub fn teaching_report(set: &TripleSet, l: &LatinSquare) -> Result<TeachingReport> {
    l.check_contains(set)?;
    let witness = completions(&set.to_partial(), Cap::UNIQUENESS)
        .into_iter()
        .find(|other| other != l);
    let is_teaching = witness.is_none();
    let is_critical = is_teaching && is_critical_set(set, l)?;
    Ok(TeachingReport {
        square: StructuredSquare::from(&l.to_triples()),
        set: StructuredSquare::from(set),
        is_teaching,
        is_critical,
        witness_second_completion: witness.map(|w| StructuredSquare::from(&w.to_triples())),
    })
}

/// Position masks of the 2×2 Latin subsquares of `l`. Swapping the two
/// symbols of one gives another Latin square, so every teaching set must hit
/// each of them.
pub fn intercalates(l: &LatinSquare) -> Vec<u64> {
    let n = l.order();
    assert!(n <= MASK_MAX_ORDER);
    let mut out = Vec::new();
    for r1 in 0..n {
        for r2 in r1 + 1..n {
            for c1 in 0..n {
                for c2 in c1 + 1..n {
                    if l.get(r1, c1) == l.get(r2, c2) && l.get(r1, c2) == l.get(r2, c1) {
                        out.push(
                            1 << (r1 * n + c1) | 1 << (r1 * n + c2) | 1 << (r2 * n + c1) | 1 << (r2 * n + c2),
                        );
                    }
                }
            }
        }
    }
    out
}

/// Minimum teaching set of a square.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinTeachingSet {
    pub size: usize,
    pub set: TripleSet,
}

fn mask_to_set(l: &LatinSquare, mask: u64) -> TripleSet {
    l.restrict_mask(mask).to_triples()
}

/// Lexicographically least position set of size `k` that teaches `l`.
fn teaching_set_of_size(l: &LatinSquare, k: usize, blockers: &[u64]) -> Option<u64> {
    let n = l.order();
    const CHUNK: usize = 1 << 14;
    let combos = (0..n * n).combinations(k).map(|c| c.iter().fold(0u64, |m, &i| m | 1 << i));
    for chunk in &combos.chunks(CHUNK) {
        let masks: Vec<u64> = chunk
            .filter(|m| blockers.iter().all(|b| b & m != 0))
            .collect();
        if let Some(&m) = crate::par::find_first(&masks, |&m| is_uniquely_completable(&l.restrict_mask(m))) {
            return Some(m);
        }
    }
    None
}

/// A teaching set of minimum size, searched by increasing size. Among
/// minimum-size sets the lexicographically least list of row-major positions
/// is returned.
pub fn min_teaching_set(l: &LatinSquare, limits: &Limits) -> Result<MinTeachingSet> {
    let n = l.order();
    guard("minimum teaching set search", n, limits.min_teach_max_n.min(MASK_MAX_ORDER))?;
    let blockers = intercalates(l);
    for k in 0..=n * n {
        if let Some(m) = teaching_set_of_size(l, k, &blockers) {
            return Ok(MinTeachingSet {
                size: k,
                set: mask_to_set(l, m),
            });
        }
    }
    unreachable!("the full square teaches itself")
}

/// How `scs` covered the squares of the order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScsMethod {
    Exhaustive,
    Representatives,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScsReport {
    pub n: usize,
    pub scs: usize,
    pub method: ScsMethod,
    pub squares_examined: usize,
    /// First examined square attaining the minimum, with its least set.
    pub witness_square: StructuredSquare,
    pub witness_set: StructuredSquare,
}

/// Size of the smallest critical set over all Latin squares of order `n`:
/// by exhaustion up to the exhaustive guard, over isotopy representatives up
/// to the representative guard.
pub fn scs(n: usize, limits: &Limits) -> Result<ScsReport> {
    if n <= limits.scs_exhaustive_max_n {
        scs_with(n, ScsMethod::Exhaustive, limits)
    } else {
        guard("scs", n, limits.scs_representative_max_n)?;
        scs_with(n, ScsMethod::Representatives, limits)
    }
}

pub fn scs_with(n: usize, method: ScsMethod, limits: &Limits) -> Result<ScsReport> {
    guard("scs", n, limits.min_teach_max_n.max(limits.scs_exhaustive_max_n).min(MASK_MAX_ORDER))?;
    let squares = match method {
        ScsMethod::Exhaustive => all_latin_squares(n)?,
        ScsMethod::Representatives => isotopy_representatives(n)?,
    };
    let blockers: Vec<Vec<u64>> = squares.iter().map(intercalates).collect();
    let indexed: Vec<usize> = (0..squares.len()).collect();
    // every square is tested at size k before any is tested at k + 1
    for k in 0..=n * n {
        let hits = crate::par::map(&indexed, |&i| {
            teaching_set_of_size(&squares[i], k, &blockers[i])
        });
        if let Some((i, m)) = hits.iter().enumerate().find_map(|(i, h)| h.map(|m| (i, m))) {
            return Ok(ScsReport {
                n,
                scs: k,
                method,
                squares_examined: squares.len(),
                witness_square: StructuredSquare::from(&squares[i].to_triples()),
                witness_set: StructuredSquare::from(&mask_to_set(&squares[i], m)),
            });
        }
    }
    unreachable!("full squares teach themselves")
}

/// The cyclic square with `cell(i, j) = ((i + j - 2) mod n) + 1` (1-based).
pub fn back_circulant(n: usize) -> Result<LatinSquare> {
    crate::square::check_order(n)?;
    let cells = (0..n)
        .flat_map(|r| (0..n).map(move |c| ((r + c) % n + 1) as u8))
        .collect();
    Ok(LatinSquare::from_cells_unchecked(n, cells))
}

/// Entries of the back-circulant square on two opposite triangles: the top
/// left one (`i + j < ⌊n/2⌋`, 0-based) and the bottom right one
/// (`i ≥ ⌊n/2⌋`, `i + j ≥ n + ⌊n/2⌋`). Together they hold `⌊n²/4⌋` cells.
pub fn quarter_pattern(n: usize) -> Result<TripleSet> {
    let l = back_circulant(n)?;
    let h = n / 2;
    let cells = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| {
        i + j < h || (i >= h && i + j >= n + h)
    });
    TripleSet::new(
        n,
        cells.map(|(i, j)| Triple::new(i + 1, j + 1, l.get(i, j) as usize)),
    )
}

/// A critical set of size `⌊n²/4⌋` in `back_circulant(n)`. The candidate is
/// checked for criticality by exact cover before it is returned.
pub fn quarter_critical_candidate(n: usize, limits: &Limits) -> Result<TripleSet> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("order {n}: need n >= 2")));
    }
    guard("critical set verification", n, limits.quarter_verify_max_n)?;
    let set = quarter_pattern(n)?;
    let l = back_circulant(n)?;
    if set.len() != n * n / 4 {
        return Err(Error::ConstructionFailed(format!(
            "candidate has {} entries, expected {}",
            set.len(),
            n * n / 4
        )));
    }
    if !is_critical_set(&set, &l)? {
        return Err(Error::ConstructionFailed(format!(
            "quarter candidate for n = {n} is not critical"
        )));
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::square::parse_grid;

    const SAMPLE_PARTIAL: &str = "1 . . .\n. 2 . .\n. . . .\n. 4 2 .";
    const SAMPLE_FULL: &str = "1 3 4 2\n4 2 1 3\n2 1 3 4\n3 4 2 1";

    fn bc3_pair() -> (TripleSet, LatinSquare) {
        let l = back_circulant(3).unwrap();
        let s = TripleSet::new(3, [Triple::new(1, 1, 1), Triple::new(2, 2, 3)]).unwrap();
        (s, l)
    }

    #[test]
    fn back_circulant_rows() {
        assert_eq!(back_circulant(3).unwrap().to_string(), "1 2 3\n2 3 1\n3 1 2");
        assert_eq!(back_circulant(1).unwrap().to_string(), "1");
        assert_eq!(
            back_circulant(4).unwrap().to_string(),
            "1 2 3 4\n2 3 4 1\n3 4 1 2\n4 1 2 3"
        );
    }

    #[test]
    fn sample_square_is_teaching_and_critical() {
        let l: LatinSquare = SAMPLE_FULL.parse().unwrap();
        let s = parse_grid(SAMPLE_PARTIAL).unwrap().to_triples();
        assert!(is_teaching_set(&s, &l).unwrap());
        assert!(is_critical_set(&s, &l).unwrap());
        let report = teaching_report(&s, &l).unwrap();
        assert!(report.is_teaching && report.is_critical);
        assert!(report.witness_second_completion.is_none());
    }

    #[test]
    fn order_three_pair() {
        let (s, l) = bc3_pair();
        assert!(is_teaching_set(&s, &l).unwrap());
        assert!(is_critical_set(&s, &l).unwrap());
    }

    #[test]
    fn empty_set_does_not_teach() {
        for n in 2..=4 {
            let l = back_circulant(n).unwrap();
            let report = teaching_report(&TripleSet::empty(n).unwrap(), &l).unwrap();
            assert!(!report.is_teaching);
            assert!(report.witness_second_completion.is_some());
        }
    }

    #[test]
    fn full_order_two_set_is_not_critical() {
        let l = back_circulant(2).unwrap();
        assert!(is_teaching_set(&l.to_triples(), &l).unwrap());
        assert!(!is_critical_set(&l.to_triples(), &l).unwrap());
    }

    #[test]
    fn minimum_teaching_sets() {
        let lim = Limits::default();
        let m1 = min_teaching_set(&back_circulant(1).unwrap(), &lim).unwrap();
        assert_eq!((m1.size, m1.set.len()), (0, 0));
        assert_eq!(min_teaching_set(&back_circulant(2).unwrap(), &lim).unwrap().size, 1);
        let m3 = min_teaching_set(&back_circulant(3).unwrap(), &lim).unwrap();
        assert_eq!(m3.size, 2);
        assert!(is_critical_set(&m3.set, &back_circulant(3).unwrap()).unwrap());
        // lexicographically least: (1,1) comes first, then the least partner
        assert_eq!(m3.set.positions()[0], (0, 0));
    }

    #[test]
    fn every_order_two_intercalate_is_the_square() {
        assert_eq!(intercalates(&back_circulant(2).unwrap()), vec![0b1111]);
        assert!(intercalates(&back_circulant(3).unwrap()).is_empty());
        // Z4 has intercalates only on rows {r, r+2} and columns {c, c+2}
        assert_eq!(intercalates(&back_circulant(4).unwrap()).len(), 4);
    }

    #[test]
    fn quarter_sizes_small() {
        let lim = Limits::default();
        assert_eq!(quarter_critical_candidate(2, &lim).unwrap().len(), 1);
        assert_eq!(quarter_critical_candidate(4, &lim).unwrap().len(), 4);
        assert_eq!(quarter_critical_candidate(5, &lim).unwrap().len(), 6);
        assert!(quarter_critical_candidate(1, &lim).is_err());
        assert!(quarter_critical_candidate(9, &lim).unwrap_err().is_guard());
    }

    #[test]
    fn scs_small_orders() {
        let lim = Limits::default();
        assert_eq!(scs(1, &lim).unwrap().scs, 0);
        assert_eq!(scs(2, &lim).unwrap().scs, 1);
        assert_eq!(scs(3, &lim).unwrap().scs, 2);
    }
}

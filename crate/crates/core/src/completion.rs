//! Completions of partial Latin squares.
//!
//! A partial square is encoded as exact cover over the constraints it leaves
//! open: every empty cell needs a symbol, every row and every column needs
//! each missing symbol once. Candidate blocks are the triples `(r, c, s)` that
//! fit. Exact covers are in bijection with completions.

use std::collections::HashMap;
use std::ops::ControlFlow;

use crate::error::Result;
use crate::exact_cover::{Cap, ExactCoverInstance};
use crate::limits::{guard, Limits};
use crate::square::{LatinSquare, PartialLatinSquare};

/// Exact cover encoding of a partial square plus the triple behind each block.
#[derive(Clone, Debug)]
pub struct LatinEncoding {
    pub instance: ExactCoverInstance,
    /// 0-based `(row, col)` and 1-based symbol per block id.
    pub candidates: Vec<(usize, usize, u8)>,
    base: PartialLatinSquare,
}

impl LatinEncoding {
    /// Applies the blocks of one exact cover to the encoded partial square.
    pub fn decode(&self, blocks: &[usize]) -> LatinSquare {
        let n = self.base.order();
        let mut cells = self.base.cells().to_vec();
        for &b in blocks {
            let (r, c, s) = self.candidates[b];
            cells[r * n + c] = s;
        }
        LatinSquare::from_cells_unchecked(n, cells)
    }
}

pub fn encode(p: &PartialLatinSquare) -> LatinEncoding {
    let n = p.order();
    let rows: Vec<u64> = (0..n).map(|r| p.row_mask(r)).collect();
    let cols: Vec<u64> = (0..n).map(|c| p.col_mask(c)).collect();

    // compact ids for open constraints; u32::MAX marks satisfied ones
    let mut ids = vec![u32::MAX; 3 * n * n];
    let mut next = 0u32;
    let mut open = |key: usize, ids: &mut Vec<u32>| {
        ids[key] = next;
        next += 1;
    };
    for r in 0..n {
        for c in 0..n {
            if p.get(r, c).is_none() {
                open(r * n + c, &mut ids);
            }
        }
    }
    for r in 0..n {
        for s in 0..n {
            if rows[r] >> s & 1 == 0 {
                open(n * n + r * n + s, &mut ids);
            }
        }
    }
    for c in 0..n {
        for s in 0..n {
            if cols[c] >> s & 1 == 0 {
                open(2 * n * n + c * n + s, &mut ids);
            }
        }
    }

    let mut blocks = Vec::new();
    let mut candidates = Vec::new();
    for r in 0..n {
        for c in 0..n {
            if p.get(r, c).is_some() {
                continue;
            }
            let used = rows[r] | cols[c];
            for s in 0..n {
                if used >> s & 1 == 0 {
                    blocks.push(vec![
                        ids[r * n + c] as usize,
                        ids[n * n + r * n + s] as usize,
                        ids[2 * n * n + c * n + s] as usize,
                    ]);
                    candidates.push((r, c, s as u8 + 1));
                }
            }
        }
    }
    let instance = ExactCoverInstance::new(next as usize, blocks)
        .expect("blocks reference open constraints only");
    LatinEncoding {
        instance,
        candidates,
        base: p.clone(),
    }
}

/// Up to `cap` distinct completions of `p`, in search order.
pub fn completions(p: &PartialLatinSquare, cap: Cap) -> Vec<LatinSquare> {
    let enc = encode(p);
    enc.instance
        .solve(cap)
        .iter()
        .map(|s| enc.decode(&s.chosen))
        .collect()
}

/// Streams completions to `visit` without collecting them.
pub fn for_each_completion(
    p: &PartialLatinSquare,
    mut visit: impl FnMut(LatinSquare) -> ControlFlow<()>,
) {
    let enc = encode(p);
    enc.instance.for_each_solution(|blocks| visit(enc.decode(blocks)));
}

/// Number of completions, saturating at `cap`.
pub fn count_completions(p: &PartialLatinSquare, cap: Cap) -> u64 {
    encode(p).instance.count(cap)
}

pub fn is_uniquely_completable(p: &PartialLatinSquare) -> bool {
    count_completions(p, Cap::UNIQUENESS) == 1
}

/// Every Latin square of order `n`, in search order.
pub fn all_latin_squares(n: usize) -> Result<Vec<LatinSquare>> {
    Ok(completions(&PartialLatinSquare::empty(n)?, Cap::Unbounded))
}

/// `|T_{n,k}|` for every `k` in `0..=n²`: the number of partial Latin squares
/// of order `n` with exactly `k` filled cells.
///
/// Counted row by row: the state is the set of symbols already used in each
/// column, and each row contributes a partial injection from columns to
/// symbols.
pub fn partial_latin_counts(n: usize, limits: &Limits) -> Result<Vec<u128>> {
    crate::square::check_order(n)?;
    guard("partial Latin square counting", n, limits.partial_count_max_n.min(8))?;

    // one packed row per partial injection: bit c*n + s means symbol s in column c
    let mut rows: Vec<(u64, usize)> = Vec::new();
    fn gen(n: usize, col: usize, used: u64, key: u64, size: usize, out: &mut Vec<(u64, usize)>) {
        if col == n {
            out.push((key, size));
            return;
        }
        gen(n, col + 1, used, key, size, out);
        for s in 0..n {
            if used >> s & 1 == 0 {
                gen(n, col + 1, used | 1 << s, key | 1 << (col * n + s), size + 1, out);
            }
        }
    }
    gen(n, 0, 0, 0, 0, &mut rows);

    let width = n * n + 1;
    let mut states: HashMap<u64, Vec<u128>> = HashMap::new();
    let mut init = vec![0u128; width];
    init[0] = 1;
    states.insert(0, init);
    for _ in 0..n {
        let mut next: HashMap<u64, Vec<u128>> = HashMap::new();
        for (&key, poly) in &states {
            for &(row, size) in &rows {
                if key & row != 0 {
                    continue;
                }
                let slot = next.entry(key | row).or_insert_with(|| vec![0; width]);
                for (k, &v) in poly.iter().enumerate() {
                    if v != 0 {
                        slot[k + size] += v;
                    }
                }
            }
        }
        states = next;
    }
    let mut total = vec![0u128; width];
    for poly in states.values() {
        for (t, v) in total.iter_mut().zip(poly) {
            *t += v;
        }
    }
    Ok(total)
}

/// `|T_{n,k}|`, the number of partial Latin squares of order `n` and size `k`.
pub fn enumerate_partial(n: usize, k: usize, limits: &Limits) -> Result<u128> {
    let counts = partial_latin_counts(n, limits)?;
    counts.get(k).copied().ok_or_else(|| {
        crate::error::Error::InvalidParameter(format!("size {k} exceeds n² = {}", n * n))
    })
}

//! Brute-force reference implementations. None of these touch the exact
//! cover solver; they only share the square types with the library.
#![allow(dead_code)]

use critset::{LatinSquare, PartialLatinSquare};
use rand::seq::SliceRandom;
use rand::Rng;

/// Latin squares of order `n`, filled row by row with plain backtracking.
pub fn latin_squares_rowwise(n: usize) -> Vec<Vec<u8>> {
    fn go(n: usize, cell: usize, grid: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        if cell == n * n {
            out.push(grid.clone());
            return;
        }
        let (r, c) = (cell / n, cell % n);
        for s in 1..=n as u8 {
            let clash = (0..c).any(|j| grid[r * n + j] == s) || (0..r).any(|i| grid[i * n + c] == s);
            if !clash {
                grid[cell] = s;
                go(n, cell + 1, grid, out);
                grid[cell] = 0;
            }
        }
    }
    let mut out = Vec::new();
    go(n, 0, &mut vec![0; n * n], &mut out);
    out
}

pub fn count_latin_rowwise(n: usize) -> u64 {
    fn go(n: usize, cell: usize, rows: &mut [u32], cols: &mut [u32]) -> u64 {
        if cell == n * n {
            return 1;
        }
        let (r, c) = (cell / n, cell % n);
        let mut total = 0;
        for s in 0..n {
            let bit = 1 << s;
            if rows[r] & bit == 0 && cols[c] & bit == 0 {
                rows[r] |= bit;
                cols[c] |= bit;
                total += go(n, cell + 1, rows, cols);
                rows[r] &= !bit;
                cols[c] &= !bit;
            }
        }
        total
    }
    go(n, 0, &mut vec![0; n], &mut vec![0; n])
}

/// `|T_{n,k}|` for every `k`, by visiting every partial Latin square.
pub fn partial_counts_bruteforce(n: usize) -> Vec<u128> {
    fn go(n: usize, cell: usize, size: usize, rows: &mut [u32], cols: &mut [u32], out: &mut [u128]) {
        if cell == n * n {
            out[size] += 1;
            return;
        }
        let (r, c) = (cell / n, cell % n);
        go(n, cell + 1, size, rows, cols, out);
        for s in 0..n {
            let bit = 1 << s;
            if rows[r] & bit == 0 && cols[c] & bit == 0 {
                rows[r] |= bit;
                cols[c] |= bit;
                go(n, cell + 1, size + 1, rows, cols, out);
                rows[r] &= !bit;
                cols[c] &= !bit;
            }
        }
    }
    let mut out = vec![0u128; n * n + 1];
    go(n, 0, 0, &mut vec![0; n], &mut vec![0; n], &mut out);
    out
}

/// Squares among `all` that agree with every filled cell of `p`.
pub fn extensions<'a>(p: &PartialLatinSquare, all: &'a [Vec<u8>]) -> Vec<&'a Vec<u8>> {
    all.iter()
        .filter(|g| p.filled().all(|(r, c, s)| g[r * p.order() + c] == s))
        .collect()
}

pub fn random_latin<R: Rng>(all: &[Vec<u8>], n: usize, rng: &mut R) -> LatinSquare {
    LatinSquare::from_cells(n, all[rng.random_range(0..all.len())].clone()).unwrap()
}

/// `k` random cells of `l`.
pub fn random_subset<R: Rng>(l: &LatinSquare, k: usize, rng: &mut R) -> PartialLatinSquare {
    let n = l.order();
    let mut cells: Vec<(usize, usize)> = (0..n).flat_map(|r| (0..n).map(move |c| (r, c))).collect();
    cells.shuffle(rng);
    l.restrict(&cells[..k]).unwrap()
}

/// A random partial Latin square built by inserting random legal entries.
pub fn random_partial<R: Rng>(n: usize, attempts: usize, rng: &mut R) -> PartialLatinSquare {
    let mut p = PartialLatinSquare::empty(n).unwrap();
    for _ in 0..attempts {
        let (r, c, s) = (rng.random_range(0..n), rng.random_range(0..n), rng.random_range(1..=n as u8));
        if p.get(r, c).is_none() {
            let _ = p.place(r, c, s);
        }
    }
    p
}

/// Number of subsets of the universe shattered by the concepts.
pub fn shattered_count_bruteforce(universe: usize, concepts: &[u128]) -> usize {
    assert!(universe <= 20);
    (0u128..1 << universe)
        .filter(|&s| {
            let mut traces: Vec<u128> = concepts.iter().map(|c| c & s).collect();
            traces.sort_unstable();
            traces.dedup();
            traces.len() == 1usize << s.count_ones()
        })
        .count()
}

pub fn vc_bruteforce(universe: usize, concepts: &[u128]) -> usize {
    (0u128..1 << universe)
        .filter(|&s| {
            let mut traces: Vec<u128> = concepts.iter().map(|c| c & s).collect();
            traces.sort_unstable();
            traces.dedup();
            traces.len() == 1usize << s.count_ones()
        })
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0)
}

/// Smallest number of points whose labels single out concept `i`.
pub fn td_bruteforce(universe: usize, concepts: &[u128], i: usize) -> usize {
    let target = concepts[i];
    (0..=universe)
        .find(|&k| {
            subsets_of_size(universe, k).into_iter().any(|s| {
                concepts
                    .iter()
                    .enumerate()
                    .all(|(j, &c)| j == i || (c ^ target) & s != 0)
            })
        })
        .expect("distinct concepts are separable")
}

pub fn subsets_of_size(universe: usize, k: usize) -> Vec<u128> {
    fn go(start: usize, universe: usize, k: usize, acc: u128, out: &mut Vec<u128>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in start..universe {
            go(i + 1, universe, k - 1, acc | 1 << i, out);
        }
    }
    let mut out = Vec::new();
    go(0, universe, k, 0, &mut out);
    out
}

/// `max over non-empty subfamilies of min TD`, with TD recomputed by brute force.
pub fn rtd_bruteforce(universe: usize, concepts: &[u128]) -> usize {
    let m = concepts.len();
    (1u32..1 << m)
        .map(|f| {
            let sub: Vec<u128> = (0..m).filter(|&i| f >> i & 1 == 1).map(|i| concepts[i]).collect();
            (0..sub.len()).map(|i| td_bruteforce(universe, &sub, i)).min().unwrap()
        })
        .max()
        .unwrap_or(0)
}

/// Random class of distinct concepts.
pub fn random_class<R: Rng>(universe: usize, max_concepts: usize, rng: &mut R) -> Vec<u128> {
    let m = rng.random_range(1..=max_concepts.min(1 << universe));
    let mut all: Vec<u128> = (0..1u128 << universe).collect();
    all.shuffle(rng);
    all.truncate(m);
    all
}

/// `ln n!` by direct summation.
pub fn ln_factorial_sum(n: u64) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

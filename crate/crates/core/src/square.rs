//! Latin and partial Latin squares, their triple representation, and the grid
//! and structured file formats.
//!
//! Rust-side positions are 0-based `(row, col)` pairs. Symbols are always
//! `1..=n`. Everything that crosses an I/O boundary ([`Triple`], the grid
//! format, the structured format, error messages) is 1-based.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest supported order. Row and column symbol sets are kept in `u64` masks.
pub const MAX_ORDER: usize = 64;

pub(crate) fn check_order(n: usize) -> Result<()> {
    if n == 0 || n > MAX_ORDER {
        return Err(Error::UnsupportedOrder(n));
    }
    Ok(())
}

/// An entry `(row, col, sym)`, all 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub row: usize,
    pub col: usize,
    pub sym: usize,
}

impl Triple {
    pub fn new(row: usize, col: usize, sym: usize) -> Self {
        Triple { row, col, sym }
    }

    fn in_range(&self, n: usize) -> bool {
        (1..=n).contains(&self.row) && (1..=n).contains(&self.col) && (1..=n).contains(&self.sym)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.row, self.col, self.sym)
    }
}

/// A set of entries no two of which share a `(row, col)`, `(row, sym)` or
/// `(col, sym)` pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TripleSet {
    order: usize,
    triples: BTreeSet<Triple>,
}

impl TripleSet {
    pub fn new(order: usize, triples: impl IntoIterator<Item = Triple>) -> Result<Self> {
        let set = TripleSet {
            order,
            triples: triples.into_iter().collect(),
        };
        // validation goes through the grid so the Latin rules live in one place
        PartialLatinSquare::from_triples(&set)?;
        Ok(set)
    }

    pub fn empty(order: usize) -> Result<Self> {
        check_order(order)?;
        Ok(TripleSet {
            order,
            triples: BTreeSet::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> + '_ {
        self.triples.iter()
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.triples.contains(t)
    }

    /// The same set with `t` removed.
    pub fn without(&self, t: &Triple) -> TripleSet {
        let mut triples = self.triples.clone();
        triples.remove(t);
        TripleSet {
            order: self.order,
            triples,
        }
    }

    /// Filled positions as 0-based `(row, col)` pairs, in row-major order.
    pub fn positions(&self) -> Vec<(usize, usize)> {
        self.triples.iter().map(|t| (t.row - 1, t.col - 1)).collect()
    }

    pub fn to_partial(&self) -> PartialLatinSquare {
        PartialLatinSquare::from_triples(self).expect("triple sets are validated on construction")
    }
}

/// An `n × n` array over `1..=n` with optional cells; each symbol occurs at
/// most once per row and per column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PartialLatinSquare {
    n: usize,
    cells: Vec<u8>,
    size: usize,
}

impl PartialLatinSquare {
    pub fn empty(n: usize) -> Result<Self> {
        check_order(n)?;
        Ok(PartialLatinSquare {
            n,
            cells: vec![0; n * n],
            size: 0,
        })
    }

    /// Row-major cells, `0` meaning empty.
    pub fn from_cells(n: usize, cells: Vec<u8>) -> Result<Self> {
        check_order(n)?;
        if cells.len() != n * n {
            return Err(Error::DimensionMismatch {
                row: cells.len() / n.max(1) + 1,
                expected: n * n,
                found: cells.len(),
            });
        }
        let mut p = PartialLatinSquare::empty(n)?;
        for (idx, &s) in cells.iter().enumerate() {
            if s != 0 {
                p.place(idx / n, idx % n, s)?;
            }
        }
        Ok(p)
    }

    pub fn from_triples(set: &TripleSet) -> Result<Self> {
        let n = set.order;
        let mut p = PartialLatinSquare::empty(n)?;
        for t in &set.triples {
            if !t.in_range(n) {
                if !(1..=n).contains(&t.row) || !(1..=n).contains(&t.col) {
                    return Err(Error::PositionOutOfRange {
                        row: t.row,
                        col: t.col,
                        order: n,
                    });
                }
                return Err(Error::SymbolOutOfRange {
                    row: t.row,
                    col: t.col,
                    sym: t.sym,
                    order: n,
                });
            }
            if p.get(t.row - 1, t.col - 1).is_some() {
                return Err(Error::LatinViolation {
                    row: t.row,
                    col: t.col,
                    sym: t.sym,
                });
            }
            p.place(t.row - 1, t.col - 1, t.sym as u8)?;
        }
        Ok(p)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Number of filled cells.
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_full(&self) -> bool {
        self.size == self.n * self.n
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn get(&self, row: usize, col: usize) -> Option<u8> {
        match self.cells[row * self.n + col] {
            0 => None,
            s => Some(s),
        }
    }

    /// Symbols present in `row`, bit `s - 1` for symbol `s`.
    pub fn row_mask(&self, row: usize) -> u64 {
        self.cells[row * self.n..(row + 1) * self.n]
            .iter()
            .filter(|&&s| s != 0)
            .fold(0, |m, &s| m | 1 << (s - 1))
    }

    /// Symbols present in `col`, bit `s - 1` for symbol `s`.
    pub fn col_mask(&self, col: usize) -> u64 {
        (0..self.n)
            .map(|r| self.cells[r * self.n + col])
            .filter(|&s| s != 0)
            .fold(0, |m, s| m | 1 << (s - 1))
    }

    /// Fills an empty cell, enforcing the Latin property.
    pub fn place(&mut self, row: usize, col: usize, sym: u8) -> Result<()> {
        let n = self.n;
        if row >= n || col >= n {
            return Err(Error::PositionOutOfRange {
                row: row + 1,
                col: col + 1,
                order: n,
            });
        }
        if sym == 0 || sym as usize > n {
            return Err(Error::SymbolOutOfRange {
                row: row + 1,
                col: col + 1,
                sym: sym as usize,
                order: n,
            });
        }
        if self.cells[row * n + col] != 0 {
            return Err(Error::CellFilled {
                row: row + 1,
                col: col + 1,
            });
        }
        let bit = 1u64 << (sym - 1);
        if (self.row_mask(row) | self.col_mask(col)) & bit != 0 {
            return Err(Error::LatinViolation {
                row: row + 1,
                col: col + 1,
                sym: sym as usize,
            });
        }
        self.cells[row * n + col] = sym;
        self.size += 1;
        Ok(())
    }

    pub fn clear(&mut self, row: usize, col: usize) {
        let c = &mut self.cells[row * self.n + col];
        if *c != 0 {
            *c = 0;
            self.size -= 1;
        }
    }

    /// Filled cells as `(row, col, sym)` with 0-based positions, row-major.
    pub fn filled(&self) -> impl Iterator<Item = (usize, usize, u8)> + '_ {
        let n = self.n;
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &s)| s != 0)
            .map(move |(i, &s)| (i / n, i % n, s))
    }

    pub fn to_triples(&self) -> TripleSet {
        TripleSet {
            order: self.n,
            triples: self
                .filled()
                .map(|(r, c, s)| Triple::new(r + 1, c + 1, s as usize))
                .collect(),
        }
    }

    /// Whether every filled cell of `self` carries the same symbol in `other`.
    pub fn is_subset_of(&self, other: &PartialLatinSquare) -> bool {
        self.n == other.n
            && self
                .cells
                .iter()
                .zip(&other.cells)
                .all(|(&a, &b)| a == 0 || a == b)
    }

    pub fn to_latin(&self) -> Result<LatinSquare> {
        if let Some(idx) = self.cells.iter().position(|&s| s == 0) {
            return Err(Error::Incomplete {
                row: idx / self.n + 1,
                col: idx % self.n + 1,
            });
        }
        Ok(LatinSquare {
            n: self.n,
            cells: self.cells.clone(),
        })
    }

    pub fn to_structured(&self) -> StructuredSquare {
        StructuredSquare::from(&self.to_triples())
    }
}

impl fmt::Debug for PartialLatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PartialLatinSquare(\n{}\n)", render_grid(self))
    }
}

impl fmt::Display for PartialLatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_grid(self))
    }
}

impl FromStr for PartialLatinSquare {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_grid(s)
    }
}

/// A completely filled Latin square.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LatinSquare {
    n: usize,
    cells: Vec<u8>,
}

impl LatinSquare {
    pub fn from_cells(n: usize, cells: Vec<u8>) -> Result<Self> {
        PartialLatinSquare::from_cells(n, cells)?.to_latin()
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> Result<Self> {
        let n = rows.len();
        for (i, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(Error::DimensionMismatch {
                    row: i + 1,
                    expected: n,
                    found: r.len(),
                });
            }
        }
        Self::from_cells(n, rows.concat())
    }

    /// Trusted constructor for cells produced by a search that already
    /// enforces the Latin property.
    pub(crate) fn from_cells_unchecked(n: usize, cells: Vec<u8>) -> Self {
        debug_assert!(Self::from_cells(n, cells.clone()).is_ok());
        LatinSquare { n, cells }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> u8 {
        self.cells[row * self.n + col]
    }

    pub fn cells(&self) -> &[u8] {
        &self.cells
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> + '_ {
        self.cells.chunks(self.n)
    }

    pub fn to_partial(&self) -> PartialLatinSquare {
        PartialLatinSquare {
            n: self.n,
            cells: self.cells.clone(),
            size: self.n * self.n,
        }
    }

    pub fn to_triples(&self) -> TripleSet {
        self.to_partial().to_triples()
    }

    /// Row of the cell in `col` holding `sym`.
    pub fn row_of(&self, col: usize, sym: u8) -> usize {
        (0..self.n)
            .find(|&r| self.get(r, col) == sym)
            .expect("every symbol occurs in every column")
    }

    /// Errors with the first entry of `set` that is not an entry of `self`.
    pub fn check_contains(&self, set: &TripleSet) -> Result<()> {
        if set.order() != self.n {
            return Err(Error::OrderMismatch {
                left: set.order(),
                right: self.n,
            });
        }
        match set
            .iter()
            .find(|t| self.get(t.row - 1, t.col - 1) as usize != t.sym)
        {
            Some(t) => Err(Error::NotContained {
                row: t.row,
                col: t.col,
                sym: t.sym,
            }),
            None => Ok(()),
        }
    }

    /// Errors unless every filled cell of `p` agrees with `self`.
    pub fn check_extends(&self, p: &PartialLatinSquare) -> Result<()> {
        self.check_contains(&p.to_triples())
    }

    /// The partial square keeping only the cells at `positions` (0-based).
    pub fn restrict(&self, positions: &[(usize, usize)]) -> Result<PartialLatinSquare> {
        let n = self.n;
        let mut cells = vec![0u8; n * n];
        let mut size = 0;
        for &(r, c) in positions {
            if r >= n || c >= n {
                return Err(Error::PositionOutOfRange {
                    row: r + 1,
                    col: c + 1,
                    order: n,
                });
            }
            if cells[r * n + c] == 0 {
                size += 1;
            }
            cells[r * n + c] = self.cells[r * n + c];
        }
        Ok(PartialLatinSquare { n, cells, size })
    }

    /// Restriction to the positions whose bit is set in `mask` (bit `r*n + c`).
    pub(crate) fn restrict_mask(&self, mask: u64) -> PartialLatinSquare {
        let n = self.n;
        let mut cells = vec![0u8; n * n];
        let mut m = mask;
        while m != 0 {
            let i = m.trailing_zeros() as usize;
            cells[i] = self.cells[i];
            m &= m - 1;
        }
        PartialLatinSquare {
            n,
            cells,
            size: mask.count_ones() as usize,
        }
    }
}

impl fmt::Debug for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LatinSquare(\n{}\n)", render_grid(&self.to_partial()))
    }
}

impl fmt::Display for LatinSquare {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_grid(&self.to_partial()))
    }
}

impl FromStr for LatinSquare {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_grid(s)?.to_latin()
    }
}

/// Parses the grid format: one row per line (a `/` also ends a row), tokens
/// separated by whitespace, each token a symbol `1..=n` or `.` (or `0`) for an
/// empty cell. The order is the number of rows.
pub fn parse_grid(text: &str) -> Result<PartialLatinSquare> {
    let rows: Vec<Vec<&str>> = text
        .split(['\n', '/'])
        .map(|line| line.split_whitespace().collect::<Vec<_>>())
        .filter(|tokens| !tokens.is_empty())
        .collect();
    let n = rows.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    check_order(n)?;
    let mut p = PartialLatinSquare::empty(n)?;
    for (r, tokens) in rows.iter().enumerate() {
        if tokens.len() != n {
            return Err(Error::DimensionMismatch {
                row: r + 1,
                expected: n,
                found: tokens.len(),
            });
        }
        for (c, tok) in tokens.iter().enumerate() {
            if *tok == "." || *tok == "0" {
                continue;
            }
            let sym: usize = tok.parse().map_err(|_| Error::BadToken {
                row: r + 1,
                col: c + 1,
                token: tok.to_string(),
            })?;
            if sym == 0 || sym > n {
                return Err(Error::SymbolOutOfRange {
                    row: r + 1,
                    col: c + 1,
                    sym,
                    order: n,
                });
            }
            p.place(r, c, sym as u8)?;
        }
    }
    Ok(p)
}

/// Renders the grid format: rows separated by `\n`, no trailing newline,
/// empty cells as `.`.
pub fn render_grid(p: &PartialLatinSquare) -> String {
    let n = p.order();
    let mut out = String::with_capacity(n * n * 3);
    for r in 0..n {
        if r > 0 {
            out.push('\n');
        }
        for c in 0..n {
            if c > 0 {
                out.push(' ');
            }
            match p.get(r, c) {
                Some(s) => out.push_str(&s.to_string()),
                None => out.push('.'),
            }
        }
    }
    out
}

/// The structured sidecar record `{"order": n, "triples": [[r, c, s], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredSquare {
    pub order: usize,
    pub triples: Vec<[usize; 3]>,
}

impl From<&TripleSet> for StructuredSquare {
    fn from(set: &TripleSet) -> Self {
        StructuredSquare {
            order: set.order(),
            triples: set.iter().map(|t| [t.row, t.col, t.sym]).collect(),
        }
    }
}

impl StructuredSquare {
    pub fn to_triples(&self) -> Result<TripleSet> {
        TripleSet::new(
            self.order,
            self.triples.iter().map(|&[r, c, s]| Triple::new(r, c, s)),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Parses either format; structured input is recognized by a leading `{`.
pub fn parse_any(text: &str) -> Result<PartialLatinSquare> {
    if text.trim_start().starts_with('{') {
        StructuredSquare::from_json(text)?.to_triples()?.to_partial_checked()
    } else {
        parse_grid(text)
    }
}

impl TripleSet {
    fn to_partial_checked(&self) -> Result<PartialLatinSquare> {
        PartialLatinSquare::from_triples(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE_PARTIAL: &str = "1 . . . / . 2 . . / . . . . / . 4 2 .";

    #[test]
    fn parses_sample_square_partial() {
        let p = parse_grid(SAMPLE_PARTIAL).unwrap();
        assert_eq!(p.order(), 4);
        assert_eq!(p.size(), 4);
        assert_eq!(render_grid(&p), "1 . . .\n. 2 . .\n. . . .\n. 4 2 .");
        let t: Vec<_> = p.to_triples().iter().copied().collect();
        assert_eq!(
            t,
            vec![
                Triple::new(1, 1, 1),
                Triple::new(2, 2, 2),
                Triple::new(4, 2, 4),
                Triple::new(4, 3, 2)
            ]
        );
    }

    #[test]
    fn order_one() {
        let p = parse_grid("1").unwrap();
        assert_eq!(p.size(), 1);
        assert!(p.is_full());
        assert_eq!(render_grid(&p), "1");
    }

    #[test]
    fn row_duplicate_reports_second_cell() {
        match parse_grid("1 1 / . 2") {
            Err(Error::LatinViolation { row, col, sym }) => assert_eq!((row, col, sym), (1, 2, 1)),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn column_duplicate_and_range_errors() {
        assert!(matches!(
            parse_grid("1 .\n1 ."),
            Err(Error::LatinViolation { row: 2, col: 1, .. })
        ));
        assert!(matches!(
            parse_grid("1 3\n. ."),
            Err(Error::SymbolOutOfRange { row: 1, col: 2, sym: 3, .. })
        ));
        assert!(matches!(
            parse_grid("1 .\n. . ."),
            Err(Error::DimensionMismatch { row: 2, expected: 2, found: 3 })
        ));
        assert!(matches!(parse_grid("x ."), Err(Error::DimensionMismatch { .. })));
        assert!(matches!(parse_grid("x .\n. ."), Err(Error::BadToken { row: 1, col: 1, .. })));
        assert!(matches!(parse_grid("  \n"), Err(Error::EmptyInput)));
    }

    #[test]
    fn zero_is_an_empty_alias_never_emitted() {
        let p = parse_grid("0 1\n1 0").unwrap();
        assert_eq!(render_grid(&p), ". 1\n1 .");
    }

    #[test]
    fn empty_order_two_renders_dots() {
        let p = PartialLatinSquare::empty(2).unwrap();
        assert_eq!(render_grid(&p), ". .\n. .");
        assert!(p.to_triples().is_empty());
    }

    #[test]
    fn from_triples_rejects_shared_row_symbol() {
        let err = TripleSet::new(2, [Triple::new(1, 1, 1), Triple::new(1, 2, 1)]).unwrap_err();
        assert!(matches!(err, Error::LatinViolation { .. }));
        let err = TripleSet::new(2, [Triple::new(1, 1, 1), Triple::new(1, 1, 2)]).unwrap_err();
        assert!(matches!(err, Error::LatinViolation { row: 1, col: 1, .. }));
        let err = TripleSet::new(2, [Triple::new(3, 1, 1)]).unwrap_err();
        assert!(matches!(err, Error::PositionOutOfRange { .. }));
    }

    #[test]
    fn restrict_sample_square() {
        let full: LatinSquare = "1 3 4 2\n4 2 1 3\n2 1 3 4\n3 4 2 1".parse().unwrap();
        let p = full.restrict(&[(0, 0), (1, 1), (3, 1), (3, 2)]).unwrap();
        assert_eq!(p, parse_grid(SAMPLE_PARTIAL).unwrap());
        let all: Vec<_> = (0..4).flat_map(|r| (0..4).map(move |c| (r, c))).collect();
        assert_eq!(full.restrict(&all).unwrap(), full.to_partial());
        assert_eq!(full.restrict(&[]).unwrap().size(), 0);
        assert!(matches!(
            full.restrict(&[(4, 0)]),
            Err(Error::PositionOutOfRange { row: 5, col: 1, .. })
        ));
    }

    #[test]
    fn structured_round_trip_is_bit_exact() {
        let p = parse_grid(SAMPLE_PARTIAL).unwrap();
        let json = p.to_structured().to_json();
        assert_eq!(json, r#"{"order":4,"triples":[[1,1,1],[2,2,2],[4,2,4],[4,3,2]]}"#);
        assert_eq!(parse_any(&json).unwrap(), p);
        assert_eq!(StructuredSquare::from_json(&json).unwrap().to_json(), json);
    }

    #[test]
    fn latin_square_rejects_incomplete() {
        assert!(matches!(
            "1 .\n2 1".parse::<LatinSquare>(),
            Err(Error::Incomplete { row: 1, col: 2 })
        ));
        assert!("1 2\n2 1".parse::<LatinSquare>().is_ok());
    }
}

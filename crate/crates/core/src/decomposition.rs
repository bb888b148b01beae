//! Tripartite leave graphs and triangle decompositions.
//!
//! A Latin square of order `n` is the same thing as a partition of the edges
//! of `K_{n,n,n}` (rows, columns, symbols) into triangles. Removing the
//! triangles of a partial square leaves a graph whose triangle decompositions
//! are exactly its completions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact_cover::{Cap, ExactCoverInstance};
use crate::limits::{guard, Limits};
use crate::square::{check_order, LatinSquare, PartialLatinSquare, StructuredSquare, Triple, TripleSet};

/// Default slack `γ` added to the decomposition threshold `101/52`.
pub const DEFAULT_GAMMA: f64 = 0.01;

/// Heavy-line threshold used at small orders. Thresholds below about `3/n`
/// mark every touched line heavy and the padding fills the whole square.
pub const DESK_DELTA: f64 = 0.75;

/// Minimum-degree factor of the triangle decomposition threshold.
pub const DECOMPOSITION_THRESHOLD: f64 = 101.0 / 52.0;

/// Three parts of size `n` (rows R, columns C, symbols S) and the three
/// bipartite adjacency matrices between them. `rc[r]` has bit `c` set when
/// row vertex `r` is adjacent to column vertex `c`; likewise `rs`, `cs`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripartiteGraph {
    pub n: usize,
    pub rc: Vec<u64>,
    pub rs: Vec<u64>,
    pub cs: Vec<u64>,
}

/// The part a vertex belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Part {
    Row,
    Col,
    Sym,
}

impl TripartiteGraph {
    pub fn complete(n: usize) -> Result<Self> {
        check_order(n)?;
        let full = if n == 64 { u64::MAX } else { (1 << n) - 1 };
        Ok(TripartiteGraph {
            n,
            rc: vec![full; n],
            rs: vec![full; n],
            cs: vec![full; n],
        })
    }

    pub fn edge_count(&self) -> usize {
        [&self.rc, &self.rs, &self.cs]
            .iter()
            .flat_map(|m| m.iter())
            .map(|r| r.count_ones() as usize)
            .sum()
    }

    fn column_degree(m: &[u64], j: usize) -> usize {
        m.iter().filter(|&&r| r >> j & 1 == 1).count()
    }

    /// Neighbours of a vertex in each of the other two parts, in the order
    /// (R, C, S) with the vertex's own part skipped.
    pub fn cross_degrees(&self, part: Part, v: usize) -> (usize, usize) {
        match part {
            Part::Row => (self.rc[v].count_ones() as usize, self.rs[v].count_ones() as usize),
            Part::Col => (
                Self::column_degree(&self.rc, v),
                self.cs[v].count_ones() as usize,
            ),
            Part::Sym => (
                Self::column_degree(&self.rs, v),
                Self::column_degree(&self.cs, v),
            ),
        }
    }

    pub fn degree(&self, part: Part, v: usize) -> usize {
        let (a, b) = self.cross_degrees(part, v);
        a + b
    }

    fn vertices(&self) -> impl Iterator<Item = (Part, usize)> + '_ {
        [Part::Row, Part::Col, Part::Sym]
            .into_iter()
            .flat_map(move |p| (0..self.n).map(move |v| (p, v)))
    }

    /// Removes the edge between two vertices of different parts (0-based).
    pub fn remove_edge(&mut self, a: (Part, usize), b: (Part, usize)) {
        let (m, i, j) = match (a, b) {
            ((Part::Row, r), (Part::Col, c)) | ((Part::Col, c), (Part::Row, r)) => (&mut self.rc, r, c),
            ((Part::Row, r), (Part::Sym, s)) | ((Part::Sym, s), (Part::Row, r)) => (&mut self.rs, r, s),
            ((Part::Col, c), (Part::Sym, s)) | ((Part::Sym, s), (Part::Col, c)) => (&mut self.cs, c, s),
            _ => panic!("no edges inside a part"),
        };
        m[i] &= !(1 << j);
    }

    fn has_triangle(&self, r: usize, c: usize, s: usize) -> bool {
        self.rc[r] >> c & 1 == 1 && self.rs[r] >> s & 1 == 1 && self.cs[c] >> s & 1 == 1
    }
}

/// `K_{n,n,n}` minus the triangle of every entry of `p`.
pub fn leave_graph(p: &PartialLatinSquare) -> TripartiteGraph {
    let mut g = TripartiteGraph::complete(p.order()).expect("valid order");
    for (r, c, s) in p.filled() {
        let s = s as usize - 1;
        g.rc[r] &= !(1 << c);
        g.rs[r] &= !(1 << s);
        g.cs[c] &= !(1 << s);
    }
    g
}

/// All three parts have the same size. Always true for this representation.
pub fn is_balanced(g: &TripartiteGraph) -> bool {
    g.rc.len() == g.n && g.rs.len() == g.n && g.cs.len() == g.n
}

/// Every vertex has as many neighbours in one other part as in the other.
pub fn is_locally_balanced(g: &TripartiteGraph) -> bool {
    g.vertices().all(|(p, v)| {
        let (a, b) = g.cross_degrees(p, v);
        a == b
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub gamma: f64,
    /// Smallest degree among vertices of positive degree; 0 if there are none.
    pub min_degree: usize,
    /// Part size once zero-degree vertices are ignored (largest over the parts).
    pub effective_order: usize,
    pub zero_degree_vertices: usize,
    /// `(101/52 + γ) · effective_order`.
    pub threshold: f64,
    pub satisfied: bool,
    /// `min_degree / effective_order`, for comparing against the threshold factor.
    pub degree_ratio: Option<f64>,
}

/// Checks the minimum-degree hypothesis of the triangle decomposition
/// theorem after discarding isolated vertices. Only meaningful as a distance
/// report at small `n`: the theorem also needs `n` beyond an unspecified `n₀`.
pub fn decomposition_hypothesis(g: &TripartiteGraph, gamma: f64) -> Result<HypothesisReport> {
    if !(gamma > 0.0) {
        return Err(Error::InvalidParameter(format!("gamma must be positive, got {gamma}")));
    }
    let mut live = [0usize; 3];
    let mut zero = 0;
    let mut min_degree = usize::MAX;
    for (p, v) in g.vertices() {
        let d = g.degree(p, v);
        if d == 0 {
            zero += 1;
        } else {
            live[p as usize] += 1;
            min_degree = min_degree.min(d);
        }
    }
    let effective_order = *live.iter().max().expect("three parts");
    let threshold = (DECOMPOSITION_THRESHOLD + gamma) * effective_order as f64;
    let min_degree = if min_degree == usize::MAX { 0 } else { min_degree };
    Ok(HypothesisReport {
        gamma,
        min_degree,
        effective_order,
        zero_degree_vertices: zero,
        threshold,
        satisfied: effective_order == 0 || min_degree as f64 >= threshold,
        degree_ratio: (effective_order > 0).then(|| min_degree as f64 / effective_order as f64),
    })
}

/// Edge-disjoint triangles `(r, c, s)` (1-based labels) covering every edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K3Decomposition {
    pub triangles: Vec<[usize; 3]>,
}

impl K3Decomposition {
    /// Triangle-by-triangle check against `g`.
    pub fn verify(&self, g: &TripartiteGraph) -> bool {
        let mut left = g.clone();
        for &[r, c, s] in &self.triangles {
            let (r, c, s) = (r - 1, c - 1, s - 1);
            if !left.has_triangle(r, c, s) {
                return false;
            }
            left.rc[r] &= !(1 << c);
            left.rs[r] &= !(1 << s);
            left.cs[c] &= !(1 << s);
        }
        left.edge_count() == 0
    }
}

struct TriangleCover {
    instance: ExactCoverInstance,
    triangles: Vec<[usize; 3]>,
}

fn triangle_cover(g: &TripartiteGraph) -> TriangleCover {
    let n = g.n;
    // edge ids: rc then rs then cs, each n*n wide, compacted to present edges
    let mut id = vec![u32::MAX; 3 * n * n];
    let mut next = 0;
    for (k, m) in [&g.rc, &g.rs, &g.cs].into_iter().enumerate() {
        for i in 0..n {
            for j in 0..n {
                if m[i] >> j & 1 == 1 {
                    id[k * n * n + i * n + j] = next;
                    next += 1;
                }
            }
        }
    }
    let mut blocks = Vec::new();
    let mut triangles = Vec::new();
    for r in 0..n {
        for c in 0..n {
            for s in 0..n {
                if g.has_triangle(r, c, s) {
                    blocks.push(vec![
                        id[r * n + c] as usize,
                        id[n * n + r * n + s] as usize,
                        id[2 * n * n + c * n + s] as usize,
                    ]);
                    triangles.push([r + 1, c + 1, s + 1]);
                }
            }
        }
    }
    TriangleCover {
        instance: ExactCoverInstance::new(next as usize, blocks).expect("edges exist"),
        triangles,
    }
}

/// A triangle decomposition of `g`, found by exact cover over its edges.
pub fn k3_decompose(g: &TripartiteGraph, limits: &Limits) -> Result<Option<K3Decomposition>> {
    guard("triangle decomposition", g.n, limits.decompose_max_n)?;
    if g.edge_count() % 3 != 0 {
        return Ok(None);
    }
    let tc = triangle_cover(g);
    Ok(tc.instance.solve(Cap::Bounded(1)).first().map(|sol| K3Decomposition {
        triangles: sol.chosen.iter().map(|&b| tc.triangles[b]).collect(),
    }))
}

/// Number of triangle decompositions of `g`, saturating at `cap`.
pub fn count_k3_decompositions(g: &TripartiteGraph, cap: Cap, limits: &Limits) -> Result<u64> {
    guard("triangle decomposition", g.n, limits.decompose_max_n)?;
    if g.edge_count() % 3 != 0 {
        return Ok(0);
    }
    Ok(triangle_cover(g).instance.count(cap))
}

/// What the second-completion pipeline did.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineTrace {
    pub delta: f64,
    /// Lines with at least `δn` filled entries in `P` (1-based).
    pub heavy_rows: Vec<usize>,
    pub heavy_cols: Vec<usize>,
    pub heavy_syms: Vec<usize>,
    pub m: usize,
    pub padded_rows: Vec<usize>,
    pub padded_cols: Vec<usize>,
    pub padded_syms: Vec<usize>,
    pub p1_size: usize,
    pub p2_size: usize,
    /// Whether `P₂` has exactly `m` full rows, columns and symbols.
    pub p2_has_exactly_m_full_lines: bool,
    /// The `(x, y, z) ∈ L \ P₂` and replacement `z'` that succeeded, or the
    /// first one tried when none did.
    pub entry: Option<[usize; 3]>,
    pub replacement: Option<usize>,
    /// Number of `(x, y, z')` choices tried.
    pub attempts: usize,
    /// `2n − 2(δn + 2m + 1)`, the degree bound used in the argument.
    pub degree_bound: f64,
    pub hypothesis: Option<HypothesisReport>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SecondCompletion {
    pub square: Option<StructuredSquare>,
    pub trace: PipelineTrace,
}

impl SecondCompletion {
    pub fn latin(&self) -> Option<LatinSquare> {
        self.square
            .as_ref()
            .map(|s| s.to_triples().expect("pipeline output is valid").to_partial().to_latin().expect("full"))
    }
}

fn line_counts(p: &PartialLatinSquare) -> ([Vec<usize>; 3], usize) {
    let n = p.order();
    let mut rows = vec![0; n];
    let mut cols = vec![0; n];
    let mut syms = vec![0; n];
    for (r, c, s) in p.filled() {
        rows[r] += 1;
        cols[c] += 1;
        syms[s as usize - 1] += 1;
    }
    ([rows, cols, syms], n)
}

/// Fills every entry of `l` lying in the listed lines (0-based).
fn fill_lines(p: &mut PartialLatinSquare, l: &LatinSquare, part: Part, lines: &[usize]) {
    let n = l.order();
    for &x in lines {
        for y in 0..n {
            let (r, c) = match part {
                Part::Row => (x, y),
                Part::Col => (y, x),
                Part::Sym => (l.row_of(y, x as u8 + 1), y),
            };
            if p.get(r, c).is_none() {
                p.place(r, c, l.get(r, c)).expect("entries of L never conflict");
            }
        }
    }
}

/// Runs the second-completion argument at desk scale: complete the heavy
/// lines of `P` from `L`, pad to `m` complete rows, columns and symbols,
/// replace one entry `(x, y, z)` of `L` outside the result by `(x, y, z')`,
/// and look for a completion through a triangle decomposition of the leave.
///
/// Candidate `(x, y, z)` are tried in lexicographic order and `z'` in
/// increasing order (`z' ≠ z`); the first decomposable choice wins. `Ok` with
/// no square means no choice completed, which can happen even when `P` has
/// another completion because padding pins more of `L` than `P` does.
pub fn second_completion(
    p: &PartialLatinSquare,
    l: &LatinSquare,
    delta: f64,
    limits: &Limits,
) -> Result<SecondCompletion> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("delta must lie in (0, 1), got {delta}")));
    }
    l.check_extends(p)?;
    let n = l.order();
    guard("triangle decomposition", n, limits.decompose_max_n)?;

    let threshold = delta * n as f64;
    let (counts, _) = line_counts(p);
    let heavy: Vec<Vec<usize>> = counts
        .iter()
        .map(|c| (0..n).filter(|&i| c[i] as f64 >= threshold).collect())
        .collect();
    let parts = [Part::Row, Part::Col, Part::Sym];

    let mut p1 = p.clone();
    for (part, lines) in parts.iter().zip(&heavy) {
        fill_lines(&mut p1, l, *part, lines);
    }
    let m = heavy.iter().map(Vec::len).max().expect("three parts");
    let mut p2 = p1.clone();
    let mut padded: Vec<Vec<usize>> = Vec::new();
    for (part, lines) in parts.iter().zip(&heavy) {
        let extra: Vec<usize> = (0..n).filter(|i| !lines.contains(i)).take(m - lines.len()).collect();
        fill_lines(&mut p2, l, *part, &extra);
        padded.push(extra);
    }
    let ([rows2, cols2, syms2], _) = line_counts(&p2);
    let full_lines = |c: &[usize]| c.iter().filter(|&&x| x == n).count();
    let exactly_m = full_lines(&rows2) == m && full_lines(&cols2) == m && full_lines(&syms2) == m;

    let one_based = |v: &[usize]| v.iter().map(|x| x + 1).collect::<Vec<_>>();
    let mut trace = PipelineTrace {
        delta,
        heavy_rows: one_based(&heavy[0]),
        heavy_cols: one_based(&heavy[1]),
        heavy_syms: one_based(&heavy[2]),
        m,
        padded_rows: one_based(&padded[0]),
        padded_cols: one_based(&padded[1]),
        padded_syms: one_based(&padded[2]),
        p1_size: p1.size(),
        p2_size: p2.size(),
        p2_has_exactly_m_full_lines: exactly_m,
        entry: None,
        replacement: None,
        attempts: 0,
        degree_bound: 2.0 * n as f64 - 2.0 * (threshold + 2.0 * m as f64 + 1.0),
        hypothesis: None,
    };

    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).map(move |y| (x, y)))
        .filter(|&(x, y)| p2.get(x, y).is_none())
        .collect();
    if free.is_empty() {
        return Err(Error::NoFreeEntry);
    }
    let mut any_admissible = false;
    for (x, y) in free {
        let z = l.get(x, y);
        let used = p2.row_mask(x) | p2.col_mask(y);
        for z2 in (1..=n as u8).filter(|&s| s != z && used >> (s - 1) & 1 == 0) {
            any_admissible = true;
            trace.attempts += 1;
            let mut p3 = p2.clone();
            p3.place(x, y, z2).expect("z' is absent from row x and column y");
            let g = leave_graph(&p3);
            if trace.entry.is_none() {
                trace.entry = Some([x + 1, y + 1, z as usize]);
                trace.replacement = Some(z2 as usize);
                trace.hypothesis = Some(decomposition_hypothesis(&g, DEFAULT_GAMMA)?);
            }
            if let Some(dec) = k3_decompose(&g, limits)? {
                let triples = p3
                    .to_triples()
                    .iter()
                    .copied()
                    .chain(dec.triangles.iter().map(|&[r, c, s]| Triple::new(r, c, s)))
                    .collect::<Vec<_>>();
                let square = TripleSet::new(n, triples)?;
                trace.entry = Some([x + 1, y + 1, z as usize]);
                trace.replacement = Some(z2 as usize);
                trace.hypothesis = Some(decomposition_hypothesis(&g, DEFAULT_GAMMA)?);
                return Ok(SecondCompletion {
                    square: Some(StructuredSquare::from(&square)),
                    trace,
                });
            }
        }
    }
    if !any_admissible {
        return Err(Error::NoAdmissibleSymbol);
    }
    Ok(SecondCompletion { square: None, trace })
}

/// Leave graph in the structured sidecar format (three adjacency matrices).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredGraph {
    pub order: usize,
    pub row_col: Vec<Vec<u8>>,
    pub row_sym: Vec<Vec<u8>>,
    pub col_sym: Vec<Vec<u8>>,
}

impl From<&TripartiteGraph> for StructuredGraph {
    fn from(g: &TripartiteGraph) -> Self {
        let dense = |m: &[u64]| {
            m.iter()
                .map(|row| (0..g.n).map(|j| (row >> j & 1) as u8).collect())
                .collect()
        };
        StructuredGraph {
            order: g.n,
            row_col: dense(&g.rc),
            row_sym: dense(&g.rs),
            col_sym: dense(&g.cs),
        }
    }
}

impl StructuredGraph {
    pub fn to_graph(&self) -> Result<TripartiteGraph> {
        check_order(self.order)?;
        let n = self.order;
        let pack = |m: &[Vec<u8>]| -> Result<Vec<u64>> {
            if m.len() != n || m.iter().any(|r| r.len() != n) {
                return Err(Error::InvalidParameter("adjacency matrix is not n×n".into()));
            }
            Ok(m.iter()
                .map(|r| r.iter().enumerate().fold(0u64, |acc, (j, &b)| acc | ((b != 0) as u64) << j))
                .collect())
        };
        Ok(TripartiteGraph {
            n,
            rc: pack(&self.row_col)?,
            rs: pack(&self.row_sym)?,
            cs: pack(&self.col_sym)?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::square::parse_grid;
    use crate::teaching::back_circulant;

    #[test]
    fn complete_graph_degrees() {
        let g = leave_graph(&PartialLatinSquare::empty(3).unwrap());
        assert_eq!(g, TripartiteGraph::complete(3).unwrap());
        assert!(g.vertices().all(|(p, v)| g.degree(p, v) == 6));
        assert!(is_balanced(&g) && is_locally_balanced(&g));
    }

    #[test]
    fn full_square_leaves_nothing() {
        let l = back_circulant(4).unwrap();
        assert_eq!(leave_graph(&l.to_partial()).edge_count(), 0);
    }

    #[test]
    fn sample_square_edge_count() {
        let p = parse_grid("1 . . .\n. 2 . .\n. . . .\n. 4 2 .").unwrap();
        let g = leave_graph(&p);
        assert_eq!(g.edge_count(), 36);
        assert!(is_locally_balanced(&g));
    }

    #[test]
    fn missing_edge_breaks_balance_and_divisibility() {
        let mut g = TripartiteGraph::complete(2).unwrap();
        g.remove_edge((Part::Row, 0), (Part::Col, 1));
        assert!(!is_locally_balanced(&g));
        assert_eq!(g.edge_count(), 11);
        assert_eq!(k3_decompose(&g, &Limits::default()).unwrap(), None);
    }

    #[test]
    fn decompositions_of_k222() {
        let g = TripartiteGraph::complete(2).unwrap();
        let lim = Limits::default();
        let d = k3_decompose(&g, &lim).unwrap().unwrap();
        assert_eq!(d.triangles.len(), 4);
        assert!(d.verify(&g));
        assert_eq!(count_k3_decompositions(&g, Cap::Unbounded, &lim).unwrap(), 2);
    }

    #[test]
    fn empty_graph_decomposes_trivially() {
        let g = leave_graph(&back_circulant(3).unwrap().to_partial());
        let d = k3_decompose(&g, &Limits::default()).unwrap().unwrap();
        assert!(d.triangles.is_empty());
        let h = decomposition_hypothesis(&g, DEFAULT_GAMMA).unwrap();
        assert!(h.satisfied);
        assert_eq!(h.effective_order, 0);
    }

    #[test]
    fn complete_graph_meets_the_degree_hypothesis() {
        let h = decomposition_hypothesis(&TripartiteGraph::complete(5).unwrap(), 0.01).unwrap();
        assert_eq!(h.min_degree, 10);
        assert!((h.threshold - (101.0 / 52.0 + 0.01) * 5.0).abs() < 1e-12);
        assert!(h.satisfied);
        assert!(decomposition_hypothesis(&TripartiteGraph::complete(5).unwrap(), 0.0).is_err());
    }

    #[test]
    fn second_completion_of_empty_order_three() {
        let l = back_circulant(3).unwrap();
        let p = PartialLatinSquare::empty(3).unwrap();
        let out = second_completion(&p, &l, 0.5, &Limits::default()).unwrap();
        let l2 = out.latin().unwrap();
        assert_ne!(l2, l);
    }

    #[test]
    fn second_completion_rejects_foreign_entries() {
        let l = back_circulant(3).unwrap();
        let p = parse_grid("2 . .\n. . .\n. . .").unwrap();
        assert!(matches!(
            second_completion(&p, &l, 0.5, &Limits::default()),
            Err(Error::NotContained { .. })
        ));
        assert!(second_completion(&PartialLatinSquare::empty(3).unwrap(), &l, 1.0, &Limits::default()).is_err());
    }

    #[test]
    fn structured_graph_round_trip() {
        let p = parse_grid("1 . .\n. . .\n. . 3").unwrap();
        let g = leave_graph(&p);
        let s = StructuredGraph::from(&g);
        assert_eq!(s.to_graph().unwrap(), g);
    }
}

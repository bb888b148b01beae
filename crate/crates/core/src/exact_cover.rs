//! Exact cover search with dancing links.
//!
//! The branching item is always one with the fewest remaining candidate
//! blocks, lowest item index first, and blocks of an item are tried in
//! ascending block id. Solutions therefore come out in a fixed order, and the
//! parallel driver reproduces that order exactly.

use std::ops::ControlFlow;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Upper bound on how many solutions a search reports.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cap {
    Bounded(u64),
    Unbounded,
}

impl Cap {
    /// Saturating limit used for uniqueness checks.
    pub const UNIQUENESS: Cap = Cap::Bounded(2);

    /// Whether `count` solutions exhaust the cap.
    pub fn reached(self, count: u64) -> bool {
        count >= self.limit()
    }

    fn limit(self) -> u64 {
        match self {
            Cap::Bounded(c) => c,
            Cap::Unbounded => u64::MAX,
        }
    }
}

impl From<Option<u64>> for Cap {
    fn from(v: Option<u64>) -> Self {
        v.map_or(Cap::Unbounded, Cap::Bounded)
    }
}

/// Universe `0..universe_len` and blocks identified by their index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCoverInstance {
    universe_len: usize,
    blocks: Vec<Vec<usize>>,
}

/// Ids of the chosen blocks, ascending.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CoverSolution {
    pub chosen: Vec<usize>,
}

impl ExactCoverInstance {
    /// Blocks must be non-empty and inside the universe; items inside a block
    /// are deduplicated.
    pub fn new(universe_len: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut blocks = blocks;
        for (id, b) in blocks.iter_mut().enumerate() {
            if b.is_empty() {
                return Err(Error::InvalidInstance(format!("block {id} is empty")));
            }
            b.sort_unstable();
            b.dedup();
            if let Some(&x) = b.iter().find(|&&x| x >= universe_len) {
                return Err(Error::InvalidInstance(format!(
                    "block {id} mentions item {x} outside a universe of {universe_len}"
                )));
            }
        }
        Ok(ExactCoverInstance {
            universe_len,
            blocks,
        })
    }

    pub fn universe_len(&self) -> usize {
        self.universe_len
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Checks that `sol` picks pairwise disjoint blocks covering the universe.
    pub fn verify(&self, sol: &CoverSolution) -> bool {
        let mut seen = vec![false; self.universe_len];
        for &b in &sol.chosen {
            let Some(block) = self.blocks.get(b) else {
                return false;
            };
            for &x in block {
                if std::mem::replace(&mut seen[x], true) {
                    return false;
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Up to `cap` distinct exact covers, in search order.
    pub fn solve(&self, cap: Cap) -> Vec<CoverSolution> {
        let limit = cap.limit();
        if limit == 0 {
            return Vec::new();
        }
        let links = Links::build(self);
        let mut raw = if split_depth(self, limit) > 0 {
            links.collect_split(limit, split_depth(self, limit))
        } else {
            let mut out = Vec::new();
            links.clone().collect_into(limit, &mut out);
            out
        };
        raw.truncate(limit as usize);
        raw.into_iter()
            .map(|mut chosen| {
                chosen.sort_unstable();
                CoverSolution { chosen }
            })
            .collect()
    }

    /// Number of exact covers, saturating at `cap`. Solutions are not stored.
    pub fn count(&self, cap: Cap) -> u64 {
        let limit = cap.limit();
        if limit == 0 {
            return 0;
        }
        let links = Links::build(self);
        let depth = split_depth(self, limit);
        if depth > 0 {
            links.count_split(limit, depth)
        } else {
            let mut links = links;
            let mut n = 0;
            let _ = links.search(&mut Vec::new(), &mut |_| {
                n += 1;
                if n >= limit {
                    ControlFlow::Break(())
                } else {
                    ControlFlow::Continue(())
                }
            });
            n
        }
    }

    /// Calls `visit` with each solution's block ids (in selection order)
    /// until it breaks or the search is exhausted. Always sequential.
    pub fn for_each_solution(&self, mut visit: impl FnMut(&[usize]) -> ControlFlow<()>) {
        let mut links = Links::build(self);
        let _ = links.search(&mut Vec::new(), &mut |sol: &[u32]| {
            let ids: Vec<usize> = sol.iter().map(|&b| b as usize).collect();
            visit(&ids)
        });
    }

    /// Purely sequential count, regardless of the `parallel` feature.
    pub fn count_sequential(&self, cap: Cap) -> u64 {
        let limit = cap.limit();
        let mut n = 0;
        if limit == 0 {
            return 0;
        }
        self.for_each_solution(|_| {
            n += 1;
            if n >= limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        n
    }
}

/// Small caps (uniqueness checks) and small instances stay sequential; the
/// callers of those parallelize across instances instead.
fn split_depth(inst: &ExactCoverInstance, limit: u64) -> usize {
    if !crate::par::is_parallel() || limit <= 64 || inst.universe_len < 40 {
        0
    } else {
        2
    }
}

const ROOT: u32 = 0;

/// Knuth's dancing-links arrays. Node 0 is the root, nodes `1..=items` are
/// item headers, option nodes follow.
#[derive(Clone)]
struct Links {
    left: Vec<u32>,
    right: Vec<u32>,
    up: Vec<u32>,
    down: Vec<u32>,
    /// Header of the item an option node belongs to.
    top: Vec<u32>,
    /// Block id of an option node.
    block: Vec<u32>,
    len: Vec<u32>,
}

impl Links {
    fn build(inst: &ExactCoverInstance) -> Self {
        let items = inst.universe_len;
        let nodes = 1 + items + inst.blocks.iter().map(Vec::len).sum::<usize>();
        let mut l = Links {
            left: Vec::with_capacity(nodes),
            right: Vec::with_capacity(nodes),
            up: Vec::with_capacity(nodes),
            down: Vec::with_capacity(nodes),
            top: Vec::with_capacity(nodes),
            block: Vec::with_capacity(nodes),
            len: vec![0; items + 1],
        };
        for i in 0..=items as u32 {
            l.left.push(if i == 0 { items as u32 } else { i - 1 });
            l.right.push(if i as usize == items { 0 } else { i + 1 });
            l.up.push(i);
            l.down.push(i);
            l.top.push(i);
            l.block.push(u32::MAX);
        }
        for (id, b) in inst.blocks.iter().enumerate() {
            let first = l.left.len() as u32;
            let k = b.len() as u32;
            for (j, &item) in b.iter().enumerate() {
                let node = first + j as u32;
                let header = item as u32 + 1;
                l.left.push(if j == 0 { first + k - 1 } else { node - 1 });
                l.right.push(if j as u32 == k - 1 { first } else { node + 1 });
                let last = l.up[header as usize];
                l.up.push(last);
                l.down.push(header);
                l.down[last as usize] = node;
                l.up[header as usize] = node;
                l.top.push(header);
                l.block.push(id as u32);
                l.len[header as usize] += 1;
            }
        }
        l
    }

    fn cover(&mut self, c: u32) {
        let c = c as usize;
        let (lc, rc) = (self.left[c], self.right[c]);
        self.right[lc as usize] = rc;
        self.left[rc as usize] = lc;
        let mut i = self.down[c];
        while i as usize != c {
            let mut j = self.right[i as usize];
            while j != i {
                let ju = j as usize;
                let (u, d) = (self.up[ju], self.down[ju]);
                self.down[u as usize] = d;
                self.up[d as usize] = u;
                self.len[self.top[ju] as usize] -= 1;
                j = self.right[ju];
            }
            i = self.down[i as usize];
        }
    }

    fn uncover(&mut self, c: u32) {
        let c = c as usize;
        let mut i = self.up[c];
        while i as usize != c {
            let mut j = self.left[i as usize];
            while j != i {
                let ju = j as usize;
                self.len[self.top[ju] as usize] += 1;
                let (u, d) = (self.up[ju], self.down[ju]);
                self.down[u as usize] = j;
                self.up[d as usize] = j;
                j = self.left[ju];
            }
            i = self.up[i as usize];
        }
        let (lc, rc) = (self.left[c], self.right[c]);
        self.right[lc as usize] = c as u32;
        self.left[rc as usize] = c as u32;
    }

    /// Fewest candidates, lowest index on ties. `None` when nothing is left.
    fn choose(&self) -> Option<u32> {
        let mut best = None;
        let mut best_len = u32::MAX;
        let mut c = self.right[ROOT as usize];
        while c != ROOT {
            let len = self.len[c as usize];
            if len < best_len {
                best_len = len;
                best = Some(c);
                if len == 0 {
                    break;
                }
            }
            c = self.right[c as usize];
        }
        best
    }

    fn select(&mut self, r: u32) {
        let mut j = self.right[r as usize];
        while j != r {
            self.cover(self.top[j as usize]);
            j = self.right[j as usize];
        }
    }

    fn deselect(&mut self, r: u32) {
        let mut j = self.left[r as usize];
        while j != r {
            self.uncover(self.top[j as usize]);
            j = self.left[j as usize];
        }
    }

    fn options_of(&self, c: u32) -> Vec<u32> {
        let mut out = Vec::with_capacity(self.len[c as usize] as usize);
        let mut r = self.down[c as usize];
        while r != c {
            out.push(r);
            r = self.down[r as usize];
        }
        out
    }

    fn search(
        &mut self,
        partial: &mut Vec<u32>,
        visit: &mut dyn FnMut(&[u32]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        let Some(c) = self.choose() else {
            return visit(partial);
        };
        if self.len[c as usize] == 0 {
            return ControlFlow::Continue(());
        }
        self.cover(c);
        let mut r = self.down[c as usize];
        let mut flow = ControlFlow::Continue(());
        while r != c {
            partial.push(self.block[r as usize]);
            self.select(r);
            flow = self.search(partial, visit);
            self.deselect(r);
            partial.pop();
            if flow.is_break() {
                break;
            }
            r = self.down[r as usize];
        }
        self.uncover(c);
        flow
    }

    fn collect_into(&mut self, limit: u64, out: &mut Vec<Vec<usize>>) {
        let _ = self.search(&mut Vec::new(), &mut |sol| {
            out.push(sol.iter().map(|&b| b as usize).collect());
            if out.len() as u64 >= limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
    }

    /// Branch-and-clone down to `depth` levels, then run sequentially. Each
    /// branch is bounded by `limit` on its own; the merge saturates.
    fn count_split(self, limit: u64, depth: usize) -> u64 {
        let branches = match self.branches(depth) {
            Branches::Leaf(mut l) => {
                let mut n = 0;
                let _ = l.search(&mut Vec::new(), &mut |_| {
                    n += 1;
                    if n >= limit {
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                });
                return n;
            }
            Branches::Solved => return 1,
            Branches::Dead => return 0,
            Branches::Split(b) => b,
        };
        let counts = crate::par::map(&branches, |(_, l)| l.clone().count_split(limit, depth - 1));
        counts
            .into_iter()
            .fold(0u64, |a, b| a.saturating_add(b))
            .min(limit)
    }

    fn collect_split(self, limit: u64, depth: usize) -> Vec<Vec<usize>> {
        let branches = match self.branches(depth) {
            Branches::Leaf(mut l) => {
                let mut out = Vec::new();
                l.collect_into(limit, &mut out);
                return out;
            }
            Branches::Solved => return vec![Vec::new()],
            Branches::Dead => return Vec::new(),
            Branches::Split(b) => b,
        };
        let parts = crate::par::map(&branches, |(blk, l)| {
            let mut sols = l.clone().collect_split(limit, depth - 1);
            for s in &mut sols {
                s.insert(0, *blk as usize);
            }
            sols
        });
        let mut out = Vec::new();
        for p in parts {
            out.extend(p);
            if out.len() as u64 >= limit {
                out.truncate(limit as usize);
                break;
            }
        }
        out
    }

    fn branches(mut self, depth: usize) -> Branches {
        if depth == 0 {
            return Branches::Leaf(self);
        }
        let Some(c) = self.choose() else {
            return Branches::Solved;
        };
        if self.len[c as usize] == 0 {
            return Branches::Dead;
        }
        self.cover(c);
        let opts = self.options_of(c);
        Branches::Split(
            opts.into_iter()
                .map(|r| {
                    let mut l = self.clone();
                    l.select(r);
                    (self.block[r as usize], l)
                })
                .collect(),
        )
    }
}

enum Branches {
    Leaf(Links),
    Solved,
    Dead,
    Split(Vec<(u32, Links)>),
}

//! Concept classes over a finite universe: shattering, VC dimension, teaching
//! dimensions and the recursive teaching dimension.
//!
//! Concepts are bit masks over at most [`MAX_UNIVERSE`] points, so traces,
//! equality and symmetric differences are single word operations.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::completion::all_latin_squares;
use crate::error::{Error, Result};
use crate::limits::{guard, Limits};

pub type PointMask = u128;
pub const MAX_UNIVERSE: usize = 128;

/// A finite family of distinct subsets of a labelled universe.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConceptClass {
    universe: Vec<String>,
    concepts: Vec<PointMask>,
}

/// Structured form: point labels and each concept as a list of point indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuredClass {
    pub universe: Vec<String>,
    pub concepts: Vec<Vec<usize>>,
}

fn bits(mask: PointMask) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            i
        })
    })
}

impl ConceptClass {
    pub fn new(universe: Vec<String>, concepts: Vec<Vec<usize>>) -> Result<Self> {
        let len = universe.len();
        let masks = concepts
            .iter()
            .map(|c| {
                c.iter().try_fold(0 as PointMask, |m, &p| {
                    if p >= len {
                        Err(Error::InvalidParameter(format!(
                            "point {p} outside a universe of {len}"
                        )))
                    } else {
                        Ok(m | 1 << p)
                    }
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_masks(universe, masks)
    }

    pub fn from_masks(universe: Vec<String>, concepts: Vec<PointMask>) -> Result<Self> {
        let len = universe.len();
        if len > MAX_UNIVERSE {
            return Err(Error::InvalidParameter(format!(
                "universe of {len} points exceeds {MAX_UNIVERSE}"
            )));
        }
        let full: PointMask = if len == MAX_UNIVERSE { !0 } else { (1 << len) - 1 };
        if concepts.iter().any(|&c| c & !full != 0) {
            return Err(Error::InvalidParameter("concept outside the universe".into()));
        }
        let mut seen = HashSet::new();
        if let Some(i) = concepts.iter().position(|c| !seen.insert(*c)) {
            return Err(Error::InvalidParameter(format!("concept {i} is a duplicate")));
        }
        Ok(ConceptClass { universe, concepts })
    }

    /// Points labelled `0..len`.
    pub fn unlabelled(len: usize, concepts: Vec<PointMask>) -> Result<Self> {
        Self::from_masks((0..len).map(|i| i.to_string()).collect(), concepts)
    }

    pub fn universe(&self) -> &[String] {
        &self.universe
    }

    pub fn universe_len(&self) -> usize {
        self.universe.len()
    }

    pub fn concepts(&self) -> &[PointMask] {
        &self.concepts
    }

    pub fn len(&self) -> usize {
        self.concepts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.concepts.is_empty()
    }

    /// The subclass made of the concepts at `indices`.
    pub fn subclass(&self, indices: &[usize]) -> ConceptClass {
        ConceptClass {
            universe: self.universe.clone(),
            concepts: indices.iter().map(|&i| self.concepts[i]).collect(),
        }
    }

    pub fn to_structured(&self) -> StructuredClass {
        StructuredClass {
            universe: self.universe.clone(),
            concepts: self.concepts.iter().map(|&c| bits(c).collect()).collect(),
        }
    }

    pub fn from_structured(s: &StructuredClass) -> Result<Self> {
        Self::new(s.universe.clone(), s.concepts.clone())
    }
}

/// All Latin squares of order `n` as subsets of `{1..n}³`; point
/// `(r, c, s)` (1-based) has index `(r-1)n² + (c-1)n + (s-1)`.
pub fn latin_concept_class(n: usize, limits: &Limits) -> Result<ConceptClass> {
    guard("Latin concept class", n, limits.concept_class_max_n)?;
    if n * n * n > MAX_UNIVERSE {
        return Err(Error::GuardExceeded {
            what: "Latin concept class (universe size)",
            n,
            limit: 5,
        });
    }
    let universe = (1..=n)
        .flat_map(|r| (1..=n).flat_map(move |c| (1..=n).map(move |s| format!("({r},{c},{s})"))))
        .collect();
    let squares = all_latin_squares(n)?;
    let concepts = squares
        .iter()
        .map(|l| {
            l.cells().iter().enumerate().fold(0 as PointMask, |m, (i, &s)| {
                m | 1 << (i * n + (s as usize - 1))
            })
        })
        .collect();
    ConceptClass::from_masks(universe, concepts)
}

/// Whether every subset of `set` is a trace `c ∩ set` of some concept.
pub fn shatters(class: &ConceptClass, set: PointMask) -> bool {
    let k = set.count_ones();
    if k >= 64 || (1u64 << k) > class.len() as u64 {
        return false;
    }
    let need = 1usize << k;
    let mut traces = HashSet::with_capacity(need);
    for &c in &class.concepts {
        traces.insert(c & set);
        if traces.len() == need {
            return true;
        }
    }
    false
}

/// All shattered subsets of the universe with at most `size_limit` points,
/// ordered by size and then by mask. Without a size limit the universe must
/// fit the VC guard.
///
/// Shattered sets are closed under taking subsets, so each level is grown
/// from the previous one and a candidate is only tested once all of its
/// one-smaller subsets are known to be shattered.
pub fn shattered_sets(
    class: &ConceptClass,
    size_limit: Option<usize>,
    limits: &Limits,
) -> Result<Vec<PointMask>> {
    if size_limit.is_none() {
        guard("shattering search (universe size)", class.universe_len(), limits.vc_universe_max)?;
    }
    if class.is_empty() {
        return Ok(Vec::new());
    }
    let max = size_limit.unwrap_or(usize::MAX);
    let n = class.universe_len();
    let mut out = vec![0 as PointMask];
    let mut level: Vec<PointMask> = vec![0];
    let mut k = 0;
    while k < max && !level.is_empty() && (1u64 << (k + 1)) <= class.len() as u64 {
        let known: HashSet<PointMask> = level.iter().copied().collect();
        let mut candidates = Vec::new();
        for &s in &level {
            let start = if s == 0 { 0 } else { 128 - s.leading_zeros() as usize };
            for p in start..n {
                let t = s | 1 << p;
                if bits(s).all(|q| known.contains(&(t & !(1 << q)))) {
                    candidates.push(t);
                }
            }
        }
        let keep = crate::par::map(&candidates, |&t| shatters(class, t));
        level = candidates
            .into_iter()
            .zip(keep)
            .filter_map(|(t, ok)| ok.then_some(t))
            .collect();
        level.sort_unstable();
        out.extend(&level);
        k += 1;
    }
    Ok(out)
}

pub fn vc_dimension(class: &ConceptClass, limits: &Limits) -> Result<usize> {
    Ok(shattered_sets(class, None, limits)?
        .iter()
        .map(|s| s.count_ones() as usize)
        .max()
        .unwrap_or(0))
}

/// Smallest set of points hitting every mask in `sets`, by iterative
/// deepening; branches on the unhit set with the fewest points.
fn min_hitting_set(sets: &[PointMask]) -> PointMask {
    // drop supersets: hitting the smaller set already hits them
    let mut sorted: Vec<PointMask> = sets.to_vec();
    sorted.sort_by_key(|s| (s.count_ones(), *s));
    sorted.dedup();
    let mut reduced: Vec<PointMask> = Vec::new();
    for s in sorted {
        if !reduced.iter().any(|&r| r & s == r) {
            reduced.push(s);
        }
    }
    fn dfs(sets: &[PointMask], chosen: PointMask, budget: usize) -> Option<PointMask> {
        let target = sets
            .iter()
            .filter(|&&s| s & chosen == 0)
            .min_by_key(|s| s.count_ones());
        let Some(&target) = target else {
            return Some(chosen);
        };
        if budget == 0 {
            return None;
        }
        bits(target).find_map(|p| dfs(sets, chosen | 1 << p, budget - 1))
    }
    (0..=MAX_UNIVERSE)
        .find_map(|k| dfs(&reduced, 0, k))
        .expect("distinct concepts can always be separated")
}

/// A smallest set of points on which concept `index` differs from every other
/// concept of the class.
pub fn teaching_set(class: &ConceptClass, index: usize) -> Result<PointMask> {
    let c = *class
        .concepts
        .get(index)
        .ok_or_else(|| Error::InvalidParameter(format!("no concept {index} in the class")))?;
    let diffs: Vec<PointMask> = class
        .concepts
        .iter()
        .enumerate()
        .filter(|&(j, _)| j != index)
        .map(|(_, &d)| c ^ d)
        .collect();
    Ok(min_hitting_set(&diffs))
}

/// `TD(c; C)` for the concept at `index`.
pub fn teaching_dim(class: &ConceptClass, index: usize) -> Result<usize> {
    Ok(teaching_set(class, index)?.count_ones() as usize)
}

/// `TD(c; C)` for every concept, in class order.
pub fn teaching_dims(class: &ConceptClass) -> Vec<usize> {
    crate::par::map_range(0..class.len(), |i| {
        teaching_dim(class, i).expect("index in range")
    })
}

pub fn td_min(class: &ConceptClass) -> usize {
    teaching_dims(class).into_iter().min().unwrap_or(0)
}

pub fn td_max(class: &ConceptClass) -> usize {
    teaching_dims(class).into_iter().max().unwrap_or(0)
}

/// One step of the canonical teaching plan: the concepts stripped together
/// and their common teaching dimension in the class that remained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanStep {
    pub td: usize,
    pub concepts: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RtdReport {
    /// The reported value: the subfamily maximum when it was computed and
    /// disagrees with the plan, the plan value otherwise.
    pub rtd: usize,
    pub canonical: usize,
    pub brute_force: Option<usize>,
    pub discrepancy: bool,
    pub plan: Vec<PlanStep>,
}

/// The canonical plan: repeatedly strip every concept of minimum teaching
/// dimension in what remains. RTD is the largest minimum met.
pub fn canonical_plan(class: &ConceptClass) -> Vec<PlanStep> {
    let mut remaining: Vec<usize> = (0..class.len()).collect();
    let mut plan = Vec::new();
    while !remaining.is_empty() {
        let sub = class.subclass(&remaining);
        let tds = teaching_dims(&sub);
        let m = *tds.iter().min().expect("non-empty");
        let (strip, keep): (Vec<_>, Vec<_>) =
            remaining.iter().zip(&tds).partition(|&(_, &t)| t == m);
        plan.push(PlanStep {
            td: m,
            concepts: strip.into_iter().map(|(&i, _)| i).collect(),
        });
        remaining = keep.into_iter().map(|(&i, _)| i).collect();
    }
    plan
}

/// `max over non-empty subfamilies C' of TD_min(C')`, straight from the
/// definition. Exponential in the class size.
pub fn rtd_brute_force(class: &ConceptClass) -> usize {
    let m = class.len();
    assert!(m < 32, "subfamily enumeration needs a small class");
    let families: Vec<u32> = (1..1u32 << m).collect();
    crate::par::map(&families, |&f| {
        let idx: Vec<usize> = (0..m).filter(|&i| f >> i & 1 == 1).collect();
        td_min(&class.subclass(&idx))
    })
    .into_iter()
    .max()
    .unwrap_or(0)
}

pub fn rtd(class: &ConceptClass, limits: &Limits) -> RtdReport {
    let plan = canonical_plan(class);
    let canonical = plan.iter().map(|s| s.td).max().unwrap_or(0);
    let brute_force =
        (class.len() <= limits.rtd_brute_force_max_concepts).then(|| rtd_brute_force(class));
    let discrepancy = brute_force.is_some_and(|b| b != canonical);
    RtdReport {
        rtd: brute_force.unwrap_or(canonical),
        canonical,
        brute_force,
        discrepancy,
        plan,
    }
}

/// Result of repeatedly removing concepts teachable with at most `k` points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elimination {
    pub k: usize,
    /// Concepts removed in each round (class indices).
    pub rounds: Vec<Vec<usize>>,
    pub removed: Vec<usize>,
    pub remaining: Vec<usize>,
}

pub fn eliminate_unique(class: &ConceptClass, k: usize) -> Elimination {
    let mut remaining: Vec<usize> = (0..class.len()).collect();
    let mut rounds = Vec::new();
    while !remaining.is_empty() {
        let tds = teaching_dims(&class.subclass(&remaining));
        let (gone, kept): (Vec<_>, Vec<_>) = remaining.iter().zip(&tds).partition(|&(_, &t)| t <= k);
        if gone.is_empty() {
            break;
        }
        rounds.push(gone.into_iter().map(|(&i, _)| i).collect::<Vec<_>>());
        remaining = kept.into_iter().map(|(&i, _)| i).collect();
    }
    Elimination {
        k,
        removed: rounds.concat(),
        rounds,
        remaining,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DimensionReport {
    pub concepts: usize,
    pub universe: usize,
    pub vc: usize,
    pub td_max: usize,
    pub td_min: usize,
    pub rtd: usize,
    pub shattered_count: usize,
}

pub fn dimension_report(class: &ConceptClass, limits: &Limits) -> Result<DimensionReport> {
    let shattered = shattered_sets(class, None, limits)?;
    let tds = teaching_dims(class);
    Ok(DimensionReport {
        concepts: class.len(),
        universe: class.universe_len(),
        vc: shattered.iter().map(|s| s.count_ones() as usize).max().unwrap_or(0),
        td_max: tds.iter().copied().max().unwrap_or(0),
        td_min: tds.iter().copied().min().unwrap_or(0),
        rtd: rtd(class, limits).rtd,
        shattered_count: shattered.len(),
    })
}

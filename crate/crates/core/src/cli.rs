//! Command-line front end. [`run`] is the whole program minus process exit.

use std::fmt::Write as _;
use std::io::Write;
use std::ops::ControlFlow;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::bounds::{self, BoundsTable, EpsilonDeltaReport, LogValue, VcThreshold};
use crate::completion::{count_completions, for_each_completion};
use crate::decomposition::{
    count_k3_decompositions, k3_decompose, leave_graph, second_completion, decomposition_hypothesis,
    HypothesisReport, K3Decomposition, SecondCompletion, StructuredGraph, TripartiteGraph,
    DEFAULT_GAMMA,
};
use crate::dimensions::{
    dimension_report, latin_concept_class, rtd, shattered_sets, ConceptClass, DimensionReport,
    RtdReport, StructuredClass,
};
use crate::error::Error;
use crate::exact_cover::Cap;
use crate::forcing::{is_strong_teaching_set, propagate};
use crate::limits::Limits;
use crate::square::{parse_any, render_grid, LatinSquare, PartialLatinSquare, StructuredSquare, TripleSet};
use crate::teaching::{
    back_circulant, min_teaching_set, quarter_critical_candidate, scs, scs_with, teaching_report,
    ScsMethod, ScsReport, TeachingReport,
};

pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_GUARD: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Bare grids where the result is a square, tables otherwise.
    Grid,
    /// JSON.
    Structured,
    /// Human-readable report.
    Table,
}

#[derive(Debug, Parser)]
#[command(name = "critset", version, about = "Teaching sets and critical sets of Latin squares")]
pub struct Cli {
    /// Worker threads for searches (0 = all cores).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Raise every order guard to this value.
    #[arg(long, global = true)]
    pub max_n: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct SquareAndSet {
    /// Full Latin square (grid or structured).
    #[arg(long)]
    pub square: PathBuf,
    /// Entries of the square (grid or structured).
    #[arg(long)]
    pub set: PathBuf,
}

#[derive(Debug, Args)]
pub struct ClassSource {
    /// Use the class of all Latin squares of this order.
    #[arg(long, conflicts_with = "class", required_unless_present = "class")]
    pub n: Option<usize>,
    /// Structured concept class file.
    #[arg(long)]
    pub class: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GraphSource {
    /// Partial square whose leave graph is used.
    #[arg(long, conflicts_with_all = ["graph", "n"])]
    pub partial: Option<PathBuf>,
    /// Structured graph file.
    #[arg(long, conflicts_with = "n")]
    pub graph: Option<PathBuf>,
    /// The complete tripartite graph of this order.
    #[arg(long, required_unless_present_any = ["partial", "graph"])]
    pub n: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enumerate or count completions of a partial square.
    Complete {
        #[arg(long)]
        partial: PathBuf,
        /// Stop after this many completions.
        #[arg(long)]
        cap: Option<u64>,
        /// Print only the number of completions.
        #[arg(long)]
        count: bool,
    },
    /// Check that a set of entries determines its square.
    VerifyTeaching(SquareAndSet),
    /// Check that a set is a teaching set and no entry can be dropped.
    VerifyCritical(SquareAndSet),
    /// Check that forcing alone rebuilds the square from the set.
    VerifyStrong(SquareAndSet),
    /// Smallest teaching set of a square.
    MinTeach {
        #[arg(long)]
        square: PathBuf,
    },
    /// Smallest critical set size over all squares of an order.
    Scs {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        method: Option<ScsMethodArg>,
    },
    /// Critical set of size ⌊n²/4⌋ in the back-circulant square.
    ConstructQuarter {
        #[arg(long)]
        n: usize,
    },
    /// VC dimension of a concept class.
    Vc(ClassSource),
    /// Recursive teaching dimension of a concept class.
    Rtd(ClassSource),
    /// VC, teaching and recursive teaching dimensions together.
    DimsReport(ClassSource),
    /// A second completion of a partial square through a triangle decomposition.
    SecondCompletion {
        #[arg(long)]
        partial: PathBuf,
        #[arg(long)]
        square: PathBuf,
        /// Lines with at least δn entries are completed from the square first.
        #[arg(long, default_value_t = crate::decomposition::DESK_DELTA)]
        delta: f64,
    },
    /// Triangle decomposition of a tripartite graph.
    Decompose {
        #[command(flatten)]
        source: GraphSource,
        /// Count decompositions instead (optionally capped).
        #[arg(long)]
        count: bool,
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Minimum-degree hypothesis of the triangle decomposition theorem.
    Hypothesis {
        #[command(flatten)]
        source: GraphSource,
        #[arg(long, default_value_t = DEFAULT_GAMMA)]
        gamma: f64,
    },
    /// Counting bounds for order n.
    Bounds {
        #[arg(long)]
        n: u64,
        /// Evaluate the partial-square bound at this size only.
        #[arg(long)]
        k: Option<u64>,
        /// Scan for the VC threshold even when n > 200.
        #[arg(long)]
        threshold: bool,
    },
    /// Feasible (ε, δ) for a decomposition constant.
    EpsSearch {
        /// Decomposition constant, as a decimal or a fraction like 101/52.
        #[arg(long = "C", value_parser = parse_ratio)]
        c: f64,
        /// Also evaluate this (ε, δ) point.
        #[arg(long, requires = "delta")]
        epsilon: Option<f64>,
        #[arg(long, requires = "epsilon")]
        delta: Option<f64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ScsMethodArg {
    Exhaustive,
    Representatives,
}

fn parse_ratio(s: &str) -> Result<f64, String> {
    let bad = || format!("expected a number or p/q, got {s:?}");
    let v = match s.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| bad())?;
            let q: f64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0.0 {
                return Err(bad());
            }
            p / q
        }
        None => s.trim().parse().map_err(|_| bad())?,
    };
    v.is_finite().then_some(v).ok_or_else(bad)
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn read_partial(path: &Path) -> anyhow::Result<PartialLatinSquare> {
    parse_any(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

fn read_latin(path: &Path) -> anyhow::Result<LatinSquare> {
    read_partial(path)?
        .to_latin()
        .with_context(|| format!("parsing {}", path.display()))
}

fn read_pair(args: &SquareAndSet) -> anyhow::Result<(LatinSquare, TripleSet)> {
    let l = read_latin(&args.square)?;
    let set = read_partial(&args.set)?.to_triples();
    Ok((l, set))
}

fn read_class(src: &ClassSource, limits: &Limits) -> anyhow::Result<ConceptClass> {
    match (&src.n, &src.class) {
        (Some(n), _) => Ok(latin_concept_class(*n, limits)?),
        (None, Some(path)) => {
            let s: StructuredClass = serde_json::from_str(&read(path)?).map_err(Error::from)?;
            Ok(ConceptClass::from_structured(&s)?)
        }
        (None, None) => unreachable!("clap requires one source"),
    }
}

fn read_graph(src: &GraphSource) -> anyhow::Result<TripartiteGraph> {
    if let Some(p) = &src.partial {
        return Ok(leave_graph(&read_partial(p)?));
    }
    if let Some(g) = &src.graph {
        let s: StructuredGraph = serde_json::from_str(&read(g)?).map_err(Error::from)?;
        return Ok(s.to_graph()?);
    }
    Ok(TripartiteGraph::complete(src.n.expect("clap requires one source"))?)
}

fn json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize") + "\n"
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn grid_of(s: &StructuredSquare) -> String {
    render_grid(&s.to_triples().expect("reports hold valid squares").to_partial())
}

/// Completions in structured output.
#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionsReport {
    pub count: u64,
    pub capped: bool,
    pub completions: Vec<StructuredSquare>,
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrongReport {
    pub strong: bool,
    pub propagated: StructuredSquare,
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinTeachReport {
    pub size: usize,
    pub set: StructuredSquare,
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuarterReport {
    pub n: usize,
    pub size: usize,
    pub square: StructuredSquare,
    pub set: StructuredSquare,
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VcReport {
    pub vc: usize,
    /// A largest shattered set, as universe labels.
    pub witness: Vec<String>,
}

#[derive(Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub graph: StructuredGraph,
    pub edges: usize,
    pub decomposition: Option<K3Decomposition>,
    pub count: Option<u64>,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct PartialBound {
    pub k: u64,
    pub ln: LogValue,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct CountBalanceReport {
    pub c: f64,
    pub lhs: LogValue,
    pub rhs: LogValue,
    pub lhs_exceeds_rhs: bool,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundsReport {
    pub latin_lower_bound: LogValue,
    pub partial_upper_bounds: Vec<PartialBound>,
    pub balance: Option<CountBalanceReport>,
    pub vc_threshold: Option<VcThreshold>,
    pub table: BoundsTable,
}

#[derive(Debug, PartialEq, Serialize, Deserialize)]
pub struct EpsReport {
    pub search: EpsilonDeltaReport,
    pub point: Option<bounds::EpsilonPoint>,
}

/// Largest order for which `bounds` lists the partial-square bound at every size.
const ALL_K_MAX_N: u64 = 8;
/// Largest order for which `bounds` scans for the VC threshold by default.
const THRESHOLD_DEFAULT_MAX_N: u64 = 200;

fn dispatch(cli: &Cli, limits: &Limits) -> anyhow::Result<String> {
    let fmt = cli.format;
    let mut o = String::new();
    match &cli.command {
        Command::Complete { partial, cap, count } => {
            let p = read_partial(partial)?;
            let cap = Cap::from(*cap);
            if *count {
                let c = count_completions(&p, cap);
                match fmt {
                    Format::Structured => o = json(&CompletionsReport { count: c, capped: cap.reached(c), completions: vec![] }),
                    _ => writeln!(o, "{c}")?,
                }
            } else {
                let mut all = Vec::new();
                for_each_completion(&p, |l| {
                    all.push(l);
                    if cap.reached(all.len() as u64) {
                        ControlFlow::Break(())
                    } else {
                        ControlFlow::Continue(())
                    }
                });
                match fmt {
                    Format::Structured => {
                        o = json(&CompletionsReport {
                            count: all.len() as u64,
                            capped: cap.reached(all.len() as u64),
                            completions: all.iter().map(|l| StructuredSquare::from(&l.to_triples())).collect(),
                        })
                    }
                    Format::Grid | Format::Table => {
                        for (i, l) in all.iter().enumerate() {
                            if i > 0 {
                                o.push('\n');
                            }
                            writeln!(o, "{l}")?;
                        }
                        if fmt == Format::Table {
                            writeln!(o, "completions: {}", all.len())?;
                        }
                    }
                }
            }
        }
        Command::VerifyTeaching(args) | Command::VerifyCritical(args) => {
            let (l, set) = read_pair(args)?;
            let critical = matches!(cli.command, Command::VerifyCritical(_));
            let r: TeachingReport = teaching_report(&set, &l)?;
            match fmt {
                Format::Structured => o = json(&r),
                _ => {
                    if critical {
                        writeln!(o, "critical set: {}", yes_no(r.is_critical))?;
                    } else {
                        writeln!(o, "teaching set: {}", yes_no(r.is_teaching))?;
                    }
                    if let Some(w) = &r.witness_second_completion {
                        writeln!(o, "second completion:\n{}", grid_of(w))?;
                    }
                }
            }
        }
        Command::VerifyStrong(args) => {
            let (l, set) = read_pair(args)?;
            let strong = is_strong_teaching_set(&set, &l)?;
            let end = propagate(&set.to_partial());
            match fmt {
                Format::Structured => o = json(&StrongReport { strong, propagated: end.to_structured() }),
                _ => {
                    writeln!(o, "strong teaching set: {}", yes_no(strong))?;
                    if !strong {
                        writeln!(o, "forcing stops at:\n{end}")?;
                    }
                }
            }
        }
        Command::MinTeach { square } => {
            let l = read_latin(square)?;
            let m = min_teaching_set(&l, limits)?;
            match fmt {
                Format::Structured => o = json(&MinTeachReport { size: m.size, set: StructuredSquare::from(&m.set) }),
                Format::Grid => writeln!(o, "{}", m.set.to_partial())?,
                Format::Table => writeln!(o, "size: {}\n{}", m.size, m.set.to_partial())?,
            }
        }
        Command::Scs { n, method } => {
            let r: ScsReport = match method {
                None => scs(*n, limits)?,
                Some(ScsMethodArg::Exhaustive) => scs_with(*n, ScsMethod::Exhaustive, limits)?,
                Some(ScsMethodArg::Representatives) => scs_with(*n, ScsMethod::Representatives, limits)?,
            };
            match fmt {
                Format::Structured => o = json(&r),
                _ => writeln!(o, "{}", r.scs)?,
            }
        }
        Command::ConstructQuarter { n } => {
            let set = quarter_critical_candidate(*n, limits)?;
            let l = back_circulant(*n)?;
            match fmt {
                Format::Structured => {
                    o = json(&QuarterReport {
                        n: *n,
                        size: set.len(),
                        square: StructuredSquare::from(&l.to_triples()),
                        set: StructuredSquare::from(&set),
                    })
                }
                Format::Grid => writeln!(o, "{}", set.to_partial())?,
                Format::Table => writeln!(o, "size: {} (critical)\n{}", set.len(), set.to_partial())?,
            }
        }
        Command::Vc(src) => {
            let class = read_class(src, limits)?;
            let sets = shattered_sets(&class, None, limits)?;
            let best = sets.iter().copied().max_by_key(|s| (s.count_ones(), std::cmp::Reverse(*s))).unwrap_or(0);
            let r = VcReport {
                vc: best.count_ones() as usize,
                witness: (0..class.universe_len())
                    .filter(|&i| best >> i & 1 == 1)
                    .map(|i| class.universe()[i].clone())
                    .collect(),
            };
            match fmt {
                Format::Structured => o = json(&r),
                _ => writeln!(o, "vc: {}\nshattered: {{{}}}", r.vc, r.witness.join(", "))?,
            }
        }
        Command::Rtd(src) => {
            let class = read_class(src, limits)?;
            let r: RtdReport = rtd(&class, limits);
            match fmt {
                Format::Structured => o = json(&r),
                _ => {
                    writeln!(o, "rtd: {}", r.rtd)?;
                    writeln!(o, "canonical plan: {}", r.canonical)?;
                    match r.brute_force {
                        Some(b) => writeln!(o, "subfamily maximum: {b}")?,
                        None => writeln!(o, "subfamily maximum: skipped ({} concepts)", class.len())?,
                    }
                    for (i, step) in r.plan.iter().enumerate() {
                        writeln!(o, "step {}: td {} removes {} concept(s)", i + 1, step.td, step.concepts.len())?;
                    }
                }
            }
        }
        Command::DimsReport(src) => {
            let class = read_class(src, limits)?;
            let r: DimensionReport = dimension_report(&class, limits)?;
            match fmt {
                Format::Structured => o = json(&r),
                _ => {
                    writeln!(o, "concepts: {}\nuniverse: {}", r.concepts, r.universe)?;
                    writeln!(o, "vc: {}\ntd_min: {}\nrtd: {}\ntd_max: {}", r.vc, r.td_min, r.rtd, r.td_max)?;
                    writeln!(o, "shattered sets: {}", r.shattered_count)?;
                }
            }
        }
        Command::SecondCompletion { partial, square, delta } => {
            let p = read_partial(partial)?;
            let l = read_latin(square)?;
            let r: SecondCompletion = second_completion(&p, &l, *delta, limits)?;
            match fmt {
                Format::Structured => o = json(&r),
                Format::Grid => match &r.square {
                    Some(s) => writeln!(o, "{}", grid_of(s))?,
                    None => writeln!(o, "no second completion found")?,
                },
                Format::Table => {
                    let t = &r.trace;
                    writeln!(o, "delta: {}\nm: {}", t.delta, t.m)?;
                    writeln!(o, "|P1|: {}\n|P2|: {}", t.p1_size, t.p2_size)?;
                    writeln!(o, "attempts: {}", t.attempts)?;
                    if let (Some([x, y, z]), Some(z2)) = (t.entry, t.replacement) {
                        writeln!(o, "replaced ({x},{y},{z}) by ({x},{y},{z2})")?;
                    }
                    match &r.square {
                        Some(s) => writeln!(o, "second completion:\n{}", grid_of(s))?,
                        None => writeln!(o, "no second completion found")?,
                    }
                }
            }
        }
        Command::Decompose { source, count, cap } => {
            let g = read_graph(source)?;
            let (decomposition, number) = if *count {
                (None, Some(count_k3_decompositions(&g, Cap::from(*cap), limits)?))
            } else {
                (k3_decompose(&g, limits)?, None)
            };
            let r = DecomposeReport {
                graph: StructuredGraph::from(&g),
                edges: g.edge_count(),
                decomposition,
                count: number,
            };
            match fmt {
                Format::Structured => o = json(&r),
                _ => {
                    writeln!(o, "edges: {}", r.edges)?;
                    if let Some(c) = r.count {
                        writeln!(o, "decompositions: {c}")?;
                    } else if let Some(d) = &r.decomposition {
                        writeln!(o, "triangles: {}", d.triangles.len())?;
                        for [a, b, c] in &d.triangles {
                            writeln!(o, "r{a} c{b} s{c}")?;
                        }
                    } else {
                        writeln!(o, "no decomposition")?;
                    }
                }
            }
        }
        Command::Hypothesis { source, gamma } => {
            let g = read_graph(source)?;
            let r: HypothesisReport = decomposition_hypothesis(&g, *gamma)?;
            match fmt {
                Format::Structured => o = json(&r),
                _ => {
                    writeln!(o, "minimum degree: {}", r.min_degree)?;
                    writeln!(o, "effective order: {}", r.effective_order)?;
                    writeln!(o, "threshold: {:.6}", r.threshold)?;
                    writeln!(o, "satisfied: {}", yes_no(r.satisfied))?;
                }
            }
        }
        Command::Bounds { n, k, threshold } => {
            let n = *n;
            let table = bounds::bounds_table(n)?;
            let ks: Vec<u64> = match k {
                Some(k) => vec![*k],
                None if n <= ALL_K_MAX_N => (0..=n * n).collect(),
                None => vec![],
            };
            let partial_upper_bounds = ks
                .into_iter()
                .map(|k| Ok(PartialBound { k, ln: bounds::partial_upper_bound(n, k)? }))
                .collect::<Result<Vec<_>, Error>>()?;
            let c = bounds::count_balance_c(n as f64);
            let balance = bounds::count_balance_sides(c, n as f64).ok().map(|(lhs, rhs)| CountBalanceReport {
                c,
                lhs,
                rhs,
                lhs_exceeds_rhs: lhs.ln > rhs.ln,
            });
            let vc_threshold = (*threshold || n <= THRESHOLD_DEFAULT_MAX_N)
                .then(|| bounds::vc_threshold(n))
                .transpose()?;
            let r = BoundsReport {
                latin_lower_bound: bounds::latin_lower_bound(n)?,
                partial_upper_bounds,
                balance,
                vc_threshold,
                table,
            };
            match fmt {
                Format::Structured => o = json(&r),
                _ => write_bounds_table(&mut o, n, &r)?,
            }
        }
        Command::EpsSearch { c, epsilon, delta } => {
            let search = bounds::epsilon_search(*c)?;
            let point = epsilon.zip(*delta).map(|(e, d)| bounds::EpsilonPoint::from_epsilon(*c, e, d));
            let r = EpsReport { search, point };
            match fmt {
                Format::Structured => o = json(&r),
                _ => write_eps_table(&mut o, &r)?,
            }
        }
    }
    Ok(o)
}

fn write_bounds_table(o: &mut String, n: u64, r: &BoundsReport) -> std::fmt::Result {
    let t = &r.table;
    writeln!(o, "n: {n}")?;
    writeln!(o, "ln |L_n| lower bound: {:.12}", r.latin_lower_bound.ln)?;
    for b in &r.partial_upper_bounds {
        writeln!(o, "ln |T_n,{}| upper bound: {:.12}", b.k, b.ln.ln)?;
    }
    if let Some(e) = &r.balance {
        writeln!(o, "balance at c = {:.12}: lhs {:.12e} rhs {:.12e} lhs > rhs: {}", e.c, e.lhs.ln, e.rhs.ln, yes_no(e.lhs_exceeds_rhs))?;
    }
    if let Some(v) = &r.vc_threshold {
        match v.k_star {
            Some(k) => writeln!(o, "vc threshold k*: {k}")?,
            None => writeln!(o, "vc threshold k*: none")?,
        }
        writeln!(o, "vc threshold closed form: {:.6}", v.closed_form)?;
    }
    writeln!(o, "vc lower bound: {:.6}", t.vc_lower)?;
    writeln!(o, "td upper bound: {:.6}", t.td_upper)?;
    writeln!(o, "scs lower bound: {:.6}", t.scs_lower)?;
    writeln!(o, "conjectured scs: {}", t.conjecture)?;
    match t.cct_ln {
        Some(v) => writeln!(o, "comparison bound at d = {}: ln {:.6}", t.cct_d, v)?,
        None => writeln!(o, "comparison bound at d = {}: 0", t.cct_d)?,
    }
    if !t.regime_reached {
        writeln!(o, "asymptotic regime not reached")?;
    }
    Ok(())
}

fn write_eps_table(o: &mut String, r: &EpsReport) -> std::fmt::Result {
    let s = &r.search;
    writeln!(o, "C: {:.12}", s.c)?;
    writeln!(o, "epsilon: {:.9e}\ndelta: {:.9}\nmu: {:.9}", s.epsilon, s.delta, s.mu)?;
    writeln!(o, "grid epsilon: {:.9e} (relative gap {:.2e})", s.grid.epsilon, s.relative_gap)?;
    let sl = &s.slacks;
    writeln!(o, "slacks: lines {:.6} size {:.6} symbols {:.6} degree {:.6}", sl.lines, sl.size, sl.symbols, sl.degree)?;
    if let Some(p) = &r.point {
        writeln!(o, "point epsilon {:.6e} delta {:.6}:", p.epsilon, p.delta)?;
        writeln!(o, "  m/n: {:.6}\n  symbol bound: {:.6}\n  degree bound: {:.6}", p.mu, p.symbol_bound, p.degree_bound)?;
        let sl = &p.slacks;
        writeln!(o, "  slacks: lines {:.6} size {:.6} symbols {:.6} degree {:.6}", sl.lines, sl.size, sl.symbols, sl.degree)?;
        writeln!(o, "  feasible: {}", yes_no(p.slacks.feasible()))?;
    }
    Ok(())
}

fn exit_code(e: &anyhow::Error) -> i32 {
    match e.downcast_ref::<Error>() {
        Some(err) if err.is_guard() => EXIT_GUARD,
        _ => EXIT_DOMAIN,
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let limits = match cli.max_n {
        Some(n) => {
            let _ = writeln!(err, "warning: guards raised to n = {n}; searches may run for a long time");
            Limits::default().with_max_n(n)
        }
        None => Limits::default(),
    };
    let result = crate::par::with_threads(cli.threads, || dispatch(&cli, &limits));
    match result {
        Ok(text) => {
            if out.write_all(text.as_bytes()).is_err() {
                return EXIT_DOMAIN;
            }
            0
        }
        Err(e) => {
            let _ = writeln!(err, "error: {}", chain(&e));
            exit_code(&e)
        }
    }
}

fn chain(e: &anyhow::Error) -> String {
    e.chain().map(|c| c.to_string()).collect::<Vec<_>>().join(": ")
}

//! Depth-first enumeration of the tree of numerical semigroups by genus.
//!
//! Children of `S` are `S \ {p}` for each primitive `p` above the Frobenius
//! number. Each worker owns one [`ExplorationNode`] and walks its subtree with
//! apply/undo moves; shallow subtrees are handed to rayon as owned clones.

mod checkpoint;
mod minima;
mod node;
mod visitors;

use std::path::PathBuf;

use rayon::prelude::*;

use crate::error::{Error, Result};

pub use checkpoint::{CHECKPOINT_MAGIC, CHECKPOINT_VERSION};
pub use minima::{structure_flags, MinimaRow, MinimaTable, MinimizerExample, StructureFlags};
pub use node::{ExplorationNode, Move, NodeSummary, MAX_GENUS};
pub use visitors::{BoundScan, HuntFilter, HuntRecord};

use checkpoint::Resumable;
use minima::MinimaVisitor;
use visitors::{BoundVisitor, CensusVisitor, HuntVisitor};

/// Callbacks driven by the tree walk. Every node is passed to
/// [`count`](Visitor::count) as a summary; the full node is only built for
/// [`inspect`](Visitor::inspect) when [`wants_detail`](Visitor::wants_detail)
/// says so.
pub trait Visitor: Send + Sized {
    fn count(&mut self, _s: &NodeSummary) {}

    fn wants_detail(&self, _s: &NodeSummary) -> bool {
        false
    }

    fn inspect(&mut self, _node: &ExplorationNode) {}

    /// Skip every proper descendant of a node with this summary.
    fn prune(&self, _s: &NodeSummary) -> bool {
        false
    }

    /// Folds another accumulator in; must be order-insensitive.
    fn merge(&mut self, other: Self);
}

/// Worker count and optional checkpoint file for a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExploreOptions {
    pub threads: usize,
    pub checkpoint: Option<PathBuf>,
    /// Frontier nodes processed between checkpoint writes.
    pub checkpoint_every: usize,
}

impl Default for ExploreOptions {
    fn default() -> Self {
        ExploreOptions {
            threads: default_threads(),
            checkpoint: None,
            checkpoint_every: 4096,
        }
    }
}

impl ExploreOptions {
    pub fn with_threads(threads: usize) -> Self {
        ExploreOptions {
            threads,
            ..ExploreOptions::default()
        }
    }
}

pub fn default_threads() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

/// Genus at which subtrees stop being split into parallel tasks.
pub(crate) fn split_genus(g_max: u32) -> u32 {
    g_max.saturating_sub(16).min(24)
}

/// Effective generators from which a node still counts as heavy past the
/// split genus; subtree sizes grow steeply with this count.
const HEAVY_GENERATORS: u32 = 12;

/// Whether `node` is handed out as several tasks rather than walked as one.
pub(crate) fn should_split(node: &ExplorationNode, g_max: u32, split: u32) -> bool {
    let g = node.genus();
    g < split || (g + 6 < g_max && node.effective_generator_count() >= HEAVY_GENERATORS)
}

fn check_g_max(g_max: u32) -> Result<()> {
    if g_max > MAX_GENUS {
        return Err(Error::Precondition(format!(
            "g_max = {g_max} exceeds the supported maximum {MAX_GENUS}"
        )));
    }
    Ok(())
}

/// Sequential walk of the proper descendants of `node`.
pub(crate) fn dfs<V: Visitor>(node: &mut ExplorationNode, g_max: u32, v: &mut V) {
    let s = *node.summary();
    if s.genus >= g_max || v.prune(&s) {
        return;
    }
    let last = s.genus + 1 == g_max;
    let (lo, words) = node.generator_words();
    let mut rank = 0;
    for (w, mut bits) in words.into_iter().enumerate() {
        while bits != 0 {
            let p = (lo + 64 * w + bits.trailing_zeros() as usize) as u32;
            bits &= bits - 1;
            let cs = node.child_summary(p, rank);
            let child_rank = rank;
            rank += 1;
            v.count(&cs);
            let detail = v.wants_detail(&cs);
            let descend = !last && !v.prune(&cs);
            if !detail && !descend {
                continue;
            }
            let mv = node.apply_ranked(p, child_rank);
            if detail {
                v.inspect(node);
            }
            if descend {
                dfs(node, g_max, v);
            }
            node.undo(mv);
        }
    }
}

/// Counts and inspects the children of `node`, returning those whose
/// subtrees still need a walk.
pub(crate) fn expand<V: Visitor>(
    node: &ExplorationNode,
    g_max: u32,
    v: &mut V,
) -> Vec<ExplorationNode> {
    let s = *node.summary();
    if s.genus >= g_max || v.prune(&s) {
        return Vec::new();
    }
    let gens: Vec<u32> = node.effective_generators().collect();
    let mut out = Vec::new();
    for (rank, &p) in gens.iter().enumerate() {
        let cs = node.child_summary(p, rank as u32);
        v.count(&cs);
        let detail = v.wants_detail(&cs);
        let descend = cs.genus < g_max && !v.prune(&cs);
        if !detail && !descend {
            continue;
        }
        let mut child = node.clone();
        child.apply_ranked(p, rank as u32);
        if detail {
            v.inspect(&child);
        }
        if descend {
            out.push(child);
        }
    }
    out
}

fn walk_parallel<V, F>(mut node: ExplorationNode, g_max: u32, split: u32, make: &F) -> V
where
    V: Visitor,
    F: Fn() -> V + Sync,
{
    let mut v = make();
    if !should_split(&node, g_max, split) {
        dfs(&mut node, g_max, &mut v);
        return v;
    }
    let kids = expand(&node, g_max, &mut v);
    drop(node);
    let sub = kids
        .into_par_iter()
        .map(|k| walk_parallel(k, g_max, split, make))
        .reduce(make, |mut a, b| {
            a.merge(b);
            a
        });
    v.merge(sub);
    v
}

pub(crate) fn visit_root<V: Visitor>(root: &ExplorationNode, v: &mut V) {
    v.count(root.summary());
    if v.wants_detail(root.summary()) {
        v.inspect(root);
    }
}

pub(crate) fn thread_pool(threads: usize) -> Result<rayon::ThreadPool> {
    if threads == 0 {
        return Err(Error::Precondition("thread count must be positive".into()));
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Precondition(format!("cannot start worker threads: {e}")))
}

/// Walks every semigroup of genus `≤ g_max` with the visitors built by `make`
/// and returns their merged accumulator.
pub fn explore<V, F>(g_max: u32, threads: usize, make: F) -> Result<V>
where
    V: Visitor,
    F: Fn() -> V + Sync + Send,
{
    check_g_max(g_max)?;
    let pool = thread_pool(threads)?;
    let root = ExplorationNode::root(g_max)?;
    let mut v = make();
    visit_root(&root, &mut v);
    let split = split_genus(g_max);
    let rest = pool.install(|| walk_parallel(root, g_max, split, &make));
    v.merge(rest);
    Ok(v)
}

fn run<V, F>(g_max: u32, opts: &ExploreOptions, make: F) -> Result<V>
where
    V: Visitor + Resumable,
    F: Fn() -> V + Sync + Send,
{
    match &opts.checkpoint {
        Some(path) => checkpoint::explore_resumable(g_max, opts, path, make),
        None => explore(g_max, opts.threads, make),
    }
}

/// Number of numerical semigroups of each genus `0..=g_max`.
pub fn census(g_max: u32, opts: &ExploreOptions) -> Result<Vec<u64>> {
    Ok(run(g_max, opts, || CensusVisitor::new(g_max))?.into_counts())
}

/// Every semigroup of genus `≤ g_max` passing `filter` with `W₀ < 0`, sorted
/// by `(genus, label)`.
pub fn hunt_near_misses(
    g_max: u32,
    filter: &HuntFilter,
    opts: &ExploreOptions,
) -> Result<Vec<HuntRecord>> {
    filter.validate()?;
    Ok(run(g_max, opts, || HuntVisitor::new(*filter))?.into_records())
}

/// Checks `W₀ ≥ −C(n, 3)`, `n = |P ∩ L|`, for every semigroup with `q = 4`
/// and genus `≤ g_max`.
pub fn scan_conjecture_bound(g_max: u32, opts: &ExploreOptions) -> Result<BoundScan> {
    Ok(run(g_max, opts, BoundVisitor::default)?.into_scan())
}

/// Per `(m, n)` minima of `W₀ − ρ` over the semigroups with `q = 4` and genus
/// `≤ g_max`, with the structure flags of the minimizers. Checkpoints are not
/// supported for this scan.
pub fn scan_conjecture_minima(
    g_max: u32,
    m_filter: Option<u32>,
    opts: &ExploreOptions,
) -> Result<MinimaTable> {
    if opts.checkpoint.is_some() {
        return Err(Error::Checkpoint(
            "the minima scan does not support checkpoints".into(),
        ));
    }
    let v = explore(g_max, opts.threads, || MinimaVisitor::new(m_filter))?;
    Ok(v.into_table(g_max, m_filter))
}

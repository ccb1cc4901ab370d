//! Resumable runs: the unexplored frontier plus the partial accumulator,
//! rewritten atomically after every batch of frontier subtrees.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! magic        8 bytes   "NSGT1\0\0\0"
//! version      u32       1
//! g_max        u32
//! descriptor   u32 len + UTF-8   run kind and filters; must match on resume
//! accumulator  u32 len + bytes   visitor-specific
//! node count   u64
//! per node     u32 genus, u32 conductor, u32 multiplicity,
//!              u32 word count w, w × u64 membership bitmap of [0, c + m)
//! ```
//!
//! A finished run leaves a checkpoint with zero nodes, so resuming it returns
//! the final result immediately.

use std::fs;
use std::io::Write;
use std::path::Path;

use rayon::prelude::*;

use super::node::ExplorationNode;
use super::visitors::{sort_records, HuntRecord};
use super::{
    check_g_max, dfs, expand, should_split, split_genus, thread_pool, visit_root, ExploreOptions,
    Visitor,
};
use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;
use crate::wilf::wilf_report;

pub const CHECKPOINT_MAGIC: &[u8; 8] = b"NSGT1\0\0\0";
pub const CHECKPOINT_VERSION: u32 = 1;

/// A visitor whose accumulator can be saved and restored.
pub(crate) trait Resumable: Sized {
    /// Identifies the run kind and parameters.
    fn descriptor(&self) -> String;
    fn encode(&self, out: &mut Vec<u8>);
    /// Restores an accumulator, using `self` for the run parameters.
    fn decode(&self, bytes: &mut &[u8]) -> Result<Self>;
}

fn truncated() -> Error {
    Error::Checkpoint("file is truncated".into())
}

fn take<'a>(bytes: &mut &'a [u8], n: usize) -> Result<&'a [u8]> {
    if bytes.len() < n {
        return Err(truncated());
    }
    let (head, rest) = bytes.split_at(n);
    *bytes = rest;
    Ok(head)
}

pub(crate) fn read_u32(bytes: &mut &[u8]) -> Result<u32> {
    Ok(u32::from_le_bytes(take(bytes, 4)?.try_into().expect("4 bytes")))
}

pub(crate) fn read_u64(bytes: &mut &[u8]) -> Result<u64> {
    Ok(u64::from_le_bytes(take(bytes, 8)?.try_into().expect("8 bytes")))
}

fn read_blob<'a>(bytes: &mut &'a [u8]) -> Result<&'a [u8]> {
    let n = read_u32(bytes)? as usize;
    take(bytes, n)
}

fn write_blob(data: &[u8], out: &mut Vec<u8>) {
    out.extend((data.len() as u32).to_le_bytes());
    out.extend(data);
}

pub(crate) fn write_records(records: &[HuntRecord], out: &mut Vec<u8>) {
    out.extend((records.len() as u32).to_le_bytes());
    for r in records {
        write_blob(r.label.as_bytes(), out);
    }
}

/// Records are stored by label and recomputed on load.
pub(crate) fn read_records(bytes: &mut &[u8]) -> Result<Vec<HuntRecord>> {
    let n = read_u32(bytes)?;
    let mut records = Vec::with_capacity(n as usize);
    for _ in 0..n {
        let label = std::str::from_utf8(read_blob(bytes)?)
            .map_err(|_| Error::Checkpoint("label is not UTF-8".into()))?;
        let s: NumericalSemigroup = label
            .parse()
            .map_err(|e| Error::Checkpoint(format!("bad label {label:?}: {e}")))?;
        records.push(HuntRecord {
            label: label.to_string(),
            report: wilf_report(&s),
        });
    }
    sort_records(&mut records);
    Ok(records)
}

fn encode_node(node: &ExplorationNode, out: &mut Vec<u8>) {
    let s = node.summary();
    let end = (s.conductor + s.multiplicity) as usize;
    let words = end.div_ceil(64);
    for v in [s.genus, s.conductor, s.multiplicity, words as u32] {
        out.extend(v.to_le_bytes());
    }
    for w in 0..words {
        let mut word = 0u64;
        for bit in 0..64 {
            let x = w * 64 + bit;
            if x < end && node.contains(x as u32) {
                word |= 1 << bit;
            }
        }
        out.extend(word.to_le_bytes());
    }
}

fn decode_node(bytes: &mut &[u8], g_max: u32) -> Result<ExplorationNode> {
    let genus = read_u32(bytes)?;
    let conductor = read_u32(bytes)?;
    let multiplicity = read_u32(bytes)?;
    let words = read_u32(bytes)? as usize;
    let end = conductor as usize + multiplicity as usize;
    if words != end.div_ceil(64) || genus > g_max {
        return Err(Error::Checkpoint("malformed node header".into()));
    }
    let mut window = Vec::with_capacity(end);
    for w in 0..words {
        let word = read_u64(bytes)?;
        for bit in 0..64 {
            if w * 64 + bit < end {
                window.push(word >> bit & 1 == 1);
            }
        }
    }
    let s = NumericalSemigroup::from_window(window)
        .map_err(|e| Error::Checkpoint(format!("node is not a semigroup: {e}")))?;
    if s.genus() != genus as u64
        || s.conductor() != conductor as u64
        || s.multiplicity() != multiplicity as u64
    {
        return Err(Error::Checkpoint("node header disagrees with its bitmap".into()));
    }
    ExplorationNode::from_semigroup(&s, g_max)
}

struct State<V> {
    g_max: u32,
    descriptor: String,
    acc: V,
    frontier: Vec<ExplorationNode>,
}

fn encode_state<V: Resumable>(state: &State<V>) -> Vec<u8> {
    let mut out = Vec::new();
    out.extend(CHECKPOINT_MAGIC);
    out.extend(CHECKPOINT_VERSION.to_le_bytes());
    out.extend(state.g_max.to_le_bytes());
    write_blob(state.descriptor.as_bytes(), &mut out);
    let mut acc = Vec::new();
    state.acc.encode(&mut acc);
    write_blob(&acc, &mut out);
    out.extend((state.frontier.len() as u64).to_le_bytes());
    for node in &state.frontier {
        encode_node(node, &mut out);
    }
    out
}

fn decode_state<V: Resumable>(mut bytes: &[u8], g_max: u32, fresh: &V) -> Result<State<V>> {
    let b = &mut bytes;
    if take(b, 8)? != CHECKPOINT_MAGIC {
        return Err(Error::Checkpoint("bad magic header".into()));
    }
    let version = read_u32(b)?;
    if version != CHECKPOINT_VERSION {
        return Err(Error::Checkpoint(format!("unsupported version {version}")));
    }
    let stored_g = read_u32(b)?;
    if stored_g != g_max {
        return Err(Error::Checkpoint(format!(
            "checkpoint is for g_max = {stored_g}, not {g_max}"
        )));
    }
    let descriptor = std::str::from_utf8(read_blob(b)?)
        .map_err(|_| Error::Checkpoint("descriptor is not UTF-8".into()))?
        .to_string();
    if descriptor != fresh.descriptor() {
        return Err(Error::Checkpoint(format!(
            "checkpoint is for run {descriptor:?}, not {:?}",
            fresh.descriptor()
        )));
    }
    let mut acc_bytes = read_blob(b)?;
    let acc = fresh.decode(&mut acc_bytes)?;
    if !acc_bytes.is_empty() {
        return Err(Error::Checkpoint("trailing accumulator bytes".into()));
    }
    let n = read_u64(b)?;
    let frontier = (0..n).map(|_| decode_node(b, g_max)).collect::<Result<Vec<_>>>()?;
    if !b.is_empty() {
        return Err(Error::Checkpoint("trailing bytes".into()));
    }
    Ok(State {
        g_max,
        descriptor,
        acc,
        frontier,
    })
}

fn save<V: Resumable>(state: &State<V>, path: &Path) -> Result<()> {
    let tmp = path.with_extension("tmp");
    let mut f = fs::File::create(&tmp)?;
    f.write_all(&encode_state(state))?;
    f.sync_all()?;
    fs::rename(&tmp, path)?;
    Ok(())
}

/// Expands from the root down to the split genus, visiting everything above
/// it; the returned frontier holds the subtrees still to walk.
fn initial_state<V, F>(g_max: u32, make: &F) -> Result<State<V>>
where
    V: Visitor + Resumable,
    F: Fn() -> V,
{
    let mut acc = make();
    let root = ExplorationNode::root(g_max)?;
    visit_root(&root, &mut acc);
    let split = split_genus(g_max);
    let mut pending = vec![root];
    let mut frontier = Vec::new();
    while let Some(node) = pending.pop() {
        if should_split(&node, g_max, split) {
            pending.extend(expand(&node, g_max, &mut acc));
        } else {
            frontier.push(node);
        }
    }
    Ok(State {
        g_max,
        descriptor: acc.descriptor(),
        acc,
        frontier,
    })
}

pub(crate) fn explore_resumable<V, F>(
    g_max: u32,
    opts: &ExploreOptions,
    path: &Path,
    make: F,
) -> Result<V>
where
    V: Visitor + Resumable,
    F: Fn() -> V + Sync + Send,
{
    check_g_max(g_max)?;
    let pool = thread_pool(opts.threads)?;
    let mut state = if path.exists() {
        decode_state(&fs::read(path)?, g_max, &make())?
    } else {
        let s = initial_state(g_max, &make)?;
        save(&s, path)?;
        s
    };
    let batch = opts.checkpoint_every.max(1);
    while !state.frontier.is_empty() {
        let keep = state.frontier.len().saturating_sub(batch);
        let work = state.frontier.split_off(keep);
        let part = pool.install(|| {
            work.into_par_iter()
                .map(|mut node| {
                    let mut v = make();
                    dfs(&mut node, g_max, &mut v);
                    v
                })
                .reduce(&make, |mut a, b| {
                    a.merge(b);
                    a
                })
        });
        state.acc.merge(part);
        save(&state, path)?;
    }
    Ok(state.acc)
}

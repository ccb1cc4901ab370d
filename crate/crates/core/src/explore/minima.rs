use std::collections::HashMap;

use serde::Serialize;

use super::node::{ExplorationNode, NodeSummary};
use super::visitors::{bound_for, is_q4};
use super::Visitor;
use crate::semigroup::NumericalSemigroup;
use crate::sumset::{induces_bh_mod, IntSet};

const EXAMPLES_KEPT: usize = 8;

/// The three structural conditions on the Apéry slices of a semigroup with
/// `q = 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct StructureFlags {
    /// `P ∩ L ⊆ S₁`
    pub left_primitives_in_s1: bool,
    /// `X₁` reduces to a B₃ set mod `m`
    pub x1_b3_mod_m: bool,
    /// `X₂ = ∅`, `X₃ = 2X₁`, `X₄ ∩ D = 3X₁`
    pub slices_match: bool,
}

impl StructureFlags {
    pub fn all(&self) -> bool {
        self.left_primitives_in_s1 && self.x1_b3_mod_m && self.slices_match
    }
}

fn as_i64(xs: &[u64]) -> Vec<i64> {
    xs.iter().map(|&x| x as i64).collect()
}

fn fold(x1: &[u64], h: u32) -> Vec<u64> {
    if x1.is_empty() {
        return Vec::new();
    }
    let set = IntSet::new(as_i64(x1)).expect("nonempty");
    crate::sumset::h_fold_sumset(&set, h)
        .expect("small sums")
        .elements()
        .iter()
        .map(|&x| x as u64)
        .collect()
}

/// Evaluates [`StructureFlags`] on `s`; meaningful when `q(S) = 4`.
pub fn structure_flags(s: &NumericalSemigroup) -> StructureFlags {
    let (lo, hi) = s.slice_bounds(1);
    let left_primitives_in_s1 = s
        .left_primitives()
        .iter()
        .all(|&p| (p as i64) >= lo && (p as i64) <= hi);
    let ap = s.apery_set();
    let x1 = ap.in_slice(1);
    let x1_b3_mod_m = x1.is_empty()
        || induces_bh_mod(&IntSet::new(as_i64(&x1)).expect("nonempty"), s.multiplicity(), 3)
            .expect("h = 3");
    let slices_match = ap.in_slice(2).is_empty()
        && ap.in_slice(3) == fold(&x1, 2)
        && ap.decomposable_in_slice(4) == fold(&x1, 3);
    StructureFlags {
        left_primitives_in_s1,
        x1_b3_mod_m,
        slices_match,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimizerExample {
    pub label: String,
    pub genus: u32,
    pub flags: StructureFlags,
}

#[derive(Debug, Clone)]
struct Entry {
    min: i64,
    minimizers: u64,
    minimizers_all_flags: u64,
    examples: Vec<MinimizerExample>,
    all_flag_count: u64,
    all_flag_max: i64,
}

impl Entry {
    fn merge(&mut self, other: Entry) {
        use std::cmp::Ordering::*;
        match other.min.cmp(&self.min) {
            Less => {
                self.min = other.min;
                self.minimizers = other.minimizers;
                self.minimizers_all_flags = other.minimizers_all_flags;
                self.examples = other.examples;
            }
            Equal => {
                self.minimizers += other.minimizers;
                self.minimizers_all_flags += other.minimizers_all_flags;
                self.examples.extend(other.examples);
                trim_examples(&mut self.examples);
            }
            Greater => {}
        }
        self.all_flag_count += other.all_flag_count;
        self.all_flag_max = self.all_flag_max.max(other.all_flag_max);
    }
}

fn trim_examples(examples: &mut Vec<MinimizerExample>) {
    examples.sort_by(|a, b| (a.genus, &a.label).cmp(&(b.genus, &b.label)));
    examples.truncate(EXAMPLES_KEPT);
}

/// One `(m, n)` cell of the minima table.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimaRow {
    pub m: u32,
    pub n: u32,
    /// Least `W₀ − ρ` seen.
    pub min_value: i64,
    /// `−C(n, 3)`
    pub bound: i64,
    pub minimizers: u64,
    pub minimizers_with_all_flags: u64,
    /// Semigroups in this cell with all three flags.
    pub all_flag_semigroups: u64,
    /// The minimizers are exactly the all-flag semigroups of the cell.
    pub exact_characterization: bool,
    /// Up to eight minimizers, least `(genus, label)` first.
    pub examples: Vec<MinimizerExample>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MinimaTable {
    pub g_max: u32,
    pub m_filter: Option<u32>,
    pub rows: Vec<MinimaRow>,
}

impl MinimaTable {
    pub fn row(&self, m: u32, n: u32) -> Option<&MinimaRow> {
        self.rows.iter().find(|r| r.m == m && r.n == n)
    }
}

/// Per `(m, n)` minimum of `W₀ − ρ` over `q = 4` nodes.
///
/// When all flags hold, `|X₁| = n − 1`, `|X₃| = C(n, 2)` and `|X₄ ∩ D| =
/// C(n + 1, 3)`, which pins `W₀ − ρ = −C(n, 3)`. So a node needs its flags
/// only if its value is at most the running minimum or equals `−C(n, 3)`,
/// and a node is skipped outright when `|P ∩ L||L| − 4m` already exceeds both.
pub(crate) struct MinimaVisitor {
    m_filter: Option<u32>,
    cells: HashMap<(u32, u32), Entry>,
}

impl MinimaVisitor {
    pub(crate) fn new(m_filter: Option<u32>) -> Self {
        MinimaVisitor {
            m_filter,
            cells: HashMap::new(),
        }
    }

    fn threshold(&self, m: u32, n: u32) -> i64 {
        let b = bound_for(n);
        self.cells.get(&(m, n)).map_or(i64::MAX, |e| e.min.max(b))
    }

    pub(crate) fn into_table(self, g_max: u32, m_filter: Option<u32>) -> MinimaTable {
        let mut rows: Vec<MinimaRow> = self
            .cells
            .into_iter()
            .map(|((m, n), e)| MinimaRow {
                m,
                n,
                min_value: e.min,
                bound: bound_for(n),
                minimizers: e.minimizers,
                minimizers_with_all_flags: e.minimizers_all_flags,
                all_flag_semigroups: e.all_flag_count,
                exact_characterization: e.minimizers == e.minimizers_all_flags
                    && (e.all_flag_count == 0 || e.all_flag_max == e.min),
                examples: e.examples,
            })
            .collect();
        rows.sort_by_key(|r| (r.m, r.n));
        MinimaTable {
            g_max,
            m_filter,
            rows,
        }
    }
}

impl Visitor for MinimaVisitor {
    fn wants_detail(&self, s: &NodeSummary) -> bool {
        if !is_q4(s) || self.m_filter.is_some_and(|m| m != s.multiplicity) {
            return false;
        }
        let lower = s.w0_lower_bound() - s.rho() as i64;
        lower <= self.threshold(s.multiplicity, s.left_primitives)
    }

    fn inspect(&mut self, node: &ExplorationNode) {
        let s = *node.summary();
        let r = node.report();
        let value = r.w0 - r.rho as i64;
        let key = (s.multiplicity, s.left_primitives);
        let bound = bound_for(s.left_primitives);
        let current = self.cells.get(&key).map_or(i64::MAX, |e| e.min);
        if value > current && value != bound {
            return;
        }
        let sg = node.to_semigroup();
        let flags = structure_flags(&sg);
        let all = flags.all();
        let entry = self.cells.entry(key).or_insert(Entry {
            min: value,
            minimizers: 0,
            minimizers_all_flags: 0,
            examples: Vec::new(),
            all_flag_count: 0,
            all_flag_max: i64::MIN,
        });
        if all {
            entry.all_flag_count += 1;
            entry.all_flag_max = entry.all_flag_max.max(value);
        }
        if value < entry.min {
            entry.min = value;
            entry.minimizers = 0;
            entry.minimizers_all_flags = 0;
            entry.examples.clear();
        }
        if value == entry.min {
            entry.minimizers += 1;
            entry.minimizers_all_flags += all as u64;
            if entry.examples.len() < 4 * EXAMPLES_KEPT {
                entry.examples.push(MinimizerExample {
                    label: sg.canonical_label(),
                    genus: s.genus,
                    flags,
                });
            } else {
                trim_examples(&mut entry.examples);
            }
        }
    }

    fn prune(&self, s: &NodeSummary) -> bool {
        if !s.multiplicity_is_fixed() {
            return self.m_filter.is_some_and(|m| s.multiplicity > m);
        }
        s.conductor > 4 * s.multiplicity || self.m_filter.is_some_and(|m| m != s.multiplicity)
    }

    fn merge(&mut self, other: Self) {
        for (k, e) in other.cells {
            match self.cells.get_mut(&k) {
                Some(mine) => mine.merge(e),
                None => {
                    self.cells.insert(k, e);
                }
            }
        }
    }
}

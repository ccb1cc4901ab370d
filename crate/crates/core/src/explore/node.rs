use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;
use crate::wilf::WilfReport;

/// Deepest genus the explorer accepts; keeps split counts within `u8`.
pub const MAX_GENUS: u32 = 80;

/// Cheap per-node data, available without touching the split counts.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NodeSummary {
    pub genus: u32,
    pub conductor: u32,
    pub multiplicity: u32,
    /// `|P ∩ L|`
    pub left_primitives: u32,
}

impl NodeSummary {
    pub fn q(&self) -> u32 {
        self.conductor.div_ceil(self.multiplicity)
    }

    pub fn rho(&self) -> u32 {
        self.q() * self.multiplicity - self.conductor
    }

    /// `|L| = c − g`
    pub fn left_count(&self) -> u32 {
        self.conductor - self.genus
    }

    /// Every descendant keeps this multiplicity (the node is not ordinary).
    pub fn multiplicity_is_fixed(&self) -> bool {
        self.conductor > self.multiplicity
    }

    /// `|P ∩ L||L| − c`, a lower bound for `W₀` since
    /// `W₀ = |P ∩ L||L| − c + q|P_q|`.
    pub fn w0_lower_bound(&self) -> i64 {
        self.left_primitives as i64 * self.left_count() as i64 - self.conductor as i64
    }
}

/// Undo record for [`ExplorationNode::apply`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Move {
    generator: u32,
    parent: NodeSummary,
}

/// One node of the semigroup tree, with reversible child moves.
///
/// `split_counts[x]` is the number of unordered pairs `{y, x − y} ⊂ S`, so
/// `x ∈ S` iff it is nonzero and `x > 0` is primitive iff it equals 1.
///
/// Below a non-ordinary node `m` is fixed and every descendant reads only
/// `x ≤ 2·g_max + m`, so moves there update that prefix alone; entries past
/// it keep stale but nonzero values.
#[derive(Debug, Clone)]
pub struct ExplorationNode {
    summary: NodeSummary,
    g_max: u32,
    split_counts: Vec<u8>,
}

impl PartialEq for ExplorationNode {
    fn eq(&self, other: &Self) -> bool {
        self.summary == other.summary
            && self.g_max == other.g_max
            && self.split_counts() == other.split_counts()
    }
}

impl Eq for ExplorationNode {}

fn window_for(g_max: u32) -> usize {
    // c ≤ 2g and m ≤ g + 1, so c + m ≤ 3g + 1
    3 * g_max as usize + 2
}

/// Slack after the window so whole 16-byte blocks can be swept.
const PAD: usize = 32;

#[inline(always)]
fn step<const UNDO: bool>(d: &mut u8, s: u8) {
    let bit = (s != 0) as u8;
    *d = if UNDO { d.wrapping_add(bit) } else { d.wrapping_sub(bit) };
}

/// `counts[x] ∓= [counts[x − p] ≠ 0]` for `x ∈ [p, end)`, reading only
/// values not yet written. Blocks may run past `end` into slack whose
/// contents are never read; wrapping keeps that exactly reversible.
#[inline]
fn sweep<const UNDO: bool>(counts: &mut [u8], p: usize, end: usize) {
    if end <= p {
        return;
    }
    let n = (end - p).next_multiple_of(PAD);
    if n <= p && p + n <= counts.len() {
        let (lo, hi) = counts.split_at_mut(p);
        for (d, s) in hi[..n].chunks_exact_mut(PAD).zip(lo[..n].chunks_exact(PAD)) {
            for i in 0..PAD {
                step::<UNDO>(&mut d[i], s[i]);
            }
        }
        return;
    }
    // descending chunks of width ≤ p
    let mut top = end;
    while top > p {
        let start = (top - p).max(p);
        let (lo, hi) = counts.split_at_mut(start);
        for (d, &s) in hi[..top - start].iter_mut().zip(&lo[start - p..top - p]) {
            step::<UNDO>(d, s);
        }
        top = start;
    }
}

impl ExplorationNode {
    /// `ℕ`, with split counts sized for descendants up to genus `g_max`.
    pub fn root(g_max: u32) -> Result<Self> {
        if g_max > MAX_GENUS {
            return Err(Error::Precondition(format!(
                "g_max = {g_max} exceeds the supported maximum {MAX_GENUS}"
            )));
        }
        let split_counts = (0..window_for(g_max) + PAD).map(|x| (x / 2 + 1) as u8).collect();
        Ok(ExplorationNode {
            g_max,
            summary: NodeSummary {
                genus: 0,
                conductor: 0,
                multiplicity: 1,
                left_primitives: 0,
            },
            split_counts,
        })
    }

    /// Rebuilds a node for `s`, sized for descendants up to genus `g_max`.
    pub fn from_semigroup(s: &NumericalSemigroup, g_max: u32) -> Result<Self> {
        if s.genus() > g_max as u64 {
            return Err(Error::Precondition(format!(
                "genus {} exceeds g_max = {g_max}",
                s.genus()
            )));
        }
        let mut node = ExplorationNode::root(g_max)?;
        for x in 0..window_for(g_max) {
            let count = (0..=x / 2)
                .filter(|&y| s.contains(y as i64) && s.contains((x - y) as i64))
                .count();
            node.split_counts[x] = count as u8;
        }
        node.summary = NodeSummary {
            genus: s.genus() as u32,
            conductor: s.conductor() as u32,
            multiplicity: s.multiplicity() as u32,
            left_primitives: s.left_primitives().len() as u32,
        };
        Ok(node)
    }

    pub fn summary(&self) -> &NodeSummary {
        &self.summary
    }

    pub fn genus(&self) -> u32 {
        self.summary.genus
    }

    pub fn conductor(&self) -> u32 {
        self.summary.conductor
    }

    pub fn multiplicity(&self) -> u32 {
        self.summary.multiplicity
    }

    /// The maintained prefix of the split counts.
    pub fn split_counts(&self) -> &[u8] {
        &self.split_counts[..self.valid_end()]
    }

    /// Bitmask of the effective generators, bit `i` of word `w` standing for
    /// `max(c, 1) + 64w + i`.
    #[inline]
    pub(crate) fn generator_words(&self) -> (usize, [u64; 2]) {
        let r = self.effective_range();
        let lo = *r.start();
        let counts = &self.split_counts[r];
        let mut words = [0u64; 2];
        for (w, chunk) in counts.chunks(64).enumerate() {
            let mut bits = 0u64;
            for (i, &v) in chunk.iter().enumerate() {
                bits |= ((v == 1) as u64) << i;
            }
            words[w] = bits;
        }
        (lo, words)
    }

    pub fn effective_generator_count(&self) -> u32 {
        let (_, words) = self.generator_words();
        words.iter().map(|w| w.count_ones()).sum()
    }

    /// End of the prefix kept exact by moves from this node.
    #[inline]
    fn valid_end(&self) -> usize {
        let s = &self.summary;
        if s.multiplicity_is_fixed() {
            (2 * self.g_max + s.multiplicity + 1) as usize
        } else {
            self.split_counts.len() - PAD
        }
    }

    pub fn contains(&self, x: u32) -> bool {
        x as usize >= self.valid_end() || self.split_counts[x as usize] != 0
    }

    /// Range holding every primitive above the Frobenius number:
    /// `[max(c, 1), c + m]` (the end only matters for `ℕ`).
    fn effective_range(&self) -> std::ops::RangeInclusive<usize> {
        let c = self.summary.conductor as usize;
        c.max(1)..=c + self.summary.multiplicity as usize
    }

    /// Primitives exceeding the Frobenius number, ascending.
    pub fn effective_generators(&self) -> impl Iterator<Item = u32> + '_ {
        self.effective_range()
            .filter(|&x| self.split_counts[x] == 1)
            .map(|x| x as u32)
    }

    /// `|P_q|`, the primitives at or above the conductor.
    pub fn right_primitives(&self) -> u32 {
        self.split_counts[self.effective_range()]
            .iter()
            .filter(|&&v| v == 1)
            .count() as u32
    }

    /// Summary of the child obtained by removing the effective generator
    /// `p`, given `rank` = number of effective generators below `p`.
    #[inline]
    pub fn child_summary(&self, p: u32, rank: u32) -> NodeSummary {
        let s = &self.summary;
        NodeSummary {
            genus: s.genus + 1,
            conductor: p + 1,
            multiplicity: if p == s.multiplicity { s.multiplicity + 1 } else { s.multiplicity },
            left_primitives: s.left_primitives + rank,
        }
    }

    #[inline]
    pub(crate) fn apply_ranked(&mut self, p: u32, rank: u32) -> Move {
        let mv = Move {
            generator: p,
            parent: self.summary,
        };
        let end = self.valid_end();
        self.summary = self.child_summary(p, rank);
        sweep::<false>(&mut self.split_counts, p as usize, end);
        mv
    }

    /// Moves to the child `S \ {p}`. `p` must be an effective generator and
    /// the child's genus must not exceed the window's `g_max`.
    pub fn apply(&mut self, p: u32) -> Result<Move> {
        if self.summary.genus >= self.g_max {
            return Err(Error::Precondition("child genus exceeds g_max".into()));
        }
        let rank = self.effective_generators().position(|g| g == p);
        match rank {
            Some(rank) => Ok(self.apply_ranked(p, rank as u32)),
            None => Err(Error::Precondition(format!(
                "{p} is not a primitive above the Frobenius number"
            ))),
        }
    }

    /// Reverts the most recent [`apply`](Self::apply).
    pub fn undo(&mut self, mv: Move) {
        let p = mv.generator as usize;
        self.summary = mv.parent;
        let end = self.valid_end();
        sweep::<true>(&mut self.split_counts, p, end);
        // the pair {p, p} is missed above because p itself reads as a gap
        if 2 * p < end {
            self.split_counts[2 * p] += 1;
        }
    }

    /// All children, as independent nodes.
    pub fn children(&self) -> Vec<ExplorationNode> {
        self.effective_generators()
            .enumerate()
            .map(|(rank, p)| {
                let mut child = self.clone();
                child.apply_ranked(p, rank as u32);
                child
            })
            .collect()
    }

    pub fn report(&self) -> WilfReport {
        let s = &self.summary;
        WilfReport::from_counts(
            s.multiplicity as u64,
            s.conductor as u64,
            s.genus as u64,
            s.left_primitives as u64,
            self.right_primitives() as u64,
        )
    }

    /// Materializes the node, labelled in compact form.
    pub fn to_semigroup(&self) -> NumericalSemigroup {
        let end = (self.summary.conductor + self.summary.multiplicity) as usize;
        let window = (0..end).map(|x| self.contains(x as u32)).collect();
        NumericalSemigroup::from_window_trusted(window)
            .expect("explorer nodes are semigroups")
            .compact()
    }

    /// FNV-1a over the split counts and summary.
    pub fn checksum(&self) -> u64 {
        let s = &self.summary;
        let head = [s.genus, s.conductor, s.multiplicity, s.left_primitives];
        head.iter()
            .flat_map(|v| v.to_le_bytes())
            .chain(self.split_counts.iter().copied())
            .fold(0xcbf2_9ce4_8422_2325u64, |h, b| {
                (h ^ b as u64).wrapping_mul(0x0100_0000_01b3)
            })
    }
}

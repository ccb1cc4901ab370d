use serde::Serialize;

use super::checkpoint::{read_records, read_u32, read_u64, write_records, Resumable};
use super::node::{ExplorationNode, NodeSummary};
use super::Visitor;
use crate::error::{Error, Result};
use crate::wilf::WilfReport;

/// A semigroup found by a scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HuntRecord {
    pub label: String,
    pub report: WilfReport,
}

impl HuntRecord {
    pub fn from_node(node: &ExplorationNode) -> Self {
        HuntRecord {
            label: node.to_semigroup().canonical_label(),
            report: node.report(),
        }
    }
}

pub(crate) fn sort_records(records: &mut [HuntRecord]) {
    records.sort_by(|a, b| (a.report.genus, &a.label).cmp(&(b.report.genus, &b.label)));
}

/// Optional restrictions for [`hunt_near_misses`](super::hunt_near_misses).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct HuntFilter {
    /// Only `q = ⌈c/m⌉` equal to this.
    pub q: Option<u32>,
    pub m_min: Option<u32>,
    pub m_max: Option<u32>,
}

impl HuntFilter {
    pub fn validate(&self) -> Result<()> {
        if let (Some(lo), Some(hi)) = (self.m_min, self.m_max) {
            if lo > hi {
                return Err(Error::Precondition(format!("empty m range [{lo}, {hi}]")));
            }
        }
        Ok(())
    }

    fn m_in_range(&self, m: u32) -> bool {
        self.m_min.is_none_or(|lo| m >= lo) && self.m_max.is_none_or(|hi| m <= hi)
    }

    fn accepts(&self, s: &NodeSummary) -> bool {
        self.m_in_range(s.multiplicity) && self.q.is_none_or(|q| s.q() == q)
    }

    /// `m` never decreases along a branch and is fixed below non-ordinary
    /// nodes, where `q` can only grow.
    fn prunes(&self, s: &NodeSummary) -> bool {
        if self.m_max.is_some_and(|hi| s.multiplicity > hi) {
            return true;
        }
        s.multiplicity_is_fixed()
            && (!self.m_in_range(s.multiplicity) || self.q.is_some_and(|q| s.q() > q))
    }

    fn describe(&self) -> String {
        format!("q={:?};m_min={:?};m_max={:?}", self.q, self.m_min, self.m_max)
    }
}

pub(crate) struct CensusVisitor {
    counts: Vec<u64>,
}

impl CensusVisitor {
    pub(crate) fn new(g_max: u32) -> Self {
        CensusVisitor {
            counts: vec![0; g_max as usize + 1],
        }
    }

    pub(crate) fn into_counts(self) -> Vec<u64> {
        self.counts
    }
}

impl Visitor for CensusVisitor {
    #[inline]
    fn count(&mut self, s: &NodeSummary) {
        self.counts[s.genus as usize] += 1;
    }

    fn merge(&mut self, other: Self) {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
    }
}

impl Resumable for CensusVisitor {
    fn descriptor(&self) -> String {
        "census".into()
    }

    fn encode(&self, out: &mut Vec<u8>) {
        out.extend((self.counts.len() as u32).to_le_bytes());
        for c in &self.counts {
            out.extend(c.to_le_bytes());
        }
    }

    fn decode(&self, bytes: &mut &[u8]) -> Result<Self> {
        let n = read_u32(bytes)? as usize;
        if n != self.counts.len() {
            return Err(Error::Checkpoint("census length mismatch".into()));
        }
        let counts = (0..n).map(|_| read_u64(bytes)).collect::<Result<_>>()?;
        Ok(CensusVisitor { counts })
    }
}

pub(crate) struct HuntVisitor {
    filter: HuntFilter,
    records: Vec<HuntRecord>,
}

impl HuntVisitor {
    pub(crate) fn new(filter: HuntFilter) -> Self {
        HuntVisitor {
            filter,
            records: Vec::new(),
        }
    }

    pub(crate) fn into_records(mut self) -> Vec<HuntRecord> {
        sort_records(&mut self.records);
        self.records
    }
}

impl Visitor for HuntVisitor {
    #[inline]
    fn wants_detail(&self, s: &NodeSummary) -> bool {
        s.w0_lower_bound() < 0 && self.filter.accepts(s)
    }

    fn inspect(&mut self, node: &ExplorationNode) {
        if node.report().w0 < 0 {
            self.records.push(HuntRecord::from_node(node));
        }
    }

    #[inline]
    fn prune(&self, s: &NodeSummary) -> bool {
        self.filter.prunes(s)
    }

    fn merge(&mut self, other: Self) {
        self.records.extend(other.records);
    }
}

impl Resumable for HuntVisitor {
    fn descriptor(&self) -> String {
        format!("hunt;{}", self.filter.describe())
    }

    fn encode(&self, out: &mut Vec<u8>) {
        write_records(&self.records, out);
    }

    fn decode(&self, bytes: &mut &[u8]) -> Result<Self> {
        Ok(HuntVisitor {
            filter: self.filter,
            records: read_records(bytes)?,
        })
    }
}

/// Outcome of [`scan_conjecture_bound`](super::scan_conjecture_bound).
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct BoundScan {
    /// Semigroups with `q = 4` visited.
    pub checked: u64,
    pub violations: Vec<HuntRecord>,
}

/// `C(n, 3)` for the small `n` met in the tree.
fn choose3(n: u32) -> i64 {
    let n = n as i64;
    n * (n - 1) * (n - 2) / 6
}

pub(crate) fn bound_for(n: u32) -> i64 {
    -choose3(n)
}

#[inline]
pub(crate) fn is_q4(s: &NodeSummary) -> bool {
    s.conductor > 3 * s.multiplicity && s.conductor <= 4 * s.multiplicity
}

#[derive(Default)]
pub(crate) struct BoundVisitor {
    scan: BoundScan,
}

impl BoundVisitor {
    pub(crate) fn into_scan(mut self) -> BoundScan {
        sort_records(&mut self.scan.violations);
        self.scan
    }
}

impl Visitor for BoundVisitor {
    #[inline]
    fn count(&mut self, s: &NodeSummary) {
        self.scan.checked += is_q4(s) as u64;
    }

    #[inline]
    fn wants_detail(&self, s: &NodeSummary) -> bool {
        is_q4(s) && s.w0_lower_bound() < bound_for(s.left_primitives)
    }

    fn inspect(&mut self, node: &ExplorationNode) {
        if node.report().w0 < bound_for(node.summary().left_primitives) {
            self.scan.violations.push(HuntRecord::from_node(node));
        }
    }

    #[inline]
    fn prune(&self, s: &NodeSummary) -> bool {
        s.multiplicity_is_fixed() && s.conductor > 4 * s.multiplicity
    }

    fn merge(&mut self, other: Self) {
        self.scan.checked += other.scan.checked;
        self.scan.violations.extend(other.scan.violations);
    }
}

impl Resumable for BoundVisitor {
    fn descriptor(&self) -> String {
        "bound".into()
    }

    fn encode(&self, out: &mut Vec<u8>) {
        out.extend(self.scan.checked.to_le_bytes());
        write_records(&self.scan.violations, out);
    }

    fn decode(&self, bytes: &mut &[u8]) -> Result<Self> {
        let checked = read_u64(bytes)?;
        let violations = read_records(bytes)?;
        Ok(BoundVisitor {
            scan: BoundScan {
                checked,
                violations,
            },
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn summary(genus: u32, conductor: u32, multiplicity: u32) -> NodeSummary {
        NodeSummary {
            genus,
            conductor,
            multiplicity,
            left_primitives: 1,
        }
    }

    #[test]
    fn filter_pruning() {
        let f = HuntFilter {
            q: Some(4),
            m_min: Some(10),
            m_max: Some(20),
        };
        // ordinary node with small m: descendants may still reach m = 10
        assert!(!f.prunes(&summary(5, 6, 6)));
        // fixed m below range
        assert!(f.prunes(&summary(10, 12, 6)));
        // q = 5 with fixed m
        assert!(f.prunes(&summary(50, 57, 14)));
        assert!(!f.prunes(&summary(43, 56, 14)));
        assert!(f.prunes(&summary(20, 21, 21)));
        assert!(HuntFilter {
            m_min: Some(3),
            m_max: Some(2),
            q: None
        }
        .validate()
        .is_err());
    }

    #[test]
    fn choose3_values() {
        assert_eq!(bound_for(3), -1);
        assert_eq!(bound_for(4), -4);
        assert_eq!(bound_for(1), 0);
        assert_eq!(bound_for(0), 0);
    }
}

//! Wilf number `W(S) = |P||L| − c`, its refinement
//! `W₀(S) = |P ∩ L||L| − q|D_q| + ρ`, and the slice counts behind them.
//!
//! For `S = ℕ` (`c = 0`) every formula is evaluated with empty sets, so
//! `q = ρ = 0` and `W = W₀ = 0`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::NumericalSemigroup;

/// Every invariant of one semigroup that `W` and `W₀` are built from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WilfReport {
    pub m: u64,
    pub c: u64,
    pub q: u64,
    pub rho: u64,
    pub genus: u64,
    /// `|P|`
    pub p_total: u64,
    /// `|P ∩ L|`
    pub p_left: u64,
    /// `|L|`
    pub l_count: u64,
    /// `|D_q|`
    pub dq_count: u64,
    /// `|P_q|`
    pub pq_count: u64,
    pub w: i64,
    pub w0: i64,
    pub near_miss: bool,
}

/// CSV header for [`WilfReport::csv_row`].
pub const REPORT_CSV_HEADER: &str = "m,c,q,rho,genus,P,PL,L,Dq,Pq,W,W0,near_miss,label";

impl WilfReport {
    /// Assembles a report from raw counts; `W` and `W₀` are derived.
    pub fn from_counts(m: u64, c: u64, genus: u64, p_left: u64, pq_count: u64) -> Self {
        let q = c.div_ceil(m);
        let rho = q * m - c;
        let l_count = c - genus;
        let dq_count = m - pq_count;
        let p_total = p_left + pq_count;
        let w = (p_total * l_count) as i64 - c as i64;
        let w0 = (p_left * l_count) as i64 - (q * dq_count) as i64 + rho as i64;
        WilfReport {
            m,
            c,
            q,
            rho,
            genus,
            p_total,
            p_left,
            l_count,
            dq_count,
            pq_count,
            w,
            w0,
            near_miss: w0 < 0,
        }
    }

    /// One CSV row under [`REPORT_CSV_HEADER`]; `label` should not contain commas.
    pub fn csv_row(&self, label: &str) -> String {
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.m,
            self.c,
            self.q,
            self.rho,
            self.genus,
            self.p_total,
            self.p_left,
            self.l_count,
            self.dq_count,
            self.pq_count,
            self.w,
            self.w0,
            self.near_miss,
            label
        )
    }

    /// Structural identities every report must satisfy; returns the first
    /// one that fails.
    pub fn check_invariants(&self) -> std::result::Result<(), &'static str> {
        if self.c != self.q * self.m - self.rho || self.rho >= self.m {
            return Err("c = qm − ρ with 0 ≤ ρ < m");
        }
        if self.p_total != self.p_left + self.pq_count {
            return Err("|P| = |P ∩ L| + |P_q|");
        }
        if self.m != self.pq_count + self.dq_count {
            return Err("m = |P_q| + |D_q|");
        }
        if self.w != self.w0 + self.pq_count as i64 * (self.l_count as i64 - self.q as i64) {
            return Err("W = W₀ + |P_q|(|L| − q)");
        }
        if self.near_miss != (self.w0 < 0) {
            return Err("near_miss ⇔ W₀ < 0");
        }
        if self.l_count < self.q {
            return Err("|L| ≥ q");
        }
        if self.w0 >= 0 && self.w < 0 {
            return Err("W₀ ≥ 0 ⇒ W ≥ 0");
        }
        if self.p_total == self.p_left && self.w != self.w0 {
            return Err("P = P ∩ L ⇒ W = W₀");
        }
        Ok(())
    }
}

pub fn q_rho(s: &NumericalSemigroup) -> (u64, u64) {
    (s.q(), s.rho())
}

pub fn wilf_number(s: &NumericalSemigroup) -> i64 {
    (s.primitives().len() as u64 * s.left_count()) as i64 - s.conductor() as i64
}

/// `D_q = D ∩ [c, c + m − 1]`, counted.
fn dq_count(s: &NumericalSemigroup) -> u64 {
    let c = s.conductor();
    (c..c + s.multiplicity())
        .filter(|&x| s.is_decomposable(x))
        .count() as u64
}

pub fn w0_number(s: &NumericalSemigroup) -> i64 {
    let (q, rho) = q_rho(s);
    (s.left_primitives().len() as u64 * s.left_count()) as i64 - (q * dq_count(s)) as i64
        + rho as i64
}

/// One row of the slice profile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SliceRow {
    pub j: u64,
    /// `|X_j|`
    pub apery: u64,
    /// `|P_j|`
    pub primitives: u64,
    /// `|D_j|`
    pub decomposables: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SliceProfile {
    /// Rows for `0 ≤ j ≤ q`.
    pub rows: Vec<SliceRow>,
    /// `|X_q ∩ D|`
    pub xq_decomposable: u64,
}

impl SliceProfile {
    pub fn apery_count(&self, j: u64) -> u64 {
        self.rows.get(j as usize).map_or(0, |r| r.apery)
    }
}

pub fn slice_profile(s: &NumericalSemigroup) -> SliceProfile {
    let q = s.q();
    let ap = s.apery_set();
    let rows = (0..=q)
        .map(|j| {
            let slice = s.slice(j);
            let primitives = slice.iter().filter(|&&x| s.is_primitive(x)).count() as u64;
            let decomposables = slice.iter().filter(|&&x| s.is_decomposable(x)).count() as u64;
            SliceRow {
                j,
                apery: ap.in_slice(j).len() as u64,
                primitives,
                decomposables,
            }
        })
        .collect();
    SliceProfile {
        rows,
        xq_decomposable: ap.decomposable_in_slice(q).len() as u64,
    }
}

/// Checks `|L| = Σ (q − i)|X_i|` and `|D_q| = Σ_{i<q} |X_i| + |X_q ∩ D|`
/// against direct counts, together with the set partitions
/// `L = ⊔ (X_i + [0, q−i−1]·m)` and `D_q = (X_q ∩ D) ⊔ ⊔ (X_i + (q−i)m)`.
///
/// Requires `q ≥ 1`, i.e. `S ≠ ℕ`.
pub fn check_count_formulas(s: &NumericalSemigroup) -> Result<bool> {
    let q = s.q();
    if q == 0 {
        return Err(Error::Precondition("count formulas need q ≥ 1 (S ≠ ℕ)".into()));
    }
    let m = s.multiplicity();
    let ap = s.apery_set();
    let xs: Vec<Vec<u64>> = (0..=q).map(|j| ap.in_slice(j)).collect();

    let l_formula: u64 = (0..q).map(|i| (q - i) * xs[i as usize].len() as u64).sum();
    let c = s.conductor();
    let dq_direct: Vec<u64> = (c..c + m).filter(|&x| s.is_decomposable(x)).collect();
    let xq_d = ap.decomposable_in_slice(q);
    let dq_formula: u64 =
        xs[..q as usize].iter().map(|x| x.len() as u64).sum::<u64>() + xq_d.len() as u64;

    let mut l_parts: Vec<u64> = (0..q)
        .flat_map(|i| {
            let x = &xs[i as usize];
            (0..q - i).flat_map(move |k| x.iter().map(move |&a| a + k * m))
        })
        .collect();
    l_parts.sort_unstable();
    let mut dq_parts: Vec<u64> = xq_d
        .iter()
        .copied()
        .chain((0..q).flat_map(|i| xs[i as usize].iter().map(move |&a| a + (q - i) * m)))
        .collect();
    dq_parts.sort_unstable();

    Ok(l_formula == s.left_count()
        && dq_formula == dq_direct.len() as u64
        && l_parts == s.left_part()
        && dq_parts == dq_direct)
}

pub fn wilf_report(s: &NumericalSemigroup) -> WilfReport {
    let c = s.conductor();
    let pq = s.primitives().iter().filter(|&&p| p >= c).count() as u64;
    WilfReport::from_counts(
        s.multiplicity(),
        c,
        s.genus(),
        s.left_primitives().len() as u64,
        pq,
    )
}

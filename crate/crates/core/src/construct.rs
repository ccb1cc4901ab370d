//! Near-miss families `S = <{m} ∪ A>_{4m}` with `W₀(S) = −C(n,3)`, and the
//! checks that certify each built instance.
//!
//! All rational hypotheses such as `(3m+1)/2 ≤ a` are compared after
//! cross-multiplying (`2a ≥ 3m + 1`), never in floating point. Errors name
//! the first failing clause in the order the hypotheses are stated.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::semigroup::{GeneratorSpec, NumericalSemigroup};
use crate::sumset::{
    binomial, geometric_bh_family, h_fold_sumset, induces_bh_mod, is_bh, union_collision, IntSet,
};
use crate::wilf::{wilf_report, WilfReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Recipe {
    /// `<m, a, b>_{4m}`
    Pair,
    /// `<m, a, a+1>_{4m}` with `a = (3m + k)/2`
    Consecutive,
    /// `<{m} ∪ A>_{4m}` for a B₃-inducing `A`
    BhGeneral,
    /// `A = (3m + k)/2 + A'` for a B₃ set `A' ∋ 0`
    Translated,
    /// `A' = {3^i − 1 : 0 ≤ i ≤ n − 2}`, `m = 3k + 6r + 2`
    ExplicitPower,
}

impl fmt::Display for Recipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Recipe::Pair => "pair",
            Recipe::Consecutive => "consecutive",
            Recipe::BhGeneral => "bh_general",
            Recipe::Translated => "translated",
            Recipe::ExplicitPower => "explicit_power",
        })
    }
}

/// Recipe inputs; fields not used by a recipe stay `None`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ConstructionParams {
    pub m: u64,
    /// The left primitives other than `m`.
    pub a_set: Vec<u64>,
    pub a: Option<u64>,
    pub b: Option<u64>,
    pub k: Option<u64>,
    pub n: Option<u64>,
    pub offsets: Option<Vec<u64>>,
    pub r: Option<u64>,
}

/// Invariants the construction is proven to produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PredictedProfile {
    pub n: u64,
    pub c_expected: u64,
    pub q_expected: u64,
    pub rho_expected: u64,
    pub l_expected: u64,
    pub d4_expected: u64,
    pub w0_expected: i64,
    pub w_min: i64,
    /// `4m + [⌊(m+1)/3⌋, ⌈(m−1)/2⌉]`, inclusive.
    pub j_interval: (u64, u64),
}

impl PredictedProfile {
    pub fn new(m: u64, n: u64) -> Result<Self> {
        Ok(PredictedProfile {
            n,
            c_expected: 4 * m,
            q_expected: 4,
            rho_expected: 0,
            l_expected: binomial(n, 2)? + 3 * n + 1,
            d4_expected: binomial(n + 2, 3)?,
            w0_expected: -(binomial(n, 3)? as i64),
            w_min: 9,
            j_interval: (4 * m + (m + 1) / 3, 4 * m + (m - 1).div_ceil(2)),
        })
    }

    pub fn j_len(&self) -> u64 {
        self.j_interval.1 + 1 - self.j_interval.0
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructionResult {
    pub recipe: Recipe,
    pub params: ConstructionParams,
    pub semigroup: NumericalSemigroup,
    pub predicted: PredictedProfile,
    pub computed: WilfReport,
}

/// Shared bounds `(3m+1)/2 ≤ a < b ≤ (5m−1)/3` on `min A`, `max A`.
fn check_bounds(m: u64, a: u64, b: u64) -> Result<()> {
    if m == 0 {
        return Err(Error::hypothesis("m ≥ 1 fails"));
    }
    if 2 * a < 3 * m + 1 {
        return Err(Error::hypothesis(format!(
            "(3m+1)/2 ≤ a fails: a = {a}, (3m+1)/2 = {}/2",
            3 * m + 1
        )));
    }
    if a >= b {
        return Err(Error::hypothesis(format!("a < b fails: a = {a}, b = {b}")));
    }
    if 3 * b > 5 * m - 1 {
        return Err(Error::hypothesis(format!(
            "b ≤ (5m−1)/3 fails: b = {b}, (5m−1)/3 = {}/3",
            5 * m - 1
        )));
    }
    Ok(())
}

fn check_union_distinct(a_set: &IntSet, m: u64) -> Result<()> {
    if let Some((x, y)) = union_collision(a_set, 3, m)? {
        let fmt_sum = |v: &[i64]| v.iter().map(i64::to_string).collect::<Vec<_>>().join("+");
        let sx: i64 = x.iter().sum();
        return Err(Error::hypothesis(format!(
            "A ∪ 2A ∪ 3A pairwise distinct mod m fails: {} ≡ {} ≡ {} (mod {m})",
            fmt_sum(&x),
            fmt_sum(&y),
            sx.rem_euclid(m as i64)
        )));
    }
    Ok(())
}

fn as_intset(values: &[u64]) -> Result<IntSet> {
    IntSet::new(values.iter().map(|&x| x as i64).collect())
}

fn build(recipe: Recipe, params: ConstructionParams) -> Result<ConstructionResult> {
    let m = params.m;
    let mut gens = vec![m];
    gens.extend(&params.a_set);
    let spec = GeneratorSpec::new(gens, Some(4 * m))?;
    let semigroup = NumericalSemigroup::from_generators(&spec)?;
    let n = params.a_set.len() as u64 + 1;
    Ok(ConstructionResult {
        recipe,
        predicted: PredictedProfile::new(m, n)?,
        computed: wilf_report(&semigroup),
        semigroup,
        params: ConstructionParams {
            n: Some(n),
            ..params
        },
    })
}

/// `<m, a, b>_{4m}` under `(3m+1)/2 ≤ a < b ≤ (5m−1)/3` with
/// `A ∪ 2A ∪ 3A` pairwise distinct mod `m`.
pub fn construct_pair(m: u64, a: u64, b: u64) -> Result<ConstructionResult> {
    check_bounds(m, a, b)?;
    check_union_distinct(&as_intset(&[a, b])?, m)?;
    build(
        Recipe::Pair,
        ConstructionParams {
            m,
            a_set: vec![a, b],
            a: Some(a),
            b: Some(b),
            ..Default::default()
        },
    )
}

/// `<m, a, a+1>_{4m}` with `a = (3m+k)/2`, for `k ≥ 2`, `m ≥ 3k+8`,
/// `m ≡ k (mod 2)`.
pub fn construct_consecutive(m: u64, k: u64) -> Result<ConstructionResult> {
    if k < 2 {
        return Err(Error::hypothesis(format!("k ≥ 2 fails: k = {k}")));
    }
    if m < 3 * k + 8 {
        return Err(Error::hypothesis(format!(
            "m ≥ 3k+8 fails: m = {m}, 3k+8 = {}",
            3 * k + 8
        )));
    }
    if m % 2 != k % 2 {
        return Err(Error::hypothesis(format!(
            "m ≡ k (mod 2) fails: m = {m}, k = {k}"
        )));
    }
    let a = (3 * m + k) / 2;
    let mut r = construct_pair(m, a, a + 1)?;
    r.recipe = Recipe::Consecutive;
    r.params.k = Some(k);
    Ok(r)
}

/// `<{m} ∪ A>_{4m}` for `|A| = n − 1 ≥ 2` with
/// `(3m+1)/2 ≤ min A < max A ≤ (5m−1)/3` and `A` inducing a B₃ set in ℤ/mℤ.
///
/// Also requires `A ∪ 2A ∪ 3A` to be pairwise distinct mod `m`: B₃ mod `m`
/// alone admits e.g. `m = 17, A = {26, 27}`, where `27 + 51 = 3·26` and
/// `W₀ = 3`.
pub fn construct_bh(m: u64, a_set: &IntSet) -> Result<ConstructionResult> {
    let n = a_set.len() as u64 + 1;
    if n < 3 {
        return Err(Error::hypothesis(format!("n = |A| + 1 ≥ 3 fails: n = {n}")));
    }
    if a_set.min() <= 0 {
        return Err(Error::hypothesis("A ⊂ ℕ₊ fails"));
    }
    let (a, b) = (a_set.min() as u64, a_set.max() as u64);
    check_bounds(m, a, b)?;
    if !induces_bh_mod(a_set, m, 3)? {
        return Err(Error::hypothesis(format!(
            "A induces a B₃ set in ℤ/{m}ℤ fails"
        )));
    }
    check_union_distinct(a_set, m)?;
    build(
        Recipe::BhGeneral,
        ConstructionParams {
            m,
            a_set: a_set.elements().iter().map(|&x| x as u64).collect(),
            a: Some(a),
            b: Some(b),
            ..Default::default()
        },
    )
}

/// `A = a + A'` with `a = (3m+k)/2`, where `A' ∋ 0` is a B₃ set over ℤ with
/// `r = max A'`, `k ≥ r+1`, `m ≥ 3k+6r+2`, `m ≡ k (mod 2)`.
pub fn construct_translated(offsets: &IntSet, k: u64, m: u64) -> Result<ConstructionResult> {
    if !is_bh(offsets, 3)? {
        return Err(Error::hypothesis("A' is a B₃ set fails"));
    }
    if !offsets.contains(0) || offsets.min() < 0 {
        return Err(Error::hypothesis("A' ⊂ ℕ with 0 ∈ A' fails"));
    }
    let r = offsets.max() as u64;
    if k < r + 1 {
        return Err(Error::hypothesis(format!("k ≥ r+1 fails: k = {k}, r = {r}")));
    }
    if m < 3 * k + 6 * r + 2 {
        return Err(Error::hypothesis(format!(
            "m ≥ 3k+6r+2 fails: m = {m}, 3k+6r+2 = {}",
            3 * k + 6 * r + 2
        )));
    }
    if m % 2 != k % 2 {
        return Err(Error::hypothesis(format!(
            "m ≡ k (mod 2) fails: m = {m}, k = {k}"
        )));
    }
    let a = (3 * m + k) / 2;
    let shifted = offsets.translate(a as i64)?;
    let mut res = construct_bh(m, &shifted)?;
    res.recipe = Recipe::Translated;
    res.params.k = Some(k);
    res.params.r = Some(r);
    res.params.offsets = Some(offsets.elements().iter().map(|&x| x as u64).collect());
    Ok(res)
}

/// The family `A' = {3^0 − 1, ..., 3^{n−2} − 1}`, `m = 3k + 6r + 2`, for
/// `n ≥ 3` and `k ≥ r + 1`.
pub fn explicit_family(n: u64, k: u64) -> Result<ConstructionResult> {
    if n < 3 {
        return Err(Error::hypothesis(format!("n ≥ 3 fails: n = {n}")));
    }
    let offsets = geometric_bh_family(3, (n - 1) as usize, true)?;
    let r = offsets.max() as u64;
    if k < r + 1 {
        return Err(Error::hypothesis(format!("k ≥ r+1 fails: k = {k}, r = {r}")));
    }
    let m = 3 * k + 6 * r + 2;
    let mut res = construct_translated(&offsets, k, m)?;
    res.recipe = Recipe::ExplicitPower;
    Ok(res)
}

/// Outcome of one verification check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verification {
    pub checks: Vec<Check>,
}

impl Verification {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

/// A construction whose computed invariants disagree with the proven ones.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("construction mismatch: {}", .0.failures().map(|c| c.name).collect::<Vec<_>>().join(", "))]
pub struct Mismatch(pub Verification);

fn fmt_set(v: &[u64]) -> String {
    format!("{v:?}")
}

/// Recomputes the structure of `result.semigroup` directly and compares it
/// with what the construction guarantees.
pub fn verify_construction(result: &ConstructionResult) -> std::result::Result<Verification, Mismatch> {
    let s = &result.semigroup;
    let r = &result.computed;
    let pred = &result.predicted;
    let m = s.multiplicity();
    let mut checks = Vec::new();
    let mut check = |name: &'static str, passed: bool, detail: String| {
        checks.push(Check {
            name,
            passed,
            detail,
        })
    };

    let fresh = wilf_report(s);
    check(
        "report is current",
        fresh == *r,
        format!("W = {}, W₀ = {} on recomputation", fresh.w, fresh.w0),
    );
    check(
        "c = 4m, q = 4, ρ = 0",
        (r.c, r.q, r.rho) == (pred.c_expected, pred.q_expected, pred.rho_expected),
        format!("c = {}, q = {}, ρ = {}", r.c, r.q, r.rho),
    );
    check(
        "|P ∩ L| = n",
        r.p_left == pred.n,
        format!("|P ∩ L| = {}, n = {}", r.p_left, pred.n),
    );

    let a: Vec<u64> = result.params.a_set.clone();
    let a_int = IntSet::new(a.iter().map(|&x| x as i64).collect());
    let (two_a, three_a) = match &a_int {
        Ok(set) => (
            h_fold_sumset(set, 2).map(|x| x.elements().iter().map(|&v| v as u64).collect()),
            h_fold_sumset(set, 3).map(|x| x.elements().iter().map(|&v| v as u64).collect()),
        ),
        Err(e) => (Err(e.clone()), Err(e.clone())),
    };
    let two_a: Vec<u64> = two_a.unwrap_or_default();
    let three_a: Vec<u64> = three_a.unwrap_or_default();
    let ap = s.apery_set();
    let (x1, x2, x3, x4d) = (
        ap.in_slice(1),
        ap.in_slice(2),
        ap.in_slice(3),
        ap.decomposable_in_slice(4),
    );
    check("X₁ = A", x1 == a, format!("X₁ = {}", fmt_set(&x1)));
    check("X₂ = ∅", x2.is_empty(), format!("X₂ = {}", fmt_set(&x2)));
    check("X₃ = 2A", x3 == two_a, format!("X₃ = {}", fmt_set(&x3)));
    check("X₄ ∩ D = 3A", x4d == three_a, format!("X₄ ∩ D = {}", fmt_set(&x4d)));
    check(
        "|L| = C(n,2) + 3n + 1",
        r.l_count == pred.l_expected,
        format!("|L| = {}, predicted {}", r.l_count, pred.l_expected),
    );
    check(
        "|D₄| = C(n+2,3)",
        r.dq_count == pred.d4_expected,
        format!("|D₄| = {}, predicted {}", r.dq_count, pred.d4_expected),
    );
    check(
        "W₀ = −C(n,3)",
        r.w0 == pred.w0_expected,
        format!("W₀ = {}, predicted {}", r.w0, pred.w0_expected),
    );
    let (jlo, jhi) = pred.j_interval;
    let outside: Vec<u64> = (jlo..=jhi)
        .filter(|&x| !(x >= 4 * m && x < 5 * m && s.is_primitive(x)))
        .collect();
    check(
        "J ⊆ P₄",
        outside.is_empty(),
        format!("J = [{jlo}, {jhi}], not in P₄: {}", fmt_set(&outside)),
    );
    check(
        "|J| ≥ m/6",
        6 * pred.j_len() >= m,
        format!("|J| = {}, m = {m}", pred.j_len()),
    );
    check(
        "|P₄| ≥ m/6",
        6 * r.pq_count >= m,
        format!("|P₄| = {}, m = {m}", r.pq_count),
    );
    check(
        "W = |P₄|(|L| − 4) + W₀",
        r.w == r.pq_count as i64 * (r.l_count as i64 - 4) + r.w0,
        format!("W = {}", r.w),
    );
    check(
        "W ≥ 9",
        r.w >= pred.w_min,
        format!("W = {}", r.w),
    );

    let v = Verification { checks };
    if v.all_passed() {
        Ok(v)
    } else {
        Err(Mismatch(v))
    }
}

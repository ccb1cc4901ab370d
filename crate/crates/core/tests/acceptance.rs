//! Acceptance suite. Every criterion is checked against an oracle written
//! here from the definitions, independent of the library's own algorithms,
//! and prints one PASS/FAIL line.

use std::panic::{self, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use nearmiss::explore::default_threads;
use nearmiss::sumset::{h_fold_sumset, is_bh};
use nearmiss::{
    census, construct_bh, construct_consecutive, construct_pair, construct_translated,
    explicit_family, hunt_near_misses, scan_conjecture_bound, wilf_report, ConstructionResult,
    ExploreOptions, HuntFilter, IntSet, NumericalSemigroup,
};
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

// ---------------------------------------------------------------------------
// Oracle: a semigroup as a membership table, with every invariant computed
// straight from its definition.

struct Oracle {
    /// Membership of `0..len`; everything from `len` on is in S.
    member: Vec<bool>,
}

impl Oracle {
    fn from_membership(member: Vec<bool>) -> Self {
        assert!(member[0], "0 must be in S");
        Oracle { member }
    }

    /// `<gens> ∪ [t, ∞)`, closed by a reachability sweep over `[0, t)`.
    fn generated(gens: &[u64], t: u64) -> Self {
        let t = t as usize;
        let mut member = vec![false; t.max(1)];
        member[0] = true;
        for x in 1..t {
            member[x] = gens
                .iter()
                .any(|&g| (g as usize) <= x && member[x - g as usize]);
        }
        Oracle { member }
    }

    fn contains(&self, x: u64) -> bool {
        self.member.get(x as usize).copied().unwrap_or(true)
    }

    fn conductor(&self) -> u64 {
        (0..self.member.len())
            .rev()
            .find(|&x| !self.member[x])
            .map_or(0, |f| f as u64 + 1)
    }

    fn multiplicity(&self) -> u64 {
        (1..).find(|&x| self.contains(x)).unwrap()
    }

    fn genus(&self) -> u64 {
        (0..self.conductor()).filter(|&x| !self.contains(x)).count() as u64
    }

    /// `x ∈ S* + S*`
    fn decomposable(&self, x: u64) -> bool {
        (1..x).any(|y| self.contains(y) && self.contains(x - y))
    }

    /// Minimal generators; all of them lie in `[m, max(c + m − 1, m)]`.
    fn primitives(&self) -> Vec<u64> {
        let m = self.multiplicity();
        let top = (self.conductor() + m - 1).max(m);
        (m..=top)
            .filter(|&x| self.contains(x) && !self.decomposable(x))
            .collect()
    }

    /// `Ap(S, m)` indexed by residue.
    fn apery(&self) -> Vec<u64> {
        let m = self.multiplicity();
        (0..m)
            .map(|r| (0..).map(|j| r + j * m).find(|&x| self.contains(x)).unwrap())
            .collect()
    }

    fn profile(&self) -> Profile {
        let c = self.conductor();
        let m = self.multiplicity();
        let q = c.div_ceil(m);
        let rho = q * m - c;
        let p = self.primitives();
        let left: Vec<u64> = (0..c).filter(|&x| self.contains(x)).collect();
        let p_left = p.iter().filter(|&&x| x < c).count() as u64;
        let p_q = p.iter().filter(|&&x| x >= c && x < c + m).count() as u64;
        let d_q = (c..c + m).filter(|&x| self.decomposable(x)).count() as u64;
        let l = left.len() as i64;
        Profile {
            m,
            c,
            q,
            rho,
            genus: self.genus(),
            p_total: p.len() as u64,
            p_left,
            p_q,
            d_q,
            l_count: left.len() as u64,
            w: p.len() as i64 * l - c as i64,
            w0: p_left as i64 * l - (q * d_q) as i64 + rho as i64,
        }
    }

    /// `X_j = Ap(S) ∩ S_j` with `S_j = S ∩ [jm − ρ, (j+1)m − ρ)`, sorted.
    fn apery_slice(&self, j: u64) -> Vec<u64> {
        let (c, m) = (self.conductor(), self.multiplicity());
        let rho = c.div_ceil(m) * m - c;
        let mut v: Vec<u64> = self
            .apery()
            .into_iter()
            .filter(|&x| (x + rho) / m == j)
            .collect();
        v.sort_unstable();
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Profile {
    m: u64,
    c: u64,
    q: u64,
    rho: u64,
    genus: u64,
    p_total: u64,
    p_left: u64,
    p_q: u64,
    d_q: u64,
    l_count: u64,
    w: i64,
    w0: i64,
}

fn matches_library(s: &NumericalSemigroup, p: &Profile) -> bool {
    let r = wilf_report(s);
    (r.m, r.c, r.q, r.rho, r.genus) == (p.m, p.c, p.q, p.rho, p.genus)
        && (r.p_total, r.p_left, r.pq_count, r.dq_count) == (p.p_total, p.p_left, p.p_q, p.d_q)
        && (r.l_count, r.w, r.w0) == (p.l_count, p.w, p.w0)
}

fn choose(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

// ---------------------------------------------------------------------------
// Oracle: every semigroup of genus ≤ g_max, by deciding membership of
// 1, 2, ..., 2·g_max in turn. A gap must not be a sum of two smaller
// elements; Frobenius numbers never exceed 2g − 1, so each semigroup is
// produced exactly once.

fn generate_and_test(g_max: u64, visit: &mut dyn FnMut(&[bool], u64)) {
    fn go(member: &mut Vec<bool>, gaps: u64, n: usize, g_max: u64, visit: &mut dyn FnMut(&[bool], u64)) {
        let x = member.len();
        if x > n {
            visit(member, gaps);
            return;
        }
        member.push(true);
        go(member, gaps, n, g_max, visit);
        member.pop();
        if gaps < g_max && !(1..x).any(|y| member[y] && member[x - y]) {
            member.push(false);
            go(member, gaps + 1, n, g_max, visit);
            member.pop();
        }
    }
    let mut member = vec![true];
    go(&mut member, 0, 2 * g_max as usize, g_max, visit);
}

fn oracle_census(g_max: u64) -> Vec<u64> {
    let mut counts = vec![0u64; g_max as usize + 1];
    generate_and_test(g_max, &mut |_, g| counts[g as usize] += 1);
    counts
}

/// B_h by listing every multiset of size h.
fn oracle_is_bh(a: &[i64], h: usize) -> bool {
    let mut sums = Vec::new();
    let mut idx = vec![0usize; h];
    loop {
        sums.push(idx.iter().map(|&i| a[i]).sum::<i64>());
        let Some(pos) = (0..h).rev().find(|&p| idx[p] + 1 < a.len()) else {
            break;
        };
        let v = idx[pos] + 1;
        for slot in &mut idx[pos..] {
            *slot = v;
        }
    }
    let total = sums.len();
    sums.sort_unstable();
    sums.dedup();
    sums.len() == total
}

fn oracle_sumset(a: &[u64], h: usize) -> Vec<u64> {
    let mut out = vec![0u64];
    for _ in 0..h {
        let mut next: Vec<u64> = out.iter().flat_map(|&s| a.iter().map(move |&x| s + x)).collect();
        next.sort_unstable();
        next.dedup();
        out = next;
    }
    out
}

fn threads() -> ExploreOptions {
    ExploreOptions::with_threads(default_threads())
}

// ---------------------------------------------------------------------------
// Criteria

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration, what: &str) -> Result<(), String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("{what} took {t:.1?}, limit {limit:?}"))
}

/// Rows as printed in the published table: S, m, |P|, |L|, g, W₀, W.
const PUBLISHED: [(&[u64], u64, [i64; 6]); 5] = [
    (&[14, 22, 23], 56, [14, 7, 13, 43, -1, 35]),
    (&[16, 25, 26], 64, [16, 9, 13, 51, -1, 53]),
    (&[17, 26, 28], 68, [17, 10, 13, 55, -1, 62]),
    (&[17, 27, 28], 68, [17, 10, 13, 55, -1, 62]),
    (&[18, 28, 29], 72, [18, 11, 13, 59, -1, 71]),
];

fn table_one() -> Outcome {
    let start = Instant::now();
    let rows = nearmiss::cli::table_one_rows().map_err(|e| e.to_string())?;
    ensure(rows.len() == PUBLISHED.len(), || format!("{} rows", rows.len()))?;
    for (row, (gens, t, expected)) in rows.iter().zip(PUBLISHED) {
        let o = Oracle::generated(gens, t).profile();
        let oracle = [
            o.m as i64,
            o.p_total as i64,
            o.l_count as i64,
            o.genus as i64,
            o.w0,
            o.w,
        ];
        ensure(row.computed == expected, || {
            format!("{}: computed {:?}, published {:?}", row.label, row.computed, expected)
        })?;
        ensure(oracle == expected, || {
            format!("{}: oracle {:?}, published {:?}", row.label, oracle, expected)
        })?;
    }
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = nearmiss::cli::run(["nearmiss", "verify", "table1"], &mut out, &mut err);
    ensure(code == 0, || format!("`verify table1` exited {code}"))?;
    within(start, Duration::from_secs(1), "table 1")?;
    Ok("5 rows (m, |P|, |L|, g, W0, W) exact".into())
}

fn hunt() -> Outcome {
    let opts = threads();
    let start = Instant::now();
    let g40 = hunt_near_misses(40, &HuntFilter::default(), &opts).map_err(|e| e.to_string())?;
    let t40 = start.elapsed();
    ensure(g40.is_empty(), || format!("g <= 40 returned {} records", g40.len()))?;
    within(start, Duration::from_secs(300), "hunt to genus 40")?;

    let start = Instant::now();
    let g43 = hunt_near_misses(43, &HuntFilter::default(), &opts).map_err(|e| e.to_string())?;
    let t43 = start.elapsed();
    within(start, Duration::from_secs(3600), "hunt to genus 43")?;
    let labels: Vec<&str> = g43.iter().map(|r| r.label.as_str()).collect();
    ensure(labels == ["<14,22,23>_56"], || format!("g <= 43 returned {labels:?}"))?;
    let rec = &g43[0];
    let o = Oracle::generated(&[14, 22, 23], 56).profile();
    ensure(rec.report.w0 == -1 && o.w0 == -1, || {
        format!("W0 = {} (oracle {})", rec.report.w0, o.w0)
    })?;
    Ok(format!(
        "g<=40 empty ({t40:.0?}); g<=43 = {{<14,22,23>_56, W0 = -1}} ({t43:.0?}, {} threads)",
        opts.threads
    ))
}

fn census_cross() -> Outcome {
    let oracle = oracle_census(15);
    let lib = census(15, &threads()).map_err(|e| e.to_string())?;
    ensure(lib == oracle, || format!("explorer {lib:?} vs oracle {oracle:?}"))?;
    let one = census(25, &ExploreOptions::with_threads(1)).map_err(|e| e.to_string())?;
    let many = census(25, &ExploreOptions::with_threads(8)).map_err(|e| e.to_string())?;
    ensure(one == many, || format!("1 thread {one:?} vs 8 threads {many:?}"))?;
    Ok(format!(
        "g<=15 equals generate-and-test (n_15 = {}); g<=25 identical on 1 and 8 threads (n_25 = {})",
        oracle[15], one[25]
    ))
}

fn identities() -> Outcome {
    let mut checked = 0u64;
    // Failing labels per identity: W, |L| formula, |D_q| formula, library report.
    let mut fails: [Vec<(String, u64)>; 4] = Default::default();
    generate_and_test(18, &mut |member, _| {
        let o = Oracle::from_membership(member.to_vec());
        let p = o.profile();
        let x: Vec<u64> = (0..=p.q).map(|j| o.apery_slice(j).len() as u64).collect();
        let l_formula: u64 = (0..p.q).map(|i| (p.q - i) * x[i as usize]).sum();
        let x_q_dec = o
            .apery_slice(p.q)
            .into_iter()
            .filter(|&v| o.decomposable(v))
            .count() as u64;
        let d_formula: u64 = x[..p.q as usize].iter().sum::<u64>() + x_q_dec;
        let rhs = p.w0 + p.p_q as i64 * (p.l_count as i64 - p.q as i64);
        let s = NumericalSemigroup::from_window(member.to_vec()).expect("oracle window");
        let ok = [
            p.w == rhs,
            l_formula == p.l_count,
            d_formula == p.d_q,
            matches_library(&s, &p),
        ];
        for (f, ok) in fails.iter_mut().zip(ok) {
            if !ok {
                f.push((s.canonical_label(), p.q));
            }
        }
        checked += 1;
    });
    let names = ["W = W0 + |Pq|(|L|-q)", "|L| formula", "|Dq| formula", "library report"];
    let summary: Vec<String> = names
        .iter()
        .zip(&fails)
        .map(|(name, f)| {
            let q1 = f.iter().filter(|(_, q)| *q == 1).count();
            match f.len() {
                0 => format!("{name}: 0 failures"),
                n => format!(
                    "{name}: {n} failures ({q1} with q = 1), first {:?}",
                    f.iter().take(3).map(|(l, _)| l).collect::<Vec<_>>()
                ),
            }
        })
        .collect();
    let text = format!("{checked} semigroups with g<=18; {}", summary.join("; "));
    if fails.iter().all(Vec::is_empty) {
        Ok(text)
    } else {
        Err(text)
    }
}

/// `<{m} ∪ A>_{4m}` rebuilt from the recipe inputs alone.
fn construction_oracle(r: &ConstructionResult) -> Oracle {
    let mut gens = vec![r.params.m];
    gens.extend(&r.params.a_set);
    Oracle::generated(&gens, 4 * r.params.m)
}

fn structure_ok(r: &ConstructionResult) -> Result<(), String> {
    let o = construction_oracle(r);
    let a = r.params.a_set.clone();
    let label = r.semigroup.canonical_label();
    let x4d: Vec<u64> = o.apery_slice(4).into_iter().filter(|&v| o.decomposable(v)).collect();
    ensure(o.apery_slice(1) == a, || format!("{label}: X1 != A"))?;
    ensure(o.apery_slice(2).is_empty(), || format!("{label}: X2 nonempty"))?;
    ensure(o.apery_slice(3) == oracle_sumset(&a, 2), || format!("{label}: X3 != 2A"))?;
    ensure(x4d == oracle_sumset(&a, 3), || format!("{label}: X4 ∩ D != 3A"))
}

fn consecutive_sweep() -> Result<Vec<ConstructionResult>, String> {
    let mut out = Vec::new();
    for k in 2u64.. {
        if 3 * k + 8 > 200 {
            break;
        }
        for m in (3 * k + 8..=200).filter(|m| m % 2 == k % 2) {
            out.push(construct_consecutive(m, k).map_err(|e| format!("(m, k) = ({m}, {k}): {e}"))?);
        }
    }
    Ok(out)
}

fn explicit_instances() -> Result<Vec<ConstructionResult>, String> {
    let mut out = Vec::new();
    for n in 3..=7u64 {
        let r = 3u64.pow(n as u32 - 2) - 1;
        for k in [r + 1, r + 2, r + 5] {
            out.push(explicit_family(n, k).map_err(|e| format!("(n, k) = ({n}, {k}): {e}"))?);
        }
    }
    Ok(out)
}

fn constructions() -> Outcome {
    let start = Instant::now();
    let sweep = consecutive_sweep()?;
    for r in &sweep {
        let p = construction_oracle(r).profile();
        let label = r.semigroup.canonical_label();
        ensure(p.w0 == -1 && p.w >= 9, || format!("{label}: W0 = {}, W = {}", p.w0, p.w))?;
        ensure(matches_library(&r.semigroup, &p), || format!("{label}: library report differs"))?;
    }
    let family = explicit_instances()?;
    for r in &family {
        let m = r.params.m;
        let n = r.params.a_set.len() as u64 + 1;
        let o = construction_oracle(r);
        let p = o.profile();
        let label = r.semigroup.canonical_label();
        let p4: Vec<u64> = o.primitives().into_iter().filter(|&x| x >= 4 * m && x < 5 * m).collect();
        let (jlo, jhi) = (4 * m + (m + 1) / 3, 4 * m + (m - 1).div_ceil(2));
        ensure((p.c, p.q) == (4 * m, 4), || format!("{label}: c = {}, q = {}", p.c, p.q))?;
        ensure(p.w0 == -(choose(n, 3) as i64), || format!("{label}: W0 = {}", p.w0))?;
        ensure(p.l_count == choose(n, 2) + 3 * n + 1, || format!("{label}: |L| = {}", p.l_count))?;
        ensure(p.d_q == choose(n + 2, 3), || format!("{label}: |D4| = {}", p.d_q))?;
        ensure((jlo..=jhi).all(|x| p4.binary_search(&x).is_ok()), || format!("{label}: J not in P4"))?;
        ensure(6 * p4.len() as u64 >= m, || format!("{label}: |P4| = {} < m/6", p4.len()))?;
        ensure(matches_library(&r.semigroup, &p), || format!("{label}: library report differs"))?;
    }
    within(start, Duration::from_secs(60), "construction sweeps")?;
    Ok(format!(
        "{} consecutive (m, k) with m<=200 give W0 = -1, W >= 9; explicit family n = 3..7 x 3 k exact",
        sweep.len()
    ))
}

fn bh_suite() -> Outcome {
    let set = |v: &[i64]| IntSet::new(v.to_vec()).unwrap();
    let bh = |v: &[i64], h: u32| is_bh(&set(v), h).unwrap();

    ensure(!bh(&[3, 4, 5], 2) && !oracle_is_bh(&[3, 4, 5], 2), || "{3,4,5} passed B2".into())?;
    let two = h_fold_sumset(&set(&[3, 4, 5]), 2).unwrap();
    ensure(two.len() == 5, || format!("|2{{3,4,5}}| = {}", two.len()))?;

    let mut pairs = 0;
    for a in -40i64..=40 {
        for b in a + 1..=40 {
            for h in 1..=5u32 {
                ensure(bh(&[a, b], h) && oracle_is_bh(&[a, b], h as usize), || {
                    format!("{{{a},{b}}} failed B{h}")
                })?;
                pairs += 1;
            }
        }
    }

    let geo = [1, 3, 9, 27, 81];
    let three = h_fold_sumset(&set(&geo), 3).unwrap();
    ensure(bh(&geo, 3) && oracle_is_bh(&geo, 3), || "{1,3,9,27,81} failed B3".into())?;
    ensure(three.len() == 35 && choose(7, 3) == 35, || format!("|3A| = {}", three.len()))?;

    let strategy = (
        proptest::collection::btree_set(-60i64..60, 1..7),
        1u32..5,
        -1000i64..1000,
    );
    let mut runner = TestRunner::new_with_rng(
        Config::default(),
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    );
    for case in 0..1000 {
        let (a, h, t) = strategy.new_tree(&mut runner).unwrap().current();
        let a: Vec<i64> = a.into_iter().collect();
        let shifted: Vec<i64> = a.iter().map(|x| x + t).collect();
        let (sa, st) = (set(&a), set(&shifted));
        let lhs: Vec<i64> = h_fold_sumset(&sa, h).unwrap().elements().iter().map(|x| x + h as i64 * t).collect();
        let rhs = h_fold_sumset(&st, h).unwrap().elements().to_vec();
        ensure(lhs == rhs, || format!("case {case}: hA + ht != h(A + t) for {a:?}, h = {h}, t = {t}"))?;
        let expect = oracle_is_bh(&a, h as usize);
        ensure(bh(&a, h) == expect && bh(&shifted, h) == expect, || {
            format!("case {case}: B{h} status of {a:?} changes under +{t}")
        })?;
    }
    Ok(format!(
        "{{3,4,5}} not B2; {pairs} (pair, h<=5) cases B_h; {{1,3,9,27,81}} B3 with |3A| = 35; 1000 translations"
    ))
}

fn bound_scan() -> Outcome {
    let start = Instant::now();
    let scan = scan_conjecture_bound(35, &threads()).map_err(|e| e.to_string())?;
    within(start, Duration::from_secs(600), "bound scan")?;
    let first: Vec<&str> = scan.violations.iter().take(5).map(|r| r.label.as_str()).collect();
    ensure(scan.violations.is_empty(), || {
        format!("{} violations, first {first:?}", scan.violations.len())
    })?;
    Ok(format!(
        "{} semigroups with q = 4, g<=35: 0 violations of W0 >= -C(n,3) ({:.1?})",
        scan.checked,
        start.elapsed()
    ))
}

fn structure() -> Outcome {
    let mut all = consecutive_sweep()?;
    all.extend(explicit_instances()?);
    let err = |e: nearmiss::Error| e.to_string();
    all.push(construct_pair(14, 22, 23).map_err(err)?);
    all.push(construct_pair(18, 28, 29).map_err(err)?);
    for (offsets, k, m) in [
        (&[0i64, 2][..], 3u64, 25u64),
        (&[0, 2, 8][..], 9, 77),
        (&[0, 1, 5][..], 6, 58),
    ] {
        let off = IntSet::new(offsets.to_vec()).map_err(err)?;
        ensure(oracle_is_bh(offsets, 3), || format!("{offsets:?} is not B3"))?;
        let r = construct_translated(&off, k, m).map_err(err)?;
        let a = IntSet::new(r.params.a_set.iter().map(|&x| x as i64).collect()).map_err(err)?;
        all.push(construct_bh(m, &a).map_err(err)?);
        all.push(r);
    }
    for r in &all {
        structure_ok(r)?;
    }
    Ok(format!("{} constructed instances: X1 = A, X2 = ∅, X3 = 2A, X4 ∩ D = 3A", all.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("1 table one", table_one),
        ("3 census cross-validation", census_cross),
        ("4 identity suite", identities),
        ("5 construction sweeps", constructions),
        ("6 B_h suite", bh_suite),
        ("7 bound scan", bound_scan),
        ("8 Apery slice structure", structure),
        ("2 near-miss hunt", hunt),
    ];
    let mut failed = 0;
    for (name, f) in criteria {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(f))
            .unwrap_or_else(|_| Err("panicked".to_string()));
        let t = start.elapsed();
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail} [{t:.1?}]"),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {name}: {detail} [{t:.1?}]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", 8 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

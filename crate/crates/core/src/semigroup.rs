//! Finite encoding of a numerical semigroup and its structural queries.
//!
//! A semigroup `S` is stored as a dense membership window over `[0, c + m)`;
//! every integer at or beyond the window end is in `S`. Everything the rest
//! of the crate needs (slices, Apéry set, primitives) reads this window.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest membership window we are willing to allocate.
pub const MAX_WINDOW: u64 = 1 << 26;

/// Generators `a_1 < ... < a_n` with an optional truncation `t`, describing
/// `<a_1, ..., a_n>` or `<a_1, ..., a_n> ∪ [t, ∞)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    generators: Vec<u64>,
    #[serde(default)]
    truncation: Option<u64>,
}

impl GeneratorSpec {
    /// Sorts and deduplicates `generators`. Zero entries, an empty list and a
    /// zero truncation are rejected.
    pub fn new(mut generators: Vec<u64>, truncation: Option<u64>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidSpec("empty generator list".into()));
        }
        if generators.contains(&0) {
            return Err(Error::InvalidSpec("generators must be positive".into()));
        }
        if truncation == Some(0) {
            return Err(Error::InvalidSpec("truncation must be positive".into()));
        }
        generators.sort_unstable();
        generators.dedup();
        Ok(GeneratorSpec {
            generators,
            truncation,
        })
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn truncation(&self) -> Option<u64> {
        self.truncation
    }

    /// Parses the JSON object form `{"generators":[...],"truncation":t|null}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GeneratorSpec =
            serde_json::from_str(text).map_err(|e| Error::parse("generator spec", e.to_string()))?;
        GeneratorSpec::new(raw.generators, raw.truncation)
    }
}

impl FromStr for GeneratorSpec {
    type Err = Error;

    /// Accepts `<a,b,c>`, `<a,b,c>_t` (also `⟨…⟩`, `;` separators, `_{t}`)
    /// and the JSON object form.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.starts_with('{') {
            return GeneratorSpec::from_json(s);
        }
        let bad = |d: &str| Error::parse("semigroup label", format!("{d} in {s:?}"));
        let rest = s
            .strip_prefix('<')
            .or_else(|| s.strip_prefix('⟨'))
            .ok_or_else(|| bad("missing opening bracket"))?;
        let close = rest
            .find(['>', '⟩'])
            .ok_or_else(|| bad("missing closing bracket"))?;
        let (body, tail) = rest.split_at(close);
        let tail = &tail[tail.chars().next().map_or(0, char::len_utf8)..];

        let mut generators = Vec::new();
        for tok in body.split([',', ';']) {
            let tok = tok.trim();
            if tok.is_empty() {
                continue;
            }
            generators.push(tok.parse::<u64>().map_err(|_| bad("bad generator"))?);
        }
        let tail = tail.trim();
        let truncation = if tail.is_empty() {
            None
        } else {
            let t = tail.strip_prefix('_').ok_or_else(|| bad("unexpected trailing text"))?;
            let t = t.trim().trim_start_matches('{').trim_end_matches('}').trim();
            Some(t.parse::<u64>().map_err(|_| bad("bad truncation"))?)
        };
        GeneratorSpec::new(generators, truncation)
    }
}

/// How the canonical label prints a semigroup.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Presentation {
    /// `<P>`, the full minimal generating set.
    Plain,
    /// `<P ∩ L>_c`, primitives left of the conductor plus the conductor.
    Truncated,
}

/// A numerical semigroup, immutable after construction.
#[derive(Debug, Clone)]
pub struct NumericalSemigroup {
    window: Vec<bool>,
    multiplicity: u64,
    conductor: u64,
    genus: u64,
    gens: Vec<u64>,
    presentation: Presentation,
}

impl PartialEq for NumericalSemigroup {
    fn eq(&self, other: &Self) -> bool {
        self.window == other.window
    }
}

impl Eq for NumericalSemigroup {}

impl Hash for NumericalSemigroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.window.hash(state);
    }
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn check_window(size: u64) -> Result<usize> {
    if size > MAX_WINDOW {
        return Err(Error::WindowTooLarge { size });
    }
    Ok(size as usize)
}

/// Apéry set of `<gens>` with respect to `gens[0]`, indexed by residue, via
/// shortest paths over residue classes. `None` when some class is unreachable.
fn apery_by_shortest_paths(gens: &[u64]) -> Result<Option<Vec<u64>>> {
    let m = gens[0];
    let m_us = check_window(m)?;
    let mut dist = vec![u64::MAX; m_us];
    dist[0] = 0;
    let mut heap = BinaryHeap::new();
    heap.push(Reverse((0u64, 0usize)));
    while let Some(Reverse((d, r))) = heap.pop() {
        if d > dist[r] {
            continue;
        }
        for &a in &gens[1..] {
            let nd = d.checked_add(a).ok_or(Error::Overflow("Apéry set"))?;
            let to = ((r as u64 + a) % m) as usize;
            if nd < dist[to] {
                dist[to] = nd;
                heap.push(Reverse((nd, to)));
            }
        }
    }
    if dist.contains(&u64::MAX) {
        return Ok(None);
    }
    Ok(Some(dist))
}

impl NumericalSemigroup {
    /// The monoid generated by `spec`, united with `[t, ∞)` when a truncation
    /// is present.
    pub fn from_generators(spec: &GeneratorSpec) -> Result<Self> {
        let gens = spec.generators();
        match spec.truncation() {
            None => {
                let g = gens.iter().fold(0, |acc, &a| gcd(acc, a));
                if g != 1 {
                    return Err(Error::NonCofinite { gcd: g });
                }
                let apery = apery_by_shortest_paths(gens)?
                    .ok_or(Error::NonCofinite { gcd: g })?;
                let m = gens[0];
                let max_ap = *apery.iter().max().expect("m >= 1");
                // window is [0, c + m) = [0, max Ap + 1)
                let size = check_window(max_ap + 1)?;
                let window = (0..size as u64)
                    .map(|x| x >= apery[(x % m) as usize])
                    .collect();
                NumericalSemigroup::from_window_trusted(window)
            }
            Some(t) => {
                let m0 = gens[0].min(t);
                let size = check_window(t.checked_add(m0).ok_or(Error::Overflow("window"))?)?;
                let mut window = vec![false; size];
                window[0] = true;
                for x in 1..size {
                    window[x] = x as u64 >= t
                        || gens
                            .iter()
                            .take_while(|&&a| a as usize <= x)
                            .any(|&a| window[x - a as usize]);
                }
                let mut s = NumericalSemigroup::from_window_trusted(window)?;
                if s.conductor == t && !s.left_primitives().is_empty() {
                    s.presentation = Presentation::Truncated;
                }
                Ok(s)
            }
        }
    }

    /// Builds a semigroup from a membership prefix `window[x] = (x ∈ S)`; all
    /// integers at or past `window.len()` are taken to be in `S`. Fails if the
    /// result is not a numerical semigroup (missing 0 or not additively closed).
    pub fn from_window(window: Vec<bool>) -> Result<Self> {
        NumericalSemigroup::build(window, true)
    }

    /// Same as [`from_window`](Self::from_window) without the closure check;
    /// the caller guarantees `window` describes a semigroup.
    pub(crate) fn from_window_trusted(window: Vec<bool>) -> Result<Self> {
        NumericalSemigroup::build(window, false)
    }

    fn build(mut window: Vec<bool>, validate: bool) -> Result<Self> {
        check_window(window.len() as u64)?;
        if window.is_empty() {
            window.push(true);
        }
        if !window[0] {
            return Err(Error::InvalidSpec("0 must belong to the semigroup".into()));
        }
        let conductor = window.iter().rposition(|&b| !b).map_or(0, |f| f + 1);
        let multiplicity = window[1..]
            .iter()
            .position(|&b| b)
            .map_or(window.len(), |i| i + 1);
        let end = conductor + multiplicity;
        window.resize(end, true);
        window.truncate(end);
        for x in (1..end).filter(|_| validate) {
            if !window[x] {
                continue;
            }
            for y in x..end - x {
                if window[y] && !window[x + y] {
                    return Err(Error::InvalidSpec(format!(
                        "not additively closed: {x} + {y} = {} is missing",
                        x + y
                    )));
                }
            }
        }
        let genus = window[..conductor].iter().filter(|&&b| !b).count() as u64;
        let mut s = NumericalSemigroup {
            window,
            multiplicity: multiplicity as u64,
            conductor: conductor as u64,
            genus,
            gens: Vec::new(),
            presentation: Presentation::Plain,
        };
        s.gens = s.compute_primitives();
        Ok(s)
    }

    /// Builds `ℕ \ gaps`.
    pub fn from_gaps(gaps: &[u64]) -> Result<Self> {
        let end = gaps.iter().max().map_or(1, |&f| f + 1);
        let mut window = vec![true; check_window(end)?];
        for &x in gaps {
            window[x as usize] = false;
        }
        NumericalSemigroup::from_window(window)
    }

    /// The full semigroup `ℕ`.
    pub fn naturals() -> Self {
        NumericalSemigroup::from_window(vec![true]).expect("ℕ is a semigroup")
    }

    fn compute_primitives(&self) -> Vec<u64> {
        let m = self.multiplicity;
        let apery = self.apery_by_residue();
        let is_apery = |x: u64| self.contains(x as i64) && (x < m || !self.contains((x - m) as i64));
        let mut nonzero: Vec<u64> = apery.iter().copied().filter(|&w| w != 0).collect();
        nonzero.sort_unstable();
        let mut gens = vec![m];
        for (i, &w) in nonzero.iter().enumerate() {
            let decomposable = nonzero[..i]
                .iter()
                .take_while(|&&u| 2 * u <= w)
                .any(|&u| is_apery(w - u));
            if !decomposable {
                gens.push(w);
            }
        }
        gens.sort_unstable();
        gens
    }

    fn apery_by_residue(&self) -> Vec<u64> {
        let m = self.multiplicity as usize;
        let mut apery = vec![u64::MAX; m];
        let mut found = 0;
        for (x, &inside) in self.window.iter().enumerate() {
            if inside && apery[x % m] == u64::MAX {
                apery[x % m] = x as u64;
                found += 1;
                if found == m {
                    break;
                }
            }
        }
        apery
    }

    pub fn multiplicity(&self) -> u64 {
        self.multiplicity
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Largest gap, or -1 for `ℕ`.
    pub fn frobenius(&self) -> i64 {
        self.conductor as i64 - 1
    }

    pub fn genus(&self) -> u64 {
        self.genus
    }

    pub fn presentation(&self) -> Presentation {
        self.presentation
    }

    /// Membership indicator over `[0, c + m)`.
    pub fn window(&self) -> &[bool] {
        &self.window
    }

    /// `q = ⌈c/m⌉`.
    pub fn q(&self) -> u64 {
        self.conductor.div_ceil(self.multiplicity)
    }

    /// `ρ = qm − c`, in `[0, m − 1]`.
    pub fn rho(&self) -> u64 {
        self.q() * self.multiplicity - self.conductor
    }

    pub fn contains(&self, x: i64) -> bool {
        if x < 0 {
            return false;
        }
        if x as u64 >= self.conductor {
            return true;
        }
        self.window[x as usize]
    }

    pub fn gaps(&self) -> Vec<u64> {
        (0..self.conductor).filter(|&x| !self.window[x as usize]).collect()
    }

    /// The minimal generating set `P`, sorted.
    pub fn primitives(&self) -> &[u64] {
        &self.gens
    }

    pub fn is_primitive(&self, x: u64) -> bool {
        self.gens.binary_search(&x).is_ok()
    }

    /// `P ∩ L`, the primitives below the conductor.
    pub fn left_primitives(&self) -> &[u64] {
        let k = self.gens.partition_point(|&p| p < self.conductor);
        &self.gens[..k]
    }

    /// Decomposable elements `D = S* + S*` inside the window `[0, c + m)`.
    pub fn decomposables_window(&self) -> Vec<u64> {
        (1..self.window.len() as u64)
            .filter(|&x| self.window[x as usize] && !self.is_primitive(x))
            .collect()
    }

    pub fn is_decomposable(&self, x: u64) -> bool {
        x != 0 && self.contains(x as i64) && !self.is_primitive(x)
    }

    /// `I_j = [jm − ρ, (j+1)m − ρ − 1]` as a signed inclusive range.
    pub fn slice_bounds(&self, j: u64) -> (i64, i64) {
        let m = self.multiplicity as i64;
        let rho = self.rho() as i64;
        let j = j as i64;
        (j * m - rho, (j + 1) * m - rho - 1)
    }

    /// Index `j` of the slice `I_j` containing `x ≥ 0`.
    pub fn slice_index(&self, x: u64) -> u64 {
        (x + self.rho()) / self.multiplicity
    }

    /// `S_j = S ∩ I_j`.
    pub fn slice(&self, j: u64) -> Vec<u64> {
        let (lo, hi) = self.slice_bounds(j);
        (lo.max(0)..=hi)
            .filter(|&x| self.contains(x))
            .map(|x| x as u64)
            .collect()
    }

    /// `L = S ∩ [0, c − 1]`.
    pub fn left_part(&self) -> Vec<u64> {
        (0..self.conductor)
            .filter(|&x| self.window[x as usize])
            .collect()
    }

    pub fn left_count(&self) -> u64 {
        self.conductor - self.genus
    }

    pub fn apery_set(&self) -> AperyTable {
        let elements = self.apery_by_residue();
        let slice_index = elements.iter().map(|&x| self.slice_index(x)).collect();
        let decomposable = elements.iter().map(|&x| self.is_decomposable(x)).collect();
        AperyTable {
            elements,
            slice_index,
            decomposable,
        }
    }

    pub fn canonical_label(&self) -> String {
        self.label_with_separator(',')
    }

    /// Canonical label with a custom generator separator (`;` keeps CSV cells
    /// atomic).
    pub fn label_with_separator(&self, sep: char) -> String {
        let join = |xs: &[u64]| {
            xs.iter()
                .map(u64::to_string)
                .collect::<Vec<_>>()
                .join(&sep.to_string())
        };
        match self.presentation {
            Presentation::Plain => format!("<{}>", join(&self.gens)),
            Presentation::Truncated => {
                format!("<{}>_{}", join(self.left_primitives()), self.conductor)
            }
        }
    }

    /// The shorter of the two label forms: `<P ∩ L>_c` when it names fewer
    /// integers than `<P>`, otherwise `<P>`. Depends only on the set `S`.
    pub fn compact(mut self) -> Self {
        let left = self.left_primitives().len();
        self.presentation = if left > 0 && left + 1 < self.gens.len() {
            Presentation::Truncated
        } else {
            Presentation::Plain
        };
        self
    }

    /// The generator spec reproducing this semigroup under its presentation.
    pub fn generator_spec(&self) -> GeneratorSpec {
        match self.presentation {
            Presentation::Plain => GeneratorSpec {
                generators: self.gens.clone(),
                truncation: None,
            },
            Presentation::Truncated => GeneratorSpec {
                generators: self.left_primitives().to_vec(),
                truncation: Some(self.conductor),
            },
        }
    }

    /// Re-checks window closure (for tests and imported data).
    pub fn is_closed(&self) -> bool {
        let end = self.window.len();
        (1..end).all(|x| {
            !self.window[x] || (x..end - x).all(|y| !self.window[y] || self.window[x + y])
        })
    }
}

impl fmt::Display for NumericalSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_label())
    }
}

impl FromStr for NumericalSemigroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        NumericalSemigroup::from_generators(&s.parse()?)
    }
}

#[derive(Serialize)]
struct SemigroupRepr<'a> {
    label: String,
    generators: &'a [u64],
    truncation: Option<u64>,
    multiplicity: u64,
    conductor: u64,
    genus: u64,
}

impl Serialize for NumericalSemigroup {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SemigroupRepr {
            label: self.canonical_label(),
            generators: &self.gens,
            truncation: (self.presentation == Presentation::Truncated).then_some(self.conductor),
            multiplicity: self.multiplicity,
            conductor: self.conductor,
            genus: self.genus,
        }
        .serialize(serializer)
    }
}

/// `Ap(S, m)`: one minimal element per residue class mod `m`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AperyTable {
    /// `elements[i]` is the least element of `S` congruent to `i` mod `m`.
    pub elements: Vec<u64>,
    /// `slice_index[i] = j` with `elements[i] ∈ I_j`.
    pub slice_index: Vec<u64>,
    /// Whether `elements[i]` is decomposable.
    pub decomposable: Vec<bool>,
}

impl AperyTable {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn sorted(&self) -> Vec<u64> {
        let mut v = self.elements.clone();
        v.sort_unstable();
        v
    }

    /// `X_j = Ap(S) ∩ S_j`, sorted.
    pub fn in_slice(&self, j: u64) -> Vec<u64> {
        let mut v: Vec<u64> = self
            .elements
            .iter()
            .zip(&self.slice_index)
            .filter(|(_, &s)| s == j)
            .map(|(&x, _)| x)
            .collect();
        v.sort_unstable();
        v
    }

    /// `X_j ∩ D`, sorted.
    pub fn decomposable_in_slice(&self, j: u64) -> Vec<u64> {
        let mut v: Vec<u64> = (0..self.elements.len())
            .filter(|&i| self.slice_index[i] == j && self.decomposable[i])
            .map(|i| self.elements[i])
            .collect();
        v.sort_unstable();
        v
    }
}

//! h-fold sumsets over ℤ and ℤ/mℤ and B_h set certification.

use std::collections::HashSet;

use serde::Serialize;

use crate::error::{Error, Result};

/// Per-element candidate cap for [`greedy_bh`].
pub const GREEDY_SEARCH_CAP: i64 = 1_000_000;

/// A finite nonempty set of integers, optionally living in ℤ/mℤ.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
#[serde(transparent)]
pub struct IntSet {
    elements: Vec<i64>,
    #[serde(skip)]
    modulus: Option<u64>,
}

impl IntSet {
    /// Sorted, deduplicated set over ℤ.
    pub fn new(mut elements: Vec<i64>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::Precondition("sets must be nonempty".into()));
        }
        elements.sort_unstable();
        elements.dedup();
        Ok(IntSet {
            elements,
            modulus: None,
        })
    }

    /// The reductions of `elements` in ℤ/mℤ. Fails if two of them coincide.
    pub fn modular(elements: Vec<i64>, modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::Precondition("modulus must be positive".into()));
        }
        let n = elements.len();
        let mut reduced: Vec<i64> = elements
            .into_iter()
            .map(|x| x.rem_euclid(modulus as i64))
            .collect();
        reduced.sort_unstable();
        reduced.dedup();
        if reduced.len() != n {
            return Err(Error::Precondition(format!(
                "elements are not distinct mod {modulus}"
            )));
        }
        let mut s = IntSet::new(reduced)?;
        s.modulus = Some(modulus);
        Ok(s)
    }

    pub fn elements(&self) -> &[i64] {
        &self.elements
    }

    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn min(&self) -> i64 {
        self.elements[0]
    }

    pub fn max(&self) -> i64 {
        *self.elements.last().expect("nonempty")
    }

    pub fn contains(&self, x: i64) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    /// `A + t` (reduced when modular).
    pub fn translate(&self, t: i64) -> Result<Self> {
        let moved = self
            .elements
            .iter()
            .map(|&x| x.checked_add(t).ok_or(Error::Overflow("translate")))
            .collect::<Result<Vec<_>>>()?;
        match self.modulus {
            Some(m) => IntSet::modular(moved, m),
            None => IntSet::new(moved),
        }
    }

    /// Parses a comma-separated list such as `3,4,5`.
    pub fn parse_list(text: &str) -> Result<Self> {
        let elements = text
            .split(',')
            .map(str::trim)
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<i64>()
                    .map_err(|_| Error::parse("integer list", format!("bad entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        IntSet::new(elements)
    }
}

/// `C(n, k)`, or an overflow error.
pub fn binomial(n: u64, k: u64) -> Result<u64> {
    if k > n {
        return Ok(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return Err(Error::Overflow("binomial coefficient"));
        }
    }
    Ok(acc as u64)
}

fn check_h(h: u32) -> Result<()> {
    if h == 0 {
        return Err(Error::Precondition("h must be at least 1".into()));
    }
    Ok(())
}

fn add_sets(a: &[i64], b: &[i64], modulus: Option<u64>) -> Result<Vec<i64>> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for &x in a {
        for &y in b {
            let s = x.checked_add(y).ok_or(Error::Overflow("sumset"))?;
            out.push(match modulus {
                Some(m) => s.rem_euclid(m as i64),
                None => s,
            });
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// `hA = A + ... + A`, computed as `A, 2A = A + A, 3A = 2A + A, ...`.
pub fn h_fold_sumset(a: &IntSet, h: u32) -> Result<IntSet> {
    check_h(h)?;
    let mut acc = a.elements.clone();
    for _ in 1..h {
        acc = add_sets(&acc, &a.elements, a.modulus)?;
    }
    Ok(IntSet {
        elements: acc,
        modulus: a.modulus,
    })
}

/// Whether `|hA| = C(|A| + h − 1, h)` in the ambient group of `A`.
pub fn is_bh(a: &IntSet, h: u32) -> Result<bool> {
    check_h(h)?;
    let bound = binomial(a.len() as u64 + h as u64 - 1, h as u64)?;
    if let Some(m) = a.modulus {
        if bound > m {
            return Ok(false);
        }
    }
    Ok(h_fold_sumset(a, h)?.len() as u64 == bound)
}

/// Whether the reductions of `a` mod `m` are `|a|` distinct residues forming
/// a B_h set in ℤ/mℤ.
pub fn induces_bh_mod(a: &IntSet, m: u64, h: u32) -> Result<bool> {
    check_h(h)?;
    match IntSet::modular(a.elements.clone(), m) {
        Ok(reduced) => is_bh(&reduced, h),
        Err(Error::Precondition(_)) if m > 0 => Ok(false),
        Err(e) => Err(e),
    }
}

/// Finds two formal sums of 1..=h elements of `a` (as multisets) that agree
/// mod `m`, returned as the two multisets.
pub fn union_collision(a: &IntSet, h: u32, m: u64) -> Result<Option<(Vec<i64>, Vec<i64>)>> {
    check_h(h)?;
    if m == 0 {
        return Err(Error::Precondition("modulus must be positive".into()));
    }
    let mut seen: std::collections::HashMap<i64, Vec<i64>> = std::collections::HashMap::new();
    let mut stack: Vec<i64> = Vec::new();
    fn walk(
        a: &[i64],
        start: usize,
        h: u32,
        m: i64,
        sum: i64,
        stack: &mut Vec<i64>,
        seen: &mut std::collections::HashMap<i64, Vec<i64>>,
    ) -> Result<Option<(Vec<i64>, Vec<i64>)>> {
        if !stack.is_empty() {
            let r = sum.rem_euclid(m);
            if let Some(prev) = seen.get(&r) {
                return Ok(Some((prev.clone(), stack.clone())));
            }
            seen.insert(r, stack.clone());
        }
        if stack.len() as u32 == h {
            return Ok(None);
        }
        for i in start..a.len() {
            let s = sum.checked_add(a[i]).ok_or(Error::Overflow("sumset"))?;
            stack.push(a[i]);
            if let Some(hit) = walk(a, i, h, m, s, stack, seen)? {
                return Ok(Some(hit));
            }
            stack.pop();
        }
        Ok(None)
    }
    walk(&a.elements, 0, h, m as i64, 0, &mut stack, &mut seen)
}

/// Whether all elements of `A ∪ 2A ∪ ... ∪ hA`, taken as formal sums, are
/// pairwise distinct mod `m`.
pub fn pairwise_distinct_union(a: &IntSet, h: u32, m: u64) -> Result<bool> {
    Ok(union_collision(a, h, m)?.is_none())
}

/// Greedy B_h set starting at 0: each new element is the least integer above
/// the previous one that keeps the B_h property.
pub fn greedy_bh(h: u32, size: usize) -> Result<IntSet> {
    check_h(h)?;
    if size == 0 {
        return Err(Error::Precondition("size must be at least 1".into()));
    }
    let mut elems = vec![0i64];
    // all h-fold multiset sums of the current set
    let mut sums: HashSet<i64> = HashSet::from([0]);
    while elems.len() < size {
        let last = *elems.last().expect("nonempty");
        // partials[r] = r-fold sumset of the current set (B_h ⇒ B_r, so no
        // multiset sums coincide within a level)
        let current = IntSet::new(elems.clone())?;
        let mut partials = vec![vec![0i64]];
        for r in 1..h {
            partials.push(h_fold_sumset(&current, r)?.elements);
        }
        let mut found = None;
        for cand in last + 1..=last + GREEDY_SEARCH_CAP {
            if let Some(new_sums) = extend_bh(&partials, &sums, cand, h)? {
                found = Some((cand, new_sums));
                break;
            }
        }
        let (cand, new_sums) = found.ok_or_else(|| {
            Error::Precondition(format!(
                "no B_{h} extension within {GREEDY_SEARCH_CAP} of {last}"
            ))
        })?;
        elems.push(cand);
        sums.extend(new_sums);
    }
    IntSet::new(elems)
}

/// The h-fold sums that use `cand` at least once, if none of them collide
/// with each other or with the existing h-fold sums.
fn extend_bh(
    partials: &[Vec<i64>],
    sums: &HashSet<i64>,
    cand: i64,
    h: u32,
) -> Result<Option<Vec<i64>>> {
    let mut fresh = Vec::new();
    let mut local = HashSet::new();
    for k in 1..=h {
        let base = cand.checked_mul(k as i64).ok_or(Error::Overflow("greedy B_h"))?;
        for &p in &partials[(h - k) as usize] {
            let s = base.checked_add(p).ok_or(Error::Overflow("greedy B_h"))?;
            if sums.contains(&s) || !local.insert(s) {
                return Ok(None);
            }
            fresh.push(s);
        }
    }
    Ok(Some(fresh))
}

/// `{h^i : 0 ≤ i < count}`, or `{h^i − 1}` when `zero_based`.
pub fn geometric_bh_family(h: u32, count: usize, zero_based: bool) -> Result<IntSet> {
    if count == 0 {
        return Err(Error::Precondition("count must be at least 1".into()));
    }
    if h < 2 && count > 1 {
        return Err(Error::Precondition("powers of h repeat unless h ≥ 2".into()));
    }
    let mut elems = Vec::with_capacity(count);
    let mut p: i64 = 1;
    for i in 0..count {
        if i > 0 {
            p = p.checked_mul(h as i64).ok_or(Error::Overflow("geometric family"))?;
        }
        elems.push(if zero_based { p - 1 } else { p });
    }
    IntSet::new(elems)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(xs: &[i64]) -> IntSet {
        IntSet::new(xs.to_vec()).unwrap()
    }

    /// Enumerates all size-h multisets of `a` and collects their sums.
    fn multiset_sums(a: &[i64], h: u32) -> Vec<i64> {
        fn rec(a: &[i64], start: usize, left: u32, sum: i64, out: &mut Vec<i64>) {
            if left == 0 {
                out.push(sum);
                return;
            }
            for i in start..a.len() {
                rec(a, i, left - 1, sum + a[i], out);
            }
        }
        let mut out = Vec::new();
        rec(a, 0, h, 0, &mut out);
        out
    }

    #[test]
    fn sumset_examples() {
        assert_eq!(h_fold_sumset(&set(&[22, 23]), 2).unwrap().elements(), &[44, 45, 46]);
        assert_eq!(h_fold_sumset(&set(&[4, 9, 1]), 1).unwrap(), set(&[1, 4, 9]));
        let mut oracle = multiset_sums(&[1, 3, 9], 3);
        oracle.sort_unstable();
        oracle.dedup();
        assert_eq!(oracle, vec![3, 5, 7, 9, 11, 13, 15, 19, 21, 27]);
        assert_eq!(h_fold_sumset(&set(&[1, 3, 9]), 3).unwrap().elements(), &oracle[..]);
        assert!(h_fold_sumset(&set(&[1]), 0).is_err());
        assert_eq!(
            h_fold_sumset(&set(&[i64::MAX / 2 + 1]), 2).unwrap_err(),
            Error::Overflow("sumset")
        );
    }

    #[test]
    fn modular_sumset() {
        let a = IntSet::modular(vec![26, 28], 17).unwrap();
        assert_eq!(a.elements(), &[9, 11]);
        assert_eq!(h_fold_sumset(&a, 2).unwrap().elements(), &[1, 3, 5]);
        assert!(IntSet::modular(vec![1, 18], 17).is_err());
    }

    #[test]
    fn bh_examples() {
        assert!(!is_bh(&set(&[3, 4, 5]), 2).unwrap());
        for h in 1..=5 {
            assert!(is_bh(&set(&[7, 11]), h).unwrap());
        }
        assert!(is_bh(&set(&[1, 3, 9]), 3).unwrap());
        assert!(is_bh(&set(&[1, 3, 9, 27]), 3).unwrap());
        assert_eq!(h_fold_sumset(&set(&[1, 3, 9, 27]), 3).unwrap().len(), 20);
    }

    #[test]
    fn induced_bh_examples() {
        assert!(induces_bh_mod(&set(&[26, 28]), 17, 3).unwrap());
        assert!(!induces_bh_mod(&set(&[0, 1]), 2, 2).unwrap());
        assert!(induces_bh_mod(&set(&[5]), 1, 4).unwrap());
        assert!(!induces_bh_mod(&set(&[1, 18]), 17, 1).unwrap());
    }

    #[test]
    fn union_examples() {
        assert!(pairwise_distinct_union(&set(&[26, 28]), 3, 17).unwrap());
        assert!(pairwise_distinct_union(&set(&[22, 23]), 3, 14).unwrap());
        assert!(!pairwise_distinct_union(&set(&[1, 2]), 3, 4).unwrap());
        let (x, y) = union_collision(&set(&[1, 2]), 3, 4).unwrap().unwrap();
        let sx: i64 = x.iter().sum();
        let sy: i64 = y.iter().sum();
        assert_eq!(sx.rem_euclid(4), sy.rem_euclid(4));
        assert_ne!(x, y);
    }

    #[test]
    fn greedy_examples() {
        let s = greedy_bh(2, 4).unwrap();
        assert_eq!(s.elements(), &[0, 1, 3, 7]);
        assert!(is_bh(&s, 2).unwrap());
        assert_eq!(greedy_bh(5, 1).unwrap().elements(), &[0]);
        let s = greedy_bh(3, 3).unwrap();
        assert!(is_bh(&s, 3).unwrap());
        // oracle: brute-force least extension by re-certifying every candidate
        let mut brute = vec![0i64];
        while brute.len() < 5 {
            let mut x = brute.last().unwrap() + 1;
            loop {
                let mut t = brute.clone();
                t.push(x);
                if is_bh(&set(&t), 3).unwrap() {
                    break;
                }
                x += 1;
            }
            brute.push(x);
        }
        assert_eq!(&brute[..3], s.elements());
        assert_eq!(greedy_bh(3, 5).unwrap().elements(), &brute[..]);
        assert_eq!(greedy_bh(2, 6).unwrap().elements(), &[0, 1, 3, 7, 12, 20]);
    }

    #[test]
    fn geometric_examples() {
        assert_eq!(geometric_bh_family(3, 3, true).unwrap().elements(), &[0, 2, 8]);
        assert_eq!(geometric_bh_family(3, 1, false).unwrap().elements(), &[1]);
        let g = geometric_bh_family(3, 4, false).unwrap();
        assert_eq!(g.elements(), &[1, 3, 9, 27]);
        assert!(is_bh(&g, 3).unwrap());
        assert!(geometric_bh_family(1, 2, false).is_err());
        assert!(geometric_bh_family(3, 60, false).is_err());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(7, 3).unwrap(), 35);
        assert_eq!(binomial(3, 5).unwrap(), 0);
        assert_eq!(binomial(0, 0).unwrap(), 1);
    }
}

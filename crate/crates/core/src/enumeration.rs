//! Three independent ways to compute b_n(T):
//!
//! * [`Enumerator::count_naive`] walks all of B_n and tests each element with
//!   the pairwise containment scan;
//! * [`Enumerator::count_backtrack`] builds prefixes left to right and cuts a
//!   branch as soon as the new letter completes a forbidden pattern;
//! * [`Enumerator::counts_all_subsets`] makes one pass over B_n collecting a
//!   histogram of containment masks and answers all 256 sets at once with a
//!   sum-over-subsets transform.
//!
//! Work is split into prefix partitions that are merged by addition. With the
//! `parallel` feature the partitions run on the rayon pool; otherwise, or with
//! [`Execution::Sequential`], they run in order on the calling thread.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::signed::{PatternSet, SignedLetter, SignedPermutations};

/// Largest cap accepted; 2^16 * 16! still fits the u64 accumulators.
pub const MAX_CAP: usize = 16;
pub const DEFAULT_CAP: usize = 9;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Naive,
    Backtrack,
    Mask,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Naive => "naive",
            Method::Backtrack => "backtrack",
            Method::Mask => "mask",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "naive" => Ok(Method::Naive),
            "backtrack" => Ok(Method::Backtrack),
            "mask" => Ok(Method::Mask),
            _ => Err(format!("unknown method `{s}` (expected naive, backtrack or mask)")),
        }
    }
}

#[derive(Copy, Clone, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    /// Runs partitions on the rayon pool when the `parallel` feature is
    /// enabled, sequentially otherwise.
    #[default]
    Parallel,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountResult {
    pub n: usize,
    pub set: PatternSet,
    pub value: BigUint,
    pub method: Method,
}

/// Frequencies of containment masks over B_n.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaskHistogram {
    pub n: usize,
    /// Indexed by mask value; always 256 entries.
    pub counts: Vec<BigUint>,
}

impl MaskHistogram {
    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// b_n(T) for every T, indexed by the mask of T.
    pub fn avoider_counts(&self) -> Vec<BigUint> {
        // zeta[S] = sum of counts over masks contained in S; masks disjoint
        // from T are exactly those contained in the complement of T.
        let mut zeta = self.counts.clone();
        subset_sums(&mut zeta);
        (0..256).map(|t| zeta[!t as u8 as usize].clone()).collect()
    }
}

/// In-place sum-over-subsets transform on a power-of-two sized table.
pub fn subset_sums<T: Clone + for<'a> std::ops::AddAssign<&'a T>>(xs: &mut [T]) {
    assert!(xs.len().is_power_of_two());
    let mut bit = 1;
    while bit < xs.len() {
        for mask in 0..xs.len() {
            if mask & bit != 0 {
                let lower = xs[mask ^ bit].clone();
                xs[mask] += &lower;
            }
        }
        bit <<= 1;
    }
}

pub fn factorial_u64(n: usize) -> u64 {
    (1..=n as u64).product()
}

/// |B_n| = 2^n n!.
pub fn group_order(n: usize) -> BigUint {
    BigUint::from(factorial_u64(n)) << n
}

/// New patterns formed by appending a letter, looked up from which kinds of
/// letters already precede it: bit 0 unbarred smaller, bit 1 barred smaller,
/// bit 2 unbarred larger, bit 3 barred larger. Indexed by `[barred][kinds]`.
const EXTENSION: [[u8; 16]; 2] = [extension_row(false), extension_row(true)];

const fn extension_row(barred: bool) -> [u8; 16] {
    let s = barred as usize;
    let sources = [
        PATTERN_BITS[1][0][s],
        PATTERN_BITS[1][1][s],
        PATTERN_BITS[0][0][s],
        PATTERN_BITS[0][1][s],
    ];
    let mut row = [0u8; 16];
    let mut kinds = 0;
    while kinds < 16 {
        let mut k = 0;
        while k < 4 {
            if kinds >> k & 1 == 1 {
                row[kinds] |= sources[k];
            }
            k += 1;
        }
        kinds += 1;
    }
    row
}

// `[ascending][first barred][second barred]`, mirroring the pattern order.
const PATTERN_BITS: [[[u8; 2]; 2]; 2] = [[[1 << 1, 1 << 5], [1 << 6, 1 << 7]], [[1 << 0, 1 << 3], [1 << 2, 1 << 4]]];

/// A prefix of a signed permutation, summarized by which magnitudes are used
/// barred and unbarred (bit m for magnitude m) and the patterns seen so far.
#[derive(Copy, Clone, Debug, Default)]
struct Prefix {
    unbarred: u32,
    barred: u32,
    mask: u8,
    len: usize,
}

impl Prefix {
    /// Patterns formed between `letter` and every letter already placed.
    #[inline]
    fn new_patterns(&self, magnitude: u32, barred: bool) -> u8 {
        let below = (1u32 << magnitude) - 1;
        let above = !((1u32 << (magnitude + 1)) - 1);
        let kinds = (self.unbarred & below != 0) as usize
            | ((self.barred & below != 0) as usize) << 1
            | ((self.unbarred & above != 0) as usize) << 2
            | ((self.barred & above != 0) as usize) << 3;
        EXTENSION[barred as usize][kinds]
    }

    #[inline]
    fn push(&self, magnitude: u32, barred: bool, new: u8) -> Prefix {
        let bit = 1u32 << magnitude;
        Prefix {
            unbarred: if barred { self.unbarred } else { self.unbarred | bit },
            barred: if barred { self.barred | bit } else { self.barred },
            mask: self.mask | new,
            len: self.len + 1,
        }
    }

    fn used(&self) -> u32 {
        self.unbarred | self.barred
    }
}

/// Candidate letters in ascending encoded order: -n..-1 then 1..n.
fn candidates(n: usize) -> impl Iterator<Item = (u32, bool)> {
    (1..=n as u32).rev().map(|m| (m, true)).chain((1..=n as u32).map(|m| (m, false)))
}

/// Prefixes of length min(2, n) that split the search, with their masks.
fn partitions(n: usize) -> Vec<Prefix> {
    let depth = n.min(2);
    let mut out = vec![Prefix::default()];
    for _ in 0..depth {
        out = out
            .iter()
            .flat_map(|p| {
                candidates(n)
                    .filter(|&(m, _)| p.used() & 1 << m == 0)
                    .map(|(m, b)| p.push(m, b, p.new_patterns(m, b)))
                    .collect::<Vec<_>>()
            })
            .collect();
    }
    out
}

fn histogram_dfs(n: usize, prefix: Prefix, hist: &mut [u64; 256], completions: &[u64]) {
    let remaining = n - prefix.len;
    if remaining == 0 || prefix.mask == 0xff {
        hist[prefix.mask as usize] += completions[remaining];
        return;
    }
    let used = prefix.used();
    for (m, b) in candidates(n) {
        if used & 1 << m == 0 {
            let next = prefix.push(m, b, prefix.new_patterns(m, b));
            histogram_dfs(n, next, hist, completions);
        }
    }
}

fn backtrack_dfs(n: usize, prefix: Prefix, forbidden: u8) -> u64 {
    if prefix.len == n {
        return 1;
    }
    let used = prefix.used();
    let mut total = 0;
    for (m, b) in candidates(n) {
        if used & 1 << m == 0 {
            let new = prefix.new_patterns(m, b);
            if new & forbidden == 0 {
                total += backtrack_dfs(n, prefix.push(m, b, new), forbidden);
            }
        }
    }
    total
}

/// Runs `work` over every item and sums the results.
fn sum_over<I, T, F>(execution: Execution, items: Vec<I>, work: F) -> T
where
    I: Send,
    T: Send + Default + std::ops::Add<Output = T>,
    F: Fn(I) -> T + Sync + Send,
{
    match execution {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.into_par_iter().map(work).reduce(T::default, |a, b| a + b)
        }
        _ => items.into_iter().map(work).fold(T::default(), |a, b| a + b),
    }
}

struct Hist([u64; 256]);

impl Default for Hist {
    fn default() -> Self {
        Hist([0; 256])
    }
}

impl std::ops::Add for Hist {
    type Output = Hist;

    fn add(mut self, other: Hist) -> Hist {
        for (a, b) in self.0.iter_mut().zip(other.0) {
            *a += b;
        }
        self
    }
}

/// Counting engine with a size cap and an execution mode.
#[derive(Copy, Clone, Debug)]
pub struct Enumerator {
    cap: usize,
    execution: Execution,
}

impl Default for Enumerator {
    fn default() -> Self {
        Enumerator {
            cap: DEFAULT_CAP,
            execution: Execution::default(),
        }
    }
}

impl Enumerator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_cap(mut self, cap: usize) -> Result<Self> {
        if cap > MAX_CAP {
            return Err(Error::CapTooLarge(cap));
        }
        self.cap = cap;
        Ok(self)
    }

    pub fn with_execution(mut self, execution: Execution) -> Self {
        self.execution = execution;
        self
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn execution(&self) -> Execution {
        self.execution
    }

    fn check(&self, n: usize) -> Result<()> {
        if n > self.cap {
            Err(Error::CapExceeded { n, cap: self.cap })
        } else {
            Ok(())
        }
    }

    /// Every element of B_n.
    pub fn iterate(&self, n: usize) -> Result<SignedPermutations> {
        self.check(n)?;
        Ok(SignedPermutations::new(n))
    }

    pub fn count(&self, method: Method, n: usize, set: PatternSet) -> Result<CountResult> {
        match method {
            Method::Naive => self.count_naive(n, set),
            Method::Backtrack => self.count_backtrack(n, set),
            Method::Mask => {
                let counts = self.counts_all_subsets(n)?;
                Ok(CountResult {
                    n,
                    set,
                    value: counts[set.mask() as usize].clone(),
                    method,
                })
            }
        }
    }

    /// Filters all of B_n through the pairwise containment scan.
    pub fn count_naive(&self, n: usize, set: PatternSet) -> Result<CountResult> {
        self.check(n)?;
        let firsts: Vec<Option<SignedLetter>> = if n == 0 {
            vec![None]
        } else {
            (1..=n as i32)
                .flat_map(|m| [-m, m])
                .map(|x| Some(SignedLetter::new(x).unwrap()))
                .collect()
        };
        let value = sum_over(self.execution, firsts, |first| -> u64 {
            let perms = match first {
                Some(l) => SignedPermutations::starting_with(n, l),
                None => SignedPermutations::new(n),
            };
            perms.filter(|a| a.avoids(set)).count() as u64
        });
        Ok(CountResult {
            n,
            set,
            value: value.into(),
            method: Method::Naive,
        })
    }

    pub fn count_backtrack(&self, n: usize, set: PatternSet) -> Result<CountResult> {
        self.check(n)?;
        let forbidden = set.mask();
        let roots: Vec<Prefix> = partitions(n).into_iter().filter(|p| p.mask & forbidden == 0).collect();
        let value = sum_over(self.execution, roots, |p| backtrack_dfs(n, p, forbidden));
        Ok(CountResult {
            n,
            set,
            value: value.into(),
            method: Method::Backtrack,
        })
    }

    /// One pass over B_n collecting containment-mask frequencies.
    ///
    /// A prefix whose mask already holds all eight patterns contributes all
    /// of its k! 2^k completions to the full mask at once.
    pub fn mask_histogram(&self, n: usize) -> Result<MaskHistogram> {
        self.check(n)?;
        let completions: Vec<u64> = (0..=n).map(|k| factorial_u64(k) << k).collect();
        let hist = sum_over(self.execution, partitions(n), |p| {
            let mut h = Hist([0; 256]);
            histogram_dfs(n, p, &mut h.0, &completions);
            h
        });
        Ok(MaskHistogram {
            n,
            counts: hist.0.iter().map(|&c| BigUint::from(c)).collect(),
        })
    }

    /// b_n(T) for all 256 sets, indexed by mask.
    pub fn counts_all_subsets(&self, n: usize) -> Result<Vec<BigUint>> {
        Ok(self.mask_histogram(n)?.avoider_counts())
    }

    /// b_0(T), ..., b_{n_max}(T).
    pub fn sequence(&self, method: Method, set: PatternSet, n_max: usize) -> Result<Vec<BigUint>> {
        self.check(n_max)?;
        (0..=n_max).map(|n| Ok(self.count(method, n, set)?.value)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed::Pattern;

    fn shape_bit(ascending: bool, first_barred: bool, second_barred: bool) -> u8 {
        Pattern::from_shape(ascending, first_barred, second_barred).bit()
    }
    fn set(s: &str) -> PatternSet {
        s.parse().unwrap()
    }

    fn seq() -> Enumerator {
        Enumerator::new().with_execution(Execution::Sequential)
    }

    #[test]
    fn pattern_bits_match_pattern_order() {
        for asc in [false, true] {
            for a in [false, true] {
                for b in [false, true] {
                    assert_eq!(PATTERN_BITS[asc as usize][a as usize][b as usize], shape_bit(asc, a, b));
                }
            }
        }
    }

    #[test]
    fn prefix_summary_agrees_with_pair_scan() {
        for n in 0..=5 {
            for alpha in SignedPermutations::new(n) {
                let mut p = Prefix::default();
                for l in alpha.letters() {
                    let new = p.new_patterns(l.magnitude(), l.is_barred());
                    p = p.push(l.magnitude(), l.is_barred(), new);
                }
                assert_eq!(p.mask, alpha.containment_mask().bits(), "{alpha}");
            }
        }
    }

    #[test]
    fn naive_examples() {
        let e = seq();
        assert_eq!(e.count_naive(2, set("1 2, 2 1")).unwrap().value, 6u32.into());
        assert_eq!(e.count_naive(3, set("1 -2, -1 2")).unwrap().value, 22u32.into());
        for t in PatternSet::all() {
            assert_eq!(e.count_naive(2, t).unwrap().value, BigUint::from(8 - t.len()));
        }
        for n in 0..=4 {
            assert_eq!(e.count_naive(n, PatternSet::EMPTY).unwrap().value, group_order(n));
        }
    }

    #[test]
    fn backtrack_examples() {
        let e = seq();
        assert_eq!(e.count_backtrack(3, set("1 2, -1 -2, 2 1")).unwrap().value, 10u32.into());
        assert_eq!(
            e.count_backtrack(4, set("1 2, 1 -2, -2 -1")).unwrap().value,
            34u32.into()
        );
        for t in PatternSet::all() {
            assert_eq!(e.count_backtrack(0, t).unwrap().value, 1u32.into());
        }
    }

    #[test]
    fn histogram_examples() {
        let e = seq();
        let h1 = e.mask_histogram(1).unwrap();
        assert_eq!(h1.counts[0], 2u32.into());
        assert_eq!(h1.total(), 2u32.into());
        let h2 = e.mask_histogram(2).unwrap();
        for (mask, c) in h2.counts.iter().enumerate() {
            let expected: u32 = if mask.count_ones() == 1 { 1 } else { 0 };
            assert_eq!(*c, expected.into(), "mask {mask}");
        }
        assert_eq!(e.mask_histogram(4).unwrap().total(), 384u32.into());
    }

    #[test]
    fn saturated_prefixes_match_full_walk() {
        for n in 0..=6 {
            let mut direct = [0u64; 256];
            for alpha in SignedPermutations::new(n) {
                direct[alpha.containment_mask().bits() as usize] += 1;
            }
            let h = seq().mask_histogram(n).unwrap();
            for m in 0..256 {
                assert_eq!(h.counts[m], direct[m].into());
            }
        }
    }

    #[test]
    fn all_subsets_examples() {
        let c2 = seq().counts_all_subsets(2).unwrap();
        assert_eq!(c2[0], 8u32.into());
        assert_eq!(c2[set("1 2").mask() as usize], 7u32.into());
        let c3 = seq().counts_all_subsets(3).unwrap();
        assert_eq!(c3[0], 48u32.into());
        assert_eq!(c3[set("1 2").mask() as usize], 34u32.into());
    }

    #[test]
    fn subset_sums_brute_force() {
        let xs: Vec<u64> = (0..16u64).map(|i| i * i + 3).collect();
        let mut z = xs.clone();
        subset_sums(&mut z);
        for s in 0..16usize {
            let brute: u64 = (0..16).filter(|&m| m & !s == 0).map(|m| xs[m]).sum();
            assert_eq!(z[s], brute);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let e = Enumerator::new().with_cap(3).unwrap();
        assert!(matches!(e.count_naive(4, PatternSet::EMPTY), Err(Error::CapExceeded { n: 4, cap: 3 })));
        assert!(e.count_backtrack(4, PatternSet::EMPTY).is_err());
        assert!(e.mask_histogram(4).is_err());
        assert!(e.iterate(4).is_err());
        assert!(Enumerator::new().with_cap(MAX_CAP + 1).is_err());
        assert_eq!(Enumerator::new().iterate(3).unwrap().count(), 48);
    }

    #[test]
    fn execution_modes_agree() {
        let par = Enumerator::new().with_execution(Execution::Parallel);
        for n in 0..=6 {
            assert_eq!(par.mask_histogram(n).unwrap(), seq().mask_histogram(n).unwrap());
        }
        let t = set("1 2, -2 1");
        assert_eq!(par.count_backtrack(6, t).unwrap().value, seq().count_backtrack(6, t).unwrap().value);
        assert_eq!(par.count_naive(5, t).unwrap().value, seq().count_naive(5, t).unwrap().value);
    }

    #[test]
    fn method_names() {
        for m in [Method::Naive, Method::Backtrack, Method::Mask] {
            assert_eq!(m.as_str().parse::<Method>().unwrap(), m);
        }
        assert!("fast".parse::<Method>().is_err());
    }
}

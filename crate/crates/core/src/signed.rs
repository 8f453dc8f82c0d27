//! Signed letters, signed permutations, the eight 2-letter signed patterns and
//! containment testing.
//!
//! A barred letter is stored as a negative integer, so `[2, 1, -3, -4]` is the
//! signed permutation 2 1 3̄ 4̄. Patterns are indexed by a fixed total order:
//!
//! | index | pattern  |
//! |-------|----------|
//! | 0     | `1 2`    |
//! | 1     | `2 1`    |
//! | 2     | `-1 2`   |
//! | 3     | `1 -2`   |
//! | 4     | `-1 -2`  |
//! | 5     | `2 -1`   |
//! | 6     | `-2 1`   |
//! | 7     | `-2 -1`  |
//!
//! Every mask, canonical representative and file format in the crate depends
//! on this order.

use std::fmt;
use std::num::NonZeroI32;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A possibly barred symbol. Negative means barred.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedLetter(NonZeroI32);

impl SignedLetter {
    pub fn new(encoded: i32) -> Result<Self> {
        NonZeroI32::new(encoded).map(SignedLetter).ok_or(Error::ZeroLetter)
    }

    pub fn get(self) -> i32 {
        self.0.get()
    }

    pub fn magnitude(self) -> u32 {
        self.0.get().unsigned_abs()
    }

    pub fn is_barred(self) -> bool {
        self.0.get() < 0
    }

    pub fn barred(self) -> Self {
        SignedLetter(-self.0)
    }
}

impl fmt::Display for SignedLetter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An element of the hyperoctahedral group B_n.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    letters: Vec<SignedLetter>,
}

impl SignedPermutation {
    /// Validates `raw` as an element of B_n with n = `raw.len()`.
    pub fn new(raw: &[i64]) -> Result<Self> {
        let n = raw.len();
        let mut seen = vec![false; n + 1];
        let mut letters = Vec::with_capacity(n);
        for &x in raw {
            if x == 0 {
                return Err(Error::ZeroLetter);
            }
            let magnitude = x.unsigned_abs();
            if magnitude > n as u64 {
                return Err(Error::MagnitudeOutOfRange { magnitude, n });
            }
            let m = magnitude as usize;
            if seen[m] {
                return Err(Error::DuplicateMagnitude(m as u32));
            }
            seen[m] = true;
            letters.push(SignedLetter::new(x as i32)?);
        }
        Ok(SignedPermutation { letters })
    }

    /// Wraps letters already known to form an element of B_n.
    pub(crate) fn from_letters_unchecked(letters: Vec<SignedLetter>) -> Self {
        debug_assert!(Self::new(&letters.iter().map(|l| l.get() as i64).collect::<Vec<_>>()).is_ok());
        SignedPermutation { letters }
    }

    pub fn identity(n: usize) -> Self {
        let letters = (1..=n as i32)
            .map(|i| SignedLetter::new(i).unwrap())
            .collect();
        SignedPermutation { letters }
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn letters(&self) -> &[SignedLetter] {
        &self.letters
    }

    pub fn to_vec(&self) -> Vec<i32> {
        self.letters.iter().map(|l| l.get()).collect()
    }

    /// True iff some pair of positions forms an occurrence of `tau`.
    pub fn contains(&self, tau: Pattern) -> bool {
        self.pairs().any(|p| p == tau)
    }

    /// The set of patterns that occur in this permutation.
    pub fn containment_mask(&self) -> ContainmentMask {
        ContainmentMask(self.pairs().fold(0u8, |m, p| m | p.bit()))
    }

    pub fn avoids(&self, set: PatternSet) -> bool {
        self.containment_mask().is_disjoint(set)
    }

    fn pairs(&self) -> impl Iterator<Item = Pattern> + '_ {
        let letters = &self.letters;
        (0..letters.len()).flat_map(move |i| {
            (i + 1..letters.len()).map(move |j| {
                Pattern::of_pair(letters[i], letters[j]).expect("magnitudes are distinct")
            })
        })
    }
}

impl fmt::Display for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.letters.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Pattern index indexed by `[ascending][first barred][second barred]`.
const PATTERN_INDEX: [[[u8; 2]; 2]; 2] = [
    // descending: 2 1, 2 -1, -2 1, -2 -1
    [[1, 5], [6, 7]],
    // ascending: 1 2, 1 -2, -1 2, -1 -2
    [[0, 3], [2, 4]],
];

const PATTERN_LETTERS: [[i32; 2]; 8] = [
    [1, 2],
    [2, 1],
    [-1, 2],
    [1, -2],
    [-1, -2],
    [2, -1],
    [-2, 1],
    [-2, -1],
];

/// One of the eight elements of B_2, used as a pattern.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Pattern(u8);

impl Pattern {
    pub const ALL: [Pattern; 8] = [
        Pattern(0),
        Pattern(1),
        Pattern(2),
        Pattern(3),
        Pattern(4),
        Pattern(5),
        Pattern(6),
        Pattern(7),
    ];

    pub fn from_index(index: u8) -> Option<Self> {
        (index < 8).then_some(Pattern(index))
    }

    pub fn index(self) -> u8 {
        self.0
    }

    pub fn bit(self) -> u8 {
        1 << self.0
    }

    pub fn letters(self) -> [i32; 2] {
        PATTERN_LETTERS[self.0 as usize]
    }

    pub fn as_permutation(self) -> SignedPermutation {
        let [a, b] = self.letters();
        SignedPermutation::from_letters_unchecked(vec![
            SignedLetter::new(a).unwrap(),
            SignedLetter::new(b).unwrap(),
        ])
    }

    /// The pattern an ordered pair of letters is an occurrence of.
    pub fn of_pair(a: SignedLetter, b: SignedLetter) -> Result<Self> {
        if a.magnitude() == b.magnitude() {
            return Err(Error::EqualMagnitudes(a.get(), b.get()));
        }
        Ok(Self::from_shape(
            a.magnitude() < b.magnitude(),
            a.is_barred(),
            b.is_barred(),
        ))
    }

    pub(crate) fn from_shape(ascending: bool, first_barred: bool, second_barred: bool) -> Self {
        Pattern(PATTERN_INDEX[ascending as usize][first_barred as usize][second_barred as usize])
    }

    /// Parses exactly two signed integers whose magnitudes are {1, 2}.
    pub fn from_letters(a: i64, b: i64) -> Result<Self> {
        let text = || format!("{a} {b}");
        let ok = |x: i64| x == 1 || x == 2 || x == -1 || x == -2;
        if !ok(a) || !ok(b) || a.abs() == b.abs() {
            return Err(Error::PatternParse(text(), "magnitudes must be exactly {1, 2}"));
        }
        Ok(Self::from_shape(a.abs() < b.abs(), a < 0, b < 0))
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b] = self.letters();
        write!(f, "{a} {b}")
    }
}

impl FromStr for Pattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = |why| Error::PatternParse(s.trim().to_string(), why);
        let mut parts = s.split_whitespace();
        let mut next = || -> Result<i64> {
            parts
                .next()
                .ok_or_else(|| bad("expected two signed integers"))?
                .parse::<i64>()
                .map_err(|_| bad("not an integer"))
        };
        let (a, b) = (next()?, next()?);
        if parts.next().is_some() {
            return Err(bad("expected two signed integers"));
        }
        Self::from_letters(a, b)
    }
}

/// A subset of B_2 as an 8-bit mask over the pattern order.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PatternSet(u8);

impl PatternSet {
    pub const EMPTY: PatternSet = PatternSet(0);
    pub const FULL: PatternSet = PatternSet(0xff);

    pub fn from_mask(mask: u8) -> Self {
        PatternSet(mask)
    }

    pub fn mask(self) -> u8 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, p: Pattern) -> bool {
        self.0 & p.bit() != 0
    }

    pub fn insert(&mut self, p: Pattern) -> bool {
        let fresh = !self.contains(p);
        self.0 |= p.bit();
        fresh
    }

    pub fn union(self, other: PatternSet) -> PatternSet {
        PatternSet(self.0 | other.0)
    }

    pub fn is_subset(self, other: PatternSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Pattern> {
        Pattern::ALL.into_iter().filter(move |&p| self.contains(p))
    }

    /// All 256 subsets in ascending mask order.
    pub fn all() -> impl Iterator<Item = PatternSet> {
        (0..=255u8).map(PatternSet)
    }

    /// Parses the comma-separated text form, reporting patterns listed more
    /// than once.
    pub fn parse_with_duplicates(s: &str) -> Result<(PatternSet, Vec<Pattern>)> {
        let mut set = PatternSet::EMPTY;
        let mut duplicates = Vec::new();
        if s.trim().is_empty() {
            return Ok((set, duplicates));
        }
        for item in s.split(',') {
            let p: Pattern = item.parse()?;
            if !set.insert(p) {
                duplicates.push(p);
            }
        }
        Ok((set, duplicates))
    }

    pub fn to_pairs(self) -> Vec<[i32; 2]> {
        self.iter().map(Pattern::letters).collect()
    }

    pub fn from_pairs(pairs: &[[i32; 2]]) -> Result<Self> {
        let mut set = PatternSet::EMPTY;
        for &[a, b] in pairs {
            set.insert(Pattern::from_letters(a as i64, b as i64)?);
        }
        Ok(set)
    }
}

impl FromIterator<Pattern> for PatternSet {
    fn from_iter<I: IntoIterator<Item = Pattern>>(iter: I) -> Self {
        PatternSet(iter.into_iter().fold(0, |m, p| m | p.bit()))
    }
}

impl fmt::Display for PatternSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for PatternSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with_duplicates(s).map(|(set, _)| set)
    }
}

impl Serialize for PatternSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_pairs().serialize(s)
    }
}

impl<'de> Deserialize<'de> for PatternSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let pairs = Vec::<[i32; 2]>::deserialize(d)?;
        PatternSet::from_pairs(&pairs).map_err(serde::de::Error::custom)
    }
}

/// The set of patterns occurring in one signed permutation.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ContainmentMask(pub(crate) u8);

impl ContainmentMask {
    pub fn bits(self) -> u8 {
        self.0
    }

    pub fn patterns(self) -> PatternSet {
        PatternSet(self.0)
    }

    pub fn is_disjoint(self, set: PatternSet) -> bool {
        self.0 & set.0 == 0
    }
}

/// Iterates every element of B_n exactly once.
///
/// Magnitudes run through permutations in lexicographic order; for each
/// arrangement all 2^n bar assignments follow.
pub struct SignedPermutations {
    prefix: Vec<SignedLetter>,
    magnitudes: Vec<u32>,
    signs: u64,
    done: bool,
}

impl SignedPermutations {
    pub(crate) fn new(n: usize) -> Self {
        SignedPermutations {
            prefix: Vec::new(),
            magnitudes: (1..=n as u32).collect(),
            signs: 0,
            done: false,
        }
    }

    /// Elements of B_n whose first letter is `first`.
    pub(crate) fn starting_with(n: usize, first: SignedLetter) -> Self {
        debug_assert!(first.magnitude() as usize <= n);
        SignedPermutations {
            prefix: vec![first],
            magnitudes: (1..=n as u32).filter(|&m| m != first.magnitude()).collect(),
            signs: 0,
            done: false,
        }
    }
}

fn next_permutation(xs: &mut [u32]) -> bool {
    let Some(i) = xs.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = xs.iter().rposition(|&x| x > xs[i]).unwrap();
    xs.swap(i, j);
    xs[i + 1..].reverse();
    true
}

impl Iterator for SignedPermutations {
    type Item = SignedPermutation;

    fn next(&mut self) -> Option<SignedPermutation> {
        if self.done {
            return None;
        }
        let mut letters = self.prefix.clone();
        letters.extend(self.magnitudes.iter().enumerate().map(|(i, &m)| {
            let v = m as i32;
            SignedLetter::new(if self.signs >> i & 1 == 1 { -v } else { v }).unwrap()
        }));
        self.signs += 1;
        if self.signs >> self.magnitudes.len() != 0 {
            self.signs = 0;
            self.done = !next_permutation(&mut self.magnitudes);
        }
        Some(SignedPermutation::from_letters_unchecked(letters))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perm(xs: &[i64]) -> SignedPermutation {
        SignedPermutation::new(xs).unwrap()
    }

    fn pat(s: &str) -> Pattern {
        s.parse().unwrap()
    }

    fn letter(x: i32) -> SignedLetter {
        SignedLetter::new(x).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(perm(&[1, -2]).to_vec(), vec![1, -2]);
        assert!(matches!(SignedPermutation::new(&[1, 1]), Err(Error::DuplicateMagnitude(1))));
        assert!(matches!(
            SignedPermutation::new(&[3, 1]),
            Err(Error::MagnitudeOutOfRange { magnitude: 3, n: 2 })
        ));
        assert!(matches!(SignedPermutation::new(&[0, 1]), Err(Error::ZeroLetter)));
        assert!(SignedPermutation::new(&[]).unwrap().is_empty());
        assert!(SignedLetter::new(0).is_err());
    }

    #[test]
    fn ordering_table() {
        for (i, p) in Pattern::ALL.iter().enumerate() {
            assert_eq!(p.index() as usize, i);
            let [a, b] = p.letters();
            assert_eq!(Pattern::from_letters(a as i64, b as i64).unwrap(), *p);
        }
        assert_eq!(pat("-2 1").index(), 6);
        assert_eq!(pat("1 -2").index(), 3);
    }

    #[test]
    fn pair_reduction() {
        assert_eq!(Pattern::of_pair(letter(2), letter(-4)).unwrap(), pat("1 -2"));
        assert_eq!(Pattern::of_pair(letter(-3), letter(1)).unwrap(), pat("-2 1"));
        assert_eq!(Pattern::of_pair(letter(5), letter(2)).unwrap(), pat("2 1"));
        assert!(matches!(
            Pattern::of_pair(letter(3), letter(-3)),
            Err(Error::EqualMagnitudes(3, -3))
        ));
    }

    #[test]
    fn containment_of_worked_example() {
        let alpha = perm(&[2, 1, -3, -4]);
        assert!(alpha.contains(pat("-1 -2")));
        assert!(alpha.contains(pat("2 1")));
        assert!(!alpha.contains(pat("1 2")));
        let expected: PatternSet = "2 1, 1 -2, -1 -2".parse().unwrap();
        assert_eq!(alpha.containment_mask().patterns(), expected);
        for p in Pattern::ALL {
            assert!(!perm(&[1]).contains(p));
            assert!(!perm(&[-1]).contains(p));
        }
    }

    #[test]
    fn masks_and_avoidance() {
        assert_eq!(perm(&[]).containment_mask().bits(), 0);
        assert_eq!(perm(&[1, 2]).containment_mask().patterns(), "1 2".parse().unwrap());
        assert!(perm(&[3, -1, 2]).avoids(PatternSet::EMPTY));
        assert!(!perm(&[1, 2]).avoids("1 2".parse().unwrap()));
        assert!(perm(&[-2, -1]).avoids("1 2, 2 1".parse().unwrap()));
    }

    #[test]
    fn b2_is_a_bijection_onto_patterns() {
        let mut seen = PatternSet::EMPTY;
        for alpha in SignedPermutations::new(2) {
            let m = alpha.containment_mask().patterns();
            assert_eq!(m.len(), 1);
            assert!(seen.insert(m.iter().next().unwrap()));
        }
        assert_eq!(seen, PatternSet::FULL);
        for p in Pattern::ALL {
            assert_eq!(p.as_permutation().containment_mask().patterns().iter().next(), Some(p));
        }
    }

    #[test]
    fn iteration_counts() {
        assert_eq!(SignedPermutations::new(0).collect::<Vec<_>>(), vec![perm(&[])]);
        assert_eq!(
            SignedPermutations::new(1).collect::<Vec<_>>(),
            vec![perm(&[1]), perm(&[-1])]
        );
        assert_eq!(SignedPermutations::new(2).count(), 8);
        let mut total = 0;
        for m in 1..=4 {
            for first in [m, -m] {
                total += SignedPermutations::starting_with(4, letter(first)).count();
            }
        }
        assert_eq!(total, 384);
    }

    #[test]
    fn pattern_text() {
        let (set, dups) = PatternSet::parse_with_duplicates("1 2, -1 2 ,2 -1, 1  2").unwrap();
        assert_eq!(set.to_string(), "1 2, -1 2, 2 -1");
        assert_eq!(dups, vec![pat("1 2")]);
        assert_eq!("".parse::<PatternSet>().unwrap(), PatternSet::EMPTY);
        for bad in ["1 3", "1 1", "1", "1 2 3", "a b", "1 -1", "0 2", "1 2,"] {
            assert!(bad.parse::<PatternSet>().is_err(), "{bad}");
        }
        for set in PatternSet::all() {
            assert_eq!(set.to_string().parse::<PatternSet>().unwrap(), set);
        }
    }

    #[test]
    fn pattern_set_json() {
        let set: PatternSet = "1 2, -2 -1".parse().unwrap();
        let json = serde_json::to_string(&set).unwrap();
        assert_eq!(json, "[[1,2],[-2,-1]]");
        assert_eq!(serde_json::from_str::<PatternSet>(&json).unwrap(), set);
        assert!(serde_json::from_str::<PatternSet>("[[1,3]]").is_err());
    }
}

//! Reversal, barring and complement, the group they generate, and orbits of
//! pattern sets under that group.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::signed::{Pattern, PatternSet, SignedLetter, SignedPermutation};

pub fn reversal(alpha: &SignedPermutation) -> SignedPermutation {
    let mut letters = alpha.letters().to_vec();
    letters.reverse();
    SignedPermutation::from_letters_unchecked(letters)
}

pub fn barring(alpha: &SignedPermutation) -> SignedPermutation {
    SignedPermutation::from_letters_unchecked(alpha.letters().iter().map(|l| l.barred()).collect())
}

/// Replaces magnitude m by n + 1 - m, keeping bars.
pub fn complement(alpha: &SignedPermutation) -> SignedPermutation {
    let n = alpha.len() as i32;
    let letters = alpha
        .letters()
        .iter()
        .map(|l| {
            let m = n + 1 - l.magnitude() as i32;
            SignedLetter::new(if l.is_barred() { -m } else { m }).unwrap()
        })
        .collect();
    SignedPermutation::from_letters_unchecked(letters)
}

/// A composition of the three generators, each used at most once.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SymmetryElement {
    pub reversal: bool,
    pub barring: bool,
    pub complement: bool,
}

impl SymmetryElement {
    pub const IDENTITY: SymmetryElement = SymmetryElement::new(false, false, false);
    pub const REVERSAL: SymmetryElement = SymmetryElement::new(true, false, false);
    pub const BARRING: SymmetryElement = SymmetryElement::new(false, true, false);
    pub const COMPLEMENT: SymmetryElement = SymmetryElement::new(false, false, true);
    pub const GENERATORS: [SymmetryElement; 3] = [Self::REVERSAL, Self::BARRING, Self::COMPLEMENT];

    pub const fn new(reversal: bool, barring: bool, complement: bool) -> Self {
        SymmetryElement {
            reversal,
            barring,
            complement,
        }
    }

    /// Applies complement, then barring, then reversal, as flagged.
    pub fn apply(self, alpha: &SignedPermutation) -> SignedPermutation {
        let mut out = alpha.clone();
        if self.complement {
            out = complement(&out);
        }
        if self.barring {
            out = barring(&out);
        }
        if self.reversal {
            out = reversal(&out);
        }
        out
    }

    pub fn apply_pattern(self, p: Pattern) -> Pattern {
        let image = self.apply(&p.as_permutation());
        Pattern::of_pair(image.letters()[0], image.letters()[1]).unwrap()
    }

    /// Image of every pattern, indexed by pattern index.
    pub fn pattern_map(self) -> [Pattern; 8] {
        Pattern::ALL.map(|p| self.apply_pattern(p))
    }

    pub fn apply_set(self, set: PatternSet) -> PatternSet {
        let map = self.pattern_map();
        set.iter().map(|p| map[p.index() as usize]).collect()
    }
}

fn compose(outer: [Pattern; 8], inner: [Pattern; 8]) -> [Pattern; 8] {
    inner.map(|p| outer[p.index() as usize])
}

/// Closes the generators under composition, acting on B_2, and labels each
/// resulting map with the flag triple that realizes it.
///
/// Panics if some composite is not realized by any flag triple, which would
/// mean the generators do not commute on B_2.
pub fn group_elements() -> Vec<SymmetryElement> {
    let identity = SymmetryElement::IDENTITY.pattern_map();
    let generators: Vec<[Pattern; 8]> = SymmetryElement::GENERATORS
        .iter()
        .map(|g| g.pattern_map())
        .collect();
    let mut seen = BTreeSet::from([identity]);
    let mut queue = VecDeque::from([identity]);
    while let Some(table) = queue.pop_front() {
        for gen in &generators {
            let next = compose(*gen, table);
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }

    let triples: Vec<SymmetryElement> = (0..8u8)
        .map(|b| SymmetryElement::new(b & 1 != 0, b & 2 != 0, b & 4 != 0))
        .collect();
    let mut out: Vec<SymmetryElement> = seen
        .iter()
        .map(|table| {
            *triples
                .iter()
                .find(|g| g.pattern_map() == *table)
                .expect("closure element without a flag triple")
        })
        .collect();
    out.sort();
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Sorted by mask value.
    pub members: Vec<PatternSet>,
    pub representative: PatternSet,
}

impl Orbit {
    pub fn set_size(&self) -> usize {
        self.representative.len()
    }
}

pub fn orbit_of_set(set: PatternSet) -> Orbit {
    let members: BTreeSet<PatternSet> = group_elements().into_iter().map(|g| g.apply_set(set)).collect();
    let members: Vec<PatternSet> = members.into_iter().collect();
    Orbit {
        representative: members[0],
        members,
    }
}

/// The orbit member with the smallest mask value.
pub fn canonical_representative(set: PatternSet) -> PatternSet {
    orbit_of_set(set).representative
}

/// Partition of all 256 pattern sets into orbits, ordered by set size and then
/// by representative mask. The position in this list is the orbit id.
pub fn all_orbits() -> Vec<Orbit> {
    let maps: Vec<[Pattern; 8]> = group_elements().iter().map(|g| g.pattern_map()).collect();
    let image = |map: &[Pattern; 8], set: PatternSet| -> PatternSet { set.iter().map(|p| map[p.index() as usize]).collect() };
    let mut assigned = [false; 256];
    let mut orbits = Vec::new();
    for set in PatternSet::all() {
        if assigned[set.mask() as usize] {
            continue;
        }
        let members: BTreeSet<PatternSet> = maps.iter().map(|m| image(m, set)).collect();
        for m in &members {
            assigned[m.mask() as usize] = true;
        }
        orbits.push(Orbit {
            representative: set,
            members: members.into_iter().collect(),
        });
    }
    orbits.sort_by_key(|o| (o.set_size(), o.representative));
    orbits
}

/// Number of orbits of k-element pattern sets, for k = 0..=8.
pub fn orbit_census_by_size() -> BTreeMap<usize, usize> {
    let mut out: BTreeMap<usize, usize> = (0..=8).map(|k| (k, 0)).collect();
    for orbit in all_orbits() {
        *out.get_mut(&orbit.set_size()).unwrap() += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::signed::SignedPermutations;

    fn perm(xs: &[i64]) -> SignedPermutation {
        SignedPermutation::new(xs).unwrap()
    }

    fn set(s: &str) -> PatternSet {
        s.parse().unwrap()
    }

    #[test]
    fn generators_on_examples() {
        assert_eq!(reversal(&perm(&[1, -2])), perm(&[-2, 1]));
        assert_eq!(reversal(&perm(&[])), perm(&[]));
        assert_eq!(barring(&perm(&[1, -2])), perm(&[-1, 2]));
        assert_eq!(barring(&perm(&[2, 1])), perm(&[-2, -1]));
        assert_eq!(complement(&perm(&[1, 2])), perm(&[2, 1]));
        assert_eq!(complement(&perm(&[1, -2])), perm(&[2, -1]));
    }

    #[test]
    fn apply_composes_flags() {
        let a = perm(&[3, -1, 2]);
        assert_eq!(SymmetryElement::IDENTITY.apply(&a), a);
        assert_eq!(SymmetryElement::REVERSAL.apply(&perm(&[1, -2])), perm(&[-2, 1]));
        assert_eq!(
            SymmetryElement::new(false, true, true).apply(&perm(&[1, 2])),
            perm(&[-2, -1])
        );
    }

    #[test]
    fn generators_are_commuting_involutions() {
        for n in 0..=5 {
            for a in SignedPermutations::new(n) {
                for f in [reversal, barring, complement] {
                    assert_eq!(f(&f(&a)), a);
                }
                assert_eq!(reversal(&barring(&a)), barring(&reversal(&a)));
                assert_eq!(reversal(&complement(&a)), complement(&reversal(&a)));
                assert_eq!(barring(&complement(&a)), complement(&barring(&a)));
            }
        }
    }

    #[test]
    fn group_has_order_eight() {
        let g = group_elements();
        assert_eq!(g.len(), 8);
        assert!(g.contains(&SymmetryElement::IDENTITY));
        for e in g {
            for p in Pattern::ALL {
                assert_eq!(e.apply_pattern(e.apply_pattern(p)), p);
            }
        }
    }

    #[test]
    fn orbit_examples() {
        let o = orbit_of_set(set("1 2"));
        assert_eq!(o.members, vec![set("1 2"), set("2 1"), set("-1 -2"), set("-2 -1")]);
        assert_eq!(o.representative, set("1 2"));
        assert_eq!(orbit_of_set(PatternSet::EMPTY).members, vec![PatternSet::EMPTY]);
        assert_eq!(orbit_of_set(PatternSet::FULL).members, vec![PatternSet::FULL]);
        assert_eq!(canonical_representative(set("2 1")), set("1 2"));
        assert_eq!(canonical_representative(PatternSet::EMPTY), PatternSet::EMPTY);
    }

    #[test]
    fn orbit_counts_by_size() {
        let census = orbit_census_by_size();
        let counts: Vec<usize> = census.values().copied().collect();
        assert_eq!(counts, vec![1, 2, 8, 10, 16, 10, 8, 2, 1]);
        assert_eq!(counts.iter().sum::<usize>(), 58);
    }

    #[test]
    fn orbits_partition_and_divide_group_order() {
        let orbits = all_orbits();
        let total: usize = orbits.iter().map(|o| o.members.len()).sum();
        assert_eq!(total, 256);
        for o in &orbits {
            assert_eq!(8 % o.members.len(), 0);
            assert!(o.members.iter().all(|m| m.len() == o.set_size()));
            assert!(o.members.iter().all(|&m| canonical_representative(m) == o.representative));
            assert_eq!(orbit_of_set(o.representative), *o);
        }
    }
}

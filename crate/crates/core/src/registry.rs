//! Named pattern sets, the closed form claimed for each, and the range of n
//! on which the claim is made.

use num_bigint::BigUint;

use crate::formulas::{eval_formula, factorial, FormulaId};
use crate::signed::PatternSet;
use crate::symmetry::canonical_representative;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RegistryEntry {
    /// e.g. "T_6", "U4_10", "W_3", "V_4", "U78_3", "{1 2, 2 1}".
    pub paper_name: &'static str,
    /// The set exactly as named.
    pub set: PatternSet,
    pub canonical_set: PatternSet,
    pub formula: FormulaId,
    /// First n checked by verification.
    pub min_n: u32,
    /// First n of the claimed range. Differs from `min_n` only where the
    /// claim is known to fail at its stated lower end.
    pub stated_min_n: u32,
    /// The claim, e.g. "b_n(T_6) = F_{2n+1}".
    pub statement: String,
}

impl RegistryEntry {
    fn new(paper_name: &'static str, set: &str, formula: FormulaId, min_n: u32) -> Self {
        let set: PatternSet = set.parse().expect("registry pattern text");
        RegistryEntry {
            paper_name,
            set,
            canonical_set: canonical_representative(set),
            formula,
            min_n,
            stated_min_n: min_n,
            statement: format!("b_n({paper_name}) = {}", formula.expression()),
        }
    }

    fn stated_from(mut self, stated_min_n: u32) -> Self {
        self.stated_min_n = stated_min_n;
        self
    }
}

const T1: &str = "1 2, 1 -2, -1 2";
const T3: &str = "1 2, 1 -2, 2 1";
const T4: &str = "1 2, 1 -2, 2 -1";
const T5: &str = "1 2, 1 -2, -2 1";
const T8: &str = "1 2, -1 -2, 2 -1";

/// Every claimed closed form, one entry per named set.
pub fn registry() -> Vec<RegistryEntry> {
    use FormulaId::*;
    let e = RegistryEntry::new;
    let with = |base: &str, extra: &str| format!("{base}, {extra}");
    let mut out = vec![
        e("{}", "", EmptySet, 0),
        // single patterns
        e("{1 2}", "1 2", Eq1, 0),
        e("{1 -2}", "1 -2", Eq1, 0),
        // pairs
        e("{1 2, 2 1}", "1 2, 2 1", Eq2, 0),
        e("{1 2, 1 -2}", "1 2, 1 -2", Eq2, 0),
        e("{2 -1, 1 -2}", "2 -1, 1 -2", Eq2, 0),
        e("{2 -1, -1 2}", "2 -1, -1 2", Eq2, 0),
        e("{1 2, -1 -2}", "1 2, -1 -2", Eq3, 0),
        e("{1 2, -2 -1}", "1 2, -2 -1", Eq3, 0),
        e("{1 2, -2 1}", "1 2, -2 1", Eq4, 0),
        e("{1 -2, -1 2}", "1 -2, -1 2", Eq5, 0),
        // three patterns
        e("T_1", T1, Eq6, 0),
        e("T_2", "1 2, 1 -2, -1 -2", Eq7, 0),
        e("T_3", T3, Eq8, 0),
        e("T_4", T4, Eq9, 0),
        e("T_5", T5, Eq9, 0),
        e("T_6", "1 2, 1 -2, -2 -1", Eq10, 0),
        e("T_7", "1 2, -1 -2, 2 1", Eq11, 0),
        e("T_8", T8, Eq12, 0),
        e("T_9", "1 2, 2 -1, -2 1", Eq13, 0),
        e("T_10", "1 -2, -1 2, 2 -1", Eq13a, 0),
    ];
    // four patterns
    let u4: [(&str, &str, FormulaId); 16] = [
        ("U4_1", "1 2, 1 -2, -1 2, -1 -2", Th4_4),
        ("U4_2", "1 2, 1 -2, -1 2, 2 1", Th4_7),
        ("U4_3", "1 2, 1 -2, -1 2, 2 -1", Th4_6),
        ("U4_4", "1 2, 1 -2, -1 2, -2 -1", Th4_3),
        ("U4_5", "1 2, 1 -2, -1 -2, 2 1", Th4_3),
        ("U4_6", "1 2, 1 -2, -1 -2, 2 -1", Th4_4),
        ("U4_7", "1 2, 1 -2, -1 -2, -2 1", Th4_4),
        ("U4_8", "1 2, 1 -2, 2 1, 2 -1", Th4_5),
        ("U4_9", "1 2, 1 -2, 2 1, -2 1", Th4_5),
        ("U4_10", "1 2, 1 -2, 2 1, -2 -1", Th4_2),
        ("U4_11", "1 2, 1 -2, 2 -1, -2 1", Th4_6),
        ("U4_12", "1 2, 1 -2, 2 -1, -2 -1", Th4_4),
        ("U4_13", "1 2, 1 -2, -2 1, -2 -1", Th4_4),
        ("U4_14", "1 2, -1 -2, 2 1, -2 -1", Th4_1),
        ("U4_15", "1 2, -1 -2, 2 -1, -2 1", Th4_2),
        ("U4_16", "1 -2, -1 2, 2 -1, -2 1", Th4_5),
    ];
    out.extend(u4.iter().map(|&(name, set, f)| e(name, set, f, 3)));
    // five patterns
    let w: [(&str, &str, FormulaId); 10] = [
        ("W_1", "1 2, 1 -2, -1 2, -1 -2, 2 1", Th5_3),
        ("W_2", "1 2, 1 -2, -1 2, -1 -2, 2 -1", Th5_3),
        ("W_3", "1 2, 1 -2, -1 2, 2 1, 2 -1", Th5_5),
        ("W_4", "1 2, 1 -2, -1 2, 2 1, -2 -1", Th5_2),
        ("W_5", "1 2, 1 -2, -1 2, 2 -1, -2 1", Th5_4),
        ("W_6", "1 2, 1 -2, -1 2, 2 -1, -2 -1", Th5_3),
        ("W_7", "1 2, 1 -2, -1 -2, 2 1, 2 -1", Th5_3),
        ("W_8", "1 2, 1 -2, -1 -2, 2 1, -2 1", Th5_3),
        ("W_9", "1 2, 1 -2, -1 -2, 2 1, -2 -1", Th5_1),
        ("W_10", "1 2, 1 -2, -1 -2, 2 -1, -2 1", Th5_3),
    ];
    out.extend(w.iter().map(|&(name, set, f)| e(name, set, f, 3)));
    // six patterns; the zero clause is stated from n = 2 but b_2 = 8 - 6 = 2
    // for every six-element set, so it is checked from n = 3
    let v: [(&str, &str, FormulaId); 8] = [
        ("V_1", "1 2, 1 -2, -1 2, -1 -2, 2 1, 2 -1", Th6_2),
        ("V_2", "1 2, 1 -2, -1 2, -1 -2, 2 1, -2 -1", Th6_1),
        ("V_3", "1 2, 1 -2, -1 2, -1 -2, 2 -1, -2 1", Th6_2),
        ("V_4", "1 2, 1 -2, -1 2, 2 1, 2 -1, -2 1", Th6_3),
        ("V_5", "1 2, 1 -2, -1 2, 2 1, 2 -1, -2 -1", Th6_2),
        ("V_6", "1 2, 1 -2, -1 2, 2 -1, -2 1, -2 -1", Th6_2),
        ("V_7", "1 2, 1 -2, -1 -2, 2 1, 2 -1, -2 -1", Th6_1),
        ("V_8", "1 2, 1 -2, -1 -2, 2 1, -2 1, -2 -1", Th6_1),
    ];
    out.extend(v.iter().map(|&(name, set, f)| {
        if f == Th6_1 {
            e(name, set, f, 3).stated_from(2)
        } else {
            e(name, set, f, 2)
        }
    }));
    // seven and eight patterns
    out.extend([
        e("U78_1", "1 2, 2 1, -1 2, 1 -2, -1 -2, 2 -1, -2 1, -2 -1", Th7_1, 3),
        e("U78_2", "1 2, 1 -2, -1 2, -1 -2, 2 1, 2 -1, -2 -1", Th7_1, 3),
        e("U78_3", "1 2, 1 -2, -1 2, -1 -2, 2 1, 2 -1, -2 1", Th7_2, 3),
    ]);
    // corollaries extending three-pattern sets
    let cor = |name: &'static str, set: String, f: FormulaId, min_n: u32| e(name, &set, f, min_n);
    out.extend([
        cor("T_8+{2 1}", with(T8, "2 1"), CorExtu1, 1),
        cor("T_8+{-2 1}", with(T8, "-2 1"), CorExtu1, 1),
        cor("T_1+{-1 -2}", with(T1, "-1 -2"), CorExtu2, 0),
        cor("T_1+{-2 -1}", with(T1, "-2 -1"), CorExtu2b, 2),
        cor("T_3+{-1 -2}", with(T3, "-1 -2"), CorExtu3, 0),
        cor("T_4+{2 1}", with(T4, "2 1"), CorExtu4, 1),
        cor("T_4+{-1 -2}", with(T4, "-1 -2"), CorExtu4b, 1),
        cor("T_4+{-2 -1}", with(T4, "-2 -1"), CorExtu4b, 1),
        cor("T_5+{-2 -1}", with(T5, "-2 -1"), CorExtu5, 0),
    ]);
    out
}

/// Registry entries whose canonical set is `canonical`.
pub fn lookup(entries: &[RegistryEntry], canonical: PatternSet) -> Vec<&RegistryEntry> {
    entries.iter().filter(|e| e.canonical_set == canonical).collect()
}

/// A closed form that was claimed for a set and is refuted by enumeration.
#[derive(Clone, Debug)]
pub struct SupersededClaim {
    pub set: PatternSet,
    pub statement: &'static str,
    pub eval: fn(u64) -> BigUint,
    /// An n at which the claim is known to disagree with the true count.
    pub witness_n: u64,
}

/// Earlier or misprinted closed forms kept as negative controls.
pub fn superseded_claims() -> Vec<SupersededClaim> {
    vec![
        SupersededClaim {
            set: "1 2, 2 1".parse().unwrap(),
            statement: "b_n({1 2, 2 1}) = 2 n!",
            eval: |n| factorial(n) * 2u32,
            witness_n: 2,
        },
        SupersededClaim {
            set: "1 -2, -1 2".parse().unwrap(),
            statement: "b_n({1 -2, -1 2}) = (n+1)!",
            eval: |n| factorial(n + 1),
            witness_n: 3,
        },
        SupersededClaim {
            set: "1 2, 1 -2, -1 2, 2 1".parse().unwrap(),
            statement: "b_n(U4_2) = n! (1 + sum_{j=0}^{n-1} j! (n-1-j)!)",
            eval: |n| {
                let tail: BigUint = (0..n).map(|j| factorial(j) * factorial(n - 1 - j)).sum();
                factorial(n) * (tail + 1u32)
            },
            witness_n: 3,
        },
    ]
}

/// Evaluates the entry's formula at every n in `min_n..=n_max`.
pub fn expected_values(entry: &RegistryEntry, n_max: u32) -> Vec<(u32, BigUint)> {
    (entry.min_n..=n_max).map(|n| (n, eval_formula(entry.formula, n as u64))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::symmetry::all_orbits;

    fn canon(s: &str) -> PatternSet {
        canonical_representative(s.parse().unwrap())
    }

    #[test]
    fn every_orbit_is_covered() {
        let reg = registry();
        for orbit in all_orbits() {
            assert!(!lookup(&reg, orbit.representative).is_empty(), "{}", orbit.representative);
        }
    }

    #[test]
    fn named_sets_have_the_stated_size() {
        for entry in registry() {
            let name = entry.paper_name;
            let expected = match name.split('_').next().unwrap() {
                "T" => 3,
                "U4" => 4,
                "W" => 5,
                "V" => 6,
                _ => continue,
            };
            let size = if name.contains('+') { expected + 1 } else { expected };
            assert_eq!(entry.set.len(), size, "{name}");
        }
        assert_eq!(registry().len(), 67);
    }

    #[test]
    fn distinct_names_in_distinct_orbits() {
        // sets named separately within one size class are orbit representatives
        let reg = registry();
        for prefix in ["T_", "U4_", "W_", "V_", "U78_"] {
            let canon: Vec<PatternSet> = reg
                .iter()
                .filter(|e| e.paper_name.starts_with(prefix) && !e.paper_name.contains('+'))
                .map(|e| e.canonical_set)
                .collect();
            let mut dedup = canon.clone();
            dedup.sort();
            dedup.dedup();
            assert_eq!(dedup.len(), canon.len(), "{prefix}");
        }
    }

    #[test]
    fn lookups() {
        let reg = registry();
        let eq3 = lookup(&reg, canon("1 2, -1 -2"));
        assert_eq!(eq3.len(), 1);
        assert_eq!((eq3[0].formula, eq3[0].min_n), (FormulaId::Eq3, 0));
        let full = lookup(&reg, PatternSet::FULL);
        assert_eq!((full[0].formula, full[0].min_n), (FormulaId::Th7_1, 3));
    }

    #[test]
    fn stated_ranges() {
        for entry in registry() {
            assert!(entry.stated_min_n <= entry.min_n);
            if entry.stated_min_n != entry.min_n {
                assert_eq!(entry.formula, FormulaId::Th6_1);
            }
        }
    }
}

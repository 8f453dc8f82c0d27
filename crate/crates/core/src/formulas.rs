//! Exact evaluators for every closed form, over big integers.
//!
//! Closed forms printed with fractions (harmonic sums, reciprocal factorials,
//! reciprocal binomials) are evaluated through integer identities such as
//! n!/j and n!/j!, so no rational arithmetic is needed here.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub fn factorial(m: u64) -> BigUint {
    (1..=m).fold(BigUint::one(), |acc, k| acc * k)
}

/// Factorials 0!, 1!, ..., m!.
fn factorials(m: u64) -> Vec<BigUint> {
    let mut out = vec![BigUint::one()];
    for k in 1..=m {
        let next = out.last().unwrap() * k;
        out.push(next);
    }
    out
}

/// Zero when k > m.
pub fn binomial(m: u64, k: u64) -> BigUint {
    if k > m {
        return BigUint::zero();
    }
    let k = k.min(m - k);
    (0..k).fold(BigUint::one(), |acc, i| acc * (m - i) / (i + 1))
}

/// Catalan numbers from the convolution C_m = sum_{j<m} C_j C_{m-1-j}.
pub fn catalan(m: u64) -> BigUint {
    let mut c: Vec<BigUint> = vec![BigUint::one()];
    for k in 1..=m as usize {
        let next = (0..k).map(|j| &c[j] * &c[k - 1 - j]).sum();
        c.push(next);
    }
    c.pop().unwrap()
}

/// F_1 = F_2 = 1.
pub fn fibonacci(m: u64) -> Result<BigUint> {
    if m == 0 {
        return Err(Error::NonpositiveIndex);
    }
    let (mut a, mut b) = (BigUint::one(), BigUint::one());
    for _ in 1..m {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    Ok(a)
}

/// Sum over compositions of `n` with every part at least `min_part` of the
/// product of the parts' factorials. The empty composition counts once for
/// n = 0.
pub fn compositions_sum(n: u64, min_part: u64) -> Result<BigUint> {
    if min_part == 0 {
        // Zero parts make the set of compositions infinite.
        return Err(Error::NonpositiveIndex);
    }
    let fact = factorials(n);
    let mut s: Vec<BigUint> = vec![BigUint::one()];
    for k in 1..=n as usize {
        let next = (min_part as usize..=k).map(|i| &fact[i] * &s[k - i]).sum();
        s.push(next);
    }
    Ok(s.pop().unwrap())
}

/// Sum over weak compositions of `total` into exactly `parts` parts of the
/// product of the parts' factorials.
pub fn weak_compositions_sum(total: u64, parts: u64) -> BigUint {
    let fact = factorials(total);
    let t = total as usize;
    // w[s] = weighted count for the parts placed so far summing to s
    let mut w: Vec<BigUint> = (0..=t).map(|s| if s == 0 { BigUint::one() } else { BigUint::zero() }).collect();
    for _ in 0..parts {
        w = (0..=t).map(|s| (0..=s).map(|i| &fact[i] * &w[s - i]).sum()).collect();
    }
    w.swap_remove(t)
}

macro_rules! formula_ids {
    ($($variant:ident => $name:literal),* $(,)?) => {
        /// Identifier of one closed form. The string names are stable and
        /// appear verbatim in census output.
        #[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum FormulaId {
            $($variant),*
        }

        impl FormulaId {
            pub const ALL: &'static [FormulaId] = &[$(FormulaId::$variant),*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(FormulaId::$variant => $name),*
                }
            }
        }

        impl FromStr for FormulaId {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s {
                    $($name => Ok(FormulaId::$variant),)*
                    _ => Err(Error::UnknownId(s.to_string())),
                }
            }
        }
    };
}

formula_ids! {
    Eq1 => "EQ1", Eq2 => "EQ2", Eq3 => "EQ3", Eq4 => "EQ4", Eq5 => "EQ5",
    Eq6 => "EQ6", Eq7 => "EQ7", Eq8 => "EQ8", Eq9 => "EQ9", Eq10 => "EQ10",
    Eq11 => "EQ11", Eq12 => "EQ12", Eq13 => "EQ13", Eq13a => "EQ13A",
    Th4_1 => "TH4_1", Th4_2 => "TH4_2", Th4_3 => "TH4_3", Th4_4 => "TH4_4",
    Th4_5 => "TH4_5", Th4_6 => "TH4_6", Th4_7 => "TH4_7",
    Th5_1 => "TH5_1", Th5_2 => "TH5_2", Th5_3 => "TH5_3", Th5_4 => "TH5_4", Th5_5 => "TH5_5",
    Th6_1 => "TH6_1", Th6_2 => "TH6_2", Th6_3 => "TH6_3",
    Th7_1 => "TH7_1", Th7_2 => "TH7_2",
    CorExtu1 => "COR_EXTU1", CorExtu2 => "COR_EXTU2", CorExtu2b => "COR_EXTU2B",
    CorExtu3 => "COR_EXTU3", CorExtu4 => "COR_EXTU4", CorExtu4b => "COR_EXTU4B",
    CorExtu5 => "COR_EXTU5",
    EmptySet => "EMPTYSET",
}

impl fmt::Display for FormulaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for FormulaId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for FormulaId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FormulaId {
    /// Closed form in plain notation.
    pub fn expression(self) -> &'static str {
        use FormulaId::*;
        match self {
            Eq1 => "sum_{k=0}^n C(n,k)^2 k!",
            Eq2 => "(n+1)!",
            Eq3 => "C(2n,n)",
            Eq4 => "b_n = n b_{n-1} + sum_{i=0}^{n-1} C(n-1,i) i!, b_0 = 1",
            Eq5 => "2 sum over compositions (i_1..i_l) of n of prod i_j!",
            Eq6 => "sum_{d=0}^n sum over weak compositions (i_0..i_d) of n-d of prod i_j!",
            Eq7 => "C_{n+1}",
            Eq8 => "n! + sum_{j=1}^n n!/j",
            Eq9 => "sum_{j=0}^n n!/j!",
            Eq10 => "F_{2n+1}",
            Eq11 => "n^2 + 1",
            Eq12 => "2^{n+1} - (n+1)",
            Eq13 => "n! + sum_{j=1}^n sum_{p+q=n-j} p! q!",
            Eq13a => "sum_{j=0}^n j! (n-j)!",
            Th4_1 | Th5_1 | Th6_1 | Th7_1 => "0",
            Th4_2 | CorExtu1 => "2n",
            Th4_3 | CorExtu2b | CorExtu3 => "1 + C(n+1,2)",
            Th4_4 | CorExtu2 | CorExtu4b | CorExtu5 => "2^n",
            Th4_5 | CorExtu4 => "2 n!",
            Th4_6 => "sum_{j=0}^n j!",
            Th4_7 => "n! + sum_{j=0}^{n-1} j! (n-1-j)!",
            Th5_2 => "3",
            Th5_3 => "n + 1",
            Th5_4 => "1 + n!",
            Th5_5 => "(n+1)(n-1)!",
            Th6_2 => "2",
            Th6_3 => "n!",
            Th7_2 => "1",
            EmptySet => "2^n n!",
        }
    }
}

fn eq4(n: u64) -> BigUint {
    let fact = factorials(n);
    let mut b = BigUint::one();
    for k in 1..=n {
        let tail: BigUint = (0..k).map(|i| binomial(k - 1, i) * &fact[i as usize]).sum();
        b = b * k + tail;
    }
    b
}

/// Evaluates a closed form at n. Total for every n >= 0; where a printed
/// form is undefined at n = 0 the evaluator returns b_0 = 1.
pub fn eval_formula(id: FormulaId, n: u64) -> BigUint {
    use FormulaId::*;
    let big = BigUint::from;
    let fact = || factorials(n);
    match id {
        Eq1 => {
            let f = fact();
            (0..=n).map(|k| binomial(n, k).pow(2) * &f[k as usize]).sum()
        }
        Eq2 => factorial(n + 1),
        Eq3 => binomial(2 * n, n),
        Eq4 => eq4(n),
        Eq5 => {
            if n == 0 {
                BigUint::one()
            } else {
                compositions_sum(n, 1).unwrap() * 2u32
            }
        }
        Eq6 => (0..=n).map(|d| weak_compositions_sum(n - d, d + 1)).sum(),
        Eq7 => catalan(n + 1),
        Eq8 => {
            let f = factorial(n);
            let harmonic: BigUint = (1..=n).map(|j| &f / j).sum();
            f + harmonic
        }
        Eq9 => {
            let f = fact();
            (0..=n).map(|j| &f[n as usize] / &f[j as usize]).sum()
        }
        Eq10 => fibonacci(2 * n + 1).unwrap(),
        Eq11 => big(n * n + 1),
        Eq12 => (BigUint::one() << (n + 1)) - big(n + 1),
        Eq13 => {
            let f = fact();
            let inner = |m: u64| -> BigUint { (0..=m).map(|p| &f[p as usize] * &f[(m - p) as usize]).sum() };
            &f[n as usize] + (1..=n).map(|j| inner(n - j)).sum::<BigUint>()
        }
        Eq13a => {
            let f = fact();
            (0..=n).map(|j| &f[j as usize] * &f[(n - j) as usize]).sum()
        }
        Th4_1 | Th5_1 | Th6_1 | Th7_1 => BigUint::zero(),
        Th4_2 | CorExtu1 => big(2 * n),
        Th4_3 | CorExtu2b | CorExtu3 => binomial(n + 1, 2) + 1u32,
        Th4_4 | CorExtu2 | CorExtu4b | CorExtu5 => BigUint::one() << n,
        Th4_5 | CorExtu4 => factorial(n) * 2u32,
        Th4_6 => fact().into_iter().sum(),
        Th4_7 => {
            let f = fact();
            let tail: BigUint = (0..n).map(|j| &f[j as usize] * &f[(n - 1 - j) as usize]).sum();
            &f[n as usize] + tail
        }
        Th5_2 => big(3),
        Th5_3 => big(n + 1),
        Th5_4 => factorial(n) + 1u32,
        Th5_5 => {
            if n == 0 {
                BigUint::one()
            } else {
                factorial(n - 1) * (n + 1)
            }
        }
        Th6_2 => big(2),
        Th6_3 => factorial(n),
        Th7_2 => BigUint::one(),
        EmptySet => factorial(n) << n,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ev(id: FormulaId, n: u64) -> u64 {
        eval_formula(id, n).try_into().unwrap()
    }

    #[test]
    fn primitives() {
        assert_eq!(factorial(0), 1u32.into());
        assert_eq!(factorial(5), 120u32.into());
        assert_eq!(binomial(4, 2), 6u32.into());
        assert_eq!(binomial(2, 3), 0u32.into());
        assert_eq!(binomial(0, 0), 1u32.into());
        assert_eq!(binomial(30, 15), 155117520u64.into());
        assert_eq!(catalan(0), 1u32.into());
        assert_eq!(catalan(3), 5u32.into());
        assert_eq!(catalan(4), 14u32.into());
        assert_eq!(fibonacci(3).unwrap(), 2u32.into());
        assert_eq!(fibonacci(5).unwrap(), 5u32.into());
        assert_eq!(fibonacci(7).unwrap(), 13u32.into());
        assert_eq!(fibonacci(1).unwrap(), 1u32.into());
        assert!(matches!(fibonacci(0), Err(Error::NonpositiveIndex)));
    }

    #[test]
    fn compositions() {
        assert_eq!(compositions_sum(3, 1).unwrap(), 11u32.into());
        assert_eq!(compositions_sum(1, 1).unwrap(), 1u32.into());
        assert_eq!(compositions_sum(0, 1).unwrap(), 1u32.into());
        // (4)->24, (2,2)->4
        assert_eq!(compositions_sum(4, 2).unwrap(), 28u32.into());
        assert!(compositions_sum(3, 0).is_err());
        // weak compositions of 2 into 2 parts: (2,0),(1,1),(0,2) -> 2+1+2
        assert_eq!(weak_compositions_sum(2, 2), 5u32.into());
        assert_eq!(weak_compositions_sum(0, 3), 1u32.into());
        assert_eq!(weak_compositions_sum(3, 0), 0u32.into());
    }

    #[test]
    fn worked_values() {
        use FormulaId::*;
        assert_eq!([2, 3, 4].map(|n| ev(Eq1, n)), [7, 34, 209]);
        assert_eq!(ev(Eq2, 3), 24);
        assert_eq!(ev(Eq4, 2), 6);
        assert_eq!(ev(Eq5, 3), 22);
        assert_eq!(ev(Eq5, 0), 1);
        assert_eq!(ev(Eq6, 3), 15);
        assert_eq!([ev(Eq8, 2), ev(Eq8, 3)], [5, 17]);
        assert_eq!(ev(Eq12, 2), 5);
        assert_eq!(ev(Eq13a, 3), 16);
        assert_eq!(ev(Th4_2, 4), 8);
        assert_eq!(ev(Th5_5, 3), 8);
        assert_eq!(ev(EmptySet, 3), 48);
        assert_eq!(ev(Th4_6, 3), 10);
        assert_eq!(ev(Eq9, 3), 16);
    }

    #[test]
    fn eq6_by_hand() {
        // d-sum at n = 3: weak compositions of 3 into 1 part, 2 into 2, 1 into 3, 0 into 4
        let terms: Vec<u64> = (0..=3).map(|d| weak_compositions_sum(3 - d, d + 1).try_into().unwrap()).collect();
        assert_eq!(terms, vec![6, 5, 3, 1]);
    }

    #[test]
    fn ids_round_trip() {
        for &id in FormulaId::ALL {
            assert_eq!(id.as_str().parse::<FormulaId>().unwrap(), id);
            let json = serde_json::to_string(&id).unwrap();
            assert_eq!(json, format!("\"{}\"", id.as_str()));
            assert!(!id.expression().is_empty());
        }
        assert!(matches!("EQ99".parse::<FormulaId>(), Err(Error::UnknownId(_))));
    }
}

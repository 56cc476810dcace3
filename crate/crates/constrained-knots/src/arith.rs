//! Reduced fractions, continued fractions, Farey sequences and modular inverses.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("{q} is not invertible modulo {p}")]
    NotCoprime { q: i64, p: i64 },
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("modulus must be positive, got {0}")]
    NonPositiveModulus(i64),
}

/// A rational number with positive denominator in lowest terms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct Fraction {
    num: i64,
    den: i64,
}

impl Fraction {
    pub fn new(num: i64, den: i64) -> Result<Self, ArithError> {
        if den == 0 {
            return Err(ArithError::ZeroDenominator);
        }
        let g = num.gcd(&den);
        let sign = den.signum();
        Ok(Fraction {
            num: sign * num / g,
            den: sign * den / g,
        })
    }

    pub fn integer(n: i64) -> Self {
        Fraction { num: n, den: 1 }
    }

    pub fn num(&self) -> i64 {
        self.num
    }

    pub fn den(&self) -> i64 {
        self.den
    }

    /// Largest integer not exceeding the fraction.
    pub fn floor(&self) -> i64 {
        self.num.div_euclid(self.den)
    }

    /// Smallest integer not below the fraction.
    pub fn ceil(&self) -> i64 {
        -(-self.num).div_euclid(self.den)
    }

    pub fn add(&self, other: &Fraction) -> Fraction {
        Fraction::new(self.num * other.den + other.num * self.den, self.den * other.den).expect("nonzero denominators")
    }

    pub fn sub(&self, other: &Fraction) -> Fraction {
        self.add(&Fraction {
            num: -other.num,
            den: other.den,
        })
    }

    pub fn mul_int(&self, k: i64) -> Fraction {
        Fraction::new(self.num * k, self.den).expect("nonzero denominator")
    }

    pub fn recip(&self) -> Result<Fraction, ArithError> {
        Fraction::new(self.den, self.num)
    }
}

impl TryFrom<(i64, i64)> for Fraction {
    type Error = ArithError;
    fn try_from((n, d): (i64, i64)) -> Result<Self, ArithError> {
        Fraction::new(n, d)
    }
}

impl From<Fraction> for (i64, i64) {
    fn from(f: Fraction) -> Self {
        (f.num, f.den)
    }
}

impl Ord for Fraction {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.num as i128 * other.den as i128).cmp(&(other.num as i128 * self.den as i128))
    }
}

impl PartialOrd for Fraction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

/// Terms `[a0; a1, ..., am]` with `ai > 0` for `i >= 1` and `am > 1` when `m >= 1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContinuedFraction {
    pub terms: Vec<i64>,
}

impl ContinuedFraction {
    pub fn evaluate(&self) -> Fraction {
        let mut iter = self.terms.iter().rev();
        let mut acc = Fraction::integer(*iter.next().expect("at least one term"));
        for &a in iter {
            acc = Fraction::integer(a).add(&acc.recip().expect("partial quotient is nonzero"));
        }
        acc
    }
}

pub fn continued_fraction(x: Fraction) -> ContinuedFraction {
    let (mut n, mut d) = (x.num, x.den);
    let mut terms = Vec::new();
    while d != 0 {
        let a = n.div_euclid(d);
        terms.push(a);
        let r = n - a * d;
        n = d;
        d = r;
    }
    ContinuedFraction { terms }
}

/// All reduced `x/y` with `0 <= x <= y <= n` in increasing order.
pub fn farey_sequence(n: i64) -> Vec<Fraction> {
    assert!(n >= 1, "Farey order must be positive");
    let (mut a, mut b, mut c, mut d) = (0, 1, 1, n);
    let mut out = vec![Fraction { num: 0, den: 1 }];
    while c <= n {
        let k = (n + b) / d;
        out.push(Fraction { num: c, den: d });
        let next = (c, d, k * c - a, k * d - b);
        (a, b, c, d) = next;
    }
    out
}

/// The inverse of `q` modulo `p` in `[0, p)`; zero when `p = 1`.
pub fn mod_inverse(q: i64, p: i64) -> Result<i64, ArithError> {
    if p <= 0 {
        return Err(ArithError::NonPositiveModulus(p));
    }
    let e = q.extended_gcd(&p);
    if e.gcd.abs() != 1 {
        return Err(ArithError::NotCoprime { q, p });
    }
    Ok((e.x * e.gcd).rem_euclid(p))
}

/// Least nonnegative residue of `a` modulo `m`.
pub fn modp(a: i64, m: i64) -> i64 {
    a.rem_euclid(m)
}

/// Integers `(x, y)` with `a x + b y = gcd(a, b) >= 0`.
pub fn bezout(a: i64, b: i64) -> (i64, i64, i64) {
    let e = a.extended_gcd(&b);
    if e.gcd < 0 {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

pub fn gcd(a: i64, b: i64) -> i64 {
    a.gcd(&b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn fr(n: i64, d: i64) -> Fraction {
        Fraction::new(n, d).unwrap()
    }

    #[test]
    fn fractions_normalize_sign_and_content() {
        assert_eq!(fr(4, -6), fr(-2, 3));
        assert_eq!(fr(-4, -6).num(), 2);
        assert_eq!(fr(0, -5), fr(0, 1));
        assert_eq!(Fraction::new(1, 0), Err(ArithError::ZeroDenominator));
        assert_eq!(fr(-7, 2).floor(), -4);
        assert_eq!(fr(-7, 2).ceil(), -3);
        assert_eq!(fr(5, 2).ceil(), 3);
    }

    #[test]
    fn continued_fraction_examples() {
        assert_eq!(continued_fraction(fr(2, 5)).terms, vec![0, 2, 2]);
        assert_eq!(continued_fraction(fr(7, 1)).terms, vec![7]);
        assert_eq!(continued_fraction(fr(1, 2)).terms, vec![0, 2]);
        assert_eq!(continued_fraction(fr(3, 5)).terms, vec![0, 1, 1, 2]);
    }

    #[test]
    fn farey_sequences_of_small_order() {
        let show = |n| farey_sequence(n).iter().map(|f| f.to_string()).collect::<Vec<_>>();
        assert_eq!(show(1), ["0/1", "1/1"]);
        assert_eq!(show(2), ["0/1", "1/2", "1/1"]);
        assert_eq!(show(3), ["0/1", "1/3", "1/2", "2/3", "1/1"]);
        assert_eq!(show(4), ["0/1", "1/4", "1/3", "1/2", "2/3", "3/4", "1/1"]);
    }

    #[test]
    fn farey_matches_brute_force() {
        for n in 1..=12 {
            let mut all: Vec<Fraction> = (1..=n).flat_map(|y| (0..=y).map(move |x| fr(x, y))).collect();
            all.sort();
            all.dedup();
            assert_eq!(farey_sequence(n), all);
        }
    }

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(3, 5), Ok(2));
        assert_eq!(mod_inverse(1, 7), Ok(1));
        assert_eq!(mod_inverse(2, 4), Err(ArithError::NotCoprime { q: 2, p: 4 }));
        assert_eq!(mod_inverse(5, 1), Ok(0));
        assert_eq!(mod_inverse(-2, 5), Ok(2));
    }

    proptest! {
        #[test]
        fn farey_neighbours_are_unimodular(n in 1i64..40) {
            let seq = farey_sequence(n);
            for w in seq.windows(2) {
                prop_assert!(w[0] < w[1]);
                prop_assert_eq!(w[0].den() * w[1].num() - w[0].num() * w[1].den(), 1);
            }
        }

        #[test]
        fn continued_fraction_round_trips(d in 1i64..=500, n in -2000i64..2000) {
            let x = fr(n, d);
            let cf = continued_fraction(x);
            prop_assert_eq!(cf.evaluate(), x);
            if cf.terms.len() > 1 {
                prop_assert!(cf.terms[1..].iter().all(|&a| a > 0));
                prop_assert!(*cf.terms.last().unwrap() > 1);
            }
        }

        #[test]
        fn mod_inverse_is_an_involution(p in 2i64..500, q in -1000i64..1000) {
            if gcd(p, q) != 1 {
                prop_assert!(mod_inverse(q, p).is_err());
                return Ok(());
            }
            let inv = mod_inverse(q, p).unwrap();
            prop_assert!((0..p).contains(&inv));
            prop_assert_eq!((q * inv).rem_euclid(p), 1);
            prop_assert_eq!(mod_inverse(inv, p).unwrap(), q.rem_euclid(p));
        }
    }
}

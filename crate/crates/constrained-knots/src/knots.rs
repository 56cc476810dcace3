//! Parameter types for constrained, (1,1) and simple knots, their conversions,
//! and the equivalence decision for constrained knots.

use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::arith::{gcd, mod_inverse};
use crate::twobridge::{two_bridge_equivalent, TwoBridge};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KnotError {
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("knots live in different lens spaces L({p1},{q1}) and L({p2},{q2})")]
    AmbientMismatch { p1: i64, q1: i64, p2: i64, q2: i64 },
}

/// `C(p, q, l, u, v)`, a constrained knot in `L(p, q')` with `q q' = 1 mod p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstrainedParams {
    p: i64,
    q: i64,
    l: i64,
    u: i64,
    v: i64,
}

/// Raw integers reduced into the parameter ranges; `p < 0` means `C(-p, -q, l, u, v)`.
pub fn validate_constrained(p: i64, q: i64, l: i64, u: i64, v: i64) -> Result<ConstrainedParams, KnotError> {
    let (p, q) = if p < 0 { (-p, -q) } else { (p, q) };
    if p == 0 {
        return Err(KnotError::InvalidParameters("p must be nonzero".into()));
    }
    if u < 1 || u % 2 == 0 {
        return Err(KnotError::InvalidParameters(format!(
            "u must be odd and positive, got {u}"
        )));
    }
    if gcd(p, q) != 1 {
        return Err(KnotError::InvalidParameters(format!("gcd({p}, {q}) != 1")));
    }
    if u > 1 && gcd(u, v) != 1 {
        return Err(KnotError::InvalidParameters(format!("gcd({u}, {v}) != 1")));
    }
    let v = if u == 1 { v.rem_euclid(2) } else { v.rem_euclid(u) };
    Ok(ConstrainedParams {
        p,
        q: q.rem_euclid(p),
        l: (l - 1).rem_euclid(p) + 1,
        u,
        v,
    })
}

impl ConstrainedParams {
    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn l(&self) -> i64 {
        self.l
    }

    pub fn u(&self) -> i64 {
        self.u
    }

    pub fn v(&self) -> i64 {
        self.v
    }

    pub fn tuple(&self) -> [i64; 5] {
        [self.p, self.q, self.l, self.u, self.v]
    }

    /// `q'` with `q q' = 1 mod p`; the knot lives in `L(p, q')`.
    pub fn q_prime(&self) -> i64 {
        mod_inverse(self.q, self.p).expect("validated parameters are coprime")
    }

    /// `k` in `[1, p]` with `k - 1 = (l - 1) q' mod p`.
    pub fn k(&self) -> i64 {
        ((self.l - 1) * self.q_prime()).rem_euclid(self.p) + 1
    }

    pub fn ambient(&self) -> (i64, i64) {
        (self.p, self.q_prime())
    }

    /// `0 <= 2v < u`, or one of the simple cases `(u, v) = (1, 0), (1, 1)`.
    pub fn is_mirror_normal(&self) -> bool {
        self.u == 1 || 2 * self.v < self.u
    }

    /// The mirror-normal representative and whether it is the mirror image.
    pub fn mirror_normal(&self) -> (ConstrainedParams, bool) {
        if self.is_mirror_normal() {
            (*self, false)
        } else {
            (mirror_constrained(*self), true)
        }
    }

    pub fn two_bridge(&self) -> TwoBridge {
        TwoBridge::new(self.u, self.v).expect("validated parameters")
    }

    /// `b(u - 2v, v mod (u - 2v))`, the family carried by classes `1..l-1`.
    pub fn partner_two_bridge(&self) -> TwoBridge {
        let u2 = self.u - 2 * self.v;
        if self.u == 1 || u2 <= 1 {
            return TwoBridge::new(1, 0).unwrap();
        }
        TwoBridge::new(u2, self.v % u2).expect("gcd(u - 2v, v) = gcd(u, v)")
    }

    /// `pu - 2v(l - 1)` for `u > 1`, and `p` for simple knots.
    pub fn total_rank(&self) -> i64 {
        if self.u == 1 {
            self.p
        } else {
            self.p * self.u - 2 * self.v * (self.l - 1)
        }
    }

    /// For `(u, v) = (1, 1)`, the equivalent tuple with `v = 0`.
    pub fn with_v_zero(&self) -> ConstrainedParams {
        if self.u == 1 && self.v == 1 {
            validate_constrained(self.p, self.q, self.l - 2 * self.q, 1, 0).unwrap()
        } else {
            *self
        }
    }
}

impl fmt::Display for ConstrainedParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C({},{},{},{},{})", self.p, self.q, self.l, self.u, self.v)
    }
}

impl Serialize for ConstrainedParams {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.tuple().serialize(s)
    }
}

impl<'de> Deserialize<'de> for ConstrainedParams {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let [p, q, l, u, v] = <[i64; 5]>::deserialize(d)?;
        validate_constrained(p, q, l, u, v).map_err(serde::de::Error::custom)
    }
}

pub fn mirror_constrained(k: ConstrainedParams) -> ConstrainedParams {
    let v = if k.u == 1 { 1 - k.v } else { -k.v };
    validate_constrained(k.p, -k.q, k.l, k.u, v).expect("mirror of a valid tuple is valid")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Chirality {
    #[serde(rename = "+")]
    Plus,
    #[serde(rename = "-")]
    Minus,
}

impl Chirality {
    pub fn flip(self) -> Self {
        match self {
            Chirality::Plus => Chirality::Minus,
            Chirality::Minus => Chirality::Plus,
        }
    }
}

/// `W(p, q, r, s)±`, a (1,1) diagram with `p` intersections, `q` rainbows,
/// `r` middle stripes and twist `s`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OneOneParams {
    pub p: i64,
    pub q: i64,
    pub r: i64,
    pub s: i64,
    pub chirality: Chirality,
}

impl OneOneParams {
    pub fn new(p: i64, q: i64, r: i64, s: i64, chirality: Chirality) -> Result<Self, KnotError> {
        if p < 1 || q < 0 || r < 0 || 2 * q + r > p {
            return Err(KnotError::InvalidParameters(format!(
                "W({p},{q},{r},{s}) needs 2q + r <= p"
            )));
        }
        Ok(OneOneParams {
            p,
            q,
            r,
            s: s.rem_euclid(p),
            chirality,
        })
    }

    pub fn is_valid(&self) -> bool {
        self.p >= 1 && self.q >= 0 && self.r >= 0 && 2 * self.q + self.r <= self.p && (0..self.p).contains(&self.s)
    }
}

impl fmt::Display for OneOneParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = match self.chirality {
            Chirality::Plus => '+',
            Chirality::Minus => '-',
        };
        write!(f, "W({},{},{},{}){c}", self.p, self.q, self.r, self.s)
    }
}

impl Serialize for OneOneParams {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ("W", self.p, self.q, self.r, self.s, self.chirality).serialize(s)
    }
}

/// The (1,1) diagram of a constrained knot, taken on the mirror-normal representative.
pub fn constrained_to_11(k: ConstrainedParams) -> OneOneParams {
    let k = k.mirror_normal().0.with_v_zero();
    let (p, l, u, v) = (k.p, k.l, k.u, k.v);
    let qp = k.q_prime();
    let kk = k.k();
    let qi = |i: i64| (i * qp).rem_euclid(p);
    let n1 = (0..l).filter(|&i| qi(i) < kk).count() as i64;
    let n2 = (0..l).filter(|&i| (1..qp).contains(&qi(i))).count() as i64;
    OneOneParams::new(
        p * u - 2 * v * (l - 1),
        v,
        u * kk - 2 * v * n1,
        u * qp - 2 * v * n2,
        Chirality::Plus,
    )
    .expect("counts from a standard diagram satisfy the (1,1) ranges")
}

/// Relations among (1,1) diagrams.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WRelations {
    /// Diagram of the mirror image.
    pub mirror: OneOneParams,
    /// Same knot, with the lower and middle bands exchanged.
    pub alt: OneOneParams,
}

pub fn w_relations(w: OneOneParams) -> WRelations {
    let (p, q, r, s) = (w.p, w.q, w.r, w.s);
    let r2 = p - 2 * q - r;
    let (ms, alt_s) = match w.chirality {
        Chirality::Plus => (p - s + 2 * q, s - 2 * q),
        Chirality::Minus => (p - s - 2 * q, s + 2 * q),
    };
    WRelations {
        mirror: OneOneParams::new(p, q, r2, ms, w.chirality).unwrap(),
        alt: OneOneParams::new(p, q, r2, alt_s, w.chirality.flip()).unwrap(),
    }
}

/// `S(p, q, k)`, the simple knot in `L(p, q)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SimpleParams {
    pub p: i64,
    pub q: i64,
    pub k: i64,
}

impl SimpleParams {
    pub fn new(p: i64, q: i64, k: i64) -> Result<Self, KnotError> {
        if p < 1 || gcd(p, q) != 1 {
            return Err(KnotError::InvalidParameters(format!(
                "S({p},{q},{k}) needs p > 0 and gcd(p, q) = 1"
            )));
        }
        Ok(SimpleParams {
            p,
            q: q.rem_euclid(p),
            k: k.rem_euclid(p),
        })
    }

    fn orbit(&self) -> Vec<(i64, i64)> {
        let p = self.p;
        let qi = mod_inverse(self.q, p).unwrap();
        let mut out = Vec::new();
        for (q, k) in [(self.q, self.k), (qi, self.k * qi)] {
            for sign in [1, -1] {
                out.push((q.rem_euclid(p), (sign * k).rem_euclid(p)));
            }
        }
        out
    }
}

impl fmt::Display for SimpleParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "S({},{},{})", self.p, self.q, self.k)
    }
}

impl Serialize for SimpleParams {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        ("S", self.p, self.q, self.k).serialize(s)
    }
}

pub fn simple_knot_of(k: ConstrainedParams) -> Result<SimpleParams, KnotError> {
    if k.u != 1 {
        return Err(KnotError::InvalidParameters(format!(
            "{k} is not a simple knot (u != 1)"
        )));
    }
    let qp = k.q_prime();
    let shift = if k.v == 0 { 1 } else { -1 };
    SimpleParams::new(k.p, qp, (k.l - 1) * qp + shift)
}

pub fn simple_equivalent(s1: SimpleParams, s2: SimpleParams) -> bool {
    s1.p == s2.p && s1.orbit().contains(&(s2.q, s2.k))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum SpecialClass {
    Unknot,
    Core,
    Composite {
        two_bridge: TwoBridge,
        core: ConstrainedParams,
    },
    TwoBridgeInS3(TwoBridge),
    Generic,
}

pub fn classify_special(k: ConstrainedParams) -> SpecialClass {
    if k.u == 1 {
        let s = simple_knot_of(k).unwrap();
        let p = s.p;
        if s.k == 0 {
            return SpecialClass::Unknot;
        }
        let cores = [1, -1, s.q, -s.q].map(|x| x.rem_euclid(p));
        if cores.contains(&s.k) {
            return SpecialClass::Core;
        }
    }
    if k.p == 1 {
        return SpecialClass::TwoBridgeInS3(k.two_bridge());
    }
    if k.l == 1 && k.u > 1 {
        return SpecialClass::Composite {
            two_bridge: k.mirror_normal().0.two_bridge(),
            core: validate_constrained(k.p, k.q, 1, 1, 0).unwrap(),
        };
    }
    SpecialClass::Generic
}

/// Region sizes met along `α` in the order `D_1, D_{1+q}, D_{1+2q}, ...`.
pub fn spinc_blocks(k: ConstrainedParams) -> Vec<i64> {
    let k = k.mirror_normal().0;
    (0..k.p)
        .map(|i| {
            let region = (i * k.q).rem_euclid(k.p) + 1;
            if k.u == 1 {
                1
            } else if region < k.l {
                k.u - 2 * k.v
            } else {
                k.u
            }
        })
        .collect()
}

pub fn is_lspace_knot(k: ConstrainedParams) -> bool {
    k.u == 1 || k.v == 1 || k.v == k.u - 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Equivalent,
    NotEquivalent,
    Indeterminate(String),
}

/// Equivalence of unoriented constrained knots in the same unoriented lens space.
pub fn decide_equivalence(k1: ConstrainedParams, k2: ConstrainedParams) -> Result<Verdict, KnotError> {
    let (p1, q1) = k1.ambient();
    let (p2, q2) = k2.ambient();
    let same_space = p1 == p2 && {
        let inv = mod_inverse(q2, p2).unwrap();
        [q2, -q2, inv, -inv].iter().any(|x| x.rem_euclid(p1) == q1)
    };
    if !same_space {
        return Err(KnotError::AmbientMismatch { p1, q1, p2, q2 });
    }
    let (n1, m1) = k1.mirror_normal();
    let (n2, m2) = k2.mirror_normal();
    if n1 == n2 && m1 == m2 {
        return Ok(Verdict::Equivalent);
    }
    let mut ranks1 = spinc_blocks(n1);
    let mut ranks2 = spinc_blocks(n2);
    ranks1.sort_unstable();
    ranks2.sort_unstable();
    if ranks1 != ranks2 {
        return Ok(Verdict::NotEquivalent);
    }
    if m1 != m2 {
        return Ok(Verdict::Indeterminate(
            "exactly one knot needed mirror normalization".into(),
        ));
    }
    let p = n1.p;
    if n1.u == 1 && n2.u == 1 {
        let same = simple_equivalent(simple_knot_of(n1)?, simple_knot_of(n2)?);
        return Ok(if same {
            Verdict::Equivalent
        } else {
            Verdict::NotEquivalent
        });
    }
    if p == 1 {
        let same = two_bridge_equivalent(n1.two_bridge(), n2.two_bridge());
        return Ok(if same {
            Verdict::Equivalent
        } else {
            Verdict::NotEquivalent
        });
    }
    if n1.l == 1 && n2.l == 1 {
        if !two_bridge_equivalent(n1.two_bridge(), n2.two_bridge()) {
            return Ok(Verdict::NotEquivalent);
        }
        if n1.q == n2.q {
            return Ok(Verdict::Equivalent);
        }
        return Ok(Verdict::Indeterminate(
            "core summands lie in different Heegaard solid tori descriptions".into(),
        ));
    }
    let in_range = |k: &ConstrainedParams| k.l >= 2 && k.u > 2 * k.v && k.v > 0;
    if in_range(&n1) && in_range(&n2) {
        let same = (n1.q * n2.q).rem_euclid(p) == 1 % p
            && n1.l == n2.l
            && (n1.l == 2 || n1.l == p)
            && (n1.u, n1.v) == (n2.u, n2.v);
        return Ok(if same {
            Verdict::Equivalent
        } else {
            Verdict::NotEquivalent
        });
    }
    Ok(Verdict::Indeterminate(
        "parameters of different shapes with equal Floer ranks".into(),
    ))
}

/// Every mirror-normal tuple with `p <= pmax` and `u <= umax`.
pub fn mirror_normal_sweep(pmax: i64, umax: i64) -> Vec<ConstrainedParams> {
    let mut out = Vec::new();
    for p in 1..=pmax {
        for q in 0..p {
            if gcd(p, q) != 1 {
                continue;
            }
            for l in 1..=p {
                for u in (1..=umax).step_by(2) {
                    let vs: Vec<i64> = if u == 1 {
                        vec![0, 1]
                    } else {
                        (1..u).filter(|&v| 2 * v < u && gcd(u, v) == 1).collect()
                    };
                    for v in vs {
                        out.push(ConstrainedParams { p, q, l, u, v });
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn c(p: i64, q: i64, l: i64, u: i64, v: i64) -> ConstrainedParams {
        validate_constrained(p, q, l, u, v).unwrap()
    }

    #[test]
    fn validation() {
        assert_eq!(c(5, 3, 2, 3, 1).tuple(), [5, 3, 2, 3, 1]);
        assert!(c(5, 3, 2, 3, 1).is_mirror_normal());
        assert!(matches!(
            validate_constrained(5, 3, 2, 4, 1),
            Err(KnotError::InvalidParameters(_))
        ));
        assert_eq!(c(5, -2, 7, 3, 1), c(5, 3, 2, 3, 1));
        assert_eq!(c(-5, 2, 2, 1, 0), c(5, 3, 2, 1, 0));
        assert!(validate_constrained(6, 3, 1, 3, 1).is_err());
        assert!(validate_constrained(5, 3, 1, 9, 3).is_err());
    }

    #[test]
    fn mirrors() {
        assert_eq!(mirror_constrained(c(5, 3, 2, 3, 1)), c(5, 2, 2, 3, 2));
        assert_eq!(mirror_constrained(c(7, 3, 4, 1, 0)), c(7, 4, 4, 1, 1));
        let k = c(7, 2, 3, 5, 2);
        assert_eq!(mirror_constrained(mirror_constrained(k)), k);
        assert_eq!(c(5, 2, 2, 3, 2).mirror_normal(), (c(5, 3, 2, 3, 1), true));
    }

    #[test]
    fn one_one_conversion() {
        let w = constrained_to_11(c(5, 3, 2, 3, 1));
        assert_eq!((w.p, w.q, w.r, w.s), (13, 1, 5, 6));
        for (u, v) in [(3, 1), (5, 2), (7, 3)] {
            let w = constrained_to_11(c(1, 0, 1, u, v));
            assert_eq!((w.p, w.q, w.r, w.s), (u, v, u - 2 * v, 0));
        }
        let k = c(7, 3, 4, 1, 0);
        let w = constrained_to_11(k);
        assert_eq!((w.p, w.q, w.r, w.s), (7, 0, k.k(), k.q_prime()));
    }

    #[test]
    fn w_diagram_relations() {
        let w = OneOneParams::new(5, 2, 1, 3, Chirality::Plus).unwrap();
        let rel = w_relations(w);
        assert_eq!(rel.mirror, OneOneParams::new(5, 2, 0, 1, Chirality::Plus).unwrap());
        assert_eq!(rel.alt, OneOneParams::new(5, 2, 0, 4, Chirality::Minus).unwrap());
        let z = OneOneParams::new(6, 0, 2, 5, Chirality::Plus).unwrap();
        assert_eq!(w_relations(z).mirror.q, 0);
        assert_eq!(w_relations(rel.alt).alt, w);
    }

    #[test]
    fn simple_knots() {
        assert_eq!(
            simple_knot_of(c(5, 3, 2, 1, 0)).unwrap(),
            SimpleParams::new(5, 2, 3).unwrap()
        );
        assert_eq!(simple_knot_of(c(5, 3, 3, 1, 0)).unwrap().k, 0);
        for (p, q) in [(5, 2), (7, 3), (9, 4)] {
            let s = simple_knot_of(c(p, q, 1, 1, 0)).unwrap();
            assert_eq!((s.q, s.k), (mod_inverse(q, p).unwrap(), 1));
        }
        assert!(simple_knot_of(c(5, 3, 2, 3, 1)).is_err());
        let s = |p, q, k| SimpleParams::new(p, q, k).unwrap();
        assert!(simple_equivalent(s(5, 2, 3), s(5, 3, 4)));
        assert!(simple_equivalent(s(5, 2, 3), s(5, 2, 2)));
        assert!(!simple_equivalent(s(5, 2, 3), s(5, 2, 1)));
        assert!(simple_equivalent(s(7, 3, 0), s(7, 5, 0)));
    }

    #[test]
    fn special_classes() {
        assert_eq!(classify_special(c(5, 3, 3, 1, 0)), SpecialClass::Unknot);
        assert_eq!(classify_special(c(5, 3, 1, 1, 0)), SpecialClass::Core);
        assert_eq!(
            classify_special(c(7, 2, 1, 5, 2)),
            SpecialClass::Composite {
                two_bridge: TwoBridge::new(5, 2).unwrap(),
                core: c(7, 2, 1, 1, 0),
            }
        );
        assert_eq!(
            classify_special(c(1, 0, 1, 5, 2)),
            SpecialClass::TwoBridgeInS3(TwoBridge::new(5, 2).unwrap())
        );
        assert_eq!(classify_special(c(5, 3, 2, 3, 1)), SpecialClass::Generic);
    }

    #[test]
    fn blocks() {
        let b = spinc_blocks(c(5, 3, 2, 3, 1));
        assert_eq!(b, vec![1, 3, 3, 3, 3]);
        let sums: Vec<i64> = b
            .iter()
            .scan(0, |acc, x| {
                *acc += x;
                Some(*acc)
            })
            .collect();
        assert_eq!(sums, vec![1, 4, 7, 10, 13]);
        assert_eq!(spinc_blocks(c(6, 5, 4, 1, 0)), vec![1; 6]);
    }

    #[test]
    fn lspace_detection() {
        assert!(is_lspace_knot(c(5, 3, 2, 3, 1)));
        assert!(!is_lspace_knot(c(1, 0, 1, 5, 2)));
        assert!(is_lspace_knot(c(7, 2, 5, 1, 0)));
        assert!(is_lspace_knot(c(7, 2, 5, 9, 8)));
    }

    #[test]
    fn equivalence_examples() {
        assert_eq!(
            decide_equivalence(c(7, 2, 2, 3, 1), c(7, 4, 2, 3, 1)).unwrap(),
            Verdict::Equivalent
        );
        assert_eq!(
            decide_equivalence(c(5, 2, 3, 3, 1), c(5, 3, 3, 3, 1)).unwrap(),
            Verdict::NotEquivalent
        );
        assert_eq!(
            decide_equivalence(c(5, 3, 2, 3, 1), c(5, 3, 2, 3, 1)).unwrap(),
            Verdict::Equivalent
        );
        assert!(matches!(
            decide_equivalence(c(8, 1, 2, 3, 1), c(8, 3, 2, 3, 1)),
            Err(KnotError::AmbientMismatch { .. })
        ));
        assert_eq!(
            decide_equivalence(c(7, 2, 1, 11, 3), c(7, 2, 1, 11, 4)).unwrap(),
            Verdict::Equivalent
        );
    }

    #[test]
    fn sweep_invariants() {
        for k in mirror_normal_sweep(12, 9) {
            let blocks = spinc_blocks(k);
            assert!(blocks.iter().all(|b| b % 2 == 1 && *b > 0), "{k}");
            assert_eq!(blocks.iter().sum::<i64>(), k.total_rank(), "{k}");
            assert_eq!(constrained_to_11(k).p, k.total_rank(), "{k}");
            if k.u > 1 {
                let small = blocks.iter().filter(|&&b| b == k.u - 2 * k.v).count() as i64;
                assert_eq!(small, if k.u - 2 * k.v == k.u { k.p } else { k.l - 1 }, "{k}");
            }
            assert!(constrained_to_11(k).is_valid(), "{k}");
            let m = mirror_constrained(k);
            assert_eq!(is_lspace_knot(m), is_lspace_knot(k));
            let mut mb = spinc_blocks(m);
            let mut kb = blocks.clone();
            mb.sort_unstable();
            kb.sort_unstable();
            assert_eq!(mb, kb, "{k}");
        }
    }

    fn arb_knot() -> impl Strategy<Value = ConstrainedParams> {
        (1i64..10, 0i64..10, 1i64..10, 0i64..4, 0i64..9).prop_filter_map("valid tuple", |(p, q, l, h, v)| {
            validate_constrained(p, q, l, 2 * h + 1, v).ok()
        })
    }

    proptest! {
        #[test]
        fn decide_equivalence_is_reflexive_and_symmetric(a in arb_knot(), b in arb_knot()) {
            prop_assert_eq!(decide_equivalence(a, a).unwrap(), Verdict::Equivalent);
            match (decide_equivalence(a, b), decide_equivalence(b, a)) {
                (Ok(x), Ok(y)) => prop_assert_eq!(x, y),
                (Err(_), Err(_)) => {}
                (x, y) => prop_assert!(false, "asymmetric: {:?} vs {:?}", x, y),
            }
        }
    }
}

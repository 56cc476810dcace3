//! Dehn-surgery constructions: magic-link fillings and 1-bridge braids.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::arith::{bezout, farey_sequence, gcd, mod_inverse, Fraction};
use crate::knots::{mirror_constrained, validate_constrained, ConstrainedParams, KnotError, SimpleParams};
use crate::polynomials::LaurentPoly2;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("surgery yields S^1 x S^2, not a lens space")]
    NotLensSpace,
    #[error("unsupported strand index or parameters: {0}")]
    OutOfRange(String),
    #[error("no classification row applies to {0}")]
    UnknownCase(String),
    #[error("{0} is not equivalent to a 1-bridge braid by this construction (v must be ±1 mod u)")]
    NotOneBridgeEligible(String),
    #[error("invalid slope: {0}")]
    InvalidSlope(String),
    #[error(transparent)]
    Knot(#[from] KnotError),
}

/// A surgery slope `p/q` with `p ≥ 0`, `gcd(p, q) = 1`; `1/0` is allowed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Deserialize)]
#[serde(try_from = "(i64, i64)")]
pub struct Slope {
    pub p: i64,
    pub q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Result<Self, SurgeryError> {
        if gcd(p, q) != 1 {
            return Err(SurgeryError::InvalidSlope(format!("{p}/{q} is not reduced")));
        }
        let (p, q) = if p < 0 || (p == 0 && q < 0) { (-p, -q) } else { (p, q) };
        Ok(Slope { p, q })
    }

    pub fn negated(&self) -> Slope {
        Slope::new(self.p, -self.q).unwrap()
    }
}

impl TryFrom<(i64, i64)> for Slope {
    type Error = SurgeryError;
    fn try_from((p, q): (i64, i64)) -> Result<Self, Self::Error> {
        Slope::new(p, q)
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

impl FromStr for Slope {
    type Err = SurgeryError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SurgeryError::InvalidSlope(s.to_string());
        let (a, b) = s.split_once('/').unwrap_or((s, "1"));
        let p = a.trim().parse().map_err(|_| bad())?;
        let q = b.trim().parse().map_err(|_| bad())?;
        Slope::new(p, q)
    }
}

impl Serialize for Slope {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Surgery on the two unknotted components of the magic link over `b(u, v)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MagicSurgery {
    pub u: i64,
    pub v: i64,
    pub slope1: Slope,
    pub slope2: Slope,
}

impl MagicSurgery {
    pub fn new(u: i64, v: i64, slope1: Slope, slope2: Slope) -> Result<Self, SurgeryError> {
        let ok = (u == 1 && (v == 0 || v == 1)) || (u > 1 && u % 2 == 1 && 0 < v && v < u && gcd(u, v) == 1);
        if !ok {
            return Err(SurgeryError::OutOfRange(format!("two-bridge parameters ({u}, {v})")));
        }
        Ok(MagicSurgery { u, v, slope1, slope2 })
    }

    pub fn swapped(&self) -> Self {
        MagicSurgery {
            slope1: self.slope2,
            slope2: self.slope1,
            ..*self
        }
    }

    /// The reflected surgery `(u, u - v, p1/-q1, p2/-q2)`.
    pub fn mirrored(&self) -> Self {
        let v = if self.u == 1 { 1 - self.v } else { self.u - self.v };
        MagicSurgery {
            u: self.u,
            v,
            slope1: self.slope1.negated(),
            slope2: self.slope2.negated(),
        }
    }

    fn is_normal(&self) -> bool {
        (self.u, self.v) == (1, 0) || 2 * self.v < self.u && self.u > 1
    }
}

impl fmt::Display for MagicSurgery {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "M({},{},{},{})", self.u, self.v, self.slope1, self.slope2)
    }
}

/// Lens space `L(p, q)` produced by the two surgeries, `0 ≤ q < p`.
pub fn lens_from_magic(m: &MagicSurgery) -> Result<(i64, i64), SurgeryError> {
    let (p1, q1, p2, q2) = (m.slope1.p, m.slope1.q, m.slope2.p, m.slope2.q);
    let p = p1 * p2 - q1 * q2;
    if p == 0 {
        return Err(SurgeryError::NotLensSpace);
    }
    // p2 q2' - q2 p2' = -1 from p2 x + q2 y = 1 with q2' = -x, p2' = y.
    let (_, x, y) = bezout(p2, q2);
    let (q2p, p2p) = (-x, y);
    let q = p1 * p2p - q1 * q2p;
    Ok((p.abs(), (q * p.signum()).rem_euclid(p.abs())))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum StrandIndex {
    #[serde(rename = "1")]
    Plus1,
    #[serde(rename = "0")]
    Zero,
    #[serde(rename = "-1")]
    Minus1,
    #[serde(rename = "-2")]
    Minus2,
    #[serde(rename = "*")]
    Star,
    #[serde(rename = "#")]
    Sharp,
}

impl FromStr for StrandIndex {
    type Err = SurgeryError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "1" => StrandIndex::Plus1,
            "0" => StrandIndex::Zero,
            "-1" => StrandIndex::Minus1,
            "-2" => StrandIndex::Minus2,
            "*" => StrandIndex::Star,
            "#" => StrandIndex::Sharp,
            other => return Err(SurgeryError::OutOfRange(format!("strand index {other}"))),
        })
    }
}

/// Two-bridge parameters `(U, V)` of the knot read off a straightened strand.
/// `V` is reduced into `[0, U)`; when `U = 1` it is `0` except for `(3, 1, -2)`.
pub fn uv_shift(u: i64, v: i64, i: StrandIndex) -> Result<(i64, i64), SurgeryError> {
    let ok = (u, v) == (1, 0) || (u % 2 == 1 && 0 < 2 * v && 2 * v < u && gcd(u, v) == 1);
    if !ok {
        return Err(SurgeryError::OutOfRange(format!(
            "({u}, {v}) is not a normalized two-bridge pair"
        )));
    }
    if (u, v, i) == (3, 1, StrandIndex::Minus2) {
        return Ok((1, 1));
    }
    let (big_u, big_v) = match i {
        StrandIndex::Plus1 => (u + 2 * v, v),
        StrandIndex::Zero => (u, v),
        StrandIndex::Minus1 => (u - 2 * v, v),
        StrandIndex::Minus2 => ((u - 4 * v).abs(), v * (u - 4 * v).signum()),
        StrandIndex::Star => (3 * u - 4 * v, u - v),
        StrandIndex::Sharp => (3 * u - 2 * v, 2 * u - v),
    };
    if big_u == 1 {
        return Ok((1, 0));
    }
    Ok((big_u, big_v.rem_euclid(big_u)))
}

/// Rows of the magic-link classification table.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum MagicCase {
    I,
    II,
    IIPrime,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum MagicOutcome {
    /// A single constrained knot.
    Knot(ConstrainedParams),
    /// Rows whose proof is non-constructive: only `p`, the candidates for `q`
    /// and for `l - 1` are determined.
    Partial {
        p: i64,
        q_candidates: Vec<i64>,
        l_minus_one: Vec<i64>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MagicClassification {
    pub case: MagicCase,
    /// Slopes were exchanged before a row matched.
    pub swapped: bool,
    /// The input was reflected to reach normalized two-bridge parameters.
    pub mirrored: bool,
    pub outcome: MagicOutcome,
}

fn q_candidates(p: i64, q0: i64) -> Vec<i64> {
    let mut out = vec![q0.rem_euclid(p), (-q0).rem_euclid(p)];
    if let Ok(inv) = mod_inverse(q0, p) {
        out.push(inv);
        out.push((-inv).rem_euclid(p));
    }
    out.sort_unstable();
    out.dedup();
    out
}

fn classify_rows(m: &MagicSurgery) -> Result<Option<(MagicCase, MagicOutcome)>, SurgeryError> {
    let (u0, v0) = (m.u, m.v);
    let (p1, q1, p2, q2) = (m.slope1.p, m.slope1.q, m.slope2.p, m.slope2.q);
    let p = p1 * p2 - q1 * q2;
    if p == 0 {
        return Err(SurgeryError::NotLensSpace);
    }
    let uv = |i| uv_shift(u0, v0, i);
    use StrandIndex::*;
    let (case, lm1, (u, v), q) = if p2 == 1 && q1 * q2 < 0 {
        (MagicCase::I, -q1 * q2, uv(Zero)?, q1)
    } else if p2 == 1 && q2 > 1 && q1 > p1 && p1 > 0 {
        let (a, b) = (uv(Minus1)?, uv(Minus2)?);
        if a.0 >= b.0 {
            (MagicCase::II, p1, a, q1)
        } else {
            (MagicCase::IIPrime, q1 * q2 - 2 * p1, b, q1)
        }
    } else if p2 == 1 && q2 < -1 && -q1 > p1 && p1 > 0 {
        (MagicCase::III, q1 * q2 - 2 * p1, uv(Star)?, q1)
    } else if (p2, q2) == (1, 0) {
        (MagicCase::IV, 0, uv(Zero)?, q1)
    } else if p1 > 1 && q1.abs() == 1 && q1 * q2 < 0 && p2 > 0 {
        (MagicCase::V, -q1 * q2, uv(Zero)?, q1 * p2)
    } else if p1 > 1 && q1 == 1 && p2 > q2 && q2 > 0 {
        (MagicCase::VI, p1 * p2 - 2 * q2, uv(Plus1)?, q1 * p2)
    } else if p1 > 1 && q1 == -1 && p2 > -q2 && -q2 > 0 {
        (MagicCase::VII, p1 * p2 + 2 * q2, uv(Sharp)?, q1 * p2)
    } else if (p1, q1) == (0, 1) {
        (MagicCase::VIII, 0, uv(Minus1)?, q1 * p2)
    } else if (p2, q2) == (1, 1) && q1 > 0 && (p1, q1) != (1, 1) || (p2, q2) == (1, -1) && q1 < 0 && (p1, q1) != (1, -1)
    {
        let case = if q2 == 1 { MagicCase::IX } else { MagicCase::X };
        let (pp, q0) = lens_from_magic(m)?;
        let mut l = vec![q1.rem_euclid(pp), (-q1).rem_euclid(pp)];
        l.sort_unstable();
        l.dedup();
        return Ok(Some((
            case,
            MagicOutcome::Partial {
                p: pp,
                q_candidates: q_candidates(pp, q0),
                l_minus_one: l,
            },
        )));
    } else {
        return Ok(None);
    };
    let k = validate_constrained(p, q, lm1 + 1, u, v)?;
    Ok(Some((case, MagicOutcome::Knot(k))))
}

/// Identify the knot left by surgery on the two unknotted magic-link components.
pub fn magic_classify(m: &MagicSurgery) -> Result<MagicClassification, SurgeryError> {
    if !m.is_normal() {
        let mut c = magic_classify(&m.mirrored())?;
        c.mirrored = !c.mirrored;
        if let MagicOutcome::Knot(k) = c.outcome {
            c.outcome = MagicOutcome::Knot(mirror_constrained(k));
        }
        return Ok(c);
    }
    for (swapped, mm) in [(false, *m), (true, m.swapped())] {
        if let Some((case, outcome)) = classify_rows(&mm)? {
            return Ok(MagicClassification {
                case,
                swapped,
                mirrored: false,
                outcome,
            });
        }
    }
    Err(SurgeryError::UnknownCase(m.to_string()))
}

/// Admissible values of `l - 1` for knots in `L(p, q)` from each table row.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LChoices {
    /// `±nq` with `nq ∈ [0, p)`.
    pub multiples_of_q: Vec<i64>,
    /// `±n(p - q)` with `n(p - q) ∈ [0, p)`.
    pub multiples_of_complement: Vec<i64>,
    /// `⌈p/q⌉q - p`.
    pub ceiling: i64,
    /// `2p - ⌈p/q⌉q`.
    pub ceiling_prime: i64,
    /// `2p - ⌈p/(p-q)⌉(p - q)`.
    pub complement_ceiling: i64,
}

pub fn magic_l_choices(p: i64, q: i64) -> Result<LChoices, SurgeryError> {
    if !(p > q && q > 0) || gcd(p, q) != 1 {
        return Err(SurgeryError::OutOfRange(format!(
            "need p > q > 0 coprime, got ({p}, {q})"
        )));
    }
    let multiples = |x: i64| {
        let mut out: Vec<i64> = (0..)
            .map(|n| n * x)
            .take_while(|&nx| nx < p)
            .flat_map(|nx| [nx, (-nx).rem_euclid(p)])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    };
    let ceil = |a: i64, b: i64| -(-a).div_euclid(b);
    Ok(LChoices {
        multiples_of_q: multiples(q),
        multiples_of_complement: multiples(p - q),
        ceiling: ceil(p, q) * q - p,
        ceiling_prime: 2 * p - ceil(p, q) * q,
        complement_ceiling: 2 * p - ceil(p, p - q) * (p - q),
    })
}

/// A 1-bridge braid `B(w, s)` with inverse slope `s = n/d ∈ (0, 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct BridgeBraid {
    pub w: i64,
    pub slope: Fraction,
    /// Bridge width.
    pub b: i64,
    /// Twist number.
    pub t: i64,
}

impl BridgeBraid {
    fn residues(&self) -> Vec<i64> {
        let (n, d) = (self.slope.num(), self.slope.den());
        (0..=self.w).map(|i| (n * i).rem_euclid(d)).collect()
    }

    /// `θ_j = 1` iff `n_j < n_w`, for `j = 1..w-1`.
    pub fn thetas(&self) -> Vec<i64> {
        let r = self.residues();
        let w = self.w as usize;
        (1..w).map(|j| i64::from(r[j] < r[w])).collect()
    }
}

impl fmt::Display for BridgeBraid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "B({},{},{})", self.w, self.b, self.t)
    }
}

pub fn braid_normalize(w: i64, slope: Fraction) -> Result<BridgeBraid, SurgeryError> {
    if w < 1 {
        return Err(SurgeryError::OutOfRange(format!("winding number {w}")));
    }
    if slope.num() <= 0 || slope.num() >= slope.den() {
        return Err(SurgeryError::InvalidSlope(format!(
            "{}/{} is not in (0, 1)",
            slope.num(),
            slope.den()
        )));
    }
    let mut braid = BridgeBraid {
        w,
        slope,
        b: 0,
        t: slope.mul_int(w).floor(),
    };
    braid.b = braid.thetas().iter().sum();
    if braid.b == w - 1 && w > 1 {
        braid.b = 0;
        braid.t += 1;
    }
    Ok(braid)
}

/// `Σ_{i<w} s^i t^{θ_1 + … + θ_i}`.
pub fn braid_alexander(braid: &BridgeBraid) -> LaurentPoly2 {
    let th = braid.thetas();
    let mut acc = 0;
    let mut out = LaurentPoly2::zero();
    for i in 0..braid.w {
        if i > 0 {
            acc += th[(i - 1) as usize];
        }
        out.add_term((i, acc), 1);
    }
    out
}

/// The word `s t^{θ_1} s … s t^{θ_{w-1}} s` whose commutator with `t` presents
/// the braid complement in the solid torus.
pub fn braid_word(braid: &BridgeBraid) -> crate::groups::Word {
    use crate::groups::Word;
    let (s, t) = (Word::s(), Word::t());
    braid
        .thetas()
        .iter()
        .fold(s.clone(), |w, &th| w.mul(&t.pow(th)).mul(&s))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BraidClass {
    Torus,
    /// Cable braid along the endpoint with denominator `d`; `sign` is `-1` for `f_-`.
    Cable {
        d: i64,
        sign: i64,
    },
    Strict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SimpleInterval {
    pub f_minus: Fraction,
    pub f_plus: Fraction,
    pub class: BraidClass,
}

impl SimpleInterval {
    pub fn contains(&self, x: Fraction) -> bool {
        let le = |a: Fraction, b: Fraction| a.num() * b.den() <= b.num() * a.den();
        le(self.f_minus, x) && le(x, self.f_plus)
    }
}

/// Consecutive terms of `F_{w-1}` around the slope, with the braid type.
pub fn simple_interval(braid: &BridgeBraid) -> SimpleInterval {
    let s = braid.slope;
    let w = braid.w;
    let farey = farey_sequence((w - 1).max(1));
    let lt = |a: Fraction, b: Fraction| a.num() * b.den() < b.num() * a.den();
    let idx = farey.iter().position(|&f| !lt(f, s)).unwrap_or(farey.len() - 1);
    let (f_minus, f_plus) = if farey[idx] == s {
        (farey[idx.saturating_sub(1)], s)
    } else {
        (farey[idx - 1], farey[idx])
    };
    let (dm, dp) = (f_minus.den(), f_plus.den());
    let class = if s.den() == w || dm + dp == w {
        BraidClass::Torus
    } else if w % dm == 0 {
        BraidClass::Cable { d: dm, sign: -1 }
    } else if w % dp == 0 {
        BraidClass::Cable { d: dp, sign: 1 }
    } else {
        BraidClass::Strict
    };
    SimpleInterval { f_minus, f_plus, class }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BraidFilling {
    Simple(SimpleParams),
    NotSimple,
}

/// The knot obtained by `p/q` filling, simple iff `q/p` lies in the simple interval.
pub fn braid_fill(braid: &BridgeBraid, p: i64, q: i64) -> Result<BraidFilling, SurgeryError> {
    if !(0 < q && q < p) || gcd(p, q) != 1 {
        return Err(SurgeryError::OutOfRange(format!(
            "need 0 < q < p coprime, got ({p}, {q})"
        )));
    }
    let x = Fraction::new(q, p).unwrap();
    if simple_interval(braid).contains(x) {
        Ok(BraidFilling::Simple(SimpleParams::new(p, q, braid.w * q)?))
    } else {
        Ok(BraidFilling::NotSimple)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BraidPresentation {
    /// Lift index of the straightened arc.
    pub lift: i64,
    pub w: i64,
    /// Exact inverse slope; the arc's slope is its left limit.
    pub limit_slope: Fraction,
    /// Braid with a concrete slope just below the limit, reduced into `(0, 1)`.
    pub braid: BridgeBraid,
    /// The input was `v = u - 1` and was reflected to `v = 1`.
    pub mirrored: bool,
}

fn left_perturbation(s: Fraction, w: i64) -> Fraction {
    let n = 2 * w * s.den() + 1;
    Fraction::new(s.num() * n - 1, s.den() * n).unwrap()
}

/// A 1-bridge braid in the `α`-handlebody whose `q'/p` filling is `C(p, q, l, u, ±1)`.
pub fn constrained_to_braid(k: ConstrainedParams, lift: Option<i64>) -> Result<BraidPresentation, SurgeryError> {
    let (p, u) = (k.p(), k.u());
    if u < 3 || (k.v() != 1 && k.v() != u - 1) {
        return Err(SurgeryError::NotOneBridgeEligible(k.to_string()));
    }
    let (k, mirrored) = if k.v() == u - 1 {
        (validate_constrained(p, -k.q(), k.l(), u, 1)?, true)
    } else {
        (k, false)
    };
    let (q, l) = (k.q(), k.l());
    let qp = k.q_prime();
    let lambda = (q * qp - 1).div_euclid(p);
    let eps = i64::from(l + q > p);
    let first = (eps - (u - 1) / 2).max(0);
    let i = lift.unwrap_or_else(|| {
        if lambda + (first + (u - 1) / 2 - eps) * qp > 0 {
            first
        } else {
            first + 1
        }
    });
    let n0 = (u - 1) / 2 - eps + i;
    let w = p * (u - 1 - eps + i) + q - l + 1;
    if n0 < 0 || lambda + n0 * qp <= 0 {
        return Err(SurgeryError::OutOfRange(format!(
            "lift {i} does not straighten the arc of {k}"
        )));
    }
    let limit_slope = Fraction::new(lambda + n0 * qp, q + n0 * p).unwrap();
    let braid = braid_normalize(w, left_perturbation(limit_slope, w))?;
    Ok(BraidPresentation {
        lift: i,
        w,
        limit_slope,
        braid,
        mirrored,
    })
}

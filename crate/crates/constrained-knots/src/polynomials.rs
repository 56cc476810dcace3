//! Sparse Laurent polynomials and the group ring of `Z ⊕ Z/d` over half-lattice gradings.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PolyError {
    #[error("torsion orders differ: {0} vs {1}")]
    TorsionMismatch(i64, i64),
    #[error("division is not exact")]
    NonExactDivision,
    #[error("division by zero polynomial")]
    DivisionByZero,
}

/// Integer Laurent polynomial in one variable `t`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LaurentPoly1 {
    coeffs: BTreeMap<i64, i64>,
}

impl LaurentPoly1 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    pub fn monomial(exp: i64, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (i64, i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Coefficients listed from exponent `low` upward.
    pub fn from_dense(low: i64, coeffs: &[i64]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, &c)| (low + i as i64, c)))
    }

    pub fn add_term(&mut self, exp: i64, coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, exp: i64) -> i64 {
        self.coeffs.get(&exp).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    pub fn shift(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e + k, c)))
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e, c * k)))
    }

    /// `f(t^k)`.
    pub fn substitute_power(&self, k: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, c)| (e * k, c)))
    }

    /// `f(t^{-1})`.
    pub fn reverse(&self) -> Self {
        self.substitute_power(-1)
    }

    pub fn evaluate_at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    pub fn evaluate_at_minus_one(&self) -> i64 {
        self.terms()
            .map(|(e, c)| if e.rem_euclid(2) == 0 { c } else { -c })
            .sum()
    }

    /// Sum of absolute values of the coefficients.
    pub fn mass(&self) -> i64 {
        self.coeffs.values().map(|c| c.abs()).sum()
    }

    pub fn is_symmetric(&self) -> bool {
        *self == self.reverse()
    }

    /// Signs alternate along consecutive exponents and no gaps occur.
    pub fn is_alternating(&self) -> bool {
        let terms: Vec<_> = self.terms().collect();
        terms
            .windows(2)
            .all(|w| w[1].0 == w[0].0 + 1 && w[0].1.signum() == -w[1].1.signum())
    }

    /// The unit multiple `±t^k f` that is symmetric, if any.
    pub fn symmetric_representative(&self) -> Option<Self> {
        let (lo, hi) = (self.min_exp()?, self.max_exp()?);
        if (lo + hi).rem_euclid(2) != 0 {
            return None;
        }
        let g = self.shift(-(lo + hi) / 2);
        g.is_symmetric().then_some(g)
    }

    /// Stable representative of the class of `f` up to `±t^k`.
    pub fn canonical(&self) -> Self {
        let Some(hi) = self.max_exp() else {
            return Self::zero();
        };
        let sign = self.coeff(hi).signum();
        match self.symmetric_representative() {
            Some(g) => g.scale(sign),
            None => self.shift(-self.min_exp().unwrap()).scale(sign),
        }
    }

    pub fn equivalent_up_to_unit(&self, other: &Self) -> bool {
        self.lowered() == other.lowered()
    }

    fn lowered(&self) -> Self {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => self.shift(-lo).scale(self.coeff(hi).signum()),
            _ => Self::zero(),
        }
    }

    /// Exact quotient `self / divisor`, failing when a remainder is left.
    pub fn div_exact(&self, divisor: &Self) -> Result<Self, PolyError> {
        let (dlo, dhi) = match (divisor.min_exp(), divisor.max_exp()) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(PolyError::DivisionByZero),
        };
        let lead = divisor.coeff(dhi);
        let mut rem = self.clone();
        let mut quot = Self::zero();
        while let Some(hi) = rem.max_exp() {
            let lo = rem.min_exp().unwrap();
            if hi - lo < dhi - dlo {
                return Err(PolyError::NonExactDivision);
            }
            let c = rem.coeff(hi);
            if c % lead != 0 {
                return Err(PolyError::NonExactDivision);
            }
            let q = Self::monomial(hi - dhi, c / lead);
            rem = &rem - &(&q * divisor);
            quot = &quot + &q;
        }
        Ok(quot)
    }
}

impl Add for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn add(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn sub(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn mul(self, rhs: &LaurentPoly1) -> LaurentPoly1 {
        let mut out = LaurentPoly1::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl Neg for &LaurentPoly1 {
    type Output = LaurentPoly1;
    fn neg(self) -> LaurentPoly1 {
        self.scale(-1)
    }
}

impl fmt::Display for LaurentPoly1 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let body = match *e {
                0 => String::new(),
                1 => "t".to_string(),
                e => format!("t^{e}"),
            };
            match (mag, body.is_empty()) {
                (m, true) => write!(f, "{m}")?,
                (1, false) => write!(f, "{body}")?,
                (m, false) => write!(f, "{m}{body}")?,
            }
        }
        Ok(())
    }
}

impl Serialize for LaurentPoly1 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let pairs: Vec<[i64; 2]> = self.terms().map(|(e, c)| [e, c]).collect();
        pairs.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly1 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let pairs = Vec::<[i64; 2]>::deserialize(d)?;
        Ok(Self::from_terms(pairs.into_iter().map(|[e, c]| (e, c))))
    }
}

/// Integer Laurent polynomial in two variables `s, t`, keyed by `(s-exponent, t-exponent)`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LaurentPoly2 {
    coeffs: BTreeMap<(i64, i64), i64>,
}

impl LaurentPoly2 {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(s: i64, t: i64, coeff: i64) -> Self {
        let mut p = Self::zero();
        p.add_term((s, t), coeff);
        p
    }

    pub fn from_terms<I: IntoIterator<Item = ((i64, i64), i64)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, exp: (i64, i64), coeff: i64) {
        if coeff == 0 {
            return;
        }
        let entry = self.coeffs.entry(exp).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&exp);
        }
    }

    pub fn coeff(&self, s: i64, t: i64) -> i64 {
        self.coeffs.get(&(s, t)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = ((i64, i64), i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn shift(&self, ds: i64, dt: i64) -> Self {
        Self::from_terms(self.terms().map(|((s, t), c)| ((s + ds, t + dt), c)))
    }

    /// Image under `s ↦ x^a, t ↦ x^b`.
    pub fn specialize(&self, a: i64, b: i64) -> LaurentPoly1 {
        LaurentPoly1::from_terms(self.terms().map(|((s, t), c)| (a * s + b * t, c)))
    }

    pub fn equivalent_up_to_unit(&self, other: &Self) -> bool {
        self.lowered() == other.lowered()
    }

    fn lowered(&self) -> Self {
        let Some((&top, &lead)) = self.coeffs.iter().next_back() else {
            return Self::zero();
        };
        let _ = top;
        let smin = self.coeffs.keys().map(|k| k.0).min().unwrap();
        let tmin = self.coeffs.keys().map(|k| k.1).min().unwrap();
        let shifted = self.shift(-smin, -tmin);
        Self::from_terms(shifted.terms().map(|(e, c)| (e, c * lead.signum())))
    }

    /// Exact quotient by a polynomial in `s` alone, row by row in `t`.
    pub fn div_exact_in_s(&self, divisor: &LaurentPoly1) -> Result<Self, PolyError> {
        let mut rows: BTreeMap<i64, LaurentPoly1> = BTreeMap::new();
        for ((s, t), c) in self.terms() {
            rows.entry(t).or_default().add_term(s, c);
        }
        let mut out = Self::zero();
        for (t, row) in rows {
            for (s, c) in row.div_exact(divisor)?.terms() {
                out.add_term((s, t), c);
            }
        }
        Ok(out)
    }

    /// Exact quotient by a polynomial in `t` alone, column by column in `s`.
    pub fn div_exact_in_t(&self, divisor: &LaurentPoly1) -> Result<Self, PolyError> {
        let swapped = Self::from_terms(self.terms().map(|((s, t), c)| ((t, s), c)));
        let q = swapped.div_exact_in_s(divisor)?;
        Ok(Self::from_terms(q.terms().map(|((t, s), c)| ((s, t), c))))
    }
}

impl Add for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn add(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c);
        }
        out
    }
}

impl Sub for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn sub(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c);
        }
        out
    }
}

impl Mul for &LaurentPoly2 {
    type Output = LaurentPoly2;
    fn mul(self, rhs: &LaurentPoly2) -> LaurentPoly2 {
        let mut out = LaurentPoly2::zero();
        for ((s1, t1), c1) in self.terms() {
            for ((s2, t2), c2) in rhs.terms() {
                out.add_term((s1 + s2, t1 + t2), c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPoly2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|((s, t), c)| {
                let mut body = String::new();
                for (name, e) in [("s", s), ("t", t)] {
                    match e {
                        0 => {}
                        1 => body.push_str(name),
                        e => body.push_str(&format!("{name}^{e}")),
                    }
                }
                match (c, body.is_empty()) {
                    (c, true) => c.to_string(),
                    (1, false) => body,
                    (-1, false) => format!("-{body}"),
                    (c, false) => format!("{c}{body}"),
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + ").replace("+ -", "- "))
    }
}

impl Serialize for LaurentPoly2 {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let triples: Vec<[i64; 3]> = self.terms().map(|((a, b), c)| [a, b, c]).collect();
        triples.serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentPoly2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let triples = Vec::<[i64; 3]>::deserialize(d)?;
        Ok(Self::from_terms(triples.into_iter().map(|[a, b, c]| ((a, b), c))))
    }
}

/// A point of `½(Z ⊕ Z/d)`, stored with doubled coordinates.
///
/// For odd `d` halving is unique in `Z/d`, so the doubled torsion part is kept even.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HalfGrading {
    two_a: i64,
    two_b: i64,
    d: i64,
}

impl HalfGrading {
    pub fn from_doubled(two_a: i64, two_b: i64, d: i64) -> Self {
        assert!(d >= 1, "torsion order must be positive");
        let mut b = two_b.rem_euclid(2 * d);
        if d % 2 == 1 && b % 2 == 1 {
            b = (b + d) % (2 * d);
        }
        HalfGrading { two_a, two_b: b, d }
    }

    pub fn integral(a: i64, b: i64, d: i64) -> Self {
        Self::from_doubled(2 * a, 2 * b, d)
    }

    pub fn zero(d: i64) -> Self {
        Self::from_doubled(0, 0, d)
    }

    pub fn two_a(&self) -> i64 {
        self.two_a
    }

    pub fn two_b(&self) -> i64 {
        self.two_b
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn is_integral(&self) -> bool {
        self.two_a % 2 == 0 && self.two_b % 2 == 0
    }

    pub fn scale(&self, k: i64) -> Self {
        Self::from_doubled(self.two_a * k, self.two_b * k, self.d)
    }

    /// Image under `(a, b) ↦ (ε a, x a + y b)`.
    pub fn transform(&self, eps: i64, x: i64, y: i64) -> Self {
        Self::from_doubled(eps * self.two_a, x * self.two_a + y * self.two_b, self.d)
    }
}

impl Add for HalfGrading {
    type Output = HalfGrading;
    fn add(self, rhs: HalfGrading) -> HalfGrading {
        assert_eq!(self.d, rhs.d, "torsion orders differ");
        Self::from_doubled(self.two_a + rhs.two_a, self.two_b + rhs.two_b, self.d)
    }
}

impl Sub for HalfGrading {
    type Output = HalfGrading;
    fn sub(self, rhs: HalfGrading) -> HalfGrading {
        self + (-rhs)
    }
}

impl Neg for HalfGrading {
    type Output = HalfGrading;
    fn neg(self) -> HalfGrading {
        Self::from_doubled(-self.two_a, -self.two_b, self.d)
    }
}

impl Serialize for HalfGrading {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        [self.two_a, self.two_b].serialize(s)
    }
}

impl fmt::Display for HalfGrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let half = |x: i64| {
            if x % 2 == 0 {
                (x / 2).to_string()
            } else {
                format!("{x}/2")
            }
        };
        if self.d == 1 {
            write!(f, "{}", half(self.two_a))
        } else {
            write!(f, "({}, {} mod {})", half(self.two_a), half(self.two_b), self.d)
        }
    }
}

/// Finitely supported integer combination of half-lattice gradings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupRingElt {
    d: i64,
    coeffs: BTreeMap<HalfGrading, i64>,
}

impl GroupRingElt {
    pub fn zero(d: i64) -> Self {
        GroupRingElt {
            d,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn identity(d: i64) -> Self {
        Self::monomial(HalfGrading::zero(d), 1)
    }

    pub fn monomial(g: HalfGrading, coeff: i64) -> Self {
        let mut out = Self::zero(g.d());
        out.add_term(g, coeff);
        out
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn add_term(&mut self, g: HalfGrading, coeff: i64) {
        assert_eq!(g.d(), self.d, "torsion orders differ");
        if coeff == 0 {
            return;
        }
        let entry = self.coeffs.entry(g).or_insert(0);
        *entry += coeff;
        if *entry == 0 {
            self.coeffs.remove(&g);
        }
    }

    pub fn coeff(&self, g: &HalfGrading) -> i64 {
        self.coeffs.get(g).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (HalfGrading, i64)> + '_ {
        self.coeffs.iter().map(|(&g, &c)| (g, c))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn len(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = self.clone();
        for (g, c) in other.terms() {
            out.add_term(g, c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.add(&other.scale(-1))
    }

    pub fn mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check(other)?;
        let mut out = Self::zero(self.d);
        for (g1, c1) in self.terms() {
            for (g2, c2) in other.terms() {
                out.add_term(g1 + g2, c1 * c2);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, k: i64) -> Self {
        let mut out = Self::zero(self.d);
        for (g, c) in self.terms() {
            out.add_term(g, c * k);
        }
        out
    }

    /// Multiply by the monomial `g`.
    pub fn shift(&self, g: HalfGrading) -> Self {
        let mut out = Self::zero(self.d);
        for (h, c) in self.terms() {
            out.add_term(h + g, c);
        }
        out
    }

    pub fn transform(&self, eps: i64, x: i64, y: i64) -> Self {
        let mut out = Self::zero(self.d);
        for (h, c) in self.terms() {
            out.add_term(h.transform(eps, x, y), c);
        }
        out
    }

    /// Evaluates the one-variable polynomial `f` at the monomial `g`.
    pub fn evaluate(f: &LaurentPoly1, g: HalfGrading) -> Self {
        let mut out = Self::zero(g.d());
        for (e, c) in f.terms() {
            out.add_term(g.scale(e), c);
        }
        out
    }

    /// Splits `self` along cosets of `⟨g⟩` into one-variable polynomials in `g`.
    ///
    /// Requires `g` to have a nonzero free part.
    pub fn coset_decomposition(&self, g: HalfGrading) -> Vec<(HalfGrading, LaurentPoly1)> {
        assert!(g.two_a() != 0, "generator must have infinite order");
        let step = g.two_a().abs();
        let sign = g.two_a().signum();
        let mut cosets: BTreeMap<HalfGrading, LaurentPoly1> = BTreeMap::new();
        for (h, c) in self.terms() {
            let n = h.two_a().div_euclid(step) * sign;
            let base = h - g.scale(n);
            cosets.entry(base).or_default().add_term(n, c);
        }
        cosets.into_iter().collect()
    }

    /// Whether `self` is divisible by `(g - 1)^k` in the group ring.
    pub fn divisible_by_power_of(&self, g: HalfGrading, k: u32) -> bool {
        let mut divisor = LaurentPoly1::one();
        let base = LaurentPoly1::from_terms([(1, 1), (0, -1)]);
        for _ in 0..k {
            divisor = &divisor * &base;
        }
        self.coset_decomposition(g)
            .iter()
            .all(|(_, f)| f.div_exact(&divisor).is_ok())
    }

    /// One-variable image when the torsion part is trivial, exponents halved after
    /// moving the lowest grading to zero.
    pub fn to_laurent(&self) -> LaurentPoly1 {
        let Some(lo) = self.coeffs.keys().map(|g| g.two_a()).min() else {
            return LaurentPoly1::zero();
        };
        LaurentPoly1::from_terms(self.terms().map(|(g, c)| ((g.two_a() - lo) / 2, c)))
    }

    fn check(&self, other: &Self) -> Result<(), PolyError> {
        if self.d != other.d {
            Err(PolyError::TorsionMismatch(self.d, other.d))
        } else {
            Ok(())
        }
    }
}

impl Serialize for GroupRingElt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let terms: Vec<([i64; 2], i64)> = self.terms().map(|(g, c)| ([g.two_a(), g.two_b()], c)).collect();
        terms.serialize(s)
    }
}

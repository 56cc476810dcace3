//! Two-generator words, substitution maps between knot groups, and Fox calculus.

use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::arith::{continued_fraction, gcd, mod_inverse, Fraction};
use crate::knots::{validate_constrained, ConstrainedParams};
use crate::polynomials::{LaurentPoly1, LaurentPoly2, PolyError};
use crate::twobridge::epsilon;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("parameters outside the verified range: {0}")]
    InvalidRange(String),
    #[error("Fox quotient is not exact")]
    NonExactDivision,
    #[error("abelianization has torsion of order {0}")]
    TorsionTarget(i64),
    #[error("cannot parse word: unexpected {0:?}")]
    Parse(char),
}

impl From<PolyError> for GroupError {
    fn from(_: PolyError) -> Self {
        GroupError::NonExactDivision
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Gen {
    S,
    T,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: Gen,
    pub exp: i8,
}

impl Letter {
    fn inverse(self) -> Letter {
        Letter {
            gen: self.gen,
            exp: -self.exp,
        }
    }
}

/// A freely reduced word in `s, t`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn identity() -> Self {
        Word::default()
    }

    pub fn s() -> Self {
        Word::from_letters([Letter { gen: Gen::S, exp: 1 }])
    }

    pub fn t() -> Self {
        Word::from_letters([Letter { gen: Gen::T, exp: 1 }])
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(it: I) -> Self {
        let mut w = Word::identity();
        for l in it {
            w.push(l);
        }
        w
    }

    fn push(&mut self, l: Letter) {
        if self.letters.last() == Some(&l.inverse()) {
            self.letters.pop();
        } else {
            self.letters.push(l);
        }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, other: &Word) -> Word {
        let mut w = self.clone();
        for &l in &other.letters {
            w.push(l);
        }
        w
    }

    pub fn inverse(&self) -> Word {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inverse()).collect(),
        }
    }

    pub fn pow(&self, n: i64) -> Word {
        let base = if n >= 0 { self.clone() } else { self.inverse() };
        (0..n.abs()).fold(Word::identity(), |acc, _| acc.mul(&base))
    }

    /// Exponent sums `(e_s, e_t)`.
    pub fn exponent_sums(&self) -> (i64, i64) {
        self.letters.iter().fold((0, 0), |(a, b), l| match l.gen {
            Gen::S => (a + l.exp as i64, b),
            Gen::T => (a, b + l.exp as i64),
        })
    }

    pub fn cyclically_reduced(&self) -> Word {
        let mut v = self.letters.as_slice();
        while v.len() > 1 && v[0] == v[v.len() - 1].inverse() {
            v = &v[1..v.len() - 1];
        }
        Word { letters: v.to_vec() }
    }

    /// Image under `s ↦ ws, t ↦ wt`.
    pub fn substitute(&self, ws: &Word, wt: &Word) -> Word {
        let (si, ti) = (ws.inverse(), wt.inverse());
        let mut out = Word::identity();
        for l in &self.letters {
            let img = match (l.gen, l.exp > 0) {
                (Gen::S, true) => ws,
                (Gen::S, false) => &si,
                (Gen::T, true) => wt,
                (Gen::T, false) => &ti,
            };
            out = out.mul(img);
        }
        out
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            let c = match (l.gen, l.exp > 0) {
                (Gen::S, true) => 's',
                (Gen::S, false) => 'S',
                (Gen::T, true) => 't',
                (Gen::T, false) => 'T',
            };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = GroupError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for c in s.chars() {
            let l = match c {
                's' => Letter { gen: Gen::S, exp: 1 },
                'S' => Letter { gen: Gen::S, exp: -1 },
                't' => Letter { gen: Gen::T, exp: 1 },
                'T' => Letter { gen: Gen::T, exp: -1 },
                '1' if s.len() == 1 => continue,
                other => return Err(GroupError::Parse(other)),
            };
            letters.push(l);
        }
        Ok(Word::from_letters(letters))
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// Equal up to cyclic permutation after cyclic reduction.
pub fn cyclic_equal(w1: &Word, w2: &Word) -> bool {
    let (a, b) = (w1.cyclically_reduced(), w2.cyclically_reduced());
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    let n = a.len();
    (0..n).any(|i| (0..n).all(|j| a.letters[(i + j) % n] == b.letters[j]))
}

/// Substitution maps; `F1(n) = (s ↦ s, t ↦ sⁿt)` and so on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Primitive {
    F1(i64),
    F2(i64),
    G1(i64),
    G2(i64),
    H0,
    H1,
    H2,
}

impl Primitive {
    pub fn images(&self) -> (Word, Word) {
        let (s, t) = (Word::s(), Word::t());
        match *self {
            Primitive::F1(n) => (s.clone(), s.pow(n).mul(&t)),
            Primitive::F2(n) => (t.pow(n).mul(&s), t),
            Primitive::G1(n) => (s.clone(), t.mul(&s.pow(n))),
            Primitive::G2(n) => (s.mul(&t.pow(n)), t),
            Primitive::H0 => (t, s),
            Primitive::H1 => (t, s.inverse()),
            Primitive::H2 => (s.inverse(), t.inverse()),
        }
    }

    pub fn apply(&self, w: &Word) -> Word {
        let (ws, wt) = self.images();
        w.substitute(&ws, &wt)
    }
}

impl fmt::Display for Primitive {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Primitive::F1(n) => write!(f, "f1^{n}"),
            Primitive::F2(n) => write!(f, "f2^{n}"),
            Primitive::G1(n) => write!(f, "g1^{n}"),
            Primitive::G2(n) => write!(f, "g2^{n}"),
            Primitive::H0 => write!(f, "h0"),
            Primitive::H1 => write!(f, "h1"),
            Primitive::H2 => write!(f, "h2"),
        }
    }
}

/// A composite `m_1 ∘ m_2 ∘ … ∘ m_k`, written left to right; `m_k` applies first.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct RewriteMap {
    pub maps: Vec<Primitive>,
}

impl RewriteMap {
    pub fn new(maps: Vec<Primitive>) -> Self {
        RewriteMap { maps }
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &RewriteMap) -> RewriteMap {
        let mut maps = self.maps.clone();
        maps.extend(other.maps.iter().copied());
        RewriteMap { maps }
    }

    /// Column operations on a 2x2 integer matrix, in application order.
    pub fn act_on_columns(&self, m: [[i64; 2]; 2]) -> [[i64; 2]; 2] {
        let mut m = m;
        for prim in self.maps.iter().rev() {
            match *prim {
                Primitive::F1(n) | Primitive::G1(n) => {
                    for row in &mut m {
                        row[0] += n * row[1];
                    }
                }
                Primitive::F2(n) | Primitive::G2(n) => {
                    for row in &mut m {
                        row[1] += n * row[0];
                    }
                }
                Primitive::H0 => {
                    for row in &mut m {
                        row.swap(0, 1);
                    }
                }
                Primitive::H1 => {
                    for row in &mut m {
                        *row = [-row[1], row[0]];
                    }
                }
                Primitive::H2 => {
                    for row in &mut m {
                        *row = [-row[0], -row[1]];
                    }
                }
            }
        }
        m
    }
}

impl fmt::Display for RewriteMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.maps.is_empty() {
            return write!(f, "id");
        }
        let parts: Vec<String> = self.maps.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(" ∘ "))
    }
}

impl Serialize for RewriteMap {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub fn apply_map(m: &RewriteMap, w: &Word) -> Word {
    m.maps.iter().rev().fold(w.clone(), |acc, prim| prim.apply(&acc))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapFamily {
    F,
    G,
}

impl MapFamily {
    fn one(self, n: i64) -> Primitive {
        match self {
            MapFamily::F => Primitive::F1(n),
            MapFamily::G => Primitive::G1(n),
        }
    }

    fn two(self, n: i64) -> Primitive {
        match self {
            MapFamily::F => Primitive::F2(n),
            MapFamily::G => Primitive::G2(n),
        }
    }
}

/// `f^{q/p}` (or `g^{q/p}`) from the continued fraction `[a_0; …, a_m]` of `q/p`:
/// `x_m^{-a_m+1} ∘ … ∘ x_0^{-a_0}`, with `x_i` the first map for odd `i`.
pub fn fraction_map(x: Fraction, family: MapFamily) -> RewriteMap {
    let terms = continued_fraction(x).terms;
    let m = terms.len() - 1;
    let maps = terms
        .iter()
        .enumerate()
        .rev()
        .map(|(i, &a)| {
            let n = -a + if i == m { 1 } else { 0 };
            if i % 2 == 1 {
                family.one(n)
            } else {
                family.two(n)
            }
        })
        .collect();
    RewriteMap { maps }
}

/// `x_1^1 ∘ x_2^{-1} ∘ x^{q/p}`.
pub fn capital_map(x: Fraction, family: MapFamily) -> RewriteMap {
    RewriteMap::new(vec![family.one(1), family.two(-1)]).compose(&fraction_map(x, family))
}

/// `θ_i = 1` iff `i q mod p < k`, where `k - 1 = (l - 1) q mod p`.
pub fn theta(p: i64, q: i64, l: i64) -> Vec<i64> {
    let k = ((l - 1) * q).rem_euclid(p) + 1;
    (0..p).map(|i| i64::from((i * q).rem_euclid(p) < k)).collect()
}

/// `s t^{θ_l} s … s t^{θ_{p-1}} s`.
pub fn s_star(p: i64, q: i64, l: i64) -> Word {
    let th = theta(p, q, l);
    let (s, t) = (Word::s(), Word::t());
    (l..p).fold(s.clone(), |w, i| w.mul(&t.pow(th[i as usize])).mul(&s))
}

/// `t^{θ_0} s t^{θ_1} … s t^{θ_{l-1}}`.
pub fn t_star(p: i64, q: i64, l: i64) -> Word {
    let th = theta(p, q, l);
    let (s, t) = (Word::s(), Word::t());
    (1..l).fold(t.pow(th[0]), |w, i| w.mul(&s).mul(&t.pow(th[i as usize])))
}

/// The relator of the two-generator knot-group presentation from the standard diagram.
pub fn standard_relation(k: ConstrainedParams) -> Word {
    let k = k.mirror_normal().0.with_v_zero();
    let (p, l, u, v) = (k.p(), k.l(), k.u(), k.v());
    let qp = k.q_prime();
    let ss = s_star(p, qp, l);
    let ts = t_star(p, qp, l);
    let t = Word::t();
    let e = |i: i64| epsilon(i.rem_euclid(2 * u), u, v);
    let mut w = Word::identity();
    for i in 1..=2 * u {
        let piece = if i % 2 == 1 {
            &ss
        } else if e(i - 1) == -e(i + 1) {
            &t
        } else {
            &ts
        };
        w = w.mul(&piece.pow(e(i)));
    }
    w
}

/// Word identities establishing `C(p, q, l, u, v) ≅ C(p, q', l, u, v)` for `l ∈ {2, p}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsomorphismCertificate {
    /// The map carrying the relator of `C(p, q', l, u, v)` to that of `C(p, q, l, u, v)`.
    pub map: RewriteMap,
    pub source_relator: Word,
    pub target_relator: Word,
    pub image: Word,
    pub relator_identity: bool,
    pub slide_identities: bool,
    pub generator_images: bool,
    pub matrix_identity: bool,
}

impl IsomorphismCertificate {
    pub fn holds(&self) -> bool {
        self.relator_identity && self.slide_identities && self.generator_images && self.matrix_identity
    }
}

fn slide_and_generator_checks(p: i64, q: i64) -> (bool, bool, bool) {
    let qp = mod_inverse(q, p).unwrap();
    let x = Fraction::new(q, p).unwrap();
    let (s, t) = (Word::s(), Word::t());
    let (ts, st) = (t.mul(&s), s.mul(&t));
    let f = fraction_map(x, MapFamily::F);
    let g = fraction_map(x, MapFamily::G);
    let ss = s_star(p, q, 2);
    let slides = apply_map(&f, &ss.mul(&ts)) == ts
        && apply_map(&f, &ss.mul(&st)) == st
        && apply_map(&g, &ts.mul(&ss)) == ts
        && apply_map(&g, &st.mul(&ss)) == st;
    let ssp = s_star(p, qp, 2);
    let h0 = Primitive::H0;
    let gens = apply_map(&capital_map(x, MapFamily::F), &t) == h0.apply(&ssp.mul(&ts))
        && apply_map(&capital_map(x, MapFamily::G), &t) == h0.apply(&st.mul(&ssp));
    let matrix = capital_map(x, MapFamily::F).act_on_columns([[p, q], [0, 1]]) == [[1, 0], [qp, p]];
    (slides, gens, matrix)
}

pub fn verify_isomorphism(p: i64, q: i64, l: i64, u: i64, v: i64) -> Result<IsomorphismCertificate, GroupError> {
    if p <= 1 || gcd(p, q) != 1 || !(1..p).contains(&q) {
        return Err(GroupError::InvalidRange(format!(
            "need p > 1 and 0 < q < p coprime, got ({p}, {q})"
        )));
    }
    if l != 2 && l != p {
        return Err(GroupError::InvalidRange(format!("l must be 2 or p, got {l}")));
    }
    if u % 2 == 0 || !(u > 2 * v && v > 0) || gcd(u, v) != 1 {
        return Err(GroupError::InvalidRange(format!(
            "need u odd and u > 2v > 0, got ({u}, {v})"
        )));
    }
    let qp = mod_inverse(q, p).unwrap();
    let knot = |q| validate_constrained(p, q, l, u, v).unwrap();
    let source = standard_relation(knot(qp));
    let target = standard_relation(knot(q));
    let family_fraction = if l == 2 {
        (MapFamily::F, Fraction::new(q, p).unwrap())
    } else {
        (MapFamily::G, Fraction::new(p - q, p).unwrap())
    };
    let map = RewriteMap::new(vec![Primitive::H0]).compose(&capital_map(family_fraction.1, family_fraction.0));
    let image = apply_map(&map, &source);
    let expected = if v % 2 == 1 {
        Primitive::H2.apply(&target)
    } else {
        target.clone()
    };
    let (slides, gens, matrix) = slide_and_generator_checks(p, q);
    Ok(IsomorphismCertificate {
        relator_identity: cyclic_equal(&image, &expected),
        map,
        source_relator: source,
        target_relator: target,
        image,
        slide_identities: slides,
        generator_images: gens,
        matrix_identity: matrix,
    })
}

fn fox_derivative_one(w: &Word, gen: Gen, s_img: i64, t_img: i64) -> LaurentPoly1 {
    let mut out = LaurentPoly1::zero();
    let mut pos = 0;
    for l in w.letters() {
        let step = match l.gen {
            Gen::S => s_img,
            Gen::T => t_img,
        };
        if l.gen == gen {
            if l.exp > 0 {
                out.add_term(pos, 1);
            } else {
                out.add_term(pos - step, -1);
            }
        }
        pos += step * l.exp as i64;
    }
    out
}

fn fox_derivative_two(w: &Word, gen: Gen) -> LaurentPoly2 {
    let mut out = LaurentPoly2::zero();
    let mut pos = (0i64, 0i64);
    for l in w.letters() {
        let step = match l.gen {
            Gen::S => (1, 0),
            Gen::T => (0, 1),
        };
        if l.gen == gen {
            if l.exp > 0 {
                out.add_term(pos, 1);
            } else {
                out.add_term((pos.0 - step.0, pos.1 - step.1), -1);
            }
        }
        let e = l.exp as i64;
        pos = (pos.0 + step.0 * e, pos.1 + step.1 * e);
    }
    out
}

/// The abelianization `s ↦ t^α, t ↦ t^β` of `<s, t | w>`, when it is `Z`.
pub fn abelianization(w: &Word) -> Result<(i64, i64), GroupError> {
    let (es, et) = w.exponent_sums();
    let g = gcd(es, et);
    if g != 1 {
        return Err(GroupError::TorsionTarget(g));
    }
    Ok((et, -es))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Abelianization {
    OneVariable { s: i64, t: i64 },
    TwoVariable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FoxPolynomial {
    One(LaurentPoly1),
    Two(LaurentPoly2),
}

/// Alexander polynomial of `<s, t | w>` with `H_1 = Z` through `s ↦ t^α, t ↦ t^β`.
pub fn fox_alexander_one(w: &Word, s_img: i64, t_img: i64) -> Result<LaurentPoly1, GroupError> {
    let (es, et) = w.exponent_sums();
    let g = gcd(es, et);
    if g != 1 {
        return Err(GroupError::TorsionTarget(g));
    }
    if s_img * es + t_img * et != 0 || gcd(s_img, t_img) != 1 {
        return Err(GroupError::NonExactDivision);
    }
    let t_minus_one = LaurentPoly1::from_dense(0, &[-1, 1]);
    let (deriv, other) = if s_img != 0 {
        (fox_derivative_one(w, Gen::T, s_img, t_img), s_img)
    } else {
        (fox_derivative_one(w, Gen::S, s_img, t_img), t_img)
    };
    let denom = &LaurentPoly1::monomial(other, 1) - &LaurentPoly1::one();
    Ok((&deriv * &t_minus_one).div_exact(&denom)?)
}

/// Two-variable Alexander polynomial `φ(∂w/∂t) / (s - 1)` for `H_1 = Z²`.
pub fn fox_alexander_two(w: &Word) -> Result<LaurentPoly2, GroupError> {
    let (es, et) = w.exponent_sums();
    if (es, et) != (0, 0) {
        return Err(GroupError::TorsionTarget(gcd(es, et)));
    }
    let deriv = fox_derivative_two(w, Gen::T);
    Ok(deriv.div_exact_in_s(&LaurentPoly1::from_dense(0, &[-1, 1]))?)
}

pub fn fox_alexander(w: &Word, target: Abelianization) -> Result<FoxPolynomial, GroupError> {
    match target {
        Abelianization::OneVariable { s, t } => fox_alexander_one(w, s, t).map(FoxPolynomial::One),
        Abelianization::TwoVariable => fox_alexander_two(w).map(FoxPolynomial::Two),
    }
}

//! Knot Floer data of constrained knots: homology of the complement, Alexander
//! gradings, Euler characteristics in `Z[H_1]`, and the quantities read off them.

use std::collections::BTreeMap;

use serde::Serialize;
use thiserror::Error;

use crate::arith::{bezout, gcd};
use crate::knots::ConstrainedParams;
use crate::polynomials::{GroupRingElt, HalfGrading, LaurentPoly1};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FloerError {
    #[error("Thurston norm {norm} is below the boundary count {n}")]
    DegenerateNorm { norm: i64, n: i64 },
    #[error("torsion orders differ ({0} vs {1}) or p differs")]
    NotIdentifiable(i64, i64),
}

/// `H_1(E(K)) = <[a], [m]> / (p[a] + k'[m]) = Z ⊕ Z/d`.
///
/// Coordinates: `t = (k'/d) x - (p/d) y` and `r = αx + βy mod d` for `x[a] + y[m]`,
/// where `αp + βk' = d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct H1Presentation {
    pub p: i64,
    pub k: i64,
    pub k_prime: i64,
    pub d: i64,
    #[serde(skip)]
    alpha: i64,
    #[serde(skip)]
    beta: i64,
}

impl H1Presentation {
    pub fn new(p: i64, k: i64, k_prime: i64) -> Self {
        let (d, alpha, beta) = bezout(p, k_prime);
        H1Presentation {
            p,
            k,
            k_prime,
            d,
            alpha,
            beta,
        }
    }

    /// `(t, r)` coordinates of `x[a] + y[m]`.
    pub fn coords(&self, x: i64, y: i64) -> (i64, i64) {
        let d = self.d;
        (
            (self.k_prime / d) * x - (self.p / d) * y,
            (self.alpha * x + self.beta * y).rem_euclid(d),
        )
    }

    pub fn grading(&self, x: i64, y: i64) -> HalfGrading {
        let (t, r) = self.coords(x, y);
        HalfGrading::integral(t, r, self.d)
    }

    pub fn a(&self) -> HalfGrading {
        self.grading(1, 0)
    }

    pub fn m(&self) -> HalfGrading {
        self.grading(0, 1)
    }
}

pub fn homology_presentation(k: ConstrainedParams) -> H1Presentation {
    let k = k.mirror_normal().0;
    let kk = k.k();
    let k_prime = if k.v() % 2 == 1 { kk - 2 } else { kk };
    H1Presentation::new(k.p(), kk, k_prime)
}

/// Steps `gr(x^{j+1}_mid) - gr(x^j_mid)` for `j = 0..p`, as `(#[a], #[m])`.
pub fn walk_steps(k: ConstrainedParams) -> Vec<(i64, i64)> {
    let k = k.mirror_normal().0;
    let (p, l) = (k.p(), k.l());
    let qp = k.q_prime();
    let kk = k.k();
    let v_even = k.v() % 2 == 0;
    (0..p)
        .map(|j| {
            if l != 1 && (j == 0 || j == l - 1) {
                if v_even {
                    (1, 1)
                } else {
                    (1, 0)
                }
            } else if l == 1 && j == 0 {
                if v_even {
                    (1, 1)
                } else {
                    (1, -1)
                }
            } else if (1..=kk - 2).contains(&(j * qp).rem_euclid(p)) {
                (1, 1)
            } else {
                (1, 0)
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    D1,
    D2,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassData {
    pub j: i64,
    pub family: Family,
    pub middle: HalfGrading,
    pub poly: LaurentPoly1,
}

impl ClassData {
    /// `poly([m]) · middle` in the group ring.
    pub fn chi(&self, m: HalfGrading) -> GroupRingElt {
        GroupRingElt::evaluate(&self.poly, m).shift(self.middle)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EulerData {
    pub h1: H1Presentation,
    pub classes: Vec<ClassData>,
    pub chi: GroupRingElt,
}

impl EulerData {
    pub fn m(&self) -> HalfGrading {
        self.h1.m()
    }

    pub fn total_rank(&self) -> i64 {
        self.chi.terms().map(|(_, c)| c.abs()).sum()
    }

    /// One-variable image of `χ` in the free coordinate; exact when `d = 1`.
    pub fn collapsed(&self) -> LaurentPoly1 {
        let lo = self.chi.terms().map(|(g, _)| g.two_a()).min().unwrap_or(0);
        LaurentPoly1::from_terms(self.chi.terms().map(|(g, c)| ((g.two_a() - lo) / 2, c)))
    }
}

struct RawClass {
    family: Family,
    middle: (i64, i64),
    poly: LaurentPoly1,
}

fn raw_classes(k: ConstrainedParams, h1: &H1Presentation) -> Vec<RawClass> {
    let k = k.mirror_normal().0;
    let steps = walk_steps(k);
    let d1 = k.two_bridge().alexander();
    let d2 = k.partner_two_bridge().alexander();
    let mut pos = (0i64, 0i64);
    let mut out = Vec::new();
    for j in 1..=k.p() {
        if j > 1 {
            let s = steps[(j - 1) as usize];
            pos = (pos.0 + s.0, pos.1 + s.1);
        }
        let (family, poly) = if j >= k.l() {
            (Family::D1, d1.clone())
        } else {
            (Family::D2, d2.clone())
        };
        out.push(RawClass {
            family,
            middle: h1.coords(pos.0, pos.1),
            poly,
        });
    }
    out
}

/// Shift `(2a, 2b)` that makes the generator multiset invariant under negation,
/// lexicographically least among the valid lifts.
fn canonical_shift(points: &BTreeMap<(i64, i64), i64>, d: i64) -> (i64, i64) {
    let max_t = points.keys().map(|k| k.0).max().unwrap();
    let min_t = points.keys().map(|k| k.0).min().unwrap();
    let shifted = |sa: i64, sb: i64| -> BTreeMap<HalfGrading, i64> {
        let mut out = BTreeMap::new();
        for (&(t, r), &c) in points {
            *out.entry(HalfGrading::from_doubled(2 * t + sa, 2 * r + sb, d))
                .or_insert(0) += c;
        }
        out
    };
    let mut best: Option<(i64, i64)> = None;
    for &(t1, r1) in points.keys().filter(|k| k.0 == max_t) {
        for &(t2, r2) in points.keys().filter(|k| k.0 == min_t) {
            let sa = -(t1 + t2);
            for lift in [-(r1 + r2), -(r1 + r2) + d] {
                let sb = lift.rem_euclid(2 * d);
                let pos = shifted(sa, sb);
                let neg: BTreeMap<HalfGrading, i64> = pos.iter().map(|(g, &c)| (-*g, c)).collect();
                if pos == neg && best.is_none_or(|b| (sa, sb) < b) {
                    best = Some((sa, sb));
                }
            }
        }
    }
    best.expect("a negation-invariant shift exists for constrained knots")
}

pub fn hfk_euler(k: ConstrainedParams) -> EulerData {
    let h1 = homology_presentation(k);
    let d = h1.d;
    let raw = raw_classes(k, &h1);
    let m = h1.m();
    let mut points: BTreeMap<(i64, i64), i64> = BTreeMap::new();
    for class in &raw {
        for (e, c) in class.poly.terms() {
            let t = class.middle.0 + e * m.two_a() / 2;
            let r = (class.middle.1 + e * m.two_b() / 2).rem_euclid(d);
            *points.entry((t, r)).or_insert(0) += c.abs();
        }
    }
    let (sa, sb) = canonical_shift(&points, d);
    let classes: Vec<ClassData> = raw
        .into_iter()
        .enumerate()
        .map(|(i, c)| ClassData {
            j: i as i64 + 1,
            family: c.family,
            middle: HalfGrading::from_doubled(2 * c.middle.0 + sa, 2 * c.middle.1 + sb, d),
            poly: c.poly,
        })
        .collect();
    let mut chi = GroupRingElt::zero(d);
    for class in &classes {
        chi = chi.add(&class.chi(m)).expect("shared torsion order");
    }
    EulerData { h1, classes, chi }
}

/// Canonical middle gradings `gr(x^j_mid)` for `j = 1..=p`.
pub fn grading_walk(k: ConstrainedParams) -> Vec<HalfGrading> {
    middle_gradings(k)
}

pub fn middle_gradings(k: ConstrainedParams) -> Vec<HalfGrading> {
    hfk_euler(k).classes.iter().map(|c| c.middle).collect()
}

/// Dimension of `HFK` at each `(class, grading)`; thinness makes it `|χ|`.
pub fn hfk_dimensions(k: ConstrainedParams) -> BTreeMap<(i64, HalfGrading), i64> {
    let data = hfk_euler(k);
    let m = data.m();
    let mut out = BTreeMap::new();
    for class in &data.classes {
        for (g, c) in class.chi(m).terms() {
            out.insert((class.j, g), c.abs());
        }
    }
    out
}

/// `(t, r) ↦ (εt, xt + yr)` on `Z ⊕ Z/d`, acting on doubled coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct H1Automorphism {
    pub eps: i64,
    pub x: i64,
    pub y: i64,
}

impl H1Automorphism {
    pub fn apply(&self, g: HalfGrading) -> HalfGrading {
        g.transform(self.eps, self.x, self.y)
    }

    pub fn apply_elt(&self, f: &GroupRingElt) -> GroupRingElt {
        f.transform(self.eps, self.x, self.y)
    }
}

/// Every automorphism carrying `[m_1]` to `[m_2]`.
pub fn h1_automorphisms(h1: &H1Presentation, h2: &H1Presentation) -> Vec<H1Automorphism> {
    if h1.p != h2.p || h1.d != h2.d {
        return Vec::new();
    }
    let d = h1.d;
    let (m1, m2) = (h1.m(), h2.m());
    let mut out = Vec::new();
    for eps in [1, -1] {
        for x in 0..2 * d {
            for y in 1..=2 * d {
                if gcd(y, d) != 1 {
                    continue;
                }
                let phi = H1Automorphism { eps, x, y };
                if phi.apply(m1) == m2 {
                    out.push(phi);
                }
            }
        }
    }
    out
}

pub fn identify_h1(h1: &H1Presentation, h2: &H1Presentation) -> Result<H1Automorphism, FloerError> {
    h1_automorphisms(h1, h2)
        .into_iter()
        .next()
        .ok_or(FloerError::NotIdentifiable(h1.d, h2.d))
}

fn multiset<I: IntoIterator<Item = HalfGrading>>(it: I) -> BTreeMap<HalfGrading, usize> {
    let mut out = BTreeMap::new();
    for g in it {
        *out.entry(g).or_insert(0) += 1;
    }
    out
}

/// An automorphism, possibly followed by the order-two translation `(0, d/2)`,
/// carrying `[m_1]` to `[m_2]` and the middle gradings of `k1` onto those of `k2`.
pub fn align_middle_gradings(k1: ConstrainedParams, k2: ConstrainedParams) -> Option<(H1Automorphism, HalfGrading)> {
    let (e1, e2) = (hfk_euler(k1), hfk_euler(k2));
    let d = e1.h1.d;
    let target = multiset(e2.classes.iter().map(|c| c.middle));
    let translations: Vec<HalfGrading> = if d % 2 == 0 {
        vec![HalfGrading::zero(d), HalfGrading::integral(0, d / 2, d)]
    } else {
        vec![HalfGrading::zero(d)]
    };
    for phi in h1_automorphisms(&e1.h1, &e2.h1) {
        for &tau in &translations {
            let image = multiset(e1.classes.iter().map(|c| phi.apply(c.middle) + tau));
            if image == target {
                return Some((phi, tau));
            }
        }
    }
    None
}

/// Whether, after aligning middle gradings, each class's `χ` difference is divisible
/// by `([m] - 1)^2`. `None` when no alignment exists.
pub fn classwise_difference_divisible(k1: ConstrainedParams, k2: ConstrainedParams) -> Option<bool> {
    let (phi, tau) = align_middle_gradings(k1, k2)?;
    let (e1, e2) = (hfk_euler(k1), hfk_euler(k2));
    let (m1, m2) = (e1.m(), e2.m());
    let by_middle: BTreeMap<HalfGrading, &ClassData> = e2.classes.iter().map(|c| (c.middle, c)).collect();
    Some(e1.classes.iter().all(|c| {
        let image = phi.apply_elt(&c.chi(m1)).shift(tau);
        let other = by_middle[&(phi.apply(c.middle) + tau)].chi(m2);
        image
            .sub(&other)
            .map(|diff| diff.divisible_by_power_of(m2, 2))
            .unwrap_or(false)
    }))
}

/// Classes of `χ` agree up to units after aligning, class by class.
pub fn classwise_equivalent(k1: ConstrainedParams, k2: ConstrainedParams) -> bool {
    let Some((phi, tau)) = align_middle_gradings(k1, k2) else {
        return false;
    };
    let (e1, e2) = (hfk_euler(k1), hfk_euler(k2));
    let m1 = e1.m();
    let mut a: Vec<GroupRingElt> = Vec::new();
    for c in &e1.classes {
        a.push(phi.apply_elt(&c.chi(m1)).shift(tau));
    }
    let b: Vec<GroupRingElt> = e2.classes.iter().map(|c| c.chi(e2.m())).collect();
    let key = |f: &GroupRingElt| {
        let mut v: Vec<_> = f.terms().collect();
        v.sort();
        v
    };
    let mut ka: Vec<_> = a.iter().map(key).collect();
    let mut kb: Vec<_> = b.iter().map(key).collect();
    ka.sort();
    kb.sort();
    ka == kb
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GenusData {
    pub width: i64,
    pub thurston_norm: i64,
    pub genus: i64,
    pub boundary_components: i64,
    pub top_rank: i64,
    pub fibred: bool,
}

fn free_extent(data: &EulerData) -> (i64, i64) {
    let t: Vec<i64> = data.chi.terms().map(|(g, _)| g.two_a()).collect();
    (*t.iter().min().unwrap(), *t.iter().max().unwrap())
}

/// Total dimension at the maximal free grading.
pub fn top_rank(k: ConstrainedParams) -> i64 {
    let data = hfk_euler(k);
    let (_, hi) = free_extent(&data);
    data.chi
        .terms()
        .filter(|(g, _)| g.two_a() == hi)
        .map(|(_, c)| c.abs())
        .sum()
}

pub fn width_genus_fibred(k: ConstrainedParams) -> Result<GenusData, FloerError> {
    let data = hfk_euler(k);
    let (lo, hi) = free_extent(&data);
    let width = (hi - lo) / 2;
    let pd = data.h1.p / data.h1.d;
    let thurston_norm = width - pd;
    let n = gcd(data.h1.d, pd);
    if thurston_norm < n {
        return Err(FloerError::DegenerateNorm { norm: thurston_norm, n });
    }
    let top = top_rank(k);
    Ok(GenusData {
        width,
        thurston_norm,
        genus: 1 + (thurston_norm - n) / 2,
        boundary_components: n,
        top_rank: top,
        fibred: top == 1,
    })
}

//! Acceptance suite: one PASS/FAIL line per criterion, non-zero exit on any failure.

use std::collections::{BTreeMap, HashMap};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::Instant;

use constrained_knots::arith::{farey_sequence, gcd, Fraction};
use constrained_knots::census::{classify_filling, record_from_knot, FillingRecord, FillingVerdict};
use constrained_knots::floer::{
    align_middle_gradings, classwise_difference_divisible, classwise_equivalent, hfk_dimensions, hfk_euler,
    homology_presentation, top_rank, walk_steps, width_genus_fibred,
};
use constrained_knots::groups::{abelianization, fox_alexander_one, standard_relation, verify_isomorphism};
use constrained_knots::knots::{is_lspace_knot, mirror_normal_sweep, validate_constrained, ConstrainedParams};
use constrained_knots::polynomials::HalfGrading;
use constrained_knots::surgery::{
    braid_fill, braid_normalize, constrained_to_braid, magic_classify, simple_interval, BraidClass, BraidFilling,
    MagicOutcome, MagicSurgery, Slope,
};
use constrained_knots::twobridge::{two_bridge_equivalent, TwoBridge};
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn c(p: i64, q: i64, l: i64, u: i64, v: i64) -> ConstrainedParams {
    validate_constrained(p, q, l, u, v).unwrap()
}

fn fr(n: i64, d: i64) -> Fraction {
    Fraction::new(n, d).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn alexander_cross_validation() -> Outcome {
    let mut n = 0;
    for u in (1..=49).step_by(2) {
        let vs: Vec<i64> = if u == 1 {
            vec![0]
        } else {
            (1..u).filter(|&v| gcd(u, v) == 1).collect()
        };
        for v in vs {
            let closed = TwoBridge::new(u, v).map_err(|e| e.to_string())?.alexander();
            let r = standard_relation(c(1, 0, 1, u, v));
            let (a, b) = abelianization(&r).map_err(|e| e.to_string())?;
            let fox = fox_alexander_one(&r, a, b).map_err(|e| e.to_string())?;
            ensure(fox.equivalent_up_to_unit(&closed), || {
                format!("b({u},{v}): Fox {fox} vs {closed}")
            })?;
            ensure(closed.evaluate_at_minus_one().abs() == u, || {
                format!("b({u},{v}): |Δ(-1)| != u")
            })?;
            ensure(closed.evaluate_at_one() == 1, || format!("b({u},{v}): Δ(1) != 1"))?;
            n += 1;
        }
    }
    Ok(format!("{n} two-bridge knots"))
}

fn rank_identity() -> Outcome {
    let sweep = mirror_normal_sweep(12, 9);
    for &k in &sweep {
        let total: i64 = hfk_dimensions(k).values().sum();
        let (p, l, u, v) = (k.p(), k.l(), k.u(), k.v());
        if u == 1 {
            ensure(total == p, || format!("{k}: rank {total} != p"))?;
        } else {
            ensure(total == p * u - 2 * v * (l - 1), || format!("{k}: rank {total}"))?;
        }
    }
    Ok(format!("{} tuples", sweep.len()))
}

fn grading_consistency() -> Outcome {
    let sweep = mirror_normal_sweep(12, 9);
    for &k in &sweep {
        let h = homology_presentation(k);
        let total = walk_steps(k).iter().fold((0, 0), |a, s| (a.0 + s.0, a.1 + s.1));
        ensure(h.grading(total.0, total.1) == HalfGrading::zero(h.d), || {
            format!("{k}: steps sum to {total:?}")
        })?;
        let data = hfk_euler(k);
        let mut pos: BTreeMap<HalfGrading, i64> = BTreeMap::new();
        let mut neg: BTreeMap<HalfGrading, i64> = BTreeMap::new();
        for (g, c) in data.chi.terms() {
            *pos.entry(g).or_default() += c.abs();
            *neg.entry(-g).or_default() += c.abs();
        }
        ensure(pos == neg, || format!("{k}: generator gradings not negation invariant"))?;
    }
    Ok(format!("{} tuples", sweep.len()))
}

fn signature_skein() -> Outcome {
    let mut n = 0;
    for u in (3..=99).step_by(2) {
        for v in (1..u).filter(|&v| 2 * v < u && gcd(u, v) == 1) {
            let k = TwoBridge::new(u, v).unwrap();
            let partner = k.skein_partner().unwrap();
            let shift = if v % 2 == 1 { 2 } else { 0 };
            ensure(k.signature() == partner.signature() + shift, || format!("b({u},{v})"))?;
            n += 1;
        }
    }
    Ok(format!("{n} skein triples"))
}

fn isomorphism_verification() -> Outcome {
    let mut n = 0;
    for p in 2..=13 {
        for q in (1..p).filter(|&q| gcd(p, q) == 1) {
            let mut ls = vec![2, p];
            ls.dedup();
            for l in ls {
                for u in (3..=9).step_by(2) {
                    for v in (1..u).filter(|&v| 2 * v < u && gcd(u, v) == 1) {
                        let cert = verify_isomorphism(p, q, l, u, v).map_err(|e| e.to_string())?;
                        ensure(cert.holds(), || format!("({p},{q},{l},{u},{v}) fails"))?;
                        n += 1;
                    }
                }
            }
        }
    }
    ensure(!classwise_equivalent(c(5, 2, 3, 3, 1), c(5, 3, 3, 3, 1)), || {
        "C(5,2,3,3,1) and C(5,3,3,3,1) not distinguished".into()
    })?;
    ensure(classwise_equivalent(c(7, 2, 2, 3, 1), c(7, 4, 2, 3, 1)), || {
        "C(7,2,2,3,1) and C(7,4,2,3,1) differ".into()
    })?;
    Ok(format!("{n} word identities, necessity examples"))
}

fn same_class_groups(pmax: i64, umax: i64) -> Vec<Vec<ConstrainedParams>> {
    let mut groups: HashMap<(i64, i64, i64), Vec<ConstrainedParams>> = HashMap::new();
    for k in mirror_normal_sweep(pmax, umax) {
        let h = homology_presentation(k);
        groups
            .entry((k.p(), k.q(), h.k_prime.rem_euclid(k.p())))
            .or_default()
            .push(k);
    }
    let mut out: Vec<_> = groups.into_values().filter(|g| g.len() > 1).collect();
    out.sort();
    out
}

fn middle_grading_property() -> Outcome {
    let (mut pairs, mut simple) = (0, 0);
    for g in same_class_groups(10, 7) {
        for &other in &g[1..] {
            ensure(align_middle_gradings(g[0], other).is_some(), || {
                format!("{} vs {other}", g[0])
            })?;
            pairs += 1;
        }
        for s in g.iter().filter(|k| k.u() == 1) {
            let gens: Vec<HalfGrading> = hfk_euler(*s).chi.terms().map(|(g, _)| g).collect();
            let mids: Vec<HalfGrading> = hfk_euler(*s).classes.iter().map(|c| c.middle).collect();
            let (mut a, mut b) = (gens.clone(), mids);
            a.sort();
            b.sort();
            ensure(a == b, || format!("{s}: generators are not the middle gradings"))?;
            for &other in &g {
                ensure(align_middle_gradings(*s, other).is_some(), || format!("{s} vs {other}"))?;
            }
            simple += 1;
        }
    }
    Ok(format!("{pairs} same-class pairs, {simple} simple representatives"))
}

fn congruence_property() -> Outcome {
    let mut pairs = 0;
    for g in same_class_groups(10, 7) {
        for &other in &g[1..] {
            ensure(classwise_difference_divisible(g[0], other) == Some(true), || {
                format!("{} vs {other}", g[0])
            })?;
            pairs += 1;
        }
    }
    Ok(format!("{pairs} pairs divisible by ([m]-1)^2"))
}

fn magic_examples() -> Outcome {
    let knot = |u, v, s1: &str, s2: &str| -> Result<ConstrainedParams, String> {
        let m = MagicSurgery::new(u, v, s1.parse().unwrap(), s2.parse().unwrap()).map_err(|e| e.to_string())?;
        match magic_classify(&m).map_err(|e| e.to_string())?.outcome {
            MagicOutcome::Knot(k) => Ok(k),
            other => Err(format!("{m}: {other:?}")),
        }
    };
    ensure(knot(3, 1, "3/-2", "1/3")? == c(9, 7, 7, 3, 1), || {
        "first instance".into()
    })?;
    ensure(knot(3, 1, "1/2", "1/3")? == c(5, 3, 2, 1, 0), || {
        "second instance".into()
    })?;
    let pairs: Vec<(i64, i64)> = [(3, 1), (5, 1), (5, 2), (7, 1), (7, 2), (7, 3), (9, 2), (9, 4), (11, 3)].to_vec();
    let mut rng = rand::rngs::StdRng::seed_from_u64(20);
    let mut n = 0;
    while n < 20 {
        let p = rng.gen_range(2..=13);
        let q = rng.gen_range(1..p);
        if gcd(p, q) != 1 {
            continue;
        }
        let (u, v) = pairs[rng.gen_range(0..pairs.len())];
        let m = MagicSurgery::new(u, v, Slope::new(p, q).unwrap(), Slope::new(1, 0).unwrap()).unwrap();
        let MagicOutcome::Knot(k) = magic_classify(&m).map_err(|e| e.to_string())?.outcome else {
            return Err(format!("{m} unresolved"));
        };
        ensure(k == c(p, q, 1, u, v), || format!("{m} gives {k}"))?;
        let delta = TwoBridge::new(u, v).unwrap().alexander();
        let data = hfk_euler(k);
        ensure(data.classes.len() as i64 == p, || format!("{k}: class count"))?;
        ensure(
            data.classes.iter().all(|cl| cl.poly.equivalent_up_to_unit(&delta)),
            || format!("{k}: class polynomial"),
        )?;
        n += 1;
    }
    Ok("two worked instances, 20 composite fillings".into())
}

fn braid_suite() -> Outcome {
    let b = braid_normalize(4, fr(2, 5)).unwrap();
    ensure((b.b, b.t) == (2, 1), || format!("B(4,2/5) gives {b}"))?;
    let b = braid_normalize(4, fr(3, 10)).unwrap();
    ensure(b.b == 0, || format!("B(4,3/10) gives {b}"))?;
    let displays: [Vec<Fraction>; 4] = [
        vec![fr(0, 1), fr(1, 1)],
        vec![fr(0, 1), fr(1, 2), fr(1, 1)],
        vec![fr(0, 1), fr(1, 3), fr(1, 2), fr(2, 3), fr(1, 1)],
        vec![fr(0, 1), fr(1, 4), fr(1, 3), fr(1, 2), fr(2, 3), fr(3, 4), fr(1, 1)],
    ];
    for (i, expected) in displays.iter().enumerate() {
        ensure(farey_sequence(i as i64 + 1) == *expected, || format!("F_{}", i + 1))?;
    }
    let mut verdicts = 0;
    for w in 2..=6 {
        for d in (w + 1)..=13 {
            for n in (1..d).filter(|&n| gcd(n, d) == 1) {
                let braid = braid_normalize(w, fr(n, d)).unwrap();
                let interval = simple_interval(&braid);
                let farey = farey_sequence(w - 1);
                let adjacent = farey
                    .windows(2)
                    .any(|f| f[0] == interval.f_minus && f[1] == interval.f_plus);
                ensure(adjacent, || format!("{braid}: interval not adjacent in F_{}", w - 1))?;
                let mut fills = false;
                for p in 2..=12 {
                    for q in (1..p).filter(|&q| gcd(p, q) == 1) {
                        let inside = interval.contains(fr(q, p));
                        match braid_fill(&braid, p, q).unwrap() {
                            BraidFilling::Simple(s) => {
                                ensure(inside && s.k == (w * q).rem_euclid(p), || format!("{braid} at {q}/{p}"))?;
                                fills = true;
                            }
                            BraidFilling::NotSimple => ensure(!inside, || format!("{braid} at {q}/{p}"))?,
                        }
                        verdicts += 1;
                    }
                }
                if fills && w <= 3 {
                    ensure(interval.class == BraidClass::Torus, || {
                        format!("{braid}: simple filling off a torus braid")
                    })?;
                }
                if fills && w <= 4 {
                    ensure(interval.class != BraidClass::Strict, || {
                        format!("{braid}: simple filling off a strict braid")
                    })?;
                }
            }
        }
    }
    let mut torus = 0;
    for p in 2..=12 {
        for q in (2..p).filter(|&q| gcd(p, q) == 1) {
            let ceil = -(-p).div_euclid(q);
            let k = c(p, q, 2 * p - ceil * q + 1, 3, 1);
            let r = constrained_to_braid(k, Some(0)).map_err(|e| e.to_string())?;
            ensure(r.w == (1 + ceil) * q - p, || format!("{k}: w = {}", r.w))?;
            ensure(simple_interval(&r.braid).class == BraidClass::Torus, || {
                format!("{k}: not a torus braid")
            })?;
            torus += 1;
        }
    }
    Ok(format!("{verdicts} filling verdicts, {torus} torus conversions"))
}

fn census_round_trip() -> Outcome {
    let mut n = 0;
    for k in mirror_normal_sweep(12, 9) {
        let Ok(r) = record_from_knot("sweep", k) else { continue };
        match classify_filling(&r).verdict {
            FillingVerdict::SimpleFilling => ensure(k.total_rank() == k.p(), || format!("{k}: simple verdict"))?,
            FillingVerdict::ConstrainedFilling { params, .. } => {
                let a = TwoBridge::new(params.u, params.v).unwrap();
                let b = k.two_bridge();
                let mirror_b = TwoBridge::new(b.u(), b.u() - b.v()).unwrap_or(b);
                let uv_ok =
                    a == b || params.l == 1 && (two_bridge_equivalent(a, b) || two_bridge_equivalent(a, mirror_b));
                ensure(uv_ok, || format!("{k}: virtual (u,v) = ({}, {})", params.u, params.v))?;
                ensure(params.l == k.l() || params.l_alt == k.l(), || {
                    format!("{k}: virtual l {}", params.l)
                })?;
            }
            other => return Err(format!("{k}: {other:?}")),
        }
        n += 1;
    }
    let fig8 = FillingRecord::from_json(
        r#"{"name":"m004","p":1,"q":0,"d":1,"alexander":[[-1,1],[0,-3],[1,1]],"meridian_exponent":1}"#,
    )
    .map_err(|e| e.to_string())?;
    match classify_filling(&fig8).verdict {
        FillingVerdict::ConstrainedFilling { knot, .. } if knot == c(1, 0, 1, 5, 2) => {}
        other => return Err(format!("figure-eight record: {other:?}")),
    }
    Ok(format!("{n} torsion-free records, figure-eight"))
}

fn genus_and_fibredness() -> Outcome {
    let g = width_genus_fibred(c(1, 0, 1, 5, 2)).map_err(|e| e.to_string())?;
    ensure(g.genus == 1 && g.fibred, || format!("figure-eight: {g:?}"))?;
    let (mut simple, mut unknots, mut lspace, mut low_order) = (0, 0, 0, 0);
    for k in mirror_normal_sweep(12, 9) {
        let order = k.p() / homology_presentation(k).d;
        if k.u() == 1 && order == 1 {
            let dims = hfk_dimensions(k);
            let flat = dims.keys().all(|(_, g)| g.two_a() == 0);
            ensure(flat && top_rank(k) == k.p(), || format!("{k}: local unknot {dims:?}"))?;
            unknots += 1;
            continue;
        }
        if !is_lspace_knot(k) {
            continue;
        }
        ensure(hfk_dimensions(k).values().all(|&n| n == 1), || {
            format!("{k}: class with rank above 1 in a grading")
        })?;
        if order <= 2 {
            low_order += 1;
            continue;
        }
        ensure(top_rank(k) == 1, || format!("{k}: top rank {}", top_rank(k)))?;
        if k.u() == 1 {
            simple += 1;
        } else {
            lspace += 1;
        }
    }
    for (k, top) in [(c(3, 1, 2, 3, 1), 2), (c(8, 3, 2, 1, 0), 2), (c(4, 1, 2, 1, 0), 1)] {
        ensure(top_rank(k) == top, || format!("{k}: top rank {}", top_rank(k)))?;
    }
    Ok(format!(
        "{simple} simple and {lspace} further L-space knots of order at least 3, {low_order} of order at most 2 thin per class, {unknots} local unknots"
    ))
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("Alexander cross-validation", alexander_cross_validation),
        ("Rank identity", rank_identity),
        ("Grading consistency", grading_consistency),
        ("Signature skein check", signature_skein),
        ("Isomorphism verification", isomorphism_verification),
        ("Middle gradings per homology class", middle_grading_property),
        ("Classwise congruence mod ([m]-1)^2", congruence_property),
        ("Magic-link examples", magic_examples),
        ("1-bridge braid suite", braid_suite),
        ("Census round-trip", census_round_trip),
        ("Genus and fibredness", genus_and_fibredness),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}

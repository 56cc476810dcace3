//! Classification of exceptional-filling records by residue decomposition of
//! the knot Floer Euler characteristic.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{gcd, mod_inverse};
use crate::floer::hfk_euler;
use crate::knots::{validate_constrained, ConstrainedParams};
use crate::polynomials::LaurentPoly1;
use crate::twobridge::TwoBridge;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CensusError {
    #[error("malformed record: {0}")]
    Malformed(String),
    #[error("Alexander polynomial is not symmetric up to a unit")]
    NonSymmetricInput,
    #[error("torsion order {0} needs a precomputed Euler characteristic")]
    TorsionUnsupported(i64),
    #[error("Euler characteristic does not divide exactly")]
    NonExactDivision,
}

/// One lens-space filling of a cusped manifold.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FillingRecord {
    pub name: String,
    pub p: i64,
    pub q: i64,
    #[serde(rename = "d", default = "one")]
    pub torsion_d: i64,
    pub alexander: LaurentPoly1,
    pub meridian_exponent: i64,
}

fn one() -> i64 {
    1
}

impl FillingRecord {
    pub fn validate(&self) -> Result<(), CensusError> {
        if self.p < 1 || gcd(self.p, self.q) != 1 {
            return Err(CensusError::Malformed(format!(
                "lens parameters ({}, {})",
                self.p, self.q
            )));
        }
        if self.torsion_d < 1 {
            return Err(CensusError::Malformed(format!("torsion order {}", self.torsion_d)));
        }
        if self.alexander.is_zero() {
            return Err(CensusError::Malformed("zero Alexander polynomial".into()));
        }
        if self.torsion_d == 1 && self.meridian_exponent.abs() != self.p {
            return Err(CensusError::Malformed(format!(
                "meridian exponent {} must be ±p when the torsion is trivial",
                self.meridian_exponent
            )));
        }
        Ok(())
    }

    pub fn from_json(line: &str) -> Result<Self, CensusError> {
        let r: FillingRecord = serde_json::from_str(line).map_err(|e| CensusError::Malformed(e.to_string()))?;
        r.validate()?;
        Ok(r)
    }
}

/// `χ` and its residue polynomials `F_0, …, F_{p-1}` with `χ = Σ t^i F_i(t^p)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ResidueDecomposition {
    pub chi: LaurentPoly1,
    pub residues: Vec<LaurentPoly1>,
}

impl ResidueDecomposition {
    pub fn reassemble(&self) -> LaurentPoly1 {
        let p = self.residues.len() as i64;
        self.residues
            .iter()
            .enumerate()
            .fold(LaurentPoly1::zero(), |acc, (i, f)| {
                &acc + &f.substitute_power(p).shift(i as i64)
            })
    }
}

fn geometric_sum(n: i64) -> LaurentPoly1 {
    LaurentPoly1::from_dense(0, &vec![1; n as usize])
}

pub fn chi_from_record(r: &FillingRecord) -> Result<ResidueDecomposition, CensusError> {
    r.validate()?;
    if r.torsion_d != 1 {
        return Err(CensusError::TorsionUnsupported(r.torsion_d));
    }
    if !r.alexander.equivalent_up_to_unit(&r.alexander.reverse()) {
        return Err(CensusError::NonSymmetricInput);
    }
    let p = r.p;
    let delta = r.alexander.shift(-r.alexander.min_exp().unwrap());
    let chi = &delta * &geometric_sum(p);
    let mut residues = vec![LaurentPoly1::zero(); p as usize];
    for (e, c) in chi.terms() {
        residues[e.rem_euclid(p) as usize].add_term(e.div_euclid(p), c);
    }
    Ok(ResidueDecomposition { chi, residues })
}

/// Virtual parameters `(l, u, v)`; `l` is only known up to `l ↔ p - l + 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct VirtualParams {
    pub l: i64,
    pub l_alt: i64,
    pub u: i64,
    pub v: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum FillingVerdict {
    SimpleFilling,
    ConstrainedFilling {
        params: VirtualParams,
        knot: ConstrainedParams,
    },
    GeneralConstrainedFilling {
        params: VirtualParams,
        knot: ConstrainedParams,
    },
    Other,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FillingClassification {
    pub name: String,
    pub n_forms: usize,
    pub verdict: FillingVerdict,
    pub virtual_params: Option<VirtualParams>,
    pub residue_polys: Vec<LaurentPoly1>,
}

fn forms(residues: &[LaurentPoly1]) -> Vec<LaurentPoly1> {
    let mut out: Vec<LaurentPoly1> = residues.iter().map(|f| f.canonical()).collect();
    out.sort();
    out.dedup();
    out
}

fn symmetric_alternating(f: &LaurentPoly1) -> bool {
    f.is_monomial()
        || (f.symmetric_representative().is_some() || f.equivalent_up_to_unit(&f.reverse())) && f.is_alternating()
}

fn virtual_params(p: i64, residues: &[LaurentPoly1], forms: &[LaurentPoly1]) -> Option<VirtualParams> {
    if !residues.iter().all(symmetric_alternating) {
        return None;
    }
    let det = |f: &LaurentPoly1| f.evaluate_at_minus_one().abs();
    match forms {
        [f] => {
            let u = det(f);
            let v = (1..u)
                .filter(|&v| 2 * v < u && gcd(u, v) == 1)
                .find(|&v| TwoBridge::new(u, v).unwrap().alexander().equivalent_up_to_unit(f))?;
            Some(VirtualParams { l: 1, l_alt: 1, u, v })
        }
        [f, g] => {
            let (du, ds) = (det(f).max(det(g)), det(f).min(det(g)));
            if du == ds || (du - ds) % 2 != 0 {
                return None;
            }
            let minority = residues.iter().filter(|r| det(r) == ds).count() as i64;
            let l = minority + 1;
            Some(VirtualParams {
                l,
                l_alt: (p - l + 2).clamp(1, p),
                u: du,
                v: (du - ds) / 2,
            })
        }
        _ => None,
    }
}

fn candidate_knots(p: i64, q: i64, vp: VirtualParams) -> Vec<ConstrainedParams> {
    let mut qs = vec![q.rem_euclid(p), (-q).rem_euclid(p)];
    if let Ok(inv) = mod_inverse(q, p) {
        qs.extend([inv, (-inv).rem_euclid(p)]);
    }
    let mut out = Vec::new();
    for l in [vp.l, vp.l_alt] {
        for &qq in &qs {
            if let Ok(k) = validate_constrained(p, qq, l, vp.u, vp.v) {
                if !out.contains(&k) {
                    out.push(k);
                }
            }
        }
    }
    out
}

pub fn classify_filling(r: &FillingRecord) -> FillingClassification {
    let Ok(dec) = chi_from_record(r) else {
        return FillingClassification {
            name: r.name.clone(),
            n_forms: 0,
            verdict: FillingVerdict::Other,
            virtual_params: None,
            residue_polys: Vec::new(),
        };
    };
    let fs = forms(&dec.residues);
    let mut out = FillingClassification {
        name: r.name.clone(),
        n_forms: fs.len(),
        verdict: FillingVerdict::Other,
        virtual_params: None,
        residue_polys: dec.residues.clone(),
    };
    if dec.residues.iter().all(|f| f.is_monomial()) {
        out.verdict = FillingVerdict::SimpleFilling;
        return out;
    }
    let Some(vp) = virtual_params(r.p, &dec.residues, &fs) else {
        return out;
    };
    out.virtual_params = Some(vp);
    for k in candidate_knots(r.p, r.q, vp) {
        let data = hfk_euler(k);
        if data.h1.d != 1 {
            continue;
        }
        if data.collapsed().equivalent_up_to_unit(&dec.chi) {
            out.verdict = FillingVerdict::ConstrainedFilling { params: vp, knot: k };
            return out;
        }
    }
    out
}

/// The record a knot with torsion-free homology would produce.
pub fn record_from_knot(name: &str, k: ConstrainedParams) -> Result<FillingRecord, CensusError> {
    let data = hfk_euler(k);
    if data.h1.d != 1 {
        return Err(CensusError::TorsionUnsupported(data.h1.d));
    }
    let p = k.p();
    let delta = data
        .collapsed()
        .div_exact(&geometric_sum(p))
        .map_err(|_| CensusError::NonExactDivision)?;
    let delta = delta.symmetric_representative().unwrap_or(delta);
    Ok(FillingRecord {
        name: name.to_string(),
        p,
        q: k.q_prime(),
        torsion_d: 1,
        alexander: delta,
        meridian_exponent: data.m().two_a() / 2,
    })
}

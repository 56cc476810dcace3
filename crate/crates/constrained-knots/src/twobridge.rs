//! Two-bridge knots `b(u, v)`: normal form, Alexander polynomial, signature.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::{gcd, mod_inverse};
use crate::polynomials::LaurentPoly1;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TwoBridgeError {
    #[error("u must be odd and positive, got {0}")]
    InvalidU(i64),
    #[error("gcd({u}, {v}) != 1")]
    NotCoprime { u: i64, v: i64 },
}

/// `b(u, v)` with `u` odd and `0 <= v < u` (`v` in `{0, 1}` when `u = 1`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TwoBridge {
    u: i64,
    v: i64,
}

impl TwoBridge {
    pub fn new(u: i64, v: i64) -> Result<Self, TwoBridgeError> {
        if u < 1 || u % 2 == 0 {
            return Err(TwoBridgeError::InvalidU(u));
        }
        if u == 1 {
            return Ok(TwoBridge { u, v: v.rem_euclid(2) });
        }
        if gcd(u, v) != 1 {
            return Err(TwoBridgeError::NotCoprime { u, v });
        }
        Ok(TwoBridge { u, v: v.rem_euclid(u) })
    }

    pub fn u(&self) -> i64 {
        self.u
    }

    pub fn v(&self) -> i64 {
        self.v
    }

    pub fn is_unknot(&self) -> bool {
        self.u == 1
    }

    /// Odd representative of `v` in `(-u, u)`.
    pub fn odd_v(&self) -> i64 {
        if self.v % 2 == 1 {
            self.v
        } else {
            self.v - self.u
        }
    }

    /// `b(u - 2v, v mod (u - 2v))`, defined when `0 < 2v < u`.
    pub fn skein_partner(&self) -> Option<TwoBridge> {
        let u2 = self.u - 2 * self.v;
        if self.v == 0 || u2 < 1 {
            return None;
        }
        TwoBridge::new(u2, self.v % u2).ok()
    }

    pub fn alexander(&self) -> LaurentPoly1 {
        alexander_two_bridge(*self)
    }

    pub fn signature(&self) -> i64 {
        signature_two_bridge(*self)
    }
}

/// `(-1)^{floor(i v / u)}` for `i = 1..=n`.
pub fn epsilon_sequence(u: i64, v: i64, n: usize) -> Vec<i64> {
    (1..=n as i64).map(|i| epsilon(i, u, v)).collect()
}

pub fn epsilon(i: i64, u: i64, v: i64) -> i64 {
    if (i * v).div_euclid(u).rem_euclid(2) == 0 {
        1
    } else {
        -1
    }
}

pub fn two_bridge_equivalent(k1: TwoBridge, k2: TwoBridge) -> bool {
    if k1.u != k2.u {
        return false;
    }
    if k1.u == 1 {
        return true;
    }
    let inv = mod_inverse(k2.v, k2.u).expect("normalized parameters are coprime");
    k1.v == k2.v || k1.v == inv
}

/// Symmetrized Alexander polynomial, with `Δ(1) = 1`.
pub fn alexander_two_bridge(k: TwoBridge) -> LaurentPoly1 {
    if k.is_unknot() {
        return LaurentPoly1::one();
    }
    let (u, v) = (k.u, k.odd_v());
    let half_sigma = signature_two_bridge(k) / 2;
    let mut out = LaurentPoly1::zero();
    let mut e = 0;
    for i in 0..u {
        if i > 0 {
            e += epsilon(i, u, v);
        }
        out.add_term(e - half_sigma, if i % 2 == 0 { 1 } else { -1 });
    }
    out
}

pub fn signature_two_bridge(k: TwoBridge) -> i64 {
    if k.is_unknot() {
        return 0;
    }
    let v = k.odd_v();
    (1..k.u).map(|i| epsilon(i, k.u, v)).sum()
}

//! Arithmetic of the imaginary quadratic field Q(√−d) and its ring of
//! integers 𝒪 = ℤ + ℤω.
//!
//! For square-free d > 0 the ring of integers is ℤ + ℤω with ω = √−d when
//! d ≡ 1, 2 (mod 4) and ω = (1 + √−d)/2 when d ≡ 3 (mod 4). The norm
//! N(a + bω) is then the positive definite integer form a² + d·b² or
//! a² + ab + ((1+d)/4)·b² respectively.
//!
//! Everything fits in signed 64-bit arithmetic for the supported range
//! (d < 10⁷, bounds below 10⁹); debug builds assert on overflow.

use crate::classgroup::BinaryQF;
use crate::{Error, Result};

/// Which generator ω the ring of integers ℤ + ℤω uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaKind {
    /// ω = √−d, for d ≡ 1, 2 (mod 4); field discriminant −4d.
    SqrtMinusD,
    /// ω = (1 + √−d)/2, for d ≡ 3 (mod 4); field discriminant −d.
    HalfOnePlusSqrtMinusD,
}

/// The field Q(√−d): d, the ω convention, the discriminant and the
/// coefficients of the integer norm form.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FieldParams {
    pub d: i64,
    pub omega_kind: OmegaKind,
    pub discriminant: i64,
    /// (1, e, c) with N(a + bω) = a² + e·ab + c·b².
    pub norm_coeffs: (i64, i64, i64),
}

impl FieldParams {
    /// Build the field parameters for a square-free d ≥ 1.
    ///
    /// Square-freeness is checked by trial division up to √d.
    pub fn new(d: i64) -> Result<Self> {
        if d <= 0 {
            return Err(Error::NonPositive(d));
        }
        if let Some(p) = square_divisor(d) {
            return Err(Error::NotSquareFree { d, p });
        }
        Ok(if d % 4 == 3 {
            FieldParams {
                d,
                omega_kind: OmegaKind::HalfOnePlusSqrtMinusD,
                discriminant: -d,
                norm_coeffs: (1, 1, (1 + d) / 4),
            }
        } else {
            FieldParams {
                d,
                omega_kind: OmegaKind::SqrtMinusD,
                discriminant: -4 * d,
                norm_coeffs: (1, 0, d),
            }
        })
    }

    /// N(a + bω); nonnegative, and zero only at a = b = 0.
    pub fn norm(&self, a: i64, b: i64) -> i64 {
        let (_, e, c) = self.norm_coeffs;
        a * a + e * a * b + c * b * b
    }

    /// The norm form as a binary quadratic form. This is also the principal
    /// reduced form of the field discriminant.
    pub fn norm_form(&self) -> BinaryQF {
        let (a, b, c) = self.norm_coeffs;
        BinaryQF::new(a, b, c)
    }
}

/// Smallest p ≥ 2 with p² | d, if any. When present it is always prime
/// (a smaller prime square divisor would have been found first).
fn square_divisor(d: i64) -> Option<i64> {
    let mut p = 2;
    while p * p <= d {
        if d % (p * p) == 0 {
            return Some(p);
        }
        p += 1;
    }
    None
}

/// True when d ≥ 1 and no prime square divides d.
pub fn is_square_free(d: i64) -> bool {
    d >= 1 && square_divisor(d).is_none()
}

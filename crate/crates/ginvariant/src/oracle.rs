//! Brute-force verification path for the block forms.
//!
//! Rather than rewriting the congruence conditions into a block form, this
//! module enumerates the ring elements γ = a + bω directly, keeps those
//! satisfying the divisibility conditions attached to the prime ideal
//! 𝔓 = 𝒪p + 𝒪(s + tω), and records the achievable values N(γ)/p:
//!
//! - d ≡ 1, 2 (mod 4): p | (s·a − d·t·b) and p | (t·a + s·b);
//! - d ≡ 3 (mod 4):    p | (s·a − ((d+1)/4)·t·b) and p | (t·a + (s+t)·b).
//!
//! The support so obtained must equal the block-form support exactly; the
//! two paths share only the raw lattice-point enumeration, none of the
//! variable substitutions. The scan is a factor ~p² slower than the
//! transformed path, so it is a harness, not the production route.

use crate::field::{FieldParams, OmegaKind};
use crate::ginv::{CaseCode, PrimeCase};
use crate::repset::{self, RepSupport};
use crate::{Error, Result};

/// Which of the two conjugate prime ideals above a split prime to use. For
/// ramified primes both variants name the same ideal.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Plus,
    Minus,
}

/// Generators of a prime ideal above p: 𝔓 = 𝒪p + 𝒪(s + tω).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IdealGenerators {
    pub p: i64,
    pub s: i64,
    pub t: i64,
    pub variant: Variant,
}

/// The generator (s, t) for a case; Minus takes the conjugate generator
/// (the b ↦ −b mirror). Construction checks p | N(s + tω), i.e. that s + tω
/// really lies in a prime ideal above p.
pub fn ideal_generators(pc: &PrimeCase, fp: &FieldParams, variant: Variant) -> Result<IdealGenerators> {
    let n = pc.n.unwrap_or(0);
    let (s, t) = match (pc.case, variant) {
        // ω itself, with ω = √−d
        (CaseCode::RamifiedD12, Variant::Plus) => (0, 1),
        (CaseCode::RamifiedD12, Variant::Minus) => (0, -1),
        // √−d = −1 + 2ω, with ω = (1 + √−d)/2
        (CaseCode::RamifiedD3, Variant::Plus) => (-1, 2),
        (CaseCode::RamifiedD3, Variant::Minus) => (1, -2),
        (CaseCode::TwoD1Mod4, Variant::Plus) => (1, 1),
        (CaseCode::TwoD1Mod4, Variant::Minus) => (1, -1),
        (CaseCode::TwoD7Mod8, Variant::Plus) => (0, 1),
        (CaseCode::TwoD7Mod8, Variant::Minus) => (1, -1),
        (CaseCode::SplitD12, Variant::Plus) => (n, 1),
        (CaseCode::SplitD12, Variant::Minus) => (n, -1),
        (CaseCode::SplitD3, Variant::Plus) => ((n - 1) / 2, 1),
        (CaseCode::SplitD3, Variant::Minus) => (-(n + 1) / 2, 1),
    };
    let norm = fp.norm(s, t);
    if norm % pc.p != 0 {
        return Err(Error::InvariantViolation(format!(
            "generator {s}+{t}w has norm {norm} not divisible by {}",
            pc.p
        )));
    }
    Ok(IdealGenerators { p: pc.p, s, t, variant })
}

/// Support, below `bound`, of N(γ)/p over all γ = a + bω satisfying the
/// ideal's divisibility conditions. Enumerates the norm ellipse
/// N(a, b) < p·bound with the same integer-exact interval logic the block
/// path uses, then filters point by point. Every admitted γ must have
/// p | N(γ); a violation means the conditions are wrong.
pub fn term_values(ig: &IdealGenerators, fp: &FieldParams, bound: usize) -> Result<RepSupport> {
    let p = ig.p;
    let (s, t) = (ig.s, ig.t);
    let quarter = (1 + fp.d) / 4; // meaningful only when d ≡ 3 (mod 4)
    let norm_form = fp.norm_form();
    let mut out = RepSupport::new(bound);
    let mut bad = None;
    repset::for_each_point(&norm_form, p * bound as i64, |a, b, v| {
        let admitted = match fp.omega_kind {
            OmegaKind::SqrtMinusD => {
                (s * a - fp.d * t * b) % p == 0 && (t * a + s * b) % p == 0
            }
            OmegaKind::HalfOnePlusSqrtMinusD => {
                (s * a - quarter * t * b) % p == 0 && (t * a + (s + t) * b) % p == 0
            }
        };
        if admitted {
            if v % p != 0 {
                bad.get_or_insert(Error::InexactQuotient { a, b, norm: v, p });
                return;
            }
            out.insert((v / p) as usize);
        }
    });
    match bad {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

/// The r in [1, C) whose value is not a sum of m admitted terms: complement
/// of the m-fold sumset of the term-value support. Must agree with the
/// block-form exception set for the same case.
pub fn oracle_exception_set(
    ig: &IdealGenerators,
    fp: &FieldParams,
    c: i64,
    m: u32,
) -> Result<Vec<i64>> {
    let terms = term_values(ig, fp, c as usize)?;
    let powered = repset::power_support(&terms, m);
    Ok(powered.missing_from(1).into_iter().map(|k| k as i64).collect())
}

//! Cross-checks gating every computed case.
//!
//! Three suites run per (d, p) case:
//!
//! 1. oracle equivalence — the raw congruence scan reproduces the block
//!    form's support on [0, C) exactly;
//! 2. conjugate symmetry — for split primes, both conjugate ideals give the
//!    same term values;
//! 3. bound coverage — every r in [C, C + margin) is a sum of four norms,
//!    i.e. the threshold C really is a threshold.
//!
//! Failures carry the (d, p, case) triple so a sweep can report exactly
//! which case broke instead of aborting on the first one.

use std::collections::BTreeSet;

use crate::classgroup;
use crate::field::{is_square_free, FieldParams};
use crate::ginv::{self, CaseCode, PrimeCase};
use crate::oracle::{self, Variant};
use crate::repset::{self, RepSupport};
use crate::Result;

/// Which suite a failure came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckKind {
    OracleEquivalence,
    ConjugateSymmetry,
    BoundCoverage,
}

impl CheckKind {
    pub fn label(self) -> &'static str {
        match self {
            CheckKind::OracleEquivalence => "oracle-equivalence",
            CheckKind::ConjugateSymmetry => "conjugate-symmetry",
            CheckKind::BoundCoverage => "bound-coverage",
        }
    }
}

/// One failed check, identified by its (d, p, case) triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckFailure {
    pub d: i64,
    pub p: i64,
    pub case: CaseCode,
    pub kind: CheckKind,
    pub detail: String,
}

impl std::fmt::Display for CheckFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "FAIL {} d={} p={} {}: {}",
            self.kind.label(),
            self.d,
            self.p,
            self.case,
            self.detail
        )
    }
}

fn first_difference(a: &RepSupport, b: &RepSupport) -> Option<usize> {
    (0..a.bound()).find(|&k| a.contains(k) != b.contains(k))
}

/// Run all applicable checks for one case; collects failures rather than
/// erroring so a sweep can continue past a broken case.
pub fn check_prime_case(fp: &FieldParams, pc: &PrimeCase, margin: i64) -> Result<Vec<CheckFailure>> {
    let mut failures = Vec::new();
    let fail = |kind, detail: String| CheckFailure {
        d: fp.d,
        p: pc.p,
        case: pc.case,
        kind,
        detail,
    };

    let block_support = repset::binary_support(&pc.block, pc.bound as usize)?;
    let plus = oracle::ideal_generators(pc, fp, Variant::Plus)?;
    let plus_terms = oracle::term_values(&plus, fp, pc.bound as usize)?;
    if plus_terms != block_support {
        let at = first_difference(&plus_terms, &block_support);
        failures.push(fail(
            CheckKind::OracleEquivalence,
            format!("congruence scan and block {} first differ at {at:?}", pc.block),
        ));
    }

    if pc.case.is_split() {
        let minus = oracle::ideal_generators(pc, fp, Variant::Minus)?;
        let minus_terms = oracle::term_values(&minus, fp, pc.bound as usize)?;
        if minus_terms != plus_terms {
            let at = first_difference(&minus_terms, &plus_terms);
            failures.push(fail(
                CheckKind::ConjugateSymmetry,
                format!("conjugate ideals first differ at {at:?}"),
            ));
        }
    }

    let wide = repset::binary_support(&pc.block, (pc.bound + margin) as usize)?;
    let four_fold = repset::power_support(&wide, 4);
    if let Some(r) = (pc.bound..pc.bound + margin).find(|&r| !four_fold.contains(r as usize)) {
        failures.push(fail(
            CheckKind::BoundCoverage,
            format!("r={r} >= C={} is not a sum of four norms", pc.bound),
        ));
    }

    Ok(failures)
}

/// Tally of a verification sweep.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyOutcome {
    /// Square-free d visited.
    pub fields: u32,
    /// Deduplicated (d, p) cases checked.
    pub cases: u32,
    pub failures: Vec<CheckFailure>,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Sweep every square-free d ≤ d_max, checking each deduplicated class
/// prime against all three suites.
pub fn verify_range(d_max: i64, search_cap: i64, margin: i64) -> Result<VerifyOutcome> {
    let mut outcome = VerifyOutcome { fields: 0, cases: 0, failures: Vec::new() };
    for d in 1..=d_max {
        if !is_square_free(d) {
            continue;
        }
        let fp = FieldParams::new(d)?;
        outcome.fields += 1;
        let mut primes = BTreeSet::new();
        for rep in classgroup::class_representatives(&fp, search_cap)? {
            let Some(p) = rep.prime else { continue };
            if !primes.insert(p) {
                continue;
            }
            let pc = ginv::prime_case(p, &fp)?;
            outcome.cases += 1;
            outcome.failures.extend(check_prime_case(&fp, &pc, margin)?);
        }
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classgroup::BinaryQF;

    #[test]
    fn clean_cases_pass() {
        let fp = FieldParams::new(87).unwrap();
        for p in [2, 3, 7] {
            let pc = ginv::prime_case(p, &fp).unwrap();
            assert!(check_prime_case(&fp, &pc, 512).unwrap().is_empty(), "p={p}");
        }
    }

    #[test]
    fn corrupted_block_is_caught_and_named() {
        let fp = FieldParams::new(87).unwrap();
        let mut pc = ginv::prime_case(2, &fp).unwrap();
        pc.block = BinaryQF::new(pc.block.a, pc.block.b, pc.block.c + 1);
        let failures = check_prime_case(&fp, &pc, 512).unwrap();
        assert!(!failures.is_empty());
        let f = &failures[0];
        assert_eq!((f.d, f.p), (87, 2));
        assert_eq!(f.case, ginv::CaseCode::TwoD7Mod8);
        assert_eq!(f.kind, CheckKind::OracleEquivalence);
        assert!(f.to_string().contains("d=87 p=2 case 4"), "{f}");
    }

    #[test]
    fn corrupted_bound_is_caught_by_coverage() {
        // an understated C admits r just below the real threshold that are
        // not sums of four norms
        let fp = FieldParams::new(87).unwrap();
        let mut pc = ginv::prime_case(2, &fp).unwrap();
        pc.bound = 9; // true C is 44; r=9 is in F(2)
        let failures = check_prime_case(&fp, &pc, 8).unwrap();
        assert!(failures.iter().any(|f| f.kind == CheckKind::BoundCoverage), "{failures:?}");
    }

    #[test]
    fn verify_range_zero_is_vacuous() {
        let outcome = verify_range(0, 10_000, 512).unwrap();
        assert_eq!(outcome.fields, 0);
        assert_eq!(outcome.cases, 0);
        assert!(outcome.passed());
    }

    #[test]
    fn verify_range_to_40_passes() {
        let outcome = verify_range(40, 10_000, 256).unwrap();
        assert!(outcome.passed(), "{:?}", outcome.failures);
        assert!(outcome.cases > 20);
    }
}

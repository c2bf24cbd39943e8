//! The ideal class group of Q(√−d) through reduced binary quadratic forms
//! of the field discriminant, and a prime representative for every
//! non-principal class.
//!
//! Positive definite forms (a, b, c) of discriminant Δ = b² − 4ac, taken up
//! to the reduction conditions |b| ≤ a ≤ c (with b ≥ 0 on the boundary),
//! biject with the ideal classes of the field of discriminant Δ. Since d is
//! square-free, Δ is fundamental and every form of discriminant Δ is
//! primitive, so no content checks are needed.
//!
//! Composition (the group law) is deliberately not implemented: the
//! analysis only consumes the list of class representatives, never
//! products.

use crate::field::FieldParams;
use crate::{Error, Result};

/// An integral binary quadratic form a·x² + b·xy + c·y².
///
/// The derived ordering is lexicographic in (a, b, c), which is the order
/// reduced-form lists are presented in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryQF {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

impl BinaryQF {
    pub const fn new(a: i64, b: i64, c: i64) -> Self {
        BinaryQF { a, b, c }
    }

    pub fn eval(&self, x: i64, y: i64) -> i64 {
        self.a * x * x + self.b * x * y + self.c * y * y
    }

    /// b² − 4ac; negative for positive definite forms.
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn is_positive_definite(&self) -> bool {
        self.a > 0 && self.discriminant() < 0
    }

    /// |b| ≤ a ≤ c, with b ≥ 0 whenever |b| = a or a = c.
    pub fn is_reduced(&self) -> bool {
        self.is_positive_definite()
            && self.b.abs() <= self.a
            && self.a <= self.c
            && (self.b >= 0 || (self.b.abs() != self.a && self.a != self.c))
    }
}

impl std::fmt::Display for BinaryQF {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({} {} {})", self.a, self.b, self.c)
    }
}

/// One ideal class: its reduced form, the smallest prime the form properly
/// represents (non-principal classes only), and the index of the inverse
/// class in the same list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassRep {
    pub form: BinaryQF,
    pub is_principal: bool,
    /// Smallest prime properly represented by `form`; `None` for the
    /// principal class.
    pub prime: Option<i64>,
    /// Index of the class of (a, −b, c); equals the own index for
    /// self-inverse (ambiguous) classes.
    pub conjugate_partner: usize,
}

/// All reduced positive definite forms of the field discriminant, sorted
/// lexicographically by (a, b, c). The principal form appears exactly once.
pub fn reduced_forms(fp: &FieldParams) -> Vec<BinaryQF> {
    let disc = fp.discriminant;
    let a_max = ((-disc) / 3).isqrt();
    let mut forms = Vec::new();
    for a in 1..=a_max {
        for b in -a..=a {
            let num = b * b - disc;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a {
                continue;
            }
            if b < 0 && (-b == a || a == c) {
                continue;
            }
            forms.push(BinaryQF::new(a, b, c));
        }
    }
    forms.sort();
    forms
}

/// The class number h(Δ): the number of reduced forms.
pub fn class_number(fp: &FieldParams) -> u32 {
    reduced_forms(fp).len() as u32
}

/// Smallest prime p ≤ search_cap properly represented by the form: p =
/// form(x, y) with gcd(x, y) = 1. Enumerates the lattice points of the
/// ellipse form(x, y) ≤ cap and tests primality by trial division; the cap
/// escalates from a small start because the least prime of a class is tiny
/// in practice.
pub fn prime_representative(form: &BinaryQF, fp: &FieldParams, search_cap: i64) -> Result<i64> {
    debug_assert_eq!(form.discriminant(), fp.discriminant);
    debug_assert!(form.is_reduced());
    let mut cap = 64.min(search_cap);
    loop {
        let mut best: Option<i64> = None;
        crate::repset::for_each_point(form, cap + 1, |x, y, v| {
            if v > 1 && gcd(x, y) == 1 && best.is_none_or(|b| v < b) && is_prime(v) {
                best = Some(v);
            }
        });
        if let Some(p) = best {
            return Ok(p);
        }
        if cap >= search_cap {
            return Err(Error::CapExceeded {
                a: form.a,
                b: form.b,
                c: form.c,
                cap: search_cap,
            });
        }
        cap = (cap * 4).min(search_cap);
    }
}

/// Least positive n with n² ≡ −d (mod p). For d ≡ 3 (mod 4) the least such
/// odd n, searched over 1, 3, 5, …, 2p−1.
///
/// Requires p odd with p ∤ d; fails with `NonResidue` when −d is not a
/// square mod p (p inert).
pub fn least_sqrt_neg_d(p: i64, fp: &FieldParams) -> Result<i64> {
    debug_assert!(p > 2 && fp.d % p != 0);
    let target = (-fp.d).rem_euclid(p);
    let step = if fp.d % 4 == 3 { 2 } else { 1 };
    let mut n = 1;
    while n < 2 * p {
        if (n * n) % p == target {
            return Ok(n);
        }
        n += step;
    }
    Err(Error::NonResidue { d: fp.d, p })
}

/// One `ClassRep` per ideal class, in reduced-form order, with primes
/// resolved for every non-principal class.
pub fn class_representatives(fp: &FieldParams, search_cap: i64) -> Result<Vec<ClassRep>> {
    let forms = reduced_forms(fp);
    let principal = fp.norm_form();
    let mut reps = Vec::with_capacity(forms.len());
    for (index, form) in forms.iter().enumerate() {
        let conj = BinaryQF::new(form.a, -form.b, form.c);
        let conjugate_partner = forms.iter().position(|f| *f == conj).unwrap_or(index);
        let is_principal = *form == principal;
        let prime = if is_principal {
            None
        } else {
            Some(prime_representative(form, fp, search_cap)?)
        };
        reps.push(ClassRep {
            form: *form,
            is_principal,
            prime,
            conjugate_partner,
        });
    }
    Ok(reps)
}

/// Deterministic primality by trial division; fine for the prime sizes this
/// crate meets (well below 2³²).
pub fn is_prime(n: i64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut f = 3;
    while f * f <= n {
        if n % f == 0 {
            return false;
        }
        f += 2;
    }
    true
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::is_square_free;

    /// Independent class-number oracle: a plain triple scan over (a, b, c)
    /// testing b² − 4ac = Δ and the reduction inequalities directly.
    fn naive_reduced_count(disc: i64) -> u32 {
        let mut count = 0;
        let a_limit = ((-disc) / 3).isqrt() + 1;
        for a in 1..=a_limit {
            for b in -a..=a {
                let c_hi = (b * b - disc) / (4 * a) + 1;
                for c in a..=c_hi {
                    if b * b - 4 * a * c != disc {
                        continue;
                    }
                    if b < 0 && (-b == a || a == c) {
                        continue;
                    }
                    count += 1;
                }
            }
        }
        count
    }

    /// Kronecker symbol (D|p) for prime p, used to check that represented
    /// primes are never inert.
    fn kronecker(d: i64, p: i64) -> i64 {
        if p == 2 {
            return match d.rem_euclid(8) {
                0 | 2 | 4 | 6 => 0,
                1 | 7 => 1,
                _ => -1,
            };
        }
        if d % p == 0 {
            return 0;
        }
        let mut r = 1i64;
        let (mut base, mut exp) = (d.rem_euclid(p), (p - 1) / 2);
        while exp > 0 {
            if exp & 1 == 1 {
                r = r * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        if r == 1 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn reduced_forms_d87() {
        let fp = FieldParams::new(87).unwrap();
        let forms = reduced_forms(&fp);
        assert_eq!(forms.len(), 6);
        assert_eq!(
            forms,
            [(1, 1, 22), (2, -1, 11), (2, 1, 11), (3, 3, 8), (4, -3, 6), (4, 3, 6)]
                .map(|(a, b, c)| BinaryQF::new(a, b, c))
        );
    }

    #[test]
    fn reduced_forms_d14() {
        let fp = FieldParams::new(14).unwrap();
        let forms = reduced_forms(&fp);
        assert_eq!(
            forms,
            [(1, 0, 14), (2, 0, 7), (3, -2, 5), (3, 2, 5)].map(|(a, b, c)| BinaryQF::new(a, b, c))
        );
    }

    #[test]
    fn reduced_forms_d1() {
        let fp = FieldParams::new(1).unwrap();
        assert_eq!(reduced_forms(&fp), vec![BinaryQF::new(1, 0, 1)]);
    }

    #[test]
    fn class_numbers() {
        assert_eq!(class_number(&FieldParams::new(87).unwrap()), 6);
        assert_eq!(class_number(&FieldParams::new(907).unwrap()), 3);
        assert_eq!(class_number(&FieldParams::new(14).unwrap()), 4);
        for d in [1, 2, 3, 7, 11, 19, 43, 67, 163] {
            assert_eq!(class_number(&FieldParams::new(d).unwrap()), 1, "d={d}");
        }
    }

    #[test]
    fn class_number_matches_naive_scan_to_200() {
        for d in 1..=200 {
            if !is_square_free(d) {
                continue;
            }
            let fp = FieldParams::new(d).unwrap();
            assert_eq!(class_number(&fp), naive_reduced_count(fp.discriminant), "d={d}");
        }
    }

    #[test]
    fn forms_carry_the_field_discriminant() {
        for d in 1..=200 {
            if !is_square_free(d) {
                continue;
            }
            let fp = FieldParams::new(d).unwrap();
            for f in reduced_forms(&fp) {
                assert!(f.is_reduced());
                assert_eq!(f.discriminant(), fp.discriminant);
            }
        }
    }

    #[test]
    fn prime_representatives_d87() {
        let fp = FieldParams::new(87).unwrap();
        let reps = class_representatives(&fp, 10_000).unwrap();
        let mut primes: Vec<i64> = reps.iter().filter_map(|r| r.prime).collect();
        primes.sort();
        assert_eq!(primes, [2, 2, 3, 7, 7]);
    }

    #[test]
    fn prime_representatives_d14() {
        let fp = FieldParams::new(14).unwrap();
        assert_eq!(prime_representative(&BinaryQF::new(2, 0, 7), &fp, 10_000).unwrap(), 2);
        assert_eq!(prime_representative(&BinaryQF::new(3, 2, 5), &fp, 10_000).unwrap(), 3);
    }

    #[test]
    fn prime_representative_cap_exceeded() {
        let fp = FieldParams::new(14).unwrap();
        let err = prime_representative(&BinaryQF::new(2, 0, 7), &fp, 1).unwrap_err();
        assert!(matches!(err, Error::CapExceeded { cap: 1, .. }));
    }

    #[test]
    fn represented_primes_are_never_inert() {
        for d in 1..=120 {
            if !is_square_free(d) {
                continue;
            }
            let fp = FieldParams::new(d).unwrap();
            for rep in class_representatives(&fp, 10_000).unwrap() {
                if let Some(p) = rep.prime {
                    assert!(kronecker(fp.discriminant, p) >= 0, "d={d} p={p}");
                }
            }
        }
    }

    #[test]
    fn conjugate_partner_is_an_involution() {
        for d in 1..=200 {
            if !is_square_free(d) {
                continue;
            }
            let fp = FieldParams::new(d).unwrap();
            let forms = reduced_forms(&fp);
            let partners: Vec<usize> = forms
                .iter()
                .enumerate()
                .map(|(i, f)| {
                    let conj = BinaryQF::new(f.a, -f.b, f.c);
                    forms.iter().position(|g| *g == conj).unwrap_or(i)
                })
                .collect();
            for (i, &j) in partners.iter().enumerate() {
                assert_eq!(partners[j], i, "d={d} i={i}");
                // interior |b|: the conjugate is a distinct reduced form
                let f = forms[i];
                if f.b != 0 && f.b.abs() < f.a && f.a < f.c {
                    assert_ne!(j, i, "d={d} form {f}");
                }
            }
        }
    }

    #[test]
    fn least_sqrt_examples() {
        let f87 = FieldParams::new(87).unwrap();
        assert_eq!(least_sqrt_neg_d(7, &f87).unwrap(), 5);
        let f10 = FieldParams::new(10).unwrap();
        assert_eq!(least_sqrt_neg_d(7, &f10).unwrap(), 2);
        assert_eq!(least_sqrt_neg_d(5, &f87), Err(Error::NonResidue { d: 87, p: 5 }));
    }

    #[test]
    fn least_sqrt_is_odd_for_three_mod_four() {
        let fp = FieldParams::new(907).unwrap();
        let n = least_sqrt_neg_d(13, &fp).unwrap();
        assert_eq!(n, 9);
        assert_eq!(n % 2, 1);
        assert_eq!((n * n + 907) % 13, 0);
    }

    #[test]
    fn trial_division_primality() {
        assert!(is_prime(2));
        assert!(is_prime(7919));
        assert!(!is_prime(1));
        assert!(!is_prime(0));
        assert!(!is_prime(7921)); // 89^2
    }
}

//! Representation supports of positive definite binary quadratic forms, and
//! their combination under orthogonal sums.
//!
//! The set of integers below a bound represented by a form is held as a
//! bitset ([`RepSupport`]). The support of an orthogonal sum of forms is the
//! truncated sumset of the block supports, computed word-parallel: for each
//! set bit i of the sparser operand, OR in the other operand shifted left by
//! i. That makes the four- and five-fold powers cheap even for bounds in the
//! millions, which is the dominant cost of the whole analysis.
//!
//! [`RepCounts`] carries actual representation numbers. The boolean path is
//! the production one; counts exist to cross-validate it (the support of a
//! convolution must equal the sumset of the supports).
//!
//! Lattice points are enumerated y-major. The x-interval per y comes from
//! the integer square root of the quadratic discriminant, widened by one and
//! filtered by exact evaluation, so no boundary point is lost to rounding.

use crate::classgroup::BinaryQF;
use crate::{Error, Result};

const WORD: usize = 64;

/// Integers in [0, bound) represented by a form: bit k set ⇔ k is hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepSupport {
    bound: usize,
    words: Vec<u64>,
}

impl RepSupport {
    /// Empty set over [0, bound); bound must be at least 1.
    pub fn new(bound: usize) -> Self {
        assert!(bound >= 1, "support bound must be positive");
        RepSupport {
            bound,
            words: vec![0; bound.div_ceil(WORD)],
        }
    }

    pub fn from_values(bound: usize, values: &[usize]) -> Self {
        let mut s = RepSupport::new(bound);
        for &v in values {
            s.insert(v);
        }
        s
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn contains(&self, k: usize) -> bool {
        k < self.bound && (self.words[k / WORD] >> (k % WORD)) & 1 == 1
    }

    pub fn insert(&mut self, k: usize) {
        debug_assert!(k < self.bound);
        self.words[k / WORD] |= 1u64 << (k % WORD);
    }

    /// Number of represented values.
    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Represented values in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.bound).filter(move |&k| self.contains(k))
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Values in [from, bound) that are NOT represented, ascending.
    pub fn missing_from(&self, from: usize) -> Vec<usize> {
        (from..self.bound).filter(|&k| !self.contains(k)).collect()
    }

    /// Set bits in ascending order, skipping zero words.
    fn iter_set_bits(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(j, &w)| {
            std::iter::successors(if w == 0 { None } else { Some(w) }, |&w| {
                let w = w & (w - 1);
                (w != 0).then_some(w)
            })
            .map(move |w| j * WORD + w.trailing_zeros() as usize)
        })
    }

    /// Bit mask of the top (possibly partial) word.
    fn top_mask(&self) -> u64 {
        match self.bound % WORD {
            0 => !0,
            r => (1u64 << r) - 1,
        }
    }

    /// Smallest word index k such that words[k..] are completely set,
    /// scanning down from a previous value (the set only grows, so the
    /// saturated tail only extends downward).
    fn saturated_word_from(&self, prev: usize) -> usize {
        let n = self.words.len();
        let mut k = prev.min(n);
        while k > 0 {
            let expect = if k == n { self.top_mask() } else { !0 };
            if self.words[k - 1] == expect {
                k -= 1;
            } else {
                break;
            }
        }
        k
    }

    /// self |= (other << shift), truncated at the bound; words at index
    /// `upper` and beyond are known all-ones already and are skipped.
    fn or_shifted_below(&mut self, other: &RepSupport, shift: usize, upper: usize) {
        debug_assert_eq!(self.bound, other.bound);
        let (q, r) = (shift / WORD, shift % WORD);
        let hi = upper.min(self.words.len());
        if r == 0 {
            for j in q..hi {
                self.words[j] |= other.words[j - q];
            }
        } else {
            for j in q..hi {
                let mut w = other.words[j - q] << r;
                if j > q {
                    w |= other.words[j - q - 1] >> (WORD - r);
                }
                self.words[j] |= w;
            }
        }
        if hi == self.words.len() {
            let mask = self.top_mask();
            *self.words.last_mut().unwrap() &= mask;
        }
    }
}

/// Truncated sumset: bit k of the result ⇔ k = i + j with bit i of s1 and
/// bit j of s2 set. Equals the support of the orthogonal sum of the
/// underlying forms, below the common bound.
///
/// Word-parallel: for each set bit i of the sparser operand, ascending, OR
/// in the other operand shifted left by i. Once the output is completely
/// set from some position L on, a shift i ≥ L lands entirely inside the
/// saturated tail and changes nothing, so the loop stops there; sums of
/// form supports saturate almost totally (the complement is the exception
/// set), which keeps large bounds cheap.
pub fn sumset(s1: &RepSupport, s2: &RepSupport) -> Result<RepSupport> {
    if s1.bound != s2.bound {
        return Err(Error::BoundMismatch {
            left: s1.bound,
            right: s2.bound,
        });
    }
    let (outer, inner) = if s1.len() <= s2.len() { (s1, s2) } else { (s2, s1) };
    let mut out = RepSupport::new(s1.bound);
    let mut sat_word = out.words.len();
    for i in outer.iter_set_bits() {
        if i >= sat_word * WORD {
            break;
        }
        out.or_shifted_below(inner, i, sat_word);
        sat_word = out.saturated_word_from(sat_word);
    }
    Ok(out)
}

/// m-fold sumset of s with itself (m ≥ 1): the support of the orthogonal
/// sum of m copies of the underlying form. Chains m−1 sumsets against s, so
/// every step iterates the set bits of s itself, the sparsest operand
/// around.
pub fn power_support(s: &RepSupport, m: u32) -> RepSupport {
    assert!(m >= 1);
    let mut acc = s.clone();
    for _ in 1..m {
        acc = sumset(&acc, s).expect("power operands share a bound");
    }
    acc
}

/// Representation numbers below a bound: counts[k] = #{(x, y) : f(x, y) = k}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepCounts {
    counts: Vec<u64>,
}

impl RepCounts {
    pub fn bound(&self) -> usize {
        self.counts.len()
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// Identity for convolution: one representation of 0, nothing else.
    pub fn delta(bound: usize) -> Self {
        assert!(bound >= 1);
        let mut counts = vec![0; bound];
        counts[0] = 1;
        RepCounts { counts }
    }

    /// The indices with a nonzero count.
    pub fn support(&self) -> RepSupport {
        let mut s = RepSupport::new(self.counts.len());
        for (k, &c) in self.counts.iter().enumerate() {
            if c > 0 {
                s.insert(k);
            }
        }
        s
    }
}

/// Visit every lattice point with f(x, y) < bound exactly once, y-major,
/// passing (x, y, f(x, y)).
pub(crate) fn for_each_point(f: &BinaryQF, bound: i64, mut visit: impl FnMut(i64, i64, i64)) {
    debug_assert!(f.is_positive_definite());
    let (a, b, c) = (f.a, f.b, f.c);
    let disc = 4 * a * c - b * b;
    let m = bound - 1;
    if m < 0 {
        return;
    }
    // min over x of f(x, y) is (disc/4a)·y², so y² ≤ 4am/disc
    let y_max = (4 * a * m / disc).isqrt();
    for y in -y_max..=y_max {
        // f(x, y) ≤ m ⇔ x between the roots of a·x² + by·x + (cy² − m)
        let rad = 4 * a * m - disc * y * y;
        let s = rad.isqrt();
        let lo = (-b * y - s).div_euclid(2 * a) - 1;
        let hi = (-b * y + s).div_euclid(2 * a) + 1;
        for x in lo..=hi {
            let v = a * x * x + b * x * y + c * y * y;
            if v <= m {
                visit(x, y, v);
            }
        }
    }
}

/// Support below `bound` of a positive definite binary form.
pub fn binary_support(f: &BinaryQF, bound: usize) -> Result<RepSupport> {
    if !f.is_positive_definite() {
        return Err(Error::NotPositiveDefinite { a: f.a, b: f.b, c: f.c });
    }
    let mut s = RepSupport::new(bound);
    for_each_point(f, bound as i64, |_, _, v| s.insert(v as usize));
    Ok(s)
}

/// Representation numbers below `bound` of a positive definite binary form.
pub fn binary_counts(f: &BinaryQF, bound: usize) -> Result<RepCounts> {
    if !f.is_positive_definite() {
        return Err(Error::NotPositiveDefinite { a: f.a, b: f.b, c: f.c });
    }
    assert!(bound >= 1);
    let mut counts = vec![0u64; bound];
    for_each_point(f, bound as i64, |_, _, v| counts[v as usize] += 1);
    Ok(RepCounts { counts })
}

/// Truncated Cauchy product of two count arrays: the representation numbers
/// of the orthogonal sum of the underlying forms.
pub fn counts_convolve(c1: &RepCounts, c2: &RepCounts) -> Result<RepCounts> {
    let bound = c1.counts.len();
    if bound != c2.counts.len() {
        return Err(Error::BoundMismatch {
            left: bound,
            right: c2.counts.len(),
        });
    }
    let mut out = vec![0u64; bound];
    for (i, &x) in c1.counts.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in c2.counts.iter().take(bound - i).enumerate() {
            out[i + j] += x * y;
        }
    }
    Ok(RepCounts { counts: out })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn qf(a: i64, b: i64, c: i64) -> BinaryQF {
        BinaryQF::new(a, b, c)
    }

    /// Naive support oracle: double loop over |x|, |y| ≤ bound.
    fn naive_support(f: &BinaryQF, bound: i64) -> Vec<usize> {
        let mut hit = vec![false; bound as usize];
        for x in -bound..=bound {
            for y in -bound..=bound {
                let v = f.eval(x, y);
                if v < bound {
                    hit[v as usize] = true;
                }
            }
        }
        (0..bound as usize).filter(|&k| hit[k]).collect()
    }

    #[test]
    fn support_sum_of_two_squares() {
        let s = binary_support(&qf(1, 0, 1), 10).unwrap();
        assert_eq!(s.to_vec(), [0, 1, 2, 4, 5, 8, 9]);
    }

    #[test]
    fn support_code_block_d87() {
        let s = binary_support(&qf(2, -1, 11), 14).unwrap();
        assert_eq!(s.to_vec(), [0, 2, 8, 11, 12]);
    }

    #[test]
    fn support_bound_one_is_zero_only() {
        let s = binary_support(&qf(1, 0, 1), 1).unwrap();
        assert_eq!(s.to_vec(), [0]);
    }

    #[test]
    fn support_rejects_indefinite_forms() {
        assert!(matches!(
            binary_support(&qf(1, 5, 1), 10),
            Err(Error::NotPositiveDefinite { .. })
        ));
        assert!(matches!(
            binary_support(&qf(-1, 0, 1), 10),
            Err(Error::NotPositiveDefinite { .. })
        ));
    }

    #[test]
    fn counts_examples() {
        assert_eq!(binary_counts(&qf(1, 0, 1), 2).unwrap().counts(), [1, 4]);
        assert_eq!(binary_counts(&qf(2, -1, 11), 3).unwrap().counts(), [1, 0, 2]);
        assert_eq!(binary_counts(&qf(1, 0, 10), 11).unwrap().counts()[10], 2);
    }

    #[test]
    fn sumset_examples() {
        let a = RepSupport::from_values(14, &[0, 2, 8]);
        let b = RepSupport::from_values(14, &[0, 11]);
        assert_eq!(sumset(&a, &b).unwrap().to_vec(), [0, 2, 8, 11, 13]);

        let s = RepSupport::from_values(9, &[0, 3, 5, 7]);
        let zero = RepSupport::from_values(9, &[0]);
        assert_eq!(sumset(&s, &zero).unwrap(), s);

        let t = RepSupport::from_values(3, &[0, 1]);
        assert_eq!(sumset(&t, &t).unwrap().to_vec(), [0, 1, 2]);
    }

    #[test]
    fn sumset_bound_mismatch() {
        let a = RepSupport::new(10);
        let b = RepSupport::new(11);
        assert_eq!(sumset(&a, &b), Err(Error::BoundMismatch { left: 10, right: 11 }));
    }

    #[test]
    fn power_one_is_identity() {
        let s = binary_support(&qf(3, 1, 5), 40).unwrap();
        assert_eq!(power_support(&s, 1), s);
    }

    #[test]
    fn power_two_of_two_squares_is_four_squares() {
        // four squares hit all of 0..8 (7 = 4+1+1+1); cross-checked by a
        // direct four-variable scan
        let s = binary_support(&qf(1, 0, 1), 8).unwrap();
        assert_eq!(power_support(&s, 2).to_vec(), [0, 1, 2, 3, 4, 5, 6, 7]);
        let mut hit = [false; 8];
        for w in -3i64..=3 {
            for x in -3i64..=3 {
                for y in -3i64..=3 {
                    for z in -3i64..=3 {
                        let v = w * w + x * x + y * y + z * z;
                        if v < 8 {
                            hit[v as usize] = true;
                        }
                    }
                }
            }
        }
        assert!(hit.iter().all(|&h| h));
    }

    #[test]
    fn power_two_of_code_block_d87() {
        let s = binary_support(&qf(2, -1, 11), 14).unwrap();
        assert_eq!(power_support(&s, 2).to_vec(), [0, 2, 4, 8, 10, 11, 12, 13]);
    }

    #[test]
    fn convolve_examples() {
        let c = binary_counts(&qf(1, 0, 1), 16).unwrap();
        let sq = counts_convolve(&c, &c).unwrap();
        assert_eq!(sq.counts()[1], 8); // r_4(1)

        let d = RepCounts::delta(16);
        assert_eq!(counts_convolve(&c, &d).unwrap(), c);

        let c = binary_counts(&qf(2, -1, 11), 16).unwrap();
        assert_eq!(counts_convolve(&c, &c).unwrap().counts()[4], 4);
    }

    #[test]
    fn support_matches_naive_double_loop() {
        for f in [qf(1, 0, 1), qf(2, -1, 11), qf(29, -87, 66), qf(7, -5, 4), qf(3, 3, 8)] {
            for bound in [1, 2, 17, 100] {
                let s = binary_support(&f, bound as usize).unwrap();
                assert_eq!(s.to_vec(), naive_support(&f, bound), "{f} bound={bound}");
            }
        }
    }

    #[test]
    fn counts_support_equals_boolean_support() {
        for f in [qf(1, 0, 1), qf(2, -1, 11), qf(5, 4, 9)] {
            let counts = binary_counts(&f, 200).unwrap();
            let sup = binary_support(&f, 200).unwrap();
            assert_eq!(counts.support(), sup, "{f}");
        }
    }

    fn arb_support(max_bound: usize) -> impl Strategy<Value = RepSupport> {
        (1..max_bound).prop_flat_map(|bound| {
            proptest::collection::vec(0..bound, 0..12)
                .prop_map(move |vals| RepSupport::from_values(bound, &vals))
        })
    }

    proptest! {
        #[test]
        fn sumset_commutes(bound in 1usize..160, xs in proptest::collection::vec(0usize..160, 0..10), ys in proptest::collection::vec(0usize..160, 0..10)) {
            let a = RepSupport::from_values(bound, &xs.iter().map(|v| v % bound).collect::<Vec<_>>());
            let b = RepSupport::from_values(bound, &ys.iter().map(|v| v % bound).collect::<Vec<_>>());
            prop_assert_eq!(sumset(&a, &b).unwrap(), sumset(&b, &a).unwrap());
        }

        #[test]
        fn sumset_associates(s in arb_support(96), xs in proptest::collection::vec(0usize..96, 0..8), ys in proptest::collection::vec(0usize..96, 0..8)) {
            let bound = s.bound();
            let a = RepSupport::from_values(bound, &xs.iter().map(|v| v % bound).collect::<Vec<_>>());
            let b = RepSupport::from_values(bound, &ys.iter().map(|v| v % bound).collect::<Vec<_>>());
            let left = sumset(&sumset(&s, &a).unwrap(), &b).unwrap();
            let right = sumset(&s, &sumset(&a, &b).unwrap()).unwrap();
            prop_assert_eq!(left, right);
        }

        #[test]
        fn sumset_matches_quadratic_definition(bound in 1usize..128, xs in proptest::collection::vec(0usize..128, 0..12), ys in proptest::collection::vec(0usize..128, 0..12)) {
            let s = RepSupport::from_values(bound, &xs.iter().map(|v| v % bound).collect::<Vec<_>>());
            let t = RepSupport::from_values(bound, &ys.iter().map(|v| v % bound).collect::<Vec<_>>());
            let fast = sumset(&s, &t).unwrap();
            let mut slow = RepSupport::new(bound);
            for i in s.iter() {
                for j in t.iter() {
                    if i + j < bound {
                        slow.insert(i + j);
                    }
                }
            }
            prop_assert_eq!(fast, slow);
        }
    }
}

//! Exact arithmetic for finite sums `Σ cᵢ√dᵢ` with rational coefficients and
//! distinct squarefree radicands.
//!
//! Because `√d` for distinct squarefree `d` are linearly independent over ℚ,
//! the squarefree canonical form is unique: two sums are equal as real numbers
//! iff their term maps are identical. That makes exact equality (and exact
//! differences) a structural comparison.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Trial-division bound for squarefree extraction: `⌈2^(64/3)⌉`.
///
/// After removing every prime factor `≤ TRIAL_BOUND` from a `u64`, the
/// cofactor has at most two prime factors, so it is squarefree unless it is a
/// perfect square (checked with an integer square root).
const TRIAL_BOUND: u64 = 2_642_246;

/// An exact sum `Σ cᵢ√dᵢ` in canonical form: every key is squarefree, every
/// stored coefficient is nonzero, and the rational part uses key `1`.
///
/// The empty map is zero.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct RadicalSum {
    terms: BTreeMap<u64, BigRational>,
}

impl RadicalSum {
    /// The zero sum.
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The integer `v` as a radical sum (term `v√1`).
    pub fn integer(v: i64) -> Self {
        Self::rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// A plain rational as a radical sum.
    pub fn rational(q: BigRational) -> Self {
        let mut terms = BTreeMap::new();
        if !q.is_zero() {
            terms.insert(1, q);
        }
        Self { terms }
    }

    /// `√x` in canonical form: factors `x = c²·d` with `d` squarefree and
    /// returns the single term `c√d`.
    ///
    /// # Panics
    /// Panics if `x == 0`; a zero radicand here always means a degenerate
    /// edge upstream.
    pub fn sqrt_int(x: u64) -> Self {
        assert!(x > 0, "sqrt_int requires a positive radicand");
        let (c, d) = squarefree_split(x);
        let mut terms = BTreeMap::new();
        terms.insert(d, BigRational::from_integer(BigInt::from(c)));
        Self { terms }
    }

    /// A single term `q·√x`, canonicalized.
    pub fn term(q: BigRational, x: u64) -> Self {
        Self::sqrt_int(x).scale(&q)
    }

    /// Termwise sum.
    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(rhs);
        out
    }

    fn add_assign(&mut self, rhs: &Self) {
        for (&d, c) in &rhs.terms {
            let entry = self
                .terms
                .entry(d)
                .or_insert_with(|| BigRational::from_integer(BigInt::from(0)));
            *entry += c;
            if entry.is_zero() {
                self.terms.remove(&d);
            }
        }
    }

    /// `self − rhs`, exact.
    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        let terms = self.terms.iter().map(|(&d, c)| (d, -c.clone())).collect();
        Self { terms }
    }

    /// Termwise rational scaling; `q = 0` collapses to zero.
    pub fn scale(&self, q: &BigRational) -> Self {
        if q.is_zero() {
            return Self::zero();
        }
        let terms = self.terms.iter().map(|(&d, c)| (d, c * q)).collect();
        Self { terms }
    }

    /// Convenience integer scaling.
    pub fn scale_int(&self, c: i64) -> Self {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    /// Double-precision evaluation `Σ cᵢ·√dᵢ`.
    pub fn to_f64(&self) -> f64 {
        self.terms
            .iter()
            .map(|(&d, c)| c.to_f64().unwrap_or(f64::NAN) * (d as f64).sqrt())
            .sum()
    }

    /// Terms in ascending radicand order.
    pub fn terms(&self) -> impl Iterator<Item = (u64, &BigRational)> {
        self.terms.iter().map(|(&d, c)| (d, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The coefficient of `√d` (zero if absent). `d` must be squarefree to be
    /// meaningful; non-squarefree keys are simply never present.
    pub fn coefficient(&self, d: u64) -> BigRational {
        self.terms
            .get(&d)
            .cloned()
            .unwrap_or_else(|| BigRational::from_integer(BigInt::from(0)))
    }
}

impl std::ops::Add<&RadicalSum> for &RadicalSum {
    type Output = RadicalSum;
    fn add(self, rhs: &RadicalSum) -> RadicalSum {
        RadicalSum::add(self, rhs)
    }
}

impl std::ops::Sub<&RadicalSum> for &RadicalSum {
    type Output = RadicalSum;
    fn sub(self, rhs: &RadicalSum) -> RadicalSum {
        RadicalSum::sub(self, rhs)
    }
}

impl std::ops::Neg for &RadicalSum {
    type Output = RadicalSum;
    fn neg(self) -> RadicalSum {
        RadicalSum::neg(self)
    }
}

impl std::iter::Sum for RadicalSum {
    fn sum<I: Iterator<Item = RadicalSum>>(iter: I) -> Self {
        let mut acc = RadicalSum::zero();
        for v in iter {
            acc.add_assign(&v);
        }
        acc
    }
}

/// Splits `x = c²·d` with `d` squarefree; returns `(c, d)`.
fn squarefree_split(x: u64) -> (u64, u64) {
    debug_assert!(x > 0);
    let mut rem = x;
    let mut c = 1u64;
    let mut d = 1u64;
    let mut f = 2u64;
    while f <= TRIAL_BOUND && f <= rem / f {
        if rem.is_multiple_of(f) {
            let mut exp = 0u32;
            while rem.is_multiple_of(f) {
                rem /= f;
                exp += 1;
            }
            c *= f.pow(exp / 2);
            if exp % 2 == 1 {
                d *= f;
            }
        }
        f += if f == 2 { 1 } else { 2 };
    }
    if rem > 1 {
        // At most two prime factors remain, each > TRIAL_BOUND; the only
        // non-squarefree case left is a perfect square.
        let s = rem.isqrt();
        if s * s == rem {
            c *= s;
        } else {
            d *= rem;
        }
    }
    (c, d)
}

// The rendering is `c` for the rational part and `c√d` otherwise, terms in
// ascending radicand order joined with ` + ` / ` - `, unit coefficients
// elided. It must survive a round trip through the `FromStr` parser.
impl fmt::Display for RadicalSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (&d, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if d == 1 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "√{d}")?;
            } else {
                write!(f, "{mag}√{d}")?;
            }
        }
        Ok(())
    }
}

/// Errors from parsing the textual rendering of a [`RadicalSum`].
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseRadicalError {
    #[error("empty input")]
    Empty,
    #[error("empty term at position {0}")]
    EmptyTerm(usize),
    #[error("invalid integer `{0}`")]
    BadInteger(String),
    #[error("zero denominator in `{0}`")]
    ZeroDenominator(String),
    #[error("radicand must be positive")]
    ZeroRadicand,
    #[error("unexpected trailing input `{0}`")]
    Trailing(String),
}

impl FromStr for RadicalSum {
    type Err = ParseRadicalError;

    /// Parses renderings like `350√2 + 8√85 - 3/2` (also accepts
    /// non-canonical radicands such as `√8`, which canonicalize on the way
    /// in). This is the round-trip inverse of `Display`; production code
    /// only renders.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if s.is_empty() {
            return Err(ParseRadicalError::Empty);
        }
        let mut total = RadicalSum::zero();
        let mut rest = s;
        let mut first = true;
        let mut pos = 0usize;
        while !rest.is_empty() {
            let mut sign = 1i64;
            if first {
                if let Some(r) = rest.strip_prefix('-') {
                    sign = -1;
                    rest = r.trim_start();
                } else if let Some(r) = rest.strip_prefix('+') {
                    rest = r.trim_start();
                }
                first = false;
            } else {
                rest = rest.trim_start();
                if let Some(r) = rest.strip_prefix('-') {
                    sign = -1;
                    rest = r.trim_start();
                } else if let Some(r) = rest.strip_prefix('+') {
                    rest = r.trim_start();
                } else {
                    return Err(ParseRadicalError::Trailing(rest.to_string()));
                }
            }
            let (term, remainder) = parse_term(rest, pos, sign)?;
            total.add_assign(&term);
            pos += rest.len() - remainder.len();
            rest = remainder;
        }
        Ok(total)
    }
}

/// Parses one unsigned term (`123`, `1/2`, `√85`, `16√85`, `3/2√2`) from the
/// front of `rest`; returns the value (with `sign` applied) and the remainder.
fn parse_term(rest: &str, pos: usize, sign: i64) -> Result<(RadicalSum, &str), ParseRadicalError> {
    let mut rest = rest.trim_start();
    if rest.is_empty() {
        return Err(ParseRadicalError::EmptyTerm(pos));
    }

    let (numer, r) = take_digits(rest);
    rest = r;
    let mut coeff: Option<BigRational> = None;
    if let Some(numer) = numer {
        let n: BigInt = numer
            .parse()
            .map_err(|_| ParseRadicalError::BadInteger(numer.to_string()))?;
        if let Some(r) = rest.strip_prefix('/') {
            let (denom, r2) = take_digits(r);
            let denom = denom.ok_or_else(|| ParseRadicalError::BadInteger(r.to_string()))?;
            let d: BigInt = denom
                .parse()
                .map_err(|_| ParseRadicalError::BadInteger(denom.to_string()))?;
            if d.is_zero() {
                return Err(ParseRadicalError::ZeroDenominator(format!("{numer}/{denom}")));
            }
            coeff = Some(BigRational::new(n, d));
            rest = r2;
        } else {
            coeff = Some(BigRational::from_integer(n));
        }
    }

    let mut radicand = 1u64;
    if let Some(r) = rest.strip_prefix('√') {
        let (digits, r2) = take_digits(r);
        let digits = digits.ok_or(ParseRadicalError::EmptyTerm(pos))?;
        radicand = digits
            .parse()
            .map_err(|_| ParseRadicalError::BadInteger(digits.to_string()))?;
        if radicand == 0 {
            return Err(ParseRadicalError::ZeroRadicand);
        }
        rest = r2;
    } else if coeff.is_none() {
        return Err(ParseRadicalError::EmptyTerm(pos));
    }

    let coeff = coeff.unwrap_or_else(|| BigRational::from_integer(BigInt::from(1)));
    let signed = coeff * BigRational::from_integer(BigInt::from(sign));
    Ok((RadicalSum::term(signed, radicand), rest))
}

fn take_digits(s: &str) -> (Option<&str>, &str) {
    let end = s.find(|c: char| !c.is_ascii_digit()).unwrap_or(s.len());
    if end == 0 {
        (None, s)
    } else {
        (Some(&s[..end]), &s[end..])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn sqrt_extracts_square_factors() {
        assert_eq!(RadicalSum::sqrt_int(8), RadicalSum::term(rat(2, 1), 2));
        assert_eq!(RadicalSum::sqrt_int(85), RadicalSum::term(rat(1, 1), 85));
        assert_eq!(RadicalSum::sqrt_int(49), RadicalSum::integer(7));
        assert_eq!(RadicalSum::sqrt_int(1), RadicalSum::integer(1));
        assert_eq!(RadicalSum::sqrt_int(18), RadicalSum::term(rat(3, 1), 2));
        assert_eq!(RadicalSum::sqrt_int(245), RadicalSum::term(rat(7, 1), 5));
    }

    #[test]
    fn sqrt_handles_large_cofactors() {
        // p² with p prime above the trial bound: must still come out rational.
        let p = 1_000_000_007u64;
        assert_eq!(
            RadicalSum::sqrt_int(p * p),
            RadicalSum::rational(BigRational::from_integer(BigInt::from(p)))
        );
        // p·q with both primes above the bound stays under the radical.
        let q = 1_000_000_009u64;
        let pq = p * q;
        assert_eq!(RadicalSum::sqrt_int(pq), RadicalSum::term(rat(1, 1), pq));
        // 4·p·q mixes a small square with a large squarefree cofactor.
        assert_eq!(RadicalSum::sqrt_int(4 * pq), RadicalSum::term(rat(2, 1), pq));
    }

    #[test]
    #[should_panic(expected = "positive radicand")]
    fn sqrt_rejects_zero() {
        let _ = RadicalSum::sqrt_int(0);
    }

    #[test]
    fn addition_cancels_and_merges() {
        let a = RadicalSum::term(rat(3, 1), 2);
        assert!(a.add(&a.neg()).is_zero());

        let two_sqrt2 = RadicalSum::term(rat(2, 1), 2);
        let sqrt5 = RadicalSum::sqrt_int(5);
        let merged = two_sqrt2.add(&sqrt5).add(&sqrt5);
        assert_eq!(
            merged,
            RadicalSum::term(rat(2, 1), 2).add(&RadicalSum::term(rat(2, 1), 5))
        );
    }

    #[test]
    fn scaling_is_termwise() {
        let v = RadicalSum::sqrt_int(2).scale(&rat(3, 2));
        assert_eq!(v, RadicalSum::term(rat(3, 2), 2));
        assert!(v.scale(&rat(0, 1)).is_zero());
    }

    #[test]
    fn canonical_equality() {
        assert_eq!(RadicalSum::sqrt_int(8), RadicalSum::sqrt_int(2).scale_int(2));
        assert_eq!(RadicalSum::zero(), RadicalSum::default());
        assert_ne!(RadicalSum::sqrt_int(2), RadicalSum::sqrt_int(3));
    }

    #[test]
    fn float_evaluation() {
        let v = RadicalSum::term(rat(16, 1), 85).add(&RadicalSum::term(rat(576, 1), 2));
        let expected = 16.0 * 85f64.sqrt() + 576.0 * 2f64.sqrt();
        assert!((v.to_f64() - expected).abs() <= 1e-9 * expected);
        assert_eq!(RadicalSum::zero().to_f64(), 0.0);
    }

    #[test]
    fn rendering_matches_grammar() {
        assert_eq!(RadicalSum::zero().to_string(), "0");
        assert_eq!(RadicalSum::integer(7).to_string(), "7");
        assert_eq!(RadicalSum::term(rat(3, 2), 1).to_string(), "3/2");
        assert_eq!(RadicalSum::sqrt_int(5).to_string(), "√5");
        let v = RadicalSum::term(rat(576, 1), 2).add(&RadicalSum::term(rat(16, 1), 85));
        assert_eq!(v.to_string(), "576√2 + 16√85");
        let mixed = RadicalSum::integer(3)
            .add(&RadicalSum::sqrt_int(2).neg())
            .add(&RadicalSum::term(rat(-5, 3), 7));
        assert_eq!(mixed.to_string(), "3 - √2 - 5/3√7");
        let neg_first = RadicalSum::integer(-2).add(&RadicalSum::sqrt_int(3));
        assert_eq!(neg_first.to_string(), "-2 + √3");
    }

    #[test]
    fn parse_round_trips_canonical_renderings() {
        let samples = [
            RadicalSum::zero(),
            RadicalSum::integer(-41),
            RadicalSum::term(rat(3, 2), 1),
            RadicalSum::sqrt_int(85),
            RadicalSum::term(rat(576, 1), 2).add(&RadicalSum::term(rat(16, 1), 85)),
            RadicalSum::integer(3)
                .add(&RadicalSum::sqrt_int(2).neg())
                .add(&RadicalSum::term(rat(-5, 3), 7)),
        ];
        for v in samples {
            let rendered = v.to_string();
            let parsed: RadicalSum = rendered.parse().unwrap();
            assert_eq!(parsed, v, "round trip failed for `{rendered}`");
        }
    }

    #[test]
    fn parse_canonicalizes_loose_input() {
        let parsed: RadicalSum = "√8 + √2".parse().unwrap();
        assert_eq!(parsed, RadicalSum::term(rat(3, 1), 2));
        let folded: RadicalSum = "2√2 - 2√2".parse().unwrap();
        assert!(folded.is_zero());
    }

    #[test]
    fn parse_rejects_malformed_input() {
        assert_eq!("".parse::<RadicalSum>(), Err(ParseRadicalError::Empty));
        assert!("abc".parse::<RadicalSum>().is_err());
        assert_eq!("√0".parse::<RadicalSum>(), Err(ParseRadicalError::ZeroRadicand));
        assert!("1/0".parse::<RadicalSum>().is_err());
        assert!("1 +".parse::<RadicalSum>().is_err());
        assert!("1 2".parse::<RadicalSum>().is_err());
        assert!("√".parse::<RadicalSum>().is_err());
    }
}

//! Closed-form Sombor expressions for the nonzero-idempotent clean graph of
//! ℤ_n, dispatched on the shape of `n`.
//!
//! The general-`k` expression is transcribed literally, term for term,
//! including its `2^(2k−1) − 6·2^(k−1) + 4` cross-pair coefficient. It is a
//! claim to be audited, not trusted: the verification harness compares it
//! (and the specialized cases) against the brute-force oracle and reports
//! exact differences.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::radical::RadicalSum;
use crate::ring::ResidueRing;
use crate::Error;

/// Largest `n` accepted for exact closed-form evaluation with two or more
/// prime factors: past this the `(2^k−2+φ(n))²`-shaped radicands would not
/// fit in 64 bits.
pub const FORMULA_MAX_N: u64 = 1 << 31;

/// Which closed form applies to a given `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FormulaCase {
    /// `n = p^α`, `p` odd.
    OddPrimePower,
    /// `n = 2^α`.
    PowerOfTwo,
    /// `n = p^α q^β` (two distinct primes).
    TwoPrimes,
    /// `k ≥ 2` distinct primes, the general expression (used for `k ≥ 3`).
    GeneralK,
}

impl FormulaCase {
    pub fn tag(self) -> &'static str {
        match self {
            FormulaCase::OddPrimePower => "odd_prime_power",
            FormulaCase::PowerOfTwo => "power_of_two",
            FormulaCase::TwoPrimes => "two_prime_case",
            FormulaCase::GeneralK => "general_k",
        }
    }
}

impl fmt::Display for FormulaCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// The numbers a formula was instantiated with.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormulaInputs {
    pub n: u64,
    pub phi: u64,
    pub r: u64,
    pub k: usize,
}

/// Result of dispatching `n` to its closed form.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub case: FormulaCase,
    pub inputs: FormulaInputs,
    /// The case's value: the two-prime expression for `k = 2`, the general
    /// expression for `k ≥ 3`.
    pub value: RadicalSum,
    /// For `k = 2`, the general expression evaluated at `k = 2` so callers
    /// can measure whether the two routes agree.
    pub general_value: Option<RadicalSum>,
}

fn rat(x: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn term(coeff: BigRational, radicand: u64) -> RadicalSum {
    RadicalSum::term(coeff, radicand)
}

fn square_radicand(a: u128, b: u128) -> u64 {
    let v = a * a + b * b;
    u64::try_from(v).expect("radicand exceeds 64-bit range")
}

/// `((φ(n) − 2)/2)·√2` for `n = p^α` with `p` odd.
pub fn odd_prime_power(phi: u64) -> RadicalSum {
    assert!(phi >= 2 && phi.is_multiple_of(2), "φ of an odd prime power is even and ≥ 2");
    term(rat(phi - 2) / rat(2), 2)
}

/// `((φ(n) − 4)/2)·√2` for `n = 2^α`, `α ≥ 3`; zero for `α ∈ {1, 2}` where
/// the graph has no edges at all.
pub fn power_of_two(phi: u64, alpha: u32) -> RadicalSum {
    assert!(alpha >= 1, "2^α needs α ≥ 1");
    assert_eq!(phi, 1u64 << (alpha - 1), "φ(2^α) = 2^(α−1)");
    if alpha <= 2 {
        return RadicalSum::zero();
    }
    term(rat(phi - 4) / rat(2), 2)
}

/// The six-term two-prime expression in `φ(n)` and `r`:
///
/// ```text
/// (3/2)√2(φ−r) + 2r√(4+(1+φ)²) + 2(φ−r)√(9+(2+φ)²)
/// + √2(φ−r)(2+φ)(φ−r+1) + r²√2(1+φ) + 2r(φ−r)√(2φ²+6φ+5)
/// ```
///
/// The last radicand equals `(1+φ)² + (2+φ)²`; it is kept as written and the
/// canonical form takes care of any overlap.
pub fn two_primes(phi: u64, r: u64) -> RadicalSum {
    assert!(r <= phi && (phi - r).is_multiple_of(2), "non-self-inverse units pair up");
    let phi_minus_r = phi - r;
    let rad_si = square_radicand(2, 1 + phi as u128);
    let rad_nsi = square_radicand(3, 2 + phi as u128);
    let rad_mixed = u64::try_from(
        2 * (phi as u128) * (phi as u128) + 6 * phi as u128 + 5,
    )
    .expect("radicand exceeds 64-bit range");

    let mut total = term(rat(3) / rat(2) * rat(phi_minus_r), 2);
    total = total.add(&term(rat(2) * rat(r), rad_si));
    total = total.add(&term(rat(2) * rat(phi_minus_r), rad_nsi));
    total = total.add(&term(
        rat(phi_minus_r) * rat(2 + phi) * rat(phi_minus_r + 1),
        2,
    ));
    total = total.add(&term(rat(r) * rat(r) * rat(1 + phi), 2));
    total = total.add(&term(rat(2) * rat(r) * rat(phi_minus_r), rad_mixed));
    total
}

/// The six-term general expression in `φ(n)`, `r`, and the number of
/// distinct primes `k ≥ 2`, transcribed literally:
///
/// ```text
///   (√2/2)(φ−r)(2^k−1)
/// + (2^k−2)[ r√((2^k−2)²+(2^k−3+φ)²) + (φ−r)√((2^k−1)²+(2^k−2+φ)²) ]
/// + √2·r²(2^(k−1)−1)(2^k−3+φ)
/// + 2r(φ−r)(2^(k−1)−1)√((2^k−3+φ)²+(2^k−2+φ)²)
/// + √2(φ−r)²(2^(k−1)−1)(2^k−2+φ)
/// + (2^(2k−1)−6·2^(k−1)+4)[ √2·r(2^k−3+φ) + √2(φ−r)(2^k−2+φ) ]
/// ```
///
/// No corrections are applied; disagreements with the oracle are data.
pub fn general_k(phi: u64, r: u64, k: u32) -> RadicalSum {
    assert!(k >= 2, "the general expression needs k ≥ 2");
    assert!(k < 32, "2^k out of supported range");
    assert!(r <= phi && (phi - r).is_multiple_of(2), "non-self-inverse units pair up");
    let pow = 1u64 << k;
    let half_pow = 1u64 << (k - 1);
    let phi_minus_r = phi - r;
    // deg for self-inverse / non-self-inverse vertices outside the identity class.
    let deg_lo = pow - 3 + phi;
    let deg_hi = pow - 2 + phi;
    // Cross-pair count: C(2^k−2, 2) − (2^(k−1)−1) expanded as written.
    let cross = (1u128 << (2 * k - 1)) + 4 - 6 * (half_pow as u128);
    let cross = BigRational::from_integer(BigInt::from(cross));

    let rad_v1_si = square_radicand((pow - 2) as u128, deg_lo as u128);
    let rad_v1_nsi = square_radicand((pow - 1) as u128, deg_hi as u128);
    let rad_pair = square_radicand(deg_lo as u128, deg_hi as u128);

    let mut total = term(rat(phi_minus_r) * rat(pow - 1) / rat(2), 2);
    total = total.add(&term(rat(pow - 2) * rat(r), rad_v1_si));
    total = total.add(&term(rat(pow - 2) * rat(phi_minus_r), rad_v1_nsi));
    total = total.add(&term(rat(r) * rat(r) * rat(half_pow - 1) * rat(deg_lo), 2));
    total = total.add(&term(
        rat(2) * rat(r) * rat(phi_minus_r) * rat(half_pow - 1),
        rad_pair,
    ));
    total = total.add(&term(
        rat(phi_minus_r) * rat(phi_minus_r) * rat(half_pow - 1) * rat(deg_hi),
        2,
    ));
    total = total.add(&term(cross.clone() * rat(r) * rat(deg_lo), 2));
    total = total.add(&term(cross * rat(phi_minus_r) * rat(deg_hi), 2));
    total
}

/// Picks and evaluates the closed form matching `ring`'s factorization.
///
/// For two primes the two-prime expression is the value and the general
/// expression rides along for cross-checking; for `k ≥ 3` the general
/// expression is the value.
pub fn evaluate(ring: &ResidueRing) -> Result<Evaluation, Error> {
    let n = ring.n();
    if n < 3 {
        return Err(Error::ModulusTooSmall { n, min: 3 });
    }
    let k = ring.prime_count();
    if k >= 2 && n > FORMULA_MAX_N {
        return Err(Error::FormulaRangeExceeded {
            n,
            max: FORMULA_MAX_N,
        });
    }
    let phi = ring.euler_phi();
    let r = ring.self_inverse_unit_count();
    let inputs = FormulaInputs { n, phi, r, k };
    let evaluation = if k == 1 {
        if ring.is_power_of_two() {
            Evaluation {
                case: FormulaCase::PowerOfTwo,
                inputs,
                value: power_of_two(phi, ring.two_exponent()),
                general_value: None,
            }
        } else {
            Evaluation {
                case: FormulaCase::OddPrimePower,
                inputs,
                value: odd_prime_power(phi),
                general_value: None,
            }
        }
    } else if k == 2 {
        Evaluation {
            case: FormulaCase::TwoPrimes,
            inputs,
            value: two_primes(phi, r),
            general_value: Some(general_k(phi, r, 2)),
        }
    } else {
        Evaluation {
            case: FormulaCase::GeneralK,
            inputs,
            value: general_k(phi, r, k as u32),
            general_value: None,
        }
    };
    Ok(evaluation)
}

//! Arithmetic over ℤ_n: factorization, Euler phi, idempotents, units and
//! their self-inverse/non-self-inverse split, and modular inversion.
//!
//! Everything downstream (graph construction, closed forms) pulls its numbers
//! from here, so the enumerations double as ground truth: the counting
//! shortcuts are asserted against them rather than trusted.

use crate::Error;

/// Residues enumerated by exhaustive scan up to this modulus; beyond it,
/// idempotents switch to CRT lifting and unit enumeration is refused by
/// callers that would need it (it is inherently O(n)).
pub const SCAN_LIMIT: u64 = 1_000_000;

/// `a·b mod n` with double-width intermediates.
#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, n: u64) -> u64 {
    ((a as u128 * b as u128) % n as u128) as u64
}

/// ℤ_n together with the factorization `n = ∏ pᵢ^αᵢ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResidueRing {
    n: u64,
    /// `(prime, exponent)` pairs, primes strictly ascending.
    factors: Vec<(u64, u32)>,
    /// Exponent of 2 in `n` (0 when `n` is odd).
    two_exponent: u32,
}

impl ResidueRing {
    /// Factorizes `n` by trial division. Rejects `n < 2`.
    pub fn new(n: u64) -> Result<Self, Error> {
        if n < 2 {
            return Err(Error::ModulusTooSmall { n, min: 2 });
        }
        let mut factors = Vec::new();
        let mut rem = n;
        let mut p = 2u64;
        while p <= rem / p {
            if rem.is_multiple_of(p) {
                let mut exp = 0u32;
                while rem.is_multiple_of(p) {
                    rem /= p;
                    exp += 1;
                }
                factors.push((p, exp));
            }
            p += if p == 2 { 1 } else { 2 };
        }
        if rem > 1 {
            factors.push((rem, 1));
        }
        let two_exponent = factors
            .first()
            .filter(|&&(p, _)| p == 2)
            .map(|&(_, a)| a)
            .unwrap_or(0);
        debug_assert_eq!(
            factors
                .iter()
                .map(|&(p, a)| p.pow(a))
                .product::<u64>(),
            n
        );
        Ok(Self {
            n,
            factors,
            two_exponent,
        })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs in ascending prime order.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of distinct primes dividing `n` (the `k` of `2^k` idempotents).
    pub fn prime_count(&self) -> usize {
        self.factors.len()
    }

    /// Exponent of 2 in `n`.
    pub fn two_exponent(&self) -> u32 {
        self.two_exponent
    }

    /// Number of distinct odd primes dividing `n`.
    pub fn odd_prime_count(&self) -> usize {
        self.factors.len() - usize::from(self.two_exponent > 0)
    }

    pub fn is_power_of_two(&self) -> bool {
        self.factors.len() == 1 && self.two_exponent > 0
    }

    pub fn is_odd_prime_power(&self) -> bool {
        self.factors.len() == 1 && self.two_exponent == 0
    }

    /// Euler's totient `φ(n) = ∏ pᵢ^(αᵢ−1)(pᵢ−1)`.
    pub fn euler_phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, a)| p.pow(a - 1) * (p - 1))
            .product()
    }

    /// All idempotents of ℤ_n, ascending. There are exactly `2^k` of them;
    /// the count is asserted.
    pub fn idempotents(&self) -> Vec<u64> {
        let idems = if self.n <= SCAN_LIMIT {
            self.idempotents_by_scan()
        } else {
            self.idempotents_by_crt()
        };
        assert_eq!(
            idems.len(),
            1usize << self.prime_count(),
            "idempotent count must be 2^k for n={}",
            self.n
        );
        idems
    }

    /// Idempotents by exhaustive scan of `e² ≡ e (mod n)`.
    pub fn idempotents_by_scan(&self) -> Vec<u64> {
        (0..self.n)
            .filter(|&e| mul_mod(e, e, self.n) == e)
            .collect()
    }

    /// Idempotents by CRT lifting: one orthogonal basis idempotent per prime
    /// power, summed over all subsets.
    pub fn idempotents_by_crt(&self) -> Vec<u64> {
        // basis[i] ≡ 1 mod pᵢ^αᵢ and ≡ 0 mod every other prime power.
        let basis: Vec<u64> = self
            .factors
            .iter()
            .map(|&(p, a)| {
                let q = p.pow(a);
                let m = self.n / q;
                if m == 1 {
                    return 1 % self.n;
                }
                let inv = mod_inverse_raw(m % q, q).expect("prime-power moduli are coprime");
                mul_mod(m % self.n, inv, self.n)
            })
            .collect();
        let k = basis.len();
        let mut out: Vec<u64> = (0u64..(1 << k))
            .map(|mask| {
                let mut e = 0u64;
                for (i, &b) in basis.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        e = (e + b) % self.n;
                    }
                }
                e
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Enumerates the units of ℤ_n and splits them by `u² ≡ 1 (mod n)`.
    ///
    /// O(n); callers working past [`SCAN_LIMIT`] should use
    /// [`Self::self_inverse_unit_count`] instead of the full enumeration.
    pub fn classify_units(&self) -> UnitClassification {
        let n = self.n;
        let mut units = Vec::new();
        let mut self_inverse = Vec::new();
        let mut non_self_inverse = Vec::new();
        for u in 1..n {
            if num_integer::gcd(u, n) != 1 {
                continue;
            }
            units.push(u);
            if mul_mod(u, u, n) == 1 {
                self_inverse.push(u);
            } else {
                non_self_inverse.push(u);
            }
        }
        assert_eq!(units.len() as u64, self.euler_phi(), "unit count must be φ(n)");
        assert_eq!(
            self_inverse.len() as u64,
            self.self_inverse_count_by_case(),
            "self-inverse unit count diverged from the case formula for n={n}",
        );
        UnitClassification {
            units,
            self_inverse,
            non_self_inverse,
        }
    }

    /// `|{u : u² ≡ 1}|` — enumerated (and asserted against the case formula)
    /// up to [`SCAN_LIMIT`]; by the case formula alone above it.
    pub fn self_inverse_unit_count(&self) -> u64 {
        if self.n <= SCAN_LIMIT {
            self.classify_units().self_inverse.len() as u64
        } else {
            self.self_inverse_count_by_case()
        }
    }

    /// The closed-form count of square roots of unity in ℤ_n, split on the
    /// power of 2 dividing n: `2^s` when that power is 2^0 or 2^1, `2^(s+1)`
    /// at 2^2, and `2^(s+2)` from 2^3 up, with `s` the number of distinct odd
    /// primes.
    fn self_inverse_count_by_case(&self) -> u64 {
        let s = self.odd_prime_count() as u32;
        match self.two_exponent {
            0 | 1 => 1 << s,
            2 => 1 << (s + 1),
            _ => 1 << (s + 2),
        }
    }

    /// Inverse of `u` modulo `n`; `None` when `u` is not a unit.
    pub fn mod_inverse(&self, u: u64) -> Option<u64> {
        mod_inverse_raw(u % self.n, self.n)
    }
}

/// Units of a ring split into self-inverse and non-self-inverse, each list
/// ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnitClassification {
    units: Vec<u64>,
    self_inverse: Vec<u64>,
    non_self_inverse: Vec<u64>,
}

impl UnitClassification {
    pub fn units(&self) -> &[u64] {
        &self.units
    }

    pub fn self_inverse(&self) -> &[u64] {
        &self.self_inverse
    }

    pub fn non_self_inverse(&self) -> &[u64] {
        &self.non_self_inverse
    }

    /// φ(n).
    pub fn phi(&self) -> u64 {
        self.units.len() as u64
    }

    /// `r = |{u : u² ≡ 1}|`.
    pub fn self_inverse_count(&self) -> u64 {
        self.self_inverse.len() as u64
    }
}

/// Extended-Euclid inverse of `u` mod `n` (`None` if `gcd(u, n) ≠ 1`).
fn mod_inverse_raw(u: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (n as i128, u as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    let n = n as i128;
    Some(((t0 % n + n) % n) as u64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_examples() {
        let r = ResidueRing::new(24).unwrap();
        assert_eq!(r.factors(), &[(2, 3), (3, 1)]);
        assert_eq!(r.prime_count(), 2);
        assert_eq!(r.two_exponent(), 3);
        assert_eq!(r.odd_prime_count(), 1);

        let r = ResidueRing::new(30).unwrap();
        assert_eq!(r.factors(), &[(2, 1), (3, 1), (5, 1)]);
        assert_eq!(r.prime_count(), 3);
        assert_eq!(r.two_exponent(), 1);
        assert_eq!(r.odd_prime_count(), 2);

        let r = ResidueRing::new(7).unwrap();
        assert_eq!(r.factors(), &[(7, 1)]);
        assert_eq!(r.prime_count(), 1);
        assert_eq!(r.two_exponent(), 0);
        assert!(r.is_odd_prime_power());
    }

    #[test]
    fn rejects_tiny_moduli() {
        assert_eq!(ResidueRing::new(0), Err(Error::ModulusTooSmall { n: 0, min: 2 }));
        assert_eq!(ResidueRing::new(1), Err(Error::ModulusTooSmall { n: 1, min: 2 }));
    }

    #[test]
    fn totient_examples() {
        assert_eq!(ResidueRing::new(24).unwrap().euler_phi(), 8);
        assert_eq!(ResidueRing::new(30).unwrap().euler_phi(), 8);
        assert_eq!(ResidueRing::new(9).unwrap().euler_phi(), 6);
        assert_eq!(ResidueRing::new(2).unwrap().euler_phi(), 1);
        assert_eq!(ResidueRing::new(1 << 20).unwrap().euler_phi(), 1 << 19);
    }

    #[test]
    fn idempotent_examples() {
        assert_eq!(ResidueRing::new(24).unwrap().idempotents(), vec![0, 1, 9, 16]);
        assert_eq!(
            ResidueRing::new(30).unwrap().idempotents(),
            vec![0, 1, 6, 10, 15, 16, 21, 25]
        );
        assert_eq!(ResidueRing::new(7).unwrap().idempotents(), vec![0, 1]);
    }

    #[test]
    fn idempotent_paths_agree() {
        for n in 2..=5000 {
            let r = ResidueRing::new(n).unwrap();
            assert_eq!(
                r.idempotents_by_scan(),
                r.idempotents_by_crt(),
                "scan and CRT enumerations disagree at n={n}"
            );
        }
    }

    #[test]
    fn idempotents_square_to_themselves() {
        for n in [24, 30, 360, 1 << 21, 3 * 5 * 7 * 11 * 13 * 17] {
            let r = ResidueRing::new(n).unwrap();
            for e in r.idempotents() {
                assert_eq!(mul_mod(e, e, n), e);
            }
        }
    }

    #[test]
    fn unit_classification_examples() {
        let c = ResidueRing::new(24).unwrap().classify_units();
        assert_eq!(c.phi(), 8);
        assert_eq!(c.self_inverse_count(), 8);
        assert!(c.non_self_inverse().is_empty());

        let c = ResidueRing::new(7).unwrap().classify_units();
        assert_eq!(c.self_inverse(), &[1, 6]);
        assert_eq!(c.self_inverse_count(), 2);

        // 2^α for α ≥ 3 has exactly {1, 2^(α−1)−1, 2^(α−1)+1, 2^α−1}.
        for alpha in 3..=8u32 {
            let n = 1u64 << alpha;
            let c = ResidueRing::new(n).unwrap().classify_units();
            let half = 1u64 << (alpha - 1);
            assert_eq!(c.self_inverse(), &[1, half - 1, half + 1, n - 1]);
        }
    }

    #[test]
    fn non_self_inverse_units_pair_up() {
        for n in [7u64, 15, 16, 24, 30, 36, 100, 210] {
            let r = ResidueRing::new(n).unwrap();
            let c = r.classify_units();
            assert_eq!(c.non_self_inverse().len() % 2, 0);
            for &u in c.non_self_inverse() {
                let v = r.mod_inverse(u).unwrap();
                assert_ne!(u, v);
                assert!(c.non_self_inverse().contains(&v));
            }
        }
    }

    #[test]
    fn one_and_n_minus_one_are_self_inverse() {
        for n in 3..200u64 {
            let c = ResidueRing::new(n).unwrap().classify_units();
            assert!(c.self_inverse().contains(&1));
            assert!(c.self_inverse().contains(&(n - 1)));
        }
    }

    #[test]
    fn mod_inverse_examples() {
        let r24 = ResidueRing::new(24).unwrap();
        assert_eq!(r24.mod_inverse(5), Some(5));
        assert_eq!(r24.mod_inverse(1), Some(1));
        assert_eq!(r24.mod_inverse(6), None);
        let r30 = ResidueRing::new(30).unwrap();
        assert_eq!(r30.mod_inverse(7), Some(13));
        for n in [7u64, 24, 30, 97, 1 << 10] {
            let r = ResidueRing::new(n).unwrap();
            for u in r.classify_units().units() {
                let v = r.mod_inverse(*u).unwrap();
                assert_eq!(mul_mod(*u, v, n), 1 % n);
            }
        }
    }

    #[test]
    fn casewise_count_used_above_scan_limit() {
        // 2^21 · 3 · 5 is past the scan limit; the case split gives 2^(s+2).
        let r = ResidueRing::new((1 << 21) * 15).unwrap();
        assert_eq!(r.self_inverse_unit_count(), 1 << 4);
        // Odd square past the limit: 3^13.
        let r = ResidueRing::new(3u64.pow(13)).unwrap();
        assert_eq!(r.self_inverse_unit_count(), 2);
    }
}

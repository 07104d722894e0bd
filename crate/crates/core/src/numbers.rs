//! Arbitrary-precision integer and rational scalars, plus elementary
//! number-theoretic helpers (prime factorization, divisor enumeration,
//! rational parsing).

use crate::error::{Error, Result};
use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

/// Nonnegative arbitrary-precision integer.
pub type Natural = BigUint;
/// Signed arbitrary-precision integer.
pub type Int = BigInt;
/// Arbitrary-precision rational, always stored reduced with positive
/// denominator.
pub type Rat = num_rational::BigRational;

pub fn nat(v: u64) -> Natural {
    Natural::from(v)
}

pub fn int(v: i64) -> Int {
    Int::from(v)
}

pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

pub fn rat_int(v: i64) -> Rat {
    Rat::from_integer(Int::from(v))
}

/// Parse a rational from `p`, `-p`, `p/q`, or `-p/q` (decimal digits only).
pub fn parse_rat(input: &str) -> Result<Rat> {
    let s = input.trim();
    if s.is_empty() {
        return Err(Error::parse(0, "empty rational"));
    }
    let (num_str, den_str) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (s, None),
    };
    let num: Int = num_str
        .parse()
        .map_err(|_| Error::parse(0, format!("invalid integer numerator '{num_str}'")))?;
    let den: Int = match den_str {
        Some(d) => d
            .parse()
            .map_err(|_| Error::parse(0, format!("invalid integer denominator '{d}'")))?,
        None => Int::one(),
    };
    if den.is_zero() {
        return Err(Error::parse(0, "zero denominator"));
    }
    Ok(Rat::new(num, den))
}

/// Render a rational as `p` (integer) or `p/q` (reduced, positive `q`).
pub fn rat_str(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// A prime factorization `p1^e1 * p2^e2 * ...` with strictly increasing
/// primes and positive exponents. The empty factorization is 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeFactorization {
    entries: Vec<(Natural, u64)>,
}

impl PrimeFactorization {
    pub fn one() -> Self {
        PrimeFactorization { entries: vec![] }
    }

    pub fn entries(&self) -> &[(Natural, u64)] {
        &self.entries
    }

    pub fn is_one(&self) -> bool {
        self.entries.is_empty()
    }

    /// Product of all prime powers.
    pub fn value(&self) -> Natural {
        let mut acc = Natural::one();
        for (p, e) in &self.entries {
            acc *= p.pow(u32::try_from(*e).expect("exponent fits in u32"));
        }
        acc
    }

    /// Total number of prime factors counted with multiplicity.
    pub fn big_omega(&self) -> u64 {
        self.entries.iter().map(|(_, e)| *e).sum()
    }

    /// Primes repeated by multiplicity, ascending: 12 -> [2, 2, 3].
    pub fn flat(&self) -> Vec<Natural> {
        let mut out = Vec::new();
        for (p, e) in &self.entries {
            for _ in 0..*e {
                out.push(p.clone());
            }
        }
        out
    }

    /// All positive divisors of the factored value, ascending.
    pub fn divisors(&self) -> Vec<Natural> {
        let mut divs = vec![Natural::one()];
        for (p, e) in &self.entries {
            let mut next = Vec::with_capacity(divs.len() * (*e as usize + 1));
            for d in &divs {
                let mut power = Natural::one();
                for _ in 0..=*e {
                    next.push(d * &power);
                    power *= p;
                }
            }
            divs = next;
        }
        divs.sort();
        divs
    }
}

/// Default bound above which [`factor_nat`] refuses to attempt trial
/// division: anything whose second-largest prime factor could exceed
/// 2^32 would be too slow, so we cap inputs at 2^64.
pub const FACTOR_NAT_DEFAULT_CAP_BITS: u64 = 64;

/// Factor a positive integer by trial division.
///
/// Errors: `Domain` for 0, `Capacity` if `n` has more than
/// [`FACTOR_NAT_DEFAULT_CAP_BITS`] bits.
pub fn factor_nat(n: &Natural) -> Result<PrimeFactorization> {
    if n.is_zero() {
        return Err(Error::domain("cannot factor 0"));
    }
    if n.bits() > FACTOR_NAT_DEFAULT_CAP_BITS {
        return Err(Error::capacity(format!(
            "integer {n} exceeds the {FACTOR_NAT_DEFAULT_CAP_BITS}-bit factoring bound"
        )));
    }
    let mut m = n
        .to_u128()
        .ok_or_else(|| Error::internal("bit-checked integer failed u128 conversion"))?;
    let mut entries: Vec<(Natural, u64)> = Vec::new();
    let mut push = |p: u128, e: u64| {
        if e > 0 {
            entries.push((Natural::from(p), e));
        }
    };
    let mut e2 = 0;
    while m % 2 == 0 {
        m /= 2;
        e2 += 1;
    }
    push(2, e2);
    let mut p: u128 = 3;
    while p * p <= m {
        let mut e = 0;
        while m % p == 0 {
            m /= p;
            e += 1;
        }
        push(p, e);
        p += 2;
    }
    if m > 1 {
        push(m, 1);
    }
    Ok(PrimeFactorization { entries })
}

/// Primality test consistent with [`factor_nat`] (same capacity bound).
pub fn is_prime(n: &Natural) -> Result<bool> {
    if n < &Natural::from(2u32) {
        return Ok(false);
    }
    let f = factor_nat(n)?;
    Ok(f.big_omega() == 1)
}

/// gcd of two naturals; gcd(0, 0) = 0.
pub fn nat_gcd(a: &Natural, b: &Natural) -> Natural {
    a.gcd(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_rat_accepts_integers_fractions_and_signs() {
        assert_eq!(parse_rat("7").unwrap(), rat_int(7));
        assert_eq!(parse_rat("-7").unwrap(), rat_int(-7));
        assert_eq!(parse_rat("2/3").unwrap(), rat(2, 3));
        assert_eq!(parse_rat(" 10/4 ").unwrap(), rat(5, 2));
        assert_eq!(parse_rat("-6/4").unwrap(), rat(-3, 2));
        // Negative denominator normalizes into the numerator.
        assert_eq!(parse_rat("3/-2").unwrap(), rat(-3, 2));
    }

    #[test]
    fn parse_rat_rejects_garbage() {
        assert!(matches!(parse_rat(""), Err(Error::Parse { .. })));
        assert!(matches!(parse_rat("x"), Err(Error::Parse { .. })));
        assert!(matches!(parse_rat("1/0"), Err(Error::Parse { .. })));
        assert!(matches!(parse_rat("1/2/3"), Err(Error::Parse { .. })));
        assert!(matches!(parse_rat("1.5"), Err(Error::Parse { .. })));
    }

    #[test]
    fn rat_str_formats_reduced() {
        assert_eq!(rat_str(&rat(4, 6)), "2/3");
        assert_eq!(rat_str(&rat_int(5)), "5");
        assert_eq!(rat_str(&rat(-9, 3)), "-3");
        assert_eq!(rat_str(&rat(-1, 2)), "-1/2");
    }

    #[test]
    fn factor_small_numbers() {
        let f = factor_nat(&nat(1)).unwrap();
        assert!(f.is_one());
        assert_eq!(f.value(), nat(1));
        assert_eq!(f.big_omega(), 0);

        let f = factor_nat(&nat(12)).unwrap();
        assert_eq!(
            f.entries(),
            &[(nat(2), 2), (nat(3), 1)],
            "12 = 2^2 * 3"
        );
        assert_eq!(f.value(), nat(12));
        assert_eq!(f.big_omega(), 3);
        assert_eq!(f.flat(), vec![nat(2), nat(2), nat(3)]);

        let f = factor_nat(&nat(97)).unwrap();
        assert_eq!(f.entries(), &[(nat(97), 1)]);

        let f = factor_nat(&nat(2u64.pow(10) * 3u64.pow(5) * 49)).unwrap();
        assert_eq!(f.entries(), &[(nat(2), 10), (nat(3), 5), (nat(7), 2)]);
    }

    #[test]
    fn factor_rejects_zero_and_huge() {
        assert!(matches!(factor_nat(&nat(0)), Err(Error::Domain(_))));
        let huge = Natural::from(2u32).pow(65);
        assert!(matches!(factor_nat(&huge), Err(Error::Capacity(_))));
    }

    #[test]
    fn divisors_of_12_and_1() {
        let f = factor_nat(&nat(12)).unwrap();
        assert_eq!(
            f.divisors(),
            vec![nat(1), nat(2), nat(3), nat(4), nat(6), nat(12)]
        );
        let f = factor_nat(&nat(1)).unwrap();
        assert_eq!(f.divisors(), vec![nat(1)]);
    }

    #[test]
    fn primality_matches_factoring() {
        let primes = [2u64, 3, 5, 7, 11, 97, 101];
        for p in primes {
            assert!(is_prime(&nat(p)).unwrap(), "{p} is prime");
        }
        for c in [0u64, 1, 4, 6, 9, 91, 100] {
            assert!(!is_prime(&nat(c)).unwrap(), "{c} is not prime");
        }
    }

    #[test]
    fn omega_is_multiplicative() {
        // big_omega(ab) = big_omega(a) + big_omega(b) for a few pairs.
        for (a, b) in [(6u64, 10), (8, 9), (97, 97), (1, 12)] {
            let fa = factor_nat(&nat(a)).unwrap().big_omega();
            let fb = factor_nat(&nat(b)).unwrap().big_omega();
            let fab = factor_nat(&nat(a * b)).unwrap().big_omega();
            assert_eq!(fab, fa + fb);
        }
    }
}

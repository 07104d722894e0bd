//! Arithmetic invariants computed from factorization sets: length sets,
//! elasticity, equal-length witnesses, the two-parameter family with
//! prescribed elasticity, and the generic length bound.

use crate::error::{Error, Result};
use crate::numbers::{factor_nat, rat_int, Rat};
use crate::poly::Polynomial;
use crate::semidomain::{Engine, Factorization, RingElement, RingTag};
use num_traits::Signed;
use std::collections::BTreeSet;

/// The set of factorization lengths. A unit contributes exactly `{0}`.
pub fn length_set(zs: &[Factorization]) -> BTreeSet<u64> {
    zs.iter().map(Factorization::length).collect()
}

/// Elasticity: longest length over shortest length, with the convention
/// that a unit (whose only length is 0) has elasticity 1.
pub fn elasticity(zs: &[Factorization]) -> Result<Rat> {
    let lengths = length_set(zs);
    let (Some(&min), Some(&max)) = (lengths.first(), lengths.last()) else {
        return Err(Error::internal(
            "elasticity requested for an empty factorization set",
        ));
    };
    if min == 0 {
        if max != 0 {
            return Err(Error::internal(
                "the empty factorization coexists with nonempty ones",
            ));
        }
        return Ok(rat_int(1));
    }
    Ok(Rat::new(max.into(), min.into()))
}

/// The canonically smallest pair of distinct factorizations of equal
/// length, if any. Input must be canonically sorted (engine output is).
pub fn equal_length_distinct_witness(
    zs: &[Factorization],
) -> Option<(Factorization, Factorization)> {
    let mut best: Option<(Factorization, Factorization)> = None;
    for (i, z) in zs.iter().enumerate() {
        for z2 in &zs[i + 1..] {
            if z2.length() == z.length() && z2 != z {
                let cand = (z.clone(), z2.clone());
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
                break;
            }
        }
    }
    best
}

/// Report for one member of the elasticity family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FamilyReport {
    pub n: u64,
    pub k: u64,
    pub polynomial: Polynomial,
    pub factorizations: Vec<Factorization>,
    pub length_set: BTreeSet<u64>,
    pub elasticity: Rat,
}

/// Build the family member `(x+n)^n (x^2-x+1) (x+1)^k`.
pub fn family_polynomial(n: u64, k: u64) -> Polynomial {
    let x_plus_n = Polynomial::from_i64(&[n as i64, 1]);
    let quad = Polynomial::from_i64(&[1, -1, 1]);
    let x_plus_1 = Polynomial::from_i64(&[1, 1]);
    x_plus_n.pow(n).mul(&quad).mul(&x_plus_1.pow(k))
}

/// Compute the family member's complete factorization data and verify the
/// closed forms `L = {k+1, k+n}` and elasticity `(k+n)/(k+1)` against it.
pub fn elasticity_family(engine: &mut Engine, n: u64, k: u64) -> Result<FamilyReport> {
    if n < 2 {
        return Err(Error::domain(format!(
            "family parameter n must be at least 2, got {n}"
        )));
    }
    if k < 1 {
        return Err(Error::domain(format!(
            "family parameter k must be at least 1, got {k}"
        )));
    }
    let f = family_polynomial(n, k);
    if !f.is_nonneg() {
        return Err(Error::internal(format!(
            "family member n={n} k={k} left the ring"
        )));
    }
    let elem = RingElement::Poly(f.clone());
    let zs = engine.enumerate_factorizations(RingTag::NnPoly, &elem)?;
    let lengths = length_set(&zs);
    let rho = elasticity(&zs)?;

    let expected_lengths: BTreeSet<u64> = [k + 1, k + n].into_iter().collect();
    let expected_rho = Rat::new((k + n).into(), (k + 1).into());
    if zs.len() != 2 || lengths != expected_lengths || rho != expected_rho {
        return Err(Error::internal(format!(
            "family member n={n} k={k} produced {} factorizations with lengths {lengths:?}",
            zs.len()
        )));
    }
    Ok(FamilyReport {
        n,
        k,
        polynomial: f,
        factorizations: zs,
        length_set: lengths,
        elasticity: rho,
    })
}

/// Result of checking the generic bound: no factorization can be longer
/// than the prime-count of the leading coefficient plus the degree,
/// because constant atoms divide the content (hence the leading
/// coefficient) and every other atom consumes at least one degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LengthBoundReport {
    pub max_length: u64,
    pub bound: u64,
    pub ok: bool,
}

pub fn length_bound_check(engine: &mut Engine, f: &Polynomial) -> Result<LengthBoundReport> {
    let elem = RingElement::Poly(f.clone());
    let zs = engine.enumerate_factorizations(RingTag::NnPoly, &elem)?;
    let max_length = length_set(&zs).last().copied().unwrap_or(0);
    let lead = f
        .leading_coeff()
        .ok_or_else(|| Error::domain("the zero polynomial has no length data"))?
        .abs();
    let omega = factor_nat(&lead.to_biguint().expect("absolute value"))?.big_omega();
    let degree = f.degree().unwrap_or(0) as u64;
    let bound = omega + degree;
    Ok(LengthBoundReport {
        max_length,
        bound,
        ok: max_length <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::rat;

    fn zs_of(engine: &mut Engine, text: &str) -> Vec<Factorization> {
        let e = RingElement::parse(RingTag::NnPoly, text).unwrap();
        engine.enumerate_factorizations(RingTag::NnPoly, &e).unwrap()
    }

    #[test]
    fn quintic_lengths_and_elasticity() {
        let mut engine = Engine::default();
        let zs = zs_of(&mut engine, "x^5+x^4+x^3+x^2+x+1");
        assert_eq!(length_set(&zs), [2].into_iter().collect());
        assert_eq!(elasticity(&zs).unwrap(), rat_int(1));
    }

    #[test]
    fn unit_elasticity_is_one() {
        let mut engine = Engine::default();
        let zs = zs_of(&mut engine, "1");
        assert_eq!(length_set(&zs), [0].into_iter().collect());
        assert_eq!(elasticity(&zs).unwrap(), rat_int(1));
    }

    #[test]
    fn quintic_equal_length_witness() {
        let mut engine = Engine::default();
        let zs = zs_of(&mut engine, "x^5+x^4+x^3+x^2+x+1");
        let (a, b) = equal_length_distinct_witness(&zs).unwrap();
        assert_eq!(a, zs[0]);
        assert_eq!(b, zs[1]);
        assert_ne!(a, b);
        assert_eq!(a.length(), b.length());

        let unique = zs_of(&mut engine, "x^2+2x+1");
        assert!(equal_length_distinct_witness(&unique).is_none());
    }

    #[test]
    fn family_small_members() {
        let mut engine = Engine::default();
        let r = elasticity_family(&mut engine, 2, 1).unwrap();
        assert_eq!(r.length_set, [2, 3].into_iter().collect());
        assert_eq!(r.elasticity, rat(3, 2));
        assert_eq!(r.factorizations.len(), 2);

        let r = elasticity_family(&mut engine, 3, 2).unwrap();
        assert_eq!(r.length_set, [3, 5].into_iter().collect());
        assert_eq!(r.elasticity, rat(5, 3));
    }

    #[test]
    fn family_member_structure() {
        // The short factorization bundles the sign-mixing quadratic with
        // all copies of (x+n); the long one uses x^3+1 to absorb it.
        let mut engine = Engine::default();
        let r = elasticity_family(&mut engine, 2, 1).unwrap();
        let x_plus_1 = Polynomial::from_i64(&[1, 1]);
        let x_plus_2 = Polynomial::from_i64(&[2, 1]);
        let cube_plus_1 = Polynomial::from_i64(&[1, 0, 0, 1]);
        let big_atom = x_plus_2.pow(2).mul(&Polynomial::from_i64(&[1, -1, 1]));
        let short = Factorization::new(vec![x_plus_1.clone(), big_atom]);
        let long = Factorization::new(vec![x_plus_2.clone(), x_plus_2, cube_plus_1]);
        assert!(r.factorizations.contains(&short));
        assert!(r.factorizations.contains(&long));
    }

    #[test]
    fn family_parameter_validation() {
        let mut engine = Engine::default();
        assert!(matches!(
            elasticity_family(&mut engine, 1, 1),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            elasticity_family(&mut engine, 2, 0),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn length_bound_examples() {
        let mut engine = Engine::default();
        let f = Polynomial::parse("6x+6").unwrap();
        let r = length_bound_check(&mut engine, &f).unwrap();
        assert_eq!((r.max_length, r.bound, r.ok), (3, 3, true));

        let f = Polynomial::parse("x^5+x^4+x^3+x^2+x+1").unwrap();
        let r = length_bound_check(&mut engine, &f).unwrap();
        assert_eq!((r.max_length, r.bound, r.ok), (2, 5, true));

        let f = Polynomial::parse("4").unwrap();
        let r = length_bound_check(&mut engine, &f).unwrap();
        assert_eq!((r.max_length, r.bound, r.ok), (2, 2, true));
    }
}

//! Complete factorization over the integer polynomials: sign, prime
//! factorization of the content, and primitive irreducible polynomial
//! factors with multiplicity.
//!
//! Strategy: strip the content and any power of `x`, pull out all rational
//! roots (degree-1 factors), then search for higher-degree factors by
//! interpolation through divisor tuples of the values at small integer
//! points, ascending by candidate degree. A factor found at stage `d` is
//! irreducible because every smaller degree was exhausted first, and stages
//! stop at half the remaining degree, after which the remainder itself is
//! irreducible.

use crate::error::{Error, Result};
use crate::numbers::{factor_nat, nat_gcd, Int, Natural, PrimeFactorization, Rat};
use crate::poly::{Polynomial, RatPoly};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// Default refusal bound on the degree of polynomials passed to the
/// factorizer; interpolation-search cost grows quickly past this.
pub const DEFAULT_ZX_DEGREE_CAP: usize = 16;

/// `f = (-1)^negative * content * prod factors[i].0 ^ factors[i].1` where
/// the content is a factored positive integer and each polynomial factor is
/// primitive, irreducible, has a positive leading coefficient, and appears
/// in canonical order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZxFactorization {
    pub negative: bool,
    pub content: PrimeFactorization,
    pub factors: Vec<(Polynomial, u64)>,
}

impl ZxFactorization {
    /// Multiply everything back together (used to validate the engine).
    pub fn product(&self) -> Polynomial {
        let mut acc = Polynomial::constant(Int::from(self.content.value()));
        if self.negative {
            acc = acc.neg();
        }
        for (p, m) in &self.factors {
            acc = acc.mul(&p.pow(*m));
        }
        acc
    }

    /// Number of irreducible polynomial factors counted with multiplicity.
    pub fn poly_factor_count(&self) -> u64 {
        self.factors.iter().map(|(_, m)| *m).sum()
    }

    /// Polynomial factors repeated by multiplicity, in canonical order.
    pub fn flat_poly_factors(&self) -> Vec<Polynomial> {
        let mut out = Vec::new();
        for (p, m) in &self.factors {
            for _ in 0..*m {
                out.push(p.clone());
            }
        }
        out
    }
}

/// Factor a nonzero integer polynomial completely.
///
/// Errors: `Domain` for the zero polynomial, `Capacity` when the degree
/// exceeds `degree_cap` or an intermediate integer exceeds the factoring
/// bound.
pub fn irreducible_factors_zx(f: &Polynomial, degree_cap: usize) -> Result<ZxFactorization> {
    let deg = f
        .degree()
        .ok_or_else(|| Error::domain("cannot factor the zero polynomial"))?;
    if deg > degree_cap {
        return Err(Error::capacity(format!(
            "degree {deg} exceeds the factoring cap of {degree_cap}"
        )));
    }

    let (content, mut g) = f.content_primitive()?;
    let negative = content.is_negative();
    let content_nat: Natural = content
        .abs()
        .to_biguint()
        .expect("absolute value is nonnegative");
    let content_factors = factor_nat(&content_nat)?;

    let mut mult: BTreeMap<Polynomial, u64> = BTreeMap::new();

    // Power of x.
    let ord = g.ord().expect("primitive part is nonzero");
    if ord > 0 {
        g = g.shift_down(ord).expect("ord is a lower bound");
        *mult.entry(Polynomial::x()).or_insert(0) += ord as u64;
    }

    extract_rational_roots(&mut g, &mut mult)?;

    // Interpolation stages for factors of degree >= 2. After a division we
    // stay at the same stage: the quotient may contain another factor of
    // the same degree.
    let mut d = 2usize;
    while let Some(deg_g) = g.degree() {
        if 2 * d > deg_g {
            break;
        }
        match interpolation_stage(&g, d)? {
            Some(h) => {
                g = g.div_exact(&h).expect("stage verified divisibility");
                *mult.entry(h).or_insert(0) += 1;
            }
            None => d += 1,
        }
    }

    match g.degree() {
        Some(0) => debug_assert!(g.is_one(), "primitive positive remainder must be 1"),
        Some(_) => {
            *mult.entry(g).or_insert(0) += 1;
        }
        None => unreachable!("exact divisions keep g nonzero"),
    }

    Ok(ZxFactorization {
        negative,
        content: content_factors,
        factors: mult.into_iter().collect(),
    })
}

/// True for irreducible elements of the integer polynomials: prime
/// constants and (associates of) primitive irreducible polynomials.
pub fn is_irreducible_zx(f: &Polynomial, degree_cap: usize) -> Result<bool> {
    let z = irreducible_factors_zx(f, degree_cap)?;
    Ok(z.content.big_omega() + z.poly_factor_count() == 1)
}

/// Pull out every degree-1 factor `qx - p` (rational root `p/q`) of a
/// primitive polynomial with nonzero constant term.
fn extract_rational_roots(
    g: &mut Polynomial,
    mult: &mut BTreeMap<Polynomial, u64>,
) -> Result<()> {
    'search: loop {
        let deg = g.degree().expect("g stays nonzero");
        if deg < 1 {
            return Ok(());
        }
        let a0: Natural = g
            .coeff(0)
            .abs()
            .to_biguint()
            .expect("absolute value is nonnegative");
        let lead: Natural = g
            .leading_coeff()
            .expect("nonzero")
            .abs()
            .to_biguint()
            .expect("absolute value is nonnegative");
        let p_divs = factor_nat(&a0)?.divisors();
        let q_divs = factor_nat(&lead)?.divisors();
        for q in &q_divs {
            for p in &p_divs {
                if !nat_gcd(p, q).is_one() {
                    continue;
                }
                let p_int = Int::from(p.clone());
                let q_int = Int::from(q.clone());
                for signed_p in [p_int.clone(), -p_int] {
                    let root = Rat::new(signed_p.clone(), q_int.clone());
                    if g.eval_rat(&root).is_zero() {
                        let factor =
                            Polynomial::from_coeffs(vec![-signed_p, q_int.clone()]);
                        *g = g
                            .div_exact(&factor)
                            .expect("a rational root yields an exact primitive factor");
                        *mult.entry(factor).or_insert(0) += 1;
                        continue 'search;
                    }
                }
            }
        }
        return Ok(());
    }
}

/// Search for one degree-`d` factor of `g` (primitive, positive leading
/// coefficient, no integer roots) by interpolating through all divisor
/// tuples of the values of `g` at `d + 1` small integer points.
///
/// Completeness: a degree-`d` factor `h` satisfies `h(x_i) | g(x_i)` at
/// every point, the values `g(x_i)` are nonzero, and `h` is determined by
/// its values at `d + 1` points; restricting the first value to be positive
/// loses nothing because `h` and `-h` divide the same polynomials.
fn interpolation_stage(g: &Polynomial, d: usize) -> Result<Option<Polynomial>> {
    let points: Vec<Int> = (0..=d)
        .map(|i| {
            let m = i.div_ceil(2) as i64;
            Int::from(if i % 2 == 1 { m } else { -m })
        })
        .collect();
    let values: Vec<Int> = points.iter().map(|x| g.eval_int(x)).collect();
    debug_assert!(
        values.iter().all(|v| !v.is_zero()),
        "integer roots were extracted before interpolation"
    );

    let mut candidates: Vec<Vec<Int>> = Vec::with_capacity(d + 1);
    for (i, v) in values.iter().enumerate() {
        let abs: Natural = v.abs().to_biguint().expect("nonneg");
        let divs = factor_nat(&abs)?.divisors();
        let mut c: Vec<Int> = Vec::with_capacity(divs.len() * 2);
        for dv in divs {
            let dv = Int::from(dv);
            if i == 0 {
                c.push(dv);
            } else {
                c.push(dv.clone());
                c.push(-dv);
            }
        }
        candidates.push(c);
    }

    let basis = lagrange_basis(&points);
    let mut idx = vec![0usize; d + 1];
    loop {
        let mut h = RatPoly::zero();
        for i in 0..=d {
            let e = Rat::from_integer(candidates[i][idx[i]].clone());
            h = h.add(&basis[i].scale(&e));
        }
        if let Some(hi) = h.to_int_poly() {
            if hi.degree() == Some(d) {
                let hi = if hi
                    .leading_coeff()
                    .expect("degree d means nonzero")
                    .is_negative()
                {
                    hi.neg()
                } else {
                    hi
                };
                if g.div_exact(&hi).is_some() {
                    return Ok(Some(hi));
                }
            }
        }

        // Odometer over the candidate tuples.
        let mut i = 0;
        loop {
            idx[i] += 1;
            if idx[i] < candidates[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
            if i > d {
                return Ok(None);
            }
        }
    }
}

/// Lagrange basis over distinct integer points: `basis[i](points[j])` is 1
/// when `i == j` and 0 otherwise.
fn lagrange_basis(points: &[Int]) -> Vec<RatPoly> {
    points
        .iter()
        .enumerate()
        .map(|(i, xi)| {
            let mut num = RatPoly::from_coeffs(vec![Rat::one()]);
            let mut den = Rat::one();
            for (j, xj) in points.iter().enumerate() {
                if i == j {
                    continue;
                }
                num = num.mul(&RatPoly::from_coeffs(vec![
                    Rat::from_integer(-xj.clone()),
                    Rat::one(),
                ]));
                den *= Rat::from_integer(xi - xj);
            }
            num.scale(&den.recip())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numbers::nat;

    fn p(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_i64(coeffs)
    }

    fn factor(f: &Polynomial) -> ZxFactorization {
        let z = irreducible_factors_zx(f, DEFAULT_ZX_DEGREE_CAP).unwrap();
        assert_eq!(&z.product(), f, "factorization must multiply back to {f}");
        z
    }

    #[test]
    fn sixth_cyclotomic_like_product() {
        // x^5 + x^4 + x^3 + x^2 + x + 1 = (x+1)(x^2+x+1)(x^2-x+1)
        let f = p(&[1, 1, 1, 1, 1, 1]);
        let z = factor(&f);
        assert!(!z.negative);
        assert!(z.content.is_one());
        assert_eq!(
            z.factors,
            vec![
                (p(&[1, 1]), 1),
                (p(&[1, -1, 1]), 1),
                (p(&[1, 1, 1]), 1),
            ]
        );
    }

    #[test]
    fn biquadratic_splits_by_interpolation() {
        // x^4 + x^2 + 1 = (x^2-x+1)(x^2+x+1): no rational roots, so only
        // the degree-2 interpolation stage can find this.
        let z = factor(&p(&[1, 0, 1, 0, 1]));
        assert_eq!(z.factors, vec![(p(&[1, -1, 1]), 1), (p(&[1, 1, 1]), 1)]);

        // x^4 + 4 = (x^2-2x+2)(x^2+2x+2)
        let z = factor(&p(&[4, 0, 0, 0, 1]));
        assert_eq!(z.factors, vec![(p(&[2, -2, 1]), 1), (p(&[2, 2, 1]), 1)]);
    }

    #[test]
    fn cube_plus_one() {
        let z = factor(&p(&[1, 0, 0, 1]));
        assert_eq!(z.factors, vec![(p(&[1, 1]), 1), (p(&[1, -1, 1]), 1)]);
    }

    #[test]
    fn irreducible_quadratics_stay_whole() {
        for f in [p(&[1, -1, 1]), p(&[1, 1, 1]), p(&[1, 0, 1]), p(&[2, 2, 1])] {
            let z = factor(&f);
            assert_eq!(z.factors, vec![(f.clone(), 1)], "{f} is irreducible");
        }
    }

    #[test]
    fn content_sign_and_x_power() {
        // -2x^3 - 2x = -2 * x * (x^2 + 1)
        let z = factor(&p(&[0, -2, 0, -2]));
        assert!(z.negative);
        assert_eq!(z.content.entries(), &[(nat(2), 1)]);
        assert_eq!(z.factors, vec![(p(&[0, 1]), 1), (p(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn repeated_factors_collect_multiplicity() {
        // (x+1)^2 (x^2+x+1)
        let f = p(&[1, 2, 1]).mul(&p(&[1, 1, 1]));
        let z = factor(&f);
        assert_eq!(z.factors, vec![(p(&[1, 1]), 2), (p(&[1, 1, 1]), 1)]);

        // x^4 + 2x^2 + 1 = (x^2+1)^2 -- a repeated interpolation-stage factor.
        let z = factor(&p(&[1, 0, 2, 0, 1]));
        assert_eq!(z.factors, vec![(p(&[1, 0, 1]), 2)]);
    }

    #[test]
    fn non_monic_rational_roots() {
        // 6x^2 - 5x + 1 = (2x-1)(3x-1)
        let z = factor(&p(&[1, -5, 6]));
        assert_eq!(z.factors, vec![(p(&[-1, 2]), 1), (p(&[-1, 3]), 1)]);

        // 2x - 1 alone
        let z = factor(&p(&[-1, 2]));
        assert_eq!(z.factors, vec![(p(&[-1, 2]), 1)]);
    }

    #[test]
    fn constants_and_units() {
        let z = factor(&p(&[6]));
        assert!(!z.negative);
        assert_eq!(z.content.entries(), &[(nat(2), 1), (nat(3), 1)]);
        assert!(z.factors.is_empty());

        let z = factor(&p(&[-1]));
        assert!(z.negative);
        assert!(z.content.is_one());
        assert!(z.factors.is_empty());
    }

    #[test]
    fn degree_six_mixed() {
        // (x^2+x+1)^2 (x^2-x+1) exercises a repeat at stage 2 plus a remainder.
        let f = p(&[1, 1, 1]).pow(2).mul(&p(&[1, -1, 1]));
        let z = factor(&f);
        assert_eq!(z.factors, vec![(p(&[1, -1, 1]), 1), (p(&[1, 1, 1]), 2)]);
    }

    #[test]
    fn irreducibility_predicate() {
        assert!(is_irreducible_zx(&p(&[1, 1]), 16).unwrap());
        assert!(is_irreducible_zx(&p(&[1, -1, 1]), 16).unwrap());
        assert!(!is_irreducible_zx(&p(&[1, 0, 1, 0, 1]), 16).unwrap());
        assert!(is_irreducible_zx(&p(&[2]), 16).unwrap(), "prime constant");
        assert!(!is_irreducible_zx(&p(&[4]), 16).unwrap());
        assert!(!is_irreducible_zx(&p(&[1]), 16).unwrap(), "unit");
        assert!(!is_irreducible_zx(&p(&[-1]), 16).unwrap(), "unit");
        assert!(!is_irreducible_zx(&p(&[2, 2]), 16).unwrap(), "2(x+1)");
        assert!(is_irreducible_zx(&p(&[-1, -1]), 16).unwrap(), "-(x+1)");
    }

    #[test]
    fn rejects_zero_and_high_degree() {
        assert!(matches!(
            irreducible_factors_zx(&Polynomial::zero(), 16),
            Err(Error::Domain(_))
        ));
        assert!(matches!(
            irreducible_factors_zx(&Polynomial::x_pow(17), 16),
            Err(Error::Capacity(_))
        ));
        assert!(irreducible_factors_zx(&Polynomial::x_pow(17), 20).is_ok());
    }

    #[test]
    fn quintic_all_ones_family_members() {
        // x^4 + x^3 + x^2 + x + 1 is irreducible.
        let z = factor(&p(&[1, 1, 1, 1, 1]));
        assert_eq!(z.poly_factor_count(), 1);

        // x^6 + x^5 + ... + 1 = (x+1)(x^2+x+1)(x^4-x^2+1)? No:
        // x^7 - 1 over x - 1 stays for degree 6; check product only.
        let f = p(&[1, 1, 1, 1, 1, 1, 1]);
        let z = factor(&f);
        assert_eq!(z.poly_factor_count(), 1, "degree-6 cyclotomic-style poly");
    }
}

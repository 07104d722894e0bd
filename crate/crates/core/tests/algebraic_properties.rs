//! Structural laws the arithmetic must satisfy on randomized inputs:
//! multiplicativity of prime counting and content, parse/display round
//! trips, closure and canonicality in the rational-power monoid, semiring
//! axioms and division soundness for exponential sums, and closure,
//! split soundness, and logarithmic length bounds in the threshold
//! monoid.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use semifactor_core::msemiring::{MonoidSemiring, MsElement};
use semifactor_core::numbers::{factor_nat, nat, rat, Int, Natural, Rat};
use semifactor_core::nq::NqMonoid;
use semifactor_core::poly::Polynomial;
use semifactor_core::puiseux::PuiseuxMonoid;
use std::collections::BTreeSet;

fn nn_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(0i64..=3, 1..=5)
        .prop_map(|c| Polynomial::from_i64(&c))
        .prop_filter("nonzero", |f| !f.is_zero())
}

fn signed_poly() -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(-4i64..=4, 1..=5)
        .prop_map(|c| Polynomial::from_i64(&c))
        .prop_filter("nonzero", |f| !f.is_zero())
}

/// Arbitrary coefficient vectors over powers of 2/3, digits allowed to
/// reach and exceed the numerator.
fn digit_vector() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(0u64..=6, 0..=5)
}

fn vector_value(m: &PuiseuxMonoid, digits: &[u64]) -> Rat {
    let mut acc = Rat::zero();
    for (j, &c) in digits.iter().enumerate() {
        acc += Rat::from(BigInt::from(c)) * m.r_pow(j);
    }
    acc
}

/// Elements of the exponential-sum semiring supported on {1, e^r, e^{r²},
/// e^{2r}} with small coefficients.
fn ms_element(s: &MonoidSemiring, coeffs: &[u64; 4]) -> MsElement {
    let exps = ["0", "2/3", "4/9", "4/3"];
    let terms: Vec<String> = coeffs
        .iter()
        .zip(exps)
        .filter(|(c, _)| **c > 0)
        .map(|(c, e)| format!("{c}*e({e})"))
        .collect();
    if terms.is_empty() {
        MsElement::zero()
    } else {
        MsElement::parse(s.monoid(), &terms.join(" + ")).unwrap()
    }
}

proptest! {
    #[test]
    fn prime_counting_is_multiplicative(a in 1u64..=400, b in 1u64..=400) {
        let oa = factor_nat(&nat(a)).unwrap().big_omega();
        let ob = factor_nat(&nat(b)).unwrap().big_omega();
        let oab = factor_nat(&nat(a * b)).unwrap().big_omega();
        prop_assert_eq!(oab, oa + ob);
    }

    #[test]
    fn content_is_multiplicative(f in signed_poly(), g in signed_poly()) {
        let (cf, pf) = f.content_primitive().unwrap();
        let (cg, pg) = g.content_primitive().unwrap();
        let (cfg, pfg) = f.mul(&g).content_primitive().unwrap();
        prop_assert_eq!(&cfg, &(&cf * &cg));
        prop_assert_eq!(pfg, pf.mul(&pg));
    }

    #[test]
    fn polynomial_display_parse_round_trip(f in nn_poly()) {
        let text = f.to_string();
        let back = Polynomial::parse(&text).unwrap();
        prop_assert_eq!(back, f);
    }

    #[test]
    fn rational_power_sums_are_members(digits in digit_vector()) {
        // Closure: every finite sum of scaled powers of r is a member,
        // regardless of which representation produced the value, and the
        // canonical form depends only on the value.
        let m = PuiseuxMonoid::new(&rat(2, 3)).unwrap();
        let value = vector_value(&m, &digits);
        let elem = m.is_member(&value).unwrap();
        prop_assert!(elem.is_some(), "sum of powers must be a member");
        let elem = elem.unwrap();
        prop_assert_eq!(elem.value(), &value);
        let below_top = elem.digits().len().saturating_sub(1);
        for c in &elem.digits()[..below_top] {
            prop_assert!(*c < nat(2), "canonical digits below the top stay small");
        }
        let again = m.is_member(&value).unwrap().unwrap();
        prop_assert_eq!(again.digits(), elem.digits());
    }

    #[test]
    fn rational_power_divisibility_is_antisymmetric(
        a in digit_vector(),
        b in digit_vector(),
    ) {
        let m = PuiseuxMonoid::new(&rat(2, 3)).unwrap();
        let ea = m.is_member(&vector_value(&m, &a)).unwrap().unwrap();
        let eb = m.is_member(&vector_value(&m, &b)).unwrap().unwrap();
        let ab = m.divides(&ea, &eb).unwrap();
        let ba = m.divides(&eb, &ea).unwrap();
        if ab && ba {
            prop_assert_eq!(ea.value(), eb.value());
        }
        // Divisibility respects the value order.
        if ab {
            prop_assert!(ea.value() <= eb.value());
        }
    }

    #[test]
    fn divisor_lattice_matches_deeper_search(digits in prop::collection::vec(0u64..=1, 0..=5)) {
        // For elements with every canonical digit below the numerator,
        // the dominance-lattice enumeration must coincide with a brute
        // search allowed four extra levels of depth.
        let m = PuiseuxMonoid::new(&rat(2, 3)).unwrap();
        let value = vector_value(&m, &digits);
        let x = m.is_member(&value).unwrap().unwrap();
        prop_assume!(m.has_finite_divisor_set(&x));
        let lattice: Vec<Rat> = m
            .divisors(&x)
            .unwrap()
            .into_iter()
            .map(|d| d.value().clone())
            .collect();
        let brute = m.divisors_bounded_search(&x, 4).unwrap();
        prop_assert_eq!(lattice, brute);
    }

    #[test]
    fn exponential_sum_semiring_laws(
        a in prop::array::uniform4(0u64..=4),
        b in prop::array::uniform4(0u64..=4),
        c in prop::array::uniform4(0u64..=4),
    ) {
        let s = MonoidSemiring::new(PuiseuxMonoid::new(&rat(2, 3)).unwrap());
        let (a, b, c) = (ms_element(&s, &a), ms_element(&s, &b), ms_element(&s, &c));
        prop_assert_eq!(s.mul(&a, &b), s.mul(&b, &a));
        prop_assert_eq!(s.mul(&s.mul(&a, &b), &c), s.mul(&a, &s.mul(&b, &c)));
        prop_assert_eq!(s.mul(&a, &MsElement::one()), a.clone());
        prop_assert!(s.mul(&a, &MsElement::zero()).is_zero());
        prop_assert_eq!(
            s.mul(&a, &b).coefficient_sum(),
            a.coefficient_sum() * b.coefficient_sum()
        );
    }

    #[test]
    fn exponential_sum_division_recovers_cofactor(
        a in prop::array::uniform4(0u64..=4),
        h in prop::array::uniform4(0u64..=4),
    ) {
        let s = MonoidSemiring::new(PuiseuxMonoid::new(&rat(2, 3)).unwrap());
        let (a, h) = (ms_element(&s, &a), ms_element(&s, &h));
        prop_assume!(!a.is_zero() && !h.is_zero());
        let b = s.mul(&a, &h);
        let quotient = s.divides(&a, &b).unwrap();
        prop_assert_eq!(quotient, Some(h));
    }

    #[test]
    fn exponential_sum_decomposition_reassembles(f in prop::array::uniform4(0u64..=4)) {
        let s = MonoidSemiring::new(PuiseuxMonoid::new(&rat(2, 3)).unwrap());
        let f = ms_element(&s, &f);
        prop_assume!(!f.is_zero());
        let d = s.normal_decomposition(&f).unwrap();
        let monomial =
            MsElement::monomial(s.monoid(), d.shift.value(), Natural::one()).unwrap();
        let back = s.mul(
            &MsElement::constant(d.content.clone()),
            &s.mul(&monomial, &d.reduced),
        );
        prop_assert_eq!(back, f);
        // The reduced part carries no further common content.
        let coeffs: Vec<Natural> = d.reduced.terms().map(|(_, c)| c.clone()).collect();
        let mut g = Natural::zero();
        for c in &coeffs {
            g = num_integer::Integer::gcd(&g, c);
        }
        prop_assert!(g.is_one());
    }

    #[test]
    fn threshold_monoid_is_closed_under_multiplication(
        an in 0i64..=40, ad in 1i64..=8,
        bn in 0i64..=40, bd in 1i64..=8,
    ) {
        let m = NqMonoid::new(2).unwrap();
        let (a, b) = (rat(an, ad), rat(bn, bd));
        prop_assume!(m.is_member(&a) && m.is_member(&b));
        prop_assert!(m.is_member(&(a * b)));
    }

    #[test]
    fn threshold_atoms_admit_no_bounded_split(qn in 0i64..=128, qd in 1i64..=8) {
        let m = NqMonoid::new(2).unwrap();
        let q = rat(qn, qd);
        prop_assume!(m.is_member(&q) && !q.is_zero() && !q.is_one());
        if m.is_atom(&q).unwrap() {
            // No split with both parts non-unit members may exist. Every
            // non-unit nonzero member is at least 2, so it suffices to
            // scan divisors d in [2, q/2]; denominators up to 64 cover
            // far more than the inputs can require.
            for j in 1i64..=64 {
                let mut i = BigInt::from(2 * j);
                loop {
                    let d = Rat::new(i.clone(), BigInt::from(j));
                    if &d * rat(2, 1) > q {
                        break;
                    }
                    let cofactor = &q / &d;
                    prop_assert!(
                        !(m.is_member(&d) && m.is_member(&cofactor)
                            && !d.is_one() && !cofactor.is_one()),
                        "atom {} splits as {} * {}", q, d, cofactor
                    );
                    i += 1;
                }
            }
        } else {
            // Reducibility must be constructive: the sampler exhibits a
            // verified factorization into at least two atoms.
            let sample = m.factorization_sample(&q, 1).unwrap();
            prop_assert!(!sample.factorizations.is_empty(), "no witness for {}", q);
            let z = &sample.factorizations[0];
            prop_assert!(z.len() >= 2);
            prop_assert_eq!(z.iter().product::<Rat>(), q);
            for part in z {
                prop_assert!(m.is_atom(part).unwrap());
            }
        }
    }

    #[test]
    fn threshold_lengths_respect_logarithmic_bound(qn in 2i64..=64, qd in 1i64..=4) {
        let m = NqMonoid::new(2).unwrap();
        let q = rat(qn, qd);
        prop_assume!(m.is_member(&q) && !q.is_zero() && !q.is_one());
        let lengths = m.length_set_bounded(&q, 8).unwrap();
        for &len in &lengths.lengths {
            prop_assert!(len >= 1);
            // Every non-unit member is at least 2, so a product of len
            // parts is at least 2^len.
            let floor = Rat::from(BigInt::from(2).pow(len as u32));
            prop_assert!(floor <= q, "length {} impossible for {}", len, q);
        }
    }
}

#[test]
fn chain_witness_descends_for_fifty_levels() {
    let m = PuiseuxMonoid::new(&rat(2, 3)).unwrap();
    let w = m.accp_chain(50).unwrap();
    assert_eq!(w.elements.len(), 51);
    assert_eq!(w.gaps.len(), 50);
    let distinct: BTreeSet<Rat> = w.elements.iter().map(|e| e.value().clone()).collect();
    assert_eq!(distinct.len(), 51);
    for i in 0..50 {
        assert!(
            m.divides(&w.elements[i + 1], &w.elements[i]).unwrap(),
            "level {i} must divide its predecessor"
        );
        assert!(
            !m.divides(&w.elements[i], &w.elements[i + 1]).unwrap(),
            "descent must be strict at level {i}"
        );
        assert!(!w.gaps[i].is_zero());
    }
}

#[test]
fn content_sign_convention_follows_leading_coefficient() {
    let f = Polynomial::from_i64(&[-2, -4]);
    let (c, p) = f.content_primitive().unwrap();
    assert_eq!(c, Int::from(-2));
    assert_eq!(p, Polynomial::from_i64(&[1, 2]));
}

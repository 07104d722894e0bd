//! Slow, obviously-correct reference implementations used to cross-check
//! the main engine in differential tests.
//!
//! Everything here works by exhaustive search over candidate coefficient
//! vectors and plain polynomial division; none of it shares logic with the
//! factorization engine. Inputs are expected to be small (the guards
//! panic otherwise), which is fine: these functions only run inside tests.
//!
//! The search bound is sound because a product of nonnegative polynomials
//! has, at each coefficient, a sum of nonnegative terms among which
//! `g_j * h_ord(h)` appears alone in its slot, and the lowest coefficient
//! of an integer cofactor is at least 1 — so every divisor coefficient is
//! at most the largest coefficient of the dividend.

use crate::numbers::{Int, Rat};
use crate::poly::Polynomial;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

/// Random nonzero polynomials with coefficients in `[0, max_coeff]` and
/// degree at most `max_deg`, reproducible from `seed`.
pub fn corpus(count: usize, max_deg: usize, max_coeff: u32, seed: u64) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let deg = rng.gen_range(0..=max_deg);
        let coeffs: Vec<Int> = (0..=deg)
            .map(|_| Int::from(rng.gen_range(0..=max_coeff)))
            .collect();
        let f = Polynomial::from_coeffs(coeffs);
        if !f.is_zero() {
            out.push(f);
        }
    }
    out
}

/// Random nonzero polynomials with coefficients in `[-max_coeff, max_coeff]`.
pub fn signed_corpus(count: usize, max_deg: usize, max_coeff: i32, seed: u64) -> Vec<Polynomial> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let deg = rng.gen_range(0..=max_deg);
        let coeffs: Vec<Int> = (0..=deg)
            .map(|_| Int::from(rng.gen_range(-max_coeff..=max_coeff)))
            .collect();
        let f = Polynomial::from_coeffs(coeffs);
        if !f.is_zero() {
            out.push(f);
        }
    }
    out
}

/// Every nonzero polynomial with coefficients in `[-max_coeff, max_coeff]`
/// and degree at most `max_deg`.
pub fn exhaustive_signed(max_deg: usize, max_coeff: i64) -> Vec<Polynomial> {
    let len = max_deg + 1;
    let width = (2 * max_coeff + 1) as u64;
    let total = width.checked_pow(len as u32).expect("search space overflow");
    assert!(total <= 1 << 24, "exhaustive corpus too large: {total}");
    let mut out = Vec::new();
    let mut v = vec![-max_coeff; len];
    loop {
        let f = Polynomial::from_coeffs(v.iter().map(|&c| Int::from(c)).collect());
        if !f.is_zero() {
            out.push(f);
        }
        let mut i = 0;
        loop {
            v[i] += 1;
            if v[i] <= max_coeff {
                break;
            }
            v[i] = -max_coeff;
            i += 1;
            if i == len {
                return out;
            }
        }
    }
}

/// Visit every vector in `[0, max]^len` (including all zeros).
fn for_each_candidate(len: usize, max: u64, mut visit: impl FnMut(&[u64])) {
    let mut v = vec![0u64; len];
    loop {
        visit(&v);
        let mut i = 0;
        loop {
            v[i] += 1;
            if v[i] <= max {
                break;
            }
            v[i] = 0;
            i += 1;
            if i == len {
                return;
            }
        }
    }
}

fn max_coeff_u64(f: &Polynomial) -> u64 {
    f.coeffs()
        .iter()
        .max()
        .expect("nonzero")
        .to_u64()
        .expect("oracle inputs stay small")
}

fn guard_search_space(deg: usize, cmax: u64) {
    let total = (cmax + 1)
        .checked_pow((deg + 1) as u32)
        .expect("search space overflow");
    assert!(total <= 1 << 24, "oracle search space too large: {total}");
}

/// All divisors of `f` among the nonnegative polynomials: every `g` with
/// `f = g * h` for some nonnegative `h`. Sorted canonically; contains 1
/// and `f`.
pub fn brute_divisors_nn(f: &Polynomial) -> Vec<Polynomial> {
    assert!(
        !f.is_zero() && f.is_nonneg(),
        "reference divisors need a nonzero nonnegative polynomial"
    );
    let deg = f.degree().expect("nonzero");
    let cmax = max_coeff_u64(f);
    guard_search_space(deg, cmax);
    let mut out = Vec::new();
    for_each_candidate(deg + 1, cmax, |v| {
        if v.iter().all(|&c| c == 0) {
            return;
        }
        let g = Polynomial::from_coeffs(v.iter().map(|&c| Int::from(c)).collect());
        if let Some(h) = f.div_exact(&g) {
            if h.is_nonneg() {
                out.push(g);
            }
        }
    });
    out.sort();
    out
}

/// Atom test among the nonnegative polynomials: a nonunit whose only
/// divisors are 1 and itself.
pub fn brute_is_atom_nn(f: &Polynomial) -> bool {
    !f.is_one() && brute_divisors_nn(f).len() == 2
}

/// All factorizations of `f` into atoms of the nonnegative polynomials,
/// as canonically sorted multisets (each inner list ascending, outer list
/// sorted). The factorization of 1 is the single empty list.
pub fn brute_factorizations_nn(f: &Polynomial) -> Vec<Vec<Polynomial>> {
    assert!(!f.is_zero() && f.is_nonneg());
    let mut ctx = BruteNn {
        divisors: HashMap::new(),
    };
    let mut out = ctx.rec(f, None);
    out.sort();
    out
}

struct BruteNn {
    divisors: HashMap<Polynomial, Vec<Polynomial>>,
}

impl BruteNn {
    fn divisors(&mut self, f: &Polynomial) -> Vec<Polynomial> {
        self.divisors
            .entry(f.clone())
            .or_insert_with(|| brute_divisors_nn(f))
            .clone()
    }

    fn is_atom(&mut self, f: &Polynomial) -> bool {
        !f.is_one() && self.divisors(f).len() == 2
    }

    fn rec(&mut self, f: &Polynomial, min: Option<&Polynomial>) -> Vec<Vec<Polynomial>> {
        if f.is_one() {
            return vec![vec![]];
        }
        let divs = self.divisors(f);
        let mut out = Vec::new();
        for a in divs {
            if a.is_one() {
                continue;
            }
            if min.is_some_and(|m| &a < m) {
                continue;
            }
            if !self.is_atom(&a) {
                continue;
            }
            let h = f.div_exact(&a).expect("listed divisor divides");
            for mut tail in self.rec(&h, Some(&a)) {
                let mut v = Vec::with_capacity(tail.len() + 1);
                v.push(a.clone());
                v.append(&mut tail);
                out.push(v);
            }
        }
        out
    }
}

/// Divisor classes of `f` among polynomials with nonnegative rational
/// coefficients, where every positive rational constant is a unit: each
/// class is represented by its primitive integer polynomial. Sorted;
/// contains 1 and the primitive part of `f`.
pub fn brute_divisor_classes_qp(f: &Polynomial) -> Vec<Polynomial> {
    assert!(
        !f.is_zero() && f.is_nonneg(),
        "reference divisor classes need a nonzero nonnegative polynomial"
    );
    let (_, fp) = f.content_primitive().expect("nonzero");
    let deg = fp.degree().expect("nonzero");
    let cmax = max_coeff_u64(&fp);
    guard_search_space(deg, cmax);
    let mut out = Vec::new();
    for_each_candidate(deg + 1, cmax, |v| {
        if v.iter().all(|&c| c == 0) {
            return;
        }
        let g = Polynomial::from_coeffs(v.iter().map(|&c| Int::from(c)).collect());
        let (content, _) = g.content_primitive().expect("nonzero");
        if content != Int::from(1) {
            return;
        }
        if let Some(h) = fp.div_exact(&g) {
            if h.is_nonneg() {
                out.push(g);
            }
        }
    });
    out.sort();
    out
}

/// Atom test where positive rational constants are units: true for
/// nonconstant `f` whose divisor classes are exactly 1 and its own
/// primitive part.
pub fn brute_is_atom_qp(f: &Polynomial) -> bool {
    if f.degree().is_none_or(|d| d == 0) {
        return false;
    }
    brute_divisor_classes_qp(f).len() == 2
}

/// All factorizations of `f` into atom classes (primitive representatives)
/// where positive rational constants are units.
pub fn brute_factorizations_qp(f: &Polynomial) -> Vec<Vec<Polynomial>> {
    assert!(!f.is_zero() && f.is_nonneg());
    let (_, fp) = f.content_primitive().expect("nonzero");
    let mut ctx = BruteQp {
        classes: HashMap::new(),
    };
    let mut out = ctx.rec(&fp, None);
    out.sort();
    out
}

struct BruteQp {
    classes: HashMap<Polynomial, Vec<Polynomial>>,
}

impl BruteQp {
    fn classes(&mut self, f: &Polynomial) -> Vec<Polynomial> {
        self.classes
            .entry(f.clone())
            .or_insert_with(|| brute_divisor_classes_qp(f))
            .clone()
    }

    fn is_atom(&mut self, f: &Polynomial) -> bool {
        f.degree().is_some_and(|d| d >= 1) && self.classes(f).len() == 2
    }

    fn rec(&mut self, f: &Polynomial, min: Option<&Polynomial>) -> Vec<Vec<Polynomial>> {
        if f.degree() == Some(0) {
            return vec![vec![]];
        }
        let classes = self.classes(f);
        let mut out = Vec::new();
        for a in classes {
            if a.degree() == Some(0) {
                continue;
            }
            if min.is_some_and(|m| &a < m) {
                continue;
            }
            if !self.is_atom(&a) {
                continue;
            }
            let h = f.div_exact(&a).expect("primitive class divides");
            for mut tail in self.rec(&h, Some(&a)) {
                let mut v = Vec::with_capacity(tail.len() + 1);
                v.push(a.clone());
                v.append(&mut tail);
                out.push(v);
            }
        }
        out
    }
}

/// Does `h` (nonconstant) have a rational root? Complete by exhausting all
/// `p/q` with `|p|` at most `|h(0)|` and `q` at most the leading
/// coefficient.
pub fn has_rational_root(h: &Polynomial) -> bool {
    let Some(deg) = h.degree() else {
        return false;
    };
    if deg == 0 {
        return false;
    }
    if h.coeff(0).is_zero() {
        return true;
    }
    let a0 = h
        .coeff(0)
        .abs()
        .to_u64()
        .expect("oracle inputs stay small");
    let lead = h
        .leading_coeff()
        .expect("nonzero")
        .abs()
        .to_u64()
        .expect("oracle inputs stay small");
    for q in 1..=lead {
        for p in 1..=a0 {
            for sp in [p as i64, -(p as i64)] {
                let r = Rat::new(Int::from(sp), Int::from(q));
                if h.eval_rat(&r).is_zero() {
                    return true;
                }
            }
        }
    }
    false
}

fn positive_divisors_i64(n: i64) -> Vec<i64> {
    let n = n.abs();
    assert!(n > 0);
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Does `h` have a quadratic integer factor? Requires `h(0)` and `h(1)`
/// nonzero (call after integer roots are ruled out). Complete because a
/// factor `ax^2 + bx + c` must satisfy `a | lead`, `c | h(0)`, and
/// `|a + b + c| <= |h(1)|`.
pub fn has_quadratic_factor(h: &Polynomial) -> bool {
    let Some(deg) = h.degree() else {
        return false;
    };
    if deg < 4 {
        // For degrees 2 and 3, reducibility already implies a linear factor.
        return false;
    }
    let lead = h
        .leading_coeff()
        .expect("nonzero")
        .to_i64()
        .expect("oracle inputs stay small");
    let h0 = h.coeff(0).to_i64().expect("oracle inputs stay small");
    let h1 = h.eval_int(&Int::from(1)).to_i64().expect("small");
    assert!(
        h0 != 0 && h1 != 0,
        "quadratic-factor search expects integer roots removed first"
    );
    for a in positive_divisors_i64(lead) {
        for c_abs in positive_divisors_i64(h0) {
            for c in [c_abs, -c_abs] {
                let bound = a + c.abs() + h1.abs();
                for b in -bound..=bound {
                    let u = Polynomial::from_i64(&[c, b, a]);
                    if h.div_exact(&u).is_some() {
                        return true;
                    }
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(coeffs: &[i64]) -> Polynomial {
        Polynomial::from_i64(coeffs)
    }

    #[test]
    fn corpus_is_reproducible_and_in_range() {
        let a = corpus(50, 4, 3, 7);
        let b = corpus(50, 4, 3, 7);
        assert_eq!(a, b);
        assert!(a.iter().all(|f| {
            !f.is_zero()
                && f.is_nonneg()
                && f.degree().unwrap() <= 4
                && f.coeffs().iter().all(|c| c <= &Int::from(3))
        }));
        assert_ne!(corpus(50, 4, 3, 8), a, "different seed, different corpus");
    }

    #[test]
    fn divisors_of_the_six_term_quintic() {
        // 1 + x + x^2 + x^3 + x^4 + x^5: six divisors among nonnegative
        // polynomials, because the sign-mixing quadratic is unusable.
        let f = p(&[1, 1, 1, 1, 1, 1]);
        let divs = brute_divisors_nn(&f);
        assert_eq!(
            divs,
            vec![
                Polynomial::one(),
                p(&[1, 1]),
                p(&[1, 1, 1]),
                p(&[1, 0, 0, 1]),
                p(&[1, 0, 1, 0, 1]),
                f.clone(),
            ]
        );
    }

    #[test]
    fn atoms_and_non_atoms() {
        assert!(brute_is_atom_nn(&p(&[1, 1])));
        assert!(brute_is_atom_nn(&p(&[2])));
        assert!(brute_is_atom_nn(&p(&[0, 1])), "x is an atom here");
        assert!(brute_is_atom_nn(&p(&[1, 0, 0, 1])), "x^3 + 1");
        assert!(brute_is_atom_nn(&p(&[1, 0, 1, 0, 1])), "x^4 + x^2 + 1");
        assert!(!brute_is_atom_nn(&Polynomial::one()));
        assert!(!brute_is_atom_nn(&p(&[4])));
        assert!(!brute_is_atom_nn(&p(&[1, 2, 1])));
        assert!(!brute_is_atom_nn(&p(&[2, 2])));
    }

    #[test]
    fn factorizations_of_the_six_term_quintic() {
        let f = p(&[1, 1, 1, 1, 1, 1]);
        let z = brute_factorizations_nn(&f);
        assert_eq!(
            z,
            vec![
                vec![p(&[1, 1]), p(&[1, 0, 1, 0, 1])],
                vec![p(&[1, 1, 1]), p(&[1, 0, 0, 1])],
            ]
        );
    }

    #[test]
    fn factorization_of_one_is_empty() {
        assert_eq!(brute_factorizations_nn(&Polynomial::one()), vec![vec![]]);
    }

    #[test]
    fn qp_constants_are_units() {
        assert_eq!(brute_divisor_classes_qp(&p(&[6])), vec![Polynomial::one()]);
        assert!(!brute_is_atom_qp(&p(&[2])));
        assert!(brute_is_atom_qp(&p(&[2, 2])), "2x + 2 ~ x + 1");
        assert!(brute_is_atom_qp(&p(&[1, 0, 1, 0, 1])));
        assert_eq!(brute_factorizations_qp(&p(&[3])), vec![vec![]]);
    }

    #[test]
    fn qp_divisor_classes_of_the_six_term_quintic() {
        let f = p(&[1, 1, 1, 1, 1, 1]);
        assert_eq!(
            brute_divisor_classes_qp(&f),
            vec![
                Polynomial::one(),
                p(&[1, 1]),
                p(&[1, 1, 1]),
                p(&[1, 0, 0, 1]),
                p(&[1, 0, 1, 0, 1]),
                f.clone(),
            ]
        );
        assert_eq!(
            brute_factorizations_qp(&f.scale(&Int::from(5))),
            brute_factorizations_qp(&f),
            "unit content does not change factorizations"
        );
    }

    #[test]
    fn rational_root_detection() {
        assert!(has_rational_root(&p(&[1, 1])));
        assert!(has_rational_root(&p(&[-1, 2])), "root 1/2");
        assert!(has_rational_root(&p(&[0, 0, 1])), "root 0");
        assert!(!has_rational_root(&p(&[1, 1, 1])));
        assert!(!has_rational_root(&p(&[1, -1, 1])));
        assert!(!has_rational_root(&p(&[2])));
    }

    #[test]
    fn quadratic_factor_detection() {
        // x^4 + x^2 + 1 = (x^2+x+1)(x^2-x+1)
        assert!(has_quadratic_factor(&p(&[1, 0, 1, 0, 1])));
        // x^4 + 4 = (x^2+2x+2)(x^2-2x+2)
        assert!(has_quadratic_factor(&p(&[4, 0, 0, 0, 1])));
        // x^4 + 1 is irreducible.
        assert!(!has_quadratic_factor(&p(&[1, 0, 0, 0, 1])));
        // x^4 + x^3 + x^2 + x + 1 is irreducible.
        assert!(!has_quadratic_factor(&p(&[1, 1, 1, 1, 1])));
    }
}

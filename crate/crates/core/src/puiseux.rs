//! The additive rational monoid generated by the powers of a fixed
//! rational r in (0,1) whose numerator is at least 2: exact membership,
//! canonical coefficient vectors, divisibility, atom certification,
//! maximal common divisors with maximality certificates, and explicit
//! witnesses that ascending chains of principal ideals fail to stabilize.
//!
//! Every element is a finite sum `Σ c_j r^j` with natural coefficients.
//! The single rewriting identity `n·r^j = d·r^{j+1}` (for r = n/d in
//! lowest terms) connects all representations of a value. The canonical
//! form keeps every coefficient below the top index smaller than n; it is
//! computed by exact digit extraction from the value, so all algorithms
//! depend only on values, never on which representation was supplied.
//!
//! Key structural fact used throughout: if the canonical coefficients of
//! an element are ALL smaller than n (top included), no rewriting move
//! applies, the representation is unique, and therefore the divisors of
//! the element are exactly the coefficient-wise dominated sub-vectors —
//! a finite lattice. Elements whose top coefficient reaches n admit
//! arbitrarily deep representations and have infinitely many divisors.

use crate::error::{Error, Result};
use crate::numbers::{rat_str, Natural, Rat};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;
use std::fmt;

/// Default bound on the depth (power of the denominator) explored when
/// deciding membership.
pub const DEFAULT_DEPTH_CAP: usize = 64;

/// A member of the monoid: its exact value together with the canonical
/// coefficient vector (index j holds the coefficient of r^j).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PuiseuxElement {
    value: Rat,
    digits: Vec<Natural>,
}

impl PuiseuxElement {
    pub fn value(&self) -> &Rat {
        &self.value
    }

    /// Canonical coefficients, lowest power first, no trailing zeros.
    pub fn digits(&self) -> &[Natural] {
        &self.digits
    }

    pub fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// Index of the highest power with a nonzero coefficient (0 for the
    /// zero element, which has none).
    pub fn top_index(&self) -> usize {
        self.digits.len().saturating_sub(1)
    }
}

impl fmt::Display for PuiseuxElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&rat_str(&self.value))
    }
}

/// The monoid fixed by its generator ratio r = n/d.
#[derive(Debug, Clone)]
pub struct PuiseuxMonoid {
    r: Rat,
    num: Natural,
    den: Natural,
    depth_cap: usize,
}

/// How a maximal-common-divisor run certified maximality.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum McdCertificate {
    /// Some remainder is zero; in a reduced monoid only zero divides zero,
    /// so no nonzero common divisor of the remainders can exist.
    ZeroRemainder { index: usize },
    /// The complete divisor set of a distinguished remainder was checked
    /// and no nonzero entry divides every remainder.
    DivisorSearchExhausted { candidates_checked: usize },
}

impl McdCertificate {
    pub fn describe(&self) -> String {
        match self {
            McdCertificate::ZeroRemainder { index } => format!(
                "remainder #{index} is zero and only zero divides zero in a reduced monoid"
            ),
            McdCertificate::DivisorSearchExhausted { candidates_checked } => format!(
                "no nonzero entry of the distinguished remainder's complete divisor set \
                 ({candidates_checked} candidates) divides every remainder"
            ),
        }
    }
}

/// Result of a maximal-common-divisor computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct McdOutcome {
    pub value: PuiseuxElement,
    pub remainders: Vec<PuiseuxElement>,
    pub certificate: McdCertificate,
    pub greedy_steps: usize,
}

/// A finite prefix of the infinite strictly ascending chain of principal
/// ideals: elements a_0, …, a_L with a_i = a_{i+1} + gap_{i+1} and every
/// gap a certified nonzero member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainWitness {
    pub elements: Vec<PuiseuxElement>,
    pub gaps: Vec<PuiseuxElement>,
}

impl PuiseuxMonoid {
    pub fn new(r: &Rat) -> Result<Self> {
        Self::with_depth_cap(r, DEFAULT_DEPTH_CAP)
    }

    pub fn with_depth_cap(r: &Rat, depth_cap: usize) -> Result<Self> {
        if !(r > &Rat::zero() && r < &Rat::one()) {
            return Err(Error::domain(format!(
                "generator ratio must satisfy 0 < r < 1, got {}",
                rat_str(r)
            )));
        }
        let num = r
            .numer()
            .to_biguint()
            .expect("positive rational has a positive numerator");
        let den = r
            .denom()
            .to_biguint()
            .expect("reduced rational has a positive denominator");
        if num < Natural::from(2u32) {
            return Err(Error::domain(format!(
                "generator numerator must be at least 2 for atomicity, got {}",
                rat_str(r)
            )));
        }
        Ok(PuiseuxMonoid {
            r: r.clone(),
            num,
            den,
            depth_cap,
        })
    }

    pub fn r(&self) -> &Rat {
        &self.r
    }

    pub fn numerator(&self) -> &Natural {
        &self.num
    }

    pub fn denominator(&self) -> &Natural {
        &self.den
    }

    pub fn depth_cap(&self) -> usize {
        self.depth_cap
    }

    /// Exact value of r^j.
    pub fn r_pow(&self, j: usize) -> Rat {
        let n = BigInt::from(self.num.clone()).pow(j as u32);
        let d = BigInt::from(self.den.clone()).pow(j as u32);
        Rat::new(n, d)
    }

    fn digits_value(&self, digits: &[Natural]) -> Rat {
        let mut acc = Rat::zero();
        for (j, c) in digits.iter().enumerate() {
            if !c.is_zero() {
                acc += Rat::from(BigInt::from(c.clone())) * self.r_pow(j);
            }
        }
        acc
    }

    /// Decide membership of a nonnegative rational and return its
    /// canonical coefficient vector when it is a member.
    ///
    /// The minimal depth m is fixed by the denominator (it must divide
    /// d^m); clearing denominators turns the question into exact digit
    /// extraction: the coefficient at each level below the top is forced
    /// modulo n, and a forced subtraction that would go negative refutes
    /// membership outright.
    pub fn is_member(&self, q: &Rat) -> Result<Option<PuiseuxElement>> {
        if q.is_negative() {
            return Err(Error::domain(format!(
                "membership is defined on nonnegative rationals, got {}",
                rat_str(q)
            )));
        }
        if q.is_zero() {
            return Ok(Some(PuiseuxElement {
                value: Rat::zero(),
                digits: vec![],
            }));
        }
        let denom = q
            .denom()
            .to_biguint()
            .expect("reduced rational has a positive denominator");

        // Minimal m with denom | d^m: peel gcd(·, d) repeatedly.
        let mut m = 0usize;
        let mut cur = denom;
        while !cur.is_one() {
            let g = cur.gcd(&self.den);
            if g.is_one() {
                return Ok(None); // denominator has a prime outside d
            }
            cur /= &g;
            m += 1;
            if m > self.depth_cap {
                return Err(Error::capacity(format!(
                    "membership for {} needs depth {m}, beyond the cap {}",
                    rat_str(q),
                    self.depth_cap
                )));
            }
        }

        // Powers of d up to d^m, then the cleared integer target.
        let mut d_pow = Vec::with_capacity(m + 1);
        d_pow.push(Natural::one());
        for _ in 0..m {
            d_pow.push(d_pow.last().unwrap() * &self.den);
        }
        let numer = q.numer().to_biguint().expect("q > 0");
        let scaled = &numer * &d_pow[m];
        let denom = q.denom().to_biguint().expect("positive");
        debug_assert!((&scaled % &denom).is_zero());
        let mut t = scaled / denom;

        let inv_d = modular_inverse(&self.den, &self.num)
            .expect("numerator and denominator are coprime");
        let mut digits: Vec<Natural> = Vec::with_capacity(m + 1);
        for j in 0..m {
            let exp = Natural::from((m - j) as u64);
            let inv_pow = inv_d.modpow(&exp, &self.num);
            let c = (&t % &self.num) * inv_pow % &self.num;
            let sub = &c * &d_pow[m - j];
            if t < sub {
                return Ok(None);
            }
            t = (t - sub) / &self.num;
            digits.push(c);
        }
        digits.push(t);
        while digits.last().is_some_and(Natural::is_zero) {
            digits.pop();
        }
        debug_assert_eq!(self.digits_value(&digits), *q);
        Ok(Some(PuiseuxElement {
            value: q.clone(),
            digits,
        }))
    }

    /// Convenience: membership of a value that must already be a member.
    fn member(&self, q: &Rat) -> Result<PuiseuxElement> {
        self.is_member(q)?.ok_or_else(|| {
            Error::internal(format!("{} expected to be a member", rat_str(q)))
        })
    }

    /// Additive divisibility: a divides b when b − a is a member.
    pub fn divides(&self, a: &PuiseuxElement, b: &PuiseuxElement) -> Result<bool> {
        if a.value > b.value {
            return Ok(false);
        }
        Ok(self.is_member(&(&b.value - &a.value))?.is_some())
    }

    /// True when every canonical coefficient (top included) is below the
    /// numerator — exactly the elements with a unique representation and
    /// hence a finite divisor set.
    pub fn has_finite_divisor_set(&self, x: &PuiseuxElement) -> bool {
        x.digits.iter().all(|c| *c < self.num)
    }

    /// The complete, finite divisor set of an element all of whose
    /// canonical coefficients are below the numerator: exactly the values
    /// of coefficient-wise dominated sub-vectors, ascending by value.
    ///
    /// With every coefficient below n no rewriting move applies, so the
    /// canonical vector is the element's only representation; any
    /// divisor/complement pair must therefore split it coefficient-wise.
    pub fn divisors(&self, x: &PuiseuxElement) -> Result<Vec<PuiseuxElement>> {
        if !self.has_finite_divisor_set(x) {
            return Err(Error::domain(format!(
                "element {} has a coefficient reaching the numerator; its divisor set is infinite",
                x
            )));
        }
        let mut out = Vec::new();
        let mut sub: Vec<Natural> = vec![Natural::zero(); x.digits.len()];
        loop {
            let mut digits = sub.clone();
            while digits.last().is_some_and(Natural::is_zero) {
                digits.pop();
            }
            let value = self.digits_value(&digits);
            debug_assert!(self
                .is_member(&(&x.value - &value))
                .is_ok_and(|c| c.is_some()));
            out.push(PuiseuxElement { value, digits });

            // Odometer step over the dominance lattice.
            let mut i = 0;
            loop {
                if i == sub.len() {
                    out.sort_by(|a, b| a.value.cmp(&b.value));
                    return Ok(out);
                }
                if sub[i] < x.digits[i] {
                    sub[i] += 1u32;
                    break;
                }
                sub[i] = Natural::zero();
                i += 1;
            }
        }
    }

    /// Brute-force divisor search used to cross-check the lattice
    /// enumeration: collect every representable value up to the target
    /// over coefficient vectors of depth at most top_index + extra_depth
    /// (value-pruned), then keep those whose complement is a member.
    pub fn divisors_bounded_search(
        &self,
        x: &PuiseuxElement,
        extra_depth: usize,
    ) -> Result<Vec<Rat>> {
        let limit = x.top_index() + extra_depth;
        let mut values: BTreeSet<Rat> = BTreeSet::new();
        let mut stack: Vec<(usize, Rat)> = vec![(0, Rat::zero())];
        while let Some((level, acc)) = stack.pop() {
            if level > limit {
                values.insert(acc);
                continue;
            }
            let step = self.r_pow(level);
            let mut add = Rat::zero();
            loop {
                let total = &acc + &add;
                if total > x.value {
                    break;
                }
                stack.push((level + 1, total));
                add += &step;
            }
        }
        let mut out = Vec::new();
        for v in values {
            if self.is_member(&(&x.value - &v))?.is_some() {
                out.push(v);
            }
        }
        Ok(out)
    }

    /// Certify whether r^j is an atom by exhaustively searching its
    /// divisors (with a safety margin of extra depth beyond the canonical
    /// top index): an atom has no divisor besides zero and itself.
    pub fn atom_test(&self, j: usize) -> Result<bool> {
        let x = self.member(&self.r_pow(j))?;
        let divisors = self.divisors_bounded_search(&x, 4)?;
        Ok(divisors.len() == 2)
    }

    /// Rewrite a canonical coefficient vector to place its top index at
    /// exactly `target`, pushing groups of n top coefficients down into d
    /// at the next level. Requires the top coefficient to be at least n
    /// whenever a push is needed; returns None when stuck.
    fn deepen_to(&self, digits: &[Natural], target: usize) -> Option<Vec<Natural>> {
        let mut v = digits.to_vec();
        if v.is_empty() {
            return None;
        }
        while v.len() - 1 < target {
            let top = v.last().unwrap().clone();
            let (groups, rest) = top.div_rem(&self.num);
            if groups.is_zero() {
                return None;
            }
            *v.last_mut().unwrap() = rest;
            v.push(groups * &self.den);
        }
        if v.len() - 1 == target {
            Some(v)
        } else {
            None
        }
    }

    /// A maximal common divisor with a maximality certificate.
    ///
    /// Procedure: if possible, rewrite all inputs to a common top index
    /// and strip the minimum top coefficient times that power; then
    /// greedily add the largest nonzero common divisor drawn from the
    /// complete divisor set of a distinguished remainder (one with all
    /// coefficients below the numerator) until none exists. Termination:
    /// remainders live on the fixed grid (1/d^M)·ℕ₀ and every step
    /// subtracts a positive grid value.
    pub fn mcd(&self, inputs: &[PuiseuxElement]) -> Result<McdOutcome> {
        if inputs.is_empty() {
            return Err(Error::domain(
                "maximal common divisor requires at least one element",
            ));
        }
        let mut y = Rat::zero();
        let mut rems: Vec<PuiseuxElement> = inputs.to_vec();

        // Opening move: align at a common top index and strip the shared
        // top coefficient, unless some input is already zero or the
        // alignment is impossible (an element stuck shallow).
        if rems.iter().all(|e| !e.is_zero()) {
            let target = rems.iter().map(PuiseuxElement::top_index).max().unwrap();
            let aligned: Option<Vec<Vec<Natural>>> = rems
                .iter()
                .map(|e| self.deepen_to(&e.digits, target))
                .collect();
            if let Some(aligned) = aligned {
                let min_top = aligned
                    .iter()
                    .map(|v| v.last().unwrap().clone())
                    .min()
                    .unwrap();
                if !min_top.is_zero() {
                    let strip =
                        Rat::from(BigInt::from(min_top)) * self.r_pow(target);
                    y += &strip;
                    for rem in &mut rems {
                        *rem = self.member(&(&rem.value - &strip))?;
                    }
                }
            }
        }

        let mut steps = 0usize;
        let certificate = loop {
            steps += 1;
            if steps > 10_000 {
                return Err(Error::capacity(
                    "maximal common divisor exceeded 10000 greedy steps",
                ));
            }
            if let Some(index) = rems.iter().position(PuiseuxElement::is_zero) {
                break McdCertificate::ZeroRemainder { index };
            }
            let dist = rems
                .iter()
                .position(|e| self.has_finite_divisor_set(e))
                .ok_or_else(|| {
                    Error::internal("no remainder with a finite divisor set")
                })?;
            let mut candidates = self.divisors(&rems[dist])?;
            candidates.reverse(); // descending by value
            let found = {
                let mut hit = None;
                let mut checked = 0usize;
                for t in &candidates {
                    if t.is_zero() {
                        continue;
                    }
                    checked += 1;
                    let mut ok = true;
                    for rem in &rems {
                        if t.value > rem.value
                            || self.is_member(&(&rem.value - &t.value))?.is_none()
                        {
                            ok = false;
                            break;
                        }
                    }
                    if ok {
                        hit = Some(t.clone());
                        break;
                    }
                }
                (hit, checked)
            };
            match found {
                (Some(t), _) => {
                    y += &t.value;
                    for rem in &mut rems {
                        *rem = self.member(&(&rem.value - &t.value))?;
                    }
                }
                (None, checked) => {
                    break McdCertificate::DivisorSearchExhausted {
                        candidates_checked: checked,
                    }
                }
            }
        };

        let value = self.member(&y)?;
        for (i, x) in inputs.iter().enumerate() {
            if !self.divides(&value, x)? {
                return Err(Error::internal(format!(
                    "computed common divisor {} does not divide input #{i}",
                    value
                )));
            }
        }
        Ok(McdOutcome {
            value,
            remainders: rems,
            certificate,
            greedy_steps: steps,
        })
    }

    /// The explicit chain witness: a_i = n·r^i descends strictly under
    /// divisibility forever, because a_i = a_{i+1} + (d−n)·r^{i+1} with a
    /// nonzero gap. Every element and gap is certified by membership and
    /// the defining identity is re-checked exactly at each link.
    pub fn accp_chain(&self, depth: usize) -> Result<ChainWitness> {
        if depth < 1 {
            return Err(Error::domain("chain depth must be at least 1"));
        }
        let n_rat = Rat::from(BigInt::from(self.num.clone()));
        let gap_scale = Rat::from(BigInt::from(&self.den - &self.num));
        let mut elements = Vec::with_capacity(depth + 1);
        for i in 0..=depth {
            elements.push(self.member(&(&n_rat * self.r_pow(i)))?);
        }
        let mut gaps = Vec::with_capacity(depth);
        for i in 1..=depth {
            let gap = self.member(&(&gap_scale * self.r_pow(i)))?;
            if gap.is_zero() {
                return Err(Error::internal("chain gap must be nonzero"));
            }
            if &elements[i - 1].value - &elements[i].value != gap.value {
                return Err(Error::internal(format!(
                    "chain identity fails at link {i}"
                )));
            }
            gaps.push(gap);
        }
        Ok(ChainWitness { elements, gaps })
    }
}

/// Inverse of a modulo m (both positive, coprime), if it exists.
fn modular_inverse(a: &Natural, m: &Natural) -> Option<Natural> {
    let a = BigInt::from(a.clone());
    let m = BigInt::from(m.clone());
    let ext = a.extended_gcd(&m);
    if !ext.gcd.is_one() {
        return None;
    }
    let inv = ((ext.x % &m) + &m) % &m;
    inv.to_biguint()
}

//! The multiplicative monoid of all nonnegative integers together with
//! every rational at least a fixed threshold k ≥ 2: membership, a
//! direct-search atom decision, deterministic sampling of distinct atom
//! factorizations, and sound bounded length sets.
//!
//! The structure is value-driven: a product of two non-units is either a
//! product of integers or has at least one rational factor ≥ k, so a
//! member q is reducible exactly when it splits as an integer times a
//! member ≥ k or as two rationals that both clear the threshold. Atoms
//! turn out to be the primes below 2k and the non-integers in [k, 2k),
//! but the decision procedure here searches for explicit splits rather
//! than trusting that characterization (tests cross-check the two).

use crate::error::{Error, Result};
use crate::numbers::{factor_nat, is_prime, rat_str, Natural, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeSet;

/// Default recursion budget for bounded length-set exploration.
pub const DEFAULT_NQ_LENGTH_BUDGET: u64 = 8;

/// The monoid fixed by its rational threshold.
#[derive(Debug, Clone)]
pub struct NqMonoid {
    k: u64,
    k_rat: Rat,
}

/// Sampling outcome: either the input is an atom (empty list), or a
/// deterministic list of distinct atom factorizations.
#[derive(Debug, Clone)]
pub struct NqSample {
    pub is_atom: bool,
    pub factorizations: Vec<Vec<Rat>>,
}

/// Bounded length-set outcome. `partial` is always true: the set is a
/// certified subset of the full length set, with no completeness claim.
#[derive(Debug, Clone)]
pub struct NqLengthSet {
    pub lengths: BTreeSet<u64>,
    pub partial: bool,
}

impl NqMonoid {
    pub fn new(k: u64) -> Result<Self> {
        if k < 2 {
            return Err(Error::domain(format!(
                "threshold must be at least 2, got {k}"
            )));
        }
        Ok(NqMonoid {
            k,
            k_rat: Rat::from(BigInt::from(k)),
        })
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// Membership: a nonnegative integer, or any rational at least k.
    pub fn is_member(&self, q: &Rat) -> bool {
        (q.is_integer() && !q.is_negative()) || *q >= self.k_rat
    }

    fn require_member(&self, q: &Rat) -> Result<()> {
        if !self.is_member(q) {
            return Err(Error::domain(format!(
                "{} is not a member (not a nonnegative integer and below {})",
                rat_str(q),
                self.k
            )));
        }
        Ok(())
    }

    /// Find a split q = a·b into two non-unit members, if one exists:
    /// first among integer divisors, then among integer-by-rational
    /// splits q = m·(q/m) with q/m clearing the threshold.
    fn reduction_witness(&self, q: &Rat) -> Result<Option<(Rat, Rat)>> {
        if q.is_zero() {
            // 0 = 0 · 2 is a split into non-units.
            return Ok(Some((Rat::zero(), Rat::from(BigInt::from(2)))));
        }
        if q.is_integer() {
            let n = q.to_integer().to_biguint().expect("nonnegative");
            if !n.is_one() {
                let primes = factor_nat(&n)?;
                if primes.big_omega() >= 2 {
                    let p = primes.flat().remove(0);
                    let p = Rat::from(BigInt::from(p));
                    return Ok(Some((p.clone(), q / p)));
                }
            }
        }
        // q = m · (q/m) with m an integer ≥ 2 and q/m ≥ k. If any such
        // m exists then m = 2 already qualifies, because q/2 ≥ q/m ≥ k.
        let m_max = (q / &self.k_rat).floor().to_integer();
        if m_max >= BigInt::from(2) {
            let two = Rat::from(BigInt::from(2));
            let cofactor = q / &two;
            debug_assert!(cofactor >= self.k_rat);
            return Ok(Some((two, cofactor)));
        }
        Ok(None)
    }

    /// Atom decision by explicit split search: a member is an atom when
    /// it is neither zero nor the unit and no split into two non-unit
    /// members exists.
    pub fn is_atom(&self, q: &Rat) -> Result<bool> {
        self.require_member(q)?;
        if q.is_zero() || q.is_one() {
            return Ok(false);
        }
        Ok(self.reduction_witness(q)?.is_none())
    }

    /// Deterministic sample of distinct factorizations of a nonzero
    /// non-unit member into certified atoms. Atom inputs yield the flag
    /// and an empty list; otherwise the list holds at least
    /// min(count, what the staged search can reach) entries: the prime
    /// multiset when every prime factor is an atom, then two-atom
    /// rational splits from a deterministic sequence inside the feasible
    /// interval, then recursive splits through small prime atoms.
    pub fn factorization_sample(&self, q: &Rat, count: usize) -> Result<NqSample> {
        self.require_member(q)?;
        if q.is_zero() || q.is_one() {
            return Err(Error::domain(
                "sampling is defined for nonzero non-unit members",
            ));
        }
        if self.is_atom(q)? {
            return Ok(NqSample {
                is_atom: true,
                factorizations: vec![],
            });
        }
        let mut out: BTreeSet<Vec<Rat>> = BTreeSet::new();
        self.sample_into(q, count, 0, &mut out)?;
        let factorizations: Vec<Vec<Rat>> = out.into_iter().collect();
        for z in &factorizations {
            debug_assert_eq!(z.iter().product::<Rat>(), *q);
            for part in z {
                debug_assert!(self.is_atom(part).unwrap_or(false));
            }
        }
        Ok(NqSample {
            is_atom: false,
            factorizations,
        })
    }

    fn sample_into(
        &self,
        q: &Rat,
        count: usize,
        depth: usize,
        out: &mut BTreeSet<Vec<Rat>>,
    ) -> Result<()> {
        if out.len() >= count || depth > 64 {
            return Ok(());
        }
        // Stage 1: the prime multiset, valid when every prime is an atom.
        if q.is_integer() {
            let n = q.to_integer().to_biguint().expect("nonnegative");
            let primes = factor_nat(&n)?.flat();
            let mut all_atoms = true;
            let mut z = Vec::with_capacity(primes.len());
            for p in primes {
                let p = Rat::from(BigInt::from(p));
                if !self.is_atom(&p)? {
                    all_atoms = false;
                    break;
                }
                z.push(p);
            }
            if all_atoms && z.len() >= 2 {
                out.insert(z);
            }
        }
        // Stage 2: two-atom rational splits along a deterministic
        // sequence inside the feasible interval.
        for (a, b) in self.two_atom_splits(q, count.saturating_sub(out.len()))? {
            let mut z = vec![a, b];
            z.sort();
            out.insert(z);
            if out.len() >= count {
                return Ok(());
            }
        }
        // Stage 3: peel a small prime atom and recurse on the cofactor.
        for p in 2..(2 * self.k) {
            if out.len() >= count {
                return Ok(());
            }
            if !is_prime(&Natural::from(p))? {
                continue;
            }
            let p_rat = Rat::from(BigInt::from(p));
            let cofactor = q / &p_rat;
            if !self.is_member(&cofactor) || cofactor.is_one() || cofactor.is_zero() {
                continue;
            }
            if self.is_atom(&cofactor)? {
                let mut z = vec![p_rat, cofactor];
                z.sort();
                out.insert(z);
                continue;
            }
            let mut inner: BTreeSet<Vec<Rat>> = BTreeSet::new();
            self.sample_into(&cofactor, count.saturating_sub(out.len()), depth + 1, &mut inner)?;
            for tail in inner {
                let mut z = tail;
                z.push(p_rat.clone());
                z.sort();
                out.insert(z);
                if out.len() >= count {
                    return Ok(());
                }
            }
        }
        Ok(())
    }

    /// Deterministic sequence of splits q = d·(q/d) with both parts
    /// certified atoms. Candidates walk d_j = M/(1 + 1/(j + c0)) upward
    /// toward the midpoint M of the feasible interval (A, B) where both
    /// parts stay strictly inside [k, 2k); c0 is the least offset that
    /// keeps d_0 above A. Parts that land on integers are filtered by
    /// certification rather than assumed.
    fn two_atom_splits(&self, q: &Rat, want: usize) -> Result<Vec<(Rat, Rat)>> {
        let mut found = Vec::new();
        if want == 0 {
            return Ok(found);
        }
        let two_k = Rat::from(BigInt::from(2 * self.k));
        let lower = max_rat(&self.k_rat, &(q / &two_k));
        let upper = min_rat(&two_k, &(q / &self.k_rat));
        if lower >= upper {
            return Ok(found);
        }
        let mid = (&lower + &upper) / Rat::from(BigInt::from(2));
        let gap = &mid - &lower;
        debug_assert!(gap.is_positive());
        let c0 = (&lower / &gap).floor().to_integer() + BigInt::one();
        let mut seen: BTreeSet<Rat> = BTreeSet::new();
        let attempts = 10 * want + 100;
        for j in 0..attempts {
            let offset = Rat::from(&c0 + BigInt::from(j));
            let mu = Rat::one() + offset.recip();
            let d = &mid / mu;
            debug_assert!(d > lower && d < upper);
            let cofactor = q / &d;
            if self.is_atom(&d)? && self.is_atom(&cofactor)? && seen.insert(d.clone()) {
                found.push((d, cofactor));
                if found.len() >= want {
                    break;
                }
            }
        }
        Ok(found)
    }

    /// A certified subset of the length set, exploring factorizations of
    /// at most `max_len` parts: atom lengths, witnessed two-atom splits,
    /// and recursive peeling of small prime atoms. Always flagged
    /// partial — no claim of exhaustiveness is made.
    pub fn length_set_bounded(&self, q: &Rat, max_len: u64) -> Result<NqLengthSet> {
        self.require_member(q)?;
        if q.is_zero() {
            return Err(Error::domain(
                "length sets are defined for nonzero members",
            ));
        }
        let lengths = self.lengths_rec(q, max_len)?;
        Ok(NqLengthSet {
            lengths,
            partial: true,
        })
    }

    fn lengths_rec(&self, q: &Rat, budget: u64) -> Result<BTreeSet<u64>> {
        let mut out = BTreeSet::new();
        if q.is_one() {
            out.insert(0);
            return Ok(out);
        }
        if budget == 0 {
            return Ok(out);
        }
        if self.is_atom(q)? {
            out.insert(1);
            return Ok(out);
        }
        if budget >= 2 {
            if !self.two_atom_splits(q, 1)?.is_empty() {
                out.insert(2);
            }
            if q.is_integer() {
                let n = q.to_integer().to_biguint().expect("nonnegative");
                if !n.is_zero() && !n.is_one() {
                    let primes = factor_nat(&n)?;
                    if primes.big_omega() == 2 {
                        let flat = primes.flat();
                        let a = Rat::from(BigInt::from(flat[0].clone()));
                        let b = Rat::from(BigInt::from(flat[1].clone()));
                        if self.is_atom(&a)? && self.is_atom(&b)? {
                            out.insert(2);
                        }
                    }
                }
            }
            for p in 2..(2 * self.k) {
                if !is_prime(&Natural::from(p))? {
                    continue;
                }
                let cofactor = q / Rat::from(BigInt::from(p));
                if !self.is_member(&cofactor) || cofactor.is_one() || cofactor.is_zero() {
                    continue;
                }
                for len in self.lengths_rec(&cofactor, budget - 1)? {
                    if len < budget {
                        out.insert(len + 1);
                    }
                }
            }
        }
        Ok(out)
    }
}

fn max_rat(a: &Rat, b: &Rat) -> Rat {
    if a >= b {
        a.clone()
    } else {
        b.clone()
    }
}

fn min_rat(a: &Rat, b: &Rat) -> Rat {
    if a <= b {
        a.clone()
    } else {
        b.clone()
    }
}

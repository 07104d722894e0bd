//! The semiring of finite formal sums `Σ c_γ · e^γ` with natural
//! coefficients and exponents drawn from a fixed Puiseux-type rational
//! monoid: exact multiplication, exact division with quotient recovery,
//! decomposition into content · monomial · reduced part, and budgeted
//! enumeration of atom factorizations with explicit completeness flags.
//!
//! There is no cancellation among natural numbers, so the support of a
//! product is the exact sumset of the supports. Two consequences drive
//! the algorithms here: the least exponent of a product is the sum of
//! the least exponents, and a quotient's least term is forced by the
//! least terms of dividend and divisor — division is a deterministic
//! greedy peel, not a search.

use crate::error::{Error, Result};
use crate::numbers::{factor_nat, parse_rat, rat_str, Natural, Rat};
use crate::puiseux::{McdCertificate, PuiseuxElement, PuiseuxMonoid};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

/// Default ceiling on how many factorizations an enumeration may emit
/// before it truncates and clears its completeness flag.
pub const DEFAULT_MS_BUDGET: usize = 512;

/// Ceiling on candidate divisors examined per element before the search
/// refuses with a capacity error.
const DIVISOR_CANDIDATE_CAP: usize = 200_000;

/// A finite formal sum of exponential terms with natural coefficients,
/// keyed by exponent. The zero element has no terms; coefficients are
/// always at least 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct MsElement {
    terms: BTreeMap<Rat, Natural>,
}

impl MsElement {
    pub fn zero() -> Self {
        MsElement::default()
    }

    pub fn one() -> Self {
        MsElement::constant(Natural::one())
    }

    pub fn constant(c: Natural) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Rat::zero(), c);
        }
        MsElement { terms }
    }

    /// Build `c · e^exp`; the exponent must belong to the monoid.
    pub fn monomial(monoid: &PuiseuxMonoid, exp: &Rat, c: Natural) -> Result<Self> {
        if monoid.is_member(exp)?.is_none() {
            return Err(Error::domain(format!(
                "exponent {} is not a member of the exponent monoid",
                rat_str(exp)
            )));
        }
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exp.clone(), c);
        }
        Ok(MsElement { terms })
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self
                .terms
                .get(&Rat::zero())
                .is_some_and(|c| c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rat, &Natural)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Sum of all coefficients — a multiplicative map to the naturals
    /// (the image of the element under exponent collapse).
    pub fn coefficient_sum(&self) -> Natural {
        self.terms.values().sum()
    }

    fn min_exponent(&self) -> Option<&Rat> {
        self.terms.keys().next()
    }

    fn coefficient_gcd(&self) -> Natural {
        let mut g = Natural::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
        }
        g
    }

    /// Parse `c`, `e(p/q)`, or `c*e(p/q)` terms joined by `+`. Exponents
    /// must be members of the monoid; whitespace is free.
    pub fn parse(monoid: &PuiseuxMonoid, input: &str) -> Result<Self> {
        let compact: String = input.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::parse(0, "empty element"));
        }
        let mut out = MsElement::zero();
        for part in compact.split('+') {
            if part.is_empty() {
                return Err(Error::parse(0, "empty term between plus signs"));
            }
            let (coeff_text, exp_text) = match part.find('e') {
                None => (part, None),
                Some(0) => ("1", Some(&part[1..])),
                Some(i) => {
                    if !part[..i].ends_with('*') {
                        return Err(Error::parse(
                            i,
                            format!("expected `*` before `e` in term `{part}`"),
                        ));
                    }
                    (&part[..i - 1], Some(&part[i + 1..]))
                }
            };
            let coeff: Natural = coeff_text.parse().map_err(|_| {
                Error::parse(0, format!("invalid coefficient `{coeff_text}`"))
            })?;
            let exp = match exp_text {
                None => Rat::zero(),
                Some(t) => {
                    let inner = t
                        .strip_prefix('(')
                        .and_then(|t| t.strip_suffix(')'))
                        .ok_or_else(|| {
                            Error::parse(0, format!("expected e(p/q) in term `{part}`"))
                        })?;
                    parse_rat(inner)?
                }
            };
            if exp.is_negative() {
                return Err(Error::domain(format!(
                    "exponent {} is negative",
                    rat_str(&exp)
                )));
            }
            if monoid.is_member(&exp)?.is_none() {
                return Err(Error::domain(format!(
                    "exponent {} is not a member of the exponent monoid",
                    rat_str(&exp)
                )));
            }
            if !coeff.is_zero() {
                let slot = out.terms.entry(exp).or_insert_with(Natural::zero);
                *slot += coeff;
            }
        }
        Ok(out)
    }
}

impl fmt::Display for MsElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        let mut first = true;
        for (exp, c) in &self.terms {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if exp.is_zero() {
                write!(f, "{c}")?;
            } else if c.is_one() {
                write!(f, "e({})", rat_str(exp))?;
            } else {
                write!(f, "{c}*e({})", rat_str(exp))?;
            }
        }
        Ok(())
    }
}

/// Decomposition `f = content · e^shift · reduced`: the coefficient gcd,
/// the maximal common monomial (a certified maximal common divisor of
/// the exponent set), and a part whose coefficients are coprime and
/// whose exponents share no nonzero common divisor.
#[derive(Debug, Clone)]
pub struct NormalDecomposition {
    pub content: Natural,
    pub shift: PuiseuxElement,
    pub reduced: MsElement,
    pub shift_certificate: McdCertificate,
}

/// Result of a factorization enumeration. `complete` is a guarantee: it
/// is true only when the returned list provably contains every atom
/// factorization. It is cleared when the budget truncated the output,
/// when any divisor search had to fall back to a depth-bounded scan, and
/// when a nonzero monomial was split off a multi-term element (atoms
/// interleaving the monomial with the remaining terms are not searched).
#[derive(Debug, Clone)]
pub struct MsFactorizations {
    pub factorizations: Vec<Vec<MsElement>>,
    pub complete: bool,
}

/// Divisor enumeration outcome: the divisors found and whether the
/// search was provably exhaustive.
#[derive(Debug, Clone)]
pub struct MsDivisors {
    pub divisors: Vec<MsElement>,
    pub complete: bool,
}

/// Atom certification: the verdict plus whether the underlying divisor
/// search was exhaustive (only then is an affirmative verdict a proof).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MsAtomReport {
    pub is_atom: bool,
    pub certified: bool,
}

/// The semiring fixed by its exponent monoid.
#[derive(Debug, Clone)]
pub struct MonoidSemiring {
    monoid: PuiseuxMonoid,
}

impl MonoidSemiring {
    pub fn new(monoid: PuiseuxMonoid) -> Self {
        MonoidSemiring { monoid }
    }

    pub fn monoid(&self) -> &PuiseuxMonoid {
        &self.monoid
    }

    /// Exact product by convolution of term maps.
    pub fn mul(&self, a: &MsElement, b: &MsElement) -> MsElement {
        let mut terms: BTreeMap<Rat, Natural> = BTreeMap::new();
        for (ea, ca) in &a.terms {
            for (eb, cb) in &b.terms {
                let slot = terms.entry(ea + eb).or_insert_with(Natural::zero);
                *slot += ca * cb;
            }
        }
        MsElement { terms }
    }

    /// Exact division: returns the quotient when `a` divides `b`.
    ///
    /// The least term of any product is the product of the least terms,
    /// so each step of the peel is forced: the quotient must contain the
    /// term that maps the divisor's least term onto the remainder's
    /// least term, or no quotient exists. The remainder's coefficient
    /// sum strictly decreases, so the peel terminates.
    pub fn divides(&self, a: &MsElement, b: &MsElement) -> Result<Option<MsElement>> {
        if a.is_zero() || b.is_zero() {
            return Err(Error::domain(
                "division is defined for nonzero elements only",
            ));
        }
        let (ea, ca) = a.terms.iter().next().expect("nonzero");
        let mut rem = b.clone();
        let mut quotient = MsElement::zero();
        while !rem.is_zero() {
            let (er, cr) = rem.terms.iter().next().expect("nonzero");
            let qe = er - ea;
            if qe.is_negative() || self.monoid.is_member(&qe)?.is_none() {
                return Ok(None);
            }
            let (qc, rest) = cr.div_rem(ca);
            if !rest.is_zero() || qc.is_zero() {
                return Ok(None);
            }
            let step = MsElement::monomial(&self.monoid, &qe, qc.clone())?;
            let product = self.mul(a, &step);
            match subtract(&rem, &product) {
                Some(next) => rem = next,
                None => return Ok(None),
            }
            let slot = quotient.terms.entry(qe).or_insert_with(Natural::zero);
            *slot += qc;
        }
        debug_assert_eq!(self.mul(a, &quotient), *b);
        Ok(Some(quotient))
    }

    /// Split `f` into coefficient content, maximal common monomial, and
    /// reduced remainder, with the monomial's maximality certified by
    /// the exponent monoid's common-divisor search.
    pub fn normal_decomposition(&self, f: &MsElement) -> Result<NormalDecomposition> {
        if f.is_zero() {
            return Err(Error::domain("cannot decompose the zero element"));
        }
        let content = f.coefficient_gcd();
        let exponents: Vec<PuiseuxElement> = f
            .terms
            .keys()
            .map(|e| {
                self.monoid.is_member(e)?.ok_or_else(|| {
                    Error::internal(format!("exponent {} lost membership", rat_str(e)))
                })
            })
            .collect::<Result<_>>()?;
        let mcd = self.monoid.mcd(&exponents)?;
        let mut reduced = MsElement::zero();
        for (e, c) in &f.terms {
            let shifted = e - mcd.value.value();
            let coeff = c / &content;
            reduced.terms.insert(shifted, coeff);
        }
        Ok(NormalDecomposition {
            content,
            shift: mcd.value,
            reduced,
            shift_certificate: mcd.certificate,
        })
    }

    /// Enumerate the divisors of a nonzero element.
    ///
    /// Supports of factors are anchored by least exponents: if u·v = g
    /// then minexp(u) + minexp(v) = minexp(g), and every exponent of u,
    /// shifted by minexp(v), lands in the support of g. Candidates are
    /// therefore subsets of the shifted support with bounded
    /// coefficients, each verified by exact division. The flag is false
    /// when the least exponent's own divisor search was depth-bounded
    /// rather than provably complete.
    pub fn divisor_set(&self, g: &MsElement) -> Result<MsDivisors> {
        if g.is_zero() {
            return Err(Error::domain(
                "divisor enumeration is defined for nonzero elements only",
            ));
        }
        let sigma = self
            .monoid
            .is_member(g.min_exponent().expect("nonzero"))?
            .ok_or_else(|| Error::internal("support exponent lost membership"))?;
        let mut complete = true;
        let sigma_divisors: Vec<Rat> = if self.monoid.has_finite_divisor_set(&sigma) {
            self.monoid
                .divisors(&sigma)?
                .into_iter()
                .map(|d| d.value().clone())
                .collect()
        } else {
            complete = false;
            self.monoid.divisors_bounded_search(&sigma, 4)?
        };

        let max_coeff = g.terms.values().max().cloned().unwrap_or_else(Natural::one);
        let tau_g = g.coefficient_sum();
        let mut found: BTreeSet<MsElement> = BTreeSet::new();
        let mut candidates_checked = 0usize;

        for sigma_u in &sigma_divisors {
            let sigma_v = sigma.value() - sigma_u;
            // Shifted support available to u, truncated below its anchor.
            let mut pool: Vec<Rat> = Vec::new();
            for e in g.terms.keys() {
                let shifted = e - &sigma_v;
                if &shifted < sigma_u {
                    continue;
                }
                if self.monoid.is_member(&shifted)?.is_some() {
                    pool.push(shifted);
                }
            }
            pool.sort();
            pool.dedup();
            let anchor = match pool.iter().position(|e| e == sigma_u) {
                Some(i) => i,
                None => continue,
            };
            pool.swap(0, anchor);
            let rest = &pool[1..];
            // Every subset of the remaining pool joins the anchored
            // least exponent; coefficients range over [1, max_coeff].
            let subset_count = 1usize << rest.len().min(20);
            if rest.len() > 20 {
                return Err(Error::capacity(format!(
                    "divisor search over a support of {} shifted exponents",
                    pool.len()
                )));
            }
            for mask in 0..subset_count {
                let mut support: Vec<Rat> = vec![pool[0].clone()];
                for (i, e) in rest.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        support.push(e.clone());
                    }
                }
                support.sort();
                let mut coeffs = vec![Natural::one(); support.len()];
                'assign: loop {
                    candidates_checked += 1;
                    if candidates_checked > DIVISOR_CANDIDATE_CAP {
                        return Err(Error::capacity(format!(
                            "divisor search exceeded {DIVISOR_CANDIDATE_CAP} candidates"
                        )));
                    }
                    let candidate = MsElement {
                        terms: support.iter().cloned().zip(coeffs.iter().cloned()).collect(),
                    };
                    let tau_u = candidate.coefficient_sum();
                    if (&tau_g % &tau_u).is_zero()
                        && self.divides(&candidate, g)?.is_some()
                    {
                        found.insert(candidate);
                    }
                    // Odometer over coefficient assignments.
                    let mut i = 0;
                    loop {
                        if i == coeffs.len() {
                            break 'assign;
                        }
                        if coeffs[i] < max_coeff {
                            coeffs[i] += 1u32;
                            break;
                        }
                        coeffs[i] = Natural::one();
                        i += 1;
                    }
                }
            }
        }
        Ok(MsDivisors {
            divisors: found.into_iter().collect(),
            complete,
        })
    }

    /// Certify whether a nonzero element is an atom: not a unit, and no
    /// divisors besides the unit and itself.
    pub fn atom_report(&self, f: &MsElement) -> Result<MsAtomReport> {
        if f.is_zero() {
            return Err(Error::domain("the zero element is not eligible"));
        }
        if f.is_one() {
            return Ok(MsAtomReport {
                is_atom: false,
                certified: true,
            });
        }
        let divisors = self.divisor_set(f)?;
        Ok(MsAtomReport {
            is_atom: divisors.divisors.len() == 2,
            certified: divisors.complete,
        })
    }

    /// Enumerate atom factorizations of a nonzero non-unit element by
    /// decomposing into content, common monomial, and reduced part:
    /// the content contributes its prime factors as constant atoms, the
    /// monomial contributes one exponential atom per canonical
    /// coefficient unit, and the reduced part is searched recursively
    /// smallest-atom-first over its verified divisor set.
    pub fn factorizations(&self, f: &MsElement, budget: usize) -> Result<MsFactorizations> {
        if f.is_zero() || f.is_one() {
            return Err(Error::domain(
                "factorization is defined for nonzero non-unit elements",
            ));
        }
        let decomposition = self.normal_decomposition(f)?;
        let mut complete = true;
        let mut fixed: Vec<MsElement> = Vec::new();

        // Constant atoms: the primes of the coefficient content.
        if !decomposition.content.is_one() {
            for p in factor_nat(&decomposition.content)?.flat() {
                fixed.push(MsElement::constant(p));
            }
        }

        // Exponential atoms from the canonical coefficients of the shift.
        let shift = &decomposition.shift;
        if !shift.is_zero() {
            if !self.monoid.has_finite_divisor_set(shift) {
                // The shift admits infinitely many representations; the
                // canonical one is used and the list cannot be complete.
                complete = false;
            }
            for (j, c) in shift.digits().iter().enumerate() {
                let step = self.monoid.r_pow(j);
                let mut count = Natural::zero();
                while &count < c {
                    fixed.push(MsElement::monomial(&self.monoid, &step, Natural::one())?);
                    count += 1u32;
                }
            }
            if !decomposition.reduced.is_one() {
                // Atoms interleaving the monomial with the reduced part
                // are outside this search.
                complete = false;
            }
        }

        let mut memo: HashMap<MsElement, Arc<Vec<Vec<MsElement>>>> = HashMap::new();
        let mut search_complete = true;
        let tails = self.reduced_factorizations(
            &decomposition.reduced,
            &mut memo,
            &mut search_complete,
        )?;
        complete &= search_complete;

        let mut out: BTreeSet<Vec<MsElement>> = BTreeSet::new();
        for tail in tails.iter() {
            let mut z = fixed.clone();
            z.extend(tail.iter().cloned());
            z.sort();
            out.insert(z);
        }
        let mut factorizations: Vec<Vec<MsElement>> = out.into_iter().collect();
        if factorizations.len() > budget {
            factorizations.truncate(budget);
            complete = false;
        }
        for z in &factorizations {
            let product = z
                .iter()
                .fold(MsElement::one(), |acc, a| self.mul(&acc, a));
            if &product != f {
                return Err(Error::internal(
                    "a factorization does not multiply back to the input",
                ));
            }
        }
        Ok(MsFactorizations {
            factorizations,
            complete,
        })
    }

    /// All atom factorizations of an element, smallest atom first, from
    /// its verified divisor set. The unit yields the empty factorization.
    fn reduced_factorizations(
        &self,
        g: &MsElement,
        memo: &mut HashMap<MsElement, Arc<Vec<Vec<MsElement>>>>,
        complete: &mut bool,
    ) -> Result<Arc<Vec<Vec<MsElement>>>> {
        if let Some(hit) = memo.get(g) {
            return Ok(hit.clone());
        }
        if g.is_one() {
            let unit = Arc::new(vec![vec![]]);
            memo.insert(g.clone(), unit.clone());
            return Ok(unit);
        }
        let divisors = self.divisor_set(g)?;
        if !divisors.complete {
            *complete = false;
        }
        let mut atoms = Vec::new();
        for u in &divisors.divisors {
            if u.is_one() {
                continue;
            }
            let report = self.atom_report(u)?;
            if !report.certified {
                *complete = false;
            }
            if report.is_atom {
                atoms.push(u.clone());
            }
        }
        let mut out: Vec<Vec<MsElement>> = Vec::new();
        for atom in &atoms {
            let quotient = self
                .divides(atom, g)?
                .ok_or_else(|| Error::internal("listed divisor fails to divide"))?;
            let tails = self.reduced_factorizations(&quotient, memo, complete)?;
            for tail in tails.iter() {
                if let Some(first) = tail.first() {
                    if first < atom {
                        continue;
                    }
                }
                let mut z = vec![atom.clone()];
                z.extend(tail.iter().cloned());
                out.push(z);
            }
        }
        out.sort();
        out.dedup();
        let out = Arc::new(out);
        memo.insert(g.clone(), out.clone());
        Ok(out)
    }
}

/// Coefficient-wise subtraction, failing when any coefficient would go
/// negative.
fn subtract(a: &MsElement, b: &MsElement) -> Option<MsElement> {
    let mut terms = a.terms.clone();
    for (e, c) in &b.terms {
        let slot = terms.get_mut(e)?;
        if *slot < *c {
            return None;
        }
        *slot -= c;
        if slot.is_zero() {
            terms.remove(e);
        }
    }
    Some(MsElement { terms })
}

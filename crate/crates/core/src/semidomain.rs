//! The central factorization engine for three polynomial semidomains:
//! nonnegative-integer polynomials, nonnegative-integer Laurent
//! polynomials, and nonnegative-rational polynomials.
//!
//! Divisibility in each ring reduces to the complete integer-polynomial
//! factorization: by Gauss's lemma, a divisor is a content divisor times a
//! sub-multiset of the primitive irreducible factors, accepted exactly when
//! the sub-multiset product and its complementary cofactor both have
//! nonnegative coefficients. Laurent elements are first normalized to
//! their shift-free body (monomials are units there), and
//! rational-coefficient elements to their primitive part (positive
//! constants are units there).

use crate::error::{Error, Result};
use crate::numbers::Int;
use crate::poly::{LaurentPolynomial, Polynomial, DEFAULT_PARSE_DEGREE_CAP};
use crate::zx::{irreducible_factors_zx, DEFAULT_ZX_DEGREE_CAP};
use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

/// Which semidomain an element lives in. The tag fixes the unit group:
/// only 1 for plain polynomials, the monomials `x^n` for Laurent
/// polynomials, and the positive rational constants for
/// rational-coefficient polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RingTag {
    NnPoly,
    NnLaurent,
    QpPoly,
}

impl RingTag {
    pub const ALL: [RingTag; 3] = [RingTag::NnPoly, RingTag::NnLaurent, RingTag::QpPoly];

    pub fn as_str(self) -> &'static str {
        match self {
            RingTag::NnPoly => "nn-poly",
            RingTag::NnLaurent => "nn-laurent",
            RingTag::QpPoly => "qp-poly",
        }
    }
}

impl FromStr for RingTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "nn-poly" => Ok(RingTag::NnPoly),
            "nn-laurent" => Ok(RingTag::NnLaurent),
            "qp-poly" => Ok(RingTag::QpPoly),
            other => Err(Error::parse(
                0,
                format!("unknown ring '{other}' (expected nn-poly, nn-laurent, or qp-poly)"),
            )),
        }
    }
}

impl fmt::Display for RingTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// An element of one of the three rings.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingElement {
    Poly(Polynomial),
    Laurent(LaurentPolynomial),
}

impl RingElement {
    /// Parse element text in the syntax appropriate for the ring
    /// (negative exponents are Laurent-only).
    pub fn parse(ring: RingTag, text: &str) -> Result<RingElement> {
        RingElement::parse_capped(ring, text, DEFAULT_PARSE_DEGREE_CAP)
    }

    pub fn parse_capped(ring: RingTag, text: &str, degree_cap: usize) -> Result<RingElement> {
        Ok(match ring {
            RingTag::NnPoly | RingTag::QpPoly => {
                RingElement::Poly(Polynomial::parse_capped(text, degree_cap)?)
            }
            RingTag::NnLaurent => {
                RingElement::Laurent(LaurentPolynomial::parse_capped(text, degree_cap)?)
            }
        })
    }

    pub fn from_poly(ring: RingTag, f: Polynomial) -> RingElement {
        match ring {
            RingTag::NnPoly | RingTag::QpPoly => RingElement::Poly(f),
            RingTag::NnLaurent => RingElement::Laurent(LaurentPolynomial::from_poly(&f)),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingElement::Poly(p) => p.fmt(f),
            RingElement::Laurent(l) => l.fmt(f),
        }
    }
}

/// Normalize a Laurent polynomial into `(shift, body)` with an order-zero,
/// nonnegative body, so `x^shift * body` reproduces the element.
pub fn laurent_normalize(l: &LaurentPolynomial) -> Result<(i64, Polynomial)> {
    if l.is_zero() {
        return Err(Error::domain("the zero element cannot be normalized"));
    }
    if !l.is_nonneg() {
        return Err(Error::domain(format!(
            "element {l} has a negative coefficient and is outside this ring"
        )));
    }
    Ok((l.shift(), l.body().clone()))
}

/// Resource limits for the engine.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineConfig {
    /// Maximum degree accepted by the integer-polynomial factorizer.
    pub zx_degree_cap: usize,
}

impl Default for EngineConfig {
    fn default() -> Self {
        EngineConfig {
            zx_degree_cap: DEFAULT_ZX_DEGREE_CAP,
        }
    }
}

/// One factorization into atoms, stored as a canonically ascending
/// multiset of associate-class representatives.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Factorization {
    atoms: Vec<Polynomial>,
}

impl Factorization {
    pub fn new(mut atoms: Vec<Polynomial>) -> Self {
        atoms.sort();
        Factorization { atoms }
    }

    pub fn empty() -> Self {
        Factorization { atoms: vec![] }
    }

    pub fn atoms(&self) -> &[Polynomial] {
        &self.atoms
    }

    pub fn length(&self) -> u64 {
        self.atoms.len() as u64
    }

    /// Product of all atoms (the class representative of the element).
    pub fn product(&self) -> Polynomial {
        let mut acc = Polynomial::one();
        for a in &self.atoms {
            acc = acc.mul(a);
        }
        acc
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.atoms.is_empty() {
            return write!(f, "(empty)");
        }
        for (i, a) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            write!(f, "({a})")?;
        }
        Ok(())
    }
}

/// How an element's canonical body is interpreted: with content divisors
/// (integer-coefficient rings) or up to positive rational constants
/// (primitive representatives only).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
enum Mode {
    WithContent,
    Primitive,
}

fn mode_of(ring: RingTag) -> Mode {
    match ring {
        RingTag::NnPoly | RingTag::NnLaurent => Mode::WithContent,
        RingTag::QpPoly => Mode::Primitive,
    }
}

/// The factorization engine, with memoized divisor and factorization sets.
/// All methods are deterministic; caches only avoid recomputation.
pub struct Engine {
    config: EngineConfig,
    divisor_cache: HashMap<(Mode, Polynomial), Arc<Vec<Polynomial>>>,
    z_cache: HashMap<(Mode, Polynomial), Arc<Vec<Factorization>>>,
}

impl Engine {
    pub fn new(config: EngineConfig) -> Self {
        Engine {
            config,
            divisor_cache: HashMap::new(),
            z_cache: HashMap::new(),
        }
    }

    pub fn config(&self) -> EngineConfig {
        self.config
    }

    /// Validate an element for its ring and return the canonical body the
    /// divisor theory works on: the polynomial itself, the order-zero
    /// Laurent body, or the primitive part.
    fn body(&self, ring: RingTag, elem: &RingElement) -> Result<Polynomial> {
        let poly = match (ring, elem) {
            (RingTag::NnPoly | RingTag::QpPoly, RingElement::Poly(f)) => f.clone(),
            (RingTag::NnLaurent, RingElement::Laurent(l)) => {
                return laurent_normalize(l).map(|(_, body)| body)
            }
            _ => {
                return Err(Error::domain(format!(
                    "element kind does not match ring {ring}"
                )))
            }
        };
        if poly.is_zero() {
            return Err(Error::domain(
                "the zero element has no divisor or factorization data",
            ));
        }
        if !poly.is_nonneg() {
            return Err(Error::domain(format!(
                "element {poly} has a negative coefficient and is outside ring {ring}"
            )));
        }
        match ring {
            RingTag::QpPoly => {
                let (_, prim) = poly.content_primitive()?;
                Ok(prim)
            }
            _ => Ok(poly),
        }
    }

    /// Is the element a unit of its ring? Uniform on canonical bodies:
    /// the body is 1 exactly for 1, the monomials, and the positive
    /// rational constants respectively.
    pub fn is_unit(&self, ring: RingTag, elem: &RingElement) -> Result<bool> {
        Ok(self.body(ring, elem)?.is_one())
    }

    /// The complete set of divisors of the element, one canonical
    /// representative per associate class, ascending.
    pub fn enumerate_divisors(
        &mut self,
        ring: RingTag,
        elem: &RingElement,
    ) -> Result<Vec<Polynomial>> {
        let body = self.body(ring, elem)?;
        let divs = self.divisor_classes(mode_of(ring), &body)?;
        Ok((*divs).clone())
    }

    /// Atom test: a nonunit whose only divisor classes are the unit class
    /// and its own.
    pub fn is_atom(&mut self, ring: RingTag, elem: &RingElement) -> Result<bool> {
        let body = self.body(ring, elem)?;
        self.body_is_atom(mode_of(ring), &body)
    }

    /// The complete set of factorizations of the element into atom
    /// classes, canonically sorted. A unit yields exactly the empty
    /// factorization.
    pub fn enumerate_factorizations(
        &mut self,
        ring: RingTag,
        elem: &RingElement,
    ) -> Result<Vec<Factorization>> {
        let body = self.body(ring, elem)?;
        let z = self.z_classes(mode_of(ring), &body)?;
        Ok((*z).clone())
    }

    fn body_is_atom(&mut self, mode: Mode, body: &Polynomial) -> Result<bool> {
        if body.is_one() {
            return Ok(false);
        }
        Ok(self.divisor_classes(mode, body)?.len() == 2)
    }

    fn divisor_classes(&mut self, mode: Mode, body: &Polynomial) -> Result<Arc<Vec<Polynomial>>> {
        let key = (mode, body.clone());
        if let Some(hit) = self.divisor_cache.get(&key) {
            return Ok(Arc::clone(hit));
        }
        let zf = irreducible_factors_zx(body, self.config.zx_degree_cap)?;
        debug_assert!(!zf.negative, "nonnegative bodies have a positive lead");
        let (_, prim) = body.content_primitive()?;

        // Sub-multisets of the primitive irreducible factors whose product
        // and complementary cofactor both stay nonnegative.
        let mut poly_parts: Vec<Polynomial> = Vec::new();
        let mut stack: Vec<(usize, Polynomial)> = vec![(0, Polynomial::one())];
        while let Some((i, acc)) = stack.pop() {
            if i == zf.factors.len() {
                if acc.is_nonneg() {
                    let cof = prim
                        .div_exact(&acc)
                        .expect("sub-multiset product divides the primitive part");
                    if cof.is_nonneg() {
                        poly_parts.push(acc);
                    }
                }
                continue;
            }
            let (p, m) = &zf.factors[i];
            let mut power = acc;
            stack.push((i + 1, power.clone()));
            for _ in 0..*m {
                power = power.mul(p);
                stack.push((i + 1, power.clone()));
            }
        }

        let content_divisors: Vec<Int> = match mode {
            Mode::WithContent => zf
                .content
                .divisors()
                .into_iter()
                .map(Int::from)
                .collect(),
            Mode::Primitive => vec![Int::from(1)],
        };

        let mut out: Vec<Polynomial> =
            Vec::with_capacity(poly_parts.len() * content_divisors.len());
        for g in &poly_parts {
            for d in &content_divisors {
                out.push(g.scale(d));
            }
        }
        out.sort();
        let arc = Arc::new(out);
        self.divisor_cache.insert(key, Arc::clone(&arc));
        Ok(arc)
    }

    fn z_classes(&mut self, mode: Mode, body: &Polynomial) -> Result<Arc<Vec<Factorization>>> {
        let key = (mode, body.clone());
        if let Some(hit) = self.z_cache.get(&key) {
            return Ok(Arc::clone(hit));
        }
        let mut result: Vec<Factorization> = Vec::new();
        if body.is_one() {
            result.push(Factorization::empty());
        } else {
            let divisors = self.divisor_classes(mode, body)?;
            let mut atoms: Vec<Polynomial> = Vec::new();
            for d in divisors.iter() {
                if self.body_is_atom(mode, d)? {
                    atoms.push(d.clone());
                }
            }
            // Pick the ascending-first atom; restricting tails to atoms at
            // least as large yields each multiset exactly once.
            for a in &atoms {
                let q = body
                    .div_exact(a)
                    .expect("atom divisors divide the body exactly");
                let tails = self.z_classes(mode, &q)?;
                for tail in tails.iter() {
                    if tail.atoms().first().is_some_and(|t| t < a) {
                        continue;
                    }
                    let mut v = Vec::with_capacity(tail.atoms().len() + 1);
                    v.push(a.clone());
                    v.extend(tail.atoms().iter().cloned());
                    result.push(Factorization { atoms: v });
                }
            }
            result.sort();
        }
        let arc = Arc::new(result);
        self.z_cache.insert(key, Arc::clone(&arc));
        Ok(arc)
    }
}

impl Default for Engine {
    fn default() -> Self {
        Engine::new(EngineConfig::default())
    }
}

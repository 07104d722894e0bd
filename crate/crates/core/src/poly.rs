//! Dense univariate polynomials over the arbitrary-precision integers,
//! rational-coefficient division helpers, and Laurent polynomials
//! (integer powers of `x` of either sign).
//!
//! Coefficients are stored low degree first with no trailing zeros, so the
//! zero polynomial is the empty vector and equality/hashing are structural.

use crate::error::{Error, Result};
use crate::numbers::{Int, Rat};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Largest exponent magnitude accepted by the polynomial parsers unless the
/// caller widens it explicitly.
pub const DEFAULT_PARSE_DEGREE_CAP: usize = 64;

/// A polynomial with integer coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Polynomial {
    coeffs: Vec<Int>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { coeffs: vec![] }
    }

    pub fn one() -> Self {
        Polynomial::constant(Int::one())
    }

    pub fn x() -> Self {
        Polynomial::from_coeffs(vec![Int::zero(), Int::one()])
    }

    pub fn x_pow(k: usize) -> Self {
        let mut coeffs = vec![Int::zero(); k + 1];
        coeffs[k] = Int::one();
        Polynomial::from_coeffs(coeffs)
    }

    pub fn constant(c: Int) -> Self {
        Polynomial::from_coeffs(vec![c])
    }

    /// Build from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<Int>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Polynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Polynomial::from_coeffs(coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    /// Low-to-high coefficient slice (no trailing zeros).
    pub fn coeffs(&self) -> &[Int] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> Int {
        self.coeffs.get(k).cloned().unwrap_or_else(Int::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Order: the smallest exponent with a nonzero coefficient, or `None`
    /// for the zero polynomial.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn leading_coeff(&self) -> Option<&Int> {
        self.coeffs.last()
    }

    /// True when every coefficient is nonnegative.
    pub fn is_nonneg(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Evaluate at an integer point (Horner).
    pub fn eval_int(&self, x: &Int) -> Int {
        let mut acc = Int::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluate at a rational point (Horner).
    pub fn eval_rat(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + Rat::from_integer(c.clone());
        }
        acc
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            coeffs.push(self.coeff(i) + other.coeff(i));
        }
        Polynomial::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        if self.is_zero() || other.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Int::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Polynomial::from_coeffs(coeffs)
    }

    pub fn scale(&self, c: &Int) -> Polynomial {
        Polynomial::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn pow(&self, e: u64) -> Polynomial {
        let mut acc = Polynomial::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Divide by `x^k`; `None` if some lower coefficient is nonzero.
    pub fn shift_down(&self, k: usize) -> Option<Polynomial> {
        if k == 0 {
            return Some(self.clone());
        }
        if self.coeffs.len() < k || self.coeffs[..k].iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Polynomial::from_coeffs(self.coeffs[k..].to_vec()))
    }

    /// Multiply by `x^k`.
    pub fn shift_up(&self, k: usize) -> Polynomial {
        if self.is_zero() {
            return Polynomial::zero();
        }
        let mut coeffs = vec![Int::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Polynomial::from_coeffs(coeffs)
    }

    /// Content (gcd of coefficients, carrying the sign of the leading
    /// coefficient) and primitive part, so `f = content * primitive` and the
    /// primitive part has a positive leading coefficient.
    pub fn content_primitive(&self) -> Result<(Int, Polynomial)> {
        let lead = self
            .leading_coeff()
            .ok_or_else(|| Error::domain("the zero polynomial has no content"))?;
        let mut g = Int::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        let content = if lead.is_negative() { -g } else { g };
        let primitive = Polynomial::from_coeffs(
            self.coeffs.iter().map(|c| c / &content).collect(),
        );
        Ok((content, primitive))
    }

    /// Exact division over the integers: `Some(q)` with `self = q * d`,
    /// or `None` when `d` is zero or does not divide exactly.
    ///
    /// Integer long division from the top coefficient down; an integer
    /// quotient exists exactly when every step divides evenly and the final
    /// remainder vanishes, because division in the rationals is unique.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        let dd = d.degree()?;
        let Some(fd) = self.degree() else {
            return Some(Polynomial::zero());
        };
        if fd < dd {
            return None;
        }
        let lead = d.leading_coeff().expect("nonzero divisor");
        let mut rem = self.coeffs.clone();
        let mut q = vec![Int::zero(); fd - dd + 1];
        for i in (dd..=fd).rev() {
            if rem[i].is_zero() {
                continue;
            }
            let (qc, r) = rem[i].div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                let delta = dc * &qc;
                rem[i - dd + j] -= delta;
            }
            q[i - dd] = qc;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Polynomial::from_coeffs(q))
    }

    /// Parse with the default exponent cap.
    pub fn parse(input: &str) -> Result<Polynomial> {
        Polynomial::parse_capped(input, DEFAULT_PARSE_DEGREE_CAP)
    }

    /// Parse `c`, `x`, `x^k`, `c*x^k`, `cx^k` terms joined by `+`/`-`.
    /// Whitespace is ignored; repeated exponents accumulate. Exponents must
    /// be nonnegative and at most `degree_cap`.
    pub fn parse_capped(input: &str, degree_cap: usize) -> Result<Polynomial> {
        let terms = parse_terms(input, false, degree_cap)?;
        let mut coeffs = vec![Int::zero(); degree_cap + 1];
        for (e, c) in terms {
            let e = usize::try_from(e)
                .map_err(|_| Error::internal("negative exponent escaped the parser"))?;
            coeffs[e] += c;
        }
        Ok(Polynomial::from_coeffs(coeffs))
    }
}

/// Canonical order: by degree, then coefficients compared from the highest
/// degree downward. The zero polynomial sorts first.
impl Ord for Polynomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| {
                for (a, b) in self.coeffs.iter().rev().zip(other.coeffs.iter().rev()) {
                    match a.cmp(b) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            })
    }
}

impl PartialOrd for Polynomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(e, c)| (e as i64, c)),
        )
    }
}

/// Shared term formatter: terms arrive highest exponent first.
fn write_terms<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (i64, &'a Int)>,
) -> fmt::Result {
    let mut first = true;
    for (e, c) in terms {
        let mag = c.abs();
        if first {
            if c.is_negative() {
                write!(f, "-")?;
            }
            first = false;
        } else if c.is_negative() {
            write!(f, " - ")?;
        } else {
            write!(f, " + ")?;
        }
        if e == 0 {
            write!(f, "{mag}")?;
        } else {
            if !mag.is_one() {
                write!(f, "{mag}")?;
            }
            if e == 1 {
                write!(f, "x")?;
            } else {
                write!(f, "x^{e}")?;
            }
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Parse the term list `[sign] term (('+'|'-') term)*` into
/// `(exponent, signed coefficient)` pairs.
fn parse_terms(
    input: &str,
    allow_negative_exponents: bool,
    degree_cap: usize,
) -> Result<Vec<(i64, Int)>> {
    let bytes = input.as_bytes();
    let mut pos = 0usize;
    let mut terms: Vec<(i64, Int)> = Vec::new();

    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };

    let read_digits = |pos: &mut usize| -> Option<(usize, String)> {
        let start = *pos;
        while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
            *pos += 1;
        }
        if *pos == start {
            None
        } else {
            Some((start, input[start..*pos].to_string()))
        }
    };

    skip_ws(&mut pos);
    if pos == bytes.len() {
        return Err(Error::parse(pos, "empty polynomial"));
    }

    let mut first = true;
    loop {
        // Sign between terms (mandatory after the first term).
        let mut negative = false;
        skip_ws(&mut pos);
        if pos < bytes.len() && (bytes[pos] == b'+' || bytes[pos] == b'-') {
            negative = bytes[pos] == b'-';
            pos += 1;
            skip_ws(&mut pos);
        } else if !first {
            return Err(Error::parse(
                pos,
                format!(
                    "expected '+' or '-' before next term, found '{}'",
                    input[pos..].chars().next().map(String::from).unwrap_or_default()
                ),
            ));
        }

        // Coefficient (optional when the term is a bare power of x).
        let mut coeff: Option<Int> = None;
        if let Some((start, digits)) = read_digits(&mut pos) {
            let c: Int = digits
                .parse()
                .map_err(|_| Error::parse(start, "invalid coefficient"))?;
            coeff = Some(c);
            skip_ws(&mut pos);
            if pos < bytes.len() && bytes[pos] == b'*' {
                pos += 1;
                skip_ws(&mut pos);
                if pos >= bytes.len() || bytes[pos] != b'x' {
                    return Err(Error::parse(pos, "expected 'x' after '*'"));
                }
            }
        }

        // Power of x (optional when a coefficient was present).
        let mut exponent: i64 = 0;
        let mut saw_x = false;
        if pos < bytes.len() && bytes[pos] == b'x' {
            saw_x = true;
            pos += 1;
            exponent = 1;
            if pos < bytes.len() && bytes[pos] == b'^' {
                pos += 1;
                let mut exp_negative = false;
                if pos < bytes.len() && bytes[pos] == b'-' {
                    if !allow_negative_exponents {
                        return Err(Error::parse(
                            pos,
                            "negative exponents are not allowed here",
                        ));
                    }
                    exp_negative = true;
                    pos += 1;
                }
                let (start, digits) = read_digits(&mut pos)
                    .ok_or_else(|| Error::parse(pos, "expected exponent digits after '^'"))?;
                let mag: u64 = digits
                    .parse()
                    .map_err(|_| Error::parse(start, "exponent out of range"))?;
                if mag as usize > degree_cap {
                    return Err(Error::capacity(format!(
                        "exponent {mag} exceeds the configured cap of {degree_cap}"
                    )));
                }
                exponent = if exp_negative { -(mag as i64) } else { mag as i64 };
            }
        }

        if coeff.is_none() && !saw_x {
            return Err(Error::parse(pos, "expected a coefficient or 'x'"));
        }
        let mut c = coeff.unwrap_or_else(Int::one);
        if negative {
            c = -c;
        }
        terms.push((exponent, c));
        first = false;

        skip_ws(&mut pos);
        if pos == bytes.len() {
            break;
        }
        if bytes[pos] != b'+' && bytes[pos] != b'-' {
            return Err(Error::parse(
                pos,
                format!(
                    "unexpected character '{}'",
                    input[pos..].chars().next().map(String::from).unwrap_or_default()
                ),
            ));
        }
    }
    Ok(terms)
}

/// A polynomial with rational coefficients, used internally for long
/// division and interpolation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatPoly {
    coeffs: Vec<Rat>,
}

impl RatPoly {
    pub fn zero() -> Self {
        RatPoly { coeffs: vec![] }
    }

    pub fn from_coeffs(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_int(p: &Polynomial) -> Self {
        RatPoly::from_coeffs(
            p.coeffs()
                .iter()
                .map(|c| Rat::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    fn coeff(&self, k: usize) -> Rat {
        self.coeffs.get(k).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn add(&self, other: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        RatPoly::from_coeffs((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn scale(&self, c: &Rat) -> RatPoly {
        RatPoly::from_coeffs(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn mul(&self, other: &RatPoly) -> RatPoly {
        if self.is_zero() || other.is_zero() {
            return RatPoly::zero();
        }
        let mut coeffs = vec![Rat::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RatPoly::from_coeffs(coeffs)
    }

    /// Long division: `self = q * d + r` with `deg r < deg d`.
    /// `None` when `d` is zero.
    pub fn divmod(&self, d: &RatPoly) -> Option<(RatPoly, RatPoly)> {
        let dd = d.degree()?;
        let lead = d.coeffs.last().expect("nonzero divisor has a lead");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return Some((RatPoly::zero(), RatPoly::from_coeffs(rem)));
        }
        let mut q = vec![Rat::zero(); rem.len() - dd];
        for i in (dd..rem.len()).rev() {
            let factor = &rem[i] / lead;
            if factor.is_zero() {
                continue;
            }
            q[i - dd] = factor.clone();
            for (j, dc) in d.coeffs.iter().enumerate() {
                let delta = dc * &factor;
                rem[i - dd + j] -= delta;
            }
        }
        Some((RatPoly::from_coeffs(q), RatPoly::from_coeffs(rem)))
    }

    /// Back to integer coefficients; `None` if any denominator is not 1.
    pub fn to_int_poly(&self) -> Option<Polynomial> {
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            if !c.denom().is_one() {
                return None;
            }
            coeffs.push(c.numer().clone());
        }
        Some(Polynomial::from_coeffs(coeffs))
    }
}

/// A Laurent polynomial `x^shift * body` where the body has a nonzero
/// constant term (for the zero element: shift 0, zero body).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LaurentPolynomial {
    shift: i64,
    body: Polynomial,
}

impl LaurentPolynomial {
    /// Normalize: push any factor of `x` in `body` into `shift`.
    pub fn new(shift: i64, body: Polynomial) -> Self {
        match body.ord() {
            None => LaurentPolynomial {
                shift: 0,
                body: Polynomial::zero(),
            },
            Some(ord) => LaurentPolynomial {
                shift: shift + ord as i64,
                body: body.shift_down(ord).expect("ord lower bound"),
            },
        }
    }

    pub fn from_poly(p: &Polynomial) -> Self {
        LaurentPolynomial::new(0, p.clone())
    }

    pub fn zero() -> Self {
        LaurentPolynomial::new(0, Polynomial::zero())
    }

    pub fn one() -> Self {
        LaurentPolynomial::new(0, Polynomial::one())
    }

    pub fn monomial(shift: i64) -> Self {
        LaurentPolynomial::new(shift, Polynomial::one())
    }

    /// Exponent of the lowest term.
    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// The body divided down so its constant term is nonzero.
    pub fn body(&self) -> &Polynomial {
        &self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    /// Units here are the monomials `x^n` with coefficient 1.
    pub fn is_monomial_unit(&self) -> bool {
        self.body.is_one()
    }

    pub fn is_nonneg(&self) -> bool {
        self.body.is_nonneg()
    }

    pub fn mul(&self, other: &LaurentPolynomial) -> LaurentPolynomial {
        LaurentPolynomial::new(self.shift + other.shift, self.body.mul(&other.body))
    }

    pub fn parse(input: &str) -> Result<LaurentPolynomial> {
        LaurentPolynomial::parse_capped(input, DEFAULT_PARSE_DEGREE_CAP)
    }

    /// Parse allowing negative exponents, e.g. `x^-2 + 3 + x`.
    pub fn parse_capped(input: &str, degree_cap: usize) -> Result<LaurentPolynomial> {
        let terms = parse_terms(input, true, degree_cap)?;
        let min_exp = terms.iter().map(|(e, _)| *e).min().unwrap_or(0);
        let mut coeffs = vec![Int::zero(); 2 * degree_cap + 1];
        for (e, c) in terms {
            coeffs[(e - min_exp) as usize] += c;
        }
        Ok(LaurentPolynomial::new(
            min_exp,
            Polynomial::from_coeffs(coeffs),
        ))
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.body
                .coeffs()
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (self.shift + j as i64, c)),
        )
    }
}

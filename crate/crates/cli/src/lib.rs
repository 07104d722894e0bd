//! Command-line frontend: parse a command, dispatch to the arithmetic
//! engines, and emit a deterministic report as aligned text or JSON.
//!
//! Exit codes: 0 success, 2 command/input parse error, 3 domain error
//! (valid syntax, invalid value), 4 capacity error (a configured bound
//! was exceeded). JSON reports have a stable field order, render every
//! rational as an exact string, and carry no timing data, so identical
//! commands produce byte-identical output across runs.

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use semifactor_core::error::{Error, Result};
use semifactor_core::invariants::{self, FamilyReport};
use semifactor_core::msemiring::{MonoidSemiring, MsElement, DEFAULT_MS_BUDGET};
use semifactor_core::numbers::{parse_rat, rat_str, Natural};
use semifactor_core::nq::{NqMonoid, DEFAULT_NQ_LENGTH_BUDGET};
use semifactor_core::poly::Polynomial;
use semifactor_core::puiseux::{PuiseuxElement, PuiseuxMonoid, DEFAULT_DEPTH_CAP};
use semifactor_core::zx::DEFAULT_ZX_DEGREE_CAP;
use semifactor_core::{Engine, EngineConfig, RingElement, RingTag};
use serde::Serialize;
use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "semifactor",
    version,
    about = "Exact factorization invariants in positive semidomains",
    disable_help_subcommand = true
)]
struct Cli {
    /// Emit a JSON report (stable field order, exact rationals, no timing).
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    verb: Verb,
}

#[derive(Clone, Copy, ValueEnum)]
enum RingChoice {
    /// Polynomials with nonnegative integer coefficients.
    NnPoly,
    /// Laurent polynomials with nonnegative integer coefficients.
    NnLaurent,
    /// Polynomials with nonnegative rational coefficients.
    QpPoly,
}

impl RingChoice {
    fn tag(self) -> RingTag {
        match self {
            RingChoice::NnPoly => RingTag::NnPoly,
            RingChoice::NnLaurent => RingTag::NnLaurent,
            RingChoice::QpPoly => RingTag::QpPoly,
        }
    }
}

#[derive(Subcommand)]
enum Verb {
    /// Enumerate every factorization into atoms, with invariants.
    Factor {
        #[arg(long, value_enum)]
        ring: RingChoice,
        /// Element in the ring's grammar, e.g. "x^2+2x+1" or "x^-1+3".
        element: String,
        /// Degree bound for integer polynomial factoring.
        #[arg(long, default_value_t = DEFAULT_ZX_DEGREE_CAP)]
        deg_cap: usize,
    },
    /// List every divisor class of an element.
    Divisors {
        #[arg(long, value_enum)]
        ring: RingChoice,
        element: String,
        #[arg(long, default_value_t = DEFAULT_ZX_DEGREE_CAP)]
        deg_cap: usize,
    },
    /// Decide whether an element is an atom.
    Atom {
        #[arg(long, value_enum)]
        ring: RingChoice,
        element: String,
        #[arg(long, default_value_t = DEFAULT_ZX_DEGREE_CAP)]
        deg_cap: usize,
    },
    /// Report the set of factorization lengths.
    Lengths {
        #[arg(long, value_enum)]
        ring: RingChoice,
        element: String,
        #[arg(long, default_value_t = DEFAULT_ZX_DEGREE_CAP)]
        deg_cap: usize,
    },
    /// Report the elasticity (max length over min length).
    Elasticity {
        #[arg(long, value_enum)]
        ring: RingChoice,
        element: String,
        #[arg(long, default_value_t = DEFAULT_ZX_DEGREE_CAP)]
        deg_cap: usize,
    },
    /// Analyze the two-factorization family (x+n)^n (x^2-x+1) (x+1)^k.
    Family {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        k: u64,
    },
    /// Operations in the additive monoid generated by powers of r.
    Puiseux {
        /// Generator ratio as p/q with 0 < p/q < 1 and p >= 2.
        #[arg(long)]
        r: String,
        /// Bound on membership depth (power of the denominator).
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        depth_cap: usize,
        #[command(subcommand)]
        op: PuiseuxOp,
    },
    /// Operations on finite sums of exponentials over that monoid.
    Esemiring {
        #[arg(long)]
        r: String,
        #[arg(long, default_value_t = DEFAULT_DEPTH_CAP)]
        depth_cap: usize,
        /// Cap on how many factorizations may be emitted.
        #[arg(long, default_value_t = DEFAULT_MS_BUDGET)]
        budget: usize,
        #[command(subcommand)]
        op: EsOp,
    },
    /// Operations in the monoid of naturals plus rationals >= k.
    Nq {
        /// Threshold k >= 2.
        #[arg(long)]
        k: u64,
        #[command(subcommand)]
        op: NqOp,
    },
}

#[derive(Subcommand)]
enum PuiseuxOp {
    /// Decide membership of a nonnegative rational.
    Member { q: String },
    /// Decide whether the first element divides the second.
    Divides { a: String, b: String },
    /// Certify whether r^n is an atom.
    Atom { n: usize },
    /// Compute a maximal common divisor with a maximality certificate.
    Mcd {
        #[arg(required = true, num_args = 1..)]
        elements: Vec<String>,
    },
    /// Produce a strictly descending divisibility chain witness.
    Chain {
        #[arg(long, default_value_t = 20)]
        depth: usize,
    },
}

#[derive(Subcommand)]
enum EsOp {
    /// Multiply two elements.
    Mul { a: String, b: String },
    /// Decide divisibility and report the quotient.
    Divides { a: String, b: String },
    /// Split into content, common monomial, and reduced part.
    Decompose { f: String },
    /// Enumerate atom factorizations with a completeness flag.
    Factor { f: String },
}

#[derive(Subcommand)]
enum NqOp {
    /// Decide membership.
    Member { q: String },
    /// Decide whether a member is an atom.
    Atom { q: String },
    /// Sample distinct atom factorizations deterministically.
    Sample {
        q: String,
        #[arg(long, default_value_t = 10)]
        count: usize,
    },
    /// Report a certified subset of the length set.
    Lengths {
        q: String,
        /// Maximum factorization length explored.
        #[arg(long, default_value_t = DEFAULT_NQ_LENGTH_BUDGET)]
        budget: u64,
    },
}

/// Entry point shared by the binary and the test suites: parse argv
/// (including the program name), run the command, and return the exit
/// code together with everything that should reach the user.
pub fn execute(argv: &[String]) -> (i32, String) {
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 2,
            };
            return (code, e.to_string());
        }
    };
    let started = Instant::now();
    match run(&cli.verb) {
        Ok(report) => {
            let text = if cli.json {
                report.json
            } else {
                let mut s = report.text;
                let _ = writeln!(s, "elapsed: {} ms", started.elapsed().as_millis());
                s
            };
            (0, text)
        }
        Err(e) => (e.exit_code(), format!("error: {e}\n")),
    }
}

/// A rendered report: the JSON string (fields in declaration order,
/// used verbatim in `--json` mode) and the human-readable text
/// (timing appended by the caller in text mode only).
struct Report {
    json: String,
    text: String,
}

impl Report {
    fn new<T: Serialize>(value: &T, text: String) -> Result<Report> {
        let mut json = serde_json::to_string_pretty(value)
            .map_err(|e| Error::internal(format!("serialization failed: {e}")))?;
        json.push('\n');
        Ok(Report { json, text })
    }
}

fn run(verb: &Verb) -> Result<Report> {
    match verb {
        Verb::Factor { ring, element, deg_cap } => {
            ring_factor(ring.tag(), element, *deg_cap)
        }
        Verb::Divisors { ring, element, deg_cap } => {
            ring_divisors(ring.tag(), element, *deg_cap)
        }
        Verb::Atom { ring, element, deg_cap } => ring_atom(ring.tag(), element, *deg_cap),
        Verb::Lengths { ring, element, deg_cap } => {
            ring_lengths(ring.tag(), element, *deg_cap)
        }
        Verb::Elasticity { ring, element, deg_cap } => {
            ring_elasticity(ring.tag(), element, *deg_cap)
        }
        Verb::Family { n, k } => family(*n, *k),
        Verb::Puiseux { r, depth_cap, op } => puiseux(r, *depth_cap, op),
        Verb::Esemiring { r, depth_cap, budget, op } => esemiring(r, *depth_cap, *budget, op),
        Verb::Nq { k, op } => nq(*k, op),
    }
}

// ---------------------------------------------------------------------
// Polynomial semidomain verbs
// ---------------------------------------------------------------------

#[derive(Serialize)]
struct PolyJson {
    coeffs: Vec<serde_json::Value>,
    display: String,
}

fn poly_json(p: &Polynomial) -> PolyJson {
    PolyJson {
        coeffs: p
            .coeffs()
            .iter()
            .map(|c| match i64::try_from(c) {
                Ok(v) => serde_json::Value::from(v),
                Err(_) => serde_json::Value::from(c.to_string()),
            })
            .collect(),
        display: p.to_string(),
    }
}

fn ring_setup(
    ring: RingTag,
    element: &str,
    deg_cap: usize,
) -> Result<(Engine, RingElement)> {
    let engine = Engine::new(EngineConfig {
        zx_degree_cap: deg_cap,
    });
    let elem = RingElement::parse_capped(ring, element, deg_cap)?;
    Ok((engine, elem))
}

#[derive(Serialize)]
struct FactorReport {
    input: String,
    ring: &'static str,
    divisor_count: u64,
    atoms: Vec<PolyJson>,
    factorizations: Vec<Vec<PolyJson>>,
    length_set: Vec<u64>,
    elasticity: String,
    complete: bool,
}

fn ring_factor(ring: RingTag, element: &str, deg_cap: usize) -> Result<Report> {
    let (mut engine, elem) = ring_setup(ring, element, deg_cap)?;
    let divisors = engine.enumerate_divisors(ring, &elem)?;
    let zs = engine.enumerate_factorizations(ring, &elem)?;
    let lengths = invariants::length_set(&zs);
    let elasticity = invariants::elasticity(&zs)?;
    let mut atoms: BTreeSet<Polynomial> = BTreeSet::new();
    for z in &zs {
        atoms.extend(z.atoms().iter().cloned());
    }
    let report = FactorReport {
        input: elem.to_string(),
        ring: ring.as_str(),
        divisor_count: divisors.len() as u64,
        atoms: atoms.iter().map(poly_json).collect(),
        factorizations: zs
            .iter()
            .map(|z| z.atoms().iter().map(poly_json).collect())
            .collect(),
        length_set: lengths.iter().copied().collect(),
        elasticity: rat_str(&elasticity),
        complete: true,
    };
    let mut text = String::new();
    let _ = writeln!(text, "input: {}", report.input);
    let _ = writeln!(text, "ring: {}", report.ring);
    let _ = writeln!(text, "divisor count: {}", report.divisor_count);
    let _ = writeln!(text, "atoms: {}", join_display(&atoms));
    let _ = writeln!(text, "factorizations ({}):", zs.len());
    for z in &zs {
        let _ = writeln!(text, "  {z}");
    }
    let _ = writeln!(text, "lengths: {}", format_u64_set(&report.length_set));
    let _ = writeln!(text, "elasticity: {}", report.elasticity);
    Report::new(&report, text)
}

#[derive(Serialize)]
struct DivisorsReport {
    input: String,
    ring: &'static str,
    divisor_count: u64,
    divisors: Vec<PolyJson>,
}

fn ring_divisors(ring: RingTag, element: &str, deg_cap: usize) -> Result<Report> {
    let (mut engine, elem) = ring_setup(ring, element, deg_cap)?;
    let divisors = engine.enumerate_divisors(ring, &elem)?;
    let report = DivisorsReport {
        input: elem.to_string(),
        ring: ring.as_str(),
        divisor_count: divisors.len() as u64,
        divisors: divisors.iter().map(poly_json).collect(),
    };
    let mut text = String::new();
    let _ = writeln!(text, "input: {}", report.input);
    let _ = writeln!(text, "ring: {}", report.ring);
    let _ = writeln!(text, "divisor count: {}", report.divisor_count);
    for d in &divisors {
        let _ = writeln!(text, "  {d}");
    }
    Report::new(&report, text)
}

#[derive(Serialize)]
struct AtomVerdictReport {
    input: String,
    ring: &'static str,
    is_atom: bool,
}

fn ring_atom(ring: RingTag, element: &str, deg_cap: usize) -> Result<Report> {
    let (mut engine, elem) = ring_setup(ring, element, deg_cap)?;
    let is_atom = engine.is_atom(ring, &elem)?;
    let report = AtomVerdictReport {
        input: elem.to_string(),
        ring: ring.as_str(),
        is_atom,
    };
    let text = format!(
        "input: {}\nring: {}\natom: {}\n",
        report.input, report.ring, report.is_atom
    );
    Report::new(&report, text)
}

#[derive(Serialize)]
struct LengthsReport {
    input: String,
    ring: &'static str,
    length_set: Vec<u64>,
}

fn ring_lengths(ring: RingTag, element: &str, deg_cap: usize) -> Result<Report> {
    let (mut engine, elem) = ring_setup(ring, element, deg_cap)?;
    let zs = engine.enumerate_factorizations(ring, &elem)?;
    let report = LengthsReport {
        input: elem.to_string(),
        ring: ring.as_str(),
        length_set: invariants::length_set(&zs).iter().copied().collect(),
    };
    let text = format!(
        "input: {}\nring: {}\nlengths: {}\n",
        report.input,
        report.ring,
        format_u64_set(&report.length_set)
    );
    Report::new(&report, text)
}

#[derive(Serialize)]
struct ElasticityReport {
    input: String,
    ring: &'static str,
    length_set: Vec<u64>,
    elasticity: String,
}

fn ring_elasticity(ring: RingTag, element: &str, deg_cap: usize) -> Result<Report> {
    let (mut engine, elem) = ring_setup(ring, element, deg_cap)?;
    let zs = engine.enumerate_factorizations(ring, &elem)?;
    let report = ElasticityReport {
        input: elem.to_string(),
        ring: ring.as_str(),
        length_set: invariants::length_set(&zs).iter().copied().collect(),
        elasticity: rat_str(&invariants::elasticity(&zs)?),
    };
    let text = format!(
        "input: {}\nring: {}\nlengths: {}\nelasticity: {}\n",
        report.input,
        report.ring,
        format_u64_set(&report.length_set),
        report.elasticity
    );
    Report::new(&report, text)
}

#[derive(Serialize)]
struct FamilyJsonReport {
    n: u64,
    k: u64,
    polynomial: PolyJson,
    factorizations: Vec<Vec<PolyJson>>,
    length_set: Vec<u64>,
    elasticity: String,
}

fn family(n: u64, k: u64) -> Result<Report> {
    let mut engine = Engine::new(EngineConfig::default());
    let FamilyReport {
        n,
        k,
        polynomial,
        factorizations,
        length_set,
        elasticity,
    } = invariants::elasticity_family(&mut engine, n, k)?;
    let report = FamilyJsonReport {
        n,
        k,
        polynomial: poly_json(&polynomial),
        factorizations: factorizations
            .iter()
            .map(|z| z.atoms().iter().map(poly_json).collect())
            .collect(),
        length_set: length_set.iter().copied().collect(),
        elasticity: rat_str(&elasticity),
    };
    let mut text = String::new();
    let _ = writeln!(text, "n: {n}");
    let _ = writeln!(text, "k: {k}");
    let _ = writeln!(text, "polynomial: {polynomial}");
    let _ = writeln!(text, "factorizations ({}):", factorizations.len());
    for z in &factorizations {
        let _ = writeln!(text, "  {z}");
    }
    let _ = writeln!(text, "lengths: {}", format_u64_set(&report.length_set));
    let _ = writeln!(text, "elasticity: {}", report.elasticity);
    Report::new(&report, text)
}

// ---------------------------------------------------------------------
// Rational-power monoid verbs
// ---------------------------------------------------------------------

fn puiseux_member_of(monoid: &PuiseuxMonoid, text: &str) -> Result<PuiseuxElement> {
    let value = parse_rat(text)?;
    monoid.is_member(&value)?.ok_or_else(|| {
        Error::domain(format!("{} is not a member of the monoid", rat_str(&value)))
    })
}

fn digit_strings(e: &PuiseuxElement) -> Vec<String> {
    e.digits().iter().map(Natural::to_string).collect()
}

#[derive(Serialize)]
struct PuiseuxMemberReport {
    r: String,
    q: String,
    is_member: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    digits: Option<Vec<String>>,
}

#[derive(Serialize)]
struct PuiseuxDividesReport {
    r: String,
    a: String,
    b: String,
    divides: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    complement: Option<String>,
}

#[derive(Serialize)]
struct PuiseuxAtomReport {
    r: String,
    exponent: usize,
    value: String,
    is_atom: bool,
}

#[derive(Serialize)]
struct PuiseuxMcdReport {
    r: String,
    inputs: Vec<String>,
    value: String,
    digits: Vec<String>,
    remainders: Vec<String>,
    certificate: String,
    greedy_steps: u64,
}

#[derive(Serialize)]
struct PuiseuxChainReport {
    r: String,
    depth: usize,
    elements: Vec<String>,
    gaps: Vec<String>,
    verified: bool,
}

fn puiseux(r_text: &str, depth_cap: usize, op: &PuiseuxOp) -> Result<Report> {
    let r = parse_rat(r_text)?;
    let monoid = PuiseuxMonoid::with_depth_cap(&r, depth_cap)?;
    let r_str = rat_str(monoid.r());
    match op {
        PuiseuxOp::Member { q } => {
            let value = parse_rat(q)?;
            let member = monoid.is_member(&value)?;
            let report = PuiseuxMemberReport {
                r: r_str,
                q: rat_str(&value),
                is_member: member.is_some(),
                digits: member.as_ref().map(digit_strings),
            };
            let mut text = format!(
                "r: {}\nq: {}\nmember: {}\n",
                report.r, report.q, report.is_member
            );
            if let Some(d) = &report.digits {
                let _ = writeln!(text, "digits (low power first): [{}]", d.join(", "));
            }
            Report::new(&report, text)
        }
        PuiseuxOp::Divides { a, b } => {
            let ea = puiseux_member_of(&monoid, a)?;
            let eb = puiseux_member_of(&monoid, b)?;
            let divides = monoid.divides(&ea, &eb)?;
            let complement = if divides {
                Some(rat_str(&(eb.value() - ea.value())))
            } else {
                None
            };
            let report = PuiseuxDividesReport {
                r: r_str,
                a: rat_str(ea.value()),
                b: rat_str(eb.value()),
                divides,
                complement,
            };
            let mut text = format!(
                "r: {}\na: {}\nb: {}\ndivides: {}\n",
                report.r, report.a, report.b, report.divides
            );
            if let Some(c) = &report.complement {
                let _ = writeln!(text, "complement: {c}");
            }
            Report::new(&report, text)
        }
        PuiseuxOp::Atom { n } => {
            let is_atom = monoid.atom_test(*n)?;
            let report = PuiseuxAtomReport {
                r: r_str,
                exponent: *n,
                value: rat_str(&monoid.r_pow(*n)),
                is_atom,
            };
            let text = format!(
                "r: {}\nexponent: {}\nvalue: {}\natom: {}\n",
                report.r, report.exponent, report.value, report.is_atom
            );
            Report::new(&report, text)
        }
        PuiseuxOp::Mcd { elements } => {
            let inputs: Vec<PuiseuxElement> = elements
                .iter()
                .map(|t| puiseux_member_of(&monoid, t))
                .collect::<Result<_>>()?;
            let outcome = monoid.mcd(&inputs)?;
            let report = PuiseuxMcdReport {
                r: r_str,
                inputs: inputs.iter().map(|e| rat_str(e.value())).collect(),
                value: rat_str(outcome.value.value()),
                digits: digit_strings(&outcome.value),
                remainders: outcome
                    .remainders
                    .iter()
                    .map(|e| rat_str(e.value()))
                    .collect(),
                certificate: outcome.certificate.describe(),
                greedy_steps: outcome.greedy_steps as u64,
            };
            let mut text = String::new();
            let _ = writeln!(text, "r: {}", report.r);
            let _ = writeln!(text, "inputs: [{}]", report.inputs.join(", "));
            let _ = writeln!(text, "mcd: {}", report.value);
            let _ = writeln!(text, "remainders: [{}]", report.remainders.join(", "));
            let _ = writeln!(text, "certificate: {}", report.certificate);
            Report::new(&report, text)
        }
        PuiseuxOp::Chain { depth } => {
            let witness = monoid.accp_chain(*depth)?;
            let report = PuiseuxChainReport {
                r: r_str,
                depth: *depth,
                elements: witness
                    .elements
                    .iter()
                    .map(|e| rat_str(e.value()))
                    .collect(),
                gaps: witness.gaps.iter().map(|e| rat_str(e.value())).collect(),
                verified: true,
            };
            let mut text = String::new();
            let _ = writeln!(text, "r: {}", report.r);
            let _ = writeln!(text, "depth: {}", report.depth);
            let _ = writeln!(text, "chain: [{}]", report.elements.join(", "));
            let _ = writeln!(text, "gaps: [{}]", report.gaps.join(", "));
            let _ = writeln!(text, "verified: each element equals its successor plus a nonzero member gap");
            Report::new(&report, text)
        }
    }
}

// ---------------------------------------------------------------------
// Exponential-sum semiring verbs
// ---------------------------------------------------------------------

#[derive(Serialize)]
struct EsMulReport {
    r: String,
    a: String,
    b: String,
    product: String,
}

#[derive(Serialize)]
struct EsDividesReport {
    r: String,
    a: String,
    b: String,
    divides: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    quotient: Option<String>,
}

#[derive(Serialize)]
struct EsDecomposeReport {
    r: String,
    input: String,
    content: String,
    shift: String,
    reduced: String,
    certificate: String,
}

#[derive(Serialize)]
struct EsFactorReport {
    r: String,
    input: String,
    factorization_count: u64,
    factorizations: Vec<Vec<String>>,
    length_set: Vec<u64>,
    complete: bool,
}

fn esemiring(r_text: &str, depth_cap: usize, budget: usize, op: &EsOp) -> Result<Report> {
    let r = parse_rat(r_text)?;
    let semiring = MonoidSemiring::new(PuiseuxMonoid::with_depth_cap(&r, depth_cap)?);
    let r_str = rat_str(semiring.monoid().r());
    let parse = |t: &str| MsElement::parse(semiring.monoid(), t);
    match op {
        EsOp::Mul { a, b } => {
            let (ea, eb) = (parse(a)?, parse(b)?);
            let product = semiring.mul(&ea, &eb);
            let report = EsMulReport {
                r: r_str,
                a: ea.to_string(),
                b: eb.to_string(),
                product: product.to_string(),
            };
            let text = format!(
                "r: {}\na: {}\nb: {}\nproduct: {}\n",
                report.r, report.a, report.b, report.product
            );
            Report::new(&report, text)
        }
        EsOp::Divides { a, b } => {
            let (ea, eb) = (parse(a)?, parse(b)?);
            let quotient = semiring.divides(&ea, &eb)?;
            let report = EsDividesReport {
                r: r_str,
                a: ea.to_string(),
                b: eb.to_string(),
                divides: quotient.is_some(),
                quotient: quotient.map(|q| q.to_string()),
            };
            let mut text = format!(
                "r: {}\na: {}\nb: {}\ndivides: {}\n",
                report.r, report.a, report.b, report.divides
            );
            if let Some(q) = &report.quotient {
                let _ = writeln!(text, "quotient: {q}");
            }
            Report::new(&report, text)
        }
        EsOp::Decompose { f } => {
            let ef = parse(f)?;
            let d = semiring.normal_decomposition(&ef)?;
            let report = EsDecomposeReport {
                r: r_str,
                input: ef.to_string(),
                content: d.content.to_string(),
                shift: rat_str(d.shift.value()),
                reduced: d.reduced.to_string(),
                certificate: d.shift_certificate.describe(),
            };
            let text = format!(
                "r: {}\ninput: {}\ncontent: {}\nshift exponent: {}\nreduced: {}\ncertificate: {}\n",
                report.r,
                report.input,
                report.content,
                report.shift,
                report.reduced,
                report.certificate
            );
            Report::new(&report, text)
        }
        EsOp::Factor { f } => {
            let ef = parse(f)?;
            let out = semiring.factorizations(&ef, budget)?;
            let lengths: BTreeSet<u64> = out
                .factorizations
                .iter()
                .map(|z| z.len() as u64)
                .collect();
            let report = EsFactorReport {
                r: r_str,
                input: ef.to_string(),
                factorization_count: out.factorizations.len() as u64,
                factorizations: out
                    .factorizations
                    .iter()
                    .map(|z| z.iter().map(MsElement::to_string).collect())
                    .collect(),
                length_set: lengths.iter().copied().collect(),
                complete: out.complete,
            };
            let mut text = String::new();
            let _ = writeln!(text, "r: {}", report.r);
            let _ = writeln!(text, "input: {}", report.input);
            let _ = writeln!(text, "factorizations ({}):", report.factorization_count);
            for z in &report.factorizations {
                let _ = writeln!(text, "  ({})", z.join(") * ("));
            }
            let _ = writeln!(text, "lengths: {}", format_u64_set(&report.length_set));
            let _ = writeln!(text, "complete: {}", report.complete);
            Report::new(&report, text)
        }
    }
}

// ---------------------------------------------------------------------
// Threshold monoid verbs
// ---------------------------------------------------------------------

#[derive(Serialize)]
struct NqMemberReport {
    k: u64,
    q: String,
    is_member: bool,
}

#[derive(Serialize)]
struct NqAtomReport {
    k: u64,
    q: String,
    is_atom: bool,
}

#[derive(Serialize)]
struct NqSampleReport {
    k: u64,
    q: String,
    is_atom: bool,
    factorization_count: u64,
    factorizations: Vec<Vec<String>>,
}

#[derive(Serialize)]
struct NqLengthsReport {
    k: u64,
    q: String,
    budget: u64,
    lengths: Vec<u64>,
    partial: bool,
}

fn nq(k: u64, op: &NqOp) -> Result<Report> {
    let monoid = NqMonoid::new(k)?;
    match op {
        NqOp::Member { q } => {
            let value = parse_rat(q)?;
            let report = NqMemberReport {
                k,
                q: rat_str(&value),
                is_member: monoid.is_member(&value),
            };
            let text = format!(
                "k: {}\nq: {}\nmember: {}\n",
                report.k, report.q, report.is_member
            );
            Report::new(&report, text)
        }
        NqOp::Atom { q } => {
            let value = parse_rat(q)?;
            let report = NqAtomReport {
                k,
                q: rat_str(&value),
                is_atom: monoid.is_atom(&value)?,
            };
            let text = format!(
                "k: {}\nq: {}\natom: {}\n",
                report.k, report.q, report.is_atom
            );
            Report::new(&report, text)
        }
        NqOp::Sample { q, count } => {
            let value = parse_rat(q)?;
            let sample = monoid.factorization_sample(&value, *count)?;
            let report = NqSampleReport {
                k,
                q: rat_str(&value),
                is_atom: sample.is_atom,
                factorization_count: sample.factorizations.len() as u64,
                factorizations: sample
                    .factorizations
                    .iter()
                    .map(|z| z.iter().map(rat_str).collect())
                    .collect(),
            };
            let mut text = String::new();
            let _ = writeln!(text, "k: {}", report.k);
            let _ = writeln!(text, "q: {}", report.q);
            let _ = writeln!(text, "atom: {}", report.is_atom);
            let _ = writeln!(text, "factorizations ({}):", report.factorization_count);
            for z in &report.factorizations {
                let _ = writeln!(text, "  {}", z.join(" * "));
            }
            Report::new(&report, text)
        }
        NqOp::Lengths { q, budget } => {
            let value = parse_rat(q)?;
            let out = monoid.length_set_bounded(&value, *budget)?;
            let report = NqLengthsReport {
                k,
                q: rat_str(&value),
                budget: *budget,
                lengths: out.lengths.iter().copied().collect(),
                partial: out.partial,
            };
            let text = format!(
                "k: {}\nq: {}\nlengths (within budget {}): {}\npartial: {}\n",
                report.k,
                report.q,
                report.budget,
                format_u64_set(&report.lengths),
                report.partial
            );
            Report::new(&report, text)
        }
    }
}

// ---------------------------------------------------------------------
// Shared formatting helpers
// ---------------------------------------------------------------------

fn format_u64_set(values: &[u64]) -> String {
    let inner: Vec<String> = values.iter().map(u64::to_string).collect();
    format!("{{{}}}", inner.join(", "))
}

fn join_display<T: std::fmt::Display>(items: &BTreeSet<T>) -> String {
    let inner: Vec<String> = items.iter().map(T::to_string).collect();
    if inner.is_empty() {
        "(none)".to_string()
    } else {
        inner.join(", ")
    }
}

//! Exact-arithmetic factorization invariants in semirings without
//! subtraction: polynomial semidomains, rational Puiseux monoids and their
//! monoid semirings, and truncated nonnegative-rational semirings.

pub mod error;
pub mod invariants;
pub mod numbers;
pub mod msemiring;
pub mod nq;
pub mod oracle;
pub mod poly;
pub mod puiseux;
pub mod semidomain;
pub mod zx;

pub use error::{Error, Result};
pub use numbers::{Int, Natural, PrimeFactorization, Rat};
pub use poly::{LaurentPolynomial, Polynomial, RatPoly};
pub use msemiring::{MonoidSemiring, MsAtomReport, MsElement, MsFactorizations};
pub use nq::{NqLengthSet, NqMonoid, NqSample};
pub use puiseux::{ChainWitness, McdCertificate, McdOutcome, PuiseuxElement, PuiseuxMonoid};
pub use semidomain::{Engine, EngineConfig, Factorization, RingElement, RingTag};
pub use zx::ZxFactorization;

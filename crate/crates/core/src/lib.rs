//! Exact commutative algebra for submodules of free modules over Q[x₁..xₘ]:
//! polynomial and vector arithmetic, Groebner bases, module operations, and
//! envelope/closure constructions driven by primary-decomposition
//! certificates.

pub mod algebra;
pub mod decomp;
pub mod envelope;
pub mod error;
pub mod groebner;
pub mod module;
mod mono;
pub mod parse;
pub mod ring;

pub use algebra::{
    annihilator, colon_ideal, colon_poly, ideal_module_product, intersect, intersect_ideals,
    intersect_many, saturate, sum,
};
pub use decomp::{
    closure, element_avoiding, intersect_components, intersect_primes,
    isolated_component_indices, meet, minimal_primes_monomial, monomial_primary_decomposition,
    monomial_prime, quasi_primary_split, ClosureResult, Decomposition, DecompositionOracle,
    PrimaryComponent, QuasiPrimaryGroup, QuasiPrimarySplit, VerificationConfig,
    VerificationReport,
};
pub use envelope::{
    certify_weakly_prime, envelope, find_weak_counterexample, iterate_envelope,
    semiprime_spot_check, weakly_closure, weakly_radical, EnvelopeConfig, EnvelopeSummand,
    EnvelopeTrace, IterationResult, SemiprimeCheck, WeaklyPrimeStatus, WeaklyPrimeVerdict,
    DEFAULT_MAX_COMPONENTS, DEFAULT_MAX_ITER,
};
pub use error::{Error, Result};
pub use groebner::{buchberger, normal_form_against, Ideal, Submodule};
pub use module::{FreeModule, ModuleTerm, ModuleVector};
pub use parse::{
    parse_polynomial, parse_polynomial_tokens, parse_vector, parse_vector_tokens, Lexer,
    ParseError,
};
pub use ring::{Monomial, MonomialOrder, PolyRing, Polynomial};

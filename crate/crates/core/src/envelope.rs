//! Envelopes of submodules and everything built on them: iterated envelopes
//! and their fixed point, weakly p-closures, the weakly radical, the
//! weakly-prime certifier and bounded counterexample searches.
//!
//! Given a verified certificate N = Q₁ ∩ … ∩ Q_k with primes p₁..p_k, the
//! envelope submodule is assembled as
//!
//! ```text
//! ⟨E(N)⟩ = N + (∩ᵢ pᵢ)M + Σ_{∅≠T⊊S} (∩_{i∈T} pᵢ)(∩_{i∈S∖T} Qᵢ)
//! ```
//!
//! with one summand per nonempty proper subset T of the component set S.
//! Subset intersections are shared through a bitmask table, so building all
//! 2^k − 2 summands costs O(2^k) intersections rather than O(k·2^k). For a
//! single component the sum is empty and the result is N + p₁M.

use std::sync::Arc;

use num_rational::BigRational;

use crate::algebra::{annihilator, ideal_module_product, intersect, intersect_ideals, sum};
use crate::decomp::{
    minimal_primes_monomial, Decomposition, DecompositionOracle, VerificationConfig,
};
use crate::error::{Error, Result};
use crate::groebner::{Ideal, Submodule};
use crate::module::ModuleVector;
use crate::ring::{Monomial, PolyRing, Polynomial};

/// Default bound on envelope iterations before giving up.
pub const DEFAULT_MAX_ITER: usize = 32;
/// Default cap on certificate size: the subset sum is exact and exponential.
pub const DEFAULT_MAX_COMPONENTS: usize = 12;

/// Knobs shared by the envelope pipeline.
#[derive(Debug, Clone, Copy)]
pub struct EnvelopeConfig {
    /// Certificate verification bounds.
    pub verification: VerificationConfig,
    /// Largest certificate size accepted by [`envelope`].
    pub max_components: usize,
    /// Iteration bound for [`iterate_envelope`] and the closures above it.
    pub max_iter: usize,
}

impl Default for EnvelopeConfig {
    fn default() -> Self {
        EnvelopeConfig {
            verification: VerificationConfig::default(),
            max_components: DEFAULT_MAX_COMPONENTS,
            max_iter: DEFAULT_MAX_ITER,
        }
    }
}

/// One subset summand (∩_{i∈T} pᵢ)(∩_{i∉T} Qᵢ) of the envelope formula.
#[derive(Debug, Clone)]
pub struct EnvelopeSummand {
    /// T: indices whose primes are intersected.
    pub prime_indices: Vec<usize>,
    /// S ∖ T: indices whose components are intersected.
    pub component_indices: Vec<usize>,
    pub submodule: Submodule,
}

/// Envelope result with every intermediate kept for inspection.
#[derive(Debug, Clone)]
pub struct EnvelopeTrace {
    pub input: Submodule,
    pub decomposition: Decomposition,
    /// ∩ᵢ pᵢ.
    pub radical_ideal: Ideal,
    /// (∩ᵢ pᵢ)·M.
    pub radical_summand: Submodule,
    /// The 2^k − 2 subset summands, ordered by |T| then by T.
    pub summands: Vec<EnvelopeSummand>,
    pub result: Submodule,
}

/// Computes ⟨E(N)⟩ from a certificate, re-verifying it first.
pub fn envelope(d: &Decomposition, config: &EnvelopeConfig) -> Result<EnvelopeTrace> {
    d.require_valid(&config.verification)?;
    let k = d.components().len();
    if k > config.max_components {
        return Err(Error::TooManyComponents { found: k, max: config.max_components });
    }
    let module = d.module().clone();
    let full_mask: usize = (1 << k) - 1;

    // meet tables over bitmask subsets; entry 0 is the empty intersection.
    let mut prime_meets: Vec<Option<Ideal>> = vec![None; 1 << k];
    let mut comp_meets: Vec<Option<Submodule>> = vec![None; 1 << k];
    prime_meets[0] = Some(Ideal::unit(module.ring()));
    comp_meets[0] = Some(Submodule::full(&module));
    for mask in 1..=full_mask {
        let low = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        let p = intersect_ideals(
            prime_meets[rest].as_ref().unwrap(),
            &d.components()[low].prime,
        );
        let q = intersect(
            comp_meets[rest].as_ref().unwrap(),
            &d.components()[low].submodule,
        );
        prime_meets[mask] = Some(p);
        comp_meets[mask] = Some(q);
    }

    let radical_ideal = prime_meets[full_mask].clone().unwrap();
    let radical_summand = ideal_module_product(&radical_ideal, &Submodule::full(&module));
    let mut result = sum(d.target(), &radical_summand);

    let indices = |mask: usize| -> Vec<usize> { (0..k).filter(|i| mask >> i & 1 == 1).collect() };
    let mut t_masks: Vec<usize> = (1..full_mask).collect();
    t_masks.sort_by_key(|&m| (m.count_ones(), indices(m)));

    let mut summands = Vec::with_capacity(t_masks.len());
    for t in t_masks {
        let part = ideal_module_product(
            prime_meets[t].as_ref().unwrap(),
            comp_meets[full_mask ^ t].as_ref().unwrap(),
        );
        result = sum(&result, &part);
        summands.push(EnvelopeSummand {
            prime_indices: indices(t),
            component_indices: indices(full_mask ^ t),
            submodule: part,
        });
    }

    debug_assert!(d.target().is_subset_of(&result));
    Ok(EnvelopeTrace {
        input: d.target().clone(),
        decomposition: d.clone(),
        radical_ideal,
        radical_summand,
        summands,
        result,
    })
}

/// The ascending chain N ⊆ ⟨E(N)⟩ ⊆ ⟨E(⟨E(N)⟩)⟩ ⊆ … up to its fixed point.
#[derive(Debug, Clone)]
pub struct IterationResult {
    /// Strictly increasing, except the last two entries are equal.
    pub chain: Vec<Submodule>,
    pub fixed_point: Submodule,
    /// Envelope applications performed, counting the one that certified
    /// stability; an already-fixed input reports 1.
    pub steps: usize,
}

/// Iterates the envelope with oracle-supplied certificates until it is
/// stationary; the union of the chain is the fixed point.
pub fn iterate_envelope(
    n: &Submodule,
    oracle: &DecompositionOracle,
    config: &EnvelopeConfig,
) -> Result<IterationResult> {
    let mut chain = vec![n.clone()];
    for steps in 1..=config.max_iter {
        let current = chain.last().unwrap();
        let d = oracle.decompose(current)?;
        let next = envelope(&d, config)?.result;
        assert!(
            current.is_subset_of(&next),
            "envelope chain failed to ascend: internal error"
        );
        let fixed = next == *current;
        chain.push(next);
        if fixed {
            let fixed_point = chain.last().unwrap().clone();
            return Ok(IterationResult { chain, fixed_point, steps });
        }
    }
    Err(Error::IterationLimit(config.max_iter))
}

/// Weakly p-closure: the envelope fixed point of N + pM.
///
/// Requires (N : M) ⊆ p; the identity (N + pM : M) = p is recomputed and a
/// mismatch (possible only for a bad prime certificate) is an error.
pub fn weakly_closure(
    n: &Submodule,
    p: &Ideal,
    oracle: &DecompositionOracle,
    config: &EnvelopeConfig,
) -> Result<Submodule> {
    let ann = annihilator(n);
    if !ann.is_subset_of(p) {
        return Err(Error::Precondition(
            "(N : M) is not contained in the closure prime".to_string(),
        ));
    }
    let start = sum(n, &ideal_module_product(p, &Submodule::full(n.module())));
    let quot = annihilator(&start);
    if quot != *p {
        return Err(Error::Precondition(
            "(N + pM : M) differs from p; the certificate is not a prime over (N : M)"
                .to_string(),
        ));
    }
    Ok(iterate_envelope(&start, oracle, config)?.fixed_point)
}

/// Weakly radical: ∩ of the weakly p-closures over the minimal primes of
/// (N : M).
///
/// When `primes` is `None` the minimal primes are computed, which requires
/// (N : M) to be monomial; each supplied prime must contain (N : M).
pub fn weakly_radical(
    n: &Submodule,
    primes: Option<&[Ideal]>,
    oracle: &DecompositionOracle,
    config: &EnvelopeConfig,
) -> Result<Submodule> {
    if n.is_full() {
        return Err(Error::ImproperSubmodule);
    }
    let ann = annihilator(n);
    let owned;
    let primes: &[Ideal] = match primes {
        Some(p) => p,
        None => {
            owned = minimal_primes_monomial(&ann).map_err(|_| {
                Error::Precondition(
                    "(N : M) is not monomial; supply the minimal primes explicitly".to_string(),
                )
            })?;
            &owned
        }
    };
    if primes.is_empty() {
        return Err(Error::Precondition("no minimal primes supplied".to_string()));
    }
    for p in primes {
        if !ann.is_subset_of(p) {
            return Err(Error::Precondition(format!(
                "(N : M) is not contained in the supplied prime with basis {}",
                p.canonical_key().replace('\n', ", ")
            )));
        }
    }
    let mut acc: Option<Submodule> = None;
    for p in primes {
        let wcl = weakly_closure(n, p, oracle, config)?;
        acc = Some(match acc {
            None => wcl,
            Some(prev) => intersect(&prev, &wcl),
        });
    }
    Ok(acc.unwrap())
}

/// Outcome of the weakly-prime certifier or counterexample search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WeaklyPrimeStatus {
    /// Chain primes and a stationary envelope: a sufficient condition.
    Certified,
    /// A concrete (a, b, m) with abm ∈ N, am ∉ N, bm ∉ N.
    Counterexample,
    /// Neither established; the certifier's condition is not necessary.
    Unknown,
}

/// Verdict plus the witness when one exists.
#[derive(Debug, Clone)]
pub struct WeaklyPrimeVerdict {
    pub status: WeaklyPrimeStatus,
    pub witness: Option<(Polynomial, Polynomial, ModuleVector)>,
}

/// Certifies N weakly prime when its certificate primes form a chain under
/// inclusion and the envelope of N is N itself. Never produces a negative
/// verdict: the condition is sufficient, not necessary.
pub fn certify_weakly_prime(
    d: &Decomposition,
    config: &EnvelopeConfig,
) -> Result<WeaklyPrimeVerdict> {
    d.require_valid(&config.verification)?;
    let comps = d.components();
    let chain = (0..comps.len()).all(|i| {
        (i + 1..comps.len()).all(|j| {
            comps[i].prime.is_subset_of(&comps[j].prime)
                || comps[j].prime.is_subset_of(&comps[i].prime)
        })
    });
    let status = if chain && envelope(d, config)?.result == *d.target() {
        WeaklyPrimeStatus::Certified
    } else {
        WeaklyPrimeStatus::Unknown
    };
    Ok(WeaklyPrimeVerdict { status, witness: None })
}

/// All monomials with `min_deg ≤ degree ≤ max_deg`, ascending by (degree,
/// ring order).
fn monomials_up_to(ring: &Arc<PolyRing>, min_deg: u32, max_deg: u32) -> Vec<Monomial> {
    let n = ring.num_vars();
    let mut out = Vec::new();
    let mut exps = vec![0u32; n];
    fn rec(exps: &mut Vec<u32>, var: usize, left: u32, out: &mut Vec<Monomial>) {
        if var + 1 == exps.len() {
            exps[var] = left;
            out.push(Monomial::from_exponents(exps.clone()));
            return;
        }
        for e in 0..=left {
            exps[var] = e;
            rec(exps, var + 1, left - e, out);
        }
        exps[var] = 0;
    }
    for d in min_deg..=max_deg {
        rec(&mut exps, 0, d, &mut out);
    }
    out.sort_by(|a, b| ring.cmp_monomials(a, b));
    out
}

/// Deterministic supply of candidate module terms: monomials ascending, then
/// positions ascending.
fn module_terms_up_to(n: &Submodule, max_deg: u32) -> Vec<ModuleVector> {
    let module = n.module();
    let one = BigRational::from_integer(1.into());
    let mut out = Vec::new();
    for m in monomials_up_to(module.ring(), 0, max_deg) {
        for pos in 0..module.rank() {
            out.push(ModuleVector::basis(module, pos).scale_term(&one, &m));
        }
    }
    out
}

/// Bounded search for a weakly-prime violation: monomials a, b and module
/// terms m with abm ∈ N but am ∉ N and bm ∉ N.
///
/// Enumeration is a-major then b then m, each ascending by (degree, ring
/// order) with positions ascending, so the reported witness is deterministic.
/// Constant a or b can never witness, so the scan starts at degree 1.
pub fn find_weak_counterexample(n: &Submodule, degree_bound: u32) -> WeaklyPrimeVerdict {
    let ring = n.module().ring();
    let one = BigRational::from_integer(1.into());
    let factors = monomials_up_to(ring, 1, degree_bound);
    let terms = module_terms_up_to(n, degree_bound);
    for a in &factors {
        for b in &factors {
            let ab = a.mul(b);
            for m in &terms {
                if !n.contains(&m.scale_term(&one, &ab)) {
                    continue;
                }
                if n.contains(&m.scale_term(&one, a)) || n.contains(&m.scale_term(&one, b)) {
                    continue;
                }
                let to_poly =
                    |mm: &Monomial| Polynomial::monomial_term(ring, mm.clone(), one.clone());
                return WeaklyPrimeVerdict {
                    status: WeaklyPrimeStatus::Counterexample,
                    witness: Some((to_poly(a), to_poly(b), m.clone())),
                };
            }
        }
    }
    WeaklyPrimeVerdict { status: WeaklyPrimeStatus::Unknown, witness: None }
}

/// Outcome of the bounded semiprime check.
#[derive(Debug, Clone)]
pub enum SemiprimeCheck {
    NoViolation,
    /// r^k·m ∈ N but r·m ∉ N.
    Witness { r: Polynomial, m: ModuleVector, k: u32 },
}

/// Bounded search for a semiprime violation: r^k m ∈ N with rm ∉ N, for
/// monomials r and module terms m of degree ≤ `degree_bound` and
/// 2 ≤ k ≤ `degree_bound`. The full module is rejected.
pub fn semiprime_spot_check(n: &Submodule, degree_bound: u32) -> Result<SemiprimeCheck> {
    if n.is_full() {
        return Err(Error::ImproperSubmodule);
    }
    let ring = n.module().ring();
    let one = BigRational::from_integer(1.into());
    for r in &monomials_up_to(ring, 1, degree_bound) {
        for m in &module_terms_up_to(n, degree_bound) {
            if n.contains(&m.scale_term(&one, r)) {
                continue;
            }
            let mut power = r.clone();
            for k in 2..=degree_bound {
                power = power.mul(r);
                if n.contains(&m.scale_term(&one, &power)) {
                    return Ok(SemiprimeCheck::Witness {
                        r: Polynomial::monomial_term(ring, r.clone(), one.clone()),
                        m: m.clone(),
                        k,
                    });
                }
            }
        }
    }
    Ok(SemiprimeCheck::NoViolation)
}

//! Primary-decomposition certificates and the constructions that consume
//! them: verification, automatic decomposition of monomial submodules,
//! minimal primes of monomial ideals, quasi-primary splitting and p-closures.
//!
//! Primality of certificate primes is trusted, never decided: every check
//! here is a Groebner membership computation (containments, products,
//! intersections), and the verification report says explicitly that
//! primality was assumed. Monomial submodules are the exception — for them a
//! full decomposition is computed automatically by componentwise irreducible
//! splitting, so the pipeline needs no external certificates on monomial
//! input.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{ideal_module_product, intersect, intersect_many, saturate, sum};
use crate::error::{Error, Result};
use crate::groebner::{Ideal, Submodule};
use crate::module::{FreeModule, ModuleVector};
use crate::ring::{Monomial, PolyRing, Polynomial};

/// One certified primary component: a submodule Q together with the prime p
/// claimed to equal √(Q : M).
#[derive(Debug, Clone)]
pub struct PrimaryComponent {
    pub submodule: Submodule,
    pub prime: Ideal,
    pub label: String,
}

impl PrimaryComponent {
    pub fn new(submodule: Submodule, prime: Ideal, label: impl Into<String>) -> PrimaryComponent {
        PrimaryComponent { submodule, prime, label: label.into() }
    }
}

/// A claimed minimal primary decomposition: target = ∩ components.
///
/// Construction does not validate; call [`Decomposition::verify`] for the
/// full report or [`Decomposition::require_valid`] to turn failures into an
/// error. Operations that consume certificates re-verify on entry.
#[derive(Debug, Clone)]
pub struct Decomposition {
    target: Submodule,
    components: Vec<PrimaryComponent>,
}

/// Bounds used while verifying certificates.
#[derive(Debug, Clone, Copy)]
pub struct VerificationConfig {
    /// Largest exponent tried when checking p_i^k·M ⊆ Q_i.
    pub k_max: u32,
}

impl Default for VerificationConfig {
    fn default() -> Self {
        VerificationConfig { k_max: 20 }
    }
}

/// Outcome of [`Decomposition::verify`]: every check with its result, plus
/// notes about what was assumed rather than proved.
#[derive(Debug, Clone)]
pub struct VerificationReport {
    pub entries: Vec<(String, bool)>,
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn is_valid(&self) -> bool {
        self.entries.iter().all(|(_, ok)| *ok)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (name, ok) in &self.entries {
            writeln!(f, "check {name}: {}", if *ok { "ok" } else { "FAIL" })?;
        }
        for note in &self.notes {
            writeln!(f, "note: {note}")?;
        }
        write!(f, "result: {}", if self.is_valid() { "valid" } else { "invalid" })
    }
}

impl Decomposition {
    pub fn new(target: Submodule, components: Vec<PrimaryComponent>) -> Decomposition {
        Decomposition { target, components }
    }

    pub fn target(&self) -> &Submodule {
        &self.target
    }

    pub fn components(&self) -> &[PrimaryComponent] {
        &self.components
    }

    pub fn module(&self) -> &Arc<FreeModule> {
        self.target.module()
    }

    fn name(&self, i: usize) -> String {
        if self.components[i].label.is_empty() {
            format!("Q{}", i + 1)
        } else {
            self.components[i].label.clone()
        }
    }

    fn prime_name(&self, i: usize) -> String {
        format!("p{}", i + 1)
    }

    /// Runs every certificate check and reports each outcome.
    ///
    /// In order: components nonempty and proper; (a) the intersection equals
    /// the target; (b) each (Q_i : M) ⊆ p_i; (c) each p_i^k·M ⊆ Q_i for some
    /// k ≤ `k_max`; (d) primes pairwise distinct; (e) no component contains
    /// the intersection of the others. Primality of each p_i is assumed, and
    /// the report says so.
    pub fn verify(&self, config: &VerificationConfig) -> VerificationReport {
        let mut entries = Vec::new();
        let mut notes = Vec::new();

        let proper = !self.components.is_empty()
            && self.components.iter().all(|c| !c.submodule.is_full());
        entries.push(("components nonempty and proper".to_string(), proper));
        if self.components.is_empty() {
            return VerificationReport { entries, notes };
        }

        let module = self.target.module();
        let parts: Vec<&Submodule> = self.components.iter().map(|c| &c.submodule).collect();
        let meet = intersect_many(module, &parts);
        entries.push((
            "(a) intersection of components equals the target".to_string(),
            meet == self.target,
        ));

        for (i, c) in self.components.iter().enumerate() {
            let ann = crate::algebra::annihilator(&c.submodule);
            entries.push((
                format!("(b) ({} : M) contained in {}", self.name(i), self.prime_name(i)),
                ann.is_subset_of(&c.prime),
            ));
        }

        for (i, c) in self.components.iter().enumerate() {
            let k = prime_power_annihilates(&c.prime, &c.submodule, config.k_max);
            let label = match k {
                Some(k) => format!(
                    "(c) {}^{k} M contained in {} (bound {})",
                    self.prime_name(i),
                    self.name(i),
                    config.k_max
                ),
                None => format!(
                    "(c) {}^k M contained in {} for some k <= {}",
                    self.prime_name(i),
                    self.name(i),
                    config.k_max
                ),
            };
            entries.push((label, k.is_some()));
        }

        let mut distinct = true;
        for i in 0..self.components.len() {
            for j in i + 1..self.components.len() {
                if self.components[i].prime == self.components[j].prime {
                    distinct = false;
                }
            }
        }
        entries.push(("(d) primes pairwise distinct".to_string(), distinct));

        if self.components.len() > 1 {
            for j in 0..self.components.len() {
                let others: Vec<&Submodule> = self
                    .components
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, c)| &c.submodule)
                    .collect();
                let rest = intersect_many(module, &others);
                entries.push((
                    format!("(e) {} is not redundant", self.name(j)),
                    !rest.is_subset_of(&self.components[j].submodule),
                ));
            }
        }

        let primes: Vec<String> =
            (0..self.components.len()).map(|i| self.prime_name(i)).collect();
        notes.push(format!(
            "primality of {} assumed from the certificate, not decided",
            primes.join(", ")
        ));

        VerificationReport { entries, notes }
    }

    /// Verifies and returns an error carrying the report when invalid.
    pub fn require_valid(&self, config: &VerificationConfig) -> Result<()> {
        let report = self.verify(config);
        if report.is_valid() {
            Ok(())
        } else {
            Err(Error::InvalidDecomposition(report.to_string()))
        }
    }
}

/// Smallest k ≤ `k_max` with p^k·M ⊆ Q, if any.
fn prime_power_annihilates(p: &Ideal, q: &Submodule, k_max: u32) -> Option<u32> {
    let module = q.module();
    let mut power = ideal_module_product(p, &Submodule::full(module));
    for k in 1..=k_max {
        if power.is_subset_of(q) {
            return Some(k);
        }
        power = ideal_module_product(p, &power);
    }
    None
}

/// The monomial prime ⟨x_j : j ∈ vars⟩.
pub fn monomial_prime(ring: &Arc<PolyRing>, vars: &[usize]) -> Ideal {
    Ideal::new(ring, vars.iter().map(|&j| Polynomial::variable(ring, j)).collect())
}

/// Scans `source`'s reduced basis for an element outside `avoid`, falling
/// back to pairwise products. For a prime `avoid` not containing `source`,
/// a single basis element always works.
pub fn element_avoiding(source: &Ideal, avoid: &Ideal) -> Option<Polynomial> {
    let polys = source.reduced_polys();
    if let Some(f) = polys.iter().find(|f| !avoid.contains_poly(f)) {
        return Some(f.clone());
    }
    for (i, f) in polys.iter().enumerate() {
        for g in polys.iter().skip(i) {
            let h = f.mul(g);
            if !avoid.contains_poly(&h) {
                return Some(h);
            }
        }
    }
    None
}

// ---------------------------------------------------------------------------
// Monomial machinery: irreducible splits over crate::mono generator lists.
// ---------------------------------------------------------------------------

use crate::mono;

/// Recursive irreducible decomposition of a nonzero proper monomial ideal.
///
/// A generator with two positive exponents splits the ideal in two; an ideal
/// whose minimal generators are all pure powers is irreducible. Results are
/// pruned to an irredundant list.
fn irreducible_monomial_components(
    ring: &Arc<PolyRing>,
    gens: Vec<Monomial>,
) -> Vec<Vec<Monomial>> {
    let mut seen: HashSet<Vec<Vec<u32>>> = HashSet::new();
    let mut work = vec![mono::minimalize(ring, gens)];
    let mut irreducible: Vec<Vec<Monomial>> = Vec::new();

    while let Some(current) = work.pop() {
        let key: Vec<Vec<u32>> = current.iter().map(|m| m.exponents().to_vec()).collect();
        if !seen.insert(key) {
            continue;
        }
        let mixed = current.iter().find(|m| m.support().len() >= 2).cloned();
        match mixed {
            None => irreducible.push(current),
            Some(m) => {
                let j = m.support()[0];
                let exps = m.exponents();
                let pure = Monomial::var_pow(ring.num_vars(), j, exps[j]);
                let mut rest_exps = exps.to_vec();
                rest_exps[j] = 0;
                let rest = Monomial::from_exponents(rest_exps);
                for extra in [pure, rest] {
                    let mut next = current.clone();
                    next.push(extra);
                    work.push(mono::minimalize(ring, next));
                }
            }
        }
    }

    // Sort for determinism, then prune components containing the
    // intersection of the others until stable.
    irreducible.sort_by(|a, b| {
        let ka: Vec<&[u32]> = a.iter().map(Monomial::exponents).collect();
        let kb: Vec<&[u32]> = b.iter().map(Monomial::exponents).collect();
        ka.cmp(&kb)
    });
    loop {
        let mut dropped = false;
        for j in 0..irreducible.len() {
            let others: Vec<Monomial> = {
                let rest: Vec<&Vec<Monomial>> = irreducible
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != j)
                    .map(|(_, c)| c)
                    .collect();
                if rest.is_empty() {
                    break;
                }
                let mut acc = rest[0].clone();
                for c in &rest[1..] {
                    acc = mono::intersect(ring, &acc, c);
                }
                acc
            };
            if mono::subset(&others, &irreducible[j]) {
                irreducible.remove(j);
                dropped = true;
                break;
            }
        }
        if !dropped {
            break;
        }
    }
    irreducible
}

/// Radical of an irreducible monomial ideal: the set of variables used.
fn irreducible_radical(gens: &[Monomial]) -> BTreeSet<usize> {
    gens.iter().flat_map(|m| m.support()).collect()
}

/// Automatic minimal primary decomposition of a monomial submodule.
///
/// Decomposes componentwise (N = ⊕ I_i·e_i), splits each position ideal into
/// irreducible monomial ideals, lifts each to a full-rank component, and
/// merges components sharing a radical by intersection. Positions with zero
/// ideal contribute one shared ⟨0⟩-prime component; positions containing the
/// basis vector contribute nothing.
pub fn monomial_primary_decomposition(n: &Submodule) -> Result<Decomposition> {
    let module = n.module().clone();
    let ring = module.ring().clone();
    if n.is_full() {
        return Err(Error::ImproperSubmodule);
    }
    let mut position_gens: Vec<Vec<Monomial>> = vec![Vec::new(); module.rank()];
    for v in n.reduced_basis() {
        if !v.is_single_term() {
            return Err(Error::NonMonomial(format!("generator {v}")));
        }
        let t = v.leading_term().unwrap();
        position_gens[t.position].push(t.monomial);
    }

    // Per position: None marks the zero ideal; the unit ideal keeps an empty
    // factor list (it constrains nothing).
    let mut factors: Vec<Vec<Vec<Monomial>>> = Vec::new();
    let mut zero_positions: Vec<usize> = Vec::new();
    for (i, gens) in position_gens.iter().enumerate() {
        if gens.is_empty() {
            zero_positions.push(i);
            factors.push(Vec::new());
            continue;
        }
        let gens = mono::minimalize(&ring, gens.clone());
        if gens.iter().any(Monomial::is_one) {
            factors.push(Vec::new());
            continue;
        }
        factors.push(irreducible_monomial_components(&ring, gens));
    }

    let mut radicals: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for position in &factors {
        for f in position {
            radicals.insert(irreducible_radical(f));
        }
    }
    let mut ordered: Vec<BTreeSet<usize>> = radicals.into_iter().collect();
    ordered.sort_by_key(|r| (r.len(), r.iter().copied().collect::<Vec<_>>()));

    let mut components = Vec::new();
    for rad in &ordered {
        let mut gens: Vec<ModuleVector> = Vec::new();
        for (i, position) in factors.iter().enumerate() {
            // Zero positions are constrained only by the ⟨0⟩-prime component.
            if zero_positions.contains(&i) {
                gens.push(ModuleVector::basis(&module, i));
                continue;
            }
            let mine: Vec<&Vec<Monomial>> =
                position.iter().filter(|f| &irreducible_radical(f) == rad).collect();
            if mine.is_empty() {
                gens.push(ModuleVector::basis(&module, i));
            } else {
                let mut acc = mine[0].clone();
                for f in &mine[1..] {
                    acc = mono::intersect(&ring, &acc, f);
                }
                for m in acc {
                    gens.push(ModuleVector::basis(&module, i).scale_term(
                        &num_rational::BigRational::from_integer(1.into()),
                        &m,
                    ));
                }
            }
        }
        let vars: Vec<usize> = rad.iter().copied().collect();
        components.push((Submodule::new(&module, gens), monomial_prime(&ring, &vars)));
    }

    if !zero_positions.is_empty() {
        let gens: Vec<ModuleVector> = (0..module.rank())
            .filter(|i| !zero_positions.contains(i))
            .map(|i| ModuleVector::basis(&module, i))
            .collect();
        components.push((Submodule::new(&module, gens), Ideal::zero(&ring)));
    }

    let components = components
        .into_iter()
        .enumerate()
        .map(|(i, (submodule, prime))| {
            PrimaryComponent::new(submodule, prime, format!("Q{}", i + 1))
        })
        .collect();
    Ok(Decomposition::new(n.clone(), components))
}

/// Minimal primes of a monomial ideal, as minimal covers of the generators'
/// variable supports; sorted by size then variable order. The unit ideal has
/// none; the zero ideal has exactly ⟨0⟩.
pub fn minimal_primes_monomial(i: &Ideal) -> Result<Vec<Ideal>> {
    let ring = i.ring().clone();
    let gens = i
        .monomial_generators()
        .ok_or_else(|| Error::NonMonomial(format!("ideal with basis {}", i.canonical_key())))?;
    if i.is_zero() {
        return Ok(vec![Ideal::zero(&ring)]);
    }
    if gens.iter().any(Monomial::is_one) {
        return Ok(Vec::new());
    }

    let supports: Vec<Vec<usize>> = gens.iter().map(|m| m.support()).collect();
    let used: Vec<usize> = {
        let set: BTreeSet<usize> = supports.iter().flatten().copied().collect();
        set.into_iter().collect()
    };
    let mut covers: Vec<Vec<usize>> = Vec::new();
    for mask in 0u32..(1 << used.len()) {
        let subset: Vec<usize> =
            used.iter().enumerate().filter(|(b, _)| mask >> b & 1 == 1).map(|(_, &v)| v).collect();
        if supports.iter().all(|s| s.iter().any(|v| subset.contains(v))) {
            covers.push(subset);
        }
    }
    let all = covers.clone();
    covers.retain(|c| !all.iter().any(|d| d.len() < c.len() && d.iter().all(|v| c.contains(v))));
    covers.sort_by_key(|c| (c.len(), c.clone()));
    covers.dedup();
    Ok(covers.into_iter().map(|c| monomial_prime(&ring, &c)).collect())
}

/// Indices of components whose prime is minimal among the certificate's
/// primes (the isolated components).
pub fn isolated_component_indices(d: &Decomposition) -> Vec<usize> {
    let comps = d.components();
    (0..comps.len())
        .filter(|&i| {
            !comps.iter().enumerate().any(|(j, c)| {
                j != i && c.prime.is_subset_of(&comps[i].prime) && c.prime != comps[i].prime
            })
        })
        .collect()
}

/// One quasi-primary group: the components whose primes avoid the group's
/// separator, intersected in `decomposition`.
#[derive(Debug, Clone)]
pub struct QuasiPrimaryGroup {
    /// The isolated prime the group is built around.
    pub prime: Ideal,
    /// Separator f ∈ (∩ other isolated primes) \ prime.
    pub separator: Polynomial,
    /// Indices into the original certificate of the components kept here.
    pub component_indices: Vec<usize>,
    /// N : ⟨f⟩^∞ with its induced certificate.
    pub decomposition: Decomposition,
}

/// Result of splitting N into quasi-primary parts: N = (∩ groups) ∩ remainder.
#[derive(Debug, Clone)]
pub struct QuasiPrimarySplit {
    pub groups: Vec<QuasiPrimaryGroup>,
    /// N + ⟨all separators⟩·M.
    pub remainder: Submodule,
}

/// Splits a certified decomposition into quasi-primary groups, one per
/// isolated prime, via stable quotients by separators.
pub fn quasi_primary_split(
    d: &Decomposition,
    config: &VerificationConfig,
) -> Result<QuasiPrimarySplit> {
    d.require_valid(config)?;
    let comps = d.components();
    let ring = d.module().ring().clone();
    let isolated = isolated_component_indices(d);

    let mut groups = Vec::new();
    let mut separators = Vec::new();
    for &i in &isolated {
        let other_primes: Vec<&Ideal> =
            isolated.iter().filter(|&&j| j != i).map(|&j| &comps[j].prime).collect();
        let meet = other_primes.iter().fold(Ideal::unit(&ring), |acc, p| {
            crate::algebra::intersect_ideals(&acc, p)
        });
        let separator = element_avoiding(&meet, &comps[i].prime)
            .ok_or(Error::SeparatorNotFound { component: i + 1 })?;
        let (quotient, _) = saturate(d.target(), &Ideal::new(&ring, vec![separator.clone()]))?;
        let kept: Vec<usize> = (0..comps.len())
            .filter(|&l| !comps[l].prime.contains_poly(&separator))
            .collect();
        let group_components = kept
            .iter()
            .map(|&l| comps[l].clone())
            .collect::<Vec<_>>();
        groups.push(QuasiPrimaryGroup {
            prime: comps[i].prime.clone(),
            separator: separator.clone(),
            component_indices: kept,
            decomposition: Decomposition::new(quotient, group_components),
        });
        separators.push(separator);
    }

    let j = Ideal::new(&ring, separators);
    let remainder = sum(d.target(), &ideal_module_product(&j, &Submodule::full(d.module())));
    Ok(QuasiPrimarySplit { groups, remainder })
}

/// cl_p of a certified decomposition: which components were kept, and their
/// intersection. An empty kept-set yields the full module.
#[derive(Debug, Clone)]
pub struct ClosureResult {
    pub submodule: Submodule,
    pub kept: Vec<usize>,
}

/// p-closure cl_p(N) = ∩ of the components with p_i ⊆ p.
///
/// Requires (N : M) ⊆ p; when no component prime is contained in p the
/// intersection is empty and the result is the full module.
pub fn closure(d: &Decomposition, p: &Ideal, config: &VerificationConfig) -> Result<ClosureResult> {
    d.require_valid(config)?;
    let ann = crate::algebra::annihilator(d.target());
    if !ann.is_subset_of(p) {
        return Err(Error::Precondition(
            "(N : M) is not contained in the closure prime".to_string(),
        ));
    }
    let kept: Vec<usize> = (0..d.components().len())
        .filter(|&i| d.components()[i].prime.is_subset_of(p))
        .collect();
    let parts: Vec<&Submodule> = kept.iter().map(|&i| &d.components()[i].submodule).collect();
    let submodule = intersect_many(d.module(), &parts);
    Ok(ClosureResult { submodule, kept })
}

/// Source of decompositions during envelope iteration: stored fixtures keyed
/// by the target's canonical reduced basis, with automatic monomial
/// decomposition as an optional fallback.
#[derive(Debug, Clone, Default)]
pub struct DecompositionOracle {
    fixtures: HashMap<String, Decomposition>,
    automatic_monomial: bool,
}

impl DecompositionOracle {
    pub fn new(automatic_monomial: bool) -> DecompositionOracle {
        DecompositionOracle { fixtures: HashMap::new(), automatic_monomial }
    }

    /// Registers a fixture after verifying it.
    pub fn add_fixture(
        &mut self,
        d: Decomposition,
        config: &VerificationConfig,
    ) -> Result<()> {
        d.require_valid(config)?;
        self.fixtures.insert(d.target().canonical_key(), d);
        Ok(())
    }

    pub fn fixture_count(&self) -> usize {
        self.fixtures.len()
    }

    /// Finds a decomposition for `n`: fixtures first, then automatic monomial
    /// decomposition when enabled.
    pub fn decompose(&self, n: &Submodule) -> Result<Decomposition> {
        if n.is_full() {
            return Err(Error::ImproperSubmodule);
        }
        let key = n.canonical_key();
        if let Some(d) = self.fixtures.get(&key) {
            return Ok(d.clone());
        }
        if self.automatic_monomial && n.is_monomial() {
            return monomial_primary_decomposition(n);
        }
        Err(Error::OracleMiss { canonical: key })
    }
}

/// Intersection of the component submodules whose indices are given.
pub fn intersect_components(d: &Decomposition, indices: &[usize]) -> Submodule {
    let parts: Vec<&Submodule> =
        indices.iter().map(|&i| &d.components()[i].submodule).collect();
    intersect_many(d.module(), &parts)
}

/// Intersection of the component primes whose indices are given (unit ideal
/// for the empty set).
pub fn intersect_primes(d: &Decomposition, indices: &[usize]) -> Ideal {
    let ring = d.module().ring().clone();
    indices.iter().fold(Ideal::unit(&ring), |acc, &i| {
        crate::algebra::intersect_ideals(&acc, &d.components()[i].prime)
    })
}

/// Convenience: N ∩ L for borrowed submodules, re-exported for callers that
/// already hold a decomposition.
pub fn meet(a: &Submodule, b: &Submodule) -> Submodule {
    intersect(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::{parse_polynomial, parse_vector};

    fn ring2() -> Arc<PolyRing> {
        PolyRing::new(&["x", "y"])
    }

    fn ideal(ring: &Arc<PolyRing>, gens: &[&str]) -> Ideal {
        Ideal::new(ring, gens.iter().map(|s| parse_polynomial(s, ring).unwrap()).collect())
    }

    fn submodule(m: &Arc<FreeModule>, gens: &[&str]) -> Submodule {
        Submodule::new(m, gens.iter().map(|s| parse_vector(s, m).unwrap()).collect())
    }

    #[test]
    fn embedded_component_example_decomposes() {
        let r = ring2();
        let m = FreeModule::new(&r, 1);
        let n = submodule(&m, &["x^2*e1", "x*y*e1"]);
        let d = monomial_primary_decomposition(&n).unwrap();
        assert_eq!(d.components().len(), 2);
        assert_eq!(d.components()[0].submodule.canonical_key(), "x*e1");
        assert_eq!(d.components()[0].prime.canonical_key(), "x");
        assert_eq!(d.components()[1].submodule.canonical_key(), "x^2*e1\ny*e1");
        assert_eq!(d.components()[1].prime.canonical_key(), "x\ny");
        assert!(d.verify(&VerificationConfig::default()).is_valid());
    }

    #[test]
    fn zero_position_gets_zero_prime_component() {
        let r = ring2();
        let m = FreeModule::new(&r, 2);
        let n = submodule(&m, &["x*e1"]);
        let d = monomial_primary_decomposition(&n).unwrap();
        let keys: Vec<(String, String)> = d
            .components()
            .iter()
            .map(|c| (c.submodule.canonical_key(), c.prime.canonical_key()))
            .collect();
        assert_eq!(
            keys,
            vec![
                ("x*e1\ne2".to_string(), "x".to_string()),
                ("e1".to_string(), "0".to_string()),
            ]
        );
        assert!(d.verify(&VerificationConfig::default()).is_valid());
    }

    #[test]
    fn zero_submodule_decomposes_to_zero_prime() {
        let m = FreeModule::new(&ring2(), 2);
        let d = monomial_primary_decomposition(&Submodule::zero(&m)).unwrap();
        assert_eq!(d.components().len(), 1);
        assert!(d.components()[0].submodule.is_zero());
        assert!(d.components()[0].prime.is_zero());
        assert!(d.verify(&VerificationConfig::default()).is_valid());
    }

    #[test]
    fn verification_rejects_dropped_component_and_wrong_prime() {
        let r = ring2();
        let m = FreeModule::new(&r, 1);
        let n = submodule(&m, &["x^2*e1", "x*y*e1"]);
        let d = monomial_primary_decomposition(&n).unwrap();
        let cfg = VerificationConfig::default();

        let dropped =
            Decomposition::new(n.clone(), vec![d.components()[0].clone()]);
        let report = dropped.verify(&cfg);
        assert!(!report.is_valid());
        assert!(report
            .entries
            .iter()
            .any(|(name, ok)| name.starts_with("(a)") && !ok));

        let mut wrong = d.components().to_vec();
        wrong[0].prime = ideal(&r, &["y"]);
        let report = Decomposition::new(n, wrong).verify(&cfg);
        assert!(!report.is_valid());
    }

    #[test]
    fn minimal_primes_are_minimal_covers() {
        let r = PolyRing::new(&["x", "y", "z"]);
        let i = ideal(&r, &["x*y", "x*z"]);
        let primes: Vec<String> =
            minimal_primes_monomial(&i).unwrap().iter().map(Ideal::canonical_key).collect();
        assert_eq!(primes, vec!["x", "y\nz"]);
        assert_eq!(
            minimal_primes_monomial(&ideal(&r, &["x^2"])).unwrap()[0].canonical_key(),
            "x"
        );
        assert!(minimal_primes_monomial(&Ideal::unit(&r)).unwrap().is_empty());
        let zero = minimal_primes_monomial(&Ideal::zero(&r)).unwrap();
        assert_eq!(zero.len(), 1);
        assert!(zero[0].is_zero());
    }

    #[test]
    fn closure_keeps_components_under_the_prime() {
        let r = ring2();
        let m = FreeModule::new(&r, 1);
        let n = submodule(&m, &["x^2*e1", "x*y*e1"]);
        let d = monomial_primary_decomposition(&n).unwrap();
        let cfg = VerificationConfig::default();
        let res = closure(&d, &ideal(&r, &["x"]), &cfg).unwrap();
        assert_eq!(res.kept, vec![0]);
        assert_eq!(res.submodule.canonical_key(), "x*e1");

        let res = closure(&d, &ideal(&r, &["x", "y"]), &cfg).unwrap();
        assert_eq!(res.kept, vec![0, 1]);
        assert_eq!(res.submodule, *d.target());
    }

    #[test]
    fn quasi_primary_split_reassembles() {
        let r = ring2();
        let m = FreeModule::new(&r, 1);
        // ⟨x⟩ ∩ ⟨y²⟩: two isolated primes.
        let n = submodule(&m, &["x*y^2*e1"]);
        let d = monomial_primary_decomposition(&n).unwrap();
        let split = quasi_primary_split(&d, &VerificationConfig::default()).unwrap();
        assert_eq!(split.groups.len(), 2);
        let mut acc = split.remainder.clone();
        for g in &split.groups {
            acc = intersect(&acc, g.decomposition.target());
            assert_eq!(g.component_indices.len(), 1);
        }
        assert_eq!(acc, n);
    }

    #[test]
    fn oracle_prefers_fixtures_and_reports_misses() {
        let r = ring2();
        let m = FreeModule::new(&r, 1);
        let n = submodule(&m, &["x^2*e1", "x*y*e1"]);
        let cfg = VerificationConfig::default();

        let mut oracle = DecompositionOracle::new(true);
        assert!(oracle.decompose(&n).is_ok(), "monomial fallback");

        // A non-monomial module misses.
        let p = submodule(&m, &["x^2*e1 + y*e1"]);
        let err = oracle.decompose(&p).unwrap_err();
        assert!(matches!(err, Error::OracleMiss { .. }));

        // With a fixture it hits: ⟨x²+y⟩ is prime (a parabola).
        let d = Decomposition::new(
            p.clone(),
            vec![PrimaryComponent::new(p.clone(), ideal(&r, &["x^2 + y"]), "Q1")],
        );
        oracle.add_fixture(d, &cfg).unwrap();
        assert!(oracle.decompose(&p).is_ok());
    }

    #[test]
    fn isolated_indices_exclude_embedded_primes() {
        let r = ring2();
        let m = FreeModule::new(&r, 1);
        let n = submodule(&m, &["x^2*e1", "x*y*e1"]);
        let d = monomial_primary_decomposition(&n).unwrap();
        assert_eq!(isolated_component_indices(&d), vec![0]);
    }
}

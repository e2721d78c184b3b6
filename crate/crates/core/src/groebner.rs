//! Buchberger's algorithm for submodules of free modules, with reduced
//! Groebner bases as the canonical representation.
//!
//! Pairs are processed in normal order (smallest lcm of leading terms first);
//! S-vectors of generators with different leading positions vanish and are
//! never formed. Every S-vector is rescaled to integer-primitive form before
//! reduction; the finished basis is minimalized, tail-reduced, made monic and
//! sorted descending by leading term, which makes it unique for the order.
//! Two submodules are equal exactly when their reduced bases are identical.

use std::cmp::Ordering;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::module::{assert_same_module, FreeModule, ModuleTerm, ModuleVector};
use crate::ring::{Monomial, PolyRing, Polynomial};

/// Full division: rewrites `v` modulo `basis` until no term of the remainder
/// is divisible by any basis leading term.
pub fn normal_form_against(v: &ModuleVector, basis: &[ModuleVector]) -> ModuleVector {
    let module = v.module().clone();
    let leads: Vec<ModuleTerm> = basis
        .iter()
        .map(|g| g.leading_term().expect("basis vectors must be nonzero"))
        .collect();
    let mut work = v.clone();
    let mut rem = ModuleVector::zero(&module);
    'outer: while let Some(t) = work.leading_term() {
        for (g, gl) in basis.iter().zip(&leads) {
            if gl.position == t.position && gl.monomial.divides(&t.monomial) {
                let m = t.monomial.div(&gl.monomial).expect("divisibility checked");
                let c = &t.coeff / &gl.coeff;
                work = work.sub(&g.scale_term(&c, &m));
                continue 'outer;
            }
        }
        let head = ModuleVector::from_term(&module, t);
        rem = rem.add(&head);
        work = work.sub(&head);
    }
    rem
}

fn s_vector(f: &ModuleVector, g: &ModuleVector) -> ModuleVector {
    let fl = f.leading_term().expect("nonzero");
    let gl = g.leading_term().expect("nonzero");
    debug_assert_eq!(fl.position, gl.position, "S-vector needs matching positions");
    let lcm = fl.monomial.lcm(&gl.monomial);
    let mf = lcm.div(&fl.monomial).unwrap();
    let mg = lcm.div(&gl.monomial).unwrap();
    let one = num_rational::BigRational::from_integer(1.into());
    f.scale_term(&(&one / &fl.coeff), &mf)
        .sub(&g.scale_term(&(&one / &gl.coeff), &mg))
}

/// Computes the reduced Groebner basis of the submodule generated by `gens`.
pub fn buchberger(module: &Arc<FreeModule>, gens: &[ModuleVector]) -> Vec<ModuleVector> {
    let mut basis: Vec<ModuleVector> = Vec::new();
    for g in gens {
        assert_same_module(g.module(), module);
        if !g.is_zero() {
            basis.push(g.make_primitive());
        }
    }

    // (i, j, lcm term) with i < j and equal leading positions.
    let mut pairs: Vec<(usize, usize, ModuleTerm)> = Vec::new();
    let add_pairs = |pairs: &mut Vec<(usize, usize, ModuleTerm)>,
                     basis: &[ModuleVector],
                     j: usize| {
        let jl = basis[j].leading_term().unwrap();
        for (i, f) in basis.iter().enumerate().take(j) {
            let il = f.leading_term().unwrap();
            if il.position == jl.position {
                let lcm = il.monomial.lcm(&jl.monomial);
                pairs.push((
                    i,
                    j,
                    ModuleTerm {
                        monomial: lcm,
                        coeff: num_rational::BigRational::from_integer(1.into()),
                        position: jl.position,
                    },
                ));
            }
        }
    };
    for j in 0..basis.len() {
        add_pairs(&mut pairs, &basis, j);
    }

    while !pairs.is_empty() {
        // Normal selection: smallest lcm first, index pair breaking ties.
        let mut best = 0;
        for k in 1..pairs.len() {
            let ord = module
                .cmp_terms(&pairs[k].2, &pairs[best].2)
                .then_with(|| (pairs[k].0, pairs[k].1).cmp(&(pairs[best].0, pairs[best].1)));
            if ord == Ordering::Less {
                best = k;
            }
        }
        let (i, j, _) = pairs.swap_remove(best);
        let s = s_vector(&basis[i], &basis[j]).make_primitive();
        let h = normal_form_against(&s, &basis);
        if !h.is_zero() {
            let h = h.make_primitive();
            basis.push(h);
            add_pairs(&mut pairs, &basis, basis.len() - 1);
        }
    }

    reduce_basis(module, basis)
}

/// Minimalizes, tail-reduces, normalizes to monic and sorts a Groebner basis.
fn reduce_basis(module: &Arc<FreeModule>, basis: Vec<ModuleVector>) -> Vec<ModuleVector> {
    // Minimal: drop any element whose leading term is divisible by another
    // kept element's leading term. Scanning smallest leads first keeps the
    // minimal generators and discards duplicates deterministically.
    let mut order: Vec<usize> = (0..basis.len()).collect();
    order.sort_by(|&a, &b| {
        module.cmp_terms(
            &basis[a].leading_term().unwrap(),
            &basis[b].leading_term().unwrap(),
        )
        .then(a.cmp(&b))
    });
    let mut kept: Vec<ModuleVector> = Vec::new();
    for idx in order {
        let lt = basis[idx].leading_term().unwrap();
        let redundant = kept.iter().any(|k| {
            let kl = k.leading_term().unwrap();
            kl.position == lt.position && kl.monomial.divides(&lt.monomial)
        });
        if !redundant {
            kept.push(basis[idx].clone());
        }
    }

    // Tail reduction: each element fully reduced against the others.
    let snapshot = kept.clone();
    let mut reduced: Vec<ModuleVector> = Vec::new();
    for (i, f) in snapshot.iter().enumerate() {
        let others: Vec<ModuleVector> = snapshot
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, g)| g.clone())
            .collect();
        let nf = normal_form_against(f, &others);
        debug_assert!(!nf.is_zero(), "minimal basis element reduced to zero");
        reduced.push(nf.make_monic());
    }

    reduced.sort_by(|a, b| {
        module.cmp_terms(&b.leading_term().unwrap(), &a.leading_term().unwrap())
    });
    reduced
}

/// Finitely generated submodule of a free module.
///
/// Keeps the original generators and computes its reduced Groebner basis at
/// most once, on first use; the cached basis is shared across clones.
#[derive(Debug, Clone)]
pub struct Submodule {
    module: Arc<FreeModule>,
    gens: Vec<ModuleVector>,
    basis: OnceLock<Arc<Vec<ModuleVector>>>,
}

impl Submodule {
    /// Builds the submodule generated by `gens`; zero generators are dropped.
    pub fn new(module: &Arc<FreeModule>, gens: Vec<ModuleVector>) -> Submodule {
        for g in &gens {
            assert_same_module(g.module(), module);
        }
        Submodule {
            module: module.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
            basis: OnceLock::new(),
        }
    }

    pub fn zero(module: &Arc<FreeModule>) -> Submodule {
        Self::new(module, Vec::new())
    }

    /// The full module R^n as a submodule of itself.
    pub fn full(module: &Arc<FreeModule>) -> Submodule {
        let gens = (0..module.rank()).map(|i| ModuleVector::basis(module, i)).collect();
        Self::new(module, gens)
    }

    pub fn module(&self) -> &Arc<FreeModule> {
        &self.module
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.module.ring()
    }

    pub fn generators(&self) -> &[ModuleVector] {
        &self.gens
    }

    /// Reduced Groebner basis; computed once and cached.
    pub fn reduced_basis(&self) -> &[ModuleVector] {
        self.basis
            .get_or_init(|| Arc::new(buchberger(&self.module, &self.gens)))
            .as_slice()
    }

    /// Canonical remainder of `v` modulo this submodule.
    pub fn normal_form(&self, v: &ModuleVector) -> ModuleVector {
        assert_same_module(v.module(), &self.module);
        normal_form_against(v, self.reduced_basis())
    }

    pub fn contains(&self, v: &ModuleVector) -> bool {
        self.normal_form(v).is_zero()
    }

    pub fn is_subset_of(&self, other: &Submodule) -> bool {
        assert_same_module(&self.module, &other.module);
        self.reduced_basis().iter().all(|g| other.contains(g))
    }

    pub fn is_zero(&self) -> bool {
        self.reduced_basis().is_empty()
    }

    /// True when the submodule is all of R^n.
    pub fn is_full(&self) -> bool {
        (0..self.module.rank()).all(|i| self.contains(&ModuleVector::basis(&self.module, i)))
    }

    /// True when the reduced basis consists of single terms.
    pub fn is_monomial(&self) -> bool {
        self.reduced_basis().iter().all(ModuleVector::is_single_term)
    }

    /// Canonical printed form: one reduced-basis element per line, leading
    /// terms descending. The zero submodule prints as `0`.
    pub fn canonical_key(&self) -> String {
        let basis = self.reduced_basis();
        if basis.is_empty() {
            return "0".to_string();
        }
        basis.iter().map(|g| g.to_string()).collect::<Vec<_>>().join("\n")
    }
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.module == other.module && self.reduced_basis() == other.reduced_basis()
    }
}

impl Eq for Submodule {}

impl fmt::Display for Submodule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_key())
    }
}

/// Ideal of R, represented as a rank-1 submodule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Ideal(Submodule);

impl Ideal {
    pub fn new(ring: &Arc<PolyRing>, gens: Vec<Polynomial>) -> Ideal {
        let m = FreeModule::new(ring, 1);
        let vecs = gens
            .into_iter()
            .map(|p| ModuleVector::from_components(&m, vec![p]))
            .collect();
        Ideal(Submodule::new(&m, vecs))
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, Vec::new())
    }

    pub fn unit(ring: &Arc<PolyRing>) -> Ideal {
        Ideal::new(ring, vec![Polynomial::one(ring)])
    }

    /// Wraps a rank-1 submodule; panics on higher rank.
    pub fn from_submodule(s: Submodule) -> Ideal {
        assert_eq!(s.module().rank(), 1, "ideals are rank-1 submodules");
        Ideal(s)
    }

    pub fn as_submodule(&self) -> &Submodule {
        &self.0
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        self.0.ring()
    }

    pub fn generators(&self) -> Vec<Polynomial> {
        self.0.generators().iter().map(|v| v.component(0).clone()).collect()
    }

    /// Reduced Groebner basis as plain polynomials.
    pub fn reduced_polys(&self) -> Vec<Polynomial> {
        self.0.reduced_basis().iter().map(|v| v.component(0).clone()).collect()
    }

    pub fn contains_poly(&self, f: &Polynomial) -> bool {
        let m = self.0.module().clone();
        self.0.contains(&ModuleVector::from_components(&m, vec![f.clone()]))
    }

    pub fn is_subset_of(&self, other: &Ideal) -> bool {
        self.0.is_subset_of(&other.0)
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_unit(&self) -> bool {
        self.0.contains(&ModuleVector::basis(self.0.module(), 0))
    }

    pub fn is_monomial(&self) -> bool {
        self.0.is_monomial()
    }

    pub fn canonical_key(&self) -> String {
        let polys = self.reduced_polys();
        if polys.is_empty() {
            return "0".to_string();
        }
        polys.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("\n")
    }

    /// The monomials of a monomial ideal's reduced basis.
    pub fn monomial_generators(&self) -> Option<Vec<Monomial>> {
        let mut out = Vec::new();
        for p in self.reduced_polys() {
            if p.num_terms() != 1 {
                return None;
            }
            let (m, _) = p.leading().unwrap();
            out.push(m.clone());
        }
        Some(out)
    }
}

impl fmt::Display for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.canonical_key())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_vector;

    fn module_r2() -> Arc<FreeModule> {
        FreeModule::new(&PolyRing::new(&["x", "y"]), 2)
    }

    fn vec2(m: &Arc<FreeModule>, s: &str) -> ModuleVector {
        parse_vector(s, m).unwrap()
    }

    #[test]
    fn opposing_generators_reduce_to_unit_monomials() {
        let m = module_r2();
        let sub = Submodule::new(
            &m,
            vec![vec2(&m, "x*e1 + y*e1"), vec2(&m, "x*e1 - y*e1")],
        );
        let basis = sub.reduced_basis();
        assert_eq!(basis.len(), 2);
        assert_eq!(basis[0].to_string(), "x*e1");
        assert_eq!(basis[1].to_string(), "y*e1");
    }

    #[test]
    fn monomial_basis_is_already_reduced() {
        let r = PolyRing::new(&["x", "y"]);
        let i = Ideal::new(
            &r,
            vec![
                crate::parse::parse_polynomial("x^2", &r).unwrap(),
                crate::parse::parse_polynomial("x*y", &r).unwrap(),
                crate::parse::parse_polynomial("y^2", &r).unwrap(),
            ],
        );
        let polys = i.reduced_polys();
        let strs: Vec<String> = polys.iter().map(|p| p.to_string()).collect();
        assert_eq!(strs, vec!["x^2", "x*y", "y^2"]);
    }

    #[test]
    fn normal_form_is_idempotent_and_detects_membership() {
        let m = module_r2();
        let sub = Submodule::new(&m, vec![vec2(&m, "x*e1"), vec2(&m, "y^2*e2")]);
        let v = vec2(&m, "x^2*e1 + y^3*e2 + e1");
        let nf = sub.normal_form(&v);
        assert_eq!(nf.to_string(), "e1");
        assert_eq!(sub.normal_form(&nf), nf);
        assert!(sub.contains(&vec2(&m, "x*y*e1 + y^2*e2")));
        assert!(!sub.contains(&vec2(&m, "y*e2")));
    }

    #[test]
    fn equality_ignores_generator_presentation() {
        let r = PolyRing::new(&["x", "y"]);
        let a = Ideal::new(
            &r,
            vec![
                crate::parse::parse_polynomial("x", &r).unwrap(),
                crate::parse::parse_polynomial("y", &r).unwrap(),
            ],
        );
        let b = Ideal::new(
            &r,
            vec![
                crate::parse::parse_polynomial("x + y", &r).unwrap(),
                crate::parse::parse_polynomial("y", &r).unwrap(),
            ],
        );
        assert_eq!(a, b);
    }

    #[test]
    fn zero_and_full_submodules() {
        let m = module_r2();
        assert!(Submodule::zero(&m).is_zero());
        let full = Submodule::full(&m);
        assert!(full.is_full());
        assert_eq!(full.canonical_key(), "e1\ne2");
        assert_eq!(Submodule::zero(&m).canonical_key(), "0");
    }
}

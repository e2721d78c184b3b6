//! Free modules R^n and their elements.
//!
//! Module terms are ordered position-over-term: a term in a lower basis
//! position beats any term in a higher one (e1 > e2 > ... > en), ties are
//! decided by the ring's monomial order. Under an elimination ring order the
//! eliminated block instead dominates the position, so that terms containing
//! block variables are larger than every block-free term regardless of
//! position; eliminating a variable from a module computation needs exactly
//! that property.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_rational::BigRational;

use crate::ring::{assert_same_ring, Monomial, MonomialOrder, PolyRing, Polynomial};

/// Ambient free module: a ring together with a rank.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FreeModule {
    ring: Arc<PolyRing>,
    rank: usize,
}

impl FreeModule {
    pub fn new(ring: &Arc<PolyRing>, rank: usize) -> Arc<FreeModule> {
        assert!(rank >= 1, "free module rank must be at least 1");
        Arc::new(FreeModule { ring: ring.clone(), rank })
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Compares module terms; positions are 0-based.
    pub fn cmp_terms(&self, a: &ModuleTerm, b: &ModuleTerm) -> Ordering {
        match self.ring.order() {
            MonomialOrder::GrevLex => b
                .position
                .cmp(&a.position)
                .then_with(|| self.ring.cmp_monomials(&a.monomial, &b.monomial)),
            MonomialOrder::ElimFirst(k) => {
                let block = |m: &Monomial| -> Vec<u32> { m.exponents()[..k].to_vec() };
                let ba = block(&a.monomial);
                let bb = block(&b.monomial);
                grevlex_slices(&ba, &bb)
                    .then_with(|| b.position.cmp(&a.position))
                    .then_with(|| self.ring.cmp_monomials(&a.monomial, &b.monomial))
            }
        }
    }
}

fn grevlex_slices(a: &[u32], b: &[u32]) -> Ordering {
    let da: u64 = a.iter().map(|&e| e as u64).sum();
    let db: u64 = b.iter().map(|&e| e as u64).sum();
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

pub(crate) fn assert_same_module(a: &Arc<FreeModule>, b: &Arc<FreeModule>) {
    assert!(
        Arc::ptr_eq(a, b) || a == b,
        "free module mismatch: rank {} over {:?} vs rank {} over {:?}",
        a.rank(),
        a.ring().var_names(),
        b.rank(),
        b.ring().var_names()
    );
}

/// Single term `coeff * monomial * e_(position+1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleTerm {
    pub monomial: Monomial,
    pub coeff: BigRational,
    pub position: usize,
}

/// Element of R^n, stored componentwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleVector {
    module: Arc<FreeModule>,
    comps: Vec<Polynomial>,
}

impl ModuleVector {
    pub fn zero(module: &Arc<FreeModule>) -> ModuleVector {
        ModuleVector {
            module: module.clone(),
            comps: (0..module.rank()).map(|_| Polynomial::zero(module.ring())).collect(),
        }
    }

    pub fn basis(module: &Arc<FreeModule>, position: usize) -> ModuleVector {
        assert!(position < module.rank(), "basis index out of range");
        let mut v = Self::zero(module);
        v.comps[position] = Polynomial::one(module.ring());
        v
    }

    pub fn from_components(module: &Arc<FreeModule>, comps: Vec<Polynomial>) -> ModuleVector {
        assert_eq!(comps.len(), module.rank(), "component count must equal rank");
        for c in &comps {
            assert_same_ring(c.ring(), module.ring());
        }
        ModuleVector { module: module.clone(), comps }
    }

    pub fn from_term(module: &Arc<FreeModule>, t: ModuleTerm) -> ModuleVector {
        let mut v = Self::zero(module);
        v.comps[t.position] = Polynomial::monomial_term(module.ring(), t.monomial, t.coeff);
        v
    }

    pub fn module(&self) -> &Arc<FreeModule> {
        &self.module
    }

    pub fn component(&self, i: usize) -> &Polynomial {
        &self.comps[i]
    }

    pub fn components(&self) -> &[Polynomial] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(Polynomial::is_zero)
    }

    pub fn num_terms(&self) -> usize {
        self.comps.iter().map(Polynomial::num_terms).sum()
    }

    pub fn add(&self, other: &ModuleVector) -> ModuleVector {
        assert_same_module(&self.module, &other.module);
        ModuleVector {
            module: self.module.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn sub(&self, other: &ModuleVector) -> ModuleVector {
        assert_same_module(&self.module, &other.module);
        ModuleVector {
            module: self.module.clone(),
            comps: self.comps.iter().zip(&other.comps).map(|(a, b)| a.sub(b)).collect(),
        }
    }

    pub fn neg(&self) -> ModuleVector {
        ModuleVector {
            module: self.module.clone(),
            comps: self.comps.iter().map(Polynomial::neg).collect(),
        }
    }

    pub fn scale(&self, f: &Polynomial) -> ModuleVector {
        assert_same_ring(f.ring(), self.module.ring());
        ModuleVector {
            module: self.module.clone(),
            comps: self.comps.iter().map(|c| c.mul(f)).collect(),
        }
    }

    pub fn scale_term(&self, c: &BigRational, m: &Monomial) -> ModuleVector {
        ModuleVector {
            module: self.module.clone(),
            comps: self.comps.iter().map(|p| p.mul_term(c, m)).collect(),
        }
    }

    /// Largest term under the module order, if any.
    pub fn leading_term(&self) -> Option<ModuleTerm> {
        let mut best: Option<ModuleTerm> = None;
        for (pos, comp) in self.comps.iter().enumerate() {
            if let Some((m, c)) = comp.leading() {
                let cand = ModuleTerm { monomial: m.clone(), coeff: c.clone(), position: pos };
                best = match best {
                    None => Some(cand),
                    Some(cur) => {
                        if self.module.cmp_terms(&cand, &cur) == Ordering::Greater {
                            Some(cand)
                        } else {
                            Some(cur)
                        }
                    }
                };
            }
        }
        best
    }

    /// All terms, descending in the module order.
    pub fn terms_descending(&self) -> Vec<ModuleTerm> {
        let mut out = Vec::with_capacity(self.num_terms());
        for (pos, comp) in self.comps.iter().enumerate() {
            for (m, c) in comp.terms() {
                out.push(ModuleTerm { monomial: m.clone(), coeff: c.clone(), position: pos });
            }
        }
        out.sort_by(|a, b| self.module.cmp_terms(b, a));
        out
    }

    /// Divides every coefficient so the leading coefficient becomes 1.
    pub fn make_monic(&self) -> ModuleVector {
        match self.leading_term() {
            None => self.clone(),
            Some(t) => {
                let inv = BigRational::new(
                    t.coeff.denom().clone(),
                    t.coeff.numer().clone(),
                );
                self.scale_term(&inv, &Monomial::one(self.module.ring().num_vars()))
            }
        }
    }

    /// Integer-primitive rescale with positive leading coefficient; keeps the
    /// generated submodule unchanged while bounding coefficient growth.
    pub fn make_primitive(&self) -> ModuleVector {
        let terms = self.terms_descending();
        if terms.is_empty() {
            return self.clone();
        }
        let mut pairs: Vec<(Monomial, BigRational)> =
            terms.iter().map(|t| (t.monomial.clone(), t.coeff.clone())).collect();
        crate::ring::primitive_scale(&mut pairs);
        let mut per_comp: Vec<Vec<(Monomial, BigRational)>> =
            (0..self.module.rank()).map(|_| Vec::new()).collect();
        for (t, (m, c)) in terms.iter().zip(pairs) {
            per_comp[t.position].push((m, c));
        }
        let ring = self.module.ring();
        ModuleVector {
            module: self.module.clone(),
            comps: per_comp.into_iter().map(|ts| Polynomial::from_terms(ring, ts)).collect(),
        }
    }

    /// True when the vector is a single term.
    pub fn is_single_term(&self) -> bool {
        self.num_terms() == 1
    }

    /// Componentwise exact division by a polynomial; `None` if any component
    /// is not divisible.
    pub fn div_poly_exact(&self, f: &Polynomial) -> Option<ModuleVector> {
        let mut comps = Vec::with_capacity(self.comps.len());
        for c in &self.comps {
            if c.is_zero() {
                comps.push(c.clone());
            } else {
                comps.push(c.div_exact(f)?);
            }
        }
        Some(ModuleVector { module: self.module.clone(), comps })
    }

    /// Lifts into the same module over a ring extended by one leading variable.
    pub(crate) fn lift_front(&self, ext: &Arc<FreeModule>) -> ModuleVector {
        ModuleVector {
            module: ext.clone(),
            comps: self.comps.iter().map(|c| c.lift_front(ext.ring())).collect(),
        }
    }

    /// Drops the front variable; `None` if any term uses it.
    pub(crate) fn lower_front(&self, base: &Arc<FreeModule>) -> Option<ModuleVector> {
        let mut comps = Vec::with_capacity(self.comps.len());
        for c in &self.comps {
            comps.push(c.lower_front(base.ring())?);
        }
        Some(ModuleVector { module: base.clone(), comps })
    }

    pub(crate) fn uses_front_var(&self) -> bool {
        self.comps.iter().any(Polynomial::uses_front_var)
    }
}

impl std::ops::Add for &ModuleVector {
    type Output = ModuleVector;
    fn add(self, rhs: &ModuleVector) -> ModuleVector {
        ModuleVector::add(self, rhs)
    }
}

impl std::ops::Sub for &ModuleVector {
    type Output = ModuleVector;
    fn sub(self, rhs: &ModuleVector) -> ModuleVector {
        ModuleVector::sub(self, rhs)
    }
}

impl fmt::Display for ModuleVector {
    /// Canonical form: terms descending in the module order, `e` indices
    /// 1-based, coefficient magnitudes in lowest terms.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms = self.terms_descending();
        if terms.is_empty() {
            return f.write_str("0");
        }
        let ring = self.module.ring();
        let mut out = String::new();
        for (i, t) in terms.iter().enumerate() {
            let basis = format!("e{}", t.position + 1);
            let body = match crate::ring::monomial_factor_string(ring, &t.monomial) {
                None => basis,
                Some(m) => format!("{m}*{basis}"),
            };
            crate::ring::push_term(&mut out, i == 0, &t.coeff, Some(body));
        }
        f.write_str(&out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn setup() -> (Arc<PolyRing>, Arc<FreeModule>) {
        let r = PolyRing::new(&["x", "y"]);
        let m = FreeModule::new(&r, 2);
        (r, m)
    }

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    #[test]
    fn position_dominates_term_order() {
        let (_, m) = setup();
        let big_e2 = ModuleTerm { monomial: Monomial::var_pow(2, 0, 5), coeff: q(1), position: 1 };
        let small_e1 = ModuleTerm { monomial: Monomial::one(2), coeff: q(1), position: 0 };
        assert_eq!(m.cmp_terms(&small_e1, &big_e2), Ordering::Greater);
    }

    #[test]
    fn leading_term_picks_lowest_position() {
        let (r, m) = setup();
        let x = Polynomial::variable(&r, 0);
        let v = ModuleVector::from_components(&m, vec![x.clone(), Polynomial::one(&r)]);
        let lt = v.leading_term().unwrap();
        assert_eq!(lt.position, 0);
        assert_eq!(lt.monomial, Monomial::var(2, 0));
    }

    #[test]
    fn vector_arithmetic_cancels() {
        let (r, m) = setup();
        let x = Polynomial::variable(&r, 0);
        let v = ModuleVector::from_components(&m, vec![x.clone(), Polynomial::zero(&r)]);
        assert!(v.sub(&v).is_zero());
        assert_eq!(v.add(&v), v.scale(&Polynomial::constant(&r, q(2))));
    }

    #[test]
    fn monic_normalization() {
        let (r, m) = setup();
        let v = ModuleVector::from_components(
            &m,
            vec![Polynomial::constant(&r, q(-3)), Polynomial::variable(&r, 1)],
        );
        let monic = v.make_monic();
        let lt = monic.leading_term().unwrap();
        assert_eq!(lt.coeff, q(1));
        assert_eq!(monic.component(1), &Polynomial::variable(&r, 1).scale(&BigRational::new(BigInt::from(-1), BigInt::from(3))));
    }

    #[test]
    fn display_is_canonical() {
        let (r, m) = setup();
        let x = Polynomial::variable(&r, 0);
        let y = Polynomial::variable(&r, 1);
        let v = ModuleVector::from_components(&m, vec![x.mul(&y).neg(), y.pow(3)]);
        assert_eq!(v.to_string(), "-x*y*e1 + y^3*e2");
        assert_eq!(ModuleVector::zero(&m).to_string(), "0");
        assert_eq!(ModuleVector::basis(&m, 1).to_string(), "e2");
    }
}

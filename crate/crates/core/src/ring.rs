//! Multivariate polynomials over Q with graded reverse lexicographic term order.
//!
//! A [`PolyRing`] fixes the variable set and the monomial order; every
//! [`Monomial`] and [`Polynomial`] lives relative to one ring. Rings are
//! shared behind `Arc` and compared by value, so two independently built
//! contexts with the same variables and order are interchangeable.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Term order on monomials.
///
/// `GrevLex` is the only order exposed to callers. `ElimFirst(k)` is a block
/// order used internally for elimination: the first `k` exponents form a
/// dominant grevlex block, so any term containing a block variable compares
/// greater than every term free of them.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MonomialOrder {
    GrevLex,
    ElimFirst(usize),
}

/// Polynomial ring Q[x1, ..., xn] with a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyRing {
    vars: Vec<String>,
    order: MonomialOrder,
}

impl PolyRing {
    /// Builds a ring with the given variable names under grevlex.
    ///
    /// Panics if the name list is empty, contains duplicates or empty names.
    pub fn new(vars: &[&str]) -> Arc<PolyRing> {
        Self::with_order(vars, MonomialOrder::GrevLex)
    }

    pub(crate) fn with_order(vars: &[&str], order: MonomialOrder) -> Arc<PolyRing> {
        assert!(!vars.is_empty(), "a polynomial ring needs at least one variable");
        for (i, v) in vars.iter().enumerate() {
            assert!(!v.is_empty(), "variable names must be nonempty");
            assert!(
                !vars[..i].contains(v),
                "duplicate variable name {v:?} in ring declaration"
            );
        }
        if let MonomialOrder::ElimFirst(k) = order {
            assert!(k > 0 && k < vars.len(), "elimination block must be a proper prefix");
        }
        Arc::new(PolyRing {
            vars: vars.iter().map(|s| s.to_string()).collect(),
            order,
        })
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> &[String] {
        &self.vars
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    /// Compares two monomials of this ring under the ring's order.
    pub fn cmp_monomials(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.0.len(), self.num_vars(), "monomial arity mismatch");
        debug_assert_eq!(b.0.len(), self.num_vars(), "monomial arity mismatch");
        match self.order {
            MonomialOrder::GrevLex => grevlex_cmp(&a.0, &b.0),
            MonomialOrder::ElimFirst(k) => {
                grevlex_cmp(&a.0[..k], &b.0[..k]).then_with(|| grevlex_cmp(&a.0[k..], &b.0[k..]))
            }
        }
    }
}

/// Grevlex: higher total degree wins; on ties the monomial with the smaller
/// exponent in the last differing variable (scanning from the last variable)
/// is the larger one.
fn grevlex_cmp(a: &[u32], b: &[u32]) -> Ordering {
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

/// Exponent vector; arity equals the owning ring's variable count.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(num_vars: usize) -> Monomial {
        Monomial(vec![0; num_vars])
    }

    pub fn var(num_vars: usize, index: usize) -> Monomial {
        Self::var_pow(num_vars, index, 1)
    }

    pub fn var_pow(num_vars: usize, index: usize, exp: u32) -> Monomial {
        assert!(index < num_vars, "variable index out of range");
        let mut e = vec![0; num_vars];
        e[index] = exp;
        Monomial(e)
    }

    pub fn from_exponents(exps: Vec<u32>) -> Monomial {
        Monomial(exps)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Exact division; `None` when some exponent of `other` exceeds ours.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.0.len());
        for (a, b) in self.0.iter().zip(&other.0) {
            out.push(a.checked_sub(*b)?);
        }
        Some(Monomial(out))
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    /// Variables with positive exponent.
    pub fn support(&self) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| self.0[i] > 0).collect()
    }
}

/// Sparse polynomial with exact rational coefficients.
///
/// Terms are kept sorted strictly descending in the ring's order and never
/// carry a zero coefficient.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, BigRational)>,
}

pub(crate) fn assert_same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) {
    assert!(
        Arc::ptr_eq(a, b) || a == b,
        "polynomial ring mismatch: {:?} vs {:?}",
        a.var_names(),
        b.var_names()
    );
}

impl Polynomial {
    pub fn zero(ring: &Arc<PolyRing>) -> Polynomial {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Polynomial {
        Self::constant(ring, BigRational::one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: BigRational) -> Polynomial {
        Self::from_terms(ring, vec![(Monomial::one(ring.num_vars()), c)])
    }

    pub fn variable(ring: &Arc<PolyRing>, index: usize) -> Polynomial {
        Self::monomial_term(ring, Monomial::var(ring.num_vars(), index), BigRational::one())
    }

    pub fn monomial_term(ring: &Arc<PolyRing>, m: Monomial, c: BigRational) -> Polynomial {
        Self::from_terms(ring, vec![(m, c)])
    }

    /// Normalizing constructor: sorts descending, merges equal monomials,
    /// drops zero coefficients.
    pub fn from_terms(ring: &Arc<PolyRing>, mut terms: Vec<(Monomial, BigRational)>) -> Polynomial {
        for (m, _) in &terms {
            assert_eq!(m.exponents().len(), ring.num_vars(), "monomial arity mismatch");
        }
        terms.sort_by(|a, b| ring.cmp_monomials(&b.0, &a.0));
        let mut out: Vec<(Monomial, BigRational)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == m => last.1 += c,
                _ => out.push((m, c)),
            }
        }
        out.retain(|(_, c)| !c.is_zero());
        Polynomial { ring: ring.clone(), terms: out }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one()
    }

    /// Iterates terms in descending ring order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter().map(|(m, c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.first().map(|(m, c)| (m, c))
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    pub fn neg(&self) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_same_ring(&self.ring, &other.ring);
        // Merge of two descending term lists.
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        while i < self.terms.len() && j < other.terms.len() {
            let (ma, ca) = &self.terms[i];
            let (mb, cb) = &other.terms[j];
            match self.ring.cmp_monomials(ma, mb) {
                Ordering::Greater => {
                    out.push((ma.clone(), ca.clone()));
                    i += 1;
                }
                Ordering::Less => {
                    out.push((mb.clone(), cb.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = ca + cb;
                    if !c.is_zero() {
                        out.push((ma.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        out.extend(other.terms[j..].iter().cloned());
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_same_ring(&self.ring, &other.ring);
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                terms.push((ma.mul(mb), ca * cb));
            }
        }
        Polynomial::from_terms(&self.ring, terms)
    }

    /// Multiplies by the single term `c * m`.
    pub fn mul_term(&self, c: &BigRational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(tm, tc)| (tm.mul(m), tc * c)).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Polynomial {
        self.mul_term(c, &Monomial::one(self.ring.num_vars()))
    }

    pub fn pow(&self, e: u32) -> Polynomial {
        let mut acc = Polynomial::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact division by `d`; `None` when `self` is not a multiple of `d`.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        assert_same_ring(&self.ring, &d.ring);
        assert!(!d.is_zero(), "division by the zero polynomial");
        let (dm, dc) = d.leading().expect("nonzero divisor");
        let mut rem = self.clone();
        let mut quo_terms = Vec::new();
        while let Some((rm, rc)) = rem.leading() {
            let qm = rm.div(dm)?;
            let qc = rc / dc;
            rem = rem.sub(&d.mul_term(&qc, &qm));
            quo_terms.push((qm, qc));
        }
        Some(Polynomial::from_terms(&self.ring, quo_terms))
    }

    /// Same polynomial in a ring extended by one fresh leading variable
    /// (exponent zero everywhere).
    pub(crate) fn lift_front(&self, ext: &Arc<PolyRing>) -> Polynomial {
        assert_eq!(ext.num_vars(), self.ring.num_vars() + 1);
        Polynomial {
            ring: ext.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut exps = Vec::with_capacity(m.exponents().len() + 1);
                    exps.push(0);
                    exps.extend_from_slice(m.exponents());
                    (Monomial(exps), c.clone())
                })
                .collect(),
        }
        // Lifted terms keep their relative order under both GrevLex and
        // ElimFirst(1): the block exponent is uniformly zero.
    }

    /// Inverse of [`lift_front`]; `None` when any term uses the front variable.
    pub(crate) fn lower_front(&self, base: &Arc<PolyRing>) -> Option<Polynomial> {
        assert_eq!(base.num_vars() + 1, self.ring.num_vars());
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.exponents()[0] != 0 {
                return None;
            }
            terms.push((Monomial(m.exponents()[1..].to_vec()), c.clone()));
        }
        Some(Polynomial::from_terms(base, terms))
    }

    pub(crate) fn uses_front_var(&self) -> bool {
        self.terms.iter().any(|(m, _)| m.exponents()[0] != 0)
    }
}

impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl std::ops::Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial::neg(self)
    }
}

pub(crate) fn format_coefficient(c: &BigRational) -> String {
    if c.denom().is_one() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub(crate) fn monomial_factor_string(ring: &PolyRing, m: &Monomial) -> Option<String> {
    if m.is_one() {
        return None;
    }
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.var_names()[i].clone()),
            _ => parts.push(format!("{}^{}", ring.var_names()[i], e)),
        }
    }
    Some(parts.join("*"))
}

/// One printed term: `sign`, then the magnitude rendered as
/// `coeff`, `monomial`, or `coeff*monomial` (basis suffix supplied by the
/// caller for module terms).
pub(crate) fn push_term(
    out: &mut String,
    first: bool,
    coeff: &BigRational,
    body: Option<String>,
) {
    let neg = coeff.is_negative();
    if first {
        if neg {
            out.push('-');
        }
    } else if neg {
        out.push_str(" - ");
    } else {
        out.push_str(" + ");
    }
    let mag = coeff.abs();
    match body {
        None => out.push_str(&format_coefficient(&mag)),
        Some(b) => {
            if mag.is_one() {
                out.push_str(&b);
            } else {
                out.push_str(&format_coefficient(&mag));
                out.push('*');
                out.push_str(&b);
            }
        }
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            push_term(&mut out, i == 0, c, monomial_factor_string(&self.ring, m));
        }
        f.write_str(&out)
    }
}

/// Integer content removal: scales a term list so coefficients are coprime
/// integers and the first (leading) coefficient is positive. Returns the
/// scaled list; empty input stays empty.
pub(crate) fn primitive_scale(terms: &mut [(Monomial, BigRational)]) {
    use num_integer::Integer;
    if terms.is_empty() {
        return;
    }
    let mut den_lcm = BigInt::one();
    for (_, c) in terms.iter() {
        den_lcm = den_lcm.lcm(c.denom());
    }
    let mut num_gcd = BigInt::zero();
    for (_, c) in terms.iter() {
        num_gcd = num_gcd.gcd(&(c.numer() * &den_lcm / c.denom()));
    }
    if num_gcd.is_zero() {
        return;
    }
    let scale = BigRational::new(den_lcm, num_gcd);
    let negate = terms[0].1.is_negative();
    for (_, c) in terms.iter_mut() {
        *c *= &scale;
        if negate {
            *c = -c.clone();
        }
    }
}

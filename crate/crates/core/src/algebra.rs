//! Arithmetic of submodules: sums, intersections, colon constructions,
//! annihilators, saturation and ideal-by-module products.
//!
//! Intersections use the classical tag-variable trick: N ∩ L is read off a
//! Groebner basis of t·N + (1−t)·L over R[t] by keeping the t-free elements.
//! The tag variable must dominate *both* the ring variables and the module
//! position in the term order — ordinary position-over-term with an
//! eliminating ring order is not enough, since a vector could then have a
//! t-free leading term while still carrying t in lower positions. The
//! `ElimFirst` module order provides exactly this.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner::{buchberger, Ideal, Submodule};
use crate::module::{assert_same_module, FreeModule, ModuleVector};
use crate::ring::{MonomialOrder, PolyRing, Polynomial};

/// Sum N + L as a submodule.
pub fn sum(a: &Submodule, b: &Submodule) -> Submodule {
    assert_same_module(a.module(), b.module());
    let mut gens = a.generators().to_vec();
    gens.extend_from_slice(b.generators());
    Submodule::new(a.module(), gens)
}

/// Picks a tag-variable name not already used by the ring.
fn fresh_var_name(ring: &PolyRing) -> String {
    if ring.var_index("t").is_none() {
        return "t".to_string();
    }
    (0..)
        .map(|k| format!("t{k}"))
        .find(|name| ring.var_index(name).is_none())
        .unwrap()
}

/// Componentwise intersection for monomial submodules: position ideals meet
/// by pairwise lcms, with no eliminations involved.
fn intersect_monomial(a: &Submodule, b: &Submodule) -> Submodule {
    let module = a.module();
    let ring = module.ring();
    let position_gens = |s: &Submodule| -> Vec<Vec<crate::ring::Monomial>> {
        let mut per = vec![Vec::new(); module.rank()];
        for v in s.reduced_basis() {
            let t = v.leading_term().expect("basis vectors are nonzero");
            per[t.position].push(t.monomial);
        }
        per
    };
    let pa = position_gens(a);
    let pb = position_gens(b);
    let one = num_rational::BigRational::from_integer(1.into());
    let mut gens = Vec::new();
    for i in 0..module.rank() {
        for m in crate::mono::intersect(ring, &pa[i], &pb[i]) {
            gens.push(ModuleVector::basis(module, i).scale_term(&one, &m));
        }
    }
    Submodule::new(module, gens)
}

/// Intersection N ∩ L via tag-variable elimination, with a componentwise
/// shortcut when both inputs are monomial.
pub fn intersect(a: &Submodule, b: &Submodule) -> Submodule {
    assert_same_module(a.module(), b.module());
    let module = a.module();
    if a.is_zero() || b.is_zero() {
        return Submodule::zero(module);
    }
    if a.is_monomial() && b.is_monomial() {
        return intersect_monomial(a, b);
    }

    let ring = module.ring();
    let tag = fresh_var_name(ring);
    let mut vars: Vec<&str> = vec![tag.as_str()];
    vars.extend(ring.var_names().iter().map(String::as_str));
    let ext_ring = PolyRing::with_order(&vars, MonomialOrder::ElimFirst(1));
    let ext_mod = FreeModule::new(&ext_ring, module.rank());

    let t = Polynomial::variable(&ext_ring, 0);
    let one_minus_t = &Polynomial::one(&ext_ring) - &t;
    let mut gens: Vec<ModuleVector> = Vec::new();
    for g in a.generators() {
        gens.push(g.lift_front(&ext_mod).scale(&t));
    }
    for g in b.generators() {
        gens.push(g.lift_front(&ext_mod).scale(&one_minus_t));
    }

    let kept: Vec<ModuleVector> = buchberger(&ext_mod, &gens)
        .into_iter()
        .filter(|v| !v.uses_front_var())
        .map(|v| v.lower_front(module).expect("t-free by filter"))
        .collect();
    Submodule::new(module, kept)
}

/// Intersection of several submodules; the empty intersection is R^n.
pub fn intersect_many(module: &Arc<FreeModule>, parts: &[&Submodule]) -> Submodule {
    match parts.split_first() {
        None => Submodule::full(module),
        Some((first, rest)) => {
            let mut acc = (*first).clone();
            for p in rest {
                acc = intersect(&acc, p);
            }
            acc
        }
    }
}

/// Intersection of ideals, through their rank-1 submodules.
pub fn intersect_ideals(a: &Ideal, b: &Ideal) -> Ideal {
    Ideal::from_submodule(intersect(a.as_submodule(), b.as_submodule()))
}

/// Colon submodule (N : f) = {v : f·v ∈ N}, computed as (N ∩ f·R^n)/f.
pub fn colon_poly(n: &Submodule, f: &Polynomial) -> Result<Submodule> {
    if f.is_zero() {
        return Err(Error::ZeroColonDivisor);
    }
    let module = n.module();
    let f_full = Submodule::new(
        module,
        (0..module.rank()).map(|i| ModuleVector::basis(module, i).scale(f)).collect(),
    );
    let meet = intersect(n, &f_full);
    let gens = meet
        .reduced_basis()
        .iter()
        .map(|v| {
            v.div_poly_exact(f)
                .expect("every element of N ∩ fR^n is divisible by f")
        })
        .collect();
    Ok(Submodule::new(module, gens))
}

/// Colon submodule (N : I) for an ideal I, as the meet over I's generators.
pub fn colon_ideal(n: &Submodule, i: &Ideal) -> Result<Submodule> {
    let gens = i.generators();
    if gens.is_empty() {
        return Err(Error::ZeroColonDivisor);
    }
    let mut acc: Option<Submodule> = None;
    for f in &gens {
        let part = colon_poly(n, f)?;
        acc = Some(match acc {
            None => part,
            Some(prev) => intersect(&prev, &part),
        });
    }
    Ok(acc.unwrap())
}

/// Annihilator-style quotient (N : R^n) = {r ∈ R : r·R^n ⊆ N}, an ideal.
///
/// Equals ∩ᵢ (N : eᵢ); each (N : eᵢ)·eᵢ is N ∩ R·eᵢ, so the factors fall out
/// of intersections with the coordinate axes.
pub fn annihilator(n: &Submodule) -> Ideal {
    let module = n.module();
    let ring = module.ring();
    let mut acc: Option<Ideal> = None;
    for i in 0..module.rank() {
        let axis = Submodule::new(module, vec![ModuleVector::basis(module, i)]);
        let meet = intersect(n, &axis);
        let coeffs: Vec<Polynomial> =
            meet.reduced_basis().iter().map(|v| v.component(i).clone()).collect();
        let factor = Ideal::new(ring, coeffs);
        acc = Some(match acc {
            None => factor,
            Some(prev) => intersect_ideals(&prev, &factor),
        });
    }
    acc.unwrap_or_else(|| Ideal::unit(ring))
}

/// Saturation (N : I^∞) with the number of colon steps taken to stabilize.
///
/// Iterates N ⊆ (N:I) ⊆ (N:I²) ⊆ … and stops at the first fixed point; the
/// chain is eventually constant because R^n is Noetherian. `steps` counts the
/// colon applications performed, including the one that certified stability,
/// so an already-saturated input reports 1.
pub fn saturate(n: &Submodule, i: &Ideal) -> Result<(Submodule, usize)> {
    if i.is_zero() {
        return Err(Error::ZeroSaturationIdeal);
    }
    let mut current = n.clone();
    let mut steps = 0;
    loop {
        let next = colon_ideal(&current, i)?;
        steps += 1;
        if next == current {
            return Ok((current, steps));
        }
        current = next;
    }
}

/// Product I·N: generated by f·g over generators f of I and g of N.
pub fn ideal_module_product(i: &Ideal, n: &Submodule) -> Submodule {
    let module = n.module();
    let mut gens = Vec::new();
    for f in &i.generators() {
        for g in n.generators() {
            gens.push(g.scale(f));
        }
    }
    Submodule::new(module, gens)
}

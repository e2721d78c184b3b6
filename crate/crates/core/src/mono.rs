//! Internal helpers for monomial ideals kept as plain generator lists.
//!
//! Monomial ideals admit much cheaper arithmetic than Buchberger provides:
//! minimal generators fall out of divisibility pruning, membership is a
//! divisibility scan, and intersections are pairwise lcms. Both the
//! decomposition machinery and the monomial fast path in `algebra` use these.

use std::sync::Arc;

use crate::ring::{Monomial, PolyRing};

/// Drops generators divisible by another; sorts descending in the ring order
/// so lists are canonical (the reduced basis of the ideal).
pub(crate) fn minimalize(ring: &Arc<PolyRing>, mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by(|a, b| ring.cmp_monomials(b, a));
    gens.dedup();
    let mut kept: Vec<Monomial> = Vec::new();
    // Ascending scan keeps low generators and drops their multiples.
    for m in gens.into_iter().rev() {
        if !kept.iter().any(|k| k.divides(&m)) {
            kept.push(m);
        }
    }
    kept.sort_by(|a, b| ring.cmp_monomials(b, a));
    kept
}

pub(crate) fn contains(gens: &[Monomial], m: &Monomial) -> bool {
    gens.iter().any(|g| g.divides(m))
}

pub(crate) fn subset(a: &[Monomial], b: &[Monomial]) -> bool {
    a.iter().all(|m| contains(b, m))
}

/// Intersection of monomial ideals: pairwise lcms, minimalized.
pub(crate) fn intersect(ring: &Arc<PolyRing>, a: &[Monomial], b: &[Monomial]) -> Vec<Monomial> {
    let mut out = Vec::with_capacity(a.len() * b.len());
    for m in a {
        for n in b {
            out.push(m.lcm(n));
        }
    }
    minimalize(ring, out)
}

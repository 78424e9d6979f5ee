use num_traits::{One, Zero};

use super::{LinearInequality, VPolytope};
use crate::dd::hull_facets;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::linalg::rank;
use crate::scalar::Rational;

fn incidence(n: usize, set: u64) -> Vec<Rational> {
    (0..n).map(|i| if set >> i & 1 == 1 { Rational::one() } else { Rational::zero() }).collect()
}

fn weight(c: &[Rational], set: u64) -> Rational {
    crate::graph::bits(set).fold(Rational::zero(), |acc, i| acc + &c[i])
}

/// Incidence vectors of all stable sets.
pub fn stab_vertices(g: &Graph, cap: usize) -> Result<VPolytope> {
    if g.n() > cap {
        return Err(Error::CapExceeded { what: "nodes for stable-set enumeration", size: g.n(), cap });
    }
    let n = g.n();
    Ok(VPolytope::new(n, g.stable_sets().into_iter().map(|s| incidence(n, s)).collect()))
}

/// Irredundant facet list of `STAB(g)`, sorted.
pub fn stab_facets(g: &Graph, cap: usize) -> Result<Vec<LinearInequality>> {
    if g.n() > cap {
        return Err(Error::CapExceeded { what: "nodes for facet enumeration", size: g.n(), cap });
    }
    if g.n() == 0 {
        return Ok(Vec::new());
    }
    let pts = stab_vertices(g, cap)?.vertices;
    let mut out: Vec<LinearInequality> =
        hull_facets(&pts)?.into_iter().map(|(a, b)| LinearInequality::new(a, b)).collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// Maximum of `cᵀx` over `STAB(g)` and a maximizing stable set.
pub fn stab_max(g: &Graph, c: &[Rational]) -> (Rational, u64) {
    assert_eq!(c.len(), g.n());
    let mut best = (Rational::zero(), 0u64);
    for s in g.stable_sets() {
        let w = weight(c, s);
        if w > best.0 {
            best = (w, s);
        }
    }
    best
}

pub fn is_valid(ineq: &LinearInequality, g: &Graph) -> bool {
    ineq.dim() == g.n() && stab_max(g, &ineq.a).0 <= ineq.beta
}

/// Rank of `{(1, χ_S)}` over stable sets `S` tight for `ineq`.
pub fn tight_rank(ineq: &LinearInequality, g: &Graph) -> usize {
    let n = g.n();
    let rows: Vec<Vec<Rational>> = g
        .stable_sets()
        .into_iter()
        .filter(|&s| weight(&ineq.a, s) == ineq.beta)
        .map(|s| {
            let mut r = vec![Rational::one()];
            r.extend(incidence(n, s));
            r
        })
        .collect();
    rank(&rows)
}

/// Valid, and the tight stable sets span an affine space of dimension `n − 1`.
pub fn is_facet(ineq: &LinearInequality, g: &Graph) -> bool {
    is_valid(ineq, g) && tight_rank(ineq, g) == g.n()
}

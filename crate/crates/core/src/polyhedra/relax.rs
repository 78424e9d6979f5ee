use rayon::prelude::*;

use super::{stab_facets, HPolytope, LinearInequality};
use crate::error::{Error, Result};
use crate::graph::{bits, Graph};

const SUBSET_CAP: usize = 24;

fn base(g: &Graph) -> Vec<LinearInequality> {
    let n = g.n();
    (0..n)
        .flat_map(|i| [LinearInequality::nonneg(n, i), LinearInequality::upper(n, i)])
        .collect()
}

/// Box plus `x_u + x_v ≤ 1` for every edge.
pub fn frac_relaxation(g: &Graph) -> HPolytope {
    let n = g.n();
    let mut ineqs = base(g);
    ineqs.extend(g.edges().into_iter().map(|(u, v)| LinearInequality::set_sum(n, 1 << u | 1 << v, 1)));
    HPolytope::new(n, ineqs)
}

/// Box plus one inequality per maximal clique.
pub fn qstab(g: &Graph) -> HPolytope {
    let n = g.n();
    let mut ineqs = base(g);
    ineqs.extend(g.maximal_cliques().into_iter().map(|c| LinearInequality::set_sum(n, c, 1)));
    HPolytope::new(n, ineqs)
}

fn check_subset_cap(g: &Graph) -> Result<()> {
    if g.n() > SUBSET_CAP {
        return Err(Error::CapExceeded { what: "nodes for induced-subgraph search", size: g.n(), cap: SUBSET_CAP });
    }
    Ok(())
}

/// Whether `set` induces a single cycle.
fn induces_cycle(g: &Graph, set: u64) -> bool {
    let k = set.count_ones();
    if k < 3 || bits(set).any(|v| (g.neighbors_mask(v) & set).count_ones() != 2) {
        return false;
    }
    let start = set.trailing_zeros() as usize;
    let mut seen = 1u64 << start;
    let mut frontier = seen;
    while frontier != 0 {
        let next = bits(frontier).fold(0, |m, v| m | g.neighbors_mask(v)) & set & !seen;
        seen |= next;
        frontier = next;
    }
    seen == set
}

/// Node sets inducing a chordless odd cycle (triangles included).
pub fn induced_odd_cycles(g: &Graph) -> Result<Vec<u64>> {
    check_subset_cap(g)?;
    Ok((1..=g.full_mask())
        .into_par_iter()
        .filter(|&s: &u64| s.count_ones() % 2 == 1 && induces_cycle(g, s))
        .collect())
}

/// Node sets inducing `C_{2k+1}` with `k ≥ 2`.
pub fn induced_odd_holes(g: &Graph) -> Result<Vec<u64>> {
    Ok(induced_odd_cycles(g)?.into_iter().filter(|s| s.count_ones() >= 5).collect())
}

/// Node sets inducing the complement of `C_{2k+1}` with `k ≥ 2`.
pub fn induced_odd_antiholes(g: &Graph) -> Result<Vec<u64>> {
    induced_odd_holes(&g.complement())
}

/// Frac plus `Σ_{v∈C} x_v ≤ (|C|−1)/2` for every induced odd cycle `C`.
pub fn odd_cycle_relaxation(g: &Graph) -> Result<HPolytope> {
    let n = g.n();
    let mut p = frac_relaxation(g);
    for c in induced_odd_cycles(g)? {
        p.inequalities.push(LinearInequality::set_sum(n, c, (c.count_ones() as i64 - 1) / 2));
    }
    Ok(HPolytope::new(n, p.inequalities))
}

/// Intersection of `STAB(G[S])` over every near-bipartite induced subgraph.
///
/// Near-bipartiteness is hereditary, so each subgraph only contributes its
/// full-support facets; the rest come from smaller subgraphs.
pub fn nb_relaxation(g: &Graph, size_cap: usize) -> Result<HPolytope> {
    let n = g.n();
    if n > size_cap {
        return Err(Error::CapExceeded { what: "nodes for near-bipartite relaxation", size: n, cap: size_cap });
    }
    let parts: Vec<Vec<LinearInequality>> = (1..=g.full_mask())
        .into_par_iter()
        .map(|s| -> Result<Vec<LinearInequality>> {
            let (h, map) = g.induced(s);
            if !crate::classify::is_near_bipartite(&h) {
                return Ok(Vec::new());
            }
            Ok(stab_facets(&h, size_cap)?
                .into_iter()
                .filter(LinearInequality::is_full_support)
                .map(|f| f.extend(n, &map))
                .collect())
        })
        .collect::<Result<_>>()?;
    let mut ineqs = base(g);
    ineqs.extend(parts.into_iter().flatten());
    Ok(HPolytope::new(n, ineqs))
}

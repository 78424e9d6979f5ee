use num_traits::Zero;

use super::{HPolytope, VPolytope};
use crate::dd::polytope_vertices;
use crate::error::{Error, Result};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::scalar::Rational;

#[derive(Clone, Debug)]
pub enum Polytope {
    H(HPolytope),
    V(VPolytope),
}

impl Polytope {
    pub fn dim(&self) -> usize {
        match self {
            Polytope::H(p) => p.n,
            Polytope::V(p) => p.n,
        }
    }
}

/// Maximum of `cᵀx` over `p`; `None` if empty, error if unbounded.
///
/// Nonnegativity of the variables must be implied by `p`.
pub fn lp_max(p: &HPolytope, c: &[Rational]) -> Result<Option<Rational>> {
    let mut lp = LinearProgram::new(p.n);
    for i in &p.inequalities {
        let coeffs = i.a.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(j, v)| (j, v.clone())).collect();
        lp.add(coeffs, Relation::Le, i.beta.clone());
    }
    match lp.maximize(c) {
        LpOutcome::Optimal { value, .. } => Ok(Some(value)),
        LpOutcome::Infeasible { .. } => Ok(None),
        LpOutcome::Unbounded => Err(Error::Precondition("polytope is unbounded".into())),
    }
}

/// `q ⊆ p` for H-polytopes: every inequality of `p` is valid on `q`.
pub fn contains_h(p: &HPolytope, q: &HPolytope) -> Result<bool> {
    for ineq in &p.inequalities {
        if let Some(m) = lp_max(q, &ineq.a)? {
            if m > ineq.beta {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn in_hull(v: &VPolytope, x: &[Rational]) -> bool {
    let m = v.vertices.len();
    let mut lp = LinearProgram::new(m);
    lp.add((0..m).map(|j| (j, Rational::from_integer(1.into()))).collect(), Relation::Eq, Rational::from_integer(1.into()));
    for i in 0..v.n {
        let coeffs = (0..m).filter(|&j| !v.vertices[j][i].is_zero()).map(|j| (j, v.vertices[j][i].clone())).collect();
        lp.add(coeffs, Relation::Eq, x[i].clone());
    }
    matches!(lp.feasible(), LpOutcome::Optimal { .. })
}

fn subset(a: &Polytope, b: &Polytope) -> Result<bool> {
    Ok(match (a, b) {
        (Polytope::V(va), Polytope::H(hb)) => va.vertices.iter().all(|x| hb.contains(x)),
        (Polytope::H(ha), Polytope::H(hb)) => contains_h(hb, ha)?,
        (Polytope::V(va), Polytope::V(vb)) => va.vertices.iter().all(|x| in_hull(vb, x)),
        (Polytope::H(ha), Polytope::V(_)) => {
            let va = to_v(ha)?;
            subset(&Polytope::V(va), b)?
        }
    })
}

fn to_v(h: &HPolytope) -> Result<VPolytope> {
    let ineqs: Vec<_> = h.inequalities.iter().map(|i| (i.a.clone(), i.beta.clone())).collect();
    Ok(VPolytope::new(h.n, polytope_vertices(&ineqs)?))
}

/// Exact equality by mutual containment.
pub fn polytope_equal(p: &Polytope, q: &Polytope) -> Result<bool> {
    if p.dim() != q.dim() {
        return Ok(false);
    }
    Ok(subset(p, q)? && subset(q, p)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, complete};
    use crate::polyhedra::{frac_relaxation, qstab, stab_vertices};

    #[test]
    fn equalities() {
        let c4 = cycle(4).unwrap();
        let c5 = cycle(5).unwrap();
        let stab = |g| Polytope::V(stab_vertices(g, 20).unwrap());
        assert!(polytope_equal(&Polytope::H(frac_relaxation(&c4)), &stab(&c4)).unwrap());
        assert!(!polytope_equal(&Polytope::H(frac_relaxation(&c5)), &stab(&c5)).unwrap());
        assert!(polytope_equal(&Polytope::H(qstab(&c5)), &Polytope::H(frac_relaxation(&c5))).unwrap());
        let k2 = complete(2).unwrap();
        let v = to_v(&frac_relaxation(&k2)).unwrap();
        assert_eq!(v.vertices.len(), 3);
    }
}

use num_traits::{Signed, Zero};

use super::lsplus::LsPlusOptions;
use super::reduced::Reduced;
use super::{CertificateKind, LiftCertificate};
use crate::error::{Error, Result};
use crate::graph::{bits, Graph};
use crate::linalg::Matrix;
use crate::polyhedra::{frac_relaxation, lp_max, LinearInequality};
use crate::scalar::{best_rational_approx, Rational, Scalar};
use crate::sdp::{BarrierOptions, Lmi};

#[derive(Clone, Debug)]
pub struct SeparationResult {
    pub inequality: LinearInequality,
    /// `aᵀx` at the last interior point reached (a lower bound).
    pub max_estimate: f64,
    /// Barrier duality bound on `max aᵀx` over `LS₊(FRAC(G))`.
    pub upper_bound: f64,
    /// Exactly verified point with `aᵀx > β`.
    pub witness: Option<LiftCertificate>,
    /// `aᵀx − β` at the witness.
    pub violation: Option<Rational>,
    pub converged: bool,
}

impl SeparationResult {
    pub fn beta(&self) -> f64 {
        self.inequality.beta.to_f64()
    }

    /// Heuristic validity: the numeric maximum does not exceed `β + tol`.
    pub fn holds_within(&self, tol: f64) -> bool {
        self.max_estimate <= self.beta() + tol
    }
}

/// Maximize `aᵀx` over `LS₊(FRAC(G))` numerically and look for an exactly
/// certified point beyond `β`.
pub fn lsplus_separate_facet(g: &Graph, ineq: &LinearInequality, tol: f64) -> Result<SeparationResult> {
    lsplus_separate_facet_with(g, ineq, &LsPlusOptions { tol, ..LsPlusOptions::default() })
}

pub fn lsplus_separate_facet_with(g: &Graph, ineq: &LinearInequality, opts: &LsPlusOptions) -> Result<SeparationResult> {
    let n = g.n();
    if ineq.dim() != n {
        return Err(Error::InvalidParameter(format!("inequality has {} coefficients, graph has {n} nodes", ineq.dim())));
    }
    let red = Reduced::new(g, true);
    let m = red.num_vars();
    let lmi = joint_lmi(&red, &ineq.to_f64().0);
    let start = barycenter(g, &red);
    if !lmi.is_strictly_feasible(&start) {
        return Err(Error::Inconsistent("stable-set barycenter is not interior".into()));
    }
    let bopts = BarrierOptions { gap_tol: opts.tol, max_newton: opts.max_newton, ..BarrierOptions::default() };
    let res = lmi.maximize(&start, &bopts, |_, _, _| false)?;
    let beta = ineq.beta.to_f64();
    let mut witness = None;
    let mut violation = None;
    'path: for p in res.path.iter().filter(|p| p.value > beta) {
        for den in opts.denominators() {
            let v: Vec<Rational> = p.v.iter().map(|&t| best_rational_approx(t, den)).collect();
            let (x, z) = v.split_at(n);
            let viol = ineq.violation(x);
            if !viol.is_positive() {
                continue;
            }
            let cert = LiftCertificate { graph: g.clone(), x: x.to_vec(), y: red.matrix(x, z), kind: CertificateKind::MPlus };
            debug_assert_eq!(z.len(), m);
            if cert.verify().passed {
                witness = Some(cert);
                violation = Some(viol);
                break 'path;
            }
        }
    }
    Ok(SeparationResult {
        inequality: ineq.clone(),
        max_estimate: res.value,
        upper_bound: res.upper_bound,
        witness,
        violation,
        converged: res.converged,
    })
}

/// `Y(x, z)` as an LMI in `(x, z)` with the reduced rows.
fn joint_lmi(red: &Reduced, a: &[f64]) -> Lmi<f64> {
    let n = red.n;
    let m = red.num_vars();
    let f0 = red.matrix_f64(&vec![0.0; n], &vec![0.0; m]);
    let mut fs: Vec<Matrix<f64>> = (0..n).map(|i| red.x_matrix(i)).collect();
    fs.extend((0..m).map(|k| red.var_matrix(k)));
    let rows = red
        .rows
        .iter()
        .map(|r| {
            let mut g: Vec<(usize, f64)> = r.x.iter().map(|(i, c)| (*i, c.to_f64())).collect();
            g.extend(r.z.iter().map(|(k, c)| (n + k, c.to_f64())));
            (g, r.c.to_f64())
        })
        .collect();
    let mut objective = a.to_vec();
    objective.extend(vec![0.0; m]);
    Lmi { f0, fs, rows, objective }
}

/// Average of the rank-one lifts of all stable sets, as `(x, z)`.
fn barycenter(g: &Graph, red: &Reduced) -> Vec<f64> {
    let sets = g.stable_sets();
    let count = sets.len() as f64;
    let mut v = vec![0.0; g.n() + red.num_vars()];
    for s in sets {
        for i in bits(s) {
            v[i] += 1.0;
        }
        for (k, &(i, j)) in red.vars.iter().enumerate() {
            if s >> (i - 1) & 1 == 1 && s >> (j - 1) & 1 == 1 {
                v[g.n() + k] += 1.0;
            }
        }
    }
    v.iter().map(|c| c / count).collect()
}

/// For every node `v`, is `Σ_{w ∈ G⊖v} a_w x_w ≤ β − a_v` valid for
/// `FRAC(G ⊖ v)`? A `true` answer implies validity for `LS₊(FRAC(G))`.
pub fn destruction_sufficiency(g: &Graph, ineq: &LinearInequality) -> Result<bool> {
    if ineq.dim() != g.n() {
        return Err(Error::InvalidParameter("inequality dimension differs from graph".into()));
    }
    for v in 0..g.n() {
        let (h, map) = g.destroy(v)?;
        let rhs = &ineq.beta - &ineq.a[v];
        let a: Vec<Rational> = map.iter().map(|&w| ineq.a[w].clone()).collect();
        let max = if h.n() == 0 {
            Rational::zero()
        } else {
            lp_max(&frac_relaxation(&h), &a)?.ok_or_else(|| Error::Inconsistent("FRAC is bounded".into()))?
        };
        if max > rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::full_rank_inequality;
    use crate::graph::{complete, cycle, g_emn};

    #[test]
    fn destruction_examples() {
        let c5 = cycle(5).unwrap();
        assert!(destruction_sufficiency(&c5, &full_rank_inequality(&c5)).unwrap());
        let k3 = complete(3).unwrap();
        assert!(destruction_sufficiency(&k3, &full_rank_inequality(&k3)).unwrap());
        let emn = g_emn();
        assert!(!destruction_sufficiency(&emn, &full_rank_inequality(&emn)).unwrap());
    }

    #[test]
    fn c5_rank_inequality_holds() {
        let c5 = cycle(5).unwrap();
        let r = lsplus_separate_facet(&c5, &full_rank_inequality(&c5), 1e-8).unwrap();
        assert!(r.holds_within(1e-6), "{}", r.max_estimate);
        assert!(r.witness.is_none());
        assert!(r.upper_bound >= r.max_estimate);
    }
}

use num_traits::{Signed, Zero};

use super::reduced::{FixedRows, Reduced};
use super::{CertificateKind, EvidenceSource, LiftCertificate, LiftSystem, Membership, OutEvidence};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::lp::{verify_farkas, LinearProgram, LpOutcome, Relation};
use crate::polyhedra::{frac_relaxation, LinearInequality};
use crate::scalar::Rational;

/// Exact membership of `x` in `LS(FRAC(G))`.
///
/// "In" carries a verified `M(K)` certificate; "out" carries an inequality
/// valid for `LS(FRAC(G))` and violated by `x`, assembled from checked
/// Farkas multipliers.
pub fn ls_member(g: &Graph, x: &[Rational]) -> Result<Membership> {
    let red = Reduced::new(g, true);
    match solve_fixed(g, x, &red)? {
        Fixed::Feasible(z) => {
            let cert = LiftCertificate { graph: g.clone(), x: x.to_vec(), y: red.matrix(x, &z), kind: CertificateKind::M };
            let v = cert.verify();
            if !v.passed {
                return Err(Error::Inconsistent(format!("LP solution fails verification: {:?}", v.failure)));
            }
            Ok(Membership::In(cert))
        }
        Fixed::Out(e) => Ok(Membership::Out(e)),
    }
}

/// Exact membership in the LS₀ relaxation, where `Y` need not be symmetric.
/// "In" is backed by a non-symmetric matrix checked against every row.
pub fn ls0_member(g: &Graph, x: &[Rational]) -> Result<Membership> {
    let red = Reduced::new(g, false);
    match solve_fixed(g, x, &red)? {
        Fixed::Feasible(z) => {
            let y = red.matrix(x, &z);
            let sys = LiftSystem::build_nonsymmetric(g, x)?;
            if let Some(msg) = sys.first_violation(&y) {
                return Err(Error::Inconsistent(format!("LP solution fails verification: {msg}")));
            }
            Ok(Membership::In(LiftCertificate { graph: g.clone(), x: x.to_vec(), y, kind: CertificateKind::M }))
        }
        Fixed::Out(e) => Ok(Membership::Out(e)),
    }
}

pub(crate) enum Fixed {
    Feasible(Vec<Rational>),
    Out(OutEvidence),
}

pub(crate) fn frac_violation(g: &Graph, x: &[Rational]) -> Result<Option<OutEvidence>> {
    if x.len() != g.n() {
        return Err(Error::InvalidParameter(format!("point has length {}, graph has {} nodes", x.len(), g.n())));
    }
    Ok(frac_relaxation(g).violated_by(x).map(|i| OutEvidence {
        source: EvidenceSource::Frac,
        violation: i.violation(x),
        inequality: i.clone(),
    }))
}

pub(crate) fn fixed_lp(red: &Reduced, fixed: &FixedRows) -> LinearProgram<Rational> {
    let mut lp = LinearProgram::new(red.num_vars());
    for (coeffs, rhs) in &fixed.rows {
        lp.add(coeffs.clone(), Relation::Ge, rhs.clone());
    }
    lp
}

/// Feasibility of the reduced system at fixed `x`.
pub(crate) fn solve_fixed(g: &Graph, x: &[Rational], red: &Reduced) -> Result<Fixed> {
    if let Some(e) = frac_violation(g, x)? {
        return Ok(Fixed::Out(e));
    }
    let fixed = red.fix_x(x);
    if let Some(idx) = fixed.violated {
        return Ok(Fixed::Out(combination_evidence(red, &[(idx, Rational::from_integer(1.into()))], x)?));
    }
    let lp = fixed_lp(red, &fixed);
    match lp.feasible() {
        LpOutcome::Optimal { x: z, .. } => Ok(Fixed::Feasible(z)),
        LpOutcome::Infeasible { farkas } => {
            if !verify_farkas(&lp, &farkas) {
                return Err(Error::Inconsistent("Farkas certificate failed its check".into()));
            }
            let weights: Vec<(usize, Rational)> = farkas
                .iter()
                .zip(&fixed.origin)
                .filter(|(y, _)| !y.is_zero())
                .map(|(y, &o)| (o, -y.clone()))
                .collect();
            Ok(Fixed::Out(combination_evidence(red, &weights, x)?))
        }
        LpOutcome::Unbounded => unreachable!("feasibility problem has a zero objective"),
    }
}

/// The inequality `−(Σ w_r d_r)·x ≤ Σ w_r c_r` obtained from nonnegative
/// multipliers `w` on rows `d_r·x + c_r + (z part) ≥ 0` whose `z` parts
/// combine to something nonpositive.
pub(crate) fn combination_evidence(red: &Reduced, weights: &[(usize, Rational)], x: &[Rational]) -> Result<OutEvidence> {
    let mut a = vec![Rational::zero(); red.n];
    let mut beta = Rational::zero();
    for (idx, w) in weights {
        debug_assert!(!w.is_negative());
        let r = &red.rows[*idx];
        for (i, d) in &r.x {
            a[*i] -= w * d;
        }
        beta += w * &r.c;
    }
    let inequality = LinearInequality::new(a, beta);
    let violation = inequality.violation(x);
    if !violation.is_positive() {
        return Err(Error::Inconsistent("combined inequality is not violated".into()));
    }
    Ok(OutEvidence { source: EvidenceSource::LinearFarkas, inequality, violation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle};
    use crate::polyhedra::stab_vertices;
    use crate::scalar::{int, rat};

    #[test]
    fn c5_half_point_is_out() {
        let g = cycle(5).unwrap();
        let x = vec![rat(1, 2); 5];
        for m in [ls_member(&g, &x).unwrap(), ls0_member(&g, &x).unwrap()] {
            let Membership::Out(e) = m else { panic!("expected out") };
            assert_eq!(e.source, EvidenceSource::LinearFarkas);
            assert!(e.violation.is_positive());
            for v in stab_vertices(&g, 10).unwrap().vertices {
                assert!(e.inequality.is_satisfied(&v));
            }
        }
    }

    #[test]
    fn vertices_and_origin_are_in() {
        let g = cycle(5).unwrap();
        for v in stab_vertices(&g, 10).unwrap().vertices {
            assert!(ls_member(&g, &v).unwrap().is_in());
            assert!(ls0_member(&g, &v).unwrap().is_in());
        }
        assert!(ls_member(&g, &vec![int(0); 5]).unwrap().is_in());
    }

    #[test]
    fn frac_violations() {
        let g = complete(3).unwrap();
        let x = vec![rat(2, 3), rat(2, 3), int(0)];
        let Membership::Out(e) = ls_member(&g, &x).unwrap() else { panic!() };
        assert_eq!(e.source, EvidenceSource::Frac);
        let x = vec![rat(1, 2); 3];
        assert!(ls_member(&g, &x).unwrap().is_out());
    }
}

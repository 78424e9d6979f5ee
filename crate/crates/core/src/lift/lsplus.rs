use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::altproj::alternating_projections;
use super::ls::{frac_violation, solve_fixed, Fixed};
use super::reduced::{Entry, FixedRows, Reduced};
use super::{CertificateKind, EvidenceSource, LiftCertificate, Membership, OutEvidence};
use crate::config::Config;
use crate::error::Result;
use crate::graph::Graph;
use crate::linalg::{ldl_psd, nullspace, rref, symmetric_eigen, Matrix};
use crate::lp::{LinearProgram, LpOutcome, Relation};
use crate::polyhedra::{frac_relaxation, nb_relaxation, odd_cycle_relaxation, qstab, LinearInequality};
use crate::scalar::{best_rational_approx, round_to_denominator, simplest_rational_within, Rational, Scalar};
use crate::sdp::{BarrierOptions, BarrierResult, Lmi};

/// Numeric search used before exact certification.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SdpEngine {
    /// Log-barrier path following; also yields dual multipliers.
    #[default]
    Barrier,
    /// Alternating projections between the PSD cone and the lifted
    /// constraints.
    AlternatingProjections,
}

#[derive(Clone, Debug, PartialEq)]
pub struct LsPlusOptions {
    pub tol: f64,
    pub max_denominator: u64,
    pub max_denominator_cap: u64,
    pub max_newton: usize,
    pub nb_cap: usize,
    pub engine: SdpEngine,
}

impl Default for LsPlusOptions {
    fn default() -> Self {
        Self::from_config(&Config::default())
    }
}

impl LsPlusOptions {
    pub fn from_config(cfg: &Config) -> Self {
        Self {
            tol: cfg.tol,
            max_denominator: cfg.max_denominator,
            max_denominator_cap: cfg.max_denominator_cap,
            max_newton: cfg.sdp_max_iter,
            nb_cap: cfg.nb_cap,
            engine: SdpEngine::Barrier,
        }
    }

    pub(crate) fn denominators(&self) -> Vec<u64> {
        let mut out = Vec::new();
        let mut d = self.max_denominator.max(1);
        while d <= self.max_denominator_cap {
            out.push(d);
            match d.checked_mul(100) {
                Some(next) => d = next,
                None => break,
            }
        }
        if out.is_empty() {
            out.push(self.max_denominator_cap.max(1));
        }
        out
    }
}

/// Membership of `x` in `LS₊(FRAC(G))` with default options and tolerance
/// `tol`.
pub fn lsplus_member(g: &Graph, x: &[Rational], tol: f64) -> Result<Membership> {
    lsplus_member_with(g, x, &LsPlusOptions { tol, ..LsPlusOptions::default() })
}

/// Certify-or-abstain membership test.
///
/// "In" always carries a certificate accepted by exact verification; "out"
/// always carries an inequality valid for `LS₊(FRAC(G))` that `x` violates.
pub fn lsplus_member_with(g: &Graph, x: &[Rational], opts: &LsPlusOptions) -> Result<Membership> {
    if let Some(e) = frac_violation(g, x)? {
        return Ok(Membership::Out(e));
    }
    if let Some(e) = family_violation(g, x)? {
        return Ok(Membership::Out(e));
    }
    let red = Reduced::new(g, true);
    if let Fixed::Out(e) = solve_fixed(g, x, &red)? {
        return Ok(Membership::Out(e));
    }
    let fixed = red.fix_x(x);
    let mut eqs = tight_kernel_equations(g, x, &red);
    let mut last_reason = String::from("numeric search inconclusive");
    for _round in 0..=red.n + 1 {
        let Some(ctx) = Context::new(&red, x, &fixed, &eqs) else {
            last_reason = "kernel guess inconsistent with the lifted constraints".into();
            break;
        };
        let search = match opts.engine {
            SdpEngine::Barrier => ctx.barrier_search(opts),
            SdpEngine::AlternatingProjections => ctx.projection_search(opts),
        };
        let Some(search) = search else {
            last_reason = "numeric search failed to start".into();
            break;
        };
        if let Some(cert) = ctx.try_round(g, &search.t, opts) {
            return Ok(Membership::In(cert));
        }
        if search.margin < -opts.tol {
            if let Some(dual) = &search.dual {
                if let Some(e) = semidefinite_farkas(&red, x, &fixed, &ctx, dual)? {
                    return Ok(Membership::Out(e));
                }
            }
            last_reason = format!("numeric margin {:.3e} but no exact separating certificate", search.margin);
            break;
        }
        // Near the boundary: guess a common kernel vector and restrict to it.
        let guessed = ctx.kernel_guess(&search.t, opts.tol);
        if guessed.is_empty() {
            last_reason = format!("numeric margin {:.3e}, rounding failed", search.margin);
            break;
        }
        let before = eqs.len();
        for w in guessed {
            eqs.extend(kernel_equations(&red, x, &w));
        }
        if eqs.len() == before {
            break;
        }
    }
    if g.n() <= opts.nb_cap {
        if let Some(i) = nb_relaxation(g, opts.nb_cap)?.violated_by(x) {
            return Ok(Membership::Out(OutEvidence {
                source: EvidenceSource::NearBipartite,
                violation: i.violation(x),
                inequality: i.clone(),
            }));
        }
    }
    Ok(Membership::Unknown { reason: last_reason })
}

/// Clique and odd-cycle inequalities, both valid for `LS₊(FRAC(G))`.
fn family_violation(g: &Graph, x: &[Rational]) -> Result<Option<OutEvidence>> {
    if let Some(i) = qstab(g).violated_by(x) {
        return Ok(Some(OutEvidence { source: EvidenceSource::Clique, violation: i.violation(x), inequality: i.clone() }));
    }
    Ok(odd_cycle_relaxation(g)?.violated_by(x).map(|i| OutEvidence {
        source: EvidenceSource::OddCycle,
        violation: i.violation(x),
        inequality: i.clone(),
    }))
}

/// `Σ_j Y_ij w_j = 0` for every row `i`, as equations `coef·z = rhs`.
fn kernel_equations(red: &Reduced, x: &[Rational], w: &[Rational]) -> Vec<(Vec<Rational>, Rational)> {
    let d = red.n + 1;
    let m = red.num_vars();
    (0..d)
        .map(|i| {
            let mut coef = vec![Rational::zero(); m];
            let mut rhs = Rational::zero();
            for (j, wj) in w.iter().enumerate() {
                if wj.is_zero() {
                    continue;
                }
                match &red.entries[i][j] {
                    Entry::Const(v) => rhs -= v * wj,
                    Entry::X(k) => rhs -= &x[*k] * wj,
                    Entry::Var(k) => coef[*k] += wj,
                }
            }
            (coef, rhs)
        })
        .filter(|(c, r)| !(c.iter().all(Zero::is_zero) && r.is_zero()))
        .collect()
}

/// If `aᵀx = β` for an inequality of `K`, the lifted constraints force
/// `Y·(β, −a) = 0`.
fn tight_kernel_equations(g: &Graph, x: &[Rational], red: &Reduced) -> Vec<(Vec<Rational>, Rational)> {
    let mut eqs = Vec::new();
    for ineq in &frac_relaxation(g).inequalities {
        if !ineq.violation(x).is_zero() {
            continue;
        }
        let mut w = vec![ineq.beta.clone()];
        w.extend(ineq.a.iter().map(|a| -a.clone()));
        eqs.extend(kernel_equations(red, x, &w));
    }
    eqs
}

struct Search {
    t: Vec<f64>,
    margin: f64,
    dual: Option<BarrierResult<f64>>,
}

/// The feasible set restricted to an affine space `z = z0 + N t` and to the
/// complement of the common kernel of all `Y(z)` on it.
struct Context<'a> {
    red: &'a Reduced,
    x: &'a [Rational],
    z0: Vec<Rational>,
    basis: Vec<Vec<Rational>>,
    /// Columns span the complement of the common kernel.
    v: Matrix<Rational>,
    lmi: Lmi<f64>,
}

impl<'a> Context<'a> {
    fn new(red: &'a Reduced, x: &'a [Rational], fixed: &FixedRows, eqs: &[(Vec<Rational>, Rational)]) -> Option<Self> {
        let m = red.num_vars();
        let (z0, basis) = affine_solution(eqs, m)?;
        let y0 = red.matrix(x, &z0);
        let dirs: Vec<Matrix<Rational>> = basis.iter().map(|b| direction_matrix(red, b)).collect();
        let d = red.n + 1;
        let mut stack = y0.to_rows();
        for dm in &dirs {
            stack.extend(dm.to_rows());
        }
        let (span, _) = rref(&stack, d);
        let r = span.len();
        let v = Matrix::from_fn(d, r, |i, j| span[j][i].clone());
        let vt = v.transpose();
        let project = |a: &Matrix<Rational>| vt.mul(a).mul(&v).map(Scalar::to_f64);
        let mut rows = Vec::new();
        for (coeffs, rhs) in &fixed.rows {
            let dense = dense(coeffs, m);
            let h = dot(&dense, &z0) - rhs;
            let g: Vec<(usize, f64)> = basis
                .iter()
                .enumerate()
                .map(|(j, b)| (j, dot(&dense, b)))
                .filter(|(_, c)| !c.is_zero())
                .map(|(j, c)| (j, c.to_f64()))
                .collect();
            if g.is_empty() {
                if h.is_negative() {
                    return None;
                }
                continue;
            }
            rows.push((g, h.to_f64()));
        }
        let lmi = Lmi { f0: project(&y0), fs: dirs.iter().map(project).collect(), rows, objective: vec![0.0; basis.len()] };
        Some(Self { red, x, z0, basis, v, lmi })
    }

    fn z_at(&self, t: &[Rational]) -> Vec<Rational> {
        let mut z = self.z0.clone();
        for (b, tj) in self.basis.iter().zip(t) {
            for (zk, bk) in z.iter_mut().zip(b) {
                *zk += bk * tj;
            }
        }
        z
    }

    /// Phase I: maximize `s` with `F(t) − sI ⪰ 0` and every row `≥ s`.
    fn phase_one(&self) -> Lmi<f64> {
        let k = self.lmi.num_vars();
        let r = self.lmi.f0.rows();
        let mut fs = self.lmi.fs.clone();
        fs.push(Matrix::<f64>::identity(r).scale(&-1.0));
        let rows = self
            .lmi
            .rows
            .iter()
            .map(|(g, h)| {
                let mut g = g.clone();
                g.push((k, -1.0));
                (g, *h)
            })
            .collect();
        let mut objective = vec![0.0; k];
        objective.push(1.0);
        Lmi { f0: self.lmi.f0.clone(), fs, rows, objective }
    }

    fn margin_at(&self, t: &[f64]) -> f64 {
        let lam = symmetric_eigen(&self.lmi.matrix_at(t)).min_value();
        self.lmi.slacks(t).into_iter().fold(lam, f64::min)
    }

    fn barrier_search(&self, opts: &LsPlusOptions) -> Option<Search> {
        let p1 = self.phase_one();
        let k = self.lmi.num_vars();
        let mut start = vec![0.0; k + 1];
        start[k] = self.margin_at(&start[..k]) - 1.0;
        let bopts = BarrierOptions { gap_tol: opts.tol * 1e-3, max_newton: opts.max_newton, ..BarrierOptions::default() };
        let tol = opts.tol;
        let res = p1
            .maximize(&start, &bopts, |v, _, ub| {
                let s = v[k];
                (s > 0.0 && s >= 0.5 * ub) || ub < -10.0 * tol
            })
            .ok()?;
        let t = res.v[..k].to_vec();
        let margin = res.v[k].max(self.margin_at(&t));
        let margin = if res.upper_bound < -opts.tol { res.upper_bound.min(margin) } else { margin };
        Some(Search { t, margin, dual: Some(res) })
    }

    fn projection_search(&self, opts: &LsPlusOptions) -> Option<Search> {
        let k = self.lmi.num_vars();
        let out = alternating_projections(&self.lmi, &vec![0.0; k], opts.tol.sqrt(), 20 * opts.max_newton);
        Some(Search { margin: out.margin, t: out.t, dual: None })
    }

    fn try_round(&self, g: &Graph, t: &[f64], opts: &LsPlusOptions) -> Option<LiftCertificate> {
        let check = |z: Vec<Rational>| {
            let cert = LiftCertificate {
                graph: g.clone(),
                x: self.x.to_vec(),
                y: self.red.matrix(self.x, &z),
                kind: CertificateKind::MPlus,
            };
            cert.verify().passed.then_some(cert)
        };
        for den in opts.denominators() {
            let tr: Vec<Rational> = t.iter().map(|&v| best_rational_approx(v, den)).collect();
            if let Some(c) = check(self.z_at(&tr)) {
                return Some(c);
            }
        }
        let zf: Vec<f64> = (0..self.z0.len())
            .map(|i| self.z0[i].to_f64() + self.basis.iter().zip(t).map(|(b, tj)| b[i].to_f64() * tj).sum::<f64>())
            .collect();
        for eps in [1e-9, 1e-7] {
            if let Some(c) = check(zf.iter().map(|&v| simplest_rational_within(v, eps)).collect()) {
                return Some(c);
            }
        }
        None
    }

    /// Rational basis of the numerically singular directions of `F(t)`,
    /// mapped back to `Y` coordinates.
    fn kernel_guess(&self, t: &[f64], tol: f64) -> Vec<Vec<Rational>> {
        let f = self.lmi.matrix_at(t);
        let eig = symmetric_eigen(&f);
        let scale = eig.values.iter().fold(1.0f64, |m, v| m.max(v.abs()));
        let thresh = tol.sqrt().max(1e-7) * scale;
        let vf = self.v.map(Scalar::to_f64);
        let r = f.rows();
        let kernel: Vec<Vec<f64>> = (0..r)
            .filter(|&j| eig.values[j] < thresh)
            .map(|j| vf.mul_vec(&eig.vectors.column(j)))
            .collect();
        if kernel.is_empty() {
            return Vec::new();
        }
        let d = vf.rows();
        let (canon, _) = rref(&kernel, d);
        canon
            .iter()
            .map(|row| row.iter().map(|&v| simplest_rational_within(v, 1e-6)).collect())
            .filter(|w: &Vec<Rational>| w.iter().any(|v| !v.is_zero()))
            .collect()
    }
}

fn dense(coeffs: &[(usize, Rational)], m: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); m];
    for (k, c) in coeffs {
        v[*k] = c.clone();
    }
    v
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::zero(), |acc, (x, y)| acc + x * y)
}

/// `Σ_k b_k ∂Y/∂z_k`.
fn direction_matrix(red: &Reduced, b: &[Rational]) -> Matrix<Rational> {
    let d = red.n + 1;
    Matrix::from_fn(d, d, |i, j| match &red.entries[i][j] {
        Entry::Var(k) => b[*k].clone(),
        _ => Rational::zero(),
    })
}

/// A particular solution and a null-space basis of `E z = e`.
fn affine_solution(eqs: &[(Vec<Rational>, Rational)], m: usize) -> Option<(Vec<Rational>, Vec<Vec<Rational>>)> {
    let aug: Vec<Vec<Rational>> = eqs
        .iter()
        .map(|(c, r)| {
            let mut row = c.clone();
            row.push(r.clone());
            row
        })
        .collect();
    let (red, pivots) = rref(&aug, m + 1);
    if pivots.contains(&m) {
        return None;
    }
    let mut z0 = vec![Rational::zero(); m];
    for (row, &p) in red.iter().zip(&pivots) {
        z0[p] = row[m].clone();
    }
    let coeffs: Vec<Vec<Rational>> = eqs.iter().map(|(c, _)| c.clone()).collect();
    let basis = if coeffs.is_empty() {
        (0..m).map(|k| (0..m).map(|i| if i == k { Rational::one() } else { Rational::zero() }).collect()).collect()
    } else {
        nullspace(&coeffs, m)
    };
    Some((z0, basis))
}

/// Exact infeasibility proof from approximate dual multipliers.
///
/// With `S ⪰ 0` and `λ ≥ 0`, `⟨S, Y(z)⟩ + Σ λ_r (a_r·z − b_r) ≥ 0` for every
/// feasible `z`. If the `z` coefficients are all `≤ 0` and the constant part
/// is negative, no feasible `z ≥ 0` exists; the constant part is affine in
/// `x` and gives an inequality valid for `LS₊(FRAC(G))`.
fn semidefinite_farkas(
    red: &Reduced,
    x: &[Rational],
    fixed: &FixedRows,
    ctx: &Context<'_>,
    dual: &BarrierResult<f64>,
) -> Result<Option<OutEvidence>> {
    let vf = ctx.v.map(Scalar::to_f64);
    let s_num = vf.mul(&dual.dual_matrix).mul(&vf.transpose());
    let clipped = symmetric_eigen(&s_num).compose(|l| l.max(0.0));
    let peak = (0..clipped.rows()).fold(0.0f64, |m, i| m.max(clipped[(i, i)]));
    if !(peak > 0.0) {
        return Ok(None);
    }
    let d = red.n + 1;
    let base = Matrix::from_fn(d, d, |i, j| round_to_denominator(clipped[(i, j)] / peak, 1_000_000));
    let base = Matrix::from_fn(d, d, |i, j| (&base[(i, j)] + &base[(j, i)]) / Rational::from_integer(2.into()));
    for shift in [0i64, 1, 10, 100, 1000] {
        let delta = Rational::new(shift.into(), 1_000_000.into());
        let s = Matrix::from_fn(d, d, |i, j| if i == j { &base[(i, j)] + &delta } else { base[(i, j)].clone() });
        if !ldl_psd(&s).psd {
            continue;
        }
        if let Some(e) = farkas_with_matrix(red, x, fixed, &s)? {
            return Ok(Some(e));
        }
    }
    Ok(None)
}

fn farkas_with_matrix(red: &Reduced, x: &[Rational], fixed: &FixedRows, s: &Matrix<Rational>) -> Result<Option<OutEvidence>> {
    let m = red.num_vars();
    let d = red.n + 1;
    let nrows = fixed.rows.len();
    // ⟨S, ∂Y/∂z_k⟩ and the x-dependent constant ⟨S, Y_c(x)⟩.
    let mut sz = vec![Rational::zero(); m];
    let mut sx = vec![Rational::zero(); red.n];
    let mut sc = Rational::zero();
    for i in 0..d {
        for j in 0..d {
            match &red.entries[i][j] {
                Entry::Const(v) => sc += v * &s[(i, j)],
                Entry::X(k) => sx[*k] += &s[(i, j)],
                Entry::Var(k) => sz[*k] += &s[(i, j)],
            }
        }
    }
    let mut lp = LinearProgram::new(nrows);
    let mut cols: Vec<Vec<(usize, Rational)>> = vec![Vec::new(); m];
    for (r, (coeffs, _)) in fixed.rows.iter().enumerate() {
        for (k, a) in coeffs {
            cols[*k].push((r, a.clone()));
        }
    }
    for (k, col) in cols.into_iter().enumerate() {
        lp.add(col, Relation::Le, -sz[k].clone());
    }
    lp.add((0..nrows).map(|r| (r, Rational::one())).collect(), Relation::Le, Rational::from_integer(1_000_000.into()));
    let objective: Vec<Rational> = fixed.rows.iter().map(|(_, b)| -b.clone()).collect();
    let LpOutcome::Optimal { x: lambda, .. } = lp.minimize(&objective) else { return Ok(None) };
    let mut a: Vec<Rational> = sx.iter().map(|v| -v.clone()).collect();
    let mut beta = sc;
    for (lam, &origin) in lambda.iter().zip(&fixed.origin) {
        if lam.is_zero() {
            continue;
        }
        let row = &red.rows[origin];
        for (i, dv) in &row.x {
            a[*i] -= lam * dv;
        }
        beta += lam * &row.c;
    }
    let inequality = LinearInequality::new(a, beta);
    let violation = inequality.violation(x);
    if !violation.is_positive() {
        return Ok(None);
    }
    Ok(Some(OutEvidence { source: EvidenceSource::SemidefiniteFarkas, inequality, violation }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, wheel};
    use crate::scalar::{int, rat};

    #[test]
    fn stable_sets_are_in() {
        let g = cycle(5).unwrap();
        for s in g.stable_sets() {
            let x: Vec<Rational> = (0..5).map(|i| if s >> i & 1 == 1 { int(1) } else { int(0) }).collect();
            let m = lsplus_member(&g, &x, 1e-8).unwrap();
            assert!(m.is_in(), "{x:?}: {m:?}");
        }
    }

    #[test]
    fn c5_half_is_out() {
        let g = cycle(5).unwrap();
        let Membership::Out(e) = lsplus_member(&g, &vec![rat(1, 2); 5], 1e-8).unwrap() else { panic!() };
        assert_eq!(e.source, EvidenceSource::OddCycle);
        assert_eq!(e.inequality, LinearInequality::set_sum(5, 0b11111, 2));
    }

    #[test]
    fn interior_points_certify() {
        let g = cycle(5).unwrap();
        let m = lsplus_member(&g, &vec![rat(1, 3); 5], 1e-8).unwrap();
        let Membership::In(c) = m else { panic!("{m:?}") };
        assert!(c.verify().passed);
        // Edge-tight point: forced kernel directions.
        let x = vec![rat(1, 2), rat(1, 2), int(0), rat(1, 2), int(0)];
        assert!(lsplus_member(&g, &x, 1e-8).unwrap().is_in());
        let w = wheel(5).unwrap();
        let mut x = vec![rat(1, 10)];
        x.extend(vec![rat(1, 3); 5]);
        let m = lsplus_member(&w, &x, 1e-8).unwrap();
        assert!(m.is_in(), "{m:?}");
    }

    #[test]
    fn complete_graph_points() {
        let g = complete(4).unwrap();
        assert!(lsplus_member(&g, &vec![rat(1, 4); 4], 1e-8).unwrap().is_in());
        assert!(lsplus_member(&g, &vec![rat(1, 3); 4], 1e-8).unwrap().is_out());
    }

    #[test]
    fn projection_engine_certifies_interior_point() {
        let g = cycle(5).unwrap();
        let opts = LsPlusOptions { engine: SdpEngine::AlternatingProjections, ..LsPlusOptions::default() };
        let m = lsplus_member_with(&g, &vec![rat(1, 3); 5], &opts).unwrap();
        assert!(m.is_in(), "{m:?}");
    }
}

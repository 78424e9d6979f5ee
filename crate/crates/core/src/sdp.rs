//! Log-barrier path following for small linear matrix inequalities
//!
//! ```text
//! maximize cᵀv  subject to  F(v) = F_0 + Σ v_k F_k ≻ 0,  h_r + g_rᵀv > 0.
//! ```
//!
//! Only used to locate points; every claim built on the result is checked
//! in exact arithmetic afterwards.

use num_traits::Float;

use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
pub struct Lmi<T> {
    pub f0: Matrix<T>,
    pub fs: Vec<Matrix<T>>,
    /// Rows `h_r + g_rᵀv ≥ 0` stored as `(g_r, h_r)` with sparse `g_r`.
    pub rows: Vec<(Vec<(usize, T)>, T)>,
    pub objective: Vec<T>,
}

#[derive(Clone, Debug)]
pub struct BarrierOptions<T> {
    /// Stop once the duality gap bound `ν/τ` drops below this.
    pub gap_tol: T,
    pub max_newton: usize,
    pub tau0: T,
    pub growth: T,
}

impl<T: Float> Default for BarrierOptions<T> {
    fn default() -> Self {
        Self {
            gap_tol: T::from(1e-9).unwrap(),
            max_newton: 200,
            tau0: T::one(),
            growth: T::from(8.0).unwrap(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct PathPoint<T> {
    pub v: Vec<T>,
    pub tau: T,
    pub value: T,
}

#[derive(Clone, Debug)]
pub struct BarrierResult<T> {
    pub v: Vec<T>,
    pub value: T,
    /// `value + ν/τ` at the last centered point.
    pub upper_bound: T,
    /// One point per barrier stage, in order of increasing `τ`.
    pub path: Vec<PathPoint<T>>,
    /// `F(v)⁻¹/τ` at the last centered point.
    pub dual_matrix: Matrix<T>,
    /// `1/(τ·slack_r)` at the last centered point.
    pub dual_rows: Vec<T>,
    pub converged: bool,
}

/// Lower Cholesky factor of a symmetric positive definite matrix.
pub fn cholesky<T: Scalar + Float>(a: &Matrix<T>) -> Option<Matrix<T>> {
    let n = a.rows();
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for k in 0..j {
            d = d - l[(j, k)] * l[(j, k)];
        }
        if !(d > T::zero()) || !d.is_finite() {
            return None;
        }
        let d = d.sqrt();
        l[(j, j)] = d;
        for i in j + 1..n {
            let mut s = a[(i, j)];
            for k in 0..j {
                s = s - l[(i, k)] * l[(j, k)];
            }
            l[(i, j)] = s / d;
        }
    }
    Some(l)
}

/// `A⁻¹` from the Cholesky factor of `A`.
pub fn cholesky_inverse<T: Scalar + Float>(l: &Matrix<T>) -> Matrix<T> {
    let n = l.rows();
    let mut linv = Matrix::zeros(n, n);
    for c in 0..n {
        for i in c..n {
            let mut s = if i == c { T::one() } else { T::zero() };
            for k in c..i {
                s = s - l[(i, k)] * linv[(k, c)];
            }
            linv[(i, c)] = s / l[(i, i)];
        }
    }
    linv.transpose().mul(&linv)
}

impl<T: Scalar + Float> Lmi<T> {
    pub fn num_vars(&self) -> usize {
        self.fs.len()
    }

    pub fn matrix_at(&self, v: &[T]) -> Matrix<T> {
        let mut m = self.f0.clone();
        let d = m.rows();
        for (k, f) in self.fs.iter().enumerate() {
            if v[k] == T::zero() {
                continue;
            }
            for i in 0..d {
                for j in 0..d {
                    m[(i, j)] = m[(i, j)] + v[k] * f[(i, j)];
                }
            }
        }
        m
    }

    pub fn slacks(&self, v: &[T]) -> Vec<T> {
        self.rows.iter().map(|(g, h)| g.iter().fold(*h, |acc, &(k, a)| acc + a * v[k])).collect()
    }

    pub fn is_strictly_feasible(&self, v: &[T]) -> bool {
        self.slacks(v).iter().all(|&s| s > T::zero()) && cholesky(&self.matrix_at(v)).is_some()
    }

    /// Barrier parameter `ν = dim F + #rows`.
    fn nu(&self) -> T {
        T::from(self.f0.rows() + self.rows.len()).unwrap()
    }

    fn dot_objective(&self, v: &[T]) -> T {
        self.objective.iter().zip(v).fold(T::zero(), |acc, (&c, &x)| acc + c * x)
    }

    /// `−τ cᵀv − log det F(v) − Σ log slack_r`, or `None` outside the domain.
    fn barrier(&self, v: &[T], tau: T) -> Option<T> {
        let l = cholesky(&self.matrix_at(v))?;
        let mut phi = -tau * self.dot_objective(v);
        for i in 0..l.rows() {
            phi = phi - (l[(i, i)] * l[(i, i)]).ln();
        }
        for s in self.slacks(v) {
            if !(s > T::zero()) {
                return None;
            }
            phi = phi - s.ln();
        }
        Some(phi)
    }

    fn newton_step(&self, v: &[T], tau: T) -> Option<(Vec<T>, Vec<T>)> {
        let m = self.num_vars();
        let l = cholesky(&self.matrix_at(v))?;
        let w = cholesky_inverse(&l);
        let p: Vec<Matrix<T>> = self.fs.iter().map(|f| w.mul(f)).collect();
        let d = w.rows();
        let mut grad = vec![T::zero(); m];
        let mut hess = Matrix::zeros(m, m);
        for k in 0..m {
            let tr = (0..d).fold(T::zero(), |acc, i| acc + p[k][(i, i)]);
            grad[k] = -tau * self.objective[k] - tr;
            for j in 0..=k {
                let mut s = T::zero();
                for a in 0..d {
                    for b in 0..d {
                        s = s + p[k][(a, b)] * p[j][(b, a)];
                    }
                }
                hess[(k, j)] = s;
                hess[(j, k)] = s;
            }
        }
        for ((g, _), s) in self.rows.iter().zip(self.slacks(v)) {
            for &(k, a) in g {
                grad[k] = grad[k] - a / s;
                for &(j, b) in g {
                    hess[(k, j)] = hess[(k, j)] + a * b / (s * s);
                }
            }
        }
        let rhs: Vec<T> = grad.iter().map(|&g| -g).collect();
        let step = solve(&hess, &rhs).or_else(|| {
            let scale = (0..m).fold(T::zero(), |acc, i| acc.max(hess[(i, i)].abs()));
            let reg = T::from(1e-12).unwrap() * (T::one() + scale);
            for i in 0..m {
                hess[(i, i)] = hess[(i, i)] + reg;
            }
            solve(&hess, &rhs)
        })?;
        Some((step, grad))
    }

    /// Approximately minimize the barrier at fixed `τ`. Returns `false` when
    /// no descent step can be taken.
    fn center(&self, v: &mut Vec<T>, tau: T, max_newton: usize) -> bool {
        let half = T::from(0.5).unwrap();
        let armijo = T::from(0.25).unwrap();
        let tiny = T::from(1e-14).unwrap();
        for _ in 0..max_newton {
            let Some((step, grad)) = self.newton_step(v, tau) else { return false };
            let dec = -grad.iter().zip(&step).fold(T::zero(), |acc, (&g, &s)| acc + g * s);
            if !(dec > T::from(2e-10).unwrap()) {
                return true;
            }
            let phi0 = self.barrier(v, tau).expect("current point is interior");
            let mut alpha = T::one();
            loop {
                let trial: Vec<T> = v.iter().zip(&step).map(|(&x, &s)| x + alpha * s).collect();
                if let Some(phi) = self.barrier(&trial, tau) {
                    if phi <= phi0 - armijo * alpha * dec {
                        *v = trial;
                        break;
                    }
                }
                alpha = alpha * half;
                if alpha < tiny {
                    return false;
                }
            }
        }
        true
    }

    /// Follow the central path from a strictly feasible `start`.
    ///
    /// `stop(v, value, upper_bound)` is consulted after every stage.
    pub fn maximize(
        &self,
        start: &[T],
        opts: &BarrierOptions<T>,
        mut stop: impl FnMut(&[T], T, T) -> bool,
    ) -> Result<BarrierResult<T>> {
        if start.len() != self.num_vars() || self.objective.len() != self.num_vars() {
            return Err(Error::InvalidParameter("barrier start or objective has wrong length".into()));
        }
        if !self.is_strictly_feasible(start) {
            return Err(Error::Precondition("barrier start point is not strictly feasible".into()));
        }
        let nu = self.nu();
        let mut v = start.to_vec();
        let mut tau = opts.tau0;
        let mut path = Vec::new();
        let mut converged = false;
        let mut last_tau = tau;
        for _stage in 0..200 {
            let ok = self.center(&mut v, tau, opts.max_newton);
            if !ok && !path.is_empty() {
                break;
            }
            last_tau = tau;
            let value = self.dot_objective(&v);
            path.push(PathPoint { v: v.clone(), tau, value });
            let ub = value + nu / tau;
            if stop(&v, value, ub) {
                converged = true;
                break;
            }
            if nu / tau < opts.gap_tol {
                converged = true;
                break;
            }
            tau = tau * opts.growth;
        }
        let last = path.last().expect("at least one stage").clone();
        let w = cholesky_inverse(&cholesky(&self.matrix_at(&last.v)).expect("interior"));
        let inv_tau = T::one() / last_tau;
        Ok(BarrierResult {
            value: last.value,
            upper_bound: last.value + nu / last_tau,
            dual_matrix: w.scale(&inv_tau),
            dual_rows: self.slacks(&last.v).iter().map(|&s| inv_tau / s).collect(),
            v: last.v,
            path,
            converged,
        })
    }
}

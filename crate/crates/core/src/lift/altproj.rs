use num_traits::Float;

use crate::linalg::{solve, symmetric_eigen, Matrix};
use crate::scalar::Scalar;
use crate::sdp::Lmi;

#[derive(Clone, Debug)]
pub struct AltProjOutcome<T> {
    pub t: Vec<T>,
    /// `min(λ_min(F(t)), min_r slack_r)` at the returned point.
    pub margin: T,
    pub iterations: usize,
    pub converged: bool,
}

/// Alternate between the shifted PSD cone `{M ⪰ εI}` (eigenvalue clipping)
/// and the affine image `{F(t)}` (least squares in `t`), then project `t`
/// onto each violated row shifted by `ε`. Stops once `F(t) ⪰ 0` and all rows
/// hold with margin at least `ε/2`.
pub fn alternating_projections<T: Scalar + Float>(
    lmi: &Lmi<T>,
    start: &[T],
    eps: T,
    max_iter: usize,
) -> AltProjOutcome<T> {
    let k = lmi.num_vars();
    let half = T::from(0.5).unwrap();
    let margin_of = |t: &[T]| {
        let lam = symmetric_eigen(&lmi.matrix_at(t)).min_value();
        lmi.slacks(t).into_iter().fold(lam, T::min)
    };
    let mut t = start.to_vec();
    let gram = Matrix::from_fn(k, k, |a, b| frob(&lmi.fs[a], &lmi.fs[b]));
    for it in 0..max_iter {
        let margin = margin_of(&t);
        if margin >= eps * half {
            return AltProjOutcome { t, margin, iterations: it, converged: true };
        }
        let clipped = symmetric_eigen(&lmi.matrix_at(&t)).compose(|l| l.max(eps));
        if k > 0 {
            let target = Matrix::from_fn(clipped.rows(), clipped.cols(), |i, j| clipped[(i, j)] - lmi.f0[(i, j)]);
            let rhs: Vec<T> = lmi.fs.iter().map(|f| frob(f, &target)).collect();
            if let Some(next) = solve(&gram, &rhs) {
                t = next;
            }
        }
        for (g, h) in &lmi.rows {
            let s = g.iter().fold(*h, |acc, &(j, a)| acc + a * t[j]);
            if s < eps {
                let norm = g.iter().fold(T::zero(), |acc, &(_, a)| acc + a * a);
                if norm > T::zero() {
                    let step = (eps - s) / norm;
                    for &(j, a) in g {
                        t[j] = t[j] + step * a;
                    }
                }
            }
        }
    }
    let margin = margin_of(&t);
    AltProjOutcome { converged: margin >= eps * half, t, margin, iterations: max_iter }
}

fn frob<T: Scalar + Float>(a: &Matrix<T>, b: &Matrix<T>) -> T {
    let mut s = T::zero();
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            s = s + a[(i, j)] * b[(i, j)];
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn finds_interior_point() {
        // [[1, v], [v, 1]] ⪰ 0 and v ≥ 1/2, starting outside.
        let lmi = Lmi {
            f0: Matrix::<f64>::identity(2),
            fs: vec![Matrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]])],
            rows: vec![(vec![(0, 1.0)], -0.5)],
            objective: vec![0.0],
        };
        let out = alternating_projections(&lmi, &[3.0], 1e-3, 1000);
        assert!(out.converged, "{out:?}");
        assert!(out.t[0] >= 0.5 && out.t[0] <= 1.0);
    }

    #[test]
    fn reports_failure_when_empty() {
        let lmi = Lmi {
            f0: Matrix::<f64>::identity(2),
            fs: vec![Matrix::from_rows(vec![vec![0.0, 1.0], vec![1.0, 0.0]])],
            rows: vec![(vec![(0, 1.0)], -2.0)],
            objective: vec![0.0],
        };
        let out = alternating_projections(&lmi, &[0.0], 1e-3, 200);
        assert!(!out.converged);
        assert!(out.margin < 0.0);
    }
}

use num_traits::Float;

use super::Matrix;
use crate::scalar::Scalar;

/// Eigendecomposition `A = V diag(values) Vᵀ` of a symmetric matrix.
#[derive(Clone, Debug)]
pub struct SymmetricEigen<T> {
    /// Eigenvalues in ascending order.
    pub values: Vec<T>,
    /// Column `j` is the unit eigenvector for `values[j]`.
    pub vectors: Matrix<T>,
}

impl<T: Scalar + Float> SymmetricEigen<T> {
    pub fn min_value(&self) -> T {
        self.values.first().copied().unwrap_or_else(T::zero)
    }

    /// Reassemble `V f(Λ) Vᵀ`.
    pub fn compose(&self, f: impl Fn(T) -> T) -> Matrix<T> {
        let n = self.values.len();
        let fv: Vec<T> = self.values.iter().map(|&l| f(l)).collect();
        let v = &self.vectors;
        Matrix::from_fn(n, n, |i, j| {
            (0..n).fold(T::zero(), |acc, k| acc + v[(i, k)] * fv[k] * v[(j, k)])
        })
    }
}

/// Cyclic Jacobi eigenvalue iteration.
pub fn symmetric_eigen<T: Scalar + Float>(a: &Matrix<T>) -> SymmetricEigen<T> {
    assert!(a.is_square(), "eigendecomposition of non-square matrix");
    let n = a.rows();
    let mut m = a.clone();
    let mut v = Matrix::<T>::identity(n);
    let two = T::one() + T::one();

    for _sweep in 0..100 {
        let mut off = T::zero();
        let mut total = T::zero();
        for i in 0..n {
            for j in 0..n {
                let s = m[(i, j)] * m[(i, j)];
                total = total + s;
                if i != j {
                    off = off + s;
                }
            }
        }
        if off <= T::epsilon() * T::epsilon() * total || off == T::zero() {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = m[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let theta = (m[(q, q)] - m[(p, p)]) / (two * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + T::one()).sqrt());
                let t = if theta == T::zero() { T::one() } else { t };
                let c = T::one() / (t * t + T::one()).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m[(k, p)];
                    let mkq = m[(k, q)];
                    m[(k, p)] = c * mkp - s * mkq;
                    m[(k, q)] = s * mkp + c * mkq;
                }
                for k in 0..n {
                    let mpk = m[(p, k)];
                    let mqk = m[(q, k)];
                    m[(p, k)] = c * mpk - s * mqk;
                    m[(q, k)] = s * mpk + c * mqk;
                }
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&i, &j| m[(i, i)].partial_cmp(&m[(j, j)]).unwrap_or(std::cmp::Ordering::Equal));
    let values = idx.iter().map(|&i| m[(i, i)]).collect();
    let vectors = Matrix::from_fn(n, n, |r, c| v[(r, idx[c])]);
    SymmetricEigen { values, vectors }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_by_two() {
        let a = Matrix::from_rows(vec![vec![2.0, 1.0], vec![1.0, 2.0]]);
        let e = symmetric_eigen(&a);
        assert!((e.values[0] - 1.0f64).abs() < 1e-12);
        assert!((e.values[1] - 3.0f64).abs() < 1e-12);
        let back = e.compose(|l| l);
        for i in 0..2 {
            for j in 0..2 {
                assert!((back[(i, j)] - a[(i, j)]).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn f32_works() {
        let a = Matrix::from_rows(vec![vec![4.0f32, 0.0], vec![0.0, -1.0]]);
        let e = symmetric_eigen(&a);
        assert_eq!(e.values, vec![-1.0, 4.0]);
    }
}

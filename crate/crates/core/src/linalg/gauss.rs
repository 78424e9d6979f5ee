use super::Matrix;
use crate::scalar::Scalar;

/// Pivot row for column `col` among rows `from..`.
///
/// Exact types take the first nonzero entry; floating types take the
/// entry of largest magnitude.
fn pick_pivot<T: Scalar>(m: &Matrix<T>, col: usize, from: usize) -> Option<usize> {
    if T::EXACT {
        (from..m.rows()).find(|&r| !m[(r, col)].is_zero())
    } else {
        let best = (from..m.rows()).max_by(|&a, &b| {
            m[(a, col)]
                .abs()
                .partial_cmp(&m[(b, col)].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        (!m[(best, col)].is_negligible()).then_some(best)
    }
}

fn swap_rows<T: Scalar>(m: &mut Matrix<T>, a: usize, b: usize) {
    if a == b {
        return;
    }
    for j in 0..m.cols() {
        let tmp = m[(a, j)].clone();
        m[(a, j)] = m[(b, j)].clone();
        m[(b, j)] = tmp;
    }
}

/// Determinant by Gaussian elimination.
pub fn determinant<T: Scalar>(a: &Matrix<T>) -> T {
    assert!(a.is_square(), "determinant of non-square matrix");
    let n = a.rows();
    let mut m = a.clone();
    let mut det = T::one();
    for col in 0..n {
        let Some(p) = pick_pivot(&m, col, col) else {
            return T::zero();
        };
        if p != col {
            swap_rows(&mut m, p, col);
            det = -det;
        }
        let piv = m[(col, col)].clone();
        det = det * piv.clone();
        for r in col + 1..n {
            if m[(r, col)].is_zero() {
                continue;
            }
            let f = m[(r, col)].clone() / piv.clone();
            for c in col..n {
                let v = m[(r, c)].clone() - f.clone() * m[(col, c)].clone();
                m[(r, c)] = v;
            }
        }
    }
    det
}

/// Solve `a x = b` for square nonsingular `a`; `None` if singular.
pub fn solve<T: Scalar>(a: &Matrix<T>, b: &[T]) -> Option<Vec<T>> {
    assert!(a.is_square() && a.rows() == b.len(), "dimension mismatch");
    let n = a.rows();
    let mut m = Matrix::from_fn(n, n + 1, |i, j| if j < n { a[(i, j)].clone() } else { b[i].clone() });
    for col in 0..n {
        let p = pick_pivot(&m, col, col)?;
        swap_rows(&mut m, p, col);
        let piv = m[(col, col)].clone();
        for r in 0..n {
            if r == col || m[(r, col)].is_zero() {
                continue;
            }
            let f = m[(r, col)].clone() / piv.clone();
            for c in col..=n {
                let v = m[(r, c)].clone() - f.clone() * m[(col, c)].clone();
                m[(r, c)] = v;
            }
        }
    }
    Some((0..n).map(|i| m[(i, n)].clone() / m[(i, i)].clone()).collect())
}

/// Row rank of a list of vectors.
pub fn rank<T: Scalar>(rows: &[Vec<T>]) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let mut m = Matrix::from_rows(rows.to_vec());
    let mut r = 0;
    for col in 0..m.cols() {
        if r == m.rows() {
            break;
        }
        let Some(p) = pick_pivot(&m, col, r) else { continue };
        swap_rows(&mut m, p, r);
        let piv = m[(r, col)].clone();
        for i in r + 1..m.rows() {
            if m[(i, col)].is_zero() {
                continue;
            }
            let f = m[(i, col)].clone() / piv.clone();
            for c in col..m.cols() {
                let v = m[(i, c)].clone() - f.clone() * m[(r, c)].clone();
                m[(i, c)] = v;
            }
        }
        r += 1;
    }
    r
}

/// Reduced row echelon form of `rows` (each of length `cols`); returns the
/// nonzero rows and their pivot columns.
pub fn rref<T: Scalar>(rows: &[Vec<T>], cols: usize) -> (Vec<Vec<T>>, Vec<usize>) {
    if rows.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let mut m = Matrix::from_rows(rows.to_vec());
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..cols {
        if r == m.rows() {
            break;
        }
        let Some(p) = pick_pivot(&m, col, r) else { continue };
        swap_rows(&mut m, p, r);
        let piv = m[(r, col)].clone();
        for c in 0..cols {
            let v = m[(r, c)].clone() / piv.clone();
            m[(r, c)] = v;
        }
        for i in 0..m.rows() {
            if i == r || m[(i, col)].is_zero() {
                continue;
            }
            let f = m[(i, col)].clone();
            for c in 0..cols {
                let v = m[(i, c)].clone() - f.clone() * m[(r, c)].clone();
                m[(i, c)] = v;
            }
        }
        pivots.push(col);
        r += 1;
    }
    ((0..r).map(|i| m.row(i).to_vec()).collect(), pivots)
}

/// Basis of `{v : rows · v = 0}`.
pub fn nullspace<T: Scalar>(rows: &[Vec<T>], cols: usize) -> Vec<Vec<T>> {
    let (red, pivots) = rref(rows, cols);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![T::zero(); cols];
            v[f] = T::one();
            for (row, &p) in red.iter().zip(&pivots) {
                v[p] = -row[f].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    fn rm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn det_small() {
        assert_eq!(determinant(&rm(&[&[2, 1], &[1, 3]])), int(5));
        assert_eq!(determinant(&rm(&[&[0, 1], &[1, 0]])), int(-1));
        assert_eq!(determinant(&rm(&[&[1, 2], &[2, 4]])), int(0));
        let f = Matrix::from_rows(vec![vec![2.0, 1.0], vec![1.0, 3.0]]);
        assert!((determinant(&f) - 5.0f64).abs() < 1e-12);
    }

    #[test]
    fn solve_exact() {
        let a = rm(&[&[2, 1], &[1, 3]]);
        let x = solve(&a, &[int(1), int(2)]).unwrap();
        assert_eq!(x, vec![rat(1, 5), rat(3, 5)]);
        assert!(solve(&rm(&[&[1, 2], &[2, 4]]), &[int(1), int(1)]).is_none());
    }

    #[test]
    fn rank_counts() {
        let rows = vec![vec![int(1), int(0), int(1)], vec![int(2), int(0), int(2)], vec![int(0), int(1), int(0)]];
        assert_eq!(rank(&rows), 2);
        assert_eq!(rank::<Rational>(&[]), 0);
    }

    #[test]
    fn nullspace_basis() {
        let rows = vec![vec![int(1), int(1), int(0)], vec![int(0), int(0), int(1)]];
        let ns = nullspace(&rows, 3);
        assert_eq!(ns, vec![vec![int(-1), int(1), int(0)]]);
        assert_eq!(nullspace::<Rational>(&[], 2).len(), 2);
        let (red, piv) = rref(&rows, 3);
        assert_eq!(red.len(), 2);
        assert_eq!(piv, vec![0, 2]);
    }
}

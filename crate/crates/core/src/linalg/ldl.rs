use super::Matrix;
use crate::scalar::Scalar;

/// Outcome of an LDLᵀ factorization with greatest-pivot symmetric pivoting.
#[derive(Clone, Debug)]
pub struct PsdCheck<T> {
    pub psd: bool,
    /// Positive pivots in elimination order.
    pub pivots: Vec<T>,
    /// Index eliminated at each step.
    pub order: Vec<usize>,
    /// Number of positive pivots (equals the rank when `psd`).
    pub rank: usize,
    pub failure: Option<String>,
}

/// Decide positive semidefiniteness of a symmetric matrix.
///
/// At each step the largest remaining diagonal entry of the Schur complement
/// is eliminated. A negative maximum is a definitive failure; a zero maximum
/// means the remaining block must vanish entirely.
pub fn ldl_psd<T: Scalar>(a: &Matrix<T>) -> PsdCheck<T> {
    assert!(a.is_square(), "PSD test of non-square matrix");
    let n = a.rows();
    let mut s = a.clone();
    let mut remaining: Vec<usize> = (0..n).collect();
    let mut pivots = Vec::new();
    let mut order = Vec::new();

    let fail = |pivots: Vec<T>, order: Vec<usize>, msg: String| PsdCheck {
        psd: false,
        rank: pivots.len(),
        pivots,
        order,
        failure: Some(msg),
    };

    if !a.is_symmetric() {
        return fail(pivots, order, "matrix is not symmetric".into());
    }

    while !remaining.is_empty() {
        let (pos, &p) = remaining
            .iter()
            .enumerate()
            .max_by(|(_, &i), (_, &j)| {
                s[(i, i)].partial_cmp(&s[(j, j)]).unwrap_or(std::cmp::Ordering::Equal)
            })
            .expect("nonempty");
        let d = s[(p, p)].clone();
        if d.is_strictly_negative() {
            return fail(pivots, order, format!("negative pivot at index {p}"));
        }
        if d.is_negligible() {
            for &i in &remaining {
                for &j in &remaining {
                    if !s[(i, j)].is_negligible() {
                        return fail(
                            pivots,
                            order,
                            format!("zero pivot with nonzero residual entry ({i},{j})"),
                        );
                    }
                }
            }
            break;
        }
        remaining.swap_remove(pos);
        for &i in &remaining {
            if s[(i, p)].is_zero() {
                continue;
            }
            let f = s[(i, p)].clone() / d.clone();
            for &j in &remaining {
                if s[(p, j)].is_zero() {
                    continue;
                }
                let v = s[(i, j)].clone() - f.clone() * s[(p, j)].clone();
                s[(i, j)] = v;
            }
        }
        pivots.push(d);
        order.push(p);
    }

    PsdCheck { psd: true, rank: pivots.len(), pivots, order, failure: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, Rational};

    fn rm(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect())
    }

    #[test]
    fn psd_cases() {
        assert!(ldl_psd(&rm(&[&[2, 1], &[1, 2]])).psd);
        let singular = ldl_psd(&rm(&[&[1, 1], &[1, 1]]));
        assert!(singular.psd);
        assert_eq!(singular.rank, 1);
        assert!(!ldl_psd(&rm(&[&[1, 2], &[2, 1]])).psd);
        assert!(!ldl_psd(&rm(&[&[0, 1], &[1, 0]])).psd);
        assert!(!ldl_psd(&rm(&[&[-1]])).psd);
        assert!(!ldl_psd(&rm(&[&[1, 2], &[0, 1]])).psd);
        assert!(ldl_psd(&rm(&[&[0, 0], &[0, 0]])).psd);
    }
}

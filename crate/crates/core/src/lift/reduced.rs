//! The lift system after substituting everything it pins down: `Y_00 = 1`,
//! `Y_0i = Y_ii = x_i`, and `Y_ij = 0` on edges. What remains are the
//! non-edge entries `z` and inequalities affine in `(x, z)`.

use num_traits::{One, Signed, Zero};

use super::LiftSystem;
use crate::graph::Graph;
use crate::linalg::Matrix;
use crate::lp::Relation;
use crate::scalar::{Rational, Scalar};
use crate::RationalMatrix;

#[derive(Clone, Debug, PartialEq)]
pub(crate) enum Entry {
    Const(Rational),
    X(usize),
    Var(usize),
}

/// `z·coef + x·coef + c ≥ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub(crate) struct AffRow {
    pub z: Vec<(usize, Rational)>,
    pub x: Vec<(usize, Rational)>,
    pub c: Rational,
}

impl AffRow {
    pub fn x_constant(&self, x: &[Rational]) -> Rational {
        self.x.iter().fold(self.c.clone(), |acc, (i, a)| acc + a * &x[*i])
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Reduced {
    pub n: usize,
    pub entries: Vec<Vec<Entry>>,
    /// Matrix position of each free variable (upper triangle when symmetric).
    pub vars: Vec<(usize, usize)>,
    pub rows: Vec<AffRow>,
}

/// Rows with `x` fixed: `Σ coef·z ≥ rhs`.
#[derive(Clone, Debug)]
pub(crate) struct FixedRows {
    pub rows: Vec<(Vec<(usize, Rational)>, Rational)>,
    /// Index into [`Reduced::rows`] of each fixed row.
    pub origin: Vec<usize>,
    /// A row whose `z` part vanished and which `x` violates.
    pub violated: Option<usize>,
}

impl Reduced {
    pub fn new(g: &Graph, symmetric: bool) -> Self {
        let n = g.n();
        let d = n + 1;
        let mut vars = Vec::new();
        let mut entries = vec![vec![Entry::Const(Rational::zero()); d]; d];
        entries[0][0] = Entry::Const(Rational::one());
        for i in 1..d {
            entries[0][i] = Entry::X(i - 1);
            entries[i][0] = Entry::X(i - 1);
            entries[i][i] = Entry::X(i - 1);
        }
        for i in 1..d {
            for j in 1..d {
                if i == j || g.has_edge(i - 1, j - 1) || (symmetric && j < i) {
                    continue;
                }
                entries[i][j] = Entry::Var(vars.len());
                vars.push((i, j));
            }
        }
        if symmetric {
            for i in 1..d {
                for j in 1..i {
                    entries[i][j] = entries[j][i].clone();
                }
            }
        }
        let sys = if symmetric {
            LiftSystem::build(g, &vec![Rational::zero(); n])
        } else {
            LiftSystem::build_nonsymmetric(g, &vec![Rational::zero(); n])
        }
        .expect("dimensions match");
        let mut rows = Vec::new();
        for r in &sys.rows {
            let mut z: Vec<(usize, Rational)> = Vec::new();
            let mut x: Vec<(usize, Rational)> = Vec::new();
            let mut c = -r.rhs.clone();
            for ((i, j), coef) in &r.terms {
                match &entries[*i][*j] {
                    Entry::Const(v) => c += coef * v,
                    Entry::X(k) => x.push((*k, coef.clone())),
                    Entry::Var(k) => z.push((*k, coef.clone())),
                }
            }
            let z = merge(z);
            let x = merge(x);
            if r.relation == Relation::Eq {
                debug_assert!(z.is_empty() && x.is_empty() && c.is_zero(), "pinned row {}", r.label);
                continue;
            }
            if z.is_empty() && x.is_empty() {
                debug_assert!(!c.is_negative(), "constant row {} infeasible", r.label);
                continue;
            }
            rows.push(AffRow { z, x, c });
        }
        rows.sort();
        rows.dedup();
        Self { n, entries, vars, rows }
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn matrix(&self, x: &[Rational], z: &[Rational]) -> RationalMatrix {
        let d = self.n + 1;
        Matrix::from_fn(d, d, |i, j| match &self.entries[i][j] {
            Entry::Const(v) => v.clone(),
            Entry::X(k) => x[*k].clone(),
            Entry::Var(k) => z[*k].clone(),
        })
    }

    pub fn matrix_f64(&self, x: &[f64], z: &[f64]) -> Matrix<f64> {
        let d = self.n + 1;
        Matrix::from_fn(d, d, |i, j| match &self.entries[i][j] {
            Entry::Const(v) => v.to_f64(),
            Entry::X(k) => x[*k],
            Entry::Var(k) => z[*k],
        })
    }

    /// Matrix `∂Y/∂z_k`.
    pub fn var_matrix<T: Scalar>(&self, k: usize) -> Matrix<T> {
        let d = self.n + 1;
        Matrix::from_fn(d, d, |i, j| if self.entries[i][j] == Entry::Var(k) { T::one() } else { T::zero() })
    }

    /// Matrix `∂Y/∂x_k`.
    pub fn x_matrix<T: Scalar>(&self, k: usize) -> Matrix<T> {
        let d = self.n + 1;
        Matrix::from_fn(d, d, |i, j| if self.entries[i][j] == Entry::X(k) { T::one() } else { T::zero() })
    }

    /// Substitute `x`. Rows implied by `z ≥ 0` are dropped.
    pub fn fix_x(&self, x: &[Rational]) -> FixedRows {
        let mut rows = Vec::new();
        let mut origin = Vec::new();
        let mut violated = None;
        for (idx, r) in self.rows.iter().enumerate() {
            let rhs = -r.x_constant(x);
            if r.z.is_empty() {
                if rhs.is_positive() && violated.is_none() {
                    violated = Some(idx);
                }
                continue;
            }
            if !rhs.is_positive() && r.z.iter().all(|(_, a)| a.is_positive()) {
                continue;
            }
            rows.push((r.z.clone(), rhs));
            origin.push(idx);
        }
        FixedRows { rows, origin, violated }
    }
}

fn merge(mut terms: Vec<(usize, Rational)>) -> Vec<(usize, Rational)> {
    terms.sort_by_key(|t| t.0);
    let mut out: Vec<(usize, Rational)> = Vec::with_capacity(terms.len());
    for (k, c) in terms {
        match out.last_mut() {
            Some((lk, lc)) if *lk == k => *lc += c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::cycle;
    use crate::lift::{verify_in_m, CertificateKind, LiftCertificate};
    use crate::scalar::int;

    #[test]
    fn variables_are_non_edges() {
        let g = cycle(5).unwrap();
        assert_eq!(Reduced::new(&g, true).num_vars(), 5);
        assert_eq!(Reduced::new(&g, false).num_vars(), 10);
    }

    #[test]
    fn stable_set_lift_satisfies_rows() {
        let g = cycle(5).unwrap();
        let red = Reduced::new(&g, true);
        let x = vec![int(1), int(0), int(1), int(0), int(0)];
        let z: Vec<Rational> = red.vars.iter().map(|&(i, j)| &x[i - 1] * &x[j - 1]).collect();
        for r in &red.rows {
            let v = r.z.iter().fold(r.x_constant(&x), |acc, (k, a)| acc + a * &z[*k]);
            assert!(!v.is_negative());
        }
        let cert = LiftCertificate { graph: g, x: x.clone(), y: red.matrix(&x, &z), kind: CertificateKind::M };
        assert!(verify_in_m(&cert).passed);
    }
}

//! Two-phase tableau simplex with Bland's rule.
//!
//! All variables are nonnegative. Over [`Rational`](crate::scalar::Rational)
//! the method is exact and, by Bland's rule, always terminates. Infeasible
//! problems come with a Farkas certificate that can be re-checked
//! independently with [`verify_farkas`].

use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Le,
    Eq,
    Ge,
}

/// Sparse constraint row `Σ coeffs ~ rhs`.
#[derive(Clone, Debug)]
pub struct Constraint<T> {
    pub coeffs: Vec<(usize, T)>,
    pub relation: Relation,
    pub rhs: T,
}

#[derive(Clone, Debug)]
pub struct LinearProgram<T> {
    pub num_vars: usize,
    pub constraints: Vec<Constraint<T>>,
}

#[derive(Clone, Debug)]
pub enum LpOutcome<T> {
    Optimal { x: Vec<T>, value: T },
    /// Multipliers `y` with `y_r ≥ 0` on `≤` rows, `y_r ≤ 0` on `≥` rows,
    /// `Σ y_r a_r ≥ 0` componentwise and `Σ y_r b_r < 0`.
    Infeasible { farkas: Vec<T> },
    Unbounded,
}

impl<T: Scalar> LinearProgram<T> {
    pub fn new(num_vars: usize) -> Self {
        Self { num_vars, constraints: Vec::new() }
    }

    pub fn add(&mut self, coeffs: Vec<(usize, T)>, relation: Relation, rhs: T) {
        debug_assert!(coeffs.iter().all(|(j, _)| *j < self.num_vars));
        self.constraints.push(Constraint { coeffs, relation, rhs });
    }

    /// Decide feasibility; the returned point is any feasible solution.
    pub fn feasible(&self) -> LpOutcome<T> {
        self.maximize(&vec![T::zero(); self.num_vars])
    }

    /// Maximize `cᵀx` subject to the constraints and `x ≥ 0`.
    pub fn maximize(&self, c: &[T]) -> LpOutcome<T> {
        assert_eq!(c.len(), self.num_vars, "objective length");
        Tableau::build(self).solve(c)
    }

    pub fn minimize(&self, c: &[T]) -> LpOutcome<T> {
        let neg: Vec<T> = c.iter().map(|v| -v.clone()).collect();
        match self.maximize(&neg) {
            LpOutcome::Optimal { x, value } => LpOutcome::Optimal { x, value: -value },
            other => other,
        }
    }

    pub fn is_satisfied_by(&self, x: &[T]) -> bool {
        x.iter().all(|v| !v.is_strictly_negative())
            && self.constraints.iter().all(|c| {
                let lhs = c.coeffs.iter().fold(T::zero(), |acc, (j, a)| acc + a.clone() * x[*j].clone());
                let d = lhs - c.rhs.clone();
                match c.relation {
                    Relation::Le => !d.is_strictly_positive(),
                    Relation::Ge => !d.is_strictly_negative(),
                    Relation::Eq => d.is_negligible(),
                }
            })
    }
}

/// Independent check of an infeasibility certificate.
pub fn verify_farkas<T: Scalar>(lp: &LinearProgram<T>, y: &[T]) -> bool {
    if y.len() != lp.constraints.len() {
        return false;
    }
    let mut combo = vec![T::zero(); lp.num_vars];
    let mut rhs = T::zero();
    for (c, yr) in lp.constraints.iter().zip(y) {
        let sign_ok = match c.relation {
            Relation::Le => !yr.is_strictly_negative(),
            Relation::Ge => !yr.is_strictly_positive(),
            Relation::Eq => true,
        };
        if !sign_ok {
            return false;
        }
        for (j, a) in &c.coeffs {
            combo[*j] = combo[*j].clone() + yr.clone() * a.clone();
        }
        rhs = rhs + yr.clone() * c.rhs.clone();
    }
    combo.iter().all(|v| !v.is_strictly_negative()) && rhs.is_strictly_negative()
}

/// Column layout: structural | slack/surplus | artificial | rhs.
struct Tableau<T> {
    m: usize,
    n: usize,
    n_slack: usize,
    /// Row-major `m × (cols)` coefficients, last column is the rhs.
    a: Vec<Vec<T>>,
    basis: Vec<usize>,
    /// Original row was multiplied by −1 to make its rhs nonnegative.
    flipped: Vec<bool>,
}

impl<T: Scalar> Tableau<T> {
    fn cols(&self) -> usize {
        self.n + self.n_slack + self.m
    }

    fn art(&self, r: usize) -> usize {
        self.n + self.n_slack + r
    }

    fn build(lp: &LinearProgram<T>) -> Self {
        let m = lp.constraints.len();
        let n = lp.num_vars;
        let n_slack = lp.constraints.iter().filter(|c| c.relation != Relation::Eq).count();
        let width = n + n_slack + m + 1;
        let mut a = Vec::with_capacity(m);
        let mut flipped = Vec::with_capacity(m);
        let mut slack = n;
        for (r, c) in lp.constraints.iter().enumerate() {
            let mut row = vec![T::zero(); width];
            for (j, v) in &c.coeffs {
                row[*j] = row[*j].clone() + v.clone();
            }
            match c.relation {
                Relation::Le => {
                    row[slack] = T::one();
                    slack += 1;
                }
                Relation::Ge => {
                    row[slack] = -T::one();
                    slack += 1;
                }
                Relation::Eq => {}
            }
            row[width - 1] = c.rhs.clone();
            let flip = c.rhs.is_strictly_negative();
            if flip {
                row.iter_mut().for_each(|v| *v = -v.clone());
            }
            row[n + n_slack + r] = T::one();
            a.push(row);
            flipped.push(flip);
        }
        let basis = (0..m).map(|r| n + n_slack + r).collect();
        Self { m, n, n_slack, a, basis, flipped }
    }

    fn pivot(&mut self, r: usize, c: usize, obj: &mut [T]) {
        let piv = self.a[r][c].clone();
        if !piv.is_one() {
            for v in self.a[r].iter_mut() {
                if !v.is_zero() {
                    *v = v.clone() / piv.clone();
                }
            }
        }
        let prow = self.a[r].clone();
        let nz: Vec<usize> = (0..prow.len()).filter(|&j| !prow[j].is_zero()).collect();
        for i in 0..self.m {
            if i == r || self.a[i][c].is_zero() {
                continue;
            }
            let f = self.a[i][c].clone();
            for &j in &nz {
                let v = self.a[i][j].clone() - f.clone() * prow[j].clone();
                self.a[i][j] = v;
            }
        }
        if !obj[c].is_zero() {
            let f = obj[c].clone();
            for &j in &nz {
                obj[j] = obj[j].clone() - f.clone() * prow[j].clone();
            }
        }
        self.basis[r] = c;
    }

    /// Objective row holds reduced costs `c_j − c_B B⁻¹ A_j`; the last entry
    /// holds `−c_B B⁻¹ b`. Returns `false` if unbounded.
    fn run(&mut self, obj: &mut [T], allowed: impl Fn(usize) -> bool) -> bool {
        let rhs = self.cols();
        loop {
            let Some(enter) = (0..rhs).find(|&j| allowed(j) && obj[j].is_strictly_positive()) else {
                return true;
            };
            let mut leave: Option<(usize, T)> = None;
            for i in 0..self.m {
                let aij = &self.a[i][enter];
                if !aij.is_strictly_positive() {
                    continue;
                }
                let ratio = self.a[i][rhs].clone() / aij.clone();
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => {
                        let d = ratio.clone() - lr.clone();
                        d.is_strictly_negative() || (d.is_negligible() && self.basis[i] < self.basis[*li])
                    }
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
            let Some((r, _)) = leave else { return false };
            self.pivot(r, enter, obj);
        }
    }

    fn objective_row(&self, cost: impl Fn(usize) -> T) -> Vec<T> {
        let width = self.cols() + 1;
        let mut obj: Vec<T> = (0..width).map(|j| if j < width - 1 { cost(j) } else { T::zero() }).collect();
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = cost(b);
            if cb.is_zero() {
                continue;
            }
            for j in 0..width {
                if !self.a[i][j].is_zero() {
                    obj[j] = obj[j].clone() - cb.clone() * self.a[i][j].clone();
                }
            }
        }
        obj
    }

    fn solve(mut self, c: &[T]) -> LpOutcome<T> {
        let first_art = self.n + self.n_slack;
        let rhs = self.cols();

        // Phase I: maximize −Σ artificials.
        let phase1_cost = |j: usize| if j >= first_art { -T::one() } else { T::zero() };
        let mut obj = self.objective_row(phase1_cost);
        self.run(&mut obj, |_| true);
        let infeasibility = obj[rhs].clone();
        if infeasibility.is_strictly_positive() {
            // Phase-I duals: y_r = −1 − (reduced cost of artificial r).
            let farkas = (0..self.m)
                .map(|r| {
                    let y = -obj[self.art(r)].clone() - T::one();
                    if self.flipped[r] {
                        -y
                    } else {
                        y
                    }
                })
                .collect();
            return LpOutcome::Infeasible { farkas };
        }

        // Drive remaining artificials out of the basis where possible.
        for r in 0..self.m {
            if self.basis[r] < first_art {
                continue;
            }
            if let Some(j) = (0..first_art).find(|&j| !self.a[r][j].is_negligible()) {
                let mut dummy = vec![T::zero(); rhs + 1];
                self.pivot(r, j, &mut dummy);
            }
        }

        // Phase II.
        let n = self.n;
        let cost = |j: usize| if j < n { c[j].clone() } else { T::zero() };
        let mut obj = self.objective_row(cost);
        if !self.run(&mut obj, |j| j < first_art) {
            return LpOutcome::Unbounded;
        }
        let mut x = vec![T::zero(); n];
        for (i, &b) in self.basis.iter().enumerate() {
            if b < n {
                x[b] = self.a[i][rhs].clone();
            }
        }
        let value = -obj[rhs].clone();
        LpOutcome::Optimal { x, value }
    }
}

//! Exact rational polytopes attached to a graph.

mod equal;
mod relax;
mod stab;

pub use equal::{contains_h, lp_max, polytope_equal, Polytope};
pub use relax::{
    frac_relaxation, induced_odd_antiholes, induced_odd_cycles, induced_odd_holes, nb_relaxation,
    odd_cycle_relaxation, qstab,
};
pub use stab::{is_facet, is_valid, stab_facets, stab_max, stab_vertices, tight_rank};

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{serde_rational, Rational, Scalar};

/// `aᵀx ≤ β`, stored in primitive integer form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearInequality {
    #[serde(with = "serde_rational::vec")]
    pub a: Vec<Rational>,
    #[serde(with = "serde_rational")]
    pub beta: Rational,
}

impl LinearInequality {
    /// Normalizes by a positive factor to coprime integer coefficients.
    pub fn new(a: Vec<Rational>, beta: Rational) -> Self {
        let mut v = a;
        v.push(beta);
        Rational::normalize_direction(&mut v);
        let beta = v.pop().expect("nonempty");
        Self { a: v, beta }
    }

    pub fn dim(&self) -> usize {
        self.a.len()
    }

    /// `−x_i ≤ 0`.
    pub fn nonneg(n: usize, i: usize) -> Self {
        let mut a = vec![Rational::zero(); n];
        a[i] = -Rational::one();
        Self::new(a, Rational::zero())
    }

    /// `x_i ≤ 1`.
    pub fn upper(n: usize, i: usize) -> Self {
        let mut a = vec![Rational::zero(); n];
        a[i] = Rational::one();
        Self::new(a, Rational::one())
    }

    /// `Σ_{i ∈ set} x_i ≤ rhs`.
    pub fn set_sum(n: usize, set: u64, rhs: i64) -> Self {
        let a = (0..n)
            .map(|i| if set >> i & 1 == 1 { Rational::one() } else { Rational::zero() })
            .collect();
        Self::new(a, Rational::from_integer(rhs.into()))
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        self.a.iter().zip(x).fold(Rational::zero(), |acc, (a, v)| acc + a * v)
    }

    /// `aᵀx − β`; positive means violated.
    pub fn violation(&self, x: &[Rational]) -> Rational {
        self.lhs(x) - &self.beta
    }

    pub fn is_satisfied(&self, x: &[Rational]) -> bool {
        !self.violation(x).is_positive()
    }

    pub fn support(&self) -> u64 {
        (0..self.a.len()).filter(|&i| !self.a[i].is_zero()).fold(0, |m, i| m | 1 << i)
    }

    pub fn is_full_support(&self) -> bool {
        self.a.iter().all(|v| !v.is_zero())
    }

    pub fn is_nonneg(&self) -> bool {
        self.beta.is_zero() && self.support().count_ones() == 1 && self.a.iter().all(|v| !v.is_positive())
    }

    /// `Σ_{i∈S} x_i ≤ 1` for some node set `S` (possibly a single node).
    pub fn as_unit_set_sum(&self) -> Option<u64> {
        (self.beta.is_one() && self.a.iter().all(|v| v.is_zero() || v.is_one())).then(|| self.support())
    }

    /// Zero-extend from an induced subgraph whose node `i` is `map[i]`.
    pub fn extend(&self, n: usize, map: &[usize]) -> Self {
        let mut a = vec![Rational::zero(); n];
        for (i, &j) in map.iter().enumerate() {
            a[j] = self.a[i].clone();
        }
        Self { a, beta: self.beta.clone() }
    }

    pub fn to_f64(&self) -> (Vec<f64>, f64) {
        (self.a.iter().map(Scalar::to_f64).collect(), self.beta.to_f64())
    }
}

impl Ord for LinearInequality {
    fn cmp(&self, other: &Self) -> Ordering {
        self.a.cmp(&other.a).then_with(|| self.beta.cmp(&other.beta))
    }
}

impl PartialOrd for LinearInequality {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polytope given by inequalities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HPolytope {
    pub n: usize,
    pub inequalities: Vec<LinearInequality>,
}

impl HPolytope {
    /// Sorts and removes duplicates.
    pub fn new(n: usize, mut inequalities: Vec<LinearInequality>) -> Self {
        debug_assert!(inequalities.iter().all(|i| i.dim() == n));
        inequalities.sort();
        inequalities.dedup();
        Self { n, inequalities }
    }

    pub fn contains(&self, x: &[Rational]) -> bool {
        self.inequalities.iter().all(|i| i.is_satisfied(x))
    }

    /// First violated inequality, if any.
    pub fn violated_by(&self, x: &[Rational]) -> Option<&LinearInequality> {
        self.inequalities.iter().find(|i| !i.is_satisfied(x))
    }

    pub fn intersect(&self, other: &HPolytope) -> Result<HPolytope> {
        if self.n != other.n {
            return Err(Error::InvalidParameter("dimension mismatch".into()));
        }
        let mut all = self.inequalities.clone();
        all.extend(other.inequalities.iter().cloned());
        Ok(HPolytope::new(self.n, all))
    }

    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson { vars: var_names(self.n), inequalities: self.inequalities.clone(), vertices: Vec::new() }
    }
}

/// Polytope given by its vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VPolytope {
    pub n: usize,
    pub vertices: Vec<Vec<Rational>>,
}

impl VPolytope {
    /// Sorts and removes duplicate vertices.
    pub fn new(n: usize, mut vertices: Vec<Vec<Rational>>) -> Self {
        vertices.sort();
        vertices.dedup();
        Self { n, vertices }
    }

    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson { vars: var_names(self.n), inequalities: Vec::new(), vertices: self.vertices.clone() }
    }
}

fn var_names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("x{i}")).collect()
}

/// Serialized polytope: rationals are `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PolytopeJson {
    pub vars: Vec<String>,
    #[serde(default)]
    pub inequalities: Vec<LinearInequality>,
    #[serde(default, with = "serde_rational::matrix")]
    pub vertices: Vec<Vec<Rational>>,
}

impl PolytopeJson {
    pub fn to_h(&self) -> Result<HPolytope> {
        let n = self.vars.len();
        if self.inequalities.iter().any(|i| i.dim() != n) {
            return Err(Error::Parse("inequality length differs from vars".into()));
        }
        Ok(HPolytope::new(n, self.inequalities.clone()))
    }

    pub fn to_v(&self) -> Result<VPolytope> {
        let n = self.vars.len();
        if self.vertices.iter().any(|v| v.len() != n) {
            return Err(Error::Parse("vertex length differs from vars".into()));
        }
        Ok(VPolytope::new(n, self.vertices.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat};

    #[test]
    fn normalization() {
        let i = LinearInequality::new(vec![rat(1, 2), rat(1, 2)], rat(3, 4));
        assert_eq!(i.a, vec![int(2), int(2)]);
        assert_eq!(i.beta, int(3));
        let nn = LinearInequality::nonneg(3, 1);
        assert!(nn.is_nonneg());
        assert_eq!(nn.a, vec![int(0), int(-1), int(0)]);
        assert_eq!(LinearInequality::set_sum(3, 0b101, 1).as_unit_set_sum(), Some(0b101));
    }

    #[test]
    fn json_round_trip() {
        let p = HPolytope::new(2, vec![LinearInequality::new(vec![int(1), int(1)], int(1)), LinearInequality::nonneg(2, 0)]);
        let mut j = p.to_json();
        j.vertices = vec![vec![rat(1, 2), rat(1, 3)]];
        let s = serde_json::to_string(&j).unwrap();
        assert!(s.contains("\"1/3\""));
        let back: PolytopeJson = serde_json::from_str(&s).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.to_h().unwrap(), p);
    }
}

//! Exact LS₊-imperfection certificates for the graphs `H^k` and their
//! transport through node stretching and clique subdivision.
//!
//! Matrix indices follow the lifted convention: index `0` is the
//! homogenizing coordinate and index `i ≥ 1` is node `i − 1` of `H^k`.

mod transport;

pub use transport::{
    clique_subdivision_pairs, lift_clique_subdivision, lift_stretch, stretch_partitions, transport_clique_subdivision_inequality,
    transport_stretch_inequality,
};

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::h_k;
use crate::lift::{CertificateJson, CertificateKind, LiftCertificate};
use crate::linalg::{determinant, ldl_psd, solve, Matrix};
use crate::polyhedra::LinearInequality;
use crate::scalar::{serde_rational, Rational, Scalar};
use crate::RationalMatrix;

fn check_k(k: usize) -> Result<()> {
    if k < 2 {
        return Err(Error::InvalidParameter(format!("k must be >= 2, got {k}")));
    }
    if 2 * k + 2 > crate::graph::MAX_NODES {
        return Err(Error::InvalidParameter(format!("k = {k} too large")));
    }
    Ok(())
}

/// `β_k = 1/(2k+2)`.
pub fn beta<T: Scalar>(k: usize) -> T {
    T::from_ratio(1, 2 * k as i64 + 2)
}

/// Weight of the rim pair `(j, j+1)`: `1 − β` for odd `j`, `1 + β` for even
/// `j`; the closing pair `(2k+1, 1)` gets `1 + β`.
fn rim_weight<T: Scalar>(k: usize, j: usize) -> T {
    let b = beta::<T>(k);
    if j % 2 == 1 && j != 2 * k + 1 {
        T::one() - b
    } else {
        T::one() + b
    }
}

/// `Y(k, γ)`, of size `(2k+3) × (2k+3)`.
pub fn build_y<T: Scalar>(k: usize, gamma: &T) -> Matrix<T> {
    let m = 2 * k + 1;
    let d = m + 2;
    let two = T::from_ratio(2, 1);
    let four = T::from_ratio(4, 1);
    let mut y = Matrix::zeros(d, d);
    y[(0, 0)] = T::from_ratio(2 * k as i64 + 2, 1) + gamma.clone();
    for i in 1..d {
        let v = if i == d - 1 { four.clone() } else { two.clone() };
        y[(0, i)] = v.clone();
        y[(i, 0)] = v;
    }
    y[(1, 1)] = two.clone();
    y[(1, d - 1)] = two.clone();
    y[(d - 1, 1)] = two.clone();
    for j in 1..=m {
        let i = j + 1;
        if i < d - 1 {
            y[(i, i)] = two.clone();
        }
        let next = if j == m { 2 } else { i + 1 };
        let w = rim_weight::<T>(k, j);
        y[(i, next)] = w.clone();
        y[(next, i)] = w;
    }
    y[(d - 1, d - 1)] = four;
    y
}

/// `Ỹ(k)`: `Y(k, γ)` without its first row and column.
pub fn y_tilde<T: Scalar>(k: usize) -> Matrix<T> {
    let y = build_y(k, &T::zero());
    let idx: Vec<usize> = (1..y.rows()).collect();
    y.principal(&idx)
}

/// `Ŷ(k)`: the Schur complement of the `(1,1)` entry of `Ỹ(k)`, written out
/// entry by entry.
pub fn y_hat<T: Scalar>(k: usize) -> Matrix<T> {
    let m = 2 * k + 1;
    let two = T::from_ratio(2, 1);
    let mut h = Matrix::zeros(m, m);
    for i in 0..m {
        h[(i, i)] = two.clone();
    }
    for i in 0..m {
        let j = (i + 1) % m;
        let w = rim_weight::<T>(k, i + 1);
        h[(i, j)] = w.clone();
        h[(j, i)] = w;
    }
    h
}

/// Schur complement of the `(0,0)` entry of a symmetric matrix.
pub fn schur_first<T: Scalar>(a: &Matrix<T>) -> Matrix<T> {
    let d = a.rows();
    let p = a[(0, 0)].clone();
    Matrix::from_fn(d - 1, d - 1, |i, j| a[(i + 1, j + 1)].clone() - a[(i + 1, 0)].clone() * a[(0, j + 1)].clone() / p.clone())
}

/// The banded matrices whose determinants are `A_ℓ` (size `2ℓ`) and `B_ℓ`
/// (size `2ℓ+1`): the leading blocks of `Ŷ(k)` without the corner entries.
pub fn banded<T: Scalar>(k: usize, size: usize) -> Matrix<T> {
    let two = T::from_ratio(2, 1);
    Matrix::from_fn(size, size, |i, j| {
        if i == j {
            two.clone()
        } else if i + 1 == j || j + 1 == i {
            rim_weight::<T>(k, i.min(j) + 1)
        } else {
            T::zero()
        }
    })
}

/// `(A_ℓ, B_ℓ)` from the three-term recursions.
pub fn recursion_values<T: Scalar>(k: usize, l: usize) -> (T, T) {
    let table = recursion_table::<T>(k, l);
    table[l].clone()
}

/// `[(A_0, B_0), …, (A_last, B_last)]`.
pub fn recursion_table<T: Scalar>(k: usize, last: usize) -> Vec<(T, T)> {
    let b = beta::<T>(k);
    let minus = (T::one() - b.clone()) * (T::one() - b.clone());
    let plus = (T::one() + b.clone()) * (T::one() + b);
    let two = T::from_ratio(2, 1);
    let mut out = vec![(T::one(), two.clone())];
    for _ in 1..=last {
        let (a0, b0) = out.last().cloned().expect("nonempty");
        let a = two.clone() * b0.clone() - minus.clone() * a0;
        let bb = two.clone() * a.clone() - plus.clone() * b0;
        out.push((a, bb));
    }
    out
}

fn pow<T: Scalar>(base: &T, e: usize) -> T {
    (0..e).fold(T::one(), |acc, _| acc * base.clone())
}

/// The two closed forms of `det Ŷ(k)` and the direct determinant.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DetIdentity {
    #[serde(with = "serde_rational")]
    pub first_form: Rational,
    #[serde(with = "serde_rational")]
    pub second_form: Rational,
    #[serde(with = "serde_rational")]
    pub direct: Rational,
}

impl DetIdentity {
    pub fn compute(k: usize) -> Result<Self> {
        check_k(k)?;
        let t = recursion_table::<Rational>(k, k);
        let b = beta::<Rational>(k);
        let one = Rational::one();
        let two = Rational::from_integer(2.into());
        let tail = pow(&(&one - &b), k) * pow(&(&one + &b), k + 1);
        let plus = (&one + &b) * (&one + &b);
        let (ak, bk) = &t[k];
        let bk1 = &t[k - 1].1;
        let first_form = &two * (ak - &plus * bk1 + &tail);
        let second_form = &two * (bk - ak + &tail);
        let direct = determinant(&y_hat::<Rational>(k));
        Ok(Self { first_form, second_form, direct })
    }

    pub fn holds(&self) -> bool {
        self.first_form == self.second_form && self.second_form == self.direct
    }
}

/// `det Ŷ(k)`, after checking that both closed forms and the direct
/// determinant agree.
pub fn det_hat_y(k: usize) -> Result<Rational> {
    let id = DetIdentity::compute(k)?;
    if !id.holds() {
        return Err(Error::Inconsistent(format!(
            "det Ŷ({k}) forms disagree: {} / {} / {}",
            id.first_form, id.second_form, id.direct
        )));
    }
    Ok(id.direct)
}

/// Determinants of the leading principal submatrices of sizes `1..=d`.
pub fn leading_minors<T: Scalar>(a: &Matrix<T>) -> Vec<T> {
    (1..=a.rows()).map(|s| determinant(&a.principal(&(0..s).collect::<Vec<_>>()))).collect()
}

/// Solution `u` of `Ỹ(k) u = 2(1 + e_{2k+2})`.
pub fn solve_u(k: usize) -> Result<Vec<Rational>> {
    check_k(k)?;
    let yt = y_tilde::<Rational>(k);
    let d = yt.rows();
    let mut rhs = vec![Rational::from_integer(2.into()); d];
    rhs[d - 1] = Rational::from_integer(4.into());
    solve(&yt, &rhs).ok_or_else(|| Error::Inconsistent(format!("Ỹ({k}) is singular")))
}

/// The exact PSD threshold `γ*(k) = 1 − β_k u_{2k+2}`.
///
/// Fails with [`Error::Inconsistent`] if `u_{2k+2}` disagrees with its
/// closed form `½ − β_k A_k / det Ŷ(k)`, if `2(1+e)ᵀu ≠ (2k+3) − β_k u_{2k+2}`,
/// or if the result leaves `(0, 1)`.
pub fn gamma_star(k: usize) -> Result<Rational> {
    let u = solve_u(k)?;
    let b = beta::<Rational>(k);
    let last = u.last().expect("nonempty").clone();
    let (ak, _) = recursion_values::<Rational>(k, k);
    let cramer = Rational::new(1.into(), 2.into()) - &b * ak / det_hat_y(k)?;
    if cramer != last {
        return Err(Error::Inconsistent(format!("u_{{2k+2}} = {last} but the closed form gives {cramer}")));
    }
    let two = Rational::from_integer(2.into());
    let lhs = &two * (u.iter().fold(Rational::zero(), |s, v| s + v) + &last);
    let rhs = Rational::from_integer((2 * k as i64 + 3).into()) - &b * &last;
    if lhs != rhs {
        return Err(Error::Inconsistent(format!("2(1+e)ᵀu = {lhs}, expected {rhs}")));
    }
    if !last.is_positive() {
        return Err(Error::Inconsistent(format!("u_{{2k+2}} = {last} is not positive")));
    }
    let g = Rational::one() - &b * &last;
    if !(g.is_positive() && g < Rational::one()) {
        return Err(Error::Inconsistent(format!("γ* = {g} outside (0, 1)")));
    }
    Ok(g)
}

/// `x(k, γ) = (2, …, 2, 4) / (2k+2+γ)`.
pub fn witness_point<T: Scalar>(k: usize, gamma: &T) -> Vec<T> {
    let s = T::from_ratio(2 * k as i64 + 2, 1) + gamma.clone();
    let mut x = vec![T::from_ratio(2, 1) / s.clone(); 2 * k + 2];
    x[2 * k + 1] = T::from_ratio(4, 1) / s;
    x
}

/// `Y*(k, γ) = Y(k, γ) / (2k+2+γ)` as a certificate on `H^k`.
pub fn scaled_certificate(k: usize, gamma: &Rational) -> Result<LiftCertificate> {
    check_k(k)?;
    let s = Rational::from_integer((2 * k as i64 + 2).into()) + gamma;
    let y = build_y(k, gamma).map(|v| v / &s);
    Ok(LiftCertificate { graph: h_k(k)?, x: witness_point(k, gamma), y, kind: CertificateKind::MPlus })
}

/// The point `x(k, γ*)` and its certificate `Y*(k, γ*)`, verified exactly.
pub fn hk_witness(k: usize) -> Result<(Vec<Rational>, LiftCertificate)> {
    let g = gamma_star(k)?;
    let cert = scaled_certificate(k, &g)?;
    let v = cert.verify();
    if !v.passed {
        return Err(Error::Inconsistent(format!("Y*({k}, γ*) fails: {}", v.failure.unwrap_or_default())));
    }
    Ok((cert.x.clone(), cert))
}

/// `Σ x ≤ α(H^k) = 2` on `2k+2` nodes.
pub fn rank_inequality(k: usize) -> LinearInequality {
    LinearInequality::new(vec![Rational::one(); 2 * k + 2], Rational::from_integer(2.into()))
}

/// `Σ x(k, γ) − 2 = (2 − 2γ) / (2k+2+γ)`.
pub fn rank_margin(k: usize, gamma: &Rational) -> Rational {
    let two = Rational::from_integer(2.into());
    (&two - &two * gamma) / (Rational::from_integer((2 * k as i64 + 2).into()) + gamma)
}

/// Everything behind the certificate for one `k`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HkCertificateBundle {
    pub k: usize,
    #[serde(with = "serde_rational")]
    pub beta_k: Rational,
    #[serde(with = "serde_rational")]
    pub gamma: Rational,
    #[serde(rename = "Y", with = "serde_rational::matrix")]
    pub y: Vec<Vec<Rational>>,
    #[serde(with = "serde_rational::vec")]
    pub x: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub u: Vec<Rational>,
    pub det_hat_y: DetIdentity,
    #[serde(with = "serde_rational::vec")]
    pub recursion_a: Vec<Rational>,
    #[serde(with = "serde_rational::vec")]
    pub recursion_b: Vec<Rational>,
    /// `Σ x − 2` at the witness.
    #[serde(with = "serde_rational")]
    pub margin: Rational,
    pub certificate: CertificateJson,
}

/// Result of re-checking a bundle from scratch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BundleCheck {
    pub in_m_plus: bool,
    pub violates_rank: bool,
    pub u_solves_system: bool,
    pub identities: bool,
    pub failure: Option<String>,
}

impl BundleCheck {
    pub fn passed(&self) -> bool {
        self.in_m_plus && self.violates_rank && self.u_solves_system && self.identities
    }
}

impl HkCertificateBundle {
    pub fn build(k: usize) -> Result<Self> {
        let gamma = gamma_star(k)?;
        let (x, cert) = hk_witness(k)?;
        let table = recursion_table::<Rational>(k, k);
        Ok(Self {
            k,
            beta_k: beta(k),
            margin: rank_inequality(k).violation(&x),
            y: build_y(k, &gamma).to_rows(),
            x,
            u: solve_u(k)?,
            det_hat_y: DetIdentity::compute(k)?,
            recursion_a: table.iter().map(|p| p.0.clone()).collect(),
            recursion_b: table.iter().map(|p| p.1.clone()).collect(),
            certificate: cert.to_json(),
            gamma,
        })
    }

    /// Recheck every exact claim in the bundle.
    pub fn check(&self) -> BundleCheck {
        let mut out = BundleCheck {
            in_m_plus: false,
            violates_rank: false,
            u_solves_system: false,
            identities: false,
            failure: None,
        };
        let k = self.k;
        if check_k(k).is_err() || self.beta_k != beta::<Rational>(k) {
            out.failure = Some("bad k or β_k".into());
            return out;
        }
        match LiftCertificate::from_json(&self.certificate) {
            Ok(cert) => {
                let v = cert.verify();
                out.in_m_plus = v.passed && cert.x == self.x;
                if !v.passed {
                    out.failure = v.failure;
                }
            }
            Err(e) => out.failure = Some(e.to_string()),
        }
        out.violates_rank = self.margin.is_positive()
            && rank_inequality(k).violation(&self.x) == self.margin
            && self.margin == rank_margin(k, &self.gamma);
        let yt = y_tilde::<Rational>(k);
        let mut rhs = vec![Rational::from_integer(2.into()); 2 * k + 2];
        rhs[2 * k + 1] = Rational::from_integer(4.into());
        out.u_solves_system = self.u.len() == rhs.len() && yt.mul_vec(&self.u) == rhs;
        out.identities = self.det_hat_y.holds()
            && gamma_star(k).map(|g| g == self.gamma).unwrap_or(false)
            && self.y == build_y(k, &self.gamma).to_rows();
        out
    }
}

/// Exact PSD test of `Y(k, γ)`.
pub fn is_psd_at(k: usize, gamma: &Rational) -> bool {
    ldl_psd(&build_y(k, gamma)).psd
}

/// `Ŷ(k)` as produced by the generic Schur complement of `Ỹ(k)`.
pub fn y_hat_by_schur(k: usize) -> RationalMatrix {
    schur_first(&y_tilde::<Rational>(k))
}

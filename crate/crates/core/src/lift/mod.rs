//! The lifted matrix sets `M(K)`, `M₊(K)` for `K = FRAC(G)` and the LS/LS₊
//! operators built on them.

mod altproj;
mod ls;
mod lsplus;
mod reduced;
mod separate;

pub use altproj::{alternating_projections, AltProjOutcome};
pub use ls::{ls0_member, ls_member};
pub use lsplus::{lsplus_member, lsplus_member_with, LsPlusOptions, SdpEngine};
pub use separate::{destruction_sufficiency, lsplus_separate_facet, lsplus_separate_facet_with, SeparationResult};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bits, from_graph6, to_graph6, Graph};
use crate::linalg::{ldl_psd, Matrix};
use crate::lp::Relation;
use crate::polyhedra::{frac_relaxation, HPolytope, LinearInequality};
use crate::scalar::{format_rational, serde_rational, Rational};
use crate::RationalMatrix;

/// Only a single application of the operators is supported.
pub fn ensure_single_round(rounds: usize) -> Result<()> {
    if rounds != 1 {
        return Err(Error::InvalidParameter(format!(
            "only one round of the lift operator is supported, got {rounds}"
        )));
    }
    Ok(())
}

/// One linear condition on the entries of `Y`; `(i, j)` indexes `Y[i][j]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftRow {
    pub terms: Vec<((usize, usize), Rational)>,
    pub relation: Relation,
    pub rhs: Rational,
    pub label: String,
}

impl LiftRow {
    pub fn evaluate(&self, y: &RationalMatrix) -> Rational {
        self.terms.iter().fold(Rational::zero(), |acc, ((i, j), c)| acc + c * &y[(*i, *j)])
    }

    pub fn holds(&self, y: &RationalMatrix) -> bool {
        let v = self.evaluate(y);
        match self.relation {
            Relation::Eq => v == self.rhs,
            Relation::Ge => v >= self.rhs,
            Relation::Le => v <= self.rhs,
        }
    }
}

/// The affine system defining `M(K)` together with `Y·e_0 = (1, x)`.
///
/// Symmetric systems identify `Y[i][j]` with `Y[j][i]` and address the pair
/// as `(min, max)`. Rows: `Y_00 = 1`, `Y_0i = Y_ii`, and for every `i ≥ 1`
/// and every inequality `aᵀx ≤ β` of `K` the homogenized conditions on
/// `Y·e_i` and `Y·(e_0 − e_i)`.
#[derive(Clone, Debug)]
pub struct LiftSystem {
    pub n: usize,
    pub x: Vec<Rational>,
    pub base: HPolytope,
    pub symmetric: bool,
    pub rows: Vec<LiftRow>,
}

impl LiftSystem {
    pub fn build(g: &Graph, x: &[Rational]) -> Result<Self> {
        Self::build_with(g, x, true)
    }

    /// The LS₀ variant: `Y` need not be symmetric, and both `Y·e_0` and
    /// `Yᵀ·e_0` equal the diagonal.
    pub fn build_nonsymmetric(g: &Graph, x: &[Rational]) -> Result<Self> {
        Self::build_with(g, x, false)
    }

    fn build_with(g: &Graph, x: &[Rational], symmetric: bool) -> Result<Self> {
        let n = g.n();
        if x.len() != n {
            return Err(Error::InvalidParameter(format!("point has length {}, graph has {n} nodes", x.len())));
        }
        let base = frac_relaxation(g);
        let key = |i: usize, j: usize| if symmetric { (i.min(j), i.max(j)) } else { (i, j) };
        let mut rows = Vec::with_capacity(Self::row_count(n, base.inequalities.len(), symmetric));
        rows.push(LiftRow {
            terms: vec![((0, 0), Rational::one())],
            relation: Relation::Eq,
            rhs: Rational::one(),
            label: "Y00 = 1".into(),
        });
        for i in 1..=n {
            rows.push(LiftRow {
                terms: vec![((0, i), Rational::one()), ((i, i), -Rational::one())],
                relation: Relation::Eq,
                rhs: Rational::zero(),
                label: format!("Y0{i} = Y{i}{i}"),
            });
            if !symmetric {
                rows.push(LiftRow {
                    terms: vec![((i, 0), Rational::one()), ((i, i), -Rational::one())],
                    relation: Relation::Eq,
                    rhs: Rational::zero(),
                    label: format!("Y{i}0 = Y{i}{i}"),
                });
            }
        }
        for i in 1..=n {
            for (h, ineq) in base.inequalities.iter().enumerate() {
                // β·y_0 − aᵀy ≥ 0 for y = Y·e_i.
                let mut col = vec![(key(0, i), ineq.beta.clone())];
                // β·(Y_00 − Y_0i) − Σ a_j (Y_j0 − Y_ji) ≥ 0.
                let mut comp = vec![(key(0, 0), ineq.beta.clone()), (key(0, i), -ineq.beta.clone())];
                for (j, a) in ineq.a.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    col.push((key(j + 1, i), -a.clone()));
                    comp.push((key(j + 1, 0), -a.clone()));
                    comp.push((key(j + 1, i), a.clone()));
                }
                rows.push(LiftRow {
                    terms: merge_terms(col),
                    relation: Relation::Ge,
                    rhs: Rational::zero(),
                    label: format!("Y·e{i} in cone(K), inequality {h}"),
                });
                rows.push(LiftRow {
                    terms: merge_terms(comp),
                    relation: Relation::Ge,
                    rhs: Rational::zero(),
                    label: format!("Y·(e0 − e{i}) in cone(K), inequality {h}"),
                });
            }
        }
        Ok(Self { n, x: x.to_vec(), base, symmetric, rows })
    }

    /// `1 + n + 2n·|H|` for the symmetric system, `1 + 2n + 2n·|H|` otherwise.
    pub fn row_count(n: usize, h: usize, symmetric: bool) -> usize {
        1 + if symmetric { n } else { 2 * n } + 2 * n * h
    }

    /// The pinned first column `Y·e_0 = (1, x)`, plus the first row when
    /// the system is not symmetric.
    pub fn pinned(&self) -> Vec<((usize, usize), Rational)> {
        let mut out = vec![((0, 0), Rational::one())];
        for (i, v) in self.x.iter().enumerate() {
            out.push(((i + 1, 0), v.clone()));
            out.push(((0, i + 1), v.clone()));
        }
        out
    }

    /// First violated condition, if any.
    pub fn first_violation(&self, y: &RationalMatrix) -> Option<String> {
        let d = self.n + 1;
        if y.rows() != d || y.cols() != d {
            return Some(format!("Y is {}×{}, expected {d}×{d}", y.rows(), y.cols()));
        }
        if self.symmetric && !y.is_symmetric() {
            return Some("Y is not symmetric".into());
        }
        for ((i, j), v) in self.pinned() {
            if y[(i, j)] != v {
                return Some(format!("Y[{i}][{j}] = {} but Y·e0 requires {}", y[(i, j)], format_rational(&v)));
            }
        }
        self.rows.iter().find(|r| !r.holds(y)).map(|r| format!("violated: {}", r.label))
    }
}

fn merge_terms(mut terms: Vec<((usize, usize), Rational)>) -> Vec<((usize, usize), Rational)> {
    terms.sort_by(|a, b| a.0.cmp(&b.0));
    let mut out: Vec<((usize, usize), Rational)> = Vec::with_capacity(terms.len());
    for (k, c) in terms {
        match out.last_mut() {
            Some((lk, lc)) if *lk == k => *lc += c,
            _ => out.push((k, c)),
        }
    }
    out.retain(|(_, c)| !c.is_zero());
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CertificateKind {
    #[serde(rename = "membership-in-M")]
    M,
    #[serde(rename = "membership-in-M+")]
    MPlus,
}

/// A point together with an exact lifted matrix witnessing membership.
#[derive(Clone, Debug, PartialEq)]
pub struct LiftCertificate {
    pub graph: Graph,
    pub x: Vec<Rational>,
    pub y: RationalMatrix,
    pub kind: CertificateKind,
}

/// Outcome of an exact certificate check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verification {
    pub passed: bool,
    pub failure: Option<String>,
}

impl Verification {
    fn ok() -> Self {
        Self { passed: true, failure: None }
    }

    fn fail(msg: impl Into<String>) -> Self {
        Self { passed: false, failure: Some(msg.into()) }
    }
}

impl LiftCertificate {
    /// `Y = (1, χ_S)(1, χ_S)ᵀ` for a stable set `S`.
    pub fn rank_one(g: &Graph, stable: u64) -> Result<Self> {
        if !g.is_stable(stable) || stable >> g.n() != 0 {
            return Err(Error::InvalidParameter(format!("{stable:#b} is not a stable set")));
        }
        let mut v = vec![Rational::one()];
        v.extend((0..g.n()).map(|i| if stable >> i & 1 == 1 { Rational::one() } else { Rational::zero() }));
        let d = v.len();
        let y = Matrix::from_fn(d, d, |i, j| &v[i] * &v[j]);
        Ok(Self { graph: g.clone(), x: v[1..].to_vec(), y, kind: CertificateKind::MPlus })
    }

    /// Check the linear conditions, and for kind `M₊` exact PSD.
    pub fn verify(&self) -> Verification {
        match self.kind {
            CertificateKind::M => verify_in_m(self),
            CertificateKind::MPlus => verify_in_mplus(self),
        }
    }

    pub fn to_json(&self) -> CertificateJson {
        CertificateJson {
            graph6: to_graph6(&self.graph),
            x: self.x.clone(),
            y: self.y.to_rows(),
            kind: self.kind,
        }
    }

    pub fn from_json(j: &CertificateJson) -> Result<Self> {
        let graph = from_graph6(&j.graph6)?;
        let d = graph.n() + 1;
        if j.x.len() != graph.n() || j.y.len() != d || j.y.iter().any(|r| r.len() != d) {
            return Err(Error::Parse("certificate dimensions do not match the graph".into()));
        }
        Ok(Self { graph, x: j.x.clone(), y: Matrix::from_rows(j.y.clone()), kind: j.kind })
    }

    /// Sum of `x` over the nodes in `set`.
    pub fn sum_over(&self, set: u64) -> Rational {
        bits(set).fold(Rational::zero(), |acc, i| acc + &self.x[i])
    }

    /// `aᵀx − β` at the certified point.
    pub fn violation_of(&self, ineq: &LinearInequality) -> Rational {
        ineq.violation(&self.x)
    }
}

/// Linear conditions of `M(FRAC(G))` and `Y·e_0 = (1, x)`.
pub fn verify_in_m(cert: &LiftCertificate) -> Verification {
    let sys = match LiftSystem::build(&cert.graph, &cert.x) {
        Ok(s) => s,
        Err(e) => return Verification::fail(e.to_string()),
    };
    match sys.first_violation(&cert.y) {
        Some(msg) => Verification::fail(msg),
        None => Verification::ok(),
    }
}

/// Linear conditions plus exact PSD via LDLᵀ with greatest-pivot symmetric
/// pivoting.
pub fn verify_in_mplus(cert: &LiftCertificate) -> Verification {
    let lin = verify_in_m(cert);
    if !lin.passed {
        return lin;
    }
    let psd = ldl_psd(&cert.y);
    if !psd.psd {
        return Verification::fail(format!(
            "not PSD: {}",
            psd.failure.unwrap_or_else(|| "negative pivot".into())
        ));
    }
    Verification::ok()
}

/// Serialized certificate; rationals are `"p/q"` strings.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CertificateJson {
    pub graph6: String,
    #[serde(with = "serde_rational::vec")]
    pub x: Vec<Rational>,
    #[serde(rename = "Y", with = "serde_rational::matrix")]
    pub y: Vec<Vec<Rational>>,
    #[serde(default = "default_kind")]
    pub kind: CertificateKind,
}

fn default_kind() -> CertificateKind {
    CertificateKind::MPlus
}

/// Where an exact "out" verdict comes from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvidenceSource {
    /// An inequality of `FRAC(G)`.
    Frac,
    /// A clique inequality.
    Clique,
    /// An induced odd cycle inequality.
    OddCycle,
    /// A facet of `STAB` of a near-bipartite induced subgraph.
    NearBipartite,
    /// Combination of the lifted linear system (Farkas multipliers).
    LinearFarkas,
    /// PSD multiplier plus linear multipliers.
    SemidefiniteFarkas,
}

/// An inequality valid for the relaxation in question and violated by `x`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutEvidence {
    pub source: EvidenceSource,
    pub inequality: LinearInequality,
    #[serde(with = "serde_rational")]
    pub violation: Rational,
}

#[derive(Clone, Debug)]
pub enum Membership {
    In(LiftCertificate),
    Out(OutEvidence),
    Unknown { reason: String },
}

impl Membership {
    pub fn is_in(&self) -> bool {
        matches!(self, Membership::In(_))
    }

    pub fn is_out(&self) -> bool {
        matches!(self, Membership::Out(_))
    }

    pub fn label(&self) -> &'static str {
        match self {
            Membership::In(_) => "in",
            Membership::Out(_) => "out",
            Membership::Unknown { .. } => "unknown",
        }
    }
}

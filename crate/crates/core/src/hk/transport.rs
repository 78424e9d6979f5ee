use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::{bits, clique_subdivide, k_stretch, mask_from, Graph, StretchNodes};
use crate::lift::LiftCertificate;
use crate::linalg::Matrix;
use crate::polyhedra::LinearInequality;
use crate::scalar::Rational;

/// Column `j` of the output is `Σ c · e_a` over the listed `(a, c)`.
type Combination = Vec<(usize, Rational)>;

/// `PᵀYP` where column `p` of `P` is `cols[p]`.
fn congruence(y: &Matrix<Rational>, cols: &[Combination]) -> Matrix<Rational> {
    let d = cols.len();
    Matrix::from_fn(d, d, |p, q| {
        let mut s = Rational::zero();
        for (a, ca) in &cols[p] {
            for (b, cb) in &cols[q] {
                s += ca * cb * &y[(*a, *b)];
            }
        }
        s
    })
}

fn require_verified(cert: &LiftCertificate) -> Result<()> {
    let v = cert.verify();
    if !v.passed {
        return Err(Error::Precondition(format!("input certificate fails: {}", v.failure.unwrap_or_default())));
    }
    Ok(())
}

fn lifted(graph: Graph, y: Matrix<Rational>, cert: &LiftCertificate) -> LiftCertificate {
    let x = (1..y.rows()).map(|i| y[(0, i)].clone()).collect();
    LiftCertificate { graph, x, y, kind: cert.kind }
}

/// Lift a certificate through the stretch of node `v` into `v1, v2, u`.
///
/// The new matrix is `PᵀYP` with `v1, v2 ↦ e_v` and `u ↦ e_0 − e_v`, so it
/// has first row `(1, x̄, x_v, x_v, 1 − x_v)`. One round only.
pub fn lift_stretch(cert: &LiftCertificate, v: usize, a1: &[usize], a2: &[usize]) -> Result<LiftCertificate> {
    require_verified(cert)?;
    let g = &cert.graph;
    let stretched = k_stretch(g, v, a1, a2)?;
    let n = g.n();
    let one = Rational::one;
    let mut cols: Vec<Combination> = vec![vec![(0, one())]];
    cols.extend((0..n).filter(|&w| w != v).map(|w| vec![(w + 1, one())]));
    let nodes = StretchNodes::for_graph(n);
    debug_assert_eq!(cols.len(), nodes.v1 + 1);
    cols.push(vec![(v + 1, one())]);
    cols.push(vec![(v + 1, one())]);
    cols.push(vec![(0, one()), (v + 1, -one())]);
    let y = congruence(&cert.y, &cols);
    Ok(lifted(stretched, y, cert))
}

/// `ã_j = a_v` on `v1, v2, u`, `ã_j = a_j` elsewhere, `β̃ = β + a_v`, in the
/// node order produced by the stretch.
pub fn transport_stretch_inequality(ineq: &LinearInequality, v: usize) -> Result<LinearInequality> {
    let n = ineq.dim();
    if v >= n {
        return Err(Error::NodeOutOfRange { node: v, n });
    }
    let av = ineq.a[v].clone();
    let mut a: Vec<Rational> = (0..n).filter(|&w| w != v).map(|w| ineq.a[w].clone()).collect();
    a.extend([av.clone(), av.clone(), av.clone()]);
    Ok(LinearInequality::new(a, &ineq.beta + av))
}

/// All unordered `(A1, A2)` with `A1 ∪ A2 = Γ(v)`, both nonempty and
/// `A1 ∩ A2` a clique.
pub fn stretch_partitions(g: &Graph, v: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let nb: Vec<usize> = g.neighbors(v);
    let d = nb.len();
    let mut out = Vec::new();
    let total = 3usize.pow(d as u32);
    let mut seen = std::collections::BTreeSet::new();
    for code in 0..total {
        let (mut m1, mut m2) = (0u64, 0u64);
        let mut c = code;
        for &w in &nb {
            match c % 3 {
                0 => m1 |= 1 << w,
                1 => m2 |= 1 << w,
                _ => {
                    m1 |= 1 << w;
                    m2 |= 1 << w;
                }
            }
            c /= 3;
        }
        if m1 == 0 || m2 == 0 || !g.is_clique(m1 & m2) {
            continue;
        }
        let key = (m1.min(m2), m1.max(m2));
        if seen.insert(key) {
            out.push((bits(key.0).collect(), bits(key.1).collect()));
        }
    }
    out
}

/// Lift a certificate through the clique subdivision of `e = (v1, v2)` in
/// `K`. New node `n` repeats the row of `v2` and new node `n+1` the row of
/// `v1`, so the point extends by `x_{v2}, x_{v1}`.
pub fn lift_clique_subdivision(cert: &LiftCertificate, k: &[usize], e: (usize, usize)) -> Result<LiftCertificate> {
    require_verified(cert)?;
    let g = &cert.graph;
    let sub = clique_subdivide(g, k, e)?;
    let n = g.n();
    let mut cols: Vec<Combination> = (0..=n).map(|i| vec![(i, Rational::one())]).collect();
    cols.push(vec![(e.1 + 1, Rational::one())]);
    cols.push(vec![(e.0 + 1, Rational::one())]);
    let y = congruence(&cert.y, &cols);
    Ok(lifted(sub, y, cert))
}

/// `ã = a` on old nodes and `t = max(a_{v1}, a_{v2})` on both new nodes,
/// `β̃ = β + t`. Valid for the subdivided graph whenever `aᵀx ≤ β` is valid
/// for the original, but the violation at the lifted point changes by
/// `t (x_{v1} + x_{v2} − 1)`.
pub fn transport_clique_subdivision_inequality(ineq: &LinearInequality, e: (usize, usize)) -> Result<LinearInequality> {
    let n = ineq.dim();
    for v in [e.0, e.1] {
        if v >= n {
            return Err(Error::NodeOutOfRange { node: v, n });
        }
    }
    let t = ineq.a[e.0].clone().max(ineq.a[e.1].clone());
    let mut a = ineq.a.clone();
    a.extend([t.clone(), t.clone()]);
    Ok(LinearInequality::new(a, &ineq.beta + t))
}

/// Every clique of the given size with each of its edges in both
/// orientations.
pub fn clique_subdivision_pairs(g: &Graph, size: usize) -> Vec<(Vec<usize>, (usize, usize))> {
    let mut cliques = std::collections::BTreeSet::new();
    for m in g.maximal_cliques() {
        let members: Vec<usize> = bits(m).collect();
        if members.len() < size {
            continue;
        }
        for sub in subsets(&members, size) {
            cliques.insert(mask_from(&sub));
        }
    }
    let mut out = Vec::new();
    for c in cliques {
        let members: Vec<usize> = bits(c).collect();
        for &i in &members {
            for &j in &members {
                if i != j {
                    out.push((members.clone(), (i, j)));
                }
            }
        }
    }
    out
}

fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![vec![]];
    }
    if items.len() < size {
        return vec![];
    }
    let mut with: Vec<Vec<usize>> = subsets(&items[1..], size - 1)
        .into_iter()
        .map(|mut s| {
            s.insert(0, items[0]);
            s
        })
        .collect();
    with.extend(subsets(&items[1..], size));
    with
}

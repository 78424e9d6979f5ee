//! Double description method for pointed polyhedral cones.
//!
//! [`extreme_rays`] enumerates the extreme rays of `{z : A z ≥ 0}`. Rows are
//! inserted in index order after an initial basis, so output is
//! deterministic. Ray adjacency is decided combinatorially on bitsets of
//! tight constraints.

use crate::error::{Error, Result};
use crate::linalg::{solve, Matrix};
use crate::scalar::Scalar;

#[derive(Clone, Debug)]
struct Bits(Vec<u64>);

impl Bits {
    fn new(m: usize) -> Self {
        Bits(vec![0; m.div_ceil(64)])
    }

    fn set(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn and(&self, other: &Bits) -> Bits {
        Bits(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn count(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn contains(&self, other: &Bits) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

struct Ray<T> {
    z: Vec<T>,
    tight: Bits,
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

/// Extreme rays of the pointed cone `{z ∈ ℝᵈ : A z ≥ 0}`, one primitive
/// representative each, sorted.
///
/// Fails if `A` does not have rank `d` (the cone is not pointed).
pub fn extreme_rays<T: Scalar>(rows: &[Vec<T>]) -> Result<Vec<Vec<T>>> {
    let d = rows.first().map_or(0, Vec::len);
    if d == 0 {
        return Ok(Vec::new());
    }
    let m = rows.len();

    // Greedy basis of d linearly independent rows.
    let mut basis: Vec<usize> = Vec::with_capacity(d);
    let mut echelon: Vec<(usize, Vec<T>)> = Vec::new();
    for (i, row) in rows.iter().enumerate() {
        let mut r = row.clone();
        for (p, e) in &echelon {
            if r[*p].is_negligible() {
                continue;
            }
            let f = r[*p].clone() / e[*p].clone();
            for j in 0..d {
                r[j] = r[j].clone() - f.clone() * e[j].clone();
            }
        }
        if let Some(p) = (0..d).find(|&j| !r[j].is_negligible()) {
            echelon.push((p, r));
            basis.push(i);
            if basis.len() == d {
                break;
            }
        }
    }
    if basis.len() < d {
        return Err(Error::Precondition(format!(
            "cone is not pointed: constraint rank {} < dimension {d}",
            basis.len()
        )));
    }

    let a0 = Matrix::from_rows(basis.iter().map(|&i| rows[i].clone()).collect());
    let mut rays: Vec<Ray<T>> = Vec::with_capacity(d);
    for j in 0..d {
        let mut e = vec![T::zero(); d];
        e[j] = T::one();
        let mut z = solve(&a0, &e).ok_or_else(|| Error::Inconsistent("basis is singular".into()))?;
        T::normalize_direction(&mut z);
        let mut tight = Bits::new(m);
        for (jj, &i) in basis.iter().enumerate() {
            if jj != j {
                tight.set(i);
            }
        }
        rays.push(Ray { z, tight });
    }

    let in_basis: Vec<bool> = {
        let mut v = vec![false; m];
        basis.iter().for_each(|&i| v[i] = true);
        v
    };

    for (i, row) in rows.iter().enumerate() {
        if in_basis[i] {
            continue;
        }
        let vals: Vec<T> = rays.iter().map(|r| dot(row, &r.z)).collect();
        let pos: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_strictly_positive()).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&k| vals[k].is_strictly_negative()).collect();
        if neg.is_empty() {
            for (k, r) in rays.iter_mut().enumerate() {
                if vals[k].is_negligible() {
                    r.tight.set(i);
                }
            }
            continue;
        }

        let mut new_rays = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].tight.and(&rays[q].tight);
                if common.count() + 2 < d {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(k, r)| k == p || k == q || !r.tight.contains(&common));
                if !adjacent {
                    continue;
                }
                let vp = vals[p].clone();
                let vq = vals[q].clone();
                let mut z: Vec<T> = rays[q]
                    .z
                    .iter()
                    .zip(&rays[p].z)
                    .map(|(zq, zp)| vp.clone() * zq.clone() - vq.clone() * zp.clone())
                    .collect();
                T::normalize_direction(&mut z);
                let mut tight = common;
                tight.set(i);
                new_rays.push(Ray { z, tight });
            }
        }

        let mut kept: Vec<Ray<T>> = Vec::with_capacity(rays.len() + new_rays.len());
        for (k, mut r) in rays.into_iter().enumerate() {
            if vals[k].is_strictly_negative() {
                continue;
            }
            if vals[k].is_negligible() {
                r.tight.set(i);
            }
            kept.push(r);
        }
        kept.extend(new_rays);
        rays = kept;
    }

    let mut out: Vec<Vec<T>> = rays.into_iter().map(|r| r.z).collect();
    out.sort_by(|a, b| cmp_vec(a, b));
    out.dedup_by(|a, b| cmp_vec(a, b) == std::cmp::Ordering::Equal);
    Ok(out)
}

fn cmp_vec<T: Scalar>(a: &[T], b: &[T]) -> std::cmp::Ordering {
    for (x, y) in a.iter().zip(b) {
        let d = x.clone() - y.clone();
        match d.sign() {
            std::cmp::Ordering::Equal => continue,
            o => return o,
        }
    }
    a.len().cmp(&b.len())
}

/// Facets `aᵀx ≤ β` of the convex hull of full-dimensional `points`,
/// returned as `(a, β)` in primitive form.
pub fn hull_facets<T: Scalar>(points: &[Vec<T>]) -> Result<Vec<(Vec<T>, T)>> {
    let n = points.first().map_or(0, Vec::len);
    let rows: Vec<Vec<T>> = points
        .iter()
        .map(|p| {
            let mut r = Vec::with_capacity(n + 1);
            r.push(T::one());
            r.extend(p.iter().map(|v| -v.clone()));
            r
        })
        .collect();
    let rays = extreme_rays(&rows)?;
    Ok(rays
        .into_iter()
        .map(|mut z| {
            let beta = z.remove(0);
            (z, beta)
        })
        .collect())
}

/// Vertices of the bounded polyhedron `{x : aᵀx ≤ β}`.
///
/// Fails if the polyhedron is unbounded or lower-dimensional in a way that
/// leaves the homogenized cone without a vertex.
pub fn polytope_vertices<T: Scalar>(ineqs: &[(Vec<T>, T)]) -> Result<Vec<Vec<T>>> {
    let n = ineqs.first().map_or(0, |(a, _)| a.len());
    let mut rows: Vec<Vec<T>> = ineqs
        .iter()
        .map(|(a, b)| {
            let mut r = Vec::with_capacity(n + 1);
            r.push(b.clone());
            r.extend(a.iter().map(|v| -v.clone()));
            r
        })
        .collect();
    let mut t = vec![T::zero(); n + 1];
    t[0] = T::one();
    rows.push(t);
    let rays = extreme_rays(&rows)?;
    let mut verts = Vec::new();
    for z in rays {
        if z[0].is_negligible() {
            return Err(Error::Precondition("polyhedron is unbounded".into()));
        }
        let t = z[0].clone();
        verts.push(z[1..].iter().map(|v| v.clone() / t.clone()).collect::<Vec<T>>());
    }
    verts.sort_by(|a, b| cmp_vec(a, b));
    Ok(verts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    #[test]
    fn triangle_facets() {
        let pts: Vec<Vec<Rational>> = vec![vec![int(0), int(0)], vec![int(1), int(0)], vec![int(0), int(1)]];
        let f = hull_facets(&pts).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.contains(&(vec![int(1), int(1)], int(1))));
        assert!(f.contains(&(vec![int(-1), int(0)], int(0))));
    }

    #[test]
    fn square_vertices() {
        let ineqs: Vec<(Vec<Rational>, Rational)> = vec![
            (vec![int(-1), int(0)], int(0)),
            (vec![int(0), int(-1)], int(0)),
            (vec![int(1), int(0)], int(1)),
            (vec![int(0), int(1)], int(1)),
            (vec![int(1), int(1)], rat(3, 2)),
        ];
        let v = polytope_vertices(&ineqs).unwrap();
        assert_eq!(v.len(), 5);
        assert!(v.contains(&vec![rat(1, 2), int(1)]));
    }

    #[test]
    fn cube_facets_from_vertices() {
        let mut pts = Vec::new();
        for mask in 0..8u32 {
            pts.push((0..3).map(|i| int(((mask >> i) & 1) as i64)).collect::<Vec<Rational>>());
        }
        assert_eq!(hull_facets(&pts).unwrap().len(), 6);
    }

    #[test]
    fn not_pointed() {
        let rows: Vec<Vec<Rational>> = vec![vec![int(1), int(0)]];
        assert!(extreme_rays(&rows).is_err());
    }
}

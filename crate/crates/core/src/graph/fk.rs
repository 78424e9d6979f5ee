use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BaseKind {
    OddHole,
    OddAntihole,
}

/// A graph on `{0, …, 2k+1}` whose rim `1..=2k+1` is an odd hole or odd
/// antihole and whose hub `0` has the listed neighbors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FkDescriptor {
    pub k: usize,
    pub hub_neighbors: Vec<usize>,
    pub base_kind: BaseKind,
}

impl FkDescriptor {
    pub fn new(k: usize, mut hub_neighbors: Vec<usize>, base_kind: BaseKind) -> Result<Self> {
        hub_neighbors.sort_unstable();
        hub_neighbors.dedup();
        let d = Self { k, hub_neighbors, base_kind };
        d.validate()?;
        Ok(d)
    }

    pub fn validate(&self) -> Result<()> {
        if self.k < 2 {
            return Err(Error::InvalidParameter(format!("k must be >= 2, got {}", self.k)));
        }
        if 2 * self.k + 2 > super::MAX_NODES {
            return Err(Error::InvalidParameter(format!("k = {} too large", self.k)));
        }
        let s = self.hub_neighbors.len();
        if s == 0 || s > 2 * self.k {
            return Err(Error::InvalidParameter(format!(
                "hub degree must lie in 1..={}, got {s}",
                2 * self.k
            )));
        }
        if self.hub_neighbors.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter("hub neighbors must be strictly increasing".into()));
        }
        if let Some(&bad) = self.hub_neighbors.iter().find(|&&v| v == 0 || v > 2 * self.k + 1) {
            return Err(Error::InvalidParameter(format!("hub neighbor {bad} outside 1..={}", 2 * self.k + 1)));
        }
        Ok(())
    }

    /// Number of rim nodes, `2k+1`.
    pub fn rim(&self) -> usize {
        2 * self.k + 1
    }

    pub fn hub_degree(&self) -> usize {
        self.hub_neighbors.len()
    }

    pub fn to_graph(&self) -> Result<Graph> {
        self.validate()?;
        let m = self.rim();
        let mut g = Graph::empty(m + 1);
        for i in 1..=m {
            for j in i + 1..=m {
                let consecutive = j == i + 1 || (i == 1 && j == m);
                let edge = match self.base_kind {
                    BaseKind::OddHole => consecutive,
                    BaseKind::OddAntihole => !consecutive,
                };
                if edge {
                    g.add_edge(i, j)?;
                }
            }
        }
        for &v in &self.hub_neighbors {
            g.add_edge(0, v)?;
        }
        Ok(g)
    }

    /// Rim steps between consecutive hub neighbors, starting at the smallest
    /// one and wrapping around. The gaps sum to `2k+1`.
    pub fn gaps(&self) -> Vec<usize> {
        let h = &self.hub_neighbors;
        let s = h.len();
        (0..s)
            .map(|i| if i + 1 < s { h[i + 1] - h[i] } else { h[0] + self.rim() - h[s - 1] })
            .collect()
    }

    /// Build an odd-hole descriptor from cyclic gaps; hub neighbors start at 1.
    pub fn from_gaps(gaps: &[usize]) -> Result<Self> {
        let total: usize = gaps.iter().sum();
        if total % 2 == 0 || total < 5 || gaps.contains(&0) {
            return Err(Error::InvalidParameter(format!("gaps {gaps:?} do not describe an odd rim")));
        }
        let mut hub = Vec::with_capacity(gaps.len());
        let mut pos = 1;
        for g in gaps {
            hub.push(pos);
            pos += g;
        }
        Self::new((total - 1) / 2, hub, BaseKind::OddHole)
    }

    /// Lengths of the central cycles `D_1, …, D_s` (odd-hole base, `s ≥ 2`).
    pub fn central_cycles(&self) -> Result<Vec<usize>> {
        if self.base_kind != BaseKind::OddHole {
            return Err(Error::Precondition("central cycles are defined for the odd-hole base only".into()));
        }
        if self.hub_degree() < 2 {
            return Err(Error::Precondition("central cycles need hub degree >= 2".into()));
        }
        Ok(self.gaps().into_iter().map(|g| g + 2).collect())
    }

    pub fn odd_central_cycles(&self) -> Result<usize> {
        Ok(self.central_cycles()?.iter().filter(|&&l| l % 2 == 1).count())
    }

    /// `t(G)`: number of central 3-cycles.
    pub fn t(&self) -> Result<usize> {
        Ok(self.central_cycles()?.iter().filter(|&&l| l == 3).count())
    }

    /// `r(G)`: number of central 4-cycles.
    pub fn r(&self) -> Result<usize> {
        Ok(self.central_cycles()?.iter().filter(|&&l| l == 4).count())
    }

    /// Every descriptor for the given `k` and base kind.
    pub fn enumerate(k: usize, base_kind: BaseKind) -> Vec<FkDescriptor> {
        let m = 2 * k + 1;
        let mut out = Vec::new();
        for mask in 1u64..(1 << m) {
            let hub: Vec<usize> = super::bits(mask).map(|i| i + 1).collect();
            if hub.len() <= 2 * k {
                out.push(FkDescriptor { k, hub_neighbors: hub, base_kind });
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn base_profiles() {
        let lt = FkDescriptor::new(2, vec![1, 2, 3], BaseKind::OddHole).unwrap();
        let mut c = lt.central_cycles().unwrap();
        c.sort_unstable();
        assert_eq!(c, vec![3, 3, 5]);
        let emn = FkDescriptor::new(2, vec![1, 2, 3, 4], BaseKind::OddHole).unwrap();
        let mut c = emn.central_cycles().unwrap();
        c.sort_unstable();
        assert_eq!(c, vec![3, 3, 3, 4]);
        assert_eq!(emn.t().unwrap(), 3);
        assert_eq!(emn.r().unwrap(), 1);
    }

    #[test]
    fn invalid_descriptors() {
        assert!(FkDescriptor::new(2, (1..=5).collect(), BaseKind::OddHole).is_err());
        assert!(FkDescriptor::new(2, vec![], BaseKind::OddHole).is_err());
        assert!(FkDescriptor::new(1, vec![1], BaseKind::OddHole).is_err());
        assert!(FkDescriptor::new(2, vec![6], BaseKind::OddHole).is_err());
        let anti = FkDescriptor::new(2, vec![1, 2], BaseKind::OddAntihole).unwrap();
        assert!(anti.central_cycles().is_err());
    }

    #[test]
    fn gaps_round_trip() {
        let d = FkDescriptor::from_gaps(&[1, 3, 1, 2]).unwrap();
        assert_eq!(d.k, 3);
        assert_eq!(d.hub_neighbors, vec![1, 2, 5, 6]);
        assert_eq!(d.gaps(), vec![1, 3, 1, 2]);
    }

    #[test]
    fn odd_central_count_is_odd() {
        for k in 2..=6 {
            for d in FkDescriptor::enumerate(k, BaseKind::OddHole) {
                if d.hub_degree() >= 2 {
                    assert_eq!(d.odd_central_cycles().unwrap() % 2, 1, "{d:?}");
                }
            }
        }
    }
}

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{
    full_rank_inequality, is_near_perfect, minimally_imperfect_subgraphs,
    non_bipartite_destruction, nodes_of, split_facets, FacetSplit, NearPerfectRoute,
};
use crate::config::Config;
use crate::error::{Error, Result};
use crate::graph::{to_graph6, Graph};
use crate::lift::{destruction_sufficiency, lsplus_separate_facet_with, CertificateJson, LsPlusOptions};
use crate::polyhedra::{stab_facets, LinearInequality};
use crate::scalar::serde_rational;
use crate::scalar::{Rational, Scalar};

pub const PERFECT: &str = "perfect";
pub const MINIMALLY_IMPERFECT: &str = "minimally-imperfect";
pub const NEAR_PERFECT: &str = "near-perfect";
pub const FS_PERFECT: &str = "fs-perfect";
pub const NEAR_BIPARTITE: &str = "near-bipartite";
pub const LS_PLUS_PERFECT: &str = "ls-plus-perfect";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Yes,
    No,
    UnknownAtCap,
    /// Every facet passed numeric separation; no exact proof.
    HeuristicYes,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// Exhaustive induced-subgraph search found no odd hole or antihole.
    NoMinimallyImperfectSubgraph,
    /// Node set inducing an odd hole or odd antihole.
    Subgraph { nodes: Vec<usize> },
    /// The facets of `STAB` beyond nonnegativity and cliques.
    Facets { facets: Vec<LinearInequality> },
    /// A facet ruling the class out.
    Facet { facet: LinearInequality },
    /// Stability-number condition that fails for a minimally imperfect subgraph.
    StabilityCondition { nodes: Vec<usize>, node: Option<usize> },
    /// Node whose destruction leaves an odd cycle.
    NonBipartiteDestruction { node: usize },
    /// Every destruction is bipartite.
    BipartiteDestructions,
    /// Follows from another verdict of the same report.
    Implied { by: String },
    /// Exact point of `LS₊(FRAC(G))` violating a facet of `STAB(G)`.
    LsPlusWitness {
        certificate: CertificateJson,
        facet: LinearInequality,
        #[serde(with = "serde_rational")]
        violation: Rational,
    },
    /// Facets proved valid for `LS₊` by the destruction test.
    DestructionSufficient { facets: Vec<LinearInequality> },
    /// Largest numeric excess `max aᵀx − β` over the separated facets.
    SeparationBound { facets: Vec<LinearInequality>, max_excess: f64 },
    /// Separation exceeded the tolerance without an exact witness.
    Inconclusive { facet: LinearInequality, max_excess: f64 },
    CapExceeded { what: String, size: usize, cap: usize },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub graph6: String,
    pub n: usize,
    pub alpha: usize,
    pub verdicts: BTreeMap<String, Verdict>,
    pub evidence: BTreeMap<String, Evidence>,
}

impl ClassificationReport {
    pub fn verdict(&self, class: &str) -> Option<Verdict> {
        self.verdicts.get(class).copied()
    }

    fn set(&mut self, class: &str, v: Verdict, e: Evidence) {
        self.verdicts.insert(class.to_string(), v);
        self.evidence.insert(class.to_string(), e);
    }
}

fn cap_evidence(e: Error) -> Result<Evidence> {
    match e {
        Error::CapExceeded { what, size, cap } => Ok(Evidence::CapExceeded { what: what.to_string(), size, cap }),
        other => Err(other),
    }
}

/// Run every class predicate; with `lsplus` also decide LS₊-perfection.
pub fn classify(g: &Graph, cfg: &Config, lsplus: bool) -> Result<ClassificationReport> {
    let n = g.n();
    if n > cfg.enum_cap {
        return Err(Error::CapExceeded { what: "nodes for classification", size: n, cap: cfg.enum_cap });
    }
    let mut r = ClassificationReport {
        graph6: to_graph6(g),
        n,
        alpha: g.alpha(),
        verdicts: BTreeMap::new(),
        evidence: BTreeMap::new(),
    };

    let mi = match minimally_imperfect_subgraphs(g) {
        Ok(list) => Some(list),
        Err(e) => {
            let ev = cap_evidence(e)?;
            r.set(PERFECT, Verdict::UnknownAtCap, ev.clone());
            r.set(MINIMALLY_IMPERFECT, Verdict::UnknownAtCap, ev);
            None
        }
    };
    if let Some(list) = &mi {
        match list.first() {
            None => r.set(PERFECT, Verdict::Yes, Evidence::NoMinimallyImperfectSubgraph),
            Some(&s) => r.set(PERFECT, Verdict::No, Evidence::Subgraph { nodes: nodes_of(s) }),
        }
        if list.as_slice() == [g.full_mask()] && n >= 5 {
            r.set(MINIMALLY_IMPERFECT, Verdict::Yes, Evidence::Subgraph { nodes: nodes_of(g.full_mask()) });
        } else if let Some(&s) = list.iter().find(|&&s| s != g.full_mask()) {
            r.set(MINIMALLY_IMPERFECT, Verdict::No, Evidence::Subgraph { nodes: nodes_of(s) });
        } else {
            r.set(MINIMALLY_IMPERFECT, Verdict::No, Evidence::Implied { by: PERFECT.into() });
        }
    }

    match non_bipartite_destruction(g) {
        None => r.set(NEAR_BIPARTITE, Verdict::Yes, Evidence::BipartiteDestructions),
        Some(v) => r.set(NEAR_BIPARTITE, Verdict::No, Evidence::NonBipartiteDestruction { node: v }),
    }

    let split = if n <= cfg.hull_cap {
        Some(split_facets(g, stab_facets(g, cfg.hull_cap)?))
    } else {
        None
    };

    let combinatorial = if mi.is_some() { Some(is_near_perfect(g, NearPerfectRoute::Combinatorial, cfg.hull_cap)?) } else { None };
    let full = full_rank_inequality(g);
    match (&split, combinatorial) {
        (Some(s), comb) => {
            let by_facets = s.other.iter().all(|f| *f == full);
            if comb.is_some_and(|c| c != by_facets) {
                return Err(Error::Inconsistent(format!("near-perfect routes disagree on {}", r.graph6)));
            }
            if by_facets {
                r.set(NEAR_PERFECT, Verdict::Yes, Evidence::Facets { facets: s.other.clone() });
            } else {
                let bad = s.other.iter().find(|f| **f != full).expect("some facet differs").clone();
                r.set(NEAR_PERFECT, Verdict::No, Evidence::Facet { facet: bad });
            }
        }
        (None, Some(c)) => {
            let ev = if c { Evidence::Implied { by: "stability-number conditions".into() } } else { stability_failure(g)? };
            r.set(NEAR_PERFECT, if c { Verdict::Yes } else { Verdict::No }, ev);
        }
        (None, None) => r.set(
            NEAR_PERFECT,
            Verdict::UnknownAtCap,
            Evidence::CapExceeded { what: "nodes for facet enumeration".into(), size: n, cap: cfg.hull_cap },
        ),
    }

    match &split {
        Some(s) => {
            let fs = s.other.len() <= 1 && s.other.iter().all(LinearInequality::is_full_support);
            if fs {
                r.set(FS_PERFECT, Verdict::Yes, Evidence::Facets { facets: s.other.clone() });
            } else {
                let bad = s
                    .other
                    .iter()
                    .find(|f| !f.is_full_support())
                    .unwrap_or_else(|| &s.other[1])
                    .clone();
                r.set(FS_PERFECT, Verdict::No, Evidence::Facet { facet: bad });
            }
        }
        None => r.set(
            FS_PERFECT,
            Verdict::UnknownAtCap,
            Evidence::CapExceeded { what: "nodes for facet enumeration".into(), size: n, cap: cfg.hull_cap },
        ),
    }

    if lsplus {
        ls_plus_verdict(g, cfg, &mut r, split.as_ref())?;
    }
    Ok(r)
}

fn stability_failure(g: &Graph) -> Result<Evidence> {
    let a = g.alpha();
    for s in minimally_imperfect_subgraphs(g)? {
        if g.alpha_of(s) != a {
            return Ok(Evidence::StabilityCondition { nodes: nodes_of(s), node: None });
        }
        for v in 0..g.n() {
            let closed = g.neighbors_mask(v) | 1 << v;
            if g.alpha_of(s & !closed) + 1 != a {
                return Ok(Evidence::StabilityCondition { nodes: nodes_of(s), node: Some(v) });
            }
        }
    }
    Err(Error::Inconsistent("no failing stability condition".into()))
}

fn ls_plus_verdict(g: &Graph, cfg: &Config, r: &mut ClassificationReport, split: Option<&FacetSplit>) -> Result<()> {
    if r.verdict(PERFECT) == Some(Verdict::Yes) {
        r.set(LS_PLUS_PERFECT, Verdict::Yes, Evidence::Implied { by: PERFECT.into() });
        return Ok(());
    }
    if r.verdict(NEAR_BIPARTITE) == Some(Verdict::Yes) {
        r.set(LS_PLUS_PERFECT, Verdict::Yes, Evidence::Implied { by: NEAR_BIPARTITE.into() });
        return Ok(());
    }
    let Some(split) = split else {
        r.set(
            LS_PLUS_PERFECT,
            Verdict::UnknownAtCap,
            Evidence::CapExceeded { what: "nodes for facet enumeration".into(), size: g.n(), cap: cfg.hull_cap },
        );
        return Ok(());
    };
    let opts = LsPlusOptions::from_config(cfg);
    let mut proved = Vec::new();
    let mut separated = Vec::new();
    let mut max_excess = f64::NEG_INFINITY;
    let mut inconclusive = None;
    for f in &split.other {
        if destruction_sufficiency(g, f)? {
            proved.push(f.clone());
            continue;
        }
        let sep = lsplus_separate_facet_with(g, f, &opts)?;
        if let (Some(cert), Some(violation)) = (sep.witness, sep.violation) {
            r.set(
                LS_PLUS_PERFECT,
                Verdict::No,
                Evidence::LsPlusWitness { certificate: cert.to_json(), facet: f.clone(), violation },
            );
            return Ok(());
        }
        let excess = sep.max_estimate - sep.inequality.beta.to_f64();
        max_excess = max_excess.max(excess);
        if excess > cfg.separation_tol && inconclusive.is_none() {
            inconclusive = Some(Evidence::Inconclusive { facet: f.clone(), max_excess: excess });
        }
        separated.push(f.clone());
    }
    if let Some(ev) = inconclusive {
        r.set(LS_PLUS_PERFECT, Verdict::UnknownAtCap, ev);
    } else if separated.is_empty() {
        r.set(LS_PLUS_PERFECT, Verdict::Yes, Evidence::DestructionSufficient { facets: proved });
    } else {
        r.set(LS_PLUS_PERFECT, Verdict::HeuristicYes, Evidence::SeparationBound { facets: separated, max_excess });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, g_emn};

    #[test]
    fn c5_report() {
        let r = classify(&cycle(5).unwrap(), &Config::default(), true).unwrap();
        assert_eq!(r.alpha, 2);
        assert_eq!(r.verdict(PERFECT), Some(Verdict::No));
        assert_eq!(r.verdict(NEAR_PERFECT), Some(Verdict::Yes));
        assert_eq!(r.verdict(FS_PERFECT), Some(Verdict::Yes));
        assert_eq!(r.verdict(NEAR_BIPARTITE), Some(Verdict::Yes));
        assert_eq!(r.verdict(LS_PLUS_PERFECT), Some(Verdict::Yes));
    }

    #[test]
    fn k5_all_yes() {
        let r = classify(&complete(5).unwrap(), &Config::default(), true).unwrap();
        for c in [PERFECT, NEAR_PERFECT, FS_PERFECT, NEAR_BIPARTITE, LS_PLUS_PERFECT] {
            assert_eq!(r.verdict(c), Some(Verdict::Yes), "{c}");
        }
        assert_eq!(r.verdict(MINIMALLY_IMPERFECT), Some(Verdict::No));
    }

    #[test]
    fn emn_is_ls_plus_imperfect() {
        let r = classify(&g_emn(), &Config::default(), true).unwrap();
        assert_eq!(r.verdict(NEAR_PERFECT), Some(Verdict::Yes));
        assert_eq!(r.verdict(LS_PLUS_PERFECT), Some(Verdict::No));
        let Some(Evidence::LsPlusWitness { certificate, .. }) = r.evidence.get(LS_PLUS_PERFECT) else { panic!() };
        let cert = crate::lift::LiftCertificate::from_json(certificate).unwrap();
        assert!(cert.verify().passed);
        let json = serde_json::to_string(&r).unwrap();
        let back: ClassificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, r);
    }
}

//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! exits nonzero if a criterion outside `KNOWN_FAILING` fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use lsplab::classify::{
    bipartite_deletion, is_near_perfect, is_perfect, split_facets, NearPerfectRoute,
};
use lsplab::config::Config;
use lsplab::graph::{are_isomorphic, catalog, g_emn, g_lt, h_k, BaseKind, FkDescriptor, Graph};
use lsplab::hk::{
    build_y, clique_subdivision_pairs, gamma_star, hk_witness, is_psd_at, leading_minors, lift_clique_subdivision,
    lift_stretch, rank_inequality, rank_margin, stretch_partitions, transport_clique_subdivision_inequality,
    transport_stretch_inequality, y_hat, DetIdentity, HkCertificateBundle,
};
use lsplab::lift::{lsplus_separate_facet_with, verify_in_mplus, LsPlusOptions};
use lsplab::polyhedra::{
    frac_relaxation, odd_cycle_relaxation, polytope_equal, qstab, stab_facets, stab_max, HPolytope, LinearInequality,
    Polytope,
};
use lsplab::reduction::{reduce_to_base, replay_matches_input};
use lsplab::Rational;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

const SEPARATION_TOL: f64 = 1e-6;
const THRESHOLD_STEP: (i64, i64) = (1, 1000);
const HK_RANGE: std::ops::RangeInclusive<usize> = 2..=10;
const DET_RANGE: std::ops::RangeInclusive<usize> = 2..=8;
const THRESHOLD_RANGE: std::ops::RangeInclusive<usize> = 2..=6;
const REDUCTION_MAX_K: usize = 6;

/// Criteria expected to fail; see the project notes for the reasons.
const KNOWN_FAILING: &[usize] = &[5];

struct Outcome {
    pass: bool,
    detail: String,
}

fn rat(p: i64, q: i64) -> Rational {
    Rational::new(p.into(), q.into())
}

/// Determinant by Gaussian elimination with row swaps.
fn det_oracle(m: &[Vec<Rational>]) -> Rational {
    let mut a = m.to_vec();
    let n = a.len();
    let mut det = Rational::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return Rational::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for j in c..n {
                let v = &f * &a[c][j];
                a[r][j] -= v;
            }
        }
    }
    det
}

/// PSD test for a symmetric rational matrix by symmetric elimination on
/// positive diagonal pivots.
fn psd_oracle(m: &[Vec<Rational>]) -> bool {
    let mut a = m.to_vec();
    let mut live: Vec<usize> = (0..a.len()).collect();
    while !live.is_empty() {
        if live.iter().any(|&i| a[i][i].is_negative()) {
            return false;
        }
        let Some(pos) = live.iter().position(|&i| a[i][i].is_positive()) else {
            return live.iter().all(|&i| live.iter().all(|&j| a[i][j].is_zero()));
        };
        let p = live.remove(pos);
        for &i in &live {
            for &j in &live {
                let v = &a[i][p] * &a[p][j] / &a[p][p];
                a[i][j] -= v;
            }
        }
    }
    true
}

fn rows_of(m: &lsplab::RationalMatrix) -> Vec<Vec<Rational>> {
    m.to_rows()
}

fn criterion_1() -> Outcome {
    let mut fails = Vec::new();
    for k in HK_RANGE {
        let g = match gamma_star(k) {
            Ok(g) => g,
            Err(e) => {
                fails.push(format!("k={k}: {e}"));
                continue;
            }
        };
        let in_unit = g.is_positive() && g < Rational::one();
        let closed = Rational::one() - rat(1, (4 * k * k + 10 * k + 5) as i64);
        let (x, cert) = hk_witness(k).expect("witness");
        let exact = verify_in_mplus(&cert).passed;
        let oracle_psd = psd_oracle(&rows_of(&cert.y));
        let kk = Rational::from_integer((2 * k as i64 + 2).into());
        let expected = (rat(2, 1) - rat(2, 1) * &g) / (kk + &g);
        let margin = rank_inequality(k).violation(&x);
        let bundle_ok = HkCertificateBundle::build(k).map(|b| b.check().passed()).unwrap_or(false);
        let graph_ok = are_isomorphic(&cert.graph, &h_k(k).expect("H^k"));
        if !(in_unit && g == closed && exact && oracle_psd && margin == expected && margin.is_positive()
            && margin == rank_margin(k, &g) && bundle_ok && graph_ok)
        {
            fails.push(format!("k={k}"));
        }
    }
    Outcome { pass: fails.is_empty(), detail: format!("k in 2..=10, exact; failures: {fails:?}") }
}

fn criterion_2() -> Outcome {
    let mut fails = Vec::new();
    for k in DET_RANGE {
        let id = DetIdentity::compute(k).expect("identity");
        let yh = y_hat::<Rational>(k);
        let rows = rows_of(&yh);
        let direct = det_oracle(&rows);
        let minors_lib = leading_minors(&yh);
        let minors_oracle: Vec<Rational> = (1..=rows.len())
            .map(|s| det_oracle(&rows[..s].iter().map(|r| r[..s].to_vec()).collect::<Vec<_>>()))
            .collect();
        let ok = id.holds()
            && id.direct == direct
            && minors_lib == minors_oracle
            && minors_oracle.iter().all(Signed::is_positive);
        if !ok {
            fails.push(k);
        }
    }
    Outcome { pass: fails.is_empty(), detail: format!("k in 2..=8, both forms = direct = oracle, minors > 0; failures: {fails:?}") }
}

fn criterion_3() -> Outcome {
    let d = rat(THRESHOLD_STEP.0, THRESHOLD_STEP.1);
    let mut fails = Vec::new();
    for k in THRESHOLD_RANGE {
        let g = gamma_star(k).expect("gamma*");
        let below = &g - &d;
        let above = &g + &d;
        let ob = psd_oracle(&rows_of(&build_y::<Rational>(k, &below)));
        let oa = psd_oracle(&rows_of(&build_y::<Rational>(k, &above)));
        let at = psd_oracle(&rows_of(&build_y::<Rational>(k, &g)));
        if ob || !oa || !at || is_psd_at(k, &below) || !is_psd_at(k, &above) {
            fails.push(k);
        }
    }
    Outcome { pass: fails.is_empty(), detail: format!("k in 2..=6, step 1/1000, exact; failures: {fails:?}") }
}

fn criterion_4(cfg: &Config) -> Outcome {
    let opts = LsPlusOptions::from_config(cfg);
    let graphs: Vec<Graph> = (1..=6)
        .flat_map(|n| catalog(n).expect("catalog"))
        .filter(|g| !is_perfect(g).expect("perfect"))
        .collect();
    let results: Vec<(Graph, bool, bool)> = graphs
        .par_iter()
        .map(|g| {
            let facets = split_facets(g, stab_facets(g, cfg.hull_cap).expect("facets")).other;
            let mut witness = false;
            let mut within = true;
            for f in &facets {
                let r = lsplus_separate_facet_with(g, f, &opts).expect("separation");
                if let (Some(c), Some(v)) = (&r.witness, &r.violation) {
                    witness |= verify_in_mplus(c).passed && v.is_positive() && f.violation(&c.x) == *v;
                }
                within &= r.max_estimate <= r.beta() + SEPARATION_TOL;
            }
            (g.clone(), witness, within)
        })
        .collect();
    let special = [g_lt(), g_emn()];
    let flagged: Vec<&Graph> = results.iter().filter(|r| r.1).map(|r| &r.0).collect();
    let flagged_ok = flagged.len() == 2 && special.iter().all(|s| flagged.iter().any(|g| are_isomorphic(g, s)));
    let others_ok = results.iter().filter(|r| !r.1).all(|r| r.2);
    Outcome {
        pass: flagged_ok && others_ok,
        detail: format!(
            "{} imperfect graphs, {} exact witnesses (G_LT and G_EMN: {flagged_ok}), others within β+{SEPARATION_TOL}: {others_ok}",
            results.len(),
            flagged.len()
        ),
    }
}

fn criterion_5() -> Outcome {
    let (x, cert) = hk_witness(2).expect("witness");
    let ineq = rank_inequality(2);
    let margin = ineq.violation(&x);
    let (mut stretches, mut stretch_ok) = (0, 0);
    for v in 0..cert.graph.n() {
        for (a1, a2) in stretch_partitions(&cert.graph, v) {
            stretches += 1;
            let Ok(l) = lift_stretch(&cert, v, &a1, &a2) else { continue };
            let t = transport_stretch_inequality(&ineq, v).expect("transport");
            if l.verify().passed && valid(&t, &l.graph) && t.violation(&l.x) == margin {
                stretch_ok += 1;
            }
        }
    }
    let pairs = clique_subdivision_pairs(&cert.graph, 3);
    let (mut verified, mut outside, mut kept) = (0, 0, 0);
    for (k, e) in &pairs {
        let Ok(l) = lift_clique_subdivision(&cert, k, *e) else { continue };
        if l.verify().passed {
            verified += 1;
        }
        let t = transport_clique_subdivision_inequality(&ineq, *e).expect("transport");
        if valid(&t, &l.graph) && t.violation(&l.x) == margin {
            kept += 1;
        }
        let facets = stab_facets(&l.graph, 10).expect("facets");
        if facets.iter().any(|f| f.violation(&l.x).is_positive()) {
            outside += 1;
        }
    }
    let pass = stretches > 0 && stretch_ok == stretches && verified == pairs.len() && kept == pairs.len();
    Outcome {
        pass,
        detail: format!(
            "stretch {stretch_ok}/{stretches} verified with margin {margin}; clique subdivision {verified}/{} verified, \
             lifted point outside STAB {outside}/{}, transported margin unchanged {kept}/{}",
            pairs.len(),
            pairs.len(),
            pairs.len()
        ),
    }
}

fn valid(ineq: &LinearInequality, g: &Graph) -> bool {
    stab_max(g, &ineq.a).0 <= ineq.beta
}

fn criterion_6() -> Outcome {
    let mut descriptors = Vec::new();
    for k in 2..=REDUCTION_MAX_K {
        descriptors.extend(
            FkDescriptor::enumerate(k, BaseKind::OddHole)
                .into_iter()
                .filter(|d| d.odd_central_cycles().map(|c| c >= 3).unwrap_or(false)),
        );
    }
    let bad: Vec<String> = descriptors
        .par_iter()
        .filter_map(|d| {
            let ok = reduce_to_base(d).and_then(|t| replay_matches_input(&t)).unwrap_or(false);
            (!ok).then(|| format!("{:?}", d.hub_neighbors))
        })
        .collect();
    Outcome {
        pass: bad.is_empty() && !descriptors.is_empty(),
        detail: format!("{} descriptors with k <= {REDUCTION_MAX_K}, failures: {}", descriptors.len(), bad.len()),
    }
}

fn criterion_7(cfg: &Config) -> Outcome {
    let graphs: Vec<Graph> = (1..=7).flat_map(|n| catalog(n).expect("catalog")).collect();
    let bad: Vec<String> = graphs
        .par_iter()
        .filter_map(|g| {
            let n = g.n();
            let stab = Polytope::H(HPolytope::new(n, stab_facets(g, cfg.hull_cap).expect("facets")));
            let eq = |p: HPolytope| polytope_equal(&Polytope::H(p), &stab).expect("equality");
            let mut why = Vec::new();
            if g.is_bipartite() != eq(frac_relaxation(g)) {
                why.push("bipartite");
            }
            if is_perfect(g).expect("perfect") != eq(qstab(g)) {
                why.push("perfect");
            }
            if bipartite_deletion(g).is_some() && !eq(odd_cycle_relaxation(g).expect("odd cycles")) {
                why.push("odd-cycle");
            }
            let comb = is_near_perfect(g, NearPerfectRoute::Combinatorial, cfg.hull_cap).expect("np");
            let fac = is_near_perfect(g, NearPerfectRoute::Facet, cfg.hull_cap).expect("np");
            if comb != fac {
                why.push("near-perfect");
            }
            (!why.is_empty()).then(|| format!("{} {why:?}", lsplab::graph::to_graph6(g)))
        })
        .collect();
    Outcome {
        pass: bad.is_empty(),
        detail: format!("{} graphs on 1..=7 nodes, failures: {bad:?}", graphs.len()),
    }
}

/// Odd hole or odd antihole on all nodes.
fn minimally_imperfect_oracle(g: &Graph) -> bool {
    let n = g.n();
    if n < 5 || n % 2 == 0 {
        return false;
    }
    let is_cycle = |h: &Graph| (0..n).all(|v| h.degree(v) == 2) && h.is_connected();
    is_cycle(g) || is_cycle(&g.complement())
}

/// `G` is `K_m` joined with a minimally imperfect graph.
fn complete_join_oracle(g: &Graph) -> bool {
    let universal: u64 = (0..g.n()).filter(|&v| g.degree(v) + 1 == g.n()).fold(0, |m, v| m | 1 << v);
    let rest = g.full_mask() & !universal;
    minimally_imperfect_oracle(&g.induced(rest).0)
}

fn criterion_8(cfg: &Config) -> Outcome {
    let opts = LsPlusOptions::from_config(cfg);
    let graphs: Vec<Graph> = (1..=7).flat_map(|n| catalog(n).expect("catalog")).collect();
    let results: Vec<(String, Status)> = graphs
        .par_iter()
        .filter_map(|g| {
            if is_perfect(g).expect("perfect") {
                return None;
            }
            let other = split_facets(g, stab_facets(g, cfg.hull_cap).expect("facets")).other;
            if !(other.len() <= 1 && other.iter().all(LinearInequality::is_full_support)) {
                return None;
            }
            let mut witness = false;
            let mut within = true;
            for f in &other {
                let r = lsplus_separate_facet_with(g, f, &opts).expect("separation");
                if let Some(c) = &r.witness {
                    witness |= verify_in_mplus(c).passed;
                }
                within &= r.max_estimate <= r.beta() + SEPARATION_TOL;
            }
            let status = match (witness, within) {
                (true, _) => Status::Witness,
                (false, false) => Status::Inconclusive,
                (false, true) if complete_join_oracle(g) => Status::Join,
                (false, true) => Status::NotJoin,
            };
            Some((lsplab::graph::to_graph6(g), status))
        })
        .collect();
    let count = |s: Status| results.iter().filter(|r| r.1 == s).count();
    let bad: Vec<&String> = results.iter().filter(|r| r.1 == Status::NotJoin).map(|r| &r.0).collect();
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "{} properly fs-perfect graphs on <= 7 nodes: {} exact witnesses, {} complete joins, {} inconclusive; \
             not a complete join: {bad:?}",
            results.len(),
            count(Status::Witness),
            count(Status::Join),
            count(Status::Inconclusive)
        ),
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Witness,
    Join,
    NotJoin,
    Inconclusive,
}

fn main() -> ExitCode {
    let cfg = Config::default();
    let criteria: Vec<(usize, &str, Duration, Box<dyn Fn() -> Outcome + '_>)> = vec![
        (1, "H^k certification", Duration::from_secs(10), Box::new(criterion_1)),
        (2, "determinant identity", Duration::from_secs(5), Box::new(criterion_2)),
        (3, "PSD threshold", Duration::from_secs(5), Box::new(criterion_3)),
        (4, "six-node census", Duration::from_secs(1800), Box::new(|| criterion_4(&cfg))),
        (5, "certificate transport", Duration::from_secs(60), Box::new(criterion_5)),
        (6, "reduction soundness", Duration::from_secs(600), Box::new(criterion_6)),
        (7, "polyhedral identities", Duration::from_secs(1800), Box::new(|| criterion_7(&cfg))),
        (8, "fs-perfect structure", Duration::from_secs(1800), Box::new(|| criterion_8(&cfg))),
    ];
    let mut unexpected = Vec::new();
    for (id, name, budget, run) in criteria {
        let start = Instant::now();
        let out = run();
        let took = start.elapsed();
        let pass = out.pass && took <= budget;
        let tag = match (pass, KNOWN_FAILING.contains(&id)) {
            (true, _) => "PASS",
            (false, true) => "FAIL (known)",
            (false, false) => "FAIL",
        };
        println!("criterion {id} [{name}]: {tag} in {:.2}s (budget {}s): {}", took.as_secs_f64(), budget.as_secs(), out.detail);
        if !pass && !KNOWN_FAILING.contains(&id) {
            unexpected.push(id);
        }
        if pass && KNOWN_FAILING.contains(&id) {
            println!("criterion {id} now passes; remove it from KNOWN_FAILING");
            unexpected.push(id);
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("unexpected outcomes: {unexpected:?}");
        ExitCode::FAILURE
    }
}

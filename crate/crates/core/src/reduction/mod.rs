//! Reduction of odd-hole hub graphs with at least three odd central cycles
//! down to `G_LT` or `G_EMN`.
//!
//! The engine works on cyclic gap profiles (central cycle length = gap + 2)
//! and only materializes graphs to replay a trace.

use serde::{Deserialize, Serialize};

use crate::classify::fk_membership;
use crate::error::{Error, Result};
use crate::graph::{are_isomorphic, clique_subdivide, g_emn, g_lt, k_stretch, odd_subdivide, BaseKind, FkDescriptor, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReductionOp {
    ContractOddPath,
    MergeThreeTriangles,
    #[serde(rename = "unstretch-4-cycle")]
    UnstretchFourCycle,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Terminal {
    #[serde(rename = "G_LT")]
    GLt,
    #[serde(rename = "G_EMN")]
    GEmn,
}

impl Terminal {
    pub fn graph(self) -> Graph {
        match self {
            Terminal::GLt => g_lt(),
            Terminal::GEmn => g_emn(),
        }
    }
}

/// One reduction step. `location` is the central cycle index in `before`
/// where the operation applies (the first of three for a merge).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionStep {
    pub op: ReductionOp,
    pub location: usize,
    pub before: FkDescriptor,
    pub after: FkDescriptor,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub input: FkDescriptor,
    pub steps: Vec<ReductionStep>,
    pub terminal: Terminal,
}

fn lengths(gaps: &[usize]) -> Vec<usize> {
    gaps.iter().map(|g| g + 2).collect()
}

fn odd_count(gaps: &[usize]) -> usize {
    gaps.iter().filter(|&&g| g % 2 == 1).count()
}

fn measure(d: &FkDescriptor) -> usize {
    2 * d.k + 1 + d.hub_degree()
}

fn check_hypothesis(d: &FkDescriptor) -> Result<Vec<usize>> {
    if d.base_kind != BaseKind::OddHole {
        return Err(Error::Precondition("reduction needs an odd-hole rim".into()));
    }
    if d.hub_degree() < 3 {
        return Err(Error::Precondition(format!("hub degree {} < 3", d.hub_degree())));
    }
    let gaps = d.gaps();
    let odd = odd_count(&gaps);
    if odd < 3 {
        return Err(Error::Precondition(format!(
            "{odd} odd central cycle(s); at least three are required"
        )));
    }
    Ok(gaps)
}

/// Gap profile after contracting every central cycle: to `{5, 3, …, 3}` when
/// all are odd (the first cycle of length at least 5 keeps length 5),
/// otherwise odd cycles to 3 and even cycles to 4.
pub fn contracted_gaps(gaps: &[usize]) -> Vec<usize> {
    if gaps.iter().all(|g| g % 2 == 1) {
        let keep = gaps.iter().position(|&g| g >= 3);
        gaps.iter().enumerate().map(|(i, _)| if Some(i) == keep { 3 } else { 1 }).collect()
    } else {
        gaps.iter().map(|g| if g % 2 == 1 { 1 } else { 2 }).collect()
    }
}

pub fn contract_odd_paths(d: &FkDescriptor) -> Result<FkDescriptor> {
    let gaps = check_hypothesis(d)?;
    FkDescriptor::from_gaps(&contracted_gaps(&gaps))
}

fn rotate(gaps: &[usize], i: usize) -> Vec<usize> {
    let mut r = gaps[i..].to_vec();
    r.extend_from_slice(&gaps[..i]);
    r
}

/// Smallest rotation index starting three consecutive central triangles.
pub fn triangle_run(gaps: &[usize]) -> Option<usize> {
    let s = gaps.len();
    (0..s).find(|&i| s >= 3 && (0..3).all(|j| gaps[(i + j) % s] == 1))
}

fn merged(gaps: &[usize], i: usize) -> Vec<usize> {
    let r = rotate(gaps, i);
    let mut out = vec![1];
    out.extend_from_slice(&r[3..]);
    out
}

/// Replace three consecutive central triangles by one; `k` and the hub
/// degree drop by 1 and 2.
pub fn merge_three_triangles(d: &FkDescriptor) -> Result<FkDescriptor> {
    if d.base_kind != BaseKind::OddHole || d.hub_degree() < 3 {
        return Err(Error::Precondition("merge needs an odd-hole rim and hub degree >= 3".into()));
    }
    let gaps = d.gaps();
    let i = triangle_run(&gaps).ok_or_else(|| Error::Precondition("no three consecutive central triangles".into()))?;
    if d.k < 3 {
        return Err(Error::Precondition("merge would leave k < 2".into()));
    }
    FkDescriptor::from_gaps(&merged(&gaps, i))
}

/// Remove one central 4-cycle by merging its three rim nodes into one;
/// needs `r ≥ 2`.
pub fn unstretch_4cycle(d: &FkDescriptor) -> Result<FkDescriptor> {
    let r = d.r()?;
    if r < 2 {
        return Err(Error::Precondition(format!("r = {r}; unstretching needs r >= 2")));
    }
    let gaps = d.gaps();
    let i = gaps.iter().position(|&g| g == 2).expect("r >= 2");
    let out = FkDescriptor::from_gaps(&rotate(&gaps, i)[1..])?;
    if out.r()? != r - 1 {
        return Err(Error::Inconsistent("unstretch did not lower r by one".into()));
    }
    Ok(out)
}

fn terminal_of(gaps: &[usize]) -> Option<Terminal> {
    let mut s = gaps.to_vec();
    s.sort_unstable();
    match s.as_slice() {
        [1, 1, 3] => Some(Terminal::GLt),
        [1, 1, 1, 2] => Some(Terminal::GEmn),
        _ => None,
    }
}

fn push(steps: &mut Vec<ReductionStep>, op: ReductionOp, location: usize, before: &FkDescriptor, after: FkDescriptor) -> Result<FkDescriptor> {
    if measure(&after) >= measure(before) {
        return Err(Error::Inconsistent(format!("{op:?} did not shrink 2k+1+δ(0)")));
    }
    let (ob, oa) = (odd_count(&before.gaps()), odd_count(&after.gaps()));
    if ob % 2 != 1 || oa % 2 != 1 {
        return Err(Error::Inconsistent("odd central cycle count lost its parity".into()));
    }
    steps.push(ReductionStep { op, location, before: before.clone(), after: after.clone() });
    Ok(after)
}

/// Shrink `d` to `G_LT` or `G_EMN`: contract paths, then merge triangles
/// while at least three odd cycles remain, then unstretch 4-cycles, looping.
pub fn reduce_to_base(d: &FkDescriptor) -> Result<ReductionTrace> {
    check_hypothesis(d)?;
    let mut cur = FkDescriptor::from_gaps(&d.gaps())?;
    let mut steps = Vec::new();
    loop {
        let gaps = cur.gaps();
        if cur.k == 2 {
            let terminal = terminal_of(&gaps)
                .ok_or_else(|| Error::Inconsistent(format!("k = 2 profile {:?} is not a base graph", lengths(&gaps))))?;
            return Ok(ReductionTrace { input: d.clone(), steps, terminal });
        }
        let target = contracted_gaps(&gaps);
        if let Some(i) = (0..gaps.len()).find(|&i| gaps[i] != target[i]) {
            let mut next = gaps.clone();
            next[i] = target[i];
            cur = push(&mut steps, ReductionOp::ContractOddPath, i, &cur, FkDescriptor::from_gaps(&next)?)?;
            continue;
        }
        if let Some(i) = triangle_run(&gaps) {
            let next = merged(&gaps, i);
            if odd_count(&next) >= 3 {
                cur = push(&mut steps, ReductionOp::MergeThreeTriangles, i, &cur, FkDescriptor::from_gaps(&next)?)?;
                continue;
            }
        }
        if cur.r()? >= 2 {
            let i = gaps.iter().position(|&g| g == 2).expect("r >= 2");
            let next = unstretch_4cycle(&cur)?;
            cur = push(&mut steps, ReductionOp::UnstretchFourCycle, i, &cur, next)?;
            continue;
        }
        return Err(Error::Inconsistent(format!("no reduction applies to profile {:?}", lengths(&gaps))));
    }
}

/// Recognize `g` as an odd-hole hub graph and reduce it.
pub fn reduce_graph(g: &Graph) -> Result<ReductionTrace> {
    let m = fk_membership(g).ok_or_else(|| Error::Precondition("graph is not a hub graph over an odd hole or antihole".into()))?;
    reduce_to_base(&m.descriptor)
}

/// Node following `p` on the rim `1..=m`.
fn rim_next(p: usize, m: usize) -> usize {
    if p == m {
        1
    } else {
        p + 1
    }
}

/// Apply the forward operation of `step` to the graph of `step.after`.
pub fn forward(step: &ReductionStep) -> Result<Graph> {
    let a = &step.after;
    let g = a.to_graph()?;
    let hub = &a.hub_neighbors;
    match step.op {
        ReductionOp::ContractOddPath => {
            let i = step.location;
            let grow = step.before.gaps()[i] - a.gaps()[i];
            let p = hub[i];
            odd_subdivide(&g, (p, rim_next(p, a.rim())), grow + 1)
        }
        ReductionOp::MergeThreeTriangles => clique_subdivide(&g, &[0, hub[0], hub[1]], (hub[0], hub[1])),
        ReductionOp::UnstretchFourCycle => {
            let v = hub[0];
            k_stretch(&g, v, &[0, a.rim()], &[0, rim_next(v, a.rim())])
        }
    }
}

/// Replay the trace from its terminal graph, checking each step against the
/// graph it reverses, and return the rebuilt graph.
pub fn replay(trace: &ReductionTrace) -> Result<Graph> {
    let base = match trace.steps.last() {
        Some(s) => s.after.to_graph()?,
        None => FkDescriptor::from_gaps(&trace.input.gaps())?.to_graph()?,
    };
    if !are_isomorphic(&base, &trace.terminal.graph()) {
        return Err(Error::Inconsistent("trace does not end at its terminal".into()));
    }
    let mut built = base;
    for (idx, step) in trace.steps.iter().enumerate().rev() {
        let expected_after = step.after.to_graph()?;
        if !are_isomorphic(&built, &expected_after) {
            return Err(Error::Inconsistent(format!("step {idx} starts from the wrong graph")));
        }
        built = forward(step)?;
        if !are_isomorphic(&built, &step.before.to_graph()?) {
            return Err(Error::Inconsistent(format!("step {idx} ({:?}) does not rebuild its input", step.op)));
        }
    }
    Ok(built)
}

/// Replay and compare with the input graph up to isomorphism.
pub fn replay_matches_input(trace: &ReductionTrace) -> Result<bool> {
    let built = replay(trace)?;
    Ok(are_isomorphic(&built, &trace.input.to_graph()?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn profile(d: &FkDescriptor) -> Vec<usize> {
        d.central_cycles().unwrap()
    }

    fn from_lengths(l: &[usize]) -> FkDescriptor {
        FkDescriptor::from_gaps(&l.iter().map(|x| x - 2).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn contraction_examples() {
        assert_eq!(profile(&contract_odd_paths(&from_lengths(&[5, 5, 3])).unwrap()), vec![5, 3, 3]);
        assert_eq!(profile(&contract_odd_paths(&from_lengths(&[3, 3, 3, 6])).unwrap()), vec![3, 3, 3, 4]);
        assert_eq!(profile(&contract_odd_paths(&from_lengths(&[3, 3, 3, 4])).unwrap()), vec![3, 3, 3, 4]);
        assert!(contract_odd_paths(&from_lengths(&[3, 4, 4])).is_err());
    }

    #[test]
    fn merge_examples() {
        let mut p = profile(&merge_three_triangles(&from_lengths(&[3, 3, 3, 3, 5])).unwrap());
        p.sort_unstable();
        assert_eq!(p, vec![3, 3, 5]);
        let mut p = profile(&merge_three_triangles(&from_lengths(&[3, 3, 3, 3, 3, 4])).unwrap());
        p.sort_unstable();
        assert_eq!(p, vec![3, 3, 3, 4]);
        assert!(merge_three_triangles(&from_lengths(&[3, 3, 4, 3, 3, 5])).is_err());
    }

    #[test]
    fn unstretch_examples() {
        let mut p = profile(&unstretch_4cycle(&from_lengths(&[3, 3, 3, 4, 4])).unwrap());
        p.sort_unstable();
        assert_eq!(p, vec![3, 3, 3, 4]);
        assert!(unstretch_4cycle(&from_lengths(&[3, 3, 3, 4])).is_err());
    }

    #[test]
    fn base_graphs_have_empty_traces() {
        let lt = fk_membership(&g_lt()).unwrap().descriptor;
        let t = reduce_to_base(&lt).unwrap();
        assert!(t.steps.is_empty());
        assert_eq!(t.terminal, Terminal::GLt);
        assert!(replay_matches_input(&t).unwrap());
        let t = reduce_graph(&g_emn()).unwrap();
        assert_eq!(t.terminal, Terminal::GEmn);
    }

    #[test]
    fn single_odd_cycle_is_rejected() {
        let d = from_lengths(&[3, 4, 4, 4]);
        assert_eq!(d.odd_central_cycles().unwrap(), 1);
        assert!(matches!(reduce_to_base(&d), Err(Error::Precondition(_))));
    }

    #[test]
    fn mixed_trace_replays() {
        let d = from_lengths(&[5, 4, 3, 4, 3, 6]);
        let t = reduce_to_base(&d).unwrap();
        assert!(!t.steps.is_empty());
        assert!(replay_matches_input(&t).unwrap());
        let ops: Vec<ReductionOp> = t.steps.iter().map(|s| s.op).collect();
        assert!(ops.contains(&ReductionOp::ContractOddPath));
        assert!(ops.contains(&ReductionOp::UnstretchFourCycle));
        let json = serde_json::to_string(&t).unwrap();
        assert!(json.contains("unstretch-4-cycle"));
        let back: ReductionTrace = serde_json::from_str(&json).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn exhaustive_small() {
        for k in 2..=4 {
            for d in FkDescriptor::enumerate(k, BaseKind::OddHole) {
                if d.hub_degree() < 3 || d.odd_central_cycles().unwrap() < 3 {
                    continue;
                }
                let t = reduce_to_base(&d).unwrap();
                assert!(replay_matches_input(&t).unwrap(), "{d:?}");
            }
        }
    }
}

//! 2-Disjoint Connected Subgraphs.
//!
//! Given a connected graph and disjoint non-empty terminal sets `Z1`, `Z2`,
//! decide whether there are disjoint `A1 ⊇ Z1`, `A2 ⊇ Z2` with both `G[A1]` and
//! `G[A2]` connected.
//!
//! The solver names the smaller terminal set `Z1` and lists candidates for
//! `A1` in one of two ways, depending on `α = |Z1| / n`:
//!
//! * `α <= 0.0839`: every minimal Z1-connecting set of `G[V \ Z2]`. Some
//!   solution always has a minimal `A1`, so this list is complete.
//! * otherwise: `Z1 ∪ B` for every `B ⊆ V \ (Z1 ∪ Z2)` with `G[Z1 ∪ B]`
//!   connected.
//!
//! A candidate `A` succeeds when all of `Z2` lies in one component of
//! `G[V \ A]`; that component becomes `A2`.

use std::ops::ControlFlow;

use crate::connecting::{enumerate_minimal_connecting, ConnectingOptions};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::set::VertexSet;

/// Largest `|Z1| / n` for which candidates come from minimal connecting sets.
pub const ALPHA_THRESHOLD: f64 = 0.0839;

#[derive(Clone, Debug)]
pub struct DcsInstance {
    graph: Graph,
    z1: VertexSet,
    z2: VertexSet,
}

impl DcsInstance {
    pub fn new(graph: Graph, z1: VertexSet, z2: VertexSet) -> Result<Self> {
        graph.check_set(&z1)?;
        graph.check_set(&z2)?;
        if z1.is_empty() || z2.is_empty() {
            return Err(Error::Precondition("terminal sets must be non-empty".into()));
        }
        if !z1.is_disjoint(&z2) {
            return Err(Error::Precondition("terminal sets must be disjoint".into()));
        }
        if !graph.connected_within(&graph.vertices()) {
            return Err(Error::Disconnected);
        }
        Ok(DcsInstance { graph, z1, z2 })
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn z1(&self) -> &VertexSet {
        &self.z1
    }

    pub fn z2(&self) -> &VertexSet {
        &self.z2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DcsWitness {
    pub a1: VertexSet,
    pub a2: VertexSet,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Strategy {
    EnumerateMinimal,
    SubsetLoop,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SolveOptions {
    /// Overrides the threshold rule.
    pub strategy: Option<Strategy>,
    /// Keep going after the first witness and count every successful
    /// candidate.
    pub count_all: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DcsOutcome {
    /// The first witness found, in the orientation of the instance.
    pub witness: Option<DcsWitness>,
    pub strategy: Strategy,
    /// Candidates for the smaller side examined.
    pub candidates: u64,
    /// Candidates that extended to a witness.
    pub witnesses: u64,
}

/// Threshold rule on `α = min(z1, z2) / n`.
pub fn select_strategy(n: usize, z1: usize, z2: usize) -> Strategy {
    let alpha = z1.min(z2) as f64 / n as f64;
    if alpha <= ALPHA_THRESHOLD {
        Strategy::EnumerateMinimal
    } else {
        Strategy::SubsetLoop
    }
}

/// If `Z2` lies inside one component of `G[V \ A]`, returns that component.
pub fn stage2_check(g: &Graph, z2: &VertexSet, a: &VertexSet) -> Result<Option<VertexSet>> {
    g.check_set(z2)?;
    g.check_set(a)?;
    if !a.is_disjoint(z2) {
        return Err(Error::Precondition("candidate meets the second terminal set".into()));
    }
    Ok(second_side(g, z2, a))
}

fn second_side(g: &Graph, z2: &VertexSet, a: &VertexSet) -> Option<VertexSet> {
    let start = z2.first()?;
    let part = g.reach_within(&a.complement(), start);
    z2.is_subset(&part).then_some(part)
}

pub fn verify_witness(inst: &DcsInstance, w: &DcsWitness) -> bool {
    let g = &inst.graph;
    w.a1.universe() == g.n()
        && w.a2.universe() == g.n()
        && inst.z1.is_subset(&w.a1)
        && inst.z2.is_subset(&w.a2)
        && w.a1.is_disjoint(&w.a2)
        && g.connected_within(&w.a1)
        && g.connected_within(&w.a2)
}

/// Solves with the threshold rule, stopping at the first witness.
pub fn solve(inst: &DcsInstance) -> DcsOutcome {
    solve_with(inst, &SolveOptions::default())
}

pub fn solve_with(inst: &DcsInstance, opts: &SolveOptions) -> DcsOutcome {
    let g = &inst.graph;
    let swapped = inst.z1.len() > inst.z2.len();
    let (small, large) = if swapped { (&inst.z2, &inst.z1) } else { (&inst.z1, &inst.z2) };
    let strategy = opts.strategy.unwrap_or_else(|| select_strategy(g.n(), small.len(), large.len()));

    let mut out = DcsOutcome { witness: None, strategy, candidates: 0, witnesses: 0 };
    let mut consider = |a: &VertexSet| {
        out.candidates += 1;
        if let Some(a2) = second_side(g, large, a) {
            out.witnesses += 1;
            if out.witness.is_none() {
                out.witness = Some(DcsWitness { a1: a.clone(), a2 });
            }
            if !opts.count_all {
                return ControlFlow::Break(());
            }
        }
        ControlFlow::Continue(())
    };

    match strategy {
        Strategy::EnumerateMinimal => {
            let (h, to_g) = g.induced_subgraph(&large.complement()).expect("same universe");
            let mut from_g = vec![usize::MAX; g.n()];
            for (i, &v) in to_g.iter().enumerate() {
                from_g[v] = i;
            }
            let terminals = VertexSet::with_ids(h.n(), small.iter().map(|v| from_g[v]));
            let mut lift = |s: &VertexSet| {
                let a = VertexSet::with_ids(g.n(), s.iter().map(|v| to_g[v]));
                debug_assert!(g.connected_within(&a));
                consider(&a)
            };
            enumerate_minimal_connecting(&h, &terminals, &ConnectingOptions::default(), &mut lift)
                .expect("terminals belong to the subgraph");
        }
        Strategy::SubsetLoop => {
            let free = small.union(large).complement().to_vec();
            let mut a = small.clone();
            loop {
                if g.connected_within(&a) && consider(&a).is_break() {
                    break;
                }
                let Some(i) = free.iter().position(|&v| !a.contains(v)) else {
                    break;
                };
                for &v in &free[..i] {
                    a.remove(v);
                }
                a.insert(free[i]);
            }
        }
    }

    if swapped {
        out.witness = out.witness.map(|w| DcsWitness { a1: w.a2, a2: w.a1 });
    }
    out
}

/// Per-vertex growth base of `C((1 - 2α)n, αn) * 3^((1 - 2α)n / 3)`, the
/// candidate count of the minimal-set regime, from the entropy form of the
/// binomial. `None` for `α` outside `(0, 1/3]`, where the binomial vanishes.
pub fn enumeration_regime_base(alpha: f64) -> Option<f64> {
    if !(alpha > 0.0 && alpha <= 1.0 / 3.0 + 1e-12) {
        return None;
    }
    let beta = 1.0 - 2.0 * alpha;
    let xlnx = |x: f64| if x <= 0.0 { 0.0 } else { x * x.ln() };
    let ln_binom = xlnx(beta) - xlnx(alpha) - xlnx(beta - alpha);
    Some((ln_binom + beta / 3.0 * 3f64.ln()).exp())
}

/// Per-vertex growth base `2^(1 - 2α)` of the subset regime.
pub fn subset_regime_base(alpha: f64) -> f64 {
    2f64.powf(1.0 - 2.0 * alpha)
}

/// [`enumeration_regime_base`] on the grid `step, 2 step, ..` up to and
/// including `alpha_max`. Points above `1/3` are left out.
pub fn runtime_bound_curve(alpha_max: f64, step: f64) -> Result<Vec<(f64, f64)>> {
    if !(step > 0.0 && step < alpha_max && alpha_max <= 0.5) {
        return Err(Error::Precondition(format!(
            "need 0 < step < alpha_max <= 0.5, got step {step}, alpha_max {alpha_max}"
        )));
    }
    let steps = (alpha_max / step + 1e-9).floor() as usize;
    let mut grid: Vec<f64> = (1..=steps).map(|k| (k as f64 * step).min(alpha_max)).collect();
    if grid.last().is_some_and(|&a| alpha_max - a > 1e-12) {
        grid.push(alpha_max);
    }
    Ok(grid.into_iter().filter_map(|a| enumeration_regime_base(a).map(|b| (a, b))).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn instance(g: Graph, z1: &[usize], z2: &[usize]) -> DcsInstance {
        let z1 = g.set(z1.iter().copied()).unwrap();
        let z2 = g.set(z2.iter().copied()).unwrap();
        DcsInstance::new(g, z1, z2).unwrap()
    }

    #[test]
    fn threshold_rule() {
        assert_eq!(select_strategy(100, 5, 50), Strategy::EnumerateMinimal);
        assert_eq!(select_strategy(100, 20, 30), Strategy::SubsetLoop);
        assert_eq!(select_strategy(24, 2, 2), Strategy::EnumerateMinimal);
        assert_eq!(select_strategy(100, 50, 5), Strategy::EnumerateMinimal);
    }

    #[test]
    fn stage2_examples() {
        let p4 = path(4);
        let a2 = stage2_check(&p4, &p4.set([3]).unwrap(), &p4.set([0]).unwrap()).unwrap();
        assert_eq!(a2.unwrap().to_vec(), vec![1, 2, 3]);
        let p3 = path(3);
        assert_eq!(stage2_check(&p3, &p3.set([0, 2]).unwrap(), &p3.set([1]).unwrap()).unwrap(), None);
        let c4 = cycle(4);
        let a2 = stage2_check(&c4, &c4.set([0, 2]).unwrap(), &c4.set([1]).unwrap()).unwrap();
        assert_eq!(a2.unwrap().to_vec(), vec![0, 2, 3]);
        assert!(stage2_check(&p3, &p3.set([1]).unwrap(), &p3.set([1]).unwrap()).is_err());
    }

    #[test]
    fn solve_examples() {
        for strategy in [Strategy::EnumerateMinimal, Strategy::SubsetLoop] {
            let opts = SolveOptions { strategy: Some(strategy), count_all: false };
            let inst = instance(path(4), &[0], &[3]);
            let w = solve_with(&inst, &opts).witness.unwrap();
            assert_eq!((w.a1.to_vec(), w.a2.to_vec()), (vec![0], vec![1, 2, 3]));
            assert!(verify_witness(&inst, &w));

            let inst = instance(path(3), &[0, 2], &[1]);
            assert_eq!(solve_with(&inst, &opts).witness, None);

            let inst = instance(cycle(6), &[0, 1], &[3, 4]);
            let w = solve_with(&inst, &opts).witness.unwrap();
            assert!(verify_witness(&inst, &w));
        }
    }

    #[test]
    fn swapped_sides_keep_orientation() {
        let inst = instance(path(5), &[2, 3, 4], &[0]);
        let out = solve(&inst);
        let w = out.witness.unwrap();
        assert!(w.a1.contains(2) && w.a2.contains(0));
        assert!(verify_witness(&inst, &w));
    }

    #[test]
    fn count_all_counts_minimal_witnesses() {
        let inst = instance(cycle(6), &[0], &[3]);
        let opts = SolveOptions { strategy: Some(Strategy::EnumerateMinimal), count_all: true };
        let out = solve_with(&inst, &opts);
        assert_eq!((out.candidates, out.witnesses), (1, 1));
    }

    #[test]
    fn instance_validation() {
        let p3 = path(3);
        let s = |ids: &[usize]| p3.set(ids.iter().copied()).unwrap();
        assert!(DcsInstance::new(p3.clone(), s(&[0]), s(&[0, 1])).is_err());
        assert!(DcsInstance::new(p3.clone(), s(&[]), s(&[1])).is_err());
        let split = Graph::from_edges(3, [(0, 1)]).unwrap();
        assert_eq!(DcsInstance::new(split, s(&[0]), s(&[2])).unwrap_err(), Error::Disconnected);
    }

    #[test]
    fn witness_verification_rejects_bad_witnesses() {
        let inst = instance(path(4), &[0], &[3]);
        let g = inst.graph();
        let overlap = DcsWitness { a1: g.set([0, 1]).unwrap(), a2: g.set([1, 2, 3]).unwrap() };
        assert!(!verify_witness(&inst, &overlap));
        let inst = instance(cycle(5), &[0, 2], &[4]);
        let g = inst.graph();
        let split = DcsWitness { a1: g.set([0, 2]).unwrap(), a2: g.set([4]).unwrap() };
        assert!(!verify_witness(&inst, &split));
    }

    #[test]
    fn curve_limits() {
        let near_zero = enumeration_regime_base(1e-9).unwrap();
        assert!((near_zero - 3f64.powf(1.0 / 3.0)).abs() < 1e-6);
        assert!(enumeration_regime_base(ALPHA_THRESHOLD).unwrap() <= 1.7804);
        assert!(enumeration_regime_base(0.4).is_none());
        let curve = runtime_bound_curve(0.0839, 1e-4).unwrap();
        assert_eq!(curve.len(), 839);
        assert_eq!(curve.last().unwrap().0, 0.0839);
        assert!(runtime_bound_curve(0.6, 0.1).is_err());
        assert!(runtime_bound_curve(0.1, 0.2).is_err());
        assert_eq!(runtime_bound_curve(0.5, 0.1).unwrap().len(), 3);
    }
}

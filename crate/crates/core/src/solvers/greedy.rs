//! Greedy submodular cover on the deficiency potential.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::Instant as Clock;

use crate::bitset::VertexSet;
use crate::domination::{Instance, ValidParams};
use crate::graph::Graph;

use super::{CoverState, OptResult, SolveStatus};

/// Starts from the empty set and repeatedly adds the vertex with the
/// largest deficiency decrease, smallest index on ties, until the
/// deficiency reaches zero (`FeasibleOnly`) or no vertex decreases it
/// (`Infeasible`).
///
/// Marginal gains are re-evaluated lazily: the heap holds stale upper
/// bounds, and a popped vertex is accepted only when its fresh gain still
/// beats the rest of the heap. Gains never grow as the set does, so the
/// stale keys stay valid bounds. `nodes_explored` counts gain evaluations.
pub fn solve_greedy(g: &Graph, p: ValidParams) -> OptResult {
    let started = Clock::now();
    let n = g.n();
    let inst = Instance::new(g, p);
    let mut state = CoverState::new(&inst);
    let mut evaluations = 0u64;

    let mut heap: BinaryHeap<(u64, Reverse<usize>)> = (0..n)
        .map(|u| {
            evaluations += 1;
            (state.gain(&inst, u), Reverse(u))
        })
        .collect();

    let mut chosen = VertexSet::empty(n);
    while state.deficiency > 0 {
        let Some((_, Reverse(u))) = heap.pop() else {
            // Every vertex is already in the set and the deficiency is
            // still positive: no feasible set exists at all.
            return infeasible(n, evaluations, started);
        };
        evaluations += 1;
        let fresh = state.gain(&inst, u);
        let still_best = match heap.peek() {
            Some(&top) => (fresh, Reverse(u)) >= top,
            None => true,
        };
        if !still_best {
            heap.push((fresh, Reverse(u)));
            continue;
        }
        if fresh == 0 {
            // The best available vertex changes nothing, and gains only
            // shrink, so the remaining deficiency is unfixable.
            return infeasible(n, evaluations, started);
        }
        state.add(&inst, u);
        chosen.insert(u);
    }

    OptResult {
        status: SolveStatus::FeasibleOnly,
        size: chosen.len(),
        set: chosen,
        nodes_explored: evaluations,
        wall_time: started.elapsed(),
    }
}

fn infeasible(n: usize, evaluations: u64, started: Clock) -> OptResult {
    OptResult {
        status: SolveStatus::Infeasible,
        size: 0,
        set: VertexSet::empty(n),
        nodes_explored: evaluations,
        wall_time: started.elapsed(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::{is_instance_feasible, validate_params, verify, Params};

    #[test]
    fn k4_pair_condition_needs_two() {
        let mut edges = Vec::new();
        for u in 0..4 {
            for v in u + 1..4 {
                edges.push((u, v));
            }
        }
        let g = Graph::build(4, &edges).unwrap();
        let p = validate_params(Params::new(1, 1, 2, 2), &g).unwrap();
        let res = solve_greedy(&g, p);
        assert_eq!(res.status, SolveStatus::FeasibleOnly);
        assert_eq!(res.size, 2);
        assert!(verify(&g, p, &res.set).feasible);
    }

    #[test]
    fn star_reaches_the_optimum_three() {
        // Greedy takes the center first (largest gain), then two leaves;
        // exhaustive search confirms 3 is optimal for K_{1,3} under
        // (1,1,2,2).
        let g = Graph::build(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let p = validate_params(Params::new(1, 1, 2, 2), &g).unwrap();
        let res = solve_greedy(&g, p);
        assert_eq!(res.size, 3);
        assert_eq!(res.set.to_vec(), vec![0, 1, 2]);
        assert!(verify(&g, p, &res.set).feasible);
        let exact = crate::solvers::solve_exact(&g, p, None);
        assert_eq!(exact.size, 3);
    }

    #[test]
    fn infeasible_instance_is_reported_as_such() {
        let g = Graph::build(3, &[(0, 1), (1, 2)]).unwrap();
        let p = validate_params(Params::new(1, 3, 3, 1), &g).unwrap();
        let res = solve_greedy(&g, p);
        assert_eq!(res.status, SolveStatus::Infeasible);
        assert!(!is_instance_feasible(&g, p));
    }

    #[test]
    fn greedy_is_deterministic() {
        for seed in 0..6 {
            let g = crate::graph::generate_random_graph(30, 0.2, seed, true);
            let p = validate_params(Params::new(1, 1, 3, 2), &g).unwrap();
            let a = solve_greedy(&g, p);
            let b = solve_greedy(&g, p);
            assert_eq!(a.set, b.set);
            assert_eq!(a.nodes_explored, b.nodes_explored);
        }
    }
}

//! Independent brute-force minimum solver, the ground truth the other
//! solvers are checked against.
//!
//! Deliberately shares nothing with the branch-and-bound solver except the
//! feasibility predicate: subsets are enumerated outright, smallest
//! cardinality first and lexicographically within a cardinality, so the
//! first feasible subset found is both size-minimal and lexicographically
//! smallest at that size.

use std::time::Instant as Clock;

use thiserror::Error;

use crate::bitset::VertexSet;
use crate::comb::next_combination;
use crate::domination::{Instance, ValidParams};
use crate::graph::Graph;
use crate::solvers::{OptResult, SolveStatus};

/// Default refusal threshold; enumeration is exponential in `n`.
pub const DEFAULT_ORACLE_CAP: usize = 20;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, above the brute-force cap of {cap}")]
    GraphTooLarge { n: usize, cap: usize },
}

/// Exhaustive minimum search. `max_n` overrides the cap of
/// [`DEFAULT_ORACLE_CAP`] vertices; larger graphs are refused up front
/// rather than silently running for hours.
pub fn solve_bruteforce(
    g: &Graph,
    p: ValidParams,
    max_n: Option<usize>,
) -> Result<OptResult, OracleError> {
    let started = Clock::now();
    let n = g.n();
    let cap = max_n.unwrap_or(DEFAULT_ORACLE_CAP);
    if n > cap {
        return Err(OracleError::GraphTooLarge { n, cap });
    }

    let inst = Instance::new(g, p);
    let mut candidates = 0u64;
    let mut buf = VertexSet::empty(n);
    // No feasible set can be smaller than the cardinality floor.
    let floor = (p.ell() as usize).max(p.m() as usize);
    for k in floor..=n {
        let mut pick: Vec<usize> = (0..k).collect();
        loop {
            candidates += 1;
            buf.clear();
            for &v in &pick {
                buf.insert(v);
            }
            if inst.is_feasible(&buf) {
                return Ok(OptResult {
                    status: SolveStatus::Optimal,
                    size: k,
                    set: buf,
                    nodes_explored: candidates,
                    wall_time: started.elapsed(),
                });
            }
            if !next_combination(&mut pick, n) {
                break;
            }
        }
    }
    Ok(OptResult {
        status: SolveStatus::Infeasible,
        size: 0,
        set: VertexSet::empty(n),
        nodes_explored: candidates,
        wall_time: started.elapsed(),
    })
}

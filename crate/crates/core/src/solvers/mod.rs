//! Exact branch-and-bound and greedy minimization of (d, m, l, r)-dominating
//! sets.

mod exact;
mod greedy;

use std::time::Duration;

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::bitset::VertexSet;
use crate::comb::binomial;
use crate::domination::{Instance, ValidParams};
use crate::graph::Graph;

pub use exact::solve_exact;
pub use greedy::solve_greedy;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolveStatus {
    /// The returned set is a minimum; no smaller feasible set exists.
    Optimal,
    /// The returned set is feasible but carries no minimality claim.
    FeasibleOnly,
    /// No feasible set exists for this instance.
    Infeasible,
    /// The node budget ran out; the best incumbent is returned without any
    /// optimality claim.
    BudgetExhausted,
}

/// Result of a solver run. For `Infeasible` the set is empty and the size
/// is zero.
#[derive(Debug, Clone)]
pub struct OptResult {
    pub status: SolveStatus,
    pub size: usize,
    pub set: VertexSet,
    pub nodes_explored: u64,
    pub wall_time: Duration,
}

impl Serialize for OptResult {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("OptResult", 5)?;
        st.serialize_field("status", &self.status)?;
        st.serialize_field("size", &self.size)?;
        st.serialize_field("set", &self.set)?;
        st.serialize_field("nodes_explored", &self.nodes_explored)?;
        st.serialize_field("wall_time_ms", &(self.wall_time.as_millis() as u64))?;
        st.end()
    }
}

/// Admissible lower bound on the optimum:
/// `max(l, m, ceil(deficiency(∅) / best single-vertex decrease))`.
///
/// Any feasible set has at least `l` members (the union of every r-subset
/// must meet the set in `l` distinct vertices) and at least `m` (each
/// vertex needs m dominators). The third term is the counting bound: one
/// added vertex reduces the deficiency by at most the number of condition
/// terms it touches, which only shrinks as the set grows.
pub fn lower_bound(g: &Graph, p: ValidParams) -> usize {
    let inst = Instance::new(g, p);
    lower_bound_with(&inst)
}

pub(crate) fn lower_bound_with(inst: &Instance<'_>) -> usize {
    let n = inst.graph().n();
    let p = inst.params();
    let (ell, m, r) = (p.ell() as usize, p.m() as usize, p.r() as usize);

    let root_deficiency = (n as u64) * m as u64 + binomial(n, r) * ell as u64;
    // Adding u from the empty set decreases every condition-(i) term of a
    // vertex in N^d[u] by one and every condition-(ii) term whose subset
    // meets N^d[u] by one; subsets missing N^d[u] are C(n - |N^d[u]|, r).
    let max_decrease = (0..n)
        .map(|u| {
            let ball = inst.table().row(u).len();
            ball as u64 + binomial(n, r) - binomial(n - ball, r)
        })
        .max()
        .unwrap_or(1)
        .max(1);
    let counting = root_deficiency.div_ceil(max_decrease) as usize;
    ell.max(m).max(counting)
}

/// Incremental bookkeeping for both solvers: per-vertex and per-subset
/// coverage counts, plus an inverted index from each vertex to the
/// condition-(ii) subsets whose neighborhood union contains it.
pub(crate) struct CoverState {
    m: u32,
    ell: u32,
    /// touching[u] = subset ids whose neighborhood union contains u.
    pub touching: Vec<Vec<u32>>,
    /// Size of each subset's neighborhood union.
    pub union_sizes: Vec<u32>,
    /// |N^d[v] ∩ S| per vertex.
    pub cov1: Vec<u32>,
    /// |union(N^d over subset) ∩ S| per subset.
    pub cov2: Vec<u32>,
    /// Current total deficiency.
    pub deficiency: u64,
}

impl CoverState {
    pub fn new(inst: &Instance<'_>) -> Self {
        let n = inst.graph().n();
        let p = inst.params();
        let r = p.r() as usize;

        let mut touching = vec![Vec::new(); n];
        let mut union_sizes = Vec::new();
        let mut union = VertexSet::empty(n);
        crate::comb::for_each_combination(n, r, |pick| {
            union.copy_from(inst.table().row(pick[0]));
            for &u in &pick[1..] {
                union.union_with(inst.table().row(u));
            }
            let sid = union_sizes.len() as u32;
            for v in union.iter() {
                touching[v].push(sid);
            }
            union_sizes.push(union.len() as u32);
            true
        });

        let deficiency = (n as u64) * p.m() as u64 + (union_sizes.len() as u64) * p.ell() as u64;
        CoverState {
            m: p.m(),
            ell: p.ell(),
            cov1: vec![0; n],
            cov2: vec![0; union_sizes.len()],
            touching,
            union_sizes,
            deficiency,
        }
    }

    /// Marginal deficiency decrease of adding `u` (not currently counted).
    pub fn gain(&self, inst: &Instance<'_>, u: usize) -> u64 {
        let mut gain = 0u64;
        for v in inst.table().row(u).iter() {
            if self.cov1[v] < self.m {
                gain += 1;
            }
        }
        for &sid in &self.touching[u] {
            if self.cov2[sid as usize] < self.ell {
                gain += 1;
            }
        }
        gain
    }

    /// Counts `u` as a member of S.
    pub fn add(&mut self, inst: &Instance<'_>, u: usize) {
        for v in inst.table().row(u).iter() {
            if self.cov1[v] < self.m {
                self.deficiency -= 1;
            }
            self.cov1[v] += 1;
        }
        for &sid in &self.touching[u] {
            let sid = sid as usize;
            if self.cov2[sid] < self.ell {
                self.deficiency -= 1;
            }
            self.cov2[sid] += 1;
        }
    }

    /// Reverses a previous [`CoverState::add`].
    pub fn undo_add(&mut self, inst: &Instance<'_>, u: usize) {
        for v in inst.table().row(u).iter() {
            self.cov1[v] -= 1;
            if self.cov1[v] < self.m {
                self.deficiency += 1;
            }
        }
        for &sid in &self.touching[u] {
            let sid = sid as usize;
            self.cov2[sid] -= 1;
            if self.cov2[sid] < self.ell {
                self.deficiency += 1;
            }
        }
    }
}

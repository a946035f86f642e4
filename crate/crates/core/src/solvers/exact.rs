//! Branch-and-bound exact solver.
//!
//! Phase 1 proves the optimum size: include/exclude decisions in
//! descending-coverage vertex order, include branch first, pruned by the
//! counting lower bound and by dominator-availability counts. Phase 2
//! re-searches in plain index order with the proven size as the budget,
//! include branch first, so the first feasible set it reaches is the
//! lexicographically smallest optimum.

use std::cmp::Ordering;
use std::time::Instant as Clock;

use crate::bitset::VertexSet;
use crate::domination::{Instance, ValidParams};
use crate::graph::Graph;

use super::{CoverState, OptResult, SolveStatus};

struct Search<'i, 'g> {
    inst: &'i Instance<'g>,
    state: CoverState,
    /// Dominators of v still in `current ∪ undecided`.
    avail1: Vec<u32>,
    /// Union members of each r-subset still in `current ∪ undecided`.
    avail2: Vec<u32>,
    current: Vec<usize>,
    /// Largest single-vertex deficiency decrease anywhere; gains only
    /// shrink as the set grows, so this stays an upper bound.
    max_decrease: u64,
    nodes: u64,
    budget: Option<u64>,
    exhausted: bool,
}

impl<'i, 'g> Search<'i, 'g> {
    fn new(inst: &'i Instance<'g>, budget: Option<u64>) -> Self {
        let n = inst.graph().n();
        let state = CoverState::new(inst);
        let avail1 = (0..n).map(|v| inst.table().row(v).len() as u32).collect();
        let avail2 = state.union_sizes.clone();
        let max_decrease = (0..n)
            .map(|u| state.gain(inst, u))
            .max()
            .unwrap_or(1)
            .max(1);
        Search {
            inst,
            state,
            avail1,
            avail2,
            current: Vec::new(),
            max_decrease,
            nodes: 0,
            budget,
            exhausted: false,
        }
    }

    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if let Some(b) = self.budget {
            if self.nodes > b {
                self.exhausted = true;
            }
        }
        !self.exhausted
    }

    /// Additions provably still needed to reach deficiency zero.
    fn needed(&self) -> u64 {
        self.state.deficiency.div_ceil(self.max_decrease)
    }

    /// Marks `u` excluded; returns false (and rolls back nothing — caller
    /// must still call `restore_exclude`) when some vertex or subset can no
    /// longer be covered.
    fn apply_exclude(&mut self, u: usize) -> bool {
        let m = self.inst.params().m();
        let ell = self.inst.params().ell();
        let mut alive = true;
        for v in self.inst.table().row(u).iter() {
            self.avail1[v] -= 1;
            alive &= self.avail1[v] >= m;
        }
        for &sid in &self.state.touching[u] {
            self.avail2[sid as usize] -= 1;
            alive &= self.avail2[sid as usize] >= ell;
        }
        alive
    }

    fn restore_exclude(&mut self, u: usize) {
        for v in self.inst.table().row(u).iter() {
            self.avail1[v] += 1;
        }
        for &sid in &self.state.touching[u] {
            self.avail2[sid as usize] += 1;
        }
    }

    /// Phase 1: tightens `best` to the optimum size (with a witness set).
    fn bound_size(&mut self, order: &[usize], pos: usize, best: &mut (usize, VertexSet)) {
        if !self.tick() {
            return;
        }
        if self.state.deficiency == 0 {
            let size = self.current.len();
            let replace = match size.cmp(&best.0) {
                Ordering::Less => true,
                Ordering::Equal => {
                    let set = VertexSet::from_indices(self.inst.graph().n(), self.current.iter().copied());
                    set.cmp_lex(&best.1) == Ordering::Less
                }
                Ordering::Greater => false,
            };
            if replace {
                best.0 = size;
                best.1 = VertexSet::from_indices(self.inst.graph().n(), self.current.iter().copied());
            }
            return;
        }
        if pos == order.len() {
            return;
        }
        let p = self.inst.params();
        let floor = (p.ell() as usize).max(p.m() as usize);
        let branch_bound = self.current.len() + self.needed() as usize;
        if floor.max(branch_bound) >= best.0 {
            return;
        }

        let u = order[pos];
        self.state.add(self.inst, u);
        self.current.push(u);
        self.bound_size(order, pos + 1, best);
        self.current.pop();
        self.state.undo_add(self.inst, u);
        if self.exhausted {
            return;
        }

        if self.apply_exclude(u) {
            self.bound_size(order, pos + 1, best);
        }
        self.restore_exclude(u);
    }

    /// Phase 2: first feasible set of size <= `budget_size` in include-first
    /// index-order DFS, i.e. the lexicographically smallest optimum.
    fn lex_smallest(&mut self, pos: usize, remaining: usize) -> Option<Vec<usize>> {
        if !self.tick() {
            return None;
        }
        if self.state.deficiency == 0 {
            return Some(self.current.clone());
        }
        let n = self.inst.graph().n();
        if pos == n {
            return None;
        }
        let needed = self.needed() as usize;
        if needed > remaining || needed > n - pos {
            return None;
        }

        let u = pos;
        if remaining > 0 {
            self.state.add(self.inst, u);
            self.current.push(u);
            let found = self.lex_smallest(pos + 1, remaining - 1);
            self.current.pop();
            self.state.undo_add(self.inst, u);
            if found.is_some() || self.exhausted {
                return found;
            }
        }

        let mut found = None;
        if self.apply_exclude(u) {
            found = self.lex_smallest(pos + 1, remaining);
        }
        self.restore_exclude(u);
        found
    }
}

/// Minimum (d, m, l, r)-dominating set by branch and bound.
///
/// Deterministic: identical inputs give the identical set, tie-broken to
/// the lexicographically smallest optimum. With a `node_budget` the search
/// may stop early and return its best incumbent as `BudgetExhausted`;
/// it never claims optimality in that case.
pub fn solve_exact(g: &Graph, p: ValidParams, node_budget: Option<u64>) -> OptResult {
    let started = Clock::now();
    let n = g.n();
    let inst = Instance::new(g, p);

    let full = VertexSet::full(n);
    if !inst.is_feasible(&full) {
        return OptResult {
            status: SolveStatus::Infeasible,
            size: 0,
            set: VertexSet::empty(n),
            nodes_explored: 0,
            wall_time: started.elapsed(),
        };
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(inst.table().row(v).len()), v));

    let mut search = Search::new(&inst, node_budget);
    let mut best = (n, full);
    search.bound_size(&order, 0, &mut best);

    if !search.exhausted {
        if let Some(lex) = search.lex_smallest(0, best.0) {
            debug_assert_eq!(lex.len(), best.0);
            best.1 = VertexSet::from_indices(n, lex);
        }
    }

    let status = if search.exhausted {
        SolveStatus::BudgetExhausted
    } else {
        SolveStatus::Optimal
    };
    OptResult {
        status,
        size: best.1.len(),
        set: best.1,
        nodes_explored: search.nodes,
        wall_time: started.elapsed(),
    }
}

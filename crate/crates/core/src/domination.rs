//! Parameter validation and feasibility checking for d-distance m-tuple
//! (l, r)-domination.
//!
//! A candidate set `S` is feasible when
//!   (i)  every vertex v has `|N^d[v] ∩ S| >= m`, and
//!   (ii) every r-subset U has `|(∪_{u∈U} N^d[u]) ∩ S| >= l`.
//!
//! Condition (ii) is decided by explicit enumeration of all `C(n, r)`
//! subsets in lexicographic order; there is no sound subquadratic shortcut
//! because the unions overlap.

use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::comb;
use crate::graph::{Graph, NeighborhoodTable};

/// Soft cap on the subset size r; enumeration is `C(n, r)` per check.
pub const SUBSET_SIZE_CAP: u32 = 4;

/// Raw problem parameters as given by a caller; see [`validate_params`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Params {
    /// Distance radius of the neighborhoods.
    pub d: u32,
    /// Per-vertex multiplicity demanded by condition (i).
    pub m: u32,
    /// Coverage demanded of every r-subset by condition (ii).
    pub ell: u32,
    /// Subset size of condition (ii).
    pub r: u32,
}

impl Params {
    pub fn new(d: u32, m: u32, ell: u32, r: u32) -> Self {
        Params { d, m, ell, r }
    }
}

/// Parameters that passed validation against a host graph. `r` has been
/// normalized to 1 whenever `m == ell`, and `m <= ell`, `n >= ell`,
/// `n >= r` all hold.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ValidParams {
    d: u32,
    m: u32,
    ell: u32,
    r: u32,
}

impl ValidParams {
    pub fn d(&self) -> u32 {
        self.d
    }
    pub fn m(&self) -> u32 {
        self.m
    }
    pub fn ell(&self) -> u32 {
        self.ell
    }
    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn as_params(&self) -> Params {
        Params::new(self.d, self.m, self.ell, self.r)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParamError {
    #[error("parameter {0} must be at least 1")]
    ZeroField(&'static str),
    #[error("multiplicity m = {m} exceeds coverage l = {ell}")]
    MultiplicityAboveCoverage { m: u32, ell: u32 },
    #[error("graph has {n} vertices but coverage l = {ell} needs at least l")]
    TooFewVerticesForCoverage { n: usize, ell: u32 },
    #[error("graph has {n} vertices but subset size r = {r} needs at least r")]
    TooFewVerticesForSubsets { n: usize, r: u32 },
    #[error("subset size r = {r} exceeds the cap of {cap}; condition (ii) enumerates C(n, r) subsets")]
    SubsetSizeCapExceeded { r: u32, cap: u32 },
}

fn validate(p: Params, g: &Graph, allow_large_r: bool) -> Result<ValidParams, ParamError> {
    for (name, value) in [("d", p.d), ("m", p.m), ("l", p.ell), ("r", p.r)] {
        if value < 1 {
            return Err(ParamError::ZeroField(name));
        }
    }
    if p.m > p.ell {
        return Err(ParamError::MultiplicityAboveCoverage { m: p.m, ell: p.ell });
    }
    // With m = l the subset condition collapses onto the per-vertex one, so
    // r is irrelevant and normalizes to 1.
    let r = if p.m == p.ell { 1 } else { p.r };
    let n = g.n();
    if n < p.ell as usize {
        return Err(ParamError::TooFewVerticesForCoverage { n, ell: p.ell });
    }
    if n < r as usize {
        return Err(ParamError::TooFewVerticesForSubsets { n, r });
    }
    if r > SUBSET_SIZE_CAP && !allow_large_r {
        return Err(ParamError::SubsetSizeCapExceeded {
            r,
            cap: SUBSET_SIZE_CAP,
        });
    }
    Ok(ValidParams {
        d: p.d,
        m: p.m,
        ell: p.ell,
        r,
    })
}

/// Validates `p` against `g`, normalizing `r` to 1 when `m == ell`.
pub fn validate_params(p: Params, g: &Graph) -> Result<ValidParams, ParamError> {
    validate(p, g, false)
}

/// Like [`validate_params`] but overrides the soft cap on `r`.
pub fn validate_params_allowing_large_r(p: Params, g: &Graph) -> Result<ValidParams, ParamError> {
    validate(p, g, true)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cond1Violation {
    pub vertex: usize,
    pub count: u32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Cond2Violation {
    pub subset: Vec<usize>,
    pub count: u32,
}

/// Outcome of checking a candidate set, with witnesses for every violated
/// constraint. Infeasibility is a verdict, not an error.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub feasible: bool,
    pub cond1_violations: Vec<Cond1Violation>,
    pub cond2_violations: Vec<Cond2Violation>,
    /// Number of r-subsets examined for condition (ii).
    pub checked_subsets: u64,
    /// True when a violation limit stopped enumeration early.
    pub truncated: bool,
}

/// A `(graph, params)` pair with its neighborhood table precomputed, so
/// repeated feasibility checks (solvers, the oracle) pay for BFS once.
pub struct Instance<'g> {
    graph: &'g Graph,
    params: ValidParams,
    table: NeighborhoodTable,
}

impl<'g> Instance<'g> {
    pub fn new(graph: &'g Graph, params: ValidParams) -> Self {
        let table = graph
            .d_neighborhoods(params.d())
            .expect("validated params have d >= 1");
        Instance {
            graph,
            params,
            table,
        }
    }

    pub fn graph(&self) -> &Graph {
        self.graph
    }

    pub fn params(&self) -> ValidParams {
        self.params
    }

    pub fn table(&self) -> &NeighborhoodTable {
        &self.table
    }

    /// Fast feasibility test; short-circuits on the first violation.
    pub fn is_feasible(&self, s: &VertexSet) -> bool {
        let n = self.graph.n();
        debug_assert_eq!(s.capacity(), n);
        let m = self.params.m as usize;
        let ell = self.params.ell as usize;
        let r = self.params.r as usize;

        // Condition (i), collecting per-vertex counts as we go.
        let mut low = Vec::new();
        for v in 0..n {
            let cnt = self.table.row(v).intersection_len(s);
            if cnt < m {
                return false;
            }
            if cnt < ell {
                low.push(v);
            }
        }
        // Condition (ii). A subset containing any vertex whose own count
        // already reaches l is covered, so only subsets drawn entirely from
        // the low vertices can violate.
        if low.len() < r {
            return true;
        }
        let mut union = VertexSet::empty(n);
        let mut ok = true;
        comb::for_each_combination(low.len(), r, |pick| {
            union.copy_from(self.table.row(low[pick[0]]));
            for &i in &pick[1..] {
                union.union_with(self.table.row(low[i]));
            }
            if union.intersection_len(s) < ell {
                ok = false;
                return false;
            }
            true
        });
        ok
    }

    /// Full check of both conditions with violation witnesses, enumerating
    /// r-subsets in lexicographic order. `max_violations` truncates each
    /// witness list; `None` collects everything.
    pub fn verify_with_limit(&self, s: &VertexSet, max_violations: Option<usize>) -> VerificationReport {
        let n = self.graph.n();
        debug_assert_eq!(s.capacity(), n);
        let m = self.params.m;
        let ell = self.params.ell;
        let r = self.params.r as usize;
        // At least one witness per list, so "feasible iff both lists empty"
        // survives truncation.
        let limit = max_violations.unwrap_or(usize::MAX).max(1);

        let mut truncated = false;
        let mut cond1 = Vec::new();
        for v in 0..n {
            let count = self.table.row(v).intersection_len(s) as u32;
            if count < m {
                if cond1.len() == limit {
                    truncated = true;
                    break;
                }
                cond1.push(Cond1Violation { vertex: v, count });
            }
        }

        let mut cond2 = Vec::new();
        let mut checked_subsets = 0u64;
        let mut union = VertexSet::empty(n);
        comb::for_each_combination(n, r, |pick| {
            checked_subsets += 1;
            union.copy_from(self.table.row(pick[0]));
            for &u in &pick[1..] {
                union.union_with(self.table.row(u));
            }
            let count = union.intersection_len(s) as u32;
            if count < ell {
                if cond2.len() == limit {
                    truncated = true;
                    return false;
                }
                cond2.push(Cond2Violation {
                    subset: pick.to_vec(),
                    count,
                });
            }
            true
        });

        VerificationReport {
            feasible: cond1.is_empty() && cond2.is_empty(),
            cond1_violations: cond1,
            cond2_violations: cond2,
            checked_subsets,
            truncated,
        }
    }

    pub fn verify(&self, s: &VertexSet) -> VerificationReport {
        self.verify_with_limit(s, None)
    }

    /// Total shortfall against both conditions:
    /// `Σ_v max(0, m - |N^d[v] ∩ S|) + Σ_U max(0, l - |∪N^d[u] ∩ S|)`.
    /// Zero exactly on feasible sets, and non-increasing under insertion.
    pub fn deficiency(&self, s: &VertexSet) -> u64 {
        let n = self.graph.n();
        debug_assert_eq!(s.capacity(), n);
        let m = self.params.m as u64;
        let ell = self.params.ell as u64;
        let r = self.params.r as usize;

        let mut total = 0u64;
        for v in 0..n {
            let cnt = self.table.row(v).intersection_len(s) as u64;
            total += m.saturating_sub(cnt);
        }
        let mut union = VertexSet::empty(n);
        comb::for_each_combination(n, r, |pick| {
            union.copy_from(self.table.row(pick[0]));
            for &u in &pick[1..] {
                union.union_with(self.table.row(u));
            }
            total += ell.saturating_sub(union.intersection_len(s) as u64);
            true
        });
        total
    }
}

/// One-shot verification of a candidate set.
pub fn verify(g: &Graph, p: ValidParams, s: &VertexSet) -> VerificationReport {
    Instance::new(g, p).verify(s)
}

/// Whether any feasible set exists at all. Feasibility is monotone under
/// insertion, so the whole vertex set is the witness.
pub fn is_instance_feasible(g: &Graph, p: ValidParams) -> bool {
    Instance::new(g, p).is_feasible(&VertexSet::full(g.n()))
}

/// Deficiency of `s`; see [`Instance::deficiency`].
pub fn deficiency(g: &Graph, p: ValidParams, s: &VertexSet) -> u64 {
    Instance::new(g, p).deficiency(s)
}

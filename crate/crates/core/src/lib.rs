//! Library for the d-distance m-tuple (l, r)-domination problem: candidate
//! verification, exact and greedy minimization, a brute-force ground-truth
//! oracle, and the two hardness-reduction gadgets with certificate
//! transforms in both directions.
//!
//! A set `S` of vertices is a d-distance m-tuple (l, r)-dominating set
//! when every vertex has at least `m` members of `S` within distance `d`,
//! and the distance-d neighborhood union of every `r` vertices meets `S`
//! in at least `l` members. The `(1, 2, 3, 2)` case is liar's domination;
//! `m = l = k` with `r = 1` is k-tuple domination; `(1, 1, 1, 1)` is plain
//! domination.

pub mod bitset;
pub mod comb;
pub mod domination;
pub mod graph;
pub mod oracle;
pub mod reduction;
pub mod solvers;

pub use bitset::VertexSet;
pub use domination::{
    deficiency, is_instance_feasible, validate_params, validate_params_allowing_large_r, verify,
    Instance, ParamError, Params, ValidParams, VerificationReport,
};
pub use graph::{generate_random_graph, Graph, GraphError, NeighborhoodTable};
pub use oracle::{solve_bruteforce, OracleError, DEFAULT_ORACLE_CAP};
pub use reduction::{
    backward_cert_a, backward_cert_b, build_gadget_a, build_gadget_b, forward_cert_a,
    forward_cert_b, GadgetKind, GadgetParams, ReductionError, ReductionMap, VertexRole,
};
pub use solvers::{lower_bound, solve_exact, solve_greedy, OptResult, SolveStatus};

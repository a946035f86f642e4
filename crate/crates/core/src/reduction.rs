//! The two reduction gadgets and their certificate transforms.
//!
//! Gadget A turns a plain dominating-set instance into a 1-distance
//! (m, l, r)-domination instance: alongside a copy of the graph it adds a
//! clique on l-1 vertices joined to every copy vertex, and r independent
//! tail vertices joined to the clique. Gadget B turns a 1-distance
//! (m, l, 2) instance into a d-distance one by hanging a pendant path of
//! d-1 vertices off every vertex. Both directions of each construction's
//! solution correspondence are implemented and checked at runtime.

use serde::Serialize;
use thiserror::Error;

use crate::bitset::VertexSet;
use crate::domination::{validate_params_allowing_large_r, Instance, ParamError, Params};
use crate::graph::{Graph, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum GadgetKind {
    GadgetA,
    GadgetB,
}

/// Role of a single gadget vertex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "role", rename_all = "kebab-case")]
pub enum VertexRole {
    /// Copy of source vertex `source`.
    CopyOf { source: usize },
    /// j-th vertex of the clique block (gadget A).
    CliqueV2 { index: usize },
    /// j-th independent tail vertex (gadget A).
    TailV3 { index: usize },
    /// Pendant-path vertex at distance `step` from its anchor (gadget B).
    Path { anchor: usize, step: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(untagged)]
pub enum GadgetParams {
    A { m: u32, ell: u32, r: u32 },
    B { d: u32 },
}

/// Correspondence between a source graph and its gadget graph.
#[derive(Debug, Clone, Serialize)]
pub struct ReductionMap {
    pub kind: GadgetKind,
    pub source_n: usize,
    pub params: GadgetParams,
    pub vertex_roles: Vec<VertexRole>,
}

impl ReductionMap {
    pub fn gadget_n(&self) -> usize {
        self.vertex_roles.len()
    }

    pub fn role(&self, gadget_vertex: usize) -> VertexRole {
        self.vertex_roles[gadget_vertex]
    }

    /// Inverse of [`ReductionMap::role`], computed from the fixed layout:
    /// copies first, then the clique/tail blocks (A) or the pendant paths
    /// grouped by anchor (B).
    pub fn index_of(&self, role: VertexRole) -> Option<usize> {
        let n = self.source_n;
        let idx = match (self.params, role) {
            (_, VertexRole::CopyOf { source }) if source < n => Some(source),
            (GadgetParams::A { ell, .. }, VertexRole::CliqueV2 { index })
                if index < (ell - 1) as usize =>
            {
                Some(n + index)
            }
            (GadgetParams::A { ell, r, .. }, VertexRole::TailV3 { index })
                if index < r as usize =>
            {
                Some(n + (ell - 1) as usize + index)
            }
            (GadgetParams::B { d }, VertexRole::Path { anchor, step })
                if anchor < n && (1..d as usize).contains(&step) =>
            {
                Some(n + anchor * (d as usize - 1) + step - 1)
            }
            _ => None,
        };
        debug_assert!(idx.map_or(true, |i| self.vertex_roles[i] == role));
        idx
    }
}

#[derive(Debug, Error)]
pub enum ReductionError {
    #[error("gadget A needs l >= 2, got l = {ell} (the clique block would be empty)")]
    EmptyClique { ell: u32 },
    #[error("gadget B requires a connected source graph")]
    Disconnected,
    #[error("gadget B needs d >= 2, got d = {d}")]
    RadiusTooSmall { d: u32 },
    #[error("certificate is not a feasible dominating set of the gadget graph")]
    CertificateInfeasible,
    #[error(
        "extracted set of size {got} exceeds the guaranteed bound {bound}; \
         the size correspondence of the construction has been violated"
    )]
    BoundViolated { got: usize, bound: usize },
    #[error("certificate transfer produced an infeasible set on the source graph")]
    TransferFailed,
    #[error(transparent)]
    InvalidParams(#[from] ParamError),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Builds gadget A. The regime the size arithmetic targets is
/// `l, r < n`; wider inputs are accepted with a warning. `m` does not
/// shape the graph but is recorded for the downstream instance.
pub fn build_gadget_a(
    g: &Graph,
    m: u32,
    ell: u32,
    r: u32,
) -> Result<(Graph, ReductionMap), ReductionError> {
    if ell < 2 {
        return Err(ReductionError::EmptyClique { ell });
    }
    assert!(m >= 1 && r >= 1, "gadget parameters must be positive");
    let n = g.n();
    if ell as usize >= n || r as usize >= n {
        log::warn!("gadget A built with l = {ell}, r = {r} not both below n = {n}; the 3n size bound does not apply");
    }
    if m == ell {
        log::warn!("gadget A built with m = l = {m}; r normalizes to 1 and the subset condition degenerates");
    }

    let clique = |j: usize| n + j;
    let tail = |j: usize| n + (ell - 1) as usize + j;
    let total = n + (ell + r - 1) as usize;

    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    for a in 0..(ell - 1) as usize {
        for b in a + 1..(ell - 1) as usize {
            edges.push((clique(a), clique(b)));
        }
    }
    for v in 0..n {
        for a in 0..(ell - 1) as usize {
            edges.push((v, clique(a)));
        }
    }
    for a in 0..(ell - 1) as usize {
        for t in 0..r as usize {
            edges.push((clique(a), tail(t)));
        }
    }
    let mut gadget = Graph::build(total, &edges)?;

    let mut roles = Vec::with_capacity(total);
    let mut labels = Vec::with_capacity(total);
    for i in 0..n {
        roles.push(VertexRole::CopyOf { source: i });
        labels.push(format!("v1_{i}"));
    }
    for j in 0..(ell - 1) as usize {
        roles.push(VertexRole::CliqueV2 { index: j });
        labels.push(format!("c2_{j}"));
    }
    for j in 0..r as usize {
        roles.push(VertexRole::TailV3 { index: j });
        labels.push(format!("v3_{j}"));
    }
    gadget.set_labels(labels);

    Ok((
        gadget,
        ReductionMap {
            kind: GadgetKind::GadgetA,
            source_n: n,
            params: GadgetParams::A { m, ell, r },
            vertex_roles: roles,
        },
    ))
}

/// Maps a dominating set of the source graph onto the gadget: its copies,
/// the whole clique block, and the first tail vertex. The output has
/// exactly `|d_set| + l` members.
pub fn forward_cert_a(map: &ReductionMap, d_set: &VertexSet) -> VertexSet {
    let GadgetParams::A { ell, .. } = map.params else {
        panic!("forward_cert_a needs a gadget A map");
    };
    assert_eq!(d_set.capacity(), map.source_n);
    let mut out = VertexSet::empty(map.gadget_n());
    for v in d_set.iter() {
        out.insert(v);
    }
    for j in 0..(ell - 1) as usize {
        out.insert(map.index_of(VertexRole::CliqueV2 { index: j }).unwrap());
    }
    out.insert(map.index_of(VertexRole::TailV3 { index: 0 }).unwrap());
    out
}

/// Extracts a dominating set of the source graph from a feasible
/// (1, m, l, r)-dominating set of the gadget: the copy members, repaired
/// by adding every source vertex they leave undominated. The result is
/// guaranteed not to exceed `|l_set| - l`; a violation would mean the
/// construction's counting argument is wrong and is reported loudly.
pub fn backward_cert_a(
    map: &ReductionMap,
    g: &Graph,
    l_set: &VertexSet,
) -> Result<VertexSet, ReductionError> {
    let GadgetParams::A { m, ell, r } = map.params else {
        panic!("backward_cert_a needs a gadget A map");
    };
    assert_eq!(g.n(), map.source_n);
    assert_eq!(l_set.capacity(), map.gadget_n());

    let (gadget, _) = build_gadget_a(g, m, ell, r)?;
    let gp = validate_params_allowing_large_r(Params::new(1, m, ell, r), &gadget)?;
    if !Instance::new(&gadget, gp).is_feasible(l_set) {
        return Err(ReductionError::CertificateInfeasible);
    }

    let n = g.n();
    let mut extracted = VertexSet::empty(n);
    for v in 0..n {
        if l_set.contains(v) {
            extracted.insert(v);
        }
    }
    // Repair: any vertex with no dominator in the extraction dominates
    // itself.
    let mut repaired = extracted.clone();
    for v in 0..n {
        let dominated = extracted.contains(v)
            || g.neighbors(v).iter().any(|&u| extracted.contains(u as usize));
        if !dominated {
            repaired.insert(v);
        }
    }

    let bound = l_set.len() - ell as usize;
    if repaired.len() > bound {
        return Err(ReductionError::BoundViolated {
            got: repaired.len(),
            bound,
        });
    }
    debug_assert!((0..n).all(|v| {
        repaired.contains(v) || g.neighbors(v).iter().any(|&u| repaired.contains(u as usize))
    }));
    Ok(repaired)
}

/// Builds gadget B: a copy of the (connected) source graph with a pendant
/// path of d-1 fresh vertices attached to every copy vertex, for a total
/// of `n * d` vertices.
pub fn build_gadget_b(g: &Graph, d: u32) -> Result<(Graph, ReductionMap), ReductionError> {
    if d < 2 {
        return Err(ReductionError::RadiusTooSmall { d });
    }
    if !g.is_connected() {
        return Err(ReductionError::Disconnected);
    }
    let n = g.n();
    let steps = (d - 1) as usize;
    let pendant = |anchor: usize, step: usize| n + anchor * steps + (step - 1);
    let total = n * d as usize;

    let mut edges: Vec<(usize, usize)> = g.edges().collect();
    for i in 0..n {
        edges.push((i, pendant(i, 1)));
        for step in 2..=steps {
            edges.push((pendant(i, step - 1), pendant(i, step)));
        }
    }
    let mut gadget = Graph::build(total, &edges)?;

    let mut roles = Vec::with_capacity(total);
    let mut labels = Vec::with_capacity(total);
    for i in 0..n {
        roles.push(VertexRole::CopyOf { source: i });
        labels.push(format!("v_{i}"));
    }
    for i in 0..n {
        for step in 1..=steps {
            roles.push(VertexRole::Path { anchor: i, step });
            labels.push(format!("p_{i}_{step}"));
        }
    }
    // Layout check: pendant rows directly follow the copies, grouped by
    // anchor.
    debug_assert!((0..n).all(|i| {
        (1..=steps).all(|s| roles[pendant(i, s)] == VertexRole::Path { anchor: i, step: s })
    }));
    gadget.set_labels(labels);

    Ok((
        gadget,
        ReductionMap {
            kind: GadgetKind::GadgetB,
            source_n: n,
            params: GadgetParams::B { d },
            vertex_roles: roles,
        },
    ))
}

/// Copies a source-side set onto the gadget's copy vertices; sizes agree.
pub fn forward_cert_b(map: &ReductionMap, l_set: &VertexSet) -> VertexSet {
    assert!(matches!(map.params, GadgetParams::B { .. }));
    assert_eq!(l_set.capacity(), map.source_n);
    let mut out = VertexSet::empty(map.gadget_n());
    for v in l_set.iter() {
        out.insert(v);
    }
    out
}

/// Pulls a feasible (d, m, l, 2)-dominating set of the gadget back to a
/// feasible (1, m, l, 2)-dominating set of the source graph, no larger.
///
/// Pendant members are processed in increasing (anchor, step) order: each
/// is replaced by its anchor copy if absent, otherwise by the
/// smallest-index absent copy in the anchor's closed neighborhood,
/// otherwise dropped.
pub fn backward_cert_b(
    map: &ReductionMap,
    g: &Graph,
    l_prime: &VertexSet,
    m: u32,
    ell: u32,
) -> Result<VertexSet, ReductionError> {
    let GadgetParams::B { d } = map.params else {
        panic!("backward_cert_b needs a gadget B map");
    };
    assert_eq!(g.n(), map.source_n);
    assert_eq!(l_prime.capacity(), map.gadget_n());

    let source_params = crate::domination::validate_params(Params::new(1, m, ell, 2), g)?;
    let (gadget, _) = build_gadget_b(g, d)?;
    let gp = crate::domination::validate_params(Params::new(d, m, ell, 2), &gadget)?;
    if !Instance::new(&gadget, gp).is_feasible(l_prime) {
        return Err(ReductionError::CertificateInfeasible);
    }

    let n = g.n();
    let steps = (d - 1) as usize;
    let mut working = l_prime.clone();
    for anchor in 0..n {
        for step in 1..=steps {
            let pv = map
                .index_of(VertexRole::Path { anchor, step })
                .expect("in-range pendant");
            if !working.remove(pv) {
                continue;
            }
            if !working.contains(anchor) {
                working.insert(anchor);
                continue;
            }
            let substitute = std::iter::once(anchor)
                .chain(g.neighbors(anchor).iter().map(|&u| u as usize))
                .filter(|&c| !working.contains(c))
                .min();
            match substitute {
                Some(c) => {
                    working.insert(c);
                }
                None => {
                    // Whole closed copy-neighborhood already chosen; the
                    // pendant member is simply dropped.
                }
            }
        }
    }

    let mut out = VertexSet::empty(n);
    for v in 0..n {
        if working.contains(v) {
            out.insert(v);
        }
    }
    debug_assert_eq!(out.len(), working.len(), "replacement left pendant members behind");
    debug_assert!(out.len() <= l_prime.len());

    if !Instance::new(g, source_params).is_feasible(&out) {
        return Err(ReductionError::TransferFailed);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::{validate_params, verify};
    use crate::oracle::solve_bruteforce;

    fn k2() -> Graph {
        Graph::build(2, &[(0, 1)]).unwrap()
    }

    fn p3() -> Graph {
        Graph::build(3, &[(0, 1), (1, 2)]).unwrap()
    }

    fn c5() -> Graph {
        Graph::build(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn gadget_a_of_k2_has_the_documented_shape() {
        let (gadget, map) = build_gadget_a(&k2(), 1, 2, 2).unwrap();
        assert_eq!(gadget.n(), 5);
        assert_eq!(map.gadget_n(), 5);
        // Two copies joined by an edge.
        assert!(gadget.neighbors(0).contains(&1));
        // The single clique vertex is adjacent to all four others.
        assert_eq!(gadget.degree(2), 4);
        // Tails touch only the clique vertex.
        assert_eq!(gadget.neighbors(3), &[2]);
        assert_eq!(gadget.neighbors(4), &[2]);
        assert_eq!(gadget.label(2), Some("c2_0"));
        assert_eq!(gadget.label(4), Some("v3_1"));
    }

    #[test]
    fn gadget_a_size_formula() {
        let (gadget, _) = build_gadget_a(&p3(), 1, 3, 2).unwrap();
        assert_eq!(gadget.n(), 3 + 3 + 2 - 1);
        for seed in 0..5 {
            let g = crate::graph::generate_random_graph(7, 0.4, seed, true);
            let (gadget, _) = build_gadget_a(&g, 1, 2, 2).unwrap();
            assert_eq!(gadget.n(), 7 + 2 + 2 - 1);
            assert!(gadget.n() <= 3 * 7);
        }
    }

    #[test]
    fn gadget_a_structure_invariants() {
        let g = crate::graph::generate_random_graph(6, 0.5, 3, true);
        let (gadget, map) = build_gadget_a(&g, 2, 3, 2).unwrap();
        for v in 0..6 {
            for j in 0..2 {
                let c = map.index_of(VertexRole::CliqueV2 { index: j }).unwrap();
                assert!(gadget.neighbors(v).contains(&(c as u32)));
            }
        }
        for j in 0..2 {
            let t = map.index_of(VertexRole::TailV3 { index: j }).unwrap();
            assert_eq!(gadget.degree(t), 2); // l - 1
        }
    }

    #[test]
    fn gadget_a_rejects_trivial_clique() {
        assert!(matches!(
            build_gadget_a(&k2(), 1, 1, 1),
            Err(ReductionError::EmptyClique { ell: 1 })
        ));
    }

    #[test]
    fn roles_and_inverse_agree() {
        let (_, map) = build_gadget_a(&p3(), 1, 3, 2).unwrap();
        for v in 0..map.gadget_n() {
            assert_eq!(map.index_of(map.role(v)), Some(v));
        }
        let (_, map) = build_gadget_b(&p3(), 3).unwrap();
        for v in 0..map.gadget_n() {
            assert_eq!(map.index_of(map.role(v)), Some(v));
        }
        assert_eq!(map.index_of(VertexRole::Path { anchor: 9, step: 1 }), None);
    }

    #[test]
    fn forward_cert_a_sizes_and_feasibility() {
        let g = k2();
        let (gadget, map) = build_gadget_a(&g, 1, 2, 2).unwrap();
        let d_set = VertexSet::from_indices(2, [0]);
        let l = forward_cert_a(&map, &d_set);
        assert_eq!(l.len(), 1 + 2);
        let gp = validate_params(Params::new(1, 1, 2, 2), &gadget).unwrap();
        assert!(verify(&gadget, gp, &l).feasible);

        // Empty input keeps only the fixed l members.
        assert_eq!(forward_cert_a(&map, &VertexSet::empty(2)).len(), 2);

        let (_, map3) = build_gadget_a(&p3(), 1, 2, 2).unwrap();
        assert_eq!(forward_cert_a(&map3, &VertexSet::full(3)).len(), 5);
    }

    #[test]
    fn backward_cert_a_round_trip_and_bounds() {
        let g = c5();
        let (gadget, map) = build_gadget_a(&g, 1, 2, 2).unwrap();
        let gp = validate_params(Params::new(1, 1, 2, 2), &gadget).unwrap();

        // Round trip through a known dominating set.
        let d = VertexSet::from_indices(5, [0, 2]);
        let l = forward_cert_a(&map, &d);
        let back = backward_cert_a(&map, &g, &l).unwrap();
        assert!(back.len() <= d.len());

        // The full gadget vertex set maps back within |V'| - l.
        let everything = VertexSet::full(map.gadget_n());
        let back = backward_cert_a(&map, &g, &everything).unwrap();
        assert!(back.len() <= map.gadget_n() - 2);

        // An optimal gadget solution recovers an optimal dominating set.
        let lopt = solve_bruteforce(&gadget, gp, None).unwrap();
        let back = backward_cert_a(&map, &g, &lopt.set).unwrap();
        assert_eq!(back.len(), 2); // domination number of C5

        // Infeasible certificates are rejected.
        let garbage = VertexSet::from_indices(map.gadget_n(), [0]);
        assert!(matches!(
            backward_cert_a(&map, &g, &garbage),
            Err(ReductionError::CertificateInfeasible)
        ));
    }

    #[test]
    fn gadget_b_shapes() {
        let (gadget, _) = build_gadget_b(&p3(), 2).unwrap();
        assert_eq!(gadget.n(), 6);
        let (gadget, map) = build_gadget_b(&k2(), 3).unwrap();
        assert_eq!(gadget.n(), 6);
        // Each pendant path's last vertex sits at distance d-1 from its
        // anchor.
        for anchor in 0..2 {
            let tip = map.index_of(VertexRole::Path { anchor, step: 2 }).unwrap();
            assert_eq!(gadget.distance(anchor, tip), Some(2));
        }
        assert_eq!(gadget.label(2), Some("p_0_1"));
    }

    #[test]
    fn gadget_b_size_bound() {
        for n in [3usize, 5, 7] {
            let g = crate::graph::generate_random_graph(n, 0.5, n as u64, true);
            for d in 2..=n.min(4) as u32 {
                let (gadget, _) = build_gadget_b(&g, d).unwrap();
                assert_eq!(gadget.n(), n * d as usize);
                assert!(gadget.n() <= n * n);
            }
        }
    }

    #[test]
    fn gadget_b_rejects_bad_inputs() {
        let disconnected = Graph::build(3, &[(0, 1)]).unwrap();
        assert!(matches!(
            build_gadget_b(&disconnected, 2),
            Err(ReductionError::Disconnected)
        ));
        assert!(matches!(
            build_gadget_b(&p3(), 1),
            Err(ReductionError::RadiusTooSmall { d: 1 })
        ));
    }

    #[test]
    fn forward_cert_b_is_size_preserving() {
        let (gadget, map) = build_gadget_b(&p3(), 2).unwrap();
        assert!(forward_cert_b(&map, &VertexSet::empty(3)).is_empty());
        let l = VertexSet::from_indices(3, [0, 1]);
        let lp = forward_cert_b(&map, &l);
        assert_eq!(lp.len(), 2);
        let gp = validate_params(Params::new(2, 1, 2, 2), &gadget).unwrap();
        assert!(verify(&gadget, gp, &lp).feasible);
    }

    #[test]
    fn backward_cert_b_round_trip_and_optimum() {
        let g = p3();
        let (gadget, map) = build_gadget_b(&g, 2).unwrap();
        let gp = validate_params(Params::new(2, 1, 2, 2), &gadget).unwrap();
        let sp = validate_params(Params::new(1, 1, 2, 2), &g).unwrap();

        let l = solve_bruteforce(&g, sp, None).unwrap();
        let round = backward_cert_b(&map, &g, &forward_cert_b(&map, &l.set), 1, 2).unwrap();
        assert!(round.len() <= l.set.len());
        assert!(verify(&g, sp, &round).feasible);

        let lopt = solve_bruteforce(&gadget, gp, None).unwrap();
        let back = backward_cert_b(&map, &g, &lopt.set, 1, 2).unwrap();
        assert!(verify(&g, sp, &back).feasible);
        assert_eq!(back.len(), 2);
    }

    #[test]
    fn backward_cert_b_replaces_pendants_with_anchors() {
        // Feasible gadget set that uses a pendant vertex whose anchor is
        // absent: the anchor must appear in the output.
        let g = p3();
        let (gadget, map) = build_gadget_b(&g, 2).unwrap();
        let gp = validate_params(Params::new(2, 1, 2, 2), &gadget).unwrap();
        let pendant_of_1 = map.index_of(VertexRole::Path { anchor: 1, step: 1 }).unwrap();
        let l_prime = VertexSet::from_indices(gadget.n(), [0, 2, pendant_of_1]);
        assert!(verify(&gadget, gp, &l_prime).feasible);
        let back = backward_cert_b(&map, &g, &l_prime, 1, 2).unwrap();
        assert!(back.contains(1));
        assert!(back.len() <= 3);
    }

    #[test]
    fn map_serializes_with_role_annotations() {
        let (_, map) = build_gadget_a(&k2(), 1, 2, 2).unwrap();
        let json = serde_json::to_value(&map).unwrap();
        assert_eq!(json["kind"], "gadget-a");
        assert_eq!(json["source_n"], 2);
        assert_eq!(json["params"]["ell"], 2);
        assert_eq!(json["vertex_roles"][0]["role"], "copy-of");
        assert_eq!(json["vertex_roles"][2]["role"], "clique-v2");
        assert_eq!(json["vertex_roles"][4]["role"], "tail-v3");

        let (_, map) = build_gadget_b(&p3(), 2).unwrap();
        let json = serde_json::to_value(&map).unwrap();
        assert_eq!(json["params"]["d"], 2);
        assert_eq!(json["vertex_roles"][3]["role"], "path");
        assert_eq!(json["vertex_roles"][3]["anchor"], 0);
    }
}

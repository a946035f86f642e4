//! Simple undirected graphs: construction, edge-list parsing, BFS
//! distances, and closed d-distance neighborhoods.

use std::collections::HashMap;
use std::collections::VecDeque;
use std::io::{self, Write};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bitset::VertexSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("edge ({u}, {v}) has an endpoint out of range for {n} vertices")]
    EndpointOutOfRange { u: usize, v: usize, n: usize },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("distance radius must be at least 1")]
    ZeroRadius,
}

/// A simple undirected graph over dense vertex indices `0..n`.
///
/// Adjacency lists are kept sorted and deduplicated; `labels` is present
/// only when the graph came from a labeled edge list.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    labels: Option<Vec<String>>,
}

impl Graph {
    /// Builds a graph from an edge list over `0..n`. Duplicate and reversed
    /// edge pairs collapse to a single edge; self-loops and out-of-range
    /// endpoints are rejected.
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange { u, v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v as u32);
            adj[v].push(u as u32);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj, labels: None })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn neighbors(&self, v: usize) -> &[u32] {
        &self.adj[v]
    }

    /// Edges as `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            list.iter()
                .map(|&v| v as usize)
                .filter(move |&v| u < v)
                .map(move |v| (u, v))
        })
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels.as_ref().map(|l| l[v].as_str())
    }

    /// Label if present, else the index rendered as text.
    pub fn display_label(&self, v: usize) -> String {
        match self.label(v) {
            Some(s) => s.to_owned(),
            None => v.to_string(),
        }
    }

    /// Resolves a label (or, on unlabeled graphs, a decimal index) to a
    /// vertex index.
    pub fn vertex_by_label(&self, token: &str) -> Option<usize> {
        match &self.labels {
            Some(labels) => labels.iter().position(|l| l == token),
            None => token.parse::<usize>().ok().filter(|&v| v < self.n()),
        }
    }

    pub fn set_labels(&mut self, labels: Vec<String>) {
        assert_eq!(labels.len(), self.n());
        self.labels = Some(labels);
    }

    fn bfs_from(&self, src: usize) -> Vec<Option<u32>> {
        let mut dist = vec![None; self.n()];
        dist[src] = Some(0);
        let mut queue = VecDeque::from([src]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                let w = w as usize;
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest-path hop count between `u` and `v`, or `None` when they lie
    /// in different components. Never a large finite stand-in: an
    /// unreachable pair must not satisfy any `<= d` test.
    pub fn distance(&self, u: usize, v: usize) -> Option<u32> {
        assert!(u < self.n() && v < self.n());
        if u == v {
            return Some(0);
        }
        self.bfs_from(u)[v]
    }

    /// Closed d-distance neighborhoods of every vertex, one BFS per row.
    pub fn d_neighborhoods(&self, d: u32) -> Result<NeighborhoodTable, GraphError> {
        if d < 1 {
            return Err(GraphError::ZeroRadius);
        }
        let n = self.n();
        let rows = (0..n)
            .map(|v| {
                let dist = self.bfs_from(v);
                VertexSet::from_indices(
                    n,
                    (0..n).filter(|&u| matches!(dist[u], Some(x) if x <= d)),
                )
            })
            .collect();
        Ok(NeighborhoodTable { d, rows })
    }

    /// True iff a single BFS reaches every vertex (vacuously for n <= 1).
    pub fn is_connected(&self) -> bool {
        if self.n() <= 1 {
            return true;
        }
        self.bfs_from(0).iter().all(Option::is_some)
    }

    /// Parses the edge-list text format: an optional `p <n> <e>` header,
    /// then one `<label> <label>` pair per non-empty, non-`#` line. Vertex
    /// indices follow first appearance unless the header fixes `n`, in
    /// which case labels must be the integers `0..n-1`.
    pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
        let mut header_n: Option<usize> = None;
        let mut names: Vec<String> = Vec::new();
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut edges: Vec<(usize, usize)> = Vec::new();
        let mut saw_content = false;

        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.trim();
            let lineno = lineno + 1;
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tokens = line.split_whitespace();
            if !saw_content {
                saw_content = true;
                if line.starts_with("p ") || line == "p" {
                    let parse_field = |tok: Option<&str>, what: &str| -> Result<usize, GraphError> {
                        tok.ok_or_else(|| GraphError::Parse {
                            line: lineno,
                            reason: format!("header is missing {what}"),
                        })?
                        .parse()
                        .map_err(|_| GraphError::Parse {
                            line: lineno,
                            reason: format!("header has a non-numeric {what}"),
                        })
                    };
                    tokens.next(); // "p"
                    let n = parse_field(tokens.next(), "vertex count")?;
                    let _e = parse_field(tokens.next(), "edge count")?;
                    if tokens.next().is_some() {
                        return Err(GraphError::Parse {
                            line: lineno,
                            reason: "trailing tokens after header".into(),
                        });
                    }
                    header_n = Some(n);
                    continue;
                }
            }
            let (a, b) = match (tokens.next(), tokens.next(), tokens.next()) {
                (Some(a), Some(b), None) => (a, b),
                _ => {
                    return Err(GraphError::Parse {
                        line: lineno,
                        reason: format!("expected two labels, got {line:?}"),
                    })
                }
            };
            let mut resolve = |tok: &str| -> Result<usize, GraphError> {
                if let Some(n) = header_n {
                    match tok.parse::<usize>() {
                        Ok(v) if v < n => Ok(v),
                        _ => Err(GraphError::Parse {
                            line: lineno,
                            reason: format!(
                                "label {tok:?} is not an integer in 0..{n} (header fixed n)"
                            ),
                        }),
                    }
                } else {
                    Ok(*index.entry(tok.to_owned()).or_insert_with(|| {
                        names.push(tok.to_owned());
                        names.len() - 1
                    }))
                }
            };
            let u = resolve(a)?;
            let v = resolve(b)?;
            if u == v {
                return Err(GraphError::Parse {
                    line: lineno,
                    reason: format!("self-loop on {a:?}"),
                });
            }
            edges.push((u, v));
        }

        let n = header_n.unwrap_or(names.len());
        let mut g = Graph::build(n, &edges)?;
        if header_n.is_none() {
            g.set_labels(names);
        }
        Ok(g)
    }

    /// Writes the graph back out in the edge-list format. Unlabeled graphs
    /// get a `p <n> <e>` header (so isolated vertices survive a
    /// round-trip); labeled graphs are written as label pairs, which cannot
    /// express an isolated vertex.
    pub fn write_edge_list<W: Write>(&self, mut w: W) -> io::Result<()> {
        match &self.labels {
            None => {
                writeln!(w, "p {} {}", self.n(), self.edge_count())?;
                for (u, v) in self.edges() {
                    writeln!(w, "{u} {v}")?;
                }
            }
            Some(labels) => {
                if let Some(v) = (0..self.n()).find(|&v| self.degree(v) == 0) {
                    return Err(io::Error::new(
                        io::ErrorKind::InvalidInput,
                        format!(
                            "labeled vertex {:?} is isolated and cannot appear in an edge list",
                            labels[v]
                        ),
                    ));
                }
                for (u, v) in self.edges() {
                    writeln!(w, "{} {}", labels[u], labels[v])?;
                }
            }
        }
        Ok(())
    }
}

/// Precomputed closed neighborhoods `N^d[v]` for a fixed radius.
#[derive(Debug, Clone)]
pub struct NeighborhoodTable {
    d: u32,
    rows: Vec<VertexSet>,
}

impl NeighborhoodTable {
    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn row(&self, v: usize) -> &VertexSet {
        &self.rows[v]
    }

    pub fn rows(&self) -> &[VertexSet] {
        &self.rows
    }
}

const CONNECT_RETRIES: usize = 64;

/// Erdős–Rényi `G(n, p)` from a seeded generator. With
/// `require_connected`, disconnected draws are retried a bounded number of
/// times, after which a random spanning tree is laid down before sampling
/// the remaining pairs.
pub fn generate_random_graph(n: usize, p: f64, seed: u64, require_connected: bool) -> Graph {
    assert!(n >= 1, "need at least one vertex");
    assert!((0.0..=1.0).contains(&p), "edge probability must be in [0, 1]");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let sample = |rng: &mut ChaCha8Rng| {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.random_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::build(n, &edges).expect("generated edges are in range and loop-free")
    };

    if !require_connected {
        return sample(&mut rng);
    }
    for _ in 0..CONNECT_RETRIES {
        let g = sample(&mut rng);
        if g.is_connected() {
            return g;
        }
    }
    // Fallback: random spanning tree first, then the p-sampled edges.
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.random_range(0..v), v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.random_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Graph::build(n, &edges).expect("generated edges are in range and loop-free")
}

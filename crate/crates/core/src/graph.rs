//! Loopless multigraphs with per-edge multiplicities, their underlying simple
//! graphs, and the line-based text format used by the CLI.
//!
//! Vertices are dense indices `0..n`. Generators that follow a published
//! labelling attach a label map so callers can address vertices by name.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

/// An unordered vertex pair, stored with `u < v`.
pub type VertexPair = (usize, usize);

/// Normalises `(u, v)` to `u < v`. Panics on a loop; loops are rejected at
/// every construction site before this is reached.
pub fn pair(u: usize, v: usize) -> VertexPair {
    assert_ne!(u, v, "loops are not representable");
    if u < v {
        (u, v)
    } else {
        (v, u)
    }
}

/// One parallel copy of a multigraph edge. `copy` ranges over
/// `0..multiplicity` of the pair, so instances are totally ordered by
/// `(pair, copy)` and all output involving them is deterministic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeInstance {
    pub pair: VertexPair,
    pub copy: usize,
}

impl EdgeInstance {
    pub fn new(u: usize, v: usize, copy: usize) -> Self {
        EdgeInstance { pair: pair(u, v), copy }
    }
}

impl fmt::Display for EdgeInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}-{}#{}", self.pair.0, self.pair.1, self.copy)
    }
}

/// Loopless multigraph: a multiplicity (>= 1) per unordered vertex pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Multigraph {
    n: usize,
    edges: BTreeMap<VertexPair, usize>,
    name: Option<String>,
    labels: BTreeMap<String, usize>,
}

impl Multigraph {
    pub fn new(n: usize) -> Self {
        Multigraph { n, edges: BTreeMap::new(), name: None, labels: BTreeMap::new() }
    }

    pub fn with_name(n: usize, name: &str) -> Self {
        let mut g = Self::new(n);
        g.name = Some(name.to_string());
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn set_name(&mut self, name: &str) {
        self.name = Some(name.to_string());
    }

    /// Adds `mult` parallel copies between `u` and `v` (accumulating).
    pub fn add_edge(&mut self, u: usize, v: usize, mult: usize) -> Result<()> {
        if u == v {
            return Err(Error::Parse(format!("loop at vertex {u}")));
        }
        if u >= self.n || v >= self.n {
            return Err(Error::Parse(format!("vertex out of range in edge {u}-{v}")));
        }
        if mult == 0 {
            return Err(Error::Parse(format!("zero multiplicity on edge {u}-{v}")));
        }
        *self.edges.entry(pair(u, v)).or_insert(0) += mult;
        Ok(())
    }

    /// Names a vertex; used by the construction generators.
    pub fn set_label(&mut self, label: &str, v: usize) {
        assert!(v < self.n);
        self.labels.insert(label.to_string(), v);
    }

    /// Looks a vertex up by label.
    pub fn vertex(&self, label: &str) -> Option<usize> {
        self.labels.get(label).copied()
    }

    pub fn labels(&self) -> &BTreeMap<String, usize> {
        &self.labels
    }

    pub fn multiplicity(&self, u: usize, v: usize) -> usize {
        if u == v {
            return 0;
        }
        self.edges.get(&pair(u, v)).copied().unwrap_or(0)
    }

    /// Distinct pairs with positive multiplicity, ascending.
    pub fn simple_edges(&self) -> impl Iterator<Item = (VertexPair, usize)> + '_ {
        self.edges.iter().map(|(&p, &m)| (p, m))
    }

    pub fn simple_edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Total number of edge instances (sum of multiplicities).
    pub fn total_multiplicity(&self) -> usize {
        self.edges.values().sum()
    }

    /// All edge instances in `(pair, copy)` order.
    pub fn edge_instances(&self) -> Vec<EdgeInstance> {
        let mut out = Vec::with_capacity(self.total_multiplicity());
        for (&p, &m) in &self.edges {
            for copy in 0..m {
                out.push(EdgeInstance { pair: p, copy });
            }
        }
        out
    }

    pub fn contains_instance(&self, e: &EdgeInstance) -> bool {
        e.copy < self.multiplicity(e.pair.0, e.pair.1)
    }

    /// Degree counting multiplicities.
    pub fn degree(&self, v: usize) -> usize {
        self.edges
            .iter()
            .filter(|(&(a, b), _)| a == v || b == v)
            .map(|(_, &m)| m)
            .sum()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Distinct neighbours of `v` (multiplicity ignored), ascending.
    pub fn neighbours(&self, v: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .keys()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out
    }

    /// The underlying simple graph: a pair is present iff its multiplicity
    /// is at least 1.
    pub fn underlying_simple(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.n);
        for &(u, v) in self.edges.keys() {
            g.add_edge(u, v);
        }
        g
    }

    /// Parses the text format:
    ///
    /// ```text
    /// # comment
    /// mg <n>
    /// e <u> <v> <mult>
    /// ```
    ///
    /// with `0 <= u < v < n`, `mult >= 1`, one line per distinct pair.
    pub fn parse(input: &str) -> Result<Self> {
        let mut graph: Option<Multigraph> = None;
        for (lineno, raw) in input.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut tok = line.split_whitespace();
            let head = tok.next().unwrap();
            let at = |what: &str| Error::Parse(format!("line {}: {what}", lineno + 1));
            match head {
                "mg" => {
                    if graph.is_some() {
                        return Err(at("duplicate header"));
                    }
                    let n: usize = tok
                        .next()
                        .ok_or_else(|| at("missing vertex count"))?
                        .parse()
                        .map_err(|_| at("bad vertex count"))?;
                    graph = Some(Multigraph::new(n));
                }
                "e" => {
                    let g = graph.as_mut().ok_or_else(|| at("edge before header"))?;
                    let mut next = |what: &str| -> Result<usize> {
                        tok.next()
                            .ok_or_else(|| at(&format!("missing {what}")))?
                            .parse()
                            .map_err(|_| at(&format!("bad {what}")))
                    };
                    let u = next("u")?;
                    let v = next("v")?;
                    let m = next("multiplicity")?;
                    if u >= v {
                        return Err(at(&format!("expected u < v, got {u} {v}")));
                    }
                    if v >= g.n {
                        return Err(at(&format!("vertex {v} out of range")));
                    }
                    if m == 0 {
                        return Err(at("multiplicity must be >= 1"));
                    }
                    if g.edges.contains_key(&(u, v)) {
                        return Err(at(&format!("duplicate edge line for {u}-{v}")));
                    }
                    g.edges.insert((u, v), m);
                }
                other => return Err(at(&format!("unknown directive `{other}`"))),
            }
        }
        graph.ok_or_else(|| Error::Parse("missing `mg <n>` header".into()))
    }

    /// Serialises to the text format accepted by [`Multigraph::parse`].
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if let Some(name) = &self.name {
            out.push_str(&format!("# {name}\n"));
        }
        out.push_str(&format!("mg {}\n", self.n));
        for (&(u, v), &m) in &self.edges {
            out.push_str(&format!("e {u} {v} {m}\n"));
        }
        out
    }
}

/// Simple graph on dense vertex indices, loopless and symmetric by
/// construction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<Vec<usize>>,
}

impl SimpleGraph {
    pub fn new(n: usize) -> Self {
        SimpleGraph { n, adj: vec![Vec::new(); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut g = Self::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Inserts the edge if absent; loops panic.
    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert_ne!(u, v, "loops are not representable");
        assert!(u < self.n && v < self.n, "vertex out of range");
        if !self.has_edge(u, v) {
            self.adj[u].push(v);
            self.adj[v].push(u);
            self.adj[u].sort_unstable();
            self.adj[v].sort_unstable();
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u != v && self.adj[u].binary_search(&v).is_ok()
    }

    /// Neighbours in ascending order.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).max().unwrap_or(0)
    }

    /// Edges as sorted pairs, ascending.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for &v in &self.adj[u] {
                if u < v {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn is_complete(&self) -> bool {
        self.n < 2 || self.edge_count() == self.n * (self.n - 1) / 2
    }

    /// Complement graph on the same vertex set.
    pub fn complement(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.n);
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if !self.has_edge(u, v) {
                    g.add_edge(u, v);
                }
            }
        }
        g
    }

    /// Induced subgraph on `keep` (ascending, deduplicated by caller);
    /// returns the subgraph and the map from new index to old.
    pub fn induced(&self, keep: &[usize]) -> (SimpleGraph, Vec<usize>) {
        let mut back = vec![usize::MAX; self.n];
        for (new, &old) in keep.iter().enumerate() {
            back[old] = new;
        }
        let mut g = SimpleGraph::new(keep.len());
        for (new, &old) in keep.iter().enumerate() {
            for &w in &self.adj[old] {
                if back[w] != usize::MAX && back[w] > new {
                    g.add_edge(new, back[w]);
                }
            }
        }
        (g, keep.to_vec())
    }

    /// Promotes a simple graph to a multiplicity-1 multigraph.
    pub fn to_multigraph(&self) -> Multigraph {
        let mut g = Multigraph::new(self.n);
        for (u, v) in self.edges() {
            g.add_edge(u, v, 1).expect("simple graph edges are valid");
        }
        g
    }

    /// Connected components as sorted vertex lists, ordered by least vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut stack = vec![s];
            let mut comp = Vec::new();
            seen[s] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

//! Splitting a nonnegative edge weighting into parts whose supports are
//! vertex-disjoint unions of odd cycles and single edges, preserving the
//! total edgewise and splitting the maximum weighted degree additively.
//!
//! The engine repeatedly finds a signed perturbation `t` built from one of
//! four support structures (even cycle; two odd cycles joined by a path;
//! a path between two support-degree-one vertices; a path from such a vertex
//! to an odd cycle), splits along it, and finishes each branch with a
//! terminal split that freezes the exact weight pattern. All arithmetic is
//! exact rational; the four decomposition properties are certified by an
//! independent checker.

use std::collections::BTreeMap;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::graph::{pair, SimpleGraph, VertexPair};
use crate::rational::{rat, ratio, Rational};

/// Nonnegative rational weights on the edges of a simple host graph. Only
/// nonzero weights are stored, so the key set is the support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeWeighting {
    host: SimpleGraph,
    weight: BTreeMap<VertexPair, Rational>,
}

impl EdgeWeighting {
    pub fn new(host: SimpleGraph) -> Self {
        EdgeWeighting { host, weight: BTreeMap::new() }
    }

    pub fn host(&self) -> &SimpleGraph {
        &self.host
    }

    pub fn set(&mut self, u: usize, v: usize, w: Rational) -> Result<()> {
        if !self.host.has_edge(u, v) {
            return Err(Error::Precondition(format!("{u}-{v} is not a host edge")));
        }
        if w < Rational::zero() {
            return Err(Error::Precondition(format!("negative weight on {u}-{v}")));
        }
        if w.is_zero() {
            self.weight.remove(&pair(u, v));
        } else {
            self.weight.insert(pair(u, v), w);
        }
        Ok(())
    }

    pub fn get(&self, u: usize, v: usize) -> Rational {
        self.weight.get(&pair(u, v)).cloned().unwrap_or_else(Rational::zero)
    }

    /// Support edges, ascending.
    pub fn support(&self) -> Vec<VertexPair> {
        self.weight.keys().copied().collect()
    }

    pub fn support_size(&self) -> usize {
        self.weight.len()
    }

    pub fn is_zero(&self) -> bool {
        self.weight.is_empty()
    }

    /// Weighted degree of a vertex.
    pub fn degree(&self, v: usize) -> Rational {
        self.weight
            .iter()
            .filter(|(&(a, b), _)| a == v || b == v)
            .fold(Rational::zero(), |acc, (_, w)| acc + w)
    }

    /// Maximum weighted degree.
    pub fn max_degree(&self) -> Rational {
        (0..self.host.n())
            .map(|v| self.degree(v))
            .max()
            .unwrap_or_else(Rational::zero)
    }

    /// Total weight over all edges.
    pub fn total(&self) -> Rational {
        self.weight.values().fold(Rational::zero(), |acc, w| acc + w)
    }

    /// The support as a simple graph on the host's vertex set.
    pub fn support_graph(&self) -> SimpleGraph {
        let mut g = SimpleGraph::new(self.host.n());
        for &(u, v) in self.weight.keys() {
            g.add_edge(u, v);
        }
        g
    }

    /// True iff the support is a vertex-disjoint union of odd cycles and
    /// single edges.
    pub fn support_is_cycles_and_edges(&self) -> bool {
        classify_support(&self.support_graph()).is_some()
    }

    /// True iff, on top of the support structure, cycle edges carry exactly
    /// half the maximum weighted degree and isolated edges carry all of it.
    pub fn satisfies_weight_pattern(&self) -> bool {
        let Some(components) = classify_support(&self.support_graph()) else {
            return false;
        };
        if self.is_zero() {
            return true;
        }
        let delta = self.max_degree();
        let half = &delta / &rat(2);
        for comp in components {
            match comp {
                SupportComponent::SingleEdge(u, v) => {
                    if self.get(u, v) != delta {
                        return false;
                    }
                }
                SupportComponent::OddCycle(cyc) => {
                    for i in 0..cyc.len() {
                        let (u, v) = (cyc[i], cyc[(i + 1) % cyc.len()]);
                        if self.get(u, v) != half {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// A component of a well-structured support.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SupportComponent {
    SingleEdge(usize, usize),
    /// Vertices in cycle order.
    OddCycle(Vec<usize>),
}

/// Classifies the support graph as a disjoint union of odd cycles and single
/// edges, or returns `None` when it is not one.
pub fn classify_support(s: &SimpleGraph) -> Option<Vec<SupportComponent>> {
    let mut out = Vec::new();
    for comp in s.components() {
        if comp.len() == 1 {
            continue; // isolated vertex, no support edges
        }
        let degs: Vec<usize> = comp.iter().map(|&v| s.degree(v)).collect();
        if comp.len() == 2 && degs == [1, 1] {
            out.push(SupportComponent::SingleEdge(comp[0], comp[1]));
            continue;
        }
        if comp.len() % 2 == 1 && degs.iter().all(|&d| d == 2) {
            // Walk the cycle from its least vertex.
            let start = comp[0];
            let mut cyc = vec![start];
            let mut prev = usize::MAX;
            let mut here = start;
            loop {
                let next = s
                    .neighbours(here)
                    .iter()
                    .copied()
                    .find(|&w| w != prev)
                    .expect("degree two");
                if next == start {
                    break;
                }
                cyc.push(next);
                prev = here;
                here = next;
            }
            if cyc.len() == comp.len() {
                out.push(SupportComponent::OddCycle(cyc));
                continue;
            }
            return None;
        }
        return None;
    }
    Some(out)
}

/// Which of the four structures produced a perturbation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PerturbationCase {
    EvenCycle,
    TwoOddCycles,
    LeafToLeafPath,
    LeafToOddCycle,
}

impl PerturbationCase {
    pub fn label(&self) -> &'static str {
        match self {
            PerturbationCase::EvenCycle => "even-cycle",
            PerturbationCase::TwoOddCycles => "two-odd-cycles",
            PerturbationCase::LeafToLeafPath => "leaf-path",
            PerturbationCase::LeafToOddCycle => "leaf-to-cycle",
        }
    }
}

/// A signed edge weight used to split a weighting. The set `X_t` of
/// unbalanced vertices must each meet exactly one support edge of the
/// weighting being split, and `t` must vanish on edges inside `X_t`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPerturbation {
    pub case: PerturbationCase,
    value: BTreeMap<VertexPair, Rational>,
}

impl SignedPerturbation {
    pub fn get(&self, u: usize, v: usize) -> Rational {
        self.value.get(&pair(u, v)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn support(&self) -> Vec<VertexPair> {
        self.value.keys().copied().collect()
    }

    /// Signed degree of a vertex under `t`.
    pub fn degree(&self, v: usize) -> Rational {
        self.value
            .iter()
            .filter(|(&(a, b), _)| a == v || b == v)
            .fold(Rational::zero(), |acc, (_, w)| acc + w)
    }

    /// Vertices with nonzero signed degree.
    pub fn unbalanced_vertices(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|&v| !self.degree(v).is_zero()).collect()
    }

    /// Checks the perturbation invariants with respect to `w`.
    pub fn validate(&self, w: &EdgeWeighting) -> Result<()> {
        let mut has_pos = false;
        let mut has_neg = false;
        for (&(u, v), t) in &self.value {
            if w.get(u, v).is_zero() {
                return Err(Error::Internal(format!(
                    "perturbation touches {u}-{v} outside the support"
                )));
            }
            if t > &Rational::zero() {
                has_pos = true;
            }
            if t < &Rational::zero() {
                has_neg = true;
            }
        }
        if !has_pos || !has_neg {
            return Err(Error::DegeneratePerturbation);
        }
        let n = w.host().n();
        let x_t = self.unbalanced_vertices(n);
        let support = w.support_graph();
        for &v in &x_t {
            if support.degree(v) != 1 {
                return Err(Error::Internal(format!(
                    "unbalanced vertex {v} meets {} support edges, expected 1",
                    support.degree(v)
                )));
            }
        }
        for (i, &u) in x_t.iter().enumerate() {
            for &v in &x_t[i + 1..] {
                if w.host().has_edge(u, v) && !self.get(u, v).is_zero() {
                    return Err(Error::Internal(format!(
                        "perturbation does not vanish on {u}-{v} inside X_t"
                    )));
                }
            }
        }
        Ok(())
    }
}

// ---------------------------------------------------------------------------
// Structure search
// ---------------------------------------------------------------------------

/// Biconnected components (blocks) of `g` as edge lists, via Tarjan's
/// algorithm with ascending neighbour order.
fn blocks(g: &SimpleGraph) -> Vec<Vec<VertexPair>> {
    struct Dfs<'a> {
        g: &'a SimpleGraph,
        index: Vec<usize>,
        low: Vec<usize>,
        counter: usize,
        stack: Vec<VertexPair>,
        blocks: Vec<Vec<VertexPair>>,
    }
    impl Dfs<'_> {
        fn visit(&mut self, v: usize, parent: usize) {
            self.counter += 1;
            self.index[v] = self.counter;
            self.low[v] = self.counter;
            for &w in self.g.neighbours(v) {
                if self.index[w] == 0 {
                    self.stack.push(pair(v, w));
                    self.visit(w, v);
                    self.low[v] = self.low[v].min(self.low[w]);
                    if self.low[w] >= self.index[v] {
                        let mut block = Vec::new();
                        while let Some(e) = self.stack.pop() {
                            let done = e == pair(v, w);
                            block.push(e);
                            if done {
                                break;
                            }
                        }
                        block.sort_unstable();
                        self.blocks.push(block);
                    }
                } else if w != parent && self.index[w] < self.index[v] {
                    self.stack.push(pair(v, w));
                    self.low[v] = self.low[v].min(self.index[w]);
                }
            }
        }
    }
    let mut dfs = Dfs {
        g,
        index: vec![0; g.n()],
        low: vec![0; g.n()],
        counter: 0,
        stack: Vec::new(),
        blocks: Vec::new(),
    };
    for v in 0..g.n() {
        if dfs.index[v] == 0 && g.degree(v) > 0 {
            dfs.visit(v, usize::MAX);
        }
    }
    dfs.blocks.sort();
    dfs.blocks
}

/// Vertices of a block, ascending.
fn block_vertices(block: &[VertexPair]) -> Vec<usize> {
    let mut vs: Vec<usize> = block.iter().flat_map(|&(u, v)| [u, v]).collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

/// Is the block exactly a cycle? Returns it in cycle order if so.
fn block_as_cycle(g: &SimpleGraph, block: &[VertexPair]) -> Option<Vec<usize>> {
    let vs = block_vertices(block);
    if block.len() != vs.len() || block.len() < 3 {
        return None;
    }
    let in_block = |u: usize, v: usize| block.binary_search(&pair(u, v)).is_ok();
    let start = vs[0];
    let mut cyc = vec![start];
    let mut prev = usize::MAX;
    let mut here = start;
    loop {
        let next = g
            .neighbours(here)
            .iter()
            .copied()
            .find(|&w| w != prev && in_block(here, w))?;
        if next == start {
            break;
        }
        if cyc.len() > vs.len() {
            return None;
        }
        cyc.push(next);
        prev = here;
        here = next;
    }
    if cyc.len() == vs.len() {
        Some(cyc)
    } else {
        None
    }
}

/// Shortest path between two vertex sets through `g`, by multi-source BFS
/// with ascending tie-breaks. Returns the path from a source to the first
/// target reached; a vertex in both sets yields a single-vertex path.
fn shortest_path_between(g: &SimpleGraph, from: &[usize], to: &[usize]) -> Option<Vec<usize>> {
    let is_target = {
        let mut t = vec![false; g.n()];
        for &v in to {
            t[v] = true;
        }
        t
    };
    let mut parent = vec![usize::MAX; g.n()];
    let mut seen = vec![false; g.n()];
    let mut queue = std::collections::VecDeque::new();
    for &v in from {
        if !seen[v] {
            seen[v] = true;
            queue.push_back(v);
        }
    }
    while let Some(v) = queue.pop_front() {
        if is_target[v] {
            let mut path = vec![v];
            let mut cur = v;
            while parent[cur] != usize::MAX {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for &w in g.neighbours(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    None
}

/// Rotates a cycle (given in cycle order) so `anchor` comes first.
fn rotate_cycle(cyc: &[usize], anchor: usize) -> Vec<usize> {
    let pos = cyc.iter().position(|&v| v == anchor).expect("anchor on cycle");
    let mut out = Vec::with_capacity(cyc.len());
    out.extend_from_slice(&cyc[pos..]);
    out.extend_from_slice(&cyc[..pos]);
    out
}

/// Alternating +-`unit` around an odd cycle with both edges at the anchor
/// (the first vertex) receiving `sign * unit`.
fn cycle_alternation(
    cyc: &[usize],
    sign: i64,
    unit: i64,
    out: &mut BTreeMap<VertexPair, Rational>,
) {
    let m = cyc.len();
    for i in 0..m {
        let e = pair(cyc[i], cyc[(i + 1) % m]);
        let value = if i % 2 == 0 { sign * unit } else { -sign * unit };
        out.insert(e, rat(value));
    }
}

/// Finds a perturbation by the first applicable structure, searched in the
/// fixed order: even cycle, two odd cycles joined by a path, path between
/// two support-degree-one vertices, path from such a vertex to an odd cycle.
/// Returns `None` exactly when the support is already a vertex-disjoint
/// union of odd cycles and single edges.
pub fn find_perturbation(w: &EdgeWeighting) -> Result<Option<SignedPerturbation>> {
    let support = w.support_graph();
    if w.is_zero() {
        return Ok(None);
    }
    let blocks = blocks(&support);

    // Case one: an even cycle somewhere in the support.
    for block in &blocks {
        if block.len() < 3 {
            continue;
        }
        if let Some(cyc) = block_as_cycle(&support, block) {
            if cyc.len() % 2 == 0 {
                let mut value = BTreeMap::new();
                for i in 0..cyc.len() {
                    let e = pair(cyc[i], cyc[(i + 1) % cyc.len()]);
                    value.insert(e, rat(if i % 2 == 0 { 1 } else { -1 }));
                }
                return Ok(Some(SignedPerturbation { case: PerturbationCase::EvenCycle, value }));
            }
        } else {
            // Two-connected but not a cycle: an ear over any contained cycle
            // closes an even cycle.
            let cyc = even_cycle_in_block(&support, block);
            let mut value = BTreeMap::new();
            for i in 0..cyc.len() {
                let e = pair(cyc[i], cyc[(i + 1) % cyc.len()]);
                value.insert(e, rat(if i % 2 == 0 { 1 } else { -1 }));
            }
            return Ok(Some(SignedPerturbation { case: PerturbationCase::EvenCycle, value }));
        }
    }

    // From here on every block is a single edge or an odd cycle.
    let cycles: Vec<Vec<usize>> = blocks
        .iter()
        .filter(|b| b.len() >= 3)
        .map(|b| block_as_cycle(&support, b).expect("non-edge blocks are odd cycles here"))
        .collect();

    // Case two: two distinct odd cycles in one component, joined by a path
    // of length >= 0.
    let comp_id = {
        let mut id = vec![usize::MAX; support.n()];
        for (i, comp) in support.components().into_iter().enumerate() {
            for v in comp {
                id[v] = i;
            }
        }
        id
    };
    for i in 0..cycles.len() {
        for j in (i + 1)..cycles.len() {
            if comp_id[cycles[i][0]] != comp_id[cycles[j][0]] {
                continue;
            }
            let path = shortest_path_between(&support, &cycles[i], &cycles[j])
                .expect("same component");
            let c1 = rotate_cycle(&cycles[i], path[0]);
            let c2 = rotate_cycle(&cycles[j], *path.last().unwrap());
            let mut value = BTreeMap::new();
            // +-1 around the first cycle, defect +1 at its attachment; the
            // path carries +-2 starting opposite; the second cycle's defect
            // sign balances the path's last edge.
            cycle_alternation(&c1, 1, 1, &mut value);
            let mut last_sign = 1i64; // sign of d_t at the attachment so far
            for (i, pr) in path.windows(2).enumerate() {
                let v = rat(if i % 2 == 0 { -2 } else { 2 });
                last_sign = if i % 2 == 0 { -1 } else { 1 };
                value.insert(pair(pr[0], pr[1]), v);
            }
            let c2_sign = if path.len() == 1 { -1 } else { -last_sign };
            cycle_alternation(&c2, c2_sign, 1, &mut value);
            return Ok(Some(SignedPerturbation { case: PerturbationCase::TwoOddCycles, value }));
        }
    }

    // Leaves of the support.
    let leaves: Vec<usize> = (0..support.n()).filter(|&v| support.degree(v) == 1).collect();

    // Case three: a path of length >= 2 between two leaves.
    for &u in &leaves {
        let others: Vec<usize> = leaves.iter().copied().filter(|&v| v != u).collect();
        if let Some(path) = shortest_path_between(&support, &[u], &others) {
            if path.len() >= 3 {
                let mut value = BTreeMap::new();
                for (i, pr) in path.windows(2).enumerate() {
                    value.insert(pair(pr[0], pr[1]), rat(if i % 2 == 0 { 1 } else { -1 }));
                }
                return Ok(Some(SignedPerturbation {
                    case: PerturbationCase::LeafToLeafPath,
                    value,
                }));
            }
        }
    }

    // Case four: a nontrivial path from a leaf to an odd cycle.
    let cycle_vertices: Vec<usize> = cycles.iter().flatten().copied().collect();
    for &u in &leaves {
        if let Some(path) = shortest_path_between(&support, &[u], &cycle_vertices) {
            debug_assert!(path.len() >= 2, "a leaf is never on a cycle");
            let attach = *path.last().unwrap();
            let cyc = cycles
                .iter()
                .find(|c| c.contains(&attach))
                .expect("attachment lies on a cycle");
            let mut value = BTreeMap::new();
            let mut last_sign = 1i64;
            for (i, pr) in path.windows(2).enumerate() {
                let v = rat(if i % 2 == 0 { 2 } else { -2 });
                last_sign = if i % 2 == 0 { 1 } else { -1 };
                value.insert(pair(pr[0], pr[1]), v);
            }
            cycle_alternation(&rotate_cycle(cyc, attach), -last_sign, 1, &mut value);
            return Ok(Some(SignedPerturbation {
                case: PerturbationCase::LeafToOddCycle,
                value,
            }));
        }
    }

    // No structure found: the support must already be well-formed.
    if !w.support_is_cycles_and_edges() {
        return Err(Error::Internal(
            "no perturbation found on a malformed support".into(),
        ));
    }
    Ok(None)
}

/// Finds an even cycle inside a two-connected block that is not a cycle:
/// take any contained cycle; an ear path between two of its vertices closes
/// three cycles of which at least one is even.
fn even_cycle_in_block(g: &SimpleGraph, block: &[VertexPair]) -> Vec<usize> {
    let in_block = |u: usize, v: usize| block.binary_search(&pair(u, v)).is_ok();
    // Walk within the block to find some cycle.
    let vs = block_vertices(block);
    let start = vs[0];
    let mut walk = vec![start];
    let mut pos = vec![usize::MAX; g.n()];
    pos[start] = 0;
    let mut prev = usize::MAX;
    let cyc: Vec<usize> = loop {
        let here = *walk.last().unwrap();
        let next = g
            .neighbours(here)
            .iter()
            .copied()
            .find(|&w| w != prev && in_block(here, w))
            .expect("block vertices have degree >= 2 in the block");
        if pos[next] != usize::MAX {
            break walk[pos[next]..].to_vec();
        }
        pos[next] = walk.len();
        walk.push(next);
        prev = here;
    };
    if cyc.len().is_multiple_of(2) {
        return cyc;
    }
    // Odd cycle: find an ear between two cycle vertices avoiding cycle edges
    // and interior cycle vertices.
    let on_cycle = {
        let mut t = vec![false; g.n()];
        for &v in &cyc {
            t[v] = true;
        }
        t
    };
    let cycle_edge = |u: usize, v: usize| {
        let m = cyc.len();
        (0..m).any(|i| pair(cyc[i], cyc[(i + 1) % m]) == pair(u, v))
    };
    // BFS from each cycle vertex through non-cycle vertices of the block.
    for &a in &cyc {
        let mut parent = vec![usize::MAX; g.n()];
        let mut seen = vec![false; g.n()];
        seen[a] = true;
        let mut queue = std::collections::VecDeque::new();
        queue.push_back(a);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbours(v) {
                if !in_block(v, w) || cycle_edge(v, w) || seen[w] {
                    continue;
                }
                if on_cycle[w] && v != a {
                    // Ear found: a .. v, w.
                    let mut ear = vec![w, v];
                    let mut cur = v;
                    while parent[cur] != usize::MAX {
                        cur = parent[cur];
                        ear.push(cur);
                    }
                    ear.reverse(); // a .. w
                    return close_even_cycle(&cyc, &ear);
                }
                if on_cycle[w] && v == a {
                    // Chord from a directly.
                    return close_even_cycle(&cyc, &[a, w]);
                }
                if !on_cycle[w] {
                    seen[w] = true;
                    parent[w] = v;
                    queue.push_back(w);
                }
            }
        }
    }
    unreachable!("a two-connected non-cycle block contains an ear over any cycle")
}

/// Combines an odd cycle with an ear (path between two cycle vertices with
/// interior off the cycle) into an even cycle.
fn close_even_cycle(cyc: &[usize], ear: &[usize]) -> Vec<usize> {
    let a = ear[0];
    let b = *ear.last().unwrap();
    let rot = rotate_cycle(cyc, a);
    let pos_b = rot.iter().position(|&v| v == b).expect("ear ends on cycle");
    // Arc one: a..b forward; arc two: b..a forward (i.e. the rest).
    let arc1 = &rot[..=pos_b];
    let mut arc2: Vec<usize> = rot[pos_b..].to_vec();
    arc2.push(a);
    // Cycle one walks the ear a..b and returns along arc1 reversed; cycle
    // two returns along arc2, which already runs b..a forward.
    let ear_len = ear.len() - 1;
    let cyc1_len = ear_len + arc1.len() - 1;
    if cyc1_len.is_multiple_of(2) {
        let mut out = ear.to_vec();
        let mut back: Vec<usize> = arc1[1..arc1.len() - 1].to_vec();
        back.reverse();
        out.extend(back);
        out
    } else {
        let mut out = ear.to_vec();
        out.extend_from_slice(&arc2[1..arc2.len() - 1]);
        debug_assert!(out.len().is_multiple_of(2));
        out
    }
}

// ---------------------------------------------------------------------------
// Splitting
// ---------------------------------------------------------------------------

/// Splits `w` along a perturbation into the convex pair
/// `w1 = m2/(m1+m2) (w + m1 t)` and `w2 = m1/(m1+m2) (w - m2 t)`, where
/// `m1`, `m2` are the largest scalars keeping the respective parts
/// nonnegative. Both supports shrink strictly and the maximum weighted
/// degree splits additively.
pub fn split(
    w: &EdgeWeighting,
    t: &SignedPerturbation,
) -> Result<(EdgeWeighting, EdgeWeighting)> {
    t.validate(w)?;
    let mut m1: Option<Rational> = None;
    let mut m2: Option<Rational> = None;
    for (u, v) in t.support() {
        let tv = t.get(u, v);
        let wv = w.get(u, v);
        if tv < Rational::zero() {
            let cap = &wv / &(-tv);
            if m1.as_ref().is_none_or(|m| cap < *m) {
                m1 = Some(cap);
            }
        } else if tv > Rational::zero() {
            let cap = &wv / &tv;
            if m2.as_ref().is_none_or(|m| cap < *m) {
                m2 = Some(cap);
            }
        }
    }
    let (m1, m2) = (m1.ok_or(Error::DegeneratePerturbation)?, m2.ok_or(Error::DegeneratePerturbation)?);
    let sum = &m1 + &m2;
    let f1 = &m2 / &sum;
    let f2 = &m1 / &sum;
    let mut w1 = EdgeWeighting::new(w.host.clone());
    let mut w2 = EdgeWeighting::new(w.host.clone());
    for (u, v) in w.support() {
        let wv = w.get(u, v);
        let tv = t.get(u, v);
        let a = &f1 * &(&wv + &(&m1 * &tv));
        let b = &f2 * &(&wv - &(&m2 * &tv));
        debug_assert!(a >= Rational::zero() && b >= Rational::zero());
        debug_assert_eq!(&a + &b, wv);
        w1.set(u, v, a)?;
        w2.set(u, v, b)?;
    }
    debug_assert!(w1.support_size() < w.support_size());
    debug_assert!(w2.support_size() < w.support_size());
    debug_assert_eq!(&w1.max_degree() + &w2.max_degree(), w.max_degree());
    Ok((w1, w2))
}

/// On a well-structured support, peels the largest multiple of the pattern
/// weight (1 on cycle edges, 2 on isolated edges): the first part satisfies
/// the exact weight pattern with maximum weighted degree `2m`, the second
/// has strictly smaller support (or is zero).
pub fn terminal_split(w: &EdgeWeighting) -> Result<(EdgeWeighting, EdgeWeighting)> {
    let Some(components) = classify_support(&w.support_graph()) else {
        return Err(Error::Precondition(
            "support is not a union of odd cycles and single edges".into(),
        ));
    };
    let mut pattern: BTreeMap<VertexPair, Rational> = BTreeMap::new();
    for comp in &components {
        match comp {
            SupportComponent::SingleEdge(u, v) => {
                pattern.insert(pair(*u, *v), rat(2));
            }
            SupportComponent::OddCycle(cyc) => {
                for i in 0..cyc.len() {
                    pattern.insert(pair(cyc[i], cyc[(i + 1) % cyc.len()]), rat(1));
                }
            }
        }
    }
    let m = pattern
        .iter()
        .map(|(&(u, v), t)| &w.get(u, v) / t)
        .min()
        .unwrap_or_else(Rational::zero);
    let mut w1 = EdgeWeighting::new(w.host.clone());
    let mut w2 = EdgeWeighting::new(w.host.clone());
    for (u, v) in w.support() {
        let t = pattern.get(&pair(u, v)).expect("pattern covers the support");
        let a = &m * t;
        let b = &w.get(u, v) - &a;
        debug_assert!(b >= Rational::zero());
        w1.set(u, v, a)?;
        w2.set(u, v, b)?;
    }
    debug_assert!(w1.is_zero() || w1.satisfies_weight_pattern());
    Ok((w1, w2))
}

// ---------------------------------------------------------------------------
// Full decomposition
// ---------------------------------------------------------------------------

/// An ordered decomposition of a weighting, with a per-part trace of the
/// splits that produced it.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub parts: Vec<EdgeWeighting>,
    pub provenance: Vec<String>,
    pub part_count: usize,
    pub max_depth: usize,
}

impl Decomposition {
    /// Certifies the four decomposition properties against the original
    /// weighting, in exact arithmetic: edgewise sum; additivity of the
    /// maximum weighted degree; support structure; exact weight pattern.
    pub fn validate(&self, original: &EdgeWeighting) -> Result<()> {
        for (u, v) in original.host().edges() {
            let sum = self
                .parts
                .iter()
                .fold(Rational::zero(), |acc, p| acc + p.get(u, v));
            if sum != original.get(u, v) {
                return Err(Error::Internal(format!(
                    "edgewise sum mismatch on {u}-{v}: {sum} vs {}",
                    original.get(u, v)
                )));
            }
        }
        let delta_sum = self
            .parts
            .iter()
            .fold(Rational::zero(), |acc, p| acc + p.max_degree());
        if delta_sum != original.max_degree() {
            return Err(Error::Internal(format!(
                "degree additivity mismatch: {delta_sum} vs {}",
                original.max_degree()
            )));
        }
        for (i, part) in self.parts.iter().enumerate() {
            if part.is_zero() {
                return Err(Error::Internal(format!("zero part at index {i}")));
            }
            if !part.support_is_cycles_and_edges() {
                return Err(Error::Internal(format!("part {i} support malformed")));
            }
            if !part.satisfies_weight_pattern() {
                return Err(Error::Internal(format!("part {i} weight pattern broken")));
            }
        }
        Ok(())
    }
}

/// A unit pattern: weight 1 on a matching, 1/2 on vertex-disjoint odd
/// cycles, so every covered vertex has weighted degree exactly 1.
struct Pattern {
    value: BTreeMap<VertexPair, Rational>,
    covered: Vec<bool>,
    cycles: usize,
    edges: usize,
}

/// Alternating-path search on the bipartite double cover. Augments the
/// matching to cover the exposed vertex `x`; when no augmenting path
/// exists, flips an alternating path that uncovers one unprotected vertex
/// instead. Fails only if no matching covering all protected vertices
/// exists at all.
fn cover_vertex(
    x: usize,
    mate: &mut [usize],
    neighbours: &dyn Fn(usize) -> Vec<usize>,
    protected: &[bool],
) -> Result<()> {
    const NONE: usize = usize::MAX;
    let size = mate.len();
    let mut pre_odd = vec![NONE; size]; // reached via unmatched edge, from even vertex
    let mut pre_even = vec![NONE; size]; // reached via matched edge, from odd vertex
    let mut seen_even = vec![false; size];
    let mut seen_odd = vec![false; size];
    seen_even[x] = true;
    let mut queue = std::collections::VecDeque::from([x]);
    let mut flip: Option<(usize, usize)> = None; // (odd y, its mate z)
    let mut augment_end: Option<usize> = None;
    'bfs: while let Some(u) = queue.pop_front() {
        for y in neighbours(u) {
            if seen_odd[y] {
                continue;
            }
            seen_odd[y] = true;
            pre_odd[y] = u;
            if mate[y] == NONE {
                augment_end = Some(y);
                break 'bfs;
            }
            let z = mate[y];
            if !seen_even[z] {
                seen_even[z] = true;
                pre_even[z] = y;
                queue.push_back(z);
                if flip.is_none() && !protected[z] {
                    flip = Some((y, z));
                }
            }
        }
    }
    let mut y = match (augment_end, flip) {
        (Some(y), _) => y,
        (None, Some((y, z))) => {
            mate[z] = NONE;
            y
        }
        (None, None) => {
            return Err(Error::Internal(
                "no pattern covers the tight vertices".into(),
            ))
        }
    };
    // Flip the alternating path back to x.
    loop {
        let u = pre_odd[y];
        let old = mate[u];
        mate[y] = u;
        mate[u] = y;
        if u == x {
            return Ok(());
        }
        y = old; // u's previous partner, one step closer to x
        debug_assert_eq!(y, pre_even[u]);
    }
}

/// Finds a unit pattern inside the support of `w` covering every tight
/// vertex: a matching on the bipartite double cover of the support graph
/// covering both copies of each tight vertex projects to a half-integral
/// structure, whose even cycles and paths are rounded to matchings.
fn covering_pattern(w: &EdgeWeighting, tight: &[bool]) -> Result<Pattern> {
    const NONE: usize = usize::MAX;
    let n = w.host().n();
    let sg = w.support_graph();
    let mut mate = vec![NONE; 2 * n];
    let protected: Vec<bool> = (0..2 * n).map(|x| tight[x % n]).collect();
    let neighbours = |x: usize| -> Vec<usize> {
        if x < n {
            sg.neighbours(x).iter().map(|&u| n + u).collect()
        } else {
            sg.neighbours(x - n).to_vec()
        }
    };
    for v in 0..n {
        for x in [v, n + v] {
            if protected[x] && mate[x] == NONE {
                cover_vertex(x, &mut mate, &neighbours, &protected)?;
            }
        }
    }

    // Project: each support edge is used by 0, 1 or 2 of its two copies.
    let mut single = SimpleGraph::new(n);
    let mut value: BTreeMap<VertexPair, Rational> = BTreeMap::new();
    for (u, v) in w.support() {
        let uses = usize::from(mate[u] == n + v) + usize::from(mate[v] == n + u);
        match uses {
            1 => single.add_edge(u, v),
            2 => {
                value.insert(pair(u, v), rat(1));
            }
            _ => {}
        }
    }
    // The singly-used edges form vertex-disjoint paths and cycles; odd
    // cycles keep weight 1/2, even cycles and paths round to alternating
    // matchings.
    let mut cycles = 0usize;
    for comp in single.components() {
        if comp.len() < 2 {
            continue;
        }
        let degs: Vec<usize> = comp.iter().map(|&v| single.degree(v)).collect();
        if degs.iter().all(|&d| d == 2) {
            // A cycle; walk it from its least vertex.
            let mut cyc = vec![comp[0]];
            let mut prev = NONE;
            loop {
                let here = *cyc.last().unwrap();
                let next = single
                    .neighbours(here)
                    .iter()
                    .copied()
                    .find(|&u| u != prev)
                    .expect("degree two");
                if next == comp[0] {
                    break;
                }
                prev = here;
                cyc.push(next);
            }
            if cyc.len() % 2 == 1 {
                cycles += 1;
                for i in 0..cyc.len() {
                    value.insert(pair(cyc[i], cyc[(i + 1) % cyc.len()]), ratio(1, 2));
                }
            } else {
                for i in (0..cyc.len()).step_by(2) {
                    value.insert(pair(cyc[i], cyc[(i + 1) % cyc.len()]), rat(1));
                }
            }
        } else {
            // A path; walk it from its least endpoint.
            let start = *comp.iter().find(|&&v| single.degree(v) == 1).unwrap();
            let mut walk = vec![start];
            let mut prev = NONE;
            loop {
                let here = *walk.last().unwrap();
                let next = single
                    .neighbours(here)
                    .iter()
                    .copied()
                    .find(|&u| u != prev);
                match next {
                    Some(u) => {
                        prev = here;
                        walk.push(u);
                    }
                    None => break,
                }
            }
            for i in (0..walk.len() - 1).step_by(2) {
                value.insert(pair(walk[i], walk[i + 1]), rat(1));
            }
        }
    }

    // Coverage audit: the pattern has degree 0 or 1 everywhere and 1 on
    // every tight vertex.
    let mut covered = vec![false; n];
    let edges = value.values().filter(|val| **val == rat(1)).count();
    let mut degree = vec![Rational::zero(); n];
    for (&(u, v), val) in &value {
        degree[u] += val;
        degree[v] += val;
    }
    for v in 0..n {
        if degree[v] == rat(1) {
            covered[v] = true;
        } else if !degree[v].is_zero() {
            return Err(Error::Internal(format!(
                "pattern degree {} at vertex {v}",
                degree[v]
            )));
        }
        if tight[v] && !covered[v] {
            return Err(Error::Internal(format!("tight vertex {v} left uncovered")));
        }
    }
    Ok(Pattern { value, covered, cycles, edges })
}

/// Decomposes a nonnegative weighting into parts satisfying all four
/// properties, by repeatedly peeling the largest multiple of a unit
/// pattern that covers every vertex of maximum weighted degree. Each peel
/// either empties a support edge or makes a new vertex tight, so the part
/// count is at most the number of support edges plus vertices.
pub fn decompose(w: &EdgeWeighting) -> Result<Decomposition> {
    let n = w.host().n();
    let mut parts: Vec<EdgeWeighting> = Vec::new();
    let mut provenance = Vec::new();
    let mut current = w.clone();
    let mut budget = w.max_degree();
    let mut iterations = 0usize;

    while !current.is_zero() {
        iterations += 1;
        if current.support_is_cycles_and_edges() && current.satisfies_weight_pattern() {
            parts.push(current.clone());
            provenance.push(format!("step {iterations}: residual pattern"));
            break;
        }
        let tight: Vec<bool> = (0..n).map(|v| current.degree(v) == budget).collect();
        let pattern = covering_pattern(&current, &tight)?;
        // Largest multiple keeping the remainder nonnegative and the
        // uncovered degrees below the shrinking budget.
        let mut amount: Option<Rational> = None;
        let mut consider = |cap: Rational| {
            if amount.as_ref().is_none_or(|a| cap < *a) {
                amount = Some(cap);
            }
        };
        for (&(u, v), val) in &pattern.value {
            consider(&current.get(u, v) / val);
        }
        for v in 0..n {
            if !pattern.covered[v] {
                let d = current.degree(v);
                if !d.is_zero() {
                    consider(&budget - &d);
                }
            }
        }
        let amount = amount.ok_or_else(|| Error::Internal("empty pattern".into()))?;
        if amount <= Rational::zero() {
            return Err(Error::Internal("peeling stalled".into()));
        }
        let mut part = EdgeWeighting::new(current.host().clone());
        for (&(u, v), val) in &pattern.value {
            let pw = &amount * val;
            part.set(u, v, pw.clone())?;
            current.set(u, v, &current.get(u, v) - &pw)?;
        }
        budget -= &amount;
        debug_assert_eq!(current.max_degree(), budget);
        parts.push(part);
        provenance.push(format!(
            "step {iterations}: peel {} odd cycle(s), {} matching edge(s)",
            pattern.cycles, pattern.edges
        ));
    }

    let part_count = parts.len();
    let out = Decomposition { parts, provenance, part_count, max_depth: iterations };
    out.validate(w)?;
    Ok(out)
}

/// Index and value of the part maximising total weight over maximum
/// weighted degree; ties broken by lowest index.
pub fn extremal_part_ratio(d: &Decomposition) -> Result<(usize, Rational)> {
    if d.parts.is_empty() {
        return Err(Error::Precondition("empty decomposition".into()));
    }
    let mut best: Option<(usize, Rational)> = None;
    for (i, part) in d.parts.iter().enumerate() {
        let ratio = &part.total() / &part.max_degree();
        if best.as_ref().is_none_or(|(_, b)| ratio > *b) {
            best = Some((i, ratio));
        }
    }
    Ok(best.unwrap())
}

/// The multiplicity weighting of a multigraph on its underlying simple
/// graph.
pub fn multiplicity_weighting(g: &crate::graph::Multigraph) -> EdgeWeighting {
    let host = g.underlying_simple();
    let mut w = EdgeWeighting::new(host);
    for ((u, v), m) in g.simple_edges() {
        w.set(u, v, rat(m as i64)).expect("host edge");
    }
    w
}

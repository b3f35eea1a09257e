//! Exact clique-minor detection for small graphs: kernelization (pendant
//! contraction, and degree-2 suppression when looking for a K4), fast
//! positive and negative checks, then a complete branch-and-bound over
//! branch-set assignments. Negative answers are exhaustive; a node budget
//! turns runaway searches into a clean error, never a wrong answer.
//!
//! Minors ignore edge multiplicities, so everything here works on simple
//! graphs; multigraph callers pass the underlying simple graph.

use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::solvers::clique::max_clique_size_within;

/// Branch sets witnessing a clique minor: disjoint, each connected in the
/// host, pairwise joined by an edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorWitness {
    pub branch_sets: Vec<Vec<usize>>,
}

impl MinorWitness {
    /// Independent validation against the host graph.
    pub fn validate(&self, h: &SimpleGraph) -> Result<()> {
        let mut seen = vec![false; h.n()];
        for set in &self.branch_sets {
            if set.is_empty() {
                return Err(Error::Internal("empty branch set".into()));
            }
            for &v in set {
                if v >= h.n() {
                    return Err(Error::Internal(format!("vertex {v} out of range")));
                }
                if seen[v] {
                    return Err(Error::Internal(format!("vertex {v} in two branch sets")));
                }
                seen[v] = true;
            }
            if !connected_within(h, set) {
                return Err(Error::Internal(format!("branch set {set:?} not connected")));
            }
        }
        for (i, a) in self.branch_sets.iter().enumerate() {
            for b in &self.branch_sets[i + 1..] {
                let joined = a
                    .iter()
                    .any(|&u| b.iter().any(|&v| h.has_edge(u, v)));
                if !joined {
                    return Err(Error::Internal(format!(
                        "branch sets {a:?} and {b:?} not adjacent"
                    )));
                }
            }
        }
        Ok(())
    }
}

fn connected_within(h: &SimpleGraph, set: &[usize]) -> bool {
    if set.is_empty() {
        return false;
    }
    let member = |v: usize| set.contains(&v);
    let mut seen = vec![set[0]];
    let mut stack = vec![set[0]];
    while let Some(v) = stack.pop() {
        for &w in h.neighbours(v) {
            if member(w) && !seen.contains(&w) {
                seen.push(w);
                stack.push(w);
            }
        }
    }
    seen.len() == set.len()
}

/// Search budget; exceeding it is reported as an error.
#[derive(Debug, Clone)]
pub struct MinorConfig {
    pub max_nodes: u64,
}

impl Default for MinorConfig {
    fn default() -> Self {
        MinorConfig { max_nodes: 50_000_000 }
    }
}

/// Outcome of a minor search, with preprocessing statistics.
#[derive(Debug, Clone)]
pub struct MinorSearch {
    pub found: bool,
    pub witness: Option<MinorWitness>,
    pub nodes: u64,
    pub pendant_contractions: usize,
    pub degree2_suppressions: usize,
}

impl MinorSearch {
    fn negative(stats: (usize, usize), nodes: u64) -> Self {
        MinorSearch {
            found: false,
            witness: None,
            nodes,
            pendant_contractions: stats.0,
            degree2_suppressions: stats.1,
        }
    }

    fn positive(witness: MinorWitness, stats: (usize, usize), nodes: u64) -> Self {
        MinorSearch {
            found: true,
            witness: Some(witness),
            nodes,
            pendant_contractions: stats.0,
            degree2_suppressions: stats.1,
        }
    }
}

/// Reduced host: live kernel vertices carry bags of original vertices.
struct Kernel {
    adj: Vec<Vec<usize>>,
    bags: Vec<Vec<usize>>,
    live: Vec<usize>,
    pendant_contractions: usize,
    degree2_suppressions: usize,
}

impl Kernel {
    fn build(h: &SimpleGraph, suppress_degree2: bool) -> Kernel {
        let n = h.n();
        let mut adj: Vec<Vec<usize>> = (0..n).map(|v| h.neighbours(v).to_vec()).collect();
        let mut bags: Vec<Vec<usize>> = (0..n).map(|v| vec![v]).collect();
        let mut alive = vec![true; n];
        let mut pendants = 0usize;
        let mut suppressions = 0usize;

        let remove_edge = |adj: &mut Vec<Vec<usize>>, u: usize, v: usize| {
            adj[u].retain(|&w| w != v);
            adj[v].retain(|&w| w != u);
        };

        loop {
            let mut changed = false;
            for v in 0..n {
                if !alive[v] {
                    continue;
                }
                match adj[v].len() {
                    0 => {
                        // Isolated vertices cannot join a clique minor of
                        // order >= 2.
                        alive[v] = false;
                        changed = true;
                    }
                    1 => {
                        let u = adj[v][0];
                        let bag = std::mem::take(&mut bags[v]);
                        bags[u].extend(bag);
                        remove_edge(&mut adj, u, v);
                        alive[v] = false;
                        pendants += 1;
                        changed = true;
                    }
                    2 if suppress_degree2 => {
                        let (a, b) = (adj[v][0], adj[v][1]);
                        let bag = std::mem::take(&mut bags[v]);
                        bags[a].extend(bag);
                        remove_edge(&mut adj, v, a);
                        remove_edge(&mut adj, v, b);
                        if !adj[a].contains(&b) {
                            adj[a].push(b);
                            adj[b].push(a);
                        }
                        alive[v] = false;
                        suppressions += 1;
                        changed = true;
                    }
                    _ => {}
                }
            }
            if !changed {
                break;
            }
        }

        let live: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
        Kernel {
            adj,
            bags,
            live,
            pendant_contractions: pendants,
            degree2_suppressions: suppressions,
        }
    }

    fn stats(&self) -> (usize, usize) {
        (self.pendant_contractions, self.degree2_suppressions)
    }

    /// The kernel as a compact simple graph plus per-vertex bags.
    fn compact(&self) -> (SimpleGraph, Vec<Vec<usize>>) {
        let mut index = vec![usize::MAX; self.adj.len()];
        for (i, &v) in self.live.iter().enumerate() {
            index[v] = i;
        }
        let mut g = SimpleGraph::new(self.live.len());
        for &v in &self.live {
            for &w in &self.adj[v] {
                if index[w] != usize::MAX && index[v] < index[w] {
                    g.add_edge(index[v], index[w]);
                }
            }
        }
        let bags = self.live.iter().map(|&v| self.bags[v].clone()).collect();
        (g, bags)
    }
}

struct BranchSearch<'a> {
    k: usize,
    n: usize,
    neigh: &'a [u64],
    nodes: u64,
    budget: u64,
}

impl BranchSearch<'_> {
    fn neighbourhood(&self, set: u64) -> u64 {
        let mut out = 0u64;
        let mut rest = set;
        while rest != 0 {
            let v = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            out |= self.neigh[v];
        }
        out
    }

    /// Fewest unused vertices needed before sets `a` and `b` can touch;
    /// `None` when no connection exists even using all of `unused`.
    fn shortfall(&self, a: u64, b: u64, unused: u64) -> Option<u32> {
        if self.neighbourhood(a) & b != 0 {
            return Some(0);
        }
        let target = self.neighbourhood(b);
        let mut frontier = self.neighbourhood(a) & unused;
        let mut reached = frontier;
        let mut steps = 1u32;
        while frontier != 0 {
            if frontier & target != 0 {
                return Some(steps);
            }
            frontier = self.neighbourhood(frontier) & unused & !reached;
            reached |= frontier;
            steps += 1;
        }
        None
    }

    fn run(&mut self, sets: &mut Vec<(u64, usize)>, used: u64) -> Result<Option<Vec<u64>>> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExceeded);
        }
        let unused = !used & mask(self.n);
        let missing = self.k - sets.len();

        if unused.count_ones() < missing as u32 {
            return Ok(None);
        }
        // Adjacency status and connection-cost pruning over seeded pairs.
        let mut first_gap: Option<(usize, usize)> = None;
        let mut worst = 0u32;
        for i in 0..sets.len() {
            for j in (i + 1)..sets.len() {
                if self.neighbourhood(sets[i].0) & sets[j].0 != 0 {
                    continue;
                }
                if first_gap.is_none() {
                    first_gap = Some((i, j));
                }
                match self.shortfall(sets[i].0, sets[j].0, unused) {
                    Some(s) => worst = worst.max(s),
                    None => return Ok(None),
                }
            }
        }
        if missing as u32 + worst > unused.count_ones() {
            return Ok(None);
        }

        if sets.len() < self.k {
            // Seed the next branch set; seeds ascend, and in any canonical
            // solution each seed is the least vertex of its final set.
            let floor = sets.last().map_or(0, |&(_, seed)| seed + 1);
            for v in floor..self.n {
                if unused & bit(v) == 0 {
                    continue;
                }
                sets.push((bit(v), v));
                if let Some(found) = self.run(sets, used | bit(v))? {
                    return Ok(Some(found));
                }
                sets.pop();
            }
            return Ok(None);
        }

        let Some((i, j)) = first_gap else {
            return Ok(Some(sets.iter().map(|&(s, _)| s).collect()));
        };
        // Repair the first non-adjacent pair by growing either side with an
        // unused neighbour above its own seed.
        for side in [i, j] {
            let (set, seed) = sets[side];
            let candidates = self.neighbourhood(set) & unused;
            for v in 0..self.n {
                if v <= seed || candidates & bit(v) == 0 {
                    continue;
                }
                sets[side] = (set | bit(v), seed);
                if let Some(found) = self.run(sets, used | bit(v))? {
                    return Ok(Some(found));
                }
                sets[side] = (set, seed);
            }
        }
        Ok(None)
    }
}

fn bit(v: usize) -> u64 {
    1u64 << v
}

fn mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Finds a cycle in a graph of minimum degree >= 2 (the k = 3 kernel) as a
/// vertex sequence in cycle order. Walk forward never reversing; the first
/// repeated vertex closes a cycle.
fn find_cycle(g: &SimpleGraph) -> Option<Vec<usize>> {
    if g.n() == 0 {
        return None;
    }
    debug_assert!((0..g.n()).all(|v| g.degree(v) >= 2));
    let mut walk = vec![0usize];
    let mut position = vec![usize::MAX; g.n()];
    position[0] = 0;
    let mut prev = usize::MAX;
    loop {
        let here = *walk.last().unwrap();
        let next = g
            .neighbours(here)
            .iter()
            .copied()
            .find(|&w| w != prev)
            .expect("minimum degree two");
        if position[next] != usize::MAX {
            return Some(walk[position[next]..].to_vec());
        }
        position[next] = walk.len();
        walk.push(next);
        prev = here;
    }
}

/// Exact decision: does `h` contain a `K_k` minor? Returns the search
/// outcome with a validated witness on success.
pub fn has_clique_minor(h: &SimpleGraph, k: usize, cfg: &MinorConfig) -> Result<MinorSearch> {
    if k == 0 {
        return Err(Error::Precondition("minor order k must be >= 1".into()));
    }
    if k == 1 {
        return Ok(if h.n() >= 1 {
            MinorSearch::positive(MinorWitness { branch_sets: vec![vec![0]] }, (0, 0), 0)
        } else {
            MinorSearch::negative((0, 0), 0)
        });
    }
    if k == 2 {
        let edge = h.edges().into_iter().next();
        return Ok(match edge {
            Some((u, v)) => MinorSearch::positive(
                MinorWitness { branch_sets: vec![vec![u], vec![v]] },
                (0, 0),
                0,
            ),
            None => MinorSearch::negative((0, 0), 0),
        });
    }

    let kernel = Kernel::build(h, k == 4);
    let stats = kernel.stats();
    let (kg, bags) = kernel.compact();

    if k == 3 {
        // A K3 minor exists iff the graph has a cycle; after pendant
        // contraction any remaining vertex lies on one.
        return Ok(match find_cycle(&kg) {
            Some(cyc) => {
                let arcs = vec![
                    vec![cyc[0]],
                    vec![cyc[1]],
                    cyc[2..].to_vec(),
                ];
                let witness = expand_witness(&arcs, &bags);
                witness.validate(h)?;
                MinorSearch::positive(witness, stats, 0)
            }
            None => MinorSearch::negative(stats, 0),
        });
    }

    // Quick exact rejections on the kernel.
    if kg.n() < k || kg.edge_count() < k * (k - 1) / 2 {
        return Ok(MinorSearch::negative(stats, 0));
    }
    // For k = 4 the kernel is degree-2-suppressed: a non-empty kernel has
    // minimum degree 3 and therefore a K4 minor; the search below only has
    // to produce the witness.
    if kg.n() > 64 {
        return Err(Error::BudgetExceeded);
    }

    // Fast positive: a K_k subgraph.
    let all: Vec<usize> = (0..kg.n()).collect();
    if max_clique_size_within(&kg, &all) >= k {
        let (_, clique) = crate::solvers::clique::max_clique(&kg);
        let sets: Vec<u64> = clique[..k].iter().map(|&v| bit(v)).collect();
        let witness = expand_witness_bits(&sets, &identity_rank(kg.n()), &bags);
        witness.validate(h)?;
        return Ok(MinorSearch::positive(witness, stats, 0));
    }

    // Rank vertices by degree descending (ties by index) and search in rank
    // space so that high-degree seeds are tried first.
    let mut rank: Vec<usize> = (0..kg.n()).collect();
    rank.sort_by_key(|&v| (usize::MAX - kg.degree(v), v));
    let mut neigh = vec![0u64; kg.n()];
    for (r, &v) in rank.iter().enumerate() {
        for &w in kg.neighbours(v) {
            let rw = rank.iter().position(|&x| x == w).unwrap();
            neigh[r] |= bit(rw);
        }
    }
    let mut search = BranchSearch {
        k,
        n: kg.n(),
        neigh: &neigh,
        nodes: 0,
        budget: cfg.max_nodes,
    };
    let outcome = search.run(&mut Vec::new(), 0)?;
    Ok(match outcome {
        Some(sets) => {
            let witness = expand_witness_bits(&sets, &rank, &bags);
            witness.validate(h)?;
            MinorSearch::positive(witness, stats, search.nodes)
        }
        None => MinorSearch::negative(stats, search.nodes),
    })
}

fn identity_rank(n: usize) -> Vec<usize> {
    (0..n).collect()
}

fn expand_witness_bits(sets: &[u64], rank: &[usize], bags: &[Vec<usize>]) -> MinorWitness {
    let kernel_sets: Vec<Vec<usize>> = sets
        .iter()
        .map(|&s| {
            (0..64)
                .filter(|&r| s & bit(r) != 0)
                .map(|r| rank[r])
                .collect()
        })
        .collect();
    expand_witness(&kernel_sets, bags)
}

fn expand_witness(kernel_sets: &[Vec<usize>], bags: &[Vec<usize>]) -> MinorWitness {
    let branch_sets = kernel_sets
        .iter()
        .map(|set| {
            let mut out: Vec<usize> = set.iter().flat_map(|&v| bags[v].iter().copied()).collect();
            out.sort_unstable();
            out
        })
        .collect();
    MinorWitness { branch_sets }
}

/// Largest `k` such that `h` has a `K_k` minor.
pub fn hadwiger_number(h: &SimpleGraph, cfg: &MinorConfig) -> Result<usize> {
    if h.n() == 0 {
        return Ok(0);
    }
    let mut best = 1;
    loop {
        let next = best + 1;
        if next > h.n() {
            return Ok(best);
        }
        if has_clique_minor(h, next, cfg)?.found {
            best = next;
        } else {
            return Ok(best);
        }
    }
}

/// Contracts each edge of a matching, dropping loops and merging parallel
/// adjacencies; vertices are renumbered densely. Returns the contracted
/// graph and the map old vertex -> new vertex.
pub fn contract_matching_with_map(
    h: &SimpleGraph,
    matching: &[(usize, usize)],
) -> Result<(SimpleGraph, Vec<usize>)> {
    let n = h.n();
    let mut touched = vec![false; n];
    for &(u, v) in matching {
        if u >= n || v >= n || !h.has_edge(u, v) {
            return Err(Error::NotAMatching(format!("{u}-{v} is not an edge")));
        }
        if touched[u] || touched[v] {
            return Err(Error::NotAMatching(format!("{u}-{v} shares a vertex")));
        }
        touched[u] = true;
        touched[v] = true;
    }
    let mut repr: Vec<usize> = (0..n).collect();
    for &(u, v) in matching {
        let (lo, hi) = if u < v { (u, v) } else { (v, u) };
        repr[hi] = lo;
    }
    let mut map = vec![usize::MAX; n];
    let mut next = 0;
    for v in 0..n {
        if repr[v] == v {
            map[v] = next;
            next += 1;
        }
    }
    for v in 0..n {
        if repr[v] != v {
            map[v] = map[repr[v]];
        }
    }
    let mut g = SimpleGraph::new(next);
    for (u, v) in h.edges() {
        let (a, b) = (map[u], map[v]);
        if a != b {
            g.add_edge(a, b);
        }
    }
    Ok((g, map))
}

/// Contracts each edge of a matching; see [`contract_matching_with_map`].
pub fn contract_matching(h: &SimpleGraph, matching: &[(usize, usize)]) -> Result<SimpleGraph> {
    contract_matching_with_map(h, matching).map(|(g, _)| g)
}

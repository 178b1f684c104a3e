//! Immutable simple undirected graphs with dense integer vertex ids,
//! bitmap vertex sets, BFS balls, induced-subgraph views, generators for
//! the standard test families, and edge-list / JSON file IO.

use std::collections::BTreeSet;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::Frac;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("vertex {0} out of range for graph on {1} vertices")]
    VertexOutOfRange(u32, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(u32),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(u32, u32),
    #[error("graph is empty")]
    EmptyGraph,
    #[error("infeasible family spec: {0}")]
    InfeasibleFamily(String),
    #[error("line {line}: {kind}")]
    Parse { line: usize, kind: String },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

// ---------------------------------------------------------------------------
// VertexSet
// ---------------------------------------------------------------------------

/// Bitmap over vertex ids `0..universe`. All set algebra is exact and the
/// element count is kept up to date, so `len` is O(1).
#[derive(Clone, PartialEq, Eq)]
pub struct VertexSet {
    words: Vec<u64>,
    universe: usize,
    len: usize,
}

impl VertexSet {
    pub fn empty(universe: usize) -> Self {
        VertexSet {
            words: vec![0; universe.div_ceil(64)],
            universe,
            len: 0,
        }
    }

    pub fn full(universe: usize) -> Self {
        let mut s = Self::empty(universe);
        for v in 0..universe as u32 {
            s.insert(v);
        }
        s
    }

    pub fn from_iter<I: IntoIterator<Item = u32>>(universe: usize, iter: I) -> Self {
        let mut s = Self::empty(universe);
        for v in iter {
            s.insert(v);
        }
        s
    }

    pub fn universe(&self) -> usize {
        self.universe
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn contains(&self, v: u32) -> bool {
        let v = v as usize;
        v < self.universe && self.words[v / 64] >> (v % 64) & 1 == 1
    }

    /// Returns true if the vertex was newly inserted.
    pub fn insert(&mut self, v: u32) -> bool {
        assert!((v as usize) < self.universe, "vertex {v} out of universe");
        let w = &mut self.words[v as usize / 64];
        let bit = 1u64 << (v % 64);
        if *w & bit == 0 {
            *w |= bit;
            self.len += 1;
            true
        } else {
            false
        }
    }

    pub fn remove(&mut self, v: u32) -> bool {
        if !self.contains(v) {
            return false;
        }
        self.words[v as usize / 64] &= !(1u64 << (v % 64));
        self.len -= 1;
        true
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
        self.recount();
    }

    pub fn difference_with(&mut self, other: &VertexSet) {
        assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
        self.recount();
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        assert_eq!(self.universe, other.universe);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
        self.recount();
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.union_with(other);
        s
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.difference_with(other);
        s
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        let mut s = self.clone();
        s.intersect_with(other);
        s
    }

    pub fn complement(&self) -> VertexSet {
        let mut s = Self::full(self.universe);
        s.difference_with(self);
        s
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        assert_eq!(self.universe, other.universe);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Ascending iteration over members.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros();
                    w &= w - 1;
                    Some(wi as u32 * 64 + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.iter().collect()
    }

    /// Smallest member, if any.
    pub fn min(&self) -> Option<u32> {
        self.iter().next()
    }

    fn recount(&mut self) {
        self.len = self.words.iter().map(|w| w.count_ones() as usize).sum();
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

// ---------------------------------------------------------------------------
// Graph
// ---------------------------------------------------------------------------

/// Simple undirected graph. No self-loops, no parallel edges; neighbor lists
/// are sorted by vertex id and symmetric. Immutable after construction, so
/// values can be shared freely across threads.
#[derive(Clone)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
    edge_count: usize,
}

impl Graph {
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Graph, GraphError>
    where
        I: IntoIterator<Item = (u32, u32)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut seen = BTreeSet::new();
        let mut edge_count = 0;
        for (u, v) in edges {
            if u as usize >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v as usize >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::DuplicateEdge(key.0, key.1));
            }
            adj[u as usize].push(v);
            adj[v as usize].push(u);
            edge_count += 1;
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph { adj, edge_count })
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].binary_search(&v).is_ok()
    }

    /// Edges as (u, v) with u < v, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, list)| {
            let u = u as u32;
            list.iter().copied().filter(move |&v| u < v).map(move |v| (u, v))
        })
    }

    pub fn min_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).min().unwrap_or(0)
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// Average degree `2e/n` as an exact fraction. Errors on the empty graph.
    pub fn average_degree(&self) -> Result<Frac, GraphError> {
        if self.n() == 0 {
            return Err(GraphError::EmptyGraph);
        }
        Ok(Frac::new(2 * self.edge_count as u64, self.n() as u64))
    }

    /// Average degree as f64, for log-derived formulas only.
    pub fn average_degree_f64(&self) -> f64 {
        if self.n() == 0 {
            0.0
        } else {
            2.0 * self.edge_count as f64 / self.n() as f64
        }
    }

    /// Number of edges with both endpoints in `s`.
    pub fn edges_within(&self, s: &VertexSet) -> usize {
        let mut e = 0;
        for u in s.iter() {
            e += self.adj[u as usize]
                .iter()
                .filter(|&&v| v > u && s.contains(v))
                .count();
        }
        e
    }

    /// Degree of `v` counting only neighbors inside `s`.
    pub fn degree_in(&self, v: u32, s: &VertexSet) -> usize {
        self.adj[v as usize].iter().filter(|&&w| s.contains(w)).count()
    }

    /// External neighborhood N(s): vertices outside `s` adjacent to `s`.
    pub fn neighborhood(&self, s: &VertexSet) -> VertexSet {
        let mut out = VertexSet::empty(self.n());
        for u in s.iter() {
            for &v in &self.adj[u as usize] {
                if !s.contains(v) {
                    out.insert(v);
                }
            }
        }
        out
    }

    /// Adjacency rows as single-word bitmasks, available when n <= 64.
    /// Used by the exhaustive subset scanners.
    pub fn adjacency_masks(&self) -> Option<Vec<u64>> {
        if self.n() > 64 {
            return None;
        }
        Some(
            self.adj
                .iter()
                .map(|list| list.iter().fold(0u64, |m, &v| m | 1 << v))
                .collect(),
        )
    }

    /// BFS ball of radius `r` around the seed set, computed in the graph with
    /// `forbidden` deleted. Layer 0 is the seed set; layer i+1 holds the
    /// vertices first reached at distance i+1. Layers may be empty; the
    /// returned ball always has exactly r+1 layers.
    pub fn ball(&self, seeds: &VertexSet, r: usize, forbidden: &VertexSet) -> Ball {
        assert!(
            seeds.is_disjoint(forbidden),
            "ball seeds intersect the forbidden set"
        );
        let mut layers = Vec::with_capacity(r + 1);
        let mut visited = seeds.union(forbidden);
        layers.push(seeds.clone());
        for i in 0..r {
            let mut next = VertexSet::empty(self.n());
            for u in layers[i].iter() {
                for &v in &self.adj[u as usize] {
                    if !visited.contains(v) {
                        next.insert(v);
                    }
                }
            }
            visited.union_with(&next);
            layers.push(next);
        }
        Ball { layers }
    }

    /// Induced subgraph on `s` with locally remapped ids and the back-mapping
    /// to ids of `self`.
    pub fn induced(&self, s: &VertexSet) -> Subgraph {
        let back: Vec<u32> = s.to_vec();
        let mut local = vec![u32::MAX; self.n()];
        for (i, &v) in back.iter().enumerate() {
            local[v as usize] = i as u32;
        }
        let mut edges = Vec::new();
        for (i, &v) in back.iter().enumerate() {
            for &w in &self.adj[v as usize] {
                if w > v && s.contains(w) {
                    edges.push((i as u32, local[w as usize]));
                }
            }
        }
        let graph = Graph::from_edges(back.len(), edges).expect("induced subgraph is simple");
        Subgraph { graph, back }
    }

    /// Checks that `path` is a walk along edges of this graph with no
    /// repeated vertices.
    pub fn is_simple_path(&self, path: &[u32]) -> bool {
        if path.is_empty() || path.iter().any(|&v| v as usize >= self.n()) {
            return false;
        }
        let mut seen = VertexSet::empty(self.n());
        for &v in path {
            if !seen.insert(v) {
                return false;
            }
        }
        path.windows(2).all(|w| self.has_edge(w[0], w[1]))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, e={})", self.n(), self.edge_count)
    }
}

/// BFS layers around a seed set.
#[derive(Clone, Debug)]
pub struct Ball {
    layers: Vec<VertexSet>,
}

impl Ball {
    pub fn center(&self) -> &VertexSet {
        &self.layers[0]
    }

    pub fn radius(&self) -> usize {
        self.layers.len() - 1
    }

    pub fn layers(&self) -> &[VertexSet] {
        &self.layers
    }

    /// Union of layers 0..=r (the whole ball when r = radius).
    pub fn vertices_up_to(&self, r: usize) -> VertexSet {
        let mut out = self.layers[0].clone();
        for layer in &self.layers[1..=r.min(self.radius())] {
            out.union_with(layer);
        }
        out
    }

    pub fn vertices(&self) -> VertexSet {
        self.vertices_up_to(self.radius())
    }

    pub fn size(&self) -> usize {
        self.layers.iter().map(VertexSet::len).sum()
    }
}

/// An induced subgraph together with the mapping from its local ids back to
/// the ids of the graph it was induced from. Certificates and witnesses are
/// always expressed in root-graph ids, so anything computed on the local
/// graph must be mapped through `back` before leaving this view.
pub struct Subgraph {
    pub graph: Graph,
    pub back: Vec<u32>,
}

impl Subgraph {
    pub fn to_parent(&self, local: u32) -> u32 {
        self.back[local as usize]
    }

    pub fn parent_vertices(&self) -> Vec<u32> {
        self.back.clone()
    }

    pub fn map_path(&self, path: &[u32]) -> Vec<u32> {
        path.iter().map(|&v| self.to_parent(v)).collect()
    }
}

// ---------------------------------------------------------------------------
// Set-restricted helpers shared by the extraction and pipeline code
// ---------------------------------------------------------------------------

/// Average degree of the subgraph induced on `s`, as (edges, vertices).
pub fn density_in(g: &Graph, s: &VertexSet) -> (u64, u64) {
    (g.edges_within(s) as u64, s.len() as u64)
}

/// Min-degree peel restricted to `s`: repeatedly delete a minimum-degree
/// vertex (smallest id on ties) while some vertex has degree strictly below
/// half the current average degree. Each deletion can only raise the average
/// degree, so the result satisfies both `d >= d(start)` and `min-deg >= d/2`.
pub fn peel_to_half_min_degree(g: &Graph, s: &VertexSet) -> VertexSet {
    let mut set = s.clone();
    let mut deg: Vec<usize> = (0..g.n() as u32)
        .map(|v| if set.contains(v) { g.degree_in(v, &set) } else { 0 })
        .collect();
    let mut e: u64 = set.iter().map(|v| deg[v as usize] as u64).sum::<u64>() / 2;
    loop {
        let n = set.len() as u64;
        if n == 0 {
            return set;
        }
        // deg(v) < d/2  <=>  deg(v) * n < e
        let worst = set
            .iter()
            .filter(|&v| (deg[v as usize] as u64) * n < e)
            .min_by_key(|&v| (deg[v as usize], v));
        match worst {
            None => return set,
            Some(v) => {
                set.remove(v);
                e -= deg[v as usize] as u64;
                for &w in g.neighbors(v) {
                    if set.contains(w) {
                        deg[w as usize] -= 1;
                    }
                }
                deg[v as usize] = 0;
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

/// Blow-up: every vertex becomes an independent set of `factor` copies and
/// every edge becomes a complete bipartite graph between the copy classes.
pub fn blowup(g: &Graph, factor: usize) -> Graph {
    let f = factor as u32;
    let mut edges = Vec::with_capacity(g.edge_count() * factor * factor);
    for (u, v) in g.edges() {
        for i in 0..f {
            for j in 0..f {
                edges.push((u * f + i, v * f + j));
            }
        }
    }
    Graph::from_edges(g.n() * factor, edges).expect("blow-up of a simple graph is simple")
}

/// Graph family specification. Parsing grammar (one token, no commas, so
/// lists of specs can be comma-separated):
///
/// - `complete:N`
/// - `bipartite:AxB`
/// - `cycle:N`
/// - `path:N`
/// - `regular:NxD@SEED`
/// - `grid:RxC`
/// - `cube:DIM`
/// - `blowup:Fx(SPEC)`
/// - `union:(SPEC)+(SPEC)+...`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Family {
    Complete { n: usize },
    CompleteBipartite { a: usize, b: usize },
    Cycle { n: usize },
    Path { n: usize },
    RandomRegular { n: usize, d: usize, seed: u64 },
    Grid { rows: usize, cols: usize },
    Hypercube { dim: usize },
    Blowup { factor: usize, base: Box<Family> },
    DisjointUnion(Vec<Family>),
}

impl Family {
    /// Replaces every embedded generation seed; used by the bench harness so
    /// one family spec can be re-run per row seed.
    pub fn with_seed(&self, seed: u64) -> Family {
        match self {
            Family::RandomRegular { n, d, .. } => Family::RandomRegular { n: *n, d: *d, seed },
            Family::Blowup { factor, base } => Family::Blowup {
                factor: *factor,
                base: Box::new(base.with_seed(seed)),
            },
            Family::DisjointUnion(parts) => Family::DisjointUnion(
                parts.iter().map(|p| p.with_seed(seed)).collect(),
            ),
            other => other.clone(),
        }
    }

    pub fn generate(&self) -> Result<Graph, GraphError> {
        match self {
            Family::Complete { n } => {
                let n = *n;
                let edges = (0..n as u32)
                    .flat_map(|u| (u + 1..n as u32).map(move |v| (u, v)));
                Graph::from_edges(n, edges)
            }
            Family::CompleteBipartite { a, b } => {
                let (a, b) = (*a, *b);
                let edges = (0..a as u32)
                    .flat_map(|u| (0..b as u32).map(move |v| (u, a as u32 + v)));
                Graph::from_edges(a + b, edges)
            }
            Family::Cycle { n } => {
                let n = *n;
                if n < 3 {
                    return Err(GraphError::InfeasibleFamily(format!(
                        "cycle needs n >= 3, got {n}"
                    )));
                }
                let edges = (0..n as u32).map(|u| (u, (u + 1) % n as u32));
                let edges: Vec<_> = edges.map(|(u, v)| (u.min(v), u.max(v))).collect();
                Graph::from_edges(n, edges)
            }
            Family::Path { n } => {
                let n = *n;
                let edges = (1..n as u32).map(|v| (v - 1, v));
                Graph::from_edges(n, edges)
            }
            Family::RandomRegular { n, d, seed } => random_regular(*n, *d, *seed),
            Family::Grid { rows, cols } => {
                let (r, c) = (*rows, *cols);
                let id = |i: usize, j: usize| (i * c + j) as u32;
                let mut edges = Vec::new();
                for i in 0..r {
                    for j in 0..c {
                        if j + 1 < c {
                            edges.push((id(i, j), id(i, j + 1)));
                        }
                        if i + 1 < r {
                            edges.push((id(i, j), id(i + 1, j)));
                        }
                    }
                }
                Graph::from_edges(r * c, edges)
            }
            Family::Hypercube { dim } => {
                let dim = *dim;
                if dim > 20 {
                    return Err(GraphError::InfeasibleFamily(format!(
                        "hypercube dimension {dim} too large"
                    )));
                }
                let n = 1usize << dim;
                let mut edges = Vec::new();
                for u in 0..n as u32 {
                    for b in 0..dim {
                        let v = u ^ (1 << b);
                        if u < v {
                            edges.push((u, v));
                        }
                    }
                }
                Graph::from_edges(n, edges)
            }
            Family::Blowup { factor, base } => {
                if *factor == 0 {
                    return Err(GraphError::InfeasibleFamily("blow-up factor 0".into()));
                }
                Ok(blowup(&base.generate()?, *factor))
            }
            Family::DisjointUnion(parts) => {
                let mut edges = Vec::new();
                let mut offset = 0u32;
                let mut n = 0usize;
                for part in parts {
                    let g = part.generate()?;
                    edges.extend(g.edges().map(|(u, v)| (u + offset, v + offset)));
                    offset += g.n() as u32;
                    n += g.n();
                }
                Graph::from_edges(n, edges)
            }
        }
    }
}

/// Random d-regular graph via the configuration model: pair up d stubs per
/// vertex and reshuffle until the pairing is simple. Deterministic per seed.
fn random_regular(n: usize, d: usize, seed: u64) -> Result<Graph, GraphError> {
    if d >= n {
        return Err(GraphError::InfeasibleFamily(format!(
            "regular degree {d} >= order {n}"
        )));
    }
    if n * d % 2 != 0 {
        return Err(GraphError::InfeasibleFamily(format!(
            "odd stub count n*d = {}",
            n * d
        )));
    }
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut stubs: Vec<u32> = (0..n as u32).flat_map(|v| std::iter::repeat(v).take(d)).collect();
    for _ in 0..1000 {
        stubs.shuffle(&mut rng);
        let mut seen = BTreeSet::new();
        let mut ok = true;
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                ok = false;
                break;
            }
        }
        if ok {
            let edges = stubs.chunks(2).map(|p| (p[0], p[1]));
            return Graph::from_edges(n, edges);
        }
    }
    Err(GraphError::InfeasibleFamily(format!(
        "no simple {d}-regular pairing found for n={n} after 1000 shuffles"
    )))
}

impl FromStr for Family {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |msg: &str| GraphError::InfeasibleFamily(format!("bad family spec {s:?}: {msg}"));
        let (name, rest) = s.split_once(':').ok_or_else(|| bad("missing ':'"))?;
        let num = |t: &str| t.parse::<usize>().map_err(|_| bad("bad number"));
        match name {
            "complete" => Ok(Family::Complete { n: num(rest)? }),
            "bipartite" => {
                let (a, b) = rest.split_once('x').ok_or_else(|| bad("want AxB"))?;
                Ok(Family::CompleteBipartite { a: num(a)?, b: num(b)? })
            }
            "cycle" => Ok(Family::Cycle { n: num(rest)? }),
            "path" => Ok(Family::Path { n: num(rest)? }),
            "regular" => {
                let (nd, seed) = rest.split_once('@').ok_or_else(|| bad("want NxD@SEED"))?;
                let (n, d) = nd.split_once('x').ok_or_else(|| bad("want NxD@SEED"))?;
                let seed = seed.parse::<u64>().map_err(|_| bad("bad seed"))?;
                Ok(Family::RandomRegular { n: num(n)?, d: num(d)?, seed })
            }
            "grid" => {
                let (r, c) = rest.split_once('x').ok_or_else(|| bad("want RxC"))?;
                Ok(Family::Grid { rows: num(r)?, cols: num(c)? })
            }
            "cube" => Ok(Family::Hypercube { dim: num(rest)? }),
            "blowup" => {
                let (f, base) = rest.split_once('x').ok_or_else(|| bad("want Fx(SPEC)"))?;
                let base = base
                    .strip_prefix('(')
                    .and_then(|b| b.strip_suffix(')'))
                    .ok_or_else(|| bad("base spec must be parenthesized"))?;
                Ok(Family::Blowup {
                    factor: num(f)?,
                    base: Box::new(base.parse()?),
                })
            }
            "union" => {
                let mut parts = Vec::new();
                for part in rest.split('+') {
                    let inner = part
                        .strip_prefix('(')
                        .and_then(|p| p.strip_suffix(')'))
                        .ok_or_else(|| bad("union parts must be parenthesized"))?;
                    parts.push(inner.parse()?);
                }
                Ok(Family::DisjointUnion(parts))
            }
            _ => Err(bad("unknown family")),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Complete { n } => write!(f, "complete:{n}"),
            Family::CompleteBipartite { a, b } => write!(f, "bipartite:{a}x{b}"),
            Family::Cycle { n } => write!(f, "cycle:{n}"),
            Family::Path { n } => write!(f, "path:{n}"),
            Family::RandomRegular { n, d, seed } => write!(f, "regular:{n}x{d}@{seed}"),
            Family::Grid { rows, cols } => write!(f, "grid:{rows}x{cols}"),
            Family::Hypercube { dim } => write!(f, "cube:{dim}"),
            Family::Blowup { factor, base } => write!(f, "blowup:{factor}x({base})"),
            Family::DisjointUnion(parts) => {
                write!(f, "union:")?;
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        write!(f, "+")?;
                    }
                    write!(f, "({p})")?;
                }
                Ok(())
            }
        }
    }
}

// ---------------------------------------------------------------------------
// File IO
// ---------------------------------------------------------------------------

/// Parses the edge-list format: first line is n, then one `u v` line per
/// edge with 0-based ids and u < v.
pub fn parse_graph(text: &str) -> Result<Graph, GraphError> {
    let mut lines = text.lines().enumerate();
    let (first_no, first) = lines
        .next()
        .ok_or(GraphError::Parse { line: 1, kind: "empty file".into() })?;
    let n: usize = first.trim().parse().map_err(|_| GraphError::Parse {
        line: first_no + 1,
        kind: format!("expected vertex count, got {first:?}"),
    })?;
    let mut edges = Vec::new();
    for (no, line) in lines {
        let line_no = no + 1;
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace();
        let (u, v) = match (it.next(), it.next(), it.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => {
                return Err(GraphError::Parse {
                    line: line_no,
                    kind: format!("expected 'u v', got {line:?}"),
                })
            }
        };
        let parse = |t: &str| {
            t.parse::<u32>().map_err(|_| GraphError::Parse {
                line: line_no,
                kind: format!("bad vertex id {t:?}"),
            })
        };
        let (u, v) = (parse(u)?, parse(v)?);
        if u == v {
            return Err(GraphError::Parse { line: line_no, kind: format!("self-loop {u} {v}") });
        }
        if u > v {
            return Err(GraphError::Parse {
                line: line_no,
                kind: format!("edges must be written u < v, got {u} {v}"),
            });
        }
        if u as usize >= n || v as usize >= n {
            return Err(GraphError::Parse {
                line: line_no,
                kind: format!("vertex out of range for n={n}: {u} {v}"),
            });
        }
        if edges.contains(&(u, v)) {
            return Err(GraphError::Parse { line: line_no, kind: format!("duplicate edge {u} {v}") });
        }
        edges.push((u, v));
    }
    Graph::from_edges(n, edges)
}

pub fn read_graph<P: AsRef<Path>>(path: P) -> Result<Graph, GraphError> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn format_graph(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn write_graph<P: AsRef<Path>>(g: &Graph, path: P) -> Result<(), GraphError> {
    std::fs::write(path, format_graph(g))?;
    Ok(())
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    n: usize,
    edges: Vec<(u32, u32)>,
}

/// JSON form used by the CLI `--json` flag: `{n, edges: [[u, v], ...]}`.
pub fn graph_to_json(g: &Graph) -> serde_json::Value {
    serde_json::to_value(GraphJson { n: g.n(), edges: g.edges().collect() })
        .expect("graph serializes")
}

pub fn graph_from_json(value: &serde_json::Value) -> Result<Graph, GraphError> {
    let gj: GraphJson = serde_json::from_value(value.clone()).map_err(|e| GraphError::Parse {
        line: 0,
        kind: format!("bad graph json: {e}"),
    })?;
    Graph::from_edges(gj.n, gj.edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn petersen() -> Graph {
        // Outer 5-cycle 0..4, inner pentagram 5..9, spokes i - i+5.
        let mut edges = vec![];
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
            edges.push((i, i + 5));
        }
        let edges: Vec<_> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        Graph::from_edges(10, edges).unwrap()
    }

    #[test]
    fn average_degree_examples() {
        let k4 = Family::Complete { n: 4 }.generate().unwrap();
        assert_eq!(k4.average_degree().unwrap(), Frac::new(3, 1));
        let c6 = Family::Cycle { n: 6 }.generate().unwrap();
        assert_eq!(c6.average_degree().unwrap(), Frac::new(2, 1));
        let p = petersen();
        assert_eq!(p.edge_count(), 15);
        assert_eq!(p.average_degree().unwrap(), Frac::new(3, 1));
        assert!(matches!(
            Graph::from_edges(0, []).unwrap().average_degree(),
            Err(GraphError::EmptyGraph)
        ));
    }

    #[test]
    fn ball_on_path_and_with_cut_vertex() {
        let p5 = Family::Path { n: 5 }.generate().unwrap();
        let seed = VertexSet::from_iter(5, [0]);
        let ball = p5.ball(&seed, 2, &VertexSet::empty(5));
        assert_eq!(ball.layers()[0].to_vec(), vec![0]);
        assert_eq!(ball.layers()[1].to_vec(), vec![1]);
        assert_eq!(ball.layers()[2].to_vec(), vec![2]);

        let cut = VertexSet::from_iter(5, [1]);
        let ball = p5.ball(&seed, 2, &cut);
        assert_eq!(ball.layers()[1].len(), 0);
        assert_eq!(ball.layers()[2].len(), 0);
    }

    #[test]
    fn ball_layers_satisfy_neighbor_recurrence() {
        // layer(i+1) = N(layer i) \ layer(i-1), and every vertex of layer i+1
        // has a neighbor in layer i.
        let g = petersen();
        let seed = VertexSet::from_iter(10, [0]);
        let ball = g.ball(&seed, 3, &VertexSet::empty(10));
        for i in 1..ball.layers().len() {
            let prev = &ball.layers()[i - 1];
            let mut expect = g.neighborhood(prev);
            if i >= 2 {
                expect.difference_with(&ball.layers()[i - 2]);
            }
            assert_eq!(&expect, &ball.layers()[i], "layer {i} mismatch");
            for v in ball.layers()[i].iter() {
                assert!(g.neighbors(v).iter().any(|&u| prev.contains(u)));
            }
        }
    }

    #[test]
    fn petersen_radius_two_ball_covers_graph() {
        let g = petersen();
        for v in 0..10 {
            let seed = VertexSet::from_iter(10, [v]);
            let ball = g.ball(&seed, 2, &VertexSet::empty(10));
            assert_eq!(ball.size(), 10);
        }
    }

    #[test]
    fn ball_monotone_in_radius() {
        let g = petersen();
        let seed = VertexSet::from_iter(10, [3]);
        let none = VertexSet::empty(10);
        let b1 = g.ball(&seed, 1, &none).vertices();
        let b2 = g.ball(&seed, 2, &none).vertices();
        assert!(b1.is_subset_of(&b2));
    }

    #[test]
    fn induced_examples() {
        let k5 = Family::Complete { n: 5 }.generate().unwrap();
        let tri = k5.induced(&VertexSet::from_iter(5, [1, 3, 4]));
        assert_eq!(tri.graph.n(), 3);
        assert_eq!(tri.graph.edge_count(), 3);
        assert_eq!(tri.parent_vertices(), vec![1, 3, 4]);

        let c6 = Family::Cycle { n: 6 }.generate().unwrap();
        let ind = c6.induced(&VertexSet::from_iter(6, [0, 2, 4]));
        assert_eq!(ind.graph.edge_count(), 0);

        let k44 = Family::CompleteBipartite { a: 4, b: 4 }.generate().unwrap();
        let c4 = k44.induced(&VertexSet::from_iter(8, [0, 1, 4, 5]));
        assert_eq!(c4.graph.edge_count(), 4);
        assert!(c4.graph.adj.iter().all(|l| l.len() == 2));
    }

    #[test]
    fn induced_idempotent() {
        let g = petersen();
        let s = VertexSet::from_iter(10, [0, 1, 2, 5, 7]);
        let once = g.induced(&s);
        let twice = once.graph.induced(&VertexSet::full(once.graph.n()));
        assert_eq!(once.graph.n(), twice.graph.n());
        assert_eq!(
            once.graph.edges().collect::<Vec<_>>(),
            twice.graph.edges().collect::<Vec<_>>()
        );
    }

    #[test]
    fn generator_examples() {
        let c4ish = Family::CompleteBipartite { a: 2, b: 2 }.generate().unwrap();
        assert_eq!(c4ish.n(), 4);
        assert_eq!(c4ish.edge_count(), 4);
        assert!(c4ish.adj.iter().all(|l| l.len() == 2));

        let octahedron = blowup(&Family::Complete { n: 3 }.generate().unwrap(), 2);
        assert_eq!(octahedron.n(), 6);
        assert_eq!(octahedron.edge_count(), 12);

        let rr = Family::RandomRegular { n: 20, d: 3, seed: 7 }.generate().unwrap();
        assert_eq!(rr.n(), 20);
        assert!(rr.adj.iter().all(|l| l.len() == 3));
        // determinism
        let rr2 = Family::RandomRegular { n: 20, d: 3, seed: 7 }.generate().unwrap();
        assert_eq!(rr.edges().collect::<Vec<_>>(), rr2.edges().collect::<Vec<_>>());

        assert!(Family::RandomRegular { n: 5, d: 3, seed: 0 }.generate().is_err());
        assert!(Family::RandomRegular { n: 4, d: 5, seed: 0 }.generate().is_err());
    }

    #[test]
    fn blowup_counts() {
        for (fam, f) in [
            (Family::Cycle { n: 5 }, 3),
            (Family::Complete { n: 4 }, 2),
            (Family::Path { n: 6 }, 4),
        ] {
            let g = fam.generate().unwrap();
            let b = blowup(&g, f);
            assert_eq!(b.n(), g.n() * f);
            assert_eq!(b.edge_count(), g.edge_count() * f * f);
        }
    }

    #[test]
    fn degree_sum_is_twice_edges() {
        for fam in [
            Family::Complete { n: 7 },
            Family::Grid { rows: 3, cols: 4 },
            Family::Hypercube { dim: 4 },
            Family::RandomRegular { n: 16, d: 4, seed: 3 },
        ] {
            let g = fam.generate().unwrap();
            let sum: usize = (0..g.n() as u32).map(|v| g.degree(v)).sum();
            assert_eq!(sum, 2 * g.edge_count());
        }
    }

    #[test]
    fn parse_and_roundtrip() {
        let g = parse_graph("3\n0 1\n1 2\n").unwrap();
        assert_eq!(g.n(), 3);
        assert_eq!(g.edge_count(), 2);

        let p = petersen();
        let text = format_graph(&p);
        let back = parse_graph(&text).unwrap();
        assert_eq!(back.n(), p.n());
        assert_eq!(back.edges().collect::<Vec<_>>(), p.edges().collect::<Vec<_>>());

        match parse_graph("2\n0 0\n") {
            Err(GraphError::Parse { line, kind }) => {
                assert_eq!(line, 2);
                assert!(kind.contains("self-loop"));
            }
            other => panic!("expected self-loop error, got {other:?}"),
        }
        assert!(parse_graph("2\n1 0\n").is_err());
        assert!(parse_graph("2\n0 1\n0 1\n").is_err());
    }

    #[test]
    fn json_roundtrip() {
        let g = petersen();
        let j = graph_to_json(&g);
        let back = graph_from_json(&j).unwrap();
        assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
    }

    #[test]
    fn family_spec_parsing_roundtrip() {
        for spec in [
            "complete:10",
            "bipartite:3x4",
            "cycle:12",
            "path:5",
            "regular:20x3@7",
            "grid:3x4",
            "cube:5",
            "blowup:4x(regular:24x3@1)",
            "union:(complete:8)+(complete:4)",
        ] {
            let fam: Family = spec.parse().unwrap();
            assert_eq!(fam.to_string(), spec);
            fam.generate().unwrap();
        }
        assert!("nonsense:3".parse::<Family>().is_err());
        assert!("complete".parse::<Family>().is_err());
    }

    #[test]
    fn peel_enforces_half_min_degree() {
        // Clique with a pendant path: the peel must strip the path.
        let mut edges: Vec<(u32, u32)> = (0..10u32)
            .flat_map(|u| (u + 1..10).map(move |v| (u, v)))
            .collect();
        for i in 10..20u32 {
            edges.push((i - 1, i));
        }
        let g = Graph::from_edges(20, edges).unwrap();
        let peeled = peel_to_half_min_degree(&g, &VertexSet::full(20));
        assert_eq!(peeled.to_vec(), (0..10).collect::<Vec<u32>>());
    }

    #[test]
    fn vertexset_algebra() {
        let a = VertexSet::from_iter(100, [1, 5, 64, 99]);
        let b = VertexSet::from_iter(100, [5, 64, 70]);
        assert_eq!(a.union(&b).len(), 5);
        assert_eq!(a.intersection(&b).to_vec(), vec![5, 64]);
        assert_eq!(a.difference(&b).to_vec(), vec![1, 99]);
        assert!(!a.is_disjoint(&b));
        assert!(a.intersection(&b).is_subset_of(&a));
        assert_eq!(a.complement().len(), 96);
    }
}

//! Star-of-stars structures (units and webs) with their exterior/interior
//! partitions, and the clique-subdivision certificate with an independent
//! verifier and a brute-force search oracle.
//!
//! Validation never trusts construction history: every path is re-walked
//! against the root graph's edges, and the certificate format refers to
//! root-graph ids only.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicU64, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexSet};

#[derive(Debug, Error)]
pub enum StructureError {
    #[error("bad certificate json: {0}")]
    BadJson(String),
}

/// A star: center plus its leaf set (leaves adjacent to the center).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Star {
    pub center: u32,
    pub leaves: Vec<u32>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitParams {
    /// Number of branches.
    pub h1: usize,
    /// Leaves per pendant star.
    pub h2: usize,
    /// Maximum branch length (edges).
    pub h3: usize,
}

/// A unit: a core, h1 internally disjoint branches of length at most h3 from
/// the core to distinct tips, and a pendant h2-leaf star at each tip whose
/// leaves avoid every branch vertex. Exterior = the leaves; interior = the
/// rest.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Unit {
    pub core: u32,
    pub params: UnitParams,
    /// branches[i] runs from the core to stars[i].center.
    pub branches: Vec<Vec<u32>>,
    pub stars: Vec<Star>,
}

impl Unit {
    pub fn exterior(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.stars.iter().flat_map(|s| s.leaves.iter().copied()).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn vertices(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .branches
            .iter()
            .flatten()
            .copied()
            .chain(self.stars.iter().flat_map(|s| {
                std::iter::once(s.center).chain(s.leaves.iter().copied())
            }))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn interior(&self) -> Vec<u32> {
        let ext = self.exterior();
        self.vertices().into_iter().filter(|v| ext.binary_search(v).is_err()).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WebParams {
    /// Number of web branches (= units).
    pub h4: usize,
    /// Maximum web-branch length (edges).
    pub h5: usize,
    pub unit: UnitParams,
}

/// A web: a core with h4 internally disjoint branches of length at most h5,
/// each ending at the core of its own unit; the units are pairwise disjoint
/// and (except for their cores) avoid every branch vertex. Center = branch
/// vertices, exterior = union of unit exteriors, interior = everything else.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Web {
    pub core: u32,
    pub params: WebParams,
    /// branches[i] runs from the web core to units[i].core.
    pub branches: Vec<Vec<u32>>,
    pub units: Vec<Unit>,
}

impl Web {
    pub fn center(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.branches.iter().flatten().copied().collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn exterior(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self.units.iter().flat_map(Unit::exterior).collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn vertices(&self) -> Vec<u32> {
        let mut out: Vec<u32> = self
            .branches
            .iter()
            .flatten()
            .copied()
            .chain(self.units.iter().flat_map(|u| u.vertices()))
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn interior(&self) -> Vec<u32> {
        let ext = self.exterior();
        self.vertices().into_iter().filter(|v| ext.binary_search(v).is_err()).collect()
    }
}

/// First violated invariant, with the vertices that witness the violation.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Violation {
    pub rule: String,
    pub vertices: Vec<u32>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ValidationReport {
    pub pass: bool,
    pub violation: Option<Violation>,
}

impl ValidationReport {
    fn ok() -> Self {
        ValidationReport { pass: true, violation: None }
    }
    fn fail(rule: &str, vertices: Vec<u32>) -> Self {
        ValidationReport {
            pass: false,
            violation: Some(Violation { rule: rule.to_string(), vertices }),
        }
    }
}

/// Checks every unit invariant against the graph. Reports the first
/// violation found rather than all of them.
pub fn validate_unit(g: &Graph, unit: &Unit) -> ValidationReport {
    let p = unit.params;
    if p.h1 == 0 {
        return ValidationReport::fail("unit must have at least one branch", vec![]);
    }
    if unit.branches.len() != p.h1 || unit.stars.len() != p.h1 {
        return ValidationReport::fail(
            "branch/star counts disagree with declared h1",
            vec![unit.core],
        );
    }
    let mut tips = Vec::new();
    for (i, path) in unit.branches.iter().enumerate() {
        if path.len() < 2 {
            return ValidationReport::fail("branch must have length >= 1", path.clone());
        }
        if path.len() - 1 > p.h3 {
            return ValidationReport::fail("branch longer than h3", path.clone());
        }
        if path[0] != unit.core {
            return ValidationReport::fail("branch does not start at the core", path.clone());
        }
        if !g.is_simple_path(path) {
            return ValidationReport::fail("branch is not a simple path in the graph", path.clone());
        }
        if *path.last().unwrap() != unit.stars[i].center {
            return ValidationReport::fail("branch does not end at its star center", path.clone());
        }
        tips.push(*path.last().unwrap());
    }
    let mut sorted_tips = tips.clone();
    sorted_tips.sort_unstable();
    sorted_tips.dedup();
    if sorted_tips.len() != tips.len() || tips.contains(&unit.core) {
        return ValidationReport::fail("core and branch tips must be distinct", tips);
    }
    // branches pairwise share only the core
    let mut seen = BTreeMap::new();
    for (i, path) in unit.branches.iter().enumerate() {
        for &v in path {
            if v == unit.core {
                continue;
            }
            if let Some(&j) = seen.get(&v) {
                if j != i {
                    return ValidationReport::fail("branches share a non-core vertex", vec![v]);
                }
            }
            seen.insert(v, i);
        }
    }
    // stars: exact leaf counts, real edges, pairwise disjoint, off the branches
    let branch_vertices: VertexSet =
        VertexSet::from_iter(g.n(), unit.branches.iter().flatten().copied());
    let mut star_used = VertexSet::empty(g.n());
    for star in &unit.stars {
        if star.leaves.len() != p.h2 {
            return ValidationReport::fail("pendant star has wrong leaf count", vec![star.center]);
        }
        if !star_used.insert(star.center) {
            return ValidationReport::fail("stars are not vertex-disjoint", vec![star.center]);
        }
        for &leaf in &star.leaves {
            if !g.has_edge(star.center, leaf) {
                return ValidationReport::fail("star leaf not adjacent to center", vec![star.center, leaf]);
            }
            if !star_used.insert(leaf) {
                return ValidationReport::fail("stars are not vertex-disjoint", vec![leaf]);
            }
            if branch_vertices.contains(leaf) {
                return ValidationReport::fail("star leaf lies on a branch", vec![leaf]);
            }
        }
    }
    ValidationReport::ok()
}

/// Checks every web invariant, including the invariants of each unit.
pub fn validate_web(g: &Graph, web: &Web) -> ValidationReport {
    let p = web.params;
    if p.h4 == 0 {
        return ValidationReport::fail("web must have at least one branch", vec![]);
    }
    if web.branches.len() != p.h4 || web.units.len() != p.h4 {
        return ValidationReport::fail("branch/unit counts disagree with declared h4", vec![web.core]);
    }
    for (i, path) in web.branches.iter().enumerate() {
        if path.len() < 2 {
            return ValidationReport::fail("web branch must have length >= 1", path.clone());
        }
        if path.len() - 1 > p.h5 {
            return ValidationReport::fail("web branch longer than h5", path.clone());
        }
        if path[0] != web.core {
            return ValidationReport::fail("web branch does not start at the core", path.clone());
        }
        if !g.is_simple_path(path) {
            return ValidationReport::fail("web branch is not a simple path", path.clone());
        }
        if *path.last().unwrap() != web.units[i].core {
            return ValidationReport::fail("web branch does not end at its unit core", path.clone());
        }
    }
    // branches pairwise share only the web core
    let mut seen = BTreeMap::new();
    for (i, path) in web.branches.iter().enumerate() {
        for &v in path {
            if v == web.core {
                continue;
            }
            if let Some(&j) = seen.get(&v) {
                if j != i {
                    return ValidationReport::fail("web branches share a non-core vertex", vec![v]);
                }
            }
            seen.insert(v, i);
        }
    }
    // units pairwise disjoint; unit vertices (except the core) off the branches
    let branch_vertices: VertexSet =
        VertexSet::from_iter(g.n(), web.branches.iter().flatten().copied());
    let mut unit_used = VertexSet::empty(g.n());
    for unit in &web.units {
        let rep = validate_unit(g, unit);
        if !rep.pass {
            return rep;
        }
        for v in unit.vertices() {
            if !unit_used.insert(v) {
                return ValidationReport::fail("units are not vertex-disjoint", vec![v]);
            }
            if v != unit.core && branch_vertices.contains(v) {
                return ValidationReport::fail(
                    "unit vertex (non-core) lies on a web branch",
                    vec![v],
                );
            }
        }
        if web.params.unit != unit.params {
            return ValidationReport::fail("unit params disagree with web params", vec![unit.core]);
        }
    }
    ValidationReport::ok()
}

// ---------------------------------------------------------------------------
// Subdivision certificates
// ---------------------------------------------------------------------------

/// A claimed clique subdivision: t branch vertices and one path per pair,
/// internally disjoint from each other and from all branch vertices. Paths
/// are stored as explicit vertex sequences in root-graph ids so that
/// verification is independent of how the certificate was built.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionCertificate {
    pub t: usize,
    pub branch_vertices: Vec<u32>,
    /// Keyed by (i, j) with i < j, indices into `branch_vertices`.
    pub paths: BTreeMap<(usize, usize), Vec<u32>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CertificateReport {
    pub pass: bool,
    pub violation: Option<String>,
    pub max_path_len: usize,
    pub vertices_used: usize,
}

/// Verifies a certificate against the graph: pair coverage, endpoint
/// correctness, edge validity, and internal disjointness. Also reports the
/// longest path and the total number of distinct vertices used.
pub fn verify_certificate(g: &Graph, cert: &SubdivisionCertificate) -> CertificateReport {
    let fail = |msg: String| CertificateReport {
        pass: false,
        violation: Some(msg),
        max_path_len: 0,
        vertices_used: 0,
    };
    let t = cert.t;
    if t == 0 {
        return fail("certificate must have t >= 1".into());
    }
    if cert.branch_vertices.len() != t {
        return fail(format!(
            "t = {t} but {} branch vertices listed",
            cert.branch_vertices.len()
        ));
    }
    let mut sorted = cert.branch_vertices.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != t {
        return fail("branch vertices are not distinct".into());
    }
    if cert.branch_vertices.iter().any(|&v| v as usize >= g.n()) {
        return fail("branch vertex out of range".into());
    }
    if cert.paths.len() != t * (t - 1) / 2 {
        return fail(format!(
            "expected {} paths, found {}",
            t * (t - 1) / 2,
            cert.paths.len()
        ));
    }
    let branch_set = VertexSet::from_iter(g.n(), cert.branch_vertices.iter().copied());
    let mut internals_used = VertexSet::empty(g.n());
    let mut max_path_len = 0;
    let mut vertices_used = VertexSet::from_iter(g.n(), cert.branch_vertices.iter().copied());
    for i in 0..t {
        for j in i + 1..t {
            let Some(path) = cert.paths.get(&(i, j)) else {
                return fail(format!("missing path for pair ({i}, {j})"));
            };
            if path.len() < 2 {
                return fail(format!("path ({i}, {j}) has fewer than two vertices"));
            }
            if path[0] != cert.branch_vertices[i] || *path.last().unwrap() != cert.branch_vertices[j]
            {
                return fail(format!("path ({i}, {j}) endpoints do not match its branch vertices"));
            }
            if !g.is_simple_path(path) {
                return fail(format!("path ({i}, {j}) is not a simple path of graph edges"));
            }
            for &v in &path[1..path.len() - 1] {
                if branch_set.contains(v) {
                    return fail(format!("path ({i}, {j}) passes through branch vertex {v}"));
                }
                if !internals_used.insert(v) {
                    return fail(format!("internal vertex {v} used by more than one path"));
                }
                vertices_used.insert(v);
            }
            max_path_len = max_path_len.max(path.len() - 1);
        }
    }
    CertificateReport {
        pass: true,
        violation: None,
        max_path_len,
        vertices_used: vertices_used.len(),
    }
}

// Canonical JSON: branch vertices sorted ascending, pair keys "i-j" with
// i < j, so equal certificates serialize byte-identically.

#[derive(Serialize, Deserialize)]
struct CertJson {
    t: usize,
    branch: Vec<u32>,
    paths: BTreeMap<String, Vec<u32>>,
}

pub fn certificate_to_json(cert: &SubdivisionCertificate) -> serde_json::Value {
    let c = canonicalize(cert);
    let paths = c
        .paths
        .iter()
        .map(|(&(i, j), p)| (format!("{i}-{j}"), p.clone()))
        .collect();
    serde_json::to_value(CertJson { t: c.t, branch: c.branch_vertices, paths })
        .expect("certificate serializes")
}

pub fn certificate_from_json(
    value: &serde_json::Value,
) -> Result<SubdivisionCertificate, StructureError> {
    let cj: CertJson = serde_json::from_value(value.clone())
        .map_err(|e| StructureError::BadJson(e.to_string()))?;
    let mut paths = BTreeMap::new();
    for (key, path) in cj.paths {
        let (i, j) = key
            .split_once('-')
            .ok_or_else(|| StructureError::BadJson(format!("bad pair key {key:?}")))?;
        let i: usize = i.parse().map_err(|_| StructureError::BadJson(format!("bad pair key {key:?}")))?;
        let j: usize = j.parse().map_err(|_| StructureError::BadJson(format!("bad pair key {key:?}")))?;
        if i >= j {
            return Err(StructureError::BadJson(format!("pair key {key:?} must have i < j")));
        }
        paths.insert((i, j), path);
    }
    Ok(SubdivisionCertificate { t: cj.t, branch_vertices: cj.branch, paths })
}

/// Reindexes so the branch vertices are ascending and pair keys follow.
pub fn canonicalize(cert: &SubdivisionCertificate) -> SubdivisionCertificate {
    let mut order: Vec<usize> = (0..cert.branch_vertices.len()).collect();
    order.sort_by_key(|&i| cert.branch_vertices[i]);
    let mut rank = vec![0usize; order.len()];
    for (new, &old) in order.iter().enumerate() {
        rank[old] = new;
    }
    let branch_vertices: Vec<u32> = order.iter().map(|&i| cert.branch_vertices[i]).collect();
    let mut paths = BTreeMap::new();
    for (&(i, j), path) in &cert.paths {
        let (a, b) = (rank[i], rank[j]);
        if a < b {
            paths.insert((a, b), path.clone());
        } else {
            let mut rev = path.clone();
            rev.reverse();
            paths.insert((b, a), rev);
        }
    }
    SubdivisionCertificate { t: cert.t, branch_vertices, paths }
}

// ---------------------------------------------------------------------------
// Brute-force search
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub enum SubdivisionSearch {
    Found(SubdivisionCertificate),
    /// The whole space was explored; no subdivision of the requested order.
    Exhausted,
    /// The expansion budget ran out before the space was covered.
    BudgetExceeded,
}

impl SubdivisionSearch {
    pub fn found(&self) -> Option<&SubdivisionCertificate> {
        match self {
            SubdivisionSearch::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Exhaustive backtracking search for a clique subdivision of order `t`:
/// every choice of branch vertices, with a DFS over path systems per choice.
/// Sound and complete within the expansion budget; parallel over branch-set
/// choices with the lexicographically first hit returned.
pub fn find_subdivision_bruteforce(g: &Graph, t: usize, budget: u64) -> SubdivisionSearch {
    if t == 0 || t > g.n() {
        return SubdivisionSearch::Exhausted;
    }
    if t == 1 {
        return SubdivisionSearch::Found(SubdivisionCertificate {
            t: 1,
            branch_vertices: vec![0],
            paths: BTreeMap::new(),
        });
    }
    let combos = combinations(g.n() as u32, t);
    let spent = AtomicU64::new(0);
    let hit = combos
        .par_iter()
        .find_first(|combo| route_all_pairs(g, combo, &spent, budget).is_some());
    match hit {
        Some(combo) => {
            let paths = route_all_pairs(g, combo, &AtomicU64::new(0), budget)
                .expect("re-running a successful route succeeds");
            SubdivisionSearch::Found(canonicalize(&SubdivisionCertificate {
                t,
                branch_vertices: combo.clone(),
                paths,
            }))
        }
        None if spent.load(Ordering::Relaxed) >= budget => SubdivisionSearch::BudgetExceeded,
        None => SubdivisionSearch::Exhausted,
    }
}

fn combinations(n: u32, t: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let verts: Vec<u32> = (0..n).collect();
    crate::expander::for_each_combination(&verts, t, &mut |c| {
        out.push(c.to_vec());
        true
    });
    out
}

/// DFS over the pair list, enumerating internally disjoint paths. Prunes a
/// partial assignment as soon as some remaining pair is disconnected in the
/// residual graph.
fn route_all_pairs(
    g: &Graph,
    branch: &[u32],
    spent: &AtomicU64,
    budget: u64,
) -> Option<BTreeMap<(usize, usize), Vec<u32>>> {
    let t = branch.len();
    let mut pairs = Vec::new();
    for i in 0..t {
        for j in i + 1..t {
            pairs.push((i, j));
        }
    }
    let branch_set = VertexSet::from_iter(g.n(), branch.iter().copied());
    let mut used = VertexSet::empty(g.n());
    let mut acc = BTreeMap::new();
    if dfs_pairs(g, branch, &branch_set, &pairs, 0, &mut used, &mut acc, spent, budget) {
        Some(acc)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn dfs_pairs(
    g: &Graph,
    branch: &[u32],
    branch_set: &VertexSet,
    pairs: &[(usize, usize)],
    idx: usize,
    used: &mut VertexSet,
    acc: &mut BTreeMap<(usize, usize), Vec<u32>>,
    spent: &AtomicU64,
    budget: u64,
) -> bool {
    if idx == pairs.len() {
        return true;
    }
    if spent.fetch_add(1, Ordering::Relaxed) >= budget {
        return false;
    }
    // Feasibility: every remaining pair must still be connectable ignoring
    // the other pairs (a sound necessary condition).
    for &(i, j) in &pairs[idx..] {
        if !reachable(g, branch[i], branch[j], branch_set, used) {
            return false;
        }
    }
    let (i, j) = pairs[idx];
    let (a, b) = (branch[i], branch[j]);
    // enumerate simple a-b paths, internals outside branch_set and used
    let mut path = vec![a];
    let mut on_path = VertexSet::empty(g.n());
    on_path.insert(a);
    enumerate_paths(g, a, b, branch_set, used, &mut path, &mut on_path, spent, budget, &mut |p| {
        for &v in &p[1..p.len() - 1] {
            used.insert(v);
        }
        acc.insert((i, j), p.to_vec());
        if dfs_pairs(g, branch, branch_set, pairs, idx + 1, used, acc, spent, budget) {
            true
        } else {
            for &v in &p[1..p.len() - 1] {
                used.remove(v);
            }
            acc.remove(&(i, j));
            false
        }
    })
}

fn reachable(g: &Graph, a: u32, b: u32, branch_set: &VertexSet, used: &VertexSet) -> bool {
    if a == b || g.has_edge(a, b) {
        return true;
    }
    let mut visited = VertexSet::empty(g.n());
    visited.insert(a);
    let mut frontier = vec![a];
    while let Some(u) = frontier.pop() {
        for &w in g.neighbors(u) {
            if w == b {
                return true;
            }
            // internals must avoid branch vertices and used vertices
            if !visited.contains(w) && !branch_set.contains(w) && !used.contains(w) {
                visited.insert(w);
                frontier.push(w);
            }
        }
    }
    false
}

/// Enumerates simple a-b paths whose internal vertices avoid branch and used
/// vertices, in neighbor-id order, invoking `accept` per path until it
/// returns true.
#[allow(clippy::too_many_arguments)]
fn enumerate_paths(
    g: &Graph,
    cur: u32,
    target: u32,
    branch_set: &VertexSet,
    used: &VertexSet,
    path: &mut Vec<u32>,
    on_path: &mut VertexSet,
    spent: &AtomicU64,
    budget: u64,
    accept: &mut impl FnMut(&[u32]) -> bool,
) -> bool {
    if spent.fetch_add(1, Ordering::Relaxed) >= budget {
        return false;
    }
    for &w in g.neighbors(cur) {
        if w == target {
            path.push(w);
            let done = accept(path);
            path.pop();
            if done {
                return true;
            }
            continue;
        }
        if on_path.contains(w) || branch_set.contains(w) || used.contains(w) {
            continue;
        }
        path.push(w);
        on_path.insert(w);
        let done =
            enumerate_paths(g, w, target, branch_set, used, path, on_path, spent, budget, accept);
        path.pop();
        on_path.remove(w);
        if done {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;

    /// Three-leg spider: core 0, tips 1..3, leaves 4..6. The smallest
    /// (3,1,1)-unit fixture.
    fn spider() -> (Graph, Unit) {
        let g = Graph::from_edges(7, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap();
        let unit = Unit {
            core: 0,
            params: UnitParams { h1: 3, h2: 1, h3: 1 },
            branches: vec![vec![0, 1], vec![0, 2], vec![0, 3]],
            stars: vec![
                Star { center: 1, leaves: vec![4] },
                Star { center: 2, leaves: vec![5] },
                Star { center: 3, leaves: vec![6] },
            ],
        };
        (g, unit)
    }

    #[test]
    fn spider_unit_validates() {
        let (g, unit) = spider();
        let rep = validate_unit(&g, &unit);
        assert!(rep.pass, "{:?}", rep.violation);
        assert_eq!(unit.exterior(), vec![4, 5, 6]);
        assert_eq!(unit.interior(), vec![0, 1, 2, 3]);
    }

    #[test]
    fn unit_partition_law() {
        let (_, unit) = spider();
        let ext = unit.exterior();
        let int = unit.interior();
        let mut all = ext.clone();
        all.extend(&int);
        all.sort_unstable();
        assert_eq!(all, unit.vertices());
        assert!(ext.iter().all(|v| int.binary_search(v).is_err()));
    }

    #[test]
    fn unit_shared_branch_vertex_fails() {
        // two branches forced through vertex 1
        let g = Graph::from_edges(7, [(0, 1), (1, 2), (1, 3), (2, 4), (3, 5), (0, 6)]).unwrap();
        let unit = Unit {
            core: 0,
            params: UnitParams { h1: 2, h2: 1, h3: 2 },
            branches: vec![vec![0, 1, 2], vec![0, 1, 3]],
            stars: vec![Star { center: 2, leaves: vec![4] }, Star { center: 3, leaves: vec![5] }],
        };
        let rep = validate_unit(&g, &unit);
        assert!(!rep.pass);
        assert!(rep.violation.unwrap().rule.contains("share"));
    }

    #[test]
    fn degenerate_unit_rejected() {
        let (g, mut unit) = spider();
        unit.params.h1 = 0;
        unit.branches.clear();
        unit.stars.clear();
        assert!(!validate_unit(&g, &unit).pass);
    }

    fn small_web() -> (Graph, Web) {
        // web core 0; branches 0-1 and 0-2; a spider-like unit at each tip
        let edges = [
            (0, 1),
            (0, 2),
            // unit at 1: branches 1-3, 1-4; leaves 7,8
            (1, 3),
            (1, 4),
            (3, 7),
            (4, 8),
            // unit at 2: branches 2-5, 2-6; leaves 9,10
            (2, 5),
            (2, 6),
            (5, 9),
            (6, 10),
        ];
        let g = Graph::from_edges(11, edges).unwrap();
        let up = UnitParams { h1: 2, h2: 1, h3: 1 };
        let unit1 = Unit {
            core: 1,
            params: up,
            branches: vec![vec![1, 3], vec![1, 4]],
            stars: vec![Star { center: 3, leaves: vec![7] }, Star { center: 4, leaves: vec![8] }],
        };
        let unit2 = Unit {
            core: 2,
            params: up,
            branches: vec![vec![2, 5], vec![2, 6]],
            stars: vec![Star { center: 5, leaves: vec![9] }, Star { center: 6, leaves: vec![10] }],
        };
        let web = Web {
            core: 0,
            params: WebParams { h4: 2, h5: 1, unit: up },
            branches: vec![vec![0, 1], vec![0, 2]],
            units: vec![unit1, unit2],
        };
        (g, web)
    }

    #[test]
    fn web_validates_and_partitions() {
        let (g, web) = small_web();
        let rep = validate_web(&g, &web);
        assert!(rep.pass, "{:?}", rep.violation);
        assert_eq!(web.center(), vec![0, 1, 2]);
        assert_eq!(web.exterior(), vec![7, 8, 9, 10]);
        // center is inside the interior
        let int = web.interior();
        for v in web.center() {
            assert!(int.binary_search(&v).is_ok());
        }
        let mut all = web.exterior();
        all.extend(web.interior());
        all.sort_unstable();
        assert_eq!(all, web.vertices());
    }

    #[test]
    fn web_leaf_on_branch_fails() {
        let (g, mut web) = small_web();
        // claim leaf 8 is also on the branch to unit 2: corrupt the branch
        web.branches[1] = vec![0, 2];
        web.units[1].stars[0].leaves = vec![1]; // 1 is a branch vertex (and core of unit 1)
        let rep = validate_web(&g, &web);
        assert!(!rep.pass);
    }

    #[test]
    fn complete_graph_identity_certificate() {
        let k4 = Family::Complete { n: 4 }.generate().unwrap();
        let mut paths = BTreeMap::new();
        for i in 0..4usize {
            for j in i + 1..4 {
                paths.insert((i, j), vec![i as u32, j as u32]);
            }
        }
        let cert = SubdivisionCertificate { t: 4, branch_vertices: vec![0, 1, 2, 3], paths };
        let rep = verify_certificate(&k4, &cert);
        assert!(rep.pass);
        assert_eq!(rep.max_path_len, 1);
        assert_eq!(rep.vertices_used, 4);
    }

    #[test]
    fn verifier_rejects_shared_internal() {
        let g = Family::Cycle { n: 6 }.generate().unwrap();
        // t = 2 with a single path is fine; corrupt endpoint cases too
        let mut paths = BTreeMap::new();
        paths.insert((0, 1), vec![0, 1, 2]);
        let cert = SubdivisionCertificate { t: 2, branch_vertices: vec![0, 2], paths };
        let rep = verify_certificate(&g, &cert);
        assert!(rep.pass);

        let mut paths = BTreeMap::new();
        paths.insert((0, 1), vec![0, 5, 2]);
        let cert = SubdivisionCertificate { t: 2, branch_vertices: vec![0, 2], paths };
        assert!(!verify_certificate(&g, &cert).pass, "0-5-2 is not a walk in C6");
    }

    #[test]
    fn no_tk4_in_k22() {
        let k22 = Family::CompleteBipartite { a: 2, b: 2 }.generate().unwrap();
        match find_subdivision_bruteforce(&k22, 4, 1_000_000) {
            SubdivisionSearch::Exhausted => {}
            other => panic!("expected exhausted, got {other:?}"),
        }
    }

    #[test]
    fn tk4_in_k33_via_subdivided_edges() {
        let k33 = Family::CompleteBipartite { a: 3, b: 3 }.generate().unwrap();
        let found = find_subdivision_bruteforce(&k33, 4, 10_000_000);
        let cert = found.found().expect("a subdivision of order 4 exists here");
        assert!(verify_certificate(&k33, cert).pass);
    }

    #[test]
    fn k5_contains_itself() {
        let k5 = Family::Complete { n: 5 }.generate().unwrap();
        let found = find_subdivision_bruteforce(&k5, 5, 1_000_000);
        let cert = found.found().unwrap();
        let rep = verify_certificate(&k5, cert);
        assert!(rep.pass);
        assert_eq!(rep.vertices_used, 5);
    }

    #[test]
    fn petersen_tk4_fixture() {
        let mut edges = vec![];
        for i in 0..5u32 {
            edges.push((i, (i + 1) % 5));
            edges.push((i + 5, (i + 2) % 5 + 5));
            edges.push((i, i + 5));
        }
        let edges: Vec<_> = edges.into_iter().map(|(u, v)| (u.min(v), u.max(v))).collect();
        let petersen = Graph::from_edges(10, edges).unwrap();
        let found = find_subdivision_bruteforce(&petersen, 4, 50_000_000);
        let cert = found.found().expect("a TK4 exists in this graph");
        assert!(verify_certificate(&petersen, cert).pass);
        // store-and-reload keeps the verdict
        let json = certificate_to_json(cert);
        let back = certificate_from_json(&json).unwrap();
        assert!(verify_certificate(&petersen, &back).pass);
    }

    #[test]
    fn oracle_and_verifier_agree_on_small_graphs() {
        for (fam, t) in [
            (Family::Complete { n: 5 }, 4),
            (Family::Cycle { n: 6 }, 2),
            (Family::CompleteBipartite { a: 3, b: 3 }, 4),
            (Family::Grid { rows: 2, cols: 3 }, 3),
        ] {
            let g = fam.generate().unwrap();
            if let Some(cert) = find_subdivision_bruteforce(&g, t, 10_000_000).found() {
                assert!(verify_certificate(&g, cert).pass, "{fam:?}");
            }
        }
    }

    #[test]
    fn vertices_used_counts_branch_plus_long_path_internals() {
        let c5 = Family::Cycle { n: 5 }.generate().unwrap();
        let found = find_subdivision_bruteforce(&c5, 2, 100_000);
        let cert = found.found().unwrap();
        let rep = verify_certificate(&c5, cert);
        let long_paths = cert.paths.values().filter(|p| p.len() > 2).count();
        assert!(rep.vertices_used >= cert.t + long_paths);
    }

    #[test]
    fn certificate_json_is_canonical() {
        let k4 = Family::Complete { n: 4 }.generate().unwrap();
        let mut paths = BTreeMap::new();
        // deliberately unsorted branch vertices
        let branch = vec![3u32, 0, 2, 1];
        for i in 0..4usize {
            for j in i + 1..4 {
                paths.insert((i, j), vec![branch[i], branch[j]]);
            }
        }
        let cert = SubdivisionCertificate { t: 4, branch_vertices: branch, paths };
        assert!(verify_certificate(&k4, &cert).pass);
        let json = certificate_to_json(&cert);
        assert_eq!(json["branch"], serde_json::json!([0, 1, 2, 3]));
        let keys: Vec<&String> = json["paths"].as_object().unwrap().keys().collect();
        assert_eq!(keys[0], "0-1");
        let back = certificate_from_json(&json).unwrap();
        assert!(verify_certificate(&k4, &back).pass);
    }
}

//! The crux parameter: the minimum order of a subgraph whose average degree
//! is at least an alpha fraction of the host's. Alpha is a rational and
//! every degree comparison here is exact cross-multiplication, because the
//! boundary cases decide correctness.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::expander::for_each_combination;
use crate::graph::{Graph, VertexSet};
use crate::Frac;

#[derive(Debug, Error)]
pub enum CruxError {
    #[error("alpha must lie in (0,1), got {0}")]
    BadAlpha(Frac),
    #[error("exact solver limited to {limit} vertices, graph has {n}")]
    TooLargeForExact { n: usize, limit: usize },
    #[error("graph is empty")]
    EmptyGraph,
    #[error("bad parameter: {0}")]
    BadParams(String),
}

fn check_alpha(alpha: Frac) -> Result<(), CruxError> {
    if *alpha.numer() == 0 || alpha >= Frac::new(1, 1) {
        return Err(CruxError::BadAlpha(alpha));
    }
    Ok(())
}

/// Exact test of `d(H) >= alpha * d(G)` for a candidate on `nh` vertices
/// with `eh` internal edges.
pub(crate) fn qualifies(eh: u64, nh: u64, alpha: Frac, eg: u64, ng: u64) -> bool {
    crate::avg_deg_ge(eh, nh, *alpha.numer(), *alpha.denom(), eg, ng)
}

/// Minimum internal edge count a subgraph on `s` vertices needs:
/// ceil(p * e(G) * s / (q * n)).
fn required_edges(s: u64, alpha: Frac, eg: u64, ng: u64) -> u64 {
    let num = (*alpha.numer() as u128) * (eg as u128) * (s as u128);
    let den = (*alpha.denom() as u128) * (ng as u128);
    (num.div_ceil(den)) as u64
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum CruxStatus {
    Exact,
    Bounded,
}

/// Crux value (or interval) plus the witnessing subgraph, in root ids.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CruxResult {
    pub alpha: Frac,
    pub lo: usize,
    pub hi: usize,
    /// An alpha-crux of size `hi`. Lexicographically smallest among the
    /// minimum ones when `status` is `Exact`.
    pub witness: Vec<u32>,
    pub status: CruxStatus,
    /// Soundness caveats of any heuristic machinery that contributed.
    pub notes: Vec<String>,
}

impl CruxResult {
    pub fn value(&self) -> Option<usize> {
        (self.status == CruxStatus::Exact).then_some(self.hi)
    }
}

pub const EXACT_LIMIT: usize = 22;

/// Exact crux by size-ascending branch-and-bound subset search. Returns the
/// first size admitting a witness and the lexicographically smallest witness
/// of that size. Gated to small graphs.
pub fn crux_exact(g: &Graph, alpha: Frac) -> Result<CruxResult, CruxError> {
    check_alpha(alpha)?;
    let n = g.n();
    if n == 0 {
        return Err(CruxError::EmptyGraph);
    }
    if n > EXACT_LIMIT {
        return Err(CruxError::TooLargeForExact { n, limit: EXACT_LIMIT });
    }
    let (eg, ng) = (g.edge_count() as u64, n as u64);
    for s in 1..=n {
        let req = required_edges(s as u64, alpha, eg, ng);
        if req > (s as u64) * (s as u64 - 1) / 2 {
            continue;
        }
        if let Some(witness) = first_subset_with_edges(g, s, req) {
            return Ok(CruxResult {
                alpha,
                lo: s,
                hi: s,
                witness,
                status: CruxStatus::Exact,
                notes: Vec::new(),
            });
        }
    }
    unreachable!("the whole graph is an alpha-crux for alpha < 1");
}

/// Lexicographically first subset of size `s` inducing at least `req` edges,
/// found by DFS with an admissible bound (pruning never skips a feasible
/// completion, so the first hit is the lexicographic minimum).
fn first_subset_with_edges(g: &Graph, s: usize, req: u64) -> Option<Vec<u32>> {
    fn dfs(
        g: &Graph,
        s: usize,
        req: u64,
        start: u32,
        chosen: &mut Vec<u32>,
        in_chosen: &mut VertexSet,
        cur_e: u64,
    ) -> Option<Vec<u32>> {
        if chosen.len() == s {
            return (cur_e >= req).then(|| chosen.clone());
        }
        let r = s - chosen.len();
        let candidates: Vec<u32> = (start..g.n() as u32).collect();
        if candidates.len() < r {
            return None;
        }
        // Admissible bound: each future pick contributes its edges into the
        // current set, bounded by the top-r such counts, plus at most C(r,2)
        // edges among the future picks themselves.
        let mut gains: Vec<u64> = candidates
            .iter()
            .map(|&c| g.neighbors(c).iter().filter(|&&w| in_chosen.contains(w)).count() as u64)
            .collect();
        gains.sort_unstable_by(|a, b| b.cmp(a));
        let bound: u64 =
            cur_e + gains.iter().take(r).sum::<u64>() + (r as u64) * (r as u64 - 1) / 2;
        if bound < req {
            return None;
        }
        for &c in &candidates {
            if (g.n() as u32 - c) < r as u32 {
                break;
            }
            let gain = g.neighbors(c).iter().filter(|&&w| in_chosen.contains(w)).count() as u64;
            chosen.push(c);
            in_chosen.insert(c);
            if let Some(hit) = dfs(g, s, req, c + 1, chosen, in_chosen, cur_e + gain) {
                return Some(hit);
            }
            chosen.pop();
            in_chosen.remove(c);
        }
        None
    }
    let mut chosen: Vec<u32> = Vec::with_capacity(s);
    let mut in_chosen = VertexSet::empty(g.n());
    dfs(g, s, req, 0, &mut chosen, &mut in_chosen, 0)
}

/// Bounded crux for graphs of any size. The upper bound comes from a greedy
/// min-degree peel that keeps the smallest qualifying suffix, followed by a
/// local shrink; the lower bound is the sound degree bound
/// `v(H) >= alpha * d(G) + 1`. A seeded expansion probe can only tighten the
/// upper bound (a non-expanding set it finds induces an explicit crux); its
/// non-findings are recorded as notes, never folded into the bounds.
pub fn crux_bounded(g: &Graph, alpha: Frac, budget: u64) -> Result<CruxResult, CruxError> {
    check_alpha(alpha)?;
    let n = g.n();
    if n == 0 {
        return Err(CruxError::EmptyGraph);
    }
    let (eg, ng) = (g.edge_count() as u64, n as u64);
    let mut spent = 0u64;

    // Greedy peel, remembering the smallest qualifying state.
    let mut set = VertexSet::full(n);
    let mut deg: Vec<usize> = (0..n as u32).map(|v| g.degree(v)).collect();
    let mut e = eg;
    let mut removal_order: Vec<u32> = Vec::new();
    let mut best_prefix = 0usize; // removals applied before the best state
    let mut best_size = n;
    loop {
        if qualifies(e, set.len() as u64, alpha, eg, ng) && set.len() < best_size {
            best_size = set.len();
            best_prefix = removal_order.len();
        }
        if set.len() <= 1 {
            break;
        }
        let v = set.iter().min_by_key(|&v| (deg[v as usize], v)).unwrap();
        set.remove(v);
        e -= deg[v as usize] as u64;
        for &w in g.neighbors(v) {
            if set.contains(w) {
                deg[w as usize] -= 1;
            }
        }
        removal_order.push(v);
        spent += 1;
    }
    let mut witness = VertexSet::full(n);
    for &v in &removal_order[..best_prefix] {
        witness.remove(v);
    }

    // Local shrink: drop vertices while the remainder still qualifies.
    let mut e_w = g.edges_within(&witness) as u64;
    while spent < budget {
        let mut removed = false;
        let mut order: Vec<u32> = witness.to_vec();
        order.sort_by_key(|&v| (g.degree_in(v, &witness), v));
        for v in order {
            spent += 1;
            let d_v = g.degree_in(v, &witness) as u64;
            if witness.len() > 1 && qualifies(e_w - d_v, witness.len() as u64 - 1, alpha, eg, ng) {
                witness.remove(v);
                e_w -= d_v;
                removed = true;
                break;
            }
            if spent >= budget {
                break;
            }
        }
        if !removed {
            break;
        }
    }

    let mut notes = Vec::new();
    let mut hi = witness.len();
    let mut witness_vec = witness.to_vec();

    // Expansion probe: a sampled set with |N(X)| < K|X| whose closed
    // neighborhood qualifies is itself a crux and tightens hi.
    let kfac = 1.5f64;
    let mut rng = ChaCha20Rng::seed_from_u64(0xC3);
    let probe_cap = (n / 3).max(1);
    let mut probes = 0usize;
    while spent < budget && probes < 64 {
        probes += 1;
        spent += n as u64;
        let s = rng.gen_range(1..=probe_cap);
        let mut pool: Vec<u32> = (0..n as u32).collect();
        let mut xs = VertexSet::empty(n);
        for _ in 0..s {
            let i = rng.gen_range(0..pool.len());
            xs.insert(pool.swap_remove(i));
        }
        let nb = g.neighborhood(&xs);
        if (nb.len() as f64) < kfac * s as f64 {
            let closed = xs.union(&nb);
            let e_c = g.edges_within(&closed) as u64;
            if closed.len() < hi && qualifies(e_c, closed.len() as u64, alpha, eg, ng) {
                hi = closed.len();
                witness_vec = closed.to_vec();
            }
        }
    }
    notes.push(format!(
        "upper bound from greedy peel + shrink; {probes} sampled sets of size <= {probe_cap} \
         probed for |N(X)| < {kfac}|X| (a hit whose closed neighborhood qualifies tightens hi)"
    ));
    notes.push(
        "lower bound is the degree bound v >= alpha*d(G)+1 only; expansion-based lower \
         bounds are not sound without verifying expansion of every small set"
            .into(),
    );

    // v(H) - 1 >= d(H) >= alpha d(G) exactly: lo = floor(alpha*d(G)) + 1.
    let lo_num = (*alpha.numer() as u128) * 2 * (eg as u128);
    let lo_den = (*alpha.denom() as u128) * (ng as u128);
    let lo = ((lo_num / lo_den) as usize + 1).min(hi);

    Ok(CruxResult {
        alpha,
        lo,
        hi,
        witness: witness_vec,
        status: CruxStatus::Bounded,
        notes,
    })
}

// ---------------------------------------------------------------------------
// (D, mu)-density
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct DenseParams {
    /// Removal sets strictly smaller than this are tested.
    pub d_cap: usize,
    pub mu: Frac,
}

impl DenseParams {
    pub fn new(d_cap: usize, mu: Frac) -> Result<Self, CruxError> {
        if d_cap < 1 {
            return Err(CruxError::BadParams("D must be >= 1".into()));
        }
        if *mu.numer() == 0 || mu > Frac::new(1, 1) {
            return Err(CruxError::BadParams(format!("mu must be in (0,1], got {mu}")));
        }
        Ok(DenseParams { d_cap, mu })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum DenseMode {
    Exhaustive,
    Sampled { trials: usize, seed: u64 },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DenseReport {
    pub pass: bool,
    pub mode: DenseMode,
    /// A removal set under which the average degree drops below mu * d(G).
    pub violating: Option<Vec<u32>>,
}

/// Checks that removing any vertex set of size < D keeps the average degree
/// at least mu * d(G). Exhaustive mode is gated to n <= 20.
pub fn is_dense(g: &Graph, p: &DenseParams, mode: DenseMode) -> Result<DenseReport, CruxError> {
    let n = g.n();
    if n == 0 {
        return Err(CruxError::EmptyGraph);
    }
    let (eg, ng) = (g.edge_count() as u64, n as u64);
    let (pm, qm) = (*p.mu.numer(), *p.mu.denom());
    // d(G-W) >= mu d(G)  <=>  e' * qm * n >= pm * e * (n - |W|)
    let holds = |w: &[u32]| {
        let wset = VertexSet::from_iter(n, w.iter().copied());
        let removed: u64 = w.iter().map(|&v| g.degree(v) as u64).sum();
        let inside = g.edges_within(&wset) as u64;
        let e_after = eg - removed + inside;
        let n_after = ng - w.len() as u64;
        (e_after as u128) * (qm as u128) * (ng as u128)
            >= (pm as u128) * (eg as u128) * (n_after as u128)
    };
    let w_max = (p.d_cap - 1).min(n - 1);
    let mut violating = None;
    match mode {
        DenseMode::Exhaustive => {
            if n > 20 {
                return Err(CruxError::TooLargeForExact { n, limit: 20 });
            }
            let verts: Vec<u32> = (0..n as u32).collect();
            'outer: for w in 1..=w_max {
                let mut found = None;
                for_each_combination(&verts, w, &mut |ws| {
                    if !holds(ws) {
                        found = Some(ws.to_vec());
                        false
                    } else {
                        true
                    }
                });
                if found.is_some() {
                    violating = found;
                    break 'outer;
                }
            }
        }
        DenseMode::Sampled { trials, seed } => {
            let mut rng = ChaCha20Rng::seed_from_u64(seed);
            for _ in 0..trials {
                if w_max == 0 {
                    break;
                }
                let w = rng.gen_range(1..=w_max);
                let mut pool: Vec<u32> = (0..n as u32).collect();
                let mut ws = Vec::with_capacity(w);
                for _ in 0..w {
                    let i = rng.gen_range(0..pool.len());
                    ws.push(pool.swap_remove(i));
                }
                ws.sort_unstable();
                if !holds(&ws) {
                    violating = Some(ws);
                    break;
                }
            }
        }
    }
    Ok(DenseReport { pass: violating.is_none(), mode, violating })
}

// ---------------------------------------------------------------------------
// Theorem checks
// ---------------------------------------------------------------------------

/// Outcome of a runtime theorem check. `pass == Some(false)` on a fixture
/// meeting the preconditions indicates an implementation bug, not a property
/// of the input.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LemmaCheck {
    pub preconditions_met: bool,
    pub messages: Vec<String>,
    pub pass: Option<bool>,
    pub crux_value: Option<usize>,
    pub counterexample: Option<Vec<u32>>,
}

fn half_min_degree_ok(g: &Graph) -> bool {
    // min-deg >= d/2 = e/n  <=>  min-deg * n >= e
    g.min_degree() as u64 * g.n() as u64 >= g.edge_count() as u64
}

/// Checks that a graph with min-degree at least half its average degree is
/// (ceil(C_alpha/2), (1-3*alpha)/4)-dense, with the crux computed exactly.
pub fn check_lemma_robust(g: &Graph, alpha: Frac) -> Result<LemmaCheck, CruxError> {
    let mut messages = Vec::new();
    if g.n() == 0 {
        return Err(CruxError::EmptyGraph);
    }
    if !half_min_degree_ok(g) {
        messages.push("min degree below half the average degree".into());
    }
    if alpha > Frac::new(1, 5) {
        messages.push(format!("alpha = {alpha} exceeds 1/5"));
    }
    if g.n() > 20 {
        messages.push(format!("n = {} too large for the exhaustive density scan", g.n()));
    }
    if !messages.is_empty() {
        return Ok(LemmaCheck {
            preconditions_met: false,
            messages,
            pass: None,
            crux_value: None,
            counterexample: None,
        });
    }
    let crux = crux_exact(g, alpha)?;
    let c = crux.value().expect("exact status");
    let d_cap = c.div_ceil(2);
    let (p, q) = (*alpha.numer(), *alpha.denom());
    let mu = Frac::new(q - 3 * p, 4 * q);
    let report = is_dense(g, &DenseParams::new(d_cap.max(1), mu)?, DenseMode::Exhaustive)?;
    Ok(LemmaCheck {
        preconditions_met: true,
        messages,
        pass: Some(report.pass),
        crux_value: Some(c),
        counterexample: report.violating,
    })
}

/// Checks that every set of size at most C_alpha/(K+1) has neighborhood at
/// least K times its size, with the crux computed exactly and K rational.
pub fn check_lemma_kexpan(g: &Graph, alpha: Frac, kfac: Frac) -> Result<LemmaCheck, CruxError> {
    let mut messages = Vec::new();
    if g.n() == 0 {
        return Err(CruxError::EmptyGraph);
    }
    if !half_min_degree_ok(g) {
        messages.push("min degree below half the average degree".into());
    }
    let (pk, qk) = (*kfac.numer() as u128, *kfac.denom() as u128);
    let (p, q) = (*alpha.numer() as u128, *alpha.denom() as u128);
    // alpha <= 1/(2K+2) = qk / (2pk + 2qk)
    if p * (2 * pk + 2 * qk) > q * qk {
        messages.push(format!("alpha = {alpha} exceeds 1/(2K+2) for K = {kfac}"));
    }
    if g.n() > 18 {
        messages.push(format!("n = {} too large for the exhaustive set scan", g.n()));
    }
    if !messages.is_empty() {
        return Ok(LemmaCheck {
            preconditions_met: false,
            messages,
            pass: None,
            crux_value: None,
            counterexample: None,
        });
    }
    let crux = crux_exact(g, alpha)?;
    let c = crux.value().expect("exact status") as u128;
    // |X| <= C/(K+1) = C*qk/(pk+qk)
    let l = (c * qk / (pk + qk)) as usize;
    let verts: Vec<u32> = (0..g.n() as u32).collect();
    let mut counterexample = None;
    'sizes: for s in 1..=l.min(g.n()) {
        let mut found = None;
        for_each_combination(&verts, s, &mut |xs| {
            let x = VertexSet::from_iter(g.n(), xs.iter().copied());
            let nb = g.neighborhood(&x).len() as u128;
            // |N(X)| >= K|X|  <=>  |N| * qk >= pk * s
            if nb * qk < pk * (s as u128) {
                found = Some(xs.to_vec());
                false
            } else {
                true
            }
        });
        if found.is_some() {
            counterexample = found;
            break 'sizes;
        }
    }
    Ok(LemmaCheck {
        preconditions_met: true,
        messages,
        pass: Some(counterexample.is_none()),
        crux_value: Some(c as usize),
        counterexample,
    })
}

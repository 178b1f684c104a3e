//! Construction and verification machinery for large clique subdivisions in
//! sparse graphs: sublinear-expander extraction, crux (densest-small-subgraph)
//! search, unit/web structures, disjoint short-path routing, and an
//! end-to-end pipeline that emits independently verifiable certificates.

pub mod connector;
pub mod crux;
pub mod expander;
pub mod graph;
pub mod pipeline;
pub mod structures;

pub use graph::{Graph, VertexSet};

/// Exact fraction used wherever an average-degree comparison must not be
/// subject to floating-point rounding.
pub type Frac = num_rational::Ratio<u64>;

/// Tolerance for comparisons of log-derived quantities (expansion ratios,
/// length caps). Exact rational arithmetic is used everywhere else.
pub const LOG_TOL: f64 = 1e-9;

/// Exact test of `2*eh/nh >= (p/q) * 2*eg/ng` by cross-multiplication.
///
/// All operands are widened to `u128`, so the comparison is exact for any
/// graph this crate can hold in memory.
pub fn avg_deg_ge(eh: u64, nh: u64, p: u64, q: u64, eg: u64, ng: u64) -> bool {
    assert!(nh > 0 && ng > 0 && q > 0);
    (eh as u128) * (q as u128) * (ng as u128) >= (p as u128) * (eg as u128) * (nh as u128)
}

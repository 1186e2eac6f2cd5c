//! Cycle sampling for the voltage arguments: collections of distinct
//! hamiltonian cycles of small (quotient-scale) graphs, optionally pinned
//! through a chosen edge.

use super::exact::{enumerate_constrained_cycles, enumerate_hamiltonian_cycles};
use super::canonical_cycle;
use crate::graphs::Graph;

/// Up to `limit` distinct hamiltonian cycles in deterministic order.
/// Exact enumeration; intended for graphs of at most a few dozen vertices.
pub fn sample_cycles(g: &Graph, limit: usize) -> Vec<Vec<u32>> {
    enumerate_hamiltonian_cycles(g, limit)
}

/// Up to `limit` distinct hamiltonian cycles through the given edge.
pub fn sample_cycles_through_edge(g: &Graph, edge: (u32, u32), limit: usize) -> Vec<Vec<u32>> {
    if !g.has_edge(edge.0, edge.1) {
        return Vec::new();
    }
    enumerate_constrained_cycles(g, &[edge], limit)
}

/// Deduplicates a batch of cycles by canonical form, preserving first
/// occurrence order.
pub fn dedup_cycles(cycles: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for c in cycles {
        if seen.insert(canonical_cycle(&c)) {
            out.push(c);
        }
    }
    out
}

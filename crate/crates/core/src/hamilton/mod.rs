//! Hamiltonian cycle and path search with exact and heuristic backends.
//!
//! Graphs up to `exact_threshold` vertices get a decisive backtracking
//! search: a `ProvenNone` answer there is a proof of non-hamiltonicity.
//! Larger graphs fall back to a seeded rotation heuristic, which can only
//! answer `Found` or `Undecided`. Certificates returned by any backend are
//! re-checked by `validate_cycle` before leaving this module, so a `Found`
//! is trustworthy regardless of which search produced it.

mod exact;
mod rotation;
pub mod sample;

pub use exact::{enumerate_constrained_cycles, enumerate_hamiltonian_cycles};

use crate::graphs::Graph;

/// Deterministic step conversion for time budgets: the heuristic counts
/// work in steps, never wall-clock, so runs are reproducible.
pub const STEPS_PER_MS: u64 = 2_000;

/// Budget and determinism knobs for the search.
#[derive(Clone, Debug)]
pub struct SearchBudget {
    /// Decisive backtracking is used at or below this many vertices.
    pub exact_threshold: usize,
    /// Heuristic budget, converted to steps at STEPS_PER_MS.
    pub time_limit_ms: u64,
    /// Heuristic restarts; each derives its own seed.
    pub restarts: usize,
    pub seed: u64,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            exact_threshold: 64,
            time_limit_ms: 2_000,
            restarts: 64,
            seed: 0x5eed_cafe,
        }
    }
}

impl SearchBudget {
    pub fn with_seed(seed: u64) -> Self {
        SearchBudget {
            seed,
            ..Default::default()
        }
    }

    pub fn steps(&self) -> u64 {
        self.time_limit_ms.saturating_mul(STEPS_PER_MS)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Vec<u32>),
    /// Exhaustive search ruled a cycle out; only issued at exact sizes.
    ProvenNone,
    /// Heuristic budget exhausted above the exact threshold.
    Undecided,
}

impl SearchOutcome {
    pub fn cycle(&self) -> Option<&[u32]> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

/// Checks a hamiltonian cycle certificate: every vertex exactly once,
/// consecutive vertices adjacent (cyclically), and every required edge
/// traversed. By convention the one-vertex cycle [v] is valid, and a
/// two-vertex cycle uses its single edge in both directions.
pub fn validate_cycle(g: &Graph, cycle: &[u32], required: &[(u32, u32)]) -> bool {
    let n = g.n();
    if cycle.len() != n || n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in cycle {
        if v as usize >= n || seen[v as usize] {
            return false;
        }
        seen[v as usize] = true;
    }
    if n == 1 {
        return required.is_empty();
    }
    for i in 0..n {
        let (u, v) = (cycle[i], cycle[(i + 1) % n]);
        if !g.has_edge(u, v) {
            return false;
        }
    }
    required.iter().all(|&(a, b)| {
        (0..n).any(|i| {
            let (u, v) = (cycle[i], cycle[(i + 1) % n]);
            (u, v) == (a, b) || (u, v) == (b, a)
        })
    })
}

/// Checks a hamiltonian path certificate from `from` to `to`.
pub fn validate_path(g: &Graph, path: &[u32], from: u32, to: u32) -> bool {
    let n = g.n();
    if path.len() != n || n == 0 {
        return false;
    }
    if path[0] != from || *path.last().unwrap() != to {
        return false;
    }
    let mut seen = vec![false; n];
    for &v in path {
        if v as usize >= n || seen[v as usize] {
            return false;
        }
        seen[v as usize] = true;
    }
    path.windows(2).all(|w| g.has_edge(w[0], w[1]))
}

/// Finds a hamiltonian cycle through all `required` edges. Decisive at or
/// below the exact threshold; heuristic above it.
pub fn find_hamiltonian_cycle(
    g: &Graph,
    required: &[(u32, u32)],
    budget: &SearchBudget,
) -> SearchOutcome {
    let n = g.n();
    if n == 0 {
        return SearchOutcome::ProvenNone;
    }
    if required
        .iter()
        .any(|&(u, v)| u == v || u as usize >= n || v as usize >= n || !g.has_edge(u, v))
    {
        return SearchOutcome::ProvenNone;
    }
    if n == 1 {
        return SearchOutcome::Found(vec![0]);
    }
    if n == 2 {
        return if g.has_edge(0, 1) {
            SearchOutcome::Found(vec![0, 1])
        } else {
            SearchOutcome::ProvenNone
        };
    }
    if n <= budget.exact_threshold.min(exact::MAX_EXACT_VERTICES) {
        // A quick heuristic pass first often skips the backtracking cost.
        let quick = SearchBudget {
            time_limit_ms: budget.time_limit_ms.min(50),
            ..budget.clone()
        };
        if let Some(c) = rotation::search(g, required, &quick) {
            debug_assert!(validate_cycle(g, &c, required));
            return SearchOutcome::Found(c);
        }
        return match exact::hamiltonian_cycle_exact(g, required) {
            Some(c) => {
                debug_assert!(validate_cycle(g, &c, required));
                SearchOutcome::Found(c)
            }
            None => SearchOutcome::ProvenNone,
        };
    }
    match rotation::search(g, required, budget) {
        Some(c) => {
            debug_assert!(validate_cycle(g, &c, required));
            SearchOutcome::Found(c)
        }
        None => SearchOutcome::Undecided,
    }
}

/// Finds a hamiltonian path between two distinct vertices by searching for
/// a cycle through an auxiliary required edge. Decisive at exact sizes.
pub fn find_hamiltonian_path(
    g: &Graph,
    from: u32,
    to: u32,
    budget: &SearchBudget,
) -> SearchOutcome {
    let n = g.n();
    if from == to || from as usize >= n || to as usize >= n {
        return SearchOutcome::ProvenNone;
    }
    if n == 2 {
        return if g.has_edge(from, to) {
            SearchOutcome::Found(vec![from, to])
        } else {
            SearchOutcome::ProvenNone
        };
    }
    let mut aug = g.clone();
    aug.add_edge(from, to);
    let required: Vec<(u32, u32)> = vec![(from, to)];
    match find_hamiltonian_cycle(&aug, &required, budget) {
        SearchOutcome::Found(cycle) => {
            let pos = (0..cycle.len())
                .find(|&i| {
                    let (u, v) = (cycle[i], cycle[(i + 1) % cycle.len()]);
                    (u, v) == (from, to) || (u, v) == (to, from)
                })
                .expect("required edge is in the cycle");
            // Cut the cycle at the auxiliary edge and orient from -> to.
            let mut path: Vec<u32> = (1..=cycle.len())
                .map(|off| cycle[(pos + off) % cycle.len()])
                .collect();
            if path[0] != from {
                path.reverse();
            }
            debug_assert!(validate_path(g, &path, from, to));
            SearchOutcome::Found(path)
        }
        other => other,
    }
}

/// Canonical form of a cycle certificate: the lexicographically least among
/// all rotations of both orientations. Used to deduplicate sampled cycles.
pub fn canonical_cycle(cycle: &[u32]) -> Vec<u32> {
    let n = cycle.len();
    if n == 0 {
        return Vec::new();
    }
    let mut best: Option<Vec<u32>> = None;
    for dir in 0..2 {
        let oriented: Vec<u32> = if dir == 0 {
            cycle.to_vec()
        } else {
            cycle.iter().rev().copied().collect()
        };
        for r in 0..n {
            let rotated: Vec<u32> = (0..n).map(|i| oriented[(r + i) % n]).collect();
            if best.as_ref().map_or(true, |b| &rotated < b) {
                best = Some(rotated);
            }
        }
    }
    best.unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::cayley_graph;
    use crate::groups::cyclic;

    fn cycle_graph(n: usize) -> Graph {
        cayley_graph(&cyclic(n), &[1])
    }

    fn petersen() -> Graph {
        let mut g = Graph::new(10);
        for i in 0..5u32 {
            g.add_edge(i, (i + 1) % 5);
            g.add_edge(i, i + 5);
            g.add_edge(i + 5, (i + 2) % 5 + 5);
        }
        g
    }

    #[test]
    fn validate_conventions() {
        let k1 = Graph::new(1);
        assert!(validate_cycle(&k1, &[0], &[]));
        let k2 = Graph::from_edges(2, &[(0, 1)]);
        assert!(validate_cycle(&k2, &[0, 1], &[(0, 1)]));
        let c5 = cycle_graph(5);
        assert!(validate_cycle(&c5, &[0, 1, 2, 3, 4], &[]));
        assert!(!validate_cycle(&c5, &[0, 1, 2, 3, 3], &[]));
        assert!(!validate_cycle(&c5, &[0, 1, 2, 4, 3], &[]));
        assert!(!validate_cycle(&c5, &[0, 1, 2, 3], &[]));
    }

    #[test]
    fn validate_required_edges() {
        let c6 = cycle_graph(6);
        let cyc: Vec<u32> = (0..6).collect();
        assert!(validate_cycle(&c6, &cyc, &[(2, 1), (5, 0)]));
        // (0,2) is not even an edge, and not on the cycle.
        assert!(!validate_cycle(&c6, &cyc, &[(0, 2)]));
    }

    #[test]
    fn finds_cycle_in_small_graphs() {
        for n in [3usize, 4, 7, 12] {
            let g = cycle_graph(n);
            match find_hamiltonian_cycle(&g, &[], &SearchBudget::default()) {
                SearchOutcome::Found(c) => assert!(validate_cycle(&g, &c, &[])),
                other => panic!("expected cycle in C{n}, got {other:?}"),
            }
        }
    }

    #[test]
    fn petersen_is_proven_non_hamiltonian() {
        let g = petersen();
        assert_eq!(
            find_hamiltonian_cycle(&g, &[], &SearchBudget::default()),
            SearchOutcome::ProvenNone
        );
    }

    #[test]
    fn petersen_has_hamiltonian_paths() {
        let g = petersen();
        match find_hamiltonian_path(&g, 0, 7, &SearchBudget::default()) {
            SearchOutcome::Found(p) => assert!(validate_path(&g, &p, 0, 7)),
            other => panic!("expected path, got {other:?}"),
        }
    }

    #[test]
    fn required_edge_is_respected() {
        let g = cayley_graph(&cyclic(8), &[1, 2]);
        let req = [(0u32, 2u32), (4u32, 6u32)];
        match find_hamiltonian_cycle(&g, &req, &SearchBudget::default()) {
            SearchOutcome::Found(c) => assert!(validate_cycle(&g, &c, &req)),
            other => panic!("expected constrained cycle, got {other:?}"),
        }
    }

    #[test]
    fn impossible_required_edge_is_rejected() {
        let g = cycle_graph(6);
        // (0,3) is a chord that does not exist.
        assert_eq!(
            find_hamiltonian_cycle(&g, &[(0, 3)], &SearchBudget::default()),
            SearchOutcome::ProvenNone
        );
    }

    #[test]
    fn path_endpoints_must_differ() {
        let g = cycle_graph(5);
        assert_eq!(
            find_hamiltonian_path(&g, 2, 2, &SearchBudget::default()),
            SearchOutcome::ProvenNone
        );
    }

    #[test]
    fn no_path_between_same_side_of_even_cycle() {
        let g = cycle_graph(6);
        // 0 and 2 are on the same side of the bipartition: no hamiltonian
        // path can connect them in a 6-cycle.
        assert_eq!(
            find_hamiltonian_path(&g, 0, 2, &SearchBudget::default()),
            SearchOutcome::ProvenNone
        );
    }

    #[test]
    fn canonical_form_identifies_rotations() {
        let a = canonical_cycle(&[2, 3, 4, 0, 1]);
        let b = canonical_cycle(&[1, 0, 4, 3, 2]);
        assert_eq!(a, b);
        assert_eq!(a, vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn heuristic_handles_larger_cycles() {
        // 200 vertices: above the exact threshold, still trivially solvable.
        let g = cayley_graph(&cyclic(200), &[1, 2]);
        match find_hamiltonian_cycle(&g, &[], &SearchBudget::default()) {
            SearchOutcome::Found(c) => assert!(validate_cycle(&g, &c, &[])),
            other => panic!("expected cycle, got {other:?}"),
        }
    }
}

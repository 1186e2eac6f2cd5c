//! Decisive hamiltonian cycle search by backtracking over bitmask
//! adjacency. A `None` from this module is a proof that no cycle satisfies
//! the constraints.
//!
//! Pruning rules, all completion-preserving:
//! - a vertex that becomes interior must have its required edges among its
//!   two fixed cycle edges;
//! - every unvisited vertex needs at least two neighbours among the
//!   unvisited vertices, the path head, and the start;
//! - the unvisited vertices plus head and start must be connected.
//! Orientation is deduplicated by requiring the successor of the start to
//! be smaller than its predecessor, which is sound because the constraint
//! set is undirected.

use crate::graphs::Graph;

/// Bitmask width bound for the exact backend.
pub const MAX_EXACT_VERTICES: usize = 128;

type Mask = u128;

struct Searcher<'a> {
    n: usize,
    adj: Vec<Mask>,
    graph: &'a Graph,
    /// Required neighbours per vertex.
    req: Vec<Mask>,
    path: Vec<u32>,
    visited: Mask,
    /// Collect up to this many cycles.
    limit: usize,
    out: Vec<Vec<u32>>,
}

fn build_masks(g: &Graph, required: &[(u32, u32)]) -> Option<(Vec<Mask>, Vec<Mask>)> {
    let n = g.n();
    let mut adj = vec![0 as Mask; n];
    for v in 0..n {
        for &w in g.neighbors(v as u32) {
            adj[v] |= 1 << w;
        }
    }
    let mut req = vec![0 as Mask; n];
    for &(u, v) in required {
        if u == v || !g.has_edge(u, v) {
            return None;
        }
        req[u as usize] |= 1 << v;
        req[v as usize] |= 1 << u;
    }
    // More than two required edges at one vertex can never be satisfied.
    if req.iter().any(|m| m.count_ones() > 2) {
        return None;
    }
    Some((adj, req))
}

impl<'a> Searcher<'a> {
    fn all_mask(&self) -> Mask {
        if self.n == MAX_EXACT_VERTICES {
            !0
        } else {
            (1 << self.n) - 1
        }
    }

    /// Unvisited vertices plus head and start must form a connected graph.
    fn connectivity_ok(&self, head: usize) -> bool {
        let free = (self.all_mask() & !self.visited) | (1 << head) | 1;
        let mut reached = (1 as Mask) << head;
        let mut frontier = reached;
        while frontier != 0 {
            let mut next = 0 as Mask;
            let mut f = frontier;
            while f != 0 {
                let v = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= self.adj[v] & free;
            }
            next &= !reached;
            if next == 0 {
                break;
            }
            reached |= next;
            frontier = next;
        }
        reached & free == free
    }

    /// Every unvisited vertex needs two attachment points among unvisited,
    /// head, and start.
    fn degrees_ok(&self, head: usize) -> bool {
        let avail = (self.all_mask() & !self.visited) | (1 << head) | 1;
        let mut un = self.all_mask() & !self.visited;
        while un != 0 {
            let v = un.trailing_zeros() as usize;
            un &= un - 1;
            if (self.adj[v] & avail).count_ones() < 2 {
                return false;
            }
        }
        true
    }

    fn dfs(&mut self, head: usize, pred: usize) {
        if self.out.len() >= self.limit {
            return;
        }
        if self.visited == self.all_mask() {
            // Close the cycle; orientation dedup: path[1] < path[n-1].
            if self.adj[head] & 1 != 0
                && self.path[1] < self.path[self.n - 1]
                && self.req[0] & !(1 << self.path[1]) & !(1 << head) == 0
            {
                self.out.push(self.path.clone());
            }
            return;
        }
        // Required edges at the head not yet used must leave via the next
        // step; the start vertex instead has both its first step and the
        // closing edge available, so it only forces when it carries two.
        let at_root = self.path.len() == 1;
        let candidates = if at_root {
            if self.req[0].count_ones() == 2 {
                self.req[0] & !self.visited
            } else {
                self.adj[0] & !self.visited
            }
        } else {
            let unused_req = self.req[head] & !(1 << pred);
            if unused_req != 0 {
                if unused_req.count_ones() > 1 {
                    return;
                }
                let forced = unused_req & !self.visited;
                if forced == 0 {
                    // Forced target already visited. Unvisited vertices
                    // remain (completion was checked above), so the edge
                    // can never be traversed from here.
                    return;
                }
                forced
            } else {
                self.adj[head] & !self.visited
            }
        };
        if !self.degrees_ok(head) || !self.connectivity_ok(head) {
            return;
        }
        let mut c = candidates;
        while c != 0 {
            let v = c.trailing_zeros() as usize;
            c &= c - 1;
            // v's required edges must stay satisfiable: edges to visited
            // vertices other than head (and start, settled at closing) are
            // lost for good.
            let lost = self.req[v] & self.visited & !(1 << head) & !1;
            if lost != 0 {
                continue;
            }
            self.visited |= 1 << v;
            self.path.push(v as u32);
            self.dfs(v, head);
            self.path.pop();
            self.visited &= !(1 << v);
            if self.out.len() >= self.limit {
                return;
            }
        }
    }
}

fn run(g: &Graph, required: &[(u32, u32)], limit: usize) -> Vec<Vec<u32>> {
    let n = g.n();
    assert!(n <= MAX_EXACT_VERTICES, "exact search capped at 128 vertices");
    if n < 3 {
        // Handled by the caller's conventions.
        let mut out = Vec::new();
        if n == 1 && required.is_empty() {
            out.push(vec![0]);
        } else if n == 2 && g.has_edge(0, 1) {
            out.push(vec![0, 1]);
        }
        return out;
    }
    let Some((adj, req)) = build_masks(g, required) else {
        return Vec::new();
    };
    let mut s = Searcher {
        n,
        adj,
        graph: g,
        req,
        path: vec![0],
        visited: 1,
        limit,
        out: Vec::new(),
    };
    s.dfs(0, 0);
    let req_list: Vec<(u32, u32)> = required.to_vec();
    s.out
        .retain(|c| super::validate_cycle(s.graph, c, &req_list));
    s.out
}

/// One hamiltonian cycle through all required edges, or a proof of absence.
pub(crate) fn hamiltonian_cycle_exact(g: &Graph, required: &[(u32, u32)]) -> Option<Vec<u32>> {
    run(g, required, 1).into_iter().next()
}

/// Up to `limit` distinct hamiltonian cycles (each undirected cycle once,
/// in deterministic order). Exact sizes only.
pub fn enumerate_hamiltonian_cycles(g: &Graph, limit: usize) -> Vec<Vec<u32>> {
    run(g, &[], limit)
}

/// Up to `limit` distinct hamiltonian cycles through all required edges,
/// in the same order the unconstrained enumeration would yield them. The
/// constraint prunes inside the search, so this is far cheaper than
/// filtering the full enumeration.
pub fn enumerate_constrained_cycles(
    g: &Graph,
    required: &[(u32, u32)],
    limit: usize,
) -> Vec<Vec<u32>> {
    run(g, required, limit)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::cayley_graph;
    use crate::groups::{abelian, cyclic, dihedral};

    #[test]
    fn counts_on_complete_graphs() {
        // K_n has (n-1)!/2 hamiltonian cycles.
        for (n, expected) in [(3usize, 1usize), (4, 3), (5, 12), (6, 60)] {
            let mut g = Graph::new(n);
            for u in 0..n as u32 {
                for v in (u + 1)..n as u32 {
                    g.add_edge(u, v);
                }
            }
            assert_eq!(enumerate_hamiltonian_cycles(&g, usize::MAX).len(), expected);
        }
    }

    #[test]
    fn cycle_graph_has_exactly_one() {
        let g = cayley_graph(&cyclic(9), &[1]);
        let all = enumerate_hamiltonian_cycles(&g, usize::MAX);
        assert_eq!(all.len(), 1);
        assert_eq!(all[0], (0..9).collect::<Vec<u32>>());
    }

    #[test]
    fn k33_count() {
        // K_{3,3} has 6 hamiltonian cycles.
        let mut g = Graph::new(6);
        for u in 0..3u32 {
            for v in 3..6u32 {
                g.add_edge(u, v);
            }
        }
        assert_eq!(enumerate_hamiltonian_cycles(&g, usize::MAX).len(), 6);
    }

    #[test]
    fn enumeration_respects_limit() {
        let g = cayley_graph(&abelian(&[2, 2, 2]).unwrap(), &[1, 2, 4]);
        let some = enumerate_hamiltonian_cycles(&g, 3);
        assert_eq!(some.len(), 3);
        for c in &some {
            assert!(super::super::validate_cycle(&g, c, &[]));
        }
    }

    #[test]
    fn forced_chain() {
        // In C8 + diagonals force a specific pair of chords.
        let g = cayley_graph(&cyclic(8), &[1, 4]);
        let req = [(0u32, 4u32)];
        let c = hamiltonian_cycle_exact(&g, &req).unwrap();
        assert!(super::super::validate_cycle(&g, &c, &req));
    }

    #[test]
    fn contradictory_requirements_fail() {
        // Three required edges at one vertex.
        let g = cayley_graph(&cyclic(8), &[1, 2, 4]);
        let req = [(0u32, 1u32), (0u32, 2u32), (0u32, 4u32)];
        assert!(hamiltonian_cycle_exact(&g, &req).is_none());
    }

    #[test]
    fn grid_graph_counts() {
        // 3x3 grid: not hamiltonian... actually it is not: odd bipartite
        // imbalance is absent (5 vs 4): no hamiltonian cycle exists.
        let mut g = Graph::new(9);
        for r in 0..3u32 {
            for c in 0..3u32 {
                let v = r * 3 + c;
                if c + 1 < 3 {
                    g.add_edge(v, v + 1);
                }
                if r + 1 < 3 {
                    g.add_edge(v, v + 3);
                }
            }
        }
        assert!(hamiltonian_cycle_exact(&g, &[]).is_none());
    }

    #[test]
    fn required_edges_all_used() {
        let d4 = dihedral(8).unwrap();
        let g = cayley_graph(&d4, &[1, 4]);
        // Pick two disjoint edges and demand both.
        let req = [(0u32, 1u32), (4u32, 5u32)];
        if let Some(c) = hamiltonian_cycle_exact(&g, &req) {
            assert!(super::super::validate_cycle(&g, &c, &req));
        } else {
            // Must genuinely be impossible: verify by checking the
            // unconstrained enumeration for any cycle using both edges.
            let all = enumerate_hamiltonian_cycles(&g, usize::MAX);
            let uses = |c: &Vec<u32>| super::super::validate_cycle(&g, c, &req);
            assert!(!all.iter().any(uses));
        }
    }
}

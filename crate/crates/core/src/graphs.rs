//! Undirected graphs as adjacency lists, plus Cayley graph construction.

use crate::groups::FiniteGroup;

/// Simple undirected graph on vertices 0..n.
#[derive(Clone, Debug)]
pub struct Graph {
    adj: Vec<Vec<u32>>,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Self {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    pub fn add_edge(&mut self, u: u32, v: u32) {
        if u == v || self.has_edge(u, v) {
            return;
        }
        self.adj[u as usize].push(v);
        self.adj[v as usize].push(u);
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: u32) -> &[u32] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: u32) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, u: u32, v: u32) -> bool {
        self.adj[u as usize].contains(&v)
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|a| a.len()).sum::<usize>() / 2
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return true;
        }
        let mut seen = vec![false; n];
        let mut queue = vec![0u32];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop() {
            for &w in self.neighbors(v) {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    count += 1;
                    queue.push(w);
                }
            }
        }
        count == n
    }

    /// Two-coloring if the graph is bipartite. Color of vertex 0 is 0.
    /// Components beyond the first are colored independently.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let n = self.n();
        let mut color = vec![u8::MAX; n];
        for start in 0..n {
            if color[start] != u8::MAX {
                continue;
            }
            color[start] = 0;
            let mut queue = vec![start as u32];
            while let Some(v) = queue.pop() {
                let c = color[v as usize];
                for &w in self.neighbors(v) {
                    if color[w as usize] == u8::MAX {
                        color[w as usize] = 1 - c;
                        queue.push(w);
                    } else if color[w as usize] == c {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }
}

/// Cayley graph of a group with respect to a connection set, using right
/// multiplication: x is adjacent to x·s for each s. The connection set is
/// symmetrised internally, and the identity is ignored if present.
pub fn cayley_graph(g: &FiniteGroup, conn: &[usize]) -> Graph {
    let mut graph = Graph::new(g.order());
    for x in 0..g.order() {
        for &s in conn {
            if s == 0 {
                continue;
            }
            graph.add_edge(x as u32, g.mul(x, s) as u32);
            graph.add_edge(x as u32, g.mul(x, g.inv(s)) as u32);
        }
    }
    graph
}

/// Recovers the generator sequence of a closed walk from its vertex cycle:
/// entry i is the group element t with cycle[i]·t = cycle[i+1] (cyclically).
/// Every step must lie in the symmetrised connection set.
pub fn cycle_to_word(
    g: &FiniteGroup,
    conn: &[usize],
    cycle: &[u32],
) -> Option<Vec<usize>> {
    let mut sym: Vec<usize> = conn
        .iter()
        .flat_map(|&s| [s, g.inv(s)])
        .filter(|&s| s != 0)
        .collect();
    sym.sort_unstable();
    sym.dedup();
    let mut word = Vec::with_capacity(cycle.len());
    for i in 0..cycle.len() {
        let x = cycle[i] as usize;
        let y = cycle[(i + 1) % cycle.len()] as usize;
        let t = g.mul(g.inv(x), y);
        if sym.binary_search(&t).is_err() {
            return None;
        }
        word.push(t);
    }
    Some(word)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{abelian, cyclic, dihedral};

    #[test]
    fn cayley_cycle_graph() {
        let g = cayley_graph(&cyclic(5), &[1]);
        assert_eq!(g.edge_count(), 5);
        assert!(g.is_connected());
        assert!((0..5).all(|v| g.degree(v) == 2));
        assert!(g.bipartition().is_none());
    }

    #[test]
    fn cayley_k2() {
        let g = cayley_graph(&cyclic(2), &[1]);
        assert_eq!(g.n(), 2);
        assert_eq!(g.edge_count(), 1);
        assert!(g.bipartition().is_some());
    }

    #[test]
    fn cayley_even_cycle_is_bipartite() {
        let g = cayley_graph(&cyclic(6), &[1]);
        let sides = g.bipartition().unwrap();
        assert_eq!(sides, vec![0, 1, 0, 1, 0, 1]);
    }

    #[test]
    fn cayley_disconnected_for_non_generating() {
        let g = cayley_graph(&cyclic(6), &[2]);
        assert!(!g.is_connected());
    }

    #[test]
    fn dihedral_prism() {
        // D3 with a rotation and a reflection: the 3-prism, 3-regular.
        let d3 = dihedral(6).unwrap();
        let g = cayley_graph(&d3, &[1, 3]);
        assert!(g.is_connected());
        assert!((0..6).all(|v| g.degree(v) == 3));
        assert_eq!(g.edge_count(), 9);
    }

    #[test]
    fn word_recovery() {
        let z6 = cyclic(6);
        let cycle: Vec<u32> = vec![0, 1, 2, 3, 4, 5];
        let word = cycle_to_word(&z6, &[1], &cycle).unwrap();
        assert_eq!(word, vec![1; 6]);
        // A walk stepping outside the connection set is rejected.
        assert!(cycle_to_word(&z6, &[2, 3], &cycle).is_none());
        // Mixed steps.
        let v4 = abelian(&[2, 2]).unwrap();
        let cycle: Vec<u32> = vec![0, 1, 3, 2];
        let word = cycle_to_word(&v4, &[1, 2], &cycle).unwrap();
        assert_eq!(word, vec![1, 2, 1, 2]);
    }
}

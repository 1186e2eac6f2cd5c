//! Isomorphism testing and automorphism enumeration by generator-image
//! backtracking.
//!
//! A candidate map is pinned down by where it sends a minimal generating
//! sequence; consistency is propagated by breadth-first search over the
//! generated subgroup, so contradictions surface long before all images are
//! chosen. Cheap invariants (order multiset, class sizes, center size)
//! reject most non-isomorphic pairs without any search.

use super::{subgroup_generated, FiniteGroup};

/// Greedy minimal generating sequence: repeatedly adjoin the least element
/// outside the closure so far. The result has at most log2(order) entries.
pub(crate) fn minimal_generating_sequence(g: &FiniteGroup) -> Vec<usize> {
    let mut gens: Vec<usize> = Vec::new();
    let mut closure = vec![0usize];
    while closure.len() < g.order() {
        let mut x = 0;
        while closure.binary_search(&x).is_ok() {
            x += 1;
        }
        gens.push(x);
        closure = subgroup_generated(g, &gens);
    }
    gens
}

fn conjugacy_class_sizes(g: &FiniteGroup) -> Vec<usize> {
    let n = g.order();
    let mut class = vec![usize::MAX; n];
    let mut sizes = vec![0usize; n];
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        let mut members = Vec::new();
        for h in 0..n {
            let y = g.conj(h, x);
            if class[y] == usize::MAX {
                class[y] = x;
                members.push(y);
            }
        }
        for &y in &members {
            sizes[y] = members.len();
        }
    }
    sizes
}

/// Per-element invariant preserved by any isomorphism.
fn element_profile(g: &FiniteGroup) -> Vec<(usize, usize, usize)> {
    let sizes = conjugacy_class_sizes(g);
    (0..g.order())
        .map(|x| {
            let sq_ord = g.element_order(g.mul(x, x));
            (g.element_order(x), sizes[x], sq_ord)
        })
        .collect()
}

/// Extends the partial map determined by generator images over the whole
/// generated subgroup. Returns the number of defined elements, or None on a
/// contradiction (ill-defined or non-injective).
fn propagate(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    images: &[usize],
    map: &mut [usize],
) -> Option<usize> {
    const UNSET: usize = usize::MAX;
    map.iter_mut().for_each(|m| *m = UNSET);
    let mut used = vec![false; b.order()];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&ga, &gb) in gens.iter().zip(images.iter()) {
            let y = a.mul(x, ga);
            let fy = b.mul(map[x], gb);
            if map[y] == UNSET {
                if used[fy] {
                    return None;
                }
                map[y] = fy;
                used[fy] = true;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    Some(queue.len())
}

fn search(
    a: &FiniteGroup,
    b: &FiniteGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    limit: usize,
) -> Vec<Vec<usize>> {
    let n = a.order();
    let mut found = Vec::new();
    let mut images = Vec::with_capacity(gens.len());
    let mut map = vec![0usize; n];
    fn rec(
        a: &FiniteGroup,
        b: &FiniteGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        images: &mut Vec<usize>,
        map: &mut [usize],
        found: &mut Vec<Vec<usize>>,
        limit: usize,
    ) {
        if found.len() >= limit {
            return;
        }
        let depth = images.len();
        if depth == gens.len() {
            if propagate(a, b, gens, images, map) == Some(a.order()) {
                found.push(map.to_vec());
            }
            return;
        }
        for &cand in &candidates[depth] {
            images.push(cand);
            // Partial consistency over the subgroup generated so far.
            if propagate(a, b, &gens[..=depth], images, map).is_some() {
                rec(a, b, gens, candidates, images, map, found, limit);
            }
            images.pop();
            if found.len() >= limit {
                return;
            }
        }
    }
    rec(a, b, gens, candidates, &mut images, &mut map, &mut found, limit);
    found
}

fn isomorphisms(a: &FiniteGroup, b: &FiniteGroup, limit: usize) -> Vec<Vec<usize>> {
    if a.order() != b.order() {
        return Vec::new();
    }
    let pa = element_profile(a);
    let pb = element_profile(b);
    let mut sa = pa.clone();
    let mut sb = pb.clone();
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return Vec::new();
    }
    let gens = minimal_generating_sequence(a);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| (0..b.order()).filter(|&y| pb[y] == pa[g]).collect())
        .collect();
    search(a, b, &gens, &candidates, limit)
}

/// True when the two multiplication tables define isomorphic groups.
pub fn are_isomorphic(a: &FiniteGroup, b: &FiniteGroup) -> bool {
    !isomorphisms(a, b, 1).is_empty()
}

/// One isomorphism a → b as a full element map, if any exists.
pub fn isomorphism(a: &FiniteGroup, b: &FiniteGroup) -> Option<Vec<usize>> {
    isomorphisms(a, b, 1).into_iter().next()
}

/// The full automorphism group, as element maps. Deterministic order.
pub fn automorphisms(g: &FiniteGroup) -> Vec<Vec<usize>> {
    isomorphisms(g, g, usize::MAX)
}

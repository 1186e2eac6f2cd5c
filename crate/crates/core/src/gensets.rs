//! Generating sets of a finite group up to automorphism and inverses.
//!
//! A Cayley graph only sees the symmetric closure T = S ∪ S^{-1}, and
//! relabelling by an automorphism gives an isomorphic graph, so verification
//! work is organised by classes: symmetric generating sets up to Aut(G),
//! represented by one generator per inverse pair (the smaller index).
//! A class is irredundant when dropping any inverse pair stops the set from
//! generating; every connected Cayley graph on G contains the graph of an
//! irredundant subclass as a spanning subgraph, so positive hamiltonicity
//! results for irredundant classes cover all generating sets.

use crate::groups::{automorphisms, subgroup_generated, FiniteGroup};
use std::collections::HashSet;

/// A symmetric generating set class. `gens` holds one representative per
/// inverse pair (sorted, each the smaller of the pair); `symmetric` is the
/// full connection set T = gens ∪ gens^{-1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenSetClass {
    pub gens: Vec<usize>,
    pub symmetric: Vec<usize>,
}

impl GenSetClass {
    /// Edge valence of the Cayley graph: |T|.
    pub fn valence(&self) -> usize {
        self.symmetric.len()
    }

    /// Stable key for reports: representative indices joined by '+'.
    pub fn key(&self) -> String {
        self.gens
            .iter()
            .map(|g| g.to_string())
            .collect::<Vec<_>>()
            .join("+")
    }
}

/// Inverse pairs of non-identity elements, as (rep, inverse) with
/// rep <= inverse, sorted by rep.
pub fn inverse_pairs(g: &FiniteGroup) -> Vec<(usize, usize)> {
    (1..g.order())
        .filter(|&x| x <= g.inv(x))
        .map(|x| (x, g.inv(x)))
        .collect()
}

fn symmetrize(g: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut t: Vec<usize> = gens.iter().flat_map(|&s| [s, g.inv(s)]).collect();
    t.sort_unstable();
    t.dedup();
    t
}

fn generates(g: &FiniteGroup, gens: &[usize]) -> bool {
    subgroup_generated(g, gens).len() == g.order()
}

/// Irredundant symmetric generating classes up to Aut(G), in a
/// deterministic order (by pair count, then lexicographic).
pub fn irredundant_classes(g: &FiniteGroup) -> Vec<GenSetClass> {
    let pairs = inverse_pairs(g);
    let reps: Vec<usize> = pairs.iter().map(|&(r, _)| r).collect();
    let autos = automorphisms(g);
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut out = Vec::new();
    // Any irredundant set has at most log2(order) pairs: each new pair at
    // least doubles the generated subgroup.
    let mut max_pairs = 0;
    let mut m = 1usize;
    while m < g.order() {
        m *= 2;
        max_pairs += 1;
    }
    let max_pairs = max_pairs.max(1).min(reps.len());
    let mut chosen: Vec<usize> = Vec::new();
    extend_classes(g, &reps, 0, max_pairs, &mut chosen, &autos, &mut seen, &mut out);
    out.sort_by(|a, b| (a.gens.len(), &a.gens).cmp(&(b.gens.len(), &b.gens)));
    out
}

/// DFS over ascending representative prefixes. The prefixes of an
/// irredundant set generate a strictly increasing subgroup chain, so only
/// representatives outside the current closure can extend the prefix, and
/// a generating prefix never extends. This keeps the search linear in the
/// number of useful prefixes instead of binomial in the pair count.
#[allow(clippy::too_many_arguments)]
fn extend_classes(
    g: &FiniteGroup,
    reps: &[usize],
    start: usize,
    max_pairs: usize,
    chosen: &mut Vec<usize>,
    autos: &[Vec<usize>],
    seen: &mut HashSet<Vec<usize>>,
    out: &mut Vec<GenSetClass>,
) {
    let closure = subgroup_generated(g, chosen);
    if closure.len() == g.order() && !chosen.is_empty() {
        let irredundant = (0..chosen.len()).all(|i| {
            let rest: Vec<usize> = chosen
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .map(|(_, &s)| s)
                .collect();
            !generates(g, &rest)
        });
        if irredundant {
            let sym = symmetrize(g, chosen);
            if !seen.contains(&sym) {
                // New class: mark its whole automorphism orbit.
                for alpha in autos {
                    let mut img: Vec<usize> = sym.iter().map(|&s| alpha[s]).collect();
                    img.sort_unstable();
                    seen.insert(img);
                }
                out.push(GenSetClass {
                    gens: chosen.clone(),
                    symmetric: sym,
                });
            }
        }
        return;
    }
    if chosen.len() >= max_pairs {
        return;
    }
    for i in start..reps.len() {
        if closure.binary_search(&reps[i]).is_ok() {
            continue;
        }
        chosen.push(reps[i]);
        extend_classes(g, reps, i + 1, max_pairs, chosen, autos, seen, out);
        chosen.pop();
    }
}

/// Every symmetric generating subset T = T^{-1} of G, without any
/// deduplication. Exponential in the number of inverse pairs; intended for
/// exhaustive sweeps over very small groups.
pub fn symmetric_generating_subsets(g: &FiniteGroup) -> Vec<Vec<usize>> {
    let pairs = inverse_pairs(g);
    let mut out = Vec::new();
    for mask in 1u64..(1u64 << pairs.len()) {
        let gens: Vec<usize> = (0..pairs.len())
            .filter(|&i| mask >> i & 1 == 1)
            .map(|i| pairs[i].0)
            .collect();
        if generates(g, &gens) {
            out.push(symmetrize(g, &gens));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{abelian, alternating, cyclic, dicyclic, dihedral};

    #[test]
    fn cyclic_prime_has_single_class() {
        // All nonzero residues of Z7 are equivalent under Aut(Z7).
        let classes = irredundant_classes(&cyclic(7));
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].gens, vec![1]);
        assert_eq!(classes[0].valence(), 2);
    }

    #[test]
    fn z6_classes() {
        // {1}, {2,3}: one generator, or the two proper prime-power parts.
        let classes = irredundant_classes(&cyclic(6));
        assert_eq!(classes.len(), 2);
        assert_eq!(classes[0].gens, vec![1]);
        assert_eq!(classes[1].gens, vec![2, 3]);
    }

    #[test]
    fn klein_four_has_one_class() {
        // Any two distinct involutions generate; all pairs are equivalent.
        let v4 = abelian(&[2, 2]).unwrap();
        let classes = irredundant_classes(&v4);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].valence(), 2);
    }

    #[test]
    fn s3_classes() {
        // Two reflections, or a rotation and a reflection.
        let s3 = dihedral(6).unwrap();
        let classes = irredundant_classes(&s3);
        assert_eq!(classes.len(), 2);
        let valences: Vec<usize> = classes.iter().map(|c| c.valence()).collect();
        assert!(valences.contains(&2));
        assert!(valences.contains(&3));
    }

    #[test]
    fn q8_classes() {
        // Only {i, j}-style pairs: Aut(Q8) = S4 permutes the three axes
        // transitively, and any third generator is redundant since two
        // distinct axes already generate.
        let q8 = dicyclic(8).unwrap();
        let classes = irredundant_classes(&q8);
        assert_eq!(classes.len(), 1);
        assert_eq!(classes[0].gens.len(), 2);
        assert_eq!(classes[0].valence(), 4);
    }

    #[test]
    fn a4_classes() {
        let a4 = alternating(4).unwrap();
        let classes = irredundant_classes(&a4);
        // Known shapes: {(123),(124)} two 3-cycles; {(12)(34),(123)} an
        // involution and a 3-cycle; {(123),(12)(34)} styles collapse under
        // Aut(A4) = S4.
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn irredundance_is_enforced() {
        let z12 = cyclic(12);
        for c in irredundant_classes(&z12) {
            assert!(subgroup_generated(&z12, &c.gens).len() == 12);
            for i in 0..c.gens.len() {
                let rest: Vec<usize> = c
                    .gens
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &s)| s)
                    .collect();
                assert!(subgroup_generated(&z12, &rest).len() < 12);
            }
        }
    }

    #[test]
    fn symmetric_subsets_of_v4() {
        // Three involutions; any subset of size >= 2 generates: 4 subsets.
        let v4 = abelian(&[2, 2]).unwrap();
        let subs = symmetric_generating_subsets(&v4);
        assert_eq!(subs.len(), 4);
    }

    #[test]
    fn symmetric_subsets_include_redundant() {
        let z5 = cyclic(5);
        let subs = symmetric_generating_subsets(&z5);
        // Pairs {1,4}, {2,3}: each alone generates, and the union too.
        assert_eq!(subs.len(), 3);
        assert!(subs.contains(&vec![1, 2, 3, 4]));
    }
}

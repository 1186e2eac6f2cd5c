//! Built-in catalog of all groups (up to isomorphism) for every order the
//! verifier can encounter: quotient orders up to 16 plus the composite
//! orders scanned by the small-prime fallback.
//!
//! Construction seeds the classical families (cyclic, abelian, dihedral,
//! dicyclic, alternating) and then closes under semidirect products N ⋊ H
//! with |N| and |H| both catalog orders. Every new group is deduplicated by
//! isomorphism, and the final per-order counts must match the classification
//! counts pinned in `EXPECTED_COUNTS`; any mismatch is a construction bug
//! and aborts the process.

use super::{
    abelian, alternating, are_isomorphic, automorphisms, dicyclic, dihedral, semidirect,
    FiniteGroup,
};
use crate::groups::iso::minimal_generating_sequence;
use std::collections::BTreeMap;
use std::sync::OnceLock;

/// Orders materialised in the catalog.
pub const CATALOG_ORDERS: &[usize] = &[
    1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14, 15, 16, 18, 20, 24, 25, 27, 30, 36, 49, 50,
    56, 60, 121, 132,
];

/// Number of isomorphism classes per order. These are the classification
/// counts; the build aborts if it produces anything else.
pub const EXPECTED_COUNTS: &[(usize, usize)] = &[
    (1, 1),
    (2, 1),
    (3, 1),
    (4, 2),
    (5, 1),
    (6, 2),
    (7, 1),
    (8, 5),
    (9, 2),
    (10, 2),
    (11, 1),
    (12, 5),
    (13, 1),
    (14, 2),
    (15, 1),
    (16, 14),
    (18, 5),
    (20, 5),
    (24, 15),
    (25, 2),
    (27, 5),
    (30, 4),
    (36, 14),
    (49, 2),
    (50, 5),
    (56, 13),
    (60, 13),
    (121, 2),
    (132, 10),
];

pub fn expected_count(order: usize) -> Option<usize> {
    EXPECTED_COUNTS
        .iter()
        .find(|&&(o, _)| o == order)
        .map(|&(_, c)| c)
}

#[derive(Clone, Debug)]
pub struct CatalogEntry {
    pub group: FiniteGroup,
    pub name: String,
}

#[derive(Debug)]
pub struct Catalog {
    by_order: BTreeMap<usize, Vec<CatalogEntry>>,
}

impl Catalog {
    /// The shared catalog, built once per process.
    pub fn builtin() -> &'static Catalog {
        static CATALOG: OnceLock<Catalog> = OnceLock::new();
        CATALOG.get_or_init(Catalog::build)
    }

    pub fn orders(&self) -> impl Iterator<Item = usize> + '_ {
        self.by_order.keys().copied()
    }

    pub fn entries(&self, order: usize) -> &[CatalogEntry] {
        self.by_order.get(&order).map(|v| v.as_slice()).unwrap_or(&[])
    }

    pub fn group(&self, order: usize, index: usize) -> Option<&FiniteGroup> {
        self.by_order.get(&order)?.get(index).map(|e| &e.group)
    }

    pub fn name(&self, order: usize, index: usize) -> Option<&str> {
        self.by_order.get(&order)?.get(index).map(|e| e.name.as_str())
    }

    /// Finds the catalog entry isomorphic to the given group, if its order
    /// is a catalog order.
    pub fn identify(&self, g: &FiniteGroup) -> Option<(usize, usize)> {
        let entries = self.by_order.get(&g.order())?;
        entries
            .iter()
            .position(|e| are_isomorphic(&e.group, g))
            .map(|i| (g.order(), i))
    }

    fn build() -> Catalog {
        let mut by_order: BTreeMap<usize, Vec<CatalogEntry>> = BTreeMap::new();
        for &n in CATALOG_ORDERS {
            by_order.insert(n, Vec::new());
        }

        // Classical families.
        for &n in CATALOG_ORDERS {
            for (factors, name) in abelian_types(n) {
                let g = abelian(&factors).expect("abelian build");
                add_if_new(&mut by_order, n, g, name);
            }
            if n >= 6 && n % 2 == 0 {
                let g = dihedral(n).expect("dihedral build");
                add_if_new(&mut by_order, n, g, format!("D{}", n / 2));
            }
            if n >= 8 && n % 4 == 0 {
                let g = dicyclic(n).expect("dicyclic build");
                let name = if n == 8 {
                    "Q8".to_string()
                } else {
                    format!("Dic{}", n / 4)
                };
                add_if_new(&mut by_order, n, g, name);
            }
        }
        add_if_new(&mut by_order, 12, alternating(4).expect("A4"), "A4".into());
        add_if_new(&mut by_order, 60, alternating(5).expect("A5"), "A5".into());

        // Close under semidirect products until stable.
        loop {
            let mut added = false;
            for &n in CATALOG_ORDERS {
                for &d in CATALOG_ORDERS {
                    if d < 2 || n % d != 0 {
                        continue;
                    }
                    let q = n / d;
                    if q < 2 || !by_order.contains_key(&q) {
                        continue;
                    }
                    let mut ni = 0;
                    while ni < by_order[&d].len() {
                        let n_entry = by_order[&d][ni].clone();
                        let mut hi = 0;
                        while hi < by_order[&q].len() {
                            let h_entry = by_order[&q][hi].clone();
                            for action in homs_to_aut(&h_entry.group, &n_entry.group) {
                                let g = semidirect(&n_entry.group, &h_entry.group, &action)
                                    .expect("semidirect build");
                                let trivial =
                                    action.iter().all(|a| a.iter().enumerate().all(|(i, &v)| v == i));
                                let name = if trivial {
                                    format!("{}x{}", n_entry.name, h_entry.name)
                                } else {
                                    format!("{}:{}", n_entry.name, h_entry.name)
                                };
                                if add_if_new(&mut by_order, n, g, name) {
                                    added = true;
                                }
                            }
                            hi += 1;
                        }
                        ni += 1;
                    }
                }
            }
            if !added {
                break;
            }
        }

        // Pin catalog identifiers and verify the classification counts.
        for (&n, entries) in by_order.iter_mut() {
            let expected = expected_count(n).expect("order has a pinned count");
            assert_eq!(
                entries.len(),
                expected,
                "catalog built {} groups of order {n}, classification has {expected}",
                entries.len()
            );
            for (i, e) in entries.iter_mut().enumerate() {
                e.group.set_catalog_id((n, i));
            }
        }
        Catalog { by_order }
    }
}

fn add_if_new(
    by_order: &mut BTreeMap<usize, Vec<CatalogEntry>>,
    order: usize,
    group: FiniteGroup,
    name: String,
) -> bool {
    let entries = by_order.get_mut(&order).expect("catalog order");
    if entries.iter().any(|e| are_isomorphic(&e.group, &group)) {
        return false;
    }
    let mut unique = name;
    let mut suffix = 1;
    while entries.iter().any(|e| e.name == unique) {
        suffix += 1;
        unique = format!("{}#{suffix}", unique.split('#').next().unwrap());
    }
    entries.push(CatalogEntry {
        group,
        name: unique,
    });
    true
}

/// All abelian groups of order n as prime-power factor lists, named by
/// invariant factors.
fn abelian_types(n: usize) -> Vec<(Vec<usize>, String)> {
    let fac = factorize(n);
    let mut per_prime: Vec<Vec<Vec<usize>>> = Vec::new();
    for &(_, e) in &fac {
        per_prime.push(partitions(e));
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; fac.len()];
    loop {
        // prime -> descending exponent parts
        let mut factors: Vec<usize> = Vec::new();
        let mut by_prime: Vec<(usize, Vec<usize>)> = Vec::new();
        for (i, &(p, _)) in fac.iter().enumerate() {
            let parts = &per_prime[i][choice[i]];
            for &part in parts {
                factors.push(p.pow(part as u32));
            }
            by_prime.push((p, parts.clone()));
        }
        out.push((factors, invariant_factor_name(&by_prime)));
        // Next choice vector.
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < per_prime[i].len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn invariant_factor_name(by_prime: &[(usize, Vec<usize>)]) -> String {
    let rounds = by_prime.iter().map(|(_, parts)| parts.len()).max().unwrap_or(0);
    let mut invariants = Vec::new();
    for r in 0..rounds {
        let mut d = 1usize;
        for (p, parts) in by_prime {
            if let Some(&e) = parts.get(r) {
                d *= p.pow(e as u32);
            }
        }
        invariants.push(d);
    }
    if invariants.is_empty() {
        return "Z1".to_string();
    }
    invariants
        .iter()
        .map(|d| format!("Z{d}"))
        .collect::<Vec<_>>()
        .join("x")
}

pub(crate) fn factorize(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            let mut e = 0;
            while m % p == 0 {
                m /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += 1;
    }
    if m > 1 {
        out.push((m, 1));
    }
    out
}

/// Partitions of e into descending parts.
fn partitions(e: usize) -> Vec<Vec<usize>> {
    fn rec(remaining: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if remaining == 0 {
            out.push(prefix.clone());
            return;
        }
        for part in (1..=remaining.min(max_part)).rev() {
            prefix.push(part);
            rec(remaining - part, part, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(e, e, &mut Vec::new(), &mut out);
    out
}

/// All homomorphisms H → Aut(N), each returned as the elementwise action
/// table expected by `semidirect`.
pub fn homs_to_aut(h: &FiniteGroup, n: &FiniteGroup) -> Vec<Vec<Vec<usize>>> {
    let autos = automorphisms(n);
    let mut index: std::collections::HashMap<Vec<usize>, usize> = std::collections::HashMap::new();
    for (i, a) in autos.iter().enumerate() {
        index.insert(a.clone(), i);
    }
    let auto_order: Vec<usize> = autos.iter().map(|a| perm_order(a)).collect();
    let gens = minimal_generating_sequence(h);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let d = h.element_order(g);
            (0..autos.len()).filter(|&i| d % auto_order[i] == 0).collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut images: Vec<usize> = Vec::new();
    hom_search(h, &autos, &index, &gens, &candidates, &mut images, &mut out);
    out
}

fn hom_search(
    h: &FiniteGroup,
    autos: &[Vec<usize>],
    index: &std::collections::HashMap<Vec<usize>, usize>,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
    out: &mut Vec<Vec<Vec<usize>>>,
) {
    if images.len() == gens.len() {
        if let Some(map) = propagate_aut_hom(h, autos, index, gens, images) {
            // Generators span H here, so the map is total.
            debug_assert!(map.iter().all(|&m| m != usize::MAX));
            out.push(map.into_iter().map(|i| autos[i].clone()).collect());
        }
        return;
    }
    let depth = images.len();
    for &c in &candidates[depth] {
        images.push(c);
        if propagate_aut_hom(h, autos, index, &gens[..=depth], images).is_some() {
            hom_search(h, autos, index, gens, candidates, images, out);
        }
        images.pop();
    }
}

fn propagate_aut_hom(
    h: &FiniteGroup,
    autos: &[Vec<usize>],
    index: &std::collections::HashMap<Vec<usize>, usize>,
    gens: &[usize],
    images: &[usize],
) -> Option<Vec<usize>> {
    const UNSET: usize = usize::MAX;
    let nh = h.order();
    let mut map = vec![UNSET; nh];
    map[0] = index[&(0..autos[0].len()).collect::<Vec<usize>>()];
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&ga, &ia) in gens.iter().zip(images.iter()) {
            let y = h.mul(x, ga);
            // φ(x·g) = φ(x) ∘ φ(g), applying φ(g) first.
            let composed: Vec<usize> = autos[ia].iter().map(|&v| autos[map[x]][v]).collect();
            let fy = *index.get(&composed)?;
            if map[y] == UNSET {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    // With a partial generator list the map covers only the generated
    // subgroup; unset entries keep the sentinel and the caller only uses
    // totality at the final depth.
    Some(map)
}

fn perm_order(p: &[usize]) -> usize {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut ord = 1usize;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x];
            len += 1;
        }
        ord = num_integer::lcm(ord, len);
    }
    ord
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{cyclic, structure};

    #[test]
    fn counts_match_classification() {
        let cat = Catalog::builtin();
        for &(order, count) in EXPECTED_COUNTS {
            assert_eq!(
                cat.entries(order).len(),
                count,
                "order {order} should have {count} groups"
            );
        }
    }

    #[test]
    fn order_16_has_all_five_abelians() {
        let cat = Catalog::builtin();
        let abelians = cat
            .entries(16)
            .iter()
            .filter(|e| e.group.is_abelian())
            .count();
        assert_eq!(abelians, 5);
    }

    #[test]
    fn order_12_names_cover_families() {
        let cat = Catalog::builtin();
        let names: Vec<&str> = cat.entries(12).iter().map(|e| e.name.as_str()).collect();
        assert!(names.contains(&"Z12"));
        assert!(names.contains(&"D6"));
        assert!(names.contains(&"Dic3"));
        assert!(names.contains(&"A4"));
    }

    #[test]
    fn identify_roundtrip() {
        let cat = Catalog::builtin();
        let d4 = dihedral(8).unwrap();
        let (order, index) = cat.identify(&d4).unwrap();
        assert_eq!(order, 8);
        assert!(are_isomorphic(cat.group(order, index).unwrap(), &d4));
        // A freshly built semidirect product identifies to something.
        let q8 = dicyclic(8).unwrap();
        assert!(cat.identify(&q8).is_some());
    }

    #[test]
    fn order_24_contains_binary_tetrahedral() {
        // SL(2,3): commutator subgroup Q8, center of size 2.
        let cat = Catalog::builtin();
        let found = cat.entries(24).iter().any(|e| {
            let st = structure(&e.group);
            st.commutator.len() == 8 && st.center.len() == 2
        });
        assert!(found);
    }

    #[test]
    fn homs_count_s3_to_aut_z7() {
        // Aut(Z7) = Z6; homs from S3 factor through S3^ab = Z2: two of them.
        let s3 = dihedral(6).unwrap();
        let z7 = cyclic(7);
        assert_eq!(homs_to_aut(&s3, &z7).len(), 2);
    }

    #[test]
    fn abelian_type_enumeration() {
        assert_eq!(abelian_types(8).len(), 3);
        assert_eq!(abelian_types(36).len(), 4);
        assert_eq!(abelian_types(1).len(), 1);
        let names: Vec<String> = abelian_types(12).into_iter().map(|(_, n)| n).collect();
        assert!(names.contains(&"Z12".to_string()));
        assert!(names.contains(&"Z6xZ2".to_string()));
    }

    #[test]
    fn partitions_of_4() {
        assert_eq!(partitions(4).len(), 5);
    }
}

//! Finite groups as dense multiplication tables.
//!
//! Every group in this crate is a `FiniteGroup`: a validated Cayley table
//! with the identity pinned at index 0. Multiplication is a table lookup, so
//! search-time cost is constant per step regardless of how the group was
//! built. Construction checks the Latin-square property and two-sided
//! inverses always, and associativity exhaustively up to order 64 (sampled
//! with a fixed seed above that).

mod builders;
pub mod catalog;
pub mod characters;
mod iso;

pub use builders::*;
pub use characters::{linear_characters, LinearCharacter};
pub use iso::{are_isomorphic, automorphisms, isomorphism};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard cap on the order of any materialised multiplication table. A table
/// stores order^2 u16 entries, so 8192 keeps the worst case near 128 MiB.
pub const MAX_TABLE_ORDER: usize = 8192;

/// Exhaustive associativity checking is cubic; above this order a fixed
/// sample of triples is checked instead.
pub const FULL_ASSOC_CHECK_ORDER: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GroupError {
    #[error("multiplication table is empty or not square")]
    NotSquare,
    #[error("index 0 is not a two-sided identity")]
    NoIdentity,
    #[error("row or column {0} is not a permutation of the elements")]
    NotLatin(usize),
    #[error("element {0} has no two-sided inverse")]
    NoInverse(usize),
    #[error("associativity fails on ({0}, {1}, {2})")]
    NotAssociative(usize, usize, usize),
    #[error("order {0} exceeds the table cap {MAX_TABLE_ORDER}")]
    TooLarge(usize),
    #[error("generator {0} is not a permutation of 0..{1}")]
    BadPermutation(usize, usize),
    #[error("closure exceeded the size cap {0}")]
    ClosureCapExceeded(usize),
    #[error("subset is not a subgroup")]
    NotSubgroup,
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("invalid twist: {0}")]
    BadTwist(String),
    #[error("invalid argument: {0}")]
    BadArgument(String),
}

/// A finite group given by its full multiplication table.
///
/// `table[a * order + b]` is the product `a * b`. Index 0 is the identity.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u16>,
    inv: Vec<u16>,
    labels: Vec<String>,
    catalog_id: Option<(usize, usize)>,
}

impl std::fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("catalog_id", &self.catalog_id)
            .finish()
    }
}

impl FiniteGroup {
    /// Builds a group from a row-major table, validating the axioms.
    pub fn from_table(
        table: Vec<Vec<usize>>,
        labels: Option<Vec<String>>,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 || table.iter().any(|row| row.len() != order) {
            return Err(GroupError::NotSquare);
        }
        if order > MAX_TABLE_ORDER {
            return Err(GroupError::TooLarge(order));
        }
        let mut flat = vec![0u16; order * order];
        for (a, row) in table.iter().enumerate() {
            for (b, &v) in row.iter().enumerate() {
                if v >= order {
                    return Err(GroupError::NotLatin(a));
                }
                flat[a * order + b] = v as u16;
            }
        }
        let labels = labels.unwrap_or_else(|| (0..order).map(|i| format!("g{i}")).collect());
        Self::from_flat(order, flat, labels)
    }

    pub(crate) fn from_flat(
        order: usize,
        table: Vec<u16>,
        labels: Vec<String>,
    ) -> Result<Self, GroupError> {
        debug_assert_eq!(table.len(), order * order);
        if labels.len() != order {
            return Err(GroupError::BadArgument("label count mismatch".into()));
        }
        // Identity at 0.
        for x in 0..order {
            if table[x] as usize != x || table[x * order] as usize != x {
                return Err(GroupError::NoIdentity);
            }
        }
        // Latin square.
        let mut seen = vec![false; order];
        for a in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..order {
                let v = table[a * order + b] as usize;
                if seen[v] {
                    return Err(GroupError::NotLatin(a));
                }
                seen[v] = true;
            }
            seen.iter_mut().for_each(|s| *s = false);
            for b in 0..order {
                let v = table[b * order + a] as usize;
                if seen[v] {
                    return Err(GroupError::NotLatin(a));
                }
                seen[v] = true;
            }
        }
        // Two-sided inverses.
        let mut inv = vec![0u16; order];
        for a in 0..order {
            let mut found = None;
            for b in 0..order {
                if table[a * order + b] == 0 && table[b * order + a] == 0 {
                    found = Some(b as u16);
                    break;
                }
            }
            inv[a] = found.ok_or(GroupError::NoInverse(a))?;
        }
        // Associativity: full up to FULL_ASSOC_CHECK_ORDER, sampled above.
        let mul = |a: usize, b: usize| table[a * order + b] as usize;
        if order <= FULL_ASSOC_CHECK_ORDER {
            for a in 0..order {
                for b in 0..order {
                    let ab = mul(a, b);
                    for c in 0..order {
                        if mul(ab, c) != mul(a, mul(b, c)) {
                            return Err(GroupError::NotAssociative(a, b, c));
                        }
                    }
                }
            }
        } else {
            let mut state = 0x9e3779b97f4a7c15u64 ^ (order as u64);
            let mut next = move || {
                state ^= state << 13;
                state ^= state >> 7;
                state ^= state << 17;
                state
            };
            for _ in 0..(32 * order) {
                let a = (next() % order as u64) as usize;
                let b = (next() % order as u64) as usize;
                let c = (next() % order as u64) as usize;
                if mul(mul(a, b), c) != mul(a, mul(b, c)) {
                    return Err(GroupError::NotAssociative(a, b, c));
                }
            }
        }
        Ok(FiniteGroup {
            order,
            table,
            inv,
            labels,
            catalog_id: None,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a] as usize
    }

    /// g * x * g^{-1}
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// a^{-1} b^{-1} a b
    pub fn commutator(&self, a: usize, b: usize) -> usize {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: usize, e: i64) -> usize {
        let (mut base, mut e) = if e < 0 {
            (self.inv(a), (-e) as u64)
        } else {
            (a, e as u64)
        };
        let mut acc = 0usize;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 0 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn is_abelian(&self) -> bool {
        for a in 0..self.order {
            for b in (a + 1)..self.order {
                if self.mul(a, b) != self.mul(b, a) {
                    return false;
                }
            }
        }
        true
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn catalog_id(&self) -> Option<(usize, usize)> {
        self.catalog_id
    }

    pub(crate) fn set_catalog_id(&mut self, id: (usize, usize)) {
        self.catalog_id = Some(id);
    }

    /// Exponent of the group: lcm of element orders.
    pub fn exponent(&self) -> usize {
        (0..self.order).fold(1usize, |acc, g| {
            num_integer::lcm(acc, self.element_order(g))
        })
    }
}

/// A homomorphism between two already-known groups, stored pointwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupHom {
    pub images: Vec<usize>,
}

impl GroupHom {
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// Checks f(ab) = f(a)f(b) on all pairs.
    pub fn is_homomorphism(&self, dom: &FiniteGroup, cod: &FiniteGroup) -> bool {
        if self.images.len() != dom.order() {
            return false;
        }
        if self.images.iter().any(|&v| v >= cod.order()) {
            return false;
        }
        for a in 0..dom.order() {
            for b in 0..dom.order() {
                if self.images[dom.mul(a, b)] != cod.mul(self.images[a], self.images[b]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Breadth-first closure of permutation generators into a full group table.
///
/// Elements are indexed in discovery order, with the identity first. The
/// product convention is "apply the left factor first", so walking a word
/// left to right multiplies on the right. Labels record permutation words.
pub fn close_generators(
    degree: usize,
    gens: &[Vec<usize>],
    cap: usize,
) -> Result<FiniteGroup, GroupError> {
    for (i, g) in gens.iter().enumerate() {
        let mut seen = vec![false; degree];
        if g.len() != degree {
            return Err(GroupError::BadPermutation(i, degree));
        }
        for &v in g {
            if v >= degree || seen[v] {
                return Err(GroupError::BadPermutation(i, degree));
            }
            seen[v] = true;
        }
    }
    let identity: Vec<u16> = (0..degree as u16).collect();
    let gens16: Vec<Vec<u16>> = gens
        .iter()
        .map(|g| g.iter().map(|&v| v as u16).collect())
        .collect();
    let compose = |a: &[u16], b: &[u16]| -> Vec<u16> {
        // apply a, then b
        a.iter().map(|&x| b[x as usize]).collect()
    };
    let mut index = std::collections::HashMap::new();
    let mut elements: Vec<Vec<u16>> = vec![identity.clone()];
    let mut labels: Vec<String> = vec!["e".to_string()];
    index.insert(identity, 0usize);
    let mut head = 0;
    while head < elements.len() {
        let current = elements[head].clone();
        for (gi, g) in gens16.iter().enumerate() {
            let prod = compose(&current, g);
            if !index.contains_key(&prod) {
                if elements.len() >= cap {
                    return Err(GroupError::ClosureCapExceeded(cap));
                }
                index.insert(prod.clone(), elements.len());
                let label = if head == 0 {
                    format!("g{gi}")
                } else {
                    format!("{}*g{gi}", labels[head])
                };
                elements.push(prod);
                labels.push(label);
            }
        }
        head += 1;
    }
    let order = elements.len();
    if order > MAX_TABLE_ORDER {
        return Err(GroupError::TooLarge(order));
    }
    let mut table = vec![0u16; order * order];
    for a in 0..order {
        for b in 0..order {
            let prod = compose(&elements[a], &elements[b]);
            table[a * order + b] = index[&prod] as u16;
        }
    }
    FiniteGroup::from_flat(order, table, labels)
}

/// Sorted element list of the subgroup generated by `gens`.
pub fn subgroup_generated(g: &FiniteGroup, gens: &[usize]) -> Vec<usize> {
    let mut member = vec![false; g.order()];
    member[0] = true;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in gens {
            for y in [g.mul(x, s), g.mul(x, g.inv(s))] {
                if !member[y] {
                    member[y] = true;
                    queue.push(y);
                }
            }
        }
    }
    (0..g.order()).filter(|&i| member[i]).collect()
}

/// Structural summary: center, commutator subgroup, orders.
#[derive(Clone, Debug)]
pub struct Structure {
    pub center: Vec<usize>,
    pub commutator: Vec<usize>,
    pub is_abelian: bool,
    pub element_orders: Vec<usize>,
}

pub fn structure(g: &FiniteGroup) -> Structure {
    let n = g.order();
    let center: Vec<usize> = (0..n)
        .filter(|&z| (0..n).all(|x| g.mul(z, x) == g.mul(x, z)))
        .collect();
    let mut comms: Vec<usize> = Vec::new();
    let mut seen = vec![false; n];
    for a in 0..n {
        for b in 0..n {
            let c = g.commutator(a, b);
            if !seen[c] {
                seen[c] = true;
                comms.push(c);
            }
        }
    }
    let commutator = subgroup_generated(g, &comms);
    let element_orders = (0..n).map(|x| g.element_order(x)).collect();
    Structure {
        is_abelian: center.len() == n,
        center,
        commutator,
        element_orders,
    }
}

/// Sylow p-subgroup data.
#[derive(Clone, Debug)]
pub struct SylowInfo {
    pub p: usize,
    pub subgroup: Vec<usize>,
    pub is_normal: bool,
    pub is_cyclic_of_order_p: bool,
    pub conjugate_count: usize,
}

/// Computes one Sylow p-subgroup by greedy closure extension, then its
/// conjugates. Requires p to divide the group order.
pub fn sylow_info(g: &FiniteGroup, p: usize) -> Result<SylowInfo, GroupError> {
    let n = g.order();
    if p < 2 || n % p != 0 {
        return Err(GroupError::BadArgument(format!(
            "{p} does not divide the group order {n}"
        )));
    }
    let mut target = 1usize;
    let mut m = n;
    while m % p == 0 {
        m /= p;
        target *= p;
    }
    let is_p_power = |k: usize| {
        let mut k = k;
        while k % p == 0 {
            k /= p;
        }
        k == 1
    };
    let mut subgroup = vec![0usize];
    while subgroup.len() < target {
        let mut extended = false;
        for x in 1..n {
            if subgroup.binary_search(&x).is_ok() {
                continue;
            }
            if !is_p_power(g.element_order(x)) {
                continue;
            }
            let mut gens: Vec<usize> = subgroup.iter().copied().filter(|&y| y != 0).collect();
            gens.push(x);
            let cand = subgroup_generated(g, &gens);
            if cand.len() <= target && is_p_power(cand.len()) {
                subgroup = cand;
                extended = true;
                break;
            }
        }
        if !extended {
            // Cannot happen in a genuine group: every p-subgroup below a
            // Sylow subgroup extends inside it.
            return Err(GroupError::BadArgument(
                "sylow extension stalled; table is not a group".into(),
            ));
        }
    }
    let mut conjugates = std::collections::BTreeSet::new();
    for h in 0..n {
        let mut img: Vec<usize> = subgroup.iter().map(|&x| g.conj(h, x)).collect();
        img.sort_unstable();
        conjugates.insert(img);
    }
    let conjugate_count = conjugates.len();
    Ok(SylowInfo {
        p,
        is_normal: conjugate_count == 1,
        is_cyclic_of_order_p: subgroup.len() == p,
        subgroup,
        conjugate_count,
    })
}

/// Quotient by a normal subgroup, with the projection homomorphism.
/// Cosets are indexed by their least element, identity coset first.
pub fn quotient(g: &FiniteGroup, n_subset: &[usize]) -> Result<(FiniteGroup, GroupHom), GroupError> {
    let n = g.order();
    let mut member = vec![false; n];
    for &x in n_subset {
        if x >= n {
            return Err(GroupError::BadArgument("element out of range".into()));
        }
        member[x] = true;
    }
    if !member[0] {
        return Err(GroupError::NotSubgroup);
    }
    for &a in n_subset {
        if !member[g.inv(a)] {
            return Err(GroupError::NotSubgroup);
        }
        for &b in n_subset {
            if !member[g.mul(a, b)] {
                return Err(GroupError::NotSubgroup);
            }
        }
    }
    for h in 0..n {
        for &x in n_subset {
            if !member[g.conj(h, x)] {
                return Err(GroupError::NotNormal);
            }
        }
    }
    // Least element of each coset g·N.
    let mut coset_rep = vec![usize::MAX; n];
    for x in 0..n {
        if coset_rep[x] != usize::MAX {
            continue;
        }
        let mut members: Vec<usize> = n_subset.iter().map(|&h| g.mul(x, h)).collect();
        members.sort_unstable();
        let rep = members[0];
        for m in members {
            coset_rep[m] = rep;
        }
    }
    let mut reps: Vec<usize> = (0..n).filter(|&x| coset_rep[x] == x).collect();
    reps.sort_unstable();
    debug_assert_eq!(reps[0], 0);
    let rep_index: std::collections::HashMap<usize, usize> =
        reps.iter().enumerate().map(|(i, &r)| (r, i)).collect();
    let q = reps.len();
    let mut table = vec![vec![0usize; q]; q];
    for (i, &a) in reps.iter().enumerate() {
        for (j, &b) in reps.iter().enumerate() {
            table[i][j] = rep_index[&coset_rep[g.mul(a, b)]];
        }
    }
    let labels = reps.iter().map(|&r| format!("[{}]", g.label(r))).collect();
    let quotient_group = FiniteGroup::from_table(table, Some(labels))?;
    let images = (0..n).map(|x| rep_index[&coset_rep[x]]).collect();
    Ok((quotient_group, GroupHom { images }))
}

/// A semidirect product Z_n ⋊ Ḡ where Ḡ acts on Z_n through units.
///
/// Elements are encoded as `z * |Ḡ| + ḡ`; the identity (0, ē) is index 0.
/// The product rule is (z1, g1)(z2, g2) = (z1 + twist[g1]·z2, g1·g2).
#[derive(Clone, Debug)]
pub struct SemidirectGroup {
    pub underlying: FiniteGroup,
    pub ring_modulus: u64,
    pub quotient: FiniteGroup,
    pub twist: Vec<u64>,
    pub projection: GroupHom,
    pub section: Vec<usize>,
}

impl SemidirectGroup {
    #[inline]
    pub fn pair_index(&self, z: u64, gbar: usize) -> usize {
        z as usize * self.quotient.order() + gbar
    }

    #[inline]
    pub fn index_pair(&self, idx: usize) -> (u64, usize) {
        let k = self.quotient.order();
        ((idx / k) as u64, idx % k)
    }
}

pub fn semidirect_zn(n: u64, gbar: &FiniteGroup, twist: &[u64]) -> Result<SemidirectGroup, GroupError> {
    let k = gbar.order();
    if n == 0 {
        return Err(GroupError::BadArgument("modulus must be positive".into()));
    }
    if twist.len() != k {
        return Err(GroupError::BadTwist(format!(
            "twist has {} entries for a quotient of order {k}",
            twist.len()
        )));
    }
    for (g, &t) in twist.iter().enumerate() {
        if t >= n || num_integer::gcd(t, n) != 1 {
            return Err(GroupError::BadTwist(format!(
                "twist value {t} at element {g} is not a unit mod {n}"
            )));
        }
    }
    if twist[0] != 1 % n {
        return Err(GroupError::BadTwist("twist must send the identity to 1".into()));
    }
    for a in 0..k {
        for b in 0..k {
            if twist[gbar.mul(a, b)] != (twist[a] * twist[b]) % n {
                return Err(GroupError::BadTwist(format!(
                    "twist is not multiplicative at ({a}, {b})"
                )));
            }
        }
    }
    let order = n as usize * k;
    if order > MAX_TABLE_ORDER {
        return Err(GroupError::TooLarge(order));
    }
    let mut table = vec![0u16; order * order];
    for z1 in 0..n {
        for g1 in 0..k {
            let a = z1 as usize * k + g1;
            let t = twist[g1];
            for z2 in 0..n {
                let z = (z1 + t * z2) % n;
                let row = z as usize * k;
                for g2 in 0..k {
                    table[a * order + (z2 as usize * k + g2)] = (row + gbar.mul(g1, g2)) as u16;
                }
            }
        }
    }
    let labels: Vec<String> = (0..order)
        .map(|i| format!("({},{})", i / k, gbar.label(i % k)))
        .collect();
    let underlying = FiniteGroup::from_flat(order, table, labels)?;
    let projection = GroupHom {
        images: (0..order).map(|i| i % k).collect(),
    };
    let section = (0..k).collect();
    Ok(SemidirectGroup {
        underlying,
        ring_modulus: n,
        quotient: gbar.clone(),
        twist: twist.to_vec(),
        projection,
        section,
    })
}

/// Serializable reference to a group that an independent checker can rebuild
/// from raw data: either a built-in catalog entry or a cyclic-kernel
/// semidirect product over one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GroupRef {
    Catalog {
        order: usize,
        index: usize,
    },
    SemidirectZn {
        modulus: u64,
        quotient_order: usize,
        quotient_index: usize,
        twist: Vec<u64>,
    },
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_table_roundtrip() {
        let g = cyclic(6);
        assert_eq!(g.order(), 6);
        assert_eq!(g.mul(2, 5), 1);
        assert_eq!(g.inv(2), 4);
        assert_eq!(g.element_order(2), 3);
        assert_eq!(g.element_order(1), 6);
        assert!(g.is_abelian());
        assert_eq!(g.exponent(), 6);
    }

    #[test]
    fn close_generators_s3() {
        // Two generators of S3 acting on 3 points: a 3-cycle and a swap.
        let g = close_generators(3, &[vec![1, 2, 0], vec![1, 0, 2]], 1000).unwrap();
        assert_eq!(g.order(), 6);
        assert!(!g.is_abelian());
        assert_eq!(g.label(0), "e");
        let dih = dihedral(6).unwrap();
        assert!(are_isomorphic(&g, &dih));
    }

    #[test]
    fn close_generators_rejects_bad_perm() {
        assert_eq!(
            close_generators(3, &[vec![0, 0, 1]], 10).unwrap_err(),
            GroupError::BadPermutation(0, 3)
        );
    }

    #[test]
    fn close_generators_cap() {
        assert_eq!(
            close_generators(5, &[vec![1, 2, 3, 4, 0]], 3).unwrap_err(),
            GroupError::ClosureCapExceeded(3)
        );
    }

    #[test]
    fn from_table_rejects_broken_identity() {
        let t = vec![vec![1, 0], vec![0, 1]];
        assert_eq!(FiniteGroup::from_table(t, None).unwrap_err(), GroupError::NoIdentity);
    }

    #[test]
    fn from_table_rejects_nonassociative() {
        // Z6 with an intercalate flip at rows/cols {1,4}: still Latin with
        // identity and two-sided inverses, but (2*2)*1 != 2*(2*1).
        let t = vec![
            vec![0, 1, 2, 3, 4, 5],
            vec![1, 5, 3, 4, 2, 0],
            vec![2, 3, 4, 5, 0, 1],
            vec![3, 4, 5, 0, 1, 2],
            vec![4, 2, 0, 1, 5, 3],
            vec![5, 0, 1, 2, 3, 4],
        ];
        match FiniteGroup::from_table(t, None) {
            Err(GroupError::NotAssociative(..)) => {}
            other => panic!("expected associativity failure, got {other:?}"),
        }
    }

    #[test]
    fn subgroup_generated_z6() {
        let g = cyclic(6);
        assert_eq!(subgroup_generated(&g, &[2]), vec![0, 2, 4]);
        assert_eq!(subgroup_generated(&g, &[2, 3]), vec![0, 1, 2, 3, 4, 5]);
        assert_eq!(subgroup_generated(&g, &[]), vec![0]);
    }

    #[test]
    fn structure_s3_and_d4() {
        let s3 = dihedral(6).unwrap();
        let st = structure(&s3);
        assert_eq!(st.center.len(), 1);
        assert_eq!(st.commutator.len(), 3);
        assert!(!st.is_abelian);

        let d4 = dihedral(8).unwrap();
        let st = structure(&d4);
        assert_eq!(st.center.len(), 2);
        assert_eq!(st.commutator.len(), 2);
    }

    #[test]
    fn sylow_a4() {
        let a4 = alternating(4).unwrap();
        let syl3 = sylow_info(&a4, 3).unwrap();
        assert_eq!(syl3.subgroup.len(), 3);
        assert!(!syl3.is_normal);
        assert_eq!(syl3.conjugate_count, 4);
        assert!(syl3.is_cyclic_of_order_p);
        let syl2 = sylow_info(&a4, 2).unwrap();
        assert_eq!(syl2.subgroup.len(), 4);
        assert!(syl2.is_normal);
        assert!(!syl2.is_cyclic_of_order_p);
    }

    #[test]
    fn sylow_rejects_bad_prime() {
        let g = cyclic(6);
        assert!(sylow_info(&g, 5).is_err());
    }

    #[test]
    fn quotient_s3_by_a3() {
        let s3 = close_generators(3, &[vec![1, 2, 0], vec![1, 0, 2]], 100).unwrap();
        let st = structure(&s3);
        let (q, pi) = quotient(&s3, &st.commutator).unwrap();
        assert_eq!(q.order(), 2);
        assert!(pi.is_homomorphism(&s3, &q));
    }

    #[test]
    fn quotient_rejects_non_normal() {
        let s3 = close_generators(3, &[vec![1, 2, 0], vec![1, 0, 2]], 100).unwrap();
        // A subgroup of order 2 in S3 is not normal.
        let t = (1..6).find(|&x| s3.element_order(x) == 2).unwrap();
        assert_eq!(quotient(&s3, &[0, t]).unwrap_err(), GroupError::NotNormal);
    }

    #[test]
    fn semidirect_zn_builds_s3() {
        let z2 = cyclic(2);
        let sd = semidirect_zn(3, &z2, &[1, 2]).unwrap();
        assert_eq!(sd.underlying.order(), 6);
        assert!(!sd.underlying.is_abelian());
        let s3 = dihedral(6).unwrap();
        assert!(are_isomorphic(&sd.underlying, &s3));
        assert!(sd.projection.is_homomorphism(&sd.underlying, &sd.quotient));
        // Section composed with projection is the identity on the quotient.
        for g in 0..2 {
            assert_eq!(sd.projection.apply(sd.section[g]), g);
        }
    }

    #[test]
    fn semidirect_zn_trivial_twist_is_direct() {
        let z4 = cyclic(4);
        let sd = semidirect_zn(5, &z4, &[1, 1, 1, 1]).unwrap();
        assert!(sd.underlying.is_abelian());
        assert!(are_isomorphic(&sd.underlying, &cyclic(20)));
    }

    #[test]
    fn semidirect_zn_order21() {
        let z3 = cyclic(3);
        // 2 has multiplicative order 3 mod 7.
        let sd = semidirect_zn(7, &z3, &[1, 2, 4]).unwrap();
        assert_eq!(sd.underlying.order(), 21);
        assert!(!sd.underlying.is_abelian());
        assert_eq!(structure(&sd.underlying).center.len(), 1);
    }

    #[test]
    fn semidirect_zn_rejects_bad_twists() {
        let z2 = cyclic(2);
        assert!(matches!(
            semidirect_zn(4, &z2, &[1, 2]),
            Err(GroupError::BadTwist(_))
        ));
        assert!(matches!(
            semidirect_zn(5, &z2, &[1, 3]),
            Err(GroupError::BadTwist(_))
        ));
        assert!(matches!(
            semidirect_zn(5, &z2, &[2, 4]),
            Err(GroupError::BadTwist(_))
        ));
    }
}

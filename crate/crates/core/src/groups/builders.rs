//! Constructors for the standard families and for semidirect products.

use super::{close_generators, FiniteGroup, GroupError, MAX_TABLE_ORDER};

/// Z_n with elements 0..n and addition.
pub fn cyclic(n: usize) -> FiniteGroup {
    assert!(n >= 1 && n <= MAX_TABLE_ORDER);
    let mut table = vec![0u16; n * n];
    for a in 0..n {
        for b in 0..n {
            table[a * n + b] = ((a + b) % n) as u16;
        }
    }
    let labels = (0..n).map(|i| i.to_string()).collect();
    FiniteGroup::from_flat(n, table, labels).expect("cyclic table is a group")
}

/// Direct product with elements indexed as `i * |B| + j`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup, GroupError> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    if n > MAX_TABLE_ORDER {
        return Err(GroupError::TooLarge(n));
    }
    let mut table = vec![0u16; n * n];
    for i1 in 0..na {
        for j1 in 0..nb {
            let x = i1 * nb + j1;
            for i2 in 0..na {
                let row = a.mul(i1, i2) * nb;
                for j2 in 0..nb {
                    table[x * n + (i2 * nb + j2)] = (row + b.mul(j1, j2)) as u16;
                }
            }
        }
    }
    let labels = (0..n)
        .map(|x| format!("({},{})", a.label(x / nb), b.label(x % nb)))
        .collect();
    FiniteGroup::from_flat(n, table, labels)
}

/// Abelian group as a product of cyclic factors.
pub fn abelian(factors: &[usize]) -> Result<FiniteGroup, GroupError> {
    if factors.is_empty() {
        return Ok(cyclic(1));
    }
    let mut g = cyclic(factors[0]);
    for &f in &factors[1..] {
        g = direct_product(&g, &cyclic(f))?;
    }
    Ok(g)
}

/// Dihedral group of the given (even) order 2m: rotations first, then
/// reflections. Index `i` is r^i for i < m, and r^(i-m)·s otherwise.
pub fn dihedral(order: usize) -> Result<FiniteGroup, GroupError> {
    if order < 2 || order % 2 != 0 {
        return Err(GroupError::BadArgument(format!(
            "dihedral order must be even and positive, got {order}"
        )));
    }
    if order > MAX_TABLE_ORDER {
        return Err(GroupError::TooLarge(order));
    }
    let m = order / 2;
    let idx = |i: usize, j: usize| j * m + i;
    let mut table = vec![0u16; order * order];
    for i1 in 0..m {
        for j1 in 0..2 {
            let x = idx(i1, j1);
            for i2 in 0..m {
                for j2 in 0..2 {
                    // (r^i1 s^j1)(r^i2 s^j2) = r^(i1 ± i2) s^(j1+j2)
                    let i = if j1 == 0 { (i1 + i2) % m } else { (i1 + m - i2 % m) % m };
                    table[x * order + idx(i2, j2)] = idx(i, (j1 + j2) % 2) as u16;
                }
            }
        }
    }
    let labels = (0..order)
        .map(|x| {
            let (i, j) = (x % m, x / m);
            match (i, j) {
                (0, 0) => "e".to_string(),
                (_, 0) => format!("r{i}"),
                (0, _) => "s".to_string(),
                (_, _) => format!("r{i}s"),
            }
        })
        .collect();
    FiniteGroup::from_flat(order, table, labels)
}

/// Dicyclic group of order 4m: ⟨a, b | a^{2m} = e, b^2 = a^m, bab^{-1} = a^{-1}⟩.
/// Order 8 gives the quaternion group.
pub fn dicyclic(order: usize) -> Result<FiniteGroup, GroupError> {
    if order < 4 || order % 4 != 0 {
        return Err(GroupError::BadArgument(format!(
            "dicyclic order must be a positive multiple of 4, got {order}"
        )));
    }
    if order > MAX_TABLE_ORDER {
        return Err(GroupError::TooLarge(order));
    }
    let m2 = order / 2; // order of a
    let m = order / 4;
    let idx = |i: usize, j: usize| j * m2 + i;
    let mut table = vec![0u16; order * order];
    for i1 in 0..m2 {
        for j1 in 0..2 {
            let x = idx(i1, j1);
            for i2 in 0..m2 {
                for j2 in 0..2 {
                    // j1 = 0: a^(i1+i2) b^j2
                    // j1 = 1, j2 = 0: a^(i1-i2) b
                    // j1 = 1, j2 = 1: a^(i1-i2+m) since b^2 = a^m
                    let (i, j) = if j1 == 0 {
                        ((i1 + i2) % m2, j2)
                    } else if j2 == 0 {
                        ((i1 + m2 - i2) % m2, 1)
                    } else {
                        ((i1 + m2 - i2 + m) % m2, 0)
                    };
                    table[x * order + idx(i2, j2)] = idx(i, j) as u16;
                }
            }
        }
    }
    let labels = (0..order)
        .map(|x| {
            let (i, j) = (x % m2, x / m2);
            match (i, j) {
                (0, 0) => "e".to_string(),
                (_, 0) => format!("a{i}"),
                (0, _) => "b".to_string(),
                (_, _) => format!("a{i}b"),
            }
        })
        .collect();
    FiniteGroup::from_flat(order, table, labels)
}

/// Alternating group on 4 or 5 points, built from permutations.
pub fn alternating(n: usize) -> Result<FiniteGroup, GroupError> {
    match n {
        4 => close_generators(4, &[vec![1, 2, 0, 3], vec![0, 2, 3, 1]], 24),
        5 => close_generators(5, &[vec![1, 2, 3, 4, 0], vec![1, 2, 0, 3, 4]], 120),
        _ => Err(GroupError::BadArgument(format!(
            "only alternating groups on 4 and 5 points are built in, got {n}"
        ))),
    }
}

/// Semidirect product N ⋊ H for an action given elementwise: `action[h]` is
/// the automorphism of N applied when the H-part h passes a right factor.
/// Elements are indexed `n * |H| + h`, so (e, e) is 0.
pub fn semidirect(
    n_group: &FiniteGroup,
    h_group: &FiniteGroup,
    action: &[Vec<usize>],
) -> Result<FiniteGroup, GroupError> {
    let nn = n_group.order();
    let nh = h_group.order();
    if action.len() != nh {
        return Err(GroupError::BadArgument(format!(
            "action has {} maps for an acting group of order {nh}",
            action.len()
        )));
    }
    for (h, alpha) in action.iter().enumerate() {
        let mut seen = vec![false; nn];
        if alpha.len() != nn {
            return Err(GroupError::BadPermutation(h, nn));
        }
        for &v in alpha {
            if v >= nn || seen[v] {
                return Err(GroupError::BadPermutation(h, nn));
            }
            seen[v] = true;
        }
        if alpha[0] != 0 {
            return Err(GroupError::BadArgument(format!(
                "action of element {h} does not fix the identity"
            )));
        }
        for a in 0..nn {
            for b in 0..nn {
                if alpha[n_group.mul(a, b)] != n_group.mul(alpha[a], alpha[b]) {
                    return Err(GroupError::BadArgument(format!(
                        "action of element {h} is not an automorphism"
                    )));
                }
            }
        }
    }
    if action[0] != (0..nn).collect::<Vec<_>>() {
        return Err(GroupError::BadArgument(
            "action of the identity must be trivial".into(),
        ));
    }
    // φ(h1 h2) = φ(h1) ∘ φ(h2), composing left map outermost.
    for h1 in 0..nh {
        for h2 in 0..nh {
            let lhs = &action[h_group.mul(h1, h2)];
            let (a1, a2) = (&action[h1], &action[h2]);
            if (0..nn).any(|x| lhs[x] != a1[a2[x]]) {
                return Err(GroupError::BadArgument(format!(
                    "action is not a homomorphism at ({h1}, {h2})"
                )));
            }
        }
    }
    let order = nn * nh;
    if order > MAX_TABLE_ORDER {
        return Err(GroupError::TooLarge(order));
    }
    let mut table = vec![0u16; order * order];
    for n1 in 0..nn {
        for h1 in 0..nh {
            let x = n1 * nh + h1;
            let alpha = &action[h1];
            for n2 in 0..nn {
                let row = n_group.mul(n1, alpha[n2]) * nh;
                for h2 in 0..nh {
                    table[x * order + (n2 * nh + h2)] = (row + h_group.mul(h1, h2)) as u16;
                }
            }
        }
    }
    let labels = (0..order)
        .map(|x| format!("({},{})", n_group.label(x / nh), h_group.label(x % nh)))
        .collect();
    FiniteGroup::from_flat(order, table, labels)
}

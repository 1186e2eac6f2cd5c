//! Linear characters: homomorphisms from a group into a cyclic group,
//! recorded as exponents of a primitive root of unity.

use super::iso::minimal_generating_sequence;
use super::{quotient, structure, FiniteGroup};
use serde::{Deserialize, Serialize};

/// A linear character χ with values χ(g) = ζ^exponents[g] for ζ a primitive
/// `modulus`-th root of unity. The modulus equals the order of the image,
/// so the exponents always generate Z_modulus.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearCharacter {
    pub modulus: u64,
    pub exponents: Vec<u64>,
}

impl LinearCharacter {
    pub fn trivial(order: usize) -> Self {
        LinearCharacter {
            modulus: 1,
            exponents: vec![0; order],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.modulus == 1
    }

    /// χ(g) as an exponent in Z_modulus.
    pub fn exponent(&self, g: usize) -> u64 {
        self.exponents[g]
    }

    /// χ(g) = 1
    pub fn is_trivial_on(&self, g: usize) -> bool {
        self.exponents[g] == 0
    }

    /// χ(g) = -1, i.e. the exponent is modulus/2 for even modulus.
    pub fn is_minus_one_on(&self, g: usize) -> bool {
        self.modulus % 2 == 0 && self.exponents[g] == self.modulus / 2
    }

    /// Multiplicative order of χ(g).
    pub fn value_order(&self, g: usize) -> u64 {
        self.modulus / num_integer::gcd(self.modulus, self.exponents[g])
    }

    pub fn check(&self, g: &FiniteGroup) -> bool {
        if self.exponents.len() != g.order() || self.modulus == 0 {
            return false;
        }
        for a in 0..g.order() {
            for b in 0..g.order() {
                if (self.exponents[a] + self.exponents[b]) % self.modulus
                    != self.exponents[g.mul(a, b)]
                {
                    return false;
                }
            }
        }
        let gcd_all = self
            .exponents
            .iter()
            .fold(self.modulus, |acc, &e| num_integer::gcd(acc, e));
        gcd_all == 1 || self.modulus == 1
    }
}

/// All linear characters of the group, trivial character first, then sorted
/// by (modulus, exponents). There are exactly |G/[G,G]| of them.
pub fn linear_characters(g: &FiniteGroup) -> Vec<LinearCharacter> {
    let st = structure(g);
    let (ab, pi) = quotient(g, &st.commutator).expect("commutator subgroup is normal");
    let e = ab.exponent() as u64;
    let gens = minimal_generating_sequence(&ab);
    // Homomorphisms ab → Z_e: the image of a generator of order d must be a
    // multiple of e/d; consistency over the whole table is then checked by
    // breadth-first propagation.
    let mut homs: Vec<Vec<u64>> = Vec::new();
    let mut images: Vec<u64> = Vec::new();
    collect_homs(&ab, &gens, e, &mut images, &mut homs);
    let mut chars: Vec<LinearCharacter> = homs
        .into_iter()
        .map(|exps| {
            let g_all = exps.iter().fold(e, |acc, &x| num_integer::gcd(acc, x));
            let m = if g_all == 0 { 1 } else { e / g_all };
            let scale = e / m.max(1);
            let exponents = (0..g.order())
                .map(|x| {
                    if m <= 1 {
                        0
                    } else {
                        exps[pi.apply(x)] / scale
                    }
                })
                .collect();
            LinearCharacter {
                modulus: m.max(1),
                exponents,
            }
        })
        .collect();
    chars.sort_by(|a, b| (a.modulus, &a.exponents).cmp(&(b.modulus, &b.exponents)));
    chars.dedup();
    chars
}

fn collect_homs(
    ab: &FiniteGroup,
    gens: &[usize],
    e: u64,
    images: &mut Vec<u64>,
    out: &mut Vec<Vec<u64>>,
) {
    let depth = images.len();
    if depth == gens.len() {
        if let Some(exps) = propagate_hom(ab, gens, images, e) {
            out.push(exps);
        }
        return;
    }
    let d = ab.element_order(gens[depth]) as u64;
    let step = e / d;
    let mut v = 0;
    while v < e {
        images.push(v);
        collect_homs(ab, gens, e, images, out);
        images.pop();
        v += step;
    }
}

fn propagate_hom(ab: &FiniteGroup, gens: &[usize], images: &[u64], e: u64) -> Option<Vec<u64>> {
    const UNSET: u64 = u64::MAX;
    let n = ab.order();
    let mut map = vec![UNSET; n];
    map[0] = 0;
    let mut queue = vec![0usize];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&ga, &img) in gens.iter().zip(images.iter()) {
            let y = ab.mul(x, ga);
            let fy = (map[x] + img) % e;
            if map[y] == UNSET {
                map[y] = fy;
                queue.push(y);
            } else if map[y] != fy {
                return None;
            }
        }
    }
    debug_assert_eq!(queue.len(), n);
    Some(map)
}

//! Voltage machinery for lifting hamiltonian cycles from a quotient Cayley
//! graph to a cyclic extension.
//!
//! A closed walk in Cay(Ḡ; S̄) picks up a "voltage" in the kernel Z_n of the
//! extension Z_n ⋊ Ḡ: each traversal of a lifted generator (z, s̄)
//! contributes ±χ(prefix)·z, where χ is the linear character of Ḡ that
//! realises the twist. When the total voltage generates Z_n, the walk lifts
//! to a hamiltonian cycle of the extension repeated n times. Everything in
//! this module works either symbolically (coefficients in Z[ζ_m], one
//! unknown z per generator) or concretely (values in Z_p).

pub mod arith;
pub mod cyclotomic;

use crate::groups::{FiniteGroup, LinearCharacter, SemidirectGroup};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};
use thiserror::Error;

pub use arith::{
    element_of_order, factorize, is_prime_u64, largest_prime_factor, least_prime_factor,
    primes_in_range, primitive_root,
};
pub use cyclotomic::{euler_phi, CycInt, CycRing};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum VoltageError {
    #[error("walk does not return to the identity")]
    OpenWalk,
    #[error("walk step is not in the symmetrised connection set")]
    BadStep,
    #[error("a residual prime does not fit in 64 bits")]
    ResidualOverflow,
}

/// Rings a voltage can live in: symbolic Z[ζ_m] or concrete Z_p.
pub trait VoltageRing {
    type Elem: Clone + PartialEq + std::fmt::Debug;
    fn zero(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// The character value ζ^exponent in this ring.
    fn char_value(&self, exponent: u64) -> Self::Elem;
}

impl VoltageRing for CycRing {
    type Elem = CycInt;
    fn zero(&self) -> CycInt {
        CycRing::zero(self)
    }
    fn is_zero(&self, a: &CycInt) -> bool {
        CycRing::is_zero(self, a)
    }
    fn add(&self, a: &CycInt, b: &CycInt) -> CycInt {
        CycRing::add(self, a, b)
    }
    fn sub(&self, a: &CycInt, b: &CycInt) -> CycInt {
        CycRing::sub(self, a, b)
    }
    fn mul(&self, a: &CycInt, b: &CycInt) -> CycInt {
        CycRing::mul(self, a, b)
    }
    fn char_value(&self, exponent: u64) -> CycInt {
        self.zeta_pow(exponent)
    }
}

/// Z_p with a distinguished root of unity of order m, so that character
/// exponents land on concrete units.
#[derive(Clone, Debug)]
pub struct ModRing {
    pub p: u64,
    pub root: u64,
}

impl ModRing {
    /// Requires p ≡ 1 (mod m); picks the canonical order-m root derived
    /// from the least primitive root.
    pub fn for_character(p: u64, m: u64) -> Self {
        ModRing {
            p,
            root: element_of_order(m, p),
        }
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero mod {}", self.p);
        arith::pow_mod_u64(a, self.p - 2, self.p)
    }
}

impl VoltageRing for ModRing {
    type Elem = u64;
    fn zero(&self) -> u64 {
        0
    }
    fn is_zero(&self, a: &u64) -> bool {
        a % self.p == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        (a + b) % self.p
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        (a % self.p + self.p - b % self.p) % self.p
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        arith::mul_mod_u64(*a, *b, self.p)
    }
    fn char_value(&self, exponent: u64) -> u64 {
        arith::pow_mod_u64(self.root, exponent, self.p)
    }
}

/// One step of a walk: an index into the generator-representative list,
/// traversed forwards or backwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Step {
    pub gen: usize,
    pub inverse: bool,
}

impl Step {
    pub fn fwd(gen: usize) -> Self {
        Step {
            gen,
            inverse: false,
        }
    }
    pub fn inv(gen: usize) -> Self {
        Step { gen, inverse: true }
    }
}

/// Rewrites a word of group elements (each a generator or an inverse of
/// one) as steps over the representative list. Involutions count as
/// forward steps.
pub fn word_to_steps(g: &FiniteGroup, gens: &[usize], word: &[usize]) -> Option<Vec<Step>> {
    word.iter()
        .map(|&t| {
            for (j, &s) in gens.iter().enumerate() {
                if t == s {
                    return Some(Step::fwd(j));
                }
                if t == g.inv(s) {
                    return Some(Step::inv(j));
                }
            }
            None
        })
        .collect()
}

/// Per-generator voltage coefficients of a closed walk: the walk voltage
/// under lift z is Σ_j coeff[j]·z_j. Forward traversal of generator j at
/// prefix P contributes +χ(P); backward traversal contributes -χ(P·s_j⁻¹)
/// measured after stepping back.
pub fn walk_voltage_coeffs<R: VoltageRing>(
    ring: &R,
    gbar: &FiniteGroup,
    chi: &LinearCharacter,
    gens: &[usize],
    steps: &[Step],
) -> Result<Vec<R::Elem>, VoltageError> {
    if steps.iter().any(|s| s.gen >= gens.len()) {
        return Err(VoltageError::BadStep);
    }
    let mut coeffs = vec![ring.zero(); gens.len()];
    let mut prefix = 0usize;
    for step in steps {
        let s = gens[step.gen];
        if step.inverse {
            prefix = gbar.mul(prefix, gbar.inv(s));
            let value = ring.char_value(chi.exponent(prefix));
            coeffs[step.gen] = ring.sub(&coeffs[step.gen], &value);
        } else {
            let value = ring.char_value(chi.exponent(prefix));
            coeffs[step.gen] = ring.add(&coeffs[step.gen], &value);
            prefix = gbar.mul(prefix, s);
        }
    }
    if prefix != 0 {
        return Err(VoltageError::OpenWalk);
    }
    Ok(coeffs)
}

/// Voltage of a closed walk under an explicit lift assignment, accumulated
/// directly along the walk rather than through coefficients.
pub fn walk_voltage_value<R: VoltageRing>(
    ring: &R,
    gbar: &FiniteGroup,
    chi: &LinearCharacter,
    gens: &[usize],
    z: &[R::Elem],
    steps: &[Step],
) -> Result<R::Elem, VoltageError> {
    if steps.iter().any(|s| s.gen >= gens.len()) {
        return Err(VoltageError::BadStep);
    }
    assert_eq!(z.len(), gens.len());
    let mut acc = ring.zero();
    let mut prefix = 0usize;
    for step in steps {
        let s = gens[step.gen];
        if step.inverse {
            prefix = gbar.mul(prefix, gbar.inv(s));
            let contrib = ring.mul(&ring.char_value(chi.exponent(prefix)), &z[step.gen]);
            acc = ring.sub(&acc, &contrib);
        } else {
            let contrib = ring.mul(&ring.char_value(chi.exponent(prefix)), &z[step.gen]);
            acc = ring.add(&acc, &contrib);
            prefix = gbar.mul(prefix, s);
        }
    }
    if prefix != 0 {
        return Err(VoltageError::OpenWalk);
    }
    Ok(acc)
}

/// How the generator representatives split for a given character.
///
/// * `a_list`: involutions with trivial character value; any lift of order
///   two has kernel part zero, so z is pinned to 0.
/// * `b0`: the first representative with a nontrivial character value, if
///   any; conjugating by a kernel element shifts its z freely, so it is
///   normalised to 0.
/// * `b_list`: everything else; their z values are genuinely free.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenPartition {
    pub a_list: Vec<usize>,
    pub b0: Option<usize>,
    pub b_list: Vec<usize>,
}

pub fn partition_generators(
    gbar: &FiniteGroup,
    gens: &[usize],
    chi: &LinearCharacter,
) -> GenPartition {
    let mut part = GenPartition {
        a_list: vec![],
        b0: None,
        b_list: vec![],
    };
    for (j, &s) in gens.iter().enumerate() {
        let trivial = chi.exponent(s) == 0;
        if trivial && gbar.element_order(s) == 2 {
            part.a_list.push(j);
        } else if !trivial && part.b0.is_none() {
            part.b0 = Some(j);
        } else {
            part.b_list.push(j);
        }
    }
    part
}

/// Symbolic voltage matrix: one row per sampled quotient cycle, one column
/// per free generator (the `b_list`), with pinned generators' z set to 0.
pub fn voltage_matrix_rows(
    ring: &CycRing,
    gbar: &FiniteGroup,
    chi: &LinearCharacter,
    gens: &[usize],
    part: &GenPartition,
    cycles: &[Vec<Step>],
) -> Result<Vec<Vec<CycInt>>, VoltageError> {
    let mut rows = Vec::with_capacity(cycles.len());
    for steps in cycles {
        let coeffs = walk_voltage_coeffs(ring, gbar, chi, gens, steps)?;
        rows.push(part.b_list.iter().map(|&j| coeffs[j].clone()).collect());
    }
    Ok(rows)
}

/// Rank of a matrix over Z[ζ_m] by division-free elimination.
fn ring_rank(ring: &CycRing, rows: &[Vec<CycInt>]) -> usize {
    let mut mat: Vec<Vec<CycInt>> = rows.to_vec();
    let cols = mat.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for col in 0..cols {
        if rank == mat.len() {
            break;
        }
        let Some(pr) = (rank..mat.len()).find(|&r| !ring.is_zero(&mat[r][col])) else {
            continue;
        };
        mat.swap(rank, pr);
        let pivot = mat[rank][col].clone();
        for r in rank + 1..mat.len() {
            if ring.is_zero(&mat[r][col]) {
                continue;
            }
            let factor = mat[r][col].clone();
            for c in col..cols {
                mat[r][c] = ring.sub(
                    &ring.mul(&mat[r][c], &pivot),
                    &ring.mul(&mat[rank][c], &factor),
                );
            }
        }
        rank += 1;
    }
    rank
}

/// Fraction-free determinant over Z[ζ_m] (Bareiss; exact interior
/// divisions via the conjugate-product trick).
pub fn cyc_det_bareiss(ring: &CycRing, mat: &[Vec<CycInt>]) -> CycInt {
    let n = mat.len();
    if n == 0 {
        return ring.one();
    }
    let mut mat: Vec<Vec<CycInt>> = mat.to_vec();
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(&mat[k][k]) {
            match (k + 1..n).find(|&r| !ring.is_zero(&mat[r][k])) {
                Some(r) => {
                    mat.swap(k, r);
                    negate = !negate;
                }
                None => return ring.zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = ring.sub(
                    &ring.mul(&mat[i][j], &mat[k][k]),
                    &ring.mul(&mat[i][k], &mat[k][j]),
                );
                mat[i][j] = ring.div_exact(&num, &prev);
            }
            mat[i][k] = CycRing::zero(ring);
        }
        prev = mat[k][k].clone();
    }
    let det = mat[n - 1][n - 1].clone();
    if negate {
        ring.neg(&det)
    } else {
        det
    }
}

/// Determinant by cofactor expansion along the first column. Kept entirely
/// separate from the Bareiss route so the two can cross-check each other.
pub fn cyc_det_cofactor(ring: &CycRing, mat: &[Vec<CycInt>]) -> CycInt {
    let n = mat.len();
    if n == 0 {
        return ring.one();
    }
    if n == 1 {
        return mat[0][0].clone();
    }
    let mut acc = CycRing::zero(ring);
    for i in 0..n {
        if ring.is_zero(&mat[i][0]) {
            continue;
        }
        let minor: Vec<Vec<CycInt>> = (0..n)
            .filter(|&r| r != i)
            .map(|r| mat[r][1..].to_vec())
            .collect();
        let term = ring.mul(&mat[i][0], &cyc_det_cofactor(ring, &minor));
        acc = if i % 2 == 0 {
            ring.add(&acc, &term)
        } else {
            ring.sub(&acc, &term)
        };
    }
    acc
}

#[derive(Clone, Debug)]
pub struct DetSelection {
    /// Indices of the chosen rows, in selection order.
    pub rows: Vec<usize>,
    pub det: CycInt,
}

/// Greedily picks n rows of full rank, scanning in the order given by
/// `order`, and returns their determinant computed by both routes.
/// Panics if the routes disagree (that would be an arithmetic bug, not a
/// property of the input).
fn select_det(
    ring: &CycRing,
    rows: &[Vec<CycInt>],
    n: usize,
    order: impl Iterator<Item = usize>,
) -> Option<DetSelection> {
    let mut chosen_idx: Vec<usize> = vec![];
    let mut chosen: Vec<Vec<CycInt>> = vec![];
    for r in order {
        if chosen.len() == n {
            break;
        }
        let mut trial = chosen.clone();
        trial.push(rows[r].clone());
        if ring_rank(ring, &trial) == trial.len() {
            chosen = trial;
            chosen_idx.push(r);
        }
    }
    if chosen.len() < n {
        return None;
    }
    let det = cyc_det_bareiss(ring, &chosen);
    let check = cyc_det_cofactor(ring, &chosen);
    assert_eq!(det, check, "determinant routes disagree on rows {chosen_idx:?}");
    assert!(!ring.is_zero(&det), "full-rank selection with zero determinant");
    Some(DetSelection {
        rows: chosen_idx,
        det,
    })
}

/// First full-rank selection in natural row order.
pub fn find_nonzero_det(ring: &CycRing, rows: &[Vec<CycInt>], n: usize) -> Option<DetSelection> {
    if rows.iter().any(|r| r.len() != n) {
        return None;
    }
    select_det(ring, rows, n, 0..rows.len())
}

/// Up to `want` distinct full-rank selections, obtained by rotating the
/// scan order. More selections tighten the residual-prime gcd.
pub fn det_selections(
    ring: &CycRing,
    rows: &[Vec<CycInt>],
    n: usize,
    want: usize,
) -> Vec<DetSelection> {
    if rows.iter().any(|r| r.len() != n) || rows.len() < n {
        return vec![];
    }
    let mut seen: Vec<Vec<usize>> = vec![];
    let mut out = vec![];
    for start in 0..rows.len() {
        if out.len() >= want {
            break;
        }
        let order = (0..rows.len()).map(|i| (start + i) % rows.len());
        if let Some(sel) = select_det(ring, rows, n, order) {
            let mut key = sel.rows.clone();
            key.sort_unstable();
            if !seen.contains(&key) {
                seen.push(key);
                out.push(sel);
            }
        }
    }
    out
}

/// gcd of the absolute values, with gcd(0, x) = x.
pub fn gcd_norms(norms: &[BigInt]) -> BigInt {
    let mut g = BigInt::zero();
    for n in norms {
        g = g.gcd(n);
    }
    g.abs()
}

/// Prime divisors of `bound` that the symbolic argument cannot exclude:
/// larger than every prime factor of k, coprime to k, and ≡ 1 (mod m) so
/// that the character actually has values in Z_p. Ascending.
pub fn residual_primes(bound: &BigInt, k: u64, m: u64) -> Result<Vec<u64>, VoltageError> {
    assert!(!bound.is_zero(), "residual primes of zero are everything");
    let lpf = if k >= 2 { largest_prime_factor(k) } else { 1 };
    let mut out = vec![];
    for (p, _) in factorize(bound) {
        let Some(p) = p.to_u64() else {
            return Err(VoltageError::ResidualOverflow);
        };
        if p > lpf && k % p != 0 && (p - 1) % m == 0 {
            out.push(p);
        }
    }
    Ok(out)
}

/// Element index of the lift (z, s̄) in the extension.
pub fn lift_element(sd: &SemidirectGroup, z: u64, sbar: usize) -> usize {
    sd.pair_index(z % sd.ring_modulus, sbar)
}

/// Concrete connection set obtained by lifting each representative.
pub fn lift_conn(sd: &SemidirectGroup, gens_bar: &[usize], z: &[u64]) -> Vec<usize> {
    assert_eq!(gens_bar.len(), z.len());
    gens_bar
        .iter()
        .zip(z)
        .map(|(&s, &zv)| lift_element(sd, zv, s))
        .collect()
}

/// Traverses `steps` in the extension, using the lifted generators,
/// starting at the identity, `repeats` times over. Returns the visited
/// vertices in order (length repeats·steps.len()); closure back to the
/// identity is the caller's concern via cycle validation.
pub fn lift_walk(
    sd: &SemidirectGroup,
    gens_bar: &[usize],
    z: &[u64],
    steps: &[Step],
    repeats: u64,
) -> Vec<u32> {
    assert_eq!(gens_bar.len(), z.len());
    let g = &sd.underlying;
    let lifted: Vec<usize> = lift_conn(sd, gens_bar, z);
    let mut out = Vec::with_capacity(steps.len() * repeats as usize);
    let mut cur = 0usize;
    for _ in 0..repeats {
        for step in steps {
            out.push(cur as u32);
            let t = lifted[step.gen];
            cur = if step.inverse {
                g.mul(cur, g.inv(t))
            } else {
                g.mul(cur, t)
            };
        }
    }
    out
}

/// The classical lift: a quotient hamiltonian cycle repeated once per
/// kernel element. When the walk's voltage generates the kernel this is a
/// hamiltonian cycle of the extension; callers must validate it against
/// the concrete graph regardless.
pub fn fgl_lift(sd: &SemidirectGroup, gens_bar: &[usize], z: &[u64], steps: &[Step]) -> Vec<u32> {
    lift_walk(sd, gens_bar, z, steps, sd.ring_modulus)
}

/// Twist table realising a character in Z_p^*: element g acts on the
/// kernel by multiplication with root^χ(g). Requires p ≡ 1 (mod m).
pub fn character_twist(gbar: &FiniteGroup, chi: &LinearCharacter, p: u64) -> Vec<u64> {
    let ring = ModRing::for_character(p, chi.modulus);
    (0..gbar.order())
        .map(|g| ring.char_value(chi.exponent(g)))
        .collect()
}

/// All kernel assignments to the free generators with the leading nonzero
/// entry scaled to 1: one representative per orbit of the Z_p^* scaling
/// action, (p^n - 1)/(p - 1) vectors in total.
pub fn normalized_lifts(free: usize, p: u64) -> Vec<Vec<u64>> {
    let mut out = vec![];
    for lead in 0..free {
        let tail = free - lead - 1;
        let mut counters = vec![0u64; tail];
        loop {
            let mut v = vec![0u64; free];
            v[lead] = 1;
            for (i, &c) in counters.iter().enumerate() {
                v[lead + 1 + i] = c;
            }
            out.push(v);
            let mut i = tail;
            loop {
                if i == 0 {
                    break;
                }
                counters[i - 1] += 1;
                if counters[i - 1] < p {
                    break;
                }
                counters[i - 1] = 0;
                i -= 1;
            }
            if i == 0 {
                break;
            }
        }
    }
    out
}

/// Assembles a full z-vector over all representatives from values on the
/// free (`b_list`) positions; pinned positions get 0.
pub fn assemble_z(total: usize, part: &GenPartition, free: &[u64]) -> Vec<u64> {
    assert_eq!(free.len(), part.b_list.len());
    let mut z = vec![0u64; total];
    for (slot, &j) in part.b_list.iter().enumerate() {
        z[j] = free[slot];
    }
    z
}

/// Whether the lifted connection set generates the full extension
/// Z_p ⋊ Ḡ, by the complement criterion: given that the quotient images
/// generate Ḡ, the lift fails to generate exactly when some w ∈ Z_p has
/// z_j ≡ w·(1 - τ(s̄_j)) for every j, i.e. the lifts all lie in one
/// complement of the kernel.
pub fn lift_generates(ring: &ModRing, twist: &[u64], z: &[u64]) -> bool {
    assert_eq!(twist.len(), z.len());
    let p = ring.p;
    let mut w: Option<u64> = None;
    for (&t, &zv) in twist.iter().zip(z) {
        let t = t % p;
        let zv = zv % p;
        if t == 1 {
            if zv != 0 {
                return true;
            }
        } else {
            let wj = ring.mul(&zv, &ring.inv((1 + p - t) % p));
            match w {
                Some(prev) if prev != wj => return true,
                _ => w = Some(wj),
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::cayley_graph;
    use crate::groups::{
        abelian, cyclic, dihedral, linear_characters, semidirect_zn, subgroup_generated,
    };
    use crate::hamilton::validate_cycle;
    use num_bigint::BigInt;

    /// The identity character of Z_n: χ(g) = ζ^g.
    fn identity_char(n: usize) -> LinearCharacter {
        let chi = LinearCharacter {
            modulus: n as u64,
            exponents: (0..n as u64).collect(),
        };
        assert!(chi.check(&cyclic(n)));
        chi
    }

    fn cyc(ring: &CycRing, coeffs: &[i64]) -> CycInt {
        ring.reduce(coeffs.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn steps_from_words() {
        let g = cyclic(5);
        let gens = vec![1usize, 2];
        // 4 = inverse of 1, 3 = inverse of 2.
        let steps = word_to_steps(&g, &gens, &[1, 2, 4, 3]).unwrap();
        assert_eq!(
            steps,
            vec![Step::fwd(0), Step::fwd(1), Step::inv(0), Step::inv(1)]
        );
        assert!(word_to_steps(&g, &gens, &[1, 0]).is_none());
    }

    #[test]
    fn involution_words_are_forward() {
        let g = dihedral(6).unwrap();
        let s = 3; // a reflection
        let steps = word_to_steps(&g, &[s], &[s, s]).unwrap();
        assert!(steps.iter().all(|st| !st.inverse));
    }

    #[test]
    fn full_cycle_voltage_vanishes_for_faithful_character() {
        // Around Z6 with the faithful character: Σ ζ^i = 0.
        let g = cyclic(6);
        let chi = identity_char(6);
        assert_eq!(chi.modulus, 6);
        let ring = CycRing::new(6);
        let steps: Vec<Step> = (0..6).map(|_| Step::fwd(0)).collect();
        let coeffs = walk_voltage_coeffs(&ring, &g, &chi, &[1], &steps).unwrap();
        assert!(CycRing::is_zero(&ring, &coeffs[0]));
    }

    #[test]
    fn trivial_character_counts_net_uses() {
        let g = cyclic(6);
        let chi = LinearCharacter::trivial(6);
        let ring = CycRing::new(1);
        let steps: Vec<Step> = (0..6).map(|_| Step::fwd(0)).collect();
        let coeffs = walk_voltage_coeffs(&ring, &g, &chi, &[1], &steps).unwrap();
        assert_eq!(coeffs[0], cyc(&ring, &[6]));
        assert_eq!(ring.norm(&coeffs[0]), BigInt::from(6));
    }

    #[test]
    fn zigzag_voltage_cancels() {
        let g = cyclic(4);
        let chi = identity_char(4);
        let ring = CycRing::new(4);
        let steps = vec![Step::fwd(0), Step::inv(0), Step::fwd(0), Step::inv(0)];
        let coeffs = walk_voltage_coeffs(&ring, &g, &chi, &[1], &steps).unwrap();
        assert!(CycRing::is_zero(&ring, &coeffs[0]));
    }

    #[test]
    fn pinned_inverse_step_coefficients() {
        // Z5, generators 1 and 2, walk 0 →+1→ 1 →+2→ 3 →-1→ 2 →-2→ 0.
        // coeff[0] = χ(0) - χ(2) = 1 - ζ², coeff[1] = χ(1) - χ(0) = ζ - 1.
        let g = cyclic(5);
        let chi = identity_char(5);
        let ring = CycRing::new(5);
        let steps = vec![Step::fwd(0), Step::fwd(1), Step::inv(0), Step::inv(1)];
        let coeffs = walk_voltage_coeffs(&ring, &g, &chi, &[1, 2], &steps).unwrap();
        assert_eq!(coeffs[0], cyc(&ring, &[1, 0, -1, 0]));
        assert_eq!(coeffs[1], cyc(&ring, &[-1, 1, 0, 0]));
    }

    #[test]
    fn value_matches_coefficient_combination() {
        let g = cyclic(5);
        let chi = identity_char(5);
        let ring = CycRing::new(5);
        let steps = vec![Step::fwd(0), Step::fwd(1), Step::inv(0), Step::inv(1)];
        let gens = [1usize, 2];
        let z = vec![ring.one(), ring.zeta_pow(1)];
        let direct = walk_voltage_value(&ring, &g, &chi, &gens, &z, &steps).unwrap();
        let coeffs = walk_voltage_coeffs(&ring, &g, &chi, &gens, &steps).unwrap();
        let mut acc = CycRing::zero(&ring);
        for (c, zv) in coeffs.iter().zip(&z) {
            acc = CycRing::add(&ring, &acc, &CycRing::mul(&ring, c, zv));
        }
        assert_eq!(direct, acc);
        // 1 - ζ² + ζ·(ζ - 1) = 1 - ζ.
        assert_eq!(direct, cyc(&ring, &[1, -1, 0, 0]));
    }

    #[test]
    fn open_walk_rejected() {
        let g = cyclic(5);
        let chi = identity_char(5);
        let ring = CycRing::new(5);
        let err = walk_voltage_coeffs(&ring, &g, &chi, &[1], &[Step::fwd(0), Step::fwd(0)]);
        assert_eq!(err.unwrap_err(), VoltageError::OpenWalk);
    }

    #[test]
    fn hexagon_in_s3_has_zero_sign_voltage() {
        // S3 as dihedral(6); r = rotation, s = reflection; the prism
        // hamiltonian cycle r r s r r s has zero voltage for the sign
        // character on both generators.
        let g = dihedral(6).unwrap();
        let r = 1usize;
        let s = 3usize;
        let chi = linear_characters(&g)
            .into_iter()
            .find(|c| c.modulus == 2)
            .unwrap();
        let ring = CycRing::new(2);
        let steps = vec![
            Step::fwd(0),
            Step::fwd(0),
            Step::fwd(1),
            Step::fwd(0),
            Step::fwd(0),
            Step::fwd(1),
        ];
        let coeffs = walk_voltage_coeffs(&ring, &g, &chi, &[r, s], &steps).unwrap();
        assert!(CycRing::is_zero(&ring, &coeffs[0]));
        assert!(CycRing::is_zero(&ring, &coeffs[1]));
    }

    #[test]
    fn partition_s3_sign_character() {
        let g = dihedral(6).unwrap();
        let chi = linear_characters(&g)
            .into_iter()
            .find(|c| c.modulus == 2)
            .unwrap();
        // gens: rotation (order 3, trivial value), reflection (value -1).
        let part = partition_generators(&g, &[1, 3], &chi);
        assert_eq!(part.a_list, Vec::<usize>::new());
        assert_eq!(part.b0, Some(1));
        assert_eq!(part.b_list, vec![0]);
    }

    #[test]
    fn partition_klein_trivial_character() {
        let g = abelian(&[2, 2]).unwrap();
        let chi = LinearCharacter::trivial(4);
        let part = partition_generators(&g, &[1, 2], &chi);
        assert_eq!(part.a_list, vec![0, 1]);
        assert_eq!(part.b0, None);
        assert!(part.b_list.is_empty());
    }

    #[test]
    fn partition_second_nontrivial_goes_to_blist() {
        let g = abelian(&[2, 2]).unwrap();
        let chars = linear_characters(&g);
        // A character nontrivial on both generators.
        let chi = chars
            .iter()
            .find(|c| c.exponent(1) != 0 && c.exponent(2) != 0)
            .unwrap();
        let part = partition_generators(&g, &[1, 2], chi);
        assert!(part.a_list.is_empty());
        assert_eq!(part.b0, Some(0));
        assert_eq!(part.b_list, vec![1]);
    }

    #[test]
    fn det_selection_greedy_skips_dependent_rows() {
        let ring = CycRing::new(2);
        let rows = vec![
            vec![cyc(&ring, &[1]), cyc(&ring, &[1])],
            vec![cyc(&ring, &[2]), cyc(&ring, &[2])],
            vec![cyc(&ring, &[1]), cyc(&ring, &[-1])],
        ];
        let sel = find_nonzero_det(&ring, &rows, 2).unwrap();
        assert_eq!(sel.rows, vec![0, 2]);
        assert_eq!(sel.det, cyc(&ring, &[-2]));
    }

    #[test]
    fn det_selection_with_roots_of_unity() {
        let ring = CycRing::new(4);
        // [[1, ζ], [ζ, 1]]: det = 1 - ζ² = 2 since ζ² = -1.
        let rows = vec![
            vec![cyc(&ring, &[1, 0]), cyc(&ring, &[0, 1])],
            vec![cyc(&ring, &[0, 1]), cyc(&ring, &[1, 0])],
        ];
        let sel = find_nonzero_det(&ring, &rows, 2).unwrap();
        assert_eq!(sel.det, cyc(&ring, &[2, 0]));
        assert_eq!(ring.norm(&sel.det), BigInt::from(4));
    }

    #[test]
    fn det_selection_none_when_rank_deficient() {
        let ring = CycRing::new(2);
        let rows = vec![
            vec![cyc(&ring, &[1]), cyc(&ring, &[1])],
            vec![cyc(&ring, &[3]), cyc(&ring, &[3])],
        ];
        assert!(find_nonzero_det(&ring, &rows, 2).is_none());
    }

    #[test]
    fn multiple_selections_are_distinct() {
        let ring = CycRing::new(1);
        let rows = vec![
            vec![cyc(&ring, &[2])],
            vec![cyc(&ring, &[3])],
            vec![cyc(&ring, &[5])],
        ];
        let sels = det_selections(&ring, &rows, 1, 3);
        assert_eq!(sels.len(), 3);
        let dets: Vec<BigInt> = sels.iter().map(|s| ring.norm(&s.det)).collect();
        assert!(dets.contains(&BigInt::from(2)));
        assert!(dets.contains(&BigInt::from(3)));
        assert!(dets.contains(&BigInt::from(5)));
    }

    #[test]
    fn residual_primes_pinned() {
        assert_eq!(
            residual_primes(&BigInt::from(70), 4, 2).unwrap(),
            vec![5, 7]
        );
        assert_eq!(residual_primes(&BigInt::from(12), 6, 2).unwrap(), Vec::<u64>::new());
        // Congruence filter: 7 ≢ 1 (mod 4).
        assert_eq!(residual_primes(&BigInt::from(7), 3, 4).unwrap(), Vec::<u64>::new());
        assert_eq!(residual_primes(&BigInt::from(13), 3, 4).unwrap(), vec![13]);
    }

    #[test]
    fn gcd_norms_handles_zero() {
        let v = vec![BigInt::from(0), BigInt::from(70), BigInt::from(-42)];
        assert_eq!(gcd_norms(&v), BigInt::from(14));
        assert_eq!(gcd_norms(&[BigInt::from(0)]), BigInt::from(0));
    }

    #[test]
    fn fgl_lift_direct_product() {
        // Z7 x S3 via trivial twist; hexagon lifted with z = (1, 0) has
        // voltage 4 ≠ 0 mod 7, so the 42-vertex lift is hamiltonian.
        let s3 = dihedral(6).unwrap();
        let sd = semidirect_zn(7, &s3, &[1, 1, 1, 1, 1, 1]).unwrap();
        let steps = vec![
            Step::fwd(0),
            Step::fwd(0),
            Step::fwd(1),
            Step::fwd(0),
            Step::fwd(0),
            Step::fwd(1),
        ];
        let cycle = fgl_lift(&sd, &[1, 3], &[1, 0], &steps);
        assert_eq!(cycle.len(), 42);
        let conn = lift_conn(&sd, &[1, 3], &[1, 0]);
        let graph = cayley_graph(&sd.underlying, &conn);
        assert!(validate_cycle(&graph, &cycle, &[]));
    }

    #[test]
    fn fgl_lift_two_reflections_zigzag() {
        // Dihedral group of order 2p from Z2 acting by inversion: two
        // distinct lifts of the single reflection generate, and the
        // alternating walk is a hamiltonian cycle.
        let z2 = cyclic(2);
        let sd = semidirect_zn(7, &z2, &[1, 6]).unwrap();
        let steps = vec![Step::fwd(0), Step::fwd(1)];
        let cycle = fgl_lift(&sd, &[1, 1], &[0, 1], &steps);
        assert_eq!(cycle.len(), 14);
        let conn = lift_conn(&sd, &[1, 1], &[0, 1]);
        let graph = cayley_graph(&sd.underlying, &conn);
        assert!(validate_cycle(&graph, &cycle, &[]));
    }

    #[test]
    fn normalized_lift_counts() {
        assert_eq!(normalized_lifts(1, 5), vec![vec![1]]);
        let lifts = normalized_lifts(2, 3);
        assert_eq!(
            lifts,
            vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![0, 1]]
        );
        // (p^3 - 1)/(p - 1) = 31 for p = 5, n = 3.
        assert_eq!(normalized_lifts(3, 5).len(), 31);
        assert!(normalized_lifts(0, 7).is_empty());
    }

    #[test]
    fn assemble_z_places_free_values() {
        let part = GenPartition {
            a_list: vec![0],
            b0: Some(2),
            b_list: vec![1, 3],
        };
        assert_eq!(assemble_z(4, &part, &[5, 9]), vec![0, 5, 0, 9]);
    }

    #[test]
    fn lift_generation_matches_closure() {
        // Z7 ⋊ S3 with the sign twist: lifts (z0 on the rotation, z1 on
        // the reflection) generate iff z0 ≠ 0. Cross-check the complement
        // criterion against explicit subgroup closure for all 49 pairs.
        let s3 = dihedral(6).unwrap();
        let chi = linear_characters(&s3)
            .into_iter()
            .find(|c| c.modulus == 2)
            .unwrap();
        let ring = ModRing::for_character(7, 2);
        let twist_table: Vec<u64> = (0..6)
            .map(|g| arith::pow_mod_u64(ring.root, chi.exponent(g), 7))
            .collect();
        let sd = semidirect_zn(7, &s3, &twist_table).unwrap();
        let gens_bar = [1usize, 3];
        let twist = [twist_table[1], twist_table[3]];
        for z0 in 0..7u64 {
            for z1 in 0..7u64 {
                let fast = lift_generates(&ring, &twist, &[z0, z1]);
                let conn = lift_conn(&sd, &gens_bar, &[z0, z1]);
                let slow = subgroup_generated(&sd.underlying, &conn).len() == 42;
                assert_eq!(fast, slow, "z = ({z0}, {z1})");
                assert_eq!(fast, z0 != 0, "z = ({z0}, {z1})");
            }
        }
    }

    #[test]
    fn matrix_rows_drop_pinned_columns() {
        let g = cyclic(5);
        let chi = identity_char(5);
        let ring = CycRing::new(5);
        let part = partition_generators(&g, &[1, 2], &chi);
        // 1 is nontrivial, so b0 = 0 and b_list = [1].
        assert_eq!(part.b0, Some(0));
        assert_eq!(part.b_list, vec![1]);
        let steps = vec![Step::fwd(0), Step::fwd(1), Step::inv(0), Step::inv(1)];
        let rows = voltage_matrix_rows(&ring, &g, &chi, &[1, 2], &part, &[steps]).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].len(), 1);
        assert_eq!(rows[0][0], cyc(&ring, &[-1, 1, 0, 0]));
    }
}

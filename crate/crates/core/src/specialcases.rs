//! Hand-tailored cycle constructions for generator configurations where
//! the generic voltage-matrix argument degenerates.
//!
//! Each case has a matcher over (quotient group, generator representatives,
//! character) and either builds explicit hamiltonian cycles in the
//! extension for every admissible prime, or discharges the configuration
//! by a structural reduction. Cases are tried in numeric order; the first
//! match wins. All constructed cycles are validated against the concrete
//! Cayley graph before being returned.

use crate::graphs::cayley_graph;
use crate::groups::{
    alternating, are_isomorphic, dihedral, semidirect_zn, structure, subgroup_generated,
    FiniteGroup, GroupError, LinearCharacter, SemidirectGroup,
};
use crate::hamilton::validate_cycle;
use crate::voltage::{
    character_twist, lift_conn, lift_walk, walk_voltage_value, ModRing, Step,
};

/// A matched special configuration; indices refer to positions in the
/// generator-representative list.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecialCase {
    /// Generators of orders 2 and 3 with the order-3 one character-trivial.
    C1 { a: usize, b: usize },
    /// Two order-3 generators of A4, trivial character.
    C2 { a: usize, b: usize },
    /// An involution inside a normal Klein subgroup plus a cyclic
    /// complement generator, trivial character, nonabelian quotient.
    C3 { a: usize, b: usize },
    /// A central character-trivial involution.
    C4 { a: usize },
    /// A generator whose square has prime order and generates a normal
    /// subgroup, with character value -1.
    C5 { a: usize },
    /// Dihedral quotient of order > 4: reflection with character -1,
    /// rotation character-trivial.
    C6 { a: usize, b: usize },
    /// Order 4q with commutator of prime order q: an order-4 generator and
    /// a non-centralising involution, trivial character.
    C7 { a: usize, b: usize },
}

impl SpecialCase {
    pub fn id(&self) -> &'static str {
        match self {
            SpecialCase::C1 { .. } => "C1_23",
            SpecialCase::C2 { .. } => "C2_A4",
            SpecialCase::C3 { .. } => "C3_V4semidirect",
            SpecialCase::C4 { .. } => "C4_central",
            SpecialCase::C5 { .. } => "C5_a2normal",
            SpecialCase::C6 { .. } => "C6_dihedral",
            SpecialCase::C7 { .. } => "C7_4q",
        }
    }

    /// For discharge-style cases, the reduction tag recorded in reports.
    pub fn discharge_reason(&self) -> Option<&'static str> {
        match self {
            SpecialCase::C4 { .. } => Some("central_involution"),
            SpecialCase::C5 { .. } => Some("a_squared_normal"),
            _ => None,
        }
    }
}

/// Smallest normal Klein four-subgroup containing `a`, if any.
fn normal_klein_containing(g: &FiniteGroup, a: usize) -> Option<Vec<usize>> {
    if g.element_order(a) != 2 {
        return None;
    }
    for x in 1..g.order() {
        if x == a || g.element_order(x) != 2 {
            continue;
        }
        if g.mul(a, x) != g.mul(x, a) {
            continue;
        }
        let n = {
            let mut n = vec![0, a, x, g.mul(a, x)];
            n.sort_unstable();
            n.dedup();
            n
        };
        if n.len() != 4 {
            continue;
        }
        let normal = (0..g.order()).all(|h| n.iter().all(|&e| n.binary_search(&g.conj(h, e)).is_ok()));
        if normal {
            return Some(n);
        }
    }
    None
}

fn is_a4(g: &FiniteGroup) -> bool {
    g.order() == 12 && are_isomorphic(g, &alternating(4).unwrap())
}

fn is_dihedral_of_order(g: &FiniteGroup, k: usize) -> bool {
    k >= 6 && k % 2 == 0 && dihedral(k).map_or(false, |d| are_isomorphic(g, &d))
}

/// Tries the special configurations in numeric order.
pub fn match_special(
    gbar: &FiniteGroup,
    gens: &[usize],
    chi: &LinearCharacter,
) -> Option<SpecialCase> {
    let k = gbar.order();
    let orders: Vec<usize> = gens.iter().map(|&s| gbar.element_order(s)).collect();

    // C1: orders {2, 3}, character trivial on the order-3 generator.
    if gens.len() == 2 {
        let pair = if orders[0] == 2 && orders[1] == 3 {
            Some((0, 1))
        } else if orders[0] == 3 && orders[1] == 2 {
            Some((1, 0))
        } else {
            None
        };
        if let Some((a, b)) = pair {
            if chi.is_trivial_on(gens[b]) {
                return Some(SpecialCase::C1 { a, b });
            }
        }
    }

    // C2: A4 from two order-3 generators, trivial character.
    if gens.len() == 2 && orders == [3, 3] && chi.is_trivial() && is_a4(gbar) {
        return Some(SpecialCase::C2 { a: 0, b: 1 });
    }

    // C3: involution in a normal Klein subgroup, complement generator of
    // order k/4, nonabelian quotient, trivial character.
    if gens.len() == 2 && chi.is_trivial() && !gbar.is_abelian() && k % 4 == 0 {
        for (a, b) in [(0usize, 1usize), (1, 0)] {
            if orders[a] != 2 || orders[b] != k / 4 {
                continue;
            }
            if let Some(n) = normal_klein_containing(gbar, gens[a]) {
                let h = subgroup_generated(gbar, &[gens[b]]);
                let intersection = h.iter().filter(|e| n.binary_search(e).is_ok()).count();
                if h.len() == k / 4 && intersection == 1 {
                    return Some(SpecialCase::C3 { a, b });
                }
            }
        }
    }

    // C4: central character-trivial involution.
    let center = structure(gbar).center;
    for (j, &s) in gens.iter().enumerate() {
        if orders[j] == 2 && chi.is_trivial_on(s) && center.contains(&s) {
            return Some(SpecialCase::C4 { a: j });
        }
    }

    // C5: square of prime order generating a normal subgroup, character
    // value -1 on the generator itself.
    for (j, &s) in gens.iter().enumerate() {
        if !chi.is_minus_one_on(s) {
            continue;
        }
        let sq = gbar.mul(s, s);
        if sq == 0 {
            continue;
        }
        let q = gbar.element_order(sq);
        if !crate::voltage::is_prime_u64(q as u64) {
            continue;
        }
        let n = subgroup_generated(gbar, &[sq]);
        let normal =
            (0..gbar.order()).all(|h| n.iter().all(|&e| n.binary_search(&gbar.conj(h, e)).is_ok()));
        if normal {
            return Some(SpecialCase::C5 { a: j });
        }
    }

    // C6: dihedral of order k > 4, reflection with value -1, rotation
    // trivial.
    if gens.len() == 2 && is_dihedral_of_order(gbar, k) {
        for (a, b) in [(0usize, 1usize), (1, 0)] {
            if orders[a] == 2
                && orders[b] == k / 2
                && chi.is_minus_one_on(gens[a])
                && chi.is_trivial_on(gens[b])
            {
                return Some(SpecialCase::C6 { a, b });
            }
        }
    }

    // C7: |Ḡ| = 4q with prime commutator of order q, an order-4 and an
    // order-2 generator, trivial character, involution not centralising
    // the commutator subgroup.
    if gens.len() == 2 && chi.is_trivial() && k % 4 == 0 {
        let q = k / 4;
        if crate::voltage::is_prime_u64(q as u64) {
            let comm = structure(gbar).commutator;
            if comm.len() == q {
                for (a, b) in [(0usize, 1usize), (1, 0)] {
                    if orders[a] != 4 || orders[b] != 2 {
                        continue;
                    }
                    let moves_comm = comm.iter().any(|&c| gbar.conj(gens[b], c) != c);
                    if moves_comm {
                        return Some(SpecialCase::C7 { a, b });
                    }
                }
            }
        }
    }

    None
}

/// One certified lift: the kernel assignment per representative and a
/// validated hamiltonian cycle of the lifted Cayley graph.
#[derive(Clone, Debug)]
pub struct ConstructedLift {
    pub z: Vec<u64>,
    pub cycle: Vec<u32>,
}

fn repeat_step(step: Step, times: u64) -> impl Iterator<Item = Step> {
    std::iter::repeat(step).take(times as usize)
}

/// Walks `steps` once through the lift and keeps it only if it is a
/// hamiltonian cycle of the lifted graph.
fn validated_walk(
    sd: &SemidirectGroup,
    gens_bar: &[usize],
    z: &[u64],
    steps: &[Step],
    repeats: u64,
) -> Option<Vec<u32>> {
    let cycle = lift_walk(sd, gens_bar, z, steps, repeats);
    if cycle.len() != sd.underlying.order() {
        return None;
    }
    let graph = cayley_graph(&sd.underlying, &lift_conn(sd, gens_bar, z));
    validate_cycle(&graph, &cycle, &[]).then_some(cycle)
}

/// Builds the extension group for a character at p.
fn extension(
    gbar: &FiniteGroup,
    chi: &LinearCharacter,
    p: u64,
) -> Result<SemidirectGroup, GroupError> {
    semidirect_zn(p, gbar, &character_twist(gbar, chi, p))
}

/// Explicit cycles for a constructive case at prime p, covering every
/// lift the case is responsible for. An empty vector means the
/// construction did not validate and the caller should fall back to the
/// generic route.
pub fn construct_special(
    gbar: &FiniteGroup,
    gens: &[usize],
    chi: &LinearCharacter,
    case: &SpecialCase,
    p: u64,
) -> Result<Vec<ConstructedLift>, GroupError> {
    let k = gbar.order() as u64;
    let sd = extension(gbar, chi, p)?;
    let out = match *case {
        SpecialCase::C1 { a, b } => {
            // Blocks (a, b^±(3p-1)), one per coset, signs searched.
            let r = (k / 3) as u32;
            let run = 3 * p - 1;
            let mut z = vec![0u64; gens.len()];
            z[b] = 1;
            let mut found = None;
            'sign: for mask in 0u32..(1 << r) {
                let mut steps = vec![];
                for i in 0..r {
                    steps.push(Step::fwd(a));
                    let dir = if mask >> i & 1 == 0 {
                        Step::fwd(b)
                    } else {
                        Step::inv(b)
                    };
                    steps.extend(repeat_step(dir, run));
                }
                if let Some(cycle) = validated_walk(&sd, gens, &z, &steps, 1) {
                    found = Some(ConstructedLift { z: z.clone(), cycle });
                    break 'sign;
                }
            }
            found.into_iter().collect()
        }
        SpecialCase::C2 { a, b } => {
            // (x^(3p-1), y⁻¹, x^-(3p-1), y)² with z(x) = 1, z(y) = w; the
            // role swap reaches the lifts with z(a) = 0.
            let run = 3 * p - 1;
            let mut lifts = vec![];
            let build = |x: usize, y: usize, w: u64| -> Option<ConstructedLift> {
                let mut steps = vec![];
                for _ in 0..2 {
                    steps.extend(repeat_step(Step::fwd(x), run));
                    steps.push(Step::inv(y));
                    steps.extend(repeat_step(Step::inv(x), run));
                    steps.push(Step::fwd(y));
                }
                let mut z = vec![0u64; gens.len()];
                z[x] = 1;
                z[y] = w;
                validated_walk(&sd, gens, &z, &steps, 1).map(|cycle| ConstructedLift { z, cycle })
            };
            for w in 0..p {
                match build(a, b, w) {
                    Some(l) => lifts.push(l),
                    None => return Ok(vec![]),
                }
            }
            match build(b, a, 0) {
                Some(l) => lifts.push(l),
                None => return Ok(vec![]),
            }
            lifts
        }
        SpecialCase::C3 { a, b } => {
            // (b^(m'p-1), a, b^-(m'p-1), a)² with z(b) = 1.
            let mprime = k / 4;
            let run = mprime * p - 1;
            let mut steps = vec![];
            for _ in 0..2 {
                steps.extend(repeat_step(Step::fwd(b), run));
                steps.push(Step::fwd(a));
                steps.extend(repeat_step(Step::inv(b), run));
                steps.push(Step::fwd(a));
            }
            let mut z = vec![0u64; gens.len()];
            z[b] = 1;
            validated_walk(&sd, gens, &z, &steps, 1)
                .map(|cycle| ConstructedLift { z, cycle })
                .into_iter()
                .collect()
        }
        SpecialCase::C4 { .. } | SpecialCase::C5 { .. } => vec![],
        SpecialCase::C6 { a, b } => {
            // (a, b^(kp/2 - 1))² with z(b) = 1.
            let run = k * p / 2 - 1;
            let mut steps = vec![];
            for _ in 0..2 {
                steps.push(Step::fwd(a));
                steps.extend(repeat_step(Step::fwd(b), run));
            }
            let mut z = vec![0u64; gens.len()];
            z[b] = 1;
            validated_walk(&sd, gens, &z, &steps, 1)
                .map(|cycle| ConstructedLift { z, cycle })
                .into_iter()
                .collect()
        }
        SpecialCase::C7 { a, b } => {
            // Quotient by the commutator Z_q leaves a cyclic group of
            // order 4p; the cycle (b, a^-(i-1), b, a^(4p-i-1)) there, with
            // i ≡ 0 (mod p) and i ≡ 2 (mod 4), lifts q-fold.
            let q = k / 4;
            let i = (0..4 * p).find(|i| i % p == 0 && i % 4 == 2).unwrap();
            let mut steps = vec![Step::fwd(b)];
            steps.extend(repeat_step(Step::inv(a), i - 1));
            steps.push(Step::fwd(b));
            steps.extend(repeat_step(Step::fwd(a), 4 * p - i - 1));
            let mut z = vec![0u64; gens.len()];
            z[a] = 1;
            validated_walk(&sd, gens, &z, &steps, q)
                .map(|cycle| ConstructedLift { z, cycle })
                .into_iter()
                .collect()
        }
    };
    Ok(out)
}

/// Constructive witness for a doubled generator: two lifts s = (z1, s̄),
/// t = (z2, s̄) of the same representative. Some reassignment of the two
/// lifts along a quotient hamiltonian cycle has nonzero voltage, and then
/// the lifted walk is hamiltonian. Tries: all-s, all-t, and each with the
/// first occurrence flipped. Returns a cycle validated against the graph
/// on all the lifts (including both doubled ones).
#[allow(clippy::too_many_arguments)]
pub fn double_edge_lift(
    gbar: &FiniteGroup,
    chi: &LinearCharacter,
    p: u64,
    gens_bar: &[usize],
    z: &[u64],
    dup_rep: usize,
    z2: u64,
    quotient_steps: &[Step],
) -> Option<Vec<u32>> {
    let sd = extension(gbar, chi, p).ok()?;
    let ring = ModRing::for_character(p, chi.modulus);
    // Extended representative list: slot gens_bar.len() is the second lift.
    let mut ext_gens: Vec<usize> = gens_bar.to_vec();
    ext_gens.push(gens_bar[dup_rep]);
    let ext = gens_bar.len();
    let occurrences: Vec<usize> = quotient_steps
        .iter()
        .enumerate()
        .filter(|(_, s)| s.gen == dup_rep)
        .map(|(i, _)| i)
        .collect();
    if occurrences.is_empty() {
        return None;
    }
    let mut variants: Vec<Vec<Step>> = vec![];
    // All occurrences on the first lift.
    variants.push(quotient_steps.to_vec());
    // All occurrences on the second.
    let mut all_second = quotient_steps.to_vec();
    for &i in &occurrences {
        all_second[i].gen = ext;
    }
    variants.push(all_second);
    // First occurrence flipped, either way around.
    if occurrences.len() > 1 {
        let mut first_second = quotient_steps.to_vec();
        first_second[occurrences[0]].gen = ext;
        variants.push(first_second);
        let mut first_first = quotient_steps.to_vec();
        for &i in &occurrences[1..] {
            first_first[i].gen = ext;
        }
        variants.push(first_first);
    }
    let mut ext_z: Vec<u64> = z.to_vec();
    ext_z.push(z2);
    let zmod: Vec<u64> = ext_z.iter().map(|&v| v % p).collect();
    let full_conn: Vec<usize> = lift_conn(&sd, &ext_gens, &ext_z);
    let graph = cayley_graph(&sd.underlying, &full_conn);
    for steps in &variants {
        let voltage = walk_voltage_value(&ring, gbar, chi, &ext_gens, &zmod, steps).ok()?;
        if voltage == 0 {
            continue;
        }
        let cycle = lift_walk(&sd, &ext_gens, &ext_z, steps, p);
        if cycle.len() == sd.underlying.order() && validate_cycle(&graph, &cycle, &[]) {
            return Some(cycle);
        }
    }
    None
}

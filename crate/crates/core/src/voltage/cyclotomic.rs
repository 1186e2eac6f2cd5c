//! Exact arithmetic in Z[ζ_m], the ring of integers of the m-th cyclotomic
//! field, with coefficients kept as arbitrary-precision integers.
//!
//! Elements are polynomials in ζ of degree below φ(m), reduced modulo the
//! cyclotomic polynomial Φ_m. Norms are computed two independent ways: as
//! the resultant Res(Φ_m, a) via a fraction-free integer determinant, and
//! as the product of a with its conjugates (which must land in the constant
//! coefficient). Both are exposed so callers can cross-check.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use std::collections::HashMap;
use std::sync::Mutex;
use std::sync::OnceLock;

/// Euler's totient, by trial-division factorisation.
pub fn euler_phi(m: u64) -> u64 {
    let mut n = m;
    let mut result = m;
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            while n % p == 0 {
                n /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if n > 1 {
        result -= result / n;
    }
    result
}

/// Coefficients of Φ_m, constant term first. Computed by dividing x^m - 1
/// by the cyclotomic polynomials of all proper divisors; memoised.
pub fn cyclotomic_polynomial(m: u64) -> Vec<BigInt> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Vec<BigInt>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().unwrap().get(&m) {
        return hit.clone();
    }
    assert!(m >= 1);
    let result = if m == 1 {
        vec![BigInt::from(-1), BigInt::one()]
    } else {
        // x^m - 1
        let mut num = vec![BigInt::zero(); m as usize + 1];
        num[0] = BigInt::from(-1);
        num[m as usize] = BigInt::one();
        for d in 1..m {
            if m % d == 0 {
                num = poly_div_exact(&num, &cyclotomic_polynomial(d));
            }
        }
        num
    };
    cache.lock().unwrap().insert(m, result.clone());
    result
}

fn poly_trim(p: &mut Vec<BigInt>) {
    while p.len() > 1 && p.last().map_or(false, |c| c.is_zero()) {
        p.pop();
    }
}

/// Exact division of polynomials over Z; panics if the division leaves a
/// remainder (never happens for the cyclotomic recurrences).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = num.to_vec();
    poly_trim(&mut rem);
    let mut den = den.to_vec();
    poly_trim(&mut den);
    let dd = den.len() - 1;
    let lead = den[dd].clone();
    assert!(!lead.is_zero());
    if rem.len() - 1 < dd {
        assert!(rem.iter().all(|c| c.is_zero()), "non-exact division");
        return vec![BigInt::zero()];
    }
    let mut quot = vec![BigInt::zero(); rem.len() - dd];
    for i in (0..quot.len()).rev() {
        let c = &rem[i + dd] / &lead;
        assert_eq!(&c * &lead, rem[i + dd], "non-exact division");
        quot[i] = c.clone();
        for j in 0..=dd {
            let t = &den[j] * &c;
            rem[i + j] -= t;
        }
    }
    assert!(rem.iter().all(|c| c.is_zero()), "non-exact division");
    quot
}

/// The ring Z[ζ_m]: modulus data shared by all elements.
#[derive(Clone, Debug)]
pub struct CycRing {
    pub m: u64,
    pub degree: usize,
    phi: Vec<BigInt>,
}

/// An element of Z[ζ_m]: coefficients of 1, ζ, ..., ζ^(φ(m)-1).
pub type CycInt = Vec<BigInt>;

impl CycRing {
    pub fn new(m: u64) -> Self {
        let phi = cyclotomic_polynomial(m);
        CycRing {
            m,
            degree: phi.len() - 1,
            phi,
        }
    }

    pub fn zero(&self) -> CycInt {
        vec![BigInt::zero(); self.degree]
    }

    pub fn one(&self) -> CycInt {
        self.from_int(1)
    }

    pub fn from_int(&self, v: i64) -> CycInt {
        let mut e = self.zero();
        e[0] = BigInt::from(v);
        e
    }

    pub fn is_zero(&self, a: &CycInt) -> bool {
        a.iter().all(|c| c.is_zero())
    }

    /// ζ^e, reduced.
    pub fn zeta_pow(&self, e: u64) -> CycInt {
        let e = (e % self.m) as usize;
        let mut poly = vec![BigInt::zero(); e + 1];
        poly[e] = BigInt::one();
        self.reduce(poly)
    }

    /// Reduces an arbitrary-degree polynomial in ζ modulo Φ_m.
    pub fn reduce(&self, mut poly: Vec<BigInt>) -> CycInt {
        let d = self.degree;
        while poly.len() > d {
            let top = poly.len() - 1;
            let c = poly[top].clone();
            if !c.is_zero() {
                // x^top = x^(top-d) * (x^d - Φ_m(x)) since Φ_m is monic.
                for j in 0..d {
                    let t = &self.phi[j] * &c;
                    poly[top - d + j] -= t;
                }
            }
            poly.pop();
        }
        poly.resize(d, BigInt::zero());
        poly
    }

    pub fn add(&self, a: &CycInt, b: &CycInt) -> CycInt {
        a.iter().zip(b).map(|(x, y)| x + y).collect()
    }

    pub fn sub(&self, a: &CycInt, b: &CycInt) -> CycInt {
        a.iter().zip(b).map(|(x, y)| x - y).collect()
    }

    pub fn neg(&self, a: &CycInt) -> CycInt {
        a.iter().map(|x| -x).collect()
    }

    pub fn mul(&self, a: &CycInt, b: &CycInt) -> CycInt {
        let mut prod = vec![BigInt::zero(); a.len() + b.len()];
        for (i, x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = x * y;
                prod[i + j] += t;
            }
        }
        self.reduce(prod)
    }

    pub fn mul_int(&self, a: &CycInt, v: &BigInt) -> CycInt {
        a.iter().map(|x| x * v).collect()
    }

    /// The Galois conjugate σ_k(a) = a(ζ^k), for gcd(k, m) = 1.
    pub fn conjugate(&self, a: &CycInt, k: u64) -> CycInt {
        let k = (k % self.m) as usize;
        let mut acc = self.zero();
        for c in a.iter().rev() {
            // Horner: acc = acc·ζ^k + c.
            let mut shifted = vec![BigInt::zero(); k + acc.len()];
            for (j, v) in acc.iter().enumerate() {
                shifted[j + k] = v.clone();
            }
            acc = self.reduce(shifted);
            acc[0] += c;
        }
        acc
    }

    /// Exponents coprime to m, ascending; the identity automorphism first.
    pub fn galois_exponents(&self) -> Vec<u64> {
        (1..=self.m)
            .filter(|&k| num_integer::gcd(k, self.m) == 1)
            .map(|k| k % self.m)
            .collect()
    }

    /// Product of all conjugates σ_k(a) for k != 1. The full product
    /// a * conj_product(a) is the norm as a constant.
    pub fn conjugate_product(&self, a: &CycInt) -> CycInt {
        let mut acc = self.one();
        for k in self.galois_exponents() {
            if k == 1 % self.m {
                continue;
            }
            acc = self.mul(&acc, &self.conjugate(a, k));
        }
        acc
    }

    /// Field norm as the product of conjugates; checks the result is a
    /// rational integer.
    pub fn norm_by_conjugates(&self, a: &CycInt) -> BigInt {
        let full = self.mul(a, &self.conjugate_product(a));
        for c in full.iter().skip(1) {
            assert!(c.is_zero(), "conjugate product is not rational");
        }
        full[0].clone()
    }

    /// Field norm as the resultant Res(Φ_m, a), via a fraction-free
    /// determinant of the Sylvester matrix. Independent of
    /// `norm_by_conjugates`.
    pub fn norm_by_resultant(&self, a: &CycInt) -> BigInt {
        let mut g: Vec<BigInt> = a.clone();
        poly_trim(&mut g);
        if g.len() == 1 {
            // Constant c: norm is c^φ(m).
            return num_traits::pow::pow(g[0].clone(), self.degree);
        }
        let f = &self.phi;
        let (n, k) = (f.len() - 1, g.len() - 1);
        // Sylvester matrix of size n + k.
        let size = n + k;
        let mut mat = vec![vec![BigInt::zero(); size]; size];
        for row in 0..k {
            for (j, c) in f.iter().enumerate() {
                mat[row][row + n - j] = c.clone();
            }
        }
        for row in 0..n {
            for (j, c) in g.iter().enumerate() {
                mat[k + row][row + k - j] = c.clone();
            }
        }
        integer_determinant_bareiss(mat)
    }

    /// Norm with the two routes cross-checked; the only norm the rest of
    /// the crate calls.
    pub fn norm(&self, a: &CycInt) -> BigInt {
        let r = self.norm_by_resultant(a);
        let c = self.norm_by_conjugates(a);
        assert_eq!(r, c, "norm routes disagree for {a:?} over m={}", self.m);
        r
    }

    /// Exact division in Z[ζ_m]: a / b when b divides a, via multiplication
    /// by the conjugate product and integer division by the norm.
    pub fn div_exact(&self, a: &CycInt, b: &CycInt) -> CycInt {
        let nb = self.norm_by_conjugates(b);
        assert!(!nb.is_zero(), "division by zero");
        let scaled = self.mul(a, &self.conjugate_product(b));
        scaled
            .iter()
            .map(|c| {
                let q = c / &nb;
                assert_eq!(&q * &nb, *c, "non-exact cyclotomic division");
                q
            })
            .collect()
    }

    /// Evaluates the element at the complex primitive root e^(2πi/m).
    pub fn embed_complex(&self, a: &CycInt) -> (f64, f64) {
        let theta = 2.0 * std::f64::consts::PI / self.m as f64;
        let (mut re, mut im) = (0.0, 0.0);
        for (i, c) in a.iter().enumerate() {
            let coeff = bigint_to_f64(c);
            re += coeff * (theta * i as f64).cos();
            im += coeff * (theta * i as f64).sin();
        }
        (re, im)
    }

    /// Image of the element under the ring homomorphism Z[ζ_m] → Z_p
    /// sending ζ to `root`, which must have exact multiplicative order m
    /// mod p (so p ≡ 1 mod m). This is how symbolic voltages are compared
    /// with concrete kernel arithmetic at a given prime.
    pub fn reduce_mod_p(&self, a: &CycInt, p: u64, root: u64) -> u64 {
        let pb = BigInt::from(p);
        let rb = BigInt::from(root % p);
        let mut acc = BigInt::zero();
        let mut pw = BigInt::one();
        for c in a {
            acc = (acc + c * &pw) % &pb;
            pw = (&pw * &rb) % &pb;
        }
        let r = ((acc % &pb) + &pb) % &pb;
        let digits = r.to_u64_digits().1;
        digits.first().copied().unwrap_or(0)
    }

    /// The norm estimated as the signed product over all complex
    /// embeddings (real for every m; nonnegative once φ(m) is even). Used
    /// only as a floating cross-check of the exact integer norms.
    pub fn norm_by_embeddings(&self, a: &CycInt) -> f64 {
        let theta = 2.0 * std::f64::consts::PI / self.m as f64;
        let mut prod_re = 1.0f64;
        let mut prod_im = 0.0f64;
        for k in self.galois_exponents() {
            let (mut re, mut im) = (0.0, 0.0);
            for (i, c) in a.iter().enumerate() {
                let coeff = bigint_to_f64(c);
                let ang = theta * (k as f64) * (i as f64);
                re += coeff * ang.cos();
                im += coeff * ang.sin();
            }
            let (nr, ni) = (prod_re * re - prod_im * im, prod_re * im + prod_im * re);
            prod_re = nr;
            prod_im = ni;
        }
        prod_re
    }
}

fn bigint_to_f64(c: &BigInt) -> f64 {
    c.to_string().parse::<f64>().unwrap_or(f64::NAN)
}

/// Fraction-free (Bareiss) determinant over the integers.
pub fn integer_determinant_bareiss(mut mat: Vec<Vec<BigInt>>) -> BigInt {
    let n = mat.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if mat[k][k].is_zero() {
            match (k + 1..n).find(|&r| !mat[r][k].is_zero()) {
                Some(r) => {
                    mat.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &mat[i][j] * &mat[k][k] - &mat[i][k] * &mat[k][j];
                let q = &num / &prev;
                debug_assert_eq!(&q * &prev, num, "Bareiss division not exact");
                mat[i][j] = q;
            }
            mat[i][k] = BigInt::zero();
        }
        prev = mat[k][k].clone();
    }
    sign * mat[n - 1][n - 1].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(ring: &CycRing, coeffs: &[i64]) -> CycInt {
        ring.reduce(coeffs.iter().map(|&v| BigInt::from(v)).collect())
    }

    #[test]
    fn reduce_mod_p_is_a_ring_hom() {
        // m=4, p=5: 2 has order 4 mod 5, so ζ ↦ 2.
        let ring = CycRing::new(4);
        let (p, root) = (5u64, 2u64);
        let a = c(&ring, &[1, 1]); // 1 + ζ ↦ 3
        let b = c(&ring, &[2, -1]); // 2 - ζ ↦ 0 mod 5
        assert_eq!(ring.reduce_mod_p(&a, p, root), 3);
        assert_eq!(ring.reduce_mod_p(&b, p, root), 0);
        let sum = ring.add(&a, &b);
        let prod = ring.mul(&a, &b);
        assert_eq!(ring.reduce_mod_p(&sum, p, root), 3);
        assert_eq!(ring.reduce_mod_p(&prod, p, root), 0);
        // Φ_4(2) = 5 ≡ 0 (mod 5): the substitution respects the quotient.
        let phi_at_root: i64 = 4 + 1;
        assert_eq!(phi_at_root as u64 % p, 0);
    }

    #[test]
    fn phi_polynomials() {
        // Φ_1 = x-1, Φ_2 = x+1, Φ_4 = x^2+1, Φ_6 = x^2-x+1, Φ_12 = x^4-x^2+1
        let as_i64 = |m: u64| -> Vec<i64> {
            cyclotomic_polynomial(m)
                .iter()
                .map(|c| c.to_string().parse().unwrap())
                .collect()
        };
        assert_eq!(as_i64(1), vec![-1, 1]);
        assert_eq!(as_i64(2), vec![1, 1]);
        assert_eq!(as_i64(3), vec![1, 1, 1]);
        assert_eq!(as_i64(4), vec![1, 0, 1]);
        assert_eq!(as_i64(6), vec![1, -1, 1]);
        assert_eq!(as_i64(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn phi_degrees_match_totient() {
        for m in 1..=16 {
            assert_eq!(
                cyclotomic_polynomial(m).len() as u64 - 1,
                euler_phi(m),
                "deg Φ_{m}"
            );
        }
    }

    #[test]
    fn zeta_has_order_m() {
        for m in [3u64, 4, 6, 8, 12] {
            let ring = CycRing::new(m);
            let z = ring.zeta_pow(1);
            let mut acc = ring.one();
            for i in 1..m {
                acc = ring.mul(&acc, &z);
                assert!(
                    !ring.is_zero(&ring.sub(&acc, &ring.one())),
                    "ζ^{i} = 1 too early for m={m}"
                );
                assert_eq!(acc, ring.zeta_pow(i));
            }
            acc = ring.mul(&acc, &z);
            assert_eq!(acc, ring.one(), "ζ^{m} should be 1");
        }
    }

    #[test]
    fn norm_of_integers() {
        for m in [1u64, 2, 3, 4, 6, 12] {
            let ring = CycRing::new(m);
            let five = ring.from_int(5);
            let expected = BigInt::from(5).pow(ring.degree as u32);
            assert_eq!(ring.norm(&five), expected);
        }
    }

    #[test]
    fn norm_known_values() {
        // N(1 + ζ4) = (1+i)(1-i) = 2.
        let r4 = CycRing::new(4);
        assert_eq!(ring_norm(&r4, &[1, 1]), BigInt::from(2));
        // N(1 - ζ3) = 3 (ramified prime above 3).
        let r3 = CycRing::new(3);
        assert_eq!(ring_norm(&r3, &[1, -1]), BigInt::from(3));
        // N(2 + ζ5) over degree-4 field: 2^4 + 2^3 + 2^2 + 2 + 1 = 31? The
        // norm of a + ζ5 is Φ... product over primitive 5th roots of
        // (2 + ω) = Φ5(-2) with sign (-1)^4: Φ5(-2) = 16-8+4-2+1 = 11.
        let r5 = CycRing::new(5);
        assert_eq!(ring_norm(&r5, &[2, 1]), BigInt::from(11));
    }

    fn ring_norm(ring: &CycRing, coeffs: &[i64]) -> BigInt {
        ring.norm(&c(ring, coeffs))
    }

    #[test]
    fn norm_multiplicative() {
        let ring = CycRing::new(12);
        let a = c(&ring, &[3, -1, 2, 0]);
        let b = c(&ring, &[0, 1, 1, -2]);
        let ab = ring.mul(&a, &b);
        assert_eq!(ring.norm(&ab), ring.norm(&a) * ring.norm(&b));
    }

    #[test]
    fn exact_division_roundtrip() {
        for m in [2u64, 3, 4, 6, 8, 12] {
            let ring = CycRing::new(m);
            let a = c(&ring, &[2, -3]);
            let b = c(&ring, &[2, 1]);
            let ab = ring.mul(&a, &b);
            assert_eq!(ring.div_exact(&ab, &b), a, "m={m}");
            assert_eq!(ring.div_exact(&ab, &a), b, "m={m}");
        }
    }

    #[test]
    fn conjugates_fix_rationals() {
        let ring = CycRing::new(12);
        let seven = ring.from_int(7);
        for k in ring.galois_exponents() {
            assert_eq!(ring.conjugate(&seven, k), seven);
        }
    }

    #[test]
    fn conjugate_is_ring_hom() {
        let ring = CycRing::new(8);
        let a = c(&ring, &[1, 2, 0, -1]);
        let b = c(&ring, &[0, 3, 1, 1]);
        for k in ring.galois_exponents() {
            let lhs = ring.conjugate(&ring.mul(&a, &b), k);
            let rhs = ring.mul(&ring.conjugate(&a, k), &ring.conjugate(&b, k));
            assert_eq!(lhs, rhs, "σ_{k} breaks multiplication");
            let lhs = ring.conjugate(&ring.add(&a, &b), k);
            let rhs = ring.add(&ring.conjugate(&a, k), &ring.conjugate(&b, k));
            assert_eq!(lhs, rhs, "σ_{k} breaks addition");
        }
    }

    #[test]
    fn embeddings_agree_with_exact_norm() {
        let ring = CycRing::new(12);
        let a = c(&ring, &[2, 1, -1, 3]);
        let exact = ring.norm(&a);
        let float = ring.norm_by_embeddings(&a);
        let exact_f = exact.to_string().parse::<f64>().unwrap();
        assert!(
            (float - exact_f).abs() <= 1e-6 * exact_f.abs().max(1.0),
            "float {float} vs exact {exact_f}"
        );
    }

    #[test]
    fn bareiss_known_determinants() {
        let m = |rows: &[&[i64]]| -> Vec<Vec<BigInt>> {
            rows.iter()
                .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
                .collect()
        };
        assert_eq!(
            integer_determinant_bareiss(m(&[&[1, 2], &[3, 4]])),
            BigInt::from(-2)
        );
        assert_eq!(
            integer_determinant_bareiss(m(&[&[2, 0, 1], &[1, 1, 0], &[0, 3, 1]])),
            BigInt::from(5)
        );
        // Singular.
        assert_eq!(
            integer_determinant_bareiss(m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]])),
            BigInt::zero()
        );
        // Needs a pivot swap.
        assert_eq!(
            integer_determinant_bareiss(m(&[&[0, 1], &[1, 0]])),
            BigInt::from(-1)
        );
    }
}

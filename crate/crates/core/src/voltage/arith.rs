//! Integer utilities for the voltage machinery: deterministic primality on
//! u64, probabilistic primality plus Pollard rho on big integers, complete
//! factorisation, and primitive roots.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Deterministic Miller–Rabin for 64-bit inputs (the usual 12-base set).
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u64(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub fn mul_mod_u64(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod_u64(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u64(acc, base, m);
        }
        base = mul_mod_u64(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Miller–Rabin on BigUint: the deterministic u64 bases plus a few fixed
/// larger ones. Inputs here are norms of small cyclotomic integers, far
/// below cryptographic sizes.
pub fn is_prime_big(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    let two = BigUint::from(2u32);
    if n.is_even() {
        return false;
    }
    let n_minus_1 = n - BigUint::one();
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    'witness: for a in [
        2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ] {
        let a = BigUint::from(a);
        if &a >= n {
            continue;
        }
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n_minus_1 {
            continue;
        }
        for _ in 1..s {
            x = x.modpow(&two, n);
            if x == n_minus_1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Pollard rho with Brent cycle detection; returns a nontrivial factor of a
/// composite n > 1.
fn pollard_rho(n: &BigUint) -> BigUint {
    let one = BigUint::one();
    let two = BigUint::from(2u32);
    if n.is_even() {
        return two;
    }
    let mut c = BigUint::from(1u32);
    loop {
        let mut x = BigUint::from(2u32);
        let mut y = x.clone();
        let mut d = one.clone();
        let mut count: u64 = 0;
        while d.is_one() {
            x = (&x * &x + &c) % n;
            y = (&y * &y + &c) % n;
            y = (&y * &y + &c) % n;
            let diff = if x > y { &x - &y } else { &y - &x };
            if diff.is_zero() {
                break;
            }
            d = diff.gcd(n);
            count += 1;
            if count > 10_000_000 {
                break;
            }
        }
        if !d.is_one() && !d.is_zero() && &d != n {
            return d;
        }
        c += 1u32;
    }
}

/// Complete factorisation of |n| as sorted (prime, multiplicity) pairs.
/// Returns an empty list for 0 and ±1.
pub fn factorize(n: &BigInt) -> Vec<(BigUint, u32)> {
    let mut n = n.abs().to_biguint().unwrap();
    if n.is_zero() || n.is_one() {
        return vec![];
    }
    let mut factors: Vec<BigUint> = vec![];
    // Trial division first; most norms in this crate fall apart here.
    let mut p = 2u64;
    while p < 100_000 {
        let bp = BigUint::from(p);
        if &bp * &bp > n {
            break;
        }
        while (&n % &bp).is_zero() {
            factors.push(bp.clone());
            n /= &bp;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    // Whatever is left: recursive rho splitting.
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime_big(&m) {
            factors.push(m);
            continue;
        }
        let d = pollard_rho(&m);
        let q = &m / &d;
        stack.push(d);
        stack.push(q);
    }
    factors.sort();
    let mut out: Vec<(BigUint, u32)> = vec![];
    for f in factors {
        match out.last_mut() {
            Some((p, e)) if *p == f => *e += 1,
            _ => out.push((f, 1)),
        }
    }
    out
}

/// Largest prime factor of n ≥ 2.
pub fn largest_prime_factor(n: u64) -> u64 {
    assert!(n >= 2);
    let mut n = n;
    let mut best = 1;
    let mut p = 2;
    while p * p <= n {
        while n % p == 0 {
            best = p;
            n /= p;
        }
        p += 1;
    }
    if n > 1 {
        best = n;
    }
    best
}

/// Smallest prime factor of n ≥ 2.
pub fn least_prime_factor(n: u64) -> u64 {
    assert!(n >= 2);
    let mut p = 2;
    while p * p <= n {
        if n % p == 0 {
            return p;
        }
        p += 1;
    }
    n
}

/// The least primitive root modulo an odd prime p (or p = 2).
pub fn primitive_root(p: u64) -> u64 {
    assert!(is_prime_u64(p), "{p} is not prime");
    if p == 2 {
        return 1;
    }
    let phi = p - 1;
    let mut prime_divs = vec![];
    let mut n = phi;
    let mut q = 2;
    while q * q <= n {
        if n % q == 0 {
            prime_divs.push(q);
            while n % q == 0 {
                n /= q;
            }
        }
        q += 1;
    }
    if n > 1 {
        prime_divs.push(n);
    }
    'outer: for g in 2..p {
        for &q in &prime_divs {
            if pow_mod_u64(g, phi / q, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    unreachable!("no primitive root found for prime {p}");
}

/// An element of multiplicative order m mod p; requires p ≡ 1 (mod m).
pub fn element_of_order(m: u64, p: u64) -> u64 {
    assert_eq!((p - 1) % m, 0, "need p ≡ 1 (mod {m}), got p = {p}");
    if m == 1 {
        return 1;
    }
    let g = primitive_root(p);
    pow_mod_u64(g, (p - 1) / m, p)
}

/// Ascending primes in [lo, hi].
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    (lo.max(2)..=hi).filter(|&n| is_prime_u64(n)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn primality_small() {
        let primes: Vec<u64> = (0..60).filter(|&n| is_prime_u64(n)).collect();
        assert_eq!(
            primes,
            vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59]
        );
    }

    #[test]
    fn primality_carmichael_and_large() {
        assert!(!is_prime_u64(561)); // 3·11·17
        assert!(!is_prime_u64(1_000_000_007u64 * 3));
        assert!(is_prime_u64(1_000_000_007));
        assert!(is_prime_u64(18_446_744_073_709_551_557)); // largest u64 prime
    }

    #[test]
    fn factorize_matches_trial_division() {
        for n in 2i64..500 {
            let fs = factorize(&BigInt::from(n));
            let mut prod = BigInt::from(1);
            for (p, e) in &fs {
                assert!(is_prime_big(p), "{p} not prime in factorisation of {n}");
                for _ in 0..*e {
                    prod *= BigInt::from(p.clone());
                }
            }
            assert_eq!(prod, BigInt::from(n));
        }
    }

    #[test]
    fn factorize_big_composite() {
        // 2^64 + 1 = 274177 · 67280421310721 (Fermat number F6 factors).
        let n = BigInt::from(2u8).pow(64) + 1;
        let fs = factorize(&n);
        let parts: Vec<String> = fs.iter().map(|(p, _)| p.to_string()).collect();
        assert_eq!(parts, vec!["274177", "67280421310721"]);
    }

    #[test]
    fn factorize_edge_cases() {
        assert!(factorize(&BigInt::from(0)).is_empty());
        assert!(factorize(&BigInt::from(1)).is_empty());
        assert!(factorize(&BigInt::from(-1)).is_empty());
        // Sign is ignored.
        assert_eq!(
            factorize(&BigInt::from(-12)),
            vec![(2u32.into(), 2), (3u32.into(), 1)]
        );
    }

    #[test]
    fn prime_factor_bounds() {
        assert_eq!(largest_prime_factor(12), 3);
        assert_eq!(largest_prime_factor(7), 7);
        assert_eq!(largest_prime_factor(100), 5);
        assert_eq!(least_prime_factor(35), 5);
        assert_eq!(least_prime_factor(2), 2);
        assert_eq!(least_prime_factor(121), 11);
    }

    #[test]
    fn primitive_roots_known() {
        assert_eq!(primitive_root(3), 2);
        assert_eq!(primitive_root(5), 2);
        assert_eq!(primitive_root(7), 3);
        assert_eq!(primitive_root(11), 2);
        assert_eq!(primitive_root(41), 6);
        assert_eq!(primitive_root(191), 19);
    }

    #[test]
    fn orders_of_roots() {
        for (m, p) in [(2u64, 13u64), (3, 13), (4, 13), (6, 13), (4, 5), (12, 13)] {
            let r = element_of_order(m, p);
            let mut x = r;
            let mut order = 1;
            while x != 1 {
                x = mul_mod_u64(x, r, p);
                order += 1;
            }
            assert_eq!(order, m, "order of {r} mod {p}");
        }
    }

    #[test]
    fn pinned_order_element() {
        // m = 4, p = 5: least primitive root is 2, (p-1)/m = 1, so ζ4 -> 2.
        assert_eq!(element_of_order(4, 5), 2);
    }

    #[test]
    fn prime_ranges() {
        assert_eq!(primes_in_range(10, 30), vec![11, 13, 17, 19, 23, 29]);
        assert_eq!(primes_in_range(0, 2), vec![2]);
        assert!(primes_in_range(24, 28).is_empty());
    }
}

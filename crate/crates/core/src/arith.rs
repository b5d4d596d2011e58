//! Machine-integer number theory used by the ring layer.
//!
//! Everything here works on `u64` values below `2^32`, so products of two
//! residues never overflow.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

/// Extended Euclid on non-negative integers: returns `(g, s, t)` with
/// `s*a + t*b = g = gcd(a, b)`.
pub fn xgcd(a: u64, b: u64) -> (u64, i128, i128) {
    let (mut r0, mut r1) = (a as i128, b as i128);
    let (mut s0, mut s1) = (1i128, 0i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (s0, s1) = (s1, s0 - q * s1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    (r0 as u64, s0, t0)
}

/// Reduces a signed integer into `[0, n)`.
pub fn reduce(x: i128, n: u64) -> u64 {
    x.rem_euclid(n as i128) as u64
}

pub fn mod_pow(mut base: u64, mut exp: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= n;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % n as u128) as u64;
        }
        base = ((base as u128 * base as u128) % n as u128) as u64;
        exp >>= 1;
    }
    acc
}

pub fn mod_inv(a: u64, n: u64) -> Option<u64> {
    let (g, s, _) = xgcd(a % n, n);
    if g != 1 {
        return None;
    }
    Some(reduce(s, n))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Trial-division factorization into `(prime, exponent)` pairs, primes ascending.
pub fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Returns `(p, k)` when `n = p^k` for a prime `p` and `k >= 1`.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    match factorize(n).as_slice() {
        [(p, k)] => Some((*p, *k)),
        _ => None,
    }
}

/// Chinese remaindering for pairwise coprime moduli. Returns the unique
/// residue modulo the product.
pub fn crt(residues: &[u64], moduli: &[u64]) -> u64 {
    let mut acc = 0u64;
    let mut modulus = 1u64;
    for (&r, &m) in residues.iter().zip(moduli) {
        // acc + modulus * t ≡ r (mod m)
        let inv = mod_inv(modulus % m, m).expect("moduli must be pairwise coprime");
        let diff = reduce(r as i128 - acc as i128, m);
        let t = ((diff as u128 * inv as u128) % m as u128) as u64;
        acc += modulus * t;
        modulus *= m;
    }
    acc
}

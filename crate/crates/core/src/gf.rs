//! GF(p^m) in the polynomial basis, with log/exp tables.
//!
//! Elements are encoded as integers `sum c_i p^i` over their coefficient
//! lists (low degree first).

use crate::arith;

/// Largest field order we are willing to tabulate.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

fn trim(mut f: Vec<u64>) -> Vec<u64> {
    while f.last() == Some(&0) {
        f.pop();
    }
    f
}

/// Remainder of `f` modulo the monic polynomial `g`, coefficients mod `p`.
pub fn poly_rem(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    let mut r = trim(f.to_vec());
    let dg = g.len() - 1;
    debug_assert_eq!(g[dg], 1);
    while r.len() > dg {
        let lead = *r.last().unwrap();
        let shift = r.len() - 1 - dg;
        for (i, &c) in g.iter().enumerate() {
            let idx = shift + i;
            r[idx] = (r[idx] + p - (lead * c) % p) % p;
        }
        r = trim(r);
    }
    r
}

pub fn poly_mul(f: &[u64], g: &[u64], p: u64) -> Vec<u64> {
    if f.is_empty() || g.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; f.len() + g.len() - 1];
    for (i, &a) in f.iter().enumerate() {
        for (j, &b) in g.iter().enumerate() {
            out[i + j] = (out[i + j] + a * b) % p;
        }
    }
    trim(out)
}

/// Monic polynomial of degree `d` whose lower coefficients are the base-`p`
/// digits of `index`, with `c_0` the most significant digit.
fn monic_from_index(mut index: u64, d: usize, p: u64) -> Vec<u64> {
    let mut f = vec![0u64; d + 1];
    for i in (0..d).rev() {
        f[i] = index % p;
        index /= p;
    }
    f[d] = 1;
    f
}

/// True iff `f` (monic, degree >= 1) has no monic factor of degree
/// `1..=deg/2` over GF(p).
pub fn is_irreducible(f: &[u64], p: u64) -> bool {
    let m = f.len() - 1;
    if m == 0 || f[m] != 1 {
        return false;
    }
    for d in 1..=m / 2 {
        for idx in 0..p.pow(d as u32) {
            let g = monic_from_index(idx, d, p);
            if poly_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// The lexicographically smallest monic irreducible polynomial of degree `m`
/// over GF(p), comparing coefficient lists `[c_0, c_1, ..., 1]`.
pub fn default_modulus(p: u64, m: usize) -> Vec<u64> {
    (0..p.pow(m as u32))
        .map(|idx| monic_from_index(idx, m, p))
        .find(|f| is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

#[derive(Debug)]
pub struct GfTables {
    pub p: u64,
    pub m: usize,
    pub q: u64,
    pub modulus: Vec<u64>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl GfTables {
    pub fn new(p: u64, modulus: Vec<u64>) -> Self {
        let m = modulus.len() - 1;
        let q = p.pow(m as u32);
        assert!(q <= MAX_FIELD_ORDER, "field order {q} exceeds table limit");
        let mut tables = GfTables { p, m, q, modulus, exp: Vec::new(), log: Vec::new() };
        let order = q - 1;
        let primes: Vec<u64> = arith::factorize(order).into_iter().map(|(r, _)| r).collect();
        let generator = (1..q)
            .find(|&g| primes.iter().all(|&r| tables.slow_pow(g, order / r) != 1))
            .expect("multiplicative group of a finite field is cyclic");
        let mut exp = Vec::with_capacity(order as usize);
        let mut log = vec![0u32; q as usize];
        let mut x = 1u64;
        for k in 0..order {
            exp.push(x as u32);
            log[x as usize] = k as u32;
            x = tables.slow_mul(x, generator);
        }
        tables.exp = exp;
        tables.log = log;
        tables
    }

    pub fn coeffs(&self, mut code: u64) -> Vec<u64> {
        let mut c = vec![0u64; self.m];
        for slot in c.iter_mut() {
            *slot = code % self.p;
            code /= self.p;
        }
        c
    }

    pub fn encode(&self, coeffs: &[u64]) -> u64 {
        coeffs.iter().rev().fold(0u64, |acc, &c| acc * self.p + c % self.p)
    }

    fn slow_mul(&self, a: u64, b: u64) -> u64 {
        let prod = poly_mul(&trim(self.coeffs(a)), &trim(self.coeffs(b)), self.p);
        let mut r = poly_rem(&prod, &self.modulus, self.p);
        r.resize(self.m, 0);
        self.encode(&r)
    }

    fn slow_pow(&self, a: u64, mut e: u64) -> u64 {
        let (mut acc, mut base) = (1u64, a);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.slow_mul(acc, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn add(&self, mut a: u64, mut b: u64) -> u64 {
        if self.m == 1 {
            return (a + b) % self.p;
        }
        let (mut out, mut scale) = (0u64, 1u64);
        for _ in 0..self.m {
            out += ((a % self.p + b % self.p) % self.p) * scale;
            a /= self.p;
            b /= self.p;
            scale *= self.p;
        }
        out
    }

    pub fn neg(&self, mut a: u64) -> u64 {
        if self.m == 1 {
            return (self.p - a % self.p) % self.p;
        }
        let (mut out, mut scale) = (0u64, 1u64);
        for _ in 0..self.m {
            out += ((self.p - a % self.p) % self.p) * scale;
            a /= self.p;
            scale *= self.p;
        }
        out
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if a == 0 || b == 0 {
            return 0;
        }
        let order = self.q - 1;
        let k = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % order;
        self.exp[k as usize] as u64
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if a == 0 {
            return None;
        }
        let order = self.q - 1;
        let k = (order - self.log[a as usize] as u64) % order;
        Some(self.exp[k as usize] as u64)
    }
}

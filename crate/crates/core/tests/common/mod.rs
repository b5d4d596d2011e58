#![allow(dead_code)]

use cartan_core::{Elem, Matrix, Ring, SlnAlgebra};
use rand::Rng as _;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn ring(text: &str) -> Ring {
    Ring::parse(text).unwrap()
}

pub fn random_elem(rng: &mut ChaCha8Rng, r: &Ring) -> Elem {
    r.elem(rng.gen_range(0..r.size())).unwrap()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, r: &Ring, rows: usize, cols: usize) -> Matrix {
    Matrix::from_fn(r, rows, cols, |_, _| random_elem(rng, r))
}

/// A random traceless matrix, built from random coordinates.
pub fn random_sl(rng: &mut ChaCha8Rng, alg: &SlnAlgebra) -> Matrix {
    let coords: Vec<Elem> = (0..alg.dim()).map(|_| random_elem(rng, alg.ring())).collect();
    alg.from_coords(&coords).unwrap()
}

/// Brute-force dot product count of `{x : M x = 0}`.
pub fn brute_kernel_size(m: &Matrix) -> u128 {
    let r = m.ring();
    let c = m.cols();
    let q = r.size();
    let total = q.pow(c as u32);
    let mut count = 0;
    for mut idx in 0..total {
        let mut x = Vec::with_capacity(c);
        for _ in 0..c {
            x.push(r.elem(idx % q).unwrap());
            idx /= q;
        }
        let zero = (0..m.rows()).all(|i| {
            let s = (0..c).fold(r.zero(), |acc, j| r.add(acc, r.mul(m.get(i, j), x[j])));
            r.is_zero(s)
        });
        if zero {
            count += 1;
        }
    }
    count
}

mod common;

use cartan_core::{solve_kernel, Matrix, Ring, Submodule};
use common::{brute_kernel_size, random_matrix, ring, rng};
use proptest::prelude::*;

const RINGS: &[&str] = &["Z/12", "Z/9", "Z/8", "F_4", "F_9", "Z/7", "Z/2 x Z/9", "Z/217"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn determinant_is_multiplicative(idx in 0..RINGS.len(), n in 1usize..6, seed in any::<u64>()) {
        let r = ring(RINGS[idx]);
        let mut g = rng(seed);
        let a = random_matrix(&mut g, &r, n, n);
        let b = random_matrix(&mut g, &r, n, n);
        let ab = a.matmul(&b).unwrap();
        prop_assert_eq!(ab.determinant().unwrap(), r.mul(a.determinant().unwrap(), b.determinant().unwrap()));
    }

    #[test]
    fn inverse_exists_iff_unit_determinant(idx in 0..RINGS.len(), n in 1usize..5, seed in any::<u64>()) {
        let r = ring(RINGS[idx]);
        let a = random_matrix(&mut rng(seed), &r, n, n);
        let det = a.determinant().unwrap();
        match a.inverse() {
            Ok(inv) => {
                prop_assert!(r.is_unit(det));
                prop_assert_eq!(a.matmul(&inv).unwrap(), Matrix::identity(&r, n));
                prop_assert_eq!(inv.matmul(&a).unwrap(), Matrix::identity(&r, n));
            }
            Err(_) => prop_assert!(!r.is_unit(det)),
        }
    }

    #[test]
    fn kernel_matches_brute_force(idx in 0..RINGS.len(), rows in 1usize..4, cols in 1usize..4, seed in any::<u64>()) {
        let r = ring(RINGS[idx]);
        prop_assume!(r.size().pow(cols as u32) <= 20_000);
        let m = random_matrix(&mut rng(seed), &r, rows, cols);
        let k = solve_kernel(&m);
        prop_assert_eq!(k.cardinality(), brute_kernel_size(&m));
        for v in k.canonical_rows() {
            for i in 0..rows {
                let s = (0..cols).fold(r.zero(), |acc, j| r.add(acc, r.mul(m.get(i, j), v[j])));
                prop_assert!(r.is_zero(s));
            }
        }
    }

    #[test]
    fn canonical_form_ignores_row_operations(idx in 0..RINGS.len(), seed in any::<u64>()) {
        let r = ring(RINGS[idx]);
        let mut g = rng(seed);
        let m = random_matrix(&mut g, &r, 3, 4);
        let u = loop {
            let u = random_matrix(&mut g, &r, 3, 3);
            if r.is_unit(u.determinant().unwrap()) {
                break u;
            }
        };
        let mixed = u.matmul(&m).unwrap();
        prop_assert_eq!(Submodule::row_span(&m), Submodule::row_span(&mixed));
    }

    #[test]
    fn charpoly_annihilates(idx in 0..RINGS.len(), n in 1usize..5, seed in any::<u64>()) {
        let r = ring(RINGS[idx]);
        let a = random_matrix(&mut rng(seed), &r, n, n);
        let coeffs = a.charpoly().unwrap();
        prop_assert_eq!(coeffs.len(), n + 1);
        let mut acc = Matrix::zeros(&r, n, n);
        for &c in &coeffs {
            acc = acc.matmul(&a).unwrap().add(&Matrix::scalar(&r, n, c)).unwrap();
        }
        prop_assert!(acc.is_zero());
    }
}

#[test]
fn kernel_over_z217_splits_by_crt() {
    let z = Ring::zn(217).unwrap();
    let (z7, z31) = (Ring::zn(7).unwrap(), Ring::zn(31).unwrap());
    let mut g = rng(11);
    for _ in 0..50 {
        let m = random_matrix(&mut g, &z, 3, 5);
        let reduce = |f: &Ring| Matrix::from_fn(f, 3, 5, |i, j| f.from_int(m.get(i, j).code() as i64));
        let k = solve_kernel(&m).cardinality();
        assert_eq!(k, solve_kernel(&reduce(&z7)).cardinality() * solve_kernel(&reduce(&z31)).cardinality());
    }
}

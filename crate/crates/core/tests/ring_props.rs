mod common;

use cartan_core::arith;
use cartan_core::{crt_decompose, field_trace, find_primitive_root, trace_dual_basis, Ring};
use common::{random_elem, ring, rng};
use proptest::prelude::*;

const RINGS: &[&str] = &["Z/12", "Z/9", "Z/217", "F_4", "F_8", "F_9", "F_25", "F_7", "Z/4 x F_4", "Z/3 x Z/5"];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_axioms(idx in 0..RINGS.len(), seed in any::<u64>()) {
        let r = ring(RINGS[idx]);
        let mut g = rng(seed);
        let (a, b, c) = (random_elem(&mut g, &r), random_elem(&mut g, &r), random_elem(&mut g, &r));
        prop_assert_eq!(r.add(a, b), r.add(b, a));
        prop_assert_eq!(r.mul(a, b), r.mul(b, a));
        prop_assert_eq!(r.add(r.add(a, b), c), r.add(a, r.add(b, c)));
        prop_assert_eq!(r.mul(r.mul(a, b), c), r.mul(a, r.mul(b, c)));
        prop_assert_eq!(r.mul(a, r.add(b, c)), r.add(r.mul(a, b), r.mul(a, c)));
        prop_assert_eq!(r.add(a, r.neg(a)), r.zero());
        prop_assert_eq!(r.mul(a, r.one()), a);
        prop_assert_eq!(r.sub(a, b), r.add(a, r.neg(b)));
        match r.inv(a) {
            Some(i) => prop_assert_eq!(r.mul(a, i), r.one()),
            None => prop_assert!(r.elements().all(|x| r.mul(a, x) != r.one())),
        }
        prop_assert_eq!(r.from_json(&r.to_json(a)).unwrap(), a);
    }

    #[test]
    fn zn_agrees_with_its_local_factors(n in 2u64..5000, x in any::<u64>(), y in any::<u64>()) {
        let r = Ring::zn(n).unwrap();
        let (a, b) = (r.elem(x % n).unwrap(), r.elem(y % n).unwrap());
        let locals = crt_decompose(r.spec());
        let moduli: Vec<u64> = locals.iter().map(|lf| lf.spec.order()).collect();
        prop_assert_eq!(moduli.iter().product::<u64>(), n);
        for &m in &moduli {
            prop_assert_eq!(r.mul(a, b).code() % m, (a.code() % m) * (b.code() % m) % m);
            prop_assert_eq!(r.add(a, b).code() % m, (a.code() % m + b.code() % m) % m);
        }
        let residues: Vec<u64> = moduli.iter().map(|m| a.code() % m).collect();
        prop_assert_eq!(arith::crt(&residues, &moduli), a.code());
    }

    #[test]
    fn root_existence_matches_brute_force(n in 2u64..10_000, p_idx in 0usize..3) {
        let p = [2u64, 3, 5][p_idx];
        let r = Ring::zn(n).unwrap();
        let brute = (0..n).any(|u| {
            u != 1 % n && arith::mod_pow(u, p, n) == 1 % n && arith::gcd((u + n - 1) % n, n) == 1
        });
        let found = find_primitive_root(&r, p).unwrap();
        prop_assert_eq!(found.is_some(), brute);
        if let Some(u) = found {
            let one = r.one();
            prop_assert!(u != one && r.pow(u, p) == one && r.is_unit(r.sub(u, one)));
        }
        let criterion = arith::factorize(n).iter().all(|&(q, _)| (q - 1) % p == 0);
        prop_assert_eq!(brute, criterion);
    }
}

fn fields_up_to(limit: u64) -> Vec<Ring> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7] {
        let mut m = 1;
        while p.pow(m as u32) <= limit {
            out.push(Ring::gf(p, m).unwrap());
            m += 1;
        }
    }
    out
}

#[test]
fn trace_is_linear_and_onto() {
    let mut g = rng(7);
    for f in fields_up_to(343) {
        let (p, _) = f.field_params().unwrap();
        let mut hit = vec![false; p as usize];
        for x in f.elements() {
            hit[field_trace(&f, x).unwrap() as usize] = true;
        }
        assert!(hit.iter().all(|&h| h), "{f}");
        for _ in 0..50 {
            let (a, b) = (random_elem(&mut g, &f), random_elem(&mut g, &f));
            let c = f.from_int(3);
            let lhs = field_trace(&f, f.add(a, f.mul(c, b))).unwrap();
            let rhs = (field_trace(&f, a).unwrap() + 3 * field_trace(&f, b).unwrap()) % p;
            assert_eq!(lhs, rhs, "{f}");
        }
    }
}

#[test]
fn dual_bases_are_dual() {
    for f in fields_up_to(343) {
        let (_, m) = f.field_params().unwrap();
        if m == 1 {
            continue;
        }
        let mut c = vec![0; m];
        c[1] = 1;
        let t = f.gf_elem(&c).unwrap();
        let basis: Vec<_> = (0..m as u64).map(|i| f.pow(t, i)).collect();
        let dual = trace_dual_basis(&f, &basis).unwrap();
        for (i, &a) in basis.iter().enumerate() {
            for (j, &b) in dual.iter().enumerate() {
                assert_eq!(field_trace(&f, f.mul(a, b)).unwrap(), u64::from(i == j), "{f}");
            }
        }
    }
}

//! Acceptance run: one PASS/FAIL line per criterion, with its time limit.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use cartan_core::construct::{b_form, build_generators, build_j, build_j_w, shift_matrix_x, symplectic_basis, JIndex};
use cartan_core::search::{
    classical_odac_search_sl3, exhaustive_lemma_shape_check, lemma_h_oracle, sl2_orthogonality_analysis,
    verify_remark_no_pair, Budget,
};
use cartan_core::{
    construct_odac, construct_prime, construct_prime_power, find_primitive_root, verify_odac, Decomposition, Elem,
    Matrix, Ring, SlnAlgebra, Subalgebra, Submodule, Verdict, VerifyOptions,
};
use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<(), String>;
type Criterion = (&'static str, Duration, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ring(text: &str) -> Ring {
    Ring::parse(text).unwrap()
}

fn verified(d: &Decomposition) -> Check {
    let report = verify_odac(d, VerifyOptions::default()).map_err(|e| e.to_string())?;
    ensure(report.passed(), || format!("verification failed: {}", report.to_json()["witnesses"]))
}

fn shape(d: &Decomposition, count: usize, rank: usize) -> Check {
    ensure(d.components().len() == count, || format!("{} components, expected {count}", d.components().len()))?;
    ensure(d.components().iter().all(|c| c.subalgebra.basis().len() == rank), || {
        format!("a component rank differs from {rank}")
    })?;
    let n = d.algebra().n();
    ensure(count * rank == n * n - 1, || "total rank is not n^2 - 1".into())
}

fn sl2_family() -> Check {
    for q in [3, 5, 7, 9, 15] {
        let r = Ring::zn(q).unwrap();
        let Verdict::Constructible(d) = construct_odac(&r, 2).map_err(|e| e.to_string())? else {
            return Err(format!("sl_2(Z/{q}) not constructible"));
        };
        shape(&d, 3, 1)?;
        verified(&d)?;
    }
    Ok(())
}

fn span(alg: &SlnAlgebra, mats: &[[[i64; 3]; 3]]) -> Submodule {
    let basis = mats.iter().map(|m| Matrix::from_ints(alg.ring(), &[&m[0], &m[1], &m[2]])).collect();
    Subalgebra::new(alg, basis).unwrap().coords().clone()
}

fn sl3_classical_iff() -> Check {
    let expected = [false, true, false, true, true, true];
    for (q, want) in [5, 7, 11, 13, 19, 25].into_iter().zip(expected) {
        let r = classical_odac_search_sl3(q, &Budget::unlimited()).map_err(|e| e.to_string())?;
        ensure(r.exists == want, || format!("q = {q}: exists = {}", r.exists))?;
        for w in &r.witnesses {
            let report = verify_odac(&w.decomposition, VerifyOptions { classical: true }).map_err(|e| e.to_string())?;
            ensure(report.passed() && report.all_classical == Some(true), || format!("q = {q}: uncertified witness"))?;
        }
        if q == 7 {
            let alg = r.witnesses[0].decomposition.algebra().clone();
            let (u, u2) = (2, 4);
            let h0 = span(&alg, &[[[1, 0, 0], [0, -1, 0], [0, 0, 0]], [[0, 0, 0], [0, 1, 0], [0, 0, -1]]]);
            let h1 = span(&alg, &[[[0, 1, 0], [0, 0, 1], [1, 0, 0]], [[0, 0, 1], [1, 0, 0], [0, 1, 0]]]);
            let h2 = span(&alg, &[[[0, 1, 0], [0, 0, u], [u2, 0, 0]], [[0, 0, 1], [u2, 0, 0], [0, u, 0]]]);
            let h3 = span(&alg, &[[[0, 1, 0], [0, 0, u2], [u, 0, 0]], [[0, 0, 1], [u, 0, 0], [0, u2, 0]]]);
            let want = [h0, h1, h2, h3];
            let matches = r.witnesses.iter().any(|w| {
                let got: Vec<Submodule> =
                    w.decomposition.components().iter().map(|c| c.subalgebra.coords().clone()).collect();
                got == want
            });
            ensure(matches, || "no q = 7 witness equals the displayed H_0..H_3".into())?;
        }
    }
    Ok(())
}

fn prime_power_constructions() -> Check {
    let z9 = ring("Z/9");
    let d = construct_prime_power(&z9, 2, 2, z9.from_int(-1)).map_err(|e| e.to_string())?;
    shape(&d, 5, 3)?;
    verified(&d)?;

    let f7 = ring("F_7");
    let d = construct_prime_power(&f7, 3, 2, f7.from_int(2)).map_err(|e| e.to_string())?;
    shape(&d, 10, 8)?;
    verified(&d)?;

    let z217 = ring("Z/217");
    let Verdict::Constructible(d) = construct_odac(&z217, 3).map_err(|e| e.to_string())? else {
        return Err("sl_3(Z/217) not constructible".into());
    };
    ensure(d.provenance["u"] == 191, || format!("u = {}", d.provenance["u"]))?;
    shape(&d, 4, 2)?;
    verified(&d)
}

fn killing_identity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for text in ["Z/9", "F_7", "F_4", "Z/217"] {
        let r = ring(text);
        for n in 2..=4 {
            let alg = SlnAlgebra::new(&r, n).unwrap();
            for _ in 0..200 {
                let mut pick = || -> Matrix {
                    let c: Vec<Elem> = (0..alg.dim()).map(|_| r.elem(rng.gen_range(0..r.size())).unwrap()).collect();
                    alg.from_coords(&c).unwrap()
                };
                let (a, b) = (pick(), pick());
                let (k1, k2) = (alg.killing_ad_form(&a, &b).unwrap(), alg.killing_trace_form(&a, &b).unwrap());
                ensure(k1 == k2, || format!("sl_{n}({text}): {a} {b}"))?;
            }
        }
    }
    Ok(())
}

fn prime_relations(r: &Ring, p: u64) -> Check {
    let u = find_primitive_root(r, p).unwrap().ok_or_else(|| format!("no root in {r}"))?;
    let g = build_generators(r, p, u).map_err(|e| e.to_string())?;
    let pw = |e: i64| r.pow_signed(u, e).unwrap();
    for a in 0..p {
        for b in 0..p {
            let j = build_j(&g, JIndex { a, b });
            ensure(r.is_zero(j.trace().unwrap()) == ((a, b) != (0, 0)), || format!("trace of J({a},{b}) over {r}"))?;
            let pd = g.shift.pow(b).unwrap().matmul(&g.d.pow(a).unwrap()).unwrap();
            ensure(pd == j.scale(pw(-((a * b) as i64))), || format!("P^b D^a at ({a},{b}) over {r}"))?;
            for c in 0..p {
                for d in 0..p {
                    let k = build_j(&g, JIndex { a: c, b: d });
                    let s = build_j(&g, JIndex::new((a + c) as i64, (b + d) as i64, p));
                    ensure(j.matmul(&k).unwrap() == s.scale(pw(-((b * c) as i64))), || "J product".into())?;
                    let coeff = r.sub(pw(-((b * c) as i64)), pw(-((a * d) as i64)));
                    ensure(j.commutator(&k).unwrap() == s.scale(coeff), || "J bracket".into())?;
                }
            }
        }
    }
    Ok(())
}

fn relation_suite() -> Check {
    for (text, p) in [("Z/9", 2), ("Z/7", 3), ("Z/11", 5)] {
        prime_relations(&ring(text), p)?;
    }
    let r = ring("Z/9");
    let u = r.from_int(-1);
    let g = build_generators(&r, 2, u).map_err(|e| e.to_string())?;
    let s = symplectic_basis(2, 2).map_err(|e| e.to_string())?;
    let f = &s.field;
    let ws: Vec<_> = f.elements().flat_map(|a| f.elements().map(move |b| (a, b))).collect();
    for &w in &ws {
        let jw = build_j_w(&s, &g, w);
        for &w2 in &ws {
            let (c, c2) = (s.coords_of(w), s.coords_of(w2));
            let sum = build_j_w(&s, &g, (f.add(w.0, w2.0), f.add(w.1, w2.1)));
            let jw2 = build_j_w(&s, &g, w2);
            let product = sum.scale(r.pow_signed(u, -(b_form(&c, &c2, 2) as i64)).unwrap());
            ensure(jw.matmul(&jw2).unwrap() == product, || "Kronecker product rule".into())?;
            let coeff = r.mul(
                r.pow_signed(u, -(b_form(&c2, &c, 2) as i64)).unwrap(),
                r.sub(r.pow(u, s.pairing(w, w2)), r.one()),
            );
            ensure(jw.commutator(&jw2).unwrap() == sum.scale(coeff), || "Kronecker bracket rule".into())?;
        }
    }
    Ok(())
}

fn shift_matrix() -> Check {
    for (text, p, u) in [("Z/7", 3u64, 2i64), ("Z/11", 5, 3)] {
        let r = ring(text);
        let u = r.from_int(u);
        let d = construct_prime(&r, p, u).map_err(|e| e.to_string())?;
        let x = shift_matrix_x(&r, p, u).map_err(|e| e.to_string())?;
        let g = build_generators(&r, p, u).unwrap();
        ensure(x.matmul(&g.shift).unwrap() == g.shift.matmul(&x).unwrap(), || "X does not commute with P".into())?;
        let moved = d.conjugate(&x).map_err(|e| e.to_string())?;
        let before: Vec<_> = d.components().iter().map(|c| c.subalgebra.coords().clone()).collect();
        let after: Vec<_> = moved.components().iter().map(|c| c.subalgebra.coords().clone()).collect();
        ensure(after[0] == before[0], || format!("{text}: H_inf not fixed"))?;
        let p = p as usize;
        for k in 0..p {
            ensure(after[1 + k] == before[1 + (k + p - 1) % p], || format!("{text}: H_{k} not shifted"))?;
        }
    }
    Ok(())
}

fn nonexistence() -> Check {
    for (text, n) in [("Z/2", 2), ("Z/3", 6), ("Z/6", 6), ("Z/9", 3)] {
        let r = ring(text);
        match construct_odac(&r, n).map_err(|e| e.to_string())? {
            Verdict::NoOdac { witness, .. } => {
                let alg = SlnAlgebra::new(&r, n).unwrap();
                let central = alg.basis().iter().all(|b| witness.commutator(b).unwrap().is_zero());
                ensure(!witness.is_zero() && central, || format!("bad witness for sl_{n}({text})"))?;
            }
            _ => return Err(format!("sl_{n}({text}) not reported as NoODAC")),
        }
    }
    let absent = find_primitive_root(&ring("Z/9"), 3).map_err(|e| e.to_string())?.is_none();
    ensure(absent, || "Z/9 should have no admissible cube root".into())
}

fn lemma_oracle_and_shapes() -> Check {
    for q in [5, 7] {
        let r = lemma_h_oracle(q, &Budget::unlimited()).map_err(|e| e.to_string())?;
        ensure(r.counterexamples.is_empty(), || format!("q = {q}: {} counterexamples", r.counterexamples.len()))?;
    }
    let s = exhaustive_lemma_shape_check(5, &Budget::unlimited()).map_err(|e| e.to_string())?;
    ensure(s.holds(), || format!("{} exceptions", s.exceptions.len()))
}

fn no_classical_pair() -> Check {
    for q in [5, 11] {
        ensure(verify_remark_no_pair(q, &Budget::unlimited()).map_err(|e| e.to_string())?, || format!("q = {q}"))?;
    }
    Ok(())
}

fn sl2_uniqueness() -> Check {
    let r = sl2_orthogonality_analysis(7, &Budget::unlimited()).map_err(|e| e.to_string())?;
    let f = &r.field;
    for row in &r.rows {
        ensure(row.partners == [f.neg(row.a)], || format!("a = {}: partners {:?}", f.format(row.a), row.partners))?;
        let euler = f.pow(row.a, 3) == f.one();
        ensure(row.is_square == euler, || format!("a = {}: square classification", f.format(row.a)))?;
        ensure(row.diagonal_conjugator.is_some() == euler, || format!("a = {}: conjugator", f.format(row.a)))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("sl_2 family over Z/q", Duration::from_secs(1), sl2_family),
        ("sl_3 classical ODAC iff 3 | q - 1", Duration::from_secs(120), sl3_classical_iff),
        ("prime-power constructions", Duration::from_secs(60), prime_power_constructions),
        ("Killing identity", Duration::from_secs(30), killing_identity),
        ("relation suite", Duration::from_secs(30), relation_suite),
        ("shift matrix X", Duration::from_secs(10), shift_matrix),
        ("nonexistence", Duration::from_secs(5), nonexistence),
        ("lemma oracle and shape check", Duration::from_secs(600), lemma_oracle_and_shapes),
        ("no classical pair without cube roots", Duration::from_secs(60), no_classical_pair),
        ("sl_2 partner uniqueness", Duration::from_secs(5), sl2_uniqueness),
    ];
    let mut failed = 0;
    for (i, (name, limit, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let result = result.and_then(|()| ensure(elapsed <= *limit, || format!("took {elapsed:.2?}, limit {limit:?}")));
        match result {
            Ok(()) => println!("PASS {:>2} {name} ({elapsed:.2?})", i + 1),
            Err(e) => {
                failed += 1;
                println!("FAIL {:>2} {name} ({elapsed:.2?}): {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

//! Exhaustive searches over small finite fields for `sl_2` and `sl_3`.
//!
//! Every search refuses inputs above a fixed `q` ceiling and checks a
//! [`Budget`] while it runs.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::module::{solve_kernel, Submodule};
use crate::ring::{Elem, Ring, RingSpec};
use crate::roots::is_classical_cartan;
use crate::sln::{SlnAlgebra, Subalgebra};
use crate::verify::{verify_odac, Component, Decomposition, VerificationReport, VerifyOptions};

pub const MAX_SL3_SEARCH_Q: u64 = 64;
pub const MAX_REMARK_Q: u64 = 64;
pub const MAX_ORACLE_Q: u64 = 9;
pub const MAX_SHAPE_CHECK_Q: u64 = 7;
pub const MAX_SL2_ANALYSIS_Q: u64 = 1024;

/// Environment variable holding an optional wall-clock limit in milliseconds.
pub const BUDGET_ENV: &str = "CARTAN_FORGE_BUDGET_MS";

/// A wall-clock deadline for long enumerations.
#[derive(Clone, Copy, Debug, Default)]
pub struct Budget {
    deadline: Option<Instant>,
}

impl Budget {
    pub fn unlimited() -> Budget {
        Budget { deadline: None }
    }

    pub fn with_limit(limit: Duration) -> Budget {
        Budget { deadline: Some(Instant::now() + limit) }
    }

    /// Reads [`BUDGET_ENV`]; unset or unparsable means unlimited.
    pub fn from_env() -> Budget {
        std::env::var(BUDGET_ENV)
            .ok()
            .and_then(|s| s.trim().parse::<u64>().ok())
            .map_or_else(Budget::unlimited, |ms| Budget::with_limit(Duration::from_millis(ms)))
    }

    pub fn check(&self) -> Result<()> {
        match self.deadline {
            Some(d) if Instant::now() > d => Err(Error::Budget("time limit reached".into())),
            _ => Ok(()),
        }
    }
}

fn guard_q(q: u64, ceiling: u64, what: &str) -> Result<()> {
    if q > ceiling {
        return Err(Error::Budget(format!("{what} is limited to q <= {ceiling}, got {q}")));
    }
    Ok(())
}

fn field(q: u64) -> Result<Ring> {
    Ring::new(RingSpec::field_of_order(q)?)
}

fn require_char_not(f: &Ring, excluded: &[u64]) -> Result<()> {
    let p = f.characteristic();
    if excluded.contains(&p) {
        return Err(Error::Precondition(format!("characteristic {p} of {f} is excluded here")));
    }
    Ok(())
}

fn nonzero(f: &Ring) -> Vec<Elem> {
    f.elements().filter(|&x| !f.is_zero(x)).collect()
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// The diagonal Cartan subalgebra `H_0`.
pub fn diagonal_cartan(alg: &SlnAlgebra) -> Subalgebra {
    let n = alg.n();
    let start = n * (n - 1);
    Subalgebra::new(alg, alg.basis()[start..].to_vec()).expect("diagonal basis lies in sl_n")
}

/// `<[[0,1],[a,0]]>` in `sl_2`.
pub fn lemma_form_sl2(alg: &SlnAlgebra, a: Elem) -> Result<Subalgebra> {
    let f = alg.ring();
    let m = Matrix::from_rows(f, vec![vec![f.zero(), f.one()], vec![a, f.zero()]])?;
    Subalgebra::new(alg, vec![m])
}

/// The two-generator subalgebra of `sl_3` with entries `a`, `b`, `ab`.
pub fn lemma_form_sl3(alg: &SlnAlgebra, a: Elem, b: Elem) -> Result<Subalgebra> {
    let f = alg.ring();
    let (o, l, ab) = (f.zero(), f.one(), f.mul(a, b));
    let m1 = Matrix::from_rows(f, vec![vec![o, l, o], vec![o, o, a], vec![ab, o, o]])?;
    let m2 = Matrix::from_rows(f, vec![vec![o, o, l], vec![ab, o, o], vec![o, b, o]])?;
    Subalgebra::new(alg, vec![m1, m2])
}

/// Killing orthogonality of the forms `(a,b)` and `(c,d)`, written as the
/// pair of conditions `cd + ad + ab = 0` and `cd + cb + ab = 0`.
pub fn lemma_pair_orthogonal(f: &Ring, (a, b): (Elem, Elem), (c, d): (Elem, Elem)) -> bool {
    let (cd, ab) = (f.mul(c, d), f.mul(a, b));
    f.is_zero(f.add(f.add(cd, f.mul(a, d)), ab)) && f.is_zero(f.add(f.add(cd, f.mul(c, b)), ab))
}

/// A certified 4-component classical ODAC `H_0 + H(p_1) + H(p_2) + H(p_3)`.
#[derive(Clone, Debug)]
pub struct Sl3Witness {
    pub params: [(Elem, Elem); 3],
    pub decomposition: Decomposition,
    pub report: VerificationReport,
}

#[derive(Clone, Debug)]
pub struct Sl3SearchReport {
    pub q: u64,
    pub field: Ring,
    pub exists: bool,
    pub candidates: usize,
    pub edges: usize,
    /// Cliques whose decomposition failed certification.
    pub uncertified: usize,
    pub witnesses: Vec<Sl3Witness>,
    pub elapsed_ms: u64,
}

impl Sl3SearchReport {
    pub fn to_json(&self) -> Value {
        let f = &self.field;
        let witnesses: Vec<Value> = self
            .witnesses
            .iter()
            .map(|w| Value::Array(w.params.iter().map(|&(a, b)| json!([f.to_json(a), f.to_json(b)])).collect()))
            .collect();
        json!({
            "q": self.q,
            "exists": self.exists,
            "witnesses": witnesses,
            "candidates": self.candidates,
            "edges": self.edges,
            "uncertified": self.uncertified,
            "elapsed_ms": self.elapsed_ms,
        })
    }
}

/// Searches for classical ODACs of `sl_3(F_q)` containing `H_0`.
///
/// All other components must have the two-parameter form, so the search
/// looks for triangles in the orthogonality graph on `(F_q^x)^2` and
/// certifies each one with [`verify_odac`].
pub fn classical_odac_search_sl3(q: u64, budget: &Budget) -> Result<Sl3SearchReport> {
    let start = Instant::now();
    guard_q(q, MAX_SL3_SEARCH_Q, "the sl_3 search")?;
    let f = field(q)?;
    require_char_not(&f, &[2, 3])?;
    let units = nonzero(&f);
    let candidates: Vec<(Elem, Elem)> = units.iter().flat_map(|&a| units.iter().map(move |&b| (a, b))).collect();
    let neighbours: Vec<Vec<usize>> = candidates
        .par_iter()
        .enumerate()
        .map(|(i, &x)| (i + 1..candidates.len()).filter(|&j| lemma_pair_orthogonal(&f, x, candidates[j])).collect())
        .collect();
    budget.check()?;
    let edges = neighbours.iter().map(Vec::len).sum();
    let mut cliques = Vec::new();
    for (i, ni) in neighbours.iter().enumerate() {
        for (pos, &j) in ni.iter().enumerate() {
            for &k in &ni[pos + 1..] {
                if neighbours[j].binary_search(&k).is_ok() {
                    cliques.push([candidates[i], candidates[j], candidates[k]]);
                }
            }
        }
    }

    let alg = SlnAlgebra::new(&f, 3)?;
    let h0 = diagonal_cartan(&alg);
    let certified = cliques
        .par_iter()
        .map(|params| {
            budget.check()?;
            let mut components = vec![Component { name: "H_0".into(), subalgebra: h0.clone() }];
            for (idx, &(a, b)) in params.iter().enumerate() {
                components.push(Component { name: format!("H_{}", idx + 1), subalgebra: lemma_form_sl3(&alg, a, b)? });
            }
            let mut provenance = serde_json::Map::new();
            provenance.insert("q".into(), json!(q));
            provenance.insert(
                "params".into(),
                Value::Array(params.iter().map(|&(a, b)| json!([f.to_json(a), f.to_json(b)])).collect()),
            );
            let decomposition = Decomposition::new(&alg, components, provenance)?;
            let report = verify_odac(&decomposition, VerifyOptions { classical: true })?;
            Ok(Sl3Witness { params: *params, decomposition, report })
        })
        .collect::<Result<Vec<_>>>()?;
    let (witnesses, rejected): (Vec<_>, Vec<_>) =
        certified.into_iter().partition(|w| w.report.passed() && w.report.all_classical == Some(true));

    Ok(Sl3SearchReport {
        q,
        field: f,
        exists: !witnesses.is_empty(),
        candidates: candidates.len(),
        edges,
        uncertified: rejected.len(),
        witnesses,
        elapsed_ms: elapsed_ms(start),
    })
}

/// Checks that no two-parameter form is a classical Cartan subalgebra when
/// `F_q` has no primitive cube root of unity.
pub fn verify_remark_no_pair(q: u64, budget: &Budget) -> Result<bool> {
    guard_q(q, MAX_REMARK_Q, "the classical pair check")?;
    let f = field(q)?;
    require_char_not(&f, &[2, 3])?;
    if (q - 1).is_multiple_of(3) {
        return Err(Error::Precondition(format!("3 divides q - 1 = {}", q - 1)));
    }
    let alg = SlnAlgebra::new(&f, 3)?;
    let units = nonzero(&f);
    let pairs: Vec<(Elem, Elem)> = units.iter().flat_map(|&a| units.iter().map(move |&b| (a, b))).collect();
    let classical = pairs
        .par_iter()
        .map(|&(a, b)| {
            budget.check()?;
            is_classical_cartan(&lemma_form_sl3(&alg, a, b)?)
        })
        .collect::<Result<Vec<bool>>>()?;
    Ok(classical.iter().all(|c| !c))
}

/// A commuting pair `A`, `B` whose span has nondegenerate Killing form.
#[derive(Clone, Debug)]
pub struct OracleInstance {
    /// `(a, b, c, d)` of `A = [[0,0,0],[a,0,b],[c,d,0]]`.
    pub a_params: [Elem; 4],
    /// `(x, y, z, u, v, w)` of `B = [[0,x,y],[u,0,z],[v,w,0]]`.
    pub b_params: [Elem; 6],
    pub gram_det: Elem,
}

#[derive(Clone, Debug)]
pub struct LemmaOracleReport {
    pub q: u64,
    pub instances: usize,
    pub pairs_checked: u64,
    pub counterexamples: Vec<OracleInstance>,
    pub elapsed_ms: u64,
}

impl LemmaOracleReport {
    pub fn to_json(&self, f: &Ring) -> Value {
        let cx: Vec<Value> = self
            .counterexamples
            .iter()
            .map(|c| {
                json!({
                    "A": c.a_params.iter().map(|&x| f.to_json(x)).collect::<Vec<_>>(),
                    "B": c.b_params.iter().map(|&x| f.to_json(x)).collect::<Vec<_>>(),
                    "gram_det": f.to_json(c.gram_det),
                })
            })
            .collect();
        json!({
            "q": self.q,
            "instances": self.instances,
            "pairs_checked": self.pairs_checked,
            "counterexamples": cx,
            "elapsed_ms": self.elapsed_ms,
        })
    }
}

fn zero_diagonal(f: &Ring, e: &[Elem]) -> Matrix {
    let o = f.zero();
    Matrix::from_rows(f, vec![vec![o, e[0], e[1]], vec![e[2], o, e[3]], vec![e[4], e[5], o]]).expect("3x3")
}

/// Checks one matrix `A` with zero first row: every zero-diagonal `B`
/// commuting with it and outside `span{A}` must give a degenerate Killing
/// Gram matrix on `span{A, B}`. Returns the number of pairs and any
/// counterexamples.
pub fn lemma_oracle_instance(alg: &SlnAlgebra, abcd: [Elem; 4]) -> Result<(u64, Vec<OracleInstance>)> {
    let f = alg.ring();
    let [a, b, c, d] = abcd;
    let o = f.zero();
    let am = Matrix::from_rows(f, vec![vec![o, o, o], vec![a, o, b], vec![c, d, o]])?;
    // columns: the bracket [A, E] for each zero-diagonal unit E, flattened
    let mut linear = Matrix::zeros(f, 9, 6);
    for k in 0..6 {
        let mut e = [o; 6];
        e[k] = f.one();
        let br = am.commutator(&zero_diagonal(f, &e))?;
        for (i, &x) in br.entries().iter().enumerate() {
            linear.set(i, k, x);
        }
    }
    let commutant = solve_kernel(&linear);
    let a_coords = [o, o, a, b, c, d];
    let span_a = Submodule::span(f, 6, vec![a_coords.to_vec()])?;
    let k_aa = alg.killing_trace_form(&am, &am)?;
    let mut pairs = 0;
    let mut counterexamples = Vec::new();
    for bv in commutant.elements() {
        if span_a.contains(&bv)? {
            continue;
        }
        pairs += 1;
        let bm = zero_diagonal(f, &bv);
        let k_ab = alg.killing_trace_form(&am, &bm)?;
        let k_bb = alg.killing_trace_form(&bm, &bm)?;
        let det = f.sub(f.mul(k_aa, k_bb), f.mul(k_ab, k_ab));
        if !f.is_zero(det) {
            counterexamples.push(OracleInstance {
                a_params: abcd,
                b_params: bv.try_into().expect("six coordinates"),
                gram_det: det,
            });
        }
    }
    Ok((pairs, counterexamples))
}

/// Runs [`lemma_oracle_instance`] over every nonzero `A` with `abcd = 0`.
pub fn lemma_h_oracle(q: u64, budget: &Budget) -> Result<LemmaOracleReport> {
    let start = Instant::now();
    guard_q(q, MAX_ORACLE_Q, "the lemma oracle")?;
    let f = field(q)?;
    require_char_not(&f, &[2, 3])?;
    let alg = SlnAlgebra::new(&f, 3)?;
    let all: Vec<Elem> = f.elements().collect();
    let mut instances = Vec::new();
    for &a in &all {
        for &b in &all {
            for &c in &all {
                for &d in &all {
                    let v = [a, b, c, d];
                    let product = v.iter().fold(f.one(), |acc, &x| f.mul(acc, x));
                    if f.is_zero(product) && v.iter().any(|&x| !f.is_zero(x)) {
                        instances.push(v);
                    }
                }
            }
        }
    }
    let results = instances
        .par_iter()
        .map(|&v| {
            budget.check()?;
            lemma_oracle_instance(&alg, v)
        })
        .collect::<Result<Vec<_>>>()?;
    let pairs_checked = results.iter().map(|r| r.0).sum();
    let counterexamples = results.into_iter().flat_map(|r| r.1).collect();
    Ok(LemmaOracleReport {
        q,
        instances: instances.len(),
        pairs_checked,
        counterexamples,
        elapsed_ms: elapsed_ms(start),
    })
}

/// Whether `h` is Killing-orthogonal to the diagonal Cartan subalgebra.
pub fn orthogonal_to_diagonal(h: &Subalgebra) -> Result<bool> {
    let alg = h.algebra();
    let h0 = diagonal_cartan(alg);
    for x in h.basis() {
        for y in h0.basis() {
            if !alg.ring().is_zero(alg.killing_trace_form(x, y)?) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[derive(Clone, Debug)]
pub struct ShapeCheckReport {
    pub q: u64,
    pub subspaces: u64,
    /// Abelian, orthogonal to `H_0`, nondegenerate.
    pub survivors: usize,
    /// Distinct spans of the two-parameter forms.
    pub lemma_spans: usize,
    /// Survivors that are not a two-parameter form, as coordinate rows.
    pub exceptions: Vec<Vec<Vec<Elem>>>,
    pub elapsed_ms: u64,
}

impl ShapeCheckReport {
    pub fn holds(&self) -> bool {
        self.exceptions.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "q": self.q,
            "holds": self.holds(),
            "subspaces": self.subspaces,
            "survivors": self.survivors,
            "lemma_spans": self.lemma_spans,
            "exceptions": self.exceptions.len(),
            "elapsed_ms": self.elapsed_ms,
        })
    }
}

/// Every 2-dimensional subspace of the zero-diagonal part of `sl_3(F_q)`,
/// as reduced row echelon pairs, grouped by pivot positions and first row.
fn rref_pairs(f: &Ring) -> Vec<(usize, usize, Vec<Elem>)> {
    let all: Vec<Elem> = f.elements().collect();
    let mut firsts = Vec::new();
    for p1 in 0..6 {
        for p2 in p1 + 1..6 {
            let free: Vec<usize> = (p1 + 1..6).filter(|&c| c != p2).collect();
            let count = all.len().pow(free.len() as u32);
            for mut idx in 0..count {
                let mut row = vec![f.zero(); 6];
                row[p1] = f.one();
                for &c in &free {
                    row[c] = all[idx % all.len()];
                    idx /= all.len();
                }
                firsts.push((p1, p2, row));
            }
        }
    }
    firsts
}

fn shape_key(f: &Ring, rows: Vec<Vec<Elem>>) -> Result<Vec<Vec<Elem>>> {
    Ok(Submodule::span(f, 6, rows)?.canonical_rows())
}

/// Enumerates every 2-dimensional abelian subalgebra of `sl_3(F_q)`
/// orthogonal to `H_0` with nondegenerate Killing restriction and checks
/// that each one is a two-parameter form.
pub fn exhaustive_lemma_shape_check(q: u64, budget: &Budget) -> Result<ShapeCheckReport> {
    let start = Instant::now();
    guard_q(q, MAX_SHAPE_CHECK_Q, "the shape check")?;
    let f = field(q)?;
    require_char_not(&f, &[2, 3])?;
    let alg = SlnAlgebra::new(&f, 3)?;
    let all: Vec<Elem> = f.elements().collect();

    let units = nonzero(&f);
    let mut lemma_keys = HashSet::new();
    for &a in &units {
        for &b in &units {
            let h = lemma_form_sl3(&alg, a, b)?;
            let rows = h.basis().iter().map(|m| alg.coords(m).map(|c| c[..6].to_vec())).collect::<Result<_>>()?;
            lemma_keys.insert(shape_key(&f, rows)?);
        }
    }

    let results = rref_pairs(&f)
        .par_iter()
        .map(|(_, p2, first)| {
            budget.check()?;
            let x = zero_diagonal(&f, first);
            let mut found = Vec::new();
            let mut seen = 0u64;
            let free = 6 - p2 - 1;
            for mut idx in 0..all.len().pow(free as u32) {
                let mut second = vec![f.zero(); 6];
                second[*p2] = f.one();
                for slot in &mut second[p2 + 1..] {
                    *slot = all[idx % all.len()];
                    idx /= all.len();
                }
                seen += 1;
                let y = zero_diagonal(&f, &second);
                if !x.commutator(&y)?.is_zero() {
                    continue;
                }
                let h = Subalgebra::new(&alg, vec![x.clone(), y])?;
                if !orthogonal_to_diagonal(&h)? || !h.is_nondegenerate()? {
                    continue;
                }
                found.push(vec![first.clone(), second]);
            }
            Ok((seen, found))
        })
        .collect::<Result<Vec<_>>>()?;

    let subspaces = results.iter().map(|r| r.0).sum();
    let survivors: Vec<Vec<Vec<Elem>>> = results.into_iter().flat_map(|r| r.1).collect();
    let mut exceptions = Vec::new();
    for rows in &survivors {
        if !lemma_keys.contains(&shape_key(&f, rows.clone())?) {
            exceptions.push(rows.clone());
        }
    }
    Ok(ShapeCheckReport {
        q,
        subspaces,
        survivors: survivors.len(),
        lemma_spans: lemma_keys.len(),
        exceptions,
        elapsed_ms: elapsed_ms(start),
    })
}

/// One row of the `sl_2` analysis.
#[derive(Clone, Debug)]
pub struct Sl2Row {
    pub a: Elem,
    /// All `b` whose form is orthogonal to the `a` form.
    pub partners: Vec<Elem>,
    /// `a^((q-1)/2) = 1`.
    pub is_square: bool,
    /// `s` with `diag(1,s)` conjugating `{H_0, <a>, <-a>}` to the
    /// standard `{H_0, <1>, <-1>}`, if any.
    pub diagonal_conjugator: Option<Elem>,
}

#[derive(Clone, Debug)]
pub struct Sl2Analysis {
    pub q: u64,
    pub field: Ring,
    pub rows: Vec<Sl2Row>,
}

impl Sl2Analysis {
    /// Every `a` has exactly the partner `-a`, and diagonal conjugacy to
    /// the standard form matches the Euler criterion.
    pub fn consistent(&self) -> bool {
        let f = &self.field;
        self.rows.iter().all(|r| r.partners == [f.neg(r.a)] && r.is_square == r.diagonal_conjugator.is_some())
    }

    pub fn to_json(&self) -> Value {
        let f = &self.field;
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                json!({
                    "a": f.to_json(r.a),
                    "partners": r.partners.iter().map(|&b| f.to_json(b)).collect::<Vec<_>>(),
                    "square": r.is_square,
                    "diagonal_conjugator": r.diagonal_conjugator.map(|s| f.to_json(s)),
                })
            })
            .collect();
        json!({ "q": self.q, "consistent": self.consistent(), "rows": rows })
    }
}

/// For each `a != 0`, finds all forms orthogonal to `<[[0,1],[a,0]]>` by
/// scanning `b`, and looks for a diagonal conjugation to the standard form.
pub fn sl2_orthogonality_analysis(q: u64, budget: &Budget) -> Result<Sl2Analysis> {
    guard_q(q, MAX_SL2_ANALYSIS_Q, "the sl_2 analysis")?;
    let f = field(q)?;
    require_char_not(&f, &[2])?;
    let alg = SlnAlgebra::new(&f, 2)?;
    let units = nonzero(&f);
    let forms = units.iter().map(|&a| lemma_form_sl2(&alg, a)).collect::<Result<Vec<_>>>()?;
    let one = f.one();
    let standard = [lemma_form_sl2(&alg, one)?, lemma_form_sl2(&alg, f.neg(one))?];
    let h0 = diagonal_cartan(&alg);

    let rows = units
        .par_iter()
        .zip(&forms)
        .map(|(&a, ha)| {
            budget.check()?;
            let mut partners = Vec::new();
            for (&b, hb) in units.iter().zip(&forms) {
                if f.is_zero(alg.killing_trace_form(&ha.basis()[0], &hb.basis()[0])?) {
                    partners.push(b);
                }
            }
            let is_square = f.pow(a, (q - 1) / 2) == one;
            let hneg = lemma_form_sl2(&alg, f.neg(a))?;
            let mut diagonal_conjugator = None;
            for &s in &units {
                let g = Matrix::diagonal(&f, &[one, s]);
                if ha.conjugate(&g)?.coords() == standard[0].coords()
                    && hneg.conjugate(&g)?.coords() == standard[1].coords()
                    && h0.conjugate(&g)?.coords() == h0.coords()
                {
                    diagonal_conjugator = Some(s);
                    break;
                }
            }
            Ok(Sl2Row { a, partners, is_square, diagonal_conjugator })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Sl2Analysis { q, field: f, rows })
}

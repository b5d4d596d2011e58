//! Explicit ODACs of `sl_n(R)` for prime-power `n`.
//!
//! The prime case is built from the clock matrix `D = diag(1, u, ..., u^(p-1))`
//! and the cyclic shift `P`, with `J_(a,b) = D^a P^b`. For `n = p^m` the
//! matrices `J_w` are Kronecker products indexed by a symplectic space over
//! GF(p^m).

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::arith;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{crt_decompose, field_trace, find_primitive_root, trace_dual_basis, Elem, Ring};
use crate::sln::{SlnAlgebra, Subalgebra};
use crate::verify::{Component, Decomposition};

/// Exponent pair of `J_(a,b) = D^a P^b`, reduced mod `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct JIndex {
    pub a: u64,
    pub b: u64,
}

impl JIndex {
    pub fn new(a: i64, b: i64, p: u64) -> JIndex {
        JIndex { a: arith::reduce(a as i128, p), b: arith::reduce(b as i128, p) }
    }
}

/// The clock and shift matrices for a fixed root `u`.
#[derive(Clone, Debug)]
pub struct Generators {
    pub p: u64,
    pub u: Elem,
    pub d: Matrix,
    pub shift: Matrix,
    d_powers: Vec<Matrix>,
    shift_powers: Vec<Matrix>,
}

impl Generators {
    pub fn ring(&self) -> &Ring {
        self.d.ring()
    }
}

/// Checks `u^p = 1`, `u != 1` and `u - 1` a unit, then builds `D` and `P`.
pub fn build_generators(ring: &Ring, p: u64, u: Elem) -> Result<Generators> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let one = ring.one();
    if u == one || ring.pow(u, p) != one || !ring.is_unit(ring.sub(u, one)) {
        return Err(Error::Precondition(format!(
            "u = {} is not a primitive {p}-th root of unity with u - 1 a unit in {ring}",
            ring.format(u)
        )));
    }
    let n = p as usize;
    let diag: Vec<Elem> = (0..p).map(|i| ring.pow(u, i)).collect();
    let d = Matrix::diagonal(ring, &diag);
    let shift = Matrix::from_fn(ring, n, n, |i, j| if i == (j + 1) % n { one } else { ring.zero() });
    let powers = |m: &Matrix| -> Result<Vec<Matrix>> {
        let mut out = vec![Matrix::identity(ring, n)];
        for k in 1..n {
            out.push(out[k - 1].matmul(m)?);
        }
        Ok(out)
    };
    let d_powers = powers(&d)?;
    let shift_powers = powers(&shift)?;
    Ok(Generators { p, u, d, shift, d_powers, shift_powers })
}

/// `J_(a,b) = D^a P^b`.
pub fn build_j(gens: &Generators, idx: JIndex) -> Matrix {
    let (a, b) = ((idx.a % gens.p) as usize, (idx.b % gens.p) as usize);
    gens.d_powers[a].matmul(&gens.shift_powers[b]).expect("square matrices of equal size")
}

fn named(alg: &SlnAlgebra, name: String, basis: Vec<Matrix>) -> Result<Component> {
    Ok(Component { name, subalgebra: Subalgebra::new(alg, basis)? })
}

/// `H_inf = <P^b>` followed by `H_k = <J_(a, ka)>` for `k = 0..p-1`.
pub fn construct_prime(ring: &Ring, p: u64, u: Elem) -> Result<Decomposition> {
    let gens = build_generators(ring, p, u)?;
    let alg = SlnAlgebra::new(ring, p as usize)?;
    let mut components =
        vec![named(&alg, "H_inf".into(), (1..p).map(|b| build_j(&gens, JIndex { a: 0, b })).collect())?];
    for k in 0..p {
        let basis = (1..p).map(|a| build_j(&gens, JIndex { a, b: k * a % p })).collect();
        components.push(named(&alg, format!("H_{k}"), basis)?);
    }
    let mut provenance = Map::new();
    provenance.insert("p".into(), json!(p));
    provenance.insert("m".into(), json!(1));
    provenance.insert("u".into(), ring.to_json(u));
    Decomposition::new(&alg, components, provenance)
}

/// A pair `(alpha; beta)` of elements of GF(p^m).
pub type FieldPair = (Elem, Elem);

/// Coordinates `(a_1..a_m; b_1..b_m)` as residues mod `p`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymplecticCoords {
    pub a: Vec<u64>,
    pub b: Vec<u64>,
}

/// GF(p^m)^2 with the form `<w, w'> = Tr(alpha beta' - alpha' beta)`.
///
/// `e_i = (alpha_i; 0)` uses the power basis and `f_i = (0; beta_i)` its
/// trace-dual basis.
#[derive(Clone, Debug)]
pub struct SymplecticSpace {
    pub p: u64,
    pub m: usize,
    pub field: Ring,
    pub alpha: Vec<Elem>,
    pub beta: Vec<Elem>,
}

pub fn symplectic_basis(p: u64, m: usize) -> Result<SymplecticSpace> {
    let field = Ring::gf(p, m)?;
    let t = if m == 1 {
        field.one()
    } else {
        let mut c = vec![0; m];
        c[1] = 1;
        field.gf_elem(&c)?
    };
    let alpha: Vec<Elem> = (0..m as u64).map(|i| field.pow(t, i)).collect();
    let beta = trace_dual_basis(&field, &alpha)?;
    Ok(SymplecticSpace { p, m, field, alpha, beta })
}

impl SymplecticSpace {
    pub fn e_basis(&self) -> Vec<FieldPair> {
        self.alpha.iter().map(|&a| (a, self.field.zero())).collect()
    }

    pub fn f_basis(&self) -> Vec<FieldPair> {
        self.beta.iter().map(|&b| (self.field.zero(), b)).collect()
    }

    fn trace(&self, x: Elem) -> u64 {
        field_trace(&self.field, x).expect("the space is built over a field")
    }

    /// The trace symplectic form, as a residue mod `p`.
    pub fn pairing(&self, w: FieldPair, w2: FieldPair) -> u64 {
        let f = &self.field;
        self.trace(f.sub(f.mul(w.0, w2.1), f.mul(w2.0, w.1)))
    }

    pub fn coords_of(&self, w: FieldPair) -> SymplecticCoords {
        let f = &self.field;
        SymplecticCoords {
            a: self.beta.iter().map(|&b| self.trace(f.mul(w.0, b))).collect(),
            b: self.alpha.iter().map(|&a| self.trace(f.mul(w.1, a))).collect(),
        }
    }

    fn to_json(&self) -> Value {
        let f = &self.field;
        json!({
            "field": f.to_string(),
            "alpha": self.alpha.iter().map(|&x| f.to_json(x)).collect::<Vec<_>>(),
            "beta": self.beta.iter().map(|&x| f.to_json(x)).collect::<Vec<_>>(),
        })
    }
}

/// `B(w, w') = sum_i a'_i b_i mod p`.
pub fn b_form(w: &SymplecticCoords, w2: &SymplecticCoords, p: u64) -> u64 {
    w2.a.iter().zip(&w.b).map(|(x, y)| x * y % p).sum::<u64>() % p
}

/// `J_w = J_(a_1,b_1) (x) ... (x) J_(a_m,b_m)`.
pub fn build_j_w(space: &SymplecticSpace, gens: &Generators, w: FieldPair) -> Matrix {
    let c = space.coords_of(w);
    let mut factors = c.a.iter().zip(&c.b).map(|(&a, &b)| build_j(gens, JIndex { a, b }));
    let first = factors.next().expect("m >= 1");
    factors.fold(first, |acc, j| acc.kronecker(&j).expect("kronecker of matrices over one ring"))
}

/// `H_inf = <J_(0; l)>` followed by `H_alpha = <J_(l; alpha l)>` for every
/// `alpha` in GF(p^m), with `l` over the nonzero field elements.
pub fn construct_prime_power(ring: &Ring, p: u64, m: usize, u: Elem) -> Result<Decomposition> {
    if m == 0 {
        return Err(Error::Precondition("m must be positive".into()));
    }
    if m == 1 {
        return construct_prime(ring, p, u);
    }
    let gens = build_generators(ring, p, u)?;
    let space = symplectic_basis(p, m)?;
    let f = &space.field;
    let n = (p as usize).pow(m as u32);
    let alg = SlnAlgebra::new(ring, n)?;
    let nonzero: Vec<Elem> = f.elements().filter(|&x| !f.is_zero(x)).collect();

    let mut slopes: Vec<Option<Elem>> = vec![None];
    slopes.extend(f.elements().map(Some));
    let components = slopes
        .par_iter()
        .map(|slope| {
            let (name, basis) = match *slope {
                None => {
                    ("H_inf".to_string(), nonzero.iter().map(|&l| build_j_w(&space, &gens, (f.zero(), l))).collect())
                }
                Some(alpha) => (
                    format!("H_{}", f.format(alpha)),
                    nonzero.iter().map(|&l| build_j_w(&space, &gens, (l, f.mul(alpha, l)))).collect(),
                ),
            };
            named(&alg, name, basis)
        })
        .collect::<Result<Vec<_>>>()?;

    let mut provenance = Map::new();
    provenance.insert("p".into(), json!(p));
    provenance.insert("m".into(), json!(m));
    provenance.insert("u".into(), ring.to_json(u));
    provenance.insert("symplectic_basis".into(), space.to_json());
    Decomposition::new(&alg, components, provenance)
}

/// Result of [`construct_odac`].
#[derive(Clone, Debug)]
pub enum Verdict {
    Constructible(Decomposition),
    /// `sl_n(R)` has a nonzero center, so no ODAC exists.
    NoOdac {
        reason: String,
        witness: Matrix,
    },
    /// No construction is available; nothing is claimed about existence.
    NoConstruction {
        reason: String,
    },
}

fn central_witness(alg: &SlnAlgebra) -> Result<Option<(Matrix, String)>> {
    let center = alg.center()?;
    if center.is_zero() {
        return Ok(None);
    }
    let ring = alg.ring();
    let n = alg.n();
    let nn = ring.from_int(n as i64);
    let scalar = ring.elements().find(|&c| !ring.is_zero(c) && ring.is_zero(ring.mul(nn, c)));
    if let Some(c) = scalar {
        let label = if c == ring.one() { "I".to_string() } else { format!("{}I", ring.format(c)) };
        let m = Matrix::scalar(ring, n, c);
        if center.contains(&alg.coords(&m)?)? {
            return Ok(Some((m, label)));
        }
    }
    let row = center.canonical_rows().into_iter().next().expect("nonzero module has a generator");
    let m = alg.from_coords(&row)?;
    let label = m.to_string();
    Ok(Some((m, label)))
}

/// Decides between a construction, a proof of nonexistence, and neither.
pub fn construct_odac(ring: &Ring, n: usize) -> Result<Verdict> {
    let alg = SlnAlgebra::new(ring, n)?;
    if let Some((witness, label)) = central_witness(&alg)? {
        return Ok(Verdict::NoOdac {
            reason: format!("sl_{n}({ring}) has nonzero center: it contains {label}"),
            witness,
        });
    }
    let Some((p, m)) = arith::prime_power(n as u64) else {
        return Ok(Verdict::NoConstruction { reason: format!("n = {n} is not a prime power, existence unknown") });
    };
    if let Some(bad) = crt_decompose(ring.spec()).into_iter().find(|lf| lf.residue_field_unit_order % p != 0) {
        return Ok(Verdict::NoConstruction {
            reason: format!(
                "p = {p} does not divide |k^x| = {} for the local factor {}",
                bad.residue_field_unit_order, bad.spec
            ),
        });
    }
    let Some(u) = find_primitive_root(ring, p)? else {
        return Ok(Verdict::NoConstruction {
            reason: format!("no primitive {p}-th root of unity u with u - 1 a unit in {ring}"),
        });
    };
    Ok(Verdict::Constructible(construct_prime_power(ring, p, m as usize, u)?))
}

/// The circulant `X` with `X[i][j] = u^T((i - j) mod p)`, `T(k) = k(k+1)/2`.
///
/// Conjugation `X^-1 h X` sends `H_k` to `H_(k-1)` and fixes `H_inf`.
pub fn shift_matrix_x(ring: &Ring, p: u64, u: Elem) -> Result<Matrix> {
    if p == 2 {
        return Err(Error::Precondition("the shift matrix X needs an odd prime".into()));
    }
    build_generators(ring, p, u)?;
    let n = p as usize;
    Ok(Matrix::from_fn(ring, n, n, |i, j| {
        let k = ((i + n - j) % n) as u64;
        ring.pow(u, k * (k + 1) / 2 % p)
    }))
}

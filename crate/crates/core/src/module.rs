//! Submodules of `R^d` in canonical form.
//!
//! Over `Z/N` the canonical form is the Howell normal form: an echelon
//! generating set whose pivots are divisors of `N`, whose entries above each
//! pivot are reduced into `[0, pivot)`, and which carries enough annihilator
//! rows that every module element with `k` leading zeros is a combination of
//! the rows with at least `k` leading zeros. Over fields this degenerates to
//! reduced row echelon form. Products are handled factor by factor.

use crate::arith;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::{Elem, Ring};

type Row = Vec<Elem>;

/// Ring operations the echelon engine needs from a non-product ring.
enum Base {
    Zn(u64),
    Field,
}

impl Base {
    fn of(ring: &Ring) -> Base {
        match ring.spec() {
            crate::ring::RingSpec::Zn { modulus } => Base::Zn(*modulus),
            crate::ring::RingSpec::Gf { .. } => Base::Field,
            crate::ring::RingSpec::Product(_) => unreachable!("products are split before echelon"),
        }
    }

    /// Unimodular `[[s, t], [u, v]]` with `s a + t b = g` and `u a + v b = 0`.
    fn gcdex(&self, ring: &Ring, a: Elem, b: Elem) -> (Elem, Elem, Elem, Elem) {
        match self {
            Base::Zn(n) => {
                let (g, s, t) = arith::xgcd(a.0, b.0);
                let u = -((b.0 / g) as i128);
                let v = (a.0 / g) as i128;
                (Elem(arith::reduce(s, *n)), Elem(arith::reduce(t, *n)), Elem(arith::reduce(u, *n)), Elem(v as u64 % n))
            }
            Base::Field => {
                let ainv = ring.inv(a).expect("pivot is nonzero");
                (ring.one(), ring.zero(), ring.neg(ring.mul(b, ainv)), ring.one())
            }
        }
    }

    /// A unit `c` such that `c a` is the canonical associate of `a`.
    fn normalizing_unit(&self, ring: &Ring, a: Elem) -> Elem {
        match self {
            Base::Zn(n) => {
                let g = arith::gcd(a.0, *n);
                let cofactor = n / g;
                if cofactor == 1 {
                    return ring.one();
                }
                let c0 = arith::mod_inv((a.0 / g) % cofactor, cofactor).expect("a/g is coprime to n/g");
                let mut c = c0;
                while arith::gcd(c, *n) != 1 {
                    c += cofactor;
                }
                Elem(c % n)
            }
            Base::Field => ring.inv(a).expect("pivot is nonzero"),
        }
    }

    /// Generator of the annihilator of a canonical pivot, if nonzero.
    fn annihilator(&self, g: Elem) -> Option<Elem> {
        match self {
            Base::Zn(n) if g.0 != 1 => Some(Elem(n / g.0)),
            _ => None,
        }
    }

    /// `q` such that `x - q g` is the canonical remainder.
    fn quotient(&self, x: Elem, g: Elem) -> Elem {
        match self {
            Base::Zn(_) => Elem(x.0 / g.0),
            Base::Field => x,
        }
    }

    /// Number of distinct multiples of the canonical pivot `g`.
    fn pivot_order(&self, ring: &Ring, g: Elem) -> u64 {
        match self {
            Base::Zn(n) => n / g.0,
            Base::Field => ring.size(),
        }
    }
}

fn leading(row: &[Elem]) -> Option<usize> {
    row.iter().position(|x| x.0 != 0)
}

fn axpy(ring: &Ring, target: &mut [Elem], c: Elem, src: &[Elem], from: usize) {
    for j in from..target.len() {
        target[j] = ring.add(target[j], ring.mul(c, src[j]));
    }
}

/// Howell / RREF form of the row span over a non-product ring.
fn echelon(ring: &Ring, rows: Vec<Row>, ncols: usize) -> Vec<Row> {
    let base = Base::of(ring);
    let mut work: Vec<Row> = rows.into_iter().filter(|r| leading(r).is_some()).collect();
    let mut out: Vec<(usize, Row)> = Vec::new();
    for col in 0..ncols {
        if work.is_empty() {
            break;
        }
        let (with, mut rest): (Vec<Row>, Vec<Row>) = work.into_iter().partition(|r| r[col].0 != 0);
        let mut with = with.into_iter();
        let Some(mut pivot) = with.next() else {
            work = rest;
            continue;
        };
        for mut r in with {
            let (s, t, u, v) = base.gcdex(ring, pivot[col], r[col]);
            if s == ring.one() && t.0 == 0 {
                // pivot unchanged, r <- u*pivot + v*r
                for j in col..ncols {
                    r[j] = ring.add(ring.mul(u, pivot[j]), ring.mul(v, r[j]));
                }
            } else {
                for j in col..ncols {
                    let (p, x) = (pivot[j], r[j]);
                    pivot[j] = ring.add(ring.mul(s, p), ring.mul(t, x));
                    r[j] = ring.add(ring.mul(u, p), ring.mul(v, x));
                }
            }
            debug_assert_eq!(r[col].0, 0);
            if leading(&r).is_some() {
                rest.push(r);
            }
        }
        let c = base.normalizing_unit(ring, pivot[col]);
        if c != ring.one() {
            for x in pivot[col..].iter_mut() {
                *x = ring.mul(c, *x);
            }
        }
        if let Some(ann) = base.annihilator(pivot[col]) {
            let extra: Row = pivot.iter().map(|&x| ring.mul(ann, x)).collect();
            if leading(&extra).is_some() {
                rest.push(extra);
            }
        }
        out.push((col, pivot));
        work = rest;
    }
    for i in 0..out.len() {
        let (col, g) = (out[i].0, out[i].1[out[i].0]);
        let (done, tail) = out.split_at_mut(i);
        let pivot_row = &tail[0].1;
        for (_, row) in done.iter_mut() {
            let q = base.quotient(row[col], g);
            if q.0 != 0 {
                axpy(ring, row, ring.neg(q), pivot_row, col);
            }
        }
    }
    out.into_iter().map(|(_, r)| r).collect()
}

/// Reduces `v` against a canonical form; `true` iff it reduces to zero.
fn reduces_to_zero(ring: &Ring, form: &[Row], mut v: Row) -> bool {
    let base = Base::of(ring);
    for row in form {
        let col = leading(row).expect("canonical rows are nonzero");
        if v[..col].iter().any(|x| x.0 != 0) {
            return false;
        }
        let g = row[col];
        let x = v[col];
        let q = base.quotient(x, g);
        // over Z/N the pivot must divide the entry exactly
        if ring.mul(q, g) != x {
            return false;
        }
        if q.0 != 0 {
            axpy(ring, &mut v, ring.neg(q), row, col);
        }
    }
    v.iter().all(|x| x.0 == 0)
}

/// A submodule of `R^dim`, stored with its canonical form.
#[derive(Clone, Debug)]
pub struct Submodule {
    ring: Ring,
    dim: usize,
    generators: Vec<Row>,
    /// Canonical rows per base factor of the ring (one part unless the ring
    /// is a product), in that factor's element codes.
    parts: Vec<Vec<Row>>,
}

impl PartialEq for Submodule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.dim == other.dim && self.parts == other.parts
    }
}

impl Eq for Submodule {}

fn base_rings(ring: &Ring) -> Vec<Ring> {
    if ring.factors().is_empty() {
        vec![ring.clone()]
    } else {
        ring.factors().to_vec()
    }
}

fn project(ring: &Ring, v: &[Elem], factor: usize) -> Row {
    if ring.factors().is_empty() {
        v.to_vec()
    } else {
        v.iter().map(|&x| ring.split(x)[factor]).collect()
    }
}

/// Embeds a factor row into the product ring, zero in other factors.
fn embed(ring: &Ring, row: &[Elem], factor: usize) -> Row {
    let k = ring.factors().len();
    if k == 0 {
        return row.to_vec();
    }
    row.iter()
        .map(|&x| {
            let mut parts = vec![Elem(0); k];
            parts[factor] = x;
            ring.join(&parts)
        })
        .collect()
}

impl Submodule {
    pub fn zero(ring: &Ring, dim: usize) -> Submodule {
        Submodule::span(ring, dim, Vec::new()).expect("empty span is valid")
    }

    /// The canonical span of `vectors` in `ring^dim`.
    pub fn span(ring: &Ring, dim: usize, vectors: Vec<Row>) -> Result<Submodule> {
        if let Some(v) = vectors.iter().find(|v| v.len() != dim) {
            return Err(Error::Dimension(format!("vector of length {} in ambient dimension {dim}", v.len())));
        }
        let parts = base_rings(ring)
            .iter()
            .enumerate()
            .map(|(i, base)| echelon(base, vectors.iter().map(|v| project(ring, v, i)).collect(), dim))
            .collect();
        Ok(Submodule { ring: ring.clone(), dim, generators: vectors, parts })
    }

    /// Span of the rows of a matrix.
    pub fn row_span(m: &Matrix) -> Submodule {
        let rows = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        Submodule::span(m.ring(), m.cols(), rows).expect("rows have matching length")
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn ambient_dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Row] {
        &self.generators
    }

    /// Canonical generating set, embedded back into the full ring.
    pub fn canonical_rows(&self) -> Vec<Row> {
        self.parts.iter().enumerate().flat_map(|(i, rows)| rows.iter().map(move |r| embed(&self.ring, r, i))).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(|p| p.is_empty())
    }

    pub fn contains(&self, v: &[Elem]) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::Dimension(format!("vector of length {} in ambient dimension {}", v.len(), self.dim)));
        }
        Ok(base_rings(&self.ring)
            .iter()
            .enumerate()
            .all(|(i, base)| reduces_to_zero(base, &self.parts[i], project(&self.ring, v, i))))
    }

    pub fn is_submodule_of(&self, other: &Submodule) -> Result<bool> {
        self.check_ambient(other)?;
        for row in self.canonical_rows() {
            if !other.contains(&row)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_ambient(&self, other: &Submodule) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        if self.dim != other.dim {
            return Err(Error::Dimension(format!("ambient {} vs {}", self.dim, other.dim)));
        }
        Ok(())
    }

    /// Number of elements of the module.
    pub fn cardinality(&self) -> u128 {
        base_rings(&self.ring)
            .iter()
            .zip(&self.parts)
            .map(|(base, rows)| {
                let b = Base::of(base);
                rows.iter().map(|r| b.pivot_order(base, r[leading(r).unwrap()]) as u128).product::<u128>()
            })
            .product()
    }

    /// True iff the module is free of the given rank, i.e. has exactly
    /// `|R|^rank` elements and that many are attainable by `rank` generators.
    pub fn has_size_of_free(&self, rank: usize) -> bool {
        (self.ring.size() as u128).checked_pow(rank as u32) == Some(self.cardinality())
    }

    /// Dimension over a field; `None` for non-fields.
    pub fn dimension(&self) -> Option<usize> {
        self.ring.is_field().then(|| self.parts[0].len())
    }

    /// All elements, each exactly once. Intended for small modules.
    pub fn elements(&self) -> Vec<Row> {
        let bases = base_rings(&self.ring);
        let per_part: Vec<Vec<Row>> = bases
            .iter()
            .zip(&self.parts)
            .map(|(base, rows)| {
                let b = Base::of(base);
                let mut acc = vec![vec![Elem(0); self.dim]];
                for r in rows {
                    let col = leading(r).unwrap();
                    let order = b.pivot_order(base, r[col]);
                    let mut next = Vec::with_capacity(acc.len() * order as usize);
                    for v in &acc {
                        // field pivots are 1, so multiples run over all codes;
                        // Z/N pivots g have multiples c*g for c in [0, N/g)
                        for c in 0..order {
                            let mut w = v.clone();
                            axpy(base, &mut w, Elem(c), r, col);
                            next.push(w);
                        }
                    }
                    acc = next;
                }
                acc
            })
            .collect();
        if per_part.len() == 1 {
            return per_part.into_iter().next().unwrap();
        }
        let mut acc: Vec<Vec<Vec<Elem>>> = vec![Vec::new()];
        for part in &per_part {
            acc = acc
                .into_iter()
                .flat_map(|prefix| {
                    part.iter().map(move |v| {
                        let mut p = prefix.clone();
                        p.push(v.clone());
                        p
                    })
                })
                .collect();
        }
        acc.into_iter()
            .map(|comps| {
                (0..self.dim).map(|j| self.ring.join(&comps.iter().map(|v| v[j]).collect::<Vec<_>>())).collect()
            })
            .collect()
    }

    /// Image under the coordinate projection onto `coords`.
    pub fn project(&self, coords: std::ops::Range<usize>) -> Submodule {
        let rows = self.canonical_rows().into_iter().map(|r| r[coords.clone()].to_vec()).collect();
        Submodule::span(&self.ring, coords.len(), rows).expect("projected rows have matching length")
    }
}

pub fn canonical_span(ring: &Ring, dim: usize, vectors: Vec<Vec<Elem>>) -> Result<Submodule> {
    Submodule::span(ring, dim, vectors)
}

pub fn module_equal(a: &Submodule, b: &Submodule) -> Result<bool> {
    a.check_ambient(b)?;
    Ok(a == b)
}

/// `{x : M x = 0}` in canonical form.
///
/// Uses the rows `(column_j(M) | e_j)`: the Howell property guarantees that
/// the canonical rows with a vanishing left block generate every combination
/// `(Mx | x)` with `Mx = 0`.
pub fn solve_kernel(m: &Matrix) -> Submodule {
    let ring = m.ring();
    let (r, c) = (m.rows(), m.cols());
    let parts = base_rings(ring)
        .iter()
        .enumerate()
        .map(|(i, base)| {
            let rows: Vec<Row> = (0..c)
                .map(|j| {
                    let mut row = Vec::with_capacity(r + c);
                    row.extend((0..r).map(|k| m.get(k, j)));
                    row.extend((0..c).map(|k| if k == j { ring.one() } else { ring.zero() }));
                    project(ring, &row, i)
                })
                .collect();
            let form = echelon(base, rows, r + c);
            let kernel_rows: Vec<Row> =
                form.into_iter().filter(|row| row[..r].iter().all(|x| x.0 == 0)).map(|row| row[r..].to_vec()).collect();
            echelon(base, kernel_rows, c)
        })
        .collect::<Vec<_>>();
    let generators =
        parts.iter().enumerate().flat_map(|(i, rows)| rows.iter().map(move |row| embed(ring, row, i))).collect();
    Submodule { ring: ring.clone(), dim: c, generators, parts }
}

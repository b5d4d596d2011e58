//! The Lie algebra `sl_n(R)` in fixed coordinates.
//!
//! Coordinates use the basis `E_ij` (`i != j`, row-major) followed by
//! `D_i = E_ii - E_{i+1,i+1}` for `i = 1..n-1`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::module::{solve_kernel, Submodule};
use crate::ring::{Elem, Ring};

struct SlnInner {
    ring: Ring,
    n: usize,
    basis: Vec<Matrix>,
}

#[derive(Clone)]
pub struct SlnAlgebra {
    inner: Arc<SlnInner>,
}

impl PartialEq for SlnAlgebra {
    fn eq(&self, other: &Self) -> bool {
        self.inner.n == other.inner.n && self.inner.ring == other.inner.ring
    }
}

impl Eq for SlnAlgebra {}

impl fmt::Debug for SlnAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "sl_{}({})", self.inner.n, self.inner.ring)
    }
}

impl SlnAlgebra {
    pub fn new(ring: &Ring, n: usize) -> Result<SlnAlgebra> {
        if n < 2 {
            return Err(Error::Precondition(format!("sl_n needs n >= 2, got {n}")));
        }
        let mut basis = Vec::with_capacity(n * n - 1);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    let mut e = Matrix::zeros(ring, n, n);
                    e.set(i, j, ring.one());
                    basis.push(e);
                }
            }
        }
        for i in 0..n - 1 {
            let mut d = Matrix::zeros(ring, n, n);
            d.set(i, i, ring.one());
            d.set(i + 1, i + 1, ring.from_int(-1));
            basis.push(d);
        }
        Ok(SlnAlgebra { inner: Arc::new(SlnInner { ring: ring.clone(), n, basis }) })
    }

    pub fn ring(&self) -> &Ring {
        &self.inner.ring
    }

    pub fn n(&self) -> usize {
        self.inner.n
    }

    /// `n^2 - 1`.
    pub fn dim(&self) -> usize {
        self.inner.n * self.inner.n - 1
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.inner.basis
    }

    pub fn check_member(&self, a: &Matrix) -> Result<()> {
        if a.ring() != self.ring() {
            return Err(Error::RingMismatch(a.ring().to_string(), self.ring().to_string()));
        }
        if a.rows() != self.n() || a.cols() != self.n() {
            return Err(Error::Dimension(format!("expected {n}x{n}, got {}x{}", a.rows(), a.cols(), n = self.n())));
        }
        if !self.ring().is_zero(a.trace()?) {
            return Err(Error::NonzeroTrace);
        }
        Ok(())
    }

    /// Coordinates of a trace-zero matrix.
    pub fn coords(&self, a: &Matrix) -> Result<Vec<Elem>> {
        self.check_member(a)?;
        Ok(self.coords_unchecked(a))
    }

    fn coords_unchecked(&self, a: &Matrix) -> Vec<Elem> {
        let (r, n) = (self.ring(), self.n());
        let mut v = Vec::with_capacity(self.dim());
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    v.push(a.get(i, j));
                }
            }
        }
        // diagonal (m_11, ..., m_nn) = sum c_k D_k  =>  c_k = m_11 + ... + m_kk
        let mut acc = r.zero();
        for i in 0..n - 1 {
            acc = r.add(acc, a.get(i, i));
            v.push(acc);
        }
        v
    }

    pub fn from_coords(&self, v: &[Elem]) -> Result<Matrix> {
        if v.len() != self.dim() {
            return Err(Error::Dimension(format!("expected {} coordinates, got {}", self.dim(), v.len())));
        }
        let r = self.ring();
        let mut m = Matrix::zeros(r, self.n(), self.n());
        for (&c, b) in v.iter().zip(self.basis()) {
            if !r.is_zero(c) {
                m = m.add(&b.scale(c))?;
            }
        }
        Ok(m)
    }

    /// `K(A, B) = 2n Tr(AB)`.
    pub fn killing_trace_form(&self, a: &Matrix, b: &Matrix) -> Result<Elem> {
        self.check_member(a)?;
        self.check_member(b)?;
        let r = self.ring();
        Ok(r.mul(r.from_int(2 * self.n() as i64), a.trace_of_product(b)?))
    }

    /// Matrix of `ad A = [A, -]` in coordinates.
    pub fn ad(&self, a: &Matrix) -> Result<Matrix> {
        self.check_member(a)?;
        let d = self.dim();
        let mut out = Matrix::zeros(self.ring(), d, d);
        for (j, b) in self.basis().iter().enumerate() {
            let c = self.coords_unchecked(&a.commutator(b)?);
            for (i, x) in c.into_iter().enumerate() {
                out.set(i, j, x);
            }
        }
        Ok(out)
    }

    /// `K(A, B) = Tr(ad A ad B)`, computed independently of the trace formula.
    pub fn killing_ad_form(&self, a: &Matrix, b: &Matrix) -> Result<Elem> {
        self.ad(a)?.trace_of_product(&self.ad(b)?)
    }

    /// The center, as the common kernel of `ad b_i` over all basis elements.
    pub fn center(&self) -> Result<Submodule> {
        let d = self.dim();
        let mut stacked = Matrix::zeros(self.ring(), d * d, d);
        for (k, b) in self.basis().iter().enumerate() {
            let adb = self.ad(b)?;
            for i in 0..d {
                for j in 0..d {
                    stacked.set(k * d + i, j, adb.get(i, j));
                }
            }
        }
        Ok(solve_kernel(&stacked))
    }

    /// The whole algebra as a subalgebra.
    pub fn full(&self) -> Subalgebra {
        Subalgebra::new(self, self.basis().to_vec()).expect("basis matrices are trace-zero")
    }
}

/// A submodule of `sl_n(R)` given by spanning matrices.
#[derive(Clone, Debug)]
pub struct Subalgebra {
    algebra: SlnAlgebra,
    basis: Vec<Matrix>,
    coords: Submodule,
}

impl Subalgebra {
    pub fn new(algebra: &SlnAlgebra, basis: Vec<Matrix>) -> Result<Subalgebra> {
        let rows = basis.iter().map(|m| algebra.coords(m)).collect::<Result<Vec<_>>>()?;
        let coords = Submodule::span(algebra.ring(), algebra.dim(), rows)?;
        Ok(Subalgebra { algebra: algebra.clone(), basis, coords })
    }

    pub fn algebra(&self) -> &SlnAlgebra {
        &self.algebra
    }

    pub fn basis(&self) -> &[Matrix] {
        &self.basis
    }

    pub fn coords(&self) -> &Submodule {
        &self.coords
    }

    pub fn is_closed(&self) -> Result<bool> {
        for (i, a) in self.basis.iter().enumerate() {
            for b in &self.basis[i + 1..] {
                let c = self.algebra.coords(&a.commutator(b)?)?;
                if !self.coords.contains(&c)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    pub fn is_abelian(&self) -> Result<bool> {
        for (i, a) in self.basis.iter().enumerate() {
            for b in &self.basis[i + 1..] {
                if !a.commutator(b)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// `N(H) = {A : [A, h] in H for all h in H}`.
    ///
    /// Solves `coords([x, h_i]) - sum_l y_il coords(h_l) = 0` for unknowns
    /// `(x, y)` and projects the solution module onto the `x` block.
    pub fn normalizer(&self) -> Result<Submodule> {
        if !self.is_closed()? {
            return Err(Error::NotClosed);
        }
        let alg = &self.algebra;
        let r = alg.ring();
        let (d, k) = (alg.dim(), self.basis.len());
        let h_coords: Vec<Vec<Elem>> = self.basis.iter().map(|h| alg.coords_unchecked(h)).collect();
        let mut sys = Matrix::zeros(r, k * d, d + k * k);
        for (i, h) in self.basis.iter().enumerate() {
            for (j, b) in alg.basis().iter().enumerate() {
                let c = alg.coords_unchecked(&b.commutator(h)?);
                for (row, x) in c.into_iter().enumerate() {
                    sys.set(i * d + row, j, x);
                }
            }
            for (l, hc) in h_coords.iter().enumerate() {
                for (row, &x) in hc.iter().enumerate() {
                    sys.set(i * d + row, d + i * k + l, r.neg(x));
                }
            }
        }
        Ok(solve_kernel(&sys).project(0..d))
    }

    /// Abelian and self-normalizing (abelian implies nilpotent).
    pub fn is_cartan_abelian(&self) -> Result<bool> {
        Ok(self.is_abelian()? && self.normalizer()? == self.coords)
    }

    pub fn killing_gram(&self) -> Result<Matrix> {
        let r = self.algebra.ring();
        let k = self.basis.len();
        let mut g = Matrix::zeros(r, k, k);
        for i in 0..k {
            for j in i..k {
                let x = self.algebra.killing_trace_form(&self.basis[i], &self.basis[j])?;
                g.set(i, j, x);
                g.set(j, i, x);
            }
        }
        Ok(g)
    }

    pub fn is_nondegenerate(&self) -> Result<bool> {
        let det = self.killing_gram()?.determinant()?;
        Ok(self.algebra.ring().is_unit(det))
    }

    /// The subalgebra spanned by `g^-1 h g` for `h` in the basis.
    pub fn conjugate(&self, g: &Matrix) -> Result<Subalgebra> {
        let ginv = g.inverse()?;
        let basis = self.basis.iter().map(|h| ginv.matmul(h)?.matmul(g)).collect::<Result<Vec<_>>>()?;
        Subalgebra::new(&self.algebra, basis)
    }
}

pub fn conjugate_subalgebra(g: &Matrix, h: &Subalgebra) -> Result<Subalgebra> {
    h.conjugate(g)
}

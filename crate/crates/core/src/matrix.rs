//! Dense matrices over a [`Ring`].

use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::ring::{Elem, Ring};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    ring: Ring,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix<{}>{}", self.ring, self)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|i| {
                let cells: Vec<String> = self.row(i).iter().map(|&x| self.ring.format(x)).collect();
                format!("[{}]", cells.join(","))
            })
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

impl Matrix {
    pub fn zeros(ring: &Ring, rows: usize, cols: usize) -> Self {
        Matrix { ring: ring.clone(), rows, cols, data: vec![ring.zero(); rows * cols] }
    }

    pub fn identity(ring: &Ring, n: usize) -> Self {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, ring.one());
        }
        m
    }

    pub fn scalar(ring: &Ring, n: usize, c: Elem) -> Self {
        let mut m = Matrix::zeros(ring, n, n);
        for i in 0..n {
            m.set(i, i, c);
        }
        m
    }

    pub fn diagonal(ring: &Ring, diag: &[Elem]) -> Self {
        let mut m = Matrix::zeros(ring, diag.len(), diag.len());
        for (i, &d) in diag.iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    pub fn from_fn(ring: &Ring, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { ring: ring.clone(), rows, cols, data }
    }

    /// Builds from integer rows, reducing each entry into the ring.
    pub fn from_ints(ring: &Ring, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Matrix::from_fn(ring, rows.len(), cols, |i, j| ring.from_int(rows[i][j]))
    }

    pub fn from_rows(ring: &Ring, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let nrows = rows.len();
        Ok(Matrix { ring: ring.clone(), rows: nrows, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> Elem {
        self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Elem) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| self.ring.is_zero(x))
    }

    fn check_same(&self, other: &Matrix) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(self.ring.to_string(), other.ring.to_string()));
        }
        Ok(())
    }

    fn check_shape(&self, other: &Matrix) -> Result<()> {
        self.check_same(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Dimension(format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_shape(other)?;
        let r = &self.ring;
        Ok(Matrix { data: self.data.iter().zip(&other.data).map(|(&a, &b)| r.add(a, b)).collect(), ..self.clone() })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_shape(other)?;
        let r = &self.ring;
        Ok(Matrix { data: self.data.iter().zip(&other.data).map(|(&a, &b)| r.sub(a, b)).collect(), ..self.clone() })
    }

    pub fn scale(&self, c: Elem) -> Matrix {
        let r = &self.ring;
        Matrix { data: self.data.iter().map(|&a| r.mul(c, a)).collect(), ..self.clone() }
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.ring, self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn matmul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = &self.ring;
        let mut out = Matrix::zeros(r, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if r.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let idx = i * other.cols + j;
                    out.data[idx] = r.add(out.data[idx], r.mul(a, other.get(k, j)));
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, mut e: u64) -> Result<Matrix> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let mut acc = Matrix::identity(&self.ring, self.rows);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.matmul(&base)?;
            }
            base = base.matmul(&base)?;
            e >>= 1;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<Elem> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        Ok((0..self.rows).fold(self.ring.zero(), |acc, i| self.ring.add(acc, self.get(i, i))))
    }

    /// `Tr(AB)` without forming the product.
    pub fn trace_of_product(&self, other: &Matrix) -> Result<Elem> {
        self.check_same(other)?;
        if self.cols != other.rows || self.rows != other.cols {
            return Err(Error::Dimension("trace of product needs A: r x c, B: c x r".into()));
        }
        let r = &self.ring;
        let mut acc = r.zero();
        for i in 0..self.rows {
            for k in 0..self.cols {
                acc = r.add(acc, r.mul(self.get(i, k), other.get(k, i)));
            }
        }
        Ok(acc)
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Matrix) -> Result<Matrix> {
        self.matmul(other)?.sub(&other.matmul(self)?)
    }

    pub fn kronecker(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same(other)?;
        let r = &self.ring;
        Ok(Matrix::from_fn(r, self.rows * other.rows, self.cols * other.cols, |i, j| {
            r.mul(self.get(i / other.rows, j / other.cols), other.get(i % other.rows, j % other.cols))
        }))
    }

    /// Coefficients `[1, c_1, ..., c_n]` of `det(tI - A)`, highest degree
    /// first, by Berkowitz's division-free recurrence.
    pub fn charpoly(&self) -> Result<Vec<Elem>> {
        if !self.is_square() {
            return Err(Error::NotSquare(self.rows, self.cols));
        }
        let r = &self.ring;
        let n = self.rows;
        // Peel principal submatrices from the bottom-right corner outward:
        // vec holds the charpoly of the trailing (n-k) x (n-k) block.
        let mut vec = vec![r.one()];
        for k in (0..n).rev() {
            let size = n - k;
            let a = self.get(k, k);
            let row: Vec<Elem> = (k + 1..n).map(|j| self.get(k, j)).collect();
            let mut col: Vec<Elem> = (k + 1..n).map(|i| self.get(i, k)).collect();
            // toeplitz column: 1, -a, -R C, -R A C, ..., -R A^(size-2) C
            let mut t = Vec::with_capacity(size + 1);
            t.push(r.one());
            t.push(r.neg(a));
            for _ in 0..size.saturating_sub(1) {
                let rc = row.iter().zip(&col).fold(r.zero(), |acc, (&x, &y)| r.add(acc, r.mul(x, y)));
                t.push(r.neg(rc));
                col = (k + 1..n)
                    .map(|i| (k + 1..n).zip(&col).fold(r.zero(), |acc, (j, &c)| r.add(acc, r.mul(self.get(i, j), c))))
                    .collect();
            }
            let next: Vec<Elem> = (0..=size)
                .map(|i| (0..size.min(i + 1)).fold(r.zero(), |acc, j| r.add(acc, r.mul(t[i - j], vec[j]))))
                .collect();
            vec = next;
        }
        Ok(vec)
    }

    /// Division-free determinant, valid over rings with zero divisors.
    pub fn determinant(&self) -> Result<Elem> {
        let cp = self.charpoly()?;
        let n = self.rows;
        let last = cp[n];
        Ok(if n.is_multiple_of(2) { last } else { self.ring.neg(last) })
    }

    /// Inverse via Cayley-Hamilton; fails unless the determinant is a unit.
    pub fn inverse(&self) -> Result<Matrix> {
        let cp = self.charpoly()?;
        let n = self.rows;
        let r = &self.ring;
        let cn_inv = r.inv(cp[n]).ok_or(Error::Singular)?;
        // A^{-1} = -c_n^{-1} (A^{n-1} + c_1 A^{n-2} + ... + c_{n-1} I)
        let mut acc = Matrix::identity(r, n);
        for &c in &cp[1..n] {
            acc = self.matmul(&acc)?.add(&Matrix::scalar(r, n, c))?;
        }
        Ok(acc.scale(r.neg(cn_inv)))
    }

    pub fn to_json(&self) -> Value {
        let rows: Vec<Value> =
            (0..self.rows).map(|i| Value::Array(self.row(i).iter().map(|&x| self.ring.to_json(x)).collect())).collect();
        json!({
            "ring": self.ring.to_string(),
            "rows": self.rows,
            "cols": self.cols,
            "entries": rows,
        })
    }

    /// Parses the matrix JSON object. The embedded ring string must match `ring`.
    pub fn from_json(ring: &Ring, v: &Value) -> Result<Matrix> {
        let schema = |msg: &str| Error::Schema(msg.to_string());
        let ring_text = v.get("ring").and_then(Value::as_str).ok_or_else(|| schema("matrix needs \"ring\""))?;
        let spec: crate::ring::RingSpec = ring_text.parse()?;
        if &spec != ring.spec() {
            return Err(Error::RingMismatch(spec.to_string(), ring.to_string()));
        }
        let rows = v.get("rows").and_then(Value::as_u64).ok_or_else(|| schema("matrix needs \"rows\""))? as usize;
        let cols = v.get("cols").and_then(Value::as_u64).ok_or_else(|| schema("matrix needs \"cols\""))? as usize;
        let entries = v.get("entries").and_then(Value::as_array).ok_or_else(|| schema("matrix needs \"entries\""))?;
        if entries.len() != rows {
            return Err(schema("entries row count does not match \"rows\""));
        }
        let mut out = Vec::with_capacity(rows);
        for row in entries {
            let row = row.as_array().ok_or_else(|| schema("matrix row must be an array"))?;
            if row.len() != cols {
                return Err(schema("entries column count does not match \"cols\""));
            }
            out.push(row.iter().map(|x| ring.from_json(x)).collect::<Result<Vec<_>>>()?);
        }
        Matrix::from_rows(ring, out)
    }
}

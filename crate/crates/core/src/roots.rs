//! Root space decompositions over finite fields and the classical Cartan test.
//!
//! Roots follow the convention `[x, h] = alpha(h) x` and are stored as their
//! values on the chosen basis of `H`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::module::{solve_kernel, Submodule};
use crate::ring::Elem;
use crate::sln::Subalgebra;

/// Values of a root on the basis of `H`.
pub type Root = Vec<Elem>;

#[derive(Clone, Debug)]
pub struct RootDecomposition {
    /// Nonzero simultaneous eigenspaces keyed by root, in code order.
    pub spaces: BTreeMap<Root, Submodule>,
    pub ambient_dim: usize,
}

impl RootDecomposition {
    pub fn total_dimension(&self) -> usize {
        self.spaces.values().map(|s| s.dimension().unwrap_or(0)).sum()
    }

    pub fn is_root(&self, alpha: &[Elem]) -> bool {
        self.spaces.contains_key(alpha)
    }
}

/// Outcome of the three classical conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClassicalConditions {
    /// `L` is the direct sum of its root spaces.
    pub splits: bool,
    /// `[L_a, L_-a]` is one-dimensional for every nonzero root.
    pub one_dimensional_brackets: bool,
    /// No full root string `alpha + k beta`, `1 <= k <= p-1`, for `beta != 0`.
    pub root_strings: bool,
}

impl ClassicalConditions {
    pub fn all(&self) -> bool {
        self.splits && self.one_dimensional_brackets && self.root_strings
    }
}

/// Matrix of `x -> [x, h]` in coordinates.
fn right_ad(h: &Subalgebra, m: &Matrix) -> Result<Matrix> {
    let alg = h.algebra();
    let d = alg.dim();
    let mut out = Matrix::zeros(alg.ring(), d, d);
    for (j, b) in alg.basis().iter().enumerate() {
        for (i, x) in alg.coords(&b.commutator(m)?)?.into_iter().enumerate() {
            out.set(i, j, x);
        }
    }
    Ok(out)
}

fn shifted(a: &Matrix, lambda: Elem) -> Matrix {
    let r = a.ring();
    let mut out = a.clone();
    for i in 0..a.rows() {
        out.set(i, i, r.sub(a.get(i, i), lambda));
    }
    out
}

/// Simultaneous eigenspaces of `x -> [x, h_i]` over the base field.
///
/// Eigenvalues of each `ad h_i` are found by testing every field element.
/// The spaces are then refined one basis element at a time, so only
/// nonzero intersections are ever carried forward.
pub fn root_space_decomposition(h: &Subalgebra) -> Result<RootDecomposition> {
    let alg = h.algebra();
    let ring = alg.ring();
    if !ring.is_field() {
        return Err(Error::NotAField(ring.to_string()));
    }
    if !h.is_abelian()? {
        return Err(Error::Precondition("root spaces need an abelian subalgebra".into()));
    }
    let ads = h.basis().iter().map(|m| right_ad(h, m)).collect::<Result<Vec<_>>>()?;
    let full: Vec<Vec<Elem>> = (0..alg.dim())
        .map(|i| (0..alg.dim()).map(|j| if i == j { ring.one() } else { ring.zero() }).collect())
        .collect();
    let mut branches: Vec<(Root, Vec<Vec<Elem>>)> = vec![(Vec::new(), full)];
    for a in &ads {
        let eigenvalues: Vec<Elem> = ring.elements().filter(|&l| !solve_kernel(&shifted(a, l)).is_zero()).collect();
        let mut next = Vec::new();
        for (prefix, rows) in branches {
            let b = Matrix::from_rows(ring, rows)?;
            let bt = b.transpose();
            let image = a.matmul(&bt)?;
            for &l in &eigenvalues {
                let restricted = image.sub(&bt.scale(l))?;
                let kernel = solve_kernel(&restricted);
                if kernel.is_zero() {
                    continue;
                }
                let ys = Matrix::from_rows(ring, kernel.canonical_rows())?;
                let refined = ys.matmul(&b)?;
                let mut root = prefix.clone();
                root.push(l);
                next.push((root, (0..refined.rows()).map(|i| refined.row(i).to_vec()).collect()));
            }
        }
        branches = next;
    }
    let mut spaces = BTreeMap::new();
    for (alpha, rows) in branches {
        spaces.insert(alpha, Submodule::span(ring, alg.dim(), rows)?);
    }
    Ok(RootDecomposition { spaces, ambient_dim: alg.dim() })
}

/// Evaluates the classical conditions for an abelian `H` over a field.
pub fn classical_conditions(h: &Subalgebra) -> Result<ClassicalConditions> {
    let alg = h.algebra();
    let ring = alg.ring();
    let decomposition = root_space_decomposition(h)?;
    let splits = decomposition.total_dimension() == alg.dim();

    let zero_root: Root = vec![ring.zero(); h.basis().len()];
    let negate = |a: &[Elem]| -> Root { a.iter().map(|&x| ring.neg(x)).collect() };

    let mut one_dimensional_brackets = true;
    for (alpha, space) in &decomposition.spaces {
        if *alpha == zero_root {
            continue;
        }
        let Some(opposite) = decomposition.spaces.get(&negate(alpha)) else {
            one_dimensional_brackets = false;
            break;
        };
        let mut brackets = Vec::new();
        for x in space.canonical_rows() {
            let xm = alg.from_coords(&x)?;
            for y in opposite.canonical_rows() {
                brackets.push(alg.coords(&xm.commutator(&alg.from_coords(&y)?)?)?);
            }
        }
        let span = Submodule::span(ring, alg.dim(), brackets)?;
        if span.dimension() != Some(1) {
            one_dimensional_brackets = false;
            break;
        }
    }

    let p = ring.characteristic();
    let roots: Vec<&Root> = decomposition.spaces.keys().collect();
    let root_strings = roots.iter().all(|alpha| {
        roots.iter().filter(|beta| ***beta != zero_root).all(|beta| {
            !(1..p).all(|k| {
                let kk = ring.from_int(k as i64);
                let shifted: Root =
                    alpha.iter().zip(beta.iter()).map(|(&a, &b)| ring.add(a, ring.mul(kk, b))).collect();
                decomposition.is_root(&shifted)
            })
        })
    });

    Ok(ClassicalConditions { splits, one_dimensional_brackets, root_strings })
}

pub fn is_classical_cartan(h: &Subalgebra) -> Result<bool> {
    Ok(classical_conditions(h)?.all())
}

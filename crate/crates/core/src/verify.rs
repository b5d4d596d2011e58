//! Decompositions of `sl_n(R)` and their certification.

use rayon::prelude::*;
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::roots;
use crate::sln::{SlnAlgebra, Subalgebra};

#[derive(Clone, Debug)]
pub struct Component {
    pub name: String,
    pub subalgebra: Subalgebra,
}

/// An ordered list of subalgebras claimed to form an ODAC.
#[derive(Clone, Debug)]
pub struct Decomposition {
    algebra: SlnAlgebra,
    components: Vec<Component>,
    /// Construction parameters, free-form.
    pub provenance: Map<String, Value>,
}

impl Decomposition {
    pub fn new(algebra: &SlnAlgebra, components: Vec<Component>, provenance: Map<String, Value>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Precondition("a decomposition needs at least one component".into()));
        }
        if let Some(c) = components.iter().find(|c| c.subalgebra.algebra() != algebra) {
            return Err(Error::Dimension(format!("component {} lives in a different algebra", c.name)));
        }
        Ok(Decomposition { algebra: algebra.clone(), components, provenance })
    }

    pub fn algebra(&self) -> &SlnAlgebra {
        &self.algebra
    }

    pub fn components(&self) -> &[Component] {
        &self.components
    }

    /// Conjugates every component by `g`.
    pub fn conjugate(&self, g: &Matrix) -> Result<Decomposition> {
        let components = self
            .components
            .iter()
            .map(|c| Ok(Component { name: c.name.clone(), subalgebra: c.subalgebra.conjugate(g)? }))
            .collect::<Result<Vec<_>>>()?;
        Decomposition::new(&self.algebra, components, self.provenance.clone())
    }

    pub fn to_json(&self) -> Value {
        let components: Vec<Value> = self
            .components
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "basis": c.subalgebra.basis().iter().map(Matrix::to_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "ring": self.algebra.ring().to_string(),
            "n": self.algebra.n(),
            "components": components,
            "provenance": Value::Object(self.provenance.clone()),
        })
    }

    pub fn from_json(v: &Value) -> Result<Decomposition> {
        let schema = |msg: &str| Error::Schema(msg.to_string());
        let ring_text = v.get("ring").and_then(Value::as_str).ok_or_else(|| schema("missing \"ring\""))?;
        let ring = Ring::parse(ring_text)?;
        let n = v.get("n").and_then(Value::as_u64).ok_or_else(|| schema("missing \"n\""))? as usize;
        let algebra = SlnAlgebra::new(&ring, n)?;
        let comps = v.get("components").and_then(Value::as_array).ok_or_else(|| schema("missing \"components\""))?;
        let mut components = Vec::with_capacity(comps.len());
        for (i, c) in comps.iter().enumerate() {
            let name = c.get("name").and_then(Value::as_str).map_or_else(|| format!("H{i}"), str::to_string);
            let basis = c
                .get("basis")
                .and_then(Value::as_array)
                .ok_or_else(|| schema("component needs \"basis\""))?
                .iter()
                .map(|m| Matrix::from_json(&ring, m))
                .collect::<Result<Vec<_>>>()?;
            components.push(Component { name, subalgebra: Subalgebra::new(&algebra, basis)? });
        }
        let provenance = match v.get("provenance") {
            Some(Value::Object(m)) => m.clone(),
            None | Some(Value::Null) => Map::new(),
            Some(_) => return Err(schema("\"provenance\" must be an object")),
        };
        Decomposition::new(&algebra, components, provenance)
    }
}

/// Evidence for a failed check.
#[derive(Clone, Debug)]
pub struct Witness {
    pub check: &'static str,
    pub components: Vec<usize>,
    pub detail: String,
    pub matrices: Vec<Matrix>,
}

#[derive(Clone, Debug)]
pub struct VerificationReport {
    pub components_free: bool,
    pub direct_sum_spans: bool,
    pub pairwise_orthogonal: bool,
    pub each_abelian: bool,
    pub each_self_normalizing: bool,
    /// Only evaluated over fields, on request.
    pub all_classical: Option<bool>,
    pub witnesses: Vec<Witness>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.components_free
            && self.direct_sum_spans
            && self.pairwise_orthogonal
            && self.each_abelian
            && self.each_self_normalizing
    }

    pub fn to_json(&self) -> Value {
        let witnesses: Vec<Value> = self
            .witnesses
            .iter()
            .map(|w| {
                json!({
                    "check": w.check,
                    "components": w.components,
                    "detail": w.detail,
                    "matrices": w.matrices.iter().map(Matrix::to_json).collect::<Vec<_>>(),
                })
            })
            .collect();
        json!({
            "passed": self.passed(),
            "components_free": self.components_free,
            "direct_sum_spans": self.direct_sum_spans,
            "pairwise_orthogonal": self.pairwise_orthogonal,
            "each_abelian": self.each_abelian,
            "each_self_normalizing": self.each_self_normalizing,
            "all_classical": self.all_classical,
            "witnesses": witnesses,
        })
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct VerifyOptions {
    /// Also run the classical Cartan test on every component (fields only).
    pub classical: bool,
}

struct ComponentResult {
    free: bool,
    abelian: bool,
    self_normalizing: bool,
    classical: Option<bool>,
}

fn check_component(c: &Component, classical: bool) -> Result<ComponentResult> {
    let h = &c.subalgebra;
    let free = h.coords().has_size_of_free(h.basis().len());
    let abelian = h.is_abelian()?;
    let self_normalizing = match h.normalizer() {
        Ok(n) => n == *h.coords(),
        Err(Error::NotClosed) => false,
        Err(e) => return Err(e),
    };
    let classical = if classical && abelian {
        Some(roots::is_classical_cartan(h)?)
    } else if classical {
        Some(false)
    } else {
        None
    };
    Ok(ComponentResult { free, abelian, self_normalizing, classical })
}

/// Certifies that `d` is an ODAC of `sl_n(R)`.
///
/// Directness and spanning are certified together: the coordinate rows of
/// all component bases must form a square matrix with unit determinant.
pub fn verify_odac(d: &Decomposition, options: VerifyOptions) -> Result<VerificationReport> {
    let alg = d.algebra();
    let ring = alg.ring();
    let mut witnesses = Vec::new();

    let rows: Vec<Vec<_>> = d
        .components()
        .iter()
        .flat_map(|c| c.subalgebra.basis().iter().map(|m| alg.coords(m)))
        .collect::<Result<_>>()?;
    let direct_sum_spans = if rows.len() == alg.dim() {
        let det = Matrix::from_rows(ring, rows)?.determinant()?;
        if !ring.is_unit(det) {
            witnesses.push(Witness {
                check: "direct_sum_spans",
                components: (0..d.components().len()).collect(),
                detail: format!("stacked coordinate determinant {} is not a unit", ring.format(det)),
                matrices: Vec::new(),
            });
        }
        ring.is_unit(det)
    } else {
        witnesses.push(Witness {
            check: "direct_sum_spans",
            components: (0..d.components().len()).collect(),
            detail: format!("{} basis elements for a free module of rank {}", rows.len(), alg.dim()),
            matrices: Vec::new(),
        });
        false
    };

    let mut pairwise_orthogonal = true;
    'outer: for (i, ci) in d.components().iter().enumerate() {
        for (j, cj) in d.components().iter().enumerate().skip(i + 1) {
            for a in ci.subalgebra.basis() {
                for b in cj.subalgebra.basis() {
                    let k = alg.killing_trace_form(a, b)?;
                    if !ring.is_zero(k) {
                        pairwise_orthogonal = false;
                        witnesses.push(Witness {
                            check: "pairwise_orthogonal",
                            components: vec![i, j],
                            detail: format!("K = {} between {} and {}", ring.format(k), ci.name, cj.name),
                            matrices: vec![a.clone(), b.clone()],
                        });
                        break 'outer;
                    }
                }
            }
        }
    }

    let classical = options.classical && ring.is_field();
    let per_component = d.components().par_iter().map(|c| check_component(c, classical)).collect::<Result<Vec<_>>>()?;

    let mut components_free = true;
    let mut each_abelian = true;
    let mut each_self_normalizing = true;
    let mut all_classical = classical.then_some(true);
    for (i, (c, res)) in d.components().iter().zip(&per_component).enumerate() {
        let mut fail = |check: &'static str, detail: &str| {
            witnesses.push(Witness {
                check,
                components: vec![i],
                detail: format!("{}: {detail}", c.name),
                matrices: c.subalgebra.basis().to_vec(),
            })
        };
        if !res.free {
            components_free = false;
            fail("components_free", "basis does not generate a free module of its length");
        }
        if !res.abelian {
            each_abelian = false;
            fail("each_abelian", "basis elements do not commute");
        }
        if !res.self_normalizing {
            each_self_normalizing = false;
            fail("each_self_normalizing", "normalizer is strictly larger");
        }
        if res.classical == Some(false) {
            all_classical = Some(false);
            fail("all_classical", "not a classical Cartan subalgebra");
        }
    }

    Ok(VerificationReport {
        components_free,
        direct_sum_spans,
        pairwise_orthogonal,
        each_abelian,
        each_self_normalizing,
        all_classical,
        witnesses,
    })
}

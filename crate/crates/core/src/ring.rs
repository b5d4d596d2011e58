//! Finite commutative rings: `Z/n`, `GF(p^m)` and flat direct products.
//!
//! A [`Ring`] is a cheap-to-clone handle around a validated [`RingSpec`].
//! Elements are plain [`Elem`] codes and all arithmetic goes through the
//! ring handle, so the same matrix code runs over every supported ring.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde_json::Value;

use crate::arith;
use crate::error::{Error, Result};
use crate::gf::{self, GfTables};

/// Upper bound on `Z/n` moduli; keeps residue products inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum RingSpec {
    Zn { modulus: u64 },
    Gf { p: u64, m: usize, modulus_poly: Vec<u64> },
    Product(Vec<RingSpec>),
}

impl RingSpec {
    pub fn zn(modulus: u64) -> Self {
        RingSpec::Zn { modulus }
    }

    /// GF(p^m) with the default (lexicographically smallest) modulus.
    pub fn gf(p: u64, m: usize) -> Self {
        RingSpec::Gf { p, m, modulus_poly: gf::default_modulus(p, m) }
    }

    /// Builds a product, flattening nested products. A single factor is
    /// returned as-is.
    pub fn product(factors: Vec<RingSpec>) -> Self {
        let mut flat = Vec::new();
        for f in factors {
            match f {
                RingSpec::Product(inner) => flat.extend(inner),
                other => flat.push(other),
            }
        }
        if flat.len() == 1 {
            flat.pop().unwrap()
        } else {
            RingSpec::Product(flat)
        }
    }

    /// The smallest field whose order is `q`, as a spec: `Z/q` for prime `q`,
    /// `GF(p, m)` otherwise.
    pub fn field_of_order(q: u64) -> Result<Self> {
        let (p, m) = arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
        Ok(if m == 1 { RingSpec::zn(p) } else { RingSpec::gf(p, m as usize) })
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            RingSpec::Zn { modulus } => *modulus,
            RingSpec::Gf { p, .. } => *p,
            RingSpec::Product(fs) => fs.iter().map(|f| f.characteristic()).fold(1, arith::lcm),
        }
    }

    pub fn order(&self) -> u64 {
        match self {
            RingSpec::Zn { modulus } => *modulus,
            RingSpec::Gf { p, m, .. } => p.pow(*m as u32),
            RingSpec::Product(fs) => fs.iter().map(|f| f.order()).product(),
        }
    }

    pub fn is_field(&self) -> bool {
        match self {
            RingSpec::Zn { modulus } => arith::is_prime(*modulus),
            RingSpec::Gf { .. } => true,
            RingSpec::Product(_) => false,
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RingSpec::Zn { modulus } => {
                if *modulus < 2 || *modulus >= MAX_MODULUS {
                    return Err(Error::InvalidRing(format!("modulus {modulus} out of range [2, 2^32)")));
                }
            }
            RingSpec::Gf { p, m, modulus_poly } => {
                if !arith::is_prime(*p) {
                    return Err(Error::NotPrime(*p));
                }
                if *m == 0 {
                    return Err(Error::InvalidRing("extension degree must be >= 1".into()));
                }
                let q = (*p as u128).checked_pow(*m as u32).unwrap_or(u128::MAX);
                if q > gf::MAX_FIELD_ORDER as u128 {
                    return Err(Error::InvalidRing(format!("field order {p}^{m} too large")));
                }
                if modulus_poly.len() != m + 1 || modulus_poly.iter().any(|&c| c >= *p) {
                    return Err(Error::InvalidRing(format!(
                        "modulus polynomial must have {} coefficients in [0, {p})",
                        m + 1
                    )));
                }
                if modulus_poly[*m] != 1 {
                    return Err(Error::InvalidRing("modulus polynomial must be monic".into()));
                }
                if !gf::is_irreducible(modulus_poly, *p) {
                    return Err(Error::InvalidRing("modulus polynomial is reducible".into()));
                }
            }
            RingSpec::Product(fs) => {
                if fs.len() < 2 {
                    return Err(Error::InvalidRing("a product needs at least two factors".into()));
                }
                for f in fs {
                    if matches!(f, RingSpec::Product(_)) {
                        return Err(Error::InvalidRing("nested products are not allowed".into()));
                    }
                    f.validate()?;
                }
                let total = fs.iter().try_fold(1u64, |acc, f| acc.checked_mul(f.order()));
                if total.is_none_or(|t| t >= 1 << 62) {
                    return Err(Error::InvalidRing("product ring too large".into()));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Zn { modulus } => write!(f, "Z/{modulus}"),
            RingSpec::Gf { p, m, modulus_poly } => {
                if *m == 1 {
                    write!(f, "F_{p}")?;
                } else {
                    write!(f, "F_{p}^{m}")?;
                }
                if *modulus_poly != gf::default_modulus(*p, *m) {
                    let cs: Vec<String> = modulus_poly.iter().map(|c| c.to_string()).collect();
                    write!(f, "[poly={}]", cs.join(","))?;
                }
                Ok(())
            }
            RingSpec::Product(fs) => {
                let parts: Vec<String> = fs.iter().map(|s| s.to_string()).collect();
                write!(f, "{}", parts.join(" x "))
            }
        }
    }
}

fn parse_u64(text: &str, whole: &str) -> Result<u64> {
    text.trim()
        .parse::<u64>()
        .map_err(|_| Error::RingParse(whole.to_string(), format!("expected an integer, found {text:?}")))
}

fn parse_factor(text: &str, whole: &str) -> Result<RingSpec> {
    let err = |msg: &str| Error::RingParse(whole.to_string(), msg.to_string());
    let text = text.trim();
    if let Some(n) = text.strip_prefix("Z/") {
        let n = parse_u64(n, whole)?;
        if n < 2 {
            return Err(err("modulus must be at least 2"));
        }
        return Ok(RingSpec::zn(n));
    }
    let body = text.strip_prefix("F_").ok_or_else(|| err("factor must start with Z/ or F_"))?;
    let (head, poly) = match body.find('[') {
        Some(i) => {
            let tail = body[i..]
                .strip_prefix("[poly=")
                .and_then(|t| t.strip_suffix(']'))
                .ok_or_else(|| err("expected [poly=c0,c1,...,1]"))?;
            let cs = tail.split(',').map(|c| parse_u64(c, whole)).collect::<Result<Vec<_>>>()?;
            (&body[..i], Some(cs))
        }
        None => (body, None),
    };
    let (p, m) = match head.split_once('^') {
        Some((p, m)) => {
            let p = parse_u64(p, whole)?;
            if !arith::is_prime(p) {
                return Err(Error::NotPrime(p));
            }
            (p, parse_u64(m, whole)? as usize)
        }
        None => {
            let q = parse_u64(head, whole)?;
            let (p, m) = arith::prime_power(q).ok_or(Error::NotPrimePower(q))?;
            (p, m as usize)
        }
    };
    if m == 0 {
        return Err(err("extension degree must be >= 1"));
    }
    if (p as u128).pow(m.min(64) as u32) > gf::MAX_FIELD_ORDER as u128 {
        return Err(err("field too large"));
    }
    let modulus_poly = poly.unwrap_or_else(|| gf::default_modulus(p, m));
    Ok(RingSpec::Gf { p, m, modulus_poly })
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let factors = text.split(" x ").map(|f| parse_factor(f, text)).collect::<Result<Vec<_>>>()?;
        let spec = RingSpec::product(factors);
        spec.validate()?;
        Ok(spec)
    }
}

/// Parses the ring DSL: `Z/<n>`, `F_<q>`, `F_<p>^<m>[poly=...]`, joined by ` x `.
pub fn parse_ring_spec(text: &str) -> Result<RingSpec> {
    text.parse()
}

/// A ring element in canonical encoding. Residue for `Z/n`, base-`p` packed
/// coefficient list for `GF(p^m)`, mixed-radix packed tuple for products.
/// Meaningful only together with the [`Ring`] it came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Elem(pub(crate) u64);

impl Elem {
    pub fn code(self) -> u64 {
        self.0
    }
}

enum Kind {
    Zn(u64),
    Gf(GfTables),
    Product { factors: Vec<Ring>, radix: Vec<u64> },
}

struct Inner {
    spec: RingSpec,
    kind: Kind,
    size: u64,
}

#[derive(Clone)]
pub struct Ring {
    inner: Arc<Inner>,
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.spec == other.inner.spec
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({})", self.inner.spec)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.inner.spec.fmt(f)
    }
}

impl Ring {
    pub fn new(spec: RingSpec) -> Result<Ring> {
        spec.validate()?;
        let size = spec.order();
        let kind = match &spec {
            RingSpec::Zn { modulus } => Kind::Zn(*modulus),
            RingSpec::Gf { p, modulus_poly, .. } => Kind::Gf(GfTables::new(*p, modulus_poly.clone())),
            RingSpec::Product(fs) => {
                let factors = fs.iter().cloned().map(Ring::new).collect::<Result<Vec<_>>>()?;
                let mut radix = Vec::with_capacity(factors.len());
                let mut r = 1u64;
                for f in &factors {
                    radix.push(r);
                    r *= f.size();
                }
                Kind::Product { factors, radix }
            }
        };
        Ok(Ring { inner: Arc::new(Inner { spec, kind, size }) })
    }

    pub fn parse(text: &str) -> Result<Ring> {
        Ring::new(text.parse()?)
    }

    pub fn zn(modulus: u64) -> Result<Ring> {
        Ring::new(RingSpec::zn(modulus))
    }

    pub fn gf(p: u64, m: usize) -> Result<Ring> {
        if !arith::is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ring::new(RingSpec::gf(p, m))
    }

    pub fn spec(&self) -> &RingSpec {
        &self.inner.spec
    }

    /// Number of elements.
    pub fn size(&self) -> u64 {
        self.inner.size
    }

    pub fn characteristic(&self) -> u64 {
        self.inner.spec.characteristic()
    }

    pub fn is_field(&self) -> bool {
        self.inner.spec.is_field()
    }

    /// `(p, m)` when this ring is a field of order `p^m`.
    pub fn field_params(&self) -> Option<(u64, usize)> {
        match &self.inner.kind {
            Kind::Gf(t) => Some((t.p, t.m)),
            Kind::Zn(n) if arith::is_prime(*n) => Some((*n, 1)),
            _ => None,
        }
    }

    /// The factor rings of a product; empty otherwise.
    pub fn factors(&self) -> &[Ring] {
        match &self.inner.kind {
            Kind::Product { factors, .. } => factors,
            _ => &[],
        }
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        self.from_int(1)
    }

    pub fn from_int(&self, x: i64) -> Elem {
        match &self.inner.kind {
            Kind::Zn(n) => Elem(arith::reduce(x as i128, *n)),
            Kind::Gf(t) => Elem(arith::reduce(x as i128, t.p)),
            Kind::Product { factors, .. } => {
                let parts: Vec<Elem> = factors.iter().map(|f| f.from_int(x)).collect();
                self.join(&parts)
            }
        }
    }

    /// Validates a raw code.
    pub fn elem(&self, code: u64) -> Result<Elem> {
        if code < self.size() {
            Ok(Elem(code))
        } else {
            Err(Error::BadElement(code.to_string(), self.to_string()))
        }
    }

    /// A GF element from its coefficient list (low degree first).
    pub fn gf_elem(&self, coeffs: &[u64]) -> Result<Elem> {
        match &self.inner.kind {
            Kind::Gf(t) if coeffs.len() == t.m && coeffs.iter().all(|&c| c < t.p) => Ok(Elem(t.encode(coeffs))),
            _ => Err(Error::BadElement(format!("{coeffs:?}"), self.to_string())),
        }
    }

    pub fn gf_coeffs(&self, x: Elem) -> Option<Vec<u64>> {
        match &self.inner.kind {
            Kind::Gf(t) => Some(t.coeffs(x.0)),
            _ => None,
        }
    }

    /// Splits a product element into its components. Non-products give `[x]`.
    pub fn split(&self, x: Elem) -> Vec<Elem> {
        match &self.inner.kind {
            Kind::Product { factors, radix } => {
                factors.iter().zip(radix).map(|(f, r)| Elem((x.0 / r) % f.size())).collect()
            }
            _ => vec![x],
        }
    }

    /// Inverse of [`Ring::split`].
    pub fn join(&self, parts: &[Elem]) -> Elem {
        match &self.inner.kind {
            Kind::Product { radix, .. } => Elem(parts.iter().zip(radix).map(|(e, r)| e.0 * r).sum()),
            _ => parts[0],
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.size()).map(Elem)
    }

    pub fn is_zero(&self, x: Elem) -> bool {
        x.0 == 0
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        match &self.inner.kind {
            Kind::Zn(n) => {
                let s = a.0 + b.0;
                Elem(if s >= *n { s - n } else { s })
            }
            Kind::Gf(t) => Elem(t.add(a.0, b.0)),
            Kind::Product { factors, .. } => self.zip_with(a, b, factors, Ring::add),
        }
    }

    pub fn neg(&self, a: Elem) -> Elem {
        match &self.inner.kind {
            Kind::Zn(n) => Elem(if a.0 == 0 { 0 } else { n - a.0 }),
            Kind::Gf(t) => Elem(t.neg(a.0)),
            Kind::Product { factors, .. } => {
                let parts: Vec<Elem> = factors.iter().zip(self.split(a)).map(|(f, x)| f.neg(x)).collect();
                self.join(&parts)
            }
        }
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.inner.kind {
            Kind::Zn(n) => Elem(a.0 * b.0 % n),
            Kind::Gf(t) => Elem(t.mul(a.0, b.0)),
            Kind::Product { factors, .. } => self.zip_with(a, b, factors, Ring::mul),
        }
    }

    fn zip_with(&self, a: Elem, b: Elem, factors: &[Ring], op: fn(&Ring, Elem, Elem) -> Elem) -> Elem {
        let parts: Vec<Elem> =
            factors.iter().zip(self.split(a).into_iter().zip(self.split(b))).map(|(f, (x, y))| op(f, x, y)).collect();
        self.join(&parts)
    }

    pub fn pow(&self, a: Elem, mut e: u64) -> Elem {
        let (mut acc, mut base) = (self.one(), a);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// `a^e` for a possibly negative exponent; `None` if `a` is not a unit
    /// and `e < 0`.
    pub fn pow_signed(&self, a: Elem, e: i64) -> Option<Elem> {
        if e >= 0 {
            Some(self.pow(a, e as u64))
        } else {
            self.inv(a).map(|ai| self.pow(ai, e.unsigned_abs()))
        }
    }

    pub fn inv(&self, a: Elem) -> Option<Elem> {
        match &self.inner.kind {
            Kind::Zn(n) => arith::mod_inv(a.0, *n).map(Elem),
            Kind::Gf(t) => t.inv(a.0).map(Elem),
            Kind::Product { factors, .. } => {
                let parts = factors.iter().zip(self.split(a)).map(|(f, x)| f.inv(x)).collect::<Option<Vec<_>>>()?;
                Some(self.join(&parts))
            }
        }
    }

    pub fn is_unit(&self, a: Elem) -> bool {
        match &self.inner.kind {
            Kind::Zn(n) => arith::gcd(a.0, *n) == 1,
            Kind::Gf(_) => a.0 != 0,
            Kind::Product { factors, .. } => factors.iter().zip(self.split(a)).all(|(f, x)| f.is_unit(x)),
        }
    }

    /// Canonical text form: residue, `[c0,c1,...]`, or `(x,y,...)`.
    pub fn format(&self, a: Elem) -> String {
        match &self.inner.kind {
            Kind::Zn(_) => a.0.to_string(),
            Kind::Gf(t) => {
                let cs: Vec<String> = t.coeffs(a.0).iter().map(|c| c.to_string()).collect();
                format!("[{}]", cs.join(","))
            }
            Kind::Product { factors, .. } => {
                let parts: Vec<String> = factors.iter().zip(self.split(a)).map(|(f, x)| f.format(x)).collect();
                format!("({})", parts.join(","))
            }
        }
    }

    pub fn to_json(&self, a: Elem) -> Value {
        match &self.inner.kind {
            Kind::Zn(_) => Value::from(a.0),
            Kind::Gf(t) => Value::from(t.coeffs(a.0)),
            Kind::Product { factors, .. } => {
                Value::Array(factors.iter().zip(self.split(a)).map(|(f, x)| f.to_json(x)).collect())
            }
        }
    }

    pub fn from_json(&self, v: &Value) -> Result<Elem> {
        let bad = || Error::BadElement(v.to_string(), self.to_string());
        match &self.inner.kind {
            Kind::Zn(n) => {
                let x = v.as_u64().ok_or_else(bad)?;
                if x < *n {
                    Ok(Elem(x))
                } else {
                    Err(bad())
                }
            }
            Kind::Gf(_) => {
                let cs = v
                    .as_array()
                    .ok_or_else(bad)?
                    .iter()
                    .map(|c| c.as_u64().ok_or_else(bad))
                    .collect::<Result<Vec<_>>>()?;
                self.gf_elem(&cs)
            }
            Kind::Product { factors, .. } => {
                let items = v.as_array().ok_or_else(bad)?;
                if items.len() != factors.len() {
                    return Err(bad());
                }
                let parts = factors.iter().zip(items).map(|(f, x)| f.from_json(x)).collect::<Result<Vec<_>>>()?;
                Ok(self.join(&parts))
            }
        }
    }
}

/// One local factor of a finite commutative ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalFactor {
    pub spec: RingSpec,
    /// Characteristic of the residue field.
    pub p: u64,
    /// `|k^x|` for the residue field `k`.
    pub residue_field_unit_order: u64,
}

/// Splits a ring into its local factors: `Z/n` by prime powers of `n`,
/// fields as themselves, products factor by factor.
pub fn crt_decompose(spec: &RingSpec) -> Vec<LocalFactor> {
    match spec {
        RingSpec::Zn { modulus } => arith::factorize(*modulus)
            .into_iter()
            .map(|(p, k)| LocalFactor { spec: RingSpec::zn(p.pow(k)), p, residue_field_unit_order: p - 1 })
            .collect(),
        RingSpec::Gf { p, m, .. } => {
            vec![LocalFactor { spec: spec.clone(), p: *p, residue_field_unit_order: p.pow(*m as u32) - 1 }]
        }
        RingSpec::Product(fs) => fs.iter().flat_map(crt_decompose).collect(),
    }
}

fn is_good_root(ring: &Ring, u: Elem, p: u64) -> bool {
    let one = ring.one();
    u != one && ring.pow(u, p) == one && ring.is_unit(ring.sub(u, one))
}

/// Smallest good root in a single local factor, scanning codes ascending.
fn local_root(factor: &LocalFactor, p: u64) -> Result<Option<Elem>> {
    if !factor.residue_field_unit_order.is_multiple_of(p) {
        return Ok(None);
    }
    let ring = Ring::new(factor.spec.clone())?;
    Ok(ring.elements().find(|&u| is_good_root(&ring, u, p)))
}

/// Finds a primitive `p`-th root of unity `u` with `u - 1` a unit.
///
/// Each local factor contributes its smallest such root in canonical order;
/// the roots are then assembled by CRT (for `Z/n`) and componentwise (for
/// products). Returns `None` as soon as some local factor fails the
/// criterion `p | |k^x|`.
pub fn find_primitive_root(ring: &Ring, p: u64) -> Result<Option<Elem>> {
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let top: Vec<Ring> = if ring.factors().is_empty() { vec![ring.clone()] } else { ring.factors().to_vec() };
    let mut parts = Vec::with_capacity(top.len());
    for component in &top {
        let locals = crt_decompose(component.spec());
        let mut residues = Vec::with_capacity(locals.len());
        let mut moduli = Vec::with_capacity(locals.len());
        for lf in &locals {
            match local_root(lf, p)? {
                Some(u) => {
                    residues.push(u.0);
                    moduli.push(lf.spec.order());
                }
                None => return Ok(None),
            }
        }
        let u = match component.spec() {
            RingSpec::Zn { .. } => Elem(arith::crt(&residues, &moduli)),
            _ => Elem(residues[0]),
        };
        parts.push(u);
    }
    let u = ring.join(&parts);
    debug_assert!(is_good_root(ring, u, p));
    Ok(Some(u))
}

/// `Tr(x) = x + x^p + ... + x^(p^(m-1))`, returned as a residue mod `p`.
pub fn field_trace(ring: &Ring, x: Elem) -> Result<u64> {
    let (p, m) = ring.field_params().ok_or_else(|| Error::NotAField(ring.to_string()))?;
    let mut acc = ring.zero();
    let mut term = x;
    for _ in 0..m {
        acc = ring.add(acc, term);
        term = ring.pow(term, p);
    }
    // the trace lies in the prime field, whose codes are exactly 0..p
    debug_assert!(acc.0 < p);
    Ok(acc.0)
}

fn invert_mod_p(mut a: Vec<Vec<u64>>, p: u64) -> Option<Vec<Vec<u64>>> {
    let n = a.len();
    let mut inv: Vec<Vec<u64>> = (0..n).map(|i| (0..n).map(|j| u64::from(i == j)).collect()).collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !a[r][col].is_multiple_of(p))?;
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let s = arith::mod_inv(a[col][col], p)?;
        for j in 0..n {
            a[col][j] = a[col][j] * s % p;
            inv[col][j] = inv[col][j] * s % p;
        }
        for r in 0..n {
            if r != col && a[r][col] != 0 {
                let f = a[r][col];
                for j in 0..n {
                    a[r][j] = (a[r][j] + p * p - f * a[col][j] % p) % p;
                    inv[r][j] = (inv[r][j] + p * p - f * inv[col][j] % p) % p;
                }
            }
        }
    }
    Some(inv)
}

/// The basis `{b_j}` with `Tr(a_i b_j) = delta_ij`, via the inverse of the
/// trace Gram matrix over GF(p).
pub fn trace_dual_basis(ring: &Ring, basis: &[Elem]) -> Result<Vec<Elem>> {
    let (p, m) = ring.field_params().ok_or_else(|| Error::NotAField(ring.to_string()))?;
    if basis.len() != m {
        return Err(Error::NotABasis);
    }
    let gram = basis
        .iter()
        .map(|&a| basis.iter().map(|&b| field_trace(ring, ring.mul(a, b))).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let inv = invert_mod_p(gram, p).ok_or(Error::NotABasis)?;
    Ok(inv
        .iter()
        .map(|row| {
            row.iter().zip(basis).fold(ring.zero(), |acc, (&c, &a)| ring.add(acc, ring.mul(ring.from_int(c as i64), a)))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_examples() {
        assert_eq!(parse_ring_spec("Z/7").unwrap(), RingSpec::zn(7));
        assert_eq!(parse_ring_spec("F_49").unwrap(), RingSpec::Gf { p: 7, m: 2, modulus_poly: vec![1, 0, 1] });
        assert_eq!(parse_ring_spec("F_7^2").unwrap(), parse_ring_spec("F_49").unwrap());
        assert_eq!(parse_ring_spec("Z/7 x Z/31").unwrap(), RingSpec::Product(vec![RingSpec::zn(7), RingSpec::zn(31)]));
        assert_eq!(
            parse_ring_spec("F_3^2[poly=2,2,1]").unwrap(),
            RingSpec::Gf { p: 3, m: 2, modulus_poly: vec![2, 2, 1] }
        );
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_ring_spec("Z/1"), Err(Error::RingParse(..))));
        assert!(matches!(parse_ring_spec("F_6"), Err(Error::NotPrimePower(6))));
        assert!(matches!(parse_ring_spec("F_4^2"), Err(Error::NotPrime(4))));
        assert!(parse_ring_spec("Q").is_err());
        assert!(parse_ring_spec("F_2^2[poly=1,0,1]").is_err());
        assert!(parse_ring_spec("Z/7 x ").is_err());
    }

    #[test]
    fn display_round_trips() {
        for text in ["Z/7", "F_7", "F_7^2", "Z/9 x F_2^2", "F_3^2[poly=2,2,1]"] {
            assert_eq!(parse_ring_spec(text).unwrap().to_string(), text);
        }
    }

    #[test]
    fn crt_decompose_examples() {
        let moduli =
            |n: u64| -> Vec<RingSpec> { crt_decompose(&RingSpec::zn(n)).into_iter().map(|f| f.spec).collect() };
        assert_eq!(moduli(217), vec![RingSpec::zn(7), RingSpec::zn(31)]);
        assert_eq!(moduli(9), vec![RingSpec::zn(9)]);
        assert_eq!(moduli(63), vec![RingSpec::zn(9), RingSpec::zn(7)]);
        let f = crt_decompose(&RingSpec::gf(2, 2));
        assert_eq!(f[0].residue_field_unit_order, 3);
    }

    #[test]
    fn units() {
        let z9 = Ring::zn(9).unwrap();
        assert!(!z9.is_unit(Elem(3)));
        assert!(z9.is_unit(Elem(7)));
        let prod = Ring::parse("Z/7 x Z/31").unwrap();
        let x = prod.join(&[Elem(2), Elem(5)]);
        assert!(prod.is_unit(x));
        assert!(!prod.is_unit(prod.join(&[Elem(2), Elem(0)])));
    }

    #[test]
    fn primitive_roots() {
        let root = |text: &str, p: u64| find_primitive_root(&Ring::parse(text).unwrap(), p).unwrap().map(|e| e.0);
        assert_eq!(root("Z/7", 3), Some(2));
        assert_eq!(root("Z/9", 3), None);
        assert_eq!(root("Z/9", 2), Some(8));
        assert_eq!(root("Z/217", 3), Some(191));
        assert_eq!(root("Z/2", 2), None);
        assert!(matches!(find_primitive_root(&Ring::zn(7).unwrap(), 4), Err(Error::NotPrime(4))));
        let prod = Ring::parse("Z/7 x Z/31").unwrap();
        let u = find_primitive_root(&prod, 3).unwrap().unwrap();
        assert_eq!(prod.split(u), vec![Elem(2), Elem(5)]);
    }

    #[test]
    fn traces_in_gf4() {
        let f4 = Ring::gf(2, 2).unwrap();
        let t = f4.gf_elem(&[0, 1]).unwrap();
        assert_eq!(field_trace(&f4, t).unwrap(), 1);
        assert_eq!(field_trace(&f4, f4.one()).unwrap(), 0);
        let f7 = Ring::zn(7).unwrap();
        for a in f7.elements() {
            assert_eq!(field_trace(&f7, a).unwrap(), a.0);
        }
        assert!(matches!(field_trace(&Ring::zn(9).unwrap(), Elem(1)), Err(Error::NotAField(_))));
    }

    #[test]
    fn dual_basis_gf4() {
        let f4 = Ring::gf(2, 2).unwrap();
        let basis = [f4.one(), f4.gf_elem(&[0, 1]).unwrap()];
        let dual = trace_dual_basis(&f4, &basis).unwrap();
        assert_eq!(dual, vec![f4.gf_elem(&[1, 1]).unwrap(), f4.one()]);
        let f5 = Ring::gf(5, 1).unwrap();
        assert_eq!(trace_dual_basis(&f5, &[f5.one()]).unwrap(), vec![f5.one()]);
        assert!(matches!(trace_dual_basis(&f4, &[f4.one(), f4.one()]), Err(Error::NotABasis)));
    }
}

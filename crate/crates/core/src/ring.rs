//! Finite commutative rings presented as products of monic quotients
//! `Z_n[x]/(f)`, plus table-backed rings used for quotients and
//! localizations.
//!
//! Elements are addressed by [`Elem`], an index into the deterministic
//! enumeration order: coefficient tuples read as mixed-radix digits with
//! the first component's constant term varying fastest. For `Z_n` the index
//! is the residue itself.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{budget_check, Error, Result};

/// Default cap on enumerated elements per ring or module.
pub const DEFAULT_MAX_ELEMS: usize = 20_000;

/// Rings up to this order get precomputed `+`/`×` tables.
const TABLE_LIMIT: usize = 1024;

/// Triple-loop axiom checks are exhaustive up to this order.
const AXIOM_LIMIT: usize = 64;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Elem(pub u32);

impl Elem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSpec {
    pub modulus: u64,
    /// Constant term first; `[0, 1]` is `x`.
    pub monic_poly: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RingSpec {
    pub components: Vec<ComponentSpec>,
}

impl RingSpec {
    /// `Z_n`, stored as `Z_n[x]/(x)`.
    pub fn zn(n: u64) -> Self {
        Self::quotient(n, &[0, 1])
    }

    pub fn quotient(n: u64, monic_poly: &[i64]) -> Self {
        RingSpec {
            components: vec![ComponentSpec {
                modulus: n,
                monic_poly: monic_poly.to_vec(),
            }],
        }
    }

    pub fn product(parts: &[RingSpec]) -> Self {
        RingSpec {
            components: parts.iter().flat_map(|p| p.components.clone()).collect(),
        }
    }
}

/// One factor `Z_n[x]/(f)` with `f` monic, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Component {
    modulus: u64,
    poly: Vec<u64>,
}

impl Component {
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn poly(&self) -> &[u64] {
        &self.poly
    }

    fn is_plain(&self) -> bool {
        self.poly == [0, 1]
    }

    fn label(&self) -> String {
        if self.is_plain() {
            return format!("Z_{}", self.modulus);
        }
        let mut terms = Vec::new();
        for (deg, &c) in self.poly.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let coeff = if c == 1 && deg > 0 {
                String::new()
            } else {
                c.to_string()
            };
            let term = match deg {
                0 => coeff,
                1 => format!("{coeff}x"),
                _ => format!("{coeff}x^{deg}"),
            };
            terms.push(term);
        }
        format!("Z_{}[x]/({})", self.modulus, terms.join("+"))
    }

    /// Reduce an arbitrary coefficient list modulo `n` and `f`, returning
    /// exactly `deg f` coefficients.
    fn reduce(&self, coeffs: &[u64]) -> Vec<u64> {
        let n = self.modulus;
        let d = self.degree();
        let mut c: Vec<u64> = coeffs.iter().map(|&x| x % n).collect();
        if c.len() < d {
            c.resize(d, 0);
        }
        for k in (d..c.len()).rev() {
            let lead = c[k];
            if lead == 0 {
                continue;
            }
            c[k] = 0;
            for j in 0..d {
                let sub = (lead as u128 * self.poly[j] as u128 % n as u128) as u64;
                c[k - d + j] = (c[k - d + j] + n - sub) % n;
            }
        }
        c.truncate(d);
        c
    }

    fn mul(&self, x: &[u64], y: &[u64]) -> Vec<u64> {
        let n = self.modulus as u128;
        let d = self.degree();
        let mut prod = vec![0u64; 2 * d - 1];
        for (i, &xi) in x.iter().enumerate() {
            if xi == 0 {
                continue;
            }
            for (j, &yj) in y.iter().enumerate() {
                let p = (xi as u128 * yj as u128 + prod[i + j] as u128) % n;
                prod[i + j] = p as u64;
            }
        }
        self.reduce(&prod)
    }
}

/// Canonical coefficient form: one list per component, each of length
/// `deg f_i`, coefficients in `[0, n_i)`. Table-backed rings use a single
/// one-entry list holding the element index.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RingElement(pub Vec<Vec<u64>>);

#[derive(Debug)]
enum Repr {
    Poly {
        components: Vec<Component>,
        /// One radix per flat coefficient slot.
        radices: Vec<u64>,
    },
    Table,
}

#[derive(Debug)]
struct RingData {
    label: String,
    repr: Repr,
    order: usize,
    add: Option<Vec<u32>>,
    mul: Option<Vec<u32>>,
    neg: Vec<u32>,
    one: Elem,
    max_elems: usize,
}

/// A finite commutative unital ring. Cheap to clone.
#[derive(Clone)]
pub struct FiniteRing(Arc<RingData>);

impl fmt::Debug for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteRing({})", self.0.label)
    }
}

impl fmt::Display for FiniteRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.label)
    }
}

impl PartialEq for FiniteRing {
    fn eq(&self, other: &Self) -> bool {
        if Arc::ptr_eq(&self.0, &other.0) {
            return true;
        }
        if self.0.order != other.0.order {
            return false;
        }
        match (&self.0.repr, &other.0.repr) {
            (Repr::Poly { components: a, .. }, Repr::Poly { components: b, .. }) => a == b,
            (Repr::Table, Repr::Table) => self.0.add == other.0.add && self.0.mul == other.0.mul,
            _ => false,
        }
    }
}

impl Eq for FiniteRing {}

impl FiniteRing {
    /// Build a ring from its spec with the default element budget.
    pub fn new(spec: &RingSpec) -> Result<Self> {
        Self::with_budget(spec, DEFAULT_MAX_ELEMS)
    }

    pub fn zn(n: u64) -> Result<Self> {
        Self::new(&RingSpec::zn(n))
    }

    pub fn with_budget(spec: &RingSpec, max_elems: usize) -> Result<Self> {
        if spec.components.is_empty() {
            return Err(Error::BadConfig("ring spec has no components".into()));
        }
        let mut components = Vec::with_capacity(spec.components.len());
        let mut radices = Vec::new();
        let mut order: u128 = 1;
        for c in &spec.components {
            let n = c.modulus;
            if n < 2 {
                return Err(Error::ModulusTooSmall(n));
            }
            let non_monic = Error::NonMonicPolynomial {
                modulus: n,
                poly: c.monic_poly.clone(),
            };
            if c.monic_poly.len() < 2 {
                return Err(non_monic);
            }
            let poly: Vec<u64> = c
                .monic_poly
                .iter()
                .map(|&x| x.rem_euclid(n as i64) as u64)
                .collect();
            if *poly.last().unwrap() != 1 {
                return Err(non_monic);
            }
            let comp = Component { modulus: n, poly };
            for _ in 0..comp.degree() {
                radices.push(n);
                order = order.saturating_mul(n as u128);
                budget_check("ring", order, max_elems)?;
            }
            components.push(comp);
        }
        let order = order as usize;
        let label = components
            .iter()
            .map(Component::label)
            .collect::<Vec<_>>()
            .join(" x ");

        let mut data = RingData {
            label,
            repr: Repr::Poly { components, radices },
            order,
            add: None,
            mul: None,
            neg: Vec::new(),
            one: Elem(0),
            max_elems,
        };
        data.one = poly_one(&data);
        data.neg = (0..order as u32)
            .map(|a| poly_neg(&data, Elem(a)).0)
            .collect();
        if order <= TABLE_LIMIT {
            let mut add = Vec::with_capacity(order * order);
            let mut mul = Vec::with_capacity(order * order);
            for a in 0..order as u32 {
                for b in 0..order as u32 {
                    add.push(poly_add(&data, Elem(a), Elem(b)).0);
                    mul.push(poly_mul(&data, Elem(a), Elem(b)).0);
                }
            }
            data.add = Some(add);
            data.mul = Some(mul);
        }
        Ok(FiniteRing(Arc::new(data)))
    }

    /// Build a ring from explicit row-major `+` and `×` tables. Element 0
    /// must be the additive identity. Ring axioms are verified (triple
    /// loops exhaustively up to order 64).
    pub fn from_tables(
        label: impl Into<String>,
        add: Vec<u32>,
        mul: Vec<u32>,
        max_elems: usize,
    ) -> Result<Self> {
        let order = (add.len() as f64).sqrt().round() as usize;
        if order == 0 || order * order != add.len() || mul.len() != add.len() {
            return Err(Error::NotARing("tables are not square".into()));
        }
        budget_check("table ring", order as u128, max_elems.min(TABLE_LIMIT))?;
        if add.iter().chain(mul.iter()).any(|&x| x as usize >= order) {
            return Err(Error::NotARing("table entry out of range".into()));
        }
        let at = |t: &[u32], a: usize, b: usize| t[a * order + b] as usize;
        if (0..order).any(|x| at(&add, 0, x) != x) {
            return Err(Error::NotARing("element 0 is not the additive identity".into()));
        }
        let one = (0..order)
            .find(|&e| (0..order).all(|x| at(&mul, e, x) == x))
            .ok_or_else(|| Error::NotARing("no multiplicative identity".into()))?;
        let mut neg = vec![0u32; order];
        for (a, slot) in neg.iter_mut().enumerate() {
            let b = (0..order)
                .find(|&b| at(&add, a, b) == 0)
                .ok_or_else(|| Error::NotARing(format!("element {a} has no negative")))?;
            *slot = b as u32;
        }
        for a in 0..order {
            for b in 0..order {
                if at(&add, a, b) != at(&add, b, a) || at(&mul, a, b) != at(&mul, b, a) {
                    return Err(Error::NotARing(format!("not commutative at ({a},{b})")));
                }
            }
        }
        let triples = if order <= AXIOM_LIMIT { order } else { AXIOM_LIMIT };
        for a in 0..triples {
            for b in 0..order {
                for c in 0..order {
                    let ab = at(&add, a, b);
                    if at(&add, ab, c) != at(&add, a, at(&add, b, c)) {
                        return Err(Error::NotARing("addition not associative".into()));
                    }
                    let mb = at(&mul, a, b);
                    if at(&mul, mb, c) != at(&mul, a, at(&mul, b, c)) {
                        return Err(Error::NotARing("multiplication not associative".into()));
                    }
                    if at(&mul, a, at(&add, b, c)) != at(&add, at(&mul, a, b), at(&mul, a, c)) {
                        return Err(Error::NotARing("not distributive".into()));
                    }
                }
            }
        }
        Ok(FiniteRing(Arc::new(RingData {
            label: label.into(),
            repr: Repr::Table,
            order,
            add: Some(add),
            mul: Some(mul),
            neg,
            one: Elem(one as u32),
            max_elems,
        })))
    }

    pub fn label(&self) -> &str {
        &self.0.label
    }

    pub fn order(&self) -> usize {
        self.0.order
    }

    pub fn max_elems(&self) -> usize {
        self.0.max_elems
    }

    /// Polynomial components, or `None` for table-backed rings.
    pub fn components(&self) -> Option<&[Component]> {
        match &self.0.repr {
            Repr::Poly { components, .. } => Some(components),
            Repr::Table => None,
        }
    }

    /// `true` for a single `Z_n[x]/(x)` component, i.e. plain `Z_n`.
    pub fn is_plain_residue_ring(&self) -> bool {
        matches!(&self.0.repr, Repr::Poly { components, .. } if components.len() == 1 && components[0].is_plain())
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.0.order as u32).map(Elem)
    }

    pub fn zero(&self) -> Elem {
        Elem(0)
    }

    pub fn one(&self) -> Elem {
        self.0.one
    }

    pub fn contains(&self, x: Elem) -> bool {
        x.index() < self.0.order
    }

    #[inline]
    pub fn add(&self, x: Elem, y: Elem) -> Elem {
        match &self.0.add {
            Some(t) => Elem(t[x.index() * self.0.order + y.index()]),
            None => poly_add(&self.0, x, y),
        }
    }

    #[inline]
    pub fn mul(&self, x: Elem, y: Elem) -> Elem {
        match &self.0.mul {
            Some(t) => Elem(t[x.index() * self.0.order + y.index()]),
            None => poly_mul(&self.0, x, y),
        }
    }

    #[inline]
    pub fn neg(&self, x: Elem) -> Elem {
        Elem(self.0.neg[x.index()])
    }

    pub fn sub(&self, x: Elem, y: Elem) -> Elem {
        self.add(x, self.neg(y))
    }

    /// `x^k`, with `x^0 = 1`.
    pub fn pow(&self, x: Elem, mut k: u64) -> Elem {
        let mut base = x;
        let mut acc = self.one();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// The integer multiple `k·x`.
    pub fn times(&self, mut k: u64, x: Elem) -> Elem {
        let mut base = x;
        let mut acc = self.zero();
        while k > 0 {
            if k & 1 == 1 {
                acc = self.add(acc, base);
            }
            base = self.add(base, base);
            k >>= 1;
        }
        acc
    }

    pub fn is_unit(&self, x: Elem) -> bool {
        let one = self.one();
        self.elements().any(|y| self.mul(x, y) == one)
    }

    pub fn is_nilpotent(&self, x: Elem) -> bool {
        self.nilpotency_index(x).is_some()
    }

    /// Least `k >= 1` with `x^k = 0`.
    pub fn nilpotency_index(&self, x: Elem) -> Option<u64> {
        let mut p = x;
        for k in 1..=self.order() as u64 {
            if p == self.zero() {
                return Some(k);
            }
            p = self.mul(p, x);
        }
        None
    }

    /// Least `n >= 1` such that `x^n` is idempotent. For every module `M`,
    /// `x^k m = 0` for some `k` iff `x^n m = 0`.
    pub fn idempotent_power(&self, x: Elem) -> u64 {
        let mut p = x;
        for n in 1..=self.order() as u64 {
            if self.mul(p, p) == p {
                return n;
            }
            p = self.mul(p, x);
        }
        unreachable!("powers of a finite-ring element reach an idempotent within |R| steps")
    }

    pub fn classify(&self) -> Classification {
        let zero = self.zero();
        let elements: Vec<Elem> = self.elements().collect();
        let units: Vec<Elem> = elements.iter().copied().filter(|&x| self.is_unit(x)).collect();
        let nilpotents: Vec<Elem> = elements
            .iter()
            .copied()
            .filter(|&x| self.is_nilpotent(x))
            .collect();
        let has_zero_divisor = elements.iter().any(|&x| {
            x != zero && elements.iter().any(|&y| y != zero && self.mul(x, y) == zero)
        });
        let nontrivial = self.order() >= 2;
        let is_domain = nontrivial && !has_zero_divisor;
        let is_field = nontrivial && units.len() == self.order() - 1;
        Classification {
            elements,
            units,
            nilpotents,
            is_domain,
            is_field,
        }
    }

    /// Canonical coefficients of an element.
    pub fn coefficients(&self, x: Elem) -> RingElement {
        match &self.0.repr {
            Repr::Poly { components, .. } => {
                let digits = decode(&self.0, x);
                let mut out = Vec::with_capacity(components.len());
                let mut pos = 0;
                for c in components {
                    out.push(digits[pos..pos + c.degree()].to_vec());
                    pos += c.degree();
                }
                RingElement(out)
            }
            Repr::Table => RingElement(vec![vec![x.0 as u64]]),
        }
    }

    /// Reduce a structured element into canonical form.
    pub fn canon(&self, e: &RingElement) -> Result<RingElement> {
        let x = self.element(e)?;
        Ok(self.coefficients(x))
    }

    /// Resolve a structured element (coefficients in any length, reduced
    /// modulo `n_i` and `f_i`).
    pub fn element(&self, e: &RingElement) -> Result<Elem> {
        match &self.0.repr {
            Repr::Poly { components, .. } => {
                if e.0.len() != components.len() {
                    return Err(Error::RingMismatch(format!(
                        "element has {} components, ring {} has {}",
                        e.0.len(),
                        self.label(),
                        components.len()
                    )));
                }
                let mut digits = Vec::with_capacity(self.0.order.ilog2() as usize + 1);
                for (c, coeffs) in components.iter().zip(&e.0) {
                    digits.extend(c.reduce(coeffs));
                }
                Ok(encode(&self.0, &digits))
            }
            Repr::Table => match e.0.as_slice() {
                [single] if single.len() == 1 && (single[0] as usize) < self.order() => {
                    Ok(Elem(single[0] as u32))
                }
                _ => Err(Error::RingMismatch(format!(
                    "{e:?} is not an element index of {}",
                    self.label()
                ))),
            },
        }
    }

    /// Parse a JSON element literal: an array of per-component coefficient
    /// arrays, or a bare integer `k` meaning `k·1` (the element index for
    /// table-backed rings).
    pub fn parse_literal(&self, v: &Value) -> Result<Elem> {
        let bad = || Error::RingMismatch(format!("bad element literal {v} for {}", self.label()));
        match v {
            Value::Number(n) => {
                let k = n.as_i64().ok_or_else(bad)?;
                match &self.0.repr {
                    Repr::Table => {
                        if k < 0 || k as usize >= self.order() {
                            return Err(bad());
                        }
                        Ok(Elem(k as u32))
                    }
                    Repr::Poly { .. } => {
                        let pos = self.times(k.unsigned_abs(), self.one());
                        Ok(if k < 0 { self.neg(pos) } else { pos })
                    }
                }
            }
            Value::Array(parts) => {
                let mut comps = Vec::with_capacity(parts.len());
                let moduli: Vec<u64> = match &self.0.repr {
                    Repr::Poly { components, .. } => components.iter().map(|c| c.modulus).collect(),
                    Repr::Table => vec![self.order() as u64],
                };
                if parts.len() != moduli.len() {
                    return Err(bad());
                }
                for (part, &n) in parts.iter().zip(&moduli) {
                    let arr = part.as_array().ok_or_else(bad)?;
                    let mut coeffs = Vec::with_capacity(arr.len());
                    for c in arr {
                        let c = c.as_i64().ok_or_else(bad)?;
                        coeffs.push(c.rem_euclid(n as i64) as u64);
                    }
                    comps.push(coeffs);
                }
                self.element(&RingElement(comps))
            }
            _ => Err(bad()),
        }
    }

    /// JSON literal for an element: a bare integer for `Z_n` and table
    /// rings, otherwise per-component coefficient arrays.
    pub fn literal(&self, x: Elem) -> Value {
        if self.is_plain_residue_ring() || matches!(self.0.repr, Repr::Table) {
            return Value::from(x.0);
        }
        Value::Array(
            self.coefficients(x)
                .0
                .into_iter()
                .map(|c| Value::Array(c.into_iter().map(Value::from).collect()))
                .collect(),
        )
    }
}

fn decode(data: &RingData, x: Elem) -> Vec<u64> {
    let Repr::Poly { radices, .. } = &data.repr else {
        unreachable!()
    };
    let mut rest = x.0 as u64;
    radices
        .iter()
        .map(|&r| {
            let d = rest % r;
            rest /= r;
            d
        })
        .collect()
}

fn encode(data: &RingData, digits: &[u64]) -> Elem {
    let Repr::Poly { radices, .. } = &data.repr else {
        unreachable!()
    };
    let mut idx = 0u64;
    for (&d, &r) in digits.iter().zip(radices).rev() {
        idx = idx * r + d;
    }
    Elem(idx as u32)
}

fn poly_one(data: &RingData) -> Elem {
    let Repr::Poly { components, .. } = &data.repr else {
        unreachable!()
    };
    let mut digits = Vec::new();
    for c in components {
        let mut one = vec![0; c.degree()];
        one[0] = 1;
        digits.extend(one);
    }
    encode(data, &digits)
}

fn poly_add(data: &RingData, x: Elem, y: Elem) -> Elem {
    let Repr::Poly { radices, .. } = &data.repr else {
        unreachable!()
    };
    let (a, b) = (decode(data, x), decode(data, y));
    let sum: Vec<u64> = a
        .iter()
        .zip(&b)
        .zip(radices)
        .map(|((&p, &q), &n)| (p + q) % n)
        .collect();
    encode(data, &sum)
}

fn poly_neg(data: &RingData, x: Elem) -> Elem {
    let Repr::Poly { radices, .. } = &data.repr else {
        unreachable!()
    };
    let a = decode(data, x);
    let neg: Vec<u64> = a.iter().zip(radices).map(|(&p, &n)| (n - p) % n).collect();
    encode(data, &neg)
}

fn poly_mul(data: &RingData, x: Elem, y: Elem) -> Elem {
    let Repr::Poly { components, .. } = &data.repr else {
        unreachable!()
    };
    let (a, b) = (decode(data, x), decode(data, y));
    let mut out = Vec::with_capacity(a.len());
    let mut pos = 0;
    for c in components {
        let d = c.degree();
        out.extend(c.mul(&a[pos..pos + d], &b[pos..pos + d]));
        pos += d;
    }
    encode(data, &out)
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub elements: Vec<Elem>,
    pub units: Vec<Elem>,
    pub nilpotents: Vec<Elem>,
    pub is_domain: bool,
    pub is_field: bool,
}

/// A ring homomorphism with its full table, verified at construction.
#[derive(Clone, Debug)]
pub struct RingHom {
    source: FiniteRing,
    target: FiniteRing,
    table: Vec<Elem>,
    surjective: bool,
}

impl RingHom {
    /// Build from the images of the generators of a polynomial-presented
    /// ring: for every component `i`, first the image of its identity
    /// `e_i`, then the image of `x·e_i`. For a single component this is
    /// `(f(1), f(x))`.
    pub fn from_generators(source: &FiniteRing, target: &FiniteRing, images: &[Elem]) -> Result<Self> {
        let comps = source
            .components()
            .ok_or_else(|| Error::RingMismatch("generator form needs a polynomial-presented source".into()))?;
        if images.len() != 2 * comps.len() {
            return Err(Error::RingMismatch(format!(
                "expected {} generator images, got {}",
                2 * comps.len(),
                images.len()
            )));
        }
        if images.iter().any(|&y| !target.contains(y)) {
            return Err(Error::RingMismatch("image outside target ring".into()));
        }
        let unit_image = (0..comps.len()).fold(target.zero(), |acc, i| target.add(acc, images[2 * i]));
        if unit_image != target.one() {
            return Err(Error::NotAHomomorphism {
                identity: "f(1) = 1".into(),
                detail: format!("sum of component identity images is {}", target.literal(unit_image)),
            });
        }
        let mut table = Vec::with_capacity(source.order());
        for x in source.elements() {
            let coeffs = source.coefficients(x);
            let mut acc = target.zero();
            for (i, cs) in coeffs.0.iter().enumerate() {
                let (e, g) = (images[2 * i], images[2 * i + 1]);
                let mut gp = e;
                for &c in cs {
                    acc = target.add(acc, target.times(c, gp));
                    gp = target.mul(gp, g);
                }
            }
            table.push(acc);
        }
        // Images of x·e_i must agree with the evaluated table.
        for (i, c) in comps.iter().enumerate() {
            let mut coeffs: Vec<Vec<u64>> = comps.iter().map(|c| vec![0; c.degree()]).collect();
            coeffs[i] = c.reduce(&[0, 1]);
            let xe = source.element(&RingElement(coeffs))?;
            if table[xe.index()] != images[2 * i + 1] {
                return Err(Error::NotAHomomorphism {
                    identity: format!("f(x·e_{i}) matches its assignment"),
                    detail: format!(
                        "x·e_{i} reduces to {}, whose image is {}",
                        source.literal(xe),
                        target.literal(table[xe.index()])
                    ),
                });
            }
        }
        Self::from_table(source, target, table)
    }

    /// The map `k·1 ↦ k·1` out of a plain residue ring.
    pub fn from_integers(source: &FiniteRing, target: &FiniteRing) -> Result<Self> {
        if !source.is_plain_residue_ring() {
            return Err(Error::RingMismatch(format!("{source} is not a plain residue ring")));
        }
        let table = source.elements().map(|k| target.times(k.0 as u64, target.one())).collect();
        Self::from_table(source, target, table)
    }

    pub fn identity(ring: &FiniteRing) -> Self {
        RingHom {
            source: ring.clone(),
            target: ring.clone(),
            table: ring.elements().collect(),
            surjective: true,
        }
    }

    /// Verify `table` exhaustively and wrap it.
    pub fn from_table(source: &FiniteRing, target: &FiniteRing, table: Vec<Elem>) -> Result<Self> {
        if table.len() != source.order() || table.iter().any(|&y| !target.contains(y)) {
            return Err(Error::RingMismatch("hom table has wrong shape".into()));
        }
        let f = |x: Elem| table[x.index()];
        if f(source.zero()) != target.zero() {
            return Err(Error::NotAHomomorphism {
                identity: "f(0) = 0".into(),
                detail: format!("f(0) = {}", target.literal(f(source.zero()))),
            });
        }
        if f(source.one()) != target.one() {
            return Err(Error::NotAHomomorphism {
                identity: "f(1) = 1".into(),
                detail: format!("f(1) = {}", target.literal(f(source.one()))),
            });
        }
        for x in source.elements() {
            for y in source.elements() {
                if f(source.add(x, y)) != target.add(f(x), f(y)) {
                    return Err(Error::NotAHomomorphism {
                        identity: "f(x+y) = f(x)+f(y)".into(),
                        detail: format!("x = {}, y = {}", source.literal(x), source.literal(y)),
                    });
                }
                if f(source.mul(x, y)) != target.mul(f(x), f(y)) {
                    return Err(Error::NotAHomomorphism {
                        identity: "f(xy) = f(x)f(y)".into(),
                        detail: format!("x = {}, y = {}", source.literal(x), source.literal(y)),
                    });
                }
            }
        }
        let mut hit = vec![false; target.order()];
        for &y in &table {
            hit[y.index()] = true;
        }
        let surjective = hit.iter().all(|&h| h);
        Ok(RingHom {
            source: source.clone(),
            target: target.clone(),
            table,
            surjective,
        })
    }

    pub fn source(&self) -> &FiniteRing {
        &self.source
    }

    pub fn target(&self) -> &FiniteRing {
        &self.target
    }

    pub fn apply(&self, x: Elem) -> Elem {
        self.table[x.index()]
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn is_surjective(&self) -> bool {
        self.surjective
    }
}

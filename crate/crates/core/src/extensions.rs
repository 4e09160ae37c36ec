//! Localization, restriction of scalars, and the truncated polynomial-ring
//! identity.

use serde_json::Value;

use crate::error::{budget_check, Error, Result};
use crate::module::{ModElem, PresentedModule, RModule};
use crate::report::{AuditReport, ClaimId, Instance, Status, Witness};
use crate::ring::{Elem, FiniteRing, RingHom};
use crate::torsion::{eps_reduced_by_definition, gln, is_eps_reduced};

/// Bound on the number of pair comparisons a localization may perform.
pub const PAIR_LIMIT: u128 = 1 << 26;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultSet {
    ring: FiniteRing,
    generators: Vec<Elem>,
    elements: Vec<Elem>,
}

impl MultSet {
    /// Smallest multiplicatively closed set containing `1` and `gens`.
    pub fn closure(ring: &FiniteRing, gens: &[Elem]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| !ring.contains(**g)) {
            return Err(Error::RingMismatch(format!("{g:?} is not in {ring}")));
        }
        let mut mask = vec![false; ring.order()];
        mask[ring.one().index()] = true;
        let mut elements = vec![ring.one()];
        for &g in gens {
            let mut i = 0;
            if !mask[g.index()] {
                mask[g.index()] = true;
                elements.push(g);
            }
            while i < elements.len() {
                let y = ring.mul(elements[i], g);
                if !mask[y.index()] {
                    mask[y.index()] = true;
                    elements.push(y);
                }
                i += 1;
            }
            // Close products among earlier elements as well.
            let mut changed = true;
            while changed {
                changed = false;
                let snapshot = elements.clone();
                for &x in &snapshot {
                    for &y in &snapshot {
                        let p = ring.mul(x, y);
                        if !mask[p.index()] {
                            mask[p.index()] = true;
                            elements.push(p);
                            changed = true;
                        }
                    }
                }
            }
        }
        let elements = ring.elements().filter(|x| mask[x.index()]).collect();
        Ok(MultSet {
            ring: ring.clone(),
            generators: gens.to_vec(),
            elements,
        })
    }

    pub fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elements.contains(&x)
    }

    pub fn literal(&self) -> Vec<Value> {
        self.elements.iter().map(|&x| self.ring.literal(x)).collect()
    }

    pub fn label(&self) -> String {
        let parts: Vec<String> = self.literal().iter().map(|v| v.to_string()).collect();
        format!("S={{{}}}", parts.join(","))
    }

    fn position(&self, x: Elem) -> usize {
        self.elements.binary_search(&x).expect("element of S")
    }
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, mut x: usize) -> usize {
        while self.0[x] != x {
            self.0[x] = self.0[self.0[x]];
            x = self.0[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (a, b) = (self.find(a), self.find(b));
        if a != b {
            self.0[a.max(b)] = a.min(b);
        }
    }
}

/// Classes of `pairs` items under `related`, numbered by least member.
fn classes(pairs: usize, related: impl Fn(usize, usize) -> bool) -> (Vec<u32>, Vec<usize>) {
    let mut uf = UnionFind((0..pairs).collect());
    for p in 0..pairs {
        for q in p + 1..pairs {
            if uf.find(p) != uf.find(q) && related(p, q) {
                uf.union(p, q);
            }
        }
    }
    let mut class_of = vec![u32::MAX; pairs];
    let mut reps = Vec::new();
    for p in 0..pairs {
        let root = uf.find(p);
        if class_of[root] == u32::MAX {
            class_of[root] = reps.len() as u32;
            reps.push(p);
        }
        class_of[p] = class_of[root];
    }
    (class_of, reps)
}

/// `S⁻¹R` as a table ring, with the structural map `r ↦ r/1`.
#[derive(Clone, Debug)]
pub struct LocalizedRing {
    pub base: FiniteRing,
    pub set: MultSet,
    pub ring: FiniteRing,
    pub canonical: RingHom,
    /// Representative pair `(r, s)` of each class.
    reps: Vec<(Elem, Elem)>,
    /// Class of the pair `(r, s)`, indexed `r * |S| + position(s)`.
    pair_class: Vec<u32>,
}

impl LocalizedRing {
    pub fn representative(&self, x: Elem) -> (Elem, Elem) {
        self.reps[x.index()]
    }
}

pub fn localize(ring: &FiniteRing, set: &MultSet) -> Result<LocalizedRing> {
    if set.ring() != ring {
        return Err(Error::RingMismatch("multiplicative set of another ring".into()));
    }
    let ns = set.len();
    let pairs = ring.order() * ns;
    budget_check("localized pairs", pairs as u128, ring.max_elems())?;
    budget_check("localization comparisons", (pairs as u128).pow(2), PAIR_LIMIT as usize)?;
    let s = set.elements();
    let pair = |p: usize| (Elem((p / ns) as u32), s[p % ns]);
    let index = |r: Elem, sv: Elem| r.index() * ns + set.position(sv);
    // r/s = r'/s' iff rs' - r's is killed by some element of S.
    let killed: Vec<bool> = ring
        .elements()
        .map(|x| s.iter().any(|&u| ring.mul(u, x) == ring.zero()))
        .collect();
    let (class_of, reps) = classes(pairs, |p, q| {
        let ((r1, s1), (r2, s2)) = (pair(p), pair(q));
        killed[ring.sub(ring.mul(r1, s2), ring.mul(r2, s1)).index()]
    });
    let n = reps.len();
    let add_pair = |(r1, s1): (Elem, Elem), (r2, s2): (Elem, Elem)| {
        index(ring.add(ring.mul(r1, s2), ring.mul(r2, s1)), ring.mul(s1, s2))
    };
    let mul_pair = |(r1, s1): (Elem, Elem), (r2, s2): (Elem, Elem)| index(ring.mul(r1, r2), ring.mul(s1, s2));
    let mut add = vec![0u32; n * n];
    let mut mul = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            let (a, b) = (pair(reps[i]), pair(reps[j]));
            add[i * n + j] = class_of[add_pair(a, b)];
            mul[i * n + j] = class_of[mul_pair(a, b)];
        }
    }
    for p in 0..pairs {
        for q in 0..pairs {
            let (cp, cq) = (class_of[p] as usize, class_of[q] as usize);
            if class_of[add_pair(pair(p), pair(q))] != add[cp * n + cq]
                || class_of[mul_pair(pair(p), pair(q))] != mul[cp * n + cq]
            {
                return Err(Error::NotARing("fraction arithmetic depends on representatives".into()));
            }
        }
    }
    let label = format!("{}^-1({})", set.label(), ring.label());
    let local = FiniteRing::from_tables(label, add, mul, ring.max_elems())?;
    let table = ring
        .elements()
        .map(|r| Elem(class_of[index(r, ring.one())]))
        .collect();
    let canonical = RingHom::from_table(ring, &local, table)?;
    Ok(LocalizedRing {
        base: ring.clone(),
        set: set.clone(),
        ring: local,
        canonical,
        reps: reps.iter().map(|&p| pair(p)).collect(),
        pair_class: class_of,
    })
}

/// `S⁻¹M` over `S⁻¹R`, with explicit tables.
#[derive(Clone, Debug)]
pub struct LocalizedModule {
    ring: FiniteRing,
    add: Vec<u32>,
    smul: Vec<u32>,
    rep_literals: Vec<Value>,
    /// Class of `m/1` for each `m`.
    canonical: Vec<ModElem>,
}

impl LocalizedModule {
    /// The structural map `m ↦ m/1`.
    pub fn canonical(&self, m: ModElem) -> ModElem {
        self.canonical[m.index()]
    }
}

pub fn localize_module<M: RModule + ?Sized>(m: &M, local: &LocalizedRing) -> Result<LocalizedModule> {
    let ring = m.ring();
    if ring != &local.base {
        return Err(Error::RingMismatch("module and localization over different rings".into()));
    }
    let set = &local.set;
    let s = set.elements();
    let ns = s.len();
    let pairs = m.size() * ns;
    budget_check("localized module pairs", pairs as u128, ring.max_elems())?;
    budget_check("localization comparisons", (pairs as u128).pow(2), PAIR_LIMIT as usize)?;
    let pair = |p: usize| (ModElem((p / ns) as u32), s[p % ns]);
    let index = |x: ModElem, sv: Elem| x.index() * ns + set.position(sv);
    let killed: Vec<bool> = m
        .elements()
        .map(|x| s.iter().any(|&u| m.smul(u, x) == m.zero()))
        .collect();
    let (class_of, reps) = classes(pairs, |p, q| {
        let ((x1, s1), (x2, s2)) = (pair(p), pair(q));
        killed[m.add(m.smul(s2, x1), m.neg(m.smul(s1, x2))).index()]
    });
    let n = reps.len();
    let add_pair = |(x1, s1): (ModElem, Elem), (x2, s2): (ModElem, Elem)| {
        index(m.add(m.smul(s2, x1), m.smul(s1, x2)), ring.mul(s1, s2))
    };
    let smul_pair = |(r, s1): (Elem, Elem), (x, s2): (ModElem, Elem)| index(m.smul(r, x), ring.mul(s1, s2));
    let nr = local.ring.order();
    let mut add = vec![0u32; n * n];
    for i in 0..n {
        for j in 0..n {
            add[i * n + j] = class_of[add_pair(pair(reps[i]), pair(reps[j]))];
        }
    }
    let mut smul = vec![0u32; nr * n];
    for c in 0..nr {
        for j in 0..n {
            smul[c * n + j] = class_of[smul_pair(local.reps[c], pair(reps[j]))];
        }
    }
    for p in 0..pairs {
        for q in 0..pairs {
            let (cp, cq) = (class_of[p] as usize, class_of[q] as usize);
            if class_of[add_pair(pair(p), pair(q))] != add[cp * n + cq] {
                return Err(Error::NotASubmodule("fraction addition depends on representatives".into()));
            }
        }
        let cp = class_of[p] as usize;
        for r in ring.elements() {
            for &s1 in s {
                let rp = (r, s1);
                let cr = local.pair_class[rp.0.index() * ns + set.position(s1)] as usize;
                if class_of[smul_pair(rp, pair(p))] != smul[cr * n + cp] {
                    return Err(Error::NotASubmodule("fraction action depends on representatives".into()));
                }
            }
        }
    }
    let rep_literals = reps
        .iter()
        .map(|&p| {
            let (x, sv) = pair(p);
            Value::Array(vec![m.literal(x), ring.literal(sv)])
        })
        .collect();
    let canonical = m
        .elements()
        .map(|x| ModElem(class_of[index(x, ring.one())]))
        .collect();
    Ok(LocalizedModule {
        ring: local.ring.clone(),
        add,
        smul,
        rep_literals,
        canonical,
    })
}

impl RModule for LocalizedModule {
    fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    fn size(&self) -> usize {
        self.rep_literals.len()
    }

    fn add(&self, x: ModElem, y: ModElem) -> ModElem {
        ModElem(self.add[x.index() * self.size() + y.index()])
    }

    fn neg(&self, x: ModElem) -> ModElem {
        let minus_one = self.ring.neg(self.ring.one());
        self.smul(minus_one, x)
    }

    fn smul(&self, r: Elem, x: ModElem) -> ModElem {
        ModElem(self.smul[r.index() * self.size() + x.index()])
    }

    fn literal(&self, x: ModElem) -> Value {
        self.rep_literals[x.index()].clone()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizationAudit {
    pub base: bool,
    pub localized: bool,
    pub localized_size: usize,
    /// Elements `m` with `m/1 = 0`.
    pub collapsed: usize,
}

impl LocalizationAudit {
    pub fn biconditional(&self) -> bool {
        self.base == self.localized
    }
}

pub fn localization_audit(m: &PresentedModule, set: &MultSet, t: u32) -> Result<LocalizationAudit> {
    let local = localize(m.ring(), set)?;
    let lm = localize_module(m, &local)?;
    let collapsed = m.elements().filter(|&x| lm.canonical(x) == lm.zero()).count();
    Ok(LocalizationAudit {
        base: is_eps_reduced(m, t).reduced,
        localized: is_eps_reduced(&lm, t).reduced,
        localized_size: lm.size(),
        collapsed,
    })
}

pub fn localization_report(m: &PresentedModule, set: &MultSet, t: u32) -> Result<AuditReport> {
    let audit = localization_audit(m, set, t)?;
    let inst = Instance::module(m.ring(), m.label(), t).with(set.label());
    let detail = format!(
        "M eps^{t}-reduced: {}; S^-1 M (size {}) eps^{t}-reduced: {}",
        audit.base, audit.localized_size, audit.localized
    );
    if audit.biconditional() {
        return Ok(AuditReport::new(ClaimId::Localization, inst, Status::Holds, detail));
    }
    let local = localize(m.ring(), set)?;
    let lm = localize_module(m, &local)?;
    let reverified = eps_reduced_by_definition(m, t).reduced == audit.base
        && eps_reduced_by_definition(&lm, t).reduced == audit.localized;
    let mut r = AuditReport::new(ClaimId::Localization, inst, Status::Fails, detail)
        .witness(Witness::Localization {
            multiplicative_set: set.literal(),
            base: audit.base,
            localized: audit.localized,
        })
        .reverified(reverified);
    r = r.note(if audit.collapsed > 1 {
        format!(
            "m -> m/1 sends {} nonzero elements to 0, so M does not embed in S^-1 M",
            audit.collapsed - 1
        )
    } else {
        "biconditional fails even though m -> m/1 is injective".to_string()
    });
    Ok(r)
}

/// `M` over the source of `f` via `r·m = f(r)m`.
pub struct RestrictedModule<'a, M: RModule + ?Sized> {
    hom: &'a RingHom,
    inner: &'a M,
}

pub fn restrict_scalars<'a, M: RModule + ?Sized>(hom: &'a RingHom, m: &'a M) -> Result<RestrictedModule<'a, M>> {
    if hom.target() != m.ring() {
        return Err(Error::RingMismatch(format!(
            "module over {} restricted along a map into {}",
            m.ring(),
            hom.target()
        )));
    }
    Ok(RestrictedModule { hom, inner: m })
}

impl<M: RModule + ?Sized> RModule for RestrictedModule<'_, M> {
    fn ring(&self) -> &FiniteRing {
        self.hom.source()
    }

    fn size(&self) -> usize {
        self.inner.size()
    }

    fn add(&self, x: ModElem, y: ModElem) -> ModElem {
        self.inner.add(x, y)
    }

    fn neg(&self, x: ModElem) -> ModElem {
        self.inner.neg(x)
    }

    fn smul(&self, r: Elem, x: ModElem) -> ModElem {
        self.inner.smul(self.hom.apply(r), x)
    }

    fn literal(&self, x: ModElem) -> Value {
        self.inner.literal(x)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScalarAudit {
    pub source_eps: bool,
    pub target_eps: bool,
    /// `_S M` reduced ⇒ `_R M` reduced.
    pub first: bool,
    /// `_R M` reduced ⇒ `_S M` reduced, when `f` is surjective.
    pub second: Option<bool>,
}

pub fn scalar_audit<M: RModule + ?Sized>(hom: &RingHom, m: &M, t: u32) -> Result<ScalarAudit> {
    let restricted = restrict_scalars(hom, m)?;
    let source_eps = is_eps_reduced(&restricted, t).reduced;
    let target_eps = is_eps_reduced(m, t).reduced;
    Ok(ScalarAudit {
        source_eps,
        target_eps,
        first: !target_eps || source_eps,
        second: hom.is_surjective().then_some(!source_eps || target_eps),
    })
}

pub fn scalar_report(hom: &RingHom, m: &PresentedModule, t: u32) -> Result<AuditReport> {
    let a = scalar_audit(hom, m, t)?;
    let inst = Instance::module(hom.target(), m.label(), t).with(format!("{} -> {}", hom.source(), hom.target()));
    let ok = a.first && a.second.unwrap_or(true);
    let detail = format!(
        "over target eps^{t}-reduced: {}; over source: {}; surjective: {}",
        a.target_eps,
        a.source_eps,
        hom.is_surjective()
    );
    let r = AuditReport::holds_if(ClaimId::ScalarRestriction, inst, ok, detail);
    Ok(if ok {
        r
    } else {
        r.witness(crate::report::flags(&[
            ("target_eps", a.target_eps),
            ("source_eps", a.source_eps),
        ]))
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCheck {
    /// `|{p : deg p ≤ D, p ∈ a^tΓ_a(R[x])}|`.
    pub lhs: usize,
    /// `|{p : deg p ≤ D, every coefficient in a^tΓ_a(R)}|`.
    pub rhs: usize,
    pub equal: bool,
    /// `R[x]` truncation `a^t`-reduced iff `R` is.
    pub reduced_agree: bool,
}

/// Compare `a^tΓ_a(R)[x]` with `a^tΓ_a(R[x])` on polynomials of degree `≤ d`.
pub fn poly_gln_check(ring: &FiniteRing, a: Elem, t: u32, d: u32) -> Result<PolyCheck> {
    let q = ring.order();
    let len = d as usize + 1;
    let count = (q as u128).pow(len as u32);
    budget_check("truncated polynomial ring", count, ring.max_elems())?;
    let count = count as usize;
    let bound = ring.idempotent_power(a).max(1);
    let at = ring.pow(a, t as u64);
    let decode = |mut idx: usize, out: &mut Vec<Elem>| {
        out.clear();
        for _ in 0..len {
            out.push(Elem((idx % q) as u32));
            idx /= q;
        }
    };
    let encode = |v: &[Elem]| v.iter().rev().fold(0usize, |acc, x| acc * q + x.index());

    let mut lhs = vec![false; count];
    let mut coeffs = Vec::with_capacity(len);
    let mut scaled = Vec::with_capacity(len);
    for idx in 0..count {
        decode(idx, &mut coeffs);
        let torsion = (1..=bound).any(|k| {
            let ak = ring.pow(a, k);
            coeffs.iter().all(|&c| ring.mul(ak, c) == ring.zero())
        });
        if torsion {
            scaled.clear();
            scaled.extend(coeffs.iter().map(|&c| ring.mul(at, c)));
            lhs[encode(&scaled)] = true;
        }
    }
    let regular = PresentedModule::free(ring, 1)?;
    let g = gln(&regular, a, t);
    let in_g = |c: Elem| g.contains(ModElem(c.0));
    let mut equal = true;
    let mut rhs = 0;
    for (idx, &l) in lhs.iter().enumerate() {
        decode(idx, &mut coeffs);
        let r = coeffs.iter().all(|&c| in_g(c));
        rhs += r as usize;
        equal &= l == r;
    }
    let lhs_count = lhs.iter().filter(|&&b| b).count();
    Ok(PolyCheck {
        lhs: lhs_count,
        rhs,
        equal,
        reduced_agree: (lhs_count == 1) == g.is_zero(),
    })
}

/// Poly check over every scalar and every `D ≤ max_degree` whose
/// truncation fits the budget.
pub fn poly_report(ring: &FiniteRing, t: u32, max_degree: u32) -> Result<AuditReport> {
    let q = ring.order() as u128;
    let top = (0..=max_degree)
        .rev()
        .find(|&d| q.pow(d + 1) <= ring.max_elems() as u128)
        .unwrap_or(0);
    let inst = Instance::ring(ring, t).with(format!("D<={top}"));
    let mut checked = 0;
    for a in ring.elements() {
        for d in 0..=top {
            let c = poly_gln_check(ring, a, t, d)?;
            checked += 1;
            if !(c.equal && c.reduced_agree) {
                return Ok(AuditReport::new(
                    ClaimId::Poly,
                    inst.scalar(ring.literal(a)),
                    Status::Fails,
                    format!("degree <= {d}: {} polynomials on the left, {} on the right", c.lhs, c.rhs),
                )
                .witness(crate::report::flags(&[("equal", c.equal), ("reduced_agree", c.reduced_agree)])));
            }
        }
    }
    Ok(AuditReport::new(
        ClaimId::Poly,
        inst,
        Status::Holds,
        format!("{checked} (a, D) combinations agree"),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::Ideal;

    fn z(n: u64) -> FiniteRing {
        FiniteRing::zn(n).unwrap()
    }

    #[test]
    fn mult_set_examples() {
        assert_eq!(MultSet::closure(&z(6), &[Elem(3)]).unwrap().elements(), &[Elem(1), Elem(3)]);
        assert_eq!(MultSet::closure(&z(6), &[]).unwrap().elements(), &[Elem(1)]);
        assert_eq!(MultSet::closure(&z(8), &[Elem(3)]).unwrap().elements(), &[Elem(1), Elem(3)]);
        assert_eq!(MultSet::closure(&z(8), &[Elem(2)]).unwrap().elements(), &[Elem(0), Elem(1), Elem(2), Elem(4)]);
    }

    #[test]
    fn localize_examples() {
        let z6 = z(6);
        let s = MultSet::closure(&z6, &[Elem(3)]).unwrap();
        let l = localize(&z6, &s).unwrap();
        assert_eq!(l.ring.order(), 2);
        let m = PresentedModule::free(&z6, 1).unwrap();
        assert_eq!(localize_module(&m, &l).unwrap().size(), 2);

        let z8 = z(8);
        let units = MultSet::closure(&z8, &[Elem(3), Elem(5)]).unwrap();
        let l = localize(&z8, &units).unwrap();
        assert_eq!(l.ring.order(), 8);
        assert!(l.canonical.is_surjective());

        let zero = MultSet::closure(&z8, &[Elem(2)]).unwrap();
        assert_eq!(localize(&z8, &zero).unwrap().ring.order(), 1);
    }

    #[test]
    fn localization_audit_examples() {
        let z8 = z(8);
        let q = PresentedModule::cyclic_quotient(&z8, &Ideal::principal(&z8, Elem(4)).unwrap()).unwrap();
        let one = MultSet::closure(&z8, &[]).unwrap();
        let a = localization_audit(&q, &one, 2).unwrap();
        assert!(a.base && a.localized);

        let z6 = z(6);
        let s = MultSet::closure(&z6, &[Elem(3)]).unwrap();
        let a = localization_audit(&PresentedModule::free(&z6, 1).unwrap(), &s, 1).unwrap();
        assert!(a.base && a.localized);

        let z16 = z(16);
        let a = localization_audit(&PresentedModule::free(&z16, 1).unwrap(), &MultSet::closure(&z16, &[]).unwrap(), 2).unwrap();
        assert!(!a.base && !a.localized);

        // S containing 2 kills the module, so the converse direction breaks.
        let z4 = z(4);
        let s = MultSet::closure(&z4, &[Elem(2)]).unwrap();
        let r = localization_report(&PresentedModule::free(&z4, 1).unwrap(), &s, 1).unwrap();
        assert_eq!(r.status, Status::Fails);
        assert_eq!(r.reverified, Some(true));
        assert!(!r.notes.is_empty());
    }

    #[test]
    fn scalar_examples() {
        let z8 = z(8);
        let z4 = z(4);
        let f = RingHom::from_integers(&z8, &z4).unwrap();
        let m = PresentedModule::free(&z4, 1).unwrap();
        let a = scalar_audit(&f, &m, 2).unwrap();
        assert!(a.source_eps && a.target_eps && a.first && a.second == Some(true));
        let a = scalar_audit(&f, &m, 1).unwrap();
        assert!(!a.source_eps && !a.target_eps && a.first && a.second == Some(true));

        let id = RingHom::identity(&z4);
        let r = restrict_scalars(&id, &m).unwrap();
        assert!(m.elements().all(|x| z4.elements().all(|s| r.smul(s, x) == m.smul(s, x))));
        assert!(restrict_scalars(&f, &PresentedModule::free(&z8, 1).unwrap()).is_err());
    }

    #[test]
    fn poly_examples() {
        let c = poly_gln_check(&z(12), Elem(2), 2, 2).unwrap();
        assert!(c.equal && c.lhs == 1);
        let c = poly_gln_check(&z(16), Elem(2), 2, 1).unwrap();
        assert!(c.equal && c.lhs == 16 && c.rhs == 16);
        let c = poly_gln_check(&z(7), Elem(3), 1, 2).unwrap();
        assert!(c.equal && c.lhs == 1);
    }
}

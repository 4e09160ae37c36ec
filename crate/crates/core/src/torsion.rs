//! The a-torsion functor, the generalised locally nilradical, reducedness
//! predicates and the functorial checks built on them.

use serde::Serialize;
use serde_json::Value;

use crate::error::{budget_check, Result};
use crate::ideal::{nilradical, Ideal};
use crate::module::{
    ann_element, direct_sum, hom_generator_images, hom_set, scalar_image, ModElem, ModuleHom, PresentedModule,
    RModule, Submodule, SubmoduleView,
};
use crate::ring::{Elem, FiniteRing};

/// `Γ_a(M)` together with the least `k` with `(0:_M a^k) = (0:_M a^{k+1})`.
#[derive(Clone, Debug)]
pub struct Torsion {
    pub submodule: Submodule,
    pub stabilization: u32,
}

/// `Γ_a(M)` via the ascending chain `(0:_M a) ⊆ (0:_M a^2) ⊆ …`, each step
/// taken as the preimage of the previous one under `m ↦ am`.
pub fn gamma<M: RModule + ?Sized>(m: &M, a: Elem) -> Torsion {
    let mut current: Vec<bool> = m.elements().map(|x| m.smul(a, x) == m.zero()).collect();
    let mut k = 1u32;
    loop {
        let next: Vec<bool> = m
            .elements()
            .map(|x| current[m.smul(a, x).index()])
            .collect();
        if next == current {
            break;
        }
        current = next;
        k += 1;
        assert!(k as usize <= m.size(), "torsion chain failed to stabilise");
    }
    Torsion {
        submodule: Submodule::from_mask(current),
        stabilization: k,
    }
}

/// `a^t Γ_a(M)`.
pub fn gln<M: RModule + ?Sized>(m: &M, a: Elem, t: u32) -> Submodule {
    gln_from(m, &gamma(m, a).submodule, a, t)
}

fn gln_from<M: RModule + ?Sized>(m: &M, torsion: &Submodule, a: Elem, t: u32) -> Submodule {
    let at = m.ring().pow(a, t as u64);
    let mut mask = vec![false; m.size()];
    for &x in torsion.elements() {
        mask[m.smul(at, x).index()] = true;
    }
    Submodule::from_mask(mask)
}

/// Outcome of an `a^t`-reducedness test. The witness `(m, k)` has
/// `a^k m = 0` and `a^t m ≠ 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtReduced {
    pub reduced: bool,
    pub witness: Option<(ModElem, u32)>,
}

fn least_killing_power<M: RModule + ?Sized>(m: &M, a: Elem, x: ModElem, bound: u32) -> Option<u32> {
    let mut y = x;
    for k in 1..=bound {
        y = m.smul(a, y);
        if y == m.zero() {
            return Some(k);
        }
    }
    None
}

/// `a^t`-reducedness decided by `a^t Γ_a(M) = 0`.
pub fn is_at_reduced<M: RModule + ?Sized>(m: &M, a: Elem, t: u32) -> AtReduced {
    let torsion = gamma(m, a);
    let at = m.ring().pow(a, t as u64);
    let bad = torsion
        .submodule
        .elements()
        .iter()
        .copied()
        .find(|&x| m.smul(at, x) != m.zero());
    match bad {
        None => AtReduced {
            reduced: true,
            witness: None,
        },
        Some(x) => {
            let k = least_killing_power(m, a, x, torsion.stabilization).expect("torsion element");
            AtReduced {
                reduced: false,
                witness: Some((x, k)),
            }
        }
    }
}

/// The definition read literally: for every `m` and every `k ≥ t`,
/// `a^k m = 0` forces `a^t m = 0`. `k` runs up to `max(t, n)` where `a^n`
/// is idempotent; past that point `a^k m = 0` already forces `a^n m = 0`.
pub fn at_reduced_by_definition<M: RModule + ?Sized>(m: &M, a: Elem, t: u32) -> AtReduced {
    let ring = m.ring();
    let bound = (ring.idempotent_power(a) as u32).max(t);
    let at = ring.pow(a, t as u64);
    for x in m.elements() {
        if m.smul(at, x) == m.zero() {
            continue;
        }
        for k in t..=bound {
            if m.smul(ring.pow(a, k as u64), x) == m.zero() {
                return AtReduced {
                    reduced: false,
                    witness: Some((x, k)),
                };
            }
        }
    }
    AtReduced {
        reduced: true,
        witness: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpsReduced {
    pub reduced: bool,
    /// `(a, m, k)` with `a^k m = 0 ≠ a^t m`.
    pub witness: Option<(Elem, ModElem, u32)>,
}

/// `ε^t`-reducedness: `a^t`-reduced for every scalar `a`.
pub fn is_eps_reduced<M: RModule + ?Sized>(m: &M, t: u32) -> EpsReduced {
    for a in m.ring().elements() {
        if let Some((x, k)) = is_at_reduced(m, a, t).witness {
            return EpsReduced {
                reduced: false,
                witness: Some((a, x, k)),
            };
        }
    }
    EpsReduced {
        reduced: true,
        witness: None,
    }
}

pub fn is_reduced<M: RModule + ?Sized>(m: &M) -> EpsReduced {
    is_eps_reduced(m, 1)
}

/// Definitional `ε^t` check, independent of the torsion chain.
pub fn eps_reduced_by_definition<M: RModule + ?Sized>(m: &M, t: u32) -> EpsReduced {
    for a in m.ring().elements() {
        if let Some((x, k)) = at_reduced_by_definition(m, a, t).witness {
            return EpsReduced {
                reduced: false,
                witness: Some((a, x, k)),
            };
        }
    }
    EpsReduced {
        reduced: true,
        witness: None,
    }
}

/// The seven independently computed forms of `a^t`-reducedness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceFlags {
    pub definition: bool,
    pub gln_zero: bool,
    pub ann_stabilizes: bool,
    pub hom_card_matches: bool,
    pub hom_limit_matches: bool,
    pub gamma_equals_ann_t: bool,
    pub sequence_exact: bool,
}

impl EquivalenceFlags {
    pub fn as_array(&self) -> [bool; 7] {
        [
            self.definition,
            self.gln_zero,
            self.ann_stabilizes,
            self.hom_card_matches,
            self.hom_limit_matches,
            self.gamma_equals_ann_t,
            self.sequence_exact,
        ]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReducednessReport {
    pub a: Value,
    pub t: u32,
    pub conditions: EquivalenceFlags,
    pub consistent: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

/// Evaluates every condition of the equivalence separately.
pub fn verify_equivalences<M: RModule + ?Sized>(m: &M, a: Elem, t: u32) -> Result<ReducednessReport> {
    let ring = m.ring();
    let zero = m.zero();
    let definitional = at_reduced_by_definition(m, a, t);
    let torsion = gamma(m, a);
    let gamma_set = &torsion.submodule;
    let top = (ring.idempotent_power(a) as u32).max(t) + 1;

    let gln_zero = gln_from(m, gamma_set, a, t).is_zero();

    let ann_t = ann_element(m, a, t);
    let ann_stabilizes = (t..=top).all(|k| ann_element(m, a, k) == ann_t);

    let ideal = Ideal::principal(ring, a)?;
    let hom_count = |k: u32| -> Result<Vec<Vec<ModElem>>> {
        let src = PresentedModule::cyclic_quotient(ring, &ideal.power(k))?;
        hom_generator_images(&src, m)
    };
    let homs_t = hom_count(t)?;
    let mut hom_card_matches = true;
    for k in t + 1..=top {
        if hom_count(k)?.len() != homs_t.len() {
            hom_card_matches = false;
            break;
        }
    }

    // f ↦ f(1̄) must be injective and land exactly on Γ_a(M).
    let mut hit = vec![false; m.size()];
    let mut injective = true;
    for images in &homs_t {
        let y = images[0];
        injective &= !std::mem::replace(&mut hit[y.index()], true);
    }
    let hom_limit_matches = injective
        && homs_t.len() == gamma_set.len()
        && homs_t.iter().all(|images| gamma_set.contains(images[0]));

    let at = ring.pow(a, t as u64);
    let kernel = Submodule::from_mask(m.elements().map(|x| m.smul(at, x) == zero).collect());
    let gamma_equals_ann_t = kernel == *gamma_set;

    let image = scalar_image(m, a, t);
    let sequence_exact = gamma_set.elements().iter().all(|&x| m.smul(at, x) == zero)
        && gamma_set.len() * image.len() == m.size();

    let conditions = EquivalenceFlags {
        definition: definitional.reduced,
        gln_zero,
        ann_stabilizes,
        hom_card_matches,
        hom_limit_matches,
        gamma_equals_ann_t,
        sequence_exact,
    };
    let flags = conditions.as_array();
    let consistent = flags.iter().all(|&f| f == flags[0]);
    let witness = definitional
        .witness
        .map(|(x, k)| serde_json::json!({ "m": m.literal(x), "k": k }));
    Ok(ReducednessReport {
        a: ring.literal(a),
        t,
        conditions,
        consistent,
        witness,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stratification {
    /// `⋃_a aΓ_a(R)` in element order.
    pub union: Vec<Elem>,
    pub nilradical: Vec<Elem>,
    pub equal: bool,
    /// Least element in exactly one of the two sets.
    pub discrepancy: Option<Elem>,
}

pub fn stratify_audit(ring: &FiniteRing) -> Result<Stratification> {
    let regular = PresentedModule::free(ring, 1)?;
    let mut mask = vec![false; ring.order()];
    for a in ring.elements() {
        for &x in gln(&regular, a, 1).elements() {
            mask[regular.vector(x)[0].index()] = true;
        }
    }
    let nil = nilradical(ring);
    let union: Vec<Elem> = ring.elements().filter(|x| mask[x.index()]).collect();
    let discrepancy = ring
        .elements()
        .find(|&x| mask[x.index()] != nil.contains(x));
    Ok(Stratification {
        equal: discrepancy.is_none(),
        union,
        nilradical: nil.elements().to_vec(),
        discrepancy,
    })
}

/// Result of one functorial check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Check {
    Pass,
    Fail { witness: String },
    Skipped { reason: String },
}

impl Check {
    pub fn failed(&self) -> bool {
        matches!(self, Check::Fail { .. })
    }

    fn from_failure(failure: Option<String>) -> Check {
        match failure {
            None => Check::Pass,
            Some(witness) => Check::Fail { witness },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FunctorAudit {
    pub preradical: Check,
    pub radical: Check,
    pub characteristic: Check,
    pub factor: Check,
    pub ideal_action: Check,
    pub composition: Check,
    /// Strict containments in the factor checks; expected, not failures.
    pub strict: Vec<String>,
}

impl FunctorAudit {
    pub fn checks(&self) -> [(&'static str, &Check); 6] {
        [
            ("preradical", &self.preradical),
            ("radical", &self.radical),
            ("characteristic", &self.characteristic),
            ("factor", &self.factor),
            ("ideal_action", &self.ideal_action),
            ("composition", &self.composition),
        ]
    }

    pub fn passed(&self) -> bool {
        self.checks().iter().all(|(_, c)| !c.failed())
    }
}

/// Default bound on `|N|^g` for the hom sets a [`FunctorContext`] builds.
pub const DEFAULT_HOM_CAP: usize = 4096;
/// Default bound on the size of the submodule family used by the factor checks.
pub const DEFAULT_FAMILY_CAP: usize = 64;

/// Scalar-independent data for the functorial checks on one module: homs
/// to partner modules, automorphisms, and a family of submodules with
/// their quotients.
pub struct FunctorContext<'a> {
    module: &'a PresentedModule,
    partners: Vec<(&'a PresentedModule, Option<Vec<Vec<ModElem>>>)>,
    automorphisms: Option<Vec<ModuleHom>>,
    family: Vec<(Submodule, PresentedModule)>,
    family_truncated: bool,
}

impl<'a> FunctorContext<'a> {
    pub fn new(module: &'a PresentedModule, partners: &'a [PresentedModule]) -> Result<Self> {
        Self::with_caps(module, partners, DEFAULT_HOM_CAP, DEFAULT_FAMILY_CAP)
    }

    pub fn with_caps(
        module: &'a PresentedModule,
        partners: &'a [PresentedModule],
        hom_cap: usize,
        family_cap: usize,
    ) -> Result<Self> {
        let within = |n: usize| {
            (n as u128)
                .checked_pow(module.rank() as u32)
                .is_some_and(|c| c <= hom_cap as u128)
                && module.rank() <= crate::module::MAX_HOM_RANK
        };
        let mut homs = Vec::new();
        for p in partners {
            let images = if within(p.size()) {
                Some(hom_generator_images(module, p)?)
            } else {
                None
            };
            homs.push((p, images));
        }
        let automorphisms = if within(module.size()) {
            Some(
                hom_set(module, module)?
                    .into_iter()
                    .filter(ModuleHom::is_bijective)
                    .collect(),
            )
        } else {
            None
        };

        let mut subs: Vec<Submodule> = Vec::new();
        let ring = module.ring();
        for x in module.elements() {
            subs.push(Submodule::generate(module, &[x]));
        }
        for r in ring.elements() {
            subs.push(Submodule::from_mask(
                module.elements().map(|x| module.smul(r, x) == module.zero()).collect(),
            ));
        }
        subs.sort_by(|a, b| (a.len(), a.elements()).cmp(&(b.len(), b.elements())));
        subs.dedup();
        let family_truncated = subs.len() > family_cap;
        subs.truncate(family_cap);
        let mut family = Vec::with_capacity(subs.len());
        for n in subs {
            let q = module.quotient(&n)?;
            family.push((n, q));
        }
        Ok(FunctorContext {
            module,
            partners: homs,
            automorphisms,
            family,
            family_truncated,
        })
    }

    pub fn family_len(&self) -> usize {
        self.family.len()
    }

    pub fn family_truncated(&self) -> bool {
        self.family_truncated
    }

    fn apply_images<N: RModule + ?Sized>(&self, target: &N, images: &[ModElem], x: ModElem) -> ModElem {
        let mut acc = target.zero();
        for (&r, &y) in self.module.vector(x).iter().zip(images) {
            acc = target.add(acc, target.smul(r, y));
        }
        acc
    }

    pub fn audit(&self, a: Elem, t: u32) -> Result<FunctorAudit> {
        let m = self.module;
        let ring = m.ring();
        let lit = |x: ModElem| m.literal(x).to_string();
        let g = gln(m, a, t);

        // (i) f(γ(M)) ⊆ γ(N).
        let mut skipped = Vec::new();
        let mut failure = None;
        for (n, images) in &self.partners {
            let Some(images) = images else {
                skipped.push(n.label().to_string());
                continue;
            };
            let gn = gln(*n, a, t);
            for (fi, f) in images.iter().enumerate() {
                if let Some(&x) = g.elements().iter().find(|&&x| !gn.contains(self.apply_images(*n, f, x))) {
                    failure = Some(format!("hom #{fi} into {} sends {} outside its gln", n.label(), lit(x)));
                    break;
                }
            }
            if failure.is_some() {
                break;
            }
        }
        let preradical = if failure.is_none() && !self.partners.is_empty() && skipped.len() == self.partners.len() {
            Check::Skipped {
                reason: "every partner hom set exceeds the hom cap".into(),
            }
        } else {
            Check::from_failure(failure)
        };

        // (ii) γ(M/γ(M)) = 0.
        let q = m.quotient(&g)?;
        let radical = Check::from_failure(
            gln(&q, a, t)
                .elements()
                .iter()
                .find(|&&y| y != q.zero())
                .map(|&y| format!("M/gln(M) has {} in its gln", q.literal(y))),
        );

        // (iii) automorphisms preserve γ(M).
        let characteristic = match &self.automorphisms {
            None => Check::Skipped {
                reason: "automorphism enumeration exceeds the hom cap".into(),
            },
            Some(autos) => Check::from_failure(autos.iter().enumerate().find_map(|(i, f)| {
                g.elements()
                    .iter()
                    .find(|&&x| !g.contains(f.apply(x)))
                    .map(|&x| format!("automorphism #{i} moves {} out of gln", lit(x)))
            })),
        };

        // (iv) γ(N) ⊆ N ∩ γ(M) and (γ(M)+N)/N ⊆ γ(M/N).
        let mut strict = Vec::new();
        let mut failure = None;
        for (n, quotient) in &self.family {
            let view = SubmoduleView::new(m, n);
            let gn = view.lift(&gln(&view, a, t));
            let meet = n.intersection(&g);
            if !gn.is_subset(&meet) {
                failure = Some(format!("gln(N) not inside N ∩ gln(M) for N = {}", n.literal(m)));
                break;
            }
            if gn.len() < meet.len() {
                strict.push(format!(
                    "gln(N) = {} strictly inside N ∩ gln(M) = {} for N = {}",
                    gn.literal(m),
                    meet.literal(m),
                    n.literal(m)
                ));
            }
            let gq = gln(quotient, a, t);
            let mut pushed = vec![false; quotient.size()];
            for &x in g.elements() {
                pushed[m.project(quotient, x).index()] = true;
            }
            let pushed = Submodule::from_mask(pushed);
            if !pushed.is_subset(&gq) {
                failure = Some(format!("(gln(M)+N)/N not inside gln(M/N) for N = {}", n.literal(m)));
                break;
            }
            if pushed.len() < gq.len() {
                strict.push(format!(
                    "(gln(M)+N)/N strictly inside gln(M/N) for N = {}",
                    n.literal(m)
                ));
            }
        }
        let factor = Check::from_failure(failure);

        // (v) γ(R)·M ⊆ γ(M), with equality for free modules of rank ≤ 2.
        let regular = PresentedModule::free(ring, 1)?;
        let gr: Vec<Elem> = gln(&regular, a, t)
            .elements()
            .iter()
            .map(|&x| regular.vector(x)[0])
            .collect();
        let mut products = Vec::new();
        let mut failure = None;
        'outer: for &r in &gr {
            for x in m.elements() {
                let y = m.smul(r, x);
                if !g.contains(y) {
                    failure = Some(format!("{} times {} lies outside gln(M)", ring.literal(r), lit(x)));
                    break 'outer;
                }
                products.push(y);
            }
        }
        if failure.is_none() && m.is_free() && m.rank() <= 2 {
            let generated = Submodule::generate(m, &products);
            if generated != g {
                failure = Some(format!(
                    "gln(R)M = {} differs from gln(M) = {} on a free module",
                    generated.literal(m),
                    g.literal(m)
                ));
            }
        }
        let ideal_action = Check::from_failure(failure);

        // (vi) γ = (aΓ_a)^t.
        let mut current = Submodule::whole(m);
        for _ in 0..t {
            let view = SubmoduleView::new(m, &current);
            current = view.lift(&gln(&view, a, 1));
        }
        let composition = Check::from_failure((current != g).then(|| {
            format!(
                "t-fold composite {} differs from gln {}",
                current.literal(m),
                g.literal(m)
            )
        }));

        Ok(FunctorAudit {
            preradical,
            radical,
            characteristic,
            factor,
            ideal_action,
            composition,
            strict,
        })
    }
}

/// One-shot functor audit with default caps.
pub fn functor_audit(m: &PresentedModule, partners: &[PresentedModule], a: Elem, t: u32) -> Result<FunctorAudit> {
    FunctorContext::new(m, partners)?.audit(a, t)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SumAudit {
    pub equal: bool,
    /// `gln` of the direct sum, as elements of the sum.
    pub whole: Submodule,
    /// The blockwise sum of the parts' `gln`, as elements of the sum.
    pub blockwise: Submodule,
    pub sum: PresentedModule,
}

/// `gln(⊕ M_i) = ⊕ gln(M_i)`.
pub fn sum_audit(parts: &[&PresentedModule], a: Elem, t: u32) -> Result<SumAudit> {
    let sum = direct_sum(parts)?;
    let whole = gln(&sum, a, t);
    let blocks: Vec<Vec<ModElem>> = parts.iter().map(|p| gln(*p, a, t).elements().to_vec()).collect();
    let count: u128 = blocks.iter().map(|b| b.len() as u128).product();
    budget_check("blockwise torsion", count, sum.ring().max_elems())?;
    let mut mask = vec![false; sum.size()];
    let mut digits = vec![0usize; parts.len()];
    let mut v = Vec::with_capacity(sum.rank());
    'tuples: loop {
        v.clear();
        for (i, p) in parts.iter().enumerate() {
            v.extend_from_slice(p.vector(blocks[i][digits[i]]));
        }
        mask[sum.element_of(&v)?.index()] = true;
        for i in (0..parts.len()).rev() {
            digits[i] += 1;
            if digits[i] < blocks[i].len() {
                continue 'tuples;
            }
            digits[i] = 0;
        }
        break;
    }
    let blockwise = Submodule::from_mask(mask);
    Ok(SumAudit {
        equal: whole == blockwise,
        whole,
        blockwise,
        sum,
    })
}

use std::collections::BTreeSet;

use proptest::prelude::*;
use redmod_core::catalog::{default_ring_specs, module_family};
use redmod_core::extensions::{localize, localize_module, poly_gln_check, scalar_audit, MultSet};
use redmod_core::module::{ann_ideal, hom_set};
use redmod_core::regularity::{is_t_regular, is_t_regular_by_definition};
use redmod_core::torsion::{gamma, gln, is_at_reduced, is_eps_reduced, is_reduced, verify_equivalences};
use redmod_core::{
    enumerate_ideals, nilradical, Elem, FiniteRing, Ideal, ModElem, PresentedModule, RModule, RingHom, RingSpec,
    Submodule,
};

const CASES: u32 = 48;

/// Catalog rings up to order 32 and a few larger quotients and products.
fn pool() -> Vec<RingSpec> {
    let mut specs: Vec<RingSpec> = default_ring_specs()
        .into_iter()
        .filter(|s| FiniteRing::new(s).map(|r| r.order() <= 32).unwrap_or(false))
        .collect();
    specs.push(RingSpec::quotient(4, &[1, 1, 1]));
    specs.push(RingSpec::quotient(8, &[0, 0, 1]));
    specs.push(RingSpec::quotient(2, &[0, 0, 0, 1]));
    specs.push(RingSpec::product(&[RingSpec::zn(2), RingSpec::zn(2), RingSpec::zn(2)]));
    specs.push(RingSpec::product(&[RingSpec::zn(3), RingSpec::quotient(2, &[0, 0, 1])]));
    specs
}

fn small_pool(max: usize) -> Vec<RingSpec> {
    pool()
        .into_iter()
        .filter(|s| FiniteRing::new(s).unwrap().order() <= max)
        .collect()
}

fn ring_from(specs: &[RingSpec], i: usize) -> FiniteRing {
    FiniteRing::new(&specs[i % specs.len()]).unwrap()
}

fn pick(ring: &FiniteRing, i: usize) -> Elem {
    Elem((i % ring.order()) as u32)
}

/// `{m : a^k m = 0 for some k ≤ |M|}` by repeated multiplication.
fn gamma_brute<M: RModule>(m: &M, a: Elem) -> BTreeSet<ModElem> {
    m.elements()
        .filter(|&x| {
            let mut y = x;
            for _ in 0..=m.size() {
                y = m.smul(a, y);
                if y == m.zero() {
                    return true;
                }
            }
            false
        })
        .collect()
}

fn set(s: &Submodule) -> BTreeSet<ModElem> {
    s.elements().iter().copied().collect()
}

fn regular(ring: &FiniteRing) -> PresentedModule {
    PresentedModule::free(ring, 1).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(CASES))]

    #[test]
    fn ring_axioms(ri in 0usize..64, x in 0usize..4096, y in 0usize..4096, z in 0usize..4096) {
        let r = ring_from(&pool(), ri);
        prop_assume!(r.order() <= 64);
        let (x, y, z) = (pick(&r, x), pick(&r, y), pick(&r, z));
        prop_assert_eq!(r.add(r.add(x, y), z), r.add(x, r.add(y, z)));
        prop_assert_eq!(r.mul(r.mul(x, y), z), r.mul(x, r.mul(y, z)));
        prop_assert_eq!(r.add(x, y), r.add(y, x));
        prop_assert_eq!(r.mul(x, y), r.mul(y, x));
        prop_assert_eq!(r.mul(x, r.add(y, z)), r.add(r.mul(x, y), r.mul(x, z)));
        prop_assert_eq!(r.add(x, r.zero()), x);
        prop_assert_eq!(r.mul(x, r.one()), x);
        prop_assert_eq!(r.add(x, r.neg(x)), r.zero());
        prop_assert_eq!(r.pow(x, 3), r.mul(x, r.mul(x, x)));
    }

    #[test]
    fn canon_is_idempotent(ri in 0usize..64, coeffs in proptest::collection::vec(-40i64..40, 0..4)) {
        let r = ring_from(&pool(), ri);
        let comps = r.components().unwrap().to_vec();
        let raw: Vec<Vec<i64>> = comps.iter().map(|_| coeffs.clone()).collect();
        let lit = serde_json::to_value(&raw).unwrap();
        if let Ok(x) = r.parse_literal(&lit) {
            let e = r.coefficients(x);
            prop_assert_eq!(r.canon(&e).unwrap(), e.clone());
            prop_assert_eq!(r.element(&e).unwrap(), x);
            prop_assert_eq!(r.parse_literal(&r.literal(x)).unwrap(), x);
        }
    }

    #[test]
    fn domain_iff_field(ri in 0usize..64) {
        let r = ring_from(&pool(), ri);
        let c = r.classify();
        prop_assert_eq!(c.is_domain, c.is_field);
        let domain = r.elements().filter(|&x| x != r.zero()).all(|x| r.elements().all(|y| y == r.zero() || r.mul(x, y) != r.zero()));
        prop_assert_eq!(c.is_domain, domain && r.order() > 1);
    }

    #[test]
    fn ideal_closure_idempotent(ri in 0usize..64, gens in proptest::collection::vec(0usize..4096, 0..3)) {
        let r = ring_from(&small_pool(32), ri);
        let gens: Vec<Elem> = gens.into_iter().map(|g| pick(&r, g)).collect();
        let i = Ideal::generate(&r, &gens).unwrap();
        let again = Ideal::generate(&r, i.elements()).unwrap();
        prop_assert_eq!(again.elements(), i.elements());
        for &x in i.elements() {
            for y in r.elements() {
                prop_assert!(i.contains(r.mul(x, y)));
            }
            for &y in i.elements() {
                prop_assert!(i.contains(r.add(x, y)));
            }
        }
        let s = i.semiprimality();
        prop_assert!(s.powers_agree);
        let square_test = r.elements().all(|a| !i.contains(r.mul(a, a)) || i.contains(a));
        prop_assert_eq!(s.semiprime, square_test);
    }

    #[test]
    fn nilradical_is_intersection_of_primes(ri in 0usize..64) {
        let r = ring_from(&small_pool(32), ri);
        let primes: Vec<Ideal> = enumerate_ideals(&r).unwrap().into_iter().filter(|i| i.semiprimality().prime && !i.is_whole()).collect();
        prop_assert!(!primes.is_empty());
        let meet = primes.iter().skip(1).fold(primes[0].clone(), |acc, p| acc.intersection(p));
        let nil = nilradical(&r);
        prop_assert_eq!(meet.elements(), nil.elements());
        let brute: Vec<Elem> = r.elements().filter(|&x| r.pow(x, r.order() as u64) == r.zero()).collect();
        prop_assert_eq!(nil.elements(), &brute[..]);
    }

    #[test]
    fn hom_from_cyclic_is_annihilator(ri in 0usize..64, ii in 0usize..64, mi in 0usize..64) {
        let r = ring_from(&small_pool(16), ri);
        let ideals = enumerate_ideals(&r).unwrap();
        let ideal = &ideals[ii % ideals.len()];
        let family = module_family(&r).unwrap();
        let m = &family[mi % family.len()];
        let source = PresentedModule::cyclic_quotient(&r, ideal).unwrap();
        let homs = hom_set(&source, m).unwrap();
        let ann = ann_ideal(m, ideal);
        prop_assert_eq!(homs.len(), ann.len());
        let images: BTreeSet<ModElem> = homs.iter().map(|f| f.apply(source.generator(0))).collect();
        prop_assert_eq!(images.len(), homs.len());
        prop_assert_eq!(images, set(&ann));
        for f in &homs {
            prop_assert!(f.verify(&source, m));
        }
    }

    #[test]
    fn quotient_by_zero_is_isomorphic(ri in 0usize..64, mi in 0usize..64) {
        let r = ring_from(&small_pool(16), ri);
        let family = module_family(&r).unwrap();
        let m = &family[mi % family.len()];
        let q = m.quotient(&Submodule::zero(m)).unwrap();
        prop_assert_eq!(q.size(), m.size());
        let proj: BTreeSet<ModElem> = m.elements().map(|x| m.project(&q, x)).collect();
        prop_assert_eq!(proj.len(), m.size());
        for x in m.elements() {
            for s in r.elements() {
                prop_assert_eq!(m.project(&q, m.smul(s, x)), q.smul(s, m.project(&q, x)));
            }
        }
    }

    #[test]
    fn gamma_matches_brute_force(ri in 0usize..64, mi in 0usize..64, ai in 0usize..4096, t in 1u32..4) {
        let r = ring_from(&small_pool(32), ri);
        let family = module_family(&r).unwrap();
        let m = &family[mi % family.len()];
        let a = pick(&r, ai);
        let g = gamma(m, a);
        let brute = gamma_brute(m, a);
        prop_assert_eq!(set(&g.submodule), brute.clone());
        let at = r.pow(a, t as u64);
        let gln_brute: BTreeSet<ModElem> = brute.iter().map(|&x| m.smul(at, x)).collect();
        prop_assert_eq!(set(&gln(m, a, t)), gln_brute);
        prop_assert!(gln(m, a, t + 1).is_subset(&gln(m, a, t)));
        prop_assert!(gln(m, a, t).is_subset(&gln(m, a, 1)));
        prop_assert!(verify_equivalences(m, a, t).unwrap().consistent);
    }

    #[test]
    fn implication_square(ri in 0usize..64, mi in 0usize..64, ai in 0usize..4096, t in 1u32..4) {
        let r = ring_from(&small_pool(16), ri);
        let family = module_family(&r).unwrap();
        let m = &family[mi % family.len()];
        let a = pick(&r, ai);
        let reduced = is_reduced(m).reduced;
        let eps_t = is_eps_reduced(m, t).reduced;
        let eps_next = is_eps_reduced(m, t + 1).reduced;
        let at = is_at_reduced(m, a, t).reduced;
        let at_next = is_at_reduced(m, a, t + 1).reduced;
        prop_assert!(!reduced || eps_t);
        prop_assert!(!eps_t || eps_next);
        prop_assert!(!eps_t || at);
        prop_assert!(!at || at_next);
        prop_assert_eq!(reduced, is_eps_reduced(m, 1).reduced);
    }

    #[test]
    fn regularity_properties(ri in 0usize..64, t in 1u32..5) {
        let r = ring_from(&pool(), ri);
        let c = is_t_regular(&r, t);
        prop_assert!(c.forms_agree());
        prop_assert!(c.verify(&r));
        prop_assert_eq!(c.is_regular(), is_t_regular_by_definition(&r, t));
        if c.is_regular() {
            prop_assert!(is_t_regular(&r, t + 1).is_regular());
            prop_assert!(is_eps_reduced(&regular(&r), t).reduced);
        }
    }

    #[test]
    fn regularity_passes_to_quotients(ri in 0usize..64, t in 1u32..4) {
        let r = ring_from(&small_pool(32), ri);
        prop_assume!(is_t_regular(&r, t).is_regular());
        for i in enumerate_ideals(&r).unwrap() {
            let q = i.quotient_ring().unwrap();
            prop_assert!(is_t_regular(&q, t).is_regular(), "{} / {:?}", r, i.elements());
        }
    }

    #[test]
    fn localization_at_one_is_identity(ri in 0usize..64, mi in 0usize..64) {
        let r = ring_from(&small_pool(16), ri);
        let s = MultSet::closure(&r, &[r.one()]).unwrap();
        let local = localize(&r, &s).unwrap();
        prop_assert_eq!(local.ring.order(), r.order());
        let image: BTreeSet<Elem> = r.elements().map(|x| local.canonical.apply(x)).collect();
        prop_assert_eq!(image.len(), r.order());
        let family = module_family(&r).unwrap();
        let m = &family[mi % family.len()];
        let lm = localize_module(m, &local).unwrap();
        prop_assert_eq!(lm.size(), m.size());
        let image: BTreeSet<ModElem> = m.elements().map(|x| lm.canonical(x)).collect();
        prop_assert_eq!(image.len(), m.size());
    }

    #[test]
    fn canonical_map_is_a_homomorphism(ri in 0usize..64, gi in 0usize..4096) {
        let r = ring_from(&small_pool(16), ri);
        let s = MultSet::closure(&r, &[pick(&r, gi)]).unwrap();
        let local = localize(&r, &s).unwrap();
        let (f, lr) = (&local.canonical, &local.ring);
        prop_assert_eq!(f.apply(r.one()), lr.one());
        for x in r.elements() {
            for y in r.elements() {
                prop_assert_eq!(f.apply(r.add(x, y)), lr.add(f.apply(x), f.apply(y)));
                prop_assert_eq!(f.apply(r.mul(x, y)), lr.mul(f.apply(x), f.apply(y)));
            }
        }
        for &u in s.elements() {
            prop_assert!(lr.is_unit(f.apply(u)));
        }
    }

    #[test]
    fn scalar_restriction_implications(ri in 0usize..64, mi in 0usize..64, t in 1u32..3) {
        let targets = small_pool(16);
        let r = ring_from(&targets, ri);
        let family = module_family(&r).unwrap();
        let m = &family[mi % family.len()];
        let mut homs = vec![RingHom::identity(&r)];
        for i in enumerate_ideals(&r).unwrap() {
            let q = i.quotient_ring().unwrap();
            homs.push(RingHom::from_table(&r, &q, i.projection()).unwrap());
        }
        for base in [12u64, 16, 24, 32] {
            let z = FiniteRing::zn(base).unwrap();
            if let Ok(h) = RingHom::from_integers(&z, &r) {
                homs.push(h);
            }
        }
        for h in homs.iter().filter(|h| h.target() == &r) {
            let a = scalar_audit(h, m, t).unwrap();
            prop_assert!(a.first);
            prop_assert!(a.second.unwrap_or(true));
        }
    }

    #[test]
    fn poly_identity(ri in 0usize..64, ai in 0usize..4096, t in 1u32..3, d in 0u32..3) {
        let r = ring_from(&small_pool(16), ri);
        prop_assume!((r.order() as u128).pow(d + 1) <= 20_000);
        let a = pick(&r, ai);
        let c = poly_gln_check(&r, a, t, d).unwrap();
        prop_assert!(c.equal && c.reduced_agree, "{:?}", c);
        let per_coeff = gln(&regular(&r), a, t).len();
        prop_assert_eq!(c.rhs, per_coeff.pow(d + 1));
    }
}

//! The default instance catalog: rings, and per ring a fixed family of
//! modules.

use crate::error::Result;
use crate::ideal::enumerate_ideals;
use crate::module::PresentedModule;
use crate::ring::{Elem, FiniteRing, RingSpec};

pub const DEFAULT_MIN_N: u64 = 2;
pub const DEFAULT_MAX_N: u64 = 32;

/// `Z_n` for `2 ≤ n ≤ 32`, then the fixed polynomial quotients and
/// products.
pub fn default_ring_specs() -> Vec<RingSpec> {
    let mut specs: Vec<RingSpec> = (DEFAULT_MIN_N..=DEFAULT_MAX_N).map(RingSpec::zn).collect();
    specs.push(RingSpec::quotient(2, &[0, 0, 1]));
    specs.push(RingSpec::quotient(2, &[1, 1, 1]));
    specs.push(RingSpec::quotient(4, &[0, 0, 1]));
    specs.push(RingSpec::quotient(3, &[1, 0, 1]));
    specs.push(RingSpec::product(&[RingSpec::zn(2), RingSpec::zn(3)]));
    specs.push(RingSpec::product(&[RingSpec::zn(4), RingSpec::zn(2)]));
    specs
}

/// Every cyclic module `R/I` (the regular module first), then `R^2` and
/// `R^2/<(z,z)>` for the least nonzero nonunit `z`, when within budget.
pub fn module_family(ring: &FiniteRing) -> Result<Vec<PresentedModule>> {
    let mut out = Vec::new();
    for ideal in enumerate_ideals(ring)? {
        out.push(PresentedModule::cyclic_quotient(ring, &ideal)?);
    }
    if (ring.order() as u128).pow(2) <= ring.max_elems() as u128 {
        out.push(PresentedModule::free(ring, 2)?);
        if let Some(z) = least_nonunit(ring) {
            out.push(PresentedModule::new(ring, 2, vec![vec![z, z]])?);
        }
    }
    Ok(out)
}

/// The cyclic members of [`module_family`] only.
pub fn cyclic_modules(ring: &FiniteRing) -> Result<Vec<PresentedModule>> {
    enumerate_ideals(ring)?
        .iter()
        .map(|i| PresentedModule::cyclic_quotient(ring, i))
        .collect()
}

#[derive(Clone, Debug)]
pub struct CatalogRing {
    pub spec: RingSpec,
    pub ring: FiniteRing,
    pub modules: Vec<PresentedModule>,
}

#[derive(Clone, Debug)]
pub struct Catalog {
    pub rings: Vec<CatalogRing>,
}

impl Catalog {
    /// The default catalog restricted to rings of order `≤ max_order`.
    pub fn build(max_order: usize, max_elems: usize) -> Result<Self> {
        Self::from_specs(&default_ring_specs(), max_order, max_elems)
    }

    pub fn from_specs(specs: &[RingSpec], max_order: usize, max_elems: usize) -> Result<Self> {
        let mut rings = Vec::new();
        for spec in specs {
            if spec_order(spec) > max_order as u128 {
                continue;
            }
            let ring = FiniteRing::with_budget(spec, max_elems)?;
            let modules = module_family(&ring)?;
            rings.push(CatalogRing {
                spec: spec.clone(),
                ring,
                modules,
            });
        }
        Ok(Catalog { rings })
    }

    pub fn ring(&self, label: &str) -> Option<&CatalogRing> {
        self.rings.iter().find(|r| r.ring.label() == label)
    }
}

fn spec_order(spec: &RingSpec) -> u128 {
    spec.components
        .iter()
        .map(|c| (c.modulus as u128).saturating_pow((c.monic_poly.len().max(2) - 1) as u32))
        .product()
}

/// Least nonzero nonunit, used to build the non-free rank-2 member.
pub fn least_nonunit(ring: &FiniteRing) -> Option<Elem> {
    ring.elements().find(|&z| z != ring.zero() && !ring.is_unit(z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::DEFAULT_MAX_ELEMS;

    #[test]
    fn default_catalog_shape() {
        let c = Catalog::build(usize::MAX, DEFAULT_MAX_ELEMS).unwrap();
        assert_eq!(c.rings.len(), 37);
        let z8 = c.ring("Z_8").unwrap();
        let labels: Vec<&str> = z8.modules.iter().map(|m| m.label()).collect();
        assert_eq!(labels, vec!["R", "R/(4)", "R/(2)", "R/(1)", "R^2", "R^2/<(2,2)>"]);
        assert!(c.ring("Z_2 x Z_3").is_some());
        let small = Catalog::build(8, DEFAULT_MAX_ELEMS).unwrap();
        assert!(small.rings.iter().all(|r| r.ring.order() <= 8));
        assert_eq!(small.rings.len(), 7 + 2 + 2);
    }
}

//! Ideals as explicitly enumerated, generator-tagged subsets.

use std::collections::HashSet;

use crate::error::{budget_check, Error, Result};
use crate::ring::{Elem, FiniteRing};

#[derive(Clone, Debug)]
pub struct Ideal {
    ring: FiniteRing,
    generators: Vec<Elem>,
    elements: Vec<Elem>,
    mask: Vec<bool>,
}

/// Equality is set equality of the enumerated elements.
impl PartialEq for Ideal {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.elements == other.elements
    }
}

impl Eq for Ideal {}

/// The span `{Σ r_i g_i}` as a membership mask.
fn span(ring: &FiniteRing, gens: &[Elem]) -> Vec<bool> {
    let mut mask = vec![false; ring.order()];
    mask[0] = true;
    let mut current = vec![ring.zero()];
    for &g in gens {
        if mask[g.index()] {
            continue;
        }
        let multiples: Vec<Elem> = {
            let mut seen = vec![false; ring.order()];
            ring.elements()
                .map(|r| ring.mul(r, g))
                .filter(|x| !std::mem::replace(&mut seen[x.index()], true))
                .collect()
        };
        let mut next = current.clone();
        for &x in &current {
            for &m in &multiples {
                let s = ring.add(x, m);
                if !mask[s.index()] {
                    mask[s.index()] = true;
                    next.push(s);
                }
            }
        }
        current = next;
    }
    mask
}

fn elements_of(mask: &[bool]) -> Vec<Elem> {
    mask.iter()
        .enumerate()
        .filter(|(_, &m)| m)
        .map(|(i, _)| Elem(i as u32))
        .collect()
}

impl Ideal {
    /// The ideal generated by `gens`.
    pub fn generate(ring: &FiniteRing, gens: &[Elem]) -> Result<Self> {
        if let Some(g) = gens.iter().find(|g| !ring.contains(**g)) {
            return Err(Error::RingMismatch(format!("{g:?} is not an element of {ring}")));
        }
        let mask = span(ring, gens);
        Ok(Ideal {
            ring: ring.clone(),
            generators: gens.to_vec(),
            elements: elements_of(&mask),
            mask,
        })
    }

    /// Wrap a set already known to be an ideal, choosing generators
    /// greedily in enumeration order.
    pub(crate) fn from_mask(ring: &FiniteRing, mask: Vec<bool>) -> Self {
        let mut generators = Vec::new();
        let mut covered = span(ring, &[]);
        for x in elements_of(&mask) {
            if !covered[x.index()] {
                generators.push(x);
                covered = span(ring, &generators);
            }
        }
        debug_assert_eq!(covered, mask, "set is not an ideal");
        Ideal {
            ring: ring.clone(),
            generators,
            elements: elements_of(&mask),
            mask,
        }
    }

    pub fn zero(ring: &FiniteRing) -> Self {
        Self::generate(ring, &[]).expect("empty generator list")
    }

    pub fn whole(ring: &FiniteRing) -> Self {
        Self::generate(ring, &[ring.one()]).expect("1 is in the ring")
    }

    pub fn principal(ring: &FiniteRing, a: Elem) -> Result<Self> {
        Self::generate(ring, &[a])
    }

    /// `(0:b) = {r : rb = 0}`.
    pub fn annihilator(ring: &FiniteRing, b: Elem) -> Self {
        let mask = ring.elements().map(|r| ring.mul(r, b) == ring.zero()).collect();
        Self::from_mask(ring, mask)
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
        false
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.mask.get(x.index()).copied().unwrap_or(false)
    }

    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.elements.len() == self.ring.order()
    }

    pub fn is_subset(&self, other: &Ideal) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// `I^t`, generated by all `t`-fold products of generators.
    pub fn power(&self, t: u32) -> Self {
        assert!(t >= 1, "ideal powers start at 1");
        let mut gens: Vec<Elem> = self.generators.clone();
        for _ in 1..t {
            let mut next: Vec<Elem> = Vec::new();
            let mut seen = HashSet::new();
            for &p in &gens {
                for &g in &self.generators {
                    let q = self.ring.mul(p, g);
                    if seen.insert(q) {
                        next.push(q);
                    }
                }
            }
            gens = next;
        }
        gens.sort();
        Self::generate(&self.ring, &gens).expect("products stay in the ring")
    }

    pub fn sum(&self, other: &Ideal) -> Self {
        let mut mask = self.mask.clone();
        for &x in &self.elements {
            for &y in &other.elements {
                mask[self.ring.add(x, y).index()] = true;
            }
        }
        let mut generators = self.generators.clone();
        generators.extend(other.generators.iter().copied().filter(|g| !self.generators.contains(g)));
        Ideal {
            ring: self.ring.clone(),
            generators,
            elements: elements_of(&mask),
            mask,
        }
    }

    pub fn intersection(&self, other: &Ideal) -> Self {
        let mask = self.mask.iter().zip(&other.mask).map(|(&a, &b)| a && b).collect();
        Self::from_mask(&self.ring, mask)
    }

    pub fn semiprimality(&self) -> Semiprimality {
        let r = &self.ring;
        if self.is_whole() {
            return Semiprimality {
                semiprime: true,
                prime: false,
                powers_agree: true,
                witness: None,
            };
        }
        let square_violation = r
            .elements()
            .find(|&a| self.contains(r.mul(a, a)) && !self.contains(a));
        let power_violation = r.elements().find(|&a| {
            !self.contains(a) && {
                let mut p = a;
                (1..=r.order()).any(|_| {
                    p = r.mul(p, a);
                    self.contains(p)
                })
            }
        });
        let prime_violation = r.elements().find_map(|a| {
            if self.contains(a) {
                return None;
            }
            r.elements()
                .find(|&b| !self.contains(b) && self.contains(r.mul(a, b)))
                .map(|b| (a, b))
        });
        let witness = square_violation
            .map(SemiprimeWitness::Square)
            .or(prime_violation.map(|(a, b)| SemiprimeWitness::Product(a, b)));
        Semiprimality {
            semiprime: square_violation.is_none(),
            prime: prime_violation.is_none(),
            powers_agree: square_violation.is_none() == power_violation.is_none(),
            witness,
        }
    }

    /// The quotient ring `R/I`, materialized from coset tables.
    pub fn quotient_ring(&self) -> Result<FiniteRing> {
        let r = &self.ring;
        let n = r.order();
        let mut class = vec![u32::MAX; n];
        let mut reps = Vec::new();
        for x in r.elements() {
            if class[x.index()] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &i in &self.elements {
                class[r.add(x, i).index()] = id;
            }
        }
        let q = reps.len();
        let mut add = Vec::with_capacity(q * q);
        let mut mul = Vec::with_capacity(q * q);
        for &x in &reps {
            for &y in &reps {
                add.push(class[r.add(x, y).index()]);
                mul.push(class[r.mul(x, y).index()]);
            }
        }
        let gens: Vec<String> = self.generators.iter().map(|&g| r.literal(g).to_string()).collect();
        let label = format!("{}/({})", r.label(), gens.join(","));
        FiniteRing::from_tables(label, add, mul, r.max_elems())
    }

    /// Projection `R → R/I` matching the class numbering of
    /// [`Ideal::quotient_ring`].
    pub fn projection(&self) -> Vec<Elem> {
        let r = &self.ring;
        let mut class = vec![u32::MAX; r.order()];
        let mut next = 0;
        for x in r.elements() {
            if class[x.index()] != u32::MAX {
                continue;
            }
            for &i in &self.elements {
                class[r.add(x, i).index()] = next;
            }
            next += 1;
        }
        class.into_iter().map(Elem).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SemiprimeWitness {
    /// `a² ∈ I` but `a ∉ I`.
    Square(Elem),
    /// `ab ∈ I` with neither factor in `I`.
    Product(Elem, Elem),
}

#[derive(Clone, Debug)]
pub struct Semiprimality {
    pub semiprime: bool,
    pub prime: bool,
    /// The square test and the all-powers test gave the same verdict.
    pub powers_agree: bool,
    pub witness: Option<SemiprimeWitness>,
}

pub fn nilradical(ring: &FiniteRing) -> Ideal {
    let mask = ring.elements().map(|x| ring.is_nilpotent(x)).collect();
    Ideal::from_mask(ring, mask)
}

/// The full ideal lattice: principal ideals closed under pairwise sums.
/// Ordered by size, then by element list.
pub fn enumerate_ideals(ring: &FiniteRing) -> Result<Vec<Ideal>> {
    budget_check("ideal enumeration", ring.order() as u128, ring.max_elems())?;
    let mut seen: HashSet<Vec<Elem>> = HashSet::new();
    let mut ideals: Vec<Ideal> = Vec::new();
    for a in ring.elements() {
        let i = Ideal::principal(ring, a)?;
        if seen.insert(i.elements.clone()) {
            ideals.push(i);
        }
    }
    let mut frontier = 0;
    while frontier < ideals.len() {
        let end = ideals.len();
        let mut fresh = Vec::new();
        for i in frontier..end {
            for j in 0..end {
                if j >= frontier && j > i {
                    continue;
                }
                let s = ideals[i].sum(&ideals[j]);
                if seen.insert(s.elements.clone()) {
                    fresh.push(s);
                }
            }
        }
        frontier = end;
        ideals.extend(fresh);
    }
    ideals.sort_by(|a, b| (a.len(), &a.elements).cmp(&(b.len(), &b.elements)));
    Ok(ideals)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn els(v: &[u32]) -> Vec<Elem> {
        v.iter().map(|&x| Elem(x)).collect()
    }

    #[test]
    fn generate_examples() {
        let z8 = FiniteRing::zn(8).unwrap();
        assert_eq!(Ideal::generate(&z8, &[Elem(2)]).unwrap().elements(), els(&[0, 2, 4, 6]));
        assert!(Ideal::generate(&z8, &[]).unwrap().is_zero());
        let z12 = FiniteRing::zn(12).unwrap();
        assert_eq!(Ideal::generate(&z12, &[Elem(3)]).unwrap().elements(), els(&[0, 3, 6, 9]));
        assert!(matches!(Ideal::generate(&z8, &[Elem(8)]), Err(Error::RingMismatch(_))));
    }

    #[test]
    fn annihilator_examples() {
        let z8 = FiniteRing::zn(8).unwrap();
        assert_eq!(Ideal::annihilator(&z8, Elem(2)).elements(), els(&[0, 4]));
        assert!(Ideal::annihilator(&z8, Elem(1)).is_zero());
        let z12 = FiniteRing::zn(12).unwrap();
        assert_eq!(Ideal::annihilator(&z12, Elem(4)).elements(), els(&[0, 3, 6, 9]));
    }

    #[test]
    fn power_examples() {
        let z16 = FiniteRing::zn(16).unwrap();
        let i = Ideal::principal(&z16, Elem(2)).unwrap();
        assert_eq!(i.power(2).elements(), els(&[0, 4, 8, 12]));
        let z12 = FiniteRing::zn(12).unwrap();
        let i = Ideal::principal(&z12, Elem(3)).unwrap();
        assert_eq!(i.power(1), i);
        let z4 = FiniteRing::zn(4).unwrap();
        assert!(Ideal::principal(&z4, Elem(2)).unwrap().power(2).is_zero());
    }

    #[test]
    fn semiprimality_examples() {
        let z8 = FiniteRing::zn(8).unwrap();
        let s = Ideal::principal(&z8, Elem(4)).unwrap().semiprimality();
        assert!(!s.semiprime);
        assert_eq!(s.witness, Some(SemiprimeWitness::Square(Elem(2))));
        let z6 = FiniteRing::zn(6).unwrap();
        let s = Ideal::zero(&z6).semiprimality();
        assert!(s.semiprime && !s.prime);
        let f4 = FiniteRing::new(&RingSpec::quotient(2, &[1, 1, 1])).unwrap();
        let s = Ideal::zero(&f4).semiprimality();
        assert!(s.semiprime && s.prime);
        let s = Ideal::whole(&f4).semiprimality();
        assert!(s.semiprime && !s.prime);
    }

    #[test]
    fn nilradical_examples() {
        assert_eq!(nilradical(&FiniteRing::zn(8).unwrap()).elements(), els(&[0, 2, 4, 6]));
        assert!(nilradical(&FiniteRing::zn(6).unwrap()).is_zero());
        let f4 = FiniteRing::new(&RingSpec::quotient(2, &[1, 1, 1])).unwrap();
        assert!(nilradical(&f4).is_zero());
    }

    #[test]
    fn enumerate_examples() {
        let z8 = FiniteRing::zn(8).unwrap();
        let ideals = enumerate_ideals(&z8).unwrap();
        let sets: Vec<Vec<Elem>> = ideals.iter().map(|i| i.elements().to_vec()).collect();
        assert_eq!(
            sets,
            vec![els(&[0]), els(&[0, 4]), els(&[0, 2, 4, 6]), els(&[0, 1, 2, 3, 4, 5, 6, 7])]
        );
        assert_eq!(enumerate_ideals(&FiniteRing::zn(12).unwrap()).unwrap().len(), 6);
        let f4 = FiniteRing::new(&RingSpec::quotient(2, &[1, 1, 1])).unwrap();
        assert_eq!(enumerate_ideals(&f4).unwrap().len(), 2);
        // Z_2[x]/(x^2) x Z_2 is not principal everywhere; sums must appear.
        let r = FiniteRing::new(&RingSpec::product(&[RingSpec::quotient(2, &[0, 0, 1]), RingSpec::zn(2)])).unwrap();
        assert_eq!(enumerate_ideals(&r).unwrap().len(), 6);
    }

    #[test]
    fn quotient_ring_of_z12() {
        let z12 = FiniteRing::zn(12).unwrap();
        let q = Ideal::principal(&z12, Elem(3)).unwrap().quotient_ring().unwrap();
        assert_eq!(q.order(), 3);
        assert!(q.classify().is_field);
        let proj = Ideal::principal(&z12, Elem(3)).unwrap().projection();
        assert_eq!(proj[7], Elem(1));
    }
}

//! Finitely presented modules `R^g / K` with enumerated coset
//! representatives, submodules, and hom-set enumeration.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{budget_check, Error, Result};
use crate::ideal::Ideal;
use crate::ring::{Elem, FiniteRing, RingSpec};

/// Largest presentation rank accepted by [`hom_set`].
pub const MAX_HOM_RANK: usize = 3;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModElem(pub u32);

impl ModElem {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// A finite module over a finite ring with enumerated elements
/// `0..size`. Element 0 is always the zero of the module.
pub trait RModule {
    fn ring(&self) -> &FiniteRing;
    fn size(&self) -> usize;
    fn add(&self, x: ModElem, y: ModElem) -> ModElem;
    fn neg(&self, x: ModElem) -> ModElem;
    fn smul(&self, r: Elem, x: ModElem) -> ModElem;
    fn literal(&self, x: ModElem) -> Value;

    fn zero(&self) -> ModElem {
        ModElem(0)
    }

    fn elements(&self) -> std::iter::Map<std::ops::Range<u32>, fn(u32) -> ModElem> {
        (0..self.size() as u32).map(ModElem as fn(u32) -> ModElem)
    }
}

/// A submodule, stored as a sorted element list plus a membership mask
/// over the parent's elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    elements: Vec<ModElem>,
    mask: Vec<bool>,
}

fn module_span<M: RModule + ?Sized>(m: &M, gens: &[ModElem]) -> Vec<bool> {
    let ring = m.ring();
    let mut mask = vec![false; m.size()];
    mask[0] = true;
    let mut current = vec![m.zero()];
    for &g in gens {
        if mask[g.index()] {
            continue;
        }
        let mut seen = vec![false; m.size()];
        let multiples: Vec<ModElem> = ring
            .elements()
            .map(|r| m.smul(r, g))
            .filter(|x| !std::mem::replace(&mut seen[x.index()], true))
            .collect();
        let mut next = current.clone();
        for &x in &current {
            for &y in &multiples {
                let s = m.add(x, y);
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

impl Submodule {
    /// Smallest submodule containing `gens`.
    pub fn generate<M: RModule + ?Sized>(m: &M, gens: &[ModElem]) -> Self {
        Self::from_mask(module_span(m, gens))
    }

    pub fn zero<M: RModule + ?Sized>(m: &M) -> Self {
        Self::generate(m, &[])
    }

    pub fn whole<M: RModule + ?Sized>(m: &M) -> Self {
        Self::from_mask(vec![true; m.size()])
    }

    /// Trusted constructor: `mask` must already be a submodule.
    pub(crate) fn from_mask(mask: Vec<bool>) -> Self {
        let elements = mask
            .iter()
            .enumerate()
            .filter(|(_, &b)| b)
            .map(|(i, _)| ModElem(i as u32))
            .collect();
        Submodule { elements, mask }
    }

    /// Checked constructor from an explicit element set.
    pub fn from_elements<M: RModule + ?Sized>(m: &M, elements: &[ModElem]) -> Result<Self> {
        let mut mask = vec![false; m.size()];
        for &x in elements {
            let slot = mask
                .get_mut(x.index())
                .ok_or_else(|| Error::NotASubmodule(format!("{x:?} is not an element")))?;
            *slot = true;
        }
        let sub = Self::from_mask(mask);
        if !sub.contains(m.zero()) {
            return Err(Error::NotASubmodule("missing zero".into()));
        }
        for &x in &sub.elements {
            for &y in &sub.elements {
                if !sub.contains(m.add(x, y)) {
                    return Err(Error::NotASubmodule("not closed under addition".into()));
                }
            }
            if m.ring().elements().any(|r| !sub.contains(m.smul(r, x))) {
                return Err(Error::NotASubmodule("not closed under scalars".into()));
            }
        }
        Ok(sub)
    }

    pub fn elements(&self) -> &[ModElem] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn parent_size(&self) -> usize {
        self.mask.len()
    }

    pub fn contains(&self, x: ModElem) -> bool {
        self.mask.get(x.index()).copied().unwrap_or(false)
    }

    pub fn is_zero(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subset(&self, other: &Submodule) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Submodule) -> Submodule {
        Self::from_mask(self.mask.iter().zip(&other.mask).map(|(&a, &b)| a && b).collect())
    }

    pub fn sum<M: RModule + ?Sized>(&self, m: &M, other: &Submodule) -> Submodule {
        let mut mask = self.mask.clone();
        for &x in &self.elements {
            for &y in &other.elements {
                mask[m.add(x, y).index()] = true;
            }
        }
        Self::from_mask(mask)
    }

    /// Generators chosen greedily in element order.
    pub fn generators<M: RModule + ?Sized>(&self, m: &M) -> Vec<ModElem> {
        let mut gens = Vec::new();
        let mut covered = module_span(m, &[]);
        for &x in &self.elements {
            if !covered[x.index()] {
                gens.push(x);
                covered = module_span(m, &gens);
            }
        }
        gens
    }

    pub fn literal<M: RModule + ?Sized>(&self, m: &M) -> Value {
        Value::Array(self.elements.iter().map(|&x| m.literal(x)).collect())
    }
}

/// A ring-less presentation: rank and relation vectors as JSON literals.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Presentation {
    #[serde(default = "default_rank")]
    pub rank: usize,
    #[serde(default)]
    pub relations: Vec<Vec<Value>>,
}

fn default_rank() -> usize {
    1
}

/// Module spec file: `{"ring": <ring spec>, "rank": g, "relations": [...]}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModuleSpec {
    pub ring: RingSpec,
    #[serde(flatten)]
    pub presentation: Presentation,
}

/// `R^g / K` with `K` the span of the relation vectors. Each element is
/// the lexicographically least vector of its coset.
#[derive(Clone, Debug)]
pub struct PresentedModule {
    ring: FiniteRing,
    rank: usize,
    relations: Vec<Vec<Elem>>,
    label: String,
    size: usize,
    kernel_size: usize,
    /// `size * rank` flattened representatives.
    reps: Vec<Elem>,
    /// Ambient vector index → element.
    coset_of: Vec<u32>,
    /// `|R|^(rank-1-i)` for slot `i`.
    weights: Vec<usize>,
}

impl PresentedModule {
    pub fn new(ring: &FiniteRing, rank: usize, relations: Vec<Vec<Elem>>) -> Result<Self> {
        let label = if relations.is_empty() {
            free_label(rank)
        } else {
            let rels: Vec<String> = relations
                .iter()
                .map(|v| {
                    let parts: Vec<String> = v.iter().map(|&x| ring.literal(x).to_string()).collect();
                    format!("({})", parts.join(","))
                })
                .collect();
            format!("{}/<{}>", free_label(rank), rels.join(","))
        };
        Self::with_label(ring, rank, relations, label)
    }

    pub fn with_label(
        ring: &FiniteRing,
        rank: usize,
        relations: Vec<Vec<Elem>>,
        label: impl Into<String>,
    ) -> Result<Self> {
        let order = ring.order();
        let ambient = (order as u128).checked_pow(rank as u32).unwrap_or(u128::MAX);
        budget_check("module presentation", ambient, ring.max_elems())?;
        let ambient = ambient as usize;
        for v in &relations {
            if v.len() != rank || v.iter().any(|&x| !ring.contains(x)) {
                return Err(Error::RingMismatch(format!(
                    "relation {v:?} is not a vector in {}^{rank}",
                    ring.label()
                )));
            }
        }
        let weights: Vec<usize> = (0..rank).map(|i| order.pow((rank - 1 - i) as u32)).collect();
        let decode = |mut idx: usize, out: &mut [Elem]| {
            for (slot, &w) in out.iter_mut().zip(&weights) {
                *slot = Elem((idx / w) as u32);
                idx %= w;
            }
        };
        let encode_sum = |a: &[Elem], b: &[Elem]| -> usize {
            a.iter()
                .zip(b)
                .zip(&weights)
                .map(|((&x, &y), &w)| ring.add(x, y).index() * w)
                .sum()
        };

        // K = span of relation vectors, as ambient indices.
        let mut in_kernel = vec![false; ambient];
        in_kernel[0] = true;
        let mut kernel = vec![0usize];
        let mut buf = vec![Elem(0); rank];
        let mut buf2 = vec![Elem(0); rank];
        for rel in &relations {
            let mut seen = vec![false; ambient];
            let mut multiples = Vec::new();
            for r in ring.elements() {
                let idx: usize = rel
                    .iter()
                    .zip(&weights)
                    .map(|(&x, &w)| ring.mul(r, x).index() * w)
                    .sum();
                if !std::mem::replace(&mut seen[idx], true) {
                    multiples.push(idx);
                }
            }
            let mut next = kernel.clone();
            for &k in &kernel {
                decode(k, &mut buf);
                for &m in &multiples {
                    decode(m, &mut buf2);
                    let s = encode_sum(&buf, &buf2);
                    if !in_kernel[s] {
                        in_kernel[s] = true;
                        next.push(s);
                    }
                }
            }
            kernel = next;
        }
        let kernel_vecs: Vec<Vec<Elem>> = kernel
            .iter()
            .map(|&k| {
                let mut v = vec![Elem(0); rank];
                decode(k, &mut v);
                v
            })
            .collect();

        let mut coset_of = vec![u32::MAX; ambient];
        let mut reps = Vec::with_capacity(ambient / kernel.len() * rank);
        let mut size = 0u32;
        for amb in 0..ambient {
            if coset_of[amb] != u32::MAX {
                continue;
            }
            decode(amb, &mut buf);
            reps.extend_from_slice(&buf);
            for k in &kernel_vecs {
                coset_of[encode_sum(&buf, k)] = size;
            }
            size += 1;
        }
        Ok(PresentedModule {
            ring: ring.clone(),
            rank,
            relations,
            label: label.into(),
            size: size as usize,
            kernel_size: kernel.len(),
            reps,
            coset_of,
            weights,
        })
    }

    /// The free module `R^g`.
    pub fn free(ring: &FiniteRing, rank: usize) -> Result<Self> {
        Self::new(ring, rank, Vec::new())
    }

    /// `R/I` presented with one generator and the generators of `I` as
    /// relations.
    pub fn cyclic_quotient(ring: &FiniteRing, ideal: &Ideal) -> Result<Self> {
        if ideal.ring() != ring {
            return Err(Error::RingMismatch(format!(
                "ideal of {} used over {}",
                ideal.ring(),
                ring
            )));
        }
        let label = if ideal.is_zero() {
            "R".to_string()
        } else {
            let gens: Vec<String> = ideal.generators().iter().map(|&g| ring.literal(g).to_string()).collect();
            format!("R/({})", gens.join(","))
        };
        let rels = ideal.generators().iter().map(|&g| vec![g]).collect();
        Self::with_label(ring, 1, rels, label)
    }

    /// Build from a spec with literal relation entries.
    pub fn from_presentation(ring: &FiniteRing, p: &Presentation) -> Result<Self> {
        let mut rels = Vec::with_capacity(p.relations.len());
        for v in &p.relations {
            let row: Result<Vec<Elem>> = v.iter().map(|x| ring.parse_literal(x)).collect();
            rels.push(row?);
        }
        Self::new(ring, p.rank, rels)
    }

    pub fn from_spec(spec: &ModuleSpec, max_elems: usize) -> Result<Self> {
        let ring = FiniteRing::with_budget(&spec.ring, max_elems)?;
        Self::from_presentation(&ring, &spec.presentation)
    }

    pub fn presentation(&self) -> Presentation {
        Presentation {
            rank: self.rank,
            relations: self
                .relations
                .iter()
                .map(|v| v.iter().map(|&x| self.ring.literal(x)).collect())
                .collect(),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn relations(&self) -> &[Vec<Elem>] {
        &self.relations
    }

    /// `|K|`, the size of the relation submodule of `R^g`.
    pub fn kernel_size(&self) -> usize {
        self.kernel_size
    }

    /// `true` when no relation is nonzero, i.e. the module is free.
    pub fn is_free(&self) -> bool {
        self.kernel_size == 1
    }

    /// Canonical representative vector of an element.
    pub fn vector(&self, x: ModElem) -> &[Elem] {
        &self.reps[x.index() * self.rank..(x.index() + 1) * self.rank]
    }

    /// The element whose coset contains `v`.
    pub fn element_of(&self, v: &[Elem]) -> Result<ModElem> {
        if v.len() != self.rank || v.iter().any(|&x| !self.ring.contains(x)) {
            return Err(Error::RingMismatch(format!("{v:?} is not a vector of {}", self.label)));
        }
        let idx: usize = v.iter().zip(&self.weights).map(|(&x, &w)| x.index() * w).sum();
        Ok(ModElem(self.coset_of[idx]))
    }

    pub fn parse_element(&self, v: &Value) -> Result<ModElem> {
        let bad = || Error::RingMismatch(format!("bad module element literal {v}"));
        let parts = match v {
            Value::Array(parts) if self.rank != 1 || parts.first().is_some_and(|p| !p.is_array()) || parts.len() == 1 => parts.clone(),
            Value::Number(_) if self.rank == 1 => vec![v.clone()],
            _ => return Err(bad()),
        };
        let vec: Result<Vec<Elem>> = parts.iter().map(|x| self.ring.parse_literal(x)).collect();
        self.element_of(&vec?)
    }

    /// The image of the `i`-th standard basis vector.
    pub fn generator(&self, i: usize) -> ModElem {
        let mut v = vec![self.ring.zero(); self.rank];
        v[i] = self.ring.one();
        self.element_of(&v).expect("basis vector is in range")
    }

    /// `M/N`, presented with the relations of `M` plus generators of `N`.
    pub fn quotient(&self, n: &Submodule) -> Result<PresentedModule> {
        if n.parent_size() != self.size {
            return Err(Error::NotASubmodule(format!(
                "submodule of a module of size {} used in {}",
                n.parent_size(),
                self.label
            )));
        }
        let mut rels = self.relations.clone();
        for g in n.generators(self) {
            rels.push(self.vector(g).to_vec());
        }
        let label = format!("{}/N", self.label);
        Self::with_label(&self.ring, self.rank, rels, label)
    }

    /// Projection `M → M/N` for a quotient built by [`Self::quotient`].
    pub fn project(&self, quotient: &PresentedModule, x: ModElem) -> ModElem {
        quotient.element_of(self.vector(x)).expect("quotient shares the ambient free module")
    }
}

impl PartialEq for PresentedModule {
    fn eq(&self, other: &Self) -> bool {
        self.ring == other.ring && self.rank == other.rank && self.relations == other.relations
    }
}

impl Eq for PresentedModule {}

fn free_label(rank: usize) -> String {
    match rank {
        1 => "R".into(),
        _ => format!("R^{rank}"),
    }
}

impl RModule for PresentedModule {
    fn ring(&self) -> &FiniteRing {
        &self.ring
    }

    fn size(&self) -> usize {
        self.size
    }

    #[inline]
    fn add(&self, x: ModElem, y: ModElem) -> ModElem {
        let (a, b) = (self.vector(x), self.vector(y));
        let mut idx = 0;
        for i in 0..self.rank {
            idx += self.ring.add(a[i], b[i]).index() * self.weights[i];
        }
        ModElem(self.coset_of[idx])
    }

    fn neg(&self, x: ModElem) -> ModElem {
        let a = self.vector(x);
        let idx: usize = a
            .iter()
            .zip(&self.weights)
            .map(|(&v, &w)| self.ring.neg(v).index() * w)
            .sum();
        ModElem(self.coset_of[idx])
    }

    #[inline]
    fn smul(&self, r: Elem, x: ModElem) -> ModElem {
        let a = self.vector(x);
        let idx: usize = a
            .iter()
            .zip(&self.weights)
            .map(|(&c, &w)| self.ring.mul(r, c).index() * w)
            .sum();
        ModElem(self.coset_of[idx])
    }

    fn literal(&self, x: ModElem) -> Value {
        Value::Array(self.vector(x).iter().map(|&v| self.ring.literal(v)).collect())
    }
}

/// `M_1 ⊕ … ⊕ M_n`, presented blockwise.
pub fn direct_sum(parts: &[&PresentedModule]) -> Result<PresentedModule> {
    let first = parts
        .first()
        .ok_or_else(|| Error::BadConfig("direct sum of an empty family".into()))?;
    let ring = &first.ring;
    if let Some(p) = parts.iter().find(|p| &p.ring != ring) {
        return Err(Error::RingMismatch(format!("{} is over {}, not {}", p.label, p.ring, ring)));
    }
    if parts.len() == 1 {
        return Ok((*first).clone());
    }
    let rank: usize = parts.iter().map(|p| p.rank).sum();
    let mut rels = Vec::new();
    let mut offset = 0;
    for p in parts {
        for r in &p.relations {
            let mut v = vec![ring.zero(); rank];
            v[offset..offset + p.rank].copy_from_slice(r);
            rels.push(v);
        }
        offset += p.rank;
    }
    let label = parts.iter().map(|p| p.label.as_str()).collect::<Vec<_>>().join(" (+) ");
    PresentedModule::with_label(ring, rank, rels, label)
}

/// A verified R-linear map given by its full table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleHom {
    images: Vec<ModElem>,
    table: Vec<ModElem>,
    target_size: usize,
}

impl ModuleHom {
    pub fn apply(&self, x: ModElem) -> ModElem {
        self.table[x.index()]
    }

    /// Images of the presentation generators.
    pub fn generator_images(&self) -> &[ModElem] {
        &self.images
    }

    pub fn table(&self) -> &[ModElem] {
        &self.table
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.target_size];
        self.table.iter().all(|y| !std::mem::replace(&mut seen[y.index()], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target_size];
        for y in &self.table {
            seen[y.index()] = true;
        }
        seen.iter().all(|&s| s)
    }

    pub fn is_bijective(&self) -> bool {
        self.table.len() == self.target_size && self.is_injective()
    }

    /// `f(N)` as a membership mask over the target.
    pub fn image(&self, n: &Submodule) -> Submodule {
        let mut mask = vec![false; self.target_size];
        for &x in n.elements() {
            mask[self.apply(x).index()] = true;
        }
        Submodule::from_mask(mask)
    }

    /// Exhaustive additivity and linearity check.
    pub fn verify<M: RModule + ?Sized, N: RModule + ?Sized>(&self, source: &M, target: &N) -> bool {
        let ring = source.ring();
        source.elements().all(|x| {
            source
                .elements()
                .all(|y| self.apply(source.add(x, y)) == target.add(self.apply(x), self.apply(y)))
                && ring.elements().all(|r| self.apply(source.smul(r, x)) == target.smul(r, self.apply(x)))
        })
    }
}

/// Generator-image tuples of all homs `M → N`, in lexicographic order of
/// the tuples.
pub fn hom_generator_images<N: RModule + ?Sized>(
    source: &PresentedModule,
    target: &N,
) -> Result<Vec<Vec<ModElem>>> {
    let g = source.rank;
    if g > MAX_HOM_RANK {
        return Err(Error::RankTooLarge { rank: g, max: MAX_HOM_RANK });
    }
    if &source.ring != target.ring() {
        return Err(Error::RingMismatch(format!(
            "hom from a module over {} into one over {}",
            source.ring,
            target.ring()
        )));
    }
    let n = target.size();
    let count = (n as u128).pow(g as u32);
    budget_check("hom enumeration", count, source.ring.max_elems())?;
    let mut out = Vec::new();
    let mut images = vec![target.zero(); g];
    for idx in 0..count as usize {
        let mut rest = idx;
        for slot in images.iter_mut().rev() {
            *slot = ModElem((rest % n) as u32);
            rest /= n;
        }
        let kills_relations = source.relations.iter().all(|rel| {
            let mut acc = target.zero();
            for (&r, &y) in rel.iter().zip(&images) {
                acc = target.add(acc, target.smul(r, y));
            }
            acc == target.zero()
        });
        if kills_relations {
            out.push(images.clone());
        }
    }
    Ok(out)
}

/// All R-linear maps `M → N`.
pub fn hom_set<N: RModule + ?Sized>(source: &PresentedModule, target: &N) -> Result<Vec<ModuleHom>> {
    let tuples = hom_generator_images(source, target)?;
    Ok(tuples
        .into_iter()
        .map(|images| {
            let table = source
                .elements()
                .map(|x| {
                    let v = source.vector(x);
                    let mut acc = target.zero();
                    for (&r, &y) in v.iter().zip(&images) {
                        acc = target.add(acc, target.smul(r, y));
                    }
                    acc
                })
                .collect();
            ModuleHom {
                images,
                table,
                target_size: target.size(),
            }
        })
        .collect())
}

/// Bijective endomorphisms of `M`.
pub fn automorphisms(m: &PresentedModule) -> Result<Vec<ModuleHom>> {
    Ok(hom_set(m, m)?.into_iter().filter(ModuleHom::is_bijective).collect())
}

/// `(0:_M a^k)`.
pub fn ann_element<M: RModule + ?Sized>(m: &M, a: Elem, k: u32) -> Submodule {
    let ak = m.ring().pow(a, k as u64);
    Submodule::from_mask(m.elements().map(|x| m.smul(ak, x) == m.zero()).collect())
}

/// `(0:_M I) = {m : xm = 0 for all x ∈ I}`.
pub fn ann_ideal<M: RModule + ?Sized>(m: &M, ideal: &Ideal) -> Submodule {
    Submodule::from_mask(
        m.elements()
            .map(|x| ideal.elements().iter().all(|&r| m.smul(r, x) == m.zero()))
            .collect(),
    )
}

/// `a^t M`.
pub fn scalar_image<M: RModule + ?Sized>(m: &M, a: Elem, t: u32) -> Submodule {
    let at = m.ring().pow(a, t as u64);
    let mut mask = vec![false; m.size()];
    for x in m.elements() {
        mask[m.smul(at, x).index()] = true;
    }
    Submodule::from_mask(mask)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Faithfulness {
    pub faithful: bool,
    /// Least nonzero scalar killing the whole module.
    pub witness: Option<Elem>,
}

pub fn is_faithful<M: RModule + ?Sized>(m: &M) -> Faithfulness {
    let ring = m.ring();
    let witness = ring
        .elements()
        .filter(|&a| a != ring.zero())
        .find(|&a| m.elements().all(|x| m.smul(a, x) == m.zero()));
    Faithfulness {
        faithful: witness.is_none(),
        witness,
    }
}

/// A submodule regarded as a module in its own right; element `i` of the
/// view is the `i`-th smallest element of the submodule.
pub struct SubmoduleView<'a, M: RModule + ?Sized> {
    parent: &'a M,
    sub: &'a Submodule,
    position: Vec<u32>,
}

impl<'a, M: RModule + ?Sized> SubmoduleView<'a, M> {
    pub fn new(parent: &'a M, sub: &'a Submodule) -> Self {
        let mut position = vec![u32::MAX; parent.size()];
        for (i, x) in sub.elements().iter().enumerate() {
            position[x.index()] = i as u32;
        }
        SubmoduleView { parent, sub, position }
    }

    pub fn to_parent(&self, x: ModElem) -> ModElem {
        self.sub.elements()[x.index()]
    }

    /// A submodule of the view, as a submodule of the parent.
    pub fn lift(&self, inner: &Submodule) -> Submodule {
        let mut mask = vec![false; self.parent.size()];
        for &x in inner.elements() {
            mask[self.to_parent(x).index()] = true;
        }
        Submodule::from_mask(mask)
    }

    fn inner(&self, x: ModElem) -> ModElem {
        let pos = self.position[x.index()];
        debug_assert_ne!(pos, u32::MAX, "submodule is not closed");
        ModElem(pos)
    }
}

impl<M: RModule + ?Sized> RModule for SubmoduleView<'_, M> {
    fn ring(&self) -> &FiniteRing {
        self.parent.ring()
    }

    fn size(&self) -> usize {
        self.sub.len()
    }

    fn add(&self, x: ModElem, y: ModElem) -> ModElem {
        self.inner(self.parent.add(self.to_parent(x), self.to_parent(y)))
    }

    fn neg(&self, x: ModElem) -> ModElem {
        self.inner(self.parent.neg(self.to_parent(x)))
    }

    fn smul(&self, r: Elem, x: ModElem) -> ModElem {
        self.inner(self.parent.smul(r, self.to_parent(x)))
    }

    fn literal(&self, x: ModElem) -> Value {
        self.parent.literal(self.to_parent(x))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> FiniteRing {
        FiniteRing::zn(n).unwrap()
    }

    fn set(m: &PresentedModule, v: &[u32]) -> Submodule {
        let els: Vec<ModElem> = v.iter().map(|&x| m.element_of(&[Elem(x)]).unwrap()).collect();
        Submodule::from_elements(m, &els).unwrap()
    }

    #[test]
    fn present_examples() {
        let z4 = z(4);
        let m = PresentedModule::new(&z4, 2, vec![vec![Elem(2), Elem(0)]]).unwrap();
        assert_eq!(m.size(), 8);
        assert_eq!(m.kernel_size(), 2);
        let z8 = z(8);
        assert_eq!(PresentedModule::free(&z8, 1).unwrap().size(), 8);
        let m = PresentedModule::new(&z8, 1, vec![vec![Elem(4)]]).unwrap();
        assert_eq!(m.size(), 4);
        // Canonical reps are the least coset members.
        let reps: Vec<&[Elem]> = m.elements().map(|x| m.vector(x)).collect();
        assert_eq!(reps, vec![&[Elem(0)][..], &[Elem(1)], &[Elem(2)], &[Elem(3)]]);
        assert_eq!(m.element_of(&[Elem(6)]).unwrap(), ModElem(2));
        assert!(PresentedModule::new(&z8, 1, vec![vec![Elem(1), Elem(1)]]).is_err());
    }

    #[test]
    fn rank_zero_is_the_zero_module() {
        let m = PresentedModule::free(&z(5), 0).unwrap();
        assert_eq!(m.size(), 1);
        assert!(is_faithful(&m).witness.is_some());
    }

    #[test]
    fn presentation_budget() {
        let r = z(32);
        assert!(matches!(
            PresentedModule::free(&r, 3),
            Err(Error::OrderBudgetExceeded { .. })
        ));
    }

    #[test]
    fn cyclic_quotient_examples() {
        let z8 = z(8);
        let q = PresentedModule::cyclic_quotient(&z8, &Ideal::principal(&z8, Elem(4)).unwrap()).unwrap();
        assert_eq!(q.size(), 4);
        let whole = PresentedModule::cyclic_quotient(&z8, &Ideal::zero(&z8)).unwrap();
        assert_eq!(whole.size(), 8);
        let z12 = z(12);
        let q = PresentedModule::cyclic_quotient(&z12, &Ideal::principal(&z12, Elem(3)).unwrap()).unwrap();
        assert_eq!(q.size(), 3);
        assert!(PresentedModule::cyclic_quotient(&z12, &Ideal::zero(&z8)).is_err());
    }

    #[test]
    fn submodule_examples() {
        let z8 = z(8);
        let m = PresentedModule::free(&z8, 1).unwrap();
        let two = m.element_of(&[Elem(2)]).unwrap();
        let four = m.element_of(&[Elem(4)]).unwrap();
        assert_eq!(Submodule::generate(&m, &[two]), set(&m, &[0, 2, 4, 6]));
        assert!(Submodule::generate(&m, &[]).is_zero());
        assert_eq!(Submodule::generate(&m, &[four]), set(&m, &[0, 4]));
        assert!(Submodule::from_elements(&m, &[ModElem(0), two]).is_err());
    }

    #[test]
    fn quotient_examples() {
        let z8 = z(8);
        let m = PresentedModule::free(&z8, 1).unwrap();
        assert_eq!(m.quotient(&set(&m, &[0, 4])).unwrap().size(), 4);
        assert_eq!(m.quotient(&Submodule::zero(&m)).unwrap().size(), 8);
        assert_eq!(m.quotient(&set(&m, &[0, 2, 4, 6])).unwrap().size(), 2);
        let other = PresentedModule::free(&z(4), 1).unwrap();
        assert!(matches!(
            m.quotient(&Submodule::zero(&other)),
            Err(Error::NotASubmodule(_))
        ));
    }

    #[test]
    fn annihilator_and_image_examples() {
        let z8 = z(8);
        let m = PresentedModule::free(&z8, 1).unwrap();
        assert_eq!(ann_element(&m, Elem(2), 2), set(&m, &[0, 2, 4, 6]));
        assert_eq!(ann_element(&m, Elem(2), 1), set(&m, &[0, 4]));
        assert!(ann_element(&m, Elem(1), 3).is_zero());
        let i2 = Ideal::principal(&z8, Elem(2)).unwrap().power(2);
        assert_eq!(ann_ideal(&m, &i2), ann_element(&m, Elem(2), 2));

        assert_eq!(scalar_image(&m, Elem(2), 2), set(&m, &[0, 4]));
        assert_eq!(scalar_image(&m, Elem(3), 2).len(), 8);
        let z16 = z(16);
        let m16 = PresentedModule::free(&z16, 1).unwrap();
        assert_eq!(scalar_image(&m16, Elem(2), 2), set(&m16, &[0, 4, 8, 12]));
    }

    #[test]
    fn direct_sum_examples() {
        let z8 = z(8);
        let q = PresentedModule::cyclic_quotient(&z8, &Ideal::principal(&z8, Elem(4)).unwrap()).unwrap();
        let r = PresentedModule::free(&z8, 1).unwrap();
        assert_eq!(direct_sum(&[&q, &r]).unwrap().size(), 32);
        assert_eq!(direct_sum(&[&q]).unwrap().size(), 4);
        let z2 = z(2);
        let f = PresentedModule::free(&z2, 1).unwrap();
        let s = direct_sum(&[&f, &f]).unwrap();
        assert_eq!(s.size(), 4);
        assert!(s.is_free());
        assert!(direct_sum(&[&q, &f]).is_err());
    }

    #[test]
    fn hom_set_examples() {
        let z4 = z(4);
        let src = PresentedModule::cyclic_quotient(&z4, &Ideal::principal(&z4, Elem(2)).unwrap()).unwrap();
        let dst = PresentedModule::free(&z4, 1).unwrap();
        let homs = hom_set(&src, &dst).unwrap();
        let one = src.generator(0);
        let images: Vec<ModElem> = homs.iter().map(|f| f.apply(one)).collect();
        assert_eq!(images, vec![dst.element_of(&[Elem(0)]).unwrap(), dst.element_of(&[Elem(2)]).unwrap()]);
        assert!(homs.iter().all(|f| f.verify(&src, &dst)));

        let zero = PresentedModule::cyclic_quotient(&z4, &Ideal::whole(&z4)).unwrap();
        assert_eq!(hom_set(&dst, &zero).unwrap().len(), 1);

        let z8 = z(8);
        let m = PresentedModule::free(&z8, 1).unwrap();
        let i = Ideal::principal(&z8, Elem(2)).unwrap();
        for k in 1..=4 {
            let src = PresentedModule::cyclic_quotient(&z8, &i.power(k)).unwrap();
            assert_eq!(hom_set(&src, &m).unwrap().len(), ann_ideal(&m, &i.power(k)).len());
        }
    }

    #[test]
    fn hom_rank_bound() {
        let z2 = z(2);
        let src = PresentedModule::free(&z2, 4).unwrap();
        assert!(matches!(hom_set(&src, &src), Err(Error::RankTooLarge { .. })));
    }

    #[test]
    fn automorphisms_of_z8() {
        let z8 = z(8);
        let m = PresentedModule::free(&z8, 1).unwrap();
        assert_eq!(automorphisms(&m).unwrap().len(), 4);
    }

    #[test]
    fn faithful_examples() {
        let z8 = z(8);
        assert!(is_faithful(&PresentedModule::free(&z8, 1).unwrap()).faithful);
        let q = PresentedModule::cyclic_quotient(&z8, &Ideal::principal(&z8, Elem(4)).unwrap()).unwrap();
        assert_eq!(is_faithful(&q).witness, Some(Elem(4)));
        let z2 = z(2);
        let zero = PresentedModule::cyclic_quotient(&z2, &Ideal::whole(&z2)).unwrap();
        assert_eq!(is_faithful(&zero).witness, Some(Elem(1)));
    }

    #[test]
    fn submodule_view_arithmetic() {
        let z8 = z(8);
        let m = PresentedModule::free(&z8, 1).unwrap();
        let n = set(&m, &[0, 2, 4, 6]);
        let view = SubmoduleView::new(&m, &n);
        assert_eq!(view.size(), 4);
        let two = ModElem(1);
        assert_eq!(view.to_parent(view.add(two, two)), m.element_of(&[Elem(4)]).unwrap());
        let inner = scalar_image(&view, Elem(2), 1);
        assert_eq!(view.lift(&inner), set(&m, &[0, 4]));
    }

    #[test]
    fn parse_module_literals() {
        let z4 = z(4);
        let m = PresentedModule::free(&z4, 2).unwrap();
        let x = m.parse_element(&serde_json::json!([1, 3])).unwrap();
        assert_eq!(m.vector(x), &[Elem(1), Elem(3)]);
        let c = PresentedModule::free(&z4, 1).unwrap();
        assert_eq!(c.parse_element(&serde_json::json!(3)).unwrap(), ModElem(3));
        assert_eq!(c.parse_element(&serde_json::json!([3])).unwrap(), ModElem(3));
    }
}

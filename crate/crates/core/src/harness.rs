//! Batch auditing over the catalog or a single instance, and
//! counterexample search.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::catalog::{cyclic_modules, Catalog, CatalogRing};
use crate::error::{Error, Result};
use crate::extensions::{localization_report, poly_report, scalar_report, MultSet};
use crate::ideal::enumerate_ideals;
use crate::module::{PresentedModule, Presentation, RModule};
use crate::regularity::{claim_audit, cyclic_characterization};
use crate::report::{
    flags, recheck_ring_witness, AuditReport, ClaimId, Expectation, Instance, Level, Status, Witness,
};
use crate::ring::{Elem, FiniteRing, RingHom, RingSpec};
use crate::torsion::{
    is_at_reduced, is_eps_reduced, is_reduced, stratify_audit, sum_audit, verify_equivalences, FunctorContext,
};

pub const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest polynomial degree used by the `poly` claim.
pub const POLY_DEGREE: u32 = 2;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MultSetSpec {
    pub generators: Vec<Value>,
}

/// Instance file: a ring spec, or a module spec, optionally with a
/// multiplicative set and direct-sum parts.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct InstanceSpec {
    pub ring: RingSpec,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<Presentation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mult_set: Option<MultSetSpec>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<Presentation>>,
}

impl InstanceSpec {
    pub fn from_json(v: &Value) -> Result<Self> {
        let bad = |e: serde_json::Error| Error::BadConfig(e.to_string());
        let obj = v
            .as_object()
            .ok_or_else(|| Error::BadConfig("instance spec must be a JSON object".into()))?;
        let mult_set = obj
            .get("mult_set")
            .map(|m| serde_json::from_value(m.clone()).map_err(bad))
            .transpose()?;
        let parts = obj
            .get("parts")
            .map(|m| serde_json::from_value(m.clone()).map_err(bad))
            .transpose()?;
        if obj.contains_key("components") {
            return Ok(InstanceSpec {
                ring: serde_json::from_value(v.clone()).map_err(bad)?,
                module: None,
                mult_set,
                parts,
            });
        }
        let ring = obj
            .get("ring")
            .ok_or_else(|| Error::BadConfig("instance spec needs \"components\" or \"ring\"".into()))?;
        let module = if obj.contains_key("rank") || obj.contains_key("relations") {
            Some(serde_json::from_value(v.clone()).map_err(bad)?)
        } else {
            None
        };
        Ok(InstanceSpec {
            ring: serde_json::from_value(ring.clone()).map_err(bad)?,
            module,
            mult_set,
            parts,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Target {
    Catalog {
        max_order: usize,
    },
    Instance {
        spec: InstanceSpec,
        #[serde(skip_serializing_if = "Option::is_none")]
        a: Option<Value>,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    pub claims: Vec<ClaimId>,
    pub t: u32,
    pub max_elems: usize,
    pub target: Target,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Skipped {
    pub claim: ClaimId,
    pub instance: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub holds: usize,
    pub fails: usize,
    pub hypothesis_not_met: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunReport {
    pub tool_version: String,
    pub config: RunConfig,
    pub entries: Vec<AuditReport>,
    pub skipped: Vec<Skipped>,
    pub summary: Summary,
    pub wall_time_ms: u64,
}

impl RunReport {
    /// Fails entries of claims expected to hold everywhere.
    pub fn unexpected_failures(&self) -> impl Iterator<Item = &AuditReport> {
        self.entries
            .iter()
            .filter(|e| e.status == Status::Fails && e.claim.expectation() == Expectation::Holds)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.unexpected_failures().next().is_some())
    }
}

fn summarize(entries: &[AuditReport]) -> Summary {
    let mut s = Summary::default();
    for e in entries {
        match e.status {
            Status::Holds => s.holds += 1,
            Status::Fails => s.fails += 1,
            Status::HypothesisNotMet => s.hypothesis_not_met += 1,
        }
    }
    s
}

/// Scalars the module-level claims range over.
#[derive(Clone, Copy, Debug)]
enum Scalars {
    All,
    One(Elem),
}

impl Scalars {
    fn list(self, ring: &FiniteRing) -> Vec<Elem> {
        match self {
            Scalars::All => ring.elements().collect(),
            Scalars::One(a) => vec![a],
        }
    }

    fn tag(self, ring: &FiniteRing, inst: Instance) -> Instance {
        match self {
            Scalars::All => inst,
            Scalars::One(a) => inst.scalar(ring.literal(a)),
        }
    }
}

/// Everything a claim may draw on for one ring.
struct Scope<'a> {
    entry: &'a CatalogRing,
    /// Modules audited by module-level claims.
    modules: &'a [PresentedModule],
    /// Whole family, used as hom partners.
    partners: &'a [PresentedModule],
    mult_sets: Option<Vec<MultSet>>,
    parts: Option<Vec<PresentedModule>>,
    /// A single user instance: its module is audited whatever the rank,
    /// and scalar restriction uses maps into this ring only.
    single: bool,
    catalog: Option<&'a Catalog>,
}

struct Collector {
    entries: Vec<AuditReport>,
    skipped: Vec<Skipped>,
}

impl Collector {
    fn push(&mut self, claim: ClaimId, instance: impl FnOnce() -> String, r: Result<AuditReport>) {
        match r {
            Ok(e) => self.entries.push(e),
            Err(err) => self.skipped.push(Skipped {
                claim,
                instance: instance(),
                reason: err.to_string(),
            }),
        }
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn stratify_entry(ring: &FiniteRing, t: u32) -> Result<AuditReport> {
    let s = stratify_audit(ring)?;
    let inst = Instance::ring(ring, t);
    let lits = |v: &[Elem]| Value::Array(v.iter().map(|&x| ring.literal(x)).collect()).to_string();
    let detail = format!("union {} ; nilradical {}", lits(&s.union), lits(&s.nilradical));
    let r = AuditReport::holds_if(ClaimId::Stratify, inst, s.equal, detail);
    Ok(match s.discrepancy {
        None => r,
        Some(x) => {
            // Independent check: x nilpotent, and x = a·r with a^k r = 0.
            let nil = (1..=ring.order() as u64).any(|k| ring.pow(x, k) == ring.zero());
            let stratum = ring.elements().any(|a| {
                ring.elements().any(|r| {
                    ring.mul(a, r) == x && (1..=ring.order() as u64).any(|k| ring.mul(ring.pow(a, k), r) == ring.zero())
                })
            });
            r.witness(Witness::Element {
                check: "stratify".into(),
                element: ring.literal(x),
            })
            .reverified(nil != stratum)
        }
    })
}

fn equivalences_entry(m: &PresentedModule, t: u32, scalars: Scalars) -> Result<AuditReport> {
    let ring = m.ring();
    let inst = scalars.tag(ring, Instance::module(ring, m.label(), t));
    let mut reduced = 0;
    let list = scalars.list(ring);
    let mut last = None;
    for &a in &list {
        let r = verify_equivalences(m, a, t)?;
        if !r.consistent {
            let c = &r.conditions;
            return Ok(AuditReport::new(
                ClaimId::Equivalences,
                inst.scalar(r.a.clone()),
                Status::Fails,
                "conditions disagree",
            )
            .witness(flags(&[
                ("definition", c.definition),
                ("gln_zero", c.gln_zero),
                ("ann_stabilizes", c.ann_stabilizes),
                ("hom_card_matches", c.hom_card_matches),
                ("hom_limit_matches", c.hom_limit_matches),
                ("gamma_equals_ann_t", c.gamma_equals_ann_t),
                ("sequence_exact", c.sequence_exact),
            ])));
        }
        reduced += r.conditions.definition as usize;
        last = Some(r);
    }
    let detail = match (scalars, last) {
        (Scalars::One(_), Some(r)) => format!(
            "consistent; conditions {}",
            serde_json::to_string(&r.conditions).expect("flags serialize")
        ),
        _ => format!("consistent for all {} scalars; a^t-reduced for {reduced}", list.len()),
    };
    Ok(AuditReport::new(ClaimId::Equivalences, inst, Status::Holds, detail))
}

fn inclusions_entry(m: &PresentedModule, t: u32, scalars: Scalars) -> Result<AuditReport> {
    let ring = m.ring();
    let inst = scalars.tag(ring, Instance::module(ring, m.label(), t));
    let reduced = is_reduced(m).reduced;
    let eps = is_eps_reduced(m, t).reduced;
    let mut broken = None;
    if reduced && !eps {
        broken = Some(("reduced implies eps^t-reduced", None));
    }
    for a in scalars.list(ring) {
        if broken.is_some() {
            break;
        }
        let a_red = is_at_reduced(m, a, 1).reduced;
        let at_red = is_at_reduced(m, a, t).reduced;
        if eps && !at_red {
            broken = Some(("eps^t-reduced implies a^t-reduced", Some(a)));
        } else if reduced && !a_red {
            broken = Some(("reduced implies a-reduced", Some(a)));
        } else if a_red && !at_red {
            broken = Some(("a-reduced implies a^t-reduced", Some(a)));
        }
    }
    let detail = format!("reduced: {}; eps^{t}-reduced: {}", yes(reduced), yes(eps));
    Ok(match broken {
        None => AuditReport::new(ClaimId::Inclusions, inst, Status::Holds, detail),
        Some((which, a)) => {
            let inst = match a {
                Some(a) => inst.scalar(ring.literal(a)),
                None => inst,
            };
            AuditReport::new(ClaimId::Inclusions, inst, Status::Fails, format!("{which} fails; {detail}"))
                .witness(Witness::Element {
                    check: which.into(),
                    element: a.map_or(Value::Null, |a| ring.literal(a)),
                })
        }
    })
}

fn functor_entry(m: &PresentedModule, partners: &[PresentedModule], t: u32, scalars: Scalars) -> Result<AuditReport> {
    let ring = m.ring();
    let inst = scalars.tag(ring, Instance::module(ring, m.label(), t));
    let ctx = FunctorContext::new(m, partners)?;
    let mut strict = 0usize;
    let mut example = None;
    let mut skipped: Vec<String> = Vec::new();
    let list = scalars.list(ring);
    for &a in &list {
        let audit = ctx.audit(a, t)?;
        for (name, check) in audit.checks() {
            match check {
                crate::torsion::Check::Fail { witness } => {
                    return Ok(AuditReport::new(
                        ClaimId::Functor,
                        inst.scalar(ring.literal(a)),
                        Status::Fails,
                        format!("{name} check fails"),
                    )
                    .witness(Witness::Element {
                        check: name.into(),
                        element: Value::String(witness.clone()),
                    }));
                }
                crate::torsion::Check::Skipped { reason } => {
                    let s = format!("{name}: {reason}");
                    if !skipped.contains(&s) {
                        skipped.push(s);
                    }
                }
                crate::torsion::Check::Pass => {}
            }
        }
        strict += audit.strict.len();
        if example.is_none() {
            example = audit.strict.first().map(|s| format!("a = {}: {s}", ring.literal(a)));
        }
    }
    let mut r = AuditReport::new(
        ClaimId::Functor,
        inst,
        Status::Holds,
        format!(
            "six checks pass for {} scalars over {} partners and {} submodules",
            list.len(),
            partners.len(),
            ctx.family_len()
        ),
    );
    if strict > 0 {
        r = r.note(format!(
            "{strict} strict factor containments (expected; the functor is not left exact), e.g. {}",
            example.expect("at least one")
        ));
    }
    if ctx.family_truncated() {
        r = r.note("submodule family truncated to its smallest members");
    }
    for s in skipped {
        r = r.note(format!("skipped {s}"));
    }
    Ok(r)
}

fn sum_entry(parts: &[&PresentedModule], t: u32, scalars: Scalars) -> Result<AuditReport> {
    let ring = parts[0].ring();
    let labels: Vec<&str> = parts.iter().map(|p| p.label()).collect();
    let inst = scalars.tag(ring, Instance::module(ring, &labels.join(" (+) "), t));
    let list = scalars.list(ring);
    for &a in &list {
        let s = sum_audit(parts, a, t)?;
        if !s.equal {
            let diff = s
                .sum
                .elements()
                .find(|&x| s.whole.contains(x) != s.blockwise.contains(x))
                .expect("sets differ");
            return Ok(AuditReport::new(
                ClaimId::Sum,
                inst.scalar(ring.literal(a)),
                Status::Fails,
                "gln of the sum differs from the sum of gln",
            )
            .witness(Witness::Element {
                check: "sum".into(),
                element: s.sum.literal(diff),
            }));
        }
    }
    Ok(AuditReport::new(
        ClaimId::Sum,
        inst,
        Status::Holds,
        format!("blockwise equality for {} scalars", list.len()),
    )
    .note("for a finite family the product containment coincides with this equality"))
}

fn characteristic(ring: &FiniteRing) -> u64 {
    (1..=ring.order() as u64)
        .find(|&k| ring.times(k, ring.one()) == ring.zero())
        .expect("finite characteristic")
}

/// Ring maps used by the scalar-restriction claim for modules over `ring`.
fn maps_into(ring: &FiniteRing, catalog: Option<&Catalog>) -> Result<Vec<RingHom>> {
    let c = characteristic(ring);
    let mut out = Vec::new();
    if !ring.is_plain_residue_ring() {
        out.push(RingHom::identity(ring));
    }
    let sources: Vec<FiniteRing> = match catalog {
        Some(cat) => cat
            .rings
            .iter()
            .filter(|r| r.ring.is_plain_residue_ring() && (r.ring.order() as u64).is_multiple_of(c))
            .map(|r| r.ring.clone())
            .collect(),
        None => vec![FiniteRing::with_budget(&RingSpec::zn(c), ring.max_elems())?],
    };
    for src in sources {
        out.push(RingHom::from_integers(&src, ring)?);
    }
    Ok(out)
}

fn run_claim(claim: ClaimId, scope: &Scope, t: u32, scalars: Scalars, out: &mut Collector) {
    let entry = scope.entry;
    let ring = &entry.ring;
    let label = |m: &PresentedModule| format!("{} / {}", ring.label(), m.label());
    match claim {
        ClaimId::Stratify => out.push(claim, || ring.label().into(), stratify_entry(ring, t)),
        ClaimId::Poly => {
            let r = match scalars {
                Scalars::All => poly_report(ring, t, POLY_DEGREE),
                Scalars::One(a) => single_poly(ring, a, t),
            };
            out.push(claim, || ring.label().into(), r)
        }
        ClaimId::Equivalences => {
            for m in scope.modules {
                out.push(claim, || label(m), equivalences_entry(m, t, scalars));
            }
        }
        ClaimId::Inclusions => {
            for m in scope.modules {
                out.push(claim, || label(m), inclusions_entry(m, t, scalars));
            }
        }
        ClaimId::Functor => {
            for m in scope.modules {
                out.push(claim, || label(m), functor_entry(m, scope.partners, t, scalars));
            }
        }
        ClaimId::CyclicCharacterization => {
            for m in scope.modules {
                out.push(claim, || label(m), cyclic_characterization(m, t));
            }
        }
        ClaimId::Sum => match &scope.parts {
            Some(parts) => {
                let refs: Vec<&PresentedModule> = parts.iter().collect();
                out.push(claim, || ring.label().into(), sum_entry(&refs, t, scalars));
            }
            None => {
                let cyclic: Vec<&PresentedModule> = scope.modules.iter().filter(|m| m.rank() == 1).collect();
                for (i, p) in cyclic.iter().enumerate() {
                    for q in &cyclic[i..] {
                        out.push(
                            claim,
                            || format!("{} / {} (+) {}", ring.label(), p.label(), q.label()),
                            sum_entry(&[p, q], t, scalars),
                        );
                    }
                }
            }
        },
        ClaimId::Localization => {
            let sets = match &scope.mult_sets {
                Some(s) => Ok(s.clone()),
                None => single_generator_sets(ring),
            };
            let sets = match sets {
                Ok(s) => s,
                Err(e) => return out.push(claim, || ring.label().into(), Err(e)),
            };
            for m in scope.modules.iter().filter(|m| scope.single || m.rank() == 1) {
                for s in &sets {
                    out.push(
                        claim,
                        || format!("{} with {}", label(m), s.label()),
                        localization_report(m, s, t),
                    );
                }
            }
        }
        ClaimId::ScalarRestriction => {
            let homs = match maps_into(ring, scope.catalog) {
                Ok(h) => h,
                Err(e) => return out.push(claim, || ring.label().into(), Err(e)),
            };
            for f in &homs {
                for m in scope.modules.iter().filter(|m| scope.single || m.rank() == 1) {
                    out.push(claim, || label(m), scalar_report(f, m, t));
                }
            }
            if scope.single {
                return;
            }
            let ideals = match enumerate_ideals(ring) {
                Ok(i) => i,
                Err(e) => return out.push(claim, || ring.label().into(), Err(e)),
            };
            for ideal in ideals.iter().filter(|i| !i.is_zero() && !i.is_whole()) {
                let r = (|| {
                    let q = ideal.quotient_ring()?;
                    let f = RingHom::from_table(ring, &q, ideal.projection())?;
                    let mut reports = Vec::new();
                    for m in cyclic_modules(&q)? {
                        reports.push(scalar_report(&f, &m, t)?);
                    }
                    Ok(reports)
                })();
                match r {
                    Ok(rs) => out.entries.extend(rs),
                    Err(e) => out.push(claim, || format!("{} -> quotient", ring.label()), Err(e)),
                }
            }
        }
        _ => out.push(claim, || ring.label().into(), claim_audit(ring, t, claim)),
    }
}

fn single_poly(ring: &FiniteRing, a: Elem, t: u32) -> Result<AuditReport> {
    let mut top = 0;
    for d in 0..=POLY_DEGREE {
        let c = crate::extensions::poly_gln_check(ring, a, t, d);
        match c {
            Err(Error::OrderBudgetExceeded { .. }) if d > 0 => break,
            Err(e) => return Err(e),
            Ok(c) if !(c.equal && c.reduced_agree) => {
                return Ok(AuditReport::new(
                    ClaimId::Poly,
                    Instance::ring(ring, t).scalar(ring.literal(a)).with(format!("D<={d}")),
                    Status::Fails,
                    format!("{} polynomials on the left, {} on the right", c.lhs, c.rhs),
                ))
            }
            Ok(_) => top = d,
        }
    }
    Ok(AuditReport::new(
        ClaimId::Poly,
        Instance::ring(ring, t).scalar(ring.literal(a)).with(format!("D<={top}")),
        Status::Holds,
        "both sides agree",
    ))
}

/// `S` generated by a single element, one per distinct closure.
pub fn single_generator_sets(ring: &FiniteRing) -> Result<Vec<MultSet>> {
    let mut out: Vec<MultSet> = Vec::new();
    for g in ring.elements() {
        let s = MultSet::closure(ring, &[g])?;
        if !out.iter().any(|o| o.elements() == s.elements()) {
            out.push(s);
        }
    }
    Ok(out)
}

fn run_on<'c>(
    config: &RunConfig,
    catalog: &'c Catalog,
    scope_of: impl Fn(&'c CatalogRing) -> Result<(Scope<'c>, Scalars)>,
    out: &mut Collector,
) {
    for claim in &config.claims {
        for entry in &catalog.rings {
            match scope_of(entry) {
                Ok((scope, scalars)) => run_claim(*claim, &scope, config.t, scalars, out),
                Err(e) => out.push(*claim, || entry.ring.label().into(), Err(e)),
            }
        }
    }
}

/// Execute a run. Budget errors on individual instances are recorded in
/// `skipped`; only configuration errors abort.
pub fn run_report(config: &RunConfig) -> Result<RunReport> {
    if config.t == 0 {
        return Err(Error::BadConfig("t must be a positive integer".into()));
    }
    let start = Instant::now();
    let mut out = Collector {
        entries: Vec::new(),
        skipped: Vec::new(),
    };
    match &config.target {
        Target::Catalog { max_order } => {
            let catalog = Catalog::build(*max_order, config.max_elems)?;
            run_on(
                config,
                &catalog,
                |entry| {
                    Ok((
                        Scope {
                            entry,
                            modules: &entry.modules,
                            partners: &entry.modules,
                            mult_sets: None,
                            parts: None,
                            single: false,
                            catalog: Some(&catalog),
                        },
                        Scalars::All,
                    ))
                },
                &mut out,
            );
        }
        Target::Instance { spec, a } => {
            let ring = FiniteRing::with_budget(&spec.ring, config.max_elems)?;
            let module = match &spec.module {
                Some(p) => PresentedModule::from_presentation(&ring, p)?,
                None => PresentedModule::free(&ring, 1)?,
            };
            let scalars = match a {
                Some(v) => Scalars::One(ring.parse_literal(v)?),
                None => Scalars::All,
            };
            let mult_sets = match &spec.mult_set {
                Some(ms) => {
                    let gens: Result<Vec<Elem>> = ms.generators.iter().map(|g| ring.parse_literal(g)).collect();
                    Some(vec![MultSet::closure(&ring, &gens?)?])
                }
                None => None,
            };
            let parts = match &spec.parts {
                Some(ps) => Some(
                    ps.iter()
                        .map(|p| PresentedModule::from_presentation(&ring, p))
                        .collect::<Result<Vec<_>>>()?,
                ),
                None => Some(vec![module.clone(), module.clone()]),
            };
            let entry = CatalogRing {
                spec: spec.ring.clone(),
                ring: ring.clone(),
                modules: vec![module],
            };
            let catalog = Catalog { rings: vec![entry] };
            run_on(
                config,
                &catalog,
                |entry| {
                    Ok((
                        Scope {
                            entry,
                            modules: &entry.modules,
                            partners: &entry.modules,
                            mult_sets: mult_sets.clone(),
                            parts: parts.clone(),
                            single: true,
                            catalog: None,
                        },
                        scalars,
                    ))
                },
                &mut out,
            );
        }
    }
    let summary = summarize(&out.entries);
    Ok(RunReport {
        tool_version: TOOL_VERSION.to_string(),
        config: config.clone(),
        entries: out.entries,
        skipped: out.skipped,
        summary,
        wall_time_ms: start.elapsed().as_millis() as u64,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SearchResult {
    pub claim: ClaimId,
    pub t: u32,
    pub max_order: usize,
    pub rings_scanned: usize,
    pub hits: Vec<AuditReport>,
    /// Fails entries whose witness did not survive re-verification.
    pub discarded: usize,
}

/// Every failing instance of `claim` on catalog rings of order
/// `≤ max_order`, each witness re-checked before it is returned.
pub fn search_counterexamples(claim: ClaimId, t: u32, max_order: usize, max_elems: usize) -> Result<SearchResult> {
    let config = RunConfig {
        claims: vec![claim],
        t,
        max_elems,
        target: Target::Catalog { max_order },
    };
    let report = run_report(&config)?;
    let catalog = Catalog::build(max_order, max_elems)?;
    let mut hits = Vec::new();
    let mut discarded = 0;
    for mut e in report.entries.into_iter().filter(|e| e.status == Status::Fails) {
        if e.reverified.is_none() && claim.level() == Level::Ring {
            if let (Some(w), Some(cr)) = (&e.witness, catalog.ring(&e.instance.ring)) {
                e.reverified = recheck_ring_witness(&cr.ring, t, w);
            }
        }
        if e.reverified == Some(false) {
            discarded += 1;
        } else {
            hits.push(e);
        }
    }
    Ok(SearchResult {
        claim,
        t,
        max_order,
        rings_scanned: catalog.rings.len(),
        hits,
        discarded,
    })
}

//! `t`-regular rings and the ring-level claims about them.

use serde::Serialize;
use serde_json::Value;

use crate::catalog::{cyclic_modules, module_family};
use crate::error::{Error, Result};
use crate::ideal::{enumerate_ideals, nilradical, Ideal};
use crate::module::{is_faithful, PresentedModule, RModule, Submodule, SubmoduleView};
use crate::report::{
    flags, recheck_ring_witness, regular_failure_by_definition, AuditReport, ClaimId, Instance, Status, Witness,
};
use crate::ring::{Elem, FiniteRing};
use crate::torsion::{is_at_reduced, is_eps_reduced};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularityCertificate {
    pub t: u32,
    /// `a^t = a^{2t} b` solvable for every `a`.
    pub mccoy: bool,
    /// `a^t = a^{t+1} b` solvable for every `a`.
    pub azumaya: bool,
    /// `(a, b)` with `b` least, one per element; empty unless `mccoy`.
    #[serde(skip)]
    pub witnesses: Vec<(Elem, Elem)>,
    #[serde(skip)]
    pub failing: Option<Elem>,
    #[serde(skip)]
    pub azumaya_failing: Option<Elem>,
}

impl RegularityCertificate {
    pub fn is_regular(&self) -> bool {
        self.mccoy
    }

    pub fn forms_agree(&self) -> bool {
        self.mccoy == self.azumaya
    }

    /// Every stored pair satisfies `a^t = a^{2t} b`.
    pub fn verify(&self, ring: &FiniteRing) -> bool {
        let t = self.t as u64;
        self.witnesses
            .iter()
            .all(|&(a, b)| ring.pow(a, t) == ring.mul(ring.pow(a, 2 * t), b))
            && (!self.mccoy || self.witnesses.len() == ring.order())
    }
}

fn least_solution(ring: &FiniteRing, lhs: Elem, coeff: Elem) -> Option<Elem> {
    ring.elements().find(|&b| ring.mul(coeff, b) == lhs)
}

pub fn is_t_regular(ring: &FiniteRing, t: u32) -> RegularityCertificate {
    let t64 = t as u64;
    let mut witnesses = Vec::with_capacity(ring.order());
    let mut failing = None;
    let mut azumaya_failing = None;
    for a in ring.elements() {
        let at = ring.pow(a, t64);
        match least_solution(ring, at, ring.pow(a, 2 * t64)) {
            Some(b) => witnesses.push((a, b)),
            None => {
                failing.get_or_insert(a);
            }
        }
        if azumaya_failing.is_none() && least_solution(ring, at, ring.pow(a, t64 + 1)).is_none() {
            azumaya_failing = Some(a);
        }
    }
    if failing.is_some() {
        witnesses.clear();
    }
    RegularityCertificate {
        t,
        mccoy: failing.is_none(),
        azumaya: azumaya_failing.is_none(),
        witnesses,
        failing,
        azumaya_failing,
    }
}

/// Least `b ≠ 0` whose annihilator `(0:b)` is not semiprime.
pub fn nonsemiprime_annihilator(ring: &FiniteRing) -> Option<Elem> {
    ring.elements()
        .filter(|&b| b != ring.zero())
        .find(|&b| !Ideal::annihilator(ring, b).semiprimality().semiprime)
}

fn least_nilpotent(ring: &FiniteRing) -> Option<(Elem, u64)> {
    nilradical(ring)
        .elements()
        .iter()
        .copied()
        .find(|&x| x != ring.zero())
        .map(|x| (x, ring.nilpotency_index(x).expect("nilpotent")))
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Audit one ring-level claim on `(R, t)`.
pub fn claim_audit(ring: &FiniteRing, t: u32, claim: ClaimId) -> Result<AuditReport> {
    let inst = Instance::ring(ring, t);
    let lit = |x: Elem| ring.literal(x);
    let regular = is_t_regular(ring, t);
    let report = match claim {
        ClaimId::MccoyAzumaya => {
            let r = AuditReport::holds_if(
                claim,
                inst,
                regular.forms_agree(),
                format!("a^t = a^2t b: {}; a^t = a^(t+1) b: {}", yes(regular.mccoy), yes(regular.azumaya)),
            );
            if regular.forms_agree() {
                r
            } else {
                let a = regular.failing.or(regular.azumaya_failing).expect("one form fails");
                r.witness(flags(&[("mccoy", regular.mccoy), ("azumaya", regular.azumaya)]))
                    .note(format!("first failing element {}", lit(a)))
            }
        }
        ClaimId::QuotientClosure => {
            if !regular.is_regular() {
                AuditReport::new(
                    claim,
                    inst,
                    Status::HypothesisNotMet,
                    format!("not {t}-regular, fails at a = {}", lit(regular.failing.unwrap())),
                )
            } else {
                let ideals = enumerate_ideals(ring)?;
                let mut bad = None;
                for ideal in &ideals {
                    let q = ideal.quotient_ring()?;
                    if let Some(a) = is_t_regular(&q, t).failing {
                        bad = Some((ideal, q, a));
                        break;
                    }
                }
                match bad {
                    None => AuditReport::new(
                        claim,
                        inst,
                        Status::Holds,
                        format!("all {} quotients R/I are {t}-regular", ideals.len()),
                    ),
                    Some((ideal, q, a)) => {
                        let w = Witness::NotRegular { a: q.literal(a) };
                        let ok = recheck_ring_witness(&q, t, &w);
                        let gens: Vec<Value> = ideal.generators().iter().map(|&g| lit(g)).collect();
                        AuditReport::new(claim, inst, Status::Fails, format!("R/({gens:?}) is not {t}-regular"))
                            .witness(w)
                            .reverified(ok.unwrap_or(false))
                    }
                }
            }
        }
        ClaimId::DomainIffField => {
            let c = ring.classify();
            if !c.is_domain {
                AuditReport::new(claim, inst, Status::HypothesisNotMet, "not a domain")
            } else {
                AuditReport::holds_if(
                    claim,
                    inst,
                    regular.is_regular() == c.is_field,
                    format!("domain; field: {}; {t}-regular: {}", yes(c.is_field), yes(regular.is_regular())),
                )
            }
        }
        ClaimId::SemiprimeImpliesEps | ClaimId::NoethTRegularImpliesEps => {
            let eps = is_eps_reduced(&PresentedModule::free(ring, 1)?, t);
            let bad_ann = nonsemiprime_annihilator(ring);
            let needs_ann = claim == ClaimId::SemiprimeImpliesEps;
            let conclusion = format!("ring eps^{t}-reduced: {}", yes(eps.reduced));
            if !regular.is_regular() {
                AuditReport::new(claim, inst, Status::HypothesisNotMet, format!("not {t}-regular"))
                    .note(conclusion)
            } else if needs_ann && bad_ann.is_some() {
                AuditReport::new(
                    claim,
                    inst,
                    Status::HypothesisNotMet,
                    format!("(0:{}) is not semiprime", lit(bad_ann.unwrap())),
                )
                .note(conclusion)
            } else {
                match eps.witness {
                    None => AuditReport::new(claim, inst, Status::Holds, conclusion),
                    Some((a, x, k)) => {
                        let w = Witness::AtViolation {
                            a: lit(a),
                            m: lit(Elem(x.0)),
                            k,
                        };
                        let ok = recheck_ring_witness(ring, t, &w).unwrap_or(false);
                        AuditReport::new(claim, inst, Status::Fails, conclusion).witness(w).reverified(ok)
                    }
                }
            }
        }
        ClaimId::ThmAllModules => thm_all_modules(ring, t, inst, regular.is_regular())?,
        ClaimId::RegularIff => {
            let one = is_t_regular(ring, 1).is_regular();
            let ideals = enumerate_ideals(ring)?;
            let all_semiprime = ideals.iter().all(|i| i.semiprimality().semiprime);
            let rhs = regular.is_regular() && all_semiprime;
            let r = AuditReport::holds_if(
                claim,
                inst,
                one == rhs,
                format!(
                    "regular: {}; {t}-regular: {}; every ideal semiprime: {}",
                    yes(one),
                    yes(regular.is_regular()),
                    yes(all_semiprime)
                ),
            );
            if one == rhs {
                r
            } else {
                r.witness(flags(&[
                    ("regular", one),
                    ("t_regular", regular.is_regular()),
                    ("ideals_semiprime", all_semiprime),
                ]))
            }
        }
        ClaimId::Faithful => faithful_audit(ring, t, inst)?,
        ClaimId::NoethReducedIffEps => {
            let eps = is_eps_reduced(&PresentedModule::free(ring, 1)?, t).reduced;
            let nil = least_nilpotent(ring);
            let reduced = nil.is_none();
            let mut r = AuditReport::holds_if(
                claim,
                inst,
                reduced == eps,
                format!("reduced: {}; eps^{t}-reduced: {}", yes(reduced), yes(eps)),
            );
            if let Some(b) = nonsemiprime_annihilator(ring) {
                r = r.note(format!(
                    "the annihilator step of the argument does not apply: (0:{}) is not semiprime",
                    lit(b)
                ));
            }
            if reduced != eps {
                let (x, index) = nil.expect("eps-reduced and not reduced");
                let w = Witness::EpsNotReduced {
                    nilpotent: lit(x),
                    index,
                };
                let ok = recheck_ring_witness(ring, t, &w).unwrap_or(false);
                r = r.witness(w).reverified(ok);
            }
            r
        }
        ClaimId::NoethTRegularIffReduced => {
            let nil = least_nilpotent(ring);
            let reduced = nil.is_none();
            let mut r = AuditReport::holds_if(
                claim,
                inst,
                reduced == regular.is_regular(),
                format!("reduced: {}; {t}-regular: {}", yes(reduced), yes(regular.is_regular())),
            )
            .note(format!("checked at the fixed t = {t} only; a reading quantifying over all t is not evaluated"));
            if reduced != regular.is_regular() {
                let w = match nil {
                    Some((x, index)) => Witness::RegularNotReduced {
                        nilpotent: lit(x),
                        index,
                    },
                    None => Witness::NotRegular {
                        a: lit(regular.failing.expect("not regular")),
                    },
                };
                let ok = recheck_ring_witness(ring, t, &w).unwrap_or(false);
                r = r.witness(w).reverified(ok);
            }
            r
        }
        other => {
            return Err(Error::BadConfig(format!("{other} is not a ring-level regularity claim")));
        }
    };
    Ok(report)
}

fn thm_all_modules(ring: &FiniteRing, t: u32, inst: Instance, regular: bool) -> Result<AuditReport> {
    let cyclic = cyclic_modules(ring)?;
    let family = module_family(ring)?;
    let cyclic_eps = cyclic.iter().all(|m| is_eps_reduced(m, t).reduced);
    let all_eps = family.iter().all(|m| is_eps_reduced(m, t).reduced);
    let agree = cyclic_eps == all_eps && all_eps == regular;
    let detail = format!(
        "{} cyclic modules eps^{t}-reduced: {}; all {} family modules: {}; {t}-regular: {}",
        cyclic.len(),
        yes(cyclic_eps),
        family.len(),
        yes(all_eps),
        yes(regular)
    );
    let w = flags(&[("all_modules", all_eps), ("cyclic_modules", cyclic_eps), ("t_regular", regular)]);
    let note = "every module is approximated by the catalog module family";
    if let Some(b) = nonsemiprime_annihilator(ring) {
        let conclusion = if agree { "holds" } else { "fails" };
        return Ok(AuditReport::new(
            ClaimId::ThmAllModules,
            inst,
            Status::HypothesisNotMet,
            format!("(0:{}) is not semiprime", ring.literal(b)),
        )
        .note(format!("the equivalence of the three conditions nonetheless {conclusion} here: {detail}")));
    }
    let r = AuditReport::holds_if(ClaimId::ThmAllModules, inst, agree, detail).note(note);
    Ok(if agree { r } else { r.witness(w) })
}

/// Every cyclic submodule of `M`, as views are built from these.
fn cyclic_submodules<M: RModule + ?Sized>(m: &M) -> Vec<Submodule> {
    let mut subs: Vec<Submodule> = m.elements().map(|x| Submodule::generate(m, &[x])).collect();
    subs.sort_by(|a, b| a.elements().cmp(b.elements()));
    subs.dedup();
    subs
}

fn faithful_audit(ring: &FiniteRing, t: u32, inst: Instance) -> Result<AuditReport> {
    let regular = PresentedModule::free(ring, 1)?;
    let mut frees = vec![regular.clone()];
    if (ring.order() as u128).pow(2) <= ring.max_elems() as u128 {
        frees.push(PresentedModule::free(ring, 2)?);
    }
    let subs: Vec<(usize, Submodule)> = frees
        .iter()
        .enumerate()
        .flat_map(|(i, f)| cyclic_submodules(f).into_iter().map(move |s| (i, s)))
        .collect();
    let family = module_family(ring)?;
    let faithful: Vec<&PresentedModule> = family.iter().filter(|m| is_faithful(*m).faithful).collect();

    let mut eps = [true; 3];
    for a in ring.elements() {
        let ring_ok = is_at_reduced(&regular, a, t).reduced;
        let subs_ok = subs.iter().all(|(i, s)| is_at_reduced(&SubmoduleView::new(&frees[*i], s), a, t).reduced);
        let exists = faithful.iter().any(|m| is_at_reduced(*m, a, t).reduced);
        let row = [ring_ok, subs_ok, exists];
        for (e, r) in eps.iter_mut().zip(row) {
            *e &= r;
        }
        if row.iter().any(|&f| f != row[0]) {
            return Ok(AuditReport::new(
                ClaimId::Faithful,
                inst.scalar(ring.literal(a)),
                Status::Fails,
                "a^t-reduced forms disagree",
            )
            .witness(flags(&[
                ("ring", ring_ok),
                ("free_submodules", subs_ok),
                ("faithful_module", exists),
            ])));
        }
    }
    let exists_eps = faithful.iter().any(|m| is_eps_reduced(*m, t).reduced);
    let eps_row = [eps[0], eps[1], exists_eps];
    let agree = eps_row.iter().all(|&f| f == eps_row[0]);
    let detail = format!(
        "a^t form agrees for all {} scalars; eps^{t}: ring {}, free submodules {}, faithful module {}",
        ring.order(),
        yes(eps[0]),
        yes(eps[1]),
        yes(exists_eps)
    );
    let r = AuditReport::holds_if(ClaimId::Faithful, inst, agree, detail).note(format!(
        "free modules of rank <= {}; {} faithful modules in the family",
        frees.len(),
        faithful.len()
    ));
    Ok(if agree {
        r
    } else {
        r.witness(flags(&[
            ("ring", eps[0]),
            ("free_submodules", eps[1]),
            ("faithful_module", exists_eps),
        ]))
    })
}

/// `M` is `ε^t`-reduced iff every cyclic submodule is.
pub fn cyclic_characterization(m: &PresentedModule, t: u32) -> Result<AuditReport> {
    let inst = Instance::module(m.ring(), m.label(), t);
    let whole = is_eps_reduced(m, t).reduced;
    let subs = cyclic_submodules(m);
    let all = subs.iter().all(|s| is_eps_reduced(&SubmoduleView::new(m, s), t).reduced);
    let r = AuditReport::holds_if(
        ClaimId::CyclicCharacterization,
        inst,
        whole == all,
        format!(
            "M eps^{t}-reduced: {}; all {} cyclic submodules: {}",
            yes(whole),
            subs.len(),
            yes(all)
        ),
    );
    Ok(if whole == all {
        r
    } else {
        r.witness(flags(&[("module", whole), ("cyclic_submodules", all)]))
    })
}

/// `t`-regularity of `R` by the literal definition; used as an oracle.
pub fn is_t_regular_by_definition(ring: &FiniteRing, t: u32) -> bool {
    regular_failure_by_definition(ring, t).is_none()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::RingSpec;

    fn z(n: u64) -> FiniteRing {
        FiniteRing::zn(n).unwrap()
    }

    #[test]
    fn regularity_examples() {
        let c = is_t_regular(&z(4), 2);
        assert!(c.is_regular() && c.verify(&z(4)));
        assert_eq!(is_t_regular(&z(4), 1).failing, Some(Elem(2)));
        assert!(is_t_regular(&z(8), 3).is_regular());
        assert_eq!(is_t_regular(&z(8), 2).failing, Some(Elem(2)));
        let f4 = FiniteRing::new(&RingSpec::quotient(2, &[1, 1, 1])).unwrap();
        for t in 1..=4 {
            assert!(is_t_regular(&f4, t).is_regular());
        }
    }

    #[test]
    fn claim_examples() {
        let r = claim_audit(&z(6), 1, ClaimId::ThmAllModules).unwrap();
        assert_eq!(r.status, Status::Holds, "{r:?}");
        let r = claim_audit(&z(4), 2, ClaimId::ThmAllModules).unwrap();
        assert_eq!(r.status, Status::HypothesisNotMet);
        assert!(r.notes[0].contains("nonetheless holds"));
        let r = claim_audit(&z(4), 2, ClaimId::NoethTRegularIffReduced).unwrap();
        assert_eq!(r.status, Status::Fails);
        assert_eq!(r.reverified, Some(true));
        assert_eq!(
            r.witness,
            Some(Witness::RegularNotReduced {
                nilpotent: Value::from(2),
                index: 2
            })
        );
        let r = claim_audit(&z(4), 2, ClaimId::NoethReducedIffEps).unwrap();
        assert_eq!(r.status, Status::Fails);
        assert_eq!(r.reverified, Some(true));
        let r = claim_audit(&z(4), 2, ClaimId::NoethTRegularImpliesEps).unwrap();
        assert_eq!(r.status, Status::Holds);
    }

    #[test]
    fn ring_claims_on_small_rings() {
        for n in 2..=12 {
            for t in 1..=2 {
                for claim in [
                    ClaimId::MccoyAzumaya,
                    ClaimId::QuotientClosure,
                    ClaimId::DomainIffField,
                    ClaimId::SemiprimeImpliesEps,
                    ClaimId::RegularIff,
                    ClaimId::Faithful,
                ] {
                    let r = claim_audit(&z(n), t, claim).unwrap();
                    assert_ne!(r.status, Status::Fails, "{r:?}");
                }
            }
        }
    }

    #[test]
    fn cyclic_characterization_examples() {
        let z8 = z(8);
        for m in module_family(&z8).unwrap() {
            for t in 1..=3 {
                assert_eq!(cyclic_characterization(&m, t).unwrap().status, Status::Holds);
            }
        }
    }
}

//! Claim identifiers, audit outcomes and the definitional re-checks used
//! to confirm ring-level witnesses.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};
use serde_json::Value;

use crate::error::Error;
use crate::ring::{Elem, FiniteRing};

/// Whether a claim is expected to hold everywhere, or is audited and may
/// legitimately fail.
#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Holds,
    Audited,
}

/// What a claim quantifies over in the catalog.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Level {
    Ring,
    Module,
    Pair,
}

macro_rules! claims {
    ($($variant:ident => $name:literal, $level:ident, $expect:ident;)*) => {
        #[derive(Copy, Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
        pub enum ClaimId {
            $($variant,)*
        }

        impl ClaimId {
            pub const ALL: &'static [ClaimId] = &[$(ClaimId::$variant,)*];

            pub fn as_str(self) -> &'static str {
                match self {
                    $(ClaimId::$variant => $name,)*
                }
            }

            pub fn level(self) -> Level {
                match self {
                    $(ClaimId::$variant => Level::$level,)*
                }
            }

            pub fn expectation(self) -> Expectation {
                match self {
                    $(ClaimId::$variant => Expectation::$expect,)*
                }
            }
        }
    };
}

claims! {
    Stratify => "stratify", Ring, Holds;
    Equivalences => "equivalences", Module, Holds;
    Inclusions => "inclusions", Module, Holds;
    Functor => "functor", Module, Holds;
    Sum => "sum", Pair, Holds;
    Poly => "poly", Ring, Holds;
    Localization => "localization", Module, Audited;
    MccoyAzumaya => "mccoy_azumaya", Ring, Holds;
    QuotientClosure => "quotient_closure", Ring, Holds;
    DomainIffField => "domain_iff_field", Ring, Holds;
    SemiprimeImpliesEps => "semiprime_implies_eps", Ring, Holds;
    ThmAllModules => "thm_all_modules", Ring, Holds;
    RegularIff => "regular_iff", Ring, Holds;
    ScalarRestriction => "scalar_restriction", Module, Holds;
    CyclicCharacterization => "cyclic_characterization", Module, Holds;
    Faithful => "faithful", Ring, Holds;
    NoethTRegularImpliesEps => "noeth_t_regular_implies_eps", Ring, Holds;
    NoethReducedIffEps => "noeth_reduced_iff_eps", Ring, Audited;
    NoethTRegularIffReduced => "noeth_t_regular_iff_reduced", Ring, Audited;
}

impl FromStr for ClaimId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        if s == "stratify_as_claim" {
            return Ok(ClaimId::Stratify);
        }
        ClaimId::ALL
            .iter()
            .copied()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| Error::BadConfig(format!("unknown claim id {s:?}")))
    }
}

impl fmt::Display for ClaimId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl Serialize for ClaimId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(self.as_str())
    }
}

impl<'de> Deserialize<'de> for ClaimId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    HypothesisNotMet,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Instance {
    pub ring: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub a: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t: Option<u32>,
    /// Claim-specific extra coordinate: a multiplicative set, a ring
    /// map, a partner module or a degree bound.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub with: Option<String>,
}

impl Instance {
    pub fn ring(ring: &FiniteRing, t: u32) -> Self {
        Instance {
            ring: ring.label().to_string(),
            t: Some(t),
            ..Default::default()
        }
    }

    pub fn module(ring: &FiniteRing, module: &str, t: u32) -> Self {
        Instance {
            module: Some(module.to_string()),
            ..Self::ring(ring, t)
        }
    }

    pub fn scalar(mut self, a: Value) -> Self {
        self.a = Some(a);
        self
    }

    pub fn with(mut self, w: impl Into<String>) -> Self {
        self.with = Some(w.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Witness {
    /// `a^k m = 0` while `a^t m ≠ 0`.
    AtViolation { a: Value, m: Value, k: u32 },
    /// No `b` satisfies `a^t = a^{2t} b`.
    NotRegular { a: Value },
    /// The ring is `t`-regular but `x ≠ 0` has `x^index = 0`.
    RegularNotReduced { nilpotent: Value, index: u64 },
    /// The ring is `ε^t`-reduced but `x ≠ 0` has `x^index = 0`.
    EpsNotReduced { nilpotent: Value, index: u64 },
    /// Conditions that should agree but do not.
    Flags { flags: BTreeMap<String, bool> },
    Localization {
        multiplicative_set: Vec<Value>,
        base: bool,
        localized: bool,
    },
    /// An element violating a containment.
    Element { check: String, element: Value },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AuditReport {
    pub claim: ClaimId,
    pub instance: Instance,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Outcome of the independent re-check of `witness`, when one exists.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reverified: Option<bool>,
    pub detail: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl AuditReport {
    pub fn new(claim: ClaimId, instance: Instance, status: Status, detail: impl Into<String>) -> Self {
        AuditReport {
            claim,
            instance,
            status,
            witness: None,
            reverified: None,
            detail: detail.into(),
            notes: Vec::new(),
        }
    }

    pub fn holds_if(claim: ClaimId, instance: Instance, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok { Status::Holds } else { Status::Fails };
        Self::new(claim, instance, status, detail)
    }

    pub fn witness(mut self, w: Witness) -> Self {
        self.witness = Some(w);
        self
    }

    pub fn reverified(mut self, ok: bool) -> Self {
        self.reverified = Some(ok);
        self
    }

    pub fn note(mut self, n: impl Into<String>) -> Self {
        self.notes.push(n.into());
        self
    }
}

pub(crate) fn flags(pairs: &[(&str, bool)]) -> Witness {
    Witness::Flags {
        flags: pairs.iter().map(|&(k, v)| (k.to_string(), v)).collect(),
    }
}

/// `t`-regularity by the literal definition: the least `a` with no `b`.
pub fn regular_failure_by_definition(ring: &FiniteRing, t: u32) -> Option<Elem> {
    ring.elements().find(|&a| {
        let at = ring.pow(a, t as u64);
        let a2t = ring.pow(a, 2 * t as u64);
        !ring.elements().any(|b| ring.mul(a2t, b) == at)
    })
}

/// `ε^t`-reducedness of `R` over itself by the literal definition with
/// `k` up to the ring order.
pub fn ring_eps_failure_by_definition(ring: &FiniteRing, t: u32) -> Option<(Elem, Elem, u32)> {
    let top = (ring.order() as u32).max(t);
    for a in ring.elements() {
        let at = ring.pow(a, t as u64);
        for r in ring.elements() {
            if ring.mul(at, r) == ring.zero() {
                continue;
            }
            if let Some(k) = (t..=top).find(|&k| ring.mul(ring.pow(a, k as u64), r) == ring.zero()) {
                return Some((a, r, k));
            }
        }
    }
    None
}

/// Re-check a ring-level witness against definitional loops. `None` when
/// the witness kind has no ring-level meaning.
pub fn recheck_ring_witness(ring: &FiniteRing, t: u32, w: &Witness) -> Option<bool> {
    let parse = |v: &Value| ring.parse_literal(v).ok();
    let nilpotent = |v: &Value, index: u64| {
        parse(v).is_some_and(|x| x != ring.zero() && ring.pow(x, index) == ring.zero())
    };
    match w {
        Witness::AtViolation { a, m, k } => {
            let (a, m) = (parse(a)?, parse(m)?);
            Some(
                ring.mul(ring.pow(a, *k as u64), m) == ring.zero()
                    && ring.mul(ring.pow(a, t as u64), m) != ring.zero(),
            )
        }
        Witness::NotRegular { a } => {
            let a = parse(a)?;
            let at = ring.pow(a, t as u64);
            let a2t = ring.pow(a, 2 * t as u64);
            Some(!ring.elements().any(|b| ring.mul(a2t, b) == at))
        }
        Witness::RegularNotReduced { nilpotent: x, index } => {
            Some(nilpotent(x, *index) && regular_failure_by_definition(ring, t).is_none())
        }
        Witness::EpsNotReduced { nilpotent: x, index } => {
            Some(nilpotent(x, *index) && ring_eps_failure_by_definition(ring, t).is_none())
        }
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn claim_ids_round_trip() {
        for &c in ClaimId::ALL {
            assert_eq!(c.as_str().parse::<ClaimId>().unwrap(), c);
        }
        assert_eq!("stratify_as_claim".parse::<ClaimId>().unwrap(), ClaimId::Stratify);
        assert!("nonsense".parse::<ClaimId>().is_err());
    }

    #[test]
    fn definitional_rechecks() {
        let z4 = FiniteRing::zn(4).unwrap();
        let w = Witness::RegularNotReduced {
            nilpotent: Value::from(2),
            index: 2,
        };
        assert_eq!(recheck_ring_witness(&z4, 2, &w), Some(true));
        assert_eq!(recheck_ring_witness(&z4, 1, &w), Some(false));
        assert_eq!(regular_failure_by_definition(&z4, 1), Some(Elem(2)));
        assert!(ring_eps_failure_by_definition(&z4, 2).is_none());
        assert!(ring_eps_failure_by_definition(&z4, 1).is_some());
    }
}

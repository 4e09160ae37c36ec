//! Exhaustive module theory over finite commutative rings: the a-torsion
//! functor, the generalised locally nilradical `a^tΓ_a`, reducedness
//! predicates, `t`-regular rings, and an auditing harness.

pub mod catalog;
pub mod error;
pub mod extensions;
pub mod harness;
pub mod ideal;
pub mod module;
pub mod regularity;
pub mod report;
pub mod ring;
pub mod torsion;

pub use error::{Error, Result};
pub use ideal::{enumerate_ideals, nilradical, Ideal};
pub use module::{ModElem, ModuleSpec, PresentedModule, RModule, Submodule};
pub use report::{AuditReport, ClaimId, Status};
pub use ring::{Elem, FiniteRing, RingHom, RingSpec, DEFAULT_MAX_ELEMS};

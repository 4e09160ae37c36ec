use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("polynomial {poly:?} over Z_{modulus} is not monic of degree >= 1")]
    NonMonicPolynomial { modulus: u64, poly: Vec<i64> },

    #[error("modulus {0} is smaller than 2")]
    ModulusTooSmall(u64),

    #[error("{what} needs {requested} enumerated elements, budget is {cap}")]
    OrderBudgetExceeded {
        what: String,
        requested: u128,
        cap: usize,
    },

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("not a ring homomorphism: {identity} fails ({detail})")]
    NotAHomomorphism { identity: String, detail: String },

    #[error("not a submodule: {0}")]
    NotASubmodule(String),

    #[error("presentation rank {rank} exceeds the hom-enumeration bound {max}")]
    RankTooLarge { rank: usize, max: usize },

    #[error("not a ring: {0}")]
    NotARing(String),

    #[error("bad configuration: {0}")]
    BadConfig(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn budget_check(what: impl Into<String>, requested: u128, cap: usize) -> Result<()> {
    if requested > cap as u128 {
        return Err(Error::OrderBudgetExceeded {
            what: what.into(),
            requested,
            cap,
        });
    }
    Ok(())
}

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("mixed weights: {0}")]
    MixedWeights(String),

    #[error("{what} out of range: {detail}")]
    OutOfRange { what: &'static str, detail: String },

    #[error("no irreducible character of degree p^{k} (maximal exponent is {alpha})")]
    NoSuchDegree { k: u64, alpha: u64 },

    #[error("n = {n} < p^2 = {p_squared}: the Sylow subgroup is abelian and has no block table")]
    AbelianSylow { n: u64, p_squared: u64 },

    #[error("the box-set theorems do not hold for the prime 2 (for example Ω_4^1 = {{(3,1),(2,1,1)}} is not a box set)")]
    PrimeTwo,

    #[error("scope exceeded: {0}")]
    ScopeExceeded(String),

    #[error("level mismatch: {0}")]
    LevelMismatch(String),

    #[error("internal consistency failure: {0}")]
    Inconsistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

pub(crate) fn require_odd_prime(p: u64) -> Result<()> {
    require_prime(p)?;
    if p == 2 {
        Err(Error::PrimeTwo)
    } else {
        Ok(())
    }
}

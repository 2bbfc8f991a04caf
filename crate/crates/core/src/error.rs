use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("wedge degree {degree} out of range for a rank-{rank} lattice")]
    DegreeOutOfRange { degree: usize, rank: usize },

    #[error("group closure exceeded the bound of {bound} elements")]
    GroupTooLarge { bound: usize },

    #[error("generator {index} is not unimodular")]
    NotUnimodular { index: usize },

    #[error("no seed tori given")]
    EmptySeed,

    #[error("seed torus {index} has a rank-{rank} stabilizer, expected rank 4")]
    RankDeficientSeed { index: usize, rank: usize },

    #[error("non-generic arrangement: two distinct {what} meet along a rank-{rank} stabilizer")]
    NonGenericArrangement { what: &'static str, rank: usize },

    #[error("2-torus {theta} is recorded in 4-torus {alpha} but its stabilizer is not contained there")]
    IncidenceBroken { alpha: usize, theta: usize },

    #[error("free-part correction f = {0} is negative")]
    NegativeF(i64),

    #[error("computed free rank of H^{degree} is negative ({value})")]
    InconsistentRanks { degree: usize, value: i64 },

    #[error("invariant violated: {0}")]
    Invariant(String),

    #[error("config error: {0}")]
    Config(String),

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Config(_)
            | Error::UnknownPreset(_)
            | Error::RankDeficientSeed { .. }
            | Error::EmptySeed
            | Error::NotUnimodular { .. }
            | Error::GroupTooLarge { .. }
            | Error::NotPrime(_)
            | Error::Io(_) => 2,
            Error::NonGenericArrangement { .. } => 3,
            _ => 5,
        }
    }
}

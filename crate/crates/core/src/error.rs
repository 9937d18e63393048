use thiserror::Error;

use crate::series::MultiIndex;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CrError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("negative exponent in term ({0}, {1}, {2})")]
    NegativeExponent(i64, i64, i64),
    #[error("invalid grading or truncation: k = {k}, W = {w}")]
    InvalidGrading { k: u32, w: u32 },
    #[error("grading mismatch: {0} vs {1}")]
    GradingMismatch(u32, u32),
    #[error("expression is not real; unmatched conjugate pairs: {0:?}")]
    RealityViolation(Vec<(MultiIndex, MultiIndex)>),
    #[error("substituted series has a nonzero constant or low weight term")]
    NotWeightFiltered,
    #[error("defining function is not prepared: {0}")]
    NotPrepared(String),
    #[error("no mixed z/zb term up to the truncation weight")]
    NotFiniteType,
    #[error("surface model is not circular (v = c|z|^k)")]
    NotCircular,
    #[error("leading coefficient of the circular model must be 1 (run the leading rescale)")]
    LeadingCoefficient,
    #[error("surface equals its model up to the truncation weight")]
    ModelSurface,
    #[error("essential type equals k/2; kappa is undefined")]
    KappaUndefined,
    #[error("map violates the base point normalization: {0}")]
    MapNormalization(String),
    #[error("linear part of the map is singular")]
    SingularLinearPart,
    #[error("phase {0} is not a Gaussian rational")]
    NonRationalPhase(String),
    #[error("k must be even for the circular model, got {0}")]
    OddType(u32),
    #[error("normal form system at weight {weight} has rank {rank} for {unknowns} unknowns (consistent: {consistent})")]
    RankDefect {
        weight: u32,
        rank: usize,
        unknowns: usize,
        consistent: bool,
    },
    #[error("special normalization target is not affine in mu")]
    NonAffine,
    #[error("special normalization target does not depend on mu")]
    DegenerateMu,
    #[error("truncation weight {have} too low; need at least {need}")]
    TruncationTooLow { have: u32, need: u32 },
    #[error("stabilizer computation inconsistent: {0}")]
    StabilizerMismatch(String),
    #[error("surface is outside the supported scope: {0}")]
    OutOfScope(String),
    #[error("surface is not in normal form")]
    NotNormalized,
    #[error("special normalization has not been applied")]
    NotSpecialNormalized,
}

pub type Result<T> = std::result::Result<T, CrError>;

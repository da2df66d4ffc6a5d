use alloc::string::String;

use crate::classify::SingularityClass;

/// Errors raised by the algebra kernels.
///
/// Variants are grouped by how a front end should react: configuration and
/// domain mismatches are caller bugs, scope errors mark inputs outside the
/// supported theory, and resource errors mean a size cap was hit.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("scalar configuration mismatch: {0}")]
    ConfigMismatch(String),
    #[error("polynomial domain mismatch: {0}")]
    DomainMismatch(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("index {index} out of range 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("resource cap exceeded: {0}")]
    ResourceCap(String),

    #[error("unsupported characteristic {0}")]
    UnsupportedCharacteristic(u64),
    #[error("characteristic {p} is not good for {class}")]
    CharacteristicNotGood { class: SingularityClass, p: u64 },
    #[error("characteristic {p} is not very good for {class}")]
    PrimeNotVeryGood { class: SingularityClass, p: u64 },
    #[error("not implemented for {0}: only type A families are supported")]
    NotImplementedForClass(SingularityClass),

    #[error("cannot reach adapted shape: {0}")]
    UnfittableShape(String),
    #[error("not a deformation of {class}: {reason}")]
    NotADeformationOfThisClass { class: SingularityClass, reason: String },
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),

    #[error("ambiguous residual polynomial on segment with slope -{b}/{r}")]
    AmbiguousResidual { b: u32, r: u32 },
    #[error("wild ramification: p = {p} does not exceed n+1 = {bound}")]
    WildRamificationUnsupported { p: u64, bound: u64 },
    #[error("generic fiber is singular: {0}")]
    SingularGenericFiber(String),
    #[error("gcd({r}, {b}) != 1")]
    CoprimalityViolated { r: u32, b: u32 },

    #[error("matrix has nonzero trace")]
    NonzeroTrace,
}

pub type Result<T, E = Error> = core::result::Result<T, E>;

use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    Reducible(String),
    NotTotallyReal,
    BadBasis(String),
    InvalidInput(String),
    NotInField,
    NotIntegral,
    ZeroIdeal,
    NotInIdeal,
    NotTotallyPositive,
    NotPrimitive,
    NotCoprime,
    DegenerateCone,
    NotFundamentalDomain(String),
    /// A cone generator lies in the kernel of a torsion character, so the
    /// cone-wise generating function has a pole there.
    KernelRay,
    NotCritical,
    NotTotallyNoncritical,
    NotDivisible,
    ScaleExceeded(String),
    Unsupported(String),
    Precision(String),
    NeedUserUnits,
    NeedUserCones,
    BadUnits(String),
    PrincipalitySearchFailed,
    LiftSearchFailed,
    PoleAtTestPoint,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Reducible(s) => write!(f, "Reducible: {s}"),
            Error::NotTotallyReal => f.write_str("NotTotallyReal: polynomial has non-real roots"),
            Error::BadBasis(s) => write!(f, "BadBasis: {s}"),
            Error::InvalidInput(s) => write!(f, "InvalidInput: {s}"),
            Error::NotInField => f.write_str("NotInField"),
            Error::NotIntegral => f.write_str("NotIntegral"),
            Error::ZeroIdeal => f.write_str("ZeroIdeal"),
            Error::NotInIdeal => f.write_str("NotInIdeal"),
            Error::NotTotallyPositive => f.write_str("NotTotallyPositive"),
            Error::NotPrimitive => f.write_str("NotPrimitive"),
            Error::NotCoprime => f.write_str("NotCoprime"),
            Error::DegenerateCone => f.write_str("DegenerateCone: generators are linearly dependent"),
            Error::NotFundamentalDomain(s) => write!(f, "NotFundamentalDomain: {s}"),
            Error::KernelRay => f.write_str("KernelRay: a cone generator lies in the kernel of the character"),
            Error::NotCritical => f.write_str("NotCritical"),
            Error::NotTotallyNoncritical => f.write_str("NotTotallyNoncritical"),
            Error::NotDivisible => f.write_str("NotDivisible"),
            Error::ScaleExceeded(s) => write!(f, "ScaleExceeded: {s}"),
            Error::Unsupported(s) => write!(f, "Unsupported: {s}"),
            Error::Precision(s) => write!(f, "Precision: {s}"),
            Error::NeedUserUnits => f.write_str("NeedUserUnits: degree above 2 requires supplied units"),
            Error::NeedUserCones => f.write_str("NeedUserCones: degree above 2 requires supplied cones"),
            Error::BadUnits(s) => write!(f, "BadUnits: {s}"),
            Error::PrincipalitySearchFailed => f.write_str("PrincipalitySearchFailed"),
            Error::LiftSearchFailed => f.write_str("LiftSearchFailed: no totally positive lift found"),
            Error::PoleAtTestPoint => f.write_str("PoleAtTestPoint: a denominator vanishes at the test point"),
        }
    }
}

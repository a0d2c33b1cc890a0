//! Arithmetic in GF(2^m): logarithms, minimal polynomials, Frobenius orbits
//! and the primitive-element search used by the cyclic tent peg codes.

mod field;
mod poly;

pub use field::{
    is_primitive_polynomial, smallest_primitive_polynomial, FieldElement, Gf2m, PrimitiveChoice, MAX_DEGREE,
    TABLE_DEGREE_LIMIT,
};
pub use poly::Poly2;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum FieldError {
    #[error("field degree {0} outside 2..=32")]
    DegreeOutOfRange(u32),
    #[error("{0} is not a primitive polynomial of the requested degree")]
    ModulusNotPrimitive(Poly2),
    #[error("logarithm of zero")]
    LogOfZero,
    #[error("zero has no inverse")]
    ZeroInverse,
    #[error("{0:#x} is not a primitive element")]
    NotPrimitive(u32),
    #[error("value {value:#x} does not fit GF(2^{degree})")]
    ValueOutOfRange { value: u32, degree: u32 },
    #[error("primitive-element search needs even degree >= 4, got {0}")]
    NeedsEvenDegree(u32),
    #[error("no primitive element satisfies the log condition")]
    NotFound,
}

/// Convenience constructor with the default modulus.
pub fn make_field(m: u32) -> Result<Gf2m, FieldError> {
    Gf2m::new(m)
}

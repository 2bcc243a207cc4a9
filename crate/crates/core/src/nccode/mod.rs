//! Linear network coding for the common messages.

pub mod code;
pub mod field;
pub mod matrix;

pub use code::{
    apply_code, build_multicast_code, propagate, CodeInput, CodeSkeleton, LocalCoefficients,
    MulticastCode, TerminalDecoder, RETRIES_PER_FIELD,
};
pub use field::{GaloisField, Gf};
pub use matrix::Matrix;

//! Finite fields, polynomials, and the extension `GF(q) ⊂ GF(q^b)`.

pub mod extension;
pub mod factor;
pub mod field;
pub mod poly;
pub mod text;

pub use extension::FieldSpec;
pub use factor::{count_irreducibles, enum_irreducibles, enum_irreducibles_guarded, factor, is_irreducible};
pub use field::{prime_power, Elem, Field};
pub use poly::Poly;

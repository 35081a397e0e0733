//! Counting integral points of bounded log-anticanonical height on the
//! quartic del Pezzo surface of type A₃
//!
//! ```text
//! x₀x₁ − x₂x₃ = x₀x₃ + x₁x₃ + x₂x₄ = 0  in  P⁴
//! ```
//!
//! over ℚ and imaginary quadratic fields, by two independent routes — a
//! direct coordinate search and an enumeration of integral points on twisted
//! universal torsors — together with the predicted leading constants
//! (Euler products with rigorous tails, exact polytope volumes, p-adic
//! densities) so that theory and experiment can be compared in one tool.

pub mod constants;
pub mod exact;
pub mod geometry;
pub mod qfield;
pub mod surface;
pub mod torsor;
pub mod verify;

pub use qfield::{make_field, FieldParams};
pub use surface::Boundary;

// The guide chapters double as doctests so the book's code blocks can
// never drift from the library (`cargo test --doc`).
#[doc = include_str!("../../../book/src/overview.md")]
mod book_overview {}
#[doc = include_str!("../../../book/src/fields.md")]
mod book_fields {}
#[doc = include_str!("../../../book/src/counting.md")]
mod book_counting {}
#[doc = include_str!("../../../book/src/constants.md")]
mod book_constants {}

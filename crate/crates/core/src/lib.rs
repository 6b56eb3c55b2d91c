//! Absolutely superficial sequences (d-sequences) in quotients of polynomial
//! rings over prime fields.
//!
//! The crate is layered bottom-up:
//!
//! * [`polyring`]: exact polynomials over F_p with grevlex, lex and elimination orders.
//! * [`groebner`]: Buchberger's algorithm, normal forms, membership.
//! * [`ideal`]: sums, products, powers, intersections, colons, saturation.
//! * [`module`]: cyclic modules `S/J`, submodules, lengths and Krull dimension.
//! * [`sequence`]: the classifier for a.s./d-sequences and related sequence types.
//! * [`hilbert`]: Hilbert–Samuel tabulation, the `e_i` invariants and their bounds.
//! * [`rees`]: N-independence, Rees vs symmetric module, associated graded slices.
//! * [`oracle`]: an independent exponent-vector engine for monomial ideals.
//! * [`problem`]: the problem-file format used by the command-line tool.
//!
//! Everything works in the graded model: the local ring is the polynomial
//! ring localized at the ideal of all variables, and results carry full
//! meaning for homogeneous input.

pub mod error;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
mod linalg;
pub mod module;
pub mod oracle;
pub mod polyring;
pub mod problem;
pub mod rees;
pub mod sequence;

pub use error::{Error, Result};

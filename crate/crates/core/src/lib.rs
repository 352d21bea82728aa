//! Power sums versus elementary symmetric polynomials over `Z`, `Q` and
//! prime fields `F_r`.

pub mod error;
pub mod json;
pub mod linalg;
pub mod multipoly;
pub mod newton_engine;
pub mod p_rational;
pub mod parse;
pub mod partition;
pub mod poly;
pub mod render;
pub mod subalgebra_lab;
pub mod ring;
pub mod sym_basis;
pub mod trace_charpoly;

pub use error::{Error, Result, RingError};
pub use multipoly::MPoly;
pub use partition::Partition;
pub use ring::{Coeff, RingSpec};
pub use sym_basis::EExpansion;
pub use p_rational::{PPoly, PRat};
pub use newton_engine::{express_e, verify_formula, EFormula};
pub use trace_charpoly::{charpoly_from_traces, CharPoly, TraceSequence};

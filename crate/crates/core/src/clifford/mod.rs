//! Real Clifford algebra R_m with `e_j^2 = -1`.

pub mod blade;
pub mod multivector;
pub mod spinor;
pub mod text;
pub mod vector;

pub use blade::{blade_order, BladeIndex, ProductTable, Signature, MAX_DIM};
pub use multivector::Multivector;
pub use spinor::Spinor;
pub use text::parse_multivector;
pub use vector::CliffordVector;

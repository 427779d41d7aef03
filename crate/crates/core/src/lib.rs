//! Exact arithmetic over finite commutative rings, linear codes, and
//! matrix-product codes with checkers for self-orthogonality and self-duality.
//!
//! ```
//! use ringcodes_core::{Budget, LinearCode, Matrix, MpcSpec, Property, Ring};
//!
//! let r = Ring::integers_mod(25).unwrap();
//! let c = LinearCode::from_ints(&r, 2, &[&[1, 7]], Budget::default()).unwrap();
//! let a = Matrix::from_ints(&r, &[&[1, 7], &[7, 1]]).unwrap();
//! let spec = MpcSpec::new(vec![c.clone(), c], a).unwrap();
//! assert!(spec.check_conditions(Budget::default()).concludes(Property::SelfDual));
//! ```

pub mod budget;
pub mod code;
pub mod constructions;
pub mod error;
pub mod matrix;
pub mod mpc;
pub mod ring;
pub mod text;

pub use budget::Budget;
pub use code::{hamming_weight, inner_product, CodeVector, LinearCode};
pub use constructions::{
    adiag1_matrix_a, adiag1_matrix_b, adiag3_matrix, block_adiag_matrix, block_printed_odd_bound,
    diag1_matrix, prime_square_codes, resolve_u, CertifiedMatrix,
};
pub use error::{Error, Result};
pub use matrix::{GramShape, Matrix};
pub use mpc::{row_codes, Conclusion, ConditionId, ConditionResult, MpcReport, MpcSpec, Property};
pub use ring::{Ring, RingElement};

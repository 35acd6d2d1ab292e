//! Fast symmetric matrix products `A * A^T` over finite fields and the
//! complex numbers.
//!
//! ```
//! use fastsyrk::{random_matrix, syrk_fast, OpCount, PrimeField, RecursionPolicy, SyrkPlan};
//!
//! let f = PrimeField::new(131071).unwrap();
//! let plan = SyrkPlan::new(f.clone(), RecursionPolicy::new(8, None).unwrap()).unwrap();
//! let a = random_matrix(&f, 32, 32, 1);
//! let c = syrk_fast(&plan, &a, &mut OpCount::default()).unwrap();
//! assert_eq!(c.rows(), 32);
//! ```

pub mod error;
pub mod field;
pub mod matrix;
pub mod opcount;
pub mod scaled;
pub mod syrk;
pub mod winograd;

pub use error::{Error, Result};
pub use field::{
    skew_orthogonal, skew_unitary, BinaryField, ComplexField, Field, Fp2, PrimeField, QuadExtField, RealField,
    SkewForm, SkewOrthogonal, SkewSource, SqrtField,
};
pub use matrix::{
    gemm_classical, herk_classical, random_matrix, read_matrix, syrk_classical, write_matrix, MatMut, MatRef, Matrix,
    OpCount,
};
pub use opcount::{count, table5, table5_csv, Algorithm, CountModel, HalfConvention};
pub use scaled::{syrkbd, syrkd, Block, BlockDiagonal, DiagonalScaling};
pub use syrk::{
    gemm_3m_complex, herk_fast, syrk_2m_complex, syrk_dc, syrk_fast, syrk_fast_acc, syrk_fast_into,
    syrk_fast_traced, ComplexTally, SyrkPlan, SyrkTrace,
};
pub use winograd::{gemm_winograd, gemm_winograd_acc, gemm_winograd_into, RecursionPolicy};

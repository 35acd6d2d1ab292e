//! Symmetric products `A * A^T` (and `A * conj(A)^T`).
//!
//! The fast path needs five half-size products per level instead of the
//! eight of the block-classical method: three recursive symmetric products
//! and two general ones. It relies on a skew-orthogonal `Y`.

mod complex;
mod dc;
mod fast;

pub use complex::{gemm_3m_complex, split_complex, syrk_2m_complex, ComplexTally};
pub use dc::syrk_dc;
pub use fast::{herk_fast, syrk_fast, syrk_fast_acc, syrk_fast_into, syrk_fast_traced, SyrkTrace};

use crate::error::{Error, Result};
use crate::field::{skew_unitary, Field, QuadExtField, SkewForm, SkewOrthogonal, SkewSource};
use crate::winograd::RecursionPolicy;

/// Everything the fast product needs besides its operands.
#[derive(Debug, Clone)]
pub struct SyrkPlan<F: Field> {
    field: F,
    form: SkewForm<F::Elem>,
    ycost: u8,
    policy: RecursionPolicy,
    mirror_output: bool,
    herm: bool,
}

impl<F: SkewSource> SyrkPlan<F> {
    pub fn new(field: F, policy: RecursionPolicy) -> Result<Self> {
        let (form, ycost) = field.skew_form()?;
        Self::from_parts(field, form, ycost, policy, false)
    }
}

impl SyrkPlan<QuadExtField> {
    /// Plan for `A * conj(A)^T`, using `Y` with `Y * conj(Y)^T = -I`.
    pub fn hermitian(field: QuadExtField, policy: RecursionPolicy) -> Result<Self> {
        let y = skew_unitary(&field, 0)?;
        Self::from_parts(field, y.form, y.ycost, policy, true)
    }
}

impl<F: Field> SyrkPlan<F> {
    /// Plan with an explicit `Y`. The caller vouches for `Y * Y^T = -I`
    /// (or `Y * conj(Y)^T = -I` when `herm` is set).
    pub fn from_parts(
        field: F,
        form: SkewForm<F::Elem>,
        ycost: u8,
        policy: RecursionPolicy,
        herm: bool,
    ) -> Result<Self> {
        if policy.threshold < 2 {
            return Err(Error::InvalidParameter(format!(
                "threshold must be at least 2, got {}",
                policy.threshold
            )));
        }
        Ok(SyrkPlan {
            field,
            form,
            ycost,
            policy,
            mirror_output: false,
            herm,
        })
    }

    /// Fill the upper triangle of the result so it is exactly symmetric
    /// (Hermitian for conjugate plans). Otherwise the upper triangle holds
    /// scratch values.
    pub fn with_mirror(mut self, on: bool) -> Self {
        self.mirror_output = on;
        self
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn policy(&self) -> &RecursionPolicy {
        &self.policy
    }

    pub fn ycost(&self) -> u8 {
        self.ycost
    }

    pub fn is_hermitian(&self) -> bool {
        self.herm
    }

    pub fn mirror_output(&self) -> bool {
        self.mirror_output
    }

    /// `Y` at dimension `dim`; the same form serves every level.
    pub fn skew(&self, dim: usize) -> Result<SkewOrthogonal<F::Elem>> {
        SkewOrthogonal::new(self.form, dim, self.ycost)
    }
}

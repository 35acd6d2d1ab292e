//! Scalar arithmetic.
//!
//! Every matrix routine in the crate is generic over [`Field`], a runtime
//! descriptor (the modulus of a prime field is only known at run time) that
//! performs arithmetic on plain `Copy` elements.

mod binary;
mod complex;
mod prime;
mod quad;
mod real;
mod skew;

pub use binary::{BinaryField, IRREDUCIBLE_POLYNOMIALS};
pub use complex::ComplexField;
pub use prime::PrimeField;
pub use quad::{Fp2, QuadExtField};
pub use real::RealField;
pub use skew::{skew_orthogonal, skew_unitary, SkewForm, SkewOrthogonal, SkewSource};

use crate::error::Result;
use rand::RngCore;
use std::fmt::Debug;

/// A commutative field (or, for [`RealField`], its floating-point stand-in).
///
/// Descriptors are immutable once built and can be shared freely between
/// threads.
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Copy + PartialEq + Debug + Send + Sync + 'static;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn sub(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    fn neg(&self, a: Self::Elem) -> Self::Elem;
    fn mul(&self, a: Self::Elem, b: Self::Elem) -> Self::Elem;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self, a: Self::Elem) -> Option<Self::Elem>;
    /// Image of an integer under the canonical ring map.
    fn from_i64(&self, v: i64) -> Self::Elem;
    /// Zero for the complex and real descriptors.
    fn characteristic(&self) -> u64;
    fn random_elem(&self, rng: &mut dyn RngCore) -> Self::Elem;

    /// Short human-readable description, e.g. `F_131071`.
    fn name(&self) -> String;
    fn format_elem(&self, a: Self::Elem) -> String;
    fn parse_elem(&self, s: &str) -> std::result::Result<Self::Elem, String>;

    fn is_zero(&self, a: Self::Elem) -> bool {
        a == self.zero()
    }

    fn is_one(&self, a: Self::Elem) -> bool {
        a == self.one()
    }

    /// Field automorphism used by conjugate transposition. Identity unless
    /// overridden.
    fn conj(&self, a: Self::Elem) -> Self::Elem {
        a
    }

    /// Whether results must be compared exactly. Floating-point descriptors
    /// return `false`.
    fn is_exact(&self) -> bool {
        true
    }

    /// `sum_{l < len} a(l) * b(l)`. Implementations may delay reductions, the
    /// result must equal the naive left fold.
    #[inline]
    fn dot<A, B>(&self, len: usize, a: A, b: B) -> Self::Elem
    where
        A: Fn(usize) -> Self::Elem,
        B: Fn(usize) -> Self::Elem,
    {
        let mut acc = self.zero();
        for l in 0..len {
            acc = self.add(acc, self.mul(a(l), b(l)));
        }
        acc
    }

    fn pow(&self, mut base: Self::Elem, mut e: u128) -> Self::Elem {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }
}

/// Fields whose squares can be recognised and rooted.
pub trait SqrtField: Field {
    fn is_square(&self, a: Self::Elem) -> bool;

    /// A deterministic square root; see each implementation for which of the
    /// two roots is returned.
    fn sqrt(&self, a: Self::Elem) -> Result<Self::Elem>;

    /// Factor `Y` with `Y * Y^T = diag(alpha, beta)` for two non-squares.
    fn nrsyf(&self, alpha: Self::Elem, beta: Self::Elem) -> Result<[[Self::Elem; 2]; 2]>;
}

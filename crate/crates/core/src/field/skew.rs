//! Matrices `Y` with `Y * Y^T = -I`.

use super::{BinaryField, ComplexField, Field, Fp2, PrimeField, QuadExtField};
use crate::error::{Error, Result};
use crate::matrix::{MatMut, Matrix, OpCount};

/// Compact description of a skew-orthogonal matrix.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SkewForm<E> {
    /// `Y = i * I` with `i^2 = -1`.
    ScalarRoot(E),
    /// `Y = [[a I, b I], [-b I, a I]]` with `a^2 + b^2 = -1`.
    Pair { a: E, b: E },
}

/// A skew-orthogonal matrix of a given dimension together with the number
/// of scalar operations its application costs per element.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SkewOrthogonal<E> {
    pub form: SkewForm<E>,
    pub dim: usize,
    /// 0 when applying `Y` is free, 1 for a scalar multiple, 2 for a pair
    /// with `a = 1`, 3 for a general pair.
    pub ycost: u8,
}

/// Fields that admit a skew-orthogonal matrix of every (even) dimension.
pub trait SkewSource: Field {
    /// The form used at every recursion level and its cost class.
    fn skew_form(&self) -> Result<(SkewForm<Self::Elem>, u8)>;
}

impl SkewSource for ComplexField {
    fn skew_form(&self) -> Result<(SkewForm<Self::Elem>, u8)> {
        Ok((SkewForm::ScalarRoot(num_complex::Complex64::new(0.0, 1.0)), 0))
    }
}

impl SkewSource for BinaryField {
    fn skew_form(&self) -> Result<(SkewForm<u32>, u8)> {
        Ok((SkewForm::ScalarRoot(1), 0))
    }
}

impl SkewSource for PrimeField {
    fn skew_form(&self) -> Result<(SkewForm<u64>, u8)> {
        let p = self.modulus();
        if p == 2 {
            return Ok((SkewForm::ScalarRoot(1), 0));
        }
        Ok(match p % 8 {
            1 | 5 => (SkewForm::ScalarRoot(self.sqrt_mod(p - 1)?), 1),
            3 => (
                SkewForm::Pair {
                    a: 1,
                    b: self.sqrt_mod(p - 2)?,
                },
                2,
            ),
            _ => {
                let (a, b) = self.sos(p - 1)?;
                (SkewForm::Pair { a, b }, 3)
            }
        })
    }
}

impl SkewSource for QuadExtField {
    /// `-1` is always a square in `F_{p^2}`.
    fn skew_form(&self) -> Result<(SkewForm<Fp2>, u8)> {
        let i = self.sqrt_elem(self.neg(self.one()))?;
        Ok((SkewForm::ScalarRoot(i), 1))
    }
}

/// Skew-orthogonal matrix of dimension `dim` over `field`.
pub fn skew_orthogonal<F: SkewSource>(field: &F, dim: usize) -> Result<SkewOrthogonal<F::Elem>> {
    let (form, ycost) = field.skew_form()?;
    SkewOrthogonal::new(form, dim, ycost)
}

/// `Y` with `Y * conj(Y)^T = -I` over `F_{p^2}`, for the conjugate-transpose
/// product.
///
/// When `-1` is a square modulo `p` its root in the prime subfield works.
/// Otherwise `p = 3 mod 4`, `i = sqrt(-1)` lies outside `F_p` so
/// `conj(i) = -i`, and `z = a + i b` with `a^2 + b^2 = -1` in `F_p` gives
/// `z * conj(z) = a^2 + b^2 = -1`.
pub fn skew_unitary(field: &QuadExtField, dim: usize) -> Result<SkewOrthogonal<Fp2>> {
    let base = field.base();
    let p = field.modulus();
    let minus_one = p - 1;
    let z = if base.legendre(minus_one)? == 1 {
        field.embed(base.sqrt_mod(minus_one)?)
    } else {
        let (a, b) = base.sos(minus_one)?;
        let i = field.sqrt_elem(field.neg(field.one()))?;
        field.add(field.embed(a), field.mul(i, field.embed(b)))
    };
    SkewOrthogonal::new(SkewForm::ScalarRoot(z), dim, 1)
}

impl<E: Copy> SkewOrthogonal<E> {
    pub fn new(form: SkewForm<E>, dim: usize, ycost: u8) -> Result<Self> {
        if matches!(form, SkewForm::Pair { .. }) && dim % 2 == 1 {
            return Err(Error::DimensionParity(dim));
        }
        Ok(SkewOrthogonal { form, dim, ycost })
    }

    pub fn with_dim(&self, dim: usize) -> Result<Self> {
        Self::new(self.form, dim, self.ycost)
    }

    /// Dense `dim x dim` matrix.
    pub fn materialize<F: Field<Elem = E>>(&self, f: &F) -> Matrix<E> {
        let n = self.dim;
        let mut y = Matrix::zeros(f, n, n);
        match self.form {
            SkewForm::ScalarRoot(i) => {
                for j in 0..n {
                    y.set(j, j, i);
                }
            }
            SkewForm::Pair { a, b } => {
                let t = n / 2;
                for j in 0..t {
                    y.set(j, j, a);
                    y.set(j, j + t, b);
                    y.set(j + t, j, f.neg(b));
                    y.set(j + t, j + t, a);
                }
            }
        }
        y
    }

    /// `x <- x * Y` in place.
    ///
    /// Counted cost per element follows `ycost`: nothing for a free root,
    /// one multiplication for a scalar root, and for a pair one
    /// multiplication (`a = 1`) or two, plus one addition.
    pub fn apply_right<F: Field<Elem = E>>(&self, f: &F, x: &mut MatMut<'_, E>, cnt: &mut OpCount) -> Result<()> {
        if x.cols() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "Y is {0}x{0}, operand has {1} columns",
                self.dim,
                x.cols()
            )));
        }
        let (rows, cols) = (x.rows(), x.cols());
        let elems = (rows * cols) as u64;
        match self.form {
            SkewForm::ScalarRoot(i) => {
                if self.ycost == 0 && f.is_one(i) {
                    return Ok(());
                }
                for r in 0..rows {
                    for c in 0..cols {
                        let v = f.mul(x.get(r, c), i);
                        x.set(r, c, v);
                    }
                }
                if self.ycost > 0 {
                    cnt.mults += elems;
                }
            }
            SkewForm::Pair { a, b } => {
                let t = cols / 2;
                let unit = f.is_one(a);
                for r in 0..rows {
                    for c in 0..t {
                        let (x1, x2) = (x.get(r, c), x.get(r, c + t));
                        let (ax1, ax2) = if unit { (x1, x2) } else { (f.mul(a, x1), f.mul(a, x2)) };
                        x.set(r, c, f.sub(ax1, f.mul(b, x2)));
                        x.set(r, c + t, f.add(f.mul(b, x1), ax2));
                    }
                }
                cnt.mults += if unit { elems } else { 2 * elems };
                cnt.adds += elems;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::gemm_classical;

    fn check_skew<F: Field>(f: &F, y: &SkewOrthogonal<F::Elem>, herm: bool) {
        let m = y.materialize(f);
        let n = y.dim;
        let mut adj = Matrix::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                let v = m.get(j, i);
                adj.set(i, j, if herm { f.conj(v) } else { v });
            }
        }
        let mut prod = Matrix::zeros(f, n, n);
        gemm_classical(f, f.one(), m.as_ref(), adj.as_ref(), f.zero(), prod.as_mut(), &mut OpCount::default()).unwrap();
        for i in 0..n {
            for j in 0..n {
                let want = if i == j { f.neg(f.one()) } else { f.zero() };
                assert_eq!(prod.get(i, j), want, "{} at ({i},{j})", f.name());
            }
        }
    }

    #[test]
    fn case_analysis() {
        let f5 = PrimeField::new(5).unwrap();
        assert_eq!(skew_orthogonal(&f5, 4).unwrap().form, SkewForm::ScalarRoot(2));
        let f11 = PrimeField::new(11).unwrap();
        let y = skew_orthogonal(&f11, 4).unwrap();
        assert_eq!(y.form, SkewForm::Pair { a: 1, b: 3 });
        assert_eq!(y.ycost, 2);
        let big = PrimeField::new(131071).unwrap();
        let y = skew_orthogonal(&big, 8).unwrap();
        let SkewForm::Pair { a, b } = y.form else { panic!("expected a pair") };
        assert_eq!(big.add(big.mul(a, a), big.mul(b, b)), 131070);
        assert_eq!(y.ycost, 3);
        check_skew(&big, &y, false);
        assert_eq!(skew_orthogonal(&f11, 3), Err(Error::DimensionParity(3)));
    }

    #[test]
    fn dense_identity_holds() {
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 131041] {
            let f = PrimeField::new(p).unwrap();
            check_skew(&f, &skew_orthogonal(&f, 6).unwrap(), false);
        }
        let gf = BinaryField::new(4).unwrap();
        check_skew(&gf, &skew_orthogonal(&gf, 5).unwrap(), false);
        let q = QuadExtField::new(7).unwrap();
        check_skew(&q, &skew_orthogonal(&q, 4).unwrap(), false);
    }

    #[test]
    fn unitary_over_extensions() {
        let q5 = QuadExtField::new(5).unwrap();
        assert_eq!(skew_unitary(&q5, 2).unwrap().form, SkewForm::ScalarRoot(q5.embed(2)));
        for p in [3u64, 7, 11, 19, 23, 31, 43, 47, 59, 67, 71, 79, 83] {
            let q = QuadExtField::new(p).unwrap();
            let y = skew_unitary(&q, 4).unwrap();
            let SkewForm::ScalarRoot(z) = y.form else { panic!() };
            assert_eq!(q.mul(z, q.conj(z)), q.neg(q.one()));
            check_skew(&q, &y, true);
        }
    }

    #[test]
    fn pair_application_on_identity() {
        let f = PrimeField::new(11).unwrap();
        let y = skew_orthogonal(&f, 2).unwrap();
        let mut a = Matrix::identity(&f, 2);
        let mut cnt = OpCount::default();
        y.apply_right(&f, &mut a.as_mut(), &mut cnt).unwrap();
        assert_eq!(a.data(), &[1, 3, 8, 1]);
        assert_eq!(cnt, OpCount { mults: 4, adds: 4 });
    }

    #[test]
    fn binary_root_is_identity() {
        let f = BinaryField::new(1).unwrap();
        let y = skew_orthogonal(&f, 3).unwrap();
        let mut a = Matrix::from_vec(2, 3, vec![1, 0, 1, 1, 1, 0]).unwrap();
        let before = a.clone();
        let mut cnt = OpCount::default();
        y.apply_right(&f, &mut a.as_mut(), &mut cnt).unwrap();
        assert_eq!(a, before);
        assert_eq!(cnt.total(), 0);
    }
}

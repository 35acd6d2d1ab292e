//! Classical kernels with explicit operation counting.

use super::{MatMut, MatRef, OpCount};
use crate::error::{Error, Result};
use crate::field::Field;

fn check_same_shape<E: Copy>(c: &MatMut<'_, E>, x: &MatRef<'_, E>) -> Result<()> {
    if (c.rows(), c.cols()) != (x.rows(), x.cols()) {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} and {}x{}",
            c.rows(),
            c.cols(),
            x.rows(),
            x.cols()
        )));
    }
    Ok(())
}

fn check_square<E: Copy>(c: &MatMut<'_, E>) -> Result<()> {
    if c.rows() != c.cols() {
        return Err(Error::NotSquare {
            rows: c.rows(),
            cols: c.cols(),
        });
    }
    Ok(())
}

/// Store `alpha * d + beta * c_old` and count the scaling work.
#[inline]
fn finish<F: Field>(f: &F, alpha: F::Elem, d: F::Elem, beta: F::Elem, old: F::Elem, cnt: &mut OpCount) -> F::Elem {
    let d = if f.is_one(alpha) {
        d
    } else {
        cnt.mults += 1;
        f.mul(alpha, d)
    };
    if f.is_zero(beta) {
        return d;
    }
    let t = if f.is_one(beta) {
        old
    } else {
        cnt.mults += 1;
        f.mul(beta, old)
    };
    cnt.adds += 1;
    f.add(d, t)
}

/// `C <- alpha * A * B + beta * C`.
///
/// Each entry of the plain product costs `k` multiplications and `k - 1`
/// additions.
pub fn gemm_classical<F: Field>(
    f: &F,
    alpha: F::Elem,
    a: MatRef<'_, F::Elem>,
    b: MatRef<'_, F::Elem>,
    beta: F::Elem,
    mut c: MatMut<'_, F::Elem>,
    cnt: &mut OpCount,
) -> Result<()> {
    let (m, k, p) = (a.rows(), a.cols(), b.cols());
    if b.rows() != k || c.rows() != m || c.cols() != p {
        return Err(Error::DimensionMismatch(format!(
            "{m}x{k} times {}x{p} into {}x{}",
            b.rows(),
            c.rows(),
            c.cols()
        )));
    }
    for i in 0..m {
        for j in 0..p {
            let d = f.dot(k, |l| a.at(f, i, l), |l| b.at(f, l, j));
            let v = finish(f, alpha, d, beta, c.get(i, j), cnt);
            c.set(i, j, v);
        }
    }
    if k > 0 {
        let entries = (m * p) as u64;
        cnt.mults += entries * k as u64;
        cnt.adds += entries * (k as u64 - 1);
    }
    Ok(())
}

/// `C <- A * B`, assuming the shapes were checked by the caller.
pub(crate) fn gemm_plain<F: Field>(
    f: &F,
    a: MatRef<'_, F::Elem>,
    b: MatRef<'_, F::Elem>,
    c: MatMut<'_, F::Elem>,
    cnt: &mut OpCount,
) {
    gemm_classical(f, f.one(), a, b, f.zero(), c, cnt).expect("shapes checked by caller");
}

pub(crate) fn syrk_classical_impl<F: Field>(
    f: &F,
    alpha: F::Elem,
    a: MatRef<'_, F::Elem>,
    beta: F::Elem,
    mut c: MatMut<'_, F::Elem>,
    herm: bool,
    cnt: &mut OpCount,
) -> Result<()> {
    let (n, k) = (a.rows(), a.cols());
    if c.rows() != n || c.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "{n}x{k} operand needs a {n}x{n} output, got {}x{}",
            c.rows(),
            c.cols()
        )));
    }
    let at = a.adj(herm);
    for i in 0..n {
        for j in 0..=i {
            let d = f.dot(k, |l| a.at(f, i, l), |l| at.at(f, l, j));
            let v = finish(f, alpha, d, beta, c.get(i, j), cnt);
            c.set(i, j, v);
        }
    }
    if k > 0 {
        let entries = (n * (n + 1) / 2) as u64;
        cnt.mults += entries * k as u64;
        cnt.adds += entries * (k as u64 - 1);
    }
    Ok(())
}

/// `Low(C) <- Low(alpha * A * A^T + beta * C)`; the strict upper triangle
/// is left untouched.
pub fn syrk_classical<F: Field>(
    f: &F,
    alpha: F::Elem,
    a: MatRef<'_, F::Elem>,
    beta: F::Elem,
    c: MatMut<'_, F::Elem>,
    cnt: &mut OpCount,
) -> Result<()> {
    syrk_classical_impl(f, alpha, a, beta, c, false, cnt)
}

/// `Low(C) <- Low(alpha * A * conj(A)^T + beta * C)`.
pub fn herk_classical<F: Field>(
    f: &F,
    alpha: F::Elem,
    a: MatRef<'_, F::Elem>,
    beta: F::Elem,
    c: MatMut<'_, F::Elem>,
    cnt: &mut OpCount,
) -> Result<()> {
    syrk_classical_impl(f, alpha, a, beta, c, true, cnt)
}

/// `Low(C) += Low(X)`: a half addition, `m(m+1)/2` counted additions.
pub fn add_lower<F: Field>(f: &F, mut c: MatMut<'_, F::Elem>, x: MatRef<'_, F::Elem>, cnt: &mut OpCount) -> Result<()> {
    check_square(&c)?;
    check_same_shape(&c, &x)?;
    let n = c.rows();
    for i in 0..n {
        for j in 0..=i {
            let v = f.add(c.get(i, j), x.at(f, i, j));
            c.set(i, j, v);
        }
    }
    cnt.adds += (n * (n + 1) / 2) as u64;
    Ok(())
}

/// `C += X` on every entry.
pub fn add_full<F: Field>(f: &F, mut c: MatMut<'_, F::Elem>, x: MatRef<'_, F::Elem>, cnt: &mut OpCount) -> Result<()> {
    check_same_shape(&c, &x)?;
    combine(f, c.rb_mut(), x, Combine::Add, cnt);
    Ok(())
}

/// `Low(C) <- alpha * Low(C)`; free when `alpha = 1`.
pub fn scale_lower<F: Field>(f: &F, alpha: F::Elem, mut c: MatMut<'_, F::Elem>, cnt: &mut OpCount) -> Result<()> {
    check_square(&c)?;
    if f.is_one(alpha) {
        return Ok(());
    }
    let n = c.rows();
    for i in 0..n {
        for j in 0..=i {
            let v = f.mul(alpha, c.get(i, j));
            c.set(i, j, v);
        }
    }
    cnt.mults += (n * (n + 1) / 2) as u64;
    Ok(())
}

/// Copy the strict lower triangle onto the upper one, making `C`
/// symmetric.
pub fn mirror_lower_to_upper<E: Copy>(mut c: MatMut<'_, E>) -> Result<()> {
    check_square(&c)?;
    for i in 0..c.rows() {
        for j in 0..i {
            let v = c.get(i, j);
            c.set(j, i, v);
        }
    }
    Ok(())
}

/// Hermitian counterpart of [`mirror_lower_to_upper`].
pub(crate) fn mirror_lower_to_upper_conj<F: Field>(f: &F, mut c: MatMut<'_, F::Elem>) {
    for i in 0..c.rows() {
        for j in 0..i {
            let v = f.conj(c.get(i, j));
            c.set(j, i, v);
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub(crate) enum Combine {
    /// `dst += x`
    Add,
    /// `dst -= x`
    Sub,
    /// `dst = x - dst`
    RevSub,
}

/// Elementwise update of `dst` by `x`; one counted addition per entry.
pub(crate) fn combine<F: Field>(f: &F, mut dst: MatMut<'_, F::Elem>, x: MatRef<'_, F::Elem>, op: Combine, cnt: &mut OpCount) {
    debug_assert_eq!((dst.rows(), dst.cols()), (x.rows(), x.cols()));
    for i in 0..dst.rows() {
        for j in 0..dst.cols() {
            let (d, v) = (dst.get(i, j), x.at(f, i, j));
            let r = match op {
                Combine::Add => f.add(d, v),
                Combine::Sub => f.sub(d, v),
                Combine::RevSub => f.sub(v, d),
            };
            dst.set(i, j, r);
        }
    }
    cnt.adds += (dst.rows() * dst.cols()) as u64;
}

/// `dst = a + b`.
pub(crate) fn add_to<F: Field>(
    f: &F,
    mut dst: MatMut<'_, F::Elem>,
    a: MatRef<'_, F::Elem>,
    b: MatRef<'_, F::Elem>,
    cnt: &mut OpCount,
) {
    for i in 0..dst.rows() {
        for j in 0..dst.cols() {
            dst.set(i, j, f.add(a.at(f, i, j), b.at(f, i, j)));
        }
    }
    cnt.adds += (dst.rows() * dst.cols()) as u64;
}

/// `dst = a - b`.
pub(crate) fn sub_to<F: Field>(
    f: &F,
    mut dst: MatMut<'_, F::Elem>,
    a: MatRef<'_, F::Elem>,
    b: MatRef<'_, F::Elem>,
    cnt: &mut OpCount,
) {
    for i in 0..dst.rows() {
        for j in 0..dst.cols() {
            dst.set(i, j, f.sub(a.at(f, i, j), b.at(f, i, j)));
        }
    }
    cnt.adds += (dst.rows() * dst.cols()) as u64;
}

/// `dst = -dst`, counted as one addition per entry.
pub(crate) fn neg_assign<F: Field>(f: &F, mut dst: MatMut<'_, F::Elem>, cnt: &mut OpCount) {
    for i in 0..dst.rows() {
        for j in 0..dst.cols() {
            let v = f.neg(dst.get(i, j));
            dst.set(i, j, v);
        }
    }
    cnt.adds += (dst.rows() * dst.cols()) as u64;
}

pub(crate) fn copy_block<F: Field>(f: &F, mut dst: MatMut<'_, F::Elem>, src: MatRef<'_, F::Elem>) {
    dst.copy_from(f, src);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{BinaryField, ComplexField, PrimeField};
    use crate::matrix::{random_matrix, Matrix};

    fn f101() -> PrimeField {
        PrimeField::new(101).unwrap()
    }

    #[test]
    fn small_product() {
        let f = f101();
        let a = Matrix::from_vec(2, 2, vec![1, 2, 3, 4]).unwrap();
        let b = Matrix::from_vec(2, 2, vec![5, 6, 7, 8]).unwrap();
        let mut c = Matrix::zeros(&f, 2, 2);
        let mut cnt = OpCount::default();
        gemm_classical(&f, 1, a.as_ref(), b.as_ref(), 0, c.as_mut(), &mut cnt).unwrap();
        assert_eq!(c.data(), &[19, 22, 43, 50]);
        assert_eq!(cnt, OpCount { mults: 8, adds: 4 });
    }

    #[test]
    fn plain_counts() {
        let f = f101();
        let a = random_matrix(&f, 4, 4, 1);
        let mut c = Matrix::zeros(&f, 4, 4);
        let mut cnt = OpCount::default();
        gemm_classical(&f, 1, a.as_ref(), a.as_ref(), 0, c.as_mut(), &mut cnt).unwrap();
        assert_eq!(cnt.total(), 112);
        for (n, want) in [(4, 70), (8, 540), (16, 4216), (32, 33264), (64, 264160)] {
            let a = random_matrix(&f, n, n, 2);
            let mut c = Matrix::zeros(&f, n, n);
            let mut cnt = OpCount::default();
            syrk_classical(&f, 1, a.as_ref(), 0, c.as_mut(), &mut cnt).unwrap();
            assert_eq!(cnt.total(), want, "n = {n}");
        }
    }

    #[test]
    fn identity_product() {
        let f = f101();
        let a = random_matrix(&f, 3, 5, 9);
        let mut c = Matrix::zeros(&f, 3, 5);
        let mut cnt = OpCount::default();
        gemm_classical(&f, 1, Matrix::identity(&f, 3).as_ref(), a.as_ref(), 0, c.as_mut(), &mut cnt).unwrap();
        assert_eq!(c, a);
        assert_eq!(cnt, OpCount { mults: 45, adds: 30 });
    }

    #[test]
    fn syrk_small_and_untouched_upper() {
        let f = f101();
        let a = Matrix::from_vec(2, 2, vec![1, 2, 3, 4]).unwrap();
        let mut c = Matrix::from_vec(2, 2, vec![0, 77, 0, 0]).unwrap();
        syrk_classical(&f, 1, a.as_ref(), 0, c.as_mut(), &mut OpCount::default()).unwrap();
        assert_eq!(c.data(), &[5, 77, 11, 25]);
    }

    #[test]
    fn syrk_matches_gemm_over_fields() {
        fn check<F: Field>(f: &F) {
            let a = random_matrix(f, 9, 6, 3);
            let mut g = Matrix::zeros(f, 9, 9);
            gemm_classical(f, f.one(), a.as_ref(), a.as_ref().t(), f.zero(), g.as_mut(), &mut OpCount::default())
                .unwrap();
            let mut s = Matrix::zeros(f, 9, 9);
            syrk_classical(f, f.one(), a.as_ref(), f.zero(), s.as_mut(), &mut OpCount::default()).unwrap();
            assert!(s.lower_eq(&g), "{}", f.name());
        }
        check(&f101());
        check(&BinaryField::new(5).unwrap());
        check(&ComplexField);
    }

    #[test]
    fn alpha_beta() {
        let f = f101();
        let a = random_matrix(&f, 5, 3, 4);
        let c0 = random_matrix(&f, 5, 5, 5);
        let mut c = c0.clone();
        syrk_classical(&f, 3, a.as_ref(), 7, c.as_mut(), &mut OpCount::default()).unwrap();
        for i in 0..5 {
            for j in 0..=i {
                let d = (0..3).fold(0, |s, l| f.add(s, f.mul(a.get(i, l), a.get(j, l))));
                assert_eq!(c.get(i, j), f.add(f.mul(3, d), f.mul(7, c0.get(i, j))));
            }
        }
    }

    #[test]
    fn additions_and_mirror() {
        let f = f101();
        let mut c = Matrix::from_vec(2, 2, vec![1, 0, 2, 3]).unwrap();
        let x = Matrix::zeros(&f, 2, 2);
        let mut cnt = OpCount::default();
        add_lower(&f, c.as_mut(), x.as_ref(), &mut cnt).unwrap();
        assert_eq!(cnt.adds, 3);
        add_full(&f, c.as_mut(), x.as_ref(), &mut cnt).unwrap();
        assert_eq!(cnt.adds, 7);
        mirror_lower_to_upper(c.as_mut()).unwrap();
        assert_eq!(c.data(), &[1, 2, 2, 3]);
        let once = c.clone();
        mirror_lower_to_upper(c.as_mut()).unwrap();
        assert_eq!(c, once);
        let mut rect = Matrix::zeros(&f, 2, 3);
        assert!(mirror_lower_to_upper(rect.as_mut()).is_err());
        assert!(add_full(&f, rect.as_mut(), x.as_ref(), &mut cnt).is_err());
    }

    #[test]
    fn dimension_mismatch() {
        let f = f101();
        let a = Matrix::zeros(&f, 2, 3);
        let mut c = Matrix::zeros(&f, 2, 2);
        assert!(gemm_classical(&f, 1, a.as_ref(), a.as_ref(), 0, c.as_mut(), &mut OpCount::default()).is_err());
    }
}

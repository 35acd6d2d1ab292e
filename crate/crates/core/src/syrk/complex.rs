use crate::error::{Error, Result};
use crate::field::RealField;
use crate::matrix::{add_to, sub_to, Matrix, OpCount};
use crate::winograd::{gemm_winograd, RecursionPolicy};
use num_complex::Complex64;

/// Bookkeeping for the complex products built from real ones.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ComplexTally {
    /// Real matrix products performed.
    pub real_products: usize,
    /// Real scalar operations, including those inside the products.
    pub ops: OpCount,
}

/// Real and imaginary parts.
pub fn split_complex(a: &Matrix<Complex64>) -> (Matrix<f64>, Matrix<f64>) {
    (a.map(|z| z.re), a.map(|z| z.im))
}

fn real_product(
    a: &Matrix<f64>,
    b: &Matrix<f64>,
    policy: &RecursionPolicy,
    tally: &mut ComplexTally,
) -> Result<Matrix<f64>> {
    tally.real_products += 1;
    gemm_winograd(&RealField, a, b, policy, &mut tally.ops)
}

fn sum(a: &Matrix<f64>, b: &Matrix<f64>, tally: &mut ComplexTally) -> Matrix<f64> {
    let mut s = Matrix::zeros(&RealField, a.rows(), a.cols());
    add_to(&RealField, s.as_mut(), a.as_ref(), b.as_ref(), &mut tally.ops);
    s
}

fn diff(a: &Matrix<f64>, b: &Matrix<f64>, tally: &mut ComplexTally) -> Matrix<f64> {
    let mut s = Matrix::zeros(&RealField, a.rows(), a.cols());
    sub_to(&RealField, s.as_mut(), a.as_ref(), b.as_ref(), &mut tally.ops);
    s
}

fn join(re: &Matrix<f64>, im: &Matrix<f64>) -> Matrix<Complex64> {
    Matrix::from_fn(re.rows(), re.cols(), |i, j| Complex64::new(re.get(i, j), im.get(i, j)))
}

/// Full symmetric `A * A^T` for complex `A` using two real products:
/// with `H = Re(A) Im(A)^T` and `G = (Re A + Im A)(Re A - Im A)^T`,
/// the real part is `G + H - H^T` and the imaginary part `H + H^T`.
pub fn syrk_2m_complex(
    a: &Matrix<Complex64>,
    policy: &RecursionPolicy,
    tally: &mut ComplexTally,
) -> Result<Matrix<Complex64>> {
    let (ar, ai) = split_complex(a);
    let h = real_product(&ar, &ai.transpose(), policy, tally)?;
    let x = sum(&ar, &ai, tally);
    let z = diff(&ar, &ai, tally);
    let g = real_product(&x, &z.transpose(), policy, tally)?;
    let ht = h.transpose();
    let re = diff(&sum(&g, &h, tally), &ht, tally);
    let im = sum(&h, &ht, tally);
    Ok(join(&re, &im))
}

/// `A * B` for complex matrices using three real products.
pub fn gemm_3m_complex(
    a: &Matrix<Complex64>,
    b: &Matrix<Complex64>,
    policy: &RecursionPolicy,
    tally: &mut ComplexTally,
) -> Result<Matrix<Complex64>> {
    if a.cols() != b.rows() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols()
        )));
    }
    let (ar, ai) = split_complex(a);
    let (br, bi) = split_complex(b);
    let t1 = real_product(&ar, &br, policy, tally)?;
    let t2 = real_product(&ai, &bi, policy, tally)?;
    let t3 = real_product(&sum(&ar, &ai, tally), &sum(&br, &bi, tally), policy, tally)?;
    let re = diff(&t1, &t2, tally);
    let im = diff(&diff(&t3, &t1, tally), &t2, tally);
    Ok(join(&re, &im))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::ComplexField;
    use crate::matrix::{gemm_classical, random_matrix};

    fn close(x: &Matrix<Complex64>, y: &Matrix<Complex64>) -> bool {
        x.data().iter().zip(y.data()).all(|(a, b)| (a - b).norm() <= 1e-9 * b.norm().max(1.0))
    }

    fn product(a: &Matrix<Complex64>, b: &Matrix<Complex64>) -> Matrix<Complex64> {
        let mut c = Matrix::zeros(&ComplexField, a.rows(), b.cols());
        let one = Complex64::new(1.0, 0.0);
        gemm_classical(&ComplexField, one, a.as_ref(), b.as_ref(), Complex64::default(), c.as_mut(), &mut OpCount::default())
            .unwrap();
        c
    }

    #[test]
    fn two_products_for_symmetric() {
        let a = random_matrix(&ComplexField, 20, 13, 1);
        let mut t = ComplexTally::default();
        let c = syrk_2m_complex(&a, &RecursionPolicy::new(4, None).unwrap(), &mut t).unwrap();
        assert_eq!(t.real_products, 2);
        assert!(close(&c, &product(&a, &a.transpose())));
    }

    #[test]
    fn three_products_for_general() {
        let a = random_matrix(&ComplexField, 9, 16, 2);
        let b = random_matrix(&ComplexField, 16, 5, 3);
        let mut t = ComplexTally::default();
        let c = gemm_3m_complex(&a, &b, &RecursionPolicy::default(), &mut t).unwrap();
        assert_eq!(t.real_products, 3);
        assert!(close(&c, &product(&a, &b)));
        assert!(gemm_3m_complex(&a, &a, &RecursionPolicy::default(), &mut t).is_err());
    }
}

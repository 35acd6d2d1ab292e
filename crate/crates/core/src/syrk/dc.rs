use crate::error::Result;
use crate::field::Field;
use crate::matrix::{add_full, add_lower, syrk_classical_impl, MatMut, MatRef, Matrix, OpCount};
use crate::winograd::{winograd_rec, RecursionPolicy};

/// `Low(A * A^T)` by block divide and conquer: four half-size symmetric
/// products and two general ones per level. The reference point for the
/// fast method.
pub fn syrk_dc<F: Field>(
    f: &F,
    a: &Matrix<F::Elem>,
    policy: &RecursionPolicy,
    cnt: &mut OpCount,
) -> Result<Matrix<F::Elem>> {
    let mut c = Matrix::zeros(f, a.rows(), a.rows());
    dc_rec(f, a.as_ref(), c.as_mut(), policy.threshold.max(2), policy.depth(), cnt);
    Ok(c)
}

fn dc_rec<F: Field>(
    f: &F,
    a: MatRef<'_, F::Elem>,
    c: MatMut<'_, F::Elem>,
    threshold: usize,
    levels: usize,
    cnt: &mut OpCount,
) {
    let (n, k) = (a.rows(), a.cols());
    if levels == 0 || n < threshold || k < threshold || n % 2 == 1 || k % 2 == 1 {
        syrk_classical_impl(f, f.one(), a, f.zero(), c, false, cnt).expect("square output");
        return;
    }
    let (m, h) = (n / 2, k / 2);
    let (a11, a12, a21, a22) = a.quadrants(m, h);
    let (mut c11, mut c12, mut c21, mut c22) = c.quadrants_mut(m, m);
    let lv = levels - 1;

    dc_rec(f, a11, c11.rb_mut(), threshold, lv, cnt);
    dc_rec(f, a12, c12.rb_mut(), threshold, lv, cnt);
    add_lower(f, c11.rb_mut(), c12.rb(), cnt).expect("square blocks");
    dc_rec(f, a21, c22.rb_mut(), threshold, lv, cnt);
    dc_rec(f, a22, c12.rb_mut(), threshold, lv, cnt);
    add_lower(f, c22.rb_mut(), c12.rb(), cnt).expect("square blocks");
    winograd_rec(f, a21, a11.t(), c21.rb_mut(), threshold, lv, cnt);
    winograd_rec(f, a22, a12.t(), c12.rb_mut(), threshold, lv, cnt);
    add_full(f, c21, c12.rb(), cnt).expect("square blocks");
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::matrix::{random_matrix, syrk_classical};

    #[test]
    fn agrees_with_classical() {
        let f = PrimeField::new(131071).unwrap();
        for (n, k, l) in [(8, 8, 1), (16, 16, 2), (16, 16, 3), (12, 20, 2), (7, 9, 2), (32, 32, 9)] {
            let a = random_matrix(&f, n, k, 11);
            let c = syrk_dc(&f, &a, &RecursionPolicy::levels(l), &mut OpCount::default()).unwrap();
            let mut want = Matrix::zeros(&f, n, n);
            syrk_classical(&f, 1, a.as_ref(), 0, want.as_mut(), &mut OpCount::default()).unwrap();
            assert!(c.lower_eq(&want), "{n}x{k} levels={l}");
        }
    }

    #[test]
    fn counts_for_small_cases() {
        let f = PrimeField::new(7).unwrap();
        for (n, l, want) in [(4, 1, 70), (8, 2, 604), (16, 3, 5048)] {
            let a = random_matrix(&f, n, n, 1);
            let mut cnt = OpCount::default();
            syrk_dc(&f, &a, &RecursionPolicy::levels(l), &mut cnt).unwrap();
            assert_eq!(cnt.total(), want, "n={n} levels={l}");
        }
    }
}

//! Strassen-Winograd matrix product: seven recursive products and fifteen
//! block additions per level.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{add_to, combine, gemm_classical, gemm_plain, sub_to, Combine, MatMut, MatRef, Matrix, OpCount};

/// When to stop recursing.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RecursionPolicy {
    /// Smallest dimension that is still split. At least 2.
    pub threshold: usize,
    /// Recursion depth cap; `None` recurses until the threshold stops it.
    pub max_levels: Option<usize>,
}

impl Default for RecursionPolicy {
    fn default() -> Self {
        RecursionPolicy {
            threshold: 64,
            max_levels: None,
        }
    }
}

impl RecursionPolicy {
    pub fn new(threshold: usize, max_levels: Option<usize>) -> Result<Self> {
        if threshold < 2 {
            return Err(Error::InvalidParameter(format!("threshold must be at least 2, got {threshold}")));
        }
        Ok(RecursionPolicy { threshold, max_levels })
    }

    /// Exactly `levels` levels wherever the dimensions allow it.
    pub fn levels(levels: usize) -> Self {
        RecursionPolicy {
            threshold: 2,
            max_levels: Some(levels),
        }
    }

    pub(crate) fn depth(&self) -> usize {
        self.max_levels.unwrap_or(usize::MAX)
    }
}

fn check_dims<E: Copy>(a: &MatRef<'_, E>, b: &MatRef<'_, E>, c: &MatMut<'_, E>) -> Result<()> {
    if a.cols() != b.rows() || c.rows() != a.rows() || c.cols() != b.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} times {}x{} into {}x{}",
            a.rows(),
            a.cols(),
            b.rows(),
            b.cols(),
            c.rows(),
            c.cols()
        )));
    }
    Ok(())
}

/// `A * B` into a new matrix.
pub fn gemm_winograd<F: Field>(
    f: &F,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
    policy: &RecursionPolicy,
    cnt: &mut OpCount,
) -> Result<Matrix<F::Elem>> {
    let mut c = Matrix::zeros(f, a.rows(), b.cols());
    gemm_winograd_into(f, a.as_ref(), b.as_ref(), c.as_mut(), policy, cnt)?;
    Ok(c)
}

/// `C <- A * B`.
pub fn gemm_winograd_into<F: Field>(
    f: &F,
    a: MatRef<'_, F::Elem>,
    b: MatRef<'_, F::Elem>,
    c: MatMut<'_, F::Elem>,
    policy: &RecursionPolicy,
    cnt: &mut OpCount,
) -> Result<()> {
    check_dims(&a, &b, &c)?;
    winograd_rec(f, a, b, c, policy.threshold.max(2), policy.depth(), cnt);
    Ok(())
}

/// `C <- alpha * A * B + beta * C`.
///
/// Without recursion this is the classical kernel working in place;
/// otherwise the product goes through a temporary.
pub fn gemm_winograd_acc<F: Field>(
    f: &F,
    alpha: F::Elem,
    a: MatRef<'_, F::Elem>,
    b: MatRef<'_, F::Elem>,
    beta: F::Elem,
    c: MatMut<'_, F::Elem>,
    policy: &RecursionPolicy,
    cnt: &mut OpCount,
) -> Result<()> {
    check_dims(&a, &b, &c)?;
    gemm_acc_levels(f, alpha, a, b, beta, c, policy.threshold.max(2), policy.depth(), cnt);
    Ok(())
}

pub(crate) fn gemm_acc_levels<F: Field>(
    f: &F,
    alpha: F::Elem,
    a: MatRef<'_, F::Elem>,
    b: MatRef<'_, F::Elem>,
    beta: F::Elem,
    mut c: MatMut<'_, F::Elem>,
    threshold: usize,
    levels: usize,
    cnt: &mut OpCount,
) {
    if !recurses(a.rows(), a.cols(), b.cols(), threshold, levels) {
        gemm_classical(f, alpha, a, b, beta, c, cnt).expect("shapes checked by caller");
        return;
    }
    let mut t = Matrix::zeros(f, c.rows(), c.cols());
    winograd_rec(f, a, b, t.as_mut(), threshold, levels, cnt);
    let (m, p) = (c.rows(), c.cols());
    let (unit_a, zero_b, unit_b) = (f.is_one(alpha), f.is_zero(beta), f.is_one(beta));
    for i in 0..m {
        for j in 0..p {
            let mut v = t.get(i, j);
            if !unit_a {
                v = f.mul(alpha, v);
            }
            if !zero_b {
                let old = if unit_b { c.get(i, j) } else { f.mul(beta, c.get(i, j)) };
                v = f.add(v, old);
            }
            c.set(i, j, v);
        }
    }
    let entries = (m * p) as u64;
    cnt.mults += entries * (u64::from(!unit_a) + u64::from(!zero_b && !unit_b));
    cnt.adds += entries * u64::from(!zero_b);
}

fn recurses(m: usize, n: usize, p: usize, threshold: usize, levels: usize) -> bool {
    levels > 0 && m >= threshold && n >= threshold && p >= threshold
}

/// `C <- A * B` with `levels` remaining recursion levels. Odd dimensions are
/// peeled: the even core recurses and the rim is fixed up classically.
pub(crate) fn winograd_rec<F: Field>(
    f: &F,
    a: MatRef<'_, F::Elem>,
    b: MatRef<'_, F::Elem>,
    c: MatMut<'_, F::Elem>,
    threshold: usize,
    levels: usize,
    cnt: &mut OpCount,
) {
    let (m, n, p) = (a.rows(), a.cols(), b.cols());
    if !recurses(m, n, p, threshold, levels) {
        gemm_plain(f, a, b, c, cnt);
        return;
    }
    if m % 2 == 0 && n % 2 == 0 && p % 2 == 0 {
        winograd_step(f, a, b, c, threshold, levels, cnt);
        return;
    }
    peel_odd(f, a, b, c, threshold, levels, cnt);
}

/// Dynamic peeling for odd `m`, `n` or `p`: the even core product recurses,
/// an odd inner dimension adds a rank-1 update to it, and an odd last row or
/// column of `C` is computed classically.
fn peel_odd<F: Field>(
    f: &F,
    a: MatRef<'_, F::Elem>,
    b: MatRef<'_, F::Elem>,
    c: MatMut<'_, F::Elem>,
    threshold: usize,
    levels: usize,
    cnt: &mut OpCount,
) {
    let (m, n, p) = (a.rows(), a.cols(), b.cols());
    let (me, ne, pe) = (m & !1, n & !1, p & !1);
    let (c_core, c_right, c_bottom, c_corner) = c.quadrants_mut(me, pe);

    let mut core = c_core;
    winograd_step(
        f,
        a.submatrix(0, 0, me, ne),
        b.submatrix(0, 0, ne, pe),
        core.rb_mut(),
        threshold,
        levels,
        cnt,
    );
    if ne < n {
        let col = a.submatrix(0, ne, me, 1);
        let row = b.submatrix(ne, 0, 1, pe);
        for i in 0..me {
            for j in 0..pe {
                let v = f.add(core.get(i, j), f.mul(col.at(f, i, 0), row.at(f, 0, j)));
                core.set(i, j, v);
            }
        }
        cnt.mults += (me * pe) as u64;
        cnt.adds += (me * pe) as u64;
    }
    if pe < p {
        gemm_plain(f, a.submatrix(0, 0, me, n), b.submatrix(0, pe, n, 1), c_right, cnt);
    }
    if me < m {
        let last = a.submatrix(me, 0, 1, n);
        gemm_plain(f, last, b.submatrix(0, 0, n, pe), c_bottom, cnt);
        gemm_plain(f, last, b.submatrix(0, pe, n, p - pe), c_corner, cnt);
    }
}

/// One level of the Winograd schedule on even dimensions, with the quadrants
/// of `C` and four half-size buffers as workspace.
fn winograd_step<F: Field>(
    f: &F,
    a: MatRef<'_, F::Elem>,
    b: MatRef<'_, F::Elem>,
    c: MatMut<'_, F::Elem>,
    threshold: usize,
    levels: usize,
    cnt: &mut OpCount,
) {
    let (m2, n2, p2) = (a.rows() / 2, a.cols() / 2, b.cols() / 2);
    let (a11, a12, a21, a22) = a.quadrants(m2, n2);
    let (b11, b12, b21, b22) = b.quadrants(n2, p2);
    let (mut c11, mut c12, mut c21, mut c22) = c.quadrants_mut(m2, p2);

    let mut s_buf = Matrix::zeros(f, m2, n2);
    let mut t1_buf = Matrix::zeros(f, n2, p2);
    let mut t2_buf = Matrix::zeros(f, n2, p2);
    let mut p_buf = Matrix::zeros(f, m2, p2);
    let (mut s, mut t1, mut t2, mut pp) = (s_buf.as_mut(), t1_buf.as_mut(), t2_buf.as_mut(), p_buf.as_mut());
    let lv = levels - 1;

    // s1, t1, p4
    sub_to(f, s.rb_mut(), a11, a21, cnt);
    sub_to(f, t1.rb_mut(), b22, b12, cnt);
    winograd_rec(f, s.rb(), t1.rb(), c21.rb_mut(), threshold, lv, cnt);
    // s2, t2, p7
    add_to(f, s.rb_mut(), a21, a22, cnt);
    sub_to(f, t2.rb_mut(), b12, b11, cnt);
    winograd_rec(f, s.rb(), t2.rb(), c22.rb_mut(), threshold, lv, cnt);
    // s3 = s2 - a11, t3 = b11 + t1, p5
    combine(f, s.rb_mut(), a11, Combine::Sub, cnt);
    combine(f, t1.rb_mut(), b11, Combine::Add, cnt);
    winograd_rec(f, s.rb(), t1.rb(), pp.rb_mut(), threshold, lv, cnt);
    // s4 = a12 - s3, p6
    combine(f, s.rb_mut(), a12, Combine::RevSub, cnt);
    winograd_rec(f, s.rb(), b22, c12.rb_mut(), threshold, lv, cnt);
    // t4 = b21 - t3
    sub_to(f, t2.rb_mut(), b21, t1.rb(), cnt);
    // p1
    winograd_rec(f, a11, b11, c11.rb_mut(), threshold, lv, cnt);
    // c1 = p1 + p5, c2 = c1 + p4, c6 = c1 + p7, c5 = c2 + p7, c7 = c6 + p6
    combine(f, pp.rb_mut(), c11.rb(), Combine::Add, cnt);
    combine(f, c21.rb_mut(), pp.rb(), Combine::Add, cnt);
    combine(f, pp.rb_mut(), c22.rb(), Combine::Add, cnt);
    combine(f, c22.rb_mut(), c21.rb(), Combine::Add, cnt);
    combine(f, c12.rb_mut(), pp.rb(), Combine::Add, cnt);
    // p3, c4 = c2 + p3
    winograd_rec(f, a22, t2.rb(), pp.rb_mut(), threshold, lv, cnt);
    combine(f, c21.rb_mut(), pp.rb(), Combine::Add, cnt);
    // p2, c3 = p1 + p2
    winograd_rec(f, a12, b21, pp.rb_mut(), threshold, lv, cnt);
    combine(f, c11.rb_mut(), pp.rb(), Combine::Add, cnt);
}

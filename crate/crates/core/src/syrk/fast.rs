use super::SyrkPlan;
use crate::error::{Error, Result};
use crate::field::{Field, SkewForm, SkewOrthogonal};
use crate::matrix::{
    add_lower, add_to, combine, copy_block, mirror_lower_to_upper_conj, neg_assign, scale_lower, sub_to,
    syrk_classical_impl, Combine, MatMut, MatRef, Matrix, OpCount,
};
use crate::winograd::{gemm_acc_levels, winograd_rec};

struct Ctx<'a, F: Field> {
    f: &'a F,
    form: SkewForm<F::Elem>,
    ycost: u8,
    threshold: usize,
    herm: bool,
}

impl<'a, F: Field> Ctx<'a, F> {
    fn new(plan: &'a SyrkPlan<F>) -> Self {
        Ctx {
            f: &plan.field,
            form: plan.form,
            ycost: plan.ycost,
            threshold: plan.policy.threshold.max(2),
            herm: plan.herm,
        }
    }

    fn is_pair(&self) -> bool {
        matches!(self.form, SkewForm::Pair { .. })
    }

    fn apply_y(&self, mut x: MatMut<'_, F::Elem>, cnt: &mut OpCount) {
        let y = SkewOrthogonal::new(self.form, x.cols(), self.ycost).expect("pair form only sees even widths");
        y.apply_right(self.f, &mut x, cnt).expect("width matches");
    }

    /// Width `h'` of the `S` blocks if a fast level applies to an `n x k`
    /// operand: `k/2`, or `k/2 + 1` when a pair-form `Y` needs the half
    /// width padded to even.
    fn fast_width(&self, n: usize, k: usize, levels: usize) -> Option<usize> {
        if levels == 0 || n < self.threshold || k < self.threshold || n % 2 == 1 || k % 2 == 1 {
            return None;
        }
        let (m, h) = (n / 2, k / 2);
        let hp = if self.is_pair() && h % 2 == 1 { h + 1 } else { h };
        (hp <= m).then_some(hp)
    }

    /// Wide operands are cut into column chunks of width `n`.
    fn chunks(&self, n: usize, k: usize, levels: usize) -> bool {
        k > n && levels > 0 && n >= self.threshold && n % 2 == 0
    }

    fn scratch_len(&self, n: usize, k: usize, levels: usize) -> usize {
        if self.chunks(n, k, levels) {
            let rest = k % n;
            return self.scratch_len(n, n, levels).max(if rest > 0 { self.scratch_len(n, rest, levels) } else { 0 });
        }
        match self.fast_width(n, k, levels) {
            None => 0,
            Some(_) => {
                let m = n / 2;
                (m + 1) * m + self.scratch_len(m, k / 2, levels - 1)
            }
        }
    }
}

/// Intermediate blocks of the top recursion level. Symmetric blocks are
/// stored with their upper triangle filled in.
#[derive(Debug, Clone)]
pub struct SyrkTrace<E> {
    pub s1: Matrix<E>,
    pub s2: Matrix<E>,
    pub s3: Matrix<E>,
    pub s4: Matrix<E>,
    pub p1: Matrix<E>,
    pub p2: Matrix<E>,
    pub p3: Matrix<E>,
    pub p4: Matrix<E>,
    pub p5: Matrix<E>,
    pub u1: Matrix<E>,
    pub u2: Matrix<E>,
    pub u3: Matrix<E>,
    pub u4: Matrix<E>,
    pub u5: Matrix<E>,
}

fn snap<E: Copy>(m: MatRef<'_, E>) -> Matrix<E> {
    Matrix::from_fn(m.rows(), m.cols(), |i, j| m.raw(i, j))
}

fn snap_sym<F: Field>(f: &F, m: MatRef<'_, F::Elem>, herm: bool) -> Matrix<F::Elem> {
    let mut s = snap(m);
    if herm {
        mirror_lower_to_upper_conj(f, s.as_mut());
    } else {
        crate::matrix::mirror_lower_to_upper(s.as_mut()).expect("square");
    }
    s
}

fn check_output<E: Copy>(a: &MatRef<'_, E>, c: &MatMut<'_, E>) -> Result<()> {
    let n = a.rows();
    if c.rows() != n || c.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "{n}x{} operand needs a {n}x{n} output, got {}x{}",
            a.cols(),
            c.rows(),
            c.cols()
        )));
    }
    Ok(())
}

fn finish_output<F: Field>(plan: &SyrkPlan<F>, c: MatMut<'_, F::Elem>) {
    if plan.mirror_output {
        if plan.herm {
            mirror_lower_to_upper_conj(&plan.field, c);
        } else {
            crate::matrix::mirror_lower_to_upper(c).expect("square");
        }
    }
}

fn reject_herm<F: Field>(plan: &SyrkPlan<F>) -> Result<()> {
    if plan.herm {
        return Err(Error::InvalidParameter(
            "plan is for the conjugate product; use herk_fast".into(),
        ));
    }
    Ok(())
}

/// `Low(A * A^T)` into a new `n x n` matrix.
pub fn syrk_fast<F: Field>(plan: &SyrkPlan<F>, a: &Matrix<F::Elem>, cnt: &mut OpCount) -> Result<Matrix<F::Elem>> {
    reject_herm(plan)?;
    let mut c = Matrix::zeros(&plan.field, a.rows(), a.rows());
    syrk_fast_into(plan, a.as_ref(), c.as_mut(), cnt)?;
    Ok(c)
}

/// `Low(C) <- Low(A * A^T)`, using the upper triangle of `C` as the only
/// workspace when `k <= n`. Wider operands are processed in column chunks
/// and need one scratch buffer for the accumulation.
pub fn syrk_fast_into<F: Field>(
    plan: &SyrkPlan<F>,
    a: MatRef<'_, F::Elem>,
    mut c: MatMut<'_, F::Elem>,
    cnt: &mut OpCount,
) -> Result<()> {
    check_output(&a, &c)?;
    let cx = Ctx::new(plan);
    fast_rec(&cx, a, c.rb_mut(), plan.policy.depth(), cnt, None);
    finish_output(plan, c);
    Ok(())
}

/// Like [`syrk_fast`], also returning the top-level intermediates.
pub fn syrk_fast_traced<F: Field>(
    plan: &SyrkPlan<F>,
    a: &Matrix<F::Elem>,
    cnt: &mut OpCount,
) -> Result<(Matrix<F::Elem>, Option<SyrkTrace<F::Elem>>)> {
    let f = &plan.field;
    let mut c = Matrix::zeros(f, a.rows(), a.rows());
    let cx = Ctx::new(plan);
    let levels = plan.policy.depth();
    let traced = cx.fast_width(a.rows(), a.cols(), levels).is_some();
    let mut trace = traced.then(|| {
        let z = Matrix::zeros(f, 0, 0);
        SyrkTrace {
            s1: z.clone(),
            s2: z.clone(),
            s3: z.clone(),
            s4: z.clone(),
            p1: z.clone(),
            p2: z.clone(),
            p3: z.clone(),
            p4: z.clone(),
            p5: z.clone(),
            u1: z.clone(),
            u2: z.clone(),
            u3: z.clone(),
            u4: z.clone(),
            u5: z,
        }
    });
    fast_rec(&cx, a.as_ref(), c.as_mut(), levels, cnt, trace.as_mut());
    finish_output(plan, c.as_mut());
    Ok((c, trace))
}

/// `Low(A * conj(A)^T)` with a conjugate plan from
/// [`SyrkPlan::hermitian`].
pub fn herk_fast<F: Field>(plan: &SyrkPlan<F>, a: &Matrix<F::Elem>, cnt: &mut OpCount) -> Result<Matrix<F::Elem>> {
    if !plan.herm {
        return Err(Error::Unsupported(format!(
            "conjugate product over {} needs a conjugate plan; none exists over the complex numbers",
            plan.field.name()
        )));
    }
    let mut c = Matrix::zeros(&plan.field, a.rows(), a.rows());
    syrk_fast_into(plan, a.as_ref(), c.as_mut(), cnt)?;
    Ok(c)
}

/// `Low(C) <- Low(alpha * A * A^T + beta * C)`.
///
/// Uses one scratch allocation sized for the whole recursion. The products
/// run with `alpha = 1` and `beta / alpha`, and the result is scaled by
/// `alpha` at the end.
pub fn syrk_fast_acc<F: Field>(
    plan: &SyrkPlan<F>,
    alpha: F::Elem,
    a: MatRef<'_, F::Elem>,
    beta: F::Elem,
    mut c: MatMut<'_, F::Elem>,
    cnt: &mut OpCount,
) -> Result<()> {
    check_output(&a, &c)?;
    let f = &plan.field;
    if f.is_zero(alpha) {
        scale_lower(f, beta, c.rb_mut(), cnt)?;
        finish_output(plan, c);
        return Ok(());
    }
    let cx = Ctx::new(plan);
    let levels = plan.policy.depth();
    let len = cx.scratch_len(a.rows(), a.cols(), levels);
    if len == 0 {
        syrk_classical_impl(f, alpha, a, beta, c.rb_mut(), plan.herm, cnt)?;
    } else {
        let beta_r = f.mul(beta, f.inv(alpha).expect("alpha is nonzero"));
        let mut scratch = vec![f.zero(); len];
        acc_rec(&cx, beta_r, a, c.rb_mut(), levels, &mut scratch, cnt);
        scale_lower(f, alpha, c.rb_mut(), cnt)?;
    }
    finish_output(plan, c);
    Ok(())
}

fn fast_rec<F: Field>(
    cx: &Ctx<'_, F>,
    a: MatRef<'_, F::Elem>,
    c: MatMut<'_, F::Elem>,
    levels: usize,
    cnt: &mut OpCount,
    mut trace: Option<&mut SyrkTrace<F::Elem>>,
) {
    let f = cx.f;
    let (n, k) = (a.rows(), a.cols());
    if cx.chunks(n, k, levels) {
        let mut c = c;
        fast_rec(cx, a.submatrix(0, 0, n, n), c.rb_mut(), levels, cnt, trace);
        let mut scratch = vec![f.zero(); cx.scratch_len(n, k, levels)];
        let mut j = n;
        while j < k {
            let w = n.min(k - j);
            acc_rec(cx, f.one(), a.submatrix(0, j, n, w), c.rb_mut(), levels, &mut scratch, cnt);
            j += w;
        }
        return;
    }
    let Some(hp) = cx.fast_width(n, k, levels) else {
        syrk_classical_impl(f, f.one(), a, f.zero(), c, cx.herm, cnt).expect("shapes checked");
        return;
    };
    let (m, h) = (n / 2, k / 2);
    let pad = hp > h;
    let lv = levels - 1;
    let thr = cx.threshold;
    let herm = cx.herm;
    let (a11, a12, a21, a22) = a.quadrants(m, h);
    let (mut c11, mut c12, mut c21, mut c22) = c.quadrants_mut(m, m);

    // 1. S1 = (A21 - A11) Y -> C21
    {
        let mut s1 = c21.rb_mut().submatrix_mut(0, 0, m, hp);
        sub_to(f, s1.rb_mut().submatrix_mut(0, 0, m, h), a21, a11, cnt);
        if pad {
            s1.rb_mut().submatrix_mut(0, h, m, 1).fill(f.zero());
        }
        cx.apply_y(s1, cnt);
    }
    // 2. S2 = A22 - A21 Y -> C12
    {
        let mut s2 = c12.rb_mut().submatrix_mut(0, 0, m, hp);
        copy_block(f, s2.rb_mut().submatrix_mut(0, 0, m, h), a21);
        if pad {
            s2.rb_mut().submatrix_mut(0, h, m, 1).fill(f.zero());
        }
        cx.apply_y(s2.rb_mut(), cnt);
        combine(f, s2.rb_mut().submatrix_mut(0, 0, m, h), a22, Combine::RevSub, cnt);
        if pad {
            neg_assign(f, s2.submatrix_mut(0, h, m, 1), cnt);
        }
    }
    if let Some(t) = trace.as_deref_mut() {
        t.s1 = snap(c21.rb().submatrix(0, 0, m, hp));
        t.s2 = snap(c12.rb().submatrix(0, 0, m, hp));
    }
    // 3. P4^T = S2 S1^T -> C22
    winograd_rec(
        f,
        c12.rb().submatrix(0, 0, m, hp),
        c21.rb().submatrix(0, 0, m, hp).adj(herm),
        c22.rb_mut(),
        thr,
        lv,
        cnt,
    );
    if let Some(t) = trace.as_deref_mut() {
        t.p4 = snap(c22.rb().adj(herm));
    }
    // 4. S3 = S1 - A22 -> C21
    combine(f, c21.rb_mut().submatrix_mut(0, 0, m, h), a22, Combine::Sub, cnt);
    if let Some(t) = trace.as_deref_mut() {
        t.s3 = snap(c21.rb().submatrix(0, 0, m, hp));
    }
    // 5. P5 = S3 S3^T -> C12
    fast_rec(cx, c21.rb().submatrix(0, 0, m, hp), c12.rb_mut(), lv, cnt, None);
    if let Some(t) = trace.as_deref_mut() {
        t.p5 = snap_sym(f, c12.rb(), herm);
    }
    // 6. S4 = S3 + A12 -> C11 (its padding column would only meet zeros)
    add_to(
        f,
        c11.rb_mut().submatrix_mut(0, 0, m, h),
        c21.rb().submatrix(0, 0, m, h),
        a12,
        cnt,
    );
    if let Some(t) = trace.as_deref_mut() {
        t.s4 = snap(c11.rb().submatrix(0, 0, m, h));
    }
    // 7. P3 = A22 S4^T -> C21
    winograd_rec(f, a22, c11.rb().submatrix(0, 0, m, h).adj(herm), c21.rb_mut(), thr, lv, cnt);
    if let Some(t) = trace.as_deref_mut() {
        t.p3 = snap(c21.rb());
    }
    // 8. P1 = A11 A11^T -> C11
    fast_rec(cx, a11, c11.rb_mut(), lv, cnt, None);
    if let Some(t) = trace.as_deref_mut() {
        t.p1 = snap_sym(f, c11.rb(), herm);
    }
    // 9. U1 = P1 + P5 -> C12, then Up(U1) = Low(U1)^T
    add_lower(f, c12.rb_mut(), c11.rb(), cnt).expect("square blocks");
    mirror(f, c12.rb_mut(), herm);
    if let Some(t) = trace.as_deref_mut() {
        t.u1 = snap(c12.rb());
    }
    // 10. U2 = U1 + P4 -> C12
    combine(f, c12.rb_mut(), c22.rb().adj(herm), Combine::Add, cnt);
    if let Some(t) = trace.as_deref_mut() {
        t.u2 = snap(c12.rb());
    }
    // 11. U4 = U2 + P3 -> C21
    combine(f, c21.rb_mut(), c12.rb(), Combine::Add, cnt);
    // 12. U5 = U2 + P4^T -> C22
    add_lower(f, c22.rb_mut(), c12.rb(), cnt).expect("square blocks");
    if let Some(t) = trace.as_deref_mut() {
        t.u4 = snap(c21.rb());
        t.u5 = snap_sym(f, c22.rb(), herm);
    }
    // 13. P2 = A12 A12^T -> C12
    fast_rec(cx, a12, c12.rb_mut(), lv, cnt, None);
    if let Some(t) = trace.as_deref_mut() {
        t.p2 = snap_sym(f, c12.rb(), herm);
    }
    // 14. U3 = P1 + P2 -> C11
    add_lower(f, c11.rb_mut(), c12.rb(), cnt).expect("square blocks");
    if let Some(t) = trace {
        t.u3 = snap_sym(f, c11.rb(), herm);
    }
}

fn mirror<F: Field>(f: &F, c: MatMut<'_, F::Elem>, herm: bool) {
    if herm {
        mirror_lower_to_upper_conj(f, c);
    } else {
        crate::matrix::mirror_lower_to_upper(c).expect("square");
    }
}

/// `Low(C) <- Low(A * A^T + beta * C)` with the scratch layout of
/// [`Ctx::scratch_len`].
fn acc_rec<F: Field>(
    cx: &Ctx<'_, F>,
    beta: F::Elem,
    a: MatRef<'_, F::Elem>,
    mut c: MatMut<'_, F::Elem>,
    levels: usize,
    scratch: &mut [F::Elem],
    cnt: &mut OpCount,
) {
    let f = cx.f;
    let (n, k) = (a.rows(), a.cols());
    if cx.chunks(n, k, levels) {
        let mut j = 0;
        while j < k {
            let w = n.min(k - j);
            let b = if j == 0 { beta } else { f.one() };
            acc_rec(cx, b, a.submatrix(0, j, n, w), c.rb_mut(), levels, scratch, cnt);
            j += w;
        }
        return;
    }
    let Some(hp) = cx.fast_width(n, k, levels) else {
        syrk_classical_impl(f, f.one(), a, beta, c, cx.herm, cnt).expect("shapes checked");
        return;
    };
    let (m, h) = (n / 2, k / 2);
    let pad = hp > h;
    let lv = levels - 1;
    let thr = cx.threshold;
    let herm = cx.herm;
    let (a11, a12, a21, a22) = a.quadrants(m, h);
    let (mut c11, mut c12, mut c21, mut c22) = c.quadrants_mut(m, m);
    let (own, rest) = scratch.split_at_mut((m + 1) * m);
    let (tmp_buf, stash) = own.split_at_mut(m * m);
    let mut tmp = MatMut::from_slice(tmp_buf, m, m);

    // S1 = (A21 - A11) Y -> tmp
    {
        let mut s1 = tmp.rb_mut().submatrix_mut(0, 0, m, hp);
        sub_to(f, s1.rb_mut().submatrix_mut(0, 0, m, h), a21, a11, cnt);
        if pad {
            s1.rb_mut().submatrix_mut(0, h, m, 1).fill(f.zero());
        }
        cx.apply_y(s1, cnt);
    }
    // S2 = A22 - A21 Y -> C12
    {
        let mut s2 = c12.rb_mut().submatrix_mut(0, 0, m, hp);
        copy_block(f, s2.rb_mut().submatrix_mut(0, 0, m, h), a21);
        if pad {
            s2.rb_mut().submatrix_mut(0, h, m, 1).fill(f.zero());
        }
        cx.apply_y(s2.rb_mut(), cnt);
        combine(f, s2.rb_mut().submatrix_mut(0, 0, m, h), a22, Combine::RevSub, cnt);
        if pad {
            neg_assign(f, s2.submatrix_mut(0, h, m, 1), cnt);
        }
    }
    // Up(C11) = Low(C22)^T; the diagonal of C22 has no room there and goes
    // to the extra scratch row
    for i in 0..m {
        for j in 0..i {
            c11.set(j, i, c22.get(i, j));
        }
        stash[i] = c22.get(i, i);
    }
    // P4^T = S2 S1^T -> C22
    winograd_rec(
        f,
        c12.rb().submatrix(0, 0, m, hp),
        tmp.rb().submatrix(0, 0, m, hp).adj(herm),
        c22.rb_mut(),
        thr,
        lv,
        cnt,
    );
    // S3 = S1 - A22 -> tmp
    combine(f, tmp.rb_mut().submatrix_mut(0, 0, m, h), a22, Combine::Sub, cnt);
    // P5 = S3 S3^T -> C12
    fast_rec(cx, tmp.rb().submatrix(0, 0, m, hp), c12.rb_mut(), lv, cnt, None);
    // S4 = S3 + A12 -> tmp
    combine(f, tmp.rb_mut().submatrix_mut(0, 0, m, h), a12, Combine::Add, cnt);
    // P3 = A22 S4^T + beta C21 -> C21
    gemm_acc_levels(
        f,
        f.one(),
        a22,
        tmp.rb().submatrix(0, 0, m, h).adj(herm),
        beta,
        c21.rb_mut(),
        thr,
        lv,
        cnt,
    );
    // P1 = A11 A11^T -> tmp
    fast_rec(cx, a11, tmp.rb_mut(), lv, cnt, None);
    // U1 = P1 + P5 -> C12, Up(U1) = Low(U1)^T
    add_lower(f, c12.rb_mut(), tmp.rb(), cnt).expect("square blocks");
    mirror(f, c12.rb_mut(), herm);
    // U2 = U1 + P4 -> C12
    combine(f, c12.rb_mut(), c22.rb().adj(herm), Combine::Add, cnt);
    // U4 = U2 + P3 -> C21
    combine(f, c21.rb_mut(), c12.rb(), Combine::Add, cnt);
    // U5 = U2 + P4^T + beta Up(C11)^T -> C22
    let (zero_b, unit_b) = (f.is_zero(beta), f.is_one(beta));
    for i in 0..m {
        for j in 0..=i {
            let mut v = f.add(c22.get(i, j), c12.get(i, j));
            if !zero_b {
                let saved = if i == j { stash[i] } else { c11.get(j, i) };
                v = f.add(v, if unit_b { saved } else { f.mul(beta, saved) });
            }
            c22.set(i, j, v);
        }
    }
    let tri = (m * (m + 1) / 2) as u64;
    cnt.adds += tri * (1 + u64::from(!zero_b));
    cnt.mults += tri * u64::from(!zero_b && !unit_b);
    // P2 = A12 A12^T + beta C11 -> C11
    acc_rec(cx, beta, a12, c11.rb_mut(), lv, rest, cnt);
    // U3 = P1 + P2 -> C11
    add_lower(f, c11.rb_mut(), tmp.rb(), cnt).expect("square blocks");
}

//! Borrowed strided views.
//!
//! The recursive schedules read from and write to different quadrants of the
//! same output buffer, so views are raw-pointer based (in the style of
//! `faer`) with the usual lifetime discipline: a [`MatMut`] is unique, and
//! splitting one yields disjoint children.

use crate::field::Field;
use std::marker::PhantomData;

/// Read-only view. Strides are signed element offsets, so a transpose is a
/// stride swap. `conj` marks that every element is read through
/// [`Field::conj`].
pub struct MatRef<'a, E> {
    ptr: *const E,
    rows: usize,
    cols: usize,
    rs: isize,
    cs: isize,
    conj: bool,
    _marker: PhantomData<&'a E>,
}

impl<E> Clone for MatRef<'_, E> {
    fn clone(&self) -> Self {
        *self
    }
}
impl<E> Copy for MatRef<'_, E> {}

unsafe impl<E: Sync> Send for MatRef<'_, E> {}
unsafe impl<E: Sync> Sync for MatRef<'_, E> {}

impl<'a, E: Copy> MatRef<'a, E> {
    /// # Safety
    /// `ptr` must be valid for reads at every `i * rs + j * cs` with
    /// `i < rows`, `j < cols` for the lifetime `'a`, and nothing may write
    /// through those locations while the view lives.
    pub(crate) unsafe fn from_raw(ptr: *const E, rows: usize, cols: usize, rs: isize, cs: isize) -> Self {
        MatRef {
            ptr,
            rows,
            cols,
            rs,
            cs,
            conj: false,
            _marker: PhantomData,
        }
    }

    pub fn from_slice(data: &'a [E], rows: usize, cols: usize) -> Self {
        assert_eq!(data.len(), rows * cols);
        unsafe { Self::from_raw(data.as_ptr(), rows, cols, cols as isize, 1) }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_conj(&self) -> bool {
        self.conj
    }

    /// Raw element, ignoring the conjugation flag.
    #[inline]
    pub fn raw(&self, i: usize, j: usize) -> E {
        debug_assert!(i < self.rows && j < self.cols);
        unsafe { *self.ptr.offset(i as isize * self.rs + j as isize * self.cs) }
    }

    /// Element as seen through the view.
    #[inline]
    pub fn at<F: Field<Elem = E>>(&self, f: &F, i: usize, j: usize) -> E {
        let v = self.raw(i, j);
        if self.conj {
            f.conj(v)
        } else {
            v
        }
    }

    pub fn t(self) -> Self {
        MatRef {
            rows: self.cols,
            cols: self.rows,
            rs: self.cs,
            cs: self.rs,
            ..self
        }
    }

    pub fn conjugate(self) -> Self {
        MatRef {
            conj: !self.conj,
            ..self
        }
    }

    /// Transpose, or conjugate transpose when `herm` is set.
    pub fn adj(self, herm: bool) -> Self {
        if herm {
            self.t().conjugate()
        } else {
            self.t()
        }
    }

    pub fn submatrix(self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "submatrix out of bounds");
        let ptr = if rows == 0 || cols == 0 {
            self.ptr
        } else {
            unsafe { self.ptr.offset(r0 as isize * self.rs + c0 as isize * self.cs) }
        };
        MatRef {
            ptr,
            rows,
            cols,
            ..self
        }
    }

    /// Quadrants split at row `r` and column `c`: `(top-left, top-right,
    /// bottom-left, bottom-right)`.
    pub fn quadrants(self, r: usize, c: usize) -> (Self, Self, Self, Self) {
        let (m, n) = (self.rows, self.cols);
        (
            self.submatrix(0, 0, r, c),
            self.submatrix(0, c, r, n - c),
            self.submatrix(r, 0, m - r, c),
            self.submatrix(r, c, m - r, n - c),
        )
    }
}

/// Exclusive view into row-major storage with unit column stride.
pub struct MatMut<'a, E> {
    ptr: *mut E,
    rows: usize,
    cols: usize,
    rs: isize,
    _marker: PhantomData<&'a mut E>,
}

unsafe impl<E: Send> Send for MatMut<'_, E> {}
unsafe impl<E: Sync> Sync for MatMut<'_, E> {}

impl<'a, E: Copy> MatMut<'a, E> {
    pub fn from_slice(data: &'a mut [E], rows: usize, cols: usize) -> Self {
        assert_eq!(data.len(), rows * cols);
        MatMut {
            ptr: data.as_mut_ptr(),
            rows,
            cols,
            rs: cols as isize,
            _marker: PhantomData,
        }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> E {
        debug_assert!(i < self.rows && j < self.cols);
        unsafe { *self.ptr.offset(i as isize * self.rs + j as isize) }
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        debug_assert!(i < self.rows && j < self.cols);
        unsafe { *self.ptr.offset(i as isize * self.rs + j as isize) = v }
    }

    pub fn rb(&self) -> MatRef<'_, E> {
        unsafe { MatRef::from_raw(self.ptr, self.rows, self.cols, self.rs, 1) }
    }

    pub fn rb_mut(&mut self) -> MatMut<'_, E> {
        MatMut {
            ptr: self.ptr,
            rows: self.rows,
            cols: self.cols,
            rs: self.rs,
            _marker: PhantomData,
        }
    }

    pub fn into_ref(self) -> MatRef<'a, E> {
        unsafe { MatRef::from_raw(self.ptr, self.rows, self.cols, self.rs, 1) }
    }

    pub fn submatrix_mut(self, r0: usize, c0: usize, rows: usize, cols: usize) -> MatMut<'a, E> {
        assert!(r0 + rows <= self.rows && c0 + cols <= self.cols, "submatrix out of bounds");
        let ptr = if rows == 0 || cols == 0 {
            self.ptr
        } else {
            unsafe { self.ptr.offset(r0 as isize * self.rs + c0 as isize) }
        };
        MatMut {
            ptr,
            rows,
            cols,
            rs: self.rs,
            _marker: PhantomData,
        }
    }

    /// Disjoint quadrants split at row `r` and column `c`.
    pub fn quadrants_mut(self, r: usize, c: usize) -> (Self, Self, Self, Self) {
        let (m, n) = (self.rows, self.cols);
        assert!(r <= m && c <= n);
        let copy = |s: &Self| MatMut {
            ptr: s.ptr,
            rows: s.rows,
            cols: s.cols,
            rs: s.rs,
            _marker: PhantomData,
        };
        let (a, b, c_, d) = (copy(&self), copy(&self), copy(&self), self);
        (
            a.submatrix_mut(0, 0, r, c),
            b.submatrix_mut(0, c, r, n - c),
            c_.submatrix_mut(r, 0, m - r, c),
            d.submatrix_mut(r, c, m - r, n - c),
        )
    }

    /// Disjoint left and right parts split at column `c`.
    pub fn split_cols_mut(self, c: usize) -> (Self, Self) {
        let rows = self.rows;
        let (tl, tr, _, _) = self.quadrants_mut(rows, c);
        (tl, tr)
    }

    pub fn fill(&mut self, v: E) {
        for i in 0..self.rows {
            for j in 0..self.cols {
                self.set(i, j, v);
            }
        }
    }

    pub fn copy_from<F: Field<Elem = E>>(&mut self, f: &F, src: MatRef<'_, E>) {
        assert_eq!((self.rows, self.cols), (src.rows(), src.cols()));
        for i in 0..self.rows {
            for j in 0..self.cols {
                self.set(i, j, src.at(f, i, j));
            }
        }
    }
}

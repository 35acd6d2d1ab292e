//! Dense matrices, views, classical kernels and the text format.

mod io;
mod kernels;
mod view;

pub use io::{read_matrix, write_matrix};
pub use kernels::{
    add_full, add_lower, gemm_classical, herk_classical, mirror_lower_to_upper, scale_lower, syrk_classical,
};
pub(crate) use kernels::{
    add_to, combine, copy_block, gemm_plain, mirror_lower_to_upper_conj, neg_assign, sub_to, syrk_classical_impl,
    Combine,
};
pub use view::{MatMut, MatRef};

use crate::error::{Error, Result};
use crate::field::Field;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::ops::AddAssign;

/// Dense row-major matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Copy> Matrix<E> {
    pub fn zeros<F: Field<Elem = E>>(f: &F, rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![f.zero(); rows * cols],
        }
    }

    pub fn identity<F: Field<Elem = E>>(f: &F, n: usize) -> Self {
        let mut m = Self::zeros(f, n, n);
        for i in 0..n {
            m.set(i, i, f.one());
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<E>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} elements for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn from_fn(rows: usize, cols: usize, mut g: impl FnMut(usize, usize) -> E) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(g(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> E {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn data(&self) -> &[E] {
        &self.data
    }

    pub fn into_data(self) -> Vec<E> {
        self.data
    }

    pub fn as_ref(&self) -> MatRef<'_, E> {
        MatRef::from_slice(&self.data, self.rows, self.cols)
    }

    pub fn as_mut(&mut self) -> MatMut<'_, E> {
        MatMut::from_slice(&mut self.data, self.rows, self.cols)
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i))
    }

    pub fn map<G: Copy>(&self, g: impl Fn(E) -> G) -> Matrix<G> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&v| g(v)).collect(),
        }
    }

    /// Copy of the block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |i, j| self.get(r0 + i, c0 + j))
    }
}

impl<E: Copy + PartialEq> Matrix<E> {
    /// Whether the lower triangles (diagonal included) agree.
    pub fn lower_eq(&self, other: &Self) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && (0..self.rows).all(|i| (0..=i.min(self.cols.saturating_sub(1))).all(|j| self.get(i, j) == other.get(i, j)))
    }
}

/// Matrix with entries drawn from `field` by a ChaCha8 generator seeded with
/// `seed`; the same arguments always give the same matrix.
pub fn random_matrix<F: Field>(field: &F, rows: usize, cols: usize, seed: u64) -> Matrix<F::Elem> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Matrix::from_fn(rows, cols, |_, _| field.random_elem(&mut rng))
}

/// Tally of scalar operations. Additions and subtractions are pooled.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct OpCount {
    pub mults: u64,
    pub adds: u64,
}

impl OpCount {
    pub fn total(&self) -> u64 {
        self.mults + self.adds
    }

    pub fn merge(self, other: OpCount) -> OpCount {
        OpCount {
            mults: self.mults + other.mults,
            adds: self.adds + other.adds,
        }
    }
}

impl AddAssign for OpCount {
    fn add_assign(&mut self, rhs: OpCount) {
        *self = self.merge(rhs);
    }
}

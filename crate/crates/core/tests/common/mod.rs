//! Naive triple-loop products used as oracles. They only touch the scalar
//! field operations, never the library's matrix kernels.
#![allow(dead_code)]

use fastsyrk::{Field, Matrix};

pub fn product<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    assert_eq!(a.cols(), b.rows());
    Matrix::from_fn(a.rows(), b.cols(), |i, j| {
        let mut s = f.zero();
        for l in 0..a.cols() {
            s = f.add(s, f.mul(a.get(i, l), b.get(l, j)));
        }
        s
    })
}

pub fn conj_transpose<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    Matrix::from_fn(a.cols(), a.rows(), |i, j| f.conj(a.get(j, i)))
}

/// `A * A^T`.
pub fn gram<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    product(f, a, &a.transpose())
}

/// `A * M * A^T`.
pub fn sandwich<F: Field>(f: &F, a: &Matrix<F::Elem>, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    product(f, &product(f, a, m), &a.transpose())
}

pub fn diag<F: Field>(f: &F, d: &[F::Elem]) -> Matrix<F::Elem> {
    Matrix::from_fn(d.len(), d.len(), |i, j| if i == j { d[i] } else { f.zero() })
}

pub fn minus_identity<F: Field>(f: &F, n: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(n, n, |i, j| if i == j { f.neg(f.one()) } else { f.zero() })
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
}

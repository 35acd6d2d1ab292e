//! `A * D * A^T` for diagonal `D` and `A * B * A^T` for block-diagonal `B`.
//!
//! The scaling is folded into the columns of `A` (possibly adding a column
//! or two) so that the product becomes a plain symmetric product.

use crate::error::{Error, Result};
use crate::field::{Field, SqrtField};
use crate::matrix::{Matrix, OpCount};
use crate::syrk::{syrk_fast, SyrkPlan};
use std::io::BufRead;

#[derive(Debug, Clone, PartialEq)]
pub struct DiagonalScaling<E> {
    pub entries: Vec<E>,
}

/// One diagonal block of a [`BlockDiagonal`]. `TwoByTwo` stands for
/// `[[0, beta], [beta, gamma]]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Block<E> {
    Scalar(E),
    TwoByTwo { beta: E, gamma: E },
}

#[derive(Debug, Clone, PartialEq)]
pub struct BlockDiagonal<E> {
    blocks: Vec<Block<E>>,
}

impl<E: Copy> BlockDiagonal<E> {
    pub fn new<F: Field<Elem = E>>(f: &F, blocks: Vec<Block<E>>) -> Result<Self> {
        for (i, b) in blocks.iter().enumerate() {
            if let Block::TwoByTwo { beta, .. } = b {
                if f.is_zero(*beta) {
                    return Err(Error::MalformedBlock(format!("block {i} has beta = 0")));
                }
            }
        }
        Ok(BlockDiagonal { blocks })
    }

    pub fn blocks(&self) -> &[Block<E>] {
        &self.blocks
    }

    pub fn dim(&self) -> usize {
        self.blocks
            .iter()
            .map(|b| match b {
                Block::Scalar(_) => 1,
                Block::TwoByTwo { .. } => 2,
            })
            .sum()
    }

    /// The entries, if every block is a scalar.
    pub fn as_diagonal(&self) -> Option<DiagonalScaling<E>> {
        self.blocks
            .iter()
            .map(|b| match b {
                Block::Scalar(d) => Some(*d),
                Block::TwoByTwo { .. } => None,
            })
            .collect::<Option<Vec<_>>>()
            .map(|entries| DiagonalScaling { entries })
    }

    pub fn to_dense<F: Field<Elem = E>>(&self, f: &F) -> Matrix<E> {
        let n = self.dim();
        let mut m = Matrix::zeros(f, n, n);
        let mut j = 0;
        for b in &self.blocks {
            match *b {
                Block::Scalar(d) => {
                    m.set(j, j, d);
                    j += 1;
                }
                Block::TwoByTwo { beta, gamma } => {
                    m.set(j, j + 1, beta);
                    m.set(j + 1, j, beta);
                    m.set(j + 1, j + 1, gamma);
                    j += 2;
                }
            }
        }
        m
    }

    /// One line per block: `S d` or `T beta gamma`. Blank lines and `#`
    /// comments are skipped.
    pub fn parse<F: Field<Elem = E>, R: BufRead>(f: &F, r: R) -> Result<Self> {
        let mut blocks = Vec::new();
        for (i, line) in r.lines().enumerate() {
            let line = line?;
            let lno = i + 1;
            let t = line.trim();
            if t.is_empty() || t.starts_with('#') {
                continue;
            }
            let toks: Vec<&str> = t.split_whitespace().collect();
            let elem = |s: &str| f.parse_elem(s).map_err(|msg| Error::Parse { line: lno, msg });
            let b = match toks[..] {
                ["S", d] => Block::Scalar(elem(d)?),
                ["T", beta, gamma] => Block::TwoByTwo {
                    beta: elem(beta)?,
                    gamma: elem(gamma)?,
                },
                _ => {
                    return Err(Error::Parse {
                        line: lno,
                        msg: format!("expected `S d` or `T beta gamma`, got `{t}`"),
                    })
                }
            };
            blocks.push(b);
        }
        Self::new(f, blocks)
    }

    pub fn format<F: Field<Elem = E>>(&self, f: &F) -> String {
        let mut s = String::new();
        for b in &self.blocks {
            match *b {
                Block::Scalar(d) => s += &format!("S {}\n", f.format_elem(d)),
                Block::TwoByTwo { beta, gamma } => {
                    s += &format!("T {} {}\n", f.format_elem(beta), f.format_elem(gamma))
                }
            }
        }
        s
    }
}

/// `A` with a scaling partly or fully folded into its columns.
#[derive(Debug, Clone, PartialEq)]
pub struct Folded<E> {
    pub a: Matrix<E>,
    /// Diagonal still to be applied; all ones after [`fold_diagonal`].
    pub d: Vec<E>,
    /// Columns added to `A`.
    pub appended: usize,
}

fn scale_col<F: Field>(f: &F, a: &mut Matrix<F::Elem>, j: usize, s: F::Elem, cnt: &mut OpCount) {
    if f.is_one(s) {
        return;
    }
    for i in 0..a.rows() {
        a.set(i, j, f.mul(s, a.get(i, j)));
    }
    cnt.mults += a.rows() as u64;
}

/// Column `dst += src`.
fn add_col<F: Field>(f: &F, a: &mut Matrix<F::Elem>, dst: usize, src: usize, cnt: &mut OpCount) {
    for i in 0..a.rows() {
        a.set(i, dst, f.add(a.get(i, dst), a.get(i, src)));
    }
    cnt.adds += a.rows() as u64;
}

fn widen<F: Field>(f: &F, a: &Matrix<F::Elem>, extra: usize) -> Matrix<F::Elem> {
    Matrix::from_fn(a.rows(), a.cols() + extra, |i, j| if j < a.cols() { a.get(i, j) } else { f.zero() })
}

fn check_cols<E: Copy>(a: &Matrix<E>, n: usize) -> Result<()> {
    if a.cols() != n {
        return Err(Error::DimensionMismatch(format!(
            "scaling of dimension {n} for a matrix with {} columns",
            a.cols()
        )));
    }
    Ok(())
}

/// `A' ` with `A' * A'^T = A * D * A^T`. Zero entries count as squares.
/// An odd number of non-squares is evened out by repeating the first one
/// against an extra zero column.
pub fn fold_diagonal<F: SqrtField>(
    f: &F,
    a: &Matrix<F::Elem>,
    d: &DiagonalScaling<F::Elem>,
    cnt: &mut OpCount,
) -> Result<Folded<F::Elem>> {
    check_cols(a, d.entries.len())?;
    let mut dd = d.entries.clone();
    let mut non_res: Vec<usize> = (0..dd.len()).filter(|&j| !f.is_square(dd[j])).collect();
    let mut abar = a.clone();
    let mut appended = 0;
    if non_res.len() % 2 == 1 {
        abar = widen(f, &abar, 1);
        dd.push(dd[non_res[0]]);
        non_res.push(dd.len() - 1);
        appended = 1;
    }
    for j in 0..dd.len() {
        if f.is_square(dd[j]) {
            let r = f.sqrt(dd[j])?;
            scale_col(f, &mut abar, j, r, cnt);
        }
    }
    for pair in non_res.chunks(2) {
        let (i, j) = (pair[0], pair[1]);
        let y = f.nrsyf(dd[i], dd[j])?;
        for r in 0..abar.rows() {
            let (x, z) = (abar.get(r, i), abar.get(r, j));
            abar.set(r, i, f.add(f.mul(x, y[0][0]), f.mul(z, y[1][0])));
            abar.set(r, j, f.add(f.mul(x, y[0][1]), f.mul(z, y[1][1])));
        }
        cnt.mults += 4 * abar.rows() as u64;
        cnt.adds += 2 * abar.rows() as u64;
    }
    let ones = vec![f.one(); abar.cols()];
    Ok(Folded {
        a: abar,
        d: ones,
        appended,
    })
}

/// Rewrites the 2x2 blocks so that only a diagonal remains: `A' * D' * A'^T
/// = A * B * A^T`.
///
/// Odd characteristic accepts only `gamma = 0`. In characteristic 2, an
/// antidiagonal block is merged with a scalar pivot, or with a column
/// already produced from an antitriangular block; if neither exists one
/// column is appended.
pub fn fold_block_diagonal<F: SqrtField>(
    f: &F,
    a: &Matrix<F::Elem>,
    b: &BlockDiagonal<F::Elem>,
    cnt: &mut OpCount,
) -> Result<Folded<F::Elem>> {
    check_cols(a, b.dim())?;
    let n = b.dim();
    let mut abar = a.clone();
    let mut dd = vec![f.one(); n];
    let mut scalars = Vec::new();
    let mut antidiag = Vec::new();
    let mut antitri = Vec::new();
    let mut j = 0;
    for (bi, blk) in b.blocks().iter().enumerate() {
        match *blk {
            Block::Scalar(d) => {
                dd[j] = d;
                scalars.push(j);
                j += 1;
            }
            Block::TwoByTwo { beta, gamma } => {
                if f.is_zero(beta) {
                    return Err(Error::MalformedBlock(format!("block {bi} has beta = 0")));
                }
                if f.is_zero(gamma) {
                    antidiag.push((j, beta));
                } else if f.characteristic() == 2 {
                    antitri.push((j, beta, gamma));
                } else {
                    return Err(Error::MalformedBlock(format!(
                        "block {bi}: gamma must be 0 outside characteristic 2"
                    )));
                }
                j += 2;
            }
        }
    }

    if f.characteristic() != 2 {
        let half = f.inv(f.from_i64(2)).expect("2 is invertible");
        for &(j, beta) in &antidiag {
            let h = f.mul(half, beta);
            dd[j] = h;
            dd[j + 1] = f.neg(h);
            for r in 0..abar.rows() {
                let (x, z) = (abar.get(r, j), abar.get(r, j + 1));
                abar.set(r, j, f.add(x, z));
                abar.set(r, j + 1, f.sub(x, z));
            }
            cnt.adds += 2 * abar.rows() as u64;
        }
        return Ok(Folded {
            a: abar,
            d: dd,
            appended: 0,
        });
    }

    for &(j, beta, gamma) in &antitri {
        let delta = f.sqrt(gamma)?;
        let s = f.mul(beta, f.inv(delta).expect("gamma is nonzero"));
        scale_col(f, &mut abar, j, s, cnt);
        scale_col(f, &mut abar, j + 1, delta, cnt);
        add_col(f, &mut abar, j + 1, j, cnt);
        for r in 0..abar.rows() {
            let (x, z) = (abar.get(r, j), abar.get(r, j + 1));
            abar.set(r, j, z);
            abar.set(r, j + 1, x);
        }
    }
    if antidiag.is_empty() {
        return Ok(Folded {
            a: abar,
            d: dd,
            appended: 0,
        });
    }

    let mut appended = 0;
    let mut rest = &antidiag[..];
    let (ell, mut delta) = if let Some(&l) = scalars.first() {
        (l, f.sqrt(dd[l])?)
    } else if let Some(&(l, _, _)) = antitri.first() {
        (l, f.one())
    } else {
        // only antidiagonal blocks: [[1,0],[0,beta]] [[1,0,1],[0,1,1]]
        let (j, beta) = antidiag[0];
        scale_col(f, &mut abar, j + 1, beta, cnt);
        abar = widen(f, &abar, 1);
        let last = abar.cols() - 1;
        add_col(f, &mut abar, last, j, cnt);
        add_col(f, &mut abar, last, j + 1, cnt);
        dd.push(f.one());
        appended = 1;
        rest = &antidiag[1..];
        (j, f.one())
    };
    for &(j, beta) in rest {
        scale_col(f, &mut abar, ell, delta, cnt);
        scale_col(f, &mut abar, j + 1, beta, cnt);
        // [l, j, j+1] <- [l + j, l + j+1, l + j + j+1]
        for r in 0..abar.rows() {
            let (x, y, z) = (abar.get(r, ell), abar.get(r, j), abar.get(r, j + 1));
            abar.set(r, ell, f.add(x, y));
            abar.set(r, j, f.add(x, z));
            abar.set(r, j + 1, f.add(f.add(x, y), z));
        }
        cnt.adds += 4 * abar.rows() as u64;
        delta = f.one();
        dd[ell] = f.one();
    }
    Ok(Folded {
        a: abar,
        d: dd,
        appended,
    })
}

/// `Low(A * D * A^T)`.
pub fn syrkd<F: SqrtField>(
    plan: &SyrkPlan<F>,
    a: &Matrix<F::Elem>,
    d: &DiagonalScaling<F::Elem>,
    cnt: &mut OpCount,
) -> Result<Matrix<F::Elem>> {
    let folded = fold_diagonal(plan.field(), a, d, cnt)?;
    syrk_fast(plan, &folded.a, cnt)
}

/// `Low(A * B * A^T)` for block-diagonal `B`.
pub fn syrkbd<F: SqrtField>(
    plan: &SyrkPlan<F>,
    a: &Matrix<F::Elem>,
    b: &BlockDiagonal<F::Elem>,
    cnt: &mut OpCount,
) -> Result<Matrix<F::Elem>> {
    let f = plan.field();
    let folded = fold_block_diagonal(f, a, b, cnt)?;
    let d = DiagonalScaling { entries: folded.d };
    syrkd(plan, &folded.a, &d, cnt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{BinaryField, PrimeField};
    use crate::matrix::{gemm_classical, random_matrix};
    use crate::winograd::RecursionPolicy;

    fn oracle<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
        let mut cnt = OpCount::default();
        let mut t = Matrix::zeros(f, a.rows(), b.cols());
        gemm_classical(f, f.one(), a.as_ref(), b.as_ref(), f.zero(), t.as_mut(), &mut cnt).unwrap();
        let at = a.transpose();
        let mut c = Matrix::zeros(f, a.rows(), a.rows());
        gemm_classical(f, f.one(), t.as_ref(), at.as_ref(), f.zero(), c.as_mut(), &mut cnt).unwrap();
        c
    }

    fn diag<F: Field>(f: &F, d: &[F::Elem]) -> Matrix<F::Elem> {
        Matrix::from_fn(d.len(), d.len(), |i, j| if i == j { d[i] } else { f.zero() })
    }

    fn plan<F: crate::field::SkewSource>(f: F) -> SyrkPlan<F> {
        SyrkPlan::new(f, RecursionPolicy::new(2, None).unwrap()).unwrap()
    }

    #[test]
    fn diagonal_examples_over_f7() {
        let f = PrimeField::new(7).unwrap();
        let pl = plan(f.clone());
        let i2 = Matrix::identity(&f, 2);
        let c = syrkd(&pl, &i2, &DiagonalScaling { entries: vec![3, 5] }, &mut OpCount::default()).unwrap();
        assert!(c.lower_eq(&diag(&f, &[3, 5])));

        let one = Matrix::from_vec(1, 1, vec![1]).unwrap();
        let d = DiagonalScaling { entries: vec![3] };
        let folded = fold_diagonal(&f, &one, &d, &mut OpCount::default()).unwrap();
        assert_eq!((folded.a.cols(), folded.appended), (2, 1));
        assert_eq!(syrkd(&pl, &one, &d, &mut OpCount::default()).unwrap().get(0, 0), 3);

        let a = random_matrix(&f, 3, 2, 1);
        let d = DiagonalScaling { entries: vec![0, 2] };
        let c = syrkd(&pl, &a, &d, &mut OpCount::default()).unwrap();
        assert!(c.lower_eq(&oracle(&f, &a, &diag(&f, &d.entries))));
    }

    #[test]
    fn antidiagonal_odd_characteristic() {
        let f = PrimeField::new(7).unwrap();
        let b = BlockDiagonal::new(&f, vec![Block::TwoByTwo { beta: 1, gamma: 0 }]).unwrap();
        let i2 = Matrix::identity(&f, 2);
        let folded = fold_block_diagonal(&f, &i2, &b, &mut OpCount::default()).unwrap();
        assert_eq!(folded.d, vec![4, 3]);
        let c = syrkbd(&plan(f.clone()), &i2, &b, &mut OpCount::default()).unwrap();
        assert!(c.lower_eq(&b.to_dense(&f)));
    }

    #[test]
    fn characteristic_two_cases() {
        let f = BinaryField::new(1).unwrap();
        let pl = plan(f.clone());
        let i2 = Matrix::identity(&f, 2);
        let b = BlockDiagonal::new(&f, vec![Block::TwoByTwo { beta: 1, gamma: 1 }]).unwrap();
        let c = syrkbd(&pl, &i2, &b, &mut OpCount::default()).unwrap();
        assert!(c.lower_eq(&Matrix::from_vec(2, 2, vec![0, 1, 1, 1]).unwrap()));

        let i3 = Matrix::identity(&f, 3);
        let b = BlockDiagonal::new(&f, vec![Block::Scalar(1), Block::TwoByTwo { beta: 1, gamma: 0 }]).unwrap();
        let c = syrkbd(&pl, &i3, &b, &mut OpCount::default()).unwrap();
        assert!(c.lower_eq(&Matrix::from_vec(3, 3, vec![1, 0, 0, 0, 0, 1, 0, 1, 0]).unwrap()));

        let b = BlockDiagonal::new(&f, vec![Block::TwoByTwo { beta: 1, gamma: 0 }; 2]).unwrap();
        let a = random_matrix(&f, 5, 4, 3);
        let folded = fold_block_diagonal(&f, &a, &b, &mut OpCount::default()).unwrap();
        assert_eq!((folded.a.cols(), folded.appended), (5, 1));
        let c = syrkbd(&pl, &a, &b, &mut OpCount::default()).unwrap();
        assert!(c.lower_eq(&oracle(&f, &a, &b.to_dense(&f))));
    }

    #[test]
    fn repeated_pivot_is_not_rescaled() {
        let f = BinaryField::new(4).unwrap();
        let blocks = vec![
            Block::Scalar(7),
            Block::TwoByTwo { beta: 3, gamma: 0 },
            Block::TwoByTwo { beta: 9, gamma: 0 },
        ];
        let b = BlockDiagonal::new(&f, blocks).unwrap();
        let a = random_matrix(&f, 6, 5, 4);
        let c = syrkbd(&plan(f.clone()), &a, &b, &mut OpCount::default()).unwrap();
        assert!(c.lower_eq(&oracle(&f, &a, &b.to_dense(&f))));
    }

    #[test]
    fn malformed_blocks() {
        let f = PrimeField::new(7).unwrap();
        assert!(matches!(
            BlockDiagonal::new(&f, vec![Block::TwoByTwo { beta: 0, gamma: 0 }]),
            Err(Error::MalformedBlock(_))
        ));
        let b = BlockDiagonal::new(&f, vec![Block::TwoByTwo { beta: 1, gamma: 2 }]).unwrap();
        let i2 = Matrix::identity(&f, 2);
        assert!(matches!(
            syrkbd(&plan(f), &i2, &b, &mut OpCount::default()),
            Err(Error::MalformedBlock(_))
        ));
    }

    #[test]
    fn text_format_round_trip() {
        let f = PrimeField::new(13).unwrap();
        let b = BlockDiagonal::parse(&f, "# blocks\nS 3\n\nT 5 0\nS 0\n".as_bytes()).unwrap();
        assert_eq!(b.dim(), 4);
        assert_eq!(BlockDiagonal::parse(&f, b.format(&f).as_bytes()).unwrap(), b);
        for bad in ["X 1\n", "S\n", "T 1\n", "S 99\n", "T 0 1\n"] {
            assert!(BlockDiagonal::parse(&f, bad.as_bytes()).is_err(), "{bad:?}");
        }
    }

    #[test]
    fn dimension_mismatch() {
        let f = PrimeField::new(7).unwrap();
        let a = Matrix::identity(&f, 3);
        assert!(matches!(
            syrkd(&plan(f), &a, &DiagonalScaling { entries: vec![1, 2] }, &mut OpCount::default()),
            Err(Error::DimensionMismatch(_))
        ));
    }
}

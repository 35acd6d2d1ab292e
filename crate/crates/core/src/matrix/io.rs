//! Plain-text matrix format.
//!
//! ```text
//! rows cols
//! a00 a01 ...
//! a10 a11 ...
//! ```
//!
//! Entries use [`Field::format_elem`] / [`Field::parse_elem`]. Blank lines
//! and lines starting with `#` are skipped.

use super::Matrix;
use crate::error::{Error, Result};
use crate::field::Field;
use std::io::{BufRead, Write};

pub fn write_matrix<F: Field, W: Write>(f: &F, m: &Matrix<F::Elem>, mut w: W) -> Result<()> {
    writeln!(w, "{} {}", m.rows(), m.cols())?;
    for i in 0..m.rows() {
        let line: Vec<String> = (0..m.cols()).map(|j| f.format_elem(m.get(i, j))).collect();
        writeln!(w, "{}", line.join(" "))?;
    }
    Ok(())
}

pub fn read_matrix<F: Field, R: BufRead>(f: &F, r: R) -> Result<Matrix<F::Elem>> {
    let mut lines = r
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| l.as_ref().map_or(true, |s| !s.trim().is_empty() && !s.trim_start().starts_with('#')));
    let parse_err = |line, msg: String| Error::Parse { line, msg };

    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing header".into()))?;
    let header = header?;
    let dims: Vec<usize> = header
        .split_whitespace()
        .map(|t| t.parse().map_err(|e| parse_err(hline, format!("`{t}`: {e}"))))
        .collect::<Result<_>>()?;
    let [rows, cols] = dims[..] else {
        return Err(parse_err(hline, format!("expected `rows cols`, got `{header}`")));
    };

    let mut data = Vec::with_capacity(rows * cols);
    // rows of a matrix without columns are blank and were skipped
    let body_rows = if cols == 0 { 0 } else { rows };
    for i in 0..body_rows {
        let (lno, line) = lines
            .next()
            .ok_or_else(|| parse_err(hline + i + 1, format!("expected {rows} rows, found {i}")))?;
        let line = line?;
        let before = data.len();
        for tok in line.split_whitespace() {
            data.push(f.parse_elem(tok).map_err(|m| parse_err(lno, m))?);
        }
        if data.len() - before != cols {
            return Err(parse_err(lno, format!("expected {cols} entries, got {}", data.len() - before)));
        }
    }
    if let Some((lno, _)) = lines.next() {
        return Err(parse_err(lno, "trailing data after the last row".into()));
    }
    Matrix::from_vec(rows, cols, data)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{BinaryField, ComplexField, PrimeField, QuadExtField};
    use crate::matrix::random_matrix;
    use proptest::prelude::*;

    fn round_trip<F: Field>(f: &F, m: &Matrix<F::Elem>) -> Matrix<F::Elem> {
        let mut buf = Vec::new();
        write_matrix(f, m, &mut buf).unwrap();
        read_matrix(f, buf.as_slice()).unwrap()
    }

    #[test]
    fn parses_small_file() {
        let f = PrimeField::new(101).unwrap();
        let m = read_matrix(&f, "# comment\n2 2\n1 2\n\n3 4\n".as_bytes()).unwrap();
        assert_eq!(m.data(), &[1, 2, 3, 4]);
    }

    #[test]
    fn rejects_malformed() {
        let f = PrimeField::new(7).unwrap();
        for bad in ["", "2\n", "2 2\n1 2\n", "2 2\n1 2\n3\n", "1 1\n9\n", "1 1\nx\n", "1 1\n1\n2\n"] {
            assert!(matches!(read_matrix(&f, bad.as_bytes()), Err(Error::Parse { .. })), "{bad:?}");
        }
    }

    #[test]
    fn round_trips_other_fields() {
        let c = random_matrix(&ComplexField, 4, 3, 1);
        assert_eq!(round_trip(&ComplexField, &c), c);
        let q = QuadExtField::new(13).unwrap();
        let m = random_matrix(&q, 3, 3, 2);
        assert_eq!(round_trip(&q, &m), m);
        let g = BinaryField::new(8).unwrap();
        let m = random_matrix(&g, 2, 5, 3);
        assert_eq!(round_trip(&g, &m), m);
    }

    proptest! {
        #[test]
        fn prime_round_trip(rows in 0usize..6, cols in 0usize..6, seed: u64) {
            let f = PrimeField::new(131071).unwrap();
            let m = random_matrix(&f, rows, cols, seed);
            prop_assert_eq!(round_trip(&f, &m), m);
        }

        #[test]
        fn complex_round_trip_is_bit_exact(re in proptest::num::f64::NORMAL, im in proptest::num::f64::ANY) {
            let m = Matrix::from_vec(1, 1, vec![num_complex::Complex64::new(re, im)]).unwrap();
            let back = round_trip(&ComplexField, &m);
            prop_assert_eq!(back.get(0, 0).re.to_bits(), re.to_bits());
            if !im.is_nan() {
                prop_assert_eq!(back.get(0, 0).im.to_bits(), im.to_bits());
            }
        }
    }
}

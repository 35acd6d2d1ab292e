//! Closed-form operation counts for square power-of-two sizes.

use crate::error::{Error, Result};
use std::fmt::Write as _;

/// How a half addition (lower triangle only) of an `m x m` block is counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum HalfConvention {
    /// `m(m+1)/2`, what the instrumented kernels actually perform.
    Triangular,
    /// `m^2/2`.
    SquareHalf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    ClassicalGemm,
    ClassicalSyrk,
    /// Block divide and conquer: four symmetric and two general products.
    SyrkDC,
    /// Five-product method; `y` is the per-entry cost of applying `Y`.
    FastSyrk { y: u8 },
    WinogradGemm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CountModel {
    pub algorithm: Algorithm,
    pub n: u64,
    /// Recursion levels of the algorithm itself. Symmetric methods use
    /// `rec - 1` Winograd levels in their general products.
    pub rec: u32,
    pub half: HalfConvention,
}

impl CountModel {
    pub fn new(algorithm: Algorithm, n: u64, rec: u32, half: HalfConvention) -> Self {
        CountModel { algorithm, n, rec, half }
    }
}

fn gemm(n: u64) -> u64 {
    2 * n * n * n - n * n
}

fn syrk(n: u64) -> u64 {
    n * n * (n + 1) / 2 + (n - 1) * n * (n + 1) / 2
}

fn winograd(n: u64, levels: u32) -> u64 {
    if levels == 0 {
        return gemm(n);
    }
    let m = n / 2;
    7 * winograd(m, levels - 1) + 15 * m * m
}

fn half(m: u64, conv: HalfConvention) -> u64 {
    match conv {
        HalfConvention::Triangular => m * (m + 1) / 2,
        HalfConvention::SquareHalf => m * m / 2,
    }
}

fn fast(n: u64, rec: u32, y: u64, conv: HalfConvention) -> u64 {
    if rec == 0 {
        return syrk(n);
    }
    let m = n / 2;
    3 * fast(m, rec - 1, y, conv) + 2 * winograd(m, rec - 1) + 6 * m * m + 3 * half(m, conv) + 2 * y * m * m
}

fn dc(n: u64, rec: u32) -> u64 {
    if rec == 0 {
        return syrk(n);
    }
    let m = n / 2;
    4 * dc(m, rec - 1) + 2 * winograd(m, rec - 1) + m * m + 2 * (m * (m + 1) / 2)
}

/// Total scalar operations (multiplications plus additions).
pub fn count(model: &CountModel) -> Result<u64> {
    let CountModel { algorithm, n, rec, half } = *model;
    if n == 0 || !n.is_power_of_two() {
        return Err(Error::InvalidParameter(format!("size {n} is not a power of two")));
    }
    let need = |min: u64| {
        if n < min {
            Err(Error::InvalidParameter(format!(
                "{rec} levels of {algorithm:?} need n >= {min}, got {n}"
            )))
        } else {
            Ok(())
        }
    };
    Ok(match algorithm {
        Algorithm::ClassicalGemm => gemm(n),
        Algorithm::ClassicalSyrk => syrk(n),
        Algorithm::WinogradGemm => {
            need(1u64 << rec)?;
            winograd(n, rec)
        }
        Algorithm::SyrkDC => {
            need(1u64 << rec)?;
            dc(n, rec)
        }
        Algorithm::FastSyrk { y } => {
            if y > 3 {
                return Err(Error::InvalidParameter(format!("y must be in 0..=3, got {y}")));
            }
            if rec > 0 {
                need(2u64 << rec)?;
            }
            fast(n, rec, u64::from(y), half)
        }
    })
}

/// One row of the table of counts: label, recursion levels and
/// `(n, count)` for every valid size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub label: String,
    pub rec: u32,
    pub counts: Vec<(u64, u64)>,
}

pub const TABLE_SIZES: [u64; 6] = [4, 8, 16, 32, 64, 128];

/// Classical `syrk`, then for each of 1 to 4 levels the divide and conquer
/// row `Syrk` and the fast rows `G0`..`G3` (by cost of `Y`). The fast rows
/// use [`HalfConvention::SquareHalf`].
pub fn table5() -> Vec<TableRow> {
    let row = |label: String, rec: u32, alg: Algorithm, conv| TableRow {
        counts: TABLE_SIZES
            .iter()
            .filter_map(|&n| count(&CountModel::new(alg, n, rec, conv)).ok().map(|c| (n, c)))
            .collect(),
        label,
        rec,
    };
    let mut rows = vec![row("syrk".into(), 0, Algorithm::ClassicalSyrk, HalfConvention::Triangular)];
    for rec in 1..=4 {
        rows.push(row("Syrk".into(), rec, Algorithm::SyrkDC, HalfConvention::Triangular));
        for y in 0..=3 {
            rows.push(row(format!("G{y}"), rec, Algorithm::FastSyrk { y }, HalfConvention::SquareHalf));
        }
    }
    rows
}

/// [`table5`] as CSV with header `algorithm,rec,n,count`.
pub fn table5_csv() -> String {
    let mut s = String::from("algorithm,rec,n,count\n");
    for r in table5() {
        for (n, c) in &r.counts {
            writeln!(s, "{},{},{n},{c}", r.label, r.rec).expect("writing to a String");
        }
    }
    s
}

/// Smallest tabulated `n` where one fast level beats the classical count.
pub fn crossover(y: u8) -> Result<Option<u64>> {
    for n in TABLE_SIZES {
        let f = count(&CountModel::new(Algorithm::FastSyrk { y }, n, 1, HalfConvention::SquareHalf))?;
        if f < syrk(n) {
            return Ok(Some(n));
        }
    }
    Ok(None)
}

/// Fast symmetric count over the Winograd count at equal depth.
pub fn ratio(n: u64, rec: u32, y: u8) -> Result<f64> {
    let f = count(&CountModel::new(Algorithm::FastSyrk { y }, n, rec, HalfConvention::SquareHalf))?;
    let w = count(&CountModel::new(Algorithm::WinogradGemm, n, rec, HalfConvention::SquareHalf))?;
    Ok(f as f64 / w as f64)
}

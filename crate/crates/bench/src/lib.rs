//! Inputs shared by the criterion benchmarks.

use fastsyrk::{random_matrix, Matrix, PrimeField, RecursionPolicy, SyrkPlan};

/// Largest prime below 2^17, small enough for delayed reduction.
pub const PRIME: u64 = 131071;

pub struct Fixture {
    pub field: PrimeField,
    pub a: Matrix<u64>,
    pub at: Matrix<u64>,
    pub policy: RecursionPolicy,
    pub plan: SyrkPlan<PrimeField>,
}

pub fn fixture(n: usize, threshold: usize, seed: u64) -> Fixture {
    let field = PrimeField::new(PRIME).expect("prime");
    let a = random_matrix(&field, n, n, seed);
    let at = a.transpose();
    let policy = RecursionPolicy::new(threshold, None).expect("threshold >= 2");
    let plan = SyrkPlan::new(field.clone(), policy).expect("plan over F_p");
    Fixture { field, a, at, policy, plan }
}

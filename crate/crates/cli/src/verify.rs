use crate::Failure;
use fastsyrk::field::SqrtField;
use fastsyrk::{
    gemm_3m_complex, gemm_classical, herk_fast, random_matrix, syrk_2m_complex, syrk_fast, syrk_fast_acc, syrkbd,
    syrkd, BinaryField, Block, BlockDiagonal, ComplexField, ComplexTally, DiagonalScaling, Field, Matrix, OpCount,
    PrimeField, QuadExtField, RecursionPolicy, SkewSource, SyrkPlan,
};
use num_complex::Complex64;

pub struct Config {
    pub policy: RecursionPolicy,
    pub n: usize,
    pub k: usize,
    pub seed: u64,
    pub alpha: Option<String>,
    pub beta: Option<String>,
}

const COMPLEX_TOL: f64 = 1e-9;

#[derive(Default)]
struct Report {
    cases: usize,
    failed: usize,
}

impl Report {
    fn case(&mut self, name: String, ok: bool) {
        self.cases += 1;
        if !ok {
            self.failed += 1;
        }
        println!("{} {name}", if ok { "PASS" } else { "FAIL" });
    }

    fn finish(self) -> bool {
        if self.failed == 0 {
            println!("PASS ({} cases)", self.cases);
        } else {
            println!("FAIL ({} of {} cases)", self.failed, self.cases);
        }
        self.failed == 0
    }
}

fn shapes(n: usize, k: usize) -> Vec<(usize, usize)> {
    vec![(n, k), (n + 1, k + 3), ((n / 2).max(1), 2 * k + 1), (n, 1)]
}

fn policies(cfg: &Config) -> [RecursionPolicy; 2] {
    [cfg.policy, RecursionPolicy::new(2, None).expect("valid threshold")]
}

/// `alpha * A * B + beta * C` by the classical kernel.
fn classical<F: Field>(
    f: &F,
    alpha: F::Elem,
    a: &Matrix<F::Elem>,
    b: &Matrix<F::Elem>,
    beta: F::Elem,
    c: &Matrix<F::Elem>,
) -> Matrix<F::Elem> {
    let mut out = c.clone();
    gemm_classical(f, alpha, a.as_ref(), b.as_ref(), beta, out.as_mut(), &mut OpCount::default())
        .expect("shapes agree");
    out
}

fn gram<F: Field>(f: &F, a: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    let z = Matrix::zeros(f, a.rows(), a.rows());
    classical(f, f.one(), a, &a.transpose(), f.zero(), &z)
}

fn scalar<F: Field>(f: &F, given: &Option<String>, fallback: F::Elem) -> Result<F::Elem, Failure> {
    match given {
        Some(s) => f.parse_elem(s).map_err(Failure::Usage),
        None => Ok(fallback),
    }
}

fn symmetric_battery<F: SkewSource>(f: &F, cfg: &Config, rep: &mut Report) -> Result<(), Failure> {
    let mut seed = cfg.seed;
    for policy in policies(cfg) {
        let plan = SyrkPlan::new(f.clone(), policy)?;
        for (n, k) in shapes(cfg.n, cfg.k) {
            seed += 1;
            let a = random_matrix(f, n, k, seed);
            let c = syrk_fast(&plan, &a, &mut OpCount::default())?;
            rep.case(
                format!("syrk {n}x{k} threshold {}", policy.threshold),
                c.lower_eq(&gram(f, &a)),
            );
        }
        let (n, k) = (cfg.n, cfg.k);
        let draws = random_matrix(f, 1, 2, seed + 100).into_data();
        let alpha = scalar(f, &cfg.alpha, draws[0])?;
        let beta = scalar(f, &cfg.beta, draws[1])?;
        let a = random_matrix(f, n, k, seed + 101);
        let c0 = random_matrix(f, n, n, seed + 102);
        let mut c = c0.clone();
        syrk_fast_acc(&plan, alpha, a.as_ref(), beta, c.as_mut(), &mut OpCount::default())?;
        let want = classical(f, alpha, &a, &a.transpose(), beta, &c0);
        rep.case(
            format!("accumulate {n}x{k} threshold {}", policy.threshold),
            c.lower_eq(&want),
        );
    }
    Ok(())
}

/// Block pattern of total dimension `dim`: scalars and antidiagonal blocks,
/// plus antitriangular ones in characteristic 2.
fn blocks<F: Field>(f: &F, dim: usize, seed: u64, all_antidiagonal: bool) -> Vec<Block<F::Elem>> {
    let vals = random_matrix(f, 1, 2 * dim + 2, seed).into_data();
    let nz = |v: F::Elem| if f.is_zero(v) { f.one() } else { v };
    let char2 = f.characteristic() == 2;
    let mut out = Vec::new();
    let (mut used, mut i) = (0, 0);
    while used < dim {
        let kind = if all_antidiagonal { 1 } else { i % 3 };
        if dim - used >= 2 && kind != 0 {
            let gamma = if char2 && kind == 2 { nz(vals[2 * i + 1]) } else { f.zero() };
            out.push(Block::TwoByTwo {
                beta: nz(vals[2 * i]),
                gamma,
            });
            used += 2;
        } else {
            out.push(Block::Scalar(vals[2 * i]));
            used += 1;
        }
        i += 1;
    }
    out
}

fn scaled_battery<F: SkewSource + SqrtField>(f: &F, cfg: &Config, rep: &mut Report) -> Result<(), Failure> {
    let plan = SyrkPlan::new(f.clone(), cfg.policy)?;
    let (n, k) = (cfg.n, cfg.k);
    let a = random_matrix(f, n, k, cfg.seed + 200);
    let d = random_matrix(f, 1, k, cfg.seed + 201).into_data();
    let dm = Matrix::from_fn(k, k, |i, j| if i == j { d[i] } else { f.zero() });
    let c = syrkd(&plan, &a, &DiagonalScaling { entries: d }, &mut OpCount::default())?;
    let z = Matrix::zeros(f, n, n);
    let want = |m: &Matrix<F::Elem>| {
        let am = classical(f, f.one(), &a, m, f.zero(), &Matrix::zeros(f, n, k));
        classical(f, f.one(), &am, &a.transpose(), f.zero(), &z)
    };
    rep.case(format!("diagonal scaling {n}x{k}"), c.lower_eq(&want(&dm)));

    let mut variants = vec![("block-diagonal scaling", false)];
    if f.characteristic() == 2 && k % 2 == 0 {
        variants.push(("antidiagonal-only scaling", true));
    }
    for (name, all_anti) in variants {
        let b = BlockDiagonal::new(f, blocks(f, k, cfg.seed + 202, all_anti))?;
        let c = syrkbd(&plan, &a, &b, &mut OpCount::default())?;
        rep.case(format!("{name} {n}x{k}"), c.lower_eq(&want(&b.to_dense(f))));
    }
    Ok(())
}

pub fn run_prime(f: &PrimeField, cfg: &Config) -> Result<bool, Failure> {
    let mut rep = Report::default();
    symmetric_battery(f, cfg, &mut rep)?;
    scaled_battery(f, cfg, &mut rep)?;
    Ok(rep.finish())
}

pub fn run_binary(f: &BinaryField, cfg: &Config) -> Result<bool, Failure> {
    let mut rep = Report::default();
    symmetric_battery(f, cfg, &mut rep)?;
    scaled_battery(f, cfg, &mut rep)?;
    Ok(rep.finish())
}

pub fn run_quad(f: &QuadExtField, cfg: &Config) -> Result<bool, Failure> {
    let mut rep = Report::default();
    symmetric_battery(f, cfg, &mut rep)?;
    for policy in policies(cfg) {
        let plan = SyrkPlan::hermitian(f.clone(), policy)?;
        let (n, k) = (cfg.n, cfg.k);
        let a = random_matrix(f, n, k, cfg.seed + 300);
        let c = herk_fast(&plan, &a, &mut OpCount::default())?;
        let mut want = Matrix::zeros(f, n, n);
        gemm_classical(f, f.one(), a.as_ref(), a.as_ref().adj(true), f.zero(), want.as_mut(), &mut OpCount::default())?;
        rep.case(format!("conjugate product {n}x{k} threshold {}", policy.threshold), c.lower_eq(&want));
    }
    Ok(rep.finish())
}

fn rel_err(x: &Matrix<Complex64>, y: &Matrix<Complex64>, lower_only: bool) -> f64 {
    let mut num = 0.0f64;
    let mut den = f64::MIN_POSITIVE;
    for i in 0..y.rows() {
        let end = if lower_only { i + 1 } else { y.cols() };
        for j in 0..end {
            num = num.max((x.get(i, j) - y.get(i, j)).norm());
            den = den.max(y.get(i, j).norm());
        }
    }
    num / den
}

pub fn run_complex(cfg: &Config) -> Result<bool, Failure> {
    let f = ComplexField;
    let mut rep = Report::default();
    let mut seed = cfg.seed;
    for policy in policies(cfg) {
        let plan = SyrkPlan::new(f.clone(), policy)?;
        for (n, k) in shapes(cfg.n, cfg.k) {
            seed += 1;
            let a = random_matrix(&f, n, k, seed);
            let c = syrk_fast(&plan, &a, &mut OpCount::default())?;
            let e = rel_err(&c, &gram(&f, &a), true);
            rep.case(
                format!("syrk {n}x{k} threshold {} (error {e:.1e})", policy.threshold),
                e <= COMPLEX_TOL,
            );
        }
    }
    let (n, k) = (cfg.n, cfg.k);
    let a = random_matrix(&f, n, k, seed + 1);
    let b = random_matrix(&f, k, n, seed + 2);
    let mut tally = ComplexTally::default();
    let s = syrk_2m_complex(&a, &cfg.policy, &mut tally)?;
    let e = rel_err(&s, &gram(&f, &a), false);
    rep.case(
        format!("2M symmetric {n}x{k}, {} real products (error {e:.1e})", tally.real_products),
        e <= COMPLEX_TOL && tally.real_products == 2,
    );
    let mut tally = ComplexTally::default();
    let g = gemm_3m_complex(&a, &b, &cfg.policy, &mut tally)?;
    let z = Matrix::zeros(&f, n, n);
    let e = rel_err(&g, &classical(&f, f.one(), &a, &b, f.zero(), &z), false);
    rep.case(
        format!("3M product {n}x{k}x{n}, {} real products (error {e:.1e})", tally.real_products),
        e <= COMPLEX_TOL && tally.real_products == 3,
    );
    Ok(rep.finish())
}

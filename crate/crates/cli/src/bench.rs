use crate::Failure;
use fastsyrk::{
    gemm_classical, random_matrix, syrk_classical, syrk_dc, syrk_fast_into, Matrix, OpCount, RecursionPolicy,
    SkewSource, SyrkPlan,
};
use std::time::Instant;

pub struct Config {
    pub start: usize,
    pub max: usize,
    pub seed: u64,
    pub csv: bool,
}

fn seconds(g: impl FnOnce()) -> f64 {
    let t = Instant::now();
    g();
    t.elapsed().as_secs_f64()
}

/// Effective rate `n^3 / (1e9 * seconds)`, which lets sub-cubic methods
/// exceed the nominal rate.
fn gfops(n: usize, s: f64) -> f64 {
    (n as f64).powi(3) / (1e9 * s.max(f64::MIN_POSITIVE))
}

pub fn run<F: SkewSource>(f: F, policy: &RecursionPolicy, cfg: &Config) -> Result<(), Failure> {
    if cfg.start == 0 || cfg.start > cfg.max {
        return Err(Failure::Usage(format!("empty size range {}..={}", cfg.start, cfg.max)));
    }
    let plan = SyrkPlan::new(f.clone(), *policy)?;
    if cfg.csv {
        println!("algorithm,n,seconds,effective_gfops");
    } else {
        println!("{:<10} {:>6} {:>12} {:>10}", "algorithm", "n", "seconds", "gfops");
    }
    let mut n = cfg.start;
    while n <= cfg.max {
        let a = random_matrix(&f, n, n, cfg.seed);
        let at = a.transpose();
        let mut c = Matrix::zeros(&f, n, n);
        let rows: [(&str, f64); 4] = [
            (
                "classical",
                seconds(|| {
                    syrk_classical(&f, f.one(), a.as_ref(), f.zero(), c.as_mut(), &mut OpCount::default())
                        .expect("square output")
                }),
            ),
            (
                "gemm",
                seconds(|| {
                    gemm_classical(&f, f.one(), a.as_ref(), at.as_ref(), f.zero(), c.as_mut(), &mut OpCount::default())
                        .expect("square output")
                }),
            ),
            (
                "dc",
                seconds(|| {
                    syrk_dc(&f, &a, policy, &mut OpCount::default()).expect("valid policy");
                }),
            ),
            (
                "fast",
                seconds(|| {
                    syrk_fast_into(&plan, a.as_ref(), c.as_mut(), &mut OpCount::default()).expect("square output")
                }),
            ),
        ];
        for (name, s) in rows {
            if cfg.csv {
                println!("{name},{n},{s:.6},{:.4}", gfops(n, s));
            } else {
                println!("{name:<10} {n:>6} {s:>12.6} {:>10.4}", gfops(n, s));
            }
        }
        n *= 2;
    }
    Ok(())
}

use crate::Failure;
use fastsyrk::field::SqrtField;
use fastsyrk::{
    count as model_count, random_matrix, read_matrix, syrk_fast, syrkbd, syrkd, write_matrix, Algorithm,
    BlockDiagonal, CountModel, Field, HalfConvention, Matrix, OpCount, RecursionPolicy, SkewSource, SyrkPlan,
};
use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;

pub fn count<F: SkewSource>(f: F, n: u64, rec: u32, seed: u64, csv: bool) -> Result<(), Failure> {
    if !n.is_power_of_two() || n < 2 {
        return Err(Failure::Usage(format!("--n must be a power of two, got {n}")));
    }
    let plan = SyrkPlan::new(f.clone(), RecursionPolicy::levels(rec as usize))?;
    let y = plan.ycost();
    let a = random_matrix(&f, n as usize, n as usize, seed);
    let mut cnt = OpCount::default();
    syrk_fast(&plan, &a, &mut cnt)?;
    let alg = Algorithm::FastSyrk { y };
    let tri = model_count(&CountModel::new(alg, n, rec, HalfConvention::Triangular))?;
    let sq = model_count(&CountModel::new(alg, n, rec, HalfConvention::SquareHalf))?;
    if csv {
        println!("field,n,rec,y,mults,adds,instrumented,analytic_triangular,analytic_square_half");
        println!("{},{n},{rec},{y},{},{},{},{tri},{sq}", f.name(), cnt.mults, cnt.adds, cnt.total());
    } else {
        println!("field                {}", f.name());
        println!("n, rec, y            {n}, {rec}, {y}");
        println!("instrumented         {} ({} mults, {} adds)", cnt.total(), cnt.mults, cnt.adds);
        println!("analytic triangular  {tri}");
        println!("analytic square-half {sq}");
    }
    Ok(())
}

pub struct SyrkJob {
    pub input: PathBuf,
    pub policy: RecursionPolicy,
    pub mirror: bool,
    pub scaling: Option<PathBuf>,
    pub output: Option<PathBuf>,
}

fn open(path: &PathBuf) -> Result<BufReader<File>, Failure> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn load<F: Field>(f: &F, path: &PathBuf) -> Result<Matrix<F::Elem>, Failure> {
    read_matrix(f, open(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn emit<F: Field>(f: &F, mut c: Matrix<F::Elem>, job: &SyrkJob) -> Result<(), Failure> {
    if job.mirror {
        for i in 0..c.rows() {
            for j in 0..i {
                let v = c.get(i, j);
                c.set(j, i, v);
            }
        }
    } else {
        for i in 0..c.rows() {
            for j in i + 1..c.cols() {
                c.set(i, j, f.zero());
            }
        }
    }
    match &job.output {
        Some(p) => {
            let file = File::create(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))?;
            write_matrix(f, &c, io::BufWriter::new(file))?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_matrix(f, &c, &mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

/// Without `--mirror` the upper triangle is written as zeros.
pub fn syrk_scalable<F: SkewSource + SqrtField>(f: F, job: &SyrkJob) -> Result<(), Failure> {
    let a = load(&f, &job.input)?;
    let plan = SyrkPlan::new(f.clone(), job.policy)?;
    let mut cnt = OpCount::default();
    let c = match &job.scaling {
        None => syrk_fast(&plan, &a, &mut cnt)?,
        Some(path) => {
            let b = BlockDiagonal::parse(&f, open(path)?).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
            match b.as_diagonal() {
                Some(d) => syrkd(&plan, &a, &d, &mut cnt)?,
                None => syrkbd(&plan, &a, &b, &mut cnt)?,
            }
        }
    };
    emit(&f, c, job)
}

pub fn syrk_plain<F: SkewSource>(f: F, job: &SyrkJob) -> Result<(), Failure> {
    if job.scaling.is_some() {
        return Err(Failure::Usage(format!("--scaling is not available over {}", f.name())));
    }
    let a = load(&f, &job.input)?;
    let plan = SyrkPlan::new(f.clone(), job.policy)?;
    let c = syrk_fast(&plan, &a, &mut OpCount::default())?;
    emit(&f, c, job)
}

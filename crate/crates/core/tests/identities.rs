//! Intermediate blocks of one recursion level satisfy the defining
//! identities of the five-product method.

mod common;

use common::{conj_transpose, gram, product};
use fastsyrk::{
    random_matrix, syrk_fast_traced, BinaryField, Field, Matrix, OpCount, PrimeField, QuadExtField, RecursionPolicy,
    SkewSource, SyrkPlan, SyrkTrace,
};

fn sub<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| f.sub(a.get(i, j), b.get(i, j)))
}

fn add<F: Field>(f: &F, a: &Matrix<F::Elem>, b: &Matrix<F::Elem>) -> Matrix<F::Elem> {
    Matrix::from_fn(a.rows(), a.cols(), |i, j| f.add(a.get(i, j), b.get(i, j)))
}

fn traced<F: Field>(plan: &SyrkPlan<F>, a: &Matrix<F::Elem>) -> (Matrix<F::Elem>, SyrkTrace<F::Elem>) {
    let (c, t) = syrk_fast_traced(plan, a, &mut OpCount::default()).unwrap();
    (c, t.expect("one fast level applies"))
}

fn check_level<F: SkewSource>(f: F, n: usize, seed: u64) {
    let plan = SyrkPlan::new(f.clone(), RecursionPolicy::levels(1)).unwrap();
    let a = random_matrix(&f, n, n, seed);
    let (c, t) = traced(&plan, &a);
    let m = n / 2;
    let (a11, a12, a21, a22) = (a.block(0, 0, m, m), a.block(0, m, m, m), a.block(m, 0, m, m), a.block(m, m, m, m));
    let y = plan.skew(m).unwrap().materialize(&f);

    assert_eq!(t.s1, product(&f, &sub(&f, &a21, &a11), &y));
    assert_eq!(t.s2, sub(&f, &a22, &product(&f, &a21, &y)));
    assert_eq!(t.s3, sub(&f, &t.s1, &a22));
    assert_eq!(t.s4, add(&f, &t.s3, &a12));
    assert_eq!(t.p1, gram(&f, &a11));
    assert_eq!(t.p2, gram(&f, &a12));
    assert_eq!(t.p3, product(&f, &a22, &t.s4.transpose()));
    assert_eq!(t.p4, product(&f, &t.s1, &t.s2.transpose()));
    assert_eq!(t.p5, gram(&f, &t.s3));
    assert_eq!(t.u1, add(&f, &t.p1, &t.p5));
    assert_eq!(t.u2, add(&f, &t.u1, &t.p4));
    assert_eq!(t.u3, add(&f, &t.p1, &t.p2));
    assert_eq!(t.u4, add(&f, &t.u2, &t.p3));
    assert_eq!(t.u5, add(&f, &t.u2, &t.p4.transpose()));

    // the three output blocks
    assert!(t.u3.lower_eq(&c.block(0, 0, m, m)));
    assert_eq!(t.u4, c.block(m, 0, m, m));
    assert!(t.u5.lower_eq(&c.block(m, m, m, m)));
    let full = gram(&f, &a);
    assert_eq!(t.u3, full.block(0, 0, m, m));
    assert_eq!(t.u4, full.block(m, 0, m, m));
    assert_eq!(t.u5, full.block(m, m, m, m));
}

#[test]
fn identities_with_scalar_root() {
    for seed in 0..5 {
        check_level(PrimeField::new(13).unwrap(), 8, seed);
        check_level(PrimeField::new(131041).unwrap(), 16, seed);
    }
}

#[test]
fn identities_with_pair_form() {
    for seed in 0..5 {
        check_level(PrimeField::new(7).unwrap(), 8, seed);
        check_level(PrimeField::new(11).unwrap(), 12, seed);
        check_level(PrimeField::new(131071).unwrap(), 16, seed);
    }
}

#[test]
fn identities_in_characteristic_two() {
    for seed in 0..5 {
        check_level(BinaryField::new(1).unwrap(), 8, seed);
        check_level(BinaryField::new(8).unwrap(), 16, seed);
    }
}

#[test]
fn conjugate_identities() {
    let q = QuadExtField::new(11).unwrap();
    let plan = SyrkPlan::hermitian(q.clone(), RecursionPolicy::levels(1)).unwrap();
    let a = random_matrix(&q, 8, 8, 1);
    let (_, t) = traced(&plan, &a);
    let full = product(&q, &a, &conj_transpose(&q, &a));
    assert_eq!(t.u3, full.block(0, 0, 4, 4));
    assert_eq!(t.u4, full.block(4, 0, 4, 4));
    assert_eq!(t.u5, full.block(4, 4, 4, 4));
}

#[test]
fn no_trace_below_threshold() {
    let f = PrimeField::new(13).unwrap();
    let plan = SyrkPlan::new(f.clone(), RecursionPolicy::new(16, None).unwrap()).unwrap();
    let (c, t) = syrk_fast_traced(&plan, &random_matrix(&f, 8, 8, 0), &mut OpCount::default()).unwrap();
    assert!(t.is_none());
    assert_eq!(c.rows(), 8);
}

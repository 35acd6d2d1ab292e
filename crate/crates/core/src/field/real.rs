use super::Field;
use rand::{Rng, RngCore};

/// Real `f64` arithmetic. Only used as the product engine behind the complex
/// 2M/3M methods; the reals admit no skew-orthogonal matrix.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RealField;

impl Field for RealField {
    type Elem = f64;

    fn zero(&self) -> f64 {
        0.0
    }
    fn one(&self) -> f64 {
        1.0
    }
    #[inline]
    fn add(&self, a: f64, b: f64) -> f64 {
        a + b
    }
    #[inline]
    fn sub(&self, a: f64, b: f64) -> f64 {
        a - b
    }
    #[inline]
    fn neg(&self, a: f64) -> f64 {
        -a
    }
    #[inline]
    fn mul(&self, a: f64, b: f64) -> f64 {
        a * b
    }
    fn inv(&self, a: f64) -> Option<f64> {
        (a != 0.0).then(|| 1.0 / a)
    }
    fn from_i64(&self, v: i64) -> f64 {
        v as f64
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> f64 {
        rng.gen_range(-1.0..1.0)
    }
    fn name(&self) -> String {
        "R".into()
    }
    fn format_elem(&self, a: f64) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> Result<f64, String> {
        s.parse().map_err(|e| format!("`{s}`: {e}"))
    }
    fn is_exact(&self) -> bool {
        false
    }
}

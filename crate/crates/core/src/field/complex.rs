use super::Field;
use num_complex::Complex64;
use rand::{Rng, RngCore};

/// Complex numbers as pairs of `f64`.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ComplexField;

impl Field for ComplexField {
    type Elem = Complex64;

    fn zero(&self) -> Complex64 {
        Complex64::new(0.0, 0.0)
    }
    fn one(&self) -> Complex64 {
        Complex64::new(1.0, 0.0)
    }
    #[inline]
    fn add(&self, a: Complex64, b: Complex64) -> Complex64 {
        a + b
    }
    #[inline]
    fn sub(&self, a: Complex64, b: Complex64) -> Complex64 {
        a - b
    }
    #[inline]
    fn neg(&self, a: Complex64) -> Complex64 {
        -a
    }
    #[inline]
    fn mul(&self, a: Complex64, b: Complex64) -> Complex64 {
        // multiplication by +-i is a swap and a sign flip
        if b.re == 0.0 && b.im.abs() == 1.0 {
            return Complex64::new(-a.im * b.im, a.re * b.im);
        }
        a * b
    }
    fn inv(&self, a: Complex64) -> Option<Complex64> {
        (a != self.zero()).then(|| a.inv())
    }
    fn from_i64(&self, v: i64) -> Complex64 {
        Complex64::new(v as f64, 0.0)
    }
    fn characteristic(&self) -> u64 {
        0
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> Complex64 {
        Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))
    }
    fn name(&self) -> String {
        "C".into()
    }
    fn format_elem(&self, a: Complex64) -> String {
        // `Display` for f64 prints the shortest string that parses back to
        // the same bits
        format!("{},{}", a.re, a.im)
    }
    fn parse_elem(&self, s: &str) -> Result<Complex64, String> {
        let (re, im) = s
            .split_once(',')
            .ok_or_else(|| format!("`{s}`: expected `re,im`"))?;
        let re: f64 = re.parse().map_err(|e| format!("`{s}`: {e}"))?;
        let im: f64 = im.parse().map_err(|e| format!("`{s}`: {e}"))?;
        Ok(Complex64::new(re, im))
    }
    fn conj(&self, a: Complex64) -> Complex64 {
        a.conj()
    }
    fn is_exact(&self) -> bool {
        false
    }
}

use super::{Field, PrimeField, SqrtField};
use crate::error::{Error, Result};
use rand::RngCore;

/// Element `re + im * x` of `F_p[x] / (x^2 - ns)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Fp2 {
    pub re: u64,
    pub im: u64,
}

impl Fp2 {
    pub const fn new(re: u64, im: u64) -> Self {
        Fp2 { re, im }
    }
}

/// The quadratic extension `F_{p^2} = F_p[x] / (x^2 - ns)` of an odd prime
/// field, `ns` being the lowest non-residue modulo `p`.
///
/// Since `ns` is a non-residue, `x^p = ns^((p-1)/2) x = -x`, so the
/// Frobenius conjugate of `a + b x` is `a - b x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadExtField {
    base: PrimeField,
    ns: u64,
    /// A fixed non-square of `F_{p^2}` used by Tonelli-Shanks.
    non_square: Fp2,
}

impl QuadExtField {
    pub fn new(p: u64) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let ns = base.lqnr()?;
        let mut f = QuadExtField {
            base,
            ns,
            non_square: Fp2::new(0, 1),
        };
        let mut candidate = None;
        'scan: for im in 1..p {
            for re in 0..p {
                let z = Fp2::new(re, im);
                if !f.is_square(z) {
                    candidate = Some(z);
                    break 'scan;
                }
            }
        }
        f.non_square = candidate.expect("F_{p^2} has non-squares");
        Ok(f)
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn modulus(&self) -> u64 {
        self.base.modulus()
    }

    /// The non-residue `ns` defining the extension.
    pub fn non_residue(&self) -> u64 {
        self.ns
    }

    /// Embedding of the prime subfield.
    pub fn embed(&self, a: u64) -> Fp2 {
        Fp2::new(a % self.modulus(), 0)
    }

    /// Field norm `z * conj(z) = re^2 - ns * im^2`, an element of `F_p`.
    pub fn norm(&self, z: Fp2) -> u64 {
        let b = &self.base;
        b.sub(b.mul(z.re, z.re), b.mul(self.ns, b.mul(z.im, z.im)))
    }

    /// Integer encoding `re + p * im`, used by the text format and to pick a
    /// canonical square root.
    pub fn encode(&self, z: Fp2) -> u64 {
        z.re + self.modulus() * z.im
    }

    pub fn decode(&self, v: u64) -> Option<Fp2> {
        let p = self.modulus();
        (v < p * p).then(|| Fp2::new(v % p, v / p))
    }

    /// Tonelli-Shanks in the cyclic group of order `p^2 - 1`; returns the root
    /// with the smaller integer encoding.
    pub fn sqrt_elem(&self, n: Fp2) -> Result<Fp2> {
        if n == self.zero() {
            return Ok(n);
        }
        if !self.is_square(n) {
            return Err(Error::NonResidue);
        }
        let p = self.modulus() as u128;
        let order = p * p - 1;
        let s = order.trailing_zeros();
        let q = order >> s;
        let mut m = s;
        let mut c = self.pow(self.non_square, q);
        let mut t = self.pow(n, q);
        let mut r = self.pow(n, q.div_ceil(2));
        let one = self.one();
        while t != one {
            let mut i = 0;
            let mut t2 = t;
            while t2 != one {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let b = self.pow(c, 1u128 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        let other = self.neg(r);
        Ok(if self.encode(other) < self.encode(r) {
            other
        } else {
            r
        })
    }
}

impl Field for QuadExtField {
    type Elem = Fp2;

    fn zero(&self) -> Fp2 {
        Fp2::new(0, 0)
    }
    fn one(&self) -> Fp2 {
        Fp2::new(1, 0)
    }
    fn add(&self, a: Fp2, b: Fp2) -> Fp2 {
        Fp2::new(self.base.add(a.re, b.re), self.base.add(a.im, b.im))
    }
    fn sub(&self, a: Fp2, b: Fp2) -> Fp2 {
        Fp2::new(self.base.sub(a.re, b.re), self.base.sub(a.im, b.im))
    }
    fn neg(&self, a: Fp2) -> Fp2 {
        Fp2::new(self.base.neg(a.re), self.base.neg(a.im))
    }
    fn mul(&self, a: Fp2, b: Fp2) -> Fp2 {
        let p = self.base.modulus();
        let re = (a.re * b.re + (a.im * b.im % p) * self.ns) % p;
        let im = (a.re * b.im + a.im * b.re) % p;
        Fp2::new(re, im)
    }
    fn inv(&self, a: Fp2) -> Option<Fp2> {
        let n_inv = self.base.inv(self.norm(a))?;
        let c = self.conj(a);
        Some(Fp2::new(
            self.base.mul(c.re, n_inv),
            self.base.mul(c.im, n_inv),
        ))
    }
    fn from_i64(&self, v: i64) -> Fp2 {
        Fp2::new(self.base.reduce(v), 0)
    }
    fn characteristic(&self) -> u64 {
        self.modulus()
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> Fp2 {
        Fp2::new(self.base.random_elem(rng), self.base.random_elem(rng))
    }
    fn name(&self) -> String {
        format!("F_{}^2", self.modulus())
    }
    fn format_elem(&self, a: Fp2) -> String {
        self.encode(a).to_string()
    }
    fn parse_elem(&self, s: &str) -> std::result::Result<Fp2, String> {
        let v: u64 = s.parse().map_err(|e| format!("`{s}`: {e}"))?;
        self.decode(v)
            .ok_or_else(|| format!("{v} does not encode an element of {}", self.name()))
    }
    fn conj(&self, a: Fp2) -> Fp2 {
        Fp2::new(a.re, self.base.neg(a.im))
    }
}

impl SqrtField for QuadExtField {
    /// `z` is a square iff its norm is a square in `F_p`, since
    /// `z^((p^2-1)/2) = N(z)^((p-1)/2)`.
    fn is_square(&self, a: Fp2) -> bool {
        self.base.is_square(self.norm(a))
    }

    fn sqrt(&self, a: Fp2) -> Result<Fp2> {
        self.sqrt_elem(a)
    }

    fn nrsyf(&self, _alpha: Fp2, _beta: Fp2) -> Result<[[Fp2; 2]; 2]> {
        Err(Error::Unsupported(
            "sum-of-squares factorization over an even extension".into(),
        ))
    }
}

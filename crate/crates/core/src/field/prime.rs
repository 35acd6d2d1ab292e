use super::{Field, SqrtField};
use crate::error::{Error, Result};
use rand::{Rng, RngCore};

/// The prime field `Z/pZ` for `2 <= p < 2^31`.
///
/// Elements are canonical residues in `[0, p)` stored in a `u64`, so a
/// product of two of them never exceeds 62 bits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
    /// Lowest quadratic non-residue, found once at construction. `None` for
    /// `p = 2`.
    lqnr: Option<u64>,
}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if !(2..1 << 31).contains(&p) {
            return Err(Error::ModulusOutOfRange(p));
        }
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut f = PrimeField { p, lqnr: None };
        if p > 2 {
            let mut s = 2;
            while f.euler_criterion(s) != p - 1 {
                s += 1;
            }
            f.lqnr = Some(s);
        }
        Ok(f)
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    /// Reduce an arbitrary integer into `[0, p)`.
    pub fn reduce(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    fn euler_criterion(&self, k: u64) -> u64 {
        self.pow(k % self.p, ((self.p - 1) / 2) as u128)
    }

    /// Legendre symbol `(k / p)` in `{-1, 0, 1}`.
    pub fn legendre(&self, k: u64) -> Result<i8> {
        if self.p == 2 {
            return Err(Error::CharacteristicTwo);
        }
        Ok(match self.euler_criterion(k) {
            0 => 0,
            1 => 1,
            _ => -1,
        })
    }

    /// Smallest `s >= 2` that is not a square modulo `p`.
    pub fn lqnr(&self) -> Result<u64> {
        self.lqnr.ok_or(Error::CharacteristicTwo)
    }

    /// Square root with the canonical choice `min(r, p - r)`.
    pub fn sqrt_mod(&self, k: u64) -> Result<u64> {
        let k = k % self.p;
        if k == 0 || self.p == 2 {
            return Ok(k);
        }
        if self.legendre(k)? != 1 {
            return Err(Error::NonResidue);
        }
        let r = self.tonelli_shanks(k);
        Ok(r.min(self.p - r))
    }

    fn tonelli_shanks(&self, n: u64) -> u64 {
        let p = self.p;
        let mut q = p - 1;
        let mut s = 0u32;
        while q % 2 == 0 {
            q /= 2;
            s += 1;
        }
        if s == 1 {
            return self.pow(n, ((p + 1) / 4) as u128);
        }
        let z = self.lqnr.expect("odd prime has a non-residue");
        let mut m = s;
        let mut c = self.pow(z, q as u128);
        let mut t = self.pow(n, q as u128);
        let mut r = self.pow(n, q.div_ceil(2) as u128);
        while t != 1 {
            let mut i = 0;
            let mut t2 = t;
            while t2 != 1 {
                t2 = self.mul(t2, t2);
                i += 1;
            }
            let b = self.pow(c, 1u128 << (m - i - 1));
            m = i;
            c = self.mul(b, b);
            t = self.mul(t, c);
            r = self.mul(r, b);
        }
        r
    }

    /// Decompose `k` as `a^2 + b^2` modulo `p`.
    ///
    /// Squares come back as `(sqrt(k), 0)`. Otherwise, with `s` the lowest
    /// non-residue, `s - 1 = c^2` is a square and so is `r = k / s`, giving
    /// `k = a^2 (1 + c^2)` for `a = sqrt(r)`. All roots are canonical.
    pub fn sos(&self, k: u64) -> Result<(u64, u64)> {
        let k = k % self.p;
        if self.legendre(k)? >= 0 {
            return Ok((self.sqrt_mod(k)?, 0));
        }
        let s = self.lqnr()?;
        let c = self.sqrt_mod(s - 1)?;
        let r = self.mul(k, self.inv(s).expect("s is nonzero"));
        let a = self.sqrt_mod(r)?;
        Ok((a, self.mul(a, c)))
    }

    /// `Y = [[a, b], [c, d]]` with `Y * Y^T = diag(alpha, beta)`, both inputs
    /// being non-residues.
    pub fn nrsyf_mod(&self, alpha: u64, beta: u64) -> Result<[[u64; 2]; 2]> {
        let (alpha, beta) = (alpha % self.p, beta % self.p);
        if self.legendre(alpha)? != -1 || self.legendre(beta)? != -1 {
            return Err(Error::NotNonResidue);
        }
        let (a, b) = self.sos(alpha)?;
        let a_inv = self
            .inv(a)
            .expect("sum of squares of a non-residue has a != 0");
        let ratio = self.mul(beta, self.inv(alpha).expect("non-residue is nonzero"));
        let d = self.mul(a, self.sqrt_mod(ratio)?);
        let c = self.neg(self.mul(self.mul(b, d), a_inv));
        Ok([[a, b], [c, d]])
    }
}

impl Field for PrimeField {
    type Elem = u64;

    #[inline]
    fn zero(&self) -> u64 {
        0
    }
    #[inline]
    fn one(&self) -> u64 {
        1
    }
    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }
    #[inline]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
    #[inline]
    fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }
    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }
    fn inv(&self, a: u64) -> Option<u64> {
        if a % self.p == 0 {
            return None;
        }
        // extended Euclid on signed values
        let (mut r0, mut r1) = (self.p as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Some(self.reduce(t0))
    }
    fn from_i64(&self, v: i64) -> u64 {
        self.reduce(v)
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> u64 {
        rng.gen_range(0..self.p)
    }
    fn name(&self) -> String {
        format!("F_{}", self.p)
    }
    fn format_elem(&self, a: u64) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> std::result::Result<u64, String> {
        let v: u64 = s.parse().map_err(|e| format!("`{s}`: {e}"))?;
        if v >= self.p {
            return Err(format!("{v} is not a canonical residue modulo {}", self.p));
        }
        Ok(v)
    }

    #[inline]
    fn dot<A, B>(&self, len: usize, a: A, b: B) -> u64
    where
        A: Fn(usize) -> u64,
        B: Fn(usize) -> u64,
    {
        // products are < 2^62, so a u128 accumulator never overflows here
        let mut acc: u128 = 0;
        for l in 0..len {
            acc += (a(l) * b(l)) as u128;
        }
        (acc % self.p as u128) as u64
    }
}

impl SqrtField for PrimeField {
    fn is_square(&self, a: u64) -> bool {
        self.p == 2 || self.euler_criterion(a) != self.p - 1
    }

    fn sqrt(&self, a: u64) -> Result<u64> {
        self.sqrt_mod(a)
    }

    fn nrsyf(&self, alpha: u64, beta: u64) -> Result<[[u64; 2]; 2]> {
        self.nrsyf_mod(alpha, beta)
    }
}

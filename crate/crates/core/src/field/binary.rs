use super::{Field, SqrtField};
use crate::error::{Error, Result};
use rand::{Rng, RngCore};

/// Reduction polynomials for `GF(2^k)`, indexed by `k - 1`. Bit `i` is the
/// coefficient of `x^i`; each entry is a primitive polynomial of degree `k`.
pub const IRREDUCIBLE_POLYNOMIALS: [u32; 16] = [
    0b11,     // x + 1
    0b111,    // x^2 + x + 1
    0b1011,   // x^3 + x + 1
    0x13,     // x^4 + x + 1
    0x25,     // x^5 + x^2 + 1
    0x43,     // x^6 + x + 1
    0x83,     // x^7 + x + 1
    0x11d,    // x^8 + x^4 + x^3 + x^2 + 1
    0x211,    // x^9 + x^4 + 1
    0x409,    // x^10 + x^3 + 1
    0x805,    // x^11 + x^2 + 1
    0x1053,   // x^12 + x^6 + x^4 + x + 1
    0x201b,   // x^13 + x^4 + x^3 + x + 1
    0x4443,   // x^14 + x^10 + x^6 + x + 1
    0x8003,   // x^15 + x + 1
    0x1100b,  // x^16 + x^12 + x^3 + x + 1
];

/// `GF(2^k)` for `1 <= k <= 16` with schoolbook carry-less multiplication.
///
/// Elements are bit-packed polynomials of degree `< k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryField {
    k: u32,
    poly: u32,
}

impl BinaryField {
    pub fn new(k: u32) -> Result<Self> {
        if !(1..=16).contains(&k) {
            return Err(Error::DegreeOutOfRange(k));
        }
        Ok(BinaryField {
            k,
            poly: IRREDUCIBLE_POLYNOMIALS[k as usize - 1],
        })
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn order(&self) -> u32 {
        1 << self.k
    }

    pub fn polynomial(&self) -> u32 {
        self.poly
    }

    /// `x^(2^(k-1))`, the inverse of the Frobenius map.
    pub fn sqrt_elem(&self, a: u32) -> u32 {
        let mut r = a;
        for _ in 0..self.k - 1 {
            r = self.mul(r, r);
        }
        r
    }
}

impl Field for BinaryField {
    type Elem = u32;

    fn zero(&self) -> u32 {
        0
    }
    fn one(&self) -> u32 {
        1
    }
    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }
    #[inline]
    fn sub(&self, a: u32, b: u32) -> u32 {
        a ^ b
    }
    #[inline]
    fn neg(&self, a: u32) -> u32 {
        a
    }
    fn mul(&self, a: u32, b: u32) -> u32 {
        let mut prod: u64 = 0;
        let (a, mut b) = (a as u64, b);
        let mut shift = 0;
        while b != 0 {
            if b & 1 == 1 {
                prod ^= a << shift;
            }
            b >>= 1;
            shift += 1;
        }
        let k = self.k;
        for bit in (k..2 * k).rev() {
            if prod >> bit & 1 == 1 {
                prod ^= (self.poly as u64) << (bit - k);
            }
        }
        prod as u32
    }
    fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(self.pow(a, (self.order() - 2) as u128))
        }
    }
    fn from_i64(&self, v: i64) -> u32 {
        (v & 1) as u32
    }
    fn characteristic(&self) -> u64 {
        2
    }
    fn random_elem(&self, rng: &mut dyn RngCore) -> u32 {
        rng.gen_range(0..self.order())
    }
    fn name(&self) -> String {
        format!("GF(2^{})", self.k)
    }
    fn format_elem(&self, a: u32) -> String {
        a.to_string()
    }
    fn parse_elem(&self, s: &str) -> std::result::Result<u32, String> {
        let v: u32 = s.parse().map_err(|e| format!("`{s}`: {e}"))?;
        if v >= self.order() {
            return Err(format!("{v} is not an element of {}", self.name()));
        }
        Ok(v)
    }
}

impl SqrtField for BinaryField {
    fn is_square(&self, _a: u32) -> bool {
        true
    }

    fn sqrt(&self, a: u32) -> Result<u32> {
        Ok(self.sqrt_elem(a))
    }

    fn nrsyf(&self, _alpha: u32, _beta: u32) -> Result<[[u32; 2]; 2]> {
        // every element of GF(2^k) is a square
        Err(Error::NotNonResidue)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Polynomial remainder over GF(2), used as an independent check.
    fn poly_rem(mut a: u64, b: u64) -> u64 {
        let db = 63 - b.leading_zeros();
        while a != 0 && 63 - a.leading_zeros() >= db {
            a ^= b << (63 - a.leading_zeros() - db);
        }
        a
    }

    #[test]
    fn table_polynomials_are_irreducible() {
        for (i, &poly) in IRREDUCIBLE_POLYNOMIALS.iter().enumerate() {
            let k = i as u32 + 1;
            assert_eq!(63 - (poly as u64).leading_zeros(), k);
            // no factor of degree 1..=k/2
            for d in 1..=k / 2 {
                for f in (1u64 << d)..(1u64 << (d + 1)) {
                    assert_ne!(poly_rem(poly as u64, f), 0, "k={k} divisible by {f:b}");
                }
            }
        }
    }

    #[test]
    fn sqrt_of_generator_in_gf4() {
        let f = BinaryField::new(2).unwrap();
        let x = 0b10;
        let r = f.sqrt_elem(x);
        // x^2 = x + 1 in GF(4)
        assert_eq!(r, f.mul(x, x));
        assert_eq!(r, 0b11);
        assert_eq!(f.mul(r, r), x);
    }

    #[test]
    fn every_element_has_root_and_inverse() {
        for k in [1, 3, 4, 8] {
            let f = BinaryField::new(k).unwrap();
            for a in 0..f.order() {
                let r = f.sqrt_elem(a);
                assert_eq!(f.mul(r, r), a);
                assert_eq!(f.add(a, a), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
            }
        }
    }

    #[test]
    fn degree_bounds() {
        assert_eq!(BinaryField::new(0), Err(Error::DegreeOutOfRange(0)));
        assert_eq!(BinaryField::new(17), Err(Error::DegreeOutOfRange(17)));
    }
}

//! Arithmetic in GF(2^r) for `1 <= r <= 32`.
//!
//! Elements are polynomials of degree `< r` over GF(2) in the standard basis
//! `1, x, x^2, ...`; bit `j` of the packed value is the coefficient of `x^j`.
//! Each modulus comes from a fixed table and is checked to be primitive
//! whenever a [`FieldSpec`] is built.

use crate::bitlin::BitVector;
use crate::{Error, Result};

pub const MAX_DEGREE: u32 = 32;

/// Primitive polynomials by degree, top bit included. Index 0 is unused.
const PRIMITIVE_POLYS: [u64; 33] = [
    0,
    0b11,
    0b111,
    0b1011,
    0x13,
    0x25,
    0x43,
    0x83,
    0x11D,
    0x211,
    0x409,
    0x805,
    0x1053,
    0x201B,
    0x4443,
    0x8003,
    0x1100B,
    0x20009,
    0x40081,
    0x80027,
    0x100009,
    0x200005,
    0x400003,
    0x800021,
    0x1000087,
    0x2000009,
    0x4000047,
    0x8000027,
    0x10000009,
    0x20000005,
    0x40800007,
    0x80000009,
    0x100400007,
];

/// A binary extension field: its degree and primitive modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldSpec {
    degree: u32,
    modulus: u64,
}

/// An element of a [`FieldSpec`]'s field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FieldElement {
    degree: u32,
    value: u64,
}

impl FieldElement {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Coefficient bits, bit `j` for `x^j`.
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    /// Coefficients as a bit string of length `r`.
    pub fn to_bits(&self) -> BitVector {
        BitVector::from_u64(self.value, self.degree as usize)
    }
}

/// The tabulated field of degree `r`, verified primitive.
pub fn field_spec(r: u32) -> Result<FieldSpec> {
    if r == 0 || r > MAX_DEGREE {
        return Err(Error::UnsupportedDegree(r));
    }
    let spec = FieldSpec {
        degree: r,
        modulus: PRIMITIVE_POLYS[r as usize],
    };
    if !spec.modulus_is_primitive() {
        return Err(Error::Internal(format!(
            "tabulated modulus {:#x} for degree {r} is not primitive",
            spec.modulus
        )));
    }
    Ok(spec)
}

impl FieldSpec {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Modulus bits including the leading coefficient.
    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Modulus as an `r + 1` bit string, constant term first.
    pub fn modulus_bits(&self) -> BitVector {
        BitVector::from_u64(self.modulus, self.degree as usize + 1)
    }

    /// Number of field elements, `2^r`.
    pub fn order(&self) -> u64 {
        1u64 << self.degree
    }

    pub fn element(&self, value: u64) -> Result<FieldElement> {
        if self.degree < 64 && value >> self.degree != 0 {
            return Err(Error::Dimension(format!(
                "value {value:#x} has more than {} bits",
                self.degree
            )));
        }
        Ok(FieldElement {
            degree: self.degree,
            value,
        })
    }

    pub fn element_from_bits(&self, bits: &BitVector) -> Result<FieldElement> {
        if bits.len() != self.degree as usize {
            return Err(Error::Dimension(format!(
                "element of length {} in a field of degree {}",
                bits.len(),
                self.degree
            )));
        }
        self.element(bits.to_u64())
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement {
            degree: self.degree,
            value: 0,
        }
    }

    pub fn one(&self) -> FieldElement {
        FieldElement {
            degree: self.degree,
            value: 1,
        }
    }

    /// The generator `x`. For `r = 1` this is the same element as 1.
    pub fn generator(&self) -> FieldElement {
        FieldElement {
            degree: self.degree,
            value: self.reduce(0b10),
        }
    }

    fn check(&self, a: &FieldElement) -> Result<()> {
        if a.degree != self.degree {
            return Err(Error::Dimension(format!(
                "element of GF(2^{}) used in GF(2^{})",
                a.degree, self.degree
            )));
        }
        Ok(())
    }

    /// Reduces a polynomial of degree `< 2r` modulo the field modulus,
    /// clearing high bits from the top down.
    fn reduce(&self, mut acc: u64) -> u64 {
        let r = self.degree;
        for bit in (r..2 * r).rev() {
            if (acc >> bit) & 1 == 1 {
                acc ^= self.modulus << (bit - r);
            }
        }
        acc
    }

    fn mul_raw(&self, a: u64, b: u64) -> u64 {
        self.reduce(clmul(a, b))
    }

    fn pow_raw(&self, base: u64, mut k: u64) -> u64 {
        let mut result = 1u64;
        let mut square = base;
        while k > 0 {
            if k & 1 == 1 {
                result = self.mul_raw(result, square);
            }
            square = self.mul_raw(square, square);
            k >>= 1;
        }
        self.reduce(result)
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(FieldElement {
            degree: self.degree,
            value: self.mul_raw(a.value, b.value),
        })
    }

    pub fn pow(&self, a: &FieldElement, k: u64) -> Result<FieldElement> {
        self.check(a)?;
        Ok(FieldElement {
            degree: self.degree,
            value: self.pow_raw(a.value, k),
        })
    }

    /// `x` has multiplicative order exactly `2^r - 1`.
    fn modulus_is_primitive(&self) -> bool {
        if self.modulus >> self.degree != 1 {
            return false;
        }
        let group_order = (1u64 << self.degree) - 1;
        let x = self.reduce(0b10);
        if self.pow_raw(x, group_order) != 1 {
            return false;
        }
        prime_factors(group_order)
            .into_iter()
            .all(|p| self.pow_raw(x, group_order / p) != 1)
    }
}

/// Carry-less product of two polynomials of degree < 32.
fn clmul(a: u64, b: u64) -> u64 {
    let mut acc = 0u64;
    let mut rest = b;
    while rest != 0 {
        let t = rest.trailing_zeros();
        acc ^= a << t;
        rest &= rest - 1;
    }
    acc
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            out.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Product of `a` and `b` in `spec`'s field.
pub fn gf_mul(spec: &FieldSpec, a: &FieldElement, b: &FieldElement) -> Result<FieldElement> {
    spec.mul(a, b)
}

/// `a^k` by square-and-multiply; `a^0 = 1`.
pub fn gf_pow(spec: &FieldSpec, a: &FieldElement, k: u64) -> Result<FieldElement> {
    spec.pow(a, k)
}

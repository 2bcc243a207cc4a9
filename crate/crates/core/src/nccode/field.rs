//! Binary extension fields GF(2^m), 1 <= m <= 16.
//!
//! Elements are polynomials over GF(2) packed into the low `m` bits of a
//! `u16`. Addition is XOR; multiplication uses log/antilog tables built from a
//! fixed primitive modulus.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Gf(pub u16);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::LowerHex for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::LowerHex::fmt(&self.0, f)
    }
}

/// Primitive polynomials (including the leading term) for each width.
const PRIMITIVE: [u32; 17] = [
    0, 0x3, 0x7, 0xb, 0x13, 0x25, 0x43, 0x89, 0x11d, 0x211, 0x409, 0x805, 0x1053, 0x201b, 0x4443,
    0x8003, 0x1100b,
];

pub const MIN_BITS: u32 = 1;
pub const MAX_BITS: u32 = 16;

#[derive(Clone)]
pub struct GaloisField {
    bits: u32,
    modulus: u32,
    exp: Vec<u16>,
    log: Vec<u16>,
}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF(2^{}) mod {:#x}", self.bits, self.modulus)
    }
}

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && self.modulus == other.modulus
    }
}

impl Eq for GaloisField {}

impl GaloisField {
    /// GF(2^bits) with the default primitive modulus for that width
    /// (`0x11d` for GF(2^8)).
    pub fn new(bits: u32) -> Result<Self> {
        if !(MIN_BITS..=MAX_BITS).contains(&bits) {
            return Err(Error::invalid(format!(
                "field width must be between {MIN_BITS} and {MAX_BITS} bits, got {bits}"
            )));
        }
        Self::with_modulus(bits, PRIMITIVE[bits as usize])
    }

    /// GF(2^bits) reduced by `modulus`, which must be primitive so that `x`
    /// generates the multiplicative group.
    pub fn with_modulus(bits: u32, modulus: u32) -> Result<Self> {
        if !(MIN_BITS..=MAX_BITS).contains(&bits) || modulus >> bits != 1 {
            return Err(Error::invalid(format!("modulus {modulus:#x} is not of degree {bits}")));
        }
        let order = (1usize << bits) - 1;
        let mut exp = vec![0u16; 2 * order];
        let mut log = vec![0u16; order + 1];
        // GF(2) has generator 1, not x.
        let generator = if bits == 1 { 1 } else { 2 };
        let mut x: u32 = 1;
        for (i, slot) in exp[..order].iter_mut().enumerate() {
            if i > 0 && x == 1 {
                return Err(Error::invalid(format!("modulus {modulus:#x} is not primitive")));
            }
            *slot = x as u16;
            log[x as usize] = i as u16;
            x = clmul_reduce(x, generator, bits, modulus);
        }
        exp.copy_within(0..order, order);
        Ok(GaloisField { bits, modulus, exp, log })
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    pub fn size(&self) -> u32 {
        1 << self.bits
    }

    /// "GF(2^m)"
    pub fn name(&self) -> String {
        format!("GF(2^{})", self.bits)
    }

    /// Hex digits needed for one element.
    pub fn hex_width(&self) -> usize {
        self.bits.div_ceil(4) as usize
    }

    pub fn element(&self, v: u32) -> Result<Gf> {
        if v < self.size() {
            Ok(Gf(v as u16))
        } else {
            Err(Error::invalid(format!("{v:#x} is not an element of {}", self.name())))
        }
    }

    pub fn add(&self, a: Gf, b: Gf) -> Gf {
        Gf(a.0 ^ b.0)
    }

    pub fn mul(&self, a: Gf, b: Gf) -> Gf {
        if a.is_zero() || b.is_zero() {
            return Gf::ZERO;
        }
        let i = self.log[a.0 as usize] as usize + self.log[b.0 as usize] as usize;
        Gf(self.exp[i])
    }

    pub fn inv(&self, a: Gf) -> Result<Gf> {
        if a.is_zero() {
            return Err(Error::DivisionByZero(self.bits));
        }
        let order = self.size() as usize - 1;
        Ok(Gf(self.exp[(order - self.log[a.0 as usize] as usize) % order]))
    }

    /// Sum of pairwise products.
    pub fn dot(&self, a: &[Gf], b: &[Gf]) -> Gf {
        a.iter().zip(b).fold(Gf::ZERO, |acc, (&x, &y)| self.add(acc, self.mul(x, y)))
    }

    pub fn random<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Gf {
        Gf(rng.random_range(0..self.size()) as u16)
    }

    pub fn random_nonzero<R: rand::Rng + ?Sized>(&self, rng: &mut R) -> Gf {
        Gf(rng.random_range(1..self.size()) as u16)
    }
}

/// Carry-less product of `a` and `b` reduced modulo `modulus`.
pub(crate) fn clmul_reduce(a: u32, b: u32, bits: u32, modulus: u32) -> u32 {
    let mut acc: u32 = 0;
    for i in 0..bits {
        if b & (1 << i) != 0 {
            acc ^= a << i;
        }
    }
    for i in (bits..2 * bits).rev() {
        if acc & (1 << i) != 0 {
            acc ^= modulus << (i - bits);
        }
    }
    acc
}

//! Arithmetic over GF(2^8) and the polynomial algebra used by the RS codec.
//!
//! The field is represented with the primitive polynomial
//! `π(x) = 1 + x² + x³ + x⁴ + x⁸` (0x11D) and primitive element `α = x`
//! (the byte 0x02). Multiplication and inversion go through exp/log tables
//! built at compile time; [`Gf::mul_bitwise`] is the shift-and-reduce
//! reference the tables are checked against.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Sub};

use crate::error::{Error, Result};

/// Reduction polynomial π(x) = x⁸ + x⁴ + x³ + x² + 1.
const PRIMITIVE_POLY: u16 = 0x11D;

/// Order of the multiplicative group.
pub const GROUP_ORDER: u32 = 255;

struct GfTables {
    /// α^i for i in 0..512 (doubled so `log a + log b` needs no modulo).
    exp: [u8; 512],
    /// log_α of each nonzero element; `log[0]` is unused.
    log: [u8; 256],
}

/// Carry-less multiply of two bytes reduced mod π(x), one bit at a time.
const fn mul_bitwise_raw(a: u8, b: u8) -> u8 {
    let mut acc: u16 = 0;
    let mut a = a as u16;
    let mut b = b;
    while b != 0 {
        if b & 1 != 0 {
            acc ^= a;
        }
        a <<= 1;
        if a & 0x100 != 0 {
            a ^= PRIMITIVE_POLY;
        }
        b >>= 1;
    }
    acc as u8
}

const fn build_tables() -> GfTables {
    let mut exp = [0u8; 512];
    let mut log = [0u8; 256];
    let mut x: u8 = 1;
    let mut i = 0;
    while i < 255 {
        exp[i] = x;
        log[x as usize] = i as u8;
        x = mul_bitwise_raw(x, 0x02);
        i += 1;
    }
    while i < 512 {
        exp[i] = exp[i - 255];
        i += 1;
    }
    GfTables { exp, log }
}

static TABLES: GfTables = build_tables();

/// An element of GF(2^8). Bit `i` of the byte is the coefficient of `x^i`.
#[derive(Clone, Copy, PartialEq, Eq, Default, Hash)]
pub struct Gf(pub u8);

/// The primitive element α = x (byte 0x02), of multiplicative order 255.
pub const ALPHA: Gf = Gf(0x02);

impl Gf {
    pub const ZERO: Gf = Gf(0);
    pub const ONE: Gf = Gf(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Reference multiplication by shift-and-reduce; the oracle the
    /// table-driven path is validated against on all 65 536 pairs.
    #[inline]
    pub const fn mul_bitwise(self, rhs: Gf) -> Gf {
        Gf(mul_bitwise_raw(self.0, rhs.0))
    }

    /// Multiplicative inverse. Zero has none.
    #[inline]
    pub fn inv(self) -> Result<Gf> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Gf(
            TABLES.exp[(255 - TABLES.log[self.0 as usize] as usize) % 255]
        ))
    }

    /// `self / rhs`; errors when `rhs` is zero.
    #[inline]
    #[allow(clippy::should_implement_trait)] // fallible, unlike ops::Div
    pub fn div(self, rhs: Gf) -> Result<Gf> {
        if rhs.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if self.is_zero() {
            return Ok(Gf::ZERO);
        }
        let idx = TABLES.log[self.0 as usize] as usize + 255
            - TABLES.log[rhs.0 as usize] as usize;
        Ok(Gf(TABLES.exp[idx]))
    }

    /// `self^e` with exponent arithmetic mod 255 for a nonzero base.
    /// A negative exponent of zero is a division by zero.
    pub fn pow(self, e: i64) -> Result<Gf> {
        if self.is_zero() {
            return match e {
                0 => Ok(Gf::ONE),
                _ if e > 0 => Ok(Gf::ZERO),
                _ => Err(Error::DivisionByZero),
            };
        }
        let l = TABLES.log[self.0 as usize] as i64;
        let idx = (l * e).rem_euclid(255);
        Ok(Gf(TABLES.exp[idx as usize]))
    }
}

/// α^e for any integer e (α is never zero, so this cannot fail).
#[inline]
pub fn alpha_pow(e: i64) -> Gf {
    Gf(TABLES.exp[e.rem_euclid(255) as usize])
}

impl Add for Gf {
    type Output = Gf;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)] // addition in GF(2^8) is XOR
    fn add(self, rhs: Gf) -> Gf {
        Gf(self.0 ^ rhs.0)
    }
}

impl AddAssign for Gf {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Gf) {
        self.0 ^= rhs.0;
    }
}

// Subtraction coincides with addition in characteristic 2; provided so the
// algebra reads like the formulas it implements.
impl Sub for Gf {
    type Output = Gf;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn sub(self, rhs: Gf) -> Gf {
        self + rhs
    }
}

impl Mul for Gf {
    type Output = Gf;
    #[inline]
    fn mul(self, rhs: Gf) -> Gf {
        if self.0 == 0 || rhs.0 == 0 {
            return Gf(0);
        }
        let idx = TABLES.log[self.0 as usize] as usize + TABLES.log[rhs.0 as usize] as usize;
        Gf(TABLES.exp[idx])
    }
}

impl MulAssign for Gf {
    #[inline]
    fn mul_assign(&mut self, rhs: Gf) {
        *self = *self * rhs;
    }
}

impl fmt::Debug for Gf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf(0x{:02X})", self.0)
    }
}

impl From<u8> for Gf {
    fn from(b: u8) -> Gf {
        Gf(b)
    }
}

/// A polynomial over GF(2^8) in ascending powers: `coeffs[i]` multiplies `x^i`.
///
/// Kept normalized (no trailing zero coefficients); the degree of the zero
/// polynomial is `None`.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct GfPoly {
    coeffs: Vec<Gf>,
}

impl GfPoly {
    pub fn zero() -> GfPoly {
        GfPoly { coeffs: Vec::new() }
    }

    pub fn one() -> GfPoly {
        GfPoly {
            coeffs: vec![Gf::ONE],
        }
    }

    /// Build from ascending-power coefficients, trimming trailing zeros.
    pub fn from_coeffs(coeffs: impl Into<Vec<Gf>>) -> GfPoly {
        let mut p = GfPoly {
            coeffs: coeffs.into(),
        };
        p.normalize();
        p
    }

    pub fn from_bytes(bytes: &[u8]) -> GfPoly {
        GfPoly::from_coeffs(bytes.iter().map(|&b| Gf(b)).collect::<Vec<_>>())
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&Gf::ZERO) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[Gf] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero beyond the stored length).
    #[inline]
    pub fn coeff(&self, i: usize) -> Gf {
        self.coeffs.get(i).copied().unwrap_or(Gf::ZERO)
    }

    /// Horner evaluation at `x`.
    pub fn eval(&self, x: Gf) -> Gf {
        let mut acc = Gf::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn add(&self, rhs: &GfPoly) -> GfPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(self.coeff(i) + rhs.coeff(i));
        }
        GfPoly::from_coeffs(out)
    }

    /// Convolution product.
    pub fn mul(&self, rhs: &GfPoly) -> GfPoly {
        if self.is_zero() || rhs.is_zero() {
            return GfPoly::zero();
        }
        let mut out = vec![Gf::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        GfPoly::from_coeffs(out)
    }

    /// Multiply by the scalar `s`.
    pub fn scale(&self, s: Gf) -> GfPoly {
        GfPoly::from_coeffs(self.coeffs.iter().map(|&c| c * s).collect::<Vec<_>>())
    }

    /// Multiply by `x^k`.
    pub fn shift(&self, k: usize) -> GfPoly {
        if self.is_zero() {
            return GfPoly::zero();
        }
        let mut out = vec![Gf::ZERO; k];
        out.extend_from_slice(&self.coeffs);
        GfPoly { coeffs: out }
    }

    /// Truncate mod `x^k`.
    pub fn truncated(&self, k: usize) -> GfPoly {
        GfPoly::from_coeffs(self.coeffs.iter().take(k).copied().collect::<Vec<_>>())
    }

    /// Long division: returns `(quotient, remainder)` with
    /// `self = q·den + r` and `deg r < deg den`.
    pub fn divmod(&self, den: &GfPoly) -> Result<(GfPoly, GfPoly)> {
        let dd = den
            .degree()
            .ok_or(Error::DivisionByZero)?;
        if self.degree().is_none_or(|dn| dn < dd) {
            return Ok((GfPoly::zero(), self.clone()));
        }
        let dn = self.degree().unwrap();
        let lead_inv = den.coeffs[dd].inv()?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Gf::ZERO; dn - dd + 1];
        for i in (dd..=dn).rev() {
            let factor = rem[i] * lead_inv;
            if factor.is_zero() {
                continue;
            }
            quot[i - dd] = factor;
            for (j, &dc) in den.coeffs.iter().enumerate() {
                rem[i - dd + j] += factor * dc;
            }
        }
        rem.truncate(dd);
        Ok((GfPoly::from_coeffs(quot), GfPoly::from_coeffs(rem)))
    }

    /// Formal derivative. In characteristic 2 the coefficient of `x^{i-1}`
    /// is `p_i` for odd `i` and zero for even `i`.
    pub fn formal_derivative(&self) -> GfPoly {
        if self.coeffs.len() <= 1 {
            return GfPoly::zero();
        }
        let out: Vec<Gf> = (1..self.coeffs.len())
            .map(|i| if i % 2 == 1 { self.coeffs[i] } else { Gf::ZERO })
            .collect();
        GfPoly::from_coeffs(out)
    }
}

impl fmt::Debug for GfPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "GfPoly(0)");
        }
        write!(f, "GfPoly[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{:02X}", c.0)?;
        }
        write!(f, "]")
    }
}

//! Radix-β digit strings and the three digitwise transformations.
//!
//! For operands `a = Σ a_k β^k` and `b = Σ b_k β^k` aligned to a common
//! length:
//!
//! * `mcvt(a, b)` has digit `k` equal to 1 when `a_k + b_k ≥ β`, else 0;
//! * `cvt(a, b) = β · mcvt(a, b)`, the carry string with a zero appended at
//!   the least-significant end;
//! * `gxor(a, b)` has digit `k` equal to `(a_k + b_k) mod β`.
//!
//! Base 2 has bitwise fast paths; every other radix goes through
//! [`carry_xor`], which walks the digits.

use std::fmt;

use num_traits::NumCast;

use crate::{CvtError, Natural, Result};

/// Radix of a positional number system, always at least 2.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Base(u32);

impl Base {
    pub const BINARY: Base = Base(2);
    pub const TERNARY: Base = Base(3);

    pub fn new(beta: u32) -> Result<Self> {
        if beta < 2 {
            return Err(CvtError::InvalidBase(beta));
        }
        Ok(Base(beta))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_binary(self) -> bool {
        self.0 == 2
    }

    /// The radix as a `T`, or `None` when it exceeds `T::max_value()`.
    #[inline]
    fn as_scalar<T: Natural>(self) -> Option<T> {
        <T as NumCast>::from(self.0)
    }
}

impl Default for Base {
    fn default() -> Self {
        Base::BINARY
    }
}

impl fmt::Display for Base {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl TryFrom<u32> for Base {
    type Error = CvtError;

    fn try_from(beta: u32) -> Result<Self> {
        Base::new(beta)
    }
}

/// Digits of a natural number in a given base, least significant first.
///
/// The canonical form carries no most-significant zeros, so zero is the
/// empty vector. Vectors padded through `min_width` are still valid, they
/// are just not canonical.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DigitVector {
    base: Base,
    digits: Vec<u32>,
}

impl DigitVector {
    /// Builds a digit vector, rejecting any digit `≥ β`. Leading zeros are kept.
    pub fn new(base: Base, digits: Vec<u32>) -> Result<Self> {
        if let Some(&digit) = digits.iter().find(|&&d| d >= base.get()) {
            return Err(CvtError::DigitOutOfRange {
                digit,
                base: base.get(),
            });
        }
        Ok(DigitVector { base, digits })
    }

    pub fn base(&self) -> Base {
        self.base
    }

    /// Least-significant digit first.
    pub fn digits(&self) -> &[u32] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Digit at position `k`, zero beyond the stored length.
    pub fn digit(&self, k: usize) -> u32 {
        self.digits.get(k).copied().unwrap_or(0)
    }

    pub fn is_canonical(&self) -> bool {
        self.digits.last() != Some(&0)
    }

    /// Drops most-significant zeros.
    pub fn canonicalize(mut self) -> Self {
        while self.digits.last() == Some(&0) {
            self.digits.pop();
        }
        self
    }

    /// Most-significant-first rendering, `0` for the empty vector.
    ///
    /// Bases up to 36 use one character per digit (`0-9a-z`); larger bases
    /// print decimal digit values separated by `:`.
    pub fn to_msb_string(&self) -> String {
        if self.digits.is_empty() {
            return "0".to_string();
        }
        if self.base.get() <= 36 {
            self.digits
                .iter()
                .rev()
                .map(|&d| char::from_digit(d, 36).expect("digit below base"))
                .collect()
        } else {
            self.digits
                .iter()
                .rev()
                .map(u32::to_string)
                .collect::<Vec<_>>()
                .join(":")
        }
    }
}

impl fmt::Display for DigitVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_msb_string())
    }
}

#[inline]
fn overflow<T: Natural>() -> CvtError {
    CvtError::Overflow { bits: T::BITS }
}

/// Canonical digits of `n`, zero-padded at the most-significant end up to
/// `min_width` when given.
pub fn to_digits<T: Natural>(n: T, base: Base, min_width: Option<usize>) -> DigitVector {
    let mut digits = Vec::new();
    match base.as_scalar::<T>() {
        Some(beta) => {
            let mut rest = n;
            while !rest.is_zero() {
                let d = rest % beta;
                digits.push(d.to_u32().expect("digit below a u32 radix"));
                rest = rest / beta;
            }
        }
        // Radix exceeds the scalar range: every value is a single digit.
        None => {
            if !n.is_zero() {
                digits.push(n.to_u32().expect("value below a u32 radix"));
            }
        }
    }
    if let Some(width) = min_width {
        if digits.len() < width {
            digits.resize(width, 0);
        }
    }
    DigitVector { base, digits }
}

/// `Σ digits[k] · β^k`. Leading zeros are allowed.
pub fn from_digits<T: Natural>(dv: &DigitVector) -> Result<T> {
    let beta = dv.base.as_scalar::<T>();
    let mut acc = T::zero();
    for &d in dv.digits.iter().rev() {
        let digit = <T as NumCast>::from(d).ok_or_else(overflow::<T>)?;
        acc = match beta {
            Some(beta) => acc.checked_mul(&beta).ok_or_else(overflow::<T>)?,
            None if acc.is_zero() => acc,
            None => return Err(overflow::<T>()),
        };
        acc = acc.checked_add(&digit).ok_or_else(overflow::<T>)?;
    }
    Ok(acc)
}

/// Digitwise walk returning `(mcvt(a, b), gxor(a, b))` in one pass.
///
/// This is the general-radix path; [`cvt`], [`mcvt`] and [`gxor`] only
/// bypass it in base 2.
pub fn carry_xor<T: Natural>(a: T, b: T, base: Base) -> Result<(T, T)> {
    let Some(beta) = base.as_scalar::<T>() else {
        return carry_xor_single_digit(a, b, base);
    };
    let mut carries = T::zero();
    let mut sums = T::zero();
    let mut place = T::one();
    let (mut a, mut b) = (a, b);
    let mut first = true;
    while !a.is_zero() || !b.is_zero() {
        if !first {
            place = place.checked_mul(&beta).ok_or_else(overflow::<T>)?;
        }
        first = false;
        let (da, db) = (a % beta, b % beta);
        a = a / beta;
        b = b / beta;
        // da + db >= beta, written so that it cannot overflow T
        let room = beta - db;
        let (carry, digit) = if da >= room {
            (true, da - room)
        } else {
            (false, da + db)
        };
        if carry {
            carries = carries.checked_add(&place).ok_or_else(overflow::<T>)?;
        }
        if !digit.is_zero() {
            let term = digit.checked_mul(&place).ok_or_else(overflow::<T>)?;
            sums = sums.checked_add(&term).ok_or_else(overflow::<T>)?;
        }
    }
    Ok((carries, sums))
}

fn carry_xor_single_digit<T: Natural>(a: T, b: T, base: Base) -> Result<(T, T)> {
    let beta = base.get() as u128;
    let s = a.to_u128().expect("fits u128") + b.to_u128().expect("fits u128");
    let (carry, digit) = if s >= beta { (1u8, s - beta) } else { (0u8, s) };
    let digit = <T as NumCast>::from(digit).ok_or_else(overflow::<T>)?;
    Ok((<T as NumCast>::from(carry).expect("0 or 1"), digit))
}

/// Carry string of `a + b`, without the appended zero.
pub fn mcvt<T: Natural>(a: T, b: T, base: Base) -> Result<T> {
    if base.is_binary() {
        return Ok(a & b);
    }
    carry_xor(a, b, base).map(|(m, _)| m)
}

/// Carry string of `a + b` shifted one place up: `β · mcvt(a, b)`.
pub fn cvt<T: Natural>(a: T, b: T, base: Base) -> Result<T> {
    if base.is_binary() {
        let and = a & b;
        if and.leading_zeros() == 0 {
            return Err(overflow::<T>());
        }
        return Ok(and << 1);
    }
    let m = mcvt(a, b, base)?;
    scale_by_base(m, base)
}

/// Digitwise sum modulo β. Exclusive-or in base 2.
pub fn gxor<T: Natural>(a: T, b: T, base: Base) -> Result<T> {
    if base.is_binary() {
        return Ok(a ^ b);
    }
    carry_xor(a, b, base).map(|(_, x)| x)
}

/// `β · m`, checked.
pub(crate) fn scale_by_base<T: Natural>(m: T, base: Base) -> Result<T> {
    if m.is_zero() {
        return Ok(m);
    }
    base.as_scalar::<T>()
        .and_then(|beta| m.checked_mul(&beta))
        .ok_or_else(overflow::<T>)
}

/// Ordinary machine addition. Never routed through the carry decomposition.
pub fn reference_add<T: Natural>(a: T, b: T) -> Result<T> {
    a.checked_add(&b).ok_or_else(overflow::<T>)
}

/// Number of bit positions in which `a` and `b` differ.
pub fn hamming_distance<T: Natural>(a: T, b: T) -> u32 {
    (a ^ b).count_ones()
}

/// Length of the binary string of `v`, with `bitlen(0) = 1`.
pub fn bitlen<T: Natural>(v: T) -> u32 {
    (T::BITS - v.leading_zeros()).max(1)
}

/// Number of base-β digits of `v`, with `digit_len(0) = 1`.
pub fn digit_len<T: Natural>(v: T, base: Base) -> usize {
    to_digits(v, base, None).len().max(1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(beta: u32) -> Base {
        Base::new(beta).unwrap()
    }

    /// Bitwise AND/XOR through binary strings; shares nothing with the
    /// implementation.
    fn string_bitwise(a: u64, b: u64, op: fn(bool, bool) -> bool) -> u64 {
        let (sa, sb) = (format!("{a:064b}"), format!("{b:064b}"));
        let bits: String = sa
            .chars()
            .zip(sb.chars())
            .map(|(x, y)| if op(x == '1', y == '1') { '1' } else { '0' })
            .collect();
        u64::from_str_radix(&bits, 2).unwrap()
    }

    #[test]
    fn base_rejects_radix_below_two() {
        assert_eq!(Base::new(1), Err(CvtError::InvalidBase(1)));
        assert_eq!(Base::new(0), Err(CvtError::InvalidBase(0)));
        assert!(Base::new(2).is_ok());
    }

    #[test]
    fn to_digits_examples() {
        assert_eq!(to_digits(23u64, b(2), None).digits(), &[1, 1, 1, 0, 1]);
        assert!(to_digits(0u64, b(7), None).is_empty());
        assert_eq!(to_digits(466u64, b(3), None).digits(), &[1, 2, 0, 2, 2, 1]);
        assert_eq!(to_digits(466u64, b(3), None).to_msb_string(), "122021");
    }

    #[test]
    fn to_digits_pads_to_min_width() {
        let dv = to_digits(5u32, b(2), Some(6));
        assert_eq!(dv.digits(), &[1, 0, 1, 0, 0, 0]);
        assert!(!dv.is_canonical());
        assert_eq!(dv.clone().canonicalize().digits(), &[1, 0, 1]);
        // min_width never truncates
        assert_eq!(to_digits(23u8, b(2), Some(2)).len(), 5);
    }

    #[test]
    fn from_digits_examples() {
        let v = DigitVector::new(b(2), vec![0, 1, 1, 0, 0, 1]).unwrap();
        assert_eq!(from_digits::<u64>(&v).unwrap(), 38);
        let v = DigitVector::new(b(2), vec![]).unwrap();
        assert_eq!(from_digits::<u64>(&v).unwrap(), 0);
        let v = DigitVector::new(b(3), vec![0, 1, 1, 0, 1, 1]).unwrap();
        assert_eq!(from_digits::<u64>(&v).unwrap(), 336);
    }

    #[test]
    fn digit_out_of_range_is_rejected() {
        assert_eq!(
            DigitVector::new(b(2), vec![1, 2]),
            Err(CvtError::DigitOutOfRange { digit: 2, base: 2 })
        );
    }

    #[test]
    fn from_digits_overflow() {
        let v = DigitVector::new(b(2), vec![1; 9]).unwrap();
        assert_eq!(from_digits::<u8>(&v), Err(CvtError::Overflow { bits: 8 }));
        assert_eq!(from_digits::<u16>(&v), Ok(511));
    }

    #[test]
    fn large_radix_on_narrow_scalar() {
        let base = b(1000);
        assert_eq!(to_digits(200u8, base, None).digits(), &[200]);
        // no carry, but the digit 300 does not fit in u8
        assert_eq!(
            carry_xor(200u8, 100u8, base),
            Err(CvtError::Overflow { bits: 8 })
        );
        assert_eq!(carry_xor(20u8, 30u8, base), Ok((0, 50)));
        assert_eq!(cvt(200u8, 100u8, base), Err(CvtError::Overflow { bits: 8 }));
    }

    #[test]
    fn cvt_examples() {
        assert_eq!(cvt(23u64, 27, b(2)), Ok(38));
        assert_eq!(cvt(466u64, 458, b(3)), Ok(336));
        for beta in 2..=10 {
            assert_eq!(cvt(12345u64, 0, b(beta)), Ok(0));
        }
    }

    #[test]
    fn mcvt_examples() {
        // carry string (11011)_3 = 112 = 336 / 3
        let carries = DigitVector::new(b(3), vec![1, 1, 0, 1, 1]).unwrap();
        assert_eq!(from_digits::<u64>(&carries), Ok(112));
        assert_eq!(mcvt(466u64, 458, b(3)), Ok(112));
        // oracle: 10111 AND 11011 = 10011
        let expected = string_bitwise(23, 27, |x, y| x && y);
        assert_eq!(expected, 19);
        assert_eq!(mcvt(23u64, 27, b(2)), Ok(expected));
        assert_eq!(carry_xor(23u64, 27, b(2)).unwrap().0, expected);
        assert_eq!(mcvt(0u64, 0, b(7)), Ok(0));
    }

    #[test]
    fn gxor_examples() {
        assert_eq!(gxor(466u64, 458, b(3)), Ok(588));
        assert_eq!(gxor(23u64, 27, b(2)), Ok(12));
        for a in 0..512u64 {
            assert_eq!(gxor(a, a, b(2)), Ok(0));
        }
    }

    #[test]
    fn reference_add_examples() {
        assert_eq!(reference_add(23u64, 27), Ok(50));
        assert_eq!(reference_add(0u64, 0), Ok(0));
        assert_eq!(reference_add(127u64, 65), Ok(192));
        assert_eq!(
            reference_add(200u8, 100),
            Err(CvtError::Overflow { bits: 8 })
        );
    }

    #[test]
    fn hamming_examples() {
        let oracle = |a: u64, b: u64| {
            let width = 64;
            let (sa, sb) = (format!("{a:0width$b}"), format!("{b:0width$b}"));
            sa.chars().zip(sb.chars()).filter(|(x, y)| x != y).count() as u32
        };
        assert_eq!(oracle(21, 27), 3);
        assert_eq!(hamming_distance(21u64, 27), 3);
        assert_eq!(hamming_distance(9u64, 9), 0);
        assert_eq!(oracle(0, 15), 4);
        assert_eq!(hamming_distance(0u64, 15), 4);
    }

    #[test]
    fn binary_fast_path_matches_digit_loop() {
        for a in 0..256u64 {
            for c in 0..256u64 {
                let (m, x) = carry_xor(a, c, b(2)).unwrap();
                assert_eq!(m, mcvt(a, c, b(2)).unwrap());
                assert_eq!(x, gxor(a, c, b(2)).unwrap());
                assert_eq!(2 * m, cvt(a, c, b(2)).unwrap());
                assert_eq!(m, string_bitwise(a, c, |p, q| p && q));
                assert_eq!(x, string_bitwise(a, c, |p, q| p != q));
            }
        }
    }

    #[test]
    fn cvt_overflow_is_reported() {
        assert_eq!(cvt(0x80u8, 0x80, b(2)), Err(CvtError::Overflow { bits: 8 }));
        assert_eq!(cvt(0x40u8, 0x40, b(2)), Ok(0x80));
        // 2·3^5 = 486 does not fit in u8
        assert_eq!(cvt(243u8, 243, b(3)), Err(CvtError::Overflow { bits: 8 }));
        // 255 = (100110)_3, digit sums give (200220)_3 = 510
        assert_eq!(
            gxor(255u8, 255u8, b(3)),
            Err(CvtError::Overflow { bits: 8 })
        );
        assert_eq!(gxor(255u16, 255u16, b(3)), Ok(510));
        assert_eq!(gxor(u64::MAX, 0, b(3)), Ok(u64::MAX));
    }

    #[test]
    fn bitlen_and_digit_len() {
        assert_eq!(bitlen(0u64), 1);
        assert_eq!(bitlen(1u64), 1);
        assert_eq!(bitlen(127u64), 7);
        assert_eq!(bitlen(128u64), 8);
        assert_eq!(digit_len(0u32, b(3)), 1);
        assert_eq!(digit_len(466u32, b(3)), 6);
    }

    #[test]
    fn msb_string_for_large_base() {
        let dv = to_digits(1_000_001u64, b(1000), None);
        assert_eq!(dv.to_msb_string(), "1:0:1");
        assert_eq!(to_digits(0u64, b(2), None).to_string(), "0");
    }
}

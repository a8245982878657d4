//! Limb-based multiple-precision binary floating point.
//!
//! A value is `sign * fraction * 2^exponent` with `fraction` in `[1/2, 1)`
//! held as 64-bit limbs, most significant first. Every operation that takes a
//! target precision `n` truncates toward zero and leaves a relative error of
//! at most `2^(-n+2)`; nothing here rounds to nearest.

mod io;
pub use io::DigitMode;
mod mul;
pub(crate) mod ntt;

pub use mul::{mul, mul_convolution_for_tests};

use crate::error::{Error, Result};
use num_bigint::BigUint;

pub const LIMB_BITS: u32 = 64;

/// Multiple-precision float. Immutable after construction; cloning is a deep
/// copy of the limb array.
#[derive(Clone, Debug)]
pub struct MPFloat {
    sign: i8,
    /// Binary exponent: value = sign * fraction * 2^exponent.
    exponent: i64,
    /// Fraction limbs, most significant first; top bit of limbs[0] is set
    /// whenever sign != 0.
    limbs: Vec<u64>,
    /// Declared precision in bits; limbs.len() == ceil(precision/64).
    precision: u32,
}

fn limbs_for(bits: u32) -> usize {
    ((bits as usize) + 63) / 64
}

/// Zero out any bits of `limbs` at or beyond bit index `n` (0 = msb of limbs[0]).
fn mask_tail(limbs: &mut [u64], n: u32) {
    let nl = limbs_for(n);
    for l in limbs.iter_mut().skip(nl) {
        *l = 0;
    }
    let used = n as usize - (nl - 1) * 64;
    if nl >= 1 && used < 64 {
        limbs[nl - 1] &= u64::MAX << (64 - used);
    }
}

impl MPFloat {
    pub fn zero() -> Self {
        MPFloat { sign: 0, exponent: 0, limbs: Vec::new(), precision: 0 }
    }

    /// The value 1 carried at `n` bits.
    pub fn one(n: u32) -> Self {
        Self::pow2(0, n)
    }

    /// Exact power of two `2^k` at precision `n`.
    pub fn pow2(k: i64, n: u32) -> Self {
        let n = n.max(1);
        let mut limbs = vec![0u64; limbs_for(n)];
        limbs[0] = 1u64 << 63;
        let v = MPFloat { sign: 1, exponent: k + 1, limbs, precision: n };
        v.debug_validate();
        v
    }

    pub fn from_u64(v: u64) -> Self {
        if v == 0 {
            return Self::zero();
        }
        let lz = v.leading_zeros();
        MPFloat { sign: 1, exponent: (64 - lz) as i64, limbs: vec![v << lz], precision: 64 }
    }

    pub fn from_i64(v: i64) -> Self {
        let mut r = Self::from_u64(v.unsigned_abs());
        if v < 0 {
            r.sign = -r.sign;
        }
        r
    }

    /// Exact conversion; f64 values are dyadic rationals. NaN/infinity are
    /// rejected (no IEEE specials in this representation).
    pub fn from_f64(v: f64) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::domain("from_f64", "non-finite input"));
        }
        if v == 0.0 {
            return Ok(Self::zero());
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i8 } else { 1 };
        let raw_exp = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp2) = if raw_exp == 0 {
            (frac, -1074i64) // subnormal
        } else {
            (frac | (1u64 << 52), raw_exp - 1075)
        };
        let mut r = Self::from_u64(mant);
        r.sign = sign;
        r.exponent += exp2;
        r.debug_validate();
        Ok(r)
    }

    /// Truncate a big integer to its top `n` bits.
    pub fn from_biguint(v: &BigUint, n: u32) -> Self {
        use num_traits::Zero;
        if v.is_zero() {
            return Self::zero();
        }
        let bits = v.bits();
        let le = v.to_u64_digits(); // little endian
        let nl_src = le.len();
        // Source viewed MSB-first with leading bit at position 64*nl_src - bits.
        let mut msb_first: Vec<u64> = le.into_iter().rev().collect();
        let lead = (64 * nl_src) as u64 - bits;
        let n = n.max(1);
        let out = extract_bits(&msb_first, lead, n);
        msb_first.clear();
        let v = MPFloat { sign: 1, exponent: bits as i64, limbs: out, precision: n };
        v.debug_validate();
        v
    }

    pub fn is_zero(&self) -> bool {
        self.sign == 0
    }
    pub fn sign(&self) -> i8 {
        self.sign
    }
    pub fn exponent(&self) -> i64 {
        self.exponent
    }
    pub fn precision(&self) -> u32 {
        self.precision
    }
    pub fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    pub fn neg(&self) -> Self {
        let mut r = self.clone();
        r.sign = -r.sign;
        r
    }

    pub fn abs(&self) -> Self {
        let mut r = self.clone();
        if r.sign != 0 {
            r.sign = 1;
        }
        r
    }

    /// Multiply by 2^k exactly.
    pub fn shift_exp(&self, k: i64) -> Result<Self> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let e = (self.exponent as i128) + (k as i128);
        if e > i64::MAX as i128 || e < i64::MIN as i128 {
            return Err(Error::ExponentOverflow { op: "shift_exp" });
        }
        let mut r = self.clone();
        r.exponent = e as i64;
        Ok(r)
    }

    /// Exact value of a u128.
    pub(crate) fn from_u128(v: u128) -> Self {
        if v == 0 {
            return Self::zero();
        }
        let lz = v.leading_zeros();
        let s = v << lz;
        MPFloat {
            sign: 1,
            exponent: (128 - lz) as i64,
            limbs: vec![(s >> 64) as u64, s as u64],
            precision: 128,
        }
    }

    /// trunc(x * 2^shift) as a signed 128-bit integer; the caller guarantees
    /// the magnitude fits (|x| * 2^shift < 2^127).
    pub(crate) fn trunc_i128_scaled(&self, shift: i64) -> i128 {
        if self.is_zero() {
            return 0;
        }
        let bits = self.exponent + shift;
        if bits <= 0 {
            return 0;
        }
        debug_assert!(bits <= 127, "trunc_i128_scaled overflow");
        let l0 = self.limbs[0] as u128;
        let l1 = self.limbs.get(1).copied().unwrap_or(0) as u128;
        let v = (l0 << 64) | l1;
        let mag = (v >> (128 - bits as u32)) as i128;
        if self.sign < 0 {
            -mag
        } else {
            mag
        }
    }

    /// Same fraction and sign with the exponent replaced (argument scaling).
    pub(crate) fn with_exponent(&self, e: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut r = self.clone();
        r.exponent = e;
        r
    }

    /// True when the fraction is a single set bit, i.e. the value is +-2^k.
    pub fn is_pow2(&self) -> bool {
        self.sign != 0
            && self.limbs[0] == 1u64 << 63
            && self.limbs[1..].iter().all(|&l| l == 0)
    }

    /// (fraction as f64 in [0.5, 1), exponent): a 53-bit view independent of
    /// exponent magnitude, for seeding Newton iterations.
    pub fn to_f64_parts(&self) -> (f64, i64) {
        if self.is_zero() {
            return (0.0, 0);
        }
        let hi = self.limbs[0];
        let lo = if self.limbs.len() > 1 { self.limbs[1] } else { 0 };
        // top 64 bits of the fraction, then scale down
        let top = hi as f64 + (lo as f64) * 2f64.powi(-64);
        let f = top * 2f64.powi(-64);
        (f * self.sign as f64, self.exponent)
    }

    /// Best-effort f64 value; saturates on exponent overflow. Diagnostics only.
    pub fn to_f64(&self) -> f64 {
        let (f, e) = self.to_f64_parts();
        if e > 1030 {
            return f.signum() * f64::INFINITY;
        }
        if e < -1060 {
            return 0.0;
        }
        f * 2f64.powi(e as i32)
    }

    /// Truncation toward zero to `n` fraction bits. Extending (`n` larger than
    /// the current precision) pads with zero limbs and is exact.
    pub fn round_to(&self, n: u32) -> Self {
        let n = n.max(1);
        if self.is_zero() {
            return Self::zero();
        }
        let nl = limbs_for(n);
        let mut limbs = self.limbs.clone();
        limbs.resize(nl, 0);
        mask_tail(&mut limbs, n);
        let r = MPFloat { sign: self.sign, exponent: self.exponent, limbs, precision: n };
        r.debug_validate();
        r
    }

    /// Compare |self| with |other| (semantic, padding with zeros).
    pub fn cmp_abs(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Equal,
            (true, false) => return Less,
            (false, true) => return Greater,
            _ => {}
        }
        match self.exponent.cmp(&other.exponent) {
            Equal => {}
            o => return o,
        }
        let n = self.limbs.len().max(other.limbs.len());
        for i in 0..n {
            let a = self.limbs.get(i).copied().unwrap_or(0);
            let b = other.limbs.get(i).copied().unwrap_or(0);
            match a.cmp(&b) {
                Equal => {}
                o => return o,
            }
        }
        Equal
    }

    fn debug_validate(&self) {
        #[cfg(debug_assertions)]
        self.validate().expect("MPFloat normalization invariant violated");
    }

    /// Normalization validator: run on every constructor under debug builds.
    pub fn validate(&self) -> Result<()> {
        if self.sign == 0 {
            if !self.limbs.is_empty() || self.exponent != 0 {
                return Err(Error::domain("validate", "zero must have empty limbs"));
            }
            return Ok(());
        }
        if self.limbs.len() != limbs_for(self.precision) {
            return Err(Error::domain("validate", "limb count != ceil(precision/64)"));
        }
        if self.limbs[0] >> 63 != 1 {
            return Err(Error::domain("validate", "fraction not normalized"));
        }
        let mut copy = self.limbs.clone();
        mask_tail(&mut copy, self.precision);
        if copy != self.limbs {
            return Err(Error::domain("validate", "nonzero bits beyond precision"));
        }
        Ok(())
    }

    /// Internal constructor from already-normalized parts.
    pub(crate) fn from_parts(sign: i8, exponent: i64, limbs: Vec<u64>, precision: u32) -> Self {
        let v = MPFloat { sign, exponent, limbs, precision };
        v.debug_validate();
        v
    }
}

impl PartialEq for MPFloat {
    fn eq(&self, other: &Self) -> bool {
        self.sign == other.sign && self.cmp_abs(other) == std::cmp::Ordering::Equal
    }
}
impl Eq for MPFloat {}

impl PartialOrd for MPFloat {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for MPFloat {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering::*;
        match self.sign.cmp(&other.sign) {
            Equal => {}
            o => return o,
        }
        match self.sign {
            0 => Equal,
            1 => self.cmp_abs(other),
            _ => other.cmp_abs(self),
        }
    }
}

/// Extract `n` bits from `src` (MSB-first limbs) starting at bit `start`
/// (0 = msb of src[0]); result is MSB-first with the start bit as its msb.
fn extract_bits(src: &[u64], start: u64, n: u32) -> Vec<u64> {
    let nl = limbs_for(n);
    let mut out = vec![0u64; nl];
    let q = (start / 64) as usize;
    let r = (start % 64) as u32;
    for i in 0..nl {
        let hi = src.get(q + i).copied().unwrap_or(0);
        if r == 0 {
            out[i] = hi;
        } else {
            let lo = src.get(q + i + 1).copied().unwrap_or(0);
            out[i] = (hi << r) | (lo >> (64 - r));
        }
    }
    mask_tail(&mut out, n);
    out
}

/// OR `src` into `buf` shifted so src bit 0 lands at buf bit `offset`.
/// Bits falling outside `buf` are dropped.
fn or_shifted(buf: &mut [u64], src: &[u64], offset: u64) {
    let q = (offset / 64) as usize;
    let r = (offset % 64) as u32;
    let w = buf.len();
    for (i, &s) in src.iter().enumerate() {
        if s == 0 {
            continue;
        }
        let idx = q + i;
        if idx < w {
            buf[idx] |= if r == 0 { s } else { s >> r };
        }
        if r != 0 && idx + 1 < w {
            buf[idx + 1] |= s << (64 - r);
        }
    }
}

fn add_mag(a: &mut [u64], b: &[u64]) {
    debug_assert_eq!(a.len(), b.len());
    let mut carry = 0u64;
    for i in (0..a.len()).rev() {
        let (s1, c1) = a[i].overflowing_add(b[i]);
        let (s2, c2) = s1.overflowing_add(carry);
        a[i] = s2;
        carry = (c1 as u64) + (c2 as u64);
    }
    debug_assert_eq!(carry, 0, "window headroom exhausted");
}

fn sub_mag(a: &mut [u64], b: &[u64]) {
    debug_assert_eq!(a.len(), b.len());
    let mut borrow = 0u64;
    for i in (0..a.len()).rev() {
        let (d1, b1) = a[i].overflowing_sub(b[i]);
        let (d2, b2) = d1.overflowing_sub(borrow);
        a[i] = d2;
        borrow = (b1 as u64) + (b2 as u64);
    }
    debug_assert_eq!(borrow, 0, "sub_mag ordering violated");
}

fn cmp_slices(a: &[u64], b: &[u64]) -> std::cmp::Ordering {
    a.cmp(b)
}

/// Build an MPFloat from a scratch window whose bit 0 carries weight
/// 2^(anchor-1), truncating toward zero to `n` bits.
pub(crate) fn normalize_window(window: &[u64], anchor: i64, sign: i8, n: u32) -> Result<MPFloat> {
    let mut lead = None;
    for (i, &l) in window.iter().enumerate() {
        if l != 0 {
            lead = Some(64 * i as u64 + l.leading_zeros() as u64);
            break;
        }
    }
    let Some(lead) = lead else { return Ok(MPFloat::zero()) };
    let exp = (anchor as i128) - (lead as i128);
    if exp > i64::MAX as i128 || exp < i64::MIN as i128 {
        return Err(Error::ExponentOverflow { op: "normalize" });
    }
    let limbs = extract_bits(window, lead, n);
    Ok(MPFloat::from_parts(sign, exp as i64, limbs, n))
}

/// Addition at precision `n` (subtraction is addition of a negated value).
/// Relative error is at most 2^(-n+2); exact cancellation yields exact zero.
pub fn add(x: &MPFloat, y: &MPFloat, n: u32) -> Result<MPFloat> {
    let n = n.max(1);
    if x.is_zero() {
        return Ok(y.round_to(n));
    }
    if y.is_zero() {
        return Ok(x.round_to(n));
    }
    let same_sign = x.sign == y.sign;
    // Ordering by magnitude decides the result sign and sub_mag direction.
    let (big, small) = match x.cmp_abs(y) {
        std::cmp::Ordering::Less => (y, x),
        std::cmp::Ordering::Equal => {
            if !same_sign {
                return Ok(MPFloat::zero());
            }
            (x, y)
        }
        std::cmp::Ordering::Greater => (x, y),
    };

    let anchor = (big.exponent as i128) + 1;
    // Window depth: full coverage when catastrophic cancellation is possible
    // (opposite signs, exponents within 1), else capped just past `n`.
    let bottom_big = big.exponent as i128 - 64 * big.limbs.len() as i128;
    let bottom_small = small.exponent as i128 - 64 * small.limbs.len() as i128;
    let full = (anchor - bottom_big.min(bottom_small)) as u128;
    let gap = (big.exponent as i128 - small.exponent as i128).unsigned_abs();
    let width = if !same_sign && gap <= 1 {
        full
    } else {
        full.min((n as u128) + 68)
    };
    let wlimbs = ((width + 63) / 64) as usize + 1;

    let mut wb = vec![0u64; wlimbs];
    let mut ws = vec![0u64; wlimbs];
    let off_big = (anchor - big.exponent as i128) as u64;
    or_shifted(&mut wb, &big.limbs, off_big);
    let off_small = anchor - small.exponent as i128;
    debug_assert!(off_small >= 0);
    if (off_small as u128) < 64 * wlimbs as u128 {
        or_shifted(&mut ws, &small.limbs, off_small as u64);
    }

    if same_sign {
        add_mag(&mut wb, &ws);
    } else {
        // big >= small by construction, and the window preserves that: in the
        // full branch both are exact, in the capped branch gap >= 2 keeps the
        // leading limb of big strictly dominant.
        debug_assert!(cmp_slices(&wb, &ws) != std::cmp::Ordering::Less);
        sub_mag(&mut wb, &ws);
    }
    let exp_anchor = if anchor > i64::MAX as i128 {
        return Err(Error::ExponentOverflow { op: "add" });
    } else {
        anchor as i64
    };
    normalize_window(&wb, exp_anchor, big.sign, n)
}

/// Subtraction helper: x - y at precision n.
pub fn sub(x: &MPFloat, y: &MPFloat, n: u32) -> Result<MPFloat> {
    add(x, &y.neg(), n)
}

/// Exact division by a small integer (single pass of schoolbook long
/// division), truncated toward zero to `n` bits. Used for series terms and
/// k*ln2 style scalings; O(n) like addition, so it is not metered.
pub fn div_u64(x: &MPFloat, d: u64, n: u32) -> Result<MPFloat> {
    if d == 0 {
        return Err(Error::DivisionByZero);
    }
    if x.is_zero() {
        return Ok(MPFloat::zero());
    }
    let n = n.max(1);
    // Work on enough limbs that the quotient holds n bits after normalization:
    // the quotient's leading bit sits within 64 bits of the dividend's.
    let want = limbs_for(n) + 2;
    let mut rem: u128 = 0;
    let mut q = vec![0u64; want + 1];
    for i in 0..q.len() {
        let digit = if i < x.limbs.len() { x.limbs[i] } else { 0 };
        let cur = (rem << 64) | digit as u128;
        q[i] = (cur / d as u128) as u64;
        rem = cur % d as u128;
    }
    normalize_window(&q, x.exponent, x.sign, n)
}

/// Exact multiplication by a small integer, truncated to `n` bits.
pub fn mul_u64(x: &MPFloat, m: u64, n: u32) -> Result<MPFloat> {
    if m == 0 || x.is_zero() {
        return Ok(MPFloat::zero());
    }
    let n = n.max(1);
    let mut out = vec![0u64; x.limbs.len() + 1];
    let mut carry: u128 = 0;
    for i in (0..x.limbs.len()).rev() {
        let cur = x.limbs[i] as u128 * m as u128 + carry;
        out[i + 1] = cur as u64;
        carry = cur >> 64;
    }
    out[0] = carry as u64;
    // out bit 0 has weight 2^(exponent + 64 - 1)
    let anchor = x.exponent.checked_add(64).ok_or(Error::ExponentOverflow { op: "mul_u64" })?;
    normalize_window(&out, anchor, x.sign, n)
}

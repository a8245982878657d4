//! Decimal and hexadecimal string I/O.
//!
//! Hex emission is exact. Decimal emission comes in two flavors: a truncating
//! formatter (the CLI digit contract: never rounds up, trailing digit may be
//! one unit low) and a round-trip formatter that pads digits and rounds the
//! last one up so that re-parsing with floor semantics recovers the value
//! bit for bit at the stated precision.

use super::MPFloat;
use crate::error::{Error, Result};
use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

const LOG10_2: f64 = 0.30102999566398119;

/// Emission mode for the final decimal digit.
#[derive(Clone, Copy, PartialEq, Eq)]
pub enum DigitMode {
    /// Truncate toward zero (CLI output contract).
    Trunc,
    /// Round the magnitude up if any remainder was dropped (round-trip safe
    /// under floor re-parsing).
    Ceil,
    /// Round to nearest (table golden comparisons at printed precision).
    Nearest,
}

fn pow10(e: u32) -> BigUint {
    BigUint::from(10u32).pow(e)
}

impl MPFloat {
    fn to_biguint_scaled(&self) -> (BigUint, i64) {
        // |self| = F * 2^E
        let mut f = BigUint::zero();
        for &l in self.limbs() {
            f = (f << 64) | BigUint::from(l);
        }
        let e = self.exponent() - 64 * self.limbs().len() as i64;
        (f, e)
    }

    /// First `digits` significant decimal digits plus the decimal exponent:
    /// |x| = 0.d1d2... * 10^(dec_exp+1) i.e. d1.d2... * 10^dec_exp.
    pub fn decimal_digits(&self, digits: u32, mode: DigitMode) -> Result<(String, i64)> {
        assert!(digits >= 1);
        if self.is_zero() {
            return Ok(("0".repeat(digits as usize), 0));
        }
        let (f, e) = self.to_biguint_scaled();
        if e.unsigned_abs() > 16_000_000 {
            return Err(Error::range("decimal_digits", "exponent too large for decimal expansion"));
        }
        let (frac, _) = self.to_f64_parts();
        let mut d10 = ((self.exponent() as f64) * LOG10_2 + frac.abs().log10()).floor() as i64;
        for _ in 0..4 {
            let s = digits as i64 - 1 - d10;
            let mut num = f.clone();
            let mut den = BigUint::one();
            if s >= 0 {
                num *= pow10(s as u32);
            } else {
                den *= pow10((-s) as u32);
            }
            if e >= 0 {
                num <<= e as u64;
            } else {
                den <<= (-e) as u64;
            }
            let (mut q, r) = num.div_rem(&den);
            match mode {
                DigitMode::Trunc => {}
                DigitMode::Ceil => {
                    if !r.is_zero() {
                        q += 1u32;
                    }
                }
                DigitMode::Nearest => {
                    if &r * 2u32 >= den {
                        q += 1u32;
                    }
                }
            }
            let text = q.to_string();
            if text.len() == digits as usize {
                return Ok((text, d10));
            }
            // estimate off by one, or rounding carried into a new digit
            d10 += text.len() as i64 - digits as i64;
        }
        Err(Error::range("decimal_digits", "digit-count adjustment did not settle"))
    }

    /// Scientific notation "d.ddd...e<k>" with `digits` significant digits.
    pub fn to_sci_string(&self, digits: u32, mode: DigitMode) -> Result<String> {
        if self.is_zero() {
            return Ok("0".to_string());
        }
        let (d, k) = self.decimal_digits(digits, mode)?;
        let sign = if self.sign() < 0 { "-" } else { "" };
        if digits == 1 {
            return Ok(format!("{sign}{d}e{k}"));
        }
        Ok(format!("{sign}{}.{}e{}", &d[..1], &d[1..], k))
    }

    /// Decimal string that floor-parses back to exactly this value at the
    /// same precision.
    pub fn to_decimal_round_trip(&self) -> Result<String> {
        let digits = (self.precision() as f64 * LOG10_2).ceil() as u32 + 9;
        self.to_sci_string(digits, DigitMode::Ceil)
    }

    /// Parse "±d.ddd…e±k" (the point and exponent are optional), truncating
    /// to `n` bits.
    pub fn parse_decimal(s: &str, n: u32) -> Result<MPFloat> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad decimal literal: {s:?}"));
        let (sign, rest) = match s.as_bytes().first() {
            Some(b'-') => (-1i8, &s[1..]),
            Some(b'+') => (1, &s[1..]),
            _ => (1, s),
        };
        let (mant, exp) = match rest.find(['e', 'E']) {
            Some(i) => {
                let e: i64 = rest[i + 1..].parse().map_err(|_| bad())?;
                (&rest[..i], e)
            }
            None => (rest, 0),
        };
        let (int_part, frac_part) = match mant.find('.') {
            Some(i) => (&mant[..i], &mant[i + 1..]),
            None => (mant, ""),
        };
        let digits: String = int_part.chars().chain(frac_part.chars()).collect();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let d = BigUint::parse_bytes(digits.as_bytes(), 10).ok_or_else(bad)?;
        if d.is_zero() {
            return Ok(MPFloat::zero());
        }
        let e10 = exp - frac_part.len() as i64;
        if e10.unsigned_abs() > 5_000_000 {
            return Err(Error::range("parse_decimal", "decimal exponent too large"));
        }
        let guard = 64u32;
        let v = if e10 >= 0 {
            MPFloat::from_biguint(&(d * pow10(e10 as u32)), n)
        } else {
            let den = pow10((-e10) as u32);
            let shift = n + guard + den.bits() as u32;
            let q = (d << shift) / den;
            MPFloat::from_biguint(&q, n).shift_exp(-(shift as i64))?
        };
        Ok(if sign < 0 { v.neg() } else { v })
    }

    /// Exact hex form "±0x1.hhh…p±k".
    pub fn to_hex_string(&self) -> String {
        if self.is_zero() {
            return "0x0p+0".to_string();
        }
        let sign = if self.sign() < 0 { "-" } else { "" };
        // fraction = 1.bbb... * 2^(exponent-1): drop the leading bit
        let prec = self.precision();
        let nibbles = ((prec.max(2) - 1) as usize + 3) / 4;
        let limbs = self.limbs();
        let mut out = String::with_capacity(nibbles);
        for i in 0..nibbles {
            let bit = 1 + 4 * i as u32; // bit offset of the nibble start
            let q = (bit / 64) as usize;
            let r = bit % 64;
            let hi = limbs.get(q).copied().unwrap_or(0);
            let word = if r == 0 {
                hi
            } else {
                (hi << r) | limbs.get(q + 1).copied().unwrap_or(0) >> (64 - r)
            };
            out.push(char::from_digit((word >> 60) as u32, 16).unwrap());
        }
        let k = self.exponent() - 1;
        format!("{sign}0x1.{out}p{}{k}", if k >= 0 { "+" } else { "" })
    }

    pub fn parse_hex(s: &str) -> Result<MPFloat> {
        let s = s.trim();
        let bad = || Error::Parse(format!("bad hex literal: {s:?}"));
        let (sign, rest) = match s.as_bytes().first() {
            Some(b'-') => (-1i8, &s[1..]),
            Some(b'+') => (1, &s[1..]),
            _ => (1, s),
        };
        let rest = rest.strip_prefix("0x").or_else(|| rest.strip_prefix("0X")).ok_or_else(bad)?;
        let (mant, exp) = match rest.find(['p', 'P']) {
            Some(i) => {
                let e: i64 = rest[i + 1..].parse().map_err(|_| bad())?;
                (&rest[..i], e)
            }
            None => (rest, 0),
        };
        let (int_part, frac_part) = match mant.find('.') {
            Some(i) => (&mant[..i], &mant[i + 1..]),
            None => (mant, ""),
        };
        let digits: String = int_part.chars().chain(frac_part.chars()).collect();
        if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(bad());
        }
        let h = BigUint::parse_bytes(digits.as_bytes(), 16).ok_or_else(bad)?;
        if h.is_zero() {
            return Ok(MPFloat::zero());
        }
        let bits = h.bits() as u32;
        let v = MPFloat::from_biguint(&h, bits)
            .shift_exp(exp - 4 * frac_part.len() as i64)?;
        Ok(if sign < 0 { v.neg() } else { v })
    }
}

impl std::fmt::Display for MPFloat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let digits = ((self.precision().max(8) as f64) * LOG10_2).ceil() as u32 + 2;
        match self.to_sci_string(digits, DigitMode::Trunc) {
            Ok(s) => f.write_str(&s),
            Err(_) => write!(f, "<mpfloat sign={} exp={}>", self.sign(), self.exponent()),
        }
    }
}

//! Precision-n multiplication over three interchangeable backends. All three
//! compute the exact integer product of the operand fractions and truncate
//! once, so results are bit-identical across backends; only the metered cost
//! differs. Multiplication by an exact power of two is an exponent shift and
//! is not metered (it is O(n), like addition).

use super::ntt;
use super::{normalize_window, MPFloat};
use crate::error::{Error, Result};
use crate::meter::{Backend, CostMeter};

pub(crate) fn schoolbook_le(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0u64; a.len() + b.len()];
    for (i, &ai) in a.iter().enumerate() {
        if ai == 0 {
            continue;
        }
        let mut carry: u128 = 0;
        for (j, &bj) in b.iter().enumerate() {
            let cur = out[i + j] as u128 + ai as u128 * bj as u128 + carry;
            out[i + j] = cur as u64;
            carry = cur >> 64;
        }
        let mut k = i + b.len();
        while carry > 0 {
            let cur = out[k] as u128 + carry;
            out[k] = cur as u64;
            carry = cur >> 64;
            k += 1;
        }
    }
    out
}

fn add_le(a: &[u64], b: &[u64]) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n + 1];
    let mut carry = 0u64;
    for i in 0..n {
        let ai = a.get(i).copied().unwrap_or(0);
        let bi = b.get(i).copied().unwrap_or(0);
        let (s1, c1) = ai.overflowing_add(bi);
        let (s2, c2) = s1.overflowing_add(carry);
        out[i] = s2;
        carry = c1 as u64 + c2 as u64;
    }
    out[n] = carry;
    out
}

/// a -= b, little endian, a >= b.
fn sub_le_assign(a: &mut [u64], b: &[u64]) {
    let mut borrow = 0u64;
    for i in 0..a.len() {
        let bi = b.get(i).copied().unwrap_or(0);
        let (d1, b1) = a[i].overflowing_sub(bi);
        let (d2, b2) = d1.overflowing_sub(borrow);
        a[i] = d2;
        borrow = b1 as u64 + b2 as u64;
    }
    debug_assert_eq!(borrow, 0);
}

fn add_shifted_le(acc: &mut Vec<u64>, v: &[u64], shift_limbs: usize) {
    if acc.len() < v.len() + shift_limbs + 1 {
        acc.resize(v.len() + shift_limbs + 1, 0);
    }
    let mut carry = 0u64;
    for (i, &vi) in v.iter().enumerate() {
        let (s1, c1) = acc[shift_limbs + i].overflowing_add(vi);
        let (s2, c2) = s1.overflowing_add(carry);
        acc[shift_limbs + i] = s2;
        carry = c1 as u64 + c2 as u64;
    }
    let mut k = shift_limbs + v.len();
    while carry > 0 {
        let (s, c) = acc[k].overflowing_add(carry);
        acc[k] = s;
        carry = c as u64;
        k += 1;
    }
}

fn trim(v: &mut Vec<u64>) {
    while v.len() > 1 && *v.last().unwrap() == 0 {
        v.pop();
    }
}

pub(crate) fn karatsuba_le(a: &[u64], b: &[u64], base: usize, count: &mut u64) -> Vec<u64> {
    let base = base.max(2);
    if a.len().min(b.len()) <= base {
        *count += (a.len() * b.len()) as u64;
        return schoolbook_le(a, b);
    }
    let split = (a.len().max(b.len()) + 1) / 2;
    let (a0, a1) = a.split_at(split.min(a.len()));
    let (b0, b1) = b.split_at(split.min(b.len()));
    let mut p0 = karatsuba_le(a0, b0, base, count);
    let p2 = karatsuba_le(a1, b1, base, count);
    let sa = add_le(a0, a1);
    let sb = add_le(b0, b1);
    let mut p1 = karatsuba_le(&sa, &sb, base, count);
    sub_le_assign(&mut p1, &p0);
    sub_le_assign(&mut p1, &p2);
    trim(&mut p1);
    p0.resize((a.len() + b.len()).max(p0.len()) + 2, 0);
    add_shifted_le(&mut p0, &p1, split);
    add_shifted_le(&mut p0, &p2, 2 * split);
    p0.truncate(a.len() + b.len());
    p0
}

pub(crate) fn resolve_backend(backend: Backend, limbs: usize, t1: usize, t2: usize) -> Backend {
    match backend {
        Backend::Auto => {
            if limbs < t1 {
                Backend::Schoolbook
            } else if limbs < t2 {
                Backend::Karatsuba
            } else {
                Backend::Ntt
            }
        }
        b => b,
    }
}

/// Exact limb convolution through one backend; test hook for backend
/// equivalence checks. Inputs and output are little endian.
pub fn mul_convolution_for_tests(a: &[u64], b: &[u64], backend: Backend) -> Vec<u64> {
    let mut count = 0u64;
    let mut out = match backend {
        Backend::Schoolbook => schoolbook_le(a, b),
        Backend::Karatsuba => karatsuba_le(a, b, 4, &mut count),
        Backend::Ntt => ntt::multiply_le(a, b).0,
        Backend::Auto => schoolbook_le(a, b),
    };
    out.resize(a.len() + b.len(), 0);
    out
}

/// Multiplication at precision `n`. The meter supplies the backend and
/// receives the operation count.
pub fn mul(x: &MPFloat, y: &MPFloat, n: u32, meter: &mut CostMeter) -> Result<MPFloat> {
    let n = n.max(1);
    if x.is_zero() || y.is_zero() {
        return Ok(MPFloat::zero());
    }
    // 2^k * y: pure exponent arithmetic, never touches a backend.
    if x.is_pow2() {
        let mut r = y.round_to(n).shift_exp(x.exponent() - 1)?;
        if x.sign() < 0 {
            r = r.neg();
        }
        return Ok(r);
    }
    if y.is_pow2() {
        let mut r = x.round_to(n).shift_exp(y.exponent() - 1)?;
        if y.sign() < 0 {
            r = r.neg();
        }
        return Ok(r);
    }

    let anchor = x.exponent() as i128 + y.exponent() as i128;
    if anchor > i64::MAX as i128 || anchor <= i64::MIN as i128 {
        return Err(Error::ExponentOverflow { op: "mul" });
    }

    // A precision-n multiplication takes n-bit operands: shorter ones are
    // zero-extended (exact) so the metered cost is M(n) rather than the cost
    // of whatever narrower value an iteration happened to hold. Wider
    // operands are used in full; truncating them is the caller's decision.
    let xp = if x.precision() < n { x.round_to(n) } else { x.clone() };
    let yp = if y.precision() < n { y.round_to(n) } else { y.clone() };
    let ax: Vec<u64> = xp.limbs().iter().rev().copied().collect();
    let ay: Vec<u64> = yp.limbs().iter().rev().copied().collect();
    let t = meter.thresholds();
    let resolved = resolve_backend(meter.backend(), ax.len().max(ay.len()), t.t1_limbs, t.t2_limbs);
    let (product_le, cost) = match resolved {
        Backend::Schoolbook => {
            let p = schoolbook_le(&ax, &ay);
            let c = (ax.len() * ay.len()) as u64;
            (p, c)
        }
        Backend::Karatsuba => {
            let mut c = 0u64;
            let p = karatsuba_le(&ax, &ay, t.t1_limbs, &mut c);
            (p, c)
        }
        Backend::Ntt => ntt::multiply_le(&ax, &ay),
        Backend::Auto => unreachable!(),
    };
    meter.record_mul(n, cost);

    let total = ax.len() + ay.len();
    let mut window: Vec<u64> = product_le.into_iter().rev().collect();
    window.resize(total, 0); // safety; backends return exactly `total`
    let sign = x.sign() * y.sign();
    normalize_window(&window, anchor as i64, sign, n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::float::add;

    fn m(backend: Backend) -> CostMeter {
        CostMeter::new(backend)
    }

    #[test]
    fn mul_identity_exact() {
        let mut meter = m(Backend::Schoolbook);
        let x = crate::calib::pseudo_random_value(4096, 42).shift_exp(-7).unwrap();
        let one = MPFloat::one(64);
        let r = mul(&one, &x, 4096, &mut meter).unwrap();
        assert_eq!(r, x);
        assert_eq!(meter.limb_mults(), 0); // power-of-two path is unmetered
    }

    #[test]
    fn mul_small_values() {
        let mut meter = m(Backend::Schoolbook);
        let a = MPFloat::from_u64(1_000_003);
        let b = MPFloat::from_u64(999_983);
        let r = mul(&a, &b, 64, &mut meter).unwrap();
        assert_eq!(r, MPFloat::from_u64(1_000_003u64 * 999_983));
    }

    #[test]
    fn karatsuba_matches_schoolbook() {
        let a: Vec<u64> = (0..37).map(|i| 0x9e3779b97f4a7c15u64.wrapping_mul(i + 1)).collect();
        let b: Vec<u64> = (0..29).map(|i| 0xbf58476d1ce4e5b9u64.wrapping_mul(i + 3)).collect();
        let mut c = 0u64;
        let k = karatsuba_le(&a, &b, 4, &mut c);
        let s = schoolbook_le(&a, &b);
        assert_eq!(k, s);
        assert!(c > 0 && c < (37 * 29) as u64); // fewer base mults than schoolbook
    }

    #[test]
    fn mul_error_within_contract() {
        // (1+2^-80)^2 = 1 + 2^-79 + 2^-160, truncated at 128 bits.
        let one = MPFloat::one(128);
        let x = add(&one, &MPFloat::pow2(-80, 64), 128).unwrap();
        let mut meter = m(Backend::Schoolbook);
        let sq = mul(&x, &x, 128, &mut meter).unwrap();
        let expect = add(&one, &MPFloat::pow2(-79, 64), 128).unwrap();
        let diff = crate::float::sub(&sq, &expect, 128).unwrap();
        assert!(diff.is_zero() || diff.exponent() <= -126);
    }
}

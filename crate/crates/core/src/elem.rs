//! Real elementary functions through the arithmetic-geometric mean: the
//! Gauss-Legendre pi algorithm, complete elliptic integrals, logarithms from
//! the large-argument AGM identity log(y) ~ pi/(2 agm(1, 4/y)), and exp by
//! inverting log with a fourth-order Taylor step.
//!
//! The AGM is not self-correcting, so unlike the Newton operations it runs at
//! full working precision throughout. Composite routines work at
//! n + 32 + ceil(log2 n) guard bits (log uses n + ceil(n/log2 n) + 32 on the
//! AGM path to ride out cancellation) and truncate once at the end.
//!
//! Tighter schedules exist for both constants (down to ~6.25 M(n) log2 n for
//! pi and 10.5 for log); the plain forms here are the instrumented baseline.

use crate::basic::{inv_sqrt, recip, sqrt};
use crate::error::{Error, Result};
use crate::float::{add, div_u64, mul, mul_u64, sub, MPFloat};
use crate::meter::CostMeter;
use std::sync::RwLock;

/// Iterates of one AGM run. Slot 0 of `c_seq` is caller-supplied (sin(phi)
/// for the elliptic integrals); c_{i+1} = a_i - a_{i+1}.
#[derive(Clone, Debug)]
pub struct AGMTrace {
    pub a_seq: Vec<MPFloat>,
    pub b_seq: Vec<MPFloat>,
    pub c_seq: Vec<MPFloat>,
    pub iterations: usize,
}

impl AGMTrace {
    pub fn limit(&self) -> &MPFloat {
        self.a_seq.last().expect("nonempty trace")
    }
}

fn ceil_log2(n: u32) -> u32 {
    32 - n.saturating_sub(1).leading_zeros()
}

/// Guard-bit policy for composite algorithms.
pub(crate) fn work_bits(n: u32) -> u32 {
    n + 32 + ceil_log2(n.max(2))
}

/// AGM iteration at fixed precision `n`, stopping once a - b <= 2^-n.
pub fn agm(a0: &MPFloat, b0: &MPFloat, n: u32, meter: &mut CostMeter) -> Result<AGMTrace> {
    agm_with_c0(a0, b0, None, n, meter)
}

pub fn agm_with_c0(
    a0: &MPFloat,
    b0: &MPFloat,
    c0: Option<MPFloat>,
    n: u32,
    meter: &mut CostMeter,
) -> Result<AGMTrace> {
    if a0.is_zero() || a0.sign() < 0 || b0.is_zero() || b0.sign() < 0 {
        return Err(Error::domain("agm", "inputs must be positive"));
    }
    let (mut a, mut b) = if a0.cmp_abs(b0) == std::cmp::Ordering::Less {
        (b0.round_to(n), a0.round_to(n))
    } else {
        (a0.round_to(n), b0.round_to(n))
    };
    let threshold = MPFloat::pow2(-(n as i64), 1);
    let ratio_bits = (a.exponent() - b.exponent()).unsigned_abs();
    let cap = ratio_bits as usize + ceil_log2(n) as usize + 8;
    let mut trace = AGMTrace {
        a_seq: vec![a.clone()],
        b_seq: vec![b.clone()],
        c_seq: vec![c0.unwrap_or_else(MPFloat::zero)],
        iterations: 0,
    };
    loop {
        let d = sub(&a, &b, n)?;
        if d.cmp_abs(&threshold) != std::cmp::Ordering::Greater {
            return Ok(trace);
        }
        if trace.iterations >= cap {
            return Err(Error::Convergence { method: "agm", iterations: cap, trail: Vec::new() });
        }
        let next_a = add(&a, &b, n)?.shift_exp(-1)?;
        let ab = mul(&a, &b, n, meter)?;
        let next_b = sqrt(&ab, n, meter)?;
        trace.c_seq.push(sub(&a, &next_a, n)?);
        a = next_a;
        b = next_b;
        trace.a_seq.push(a.clone());
        trace.b_seq.push(b.clone());
        trace.iterations += 1;
    }
}

/// One Gauss-Legendre state: estimates A^2/T and (A+B)^2/(4T) per iteration,
/// recorded before the first iteration and after each subsequent one.
pub fn gauss_legendre_trace(
    n_work: u32,
    iterations: usize,
    meter: &mut CostMeter,
) -> Result<Vec<(MPFloat, MPFloat)>> {
    let nw = n_work;
    let mut a = MPFloat::one(nw);
    let mut b = inv_sqrt(&MPFloat::from_u64(2), nw, meter)?;
    let mut t = MPFloat::pow2(-2, nw);
    let mut x_log2 = 0i64; // X = 2^x_log2
    let mut rows = Vec::with_capacity(iterations + 1);
    let estimate = |a: &MPFloat, b: &MPFloat, t: &MPFloat, meter: &mut CostMeter| -> Result<(MPFloat, MPFloat)> {
        let a2 = mul(a, a, nw, meter)?;
        let first = crate::basic::div(&a2, t, nw, meter)?;
        let s = add(a, b, nw)?;
        let s2 = mul(&s, &s, nw, meter)?;
        let second = crate::basic::div(&s2, &t.shift_exp(2)?, nw, meter)?;
        Ok((first, second))
    };
    rows.push(estimate(&a, &b, &t, meter)?);
    for _ in 0..iterations {
        let y = a.clone();
        a = add(&a, &b, nw)?.shift_exp(-1)?;
        b = sqrt(&mul(&b, &y, nw, meter)?, nw, meter)?;
        let d = sub(&a, &y, nw)?;
        let d2 = mul(&d, &d, nw, meter)?;
        t = sub(&t, &d2.shift_exp(x_log2)?, nw)?;
        x_log2 += 1;
        rows.push(estimate(&a, &b, &t, meter)?);
    }
    Ok(rows)
}

/// Gauss-Legendre pi to precision n; the freshly computed value also lands in
/// the constant cache. Always runs the full iteration (callers wanting the
/// cached constant use `ConstantCache::pi`).
pub fn compute_pi(n: u32, meter: &mut CostMeter) -> Result<MPFloat> {
    let n = n.max(8);
    let value = meter.scoped("pi", n, |meter| -> Result<MPFloat> {
        let nw = work_bits(n);
        let mut a = MPFloat::one(nw);
        let mut b = inv_sqrt(&MPFloat::from_u64(2), nw, meter)?;
        let mut t = MPFloat::pow2(-2, nw);
        let mut x_log2 = 0i64;
        let threshold = MPFloat::pow2(-(n as i64), 1);
        while sub(&a, &b, nw)?.cmp_abs(&threshold) == std::cmp::Ordering::Greater {
            let y = a.clone();
            a = add(&a, &b, nw)?.shift_exp(-1)?;
            b = sqrt(&mul(&b, &y, nw, meter)?, nw, meter)?;
            let d = sub(&a, &y, nw)?;
            let d2 = mul(&d, &d, nw, meter)?;
            t = sub(&t, &d2.shift_exp(x_log2)?, nw)?;
            x_log2 += 1;
        }
        let s = add(&a, &b, nw)?;
        let s2 = mul(&s, &s, nw, meter)?;
        let pi = crate::basic::div(&s2, &t.shift_exp(2)?, nw, meter)?;
        Ok(pi.round_to(n))
    })?;
    ConstantCache::global().offer_pi(&value);
    Ok(value)
}

/// Shared cache of pi and ln 2, grown monotonically: a read that needs more
/// precision recomputes at 1.25x the request and replaces the entry.
/// Readers share; a precision-raising write excludes all access.
pub struct ConstantCache {
    pi: RwLock<Option<MPFloat>>,
    ln2: RwLock<Option<MPFloat>>,
}

static CACHE: ConstantCache = ConstantCache { pi: RwLock::new(None), ln2: RwLock::new(None) };

impl ConstantCache {
    pub fn global() -> &'static ConstantCache {
        &CACHE
    }

    pub fn cached_pi_precision(&self) -> Option<u32> {
        self.pi.read().unwrap().as_ref().map(|v| v.precision())
    }

    fn offer_pi(&self, value: &MPFloat) {
        let mut w = self.pi.write().unwrap();
        if w.as_ref().map_or(true, |have| have.precision() < value.precision()) {
            *w = Some(value.clone());
        }
    }

    pub fn pi(&self, n: u32) -> MPFloat {
        if let Some(v) = self.pi.read().unwrap().as_ref() {
            if v.precision() >= n {
                return v.round_to(n);
            }
        }
        let target = (n as u64 * 5 / 4) as u32 + 64;
        let fresh = compute_pi(target, &mut CostMeter::unmetered()).expect("pi computation");
        // compute_pi already offered it; reread to honor a concurrent larger write.
        let r = self.pi.read().unwrap();
        r.as_ref().unwrap_or(&fresh).round_to(n)
    }

    pub fn ln2(&self, n: u32) -> MPFloat {
        if let Some(v) = self.ln2.read().unwrap().as_ref() {
            if v.precision() >= n {
                return v.round_to(n);
            }
        }
        let target = (n as u64 * 5 / 4) as u32 + 64;
        let fresh = ln2_uncached(target, &mut CostMeter::unmetered()).expect("ln2 computation");
        let mut w = self.ln2.write().unwrap();
        if w.as_ref().map_or(true, |have| have.precision() < fresh.precision()) {
            *w = Some(fresh.clone());
        }
        drop(w);
        let r = self.ln2.read().unwrap();
        r.as_ref().unwrap_or(&fresh).round_to(n)
    }
}

/// ln 2 = log(2^m)/m with 2^m the smallest power of two past the AGM
/// validity bound, so b0 = 4/y is an exact power of two.
pub(crate) fn ln2_uncached(n: u32, meter: &mut CostMeter) -> Result<MPFloat> {
    let nw = work_bits(n) + 16;
    let m = (nw as u64).div_ceil(2) + 2;
    let b0 = MPFloat::pow2(2 - m as i64, nw);
    let trace = agm(&MPFloat::one(nw), &b0, nw, meter)?;
    let pi = ConstantCache::global().pi(nw);
    let log_y = crate::basic::div(&pi, &trace.limit().shift_exp(1)?, nw, meter)?;
    Ok(div_u64(&log_y, m, nw)?.round_to(n))
}

/// Natural logarithm. Arguments within 2^(-n/log2 n) of 1 go through the
/// alternating series (small relative error there); 0 < x < 1 is handled as
/// -log(1/x); everything else scales to y = 2^k x >= 2^(nw/2) and applies
/// the AGM identity, subtracting k ln 2 at the end.
pub fn mp_log(x: &MPFloat, n: u32, meter: &mut CostMeter) -> Result<MPFloat> {
    meter.scoped("log", n, |m| mp_log_inner(x, n, m))
}

pub(crate) fn mp_log_inner(x: &MPFloat, n: u32, meter: &mut CostMeter) -> Result<MPFloat> {
    if x.is_zero() || x.sign() < 0 {
        return Err(Error::domain("log", "argument must be positive"));
    }
    let one = MPFloat::one(1);
    if x == &one {
        return Ok(MPFloat::zero());
    }
    let n = n.max(8);
    // near-1 branch: delta computed exactly (both operands' bits in window)
    let delta = sub(x, &one, x.precision().max(n) + 4)?;
    let series_cut = -((n / ceil_log2(n).max(1)) as i64);
    if !delta.is_zero() && delta.exponent() <= series_cut {
        return log1p_series(&delta, n, meter);
    }
    let nw = n + (n / ceil_log2(n).max(1)) + 32;
    if x.cmp_abs(&one) == std::cmp::Ordering::Less {
        let inv = recip(x, nw + 8, meter)?;
        return Ok(log_agm_large(&inv, n, nw, meter)?.neg());
    }
    log_agm_large(x, n, nw, meter)
}

fn log_agm_large(x: &MPFloat, n: u32, nw: u32, meter: &mut CostMeter) -> Result<MPFloat> {
    debug_assert!(x.sign() > 0 && x.cmp_abs(&MPFloat::one(1)) != std::cmp::Ordering::Less);
    // smallest k with 2^k x >= 2^(nw/2); negative k shifts huge arguments
    // down so the iteration count stays ~2 log2(nw)
    let k = ((nw as i64) + 1) / 2 + 1 - x.exponent();
    let y = x.shift_exp(k)?;
    let b0 = recip(&y, nw, meter)?.shift_exp(2)?;
    let trace = agm(&MPFloat::one(nw), &b0, nw, meter)?;
    let pi = ConstantCache::global().pi(nw);
    let log_y = crate::basic::div(&pi, &trace.limit().shift_exp(1)?, nw, meter)?;
    let ln2 = ConstantCache::global().ln2(nw + 64);
    let shift = mul_u64(&ln2, k.unsigned_abs(), nw + 64)?;
    let r = if k >= 0 { sub(&log_y, &shift, nw)? } else { add(&log_y, &shift, nw)? };
    Ok(r.round_to(n))
}

/// log(1 + delta) by the alternating series, for |delta| < 2^(-n/log2 n).
/// About log2(n) terms suffice in that range.
pub fn log1p_series(delta: &MPFloat, n: u32, meter: &mut CostMeter) -> Result<MPFloat> {
    let (r, _) = log1p_series_with_count(delta, n, meter)?;
    Ok(r)
}

pub fn log1p_series_with_count(
    delta: &MPFloat,
    n: u32,
    meter: &mut CostMeter,
) -> Result<(MPFloat, usize)> {
    let n = n.max(8);
    if delta.is_zero() {
        return Ok((MPFloat::zero(), 0));
    }
    let cut = -((n / ceil_log2(n).max(1)) as i64);
    if delta.exponent() > cut {
        return Err(Error::range(
            "log1p_series",
            "|delta| >= 2^(-n/log2 n); use the AGM path",
        ));
    }
    let nw = n + 32;
    let d = delta.round_to(nw);
    let mut sum = d.clone();
    let mut pow = d.clone();
    let stop = delta.exponent() - n as i64 - 8;
    let mut terms = 1usize;
    for j in 2u64.. {
        pow = mul(&pow, &d, nw, meter)?;
        if pow.is_zero() || pow.exponent() < stop {
            break;
        }
        let term = div_u64(&pow, j, nw)?;
        sum = if j % 2 == 0 { sub(&sum, &term, nw)? } else { add(&sum, &term, nw)? };
        terms += 1;
    }
    Ok((sum.round_to(n), terms))
}

fn taylor_ladder(nw: u32) -> Vec<u32> {
    let mut desc = vec![nw];
    let mut e = nw;
    loop {
        let next = e.div_ceil(5) + 8;
        if next >= 45 && next < e {
            desc.push(next);
            e = next;
        } else {
            break;
        }
    }
    desc.reverse();
    desc
}

/// exp(x): reduce by ln 2, invert log(y) = r with the fourth-order iteration
/// y <- y * sum_{j<=4} (r - log y)^j / j!, scale back by 2^m.
pub fn mp_exp(x: &MPFloat, n: u32, meter: &mut CostMeter) -> Result<MPFloat> {
    meter.scoped("exp", n, |m| mp_exp_inner(x, n, m))
}

pub(crate) fn mp_exp_inner(x: &MPFloat, n: u32, meter: &mut CostMeter) -> Result<MPFloat> {
    let n = n.max(8);
    if x.is_zero() {
        return Ok(MPFloat::one(n));
    }
    if x.exponent() > 44 {
        return Err(Error::range("exp", "argument magnitude exceeds 2^44"));
    }
    let nw = work_bits(n);
    // range reduction x = r + m ln2, r in [0, ln2)
    let wide = nw + 64 + x.exponent().max(0) as u32;
    let ln2 = ConstantCache::global().ln2(wide);
    let mut m = (x.to_f64() / std::f64::consts::LN_2).floor() as i64;
    let mut r;
    loop {
        let shift = mul_u64(&ln2, m.unsigned_abs(), wide)?;
        r = if m >= 0 { sub(&x.round_to(wide), &shift, wide)? } else { add(&x.round_to(wide), &shift, wide)? };
        if r.sign() < 0 {
            m -= 1;
        } else if r.cmp_abs(&ln2) != std::cmp::Ordering::Less {
            m += 1;
        } else {
            break;
        }
    }
    // solve log(y) = r
    let mut y = MPFloat::from_f64(r.to_f64().exp())?;
    for &t in taylor_ladder(nw).iter() {
        let logy = mp_log_inner(&y, t + 8, meter)?;
        let u = sub(&r.round_to(t + 8), &logy, t + 8)?;
        let mut sum = add(&MPFloat::one(t + 8), &u, t + 8)?;
        let mut pow = u.clone();
        let mut fact = 1u64;
        for j in 2..=4u64 {
            pow = mul(&pow, &u, t + 8, meter)?;
            fact *= j;
            sum = add(&sum, &div_u64(&pow, fact, t + 8)?, t + 8)?;
        }
        y = mul(&y, &sum, t + 8, meter)?;
    }
    y.round_to(n).shift_exp(m)
}

/// Complete elliptic integrals of the first and second kind for 0 < phi <
/// pi/2: K = pi / (2 agm(1, cos phi)) and E = K (1 - sum 2^(i-1) c_i^2) with
/// c_0 = sin phi.
pub fn elliptic_ke(phi: &MPFloat, n: u32, meter: &mut CostMeter) -> Result<(MPFloat, MPFloat)> {
    meter.scoped("elliptic_ke", n, |meter| {
        let n = n.max(8);
        let nw = work_bits(n);
        let half_pi = ConstantCache::global().pi(nw).shift_exp(-1)?;
        if phi.is_zero()
            || phi.sign() < 0
            || phi.cmp_abs(&half_pi) != std::cmp::Ordering::Less
        {
            return Err(Error::domain("elliptic_ke", "phi must lie in (0, pi/2)"));
        }
        let s = crate::complex::trig(crate::complex::TrigKind::Sin, phi, nw, meter)?;
        let c = crate::complex::trig(crate::complex::TrigKind::Cos, phi, nw, meter)?;
        let trace = agm_with_c0(&MPFloat::one(nw), &c, Some(s), nw, meter)?;
        let k = crate::basic::div(&half_pi, trace.limit(), nw, meter)?;
        let mut sum = MPFloat::zero();
        for (i, ci) in trace.c_seq.iter().enumerate() {
            if ci.is_zero() {
                continue;
            }
            let sq = mul(ci, ci, nw, meter)?;
            sum = add(&sum, &sq.shift_exp(i as i64 - 1)?, nw)?;
        }
        let e = mul(&k, &sub(&MPFloat::one(nw), &sum, nw)?, nw, meter)?;
        Ok((k.round_to(n), e.round_to(n)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::float::DigitMode;
    use crate::meter::Backend;

    fn meter() -> CostMeter {
        CostMeter::new(Backend::Auto)
    }

    fn sig10(x: &MPFloat) -> String {
        x.to_sci_string(10, DigitMode::Nearest).unwrap()
    }

    #[test]
    fn agm_fixed_point() {
        let mut m = meter();
        let x = MPFloat::from_f64(0.75).unwrap();
        let t = agm(&x, &x, 128, &mut m).unwrap();
        assert_eq!(t.iterations, 0);
        assert_eq!(t.limit(), &x);
    }

    #[test]
    fn agm_log_table_values() {
        // a1 = 5.000020000e-1, b1 = 2.000000000e-3, a7 = b7 = 1.136980295e-1
        let mut m = meter();
        let b0 = MPFloat::parse_decimal("4e-6", 96).unwrap();
        let t = agm(&MPFloat::one(96), &b0, 64, &mut m).unwrap();
        assert_eq!(sig10(&t.a_seq[1]), "5.000020000e-1");
        assert_eq!(sig10(&t.b_seq[1]), "2.000000000e-3");
        assert!(t.iterations >= 7);
        assert_eq!(sig10(&t.a_seq[7]), "1.136980295e-1");
        assert_eq!(sig10(&t.b_seq[7]), "1.136980295e-1");
    }

    #[test]
    fn log_golden_value() {
        let mut m = meter();
        let x = MPFloat::from_u64(1_000_000);
        let l = mp_log(&x, 64, &mut m).unwrap();
        assert_eq!(sig10(&l), "1.381551056e1");
    }

    #[test]
    fn log_identity_and_domain() {
        let mut m = meter();
        assert!(mp_log(&MPFloat::one(64), 256, &mut m).unwrap().is_zero());
        assert!(mp_log(&MPFloat::zero(), 64, &mut m).is_err());
        assert!(mp_log(&MPFloat::from_i64(-3), 64, &mut m).is_err());
    }

    #[test]
    fn log_reciprocal_branch() {
        let mut m = meter();
        let x = MPFloat::parse_decimal("0.25", 300).unwrap();
        let l = mp_log(&x, 256, &mut m).unwrap();
        let l2 = mp_log(&MPFloat::from_u64(4), 256, &mut m).unwrap();
        let s = add(&l, &l2, 256).unwrap();
        assert!(s.is_zero() || s.exponent() < -240, "{}", s.exponent());
    }

    #[test]
    fn exp_basics() {
        let mut m = meter();
        assert_eq!(mp_exp(&MPFloat::zero(), 128, &mut m).unwrap(), MPFloat::one(128));
        let e = mp_exp(&MPFloat::one(64), 128, &mut m).unwrap();
        let (f, k) = e.to_f64_parts();
        assert!((f * 2f64.powi(k as i32) - std::f64::consts::E).abs() < 1e-13);
        // round trip through log
        let x = MPFloat::parse_decimal("37.5", 300).unwrap();
        let l = mp_log(&x, 300, &mut m).unwrap();
        let back = mp_exp(&l, 256, &mut m).unwrap();
        let d = sub(&back, &x, 256).unwrap();
        assert!(d.is_zero() || d.exponent() < x.exponent() - 245, "{}", d.exponent());
    }

    #[test]
    fn log1p_small_argument() {
        let mut m = meter();
        let d = MPFloat::pow2(-200, 64);
        let (r, terms) = log1p_series_with_count(&d, 1024, &mut m).unwrap();
        assert!(terms <= 12, "{terms}");
        // r = 2^-200 - 2^-401 + ...: check leading behavior
        let diff = sub(&d, &r, 1024).unwrap();
        assert!(diff.exponent() <= -400, "{}", diff.exponent());
        // too-large delta is rejected
        let big = MPFloat::parse_decimal("0.01", 64).unwrap();
        assert!(matches!(log1p_series(&big, 1024, &mut m), Err(Error::Range { .. })));
    }

    #[test]
    fn pi_first_digits() {
        let mut m = meter();
        let pi = compute_pi(256, &mut m).unwrap();
        assert_eq!(
            pi.to_sci_string(20, DigitMode::Trunc).unwrap(),
            "3.1415926535897932384e0"
        );
        assert!(ConstantCache::global().cached_pi_precision().unwrap() >= 256);
    }
}

//! Precision-scheduled Newton methods: reciprocal, division, inverse square
//! root, square root. Self-correcting iterations run up a descending
//! precision schedule, and the last iteration trims its internal precisions
//! (the correction multiply of the reciprocal runs at n/2; the inverse square
//! root evaluates ax^2 at n, eps^2 at n/3 and the update product at 2n/3).

use crate::error::{Error, Result};
use crate::float::{add, mul, sub, MPFloat};
use crate::meter::CostMeter;

/// Seed precision: a machine double supplies the starting approximation.
pub const SEED_BITS: u32 = 53;

/// Descending working precisions for one Newton run, last entry at the seed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrecisionSchedule {
    pub entries: Vec<u32>,
    pub order: u32,
}

impl PrecisionSchedule {
    /// Invariants: starts at n_work, strictly descending, each step shrinks
    /// no faster than 1/order minus 8 guard bits, ends at >= SEED_BITS.
    pub fn validate(&self, n_work: u32) -> Result<()> {
        let e = &self.entries;
        if e.is_empty() || e[0] != n_work {
            return Err(Error::domain("schedule", "must start at n_work"));
        }
        if *e.last().unwrap() < SEED_BITS {
            return Err(Error::domain("schedule", "last entry below seed precision"));
        }
        for w in e.windows(2) {
            let floor = w[0].div_ceil(self.order).saturating_sub(8);
            if w[1] >= w[0] || w[1] < floor {
                return Err(Error::domain("schedule", "entry shrinks too fast or not at all"));
            }
        }
        Ok(())
    }
}

/// Build the standard schedule: entries[i+1] = ceil(entries[i]/order) + 8,
/// clipped at the seed precision. Length is Theta(log n).
pub fn newton_schedule(n_work: u32, order: u32) -> PrecisionSchedule {
    assert!(order == 2 || order == 3, "convergence order must be 2 or 3");
    let n_work = n_work.max(SEED_BITS);
    let mut entries = vec![n_work];
    let mut e = n_work;
    while e > SEED_BITS {
        let next = (e.div_ceil(order) + 8).min(e - 1).max(SEED_BITS);
        entries.push(next);
        e = next;
    }
    PrecisionSchedule { entries, order }
}

fn f64_seed(v: f64, n: u32) -> MPFloat {
    MPFloat::from_f64(v).expect("finite seed").round_to(n)
}

/// Reciprocal by the second-order iteration x <- x - x*(a*x - 1), with the
/// correction multiply at half the stage precision.
pub fn recip(a: &MPFloat, n: u32, meter: &mut CostMeter) -> Result<MPFloat> {
    meter.scoped("recip", n, |m| recip_inner(a, n, m))
}

fn recip_inner(a: &MPFloat, n: u32, meter: &mut CostMeter) -> Result<MPFloat> {
    let n = n.max(1);
    let schedule = newton_schedule(n.max(SEED_BITS), 2);
    recip_with_schedule(a, n, &schedule, meter)
}

/// Reciprocal over a caller-supplied schedule (any schedule satisfying the
/// invariants yields the same error bound).
pub fn recip_with_schedule(
    a: &MPFloat,
    n: u32,
    schedule: &PrecisionSchedule,
    meter: &mut CostMeter,
) -> Result<MPFloat> {
    if a.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if a.is_pow2() {
        // 1 / (s * 2^k) = s * 2^-k, exactly.
        let mut r = MPFloat::pow2(1 - a.exponent(), n);
        if a.sign() < 0 {
            r = r.neg();
        }
        return Ok(r);
    }
    let ea = a.exponent();
    let frac = a.abs().with_exponent(0); // in [1/2, 1)
    let (f, _) = frac.to_f64_parts();
    let mut x = f64_seed(1.0 / f, SEED_BITS + 8);
    let one = MPFloat::one(1);
    for &t in schedule.entries.iter().rev().skip(1) {
        let at = frac.round_to(t);
        let ax = mul(&at, &x, t, meter)?;
        let eps = sub(&ax, &one, t)?;
        let corr_prec = t.div_ceil(2);
        let delta = mul(&x.round_to(corr_prec), &eps.round_to(corr_prec), corr_prec, meter)?;
        x = sub(&x, &delta, t)?;
    }
    let mut r = x.round_to(n).shift_exp(-ea)?;
    if a.sign() < 0 {
        r = r.neg();
    }
    Ok(r)
}

/// b / a = b * (1/a).
pub fn div(b: &MPFloat, a: &MPFloat, n: u32, meter: &mut CostMeter) -> Result<MPFloat> {
    meter.scoped("div", n, |m| {
        let r = recip_inner(a, n, m)?;
        mul(&b.round_to(n), &r, n, m)
    })
}

/// a^(-1/2) by the third-order iteration x <- x - x*(eps - (3/4)eps^2)/2,
/// eps = a x^2 - 1.
pub fn inv_sqrt(a: &MPFloat, n: u32, meter: &mut CostMeter) -> Result<MPFloat> {
    meter.scoped("inv_sqrt", n, |m| inv_sqrt_inner(a, n, m))
}

fn inv_sqrt_inner(a: &MPFloat, n: u32, meter: &mut CostMeter) -> Result<MPFloat> {
    if a.is_zero() || a.sign() < 0 {
        return Err(Error::domain("inv_sqrt", "argument must be positive"));
    }
    let n = n.max(1);
    // a = a' * 2^(2k), a' in [1/2, 2): the f64 seed stays valid and the
    // result exponent -k reattaches exactly.
    let e = a.exponent();
    let r = e.rem_euclid(2);
    let k = (e - r) / 2;
    let scaled = a.with_exponent(r); // frac * 2^r in [1/2, 2)
    let (f, fe) = scaled.to_f64_parts();
    let af = f * 2f64.powi(fe as i32);
    let mut x = f64_seed(1.0 / af.sqrt(), SEED_BITS + 8);
    let one = MPFloat::one(1);
    let schedule = newton_schedule(n.max(SEED_BITS), 3);
    for &t in schedule.entries.iter().rev().skip(1) {
        let at = scaled.round_to(t);
        let x2 = mul(&x, &x, t, meter)?;
        let ax2 = mul(&at, &x2, t, meter)?;
        let eps = sub(&ax2, &one, t)?;
        let t3 = t.div_ceil(3);
        let e3 = eps.round_to(t3);
        let eps2 = mul(&e3, &e3, t3, meter)?;
        let three_quarters = sub(&eps2, &eps2.shift_exp(-2)?, t3)?;
        let inner = sub(&eps, &three_quarters, t)?;
        let t23 = (2 * t).div_ceil(3);
        let prod = mul(&x.round_to(t23), &inner.round_to(t23), t23, meter)?;
        x = sub(&x, &prod.shift_exp(-1)?, t)?;
    }
    x.round_to(n).shift_exp(-k)
}

/// sqrt(a) = a * a^(-1/2) for a > 0, and exactly 0 at a = 0.
pub fn sqrt(a: &MPFloat, n: u32, meter: &mut CostMeter) -> Result<MPFloat> {
    if a.is_zero() {
        return Ok(MPFloat::zero());
    }
    if a.sign() < 0 {
        return Err(Error::domain("sqrt", "argument must be nonnegative"));
    }
    meter.scoped("sqrt", n, |m| {
        let y = inv_sqrt_inner(a, n, m)?;
        mul(&a.round_to(n), &y, n, m)
    })
}

/// Direct Newton square-root forms. Asymptotically slower than the
/// inv_sqrt route; kept as metered reference points.
pub mod direct {
    use super::*;

    /// x <- (x + a/x)/2: one full division per stage.
    pub fn sqrt_direct_mean(a: &MPFloat, n: u32, meter: &mut CostMeter) -> Result<MPFloat> {
        if a.is_zero() {
            return Ok(MPFloat::zero());
        }
        if a.sign() < 0 {
            return Err(Error::domain("sqrt_direct_mean", "argument must be nonnegative"));
        }
        meter.scoped("sqrt_direct_mean", n, |meter| {
            let e = a.exponent();
            let r = e.rem_euclid(2);
            let k = (e - r) / 2;
            let scaled = a.with_exponent(r);
            let (f, fe) = scaled.to_f64_parts();
            let mut x = f64_seed((f * 2f64.powi(fe as i32)).sqrt(), SEED_BITS + 8);
            let schedule = newton_schedule(n.max(SEED_BITS), 2);
            for &t in schedule.entries.iter().rev().skip(1) {
                let q = super::div(&scaled.round_to(t), &x, t, meter)?;
                x = add(&x, &q, t)?.shift_exp(-1)?;
            }
            x.round_to(n).shift_exp(k)
        })
    }

    /// x <- x + (a - x^2)/(2x): squaring at full precision, division at half.
    pub fn sqrt_direct_newton(a: &MPFloat, n: u32, meter: &mut CostMeter) -> Result<MPFloat> {
        if a.is_zero() {
            return Ok(MPFloat::zero());
        }
        if a.sign() < 0 {
            return Err(Error::domain("sqrt_direct_newton", "argument must be nonnegative"));
        }
        meter.scoped("sqrt_direct_newton", n, |meter| {
            let e = a.exponent();
            let r = e.rem_euclid(2);
            let k = (e - r) / 2;
            let scaled = a.with_exponent(r);
            let (f, fe) = scaled.to_f64_parts();
            let mut x = f64_seed((f * 2f64.powi(fe as i32)).sqrt(), SEED_BITS + 8);
            let schedule = newton_schedule(n.max(SEED_BITS), 2);
            for &t in schedule.entries.iter().rev().skip(1) {
                let x2 = mul(&x, &x, t, meter)?;
                let num = sub(&scaled.round_to(t), &x2, t)?;
                let half = t.div_ceil(2) + 8;
                let den = x.shift_exp(1)?;
                let q = super::div(&num.round_to(half), &den.round_to(half), half, meter)?;
                x = add(&x, &q, t)?;
            }
            x.round_to(n).shift_exp(k)
        })
    }
}

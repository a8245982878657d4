//! Precision-n complex arithmetic and the complex AGM, feeding artan, sin
//! and cos through log(v+iw) = log|v+iw| + i artan(w/v) and exp(i theta) =
//! cos(theta) + i sin(theta).
//!
//! The error contract is on the complex modulus: |computed - exact| <=
//! 2^(-n+c) |exact|. The smaller component individually may be far off or
//! even carry the wrong sign. Operations canonicalize on the sign of the
//! imaginary part so that conjugating all inputs conjugates results bit for
//! bit.

use crate::basic::{recip, sqrt};
use crate::elem::{work_bits, ConstantCache};
use crate::error::{Error, Result};
use crate::float::{add, div_u64, mul, mul_u64, sub, MPFloat};
use crate::meter::CostMeter;

#[derive(Clone, Debug, PartialEq)]
pub struct MPComplex {
    pub re: MPFloat,
    pub im: MPFloat,
}

impl MPComplex {
    pub fn new(re: MPFloat, im: MPFloat) -> Self {
        MPComplex { re, im }
    }
    pub fn zero() -> Self {
        MPComplex { re: MPFloat::zero(), im: MPFloat::zero() }
    }
    pub fn one(n: u32) -> Self {
        MPComplex { re: MPFloat::one(n), im: MPFloat::zero() }
    }
    pub fn from_real(re: MPFloat) -> Self {
        MPComplex { re, im: MPFloat::zero() }
    }
    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }
    pub fn conj(&self) -> Self {
        MPComplex { re: self.re.clone(), im: self.im.neg() }
    }
    pub fn neg(&self) -> Self {
        MPComplex { re: self.re.neg(), im: self.im.neg() }
    }
    pub fn round_to(&self, n: u32) -> Self {
        MPComplex { re: self.re.round_to(n), im: self.im.round_to(n) }
    }
    pub fn shift_exp(&self, k: i64) -> Result<Self> {
        Ok(MPComplex { re: self.re.shift_exp(k)?, im: self.im.shift_exp(k)? })
    }
    /// Exponent e with |z| in [2^(e-1), 2^(e+1)): max component exponent.
    pub fn mag_exponent(&self) -> i64 {
        match (self.re.is_zero(), self.im.is_zero()) {
            (true, true) => 0,
            (true, false) => self.im.exponent(),
            (false, true) => self.re.exponent(),
            (false, false) => self.re.exponent().max(self.im.exponent()),
        }
    }
    /// "re+imi" / "re-imi" with the given significant digits.
    pub fn to_display_string(&self, digits: u32) -> String {
        use crate::float::DigitMode;
        let re = self.re.to_sci_string(digits, DigitMode::Trunc).unwrap_or_default();
        let im_abs = self.im.abs().to_sci_string(digits, DigitMode::Trunc).unwrap_or_default();
        let sign = if self.im.sign() < 0 { "-" } else { "+" };
        format!("{re}{sign}{im_abs}i")
    }
}

pub fn cadd(a: &MPComplex, b: &MPComplex, n: u32) -> Result<MPComplex> {
    Ok(MPComplex { re: add(&a.re, &b.re, n)?, im: add(&a.im, &b.im, n)? })
}

pub fn csub(a: &MPComplex, b: &MPComplex, n: u32) -> Result<MPComplex> {
    Ok(MPComplex { re: sub(&a.re, &b.re, n)?, im: sub(&a.im, &b.im, n)? })
}

/// |z|^2 at precision n (two multiplications).
fn mag2(z: &MPComplex, n: u32, meter: &mut CostMeter) -> Result<MPFloat> {
    let r2 = mul(&z.re, &z.re, n, meter)?;
    let i2 = mul(&z.im, &z.im, n, meter)?;
    add(&r2, &i2, n)
}

fn conj_flip2(a: &MPComplex, b: &MPComplex) -> bool {
    match a.im.sign() {
        s if s < 0 => true,
        0 => b.im.sign() < 0,
        _ => false,
    }
}

/// Complex multiplication with three real multiplications: tv, uw and
/// (t+u)(v+w). All intermediates stay below 2|z1||z2| in magnitude.
pub fn cmul(z1: &MPComplex, z2: &MPComplex, n: u32, meter: &mut CostMeter) -> Result<MPComplex> {
    if conj_flip2(z1, z2) {
        return Ok(cmul_raw(&z1.conj(), &z2.conj(), n, meter)?.conj());
    }
    cmul_raw(z1, z2, n, meter)
}

fn cmul_raw(z1: &MPComplex, z2: &MPComplex, n: u32, meter: &mut CostMeter) -> Result<MPComplex> {
    if z1.is_zero() || z2.is_zero() {
        return Ok(MPComplex::zero());
    }
    // Real scalars that are powers of two are exponent shifts, not
    // multiplications; general real scalars scale componentwise.
    if z1.is_real() && z2.is_real() {
        return Ok(MPComplex::from_real(mul(&z1.re, &z2.re, n, meter)?));
    }
    for (s, z) in [(z1, z2), (z2, z1)] {
        if s.is_real() && s.re.is_pow2() {
            let mut r = z.round_to(n).shift_exp(s.re.exponent() - 1)?;
            if s.re.sign() < 0 {
                r = r.neg();
            }
            return Ok(r);
        }
    }
    let p = n + 4;
    let (t, u) = (z1.re.round_to(p), z1.im.round_to(p));
    let (v, w) = (z2.re.round_to(p), z2.im.round_to(p));
    let p1 = mul(&t, &v, p, meter)?;
    let p2 = mul(&u, &w, p, meter)?;
    let s1 = add(&t, &u, p)?;
    let s2 = add(&v, &w, p)?;
    let p3 = mul(&s1, &s2, p, meter)?;
    let re = sub(&p1, &p2, p)?;
    let im = sub(&sub(&p3, &p1, p)?, &p2, p)?;
    Ok(MPComplex { re: re.round_to(n), im: im.round_to(n) })
}

/// Complex squaring: (v-w)(v+w) + 2ivw, two real multiplications.
pub fn csquare(z: &MPComplex, n: u32, meter: &mut CostMeter) -> Result<MPComplex> {
    if z.im.sign() < 0 {
        return Ok(csquare_raw(&z.conj(), n, meter)?.conj());
    }
    csquare_raw(z, n, meter)
}

fn csquare_raw(z: &MPComplex, n: u32, meter: &mut CostMeter) -> Result<MPComplex> {
    if z.is_zero() {
        return Ok(MPComplex::zero());
    }
    if z.is_real() {
        return Ok(MPComplex::from_real(mul(&z.re, &z.re, n, meter)?));
    }
    if z.re.is_zero() {
        return Ok(MPComplex::new(mul(&z.im, &z.im, n, meter)?.neg(), MPFloat::zero()));
    }
    let p = n + 4;
    let (v, w) = (z.re.round_to(p), z.im.round_to(p));
    let s = mul(&sub(&v, &w, p)?, &add(&v, &w, p)?, p, meter)?;
    let d = mul(&v, &w, p, meter)?;
    Ok(MPComplex { re: s.round_to(n), im: d.shift_exp(1)?.round_to(n) })
}

/// Complex division via (t+iu)/(v+iw) = (v^2+w^2)^{-1} (t+iu)(v-iw): one
/// complex multiplication, four real multiplications and a real reciprocal.
/// With z1 = 1 the complex multiplication drops out (~7 M(n) instead of ~10).
pub fn cdiv(z1: &MPComplex, z2: &MPComplex, n: u32, meter: &mut CostMeter) -> Result<MPComplex> {
    if z2.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if z1.is_zero() {
        return Ok(MPComplex::zero());
    }
    let flip = match z2.im.sign() {
        s if s < 0 => true,
        0 => z1.im.sign() < 0,
        _ => false,
    };
    if flip {
        return Ok(cdiv_raw(&z1.conj(), &z2.conj(), n, meter)?.conj());
    }
    cdiv_raw(z1, z2, n, meter)
}

fn cdiv_raw(z1: &MPComplex, z2: &MPComplex, n: u32, meter: &mut CostMeter) -> Result<MPComplex> {
    if z2.is_real() {
        if z2.re.is_pow2() {
            let mut r = z1.round_to(n).shift_exp(1 - z2.re.exponent())?;
            if z2.re.sign() < 0 {
                r = r.neg();
            }
            return Ok(r);
        }
        let p = n + 6;
        let inv = recip(&z2.re, p, meter)?;
        return Ok(MPComplex {
            re: mul(&z1.re, &inv, p, meter)?.round_to(n),
            im: mul(&z1.im, &inv, p, meter)?.round_to(n),
        });
    }
    let one = MPComplex::one(1);
    let label = if z1 == &one { "crecip" } else { "cdiv" };
    meter.scoped(label, n, |meter| {
        let p = n + 6;
        let den = mag2(&z2.round_to(p), p, meter)?;
        let inv = recip(&den, p, meter)?;
        let num = if z1 == &one { z2.conj() } else { cmul(z1, &z2.conj(), p, meter)? };
        Ok(MPComplex {
            re: mul(&num.re, &inv, p, meter)?.round_to(n),
            im: mul(&num.im, &inv, p, meter)?.round_to(n),
        })
    })
}

/// Principal square root (re > 0, or re = 0 with im >= 0) by the Newton form
/// x <- x + (z - x^2)/(2x): per stage one full-precision complex squaring and
/// one half-precision complex division.
pub fn csqrt(z: &MPComplex, n: u32, meter: &mut CostMeter) -> Result<MPComplex> {
    if z.is_zero() {
        return Ok(MPComplex::zero());
    }
    if z.is_real() && z.re.sign() > 0 {
        return Ok(MPComplex::from_real(sqrt(&z.re, n, meter)?));
    }
    if z.is_real() {
        return Ok(MPComplex::new(MPFloat::zero(), sqrt(&z.re.neg(), n, meter)?));
    }
    if z.im.sign() < 0 {
        // principal branch commutes with conjugation off the cut
        return Ok(csqrt_raw(&z.conj(), n, meter)?.conj());
    }
    csqrt_raw(z, n, meter)
}

fn csqrt_raw(z: &MPComplex, n: u32, meter: &mut CostMeter) -> Result<MPComplex> {
    meter.scoped("csqrt", n, |meter| {
        // scale by 4^-s so the f64 seed sees a moderate modulus
        let e = z.mag_exponent();
        let s = e.div_euclid(2);
        let zs = z.shift_exp(-2 * s)?;
        let (xf, xe) = zs.re.to_f64_parts();
        let (yf, ye) = zs.im.to_f64_parts();
        let x = xf * 2f64.powi(xe as i32);
        let y = yf * 2f64.powi(ye as i32);
        let h = x.hypot(y);
        // y > 0 after the conjugation fold, so the principal root has
        // re > 0, im > 0.
        let (sr, si) = if x >= 0.0 {
            let r = ((h + x) / 2.0).sqrt();
            (r, y / (2.0 * r))
        } else {
            let i = ((h - x) / 2.0).sqrt();
            (y / (2.0 * i), i)
        };
        let mut cur = MPComplex::new(MPFloat::from_f64(sr)?, MPFloat::from_f64(si)?);
        let schedule = crate::basic::newton_schedule(n.max(crate::basic::SEED_BITS), 2);
        for &t in schedule.entries.iter().rev().skip(1) {
            let sq = csquare(&cur, t, meter)?;
            let num = csub(&zs.round_to(t), &sq, t)?;
            let half = t.div_ceil(2) + 8;
            let den = cur.shift_exp(1)?;
            let q = cdiv(&num.round_to(half), &den.round_to(half), half, meter)?;
            cur = cadd(&cur, &q, t)?;
        }
        let mut r = cur.round_to(n).shift_exp(s)?;
        if r.re.sign() < 0 || (r.re.is_zero() && r.im.sign() < 0) {
            r = r.neg();
        }
        Ok(r)
    })
}

/// Complex AGM trace.
#[derive(Clone, Debug)]
pub struct CAGMTrace {
    pub a_seq: Vec<MPComplex>,
    pub b_seq: Vec<MPComplex>,
    pub iterations: usize,
}

impl CAGMTrace {
    pub fn limit(&self) -> &MPComplex {
        self.a_seq.last().expect("nonempty trace")
    }
}

/// Complex AGM with the square-root branch chosen so that
/// |a_{i+1} - b_{i+1}| <= |a_{i+1} + b_{i+1}|; ties break toward
/// im(b/a) >= 0. b0/a0 on the negative real axis is outside the domain.
pub fn cagm(a0: &MPComplex, b0: &MPComplex, n: u32, meter: &mut CostMeter) -> Result<CAGMTrace> {
    if a0.is_zero() || b0.is_zero() {
        return Err(Error::domain("cagm", "inputs must be nonzero"));
    }
    {
        // ratio on the negative real axis <=> cross product zero, dot < 0
        let mut scratch = CostMeter::unmetered();
        let p = 64.max(n / 4);
        let cross = sub(
            &mul(&a0.re, &b0.im, p, &mut scratch)?,
            &mul(&a0.im, &b0.re, p, &mut scratch)?,
            p,
        )?;
        let dot = add(
            &mul(&a0.re, &b0.re, p, &mut scratch)?,
            &mul(&a0.im, &b0.im, p, &mut scratch)?,
            p,
        )?;
        if a0.is_real() && b0.is_real() && cross.is_zero() && dot.sign() < 0 {
            return Err(Error::domain("cagm", "b0/a0 lies on the negative real axis"));
        }
    }
    let mut a = a0.round_to(n);
    let mut b = b0.round_to(n);
    let cap = (a.mag_exponent() - b.mag_exponent()).unsigned_abs() as usize
        + (64 - u64::from(n).leading_zeros() as usize)
        + 8;
    let mut trace = CAGMTrace { a_seq: vec![a.clone()], b_seq: vec![b.clone()], iterations: 0 };
    loop {
        let d = csub(&a, &b, n)?;
        // Iterates carry O(2^-n) individual truncation error, so their
        // difference floors a few bits above 2^-n |a|; stopping at 2^-n+6
        // keeps termination reachable. Callers pad n accordingly.
        if d.is_zero() || d.mag_exponent() <= a.mag_exponent() - (n as i64) + 6 {
            return Ok(trace);
        }
        if trace.iterations >= cap {
            return Err(Error::Convergence { method: "cagm", iterations: cap, trail: Vec::new() });
        }
        let next_a = cadd(&a, &b, n)?.shift_exp(-1)?;
        let prod = cmul(&a, &b, n, meter)?;
        let root = csqrt(&prod, n, meter)?;
        let next_b = pick_branch(&next_a, &root, n, meter)?;
        a = next_a;
        b = next_b;
        trace.a_seq.push(a.clone());
        trace.b_seq.push(b.clone());
        trace.iterations += 1;
    }
}

fn pick_branch(
    next_a: &MPComplex,
    root: &MPComplex,
    n: u32,
    meter: &mut CostMeter,
) -> Result<MPComplex> {
    let p = 64.max(n / 8);
    let d = csub(next_a, root, p)?;
    let s = cadd(next_a, root, p)?;
    let md = mag2(&d, p, meter)?;
    let ms = mag2(&s, p, meter)?;
    match md.cmp_abs(&ms) {
        std::cmp::Ordering::Less => Ok(root.clone()),
        std::cmp::Ordering::Greater => Ok(root.neg()),
        std::cmp::Ordering::Equal => {
            // tie: prefer im(b/a) >= 0, i.e. im(b * conj(a)) >= 0
            let cross = sub(
                &mul(&root.im, &next_a.re, p, meter)?,
                &mul(&root.re, &next_a.im, p, meter)?,
                p,
            )?;
            Ok(if cross.sign() < 0 { root.neg() } else { root.clone() })
        }
    }
}

/// Principal complex logarithm, imaginary part in (-pi, pi].
pub fn clog(z: &MPComplex, n: u32, meter: &mut CostMeter) -> Result<MPComplex> {
    meter.scoped("clog", n, |m| clog_inner(z, n, m))
}

fn ceil_log2(n: u32) -> u32 {
    32 - n.saturating_sub(1).leading_zeros()
}

pub(crate) fn clog_inner(z: &MPComplex, n: u32, meter: &mut CostMeter) -> Result<MPComplex> {
    if z.is_zero() {
        return Err(Error::domain("clog", "argument must be nonzero"));
    }
    let n = n.max(8);
    if z.is_real() {
        if z.re.sign() > 0 {
            return Ok(MPComplex::from_real(crate::elem::mp_log_inner(&z.re, n, meter)?));
        }
        // negative real axis: log|z| + i pi
        let re = crate::elem::mp_log_inner(&z.re.neg(), n, meter)?;
        return Ok(MPComplex::new(re, ConstantCache::global().pi(n)));
    }
    if z.im.sign() < 0 {
        return Ok(clog_inner(&z.conj(), n, meter)?.conj());
    }
    // near 1: series branch keeps small results relatively accurate
    let w = csub(z, &MPComplex::one(1), z.re.precision().max(n) + 4)?;
    let cut = -((n / ceil_log2(n).max(1)) as i64);
    if !w.is_zero() && w.mag_exponent() <= cut {
        return clog1p_series(&w, n, meter);
    }
    let nw = n + (n / ceil_log2(n).max(1)) + 32;
    let k = ((nw as i64) + 1) / 2 + 1 - z.mag_exponent();
    let y = z.shift_exp(k)?;
    let four = MPComplex::from_real(MPFloat::from_u64(4));
    let b0 = cdiv(&four, &y, nw, meter)?;
    let trace = cagm(&MPComplex::one(nw), &b0, nw, meter)?;
    let pi = MPComplex::from_real(ConstantCache::global().pi(nw));
    let log_y = cdiv(&pi, &trace.limit().shift_exp(1)?, nw, meter)?;
    let ln2 = ConstantCache::global().ln2(nw + 64);
    let shift = mul_u64(&ln2, k.unsigned_abs(), nw + 64)?;
    let re = if k >= 0 { sub(&log_y.re, &shift, nw)? } else { add(&log_y.re, &shift, nw)? };
    Ok(MPComplex::new(re.round_to(n), log_y.im.round_to(n)))
}

/// log(1+w) as an alternating complex series, |w| below 2^(-n/log2 n).
fn clog1p_series(w: &MPComplex, n: u32, meter: &mut CostMeter) -> Result<MPComplex> {
    let nw = n + 32;
    let mut sum = w.round_to(nw);
    let mut pow = sum.clone();
    let stop = w.mag_exponent() - n as i64 - 8;
    for j in 2u64.. {
        pow = cmul(&pow, w, nw, meter)?;
        if pow.is_zero() || pow.mag_exponent() < stop {
            break;
        }
        let term = MPComplex::new(div_u64(&pow.re, j, nw)?, div_u64(&pow.im, j, nw)?);
        sum = if j % 2 == 0 { csub(&sum, &term, nw)? } else { cadd(&sum, &term, nw)? };
    }
    Ok(sum.round_to(n))
}

/// Complex exponential by inverting clog with the fourth-order Taylor step,
/// after reducing the real part by ln 2 and the imaginary part by 2 pi.
pub fn cexp(z: &MPComplex, n: u32, meter: &mut CostMeter) -> Result<MPComplex> {
    meter.scoped("cexp", n, |m| cexp_inner(z, n, m))
}

pub(crate) fn cexp_inner(z: &MPComplex, n: u32, meter: &mut CostMeter) -> Result<MPComplex> {
    let n = n.max(8);
    if z.is_zero() {
        return Ok(MPComplex::one(n));
    }
    if z.re.exponent() > 44 || z.im.exponent() > 44 {
        return Err(Error::range("cexp", "component magnitude exceeds 2^44"));
    }
    let nw = work_bits(n);
    let wide = nw + 64 + z.mag_exponent().max(0) as u32;

    // real part: x = r + m ln2, r in [0, ln2)
    let ln2 = ConstantCache::global().ln2(wide);
    let mut m = (z.re.to_f64() / std::f64::consts::LN_2).floor() as i64;
    let r = loop {
        let shift = mul_u64(&ln2, m.unsigned_abs(), wide)?;
        let r = if m >= 0 {
            sub(&z.re.round_to(wide), &shift, wide)?
        } else {
            add(&z.re.round_to(wide), &shift, wide)?
        };
        if r.sign() < 0 {
            m -= 1;
        } else if r.cmp_abs(&ln2) != std::cmp::Ordering::Less {
            m += 1;
        } else {
            break r;
        }
    };

    // imaginary part reduced into (-pi, pi]
    let two_pi = ConstantCache::global().pi(wide).shift_exp(1)?;
    let mut q = (z.im.to_f64() / (2.0 * std::f64::consts::PI)).round() as i64;
    let theta = loop {
        let shift = mul_u64(&two_pi, q.unsigned_abs(), wide)?;
        let t = if q >= 0 {
            sub(&z.im.round_to(wide), &shift, wide)?
        } else {
            add(&z.im.round_to(wide), &shift, wide)?
        };
        let half_pi_cmp = t.cmp_abs(&two_pi.shift_exp(-1)?);
        if half_pi_cmp == std::cmp::Ordering::Greater {
            q += t.sign() as i64;
        } else if t.sign() < 0 && half_pi_cmp == std::cmp::Ordering::Equal {
            q -= 1; // land on +pi, not -pi
        } else {
            break t;
        }
    };

    let target = MPComplex::new(r, theta);
    let seed_r = target.re.to_f64().exp();
    let seed_t = target.im.to_f64();
    let mut y = MPComplex::new(
        MPFloat::from_f64(seed_r * seed_t.cos())?,
        MPFloat::from_f64(seed_r * seed_t.sin())?,
    );
    for &t in taylor_ladder(nw).iter() {
        let logy = clog_inner(&y, t + 8, meter)?;
        let u = csub(&target.round_to(t + 8), &logy, t + 8)?;
        let mut sum = cadd(&MPComplex::one(t + 8), &u, t + 8)?;
        let mut pow = u.clone();
        let mut fact = 1u64;
        for j in 2..=4u64 {
            pow = cmul(&pow, &u, t + 8, meter)?;
            fact *= j;
            let term = MPComplex::new(div_u64(&pow.re, fact, t + 8)?, div_u64(&pow.im, fact, t + 8)?);
            sum = cadd(&sum, &term, t + 8)?;
        }
        y = cmul(&y, &sum, t + 8, meter)?;
    }
    y.round_to(n).shift_exp(m)
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

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrigKind {
    Artan,
    Sin,
    Cos,
}

impl TrigKind {
    fn label(&self) -> &'static str {
        match self {
            TrigKind::Artan => "artan",
            TrigKind::Sin => "sin",
            TrigKind::Cos => "cos",
        }
    }
}

/// artan(x) = im(log(1+ix)); sin and cos are the components of exp(ix).
/// Very small arguments use the power series to keep the relative error
/// small, mirroring the log(1+delta) rule.
pub fn trig(kind: TrigKind, x: &MPFloat, n: u32, meter: &mut CostMeter) -> Result<MPFloat> {
    meter.scoped(kind.label(), n, |meter| {
        let n = n.max(8);
        // odd/even symmetry folded first so f(-x) = +-f(x) holds bit for bit
        let neg = x.sign() < 0;
        let ax = x.abs();
        let cut = -((n / ceil_log2(n).max(1)) as i64);
        let small = ax.is_zero() || ax.exponent() <= cut;
        let mag = match kind {
            TrigKind::Artan => {
                if small {
                    odd_series(&ax, n, meter, false)?
                } else {
                    let extra = 10 + 2 * (64 - ax.exponent().unsigned_abs().max(1).leading_zeros());
                    let z = MPComplex::new(MPFloat::one(1), ax.clone());
                    clog_inner(&z, n + extra, meter)?.im.round_to(n)
                }
            }
            TrigKind::Sin | TrigKind::Cos => {
                if small {
                    if kind == TrigKind::Sin {
                        odd_series(&ax, n, meter, true)?
                    } else {
                        cos_series(&ax, n, meter)?
                    }
                } else {
                    if ax.exponent() > 1 << 20 {
                        return Err(Error::range("trig", "argument exponent exceeds 2^20"));
                    }
                    let nw = work_bits(n) + ax.exponent().max(0) as u32;
                    let two_pi = ConstantCache::global().pi(nw).shift_exp(1)?;
                    let mut q = (ax.to_f64() / (2.0 * std::f64::consts::PI)).floor() as i64;
                    let theta = loop {
                        let shift = mul_u64(&two_pi, q.unsigned_abs(), nw)?;
                        let t = if q >= 0 {
                            sub(&ax.round_to(nw), &shift, nw)?
                        } else {
                            add(&ax.round_to(nw), &shift, nw)?
                        };
                        if t.sign() < 0 {
                            q -= 1;
                        } else if t.cmp_abs(&two_pi) != std::cmp::Ordering::Less {
                            q += 1;
                        } else {
                            break t;
                        }
                    };
                    let w = cexp_inner(&MPComplex::new(MPFloat::zero(), theta), n + 10, meter)?;
                    match kind {
                        TrigKind::Sin => w.im.round_to(n),
                        _ => w.re.round_to(n),
                    }
                }
            }
        };
        Ok(match kind {
            TrigKind::Cos => mag, // even
            _ => {
                if neg {
                    mag.neg()
                } else {
                    mag
                }
            }
        })
    })
}

/// artan (alternate = false): x - x^3/3 + x^5/5 - ...
/// sin (alternate = true): x - x^3/3! + x^5/5! - ...
fn odd_series(x: &MPFloat, n: u32, meter: &mut CostMeter, factorial: bool) -> Result<MPFloat> {
    if x.is_zero() {
        return Ok(MPFloat::zero());
    }
    let nw = n + 32;
    let x2 = mul(x, x, nw, meter)?;
    let mut sum = x.round_to(nw);
    let mut pow = sum.clone();
    let stop = x.exponent() - n as i64 - 8;
    let mut j = 1u64;
    loop {
        pow = mul(&pow, &x2, nw, meter)?;
        if pow.is_zero() || pow.exponent() < stop {
            break;
        }
        j += 2;
        let term = if factorial {
            // divide by (j-1)*j incrementally to build x^j / j!
            pow = div_u64(&pow, (j - 1) * j, nw)?;
            pow.clone()
        } else {
            div_u64(&pow, j, nw)?
        };
        sum = if (j / 2) % 2 == 1 { sub(&sum, &term, nw)? } else { add(&sum, &term, nw)? };
    }
    Ok(sum.round_to(n))
}

fn cos_series(x: &MPFloat, n: u32, meter: &mut CostMeter) -> Result<MPFloat> {
    let nw = n + 32;
    let one = MPFloat::one(nw);
    if x.is_zero() {
        return Ok(MPFloat::one(n));
    }
    let x2 = mul(x, x, nw, meter)?;
    let mut sum = one.clone();
    let mut pow = one;
    let stop = -(n as i64) - 8;
    let mut j = 0u64;
    loop {
        pow = mul(&pow, &x2, nw, meter)?;
        j += 2;
        pow = div_u64(&pow, (j - 1) * j, nw)?;
        if pow.is_zero() || pow.exponent() < stop {
            break;
        }
        sum = if (j / 2) % 2 == 1 { sub(&sum, &pow, nw)? } else { add(&sum, &pow, nw)? };
    }
    Ok(sum.round_to(n))
}

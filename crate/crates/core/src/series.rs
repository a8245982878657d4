//! Truncated formal power series. Arithmetic is exact modulo x^n (result
//! coefficient j depends only on input coefficients 0..j); the coefficient
//! field is pluggable: configurable-precision binary floats for the cost
//! instrumentation, exact rationals for the doubling-exactness checks.
//!
//! The scalar-operation counter bumps once per coefficient multiplication;
//! on the FFT path it counts modular multiplications instead, so ratios are
//! only meaningful within one path.

use crate::error::{Error, Result};
use crate::float::MPFloat;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cell::RefCell;
use std::fmt::Debug;

/// Coefficient field abstraction.
pub trait CoeffField {
    type Elem: Clone + PartialEq + Debug;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_i64(&self, v: i64) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Result<Self::Elem>;
    fn mul_int(&self, a: &Self::Elem, k: u64) -> Self::Elem;
    fn div_int(&self, a: &Self::Elem, k: u64) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn to_f64(&self, a: &Self::Elem) -> f64;
    /// Exact-convolution fast path; None when the field has none (or the
    /// precision exceeds what the three-prime CRT can certify).
    fn fft_convolve(&self, _a: &[Self::Elem], _b: &[Self::Elem]) -> Option<(Vec<Self::Elem>, u64)> {
        None
    }
}

/// Binary floating-point coefficients at a fixed precision (default 53).
#[derive(Clone, Copy, Debug)]
pub struct FloatField {
    pub precision: u32,
}

impl Default for FloatField {
    fn default() -> Self {
        FloatField { precision: 53 }
    }
}

thread_local! {
    static SCRATCH: RefCell<crate::meter::CostMeter> =
        RefCell::new(crate::meter::CostMeter::unmetered());
}

fn fmul(a: &MPFloat, b: &MPFloat, n: u32) -> MPFloat {
    SCRATCH.with(|m| crate::float::mul(a, b, n, &mut m.borrow_mut()).expect("finite coeff mul"))
}

impl CoeffField for FloatField {
    type Elem = MPFloat;
    fn zero(&self) -> MPFloat {
        MPFloat::zero()
    }
    fn one(&self) -> MPFloat {
        MPFloat::one(self.precision)
    }
    fn from_i64(&self, v: i64) -> MPFloat {
        MPFloat::from_i64(v).round_to(self.precision)
    }
    fn add(&self, a: &MPFloat, b: &MPFloat) -> MPFloat {
        crate::float::add(a, b, self.precision).expect("coeff add")
    }
    fn sub(&self, a: &MPFloat, b: &MPFloat) -> MPFloat {
        crate::float::sub(a, b, self.precision).expect("coeff sub")
    }
    fn neg(&self, a: &MPFloat) -> MPFloat {
        a.neg()
    }
    fn mul(&self, a: &MPFloat, b: &MPFloat) -> MPFloat {
        fmul(a, b, self.precision)
    }
    fn inv(&self, a: &MPFloat) -> Result<MPFloat> {
        SCRATCH.with(|m| crate::basic::recip(a, self.precision, &mut m.borrow_mut()))
    }
    fn mul_int(&self, a: &MPFloat, k: u64) -> MPFloat {
        crate::float::mul_u64(a, k, self.precision).expect("coeff mul_int")
    }
    fn div_int(&self, a: &MPFloat, k: u64) -> MPFloat {
        crate::float::div_u64(a, k, self.precision).expect("coeff div_int")
    }
    fn is_zero(&self, a: &MPFloat) -> bool {
        a.is_zero()
    }
    fn to_f64(&self, a: &MPFloat) -> f64 {
        a.to_f64()
    }

    fn fft_convolve(&self, a: &[MPFloat], b: &[MPFloat]) -> Option<(Vec<MPFloat>, u64)> {
        let out_len = a.len() + b.len() - 1;
        let log = 64 - (out_len as u64).leading_zeros();
        // per-coefficient images up to 2^(s+1); products summed over out_len
        // terms must stay within the signed CRT range
        let s = (self.precision + 8).min((250 - log) / 2);
        if s < self.precision {
            return None; // precision too high for exact CRT transport
        }
        let scale_exp = |v: &[MPFloat]| -> i64 {
            v.iter().filter(|c| !c.is_zero()).map(|c| c.exponent()).max().unwrap_or(0)
        };
        let ea = scale_exp(a);
        let eb = scale_exp(b);
        let sa = s as i64 - ea;
        let sb = s as i64 - eb;
        let img = |v: &[MPFloat], sh: i64| -> Vec<i128> {
            v.iter().map(|c| c.trunc_i128_scaled(sh)).collect()
        };
        let (conv, cost) = crate::float::ntt::convolve_signed(&img(a, sa), &img(b, sb));
        let back = conv
            .into_iter()
            .map(|v| {
                let neg = v < 0;
                let m = MPFloat::from_u128(v.unsigned_abs());
                let m = m
                    .shift_exp(-(sa + sb))
                    .expect("rescale")
                    .round_to(self.precision);
                if neg {
                    m.neg()
                } else {
                    m
                }
            })
            .collect();
        Some((back, cost))
    }
}

/// Exact rational coefficients.
#[derive(Clone, Copy, Debug, Default)]
pub struct RationalField;

impl CoeffField for RationalField {
    type Elem = BigRational;
    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn from_i64(&self, v: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(v))
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Result<BigRational> {
        if a.is_zero() {
            return Err(Error::NonUnit);
        }
        Ok(a.recip())
    }
    fn mul_int(&self, a: &BigRational, k: u64) -> BigRational {
        a * BigRational::from_integer(BigInt::from(k))
    }
    fn div_int(&self, a: &BigRational, k: u64) -> BigRational {
        a / BigRational::from_integer(BigInt::from(k))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn to_f64(&self, a: &BigRational) -> f64 {
        let num = a.numer();
        let den = a.denom();
        let fnum: f64 = num.to_string().parse().unwrap_or(f64::NAN);
        let fden: f64 = den.to_string().parse().unwrap_or(f64::NAN);
        if a.is_negative() {
            -(fnum.abs() / fden.abs())
        } else {
            fnum.abs() / fden.abs()
        }
    }
}

/// Truncated series: coefficients a_0..a_{n-1}, representing the ring of
/// power series modulo x^n.
#[derive(Clone, Debug)]
pub struct Series<F: CoeffField> {
    pub coeffs: Vec<F::Elem>,
}

impl<F: CoeffField> PartialEq for Series<F> {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl<F: CoeffField> Series<F> {
    pub fn order(&self) -> usize {
        self.coeffs.len()
    }
    pub fn coeff(&self, j: usize) -> &F::Elem {
        &self.coeffs[j]
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MulPath {
    Classical,
    Fft,
}

/// One computation context: field, multiplication path, scalar-op counter.
/// Counters are per context and not shareable across concurrent runs.
pub struct PsCtx<F: CoeffField> {
    pub field: F,
    pub path: MulPath,
    pub mults: u64,
}

impl<F: CoeffField> PsCtx<F> {
    pub fn new(field: F, path: MulPath) -> Self {
        PsCtx { field, path, mults: 0 }
    }

    pub fn series(&self, coeffs: Vec<F::Elem>, n: usize) -> Series<F> {
        let mut coeffs = coeffs;
        coeffs.resize(n, self.field.zero());
        Series { coeffs }
    }

    pub fn from_i64s(&self, v: &[i64], n: usize) -> Series<F> {
        self.series(v.iter().map(|&c| self.field.from_i64(c)).collect(), n)
    }

    pub fn zero_series(&self, n: usize) -> Series<F> {
        self.series(Vec::new(), n)
    }

    pub fn one_series(&self, n: usize) -> Series<F> {
        self.series(vec![self.field.one()], n)
    }

    /// First n coefficients as an order-n series (zero padded).
    pub fn truncated(&self, p: &Series<F>, n: usize) -> Series<F> {
        self.series(p.coeffs.iter().take(n).cloned().collect(), n)
    }

    /// First n coefficients of the product A*B.
    pub fn mul(&mut self, a: &Series<F>, b: &Series<F>, n: usize) -> Series<F> {
        if n == 0 || a.coeffs.is_empty() || b.coeffs.is_empty() {
            return self.zero_series(n);
        }
        match self.path {
            MulPath::Fft => {
                let la = a.coeffs.len().min(n);
                let lb = b.coeffs.len().min(n);
                if let Some((conv, cost)) =
                    self.field.fft_convolve(&a.coeffs[..la], &b.coeffs[..lb])
                {
                    self.mults += cost;
                    return self.series(conv.into_iter().take(n).collect(), n);
                }
                self.mul_classical(a, b, n)
            }
            MulPath::Classical => self.mul_classical(a, b, n),
        }
    }

    fn mul_classical(&mut self, a: &Series<F>, b: &Series<F>, n: usize) -> Series<F> {
        let la = a.coeffs.len().min(n);
        let lb = b.coeffs.len().min(n);
        let mut out = vec![self.field.zero(); n];
        for i in 0..la {
            for j in 0..lb.min(n - i) {
                let p = self.field.mul(&a.coeffs[i], &b.coeffs[j]);
                self.mults += 1;
                out[i + j] = self.field.add(&out[i + j], &p);
            }
        }
        Series { coeffs: out }
    }

    /// Reciprocal by Newton doubling; requires a nonzero constant term.
    /// Per stage: one full-length product and one half-length correction,
    /// using only the upper half of P*X - 1.
    pub fn recip(&mut self, p: &Series<F>, n: usize) -> Result<Series<F>> {
        if p.coeffs.is_empty() || self.field.is_zero(&p.coeffs[0]) {
            return Err(Error::NonUnit);
        }
        let x0 = self.field.inv(&p.coeffs[0])?;
        self.mults += 1;
        let mut x = self.series(vec![x0], 1);
        let mut m = 1usize;
        while m < n {
            let m2 = (2 * m).min(n);
            let t = self.mul(&self.truncated(p, m2), &x, m2);
            // e = P*X - 1 vanishes below x^m; take its upper slice
            let upper: Vec<F::Elem> = t.coeffs[m..m2].to_vec();
            let e = self.series(upper, m2 - m);
            let delta = self.mul(&e, &x, m2 - m);
            let mut coeffs = x.coeffs;
            coeffs.resize(m2, self.field.zero());
            for (j, d) in delta.coeffs.iter().enumerate() {
                coeffs[m + j] = self.field.neg(d);
            }
            x = Series { coeffs };
            m = m2;
        }
        Ok(self.truncated(&x, n))
    }

    /// Formal derivative: coefficient j-1 of the result is j a_j.
    pub fn diff(&mut self, p: &Series<F>) -> Series<F> {
        if p.coeffs.len() <= 1 {
            return self.zero_series(p.coeffs.len().saturating_sub(1));
        }
        let coeffs = p
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, a)| {
                self.mults += 1;
                self.field.mul_int(a, j as u64)
            })
            .collect();
        Series { coeffs }
    }

    /// Formal integral with zero constant term: coefficient j+1 is a_j/(j+1).
    pub fn integrate(&mut self, p: &Series<F>) -> Series<F> {
        let mut coeffs = vec![self.field.zero()];
        for (j, a) in p.coeffs.iter().enumerate() {
            self.mults += 1;
            coeffs.push(self.field.div_int(a, j as u64 + 1));
        }
        Series { coeffs }
    }

    /// log(P) for P with constant term 1: integrate(P'/P).
    pub fn log(&mut self, p: &Series<F>, n: usize) -> Result<Series<F>> {
        if p.coeffs.is_empty() || p.coeffs[0] != self.field.one() {
            return Err(Error::Normalization { op: "ps_log", expected: "1" });
        }
        if n <= 1 {
            return Ok(self.zero_series(n));
        }
        let d = self.diff(&self.truncated(p, n));
        let r = self.recip(p, n - 1)?;
        let q = self.mul(&d, &r, n - 1);
        let mut out = self.integrate(&q);
        out.coeffs.truncate(n);
        Ok(self.series(out.coeffs, n))
    }

    /// exp(P) for P with zero constant term, by the Newton iteration
    /// R <- R - R (log R - P), doubling the truncation order per stage; the
    /// correction multiply runs at half length via the upper slice of
    /// log(R) - P.
    pub fn exp(&mut self, p: &Series<F>, n: usize) -> Result<Series<F>> {
        if !p.coeffs.is_empty() && !self.field.is_zero(&p.coeffs[0]) {
            return Err(Error::Normalization { op: "ps_exp", expected: "0" });
        }
        let mut r = self.one_series(1);
        let mut m = 1usize;
        while m < n {
            let m2 = (2 * m).min(n);
            let lr = self.log(&self.series(r.coeffs.clone(), m2), m2)?;
            let e_full = self.sub_series(&lr, &self.truncated(p, m2));
            let upper: Vec<F::Elem> = e_full.coeffs[m..m2].to_vec();
            let e = self.series(upper, m2 - m);
            let delta = self.mul(&e, &r, m2 - m);
            let mut coeffs = r.coeffs;
            coeffs.resize(m2, self.field.zero());
            for (j, d) in delta.coeffs.iter().enumerate() {
                coeffs[m + j] = self.field.sub(&coeffs[m + j], d);
            }
            r = Series { coeffs };
            m = m2;
        }
        Ok(self.truncated(&r, n))
    }

    /// Fourth-order exp variant: R <- R (1 + e + e^2/2 + e^3/6) with
    /// e = P - log R, quadrupling the correct order per stage. Cheaper in
    /// multiplications than the default doubling iteration (fewer log
    /// evaluations); kept behind its own entry point for comparison rather
    /// than as the default.
    pub fn exp_fourth_order(&mut self, p: &Series<F>, n: usize) -> Result<Series<F>> {
        if !p.coeffs.is_empty() && !self.field.is_zero(&p.coeffs[0]) {
            return Err(Error::Normalization { op: "ps_exp", expected: "0" });
        }
        let mut r = self.one_series(1);
        let mut m = 1usize;
        while m < n {
            let m2 = (4 * m).min(n);
            let lr = self.log(&self.series(r.coeffs.clone(), m2), m2)?;
            let e = self.sub_series(&self.truncated(p, m2), &lr);
            // e = x^m e_hat: square and cube shrink to half- and
            // quarter-length products of the upper slice
            let ehat = self.series(e.coeffs[m.min(e.coeffs.len())..].to_vec(), m2 - m);
            let mut sum = self.add_series(&self.one_series(m2), &e);
            if 2 * m < m2 {
                let e2 = self.mul(&ehat, &ehat, m2 - 2 * m);
                let mut half = vec![self.field.zero(); 2 * m];
                for c in e2.coeffs.iter() {
                    self.mults += 1;
                    half.push(self.field.div_int(c, 2));
                }
                sum = self.add_series(&sum, &Series { coeffs: half });
                if 3 * m < m2 {
                    let e3 = self.mul(&e2, &ehat, m2 - 3 * m);
                    let mut sixth = vec![self.field.zero(); 3 * m];
                    for c in e3.coeffs.iter() {
                        self.mults += 1;
                        sixth.push(self.field.div_int(c, 6));
                    }
                    sum = self.add_series(&sum, &Series { coeffs: sixth });
                }
            }
            r = self.mul(&self.series(r.coeffs.clone(), m2), &sum, m2);
            m = m2;
        }
        Ok(self.truncated(&r, n))
    }

    pub fn add_series(&self, a: &Series<F>, b: &Series<F>) -> Series<F> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.field.zero();
        let coeffs = (0..n)
            .map(|j| {
                let x = a.coeffs.get(j).unwrap_or(&z);
                let y = b.coeffs.get(j).unwrap_or(&z);
                self.field.add(x, y)
            })
            .collect();
        Series { coeffs }
    }

    pub fn sub_series(&self, a: &Series<F>, b: &Series<F>) -> Series<F> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let z = self.field.zero();
        let coeffs = (0..n)
            .map(|j| {
                let x = a.coeffs.get(j).unwrap_or(&z);
                let y = b.coeffs.get(j).unwrap_or(&z);
                self.field.sub(x, y)
            })
            .collect();
        Series { coeffs }
    }

    fn scale(&mut self, p: &Series<F>, s: &F::Elem) -> Series<F> {
        let coeffs = p
            .coeffs
            .iter()
            .map(|c| {
                self.mults += 1;
                self.field.mul(c, s)
            })
            .collect();
        Series { coeffs }
    }

    /// P^m via exp(m log P). A zero constant term factors out powers of x; a
    /// nonunit constant term factors out the scalar a_0^m (binary powering).
    /// The series work is independent of m.
    pub fn pow(&mut self, p: &Series<F>, m: u64, n: usize) -> Result<Series<F>> {
        if m == 0 {
            if p.coeffs.iter().all(|c| self.field.is_zero(c)) {
                return Err(Error::ZeroSeriesPow);
            }
            return Ok(self.one_series(n));
        }
        if n == 0 {
            return Ok(self.zero_series(0));
        }
        // factor out x^v
        let v = p.coeffs.iter().position(|c| !self.field.is_zero(c));
        let Some(v) = v else {
            return Ok(self.zero_series(n)); // 0^m = 0 for m >= 1
        };
        let shift = (v as u64).saturating_mul(m);
        if shift >= n as u64 {
            return Ok(self.zero_series(n));
        }
        let shift = shift as usize;
        let q = self.series(p.coeffs[v..].to_vec(), n - shift);
        // factor out a_0^m
        let a0 = q.coeffs[0].clone();
        let unit = a0 == self.field.one();
        let (normalized, scale_back) = if unit {
            (q, None)
        } else {
            let inv = self.field.inv(&a0)?;
            self.mults += 1;
            let normalized = self.scale(&q, &inv);
            // a0^m by binary powering of the scalar
            let mut acc = self.field.one();
            let mut base = a0;
            let mut e = m;
            while e > 0 {
                if e & 1 == 1 {
                    acc = self.field.mul(&acc, &base);
                    self.mults += 1;
                }
                base = self.field.mul(&base, &base);
                self.mults += 1;
                e >>= 1;
            }
            (normalized, Some(acc))
        };
        let lg = self.log(&normalized, n - shift)?;
        let scalar_m = self.field.from_i64(m as i64);
        let scaled = self.scale(&lg, &scalar_m);
        let mut result = self.exp(&scaled, n - shift)?;
        if let Some(s) = scale_back {
            result = self.scale(&result, &s);
        }
        if shift > 0 {
            let mut coeffs = vec![self.field.zero(); shift];
            coeffs.extend(result.coeffs);
            coeffs.truncate(n);
            return Ok(Series { coeffs });
        }
        Ok(result)
    }

    /// artan(P) for P with zero constant term: integrate(P' / (1 + P^2)).
    pub fn atan(&mut self, p: &Series<F>, n: usize) -> Result<Series<F>> {
        if !p.coeffs.is_empty() && !self.field.is_zero(&p.coeffs[0]) {
            return Err(Error::Normalization { op: "ps_atan", expected: "0" });
        }
        if n <= 1 {
            return Ok(self.zero_series(n));
        }
        let d = self.diff(&self.truncated(p, n));
        let p2 = self.mul(p, p, n - 1);
        let den = self.add_series(&self.one_series(n - 1), &p2);
        let r = self.recip(&den, n - 1)?;
        let q = self.mul(&d, &r, n - 1);
        let mut out = self.integrate(&q);
        out.coeffs.truncate(n);
        Ok(self.series(out.coeffs, n))
    }
}

impl Series<FloatField> {
    /// Text format: one coefficient per line, index-prefixed.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (j, c) in self.coeffs.iter().enumerate() {
            let s = c.to_decimal_round_trip().unwrap_or_else(|_| "0".into());
            out.push_str(&format!("{j} {s}\n"));
        }
        out
    }

    pub fn parse_text(text: &str, field: &FloatField) -> Result<Series<FloatField>> {
        let mut coeffs: Vec<(usize, MPFloat)> = Vec::new();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (idx, val) = line
                .split_once(char::is_whitespace)
                .ok_or_else(|| Error::Parse(format!("series line needs 'index value': {line:?}")))?;
            let j: usize = idx
                .parse()
                .map_err(|_| Error::Parse(format!("bad series index: {idx:?}")))?;
            coeffs.push((j, MPFloat::parse_decimal(val.trim(), field.precision)?));
        }
        let n = coeffs.iter().map(|&(j, _)| j + 1).max().unwrap_or(0);
        let mut out = vec![MPFloat::zero(); n];
        for (j, v) in coeffs {
            out[j] = v;
        }
        Ok(Series { coeffs: out })
    }
}

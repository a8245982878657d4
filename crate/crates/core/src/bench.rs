//! Cost-ratio measurement suites. Operation counts are deterministic for a
//! fixed backend and size; wall times are not and ride along for reference.

use crate::basic;
use crate::calib::pseudo_random_value;
use crate::complex::{cdiv, MPComplex};
use crate::elem::{compute_pi, mp_log, ConstantCache};
use crate::error::Result;
use crate::meter::{meter_report, Backend, CostMeter};
use crate::series::{FloatField, MulPath, PsCtx};
use crate::MPFloat;
use std::time::Instant;

#[derive(Clone, Debug)]
pub struct BenchRecord {
    pub op: String,
    pub n_bits: u32,
    pub backend: String,
    pub ratio_to_mul: f64,
    pub wall_ns: u128,
}

impl BenchRecord {
    pub fn csv_header() -> &'static str {
        "op,n_bits,backend,ratio_to_mul,wall_ns"
    }
    pub fn to_csv(&self) -> String {
        format!("{},{},{},{:.6},{}", self.op, self.n_bits, self.backend, self.ratio_to_mul, self.wall_ns)
    }
    pub fn to_jsonl(&self) -> String {
        format!(
            "{{\"op\":\"{}\",\"n_bits\":{},\"backend\":\"{}\",\"ratio_to_mul\":{:.6},\"wall_ns\":{}}}",
            self.op, self.n_bits, self.backend, self.ratio_to_mul, self.wall_ns
        )
    }
}

fn row_ratio(meter: &CostMeter, label: &str) -> Result<f64> {
    let rep = meter_report(meter)?;
    Ok(rep
        .rows
        .iter()
        .find(|r| r.label == label)
        .map(|r| r.ratio_to_mul)
        .unwrap_or(f64::NAN))
}

fn push_op(
    records: &mut Vec<BenchRecord>,
    backend: Backend,
    label: &str,
    n: u32,
    run: impl FnOnce(&mut CostMeter) -> Result<()>,
) -> Result<()> {
    let mut meter = CostMeter::new(backend);
    let t0 = Instant::now();
    run(&mut meter)?;
    let wall = t0.elapsed().as_nanos();
    records.push(BenchRecord {
        op: label.to_string(),
        n_bits: n,
        backend: backend.name().to_string(),
        ratio_to_mul: row_ratio(&meter, label)?,
        wall_ns: wall,
    });
    Ok(())
}

/// Basic operations (recip, div, inv_sqrt, sqrt, cdiv, crecip) plus a fixed
/// secant solve whose evaluation trace backs the plain output.
pub fn basic_suite(sizes: &[u32], backend: Backend) -> Result<Vec<BenchRecord>> {
    let mut records = Vec::new();
    for &n in sizes {
        let a = pseudo_random_value(n, 0x5eed_0b01);
        let b = pseudo_random_value(n, 0x5eed_0b02);
        push_op(&mut records, backend, "recip", n, |m| basic::recip(&a, n, m).map(drop))?;
        push_op(&mut records, backend, "div", n, |m| basic::div(&b, &a, n, m).map(drop))?;
        push_op(&mut records, backend, "inv_sqrt", n, |m| basic::inv_sqrt(&a, n, m).map(drop))?;
        push_op(&mut records, backend, "sqrt", n, |m| basic::sqrt(&a, n, m).map(drop))?;
        let z1 = MPComplex::new(pseudo_random_value(n, 3), pseudo_random_value(n, 4));
        let z2 = MPComplex::new(pseudo_random_value(n, 5), pseudo_random_value(n, 6));
        push_op(&mut records, backend, "cdiv", n, |m| cdiv(&z1, &z2, n, m).map(drop))?;
        let one = MPComplex::one(n);
        push_op(&mut records, backend, "crecip", n, |m| cdiv(&one, &z2, n, m).map(drop))?;
    }
    records.sort_by(|a, b| (&a.op, a.n_bits).cmp(&(&b.op, b.n_bits)));
    Ok(records)
}

/// The fixed solver demo whose line trace accompanies the basic suite.
pub fn secant_demo() -> Result<(crate::zero::SolverReport, f64)> {
    let two = MPFloat::from_u64(2);
    let alpha = 1.0;
    let mut f = crate::zero::FunctionOracle::new(alpha, move |x, m| {
        let mut sc = CostMeter::unmetered();
        let p = m + 80;
        let x2 = crate::mul(&x.round_to(p), &x.round_to(p), p, &mut sc)?;
        crate::sub(&x2, &two, p)
    });
    let report = crate::zero::secant(&mut f, &MPFloat::one(64), &MPFloat::from_u64(2), 1024)?;
    Ok((report, alpha))
}

/// pi and log cost growth. The constant cache is pre-warmed so measured log
/// runs see pi and ln 2 precomputed.
pub fn elem_suite(sizes: &[u32], backend: Backend) -> Result<Vec<BenchRecord>> {
    let mut records = Vec::new();
    let max_n = sizes.iter().copied().max().unwrap_or(0);
    if max_n > 0 {
        let log2n = 32 - max_n.saturating_sub(1).leading_zeros();
        let nw = max_n + max_n / log2n.max(1) + 128;
        ConstantCache::global().pi(nw);
        ConstantCache::global().ln2(nw + 64);
    }
    for &n in sizes {
        push_op(&mut records, backend, "pi", n, |m| compute_pi(n, m).map(drop))?;
        let x = pseudo_random_value(n, 0x5eed_0e01).with_unit_exponent();
        push_op(&mut records, backend, "log", n, |m| mp_log(&x, n, m).map(drop))?;
    }
    records.sort_by(|a, b| (&a.op, a.n_bits).cmp(&(&b.op, b.n_bits)));
    Ok(records)
}

/// Power-series scalar-operation ratios on the FFT path; the n_bits column
/// carries the truncation order.
pub fn series_suite(orders: &[usize]) -> Result<Vec<BenchRecord>> {
    let mut records = Vec::new();
    for &n in orders {
        let field = FloatField::default();
        let template = {
            let ctx = PsCtx::new(field, MulPath::Fft);
            let mut rng = 0x5eed_5e01u64;
            let mut next = move || {
                rng = rng.wrapping_add(0x9e3779b97f4a7c15);
                let mut z = rng;
                z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
                z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
                (z ^ (z >> 31)) as f64 / u64::MAX as f64 - 0.5
            };
            let coeffs = (0..n)
                .map(|j| {
                    let v = next() / (1.0 + j as f64 * 0.25);
                    MPFloat::from_f64(v).unwrap().round_to(53)
                })
                .collect::<Vec<_>>();
            ctx.series(coeffs, n)
        };
        let mut unit = template.clone();
        unit.coeffs[0] = MPFloat::one(53);
        let mut zeroc = template.clone();
        zeroc.coeffs[0] = MPFloat::zero();

        let mul_cost = {
            let mut ctx = PsCtx::new(field, MulPath::Fft);
            ctx.mul(&template, &unit, n);
            ctx.mults.max(1)
        };
        let mut run = |label: &str, f: &dyn Fn(&mut PsCtx<FloatField>) -> Result<()>| -> Result<()> {
            let mut ctx = PsCtx::new(field, MulPath::Fft);
            let t0 = Instant::now();
            f(&mut ctx)?;
            records.push(BenchRecord {
                op: label.to_string(),
                n_bits: n as u32,
                backend: "fft".to_string(),
                ratio_to_mul: ctx.mults as f64 / mul_cost as f64,
                wall_ns: t0.elapsed().as_nanos(),
            });
            Ok(())
        };
        run("ps_mul", &|ctx| {
            ctx.mul(&template, &unit, n);
            Ok(())
        })?;
        run("ps_recip", &|ctx| ctx.recip(&unit, n).map(drop))?;
        run("ps_log", &|ctx| ctx.log(&unit, n).map(drop))?;
        run("ps_exp", &|ctx| ctx.exp(&zeroc, n).map(drop))?;
        run("ps_pow", &|ctx| ctx.pow(&unit, 3, n).map(drop))?;
    }
    records.sort_by(|a, b| (&a.op, a.n_bits).cmp(&(&b.op, b.n_bits)));
    Ok(records)
}

/// Least-squares slope of ys against xs.
pub fn least_squares_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(ys.iter()) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    num / den
}

impl MPFloat {
    /// Same fraction with the exponent forced near 1 (bench inputs for log).
    fn with_unit_exponent(&self) -> MPFloat {
        if self.is_zero() {
            return MPFloat::one(53);
        }
        self.shift_exp(2 - self.exponent()).unwrap()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_suite_produces_sorted_rows() {
        let recs = basic_suite(&[1024, 512], Backend::Auto).unwrap();
        assert_eq!(recs.len(), 12);
        assert!(recs.windows(2).all(|w| (&w[0].op, w[0].n_bits) <= (&w[1].op, w[1].n_bits)));
        assert!(recs.iter().all(|r| r.ratio_to_mul.is_finite() && r.ratio_to_mul > 0.5));
    }

    #[test]
    fn series_suite_counts_are_deterministic() {
        let a = series_suite(&[128]).unwrap();
        let b = series_suite(&[128]).unwrap();
        for (x, y) in a.iter().zip(b.iter()) {
            assert_eq!(x.op, y.op);
            assert_eq!(x.ratio_to_mul, y.ratio_to_mul);
        }
    }

    #[test]
    fn slope_fits_lines() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [3.0, 5.0, 7.0, 9.0];
        assert!((least_squares_slope(&xs, &ys) - 2.0).abs() < 1e-12);
    }
}

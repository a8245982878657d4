//! Variable-precision zero finding. Function evaluations are charged to an
//! oracle under the normalized cost model w(m) = m^alpha for a requested
//! absolute error 2^(-m); multiplications inside the solvers are combinatory
//! overhead and deliberately uncounted. Every solver runs a 53-bit bootstrap
//! phase to enter the asymptotic regime, then ascends a precision ladder
//! shaped by the method's order of convergence.
//!
//! Inverse cubic interpolation exists only as its asymptotic-constant
//! formula; as the constants show, it never beats inverse quadratic for
//! practical alpha.

use crate::basic::div;
use crate::error::{Error, Result};
use crate::float::{add, mul, sub, MPFloat};
use crate::meter::CostMeter;

type EvalFn<'a> = Box<dyn FnMut(&MPFloat, u32) -> Result<MPFloat> + 'a>;

/// A function with an evaluation-accuracy dial: eval(x, m) returns f(x) with
/// absolute error at most 2^-m, charging m^alpha cost units.
pub struct FunctionOracle<'a> {
    eval: EvalFn<'a>,
    derivatives: Vec<EvalFn<'a>>,
    pub cost_alpha: f64,
    cost: f64,
    derivative_cost: f64,
}

impl<'a> FunctionOracle<'a> {
    pub fn new(cost_alpha: f64, eval: impl FnMut(&MPFloat, u32) -> Result<MPFloat> + 'a) -> Self {
        FunctionOracle {
            eval: Box::new(eval),
            derivatives: Vec::new(),
            cost_alpha,
            cost: 0.0,
            derivative_cost: 0.0,
        }
    }

    /// Attach f', f'', ... in order.
    pub fn push_derivative(&mut self, d: impl FnMut(&MPFloat, u32) -> Result<MPFloat> + 'a) {
        self.derivatives.push(Box::new(d));
    }

    fn charge(&self, m: u32) -> f64 {
        if (self.cost_alpha - 1.0).abs() < 1e-12 {
            m as f64
        } else {
            (m as f64).powf(self.cost_alpha)
        }
    }

    /// Evaluate f with absolute error 2^-m; adds exactly m^alpha cost units.
    pub fn evaluate(&mut self, x: &MPFloat, m: u32) -> Result<MPFloat> {
        self.cost += self.charge(m);
        (self.eval)(x, m)
    }

    /// Evaluate the k-th derivative (1-based). Charged separately: the cost
    /// model treats derivative evaluations as asymptotically free.
    pub fn evaluate_derivative(&mut self, k: usize, x: &MPFloat, m: u32) -> Result<MPFloat> {
        self.derivative_cost += self.charge(m);
        let d = self
            .derivatives
            .get_mut(k - 1)
            .ok_or(Error::MissingDerivatives { need: k, have: 0 })?;
        d(x, m)
    }

    pub fn num_derivatives(&self) -> usize {
        self.derivatives.len()
    }
    pub fn cost(&self) -> f64 {
        self.cost
    }
    pub fn derivative_cost(&self) -> f64 {
        self.derivative_cost
    }
}

/// Outcome of a solve: the root, the (iteration, error exponent) trail of
/// every charged f evaluation, and the summed cost.
#[derive(Clone, Debug)]
pub struct SolverReport {
    pub root: MPFloat,
    pub eval_log: Vec<(u32, u32)>,
    pub total_cost: f64,
    pub converged: bool,
    /// Degenerate interpolation steps replaced by secant steps.
    pub fallbacks: usize,
}

impl SolverReport {
    /// Line-oriented text trace: one "iteration exponent cost" row per
    /// evaluation, followed by a total.
    pub fn trace(&self, alpha: f64) -> String {
        let mut out = String::from("iteration exponent cost\n");
        for &(it, m) in &self.eval_log {
            let c = if (alpha - 1.0).abs() < 1e-12 { m as f64 } else { (m as f64).powf(alpha) };
            out.push_str(&format!("{it} {m} {c}\n"));
        }
        out.push_str(&format!("total {} {}\n", self.eval_log.len(), self.total_cost));
        out
    }
}

const BOOT_EXP: u32 = 60;
const BOOT_PREC: u32 = 96;
/// Ladder evaluations run this many bits past the nominal exponent. The
/// exponent ladders grow exactly at each method's order, so per-stage
/// constants (1/f', interpolation weights) would otherwise compound into a
/// shortfall at the root; a fixed cushion absorbs them.
const EVAL_GUARD: u32 = 32;

struct Driver<'o, 'a> {
    oracle: &'o mut FunctionOracle<'a>,
    log: Vec<(u32, u32)>,
    iteration: u32,
    start_cost: f64,
    scratch: CostMeter,
}

impl<'o, 'a> Driver<'o, 'a> {
    fn new(oracle: &'o mut FunctionOracle<'a>) -> Self {
        let start_cost = oracle.cost();
        Driver { oracle, log: Vec::new(), iteration: 0, start_cost, scratch: CostMeter::unmetered() }
    }

    fn eval(&mut self, x: &MPFloat, m: u32) -> Result<MPFloat> {
        self.log.push((self.iteration, m));
        self.oracle.evaluate(x, m)
    }

    fn report(self, root: MPFloat, converged: bool, fallbacks: usize) -> SolverReport {
        SolverReport {
            root,
            total_cost: self.oracle.cost() - self.start_cost,
            eval_log: self.log,
            converged,
            fallbacks,
        }
    }

    fn give_up(&self, method: &'static str) -> Error {
        let trail = self.log.iter().rev().take(16).rev().copied().collect();
        Error::Convergence { method, iterations: self.iteration as usize, trail }
    }
}

fn iteration_cap(n: u32) -> u32 {
    4 * (32 - n.max(2).leading_zeros())
}

/// Exponent ladder n, n/2, n/4, ... (ascending order), floored near the
/// bootstrap accuracy.
fn halving_ladder(n: u32) -> Vec<u32> {
    let mut desc = vec![n];
    let mut v = n;
    while v > 40 {
        v = v.div_ceil(2);
        desc.push(v);
    }
    desc.reverse();
    desc
}

/// Discrete Newton: per stage two evaluations (f(x) and f(x+h), h = f(x))
/// at the same error exponent.
pub fn discrete_newton(f: &mut FunctionOracle, x0: &MPFloat, n: u32) -> Result<SolverReport> {
    let n = n.max(8);
    let cap = iteration_cap(n);
    let mut d = Driver::new(f);
    let mut x = x0.round_to(BOOT_PREC);

    // bootstrap at seed precision
    loop {
        if d.iteration > cap {
            return Err(d.give_up("discrete_newton"));
        }
        d.iteration += 1;
        let fx = d.eval(&x, BOOT_EXP)?;
        if fx.is_zero() {
            return Ok(d.report(x, true, 0));
        }
        let h = if fx.exponent() > -(BOOT_EXP as i64) { fx.clone() } else { MPFloat::pow2(-(BOOT_EXP as i64), 32) };
        let fxh = d.eval(&add(&x, &h, BOOT_PREC)?, BOOT_EXP)?;
        let g = div(&sub(&fxh, &fx, BOOT_PREC)?, &h, BOOT_PREC, &mut d.scratch)?;
        let dx = div(&fx, &g, BOOT_PREC, &mut d.scratch)?;
        x = sub(&x, &dx, BOOT_PREC)?;
        if !dx.is_zero() && dx.exponent() <= x.exponent() - 26 {
            break;
        }
    }

    // precision ascent: error exponents n/2^k upward
    for &m in halving_ladder(n).iter() {
        if d.iteration > cap {
            return Err(d.give_up("discrete_newton"));
        }
        d.iteration += 1;
        let m = m + EVAL_GUARD;
        let p = m + 64;
        let x_wide = x.round_to(p);
        let fx = d.eval(&x_wide, m)?;
        if fx.is_zero() {
            return Ok(d.report(x_wide, true, 0));
        }
        let h = if fx.exponent() > -(m as i64) { fx.clone() } else { MPFloat::pow2(-(m as i64), 32) };
        let fxh = d.eval(&add(&x_wide, &h, p)?, m)?;
        let g = div(&sub(&fxh, &fx, p)?, &h, p, &mut d.scratch)?;
        let dx = div(&fx, &g, p, &mut d.scratch)?;
        x = sub(&x_wide, &dx, p)?;
    }
    Ok(d.report(x.round_to(n + 16), true, 0))
}

/// Secant ladder: final full-precision evaluation at n, preceded by
/// 2n/rho^2, 2n/rho^3, ... (ascending), rho the golden ratio.
fn secant_ladder(n: u32) -> Vec<u32> {
    let rho = (1.0 + 5f64.sqrt()) / 2.0;
    let mut desc = vec![n];
    let mut v = 2.0 * n as f64 / (rho * rho);
    while v > 40.0 {
        desc.push(v.ceil() as u32);
        v /= rho;
    }
    desc.reverse();
    desc
}

pub fn secant(
    f: &mut FunctionOracle,
    x0: &MPFloat,
    x1: &MPFloat,
    n: u32,
) -> Result<SolverReport> {
    let n = n.max(8);
    let cap = iteration_cap(n);
    let mut d = Driver::new(f);
    if x0 == x1 {
        return Err(Error::domain("secant", "starting points must be distinct"));
    }
    let mut xa = x0.round_to(BOOT_PREC);
    let mut xb = x1.round_to(BOOT_PREC);
    d.iteration += 1;
    let mut fa = d.eval(&xa, BOOT_EXP)?;
    if fa.is_zero() {
        return Ok(d.report(xa, true, 0));
    }

    // bootstrap
    loop {
        if d.iteration > cap {
            return Err(d.give_up("secant"));
        }
        d.iteration += 1;
        let fb = d.eval(&xb, BOOT_EXP)?;
        if fb.is_zero() {
            return Ok(d.report(xb, true, 0));
        }
        let den = sub(&fb, &fa, BOOT_PREC)?;
        if den.is_zero() {
            return Err(Error::DegenerateSecant);
        }
        let dx = mul(
            &fb,
            &div(&sub(&xb, &xa, BOOT_PREC)?, &den, BOOT_PREC, &mut d.scratch)?,
            BOOT_PREC,
            &mut d.scratch,
        )?;
        let xn = sub(&xb, &dx, BOOT_PREC)?;
        xa = std::mem::replace(&mut xb, xn);
        fa = fb;
        if !dx.is_zero() && dx.exponent() <= xb.exponent() - 30 {
            break;
        }
    }

    // ascent with the rho ladder
    let mut prev_x = xa;
    let mut prev_f = fa;
    for &m in secant_ladder(n).iter() {
        if d.iteration > cap {
            return Err(d.give_up("secant"));
        }
        d.iteration += 1;
        let m = m + EVAL_GUARD;
        let p = m + 64;
        let x_wide = xb.round_to(p);
        let fx = d.eval(&x_wide, m)?;
        if fx.is_zero() {
            return Ok(d.report(x_wide, true, 0));
        }
        let den = sub(&fx, &prev_f, p)?;
        if den.is_zero() {
            return Err(Error::DegenerateSecant);
        }
        let dx = mul(
            &fx,
            &div(&sub(&x_wide, &prev_x, p)?, &den, p, &mut d.scratch)?,
            p,
            &mut d.scratch,
        )?;
        let xn = sub(&x_wide, &dx, p)?;
        prev_x = x_wide;
        prev_f = fx;
        xb = xn;
    }
    Ok(d.report(xb.round_to(n + 16), true, 0))
}

/// Inverse-quadratic ladder: n, (1-s+s^2) n, then 3 s^3 n, 3 s^4 n, ...
/// (ascending), s = 1/rho with rho^3 = rho^2 + rho + 1.
fn iqi_ladder(n: u32) -> Vec<u32> {
    let rho = positive_root(&[-1.0, -1.0, -1.0, 1.0], 1.84);
    let s = 1.0 / rho;
    let mut desc = vec![n, ((1.0 - s + s * s) * n as f64).ceil() as u32];
    let mut v = 3.0 * s * s * s * n as f64;
    while v > 40.0 {
        desc.push(v.ceil() as u32);
        v *= s;
    }
    desc.reverse();
    desc
}

/// One inverse-interpolation step through three points; None on degenerate
/// (coincident ordinate) data.
fn iqi_step(
    pts: &[(MPFloat, MPFloat); 3],
    p: u32,
    scratch: &mut CostMeter,
) -> Result<Option<MPFloat>> {
    for i in 0..3 {
        for j in i + 1..3 {
            if sub(&pts[i].1, &pts[j].1, p)?.is_zero() {
                return Ok(None);
            }
        }
    }
    // x = sum_k x_k prod_{j != k} f_j / (f_j - f_k)
    let mut acc = MPFloat::zero();
    for k in 0..3 {
        let mut w = pts[k].0.round_to(p);
        for j in 0..3 {
            if j == k {
                continue;
            }
            let den = sub(&pts[j].1, &pts[k].1, p)?;
            let ratio = div(&pts[j].1, &den, p, scratch)?;
            w = mul(&w, &ratio, p, scratch)?;
        }
        acc = add(&acc, &w, p)?;
    }
    Ok(Some(acc))
}

pub fn inverse_quadratic(
    f: &mut FunctionOracle,
    x0: &MPFloat,
    x1: &MPFloat,
    x2: &MPFloat,
    n: u32,
) -> Result<SolverReport> {
    let n = n.max(8);
    let cap = iteration_cap(n);
    let mut d = Driver::new(f);
    let mut fallbacks = 0usize;

    let mut pts: [(MPFloat, MPFloat); 3] = [
        (x0.round_to(BOOT_PREC), MPFloat::zero()),
        (x1.round_to(BOOT_PREC), MPFloat::zero()),
        (x2.round_to(BOOT_PREC), MPFloat::zero()),
    ];
    for i in 0..3 {
        d.iteration += 1;
        let fx = d.eval(&pts[i].0.clone(), BOOT_EXP)?;
        if fx.is_zero() {
            let root = pts[i].0.clone();
            return Ok(d.report(root, true, fallbacks));
        }
        pts[i].1 = fx;
    }

    let advance = |pts: &mut [(MPFloat, MPFloat); 3],
                       xn: MPFloat,
                       fxn: MPFloat| {
        pts.rotate_left(1);
        pts[2] = (xn, fxn);
    };

    // bootstrap
    loop {
        if d.iteration > cap {
            return Err(d.give_up("inverse_quadratic"));
        }
        d.iteration += 1;
        let xn = match iqi_step(&pts, BOOT_PREC, &mut d.scratch)? {
            Some(x) => x,
            None => {
                fallbacks += 1;
                secant_fallback(&pts, BOOT_PREC, &mut d.scratch)?
            }
        };
        let fxn = d.eval(&xn, BOOT_EXP)?;
        if fxn.is_zero() {
            return Ok(d.report(xn, true, fallbacks));
        }
        let dx = sub(&xn, &pts[2].0, BOOT_PREC)?;
        advance(&mut pts, xn.clone(), fxn);
        if !dx.is_zero() && dx.exponent() <= xn.exponent() - 26 {
            break;
        }
    }

    for &m in iqi_ladder(n).iter() {
        if d.iteration > cap {
            return Err(d.give_up("inverse_quadratic"));
        }
        d.iteration += 1;
        let m = m + EVAL_GUARD;
        let p = m + 64;
        let x_wide = pts[2].0.round_to(p);
        let fx = d.eval(&x_wide, m)?;
        if fx.is_zero() {
            return Ok(d.report(x_wide, true, fallbacks));
        }
        pts[2] = (x_wide, fx);
        let xn = match iqi_step(&pts, p, &mut d.scratch)? {
            Some(x) => x,
            None => {
                fallbacks += 1;
                secant_fallback(&pts, p, &mut d.scratch)?
            }
        };
        advance(&mut pts, xn, MPFloat::zero());
    }
    let root = pts[2].0.round_to(n + 16);
    Ok(d.report(root, true, fallbacks))
}

fn secant_fallback(
    pts: &[(MPFloat, MPFloat); 3],
    p: u32,
    scratch: &mut CostMeter,
) -> Result<MPFloat> {
    let (xa, fa) = &pts[1];
    let (xb, fb) = &pts[2];
    let den = sub(fb, fa, p)?;
    if den.is_zero() {
        return Err(Error::DegenerateSecant);
    }
    let dx = mul(fb, &div(&sub(xb, xa, p)?, &den, p, scratch)?, p, scratch)?;
    sub(xb, &dx, p)
}

/// Taylor ladder for the order-(k+1) method of `solve_with_derivatives`.
fn derivative_ladder(n: u32, order: u32) -> Vec<u32> {
    let mut desc = vec![n];
    let mut v = n;
    while v > 40 {
        v = v.div_ceil(order);
        if v > 40 {
            desc.push(v);
        }
    }
    desc.reverse();
    desc
}

/// Inverse-Taylor method of order k+1 using derivatives f', ..., f^(k):
/// x += sum_j b_j (-f(x))^j with the inverse-series coefficients b_j.
/// For fixed k the total evaluation cost is below (1 + 2/k) w(n).
pub fn solve_with_derivatives(
    f: &mut FunctionOracle,
    x0: &MPFloat,
    n: u32,
    k: usize,
) -> Result<SolverReport> {
    let n = n.max(8);
    if !(1..=4).contains(&k) {
        return Err(Error::domain("solve_with_derivatives", "supported orders: k in 1..=4"));
    }
    if f.num_derivatives() < k {
        return Err(Error::MissingDerivatives { need: k, have: f.num_derivatives() });
    }
    let cap = iteration_cap(n);
    let mut d = Driver::new(f);
    let mut x = x0.round_to(BOOT_PREC);

    // Newton bootstrap with the true derivative
    loop {
        if d.iteration > cap {
            return Err(d.give_up("solve_with_derivatives"));
        }
        d.iteration += 1;
        let fx = d.eval(&x, BOOT_EXP)?;
        if fx.is_zero() {
            return Ok(d.report(x, true, 0));
        }
        let d1 = d.oracle.evaluate_derivative(1, &x, BOOT_EXP)?;
        let dx = div(&fx, &d1, BOOT_PREC, &mut d.scratch)?;
        x = sub(&x, &dx, BOOT_PREC)?;
        if !dx.is_zero() && dx.exponent() <= x.exponent() - 24 {
            break;
        }
    }

    for &m in derivative_ladder(n, k as u32 + 1).iter() {
        if d.iteration > cap {
            return Err(d.give_up("solve_with_derivatives"));
        }
        d.iteration += 1;
        let m = m + EVAL_GUARD;
        let p = m + 64;
        let x_wide = x.round_to(p);
        let y = d.eval(&x_wide, m)?;
        if y.is_zero() {
            return Ok(d.report(x_wide, true, 0));
        }
        let sc = &mut d.scratch;
        let d1 = d.oracle.evaluate_derivative(1, &x_wide, m)?;
        let b1 = crate::basic::recip(&d1, p, sc)?;
        let t = y.neg();
        // Horner over the inverse-series coefficients
        let mut corr = mul(&b1, &t, p, sc)?;
        if k >= 2 {
            let d2 = d.oracle.evaluate_derivative(2, &x_wide, m)?;
            let b1_2 = mul(&b1, &b1, p, sc)?;
            let b1_3 = mul(&b1_2, &b1, p, sc)?;
            let b2 = mul(&d2, &b1_3, p, sc)?.shift_exp(-1)?.neg();
            let t2 = mul(&t, &t, p, sc)?;
            corr = add(&corr, &mul(&b2, &t2, p, sc)?, p)?;
            if k >= 3 {
                let d3 = d.oracle.evaluate_derivative(3, &x_wide, m)?;
                let b1_5 = mul(&b1_3, &b1_2, p, sc)?;
                // b3 = (3 d2^2 - d1 d3) b1^5 / 6
                let d2_2 = mul(&d2, &d2, p, sc)?;
                let three_d2_2 = add(&d2_2, &d2_2.shift_exp(1)?, p)?;
                let d1d3 = mul(&d1, &d3, p, sc)?;
                let b3 = crate::float::div_u64(
                    &mul(&sub(&three_d2_2, &d1d3, p)?, &b1_5, p, sc)?,
                    6,
                    p,
                )?;
                let t3 = mul(&t2, &t, p, sc)?;
                corr = add(&corr, &mul(&b3, &t3, p, sc)?, p)?;
                if k >= 4 {
                    let d4 = d.oracle.evaluate_derivative(4, &x_wide, m)?;
                    let b1_7 = mul(&b1_5, &b1_2, p, sc)?;
                    // b4 = (-15 d2^3 + 10 d1 d2 d3 - d1^2 d4) b1^7 / 24
                    let d2_3 = mul(&d2_2, &d2, p, sc)?;
                    let fifteen = crate::float::mul_u64(&d2_3, 15, p)?;
                    let ten = crate::float::mul_u64(&mul(&d1d3, &d2, p, sc)?, 10, p)?;
                    let d1_2 = mul(&d1, &d1, p, sc)?;
                    let last = mul(&d1_2, &d4, p, sc)?;
                    let num = sub(&sub(&ten, &fifteen, p)?, &last, p)?;
                    let b4 = crate::float::div_u64(&mul(&num, &b1_7, p, sc)?, 24, p)?;
                    let t4 = mul(&t3, &t, p, sc)?;
                    corr = add(&corr, &mul(&b4, &t4, p, sc)?, p)?;
                }
            }
        }
        x = add(&x_wide, &corr, p)?;
    }
    Ok(d.report(x.round_to(n + 16), true, 0))
}

/// Zero-finding methods with closed-form asymptotic constants.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    DiscreteNewton,
    Secant,
    InverseQuadratic,
    InverseCubic,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "N" | "newton" => Ok(Method::DiscreteNewton),
            "S" | "secant" => Ok(Method::Secant),
            "Q" | "inverse_quadratic" => Ok(Method::InverseQuadratic),
            "C" | "inverse_cubic" => Ok(Method::InverseCubic),
            _ => Err(Error::Parse(format!("unknown method: {s}"))),
        }
    }
}

/// Positive root of sum_i c_i x^i by f64 Newton iteration.
fn positive_root(coeffs: &[f64], start: f64) -> f64 {
    let eval = |x: f64| -> (f64, f64) {
        let mut v = 0.0;
        let mut dv = 0.0;
        for &c in coeffs.iter().rev() {
            dv = dv * x + v;
            v = v * x + c;
        }
        (v, dv)
    };
    let mut x = start;
    for _ in 0..64 {
        let (v, dv) = eval(x);
        let step = v / dv;
        x -= step;
        if step.abs() < 1e-16 * x.abs() {
            break;
        }
    }
    x
}

/// Golden ratio: order of the secant method.
pub fn secant_order() -> f64 {
    (1.0 + 5f64.sqrt()) / 2.0
}

/// Order of inverse quadratic interpolation: positive root of
/// rho^3 = rho^2 + rho + 1.
pub fn iqi_order() -> f64 {
    positive_root(&[-1.0, -1.0, -1.0, 1.0], 1.84)
}

/// Root mu of mu^4 + mu^3 + mu^2 + mu = 1 (reciprocal of the inverse-cubic
/// order).
pub fn inverse_cubic_mu() -> f64 {
    positive_root(&[-1.0, 1.0, 1.0, 1.0, 1.0], 0.52)
}

/// Closed-form asymptotic constant C(alpha): limiting ratio of a solver's
/// total cost to one full-precision evaluation.
pub fn asymptotic_constant(method: Method, alpha: f64) -> Result<f64> {
    if !(alpha >= 1.0) {
        return Err(Error::domain("asymptotic_constant", "alpha must be >= 1"));
    }
    Ok(match method {
        Method::DiscreteNewton => 2.0 / (1.0 - 2f64.powf(-alpha)),
        Method::Secant => {
            let rho = secant_order();
            1.0 + (2.0 * rho.powi(-2)).powf(alpha) / (1.0 - rho.powf(-alpha))
        }
        Method::InverseQuadratic => {
            let s = 1.0 / iqi_order();
            1.0 + (1.0 - s + s * s).powf(alpha)
                + (3.0 * s.powi(3)).powf(alpha) / (1.0 - s.powf(alpha))
        }
        Method::InverseCubic => {
            let mu = inverse_cubic_mu();
            1.0 + (1.0 - mu + mu * mu).powf(alpha)
                + (1.0 - mu - mu * mu + 2.0 * mu.powi(3)).powf(alpha)
                + (4.0 * mu.powi(4)).powf(alpha) / (1.0 - mu.powf(alpha))
        }
    })
}

/// Bisect the sign change of C_C(alpha) - C_Q(alpha) inside [lo, hi].
/// Returns None when the endpoints do not bracket a sign change.
pub fn cc_cq_crossover(mut lo: f64, mut hi: f64, tol: f64) -> Result<Option<f64>> {
    let g = |a: f64| -> Result<f64> {
        Ok(asymptotic_constant(Method::InverseCubic, a)?
            - asymptotic_constant(Method::InverseQuadratic, a)?)
    };
    let (mut flo, fhi) = (g(lo)?, g(hi)?);
    if flo == 0.0 {
        return Ok(Some(lo));
    }
    if flo.signum() == fhi.signum() {
        return Ok(None);
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let fm = g(mid)?;
        if fm.signum() == flo.signum() {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    Ok(Some(0.5 * (lo + hi)))
}

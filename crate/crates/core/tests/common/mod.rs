//! Shared test oracles, all independent of the code paths they check:
//! integer spigots for pi and e, exact integer square roots and long
//! division, trapezoid quadrature for the elliptic integrals, and Bernoulli
//! numbers for the tangent series.
#![allow(dead_code)]

use mpbrent::{add, div_u64, mul, sub, CostMeter, MPFloat};
use num_bigint::BigUint;
use num_traits::{One, Zero};

/// pi = 16 atan(1/5) - 4 atan(1/239) with plain integer arithmetic,
/// as a decimal digit string "3.1415..." with `digits` digits after the "3.".
pub fn machin_pi_decimal(digits: usize) -> String {
    let guard = 12usize;
    let scale = BigUint::from(10u32).pow((digits + guard) as u32);
    let total = atan_inv_scaled(&(scale.clone() * 16u32), 5) - atan_inv_scaled(&(scale * 4u32), 239);
    let s = total.to_string();
    // value ~ 3.14...: first digit is the integer part
    format!("3.{}", &s[1..=digits])
}

/// atan(1/q) * scale, floor arithmetic; error below #terms + 1 units.
fn atan_inv_scaled(scale: &BigUint, q: u64) -> BigUint {
    let q2 = BigUint::from(q * q);
    let mut term = scale / q;
    let mut sum = term.clone();
    let mut j = 1u64;
    let mut subtract = true;
    loop {
        term /= &q2;
        if term.is_zero() {
            break;
        }
        j += 2;
        let t = &term / j;
        if subtract {
            sum -= &t;
        } else {
            sum += &t;
        }
        subtract = !subtract;
    }
    sum
}

/// pi as an MPFloat to `bits` precision via the same integer Machin spigot
/// in base 2.
pub fn machin_pi_mp(bits: u32) -> MPFloat {
    let guard = 32u32;
    let scale = BigUint::one() << (bits + guard);
    let total = atan_inv_scaled(&(scale.clone() * 16u32), 5) - atan_inv_scaled(&(scale * 4u32), 239);
    MPFloat::from_biguint(&total, bits + 8)
        .shift_exp(-((bits + guard) as i64))
        .unwrap()
        .round_to(bits)
}

/// e = sum 1/j! by the integer factorial spigot.
pub fn e_series_mp(bits: u32) -> MPFloat {
    let guard = 32u32;
    let scale = BigUint::one() << (bits + guard);
    let mut term = scale.clone();
    let mut sum = scale;
    let mut j = 1u64;
    loop {
        term /= j;
        if term.is_zero() {
            break;
        }
        sum += &term;
        j += 1;
    }
    MPFloat::from_biguint(&sum, bits + 8)
        .shift_exp(-((bits + guard) as i64))
        .unwrap()
        .round_to(bits)
}

/// (integer fraction, weight exponent) view: |x| = F * 2^E exactly.
pub fn to_int_parts(x: &MPFloat) -> (BigUint, i64) {
    let mut f = BigUint::zero();
    for &l in x.limbs() {
        f = (f << 64) | BigUint::from(l);
    }
    (f, x.exponent() - 64 * x.limbs().len() as i64)
}

/// Long-division reciprocal oracle: floor(2^k / F) rescaled.
pub fn recip_oracle(a: &MPFloat, bits: u32) -> MPFloat {
    let (f, e) = to_int_parts(&a.abs());
    let k = f.bits() as u32 + bits + 16;
    let q = (BigUint::one() << k) / &f;
    let r = MPFloat::from_biguint(&q, bits + 8)
        .shift_exp(-(k as i64) - e)
        .unwrap()
        .round_to(bits);
    if a.sign() < 0 {
        r.neg()
    } else {
        r
    }
}

/// Exact rational division oracle floor((B << k)/A) rescaled.
pub fn div_oracle(b: &MPFloat, a: &MPFloat, bits: u32) -> MPFloat {
    let (fb, eb) = to_int_parts(&b.abs());
    let (fa, ea) = to_int_parts(&a.abs());
    let k = fa.bits() as u32 + bits + 16;
    let q = (fb << k) / &fa;
    let r = MPFloat::from_biguint(&q, bits + 8)
        .shift_exp(eb - ea - k as i64)
        .unwrap()
        .round_to(bits);
    if a.sign() * b.sign() < 0 {
        r.neg()
    } else {
        r
    }
}

/// Digit-by-digit integer square root oracle.
pub fn sqrt_oracle(a: &MPFloat, bits: u32) -> MPFloat {
    let (mut f, mut e) = to_int_parts(a);
    if e % 2 != 0 {
        f <<= 1;
        e -= 1;
    }
    let k = bits as i64 + 16;
    let s = (f << (2 * k as u64)).sqrt();
    MPFloat::from_biguint(&s, bits + 8)
        .shift_exp(e / 2 - k)
        .unwrap()
        .round_to(bits)
}

/// floor(2^t / sqrt(F)) = floor(isqrt(2^{2t} F) / F), exactly.
pub fn inv_sqrt_oracle(a: &MPFloat, bits: u32) -> MPFloat {
    let (mut f, mut e) = to_int_parts(a);
    if e % 2 != 0 {
        f <<= 1;
        e -= 1;
    }
    let t = f.bits() as i64 + bits as i64 + 16;
    let s = (f.clone() << (2 * t as u64)).sqrt() / &f;
    MPFloat::from_biguint(&s, bits + 8)
        .shift_exp(-e / 2 - t)
        .unwrap()
        .round_to(bits)
}

/// |x - y| <= 2^rel_exp * |y|, compared exactly.
pub fn rel_within(x: &MPFloat, y: &MPFloat, rel_exp: i64) -> bool {
    let p = x.precision().max(y.precision()).max(64) + 8;
    let d = sub(x, y, p).unwrap();
    if d.is_zero() {
        return true;
    }
    if y.is_zero() {
        return false;
    }
    let bound = y.shift_exp(rel_exp).unwrap();
    d.cmp_abs(&bound) != std::cmp::Ordering::Greater
}

/// |x - y| <= 2^abs_exp, compared exactly.
pub fn abs_within(x: &MPFloat, y: &MPFloat, abs_exp: i64) -> bool {
    let p = x.precision().max(y.precision()).max(64) + 8;
    let d = sub(x, y, p).unwrap();
    d.is_zero() || d.cmp_abs(&MPFloat::pow2(abs_exp, 1)) != std::cmp::Ordering::Greater
}

/// Deterministic pseudo-random values: splitmix64 limbs.
pub struct TestRng(pub u64);

impl TestRng {
    pub fn next_u64(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn f64_unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * 2f64.powi(-53)
    }

    /// Random positive value with `bits` precision and exponent in
    /// [-max_exp, max_exp].
    pub fn mpfloat(&mut self, bits: u32, max_exp: i64) -> MPFloat {
        let nl = ((bits as usize) + 63) / 64;
        let mut limbs = Vec::with_capacity(nl);
        for _ in 0..nl {
            limbs.push(self.next_u64());
        }
        limbs[0] |= 1 << 63;
        let span = (2 * max_exp + 1) as u64;
        let e = (self.next_u64() % span) as i64 - max_exp;
        let v = MPFloat::from_biguint(&{
            let mut f = BigUint::zero();
            for &l in &limbs {
                f = (f << 64) | BigUint::from(l);
            }
            f
        }, bits);
        v.shift_exp(e - v.exponent()).unwrap()
    }
}

/// Taylor sine/cosine for small mp arguments (|x| < 1), quadrature plumbing.
fn sin_cos_taylor(x: &MPFloat, p: u32) -> (MPFloat, MPFloat) {
    let mut meter = CostMeter::unmetered();
    let x2 = mul(x, x, p, &mut meter).unwrap();
    let mut sin = x.round_to(p);
    let mut cos = MPFloat::one(p);
    let mut term_s = sin.clone();
    let mut term_c = cos.clone();
    let mut j = 0u64;
    loop {
        // cos term: x^(j+2)/(j+2)!, sin term: x^(j+3)/(j+3)!
        term_c = div_u64(&mul(&term_c, &x2, p, &mut meter).unwrap(), (j + 1) * (j + 2), p).unwrap();
        term_s = div_u64(&mul(&term_s, &x2, p, &mut meter).unwrap(), (j + 2) * (j + 3), p).unwrap();
        if term_c.is_zero() || term_c.exponent() < -(p as i64) - 4 {
            break;
        }
        let neg = (j / 2) % 2 == 0;
        cos = if neg { sub(&cos, &term_c, p) } else { add(&cos, &term_c, p) }.unwrap();
        sin = if neg { sub(&sin, &term_s, p) } else { add(&sin, &term_s, p) }.unwrap();
        j += 2;
    }
    (sin, cos)
}

/// Trapezoid quadrature with one Richardson refinement for the complete
/// elliptic integrals with parameter m = sin^2(phi):
/// K = integral of (1 - m sin^2 t)^(-1/2), E of the square root, over
/// [0, pi/2]. The integrand is even around both endpoints, so the trapezoid
/// rule converges geometrically; Richardson only sharpens it.
pub fn elliptic_quadrature_oracle(m: &MPFloat, nodes: usize, p: u32) -> (MPFloat, MPFloat) {
    let mut meter = CostMeter::unmetered();
    let pi = machin_pi_mp(p + 16);
    let sum_for = |n: usize, meter: &mut CostMeter| -> (MPFloat, MPFloat) {
        let h = div_u64(&pi.shift_exp(-1).unwrap(), n as u64, p).unwrap();
        let (sh, ch) = sin_cos_taylor(&h, p);
        // rotate (sin, cos) by h per node
        let mut s = MPFloat::zero();
        let mut c = MPFloat::one(p);
        let one = MPFloat::one(p);
        let mut acc_k = MPFloat::zero();
        let mut acc_e = MPFloat::zero();
        for idx in 0..=n {
            let s2 = mul(&s, &s, p, meter).unwrap();
            let arg = sub(&one, &mul(m, &s2, p, meter).unwrap(), p).unwrap();
            let fk = mpbrent::basic::inv_sqrt(&arg, p, meter).unwrap();
            let fe = mpbrent::basic::sqrt(&arg, p, meter).unwrap();
            let w = if idx == 0 || idx == n { -1 } else { 0 };
            let (tk, te) = if w < 0 {
                (fk.shift_exp(-1).unwrap(), fe.shift_exp(-1).unwrap())
            } else {
                (fk, fe)
            };
            acc_k = add(&acc_k, &tk, p).unwrap();
            acc_e = add(&acc_e, &te, p).unwrap();
            let ns = add(&mul(&s, &ch, p, meter).unwrap(), &mul(&c, &sh, p, meter).unwrap(), p).unwrap();
            let nc = sub(&mul(&c, &ch, p, meter).unwrap(), &mul(&s, &sh, p, meter).unwrap(), p).unwrap();
            s = ns;
            c = nc;
        }
        (mul(&acc_k, &h, p, meter).unwrap(), mul(&acc_e, &h, p, meter).unwrap())
    };
    let (k1, e1) = sum_for(nodes / 2, &mut meter);
    let (k2, e2) = sum_for(nodes, &mut meter);
    // Richardson: already spectrally accurate, (4 T2 - T1)/3 can only help
    let refine = |t2: &MPFloat, t1: &MPFloat| {
        let four = t2.shift_exp(2).unwrap();
        div_u64(&sub(&four, t1, p).unwrap(), 3, p).unwrap()
    };
    (refine(&k2, &k1), refine(&e2, &e1))
}

/// Tangent series coefficients t_1, t_3, ... via Bernoulli numbers from the
/// defining recurrence sum_k C(m+1,k) B_k = 0.
pub fn tangent_coeffs_f64(count: usize) -> Vec<f64> {
    use num_bigint::BigInt;
    use num_rational::BigRational;
    let terms = 2 * count + 2;
    let mut bern: Vec<BigRational> = Vec::with_capacity(terms);
    for m in 0..terms {
        if m == 0 {
            bern.push(BigRational::one());
            continue;
        }
        // B_m = -(1/(m+1)) sum_{k<m} C(m+1, k) B_k
        let mut acc = BigRational::zero();
        let mut binom = BigInt::one(); // C(m+1, 0)
        for (k, b) in bern.iter().enumerate() {
            acc += BigRational::from_integer(binom.clone()) * b;
            binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
        }
        bern.push(-acc / BigRational::from_integer(BigInt::from(m as u64 + 1)));
    }
    // tan x = sum_k (-1)^(k-1) 2^(2k) (2^(2k) - 1) B_{2k} x^(2k-1) / (2k)!
    let mut out = Vec::with_capacity(count);
    let mut fact = BigRational::one();
    let mut f = 0u64;
    for k in 1..=count {
        while f < 2 * k as u64 {
            f += 1;
            fact *= BigRational::from_integer(BigInt::from(f));
        }
        let two2k = BigInt::one() << (2 * k);
        let c = BigRational::from_integer(two2k.clone() * (two2k - BigInt::one()))
            * &bern[2 * k]
            / &fact;
        let c = if k % 2 == 0 { -c } else { c };
        let num: f64 = c.numer().to_string().parse().unwrap();
        let den: f64 = c.denom().to_string().parse().unwrap();
        out.push(num / den);
    }
    out
}

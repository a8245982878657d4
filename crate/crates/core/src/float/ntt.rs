//! Number-theoretic transform backend: exact limb convolution via negacyclic
//! transforms over three 62-bit primes with p - 1 divisible by 3 * 2^41,
//! recombined by the Chinese remainder theorem. Limbs are split into 16-bit
//! coefficients; transform sizes come from the ladder {2^k, 3*2^k} so the
//! cost curve tracks n log n without factor-of-two cliffs.
//!
//! Transforms may run per prime in any order (results are recombined
//! deterministically), but this implementation is serial.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

/// (prime, generator of the multiplicative group)
pub(crate) const PRIMES: [(u64, u64); 3] = [
    (3459061381960040449, 13),
    (3459259294053040129, 13),
    (3459523176843706369, 7),
];

/// Largest supported transform size (2N must divide p-1 for every prime).
const MAX_N: usize = 3 << 40;

#[derive(Clone, Copy)]
struct Mont {
    p: u64,
    nprime: u64, // -p^{-1} mod 2^64
    r2: u64,     // 2^128 mod p
}

impl Mont {
    const fn new(p: u64) -> Self {
        // p^{-1} mod 2^64 by Newton iteration
        let mut inv = p;
        let mut i = 0;
        while i < 6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
            i += 1;
        }
        let nprime = inv.wrapping_neg();
        // r2 = 2^128 mod p via repeated doubling of 2^64 mod p
        let r = (u64::MAX % p) + 1; // 2^64 mod p (p < 2^63 so no wrap)
        let mut r2 = r as u128 % p as u128;
        let mut i = 0;
        while i < 64 {
            r2 = (r2 << 1) % p as u128;
            i += 1;
        }
        Mont { p, nprime, r2: r2 as u64 }
    }

    #[inline(always)]
    fn mul(&self, a: u64, b: u64) -> u64 {
        let t = a as u128 * b as u128;
        let m = (t as u64).wrapping_mul(self.nprime);
        let t2 = t + m as u128 * self.p as u128;
        let r = (t2 >> 64) as u64;
        if r >= self.p {
            r - self.p
        } else {
            r
        }
    }

    #[inline(always)]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline(always)]
    fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    fn to_mont(&self, v: u64) -> u64 {
        self.mul(v % self.p, self.r2)
    }

    fn powmod(&self, base: u64, mut e: u64) -> u64 {
        let mut acc: u128 = 1;
        let mut b = base as u128 % self.p as u128;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % self.p as u128;
            }
            b = b * b % self.p as u128;
            e >>= 1;
        }
        acc as u64
    }
}

struct Tables {
    mont: Mont,
    n: usize,
    /// omega^i in Montgomery form, i < n
    w: Vec<u64>,
    /// omega^{-i} in Montgomery form, i < n
    wi: Vec<u64>,
    /// psi^i in Montgomery form (forward negacyclic twist)
    psi: Vec<u64>,
    /// psi^{-i} * n^{-1} * 2^128 mod p: one multiply undoes the twist, the
    /// 1/n scale, and the stray R^{-1} from the pointwise product.
    fin: Vec<u64>,
    w3: u64,
    w3sq: u64,
    w3i: u64,
    w3isq: u64,
}

fn build_tables(prime_idx: usize, n: usize) -> Tables {
    let (p, g) = PRIMES[prime_idx];
    let mont = Mont::new(p);
    assert!(n >= 2 && n <= MAX_N && (p - 1) % (2 * n as u64) == 0, "transform size {n} unsupported");
    let omega = mont.powmod(g, (p - 1) / n as u64);
    let psi = mont.powmod(g, (p - 1) / (2 * n as u64));
    let omega_inv = mont.powmod(omega, p - 2);
    let psi_inv = mont.powmod(psi, p - 2);
    let n_inv = mont.powmod(n as u64, p - 2);

    let mut w = Vec::with_capacity(n);
    let mut wi = Vec::with_capacity(n);
    let mut psiv = Vec::with_capacity(n);
    let mut fin = Vec::with_capacity(n);
    let (mut cw, mut cwi, mut cp, mut cf): (u128, u128, u128, u128) = (1, 1, 1, n_inv as u128);
    let pp = p as u128;
    for _ in 0..n {
        w.push(mont.to_mont(cw as u64));
        wi.push(mont.to_mont(cwi as u64));
        psiv.push(mont.to_mont(cp as u64));
        // fin = psi^{-i} n^{-1} R^2: to_mont twice
        fin.push(mont.mul(mont.to_mont(cf as u64), mont.r2));
        cw = cw * omega as u128 % pp;
        cwi = cwi * omega_inv as u128 % pp;
        cp = cp * psi as u128 % pp;
        cf = cf * psi_inv as u128 % pp;
    }
    let (w3, w3sq, w3i, w3isq) = if n % 3 == 0 {
        let m = n / 3;
        let a = w[m];
        let b = mont.mul(a, a);
        (a, b, b, a) // inverse of w3 is w3^2
    } else {
        (0, 0, 0, 0)
    };
    Tables { mont, n, w, wi, psi: psiv, fin, w3, w3sq, w3i, w3isq }
}

static CACHE: RwLock<Option<HashMap<(usize, usize), Arc<Tables>>>> = RwLock::new(None);

fn tables(prime_idx: usize, n: usize) -> Arc<Tables> {
    {
        let guard = CACHE.read().unwrap();
        if let Some(map) = guard.as_ref() {
            if let Some(t) = map.get(&(prime_idx, n)) {
                return Arc::clone(t);
            }
        }
    }
    let built = Arc::new(build_tables(prime_idx, n));
    let mut guard = CACHE.write().unwrap();
    guard
        .get_or_insert_with(HashMap::new)
        .entry((prime_idx, n))
        .or_insert_with(|| Arc::clone(&built))
        .clone()
}

/// Transform sizes: smallest element of {2^k, 3*2^k} >= need.
pub(crate) fn pick_size(need: usize) -> usize {
    let mut n = 2usize;
    loop {
        if n >= need {
            return n;
        }
        let n3 = n / 2 * 3;
        if n3 >= need && n3 >= 3 {
            return n3;
        }
        n <<= 1;
    }
}

/// Radix-2 decimation-in-frequency, natural order in, bit-reversed out.
/// Operates on a length-`len` block; twiddles are omega^(3^t * j * stride)
/// indexed through the full table.
fn dif_block(a: &mut [u64], t: &Tables, tw_step: usize) {
    let mont = t.mont;
    let m = a.len();
    let mut len = m / 2;
    while len >= 1 {
        let stride = m / (2 * len) * tw_step;
        let mut s = 0;
        while s < m {
            for j in 0..len {
                let u = a[s + j];
                let v = a[s + j + len];
                a[s + j] = mont.add(u, v);
                a[s + j + len] = mont.mul(mont.sub(u, v), t.w[(j * stride) % t.n]);
            }
            s += 2 * len;
        }
        len /= 2;
    }
}

/// Radix-2 decimation-in-time inverse, bit-reversed in, natural out.
fn dit_block(a: &mut [u64], t: &Tables, tw_step: usize) {
    let mont = t.mont;
    let m = a.len();
    let mut len = 1;
    while len < m {
        let stride = m / (2 * len) * tw_step;
        let mut s = 0;
        while s < m {
            for j in 0..len {
                let u = a[s + j];
                let v = mont.mul(a[s + j + len], t.wi[(j * stride) % t.n]);
                a[s + j] = mont.add(u, v);
                a[s + j + len] = mont.sub(u, v);
            }
            s += 2 * len;
        }
        len *= 2;
    }
}

fn forward(a: &mut [u64], t: &Tables) {
    let mont = t.mont;
    let n = t.n;
    if n % 3 == 0 {
        let m = n / 3;
        for j in 0..m {
            let x0 = a[j];
            let x1 = a[j + m];
            let x2 = a[j + 2 * m];
            let a0 = mont.add(mont.add(x0, x1), x2);
            let a1 = mont.add(mont.add(x0, mont.mul(x1, t.w3)), mont.mul(x2, t.w3sq));
            let a2 = mont.add(mont.add(x0, mont.mul(x1, t.w3sq)), mont.mul(x2, t.w3));
            a[j] = a0;
            a[j + m] = mont.mul(a1, t.w[j]);
            a[j + 2 * m] = mont.mul(a2, t.w[(2 * j) % n]);
        }
        for b in 0..3 {
            dif_block(&mut a[b * m..(b + 1) * m], t, 3);
        }
    } else {
        dif_block(a, t, 1);
    }
}

fn inverse(a: &mut [u64], t: &Tables) {
    let mont = t.mont;
    let n = t.n;
    if n % 3 == 0 {
        let m = n / 3;
        for b in 0..3 {
            dit_block(&mut a[b * m..(b + 1) * m], t, 3);
        }
        for j in 0..m {
            let b0 = a[j];
            let u1 = mont.mul(a[j + m], t.wi[j]);
            let u2 = mont.mul(a[j + 2 * m], t.wi[(2 * j) % n]);
            // x_s = (1/3) sum_r w3^(-s r) A_r; the 1/3 rides in `fin`.
            a[j] = mont.add(mont.add(b0, u1), u2);
            a[j + m] = mont.add(mont.add(b0, mont.mul(u1, t.w3i)), mont.mul(u2, t.w3isq));
            a[j + 2 * m] = mont.add(mont.add(b0, mont.mul(u1, t.w3isq)), mont.mul(u2, t.w3i));
        }
    } else {
        dit_block(a, t, 1);
    }
}

/// Modular multiplications performed by one length-n transform (twist
/// excluded): matches the loops above exactly.
fn butterfly_mults(n: usize) -> u64 {
    if n % 3 == 0 {
        let m = n / 3;
        let log_m = m.trailing_zeros() as u64;
        6 * m as u64 + 3 * (m as u64 / 2) * log_m
    } else {
        (n as u64 / 2) * n.trailing_zeros() as u64
    }
}

fn mul_128x64(a: u128, b: u64) -> (u128, u64) {
    let lo = (a as u64) as u128 * b as u128;
    let hi = (a >> 64) as u128 * b as u128;
    let mid = hi + (lo >> 64);
    let low = ((mid as u64 as u128) << 64) | (lo as u64 as u128);
    ((low), (mid >> 64) as u64)
}

fn add_192(a: (u128, u64), b: (u128, u64)) -> (u128, u64) {
    let (lo, c) = a.0.overflowing_add(b.0);
    (lo, a.1 + b.1 + c as u64)
}

pub(crate) struct CrtConsts {
    p1: u64,
    p3: u64,
    /// p1^{-1} mod p2, Montgomery form for m2
    inv_p1_mod_p2_m: u64,
    /// (p1 p2)^{-1} mod p3, Montgomery form for m3
    inv_p12_mod_p3_m: u64,
    p1p2: u128,
    /// p1*p2*p3 as a 192-bit (lo, hi) pair
    p_all: (u128, u64),
    m2: Mont,
    m3: Mont,
}

impl CrtConsts {
    fn get() -> &'static CrtConsts {
        use std::sync::OnceLock;
        static C: OnceLock<CrtConsts> = OnceLock::new();
        C.get_or_init(|| {
            let (p1, _) = PRIMES[0];
            let (p2, _) = PRIMES[1];
            let (p3, _) = PRIMES[2];
            let m2 = Mont::new(p2);
            let m3 = Mont::new(p3);
            let inv_p1_mod_p2_m = m2.to_mont(m2.powmod(p1 % p2, p2 - 2));
            let p1p2_mod_p3 = (p1 as u128 * p2 as u128 % p3 as u128) as u64;
            let inv_p12_mod_p3_m = m3.to_mont(m3.powmod(p1p2_mod_p3, p3 - 2));
            let p1p2 = p1 as u128 * p2 as u128;
            let p_all = mul_128x64(p1p2, p3);
            CrtConsts { p1, p3, inv_p1_mod_p2_m, inv_p12_mod_p3_m, p1p2, p_all, m2, m3 }
        })
    }

    /// Garner recombination of residues mod the three (ascending) primes into
    /// the unique value below p1*p2*p3, as a 192-bit (lo, hi) pair. Note
    /// mont.mul(plain, mont_form) yields a plain residue.
    pub(crate) fn combine(&self, r1: u64, r2: u64, r3: u64) -> (u128, u64) {
        let t2 = self.m2.mul(self.m2.sub(r2, r1), self.inv_p1_mod_p2_m);
        let v12: u128 = r1 as u128 + t2 as u128 * self.p1 as u128;
        let v12_mod_p3 = (v12 % self.p3 as u128) as u64;
        let t3 = self.m3.mul(self.m3.sub(r3, v12_mod_p3), self.inv_p12_mod_p3_m);
        add_192(mul_128x64(self.p1p2, t3), (v12, 0))
    }
}

/// Negacyclic convolution of 16-bit coefficient streams over one prime.
fn convolve_prime(c_a: &[u64], c_b: &[u64], prime_idx: usize, n: usize) -> (Vec<u64>, u64) {
    let t = tables(prime_idx, n);
    let mont = t.mont;
    let mut fa = vec![0u64; n];
    let mut fb = vec![0u64; n];
    for (i, &c) in c_a.iter().enumerate() {
        fa[i] = mont.mul(c, t.psi[i]);
    }
    for (i, &c) in c_b.iter().enumerate() {
        fb[i] = mont.mul(c, t.psi[i]);
    }
    forward(&mut fa, &t);
    forward(&mut fb, &t);
    for i in 0..n {
        fa[i] = mont.mul(fa[i], fb[i]);
    }
    inverse(&mut fa, &t);
    for i in 0..n {
        fa[i] = mont.mul(fa[i], t.fin[i]);
    }
    let cost = (c_a.len() + c_b.len()) as u64 // twists
        + 2 * butterfly_mults(n)
        + n as u64 // pointwise
        + butterfly_mults(n)
        + n as u64; // final untwist/scale
    (fa, cost)
}

/// Exact signed integer convolution for the power-series FFT path: inputs
/// are i128 coefficient images, |result coefficient| must stay below
/// p1 p2 p3 / 2 (callers bound scales accordingly). Returns the convolution
/// and the modular-multiplication count.
pub(crate) fn convolve_signed(a: &[i128], b: &[i128]) -> (Vec<i128>, u64) {
    let out_len = a.len() + b.len() - 1;
    let n = pick_size(out_len);
    let mut cost = 0u64;
    let mut results = Vec::with_capacity(3);
    for (pi, &(p, _)) in PRIMES.iter().enumerate() {
        let ca: Vec<u64> = a.iter().map(|&v| v.rem_euclid(p as i128) as u64).collect();
        let cb: Vec<u64> = b.iter().map(|&v| v.rem_euclid(p as i128) as u64).collect();
        let (r, c) = convolve_prime(&ca, &cb, pi, n);
        results.push(r);
        cost += c;
    }
    cost += 2 * (a.len() + b.len()) as u64; // residue imaging
    let crt = CrtConsts::get();
    let half = {
        // floor(p1 p2 p3 / 2)
        let (lo, hi) = crt.p_all;
        ((lo >> 1) | ((hi as u128 & 1) << 127), hi >> 1)
    };
    let mut out = Vec::with_capacity(out_len);
    for i in 0..out_len {
        let v = crt.combine(results[0][i], results[1][i], results[2][i]);
        let negative = v.1 > half.1 || (v.1 == half.1 && v.0 > half.0);
        if negative {
            // magnitude = P - v
            let (lo, borrow) = crt.p_all.0.overflowing_sub(v.0);
            let hi = crt.p_all.1 - v.1 - borrow as u64;
            debug_assert!(hi == 0 && lo < 1u128 << 127, "negative magnitude exceeds i128");
            out.push(-(lo as i128));
        } else {
            debug_assert!(v.1 == 0 && v.0 < 1u128 << 127, "magnitude exceeds i128");
            out.push(v.0 as i128);
        }
    }
    cost += 4 * out_len as u64;
    (out, cost)
}

/// How many full convolution coefficients may overhang the transform size;
/// the overhang is recomputed directly and the negacyclic wrap undone, which
/// keeps guard-bit-sized operands on the cheaper transform.
const WRAP_FOLD: usize = 4;

fn to_coeffs(limbs: &[u64]) -> (Vec<u64>, usize) {
    let mut c: Vec<u64> = limbs
        .iter()
        .flat_map(|&l| (0..4).map(move |j| (l >> (16 * j)) & 0xffff))
        .collect();
    // Fraction tails are masked to the precision, so the low end starts with
    // a short run of zero coefficients: factor those out as an output offset
    // so guard-bit-sized operands stay on the cheaper transform. The trim is
    // capped: a precision-n multiplication costs M(n) even when an operand
    // carries long zero runs, matching the cost model the meter reports in.
    let lead = c.iter().take_while(|&&v| v == 0).count().min(c.len() - 1).min(WRAP_FOLD);
    if lead > 0 {
        c.drain(..lead);
    }
    (c, lead)
}

/// Exact product of little-endian limb vectors, plus the operation count.
pub(crate) fn multiply_le(a: &[u64], b: &[u64]) -> (Vec<u64>, u64) {
    let (ca, za) = to_coeffs(a);
    let (cb, zb) = to_coeffs(b);
    let conv_len = ca.len() + cb.len() - 1;
    // both inputs must fit the transform; only the product may overhang
    let n = pick_size(
        conv_len
            .saturating_sub(WRAP_FOLD)
            .max(ca.len())
            .max(cb.len())
            .max(2),
    );
    let mut cost = 0u64;

    // Tail coefficients past the transform length, computed directly.
    let overhang = conv_len.saturating_sub(n);
    let mut tails = vec![0u128; overhang];
    for (t, tail) in tails.iter_mut().enumerate() {
        let k = n + t;
        let lo = (k + 1).saturating_sub(cb.len());
        for i in lo..ca.len().min(k + 1) {
            *tail += (ca[i] * cb[k - i]) as u128;
            cost += 1;
        }
    }

    let (r1, c1) = convolve_prime(&ca, &cb, 0, n);
    let (r2, c2) = convolve_prime(&ca, &cb, 1, n);
    let (r3, c3) = convolve_prime(&ca, &cb, 2, n);
    cost += c1 + c2 + c3;
    let crt = CrtConsts::get();

    let out_limbs = a.len() + b.len();
    let mut out = vec![0u64; out_limbs];
    let mut acc: u128 = 0;
    let offset = za + zb;
    for i in 0..(out_limbs * 4).saturating_sub(offset) {
        if i < conv_len.min(n) {
            let mut v = crt.combine(r1[i], r2[i], r3[i]);
            if i < overhang {
                // negacyclic wrap: the slot holds (c_i - c_{i+n}) mod P;
                // adding the directly computed c_{i+n} recovers c_i mod P,
                // and c_i is far below P, so one conditional subtract fixes it.
                v = add_192(v, (tails[i], 0));
                if v.1 > crt.p_all.1 || (v.1 == crt.p_all.1 && v.0 >= crt.p_all.0) {
                    let (lo, borrow) = v.0.overflowing_sub(crt.p_all.0);
                    v = (lo, v.1 - crt.p_all.1 - borrow as u64);
                }
            }
            debug_assert_eq!(v.1, 0, "convolution coefficient exceeded 128 bits");
            acc += v.0;
        } else if i >= n && i - n < overhang {
            acc += tails[i - n];
        }
        let pos = i + offset;
        out[pos / 4] |= ((acc as u64) & 0xffff) << (16 * (pos % 4));
        acc >>= 16;
    }
    cost += 4 * conv_len.min(n) as u64; // CRT recombination multiplies
    debug_assert_eq!(acc, 0, "product overflowed expected limb count");
    (out, cost)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::float::mul::schoolbook_le;

    #[test]
    fn primes_are_prime_and_generators_generate() {
        for &(p, g) in PRIMES.iter() {
            assert!(miller_rabin(p), "{p} not prime");
            assert_eq!((p - 1) % (3 << 41), 0, "{p} lacks 3*2^41 | p-1");
            let m = Mont::new(p);
            // g is a generator iff g^((p-1)/q) != 1 for every prime q | p-1
            let mut fac = vec![2u64, 3];
            let mut rest = (p - 1) >> ((p - 1).trailing_zeros());
            while rest % 3 == 0 {
                rest /= 3;
            }
            let mut d = 3u64;
            while d * d <= rest {
                if rest % d == 0 {
                    fac.push(d);
                    while rest % d == 0 {
                        rest /= d;
                    }
                }
                d += 2;
            }
            if rest > 1 {
                fac.push(rest);
            }
            for q in fac {
                assert_ne!(m.powmod(g, (p - 1) / q), 1, "g={g} not a generator for {p}");
            }
        }
    }

    fn miller_rabin(n: u64) -> bool {
        if n < 2 {
            return false;
        }
        for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            if n % p == 0 {
                return n == p;
            }
        }
        let m = Mont::new(n);
        let d = (n - 1) >> (n - 1).trailing_zeros();
        let s = (n - 1).trailing_zeros();
        'outer: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
            let mut x = m.powmod(a, d);
            if x == 1 || x == n - 1 {
                continue;
            }
            for _ in 0..s - 1 {
                x = (x as u128 * x as u128 % n as u128) as u64;
                if x == n - 1 {
                    continue 'outer;
                }
            }
            return false;
        }
        true
    }

    fn naive_negacyclic(a: &[u64], b: &[u64], n: usize, p: u64) -> Vec<u64> {
        let mut out = vec![0i128; n];
        for i in 0..a.len() {
            for j in 0..b.len() {
                let prod = (a[i] as i128) * (b[j] as i128) % p as i128;
                if i + j < n {
                    out[i + j] = (out[i + j] + prod) % p as i128;
                } else {
                    out[i + j - n] = (out[i + j - n] - prod).rem_euclid(p as i128);
                }
            }
        }
        out.into_iter().map(|v| v.rem_euclid(p as i128) as u64).collect()
    }

    #[test]
    fn transform_matches_naive_negacyclic() {
        for &n in &[2usize, 4, 6, 8, 12, 16, 24, 48] {
            let a: Vec<u64> = (0..n as u64 / 2 + 1).map(|i| (i * 7919 + 13) % 65536).collect();
            let b: Vec<u64> = (0..n as u64 / 2).map(|i| (i * 104729 + 7) % 65536).collect();
            for pi in 0..3 {
                let (got, _) = convolve_prime(&a, &b, pi, n);
                let want = naive_negacyclic(&a, &b, n, PRIMES[pi].0);
                assert_eq!(got, want, "n={n} prime {pi}");
            }
        }
    }

    #[test]
    fn ntt_product_matches_schoolbook() {
        // (7,6) makes the convolution overhang the transform by 3
        // coefficients, exercising the wrap-fold; (9,4) has uneven lengths.
        for (la, lb) in [(1usize, 1usize), (2, 2), (3, 3), (5, 5), (17, 17), (64, 64), (100, 100), (7, 6), (9, 4)] {
            let a: Vec<u64> = (0..la as u64).map(|i| i.wrapping_mul(0x9e3779b97f4a7c15) | 1).collect();
            let b: Vec<u64> = (0..lb as u64).map(|i| i.wrapping_mul(0xbf58476d1ce4e5b9) | 1).collect();
            let (ntt, _) = multiply_le(&a, &b);
            let mut sb = schoolbook_le(&a, &b);
            sb.resize(la + lb, 0);
            assert_eq!(ntt, sb, "la={la} lb={lb}");
        }
    }

    #[test]
    fn ntt_handles_masked_tails() {
        // fraction-style operands: low bits masked to zero (odd precisions)
        let mut a = vec![0u64; 9];
        let mut b = vec![0u64; 5];
        for (i, v) in a.iter_mut().enumerate() {
            *v = (i as u64 + 1).wrapping_mul(0x2545f4914f6cdd1d);
        }
        for (i, v) in b.iter_mut().enumerate() {
            *v = (i as u64 + 3).wrapping_mul(0x9e3779b97f4a7c15);
        }
        a[0] &= !0xffff_ffff; // 32 zero low bits
        b[0] &= !0xff_ffff_ffff; // 40 zero low bits
        let (ntt, _) = multiply_le(&a, &b);
        let mut sb = schoolbook_le(&a, &b);
        sb.resize(a.len() + b.len(), 0);
        assert_eq!(ntt, sb);
    }

    #[test]
    fn pick_size_ladder() {
        assert_eq!(pick_size(2), 2);
        assert_eq!(pick_size(3), 3);
        assert_eq!(pick_size(5), 6);
        assert_eq!(pick_size(7), 8);
        assert_eq!(pick_size(9), 12);
        assert_eq!(pick_size(13), 16);
        assert_eq!(pick_size(17), 24);
        assert_eq!(pick_size(25), 32);
    }
}

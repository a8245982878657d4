//! Backend crossover thresholds. The points where Karatsuba beats schoolbook
//! and the NTT beats Karatsuba are machine dependent, so they live in a
//! key=value config file produced by a calibration run; `MPBRENT_CALIB`
//! points at it. Without a file, built-in defaults measured on a commodity
//! x86-64 box apply.

use crate::error::{Error, Result};
use std::path::Path;
use std::sync::OnceLock;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Thresholds {
    /// Smallest operand size (limbs) at which Auto picks Karatsuba.
    pub t1_limbs: usize,
    /// Smallest operand size (limbs) at which Auto picks the NTT.
    pub t2_limbs: usize,
}

impl Default for Thresholds {
    fn default() -> Self {
        Thresholds { t1_limbs: 16, t2_limbs: 112 }
    }
}

static GLOBAL: OnceLock<Thresholds> = OnceLock::new();

impl Thresholds {
    /// Process-wide thresholds: parsed once from `MPBRENT_CALIB` if set,
    /// defaults otherwise.
    pub fn global() -> Thresholds {
        *GLOBAL.get_or_init(|| {
            if let Ok(path) = std::env::var("MPBRENT_CALIB") {
                if let Ok(t) = Thresholds::load(Path::new(&path)) {
                    return t;
                }
            }
            Thresholds::default()
        })
    }

    pub fn load(path: &Path) -> Result<Thresholds> {
        let text = std::fs::read_to_string(path)?;
        let mut t = Thresholds::default();
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("calibration line without '=': {line}")))?;
            let v: usize = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad calibration value: {line}")))?;
            match k.trim() {
                "t1_limbs" => t.t1_limbs = v,
                "t2_limbs" => t.t2_limbs = v,
                other => return Err(Error::Parse(format!("unknown calibration key: {other}"))),
            }
        }
        if t.t1_limbs < 2 || t.t2_limbs <= t.t1_limbs {
            return Err(Error::Parse("thresholds must satisfy 2 <= t1 < t2".into()));
        }
        Ok(t)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        let text = format!(
            "# multiplication backend crossover points, in 64-bit limbs\nt1_limbs = {}\nt2_limbs = {}\n",
            self.t1_limbs, self.t2_limbs
        );
        std::fs::write(path, text)?;
        Ok(())
    }
}

/// Time the three backends over a ladder of sizes and pick crossover points.
/// Wall-clock based, so only meaningful on a quiet machine; intended to run
/// from the ignored `calibration` test or a one-off dev invocation.
pub fn calibrate() -> Thresholds {
    use crate::float::mul;
    use crate::meter::{Backend, CostMeter};
    use std::time::Instant;

    let time_one = |backend: Backend, limbs: usize| -> f64 {
        let n = (limbs * 64) as u32;
        let x = pseudo_random_value(n, 0x9e3779b97f4a7c15);
        let y = pseudo_random_value(n, 0xbf58476d1ce4e5b9);
        let mut meter = CostMeter::with_thresholds(backend, Thresholds::default());
        let reps = (200 / limbs).max(1);
        // warm caches (NTT twiddles)
        mul(&x, &y, n, &mut meter).unwrap();
        let t0 = Instant::now();
        for _ in 0..reps {
            std::hint::black_box(mul(&x, &y, n, &mut meter).unwrap());
        }
        t0.elapsed().as_secs_f64() / reps as f64
    };

    let mut t1 = Thresholds::default().t1_limbs;
    for limbs in (4..=96).step_by(4) {
        if time_one(Backend::Karatsuba, limbs) < time_one(Backend::Schoolbook, limbs) {
            t1 = limbs;
            break;
        }
    }
    let mut t2 = Thresholds::default().t2_limbs;
    for limbs in (32..=1024).step_by(16) {
        if limbs <= t1 {
            continue;
        }
        if time_one(Backend::Ntt, limbs) < time_one(Backend::Karatsuba, limbs) {
            t2 = limbs;
            break;
        }
    }
    Thresholds { t1_limbs: t1.max(2), t2_limbs: t2.max(t1 + 1) }
}

/// Deterministic filler value for calibration and benches.
pub fn pseudo_random_value(n: u32, seed: u64) -> crate::float::MPFloat {
    let nl = ((n as usize) + 63) / 64;
    let mut limbs = Vec::with_capacity(nl);
    let mut s = seed;
    for _ in 0..nl {
        // splitmix64
        s = s.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = s;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        limbs.push(z ^ (z >> 31));
    }
    limbs[0] |= 1u64 << 63;
    let mut v = crate::float::MPFloat::from_parts(1, 0, limbs, nl as u32 * 64);
    v = v.round_to(n.max(1));
    v
}

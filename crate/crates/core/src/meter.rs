//! Cost instrumentation. Every multiplication reports a backend-specific
//! operation count (u64 limb products for schoolbook/Karatsuba, modular
//! multiplications for the NTT) to the meter owning the computation, and
//! labeled phases turn those counts into ratios against the measured cost of
//! a single multiplication at the same precision.
//!
//! A meter is explicitly passed per computation and must not be shared by two
//! concurrent computations.

use crate::calib::Thresholds;
use crate::error::{Error, Result};
use std::collections::BTreeMap;
use std::fmt;
use std::time::Instant;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Backend {
    Schoolbook,
    Karatsuba,
    Ntt,
    /// Pick by operand size: schoolbook below T1 limbs, Karatsuba in
    /// [T1, T2), NTT at or above T2.
    Auto,
}

impl Backend {
    pub fn name(&self) -> &'static str {
        match self {
            Backend::Schoolbook => "schoolbook",
            Backend::Karatsuba => "karatsuba",
            Backend::Ntt => "ntt",
            Backend::Auto => "auto",
        }
    }
}

impl std::str::FromStr for Backend {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "schoolbook" => Ok(Backend::Schoolbook),
            "karatsuba" => Ok(Backend::Karatsuba),
            "ntt" => Ok(Backend::Ntt),
            "auto" => Ok(Backend::Auto),
            _ => Err(Error::Parse(format!("unknown backend: {s}"))),
        }
    }
}

#[derive(Clone, Debug)]
struct Row {
    label: String,
    /// Precision the operation was requested at.
    precision: u32,
    /// Highest precision at which a multiplication ran inside the phase; the
    /// ratio denominator is the single-mul cost at this precision.
    ref_precision: u32,
    calls: u64,
    limb_mults: u64,
    wall_ns: u128,
}

struct Open {
    row: usize,
    start_mults: u64,
    started: Instant,
    ref_precision: u32,
}

/// Counters are monotone while a computation runs; `reset` is the only way
/// down. Single writer per computation.
pub struct CostMeter {
    backend: Backend,
    thresholds: Thresholds,
    limb_mults: u64,
    mults_by_precision: BTreeMap<u32, u64>,
    single_mul_cost: BTreeMap<u32, u64>,
    rows: Vec<Row>,
    stack: Vec<Open>,
}

impl CostMeter {
    pub fn new(backend: Backend) -> Self {
        CostMeter {
            backend,
            thresholds: Thresholds::global(),
            limb_mults: 0,
            mults_by_precision: BTreeMap::new(),
            single_mul_cost: BTreeMap::new(),
            rows: Vec::new(),
            stack: Vec::new(),
        }
    }

    pub fn with_thresholds(backend: Backend, thresholds: Thresholds) -> Self {
        let mut m = Self::new(backend);
        m.thresholds = thresholds;
        m
    }

    /// Scratch meter for callers that do not care about instrumentation.
    pub fn unmetered() -> Self {
        Self::new(Backend::Auto)
    }

    pub fn backend(&self) -> Backend {
        self.backend
    }
    pub fn thresholds(&self) -> Thresholds {
        self.thresholds
    }
    pub fn limb_mults(&self) -> u64 {
        self.limb_mults
    }
    pub fn mults_by_precision(&self) -> &BTreeMap<u32, u64> {
        &self.mults_by_precision
    }
    /// Operation count of one multiplication at precision `n`, if one ran.
    pub fn single_mul_cost(&self, n: u32) -> Option<u64> {
        self.single_mul_cost.get(&n).copied()
    }

    pub fn reset(&mut self) {
        self.limb_mults = 0;
        self.mults_by_precision.clear();
        self.single_mul_cost.clear();
        self.rows.clear();
        self.stack.clear();
    }

    pub(crate) fn record_mul(&mut self, n: u32, cost: u64) {
        self.limb_mults += cost;
        *self.mults_by_precision.entry(n).or_insert(0) += 1;
        self.single_mul_cost.insert(n, cost);
        if self.stack.is_empty() {
            let row = self.row_index("mul", n);
            self.rows[row].calls += 1;
            self.rows[row].limb_mults += cost;
            self.rows[row].ref_precision = self.rows[row].ref_precision.max(n);
        } else {
            for open in &mut self.stack {
                open.ref_precision = open.ref_precision.max(n);
            }
        }
    }

    fn row_index(&mut self, label: &str, precision: u32) -> usize {
        if let Some(i) = self
            .rows
            .iter()
            .position(|r| r.label == label && r.precision == precision)
        {
            return i;
        }
        self.rows.push(Row {
            label: label.to_string(),
            precision,
            ref_precision: 0,
            calls: 0,
            limb_mults: 0,
            wall_ns: 0,
        });
        self.rows.len() - 1
    }

    pub fn begin(&mut self, label: &str, precision: u32) {
        let row = self.row_index(label, precision);
        self.stack.push(Open {
            row,
            start_mults: self.limb_mults,
            started: Instant::now(),
            ref_precision: 0,
        });
    }

    pub fn end(&mut self) {
        let open = self.stack.pop().expect("CostMeter::end without begin");
        let delta = self.limb_mults - open.start_mults;
        let wall = open.started.elapsed().as_nanos();
        let row = &mut self.rows[open.row];
        row.calls += 1;
        row.limb_mults += delta;
        row.wall_ns += wall;
        row.ref_precision = row.ref_precision.max(open.ref_precision);
        // A nested phase's reference precision also informs its parent.
        if let Some(parent) = self.stack.last_mut() {
            parent.ref_precision = parent.ref_precision.max(open.ref_precision);
        }
    }

    pub fn scoped<T>(&mut self, label: &str, precision: u32, f: impl FnOnce(&mut Self) -> T) -> T {
        self.begin(label, precision);
        let out = f(self);
        self.end();
        out
    }
}

#[derive(Clone, Debug)]
pub struct ReportRow {
    pub label: String,
    pub precision: u32,
    pub ref_precision: u32,
    pub calls: u64,
    pub limb_mults: u64,
    pub wall_ns: u128,
    /// Per-call cost divided by the cost of one multiplication at
    /// `ref_precision` on the same backend, from the same meter run.
    pub ratio_to_mul: f64,
}

#[derive(Clone, Debug)]
pub struct Report {
    pub backend: Backend,
    pub rows: Vec<ReportRow>,
}

/// Deterministic cost table: one row per (label, requested precision), each
/// with its ratio to a same-run single multiplication.
pub fn meter_report(meter: &CostMeter) -> Result<Report> {
    let mut rows = Vec::new();
    for r in &meter.rows {
        if r.ref_precision == 0 || r.calls == 0 {
            continue; // phase ran no multiplications; no ratio is defined
        }
        let unit = meter
            .single_mul_cost
            .get(&r.ref_precision)
            .copied()
            .ok_or(Error::EmptyMeterReport)?;
        rows.push(ReportRow {
            label: r.label.clone(),
            precision: r.precision,
            ref_precision: r.ref_precision,
            calls: r.calls,
            limb_mults: r.limb_mults,
            wall_ns: r.wall_ns,
            ratio_to_mul: r.limb_mults as f64 / (r.calls as f64 * unit as f64),
        });
    }
    if rows.is_empty() {
        return Err(Error::EmptyMeterReport);
    }
    rows.sort_by(|a, b| (&a.label, a.precision).cmp(&(&b.label, b.precision)));
    Ok(Report { backend: meter.backend, rows })
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{:<14} {:>10} {:>8} {:>14} {:>10}", "op", "n_bits", "calls", "limb_mults", "ratio")?;
        for r in &self.rows {
            writeln!(
                f,
                "{:<14} {:>10} {:>8} {:>14} {:>10.3}",
                r.label, r.precision, r.calls, r.limb_mults, r.ratio_to_mul
            )?;
        }
        Ok(())
    }
}

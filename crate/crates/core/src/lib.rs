//! Arbitrary-precision numerical kernel built around the arithmetic-geometric
//! mean: precision-scheduled Newton basic operations, AGM-based pi, log, exp
//! and trigonometric functions, variable-precision zero finders with cost
//! accounting, and truncated formal power series, all instrumented against
//! the cost of a single multiplication.

pub mod basic;
pub mod bench;
pub mod calib;
pub mod complex;
pub mod elem;
pub mod error;
pub mod float;
pub mod meter;
pub mod series;
pub mod zero;

pub use error::{Error, Result};
pub use float::{add, div_u64, mul, mul_u64, sub, DigitMode, MPFloat};
pub use meter::{meter_report, Backend, CostMeter, Report, ReportRow};

//! Solar geometry, PV tilt schedules and clear-sky insolation gains.
//!
//! - [`geometry`]: declination, noon elevation/zenith, sun position, sunrise.
//! - [`schedule`]: daily noon-rule tilt, tilt extremes, monthly and seasonal
//!   schedules, and tilt policies.
//! - [`irradiance`]: clear-sky beam model and insolation integration.
//! - [`optimize`]: brute-force fixed-tilt search and gain reports.
//! - [`output`] and [`cli`]: tables, charts, SVG and the command line.

pub mod cli;
pub mod error;
pub mod geometry;
pub mod irradiance;
pub mod optimize;
pub mod output;
pub mod schedule;

pub use error::{Error, Result};
pub use geometry::{DayOfYear, HourAngle, Location, SolarAngles};
pub use schedule::{TiltMode, TiltPolicy};

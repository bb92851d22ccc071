//! Panel tilt schedules for an equator-facing panel in the northern
//! hemisphere: the daily noon rule, monthly linear schedules and their
//! seasonal (quarterly) averages.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{DayOfYear, DeclinationModel, Location, OBLIQUITY_DEG};

pub const MAX_TILT_DEG: f64 = 90.0;

/// Offsets from latitude of the published monthly table, January first.
/// They follow the linear schedule between `+23.45` and `-24.45` (the
/// published minimum of 8.25 at latitude 32.7) with the table's own
/// rounding, e.g. March prints `+7.49` where the line gives `+7.483`.
pub const PUBLISHED_MONTHLY_OFFSETS: [f64; 12] = [
    23.45, 15.47, 7.49, -0.5, -8.48, -16.46, -24.45, -16.46, -8.48, -0.5, 7.49, 15.47,
];

/// Offset of the published minimum tilt from latitude (8.25 at 32.7).
pub const PUBLISHED_MIN_OFFSET_DEG: f64 = -24.45;

const MONTH_LENGTHS: [u16; 12] = [31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31];
const MONTH_NAMES: [&str; 12] = [
    "January",
    "February",
    "March",
    "April",
    "May",
    "June",
    "July",
    "August",
    "September",
    "October",
    "November",
    "December",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TiltMode {
    /// Reproduces the published tables, including the one-degree
    /// asymmetry of their minimum tilt and their rounding.
    Paper,
    /// Symmetric `±23.45` offsets.
    #[default]
    Exact,
}

impl TiltMode {
    pub fn as_str(self) -> &'static str {
        match self {
            TiltMode::Paper => "paper",
            TiltMode::Exact => "exact",
        }
    }
}

impl fmt::Display for TiltMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TiltMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(TiltMode::Paper),
            "exact" => Ok(TiltMode::Exact),
            other => Err(Error::Usage(format!(
                "unknown tilt mode '{other}' (expected paper|exact)"
            ))),
        }
    }
}

/// Calendar month of a 365-day year, January = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Month(u8);

impl Month {
    pub fn new(n: i64) -> Result<Self> {
        if (1..=12).contains(&n) {
            Ok(Self(n as u8))
        } else {
            Err(Error::MonthOutOfRange(n))
        }
    }

    pub fn all() -> impl Iterator<Item = Month> {
        (1..=12).map(Month)
    }

    pub fn number(self) -> u8 {
        self.0
    }

    fn index(self) -> usize {
        usize::from(self.0 - 1)
    }

    pub fn name(self) -> &'static str {
        MONTH_NAMES[self.index()]
    }

    pub fn first_day(self) -> DayOfYear {
        let before: u16 = MONTH_LENGTHS[..self.index()].iter().sum();
        DayOfYear::new(i64::from(before) + 1).expect("month start is a valid day")
    }

    pub fn last_day(self) -> DayOfYear {
        let through: u16 = MONTH_LENGTHS[..=self.index()].iter().sum();
        DayOfYear::new(i64::from(through)).expect("month end is a valid day")
    }

    /// The 21st, which lines up with the solstice and equinox dates.
    pub fn representative_day(self) -> DayOfYear {
        DayOfYear::new(i64::from(self.first_day().get()) + 20).expect("21st is a valid day")
    }

    pub fn of_day(day: DayOfYear) -> Month {
        let mut end = 0;
        for (i, len) in MONTH_LENGTHS.iter().enumerate() {
            end += len;
            if day.get() <= end {
                return Month(i as u8 + 1);
            }
        }
        unreachable!("day {} beyond December", day.get())
    }

    pub fn season(self) -> Season {
        Season::ALL[self.index() / 3]
    }
}

/// Calendar quarters. Averaging the monthly table over Jan-Mar, Apr-Jun,
/// Jul-Sep and Oct-Dec reproduces the published seasonal tilts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Season {
    Winter,
    Spring,
    Summer,
    Fall,
}

impl Season {
    pub const ALL: [Season; 4] = [Season::Winter, Season::Spring, Season::Summer, Season::Fall];

    pub fn name(self) -> &'static str {
        match self {
            Season::Winter => "winter",
            Season::Spring => "spring",
            Season::Summer => "summer",
            Season::Fall => "fall",
        }
    }

    pub fn months(self) -> [Month; 3] {
        let first = self.index() as u8 * 3 + 1;
        [Month(first), Month(first + 1), Month(first + 2)]
    }

    fn index(self) -> usize {
        match self {
            Season::Winter => 0,
            Season::Spring => 1,
            Season::Summer => 2,
            Season::Fall => 3,
        }
    }
}

fn clamp_tilt(beta: f64) -> f64 {
    beta.clamp(0.0, MAX_TILT_DEG)
}

/// Noon-rule tilt for one day.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DailyTilt {
    pub day: DayOfYear,
    /// Tilt clamped to [0, 90].
    pub tilt_deg: f64,
    /// `latitude - declination` before clamping.
    pub unclamped_deg: f64,
}

impl DailyTilt {
    pub fn is_clamped(&self) -> bool {
        self.tilt_deg != self.unclamped_deg
    }
}

/// Tilt that puts the panel normal on the noon sun: `β = 90 - α = φ - δ`.
pub fn daily_tilt(loc: Location, day: DayOfYear) -> Result<DailyTilt> {
    daily_tilt_with(loc, day, DeclinationModel::Exact)
}

pub fn daily_tilt_with(
    loc: Location,
    day: DayOfYear,
    model: DeclinationModel,
) -> Result<DailyTilt> {
    loc.require_northern()?;
    let unclamped_deg = loc.latitude_deg() - model.declination_deg(day);
    Ok(DailyTilt {
        day,
        tilt_deg: clamp_tilt(unclamped_deg),
        unclamped_deg,
    })
}

/// Noon-rule tilt on the 21st of every month.
pub fn representative_day_tilts(loc: Location) -> Result<Vec<DailyTilt>> {
    Month::all()
        .map(|m| daily_tilt(loc, m.representative_day()))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TiltExtremes {
    pub mode: TiltMode,
    pub min_deg: f64,
    pub max_deg: f64,
}

impl TiltExtremes {
    /// Set in paper mode, where the minimum sits one degree below the
    /// symmetric `latitude - 23.45`.
    pub fn note(&self, loc: Location) -> Option<String> {
        match self.mode {
            TiltMode::Exact => None,
            TiltMode::Paper => {
                let exact_min = clamp_tilt(loc.latitude_deg() - OBLIQUITY_DEG);
                Some(format!(
                    "paper-mode minimum tilt {:.2} differs from latitude - 23.45 = {:.2} by {:.2} deg",
                    self.min_deg,
                    exact_min,
                    exact_min - self.min_deg
                ))
            }
        }
    }
}

/// Minimum (summer solstice) and maximum (winter solstice) tilts.
pub fn tilt_extremes(loc: Location, mode: TiltMode) -> Result<TiltExtremes> {
    loc.require_northern()?;
    let phi = loc.latitude_deg();
    let min_offset = match mode {
        TiltMode::Exact => -OBLIQUITY_DEG,
        TiltMode::Paper => PUBLISHED_MIN_OFFSET_DEG,
    };
    Ok(TiltExtremes {
        mode,
        min_deg: clamp_tilt(phi + min_offset),
        max_deg: clamp_tilt(phi + OBLIQUITY_DEG),
    })
}

/// Offsets from latitude that fall linearly from `max_offset` in January to
/// `min_offset` in July and climb back by the same step through December.
pub fn linear_monthly_offsets(max_offset: f64, min_offset: f64) -> [f64; 12] {
    let step = (max_offset - min_offset) / 6.0;
    std::array::from_fn(|i| {
        let n = i as f64 + 1.0;
        if i < 7 {
            max_offset - (n - 1.0) * step
        } else {
            min_offset + (n - 7.0) * step
        }
    })
}

pub fn monthly_offsets(mode: TiltMode) -> [f64; 12] {
    match mode {
        TiltMode::Paper => PUBLISHED_MONTHLY_OFFSETS,
        TiltMode::Exact => linear_monthly_offsets(OBLIQUITY_DEG, -OBLIQUITY_DEG),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonthlySchedule {
    pub latitude_deg: f64,
    pub mode: TiltMode,
    pub offsets_deg: [f64; 12],
    /// `latitude + offset`, clamped to [0, 90].
    pub betas_deg: [f64; 12],
}

impl MonthlySchedule {
    pub fn tilt(&self, month: Month) -> f64 {
        self.betas_deg[month.index()]
    }

    pub fn tilt_for_day(&self, day: DayOfYear) -> f64 {
        self.tilt(Month::of_day(day))
    }
}

pub fn monthly_schedule(loc: Location, mode: TiltMode) -> Result<MonthlySchedule> {
    loc.require_northern()?;
    let phi = loc.latitude_deg();
    let offsets_deg = monthly_offsets(mode);
    Ok(MonthlySchedule {
        latitude_deg: phi,
        mode,
        offsets_deg,
        betas_deg: offsets_deg.map(|o| clamp_tilt(phi + o)),
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeasonalSchedule {
    pub latitude_deg: f64,
    pub mode: TiltMode,
    /// Mean monthly tilt per season, full precision.
    pub betas_deg: [f64; 4],
    /// `beta - latitude` per season.
    pub delta_deg: [f64; 4],
}

impl SeasonalSchedule {
    pub fn tilt(&self, season: Season) -> f64 {
        self.betas_deg[season.index()]
    }

    pub fn tilt_for_day(&self, day: DayOfYear) -> f64 {
        self.tilt(Month::of_day(day).season())
    }

    /// Tilts rounded to whole degrees, for display.
    pub fn rounded(&self) -> [i64; 4] {
        self.betas_deg.map(|b| b.round() as i64)
    }
}

pub fn seasonal_schedule(loc: Location, mode: TiltMode) -> Result<SeasonalSchedule> {
    Ok(seasonal_from_monthly(&monthly_schedule(loc, mode)?))
}

pub fn seasonal_from_monthly(monthly: &MonthlySchedule) -> SeasonalSchedule {
    let betas_deg =
        Season::ALL.map(|s| s.months().iter().map(|&m| monthly.tilt(m)).sum::<f64>() / 3.0);
    SeasonalSchedule {
        latitude_deg: monthly.latitude_deg,
        mode: monthly.mode,
        betas_deg,
        delta_deg: betas_deg.map(|b| b - monthly.latitude_deg),
    }
}

/// Maps every day of the year to a panel tilt.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "policy", rename_all = "lowercase")]
pub enum TiltPolicy {
    Fixed { tilt_deg: f64 },
    Seasonal(SeasonalSchedule),
    Monthly(MonthlySchedule),
    Daily { location: Location },
}

impl TiltPolicy {
    pub fn fixed(tilt_deg: f64) -> Result<Self> {
        if !(0.0..=MAX_TILT_DEG).contains(&tilt_deg) {
            return Err(Error::TiltOutOfRange(tilt_deg));
        }
        Ok(TiltPolicy::Fixed { tilt_deg })
    }

    pub fn daily(loc: Location) -> Result<Self> {
        loc.require_northern()?;
        Ok(TiltPolicy::Daily { location: loc })
    }

    pub fn tilt_for_day(&self, day: DayOfYear) -> f64 {
        match self {
            TiltPolicy::Fixed { tilt_deg } => *tilt_deg,
            TiltPolicy::Seasonal(s) => s.tilt_for_day(day),
            TiltPolicy::Monthly(m) => m.tilt_for_day(day),
            TiltPolicy::Daily { location } => {
                // northern latitude checked on construction
                clamp_tilt(location.latitude_deg() - DeclinationModel::Exact.declination_deg(day))
            }
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            TiltPolicy::Fixed { .. } => "fixed",
            TiltPolicy::Seasonal(_) => "seasonal",
            TiltPolicy::Monthly(_) => "monthly",
            TiltPolicy::Daily { .. } => "daily",
        }
    }
}

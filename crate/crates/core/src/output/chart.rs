use std::str::FromStr;

use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};

use super::{Fixed, RunConfig};
use crate::error::{Error, Result};
use crate::geometry::{sun_position, sunrise_hour_angle, DayOfYear, HourAngle, Location};
use crate::schedule::{daily_tilt, Month, TiltMode};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ChartKind {
    /// Sun elevation against solar hour, one series per day.
    Sunpath,
    /// Noon-rule tilt against day of year.
    Tilt,
}

impl ChartKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ChartKind::Sunpath => "sunpath",
            ChartKind::Tilt => "tilt",
        }
    }
}

impl FromStr for ChartKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "sunpath" => Ok(ChartKind::Sunpath),
            "tilt" => Ok(ChartKind::Tilt),
            other => Err(Error::Usage(format!(
                "unknown chart kind '{other}' (expected sunpath|tilt)"
            ))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SeriesMetadata {
    pub latitude_deg: f64,
    pub mode: Option<TiltMode>,
    pub units: String,
}

/// One plottable line. `x` is strictly increasing and as long as `y`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartSeries {
    pub name: String,
    pub x_label: String,
    pub y_label: String,
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub x_decimals: usize,
    pub metadata: SeriesMetadata,
}

impl ChartSeries {
    pub fn new(
        name: impl Into<String>,
        x_label: impl Into<String>,
        y_label: impl Into<String>,
        x: Vec<f64>,
        y: Vec<f64>,
        x_decimals: usize,
        metadata: SeriesMetadata,
    ) -> Result<Self> {
        let name = name.into();
        if x.len() != y.len() {
            return Err(Error::InvalidSeries {
                name,
                reason: format!("{} x values but {} y values", x.len(), y.len()),
            });
        }
        if let Some(i) = x.windows(2).position(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSeries {
                name,
                reason: format!("x not strictly increasing at index {}", i + 1),
            });
        }
        Ok(Self {
            name,
            x_label: x_label.into(),
            y_label: y_label.into(),
            x,
            y,
            x_decimals,
            metadata,
        })
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Index of the largest y value (first on ties).
    pub fn peak_index(&self) -> Option<usize> {
        (0..self.y.len()).reduce(|best, i| if self.y[i] > self.y[best] { i } else { best })
    }
}

impl Serialize for ChartSeries {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let x: Vec<Fixed> = self
            .x
            .iter()
            .map(|&v| Fixed::new(v, self.x_decimals))
            .collect();
        let y: Vec<Fixed> = self.y.iter().map(|&v| Fixed::angle(v)).collect();
        let mut map = serializer.serialize_map(Some(6))?;
        map.serialize_entry("name", &self.name)?;
        map.serialize_entry("x_label", &self.x_label)?;
        map.serialize_entry("y_label", &self.y_label)?;
        map.serialize_entry("units", &self.metadata.units)?;
        map.serialize_entry("x", &x)?;
        map.serialize_entry("y", &y)?;
        map.end()
    }
}

/// A set of series plus the run settings that produced them.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartDocument {
    pub chart: ChartKind,
    pub latitude_deg: f64,
    pub mode: Option<TiltMode>,
    pub series: Vec<ChartSeries>,
}

impl Serialize for ChartDocument {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(5))?;
        map.serialize_entry("kind", "chart")?;
        map.serialize_entry("chart", self.chart.as_str())?;
        map.serialize_entry("latitude_deg", &Fixed::angle(self.latitude_deg))?;
        map.serialize_entry("mode", &self.mode)?;
        map.serialize_entry("series", &self.series)?;
        map.end()
    }
}

impl ChartDocument {
    /// Long format: `series,x,y`.
    pub fn to_csv(&self) -> Result<String> {
        let doc = super::CsvDocument {
            headers: vec!["series".into(), "x".into(), "y".into()],
            records: self
                .series
                .iter()
                .flat_map(|s| {
                    s.x.iter().zip(&s.y).map(move |(x, y)| {
                        vec![
                            s.name.clone(),
                            Fixed::new(*x, s.x_decimals).to_string(),
                            Fixed::angle(*y).to_string(),
                        ]
                    })
                })
                .collect(),
        };
        doc.render()
    }

    pub fn to_json(&self) -> Result<String> {
        super::to_json_string(self)
    }
}

/// The 21st of every month.
pub fn default_sunpath_days() -> Vec<DayOfYear> {
    Month::all().map(Month::representative_day).collect()
}

const HOUR_DECIMALS: usize = 4;

/// Elevation against solar hour for each day, from sunrise to sunset at the
/// configured time step, with the exact sunrise and sunset points included.
/// Days without sunrise (polar night) produce an empty series. With
/// `include_azimuth`, each day also gets a compass-azimuth series.
pub fn emit_sunpath_chart(
    loc: Location,
    days: &[DayOfYear],
    cfg: &RunConfig,
    include_azimuth: bool,
) -> Result<Vec<ChartSeries>> {
    if days.is_empty() {
        return Err(Error::Usage("sun-path chart needs at least one day".into()));
    }
    let step_hours = cfg.time_step_minutes / 60.0;
    let metadata = |units: &str| SeriesMetadata {
        latitude_deg: loc.latitude_deg(),
        mode: None,
        units: units.to_string(),
    };
    let mut out = Vec::new();
    for &d in days {
        let ws = sunrise_hour_angle(loc, d);
        let mut hours = Vec::new();
        if ws > 0.0 {
            let rise = 12.0 - ws / 15.0;
            let set = 12.0 + ws / 15.0;
            hours.push(rise);
            let steps = (24.0 / step_hours).round() as usize;
            hours.extend(
                (0..=steps)
                    .map(|k| k as f64 * step_hours)
                    .filter(|&t| t > rise && t < set),
            );
            hours.push(set);
        }
        let positions: Vec<_> = hours
            .iter()
            .map(|&t| {
                sun_position(
                    loc,
                    d,
                    HourAngle::new(((t - 12.0) * 15.0).clamp(-180.0, 180.0)).expect("clamped"),
                )
            })
            .collect();
        let last = positions.len().saturating_sub(1);
        // rise and set sit on the horizon; drop rounding noise there
        let elevation: Vec<f64> = positions
            .iter()
            .enumerate()
            .map(|(i, p)| {
                if i == 0 || i == last {
                    p.elevation_deg.max(0.0)
                } else {
                    p.elevation_deg
                }
            })
            .collect();
        // anything else under the horizon is omitted
        let kept: Vec<usize> = (0..hours.len()).filter(|&i| elevation[i] >= 0.0).collect();
        let x: Vec<f64> = kept.iter().map(|&i| hours[i]).collect();
        out.push(ChartSeries::new(
            format!("elevation d={}", d.get()),
            "solar time (h)",
            "elevation (deg)",
            x.clone(),
            kept.iter().map(|&i| elevation[i]).collect(),
            HOUR_DECIMALS,
            metadata("deg"),
        )?);
        if include_azimuth {
            out.push(ChartSeries::new(
                format!("azimuth d={}", d.get()),
                "solar time (h)",
                "compass azimuth (deg)",
                x,
                kept.iter()
                    .map(|&i| positions[i].compass_azimuth_deg())
                    .collect(),
                HOUR_DECIMALS,
                metadata("deg"),
            )?);
        }
    }
    Ok(out)
}

/// Noon-rule tilt for each of the 365 days.
pub fn emit_tilt_curve(loc: Location, cfg: &RunConfig) -> Result<ChartSeries> {
    let tilts = DayOfYear::all()
        .map(|d| daily_tilt(loc, d))
        .collect::<Result<Vec<_>>>()?;
    ChartSeries::new(
        "daily tilt",
        "day of year",
        "tilt (deg)",
        tilts.iter().map(|t| f64::from(t.day.get())).collect(),
        tilts.iter().map(|t| t.tilt_deg).collect(),
        0,
        SeriesMetadata {
            latitude_deg: loc.latitude_deg(),
            mode: Some(cfg.mode),
            units: "deg".into(),
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn day(d: i64) -> DayOfYear {
        DayOfYear::new(d).unwrap()
    }

    #[test]
    fn series_validation() {
        let meta = SeriesMetadata {
            latitude_deg: 1.0,
            mode: None,
            units: "deg".into(),
        };
        assert!(
            ChartSeries::new("a", "x", "y", vec![1.0, 2.0], vec![1.0], 0, meta.clone()).is_err()
        );
        assert!(ChartSeries::new(
            "a",
            "x",
            "y",
            vec![1.0, 1.0],
            vec![1.0, 2.0],
            0,
            meta.clone()
        )
        .is_err());
        assert!(ChartSeries::new("a", "x", "y", vec![1.0, 2.0], vec![1.0, 2.0], 0, meta).is_ok());
    }

    #[test]
    fn sunpath_peaks() {
        let loc = Location::new(32.7).unwrap();
        let cfg = RunConfig::new(32.7);
        let series = emit_sunpath_chart(loc, &[day(172), day(355)], &cfg, false).unwrap();
        assert_eq!(series.len(), 2);
        for s in &series {
            let peak = s.peak_index().unwrap();
            assert_abs_diff_eq!(s.x[peak], 12.0, epsilon = 1e-9);
            assert!(s.y[0] >= 0.0 && s.y[s.len() - 1] >= 0.0);
        }
        let summer = series[0].y[series[0].peak_index().unwrap()];
        let winter = series[1].y[series[1].peak_index().unwrap()];
        assert_abs_diff_eq!(summer, 80.75, epsilon = 0.01);
        assert_abs_diff_eq!(winter, 33.9, epsilon = 0.05);
    }

    #[test]
    fn sunpath_needs_days() {
        let loc = Location::new(32.7).unwrap();
        assert!(emit_sunpath_chart(loc, &[], &RunConfig::new(32.7), false).is_err());
    }

    #[test]
    fn polar_night_series_is_empty() {
        let loc = Location::new(80.0).unwrap();
        let series = emit_sunpath_chart(loc, &[day(356)], &RunConfig::new(80.0), true).unwrap();
        assert!(series.iter().all(ChartSeries::is_empty));
    }

    #[test]
    fn azimuth_series_runs_east_to_west() {
        let loc = Location::new(32.7).unwrap();
        let series = emit_sunpath_chart(loc, &[day(81)], &RunConfig::new(32.7), true).unwrap();
        let az = &series[1];
        assert_eq!(az.len(), series[0].len());
        assert_abs_diff_eq!(az.y[0], 90.0, epsilon = 1e-6);
        assert_abs_diff_eq!(az.y[az.len() - 1], 270.0, epsilon = 1e-6);
    }
}

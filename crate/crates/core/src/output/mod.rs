//! Machine-readable output: tables (CSV/JSON), chart series and SVG.
//!
//! Numbers are written with a fixed number of decimals and a period as the
//! decimal separator, independent of locale. CSV uses a header row, commas
//! and LF line endings.

mod chart;
mod svg;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use serde::ser::{Error as _, SerializeMap};
use serde::{Serialize, Serializer};
use serde_json::value::RawValue;

use crate::error::{Error, Result};
use crate::geometry::Location;
use crate::schedule::{monthly_schedule, seasonal_schedule, Month, Season, TiltMode};

pub use chart::{
    default_sunpath_days, emit_sunpath_chart, emit_tilt_curve, ChartDocument, ChartKind,
    ChartSeries, SeriesMetadata,
};
pub use svg::render_svg;

/// Decimals used for every emitted angle.
pub const ANGLE_DECIMALS: usize = 2;

/// `{:.N}` formatting without a sign on zero.
pub fn format_fixed(value: f64, decimals: usize) -> String {
    let s = format!("{value:.decimals$}");
    match s.strip_prefix('-') {
        Some(rest) if rest.chars().all(|c| c == '0' || c == '.') => rest.to_string(),
        _ => s,
    }
}

/// A number serialized to JSON with exactly `decimals` fraction digits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fixed {
    pub value: f64,
    pub decimals: usize,
}

impl Fixed {
    pub fn new(value: f64, decimals: usize) -> Self {
        Self { value, decimals }
    }

    pub fn angle(value: f64) -> Self {
        Self::new(value, ANGLE_DECIMALS)
    }
}

impl fmt::Display for Fixed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_fixed(self.value, self.decimals))
    }
}

impl Serialize for Fixed {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        if !self.value.is_finite() {
            return serializer.serialize_none();
        }
        RawValue::from_string(self.to_string())
            .map_err(S::Error::custom)?
            .serialize(serializer)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
    Svg,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(Error::Usage(format!(
                "unknown output format '{other}' (expected csv|json|svg)"
            ))),
        }
    }
}

/// Settings shared by every command.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub latitude_deg: f64,
    pub mode: TiltMode,
    pub format: OutputFormat,
    pub time_step_minutes: f64,
    pub out: Option<PathBuf>,
}

impl RunConfig {
    pub fn new(latitude_deg: f64) -> Self {
        Self {
            latitude_deg,
            mode: TiltMode::default(),
            format: OutputFormat::default(),
            time_step_minutes: 1.0,
            out: None,
        }
    }

    /// Checks the latitude (northern hemisphere) and time step.
    pub fn location(&self) -> Result<Location> {
        let loc = Location::new(self.latitude_deg)?;
        loc.require_northern()?;
        if !self.time_step_minutes.is_finite()
            || self.time_step_minutes <= 0.0
            || self.time_step_minutes > 60.0
        {
            return Err(Error::InvalidTimeStep(self.time_step_minutes));
        }
        Ok(loc)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Text(String),
    Number(Fixed),
    Integer(i64),
    Bool(bool),
}

impl Cell {
    pub fn angle(value: f64) -> Self {
        Cell::Number(Fixed::angle(value))
    }

    pub fn text(s: impl Into<String>) -> Self {
        Cell::Text(s.into())
    }

    pub fn render(&self) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Number(f) => f.to_string(),
            Cell::Integer(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cell::Text(s) => serializer.serialize_str(s),
            Cell::Number(f) => f.serialize(serializer),
            Cell::Integer(i) => serializer.serialize_i64(*i),
            Cell::Bool(b) => serializer.serialize_bool(*b),
        }
    }
}

/// Plain CSV records. Parsing an emitted file and rendering it again gives
/// back the same bytes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvDocument {
    pub headers: Vec<String>,
    pub records: Vec<Vec<String>>,
}

impl CsvDocument {
    pub fn parse(text: &str) -> Result<Self> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(text.as_bytes());
        let headers = reader.headers()?.iter().map(str::to_string).collect();
        let records = reader
            .records()
            .map(|r| r.map(|rec| rec.iter().map(str::to_string).collect()))
            .collect::<std::result::Result<_, _>>()?;
        Ok(Self { headers, records })
    }

    pub fn render(&self) -> Result<String> {
        let mut writer = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        writer.write_record(&self.headers)?;
        for r in &self.records {
            writer.write_record(r)?;
        }
        let bytes = writer.into_inner().map_err(|e| Error::Io(e.to_string()))?;
        String::from_utf8(bytes).map_err(|e| Error::Csv(e.to_string()))
    }
}

/// A titled table with typed cells.
#[derive(Debug, Clone, PartialEq)]
pub struct Table {
    pub kind: String,
    pub latitude_deg: f64,
    pub mode: Option<TiltMode>,
    pub notes: Vec<String>,
    pub headers: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(kind: &str, latitude_deg: f64, mode: Option<TiltMode>, headers: &[&str]) -> Self {
        Self {
            kind: kind.to_string(),
            latitude_deg,
            mode,
            notes: Vec::new(),
            headers: headers.iter().map(|h| h.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.headers.len());
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<&Cell>> {
        let i = self.headers.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| &r[i]).collect())
    }

    pub fn to_csv_document(&self) -> CsvDocument {
        CsvDocument {
            headers: self.headers.clone(),
            records: self
                .rows
                .iter()
                .map(|r| r.iter().map(Cell::render).collect())
                .collect(),
        }
    }

    pub fn to_csv(&self) -> Result<String> {
        self.to_csv_document().render()
    }

    pub fn to_json(&self) -> Result<String> {
        to_json_string(self)
    }
}

struct Row<'a> {
    headers: &'a [String],
    cells: &'a [Cell],
}

impl Serialize for Row<'_> {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.headers.len()))?;
        for (h, c) in self.headers.iter().zip(self.cells) {
            map.serialize_entry(h, c)?;
        }
        map.end()
    }
}

impl Serialize for Table {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Row<'_>> = self
            .rows
            .iter()
            .map(|cells| Row {
                headers: &self.headers,
                cells,
            })
            .collect();
        let mut map = serializer.serialize_map(Some(6))?;
        map.serialize_entry("kind", &self.kind)?;
        map.serialize_entry("latitude_deg", &Fixed::angle(self.latitude_deg))?;
        map.serialize_entry("mode", &self.mode)?;
        map.serialize_entry("notes", &self.notes)?;
        map.serialize_entry("columns", &self.headers)?;
        map.serialize_entry("rows", &rows)?;
        map.end()
    }
}

pub(crate) fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Granularity {
    Monthly,
    Seasonal,
}

impl FromStr for Granularity {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "monthly" => Ok(Granularity::Monthly),
            "seasonal" => Ok(Granularity::Seasonal),
            other => Err(Error::Usage(format!(
                "unknown granularity '{other}' (expected monthly|seasonal)"
            ))),
        }
    }
}

/// Monthly rows are `(month, offset_deg, tilt_deg)`. Seasonal rows are
/// `(season, tilt_deg)`; in paper mode the tilt is rounded to whole
/// degrees as in the published seasonal table.
pub fn emit_schedule_table(
    loc: Location,
    granularity: Granularity,
    mode: TiltMode,
) -> Result<Table> {
    let phi = loc.latitude_deg();
    match granularity {
        Granularity::Monthly => {
            let schedule = monthly_schedule(loc, mode)?;
            let mut table = Table::new(
                "monthly_schedule",
                phi,
                Some(mode),
                &["month", "offset_deg", "tilt_deg"],
            );
            for m in Month::all() {
                let i = usize::from(m.number() - 1);
                table.push(vec![
                    Cell::text(m.name()),
                    Cell::angle(schedule.offsets_deg[i]),
                    Cell::angle(schedule.betas_deg[i]),
                ]);
            }
            Ok(table)
        }
        Granularity::Seasonal => {
            let schedule = seasonal_schedule(loc, mode)?;
            let mut table = Table::new(
                "seasonal_schedule",
                phi,
                Some(mode),
                &["season", "tilt_deg"],
            );
            for (s, beta) in Season::ALL.iter().zip(schedule.betas_deg) {
                let cell = match mode {
                    TiltMode::Paper => Cell::Integer(beta.round() as i64),
                    TiltMode::Exact => Cell::angle(beta),
                };
                table.push(vec![Cell::text(s.name()), cell]);
            }
            Ok(table)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixed_formatting() {
        assert_eq!(format_fixed(32.7, 2), "32.70");
        assert_eq!(format_fixed(-0.001, 2), "0.00");
        assert_eq!(format_fixed(-0.5, 2), "-0.50");
        assert_eq!(format_fixed(8.250000000000002, 2), "8.25");
        assert_eq!(serde_json::to_string(&Fixed::angle(32.7)).unwrap(), "32.70");
        assert_eq!(
            serde_json::to_string(&Fixed::angle(f64::NAN)).unwrap(),
            "null"
        );
    }

    #[test]
    fn csv_round_trip_with_quoting() {
        let mut t = Table::new("x", 10.0, None, &["a", "note"]);
        t.push(vec![Cell::angle(1.0), Cell::text("has, comma")]);
        let csv = t.to_csv().unwrap();
        assert_eq!(csv, "a,note\n1.00,\"has, comma\"\n");
        assert_eq!(CsvDocument::parse(&csv).unwrap().render().unwrap(), csv);
    }

    #[test]
    fn table_json_keeps_decimals() {
        let mut t = Table::new(
            "monthly_schedule",
            32.7,
            Some(TiltMode::Paper),
            &["month", "tilt_deg"],
        );
        t.push(vec![Cell::text("April"), Cell::angle(32.2)]);
        let json = t.to_json().unwrap();
        assert!(json.contains("\"tilt_deg\": 32.20"), "{json}");
        assert!(json.contains("\"latitude_deg\": 32.70"));
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["mode"], "paper");
        assert_eq!(v["rows"][0]["month"], "April");
    }

    #[test]
    fn config_validation() {
        assert!(RunConfig::new(32.7).location().is_ok());
        assert_eq!(
            RunConfig::new(-10.0).location(),
            Err(Error::UnsupportedHemisphere(-10.0))
        );
        assert_eq!(
            RunConfig::new(95.0).location(),
            Err(Error::LatitudeOutOfRange(95.0))
        );
        let mut cfg = RunConfig::new(32.7);
        cfg.time_step_minutes = 0.0;
        assert!(cfg.location().is_err());
        assert_eq!("svg".parse::<OutputFormat>().unwrap(), OutputFormat::Svg);
        assert!("xml".parse::<OutputFormat>().is_err());
    }

    #[test]
    fn exact_seasonal_table_has_decimals() {
        let t = emit_schedule_table(
            Location::new(32.7).unwrap(),
            Granularity::Seasonal,
            TiltMode::Exact,
        )
        .unwrap();
        assert_eq!(t.to_csv().unwrap().lines().nth(1).unwrap(), "winter,48.33");
    }
}

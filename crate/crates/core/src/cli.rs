//! Command-line front end.
//!
//! Exit status: 0 on success, 1 for invalid latitude/day/month values and
//! other domain errors, 2 for usage errors (unknown subcommand or flag,
//! unsupported format for a command).

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::{Error, Result};
use crate::geometry::{
    declination_exact, declination_simplified, noon_elevation, noon_zenith, sun_position,
    sunrise_hour_angle, DayOfYear, HourAngle,
};
use crate::irradiance::IrradianceModel;
use crate::optimize::{gain_report, optimize_fixed_tilt, DayRange};
use crate::output::{
    default_sunpath_days, emit_schedule_table, emit_sunpath_chart, emit_tilt_curve, render_svg,
    Cell, ChartDocument, ChartKind, Fixed, OutputFormat, RunConfig, Table,
};
use crate::schedule::{daily_tilt, monthly_schedule, tilt_extremes, Month};

#[derive(Debug, Parser)]
#[command(
    name = "pv-tilt",
    version,
    about = "Solar angles, PV tilt schedules and clear-sky insolation gains"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct Common {
    /// Latitude in degrees, positive north
    #[arg(long, allow_negative_numbers = true)]
    lat: f64,

    /// Tilt schedule mode
    #[arg(long, default_value = "exact", value_parser = ["paper", "exact"])]
    mode: String,

    /// Integration / sampling step in minutes
    #[arg(long, default_value_t = 1.0)]
    step: f64,

    #[arg(long, default_value = "csv", value_parser = ["csv", "json", "svg"])]
    format: String,

    /// Write to this file instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Common {
    fn config(&self) -> Result<RunConfig> {
        Ok(RunConfig {
            latitude_deg: self.lat,
            mode: self.mode.parse()?,
            format: self.format.parse()?,
            time_step_minutes: self.step,
            out: self.out.clone(),
        })
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Declination, noon angles and day length (and the sun position at an hour angle)
    Sun {
        #[command(flatten)]
        common: Common,
        /// Day of year; defaults to the 21st of every month
        #[arg(long)]
        day: Option<i64>,
        /// Hour angle in degrees, negative before noon
        #[arg(long, allow_negative_numbers = true, requires = "day")]
        hour_angle: Option<f64>,
    },
    /// Optimal tilt for a day, a month, or the tilt extremes
    Tilt {
        #[command(flatten)]
        common: Common,
        #[arg(long, conflicts_with = "month")]
        day: Option<i64>,
        #[arg(long)]
        month: Option<i64>,
    },
    /// Monthly or seasonal tilt table
    Schedule {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "monthly", value_parser = ["monthly", "seasonal"])]
        granularity: String,
    },
    /// Best fixed tilt over a day, a month or (by default) the whole year
    Optimize {
        #[command(flatten)]
        common: Common,
        #[arg(long, conflicts_with = "month")]
        day: Option<i64>,
        #[arg(long)]
        month: Option<i64>,
    },
    /// Annual energy of each adjustment policy against a latitude-tilted fixed panel
    Gains {
        #[command(flatten)]
        common: Common,
    },
    /// Sun-path or tilt-curve chart data
    Chart {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "sunpath", value_parser = ["sunpath", "tilt"])]
        kind: String,
        /// Days to plot (repeatable); defaults to the 21st of every month
        #[arg(long)]
        day: Vec<i64>,
        /// Add compass-azimuth series to sun-path charts
        #[arg(long)]
        azimuth: bool,
    },
}

enum Artifact {
    Table(Table),
    Chart(ChartDocument),
}

impl Artifact {
    fn render(&self, format: OutputFormat) -> Result<String> {
        match (self, format) {
            (Artifact::Table(t), OutputFormat::Csv) => t.to_csv(),
            (Artifact::Table(t), OutputFormat::Json) => t.to_json(),
            (Artifact::Table(_), OutputFormat::Svg) => Err(Error::Usage(
                "svg output is only available for the chart command".into(),
            )),
            (Artifact::Chart(c), OutputFormat::Csv) => c.to_csv(),
            (Artifact::Chart(c), OutputFormat::Json) => c.to_json(),
            (Artifact::Chart(c), OutputFormat::Svg) => Ok(render_svg(c)),
        }
    }
}

fn sun_table(cfg: &RunConfig, day: Option<i64>, hour_angle: Option<f64>) -> Result<Table> {
    let loc = cfg.location()?;
    let days = match day {
        Some(d) => vec![DayOfYear::new(d)?],
        None => default_sunpath_days(),
    };
    let omega = hour_angle.map(HourAngle::new).transpose()?;
    let mut headers = vec![
        "day",
        "declination_deg",
        "declination_simplified_deg",
        "noon_elevation_deg",
        "noon_elevation_folded_deg",
        "noon_zenith_deg",
        "sunrise_hour_angle_deg",
        "day_length_h",
        "optimal_tilt_deg",
    ];
    if omega.is_some() {
        headers.extend([
            "hour_angle_deg",
            "elevation_deg",
            "azimuth_deg",
            "compass_azimuth_deg",
        ]);
    }
    let mut table = Table::new("sun", loc.latitude_deg(), None, &headers);
    for d in days {
        let noon = noon_elevation(loc, d);
        let ws = sunrise_hour_angle(loc, d);
        let mut row = vec![
            Cell::Integer(i64::from(d.get())),
            Cell::angle(declination_exact(d)),
            Cell::angle(declination_simplified(d)),
            Cell::angle(noon.raw_deg),
            Cell::angle(noon.folded_deg),
            Cell::angle(noon_zenith(loc, d)),
            Cell::angle(ws),
            Cell::Number(Fixed::new(2.0 * ws / 15.0, 2)),
            Cell::angle(daily_tilt(loc, d)?.tilt_deg),
        ];
        if let Some(w) = omega {
            let p = sun_position(loc, d, w);
            row.extend([
                Cell::angle(w.degrees()),
                Cell::angle(p.elevation_deg),
                Cell::angle(p.azimuth_deg),
                Cell::angle(p.compass_azimuth_deg()),
            ]);
        }
        table.push(row);
    }
    Ok(table)
}

fn tilt_table(cfg: &RunConfig, day: Option<i64>, month: Option<i64>) -> Result<Table> {
    let loc = cfg.location()?;
    let phi = loc.latitude_deg();
    match (day, month) {
        (Some(d), _) => {
            let t = daily_tilt(loc, DayOfYear::new(d)?)?;
            let mut table = Table::new("daily_tilt", phi, None, &["day", "tilt_deg", "clamped"]);
            table.push(vec![
                Cell::Integer(d),
                Cell::angle(t.tilt_deg),
                Cell::Bool(t.is_clamped()),
            ]);
            Ok(table)
        }
        (None, Some(m)) => {
            let month = Month::new(m)?;
            let schedule = monthly_schedule(loc, cfg.mode)?;
            let mut table = Table::new("monthly_tilt", phi, Some(cfg.mode), &["month", "tilt_deg"]);
            table.push(vec![
                Cell::text(month.name()),
                Cell::angle(schedule.tilt(month)),
            ]);
            Ok(table)
        }
        (None, None) => {
            let e = tilt_extremes(loc, cfg.mode)?;
            let note = e.note(loc);
            let mut table = Table::new(
                "tilt_extremes",
                phi,
                Some(cfg.mode),
                &["mode", "min_tilt_deg", "max_tilt_deg", "note"],
            );
            table.push(vec![
                Cell::text(cfg.mode.as_str()),
                Cell::angle(e.min_deg),
                Cell::angle(e.max_deg),
                Cell::text(note.clone().unwrap_or_default()),
            ]);
            table.notes.extend(note);
            Ok(table)
        }
    }
}

fn optimize_table(cfg: &RunConfig, day: Option<i64>, month: Option<i64>) -> Result<Table> {
    let loc = cfg.location()?;
    let model = IrradianceModel::with_time_step(cfg.time_step_minutes)?;
    let period = match (day, month) {
        (Some(d), _) => DayRange::single(DayOfYear::new(d)?),
        (None, Some(m)) => DayRange::month(Month::new(m)?),
        (None, None) => DayRange::full_year(),
    };
    let opt = optimize_fixed_tilt(loc, period, &model);
    let mut table = Table::new(
        "optimal_fixed_tilt",
        loc.latitude_deg(),
        None,
        &[
            "first_day",
            "last_day",
            "optimal_tilt_deg",
            "energy_wh_m2",
            "evaluations",
        ],
    );
    table.push(vec![
        Cell::Integer(i64::from(period.first.get())),
        Cell::Integer(i64::from(period.last.get())),
        Cell::angle(opt.tilt_deg),
        Cell::Number(Fixed::new(opt.energy_wh_m2, 2)),
        Cell::Integer(opt.evaluations as i64),
    ]);
    Ok(table)
}

fn gains_table(cfg: &RunConfig) -> Result<Table> {
    let loc = cfg.location()?;
    let model = IrradianceModel::with_time_step(cfg.time_step_minutes)?;
    let report = gain_report(loc, cfg.mode, &model)?;
    let mut table = Table::new(
        "gain_report",
        loc.latitude_deg(),
        Some(cfg.mode),
        &["policy", "energy_wh_m2", "gain_percent"],
    );
    for p in &report.policies {
        table.push(vec![
            Cell::text(p.policy.clone()),
            Cell::Number(Fixed::new(p.energy_wh_m2, 2)),
            Cell::Number(Fixed::new(p.gain_percent, 2)),
        ]);
    }
    table.notes.push(
        "clear-sky beam-only model; gains relative to a fixed panel tilted at the latitude".into(),
    );
    Ok(table)
}

fn chart_document(
    cfg: &RunConfig,
    kind: ChartKind,
    days: &[i64],
    azimuth: bool,
) -> Result<ChartDocument> {
    let loc = cfg.location()?;
    match kind {
        ChartKind::Sunpath => {
            let days = if days.is_empty() {
                default_sunpath_days()
            } else {
                days.iter()
                    .map(|&d| DayOfYear::new(d))
                    .collect::<Result<Vec<_>>>()?
            };
            Ok(ChartDocument {
                chart: kind,
                latitude_deg: loc.latitude_deg(),
                mode: None,
                series: emit_sunpath_chart(loc, &days, cfg, azimuth)?,
            })
        }
        ChartKind::Tilt => Ok(ChartDocument {
            chart: kind,
            latitude_deg: loc.latitude_deg(),
            mode: Some(cfg.mode),
            series: vec![emit_tilt_curve(loc, cfg)?],
        }),
    }
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Sun { common, .. }
            | Command::Tilt { common, .. }
            | Command::Schedule { common, .. }
            | Command::Optimize { common, .. }
            | Command::Gains { common }
            | Command::Chart { common, .. } => common,
        }
    }
}

fn execute(command: &Command) -> Result<(RunConfig, Artifact)> {
    let cfg = command.common().config()?;
    // latitude is validated before any computation
    let loc = cfg.location()?;
    let artifact = match command {
        Command::Sun {
            day, hour_angle, ..
        } => Artifact::Table(sun_table(&cfg, *day, *hour_angle)?),
        Command::Tilt { day, month, .. } => Artifact::Table(tilt_table(&cfg, *day, *month)?),
        Command::Schedule { granularity, .. } => {
            Artifact::Table(emit_schedule_table(loc, granularity.parse()?, cfg.mode)?)
        }
        Command::Optimize { day, month, .. } => {
            Artifact::Table(optimize_table(&cfg, *day, *month)?)
        }
        Command::Gains { .. } => Artifact::Table(gains_table(&cfg)?),
        Command::Chart {
            kind, day, azimuth, ..
        } => Artifact::Chart(chart_document(&cfg, kind.parse()?, day, *azimuth)?),
    };
    Ok((cfg, artifact))
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::Usage(_) => 2,
        _ => 1,
    }
}

/// Runs the CLI with explicit argument list and output streams; returns
/// the process exit status.
pub fn run_cli<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { stdout } else { stderr };
            let _ = sink.write_all(rendered.as_bytes());
            return code;
        }
    };
    let result = execute(&cli.command).and_then(|(cfg, artifact)| {
        let text = artifact.render(cfg.format)?;
        match &cfg.out {
            Some(path) => std::fs::write(path, text)?,
            None => stdout.write_all(text.as_bytes())?,
        }
        Ok(())
    });
    match result {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            exit_code(&e)
        }
    }
}

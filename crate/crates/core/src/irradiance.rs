//! Clear-sky beam irradiance on a tilted plane and its integration over
//! daylight.
//!
//! Direct-normal irradiance follows the air-mass law
//! `G = S * 0.7^(AM^0.678)`, `AM = 1 / cos ζ`, with the zenith capped at 89°.
//! Only the beam component is modelled; there is no diffuse or
//! ground-reflected light.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{
    declination_exact, sunrise_hour_angle_for, DayOfYear, HourAngle, Location, SunVector,
};
use crate::schedule::{TiltPolicy, MAX_TILT_DEG};

pub const SOLAR_CONSTANT_W_M2: f64 = 1353.0;
pub const CLEAR_SKY_TRANSMITTANCE: f64 = 0.7;
pub const AIR_MASS_EXPONENT: f64 = 0.678;
pub const ZENITH_CAP_DEG: f64 = 89.0;

const DEG_PER_MINUTE: f64 = 0.25;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct IrradianceModel {
    pub solar_constant_w_m2: f64,
    pub time_step_minutes: f64,
}

impl Default for IrradianceModel {
    fn default() -> Self {
        Self {
            solar_constant_w_m2: SOLAR_CONSTANT_W_M2,
            time_step_minutes: 1.0,
        }
    }
}

impl IrradianceModel {
    pub fn with_time_step(time_step_minutes: f64) -> Result<Self> {
        if !time_step_minutes.is_finite() || time_step_minutes <= 0.0 || time_step_minutes > 60.0 {
            return Err(Error::InvalidTimeStep(time_step_minutes));
        }
        Ok(Self {
            time_step_minutes,
            ..Self::default()
        })
    }

    /// Direct-normal irradiance for a sun at `zenith_deg`; zero below the
    /// horizon.
    pub fn direct_normal(&self, zenith_deg: f64) -> f64 {
        if zenith_deg >= 90.0 {
            return 0.0;
        }
        let air_mass = 1.0 / zenith_deg.min(ZENITH_CAP_DEG).to_radians().cos();
        self.solar_constant_w_m2 * CLEAR_SKY_TRANSMITTANCE.powf(air_mass.powf(AIR_MASS_EXPONENT))
    }
}

/// Cosine of the angle between the sun and the panel normal.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Incidence {
    /// In [-1, 1]; negative when the sun is behind the panel.
    pub cosine: f64,
    /// When false the value is geometric only and contributes no energy.
    pub sun_above_horizon: bool,
}

impl Incidence {
    pub fn effective(&self) -> f64 {
        if self.sun_above_horizon {
            self.cosine.max(0.0)
        } else {
            0.0
        }
    }
}

/// `cos θ = cos α cos(az - γ) sin β + sin α cos β`, with south-referenced
/// sun azimuth `az` and panel azimuth `γ` (0 = facing due south).
pub fn incidence_cosine(
    loc: Location,
    day: DayOfYear,
    omega: HourAngle,
    tilt_deg: f64,
    panel_azimuth_deg: f64,
) -> Incidence {
    let sun = SunVector::new(
        loc.latitude_deg().to_radians(),
        declination_exact(day).to_radians(),
        omega.degrees().to_radians(),
    );
    let elevation = sun.elevation_deg().to_radians();
    let azimuth = sun.azimuth_deg().to_radians();
    let (sin_b, cos_b) = tilt_deg.to_radians().sin_cos();
    let cosine = elevation.cos() * (azimuth - panel_azimuth_deg.to_radians()).cos() * sin_b
        + elevation.sin() * cos_b;
    Incidence {
        cosine: cosine.clamp(-1.0, 1.0),
        sun_above_horizon: elevation > 0.0,
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
struct Sample {
    up: f64,
    south: f64,
    west: f64,
    direct_normal: f64,
}

/// Sun samples for one day on a uniform hour-angle grid, reusable across
/// panel orientations.
#[derive(Debug, Clone, PartialEq)]
pub struct DayTrack {
    step_hours: f64,
    samples: Vec<Sample>,
}

impl DayTrack {
    /// Sunrise to sunset.
    pub fn full_day(loc: Location, day: DayOfYear, model: &IrradianceModel) -> Self {
        let decl = declination_exact(day);
        let ws = sunrise_hour_angle_for(loc.latitude_deg(), decl);
        Self::between(loc.latitude_deg(), decl, -ws, ws, model)
    }

    /// Sunrise to solar noon.
    pub fn morning(loc: Location, day: DayOfYear, model: &IrradianceModel) -> Self {
        let decl = declination_exact(day);
        let ws = sunrise_hour_angle_for(loc.latitude_deg(), decl);
        Self::between(loc.latitude_deg(), decl, -ws, 0.0, model)
    }

    fn between(
        latitude_deg: f64,
        declination_deg: f64,
        from_deg: f64,
        to_deg: f64,
        model: &IrradianceModel,
    ) -> Self {
        let span = to_deg - from_deg;
        if span <= 0.0 {
            return Self {
                step_hours: 0.0,
                samples: Vec::new(),
            };
        }
        let step_deg = model.time_step_minutes * DEG_PER_MINUTE;
        // the small slack keeps exact multiples from gaining an extra interval
        let intervals = ((span / step_deg) - 1e-9).ceil().max(1.0) as usize;
        let h = span / intervals as f64;
        let lat = latitude_deg.to_radians();
        let decl = declination_deg.to_radians();
        let samples = (0..=intervals)
            .map(|i| {
                let omega = from_deg + h * i as f64;
                let v = SunVector::new(lat, decl, omega.to_radians());
                let direct_normal = if v.up > 0.0 {
                    model.direct_normal(90.0 - v.elevation_deg())
                } else {
                    0.0
                };
                Sample {
                    up: v.up,
                    south: v.south,
                    west: v.west,
                    direct_normal,
                }
            })
            .collect();
        Self {
            step_hours: h / 15.0,
            samples,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.samples.len() < 2
    }

    /// Trapezoidal plane-of-array energy in Wh/m².
    pub fn energy(&self, tilt_deg: f64, panel_azimuth_deg: f64) -> f64 {
        if self.is_empty() {
            return 0.0;
        }
        let (sin_b, cos_b) = tilt_deg.to_radians().sin_cos();
        let (sin_g, cos_g) = panel_azimuth_deg.to_radians().sin_cos();
        let (nu, ns, nw) = (cos_b, sin_b * cos_g, sin_b * sin_g);
        let poa = |s: &Sample| s.direct_normal * (s.up * nu + s.south * ns + s.west * nw).max(0.0);
        let interior: f64 = self.samples.iter().map(poa).sum();
        let ends = poa(&self.samples[0]) + poa(&self.samples[self.samples.len() - 1]);
        self.step_hours * (interior - 0.5 * ends)
    }

    /// Energy for a due-south panel.
    pub fn energy_south(&self, tilt_deg: f64) -> f64 {
        self.energy(tilt_deg, 0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InsolationResult {
    pub energy_wh_m2: f64,
    pub first_day: DayOfYear,
    pub last_day: DayOfYear,
    pub policy: String,
    /// Per-day energies for multi-day results, in day order.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub daily_wh_m2: Vec<f64>,
}

fn check_tilt(tilt_deg: f64) -> Result<()> {
    if (0.0..=MAX_TILT_DEG).contains(&tilt_deg) {
        Ok(())
    } else {
        Err(Error::TiltOutOfRange(tilt_deg))
    }
}

pub fn daily_insolation(
    loc: Location,
    day: DayOfYear,
    tilt_deg: f64,
    model: &IrradianceModel,
) -> Result<InsolationResult> {
    check_tilt(tilt_deg)?;
    Ok(InsolationResult {
        energy_wh_m2: DayTrack::full_day(loc, day, model).energy_south(tilt_deg),
        first_day: day,
        last_day: day,
        policy: format!("fixed {tilt_deg}"),
        daily_wh_m2: Vec::new(),
    })
}

/// Sunrise-to-noon half of [`daily_insolation`].
pub fn morning_insolation(
    loc: Location,
    day: DayOfYear,
    tilt_deg: f64,
    model: &IrradianceModel,
) -> Result<f64> {
    check_tilt(tilt_deg)?;
    Ok(DayTrack::morning(loc, day, model).energy_south(tilt_deg))
}

/// Sum of the 365 daily energies with each day's tilt taken from `policy`.
/// Days are evaluated in parallel and summed in day order.
pub fn annual_insolation(
    loc: Location,
    policy: &TiltPolicy,
    model: &IrradianceModel,
) -> InsolationResult {
    let days: Vec<DayOfYear> = DayOfYear::all().collect();
    let daily_wh_m2: Vec<f64> = days
        .par_iter()
        .map(|&d| DayTrack::full_day(loc, d, model).energy_south(policy.tilt_for_day(d)))
        .collect();
    InsolationResult {
        energy_wh_m2: daily_wh_m2.iter().sum(),
        first_day: days[0],
        last_day: days[days.len() - 1],
        policy: policy.label().to_string(),
        daily_wh_m2,
    }
}

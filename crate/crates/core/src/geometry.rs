//! Closed-form solar geometry.
//!
//! Angles are in degrees at the API boundary and all times are solar time
//! (hour angle 0 is solar noon). Refraction, the equation of time and leap
//! years are not modelled: the year has 365 days and day 1 is January 1st.

use serde::Serialize;

use crate::error::{Error, Result};

/// Axial tilt used by the declination formulas, in degrees.
pub const OBLIQUITY_DEG: f64 = 23.45;

/// Day on which the declination formulas cross zero (March equinox).
pub const EQUINOX_ANCHOR_DAY: u16 = 81;

pub const DAYS_PER_YEAR: u16 = 365;

/// Latitude bound for strict mode: poleward of this the noon sun can sit on
/// or below the horizon at the winter solstice.
pub const POLAR_CIRCLE_DEG: f64 = 90.0 - OBLIQUITY_DEG;

/// Signed geographic latitude, positive north.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Location {
    latitude_deg: f64,
}

impl Location {
    pub fn new(latitude_deg: f64) -> Result<Self> {
        if !latitude_deg.is_finite() || latitude_deg.abs() > 90.0 {
            return Err(Error::LatitudeOutOfRange(latitude_deg));
        }
        Ok(Self { latitude_deg })
    }

    /// Like [`Location::new`] but also rejects latitudes at or beyond the
    /// polar circles, where the noon sun is not above the horizon all year.
    pub fn strict(latitude_deg: f64) -> Result<Self> {
        let loc = Self::new(latitude_deg)?;
        if latitude_deg.abs() >= POLAR_CIRCLE_DEG {
            return Err(Error::LatitudeBeyondPolarCircle(latitude_deg));
        }
        Ok(loc)
    }

    pub fn latitude_deg(&self) -> f64 {
        self.latitude_deg
    }

    /// Tilt schedules assume an equator-facing panel in the northern
    /// hemisphere. The equator itself is rejected.
    pub fn require_northern(&self) -> Result<()> {
        if self.latitude_deg > 0.0 {
            Ok(())
        } else {
            Err(Error::UnsupportedHemisphere(self.latitude_deg))
        }
    }
}

/// Day of a 365-day year, January 1st = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct DayOfYear(u16);

impl DayOfYear {
    pub fn new(day: i64) -> Result<Self> {
        if (1..=DAYS_PER_YEAR as i64).contains(&day) {
            Ok(Self(day as u16))
        } else {
            Err(Error::DayOutOfRange(day))
        }
    }

    pub fn get(self) -> u16 {
        self.0
    }

    pub fn all() -> impl DoubleEndedIterator<Item = DayOfYear> + ExactSizeIterator {
        (1..=DAYS_PER_YEAR).map(DayOfYear)
    }
}

/// Hour angle, 15 degrees per hour from solar noon, negative in the morning.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct HourAngle(f64);

impl HourAngle {
    pub const NOON: HourAngle = HourAngle(0.0);

    pub fn new(degrees: f64) -> Result<Self> {
        if !degrees.is_finite() || degrees.abs() > 180.0 {
            return Err(Error::HourAngleOutOfRange(degrees));
        }
        Ok(Self(degrees))
    }

    /// Solar clock hour in [0, 24], 12 being solar noon.
    pub fn from_solar_hour(hour: f64) -> Result<Self> {
        Self::new((hour - 12.0) * 15.0)
    }

    pub fn degrees(self) -> f64 {
        self.0
    }

    pub fn solar_hour(self) -> f64 {
        12.0 + self.0 / 15.0
    }
}

/// Which declination formula to use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DeclinationModel {
    /// `23.45 sin(360/365 (d - 81))`
    #[default]
    Exact,
    /// `23.45 sin(d - 81)`, dropping the 360/365 factor. Its period is 360
    /// days, so it drifts by up to about one degree in the autumn.
    Simplified,
}

impl DeclinationModel {
    pub fn declination_deg(self, day: DayOfYear) -> f64 {
        match self {
            DeclinationModel::Exact => declination_exact(day),
            DeclinationModel::Simplified => declination_simplified(day),
        }
    }
}

pub fn declination_exact(day: DayOfYear) -> f64 {
    let arg = 360.0 / f64::from(DAYS_PER_YEAR) * (f64::from(day.0) - f64::from(EQUINOX_ANCHOR_DAY));
    OBLIQUITY_DEG * arg.to_radians().sin()
}

pub fn declination_simplified(day: DayOfYear) -> f64 {
    let arg = f64::from(day.0) - f64::from(EQUINOX_ANCHOR_DAY);
    OBLIQUITY_DEG * arg.to_radians().sin()
}

/// Noon elevation `90 - (latitude - declination)`.
///
/// `raw_deg` is the formula value and exceeds 90 when the noon sun stands
/// on the polar side of the zenith (tropics in summer). `folded_deg` is the
/// physical elevation `min(raw, 180 - raw)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NoonElevation {
    pub raw_deg: f64,
    pub folded_deg: f64,
}

impl NoonElevation {
    fn from_raw(raw_deg: f64) -> Self {
        Self {
            raw_deg,
            folded_deg: raw_deg.min(180.0 - raw_deg),
        }
    }
}

pub fn noon_elevation(loc: Location, day: DayOfYear) -> NoonElevation {
    noon_elevation_at_declination(loc, declination_exact(day))
}

/// Noon elevation for an arbitrary declination, e.g. the solstice values
/// `±23.45` that no integer day hits exactly.
pub fn noon_elevation_at_declination(loc: Location, declination_deg: f64) -> NoonElevation {
    NoonElevation::from_raw(90.0 - (loc.latitude_deg - declination_deg))
}

/// Noon zenith `latitude - declination`. Signed: negative when the noon sun
/// is north of the zenith. Always `90 - noon_elevation(..).raw_deg`.
pub fn noon_zenith(loc: Location, day: DayOfYear) -> f64 {
    loc.latitude_deg - declination_exact(day)
}

/// Sun position for one instant.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SolarAngles {
    pub declination_deg: f64,
    pub elevation_deg: f64,
    pub zenith_deg: f64,
    /// South-referenced: 0 due south, negative east (morning), positive
    /// west (afternoon), ±180 due north.
    pub azimuth_deg: f64,
}

impl SolarAngles {
    /// Compass azimuth: 0 north, clockwise, in [0, 360).
    pub fn compass_azimuth_deg(&self) -> f64 {
        compass_from_south(self.azimuth_deg)
    }

    pub fn is_above_horizon(&self) -> bool {
        self.elevation_deg > 0.0
    }
}

pub fn compass_from_south(azimuth_deg: f64) -> f64 {
    (azimuth_deg + 180.0).rem_euclid(360.0)
}

/// Unit vector towards the sun in a local horizontal frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub(crate) struct SunVector {
    pub up: f64,
    pub south: f64,
    pub west: f64,
}

impl SunVector {
    pub(crate) fn new(latitude_rad: f64, declination_rad: f64, hour_angle_rad: f64) -> Self {
        let (sin_lat, cos_lat) = latitude_rad.sin_cos();
        let (sin_dec, cos_dec) = declination_rad.sin_cos();
        let (sin_w, cos_w) = hour_angle_rad.sin_cos();
        Self {
            up: sin_lat * sin_dec + cos_lat * cos_dec * cos_w,
            south: sin_lat * cos_dec * cos_w - cos_lat * sin_dec,
            west: cos_dec * sin_w,
        }
    }

    pub(crate) fn elevation_deg(&self) -> f64 {
        self.up.atan2(self.south.hypot(self.west)).to_degrees()
    }

    pub(crate) fn azimuth_deg(&self) -> f64 {
        if self.west == 0.0 && self.south == 0.0 {
            // sun at the zenith or nadir
            return 0.0;
        }
        let az = self.west.atan2(self.south).to_degrees();
        // atan2(±0, negative) gives ±180 depending on the sign of zero
        if az == -180.0 {
            180.0
        } else {
            az
        }
    }
}

/// Elevation follows `sin α = sin φ sin δ + cos φ cos δ cos ω`; the
/// azimuth quadrant comes from the sign of the hour angle. Below-horizon
/// positions are returned with negative elevation.
pub fn sun_position(loc: Location, day: DayOfYear, omega: HourAngle) -> SolarAngles {
    let declination_deg = declination_exact(day);
    let v = SunVector::new(
        loc.latitude_deg.to_radians(),
        declination_deg.to_radians(),
        omega.degrees().to_radians(),
    );
    let elevation_deg = v.elevation_deg();
    SolarAngles {
        declination_deg,
        elevation_deg,
        zenith_deg: 90.0 - elevation_deg,
        azimuth_deg: v.azimuth_deg(),
    }
}

/// Sunrise hour angle magnitude from `cos ω_s = -tan φ tan δ`, clamped to
/// 0 (polar night) or 180 (midnight sun).
pub fn sunrise_hour_angle(loc: Location, day: DayOfYear) -> f64 {
    sunrise_hour_angle_for(loc.latitude_deg, declination_exact(day))
}

pub(crate) fn sunrise_hour_angle_for(latitude_deg: f64, declination_deg: f64) -> f64 {
    let x = -latitude_deg.to_radians().tan() * declination_deg.to_radians().tan();
    if x >= 1.0 {
        0.0
    } else if x <= -1.0 {
        180.0
    } else {
        x.acos().to_degrees()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn day(d: i64) -> DayOfYear {
        DayOfYear::new(d).unwrap()
    }

    fn lat(l: f64) -> Location {
        Location::new(l).unwrap()
    }

    #[test]
    fn day_bounds() {
        assert!(DayOfYear::new(0).is_err());
        assert_eq!(DayOfYear::new(366), Err(Error::DayOutOfRange(366)));
        assert!(DayOfYear::new(1).is_ok());
        assert!(DayOfYear::new(365).is_ok());
        assert_eq!(DayOfYear::all().len(), 365);
    }

    #[test]
    fn location_bounds() {
        assert!(Location::new(90.0).is_ok());
        assert!(Location::new(-90.0).is_ok());
        assert!(Location::new(90.01).is_err());
        assert!(Location::new(f64::NAN).is_err());
        assert!(Location::strict(66.0).is_ok());
        assert_eq!(
            Location::strict(-70.0),
            Err(Error::LatitudeBeyondPolarCircle(-70.0))
        );
        assert!(lat(-10.0).require_northern().is_err());
        assert!(lat(0.0).require_northern().is_err());
        assert!(lat(0.1).require_northern().is_ok());
    }

    #[test]
    fn hour_angle_bounds() {
        assert!(HourAngle::new(180.0).is_ok());
        assert!(HourAngle::new(-180.5).is_err());
        assert_eq!(HourAngle::from_solar_hour(9.0).unwrap().degrees(), -45.0);
        assert_eq!(HourAngle::new(30.0).unwrap().solar_hour(), 14.0);
    }

    // Reference values below were evaluated with mpmath at 40 digits.

    #[test]
    fn exact_declination_values() {
        assert_eq!(declination_exact(day(81)), 0.0);
        assert_abs_diff_eq!(
            declination_exact(day(1)),
            -23.011_636_727_869_24,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            declination_exact(day(356)),
            -23.444_571_371_428_44,
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(
            declination_exact(day(365)),
            -23.085_911_002_836_56,
            epsilon = 1e-9
        );
    }

    #[test]
    fn simplified_declination_values() {
        assert_eq!(declination_simplified(day(81)), 0.0);
        assert_abs_diff_eq!(declination_simplified(day(171)), 23.45, epsilon = 1e-12);
        assert_abs_diff_eq!(
            declination_simplified(day(365)),
            -22.753_434_781_172_12,
            epsilon = 1e-9
        );
    }

    #[test]
    fn noon_values() {
        assert_abs_diff_eq!(
            noon_elevation(lat(32.7), day(81)).raw_deg,
            57.3,
            epsilon = 1e-12
        );
        assert_abs_diff_eq!(
            noon_elevation_at_declination(lat(32.7), -23.45).raw_deg,
            33.85,
            epsilon = 1e-12
        );
        // the formula gives 80.75 here; 81.75 is sometimes quoted but is an arithmetic slip
        assert_abs_diff_eq!(
            noon_elevation_at_declination(lat(32.7), 23.45).raw_deg,
            80.75,
            epsilon = 1e-12
        );

        assert_abs_diff_eq!(noon_zenith(lat(32.7), day(81)), 32.7, epsilon = 1e-12);
        assert_eq!(noon_zenith(lat(0.0), day(81)), 0.0);
        assert_abs_diff_eq!(
            noon_zenith(lat(32.7), day(356)),
            56.144_571_371_428_44,
            epsilon = 1e-9
        );
    }

    #[test]
    fn tropical_noon_is_folded() {
        let e = noon_elevation_at_declination(lat(10.0), 23.45);
        assert_abs_diff_eq!(e.raw_deg, 103.45, epsilon = 1e-12);
        assert_abs_diff_eq!(e.folded_deg, 76.55, epsilon = 1e-12);
        let noon = sun_position(lat(10.0), day(172), HourAngle::NOON);
        assert_eq!(noon.azimuth_deg, 180.0);
        assert_abs_diff_eq!(
            noon.elevation_deg,
            noon_elevation(lat(10.0), day(172)).folded_deg,
            epsilon = 1e-9
        );
    }

    #[test]
    fn sun_position_values() {
        let p = sun_position(lat(32.7), day(81), HourAngle::NOON);
        assert_abs_diff_eq!(p.elevation_deg, 57.3, epsilon = 1e-9);
        assert_eq!(p.azimuth_deg, 0.0);
        assert_eq!(p.compass_azimuth_deg(), 180.0);

        let p = sun_position(lat(0.0), day(81), HourAngle::new(-90.0).unwrap());
        assert_abs_diff_eq!(p.elevation_deg, 0.0, epsilon = 1e-9);
        assert_abs_diff_eq!(p.azimuth_deg, -90.0, epsilon = 1e-9);
        assert_abs_diff_eq!(p.compass_azimuth_deg(), 90.0, epsilon = 1e-9);

        let p = sun_position(lat(32.7), day(172), HourAngle::new(-60.0).unwrap());
        assert_abs_diff_eq!(p.elevation_deg, 36.940_897_747_791_23, epsilon = 1e-9);
        assert_abs_diff_eq!(p.azimuth_deg, -96.253_744_696_362_19, epsilon = 1e-9);
        assert_abs_diff_eq!(p.zenith_deg + p.elevation_deg, 90.0, epsilon = 1e-12);
    }

    #[test]
    fn sunrise_values() {
        assert_eq!(sunrise_hour_angle(lat(32.7), day(81)), 90.0);
        assert_eq!(sunrise_hour_angle(lat(-50.0), day(81)), 90.0);
        assert_abs_diff_eq!(sunrise_hour_angle(lat(0.0), day(10)), 90.0, epsilon = 1e-12);
        assert_abs_diff_eq!(
            sunrise_hour_angle(lat(32.7), day(172)),
            106.169_255_796_675_26,
            epsilon = 1e-9
        );
        assert_eq!(sunrise_hour_angle(lat(80.0), day(356)), 0.0);
        assert_eq!(sunrise_hour_angle(lat(80.0), day(172)), 180.0);
    }

    #[test]
    fn declination_models_diverge_by_about_a_degree() {
        let (worst, at) = DayOfYear::all()
            .map(|d| {
                (
                    (declination_exact(d) - declination_simplified(d)).abs(),
                    d.get(),
                )
            })
            .fold((0.0, 0), |acc, x| if x.0 > acc.0 { x } else { acc });
        assert_eq!(at, 279);
        assert_abs_diff_eq!(worst, 1.063_492_713_620_747_6, epsilon = 1e-9);
        assert_eq!(
            DeclinationModel::Simplified.declination_deg(day(171)),
            declination_simplified(day(171))
        );
    }
}

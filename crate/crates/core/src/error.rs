use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("latitude {0} is outside [-90, 90] degrees")]
    LatitudeOutOfRange(f64),

    #[error(
        "latitude {0} is beyond the polar circles (|latitude| must be < 66.55 in strict mode)"
    )]
    LatitudeBeyondPolarCircle(f64),

    #[error("latitude {0} is not supported: tilt schedules are defined for the northern hemisphere only (latitude > 0)")]
    UnsupportedHemisphere(f64),

    #[error("day of year {0} is outside 1..=365")]
    DayOutOfRange(i64),

    #[error("month {0} is outside 1..=12")]
    MonthOutOfRange(i64),

    #[error("hour angle {0} is outside [-180, 180] degrees")]
    HourAngleOutOfRange(f64),

    #[error("tilt {0} is outside [0, 90] degrees")]
    TiltOutOfRange(f64),

    #[error("invalid time step {0} minutes (must be finite and in (0, 60])")]
    InvalidTimeStep(f64),

    #[error("empty period: first day {first} is after last day {last}")]
    EmptyPeriod { first: u16, last: u16 },

    #[error("invalid chart series {name}: {reason}")]
    InvalidSeries { name: String, reason: String },

    #[error("{0}")]
    Usage(String),

    #[error("i/o error: {0}")]
    Io(String),

    #[error("csv error: {0}")]
    Csv(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl From<csv::Error> for Error {
    fn from(e: csv::Error) -> Self {
        Error::Csv(e.to_string())
    }
}

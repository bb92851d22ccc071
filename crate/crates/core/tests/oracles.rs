//! Annual totals and optima checked against an independent numpy
//! implementation of the same clear-sky model (trapezoid over sunrise to
//! sunset at one-minute steps).

use pv_tilt::geometry::Location;
use pv_tilt::irradiance::{annual_insolation, IrradianceModel};
use pv_tilt::optimize::{gain_report, optimize_fixed_tilt, DayRange};
use pv_tilt::schedule::{TiltMode, TiltPolicy};

const REL_TOL: f64 = 1e-5;

fn lat(l: f64) -> Location {
    Location::new(l).unwrap()
}

fn close(got: f64, want: f64, what: &str) {
    let rel = ((got - want) / want).abs();
    assert!(rel <= REL_TOL, "{what}: {got} vs {want} (rel {rel:.1e})");
}

#[test]
fn fixed_latitude_tilt_annual_total() {
    let model = IrradianceModel::default();
    let e = annual_insolation(lat(32.7), &TiltPolicy::fixed(32.7).unwrap(), &model).energy_wh_m2;
    close(e, 2_120_833.859_994_782_6, "1 min");
    let half = IrradianceModel::with_time_step(0.5).unwrap();
    let e = annual_insolation(lat(32.7), &TiltPolicy::fixed(32.7).unwrap(), &half).energy_wh_m2;
    close(e, 2_120_834.709_967_603_4, "0.5 min");
}

#[test]
fn policy_totals_and_gains() {
    let model = IrradianceModel::default();
    let cases = [
        (
            TiltMode::Exact,
            [
                ("daily", 2_277_559.135_339_573_5, 7.389_795),
                ("monthly", 2_240_863.267_569_768_7, 5.659_538),
                ("seasonal", 2_216_414.098_039_335_6, 4.506_729),
            ],
        ),
        (
            TiltMode::Paper,
            [
                ("daily", 2_277_559.135_339_573_5, 7.389_795),
                ("monthly", 2_242_838.511_784_965_6, 5.752_674),
                ("seasonal", 2_218_255.100_269_579_3, 4.593_535),
            ],
        ),
    ];
    for (mode, expected) in cases {
        let r = gain_report(lat(32.7), mode, &model).unwrap();
        for (name, energy, gain) in expected {
            close(r.energy(name).unwrap(), energy, name);
            assert!(
                (r.gain(name).unwrap() - gain).abs() <= 1e-3,
                "{mode} {name} gain"
            );
        }
    }
}

#[test]
fn full_year_optima_match_grid_search() {
    let model = IrradianceModel::default();
    for (phi, coarse) in [(20.0, 17.5), (32.7, 28.5), (45.0, 38.5)] {
        let opt = optimize_fixed_tilt(lat(phi), DayRange::full_year(), &model);
        assert!(
            (opt.tilt_deg - coarse).abs() <= 0.5,
            "lat {phi}: {} vs {coarse}",
            opt.tilt_deg
        );
    }
}

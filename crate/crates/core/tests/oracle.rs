//! Values computed independently (plain double-precision arithmetic on the
//! CODATA 2018 constants, outside this crate) and frozen here. Atom counts
//! are m / m_He4, matching the molar mass m_He4 N_A used by the crate.

use gravlink::linkbudget::{
    free_space_coupling, gravity_wave_impedance, min_detectable_power_variant, PminVariant, ReceiverSpec,
};
use gravlink::orbitsim::{circular_orbit_acceleration, CentralBody};
use gravlink::radiation::{larmor_em_power, power_ratio};
use gravlink::transducer::{atom_count, circulation_quantum, critical_mass, cyclotron_gap, planck_mass, DropSpec};
use gravlink::units::{constants, parse_quantity, Quantity};

const K_E: f64 = 8.987551792261171e9;
const ALPHA_INVERSE: f64 = 137.03599900014373;
const LARMOR_E_UNIT_ACCEL: f64 = 5.708326765029507e-54;
const RATIO_ELECTRON: f64 = 2.400609505146664e-43;
const PLANCK_MASS: f64 = 2.176434342051127e-8;
const CRITICAL_MASS: f64 = 1.8592090938305211e-9;
const Z_G: f64 = 1.1190638744009686e-17;
const ATOMS_PLANCK: f64 = 3.274567359170817e18;
const ATOMS_CRITICAL: f64 = 2.7972842069719376e17;
const GAP_1T_J: f64 = 1.8548020145359598e-23;
const GAP_1T_K: f64 = 1.3434276304375403;
const EARTH_ACCEL_LEO: f64 = 8.694296348979412;
const PMIN_ROOT_BW: f64 = 1.309798646770144e-25;
const PMIN_PRINTED: f64 = 1.309798646770144e-16;
const COUPLING_SCENARIO: f64 = 1.1249999999999998e-8;
const CIRCULATION_QUANTUM: f64 = 9.969293628689625e-8;
const P_RECEIVED_SCENARIO: f64 = 2.8124999999999995e-9;

fn q(s: &str) -> Quantity {
    parse_quantity(s).unwrap()
}

fn assert_close(value: f64, expected: f64, tol: f64) {
    let r = ((value - expected) / expected).abs();
    assert!(r <= tol, "{value:e} vs {expected:e} (rel {r:e})");
}

fn he_drop(mass: Quantity) -> DropSpec {
    DropSpec::new(mass, 1, q("0.15 mm"), q("10 mK"), q("1 T")).unwrap()
}

#[test]
fn coulomb_and_fine_structure() {
    let k = constants();
    assert_close(k.k_e.magnitude(), K_E, 1e-15);
    assert_close(1.0 / k.alpha(), ALPHA_INVERSE, 1e-14);
}

#[test]
fn larmor_and_ratio() {
    let k = constants();
    assert_close(
        larmor_em_power(k.e, q("1 m/s2")).unwrap().magnitude(),
        LARMOR_E_UNIT_ACCEL,
        1e-14,
    );
    assert_close(power_ratio(k.e, k.m_e).unwrap(), RATIO_ELECTRON, 1e-14);
}

#[test]
fn mass_scales() {
    assert_close(planck_mass().unwrap().magnitude(), PLANCK_MASS, 1e-14);
    assert_close(critical_mass(1).unwrap().magnitude(), CRITICAL_MASS, 1e-14);
    assert_close(critical_mass(3).unwrap().magnitude(), 3.0 * CRITICAL_MASS, 1e-14);
}

#[test]
fn impedance() {
    assert_close(gravity_wave_impedance().magnitude(), Z_G, 1e-15);
}

#[test]
fn atom_counts() {
    assert_close(
        atom_count(&he_drop(planck_mass().unwrap())).unwrap(),
        ATOMS_PLANCK,
        1e-14,
    );
    assert_close(
        atom_count(&he_drop(critical_mass(1).unwrap())).unwrap(),
        ATOMS_CRITICAL,
        1e-14,
    );
}

#[test]
fn cyclotron_gap_at_one_tesla() {
    let gap = cyclotron_gap(q("1 T")).unwrap().magnitude();
    assert_close(gap, GAP_1T_J, 1e-14);
    assert_close(gap / constants().k_b.magnitude(), GAP_1T_K, 1e-14);
}

#[test]
fn low_earth_orbit_acceleration() {
    let a = circular_orbit_acceleration(&CentralBody::earth(), q("6771 km")).unwrap();
    assert_close(a.magnitude(), EARTH_ACCEL_LEO, 1e-14);
}

#[test]
fn radiometer_floors() {
    let rx = ReceiverSpec::new(q("300 K"), q("1 GHz"), q("1 s"), PminVariant::AsPrinted).unwrap();
    let root = min_detectable_power_variant(&rx, PminVariant::PerRootBandwidth).unwrap();
    let printed = min_detectable_power_variant(&rx, PminVariant::AsPrinted).unwrap();
    assert_close(root.magnitude(), PMIN_ROOT_BW, 1e-14);
    assert_close(printed.magnitude(), PMIN_PRINTED, 1e-14);
}

#[test]
fn circulation_quantum_value() {
    assert_close(circulation_quantum().magnitude(), CIRCULATION_QUANTUM, 1e-14);
}

#[test]
fn shipped_scenario_link() {
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../scenarios/ybco-12ghz.json");
    let scenario = gravlink::cli::load_config(&path).unwrap().link.unwrap();
    let report = scenario.evaluate().unwrap();
    assert_close(report.coupling, COUPLING_SCENARIO, 1e-14);
    assert_close(
        free_space_coupling(report.sigma_rx, q("1 m"), 1.0).unwrap(),
        COUPLING_SCENARIO,
        1e-14,
    );
    assert_close(report.p_received.magnitude(), P_RECEIVED_SCENARIO, 1e-9);
}

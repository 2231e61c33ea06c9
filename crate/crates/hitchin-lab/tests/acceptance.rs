//! The twelve acceptance criteria at their stated tolerances. Each test
//! prints one PASS/FAIL line; run with `--nocapture` to see them.

use hitchin_lab::painleve::default_table;
use hitchin_lab::suite::{run_criterion, DEFAULT_SEED};

fn criterion(id: u8) {
    let o = run_criterion(id, default_table(), DEFAULT_SEED);
    println!("{}", o.line());
    for (k, v) in &o.values {
        println!("    {k} = {v:.6e}");
    }
    assert!(o.passed, "{}", o.line());
}

#[test]
fn c01_painleve_bvp() {
    criterion(1);
}

#[test]
fn c02_profile_properties() {
    criterion(2);
}

#[test]
fn c03_fiducial_exactness() {
    criterion(3);
}

#[test]
fn c04_green_scaling() {
    criterion(4);
}

#[test]
fn c05_packet_ladder() {
    criterion(5);
}

#[test]
fn c06_coulomb_gauge() {
    criterion(6);
}

#[test]
fn c07_radial_direction() {
    criterion(7);
}

#[test]
fn c08_vertical_mixed() {
    criterion(8);
}

#[test]
fn c09_cone_structure() {
    criterion(9);
}

#[test]
fn c10_chart_crosscheck() {
    criterion(10);
}

#[test]
fn c11_newton_correction() {
    criterion(11);
}

#[test]
fn c12_packet_weights() {
    criterion(12);
}

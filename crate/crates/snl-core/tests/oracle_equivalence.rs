//! Cross-validation of the shortest-path distance against the exhaustive
//! GF(2) oracle on random defect configurations, for both adaptation methods
//! and both Pauli types.

use snl_core::boundary::frame_for;
use snl_core::compose::{adapt, AdaptOptions, Method};
use snl_core::distance::{brute_force_distance, graph_distance};
use snl_core::geom::Pauli;
use snl_core::lattice::{sample_defects, Chip, DefectRates, Padding, WindowSpec};
use snl_core::strategy::HeuristicsConfig;

fn check_config(d: u32, seed: u64, method: Method) -> Option<(i32, i32, i32, i32)> {
    let chip = Chip::build(WindowSpec::square(d).with_padding(Padding::Ancilla)).unwrap();
    let defects = sample_defects(&chip, &DefectRates::uniform(0.05), seed);
    let heur = HeuristicsConfig::preset("h2").unwrap();
    let opts = AdaptOptions::new(method, heur);
    let out = match adapt(&chip, &defects, &opts) {
        Ok(o) => o,
        Err(_) => return None, // adapt failures are legal at this defect rate
    };
    let gx = graph_distance(&out.patch, Pauli::X);
    let gz = graph_distance(&out.patch, Pauli::Z);
    let bx = brute_force_distance(&out.patch, Pauli::X, 40).unwrap();
    let bz = brute_force_distance(&out.patch, Pauli::Z, 40).unwrap();
    Some((gx, bx, gz, bz))
}

fn run(d: u32, seeds: std::ops::Range<u64>, method: Method) {
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for seed in seeds {
        if let Some((gx, bx, gz, bz)) = check_config(d, seed, method) {
            checked += 1;
            if gx != bx || gz != bz {
                failures.push((seed, gx, bx, gz, bz));
            }
        }
    }
    assert!(
        failures.is_empty(),
        "d={d} {}: {} mismatches of {checked}: {failures:?}",
        method.name(),
        failures.len()
    );
    assert!(checked > 0);
}

#[test]
fn oracle_equivalence_d3_snl() {
    run(3, 0..200, Method::Snl);
}

#[test]
fn oracle_equivalence_d3_dqd() {
    run(3, 0..200, Method::Dqd);
}

#[test]
fn oracle_equivalence_d5_snl() {
    run(5, 1000..1200, Method::Snl);
}

#[test]
fn oracle_equivalence_d5_dqd() {
    run(5, 1000..1200, Method::Dqd);
}

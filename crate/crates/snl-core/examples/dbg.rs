use snl_core::compose::{adapt, AdaptOptions, Method};
use snl_core::distance::{brute_force_distance, graph_distance};
use snl_core::geom::Pauli;
use snl_core::lattice::{sample_defects, Chip, DefectRates, Padding, WindowSpec};
use snl_core::strategy::HeuristicsConfig;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let d: u32 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(3);
    let seed: u64 = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(134);
    let method = if args.get(3).map(|s| s.as_str()) == Some("dqd") {
        Method::Dqd
    } else {
        Method::Snl
    };
    let chip = Chip::build(WindowSpec::square(d).with_padding(Padding::Ancilla)).unwrap();
    let defects = sample_defects(&chip, &DefectRates::uniform(0.05), seed);
    println!("defects: data={:?}", defects.data);
    println!("         anc={:?}", defects.ancillas);
    println!("         links={:?}", defects.links);
    let heur = HeuristicsConfig::preset("h2").unwrap();
    let out = adapt(&chip, &defects, &AdaptOptions::new(method, heur)).unwrap();
    let p = &out.patch;
    println!("flip={} dead={:?}", out.flip, p.dead_data);
    println!("corners={:?}", p.corners);
    for c in &p.checks {
        println!(
            "  {:?} {:?} anc={:?} origin={:?} sup={:?} parity={:?}",
            c.kind,
            c.pauli,
            c.ancilla,
            c.origin,
            c.support.iter().map(|s| s.0).collect::<Vec<_>>(),
            c.parity
        );
    }
    for g in &p.groups {
        println!("  group {:?} members={:?} product={:?}", g.pauli, g.members, g.product);
    }
    println!("boundary_nodes={:?}", p.boundary_nodes);
    for q in [Pauli::X, Pauli::Z] {
        println!(
            "{q}: graph={} brute={}",
            graph_distance(p, q),
            brute_force_distance(p, q, 40).unwrap()
        );
    }
    println!("logical_x={:?}", p.logical_x);
    println!("logical_z={:?}", p.logical_z);
}

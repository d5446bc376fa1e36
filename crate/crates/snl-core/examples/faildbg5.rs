use snl_core::boundary::{deform_candidates, frame_for};
use snl_core::distance::graph_distance;
use snl_core::geom::{Coord, Link, Pauli};
use snl_core::lattice::{Chip, DefectMap, WindowSpec};
use snl_core::primitives::link_repurposing_options;

fn main() {
    let chip = Chip::build(WindowSpec::square(5)).unwrap();
    let l = Link { data: Coord::new(5, 5), ancilla: Coord::new(6, 6) };
    let mut defects = DefectMap::default();
    defects.links.insert(l);
    let frame = frame_for(&chip, false, &defects);
    for plan in link_repurposing_options(l, &frame) {
        println!("== {:?}", plan.orientation);
        match deform_candidates(&frame, &plan.pieces()) {
            Ok(ps) => for p in ps {
                println!("  ok d=({},{}) dead={:?} groups={}",
                    graph_distance(&p, Pauli::X), graph_distance(&p, Pauli::Z), p.dead_data, p.groups.len());
            },
            Err(e) => println!("  ERR {e}"),
        }
    }
}

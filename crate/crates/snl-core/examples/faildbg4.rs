use snl_core::boundary::{deform_candidates, frame_for};
use snl_core::distance::graph_distance;
use snl_core::geom::{Coord, Link, Pauli};
use snl_core::lattice::{Chip, DefectMap, Padding, WindowSpec};
use snl_core::primitives::link_repurposing_options;

fn main() {
    let chip = Chip::build(WindowSpec::square(17).with_padding(Padding::Ancilla)).unwrap();
    let l = Link { data: Coord::new(31, 9), ancilla: Coord::new(32, 10) };
    let mut defects = DefectMap::default();
    defects.links.insert(l);
    let frame = frame_for(&chip, false, &defects);
    let plans = link_repurposing_options(l, &frame);
    for plan in &plans {
        println!("== {:?}", plan.orientation);
        match deform_candidates(&frame, &plan.pieces()) {
            Ok(ps) => {
                for p in ps {
                    println!("  ok d=({},{}) dead={:?}", graph_distance(&p, Pauli::X), graph_distance(&p, Pauli::Z), p.dead_data);
                }
            }
            Err(e) => println!("  ERR {e}"),
        }
    }
}

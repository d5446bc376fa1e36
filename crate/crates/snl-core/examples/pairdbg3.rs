use snl_core::boundary::{deform_candidates, frame_for};
use snl_core::distance::graph_distance;
use snl_core::geom::{Coord, Link, Pauli};
use snl_core::lattice::{Chip, DefectMap, Padding, WindowSpec};
use snl_core::primitives::{classify_orientations, link_repurposing_options};

fn main() {
    let chip = Chip::build(WindowSpec::square(7).with_padding(Padding::Ancilla)).unwrap();
    for l in [
        Link { data: Coord::new(7, 13), ancilla: Coord::new(8, 12) },
        Link { data: Coord::new(13, 7), ancilla: Coord::new(12, 8) },
    ] {
        let mut m = DefectMap::default();
        m.links.insert(l);
        let frame = frame_for(&chip, false, &m);
        let mut plans = link_repurposing_options(l, &frame);
        classify_orientations(&frame, &mut plans);
        println!("link {:?}-{:?} (u pauli {:?})", l.data, l.ancilla, snl_core::lattice::native_pauli(l.ancilla, false));
        for p in &plans {
            match deform_candidates(&frame, &p.pieces()) {
                Ok(ps) => {
                    let best = ps.iter().map(|pp| (graph_distance(pp, Pauli::X), graph_distance(pp, Pauli::Z)))
                        .max_by_key(|&(x, z)| (x.min(z), x + z)).unwrap();
                    println!("  {:?} preserving={} -> {:?}", p.orientation, p.distance_preserving, best);
                }
                Err(e) => println!("  {:?}: ERR {e}", p.orientation),
            }
        }
        // data-primitive option
        let pieces = snl_core::primitives::data_defect_pieces(l.data);
        if let Ok(ps) = deform_candidates(&frame, &pieces) {
            let best = ps.iter().map(|pp| (graph_distance(pp, Pauli::X), graph_distance(pp, Pauli::Z)))
                .max_by_key(|&(x, z)| (x.min(z), x + z)).unwrap();
            println!("  data-primitive -> {:?}", best);
        }
    }
}

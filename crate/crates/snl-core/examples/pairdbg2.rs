use snl_core::boundary::{deform_candidates, frame_for};
use snl_core::distance::graph_distance;
use snl_core::geom::{Coord, Link, Pauli};
use snl_core::lattice::{Chip, DefectMap, Padding, WindowSpec};
use snl_core::primitives::link_repurposing_options;
use snl_core::patch::Pieces;

fn main() {
    let chip = Chip::build(WindowSpec::square(7).with_padding(Padding::Ancilla)).unwrap();
    let l1 = Link { data: Coord::new(7, 13), ancilla: Coord::new(8, 12) };
    let l2 = Link { data: Coord::new(13, 7), ancilla: Coord::new(12, 8) };
    let mut m = DefectMap::default();
    m.links.insert(l1);
    m.links.insert(l2);
    let frame = frame_for(&chip, false, &m);
    let p1 = link_repurposing_options(l1, &frame);
    let p2 = link_repurposing_options(l2, &frame);
    for (i, a) in p1.iter().enumerate() {
        for (j, b) in p2.iter().enumerate() {
            let mut pieces = Pieces::default();
            pieces.merge(&a.pieces());
            pieces.merge(&b.pieces());
            match deform_candidates(&frame, &pieces) {
                Ok(ps) => {
                    let best = ps.iter().map(|p| {
                        (graph_distance(p, Pauli::X), graph_distance(p, Pauli::Z))
                    }).max_by_key(|&(x, z)| (x.min(z), x + z)).unwrap();
                    println!("{:?}x{:?}: ok {:?}", a.orientation, b.orientation, best);
                }
                Err(e) => println!("{:?}x{:?}: ERR {e}", a.orientation, b.orientation),
            }
        }
        let _ = i;
    }
}

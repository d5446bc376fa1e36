use snl_core::boundary::{deform_candidates, frame_for};
use snl_core::distance::graph_distance;
use snl_core::geom::{Coord, Pauli};
use snl_core::lattice::{Chip, DefectMap, Padding, WindowSpec};
use snl_core::primitives::{ancilla_repurposing_options, data_defect_pieces};

fn main() {
    // d+1 chip = plain 8x8
    let chip = Chip::build(WindowSpec::square(7).with_padding(Padding::DPlusOne)).unwrap();
    // corner-adjacent ancilla defect
    let a = Coord::new(2, 2);
    let mut m = DefectMap::default();
    m.ancillas.insert(a);
    let frame = frame_for(&chip, false, &m);
    for plan in ancilla_repurposing_options(a, &frame) {
        match deform_candidates(&frame, &plan.pieces()) {
            Ok(ps) => {
                let best = ps.iter().map(|p| (graph_distance(p, Pauli::X), graph_distance(p, Pauli::Z)))
                    .max_by_key(|&(x, z)| (x.min(z), x + z)).unwrap();
                println!("anc(2,2) {:?} -> {:?} ({} candidates)", plan.orientation, best, ps.len());
            }
            Err(e) => println!("anc(2,2) {:?}: ERR {e}", plan.orientation),
        }
    }
    // corner data defect
    for q in [Coord::new(1, 1), Coord::new(15, 15)] {
        let mut m = DefectMap::default();
        m.data.insert(q);
        let frame = frame_for(&chip, false, &m);
        match deform_candidates(&frame, &data_defect_pieces(q)) {
            Ok(ps) => {
                let best = ps.iter().map(|p| (graph_distance(p, Pauli::X), graph_distance(p, Pauli::Z)))
                    .max_by_key(|&(x, z)| (x.min(z), x + z)).unwrap();
                println!("corner data {q:?} -> {:?} ({} candidates)", best, ps.len());
            }
            Err(e) => println!("corner data {q:?}: ERR {e}"),
        }
    }
}

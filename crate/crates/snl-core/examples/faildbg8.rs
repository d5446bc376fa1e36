use snl_core::boundary::{deform_candidates, frame_for};
use snl_core::dqd::dqd_pieces;
use snl_core::geom::Coord;
use snl_core::lattice::{Chip, DefectMap, Padding, WindowSpec};

fn main() {
    let chip = Chip::build(WindowSpec::square(17).with_padding(Padding::Ancilla)).unwrap();
    for which in ["anc", "corner"] {
        let mut m = DefectMap::default();
        if which == "anc" {
            m.ancillas.insert(Coord::new(2, 18));
        } else {
            m.data.insert(Coord::new(31, 33));
        }
        let frame = frame_for(&chip, false, &m);
        let pieces = dqd_pieces(&frame);
        println!("== {which}");
        match deform_candidates(&frame, &pieces) {
            Ok(ps) => println!("ok {} patches", ps.len()),
            Err(e) => println!("ERR {e}"),
        }
    }
}

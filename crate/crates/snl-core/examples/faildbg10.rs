use snl_core::boundary::{deform_candidates, frame_for};
use snl_core::dqd::dqd_pieces;
use snl_core::geom::{Coord, Link};
use snl_core::lattice::{Chip, DefectMap, Padding, WindowSpec};

fn main() {
    let chip = Chip::build(WindowSpec::square(17).with_padding(Padding::Ancilla)).unwrap();
    let mut m = DefectMap::default();
    m.data.insert(Coord::new(3, 1));
    m.links.insert(Link { data: Coord::new(1, 3), ancilla: Coord::new(2, 2) });
    let frame = frame_for(&chip, false, &m);
    let pieces = dqd_pieces(&frame);
    match deform_candidates(&frame, &pieces) {
        Ok(ps) => println!("ok {}", ps.len()),
        Err(e) => println!("ERR {e}"),
    }
}

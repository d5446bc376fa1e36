use snl_core::boundary::{deform_candidates, frame_for};
use snl_core::dqd::dqd_pieces;
use snl_core::geom::{Coord, Link};
use snl_core::lattice::{Chip, DefectMap, Padding, WindowSpec};

fn main() {
    let chip = Chip::build(WindowSpec::square(17).with_padding(Padding::Ancilla)).unwrap();
    let mut singles: Vec<(&str, DefectMap)> = Vec::new();
    for (x, y) in [(5,9),(13,3),(31,33)] {
        let mut m = DefectMap::default(); m.data.insert(Coord::new(x,y));
        singles.push(("data", m));
    }
    for (x, y) in [(2,18),(2,24),(4,30),(26,24)] {
        let mut m = DefectMap::default(); m.ancillas.insert(Coord::new(x,y));
        singles.push(("anc", m));
    }
    for (qx,qy,ax,ay) in [(5,15,6,14),(5,33,6,32),(11,13,10,12),(13,13,12,14),(13,33,12,34),(15,19,16,18),(17,5,16,6),(17,15,16,16),(17,17,16,18),(21,9,20,8),(25,33,26,32)] {
        let mut m = DefectMap::default();
        m.links.insert(Link { data: Coord::new(qx,qy), ancilla: Coord::new(ax,ay) });
        singles.push(("link", m));
    }
    for (kind, m) in singles {
        let frame = frame_for(&chip, false, &m);
        let pieces = dqd_pieces(&frame);
        let tag = format!("{kind} {:?}{:?}{:?}", m.data, m.ancillas, m.links.iter().map(|l| (l.data, l.ancilla)).collect::<Vec<_>>());
        match deform_candidates(&frame, &pieces) {
            Ok(_) => println!("ok   {tag}"),
            Err(e) => println!("ERR  {tag}: {e}"),
        }
    }
}

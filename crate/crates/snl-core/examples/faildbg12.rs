use snl_core::boundary::{deform_candidates, frame_for};
use snl_core::distance::graph_distance;
use snl_core::geom::{Coord, Link, Pauli};
use snl_core::lattice::{Chip, DefectMap, Padding, WindowSpec};
use snl_core::patch::{Orientation, Pieces, PlanShape, Repurposing};

fn main() {
    let chip = Chip::build(WindowSpec::square(17).with_padding(Padding::Ancilla)).unwrap();
    let mut m = DefectMap::default();
    let u = Coord::new(28, 6);
    m.links.insert(Link { data: Coord::new(27, 5), ancilla: u });
    m.links.insert(Link { data: Coord::new(29, 5), ancilla: u });
    let frame = frame_for(&chip, false, &m);
    for orientation in [Orientation::HorizontalPair, Orientation::VerticalPair] {
        let mut p = Pieces::default();
        for mm in orientation.measurers(u) {
            p.reps.push(Repurposing { origin: u, measurer: mm, pair: orientation.pair(u, mm), pauli: Pauli::X });
        }
        p.shapes.push(PlanShape { origin: u, orientation });
        p.replaced.insert(u);
        println!("== {:?}", orientation);
        match deform_candidates(&frame, &p) {
            Ok(ps) => for pp in ps {
                println!("  ok ({},{})", graph_distance(&pp, Pauli::X), graph_distance(&pp, Pauli::Z));
            },
            Err(e) => println!("  ERR {e}"),
        }
    }
}

use snl_core::boundary::{deform_candidates, frame_for};
use snl_core::distance::graph_distance;
use snl_core::geom::{Coord, Link, Pauli};
use snl_core::lattice::{Chip, DefectMap, Padding, WindowSpec};
use snl_core::primitives::link_repurposing_options;
use snl_core::patch::Orientation;

fn main() {
    let chip = Chip::build(WindowSpec::square(7).with_padding(Padding::Ancilla)).unwrap();
    let l = Link { data: Coord::new(7, 13), ancilla: Coord::new(8, 12) };
    let mut m = DefectMap::default();
    m.links.insert(l);
    let frame = frame_for(&chip, false, &m);
    let plans = link_repurposing_options(l, &frame);
    let plan = plans.iter().find(|p| p.orientation == Orientation::VerticalPair).unwrap();
    let ps = deform_candidates(&frame, &plan.pieces()).unwrap();
    for p in &ps {
        println!("patch ({},{}): dead={:?}", graph_distance(p, Pauli::X), graph_distance(p, Pauli::Z), p.dead_data);
        for c in &p.checks {
            if c.kind != snl_core::check::CheckKind::Stabilizer {
                println!("  {:?} {:?} anc {:?} sup {:?}", c.kind, c.pauli, c.ancilla, c.support.iter().map(|s| s.0).collect::<Vec<_>>());
            }
        }
        for g in &p.groups {
            println!("  group {:?} {:?}", g.pauli, g.product);
        }
    }
}

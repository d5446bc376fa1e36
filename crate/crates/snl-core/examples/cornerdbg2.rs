use snl_core::boundary::{deform_candidates, frame_for};
use snl_core::distance::graph_distance;
use snl_core::geom::{Coord, Pauli};
use snl_core::lattice::{Chip, DefectMap, Padding, WindowSpec};
use snl_core::primitives::ancilla_repurposing_options;
use snl_core::patch::Orientation;

fn main() {
    let chip = Chip::build(WindowSpec::square(7).with_padding(Padding::DPlusOne)).unwrap();
    let a = Coord::new(2, 2);
    let mut m = DefectMap::default();
    m.ancillas.insert(a);
    let frame = frame_for(&chip, false, &m);
    let plans = ancilla_repurposing_options(a, &frame);
    let plan = plans.iter().find(|p| p.orientation == Orientation::HorizontalPair).unwrap();
    let ps = deform_candidates(&frame, &plan.pieces()).unwrap();
    for p in &ps {
        println!("d=({},{}) dead={:?} corners={:?}", graph_distance(p, Pauli::X), graph_distance(p, Pauli::Z), p.dead_data, p.corners);
        for c in &p.checks {
            if c.kind != snl_core::check::CheckKind::Stabilizer {
                println!("  {:?} {:?} anc {:?} sup {:?} origin {:?}", c.kind, c.pauli, c.ancilla, c.support.iter().map(|s| s.0).collect::<Vec<_>>(), c.origin);
            }
        }
        for g in &p.groups {
            println!("  group {:?} {:?}", g.pauli, g.product);
        }
    }
}

use snl_core::boundary::{deform_candidates, frame_for};
use snl_core::clustering::cluster_defects;
use snl_core::dqd::dqd_pieces;
use snl_core::lattice::{sample_defects, Chip, DefectRates, Padding, WindowSpec};

fn main() {
    let chip = Chip::build(WindowSpec::square(17).with_padding(Padding::Ancilla)).unwrap();
    let defects = sample_defects(&chip, &DefectRates::uniform(0.01), 0);
    let frame = frame_for(&chip, false, &defects);
    // DQD piece by piece: adapt each cluster alone to find the poison one
    let clusters = cluster_defects(&frame);
    for c in &clusters {
        let mut sub = snl_core::lattice::DefectMap::default();
        sub.data.extend(c.defects.data.iter());
        sub.ancillas.extend(c.defects.ancillas.iter());
        sub.links.extend(c.defects.links.iter());
        let f2 = frame_for(&chip, false, &sub);
        let pieces = dqd_pieces(&f2);
        match deform_candidates(&f2, &pieces) {
            Ok(_) => println!("cluster {}: ok", c.id),
            Err(e) => println!("cluster {}: ERR {e}  defects d={:?} a={:?} l={:?}", c.id, c.defects.data, c.defects.ancillas, c.defects.links),
        }
    }
}

use snl_core::boundary::{deform_candidates, frame_for};
use snl_core::clustering::cluster_defects;
use snl_core::dqd::dqd_pieces;
use snl_core::lattice::{sample_defects, Chip, DefectRates, Padding, WindowSpec, DefectMap};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let seed: u64 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(6);
    let chip = Chip::build(WindowSpec::square(17).with_padding(Padding::Ancilla)).unwrap();
    let defects = sample_defects(&chip, &DefectRates::uniform(0.01), seed);
    let frame = frame_for(&chip, false, &defects);
    for c in cluster_defects(&frame) {
        let mut sub = DefectMap::default();
        sub.data.extend(c.defects.data.iter());
        sub.ancillas.extend(c.defects.ancillas.iter());
        sub.links.extend(c.defects.links.iter());
        let f2 = frame_for(&chip, false, &sub);
        let pieces = dqd_pieces(&f2);
        match deform_candidates(&f2, &pieces) {
            Ok(_) => {}
            Err(e) => println!("cluster {}: {e}\n  d={:?} a={:?} l={:?}", c.id, c.defects.data, c.defects.ancillas, c.defects.links),
        }
    }
}

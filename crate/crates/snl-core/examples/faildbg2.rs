use snl_core::boundary::{deform_candidates, frame_for};
use snl_core::clustering::cluster_defects;
use snl_core::dqd::dqd_pieces;
use snl_core::lattice::{sample_defects, Chip, DefectRates, Padding, WindowSpec};
use snl_core::strategy::{local_search, HeuristicsConfig};
use std::time::Instant;

fn main() {
    let chip = Chip::build(WindowSpec::square(17).with_padding(Padding::Ancilla)).unwrap();
    let defects = sample_defects(&chip, &DefectRates::uniform(0.01), 0);
    let frame = frame_for(&chip, false, &defects);
    let clusters = cluster_defects(&frame);
    println!("{} clusters", clusters.len());
    for c in &clusters {
        println!("cluster {}: data={:?} anc={:?} links={:?}", c.id, c.defects.data, c.defects.ancillas, c.defects.links);
        let heur = HeuristicsConfig::preset("h1").unwrap();
        let t = Instant::now();
        match local_search(&frame, c, &heur) {
            Ok(s) => println!("  {} strategies, best loss {:?} [{:.2?}]", s.len(), s[0].loss, t.elapsed()),
            Err(e) => println!("  FAIL: {e} [{:.2?}]", t.elapsed()),
        }
    }
    let pieces = dqd_pieces(&frame);
    let t = Instant::now();
    match deform_candidates(&frame, &pieces) {
        Ok(p) => println!("dqd ok {} candidates [{:.2?}]", p.len(), t.elapsed()),
        Err(e) => println!("dqd FAIL: {e} [{:.2?}]", t.elapsed()),
    }
}

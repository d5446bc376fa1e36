use snl_core::boundary::{deform_best, frame_for};
use snl_core::clustering::cluster_defects;
use snl_core::lattice::{sample_defects, Chip, DefectRates, Padding, WindowSpec, DefectMap};
use snl_core::strategy::{local_search, HeuristicsConfig};

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let seed: u64 = args.get(1).map(|s| s.parse().unwrap()).unwrap_or(7);
    let cl: usize = args.get(2).map(|s| s.parse().unwrap()).unwrap_or(1);
    let chip = Chip::build(WindowSpec::square(17).with_padding(Padding::Ancilla)).unwrap();
    let defects = sample_defects(&chip, &DefectRates::uniform(0.01), seed);
    let frame = frame_for(&chip, false, &defects);
    let clusters = cluster_defects(&frame);
    let c = &clusters[cl];
    println!("cluster {}: d={:?} a={:?} l={:?}", c.id, c.defects.data, c.defects.ancillas, c.defects.links);
    match local_search(&frame, c, &HeuristicsConfig::preset("h6").unwrap()) {
        Ok(s) => println!("{} strategies best={:?}", s.len(), s[0].loss),
        Err(e) => println!("FAIL {e}"),
    }
    // DQD on the same cluster alone
    let mut sub = DefectMap::default();
    sub.data.extend(c.defects.data.iter());
    sub.ancillas.extend(c.defects.ancillas.iter());
    sub.links.extend(c.defects.links.iter());
    let f2 = frame_for(&chip, false, &sub);
    let pieces = snl_core::dqd::dqd_pieces(&f2);
    match deform_best(&f2, &pieces) {
        Ok((_, dx, dz)) => println!("dqd alone ok ({dx},{dz})"),
        Err(e) => println!("dqd alone FAIL {e}"),
    }
}

use snl_core::boundary::frame_for;
use snl_core::clustering::cluster_defects;
use snl_core::compose::{adapt, AdaptOptions, Method};
use snl_core::geom::{Coord, Link};
use snl_core::lattice::{Chip, DefectMap, Padding, WindowSpec};
use snl_core::strategy::{local_search, HeuristicsConfig};

fn main() {
    let chip = Chip::build(WindowSpec::square(7).with_padding(Padding::Ancilla)).unwrap();
    let mut m = DefectMap::default();
    m.links.insert(Link { data: Coord::new(7, 13), ancilla: Coord::new(8, 12) });
    m.links.insert(Link { data: Coord::new(13, 7), ancilla: Coord::new(12, 8) });
    let frame = frame_for(&chip, false, &m);
    let clusters = cluster_defects(&frame);
    println!("{} clusters", clusters.len());
    for c in &clusters {
        println!("  cluster {}: {:?}", c.id, c.defects.links);
        match local_search(&frame, c, &HeuristicsConfig::preset("h6").unwrap()) {
            Ok(s) => {
                for st in s.iter().take(4) {
                    println!("    loss={:?} active={} reps={} dead={:?}", st.loss, st.active_data, st.pieces.reps.len(), st.pieces.dead);
                }
            }
            Err(e) => println!("    FAIL {e}"),
        }
    }
    let out = adapt(&chip, &m, &AdaptOptions::new(Method::Snl, HeuristicsConfig::preset("h6").unwrap())).unwrap();
    println!("h6 adapt: ({},{})", out.report.d_x, out.report.d_z);
}

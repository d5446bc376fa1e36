use snl_core::boundary::frame_for;
use snl_core::clustering::cluster_defects;
use snl_core::compose::{adapt, AdaptOptions, Method};
use snl_core::geom::{Coord, Link};
use snl_core::lattice::{Chip, DefectMap, Padding, WindowSpec};
use snl_core::strategy::{local_search, HeuristicsConfig};

fn main() {
    // single bulk link defect with X-type ancilla, various positions
    for d in [7u32, 17] {
        let chip = Chip::build(WindowSpec::square(d).with_padding(Padding::Ancilla)).unwrap();
        for (qx, qy, ax, ay) in [(5, 5, 6, 6), (5, 5, 6, 4), (3, 5, 4, 6), (5, 3, 4, 2)] {
            let mut defects = DefectMap::default();
            let l = Link { data: Coord::new(qx, qy), ancilla: Coord::new(ax, ay) };
            defects.links.insert(l);
            let out = adapt(&chip, &defects, &AdaptOptions::new(Method::Snl, HeuristicsConfig::preset("h1").unwrap())).unwrap();
            println!("d={d} link ({qx},{qy})-({ax},{ay}): ({}, {})", out.report.d_x, out.report.d_z);
        }
        // single bulk ancilla defect X-type
        for (ax, ay) in [(6, 4), (4, 6), (6, 6), (8, 8)] {
            let mut defects = DefectMap::default();
            defects.ancillas.insert(Coord::new(ax, ay));
            let out = adapt(&chip, &defects, &AdaptOptions::new(Method::Snl, HeuristicsConfig::preset("h1").unwrap())).unwrap();
            println!("d={d} anc ({ax},{ay}): ({}, {})", out.report.d_x, out.report.d_z);
        }
        // the exact cluster-1 case scaled: link at (31,9)-(32,10) for d=17
        if d == 17 {
            let mut defects = DefectMap::default();
            defects.links.insert(Link { data: Coord::new(31, 9), ancilla: Coord::new(32, 10) });
            let frame = frame_for(&chip, false, &defects);
            let clusters = cluster_defects(&frame);
            let s = local_search(&frame, &clusters[0], &HeuristicsConfig::preset("h6").unwrap()).unwrap();
            for st in &s {
                println!("  strategy loss={:?} active={} reps={:?} dead={:?}", st.loss, st.active_data, st.pieces.reps.len(), st.pieces.dead);
            }
        }
    }
}

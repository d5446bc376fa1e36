//! The data-qubit-disabling baseline.
//!
//! DQD disables the four data neighbors of every defective ancilla, the data
//! qubit of every defective gate, and keeps data defects; the weight-1
//! avalanche then produces rectangular holes. Gauge checks, super-stabilizers,
//! boundary deformation, and corner optimization are shared with the
//! repurposing pipeline, so the two methods differ only in the per-defect
//! primitive table.

use crate::patch::{Frame, Pieces};

/// The DQD dead set for a frame's code defects, before the avalanche (which
/// `resolve_snakes` applies during assembly).
pub fn dqd_pieces(frame: &Frame) -> Pieces {
    let mut pieces = Pieces::default();
    let code = &frame.code_defects;
    pieces.dead.extend(code.data.iter().copied());
    for &a in &code.ancillas {
        for d in a.diagonals() {
            if frame.chip.data.contains(&d) {
                pieces.dead.insert(d);
            }
        }
    }
    for l in &code.links {
        pieces.dead.insert(l.data);
    }
    pieces
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::frame_for;
    use crate::compose::{adapt, AdaptOptions, Method};
    use crate::geom::Coord;
    use crate::lattice::{Chip, DefectMap, WindowSpec};
    use crate::strategy::HeuristicsConfig;

    #[test]
    fn isolated_ancilla_defect_costs_two_each_way() {
        let chip = Chip::build(WindowSpec::square(7)).unwrap();
        let mut defects = DefectMap::default();
        defects.ancillas.insert(Coord::new(6, 6));
        let opts = AdaptOptions::new(Method::Dqd, HeuristicsConfig::default());
        let out = adapt(&chip, &defects, &opts).unwrap();
        assert_eq!((out.report.d_x, out.report.d_z), (5, 5));
        // the hole's data footprint is the 2x2 block around the ancilla
        assert_eq!(out.patch.dead_data.len(), 4);
    }

    #[test]
    fn holes_are_rectangular() {
        // two diagonally adjacent ancilla defects trigger the avalanche into
        // one rectangular block
        let chip = Chip::build(WindowSpec::square(9)).unwrap();
        let mut defects = DefectMap::default();
        defects.ancillas.insert(Coord::new(6, 6));
        defects.ancillas.insert(Coord::new(8, 8));
        let frame = frame_for(&chip, false, &defects);
        let pieces = dqd_pieces(&frame);
        let (dead, _) =
            crate::patch::resolve_snakes(&frame, &[], &pieces.dead, &pieces.replaced);
        let xs: Vec<i32> = dead.iter().map(|c| c.x).collect();
        let ys: Vec<i32> = dead.iter().map(|c| c.y).collect();
        let (x0, x1) = (*xs.iter().min().unwrap(), *xs.iter().max().unwrap());
        let (y0, y1) = (*ys.iter().min().unwrap(), *ys.iter().max().unwrap());
        let area = ((x1 - x0) / 2 + 1) * ((y1 - y0) / 2 + 1);
        assert_eq!(dead.len() as i32, area, "dead set fills its bounding box");
    }
}

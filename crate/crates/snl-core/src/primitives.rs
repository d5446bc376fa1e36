//! Local adaptations for isolated data, ancilla, and link defects, and the
//! distance-preserving classification of repurposing orientations.

use alloc::vec::Vec;

use crate::boundary::deform_best;
use crate::geom::{Coord, Link, Pauli};
use crate::patch::{Frame, Orientation, Pieces, PlanShape, Repurposing};

/// A way to adapt around one defective ancilla or gate.
#[derive(Clone, Debug)]
pub struct RepurposingPlan {
    pub origin: Coord,
    pub orientation: Orientation,
    /// The two weight-2 checks (for link defects: complement then remnant).
    pub checks: [Repurposing; 2],
    /// Set by `classify_orientations`.
    pub distance_preserving: bool,
}

impl RepurposingPlan {
    pub fn pieces(&self) -> Pieces {
        let mut p = Pieces::default();
        p.reps.extend(self.checks);
        p.shapes.push(PlanShape {
            origin: self.origin,
            orientation: self.orientation,
        });
        p.replaced.insert(self.origin);
        p
    }
}

/// The data-defect primitive: disabling `q` converts its four neighboring
/// checks into weight-3 gauge checks whose same-type products form two
/// weight-6 super-stabilizers. Expressed as pieces; the checks and groups
/// emerge from assembly.
pub fn data_defect_pieces(q: Coord) -> Pieces {
    debug_assert!(q.is_data());
    let mut p = Pieces::default();
    p.dead.insert(q);
    p
}

/// The two repurposing plans around a defective ancilla: the flanking
/// ancillas of the chosen orientation each measure one weight-2 half of the
/// native stabilizer in alternate rounds.
pub fn ancilla_repurposing_options(a: Coord, frame: &Frame) -> Vec<RepurposingPlan> {
    debug_assert!(a.is_ancilla());
    let pauli = frame.pauli_of(a);
    Orientation::BOTH
        .iter()
        .map(|&orientation| {
            let [m1, m2] = orientation.measurers(a);
            let mk = |m: Coord| Repurposing {
                origin: a,
                measurer: m,
                pair: orientation.pair(a, m),
                pauli,
            };
            RepurposingPlan {
                origin: a,
                orientation,
                checks: [mk(m1), mk(m2)],
                distance_preserving: false,
            }
        })
        .collect()
}

/// Options for one defective gate with a usable ancilla: two repurposing
/// orientations (a neighbor measures the weight-2 check containing the
/// severed data qubit; the gate's own ancilla keeps the complementary
/// weight-2 remnant), plus the data-defect primitive on the gate's data
/// qubit, which the caller encodes separately.
pub fn link_repurposing_options(l: Link, frame: &Frame) -> Vec<RepurposingPlan> {
    let u = l.ancilla;
    let q = l.data;
    let pauli = frame.pauli_of(u);
    Orientation::BOTH
        .iter()
        .map(|&orientation| {
            let [m1, m2] = orientation.measurers(u);
            // complement = the pair containing q, measured by the flank on
            // q's side; remnant = the other pair, kept by u itself
            let (flank, other) = if orientation.pair(u, m1).contains(&q) {
                (m1, m2)
            } else {
                (m2, m1)
            };
            let complement = Repurposing {
                origin: u,
                measurer: flank,
                pair: orientation.pair(u, flank),
                pauli,
            };
            let remnant = Repurposing {
                origin: u,
                measurer: u,
                pair: orientation.pair(u, other),
                pauli,
            };
            RepurposingPlan {
                origin: u,
                orientation,
                checks: [complement, remnant],
                distance_preserving: false,
            }
        })
        .collect()
}

/// Classifies the two orientations of a plan pair by local distance
/// evaluation: the patch is built with only this defect present, once per
/// orientation, and the strictly better orientation (by minimum then sum of
/// distances) is marked preserving; ties mark both.
pub fn classify_orientations(frame: &Frame, plans: &mut [RepurposingPlan]) {
    let mut keys: Vec<(i32, i32)> = Vec::with_capacity(plans.len());
    for plan in plans.iter() {
        let mut pieces = plan.pieces();
        // evaluate against an otherwise defect-free window
        let solo = solo_frame(frame, plan.origin);
        match deform_best(&solo, &mut_pieces(&mut pieces)) {
            Ok((_, dx, dz)) => keys.push((dx.min(dz), dx + dz)),
            Err(_) => keys.push((i32::MIN, i32::MIN)),
        }
    }
    let best = keys.iter().max().copied().unwrap_or((0, 0));
    for (plan, key) in plans.iter_mut().zip(keys) {
        plan.distance_preserving = key == best && key.0 != i32::MIN;
    }
}

fn mut_pieces(p: &mut Pieces) -> Pieces {
    p.clone()
}

/// A frame with the same chip and window but only the defects at `origin`
/// kept (the isolated-defect evaluation of the classification).
fn solo_frame<'c>(frame: &Frame<'c>, origin: Coord) -> Frame<'c> {
    let mut defects = crate::lattice::DefectMap::default();
    if frame.defects.ancillas.contains(&origin) {
        defects.ancillas.insert(origin);
    }
    for l in &frame.defects.links {
        if l.ancilla == origin {
            defects.links.insert(*l);
        }
    }
    Frame::new(frame.chip, frame.window, frame.flip, &defects).finish()
}

/// Count of weight-2 checks in a plan that are already compromised by a
/// defect on their qubits, gates, or measuring ancilla. Used for candidate
/// sorting; chain effects can only disable more.
pub fn predicted_invalid(frame: &Frame, plan: &RepurposingPlan) -> usize {
    plan.checks
        .iter()
        .filter(|r| {
            let measurer_bad = frame.window.contains_ancilla(r.measurer)
                && frame.unusable.contains(&r.measurer);
            let pair_bad = r.pair.iter().any(|q| frame.defects.data.contains(q));
            let link_bad = r.pair.iter().any(|&q| !frame.link_ok(q, r.measurer));
            measurer_bad || pair_bad || link_bad
        })
        .count()
}

/// Super-stabilizer shape summary used by tests: weights of the group
/// products by Pauli type.
pub fn group_weights(patch: &crate::patch::Patch) -> Vec<(Pauli, usize)> {
    let mut v: Vec<(Pauli, usize)> = patch
        .groups
        .iter()
        .map(|g| (g.pauli, g.product.len()))
        .collect();
    v.sort();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::{deform_best, frame_for};
    use crate::distance::{brute_force_distance, graph_distance};
    use crate::lattice::{Chip, DefectMap, WindowSpec};
    use alloc::vec;

    fn center_of(d: u32, ancilla: bool) -> Coord {
        let mid = d as i32; // window origin (1,1): center region
        if ancilla {
            Coord::new(mid - (mid % 2), mid - (mid % 2) + 2)
        } else {
            Coord::new(mid | 1, mid | 1)
        }
    }

    #[test]
    fn bulk_data_defect_reduces_distance_by_one() {
        let chip = Chip::build(WindowSpec::square(5)).unwrap();
        let q = Coord::new(5, 5);
        let mut defects = DefectMap::default();
        defects.data.insert(q);
        let frame = frame_for(&chip, false, &defects);
        let (patch, dx, dz) = deform_best(&frame, &data_defect_pieces(q)).unwrap();
        assert_eq!((dx, dz), (4, 4));
        // four weight-3 gauges and two weight-6 super-stabilizers
        let w3 = patch
            .checks
            .iter()
            .filter(|c| c.kind == crate::check::CheckKind::Gauge && c.weight() == 3)
            .count();
        assert_eq!(w3, 4);
        assert_eq!(
            group_weights(&patch),
            vec![(Pauli::X, 6), (Pauli::Z, 6)]
        );
        assert_eq!(brute_force_distance(&patch, Pauli::X, 25).unwrap(), 4);
        assert_eq!(brute_force_distance(&patch, Pauli::Z, 25).unwrap(), 4);
    }

    #[test]
    fn bulk_ancilla_defect_orientations() {
        let d = 7u32;
        let chip = Chip::build(WindowSpec::square(d)).unwrap();
        let a = Coord::new(6, 6);
        let mut defects = DefectMap::default();
        defects.ancillas.insert(a);
        let frame = frame_for(&chip, false, &defects);
        let mut plans = ancilla_repurposing_options(a, &frame);
        classify_orientations(&frame, &mut plans);
        let preserving: Vec<bool> = plans.iter().map(|p| p.distance_preserving).collect();
        assert_eq!(preserving.iter().filter(|p| **p).count(), 1, "{preserving:?}");
        for plan in &plans {
            let (patch, dx, dz) = deform_best(&frame, &plan.pieces()).unwrap();
            if plan.distance_preserving {
                assert_eq!((dx, dz), (d as i32, d as i32));
                // one weight-8 super-stabilizer and the weight-2 pair whose
                // product is the native weight-4 stabilizer
                let weights = group_weights(&patch);
                assert!(weights.contains(&(frame.pauli_of(a).opposite(), 8)), "{weights:?}");
                assert!(weights.contains(&(frame.pauli_of(a), 4)), "{weights:?}");
            } else {
                // lossy: drop of two along the weight-8 stabilizer
                assert_eq!(dx.min(dz), d as i32 - 2);
                assert_eq!(dx.max(dz), d as i32);
            }
        }
    }

    #[test]
    fn bulk_link_defect_preserves_distance() {
        let d = 5u32;
        let chip = Chip::build(WindowSpec::square(d)).unwrap();
        let u = Coord::new(6, 6);
        let q = Coord::new(5, 5);
        let l = Link { data: q, ancilla: u };
        let mut defects = DefectMap::default();
        defects.links.insert(l);
        let frame = frame_for(&chip, false, &defects);
        let mut plans = link_repurposing_options(l, &frame);
        classify_orientations(&frame, &mut plans);
        assert!(plans.iter().any(|p| p.distance_preserving));
        let best = plans.iter().find(|p| p.distance_preserving).unwrap();
        let (patch, dx, dz) = deform_best(&frame, &best.pieces()).unwrap();
        assert_eq!((dx, dz), (d as i32, d as i32));
        assert_eq!(
            brute_force_distance(&patch, Pauli::X, 25).unwrap(),
            d as i32
        );
        assert_eq!(
            brute_force_distance(&patch, Pauli::Z, 25).unwrap(),
            d as i32
        );
    }

    #[test]
    fn boundary_ancilla_defect_single_neighbor_repurposing() {
        // a defective native weight-2 ancilla on the top boundary is handled
        // by the bulk neighbor measuring the check in alternate rounds
        let d = 5u32;
        let chip = Chip::build(WindowSpec::square(d)).unwrap();
        let a = Coord::new(2, 0);
        assert!(chip.ancillas.contains(&a));
        let mut defects = DefectMap::default();
        defects.ancillas.insert(a);
        let frame = frame_for(&chip, false, &defects);
        let mut plans = ancilla_repurposing_options(a, &frame);
        classify_orientations(&frame, &mut plans);
        let best = plans.iter().find(|p| p.distance_preserving).unwrap();
        let (patch, dx, dz) = deform_best(&frame, &best.pieces()).unwrap();
        assert_eq!((dx, dz), (d as i32, d as i32), "no distance loss");
        // the surviving repurposed check is measured by the bulk neighbor
        let rep = patch
            .checks
            .iter()
            .find(|c| c.kind == crate::check::CheckKind::Repurposed)
            .expect("one repurposed check survives");
        assert_eq!(rep.ancilla, Coord::new(2, 2));
        assert_eq!(rep.weight(), 2);
        let _ = center_of(d, true);
    }
}

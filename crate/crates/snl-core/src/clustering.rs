//! Defect clustering: partitioning the defect map into groups whose local
//! strategies can never overlap.
//!
//! Clusters are defined against the worst case in which no repurposed check
//! is implemented: data-qubit disabling with link defects mapped to ancilla
//! defects. The worst-case dead set (including the weight-1 avalanche, which
//! makes DQD holes rectangular) together with its ring of damaged ancillas
//! and their check supports forms the footprint graph; clusters are its
//! connected components. Defective padding ancillas and links to padding
//! ancillas never enter a cluster; they are only recorded as unusable for
//! repurposing.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::geom::{Coord, Link};
use crate::lattice::DefectMap;
use crate::patch::{resolve_snakes, Frame};

/// One cluster of interacting defects.
#[derive(Clone, Debug)]
pub struct DefectCluster {
    pub id: usize,
    pub defects: DefectMap,
    /// Qubits the worst-case adaptation could touch. Footprints of distinct
    /// clusters are disjoint.
    pub footprint: BTreeSet<Coord>,
}

/// Partitions the frame's code defects into clusters.
pub fn cluster_defects(frame: &Frame) -> Vec<DefectCluster> {
    let code = &frame.code_defects;
    if code.is_empty() {
        return Vec::new();
    }

    // Worst case: disable the four data neighbors of every defective ancilla
    // and of every link defect's ancilla, then run the avalanche.
    let mut dead0: BTreeSet<Coord> = code.data.clone();
    let mut mapped: BTreeSet<Coord> = code.ancillas.clone();
    for l in &code.links {
        mapped.insert(l.ancilla);
    }
    for &a in &mapped {
        for d in a.diagonals() {
            if frame.chip.data.contains(&d) {
                dead0.insert(d);
            }
        }
    }
    let (dead, _) = resolve_snakes(frame, &[], &dead0, &mapped);

    // Footprint graph: dead data, their neighboring ancillas, and those
    // ancillas' supports.
    let mut nodes: BTreeSet<Coord> = dead.clone();
    let mut ring: BTreeSet<Coord> = BTreeSet::new();
    for &q in &dead {
        for a in q.diagonals() {
            ring.insert(a);
        }
    }
    ring.extend(mapped.iter().copied());
    for &a in &ring {
        nodes.insert(a);
        for d in a.diagonals() {
            nodes.insert(d);
        }
    }

    // Union-find over footprint nodes by lattice adjacency.
    let mut parent: BTreeMap<Coord, Coord> = BTreeMap::new();
    fn find(parent: &mut BTreeMap<Coord, Coord>, c: Coord) -> Coord {
        let p = *parent.entry(c).or_insert(c);
        if p == c {
            c
        } else {
            let r = find(parent, p);
            parent.insert(c, r);
            r
        }
    }
    fn union(parent: &mut BTreeMap<Coord, Coord>, a: Coord, b: Coord) {
        let ra = find(parent, a);
        let rb = find(parent, b);
        if ra != rb {
            parent.insert(ra, rb);
        }
    }
    for &c in &nodes {
        if c.is_ancilla() {
            for d in c.diagonals() {
                if nodes.contains(&d) {
                    union(&mut parent, c, d);
                }
            }
        }
    }

    // Assign every defect element to its component.
    let anchor_of_link = |l: &Link| l.ancilla;
    let mut comp_defects: BTreeMap<Coord, DefectMap> = BTreeMap::new();
    let mut comp_nodes: BTreeMap<Coord, BTreeSet<Coord>> = BTreeMap::new();
    for &c in &nodes {
        let root = find(&mut parent, c);
        comp_nodes.entry(root).or_default().insert(c);
    }
    for &q in &code.data {
        let root = find(&mut parent, q);
        comp_defects.entry(root).or_default().data.insert(q);
    }
    for &a in &code.ancillas {
        let root = find(&mut parent, a);
        comp_defects.entry(root).or_default().ancillas.insert(a);
    }
    for l in &code.links {
        let root = find(&mut parent, anchor_of_link(l));
        comp_defects.entry(root).or_default().links.insert(*l);
    }

    // Deterministic ids: row-major order of each cluster's minimal node.
    let mut entries: Vec<(Coord, DefectMap, BTreeSet<Coord>)> = comp_defects
        .into_iter()
        .map(|(root, defects)| {
            let footprint = comp_nodes.remove(&root).unwrap_or_default();
            let min = footprint.iter().map(|c| (c.y, c.x)).min().unwrap();
            (Coord::new(min.1, min.0), defects, footprint)
        })
        .collect();
    entries.sort_by_key(|(min, _, _)| (min.y, min.x));
    entries
        .into_iter()
        .enumerate()
        .map(|(id, (_, defects, footprint))| DefectCluster {
            id,
            defects,
            footprint,
        })
        .collect()
}

/// Trims footprint nodes that no primitive for the cluster's defects can
/// touch: anything farther than Chebyshev distance 3 from every defect
/// element. Dead and defective positions always stay.
pub fn prune_cluster(cluster: &DefectCluster) -> DefectCluster {
    let mut anchors: Vec<Coord> = Vec::new();
    anchors.extend(cluster.defects.data.iter().copied());
    anchors.extend(cluster.defects.ancillas.iter().copied());
    for l in &cluster.defects.links {
        anchors.push(l.data);
        anchors.push(l.ancilla);
    }
    let footprint = cluster
        .footprint
        .iter()
        .copied()
        .filter(|&c| anchors.iter().any(|&a| a.chebyshev(c) <= 3))
        .collect();
    DefectCluster {
        id: cluster.id,
        defects: cluster.defects.clone(),
        footprint,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boundary::frame_for;
    use crate::lattice::{Chip, WindowSpec};

    #[test]
    fn empty_defects_no_clusters() {
        let chip = Chip::build(WindowSpec::square(5)).unwrap();
        let frame = frame_for(&chip, false, &DefectMap::default());
        assert!(cluster_defects(&frame).is_empty());
    }

    #[test]
    fn distant_data_defects_stay_separate() {
        let chip = Chip::build(WindowSpec::square(9)).unwrap();
        let mut defects = DefectMap::default();
        defects.data.insert(Coord::new(3, 3));
        defects.data.insert(Coord::new(13, 13));
        let frame = frame_for(&chip, false, &defects);
        let clusters = cluster_defects(&frame);
        assert_eq!(clusters.len(), 2);
        assert!(clusters[0].footprint.is_disjoint(&clusters[1].footprint));
        // ids in row-major order
        assert!(clusters[0].defects.data.contains(&Coord::new(3, 3)));
    }

    #[test]
    fn adjacent_ancilla_and_data_defect_share_cluster() {
        let chip = Chip::build(WindowSpec::square(7)).unwrap();
        let mut defects = DefectMap::default();
        defects.ancillas.insert(Coord::new(6, 6));
        defects.data.insert(Coord::new(5, 5));
        let frame = frame_for(&chip, false, &defects);
        let clusters = cluster_defects(&frame);
        assert_eq!(clusters.len(), 1);
        assert_eq!(clusters[0].defects.len(), 2);
    }

    #[test]
    fn singleton_data_defect_footprint() {
        let chip = Chip::build(WindowSpec::square(9)).unwrap();
        let q = Coord::new(9, 9);
        let mut defects = DefectMap::default();
        defects.data.insert(q);
        let frame = frame_for(&chip, false, &defects);
        let clusters = cluster_defects(&frame);
        let pruned = prune_cluster(&clusters[0]);
        // the defect, its 4 ancillas, and their data one-ring
        let mut expect: BTreeSet<Coord> = BTreeSet::new();
        expect.insert(q);
        for a in q.diagonals() {
            expect.insert(a);
            for d in a.diagonals() {
                expect.insert(d);
            }
        }
        assert_eq!(pruned.footprint, expect);
        // pruning is idempotent
        let again = prune_cluster(&pruned);
        assert_eq!(again.footprint, pruned.footprint);
    }

    #[test]
    fn padding_defects_excluded_from_clusters() {
        let chip = Chip::build(WindowSpec::square(5).with_padding(crate::lattice::Padding::Ancilla))
            .unwrap();
        // (4,0) is a pad position with the default assignment
        let pad = Coord::new(4, 0);
        assert!(chip.ancillas.contains(&pad));
        let mut defects = DefectMap::default();
        defects.ancillas.insert(pad);
        let frame = frame_for(&chip, false, &defects);
        assert!(frame.code_defects.is_empty());
        assert!(cluster_defects(&frame).is_empty());
        assert!(frame.unusable.contains(&pad));
    }
}

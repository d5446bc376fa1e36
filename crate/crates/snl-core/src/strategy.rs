//! Per-cluster strategy search: candidate enumeration in promise order,
//! snake removal, local distance loss, and the heuristic stopping and
//! filtering rules.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::boundary::deform_best;
use crate::clustering::DefectCluster;
use crate::geom::{Coord, Link};
use crate::lattice::DefectMap;
use crate::patch::{Frame, Pieces, PlanShape, Repurposing};
use crate::primitives::{
    ancilla_repurposing_options, classify_orientations, link_repurposing_options,
    predicted_invalid, RepurposingPlan,
};

/// Search-control parameters. Unset optional fields disable the condition.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeuristicsConfig {
    /// Restrict link defects to ancilla repurposing (skip the data-defect
    /// primitive assignments).
    pub link_defect_to_ancilla: bool,
    /// Break from a link assignment after this many consecutive candidates
    /// discarded by the loss filters.
    pub n_skip: Option<u32>,
    /// Break from a link assignment after this many consecutive candidates
    /// without improving the best active-qubit count.
    pub n_zombie: Option<u32>,
    /// Keep only strategies whose worst-axis loss is among the smallest
    /// `n_max` distinct values for the cluster.
    pub n_max: Option<u32>,
    /// Same for the summed loss.
    pub n_sum: Option<u32>,
    /// Cap on strategies kept per cluster.
    pub n_sol_max_per_cluster: Option<u32>,
    /// Cap on global strategy combinations.
    pub n_sol_max: Option<u32>,
    /// Hard safety cap on candidates evaluated per cluster.
    pub candidate_cap: u64,
}

impl Default for HeuristicsConfig {
    fn default() -> Self {
        HeuristicsConfig {
            link_defect_to_ancilla: false,
            n_skip: None,
            n_zombie: None,
            n_max: None,
            n_sum: None,
            n_sol_max_per_cluster: None,
            n_sol_max: None,
            candidate_cap: 1_000_000,
        }
    }
}

impl HeuristicsConfig {
    /// Named hierarchy presets "h0".."h6", plus "h0z2" (the profile used for
    /// the largest patches: h0 with n_zombie = 2).
    pub fn preset(name: &str) -> Option<HeuristicsConfig> {
        let base = HeuristicsConfig::default();
        let cfg = match name {
            "h0" => HeuristicsConfig {
                link_defect_to_ancilla: true,
                n_zombie: Some(1),
                n_max: Some(1),
                n_sum: Some(1),
                n_sol_max_per_cluster: Some(1),
                n_sol_max: Some(1),
                ..base
            },
            "h0z2" => HeuristicsConfig {
                link_defect_to_ancilla: true,
                n_zombie: Some(2),
                n_max: Some(1),
                n_sum: Some(1),
                n_sol_max_per_cluster: Some(1),
                n_sol_max: Some(1),
                ..base
            },
            "h1" => HeuristicsConfig {
                link_defect_to_ancilla: true,
                n_zombie: Some(10),
                n_max: Some(2),
                n_sum: Some(2),
                n_sol_max_per_cluster: Some(2),
                n_sol_max: Some(2),
                ..base
            },
            "h2" => HeuristicsConfig {
                link_defect_to_ancilla: true,
                n_sol_max_per_cluster: Some(2),
                n_sol_max: Some(10),
                ..base
            },
            "h3" => HeuristicsConfig {
                n_skip: Some(10),
                n_sol_max_per_cluster: Some(3),
                n_sol_max: Some(10),
                ..base
            },
            "h4" => HeuristicsConfig {
                n_skip: Some(10),
                n_sol_max_per_cluster: Some(3),
                ..base
            },
            "h5" => HeuristicsConfig {
                n_sol_max_per_cluster: Some(10),
                n_sol_max: Some(100),
                ..base
            },
            "h6" => base,
            _ => return None,
        };
        Some(cfg)
    }

    pub const HIERARCHY: [&'static str; 7] = ["h0", "h1", "h2", "h3", "h4", "h5", "h6"];
}

/// Per-link-defect choice within one assignment.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LinkChoice {
    Repurpose,
    DataPrimitive,
}

/// One decision slot of a cluster.
#[derive(Clone, Debug)]
pub enum Slot {
    /// Defective ancilla: two repurposing orientations.
    Ancilla { at: Coord, plans: Vec<RepurposingPlan> },
    /// One defective gate on a usable ancilla: repurpose (two orientations)
    /// or the data-defect primitive on the gate's data qubit.
    LinkSingle { link: Link, plans: Vec<RepurposingPlan> },
    /// Several defective gates on one ancilla: the ancilla cannot keep a
    /// remnant, so it is repurposed like a defective ancilla, or all gate
    /// data qubits are disabled.
    LinkMulti { at: Coord, links: Vec<Link>, plans: Vec<RepurposingPlan> },
}

impl Slot {
    pub fn is_link(&self) -> bool {
        !matches!(self, Slot::Ancilla { .. })
    }

    fn plans(&self) -> &[RepurposingPlan] {
        match self {
            Slot::Ancilla { plans, .. }
            | Slot::LinkSingle { plans, .. }
            | Slot::LinkMulti { plans, .. } => plans,
        }
    }

    fn data_primitive_dead(&self) -> Vec<Coord> {
        match self {
            Slot::Ancilla { .. } => Vec::new(),
            Slot::LinkSingle { link, .. } => alloc::vec![link.data],
            Slot::LinkMulti { links, .. } => links.iter().map(|l| l.data).collect(),
        }
    }
}

/// Builds the decision slots of a cluster, with plan orientations ordered by
/// promise: fewest predicted-invalid weight-2 checks first, distance
/// preserving first on ties.
pub fn build_slots(frame: &Frame, cluster: &DefectCluster) -> Vec<Slot> {
    let mut slots = Vec::new();
    for &a in &cluster.defects.ancillas {
        let mut plans = ancilla_repurposing_options(a, frame);
        classify_orientations(frame, &mut plans);
        order_plans(frame, &mut plans);
        slots.push(Slot::Ancilla { at: a, plans });
    }
    let mut by_ancilla: BTreeMap<Coord, Vec<Link>> = BTreeMap::new();
    for l in &cluster.defects.links {
        by_ancilla.entry(l.ancilla).or_default().push(*l);
    }
    for (a, links) in by_ancilla {
        if cluster.defects.ancillas.contains(&a) {
            continue; // the ancilla defect already covers its gates
        }
        if links.len() == 1 {
            let link = links[0];
            let mut plans = link_repurposing_options(link, frame);
            classify_orientations(frame, &mut plans);
            order_plans(frame, &mut plans);
            slots.push(Slot::LinkSingle { link, plans });
        } else {
            let mut plans = ancilla_repurposing_options(a, frame);
            classify_orientations(frame, &mut plans);
            order_plans(frame, &mut plans);
            slots.push(Slot::LinkMulti { at: a, links, plans });
        }
    }
    slots
}

fn order_plans(frame: &Frame, plans: &mut [RepurposingPlan]) {
    plans.sort_by_key(|p| (predicted_invalid(frame, p), !p.distance_preserving));
}

/// An adaptation of one defect cluster.
#[derive(Clone, Debug)]
pub struct LocalStrategy {
    pub cluster_id: usize,
    pub pieces: Pieces,
    /// Local distance loss (vertical, horizontal) against the defect-free
    /// window, evaluated with only this cluster present.
    pub loss: (i32, i32),
    pub active_data: usize,
}

impl LocalStrategy {
    fn rank_key(&self) -> (i32, i32, i64) {
        let (lx, lz) = self.loss;
        (lx.max(lz), lx + lz, -(self.active_data as i64))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchError {
    /// No combination of primitives yields a valid patch for the cluster.
    NoValidStrategy { cluster_id: usize },
    /// The per-cluster safety cap on evaluated candidates was exceeded.
    CandidateCapExceeded { cluster_id: usize, cap: u64 },
}

impl core::fmt::Display for SearchError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            SearchError::NoValidStrategy { cluster_id } => {
                write!(f, "cluster {cluster_id}: no valid local strategy")
            }
            SearchError::CandidateCapExceeded { cluster_id, cap } => {
                write!(f, "cluster {cluster_id}: candidate cap {cap} exceeded")
            }
        }
    }
}

/// Iterator over the subsets of `0..n` of size `k` in lexicographic order.
struct Combinations {
    n: usize,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    fn new(n: usize, k: usize) -> Self {
        Combinations {
            n,
            idx: (0..k).collect(),
            done: k > n,
        }
    }
}

impl Iterator for Combinations {
    type Item = Vec<usize>;
    fn next(&mut self) -> Option<Vec<usize>> {
        if self.done {
            return None;
        }
        let out = self.idx.clone();
        let k = self.idx.len();
        if k == 0 {
            self.done = true;
            return Some(out);
        }
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < self.n - (k - i) {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Builds the tentative pieces for one concrete choice of options.
fn combo_pieces(
    cluster: &DefectCluster,
    slots: &[Slot],
    link_choice: &[LinkChoice],
    flips: &BTreeSet<usize>,
) -> Pieces {
    let mut pieces = Pieces::default();
    pieces.dead.extend(cluster.defects.data.iter().copied());
    let mut link_i = 0usize;
    for (si, slot) in slots.iter().enumerate() {
        let choice = if slot.is_link() {
            let c = link_choice[link_i];
            link_i += 1;
            c
        } else {
            LinkChoice::Repurpose
        };
        match choice {
            LinkChoice::DataPrimitive => {
                pieces.dead.extend(slot.data_primitive_dead());
            }
            LinkChoice::Repurpose => {
                let plan_idx = usize::from(flips.contains(&si));
                let plan = &slot.plans()[plan_idx];
                pieces.reps.extend(plan.checks);
                pieces.shapes.push(PlanShape {
                    origin: plan.origin,
                    orientation: plan.orientation,
                });
                pieces.replaced.insert(plan.origin);
            }
        }
    }
    pieces
}

/// Distinct-value admission filter used by `n_max`/`n_sum`.
fn admits(values: &BTreeSet<i32>, v: i32, n: Option<u32>) -> bool {
    match n {
        None => true,
        Some(n) => {
            let mut all = values.clone();
            all.insert(v);
            all.iter().take(n as usize).any(|&x| x == v)
        }
    }
}

/// Searches the cluster for local strategies under the heuristics.
///
/// Candidates stream in sorted order: link assignments with fewer
/// data-defect primitives first, and within an assignment, combinations with
/// fewer deviations from each slot's preferred orientation first.
pub fn local_search(
    frame: &Frame,
    cluster: &DefectCluster,
    heur: &HeuristicsConfig,
) -> Result<Vec<LocalStrategy>, SearchError> {
    // The local frame sees only this cluster's defects plus the padding
    // defects, which constrain repurposing but form no clusters. Links
    // subsumed by another cluster's defective ancilla stay out; they matter
    // only through that ancilla.
    let mut local_defects = cluster.defects.clone();
    for &a in &frame.defects.ancillas {
        if !frame.code_defects.ancillas.contains(&a) {
            local_defects.ancillas.insert(a);
        }
    }
    for l in &frame.defects.links {
        let role = crate::lattice::ancilla_role(&frame.window, l.ancilla, frame.flip);
        if matches!(
            role,
            crate::lattice::AncillaRole::Pad | crate::lattice::AncillaRole::Corner
        ) {
            local_defects.links.insert(*l);
        }
    }
    let local = Frame::new(frame.chip, frame.window, frame.flip, &local_defects).finish();
    let slots = build_slots(&local, cluster);
    let (d_free_x, d_free_z) = (local.window.height as i32, local.window.width as i32);

    let link_slots: Vec<usize> = slots
        .iter()
        .enumerate()
        .filter(|(_, s)| s.is_link())
        .map(|(i, _)| i)
        .collect();
    let max_data = if heur.link_defect_to_ancilla {
        0
    } else {
        link_slots.len()
    };

    let mut kept: Vec<LocalStrategy> = Vec::new();
    let mut seen: BTreeSet<(Vec<Coord>, Vec<Repurposing>)> = BTreeSet::new();
    let mut max_values: BTreeSet<i32> = BTreeSet::new();
    let mut sum_values: BTreeSet<i32> = BTreeSet::new();
    let mut evaluated: u64 = 0;

    'assignments: for n_data in 0..=max_data {
        for data_set in Combinations::new(link_slots.len(), n_data) {
            let data_slots: BTreeSet<usize> = data_set.iter().map(|&i| link_slots[i]).collect();
            let link_choice: Vec<LinkChoice> = link_slots
                .iter()
                .map(|i| {
                    if data_slots.contains(i) {
                        LinkChoice::DataPrimitive
                    } else {
                        LinkChoice::Repurpose
                    }
                })
                .collect();
            // slots with a live orientation decision under this assignment
            let binary: Vec<usize> = slots
                .iter()
                .enumerate()
                .filter(|(i, s)| !s.is_link() || !data_slots.contains(i))
                .map(|(i, _)| i)
                .collect();

            let mut best_active: Option<usize> = None;
            let mut zombie = 0u32;
            let mut skip = 0u32;

            for n_flip in 0..=binary.len() {
                for flip_set in Combinations::new(binary.len(), n_flip) {
                    evaluated += 1;
                    if evaluated > heur.candidate_cap {
                        return Err(SearchError::CandidateCapExceeded {
                            cluster_id: cluster.id,
                            cap: heur.candidate_cap,
                        });
                    }
                    let flips: BTreeSet<usize> =
                        flip_set.iter().map(|&i| binary[i]).collect();
                    let tentative = combo_pieces(cluster, &slots, &link_choice, &flips);
                    let (dead, reps) = crate::patch::resolve_snakes(
                        &local,
                        &tentative.reps,
                        &tentative.dead,
                        &tentative.replaced,
                    );
                    let key = (dead.iter().copied().collect(), {
                        let mut r = reps.clone();
                        r.sort();
                        r
                    });
                    let mut improved = false;
                    if seen.insert(key) {
                        let pieces = Pieces {
                            dead,
                            reps,
                            shapes: tentative.shapes.clone(),
                            replaced: tentative.replaced.clone(),
                        };
                        if let Ok((patch, dx, dz)) = deform_best(&local, &pieces) {
                            let loss = (d_free_x - dx, d_free_z - dz);
                            let active = patch.active_data();
                            let admitted = admits(&max_values, loss.0.max(loss.1), heur.n_max)
                                && admits(&sum_values, loss.0 + loss.1, heur.n_sum);
                            if admitted {
                                max_values.insert(loss.0.max(loss.1));
                                sum_values.insert(loss.0 + loss.1);
                                if best_active.map_or(true, |b| active > b) {
                                    best_active = Some(active);
                                    improved = true;
                                }
                                kept.push(LocalStrategy {
                                    cluster_id: cluster.id,
                                    pieces,
                                    loss,
                                    active_data: active,
                                });
                                skip = 0;
                            } else {
                                skip += 1;
                                if let Some(n) = heur.n_skip {
                                    if skip >= n {
                                        continue 'assignments;
                                    }
                                }
                            }
                        }
                    }
                    if improved {
                        zombie = 0;
                    } else {
                        zombie += 1;
                        if let Some(n) = heur.n_zombie {
                            if zombie >= n {
                                continue 'assignments;
                            }
                        }
                    }
                }
            }
        }
    }

    // Final filter: re-apply the loss filters, group by loss, keep the most
    // active strategy from each group, then cap.
    kept.retain(|s| {
        admits(&max_values, s.loss.0.max(s.loss.1), heur.n_max)
            && admits(&sum_values, s.loss.0 + s.loss.1, heur.n_sum)
    });
    let mut groups: BTreeMap<(i32, i32), Vec<LocalStrategy>> = BTreeMap::new();
    for s in kept {
        groups
            .entry((s.loss.0.max(s.loss.1), s.loss.0 + s.loss.1))
            .or_default()
            .push(s);
    }
    let mut representatives: Vec<LocalStrategy> = Vec::new();
    let mut rest: Vec<LocalStrategy> = Vec::new();
    for (_, mut bucket) in groups {
        bucket.sort_by_key(|s| core::cmp::Reverse(s.active_data));
        let mut it = bucket.into_iter();
        if let Some(first) = it.next() {
            representatives.push(first);
        }
        rest.extend(it);
    }
    representatives.sort_by_key(|s| s.rank_key());
    rest.sort_by_key(|s| s.rank_key());
    representatives.extend(rest);
    if let Some(cap) = heur.n_sol_max_per_cluster {
        representatives.truncate(cap as usize);
    }
    representatives.sort_by_key(|s| s.rank_key());
    if representatives.is_empty() {
        return Err(SearchError::NoValidStrategy {
            cluster_id: cluster.id,
        });
    }
    Ok(representatives)
}

/// Upper bound on unique candidate combinations for a cluster:
/// `2^a * 3^l` for `a` ancilla and `l` link defects.
pub fn combination_bound(cluster: &DefectCluster) -> u64 {
    let a = cluster.defects.ancillas.len() as u32;
    let l = cluster.defects.links.len() as u32;
    2u64.saturating_pow(a).saturating_mul(3u64.saturating_pow(l))
}

/// Restricts `defects` to the non-code extras plus one cluster (used by the
/// local evaluation in tests).
pub fn cluster_defect_map(frame: &Frame, cluster: &DefectCluster) -> DefectMap {
    let mut m = cluster.defects.clone();
    for &a in &frame.defects.ancillas {
        if !frame.code_defects.ancillas.contains(&a) {
            m.ancillas.insert(a);
        }
    }
    m
}

//! Global strategy composition and the top-level adaptation entry point.
//!
//! Local strategies are combined cluster by cluster (Cartesian product in
//! cluster-id order, capped by `n_sol_max`), each combination is boundary
//! deformed with corner optimization, and the patch with the best distance
//! wins: largest minimum of the two distances, then largest sum, then most
//! active data qubits. With ancilla padding both checkerboard assignments
//! are tried.

use alloc::collections::BinaryHeap;
use alloc::vec::Vec;
use core::cmp::Reverse;

use crate::boundary::{deform_candidates, DeformError};
use crate::clustering::{cluster_defects, DefectCluster};
use crate::distance::{graph_distance, DistanceReport};
use crate::dqd::dqd_pieces;
use crate::geom::Pauli;
use crate::lattice::{ancilla_role, AncillaRole, Chip, DefectMap, LatticeError, Padding};
use crate::patch::{Frame, Patch, Pieces};
use crate::strategy::{local_search, HeuristicsConfig, LocalStrategy, SearchError};

/// Adaptation method.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Method {
    /// Ancilla repurposing with snake removal and strategy search.
    Snl,
    /// Data-qubit disabling baseline.
    Dqd,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Snl => "snl",
            Method::Dqd => "dqd",
        }
    }
}

impl core::str::FromStr for Method {
    type Err = ();
    fn from_str(s: &str) -> Result<Method, ()> {
        match s {
            "snl" => Ok(Method::Snl),
            "dqd" => Ok(Method::Dqd),
            _ => Err(()),
        }
    }
}

#[derive(Clone, Debug)]
pub struct AdaptOptions {
    pub method: Method,
    pub heur: HeuristicsConfig,
    /// Try both checkerboard assignments when the chip supports them.
    pub try_both_flips: bool,
}

impl AdaptOptions {
    pub fn new(method: Method, heur: HeuristicsConfig) -> Self {
        AdaptOptions {
            method,
            heur,
            try_both_flips: true,
        }
    }
}

#[derive(Clone, Debug)]
pub struct AdaptOutcome {
    pub patch: Patch,
    pub report: DistanceReport,
    pub n_clusters: usize,
    pub flip: bool,
    pub method: Method,
}

#[derive(Clone, Debug, PartialEq)]
pub enum AdaptError {
    Lattice(LatticeError),
    Search(SearchError),
    Deform(DeformError),
    /// The global combination cap was exhausted without a valid patch.
    NoGlobalStrategy,
}

impl core::fmt::Display for AdaptError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            AdaptError::Lattice(e) => write!(f, "{e}"),
            AdaptError::Search(e) => write!(f, "{e}"),
            AdaptError::Deform(e) => write!(f, "{e}"),
            AdaptError::NoGlobalStrategy => write!(f, "no valid global strategy"),
        }
    }
}

impl From<LatticeError> for AdaptError {
    fn from(e: LatticeError) -> Self {
        AdaptError::Lattice(e)
    }
}
impl From<SearchError> for AdaptError {
    fn from(e: SearchError) -> Self {
        AdaptError::Search(e)
    }
}
impl From<DeformError> for AdaptError {
    fn from(e: DeformError) -> Self {
        AdaptError::Deform(e)
    }
}

/// True when the chip carries the boundary ancillas the flipped checkerboard
/// assignment needs for its native weight-2 checks.
pub fn layout_supported(chip: &Chip, flip: bool) -> bool {
    let win = chip.spec.work_window();
    let positions: Vec<_> = win.ancilla_iter().collect();
    positions.into_iter().all(|a| {
        !matches!(ancilla_role(&win, a, flip), AncillaRole::BoundaryCheck(_))
            || chip.ancillas.contains(&a)
    })
}

type RankKey = (i32, i32, i64);

fn rank_key(dx: i32, dz: i32, active: usize) -> RankKey {
    (dx.min(dz), dx + dz, active as i64)
}

/// Deforms one global piece set and folds the best candidate into `best`.
fn consider(
    frame: &Frame,
    pieces: &Pieces,
    best: &mut Option<(RankKey, Patch, i32, i32)>,
    last_err: &mut AdaptError,
) {
    match deform_candidates(frame, pieces) {
        Ok(patches) => {
            for p in patches {
                let dx = graph_distance(&p, Pauli::X);
                let dz = graph_distance(&p, Pauli::Z);
                if dx <= 0 || dz <= 0 {
                    continue;
                }
                let key = rank_key(dx, dz, p.active_data());
                if best.as_ref().map_or(true, |(bk, ..)| key > *bk) {
                    *best = Some((key, p, dx, dz));
                }
            }
        }
        Err(e) => *last_err = AdaptError::Deform(e),
    }
}

/// Enumerates index combinations over the per-cluster strategy lists in
/// non-decreasing order of summed indices, up to `cap` combinations.
fn combo_indices(lens: &[usize], cap: Option<u64>) -> Vec<Vec<usize>> {
    let total: u64 = lens.iter().map(|&l| l as u64).product();
    let cap = cap.unwrap_or(total).min(total).min(1_000_000);
    let mut out = Vec::new();
    let mut heap: BinaryHeap<Reverse<(usize, Vec<usize>)>> = BinaryHeap::new();
    let mut seen: alloc::collections::BTreeSet<Vec<usize>> = alloc::collections::BTreeSet::new();
    let zero = alloc::vec![0usize; lens.len()];
    heap.push(Reverse((0, zero.clone())));
    seen.insert(zero);
    while let Some(Reverse((sum, idx))) = heap.pop() {
        out.push(idx.clone());
        if out.len() as u64 >= cap {
            break;
        }
        for i in 0..lens.len() {
            if idx[i] + 1 < lens[i] {
                let mut next = idx.clone();
                next[i] += 1;
                if seen.insert(next.clone()) {
                    heap.push(Reverse((sum + 1, next)));
                }
            }
        }
    }
    out
}

/// Composes per-cluster strategies into the best global patch for a frame.
pub fn compose_global(
    frame: &Frame,
    per_cluster: &[Vec<LocalStrategy>],
    heur: &HeuristicsConfig,
) -> Result<(Patch, i32, i32), AdaptError> {
    let mut best: Option<(RankKey, Patch, i32, i32)> = None;
    let mut last_err = AdaptError::NoGlobalStrategy;
    let lens: Vec<usize> = per_cluster.iter().map(|v| v.len()).collect();
    for idx in combo_indices(&lens, heur.n_sol_max.map(u64::from)) {
        let mut pieces = Pieces::default();
        for (ci, &si) in idx.iter().enumerate() {
            pieces.merge(&per_cluster[ci][si].pieces);
        }
        consider(frame, &pieces, &mut best, &mut last_err);
    }
    best.map(|(_, p, dx, dz)| (p, dx, dz)).ok_or(last_err)
}

/// Adapts a chip's window to its defects and returns the best patch.
pub fn adapt(
    chip: &Chip,
    defects: &DefectMap,
    opts: &AdaptOptions,
) -> Result<AdaptOutcome, AdaptError> {
    defects.validate(chip)?;
    let base_flip = chip.spec.pauli_parity_flip;
    let mut flips = alloc::vec![base_flip];
    if opts.try_both_flips
        && chip.spec.padding != Padding::None
        && layout_supported(chip, !base_flip)
    {
        flips.push(!base_flip);
    }
    if chip.spec.padding == Padding::None && layout_supported(chip, !base_flip) && opts.try_both_flips
    {
        // processor-style chips carry both boundary sets
        flips.push(!base_flip);
    }
    flips.dedup();

    let d_targ = chip.spec.width.min(chip.spec.height) as i32;
    let mut best: Option<(RankKey, AdaptOutcome)> = None;
    let mut last_err = AdaptError::NoGlobalStrategy;
    for flip in flips {
        let frame = Frame::new(chip, chip.spec.work_window(), flip, defects).finish();
        let result = adapt_frame(&frame, opts);
        match result {
            Ok((patch, dx, dz, n_clusters)) => {
                let key = rank_key(dx, dz, patch.active_data());
                if best.as_ref().map_or(true, |(bk, _)| key > *bk) {
                    let report = DistanceReport::new(dx, dz, d_targ);
                    best = Some((
                        key,
                        AdaptOutcome {
                            patch,
                            report,
                            n_clusters,
                            flip,
                            method: opts.method,
                        },
                    ));
                }
            }
            Err(e) => last_err = e,
        }
    }
    best.map(|(_, o)| o).ok_or(last_err)
}

fn adapt_frame(
    frame: &Frame,
    opts: &AdaptOptions,
) -> Result<(Patch, i32, i32, usize), AdaptError> {
    match opts.method {
        Method::Dqd => {
            let pieces = dqd_pieces(frame);
            let mut best = None;
            let mut last_err = AdaptError::NoGlobalStrategy;
            consider(frame, &pieces, &mut best, &mut last_err);
            let n = cluster_defects(frame).len();
            best.map(|(_, p, dx, dz)| (p, dx, dz, n)).ok_or(last_err)
        }
        Method::Snl => {
            let clusters: Vec<DefectCluster> = cluster_defects(frame);
            let n = clusters.len();
            if clusters.is_empty() {
                let mut best = None;
                let mut last_err = AdaptError::NoGlobalStrategy;
                consider(frame, &Pieces::default(), &mut best, &mut last_err);
                return best.map(|(_, p, dx, dz)| (p, dx, dz, 0)).ok_or(last_err);
            }
            let mut per_cluster = Vec::with_capacity(clusters.len());
            for cluster in &clusters {
                per_cluster.push(local_search(frame, cluster, &opts.heur)?);
            }
            compose_global(frame, &per_cluster, &opts.heur).map(|(p, dx, dz)| (p, dx, dz, n))
        }
    }
}

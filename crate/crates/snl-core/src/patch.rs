//! Patch assembly: from a defect map and a set of repurposing choices to a
//! fully specified, validated code patch.
//!
//! Assembly works in the extended window: the target window is embedded in a
//! virtually defect-free lattice with two extra layers of qubits on each
//! side, so bulk and boundary defects are treated identically. Checks whose
//! qubits fall outside the target window (or whose measuring ancilla is not
//! fabricated) are produced as candidates anyway and later removed or
//! converted by the boundary deformation.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::check::{parity_for, Check, CheckKind, RoundParity};
use crate::geom::{Coord, Link, Pauli, Side};
use crate::gf2::{BitRow, Echelon};
use crate::lattice::{ancilla_role, native_pauli, AncillaRole, Chip, DefectMap, Window};

/// Repurposing orientation: which way a defective ancilla's weight-4 support
/// is split into two weight-2 checks.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Orientation {
    /// The weight-2 checks are horizontal pairs (rows), measured by the
    /// north/south flanking ancillas; the induced gauge checks sit west/east.
    HorizontalPair,
    /// The weight-2 checks are vertical pairs (columns), measured by the
    /// west/east flanks; the induced gauge checks sit north/south.
    VerticalPair,
}

impl Orientation {
    pub const BOTH: [Orientation; 2] = [Orientation::HorizontalPair, Orientation::VerticalPair];

    /// Ancillas measuring the two weight-2 checks around `origin`.
    pub fn measurers(self, origin: Coord) -> [Coord; 2] {
        match self {
            Orientation::HorizontalPair => [
                Coord::new(origin.x, origin.y - 2),
                Coord::new(origin.x, origin.y + 2),
            ],
            Orientation::VerticalPair => [
                Coord::new(origin.x - 2, origin.y),
                Coord::new(origin.x + 2, origin.y),
            ],
        }
    }

    /// The two ancillas whose weight-4 checks become gauge checks.
    pub fn perpendicular(self, origin: Coord) -> [Coord; 2] {
        match self {
            Orientation::HorizontalPair => [
                Coord::new(origin.x - 2, origin.y),
                Coord::new(origin.x + 2, origin.y),
            ],
            Orientation::VerticalPair => [
                Coord::new(origin.x, origin.y - 2),
                Coord::new(origin.x, origin.y + 2),
            ],
        }
    }

    /// The weight-2 data pair measured by `measurer` when `origin`'s support
    /// is split along this orientation.
    pub fn pair(self, origin: Coord, measurer: Coord) -> [Coord; 2] {
        match self {
            Orientation::HorizontalPair => {
                let y = (origin.y + measurer.y) / 2;
                [Coord::new(origin.x - 1, y), Coord::new(origin.x + 1, y)]
            }
            Orientation::VerticalPair => {
                let x = (origin.x + measurer.x) / 2;
                [Coord::new(x, origin.y - 1), Coord::new(x, origin.y + 1)]
            }
        }
    }
}

/// One tentative or surviving weight-2 repurposed check.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct Repurposing {
    /// The ancilla whose stabilizer is being recovered (defective ancilla, or
    /// the gate's own ancilla for a link-defect remnant).
    pub origin: Coord,
    /// The ancilla that measures the check. Equal to `origin` for remnants.
    pub measurer: Coord,
    pub pair: [Coord; 2],
    pub pauli: Pauli,
}

/// Orientation record for one origin, used to wire the perpendicular
/// super-stabilizer edge.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct PlanShape {
    pub origin: Coord,
    pub orientation: Orientation,
}

/// A set of adaptation choices expressed in extended-window terms.
#[derive(Clone, Default, Debug)]
pub struct Pieces {
    /// Dead data: defective plus disabled qubits (real coordinates only).
    pub dead: BTreeSet<Coord>,
    /// Surviving repurposed checks.
    pub reps: Vec<Repurposing>,
    /// Orientation per origin with at least one tentative check.
    pub shapes: Vec<PlanShape>,
    /// Ancillas whose native check is replaced by the repurposing structure
    /// (defective-ancilla origins and link-defect origins).
    pub replaced: BTreeSet<Coord>,
}

impl Pieces {
    pub fn merge(&mut self, other: &Pieces) {
        self.dead.extend(other.dead.iter().copied());
        self.reps.extend(other.reps.iter().copied());
        self.shapes.extend(other.shapes.iter().copied());
        self.replaced.extend(other.replaced.iter().copied());
    }
}

/// The working context of one adaptation: chip, window, working Pauli
/// assignment, and the defect map split by role.
#[derive(Clone, Debug)]
pub struct Frame<'c> {
    pub chip: &'c Chip,
    pub window: Window,
    pub flip: bool,
    /// All defects as given.
    pub defects: DefectMap,
    /// Defects that damage the native code under this flip: data defects,
    /// defective bulk/boundary-check ancillas, and defective links whose
    /// ancilla is part of the native code.
    pub code_defects: DefectMap,
    /// Ancillas that must not measure anything: defective ones and positions
    /// inside the window that are not fabricated.
    pub unusable: BTreeSet<Coord>,
}

impl<'c> Frame<'c> {
    pub fn new(chip: &'c Chip, window: Window, flip: bool, defects: &DefectMap) -> Frame<'c> {
        let unusable: BTreeSet<Coord> = defects.ancillas.iter().copied().collect();
        let mut code = DefectMap {
            data: defects.data.clone(),
            ..DefectMap::default()
        };
        for &a in &defects.ancillas {
            match ancilla_role(&window, a, flip) {
                AncillaRole::Bulk | AncillaRole::BoundaryCheck(_) => {
                    code.ancillas.insert(a);
                }
                AncillaRole::Pad | AncillaRole::Corner => {}
            }
        }
        for l in &defects.links {
            let role = ancilla_role(&window, l.ancilla, flip);
            let native = matches!(role, AncillaRole::Bulk | AncillaRole::BoundaryCheck(_));
            if native && !defects.ancillas.contains(&l.ancilla) {
                code.links.insert(*l);
            }
        }
        Frame {
            chip,
            window,
            flip,
            defects: defects.clone(),
            code_defects: code,
            unusable,
        }
    }

    /// Fills in positions inside the window that are not fabricated.
    /// Separate from `new` so processor-hosted sub-windows can share it.
    pub fn finish(mut self) -> Frame<'c> {
        for a in self.window.ancilla_iter() {
            if !self.chip.ancillas.contains(&a) {
                self.unusable.insert(a);
            }
        }
        self
    }

    pub fn pauli_of(&self, a: Coord) -> Pauli {
        native_pauli(a, self.flip)
    }

    /// True if the gate between `d` and `a` can be used: both endpoints real
    /// implies the link exists on the chip and is not defective; virtual
    /// endpoints are defect-free by construction.
    pub fn link_ok(&self, d: Coord, a: Coord) -> bool {
        let l = Link { data: d, ancilla: a };
        if self.chip.data.contains(&d) && self.chip.ancillas.contains(&a) {
            self.chip.links.contains(&l) && !self.defects.links.contains(&l)
        } else {
            true
        }
    }

    /// Ancilla box the assembly iterates over: the window ring plus two
    /// ancilla layers on each side.
    pub fn ancilla_box(&self) -> impl Iterator<Item = Coord> + '_ {
        let x0 = self.window.origin.x - 5;
        let x1 = self.window.x_max() + 5;
        let y0 = self.window.origin.y - 5;
        let y1 = self.window.y_max() + 5;
        (0..=(y1 - y0) / 2).flat_map(move |j| {
            (0..=(x1 - x0) / 2).map(move |i| Coord::new(x0 + 2 * i, y0 + 2 * j))
        })
    }

    /// The native check shape of an ancilla position: ring positions with a
    /// boundary-check role carry their truncated in-window support, bulk
    /// positions (and virtual positions outside the window) the full
    /// weight-4 support. Pads, ring corners, and unfabricated positions
    /// measure nothing.
    pub fn check_shape(&self, a: Coord) -> Option<Vec<Coord>> {
        if !self.window.contains_ancilla(a) {
            return Some(a.diagonals().to_vec());
        }
        if !self.chip.ancillas.contains(&a) {
            return None;
        }
        match ancilla_role(&self.window, a, self.flip) {
            AncillaRole::Bulk => Some(a.diagonals().to_vec()),
            AncillaRole::BoundaryCheck(_) => Some(
                a.diagonals()
                    .iter()
                    .copied()
                    .filter(|&d| self.window.contains_data(d))
                    .collect(),
            ),
            AncillaRole::Pad | AncillaRole::Corner => None,
        }
    }
}

/// Resolves the snakes for a combination: every connected component of
/// tentative weight-2 checks touched by a defect, a disabled qubit, an
/// unusable measurer, or a doubly-repurposed ancilla has all of its data
/// qubits disabled and its checks dropped. Interleaved with the weight-1
/// avalanche on native checks until a fixed point.
pub fn resolve_snakes(
    frame: &Frame,
    tentative: &[Repurposing],
    base_dead: &BTreeSet<Coord>,
    replaced: &BTreeSet<Coord>,
) -> (BTreeSet<Coord>, Vec<Repurposing>) {
    let mut dead: BTreeSet<Coord> = base_dead.clone();
    dead.extend(frame.defects.data.iter().copied());
    let mut alive: Vec<Repurposing> = {
        let mut v: Vec<Repurposing> = tentative.to_vec();
        v.sort();
        v.dedup();
        v
    };

    loop {
        let mut changed = false;

        // Snake pass over connected components of the tentative checks.
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
        for r in &alive {
            union(&mut parent, r.measurer, r.pair[0]);
            union(&mut parent, r.measurer, r.pair[1]);
        }
        let mut measurer_count: BTreeMap<Coord, usize> = BTreeMap::new();
        for r in &alive {
            *measurer_count.entry(r.measurer).or_insert(0) += 1;
        }
        let mut bad_roots: BTreeSet<Coord> = BTreeSet::new();
        for r in &alive {
            let root = find(&mut parent, r.measurer);
            let in_window_unusable = frame.window.contains_ancilla(r.measurer)
                && frame.unusable.contains(&r.measurer);
            let defective_pair = r.pair.iter().any(|q| dead.contains(q));
            let bad_link = r.pair.iter().any(|&q| !frame.link_ok(q, r.measurer));
            let doubled = measurer_count[&r.measurer] > 1;
            if in_window_unusable || defective_pair || bad_link || doubled {
                bad_roots.insert(root);
            }
        }
        if !bad_roots.is_empty() {
            let keys: Vec<Coord> = parent.keys().copied().collect();
            for c in keys {
                if c.is_data() && bad_roots.contains(&find(&mut parent, c)) {
                    // only real qubits can be disabled
                    if frame.chip.data.contains(&c) && dead.insert(c) {
                        changed = true;
                    }
                }
            }
            let before = alive.len();
            alive.retain(|r| {
                let root = find(&mut parent, r.measurer);
                !bad_roots.contains(&root)
            });
            if alive.len() != before {
                changed = true;
            }
        }

        // Avalanche pass: a real check reduced to a single remaining data
        // qubit forces that qubit off too.
        let mut forced: Vec<Coord> = Vec::new();
        for a in frame.ancilla_box() {
            if frame.unusable.contains(&a) || replaced.contains(&a) {
                continue;
            }
            if !frame.window.contains_ancilla(a) {
                continue;
            }
            let Some(shape) = frame.check_shape(a) else {
                continue;
            };
            let support: Vec<Coord> = shape
                .into_iter()
                .filter(|&d| !dead.contains(&d) && frame.link_ok(d, a))
                .collect();
            if support.len() == 1 && frame.chip.data.contains(&support[0]) {
                forced.push(support[0]);
            }
        }
        for q in forced {
            if dead.insert(q) {
                changed = true;
            }
        }

        if !changed {
            break;
        }
    }
    (dead, alive)
}

/// A candidate check during assembly and deformation.
#[derive(Clone, Debug)]
pub struct Candidate {
    pub check: Check,
    /// Index into `Pieces::reps` when this is a repurposed check.
    pub rep: Option<usize>,
}

/// Builds the extended-window candidate checks for resolved pieces.
pub fn build_candidates(frame: &Frame, pieces: &Pieces) -> Vec<Candidate> {
    let mut out = Vec::new();
    for a in frame.ancilla_box() {
        if frame.defects.ancillas.contains(&a) || pieces.replaced.contains(&a) {
            continue;
        }
        let Some(shape) = frame.check_shape(a) else {
            continue;
        };
        let support: Vec<Coord> = shape
            .into_iter()
            .filter(|&d| !pieces.dead.contains(&d) && frame.link_ok(d, a))
            .collect();
        if support.is_empty() {
            continue;
        }
        let pauli = frame.pauli_of(a);
        out.push(Candidate {
            check: Check::new(a, a, pauli, support, CheckKind::Stabilizer, RoundParity::EveryRound),
            rep: None,
        });
    }
    for (i, r) in pieces.reps.iter().enumerate() {
        out.push(Candidate {
            check: Check::new(
                r.measurer,
                r.origin,
                r.pauli,
                r.pair,
                CheckKind::Repurposed,
                parity_for(r.pauli),
            ),
            rep: Some(i),
        });
    }
    out
}

/// Marks which candidates anticommute with at least one other candidate.
/// Returns, per candidate, the indices of its anticommuting partners.
pub fn anticommutation(cands: &[Candidate]) -> Vec<Vec<usize>> {
    let mut by_data: BTreeMap<Coord, Vec<usize>> = BTreeMap::new();
    for (i, c) in cands.iter().enumerate() {
        for d in c.check.data() {
            by_data.entry(d).or_default().push(i);
        }
    }
    let mut partners: Vec<BTreeSet<usize>> = alloc::vec![BTreeSet::new(); cands.len()];
    for idxs in by_data.values() {
        for (k, &i) in idxs.iter().enumerate() {
            for &j in &idxs[k + 1..] {
                if cands[i].check.anticommutes(&cands[j].check) {
                    partners[i].insert(j);
                    partners[j].insert(i);
                }
            }
        }
    }
    partners
        .into_iter()
        .map(|s| s.into_iter().collect())
        .collect()
}

/// A super-stabilizer group: same-type checks whose product is deterministic.
#[derive(Clone, Debug)]
pub struct SuperGroup {
    pub pauli: Pauli,
    pub members: Vec<usize>,
    pub product: BTreeSet<Coord>,
}

impl SuperGroup {
    pub fn product_of(cands: &[Candidate], members: &[usize]) -> BTreeSet<Coord> {
        let mut p = BTreeSet::new();
        for &m in members {
            for d in cands[m].check.data() {
                if !p.remove(&d) {
                    p.insert(d);
                }
            }
        }
        p
    }
}

/// Groups gauge checks into super-stabilizers by the per-type adjacency
/// graph: defective or disabled data connect to their native-type neighbor
/// ancillas, each repurposed pair joins the replaced and repurposing
/// ancillas, and for the opposite type the pair of ancillas perpendicular to
/// the repurposed pair is joined.
pub fn group_supers(
    frame: &Frame,
    pieces: &Pieces,
    cands: &[Candidate],
    partners: &[Vec<usize>],
) -> Vec<SuperGroup> {
    // anchor ancilla -> candidate indices (by type)
    let mut by_anchor: BTreeMap<(Coord, Pauli), Vec<usize>> = BTreeMap::new();
    let mut has_check: BTreeSet<Coord> = BTreeSet::new();
    for (i, c) in cands.iter().enumerate() {
        by_anchor
            .entry((c.check.origin, c.check.pauli))
            .or_default()
            .push(i);
        has_check.insert(c.check.ancilla);
    }
    let surviving_origin: BTreeSet<Coord> = pieces.reps.iter().map(|r| r.origin).collect();

    let mut groups = Vec::new();
    for pauli in [Pauli::X, Pauli::Z] {
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
        // dead data to native-type neighbors that can carry structure; an
        // ancilla whose check was consumed entirely by dead data bridges too
        for &q in &pieces.dead {
            for a in q.diagonals() {
                if frame.pauli_of(a) != pauli {
                    continue;
                }
                let consumed = || {
                    frame.check_shape(a).is_some_and(|shape| {
                        shape
                            .iter()
                            .all(|&d| pieces.dead.contains(&d) || !frame.link_ok(d, a))
                    })
                };
                let bridges = frame.defects.ancillas.contains(&a)
                    || pieces.replaced.contains(&a)
                    || frame.unusable.contains(&a)
                    || has_check.contains(&a)
                    || consumed();
                if bridges {
                    union(&mut parent, q, a);
                }
            }
        }
        // repurposed pairs
        for r in &pieces.reps {
            if r.pauli == pauli {
                union(&mut parent, r.origin, r.measurer);
            }
        }
        // perpendicular pairs for the opposite type
        for s in &pieces.shapes {
            if frame.pauli_of(s.origin).opposite() == pauli
                && surviving_origin.contains(&s.origin)
            {
                let [p1, p2] = s.orientation.perpendicular(s.origin);
                union(&mut parent, p1, p2);
            }
        }

        // collect members per component; only checks that actually
        // anticommute with something belong in a super-stabilizer, the rest
        // stand alone as (boundary) stabilizers
        let mut comp_members: BTreeMap<Coord, Vec<usize>> = BTreeMap::new();
        let keys: Vec<Coord> = parent.keys().copied().collect();
        for anchor in keys {
            if let Some(idxs) = by_anchor.get(&(anchor, pauli)) {
                let root = find(&mut parent, anchor);
                comp_members
                    .entry(root)
                    .or_default()
                    .extend(idxs.iter().copied().filter(|&m| !partners[m].is_empty()));
            }
        }
        for (_, mut members) in comp_members {
            members.sort_unstable();
            members.dedup();
            if !members.is_empty() {
                let product = SuperGroup::product_of(cands, &members);
                groups.push(SuperGroup {
                    pauli,
                    members,
                    product,
                });
            }
        }
    }
    groups
}

/// All commutation requirements on a set of candidates and groups:
/// every anticommuting check is in a group of its type, and every group
/// product commutes with every check and every other product.
pub fn commutation_valid(
    cands: &[Candidate],
    partners: &[Vec<usize>],
    groups: &[SuperGroup],
) -> bool {
    let mut grouped: BTreeSet<usize> = BTreeSet::new();
    for g in groups {
        for &m in &g.members {
            if !grouped.insert(m) {
                return false; // a check in two groups of the same type cannot happen
            }
        }
    }
    for (i, p) in partners.iter().enumerate() {
        if !p.is_empty() && !grouped.contains(&i) {
            return false;
        }
    }
    for g in groups {
        for (_i, c) in cands.iter().enumerate() {
            if c.check.pauli == g.pauli {
                continue;
            }
            let overlap = c.check.data().filter(|d| g.product.contains(d)).count();
            if overlap % 2 == 1 {
                #[cfg(any(test, debug_assertions))]
                {
                    extern crate std;
                    std::eprintln!(
                        "product {:?} {:?} anticommutes check {:?} at {:?} sup {:?}",
                        g.pauli,
                        g.product,
                        c.check.pauli,
                        c.check.ancilla,
                        c.check.support.iter().map(|s| s.0).collect::<alloc::vec::Vec<_>>()
                    );
                }
                return false;
            }
        }
        for h in groups {
            if g.pauli == h.pauli {
                continue;
            }
            let overlap = g.product.intersection(&h.product).count();
            if overlap % 2 == 1 {
                return false;
            }
        }
    }
    true
}

/// A complete adapted code patch within a target window.
#[derive(Clone, Debug)]
pub struct Patch {
    pub window: Window,
    pub flip: bool,
    pub checks: Vec<Check>,
    pub groups: Vec<SuperGroup>,
    /// Surviving repurposed checks (for the distance graph's weight-0 edges).
    pub reps: Vec<Repurposing>,
    pub dead_data: BTreeSet<Coord>,
    pub alive_data: BTreeSet<Coord>,
    pub corners: [Coord; 4],
    /// Data qubits along deformed open holes, per window side; endpoints for
    /// logical strings shortened by boundary deformation.
    pub boundary_nodes: BTreeMap<Side, BTreeSet<Coord>>,
    pub logical_x: BTreeSet<Coord>,
    pub logical_z: BTreeSet<Coord>,
    pub stabilizer_rank: usize,
    pub gauge_pairs: usize,
}

impl Patch {
    pub fn active_data(&self) -> usize {
        self.alive_data.len()
    }

    pub fn data_index(&self) -> BTreeMap<Coord, usize> {
        self.alive_data
            .iter()
            .copied()
            .enumerate()
            .map(|(i, c)| (c, i))
            .collect()
    }

    /// Checks with deterministic outcomes (not part of any gauge pair).
    pub fn deterministic(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| c.kind != CheckKind::Gauge && {
            // repurposed checks inside holes are gauge-like; they carry
            // alternating parity but only count as deterministic when no
            // group contains them
            true
        })
    }
}

/// Structural failure of an assembled patch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PatchError {
    WeightOneCheck(Coord),
    CommutationBroken,
    AncillaOverloaded(Coord),
    ScheduleConflict(Coord, u8),
    WrongLogicalCount { n: usize, s: usize, g: usize },
    GaugeRanksDiffer,
    LogicalMissing,
}

impl core::fmt::Display for PatchError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            PatchError::WeightOneCheck(a) => write!(f, "weight-1 check at {a:?}"),
            PatchError::CommutationBroken => write!(f, "commutation relations violated"),
            PatchError::AncillaOverloaded(a) => write!(f, "ancilla {a:?} measures too many checks"),
            PatchError::ScheduleConflict(d, s) => {
                write!(f, "data {d:?} touched twice in slot {s}")
            }
            PatchError::WrongLogicalCount { n, s, g } => {
                write!(f, "k = {} - {} - {} != 1", n, s, g)
            }
            PatchError::GaugeRanksDiffer => write!(f, "X and Z gauge ranks differ"),
            PatchError::LogicalMissing => write!(f, "no logical representative found"),
        }
    }
}

/// Validates the final in-window structure and computes ranks and logical
/// representatives. `cands`/`groups` must already be window-clean.
pub fn finalize_patch(
    frame: &Frame,
    pieces: &Pieces,
    cands: Vec<Candidate>,
    groups: Vec<SuperGroup>,
    corners: [Coord; 4],
    boundary_nodes: BTreeMap<Side, BTreeSet<Coord>>,
) -> Result<Patch, PatchError> {
    let partners = anticommutation(&cands);

    // Kind and parity assignment.
    let mut checks: Vec<Check> = Vec::with_capacity(cands.len());
    let grouped: BTreeSet<usize> = groups.iter().flat_map(|g| g.members.iter().copied()).collect();
    for (i, c) in cands.iter().enumerate() {
        let mut check = c.check.clone();
        let gauge = !partners[i].is_empty() || grouped.contains(&i);
        if check.kind != CheckKind::Repurposed {
            let native_form: BTreeSet<Coord> = check
                .ancilla
                .diagonals()
                .iter()
                .copied()
                .filter(|&d| frame.window.contains_data(d))
                .collect();
            let support: BTreeSet<Coord> = check.data().collect();
            let role = ancilla_role(&frame.window, check.ancilla, frame.flip);
            let native = matches!(role, AncillaRole::Bulk | AncillaRole::BoundaryCheck(_))
                && support == native_form;
            check.kind = if gauge {
                CheckKind::Gauge
            } else if native {
                CheckKind::Stabilizer
            } else {
                CheckKind::Boundary
            };
        }
        if gauge || check.kind == CheckKind::Repurposed {
            check.parity = parity_for(check.pauli);
        }
        checks.push(check);
    }
    // An ancilla measuring two checks alternates; its own check moves to the
    // rounds its type owns.
    let mut per_ancilla: BTreeMap<Coord, Vec<usize>> = BTreeMap::new();
    for (i, c) in checks.iter().enumerate() {
        per_ancilla.entry(c.ancilla).or_default().push(i);
    }
    for (a, idxs) in &per_ancilla {
        match idxs.len() {
            1 => {}
            2 => {
                let (p0, p1) = (checks[idxs[0]].pauli, checks[idxs[1]].pauli);
                if p0 == p1 {
                    return Err(PatchError::AncillaOverloaded(*a));
                }
                for &i in idxs {
                    let p = checks[i].pauli;
                    checks[i].parity = parity_for(p);
                }
            }
            _ => return Err(PatchError::AncillaOverloaded(*a)),
        }
    }

    // No weight-1 checks anywhere.
    for c in &checks {
        if c.weight() <= 1 {
            return Err(PatchError::WeightOneCheck(c.ancilla));
        }
    }

    // Schedule: within each round parity, each data qubit is touched at most
    // once per slot.
    for parity in [RoundParity::Even, RoundParity::Odd] {
        let round = if parity == RoundParity::Even { 0 } else { 1 };
        let mut seen: BTreeSet<(Coord, u8)> = BTreeSet::new();
        for c in &checks {
            if !c.parity.measures_in(round) {
                continue;
            }
            for &(d, slot) in &c.support {
                if !seen.insert((d, slot)) {
                    return Err(PatchError::ScheduleConflict(d, slot));
                }
            }
        }
    }

    let cand_wrap: Vec<Candidate> = checks
        .iter()
        .cloned()
        .map(|check| Candidate {
            check,
            rep: None,
        })
        .collect();
    if !commutation_valid(&cand_wrap, &partners, &groups) {
        #[cfg(any(test, debug_assertions))]
        {
            extern crate std;
            for (i, p) in partners.iter().enumerate() {
                if !p.is_empty() && !grouped.contains(&i) {
                    std::eprintln!(
                        "ungrouped anticommuting: {:?} {:?} at {:?} sup {:?} vs {:?}",
                        checks[i].kind,
                        checks[i].pauli,
                        checks[i].ancilla,
                        checks[i].support.iter().map(|s| s.0).collect::<alloc::vec::Vec<_>>(),
                        p.iter()
                            .map(|&j| checks[j].ancilla)
                            .collect::<alloc::vec::Vec<_>>()
                    );
                }
            }
        }
        return Err(PatchError::CommutationBroken);
    }

    // Rank bookkeeping over GF(2).
    let alive_data: BTreeSet<Coord> = frame
        .window
        .data_iter()
        .filter(|d| !pieces.dead.contains(d))
        .collect();
    let index: BTreeMap<Coord, usize> = alive_data
        .iter()
        .copied()
        .enumerate()
        .map(|(i, c)| (c, i))
        .collect();
    let n = alive_data.len();
    let row_of = |data: &mut dyn Iterator<Item = Coord>| -> BitRow {
        let mut r = BitRow::zeros(n);
        for d in data {
            r.set(index[&d], true);
        }
        r
    };

    let mut all_x = Echelon::new();
    let mut all_z = Echelon::new();
    let mut stab_x = Echelon::new();
    let mut stab_z = Echelon::new();
    for (i, c) in checks.iter().enumerate() {
        let row = row_of(&mut c.data());
        let deterministic = partners[i].is_empty() && !grouped.contains(&i);
        match c.pauli {
            Pauli::X => {
                all_x.insert(row.clone());
                if deterministic {
                    stab_x.insert(row);
                }
            }
            Pauli::Z => {
                all_z.insert(row.clone());
                if deterministic {
                    stab_z.insert(row);
                }
            }
        }
    }
    for g in &groups {
        let row = row_of(&mut g.product.iter().copied());
        match g.pauli {
            Pauli::X => stab_x.insert(row),
            Pauli::Z => stab_z.insert(row),
        };
    }
    let (sx, sz) = (stab_x.rank(), stab_z.rank());
    let gx = all_x.rank() - sx;
    let gz = all_z.rank() - sz;
    if gx != gz {
        #[cfg(any(test, debug_assertions))]
        {
            extern crate std;
            std::eprintln!("gauge ranks differ: gx={gx} gz={gz}");
            for (i, c) in checks.iter().enumerate() {
                let det = partners[i].is_empty() && !grouped.contains(&i);
                if !det {
                    std::eprintln!(
                        "  gauge-ish {:?} {:?} at {:?} sup {:?} partners {:?}",
                        c.kind,
                        c.pauli,
                        c.ancilla,
                        c.support.iter().map(|s| s.0).collect::<alloc::vec::Vec<_>>(),
                        partners[i]
                    );
                }
            }
        }
        return Err(PatchError::GaugeRanksDiffer);
    }
    let s = sx + sz;
    let k = n as isize - s as isize - gx as isize;
    if k != 1 {
        return Err(PatchError::WrongLogicalCount { n, s, g: gx });
    }

    // Logical representatives: an X operator commuting with every Z check and
    // outside the X check span, and vice versa.
    let logical = |same: &Echelon, opp_rows: &Echelon| -> Option<BTreeSet<Coord>> {
        let rows: Vec<BitRow> = opp_rows.rows().to_vec();
        let basis = crate::gf2::kernel_basis(&rows, n);
        for v in &basis {
            if !same.contains(v) {
                let set: BTreeSet<Coord> = alive_data
                    .iter()
                    .copied()
                    .enumerate()
                    .filter(|(i, _)| v.get(*i))
                    .map(|(_, c)| c)
                    .collect();
                return Some(set);
            }
        }
        None
    };
    let logical_x = logical(&all_x, &all_z).ok_or(PatchError::LogicalMissing)?;
    let logical_z = logical(&all_z, &all_x).ok_or(PatchError::LogicalMissing)?;

    let reps: Vec<Repurposing> = pieces
        .reps
        .iter()
        .copied()
        .filter(|r| {
            checks
                .iter()
                .any(|c| c.kind == CheckKind::Repurposed && c.ancilla == r.measurer && c.origin == r.origin)
        })
        .collect();

    Ok(Patch {
        window: frame.window,
        flip: frame.flip,
        checks,
        groups,
        reps,
        dead_data: pieces
            .dead
            .iter()
            .copied()
            .filter(|d| frame.window.contains_data(*d))
            .collect(),
        alive_data,
        corners,
        boundary_nodes,
        logical_x,
        logical_z,
        stabilizer_rank: s,
        gauge_pairs: gx,
    })
}

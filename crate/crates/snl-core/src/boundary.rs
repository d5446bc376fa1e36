//! Boundary deformation: converting extended-window strategies into valid
//! patches inside the target window.
//!
//! A *hole* is a commutation-connected set of super-stabilizer groups. Each
//! hole decomposes into *cycles*: contours of gauge checks around one
//! connected damaged region, alternating in Pauli type and overlapping at
//! single data qubits. A hole is *open* when its contour reaches the window
//! boundary, either through checks that use qubits outside the window or
//! through perimeter positions that cannot hold a check. Deformation removes
//! the gauge checks of the type opposite to the boundary along open
//! contours, converts the survivors into boundary checks, lets closed cycles
//! collapse into smaller bulk super-stabilizers, and relocates patch corners
//! when a hole swallows one.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::geom::{Coord, Pauli, Side};
use crate::lattice::{Chip, DefectMap};
use crate::patch::{
    anticommutation, build_candidates, finalize_patch, group_supers, resolve_snakes, Candidate,
    Frame, Patch, Pieces,
};

/// Why no valid deformation exists for a strategy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DeformError {
    /// A hole contains more than two window corners; a smaller target window
    /// must be chosen.
    TooManyCorners { hole_sides: Vec<Side> },
    /// A compromised corner has no candidate replacement inside the window.
    NoCornerCandidate,
    /// Every corner assignment produced a structurally invalid patch.
    AllCandidatesInvalid,
    /// The strategy violates commutation relations even before deformation.
    Inconsistent,
}

impl core::fmt::Display for DeformError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            DeformError::TooManyCorners { hole_sides } => write!(
                f,
                "a hole touches sides {hole_sides:?} and contains more than two corners"
            ),
            DeformError::NoCornerCandidate => {
                write!(f, "no in-window replacement for a compromised corner")
            }
            DeformError::AllCandidatesInvalid => {
                write!(f, "no corner placement yields a valid patch")
            }
            DeformError::Inconsistent => write!(f, "strategy breaks commutation relations"),
        }
    }
}

/// Damage site used to split a hole into cycles.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
enum Site {
    Data(Coord),
    Anc(Coord),
    /// A repurposed defective gate, keyed by (data, ancilla).
    Gate(Coord, Coord),
}

impl Site {
    /// Position in doubled coordinates so gate midpoints stay integral.
    fn pos2(self) -> (i32, i32) {
        match self {
            Site::Data(c) | Site::Anc(c) => (2 * c.x, 2 * c.y),
            Site::Gate(d, a) => (d.x + a.x, d.y + a.y),
        }
    }
}

/// A check that cannot stay as-is: it uses qubits or an ancilla outside the
/// target window, or a measurer that cannot operate.
fn removal_base(frame: &Frame, cand: &Candidate) -> bool {
    if !frame.window.contains_ancilla(cand.check.ancilla) {
        return true;
    }
    if frame.unusable.contains(&cand.check.ancilla) {
        return true;
    }
    cand.check.data().any(|d| !frame.window.contains_data(d))
}

/// Sides through which a candidate sticks out of the window.
fn reach_sides(frame: &Frame, cand: &Candidate) -> BTreeSet<Side> {
    let mut sides = BTreeSet::new();
    for d in cand.check.data() {
        for s in frame.window.outside_sides(d) {
            sides.insert(s);
        }
    }
    for s in frame.window.outside_sides(cand.check.ancilla) {
        sides.insert(s);
    }
    sides
}

/// Perimeter sides a check borders through positions that can hold no check
/// (pads, ring corners, unfabricated perimeter ancillas). Such a position is
/// a port of the contour exactly when the check it would measure there
/// anticommutes with this member, i.e. when the gauge ring would continue
/// through it.
fn gap_sides(frame: &Frame, cand: &Candidate) -> BTreeSet<Side> {
    let mut sides = BTreeSet::new();
    for d in cand.check.data() {
        if !frame.window.contains_data(d) {
            continue;
        }
        for a in d.diagonals() {
            if a == cand.check.ancilla
                || !frame.window.contains_ancilla(a)
                || frame.check_shape(a).is_some()
            {
                continue;
            }
            if frame.pauli_of(a) == cand.check.pauli {
                continue;
            }
            let overlap = a
                .diagonals()
                .iter()
                .filter(|&&q| cand.check.contains(q))
                .count();
            if overlap % 2 == 1 {
                for s in frame.window.perimeter_sides(a) {
                    sides.insert(s);
                }
            }
        }
    }
    sides
}

struct Hole {
    members: Vec<usize>,
    open: bool,
    sides: BTreeSet<Side>,
    cycles: Vec<Cycle>,
}

/// The contour of one damaged region: either a closed ring or an open chain
/// (ordered when the adjacency permits).
struct Cycle {
    members: Vec<usize>,
    order: Option<ContourOrder>,
    open: bool,
}

enum ContourOrder {
    Ring(Vec<usize>),
    Chain(Vec<usize>),
}

/// Union-find over group indices connected by anticommuting member pairs.
fn partition_holes(
    frame: &Frame,
    pieces: &Pieces,
    cands: &[Candidate],
    partners: &[Vec<usize>],
    groups: &[crate::patch::SuperGroup],
) -> Result<Vec<Hole>, DeformError> {
    let mut group_of: BTreeMap<usize, usize> = BTreeMap::new();
    for (gi, g) in groups.iter().enumerate() {
        for &m in &g.members {
            group_of.insert(m, gi);
        }
    }
    // Every anticommuting candidate must belong to a group.
    for (i, p) in partners.iter().enumerate() {
        if !p.is_empty() && !group_of.contains_key(&i) {
            return Err(DeformError::Inconsistent);
        }
    }
    let mut parent: Vec<usize> = (0..groups.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
            r
        } else {
            i
        }
    }
    for (i, p) in partners.iter().enumerate() {
        for &j in p {
            if let (Some(&gi), Some(&gj)) = (group_of.get(&i), group_of.get(&j)) {
                let (ri, rj) = (find(&mut parent, gi), find(&mut parent, gj));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut holes_members: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for gi in 0..groups.len() {
        let root = find(&mut parent, gi);
        holes_members
            .entry(root)
            .or_default()
            .extend(groups[gi].members.iter().copied());
    }
    let mut holes = Vec::new();
    for (_, mut members) in holes_members {
        members.sort_unstable();
        members.dedup();
        let mut sides = BTreeSet::new();
        for &m in &members {
            sides.extend(reach_sides(frame, &cands[m]));
            sides.extend(gap_sides(frame, &cands[m]));
        }
        let cycles = split_cycles(frame, pieces, cands, partners, &members);
        let open = cycles.iter().any(|c| c.open);
        holes.push(Hole {
            members,
            open,
            sides,
            cycles,
        });
    }
    Ok(holes)
}

/// Splits a hole into cycles, one per connected damage region.
fn split_cycles(
    frame: &Frame,
    pieces: &Pieces,
    cands: &[Candidate],
    partners: &[Vec<usize>],
    members: &[usize],
) -> Vec<Cycle> {
    let has_check: BTreeSet<Coord> = cands.iter().map(|c| c.check.ancilla).collect();

    // Damage sites relevant to this hole.
    let mut sites: BTreeSet<Site> = BTreeSet::new();
    let hole_anchors: BTreeSet<Coord> = members.iter().map(|&m| cands[m].check.origin).collect();
    let hole_ancillas: BTreeSet<Coord> = members.iter().map(|&m| cands[m].check.ancilla).collect();
    for &q in &pieces.dead {
        let touched = q
            .diagonals()
            .iter()
            .any(|a| hole_ancillas.contains(a) || hole_anchors.contains(a));
        if touched {
            sites.insert(Site::Data(q));
        }
    }
    for &a in pieces.replaced.iter().chain(frame.defects.ancillas.iter()) {
        if has_check.contains(&a) {
            continue; // a link-defect ancilla still measuring its remnant
        }
        let near_dead = a
            .diagonals()
            .iter()
            .any(|d| sites.contains(&Site::Data(*d)));
        let origin_here = hole_anchors.contains(&a);
        if near_dead || origin_here {
            sites.insert(Site::Anc(a));
        }
    }
    for l in &frame.code_defects.links {
        let u = l.ancilla;
        if pieces.replaced.contains(&u) && has_check.contains(&u) && hole_anchors.contains(&u) {
            sites.insert(Site::Gate(l.data, u));
        }
    }

    // Merge sites into regions.
    let site_list: Vec<Site> = sites.iter().copied().collect();
    let mut parent: Vec<usize> = (0..site_list.len()).collect();
    fn find(parent: &mut Vec<usize>, i: usize) -> usize {
        if parent[i] != i {
            let r = find(parent, parent[i]);
            parent[i] = r;
            r
        } else {
            i
        }
    }
    for i in 0..site_list.len() {
        for j in i + 1..site_list.len() {
            let (a, b) = (site_list[i], site_list[j]);
            let (pa, pb) = (a.pos2(), b.pos2());
            let d2 = (pa.0 - pb.0).abs().max((pa.1 - pb.1).abs());
            let merge = match (a, b) {
                (Site::Data(q1), Site::Data(q2)) => {
                    if d2 != 4 {
                        false
                    } else if q1.x == q2.x || q1.y == q2.y {
                        true
                    } else {
                        // diagonal: merge only when the shared ancilla holds
                        // no check at all
                        let shared = Coord::new((q1.x + q2.x) / 2, (q1.y + q2.y) / 2);
                        !has_check.contains(&shared)
                    }
                }
                (Site::Data(q), Site::Anc(an)) | (Site::Anc(an), Site::Data(q)) => {
                    q.chebyshev(an) == 1
                }
                (Site::Anc(a1), Site::Anc(a2)) => d2 == 4 && (a1.x == a2.x || a1.y == a2.y),
                (Site::Gate(_, u), Site::Data(q)) | (Site::Data(q), Site::Gate(_, u)) => {
                    u.diagonals().contains(&q)
                }
                _ => d2 <= 2,
            };
            if merge {
                let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
                if ri != rj {
                    parent[ri] = rj;
                }
            }
        }
    }
    let mut regions: BTreeMap<usize, Vec<Site>> = BTreeMap::new();
    for (i, s) in site_list.iter().enumerate() {
        let r = find(&mut parent, i);
        regions.entry(r).or_default().push(*s);
    }
    if regions.is_empty() {
        return alloc::vec![make_cycle(frame, cands, partners, members.to_vec())];
    }

    let perp_owner: BTreeMap<Coord, Coord> = pieces
        .shapes
        .iter()
        .flat_map(|s| {
            s.orientation
                .perpendicular(s.origin)
                .into_iter()
                .map(move |p| (p, s.origin))
        })
        .collect();

    let mut cycles = Vec::new();
    let mut assigned: BTreeSet<usize> = BTreeSet::new();
    for region in regions.values() {
        let region_dead: BTreeSet<Coord> = region
            .iter()
            .filter_map(|s| match s {
                Site::Data(q) => Some(*q),
                _ => None,
            })
            .collect();
        let site_anchor = |c: Coord| -> bool {
            region.iter().any(|s| match s {
                Site::Anc(a) => *a == c,
                Site::Gate(_, u) => *u == c,
                _ => false,
            })
        };
        let mut cyc_members = Vec::new();
        for &m in members {
            let cand = &cands[m];
            let lost_here = cand
                .check
                .ancilla
                .diagonals()
                .iter()
                .any(|d| region_dead.contains(d));
            let rep_here = cand.rep.is_some() && site_anchor(cand.check.origin);
            let perp_here = cand.rep.is_none()
                && perp_owner
                    .get(&cand.check.ancilla)
                    .map(|o| {
                        site_anchor(*o) || region_dead.iter().any(|d| o.diagonals().contains(d))
                    })
                    .unwrap_or(false);
            if lost_here || rep_here || perp_here {
                cyc_members.push(m);
                assigned.insert(m);
            }
        }
        if !cyc_members.is_empty() {
            cycles.push(make_cycle(frame, cands, partners, cyc_members));
        }
    }
    // Anything unassigned joins the cycle it anticommutes with.
    let leftovers: Vec<usize> = members
        .iter()
        .copied()
        .filter(|m| !assigned.contains(m))
        .collect();
    let mut redo: BTreeSet<usize> = BTreeSet::new();
    for m in leftovers {
        let mut placed = false;
        for (ci, cyc) in cycles.iter_mut().enumerate() {
            if cyc.members.iter().any(|&o| partners[m].contains(&o)) {
                cyc.members.push(m);
                redo.insert(ci);
                placed = true;
                break;
            }
        }
        if !placed {
            cycles.push(make_cycle(frame, cands, partners, alloc::vec![m]));
        }
    }
    for ci in redo {
        cycles[ci] = make_cycle(frame, cands, partners, cycles[ci].members.clone());
    }
    cycles
}

fn make_cycle(
    frame: &Frame,
    cands: &[Candidate],
    partners: &[Vec<usize>],
    mut members: Vec<usize>,
) -> Cycle {
    members.sort_unstable();
    members.dedup();
    let order = order_contour(partners, &members);
    let has_rb = members.iter().any(|&m| removal_base(frame, &cands[m]));
    let has_gap = members
        .iter()
        .any(|&m| !gap_sides(frame, &cands[m]).is_empty());
    // A closed ring of in-window checks needs no deformation even when it
    // borders unusable perimeter positions sideways; a broken contour or one
    // reaching outside does.
    let open = has_rb || (has_gap && !matches!(order, Some(ContourOrder::Ring(_))));
    Cycle {
        members,
        order,
        open,
    }
}

/// Orders cycle members into a closed ring or an open chain via within-cycle
/// anticommutation adjacency. Returns None for anything messier.
fn order_contour(partners: &[Vec<usize>], members: &[usize]) -> Option<ContourOrder> {
    if members.len() == 1 {
        return Some(ContourOrder::Chain(members.to_vec()));
    }
    let set: BTreeSet<usize> = members.iter().copied().collect();
    let adj: BTreeMap<usize, Vec<usize>> = members
        .iter()
        .map(|&m| {
            (
                m,
                partners[m]
                    .iter()
                    .copied()
                    .filter(|p| set.contains(p))
                    .collect::<Vec<usize>>(),
            )
        })
        .collect();
    if adj.values().any(|v| v.len() > 2) {
        return None;
    }
    let ends: Vec<usize> = members
        .iter()
        .copied()
        .filter(|m| adj[m].len() <= 1)
        .collect();
    match ends.len() {
        0 => {
            // closed ring
            let start = members[0];
            let mut order = alloc::vec![start];
            let mut prev = start;
            let mut cur = adj[&start][0];
            while cur != start {
                order.push(cur);
                let next = adj[&cur].iter().copied().find(|&n| n != prev)?;
                prev = cur;
                cur = next;
            }
            (order.len() == members.len()).then_some(ContourOrder::Ring(order))
        }
        2 => {
            let start = ends[0];
            let mut order = alloc::vec![start];
            let mut prev = start;
            let mut cur = *adj[&start].first()?;
            loop {
                order.push(cur);
                if cur == ends[1] {
                    break;
                }
                let next = adj[&cur].iter().copied().find(|&n| n != prev)?;
                prev = cur;
                cur = next;
            }
            (order.len() == members.len()).then_some(ContourOrder::Chain(order))
        }
        _ => None,
    }
}

/// Which window corners each hole compromises: a dead corner belongs to the
/// nearest open hole; an alive corner is compromised when an open hole wraps
/// around it (reaching both of its sides next to it).
fn compromised_corners(
    frame: &Frame,
    pieces: &Pieces,
    holes: &[Hole],
    cands: &[Candidate],
) -> BTreeMap<usize, usize> {
    let corners = frame.window.corner_data();
    let corner_sides = [
        [Side::North, Side::West],
        [Side::North, Side::East],
        [Side::South, Side::West],
        [Side::South, Side::East],
    ];
    let mut out: BTreeMap<usize, usize> = BTreeMap::new();
    for (k, &c) in corners.iter().enumerate() {
        if pieces.dead.contains(&c) {
            let nearest = holes
                .iter()
                .enumerate()
                .filter(|(_, h)| h.open)
                .min_by_key(|(_, h)| {
                    h.members
                        .iter()
                        .map(|&m| cands[m].check.ancilla.chebyshev(c))
                        .min()
                        .unwrap_or(i32::MAX)
                })
                .map(|(hi, _)| hi);
            if let Some(hi) = nearest {
                out.insert(k, hi);
            }
            continue;
        }
        for (hi, hole) in holes.iter().enumerate() {
            if !hole.open {
                continue;
            }
            let swallowed = corner_sides[k].iter().all(|s| hole.sides.contains(s))
                && hole.members.iter().any(|&m| {
                    cands[m].check.contains(c) || cands[m].check.ancilla.chebyshev(c) == 1
                });
            if swallowed {
                out.insert(k, hi);
                break;
            }
        }
    }
    out
}

/// Candidate replacement corners: alive data on the hole's open contours,
/// inside the window.
fn corner_candidates(frame: &Frame, hole: &Hole, cands: &[Candidate]) -> Vec<Coord> {
    let mut set = BTreeSet::new();
    for cyc in &hole.cycles {
        if !cyc.open {
            continue;
        }
        for &m in &cyc.members {
            for d in cands[m].check.data() {
                if frame.window.contains_data(d) {
                    set.insert(d);
                }
            }
        }
    }
    set.into_iter().collect()
}

/// One deformation decision: which corner each hole-compromised window corner
/// moves to (None keeps the default corner).
pub type CornerAssignment = [Option<Coord>; 4];

enum MemberAction {
    Remove(Pauli),
    /// Keep with this in-window support; empty or weight-1 supports disable
    /// their remaining qubits instead.
    Keep(BTreeSet<Coord>),
}

/// Outcome of the removal stage for one iteration.
struct RemovalPlan {
    /// candidate index -> kept in-window support
    keep: BTreeMap<usize, BTreeSet<Coord>>,
    forced_dead: BTreeSet<Coord>,
    nodes: BTreeMap<Side, BTreeSet<Coord>>,
}

fn plan_removals(
    frame: &Frame,
    cands: &[Candidate],
    holes: &[Hole],
    assignment: &CornerAssignment,
    corners: &[Coord; 4],
    owner_bias: bool,
) -> RemovalPlan {
    let mut keep: BTreeMap<usize, BTreeSet<Coord>> = BTreeMap::new();
    let mut forced: BTreeSet<Coord> = BTreeSet::new();
    let mut nodes: BTreeMap<Side, BTreeSet<Coord>> = BTreeMap::new();
    let mut in_hole: BTreeSet<usize> = BTreeSet::new();
    for h in holes {
        in_hole.extend(h.members.iter().copied());
    }

    // Non-hole checks: keep whole, or truncate by the native boundary rule
    // (only checks reaching outside the window need it; ring natives are
    // already truncated).
    for (i, cand) in cands.iter().enumerate() {
        if in_hole.contains(&i) {
            continue;
        }
        if !removal_base(frame, cand) {
            keep.insert(i, cand.check.data().collect());
        }
        // outside or unusable: dropped silently, like the native layout
    }

    // Hole checks.
    for hole in holes {
        if !hole.open {
            for &m in &hole.members {
                keep.insert(m, cands[m].check.data().collect());
            }
            continue;
        }
        // Which corner (if any) governs this hole's contour typing.
        let assigned_corner: Option<Coord> = (0..4)
            .filter_map(|k| assignment[k])
            .find(|c| {
                hole.cycles.iter().any(|cyc| {
                    cyc.open && cyc.members.iter().any(|&m| cands[m].check.contains(*c))
                })
            });
        let default_corner_here: Option<Coord> = corners.iter().copied().find(|c| {
            hole.cycles
                .iter()
                .any(|cyc| cyc.open && cyc.members.iter().any(|&m| cands[m].check.contains(*c)))
        });
        let corner = assigned_corner.or(default_corner_here);

        let mut removed: BTreeSet<usize> = BTreeSet::new();
        let mut removed_types: Vec<(usize, Pauli)> = Vec::new();
        let mut kept_hole: BTreeMap<usize, BTreeSet<Coord>> = BTreeMap::new();

        for (ci, cyc) in hole.cycles.iter().enumerate() {
            if !cyc.open {
                continue;
            }
            // collect boundary nodes for every side this contour reaches
            let cyc_sides: BTreeSet<Side> = cyc
                .members
                .iter()
                .flat_map(|&m| {
                    reach_sides(frame, &cands[m])
                        .into_iter()
                        .chain(gap_sides(frame, &cands[m]))
                })
                .collect();
            for &s in &cyc_sides {
                let entry = nodes.entry(s).or_default();
                for &m in &cyc.members {
                    for d in cands[m].check.data() {
                        if frame.window.contains_data(d) {
                            entry.insert(d);
                        }
                    }
                }
            }

            for (m, action) in type_cycle(frame, cands, cyc, corner, owner_bias) {
                match action {
                    MemberAction::Remove(p) => {
                        removed.insert(m);
                        removed_types.push((ci, p));
                    }
                    MemberAction::Keep(support) => {
                        if support.len() >= 2 {
                            kept_hole.insert(m, support);
                        } else {
                            forced.extend(support);
                            removed.insert(m);
                            removed_types.push((ci, cands[m].check.pauli));
                        }
                    }
                }
            }
        }

        // Propagate removal through cycles sharing a removed gauge of the
        // same type.
        let mut work: Vec<(usize, Pauli)> = removed_types.clone();
        let mut processed: BTreeSet<(usize, Pauli)> = BTreeSet::new();
        while let Some((ci, p)) = work.pop() {
            if !processed.insert((ci, p)) {
                continue;
            }
            for (cj, cyc) in hole.cycles.iter().enumerate() {
                if cj == ci {
                    continue;
                }
                let shares_removed = cyc.members.iter().any(|m| {
                    removed.contains(m)
                        && cands[*m].check.pauli == p
                        && hole.cycles[ci].members.contains(m)
                });
                if shares_removed {
                    for &m in &cyc.members {
                        if cands[m].check.pauli == p && !removed.contains(&m) {
                            kept_hole.remove(&m);
                            removed.insert(m);
                            work.push((cj, p));
                        }
                    }
                }
            }
        }

        // Members of closed cycles (and anything never planned) stay whole
        // unless removed by propagation or forced out by the window.
        for &m in &hole.members {
            if removed.contains(&m) || kept_hole.contains_key(&m) {
                continue;
            }
            if removal_base(frame, &cands[m]) {
                continue;
            }
            kept_hole.insert(m, cands[m].check.data().collect());
        }
        keep.extend(kept_hole);
    }

    RemovalPlan {
        keep,
        forced_dead: forced,
        nodes,
    }
}

/// Assigns keep/remove per member of one open cycle. Arcs of surviving
/// members are typed by the boundary sides at their ends; a corner arc
/// switches type at the assigned corner.
fn type_cycle(
    frame: &Frame,
    cands: &[Candidate],
    cyc: &Cycle,
    corner: Option<Coord>,
    owner_bias: bool,
) -> Vec<(usize, MemberAction)> {
    let truncate = |m: usize| -> BTreeSet<Coord> {
        if frame.unusable.contains(&cands[m].check.ancilla)
            || !frame.window.contains_ancilla(cands[m].check.ancilla)
        {
            return BTreeSet::new();
        }
        cands[m]
            .check
            .data()
            .filter(|&d| frame.window.contains_data(d))
            .collect()
    };
    let port_of = |m: usize| -> Option<Side> {
        reach_sides(frame, &cands[m])
            .into_iter()
            .next()
            .or_else(|| gap_sides(frame, &cands[m]).into_iter().next())
    };
    let rb = |m: usize| removal_base(frame, &cands[m]);

    let mut out = Vec::new();
    let mut type_arc = |arc: &[usize], side_a: Side, side_b: Side, out: &mut Vec<(usize, MemberAction)>| {
        let (ta, tb) = (side_a.pauli(), side_b.pauli());
        if ta == tb {
            for &m in arc {
                if cands[m].check.pauli == ta {
                    out.push((m, MemberAction::Keep(truncate(m))));
                } else {
                    out.push((m, MemberAction::Remove(cands[m].check.pauli)));
                }
            }
        } else {
            // the check that owns the relocated corner; both scan directions
            // are tried as separate deformation variants
            let split = corner
                .and_then(|v| {
                    if owner_bias {
                        arc.iter().rposition(|&m| cands[m].check.contains(v))
                    } else {
                        arc.iter().position(|&m| cands[m].check.contains(v))
                    }
                })
                .unwrap_or(arc.len() / 2);
            for (pos, &m) in arc.iter().enumerate() {
                // Only one check may keep the corner qubit; the other side's
                // boundary starts beyond it.
                let keeps_corner = corner.is_some_and(|v| cands[m].check.contains(v));
                let want = if pos < split {
                    ta
                } else if pos > split {
                    tb
                } else {
                    cands[m].check.pauli // the corner member joins its own side
                };
                if cands[m].check.pauli == want && (pos == split || !keeps_corner) {
                    out.push((m, MemberAction::Keep(truncate(m))));
                } else {
                    out.push((m, MemberAction::Remove(cands[m].check.pauli)));
                }
            }
        }
    };

    match &cyc.order {
        Some(ContourOrder::Ring(ring)) => {
            let n = ring.len();
            let rb_pos: Vec<usize> = (0..n).filter(|&i| rb(ring[i])).collect();
            if rb_pos.is_empty() {
                return out; // closed ring, nothing to remove
            }
            for (k, &start) in rb_pos.iter().enumerate() {
                let end = rb_pos[(k + 1) % rb_pos.len()];
                let mut arc = Vec::new();
                let mut i = (start + 1) % n;
                while i != end {
                    arc.push(ring[i]);
                    i = (i + 1) % n;
                }
                let side_a = port_of(ring[start]).unwrap_or(Side::North);
                let side_b = port_of(ring[end]).unwrap_or(side_a);
                if !arc.is_empty() {
                    type_arc(&arc, side_a, side_b, &mut out);
                }
            }
            for &i in &rb_pos {
                let m = ring[i];
                let side = port_of(m).unwrap_or(Side::North);
                if cands[m].check.pauli == side.pauli() {
                    out.push((m, MemberAction::Keep(truncate(m))));
                } else {
                    out.push((m, MemberAction::Remove(cands[m].check.pauli)));
                }
            }
            out
        }
        Some(ContourOrder::Chain(chain)) => {
            // split the chain at removal-base members into arcs; chain ends
            // port through their gap sides
            let mut segments: Vec<(Vec<usize>, Option<usize>, Option<usize>)> = Vec::new();
            let mut current: Vec<usize> = Vec::new();
            let mut left_rb: Option<usize> = None;
            for &m in chain {
                if rb(m) {
                    if !current.is_empty() {
                        segments.push((core::mem::take(&mut current), left_rb, Some(m)));
                    }
                    left_rb = Some(m);
                } else {
                    current.push(m);
                }
            }
            if !current.is_empty() {
                segments.push((current, left_rb, None));
            }
            for (arc, lrb, rrb) in &segments {
                let side_a = lrb
                    .and_then(port_of)
                    .or_else(|| arc.first().and_then(|&m| port_of(m)))
                    .unwrap_or(Side::North);
                let side_b = rrb
                    .and_then(port_of)
                    .or_else(|| arc.last().and_then(|&m| port_of(m)))
                    .unwrap_or(side_a);
                type_arc(arc, side_a, side_b, &mut out);
            }
            for &m in chain {
                if rb(m) {
                    let side = port_of(m).unwrap_or(Side::North);
                    if cands[m].check.pauli == side.pauli() {
                        out.push((m, MemberAction::Keep(truncate(m))));
                    } else {
                        out.push((m, MemberAction::Remove(cands[m].check.pauli)));
                    }
                }
            }
            out
        }
        None => {
            // geometric fallback: type each member against the nearest
            // reached side, switching at the assigned corner when present
            let sides: BTreeSet<Side> = cyc
                .members
                .iter()
                .flat_map(|&m| {
                    reach_sides(frame, &cands[m])
                        .into_iter()
                        .chain(gap_sides(frame, &cands[m]))
                })
                .collect();
            let horiz = sides
                .iter()
                .copied()
                .find(|s| matches!(s, Side::North | Side::South));
            let vert = sides
                .iter()
                .copied()
                .find(|s| matches!(s, Side::West | Side::East));
            for &m in &cyc.members {
                let a = cands[m].check.ancilla;
                let want = match (horiz, vert, corner) {
                    (Some(h), Some(v), Some(c)) => {
                        let past_x = match v {
                            Side::West => a.x >= c.x - 1,
                            _ => a.x <= c.x + 1,
                        };
                        let past_y = match h {
                            Side::North => a.y >= c.y - 1,
                            _ => a.y <= c.y + 1,
                        };
                        if past_y && !past_x {
                            v.pauli()
                        } else {
                            h.pauli()
                        }
                    }
                    (Some(h), None, _) => h.pauli(),
                    (None, Some(v), _) => v.pauli(),
                    (Some(h), Some(_), None) => h.pauli(),
                    (None, None, _) => Side::North.pauli(),
                };
                if cands[m].check.pauli == want {
                    out.push((m, MemberAction::Keep(truncate(m))));
                } else {
                    out.push((m, MemberAction::Remove(cands[m].check.pauli)));
                }
            }
            out
        }
    }
}

/// Runs the deformation for one corner assignment to a fixed point.
fn deform_one(
    frame: &Frame,
    pieces0: &Pieces,
    assignment: &CornerAssignment,
    owner_bias: bool,
) -> Result<Patch, DeformError> {
    let default_corners = frame.window.corner_data();
    let mut corners = default_corners;
    for k in 0..4 {
        if let Some(c) = assignment[k] {
            corners[k] = c;
        }
    }

    let mut extra_dead: BTreeSet<Coord> = BTreeSet::new();
    for _ in 0..256 {
        let mut base_dead = pieces0.dead.clone();
        base_dead.extend(extra_dead.iter().copied());
        let (dead, reps) = resolve_snakes(frame, &pieces0.reps, &base_dead, &pieces0.replaced);
        let pieces = Pieces {
            dead,
            reps,
            shapes: pieces0.shapes.clone(),
            replaced: pieces0.replaced.clone(),
        };
        // A relocated corner that died is no longer a valid placement.
        for k in 0..4 {
            if let Some(c) = assignment[k] {
                if pieces.dead.contains(&c) {
                    return Err(DeformError::NoCornerCandidate);
                }
            }
        }
        let cands = build_candidates(frame, &pieces);
        let partners = anticommutation(&cands);
        let groups = group_supers(frame, &pieces, &cands, &partners);
        let holes = partition_holes(frame, &pieces, &cands, &partners, &groups)?;
        let plan = plan_removals(frame, &cands, &holes, assignment, &corners, owner_bias);

        let mut forced = plan.forced_dead.clone();
        // A data qubit left without any X-type or any Z-type check after the
        // removals cannot stay in the code (it would carry a weight-1
        // logical).
        let mut covered: BTreeMap<Coord, (bool, bool)> = BTreeMap::new();
        for (i, support) in &plan.keep {
            for &d in support {
                let e = covered.entry(d).or_insert((false, false));
                match cands[*i].check.pauli {
                    Pauli::X => e.0 = true,
                    Pauli::Z => e.1 = true,
                }
            }
        }
        for d in frame.window.data_iter() {
            if pieces.dead.contains(&d) {
                continue;
            }
            let (x_cov, z_cov) = covered.get(&d).copied().unwrap_or((false, false));
            if !x_cov || !z_cov {
                forced.insert(d);
            }
        }
        let new_dead: BTreeSet<Coord> = forced
            .iter()
            .copied()
            .filter(|d| !pieces.dead.contains(d) && frame.chip.data.contains(d))
            .collect();
        if !new_dead.is_empty() {
            extra_dead.extend(new_dead);
            continue;
        }

        // Final in-window candidate list.
        let mut final_cands: Vec<Candidate> = Vec::new();
        let mut kept_rep_idx: Vec<usize> = Vec::new();
        for (i, cand) in cands.iter().enumerate() {
            let Some(support) = plan.keep.get(&i) else {
                continue;
            };
            debug_assert!(support.len() >= 2);
            let full: BTreeSet<Coord> = cand.check.data().collect();
            let check = if *support == full {
                cand.check.clone()
            } else {
                crate::check::Check::new(
                    cand.check.ancilla,
                    cand.check.origin,
                    cand.check.pauli,
                    support.iter().copied(),
                    cand.check.kind,
                    cand.check.parity,
                )
            };
            if let Some(r) = cand.rep {
                kept_rep_idx.push(r);
            }
            final_cands.push(Candidate {
                check,
                rep: cand.rep,
            });
        }
        let final_reps: Vec<crate::patch::Repurposing> =
            kept_rep_idx.iter().map(|&r| pieces.reps[r]).collect();
        let surviving_origins: BTreeSet<Coord> = final_reps.iter().map(|r| r.origin).collect();
        let final_pieces = Pieces {
            dead: pieces.dead.clone(),
            reps: final_reps,
            shapes: pieces0
                .shapes
                .iter()
                .copied()
                .filter(|s| surviving_origins.contains(&s.origin))
                .collect(),
            replaced: pieces.replaced.clone(),
        };
        let final_partners = anticommutation(&final_cands);
        let final_groups = group_supers(frame, &final_pieces, &final_cands, &final_partners);
        return finalize_patch(
            frame,
            &final_pieces,
            final_cands,
            final_groups,
            corners,
            plan.nodes,
        )
        .map_err(|_e| {
            #[cfg(any(test, debug_assertions))]
            {
                extern crate std;
                std::eprintln!("finalize failed: {_e}");
            }
            DeformError::AllCandidatesInvalid
        });
    }
    Err(DeformError::AllCandidatesInvalid)
}

/// Deforms a strategy into every viable corner placement and returns the
/// valid patches. Callers rank them by code distance.
pub fn deform_candidates(frame: &Frame, pieces: &Pieces) -> Result<Vec<Patch>, DeformError> {
    // Pre-pass to discover holes and compromised corners.
    let (dead, reps) = resolve_snakes(frame, &pieces.reps, &pieces.dead, &pieces.replaced);
    let resolved = Pieces {
        dead,
        reps,
        shapes: pieces.shapes.clone(),
        replaced: pieces.replaced.clone(),
    };
    let cands = build_candidates(frame, &resolved);
    let partners = anticommutation(&cands);
    let groups = group_supers(frame, &resolved, &cands, &partners);
    let holes = partition_holes(frame, &resolved, &cands, &partners, &groups)?;

    // Map each compromised corner to its hole's candidate list.
    let comp = compromised_corners(frame, &resolved, &holes, &cands);
    let mut per_hole_count: BTreeMap<usize, usize> = BTreeMap::new();
    for (_, &hi) in &comp {
        *per_hole_count.entry(hi).or_insert(0) += 1;
    }
    for (&hi, &count) in &per_hole_count {
        if count > 2 {
            return Err(DeformError::TooManyCorners {
                hole_sides: holes[hi].sides.iter().copied().collect(),
            });
        }
    }
    let mut per_corner: BTreeMap<usize, Vec<Coord>> = BTreeMap::new();
    for (&k, &hi) in &comp {
        let candidates = corner_candidates(frame, &holes[hi], &cands);
        if candidates.is_empty() {
            return Err(DeformError::NoCornerCandidate);
        }
        per_corner.insert(k, candidates);
    }

    let mut assignments: Vec<CornerAssignment> = alloc::vec![[None, None, None, None]];
    for (&k, options) in &per_corner {
        let mut next = Vec::new();
        for base in &assignments {
            for &c in options {
                if base.iter().any(|o| *o == Some(c)) {
                    continue;
                }
                let mut a = *base;
                a[k] = Some(c);
                next.push(a);
            }
        }
        assignments = next;
    }

    let mut patches = Vec::new();
    let mut last_err = DeformError::AllCandidatesInvalid;
    for assignment in &assignments {
        for owner_bias in [false, true] {
            match deform_one(frame, pieces, assignment, owner_bias) {
                Ok(p) => patches.push(p),
                Err(e) => last_err = e,
            }
            if per_corner.is_empty() && assignments.len() == 1 {
                // no corner arcs anywhere: the bias cannot matter
                break;
            }
        }
    }
    if patches.is_empty() {
        Err(last_err)
    } else {
        Ok(patches)
    }
}

/// Convenience: deforms and keeps the patch maximizing
/// `(min distance, distance sum, active data)`.
pub fn deform_best(frame: &Frame, pieces: &Pieces) -> Result<(Patch, i32, i32), DeformError> {
    let patches = deform_candidates(frame, pieces)?;
    let mut best: Option<(Patch, i32, i32)> = None;
    for p in patches {
        let dx = crate::distance::graph_distance(&p, Pauli::X);
        let dz = crate::distance::graph_distance(&p, Pauli::Z);
        let key = (dx.min(dz), dx + dz, p.active_data() as i32);
        let better = match &best {
            None => true,
            Some((bp, bdx, bdz)) => {
                let bkey = ((*bdx).min(*bdz), *bdx + *bdz, bp.active_data() as i32);
                key > bkey
            }
        };
        if better {
            best = Some((p, dx, dz));
        }
    }
    best.ok_or(DeformError::AllCandidatesInvalid)
}

/// Builds the defect-free patch of a window (used for references and tests).
pub fn native_patch(frame: &Frame) -> Result<Patch, DeformError> {
    deform_one(frame, &Pieces::default(), &[None, None, None, None], false)
}

/// Frame construction helper for a chip-hosted window.
pub fn frame_for<'c>(chip: &'c Chip, flip: bool, defects: &DefectMap) -> Frame<'c> {
    Frame::new(chip, chip.spec.work_window(), flip, defects).finish()
}

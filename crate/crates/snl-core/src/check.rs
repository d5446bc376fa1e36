//! Parity checks: operators, measurement schedule slots, and round parity.

use alloc::vec::Vec;

use crate::geom::{Coord, Pauli};

/// How a check fits into the adapted code.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CheckKind {
    /// Unmodified native stabilizer, deterministic outcome.
    Stabilizer,
    /// Individually random outcome; products within a super-stabilizer group
    /// are deterministic.
    Gauge,
    /// Weight-2 check measured by a repurposed ancilla (or the weight-2
    /// remnant a link-defective ancilla keeps).
    Repurposed,
    /// Check converted or truncated at the window boundary, deterministic.
    Boundary,
}

/// Which rounds a check is measured in.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum RoundParity {
    EveryRound,
    /// Rounds 0, 2, 4, ...
    Even,
    /// Rounds 1, 3, 5, ...
    Odd,
}

impl RoundParity {
    pub fn measures_in(self, round: u32) -> bool {
        match self {
            RoundParity::EveryRound => true,
            RoundParity::Even => round % 2 == 0,
            RoundParity::Odd => round % 2 == 1,
        }
    }
}

/// Round parity for alternating checks: X-type in even rounds, Z-type in odd
/// rounds, globally uniform.
pub fn parity_for(pauli: Pauli) -> RoundParity {
    match pauli {
        Pauli::X => RoundParity::Even,
        Pauli::Z => RoundParity::Odd,
    }
}

/// Syndrome-extraction slot (1..=4) at which `origin`'s check touches `data`.
/// Z-type checks visit NW, NE, SW, SE; X-type checks visit NW, SW, NE, SE.
/// With this pairing each data qubit is touched by at most one check per slot.
pub fn schedule_slot(origin: Coord, data: Coord, pauli: Pauli) -> u8 {
    let dx = data.x - origin.x;
    let dy = data.y - origin.y;
    debug_assert!(dx.abs() == 1 && dy.abs() == 1);
    match (pauli, dx, dy) {
        (Pauli::Z, -1, -1) => 1,
        (Pauli::Z, 1, -1) => 2,
        (Pauli::Z, -1, 1) => 3,
        (Pauli::Z, 1, 1) => 4,
        (Pauli::X, -1, -1) => 1,
        (Pauli::X, -1, 1) => 2,
        (Pauli::X, 1, -1) => 3,
        (Pauli::X, 1, 1) => 4,
        _ => unreachable!(),
    }
}

/// One measured parity operator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Check {
    /// The ancilla that measures the check.
    pub ancilla: Coord,
    /// The ancilla whose native schedule the check follows. Differs from
    /// `ancilla` exactly for repurposed checks measured on behalf of a
    /// defective neighbor.
    pub origin: Coord,
    pub pauli: Pauli,
    /// Data support with schedule slots, sorted by slot.
    pub support: Vec<(Coord, u8)>,
    pub kind: CheckKind,
    pub parity: RoundParity,
}

impl Check {
    pub fn new(
        ancilla: Coord,
        origin: Coord,
        pauli: Pauli,
        data: impl IntoIterator<Item = Coord>,
        kind: CheckKind,
        parity: RoundParity,
    ) -> Check {
        let mut support: Vec<(Coord, u8)> = data
            .into_iter()
            .map(|d| (d, schedule_slot(origin, d, pauli)))
            .collect();
        support.sort_by_key(|&(_, s)| s);
        Check {
            ancilla,
            origin,
            pauli,
            support,
            kind,
            parity,
        }
    }

    pub fn weight(&self) -> usize {
        self.support.len()
    }

    pub fn data(&self) -> impl Iterator<Item = Coord> + '_ {
        self.support.iter().map(|&(d, _)| d)
    }

    pub fn contains(&self, q: Coord) -> bool {
        self.support.iter().any(|&(d, _)| d == q)
    }

    pub fn overlap(&self, other: &Check) -> usize {
        self.support
            .iter()
            .filter(|(d, _)| other.contains(*d))
            .count()
    }

    /// Two checks anticommute iff they have opposite Pauli type and odd
    /// support overlap.
    pub fn anticommutes(&self, other: &Check) -> bool {
        self.pauli != other.pauli && self.overlap(other) % 2 == 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::collections::BTreeMap;
    use alloc::vec::Vec;
    use crate::lattice::native_pauli;

    /// Each data qubit is touched by at most one neighboring check per slot
    /// when every ancilla runs its native schedule.
    #[test]
    fn native_schedule_has_no_slot_conflicts() {
        for flip in [false, true] {
            let mut touches: BTreeMap<(Coord, u8), Vec<Coord>> = BTreeMap::new();
            for ax in 0..=10 {
                for ay in 0..=10 {
                    let a = Coord::new(2 * ax, 2 * ay);
                    let pauli = native_pauli(a, flip);
                    for d in a.diagonals() {
                        let slot = schedule_slot(a, d, pauli);
                        touches.entry((d, slot)).or_default().push(a);
                    }
                }
            }
            for ((_, _), who) in touches {
                assert!(who.len() <= 1, "slot conflict between {who:?}");
            }
        }
    }

    #[test]
    fn anticommutation_by_overlap_parity() {
        let a = Check::new(
            Coord::new(2, 2),
            Coord::new(2, 2),
            Pauli::Z,
            Coord::new(2, 2).diagonals(),
            CheckKind::Stabilizer,
            RoundParity::EveryRound,
        );
        let b = Check::new(
            Coord::new(4, 2),
            Coord::new(4, 2),
            Pauli::X,
            Coord::new(4, 2).diagonals(),
            CheckKind::Stabilizer,
            RoundParity::EveryRound,
        );
        // Adjacent native checks share two data qubits.
        assert_eq!(a.overlap(&b), 2);
        assert!(!a.anticommutes(&b));
        let c = Check::new(
            Coord::new(4, 2),
            Coord::new(4, 2),
            Pauli::X,
            [Coord::new(3, 1)],
            CheckKind::Gauge,
            RoundParity::Even,
        );
        assert!(a.anticommutes(&c));
    }
}

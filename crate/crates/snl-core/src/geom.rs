//! Lattice coordinates and Pauli types.
//!
//! Data qubits sit on (odd, odd) coordinates, ancilla qubits on (even, even).
//! Adjacent same-role qubits are separated by Chebyshev distance 2; a data
//! qubit and an ancilla qubit are adjacent (share a two-qubit gate) exactly
//! when their Chebyshev distance is 1.

use core::fmt;

/// An integer lattice coordinate. `y` grows downward, `x` to the right.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Coord {
    pub x: i32,
    pub y: i32,
}

impl fmt::Debug for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl Coord {
    pub const fn new(x: i32, y: i32) -> Self {
        Coord { x, y }
    }

    /// True for (odd, odd) coordinates.
    pub fn is_data(self) -> bool {
        self.x.rem_euclid(2) == 1 && self.y.rem_euclid(2) == 1
    }

    /// True for (even, even) coordinates.
    pub fn is_ancilla(self) -> bool {
        self.x.rem_euclid(2) == 0 && self.y.rem_euclid(2) == 0
    }

    pub fn chebyshev(self, other: Coord) -> i32 {
        let dx = (self.x - other.x).abs();
        let dy = (self.y - other.y).abs();
        dx.max(dy)
    }

    /// The four diagonal neighbours (the opposite-role qubits this one shares
    /// gates with), in NW, NE, SW, SE order.
    pub fn diagonals(self) -> [Coord; 4] {
        [
            Coord::new(self.x - 1, self.y - 1),
            Coord::new(self.x + 1, self.y - 1),
            Coord::new(self.x - 1, self.y + 1),
            Coord::new(self.x + 1, self.y + 1),
        ]
    }

    /// The four same-role neighbours at Chebyshev distance 2 along the axes,
    /// in W, E, N, S order.
    pub fn axis_neighbors(self) -> [Coord; 4] {
        [
            Coord::new(self.x - 2, self.y),
            Coord::new(self.x + 2, self.y),
            Coord::new(self.x, self.y - 2),
            Coord::new(self.x, self.y + 2),
        ]
    }
}

/// Pauli type of a check or boundary.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Pauli {
    X,
    Z,
}

impl Pauli {
    pub fn opposite(self) -> Pauli {
        match self {
            Pauli::X => Pauli::Z,
            Pauli::Z => Pauli::X,
        }
    }
}

impl fmt::Display for Pauli {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pauli::X => write!(f, "X"),
            Pauli::Z => write!(f, "Z"),
        }
    }
}

/// An unordered data-ancilla pair at Chebyshev distance 1 (a two-qubit gate).
/// Stored as (data, ancilla).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Link {
    pub data: Coord,
    pub ancilla: Coord,
}

impl Link {
    /// Normalizes an arbitrary pair into (data, ancilla) form.
    /// Returns `None` if the pair is not a valid lattice gate.
    pub fn new(a: Coord, b: Coord) -> Option<Link> {
        if a.chebyshev(b) != 1 {
            return None;
        }
        if a.is_data() && b.is_ancilla() {
            Some(Link { data: a, ancilla: b })
        } else if b.is_data() && a.is_ancilla() {
            Some(Link { data: b, ancilla: a })
        } else {
            None
        }
    }
}

/// One side of a rectangular target window.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Side {
    North,
    South,
    West,
    East,
}

impl Side {
    pub const ALL: [Side; 4] = [Side::North, Side::South, Side::West, Side::East];

    /// Boundary Pauli type with the standard orientation: X-type boundaries on
    /// top and bottom, Z-type on left and right.
    pub fn pauli(self) -> Pauli {
        match self {
            Side::North | Side::South => Pauli::X,
            Side::West | Side::East => Pauli::Z,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roles_by_parity() {
        assert!(Coord::new(1, 1).is_data());
        assert!(Coord::new(-3, 5).is_data());
        assert!(Coord::new(0, 0).is_ancilla());
        assert!(Coord::new(-2, 4).is_ancilla());
        assert!(!Coord::new(1, 2).is_data());
        assert!(!Coord::new(1, 2).is_ancilla());
    }

    #[test]
    fn link_normalization() {
        let d = Coord::new(1, 1);
        let a = Coord::new(2, 2);
        let l = Link::new(a, d).unwrap();
        assert_eq!(l.data, d);
        assert_eq!(l.ancilla, a);
        assert!(Link::new(d, Coord::new(3, 3)).is_none()); // data-data
        assert!(Link::new(d, Coord::new(4, 2)).is_none()); // too far
    }

    #[test]
    fn diagonals_are_opposite_role() {
        let a = Coord::new(4, 6);
        for d in a.diagonals() {
            assert!(d.is_data());
            assert_eq!(a.chebyshev(d), 1);
        }
    }
}

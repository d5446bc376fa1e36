//! Target windows, physical chips, and defect maps.
//!
//! A target window of dimensions `w x h` contains a `w * h` grid of data
//! qubits and a `(w+1) * (h+1)` grid of ancilla positions such that only
//! ancilla positions lie on the window perimeter. In the absence of defects
//! the window supports a rotated surface code of distance `(d_X, d_Z) = (h, w)`
//! with X-type boundaries on top and bottom and Z-type boundaries on left and
//! right.
//!
//! A [`Chip`] is the set of physically fabricated qubits and gates hosting a
//! window. Depending on the padding strategy, the perimeter carries either
//! only the ancillas needed for the native weight-2 boundary checks, or an
//! ancilla at every non-corner perimeter position.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::geom::{Coord, Link, Pauli, Side};

/// Boundary padding strategy of the fabricated chip.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Padding {
    /// Only the ancillas used by the native code.
    None,
    /// An ancilla at every non-corner perimeter position. For a `d x d`
    /// window this adds `2(d-1)` qubits and enables boundary repurposing as
    /// well as the choice between the two alternating boundary-ancilla sets.
    Ancilla,
    /// Fabricate a `(w+1) x (h+1)` patch with only the native boundary
    /// ancillas; `4*d + 2` extra qubits for a `d x d` window.
    DPlusOne,
}

/// A rectangular target window.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct WindowSpec {
    /// Count of data-qubit columns.
    pub width: u32,
    /// Count of data-qubit rows.
    pub height: u32,
    /// Coordinate of the top-left data qubit. Must be (odd, odd).
    pub origin: Coord,
    pub padding: Padding,
    /// Selects which of the two checkerboard Pauli assignments is used:
    /// with the flip set, the Pauli type of every native check is reversed
    /// and the complementary alternating boundary-ancilla set carries the
    /// weight-2 checks. Geometry is unchanged.
    pub pauli_parity_flip: bool,
}

impl WindowSpec {
    pub fn square(d: u32) -> Self {
        WindowSpec {
            width: d,
            height: d,
            origin: Coord::new(1, 1),
            padding: Padding::None,
            pauli_parity_flip: false,
        }
    }

    pub fn with_padding(mut self, padding: Padding) -> Self {
        self.padding = padding;
        self
    }

    pub fn with_flip(mut self, flip: bool) -> Self {
        self.pauli_parity_flip = flip;
        self
    }

    pub fn validate(&self) -> Result<(), LatticeError> {
        if self.width == 0 || self.height == 0 {
            return Err(LatticeError::EmptyWindow);
        }
        if !self.origin.is_data() {
            return Err(LatticeError::BadOrigin(self.origin));
        }
        Ok(())
    }

    /// The window rectangle, ignoring padding.
    pub fn window(&self) -> Window {
        Window {
            origin: self.origin,
            width: self.width,
            height: self.height,
        }
    }

    /// The window the adaptation actually runs on. For `DPlusOne` padding the
    /// fabricated patch is one row and one column larger than requested and
    /// the whole fabricated area is adapted.
    pub fn work_window(&self) -> Window {
        match self.padding {
            Padding::DPlusOne => Window {
                origin: self.origin,
                width: self.width + 1,
                height: self.height + 1,
            },
            _ => self.window(),
        }
    }

    /// Requested target distance `(d_X, d_Z) = (height, width)`.
    pub fn target_distance(&self) -> (i32, i32) {
        (self.height as i32, self.width as i32)
    }
}

/// Geometric queries on a window rectangle.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Window {
    pub origin: Coord,
    pub width: u32,
    pub height: u32,
}

impl Window {
    pub fn x_max(&self) -> i32 {
        self.origin.x + 2 * (self.width as i32 - 1)
    }

    pub fn y_max(&self) -> i32 {
        self.origin.y + 2 * (self.height as i32 - 1)
    }

    /// True if a data coordinate lies inside the window.
    pub fn contains_data(&self, c: Coord) -> bool {
        c.x >= self.origin.x && c.x <= self.x_max() && c.y >= self.origin.y && c.y <= self.y_max()
    }

    /// True if an ancilla coordinate lies inside the window or on its
    /// perimeter ring.
    pub fn contains_ancilla(&self, c: Coord) -> bool {
        c.x >= self.origin.x - 1
            && c.x <= self.x_max() + 1
            && c.y >= self.origin.y - 1
            && c.y <= self.y_max() + 1
    }

    pub fn contains(&self, c: Coord) -> bool {
        if c.is_data() {
            self.contains_data(c)
        } else {
            self.contains_ancilla(c)
        }
    }

    /// True within the extended window: the window plus two additional layers
    /// of data and ancilla qubits on each side.
    pub fn contains_extended(&self, c: Coord) -> bool {
        c.x >= self.origin.x - 5
            && c.x <= self.x_max() + 5
            && c.y >= self.origin.y - 5
            && c.y <= self.y_max() + 5
    }

    /// Which perimeter sides an ancilla position lies on (0, 1 or 2 of them).
    pub fn perimeter_sides(&self, a: Coord) -> Vec<Side> {
        let mut sides = Vec::new();
        if !self.contains_ancilla(a) {
            return sides;
        }
        if a.y == self.origin.y - 1 {
            sides.push(Side::North);
        }
        if a.y == self.y_max() + 1 {
            sides.push(Side::South);
        }
        if a.x == self.origin.x - 1 {
            sides.push(Side::West);
        }
        if a.x == self.x_max() + 1 {
            sides.push(Side::East);
        }
        sides
    }

    /// Which sides an arbitrary (possibly outside) coordinate exceeds.
    pub fn outside_sides(&self, c: Coord) -> Vec<Side> {
        let (lo_x, hi_x, lo_y, hi_y) = if c.is_data() {
            (self.origin.x, self.x_max(), self.origin.y, self.y_max())
        } else {
            (
                self.origin.x - 1,
                self.x_max() + 1,
                self.origin.y - 1,
                self.y_max() + 1,
            )
        };
        let mut sides = Vec::new();
        if c.y < lo_y {
            sides.push(Side::North);
        }
        if c.y > hi_y {
            sides.push(Side::South);
        }
        if c.x < lo_x {
            sides.push(Side::West);
        }
        if c.x > hi_x {
            sides.push(Side::East);
        }
        sides
    }

    /// The four corner data qubits in NW, NE, SW, SE order.
    pub fn corner_data(&self) -> [Coord; 4] {
        [
            self.origin,
            Coord::new(self.x_max(), self.origin.y),
            Coord::new(self.origin.x, self.y_max()),
            Coord::new(self.x_max(), self.y_max()),
        ]
    }

    pub fn data_iter(&self) -> impl Iterator<Item = Coord> + '_ {
        let win = *self;
        (0..win.height as i32).flat_map(move |j| {
            (0..win.width as i32)
                .map(move |i| Coord::new(win.origin.x + 2 * i, win.origin.y + 2 * j))
        })
    }

    /// All ancilla positions of the window including the perimeter ring and
    /// its corners.
    pub fn ancilla_iter(&self) -> impl Iterator<Item = Coord> + '_ {
        let win = *self;
        (0..=win.height as i32).flat_map(move |j| {
            (0..=win.width as i32)
                .map(move |i| Coord::new(win.origin.x - 1 + 2 * i, win.origin.y - 1 + 2 * j))
        })
    }
}

/// Native checkerboard Pauli assignment. Ancilla at `(x, y)` is Z-type iff
/// `(x + y)/2` is even, inverted by the parity flip.
pub fn native_pauli(a: Coord, flip: bool) -> Pauli {
    debug_assert!(a.is_ancilla());
    let e = (a.x + a.y).div_euclid(2);
    if (e.rem_euclid(2) == 0) != flip {
        Pauli::Z
    } else {
        Pauli::X
    }
}

/// Role an ancilla position plays in the native (defect-free) layout.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AncillaRole {
    /// Interior ancilla measuring a weight-4 check.
    Bulk,
    /// Perimeter ancilla measuring a native weight-2 boundary check.
    BoundaryCheck(Side),
    /// Perimeter ancilla of the complementary alternating set (usable for
    /// repurposing when fabricated).
    Pad,
    /// Perimeter corner position; never carries a check of weight > 1.
    Corner,
}

/// Classifies an ancilla position of `window` under the given flip.
pub fn ancilla_role(window: &Window, a: Coord, flip: bool) -> AncillaRole {
    let sides = window.perimeter_sides(a);
    match sides.len() {
        0 => AncillaRole::Bulk,
        1 => {
            let side = sides[0];
            if native_pauli(a, flip) == side.pauli() {
                AncillaRole::BoundaryCheck(side)
            } else {
                AncillaRole::Pad
            }
        }
        _ => AncillaRole::Corner,
    }
}

/// The fabricated device hosting a window: which qubits and gates exist.
#[derive(Clone, Debug)]
pub struct Chip {
    pub spec: WindowSpec,
    pub data: BTreeSet<Coord>,
    pub ancillas: BTreeSet<Coord>,
    pub links: BTreeSet<Link>,
}

impl Chip {
    /// Builds the chip for a window spec. The fabricated ancilla set is fixed
    /// by the spec's own `pauli_parity_flip`; adapting with the opposite flip
    /// is possible only when the complementary boundary set exists (ancilla
    /// padding).
    pub fn build(spec: WindowSpec) -> Result<Chip, LatticeError> {
        spec.validate()?;
        let win = spec.work_window();
        let data: BTreeSet<Coord> = win.data_iter().collect();
        let mut ancillas = BTreeSet::new();
        for a in win.ancilla_iter() {
            let keep = match ancilla_role(&win, a, spec.pauli_parity_flip) {
                AncillaRole::Bulk | AncillaRole::BoundaryCheck(_) => true,
                AncillaRole::Pad => spec.padding == Padding::Ancilla,
                AncillaRole::Corner => false,
            };
            if keep {
                ancillas.insert(a);
            }
        }
        let links = links_between(&data, &ancillas);
        Ok(Chip {
            spec,
            data,
            ancillas,
            links,
        })
    }

    /// Builds a full processor grid: every data and ancilla position of the
    /// bounding window exists, including perimeter corners.
    pub fn processor(width: u32, height: u32) -> Result<Chip, LatticeError> {
        let spec = WindowSpec {
            width,
            height,
            origin: Coord::new(1, 1),
            padding: Padding::Ancilla,
            pauli_parity_flip: false,
        };
        spec.validate()?;
        let win = spec.window();
        let data: BTreeSet<Coord> = win.data_iter().collect();
        let ancillas: BTreeSet<Coord> = win.ancilla_iter().collect();
        let links = links_between(&data, &ancillas);
        Ok(Chip {
            spec,
            data,
            ancillas,
            links,
        })
    }

    pub fn exists(&self, c: Coord) -> bool {
        if c.is_data() {
            self.data.contains(&c)
        } else {
            self.ancillas.contains(&c)
        }
    }

    pub fn component_count(&self) -> usize {
        self.data.len() + self.ancillas.len() + self.links.len()
    }
}

fn links_between(data: &BTreeSet<Coord>, ancillas: &BTreeSet<Coord>) -> BTreeSet<Link> {
    let mut links = BTreeSet::new();
    for &a in ancillas {
        for d in a.diagonals() {
            if data.contains(&d) {
                links.insert(Link { data: d, ancilla: a });
            }
        }
    }
    links
}

/// Per-component defect probabilities.
#[derive(Clone, Copy, Debug)]
pub struct DefectRates {
    pub q_data: f64,
    pub q_ancilla: f64,
    pub q_link: f64,
}

impl DefectRates {
    pub fn uniform(q: f64) -> Self {
        DefectRates {
            q_data: q,
            q_ancilla: q,
            q_link: q,
        }
    }

    pub fn validate(&self) -> Result<(), LatticeError> {
        for q in [self.q_data, self.q_ancilla, self.q_link] {
            if !(0.0..=1.0).contains(&q) {
                return Err(LatticeError::BadRate(q));
            }
        }
        Ok(())
    }
}

/// The defective components of a chip.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct DefectMap {
    pub data: BTreeSet<Coord>,
    pub ancillas: BTreeSet<Coord>,
    pub links: BTreeSet<Link>,
}

impl DefectMap {
    pub fn is_empty(&self) -> bool {
        self.data.is_empty() && self.ancillas.is_empty() && self.links.is_empty()
    }

    pub fn len(&self) -> usize {
        self.data.len() + self.ancillas.len() + self.links.len()
    }

    /// Every defect must name a component that exists on the chip.
    pub fn validate(&self, chip: &Chip) -> Result<(), LatticeError> {
        for &q in &self.data {
            if !chip.data.contains(&q) {
                return Err(LatticeError::UnknownComponent(q));
            }
        }
        for &a in &self.ancillas {
            if !chip.ancillas.contains(&a) {
                return Err(LatticeError::UnknownComponent(a));
            }
        }
        for l in &self.links {
            if !chip.links.contains(l) {
                return Err(LatticeError::UnknownLink(*l));
            }
        }
        Ok(())
    }

    /// Restricts the map to defects whose coordinates fall in `window`
    /// (links count if either endpoint does).
    pub fn restrict(&self, window: &Window) -> DefectMap {
        DefectMap {
            data: self
                .data
                .iter()
                .copied()
                .filter(|&c| window.contains_data(c))
                .collect(),
            ancillas: self
                .ancillas
                .iter()
                .copied()
                .filter(|&c| window.contains_ancilla(c))
                .collect(),
            links: self
                .links
                .iter()
                .copied()
                .filter(|l| window.contains(l.data) || window.contains(l.ancilla))
                .collect(),
        }
    }
}

/// Samples every chip component independently defective at its rate.
/// Deterministic for a given seed: components are visited in sorted order and
/// driven by a ChaCha8 stream seeded from the 64-bit seed.
pub fn sample_defects(chip: &Chip, rates: &DefectRates, seed: u64) -> DefectMap {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draw = move || (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    let mut map = DefectMap::default();
    for &q in &chip.data {
        if draw() < rates.q_data {
            map.data.insert(q);
        }
    }
    for &a in &chip.ancillas {
        if draw() < rates.q_ancilla {
            map.ancillas.insert(a);
        }
    }
    for &l in &chip.links {
        if draw() < rates.q_link {
            map.links.insert(l);
        }
    }
    map
}

#[derive(Clone, Debug, PartialEq)]
pub enum LatticeError {
    EmptyWindow,
    BadOrigin(Coord),
    BadRate(f64),
    UnknownComponent(Coord),
    UnknownLink(Link),
}

impl core::fmt::Display for LatticeError {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            LatticeError::EmptyWindow => write!(f, "window must have positive dimensions"),
            LatticeError::BadOrigin(c) => write!(f, "window origin {c:?} is not a data coordinate"),
            LatticeError::BadRate(q) => write!(f, "defect rate {q} outside [0, 1]"),
            LatticeError::UnknownComponent(c) => {
                write!(f, "defect at {c:?} names a component not on the chip")
            }
            LatticeError::UnknownLink(l) => {
                write!(f, "defective link {:?}-{:?} is not on the chip", l.data, l.ancilla)
            }
        }
    }
}




#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn d3_native_counts() {
        let chip = Chip::build(WindowSpec::square(3)).unwrap();
        assert_eq!(chip.data.len(), 9);
        // 4 bulk + 4 boundary-check ancillas
        assert_eq!(chip.ancillas.len(), 8);
        // 4 links per bulk check, 2 per boundary check
        assert_eq!(chip.links.len(), 4 * 4 + 4 * 2);
    }

    #[test]
    fn link_count_formula_small_windows() {
        for w in 1..=9u32 {
            for h in 1..=9u32 {
                let spec = WindowSpec {
                    width: w,
                    height: h,
                    origin: Coord::new(1, 1),
                    padding: Padding::None,
                    pauli_parity_flip: false,
                };
                let chip = Chip::build(spec).unwrap();
                assert_eq!(chip.data.len() as u32, w * h);
                let bulk = (w - 1) * (h - 1);
                let boundary = chip.ancillas.len() as u32 - bulk;
                assert_eq!(chip.links.len() as u32, 4 * bulk + 2 * boundary, "{w}x{h}");
            }
        }
    }

    #[test]
    fn ancilla_padding_counts() {
        for d in [3u32, 5, 7, 9, 17] {
            let plain = Chip::build(WindowSpec::square(d)).unwrap();
            let padded = Chip::build(WindowSpec::square(d).with_padding(Padding::Ancilla)).unwrap();
            // ancilla padding adds 2(d-1) qubits; every non-corner perimeter
            // position is then occupied
            assert_eq!(
                padded.ancillas.len() - plain.ancillas.len(),
                2 * (d as usize - 1)
            );
            let win = padded.spec.window();
            let per_side = (d as usize + 1) - 2;
            let perimeter = padded
                .ancillas
                .iter()
                .filter(|a| !win.perimeter_sides(**a).is_empty())
                .count();
            assert_eq!(perimeter, 4 * per_side);
        }
    }

    #[test]
    fn d_plus_one_extra_qubits() {
        let d3 = Chip::build(WindowSpec::square(3)).unwrap();
        let dp = Chip::build(WindowSpec::square(3).with_padding(Padding::DPlusOne)).unwrap();
        let q3 = d3.data.len() + d3.ancillas.len();
        let qp = dp.data.len() + dp.ancillas.len();
        assert_eq!(qp - q3, 4 * 3 + 2);
        assert_eq!(dp.data.len(), 16);
    }

    #[test]
    fn flip_swaps_types_keeps_geometry() {
        let spec = WindowSpec::square(5).with_padding(Padding::Ancilla);
        let a = Chip::build(spec).unwrap();
        let b = Chip::build(spec.with_flip(true)).unwrap();
        assert_eq!(a.data, b.data);
        assert_eq!(a.ancillas, b.ancillas);
        for anc in &a.ancillas {
            assert_eq!(
                native_pauli(*anc, false).opposite(),
                native_pauli(*anc, true)
            );
        }
    }

    #[test]
    fn sampling_deterministic_and_empty_at_zero() {
        let chip = Chip::build(WindowSpec::square(5)).unwrap();
        let zero = sample_defects(&chip, &DefectRates::uniform(0.0), 7);
        assert!(zero.is_empty());
        let a = sample_defects(&chip, &DefectRates::uniform(0.05), 1234);
        let b = sample_defects(&chip, &DefectRates::uniform(0.05), 1234);
        assert_eq!(a, b);
        let c = sample_defects(&chip, &DefectRates::uniform(0.05), 1235);
        assert_ne!(a, c);
    }

    #[test]
    fn sampling_mean_matches_binomial() {
        let chip = Chip::build(WindowSpec::square(17).with_padding(Padding::Ancilla)).unwrap();
        let q = 0.01;
        let n = chip.component_count() as f64;
        let trials = 1000u64;
        let mut total = 0usize;
        for seed in 0..trials {
            total += sample_defects(&chip, &DefectRates::uniform(q), seed).len();
        }
        let mean = total as f64 / trials as f64;
        let expect = n * q;
        let sigma = (n * q * (1.0 - q) / trials as f64).sqrt();
        assert!(
            (mean - expect).abs() < 3.0 * sigma,
            "mean {mean} expect {expect} sigma {sigma}"
        );
    }
}

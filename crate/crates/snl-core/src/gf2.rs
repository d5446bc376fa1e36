//! Dense GF(2) row vectors and elimination, packed 64 columns per word.

use alloc::vec;
use alloc::vec::Vec;

/// A fixed-width GF(2) row vector.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct BitRow {
    words: Vec<u64>,
    bits: usize,
}

impl BitRow {
    pub fn zeros(bits: usize) -> Self {
        BitRow {
            words: vec![0; bits.div_ceil(64)],
            bits,
        }
    }

    pub fn len(&self) -> usize {
        self.bits
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.bits);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn set(&mut self, i: usize, v: bool) {
        debug_assert!(i < self.bits);
        let mask = 1u64 << (i % 64);
        if v {
            self.words[i / 64] |= mask;
        } else {
            self.words[i / 64] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1u64 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitRow) {
        debug_assert_eq!(self.bits, other.bits);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Parity of the overlap with another row.
    pub fn dot(&self, other: &BitRow) -> bool {
        debug_assert_eq!(self.bits, other.bits);
        let mut acc = 0u64;
        for (a, b) in self.words.iter().zip(&other.words) {
            acc ^= a & b;
        }
        acc.count_ones() % 2 == 1
    }

    pub fn leading_bit(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(wi * 64 + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.bits).filter(move |&i| self.get(i))
    }
}

/// A row basis kept in row-echelon form, each pivot column owned by one row.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    rows: Vec<BitRow>,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Echelon::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `row` against the basis, returning the remainder.
    pub fn reduce(&self, mut row: BitRow) -> BitRow {
        for (r, &p) in self.rows.iter().zip(&self.pivots) {
            if row.get(p) {
                row.xor_assign(r);
            }
        }
        row
    }

    /// True if `row` lies in the span of the basis.
    pub fn contains(&self, row: &BitRow) -> bool {
        self.reduce(row.clone()).is_zero()
    }

    /// Inserts a row; returns true if it enlarged the span.
    pub fn insert(&mut self, row: BitRow) -> bool {
        let rem = self.reduce(row);
        match rem.leading_bit() {
            None => false,
            Some(p) => {
                self.rows.push(rem);
                self.pivots.push(p);
                true
            }
        }
    }

    pub fn rows(&self) -> &[BitRow] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

/// Rank of a set of rows.
pub fn rank(rows: impl IntoIterator<Item = BitRow>) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// A basis of the null space of the matrix whose rows are `rows` (vectors `v`
/// with `M v = 0`), over `bits` columns.
pub fn kernel_basis(rows: &[BitRow], bits: usize) -> Vec<BitRow> {
    let mut e = Echelon::new();
    for r in rows {
        e.insert(r.clone());
    }
    // Fully reduce so each pivot column appears in exactly one row.
    let mut reduced: Vec<BitRow> = e.rows().to_vec();
    let pivots: Vec<usize> = e.pivots().to_vec();
    for i in 0..reduced.len() {
        for j in 0..reduced.len() {
            if i != j && reduced[i].get(pivots[j]) {
                let (a, b) = if i < j {
                    let (lo, hi) = reduced.split_at_mut(j);
                    (&mut lo[i], &hi[0])
                } else {
                    let (lo, hi) = reduced.split_at_mut(i);
                    (&mut hi[0], &lo[j])
                };
                a.xor_assign(b);
            }
        }
    }
    let mut is_pivot = vec![false; bits];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let mut basis = Vec::new();
    for free in 0..bits {
        if is_pivot[free] {
            continue;
        }
        let mut v = BitRow::zeros(bits);
        v.set(free, true);
        for (r, &p) in reduced.iter().zip(&pivots) {
            if r.get(free) {
                v.set(p, true);
            }
        }
        basis.push(v);
    }
    basis
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(bits: usize, ones: &[usize]) -> BitRow {
        let mut r = BitRow::zeros(bits);
        for &i in ones {
            r.set(i, true);
        }
        r
    }

    #[test]
    fn rank_and_span() {
        let a = row(5, &[0, 1]);
        let b = row(5, &[1, 2]);
        let c = row(5, &[0, 2]); // a ^ b
        assert_eq!(rank([a.clone(), b.clone(), c.clone()]), 2);
        let mut e = Echelon::new();
        e.insert(a);
        e.insert(b);
        assert!(e.contains(&c));
        assert!(!e.contains(&row(5, &[3])));
    }

    #[test]
    fn kernel_is_orthogonal() {
        let rows = vec![row(6, &[0, 1, 2]), row(6, &[2, 3]), row(6, &[1, 4, 5])];
        let basis = kernel_basis(&rows, 6);
        assert_eq!(basis.len(), 6 - 3);
        for v in &basis {
            for r in &rows {
                assert!(!v.dot(r));
            }
        }
    }
}

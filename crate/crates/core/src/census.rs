//! The binary iteration-count table over `{0, …, 2^n − 1}²` and the
//! equivalence classes it induces.
//!
//! Quadrants are numbered the Cartesian way: 1st = upper-right,
//! 2nd = upper-left, 3rd = lower-left, 4th = lower-right. Rows are indexed by
//! the first element of the ordered pair.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::dynamics::iteration_count;
use crate::{Base, CvtError, Nat, Result};

pub const MAX_TABLE_N: u32 = 12;

fn check_n(n: u32) -> Result<()> {
    if (1..=MAX_TABLE_N).contains(&n) {
        Ok(())
    } else {
        Err(CvtError::TableSize(n))
    }
}

/// Dense row-major `2^n × 2^n` matrix of binary iteration counts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IterationTable {
    n: u32,
    side: usize,
    entries: Vec<u8>,
}

impl IterationTable {
    /// Wraps externally produced entries (e.g. a parsed CSV file).
    pub fn from_rows(n: u32, rows: Vec<Vec<u8>>) -> Result<Self> {
        check_n(n)?;
        let side = 1usize << n;
        if rows.len() != side || rows.iter().any(|r| r.len() != side) {
            return Err(CvtError::InvalidArgument(format!(
                "expected a {side}×{side} table for n = {n}"
            )));
        }
        Ok(IterationTable {
            n,
            side,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn side(&self) -> usize {
        self.side
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize) -> u8 {
        self.entries[a * self.side + b]
    }

    pub fn set(&mut self, a: usize, b: usize, value: u8) {
        self.entries[a * self.side + b] = value;
    }

    pub fn row(&self, a: usize) -> &[u8] {
        &self.entries[a * self.side..(a + 1) * self.side]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[u8]> {
        self.entries.chunks(self.side)
    }

    pub fn entries(&self) -> &[u8] {
        &self.entries
    }

    pub fn max_entry(&self) -> u8 {
        self.entries.iter().copied().max().unwrap_or(0)
    }

    /// Whether the `size × size` blocks at `(r1, c1)` and `(r2, c2)` agree.
    pub fn blocks_equal(
        &self,
        (r1, c1): (usize, usize),
        (r2, c2): (usize, usize),
        size: usize,
    ) -> bool {
        (0..size).all(|i| {
            let a = &self.row(r1 + i)[c1..c1 + size];
            let b = &self.row(r2 + i)[c2..c2 + size];
            a == b
        })
    }

    /// The upper-left `2^(n-1)` block as a table of its own.
    pub fn upper_left(&self) -> Result<IterationTable> {
        let half = self.side / 2;
        let rows = (0..half).map(|a| self.row(a)[..half].to_vec()).collect();
        IterationTable::from_rows(self.n - 1, rows)
    }
}

/// `entries[a][b] = iteration_count(a, b, 2)` for all `a, b < 2^n`.
pub fn build_table(n: u32) -> Result<IterationTable> {
    check_n(n)?;
    let side = 1usize << n;
    let mut entries = vec![0u8; side * side];
    entries
        .par_chunks_mut(side)
        .enumerate()
        .try_for_each(|(a, row)| -> Result<()> {
            for (b, cell) in row.iter_mut().enumerate() {
                let count = iteration_count(a as Nat, b as Nat, Base::BINARY)?;
                *cell = count as u8;
            }
            Ok(())
        })?;
    Ok(IterationTable { n, side, entries })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassInfo {
    pub cardinality: u64,
    /// Lexicographically smallest member.
    pub representative: (Nat, Nat),
}

/// Partition of `{0, …, 2^n − 1}²` by iteration count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCensus {
    pub n: u32,
    pub classes: BTreeMap<usize, ClassInfo>,
}

impl ClassCensus {
    pub fn from_table(t: &IterationTable) -> Self {
        let mut classes: BTreeMap<usize, ClassInfo> = BTreeMap::new();
        // row-major scan visits pairs in lexicographic order
        for (a, row) in t.rows().enumerate() {
            for (b, &k) in row.iter().enumerate() {
                classes
                    .entry(k as usize)
                    .and_modify(|c| c.cardinality += 1)
                    .or_insert(ClassInfo {
                        cardinality: 1,
                        representative: (a as Nat, b as Nat),
                    });
            }
        }
        ClassCensus { n: t.n, classes }
    }

    pub fn total(&self) -> u64 {
        self.classes.values().map(|c| c.cardinality).sum()
    }

    pub fn cardinality(&self, k: usize) -> u64 {
        self.classes.get(&k).map_or(0, |c| c.cardinality)
    }

    /// Cardinalities in increasing order of iteration count.
    pub fn cardinalities(&self) -> Vec<u64> {
        self.classes.values().map(|c| c.cardinality).collect()
    }

    /// Keys are exactly `1..=m` for some `m`.
    pub fn keys_contiguous(&self) -> bool {
        self.classes.keys().copied().eq(1..=self.classes.len())
    }
}

pub fn class_census(n: u32) -> Result<ClassCensus> {
    Ok(ClassCensus::from_table(&build_table(n)?))
}

pub fn check_symmetry(t: &IterationTable) -> bool {
    (0..t.side).all(|a| (0..a).all(|b| t.get(a, b) == t.get(b, a)))
}

/// One off-diagonal comparison inside a block.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockComparison {
    pub level: u32,
    /// Top-left corner of the enclosing block.
    pub row: usize,
    pub col: usize,
    /// Side of the enclosing block; the compared sub-blocks are half this.
    pub size: usize,
    pub equal: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadrantReport {
    pub n: u32,
    pub depth: u32,
    pub pairs_checked: Vec<BlockComparison>,
}

impl QuadrantReport {
    pub fn all_equal(&self) -> bool {
        self.pairs_checked.iter().all(|c| c.equal)
    }

    pub fn at_level(&self, level: u32) -> impl Iterator<Item = &BlockComparison> {
        self.pairs_checked.iter().filter(move |c| c.level == level)
    }
}

/// Compares the upper-right and lower-left sub-blocks of every block at
/// levels `0..=depth`, where level `d` tiles the table with blocks of side
/// `2^(n-d)`.
pub fn check_quadrant_self_similarity(t: &IterationTable, depth: u32) -> Result<QuadrantReport> {
    if depth >= t.n {
        return Err(CvtError::InvalidArgument(format!(
            "quadrant depth {depth} exceeds n - 1 = {}",
            t.n - 1
        )));
    }
    let mut pairs_checked = Vec::new();
    for level in 0..=depth {
        let size = t.side >> level;
        let half = size / 2;
        for row in (0..t.side).step_by(size) {
            for col in (0..t.side).step_by(size) {
                let equal = t.blocks_equal((row, col + half), (row + half, col), half);
                pairs_checked.push(BlockComparison {
                    level,
                    row,
                    col,
                    size,
                    equal,
                });
            }
        }
    }
    Ok(QuadrantReport {
        n: t.n,
        depth,
        pairs_checked,
    })
}

/// Pairs whose iteration count is exactly `n`.
pub fn count_max_iteration_pairs(n: u32) -> Result<u64> {
    Ok(class_census(n)?.cardinality(n as usize))
}

pub fn count_one_iteration_pairs(n: u32) -> Result<u64> {
    Ok(class_census(n)?.cardinality(1))
}

/// `3 · 2^(n-1)`, the claimed size of the top class for `n ≥ 3`.
pub fn max_iteration_formula(n: u32) -> u64 {
    3 * (1u64 << (n - 1))
}

/// `3^n + 2^n − 1`, the claimed size of the one-iteration class.
pub fn one_iteration_formula(n: u32) -> u64 {
    3u64.pow(n) + (1u64 << n) - 1
}

/// Whether the 2nd (upper-left) quadrant of `build_table(n)` avoids the
/// value `n`.
pub fn check_no_max_in_quadrant(n: u32) -> Result<bool> {
    if n < 2 {
        return Err(CvtError::InvalidArgument(format!(
            "quadrant check needs n >= 2, got {n}"
        )));
    }
    let t = build_table(n)?;
    let half = t.side / 2;
    Ok((0..half).all(|a| t.row(a)[..half].iter().all(|&k| u32::from(k) != n)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_examples() {
        let t5 = build_table(5).unwrap();
        assert_eq!(t5.get(21, 27), 5);
        assert_eq!(t5.get(1, 8), 1);
        let t1 = build_table(1).unwrap();
        assert_eq!(t1.entries(), &[1, 1, 1, 1]);
    }

    #[test]
    fn table_size_guard() {
        assert_eq!(build_table(0), Err(CvtError::TableSize(0)));
        assert_eq!(build_table(13), Err(CvtError::TableSize(13)));
        assert!(class_census(13).is_err());
    }

    #[test]
    fn first_row_is_all_ones() {
        let t = build_table(6).unwrap();
        assert!(t.row(0).iter().all(|&k| k == 1));
    }

    #[test]
    fn census_small_n() {
        let c = class_census(3).unwrap();
        assert_eq!(c.cardinalities(), [34, 18, 12]);
        let c = class_census(1).unwrap();
        assert_eq!(c.cardinalities(), [4]);
        assert_eq!(c.classes[&1].representative, (0, 0));
    }

    #[test]
    fn census_n2_members() {
        let t = build_table(2).unwrap();
        let c = ClassCensus::from_table(&t);
        assert_eq!(c.cardinalities(), [12, 4]);
        let members: Vec<(usize, usize)> = (0..4)
            .flat_map(|a| (0..4).map(move |b| (a, b)))
            .filter(|&(a, b)| t.get(a, b) == 2)
            .collect();
        assert_eq!(members, [(1, 3), (2, 3), (3, 1), (3, 2)]);
    }

    #[test]
    fn representatives_are_lexicographic_minima() {
        let c = class_census(5).unwrap();
        let reps: Vec<_> = c.classes.values().map(|c| c.representative).collect();
        assert_eq!(reps, [(0, 0), (1, 3), (1, 7), (1, 15), (1, 31)]);
        assert!(c.keys_contiguous());
        assert_eq!(c.total(), 1024);
    }

    #[test]
    fn symmetry_and_negative_control() {
        assert!(check_symmetry(&build_table(5).unwrap()));
        assert!(check_symmetry(&build_table(1).unwrap()));
        let mut t = build_table(5).unwrap();
        let v = t.get(3, 17);
        t.set(3, 17, v + 1);
        assert!(!check_symmetry(&t));
    }

    #[test]
    fn quadrant_comparisons() {
        let t = build_table(5).unwrap();
        let r = check_quadrant_self_similarity(&t, 2).unwrap();
        assert_eq!(r.pairs_checked.len(), 1 + 4 + 16);
        assert!(r.all_equal());

        let r = check_quadrant_self_similarity(&build_table(1).unwrap(), 0).unwrap();
        assert!(r.all_equal());
        assert!(check_quadrant_self_similarity(&t, 5).is_err());

        // the diagonal blocks do not match, which fixes the numbering
        assert_eq!(t.get(1, 3), 2);
        assert_eq!(t.get(17, 19), 3);
        assert!(!t.blocks_equal((0, 0), (16, 16), 16));
    }

    #[test]
    fn corrupted_off_diagonal_block_is_detected() {
        let mut t = build_table(4).unwrap();
        t.set(1, 9, 4);
        let r = check_quadrant_self_similarity(&t, 1).unwrap();
        assert!(!r.all_equal());
        let bad: Vec<_> = r.pairs_checked.iter().filter(|c| !c.equal).collect();
        assert_eq!(bad.len(), 1);
        assert_eq!((bad[0].level, bad[0].row, bad[0].col), (0, 0, 0));
    }

    #[test]
    fn counting_examples() {
        assert_eq!(count_max_iteration_pairs(3), Ok(12));
        assert_eq!(count_max_iteration_pairs(4), Ok(24));
        assert_eq!(count_max_iteration_pairs(5), Ok(48));
        assert_eq!(count_one_iteration_pairs(1), Ok(4));
        assert_eq!(count_one_iteration_pairs(4), Ok(96));
        assert_eq!(count_one_iteration_pairs(5), Ok(274));
        assert_eq!(max_iteration_formula(5), 48);
        assert_eq!(one_iteration_formula(4), 96);
    }

    #[test]
    fn no_max_in_second_quadrant() {
        for n in 2..=6 {
            assert_eq!(check_no_max_in_quadrant(n), Ok(true));
        }
        assert!(check_no_max_in_quadrant(1).is_err());
        // the upper-left block of the n = 5 table is the n = 4 table
        let t5 = build_table(5).unwrap();
        let t4 = build_table(4).unwrap();
        assert_eq!(t5.upper_left().unwrap(), t4);
        assert_eq!(t4.max_entry(), 4);
    }

    #[test]
    fn from_rows_validates_shape() {
        assert!(IterationTable::from_rows(1, vec![vec![1, 1], vec![1]]).is_err());
        let t = IterationTable::from_rows(1, vec![vec![1, 1], vec![1, 1]]).unwrap();
        assert_eq!(t, build_table(1).unwrap());
    }
}

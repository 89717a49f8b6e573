use std::collections::BTreeMap;

use crate::boolcomb::Subset;

/// Nonnegative integers indexed by `(degree, subset)`; zeros are not stored.
/// Used for cohomology dimensions, Betti and Bass numbers and Ext tables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GradedTable(BTreeMap<(i64, Subset), usize>);

pub type BettiTable = GradedTable;
pub type BassTable = GradedTable;

impl GradedTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, i: i64, f: Subset, v: usize) {
        if v == 0 {
            self.0.remove(&(i, f));
        } else {
            self.0.insert((i, f), v);
        }
    }

    pub fn add(&mut self, i: i64, f: Subset, v: usize) {
        let cur = self.get(i, f);
        self.set(i, f, cur + v);
    }

    pub fn get(&self, i: i64, f: Subset) -> usize {
        self.0.get(&(i, f)).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, Subset, usize)> + '_ {
        self.0.iter().map(|(&(i, f), &v)| (i, f, v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Smallest and largest degree with a nonzero entry.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let lo = self.0.keys().map(|k| k.0).min()?;
        let hi = self.0.keys().map(|k| k.0).max()?;
        Some((lo, hi))
    }

    /// Sum over subsets at one degree.
    pub fn total(&self, i: i64) -> usize {
        self.iter().filter(|e| e.0 == i).map(|e| e.2).sum()
    }

    /// Same entries with every degree moved by `delta`.
    pub fn shifted(&self, delta: i64) -> GradedTable {
        self.iter().map(|(i, f, v)| (i + delta, f, v)).collect()
    }

    /// Same entries with subsets complemented in `[n]`.
    pub fn complemented(&self, n: usize) -> GradedTable {
        self.iter().map(|(i, f, v)| (i, f.complement(n), v)).collect()
    }
}

impl FromIterator<(i64, Subset, usize)> for GradedTable {
    fn from_iter<T: IntoIterator<Item = (i64, Subset, usize)>>(iter: T) -> Self {
        let mut t = GradedTable::new();
        for (i, f, v) in iter {
            t.add(i, f, v);
        }
        t
    }
}

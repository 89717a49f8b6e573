use std::fmt;

/// Largest supported number of variables.
pub const MAX_N: usize = 20;

/// A subset of the variable set, as a bitmask. Bit `i` stands for the
/// variable `x_{i+1}`; text formats print 1-based vertex numbers.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn full(n: usize) -> Subset {
        assert!(n <= MAX_N, "n = {n} exceeds {MAX_N}");
        Subset(((1u64 << n) - 1) as u32)
    }

    /// From 0-based variable indices.
    pub fn from_indices(indices: &[usize]) -> Subset {
        Subset(indices.iter().fold(0u32, |acc, &i| acc | (1 << i)))
    }

    /// From 1-based vertex numbers.
    pub fn from_vertices(vertices: &[usize]) -> Subset {
        Subset(vertices.iter().fold(0u32, |acc, &v| {
            assert!(v >= 1, "vertices are numbered from 1");
            acc | (1 << (v - 1))
        }))
    }

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1 << i)
    }

    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn minus(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn complement(self, n: usize) -> Subset {
        Subset(!self.0 & Subset::full(n).0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn fits(self, n: usize) -> bool {
        (self.0 as u64) < (1u64 << n)
    }

    /// 0-based indices in ascending order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..32).filter(move |i| bits >> i & 1 == 1)
    }

    /// 1-based vertex numbers in ascending order.
    pub fn vertices(self) -> Vec<usize> {
        self.indices().map(|i| i + 1).collect()
    }

    /// All subsets of `[n]`, ascending by bitmask.
    pub fn all(n: usize) -> impl Iterator<Item = Subset> {
        assert!(n <= MAX_N);
        (0..1u32 << n).map(Subset)
    }

    /// All subsets of `self`, ascending by bitmask.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full { None } else { Some((cur.wrapping_sub(full)) & full) };
            Some(Subset(cur))
        })
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.vertices().iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// `#{i ∈ F : i < j}`; `j` need not lie in `F`.
pub fn alpha(j: usize, f: Subset) -> usize {
    (f.0 & ((1u32 << j) - 1)).count_ones() as usize
}

/// `#{(a, b) : a > b, a ∈ A, b ∈ B}`.
pub fn alpha_pair(a: Subset, b: Subset) -> usize {
    a.indices().map(|x| alpha(x, b)).sum()
}

/// 1 when `l ≡ 1, 2 (mod 4)`, else 0.
pub fn beta_sign(l: i64) -> u8 {
    match l.rem_euclid(4) {
        1 | 2 => 1,
        _ => 0,
    }
}

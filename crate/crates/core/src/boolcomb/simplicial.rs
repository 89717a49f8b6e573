use std::collections::BTreeMap;

use rand::Rng;

use crate::boolcomb::subset::{Subset, MAX_N};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};

/// Dimension vector indexed by an integer degree; zero entries are not stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GradedDims(BTreeMap<i64, usize>);

impl GradedDims {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn set(&mut self, degree: i64, dim: usize) {
        if dim == 0 {
            self.0.remove(&degree);
        } else {
            self.0.insert(degree, dim);
        }
    }

    pub fn get(&self, degree: i64) -> usize {
        self.0.get(&degree).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.0.iter().map(|(&d, &v)| (d, v))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
}

impl FromIterator<(i64, usize)> for GradedDims {
    fn from_iter<T: IntoIterator<Item = (i64, usize)>>(iter: T) -> Self {
        let mut g = GradedDims::new();
        for (d, v) in iter {
            g.set(d, v);
        }
        g
    }
}

/// A family of faces on `[n]`, stored as a membership bitmap over all `2^n`
/// subsets. A valid simplicial complex is downward closed and contains `∅`;
/// the void family (no faces at all) is representable so it can be reported.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    faces: Vec<bool>,
}

impl std::fmt::Debug for SimplicialComplex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SimplicialComplex(n={}, facets=", self.n)?;
        f.debug_list().entries(self.facets()).finish()?;
        write!(f, ")")
    }
}

impl SimplicialComplex {
    pub fn void(n: usize) -> Self {
        assert!(n <= MAX_N, "n = {n} exceeds {MAX_N}");
        SimplicialComplex { n, faces: vec![false; 1 << n] }
    }

    /// `{∅}`.
    pub fn empty_face(n: usize) -> Self {
        let mut c = Self::void(n);
        c.faces[0] = true;
        c
    }

    pub fn simplex(n: usize) -> Self {
        SimplicialComplex { n, faces: vec![true; 1 << n] }
    }

    /// Downward closure of the given facets (plus `∅`).
    pub fn from_facets(n: usize, facets: &[Subset]) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::Invalid(format!("n = {n} exceeds {MAX_N}")));
        }
        let mut c = Self::empty_face(n);
        for &f in facets {
            if !f.fits(n) {
                return Err(Error::Invalid(format!("facet {f} is not a subset of [{n}]")));
            }
            if c.faces[f.index()] {
                continue;
            }
            for g in f.subsets() {
                c.faces[g.index()] = true;
            }
        }
        Ok(c)
    }

    /// Builds from an explicit face list, checking downward closure.
    pub fn from_faces(n: usize, faces: &[Subset]) -> Result<Self> {
        let mut c = Self::void(n);
        for &f in faces {
            if !f.fits(n) {
                return Err(Error::Invalid(format!("face {f} is not a subset of [{n}]")));
            }
            c.faces[f.index()] = true;
        }
        for f in c.faces() {
            for i in f.indices() {
                if !c.contains(f.without(i)) {
                    return Err(Error::Invalid(format!("face family is not downward closed at {f}")));
                }
            }
        }
        Ok(c)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn contains(&self, f: Subset) -> bool {
        f.fits(self.n) && self.faces[f.index()]
    }

    pub fn is_void(&self) -> bool {
        !self.faces[0]
    }

    /// Faces ascending by bitmask.
    pub fn faces(&self) -> impl Iterator<Item = Subset> + '_ {
        Subset::all(self.n).filter(move |f| self.faces[f.index()])
    }

    pub fn num_faces(&self) -> usize {
        self.faces.iter().filter(|&&b| b).count()
    }

    /// Inclusion-maximal faces, sorted by `(|F|, bits)`.
    pub fn facets(&self) -> Vec<Subset> {
        let mut out: Vec<Subset> = self
            .faces()
            .filter(|f| (0..self.n).all(|i| f.contains(i) || !self.contains(f.with(i))))
            .collect();
        out.sort_by_key(|f| (f.len(), f.bits()));
        out
    }

    /// Largest face cardinality minus one; `None` for the void family.
    pub fn dim(&self) -> Option<i64> {
        self.faces().map(|f| f.len() as i64 - 1).max()
    }

    /// `{F : F^c ∉ Δ}` without the non-void check.
    pub fn dual_family(&self) -> SimplicialComplex {
        let full = Subset::full(self.n);
        let mut d = Self::void(self.n);
        for f in Subset::all(self.n) {
            d.faces[f.index()] = !self.faces[f.complement(self.n).index()];
        }
        debug_assert_eq!(d.contains(Subset::EMPTY), !self.contains(full));
        d
    }

    /// Eagon-Reiner Alexander dual `Δ* = {F : F^c ∉ Δ}`.
    pub fn alexander_dual(&self) -> Result<SimplicialComplex> {
        if self.is_void() {
            return Err(Error::VoidComplex("alexander_dual needs a non-void complex"));
        }
        if self.contains(Subset::full(self.n)) {
            return Err(Error::VoidDual);
        }
        Ok(self.dual_family())
    }

    /// `lk_Δ F = {G : G ∩ F = ∅, F ∪ G ∈ Δ}`; void when `F ∉ Δ`.
    pub fn link(&self, f: Subset) -> SimplicialComplex {
        let mut l = Self::void(self.n);
        if !self.contains(f) {
            return l;
        }
        for g in f.complement(self.n).subsets() {
            if self.faces[g.union(f).index()] {
                l.faces[g.index()] = true;
            }
        }
        l
    }

    /// Minimal non-faces (the minimal generators of the Stanley-Reisner
    /// ideal), sorted by `(|F|, bits)`.
    pub fn minimal_nonfaces(&self) -> Vec<Subset> {
        let mut out: Vec<Subset> = Subset::all(self.n)
            .filter(|&f| !self.faces[f.index()] && f.indices().all(|i| self.faces[f.without(i).index()]))
            .collect();
        out.sort_by_key(|f| (f.len(), f.bits()));
        out
    }

    /// `Σ_F (-1)^{|F|-1}` over faces, including `∅` (contributing -1).
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.faces().map(|f| if f.len() % 2 == 1 { 1 } else { -1 }).sum()
    }

    /// Reduced simplicial homology over `field`, from the augmented chain
    /// complex. `{∅}` has `H̃_{-1} = k`; the void family has no homology.
    pub fn reduced_homology<K: Field>(&self, field: &K) -> GradedDims {
        if self.is_void() {
            return GradedDims::new();
        }
        // chains[d+1] = faces of dimension d, d ≥ -1
        let mut chains: Vec<Vec<Subset>> = vec![Vec::new(); self.n + 1];
        for f in self.faces() {
            chains[f.len()].push(f);
        }
        let position: Vec<BTreeMap<u32, usize>> = chains
            .iter()
            .map(|c| c.iter().enumerate().map(|(k, f)| (f.bits(), k)).collect())
            .collect();
        // rank of ∂: C_size → C_{size-1}, for size = 1..=n
        let mut ranks = vec![0usize; self.n + 2];
        for size in 1..=self.n {
            let (src, dst) = (&chains[size], &chains[size - 1]);
            if src.is_empty() || dst.is_empty() {
                continue;
            }
            let mut m = Matrix::zeros(field, dst.len(), src.len());
            for (c, f) in src.iter().enumerate() {
                for (k, i) in f.indices().enumerate() {
                    let r = position[size - 1][&f.without(i).bits()];
                    m.set(r, c, field.sign(k as i64));
                }
            }
            ranks[size] = m.rank();
        }
        let mut out = GradedDims::new();
        for size in 0..=self.n {
            let d = size as i64 - 1;
            let dim = chains[size].len() - ranks[size] - ranks[size + 1];
            out.set(d, dim);
        }
        out
    }

    /// Every simplicial complex on `[n]` (non-void, so containing `∅`),
    /// including the full simplex. Only sensible for small `n`.
    pub fn enumerate_all(n: usize) -> Vec<SimplicialComplex> {
        assert!(n <= 6, "exhaustive enumeration is limited to n ≤ 6");
        let mut order: Vec<Subset> = Subset::all(n).filter(|f| !f.is_empty()).collect();
        order.sort_by_key(|f| (f.len(), f.bits()));
        let mut out = Vec::new();
        let mut cur = Self::empty_face(n);
        fn rec(k: usize, order: &[Subset], cur: &mut SimplicialComplex, out: &mut Vec<SimplicialComplex>) {
            if k == order.len() {
                out.push(cur.clone());
                return;
            }
            let f = order[k];
            rec(k + 1, order, cur, out);
            if f.indices().all(|i| cur.faces[f.without(i).index()]) {
                cur.faces[f.index()] = true;
                rec(k + 1, order, cur, out);
                cur.faces[f.index()] = false;
            }
        }
        rec(0, &order, &mut cur, &mut out);
        out
    }

    /// Downward closure of a handful of random facets.
    pub fn random<R: Rng>(n: usize, rng: &mut R) -> SimplicialComplex {
        let count = rng.gen_range(1..=n.max(1) + 1);
        let facets: Vec<Subset> = (0..count)
            .map(|_| Subset(rng.gen_range(0..(1u32 << n))))
            .collect();
        Self::from_facets(n, &facets).expect("random facets fit in [n]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, Rationals};

    fn v(xs: &[usize]) -> Subset {
        Subset::from_vertices(xs)
    }

    fn two_points() -> SimplicialComplex {
        SimplicialComplex::from_facets(2, &[v(&[1]), v(&[2])]).unwrap()
    }

    fn path() -> SimplicialComplex {
        SimplicialComplex::from_facets(3, &[v(&[1, 2]), v(&[2, 3])]).unwrap()
    }

    fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::from_facets(3, &[v(&[1, 2]), v(&[2, 3]), v(&[1, 3])]).unwrap()
    }

    /// Definition scan, written independently of `dual_family`.
    fn dual_by_definition(d: &SimplicialComplex) -> Vec<Subset> {
        let n = d.n();
        let full = (1u32 << n) - 1;
        (0..1u32 << n).filter(|&b| !d.contains(Subset(full ^ b))).map(Subset).collect()
    }

    #[test]
    fn alexander_dual_examples() {
        let d = two_points().alexander_dual().unwrap();
        assert_eq!(d.faces().collect::<Vec<_>>(), vec![Subset::EMPTY]);
        assert_eq!(dual_by_definition(&two_points()), vec![Subset::EMPTY]);

        let d = path().alexander_dual().unwrap();
        assert_eq!(d.faces().collect::<Vec<_>>(), vec![Subset::EMPTY, v(&[2])]);
        assert_eq!(dual_by_definition(&path()), vec![Subset::EMPTY, v(&[2])]);

        // boundary of the 2-simplex: dual is {∅}, and dualizing again gives it back
        let d = hollow_triangle().alexander_dual().unwrap();
        assert_eq!(d, SimplicialComplex::empty_face(3));
        assert_eq!(d.alexander_dual().unwrap(), hollow_triangle());
    }

    #[test]
    fn alexander_dual_rejects_top_face() {
        assert!(matches!(SimplicialComplex::simplex(3).alexander_dual(), Err(Error::VoidDual)));
        assert!(matches!(SimplicialComplex::void(3).alexander_dual(), Err(Error::VoidComplex(_))));
    }

    #[test]
    fn alexander_dual_involution_exhaustive() {
        for n in 0..=4 {
            for d in SimplicialComplex::enumerate_all(n) {
                if d.contains(Subset::full(n)) {
                    continue;
                }
                assert_eq!(d.alexander_dual().unwrap().alexander_dual().unwrap(), d);
            }
        }
    }

    #[test]
    fn link_examples() {
        assert_eq!(path().link(Subset::EMPTY), path());
        let l = path().link(v(&[2]));
        assert_eq!(l.faces().collect::<Vec<_>>(), vec![Subset::EMPTY, v(&[1]), v(&[3])]);
        assert_eq!(path().link(v(&[1, 2])), SimplicialComplex::empty_face(3));
        assert!(path().link(v(&[1, 3])).is_void());
    }

    #[test]
    fn minimal_nonfaces_examples() {
        assert_eq!(two_points().minimal_nonfaces(), vec![v(&[1, 2])]);
        assert_eq!(path().minimal_nonfaces(), vec![v(&[1, 3])]);
        assert!(SimplicialComplex::simplex(3).minimal_nonfaces().is_empty());
    }

    #[test]
    fn reduced_homology_examples() {
        let q = Rationals;
        assert_eq!(two_points().reduced_homology(&q), [(0, 1)].into_iter().collect());
        assert_eq!(SimplicialComplex::empty_face(2).reduced_homology(&q), [(-1, 1)].into_iter().collect());
        assert_eq!(hollow_triangle().reduced_homology(&q), [(1, 1)].into_iter().collect());
        assert!(SimplicialComplex::void(2).reduced_homology(&q).is_zero());
        assert!(SimplicialComplex::simplex(3).reduced_homology(&q).is_zero());
    }

    #[test]
    fn euler_characteristic_matches_homology() {
        let k = PrimeField::new(2).unwrap();
        for n in 0..=4 {
            for d in SimplicialComplex::enumerate_all(n) {
                let h = d.reduced_homology(&k);
                let chi: i64 = h.iter().map(|(i, v)| if i.rem_euclid(2) == 0 { v as i64 } else { -(v as i64) }).sum();
                assert_eq!(chi, d.reduced_euler_characteristic(), "{d:?}");
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        // non-void complexes on n vertices = antichains of 2^[n] minus the empty one
        let counts: Vec<usize> = (0..=4).map(|n| SimplicialComplex::enumerate_all(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 19, 167]);
    }

    #[test]
    fn from_faces_checks_closure() {
        assert!(SimplicialComplex::from_faces(2, &[Subset::EMPTY, v(&[1, 2])]).is_err());
        assert!(SimplicialComplex::from_faces(2, &[Subset::EMPTY, v(&[1])]).is_ok());
    }
}

use crate::boolcomb::{SimplicialComplex, Subset, MAX_N};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};

/// A squarefree module over `k[x_1..x_n]`: a vector space at every subset
/// `F ⊆ [n]` and, for `i ∉ F`, the multiplication map
/// `x_i: M_F → M_{F∪{i}}`, with all squares of the cube commuting.
///
/// The map for `(F, i)` is stored at index `F·n + i`; slots with `i ∈ F` hold
/// an empty matrix and are never read.
#[derive(Clone, PartialEq)]
pub struct SqModule<K: Field> {
    field: K,
    n: usize,
    dims: Vec<usize>,
    maps: Vec<Matrix<K>>,
}

impl<K: Field> std::fmt::Debug for SqModule<K> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "SqModule(n={}, field={}, dims={{", self.n, self.field.tag())?;
        let mut first = true;
        for s in Subset::all(self.n) {
            if self.dim(s) > 0 {
                if !first {
                    write!(f, ", ")?;
                }
                first = false;
                write!(f, "{s}:{}", self.dim(s))?;
            }
        }
        write!(f, "}})")
    }
}

impl<K: Field> SqModule<K> {
    /// Builds and validates a module. `map(F, i)` is asked only for `i ∉ F`
    /// and must have shape `dims[F∪{i}] × dims[F]`.
    pub fn new(field: &K, n: usize, dims: Vec<usize>, mut map: impl FnMut(Subset, usize) -> Matrix<K>) -> Result<Self> {
        if n > MAX_N {
            return Err(Error::Invalid(format!("n = {n} exceeds {MAX_N}")));
        }
        if dims.len() != 1 << n {
            return Err(Error::Invalid(format!("expected {} dims, got {}", 1 << n, dims.len())));
        }
        let mut maps = Vec::with_capacity((1 << n) * n);
        for f in Subset::all(n) {
            for i in 0..n {
                if f.contains(i) {
                    maps.push(Matrix::zeros(field, 0, 0));
                } else {
                    maps.push(map(f, i));
                }
            }
        }
        let m = SqModule { field: field.clone(), n, dims, maps };
        m.validate()?;
        Ok(m)
    }

    /// Like [`SqModule::new`] without the commutativity check; used where
    /// the result is commutative by construction.
    pub(crate) fn new_unchecked(field: &K, n: usize, dims: Vec<usize>, mut map: impl FnMut(Subset, usize) -> Matrix<K>) -> Self {
        let mut maps = Vec::with_capacity((1 << n) * n);
        for f in Subset::all(n) {
            for i in 0..n {
                if f.contains(i) {
                    maps.push(Matrix::zeros(field, 0, 0));
                } else {
                    maps.push(map(f, i));
                }
            }
        }
        let m = SqModule { field: field.clone(), n, dims, maps };
        debug_assert!(m.validate().is_ok(), "{:?}", m.validate());
        m
    }

    /// Checks shapes and commutativity of every square.
    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        for f in Subset::all(n) {
            for i in (0..n).filter(|&i| !f.contains(i)) {
                let m = self.map(f, i);
                let want = (self.dim(f.with(i)), self.dim(f));
                if m.shape() != want {
                    return Err(Error::Invalid(format!(
                        "map ({f}, x{}) has shape {:?}, expected {:?}",
                        i + 1,
                        m.shape(),
                        want
                    )));
                }
            }
        }
        for f in Subset::all(n) {
            for i in 0..n {
                for j in i + 1..n {
                    if f.contains(i) || f.contains(j) {
                        continue;
                    }
                    let a = self.map(f.with(i), j).mul(self.map(f, i));
                    let b = self.map(f.with(j), i).mul(self.map(f, j));
                    if a != b {
                        return Err(Error::Invalid(format!(
                            "x{} x{} ≠ x{} x{} on the component at {f}",
                            j + 1,
                            i + 1,
                            i + 1,
                            j + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn zero(field: &K, n: usize) -> Self {
        Self::new_unchecked(field, n, vec![0; 1 << n], |_, _| Matrix::zeros(field, 0, 0))
    }

    /// Module with the given dims where a map is the identity when both ends
    /// are one-dimensional and `keep(F, F∪{i})` holds, zero otherwise.
    fn rank_one_family(field: &K, n: usize, support: impl Fn(Subset) -> bool, keep: impl Fn(Subset, Subset) -> bool) -> Self {
        let dims: Vec<usize> = Subset::all(n).map(|f| support(f) as usize).collect();
        let d = dims.clone();
        Self::new_unchecked(field, n, dims, |f, i| {
            let g = f.with(i);
            let (r, c) = (d[g.index()], d[f.index()]);
            if r == 1 && c == 1 && keep(f, g) {
                Matrix::identity(field, 1)
            } else {
                Matrix::zeros(field, r, c)
            }
        })
    }

    /// `S(-F)`.
    pub fn free_module(field: &K, n: usize, f: Subset) -> Self {
        Self::rank_one_family(field, n, |g| f.is_subset_of(g), |_, _| true)
    }

    /// `S/P_F`, where `P_F = (x_i | i ∉ F)`.
    pub fn quotient_prime(field: &K, n: usize, f: Subset) -> Self {
        Self::rank_one_family(field, n, |g| g.is_subset_of(f), |_, _| true)
    }

    /// `(S/P_F)(-F)`: one copy of `k` at `F`.
    pub fn simple_module(field: &K, n: usize, f: Subset) -> Self {
        Self::rank_one_family(field, n, |g| g == f, |_, _| false)
    }

    /// `S/I_Δ`.
    pub fn stanley_reisner_ring(field: &K, delta: &SimplicialComplex) -> Self {
        Self::rank_one_family(field, delta.n(), |g| delta.contains(g), |_, _| true)
    }

    /// `I_Δ`.
    pub fn stanley_reisner_ideal(field: &K, delta: &SimplicialComplex) -> Self {
        Self::rank_one_family(field, delta.n(), |g| !delta.contains(g), |_, _| true)
    }

    /// Blockwise direct sum in the given order.
    pub fn direct_sum(field: &K, n: usize, parts: &[&SqModule<K>]) -> Result<Self> {
        for p in parts {
            if p.n != n || p.field != *field {
                return Err(Error::Invalid(format!(
                    "direct sum of modules over ({}, n={}) and ({}, n={n})",
                    p.field.tag(),
                    p.n,
                    field.tag()
                )));
            }
        }
        let dims: Vec<usize> = Subset::all(n).map(|f| parts.iter().map(|p| p.dim(f)).sum()).collect();
        Ok(Self::new_unchecked(field, n, dims, |f, i| {
            let blocks: Vec<&Matrix<K>> = parts.iter().map(|p| p.map(f, i)).collect();
            Matrix::block_diag(field, &blocks)
        }))
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self, f: Subset) -> usize {
        self.dims[f.index()]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// Multiplication by `x_i` from `M_F` (`i ∉ F`).
    pub fn map(&self, f: Subset, i: usize) -> &Matrix<K> {
        debug_assert!(!f.contains(i));
        &self.maps[f.index() * self.n + i]
    }

    /// Multiplication by `x^{G∖F}: M_F → M_G` for `F ⊆ G`, adding variables
    /// in ascending order (any order gives the same result).
    pub fn path(&self, f: Subset, g: Subset) -> Matrix<K> {
        debug_assert!(f.is_subset_of(g));
        let mut acc = Matrix::identity(&self.field, self.dim(f));
        let mut cur = f;
        for i in g.minus(f).indices() {
            acc = self.map(cur, i).mul(&acc);
            cur = cur.with(i);
        }
        acc
    }

    /// Support of the module, as the subsets with nonzero component.
    pub fn support(&self) -> impl Iterator<Item = Subset> + '_ {
        Subset::all(self.n).filter(move |&f| self.dim(f) > 0)
    }

    /// `dim M_a`. For a squarefree module, `a ∈ N^n` and the answer is the
    /// dimension at `supp(a)`. With `straight`, `a ∈ Z^n` and the dimension
    /// is read at `{i : a_i > 0}`.
    pub fn graded_dim(&self, a: &[i64], straight: bool) -> Result<usize> {
        if a.len() != self.n {
            return Err(Error::Invalid(format!("degree has length {}, expected {}", a.len(), self.n)));
        }
        if !straight && a.iter().any(|&x| x < 0) {
            return Err(Error::Invalid("negative degree for a squarefree module".into()));
        }
        let s = Subset::from_indices(&(0..self.n).filter(|&i| a[i] > 0).collect::<Vec<_>>());
        Ok(self.dim(s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Rationals;

    fn v(xs: &[usize]) -> Subset {
        Subset::from_vertices(xs)
    }

    fn dims_of(m: &SqModule<Rationals>) -> Vec<usize> {
        m.dims().to_vec()
    }

    #[test]
    fn constructors() {
        let q = Rationals;
        assert_eq!(dims_of(&SqModule::free_module(&q, 2, Subset::EMPTY)), vec![1, 1, 1, 1]);
        assert_eq!(dims_of(&SqModule::free_module(&q, 2, v(&[1]))), vec![0, 1, 0, 1]);
        assert_eq!(dims_of(&SqModule::free_module(&q, 2, v(&[1, 2]))), vec![0, 0, 0, 1]);
        assert_eq!(dims_of(&SqModule::quotient_prime(&q, 2, v(&[1]))), vec![1, 1, 0, 0]);
        assert_eq!(SqModule::quotient_prime(&q, 2, Subset::full(2)), SqModule::free_module(&q, 2, Subset::EMPTY));
        assert_eq!(dims_of(&SqModule::quotient_prime(&q, 2, Subset::EMPTY)), vec![1, 0, 0, 0]);
        for f in Subset::all(3) {
            let s = SqModule::simple_module(&q, 3, f);
            assert_eq!(s.total_dim(), 1);
            assert_eq!(s.dim(f), 1);
        }
    }

    #[test]
    fn stanley_reisner() {
        let q = Rationals;
        let two = SimplicialComplex::from_facets(2, &[v(&[1]), v(&[2])]).unwrap();
        assert_eq!(dims_of(&SqModule::stanley_reisner_ring(&q, &two)), vec![1, 1, 1, 0]);
        assert_eq!(dims_of(&SqModule::stanley_reisner_ideal(&q, &two)), vec![0, 0, 0, 1]);
        let full = SimplicialComplex::simplex(3);
        assert_eq!(SqModule::stanley_reisner_ring(&q, &full), SqModule::free_module(&q, 3, Subset::EMPTY));
        assert!(SqModule::stanley_reisner_ideal(&q, &full).is_zero());
        let pt = SimplicialComplex::empty_face(3);
        assert_eq!(SqModule::stanley_reisner_ring(&q, &pt), SqModule::simple_module(&q, 3, Subset::EMPTY));
        let m = SqModule::stanley_reisner_ideal(&q, &pt);
        assert!(Subset::all(3).all(|f| m.dim(f) == usize::from(!f.is_empty())));
    }

    #[test]
    fn ring_plus_ideal_is_polynomial_ring() {
        let q = Rationals;
        for d in SimplicialComplex::enumerate_all(3) {
            let r = SqModule::stanley_reisner_ring(&q, &d);
            let i = SqModule::stanley_reisner_ideal(&q, &d);
            let s = SqModule::direct_sum(&q, 3, &[&r, &i]).unwrap();
            assert!(s.dims().iter().all(|&x| x == 1));
        }
    }

    #[test]
    fn direct_sum_examples() {
        let q = Rationals;
        let a = SqModule::free_module(&q, 2, v(&[1]));
        let b = SqModule::free_module(&q, 2, v(&[2]));
        let s = SqModule::direct_sum(&q, 2, &[&a, &b]).unwrap();
        assert_eq!(s.dim(v(&[1, 2])), 2);
        let z = SqModule::zero(&q, 2);
        assert_eq!(SqModule::direct_sum(&q, 2, &[&a, &z]).unwrap(), a);
        assert!(SqModule::direct_sum(&q, 3, &[&a]).is_err());
    }

    #[test]
    fn rejects_noncommuting_square() {
        let q = Rationals;
        let dims = vec![1, 1, 1, 1];
        let r = SqModule::new(&q, 2, dims, |f, i| {
            if f.is_empty() && i == 0 {
                Matrix::from_i64_rows(&q, &[&[2]])
            } else {
                Matrix::identity(&q, 1)
            }
        });
        assert!(matches!(r, Err(Error::Invalid(_))));
    }

    #[test]
    fn graded_dims() {
        let q = Rationals;
        let s = SqModule::free_module(&q, 2, Subset::EMPTY);
        assert_eq!(s.graded_dim(&[3, 0], false).unwrap(), 1);
        let two = SimplicialComplex::from_facets(2, &[v(&[1]), v(&[2])]).unwrap();
        let r = SqModule::stanley_reisner_ring(&q, &two);
        assert_eq!(r.graded_dim(&[2, 1], false).unwrap(), 0);
        let p = SqModule::quotient_prime(&q, 2, v(&[1]));
        assert_eq!(p.graded_dim(&[-5, 0], true).unwrap(), 1);
        assert!(p.graded_dim(&[-5, 0], false).is_err());
    }
}

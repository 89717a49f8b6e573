use crate::boolcomb::Subset;
use crate::error::{Error, Result};
use crate::exactla::{induced_map, quotient_basis, Field, Matrix};
use crate::sqmod::SqModule;

/// A degree-preserving homomorphism of squarefree modules, one matrix per
/// subset (`target.dim(F) × source.dim(F)`).
#[derive(Clone, PartialEq, Debug)]
pub struct SqHom<K: Field> {
    source: SqModule<K>,
    target: SqModule<K>,
    comps: Vec<Matrix<K>>,
}

impl<K: Field> SqHom<K> {
    pub fn new(source: SqModule<K>, target: SqModule<K>, comps: Vec<Matrix<K>>) -> Result<Self> {
        let h = SqHom { source, target, comps };
        h.validate()?;
        Ok(h)
    }

    pub(crate) fn new_unchecked(source: SqModule<K>, target: SqModule<K>, comps: Vec<Matrix<K>>) -> Self {
        let h = SqHom { source, target, comps };
        debug_assert!(h.validate().is_ok(), "{:?}", h.validate());
        h
    }

    pub fn from_fn(source: &SqModule<K>, target: &SqModule<K>, f: impl FnMut(Subset) -> Matrix<K>) -> Result<Self> {
        let comps = Subset::all(source.n()).map(f).collect();
        Self::new(source.clone(), target.clone(), comps)
    }

    pub fn validate(&self) -> Result<()> {
        let (s, t) = (&self.source, &self.target);
        if s.n() != t.n() || s.field() != t.field() {
            return Err(Error::Invalid("hom between modules over different rings".into()));
        }
        let n = s.n();
        if self.comps.len() != 1 << n {
            return Err(Error::Invalid("hom has the wrong number of components".into()));
        }
        for f in Subset::all(n) {
            if self.comp(f).shape() != (t.dim(f), s.dim(f)) {
                return Err(Error::Invalid(format!("hom component at {f} has shape {:?}", self.comp(f).shape())));
            }
        }
        for f in Subset::all(n) {
            for i in (0..n).filter(|&i| !f.contains(i)) {
                if t.map(f, i).mul(self.comp(f)) != self.comp(f.with(i)).mul(s.map(f, i)) {
                    return Err(Error::Invalid(format!("hom does not commute with x{} at {f}", i + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn identity(m: &SqModule<K>) -> Self {
        let k = m.field();
        let comps = Subset::all(m.n()).map(|f| Matrix::identity(k, m.dim(f))).collect();
        SqHom { source: m.clone(), target: m.clone(), comps }
    }

    pub fn zero(source: &SqModule<K>, target: &SqModule<K>) -> Self {
        let k = source.field();
        let comps = Subset::all(source.n()).map(|f| Matrix::zeros(k, target.dim(f), source.dim(f))).collect();
        SqHom { source: source.clone(), target: target.clone(), comps }
    }

    pub fn source(&self) -> &SqModule<K> {
        &self.source
    }

    pub fn target(&self) -> &SqModule<K> {
        &self.target
    }

    pub fn comp(&self, f: Subset) -> &Matrix<K> {
        &self.comps[f.index()]
    }

    pub fn comps(&self) -> &[Matrix<K>] {
        &self.comps
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &SqHom<K>) -> Result<SqHom<K>> {
        if first.target != self.source {
            return Err(Error::Invalid("composing homs with mismatched modules".into()));
        }
        let comps = self.comps.iter().zip(&first.comps).map(|(g, f)| g.mul(f)).collect();
        Ok(SqHom { source: first.source.clone(), target: self.target.clone(), comps })
    }

    pub fn add(&self, other: &SqHom<K>) -> Result<SqHom<K>> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::Invalid("adding homs with different source or target".into()));
        }
        let comps = self.comps.iter().zip(&other.comps).map(|(a, b)| a.add(b)).collect();
        Ok(SqHom { source: self.source.clone(), target: self.target.clone(), comps })
    }

    pub fn scale(&self, s: &K::Elem) -> SqHom<K> {
        let comps = self.comps.iter().map(|c| c.scale(s)).collect();
        SqHom { source: self.source.clone(), target: self.target.clone(), comps }
    }

    /// Kernel with its inclusion. The basis at each subset is the null-space
    /// basis of the component, so kernel coordinates are the entries at the
    /// free columns.
    pub fn kernel(&self) -> (SqModule<K>, SqHom<K>) {
        let (m, i, _) = self.kernel_with_coords();
        (m, i)
    }

    /// Kernel, inclusion, and per subset the rows that give kernel
    /// coordinates of a vector already known to lie in the kernel.
    pub(crate) fn kernel_with_coords(&self) -> (SqModule<K>, SqHom<K>, Vec<Vec<usize>>) {
        let s = &self.source;
        let k = s.field();
        let n = s.n();
        let bases: Vec<(Matrix<K>, Vec<usize>)> = self.comps.iter().map(|c| c.kernel_with_free_columns()).collect();
        let dims = bases.iter().map(|(b, _)| b.cols()).collect();
        let module = SqModule::new_unchecked(k, n, dims, |f, i| {
            let g = f.with(i);
            s.map(f, i).mul(&bases[f.index()].0).select_rows(&bases[g.index()].1)
        });
        let (incl, coords): (Vec<_>, Vec<_>) = bases.into_iter().unzip();
        let incl = SqHom::new_unchecked(module.clone(), s.clone(), incl);
        (module, incl, coords)
    }

    /// Cokernel with its projection.
    pub fn cokernel(&self) -> (SqModule<K>, SqHom<K>) {
        let t = &self.target;
        let k = t.field();
        let n = t.n();
        let quots: Vec<(Matrix<K>, Matrix<K>)> = Subset::all(n)
            .map(|f| {
                let id = Matrix::identity(k, t.dim(f));
                quotient_basis(&id, self.comp(f)).expect("the image lies in the target")
            })
            .collect();
        let dims = quots.iter().map(|(b, _)| b.cols()).collect();
        let module = SqModule::new_unchecked(k, n, dims, |f, i| {
            let g = f.with(i);
            quots[g.index()].1.mul(&t.map(f, i).mul(&quots[f.index()].0))
        });
        let proj = quots.into_iter().map(|(_, p)| p).collect();
        let proj = SqHom::new_unchecked(t.clone(), module.clone(), proj);
        (module, proj)
    }

    /// Image as a submodule of the target, spanned by pivot columns.
    pub fn image(&self) -> SqModule<K> {
        let t = &self.target;
        let k = t.field();
        let n = t.n();
        let bases: Vec<Matrix<K>> = self.comps.iter().map(|c| c.image_basis()).collect();
        let dims = bases.iter().map(|b| b.cols()).collect();
        SqModule::new_unchecked(k, n, dims, |f, i| {
            let g = f.with(i);
            let empty = Matrix::zeros(k, t.dim(f), 0);
            let empty_g = Matrix::zeros(k, t.dim(g), 0);
            induced_map(&bases[f.index()], &empty, t.map(f, i), &bases[g.index()], &empty_g)
                .expect("the image is a submodule")
        })
    }
}

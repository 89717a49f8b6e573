use std::collections::BTreeMap;

use crate::boolcomb::Subset;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::sqcomplex::GradedTable;
use crate::sqmod::{SqHom, SqModule};

/// A bounded cochain complex of squarefree modules. Term `i` lives at
/// `terms[i - min_deg]`; `diffs[k]` goes from `terms[k]` to `terms[k + 1]`.
/// Zero terms at either end are trimmed, so structural equality is
/// meaningful.
#[derive(Clone, PartialEq, Debug)]
pub struct SqComplex<K: Field> {
    field: K,
    n: usize,
    min_deg: i64,
    terms: Vec<SqModule<K>>,
    diffs: Vec<SqHom<K>>,
    zero: SqModule<K>,
}

impl<K: Field> SqComplex<K> {
    pub fn new(field: &K, n: usize, min_deg: i64, terms: Vec<SqModule<K>>, diffs: Vec<SqHom<K>>) -> Result<Self> {
        let c = Self::assemble(field, n, min_deg, terms, diffs)?;
        c.check_squares()?;
        Ok(c)
    }

    fn assemble(field: &K, n: usize, min_deg: i64, terms: Vec<SqModule<K>>, diffs: Vec<SqHom<K>>) -> Result<Self> {
        if diffs.len() != terms.len().saturating_sub(1) {
            return Err(Error::Invalid(format!("{} terms need {} differentials", terms.len(), terms.len().saturating_sub(1))));
        }
        for t in &terms {
            if t.n() != n || t.field() != field {
                return Err(Error::Invalid("complex terms over different rings".into()));
            }
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source() != &terms[k] || d.target() != &terms[k + 1] {
                return Err(Error::Invalid(format!("differential at degree {} has the wrong ends", min_deg + k as i64)));
            }
        }
        let mut c = SqComplex { field: field.clone(), n, min_deg, terms, diffs, zero: SqModule::zero(field, n) };
        c.trim();
        Ok(c)
    }

    pub(crate) fn new_unchecked(field: &K, n: usize, min_deg: i64, terms: Vec<SqModule<K>>, diffs: Vec<SqHom<K>>) -> Self {
        let c = Self::assemble(field, n, min_deg, terms, diffs).expect("complex assembled from matching pieces");
        debug_assert!(c.check_squares().is_ok());
        c
    }

    fn trim(&mut self) {
        while self.terms.last().is_some_and(|t| t.is_zero()) {
            self.terms.pop();
            self.diffs.pop();
        }
        let lead = self.terms.iter().take_while(|t| t.is_zero()).count();
        if lead > 0 {
            self.terms.drain(..lead);
            self.diffs.drain(..lead.min(self.diffs.len()));
            self.min_deg += lead as i64;
        }
        if self.terms.is_empty() {
            self.min_deg = 0;
            self.diffs.clear();
        }
    }

    fn check_squares(&self) -> Result<()> {
        for k in 1..self.diffs.len() {
            if !self.diffs[k].compose(&self.diffs[k - 1])?.is_zero() {
                return Err(Error::Invalid(format!("δ∘δ ≠ 0 at degree {}", self.min_deg + k as i64 - 1)));
            }
        }
        Ok(())
    }

    pub fn zero(field: &K, n: usize) -> Self {
        SqComplex { field: field.clone(), n, min_deg: 0, terms: vec![], diffs: vec![], zero: SqModule::zero(field, n) }
    }

    /// `M` placed in degree `deg`.
    pub fn from_module(m: &SqModule<K>, deg: i64) -> Self {
        Self::new_unchecked(m.field(), m.n(), deg, vec![m.clone()], vec![])
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest and highest nonzero degree.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        if self.terms.is_empty() {
            None
        } else {
            Some((self.min_deg, self.min_deg + self.terms.len() as i64 - 1))
        }
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        let lo = self.min_deg;
        lo..lo + self.terms.len() as i64
    }

    pub fn term(&self, i: i64) -> &SqModule<K> {
        let k = i - self.min_deg;
        if k < 0 || k >= self.terms.len() as i64 {
            &self.zero
        } else {
            &self.terms[k as usize]
        }
    }

    /// `δ^i`, or `None` if it is the zero map between stored ends.
    pub fn diff(&self, i: i64) -> Option<&SqHom<K>> {
        let k = i - self.min_deg;
        if k < 0 || k >= self.diffs.len() as i64 {
            None
        } else {
            Some(&self.diffs[k as usize])
        }
    }

    /// `δ^i` as a hom, zero where nothing is stored.
    pub fn diff_or_zero(&self, i: i64) -> SqHom<K> {
        match self.diff(i) {
            Some(d) => d.clone(),
            None => SqHom::zero(self.term(i), self.term(i + 1)),
        }
    }

    /// Component `δ^i_F` as a matrix, including zero maps at the ends.
    pub fn diff_comp(&self, i: i64, f: Subset) -> Matrix<K> {
        match self.diff(i) {
            Some(d) => d.comp(f).clone(),
            None => Matrix::zeros(&self.field, self.term(i + 1).dim(f), self.term(i).dim(f)),
        }
    }

    /// `C[p]`: `C[p]^i = C^{i+p}` with differentials multiplied by `(-1)^p`.
    pub fn translate(&self, p: i64) -> Self {
        let s = self.field.sign(p);
        let diffs = self.diffs.iter().map(|d| d.scale(&s)).collect();
        SqComplex {
            field: self.field.clone(),
            n: self.n,
            min_deg: if self.terms.is_empty() { 0 } else { self.min_deg - p },
            terms: self.terms.clone(),
            diffs,
            zero: self.zero.clone(),
        }
    }

    /// `dim C^i_F` for all degrees and subsets.
    pub fn term_dims(&self) -> GradedTable {
        let mut t = GradedTable::new();
        for i in self.degrees() {
            for f in Subset::all(self.n) {
                t.set(i, f, self.term(i).dim(f));
            }
        }
        t
    }

    /// `dim H^i(C)_F` from ranks, without building the modules.
    pub fn cohomology_dims(&self) -> GradedTable {
        let mut t = GradedTable::new();
        for f in Subset::all(self.n) {
            let ranks: Vec<usize> = self.diffs.iter().map(|d| d.comp(f).rank()).collect();
            for (k, term) in self.terms.iter().enumerate() {
                let out = ranks.get(k).copied().unwrap_or(0);
                let inc = if k > 0 { ranks[k - 1] } else { 0 };
                t.set(self.min_deg + k as i64, f, term.dim(f) - out - inc);
            }
        }
        t
    }

    pub fn is_exact(&self) -> bool {
        self.cohomology_dims().is_zero()
    }

    /// `H^i(C) = ker δ^i / im δ^{i-1}` with the induced structure maps.
    pub fn cohomology_module(&self, i: i64) -> SqModule<K> {
        let (z, _, coords) = self.diff_or_zero(i).kernel_with_coords();
        let prev = self.diff_or_zero(i - 1);
        let comps = Subset::all(self.n)
            .map(|f| prev.comp(f).select_rows(&coords[f.index()]))
            .collect();
        let into_z = SqHom::new_unchecked(prev.source().clone(), z, comps);
        into_z.cokernel().0
    }

    /// All nonzero cohomology modules.
    pub fn cohomology(&self) -> BTreeMap<i64, SqModule<K>> {
        self.degrees()
            .map(|i| (i, self.cohomology_module(i)))
            .filter(|(_, h)| !h.is_zero())
            .collect()
    }
}

/// A degree-0 morphism of complexes.
#[derive(Clone, PartialEq, Debug)]
pub struct ChainMap<K: Field> {
    source: SqComplex<K>,
    target: SqComplex<K>,
    comps: BTreeMap<i64, SqHom<K>>,
}

impl<K: Field> ChainMap<K> {
    /// `comp(i)` is asked for every degree where source and target are both
    /// nonzero.
    pub fn new(source: &SqComplex<K>, target: &SqComplex<K>, mut comp: impl FnMut(i64) -> SqHom<K>) -> Result<Self> {
        let mut comps = BTreeMap::new();
        for i in source.degrees() {
            if !target.term(i).is_zero() {
                let h = comp(i);
                if h.source() != source.term(i) || h.target() != target.term(i) {
                    return Err(Error::Invalid(format!("chain map component at degree {i} has the wrong ends")));
                }
                comps.insert(i, h);
            }
        }
        let m = ChainMap { source: source.clone(), target: target.clone(), comps };
        m.validate()?;
        Ok(m)
    }

    pub fn identity(c: &SqComplex<K>) -> Self {
        ChainMap::new(c, c, |i| SqHom::identity(c.term(i))).expect("identity is a chain map")
    }

    pub fn zero(source: &SqComplex<K>, target: &SqComplex<K>) -> Self {
        ChainMap::new(source, target, |i| SqHom::zero(source.term(i), target.term(i))).expect("zero is a chain map")
    }

    pub fn source(&self) -> &SqComplex<K> {
        &self.source
    }

    pub fn target(&self) -> &SqComplex<K> {
        &self.target
    }

    pub fn comp(&self, i: i64) -> SqHom<K> {
        match self.comps.get(&i) {
            Some(h) => h.clone(),
            None => SqHom::zero(self.source.term(i), self.target.term(i)),
        }
    }

    pub fn validate(&self) -> Result<()> {
        let lo = self.source.degree_range().map_or(0, |r| r.0) - 1;
        let hi = self.source.degree_range().map_or(0, |r| r.1) + 1;
        for i in lo..=hi {
            let left = self.target.diff_or_zero(i).compose(&self.comp(i))?;
            let right = self.comp(i + 1).compose(&self.source.diff_or_zero(i))?;
            if left != right {
                return Err(Error::Invalid(format!("chain map does not commute at degree {i}")));
            }
        }
        Ok(())
    }

    /// Mapping cone: `cone^i = source^{i+1} ⊕ target^i` with differential
    /// `(s, t) ↦ (-δ s, f s + δ t)`.
    pub fn cone(&self) -> SqComplex<K> {
        let (s, t) = (&self.source, &self.target);
        let k = s.field();
        let n = s.n();
        let lo = s.degree_range().map(|r| r.0 - 1).into_iter().chain(t.degree_range().map(|r| r.0)).min();
        let hi = s.degree_range().map(|r| r.1 - 1).into_iter().chain(t.degree_range().map(|r| r.1)).max();
        let (Some(lo), Some(hi)) = (lo, hi) else {
            return SqComplex::zero(k, n);
        };
        let terms: Vec<SqModule<K>> = (lo..=hi)
            .map(|i| SqModule::direct_sum(k, n, &[s.term(i + 1), t.term(i)]).expect("same ring"))
            .collect();
        let minus = k.neg(&k.one());
        let diffs = (lo..hi)
            .map(|i| {
                let ds = s.diff_or_zero(i + 1);
                let dt = t.diff_or_zero(i);
                let fi = self.comp(i + 1);
                let comps = Subset::all(n)
                    .map(|g| {
                        let top = ds.comp(g).scale(&minus).hstack(&Matrix::zeros(k, s.term(i + 2).dim(g), t.term(i).dim(g)));
                        let bottom = fi.comp(g).hstack(dt.comp(g));
                        top.vstack(&bottom)
                    })
                    .collect();
                let (a, b) = ((i - lo) as usize, (i + 1 - lo) as usize);
                SqHom::new_unchecked(terms[a].clone(), terms[b].clone(), comps)
            })
            .collect();
        SqComplex::new_unchecked(k, n, lo, terms, diffs)
    }

    pub fn is_quasi_iso(&self) -> bool {
        self.cone().is_exact()
    }
}

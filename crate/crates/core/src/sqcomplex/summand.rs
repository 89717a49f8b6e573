use std::collections::BTreeMap;

use crate::boolcomb::Subset;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::sqcomplex::{ChainMap, GradedTable, SqComplex};
use crate::sqmod::{SqHom, SqModule};

/// Which indecomposable each summand of a [`SummandComplex`] is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SummandKind {
    /// `S(-F)`.
    Free,
    /// `S/P_F`.
    Injective,
}

impl SummandKind {
    pub fn dual(self) -> Self {
        match self {
            SummandKind::Free => SummandKind::Injective,
            SummandKind::Injective => SummandKind::Free,
        }
    }

    /// Whether the summand labeled `label` is nonzero at `f`.
    pub fn present(self, label: Subset, f: Subset) -> bool {
        match self {
            SummandKind::Free => label.is_subset_of(f),
            SummandKind::Injective => f.is_subset_of(label),
        }
    }
}

/// One indecomposable summand. `subset` determines the module (`S(-subset)`
/// or `S/P_subset`); `(deg, origin, index)` records where it came from: for
/// a dual of a complex `C`, the summand is built from basis vector `index`
/// of `C^{deg}_{origin}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub subset: Subset,
    pub deg: i64,
    pub origin: Subset,
    pub index: usize,
}

impl Label {
    pub fn new(subset: Subset, deg: i64, origin: Subset, index: usize) -> Self {
        Label { subset, deg, origin, index }
    }
}

/// A bounded complex whose terms are direct sums of `S(-F)` (or of
/// `S/P_F`), each summand labeled. Every degree-preserving map between two
/// such summands is a scalar multiple of a canonical one, which exists when
/// the target label is contained in the source label; the differential is
/// therefore a scalar matrix per degree (rows: summands of the next term).
#[derive(Clone, Debug, PartialEq)]
pub struct SummandComplex<K: Field> {
    field: K,
    n: usize,
    kind: SummandKind,
    min_deg: i64,
    terms: Vec<Vec<Label>>,
    diffs: Vec<Matrix<K>>,
}

impl<K: Field> SummandComplex<K> {
    pub fn new(field: &K, n: usize, kind: SummandKind, min_deg: i64, terms: Vec<Vec<Label>>, diffs: Vec<Matrix<K>>) -> Result<Self> {
        let c = Self::assemble(field, n, kind, min_deg, terms, diffs)?;
        c.check_squares()?;
        Ok(c)
    }

    fn assemble(field: &K, n: usize, kind: SummandKind, min_deg: i64, terms: Vec<Vec<Label>>, diffs: Vec<Matrix<K>>) -> Result<Self> {
        if diffs.len() != terms.len().saturating_sub(1) {
            return Err(Error::Invalid("summand complex has the wrong number of differentials".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.shape() != (terms[k + 1].len(), terms[k].len()) {
                return Err(Error::Invalid(format!("differential at degree {} has the wrong shape", min_deg + k as i64)));
            }
            for (a, la) in terms[k + 1].iter().enumerate() {
                for (b, lb) in terms[k].iter().enumerate() {
                    if !field.is_zero(d.get(a, b)) && !la.subset.is_subset_of(lb.subset) {
                        return Err(Error::Invalid(format!(
                            "no degree-preserving map from the {} summand to the {} summand",
                            lb.subset, la.subset
                        )));
                    }
                }
            }
        }
        for t in &terms {
            if t.iter().any(|l| !l.subset.fits(n)) {
                return Err(Error::Invalid("summand label outside [n]".into()));
            }
        }
        let mut c = SummandComplex { field: field.clone(), n, kind, min_deg, terms, diffs };
        c.trim();
        Ok(c)
    }

    pub(crate) fn new_unchecked(field: &K, n: usize, kind: SummandKind, min_deg: i64, terms: Vec<Vec<Label>>, diffs: Vec<Matrix<K>>) -> Self {
        let c = Self::assemble(field, n, kind, min_deg, terms, diffs).expect("summand complex assembled from matching pieces");
        debug_assert!(c.check_squares().is_ok(), "{:?}", c.check_squares());
        c
    }

    fn trim(&mut self) {
        while self.terms.last().is_some_and(|t| t.is_empty()) {
            self.terms.pop();
            self.diffs.pop();
        }
        let lead = self.terms.iter().take_while(|t| t.is_empty()).count();
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
            if !self.diffs[k].mul(&self.diffs[k - 1]).is_zero() {
                return Err(Error::Internal(format!("δ∘δ ≠ 0 at degree {}", self.min_deg + k as i64 - 1)));
            }
        }
        Ok(())
    }

    /// Builds from per-degree labels and a rule giving the differential entry
    /// from source summand `b` (degree `t`) to target summand `a`.
    pub(crate) fn from_rule(
        field: &K,
        n: usize,
        kind: SummandKind,
        min_deg: i64,
        terms: Vec<Vec<Label>>,
        mut entry: impl FnMut(i64, &Label, &Label) -> K::Elem,
    ) -> Self {
        let diffs = (1..terms.len())
            .map(|k| {
                let t = min_deg + k as i64 - 1;
                let (src, dst) = (&terms[k - 1], &terms[k]);
                Matrix::from_fn(field, dst.len(), src.len(), |a, b| {
                    if dst[a].subset.is_subset_of(src[b].subset) {
                        entry(t, &src[b], &dst[a])
                    } else {
                        field.zero()
                    }
                })
            })
            .collect();
        Self::new_unchecked(field, n, kind, min_deg, terms, diffs)
    }

    pub fn zero(field: &K, n: usize, kind: SummandKind) -> Self {
        SummandComplex { field: field.clone(), n, kind, min_deg: 0, terms: vec![], diffs: vec![] }
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> SummandKind {
        self.kind
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

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

    pub fn labels(&self, i: i64) -> &[Label] {
        let k = i - self.min_deg;
        if k < 0 || k >= self.terms.len() as i64 {
            &[]
        } else {
            &self.terms[k as usize]
        }
    }

    /// Scalar matrix of the differential out of degree `i`.
    pub fn diff(&self, i: i64) -> Matrix<K> {
        let k = i - self.min_deg;
        if k < 0 || k >= self.diffs.len() as i64 {
            Matrix::zeros(&self.field, self.labels(i + 1).len(), self.labels(i).len())
        } else {
            self.diffs[k as usize].clone()
        }
    }

    /// Summand counts per `(degree, label subset)`.
    pub fn summand_table(&self) -> GradedTable {
        self.degrees()
            .flat_map(|i| self.labels(i).iter().map(move |l| (i, l.subset, 1)))
            .collect()
    }

    /// Positions of the summands of degree `i` that are nonzero at `f`.
    fn present(&self, i: i64, f: Subset) -> Vec<usize> {
        let kind = self.kind;
        self.labels(i).iter().enumerate().filter(|(_, l)| kind.present(l.subset, f)).map(|(k, _)| k).collect()
    }

    fn module_of(&self, i: i64) -> SqModule<K> {
        let k = &self.field;
        let labels = self.labels(i);
        let kind = self.kind;
        let dims = Subset::all(self.n).map(|f| labels.iter().filter(|l| kind.present(l.subset, f)).count()).collect();
        let present: Vec<Vec<usize>> = Subset::all(self.n).map(|f| self.present(i, f)).collect();
        SqModule::new_unchecked(k, self.n, dims, |f, v| {
            let g = f.with(v);
            let (src, dst) = (&present[f.index()], &present[g.index()]);
            Matrix::from_fn(k, dst.len(), src.len(), |a, b| if dst[a] == src[b] { k.one() } else { k.zero() })
        })
    }

    /// The underlying complex of squarefree modules; at each subset the basis
    /// is the present summands in label order.
    pub fn to_complex(&self) -> SqComplex<K> {
        let Some((lo, hi)) = self.degree_range() else {
            return SqComplex::zero(&self.field, self.n);
        };
        let terms: Vec<SqModule<K>> = (lo..=hi).map(|i| self.module_of(i)).collect();
        let diffs = (lo..hi)
            .map(|i| {
                let d = self.diff(i);
                let comps = Subset::all(self.n)
                    .map(|f| d.select_rows(&self.present(i + 1, f)).select_columns(&self.present(i, f)))
                    .collect();
                let k = (i - lo) as usize;
                SqHom::new_unchecked(terms[k].clone(), terms[k + 1].clone(), comps)
            })
            .collect();
        SqComplex::new_unchecked(&self.field, self.n, lo, terms, diffs)
    }

    /// `dim H^i_F` straight from the scalar matrices.
    pub fn cohomology_dims(&self) -> GradedTable {
        let mut t = GradedTable::new();
        for f in Subset::all(self.n) {
            let present: Vec<Vec<usize>> = self.degrees().map(|i| self.present(i, f)).collect();
            let ranks: Vec<usize> = (0..self.diffs.len())
                .map(|k| self.diffs[k].select_rows(&present[k + 1]).select_columns(&present[k]).rank())
                .collect();
            for (k, p) in present.iter().enumerate() {
                let out = ranks.get(k).copied().unwrap_or(0);
                let inc = if k > 0 { ranks[k - 1] } else { 0 };
                t.set(self.min_deg + k as i64, f, p.len() - out - inc);
            }
        }
        t
    }

    /// Alexander dual: `S(-F) ↔ S/P_{F^c}`, degree `i ↦ -i`, and the new
    /// differential out of degree `i` is the transpose of the old one out of
    /// degree `-i-1`.
    pub fn alexander(&self) -> Self {
        let n = self.n;
        let Some((lo, hi)) = self.degree_range() else {
            return Self::zero(&self.field, n, self.kind.dual());
        };
        let terms: Vec<Vec<Label>> = (-hi..=-lo)
            .map(|i| self.labels(-i).iter().map(|l| Label { subset: l.subset.complement(n), ..*l }).collect())
            .collect();
        let diffs = (-hi..-lo).map(|i| self.diff(-i - 1).transpose()).collect();
        SummandComplex { field: self.field.clone(), n, kind: self.kind.dual(), min_deg: -hi, terms, diffs }
    }

    /// `C[p]`, differentials multiplied by `(-1)^p`.
    pub fn translate(&self, p: i64) -> Self {
        let s = self.field.sign(p);
        let mut c = self.clone();
        if !c.terms.is_empty() {
            c.min_deg -= p;
        }
        c.diffs = c.diffs.iter().map(|d| d.scale(&s)).collect();
        c
    }

    /// Isomorphic complex obtained by multiplying each summand's basis vector
    /// by `(-1)^{sign(degree, label)}`.
    pub fn twist(&self, mut sign: impl FnMut(i64, &Label) -> i64) -> Self {
        let k = &self.field;
        let signs: Vec<Vec<K::Elem>> = self.degrees().map(|i| self.labels(i).iter().map(|l| k.sign(sign(i, l))).collect()).collect();
        let diffs = self
            .diffs
            .iter()
            .enumerate()
            .map(|(t, d)| Matrix::from_fn(k, d.rows(), d.cols(), |a, b| k.mul(&k.mul(&signs[t + 1][a], d.get(a, b)), &signs[t][b])))
            .collect();
        SummandComplex { diffs, ..self.clone() }
    }

    /// Whether no differential entry joins two summands with the same label
    /// subset (equivalently `d(C) ⊆ mC`).
    pub fn is_minimal(&self) -> bool {
        self.diffs.iter().enumerate().all(|(k, d)| {
            let (src, dst) = (&self.terms[k], &self.terms[k + 1]);
            (0..d.rows()).all(|a| (0..d.cols()).all(|b| dst[a].subset != src[b].subset || self.field.is_zero(d.get(a, b))))
        })
    }

    /// Homotopy-equivalent minimal complex: repeatedly cancels a unit entry
    /// between two summands with the same label subset (Gaussian
    /// elimination).
    ///
    /// Pivots are taken in row-major order, always the first cancellable
    /// entry of the current matrix. Elimination happens in place; a row is
    /// rescanned only after an update touched it.
    pub fn minimize(&self) -> Self {
        let k = &self.field;
        let mut terms = self.terms.clone();
        let mut diffs = self.diffs.clone();
        for t in 0..diffs.len() {
            let d = &mut diffs[t];
            let (rows, cols) = d.shape();
            let (src, dst) = (&terms[t], &terms[t + 1]);
            let mut row_alive = vec![true; rows];
            let mut col_alive = vec![true; cols];
            let mut dirty = vec![true; rows];
            loop {
                let mut pivot = None;
                let mut r = 0;
                while r < rows && pivot.is_none() {
                    if row_alive[r] && dirty[r] {
                        pivot = (0..cols).find(|&c| col_alive[c] && dst[r].subset == src[c].subset && !k.is_zero(d.get(r, c))).map(|c| (r, c));
                        dirty[r] = false;
                    }
                    r += 1;
                }
                let Some((a, b)) = pivot else { break };
                let inv = k.inv(d.get(a, b));
                let pivot_row: Vec<(usize, K::Elem)> =
                    (0..cols).filter(|&c| c != b && col_alive[c] && !k.is_zero(d.get(a, c))).map(|c| (c, d.get(a, c).clone())).collect();
                for r in (0..rows).filter(|&r| r != a && row_alive[r]) {
                    if k.is_zero(d.get(r, b)) {
                        continue;
                    }
                    let factor = k.mul(d.get(r, b), &inv);
                    for (c, v) in &pivot_row {
                        let x = k.sub(d.get(r, *c), &k.mul(&factor, v));
                        d.set(r, *c, x);
                    }
                    dirty[r] = true;
                }
                row_alive[a] = false;
                col_alive[b] = false;
            }
            let keep_rows: Vec<usize> = (0..rows).filter(|&r| row_alive[r]).collect();
            let keep_cols: Vec<usize> = (0..cols).filter(|&c| col_alive[c]).collect();
            diffs[t] = diffs[t].select_rows(&keep_rows).select_columns(&keep_cols);
            if t > 0 {
                diffs[t - 1] = diffs[t - 1].select_rows(&keep_cols);
            }
            if t + 1 < diffs.len() {
                diffs[t + 1] = diffs[t + 1].select_columns(&keep_rows);
            }
            terms[t] = keep_cols.iter().map(|&c| terms[t][c]).collect();
            terms[t + 1] = keep_rows.iter().map(|&r| terms[t + 1][r]).collect();
        }
        Self::new_unchecked(&self.field, self.n, self.kind, self.min_deg, terms, diffs)
    }

    /// The `i`-linear strand of a minimal free complex: summands at degree
    /// `j` with `|F| = i - j`, with the differential restricted to them.
    pub fn linear_strand(&self, i: i64) -> Result<Self> {
        if self.kind != SummandKind::Free {
            return Err(Error::Invalid("linear strands need a free complex".into()));
        }
        if !self.is_minimal() {
            return Err(Error::Invalid("linear strands need a minimal complex".into()));
        }
        let Some((lo, hi)) = self.degree_range() else {
            return Ok(self.clone());
        };
        let keep: Vec<Vec<usize>> = (lo..=hi)
            .map(|j| {
                self.labels(j)
                    .iter()
                    .enumerate()
                    .filter(|(_, l)| l.subset.len() as i64 == i - j)
                    .map(|(k, _)| k)
                    .collect()
            })
            .collect();
        let terms = (lo..=hi).zip(&keep).map(|(j, ks)| ks.iter().map(|&k| self.labels(j)[k]).collect()).collect();
        let diffs = (0..self.diffs.len()).map(|t| self.diffs[t].select_rows(&keep[t + 1]).select_columns(&keep[t])).collect();
        Ok(Self::new_unchecked(&self.field, self.n, self.kind, lo, terms, diffs))
    }

    /// Same terms with only the entries between labels of adjacent size kept.
    pub fn linear_part(&self) -> Self {
        let k = &self.field;
        let mut c = self.clone();
        for t in 0..c.diffs.len() {
            let (src, dst) = (&c.terms[t], &c.terms[t + 1]);
            let d = &c.diffs[t];
            c.diffs[t] = Matrix::from_fn(k, d.rows(), d.cols(), |a, b| {
                if src[b].subset.len() == dst[a].subset.len() + 1 {
                    d.get(a, b).clone()
                } else {
                    k.zero()
                }
            });
        }
        c
    }
}

/// A degree-0 map between two summand complexes of the same kind, given
/// by scalar matrices per degree (rows: target summands).
#[derive(Clone, Debug, PartialEq)]
pub struct SummandMap<K: Field> {
    source: SummandComplex<K>,
    target: SummandComplex<K>,
    comps: BTreeMap<i64, Matrix<K>>,
}

impl<K: Field> SummandMap<K> {
    /// `comp(i)` is asked for every degree where both sides are nonzero.
    pub fn new(source: &SummandComplex<K>, target: &SummandComplex<K>, mut comp: impl FnMut(i64) -> Matrix<K>) -> Result<Self> {
        if source.kind != target.kind || source.n != target.n {
            return Err(Error::Invalid("map between summand complexes of different shape".into()));
        }
        let mut comps = BTreeMap::new();
        for i in source.degrees() {
            let (src, dst) = (source.labels(i), target.labels(i));
            if dst.is_empty() {
                continue;
            }
            let m = comp(i);
            if m.shape() != (dst.len(), src.len()) {
                return Err(Error::Invalid(format!("map component at degree {i} has the wrong shape")));
            }
            for a in 0..dst.len() {
                for b in 0..src.len() {
                    if !source.field.is_zero(m.get(a, b)) && !dst[a].subset.is_subset_of(src[b].subset) {
                        return Err(Error::Invalid(format!("map component at degree {i} joins incompatible summands")));
                    }
                }
            }
            comps.insert(i, m);
        }
        Ok(SummandMap { source: source.clone(), target: target.clone(), comps })
    }

    pub fn source(&self) -> &SummandComplex<K> {
        &self.source
    }

    pub fn target(&self) -> &SummandComplex<K> {
        &self.target
    }

    pub fn comp(&self, i: i64) -> Matrix<K> {
        match self.comps.get(&i) {
            Some(m) => m.clone(),
            None => Matrix::zeros(&self.source.field, self.target.labels(i).len(), self.source.labels(i).len()),
        }
    }

    /// Degrees where the map fails to commute with the differentials.
    pub fn non_commuting_degrees(&self) -> Vec<i64> {
        let lo = self.source.degree_range().into_iter().chain(self.target.degree_range()).map(|r| r.0).min();
        let hi = self.source.degree_range().into_iter().chain(self.target.degree_range()).map(|r| r.1).max();
        let (Some(lo), Some(hi)) = (lo, hi) else { return vec![] };
        (lo - 1..=hi)
            .filter(|&i| self.target.diff(i).mul(&self.comp(i)) != self.comp(i + 1).mul(&self.source.diff(i)))
            .collect()
    }

    pub fn is_chain_map(&self) -> bool {
        self.non_commuting_degrees().is_empty()
    }

    /// Whether every component is an isomorphism of modules: the blocks
    /// between summands with equal label subsets are invertible.
    pub fn is_iso(&self) -> bool {
        let degrees: Vec<i64> = self.source.degrees().chain(self.target.degrees()).collect();
        degrees.into_iter().all(|i| {
            let (src, dst) = (self.source.labels(i), self.target.labels(i));
            let m = self.comp(i);
            let subsets: std::collections::BTreeSet<Subset> = src.iter().chain(dst).map(|l| l.subset).collect();
            subsets.into_iter().all(|s| {
                let rows: Vec<usize> = (0..dst.len()).filter(|&a| dst[a].subset == s).collect();
                let cols: Vec<usize> = (0..src.len()).filter(|&b| src[b].subset == s).collect();
                rows.len() == cols.len() && m.select_rows(&rows).select_columns(&cols).rank() == rows.len()
            })
        })
    }

    /// The same map between the underlying complexes of modules.
    pub fn to_chain_map(&self) -> Result<ChainMap<K>> {
        let (s, t) = (self.source.to_complex(), self.target.to_complex());
        ChainMap::new(&s, &t, |i| {
            let m = self.comp(i);
            let comps = Subset::all(self.source.n)
                .map(|f| m.select_rows(&self.target.present(i, f)).select_columns(&self.source.present(i, f)))
                .collect();
            SqHom::new_unchecked(s.term(i).clone(), t.term(i).clone(), comps)
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::Rationals;

    fn lab(s: Subset) -> Label {
        Label::new(s, 0, s, 0)
    }

    /// Koszul complex on two variables: S(-12) → S(-1) ⊕ S(-2) → S.
    fn koszul2() -> SummandComplex<Rationals> {
        let q = Rationals;
        let v = |xs: &[usize]| Subset::from_vertices(xs);
        let terms = vec![vec![lab(v(&[1, 2]))], vec![lab(v(&[1])), lab(v(&[2]))], vec![lab(Subset::EMPTY)]];
        let d0 = Matrix::from_i64_rows(&q, &[&[-1], &[1]]);
        let d1 = Matrix::from_i64_rows(&q, &[&[1, 1]]);
        SummandComplex::new(&q, 2, SummandKind::Free, -2, terms, vec![d0, d1]).unwrap()
    }

    #[test]
    fn koszul_resolves_residue_field() {
        let c = koszul2();
        let h = c.cohomology_dims();
        assert_eq!(h, [(0, Subset::EMPTY, 1)].into_iter().collect());
        assert_eq!(c.to_complex().cohomology_dims(), h);
        assert!(c.is_minimal());
        assert_eq!(c.minimize(), c);
    }

    #[test]
    fn alexander_commutes_with_realization() {
        let c = koszul2();
        let a = c.alexander();
        assert_eq!(a.kind(), SummandKind::Injective);
        assert_eq!(a.alexander(), c);
        assert_eq!(a.to_complex().cohomology_dims(), a.cohomology_dims());
    }

    #[test]
    fn minimize_cancels_units() {
        let q = Rationals;
        let s = lab(Subset::EMPTY);
        let c = SummandComplex::new(&q, 1, SummandKind::Free, 0, vec![vec![s], vec![s]], vec![Matrix::identity(&q, 1)]).unwrap();
        assert!(!c.is_minimal());
        assert!(c.minimize().is_zero());
    }

    #[test]
    fn rejects_impossible_entry() {
        let q = Rationals;
        let terms = vec![vec![lab(Subset::EMPTY)], vec![lab(Subset::from_vertices(&[1]))]];
        let r = SummandComplex::new(&q, 1, SummandKind::Free, 0, terms, vec![Matrix::identity(&q, 1)]);
        assert!(r.is_err());
    }

    #[test]
    fn koszul_is_its_own_zero_strand() {
        let c = koszul2();
        assert_eq!(c.linear_strand(0).unwrap(), c);
        assert!(c.linear_strand(1).unwrap().is_zero());
    }
}

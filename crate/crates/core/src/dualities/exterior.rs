use crate::boolcomb::{alpha, beta_sign, Subset};
use crate::dualities::functor_f;
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::sqcomplex::{Label, SqComplex, SummandComplex, SummandKind, SummandMap};
use crate::sqmod::{SqHom, SqModule};

/// A squarefree module over the exterior algebra: a space `N_{-F}` for each
/// `F` and the action `e_i: N_{-F} → N_{-(F∪{i})}` for `i ∉ F`, with
/// `e_i e_j = -e_j e_i`.
#[derive(Clone, PartialEq, Debug)]
pub struct SqEModule<K: Field> {
    field: K,
    n: usize,
    dims: Vec<usize>,
    emaps: Vec<Matrix<K>>,
}

impl<K: Field> SqEModule<K> {
    pub fn new(field: &K, n: usize, dims: Vec<usize>, mut emap: impl FnMut(Subset, usize) -> Matrix<K>) -> Result<Self> {
        if dims.len() != 1 << n {
            return Err(Error::Invalid(format!("expected {} dims, got {}", 1 << n, dims.len())));
        }
        let mut emaps = Vec::with_capacity((1 << n) * n);
        for f in Subset::all(n) {
            for i in 0..n {
                emaps.push(if f.contains(i) { Matrix::zeros(field, 0, 0) } else { emap(f, i) });
            }
        }
        let m = SqEModule { field: field.clone(), n, dims, emaps };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        let n = self.n;
        for f in Subset::all(n) {
            for i in (0..n).filter(|&i| !f.contains(i)) {
                if self.emap(f, i).shape() != (self.dim(f.with(i)), self.dim(f)) {
                    return Err(Error::Invalid(format!("e{} at {f} has the wrong shape", i + 1)));
                }
            }
        }
        for f in Subset::all(n) {
            for i in 0..n {
                for j in i + 1..n {
                    if f.contains(i) || f.contains(j) {
                        continue;
                    }
                    let a = self.emap(f.with(i), j).mul(self.emap(f, i));
                    let b = self.emap(f.with(j), i).mul(self.emap(f, j));
                    if a != b.neg() {
                        return Err(Error::Invalid(format!("e{} e{} ≠ -e{} e{} at {f}", j + 1, i + 1, i + 1, j + 1)));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn field(&self) -> &K {
        &self.field
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `dim N_{-F}`.
    pub fn dim(&self, f: Subset) -> usize {
        self.dims[f.index()]
    }

    pub fn emap(&self, f: Subset, i: usize) -> &Matrix<K> {
        &self.emaps[f.index() * self.n + i]
    }
}

/// `N_{-F} = M_F` with `e_i` acting as `(-1)^{α(i,F)} x_i`.
pub fn to_exterior<K: Field>(m: &SqModule<K>) -> SqEModule<K> {
    let k = m.field();
    let n = m.n();
    let mut emaps = Vec::with_capacity((1 << n) * n);
    for f in Subset::all(n) {
        for i in 0..n {
            emaps.push(if f.contains(i) { Matrix::zeros(k, 0, 0) } else { m.map(f, i).scale(&k.sign(alpha(i, f) as i64)) });
        }
    }
    let e = SqEModule { field: k.clone(), n, dims: m.dims().to_vec(), emaps };
    debug_assert!(e.validate().is_ok());
    e
}

/// Inverse of [`to_exterior`].
pub fn to_symmetric<K: Field>(e: &SqEModule<K>) -> SqModule<K> {
    let k = &e.field;
    SqModule::new_unchecked(k, e.n, e.dims.clone(), |f, i| e.emap(f, i).scale(&k.sign(alpha(i, f) as i64)))
}

/// A bounded complex of squarefree exterior modules; `diffs[k][F]` maps
/// `terms[k]_{-F}` to `terms[k+1]_{-F}`.
#[derive(Clone, PartialEq, Debug)]
pub struct SqEComplex<K: Field> {
    field: K,
    n: usize,
    min_deg: i64,
    terms: Vec<SqEModule<K>>,
    diffs: Vec<Vec<Matrix<K>>>,
}

impl<K: Field> SqEComplex<K> {
    pub fn new(field: &K, n: usize, min_deg: i64, terms: Vec<SqEModule<K>>, diffs: Vec<Vec<Matrix<K>>>) -> Result<Self> {
        if diffs.len() != terms.len().saturating_sub(1) {
            return Err(Error::Invalid("exterior complex has the wrong number of differentials".into()));
        }
        for (t, d) in diffs.iter().enumerate() {
            let (s, r) = (&terms[t], &terms[t + 1]);
            for f in Subset::all(n) {
                if d[f.index()].shape() != (r.dim(f), s.dim(f)) {
                    return Err(Error::Invalid("exterior differential has the wrong shape".into()));
                }
                for i in (0..n).filter(|&i| !f.contains(i)) {
                    if r.emap(f, i).mul(&d[f.index()]) != d[f.with(i).index()].mul(s.emap(f, i)) {
                        return Err(Error::Invalid(format!("exterior differential does not commute with e{}", i + 1)));
                    }
                }
            }
            if t > 0 {
                for f in Subset::all(n) {
                    if !d[f.index()].mul(&diffs[t - 1][f.index()]).is_zero() {
                        return Err(Error::Invalid("δ∘δ ≠ 0 in exterior complex".into()));
                    }
                }
            }
        }
        Ok(SqEComplex { field: field.clone(), n, min_deg, terms, diffs })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        let lo = self.min_deg;
        lo..lo + self.terms.len() as i64
    }

    pub fn term(&self, j: i64) -> Option<&SqEModule<K>> {
        let k = j - self.min_deg;
        (0..self.terms.len() as i64).contains(&k).then(|| &self.terms[k as usize])
    }

    pub fn diff(&self, j: i64, f: Subset) -> Option<&Matrix<K>> {
        let k = j - self.min_deg;
        (0..self.diffs.len() as i64).contains(&k).then(|| &self.diffs[k as usize][f.index()])
    }
}

/// [`to_exterior`] termwise; differentials are unchanged.
pub fn to_exterior_cx<K: Field>(c: &SqComplex<K>) -> SqEComplex<K> {
    let n = c.n();
    let terms: Vec<SqEModule<K>> = c.degrees().map(|j| to_exterior(c.term(j))).collect();
    let diffs = c
        .degrees()
        .take(terms.len().saturating_sub(1))
        .map(|j| Subset::all(n).map(|f| c.diff_comp(j, f)).collect())
        .collect();
    let min = c.degree_range().map_or(0, |r| r.0);
    SqEComplex::new(c.field(), n, min, terms, diffs).expect("sign twist keeps a complex")
}

/// Termwise inverse of [`to_exterior_cx`].
pub fn to_symmetric_cx<K: Field>(e: &SqEComplex<K>) -> SqComplex<K> {
    let n = e.n;
    let terms: Vec<SqModule<K>> = e.terms.iter().map(to_symmetric).collect();
    let diffs = e
        .diffs
        .iter()
        .enumerate()
        .map(|(t, d)| SqHom::new_unchecked(terms[t].clone(), terms[t + 1].clone(), d.clone()))
        .collect();
    SqComplex::new_unchecked(&e.field, n, e.min_deg, terms, diffs)
}

/// Summands `(j, F, b)` at degree `j + |F|` with label `F^c`, ordered by
/// `j`, `F`, `b` within each degree.
fn linear_labels<K: Field>(e: &SqEComplex<K>) -> (i64, Vec<Vec<Label>>) {
    let n = e.n;
    let mut all = Vec::new();
    for j in e.degrees() {
        let t = e.term(j).expect("degree in range");
        for f in Subset::all(n) {
            for b in 0..t.dim(f) {
                all.push((j + f.len() as i64, Label::new(f.complement(n), j, f, b)));
            }
        }
    }
    let Some(lo) = all.iter().map(|x| x.0).min() else {
        return (0, vec![]);
    };
    let hi = all.iter().map(|x| x.0).max().unwrap_or(lo);
    let mut terms = vec![Vec::new(); (hi - lo + 1) as usize];
    for (t, l) in all {
        terms[(t - lo) as usize].push(l);
    }
    (lo, terms)
}

/// Shared builder for `L` and `DF`: internal entries come from `e_l` with
/// an extra sign `(-1)^{internal(t)}`, cross entries from `δ` with
/// `(-1)^{cross(t)}`.
fn linear_complex<K: Field>(e: &SqEComplex<K>, internal: impl Fn(i64) -> i64, cross: impl Fn(i64) -> i64) -> SummandComplex<K> {
    let (k, n) = (&e.field, e.n);
    let (lo, terms) = linear_labels(e);
    if terms.is_empty() {
        return SummandComplex::zero(k, n, SummandKind::Free);
    }
    SummandComplex::from_rule(k, n, SummandKind::Free, lo, terms, |t, src, dst| {
        let f = src.origin;
        if dst.deg == src.deg {
            let d = dst.origin.minus(f);
            if f.is_subset_of(dst.origin) && d.len() == 1 {
                let l = d.indices().next().expect("one variable");
                let m = e.term(src.deg).expect("degree in range").emap(f, l);
                return k.mul(&k.sign(internal(t)), m.get(dst.index, src.index));
            }
            k.zero()
        } else if dst.deg == src.deg + 1 && dst.origin == f {
            match e.diff(src.deg, f) {
                Some(d) => k.mul(&k.sign(cross(t)), d.get(dst.index, src.index)),
                None => k.zero(),
            }
        } else {
            k.zero()
        }
    })
}

/// BGG's `L` on a complex of squarefree exterior modules: the block for
/// `N^j_{-F}` is `S(-F^c)` at degree `j + |F|`, with differential
/// `Σ_l x_l ⊗ e_l + (-1)^t δ`.
pub fn bgg_l<K: Field>(e: &SqEComplex<K>) -> SummandComplex<K> {
    linear_complex(e, |_| 0, |t| t)
}

/// The Koszul-duality complex `DF(C)`, with `Λe_{F^c}` realized as
/// `S(-F^c)`: internal sign `(-1)^{t+α(l,F)}`, cross sign `+1`. Also
/// returns the isomorphism `(-1)^{β(t-1)}` onto [`functor_f`]`(C)`.
pub fn koszul_df<K: Field>(c: &SqComplex<K>) -> Result<(SummandComplex<K>, SummandMap<K>)> {
    let k = c.field();
    let e = to_exterior_cx(c);
    // e_l already carries (-1)^{α(l,F)}
    let df = linear_complex(&e, |t| t, |_| 0);
    let f = functor_f(c);
    let map = SummandMap::new(&df, &f, |t| {
        let len = df.labels(t).len();
        Matrix::identity(k, len).scale(&k.sign(beta_sign(t - 1) as i64))
    })?;
    let bad = map.non_commuting_degrees();
    if !bad.is_empty() {
        return Err(Error::Internal(format!("Koszul sign map fails to commute at degrees {bad:?}")));
    }
    Ok((df, map))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, Rationals};

    #[test]
    fn exterior_round_trip() {
        let q = Rationals;
        let s = SqModule::free_module(&q, 3, Subset::EMPTY);
        let e = to_exterior(&s);
        assert!(e.validate().is_ok());
        assert_eq!(to_symmetric(&e), s);
    }

    #[test]
    fn sign_table_n2() {
        let q = Rationals;
        let e = to_exterior(&SqModule::free_module(&q, 2, Subset::EMPTY));
        let e1 = Subset::from_indices(&[0]);
        let e2 = Subset::from_indices(&[1]);
        let e2e1 = e.emap(e1, 1).mul(e.emap(Subset::EMPTY, 0));
        let e1e2 = e.emap(e2, 0).mul(e.emap(Subset::EMPTY, 1));
        assert_eq!(e2e1, Matrix::from_i64_rows(&q, &[&[-1]]));
        assert_eq!(e1e2, Matrix::from_i64_rows(&q, &[&[1]]));
    }

    #[test]
    fn l_of_small_modules() {
        let k = PrimeField::new(7).unwrap();
        let n = 3;
        let omega = SqComplex::from_module(&SqModule::free_module(&k, n, Subset::full(n)), 0);
        assert_eq!(bgg_l(&to_exterior_cx(&omega)).summand_table(), [(3, Subset::EMPTY, 1)].into_iter().collect());
        let kk = SqComplex::from_module(&SqModule::simple_module(&k, n, Subset::EMPTY), 0);
        assert_eq!(bgg_l(&to_exterior_cx(&kk)).summand_table(), [(0, Subset::full(n), 1)].into_iter().collect());
        assert_eq!(bgg_l(&to_exterior_cx(&omega)), functor_f(&omega));
    }

    #[test]
    fn df_examples() {
        let q = Rationals;
        let f = Subset::from_vertices(&[1, 3]);
        let c = SqComplex::from_module(&SqModule::simple_module(&q, 3, f), 0);
        let (df, map) = koszul_df(&c).unwrap();
        assert_eq!(df.summand_table(), [(2, f.complement(3), 1)].into_iter().collect());
        assert!(map.is_iso());
        let (z, _) = koszul_df(&SqComplex::zero(&q, 2)).unwrap();
        assert!(z.is_zero());
    }
}

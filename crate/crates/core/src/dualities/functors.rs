use crate::boolcomb::{alpha, Subset};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::sqcomplex::{Label, SqComplex, SummandComplex, SummandKind};
use crate::sqmod::{SqHom, SqModule};

/// Alexander dual of a module: `A(M)_F = (M_{F^c})^*`, and `x_i` on `A(M)`
/// from `F` is the transpose of `x_i` on `M` from `F^c ∖ {i}`.
pub fn alexander<K: Field>(m: &SqModule<K>) -> SqModule<K> {
    let n = m.n();
    let dims = Subset::all(n).map(|f| m.dim(f.complement(n))).collect();
    SqModule::new_unchecked(m.field(), n, dims, |f, i| m.map(f.complement(n).without(i), i).transpose())
}

/// Alexander dual of a complex: `A(C)^i = A(C^{-i})`, with differential
/// `A(C)^i → A(C)^{i+1}` the transpose of `δ^{-i-1}` (no sign).
pub fn alexander_cx<K: Field>(c: &SqComplex<K>) -> SqComplex<K> {
    let (k, n) = (c.field(), c.n());
    let Some((lo, hi)) = c.degree_range() else {
        return SqComplex::zero(k, n);
    };
    let terms: Vec<SqModule<K>> = (-hi..=-lo).map(|i| alexander(c.term(-i))).collect();
    let diffs = (-hi..-lo)
        .map(|i| {
            let d = c.diff_or_zero(-i - 1);
            let comps = Subset::all(n).map(|f| d.comp(f.complement(n)).transpose()).collect();
            let a = (i + hi) as usize;
            SqHom::new_unchecked(terms[a].clone(), terms[a + 1].clone(), comps)
        })
        .collect();
    SqComplex::new_unchecked(k, n, -hi, terms, diffs)
}

/// One summand per basis vector of every `C^j_F`, placed at degree
/// `degree(j, F)` with label subset `subset(F)`. Within a degree, summands
/// are ordered by `j`, then `F` (bitmask), then basis index.
fn dual_summands<K: Field>(
    c: &SqComplex<K>,
    degree: impl Fn(i64, Subset) -> i64,
    subset: impl Fn(Subset) -> Subset,
) -> (i64, Vec<Vec<Label>>) {
    let mut all: Vec<(i64, Label)> = Vec::new();
    for j in c.degrees() {
        for f in Subset::all(c.n()) {
            for b in 0..c.term(j).dim(f) {
                all.push((degree(j, f), Label::new(subset(f), j, f, b)));
            }
        }
    }
    let Some(lo) = all.iter().map(|e| e.0).min() else {
        return (0, vec![]);
    };
    let hi = all.iter().map(|e| e.0).max().unwrap_or(lo);
    let mut terms = vec![Vec::new(); (hi - lo + 1) as usize];
    for (t, l) in all {
        terms[(t - lo) as usize].push(l);
    }
    (lo, terms)
}

/// The single variable in `big ∖ small` when `small ⊂ big` differ by one.
fn added_variable(small: Subset, big: Subset) -> Option<usize> {
    let d = big.minus(small);
    (small.is_subset_of(big) && d.len() == 1).then(|| d.indices().next().expect("one element"))
}

/// The explicit dualizing complex `D(C)`: for each `(j, F)` the block
/// `(C^j_F)^* ⊗ S/P_F` at degree `t = -|F| - j`. From the summand of basis
/// vector `b` of `C^j_F`, the component to `(j, F∖{l}, a)` is
/// `(-1)^{α(l,F)} (x_l)_{ba}` and the component to `(j-1, F, a)` is
/// `(-1)^t (δ^{j-1}_F)_{ba}`.
pub fn dualize_d<K: Field>(c: &SqComplex<K>) -> SummandComplex<K> {
    let (k, n) = (c.field(), c.n());
    let (lo, terms) = dual_summands(c, |j, f| -(f.len() as i64) - j, |f| f);
    if terms.is_empty() {
        return SummandComplex::zero(k, n, SummandKind::Injective);
    }
    SummandComplex::from_rule(k, n, SummandKind::Injective, lo, terms, |t, src, dst| {
        let f = src.origin;
        if dst.deg == src.deg {
            match added_variable(dst.origin, f) {
                Some(l) => {
                    let v = c.term(src.deg).map(dst.origin, l);
                    k.mul(&k.sign(alpha(l, dst.origin) as i64), v.get(src.index, dst.index))
                }
                None => k.zero(),
            }
        } else if dst.deg == src.deg - 1 && dst.origin == f {
            match c.diff(dst.deg) {
                Some(d) => k.mul(&k.sign(t), d.comp(f).get(src.index, dst.index)),
                None => k.zero(),
            }
        } else {
            k.zero()
        }
    })
}

/// The explicit free complex `F(C)`: for each `(j, F)` the block
/// `(C^j_F)° ⊗ S(-F^c)` at degree `t = |F| + j`. From the summand of basis
/// vector `b` of `C^j_F`, the component to `(j, F∪{l}, a)` is
/// `(-1)^{α(l,F)} (x_l)_{ab}` and the component to `(j+1, F, a)` is
/// `(-1)^t (δ^j_F)_{ab}`.
pub fn functor_f<K: Field>(c: &SqComplex<K>) -> SummandComplex<K> {
    let (k, n) = (c.field(), c.n());
    let (lo, terms) = dual_summands(c, |j, f| f.len() as i64 + j, |f| f.complement(n));
    if terms.is_empty() {
        return SummandComplex::zero(k, n, SummandKind::Free);
    }
    SummandComplex::from_rule(k, n, SummandKind::Free, lo, terms, |t, src, dst| {
        let f = src.origin;
        if dst.deg == src.deg {
            match added_variable(f, dst.origin) {
                Some(l) => {
                    let v = c.term(src.deg).map(f, l);
                    k.mul(&k.sign(alpha(l, f) as i64), v.get(dst.index, src.index))
                }
                None => k.zero(),
            }
        } else if dst.deg == src.deg + 1 && dst.origin == f {
            match c.diff(src.deg) {
                Some(d) => k.mul(&k.sign(t), d.comp(f).get(dst.index, src.index)),
                None => k.zero(),
            }
        } else {
            k.zero()
        }
    })
}

/// `Hom(P, ω_S[n])` for a complex of free summands: degree `i` holds the
/// summands of `P^{-i-n}` with complemented label (`Hom(S(-F), ω_S) =
/// S(-F^c)`), and the differential at `i` is `(-1)^i` times the transpose
/// of `d_P^{-i-n-1}`.
pub fn hom_to_omega<K: Field>(p: &SummandComplex<K>) -> Result<SummandComplex<K>> {
    if p.kind() != SummandKind::Free {
        return Err(Error::Invalid("Hom into the canonical module needs a free complex".into()));
    }
    let (k, n) = (p.field(), p.n());
    let Some((lo, hi)) = p.degree_range() else {
        return Ok(SummandComplex::zero(k, n, SummandKind::Free));
    };
    let nn = n as i64;
    let (a, b) = (-hi - nn, -lo - nn);
    let terms = (a..=b)
        .map(|i| p.labels(-i - nn).iter().map(|l| Label { subset: l.subset.complement(n), ..*l }).collect())
        .collect();
    let diffs: Vec<Matrix<K>> = (a..b).map(|i| p.diff(-i - nn - 1).transpose().scale(&k.sign(i))).collect();
    SummandComplex::new(k, n, SummandKind::Free, a, terms, diffs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolcomb::SimplicialComplex;
    use crate::exactla::{PrimeField, Rationals};
    use crate::sqcomplex::{minimal_projective_resolution, GradedTable};

    fn v(xs: &[usize]) -> Subset {
        Subset::from_vertices(xs)
    }

    #[test]
    fn alexander_examples() {
        let q = Rationals;
        for f in Subset::all(3) {
            let a = alexander(&SqModule::free_module(&q, 3, f));
            assert_eq!(a, SqModule::quotient_prime(&q, 3, f.complement(3)));
            assert_eq!(alexander(&SqModule::simple_module(&q, 3, f)), SqModule::simple_module(&q, 3, f.complement(3)));
        }
        let two = SimplicialComplex::from_facets(2, &[v(&[1]), v(&[2])]).unwrap();
        let a = alexander(&SqModule::stanley_reisner_ring(&q, &two));
        let dual = SimplicialComplex::empty_face(2);
        assert_eq!(a, SqModule::stanley_reisner_ideal(&q, &dual));
    }

    #[test]
    fn d_of_free_and_prime() {
        let k = PrimeField::new(101).unwrap();
        let n = 3;
        for f in Subset::all(n) {
            // D(S(-F)) has cohomology S(-F^c) in degree -n
            let d = dualize_d(&SqComplex::from_module(&SqModule::free_module(&k, n, f), 0));
            let want = SqComplex::from_module(&SqModule::free_module(&k, n, f.complement(n)), -(n as i64));
            assert_eq!(d.cohomology_dims(), want.cohomology_dims());
            // D(S/P_G) has cohomology (S/P_G)(-G) in degree -|G|
            let d = dualize_d(&SqComplex::from_module(&SqModule::quotient_prime(&k, n, f), 0));
            let want: GradedTable = [(-(f.len() as i64), f, 1)].into_iter().collect();
            assert_eq!(d.cohomology_dims(), want);
        }
    }

    #[test]
    fn f_of_canonical_module() {
        let q = Rationals;
        let omega = SqModule::free_module(&q, 3, Subset::full(3));
        let f = functor_f(&SqComplex::from_module(&omega, 0));
        assert_eq!(f.summand_table(), [(3, Subset::EMPTY, 1)].into_iter().collect());
    }

    #[test]
    fn hom_to_omega_of_koszul() {
        let q = Rationals;
        let (p, _) = minimal_projective_resolution(&SqModule::simple_module(&q, 2, Subset::EMPTY));
        let h = hom_to_omega(&p).unwrap();
        assert_eq!(h.cohomology_dims(), [(0, Subset::EMPTY, 1)].into_iter().collect());
        let free = SummandComplex::new(&q, 2, SummandKind::Free, 0, vec![vec![Label::new(v(&[1]), 0, v(&[1]), 0)]], vec![]).unwrap();
        assert_eq!(hom_to_omega(&free).unwrap().summand_table(), [(-2, v(&[2]), 1)].into_iter().collect());
    }

    #[test]
    fn dual_functors_on_modules_agree() {
        let q = Rationals;
        let path = SimplicialComplex::from_facets(3, &[v(&[1, 2]), v(&[2, 3])]).unwrap();
        let c = SqComplex::from_module(&SqModule::stanley_reisner_ring(&q, &path), 0);
        assert_eq!(functor_f(&c), dualize_d(&c).alexander());
    }
}

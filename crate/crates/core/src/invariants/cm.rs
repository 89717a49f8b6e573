use crate::dualities::{alexander, functor_f};
use crate::exactla::Field;
use crate::invariants::{ext, ext_module_table, ext_table, krull_dim};
use crate::sqcomplex::{minimal_projective_resolution, SqComplex, SummandComplex};
use crate::sqmod::SqModule;

/// `Ext^i(M, ω_S) ≠ 0` for at most one `i`, namely `i = n - dim M`.
pub fn is_cohen_macaulay<K: Field>(m: &SqModule<K>) -> bool {
    let Some(d) = krull_dim(m) else {
        return true;
    };
    let t = ext_table(&SqComplex::from_module(m, 0));
    t.degree_range() == Some(((m.n() - d) as i64, (m.n() - d) as i64))
}

/// Every nonzero `Ext^i(M, ω_S)` is Cohen-Macaulay of dimension `n - i`.
pub fn is_sequentially_cm<K: Field>(m: &SqModule<K>) -> bool {
    let n = m.n() as i64;
    ext_module_table(&SqComplex::from_module(m, 0))
        .iter()
        .all(|(&i, e)| is_cohen_macaulay(e) && krull_dim(e).map(|d| d as i64) == Some(n - i))
}

/// Every linear strand of the minimal free resolution has cohomology only
/// in degree 0.
pub fn is_componentwise_linear<K: Field>(m: &SqModule<K>) -> bool {
    let (p, _) = minimal_projective_resolution(m);
    let strands: std::collections::BTreeSet<i64> =
        p.degrees().flat_map(|j| p.labels(j).iter().map(move |l| l.subset.len() as i64 + j)).collect();
    strands.into_iter().all(|i| {
        let s = p.linear_strand(i).expect("minimal free resolution");
        s.cohomology_dims().iter().all(|(t, _, _)| t == 0)
    })
}

/// The `i`-linear strand of the minimal resolution of `M`, and
/// `F(Ext^i(A(M), ω_S))[n-i]`.
pub fn strand_theorem_sides<K: Field>(m: &SqModule<K>, i: i64) -> (SummandComplex<K>, SummandComplex<K>) {
    let (p, _) = minimal_projective_resolution(m);
    let strand = p.linear_strand(i).expect("minimal free resolution");
    let e = ext(&SqComplex::from_module(&alexander(m), 0), i);
    let rhs = functor_f(&SqComplex::from_module(&e, 0)).translate(m.n() as i64 - i);
    (strand, rhs)
}

/// Both sides of the strand isomorphism have the same summands per
/// `(degree, subset)` and the same cohomology dimensions.
pub fn strand_theorem_check<K: Field>(m: &SqModule<K>, i: i64) -> bool {
    let (lhs, rhs) = strand_theorem_sides(m, i);
    lhs.summand_table() == rhs.summand_table() && lhs.cohomology_dims() == rhs.cohomology_dims()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolcomb::{SimplicialComplex, Subset};
    use crate::exactla::{PrimeField, Rationals};

    fn v(xs: &[usize]) -> Subset {
        Subset::from_vertices(xs)
    }

    fn sr(n: usize, facets: &[&[usize]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(n, &facets.iter().map(|f| v(f)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn cohen_macaulay_examples() {
        let q = Rationals;
        for f in Subset::all(3) {
            assert!(is_cohen_macaulay(&SqModule::quotient_prime(&q, 3, f)));
        }
        let path = sr(3, &[&[1, 2], &[2, 3]]);
        assert!(is_cohen_macaulay(&SqModule::stanley_reisner_ring(&q, &path)));
        let edges = sr(4, &[&[1, 2], &[3, 4]]);
        let m = SqModule::stanley_reisner_ring(&q, &edges);
        assert!(!is_cohen_macaulay(&m));
        assert_eq!(ext_table(&SqComplex::from_module(&m, 0)).degree_range(), Some((2, 3)));
        assert!(is_cohen_macaulay(&SqModule::zero(&q, 2)));
    }

    #[test]
    fn sequentially_cm_examples() {
        let q = Rationals;
        let n = 2;
        let s = SqModule::free_module(&q, n, Subset::EMPTY);
        let k = SqModule::simple_module(&q, n, Subset::EMPTY);
        assert!(is_sequentially_cm(&s));
        let sum = SqModule::direct_sum(&q, n, &[&s, &k]).unwrap();
        assert!(!is_cohen_macaulay(&sum));
        assert!(is_sequentially_cm(&sum));
        // an edge plus an isolated vertex is sequentially CM but not CM
        let mixed = sr(3, &[&[1, 2], &[3]]);
        let m = SqModule::stanley_reisner_ring(&q, &mixed);
        assert!(!is_cohen_macaulay(&m));
        assert!(is_sequentially_cm(&m));
    }

    #[test]
    fn non_sequentially_cm_at_n4() {
        // two disjoint edges: the pure disconnected complex is not
        // sequentially CM, and its dual ideal is not componentwise linear
        let k = PrimeField::new(101).unwrap();
        let edges = sr(4, &[&[1, 2], &[3, 4]]);
        let m = SqModule::stanley_reisner_ring(&k, &edges);
        assert!(!is_sequentially_cm(&m));
        assert!(!is_componentwise_linear(&alexander(&m)));
    }

    #[test]
    fn componentwise_linear_examples() {
        let q = Rationals;
        let n = 3;
        assert!(is_componentwise_linear(&SqModule::free_module(&q, n, v(&[1, 2]))));
        // the maximal ideal is the Stanley-Reisner ideal of {∅}
        let maximal = SqModule::stanley_reisner_ideal(&q, &SimplicialComplex::empty_face(n));
        assert!(is_componentwise_linear(&maximal));
    }

    #[test]
    fn roemer_equivalence_n4() {
        let k = PrimeField::new(101).unwrap();
        for d in SimplicialComplex::enumerate_all(4) {
            for m in [SqModule::stanley_reisner_ring(&k, &d), SqModule::stanley_reisner_ideal(&k, &d)] {
                assert_eq!(is_componentwise_linear(&m), is_sequentially_cm(&alexander(&m)), "{d:?}");
            }
        }
    }

    #[test]
    fn strand_theorem_examples() {
        let q = Rationals;
        let k = SqModule::simple_module(&q, 2, Subset::EMPTY);
        let (lhs, rhs) = strand_theorem_sides(&k, 0);
        let koszul: crate::sqcomplex::GradedTable =
            Subset::all(2).map(|f| (-(f.len() as i64), f, 1)).collect();
        assert_eq!(lhs.summand_table(), koszul);
        assert_eq!(rhs.summand_table(), koszul);
        assert!(strand_theorem_check(&k, 0));
        let f = v(&[1, 3]);
        assert!(strand_theorem_check(&SqModule::free_module(&q, 3, f), 2));
        // (x1x2, x2x3)
        let ideal = SqModule::stanley_reisner_ideal(&q, &sr(3, &[&[1, 3], &[2]]));
        for i in 0..=4 {
            assert!(strand_theorem_check(&ideal, i), "i = {i}");
        }
    }

    #[test]
    fn strand_theorem_on_all_n3() {
        let k = PrimeField::new(101).unwrap();
        for d in SimplicialComplex::enumerate_all(3) {
            for m in [SqModule::stanley_reisner_ring(&k, &d), SqModule::stanley_reisner_ideal(&k, &d)] {
                for i in 0..=4 {
                    assert!(strand_theorem_check(&m, i), "{d:?} i = {i}");
                }
            }
        }
    }
}

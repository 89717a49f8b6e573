use crate::boolcomb::Subset;
use crate::dualities::{alexander_cx, dualize_d};
use crate::exactla::Field;
use crate::sqcomplex::{BassTable, BettiTable, GradedTable, SqComplex};

/// `dim H^t(D(C))_F` for all `t, F`, via the minimized dualizing complex.
pub fn dual_cohomology<K: Field>(c: &SqComplex<K>) -> GradedTable {
    dualize_d(c).minimize().cohomology_dims()
}

/// All Betti numbers: `β_i(F, C) = dim H^{|F|-i-n}(D(A(C)))_{F^c}`.
pub fn betti_table<K: Field>(c: &SqComplex<K>) -> BettiTable {
    let n = c.n();
    dual_cohomology(&alexander_cx(c))
        .iter()
        .map(|(t, g, v)| {
            let f = g.complement(n);
            (f.len() as i64 - n as i64 - t, f, v)
        })
        .collect()
}

pub fn betti<K: Field>(c: &SqComplex<K>, i: i64, f: Subset) -> usize {
    betti_table(c).get(i, f)
}

/// All Bass numbers in the category of squarefree modules:
/// `μ̄^i(F, C) = dim H^{-|F|-i}(D(C))_F`.
pub fn bass_table<K: Field>(c: &SqComplex<K>) -> BassTable {
    dual_cohomology(c).iter().map(|(t, f, v)| (-(f.len() as i64) - t, f, v)).collect()
}

pub fn bass<K: Field>(c: &SqComplex<K>, i: i64, f: Subset) -> usize {
    bass_table(c).get(i, f)
}

/// Bass numbers at the maximal ideal, `μ^i(m, C)_F = β_i(F, D(C))`.
pub fn bass_maximal_table<K: Field>(c: &SqComplex<K>) -> BassTable {
    betti_table(&dualize_d(c).minimize().to_complex())
}

pub fn bass_maximal<K: Field>(c: &SqComplex<K>, i: i64, f: Subset) -> usize {
    bass_maximal_table(c).get(i, f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolcomb::SimplicialComplex;
    use crate::dualities::alexander;
    use crate::exactla::{PrimeField, Rationals};
    use crate::sqcomplex::{minimal_injective_resolution, minimal_projective_resolution};
    use crate::sqmod::SqModule;

    fn v(xs: &[usize]) -> Subset {
        Subset::from_vertices(xs)
    }

    fn as_cx<K: Field>(m: &SqModule<K>) -> SqComplex<K> {
        SqComplex::from_module(m, 0)
    }

    #[test]
    fn betti_of_free_and_residue_field() {
        let q = Rationals;
        let f = v(&[1, 3]);
        let t = betti_table(&as_cx(&SqModule::free_module(&q, 3, f)));
        assert_eq!(t, [(0, f, 1)].into_iter().collect());
        let k = as_cx(&SqModule::simple_module(&q, 2, Subset::EMPTY));
        let want: GradedTable = [(0, Subset::EMPTY, 1), (1, v(&[1]), 1), (1, v(&[2]), 1), (2, v(&[1, 2]), 1)].into_iter().collect();
        assert_eq!(betti_table(&k), want);
    }

    #[test]
    fn betti_matches_resolution() {
        let k = PrimeField::new(101).unwrap();
        for d in SimplicialComplex::enumerate_all(3) {
            for m in [SqModule::stanley_reisner_ring(&k, &d), SqModule::stanley_reisner_ideal(&k, &d)] {
                let (p, _) = minimal_projective_resolution(&m);
                let from_res: GradedTable = p.summand_table().iter().map(|(deg, f, c)| (-deg, f, c)).collect();
                assert_eq!(betti_table(&as_cx(&m)), from_res, "{d:?}");
                let (inj, _) = minimal_injective_resolution(&m);
                assert_eq!(bass_table(&as_cx(&m)), inj.summand_table(), "{d:?}");
            }
        }
    }

    #[test]
    fn betti_under_translation() {
        let q = Rationals;
        let c = as_cx(&SqModule::simple_module(&q, 2, Subset::EMPTY));
        assert_eq!(betti_table(&c.translate(3)), betti_table(&c).shifted(3));
    }

    #[test]
    fn bass_examples() {
        let q = Rationals;
        let n = 3;
        let f = v(&[2, 3]);
        let t = bass_table(&as_cx(&SqModule::quotient_prime(&q, n, f)));
        assert_eq!(t, [(0, f, 1)].into_iter().collect());
        // μ̄^i(F, D(M)) = dim M_F at i = -|F|
        let two = SimplicialComplex::from_facets(2, &[v(&[1]), v(&[2])]).unwrap();
        let m = SqModule::stanley_reisner_ring(&q, &two);
        let dm = dualize_d(&as_cx(&m)).to_complex();
        let want: GradedTable = Subset::all(2).map(|g| (-(g.len() as i64), g, m.dim(g))).collect();
        assert_eq!(bass_table(&dm), want);
        // and μ̄^i(F, S/I) = β_i(F^c, A(S/I))
        let dual = betti_table(&as_cx(&alexander(&m))).complemented(2);
        assert_eq!(bass_table(&as_cx(&m)), dual);
    }

    #[test]
    fn bass_at_maximal_ideal() {
        let q = Rationals;
        let n = 2;
        let s = as_cx(&SqModule::free_module(&q, n, Subset::EMPTY));
        assert_eq!(bass_maximal_table(&s), [(n as i64, Subset::full(n), 1)].into_iter().collect());
        let k = as_cx(&SqModule::simple_module(&q, n, Subset::EMPTY));
        let t = bass_maximal_table(&k);
        assert_eq!(t.get(0, Subset::EMPTY), 1);
        // Ext^i(k, k) is the exterior algebra
        assert!(Subset::all(n).all(|f| t.get(f.len() as i64, f) == 1));
        assert_eq!(t.len(), 1 << n);
    }
}

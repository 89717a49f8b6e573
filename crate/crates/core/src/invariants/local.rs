use std::collections::BTreeMap;

use crate::boolcomb::{SimplicialComplex, Subset};
use crate::error::{Error, Result};
use crate::exactla::Field;
use crate::invariants::{ext, ext_table, ExtTable};
use crate::sqcomplex::SqComplex;
use crate::sqmod::SqModule;

fn sr_ring<K: Field>(field: &K, delta: &SimplicialComplex) -> SqComplex<K> {
    SqComplex::from_module(&SqModule::stanley_reisner_ring(field, delta), 0)
}

/// `dim H^i_m(S/I_Δ)_{-F} = dim Ext^{n-i}(S/I_Δ, ω_S)_F`.
pub fn hochster<K: Field>(field: &K, delta: &SimplicialComplex, i: i64, f: Subset) -> usize {
    ext(&sr_ring(field, delta), delta.n() as i64 - i).dim(f)
}

/// The whole table `(i, F) ↦ dim H^i_m(S/I_Δ)_{-F}` from one Ext computation.
pub fn hochster_table<K: Field>(field: &K, delta: &SimplicialComplex) -> ExtTable {
    let n = delta.n() as i64;
    ext_table(&sr_ring(field, delta)).iter().map(|(j, f, d)| (n - j, f, d)).collect()
}

/// Independent simplicial side: `dim H̃_{i-|F|-1}(lk_Δ F)`, and 0 if `F ∉ Δ`.
pub fn hochster_via_links<K: Field>(field: &K, delta: &SimplicialComplex, i: i64, f: Subset) -> usize {
    if !delta.contains(f) {
        return 0;
    }
    delta.link(f).reduced_homology(field).get(i - f.len() as i64 - 1)
}

/// The homology index `n - i + |F| + 1` attached to `Ext^i(S/I_Δ, ω_S)_F`
/// in the literature form of the formula. It disagrees with the computed
/// Ext (two points, `i = 1`, `F = ∅`); the index in use is `n - i - |F| - 1`.
pub fn printed_link_index(n: usize, i: i64, f: Subset) -> i64 {
    n as i64 - i + f.len() as i64 + 1
}

/// `dim H^i_{I_Δ}(S)_a`, read from `Ext^i(S/I_Δ, ω_S)` at `{j : a_j ≥ 0}`.
pub fn local_cohomology_hilbert<K: Field>(field: &K, delta: &SimplicialComplex, i: i64, a: &[i64]) -> Result<usize> {
    if a.len() != delta.n() {
        return Err(Error::Invalid(format!("degree has length {}, expected {}", a.len(), delta.n())));
    }
    let shifted: Vec<i64> = a.iter().map(|x| x + 1).collect();
    ext(&sr_ring(field, delta), i).graded_dim(&shifted, true)
}

/// Multiplicities of `H^i_{I_Δ}(S)` at the involutive primes `Q_F`, keyed
/// by `F`. The multiplicities are meaningful in characteristic zero only;
/// over `GF(p)` the numbers are still computed and `warning` is set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharCycle {
    pub multiplicities: BTreeMap<Subset, usize>,
    pub warning: Option<String>,
}

impl CharCycle {
    pub fn get(&self, f: Subset) -> usize {
        self.multiplicities.get(&f).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.multiplicities.is_empty()
    }
}

pub fn char_cycle<K: Field>(field: &K, delta: &SimplicialComplex, i: i64) -> CharCycle {
    let e = ext(&sr_ring(field, delta), i);
    let multiplicities = e.support().map(|f| (f, e.dim(f))).collect();
    let p = field.tag().characteristic();
    let warning = (p != 0).then(|| format!("characteristic cycles assume characteristic 0; computed over GF({p})"));
    CharCycle { multiplicities, warning }
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

    fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::from_facets(3, &[v(&[1, 2]), v(&[1, 3]), v(&[2, 3])]).unwrap()
    }

    #[test]
    fn hochster_examples() {
        let q = Rationals;
        assert_eq!(hochster(&q, &two_points(), 1, Subset::EMPTY), 1);
        assert_eq!(hochster(&q, &hollow_triangle(), 2, Subset::EMPTY), 1);
        let simplex = SimplicialComplex::simplex(3);
        for i in 0..3 {
            assert!(Subset::all(3).all(|f| hochster(&q, &simplex, i, f) == 0));
        }
    }

    #[test]
    fn calibrated_index() {
        let q = Rationals;
        let d = two_points();
        let e = ext(&sr_ring(&q, &d), 1).dim(Subset::EMPTY);
        assert_eq!(e, 1);
        let homology = d.link(Subset::EMPTY).reduced_homology(&q);
        assert_eq!(homology.get(2 - 1 - 0 - 1), 1);
        assert_eq!(homology.get(printed_link_index(2, 1, Subset::EMPTY)), 0);
    }

    #[test]
    fn hochster_against_links_n4() {
        let k = PrimeField::new(101).unwrap();
        for d in SimplicialComplex::enumerate_all(4) {
            let t = hochster_table(&k, &d);
            for i in -1..=5 {
                for f in Subset::all(4) {
                    assert_eq!(t.get(i, f), hochster_via_links(&k, &d, i, f), "{d:?} i={i} F={f:?}");
                }
            }
        }
    }

    #[test]
    fn local_cohomology_examples() {
        let q = Rationals;
        let d = two_points();
        assert_eq!(local_cohomology_hilbert(&q, &d, 1, &[-3, -5]).unwrap(), 1);
        assert_eq!(local_cohomology_hilbert(&q, &d, 1, &[1, 1]).unwrap(), ext(&sr_ring(&q, &d), 1).dim(Subset::full(2)));
        let simplex = SimplicialComplex::simplex(2);
        assert_eq!(local_cohomology_hilbert(&q, &simplex, 1, &[-1, 4]).unwrap(), 0);
        assert!(local_cohomology_hilbert(&q, &d, 1, &[0]).is_err());
    }

    #[test]
    fn char_cycle_examples() {
        let q = Rationals;
        let c = char_cycle(&q, &two_points(), 1);
        let want: BTreeMap<Subset, usize> = [(Subset::EMPTY, 1), (v(&[1]), 1), (v(&[2]), 1)].into_iter().collect();
        assert_eq!(c.multiplicities, want);
        assert!(c.warning.is_none());
        let simplex = SimplicialComplex::simplex(3);
        // I_Δ = 0: only H^0 = S survives, supported on the zero section
        assert_eq!(char_cycle(&q, &simplex, 0).multiplicities, [(Subset::full(3), 1)].into_iter().collect());
        assert!((1..=3).all(|i| char_cycle(&q, &simplex, i).is_empty()));
        // I_Δ = (x1x2x3) is principal: only H^1_I survives
        let c = char_cycle(&q, &hollow_triangle(), 1);
        assert_eq!(c.get(Subset::EMPTY), 1);
        assert!(char_cycle(&q, &hollow_triangle(), 2).is_empty());
        let p = PrimeField::new(101).unwrap();
        let cp = char_cycle(&p, &two_points(), 1);
        assert_eq!(cp.multiplicities, want);
        assert!(cp.warning.is_some());
    }

    #[test]
    fn char_cycle_additive_on_disjoint_union() {
        // Δ = Δ1 ⊔ Δ2 gives 0 → S/I_Δ → S/I_Δ1 ⊕ S/I_Δ2 → k → 0, and k only
        // has Ext in degree n, so the cycles add for i < n - 1
        let q = Rationals;
        let cases: [(usize, &[&[usize]], &[&[usize]]); 3] = [
            (4, &[&[1, 2]], &[&[3, 4]]),
            (3, &[&[1, 2]], &[&[3]]),
            (5, &[&[1, 2], &[2, 3]], &[&[4, 5]]),
        ];
        for (n, a, b) in cases {
            let mk = |fs: &[&[usize]]| SimplicialComplex::from_facets(n, &fs.iter().map(|f| v(f)).collect::<Vec<_>>()).unwrap();
            let (d1, d2) = (mk(a), mk(b));
            let both: Vec<Subset> = d1.facets().into_iter().chain(d2.facets()).collect();
            let d = SimplicialComplex::from_facets(n, &both).unwrap();
            for i in 0..n as i64 - 1 {
                let (c, c1, c2) = (char_cycle(&q, &d, i), char_cycle(&q, &d1, i), char_cycle(&q, &d2, i));
                assert!(Subset::all(n).all(|f| c.get(f) == c1.get(f) + c2.get(f)), "n={n} i={i}");
            }
        }
    }
}

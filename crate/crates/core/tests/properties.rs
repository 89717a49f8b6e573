//! Property tests over seeded random modules, complexes, matrices and
//! simplicial complexes, for both coefficient fields.

use proptest::prelude::*;
use rand_chacha::ChaCha8Rng;
use sqfree::boolcomb::{alpha, alpha_pair, SimplicialComplex, Subset};
use sqfree::corpus::{random_complex, random_hom, random_module, random_presented_module, rng_from_seed};
use sqfree::dualities::{alexander, alexander_cx, bgg_l, dualize_d, functor_f, to_exterior_cx};
use sqfree::exactla::{Field, Matrix, PrimeField, Rationals};
use sqfree::invariants::{ext, is_componentwise_linear, is_sequentially_cm, krull_dim, proj_dim, strand_theorem_check};
use sqfree::io::{
    complex_from_json, complex_to_json, module_from_json, module_to_json, simplicial_from_json, simplicial_to_json, summand_complex_from_json,
    summand_complex_to_json, table_from_json, table_to_json,
};
use sqfree::sqcomplex::{betti_table, minimal_injective_resolution, minimal_projective_resolution, GradedTable, SqComplex};
use sqfree::sqmod::SqModule;
use sqfree::suite::{dadada_cohomology, dadada_map_check, double_dual, koszul_df_check, prop_ext};

fn gf101() -> PrimeField {
    PrimeField::new(101).unwrap()
}

fn module<K: Field>(k: &K, n: usize, rng: &mut ChaCha8Rng) -> SqModule<K> {
    if rand::Rng::gen_bool(rng, 0.5) {
        random_module(k, n, 2, rng)
    } else {
        random_presented_module(k, n, 3, rng)
    }
}

fn cx<K: Field>(m: &SqModule<K>) -> SqComplex<K> {
    SqComplex::from_module(m, 0)
}

fn matrix<K: Field>(k: &K, rows: usize, cols: usize, entries: &[i64]) -> Matrix<K> {
    Matrix::from_fn(k, rows, cols, |r, c| k.from_i64(entries[(r * cols + c) % entries.len()]))
}

fn check_matrix<K: Field>(m: &Matrix<K>) {
    let r = m.rank();
    assert_eq!(r, m.transpose().rank());
    let ker = m.kernel_basis();
    assert_eq!(r + ker.cols(), m.cols());
    assert!(m.mul(&ker).is_zero());
    assert_eq!(m.rref(), m.clone().rref());
}

fn sq_module_laws<K: Field>(k: &K, n: usize, seed: u64) {
    let mut rng = rng_from_seed(seed);
    let (m, nn) = (module(k, n, &mut rng), module(k, n, &mut rng));
    m.validate().unwrap();
    let f = random_hom(&m, &nn, &mut rng);
    f.validate().unwrap();
    let (ker, _) = f.kernel();
    let (coker, pi) = f.cokernel();
    let im = f.image();
    for x in [&ker, &coker, &im] {
        x.validate().unwrap();
    }
    let (ker_pi, _) = pi.kernel();
    assert_eq!(im.dims(), ker_pi.dims());
    for g in Subset::all(n) {
        assert_eq!(ker.dim(g) + im.dim(g), m.dim(g));
    }
}

fn resolution_laws<K: Field>(k: &K, n: usize, seed: u64) {
    let mut rng = rng_from_seed(seed);
    let m = module(k, n, &mut rng);
    let nn = n as i64;
    let (p, _) = minimal_projective_resolution(&m);
    let from_res: GradedTable = p.summand_table().iter().map(|(d, f, v)| (-d, f, v)).collect();
    assert_eq!(betti_table(&cx(&m)), from_res);
    assert!(p.degree_range().is_none_or(|(lo, _)| lo >= -nn));
    let (inj, _) = minimal_injective_resolution(&m);
    assert!(inj.degree_range().is_none_or(|(_, hi)| hi <= nn));
    // the strands together carry the linear part of the differential
    let lin = p.linear_part();
    let mut total = GradedTable::new();
    for i in -nn..=2 * nn {
        let s = p.linear_strand(i).unwrap();
        for (d, f, v) in s.summand_table().iter() {
            total.add(d, f, v);
        }
        for t in s.degrees() {
            let keep = |j: i64| -> Vec<usize> {
                p.labels(j).iter().enumerate().filter(|(_, l)| l.subset.len() as i64 == i - j).map(|(a, _)| a).collect()
            };
            assert_eq!(s.diff(t), lin.diff(t).select_rows(&keep(t + 1)).select_columns(&keep(t)));
        }
    }
    assert_eq!(total, p.summand_table());
}

fn duality_laws<K: Field>(k: &K, n: usize, seed: u64) {
    let mut rng = rng_from_seed(seed);
    let m = module(k, n, &mut rng);
    assert_eq!(alexander(&alexander(&m)), m);
    let c = random_complex(k, n, 2, &mut rng);
    assert_eq!(alexander_cx(&alexander_cx(&c)), c);
    for c in [cx(&m), c] {
        double_dual(&c).unwrap();
        assert_eq!(bgg_l(&to_exterior_cx(&c)), functor_f(&c));
        assert_eq!(functor_f(&c), dualize_d(&c).alexander().twist(|_, l| l.deg));
        koszul_df_check(&c).unwrap();
        dadada_map_check(&c).unwrap();
    }
    assert_eq!(functor_f(&cx(&m)), dualize_d(&cx(&m)).alexander());
    prop_ext(&m).unwrap();
}

fn invariant_laws<K: Field>(k: &K, n: usize, seed: u64) {
    let mut rng = rng_from_seed(seed);
    let m = module(k, n, &mut rng);
    assert_eq!(is_componentwise_linear(&m), is_sequentially_cm(&alexander(&m)));
    for i in -1..=n as i64 + 1 {
        assert!(strand_theorem_check(&m, i));
    }
    let c = cx(&m);
    let min_ext = (0..=n as i64).find(|&i| !ext(&c, i).is_zero());
    assert_eq!(krull_dim(&m), min_ext.map(|i| n - i as usize));
    let (p, _) = minimal_projective_resolution(&m);
    assert_eq!(proj_dim(&m), p.degree_range().map(|(lo, _)| (-lo) as usize));
}

fn json_round_trips<K: Field>(k: &K, n: usize, seed: u64, compact: bool) {
    let mut rng = rng_from_seed(seed);
    let m = module(k, n, &mut rng);
    assert_eq!(module_from_json(k, &module_to_json(&m, compact)).unwrap(), m);
    let c = random_complex(k, n, 2, &mut rng);
    assert_eq!(complex_from_json(k, &complex_to_json(&c, compact)).unwrap(), c);
    let (p, _) = minimal_projective_resolution(&m);
    assert_eq!(summand_complex_from_json(k, &summand_complex_to_json(&p, compact)).unwrap(), p);
    let t = betti_table(&cx(&m));
    assert_eq!(table_from_json(&table_to_json(&t, "i", compact), "i", n).unwrap(), t);
    let d = SimplicialComplex::random(n, &mut rng);
    assert_eq!(simplicial_from_json(&simplicial_to_json(&d)).unwrap(), d);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn matrices(rows in 0usize..7, cols in 0usize..7, entries in prop::collection::vec(-3i64..=3, 1..50)) {
        check_matrix(&matrix(&Rationals, rows, cols, &entries));
        check_matrix(&matrix(&gf101(), rows, cols, &entries));
    }

    #[test]
    fn alpha_counts(n in 1usize..=8, bits in any::<u32>(), j in 0usize..8) {
        let f = Subset::from_indices(&(0..n).filter(|i| bits >> i & 1 == 1).collect::<Vec<_>>());
        prop_assume!(j < n && !f.contains(j));
        let single = Subset::from_indices(&[j]);
        prop_assert_eq!(alpha(j, f) + alpha_pair(f, single), f.len());
    }

    #[test]
    fn simplicial_laws(n in 1usize..=5, seed in any::<u64>()) {
        let d = SimplicialComplex::random(n, &mut rng_from_seed(seed));
        let h = d.reduced_homology(&Rationals);
        let euler: i64 = h.iter().map(|(i, b)| if i.rem_euclid(2) == 0 { b as i64 } else { -(b as i64) }).sum();
        prop_assert_eq!(euler, d.reduced_euler_characteristic());
        if !d.contains(Subset::full(n)) {
            prop_assert_eq!(d.alexander_dual().unwrap().alexander_dual().unwrap(), d.clone());
        }
        let (ring, ideal) = (SqModule::stanley_reisner_ring(&Rationals, &d), SqModule::stanley_reisner_ideal(&Rationals, &d));
        for f in Subset::all(n) {
            prop_assert_eq!(ring.dim(f) + ideal.dim(f), 1);
        }
    }

    #[test]
    fn modules(n in 1usize..=4, seed in any::<u64>()) {
        sq_module_laws(&Rationals, n, seed);
        sq_module_laws(&gf101(), n, seed);
    }

    #[test]
    fn resolutions(n in 1usize..=4, seed in any::<u64>()) {
        resolution_laws(&Rationals, n, seed);
        resolution_laws(&gf101(), n, seed);
    }

    #[test]
    fn dualities(n in 1usize..=4, seed in any::<u64>()) {
        duality_laws(&Rationals, n, seed);
        duality_laws(&gf101(), n, seed);
    }

    #[test]
    fn invariants(n in 1usize..=4, seed in any::<u64>()) {
        invariant_laws(&Rationals, n, seed);
        invariant_laws(&gf101(), n, seed);
    }

    #[test]
    fn json(n in 1usize..=4, seed in any::<u64>(), compact in any::<bool>()) {
        json_round_trips(&Rationals, n, seed, compact);
        json_round_trips(&gf101(), n, seed, compact);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn dadada_in_cohomology(n in 1usize..=3, seed in any::<u64>()) {
        let mut rng = rng_from_seed(seed);
        let c = random_complex(&Rationals, n, 2, &mut rng);
        dadada_cohomology(&c).unwrap();
    }

    #[test]
    fn runs_are_deterministic(n in 1usize..=4, seed in any::<u64>()) {
        let a = module(&Rationals, n, &mut rng_from_seed(seed));
        let b = module(&Rationals, n, &mut rng_from_seed(seed));
        prop_assert_eq!(&a, &b);
        prop_assert_eq!(betti_table(&cx(&a)), betti_table(&cx(&b)));
    }
}

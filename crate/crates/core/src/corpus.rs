//! Seeded random and exhaustive inputs: Stanley-Reisner modules, modules
//! presented by random monomial matrices, random homomorphisms and short
//! complexes.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::boolcomb::{SimplicialComplex, Subset};
use crate::exactla::{Field, Matrix};
use crate::sqcomplex::SqComplex;
use crate::sqmod::{SqHom, SqModule};

pub fn rng_from_seed(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn coefficient<K: Field, R: Rng>(field: &K, rng: &mut R) -> K::Elem {
    field.from_i64(rng.gen_range(-2..=2))
}

/// Free modules, quotients by primes and simple modules at every subset.
pub fn standard_modules<K: Field>(field: &K, n: usize) -> Vec<SqModule<K>> {
    Subset::all(n)
        .flat_map(|f| {
            [
                SqModule::free_module(field, n, f),
                SqModule::quotient_prime(field, n, f),
                SqModule::simple_module(field, n, f),
            ]
        })
        .collect()
}

/// `S/I_Δ` and `I_Δ` for every simplicial complex on `[n]` (void included).
pub fn stanley_reisner_modules<K: Field>(field: &K, n: usize) -> Vec<(SimplicialComplex, SqModule<K>, SqModule<K>)> {
    SimplicialComplex::enumerate_all(n)
        .into_iter()
        .map(|d| {
            let ring = SqModule::stanley_reisner_ring(field, &d);
            let ideal = SqModule::stanley_reisner_ideal(field, &d);
            (d, ring, ideal)
        })
        .collect()
}

fn free_sum<K: Field>(field: &K, n: usize, gens: &[Subset]) -> SqModule<K> {
    let parts: Vec<SqModule<K>> = gens.iter().map(|&g| SqModule::free_module(field, n, g)).collect();
    SqModule::direct_sum(field, n, &parts.iter().collect::<Vec<_>>()).expect("same ring")
}

/// Random dims in `0..=max_dim` and maps filled along ascending bitmask: at
/// each `F`, all maps `x_i: M_{F∖i} → M_F` are a random combination of a
/// basis of the solutions of the commutation equations with the maps
/// already chosen, so no sample is ever rejected.
pub fn random_module<K: Field, R: Rng>(field: &K, n: usize, max_dim: usize, rng: &mut R) -> SqModule<K> {
    let k = field;
    let dims: Vec<usize> = (0..1usize << n).map(|_| rng.gen_range(0..=max_dim)).collect();
    let mut maps: std::collections::HashMap<(Subset, usize), Matrix<K>> = std::collections::HashMap::new();
    for f in Subset::all(n) {
        let into: Vec<usize> = f.indices().collect();
        let d = dims[f.index()];
        // unknown block for x_i: M_{F∖i} → M_F, row-major
        let mut offset = Vec::with_capacity(into.len());
        let mut unknowns = 0;
        for &i in &into {
            offset.push(unknowns);
            unknowns += d * dims[f.without(i).index()];
        }
        let mut rows: Vec<Vec<K::Elem>> = Vec::new();
        for (a, &i) in into.iter().enumerate() {
            for (b, &j) in into.iter().enumerate().skip(a + 1) {
                // x_i x_j = x_j x_i on M_{F∖{i,j}}
                let g = f.without(i).without(j);
                let (gi, gj) = (f.without(i), f.without(j));
                let (into_gi, into_gj) = (&maps[&(g, j)], &maps[&(g, i)]);
                for r in 0..d {
                    for c in 0..dims[g.index()] {
                        let mut row = vec![k.zero(); unknowns];
                        for s in 0..dims[gi.index()] {
                            let e = &mut row[offset[a] + r * dims[gi.index()] + s];
                            *e = k.add(e, into_gi.get(s, c));
                        }
                        for s in 0..dims[gj.index()] {
                            let e = &mut row[offset[b] + r * dims[gj.index()] + s];
                            *e = k.sub(e, into_gj.get(s, c));
                        }
                        rows.push(row);
                    }
                }
            }
        }
        let x = random_solution(k, &rows, unknowns, rng);
        for (a, &i) in into.iter().enumerate() {
            let src = dims[f.without(i).index()];
            maps.insert((f.without(i), i), Matrix::from_fn(k, d, src, |r, c| x[offset[a] + r * src + c].clone()));
        }
    }
    SqModule::new(k, n, dims, |f, i| maps.remove(&(f, i)).expect("filled")).expect("commutative by construction")
}

/// A random combination of a basis of the solutions of `rows · x = 0`.
fn random_solution<K: Field, R: Rng>(k: &K, rows: &[Vec<K::Elem>], unknowns: usize, rng: &mut R) -> Vec<K::Elem> {
    let system = Matrix::from_fn(k, rows.len(), unknowns, |r, c| rows[r][c].clone());
    let basis = system.kernel_basis();
    let weights: Vec<K::Elem> = (0..basis.cols()).map(|_| coefficient(k, rng)).collect();
    (0..unknowns)
        .map(|u| (0..basis.cols()).fold(k.zero(), |acc, j| k.add(&acc, &k.mul(basis.get(u, j), &weights[j]))))
        .collect()
}

/// The cokernel of a random map `⊕ S(-H_b) → ⊕ S(-G_a)` with up to
/// `max_gens` generators and relations; the relation `b` hits generator `a`
/// with a random coefficient times `x^{H_b ∖ G_a}` when `G_a ⊆ H_b`.
/// Half of the time the Alexander dual is returned instead.
pub fn random_presented_module<K: Field, R: Rng>(field: &K, n: usize, max_gens: usize, rng: &mut R) -> SqModule<K> {
    let full = 1u32 << n;
    let gens: Vec<Subset> = (0..rng.gen_range(1..=max_gens.max(1))).map(|_| Subset(rng.gen_range(0..full))).collect();
    let rels: Vec<Subset> = (0..rng.gen_range(0..=max_gens)).map(|_| Subset(rng.gen_range(0..full))).collect();
    let coeffs: Vec<Vec<K::Elem>> = gens
        .iter()
        .map(|g| rels.iter().map(|h| if g.is_subset_of(*h) { coefficient(field, rng) } else { field.zero() }).collect())
        .collect();
    let (source, target) = (free_sum(field, n, &rels), free_sum(field, n, &gens));
    let phi = SqHom::from_fn(&source, &target, |f| {
        let rows: Vec<usize> = (0..gens.len()).filter(|&a| gens[a].is_subset_of(f)).collect();
        let cols: Vec<usize> = (0..rels.len()).filter(|&b| rels[b].is_subset_of(f)).collect();
        Matrix::from_fn(field, rows.len(), cols.len(), |r, c| coeffs[rows[r]][cols[c]].clone())
    })
    .expect("monomial matrices commute");
    let m = phi.cokernel().0;
    if rng.gen_bool(0.5) {
        crate::dualities::alexander(&m)
    } else {
        m
    }
}

/// A random element of `Hom(M, N)`: a random combination of a basis of the
/// solutions of the commutation equations `φ_{F∪i} x_i = x_i φ_F`.
pub fn random_hom<K: Field, R: Rng>(m: &SqModule<K>, nn: &SqModule<K>, rng: &mut R) -> SqHom<K> {
    let (k, n) = (m.field(), m.n());
    let mut offset = Vec::with_capacity(1 << n);
    let mut unknowns = 0;
    for f in Subset::all(n) {
        offset.push(unknowns);
        unknowns += nn.dim(f) * m.dim(f);
    }
    let var = |f: Subset, r: usize, c: usize| offset[f.index()] + r * m.dim(f) + c;
    let mut rows: Vec<Vec<K::Elem>> = Vec::new();
    for f in Subset::all(n) {
        for i in (0..n).filter(|&i| !f.contains(i)) {
            let g = f.with(i);
            let (mm, nm) = (m.map(f, i), nn.map(f, i));
            for r in 0..nn.dim(g) {
                for c in 0..m.dim(f) {
                    let mut row = vec![k.zero(); unknowns];
                    for s in 0..m.dim(g) {
                        let e = &mut row[var(g, r, s)];
                        *e = k.add(e, mm.get(s, c));
                    }
                    for s in 0..nn.dim(f) {
                        let e = &mut row[var(f, s, c)];
                        *e = k.sub(e, nm.get(r, s));
                    }
                    rows.push(row);
                }
            }
        }
    }
    let x = random_solution(k, &rows, unknowns, rng);
    SqHom::from_fn(m, nn, |f| Matrix::from_fn(k, nn.dim(f), m.dim(f), |r, c| x[var(f, r, c)].clone()))
        .expect("solutions of the commutation equations commute")
}

/// A three-term complex `M → N → Q` in degrees `lo..=lo+2`: the first map is
/// random, the second is the projection to its cokernel followed by a random
/// map into `Q`.
pub fn random_complex<K: Field, R: Rng>(field: &K, n: usize, max_gens: usize, rng: &mut R) -> SqComplex<K> {
    let pick = |rng: &mut R| {
        if rng.gen_bool(0.5) {
            random_module(field, n, max_gens, rng)
        } else {
            random_presented_module(field, n, max_gens, rng)
        }
    };
    let (m, nn, q) = (pick(rng), pick(rng), pick(rng));
    let f = random_hom(&m, &nn, rng);
    let (coker, pi) = f.cokernel();
    let h = random_hom(&coker, &q, rng);
    let g = h.compose(&pi).expect("composable");
    let lo = rng.gen_range(-2..=1);
    SqComplex::new(field, n, lo, vec![m, nn, q], vec![f, g]).expect("g ∘ f = 0")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, Rationals};

    #[test]
    fn seeded_generation_is_reproducible() {
        let k = PrimeField::new(101).unwrap();
        let a = random_complex(&k, 3, 3, &mut rng_from_seed(7));
        let b = random_complex(&k, 3, 3, &mut rng_from_seed(7));
        assert_eq!(a.term_dims(), b.term_dims());
        assert!(a.degrees().all(|i| a.diff(i).map(|d| d.comps()) == b.diff(i).map(|d| d.comps())));
    }

    #[test]
    fn random_objects_are_valid() {
        let q = Rationals;
        let mut rng = rng_from_seed(1);
        let mut nonzero_homs = 0;
        for n in 1..=3 {
            for _ in 0..10 {
                let m = random_module(&q, n, 3, &mut rng);
                m.validate().unwrap();
                assert!(m.dims().iter().all(|&d| d <= 3));
                random_presented_module(&q, n, 3, &mut rng).validate().unwrap();
                let nn = random_module(&q, n, 3, &mut rng);
                let h = random_hom(&m, &nn, &mut rng);
                h.validate().unwrap();
                nonzero_homs += usize::from(!h.is_zero());
                let id = random_hom(&m, &m, &mut rng);
                id.validate().unwrap();
            }
        }
        assert!(nonzero_homs > 0);
    }

    #[test]
    fn random_modules_have_nonzero_maps() {
        let k = PrimeField::new(101).unwrap();
        let mut rng = rng_from_seed(5);
        let nonzero = (0..20).filter(|_| {
            let m = random_module(&k, 3, 2, &mut rng);
            Subset::all(3).any(|f| (0..3).any(|i| !f.contains(i) && !m.map(f, i).is_zero()))
        });
        assert!(nonzero.count() > 5);
    }

    #[test]
    fn hom_space_of_free_modules() {
        // Hom(S(-F), S(-G)) is one-dimensional when G ⊆ F
        let q = Rationals;
        let (f, g) = (Subset::from_vertices(&[1, 2]), Subset::from_vertices(&[1]));
        let mut rng = rng_from_seed(3);
        let s = SqModule::free_module(&q, 2, f);
        let t = SqModule::free_module(&q, 2, g);
        assert!(random_hom(&t, &s, &mut rng).is_zero());
        let nonzero = (0..5).any(|_| !random_hom(&s, &t, &mut rng).is_zero());
        assert!(nonzero);
    }

    #[test]
    fn corpus_sizes() {
        let q = Rationals;
        assert_eq!(standard_modules(&q, 2).len(), 12);
        assert_eq!(stanley_reisner_modules(&q, 3).len(), 19);
    }
}

use crate::boolcomb::Subset;
use crate::exactla::{quotient_basis, Field, Matrix};
use crate::sqcomplex::{ChainMap, Label, SqComplex, SummandComplex, SummandKind};
use crate::sqmod::{SqHom, SqModule};

/// Minimal generators of `m`: at each subset (ascending), standard vectors
/// completing the span of the images of all `x_i`.
fn generators<K: Field>(m: &SqModule<K>) -> Vec<(Subset, Vec<K::Elem>)> {
    let k = m.field();
    let mut out = Vec::new();
    for f in Subset::all(m.n()) {
        let d = m.dim(f);
        if d == 0 {
            continue;
        }
        let mut incoming = Matrix::zeros(k, d, 0);
        for i in f.indices() {
            incoming = incoming.hstack(m.map(f.without(i), i));
        }
        let (basis, _) = quotient_basis(&Matrix::identity(k, d), &incoming).expect("image lies in M_F");
        for c in 0..basis.cols() {
            out.push((f, basis.column(c)));
        }
    }
    out
}

/// `⊕ S(-F)` over the given labels, as a module.
fn free_sum<K: Field>(k: &K, n: usize, labels: &[Label]) -> SqModule<K> {
    SummandComplex::new_unchecked(k, n, SummandKind::Free, 0, vec![labels.to_vec()], vec![]).to_complex().term(0).clone()
}

fn injective_sum<K: Field>(k: &K, n: usize, labels: &[Label]) -> SqModule<K> {
    SummandComplex::new_unchecked(k, n, SummandKind::Injective, 0, vec![labels.to_vec()], vec![]).to_complex().term(0).clone()
}

/// Hom `⊕ S(-F_g) → M` sending the generator of summand `g` to its vector.
fn cover<K: Field>(m: &SqModule<K>, gens: &[(Subset, Vec<K::Elem>)], free: &SqModule<K>) -> SqHom<K> {
    let k = m.field();
    let comps = Subset::all(m.n())
        .map(|g| {
            let cols: Vec<Vec<K::Elem>> = gens
                .iter()
                .filter(|(f, _)| f.is_subset_of(g))
                .map(|(f, v)| m.path(*f, g).mul(&Matrix::from_columns(k, v.len(), &[v.clone()])).column(0))
                .collect();
            Matrix::from_columns(k, m.dim(g), &cols)
        })
        .collect();
    SqHom::new_unchecked(free.clone(), m.clone(), comps)
}

/// Minimal free resolution `P^•` (in degrees `-len..=0`) and the
/// augmentation `P^• → M`. Summand labels: `deg = -i`, `origin = F`,
/// `index` counts copies of `S(-F)` at that step.
pub fn minimal_projective_resolution<K: Field>(m: &SqModule<K>) -> (SummandComplex<K>, ChainMap<K>) {
    let k = m.field();
    let n = m.n();
    let mut steps: Vec<Vec<Label>> = Vec::new();
    let mut diffs: Vec<Matrix<K>> = Vec::new();
    let mut current = m.clone();
    let mut prev_free: Option<(Vec<Label>, SqModule<K>)> = None;
    let mut prev_incl: Option<SqHom<K>> = None;
    let mut augmentation: Option<SqHom<K>> = None;
    while !current.is_zero() {
        let step = steps.len() as i64;
        let gens = generators(&current);
        let mut labels = Vec::with_capacity(gens.len());
        for (f, _) in &gens {
            let copies = labels.iter().filter(|l: &&Label| l.subset == *f).count();
            labels.push(Label::new(*f, -step, *f, copies));
        }
        let free = free_sum(k, n, &labels);
        let eps = cover(&current, &gens, &free);
        if let (Some((prev_labels, prev_module)), Some(incl)) = (&prev_free, &prev_incl) {
            // entries of d: P_step → P_{step-1}, read at each source generator's subset
            let to_prev = incl.compose(&eps).expect("kernel inclusion composes");
            let d = Matrix::from_fn(k, prev_labels.len(), labels.len(), |a, b| {
                let g = labels[b].subset;
                if !prev_labels[a].subset.is_subset_of(g) {
                    return k.zero();
                }
                let row = prev_labels[..a].iter().filter(|l| l.subset.is_subset_of(g)).count();
                let col = labels[..b].iter().filter(|l| l.subset.is_subset_of(g)).count();
                debug_assert!(row < prev_module.dim(g));
                to_prev.comp(g).get(row, col).clone()
            });
            diffs.push(d);
        } else {
            augmentation = Some(eps.clone());
        }
        let (kernel, incl) = eps.kernel();
        prev_free = Some((labels.clone(), free));
        prev_incl = Some(incl);
        steps.push(labels);
        current = kernel;
        assert!(steps.len() <= n + 1, "resolution longer than n");
    }
    let len = steps.len() as i64;
    steps.reverse();
    diffs.reverse();
    let p = SummandComplex::new_unchecked(k, n, SummandKind::Free, 1 - len, steps, diffs);
    let pc = p.to_complex();
    let target = SqComplex::from_module(m, 0);
    let aug = match augmentation {
        Some(eps) => ChainMap::new(&pc, &target, |_| SqHom::new_unchecked(pc.term(0).clone(), m.clone(), eps.comps().to_vec()))
            .expect("augmentation is a chain map"),
        None => ChainMap::zero(&pc, &target),
    };
    (p, aug)
}

/// Socle functionals of `m`: at each subset `F` (ascending), coordinate
/// functionals dual to a basis of `∩_{i∉F} ker x_i`.
fn cogenerators<K: Field>(m: &SqModule<K>) -> Vec<(Subset, usize)> {
    let k = m.field();
    let n = m.n();
    let mut out = Vec::new();
    for f in Subset::all(n) {
        let d = m.dim(f);
        if d == 0 {
            continue;
        }
        let mut outgoing = Matrix::zeros(k, 0, d);
        for i in (0..n).filter(|&i| !f.contains(i)) {
            outgoing = outgoing.vstack(m.map(f, i));
        }
        let (_, free) = outgoing.kernel_with_free_columns();
        out.extend(free.into_iter().map(|c| (f, c)));
    }
    out
}

/// Hom `M → ⊕ S/P_F` whose summand-`(F, c)` coordinate at `G ⊆ F` is
/// `m ↦ (x^{F∖G} m)_c`.
fn envelope<K: Field>(m: &SqModule<K>, cogens: &[(Subset, usize)], inj: &SqModule<K>) -> SqHom<K> {
    let k = m.field();
    let comps = Subset::all(m.n())
        .map(|g| {
            let rows: Vec<Matrix<K>> = cogens
                .iter()
                .filter(|(f, _)| g.is_subset_of(*f))
                .map(|(f, c)| m.path(g, *f).select_rows(&[*c]))
                .collect();
            rows.iter().fold(Matrix::zeros(k, 0, m.dim(g)), |acc, r| acc.vstack(r))
        })
        .collect();
    SqHom::new_unchecked(m.clone(), inj.clone(), comps)
}

/// Minimal injective resolution `I^•` (degrees `0..=len`) in the category of
/// squarefree modules, built from socles of successive cokernels, and the
/// coaugmentation `M → I^•`.
pub fn minimal_injective_resolution<K: Field>(m: &SqModule<K>) -> (SummandComplex<K>, ChainMap<K>) {
    let k = m.field();
    let n = m.n();
    let mut steps: Vec<Vec<Label>> = Vec::new();
    let mut diffs: Vec<Matrix<K>> = Vec::new();
    let mut current = m.clone();
    let mut prev: Option<(Vec<Label>, SqHom<K>)> = None;
    let mut coaugmentation: Option<SqHom<K>> = None;
    while !current.is_zero() {
        let step = steps.len() as i64;
        let cogens = cogenerators(&current);
        let mut labels = Vec::with_capacity(cogens.len());
        for (f, _) in &cogens {
            let copies = labels.iter().filter(|l: &&Label| l.subset == *f).count();
            labels.push(Label::new(*f, step, *f, copies));
        }
        let inj = injective_sum(k, n, &labels);
        let iota = envelope(&current, &cogens, &inj);
        if let Some((prev_labels, proj)) = &prev {
            // entries of d: I_{step-1} → I_step, read at each target summand's subset
            let from_prev = iota.compose(proj).expect("cokernel projection composes");
            let d = Matrix::from_fn(k, labels.len(), prev_labels.len(), |a, b| {
                let g = labels[a].subset;
                if !g.is_subset_of(prev_labels[b].subset) {
                    return k.zero();
                }
                let row = labels[..a].iter().filter(|l| g.is_subset_of(l.subset)).count();
                let col = prev_labels[..b].iter().filter(|l| g.is_subset_of(l.subset)).count();
                from_prev.comp(g).get(row, col).clone()
            });
            diffs.push(d);
        } else {
            coaugmentation = Some(iota.clone());
        }
        let (cokernel, proj) = iota.cokernel();
        prev = Some((labels.clone(), proj));
        steps.push(labels);
        current = cokernel;
        assert!(steps.len() <= n + 1, "injective resolution longer than n");
    }
    let c = SummandComplex::new_unchecked(k, n, SummandKind::Injective, 0, steps, diffs);
    let cc = c.to_complex();
    let source = SqComplex::from_module(m, 0);
    let coaug = match coaugmentation {
        Some(iota) => ChainMap::new(&source, &cc, |_| SqHom::new_unchecked(m.clone(), cc.term(0).clone(), iota.comps().to_vec()))
            .expect("coaugmentation is a chain map"),
        None => ChainMap::zero(&source, &cc),
    };
    (c, coaug)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::boolcomb::SimplicialComplex;
    use crate::exactla::{PrimeField, Rationals};
    use crate::sqcomplex::GradedTable;

    fn v(xs: &[usize]) -> Subset {
        Subset::from_vertices(xs)
    }

    fn betti_of(p: &SummandComplex<Rationals>) -> GradedTable {
        p.summand_table().iter().map(|(d, f, c)| (-d, f, c)).collect()
    }

    #[test]
    fn free_module_resolves_itself() {
        let q = Rationals;
        let m = SqModule::free_module(&q, 3, v(&[2]));
        let (p, aug) = minimal_projective_resolution(&m);
        assert_eq!(p.summand_table(), [(0, v(&[2]), 1)].into_iter().collect());
        assert!(aug.is_quasi_iso());
    }

    #[test]
    fn residue_field_gives_koszul() {
        let q = Rationals;
        let m = SqModule::simple_module(&q, 2, Subset::EMPTY);
        let (p, aug) = minimal_projective_resolution(&m);
        let want: GradedTable = [(0, Subset::EMPTY, 1), (1, v(&[1]), 1), (1, v(&[2]), 1), (2, v(&[1, 2]), 1)].into_iter().collect();
        assert_eq!(betti_of(&p), want);
        assert!(p.is_minimal());
        assert!(aug.is_quasi_iso());
    }

    #[test]
    fn path_ideal_taylor() {
        let q = Rationals;
        let delta = SimplicialComplex::from_facets(3, &[v(&[1, 3]), v(&[2])]).unwrap();
        let ideal = SqModule::stanley_reisner_ideal(&q, &delta);
        // I_Δ = (x1x2, x2x3)
        let (p, aug) = minimal_projective_resolution(&ideal);
        let want: GradedTable = [(0, v(&[1, 2]), 1), (0, v(&[2, 3]), 1), (1, v(&[1, 2, 3]), 1)].into_iter().collect();
        assert_eq!(betti_of(&p), want);
        assert!(aug.is_quasi_iso());
    }

    #[test]
    fn injective_examples() {
        let k = PrimeField::new(101).unwrap();
        let m = SqModule::quotient_prime(&k, 3, v(&[1, 3]));
        let (i, co) = minimal_injective_resolution(&m);
        assert_eq!(i.summand_table(), [(0, v(&[1, 3]), 1)].into_iter().collect());
        assert!(co.is_quasi_iso());
        for f in Subset::all(3) {
            let s = SqModule::simple_module(&k, 3, f);
            let (i, co) = minimal_injective_resolution(&s);
            assert!(co.is_quasi_iso());
            let want: GradedTable = f.subsets().map(|g| (f.minus(g).len() as i64, g, 1)).collect();
            assert_eq!(i.summand_table(), want);
            assert!(i.is_minimal());
        }
    }

    #[test]
    fn zero_module() {
        let q = Rationals;
        let (p, _) = minimal_projective_resolution(&SqModule::zero(&q, 2));
        assert!(p.is_zero());
        let (i, _) = minimal_injective_resolution(&SqModule::zero(&q, 2));
        assert!(i.is_zero());
    }
}

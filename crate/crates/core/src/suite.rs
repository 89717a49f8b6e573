//! Property checks over single inputs, shared by `sqfree check` and the
//! test suites, plus a seeded runner that applies them to a random corpus.
//!
//! Every check is exact. A failing check returns the offending input as
//! JSON so it can be replayed.

use rand::Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::boolcomb::{alpha_pair, beta_sign, SimplicialComplex, Subset};
use crate::corpus::{random_complex, random_module, random_presented_module, rng_from_seed, standard_modules};
use crate::dualities::{
    alexander, alexander_cx, bgg_l, dadada_map_with_sign, dadada_sign, dualize_d, functor_f, hom_to_omega, koszul_df, to_exterior_cx,
};
use crate::exactla::Field;
use crate::invariants::{char_cycle, hochster_table, hochster_via_links, is_componentwise_linear, is_sequentially_cm, strand_theorem_check};
use crate::io::{complex_to_json, module_to_json, simplicial_to_json};
use crate::sqcomplex::{
    bass_table, betti_table, minimal_injective_resolution, minimal_projective_resolution, GradedTable, SqComplex,
};
use crate::sqmod::SqModule;

/// A failed property with the input that triggers it.
#[derive(Clone, Debug, Serialize)]
pub struct Failure {
    pub property: String,
    pub detail: String,
    pub witness: Value,
}

pub type Check = std::result::Result<(), Failure>;

fn fail(property: &str, detail: impl Into<String>, witness: Value) -> Check {
    Err(Failure { property: property.into(), detail: detail.into(), witness })
}

fn cx<K: Field>(m: &SqModule<K>) -> SqComplex<K> {
    SqComplex::from_module(m, 0)
}

/// `D` followed by minimization, as a complex of modules.
pub fn d_step<K: Field>(c: &SqComplex<K>) -> SqComplex<K> {
    dualize_d(c).minimize().to_complex()
}

pub fn involution_module<K: Field>(m: &SqModule<K>) -> Check {
    if alexander(&alexander(m)) != *m {
        return fail("involution", "A(A(M)) != M", module_to_json(m, false));
    }
    Ok(())
}

pub fn involution_complex<K: Field>(c: &SqComplex<K>) -> Check {
    if alexander_cx(&alexander_cx(c)) != *c {
        return fail("involution", "A(A(C)) != C", complex_to_json(c, false));
    }
    Ok(())
}

/// `H(D(M)) = H(Hom(P, ω_S[n]))` for the minimal resolution `P` of `M`.
pub fn prop_ext<K: Field>(m: &SqModule<K>) -> Check {
    let (p, _) = minimal_projective_resolution(m);
    let lhs = dualize_d(&cx(m)).cohomology_dims();
    let rhs = hom_to_omega(&p).map(|h| h.cohomology_dims());
    match rhs {
        Ok(rhs) if rhs == lhs => Ok(()),
        Ok(rhs) => fail("prop-ext", format!("H(D(M)) = {lhs:?}, H(Hom(P, ω[n])) = {rhs:?}"), module_to_json(m, false)),
        Err(e) => fail("prop-ext", e.to_string(), module_to_json(m, false)),
    }
}

/// `H(D(D(C))) = H(C)` per degree and subset.
pub fn double_dual<K: Field>(c: &SqComplex<K>) -> Check {
    let dd = dualize_d(&d_step(c)).cohomology_dims();
    if dd != c.cohomology_dims() {
        return fail("double-dual", format!("H(DD(C)) = {dd:?}, H(C) = {:?}", c.cohomology_dims()), complex_to_json(c, false));
    }
    Ok(())
}

/// `H((D∘A)^3(C)) = H(C[2n])` and `H((A∘D)^3(C)) = H(C[-2n])`.
pub fn dadada_cohomology<K: Field>(c: &SqComplex<K>) -> Check {
    let n2 = 2 * c.n() as i64;
    let mut da = c.clone();
    let mut ad = c.clone();
    for _ in 0..3 {
        da = d_step(&alexander_cx(&da));
        ad = alexander_cx(&d_step(&ad));
    }
    let want = c.translate(n2).cohomology_dims();
    if da.cohomology_dims() != want {
        return fail("dadada", format!("H((DA)^3 C) = {:?}, H(C[2n]) = {want:?}", da.cohomology_dims()), complex_to_json(c, false));
    }
    let want = c.translate(-n2).cohomology_dims();
    if ad.cohomology_dims() != want {
        return fail("dadada", format!("H((AD)^3 C) = {:?}, H(C[-2n]) = {want:?}", ad.cohomology_dims()), complex_to_json(c, false));
    }
    Ok(())
}

/// The explicit sign map `Hom(F(C), ω_S[n]) → F(A(C))[2n]` is an
/// isomorphism commuting with the differentials, with the given sign rule.
pub fn dadada_map_check_with<K: Field>(c: &SqComplex<K>, sign: impl Fn(usize, i64, Subset) -> i64) -> Check {
    let witness = || complex_to_json(c, false);
    let m = match dadada_map_with_sign(c, sign) {
        Ok(m) => m,
        Err(e) => return fail("dadada-map", e.to_string(), witness()),
    };
    let bad = m.non_commuting_degrees();
    if !bad.is_empty() {
        return fail("dadada-map", format!("fails to commute at degrees {bad:?}"), witness());
    }
    if !m.is_iso() {
        return fail("dadada-map", "not an isomorphism", witness());
    }
    Ok(())
}

pub fn dadada_map_check<K: Field>(c: &SqComplex<K>) -> Check {
    dadada_map_check_with(c, dadada_sign)
}

/// The sign rule with `α(F,[n])` replaced by `α(F,F)`; breaks commutation.
pub fn mutated_dadada_sign(n: usize, j: i64, f: Subset) -> i64 {
    alpha_pair(f, f) as i64 + beta_sign(f.len() as i64 - j) as i64 + (f.len() * n) as i64 + j
}

/// `μ̄^i(F, M) = β_i(F^c, A(M))`, read off an injective resolution of `M`
/// and a projective resolution of `A(M)`.
pub fn bass_betti_duality<K: Field>(m: &SqModule<K>) -> Check {
    let n = m.n();
    let inj = minimal_injective_resolution(m).0.summand_table();
    let proj: GradedTable =
        minimal_projective_resolution(&alexander(m)).0.summand_table().iter().map(|(d, f, v)| (-d, f.complement(n), v)).collect();
    if inj != proj {
        return fail("bass-betti", format!("μ̄ = {inj:?}, β(A(M)) = {proj:?}"), module_to_json(m, false));
    }
    Ok(())
}

/// `A(S/I_Δ) = I_{Δ*}` as modules.
pub fn eagon_reiner<K: Field>(field: &K, d: &SimplicialComplex) -> Check {
    let lhs = alexander(&SqModule::stanley_reisner_ring(field, d));
    let rhs = SqModule::stanley_reisner_ideal(field, &d.dual_family());
    if lhs != rhs {
        return fail("eagon-reiner", "A(S/I) != I of the dual", simplicial_to_json(d));
    }
    Ok(())
}

fn same_class<K: Field>(a: &SqModule<K>, b: &SqModule<K>) -> bool {
    // dims and the rank of every multiplication map
    let n = a.n();
    a.dims() == b.dims()
        && Subset::all(n).all(|f| (0..n).filter(|&i| !f.contains(i)).all(|i| a.map(f, i).rank() == b.map(f, i).rank()))
}

/// The six objects obtained from `S(-F)` by alternating `A` and `D`: each
/// has one cohomology module, of the listed type and in the listed degree.
pub fn example_chain<K: Field>(field: &K, n: usize, f: Subset) -> Check {
    let nn = n as i64;
    let fl = f.len() as i64;
    let fc = f.complement(n);
    let expected = [
        ("A", SqModule::quotient_prime(field, n, fc), 0),
        ("D", SqModule::simple_module(field, n, fc), fl - nn),
        ("A", SqModule::simple_module(field, n, f), nn - fl),
        ("D", SqModule::quotient_prime(field, n, f), -nn),
        ("A", SqModule::free_module(field, n, fc), nn),
        ("D", SqModule::free_module(field, n, f), -2 * nn),
    ];
    let mut c = cx(&SqModule::free_module(field, n, f));
    for (step, (op, module, deg)) in expected.iter().enumerate() {
        c = if *op == "A" { alexander_cx(&c) } else { d_step(&c) };
        let h = c.cohomology();
        let ok = h.len() == 1 && h.get(deg).is_some_and(|m| same_class(m, module));
        if !ok {
            let got: Vec<(i64, String)> = h.iter().map(|(i, m)| (*i, format!("{m:?}"))).collect();
            return fail(
                "example-chain",
                format!("step {} ({op}): expected {module:?} in degree {deg}, got {got:?}", step + 1),
                json!({"n": n, "subset": f.vertices()}),
            );
        }
    }
    Ok(())
}

pub fn strand_theorem<K: Field>(m: &SqModule<K>) -> Check {
    for i in -1..=m.n() as i64 + 1 {
        if !strand_theorem_check(m, i) {
            return fail("strand", format!("strand {i} differs from F(Ext^i(A(M)))[n-i]"), module_to_json(m, false));
        }
    }
    Ok(())
}

/// Evaluates both sides of the componentwise-linear / sequentially CM
/// equivalence and returns their common value.
pub fn roemer<K: Field>(m: &SqModule<K>) -> std::result::Result<bool, Failure> {
    let lhs = is_componentwise_linear(m);
    let rhs = is_sequentially_cm(&alexander(m));
    if lhs != rhs {
        return Err(Failure {
            property: "roemer".into(),
            detail: format!("componentwise linear = {lhs}, A(M) sequentially CM = {rhs}"),
            witness: module_to_json(m, false),
        });
    }
    Ok(lhs)
}

/// Ext-based local cohomology dimensions against link homology, for all
/// `i` and all `F` (both vanish off `Δ`).
pub fn hochster_links<K: Field>(field: &K, d: &SimplicialComplex) -> Check {
    let n = d.n() as i64;
    let t = hochster_table(field, d);
    for i in -1..=n + 1 {
        for f in Subset::all(d.n()) {
            let (a, b) = (t.get(i, f), hochster_via_links(field, d, i, f));
            if a != b {
                return fail("hochster", format!("i = {i}, F = {f}: Ext gives {a}, link homology gives {b}"), simplicial_to_json(d));
            }
        }
    }
    Ok(())
}

/// Characteristic-cycle multiplicities against link homology:
/// `e_{Q_F}(H^i_{I_Δ}(S)) = dim H̃_{n-i-|F|-1}(lk F)`.
pub fn char_cycle_links<K: Field>(field: &K, d: &SimplicialComplex) -> Check {
    let n = d.n() as i64;
    for i in 0..=n {
        let c = char_cycle(field, d, i);
        for f in Subset::all(d.n()) {
            let (a, b) = (c.get(f), hochster_via_links(field, d, n - i, f));
            if a != b {
                return fail("char-cycle", format!("i = {i}, F = {f}: cycle gives {a}, link homology gives {b}"), simplicial_to_json(d));
            }
        }
    }
    Ok(())
}

/// `L(E(C)) = F(C)` literally; for a single module also `= A(D(M))`
/// literally, and for complexes `A(D(C))` after the summand twist `(-1)^j`.
pub fn prop_le<K: Field>(c: &SqComplex<K>) -> Check {
    let le = bgg_l(&to_exterior_cx(c));
    let witness = || complex_to_json(c, false);
    if le != functor_f(c) {
        return fail("prop-le", "L(E(C)) != F(C)", witness());
    }
    let ad = dualize_d(c).alexander();
    let single = c.degree_range().is_none_or(|(lo, hi)| lo == hi);
    if single && le != ad {
        return fail("prop-le", "L(E(M)) != A(D(M))", witness());
    }
    if le != ad.twist(|_, l| l.deg) {
        return fail("prop-le", "L(E(C)) != A(D(C)) twisted by (-1)^j", witness());
    }
    Ok(())
}

pub fn koszul_df_check<K: Field>(c: &SqComplex<K>) -> Check {
    let witness = || complex_to_json(c, false);
    match koszul_df(c) {
        Ok((_, map)) if map.is_chain_map() && map.is_iso() => Ok(()),
        Ok(_) => fail("koszul-df", "sign map is not an isomorphism of complexes", witness()),
        Err(e) => fail("koszul-df", e.to_string(), witness()),
    }
}

/// Resolutions have length at most `n`, and Betti and Bass tables vanish
/// outside `0..=n`.
pub fn length_bounds<K: Field>(m: &SqModule<K>) -> Check {
    let n = m.n() as i64;
    let witness = || module_to_json(m, false);
    let (p, _) = minimal_projective_resolution(m);
    if p.degree_range().is_some_and(|(lo, hi)| lo < -n || hi > 0) {
        return fail("length", format!("projective resolution spans {:?}", p.degree_range()), witness());
    }
    let (inj, _) = minimal_injective_resolution(m);
    if inj.degree_range().is_some_and(|(lo, hi)| lo < 0 || hi > n) {
        return fail("length", format!("injective resolution spans {:?}", inj.degree_range()), witness());
    }
    for (name, t) in [("Betti", betti_table(&cx(m))), ("Bass", bass_table(&cx(m)))] {
        if t.degree_range().is_some_and(|(lo, hi)| lo < 0 || hi > n) {
            return fail("length", format!("{name} table spans {:?}", t.degree_range()), witness());
        }
    }
    Ok(())
}

/// Result of one property over a corpus.
#[derive(Clone, Debug, Serialize)]
pub struct PropertyReport {
    pub property: String,
    pub cases: usize,
    pub failure: Option<Failure>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub seed: u64,
    pub max_n: usize,
    pub field: String,
    pub properties: Vec<PropertyReport>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.failure.is_none())
    }

    pub fn first_failure(&self) -> Option<&Failure> {
        self.properties.iter().find_map(|p| p.failure.as_ref())
    }
}

/// Options for [`run_checks`].
#[derive(Clone, Debug)]
pub struct CheckConfig {
    pub seed: u64,
    pub max_n: usize,
    pub modules: usize,
    pub complexes: usize,
    pub simplicial: usize,
    /// Swap in [`mutated_dadada_sign`] to confirm the suite notices.
    pub mutate_sign: bool,
}

impl Default for CheckConfig {
    fn default() -> Self {
        CheckConfig { seed: 0, max_n: 4, modules: 24, complexes: 8, simplicial: 24, mutate_sign: false }
    }
}

fn run_over<T>(property: &str, items: &[T], mut check: impl FnMut(&T) -> Check) -> PropertyReport {
    let failure = items.iter().find_map(|x| check(x).err());
    PropertyReport { property: property.into(), cases: items.len(), failure }
}

/// Runs every property on a corpus drawn from `config.seed`. The corpus and
/// the report depend only on the configuration and the field.
pub fn run_checks<K: Field>(field: &K, config: &CheckConfig) -> Report {
    let mut rng = rng_from_seed(config.seed);
    let max_n = config.max_n.max(1);
    let mut modules: Vec<SqModule<K>> = standard_modules(field, max_n.min(3));
    for _ in 0..config.modules {
        let n = rng.gen_range(1..=max_n);
        modules.push(if rng.gen_bool(0.5) { random_module(field, n, 2, &mut rng) } else { random_presented_module(field, n, 3, &mut rng) });
    }
    let mut complexes: Vec<SqComplex<K>> = (0..config.complexes).map(|_| random_complex(field, rng.gen_range(1..=max_n), 2, &mut rng)).collect();
    complexes.extend(modules.iter().take(config.complexes).map(cx));
    let simplicial: Vec<SimplicialComplex> = (0..config.simplicial).map(|_| SimplicialComplex::random(rng.gen_range(1..=max_n), &mut rng)).collect();
    let chain: Vec<(usize, Subset)> = (1..=max_n.min(4)).flat_map(|n| Subset::all(n).map(move |f| (n, f))).collect();

    let mut properties = vec![
        run_over("involution", &modules, involution_module),
        run_over("involution-complex", &complexes, involution_complex),
        run_over("prop-ext", &modules, prop_ext),
        run_over("double-dual", &complexes, double_dual),
        run_over("dadada", &complexes, dadada_cohomology),
    ];
    properties.push(if config.mutate_sign {
        run_over("dadada-map", &complexes, |c| dadada_map_check_with(c, mutated_dadada_sign))
    } else {
        run_over("dadada-map", &complexes, dadada_map_check)
    });
    properties.extend([
        run_over("bass-betti", &modules, bass_betti_duality),
        run_over("eagon-reiner", &simplicial, |d| eagon_reiner(field, d)),
        run_over("example-chain", &chain, |&(n, f)| example_chain(field, n, f)),
        run_over("strand", &modules, strand_theorem),
        run_over("roemer", &modules, |m| roemer(m).map(|_| ())),
        run_over("hochster", &simplicial, |d| hochster_links(field, d)),
        run_over("prop-le", &complexes, prop_le),
        run_over("koszul-df", &complexes, koszul_df_check),
        run_over("char-cycle", &simplicial, |d| char_cycle_links(field, d)),
        run_over("length", &modules, length_bounds),
    ]);
    Report { seed: config.seed, max_n, field: field.tag().to_string(), properties }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{PrimeField, Rationals};

    #[test]
    fn small_run_passes() {
        let k = PrimeField::new(101).unwrap();
        let config = CheckConfig { seed: 3, max_n: 3, modules: 6, complexes: 3, simplicial: 6, mutate_sign: false };
        let r = run_checks(&k, &config);
        assert!(r.passed(), "{:?}", r.first_failure());
        assert_eq!(r.properties.len(), 16);
    }

    #[test]
    fn mutated_sign_is_caught() {
        let q = Rationals;
        let config = CheckConfig { seed: 3, max_n: 2, modules: 2, complexes: 2, simplicial: 2, mutate_sign: true };
        let r = run_checks(&q, &config);
        assert_eq!(r.first_failure().map(|f| f.property.as_str()), Some("dadada-map"));
    }

    #[test]
    fn runs_are_reproducible() {
        let k = PrimeField::new(101).unwrap();
        let config = CheckConfig { seed: 9, max_n: 2, modules: 3, complexes: 2, simplicial: 3, mutate_sign: false };
        let a = serde_json::to_string(&run_checks(&k, &config)).unwrap();
        let b = serde_json::to_string(&run_checks(&k, &config)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn example_chain_small() {
        let q = Rationals;
        for n in 1..=3 {
            for f in Subset::all(n) {
                example_chain(&q, n, f).unwrap();
            }
        }
    }
}

use std::collections::HashMap;

use crate::boolcomb::{alpha_pair, beta_sign, Subset};
use crate::dualities::{alexander_cx, functor_f, hom_to_omega};
use crate::error::{Error, Result};
use crate::exactla::{Field, Matrix};
use crate::sqcomplex::{SqComplex, SummandMap};

/// Exponent of the sign on the summand `(C^{-j}_F)^* ⊗ S(-F)`:
/// `α(F,[n]) + β(|F|-j) + |F|n + j`.
pub fn dadada_sign(n: usize, j: i64, f: Subset) -> i64 {
    let full = Subset::full(n);
    alpha_pair(f, full) as i64 + beta_sign(f.len() as i64 - j) as i64 + (f.len() * n) as i64 + j
}

/// The diagonal sign map `Hom(F(C), ω_S[n]) → T^{2n} F(A(C))` with a
/// caller-supplied sign exponent `sign(n, j, F)`; no commutation check.
pub fn dadada_map_with_sign<K: Field>(c: &SqComplex<K>, sign: impl Fn(usize, i64, Subset) -> i64) -> Result<SummandMap<K>> {
    let (k, n) = (c.field(), c.n());
    let source = hom_to_omega(&functor_f(c))?;
    let target = functor_f(&alexander_cx(c)).translate(2 * n as i64);
    SummandMap::new(&source, &target, |i| {
        let (src, dst) = (source.labels(i), target.labels(i));
        // a source summand from C^{deg}_F matches the target summand from
        // A(C)^{-deg}_{F^c}
        let position: HashMap<(i64, Subset, usize), usize> =
            src.iter().enumerate().map(|(b, l)| ((l.deg, l.origin, l.index), b)).collect();
        let mut m = Matrix::zeros(k, dst.len(), src.len());
        for (a, l) in dst.iter().enumerate() {
            let f = l.origin.complement(n);
            let b = position[&(-l.deg, f, l.index)];
            m.set(a, b, k.sign(sign(n, l.deg, f)));
        }
        m
    })
}

/// The sign isomorphism realizing `(D∘A)^3 ≅ T^{2n}`; errors if it fails to
/// commute with the differentials.
pub fn dadada_map<K: Field>(c: &SqComplex<K>) -> Result<SummandMap<K>> {
    let m = dadada_map_with_sign(c, dadada_sign)?;
    let bad = m.non_commuting_degrees();
    if !bad.is_empty() {
        return Err(Error::Internal(format!("sign map fails to commute at degrees {bad:?}")));
    }
    Ok(m)
}

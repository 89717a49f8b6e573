use std::collections::BTreeMap;

use crate::dualities::dualize_d;
use crate::exactla::Field;
use crate::sqcomplex::{dual_cohomology, GradedTable, SqComplex};
use crate::sqmod::SqModule;

/// `(i, F) ↦ dim Ext^i_S(C, ω_S)_F`.
pub type ExtTable = GradedTable;

/// `Ext^i_S(C, ω_S) = H^{i-n}(D(C))` as a squarefree module.
pub fn ext<K: Field>(c: &SqComplex<K>, i: i64) -> SqModule<K> {
    dualize_d(c).minimize().to_complex().cohomology_module(i - c.n() as i64)
}

/// All nonzero Ext modules, keyed by `i`.
pub fn ext_module_table<K: Field>(c: &SqComplex<K>) -> BTreeMap<i64, SqModule<K>> {
    let n = c.n() as i64;
    dualize_d(c).minimize().to_complex().cohomology().into_iter().map(|(t, m)| (t + n, m)).collect()
}

pub fn ext_table<K: Field>(c: &SqComplex<K>) -> ExtTable {
    dual_cohomology(c).shifted(c.n() as i64)
}

/// `max{|F| : M_F ≠ 0}`, or `None` for the zero module.
pub fn krull_dim<K: Field>(m: &SqModule<K>) -> Option<usize> {
    m.support().map(|f| f.len()).max()
}

/// `max{i : Ext^i(M, ω_S) ≠ 0}`, or `None` for the zero module.
pub fn proj_dim<K: Field>(m: &SqModule<K>) -> Option<usize> {
    ext_table(&SqComplex::from_module(m, 0)).degree_range().map(|(_, hi)| hi as usize)
}

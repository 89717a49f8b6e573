use std::fmt;

use crate::error::{Error, Result};
use crate::exactla::field::Field;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct Matrix<K: Field> {
    field: K,
    rows: usize,
    cols: usize,
    data: Vec<K::Elem>,
}

impl<K: Field> fmt::Debug for Matrix<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.field.format(self.get(r, c)))?;
            }
        }
        write!(f, "]")
    }
}

impl<K: Field> Matrix<K> {
    pub fn zeros(field: &K, rows: usize, cols: usize) -> Self {
        Matrix {
            field: field.clone(),
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: &K, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_data(field: &K, rows: usize, cols: usize, data: Vec<K::Elem>) -> Self {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        Matrix { field: field.clone(), rows, cols, data }
    }

    pub fn from_fn(field: &K, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> K::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// Small-integer constructor, mostly for tests.
    pub fn from_i64_rows(field: &K, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(field, rows.len(), cols, |r, c| field.from_i64(rows[r][c]))
    }

    pub fn field(&self) -> &K {
        &self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }
    pub fn data(&self) -> &[K::Elem] {
        &self.data
    }

    pub fn get(&self, r: usize, c: usize) -> &K::Elem {
        debug_assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: K::Elem) {
        debug_assert!(r < self.rows && c < self.cols);
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(&self.field, self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows, "matrix product shape {:?} * {:?}", self.shape(), rhs.shape());
        let k = &self.field;
        let mut out = Self::zeros(k, self.rows, rhs.cols);
        for r in 0..self.rows {
            for m in 0..self.cols {
                let a = self.get(r, m);
                if k.is_zero(a) {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.get(m, c);
                    if k.is_zero(b) {
                        continue;
                    }
                    let idx = r * out.cols + c;
                    out.data[idx] = k.add(&out.data[idx], &k.mul(a, b));
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "matrix sum shape");
        let k = &self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| k.add(a, b)).collect();
        Matrix { field: k.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!(self.shape(), rhs.shape(), "matrix difference shape");
        let k = &self.field;
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| k.sub(a, b)).collect();
        Matrix { field: k.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, s: &K::Elem) -> Self {
        let k = &self.field;
        let data = self.data.iter().map(|a| k.mul(a, s)).collect();
        Matrix { field: k.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        let k = &self.field;
        let data = self.data.iter().map(|a| k.neg(a)).collect();
        Matrix { field: k.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn column(&self, c: usize) -> Vec<K::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn select_columns(&self, cols: &[usize]) -> Self {
        Self::from_fn(&self.field, self.rows, cols.len(), |r, c| self.get(r, cols[c]).clone())
    }

    pub fn select_rows(&self, rows: &[usize]) -> Self {
        Self::from_fn(&self.field, rows.len(), self.cols, |r, c| self.get(rows[r], c).clone())
    }

    pub fn from_columns(field: &K, rows: usize, columns: &[Vec<K::Elem>]) -> Self {
        Self::from_fn(field, rows, columns.len(), |r, c| columns[c][r].clone())
    }

    /// `[self | rhs]`.
    pub fn hstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.rows, rhs.rows, "hstack row count");
        Self::from_fn(&self.field, self.rows, self.cols + rhs.cols, |r, c| {
            if c < self.cols {
                self.get(r, c).clone()
            } else {
                rhs.get(r, c - self.cols).clone()
            }
        })
    }

    /// `[self ; rhs]`.
    pub fn vstack(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.cols, "vstack column count");
        let mut data = self.data.clone();
        data.extend(rhs.data.iter().cloned());
        Matrix { field: self.field.clone(), rows: self.rows + rhs.rows, cols: self.cols, data }
    }

    /// Writes `block` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "block out of range");
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Self {
        Self::from_fn(&self.field, rows, cols, |r, c| self.get(r0 + r, c0 + c).clone())
    }

    pub fn block_diag(field: &K, blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            out.set_block(r0, c0, b);
            r0 += b.rows;
            c0 += b.cols;
        }
        out
    }

    /// Reduced row echelon form and its pivot columns (ascending).
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place(self.cols);
        (m, pivots)
    }

    /// Row-reduces in place, choosing pivots only among the first `limit`
    /// columns. Returns the pivot columns.
    fn rref_in_place(&mut self, limit: usize) -> Vec<usize> {
        let k = self.field.clone();
        let cols = self.cols;
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..limit {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&r| !k.is_zero(self.get(r, col))) else {
                continue;
            };
            if p != row {
                for c in 0..cols {
                    self.data.swap(p * cols + c, row * cols + c);
                }
            }
            let inv = k.inv(self.get(row, col));
            if !k.is_one(&inv) {
                for c in col..cols {
                    let idx = row * cols + c;
                    self.data[idx] = k.mul(&self.data[idx], &inv);
                }
            }
            for r in 0..self.rows {
                if r == row {
                    continue;
                }
                let factor = self.get(r, col).clone();
                if k.is_zero(&factor) {
                    continue;
                }
                for c in col..cols {
                    let sub = &self.data[row * cols + c];
                    if k.is_zero(sub) {
                        continue;
                    }
                    let t = k.mul(&factor, sub);
                    let idx = r * cols + c;
                    self.data[idx] = k.sub(&self.data[idx], &t);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        self.rref().1.len()
    }

    /// Null-space basis as columns: one vector per free column, in ascending
    /// free-column order, with a 1 in that column.
    pub fn kernel_basis(&self) -> Self {
        self.kernel_with_free_columns().0
    }

    /// Like [`Matrix::kernel_basis`], also returning the free columns; the
    /// coordinate functionals at those positions are dual to the basis.
    pub fn kernel_with_free_columns(&self) -> (Self, Vec<usize>) {
        let k = &self.field;
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Self::zeros(k, self.cols, free.len());
        for (j, &f) in free.iter().enumerate() {
            out.set(f, j, k.one());
            for (pr, &pc) in pivots.iter().enumerate() {
                out.set(pc, j, k.neg(r.get(pr, f)));
            }
        }
        (out, free)
    }

    /// Basis of the column space: the pivot columns of `self`.
    pub fn image_basis(&self) -> Self {
        let (_, pivots) = self.rref();
        self.select_columns(&pivots)
    }

    /// Some `X` with `self * X = rhs`, or `None` when inconsistent. Free
    /// variables are set to zero.
    pub fn solve(&self, rhs: &Self) -> Option<Self> {
        assert_eq!(self.rows, rhs.rows, "solve row count");
        let k = &self.field;
        let mut aug = self.hstack(rhs);
        let pivots = aug.rref_in_place(self.cols);
        // Consistency: rows below the pivot block must vanish in the rhs part.
        for r in pivots.len()..aug.rows {
            for c in self.cols..aug.cols {
                if !k.is_zero(aug.get(r, c)) {
                    return None;
                }
            }
        }
        let mut x = Self::zeros(k, self.cols, rhs.cols);
        for (pr, &pc) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(pc, c, aug.get(pr, self.cols + c).clone());
            }
        }
        Some(x)
    }
}

/// Coordinates for a quotient `span(sub) / span(quot)`: the complement basis
/// is the set of standard vectors (in `sub`-coordinates) at the non-pivot
/// columns of the row-reduced quotient generators.
struct Quotient<K: Field> {
    sub: Matrix<K>,
    /// Rows of rref(quot-in-sub-coordinates transposed).
    reduced: Matrix<K>,
    pivots: Vec<usize>,
    complement: Vec<usize>,
}

impl<K: Field> Quotient<K> {
    fn new(sub: &Matrix<K>, quot: &Matrix<K>) -> Result<Self> {
        let k = sub.field();
        if sub.rank() != sub.cols() {
            return Err(Error::Invalid("subspace generators are not independent".into()));
        }
        let qc = if quot.cols() == 0 {
            Matrix::zeros(k, sub.cols(), 0)
        } else {
            sub.solve(quot)
                .ok_or_else(|| Error::NotDescending("quotient space is not inside the subspace".into()))?
        };
        let (reduced, pivots) = qc.transpose().rref();
        let complement = (0..sub.cols()).filter(|c| !pivots.contains(c)).collect();
        Ok(Quotient { sub: sub.clone(), reduced, pivots, complement })
    }

    fn dim(&self) -> usize {
        self.complement.len()
    }

    /// Ambient vectors (columns) of the complement basis.
    fn basis_ambient(&self) -> Matrix<K> {
        self.sub.select_columns(&self.complement)
    }

    /// Projects ambient columns lying in `span(sub)` to complement coordinates.
    fn project(&self, v: &Matrix<K>) -> Result<Matrix<K>> {
        let k = self.sub.field();
        let y = self
            .sub
            .solve(v)
            .ok_or_else(|| Error::NotDescending("image leaves the target subspace".into()))?;
        let mut out = Matrix::zeros(k, self.complement.len(), v.cols());
        for c in 0..v.cols() {
            for (oi, &j) in self.complement.iter().enumerate() {
                let mut val = y.get(j, c).clone();
                for (pr, &pc) in self.pivots.iter().enumerate() {
                    let coeff = y.get(pc, c);
                    if k.is_zero(coeff) {
                        continue;
                    }
                    val = k.sub(&val, &k.mul(coeff, self.reduced.get(pr, j)));
                }
                out.set(oi, c, val);
            }
        }
        Ok(out)
    }
}

/// Matrix of the map `span(sub_src)/span(quot_src) -> span(sub_dst)/span(quot_dst)`
/// induced by `f`, in the deterministic complement bases.
///
/// `sub_*` must have independent columns; `quot_*` may be any spanning set of
/// a subspace of the corresponding `sub_*`.
pub fn induced_map<K: Field>(
    sub_src: &Matrix<K>,
    quot_src: &Matrix<K>,
    f: &Matrix<K>,
    sub_dst: &Matrix<K>,
    quot_dst: &Matrix<K>,
) -> Result<Matrix<K>> {
    let src = Quotient::new(sub_src, quot_src)?;
    let dst = Quotient::new(sub_dst, quot_dst)?;
    let k = f.field();
    if quot_src.cols() > 0 {
        let killed = dst.project(&f.mul(quot_src))?;
        if !killed.is_zero() {
            return Err(Error::NotDescending("f does not map the source quotient into the target quotient".into()));
        }
    }
    if src.dim() == 0 || dst.dim() == 0 {
        // still check that the source subspace lands in the target subspace
        if src.dim() > 0 {
            dst.project(&f.mul(&src.basis_ambient()))?;
        }
        return Ok(Matrix::zeros(k, dst.dim(), src.dim()));
    }
    dst.project(&f.mul(&src.basis_ambient()))
}

/// Complement-basis coordinates of `span(sub)/span(quot)`: returns
/// `(basis_ambient, projector)` where `basis_ambient` holds ambient
/// representatives as columns and `projector * v` gives the quotient
/// coordinates of any `v` in `span(sub)` given in `sub`-coordinates.
pub fn quotient_basis<K: Field>(sub: &Matrix<K>, quot: &Matrix<K>) -> Result<(Matrix<K>, Matrix<K>)> {
    let q = Quotient::new(sub, quot)?;
    let k = sub.field();
    let n = sub.cols();
    let mut proj = Matrix::zeros(k, q.complement.len(), n);
    for (oi, &j) in q.complement.iter().enumerate() {
        proj.set(oi, j, k.one());
        for (pr, &pc) in q.pivots.iter().enumerate() {
            let v = q.reduced.get(pr, j);
            if !k.is_zero(v) {
                let cur = proj.get(oi, pc).clone();
                proj.set(oi, pc, k.sub(&cur, v));
            }
        }
    }
    Ok((q.basis_ambient(), proj))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::{PrimeField, Rationals};

    fn q(rows: &[&[i64]]) -> Matrix<Rationals> {
        Matrix::from_i64_rows(&Rationals, rows)
    }

    #[test]
    fn rref_identity() {
        let (r, p) = Matrix::identity(&Rationals, 2).rref();
        assert_eq!(r, Matrix::identity(&Rationals, 2));
        assert_eq!(p, vec![0, 1]);
    }

    #[test]
    fn rref_rank_one_rational() {
        let (r, p) = q(&[&[1, 2], &[2, 4]]).rref();
        assert_eq!(r, q(&[&[1, 2], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn rref_characteristic_two() {
        let k = PrimeField::new(2).unwrap();
        let (r, p) = Matrix::from_i64_rows(&k, &[&[1, 1], &[1, 1]]).rref();
        assert_eq!(r, Matrix::from_i64_rows(&k, &[&[1, 1], &[0, 0]]));
        assert_eq!(p, vec![0]);
    }

    #[test]
    fn kernel_examples() {
        assert_eq!(Matrix::identity(&Rationals, 3).kernel_basis().cols(), 0);
        let z = Matrix::zeros(&Rationals, 2, 3);
        assert_eq!(z.kernel_basis(), Matrix::identity(&Rationals, 3));
        assert_eq!(q(&[&[1, 1]]).kernel_basis(), q(&[&[-1], &[1]]));
    }

    #[test]
    fn image_examples() {
        assert_eq!(Matrix::identity(&Rationals, 2).image_basis(), Matrix::identity(&Rationals, 2));
        assert_eq!(Matrix::zeros(&Rationals, 2, 2).image_basis().cols(), 0);
        assert_eq!(q(&[&[1, 2], &[2, 4]]).image_basis(), q(&[&[1], &[2]]));
    }

    #[test]
    fn solve_consistent_and_not() {
        let a = q(&[&[1, 2], &[2, 4]]);
        let x = a.solve(&q(&[&[3], &[6]])).unwrap();
        assert_eq!(a.mul(&x), q(&[&[3], &[6]]));
        assert!(a.solve(&q(&[&[1], &[0]])).is_none());
    }

    #[test]
    fn induced_map_trivial_cases() {
        let f = q(&[&[1, 2], &[3, 4]]);
        let id = Matrix::identity(&Rationals, 2);
        let none = Matrix::zeros(&Rationals, 2, 0);
        assert_eq!(induced_map(&id, &none, &f, &id, &none).unwrap(), f);
        let zero = Matrix::zeros(&Rationals, 2, 2);
        assert!(induced_map(&id, &none, &zero, &id, &none).unwrap().is_zero());
        // identity on a quotient by a line
        let line = q(&[&[1], &[1]]);
        let m = induced_map(&id, &line, &id, &id, &line).unwrap();
        assert_eq!(m, Matrix::identity(&Rationals, 1));
    }

    #[test]
    fn induced_map_rejects_non_descending() {
        let id = Matrix::identity(&Rationals, 2);
        let e1 = q(&[&[1], &[0]]);
        let e2 = q(&[&[0], &[1]]);
        let none = Matrix::zeros(&Rationals, 2, 0);
        // identity does not send span(e1) into span(e2)
        assert!(induced_map(&e1, &none, &id, &e2, &none).is_err());
        // swapping coordinates does not preserve the quotient by e1
        let swap = q(&[&[0, 1], &[1, 0]]);
        assert!(induced_map(&id, &e1, &swap, &id, &e1).is_err());
    }

    #[test]
    fn quotient_projector_kills_quotient() {
        let sub = Matrix::identity(&Rationals, 3);
        let quot = q(&[&[1], &[2], &[3]]);
        let (basis, proj) = quotient_basis(&sub, &quot).unwrap();
        assert_eq!(basis.cols(), 2);
        assert!(proj.mul(&quot).is_zero());
        assert_eq!(proj.mul(&basis), Matrix::identity(&Rationals, 2));
    }
}

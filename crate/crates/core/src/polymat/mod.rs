//! Polynomial matrices, shifted degrees, and normal-form predicates.
//!
//! Conventions: a shift is a slice of `i64`, one entry per column of the
//! matrix it weights. Degrees of zero polynomials are `None` (minus
//! infinity) and compare below every finite degree. Popov forms carry their
//! pivots on the diagonal: row `i` has its `s`-pivot in column `i`.

mod linearize;
mod mul;
mod reduce;

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

pub use linearize::{expand_columns, matmul_unbalanced, row_plan, LinearizationPlan};
pub use reduce::{popov_form_by_elimination, reduce_vector_mod_rowspace, weak_popov_form, WeakPopov};

pub(crate) use linearize::expand_columns_with;

use crate::constmat::ConstMat;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::Poly;

#[derive(Clone, PartialEq, Eq)]
pub struct PolyMat {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Poly>,
}

impl PolyMat {
    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        PolyMat {
            field,
            rows,
            cols,
            entries: vec![Poly::zero(field); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Poly::one(field));
        }
        m
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut entry: impl FnMut(usize, usize) -> Poly,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = entry(i, j);
                assert_eq!(e.field(), field, "entry over a different field");
                entries.push(e);
            }
        }
        PolyMat {
            field,
            rows,
            cols,
            entries,
        }
    }

    /// Builds a matrix from entries given as signed coefficient lists
    /// (low-to-high). An empty list is the zero polynomial.
    pub fn from_i64(field: Field, rows: &[Vec<Vec<i64>>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        Self::from_fn(field, rows.len(), cols, |i, j| {
            Poly::from_i64s(field, &rows[i][j])
        })
    }

    pub fn from_constmat(c: &ConstMat) -> Self {
        Self::from_fn(c.field(), c.rows(), c.cols(), |i, j| {
            Poly::constant(c.field(), c.get(i, j))
        })
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(field: Field, diag: Vec<Poly>) -> Self {
        let n = diag.len();
        let mut m = Self::zeros(field, n, n);
        for (i, d) in diag.into_iter().enumerate() {
            m.set(i, i, d);
        }
        m
    }

    #[inline]
    pub fn field(&self) -> Field {
        self.field
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Poly {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut Poly {
        &mut self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, p: Poly) {
        assert_eq!(p.field(), self.field, "entry over a different field");
        self.entries[i * self.cols + j] = p;
    }

    pub fn row_entries(&self, i: usize) -> &[Poly] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub(crate) fn row_entries_mut(&mut self, i: usize) -> &mut [Poly] {
        &mut self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn entries(&self) -> impl Iterator<Item = &Poly> {
        self.entries.iter()
    }

    /// Row `i` as a `1 x cols` matrix.
    pub fn row(&self, i: usize) -> PolyMat {
        self.select_rows(&[i])
    }

    pub fn submatrix(
        &self,
        rows: std::ops::Range<usize>,
        cols: std::ops::Range<usize>,
    ) -> PolyMat {
        let (r0, c0) = (rows.start, cols.start);
        Self::from_fn(self.field, rows.len(), cols.len(), |i, j| {
            self.get(r0 + i, c0 + j).clone()
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> PolyMat {
        Self::from_fn(self.field, idx.len(), self.cols, |i, j| {
            self.get(idx[i], j).clone()
        })
    }

    pub fn select_cols(&self, idx: &[usize]) -> PolyMat {
        Self::from_fn(self.field, self.rows, idx.len(), |i, j| {
            self.get(i, idx[j]).clone()
        })
    }

    pub fn vstack(&self, other: &PolyMat) -> Result<PolyMat> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "cannot stack {} and {} columns",
                self.cols, other.cols
            )));
        }
        check_fields(self, other)?;
        let mut entries = self.entries.clone();
        entries.extend(other.entries.iter().cloned());
        Ok(PolyMat {
            field: self.field,
            rows: self.rows + other.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn hstack(&self, other: &PolyMat) -> Result<PolyMat> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot concatenate {} and {} rows",
                self.rows, other.rows
            )));
        }
        check_fields(self, other)?;
        let c = self.cols;
        Ok(Self::from_fn(self.field, self.rows, c + other.cols, |i, j| {
            if j < c {
                self.get(i, j).clone()
            } else {
                other.get(i, j - c).clone()
            }
        }))
    }

    pub fn transpose(&self) -> PolyMat {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    /// Largest entry degree, `None` for the zero matrix.
    pub fn degree(&self) -> Option<usize> {
        self.entries.iter().map(Poly::degree).max().flatten()
    }

    pub fn cdeg(&self) -> Vec<Option<usize>> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j).degree()).max().flatten())
            .collect()
    }

    pub fn rdeg(&self) -> Vec<Option<usize>> {
        (0..self.rows)
            .map(|i| self.row_entries(i).iter().map(Poly::degree).max().flatten())
            .collect()
    }

    pub fn diagonal_degrees(&self) -> Vec<Option<usize>> {
        (0..self.rows.min(self.cols))
            .map(|i| self.get(i, i).degree())
            .collect()
    }

    fn check_shift(&self, s: &[i64]) -> Result<()> {
        if s.len() != self.cols {
            return Err(Error::ShiftLength {
                expected: self.cols,
                got: s.len(),
            });
        }
        Ok(())
    }

    /// `s`-row degree: entry `i` is `max_j (deg p_ij + s_j)` over the nonzero
    /// entries of row `i`, `None` for a zero row.
    pub fn rdeg_shifted(&self, s: &[i64]) -> Result<Vec<Option<i64>>> {
        self.check_shift(s)?;
        Ok((0..self.rows).map(|i| self.row_shifted_degree(i, s)).collect())
    }

    pub(crate) fn row_shifted_degree(&self, i: usize, s: &[i64]) -> Option<i64> {
        self.row_entries(i)
            .iter()
            .zip(s)
            .filter_map(|(p, &sj)| p.degree().map(|d| d as i64 + sj))
            .max()
    }

    /// The `s`-leading matrix: entry `(i, j)` is the coefficient of degree
    /// `d_i - s_j` of `p_ij`, with `d = rdeg_s`. Zero rows give zero rows.
    pub fn leading_matrix_shifted(&self, s: &[i64]) -> Result<ConstMat> {
        self.check_shift(s)?;
        let mut lm = ConstMat::zeros(self.field, self.rows, self.cols);
        for i in 0..self.rows {
            let Some(d) = self.row_shifted_degree(i, s) else {
                continue;
            };
            for j in 0..self.cols {
                let k = d - s[j];
                if k >= 0 {
                    lm.set(i, j, self.get(i, j).coeff(k as usize));
                }
            }
        }
        Ok(lm)
    }

    /// Column leading matrix: entry `(i, j)` is the coefficient of degree
    /// `cdeg_j` in `p_ij` (the transpose of the leading matrix of the
    /// transpose).
    pub fn column_leading_matrix(&self) -> ConstMat {
        let cdeg = self.cdeg();
        let mut lm = ConstMat::zeros(self.field, self.rows, self.cols);
        for (j, d) in cdeg.iter().enumerate() {
            if let Some(d) = d {
                for i in 0..self.rows {
                    lm.set(i, j, self.get(i, j).coeff(*d));
                }
            }
        }
        lm
    }

    pub fn is_column_reduced(&self) -> bool {
        self.is_square() && self.column_leading_matrix().is_invertible()
    }

    /// `s`-reduced: square with invertible `s`-leading matrix.
    pub fn is_reduced(&self, s: &[i64]) -> bool {
        self.is_square()
            && self
                .leading_matrix_shifted(s)
                .map(|lm| lm.is_invertible())
                .unwrap_or(false)
    }

    /// `s`-Popov: the `s`-leading matrix is unit lower triangular and the
    /// column leading matrix is the identity.
    pub fn is_popov(&self, s: &[i64]) -> bool {
        if !self.is_square() || s.len() != self.cols {
            return false;
        }
        if (0..self.rows).any(|i| self.row_entries(i).iter().all(Poly::is_zero)) {
            return false;
        }
        self.column_leading_matrix().is_identity()
            && self
                .leading_matrix_shifted(s)
                .map(|lm| lm.is_unit_lower_triangular())
                .unwrap_or(false)
    }

    /// Hermite form: upper triangular, monic diagonal, and every entry above
    /// the diagonal of smaller degree than the diagonal entry of its column.
    pub fn is_hermite(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for j in 0..self.cols {
            let diag = self.get(j, j);
            if !diag.is_monic() {
                return false;
            }
            if (j + 1..self.rows).any(|i| !self.get(i, j).is_zero()) {
                return false;
            }
            if (0..j).any(|i| self.get(i, j).degree() >= diag.degree()) {
                return false;
            }
        }
        true
    }

    /// Coefficient matrix of `x^k`.
    pub fn coefficient(&self, k: usize) -> ConstMat {
        let mut c = ConstMat::zeros(self.field, self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                c.set(i, j, self.get(i, j).coeff(k));
            }
        }
        c
    }

    pub fn constant_term(&self) -> ConstMat {
        self.coefficient(0)
    }

    /// Entrywise `mod x^t`.
    pub fn truncate(&self, t: usize) -> PolyMat {
        self.map(|p| p.truncate(t))
    }

    /// Entrywise multiplication by `x^k`.
    pub fn shift(&self, k: usize) -> PolyMat {
        self.map(|p| p.shift(k))
    }

    /// Entrywise exact quotient by `x^k` (drops the low coefficients).
    pub fn div_x_pow(&self, k: usize) -> PolyMat {
        self.map(|p| p.slice(k, usize::MAX))
    }

    pub fn scale(&self, c: u64) -> PolyMat {
        self.map(|p| p.scale(c))
    }

    pub fn map(&self, f: impl Fn(&Poly) -> Poly) -> PolyMat {
        PolyMat {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    /// `M(1/x) diag(x^{offsets})`; every column degree must be at most its
    /// offset.
    pub fn column_reversal(&self, offsets: &[usize]) -> Result<PolyMat> {
        if offsets.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{} offsets for {} columns",
                offsets.len(),
                self.cols
            )));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for j in 0..self.cols {
                let e = out.get_mut(i, j);
                *e = e.reverse(offsets[j])?;
            }
        }
        Ok(out)
    }

    pub fn matmul(&self, other: &PolyMat) -> Result<PolyMat> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        check_fields(self, other)?;
        Ok(mul::matmul(self, other))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<Poly> {
        if !self.is_square() {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        let f = self.field;
        if n == 0 {
            return Ok(Poly::one(f));
        }
        let mut a: Vec<Vec<Poly>> = (0..n).map(|i| self.row_entries(i).to_vec()).collect();
        let mut negate = false;
        let mut prev = Poly::one(f);
        for k in 0..n {
            let Some(piv) = (k..n).find(|&i| !a[i][k].is_zero()) else {
                return Ok(Poly::zero(f));
            };
            if piv != k {
                a.swap(piv, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &(&a[k][k] * &a[i][j]) - &(&a[i][k] * &a[k][j]);
                    let (q, r) = num.divrem(&prev)?;
                    debug_assert!(r.is_zero(), "Bareiss division must be exact");
                    a[i][j] = q;
                }
                a[i][k] = Poly::zero(f);
            }
            prev = a[k][k].clone();
        }
        let det = a[n - 1][n - 1].clone();
        Ok(if negate { -&det } else { det })
    }
}

pub(crate) fn check_fields(a: &PolyMat, b: &PolyMat) -> Result<()> {
    if a.field != b.field {
        return Err(Error::ModulusMismatch(a.field.modulus(), b.field.modulus()));
    }
    Ok(())
}

/// `c + t` for every entry of a shift.
pub fn translate_shift(s: &[i64], t: i64) -> Vec<i64> {
    s.iter().map(|&v| v + t).collect()
}

impl fmt::Debug for PolyMat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "PolyMat {}x{} over F_{} [", self.rows, self.cols, self.field.modulus())?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row_entries(i).iter().map(|p| p.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Add<&PolyMat> for &PolyMat {
    type Output = PolyMat;
    fn add(self, rhs: &PolyMat) -> PolyMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a += b;
        }
        out
    }
}

impl Sub<&PolyMat> for &PolyMat {
    type Output = PolyMat;
    fn sub(self, rhs: &PolyMat) -> PolyMat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "shape mismatch");
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a -= b;
        }
        out
    }
}

impl Neg for &PolyMat {
    type Output = PolyMat;
    fn neg(self) -> PolyMat {
        self.map(|p| -p)
    }
}

/// Panics on shape or field mismatch; see [`PolyMat::matmul`].
impl Mul<&PolyMat> for &PolyMat {
    type Output = PolyMat;
    fn mul(self, rhs: &PolyMat) -> PolyMat {
        self.matmul(rhs).expect("incompatible matrix product")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f7() -> Field {
        Field::new(7).unwrap()
    }

    fn pm(rows: &[Vec<Vec<i64>>]) -> PolyMat {
        PolyMat::from_i64(f7(), rows)
    }

    fn x_m1_0_x() -> PolyMat {
        pm(&[vec![vec![0, 1], vec![-1]], vec![vec![], vec![0, 1]]])
    }

    #[test]
    fn column_degrees() {
        let m = pm(&[vec![vec![1, 0, 1], vec![0, 1]], vec![vec![3], vec![0, 0, 0, 1]]]);
        assert_eq!(m.cdeg(), vec![Some(2), Some(3)]);
        assert_eq!(PolyMat::zeros(f7(), 2, 2).cdeg(), vec![None, None]);
        assert_eq!(PolyMat::identity(f7(), 3).cdeg(), vec![Some(0); 3]);
    }

    #[test]
    fn shifted_row_degrees() {
        // max(1 + 0, 0 + 5)
        let p = pm(&[vec![vec![0, 1], vec![1]]]);
        assert_eq!(p.rdeg_shifted(&[0, 5]).unwrap(), vec![Some(5)]);
        let i2 = PolyMat::identity(f7(), 2);
        assert_eq!(i2.rdeg_shifted(&[3, 7]).unwrap(), vec![Some(3), Some(7)]);
        assert_eq!(x_m1_0_x().rdeg_shifted(&[0, 0]).unwrap(), vec![Some(1), Some(1)]);
        assert_eq!(
            i2.rdeg_shifted(&[1]),
            Err(Error::ShiftLength { expected: 2, got: 1 })
        );
    }

    #[test]
    fn shifted_leading_matrices() {
        let f = f7();
        let i3 = PolyMat::identity(f, 3);
        assert!(i3.leading_matrix_shifted(&[4, -2, 9]).unwrap().is_identity());
        assert!(x_m1_0_x().leading_matrix_shifted(&[0, 0]).unwrap().is_identity());
        let d = pm(&[vec![vec![0, 2], vec![]], vec![vec![], vec![0, 1]]]);
        assert_eq!(
            d.leading_matrix_shifted(&[0, 0]).unwrap(),
            ConstMat::from_i64_rows(f, &[vec![2, 0], vec![0, 1]])
        );
    }

    #[test]
    fn popov_and_reduced_predicates() {
        let f = f7();
        assert!(PolyMat::identity(f, 3).is_popov(&[5, -1, 2]));
        assert!(x_m1_0_x().is_popov(&[0, 0]));
        let d = pm(&[vec![vec![0, 2], vec![]], vec![vec![], vec![0, 1]]]);
        assert!(d.is_reduced(&[0, 0]));
        assert!(!d.is_popov(&[0, 0]));
        let with_zero_row = pm(&[vec![vec![1], vec![]], vec![vec![], vec![]]]);
        assert!(!with_zero_row.is_popov(&[0, 0]));
    }

    #[test]
    fn hermite_predicate() {
        let f = f7();
        assert!(pm(&[vec![vec![0, 1], vec![1]], vec![vec![], vec![0, 1]]]).is_hermite());
        assert!(!pm(&[vec![vec![0, 1], vec![0, 1]], vec![vec![], vec![0, 1]]]).is_hermite());
        assert!(PolyMat::identity(f, 4).is_hermite());
    }

    #[test]
    fn products() {
        let a = pm(&[vec![vec![0, 1], vec![1]], vec![vec![], vec![0, 1]]]);
        assert_eq!(&a * &PolyMat::identity(f7(), 2), a);
        assert_eq!(
            &a * &a,
            pm(&[vec![vec![0, 0, 1], vec![0, 2]], vec![vec![], vec![0, 0, 1]]])
        );
        assert!(a.matmul(&PolyMat::identity(f7(), 3)).is_err());
    }

    #[test]
    fn reversal() {
        let m = pm(&[vec![vec![0, 1], vec![1]], vec![vec![], vec![0, 1]]]);
        let r = m.column_reversal(&[1, 1]).unwrap();
        assert_eq!(r, pm(&[vec![vec![1], vec![0, 1]], vec![vec![], vec![1]]]));
        assert_eq!(r.column_reversal(&[1, 1]).unwrap(), m);
        let i = PolyMat::identity(f7(), 3);
        assert_eq!(i.column_reversal(&[0, 0, 0]).unwrap(), i);
        assert!(m.column_reversal(&[0, 1]).is_err());
    }

    #[test]
    fn determinant_of_small_matrices() {
        let f = f7();
        let m = pm(&[vec![vec![1, 1], vec![0, 1]], vec![vec![0, 1], vec![0, 1]]]);
        // (x+1)x - x*x = x
        assert_eq!(m.determinant().unwrap(), Poly::x(f));
        let sing = pm(&[vec![vec![0, 1], vec![0, 2]], vec![vec![0, 0, 1], vec![0, 0, 2]]]);
        assert!(sing.determinant().unwrap().is_zero());
        let perm = pm(&[vec![vec![], vec![1]], vec![vec![1], vec![]]]);
        assert_eq!(perm.determinant().unwrap(), Poly::from_i64s(f, &[-1]));
    }

    #[test]
    fn shift_translation_properties() {
        let p = pm(&[vec![vec![0, 1], vec![3, 1]], vec![vec![2], vec![0, 0, 1]]]);
        let s = [2i64, -1];
        let d = p.rdeg_shifted(&s).unwrap();
        let d7 = p.rdeg_shifted(&translate_shift(&s, 7)).unwrap();
        assert!(d.iter().zip(&d7).all(|(a, b)| a.map(|v| v + 7) == *b));
        assert_eq!(p.is_popov(&s), p.is_popov(&translate_shift(&s, -4)));
        assert!(x_m1_0_x().is_popov(&translate_shift(&[0, 0], 11)));
    }
}

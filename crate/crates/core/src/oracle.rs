//! Slow reference implementations used to cross-check the fast routines.
//! Nothing here calls the division, approximant, or relation modules.

use crate::constmat::ConstMat;
use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::polymat::{check_fields, popov_form_by_elimination, reduce_vector_mod_rowspace, PolyMat};

/// Quotient and remainder of `F` by a column-reduced `M`, by cancelling the
/// top coefficients of each row against the column leading matrix of `M`
/// until every column degree drops below that of `M`.
pub fn naive_quorem(m: &PolyMat, f: &PolyMat) -> Result<(PolyMat, PolyMat)> {
    check_fields(m, f)?;
    if !m.is_square() || f.cols() != m.cols() {
        return Err(Error::DimensionMismatch(format!(
            "F is {}x{}, M is {}x{}",
            f.rows(),
            f.cols(),
            m.rows(),
            m.cols()
        )));
    }
    let lead_inv = m.column_leading_matrix().inverse().ok_or(Error::NotColumnReduced)?;
    let fld = m.field();
    let n = m.cols();
    let sigma: Vec<usize> = m.cdeg().iter().map(|d| d.unwrap_or(0)).collect();
    let mut q = PolyMat::zeros(fld, f.rows(), n);
    let mut r = f.clone();
    for i in 0..f.rows() {
        loop {
            // largest excess of a column degree over the divisor's
            let excess = (0..n)
                .filter_map(|j| r.get(i, j).degree().and_then(|d| d.checked_sub(sigma[j])))
                .max();
            let Some(e) = excess else { break };
            let top: Vec<u64> = (0..n).map(|j| r.get(i, j).coeff(sigma[j] + e)).collect();
            for k in 0..n {
                let mut c = 0;
                for (j, &t) in top.iter().enumerate() {
                    c = fld.add(c, fld.mul(t, lead_inv.get(j, k)));
                }
                if c == 0 {
                    continue;
                }
                let term = Poly::monomial(fld, c, e);
                let qk = q.get(i, k) + &term;
                q.set(i, k, qk);
                for j in 0..n {
                    let sub = &term * m.get(k, j);
                    let v = r.get(i, j) - &sub;
                    r.set(i, j, v);
                }
            }
        }
    }
    Ok((q, r))
}

/// Coefficient vector of `rem(v, M)`, laid out column by column with
/// `sigma[j]` slots for column `j`.
fn remainder_coefficients(m: &PolyMat, v: &PolyMat, sigma: &[usize]) -> Result<Vec<u64>> {
    let (_, r) = naive_quorem(m, v)?;
    let mut out = Vec::with_capacity(sigma.iter().sum());
    for (j, &sj) in sigma.iter().enumerate() {
        out.extend((0..sj).map(|k| r.get(0, j).coeff(k)));
    }
    Ok(out)
}

/// A column-reduced basis of the row space of `M` (itself when possible).
fn column_reduced_basis(m: &PolyMat) -> Result<PolyMat> {
    if m.is_column_reduced() {
        Ok(m.clone())
    } else {
        popov_form_by_elimination(m, &vec![0; m.rows()])
    }
}

/// A basis over the field of all relations `p` with `deg p ≤ dmax`, each as
/// a `1 x m` row. Found as the left kernel of the constant matrix sending
/// the coefficients of `p` to those of `rem(p·F, M)`.
pub fn brute_force_relations(m: &PolyMat, f: &PolyMat, _s: &[i64], dmax: usize) -> Result<Vec<PolyMat>> {
    check_fields(m, f)?;
    let fld = m.field();
    let mr = column_reduced_basis(m)?;
    let sigma: Vec<usize> = mr.cdeg().iter().map(|d| d.unwrap_or(0)).collect();
    let rows = f.rows();
    let width: usize = sigma.iter().sum();
    let mut map = ConstMat::zeros(fld, rows * (dmax + 1), width);
    for i in 0..rows {
        for k in 0..=dmax {
            let image = remainder_coefficients(&mr, &f.row(i).shift(k), &sigma)?;
            map.row_mut(i * (dmax + 1) + k).copy_from_slice(&image);
        }
    }
    Ok(map
        .left_kernel()
        .into_iter()
        .map(|v| {
            PolyMat::from_fn(fld, 1, rows, |_, i| {
                Poly::from_reduced(fld, v[i * (dmax + 1)..(i + 1) * (dmax + 1)].to_vec())
            })
        })
        .collect())
}

/// True iff `P` is in `s`-Popov form, its rows are relations, its
/// determinant degree is at most that of `M`, and every relation of degree
/// up to `deg det M` lies in its row space.
pub fn verify_relation_basis(p: &PolyMat, m: &PolyMat, f: &PolyMat, s: &[i64]) -> bool {
    verify(p, m, f, s).unwrap_or(false)
}

fn verify(p: &PolyMat, m: &PolyMat, f: &PolyMat, s: &[i64]) -> Result<bool> {
    if !p.is_square() || p.rows() != f.rows() || s.len() != p.rows() || !p.is_popov(s) {
        return Ok(false);
    }
    let mr = column_reduced_basis(m)?;
    let (_, r) = naive_quorem(&mr, &p.matmul(f)?)?;
    if !r.is_zero() {
        return Ok(false);
    }
    let ddet = m.determinant()?.degree().ok_or(Error::Singular)?;
    let pdet: usize = p.diagonal_degrees().iter().map(|d| d.unwrap_or(0)).sum();
    if pdet > ddet {
        return Ok(false);
    }
    for v in brute_force_relations(&mr, f, s, ddet)? {
        if !reduce_vector_mod_rowspace(&v, p, s)?.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

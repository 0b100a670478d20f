//! Hermite normal form by Euclidean row reduction.

use crate::error::{Error, Result};
use crate::poly::Poly;
use crate::polymat::PolyMat;

/// `rows[dst] -= q · rows[src]`, touching only columns `from..`.
fn sub_multiple(rows: &mut [Vec<Poly>], dst: usize, src: usize, q: &Poly, from: usize) {
    if q.is_zero() {
        return;
    }
    let (d, s) = if dst < src {
        let (a, b) = rows.split_at_mut(src);
        (&mut a[dst], &b[0])
    } else {
        let (a, b) = rows.split_at_mut(dst);
        (&mut b[0], &a[src])
    };
    for k in from..d.len() {
        if !s[k].is_zero() {
            let t = q * &s[k];
            d[k] -= &t;
        }
    }
}

/// The Hermite form of a square nonsingular matrix: the unique
/// row-equivalent upper triangular matrix with monic diagonal whose
/// off-diagonal entries have smaller degree than the diagonal entry of
/// their column.
pub fn hermite_form(m: &PolyMat) -> Result<PolyMat> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("Hermite form of a non-square matrix".into()));
    }
    let n = m.rows();
    let f = m.field();
    let mut rows: Vec<Vec<Poly>> = (0..n).map(|i| m.row_entries(i).to_vec()).collect();
    for j in 0..n {
        loop {
            let Some(piv) = (j..n)
                .filter(|&i| !rows[i][j].is_zero())
                .min_by_key(|&i| (rows[i][j].degree(), i))
            else {
                return Err(Error::Singular);
            };
            rows.swap(piv, j);
            let mut clean = true;
            for i in j + 1..n {
                if rows[i][j].is_zero() {
                    continue;
                }
                let (q, r) = rows[i][j].divrem(&rows[j][j])?;
                sub_multiple(&mut rows, i, j, &q, j);
                clean &= r.is_zero();
            }
            if clean {
                break;
            }
        }
        let inv = f.inv(rows[j][j].leading_coeff());
        for e in rows[j][j..].iter_mut() {
            *e = e.scale(inv);
        }
        for i in 0..j {
            let (q, _) = rows[i][j].divrem(&rows[j][j])?;
            sub_multiple(&mut rows, i, j, &q, j);
        }
    }
    Ok(PolyMat::from_fn(f, n, n, |i, j| rows[i][j].clone()))
}

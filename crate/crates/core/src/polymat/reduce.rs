//! Shifted weak Popov forms (Mulders–Storjohann elimination) and normal
//! forms of vectors modulo the row space of a reduced basis.

use super::PolyMat;
use crate::error::{Error, Result};
use crate::poly::Poly;

/// A nonsingular matrix in `s`-weak Popov form with row `i` having its
/// `s`-pivot in column `i`.
#[derive(Clone, Debug)]
pub struct WeakPopov {
    pub matrix: PolyMat,
    /// Degree of the pivot entry of each row (the diagonal entry).
    pub pivot_degrees: Vec<usize>,
}

/// `s`-pivot of a row: the rightmost column attaining the `s`-row degree,
/// with the degree of that entry.
pub(crate) fn row_pivot(row: &[Poly], s: &[i64]) -> Option<(usize, usize)> {
    let mut best: Option<(i64, usize, usize)> = None;
    for (j, (p, &sj)) in row.iter().zip(s).enumerate() {
        if let Some(d) = p.degree() {
            let lvl = d as i64 + sj;
            if best.is_none_or(|(b, _, _)| lvl >= b) {
                best = Some((lvl, j, d));
            }
        }
    }
    best.map(|(_, j, d)| (j, d))
}

/// Row-equivalent `s`-weak Popov form of a square nonsingular matrix, rows
/// permuted so that pivots sit on the diagonal.
pub fn weak_popov_form(m: &PolyMat, s: &[i64]) -> Result<WeakPopov> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("weak Popov form needs a square matrix".into()));
    }
    m.check_shift(s)?;
    let n = m.rows();
    let f = m.field();
    let mut rows: Vec<Vec<Poly>> = (0..n).map(|i| m.row_entries(i).to_vec()).collect();
    let mut pivots: Vec<Option<(usize, usize)>> = rows.iter().map(|r| row_pivot(r, s)).collect();
    if pivots.iter().any(Option::is_none) {
        return Err(Error::Singular);
    }
    // owner[j] = row currently holding pivot column j
    let mut owner: Vec<Option<usize>> = vec![None; n];
    let mut queue: Vec<usize> = (0..n).collect();
    while let Some(a) = queue.pop() {
        let Some((j, da)) = pivots[a] else {
            return Err(Error::Singular);
        };
        let Some(b) = owner[j] else {
            owner[j] = Some(a);
            continue;
        };
        let (_, db) = pivots[b].expect("owner has a pivot");
        // eliminate the pivot of the row with larger pivot degree
        let (hi, lo, dh, dl) = if da >= db { (a, b, da, db) } else { (b, a, db, da) };
        let c = f.mul(rows[hi][j].leading_coeff(), f.inv(rows[lo][j].leading_coeff()));
        let (src, dst) = if hi < lo {
            let (x, y) = rows.split_at_mut(lo);
            (&y[0], &mut x[hi])
        } else {
            let (x, y) = rows.split_at_mut(hi);
            (&x[lo], &mut y[0])
        };
        for (d, sv) in dst.iter_mut().zip(src.iter()) {
            d.add_scaled_shifted(f.neg(c), dh - dl, sv);
        }
        pivots[hi] = row_pivot(&rows[hi], s);
        if pivots[hi].is_none() {
            return Err(Error::Singular);
        }
        owner[j] = Some(lo);
        queue.push(hi);
    }
    let mut matrix = PolyMat::zeros(f, n, n);
    let mut pivot_degrees = vec![0; n];
    for (j, o) in owner.iter().enumerate() {
        let r = o.expect("every column owns a pivot");
        matrix.row_entries_mut(j).clone_from_slice(&rows[r]);
        pivot_degrees[j] = pivots[r].expect("pivot").1;
    }
    Ok(WeakPopov {
        matrix,
        pivot_degrees,
    })
}

/// Reduces `v` in place modulo the row space of `w` (an `s`-weak Popov
/// basis with diagonal pivots of degrees `pdeg`). Afterwards every entry
/// `v_j` has degree below `pdeg[j]`.
pub(crate) fn normal_form_in_place(v: &mut [Poly], w: &PolyMat, pdeg: &[usize], s: &[i64]) {
    let f = w.field();
    let n = v.len();
    let Some(top) = v
        .iter()
        .zip(s)
        .filter_map(|(p, &sj)| p.degree().map(|d| d as i64 + sj))
        .max()
    else {
        return;
    };
    let bottom = s.iter().copied().min().unwrap_or(0);
    let lead_inv: Vec<u64> = (0..n).map(|j| f.inv(w.get(j, j).leading_coeff())).collect();
    // Subtracting x^k·w_j only creates terms below (level, column) of the
    // cancelled one, so a single sweep from the top suffices.
    let mut level = top;
    while level >= bottom {
        for j in (0..n).rev() {
            let a = level - s[j];
            if a < 0 || (a as usize) < pdeg[j] {
                continue;
            }
            let a = a as usize;
            let c = v[j].coeff(a);
            if c == 0 {
                continue;
            }
            let factor = f.neg(f.mul(c, lead_inv[j]));
            for (t, vt) in v.iter_mut().enumerate() {
                vt.add_scaled_shifted(factor, a - pdeg[j], w.get(j, t));
            }
        }
        level -= 1;
    }
}

/// The `s`-Popov basis of the row space of an `s`-weak Popov basis.
pub(crate) fn popov_from_weak_popov(wp: &WeakPopov, s: &[i64]) -> PolyMat {
    let w = &wp.matrix;
    let f = w.field();
    let n = w.rows();
    let mut out = PolyMat::zeros(f, n, n);
    for i in 0..n {
        let lc_inv = f.inv(w.get(i, i).leading_coeff());
        let mut row: Vec<Poly> = w.row_entries(i).iter().map(|p| p.scale(lc_inv)).collect();
        let lead = Poly::monomial(f, 1, wp.pivot_degrees[i]);
        row[i] -= &lead;
        normal_form_in_place(&mut row, w, &wp.pivot_degrees, s);
        row[i] += &lead;
        out.row_entries_mut(i).clone_from_slice(&row);
    }
    out
}

/// The `s`-Popov form of a square nonsingular matrix (row equivalence),
/// by weak Popov elimination followed by normal-form reduction.
pub fn popov_form_by_elimination(m: &PolyMat, s: &[i64]) -> Result<PolyMat> {
    let wp = weak_popov_form(m, s)?;
    Ok(popov_from_weak_popov(&wp, s))
}

/// Normal form of the row vector `v` modulo the row space of the `s`-reduced
/// matrix `p`; zero exactly when `v` belongs to that row space.
pub fn reduce_vector_mod_rowspace(v: &PolyMat, p: &PolyMat, s: &[i64]) -> Result<PolyMat> {
    super::check_fields(v, p)?;
    if v.rows() != 1 || v.cols() != p.cols() {
        return Err(Error::DimensionMismatch(format!(
            "expected a 1x{} row vector, got {}x{}",
            p.cols(),
            v.rows(),
            v.cols()
        )));
    }
    p.check_shift(s)?;
    if !p.is_reduced(s) {
        return Err(Error::NotReduced);
    }
    let wp = weak_popov_form(p, s)?;
    let mut row = v.row_entries(0).to_vec();
    normal_form_in_place(&mut row, &wp.matrix, &wp.pivot_degrees, s);
    let mut out = PolyMat::zeros(v.field(), 1, v.cols());
    out.row_entries_mut(0).clone_from_slice(&row);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f() -> Field {
        Field::new(97).unwrap()
    }

    fn x_m1_0_x() -> PolyMat {
        PolyMat::from_i64(f(), &[vec![vec![0, 1], vec![-1]], vec![vec![], vec![0, 1]]])
    }

    fn random_nonsingular(rng: &mut ChaCha8Rng, n: usize, d: usize) -> PolyMat {
        loop {
            let m = PolyMat::from_fn(f(), n, n, |_, _| {
                let l = rng.gen_range(0..=d + 1);
                Poly::from_coeffs(f(), (0..l).map(|_| rng.gen_range(0..97)).collect())
            });
            if !m.determinant().unwrap().is_zero() {
                return m;
            }
        }
    }

    #[test]
    fn rows_of_the_basis_reduce_to_zero() {
        let p = x_m1_0_x();
        for i in 0..2 {
            assert!(reduce_vector_mod_rowspace(&p.row(i), &p, &[0, 0]).unwrap().is_zero());
        }
        let v = PolyMat::from_i64(f(), &[vec![vec![0, 0, 1], vec![]]]);
        assert!(reduce_vector_mod_rowspace(&v, &p, &[0, 0]).unwrap().is_zero());
        let one = PolyMat::from_i64(f(), &[vec![vec![1], vec![]]]);
        assert!(!reduce_vector_mod_rowspace(&one, &p, &[0, 0]).unwrap().is_zero());
    }

    #[test]
    fn non_reduced_basis_is_rejected() {
        let p = PolyMat::from_i64(f(), &[vec![vec![0, 1], vec![0, 0, 1]], vec![vec![1], vec![1, 1]]]);
        let v = PolyMat::from_i64(f(), &[vec![vec![1], vec![]]]);
        assert_eq!(reduce_vector_mod_rowspace(&v, &p, &[0, 0]), Err(Error::NotReduced));
    }

    #[test]
    fn elimination_yields_popov_forms_of_the_same_module() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..40 {
            let n = rng.gen_range(1..4);
            let m = random_nonsingular(&mut rng, n, 3);
            let s: Vec<i64> = (0..n).map(|_| rng.gen_range(-4..5)).collect();
            let p = popov_form_by_elimination(&m, &s).unwrap();
            assert!(p.is_popov(&s), "{p:?} for s = {s:?}");
            let det_m = m.determinant().unwrap();
            let det_p = p.determinant().unwrap();
            assert_eq!(det_m.make_monic(), det_p.make_monic());
            for i in 0..n {
                assert!(reduce_vector_mod_rowspace(&m.row(i), &p, &s).unwrap().is_zero());
            }
            // a second row-equivalent matrix gives the same canonical form
            let u = PolyMat::from_fn(f(), n, n, |i, j| {
                if i == j {
                    Poly::one(f())
                } else if i < j {
                    Poly::from_coeffs(f(), vec![rng.gen_range(0..97), rng.gen_range(0..97)])
                } else {
                    Poly::zero(f())
                }
            });
            assert_eq!(popov_form_by_elimination(&(&u * &m), &s).unwrap(), p);
        }
    }
}

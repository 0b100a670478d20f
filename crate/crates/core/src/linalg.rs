//! Relation bases by constant linear algebra.
//!
//! For `M = diag(x^σ) − A` with `cdeg(A) < σ`, the quotient
//! `K[x]^{1×n} / rowspace(M)` has dimension `D = Σσ_j` with monomial basis
//! `x^k e_j` (`k < σ_j`). Multiplication by `x` on that quotient is the
//! matrix `X`, and a row vector `f` with `cdeg(f) < σ` is its coefficient
//! vector.

use crate::constmat::ConstMat;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::polymat::PolyMat;
use crate::poly::Poly;

/// The `D x D` matrix of multiplication by `x` modulo the rows of `M`.
///
/// `M` must have identity column leading matrix (for instance a Hermite
/// form or a 0-Popov form) and no column of degree zero.
pub fn multiplication_matrix(m: &PolyMat) -> Result<ConstMat> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch("multiplication matrix of a non-square matrix".into()));
    }
    if !m.column_leading_matrix().is_identity() {
        return Err(Error::NotPopov("column leading matrix is not the identity".into()));
    }
    let f = m.field();
    let sigma: Vec<usize> = m.cdeg().iter().map(|d| d.unwrap_or(0)).collect();
    if let Some(j) = sigma.iter().position(|&s| s == 0) {
        return Err(Error::ZeroDiagonalDegree(j));
    }
    let offsets = offsets_of(&sigma);
    let d: usize = sigma.iter().sum();
    let mut x = ConstMat::zeros(f, d, d);
    for (i, &si) in sigma.iter().enumerate() {
        let o = offsets[i];
        for k in 0..si - 1 {
            x.set(o + k, o + k + 1, 1);
        }
        // x^{σ_i} e_i ≡ x^{σ_i} e_i − row_i(M), which has cdeg < σ
        let last = o + si - 1;
        for j in 0..m.cols() {
            let e = m.get(i, j);
            for k in 0..sigma[j] {
                let mut c = f.neg(e.coeff(k));
                if i == j && k == si {
                    c = f.add(c, 1);
                }
                x.set(last, offsets[j] + k, c);
            }
        }
    }
    Ok(x)
}

fn offsets_of(sigma: &[usize]) -> Vec<usize> {
    let mut acc = 0;
    sigma
        .iter()
        .map(|&s| {
            let o = acc;
            acc += s;
            o
        })
        .collect()
}

/// Row `i` is the concatenation over `j` of the `σ_j` low-to-high
/// coefficients of `F[i][j]`.
pub fn coefficient_embedding(f: &PolyMat, sigma: &[usize]) -> Result<ConstMat> {
    if sigma.len() != f.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{} degrees for {} columns",
            sigma.len(),
            f.cols()
        )));
    }
    let offsets = offsets_of(sigma);
    let d: usize = sigma.iter().sum();
    let mut e = ConstMat::zeros(f.field(), f.rows(), d);
    for i in 0..f.rows() {
        for (j, &sj) in sigma.iter().enumerate() {
            let p = f.get(i, j);
            if p.len() > sj {
                return Err(Error::DegreePrecondition(format!(
                    "entry ({i}, {j}) has degree {} but must stay below {sj}",
                    p.len() - 1
                )));
            }
            for (k, &c) in p.coeffs().iter().enumerate() {
                e.set(i, offsets[j] + k, c);
            }
        }
    }
    Ok(e)
}

/// Inverse of [`coefficient_embedding`] for a single row vector.
pub fn coefficient_vector_to_row(v: &[u64], sigma: &[usize], field: Field) -> PolyMat {
    let offsets = offsets_of(sigma);
    PolyMat::from_fn(field, 1, sigma.len(), |_, j| {
        Poly::from_coeffs(field, v[offsets[j]..offsets[j] + sigma[j]].to_vec())
    })
}

/// Incrementally maintained echelon basis whose vectors remember which
/// combination of enumerated monomials produced them.
struct TrackedEchelon {
    field: Field,
    /// (vector normalized to pivot 1, pivot column, combination)
    basis: Vec<(Vec<u64>, usize, Vec<u64>)>,
}

impl TrackedEchelon {
    /// Reduces `v` (whose combination is the unit vector at `mono`).
    /// Returns the combination when `v` reduces to zero, otherwise stores it.
    fn insert(&mut self, mut v: Vec<u64>, mono: usize, n_mono: usize) -> Option<Vec<u64>> {
        let f = self.field;
        let mut comb = vec![0u64; n_mono];
        comb[mono] = 1;
        for (b, pc, bc) in &self.basis {
            let c = v[*pc];
            if c == 0 {
                continue;
            }
            let c = f.neg(c);
            for (x, &y) in v.iter_mut().zip(b) {
                *x = f.add(*x, f.mul(c, y));
            }
            for (x, &y) in comb.iter_mut().zip(bc) {
                *x = f.add(*x, f.mul(c, y));
            }
        }
        match v.iter().position(|&x| x != 0) {
            None => Some(comb),
            Some(pc) => {
                let inv = f.inv(v[pc]);
                v.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                comb.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                self.basis.push((v, pc, comb));
                None
            }
        }
    }
}

/// The `s`-Popov basis of `{ p ∈ K[x]^{1×m} : Σ_{i,k} p_{i,k} E_i X^k = 0 }`.
///
/// Monomials `x^k e_i` are visited in increasing `(k + s_i, i)` order; the
/// first one whose image depends linearly on the images of the previous
/// ones gives the row with pivot `x^k e_i`, and the dependency supplies the
/// remaining (already reduced) terms.
pub fn relations_from_linear_algebra(e: &ConstMat, x: &ConstMat, s: &[i64]) -> Result<PolyMat> {
    let (m, d) = (e.rows(), e.cols());
    if x.rows() != d || x.cols() != d {
        return Err(Error::DimensionMismatch(format!(
            "multiplication matrix is {}x{}, expected {d}x{d}",
            x.rows(),
            x.cols()
        )));
    }
    if s.len() != m {
        return Err(Error::ShiftLength {
            expected: m,
            got: s.len(),
        });
    }
    let f = e.field();
    let mut current: Vec<Vec<u64>> = (0..m).map(|i| e.row(i).to_vec()).collect();
    let mut next_k = vec![0usize; m];
    let mut done: Vec<Option<Vec<(usize, usize, u64)>>> = vec![None; m];
    let mut monomials: Vec<(usize, usize)> = Vec::new();
    let mut ech = TrackedEchelon {
        field: f,
        basis: Vec::new(),
    };
    // Combinations are stored densely over the monomials seen so far, so
    // reserve room for all of them up front (at most D + m).
    let cap = d + m;
    while let Some(i) = (0..m)
        .filter(|&i| done[i].is_none())
        .min_by_key(|&i| (next_k[i] as i64 + s[i], i))
    {
        let k = next_k[i];
        if k > d {
            return Err(Error::Internal(format!(
                "no relation found for row {i} up to degree {d}"
            )));
        }
        let mono = monomials.len();
        monomials.push((i, k));
        if let Some(comb) = ech.insert(current[i].clone(), mono, cap) {
            let terms = comb
                .iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(|(t, &c)| (monomials[t].0, monomials[t].1, c))
                .collect();
            done[i] = Some(terms);
        } else {
            current[i] = x.vec_mul(&current[i]);
            next_k[i] += 1;
        }
    }
    let mut out = PolyMat::zeros(f, m, m);
    for (i, terms) in done.into_iter().enumerate() {
        for (col, k, c) in terms.expect("every row finished") {
            out.get_mut(i, col).add_scaled_shifted(c, k, &Poly::one(f));
        }
    }
    Ok(out)
}

/// Relation basis of `F` modulo `M` by linear algebra, for `M` with identity
/// column leading matrix, no degree-zero column, and `cdeg(F) < cdeg(M)`.
pub fn relations_by_linear_algebra(m: &PolyMat, f: &PolyMat, s: &[i64]) -> Result<PolyMat> {
    let x = multiplication_matrix(m)?;
    let sigma: Vec<usize> = m.cdeg().iter().map(|d| d.unwrap_or(0)).collect();
    let e = coefficient_embedding(f, &sigma)?;
    relations_from_linear_algebra(&e, &x, s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::division::remainder;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f7() -> Field {
        Field::new(7).unwrap()
    }

    fn pm(rows: &[Vec<Vec<i64>>]) -> PolyMat {
        PolyMat::from_i64(f7(), rows)
    }

    fn cm(rows: &[Vec<i64>]) -> ConstMat {
        ConstMat::from_i64_rows(f7(), rows)
    }

    #[test]
    fn multiplication_matrix_examples() {
        assert_eq!(multiplication_matrix(&pm(&[vec![vec![0, 0, 1]]])).unwrap(), cm(&[vec![0, 1], vec![0, 0]]));
        let m = pm(&[vec![vec![0, 1], vec![1]], vec![vec![], vec![0, 1]]]);
        assert_eq!(multiplication_matrix(&m).unwrap(), cm(&[vec![0, -1], vec![0, 0]]));
        // x^2 - 3x - 5
        let c = pm(&[vec![vec![-5, -3, 1]]]);
        assert_eq!(multiplication_matrix(&c).unwrap(), cm(&[vec![0, 1], vec![5, 3]]));
        let with_identity = pm(&[vec![vec![1], vec![]], vec![vec![], vec![0, 1]]]);
        assert_eq!(multiplication_matrix(&with_identity), Err(Error::ZeroDiagonalDegree(0)));
        let non_monic = pm(&[vec![vec![0, 2]]]);
        assert!(matches!(multiplication_matrix(&non_monic), Err(Error::NotPopov(_))));
    }

    #[test]
    fn embedding_examples() {
        assert_eq!(coefficient_embedding(&pm(&[vec![vec![1], vec![]]]), &[1, 1]).unwrap(), cm(&[vec![1, 0]]));
        assert_eq!(coefficient_embedding(&pm(&[vec![vec![0, 1]]]), &[2]).unwrap(), cm(&[vec![0, 1]]));
        assert!(matches!(
            coefficient_embedding(&pm(&[vec![vec![0, 1]]]), &[1]),
            Err(Error::DegreePrecondition(_))
        ));
    }

    #[test]
    fn multiplication_matches_remainders() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let f = Field::new(101).unwrap();
        for _ in 0..20 {
            let n = rng.gen_range(1..4);
            let sigma: Vec<usize> = (0..n).map(|_| rng.gen_range(1..5)).collect();
            // Hermite-shaped: monic diagonal, reduced entries above, zero below
            let m = PolyMat::from_fn(f, n, n, |i, j| {
                if i == j {
                    let mut c: Vec<u64> = (0..sigma[j]).map(|_| rng.gen_range(0..101)).collect();
                    c.push(1);
                    Poly::from_coeffs(f, c)
                } else if i < j {
                    Poly::from_coeffs(f, (0..sigma[j]).map(|_| rng.gen_range(0..101)).collect())
                } else {
                    Poly::zero(f)
                }
            });
            let x = multiplication_matrix(&m).unwrap();
            let row = PolyMat::from_fn(f, 1, n, |_, j| {
                Poly::from_coeffs(f, (0..sigma[j]).map(|_| rng.gen_range(0..101)).collect())
            });
            let mut v = coefficient_embedding(&row, &sigma).unwrap().row(0).to_vec();
            let d: usize = sigma.iter().sum();
            for k in 1..=2 * d {
                v = x.vec_mul(&v);
                let r = remainder(&m, &row.shift(k)).unwrap();
                assert_eq!(v, coefficient_embedding(&r, &sigma).unwrap().row(0));
                assert_eq!(coefficient_vector_to_row(&v, &sigma, f), r);
            }
        }
    }

    #[test]
    fn linear_algebra_relation_examples() {
        assert_eq!(
            relations_from_linear_algebra(&ConstMat::zeros(f7(), 3, 2), &cm(&[vec![0, 1], vec![0, 0]]), &[0, 4, -1])
                .unwrap(),
            PolyMat::identity(f7(), 3)
        );
        let x = cm(&[vec![0, -1], vec![0, 0]]);
        assert_eq!(relations_from_linear_algebra(&cm(&[vec![1, 0]]), &x, &[0]).unwrap(), pm(&[vec![vec![0, 0, 1]]]));
        let x = cm(&[vec![0, 1], vec![0, 0]]);
        assert_eq!(relations_from_linear_algebra(&cm(&[vec![0, 1]]), &x, &[0]).unwrap(), pm(&[vec![vec![0, 1]]]));
    }

    #[test]
    fn single_modulus_relation_by_linear_algebra() {
        // p·(1, x) ≡ 0 mod x^2
        let m = pm(&[vec![vec![0, 0, 1]]]);
        let f = pm(&[vec![vec![1]], vec![vec![0, 1]]]);
        let p = relations_by_linear_algebra(&m, &f, &[0, 0]).unwrap();
        assert_eq!(p, pm(&[vec![vec![0, 1], vec![-1]], vec![vec![], vec![0, 1]]]));
    }
}

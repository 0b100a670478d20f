//! Shifted Popov approximant bases, kernel bases obtained from them, and
//! relation bases modulo a single polynomial.

use crate::error::{Error, Result};
use crate::linalg::relations_by_linear_algebra;
use crate::poly::Poly;
use crate::polymat::{check_fields, popov_form_by_elimination, PolyMat};

/// Iterative order-by-order construction of an approximant basis: for each
/// order `k` and column `j` with `τ_j > k`, the rows whose residual has a
/// nonzero coefficient of degree `k` are cleared by the one of smallest
/// `(u-degree, index)`, which is then multiplied by `x`. Also returns the
/// `u`-degrees of the rows.
fn iterative_basis(g: &PolyMat, tau: &[usize], u: &[i64]) -> (PolyMat, Vec<i64>) {
    let f = g.field();
    let (r, n) = (g.rows(), g.cols());
    let mut basis: Vec<Vec<Poly>> = (0..r)
        .map(|i| (0..r).map(|j| if i == j { Poly::one(f) } else { Poly::zero(f) }).collect())
        .collect();
    let mut resid: Vec<Vec<Poly>> = (0..r)
        .map(|i| (0..n).map(|j| g.get(i, j).truncate(tau[j])).collect())
        .collect();
    let mut deg: Vec<i64> = u.to_vec();
    let tmax = tau.iter().copied().max().unwrap_or(0);
    let mut coeffs = vec![0u64; r];
    for k in 0..tmax {
        for j in 0..n {
            if tau[j] <= k {
                continue;
            }
            for (c, row) in coeffs.iter_mut().zip(&resid) {
                *c = row[j].coeff(k);
            }
            let Some(piv) = (0..r).filter(|&i| coeffs[i] != 0).min_by_key(|&i| (deg[i], i)) else {
                continue;
            };
            let inv = f.inv(coeffs[piv]);
            let prow = basis[piv].clone();
            let pres = resid[piv].clone();
            for i in 0..r {
                if i == piv || coeffs[i] == 0 {
                    continue;
                }
                let c = f.neg(f.mul(coeffs[i], inv));
                for (a, b) in basis[i].iter_mut().zip(&prow) {
                    a.add_scaled_shifted(c, 0, b);
                }
                for (a, b) in resid[i].iter_mut().zip(&pres) {
                    a.add_scaled_shifted(c, 0, b);
                }
            }
            for a in basis[piv].iter_mut() {
                *a = a.shift(1);
            }
            for (jj, a) in resid[piv].iter_mut().enumerate() {
                *a = a.shift(1).truncate(tau[jj]);
            }
            deg[piv] += 1;
        }
    }
    (PolyMat::from_fn(f, r, r, |i, j| basis[i][j].clone()), deg)
}

/// Orders up to this use the iterative construction directly.
const SPLIT_ORDER_CUTOFF: usize = 32;

/// Approximant basis at uniform order `d` by halving the order: a basis for
/// the first half, then one for the residual `(P1·G) / x^{d1}` at the rest.
fn split_basis(g: &PolyMat, d: usize, u: &[i64]) -> (PolyMat, Vec<i64>) {
    if d <= SPLIT_ORDER_CUTOFF {
        return iterative_basis(g, &vec![d; g.cols()], u);
    }
    let d1 = d / 2;
    let (p1, u1) = split_basis(&g.truncate(d1), d1, u);
    let res = (&p1 * g).div_x_pow(d1).truncate(d - d1);
    let (p2, u2) = split_basis(&res, d - d1, &u1);
    (&p2 * &p1, u2)
}

/// The `u`-Popov basis of the approximants of `G` at orders `τ`:
/// `{ p : p·G_{*,j} ≡ 0 mod x^{τ_j} for all j }`. Returns the basis and
/// its diagonal degrees (the `u`-minimal degree of the module).
pub fn approximant_basis_popov(g: &PolyMat, tau: &[usize], u: &[i64]) -> Result<(PolyMat, Vec<usize>)> {
    if tau.len() != g.cols() {
        return Err(Error::DimensionMismatch(format!(
            "{} orders for {} columns",
            tau.len(),
            g.cols()
        )));
    }
    if u.len() != g.rows() {
        return Err(Error::ShiftLength {
            expected: g.rows(),
            got: u.len(),
        });
    }
    // x^{t-τ_j} scales column j to the uniform order t = max τ
    let t = tau.iter().copied().max().unwrap_or(0);
    let uniform = PolyMat::from_fn(g.field(), g.rows(), g.cols(), |i, j| {
        g.get(i, j).truncate(tau[j]).shift(t - tau[j])
    });
    let (basis, _) = split_basis(&uniform, t, u);
    let p = popov_form_by_elimination(&basis, u)?;
    let delta = p.diagonal_degrees().iter().map(|d| d.expect("nonsingular")).collect();
    Ok((p, delta))
}

/// The `u`-Popov basis of the left kernel `{ p : p·A = 0 }`, assuming every
/// row of that basis has degree at most `dbound`.
///
/// Computed as the rows of an approximant basis at a uniform order large
/// enough that truncated annihilation forces exact annihilation.
pub fn kernel_basis_popov(a: &PolyMat, u: &[i64], dbound: usize) -> Result<PolyMat> {
    if u.len() != a.rows() {
        return Err(Error::ShiftLength {
            expected: a.rows(),
            got: u.len(),
        });
    }
    let f = a.field();
    let maxdeg = a.degree().unwrap_or(0);
    let spread = match (u.iter().max(), u.iter().min()) {
        (Some(hi), Some(lo)) => (hi - lo) as usize,
        _ => 0,
    };
    let order = dbound + maxdeg + spread + 1;
    let (p, _) = approximant_basis_popov(a, &vec![order; a.cols()], u)?;
    let prod = &p * a;
    let keep: Vec<usize> = (0..p.rows())
        .filter(|&i| prod.row_entries(i).iter().all(Poly::is_zero))
        .collect();
    let mut k = PolyMat::zeros(f, keep.len(), a.rows());
    for (t, &i) in keep.iter().enumerate() {
        for j in 0..a.rows() {
            k.set(t, j, p.get(i, j).clone());
        }
    }
    Ok(k)
}

/// The `s`-Popov basis of `{ p ∈ K[x]^{1×m} : p·F ≡ 0 mod M }` for a single
/// nonzero polynomial `M` and an `m x 1` matrix `F` with entries of degree
/// below `deg M`.
pub fn relations_mod_single_poly(mpoly: &Poly, f: &PolyMat, s: &[i64]) -> Result<PolyMat> {
    if mpoly.is_zero() {
        return Err(Error::DivisionByZero);
    }
    if f.cols() != 1 {
        return Err(Error::DimensionMismatch(format!("expected one column, got {}", f.cols())));
    }
    if f.field() != mpoly.field() {
        return Err(Error::ModulusMismatch(f.field().modulus(), mpoly.field().modulus()));
    }
    let m = f.rows();
    if s.len() != m {
        return Err(Error::ShiftLength { expected: m, got: s.len() });
    }
    let fld = f.field();
    let d = mpoly.degree().expect("nonzero");
    if let Some(fd) = f.degree() {
        if fd >= d {
            return Err(Error::DegreePrecondition(format!(
                "entries of F must have degree below {d}, found {fd}"
            )));
        }
    }
    let monic = mpoly.make_monic();
    if d == 0 {
        return Ok(PolyMat::identity(fld, m));
    }
    let modulus = PolyMat::diagonal(fld, vec![monic.clone()]);
    if d <= m {
        return relations_by_linear_algebra(&modulus, f, s);
    }
    let stacked = f.vstack(&modulus)?;
    let mut u = s.to_vec();
    u.push(s.iter().copied().min().unwrap_or(0));
    let k = kernel_basis_popov(&stacked, &u, d)?;
    relation_block(&k, m)
}

/// First `m` columns of a kernel basis whose pivots must be `0..m`.
fn relation_block(k: &PolyMat, m: usize) -> Result<PolyMat> {
    if k.rows() != m {
        return Err(Error::Internal(format!(
            "kernel basis has {} rows, expected {m}",
            k.rows()
        )));
    }
    let p = k.submatrix(0..m, 0..m);
    if !p.diagonal_degrees().iter().all(Option::is_some) {
        return Err(Error::Internal("kernel basis pivots are not in the leading block".into()));
    }
    Ok(p)
}

/// The `s`-Popov relation basis of `F` modulo a column-reduced `M`
/// (`cdeg F < cdeg M`) as the leading block of the kernel basis of `[F; M]`
/// with shift `(s, min(s), …, min(s))`.
pub fn relations_via_kernel(m: &PolyMat, f: &PolyMat, s: &[i64]) -> Result<PolyMat> {
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
    let rows = f.rows();
    if s.len() != rows {
        return Err(Error::ShiftLength { expected: rows, got: s.len() });
    }
    if !m.is_column_reduced() {
        return Err(Error::NotColumnReduced);
    }
    let dsum: usize = m.cdeg().iter().map(|d| d.unwrap_or(0)).sum();
    let stacked = f.vstack(m)?;
    let low = s.iter().copied().min().unwrap_or(0);
    let mut u = s.to_vec();
    u.extend(std::iter::repeat_n(low, m.rows()));
    let k = kernel_basis_popov(&stacked, &u, dsum)?;
    relation_block(&k, rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Field;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn f7() -> Field {
        Field::new(7).unwrap()
    }

    fn pm(rows: &[Vec<Vec<i64>>]) -> PolyMat {
        PolyMat::from_i64(f7(), rows)
    }

    #[test]
    fn approximant_examples() {
        let (p, d) = approximant_basis_popov(&PolyMat::zeros(f7(), 3, 2), &[2, 5], &[0, 1, 2]).unwrap();
        assert_eq!(p, PolyMat::identity(f7(), 3));
        assert_eq!(d, vec![0, 0, 0]);
        let (p, d) = approximant_basis_popov(&pm(&[vec![vec![1]]]), &[3], &[0]).unwrap();
        assert_eq!(p, pm(&[vec![vec![0, 0, 0, 1]]]));
        assert_eq!(d, vec![3]);
        let (p, _) = approximant_basis_popov(&pm(&[vec![vec![1]], vec![vec![0, 1]]]), &[2], &[0, 0]).unwrap();
        assert_eq!(p, pm(&[vec![vec![0, 1], vec![-1]], vec![vec![], vec![0, 1]]]));
    }

    #[test]
    fn random_approximants_are_popov_and_annihilate() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let f = Field::new(101).unwrap();
        for _ in 0..40 {
            let (r, n) = (rng.gen_range(1..5), rng.gen_range(1..4));
            let g = PolyMat::from_fn(f, r, n, |_, _| {
                let l = rng.gen_range(0..6);
                Poly::from_coeffs(f, (0..l).map(|_| rng.gen_range(0..101)).collect())
            });
            let tau: Vec<usize> = (0..n).map(|_| rng.gen_range(1..8)).collect();
            let u: Vec<i64> = (0..r).map(|_| rng.gen_range(-3..4)).collect();
            let (p, d) = approximant_basis_popov(&g, &tau, &u).unwrap();
            assert!(p.is_popov(&u));
            assert!(d.iter().sum::<usize>() <= tau.iter().sum());
            let prod = &p * &g;
            for j in 0..n {
                for i in 0..r {
                    assert!(prod.get(i, j).truncate(tau[j]).is_zero());
                }
            }
            // the determinant of an approximant basis is a power of x
            let det = p.determinant().unwrap();
            assert_eq!(det.degree(), Some(d.iter().sum()));
            assert_eq!(det.coeffs().iter().filter(|&&c| c != 0).count(), 1);
            let shifted: Vec<i64> = u.iter().map(|v| v + 9).collect();
            assert_eq!(approximant_basis_popov(&g, &tau, &shifted).unwrap().0, p);
        }
    }

    #[test]
    fn kernel_examples() {
        let k = kernel_basis_popov(&PolyMat::identity(f7(), 2), &[0, 0], 3).unwrap();
        assert_eq!((k.rows(), k.cols()), (0, 2));
        let k = kernel_basis_popov(&pm(&[vec![vec![]], vec![vec![1]]]), &[0, 0], 0).unwrap();
        assert_eq!(k, pm(&[vec![vec![1], vec![]]]));
        let k = kernel_basis_popov(&pm(&[vec![vec![0, 1]], vec![vec![1]]]), &[0, 0], 1).unwrap();
        assert_eq!(k, pm(&[vec![vec![-1], vec![0, 1]]]));
    }

    #[test]
    fn random_kernels_have_expected_rank() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let f = Field::new(998_244_353).unwrap();
        for _ in 0..15 {
            let n = rng.gen_range(1..3);
            let r = n + rng.gen_range(1..3);
            let a = PolyMat::from_fn(f, r, n, |_, _| {
                Poly::from_coeffs(f, (0..3).map(|_| rng.gen_range(0..f.modulus())).collect())
            });
            // kernel rows have degree at most the sum of the column degrees
            let k = kernel_basis_popov(&a, &vec![0; r], 2 * n).unwrap();
            assert_eq!(k.rows(), r - n);
            assert!((&k * &a).is_zero());
        }
    }

    #[test]
    fn single_polynomial_examples() {
        let x2 = Poly::from_i64s(f7(), &[0, 0, 1]);
        assert_eq!(
            relations_mod_single_poly(&x2, &PolyMat::zeros(f7(), 2, 1), &[0, 0]).unwrap(),
            PolyMat::identity(f7(), 2)
        );
        let f = pm(&[vec![vec![1]], vec![vec![0, 1]]]);
        assert_eq!(
            relations_mod_single_poly(&x2, &f, &[0, 0]).unwrap(),
            pm(&[vec![vec![0, 1], vec![-1]], vec![vec![], vec![0, 1]]])
        );
        assert_eq!(
            relations_mod_single_poly(&x2, &pm(&[vec![vec![0, 1]]]), &[0]).unwrap(),
            pm(&[vec![vec![0, 1]]])
        );
        assert_eq!(
            relations_mod_single_poly(&Poly::zero(f7()), &f, &[0, 0]),
            Err(Error::DivisionByZero)
        );
    }

    #[test]
    fn single_polynomial_routes_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let f = Field::new(101).unwrap();
        for _ in 0..30 {
            let m = rng.gen_range(1..4);
            let d = rng.gen_range(m + 1..m + 8);
            let mut c: Vec<u64> = (0..d).map(|_| rng.gen_range(0..101)).collect();
            c.push(rng.gen_range(1..101));
            let mp = Poly::from_coeffs(f, c);
            let fm = PolyMat::from_fn(f, m, 1, |_, _| {
                Poly::from_coeffs(f, (0..d).map(|_| rng.gen_range(0..101)).collect())
            });
            let s: Vec<i64> = (0..m).map(|_| rng.gen_range(-4..5)).collect();
            let by_kernel = relations_mod_single_poly(&mp, &fm, &s).unwrap();
            let monic = PolyMat::diagonal(f, vec![mp.make_monic()]);
            let by_linalg = relations_by_linear_algebra(&monic, &fm, &s).unwrap();
            assert_eq!(by_kernel, by_linalg);
            assert!(by_kernel.is_popov(&s));
        }
    }
}

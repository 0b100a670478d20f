#![allow(dead_code)]

use polyrel::{ConstMat, Field, Poly, PolyMat};
use rand::Rng;

pub fn random_poly<R: Rng>(rng: &mut R, f: Field, len: usize) -> Poly {
    Poly::from_coeffs(f, (0..len).map(|_| rng.gen_range(0..f.modulus())).collect())
}

/// Random `rows x cols` matrix whose column `j` has degree below `bound[j]`.
pub fn random_below<R: Rng>(rng: &mut R, f: Field, rows: usize, bound: &[usize]) -> PolyMat {
    PolyMat::from_fn(f, rows, bound.len(), |_, j| random_poly(rng, f, bound[j]))
}

pub fn random_invertible_constant<R: Rng>(rng: &mut R, f: Field, n: usize) -> ConstMat {
    loop {
        let mut c = ConstMat::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                c.set(i, j, rng.gen_range(0..f.modulus()));
            }
        }
        if c.is_invertible() {
            return c;
        }
    }
}

/// Column-reduced `n x n` matrix with column degrees `sigma`.
pub fn column_reduced<R: Rng>(rng: &mut R, f: Field, sigma: &[usize]) -> PolyMat {
    let n = sigma.len();
    let lead = random_invertible_constant(rng, f, n);
    PolyMat::from_fn(f, n, n, |i, j| {
        let mut p = random_poly(rng, f, sigma[j]);
        p += &Poly::monomial(f, lead.get(i, j), sigma[j]);
        p
    })
}

/// Random positive degrees with sum at most `total` (and at least `n`).
pub fn degrees_with_sum_at_most<R: Rng>(rng: &mut R, n: usize, total: usize) -> Vec<usize> {
    assert!(total >= n);
    let target = rng.gen_range(n..=total);
    let mut d = vec![1; n];
    for _ in n..target {
        let k = rng.gen_range(0..n);
        d[k] += 1;
    }
    d
}

/// Hermite form with the given (positive) diagonal degrees.
pub fn hermite_with_degrees<R: Rng>(rng: &mut R, f: Field, d: &[usize]) -> PolyMat {
    let n = d.len();
    PolyMat::from_fn(f, n, n, |i, j| {
        if i == j {
            let mut p = random_poly(rng, f, d[j]);
            p += &Poly::monomial(f, 1, d[j]);
            p
        } else if i < j {
            random_poly(rng, f, d[j])
        } else {
            Poly::zero(f)
        }
    })
}

pub fn nonsingular<R: Rng>(rng: &mut R, f: Field, n: usize, maxdeg: usize) -> PolyMat {
    loop {
        let m = PolyMat::from_fn(f, n, n, |_, _| {
            let len = rng.gen_range(0..=maxdeg + 1);
            random_poly(rng, f, len)
        });
        if !m.determinant().unwrap().is_zero() {
            return m;
        }
    }
}

/// Product of random unit upper and unit lower triangular matrices with
/// polynomial entries of degree below `len`.
pub fn unimodular<R: Rng>(rng: &mut R, f: Field, n: usize, len: usize) -> PolyMat {
    let tri = |rng: &mut R, upper: bool| {
        PolyMat::from_fn(f, n, n, |i, j| {
            if i == j {
                Poly::one(f)
            } else if (i < j) == upper {
                random_poly(rng, f, len)
            } else {
                Poly::zero(f)
            }
        })
    };
    let u = tri(rng, true);
    let l = tri(rng, false);
    &u * &l
}

pub fn random_shift<R: Rng>(rng: &mut R, len: usize, range: i64) -> Vec<i64> {
    (0..len).map(|_| rng.gen_range(-range..=range)).collect()
}

pub fn column_degrees(m: &PolyMat) -> Vec<usize> {
    m.cdeg().iter().map(|d| d.unwrap_or(0)).collect()
}

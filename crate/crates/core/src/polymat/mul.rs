//! Polynomial matrix products: schoolbook for small degrees, otherwise one
//! forward transform per entry, pointwise accumulation, and one inverse
//! transform per output entry.

use super::PolyMat;
use crate::field::Field;
use crate::ntt;
use crate::poly::Poly;

const SCHOOLBOOK_LEN: usize = 32;

pub(super) fn matmul(a: &PolyMat, b: &PolyMat) -> PolyMat {
    let f = a.field;
    let (r, k, c) = (a.rows, a.cols, b.cols);
    let la = a.entries.iter().map(Poly::len).max().unwrap_or(0);
    let lb = b.entries.iter().map(Poly::len).max().unwrap_or(0);
    if la == 0 || lb == 0 {
        return PolyMat::zeros(f, r, c);
    }
    if la.min(lb) <= SCHOOLBOOK_LEN || k == 0 {
        return schoolbook(a, b);
    }
    let out_len = la + lb - 1;
    let n = out_len.next_power_of_two();
    let entries = if ntt::supports(&f, n) {
        let prod = transform_product(a, b, &f, n, out_len);
        prod.into_iter().map(|v| Poly::from_reduced(f, v)).collect()
    } else {
        let fields = ntt::crt_fields();
        let parts: Vec<Vec<Vec<u64>>> = fields
            .iter()
            .map(|q| transform_product(a, b, q, n, out_len))
            .collect();
        (0..r * c)
            .map(|e| {
                let coeffs = (0..out_len)
                    .map(|t| ntt::crt_combine([parts[0][e][t], parts[1][e][t], parts[2][e][t]], &f))
                    .collect();
                Poly::from_reduced(f, coeffs)
            })
            .collect()
    };
    PolyMat {
        field: f,
        rows: r,
        cols: c,
        entries,
    }
}

fn schoolbook(a: &PolyMat, b: &PolyMat) -> PolyMat {
    let f = a.field;
    let (r, k, c) = (a.rows, a.cols, b.cols);
    let mut out = PolyMat::zeros(f, r, c);
    let mut acc: Vec<u128> = Vec::new();
    for i in 0..r {
        for j in 0..c {
            let len = (0..k)
                .filter(|&t| !a.get(i, t).is_zero() && !b.get(t, j).is_zero())
                .map(|t| a.get(i, t).len() + b.get(t, j).len() - 1)
                .max();
            let Some(len) = len else { continue };
            acc.clear();
            acc.resize(len, 0);
            for t in 0..k {
                let (x, y) = (a.get(i, t).coeffs(), b.get(t, j).coeffs());
                if x.is_empty() || y.is_empty() {
                    continue;
                }
                for (u, &xu) in x.iter().enumerate() {
                    if xu == 0 {
                        continue;
                    }
                    for (dst, &yv) in acc[u..].iter_mut().zip(y) {
                        *dst += (xu * yv) as u128;
                    }
                }
            }
            let coeffs = acc.iter().map(|&v| f.reduce_wide(v)).collect();
            out.set(i, j, Poly::from_reduced(f, coeffs));
        }
    }
    out
}

/// Entry products over `q` (which must support length `n`), returned as
/// row-major coefficient vectors of length `out_len`.
fn transform_product(a: &PolyMat, b: &PolyMat, q: &Field, n: usize, out_len: usize) -> Vec<Vec<u64>> {
    let forward = |p: &Poly| -> Option<Vec<u64>> {
        if p.is_zero() {
            return None;
        }
        let mut v = vec![0u64; n];
        for (dst, &x) in v.iter_mut().zip(p.coeffs()) {
            *dst = q.reduce(x);
        }
        ntt::transform(&mut v, q, false);
        Some(v)
    };
    let ta: Vec<Option<Vec<u64>>> = a.entries.iter().map(forward).collect();
    let tb: Vec<Option<Vec<u64>>> = b.entries.iter().map(forward).collect();
    let (r, k, c) = (a.rows, a.cols, b.cols);
    let mut out = Vec::with_capacity(r * c);
    let mut acc = vec![0u128; n];
    for i in 0..r {
        for j in 0..c {
            acc.iter_mut().for_each(|v| *v = 0);
            let mut any = false;
            for t in 0..k {
                let (Some(x), Some(y)) = (&ta[i * k + t], &tb[t * c + j]) else {
                    continue;
                };
                any = true;
                for ((dst, &xv), &yv) in acc.iter_mut().zip(x).zip(y) {
                    *dst += (xv * yv) as u128;
                }
            }
            if !any {
                out.push(vec![0u64; out_len]);
                continue;
            }
            let mut v: Vec<u64> = acc.iter().map(|&s| q.reduce_wide(s)).collect();
            ntt::transform(&mut v, q, true);
            v.truncate(out_len);
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(f: Field, rng: &mut ChaCha8Rng, r: usize, c: usize, len: usize) -> PolyMat {
        PolyMat::from_fn(f, r, c, |_, _| {
            let l = rng.gen_range(0..=len);
            Poly::from_coeffs(f, (0..l).map(|_| rng.gen_range(0..f.modulus())).collect())
        })
    }

    fn entrywise(a: &PolyMat, b: &PolyMat) -> PolyMat {
        PolyMat::from_fn(a.field(), a.rows(), b.cols(), |i, j| {
            let mut s = Poly::zero(a.field());
            for t in 0..a.cols() {
                s += &(a.get(i, t) * b.get(t, j));
            }
            s
        })
    }

    #[test]
    fn transform_path_matches_entrywise_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for p in [998_244_353u64, 4_294_967_291, 7] {
            let f = Field::new(p).unwrap();
            let a = random(f, &mut rng, 3, 4, 70);
            let b = random(f, &mut rng, 4, 2, 90);
            assert_eq!(matmul(&a, &b), entrywise(&a, &b), "p = {p}");
        }
    }

    #[test]
    fn schoolbook_path_matches_entrywise_products() {
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let f = Field::new(4_294_967_291).unwrap();
        let a = random(f, &mut rng, 2, 5, 10);
        let b = random(f, &mut rng, 5, 3, 200);
        assert_eq!(matmul(&a, &b), entrywise(&a, &b));
    }
}

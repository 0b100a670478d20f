//! Number-theoretic transforms and the three-prime fallback used when the
//! working prime has no suitable roots of unity.

use std::sync::OnceLock;

use crate::field::Field;

const CRT_MODULI: [u64; 3] = [998_244_353, 167_772_161, 469_762_049];

pub(crate) fn crt_fields() -> &'static [Field; 3] {
    static FIELDS: OnceLock<[Field; 3]> = OnceLock::new();
    FIELDS.get_or_init(|| CRT_MODULI.map(|q| Field::new(q).expect("CRT modulus is prime")))
}

/// True when `f` has a primitive root of unity of order `len` (a power of two).
pub(crate) fn supports(f: &Field, len: usize) -> bool {
    debug_assert!(len.is_power_of_two());
    len.trailing_zeros() <= f.two_adicity()
}

/// In-place cyclic transform of length `a.len()` (a power of two).
pub(crate) fn transform(a: &mut [u64], f: &Field, inverse: bool) {
    let n = a.len();
    debug_assert!(n.is_power_of_two());
    if n == 1 {
        return;
    }
    let p = f.modulus();
    let mut j = 0usize;
    for i in 1..n {
        let mut bit = n >> 1;
        while j & bit != 0 {
            j ^= bit;
            bit >>= 1;
        }
        j |= bit;
        if i < j {
            a.swap(i, j);
        }
    }
    let mut twiddles = Vec::with_capacity(n / 2);
    let mut len = 2;
    while len <= n {
        let mut w = f.root_of_unity(len.trailing_zeros());
        if inverse {
            w = f.inv(w);
        }
        let half = len / 2;
        twiddles.clear();
        let mut cur = 1u64;
        for _ in 0..half {
            twiddles.push(cur);
            cur = cur * w % p;
        }
        for chunk in a.chunks_exact_mut(len) {
            let (lo, hi) = chunk.split_at_mut(half);
            for k in 0..half {
                let u = lo[k];
                let v = hi[k] * twiddles[k] % p;
                lo[k] = if u + v >= p { u + v - p } else { u + v };
                hi[k] = if u >= v { u - v } else { u + p - v };
            }
        }
        len <<= 1;
    }
    if inverse {
        let n_inv = f.inv(n as u64 % p);
        for x in a.iter_mut() {
            *x = *x * n_inv % p;
        }
    }
}

/// Cyclic-free product of two coefficient slices over a field that supports
/// the required transform length.
pub(crate) fn convolve_direct(a: &[u64], b: &[u64], f: &Field) -> Vec<u64> {
    let out_len = a.len() + b.len() - 1;
    let n = out_len.next_power_of_two();
    let mut fa = vec![0u64; n];
    let mut fb = vec![0u64; n];
    fa[..a.len()].copy_from_slice(a);
    fb[..b.len()].copy_from_slice(b);
    transform(&mut fa, f, false);
    transform(&mut fb, f, false);
    let p = f.modulus();
    for (x, y) in fa.iter_mut().zip(&fb) {
        *x = *x * *y % p;
    }
    transform(&mut fa, f, true);
    fa.truncate(out_len);
    fa
}

/// Reconstructs `x mod p` from residues of `x` modulo the three CRT primes,
/// assuming `0 <= x < q0 q1 q2`.
pub(crate) fn crt_combine(r: [u64; 3], f: &Field) -> u64 {
    let [q0, q1, q2] = CRT_MODULI;
    let fields = crt_fields();
    // Garner's mixed-radix digits.
    let k1 = fields[1].mul(fields[1].sub(r[1], r[0] % q1), fields[1].inv(q0 % q1));
    let q01_mod_q2 = (q0 % q2) * (q1 % q2) % q2;
    let t = fields[2].sub(
        fields[2].sub(r[2], r[0] % q2),
        fields[2].mul(q0 % q2, k1 % q2),
    );
    let k2 = fields[2].mul(t, fields[2].inv(q01_mod_q2));
    let p = f.modulus();
    let q01 = (q0 as u128 * q1 as u128 % p as u128) as u64;
    let x = r[0] as u128 % p as u128 + (q0 % p) as u128 * k1 as u128 % p as u128
        + q01 as u128 * k2 as u128 % p as u128;
    (x % p as u128) as u64
}

/// Product over an arbitrary field (with `p < 2^32`) through three
/// NTT-friendly primes and Chinese remaindering.
pub(crate) fn convolve_three_primes(a: &[u64], b: &[u64], f: &Field) -> Vec<u64> {
    let parts: Vec<Vec<u64>> = crt_fields()
        .iter()
        .map(|q| {
            let ra: Vec<u64> = a.iter().map(|&x| q.reduce(x)).collect();
            let rb: Vec<u64> = b.iter().map(|&x| q.reduce(x)).collect();
            convolve_direct(&ra, &rb, q)
        })
        .collect();
    (0..parts[0].len())
        .map(|i| crt_combine([parts[0][i], parts[1][i], parts[2][i]], f))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn schoolbook(a: &[u64], b: &[u64], f: &Field) -> Vec<u64> {
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(x, y));
            }
        }
        out
    }

    #[test]
    fn transform_round_trip() {
        let f = Field::default_field();
        let orig: Vec<u64> = (0..64).map(|i| (i * i + 7) % f.modulus()).collect();
        let mut a = orig.clone();
        transform(&mut a, &f, false);
        transform(&mut a, &f, true);
        assert_eq!(a, orig);
    }

    #[test]
    fn direct_and_crt_products_match_schoolbook() {
        let f = Field::default_field();
        let a: Vec<u64> = (0..37).map(|i| (i * 7919 + 3) % f.modulus()).collect();
        let b: Vec<u64> = (0..50).map(|i| (i * 104729 + 11) % f.modulus()).collect();
        assert_eq!(convolve_direct(&a, &b, &f), schoolbook(&a, &b, &f));

        let g = Field::new(4_294_967_291).unwrap();
        let a: Vec<u64> = (0..40).map(|i| g.modulus() - 1 - i).collect();
        let b: Vec<u64> = (0..33).map(|i| g.modulus() - 7 * i - 1).collect();
        assert_eq!(convolve_three_primes(&a, &b, &g), schoolbook(&a, &b, &g));
    }
}

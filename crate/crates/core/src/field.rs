//! Prime fields `Z/pZ` with `p < 2^32`.
//!
//! Elements are plain `u64` values in `[0, p)`. Keeping `p` below `2^32`
//! means a product of two reduced elements always fits in a `u64`.

use crate::error::{Error, Result};

/// A prime modulus together with the data needed for number-theoretic
/// transforms (the 2-adic valuation of `p - 1` and a matching root of unity).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Field {
    p: u64,
    two_adicity: u32,
    root_of_unity: u64,
}

impl Field {
    /// The NTT-friendly prime `119 * 2^23 + 1`.
    pub const DEFAULT_MODULUS: u64 = 998_244_353;

    pub fn new(p: u64) -> Result<Self> {
        if p >= 1 << 32 || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        let two_adicity = (p - 1).trailing_zeros();
        let g = primitive_root(p);
        let root_of_unity = pow_mod(g, (p - 1) >> two_adicity, p);
        Ok(Field {
            p,
            two_adicity,
            root_of_unity,
        })
    }

    pub fn default_field() -> Self {
        Field::new(Self::DEFAULT_MODULUS).expect("default modulus is prime")
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn two_adicity(&self) -> u32 {
        self.two_adicity
    }

    /// A primitive `2^k`-th root of unity, `k <= two_adicity`.
    pub fn root_of_unity(&self, log_order: u32) -> u64 {
        assert!(log_order <= self.two_adicity);
        let mut w = self.root_of_unity;
        for _ in log_order..self.two_adicity {
            w = self.mul(w, w);
        }
        w
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        (a * b) % self.p
    }

    pub fn pow(&self, a: u64, e: u64) -> u64 {
        pow_mod(a, e, self.p)
    }

    /// Multiplicative inverse. Panics on zero.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero in F_{}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Maps a signed integer to its residue.
    pub fn from_i64(&self, v: i64) -> u64 {
        v.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn reduce(&self, v: u64) -> u64 {
        v % self.p
    }

    #[inline]
    pub fn reduce_wide(&self, v: u128) -> u64 {
        (v % self.p as u128) as u64
    }
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn primitive_root(p: u64) -> u64 {
    if p == 2 {
        return 1;
    }
    let mut factors = Vec::new();
    let mut n = p - 1;
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            factors.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        factors.push(n);
    }
    (2..p)
        .find(|&g| factors.iter().all(|&q| pow_mod(g, (p - 1) / q, p) != 1))
        .expect("prime field has a generator")
}

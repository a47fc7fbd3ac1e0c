//! Arithmetic modulo word-size primes.
//!
//! Residues are kept in Montgomery form throughout the modular gcd. The
//! primes are all below 2^62, so sums of two residues never overflow a `u64`
//! and the Montgomery reduction of a product fits in a `u128`.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};

/// A prime field `Z/pZ` with Montgomery multiplication.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Field {
    p: u64,
    /// `-p^{-1} mod 2^64`.
    pinv: u64,
    /// `2^128 mod p`.
    r2: u64,
}

impl Field {
    pub(crate) fn new(p: u64) -> Self {
        debug_assert!(p % 2 == 1 && p < (1 << 62));
        let mut inv: u64 = 1;
        for _ in 0..6 {
            inv = inv.wrapping_mul(2u64.wrapping_sub(p.wrapping_mul(inv)));
        }
        let r = ((1u128 << 64) % p as u128) as u64;
        let r2 = ((r as u128 * r as u128) % p as u128) as u64;
        Field { p, pinv: inv.wrapping_neg(), r2 }
    }

    pub(crate) fn modulus(&self) -> u64 {
        self.p
    }

    #[inline]
    fn redc(&self, t: u128) -> u64 {
        let m = (t as u64).wrapping_mul(self.pinv);
        let u = ((t + m as u128 * self.p as u128) >> 64) as u64;
        if u >= self.p {
            u - self.p
        } else {
            u
        }
    }

    #[inline]
    pub(crate) fn mul(&self, a: u64, b: u64) -> u64 {
        self.redc(a as u128 * b as u128)
    }

    #[inline]
    pub(crate) fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub(crate) fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub(crate) fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    /// Montgomery form of the ordinary residue `a < p`.
    #[inline]
    pub(crate) fn to_mont(&self, a: u64) -> u64 {
        self.mul(a, self.r2)
    }

    /// Ordinary residue of the Montgomery value `a`.
    #[inline]
    pub(crate) fn from_mont(&self, a: u64) -> u64 {
        self.redc(a as u128)
    }

    pub(crate) fn one(&self) -> u64 {
        self.to_mont(1)
    }

    /// Montgomery image of a small integer.
    pub(crate) fn from_u64(&self, a: u64) -> u64 {
        self.to_mont(a % self.p)
    }

    /// Montgomery image of an arbitrary integer.
    pub(crate) fn from_bigint(&self, c: &BigInt) -> u64 {
        let r = match c.to_i64() {
            Some(v) => v.rem_euclid(self.p as i64) as u64,
            None => {
                let m = BigInt::from(self.p);
                let mut r = c % &m;
                if r.is_negative() {
                    r += &m;
                }
                r.to_u64().expect("residue fits in u64")
            }
        };
        self.to_mont(r)
    }

    pub(crate) fn pow(&self, mut base: u64, mut e: u64) -> u64 {
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Inverse of a nonzero Montgomery value.
    pub(crate) fn inv(&self, a: u64) -> u64 {
        debug_assert!(a != 0);
        self.pow(a, self.p - 2)
    }
}

/// Dense univariate polynomials over a prime field, low degree first, with
/// no trailing zeros. The zero polynomial is the empty vector.
pub(crate) mod upoly {
    use super::Field;

    pub(crate) fn trim(v: &mut Vec<u64>) {
        while v.last() == Some(&0) {
            v.pop();
        }
    }

    pub(crate) fn eval(f: &Field, v: &[u64], x: u64) -> u64 {
        let mut acc = 0;
        for &c in v.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    pub(crate) fn make_monic(f: &Field, v: &mut [u64]) {
        if let Some(&lc) = v.last() {
            let inv = f.inv(lc);
            for c in v.iter_mut() {
                *c = f.mul(*c, inv);
            }
        }
    }

    /// Remainder of `a` modulo `b`, computed in place in `a`.
    fn rem_in_place(f: &Field, a: &mut Vec<u64>, b: &[u64], binv: u64) {
        let db = b.len() - 1;
        while a.len() > db {
            let lead = *a.last().unwrap();
            if lead != 0 {
                let q = f.mul(lead, binv);
                let shift = a.len() - 1 - db;
                for (i, &bc) in b.iter().enumerate() {
                    let idx = shift + i;
                    a[idx] = f.sub(a[idx], f.mul(q, bc));
                }
            }
            a.pop();
        }
        trim(a);
    }

    /// Monic gcd by the Euclidean algorithm.
    pub(crate) fn gcd(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        trim(&mut x);
        trim(&mut y);
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !y.is_empty() {
            let inv = f.inv(*y.last().unwrap());
            rem_in_place(f, &mut x, &y, inv);
            std::mem::swap(&mut x, &mut y);
        }
        make_monic(f, &mut x);
        x
    }

    /// Quotient of an exact division; `b` must be nonzero.
    pub(crate) fn div_exact(f: &Field, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut r = a.to_vec();
        trim(&mut r);
        if r.is_empty() {
            return r;
        }
        let db = b.len() - 1;
        let binv = f.inv(*b.last().unwrap());
        let mut q = vec![0u64; r.len() - db];
        while r.len() > db {
            let lead = *r.last().unwrap();
            let shift = r.len() - 1 - db;
            if lead != 0 {
                let c = f.mul(lead, binv);
                q[shift] = c;
                for (i, &bc) in b.iter().enumerate() {
                    r[shift + i] = f.sub(r[shift + i], f.mul(c, bc));
                }
            }
            r.pop();
        }
        trim(&mut q);
        q
    }
}

fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for sp in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % sp == 0 {
            return n == sp;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut b: u64, mut e: u64| {
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(acc, b);
            }
            b = mulmod(b, b);
            e >>= 1;
        }
        acc
    };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// The `k`-th largest prime below 2^62.
pub(crate) fn prime(k: usize) -> u64 {
    static PRIMES: OnceLock<Vec<u64>> = OnceLock::new();
    let table = PRIMES.get_or_init(|| {
        let mut v = Vec::with_capacity(256);
        let mut c = (1u64 << 62) - 1;
        while v.len() < 256 {
            if is_prime_u64(c) {
                v.push(c);
            }
            c -= 2;
        }
        v
    });
    table[k % table.len()]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn montgomery_round_trip_and_inverse() {
        let f = Field::new(prime(0));
        for a in [1u64, 2, 12345, prime(0) - 1] {
            let m = f.to_mont(a);
            assert_eq!(f.from_mont(m), a);
            assert_eq!(f.from_mont(f.mul(m, f.inv(m))), 1);
        }
    }

    #[test]
    fn negative_bigint_residue() {
        let f = Field::new(prime(3));
        let m = f.from_bigint(&BigInt::from(-1));
        assert_eq!(f.from_mont(m), prime(3) - 1);
    }

    #[test]
    fn primes_are_distinct_and_prime() {
        let a = prime(0);
        let b = prime(1);
        assert!(a > b && is_prime_u64(a) && is_prime_u64(b));
        assert!(!is_prime_u64(a - 2) || a - 2 == b);
    }

    #[test]
    fn univariate_gcd_mod_p() {
        let f = Field::new(prime(0));
        let c = |v: &[u64]| v.iter().map(|&x| f.from_u64(x)).collect::<Vec<_>>();
        // (x+1)(x+2) and (x+1)(x+3)
        let a = c(&[2, 3, 1]);
        let b = c(&[3, 4, 1]);
        let g = upoly::gcd(&f, &a, &b);
        assert_eq!(g, c(&[1, 1]));
        assert_eq!(upoly::div_exact(&f, &a, &g), c(&[2, 1]));
    }
}

//! Linear algebra over `Q(t, M)`, over `Q` and modulo word-size primes.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::modp::{prime, Field};
use crate::algebra::RationalFunction;
use crate::error::{Error, Result};

/// Determinant of a square matrix over `Q(t, M)` by Gaussian elimination.
pub fn determinant(m: &[Vec<RationalFunction>]) -> Result<RationalFunction> {
    let n = m.len();
    if m.iter().any(|row| row.len() != n) {
        return Err(Error::InvalidParams(format!("determinant of a non-square {n}-row matrix")));
    }
    let mut a: Vec<Vec<RationalFunction>> = m.to_vec();
    let mut det = RationalFunction::one();
    for col in 0..n {
        let Some(piv) = (col..n).find(|&r| !a[r][col].is_zero()) else {
            return Ok(RationalFunction::zero());
        };
        if piv != col {
            a.swap(piv, col);
            det = -&det;
        }
        det = &det * &a[col][col];
        let inv = a[col][col].invert()?;
        for r in col + 1..n {
            if a[r][col].is_zero() {
                continue;
            }
            let factor = &a[r][col] * &inv;
            for c in col..n {
                let v = &a[r][c] - &(&factor * &a[col][c]);
                a[r][c] = v;
            }
        }
    }
    Ok(det)
}

/// A sparse integer row: `(column, value)` pairs with distinct columns.
pub type SparseRow = Vec<(usize, BigInt)>;

/// Result of elimination modulo a prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModularRank {
    pub prime: u64,
    pub rank: usize,
    /// Indices of rows that are independent modulo the prime, in the order
    /// they were chosen. They are independent over `Q` as well.
    pub pivot_rows: Vec<usize>,
}

/// Echelon basis modulo `f.modulus()`: reduced rows indexed by pivot
/// column, monic at the pivot, and the indices of the rows that produced
/// them.
fn echelon_mod(f: &Field, rows: &[SparseRow], ncols: usize) -> (Vec<Option<Vec<u64>>>, Vec<usize>) {
    let mut basis: Vec<Option<Vec<u64>>> = vec![None; ncols];
    let mut pivot_rows = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        let mut v = vec![0u64; ncols];
        for (c, x) in row {
            v[*c] = f.from_bigint(x);
        }
        for c in 0..ncols {
            if v[c] == 0 {
                continue;
            }
            match &basis[c] {
                Some(b) => {
                    let s = v[c];
                    for j in c..ncols {
                        if b[j] != 0 {
                            v[j] = f.sub(v[j], f.mul(s, b[j]));
                        }
                    }
                }
                None => {
                    let inv = f.inv(v[c]);
                    for x in v.iter_mut().skip(c) {
                        *x = f.mul(*x, inv);
                    }
                    basis[c] = Some(v);
                    pivot_rows.push(idx);
                    break;
                }
            }
        }
        if pivot_rows.len() == ncols {
            break;
        }
    }
    (basis, pivot_rows)
}

/// Rank of an integer matrix modulo the `k`-th prime below `2^62`.
///
/// The rank over `Q` is at least the modular rank, so a full modular rank
/// proves that the kernel over `Q` is zero.
pub fn rank_mod_prime(rows: &[SparseRow], ncols: usize, k: usize) -> ModularRank {
    let f = Field::new(prime(k));
    let (_, pivot_rows) = echelon_mod(&f, rows, ncols);
    ModularRank { prime: f.modulus(), rank: pivot_rows.len(), pivot_rows }
}

/// Kernel modulo a prime: the free columns and, for each of them, the
/// kernel vector that is one there and zero at the other free columns, as
/// ordinary residues.
fn kernel_mod(f: &Field, rows: &[SparseRow], ncols: usize) -> (Vec<usize>, Vec<Vec<u64>>) {
    let (basis, _) = echelon_mod(f, rows, ncols);
    let free: Vec<usize> = (0..ncols).filter(|&c| basis[c].is_none()).collect();
    let vectors = free
        .iter()
        .map(|&fc| {
            let mut v = vec![0u64; ncols];
            v[fc] = f.one();
            for c in (0..ncols).rev() {
                if let Some(b) = &basis[c] {
                    let mut s = 0;
                    for j in c + 1..ncols {
                        if b[j] != 0 && v[j] != 0 {
                            s = f.add(s, f.mul(b[j], v[j]));
                        }
                    }
                    v[c] = f.neg(s);
                }
            }
            v.into_iter().map(|x| f.from_mont(x)).collect()
        })
        .collect();
    (free, vectors)
}

/// The fraction `a / b` with `|a|, b` below `sqrt(m / 2)` congruent to `x`
/// modulo `m`, if there is one.
fn rational_reconstruction(x: &BigInt, m: &BigInt) -> Option<BigRational> {
    use num_integer::Roots;
    let bound: BigInt = Roots::sqrt(&(m / 2));
    let (mut r0, mut r1) = (m.clone(), x.clone());
    let (mut s0, mut s1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let s2 = &s0 - &q * &s1;
        r0 = std::mem::replace(&mut r1, r2);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if s1.is_zero() || s1.abs() > bound {
        return None;
    }
    Some(BigRational::new(r1, s1))
}

/// A basis of the kernel over `Q` of an integer matrix, each vector
/// scaled to coprime integers.
///
/// The kernel is computed modulo a sequence of primes and lifted by the
/// Chinese remainder theorem and rational reconstruction until every
/// lifted vector satisfies all rows exactly.
pub fn rational_kernel(rows: &[SparseRow], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut free: Option<Vec<usize>> = None;
    let mut modulus = BigInt::one();
    let mut acc: Vec<Vec<BigInt>> = Vec::new();
    for k in 0..PRIME_COUNT {
        let f = Field::new(prime(k));
        let (fr, vecs) = kernel_mod(&f, rows, ncols);
        let p = BigInt::from(f.modulus());
        match &free {
            // A prime where the rank drops is skipped; a prime that shows a
            // smaller kernel restarts the lift.
            Some(cur) if fr.len() > cur.len() => continue,
            Some(cur) if fr == *cur => {
                // x = a + m * ((b - a) * m^{-1} mod p)
                let minv = f.from_mont(f.inv(f.from_bigint(&modulus)));
                let minv = BigInt::from(minv);
                for (a, b) in acc.iter_mut().zip(&vecs) {
                    for (x, &y) in a.iter_mut().zip(b) {
                        let diff = ((BigInt::from(y) - &*x) % &p + &p) % &p;
                        let t = (diff * &minv) % &p;
                        *x += &modulus * t;
                    }
                }
                modulus *= &p;
            }
            _ => {
                free = Some(fr);
                acc = vecs.into_iter().map(|v| v.into_iter().map(BigInt::from).collect()).collect();
                modulus = p;
            }
        }
        if acc.is_empty() {
            return Vec::new();
        }
        let lifted: Option<Vec<Vec<BigInt>>> = acc
            .iter()
            .map(|v| {
                let q: Option<Vec<BigRational>> =
                    v.iter().map(|x| rational_reconstruction(x, &modulus)).collect();
                q.map(|q| to_primitive_integers(&q))
            })
            .collect();
        if let Some(lifted) = lifted {
            if lifted
                .iter()
                .all(|v| rows.iter().all(|r| r.iter().map(|(c, x)| x * &v[*c]).sum::<BigInt>().is_zero()))
            {
                return lifted;
            }
        }
    }
    kernel_by_elimination(rows, ncols)
}

/// Number of distinct primes tried by [`rational_kernel`] before it falls
/// back to elimination over `Q`.
const PRIME_COUNT: usize = 256;

fn kernel_by_elimination(rows: &[SparseRow], ncols: usize) -> Vec<Vec<BigInt>> {
    let mut a: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|row| {
            let mut v = vec![BigRational::zero(); ncols];
            for (c, x) in row {
                v[*c] = BigRational::from_integer(x.clone());
            }
            v
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x = &*x * &inv;
        }
        for i in 0..a.len() {
            if i != r && !a[i][c].is_zero() {
                let s = a[i][c].clone();
                for j in c..ncols {
                    if !a[r][j].is_zero() {
                        let v = &a[i][j] - &(&s * &a[r][j]);
                        a[i][j] = v;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == a.len() {
            break;
        }
    }
    let free: Vec<usize> = (0..ncols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![BigRational::zero(); ncols];
            v[fc] = BigRational::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[i][fc].clone();
            }
            to_primitive_integers(&v)
        })
        .collect()
}

fn to_primitive_integers(v: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let l = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> =
        v.iter().map(|x| (x * BigRational::from_integer(l.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() {
        return ints;
    }
    ints.into_iter().map(|x| x / &g).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn row(v: &[i64]) -> SparseRow {
        v.iter().enumerate().filter(|(_, x)| **x != 0).map(|(c, x)| (c, BigInt::from(*x))).collect()
    }

    #[test]
    fn vandermonde_determinant() {
        let x = RationalFunction::m();
        let y = RationalFunction::t();
        let one = RationalFunction::one();
        let m = vec![vec![one.clone(), x.clone()], vec![one, y.clone()]];
        assert_eq!(determinant(&m).unwrap(), &y - &x);
    }

    #[test]
    fn singular_determinant_is_zero() {
        let x = RationalFunction::m();
        let m = vec![vec![x.clone(), x.clone()], vec![x.clone(), x]];
        assert!(determinant(&m).unwrap().is_zero());
    }

    #[test]
    fn kernel_of_rank_two_matrix() {
        let rows = vec![row(&[1, 2, 3]), row(&[2, 4, 6]), row(&[1, 0, 1])];
        assert_eq!(rank_mod_prime(&rows, 3, 0).rank, 2);
        let k = rational_kernel(&rows, 3);
        assert_eq!(k, kernel_by_elimination(&rows, 3));
        assert_eq!(k.len(), 1);
        let v = &k[0];
        for r in &rows {
            let s: BigInt = r.iter().map(|(c, x)| x * &v[*c]).sum();
            assert!(s.is_zero());
        }
    }
}

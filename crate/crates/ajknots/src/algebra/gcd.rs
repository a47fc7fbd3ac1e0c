//! Greatest common divisors in `Z[t^{±1}, M^{±1}]`.
//!
//! The gcd is computed by Brown's dense modular algorithm: images modulo
//! word-size primes are obtained by evaluating the secondary variable,
//! taking univariate gcds in the main variable, and interpolating; images
//! from several primes are combined by Chinese remaindering. Unlucky
//! primes and evaluation points are recognised by degree comparison, and
//! the final candidate is certified by trial division, which also yields
//! the cofactors.
//!
//! Results are normalized: integer-primitive, free of monomial factors and
//! with a positive coefficient on the lexicographically smallest monomial.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use super::modp::{prime, upoly, Field};
use super::zpoly::{Exp, ZPoly};

/// Normalized gcd of two polynomials. `gcd(0, 0) = 0`.
pub fn gcd(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_zero() && b.is_zero() {
        return ZPoly::zero();
    }
    gcd_cofactors(a, b).0
}

/// Returns `(g, a/g, b/g)` with `g` the normalized gcd of `a` and `b`.
/// At most one argument may be zero.
pub fn gcd_cofactors(a: &ZPoly, b: &ZPoly) -> (ZPoly, ZPoly, ZPoly) {
    assert!(!(a.is_zero() && b.is_zero()), "gcd of two zero polynomials");
    if a.is_zero() {
        let g = normalize_part(b);
        let cb = b.div_exact(&g).expect("divides");
        return (g, ZPoly::zero(), cb);
    }
    if b.is_zero() {
        let g = normalize_part(a);
        let ca = a.div_exact(&g).expect("divides");
        return (g, ca, ZPoly::zero());
    }
    let ((ta, ma), a1) = a.split_monomial();
    let ((tb, mb), b1) = b.split_monomial();
    let ca = a1.content();
    let cb = b1.content();
    let a0 = a1.div_scalar_exact(&ca);
    let b0 = b1.div_scalar_exact(&cb);
    let (g, abar, bbar) = gcd_primitive(&a0, &b0);
    let (sign, g) = g.normalize_sign();
    let (abar, bbar) = if sign < 0 { (abar.neg(), bbar.neg()) } else { (abar, bbar) };
    let cof_a = abar.scale(&ca).mul_monomial(ta, ma);
    let cof_b = bbar.scale(&cb).mul_monomial(tb, mb);
    (g, cof_a, cof_b)
}

/// Primitive, monomial-free, sign-normalized associate of `a`.
fn normalize_part(a: &ZPoly) -> ZPoly {
    let (_, a1) = a.split_monomial();
    let c = a1.content();
    a1.div_scalar_exact(&c).normalize_sign().1
}

fn exponent_gcd(polys: &[&ZPoly], pick: impl Fn(&Exp) -> i64) -> i64 {
    let mut g = 0i64;
    for p in polys {
        for (e, _) in p.terms() {
            g = g.gcd(&pick(e));
            if g == 1 {
                return 1;
            }
        }
    }
    g
}

/// Gcd of integer-primitive polynomials with nonnegative exponents and no
/// monomial factor. Returns `(g, a/g, b/g)`, `g` not yet sign-normalized.
fn gcd_primitive(a: &ZPoly, b: &ZPoly) -> (ZPoly, ZPoly, ZPoly) {
    if a.is_monomial() || b.is_monomial() {
        return (ZPoly::one(), a.clone(), b.clone());
    }
    if a == b {
        return (a.clone(), ZPoly::one(), ZPoly::one());
    }
    if *a == b.neg() {
        return (a.clone(), ZPoly::one(), ZPoly::constant(-1));
    }
    // Exponent compression: the gcd of the supports in each variable.
    let gt = exponent_gcd(&[a, b], |e| e.0).max(1);
    let gm = exponent_gcd(&[a, b], |e| e.1).max(1);
    let compress = |p: &ZPoly| {
        if gt == 1 && gm == 1 {
            p.clone()
        } else {
            p.map_exponents(|(x, y)| (x / gt, y / gm))
        }
    };
    let ac = compress(a);
    let bc = compress(b);
    let (_, dta) = ac.t_range().unwrap();
    let (_, dtb) = bc.t_range().unwrap();
    let (_, dma) = ac.m_range().unwrap();
    let (_, dmb) = bc.m_range().unwrap();
    // Choose the main variable x; y is the evaluated one.
    let main_is_t = if dta.max(dtb) == 0 {
        false
    } else if dma.max(dmb) == 0 {
        true
    } else {
        let cost_t = (dta.max(1) as f64) * (dtb.max(1) as f64) * ((dma.min(dmb) + 1) as f64);
        let cost_m = (dma.max(1) as f64) * (dmb.max(1) as f64) * ((dta.min(dtb) + 1) as f64);
        cost_t <= cost_m
    };
    let orient = |p: ZPoly| if main_is_t { p } else { p.swap_vars() };
    let ax = orient(ac);
    let bx = orient(bc);
    let (g, ga, gb) = gcd_oriented(&ax, &bx);
    let restore = |p: ZPoly| {
        let p = if main_is_t { p } else { p.swap_vars() };
        if gt == 1 && gm == 1 {
            p
        } else {
            p.map_exponents(|(x, y)| (x * gt, y * gm))
        }
    };
    (restore(g), restore(ga), restore(gb))
}

/// The coefficients of `p` with respect to the first variable, as
/// polynomials in the second variable placed in the first slot.
fn x_coefficients(p: &ZPoly) -> Vec<ZPoly> {
    let mut groups: BTreeMap<i64, Vec<(Exp, BigInt)>> = BTreeMap::new();
    for ((x, y), c) in p.terms() {
        groups.entry(*x).or_default().push(((*y, 0), c.clone()));
    }
    groups.into_values().map(ZPoly::from_sorted_unchecked).collect()
}

/// Content of `p` with respect to the first variable, as a polynomial in
/// the second variable (kept in the second slot).
fn x_content(p: &ZPoly) -> ZPoly {
    let coeffs = x_coefficients(p);
    let mut c = coeffs[0].clone();
    for q in &coeffs[1..] {
        if c.is_one() {
            break;
        }
        c = gcd(&c, q);
    }
    let c = if c.len() == 1 { ZPoly::one() } else { c };
    c.swap_vars()
}

/// Gcd with the first variable as the main variable. Inputs are
/// integer-primitive with nonnegative exponents.
fn gcd_oriented(a: &ZPoly, b: &ZPoly) -> (ZPoly, ZPoly, ZPoly) {
    let ca = x_content(a);
    let cb = x_content(b);
    let app = if ca.is_one() { a.clone() } else { a.div_exact(&ca).expect("content divides") };
    let bpp = if cb.is_one() { b.clone() } else { b.div_exact(&cb).expect("content divides") };
    let (cg, cab, cbb) = if ca.is_one() || cb.is_one() {
        (ZPoly::one(), ca.clone(), cb.clone())
    } else {
        gcd_cofactors(&ca, &cb)
    };
    let (g, ga, gb) = brown(&app, &bpp);
    (g.mul(&cg), ga.mul(&cab), gb.mul(&cbb))
}

/// Result of the modular stage for one prime.
enum PrimeImage {
    /// The gcd is constant.
    One,
    /// Monic (lexicographically) gcd image, indexed `[x][y]`, ordinary
    /// residues.
    Poly(Vec<Vec<u64>>),
    /// The prime is unusable.
    Bad,
}

struct Image {
    terms: Vec<(usize, usize, u64)>,
    dx: usize,
}

fn reduce_mod(f: &Field, p: &ZPoly) -> Image {
    let mut terms = Vec::with_capacity(p.len());
    let mut dx = 0;
    for ((x, y), c) in p.terms() {
        let r = f.from_bigint(c);
        if r != 0 {
            terms.push((*x as usize, *y as usize, r));
            dx = dx.max(*x as usize);
        }
    }
    Image { terms, dx }
}

fn lc_x(img: &Image, dx: usize, dy: usize) -> Vec<u64> {
    let mut v = vec![0u64; dy + 1];
    for &(x, y, c) in &img.terms {
        if x == dx {
            v[y] = c;
        }
    }
    upoly::trim(&mut v);
    v
}

fn eval_y(f: &Field, img: &Image, dx: usize, pows: &[u64]) -> Vec<u64> {
    let mut v = vec![0u64; dx + 1];
    for &(x, y, c) in &img.terms {
        v[x] = f.add(v[x], f.mul(c, pows[y]));
    }
    upoly::trim(&mut v);
    v
}

/// Gcd of `a` and `b` in `Z_p[y][x]`, normalized so that the
/// lexicographically leading coefficient is one.
fn modular_gcd(f: &Field, a: &ZPoly, b: &ZPoly, early_stop: bool) -> PrimeImage {
    let ia = reduce_mod(f, a);
    let ib = reduce_mod(f, b);
    let (dxa, dya) = (a.t_range().unwrap().1 as usize, a.m_range().unwrap().1 as usize);
    let (dxb, dyb) = (b.t_range().unwrap().1 as usize, b.m_range().unwrap().1 as usize);
    if ia.dx != dxa || ib.dx != dxb {
        return PrimeImage::Bad;
    }
    let lca = lc_x(&ia, dxa, dya);
    let lcb = lc_x(&ib, dxb, dyb);
    if lca.is_empty() || lcb.is_empty() {
        return PrimeImage::Bad;
    }
    let gamma = upoly::gcd(f, &lca, &lcb);
    let bound = gamma.len() - 1 + dya.min(dyb) + 1;
    let dy_max = dya.max(dyb);
    let mut cur_dx = usize::MAX;
    let mut h: Vec<Vec<u64>> = Vec::new();
    let mut q: Vec<u64> = vec![f.one()];
    let mut points = 0usize;
    let mut counter: u64 = f.modulus() ^ 0x9e37_79b9_7f4a_7c15;
    let mut tries = 0u64;
    let mut pows = vec![0u64; dy_max + 1];
    loop {
        tries += 1;
        if tries > 64 + 4 * bound as u64 {
            return PrimeImage::Bad;
        }
        let beta = f.from_u64(splitmix64(&mut counter));
        if beta == 0 {
            continue;
        }
        if upoly::eval(f, &lca, beta) == 0 || upoly::eval(f, &lcb, beta) == 0 {
            continue;
        }
        pows[0] = f.one();
        for k in 1..=dy_max {
            pows[k] = f.mul(pows[k - 1], beta);
        }
        let av = eval_y(f, &ia, dxa, &pows);
        let bv = eval_y(f, &ib, dxb, &pows);
        let g = upoly::gcd(f, &av, &bv);
        let dg = g.len() - 1;
        if dg == 0 {
            return PrimeImage::One;
        }
        if dg > cur_dx {
            continue;
        }
        if dg < cur_dx {
            cur_dx = dg;
            h = vec![Vec::new(); dg + 1];
            q = vec![f.one()];
            points = 0;
        }
        let scale = upoly::eval(f, &gamma, beta);
        let e = upoly::eval(f, &q, beta);
        let einv = f.inv(e);
        let mut stable = true;
        for (i, hi) in h.iter_mut().enumerate() {
            let v = f.mul(g[i], scale);
            let r = f.mul(f.sub(v, upoly::eval(f, hi, beta)), einv);
            if r != 0 {
                stable = false;
                if hi.len() < q.len() {
                    hi.resize(q.len(), 0);
                }
                for (k, &qk) in q.iter().enumerate() {
                    hi[k] = f.add(hi[k], f.mul(r, qk));
                }
            }
        }
        // q <- q * (y - beta)
        let nb = f.neg(beta);
        let mut nq = vec![0u64; q.len() + 1];
        for (k, &qk) in q.iter().enumerate() {
            nq[k + 1] = f.add(nq[k + 1], qk);
            nq[k] = f.add(nq[k], f.mul(nb, qk));
        }
        q = nq;
        points += 1;
        if (early_stop && stable && points >= 2) || points >= bound {
            break;
        }
    }
    for hi in h.iter_mut() {
        upoly::trim(hi);
    }
    // Remove the content in y, which divides the leading coefficient.
    let mut c = h.last().unwrap().clone();
    for hi in h.iter() {
        if c.len() <= 1 {
            break;
        }
        c = upoly::gcd(f, &c, hi);
    }
    if c.len() > 1 {
        for hi in h.iter_mut() {
            *hi = upoly::div_exact(f, hi, &c);
        }
    }
    let lead = *h.last().unwrap().last().unwrap();
    let inv = f.inv(lead);
    let out = h.into_iter().map(|hi| hi.into_iter().map(|v| f.from_mont(f.mul(v, inv))).collect()).collect();
    PrimeImage::Poly(out)
}

/// Pseudo-random evaluation points; a fixed point sequence such as
/// `1, 2, 3, ...` hits structured unlucky points like `y = 1`.
fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

fn image_degrees(img: &[Vec<u64>]) -> (usize, usize) {
    let dy = img.iter().map(|v| v.len().saturating_sub(1)).max().unwrap_or(0);
    (img.len() - 1, dy)
}

/// Modular gcd of polynomials that are primitive over `Z` and over `Z[y]`.
fn brown(a: &ZPoly, b: &ZPoly) -> (ZPoly, ZPoly, ZPoly) {
    if a.is_one() || b.is_one() || a.t_range().unwrap().1 == 0 || b.t_range().unwrap().1 == 0 {
        return (ZPoly::one(), a.clone(), b.clone());
    }
    let lc_int = a.lex_lead_coeff().unwrap().gcd(b.lex_lead_coeff().unwrap());
    let mut early_stop = true;
    let mut acc: Option<(BTreeMap<Exp, BigInt>, BigInt, (usize, usize))> = None;
    let mut prev_lift: Option<ZPoly> = None;
    for k in 0..256 {
        let f = Field::new(prime(k));
        let img = match modular_gcd(&f, a, b, early_stop) {
            PrimeImage::Bad => continue,
            PrimeImage::One => return (ZPoly::one(), a.clone(), b.clone()),
            PrimeImage::Poly(img) => img,
        };
        let degs = image_degrees(&img);
        let p = f.modulus();
        let lc_mod = f.from_mont(f.from_bigint(&lc_int));
        let lc_m = f.to_mont(lc_mod);
        match &acc {
            Some((_, _, d)) if degs > *d => continue,
            Some((_, _, d)) if degs < *d => {
                acc = None;
                prev_lift = None;
            }
            _ => {}
        }
        let mut residues: BTreeMap<Exp, u64> = BTreeMap::new();
        for (x, row) in img.iter().enumerate() {
            for (y, &v) in row.iter().enumerate() {
                if v != 0 {
                    let w = f.from_mont(f.mul(f.to_mont(v), lc_m));
                    if w != 0 {
                        residues.insert((x as i64, y as i64), w);
                    }
                }
            }
        }
        let (map, modulus) = match acc.take() {
            None => (residues.into_iter().map(|(e, v)| (e, BigInt::from(v))).collect(), BigInt::from(p)),
            Some((mut map, m, _)) => {
                let m_mod = f.from_bigint(&m);
                let m_inv = f.inv(m_mod);
                let keys: Vec<Exp> = map.keys().chain(residues.keys()).cloned().collect();
                for e in keys {
                    let r1 = map.get(&e).cloned().unwrap_or_default();
                    let r2 = f.to_mont(residues.get(&e).cloned().unwrap_or(0));
                    let diff = f.mul(f.sub(r2, f.from_bigint(&r1)), m_inv);
                    let tcoef = f.from_mont(diff);
                    let v = r1 + &m * BigInt::from(tcoef);
                    if v.is_zero() {
                        map.remove(&e);
                    } else {
                        map.insert(e, v);
                    }
                }
                (map, m * BigInt::from(p))
            }
        };
        let half = &modulus >> 1;
        let lift = ZPoly::from_terms(map.iter().map(|(e, v)| {
            let s = if *v > half { v - &modulus } else { v.clone() };
            (*e, s)
        }));
        let small = lift.max_bits() + 24 < modulus.bits();
        let repeated = prev_lift.as_ref() == Some(&lift);
        acc = Some((map, modulus, degs));
        if small || repeated {
            let cont = lift.content();
            let cand = lift.div_scalar_exact(&cont);
            if let (Some(qa), Some(qb)) = (a.div_exact(&cand), b.div_exact(&cand)) {
                return (cand, qa, qb);
            }
            if early_stop {
                early_stop = false;
                acc = None;
                prev_lift = None;
                continue;
            }
        }
        prev_lift = Some(lift);
    }
    panic!("modular gcd did not converge");
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(terms: &[(i64, i64, i64)]) -> ZPoly {
        ZPoly::from_terms(terms.iter().map(|&(a, b, c)| ((a, b), BigInt::from(c))))
    }

    #[test]
    fn common_factor_is_found() {
        let g = p(&[(0, 0, 1), (1, 1, 2), (3, 0, -1)]);
        let x = p(&[(0, 0, 3), (0, 2, 1)]);
        let y = p(&[(2, 0, 1), (0, 1, -5), (1, 1, 1)]);
        let (h, cx, cy) = gcd_cofactors(&g.mul(&x), &g.mul(&y));
        assert_eq!(h, g);
        assert_eq!(cx, x);
        assert_eq!(cy, y);
    }

    #[test]
    fn coprime_inputs_give_one() {
        let x = p(&[(0, 0, 1), (1, 0, 1)]);
        let y = p(&[(0, 0, 1), (0, 1, 1)]);
        assert!(gcd(&x, &y).is_one());
    }

    #[test]
    fn content_and_monomials_are_stripped() {
        let x = p(&[(3, 1, 6), (4, 1, 6)]);
        let y = p(&[(0, 2, 4), (1, 2, 4)]);
        assert_eq!(gcd(&x, &y), p(&[(0, 0, 1), (1, 0, 1)]));
    }

    #[test]
    fn univariate_in_each_variable() {
        let x = p(&[(0, 0, -1), (2, 0, 1)]);
        let y = p(&[(0, 0, 1), (1, 0, 1)]);
        assert_eq!(gcd(&x, &y), y);
        assert_eq!(gcd(&x.swap_vars(), &y.swap_vars()), y.swap_vars());
    }

    #[test]
    fn gcd_with_content_in_secondary_variable() {
        // (M + 1)(t + M) and (M + 1)(t - M)
        let c = p(&[(0, 0, 1), (0, 1, 1)]);
        let a = c.mul(&p(&[(1, 0, 1), (0, 1, 1)]));
        let b = c.mul(&p(&[(1, 0, 1), (0, 1, -1)]));
        assert_eq!(gcd(&a, &b), c);
    }

    #[test]
    fn large_coefficients_need_several_primes() {
        let big = BigInt::from(3).pow(80);
        let g = ZPoly::from_terms(vec![((0, 0), big.clone()), ((2, 1), BigInt::from(1))]);
        let x = p(&[(1, 0, 1), (0, 3, 7)]);
        let y = p(&[(1, 1, 1), (0, 0, -2)]);
        let (h, _, _) = gcd_cofactors(&g.mul(&x), &g.mul(&y));
        assert_eq!(h, g);
    }
}

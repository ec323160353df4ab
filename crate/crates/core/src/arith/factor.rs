//! Factorization of univariate rational polynomials.
//!
//! Squarefree decomposition (Yun), then for each squarefree part: reduction
//! modulo a small prime, Cantor-Zassenhaus over `F_p`, linear Hensel lifting
//! to a power of `p` exceeding the Mignotte bound, and subset recombination.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::poly::biguint;
use super::ratfunc::{qring, QPoly};
use crate::error::{invalid, Result};

/// Factor a nonzero rational polynomial into monic irreducible factors with
/// multiplicities, sorted by degree then coefficients. The leading
/// coefficient of `p` times the product of the factors recovers `p`.
pub fn factor_over_rationals(p: &QPoly) -> Result<Vec<(QPoly, usize)>> {
    if p.is_zero() {
        return Err(invalid("cannot factor the zero polynomial"));
    }
    let ring = qring();
    let mut out = Vec::new();
    for (part, mult) in ring.squarefree_decomposition(p) {
        for f in factor_squarefree(&part) {
            out.push((f, mult));
        }
    }
    out.sort_by(|a, b| ring.cmp_poly(&a.0, &b.0));
    Ok(out)
}

/// Monic squarefree part of a nonzero polynomial.
pub fn squarefree_part(p: &QPoly) -> Result<QPoly> {
    if p.is_zero() {
        return Err(invalid("squarefree part of the zero polynomial"));
    }
    Ok(qring().squarefree_part(p))
}

/// Irreducible over the rationals (and of positive degree).
pub fn is_irreducible(p: &QPoly) -> bool {
    if p.degree().unwrap_or(0) == 0 {
        return false;
    }
    match factor_over_rationals(p) {
        Ok(f) => f.len() == 1 && f[0].1 == 1,
        Err(_) => false,
    }
}

/// Monic irreducible factors of a squarefree polynomial.
pub(crate) fn factor_squarefree(p: &QPoly) -> Vec<QPoly> {
    let ring = qring();
    let (_, a) = primitive_integer(p);
    let facs = zassenhaus(&a);
    let mut out: Vec<QPoly> = facs.iter().map(|f| ring.monic(&int_to_q(f))).collect();
    out.sort_by(|x, y| ring.cmp_poly(x, y));
    out
}

/// `p = content * A` with `A` primitive in `Z[x]` and positive leading coefficient.
pub fn primitive_integer(p: &QPoly) -> (BigRational, Vec<BigInt>) {
    let coeffs = p.coeffs();
    let mut den = BigInt::one();
    for c in coeffs {
        den = den.lcm(c.denom());
    }
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &den).to_integer()).collect();
    let mut g = BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return (BigRational::zero(), Vec::new());
    }
    if ints.last().unwrap().is_negative() {
        g = -g;
    }
    let prim: Vec<BigInt> = ints.iter().map(|c| c / &g).collect();
    (BigRational::new(g, den), prim)
}

pub(crate) fn int_to_q(a: &[BigInt]) -> QPoly {
    QPoly::new(
        a.iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect(),
    )
}

// ---------------------------------------------------------------------------
// F_p[x] arithmetic on u64 coefficients, p < 2^31.

type Fp = Vec<u64>;

fn trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow(a, p - 2, p)
}

fn fp_pow(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    acc
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(out)
}

fn fp_scale(a: &Fp, c: u64, p: u64) -> Fp {
    trim(a.iter().map(|&x| x * c % p).collect())
}

fn fp_divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let db = b.len() - 1;
    let inv = fp_inv(b[db], p);
    let mut r = a.clone();
    if r.len() <= db {
        return (Vec::new(), trim(r));
    }
    let mut q = vec![0u64; r.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] * inv % p;
        if c != 0 {
            for (j, &bj) in b.iter().enumerate() {
                r[i + j] = (r[i + j] + p - c * bj % p) % p;
            }
        }
        q[i] = c;
    }
    r.truncate(db);
    (trim(q), trim(r))
}

fn fp_rem(a: &Fp, b: &Fp, p: u64) -> Fp {
    fp_divrem(a, b, p).1
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&c) => fp_scale(a, fp_inv(c, p), p),
    }
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = fp_rem(&x, &y, p);
        x = y;
        y = r;
    }
    fp_monic(&x, p)
}

/// `(g, s, t)` with `s a + t b = g` monic.
fn fp_xgcd(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        let s2 = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        let t2 = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s2;
        t0 = t1;
        t1 = t2;
    }
    let inv = fp_inv(*r0.last().unwrap(), p);
    (
        fp_scale(&r0, inv, p),
        fp_scale(&s0, inv, p),
        fp_scale(&t0, inv, p),
    )
}

fn fp_powmod(base: &Fp, e: &BigUint, m: &Fp, p: u64) -> Fp {
    let mut acc: Fp = fp_rem(&vec![1], m, p);
    let b = fp_rem(base, m, p);
    for i in (0..e.bits()).rev() {
        acc = fp_rem(&fp_mul(&acc, &acc, p), m, p);
        if e.bit(i) {
            acc = fp_rem(&fp_mul(&acc, &b, p), m, p);
        }
    }
    acc
}

fn fp_derivative(a: &Fp, p: u64) -> Fp {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * (i as u64 % p) % p)
            .collect(),
    )
}

fn reduce_mod_p(a: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    trim(
        a.iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

/// Distinct-degree then equal-degree factorization of a monic squarefree
/// polynomial over `F_p`, `p` odd.
fn factor_mod_p(f: &Fp, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let mut out = Vec::new();
    let mut f = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 1usize;
    let pb = biguint(p);
    while f.len() > 1 {
        if 2 * d > f.len() - 1 {
            out.push(f.clone());
            break;
        }
        h = fp_powmod(&h, &pb, &f, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &f, p);
        if g.len() > 1 {
            equal_degree(&g, d, p, rng, &mut out);
            f = fp_divrem(&f, &g, p).0;
            h = fp_rem(&h, &f, p);
        }
        d += 1;
    }
    out
}

fn equal_degree(g: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng, out: &mut Vec<Fp>) {
    let n = g.len() - 1;
    if n == d {
        out.push(g.clone());
        return;
    }
    let e = (num_traits::pow(biguint(p), d) - 1u32) / 2u32;
    loop {
        let a: Fp = trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, &e, g, p), &vec![1], p);
        let c = fp_gcd(&b, g, p);
        if c.len() > 1 && c.len() < g.len() {
            let other = fp_divrem(g, &c, p).0;
            equal_degree(&c, d, p, rng, out);
            equal_degree(&other, d, p, rng, out);
            return;
        }
    }
}

// ---------------------------------------------------------------------------
// Hensel lifting over Z.

fn zmul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn to_z(a: &Fp) -> Vec<BigInt> {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

fn zmod(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let mut v: Vec<BigInt> = a.iter().map(|c| c.mod_floor(m)).collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Lift `a = g h (mod p)` with `g` monic to `a = G H (mod p^k)`.
fn hensel_pair(a: &[BigInt], g: &Fp, h: &Fp, p: u64, k: u32) -> (Vec<BigInt>, Vec<BigInt>) {
    let (one, _, t) = fp_xgcd(g, h, p);
    debug_assert_eq!(one, vec![1]);
    let pb = BigInt::from(p);
    let mut big_g = to_z(g);
    let mut big_h = to_z(h);
    // pin the leading coefficient of H to that of a
    *big_h.last_mut().unwrap() = a.last().unwrap().clone();
    let mut pj = pb.clone();
    for _ in 1..k {
        let gh = zmul(&big_g, &big_h);
        let n = a.len().max(gh.len());
        let e: Vec<BigInt> = (0..n)
            .map(|i| {
                let x = a.get(i).cloned().unwrap_or_default();
                let y = gh.get(i).cloned().unwrap_or_default();
                let d = x - y;
                debug_assert!((&d % &pj).is_zero());
                d / &pj
            })
            .collect();
        let e = reduce_mod_p(&e, p);
        if !e.is_empty() {
            let dg = fp_rem(&fp_mul(&t, &e, p), g, p);
            let dh = fp_divrem(&fp_sub(&e, &fp_mul(h, &dg, p), p), g, p).0;
            for (i, c) in dg.iter().enumerate() {
                big_g[i] += &pj * BigInt::from(*c);
            }
            for (i, c) in dh.iter().enumerate() {
                big_h[i] += &pj * BigInt::from(*c);
            }
        }
        pj *= &pb;
    }
    (zmod(&big_g, &pj), zmod(&big_h, &pj))
}

/// Lift the monic modular factorization `a = lc(a) prod facs (mod p)` to
/// monic factors modulo `p^k`.
fn hensel_multi(a: &[BigInt], facs: &[Fp], p: u64, k: u32) -> Vec<Vec<BigInt>> {
    let m = num_traits::pow(BigInt::from(p), k as usize);
    if facs.len() == 1 {
        let lc_inv = a.last().unwrap().modinv(&m).expect("lc invertible mod p");
        return vec![zmod(&a.iter().map(|c| c * &lc_inv).collect::<Vec<_>>(), &m)];
    }
    let mid = facs.len() / 2;
    let (left, right) = facs.split_at(mid);
    let g = left.iter().fold(vec![1u64], |acc, f| fp_mul(&acc, f, p));
    let lc = a
        .last()
        .unwrap()
        .mod_floor(&BigInt::from(p))
        .to_u64()
        .unwrap();
    let h = fp_scale(
        &right.iter().fold(vec![1u64], |acc, f| fp_mul(&acc, f, p)),
        lc,
        p,
    );
    let (big_g, big_h) = hensel_pair(a, &g, &h, p, k);
    let mut out = hensel_multi(&big_g, left, p, k);
    out.extend(hensel_multi(&big_h, right, p, k));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Vec<BigInt> {
    let half = m >> 1;
    a.iter()
        .map(|c| {
            let r = c.mod_floor(m);
            if r > half {
                r - m
            } else {
                r
            }
        })
        .collect()
}

fn primitive(a: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for c in &a {
        g = g.gcd(c);
    }
    if g.is_zero() {
        return a;
    }
    if a.last().unwrap().sign() == Sign::Minus {
        g = -g;
    }
    let mut v: Vec<BigInt> = a.into_iter().map(|c| c / &g).collect();
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
    v
}

/// Exact division in `Z[x]`, `None` when `b` does not divide `a`.
fn zdiv_exact(a: &[BigInt], b: &[BigInt]) -> Option<Vec<BigInt>> {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return None;
    }
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    let lb = b.last().unwrap();
    for i in (0..q.len()).rev() {
        let (c, rem) = r[i + db].div_rem(lb);
        if !rem.is_zero() {
            return None;
        }
        if !c.is_zero() {
            for (j, bj) in b.iter().enumerate() {
                r[i + j] -= &c * bj;
            }
        }
        q[i] = c;
    }
    if r.iter().all(|c| c.is_zero()) {
        Some(q)
    } else {
        None
    }
}

const SMALL_PRIMES: [u64; 30] = [
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127,
];

/// Irreducible factors (primitive, positive leading coefficient) of a
/// primitive squarefree integer polynomial.
fn zassenhaus(a: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = a.len() - 1;
    if n <= 1 {
        return vec![a.to_vec()];
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0000 + n as u64);

    // choose the prime with the fewest modular factors among a few candidates
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for &p in SMALL_PRIMES.iter().chain(large_primes().iter()) {
        let ap = reduce_mod_p(a, p);
        if ap.len() != a.len() {
            continue;
        }
        if fp_gcd(&ap, &fp_derivative(&ap, p), p).len() != 1 {
            continue;
        }
        let facs = factor_mod_p(&fp_monic(&ap, p), p, &mut rng);
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 6 || best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (p, facs) = best.expect("no suitable prime for a squarefree polynomial");
    if facs.len() == 1 {
        return vec![a.to_vec()];
    }

    // Mignotte-style bound on the coefficients of lc(a) * (any factor)
    let maxc = a.iter().map(|c| c.abs()).max().unwrap();
    let lc_abs = a.last().unwrap().abs();
    let bound = BigInt::from(2u32) * &lc_abs * (BigInt::one() << n) * BigInt::from(n + 1) * maxc;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut m = pb.clone();
    while m <= bound {
        m *= &pb;
        k += 1;
    }

    let lifted = hensel_multi(a, &facs, p, k);
    recombine(a.to_vec(), lifted, &m)
}

fn recombine(mut a: Vec<BigInt>, mut facs: Vec<Vec<BigInt>>, m: &BigInt) -> Vec<Vec<BigInt>> {
    let mut out = Vec::new();
    let mut s = 1;
    'outer: while 2 * s <= facs.len() {
        let r = facs.len();
        let mut idx: Vec<usize> = (0..s).collect();
        loop {
            let lc = a.last().unwrap().clone();
            let mut prod = vec![lc];
            for &i in &idx {
                prod = zmod(&zmul(&prod, &facs[i]), m);
            }
            let cand = primitive(symmetric(&prod, m));
            if cand.len() > 1 {
                if let Some(q) = zdiv_exact(&a, &cand) {
                    out.push(cand);
                    a = q;
                    for &i in idx.iter().rev() {
                        facs.remove(i);
                    }
                    continue 'outer;
                }
            }
            // next combination
            let mut i = s;
            loop {
                if i == 0 {
                    s += 1;
                    continue 'outer;
                }
                i -= 1;
                if idx[i] < r - s + i {
                    idx[i] += 1;
                    for j in i + 1..s {
                        idx[j] = idx[j - 1] + 1;
                    }
                    break;
                }
            }
        }
    }
    out.push(primitive(a));
    out
}

fn large_primes() -> Vec<u64> {
    // fallback when every small prime divides the leading coefficient or
    // the discriminant
    let mut v = Vec::new();
    let mut c = 131u64;
    while v.len() < 200 {
        if (2..)
            .take_while(|d| d * d <= c)
            .all(|d| !c.is_multiple_of(d))
        {
            v.push(c);
        }
        c += 2;
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    fn expand(lc: &BigRational, f: &[(QPoly, usize)]) -> QPoly {
        let ring = qring();
        let mut acc = QPoly::constant_q(lc.clone());
        for (g, m) in f {
            acc = ring.mul(&acc, &ring.pow(g, *m as u64));
        }
        acc
    }

    #[test]
    fn difference_of_squares() {
        let f = factor_over_rationals(&p(&[-1, 0, 1])).unwrap();
        assert_eq!(f, vec![(p(&[-1, 1]), 1), (p(&[1, 1]), 1)]);
    }

    #[test]
    fn irreducible_quadratic() {
        let f = factor_over_rationals(&p(&[1, 0, 1])).unwrap();
        assert_eq!(f, vec![(p(&[1, 0, 1]), 1)]);
    }

    #[test]
    fn repeated_factors() {
        // t^4 - 2t^3 + t^2 = t^2 (t - 1)^2
        let f = factor_over_rationals(&p(&[0, 0, 1, -2, 1])).unwrap();
        assert_eq!(f, vec![(p(&[0, 1]), 2), (p(&[-1, 1]), 2)]);
    }

    #[test]
    fn zero_is_rejected() {
        assert!(factor_over_rationals(&QPoly::zero()).is_err());
        assert!(squarefree_part(&QPoly::zero()).is_err());
    }

    #[test]
    fn squarefree_examples() {
        assert_eq!(squarefree_part(&p(&[0, 1, -2, 1])).unwrap(), p(&[0, -1, 1]));
        assert_eq!(squarefree_part(&p(&[4])).unwrap(), p(&[1]));
        assert_eq!(
            squarefree_part(&p(&[0, 0, 0, 0, 1, -2, 1])).unwrap(),
            p(&[0, -1, 1])
        );
    }

    #[test]
    fn swinnerton_dyer_like_recombination() {
        // x^4 - 10x^2 + 1 is irreducible but splits modulo every prime
        let f = factor_over_rationals(&p(&[1, 0, -10, 0, 1])).unwrap();
        assert_eq!(f.len(), 1);
        // (x^4 - 10x^2 + 1)(x^2 - 2)(3x + 5)
        let g = &(&p(&[1, 0, -10, 0, 1]) * &p(&[-2, 0, 1])) * &p(&[5, 3]);
        let f = factor_over_rationals(&g).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(expand(g.lc().unwrap(), &f), g);
    }

    #[test]
    fn cyclotomic_product() {
        // x^12 - 1
        let mut c = vec![0i64; 13];
        c[0] = -1;
        c[12] = 1;
        let f = factor_over_rationals(&p(&c)).unwrap();
        assert_eq!(f.len(), 6);
        let degs: Vec<usize> = f.iter().map(|(g, _)| g.degree().unwrap()).collect();
        assert_eq!(degs, vec![1, 1, 2, 2, 2, 4]);
    }

    #[test]
    fn non_monic_with_rational_coefficients() {
        // (2x - 1/3)(x^2 + 7) / 5
        let g = &QPoly::new(vec![ratio(-1, 15), ratio(2, 5)]) * &p(&[7, 0, 1]);
        let f = factor_over_rationals(&g).unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f[0].0, QPoly::new(vec![ratio(-1, 6), rat(1)]));
        assert_eq!(expand(g.lc().unwrap(), &f), g);
    }

    use crate::arith::ratfunc::{rat, ratio};
}

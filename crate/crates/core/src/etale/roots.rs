//! Roots of `f` in `K` (or in `k'(t)` for a constant extension `k'`),
//! found by specializing at a good rational place, lifting each root of
//! the special fiber to a power series, and reconstructing a rational
//! function by Pade approximation. Candidates are verified exactly.

use crate::arith::field::{Field, IsZero};
use crate::arith::poly::{Poly, PolyRing};
use crate::arith::ratfunc::{qring, KPoly, QPoly, RationalFunction};
use crate::arith::sqclass::Mode;
use crate::error::Result;
use crate::places::{check_model, local_splitting, LocalPoint, Place, PointField};

/// Number of specialization points tried before concluding that `f` has no
/// root over a constant extension.
const SPECIALIZATIONS: usize = 3;

/// `f` scaled to have polynomial coefficients in `t`.
fn integral_coeffs(f: &KPoly) -> Vec<QPoly> {
    let ring = qring();
    let mut d = ring.one();
    for c in f.coeffs() {
        let g = ring.gcd(&d, c.denom());
        d = ring.mul(&d, &ring.exact_div(c.denom(), &g));
    }
    f.coeffs()
        .iter()
        .map(|c| ring.exact_div(&ring.mul(c.numer(), &d), c.denom()))
        .collect()
}

fn good_rational_places(f: &KPoly) -> impl Iterator<Item = Place> + '_ {
    (0..200i64)
        .map(|k| if k % 2 == 0 { k / 2 } else { -(k + 1) / 2 })
        .map(Place::at_int)
        .filter(move |p| crate::places::reduce_model(f, p).is_ok())
}

/// A root `p(s)/q(s)` in `E(s)` where `s = t - t1`.
struct SeriesRoot {
    field: PointField,
    num: Poly<<PointField as Field>::Elem>,
    den: Poly<<PointField as Field>::Elem>,
}

/// Pade reconstruction of the lifted root of `pt` with numerator and
/// denominator degrees at most `bound`, verified against `coeffs`.
fn reconstruct(pt: &LocalPoint, coeffs: &[QPoly], t1: &QPoly, bound: usize) -> Option<SeriesRoot> {
    let e = pt.field().clone();
    let ring = PolyRing::new(&e);
    let n = 2 * bound + 1;
    let series: Vec<_> = pt.root().coeffs().iter().take(n).cloned().collect();
    let mut r0 = ring.monomial(e.one(), n);
    let mut r1 = Poly::new(series);
    let mut t0 = Poly::zero();
    let mut t1c = ring.one();
    while r1.degree().is_some_and(|d| d > bound) {
        let (q, r) = ring.divrem(&r0, &r1);
        let t2 = ring.sub(&t0, &ring.mul(&q, &t1c));
        r0 = r1;
        r1 = r;
        t0 = t1c;
        t1c = t2;
    }
    if t1c.degree().unwrap_or(0) > bound || t1c.coeffs().first().is_none_or(|c| c.is_zero_value()) {
        return None;
    }
    let cand = SeriesRoot {
        field: e.clone(),
        num: r1,
        den: t1c,
    };
    verify(&cand, coeffs, t1).then_some(cand)
}

/// `sum F_i(s + t1) p^i q^(4-i) = 0` over `E[s]`.
fn verify(root: &SeriesRoot, coeffs: &[QPoly], t1: &QPoly) -> bool {
    let e = &root.field;
    let ring = PolyRing::new(e);
    let c = -t1.coeffs()[0].clone();
    let deg = coeffs.len() - 1;
    let mut acc = Poly::zero();
    for (i, fi) in coeffs.iter().enumerate() {
        if fi.is_zero() {
            continue;
        }
        let shifted = qring().taylor_shift(fi, &c);
        let fe = Poly::new(
            shifted
                .coeffs()
                .iter()
                .map(|q| e.from_rational(q))
                .collect(),
        );
        let term = ring.mul(
            &fe,
            &ring.mul(
                &ring.pow(&root.num, i as u64),
                &ring.pow(&root.den, (deg - i) as u64),
            ),
        );
        acc = ring.add(&acc, &term);
    }
    acc.is_zero()
}

/// Back to `Q(t)` when all coefficients are rational.
fn to_k(root: &SeriesRoot, t1: &QPoly) -> Option<RationalFunction> {
    let e = &root.field;
    let conv = |p: &Poly<<PointField as Field>::Elem>| -> Option<QPoly> {
        let q = QPoly::new(
            p.coeffs()
                .iter()
                .map(|c| e.as_rational(c))
                .collect::<Option<Vec<_>>>()?,
        );
        // s = t - t1
        Some(qring().compose(&q, t1))
    };
    Some(RationalFunction::new(conv(&root.num)?, conv(&root.den)?))
}

fn degree_bound(coeffs: &[QPoly]) -> usize {
    coeffs.iter().filter_map(|c| c.degree()).max().unwrap_or(0)
}

/// All roots of `f` in `K = Q(t)`, in canonical order.
pub fn rational_roots(f: &KPoly) -> Result<Vec<RationalFunction>> {
    check_model(f)?;
    let coeffs = integral_coeffs(f);
    let bound = degree_bound(&coeffs);
    let place = good_rational_places(f)
        .next()
        .expect("all but finitely many places are good");
    let t1 = place.poly().unwrap().clone();
    let mut roots = Vec::new();
    for pt in local_splitting(f, &place, 2 * bound + 2)? {
        if pt.relative_degree() != 1 {
            continue;
        }
        if let Some(r) = reconstruct(&pt, &coeffs, &t1, bound) {
            if let Some(a) = to_k(&r, &t1) {
                roots.push(a);
            }
        }
    }
    roots.sort();
    Ok(roots)
}

/// True iff `f` has a root in `K`. In geometric mode roots defined over a
/// constant extension also count.
pub fn has_rational_root(f: &KPoly, mode: Mode) -> Result<bool> {
    if !rational_roots(f)?.is_empty() {
        return Ok(true);
    }
    if mode == Mode::Strict {
        return Ok(false);
    }
    let coeffs = integral_coeffs(f);
    let bound = degree_bound(&coeffs);
    for place in good_rational_places(f).take(SPECIALIZATIONS) {
        let t1 = place.poly().unwrap().clone();
        for pt in local_splitting(f, &place, 2 * bound + 2)? {
            if reconstruct(&pt, &coeffs, &t1, bound).is_some() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// True iff `f` splits into linear factors over `K`.
pub fn splits_over_k(f: &KPoly) -> Result<bool> {
    Ok(rational_roots(f)?.len() == 4)
}

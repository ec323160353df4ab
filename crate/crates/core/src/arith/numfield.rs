//! Number-field helpers: norms, polynomial norms, Trager factorization and
//! square roots.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::factor::factor_over_rationals;
use super::field::{Field, NumberField, NumberFieldElement};
use super::poly::{Poly, PolyRing};
use super::ratfunc::{qring, QPoly};
use super::sqclass::rational_sqrt;
use crate::error::{invalid, Result};

/// Polynomials in `x` over a number field.
pub type NfPoly = Poly<NumberFieldElement>;

/// `N_{kappa/Q}(e)`.
pub fn norm(nf: &NumberField, e: &NumberFieldElement) -> BigRational {
    qring().resultant(nf.modulus(), e)
}

/// Norm of a polynomial over `kappa` down to `Q[x]`: the product of its
/// conjugates, computed by evaluation at integer points and interpolation.
pub fn norm_poly(nf: &NumberField, g: &NfPoly) -> QPoly {
    let Some(dg) = g.degree() else {
        return QPoly::zero();
    };
    let ring = PolyRing::new(nf);
    let n = dg * nf.degree();
    let xs: Vec<BigRational> = (0..=n as i64)
        .map(|k| BigRational::from_integer(k.into()))
        .collect();
    let ys: Vec<BigRational> = xs
        .iter()
        .map(|x| norm(nf, &ring.eval(g, &nf.from_rational(x))))
        .collect();
    interpolate(&xs, &ys)
}

/// Newton interpolation through the given points.
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> QPoly {
    let n = xs.len();
    let mut dd = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            dd[i] = (&dd[i] - &dd[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let ring = qring();
    let mut acc = QPoly::zero();
    for i in (0..n).rev() {
        acc = ring.add(
            &ring.mul(&acc, &ring.linear(&xs[i])),
            &QPoly::new(vec![dd[i].clone()]),
        );
    }
    acc
}

/// Lift a rational polynomial to one over `kappa`.
pub fn embed_poly(nf: &NumberField, p: &QPoly) -> NfPoly {
    Poly::new(p.coeffs().iter().map(|c| nf.from_rational(c)).collect())
}

/// Monic irreducible factors over `kappa` of a squarefree polynomial,
/// sorted deterministically.
pub fn factor_squarefree_over(nf: &NumberField, g: &NfPoly) -> Result<Vec<NfPoly>> {
    let ring = PolyRing::new(nf);
    let Some(dg) = g.degree() else {
        return Err(invalid("cannot factor the zero polynomial"));
    };
    if dg == 0 {
        return Ok(Vec::new());
    }
    if !ring.is_squarefree(g) {
        return Err(invalid(
            "polynomial is not squarefree over the residue field",
        ));
    }
    let g = ring.monic(g);
    let mut out = Vec::new();
    if nf.degree() == 1 || dg == 1 {
        if dg == 1 {
            out.push(g);
        } else {
            // kappa = Q: coefficients are constants
            let q = QPoly::new(
                g.coeffs()
                    .iter()
                    .map(|c| nf.as_rational(c).unwrap())
                    .collect(),
            );
            for (h, _) in factor_over_rationals(&q)? {
                out.push(embed_poly(nf, &h));
            }
        }
        return Ok(out);
    }
    let u = nf.generator();
    for s in shifts() {
        // g(x - s u)
        let shift = Poly::new(vec![nf.neg(&nf.mul(&nf.from_int(s), &u)), nf.one()]);
        let gs = ring.compose(&g, &shift);
        let nrm = norm_poly(nf, &gs);
        if !qring().is_squarefree(&nrm) {
            continue;
        }
        let back = Poly::new(vec![nf.mul(&nf.from_int(s), &u), nf.one()]);
        for (h, _) in factor_over_rationals(&nrm)? {
            let piece = ring.gcd(&gs, &embed_poly(nf, &h));
            if piece.degree().unwrap_or(0) > 0 {
                out.push(ring.monic(&ring.compose(&piece, &back)));
            }
        }
        out.sort_by(|a, b| ring.cmp_poly(a, b));
        return Ok(out);
    }
    unreachable!("some shift always yields a squarefree norm")
}

fn shifts() -> impl Iterator<Item = i64> {
    (0..).flat_map(|k: i64| if k == 0 { vec![0] } else { vec![k, -k] })
}

/// A square root of `e` in `kappa`, if one exists.
pub fn sqrt_in_number_field(
    nf: &NumberField,
    e: &NumberFieldElement,
) -> Result<Option<NumberFieldElement>> {
    if e.is_zero() {
        return Err(invalid("square test of zero"));
    }
    let e = nf.reduce(e);
    if let Some(q) = nf.as_rational(&e) {
        if let Some(r) = rational_sqrt(&q) {
            return Ok(Some(nf.from_rational(&r)));
        }
        if nf.degree() == 1 {
            return Ok(None);
        }
    }
    // a square has square norm
    if rational_sqrt(&norm(nf, &e)).is_none() {
        return Ok(None);
    }
    let z2 = Poly::new(vec![nf.neg(&e), nf.zero(), nf.one()]);
    for fac in factor_squarefree_over(nf, &z2)? {
        if fac.degree() == Some(1) {
            return Ok(Some(nf.neg(&fac.coeffs()[0])));
        }
    }
    Ok(None)
}

/// True iff `z^2 - e` has a root in `kappa`.
pub fn is_square_in_number_field(e: &NumberFieldElement, nf: &NumberField) -> Result<bool> {
    Ok(sqrt_in_number_field(nf, e)?.is_some())
}

/// The rational field as a degree-one number field `Q[u]/(u)`.
pub fn rational_field() -> NumberField {
    NumberField::number_field(
        Poly::new(vec![BigRational::zero(), BigRational::one()]),
        "u",
    )
}

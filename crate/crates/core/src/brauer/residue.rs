//! Vertical residues of `h(l) = Cor((l, x - A)_2)` along good fibers, the
//! split-case symbol expansion, and residue certificates.

use std::fmt;

use crate::arith::field::Field;
use crate::arith::numfield::NfPoly;
use crate::arith::poly::{Poly, PolyRing};
use crate::arith::ratfunc::{kring, KPoly, RationalFunction};
use crate::arith::sqclass::{FiberField, Mode, SquareClass};
use crate::error::{Error, Result};
use crate::etale::{valuation_of_ell_at_point, EtaleAlgebra, EtaleElement, KernelClass};
use crate::places::{local_splitting, reduce_model, valuation_at, Place, INITIAL_PRECISION};
use crate::surface::Surface;

use super::symbol::{fmt_kpoly, CurveFunction, QuaternionSymbol, SymbolSum};

/// The smooth fiber `X_t0`, or a bad-place error when `t0` is in `S`.
pub fn fiber_at(surface: &Surface, t0: &Place) -> Result<FiberField> {
    if surface.bad_places().contains(t0) {
        return Err(Error::BadPlace {
            place: t0.to_string(),
        });
    }
    FiberField::new(t0.residue_field(), reduce_model(surface.f(), t0)?)
}

/// True iff `g` is a square in the function field of `y^2 = f0(x)`.
pub fn is_square_in_fiber_field(g: &NfPoly, fiber: &FiberField, mode: Mode) -> Result<bool> {
    Ok(SquareClass::of_fiber(g, fiber, mode)?.is_identity())
}

/// `prod_j g_j^(v_j mod 2)` over the points `P_j` of `Z` above `t0`, where
/// `g_j` is the residue factor of `P_j` and `v_j = v_{P_j}(l)`.
pub fn vertical_residue_of_h(
    surface: &Surface,
    l: &KernelClass,
    t0: &Place,
) -> Result<SquareClass> {
    let fiber = fiber_at(surface, t0)?;
    let k = fiber.kappa().clone();
    let ring = PolyRing::new(&k);
    let cap = surface.precision_cap();
    let mut acc = ring.one();
    for p in local_splitting(surface.f(), t0, INITIAL_PRECISION.min(cap))? {
        if valuation_of_ell_at_point(surface.algebra(), l.rep(), &p, cap)?.rem_euclid(2) == 1 {
            acc = ring.mul(&acc, p.factor());
        }
    }
    SquareClass::of_fiber(&acc, &fiber, surface.mode())
}

/// `sum_i (d_i, x - a_i)_2` for `l = (d_1, .., d_4)` in split form, omitting
/// coordinates equal to 1. Works on the given representative, so a class
/// and its normalized representative may expand differently.
pub fn split_h_expansion(alg: &EtaleAlgebra, l: &EtaleElement) -> Result<SymbolSum> {
    let roots = alg.roots().ok_or(Error::NotSplit)?;
    let d = alg.to_split(l)?;
    let ring = kring();
    let mut out = SymbolSum::new();
    for (di, a) in d.components().iter().zip(roots) {
        if di.is_zero() {
            return Err(Error::ZeroDivisor);
        }
        if di.is_one() {
            continue;
        }
        out.push(QuaternionSymbol::over_curve(
            CurveFunction::from_k(di.clone()),
            CurveFunction::from_poly(ring.linear(a)),
        )?)?;
    }
    Ok(out)
}

/// `min_i v(c_i)` over the nonzero coefficients.
fn gauss_valuation(g: &KPoly, v: &Place) -> Result<i64> {
    let vals = g
        .coeffs()
        .iter()
        .filter(|c| !c.is_zero())
        .map(|c| valuation_at(c, v))
        .collect::<Result<Vec<_>>>()?;
    vals.into_iter()
        .min()
        .ok_or_else(|| Error::InvalidArgument("valuation of zero".into()))
}

/// Reduction of `pi^-m g` coefficientwise, `m` the Gauss valuation.
fn reduce_content(g: &KPoly, v: &Place, m: i64) -> Result<NfPoly> {
    let scale = v.uniformizer().powi(-m);
    let coeffs = g
        .coeffs()
        .iter()
        .map(|c| v.reduce(&(c * &scale)))
        .collect::<Result<Vec<_>>>()?;
    Ok(Poly::new(coeffs))
}

/// Split a y-free symbol into `(d, g)` with `d` in `K` and `g` in `K[x]`.
fn vertical_slots(s: &QuaternionSymbol) -> Result<(RationalFunction, KPoly)> {
    let unsupported =
        || Error::UnsupportedSymbol(format!("{s}: residues need slots in K and K[x]"));
    if !s.a().is_y_free() || !s.b().is_y_free() {
        return Err(unsupported());
    }
    match (s.a().as_k(), s.b().as_k()) {
        (Some(d), _) => Ok((d, s.b().g().clone())),
        // (a, b) = (b, a) in 2-torsion
        (None, Some(d)) => Ok((d, s.a().g().clone())),
        (None, None) => Err(unsupported()),
    }
}

/// Residue of a sum of y-free symbols along the fiber above `t0`.
pub fn residue_at(surface: &Surface, s: &SymbolSum, t0: &Place) -> Result<SquareClass> {
    let fiber = fiber_at(surface, t0)?;
    let k = fiber.kappa().clone();
    let ring = PolyRing::new(&k);
    let mut acc = ring.one();
    for sym in s.symbols() {
        let (d, g) = vertical_slots(sym)?;
        let vd = valuation_at(&d, t0)?;
        let vg = gauss_valuation(&g, t0)?;
        // (-1)^(vd vg) d^vg g^-vd, exponents taken mod 2
        let mut c = k.one();
        if (vd * vg).rem_euclid(2) == 1 {
            c = k.neg(&c);
        }
        if vg.rem_euclid(2) == 1 {
            let dbar = v_unit(&d, t0, vd)?;
            c = k.mul(&c, &dbar);
        }
        acc = ring.scale(&acc, &c);
        if vd.rem_euclid(2) == 1 {
            acc = ring.mul(&acc, &reduce_content(&g, t0, vg)?);
        }
    }
    if acc.is_zero() {
        return Err(Error::IndeterminateResidue(format!(
            "residue of {s} at {t0} vanishes"
        )));
    }
    SquareClass::of_fiber(&acc, &fiber, surface.mode())
}

/// Reduction of `pi^-v d`.
fn v_unit(
    d: &RationalFunction,
    t0: &Place,
    v: i64,
) -> Result<crate::arith::field::NumberFieldElement> {
    t0.reduce_unit(&(d * &t0.uniformizer().powi(-v)))
}

/// Residues of `s` along the fibers above each of `places`.
pub fn residue_profile(
    surface: &Surface,
    s: &SymbolSum,
    places: &[Place],
) -> Result<ResidueCertificate> {
    let entries = places
        .iter()
        .map(|p| {
            Ok((
                CertificatePlace::Vertical(p.clone()),
                residue_at(surface, s, p)?,
            ))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(ResidueCertificate::new(entries))
}

/// A divisor of the surface along which a residue was taken.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum CertificatePlace {
    /// The fiber above a place of `K`.
    Vertical(Place),
    /// A divisor of the generic fiber, by description.
    Horizontal(String),
}

impl fmt::Display for CertificatePlace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertificatePlace::Vertical(p) => write!(f, "{p}"),
            CertificatePlace::Horizontal(d) => write!(f, "[{d}]"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertificateVerdict {
    UnramifiedEverywhereChecked,
    RamifiedAt(Vec<CertificatePlace>),
}

/// Vertical places in place order, then horizontal ones as listed.
fn cmp_places(a: &CertificatePlace, b: &CertificatePlace) -> std::cmp::Ordering {
    use CertificatePlace::*;
    match (a, b) {
        (Vertical(p), Vertical(q)) => p.cmp(q),
        (Vertical(_), Horizontal(_)) => std::cmp::Ordering::Less,
        (Horizontal(_), Vertical(_)) => std::cmp::Ordering::Greater,
        (Horizontal(_), Horizontal(_)) => std::cmp::Ordering::Equal,
    }
}

/// Residue classes at a list of places, sorted by place.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueCertificate {
    entries: Vec<(CertificatePlace, SquareClass)>,
    verdict: CertificateVerdict,
}

impl ResidueCertificate {
    pub fn new(mut entries: Vec<(CertificatePlace, SquareClass)>) -> Self {
        entries.sort_by(|a, b| cmp_places(&a.0, &b.0));
        let ramified: Vec<CertificatePlace> = entries
            .iter()
            .filter(|(_, c)| !c.is_identity())
            .map(|(p, _)| p.clone())
            .collect();
        let verdict = if ramified.is_empty() {
            CertificateVerdict::UnramifiedEverywhereChecked
        } else {
            CertificateVerdict::RamifiedAt(ramified)
        };
        ResidueCertificate { entries, verdict }
    }

    pub fn entries(&self) -> &[(CertificatePlace, SquareClass)] {
        &self.entries
    }

    pub fn verdict(&self) -> &CertificateVerdict {
        &self.verdict
    }

    pub fn is_unramified(&self) -> bool {
        self.verdict == CertificateVerdict::UnramifiedEverywhereChecked
    }

    pub fn get(&self, p: &CertificatePlace) -> Option<&SquareClass> {
        self.entries.iter().find(|(q, _)| q == p).map(|(_, c)| c)
    }
}

impl fmt::Display for ResidueCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (p, c) in &self.entries {
            writeln!(f, "{p}\t{c}")?;
        }
        match &self.verdict {
            CertificateVerdict::UnramifiedEverywhereChecked => {
                write!(f, "unramified at every checked place")
            }
            CertificateVerdict::RamifiedAt(ps) => {
                let names: Vec<String> = ps.iter().map(|p| p.to_string()).collect();
                write!(f, "ramified at {}", names.join(", "))
            }
        }
    }
}

/// Audit that `h(l)` is unramified along the horizontal divisors of the
/// generic fiber: at `x = a` (where `y^2 = (x - a) g` with `g(a) != 0`, so
/// `x - a` has even valuation) and at the points at infinity (residue the
/// class of `N(l)^-1`).
#[allow(non_snake_case)]
pub fn verify_in_Br_C(alg: &EtaleAlgebra, l: &KernelClass) -> Result<ResidueCertificate> {
    let mode = l.mode();
    let ring = kring();
    let f = alg.f();
    let identity = SquareClass::of_k(&RationalFunction::one(), mode)?;
    let mut entries = Vec::new();
    match alg.roots() {
        Some(roots) => {
            for (i, a) in roots.iter().enumerate() {
                let mut g = ring.one();
                for (j, b) in roots.iter().enumerate() {
                    if i != j {
                        g = ring.mul(&g, &ring.linear(b));
                    }
                }
                if ring.eval(&g, a).is_zero() {
                    return Err(Error::DegenerateModel(format!("f has a repeated root {a}")));
                }
                let place = format!("x = {a}");
                entries.push((CertificatePlace::Horizontal(place), identity.clone()));
            }
        }
        None => {
            // g(A) = f'(A) must be a unit of L
            if ring.inv_mod(&ring.derivative(f), f).is_none() {
                return Err(Error::DegenerateModel(format!(
                    "{} is not separable",
                    fmt_kpoly(f)
                )));
            }
            entries.push((
                CertificatePlace::Horizontal("x = A".into()),
                identity.clone(),
            ));
        }
    }
    let n = alg.norm(l.rep())?;
    let at_infinity = SquareClass::of_k(&n.inv().ok_or(Error::ZeroDivisor)?, mode)?;
    entries.push((CertificatePlace::Horizontal("x = inf".into()), at_infinity));
    Ok(ResidueCertificate::new(entries))
}

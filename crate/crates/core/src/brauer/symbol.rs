//! Quaternion symbols `(a, b)_2` over `K` and over the function field of
//! the generic fiber, and the tame residue over `K`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::field::Field;
use crate::arith::numfield::norm;
use crate::arith::poly::Poly;
use crate::arith::ratfunc::{kring, KPoly, RationalFunction};
use crate::arith::sqclass::{Mode, SquareClass};
use crate::error::{invalid, Error, Result};
use crate::places::{support, valuation_at, Place};

/// `g(x) + h(x) y` with `g, h` polynomials in `x` over `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CurveFunction {
    g: KPoly,
    h: KPoly,
}

impl CurveFunction {
    pub fn new(g: KPoly, h: KPoly) -> Self {
        CurveFunction { g, h }
    }

    pub fn from_k(r: RationalFunction) -> Self {
        CurveFunction::new(kring().constant(r), Poly::zero())
    }

    pub fn from_poly(g: KPoly) -> Self {
        CurveFunction::new(g, Poly::zero())
    }

    pub fn g(&self) -> &KPoly {
        &self.g
    }

    pub fn h(&self) -> &KPoly {
        &self.h
    }

    pub fn is_zero(&self) -> bool {
        self.g.is_zero() && self.h.is_zero()
    }

    pub fn is_y_free(&self) -> bool {
        self.h.is_zero()
    }

    /// The element of `K` this is, if it involves neither `x` nor `y`.
    pub fn as_k(&self) -> Option<RationalFunction> {
        if !self.is_y_free() || self.g.degree().unwrap_or(0) > 0 {
            return None;
        }
        Some(self.g.coeff(0).cloned().unwrap_or_default())
    }
}

impl fmt::Display for CurveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let g = fmt_kpoly(&self.g);
        if self.h.is_zero() {
            return f.write_str(&g);
        }
        let h = fmt_kpoly(&self.h);
        let y = if h == "1" {
            "y".to_string()
        } else {
            format!("({h})*y")
        };
        if self.g.is_zero() {
            f.write_str(&y)
        } else {
            write!(f, "{g} + {y}")
        }
    }
}

/// Polynomial in `x` over `K`; a polynomial constant term is written out
/// without parentheses, so `x - t - 1` rather than `x + (-t - 1)`.
pub fn fmt_kpoly(p: &KPoly) -> String {
    let ring = kring();
    let c0 = p
        .coeff(0)
        .filter(|c| !c.is_zero() && c.is_polynomial() && !c.is_constant());
    let Some(c0) = c0 else {
        let s = ring.fmt_poly(p, "x");
        return if s.is_empty() { "0".into() } else { s };
    };
    let mut rest = p.clone().into_coeffs();
    rest[0] = RationalFunction::zero();
    let rest = Poly::new(rest);
    let c = c0.to_string();
    let head = ring.fmt_poly(&rest, "x");
    if rest.is_zero() {
        c
    } else if let Some(neg) = c.strip_prefix('-') {
        format!("{head} - {}", flip_signs(neg))
    } else {
        format!("{head} + {c}")
    }
}

/// `a - b + c` -> `a + b - c` for the tail after a leading term.
fn flip_signs(s: &str) -> String {
    s.replace(" - ", " \0 ")
        .replace(" + ", " - ")
        .replace(" \0 ", " + ")
}

/// Where a symbol lives.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    /// `K = Q(t)`.
    Base,
    /// The function field `K(x, y)` of the generic fiber.
    Curve,
}

/// The quaternion algebra `(a, b)_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuaternionSymbol {
    ambient: Ambient,
    a: CurveFunction,
    b: CurveFunction,
}

impl QuaternionSymbol {
    pub fn over_k(a: RationalFunction, b: RationalFunction) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(invalid("quaternion symbol with a zero slot"));
        }
        Ok(QuaternionSymbol {
            ambient: Ambient::Base,
            a: CurveFunction::from_k(a),
            b: CurveFunction::from_k(b),
        })
    }

    pub fn over_curve(a: CurveFunction, b: CurveFunction) -> Result<Self> {
        if a.is_zero() || b.is_zero() {
            return Err(invalid("quaternion symbol with a zero slot"));
        }
        Ok(QuaternionSymbol {
            ambient: Ambient::Curve,
            a,
            b,
        })
    }

    pub fn ambient(&self) -> Ambient {
        self.ambient
    }

    pub fn a(&self) -> &CurveFunction {
        &self.a
    }

    pub fn b(&self) -> &CurveFunction {
        &self.b
    }

    /// Both slots as elements of `K`, for symbols over the base.
    pub fn k_slots(&self) -> Result<(RationalFunction, RationalFunction)> {
        match (self.ambient, self.a.as_k(), self.b.as_k()) {
            (Ambient::Base, Some(a), Some(b)) => Ok((a, b)),
            _ => Err(Error::UnsupportedSymbol(format!(
                "{self} is not a symbol over K"
            ))),
        }
    }
}

impl fmt::Display for QuaternionSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})_2", self.a, self.b)
    }
}

/// A formal sum of symbols over one ambient field; empty means trivial.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolSum {
    symbols: Vec<QuaternionSymbol>,
}

impl SymbolSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, s: QuaternionSymbol) -> Result<()> {
        if let Some(first) = self.symbols.first() {
            if first.ambient != s.ambient {
                return Err(invalid("symbols over different fields"));
            }
        }
        self.symbols.push(s);
        Ok(())
    }

    pub fn symbols(&self) -> &[QuaternionSymbol] {
        &self.symbols
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }
}

impl fmt::Display for SymbolSum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.symbols.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.symbols.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// `(-1)^(v(a) v(b)) a^v(b) b^-v(a)` reduced into `kappa(v)^x / kappa(v)^x2`.
pub fn tame_residue(s: &QuaternionSymbol, v: &Place, mode: Mode) -> Result<SquareClass> {
    let (a, b) = s.k_slots()?;
    let va = valuation_at(&a, v)?;
    let vb = valuation_at(&b, v)?;
    let sign = if (va * vb).rem_euclid(2) == 1 {
        RationalFunction::from_int(-1)
    } else {
        RationalFunction::one()
    };
    let u = &(&sign * &a.powi(vb)) * &b.powi(-va);
    let k = v.residue_field();
    let ubar = v.reduce_unit(&u).map_err(|_| {
        Error::IndeterminateResidue(format!("tame symbol of {s} at {v} is not a unit"))
    })?;
    if k.is_zero(&ubar) {
        return Err(Error::IndeterminateResidue(format!(
            "tame symbol of {s} vanishes at {v}"
        )));
    }
    SquareClass::of_number_field(&ubar, &k, mode)
}

/// `N_{kappa/Q}` of a residue class, as a class of `Q^x / Q^x2`.
pub fn norm_to_constants(c: &SquareClass) -> Result<SquareClass> {
    match c {
        SquareClass::NumberField { mode, field, rep } => {
            SquareClass::of_rational(&norm(field, rep), *mode)
        }
        SquareClass::Rational { .. } => Ok(c.clone()),
        _ => Err(invalid(
            "only residue classes of places of K have a norm to Q",
        )),
    }
}

/// Product over all places of `K` of the norms of the tame residues of
/// `(a, b)`; Weil reciprocity says this is trivial.
pub fn weil_product(a: &RationalFunction, b: &RationalFunction, mode: Mode) -> Result<SquareClass> {
    let s = QuaternionSymbol::over_k(a.clone(), b.clone())?;
    let mut places = support(a);
    places.extend(support(b));
    places.sort();
    places.dedup();
    places.push(Place::Infinity);
    let mut acc = SquareClass::of_rational(&BigRational::from_integer(BigInt::from(1)), mode)?;
    for v in &places {
        acc = acc.mul(&norm_to_constants(&tame_residue(&s, v, mode)?)?)?;
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratfunc::QPoly;

    fn rf(n: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(QPoly::from_ints(n))
    }

    fn class_of(q: i64) -> SquareClass {
        SquareClass::of_rational(&BigRational::from_integer(q.into()), Mode::Strict).unwrap()
    }

    #[test]
    fn residues_of_t_and_t_minus_one() {
        let s = QuaternionSymbol::over_k(rf(&[0, 1]), rf(&[-1, 1])).unwrap();
        let at =
            |v: &Place| norm_to_constants(&tame_residue(&s, v, Mode::Strict).unwrap()).unwrap();
        assert_eq!(at(&Place::at_int(0)), class_of(-1));
        assert_eq!(at(&Place::at_int(1)), class_of(1));
        assert_eq!(at(&Place::Infinity), class_of(-1));
        assert!(weil_product(&rf(&[0, 1]), &rf(&[-1, 1]), Mode::Strict)
            .unwrap()
            .is_identity());
    }

    #[test]
    fn constant_second_slot() {
        let s = QuaternionSymbol::over_k(rf(&[-5, 1]), rf(&[3])).unwrap();
        let r = tame_residue(&s, &Place::at_int(5), Mode::Strict).unwrap();
        assert_eq!(norm_to_constants(&r).unwrap(), class_of(3));
        assert!(tame_residue(&s, &Place::at_int(2), Mode::Strict)
            .unwrap()
            .is_identity());
        assert!(tame_residue(&s, &Place::at_int(5), Mode::Geometric)
            .unwrap()
            .is_identity());
    }

    #[test]
    fn degree_two_place() {
        // (t^2 + 1, t) at t^2 + 1: residue is the class of u in Q(i), i.e. of
        // i, which is not a square in Q(i)
        let s = QuaternionSymbol::over_k(rf(&[1, 0, 1]), rf(&[0, 1])).unwrap();
        let v = Place::finite(&QPoly::from_ints(&[1, 0, 1])).unwrap();
        let r = tame_residue(&s, &v, Mode::Strict).unwrap();
        assert!(!r.is_identity());
        assert!(weil_product(&rf(&[1, 0, 1]), &rf(&[0, 1]), Mode::Strict)
            .unwrap()
            .is_identity());
    }

    #[test]
    fn curve_symbols_are_rejected() {
        let x = CurveFunction::from_poly(kring().x());
        let s = QuaternionSymbol::over_curve(CurveFunction::from_k(rf(&[0, 1])), x).unwrap();
        assert_eq!(s.to_string(), "(t, x)_2");
        assert!(matches!(
            tame_residue(&s, &Place::at_int(0), Mode::Strict),
            Err(Error::UnsupportedSymbol(_))
        ));
    }
}

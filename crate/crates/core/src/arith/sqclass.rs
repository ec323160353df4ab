//! Square classes `F^x / F^x2` for the rationals, residue number fields,
//! `K = Q(t)` and function fields of smooth fibers `y^2 = f(x, t0)`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::factor::factor_over_rationals;
use super::field::{Field, NumberField, NumberFieldElement};
use super::numfield::{is_square_in_number_field, NfPoly};
use super::poly::PolyRing;
use super::ratfunc::{qring, QPoly, RationalFunction};
use crate::error::{invalid, Error, Result};

/// Arithmetic convention for constants.
///
/// `Geometric` models an algebraically closed constant field: every nonzero
/// constant is a square and constant-field extensions are invisible.
/// `Strict` keeps honest arithmetic over `Q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum Mode {
    #[default]
    Geometric,
    Strict,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mode::Geometric => "geometric",
            Mode::Strict => "strict",
        })
    }
}

impl FromStr for Mode {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "geometric" => Ok(Mode::Geometric),
            "strict" => Ok(Mode::Strict),
            other => Err(invalid(format!(
                "unknown mode `{other}` (expected geometric or strict)"
            ))),
        }
    }
}

/// Exact square root of a rational number, if it has one.
pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    if q.is_negative() {
        return None;
    }
    let n = integer_sqrt(q.numer())?;
    let d = integer_sqrt(q.denom())?;
    Some(BigRational::new(n, d))
}

fn integer_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Integer representative of the class of `q` in `Q^x/Q^x2`: squares of
/// small primes and a perfect-square cofactor are removed. Equality of
/// classes is decided semantically, so large repeated primes are harmless.
fn rational_rep(q: &BigRational) -> BigInt {
    let mut n: BigInt = q.numer() * q.denom();
    let neg = n.is_negative();
    n = n.abs();
    let mut out = BigInt::one();
    let mut p = 2u32;
    while p < 1000 {
        let pb = BigInt::from(p);
        let mut e = 0;
        while (&n % &pb).is_zero() {
            n /= &pb;
            e += 1;
        }
        if e % 2 == 1 {
            out *= &pb;
        }
        if &pb * &pb > n {
            break;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if integer_sqrt(&n).is_none() {
        out *= n;
    }
    if neg {
        -out
    } else {
        out
    }
}

fn same_rational_class(a: &BigInt, b: &BigInt) -> bool {
    a == b || integer_sqrt(&(a * b)).is_some()
}

/// Smooth fiber `y^2 = f0(x)` over the residue field of a good place.
#[derive(Clone, Debug, PartialEq)]
pub struct FiberField {
    kappa: NumberField,
    f0: NfPoly,
}

impl FiberField {
    /// Fails unless `f0` is a separable quartic over `kappa`.
    pub fn new(kappa: NumberField, f0: NfPoly) -> Result<Self> {
        let ring = PolyRing::new(&kappa);
        if f0.degree() != Some(4) || !ring.is_squarefree(&f0) {
            return Err(Error::BadReduction {
                place: kappa.fmt_elem(kappa.modulus()),
                reason: "fiber is not a smooth genus-one curve".into(),
            });
        }
        Ok(FiberField { kappa, f0 })
    }

    pub fn kappa(&self) -> &NumberField {
        &self.kappa
    }

    pub fn f0(&self) -> &NfPoly {
        &self.f0
    }
}

/// A canonical element of a square-class group.
#[derive(Clone, Debug)]
pub enum SquareClass {
    /// `Q^x/Q^x2`; always `1` in geometric mode.
    Rational { mode: Mode, rep: BigInt },
    /// `kappa^x/kappa^x2` for a residue number field.
    NumberField {
        mode: Mode,
        field: NumberField,
        rep: NumberFieldElement,
    },
    /// `K^x/K^x2`: a constant class times the monic product of the
    /// irreducible factors of odd multiplicity.
    Function {
        mode: Mode,
        constant: BigInt,
        odd: QPoly,
    },
    /// Classes of `kappa(x)^x` inside the fiber function field, where `f0`
    /// itself is a square.
    Fiber {
        mode: Mode,
        fiber: FiberField,
        constant: NumberFieldElement,
        odd: NfPoly,
    },
}

impl SquareClass {
    pub fn of_rational(q: &BigRational, mode: Mode) -> Result<Self> {
        if q.is_zero() {
            return Err(invalid("square class of zero"));
        }
        let rep = match mode {
            Mode::Geometric => BigInt::one(),
            Mode::Strict => rational_rep(q),
        };
        Ok(SquareClass::Rational { mode, rep })
    }

    pub fn of_number_field(
        e: &NumberFieldElement,
        field: &NumberField,
        mode: Mode,
    ) -> Result<Self> {
        let e = field.reduce(e);
        if e.is_zero() {
            return Err(invalid("square class of zero"));
        }
        let rep = match mode {
            Mode::Geometric => field.one(),
            Mode::Strict => match field.as_rational(&e) {
                Some(q) => field.from_rational(&BigRational::from_integer(rational_rep(&q))),
                None => e,
            },
        };
        Ok(SquareClass::NumberField {
            mode,
            field: field.clone(),
            rep,
        })
    }

    pub fn of_k(r: &RationalFunction, mode: Mode) -> Result<Self> {
        if r.is_zero() {
            return Err(invalid("square class of zero"));
        }
        let ring = qring();
        let lc = r.numer().lc().unwrap().clone();
        let num = ring.monic(r.numer());
        let odd = odd_product(&ring, &ring.odd_part(&num), &ring.odd_part(r.denom()));
        let constant = match mode {
            Mode::Geometric => BigInt::one(),
            Mode::Strict => rational_rep(&lc),
        };
        Ok(SquareClass::Function {
            mode,
            constant,
            odd,
        })
    }

    /// Class of a nonzero polynomial in `x` over `kappa` in the fiber field.
    pub fn of_fiber(g: &NfPoly, fiber: &FiberField, mode: Mode) -> Result<Self> {
        if g.is_zero() {
            return Err(invalid("square class of zero"));
        }
        let ring = PolyRing::new(&fiber.kappa);
        let constant = g.lc().unwrap().clone();
        let odd = ring.odd_part(g);
        Ok(Self::fiber_canonical(fiber, mode, constant, odd))
    }

    fn fiber_canonical(
        fiber: &FiberField,
        mode: Mode,
        constant: NumberFieldElement,
        odd: NfPoly,
    ) -> Self {
        let k = &fiber.kappa;
        let ring = PolyRing::new(k);
        let lc = fiber.f0.lc().unwrap().clone();
        let fm = ring.monic(&fiber.f0);
        let alt = odd_product(&ring, &odd, &fm);
        let (constant, odd) = if ring.cmp_poly(&alt, &odd) == std::cmp::Ordering::Less {
            (k.mul(&constant, &lc), alt)
        } else {
            (constant, odd)
        };
        let constant = match mode {
            Mode::Geometric => k.one(),
            Mode::Strict => match k.as_rational(&constant) {
                Some(q) => k.from_rational(&BigRational::from_integer(rational_rep(&q))),
                None => constant,
            },
        };
        SquareClass::Fiber {
            mode,
            fiber: fiber.clone(),
            constant,
            odd,
        }
    }

    /// Identity of the class group of `self`'s ambient field.
    pub fn identity_like(&self) -> Self {
        match self {
            SquareClass::Rational { mode, .. } => SquareClass::Rational {
                mode: *mode,
                rep: BigInt::one(),
            },
            SquareClass::NumberField { mode, field, .. } => SquareClass::NumberField {
                mode: *mode,
                field: field.clone(),
                rep: field.one(),
            },
            SquareClass::Function { mode, .. } => SquareClass::Function {
                mode: *mode,
                constant: BigInt::one(),
                odd: QPoly::from_ints(&[1]),
            },
            SquareClass::Fiber { mode, fiber, .. } => SquareClass::Fiber {
                mode: *mode,
                fiber: fiber.clone(),
                constant: fiber.kappa.one(),
                odd: PolyRing::new(&fiber.kappa).one(),
            },
        }
    }

    /// `constant * odd` as an element of `K`, for classes of `K`.
    pub fn k_representative(&self) -> Option<RationalFunction> {
        match self {
            SquareClass::Function { constant, odd, .. } => Some(
                &RationalFunction::constant(BigRational::from_integer(constant.clone()))
                    * &RationalFunction::from_poly(odd.clone()),
            ),
            _ => None,
        }
    }

    pub fn mode(&self) -> Mode {
        match self {
            SquareClass::Rational { mode, .. }
            | SquareClass::NumberField { mode, .. }
            | SquareClass::Function { mode, .. }
            | SquareClass::Fiber { mode, .. } => *mode,
        }
    }

    pub fn is_identity(&self) -> bool {
        *self == self.identity_like()
    }

    /// Product of two classes over the same ambient field.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        use SquareClass::*;
        let mismatch = || invalid("square classes live in different groups");
        if self.mode() != other.mode() {
            return Err(mismatch());
        }
        let mode = self.mode();
        match (self, other) {
            (Rational { rep: a, .. }, Rational { rep: b, .. }) => {
                Self::of_rational(&BigRational::from_integer(a * b), mode)
            }
            (
                NumberField { field, rep: a, .. },
                NumberField {
                    field: f2, rep: b, ..
                },
            ) => {
                if field != f2 {
                    return Err(mismatch());
                }
                Self::of_number_field(&field.mul(a, b), field, mode)
            }
            (
                Function {
                    constant: c1,
                    odd: o1,
                    ..
                },
                Function {
                    constant: c2,
                    odd: o2,
                    ..
                },
            ) => {
                let ring = qring();
                let constant = match mode {
                    Mode::Geometric => BigInt::one(),
                    Mode::Strict => rational_rep(&BigRational::from_integer(c1 * c2)),
                };
                Ok(Function {
                    mode,
                    constant,
                    odd: odd_product(&ring, o1, o2),
                })
            }
            (
                Fiber {
                    fiber,
                    constant: c1,
                    odd: o1,
                    ..
                },
                Fiber {
                    fiber: f2,
                    constant: c2,
                    odd: o2,
                    ..
                },
            ) => {
                if fiber != f2 {
                    return Err(mismatch());
                }
                let k = &fiber.kappa;
                let ring = PolyRing::new(k);
                Ok(Self::fiber_canonical(
                    fiber,
                    mode,
                    k.mul(c1, c2),
                    odd_product(&ring, o1, o2),
                ))
            }
            _ => Err(mismatch()),
        }
    }

    /// Render with the given variable name for polynomial classes.
    pub fn display_with(&self, var: &str) -> String {
        match self {
            SquareClass::Rational { rep, .. } => rep.to_string(),
            SquareClass::NumberField { field, rep, .. } => field.fmt_elem(rep),
            SquareClass::Function { constant, odd, .. } => {
                with_constant(constant.to_string(), factored_q(odd, var))
            }
            SquareClass::Fiber {
                fiber,
                constant,
                odd,
                ..
            } => {
                let k = &fiber.kappa;
                let body = if odd.degree() == Some(0) {
                    None
                } else if k.degree() == 1 {
                    let q = QPoly::new(
                        odd.coeffs()
                            .iter()
                            .map(|c| k.as_rational(c).unwrap())
                            .collect(),
                    );
                    factored_q(&q, var)
                } else {
                    Some(PolyRing::new(k).fmt_poly(odd, var))
                };
                let c = match k.as_rational(constant) {
                    Some(q) => q.to_string(),
                    None => format!("({})", k.fmt_elem(constant)),
                };
                with_constant(c, body)
            }
        }
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = match self {
            SquareClass::Function { .. } => "t",
            _ => "x",
        };
        f.write_str(&self.display_with(var))
    }
}

impl PartialEq for SquareClass {
    fn eq(&self, other: &Self) -> bool {
        use SquareClass::*;
        if self.mode() != other.mode() {
            return false;
        }
        let strict = self.mode() == Mode::Strict;
        match (self, other) {
            (Rational { rep: a, .. }, Rational { rep: b, .. }) => {
                !strict || same_rational_class(a, b)
            }
            (
                NumberField { field, rep: a, .. },
                NumberField {
                    field: f2, rep: b, ..
                },
            ) => field == f2 && (!strict || a == b || nf_square(field, &field.mul(a, b))),
            (
                Function {
                    constant: c1,
                    odd: o1,
                    ..
                },
                Function {
                    constant: c2,
                    odd: o2,
                    ..
                },
            ) => o1 == o2 && same_rational_class(c1, c2),
            (
                Fiber {
                    fiber,
                    constant: c1,
                    odd: o1,
                    ..
                },
                Fiber {
                    fiber: f2,
                    constant: c2,
                    odd: o2,
                    ..
                },
            ) => {
                fiber == f2
                    && o1 == o2
                    && (!strict || c1 == c2 || nf_square(&fiber.kappa, &fiber.kappa.mul(c1, c2)))
            }
            _ => false,
        }
    }
}

impl Eq for SquareClass {}

fn nf_square(k: &NumberField, e: &NumberFieldElement) -> bool {
    is_square_in_number_field(e, k).unwrap_or(false)
}

/// Odd part of the product of two monic squarefree polynomials.
fn odd_product<F: Field>(
    ring: &PolyRing<'_, F>,
    a: &super::poly::Poly<F::Elem>,
    b: &super::poly::Poly<F::Elem>,
) -> super::poly::Poly<F::Elem> {
    let g = ring.gcd(a, b);
    ring.monic(&ring.mul(&ring.exact_div(a, &g), &ring.exact_div(b, &g)))
}

fn factored_q(p: &QPoly, var: &str) -> Option<String> {
    if p.degree().unwrap_or(0) == 0 {
        return None;
    }
    let factors = factor_over_rationals(p).expect("nonzero");
    let parts: Vec<String> = factors
        .iter()
        .map(|(g, _)| {
            let s = g.to_string_in(var);
            if factors.len() > 1 && s.contains(' ') {
                format!("({s})")
            } else {
                s
            }
        })
        .collect();
    Some(parts.join("*"))
}

fn with_constant(c: String, body: Option<String>) -> String {
    match body {
        None => c,
        Some(b) if c == "1" => b,
        Some(b) if c == "-1" => {
            if b.contains(' ') && !b.contains('*') {
                format!("-({b})")
            } else {
                format!("-{b}")
            }
        }
        Some(b) => {
            if b.contains(' ') && !b.contains('*') {
                format!("{c}*({b})")
            } else {
                format!("{c}*{b}")
            }
        }
    }
}

/// `(is_square, witness)`; the witness `s` satisfies `s^2 = r` in strict
/// mode and `s^2 = r / c` for a nonzero constant `c` in geometric mode.
pub fn is_square_in_k(
    r: &RationalFunction,
    mode: Mode,
) -> Result<(bool, Option<RationalFunction>)> {
    if r.is_zero() {
        return Err(invalid("square test of zero"));
    }
    let ring = qring();
    let lc = r.numer().lc().unwrap().clone();
    let num = ring.monic(r.numer());
    let mut root_num = ring.one();
    let mut root_den = ring.one();
    for (p, m) in ring.squarefree_decomposition(&num) {
        if m % 2 == 1 {
            return Ok((false, None));
        }
        root_num = ring.mul(&root_num, &ring.pow(&p, (m / 2) as u64));
    }
    for (p, m) in ring.squarefree_decomposition(r.denom()) {
        if m % 2 == 1 {
            return Ok((false, None));
        }
        root_den = ring.mul(&root_den, &ring.pow(&p, (m / 2) as u64));
    }
    let s = RationalFunction::new(root_num, root_den);
    match mode {
        Mode::Geometric => Ok((true, Some(s))),
        Mode::Strict => match rational_sqrt(&lc) {
            Some(c) => Ok((true, Some(&s * &RationalFunction::constant(c)))),
            None => Ok((false, None)),
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratfunc::{rat, ratio};

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(QPoly::from_ints(n), QPoly::from_ints(d))
    }

    #[test]
    fn k_squares() {
        // t^2/(t-1)^2
        let r = rf(&[0, 0, 1], &[1, -2, 1]);
        let (ok, w) = is_square_in_k(&r, Mode::Strict).unwrap();
        assert!(ok);
        let w = w.unwrap();
        assert_eq!(&w * &w, r);
        assert!(
            !is_square_in_k(&RationalFunction::t(), Mode::Geometric)
                .unwrap()
                .0
        );
        let r = rf(&[0, 0, 2], &[1]);
        assert!(is_square_in_k(&r, Mode::Geometric).unwrap().0);
        assert!(!is_square_in_k(&r, Mode::Strict).unwrap().0);
        assert!(is_square_in_k(&RationalFunction::zero(), Mode::Strict).is_err());
    }

    #[test]
    fn rational_classes() {
        let nine = SquareClass::of_rational(&rat(9), Mode::Strict).unwrap();
        assert!(nine.is_identity());
        assert_eq!(nine.to_string(), "1");
        let m1 = SquareClass::of_rational(&rat(-1), Mode::Strict).unwrap();
        assert_eq!(m1.to_string(), "-1");
        assert!(SquareClass::of_rational(&rat(-1), Mode::Geometric)
            .unwrap()
            .is_identity());
        let a = SquareClass::of_rational(&ratio(8, 3), Mode::Strict).unwrap();
        assert_eq!(a, SquareClass::of_rational(&rat(6), Mode::Strict).unwrap());
    }

    #[test]
    fn function_classes() {
        // t^3 (t - 1)
        let e = RationalFunction::from_poly(QPoly::from_ints(&[0, 0, 0, -1, 1]));
        let c = SquareClass::of_k(&e, Mode::Geometric).unwrap();
        assert_eq!(c.to_string(), "t*(t - 1)");
        let s = SquareClass::of_k(&rf(&[-3, 0, 2], &[5, 1]), Mode::Strict).unwrap();
        assert_eq!(s.to_string(), "2*(t + 5)*(t^2 - 3/2)");
    }
}

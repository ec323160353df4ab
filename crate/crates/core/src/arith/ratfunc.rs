//! Rational polynomials and the rational function field `K = Q(t)`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::field::{Field, IsZero, Rationals};
use super::poly::{Poly, PolyRing};

/// Polynomial with rational coefficients.
pub type QPoly = Poly<BigRational>;

/// Polynomial ring over the rationals.
pub fn qring() -> PolyRing<'static, Rationals> {
    PolyRing::new(&Rationals)
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

impl Poly<BigRational> {
    /// Build from small integer coefficients, lowest degree first.
    pub fn from_ints(c: &[i64]) -> Self {
        Poly::new(c.iter().map(|&n| rat(n)).collect())
    }

    pub fn constant_q(c: BigRational) -> Self {
        Poly::new(vec![c])
    }

    pub fn var() -> Self {
        Self::from_ints(&[0, 1])
    }

    pub fn is_constant(&self) -> bool {
        self.degree().unwrap_or(0) == 0
    }

    pub fn to_string_in(&self, var: &str) -> String {
        qring().fmt_poly(self, var)
    }
}

impl Add for &QPoly {
    type Output = QPoly;
    fn add(self, rhs: &QPoly) -> QPoly {
        qring().add(self, rhs)
    }
}

impl Sub for &QPoly {
    type Output = QPoly;
    fn sub(self, rhs: &QPoly) -> QPoly {
        qring().sub(self, rhs)
    }
}

impl Mul for &QPoly {
    type Output = QPoly;
    fn mul(self, rhs: &QPoly) -> QPoly {
        qring().mul(self, rhs)
    }
}

impl Neg for &QPoly {
    type Output = QPoly;
    fn neg(self) -> QPoly {
        qring().neg(self)
    }
}

/// Element of `K = Q(t)`: reduced fraction with monic denominator.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: QPoly,
    den: QPoly,
}

impl RationalFunction {
    /// Panics if `den` is zero.
    pub fn new(num: QPoly, den: QPoly) -> Self {
        assert!(!den.is_zero(), "rational function with zero denominator");
        let ring = qring();
        if num.is_zero() {
            return Self::zero();
        }
        let g = ring.gcd(&num, &den);
        let (mut num, mut den) = if g.degree() == Some(0) {
            (num, den)
        } else {
            (ring.exact_div(&num, &g), ring.exact_div(&den, &g))
        };
        let lc = den.lc().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.recip();
            num = ring.scale(&num, &inv);
            den = ring.scale(&den, &inv);
        }
        RationalFunction { num, den }
    }

    pub fn from_poly(p: QPoly) -> Self {
        RationalFunction {
            num: p,
            den: QPoly::from_ints(&[1]),
        }
    }

    pub fn constant(c: BigRational) -> Self {
        Self::from_poly(QPoly::constant_q(c))
    }

    pub fn from_int(n: i64) -> Self {
        Self::constant(rat(n))
    }

    pub fn zero() -> Self {
        Self::from_poly(QPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_int(1)
    }

    /// The variable `t`.
    pub fn t() -> Self {
        Self::from_poly(QPoly::var())
    }

    pub fn numer(&self) -> &QPoly {
        &self.num
    }

    pub fn denom(&self) -> &QPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.degree() == Some(0) && self.num == self.den
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn as_constant(&self) -> Option<BigRational> {
        if !self.is_constant() {
            return None;
        }
        Some(self.num.coeff(0).cloned().unwrap_or_else(BigRational::zero))
    }

    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(Self::new(self.den.clone(), self.num.clone()))
        }
    }

    pub fn powi(&self, e: i64) -> Self {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let ring = qring();
        let k = e.unsigned_abs();
        RationalFunction {
            num: ring.pow(&base.num, k),
            den: ring.pow(&base.den, k),
        }
    }

    /// Evaluate at a rational point; `None` at a pole.
    pub fn eval(&self, x: &BigRational) -> Option<BigRational> {
        let ring = qring();
        let d = ring.eval(&self.den, x);
        if d.is_zero() {
            None
        } else {
            Some(ring.eval(&self.num, x) / d)
        }
    }

    /// Substitute a rational function for `t`.
    pub fn compose(&self, s: &RationalFunction) -> RationalFunction {
        let eval = |p: &QPoly| {
            let mut acc = RationalFunction::zero();
            for c in p.coeffs().iter().rev() {
                acc = &(&acc * s) + &RationalFunction::constant(c.clone());
            }
            acc
        };
        &eval(&self.num) / &eval(&self.den)
    }

    /// Ordering key used for deterministic output: degree of numerator,
    /// degree of denominator, then coefficients from the constant term up.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        let ring = qring();
        ring.cmp_poly(&self.num, &other.num)
            .then_with(|| ring.cmp_poly(&self.den, &other.den))
    }

    pub fn to_string_in(&self, var: &str) -> String {
        let n = self.num.to_string_in(var);
        if self.den.degree() == Some(0) {
            return n;
        }
        let d = self.den.to_string_in(var);
        let n = if n.contains(' ') { format!("({n})") } else { n };
        let d = if d.contains([' ', '*', '/', '^']) {
            format!("({d})")
        } else {
            d
        };
        format!("{n}/{d}")
    }
}

impl Default for RationalFunction {
    fn default() -> Self {
        Self::zero()
    }
}

impl IsZero for RationalFunction {
    fn is_zero_value(&self) -> bool {
        self.num.is_zero()
    }
}

impl PartialOrd for RationalFunction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RationalFunction {
    fn cmp(&self, other: &Self) -> Ordering {
        self.canonical_cmp(other)
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("t"))
    }
}

impl From<QPoly> for RationalFunction {
    fn from(p: QPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::new(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::new(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        let ring = qring();
        // cross-cancel before multiplying to keep degrees down
        let g1 = ring.gcd(&self.num, &rhs.den);
        let g2 = ring.gcd(&rhs.num, &self.den);
        let n1 = ring.exact_div(&self.num, &g1);
        let d2 = ring.exact_div(&rhs.den, &g1);
        let n2 = ring.exact_div(&rhs.num, &g2);
        let d1 = ring.exact_div(&self.den, &g2);
        let num = &n1 * &n2;
        let den = &d1 * &d2;
        let lc = den.lc().unwrap().clone();
        if lc.is_one() {
            RationalFunction { num, den }
        } else {
            let inv = lc.recip();
            RationalFunction {
                num: ring.scale(&num, &inv),
                den: ring.scale(&den, &inv),
            }
        }
    }
}

impl Div for &RationalFunction {
    type Output = RationalFunction;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &RationalFunction) -> RationalFunction {
        self * &rhs.inv().expect("division by zero rational function")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for RationalFunction {
            type Output = RationalFunction;
            fn $m(self, rhs: RationalFunction) -> RationalFunction {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul, Div div);

/// The field `K = Q(t)` as a [`Field`] context.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FunctionField;

impl Field for FunctionField {
    type Elem = RationalFunction;

    fn zero(&self) -> RationalFunction {
        RationalFunction::zero()
    }
    fn one(&self) -> RationalFunction {
        RationalFunction::one()
    }
    fn add(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a + b
    }
    fn sub(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a - b
    }
    fn neg(&self, a: &RationalFunction) -> RationalFunction {
        -a
    }
    fn mul(&self, a: &RationalFunction, b: &RationalFunction) -> RationalFunction {
        a * b
    }
    fn inv(&self, a: &RationalFunction) -> Option<RationalFunction> {
        a.inv()
    }
    fn from_rational(&self, q: &BigRational) -> RationalFunction {
        RationalFunction::constant(q.clone())
    }
    fn cmp_elem(&self, a: &RationalFunction, b: &RationalFunction) -> Ordering {
        a.canonical_cmp(b)
    }
    fn fmt_elem(&self, a: &RationalFunction) -> String {
        a.to_string()
    }
    fn is_one(&self, a: &RationalFunction) -> bool {
        a.is_one()
    }
    fn as_rational(&self, a: &RationalFunction) -> Option<BigRational> {
        a.as_constant()
    }
}

/// Polynomials in `x` over `K`.
pub type KPoly = Poly<RationalFunction>;

pub fn kring() -> PolyRing<'static, FunctionField> {
    PolyRing::new(&FunctionField)
}

/// Primitive-in-`x` numerator of `a` and the common denominator cleared.
fn clear_denominators(a: &KPoly) -> (Vec<QPoly>, QPoly) {
    let ring = qring();
    let mut den = ring.one();
    for c in a.coeffs() {
        let g = ring.gcd(&den, c.denom());
        den = ring.mul(&den, &ring.exact_div(c.denom(), &g));
    }
    let num = a
        .coeffs()
        .iter()
        .map(|c| ring.exact_div(&ring.mul(c.numer(), &den), c.denom()))
        .collect();
    (num, den)
}

/// Newton interpolation through `(xs[i], ys[i])`.
fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> QPoly {
    let n = xs.len();
    let mut c = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            c[i] = (&c[i] - &c[i - 1]) / (&xs[i] - &xs[i - j]);
        }
    }
    let ring = qring();
    let mut p = QPoly::zero();
    for i in (0..n).rev() {
        p = ring.add(
            &ring.mul(&p, &ring.linear(&xs[i])),
            &QPoly::constant_q(c[i].clone()),
        );
    }
    p
}

/// `Res_x(a, b)` over `K`, by specializing `t` and interpolating. This
/// avoids the coefficient swell of a Euclidean remainder sequence in `K[x]`.
pub fn resultant_x(a: &KPoly, b: &KPoly) -> RationalFunction {
    let (Some(da), Some(db)) = (a.degree(), b.degree()) else {
        return RationalFunction::zero();
    };
    if da == 0 || db == 0 {
        return kring().resultant(a, b);
    }
    let (na, dena) = clear_denominators(a);
    let (nb, denb) = clear_denominators(b);
    let tdeg = |p: &[QPoly]| p.iter().filter_map(|c| c.degree()).max().unwrap_or(0);
    let bound = db * tdeg(&na) + da * tdeg(&nb);
    let ring = qring();
    let (mut xs, mut ys) = (Vec::new(), Vec::new());
    let mut k: i64 = 0;
    while xs.len() <= bound {
        // 0, 1, -1, 2, -2, ...
        let c =
            BigRational::from_integer(BigInt::from(if k % 2 == 1 { (k + 1) / 2 } else { -k / 2 }));
        k += 1;
        let at = |p: &[QPoly]| QPoly::new(p.iter().map(|q| ring.eval(q, &c)).collect());
        let (pa, pb) = (at(&na), at(&nb));
        if pa.degree() != Some(da) || pb.degree() != Some(db) {
            continue;
        }
        ys.push(ring.resultant(&pa, &pb));
        xs.push(c);
    }
    let num = interpolate(&xs, &ys);
    let den = ring.mul(&ring.pow(&dena, db as u64), &ring.pow(&denb, da as u64));
    RationalFunction::new(num, den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> QPoly {
        QPoly::from_ints(c)
    }

    #[test]
    fn normalizes_fraction() {
        // (2t^2 - 2) / (2t - 2) = t + 1
        let r = RationalFunction::new(p(&[-2, 0, 2]), p(&[-2, 2]));
        assert_eq!(r, RationalFunction::from_poly(p(&[1, 1])));
        assert!(r.denom().lc().unwrap().is_one());
    }

    #[test]
    fn field_ops_round_trip() {
        let a = RationalFunction::new(p(&[1, 1]), p(&[0, 0, 3]));
        let b = RationalFunction::new(p(&[-1, 2]), p(&[5, 1]));
        let s = &(&a + &b) - &b;
        assert_eq!(s, a);
        let q = &(&a * &b) / &b;
        assert_eq!(q, a);
        assert!((&a / &a).is_one());
    }

    #[test]
    fn display_forms() {
        let r = RationalFunction::new(p(&[0, 1]), p(&[-1, 1]));
        assert_eq!(r.to_string(), "t/(t - 1)");
        assert_eq!(
            RationalFunction::from_poly(p(&[1, -3, 1])).to_string(),
            "t^2 - 3*t + 1"
        );
        let half = RationalFunction::new(p(&[1]), p(&[0, 2]));
        assert_eq!(half.to_string(), "1/2/t");
    }

    #[test]
    fn resultant_by_interpolation() {
        let r = |n: &[i64], d: &[i64]| RationalFunction::new(p(n), p(d));
        let ring = kring();
        let a = KPoly::new(vec![
            r(&[0, -1], &[1]),
            r(&[1], &[1, 1]),
            r(&[], &[1]),
            r(&[], &[1]),
            r(&[2, 1], &[1]),
        ]);
        let b = KPoly::new(vec![
            r(&[3], &[0, 1]),
            r(&[0, 0, 1], &[1]),
            r(&[-1, 1], &[2]),
        ]);
        assert_eq!(resultant_x(&a, &b), ring.resultant(&a, &b));
        assert_eq!(resultant_x(&b, &a), ring.resultant(&b, &a));
        let da = ring.derivative(&a);
        assert_eq!(resultant_x(&a, &da), ring.resultant(&a, &da));
        // shared root x = t
        let c = ring.mul(&ring.linear(&RationalFunction::t()), &b);
        let e = ring.mul(&ring.linear(&RationalFunction::t()), &a);
        assert!(resultant_x(&c, &e).is_zero());
    }

    #[test]
    fn compose_substitutes() {
        // t^2 at t -> 1/t is 1/t^2
        let sq = RationalFunction::from_poly(p(&[0, 0, 1]));
        let inv_t = RationalFunction::t().inv().unwrap();
        assert_eq!(
            sq.compose(&inv_t),
            RationalFunction::new(p(&[1]), p(&[0, 0, 1]))
        );
    }
}

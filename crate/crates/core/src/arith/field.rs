//! Field contexts.
//!
//! Arithmetic is performed through a context object implementing [`Field`]
//! rather than through operator overloading on the elements, because the
//! elements of an algebraic extension only make sense together with the
//! modulus defining it. Towers such as `Q[u]/(pi)[x]/(g)` are built by
//! nesting [`ExtField`].

use std::cmp::Ordering;
use std::fmt::Debug;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{Poly, PolyRing};

/// Values that know whether they are zero without consulting a context.
pub trait IsZero {
    fn is_zero_value(&self) -> bool;
}

impl IsZero for BigRational {
    fn is_zero_value(&self) -> bool {
        self.is_zero()
    }
}

/// A field of characteristic zero. Elements are built through the field
/// value, as `k.from_int(3)`, since extension fields carry their modulus.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + PartialEq {
    type Elem: Clone + Debug + PartialEq + Eq + IsZero;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// `None` exactly when `a` is zero.
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    /// Image of a rational number.
    fn from_rational(&self, q: &BigRational) -> Self::Elem;
    /// A fixed total order used for deterministic output.
    fn cmp_elem(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering;
    fn fmt_elem(&self, a: &Self::Elem) -> String;

    fn is_zero(&self, a: &Self::Elem) -> bool {
        a.is_zero_value()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    fn from_int(&self, n: i64) -> Self::Elem {
        self.from_rational(&BigRational::from_integer(BigInt::from(n)))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// True when the element lies in the prime field, returning it.
    fn as_rational(&self, a: &Self::Elem) -> Option<BigRational>;
}

/// The rational numbers.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        if a.is_zero() {
            None
        } else {
            Some(a.recip())
        }
    }
    fn from_rational(&self, q: &BigRational) -> BigRational {
        q.clone()
    }
    /// By absolute value, negatives first: `0 < -1 < 1 < -2 < 2`.
    fn cmp_elem(&self, a: &BigRational, b: &BigRational) -> Ordering {
        a.abs().cmp(&b.abs()).then_with(|| a.cmp(b))
    }
    fn fmt_elem(&self, a: &BigRational) -> String {
        a.to_string()
    }
    fn as_rational(&self, a: &BigRational) -> Option<BigRational> {
        Some(a.clone())
    }
}

/// A simple algebraic extension `base[var]/(modulus)` with `modulus` monic
/// and irreducible over `base`. Elements are polynomials of degree below
/// `deg(modulus)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ExtField<F: Field> {
    base: F,
    modulus: Poly<F::Elem>,
    var: String,
}

impl<F: Field> ExtField<F> {
    /// The caller guarantees irreducibility; the modulus is made monic here.
    pub fn new(base: F, modulus: Poly<F::Elem>, var: impl Into<String>) -> Self {
        assert!(
            modulus.degree().unwrap_or(0) >= 1,
            "extension modulus must have positive degree"
        );
        let ring = PolyRing::new(&base);
        let modulus = ring.monic(&modulus);
        ExtField {
            base,
            modulus,
            var: var.into(),
        }
    }

    pub fn base(&self) -> &F {
        &self.base
    }

    pub fn modulus(&self) -> &Poly<F::Elem> {
        &self.modulus
    }

    pub fn var(&self) -> &str {
        &self.var
    }

    pub fn degree(&self) -> usize {
        self.modulus.degree().unwrap_or(0)
    }

    /// The class of the generator.
    pub fn generator(&self) -> Poly<F::Elem> {
        let ring = PolyRing::new(&self.base);
        ring.rem(&ring.x(), &self.modulus)
    }

    /// Embed an element of the base field.
    pub fn embed(&self, a: &F::Elem) -> Poly<F::Elem> {
        Poly::new(vec![a.clone()])
    }

    /// Reduce an arbitrary polynomial over the base modulo the modulus.
    pub fn reduce(&self, p: &Poly<F::Elem>) -> Poly<F::Elem> {
        PolyRing::new(&self.base).rem(p, &self.modulus)
    }

    /// `Some(c)` when the element is the image of a base field element.
    pub fn as_base(&self, a: &Poly<F::Elem>) -> Option<F::Elem> {
        match a.degree() {
            None => Some(self.base.zero()),
            Some(0) => Some(a.coeffs()[0].clone()),
            _ => None,
        }
    }
}

impl<F: Field> Field for ExtField<F> {
    type Elem = Poly<F::Elem>;

    fn zero(&self) -> Self::Elem {
        Poly::zero()
    }
    fn one(&self) -> Self::Elem {
        Poly::new(vec![self.base.one()])
    }
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        PolyRing::new(&self.base).add(a, b)
    }
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        PolyRing::new(&self.base).sub(a, b)
    }
    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        PolyRing::new(&self.base).neg(a)
    }
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let ring = PolyRing::new(&self.base);
        ring.rem(&ring.mul(a, b), &self.modulus)
    }
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem> {
        if a.is_zero() {
            return None;
        }
        let ring = PolyRing::new(&self.base);
        let (g, s, _) = ring.xgcd(a, &self.modulus);
        // modulus irreducible => g is a nonzero constant
        if g.degree() != Some(0) {
            return None;
        }
        let c = self.base.inv(&g.coeffs()[0])?;
        Some(ring.rem(&ring.scale(&s, &c), &self.modulus))
    }
    fn from_rational(&self, q: &BigRational) -> Self::Elem {
        Poly::new(vec![self.base.from_rational(q)])
    }
    fn cmp_elem(&self, a: &Self::Elem, b: &Self::Elem) -> Ordering {
        PolyRing::new(&self.base).cmp_poly(a, b)
    }
    fn fmt_elem(&self, a: &Self::Elem) -> String {
        PolyRing::new(&self.base).fmt_poly(a, &self.var)
    }
    fn as_rational(&self, a: &Self::Elem) -> Option<BigRational> {
        self.as_base(a).and_then(|c| self.base.as_rational(&c))
    }
}

/// `Q[u]/(modulus)`.
pub type NumberField = ExtField<Rationals>;
/// Elements of a [`NumberField`].
pub type NumberFieldElement = Poly<BigRational>;

impl ExtField<Rationals> {
    /// Number field defined by a monic irreducible rational polynomial.
    pub fn number_field(modulus: Poly<BigRational>, var: impl Into<String>) -> Self {
        ExtField::new(Rationals, modulus, var)
    }
}

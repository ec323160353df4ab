//! Classes in `ker(N: L^x/L^x2 K^x -> K^x/K^x2)`, their normalized
//! representatives, and the `x - A` map on divisors.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::ratfunc::{kring, qring, QPoly, RationalFunction};
use crate::arith::sqclass::{is_square_in_k, Mode, SquareClass};
use crate::error::{invalid, Error, Result};

use super::algebra::{EtaleAlgebra, EtaleElement};

/// A normalized representative of a class of `L^x / L^x2 K^x`.
///
/// The certificate records how it was obtained from the input `l`:
/// `rep = l * scale * root^2`, exactly in strict mode and up to a nonzero
/// constant in each component in geometric mode.
#[derive(Clone, Debug)]
pub struct KernelClass {
    rep: EtaleElement,
    mode: Mode,
    scale: RationalFunction,
    root: EtaleElement,
}

impl KernelClass {
    pub fn rep(&self) -> &EtaleElement {
        &self.rep
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn scale(&self) -> &RationalFunction {
        &self.scale
    }

    pub fn root(&self) -> &EtaleElement {
        &self.root
    }

    /// The identity class, in split form when `L` is split.
    pub fn identity(alg: &EtaleAlgebra, mode: Mode) -> Self {
        let one = if alg.is_split() {
            EtaleElement::Split(std::array::from_fn(|_| RationalFunction::one()))
        } else {
            EtaleElement::one()
        };
        KernelClass {
            rep: one.clone(),
            mode,
            scale: RationalFunction::one(),
            root: one,
        }
    }

    pub fn is_identity(&self) -> bool {
        self.rep.components().iter().all(|c| c.is_one())
            || matches!(&self.rep, EtaleElement::General(c) if c[0].is_one() && c[1..].iter().all(|x| x.is_zero()))
    }
}

impl PartialEq for KernelClass {
    fn eq(&self, other: &Self) -> bool {
        self.mode == other.mode && self.rep == other.rep
    }
}

impl Eq for KernelClass {}

impl PartialOrd for KernelClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Split before general, then component-wise canonical order.
impl Ord for KernelClass {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .rep
            .is_split()
            .cmp(&self.rep.is_split())
            .then_with(|| {
                for (a, b) in self.rep.components().iter().zip(other.rep.components()) {
                    let o = a.cmp(b);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            })
    }
}

impl fmt::Display for KernelClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

/// Normalize a representative without testing the norm condition.
///
/// Split form: divide by `d_1`, then replace every coordinate by the
/// canonical representative of its class in `K^x/K^x2`. General form:
/// clear denominators and divide by the content, leaving coprime integral
/// polynomial coefficients with positive leading coefficient.
pub fn normalize(alg: &EtaleAlgebra, l: &EtaleElement, mode: Mode) -> Result<KernelClass> {
    alg.norm(l)?;
    match l {
        EtaleElement::Split(d) => {
            let scale = d[0].inv().ok_or(Error::ZeroDivisor)?;
            let mut rep: [RationalFunction; 4] = Default::default();
            let mut root: [RationalFunction; 4] = Default::default();
            for i in 0..4 {
                let e = &d[i] * &scale;
                let r = SquareClass::of_k(&e, mode)?.k_representative().unwrap();
                let (ok, w) = is_square_in_k(&(&r / &e), Mode::Geometric)?;
                debug_assert!(ok);
                rep[i] = r;
                root[i] = w.unwrap();
            }
            Ok(KernelClass {
                rep: EtaleElement::Split(rep),
                mode,
                scale,
                root: EtaleElement::Split(root),
            })
        }
        EtaleElement::General(c) => {
            let ring = qring();
            let mut den = ring.one();
            for x in c.iter().filter(|x| !x.is_zero()) {
                let g = ring.gcd(&den, x.denom());
                den = ring.mul(&den, &ring.exact_div(x.denom(), &g));
            }
            let polys: Vec<QPoly> = c
                .iter()
                .map(|x| ring.exact_div(&ring.mul(x.numer(), &den), x.denom()))
                .collect();
            let mut g = QPoly::zero();
            for p in &polys {
                g = ring.gcd(&g, p);
            }
            let polys: Vec<QPoly> = polys.iter().map(|p| ring.exact_div(p, &g)).collect();
            let content = integer_content(&polys);
            let scale = RationalFunction::new(ring.scale(&den, &content.recip()), g);
            let rep: Vec<RationalFunction> = c.iter().map(|x| x * &scale).collect();
            Ok(KernelClass {
                rep: EtaleElement::general(&rep)?,
                mode,
                scale,
                root: EtaleElement::one(),
            })
        }
    }
}

/// Positive rational `c` with `polys / c` primitive integral, signed so that
/// the leading coefficient of the last nonzero polynomial becomes positive.
fn integer_content(polys: &[QPoly]) -> BigRational {
    let mut num = BigInt::zero();
    let mut den = BigInt::one();
    for p in polys {
        for c in p.coeffs() {
            num = num.gcd(c.numer());
            den = den.lcm(c.denom());
        }
    }
    let mut c = BigRational::new(num, den);
    if let Some(p) = polys.iter().rev().find(|p| !p.is_zero()) {
        if p.lc().unwrap().is_negative() {
            c = -c;
        }
    }
    c
}

/// Outcome of the kernel-of-norm test.
#[derive(Clone, Debug)]
#[allow(clippy::large_enum_variant)]
pub enum KernelTest {
    InKernel(KernelClass),
    /// The class of the norm in `K^x/K^x2`, which is not trivial.
    NotInKernel(SquareClass),
}

impl KernelTest {
    pub fn is_in_kernel(&self) -> bool {
        matches!(self, KernelTest::InKernel(_))
    }
}

/// True iff `N(l)` is a square in `K` in the given mode.
pub fn in_kernel_of_norm(alg: &EtaleAlgebra, l: &EtaleElement, mode: Mode) -> Result<KernelTest> {
    let n = alg.norm(l)?;
    let class = SquareClass::of_k(&n, mode)?;
    if class.is_identity() {
        Ok(KernelTest::InKernel(normalize(alg, l, mode)?))
    } else {
        Ok(KernelTest::NotInKernel(class))
    }
}

/// A formal sum of affine points `(x0, y0)` of `y^2 = f(x)` over `K`.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct AffineDivisor {
    points: Vec<(RationalFunction, RationalFunction, i64)>,
}

impl AffineDivisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(mut self, x0: RationalFunction, y0: RationalFunction, n: i64) -> Self {
        self.points.push((x0, y0, n));
        self
    }

    pub fn points(&self) -> &[(RationalFunction, RationalFunction, i64)] {
        &self.points
    }

    pub fn degree(&self) -> i64 {
        self.points.iter().map(|p| p.2).sum()
    }
}

/// The class of `prod (x0 - A)^n` in `L^x / L^x2 K^x`.
///
/// Points must avoid `y = 0`. In strict mode `y0^2 = f(x0)` is required;
/// in geometric mode `f(x0) / y0^2` may be any nonzero constant, since
/// constants are squares there.
pub fn x_minus_alpha(alg: &EtaleAlgebra, d: &AffineDivisor, mode: Mode) -> Result<KernelClass> {
    let ring = kring();
    if d.degree() % 2 != 0 {
        return Err(Error::InvalidDivisor(
            "multiplicities must sum to an even number".into(),
        ));
    }
    let mut exps: BTreeMap<RationalFunction, i64> = BTreeMap::new();
    for (x0, y0, n) in d.points() {
        if y0.is_zero() {
            return Err(Error::InvalidDivisor(format!(
                "point ({x0}, 0) lies on y = 0"
            )));
        }
        let fx = ring.eval(alg.f(), x0);
        let ratio = &fx / &(y0 * y0);
        let on_curve = match mode {
            Mode::Strict => ratio.is_one(),
            Mode::Geometric => ratio.is_constant() && !ratio.is_zero(),
        };
        if !on_curve {
            return Err(Error::InvalidDivisor(format!(
                "({x0}, {y0}) is not on the curve"
            )));
        }
        *exps.entry(x0.clone()).or_insert(0) += n;
    }
    let mut l = EtaleElement::one();
    for (x0, n) in exps {
        if n.rem_euclid(2) == 1 {
            let lin = EtaleElement::general(&[x0, -&RationalFunction::one()])?;
            l = alg.mul(&l, &lin)?;
        }
    }
    if alg.is_split() {
        l = alg.to_split(&l)?;
    }
    match in_kernel_of_norm(alg, &l, mode)? {
        KernelTest::InKernel(k) => Ok(k),
        KernelTest::NotInKernel(c) => Err(invalid(format!(
            "image has norm class {c}: the leading coefficient of f is not a square"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::poly::Poly;
    use crate::arith::ratfunc::{ratio, KPoly};

    fn rf(n: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(QPoly::from_ints(n))
    }

    fn split_quartic() -> KPoly {
        let ring = kring();
        [&[0i64][..], &[1], &[0, 1], &[1, 1]]
            .iter()
            .map(|c| ring.linear(&rf(c)))
            .fold(ring.one(), |a, b| ring.mul(&a, &b))
    }

    fn x4_minus_t() -> EtaleAlgebra {
        EtaleAlgebra::new(Poly::new(vec![
            rf(&[0, -1]),
            rf(&[]),
            rf(&[]),
            rf(&[]),
            rf(&[1]),
        ]))
        .unwrap()
    }

    #[test]
    fn kernel_examples() {
        let alg = EtaleAlgebra::new(split_quartic()).unwrap();
        let t = rf(&[0, 1]);
        let one = rf(&[1]);
        let e = EtaleElement::split([t.clone(), t.clone(), one.clone(), one.clone()]);
        match in_kernel_of_norm(&alg, &e, Mode::Geometric).unwrap() {
            KernelTest::InKernel(k) => assert_eq!(k.to_string(), "(1; 1; t; t)"),
            _ => panic!(),
        }
        let e = EtaleElement::split([t.clone(), one.clone(), one.clone(), one.clone()]);
        match in_kernel_of_norm(&alg, &e, Mode::Geometric).unwrap() {
            KernelTest::NotInKernel(c) => assert_eq!(c.to_string(), "t"),
            _ => panic!(),
        }
        let a2 = EtaleElement::general(&[rf(&[]), rf(&[]), rf(&[1])]).unwrap();
        assert!(in_kernel_of_norm(&x4_minus_t(), &a2, Mode::Strict)
            .unwrap()
            .is_in_kernel());
    }

    #[test]
    fn x_minus_alpha_two_points() {
        // f = x^4 + t x (x - 1) + 1 with f(0) = 1 and f(1) = 2
        let f = Poly::new(vec![rf(&[1]), rf(&[0, -1]), rf(&[0, 1]), rf(&[]), rf(&[1])]);
        let alg = EtaleAlgebra::new(f).unwrap();
        let d = AffineDivisor::new()
            .add(rf(&[]), rf(&[1]), 1)
            .add(rf(&[1]), rf(&[1]), -1);
        assert!(x_minus_alpha(&alg, &d, Mode::Strict).is_err());
        let k = x_minus_alpha(&alg, &d, Mode::Geometric).unwrap();
        assert_eq!(k.to_string(), "-A + A^2");
        assert!(in_kernel_of_norm(&alg, k.rep(), Mode::Geometric)
            .unwrap()
            .is_in_kernel());
    }

    #[test]
    fn general_normalization_clears_denominators() {
        let alg = x4_minus_t();
        let half = RationalFunction::constant(ratio(1, 2));
        let c0 = &rf(&[0, 2]) / &rf(&[1, 1]);
        let e = EtaleElement::general(&[c0, half]).unwrap();
        let k = normalize(&alg, &e, Mode::Geometric).unwrap();
        assert_eq!(k.to_string(), "4*t + (t + 1)*A");
        assert_eq!(alg.scale(&e, k.scale()), *k.rep());
    }

    #[test]
    fn x_minus_alpha_examples() {
        let alg = EtaleAlgebra::new(split_quartic()).unwrap();
        // x0 = (t+1)/2, y0 = (t^2 - 1)/4 lies on x(x-1)(x-t)(x-t-1)
        let x0 = RationalFunction::new(QPoly::from_ints(&[1, 1]), QPoly::from_ints(&[2]));
        let y0 = RationalFunction::new(QPoly::from_ints(&[-1, 0, 1]), QPoly::from_ints(&[4]));
        let d = AffineDivisor::new()
            .add(x0.clone(), y0.clone(), 1)
            .add(x0.clone(), -&y0, -1);
        assert!(x_minus_alpha(&alg, &d, Mode::Strict).unwrap().is_identity());
        let d = AffineDivisor::new().add(x0.clone(), y0.clone(), 2);
        assert!(x_minus_alpha(&alg, &d, Mode::Strict).unwrap().is_identity());
        let x1 = rf(&[2, 1]);
        let y1 = rf(&[0, 1, 1]);
        assert!(matches!(
            x_minus_alpha(
                &alg,
                &AffineDivisor::new().add(x0, rf(&[]), 2),
                Mode::Geometric
            ),
            Err(Error::InvalidDivisor(_))
        ));
        assert!(matches!(
            x_minus_alpha(&alg, &AffineDivisor::new().add(x1, y1, 2), Mode::Strict),
            Err(Error::InvalidDivisor(_))
        ));
    }
}

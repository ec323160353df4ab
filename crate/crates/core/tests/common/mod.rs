//! Seeded generators shared by the acceptance and property suites.
#![allow(dead_code)]

use brauer2_core::arith::{kring, KPoly, QPoly, RationalFunction};
use brauer2_core::etale::{EtaleAlgebra, EtaleElement};
use brauer2_core::places::Place;
use brauer2_core::surface::Surface;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn rf(n: &[i64]) -> RationalFunction {
    RationalFunction::from_poly(QPoly::from_ints(n))
}

pub fn q(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn with_roots(lc: &RationalFunction, roots: &[RationalFunction]) -> KPoly {
    let ring = kring();
    roots
        .iter()
        .map(|a| ring.linear(a))
        .fold(ring.constant(lc.clone()), |a, b| ring.mul(&a, &b))
}

/// `x (x - 1) (x - t) (x - t - 1)`.
pub fn main_surface() -> Surface {
    Surface::new(with_roots(
        &rf(&[1]),
        &[rf(&[]), rf(&[1]), rf(&[0, 1]), rf(&[1, 1])],
    ))
    .unwrap()
}

/// Three split surfaces, the first being [`main_surface`].
pub fn split_surfaces() -> Vec<Surface> {
    vec![
        main_surface(),
        Surface::new(with_roots(
            &rf(&[-1, 1]),
            &[rf(&[]), rf(&[0, 1]), rf(&[0, 2]), rf(&[0, 3])],
        ))
        .unwrap(),
        Surface::new(with_roots(
            &rf(&[1]),
            &[rf(&[1]), rf(&[-1]), rf(&[0, 1]), rf(&[0, 0, 1])],
        ))
        .unwrap(),
    ]
}

/// Non-split surfaces.
pub fn quartic_surfaces() -> Vec<Surface> {
    let ring = kring();
    let x4_minus_t = KPoly::new(vec![rf(&[0, -1]), rf(&[]), rf(&[]), rf(&[]), rf(&[1])]);
    // x^4 + t x + 1
    let trinomial = KPoly::new(vec![rf(&[1]), rf(&[0, 1]), rf(&[]), rf(&[]), rf(&[1])]);
    // (x^2 - t)(x^2 + x + 1)
    let product = ring.mul(
        &KPoly::new(vec![rf(&[0, -1]), rf(&[]), rf(&[1])]),
        &KPoly::new(vec![rf(&[1]), rf(&[1]), rf(&[1])]),
    );
    [x4_minus_t, trinomial, product]
        .into_iter()
        .map(|f| Surface::new(f).unwrap())
        .collect()
}

pub fn small_int(rng: &mut ChaCha8Rng, h: i64) -> i64 {
    rng.gen_range(-h..=h)
}

pub fn nonzero_int(rng: &mut ChaCha8Rng, h: i64) -> i64 {
    loop {
        let n = small_int(rng, h);
        if n != 0 {
            return n;
        }
    }
}

/// Random polynomial of degree exactly `deg` with coefficients in `[-h, h]`.
pub fn poly_of_degree(rng: &mut ChaCha8Rng, deg: usize, h: i64) -> QPoly {
    let mut c: Vec<i64> = (0..deg).map(|_| small_int(rng, h)).collect();
    c.push(nonzero_int(rng, h));
    QPoly::from_ints(&c)
}

/// A small random polynomial: a constant times up to `factors` factors of
/// degree 1 or 2.
pub fn small_poly(rng: &mut ChaCha8Rng, factors: usize) -> QPoly {
    let ring = brauer2_core::arith::qring();
    let mut p = QPoly::from_ints(&[nonzero_int(rng, 3)]);
    for _ in 0..rng.gen_range(0..=factors) {
        let d = if rng.gen_bool(0.8) { 1 } else { 2 };
        p = ring.mul(&p, &poly_of_degree(rng, d, 3));
    }
    p
}

pub fn small_rf(rng: &mut ChaCha8Rng, factors: usize) -> RationalFunction {
    let num = small_poly(rng, factors);
    let den = if rng.gen_bool(0.3) {
        small_poly(rng, 1)
    } else {
        QPoly::from_ints(&[1])
    };
    RationalFunction::new(num, den)
}

/// Random `(d1, d2, d3, d1 d2 d3 s^2)`, whose norm is a square.
pub fn split_kernel_element(rng: &mut ChaCha8Rng) -> EtaleElement {
    let d1 = small_rf(rng, 2);
    let d2 = small_rf(rng, 2);
    let d3 = small_rf(rng, 2);
    let s = small_rf(rng, 1);
    let d4 = &(&(&d1 * &d2) * &d3) * &(&s * &s);
    EtaleElement::split([d1, d2, d3, d4])
}

pub fn split_unit(rng: &mut ChaCha8Rng) -> EtaleElement {
    EtaleElement::split(std::array::from_fn(|_| small_rf(rng, 1)))
}

/// A random invertible element in general form.
pub fn general_unit(rng: &mut ChaCha8Rng, alg: &EtaleAlgebra) -> EtaleElement {
    loop {
        let deg = rng.gen_range(0..=3usize);
        let coeffs: Vec<RationalFunction> = (0..=deg)
            .map(|_| {
                if rng.gen_bool(0.4) {
                    RationalFunction::zero()
                } else {
                    {
                        let d = rng.gen_range(0..=1);
                        RationalFunction::from_poly(poly_of_degree(rng, d, 3))
                    }
                }
            })
            .collect();
        let e = EtaleElement::general(&coeffs).unwrap();
        if !e.is_zero() && alg.norm(&e).is_ok() {
            return e;
        }
    }
}

/// A random place of degree 1 or 2.
pub fn random_place(rng: &mut ChaCha8Rng) -> Place {
    loop {
        let d = if rng.gen_bool(0.7) { 1 } else { 2 };
        if let Ok(p) = Place::finite(&poly_of_degree(rng, d, 6)) {
            return p;
        }
    }
}

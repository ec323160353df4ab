//! Enumeration of the finite group `(ker N)_{S-unr}`.

use crate::arith::ratfunc::{qring, RationalFunction};
use crate::arith::sqclass::Mode;
use crate::error::{Error, Result};
use crate::surface::Surface;

use super::algebra::EtaleElement;
use super::kernel::{normalize, KernelClass};

/// All classes of `(ker N)_{S-unr}`, sorted.
///
/// Implemented for split `f` in geometric mode: the classes are the tuples
/// `(1, r2, r3, r4)` with each `r_i` a product of distinct finite places of
/// `S` and `r2 r3 r4` a square, so there are `2^(2m)` of them for `m`
/// finite places in `S`.
pub fn enumerate_unramified_kernel(surface: &Surface) -> Result<Vec<KernelClass>> {
    if surface.mode() == Mode::Strict {
        return Err(Error::UnsupportedGeometry(
            "enumeration is only available in geometric mode".into(),
        ));
    }
    let alg = surface.algebra();
    if !alg.is_split() {
        return Err(Error::UnsupportedGeometry(
            "f does not split over K and no rational parametrization of Z is available".into(),
        ));
    }
    let gens: Vec<RationalFunction> = surface
        .bad_places()
        .finite()
        .map(|p| RationalFunction::from_poly(p.clone()))
        .collect();
    let m = gens.len();
    if m > 12 {
        return Err(Error::InvalidArgument(format!(
            "{m} finite bad places would give 2^{} classes",
            2 * m
        )));
    }
    let product = |mask: usize| -> RationalFunction {
        let ring = qring();
        let mut acc = ring.one();
        for (i, g) in gens.iter().enumerate() {
            if mask >> i & 1 == 1 {
                acc = ring.mul(&acc, g.numer());
            }
        }
        RationalFunction::from_poly(acc)
    };
    let mut out = Vec::with_capacity(1 << (2 * m));
    for a in 0..(1usize << m) {
        for b in 0..(1usize << m) {
            let e = EtaleElement::Split([
                RationalFunction::one(),
                product(a),
                product(b),
                product(a ^ b),
            ]);
            out.push(normalize(alg, &e, surface.mode())?);
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

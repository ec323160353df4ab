//! Valuations of elements of `L` along the points of `Z` above a place and
//! the S-unramified test.

use std::fmt;

use crate::error::{Error, Result};
use crate::places::{
    local_splitting, match_root, support, valuation_at, valuation_of_poly_at_point, LocalPoint,
    Place, INITIAL_PRECISION,
};
use crate::surface::Surface;

use super::algebra::{EtaleAlgebra, EtaleElement};
use super::kernel::KernelClass;

/// `v_P(l)` for a point `P` of `Z` above a good place.
pub fn valuation_of_ell_at_point(
    alg: &EtaleAlgebra,
    l: &EtaleElement,
    p: &LocalPoint,
    cap: usize,
) -> Result<i64> {
    alg.norm(l)?;
    match l {
        EtaleElement::General(c) => valuation_of_poly_at_point(c, p, cap),
        EtaleElement::Split(d) => {
            let roots = alg.roots().ok_or(Error::NotSplit)?;
            let i = match_root(roots, p)?.ok_or_else(|| Error::BadReduction {
                place: p.place().to_string(),
                reason: "no root of f reduces to this point".into(),
            })?;
            valuation_at(&d[i], p.place())
        }
    }
}

/// The points above `place` with the valuation of `l` at each.
pub fn valuations_above(
    surface: &Surface,
    l: &EtaleElement,
    place: &Place,
) -> Result<Vec<(LocalPoint, i64)>> {
    if surface.bad_places().contains(place) {
        return Err(Error::BadPlace {
            place: place.to_string(),
        });
    }
    let cap = surface.precision_cap();
    let points = local_splitting(surface.f(), place, INITIAL_PRECISION.min(cap))?;
    points
        .into_iter()
        .map(|p| {
            let v = valuation_of_ell_at_point(surface.algebra(), l, &p, cap)?;
            Ok((p, v))
        })
        .collect()
}

/// Finite places outside `S` where some `v_P(l)` can be nonzero: poles of
/// the coefficients and zeros of the norm (general form), or zeros and
/// poles of the coordinates (split form).
pub fn candidate_places(surface: &Surface, l: &EtaleElement) -> Result<Vec<Place>> {
    let mut out = Vec::new();
    match l {
        EtaleElement::General(c) => {
            for x in c.iter().filter(|x| !x.is_zero()) {
                out.extend(support(
                    &crate::arith::ratfunc::RationalFunction::from_poly(x.denom().clone()),
                ));
            }
            out.extend(support(&surface.algebra().norm(l)?));
        }
        EtaleElement::Split(d) => {
            for x in d {
                if x.is_zero() {
                    return Err(Error::ZeroDivisor);
                }
                out.extend(support(x));
            }
        }
    }
    out.sort();
    out.dedup();
    out.retain(|p| !surface.bad_places().contains(p));
    Ok(out)
}

/// Two points above a good place where `l` has valuations of different
/// parity.
#[derive(Clone, Debug)]
pub struct RamificationWitness {
    pub place: Place,
    /// Every point above the place with `v_P(l)`.
    pub valuations: Vec<(String, i64)>,
    pub p: usize,
    pub q: usize,
}

impl fmt::Display for RamificationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vals: Vec<String> = self
            .valuations
            .iter()
            .map(|(p, v)| format!("{p}:{v}"))
            .collect();
        write!(f, "{} parities differ [{}]", self.place, vals.join(", "))
    }
}

#[derive(Clone, Debug)]
pub enum UnramifiedVerdict {
    /// All candidate places were checked.
    Unramified {
        checked: Vec<Place>,
    },
    Ramified(RamificationWitness),
}

impl UnramifiedVerdict {
    pub fn is_unramified(&self) -> bool {
        matches!(self, UnramifiedVerdict::Unramified { .. })
    }
}

/// Parity comparison at one place; `Some(witness)` when ramified.
pub fn parity_check(
    surface: &Surface,
    l: &EtaleElement,
    place: &Place,
) -> Result<Option<RamificationWitness>> {
    let vals = valuations_above(surface, l, place)?;
    let first = vals[0].1.rem_euclid(2);
    if let Some(q) = vals.iter().position(|(_, v)| v.rem_euclid(2) != first) {
        return Ok(Some(RamificationWitness {
            place: place.clone(),
            valuations: vals.iter().map(|(p, v)| (p.to_string(), *v)).collect(),
            p: 0,
            q,
        }));
    }
    Ok(None)
}

/// At every finite place outside `S`, the valuations of `l` at all points
/// of `Z` above it share one parity.
pub fn is_s_unramified(surface: &Surface, l: &KernelClass) -> Result<UnramifiedVerdict> {
    let rep = l.rep();
    let places = candidate_places(surface, rep)?;
    for place in &places {
        if let Some(w) = parity_check(surface, rep, place)? {
            return Ok(UnramifiedVerdict::Ramified(w));
        }
    }
    Ok(UnramifiedVerdict::Unramified { checked: places })
}

//! The formal class `h(l)` and the necessary-condition filter for `Br X`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::RwLock;

use rayon::prelude::*;

use crate::arith::sqclass::SquareClass;
use crate::error::{Error, Result};
use crate::etale::{
    in_kernel_of_norm, is_s_unramified, KernelClass, RamificationWitness, UnramifiedVerdict,
};
use crate::places::Place;
use crate::surface::Surface;

use super::residue::{
    fiber_at, is_square_in_fiber_field, verify_in_Br_C, vertical_residue_of_h, CertificatePlace,
    ResidueCertificate,
};

/// `h(l) = Cor((l, x - A)_2)`, kept formal; vertical residues are computed
/// on demand and cached per place.
pub struct CorClass<'a> {
    surface: &'a Surface,
    class: KernelClass,
    cache: RwLock<BTreeMap<Place, SquareClass>>,
}

impl<'a> CorClass<'a> {
    pub fn new(surface: &'a Surface, class: KernelClass) -> Result<Self> {
        if !in_kernel_of_norm(surface.algebra(), class.rep(), class.mode())?.is_in_kernel() {
            return Err(Error::InvalidArgument(format!(
                "{class} is not in the kernel of the norm"
            )));
        }
        Ok(CorClass {
            surface,
            class,
            cache: RwLock::new(BTreeMap::new()),
        })
    }

    pub fn class(&self) -> &KernelClass {
        &self.class
    }

    /// Residue along the fiber above a good place.
    pub fn vertical_residue(&self, t0: &Place) -> Result<SquareClass> {
        if let Some(c) = self.cache.read().expect("cache lock").get(t0) {
            return Ok(c.clone());
        }
        let c = vertical_residue_of_h(self.surface, &self.class, t0)?;
        // a racing writer computed the same class
        self.cache
            .write()
            .expect("cache lock")
            .entry(t0.clone())
            .or_insert_with(|| c.clone());
        Ok(c)
    }

    pub fn vertical_profile(&self, places: &[Place]) -> Result<ResidueCertificate> {
        let entries = places
            .iter()
            .map(|p| {
                Ok((
                    CertificatePlace::Vertical(p.clone()),
                    self.vertical_residue(p)?,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ResidueCertificate::new(entries))
    }

    pub fn horizontal_audit(&self) -> Result<ResidueCertificate> {
        verify_in_Br_C(self.surface.algebra(), &self.class)
    }
}

/// Proof that `h(l)` is not in `Br X`: a good place whose fiber carries a
/// nontrivial residue.
#[derive(Clone, Debug)]
pub struct FailCertificate {
    pub place: Place,
    pub residue: SquareClass,
    pub witness: RamificationWitness,
}

impl FailCertificate {
    /// Recompute the residue and confirm it is not a square on the fiber.
    pub fn recheck(&self, surface: &Surface, l: &KernelClass) -> Result<bool> {
        let r = vertical_residue_of_h(surface, l, &self.place)?;
        let SquareClass::Fiber { constant, odd, .. } = &r else {
            return Ok(false);
        };
        let fiber = fiber_at(surface, &self.place)?;
        let g = crate::arith::poly::PolyRing::new(fiber.kappa()).scale(odd, constant);
        Ok(r == self.residue && !is_square_in_fiber_field(&g, &fiber, surface.mode())?)
    }
}

impl fmt::Display for FailCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "residue {} at {}; {}",
            self.residue, self.place, self.witness
        )
    }
}

#[derive(Clone, Debug)]
pub enum FilterVerdict {
    /// S-unramified: the necessary condition for `h(l)` in `Br X` holds.
    Pass {
        checked: Vec<Place>,
    },
    Fail(FailCertificate),
}

impl FilterVerdict {
    pub fn is_pass(&self) -> bool {
        matches!(self, FilterVerdict::Pass { .. })
    }
}

#[derive(Clone, Debug)]
pub struct FilterRow {
    pub class: KernelClass,
    pub outcome: Result<FilterVerdict>,
}

/// One row per candidate, in input order.
#[derive(Clone, Debug, Default)]
pub struct FilterReport {
    pub rows: Vec<FilterRow>,
}

impl FilterReport {
    pub fn passed(&self) -> impl Iterator<Item = &KernelClass> {
        self.rows
            .iter()
            .filter(|r| matches!(&r.outcome, Ok(v) if v.is_pass()))
            .map(|r| &r.class)
    }

    pub fn failed(&self) -> impl Iterator<Item = (&KernelClass, &FailCertificate)> {
        self.rows.iter().filter_map(|r| match &r.outcome {
            Ok(FilterVerdict::Fail(c)) => Some((&r.class, c)),
            _ => None,
        })
    }

    pub fn errors(&self) -> impl Iterator<Item = (&KernelClass, &Error)> {
        self.rows
            .iter()
            .filter_map(|r| r.outcome.as_ref().err().map(|e| (&r.class, e)))
    }
}

/// Verdict for one candidate.
pub fn filter_one(surface: &Surface, l: &KernelClass) -> Result<FilterVerdict> {
    match is_s_unramified(surface, l)? {
        UnramifiedVerdict::Unramified { checked } => Ok(FilterVerdict::Pass { checked }),
        UnramifiedVerdict::Ramified(witness) => {
            let residue = vertical_residue_of_h(surface, l, &witness.place)?;
            if residue.is_identity() {
                return Err(Error::IndeterminateResidue(format!(
                    "parities differ at {} but the residue is trivial",
                    witness.place
                )));
            }
            Ok(FilterVerdict::Fail(FailCertificate {
                place: witness.place.clone(),
                residue,
                witness,
            }))
        }
    }
}

/// Split candidates into those satisfying the necessary condition for
/// `h(l)` in `Br X` and those refuted by a vertical residue. Errors are
/// recorded per candidate.
pub fn br_x_filter(surface: &Surface, candidates: &[KernelClass]) -> FilterReport {
    let rows = candidates
        .par_iter()
        .map(|l| FilterRow {
            class: l.clone(),
            outcome: filter_one(surface, l),
        })
        .collect();
    FilterReport { rows }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratfunc::{kring, QPoly, RationalFunction};
    use crate::etale::{enumerate_unramified_kernel, normalize, EtaleElement};

    fn rf(n: &[i64]) -> RationalFunction {
        RationalFunction::from_poly(QPoly::from_ints(n))
    }

    fn split_surface() -> Surface {
        let ring = kring();
        let f = [&[0i64][..], &[1], &[0, 1], &[1, 1]]
            .iter()
            .map(|c| ring.linear(&rf(c)))
            .fold(ring.one(), |a, b| ring.mul(&a, &b));
        Surface::new(f).unwrap()
    }

    #[test]
    fn enumeration_passes_and_planted_class_fails() {
        let s = split_surface();
        let mut cands = enumerate_unramified_kernel(&s).unwrap();
        assert_eq!(cands.len(), 64);
        let e = EtaleElement::split([rf(&[-2, 1]), rf(&[-2, 1]), rf(&[1]), rf(&[1])]);
        let planted = normalize(s.algebra(), &e, s.mode()).unwrap();
        cands.push(planted.clone());
        let report = br_x_filter(&s, &cands);
        assert_eq!(report.passed().count(), 64);
        let fails: Vec<_> = report.failed().collect();
        assert_eq!(fails.len(), 1);
        let (l, cert) = fails[0];
        assert_eq!(l, &planted);
        assert_eq!(cert.place, Place::at_int(2));
        assert_eq!(cert.residue.to_string(), "x*(x - 1)");
        assert!(cert.recheck(&s, l).unwrap());
        assert!(br_x_filter(&s, &[]).rows.is_empty());
    }

    #[test]
    fn cached_residues_are_stable() {
        let s = split_surface();
        let e = EtaleElement::split([rf(&[-2, 1]), rf(&[-2, 1]), rf(&[1]), rf(&[1])]);
        let h = CorClass::new(&s, normalize(s.algebra(), &e, s.mode()).unwrap()).unwrap();
        let places = [Place::at_int(2), Place::at_int(7)];
        let first = h.vertical_profile(&places).unwrap();
        assert_eq!(first, h.vertical_profile(&places).unwrap());
        assert!(!first.is_unramified());
        assert!(h.horizontal_audit().unwrap().is_unramified());
    }
}

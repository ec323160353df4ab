//! A genus-one fibration `y^2 = f(x, t)` together with its bad set and the
//! arithmetic conventions used to study it.

use crate::arith::ratfunc::KPoly;
use crate::arith::sqclass::Mode;
use crate::error::{Error, Result};
use crate::etale::EtaleAlgebra;
use crate::places::{compute_bad_places, BadPlaceSet, Place, DEFAULT_PRECISION_CAP};

#[derive(Clone, Debug)]
pub struct Surface {
    algebra: EtaleAlgebra,
    bad: BadPlaceSet,
    mode: Mode,
    cap: usize,
}

impl Surface {
    /// Geometric mode, bad set computed from `f`, default precision cap.
    pub fn new(f: KPoly) -> Result<Self> {
        let bad = compute_bad_places(&f)?;
        Ok(Surface {
            algebra: EtaleAlgebra::new(f)?,
            bad,
            mode: Mode::Geometric,
            cap: DEFAULT_PRECISION_CAP,
        })
    }

    pub fn with_extra_places(mut self, extra: impl IntoIterator<Item = Place>) -> Self {
        self.bad = self.bad.with_extra(extra);
        self
    }

    pub fn with_mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn with_precision_cap(mut self, cap: usize) -> Result<Self> {
        if cap == 0 {
            return Err(Error::InvalidArgument(
                "precision cap must be positive".into(),
            ));
        }
        self.cap = cap;
        Ok(self)
    }

    pub fn f(&self) -> &KPoly {
        self.algebra.f()
    }

    pub fn algebra(&self) -> &EtaleAlgebra {
        &self.algebra
    }

    pub fn bad_places(&self) -> &BadPlaceSet {
        &self.bad
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn precision_cap(&self) -> usize {
        self.cap
    }
}

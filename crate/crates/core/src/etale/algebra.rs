//! The quartic etale algebra `L = K[A]/(f)` and its elements.

use std::fmt;

use crate::arith::field::Field;
use crate::arith::poly::Poly;
use crate::arith::ratfunc::{kring, resultant_x, FunctionField, KPoly, RationalFunction};
use crate::error::{invalid, Error, Result};
use crate::places::check_model;

use super::roots::rational_roots;

/// An element of `L`, either as `c0 + c1 A + c2 A^2 + c3 A^3` or, when `f`
/// splits over `K`, as its four coordinates at the ordered roots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EtaleElement {
    General([RationalFunction; 4]),
    Split([RationalFunction; 4]),
}

impl EtaleElement {
    pub fn general(coeffs: &[RationalFunction]) -> Result<Self> {
        if coeffs.len() > 4 {
            return Err(invalid("elements of L have degree at most 3 in A"));
        }
        let mut c: [RationalFunction; 4] = Default::default();
        for (i, x) in coeffs.iter().enumerate() {
            c[i] = x.clone();
        }
        Ok(EtaleElement::General(c))
    }

    pub fn split(d: [RationalFunction; 4]) -> Self {
        EtaleElement::Split(d)
    }

    /// Image of `m` in `L`.
    pub fn scalar(m: RationalFunction) -> Self {
        let z = RationalFunction::zero();
        EtaleElement::General([m, z.clone(), z.clone(), z])
    }

    pub fn one() -> Self {
        Self::scalar(RationalFunction::one())
    }

    /// The generator `A`.
    pub fn alpha() -> Self {
        let z = RationalFunction::zero();
        EtaleElement::General([z.clone(), RationalFunction::one(), z.clone(), z])
    }

    pub fn is_split(&self) -> bool {
        matches!(self, EtaleElement::Split(_))
    }

    pub fn components(&self) -> &[RationalFunction; 4] {
        match self {
            EtaleElement::General(c) | EtaleElement::Split(c) => c,
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|c| c.is_zero())
    }

    fn as_poly(c: &[RationalFunction; 4]) -> KPoly {
        Poly::new(c.to_vec())
    }
}

impl fmt::Display for EtaleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EtaleElement::Split(d) => {
                let parts: Vec<String> = d.iter().map(|x| x.to_string()).collect();
                write!(f, "({})", parts.join("; "))
            }
            EtaleElement::General(c) => {
                let mut out = String::new();
                for (i, x) in c.iter().enumerate() {
                    if x.is_zero() {
                        continue;
                    }
                    let s = x.to_string();
                    let (neg, body) = match s.strip_prefix('-') {
                        Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
                        _ => (false, s.clone()),
                    };
                    let body = if i > 0 && body.contains(' ') {
                        format!("({body})")
                    } else {
                        body
                    };
                    let term = match (i, body.as_str()) {
                        (0, _) => body.clone(),
                        (1, "1") => "A".to_string(),
                        (_, "1") => format!("A^{i}"),
                        (1, _) => format!("{body}*A"),
                        _ => format!("{body}*A^{i}"),
                    };
                    if out.is_empty() {
                        if neg {
                            out.push('-');
                        }
                    } else {
                        out.push_str(if neg { " - " } else { " + " });
                    }
                    out.push_str(&term);
                }
                if out.is_empty() {
                    out.push('0');
                }
                f.write_str(&out)
            }
        }
    }
}

/// `L = K[A]/(f)` for a squarefree quartic `f`, with the roots of `f` in
/// `K` when it splits.
#[derive(Clone, Debug, PartialEq)]
pub struct EtaleAlgebra {
    f: KPoly,
    roots: Option<[RationalFunction; 4]>,
}

impl EtaleAlgebra {
    pub fn new(f: KPoly) -> Result<Self> {
        check_model(&f)?;
        let r = rational_roots(&f)?;
        let roots =
            (r.len() == 4).then(|| [r[0].clone(), r[1].clone(), r[2].clone(), r[3].clone()]);
        Ok(EtaleAlgebra { f, roots })
    }

    pub fn f(&self) -> &KPoly {
        &self.f
    }

    /// Ordered roots `a_1 .. a_4` when `f` splits over `K`.
    pub fn roots(&self) -> Option<&[RationalFunction; 4]> {
        self.roots.as_ref()
    }

    pub fn is_split(&self) -> bool {
        self.roots.is_some()
    }

    fn split_roots(&self) -> Result<&[RationalFunction; 4]> {
        self.roots.as_ref().ok_or(Error::NotSplit)
    }

    /// Coordinates at the roots.
    pub fn to_split(&self, e: &EtaleElement) -> Result<EtaleElement> {
        match e {
            EtaleElement::Split(_) => Ok(e.clone()),
            EtaleElement::General(c) => {
                let roots = self.split_roots()?;
                let ring = kring();
                let p = EtaleElement::as_poly(c);
                Ok(EtaleElement::Split(
                    roots.clone().map(|a| ring.eval(&p, &a)),
                ))
            }
        }
    }

    /// Lagrange interpolation at the roots.
    pub fn to_general(&self, e: &EtaleElement) -> Result<EtaleElement> {
        match e {
            EtaleElement::General(_) => Ok(e.clone()),
            EtaleElement::Split(d) => {
                let roots = self.split_roots()?;
                let ring = kring();
                let mut acc = Poly::zero();
                for i in 0..4 {
                    let mut basis = ring.constant(d[i].clone());
                    for j in 0..4 {
                        if i != j {
                            let denom = &roots[i] - &roots[j];
                            let factor = ring.scale(&ring.linear(&roots[j]), &denom.inv().unwrap());
                            basis = ring.mul(&basis, &factor);
                        }
                    }
                    acc = ring.add(&acc, &basis);
                }
                EtaleElement::general(acc.coeffs())
            }
        }
    }

    /// The representation of `e` matching `like`.
    fn same_form(&self, e: &EtaleElement, like: &EtaleElement) -> Result<EtaleElement> {
        if like.is_split() {
            self.to_split(e)
        } else {
            self.to_general(e)
        }
    }

    pub fn mul(&self, a: &EtaleElement, b: &EtaleElement) -> Result<EtaleElement> {
        let b = self.same_form(b, a)?;
        match (a, &b) {
            (EtaleElement::Split(x), EtaleElement::Split(y)) => {
                Ok(EtaleElement::Split([0, 1, 2, 3].map(|i| &x[i] * &y[i])))
            }
            (EtaleElement::General(x), EtaleElement::General(y)) => {
                let ring = kring();
                let p = ring.rem(
                    &ring.mul(&EtaleElement::as_poly(x), &EtaleElement::as_poly(y)),
                    &self.f,
                );
                EtaleElement::general(p.coeffs())
            }
            _ => unreachable!(),
        }
    }

    pub fn inv(&self, a: &EtaleElement) -> Result<EtaleElement> {
        match a {
            EtaleElement::Split(x) => {
                let mut out: [RationalFunction; 4] = Default::default();
                for i in 0..4 {
                    out[i] = x[i].inv().ok_or(Error::ZeroDivisor)?;
                }
                Ok(EtaleElement::Split(out))
            }
            EtaleElement::General(x) => {
                let ring = kring();
                let inv = ring
                    .inv_mod(&EtaleElement::as_poly(x), &self.f)
                    .ok_or(Error::ZeroDivisor)?;
                EtaleElement::general(inv.coeffs())
            }
        }
    }

    pub fn scale(&self, a: &EtaleElement, m: &RationalFunction) -> EtaleElement {
        match a {
            EtaleElement::Split(x) => EtaleElement::Split(x.clone().map(|c| &c * m)),
            EtaleElement::General(x) => EtaleElement::General(x.clone().map(|c| &c * m)),
        }
    }

    pub fn square(&self, a: &EtaleElement) -> Result<EtaleElement> {
        self.mul(a, a)
    }

    /// `N_{L/K}(e) = Res_x(f, e) / lc(f)^{deg e}`, the product of the
    /// coordinates in split form.
    pub fn norm(&self, e: &EtaleElement) -> Result<RationalFunction> {
        let n = match e {
            EtaleElement::Split(d) => d.iter().fold(RationalFunction::one(), |acc, x| &acc * x),
            EtaleElement::General(c) => {
                let ring = kring();
                let p = EtaleElement::as_poly(c);
                let Some(dp) = p.degree() else {
                    return Err(Error::ZeroDivisor);
                };
                if let Some(roots) = self.roots() {
                    // avoids coefficient swell in the Euclidean resultant
                    return roots.iter().map(|a| ring.eval(&p, a)).try_fold(
                        RationalFunction::one(),
                        |acc, v| {
                            if v.is_zero() {
                                Err(Error::ZeroDivisor)
                            } else {
                                Ok(&acc * &v)
                            }
                        },
                    );
                }
                let res = resultant_x(&self.f, &p);
                let k = FunctionField;
                &res / &k.pow(self.f.lc().unwrap(), dp as u64)
            }
        };
        if n.is_zero() {
            Err(Error::ZeroDivisor)
        } else {
            Ok(n)
        }
    }
}

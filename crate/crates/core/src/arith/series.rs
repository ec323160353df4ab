//! Truncated power series `s^offset * (c_0 + c_1 s + ... + O(s^prec))`.

use super::field::{Field, IsZero};
use super::poly::Poly;
use crate::error::{invalid, Result};

/// Order of vanishing of a truncated series.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Order {
    Known(i64),
    /// Every stored coefficient vanishes: the true order is at least
    /// `offset + prec` and cannot be decided at this precision.
    Undetermined,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PowerSeries<E> {
    offset: i64,
    coeffs: Vec<E>,
}

impl<E: Clone + IsZero> PowerSeries<E> {
    /// `coeffs.len()` is the relative precision and must be positive.
    pub fn new(offset: i64, coeffs: Vec<E>) -> Self {
        assert!(!coeffs.is_empty(), "truncation order must be at least 1");
        PowerSeries { offset, coeffs }
    }

    pub fn offset(&self) -> i64 {
        self.offset
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    /// Relative truncation order.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn order(&self) -> Order {
        match self.coeffs.iter().position(|c| !c.is_zero_value()) {
            Some(i) => Order::Known(self.offset + i as i64),
            None => Order::Undetermined,
        }
    }

    pub fn is_undetermined(&self) -> bool {
        self.order() == Order::Undetermined
    }

    pub fn truncate(&self, prec: usize) -> Self {
        let mut c = self.coeffs.clone();
        c.truncate(prec.max(1));
        PowerSeries::new(self.offset, c)
    }

    pub fn map<G: Clone + IsZero>(&self, f: impl FnMut(&E) -> G) -> PowerSeries<G> {
        PowerSeries::new(self.offset, self.coeffs.iter().map(f).collect())
    }
}

/// Series arithmetic over a coefficient field.
pub struct SeriesRing<'a, F: Field> {
    field: &'a F,
}

impl<'a, F: Field> SeriesRing<'a, F> {
    pub fn new(field: &'a F) -> Self {
        SeriesRing { field }
    }

    pub fn constant(&self, c: F::Elem, prec: usize) -> PowerSeries<F::Elem> {
        let mut v = vec![self.field.zero(); prec.max(1)];
        v[0] = c;
        PowerSeries::new(0, v)
    }

    /// `c_0 + c_1 s` truncated.
    pub fn linear(&self, c0: F::Elem, c1: F::Elem, prec: usize) -> PowerSeries<F::Elem> {
        let mut v = vec![self.field.zero(); prec.max(2)];
        v[0] = c0;
        v[1] = c1;
        v.truncate(prec.max(1));
        PowerSeries::new(0, v)
    }

    fn align(&self, a: &PowerSeries<F::Elem>, o: i64, prec: usize) -> Vec<F::Elem> {
        let shift = (a.offset - o) as usize;
        let mut v = vec![self.field.zero(); prec];
        for (i, c) in a.coeffs.iter().enumerate() {
            if i + shift < prec {
                v[i + shift] = c.clone();
            }
        }
        v
    }

    pub fn add(&self, a: &PowerSeries<F::Elem>, b: &PowerSeries<F::Elem>) -> PowerSeries<F::Elem> {
        let o = a.offset.min(b.offset);
        let abs = (a.offset + a.coeffs.len() as i64).min(b.offset + b.coeffs.len() as i64);
        let prec = (abs - o).max(1) as usize;
        let x = self.align(a, o, prec);
        let y = self.align(b, o, prec);
        PowerSeries::new(
            o,
            x.iter()
                .zip(&y)
                .map(|(p, q)| self.field.add(p, q))
                .collect(),
        )
    }

    pub fn neg(&self, a: &PowerSeries<F::Elem>) -> PowerSeries<F::Elem> {
        a.map(|c| self.field.neg(c))
    }

    pub fn sub(&self, a: &PowerSeries<F::Elem>, b: &PowerSeries<F::Elem>) -> PowerSeries<F::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &PowerSeries<F::Elem>, c: &F::Elem) -> PowerSeries<F::Elem> {
        a.map(|x| self.field.mul(x, c))
    }

    pub fn mul(&self, a: &PowerSeries<F::Elem>, b: &PowerSeries<F::Elem>) -> PowerSeries<F::Elem> {
        let k = self.field;
        let prec = a.coeffs.len().min(b.coeffs.len());
        let mut v = vec![k.zero(); prec];
        for (i, x) in a.coeffs.iter().take(prec).enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().take(prec - i).enumerate() {
                v[i + j] = k.add(&v[i + j], &k.mul(x, y));
            }
        }
        PowerSeries::new(a.offset + b.offset, v)
    }

    /// Inverse of a series whose leading stored coefficient is nonzero.
    pub fn inv(&self, a: &PowerSeries<F::Elem>) -> Result<PowerSeries<F::Elem>> {
        let k = self.field;
        let c0 = k
            .inv(&a.coeffs[0])
            .ok_or_else(|| invalid("series inverse needs a nonzero leading coefficient"))?;
        let n = a.coeffs.len();
        let mut v: Vec<F::Elem> = Vec::with_capacity(n);
        v.push(c0.clone());
        for m in 1..n {
            let mut acc = k.zero();
            for i in 1..=m {
                acc = k.add(&acc, &k.mul(&a.coeffs[i], &v[m - i]));
            }
            v.push(k.neg(&k.mul(&acc, &c0)));
        }
        Ok(PowerSeries::new(-a.offset, v))
    }

    /// `p(x)` by Horner's rule for a polynomial with coefficients in the
    /// same field.
    pub fn eval_poly(&self, p: &Poly<F::Elem>, x: &PowerSeries<F::Elem>) -> PowerSeries<F::Elem> {
        let prec = x.coeffs.len();
        let mut acc = self.constant(self.field.zero(), prec);
        for c in p.coeffs().iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.constant(c.clone(), prec));
        }
        acc
    }

    /// `sum_i coeffs[i] * x^i` with series coefficients.
    pub fn eval_series_poly(
        &self,
        coeffs: &[PowerSeries<F::Elem>],
        x: &PowerSeries<F::Elem>,
    ) -> PowerSeries<F::Elem> {
        let prec = x.coeffs.len();
        let mut acc = self.constant(self.field.zero(), prec);
        for c in coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }

    /// Newton iteration for a simple root: given `F(X) = sum coeffs[i] X^i`
    /// and `r0` with `F(r0) = 0`, `F'(r0) != 0` modulo `s`, return the unique
    /// root congruent to `r0` to relative precision `prec`.
    pub fn newton_root(
        &self,
        coeffs: &[PowerSeries<F::Elem>],
        r0: &F::Elem,
        prec: usize,
    ) -> Result<PowerSeries<F::Elem>> {
        let k = self.field;
        let deriv: Vec<PowerSeries<F::Elem>> = coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.scale(c, &k.from_int(i as i64)))
            .collect();
        let mut root = self.constant(r0.clone(), 1);
        let mut p = 1;
        while p < prec {
            p = (2 * p).min(prec);
            let r = self.extend(&root, p);
            let cs: Vec<_> = coeffs.iter().map(|c| c.truncate(p)).collect();
            let ds: Vec<_> = deriv.iter().map(|c| c.truncate(p)).collect();
            let val = self.eval_series_poly(&cs, &r);
            let der = self.eval_series_poly(&ds, &r);
            let step = self.mul(&val, &self.inv(&der)?);
            root = self.sub(&r, &step).truncate(p);
        }
        Ok(root)
    }

    /// Pad with zero coefficients to relative precision `prec`.
    pub fn extend(&self, a: &PowerSeries<F::Elem>, prec: usize) -> PowerSeries<F::Elem> {
        let mut v = a.coeffs.clone();
        v.resize(prec.max(1), self.field.zero());
        PowerSeries::new(a.offset, v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::field::Rationals;
    use crate::arith::ratfunc::{rat, ratio};

    #[test]
    fn inverse_of_one_minus_s() {
        let r = SeriesRing::new(&Rationals);
        let a = r.linear(rat(1), rat(-1), 6);
        let b = r.inv(&a).unwrap();
        assert!(b.coeffs().iter().all(|c| *c == rat(1)));
        assert_eq!(r.mul(&a, &b).order(), Order::Known(0));
    }

    #[test]
    fn sqrt_of_four_plus_s() {
        // X^2 - (4 + s), root near 2: 2 + s/4 - s^2/64 + ...
        let r = SeriesRing::new(&Rationals);
        let coeffs = vec![
            r.linear(rat(-4), rat(-1), 8),
            r.constant(rat(0), 8),
            r.constant(rat(1), 8),
        ];
        let root = r.newton_root(&coeffs, &rat(2), 8).unwrap();
        assert_eq!(root.coeffs()[..3], [rat(2), ratio(1, 4), ratio(-1, 64)]);
        let check = r.eval_series_poly(&coeffs, &root);
        assert_eq!(check.order(), Order::Undetermined);
    }

    #[test]
    fn zero_series_is_undetermined() {
        let r = SeriesRing::new(&Rationals);
        assert_eq!(r.constant(rat(0), 4).order(), Order::Undetermined);
        assert_eq!(
            PowerSeries::new(2, vec![rat(0), rat(3)]).order(),
            Order::Known(3)
        );
    }
}

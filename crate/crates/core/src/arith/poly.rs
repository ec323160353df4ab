//! Dense univariate polynomials over a [`Field`] context.

use std::cmp::Ordering;

use super::field::{Field, IsZero};
use num_bigint::BigUint;

/// `(g, s, t)` with `s*a + t*b = g`.
pub type Bezout<E> = (Poly<E>, Poly<E>, Poly<E>);

/// Dense polynomial, coefficients lowest degree first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly<E> {
    coeffs: Vec<E>,
}

impl<E: IsZero> Poly<E> {
    pub fn new(mut coeffs: Vec<E>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero_value()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn lc(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

impl<E: IsZero + Clone> Poly<E> {
    pub fn monomial(c: E, n: usize) -> Self
    where
        E: Default,
    {
        Self::monomial_with(c, n, E::default())
    }

    pub fn monomial_with(c: E, n: usize, zero: E) -> Self {
        if c.is_zero_value() {
            return Poly::zero();
        }
        let mut v = vec![zero; n];
        v.push(c);
        Poly { coeffs: v }
    }

    pub fn map<G: IsZero>(&self, f: impl FnMut(&E) -> G) -> Poly<G> {
        Poly::new(self.coeffs.iter().map(f).collect())
    }
}

impl<E: IsZero> IsZero for Poly<E> {
    fn is_zero_value(&self) -> bool {
        self.coeffs.is_empty()
    }
}

/// Polynomial arithmetic over a borrowed field context.
#[derive(Clone, Copy, Debug)]
pub struct PolyRing<'a, F: Field> {
    field: &'a F,
}

impl<'a, F: Field> PolyRing<'a, F> {
    pub fn new(field: &'a F) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &'a F {
        self.field
    }

    pub fn constant(&self, c: F::Elem) -> Poly<F::Elem> {
        Poly::new(vec![c])
    }

    pub fn one(&self) -> Poly<F::Elem> {
        self.constant(self.field.one())
    }

    /// The variable itself.
    pub fn x(&self) -> Poly<F::Elem> {
        Poly::new(vec![self.field.zero(), self.field.one()])
    }

    /// `x - c`.
    pub fn linear(&self, c: &F::Elem) -> Poly<F::Elem> {
        Poly::new(vec![self.field.neg(c), self.field.one()])
    }

    pub fn monomial(&self, c: F::Elem, n: usize) -> Poly<F::Elem> {
        Poly::monomial_with(c, n, self.field.zero())
    }

    pub fn add(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let k = &self.field;
        let n = a.coeffs.len().max(b.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (a.coeffs.get(i), b.coeffs.get(i)) {
                (Some(x), Some(y)) => k.add(x, y),
                (Some(x), None) => x.clone(),
                (None, Some(y)) => y.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(out)
    }

    pub fn neg(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        Poly::new(a.coeffs.iter().map(|c| self.field.neg(c)).collect())
    }

    pub fn sub(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return Poly::zero();
        }
        let k = &self.field;
        let mut out = vec![k.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if k.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                out[i + j] = k.add(&out[i + j], &k.mul(x, y));
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, a: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
        Poly::new(a.coeffs.iter().map(|x| self.field.mul(x, c)).collect())
    }

    pub fn shift_up(&self, a: &Poly<F::Elem>, n: usize) -> Poly<F::Elem> {
        if a.is_zero() {
            return Poly::zero();
        }
        let mut v = vec![self.field.zero(); n];
        v.extend(a.coeffs.iter().cloned());
        Poly::new(v)
    }

    pub fn pow(&self, a: &Poly<F::Elem>, mut e: u64) -> Poly<F::Elem> {
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

    /// Euclidean division. Panics on division by zero.
    pub fn divrem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> (Poly<F::Elem>, Poly<F::Elem>) {
        let db = b.degree().expect("polynomial division by zero");
        let k = &self.field;
        let mut r = a.coeffs.clone();
        if r.len() <= db {
            return (Poly::zero(), a.clone());
        }
        // monic divisors are the common case and need no inversion
        let lc_inv = if k.is_one(b.lc().unwrap()) {
            None
        } else {
            Some(k.inv(b.lc().unwrap()).unwrap())
        };
        let mut q = vec![k.zero(); r.len() - db];
        for i in (0..q.len()).rev() {
            let c = match &lc_inv {
                Some(u) => k.mul(&r[i + db], u),
                None => r[i + db].clone(),
            };
            if !k.is_zero(&c) {
                for (j, bj) in b.coeffs.iter().enumerate() {
                    r[i + j] = k.sub(&r[i + j], &k.mul(&c, bj));
                }
            }
            q[i] = c;
        }
        r.truncate(db);
        (Poly::new(q), Poly::new(r))
    }

    pub fn rem(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.coeffs.len() < b.coeffs.len() {
            return a.clone();
        }
        self.divrem(a, b).1
    }

    /// Quotient when `b` is known to divide `a`.
    pub fn exact_div(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let (q, r) = self.divrem(a, b);
        debug_assert!(r.is_zero(), "exact_div with nonzero remainder");
        q
    }

    pub fn divides(&self, b: &Poly<F::Elem>, a: &Poly<F::Elem>) -> bool {
        if b.is_zero() {
            return a.is_zero();
        }
        self.rem(a, b).is_zero()
    }

    pub fn monic(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        match a.lc() {
            None => Poly::zero(),
            Some(c) if self.field.is_one(c) => a.clone(),
            Some(c) => self.scale(a, &self.field.inv(c).unwrap()),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut x = a.clone();
        let mut y = b.clone();
        while !y.is_zero() {
            let r = self.rem(&x, &y);
            x = y;
            y = self.monic(&r);
        }
        self.monic(&x)
    }

    /// Returns `(g, s, t)` with `s*a + t*b = g`, `g` monic (or zero).
    pub fn xgcd(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Bezout<F::Elem> {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut s0, mut s1) = (self.one(), Poly::zero());
        let (mut t0, mut t1) = (Poly::zero(), self.one());
        while !r1.is_zero() {
            let (q, r) = self.divrem(&r0, &r1);
            let s2 = self.sub(&s0, &self.mul(&q, &s1));
            let t2 = self.sub(&t0, &self.mul(&q, &t1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s2;
            t0 = t1;
            t1 = t2;
        }
        match r0.lc() {
            None => (r0, s0, t0),
            Some(c) => {
                let ci = self.field.inv(c).unwrap();
                (
                    self.scale(&r0, &ci),
                    self.scale(&s0, &ci),
                    self.scale(&t0, &ci),
                )
            }
        }
    }

    /// Inverse of `a` modulo `m`, when it exists.
    pub fn inv_mod(&self, a: &Poly<F::Elem>, m: &Poly<F::Elem>) -> Option<Poly<F::Elem>> {
        let (g, s, _) = self.xgcd(&self.rem(a, m), m);
        if g.degree() == Some(0) {
            Some(self.rem(&s, m))
        } else {
            None
        }
    }

    pub fn derivative(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        let k = &self.field;
        Poly::new(
            a.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| k.mul(c, &k.from_int(i as i64)))
                .collect(),
        )
    }

    pub fn eval(&self, a: &Poly<F::Elem>, x: &F::Elem) -> F::Elem {
        let k = &self.field;
        let mut acc = k.zero();
        for c in a.coeffs.iter().rev() {
            acc = k.add(&k.mul(&acc, x), c);
        }
        acc
    }

    /// `a(b(x))`.
    pub fn compose(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut acc = Poly::zero();
        for c in a.coeffs.iter().rev() {
            acc = self.add(&self.mul(&acc, b), &self.constant(c.clone()));
        }
        acc
    }

    /// `a(x + c)`.
    pub fn taylor_shift(&self, a: &Poly<F::Elem>, c: &F::Elem) -> Poly<F::Elem> {
        self.compose(a, &Poly::new(vec![c.clone(), self.field.one()]))
    }

    /// `a^e mod m`.
    pub fn pow_mod(&self, a: &Poly<F::Elem>, e: &BigUint, m: &Poly<F::Elem>) -> Poly<F::Elem> {
        let mut acc = self.rem(&self.one(), m);
        let base = self.rem(a, m);
        for i in (0..e.bits()).rev() {
            acc = self.rem(&self.mul(&acc, &acc), m);
            if e.bit(i) {
                acc = self.rem(&self.mul(&acc, &base), m);
            }
        }
        acc
    }

    /// Resultant via the Euclidean remainder sequence. `Res(a, 0) = 0`.
    pub fn resultant(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> F::Elem {
        let k = &self.field;
        let (Some(mut da), Some(mut db)) = (a.degree(), b.degree()) else {
            return k.zero();
        };
        let mut a = a.clone();
        let mut b = b.clone();
        let mut acc = k.one();
        loop {
            if db == 0 {
                return k.mul(&acc, &k.pow(b.lc().unwrap(), da as u64));
            }
            let r = self.rem(&a, &b);
            let Some(dr) = r.degree() else {
                return k.zero();
            };
            if (da * db) % 2 == 1 {
                acc = k.neg(&acc);
            }
            acc = k.mul(&acc, &k.pow(b.lc().unwrap(), (da - dr) as u64));
            a = b;
            b = r;
            da = db;
            db = dr;
        }
    }

    /// Yun's algorithm: monic pairwise coprime squarefree `a_i` with
    /// `a = lc * prod a_i^i`. Constant factors (`a_i = 1`) are omitted.
    pub fn squarefree_decomposition(&self, a: &Poly<F::Elem>) -> Vec<(Poly<F::Elem>, usize)> {
        let mut out = Vec::new();
        if a.degree().unwrap_or(0) == 0 {
            return out;
        }
        let a = self.monic(a);
        let da = self.derivative(&a);
        let g = self.gcd(&a, &da);
        let mut b = self.exact_div(&a, &g);
        let mut c = self.exact_div(&da, &g);
        let mut d = self.sub(&c, &self.derivative(&b));
        let mut i = 1;
        while b.degree().unwrap_or(0) > 0 {
            let ai = self.gcd(&b, &d);
            b = self.exact_div(&b, &ai);
            c = self.exact_div(&d, &ai);
            d = self.sub(&c, &self.derivative(&b));
            if ai.degree().unwrap_or(0) > 0 {
                out.push((ai, i));
            }
            i += 1;
        }
        out
    }

    /// Monic product of the distinct irreducible factors.
    pub fn squarefree_part(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        if a.degree().unwrap_or(0) == 0 {
            return self.one();
        }
        let g = self.gcd(a, &self.derivative(a));
        self.monic(&self.exact_div(a, &g))
    }

    /// Monic product of the factors occurring to odd multiplicity.
    pub fn odd_part(&self, a: &Poly<F::Elem>) -> Poly<F::Elem> {
        self.squarefree_decomposition(a)
            .into_iter()
            .filter(|(_, m)| m % 2 == 1)
            .fold(self.one(), |acc, (p, _)| self.mul(&acc, &p))
    }

    pub fn is_squarefree(&self, a: &Poly<F::Elem>) -> bool {
        a.degree().unwrap_or(0) == 0 || self.gcd(a, &self.derivative(a)).degree() == Some(0)
    }

    /// Deterministic order: by degree, then coefficients from the constant
    /// term upwards.
    pub fn cmp_poly(&self, a: &Poly<F::Elem>, b: &Poly<F::Elem>) -> Ordering {
        a.degree()
            .map(|d| d as i64)
            .unwrap_or(-1)
            .cmp(&b.degree().map(|d| d as i64).unwrap_or(-1))
            .then_with(|| {
                for (x, y) in a.coeffs.iter().zip(b.coeffs.iter()) {
                    let o = self.field.cmp_elem(x, y);
                    if o != Ordering::Equal {
                        return o;
                    }
                }
                Ordering::Equal
            })
    }

    pub fn fmt_poly(&self, a: &Poly<F::Elem>, var: &str) -> String {
        fmt_terms(
            a.coeffs
                .iter()
                .enumerate()
                .rev()
                .filter(|(_, c)| !self.field.is_zero(c))
                .map(|(i, c)| (i, self.field.fmt_elem(c))),
            var,
        )
    }
}

/// Render `sum c_i var^i` given rendered coefficients, highest degree first.
pub(crate) fn fmt_terms(terms: impl Iterator<Item = (usize, String)>, var: &str) -> String {
    let mut out = String::new();
    for (i, c) in terms {
        let compound = c.trim_start_matches('-').contains([' ', '+']) || c[1..].contains('-');
        let (neg, body) = if !compound && c.starts_with('-') {
            (true, c[1..].to_string())
        } else if compound {
            (false, format!("({c})"))
        } else {
            (false, c.clone())
        };
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        let term = if i == 0 {
            body
        } else if body == "1" {
            mono
        } else {
            format!("{body}*{mono}")
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
    out
}

pub(crate) fn biguint(n: u64) -> BigUint {
    BigUint::from(n)
}

//! Places of `K = Q(t)`, valuations, the bad set `S` of the model
//! `y^2 = f(x)`, and local splitting of `f` at good places.

use std::cmp::Ordering;
use std::fmt;

use num_rational::BigRational;

use crate::arith::factor::{factor_over_rationals, is_irreducible};
use crate::arith::field::{ExtField, Field, NumberField, NumberFieldElement};
use crate::arith::numfield::{factor_squarefree_over, rational_field, NfPoly};
use crate::arith::poly::{Poly, PolyRing};
use crate::arith::ratfunc::{kring, qring, resultant_x, KPoly, QPoly, RationalFunction};
use crate::arith::series::{Order, PowerSeries, SeriesRing};
use crate::error::{invalid, Error, Result};

/// Default cap on the truncation order of local series.
pub const DEFAULT_PRECISION_CAP: usize = 512;
/// Initial truncation order for adaptive lifting.
pub const INITIAL_PRECISION: usize = 2;

/// A place of `Q(t)`: a monic irreducible polynomial or the place at infinity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Place {
    Finite(QPoly),
    Infinity,
}

impl Place {
    /// Checks that `pi` is irreducible and makes it monic.
    pub fn finite(pi: &QPoly) -> Result<Place> {
        if !is_irreducible(pi) {
            return Err(invalid(format!(
                "{} is not an irreducible polynomial in t",
                pi.to_string_in("t")
            )));
        }
        Ok(Place::Finite(qring().monic(pi)))
    }

    /// The place `t = c`.
    pub fn at(c: &BigRational) -> Place {
        Place::Finite(qring().linear(c))
    }

    pub fn at_int(c: i64) -> Place {
        Place::at(&BigRational::from_integer(c.into()))
    }

    pub fn degree(&self) -> usize {
        match self {
            Place::Finite(p) => p.degree().unwrap(),
            Place::Infinity => 1,
        }
    }

    pub fn is_infinity(&self) -> bool {
        matches!(self, Place::Infinity)
    }

    pub fn poly(&self) -> Option<&QPoly> {
        match self {
            Place::Finite(p) => Some(p),
            Place::Infinity => None,
        }
    }

    /// The residue field `kappa(v)`, as `Q[u]/(pi(u))`.
    pub fn residue_field(&self) -> NumberField {
        match self {
            Place::Finite(p) => NumberField::number_field(p.clone(), "u"),
            Place::Infinity => rational_field(),
        }
    }

    /// A uniformizer: `pi` or `1/t`.
    pub fn uniformizer(&self) -> RationalFunction {
        match self {
            Place::Finite(p) => RationalFunction::from_poly(p.clone()),
            Place::Infinity => RationalFunction::t().inv().unwrap(),
        }
    }

    /// Reduction of an element of valuation zero to the residue field.
    pub fn reduce_unit(&self, r: &RationalFunction) -> Result<NumberFieldElement> {
        if r.is_zero() || valuation_at(r, self)? != 0 {
            return Err(invalid(format!("{r} is not a unit at {self}")));
        }
        Ok(match self {
            Place::Finite(_) => {
                let k = self.residue_field();
                let n = k.reduce(r.numer());
                let d = k.reduce(r.denom());
                k.div(&n, &d).expect("unit has invertible denominator")
            }
            Place::Infinity => {
                let q = r.numer().lc().unwrap() / r.denom().lc().unwrap();
                Poly::new(vec![q])
            }
        })
    }

    /// Reduction of an element with nonnegative valuation.
    pub fn reduce(&self, r: &RationalFunction) -> Result<NumberFieldElement> {
        if r.is_zero() {
            return Ok(Poly::zero());
        }
        match valuation_at(r, self)? {
            v if v < 0 => Err(invalid(format!("{r} has a pole at {self}"))),
            0 => self.reduce_unit(r),
            _ => Ok(Poly::zero()),
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Finite(p) => write!(f, "({})", p.to_string_in("t")),
            Place::Infinity => f.write_str("inf"),
        }
    }
}

impl PartialOrd for Place {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Finite places by (degree, coefficients); infinity last.
impl Ord for Place {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Place::Finite(a), Place::Finite(b)) => qring().cmp_poly(a, b),
            (Place::Finite(_), Place::Infinity) => Ordering::Less,
            (Place::Infinity, Place::Finite(_)) => Ordering::Greater,
            (Place::Infinity, Place::Infinity) => Ordering::Equal,
        }
    }
}

/// Multiplicity of `pi` in a nonzero polynomial.
pub fn poly_valuation(p: &QPoly, pi: &QPoly) -> i64 {
    let ring = qring();
    let mut p = p.clone();
    let mut v = 0;
    loop {
        let (q, r) = ring.divrem(&p, pi);
        if !r.is_zero() {
            return v;
        }
        p = q;
        v += 1;
    }
}

/// `v(r)`: multiplicity of `pi` in the numerator minus that in the
/// denominator, or `deg(den) - deg(num)` at infinity.
pub fn valuation_at(r: &RationalFunction, v: &Place) -> Result<i64> {
    if r.is_zero() {
        return Err(invalid("valuation of zero"));
    }
    Ok(match v {
        Place::Finite(pi) => poly_valuation(r.numer(), pi) - poly_valuation(r.denom(), pi),
        Place::Infinity => r.denom().degree().unwrap() as i64 - r.numer().degree().unwrap() as i64,
    })
}

/// Finite places where a nonzero rational function has a zero or a pole.
pub fn support(r: &RationalFunction) -> Vec<Place> {
    let mut out = Vec::new();
    for p in [r.numer(), r.denom()] {
        if p.degree().unwrap_or(0) > 0 {
            for (g, _) in factor_over_rationals(p).expect("nonzero") {
                out.push(Place::Finite(g));
            }
        }
    }
    out.sort();
    out.dedup();
    out
}

/// Finite ordered set of places, always containing infinity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadPlaceSet {
    places: Vec<Place>,
}

impl BadPlaceSet {
    pub fn new(places: impl IntoIterator<Item = Place>) -> Self {
        let mut v: Vec<Place> = places.into_iter().collect();
        v.push(Place::Infinity);
        v.sort();
        v.dedup();
        BadPlaceSet { places: v }
    }

    pub fn with_extra(&self, extra: impl IntoIterator<Item = Place>) -> Self {
        BadPlaceSet::new(self.places.iter().cloned().chain(extra))
    }

    pub fn contains(&self, p: &Place) -> bool {
        self.places.binary_search(p).is_ok()
    }

    pub fn places(&self) -> &[Place] {
        &self.places
    }

    pub fn finite(&self) -> impl Iterator<Item = &QPoly> {
        self.places.iter().filter_map(|p| p.poly())
    }

    pub fn len(&self) -> usize {
        self.places.len()
    }

    pub fn is_empty(&self) -> bool {
        self.places.is_empty()
    }
}

impl fmt::Display for BadPlaceSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.places.iter().map(|p| p.to_string()).collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// `disc_x(f) = (-1)^{n(n-1)/2} Res_x(f, f') / lc(f)`.
pub fn discriminant_x(f: &KPoly) -> RationalFunction {
    let ring = kring();
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return RationalFunction::zero();
    }
    let res = resultant_x(f, &ring.derivative(f));
    let d = &res / f.lc().unwrap();
    if (n * (n - 1) / 2) % 2 == 1 {
        -&d
    } else {
        d
    }
}

/// Checks `deg_x f = 4` and squarefreeness over `K`.
pub fn check_model(f: &KPoly) -> Result<()> {
    if f.degree() != Some(4) {
        return Err(Error::DegenerateModel(format!(
            "deg_x f = {} (expected 4)",
            f.degree().map(|d| d as i64).unwrap_or(-1)
        )));
    }
    if discriminant_x(f).is_zero() {
        return Err(Error::DegenerateModel(
            "disc_x(f) = 0: f is not squarefree in x".into(),
        ));
    }
    Ok(())
}

/// Zeros of `disc_x(f) * lc_x(f)`, poles of the coefficients of `f`, and
/// infinity.
pub fn compute_bad_places(f: &KPoly) -> Result<BadPlaceSet> {
    check_model(f)?;
    let mut places = support(&discriminant_x(f));
    places.extend(support(f.lc().unwrap()));
    for c in f.coeffs() {
        if !c.is_zero() {
            places.extend(support(&RationalFunction::from_poly(c.denom().clone())));
        }
    }
    Ok(BadPlaceSet::new(places))
}

/// Reduction of `f` at a finite place, failing when a coefficient has a
/// pole, the degree drops, or the reduction is inseparable.
pub fn reduce_model(f: &KPoly, place: &Place) -> Result<NfPoly> {
    let bad = |reason: &str| Error::BadReduction {
        place: place.to_string(),
        reason: reason.into(),
    };
    if place.is_infinity() {
        return Err(Error::BadPlace {
            place: place.to_string(),
        });
    }
    let mut coeffs = Vec::new();
    for c in f.coeffs() {
        coeffs.push(
            place
                .reduce(c)
                .map_err(|_| bad("a coefficient of f has a pole"))?,
        );
    }
    let f0 = Poly::new(coeffs);
    if f0.degree() != f.degree() {
        return Err(bad("f drops degree"));
    }
    let k = place.residue_field();
    if !PolyRing::new(&k).is_squarefree(&f0) {
        return Err(bad("f is inseparable modulo the place"));
    }
    Ok(f0)
}

/// `kappa[x]/(g)` for a residue factor `g`.
pub type PointField = ExtField<NumberField>;

/// `t` as a series in the uniformizer `s = pi(t)` with coefficients in
/// `kappa`: the root of `pi(X) = s` reducing to `u`.
pub fn t_series(place: &Place, prec: usize) -> Result<PowerSeries<NumberFieldElement>> {
    let pi = place
        .poly()
        .ok_or_else(|| invalid("no local parameter series at infinity"))?;
    let k = place.residue_field();
    let sr = SeriesRing::new(&k);
    if pi.degree() == Some(1) {
        // pi = t - c, so t = c + s
        let c = -pi.coeffs()[0].clone();
        return Ok(sr.linear(k.from_rational(&c), k.one(), prec));
    }
    let mut coeffs: Vec<PowerSeries<NumberFieldElement>> = pi
        .coeffs()
        .iter()
        .map(|c| sr.constant(k.from_rational(c), prec))
        .collect();
    coeffs[0] = sr.sub(&coeffs[0], &sr.linear(k.zero(), k.one(), prec));
    sr.newton_root(&coeffs, &k.generator(), prec)
}

/// Series expansion of `r` at the place given `t` as a series.
pub fn rf_series(
    r: &RationalFunction,
    place: &Place,
    tau: &PowerSeries<NumberFieldElement>,
) -> Result<PowerSeries<NumberFieldElement>> {
    let k = place.residue_field();
    let sr = SeriesRing::new(&k);
    let prec = tau.precision();
    if r.is_zero() {
        return Ok(sr.constant(k.zero(), prec));
    }
    let pi = place
        .poly()
        .ok_or_else(|| invalid("no local parameter series at infinity"))?;
    let ring = qring();
    let strip = |p: &QPoly| {
        let v = poly_valuation(p, pi);
        let mut q = p.clone();
        for _ in 0..v {
            q = ring.exact_div(&q, pi);
        }
        (v, q)
    };
    let (a, n) = strip(r.numer());
    let (b, d) = strip(r.denom());
    let to_k = |p: &QPoly| Poly::new(p.coeffs().iter().map(|c| k.from_rational(c)).collect());
    let num = sr.eval_poly(&to_k(&n), tau);
    let den = sr.eval_poly(&to_k(&d), tau);
    let val = sr.mul(&num, &sr.inv(&den)?);
    Ok(PowerSeries::new(
        val.offset() + a - b,
        val.coeffs().to_vec(),
    ))
}

/// A point of the fiber of `Z -> P^1` above a good place: a residue factor
/// `g_j` of `f mod pi` together with a lifted root in `E_j[[s]]`,
/// `E_j = kappa[x]/(g_j)`.
#[derive(Clone, Debug)]
pub struct LocalPoint {
    place: Place,
    f: KPoly,
    factor: NfPoly,
    field: PointField,
    tau: PowerSeries<NumberFieldElement>,
    root: PowerSeries<NfPoly>,
}

impl LocalPoint {
    pub fn place(&self) -> &Place {
        &self.place
    }

    /// The residue factor `g_j`, monic irreducible over `kappa`.
    pub fn factor(&self) -> &NfPoly {
        &self.factor
    }

    pub fn field(&self) -> &PointField {
        &self.field
    }

    pub fn kappa(&self) -> &NumberField {
        self.field.base()
    }

    /// `[kappa(P) : kappa(v)]`.
    pub fn relative_degree(&self) -> usize {
        self.factor.degree().unwrap()
    }

    pub fn root(&self) -> &PowerSeries<NfPoly> {
        &self.root
    }

    pub fn tau(&self) -> &PowerSeries<NumberFieldElement> {
        &self.tau
    }

    pub fn precision(&self) -> usize {
        self.root.precision()
    }

    /// The same point lifted to a different precision.
    pub fn relift(&self, prec: usize) -> Result<LocalPoint> {
        lift_point(&self.f, &self.place, &self.factor, prec)
    }

    /// Embed a `kappa`-series into `E_j[[s]]`.
    pub fn embed(&self, a: &PowerSeries<NumberFieldElement>) -> PowerSeries<NfPoly> {
        a.map(|c| self.field.embed(c))
    }

    /// `f` evaluated at the lifted root; vanishes to the working precision.
    pub fn residual(&self) -> Result<PowerSeries<NfPoly>> {
        let coeffs = self.f_coeffs(self.precision())?;
        Ok(SeriesRing::new(&self.field).eval_series_poly(&coeffs, &self.root))
    }

    fn f_coeffs(&self, prec: usize) -> Result<Vec<PowerSeries<NfPoly>>> {
        let tau = self.tau.truncate(prec);
        self.f
            .coeffs()
            .iter()
            .map(|c| Ok(self.embed(&rf_series(c, &self.place, &tau)?).truncate(prec)))
            .collect()
    }

    /// Order of vanishing of `sum c_i x^i` along the point, at the current
    /// precision. `Order::Undetermined` when more precision is needed.
    pub fn order_of(&self, coeffs: &[RationalFunction]) -> Result<Order> {
        let er = SeriesRing::new(&self.field);
        let prec = self.precision();
        let mut acc = er.constant(self.field.zero(), prec);
        let mut power = er.constant(self.field.one(), prec);
        for (i, c) in coeffs.iter().enumerate() {
            if i > 0 {
                power = er.mul(&power, &self.root);
            }
            if c.is_zero() {
                continue;
            }
            let cs = self.embed(&rf_series(c, &self.place, &self.tau)?);
            acc = er.add(&acc, &er.mul(&cs, &power));
        }
        Ok(acc.order())
    }
}

impl fmt::Display for LocalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k = self.kappa();
        write!(
            f,
            "{}[{}]",
            self.place,
            PolyRing::new(k).fmt_poly(&self.factor, "x")
        )
    }
}

fn lift_point(f: &KPoly, place: &Place, factor: &NfPoly, prec: usize) -> Result<LocalPoint> {
    let k = place.residue_field();
    let field = ExtField::new(k.clone(), factor.clone(), "x");
    let tau = t_series(place, prec)?;
    let er = SeriesRing::new(&field);
    let coeffs: Vec<PowerSeries<NfPoly>> = f
        .coeffs()
        .iter()
        .map(|c| Ok(rf_series(c, place, &tau)?.map(|e| field.embed(e))))
        .collect::<Result<_>>()?;
    let root = er.newton_root(&coeffs, &field.generator(), prec)?;
    Ok(LocalPoint {
        place: place.clone(),
        f: f.clone(),
        factor: factor.clone(),
        field,
        tau,
        root,
    })
}

/// The complete fiber of `Z` above a good finite place: one point per
/// irreducible factor of `f mod pi` over `kappa`, roots lifted to `prec`.
pub fn local_splitting(f: &KPoly, place: &Place, prec: usize) -> Result<Vec<LocalPoint>> {
    let f0 = reduce_model(f, place)?;
    let k = place.residue_field();
    factor_squarefree_over(&k, &f0)?
        .iter()
        .map(|g| lift_point(f, place, g, prec))
        .collect()
}

/// Order along `P` of `sum c_i x^i`, adaptively raising the precision from
/// that of `P` up to `cap`.
pub fn valuation_of_poly_at_point(
    coeffs: &[RationalFunction],
    p: &LocalPoint,
    cap: usize,
) -> Result<i64> {
    let nonzero: Vec<&RationalFunction> = coeffs.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return Err(invalid("valuation of zero"));
    }
    // scale so that every coefficient is integral at the place
    let mut m = i64::MAX;
    for c in &nonzero {
        m = m.min(valuation_at(c, &p.place)?);
    }
    let scale = p.place.uniformizer().powi(-m);
    let scaled: Vec<RationalFunction> = coeffs.iter().map(|c| c * &scale).collect();
    let mut point = p.clone();
    loop {
        if let Order::Known(v) = point.order_of(&scaled)? {
            return Ok(v + m);
        }
        let prec = point.precision();
        if prec >= cap {
            return Err(Error::PrecisionCap {
                what: format!("the order of an element at {point}"),
                cap,
            });
        }
        point = point.relift((2 * prec).min(cap))?;
    }
}

/// `Some(i)` with `i` the index of the K-rational root whose reduction is
/// the root of the linear residue factor of `p`.
pub fn match_root(roots: &[RationalFunction], p: &LocalPoint) -> Result<Option<usize>> {
    if p.relative_degree() != 1 {
        return Ok(None);
    }
    let k = p.kappa();
    let r = k.neg(&p.factor.coeffs()[0]);
    for (i, a) in roots.iter().enumerate() {
        if p.place.reduce(a)? == r {
            return Ok(Some(i));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratfunc::{rat, ratio};

    fn rf(n: &[i64], d: &[i64]) -> RationalFunction {
        RationalFunction::new(QPoly::from_ints(n), QPoly::from_ints(d))
    }

    fn kp(cs: &[&[i64]]) -> KPoly {
        Poly::new(cs.iter().map(|c| rf(c, &[1])).collect())
    }

    /// x(x-1)(x-t)(x-t-1)
    fn split_quartic() -> KPoly {
        let ring = kring();
        [&[0i64][..], &[1], &[0, 1], &[1, 1]]
            .iter()
            .map(|c| ring.linear(&rf(c, &[1])))
            .fold(ring.one(), |a, b| ring.mul(&a, &b))
    }

    #[test]
    fn valuations() {
        assert_eq!(
            valuation_at(&rf(&[0, 0, 1], &[1, 1]), &Place::at_int(0)).unwrap(),
            2
        );
        assert_eq!(
            valuation_at(&RationalFunction::t(), &Place::Infinity).unwrap(),
            -1
        );
        let p = Place::finite(&QPoly::from_ints(&[1, 0, 1])).unwrap();
        // (t^2+1)/(t-1)^3
        assert_eq!(
            valuation_at(&rf(&[1, 0, 1], &[-1, 3, -3, 1]), &p).unwrap(),
            1
        );
        assert!(valuation_at(&RationalFunction::zero(), &p).is_err());
    }

    #[test]
    fn bad_places_examples() {
        let s = compute_bad_places(&split_quartic()).unwrap();
        assert_eq!(s.to_string(), "{(t), (t - 1), (t + 1), inf}");
        let s = compute_bad_places(&kp(&[&[0, -1], &[0], &[0], &[0], &[1]])).unwrap();
        assert_eq!(s.to_string(), "{(t), inf}");
        let s = compute_bad_places(&kp(&[&[1], &[0], &[1], &[0], &[1]])).unwrap();
        assert_eq!(s.to_string(), "{inf}");
        assert!(matches!(
            compute_bad_places(&kp(&[&[0, -1], &[0], &[0], &[1]])),
            Err(Error::DegenerateModel(_))
        ));
    }

    #[test]
    fn split_fiber_lifts_exactly() {
        let f = split_quartic();
        let pts = local_splitting(&f, &Place::at_int(3), 8).unwrap();
        assert_eq!(pts.len(), 4);
        let shown: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
        assert_eq!(
            shown,
            [
                "(t - 3)[x]",
                "(t - 3)[x - 1]",
                "(t - 3)[x - 3]",
                "(t - 3)[x - 4]"
            ]
        );
        // the lift over x - 3 is t = 3 + s
        let root = pts[2].root();
        let k = pts[2].field();
        assert_eq!(k.as_rational(&root.coeffs()[0]), Some(rat(3)));
        assert_eq!(k.as_rational(&root.coeffs()[1]), Some(rat(1)));
        assert!(root.coeffs()[2..].iter().all(|c| c.is_zero()));
    }

    #[test]
    fn sqrt_t_lift_at_four() {
        // x^4 - (t+1)x^2 + t = (x^2 - 1)(x^2 - t)
        let f = kp(&[&[0, 1], &[0], &[-1, -1], &[0], &[1]]);
        let pts = local_splitting(&f, &Place::at_int(4), 8).unwrap();
        let shown: Vec<String> = pts.iter().map(|p| p.to_string()).collect();
        assert_eq!(
            shown,
            [
                "(t - 4)[x - 1]",
                "(t - 4)[x + 1]",
                "(t - 4)[x - 2]",
                "(t - 4)[x + 2]"
            ]
        );
        let p = &pts[2];
        let k = p.field();
        let c: Vec<_> = p.root().coeffs()[..3]
            .iter()
            .map(|c| k.as_rational(c).unwrap())
            .collect();
        assert_eq!(c, [rat(2), ratio(1, 4), ratio(-1, 64)]);
        assert!(p.residual().unwrap().is_undetermined());
    }

    #[test]
    fn quartic_root_of_t_at_one() {
        let f = kp(&[&[0, -1], &[0], &[0], &[0], &[1]]);
        let pts = local_splitting(&f, &Place::at_int(1), 8).unwrap();
        let degs: Vec<usize> = pts.iter().map(|p| p.relative_degree()).collect();
        assert_eq!(degs, [1, 1, 2]);
        // alpha^2 - t vanishes to order 1 at the point over x - 1
        let ell = [
            rf(&[0, -1], &[1]),
            RationalFunction::zero(),
            RationalFunction::one(),
        ];
        assert_eq!(valuation_of_poly_at_point(&ell, &pts[0], 512).unwrap(), 1);
        assert_eq!(
            valuation_of_poly_at_point(&[RationalFunction::from_int(5)], &pts[2], 512).unwrap(),
            0
        );
    }

    #[test]
    fn degree_two_place() {
        // f = x^4 - t at t^2 + 1: residue field Q(i), f0 = x^4 - u
        let f = kp(&[&[0, -1], &[0], &[0], &[0], &[1]]);
        let p = Place::finite(&QPoly::from_ints(&[1, 0, 1])).unwrap();
        let pts = local_splitting(&f, &p, 8).unwrap();
        let total: usize = pts.iter().map(|p| p.relative_degree()).sum();
        assert_eq!(total, 4);
        for q in &pts {
            assert!(q.residual().unwrap().is_undetermined());
        }
    }

    #[test]
    fn bad_place_rejected() {
        let f = split_quartic();
        assert!(matches!(
            local_splitting(&f, &Place::at_int(0), 8),
            Err(Error::BadReduction { .. })
        ));
        assert!(matches!(
            local_splitting(&f, &Place::Infinity, 8),
            Err(Error::BadPlace { .. })
        ));
    }
}

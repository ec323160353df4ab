mod common;

use brauer2_core::arith::{
    is_square_in_k, kring, qring, squarefree_part, KPoly, Mode, QPoly, RationalFunction,
    SquareClass,
};
use brauer2_core::brauer::{filter_one, FilterVerdict};
use brauer2_core::etale::{
    in_kernel_of_norm, is_s_unramified, normalize, valuations_above, x_minus_alpha, AffineDivisor,
    EtaleElement,
};
use brauer2_core::places::{valuation_at, Place};
use brauer2_core::surface::Surface;
use common::*;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn qpoly(max_deg: usize) -> impl Strategy<Value = QPoly> {
    prop::collection::vec(-6i64..=6, 1..=max_deg + 1)
        .prop_map(|c| QPoly::from_ints(&c))
        .prop_filter("nonzero", |p| !p.is_zero())
}

fn rfunc() -> impl Strategy<Value = RationalFunction> {
    (qpoly(3), qpoly(2)).prop_map(|(n, d)| RationalFunction::new(n, d))
}

fn place() -> impl Strategy<Value = Place> {
    any::<u64>().prop_map(|seed| random_place(&mut ChaCha8Rng::seed_from_u64(seed)))
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Strict), Just(Mode::Geometric)]
}

/// `(x^2 + x + 1)^2 + t x (x - 1)(x - 2)(x - 3)`, with the rational points
/// `(c, c^2 + c + 1)` for `c = 0, 1, 2, 3`.
fn pointed_surface() -> Surface {
    let ring = kring();
    let base = KPoly::new(vec![rf(&[1]), rf(&[1]), rf(&[1])]);
    let roots: Vec<RationalFunction> = (0..4).map(|c| rf(&[c])).collect();
    let quartic = with_roots(&RationalFunction::t(), &roots);
    Surface::new(ring.add(&ring.mul(&base, &base), &quartic)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn squarefree_part_ignores_squares(p in qpoly(4), q in qpoly(3)) {
        let ring = qring();
        let pq2 = ring.mul(&p, &ring.mul(&q, &q));
        let lhs = squarefree_part(&pq2).unwrap();
        let rhs = squarefree_part(&ring.mul(&p, &q)).unwrap();
        // the squarefree part of p q^2 is that of p q
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn square_test_matches_class(a in rfunc(), b in rfunc(), m in mode()) {
        let (sq, w) = is_square_in_k(&(&a * &a), m).unwrap();
        prop_assert!(sq);
        let w = w.unwrap();
        let ratio = &(&w * &w) / &(&a * &a);
        prop_assert!(ratio.is_one() || (m == Mode::Geometric && ratio.is_constant()));
        let (sq, _) = is_square_in_k(&b, m).unwrap();
        prop_assert_eq!(sq, SquareClass::of_k(&b, m).unwrap().is_identity());
    }

    #[test]
    fn norm_is_multiplicative(seed in any::<u64>(), which in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let surfaces: Vec<Surface> = split_surfaces().into_iter().chain(quartic_surfaces()).collect();
        let alg = surfaces[which].algebra();
        let (a, b) = if alg.is_split() {
            (split_unit(&mut rng), split_unit(&mut rng))
        } else {
            (general_unit(&mut rng, alg), general_unit(&mut rng, alg))
        };
        let ab = alg.mul(&a, &b).unwrap();
        prop_assert_eq!(alg.norm(&ab).unwrap(), &alg.norm(&a).unwrap() * &alg.norm(&b).unwrap());
        if alg.is_split() {
            let g = alg.to_general(&a).unwrap();
            prop_assert_eq!(alg.norm(&g).unwrap(), alg.norm(&a).unwrap());
        }
    }

    #[test]
    fn class_ignores_representative(seed in any::<u64>(), which in 0usize..3, m in mode()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = split_surfaces().swap_remove(which);
        let alg = s.algebra();
        let l = split_kernel_element(&mut rng);
        let mu = split_unit(&mut rng);
        let scalar = small_rf(&mut rng, 2);
        let l2 = alg.scale(&alg.mul(&l, &alg.square(&mu).unwrap()).unwrap(), &scalar);
        let c1 = normalize(alg, &l, m).unwrap();
        let c2 = normalize(alg, &l2, m).unwrap();
        prop_assert_eq!(&c1, &c2);
        let s = s.with_mode(m);
        prop_assert_eq!(
            is_s_unramified(&s, &c1).unwrap().is_unramified(),
            is_s_unramified(&s, &c2).unwrap().is_unramified()
        );
    }

    #[test]
    fn x_minus_alpha_lands_in_kernel(
        mults in prop::collection::vec(-2i64..=2, 4),
        signs in prop::collection::vec(any::<bool>(), 4),
        m in mode(),
    ) {
        prop_assume!(mults.iter().sum::<i64>() % 2 == 0);
        let s = pointed_surface();
        let mut d = AffineDivisor::new();
        for (c, (n, pos)) in mults.iter().zip(&signs).enumerate() {
            let c = c as i64;
            let y = rf(&[if *pos { 1 } else { -1 } * (c * c + c + 1)]);
            d = d.add(rf(&[c]), y, *n);
        }
        let k = x_minus_alpha(s.algebra(), &d, m).unwrap();
        prop_assert!(in_kernel_of_norm(s.algebra(), k.rep(), m).unwrap().is_in_kernel());
    }

    #[test]
    fn valuation_is_additive(a in rfunc(), b in rfunc(), v in place()) {
        let vab = valuation_at(&(&a * &b), &v).unwrap();
        prop_assert_eq!(vab, valuation_at(&a, &v).unwrap() + valuation_at(&b, &v).unwrap());
        let inf = Place::Infinity;
        prop_assert_eq!(
            valuation_at(&(&a * &b), &inf).unwrap(),
            valuation_at(&a, &inf).unwrap() + valuation_at(&b, &inf).unwrap()
        );
    }

    #[test]
    fn point_valuations_sum_to_norm_valuation(seed in any::<u64>(), which in 0usize..6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let surfaces: Vec<Surface> = split_surfaces().into_iter().chain(quartic_surfaces()).collect();
        let s = &surfaces[which];
        let alg = s.algebra();
        let l = if alg.is_split() { split_unit(&mut rng) } else { general_unit(&mut rng, alg) };
        let n = alg.norm(&l).unwrap();
        // a place dividing the norm when possible, so the sum is nontrivial
        let mut places = brauer2_core::places::support(&n);
        places.retain(|p| !p.is_infinity() && !s.bad_places().contains(p));
        loop {
            let p = random_place(&mut rng);
            if !s.bad_places().contains(&p) {
                places.push(p);
                break;
            }
        }
        let v = &places[(seed as usize) % places.len()];
        let total: i64 = valuations_above(s, &l, v)
            .unwrap()
            .iter()
            .map(|(p, e)| p.relative_degree() as i64 * e)
            .sum();
        prop_assert_eq!(total, valuation_at(&n, v).unwrap());
    }

    #[test]
    fn fail_certificates_are_sound(seed in any::<u64>(), which in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = split_surfaces().swap_remove(which);
        let class = normalize(s.algebra(), &split_kernel_element(&mut rng), s.mode()).unwrap();
        match filter_one(&s, &class).unwrap() {
            FilterVerdict::Fail(cert) => {
                prop_assert!(!s.bad_places().contains(&cert.place));
                prop_assert!(!cert.residue.is_identity());
                prop_assert!(cert.recheck(&s, &class).unwrap());
            }
            FilterVerdict::Pass { checked } => {
                prop_assert!(is_s_unramified(&s, &class).unwrap().is_unramified());
                prop_assert!(checked.iter().all(|p| !s.bad_places().contains(p)));
            }
        }
    }
}

#[test]
fn planted_element_is_a_kernel_element() {
    let s = main_surface();
    let e = EtaleElement::split([rf(&[-2, 1]), rf(&[-2, 1]), rf(&[1]), rf(&[1])]);
    assert!(in_kernel_of_norm(s.algebra(), &e, Mode::Strict)
        .unwrap()
        .is_in_kernel());
}

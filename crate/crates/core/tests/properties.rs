//! Property tests for the ring engine and the bundle constructors.

use cobtower::charnum::{closed_form_bf_milnor, milnor_number};
use cobtower::scalar::Scalar;
use cobtower::variety::Variety;
use cobtower::{RingClass, TowerRing};
use num_bigint::BigInt;
use proptest::prelude::*;

fn ring_for(idx: usize) -> TowerRing {
    match idx {
        0 => Variety::bounded_flag(3).ring().clone(),
        1 => Variety::projective_space(3).ring().clone(),
        2 => Variety::x_variety(2, 2).unwrap().ring().clone(),
        _ => Variety::product(&Variety::bounded_flag(2), &Variety::projective_space(2))
            .unwrap()
            .ring()
            .clone(),
    }
}

/// Raw term data: exponent seeds plus small coefficients. Folded into a
/// valid class of weight at most 6 for whichever ring is under test.
fn raw_terms() -> impl Strategy<Value = Vec<(Vec<u32>, i64)>> {
    prop::collection::vec(
        (prop::collection::vec(0u32..4, 6), -9i64..=9),
        0..6,
    )
}

fn build(ring: &TowerRing, raw: &[(Vec<u32>, i64)]) -> RingClass {
    let ranks: Vec<u32> = (0..ring.stage_count()).map(|k| ring.stage(k).rank).collect();
    let terms = raw.iter().map(|(seed, coeff)| {
        let mut weight = 0u32;
        let exp: Vec<u32> = ranks
            .iter()
            .enumerate()
            .map(|(k, &rank)| {
                let e = (seed[k % seed.len().max(1)] % rank).min(6u32.saturating_sub(weight));
                weight += e;
                e
            })
            .collect();
        (exp, Scalar::from_int(*coeff))
    });
    ring.class_from_terms(terms)
}

proptest! {
    #[test]
    fn ring_axioms(idx in 0..4usize, ra in raw_terms(), rb in raw_terms(), rc in raw_terms()) {
        let ring = ring_for(idx);
        let a = build(&ring, &ra);
        let b = build(&ring, &rb);
        let c = build(&ring, &rc);
        prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
        prop_assert_eq!(
            a.mul(&b).unwrap().mul(&c).unwrap(),
            a.mul(&b.mul(&c).unwrap()).unwrap()
        );
        prop_assert_eq!(
            a.mul(&b.add(&c).unwrap()).unwrap(),
            a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap()
        );
    }

    #[test]
    fn invert_unit_is_inverse(idx in 0..4usize, ra in raw_terms(), negative in any::<bool>()) {
        let ring = ring_for(idx);
        let a = build(&ring, &ra);
        let sign = if negative { -1 } else { 1 };
        let unit = a
            .sub(&ring.constant(a.constant_term()))
            .unwrap()
            .add(&ring.constant(Scalar::from_int(sign)))
            .unwrap();
        prop_assert!(unit.mul(&unit.invert_unit().unwrap()).unwrap().is_one());
    }

    #[test]
    fn normal_form_idempotent(idx in 0..4usize, ra in raw_terms()) {
        let ring = ring_for(idx);
        let a = build(&ring, &ra);
        prop_assert_eq!(ring.class_from_terms(a.unpacked_terms()), a);
    }

    #[test]
    fn integrate_factors_over_products(ra in raw_terms(), rb in raw_terms()) {
        let left = Variety::bounded_flag(2);
        let right = Variety::projective_space(2);
        let product = left.ring().product(right.ring()).unwrap();
        let a = build(left.ring(), &ra);
        let b = build(right.ring(), &rb);
        let lifted = product
            .embed_prefix(&a)
            .unwrap()
            .mul(&product.embed_at(&b, left.ring().stage_count()).unwrap())
            .unwrap();
        prop_assert_eq!(lifted.integrate(), a.integrate() * b.integrate());
    }

    /// Parity vanishing and the closed form for bounded flag bundles:
    /// random weight-1 line classes with coefficients in [-2, 2] over the
    /// bases point, BF_1, BF_2, CP^2.
    #[test]
    fn bf_bundle_milnor_matches_closed_form(
        base_idx in 0..4usize,
        coeffs in prop::collection::vec(prop::collection::vec(-2i64..=2, 2), 2..=4),
    ) {
        let base = match base_idx {
            0 => Variety::point(),
            1 => Variety::bounded_flag(1),
            2 => Variety::bounded_flag(2),
            _ => Variety::projective_space(2),
        };
        let ring = base.ring();
        let lines: Vec<RingClass> = coeffs
            .iter()
            .map(|cs| {
                let mut acc = ring.zero();
                for (k, c) in cs.iter().enumerate().take(ring.stage_count()) {
                    acc = acc
                        .add(&ring.generator(k).scalar_mul(&Scalar::from_int(*c)))
                        .unwrap();
                }
                acc
            })
            .collect();
        let v = Variety::bf_bundle(&base, &lines).unwrap();
        let engine = milnor_number(&v);
        let closed = closed_form_bf_milnor(&base, &lines).unwrap();
        prop_assert_eq!(engine.clone(), closed);
        if v.dim() % 2 == 0 {
            prop_assert_eq!(engine, Scalar::from_bigint(BigInt::from(0)));
        }
    }
}

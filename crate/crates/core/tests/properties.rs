use cering::algebra::{Algebra, AnyRing, Element, FiniteRing};
use cering::ce::{ce_witness, ce_witness_finite, is_ce_subspace, Decision};
use cering::gallery::{catalog, GallerySpec};
use cering::invariants::{center, exhaustive_radical, radical, socle_central, socle_right, InvariantSet};
use cering::suite::basis_change_preserves_ce;
use proptest::prelude::*;

fn rings() -> Vec<(String, AnyRing)> {
    catalog().iter().map(|s: &GallerySpec| (s.name(), s.build(1 << 20).unwrap())).collect()
}

fn small_algebras(max_dim: usize) -> Vec<Algebra> {
    rings()
        .into_iter()
        .filter_map(|(_, r)| match r {
            AnyRing::Algebra(a) if a.dim() <= max_dim => Some(a),
            _ => None,
        })
        .collect()
}

fn finite_rings(max_order: u128) -> Vec<FiniteRing> {
    rings()
        .into_iter()
        .filter_map(|(_, r)| match r {
            AnyRing::Algebra(a) if a.field().characteristic() > 0 => a.to_finite_ring().ok(),
            AnyRing::Finite(f) => Some(f),
            _ => None,
        })
        .filter(|f| f.order() <= max_order)
        .collect()
}

/// An algebra from the gallery together with `k` random elements.
fn algebra_with_elements(max_dim: usize, k: usize) -> impl Strategy<Value = (Algebra, Vec<Element>)> {
    let algs = small_algebras(max_dim);
    prop::sample::select(algs).prop_flat_map(move |a| {
        let n = a.dim();
        let elems = prop::collection::vec(prop::collection::vec(-3i64..=3, n), k);
        (Just(a.clone()), elems).prop_map(|(a, vs)| {
            let es = vs.iter().map(|v| a.element_i64(v).unwrap()).collect();
            (a, es)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 96, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn product_is_bilinear_and_associative((alg, es) in algebra_with_elements(16, 3)) {
        let (a, b, c) = (&es[0], &es[1], &es[2]);
        let m = |x: &Element, y: &Element| alg.mul(x, y).unwrap();
        prop_assert_eq!(m(&a.add(b), c), m(a, c).add(&m(b, c)));
        prop_assert_eq!(m(a, &b.add(c)), m(a, b).add(&m(a, c)));
        prop_assert_eq!(m(&m(a, b), c), m(a, &m(b, c)));
        prop_assert_eq!(m(&alg.one(), a), a.clone());
    }

    #[test]
    fn regular_representation_reverses_products((alg, es) in algebra_with_elements(16, 2)) {
        let rep = |x: &Element| alg.regular_representation(x).unwrap();
        let xy = alg.mul(&es[0], &es[1]).unwrap();
        prop_assert_eq!(rep(&xy), rep(&es[1]).mul(&rep(&es[0])).unwrap());
    }

    #[test]
    fn witnesses_are_sound((alg, es) in algebra_with_elements(16, 1)) {
        let a = &es[0];
        prop_assume!(!a.is_zero());
        let c = match center(&AnyRing::Algebra(alg.clone())).unwrap() {
            cering::invariants::Submodule::Field(s) => s,
            _ => unreachable!(),
        };
        match ce_witness(&alg, a).unwrap() {
            Some((x, y)) => {
                prop_assert!(c.contains_vector(x.coords()));
                prop_assert!(c.contains_vector(y.coords()));
                prop_assert!(!y.is_zero());
                prop_assert_eq!(alg.mul(a, &x).unwrap(), y);
            }
            None => {
                let ce = is_ce_subspace(&AnyRing::Algebra(alg.clone())).unwrap().decision;
                prop_assert!(ce != Decision::True);
            }
        }
    }

    #[test]
    fn finite_witnesses_are_sound(ring in prop::sample::select(finite_rings(1 << 12)), index in any::<u64>()) {
        let a = ring.element_at(index as u128 % ring.order());
        prop_assume!(!FiniteRing::is_zero(&a));
        let commutes = |z: &[u64]| (0..ring.rank()).all(|i| FiniteRing::is_zero(&ring.commutator(z, &ring.generator(i))));
        if let Some((x, y)) = ce_witness_finite(&ring, &a).unwrap() {
            prop_assert!(commutes(&x) && commutes(&y));
            prop_assert!(!FiniteRing::is_zero(&y));
            prop_assert_eq!(ring.mul(&a, &x), y);
        } else {
            let ce = is_ce_subspace(&AnyRing::Finite(ring.clone())).unwrap().decision;
            prop_assert!(ce != Decision::True);
        }
    }

    #[test]
    fn ce_survives_basis_change(alg in prop::sample::select(small_algebras(8)), seed in any::<u64>()) {
        prop_assert!(basis_change_preserves_ce(&alg, seed).unwrap());
    }
}

#[test]
fn right_socle_lies_in_central_socle() {
    for (name, ring) in rings() {
        let sr = socle_right(&ring).unwrap();
        let sc = socle_central(&ring).unwrap();
        assert!(sc.contains(&sr).unwrap(), "{name}");
    }
}

#[test]
fn structural_radical_matches_unit_test() {
    for ring in finite_rings(1 << 12) {
        let structural = radical(&AnyRing::Finite(ring.clone())).unwrap();
        let brute = exhaustive_radical(&ring, 1 << 12).unwrap();
        assert_eq!(structural.order(), brute.order());
        assert!(structural.contains(&brute).unwrap() && brute.contains(&structural).unwrap());
    }
}

#[test]
fn center_radical_is_the_nilpotent_part_of_the_center() {
    for ring in finite_rings(1 << 12) {
        let inv = InvariantSet::compute(&AnyRing::Finite(ring.clone())).unwrap();
        let nilpotent = |x: &Vec<u64>| {
            let mut p = x.clone();
            for _ in 0..=ring.rank() * 8 {
                if FiniteRing::is_zero(&p) {
                    return true;
                }
                p = ring.mul(&p, x);
            }
            false
        };
        let count = cering::invariants::finite::exhaustive_center(&ring, 1 << 12)
            .unwrap()
            .iter()
            .filter(|x| nilpotent(x))
            .count();
        assert_eq!(inv.center_radical.order(), Some(count as u128));
    }
}

#[test]
fn gallery_json_round_trips() {
    for (name, ring) in rings() {
        let text = ring.to_json();
        let back = AnyRing::from_json(&text).unwrap();
        assert_eq!(back, ring, "{name}");
        assert_eq!(back.to_json(), text, "{name}");
    }
}

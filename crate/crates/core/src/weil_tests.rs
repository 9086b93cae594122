use std::sync::Arc;

use crate::linalg::Echelon;
use crate::rng::Rng;
use crate::scalar::Scalar;
use crate::weil::*;

pub(crate) fn xi(a: &Arc<WeilAlgebra>, i: usize) -> WeilElement {
    WeilElement::generator(a, i).unwrap()
}

/// Random element with coefficients in the −3..3 box on a sparse support.
pub(crate) fn rand_element(a: &Arc<WeilAlgebra>, rng: &mut Rng) -> WeilElement {
    let mut out = WeilElement::zero(a);
    for idx in 0..a.dim() {
        if rng.below(2) == 0 {
            out = out
                .add(&WeilElement::from_coeffs(a, [(idx, Scalar::from_int(rng.int_in(-3, 3)))]))
                .unwrap();
        }
    }
    out
}

pub(crate) fn rand_homogeneous(a: &Arc<WeilAlgebra>, parity: Parity, rng: &mut Rng) -> WeilElement {
    let mut out = WeilElement::zero(a);
    for idx in 0..a.dim() {
        if a.parity_of(idx) == parity && rng.below(2) == 0 {
            out = out
                .add(&WeilElement::from_coeffs(a, [(idx, Scalar::from_int(rng.int_in(-3, 3)))]))
                .unwrap();
        }
    }
    out
}

#[test]
fn grassmann_zero_is_the_field() {
    let a = build_grassmann(0);
    assert_eq!(a.dim(), 1);
    assert_eq!(a.nilpotency(), 1);
    assert!(WeilElement::unit(&a).mul(&WeilElement::unit(&a)).unwrap() == WeilElement::unit(&a));
}

#[test]
fn anticommuting_generators() {
    let a = build_grassmann(2);
    let x1 = xi(&a, 1);
    let x2 = xi(&a, 2);
    let x12 = x1.mul(&x2).unwrap();
    assert_eq!(x12.to_string(), "xi1*xi2");
    assert_eq!(x2.mul(&x1).unwrap(), x12.neg());
    assert!(x1.mul(&x1).unwrap().is_zero());
}

#[test]
fn dual_number_extension() {
    let l0 = build_grassmann(0);
    let d0 = adjoin_dual_number(&l0).unwrap();
    assert_eq!(d0.dim(), 2);
    let e = WeilElement::eps(&d0).unwrap();
    assert!(e.mul(&e).unwrap().is_zero());

    let l1 = build_grassmann(1);
    let d1 = adjoin_dual_number(&l1).unwrap();
    let e = WeilElement::eps(&d1).unwrap();
    let x = xi(&d1, 1);
    assert_eq!(e.mul(&x).unwrap(), x.mul(&e).unwrap());

    // drop-eps projection of 2 + 3ε + ξ₁ε is 2
    let v = WeilElement::scalar(&d1, Scalar::from_int(2))
        .add(&e.scale(&Scalar::from_int(3)))
        .unwrap()
        .add(&x.mul(&e).unwrap())
        .unwrap();
    let p = WeilMorphism::dual_projection(&d1, &l1).unwrap();
    assert_eq!(p.apply(&v).unwrap(), WeilElement::scalar(&l1, Scalar::from_int(2)));

    // p ∘ i = id on random elements
    let i = WeilMorphism::dual_inclusion(&l1, &d1).unwrap();
    let mut rng = Rng::new(7);
    for _ in 0..50 {
        let w = rand_element(&l1, &mut rng);
        assert_eq!(p.apply(&i.apply(&w).unwrap()).unwrap(), w);
    }

    assert!(adjoin_dual_number(&d1).is_err());
}

#[test]
fn product_examples() {
    let a = build_grassmann(2);
    let one = WeilElement::unit(&a);
    let x1 = xi(&a, 1);
    let x2 = xi(&a, 2);
    let lhs = one.add(&x1).unwrap().mul(&one.add(&x2).unwrap()).unwrap();
    let expect = one
        .add(&x1)
        .unwrap()
        .add(&x2)
        .unwrap()
        .add(&x1.mul(&x2).unwrap())
        .unwrap();
    assert_eq!(lhs, expect);

    let p = x1.add(&x2).unwrap().mul(&x1.sub(&x2).unwrap()).unwrap();
    assert_eq!(p, x1.mul(&x2).unwrap().scale(&Scalar::from_int(-2)));
}

#[test]
fn supercommutativity_and_odd_squares() {
    let a = build_grassmann(3);
    let mut rng = Rng::new(11);
    for _ in 0..200 {
        for (px, py) in [
            (Parity::Even, Parity::Even),
            (Parity::Even, Parity::Odd),
            (Parity::Odd, Parity::Even),
            (Parity::Odd, Parity::Odd),
        ] {
            let x = rand_homogeneous(&a, px, &mut rng);
            let y = rand_homogeneous(&a, py, &mut rng);
            let xy = x.mul(&y).unwrap();
            let yx = y.mul(&x).unwrap();
            let signed = if px.sign_product(py) < 0 { yx.neg() } else { yx };
            assert_eq!(xy, signed);
        }
        let z = rand_homogeneous(&a, Parity::Odd, &mut rng);
        assert!(z.mul(&z).unwrap().is_zero());
    }
}

#[test]
fn associativity_exhaustive_small() {
    for n in 0..=4 {
        let a = build_grassmann(n);
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                for k in 0..a.dim() {
                    let e = |t| WeilElement::from_coeffs(&a, [(t, Scalar::one())]);
                    let left = e(i).mul(&e(j)).unwrap().mul(&e(k)).unwrap();
                    let right = e(i).mul(&e(j).mul(&e(k)).unwrap()).unwrap();
                    assert_eq!(left, right);
                }
            }
        }
    }
}

#[test]
fn associativity_random_triples() {
    let a = adjoin_dual_number(&build_grassmann(2)).unwrap();
    let mut rng = Rng::new(500);
    for _ in 0..500 {
        let x = rand_element(&a, &mut rng);
        let y = rand_element(&a, &mut rng);
        let z = rand_element(&a, &mut rng);
        assert_eq!(
            x.mul(&y).unwrap().mul(&z).unwrap(),
            x.mul(&y.mul(&z).unwrap()).unwrap()
        );
    }
}

#[test]
fn augmentation_is_a_morphism() {
    let a = build_grassmann(2);
    let v = WeilElement::scalar(&a, Scalar::from_int(3))
        .add(&xi(&a, 1).mul(&xi(&a, 2)).unwrap().scale(&Scalar::from_int(5)))
        .unwrap();
    assert_eq!(v.augment(), Scalar::from_int(3));

    let mut rng = Rng::new(3);
    for _ in 0..100 {
        let x = rand_element(&a, &mut rng);
        let y = rand_element(&a, &mut rng);
        assert_eq!(x.mul(&y).unwrap().augment(), &x.augment() * &y.augment());
    }
    let c = Scalar::ratio(-7, 3).unwrap();
    assert_eq!(WeilElement::scalar(&a, c.clone()).augment(), c);
}

#[test]
fn splitting_and_nilpotency() {
    let a = adjoin_dual_number(&build_grassmann(2)).unwrap();
    let mut rng = Rng::new(5);
    for _ in 0..100 {
        let x = rand_element(&a, &mut rng);
        let head = WeilElement::scalar(&a, x.augment());
        let tail = x.nil_part();
        assert_eq!(head.add(&tail).unwrap(), x);
        assert!(tail.augment().is_zero());
        assert!(tail.pow(a.nilpotency()).unwrap().is_zero());
    }
}

/// Independent oracle for ideal powers: brute-force span of all products of
/// `n` generators with an arbitrary basis monomial.
fn ideal_power_oracle(a: &Arc<WeilAlgebra>, gens: &[WeilElement], n: usize) -> Echelon {
    let mut tuples: Vec<WeilElement> = vec![WeilElement::unit(a)];
    for _ in 0..n {
        tuples = tuples
            .iter()
            .flat_map(|t| gens.iter().map(move |g| t.mul(g).unwrap()))
            .collect();
    }
    let mut ech = Echelon::new(a.dim());
    for t in &tuples {
        for m in 0..a.dim() {
            let mono = WeilElement::from_coeffs(a, [(m, Scalar::one())]);
            ech.insert(t.mul(&mono).unwrap().to_dense());
        }
    }
    ech
}

fn spans_equal(a: &Arc<WeilAlgebra>, basis: &[WeilElement], oracle: &Echelon) -> bool {
    let mut ech = Echelon::new(a.dim());
    for v in basis {
        ech.insert(v.to_dense());
    }
    basis.iter().all(|v| oracle.contains(&v.to_dense()))
        && ech.rank() == oracle.rank()
}

#[test]
fn ideal_powers_match_enumeration_oracle() {
    let l3 = build_grassmann(3);
    let gens = vec![xi(&l3, 1), xi(&l3, 2)];
    let b2 = ideal_power_basis(&l3, &gens, 2).unwrap();
    assert!(spans_equal(&l3, &b2, &ideal_power_oracle(&l3, &gens, 2)));
    // span{ξ1ξ2, ξ1ξ2ξ3}
    assert_eq!(b2.len(), 2);

    let l2 = build_grassmann(2);
    let gens2 = vec![xi(&l2, 1), xi(&l2, 2)];
    assert!(ideal_power_basis(&l2, &gens2, 3).unwrap().is_empty());

    let g1 = vec![xi(&l2, 1)];
    let b1 = ideal_power_basis(&l2, &g1, 1).unwrap();
    assert!(spans_equal(&l2, &b1, &ideal_power_oracle(&l2, &g1, 1)));
    assert_eq!(b1.len(), 2); // span{ξ1, ξ1ξ2}
}

#[test]
fn ideal_filtration_is_decreasing() {
    let a = build_grassmann(3);
    let mut rng = Rng::new(23);
    for _ in 0..20 {
        let gens = vec![
            rand_homogeneous(&a, Parity::Odd, &mut rng),
            rand_homogeneous(&a, Parity::Odd, &mut rng),
        ];
        if gens.iter().all(WeilElement::is_zero) {
            continue;
        }
        let mut previous: Option<Echelon> = None;
        for n in 1..=a.nilpotency() + 1 {
            let basis = ideal_power_basis(&a, &gens, n).unwrap();
            if let Some(prev) = &previous {
                assert!(basis.iter().all(|v| prev.contains(&v.to_dense())));
            }
            let mut ech = Echelon::new(a.dim());
            for v in &basis {
                ech.insert(v.to_dense());
            }
            if n > a.nilpotency() {
                assert!(basis.is_empty());
            }
            previous = Some(ech);
        }
    }
}

#[test]
fn quotient_by_ideal_square() {
    let a = build_grassmann(2);
    let gens = vec![xi(&a, 1), xi(&a, 2)];
    let (q, proj) = quotient_algebra(&a, &gens, 2).unwrap();
    assert_eq!(q.dim(), 3); // {1, ξ1, ξ2}
    assert!(proj.apply(&xi(&a, 1).mul(&xi(&a, 2)).unwrap()).unwrap().is_zero());

    // projection is an algebra morphism
    let mut rng = Rng::new(17);
    for _ in 0..100 {
        let x = rand_element(&a, &mut rng);
        let y = rand_element(&a, &mut rng);
        let lhs = proj.apply(&x).unwrap().mul(&proj.apply(&y).unwrap()).unwrap();
        let rhs = proj.apply(&x.mul(&y).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn quotient_by_odd_part_recovers_the_field() {
    let a = build_grassmann(2);
    let gens = vec![xi(&a, 1), xi(&a, 2)];
    let (q, proj) = quotient_algebra(&a, &gens, 1).unwrap();
    assert_eq!(q.dim(), 1);
    assert_eq!(q.nilpotency(), 1);
    let v = WeilElement::scalar(&a, Scalar::from_int(4)).add(&xi(&a, 1)).unwrap();
    assert_eq!(proj.apply(&v).unwrap().augment(), Scalar::from_int(4));
}

#[test]
fn quotient_rejects_bad_generators() {
    let a = build_grassmann(2);
    let mixed = WeilElement::unit(&a).add(&xi(&a, 1)).unwrap();
    assert!(quotient_algebra(&a, &[mixed], 1).is_err());
    let with_unit = WeilElement::unit(&a);
    assert!(quotient_algebra(&a, &[with_unit], 1).is_err());
}

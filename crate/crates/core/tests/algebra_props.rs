//! Property tests for the algebraic laws on Weil elements and operators.

use std::sync::Arc;

use proptest::prelude::*;

use shcp_core::scalar::Scalar;
use shcp_core::superlinear::{koszul_compose, AOperator, SuperMatrix, SuperSpace};
use shcp_core::weil::{adjoin_dual_number, build_grassmann, WeilAlgebra, WeilElement};

fn algebras() -> Vec<Arc<WeilAlgebra>> {
    vec![build_grassmann(3), adjoin_dual_number(&build_grassmann(2)).unwrap()]
}

fn element(algebra: &Arc<WeilAlgebra>, coeffs: &[i64]) -> WeilElement {
    WeilElement::from_coeffs(
        algebra,
        coeffs.iter().enumerate().map(|(i, &c)| (i, Scalar::from_int(c))),
    )
}

proptest! {
    #[test]
    fn multiplication_is_associative(
        a in prop::collection::vec(-3i64..=3, 8),
        b in prop::collection::vec(-3i64..=3, 8),
        c in prop::collection::vec(-3i64..=3, 8),
    ) {
        for algebra in algebras() {
            let (x, y, z) = (element(&algebra, &a), element(&algebra, &b), element(&algebra, &c));
            prop_assert_eq!(
                x.mul(&y).unwrap().mul(&z).unwrap(),
                x.mul(&y.mul(&z).unwrap()).unwrap()
            );
        }
    }

    #[test]
    fn supercommutativity_on_homogeneous_parts(
        a in prop::collection::vec(-3i64..=3, 8),
        b in prop::collection::vec(-3i64..=3, 8),
    ) {
        for algebra in algebras() {
            let x = element(&algebra, &a);
            let y = element(&algebra, &b);
            for (xp, sx) in [(x.even_part(), 1), (x.odd_part(), -1)] {
                for (yp, sy) in [(y.even_part(), 1), (y.odd_part(), -1)] {
                    let xy = xp.mul(&yp).unwrap();
                    let yx = yp.mul(&xp).unwrap();
                    let expect = if sx < 0 && sy < 0 { yx.neg() } else { yx };
                    prop_assert_eq!(xy, expect);
                }
            }
            let z = x.odd_part();
            prop_assert!(z.mul(&z).unwrap().is_zero());
        }
    }

    #[test]
    fn augmentation_is_an_algebra_morphism(
        a in prop::collection::vec(-3i64..=3, 8),
        b in prop::collection::vec(-3i64..=3, 8),
    ) {
        for algebra in algebras() {
            let x = element(&algebra, &a);
            let y = element(&algebra, &b);
            prop_assert_eq!(x.mul(&y).unwrap().augment(), &x.augment() * &y.augment());
            prop_assert_eq!(x.add(&y).unwrap().augment(), &x.augment() + &y.augment());
        }
    }

    #[test]
    fn unit_section_splits_off_the_nilradical(
        a in prop::collection::vec(-3i64..=3, 8),
    ) {
        for algebra in algebras() {
            let x = element(&algebra, &a);
            let head = WeilElement::scalar(&algebra, x.augment());
            let tail = x.nil_part();
            prop_assert_eq!(head.add(&tail).unwrap(), x);
            prop_assert!(tail.augment().is_zero());
            prop_assert!(tail.pow(algebra.nilpotency()).unwrap().is_zero());
        }
    }

    #[test]
    fn koszul_product_is_associative_and_unital(
        a in prop::collection::vec(-2i64..=2, 32),
        b in prop::collection::vec(-2i64..=2, 32),
        c in prop::collection::vec(-2i64..=2, 32),
    ) {
        let algebra = build_grassmann(3);
        let space = SuperSpace::new(1, 1);
        let op = |v: &[i64]| {
            let mut out = AOperator::zero(&algebra, &space);
            for i in 0..2 {
                for j in 0..2 {
                    let coeffs: Vec<i64> = v[(2 * i + j) * 8..(2 * i + j + 1) * 8].to_vec();
                    out = out
                        .add(&AOperator::from_term(
                            &element(&algebra, &coeffs),
                            &SuperMatrix::unit_entry(&space, i, j),
                        ))
                        .unwrap();
                }
            }
            out
        };
        let (s, t, u) = (op(&a), op(&b), op(&c));
        let left = koszul_compose(&koszul_compose(&s, &t).unwrap(), &u).unwrap();
        let right = koszul_compose(&s, &koszul_compose(&t, &u).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let id = AOperator::identity(&algebra, &space);
        prop_assert_eq!(koszul_compose(&id, &s).unwrap(), s.clone());
        prop_assert_eq!(koszul_compose(&s, &id).unwrap(), s);
    }
}

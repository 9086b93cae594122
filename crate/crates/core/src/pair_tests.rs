use crate::fixtures::*;
use crate::pair::{KFactor, PairMorphism, SHCPair};
use crate::rng::Rng;
use crate::scalar::Scalar;
use crate::superlinear::{SuperMatrix, SuperSpace};

#[test]
fn shipped_pairs_validate() {
    let report = gl11_pair().validate();
    assert!(report.passed(), "{report}");
    let report = heis_pair().validate();
    assert!(report.passed(), "{report}");
    let report = gl11_pair_two_kpoints().validate();
    assert!(report.passed(), "{report}");
}

#[test]
fn off_block_representation_fails_parity() {
    let sp = SuperSpace::new(1, 1);
    let e = |i, j| SuperMatrix::unit_entry(&sp, i, j);
    // Yp ↦ E12 + E21 is not an off-diagonal block matrix... it is; but it is
    // inhomogeneous for the bracket morphism with this table. Use Yp ↦ E12+E11
    // to hit the parity-block check itself.
    let mats = vec![e(0, 0), e(1, 1), e(0, 1).add(&e(0, 0)), e(1, 0)];
    let pair = SHCPair::new("bad", gl11_lie(), sp, mats, vec![("k".into(), gl11_kpoint())]).unwrap();
    let report = pair.validate();
    assert!(!report.passed());
    assert!(report.failures().any(|i| i.name.contains("parity blocks")));
}

#[test]
fn mixed_even_odd_image_fails() {
    // Yp ↦ E12 + E21 passes the parity-block check (it is an odd matrix)
    // but breaks the bracket table of gl(1|1)
    let sp = SuperSpace::new(1, 1);
    let e = |i, j| SuperMatrix::unit_entry(&sp, i, j);
    let mats = vec![e(0, 0), e(1, 1), e(0, 1).add(&e(1, 0)), e(1, 0)];
    let pair = SHCPair::new("bad2", gl11_lie(), sp, mats, vec![("k".into(), gl11_kpoint())]).unwrap();
    let report = pair.validate();
    assert!(!report.passed());
    assert!(report.failures().any(|i| i.name.contains("bracket morphism") || i.name.contains("odd squares")));
}

#[test]
fn shear_kpoint_fails() {
    let sp = SuperSpace::new(1, 1);
    let e = |i, j| SuperMatrix::unit_entry(&sp, i, j);
    let shear = SuperMatrix::from_rows(&sp, vec![vec![s(1), s(1)], vec![s(0), s(1)]]).unwrap();
    let mats = vec![e(0, 0), e(1, 1), e(0, 1), e(1, 0)];
    let pair = SHCPair::new("shear", gl11_lie(), sp, mats, vec![("k".into(), shear)]).unwrap();
    let report = pair.validate();
    assert!(!report.passed());
    assert!(report.failures().any(|i| i.name.contains("is even")));
    // conjugation stays inside span(ρg) here, so Ad exists but breaks parity
    assert!(report.failures().any(|i| i.name.contains("preserves parity")));
}

#[test]
fn adjoint_action_examples() {
    let pair = gl11_pair();
    let dim = pair.lie().dim();
    let unit = |b: usize| {
        let mut v = vec![Scalar::zero(); dim];
        v[b] = Scalar::one();
        v
    };

    // Ad(diag(2,1))(Yp) = 2·Yp
    let got = pair.adjoint_action(&[KFactor::Gen(0)], &unit(2)).unwrap();
    let mut want = vec![Scalar::zero(); dim];
    want[2] = Scalar::from_int(2);
    assert_eq!(got, want);

    // empty word acts as the identity
    for b in 0..dim {
        assert_eq!(pair.adjoint_action(&[], &unit(b)).unwrap(), unit(b));
    }

    // Ad(w) is a bracket automorphism for random words
    let mut rng = Rng::new(41);
    for _ in 0..200 {
        let word: Vec<KFactor> = (0..rng.below(4))
            .map(|_| if rng.flip() { KFactor::Gen(0) } else { KFactor::Inv(0) })
            .collect();
        let x: Vec<Scalar> = (0..dim).map(|_| Scalar::from_int(rng.int_in(-3, 3))).collect();
        let y: Vec<Scalar> = (0..dim).map(|_| Scalar::from_int(rng.int_in(-3, 3))).collect();
        let lhs = pair.adjoint_action(&word, &pair.lie().bracket_vec(&x, &y)).unwrap();
        let rhs = pair.lie().bracket_vec(
            &pair.adjoint_action(&word, &x).unwrap(),
            &pair.adjoint_action(&word, &y).unwrap(),
        );
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn unstable_conjugation_is_reported() {
    // diag(2,1) does not normalize span{I, E12+E21} in the Heisenberg pair
    let sp = SuperSpace::new(1, 1);
    let ident = SuperMatrix::identity(&sp);
    let y = SuperMatrix::unit_entry(&sp, 0, 1).add(&SuperMatrix::unit_entry(&sp, 1, 0));
    let pair = SHCPair::new(
        "heis-bad",
        heis_lie(),
        sp,
        vec![ident, y],
        vec![("k".into(), gl11_kpoint())],
    )
    .unwrap();
    let report = pair.validate();
    assert!(!report.passed());
    assert!(report.failures().any(|i| i.name.contains("stabilizes")));
    let z = vec![Scalar::zero(), Scalar::one()];
    assert!(pair.adjoint_action(&[KFactor::Gen(0)], &z).is_err());
}

#[test]
fn identity_morphism_validates() {
    let pair = gl11_pair();
    let report = PairMorphism::identity(&pair).validate();
    assert!(report.passed(), "{report}");
}

#[test]
fn odd_rescale_breaks_brackets() {
    // ω = 2 on the odd basis, identity on the even part, Ω₊ = id:
    // [Yp,Ym] ↦ X1+X2 but [2Yp,2Ym] = 4(X1+X2)
    let pair = gl11_pair();
    let mut m = PairMorphism::identity(&pair);
    for b in 2..4 {
        for c in m.omega[b].iter_mut() {
            *c = &*c * &Scalar::from_int(2);
        }
    }
    let report = m.validate();
    assert!(!report.passed());
    assert!(report.failures().any(|i| i.name.contains("bracket morphism")));
    assert!(report
        .failures()
        .any(|i| i.witness.as_deref() == Some("(Yp, Ym)")));
}

#[test]
fn diagonal_swap_automorphism_validates() {
    // X1↔X2, Yp↔Ym, k1 = diag(2,1) ↦ k2 = diag(1,2)
    let pair = gl11_pair_two_kpoints();
    let dim = pair.lie().dim();
    let unit = |b: usize| {
        let mut v = vec![Scalar::zero(); dim];
        v[b] = Scalar::one();
        v
    };
    let m = PairMorphism {
        source: pair.clone(),
        target: pair.clone(),
        omega: vec![unit(1), unit(0), unit(3), unit(2)],
        omega_plus: vec![vec![KFactor::Gen(1)], vec![KFactor::Gen(0)]],
        d_omega_plus: vec![unit(1), unit(0)],
    };
    let report = m.validate();
    assert!(report.passed(), "{report}");
}

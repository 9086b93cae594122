//! Programmatic copies of the shipped example pairs, used across the test
//! suites: gl(1|1) with its defining 1|1 representation, and the odd
//! Heisenberg pair (X even central, Y odd, [Y,Y] = 2X).

use std::sync::Arc;

use crate::lie::LieSuperalgebra;
use crate::pair::SHCPair;
use crate::scalar::Scalar;
use crate::superlinear::{RhoEmbedding, SuperMatrix, SuperSpace};

pub(crate) fn s(n: i64) -> Scalar {
    Scalar::from_int(n)
}

pub(crate) fn gl11_lie() -> Arc<LieSuperalgebra> {
    // basis order: X1, X2, Yp, Ym
    LieSuperalgebra::from_table(
        vec!["X1".into(), "X2".into()],
        vec!["Yp".into(), "Ym".into()],
        vec![
            ((0, 2), vec![(2, s(1))]),
            ((1, 2), vec![(2, s(-1))]),
            ((0, 3), vec![(3, s(-1))]),
            ((1, 3), vec![(3, s(1))]),
            ((2, 3), vec![(0, s(1)), (1, s(1))]),
        ],
    )
    .unwrap()
}

pub(crate) fn gl11_space() -> SuperSpace {
    SuperSpace::new(1, 1)
}

pub(crate) fn gl11_rho() -> RhoEmbedding {
    let sp = gl11_space();
    let e = |i, j| SuperMatrix::unit_entry(&sp, i, j);
    RhoEmbedding::new(sp.clone(), vec![e(0, 0), e(1, 1), e(0, 1), e(1, 0)]).unwrap()
}

pub(crate) fn gl11_kpoint() -> SuperMatrix {
    let sp = gl11_space();
    SuperMatrix::from_rows(&sp, vec![vec![s(2), s(0)], vec![s(0), s(1)]]).unwrap()
}

pub(crate) fn heis_lie() -> Arc<LieSuperalgebra> {
    // basis order: X, Y with [Y,Y] = 2X
    LieSuperalgebra::from_table(
        vec!["X".into()],
        vec!["Y".into()],
        vec![((1, 1), vec![(0, s(2))])],
    )
    .unwrap()
}

pub(crate) fn heis_rho() -> RhoEmbedding {
    let sp = gl11_space();
    let ident = SuperMatrix::identity(&sp);
    let y = SuperMatrix::unit_entry(&sp, 0, 1).add(&SuperMatrix::unit_entry(&sp, 1, 0));
    RhoEmbedding::new(sp, vec![ident, y]).unwrap()
}

pub(crate) fn heis_kpoints() -> Vec<(String, SuperMatrix)> {
    let sp = gl11_space();
    let flip = SuperMatrix::from_rows(&sp, vec![vec![s(1), s(0)], vec![s(0), s(-1)]]).unwrap();
    let double = SuperMatrix::from_rows(&sp, vec![vec![s(2), s(0)], vec![s(0), s(2)]]).unwrap();
    vec![("s".into(), flip), ("c2".into(), double)]
}

fn gl11_rho_mats() -> Vec<SuperMatrix> {
    let sp = gl11_space();
    let e = |i, j| SuperMatrix::unit_entry(&sp, i, j);
    vec![e(0, 0), e(1, 1), e(0, 1), e(1, 0)]
}

pub(crate) fn gl11_pair() -> Arc<SHCPair> {
    SHCPair::new(
        "gl11",
        gl11_lie(),
        gl11_space(),
        gl11_rho_mats(),
        vec![("k".into(), gl11_kpoint())],
    )
    .unwrap()
}

/// gl(1|1) with both diag(2,1) and diag(1,2) as named generators; the extra
/// generator makes the diagonal-swap automorphism expressible.
pub(crate) fn gl11_pair_two_kpoints() -> Arc<SHCPair> {
    let sp = gl11_space();
    let k2 = SuperMatrix::from_rows(&sp, vec![vec![s(1), s(0)], vec![s(0), s(2)]]).unwrap();
    SHCPair::new(
        "gl11-two",
        gl11_lie(),
        gl11_space(),
        gl11_rho_mats(),
        vec![("k1".into(), gl11_kpoint()), ("k2".into(), k2)],
    )
    .unwrap()
}

pub(crate) fn heis_pair() -> Arc<SHCPair> {
    let sp = gl11_space();
    let ident = SuperMatrix::identity(&sp);
    let y = SuperMatrix::unit_entry(&sp, 0, 1).add(&SuperMatrix::unit_entry(&sp, 1, 0));
    SHCPair::new("heisenberg", heis_lie(), sp, vec![ident, y], heis_kpoints()).unwrap()
}

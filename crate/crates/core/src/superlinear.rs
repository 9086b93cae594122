//! Z₂-graded linear algebra over the exact field and over a Weil algebra.
//!
//! The central type is [`AOperator`], an element of `(A ⊗ End(V))₀` stored as
//! a sum of `monomial ⊗ matrix` terms and multiplied with Koszul signs:
//! `(a⊗M)(b⊗N) = (−1)^{|M||b|} ab ⊗ MN`. This is the separation oracle all
//! supergroup normal forms are checked against.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::scalar::Scalar;
use crate::weil::{Parity, WeilAlgebra, WeilElement};

/// A super vector space `K^p ⊕ K^q`, even basis labels first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuperSpace {
    pub even: usize,
    pub odd: usize,
}

impl SuperSpace {
    pub fn new(even: usize, odd: usize) -> Self {
        SuperSpace { even, odd }
    }

    pub fn dim(&self) -> usize {
        self.even + self.odd
    }

    pub fn basis_parity(&self, i: usize) -> Parity {
        if i < self.even {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum MatParity {
    Even,
    Odd,
    Mixed,
}

/// A dense `(p+q) × (p+q)` matrix of scalars with the block grading of
/// `End(K^p ⊕ K^q)`: even matrices are block-diagonal, odd ones are
/// off-diagonal.
#[derive(Clone, PartialEq, Eq)]
pub struct SuperMatrix {
    space: SuperSpace,
    entries: Vec<Scalar>, // row-major
}

impl SuperMatrix {
    pub fn zero(space: &SuperSpace) -> Self {
        SuperMatrix { space: space.clone(), entries: vec![Scalar::zero(); space.dim() * space.dim()] }
    }

    pub fn identity(space: &SuperSpace) -> Self {
        let mut m = Self::zero(space);
        for i in 0..space.dim() {
            *m.at_mut(i, i) = Scalar::one();
        }
        m
    }

    pub fn from_rows(space: &SuperSpace, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let n = space.dim();
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension(format!("expected a {n}×{n} matrix")));
        }
        Ok(SuperMatrix { space: space.clone(), entries: rows.into_iter().flatten().collect() })
    }

    /// Elementary matrix `E_{ij}` (0-based).
    pub fn unit_entry(space: &SuperSpace, i: usize, j: usize) -> Self {
        let mut m = Self::zero(space);
        *m.at_mut(i, j) = Scalar::one();
        m
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn at(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.space.dim() + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Scalar {
        let n = self.space.dim();
        &mut self.entries[i * n + j]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self == &Self::identity(&self.space)
    }

    /// Declared parity from the block structure.
    pub fn parity(&self) -> MatParity {
        let mut has_even = false;
        let mut has_odd = false;
        let n = self.space.dim();
        for i in 0..n {
            for j in 0..n {
                if self.at(i, j).is_zero() {
                    continue;
                }
                if self.space.basis_parity(i) == self.space.basis_parity(j) {
                    has_even = true;
                } else {
                    has_odd = true;
                }
            }
        }
        match (has_even, has_odd) {
            (_, false) => MatParity::Even,
            (false, true) => MatParity::Odd,
            (true, true) => MatParity::Mixed,
        }
    }

    pub fn homogeneous_part(&self, parity: Parity) -> SuperMatrix {
        let mut out = Self::zero(&self.space);
        let n = self.space.dim();
        for i in 0..n {
            for j in 0..n {
                let entry_parity = if self.space.basis_parity(i) == self.space.basis_parity(j) {
                    Parity::Even
                } else {
                    Parity::Odd
                };
                if entry_parity == parity {
                    *out.at_mut(i, j) = self.at(i, j).clone();
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &SuperMatrix) -> SuperMatrix {
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a += b;
        }
        out
    }

    pub fn sub(&self, rhs: &SuperMatrix) -> SuperMatrix {
        let mut out = self.clone();
        for (a, b) in out.entries.iter_mut().zip(&rhs.entries) {
            *a -= b;
        }
        out
    }

    pub fn neg(&self) -> SuperMatrix {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = -&*a;
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> SuperMatrix {
        let mut out = self.clone();
        for a in out.entries.iter_mut() {
            *a = &*a * s;
        }
        out
    }

    pub fn mul(&self, rhs: &SuperMatrix) -> SuperMatrix {
        let n = self.space.dim();
        let mut out = Self::zero(&self.space);
        for i in 0..n {
            for k in 0..n {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = rhs.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    *out.at_mut(i, j) += &t;
                }
            }
        }
        out
    }

    /// Exact inverse by Gauss-Jordan elimination.
    pub fn inverse(&self) -> Result<SuperMatrix> {
        let n = self.space.dim();
        let mut work = self.clone();
        let mut inv = Self::identity(&self.space);
        for col in 0..n {
            let pivot = (col..n)
                .find(|&r| !work.at(r, col).is_zero())
                .ok_or(Error::NotInvertible)?;
            if pivot != col {
                for j in 0..n {
                    let a = work.at(pivot, j).clone();
                    let b = work.at(col, j).clone();
                    *work.at_mut(pivot, j) = b;
                    *work.at_mut(col, j) = a;
                    let a = inv.at(pivot, j).clone();
                    let b = inv.at(col, j).clone();
                    *inv.at_mut(pivot, j) = b;
                    *inv.at_mut(col, j) = a;
                }
            }
            let d = work.at(col, col).inv()?;
            for j in 0..n {
                let a = work.at(col, j) * &d;
                *work.at_mut(col, j) = a;
                let b = inv.at(col, j) * &d;
                *inv.at_mut(col, j) = b;
            }
            for r in 0..n {
                if r == col || work.at(r, col).is_zero() {
                    continue;
                }
                let factor = work.at(r, col).clone();
                for j in 0..n {
                    let t = &factor * work.at(col, j);
                    *work.at_mut(r, j) -= &t;
                    let t = &factor * inv.at(col, j);
                    *inv.at_mut(r, j) -= &t;
                }
            }
        }
        Ok(inv)
    }

    pub fn flatten(&self) -> Vec<Scalar> {
        self.entries.clone()
    }
}

impl fmt::Debug for SuperMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.space.dim();
        write!(f, "[")?;
        for i in 0..n {
            if i > 0 {
                write!(f, "; ")?;
            }
            for j in 0..n {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", self.at(i, j))?;
            }
        }
        write!(f, "]")
    }
}

/// An element of `(A ⊗ End(V))`, canonicalized by collecting one matrix per
/// basis monomial; zero matrices are never stored. Intended use keeps the
/// total degree even, which [`AOperator::is_even`] checks.
#[derive(Clone)]
pub struct AOperator {
    algebra: Arc<WeilAlgebra>,
    space: SuperSpace,
    terms: BTreeMap<usize, SuperMatrix>,
}

impl PartialEq for AOperator {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_algebra(&other.algebra)
            && self.space == other.space
            && self.terms == other.terms
    }
}

impl Eq for AOperator {}

impl fmt::Debug for AOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AOperator{{")?;
        for (mon, m) in self.terms() {
            write!(f, " {}⊗{:?}", self.algebra.label(mon), m)?;
        }
        write!(f, " }}")
    }
}

impl AOperator {
    pub fn zero(algebra: &Arc<WeilAlgebra>, space: &SuperSpace) -> Self {
        AOperator { algebra: Arc::clone(algebra), space: space.clone(), terms: BTreeMap::new() }
    }

    /// `1 ⊗ I`.
    pub fn identity(algebra: &Arc<WeilAlgebra>, space: &SuperSpace) -> Self {
        Self::from_matrix(algebra, SuperMatrix::identity(space))
    }

    /// `1 ⊗ M` for a constant matrix.
    pub fn from_matrix(algebra: &Arc<WeilAlgebra>, m: SuperMatrix) -> Self {
        let mut op = Self::zero(algebra, m.space());
        op.add_term_at(algebra.unit_index(), m);
        op
    }

    /// `a ⊗ M`, expanded over the monomials of `a`.
    pub fn from_term(a: &WeilElement, m: &SuperMatrix) -> Self {
        let mut op = Self::zero(a.algebra(), m.space());
        for (idx, c) in a.iter() {
            op.add_term_at(idx, m.scale(c));
        }
        op
    }

    fn add_term_at(&mut self, mon: usize, m: SuperMatrix) {
        if m.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(mon) {
            Entry::Vacant(e) => {
                e.insert(m);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get().add(&m);
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn algebra(&self) -> &Arc<WeilAlgebra> {
        &self.algebra
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn terms(&self) -> impl Iterator<Item = (usize, &SuperMatrix)> {
        self.terms.iter().map(|(i, m)| (*i, m))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn check_compatible(&self, rhs: &AOperator) -> Result<()> {
        if !self.algebra.same_algebra(&rhs.algebra) {
            return Err(Error::AlgebraMismatch(
                self.algebra.descriptor().into(),
                rhs.algebra.descriptor().into(),
            ));
        }
        if self.space != rhs.space {
            return Err(Error::Dimension("operators live on different super spaces".into()));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &AOperator) -> Result<AOperator> {
        self.check_compatible(rhs)?;
        let mut out = self.clone();
        for (mon, m) in rhs.terms() {
            out.add_term_at(mon, m.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &AOperator) -> Result<AOperator> {
        self.check_compatible(rhs)?;
        let mut out = self.clone();
        for (mon, m) in rhs.terms() {
            out.add_term_at(mon, m.neg());
        }
        Ok(out)
    }

    pub fn neg(&self) -> AOperator {
        let mut out = self.clone();
        for m in out.terms.values_mut() {
            *m = m.neg();
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> AOperator {
        if s.is_zero() {
            return Self::zero(&self.algebra, &self.space);
        }
        let mut out = self.clone();
        for m in out.terms.values_mut() {
            *m = m.scale(s);
        }
        out
    }

    /// Every stored term has total parity `|a| + |M| = 0`.
    pub fn is_even(&self) -> bool {
        self.terms.iter().all(|(mon, m)| {
            let odd = m.homogeneous_part(Parity::Odd);
            let even = m.homogeneous_part(Parity::Even);
            match self.algebra.parity_of(*mon) {
                Parity::Even => odd.is_zero(),
                Parity::Odd => even.is_zero(),
            }
        })
    }

    /// Coefficient-wise augmentation `p_A`: the matrix over the unit monomial.
    pub fn augment(&self) -> SuperMatrix {
        self.terms
            .get(&self.algebra.unit_index())
            .cloned()
            .unwrap_or_else(|| SuperMatrix::zero(&self.space))
    }

    /// The coefficient matrix over an arbitrary basis monomial.
    pub fn coefficient(&self, mon: usize) -> SuperMatrix {
        self.terms.get(&mon).cloned().unwrap_or_else(|| SuperMatrix::zero(&self.space))
    }
}

/// The Koszul-sign product `(a⊗M)(b⊗N) = (−1)^{|M||b|} ab ⊗ MN`, expanded
/// bilinearly with each matrix split into homogeneous parts.
pub fn koszul_compose(s: &AOperator, t: &AOperator) -> Result<AOperator> {
    s.check_compatible(t)?;
    let algebra = s.algebra();
    let mut out = AOperator::zero(algebra, s.space());
    for (ma, m) in s.terms() {
        let m_parts = [
            (Parity::Even, m.homogeneous_part(Parity::Even)),
            (Parity::Odd, m.homogeneous_part(Parity::Odd)),
        ];
        for (mb, n) in t.terms() {
            let b_parity = algebra.parity_of(mb);
            for (m_parity, m_part) in &m_parts {
                if m_part.is_zero() {
                    continue;
                }
                let sign = m_parity.sign_product(b_parity);
                let prod = m_part.mul(n);
                if prod.is_zero() {
                    continue;
                }
                for (mon, c) in algebra.basis_mul(ma, mb) {
                    let coeff = if sign < 0 { -&c } else { c };
                    out.add_term_at(mon, prod.scale(&coeff));
                }
            }
        }
    }
    Ok(out)
}

/// Finite exponential `Σ Z^k / k!` of an operator whose coefficients all lie
/// in the nilradical.
pub fn op_exp(z: &AOperator) -> Result<AOperator> {
    if !z.augment().is_zero() {
        return Err(Error::NotNilpotent(
            "op_exp needs coefficients with zero augmentation".into(),
        ));
    }
    let mut acc = AOperator::identity(z.algebra(), z.space());
    let mut term = AOperator::identity(z.algebra(), z.space()); // Z^k / k!
    for k in 1..=z.algebra().nilpotency() {
        term = koszul_compose(&term, z)?.scale(&Scalar::recip_int(k as i64)?);
        if term.is_zero() {
            break;
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// Finite alternating logarithm `log(1 + N)` of an operator with identity
/// augmentation.
pub fn op_log(u: &AOperator) -> Result<AOperator> {
    if !u.augment().is_identity() {
        return Err(Error::AugmentNotIdentity);
    }
    let one = AOperator::identity(u.algebra(), u.space());
    let n = u.sub(&one)?;
    let mut acc = AOperator::zero(u.algebra(), u.space());
    let mut power = one;
    for k in 1..=u.algebra().nilpotency() {
        power = koszul_compose(&power, &n)?;
        if power.is_zero() {
            break;
        }
        let mut term = power.scale(&Scalar::recip_int(k as i64)?);
        if k % 2 == 0 {
            term = term.neg();
        }
        acc = acc.add(&term)?;
    }
    Ok(acc)
}

/// A vector in `V(A)`: one Weil-algebra coordinate per basis vector of `V`.
#[derive(Clone, Debug)]
pub struct AVector {
    algebra: Arc<WeilAlgebra>,
    space: SuperSpace,
    coords: Vec<WeilElement>,
}

impl PartialEq for AVector {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_algebra(&other.algebra)
            && self.space == other.space
            && self.coords == other.coords
    }
}

impl Eq for AVector {}

impl AVector {
    pub fn zero(algebra: &Arc<WeilAlgebra>, space: &SuperSpace) -> Self {
        AVector {
            algebra: Arc::clone(algebra),
            space: space.clone(),
            coords: vec![WeilElement::zero(algebra); space.dim()],
        }
    }

    pub fn basis(algebra: &Arc<WeilAlgebra>, space: &SuperSpace, j: usize) -> Self {
        let mut v = Self::zero(algebra, space);
        v.coords[j] = WeilElement::unit(algebra);
        v
    }

    pub fn from_coords(algebra: &Arc<WeilAlgebra>, space: &SuperSpace, coords: Vec<WeilElement>) -> Result<Self> {
        if coords.len() != space.dim() {
            return Err(Error::Dimension("coordinate count != dim V".into()));
        }
        Ok(AVector { algebra: Arc::clone(algebra), space: space.clone(), coords })
    }

    pub fn coords(&self) -> &[WeilElement] {
        &self.coords
    }

    pub fn add(&self, rhs: &AVector) -> Result<AVector> {
        let mut out = self.clone();
        for (a, b) in out.coords.iter_mut().zip(&rhs.coords) {
            *a = a.add(b)?;
        }
        Ok(out)
    }
}

/// Applies an operator to a vector: `(a⊗M)(b⊗e_j) = (−1)^{|M||b|} ab ⊗ M e_j`.
/// Compatible with [`koszul_compose`].
pub fn op_apply(s: &AOperator, v: &AVector) -> Result<AVector> {
    if !s.algebra().same_algebra(&v.algebra) {
        return Err(Error::AlgebraMismatch(
            s.algebra().descriptor().into(),
            v.algebra.descriptor().into(),
        ));
    }
    if s.space() != &v.space {
        return Err(Error::Dimension("operator and vector dimensions differ".into()));
    }
    let algebra = s.algebra();
    let n = v.space.dim();
    let mut out = AVector::zero(algebra, &v.space);
    for (ma, m) in s.terms() {
        for (m_parity, m_part) in [
            (Parity::Even, m.homogeneous_part(Parity::Even)),
            (Parity::Odd, m.homogeneous_part(Parity::Odd)),
        ] {
            if m_part.is_zero() {
                continue;
            }
            for j in 0..n {
                for (part_parity, b) in [
                    (Parity::Even, v.coords[j].even_part()),
                    (Parity::Odd, v.coords[j].odd_part()),
                ] {
                    if b.is_zero() {
                        continue;
                    }
                    let sign = m_parity.sign_product(part_parity);
                    // ab over the monomial of the term
                    let mono = WeilElement::from_coeffs(algebra, [(ma, Scalar::one())]);
                    let mut ab = mono.mul(&b).expect("same algebra");
                    if sign < 0 {
                        ab = ab.neg();
                    }
                    for i in 0..n {
                        let entry = m_part.at(i, j);
                        if entry.is_zero() {
                            continue;
                        }
                        out.coords[i] = out.coords[i].add(&ab.scale(entry)).expect("same algebra");
                    }
                }
            }
        }
    }
    Ok(out)
}

/// A faithful linear embedding of a super vector space of abstract basis
/// elements (a Lie superalgebra basis, in practice) into `End(V)`, with an
/// exact solver for pulling operators back along it.
pub struct RhoEmbedding {
    space: SuperSpace,
    mats: Vec<SuperMatrix>,
    solver: Echelon,
}

impl RhoEmbedding {
    /// Fails unless the matrices are linearly independent (injectivity).
    pub fn new(space: SuperSpace, mats: Vec<SuperMatrix>) -> Result<Self> {
        let mut solver = Echelon::tracking(space.dim() * space.dim());
        for (k, m) in mats.iter().enumerate() {
            if !solver.insert(m.flatten()) {
                return Err(Error::Invalid(format!(
                    "representation is not faithful: matrix #{k} is dependent"
                )));
            }
        }
        Ok(RhoEmbedding { space, mats, solver })
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn matrix(&self, basis_idx: usize) -> &SuperMatrix {
        &self.mats[basis_idx]
    }

    pub fn dim(&self) -> usize {
        self.mats.len()
    }

    /// Solve `M = Σ c_k ρ(b_k)` exactly; `None` when `M` is outside the image.
    pub fn solve(&self, m: &SuperMatrix) -> Option<Vec<Scalar>> {
        self.solver.solve(&m.flatten())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::Rng;
    use crate::weil::build_grassmann;
    use crate::weil_tests::{rand_element, xi};

    fn gl11() -> SuperSpace {
        SuperSpace::new(1, 1)
    }

    fn e(i: usize, j: usize) -> SuperMatrix {
        SuperMatrix::unit_entry(&gl11(), i, j)
    }

    #[test]
    fn koszul_sign_examples() {
        let a = build_grassmann(2);
        let s = AOperator::from_term(&xi(&a, 1), &e(0, 1));
        let t = AOperator::from_term(&xi(&a, 2), &e(1, 0));
        let st = koszul_compose(&s, &t).unwrap();
        let x12 = xi(&a, 1).mul(&xi(&a, 2)).unwrap();
        assert_eq!(st, AOperator::from_term(&x12.neg(), &e(0, 0)));

        let ts = koszul_compose(&t, &s).unwrap();
        assert_eq!(ts, AOperator::from_term(&x12, &e(1, 1)));

        let id = AOperator::identity(&a, &gl11());
        assert_eq!(koszul_compose(&id, &t).unwrap(), t);
        assert_eq!(koszul_compose(&t, &id).unwrap(), t);
    }

    fn random_op(a: &Arc<WeilAlgebra>, rng: &mut Rng) -> AOperator {
        let mut op = AOperator::zero(a, &gl11());
        for i in 0..2 {
            for j in 0..2 {
                op = op.add(&AOperator::from_term(&rand_element(a, rng), &e(i, j))).unwrap();
            }
        }
        op
    }

    #[test]
    fn koszul_associativity() {
        let a = build_grassmann(2);
        let mut rng = Rng::new(91);
        // exhaustive on homogeneous generators
        let mut gens: Vec<AOperator> = Vec::new();
        for i in 0..2 {
            for j in 0..2 {
                for m in 0..a.dim() {
                    gens.push(AOperator::from_term(
                        &WeilElement::from_coeffs(&a, [(m, Scalar::one())]),
                        &e(i, j),
                    ));
                }
            }
        }
        for x in &gens {
            for y in &gens {
                for z in &gens {
                    let l = koszul_compose(&koszul_compose(x, y).unwrap(), z).unwrap();
                    let r = koszul_compose(x, &koszul_compose(y, z).unwrap()).unwrap();
                    assert_eq!(l, r);
                }
            }
        }
        for _ in 0..500 {
            let x = random_op(&a, &mut rng);
            let y = random_op(&a, &mut rng);
            let z = random_op(&a, &mut rng);
            let l = koszul_compose(&koszul_compose(&x, &y).unwrap(), &z).unwrap();
            let r = koszul_compose(&x, &koszul_compose(&y, &z).unwrap()).unwrap();
            assert_eq!(l, r);
        }
    }

    #[test]
    fn exp_examples() {
        let a = build_grassmann(2);
        let zero = AOperator::zero(&a, &gl11());
        assert_eq!(op_exp(&zero).unwrap(), AOperator::identity(&a, &gl11()));

        // exp(ξ1ξ2 ⊗ X) = 1 + ξ1ξ2 ⊗ X for even X
        let x12 = xi(&a, 1).mul(&xi(&a, 2)).unwrap();
        let x = e(0, 0).add(&e(1, 1).scale(&Scalar::from_int(5)));
        let z = AOperator::from_term(&x12, &x);
        let expect = AOperator::identity(&a, &gl11()).add(&z).unwrap();
        assert_eq!(op_exp(&z).unwrap(), expect);

        // exp(ξ1⊗E12 + ξ2⊗E21) = 1 + ξ1 E12 + ξ2 E21 + ½ ξ1ξ2 (E22 − E11)
        let z = AOperator::from_term(&xi(&a, 1), &e(0, 1))
            .add(&AOperator::from_term(&xi(&a, 2), &e(1, 0)))
            .unwrap();
        let sq = AOperator::from_term(&x12, &e(1, 1).sub(&e(0, 0)));
        let expect = AOperator::identity(&a, &gl11())
            .add(&z)
            .unwrap()
            .add(&sq.scale(&Scalar::ratio(1, 2).unwrap()))
            .unwrap();
        let got = op_exp(&z).unwrap();
        assert_eq!(got, expect);

        // exp(Z)·exp(−Z) = 1, and log returns the input
        let prod = koszul_compose(&got, &op_exp(&z.neg()).unwrap()).unwrap();
        assert_eq!(prod, AOperator::identity(&a, &gl11()));
        assert_eq!(op_log(&got).unwrap(), z);

        // non-nilpotent input rejected
        assert!(op_exp(&AOperator::identity(&a, &gl11())).is_err());
    }

    #[test]
    fn log_inverts_exp() {
        let a = build_grassmann(3);
        assert!(op_log(&AOperator::identity(&a, &gl11()).scale(&Scalar::from_int(2))).is_err());
        assert_eq!(
            op_log(&AOperator::identity(&a, &gl11())).unwrap(),
            AOperator::zero(&a, &gl11())
        );

        let mut rng = Rng::new(5);
        for _ in 0..100 {
            let mut z = AOperator::zero(&a, &gl11());
            for i in 0..2 {
                for j in 0..2 {
                    z = z
                        .add(&AOperator::from_term(&rand_element(&a, &mut rng).nil_part(), &e(i, j)))
                        .unwrap();
                }
            }
            let u = op_exp(&z).unwrap();
            assert_eq!(op_log(&u).unwrap(), z);
            assert_eq!(op_exp(&op_log(&u).unwrap()).unwrap(), u);
        }
    }

    #[test]
    fn exp_is_homomorphism_on_commuting_nilpotents() {
        let a = build_grassmann(3);
        let x12 = xi(&a, 1).mul(&xi(&a, 2)).unwrap();
        let x13 = xi(&a, 1).mul(&xi(&a, 3)).unwrap();
        let z1 = AOperator::from_term(&x12, &e(0, 0));
        let z2 = AOperator::from_term(&x13, &e(0, 0).scale(&Scalar::from_int(2)));
        assert_eq!(
            koszul_compose(&z1, &z2).unwrap(),
            koszul_compose(&z2, &z1).unwrap()
        );
        let lhs = op_exp(&z1.add(&z2).unwrap()).unwrap();
        let rhs = koszul_compose(&op_exp(&z1).unwrap(), &op_exp(&z2).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn apply_examples_and_compatibility() {
        let a = build_grassmann(2);
        let space = gl11();
        let id = AOperator::identity(&a, &space);
        let e2 = AVector::basis(&a, &space, 1);
        assert_eq!(op_apply(&id, &e2).unwrap(), e2);

        // (ξ1 ⊗ E12) e2 = ξ1 · e1
        let s = AOperator::from_term(&xi(&a, 1), &e(0, 1));
        let got = op_apply(&s, &e2).unwrap();
        assert_eq!(got.coords()[0], xi(&a, 1));
        assert!(got.coords()[1].is_zero());

        let mut rng = Rng::new(31);
        for _ in 0..200 {
            let s = random_op(&a, &mut rng);
            let t = random_op(&a, &mut rng);
            let v = AVector::from_coords(
                &a,
                &space,
                vec![rand_element(&a, &mut rng), rand_element(&a, &mut rng)],
            )
            .unwrap();
            let lhs = op_apply(&koszul_compose(&s, &t).unwrap(), &v).unwrap();
            let rhs = op_apply(&s, &op_apply(&t, &v).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn rho_embedding_solves_exactly() {
        let space = gl11();
        let mats = vec![e(0, 0), e(1, 1), e(0, 1), e(1, 0)];
        let rho = RhoEmbedding::new(space.clone(), mats).unwrap();
        let m = e(0, 0).scale(&Scalar::from_int(3)).add(&e(1, 0).scale(&Scalar::from_int(-2)));
        let c = rho.solve(&m).unwrap();
        assert_eq!(
            c,
            vec![Scalar::from_int(3), Scalar::zero(), Scalar::zero(), Scalar::from_int(-2)]
        );

        // dependent matrices are rejected
        let dep = vec![e(0, 0), e(0, 0).scale(&Scalar::from_int(2))];
        assert!(RhoEmbedding::new(space, dep).is_err());
    }
}

//! Weil superalgebras with exact arithmetic: Grassmann algebras `Λ_n`, their
//! even dual-number extensions `Λ_n[ε]`, and quotients by powers of finitely
//! generated ideals.
//!
//! Every algebra is `A = K ⊕ nilrad(A)` with a distinguished unit monomial;
//! the augmentation reads off the unit coefficient and the unit section embeds
//! scalars back. Grassmann monomials multiply by the sign of the merge
//! permutation, `ε` is even with `ε² = 0`, and quotient algebras carry an
//! explicit multiplication table.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::scalar::Scalar;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn flip(self) -> Parity {
        match self {
            Parity::Even => Parity::Odd,
            Parity::Odd => Parity::Even,
        }
    }

    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn sign_product(self, other: Parity) -> i8 {
        if self == Parity::Odd && other == Parity::Odd {
            -1
        } else {
            1
        }
    }
}

/// A basis monomial: a subset of the odd generators `ξ_i` (bitmask), with an
/// optional factor of the even dual number `ε`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    pub xi: u32,
    pub eps: bool,
}

impl Monomial {
    pub const UNIT: Monomial = Monomial { xi: 0, eps: false };

    pub fn parity(&self) -> Parity {
        if self.xi.count_ones() % 2 == 0 {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    fn xi_indices(&self) -> Vec<u32> {
        (0..32).filter(|i| self.xi & (1 << i) != 0).collect()
    }

    /// Subset-lexicographic order on the ξ-part; ε-free monomials first.
    fn key(&self) -> (bool, Vec<u32>) {
        (self.eps, self.xi_indices())
    }

    /// The sign of merging two disjoint sorted index sets, or `None` when the
    /// product vanishes (shared ξ, or ε²).
    fn merge_sign(&self, other: &Monomial) -> Option<(Monomial, i8)> {
        if self.xi & other.xi != 0 || (self.eps && other.eps) {
            return None;
        }
        // count inversions between the two sorted sequences
        let mut sign = 1i8;
        for i in other.xi_indices() {
            let higher = self.xi >> (i + 1);
            if higher.count_ones() % 2 == 1 {
                sign = -sign;
            }
        }
        // ε is even: moving it across anything costs nothing
        Some((Monomial { xi: self.xi | other.xi, eps: self.eps || other.eps }, sign))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if *self == Monomial::UNIT {
            return write!(f, "1");
        }
        let mut parts: Vec<String> = Vec::new();
        if self.eps {
            parts.push("eps".into());
        }
        for i in self.xi_indices() {
            parts.push(format!("xi{}", i + 1));
        }
        write!(f, "{}", parts.join("*"))
    }
}

enum MulRule {
    /// Sign-of-merge on monomials (Grassmann, dual numbers).
    Monomials,
    /// Explicit sparse table `[i][j] → Σ c_k · e_k` (quotients).
    Table(Vec<Vec<Vec<(usize, Scalar)>>>),
}

/// A finite-dimensional supercommutative algebra `A = K ⊕ nilrad(A)`.
pub struct WeilAlgebra {
    descriptor: String,
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    parity: Vec<Parity>,
    labels: Vec<String>,
    unit: usize,
    nilpotency: usize,
    odd_gens: usize,
    has_eps: bool,
    mul: MulRule,
}

impl fmt::Debug for WeilAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "WeilAlgebra({})", self.descriptor)
    }
}

/// Builds the Grassmann algebra `Λ_n` on anticommuting generators
/// `ξ_1, …, ξ_n`: `2^n` monomials, parity `|S| mod 2`, nilpotency index `n+1`.
///
/// ```
/// use shcp_core::weil::{build_grassmann, WeilElement};
/// let a = build_grassmann(2);
/// let x1 = WeilElement::generator(&a, 1).unwrap();
/// let x2 = WeilElement::generator(&a, 2).unwrap();
/// assert_eq!(x1.mul(&x2).unwrap(), x2.mul(&x1).unwrap().neg());
/// assert!(x1.mul(&x1).unwrap().is_zero());
/// ```
pub fn build_grassmann(n: usize) -> Arc<WeilAlgebra> {
    assert!(n <= 16, "desk-scale Grassmann algebras only");
    WeilAlgebra::monomial_algebra(format!("grassmann:{n}"), n, false)
}

/// Adjoins an even square-zero `ε` to a Grassmann algebra, giving `A[ε]` with
/// the coefficient inclusion and the drop-`ε` projection available as
/// [`WeilMorphism::dual_inclusion`] / [`WeilMorphism::dual_projection`].
pub fn adjoin_dual_number(a: &Arc<WeilAlgebra>) -> Result<Arc<WeilAlgebra>> {
    if a.has_eps || !matches!(a.mul, MulRule::Monomials) {
        return Err(Error::Invalid(format!(
            "cannot adjoin a second dual number to `{}`",
            a.descriptor
        )));
    }
    Ok(WeilAlgebra::monomial_algebra(format!("dual:{}", a.descriptor), a.odd_gens, true))
}

impl WeilAlgebra {
    fn monomial_algebra(descriptor: String, n: usize, eps: bool) -> Arc<WeilAlgebra> {
        let mut basis: Vec<Monomial> = Vec::new();
        for e in [false, true] {
            if e && !eps {
                continue;
            }
            for mask in 0u32..(1 << n) {
                basis.push(Monomial { xi: mask, eps: e });
            }
        }
        basis.sort_by_key(|m| m.key());
        let index: HashMap<Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let parity = basis.iter().map(Monomial::parity).collect();
        let labels = basis.iter().map(|m| m.to_string()).collect();
        let unit = index[&Monomial::UNIT];
        let nilpotency = if n == 0 && !eps { 1 } else { n + 1 + usize::from(eps) };
        Arc::new(WeilAlgebra {
            descriptor,
            basis,
            index,
            parity,
            labels,
            unit,
            nilpotency,
            odd_gens: n,
            has_eps: eps,
            mul: MulRule::Monomials,
        })
    }

    pub fn descriptor(&self) -> &str {
        &self.descriptor
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn unit_index(&self) -> usize {
        self.unit
    }

    pub fn parity_of(&self, idx: usize) -> Parity {
        self.parity[idx]
    }

    pub fn label(&self, idx: usize) -> &str {
        &self.labels[idx]
    }

    /// Smallest `N` with `nilrad(A)^N = 0`.
    pub fn nilpotency(&self) -> usize {
        self.nilpotency
    }

    pub fn odd_generator_count(&self) -> usize {
        self.odd_gens
    }

    pub fn has_eps(&self) -> bool {
        self.has_eps
    }

    pub fn is_monomial_mode(&self) -> bool {
        matches!(self.mul, MulRule::Monomials)
    }

    pub fn monomial_index(&self, m: Monomial) -> Option<usize> {
        self.index.get(&m).copied()
    }

    pub fn monomial_at(&self, idx: usize) -> Monomial {
        self.basis[idx]
    }

    /// Product of two basis elements as a sparse combination.
    pub fn basis_mul(&self, i: usize, j: usize) -> Vec<(usize, Scalar)> {
        match &self.mul {
            MulRule::Monomials => match self.basis[i].merge_sign(&self.basis[j]) {
                Some((m, sign)) => {
                    let c = if sign >= 0 { Scalar::one() } else { -Scalar::one() };
                    vec![(self.index[&m], c)]
                }
                None => Vec::new(),
            },
            MulRule::Table(t) => t[i][j].clone(),
        }
    }

    pub fn same_algebra(&self, other: &WeilAlgebra) -> bool {
        self.descriptor == other.descriptor
    }
}

/// An element of a Weil algebra: a sparse coefficient map over the basis.
/// Zero coefficients are never stored.
#[derive(Clone)]
pub struct WeilElement {
    algebra: Arc<WeilAlgebra>,
    coeffs: BTreeMap<usize, Scalar>,
}

impl WeilElement {
    pub fn zero(algebra: &Arc<WeilAlgebra>) -> Self {
        WeilElement { algebra: Arc::clone(algebra), coeffs: BTreeMap::new() }
    }

    pub fn unit(algebra: &Arc<WeilAlgebra>) -> Self {
        Self::scalar(algebra, Scalar::one())
    }

    /// The unit section `u_A(c) = c·1`.
    pub fn scalar(algebra: &Arc<WeilAlgebra>, c: Scalar) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(algebra.unit_index(), c);
        }
        WeilElement { algebra: Arc::clone(algebra), coeffs }
    }

    /// The generator `ξ_i` (1-based index, matching the display names).
    pub fn generator(algebra: &Arc<WeilAlgebra>, i: usize) -> Result<Self> {
        if i == 0 || i > algebra.odd_generator_count() {
            return Err(Error::Invalid(format!(
                "unknown generator xi{i} in `{}`",
                algebra.descriptor()
            )));
        }
        let m = Monomial { xi: 1 << (i - 1), eps: false };
        Ok(Self::from_monomial(algebra, m, Scalar::one()))
    }

    pub fn eps(algebra: &Arc<WeilAlgebra>) -> Result<Self> {
        if !algebra.has_eps() {
            return Err(Error::Invalid(format!("`{}` has no eps", algebra.descriptor())));
        }
        Ok(Self::from_monomial(algebra, Monomial { xi: 0, eps: true }, Scalar::one()))
    }

    pub fn from_monomial(algebra: &Arc<WeilAlgebra>, m: Monomial, c: Scalar) -> Self {
        let idx = algebra.monomial_index(m).expect("monomial of this algebra");
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(idx, c);
        }
        WeilElement { algebra: Arc::clone(algebra), coeffs }
    }

    pub fn from_coeffs(algebra: &Arc<WeilAlgebra>, it: impl IntoIterator<Item = (usize, Scalar)>) -> Self {
        let mut out = Self::zero(algebra);
        for (i, c) in it {
            out.add_coeff(i, c);
        }
        out
    }

    pub fn algebra(&self) -> &Arc<WeilAlgebra> {
        &self.algebra
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.coeffs.iter().map(|(i, c)| (*i, c))
    }

    fn add_coeff(&mut self, idx: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.coeffs.entry(idx) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += &c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    fn check_same(&self, rhs: &WeilElement) -> Result<()> {
        if self.algebra.same_algebra(&rhs.algebra) {
            Ok(())
        } else {
            Err(Error::AlgebraMismatch(
                self.algebra.descriptor().into(),
                rhs.algebra.descriptor().into(),
            ))
        }
    }

    pub fn add(&self, rhs: &WeilElement) -> Result<WeilElement> {
        self.check_same(rhs)?;
        let mut out = self.clone();
        for (i, c) in rhs.iter() {
            out.add_coeff(i, c.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &WeilElement) -> Result<WeilElement> {
        self.check_same(rhs)?;
        let mut out = self.clone();
        for (i, c) in rhs.iter() {
            out.add_coeff(i, -c);
        }
        Ok(out)
    }

    pub fn neg(&self) -> WeilElement {
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = -&*c;
        }
        out
    }

    pub fn scale(&self, s: &Scalar) -> WeilElement {
        if s.is_zero() {
            return Self::zero(&self.algebra);
        }
        let mut out = self.clone();
        for c in out.coeffs.values_mut() {
            *c = &*c * s;
        }
        out
    }

    /// Supercommutative product, expanded bilinearly over basis monomials.
    pub fn mul(&self, rhs: &WeilElement) -> Result<WeilElement> {
        self.check_same(rhs)?;
        let mut out = Self::zero(&self.algebra);
        for (i, a) in self.iter() {
            for (j, b) in rhs.iter() {
                let ab = a * b;
                for (k, c) in self.algebra.basis_mul(i, j) {
                    out.add_coeff(k, &ab * &c);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: usize) -> Result<WeilElement> {
        let mut out = Self::unit(&self.algebra);
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// The augmentation `p_A`: the coefficient of the unit monomial.
    pub fn augment(&self) -> Scalar {
        self.coeffs.get(&self.algebra.unit_index()).cloned().unwrap_or_else(Scalar::zero)
    }

    /// The nilpotent part `x − u_A(p_A(x))`.
    pub fn nil_part(&self) -> WeilElement {
        let mut out = self.clone();
        out.coeffs.remove(&self.algebra.unit_index());
        out
    }

    pub fn is_even(&self) -> bool {
        self.coeffs.keys().all(|&i| self.algebra.parity_of(i) == Parity::Even)
    }

    pub fn is_odd(&self) -> bool {
        self.coeffs.keys().all(|&i| self.algebra.parity_of(i) == Parity::Odd)
    }

    pub fn even_part(&self) -> WeilElement {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(i, _)| self.algebra.parity_of(**i) == Parity::Even)
            .map(|(i, c)| (*i, c.clone()))
            .collect();
        WeilElement { algebra: Arc::clone(&self.algebra), coeffs }
    }

    pub fn odd_part(&self) -> WeilElement {
        let coeffs = self
            .coeffs
            .iter()
            .filter(|(i, _)| self.algebra.parity_of(**i) == Parity::Odd)
            .map(|(i, c)| (*i, c.clone()))
            .collect();
        WeilElement { algebra: Arc::clone(&self.algebra), coeffs }
    }

    pub fn to_dense(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.algebra.dim()];
        for (i, c) in self.iter() {
            v[i] = c.clone();
        }
        v
    }

    pub fn from_dense(algebra: &Arc<WeilAlgebra>, v: &[Scalar]) -> Self {
        Self::from_coeffs(algebra, v.iter().enumerate().map(|(i, c)| (i, c.clone())))
    }
}

impl PartialEq for WeilElement {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_algebra(&other.algebra) && self.coeffs == other.coeffs
    }
}

impl Eq for WeilElement {}

impl fmt::Display for WeilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.iter() {
            let label = self.algebra.label(i);
            let is_unit = i == self.algebra.unit_index();
            let cs = c.to_string();
            let (neg, body) = match cs.strip_prefix('-') {
                // only peel the sign off plain rationals; Gaussian sums keep it inline
                Some(rest) if c.is_rational() => (true, rest.to_string()),
                _ => (false, cs),
            };
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if is_unit {
                write!(f, "{body}")?;
            } else if body == "1" {
                write!(f, "{label}")?;
            } else if c.is_rational() {
                write!(f, "{body}*{label}")?;
            } else {
                write!(f, "({body})*{label}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for WeilElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// An echelonized linear basis of the `n`-th power of the two-sided ideal
/// generated by `gens`. Decreasing in `n`; empty once `n` reaches the
/// nilpotency bound for nilpotent generators.
pub fn ideal_power_basis(
    algebra: &Arc<WeilAlgebra>,
    gens: &[WeilElement],
    n: usize,
) -> Result<Vec<WeilElement>> {
    if gens.is_empty() {
        return Err(Error::Invalid("ideal_power_basis needs at least one generator".into()));
    }
    for g in gens {
        if !g.algebra().same_algebra(algebra) {
            return Err(Error::AlgebraMismatch(
                algebra.descriptor().into(),
                g.algebra().descriptor().into(),
            ));
        }
    }
    assert!(n >= 1, "ideal powers are indexed from 1");
    let dim = algebra.dim();
    // a^1 = span{ g·m : g ∈ gens, m basis } (two-sided = one-sided, supercommutative)
    let mut first = Echelon::new(dim);
    let mut first_elems: Vec<WeilElement> = Vec::new();
    for g in gens {
        for m in 0..dim {
            let mono = WeilElement::from_coeffs(algebra, [(m, Scalar::one())]);
            let prod = g.mul(&mono)?;
            if first.insert(prod.to_dense()) {
                first_elems.push(prod);
            }
        }
    }
    let first_basis: Vec<Vec<Scalar>> = first.basis().map(|r| r.to_vec()).collect();
    let mut current = first_basis.clone();
    for _ in 1..n {
        let mut next = Echelon::new(dim);
        let mut rows = Vec::new();
        for a in &current {
            for b in &first_basis {
                let ea = WeilElement::from_dense(algebra, a);
                let eb = WeilElement::from_dense(algebra, b);
                let prod = ea.mul(&eb)?;
                if next.insert(prod.to_dense()) {
                    rows.push(prod.to_dense());
                }
            }
        }
        current = next.basis().map(|r| r.to_vec()).collect();
        if current.is_empty() {
            break;
        }
    }
    Ok(current.iter().map(|r| WeilElement::from_dense(algebra, r)).collect())
}

/// The non-unit basis elements, a generating set of `nilrad(A)`.
pub fn nilradical_generators(algebra: &Arc<WeilAlgebra>) -> Vec<WeilElement> {
    (0..algebra.dim())
        .filter(|&i| i != algebra.unit_index())
        .map(|i| WeilElement::from_coeffs(algebra, [(i, Scalar::one())]))
        .collect()
}

/// Echelonized basis of `A₁^[2]`, the `A₀`-span of all products of two odd
/// elements.
pub fn odd_pair_span(algebra: &Arc<WeilAlgebra>) -> Vec<WeilElement> {
    let dim = algebra.dim();
    let odd: Vec<usize> = (0..dim).filter(|&i| algebra.parity_of(i) == Parity::Odd).collect();
    let even: Vec<usize> = (0..dim).filter(|&i| algebra.parity_of(i) == Parity::Even).collect();
    let mut ech = Echelon::new(dim);
    let mut out = Vec::new();
    for &o1 in &odd {
        for &o2 in &odd {
            for &m in &even {
                let a = WeilElement::from_coeffs(algebra, [(o1, Scalar::one())]);
                let b = WeilElement::from_coeffs(algebra, [(o2, Scalar::one())]);
                let c = WeilElement::from_coeffs(algebra, [(m, Scalar::one())]);
                let prod = a.mul(&b).expect("same algebra").mul(&c).expect("same algebra");
                if ech.insert(prod.to_dense()) {
                    out.push(prod);
                }
            }
        }
    }
    out
}

/// A parity-preserving unital algebra morphism, stored as a sparse matrix on
/// basis elements.
pub struct WeilMorphism {
    source: Arc<WeilAlgebra>,
    target: Arc<WeilAlgebra>,
    rows: Vec<Vec<(usize, Scalar)>>,
}

impl WeilMorphism {
    fn new(
        source: Arc<WeilAlgebra>,
        target: Arc<WeilAlgebra>,
        rows: Vec<Vec<(usize, Scalar)>>,
    ) -> Result<Self> {
        // unital + parity-preserving, checked once at construction
        let unit_row = &rows[source.unit_index()];
        let ok_unit = unit_row.len() == 1
            && unit_row[0].0 == target.unit_index()
            && unit_row[0].1.is_one();
        if !ok_unit {
            return Err(Error::Invalid("morphism does not preserve the unit".into()));
        }
        for (i, row) in rows.iter().enumerate() {
            for (j, _) in row {
                if source.parity_of(i) != target.parity_of(*j) {
                    return Err(Error::Parity(format!(
                        "morphism maps `{}` across parities",
                        source.label(i)
                    )));
                }
            }
        }
        Ok(WeilMorphism { source, target, rows })
    }

    pub fn identity(algebra: &Arc<WeilAlgebra>) -> Self {
        let rows = (0..algebra.dim()).map(|i| vec![(i, Scalar::one())]).collect();
        WeilMorphism { source: Arc::clone(algebra), target: Arc::clone(algebra), rows }
    }

    /// The augmentation `p_A : A → Λ_0 ≅ K`.
    pub fn augmentation(algebra: &Arc<WeilAlgebra>) -> Self {
        let k = build_grassmann(0);
        let unit = algebra.unit_index();
        let rows = (0..algebra.dim())
            .map(|i| if i == unit { vec![(0, Scalar::one())] } else { Vec::new() })
            .collect();
        WeilMorphism { source: Arc::clone(algebra), target: k, rows }
    }

    /// The coefficient inclusion `i_A : A → A[ε]`.
    pub fn dual_inclusion(algebra: &Arc<WeilAlgebra>, dual: &Arc<WeilAlgebra>) -> Result<Self> {
        let rows = (0..algebra.dim())
            .map(|i| {
                let m = algebra.monomial_at(i);
                let j = dual
                    .monomial_index(m)
                    .ok_or_else(|| Error::Invalid("not a dual extension of the source".into()))?;
                Ok(vec![(j, Scalar::one())])
            })
            .collect::<Result<Vec<_>>>()?;
        WeilMorphism::new(Arc::clone(algebra), Arc::clone(dual), rows)
    }

    /// The drop-`ε` projection `p : A[ε] → A`, a retraction of `i_A`.
    pub fn dual_projection(dual: &Arc<WeilAlgebra>, algebra: &Arc<WeilAlgebra>) -> Result<Self> {
        let rows = (0..dual.dim())
            .map(|i| {
                let m = dual.monomial_at(i);
                if m.eps {
                    Ok(Vec::new())
                } else {
                    let j = algebra
                        .monomial_index(m)
                        .ok_or_else(|| Error::Invalid("not a dual extension of the target".into()))?;
                    Ok(vec![(j, Scalar::one())])
                }
            })
            .collect::<Result<Vec<_>>>()?;
        WeilMorphism::new(Arc::clone(dual), Arc::clone(algebra), rows)
    }

    pub fn source(&self) -> &Arc<WeilAlgebra> {
        &self.source
    }

    pub fn target(&self) -> &Arc<WeilAlgebra> {
        &self.target
    }

    pub fn apply(&self, x: &WeilElement) -> Result<WeilElement> {
        if !x.algebra().same_algebra(&self.source) {
            return Err(Error::AlgebraMismatch(
                self.source.descriptor().into(),
                x.algebra().descriptor().into(),
            ));
        }
        let mut out = WeilElement::zero(&self.target);
        for (i, c) in x.iter() {
            for (j, m) in &self.rows[i] {
                out.add_coeff(*j, c * m);
            }
        }
        Ok(out)
    }
}

/// Quotient of `A` by the `n`-th power of the ideal generated by `gens`
/// (which must be parity-homogeneous so the quotient is again graded).
/// Returns the quotient algebra, built on the complement monomials, together
/// with the projection morphism.
pub fn quotient_algebra(
    algebra: &Arc<WeilAlgebra>,
    gens: &[WeilElement],
    n: usize,
) -> Result<(Arc<WeilAlgebra>, WeilMorphism)> {
    for g in gens {
        if !(g.is_even() || g.is_odd()) {
            return Err(Error::Parity(
                "quotient generators must be parity-homogeneous".into(),
            ));
        }
    }
    let ideal = ideal_power_basis(algebra, gens, n)?;
    let dim = algebra.dim();
    let mut ech = Echelon::new(dim);
    for v in &ideal {
        ech.insert(v.to_dense());
    }
    let pivots = ech.pivot_columns();
    if pivots.contains(&algebra.unit_index()) {
        return Err(Error::Invalid("ideal contains the unit; quotient is not a Weil algebra".into()));
    }
    let complement: Vec<usize> = (0..dim).filter(|i| !pivots.contains(i)).collect();
    let qdim = complement.len();
    let col_of: HashMap<usize, usize> =
        complement.iter().enumerate().map(|(k, &i)| (i, k)).collect();

    // remainder of each monomial, expressed on the complement
    let project_dense = |v: &[Scalar]| -> Vec<(usize, Scalar)> {
        let rem = ech.remainder(v);
        rem.into_iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (col_of[&i], c))
            .collect()
    };

    let mut rows: Vec<Vec<(usize, Scalar)>> = Vec::with_capacity(dim);
    for i in 0..dim {
        let mut e = vec![Scalar::zero(); dim];
        e[i] = Scalar::one();
        rows.push(project_dense(&e));
    }

    // multiplication table on the complement
    let mut table: Vec<Vec<Vec<(usize, Scalar)>>> = vec![vec![Vec::new(); qdim]; qdim];
    for (a, &i) in complement.iter().enumerate() {
        for (b, &j) in complement.iter().enumerate() {
            let mut dense = vec![Scalar::zero(); dim];
            for (k, c) in algebra.basis_mul(i, j) {
                dense[k] += &c;
            }
            table[a][b] = project_dense(&dense);
        }
    }

    let parity: Vec<Parity> = complement.iter().map(|&i| algebra.parity_of(i)).collect();
    let labels: Vec<String> = complement.iter().map(|&i| format!("[{}]", algebra.label(i))).collect();
    let unit = col_of[&algebra.unit_index()];

    // nilpotency of the quotient, computed directly from its table
    let nilpotency = {
        let nil: Vec<usize> = (0..qdim).filter(|&k| k != unit).collect();
        let mut span: Vec<Vec<Scalar>> = nil
            .iter()
            .map(|&k| {
                let mut v = vec![Scalar::zero(); qdim];
                v[k] = Scalar::one();
                v
            })
            .collect();
        let mut power = 1;
        while !span.is_empty() {
            let mut e = Echelon::new(qdim);
            for row in &span {
                for &k in &nil {
                    let mut prod = vec![Scalar::zero(); qdim];
                    for (j, c) in row.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        for (t, m) in &table[j][k] {
                            let add = c * m;
                            prod[*t] += &add;
                        }
                    }
                    e.insert(prod);
                }
            }
            span = e.basis().map(|r| r.to_vec()).collect();
            power += 1;
            assert!(power <= algebra.nilpotency() + 1, "quotient nilpotency exceeds parent bound");
        }
        power
    };

    let gens_tag: Vec<String> = gens.iter().map(|g| g.to_string()).collect();
    let q = Arc::new(WeilAlgebra {
        descriptor: format!("quot:{}:pow{}:({})", algebra.descriptor(), n, gens_tag.join(", ")),
        basis: complement.iter().map(|&i| algebra.monomial_at(i)).collect(),
        index: complement.iter().enumerate().map(|(k, &i)| (algebra.monomial_at(i), k)).collect(),
        parity,
        labels,
        unit,
        nilpotency,
        odd_gens: 0,
        has_eps: false,
        mul: MulRule::Table(table),
    });
    let proj = WeilMorphism::new(Arc::clone(algebra), Arc::clone(&q), rows)?;
    Ok((q, proj))
}

//! Lie superalgebras by structure constants over the exact field, their
//! Weil-algebra points `L_g(A) = (A⊗g)₀`, Boseck splitting of points, the
//! nilpotent filtration of `n_g(A)`, and BCH logarithms computed through a
//! faithful matrix representation.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::Echelon;
use crate::report::{CheckItem, Validation};
use crate::scalar::Scalar;
use crate::superlinear::{koszul_compose, op_exp, op_log, AOperator, RhoEmbedding};
use crate::weil::{ideal_power_basis, Parity, WeilAlgebra, WeilElement};

/// A finite-dimensional Lie superalgebra with ordered even basis `X_j`,
/// ordered odd basis `Y_i` (the fixed total order every normal form depends
/// on — the input order, never re-sorted), and a full table of structure
/// constants.
pub struct LieSuperalgebra {
    even_names: Vec<String>,
    odd_names: Vec<String>,
    /// `bracket[a][b]` = sparse coefficients of `[e_a, e_b]`.
    bracket: Vec<Vec<Vec<(usize, Scalar)>>>,
}

impl fmt::Debug for LieSuperalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LieSuperalgebra(even={:?}, odd={:?})", self.even_names, self.odd_names)
    }
}

impl LieSuperalgebra {
    /// Builds the algebra from a sparse table of brackets on basis indices.
    /// A pair `(b, a)` that is absent while `(a, b)` is present is filled in
    /// by super-antisymmetry; pairs given twice are rejected.
    pub fn from_table(
        even_names: Vec<String>,
        odd_names: Vec<String>,
        entries: Vec<((usize, usize), Vec<(usize, Scalar)>)>,
    ) -> Result<Arc<Self>> {
        let dim = even_names.len() + odd_names.len();
        let mut bracket: Vec<Vec<Option<Vec<(usize, Scalar)>>>> = vec![vec![None; dim]; dim];
        for ((a, b), v) in entries {
            if a >= dim || b >= dim || v.iter().any(|(c, _)| *c >= dim) {
                return Err(Error::Invalid("bracket table index out of range".into()));
            }
            if bracket[a][b].is_some() {
                return Err(Error::Invalid(format!("bracket ({a},{b}) given twice")));
            }
            bracket[a][b] = Some(v.into_iter().filter(|(_, c)| !c.is_zero()).collect());
        }
        let tmp = LieSuperalgebra { even_names, odd_names, bracket: Vec::new() };
        let mut full: Vec<Vec<Vec<(usize, Scalar)>>> = vec![vec![Vec::new(); dim]; dim];
        for a in 0..dim {
            for b in 0..dim {
                if let Some(v) = bracket[a][b].clone() {
                    full[a][b] = v;
                } else if let Some(v) = bracket[b][a].clone() {
                    // [a,b] = −(−1)^{|a||b|} [b,a]
                    let sign = tmp.parity_of(a).sign_product(tmp.parity_of(b));
                    full[a][b] = v
                        .into_iter()
                        .map(|(c, s)| (c, if sign < 0 { s } else { -s }))
                        .collect();
                }
            }
        }
        Ok(Arc::new(LieSuperalgebra {
            even_names: tmp.even_names,
            odd_names: tmp.odd_names,
            bracket: full,
        }))
    }

    pub fn n_even(&self) -> usize {
        self.even_names.len()
    }

    /// `d₋`, the number of odd basis elements.
    pub fn n_odd(&self) -> usize {
        self.odd_names.len()
    }

    pub fn dim(&self) -> usize {
        self.n_even() + self.n_odd()
    }

    pub fn parity_of(&self, idx: usize) -> Parity {
        if idx < self.n_even() {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn name(&self, idx: usize) -> &str {
        if idx < self.n_even() {
            &self.even_names[idx]
        } else {
            &self.odd_names[idx - self.n_even()]
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.even_names
            .iter()
            .chain(&self.odd_names)
            .position(|n| n == name)
    }

    /// Basis index of the `k`-th odd element (in the fixed order).
    pub fn odd_index(&self, k: usize) -> usize {
        self.n_even() + k
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, Scalar)] {
        &self.bracket[a][b]
    }

    /// K-bilinear extension of the bracket to coefficient vectors.
    pub fn bracket_vec(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                let factor = xa * yb;
                for (c, s) in &self.bracket[a][b] {
                    let t = &factor * s;
                    out[*c] += &t;
                }
            }
        }
        out
    }

    /// `Y^⟨2⟩ = ½[Y,Y]` for an odd vector; error on even support.
    pub fn odd_square(&self, y: &[Scalar]) -> Result<Vec<Scalar>> {
        for (idx, c) in y.iter().enumerate() {
            if !c.is_zero() && self.parity_of(idx) == Parity::Even {
                return Err(Error::Parity("odd_square needs an odd element".into()));
            }
        }
        let half = Scalar::ratio(1, 2)?;
        Ok(self.bracket_vec(y, y).iter().map(|c| c * &half).collect())
    }

    /// Checks parity additivity, super-antisymmetry and the super Jacobi
    /// identity on all basis pairs/triples; failures carry a witness.
    pub fn validate(&self) -> Validation {
        let mut report = Validation::new("Lie superalgebra");
        let dim = self.dim();

        let mut parity_witness = None;
        'parity: for a in 0..dim {
            for b in 0..dim {
                let want = self.parity_of(a).add(self.parity_of(b));
                for (c, _) in &self.bracket[a][b] {
                    if self.parity_of(*c) != want {
                        parity_witness =
                            Some(format!("[{},{}] has a {} component", self.name(a), self.name(b), self.name(*c)));
                        break 'parity;
                    }
                }
            }
        }
        report.push(match parity_witness {
            None => CheckItem::pass("bracket parity additive"),
            Some(w) => CheckItem::fail("bracket parity additive", w),
        });

        let mut anti_witness = None;
        'anti: for a in 0..dim {
            for b in 0..dim {
                let mut sum = vec![Scalar::zero(); dim];
                for (c, s) in &self.bracket[a][b] {
                    sum[*c] += s;
                }
                let sign = self.parity_of(a).sign_product(self.parity_of(b));
                for (c, s) in &self.bracket[b][a] {
                    let t = if sign < 0 { -s } else { s.clone() };
                    sum[*c] += &t;
                }
                if sum.iter().any(|c| !c.is_zero()) {
                    anti_witness = Some(format!("({}, {})", self.name(a), self.name(b)));
                    break 'anti;
                }
            }
        }
        report.push(match anti_witness {
            None => CheckItem::pass("super-antisymmetry"),
            Some(w) => CheckItem::fail("super-antisymmetry", w),
        });

        let mut jacobi_witness = None;
        'jacobi: for x in 0..dim {
            for y in 0..dim {
                for z in 0..dim {
                    let basis = |i: usize| {
                        let mut v = vec![Scalar::zero(); dim];
                        v[i] = Scalar::one();
                        v
                    };
                    let (vx, vy, vz) = (basis(x), basis(y), basis(z));
                    let mut total = vec![Scalar::zero(); dim];
                    let terms = [
                        (x, z, self.bracket_vec(&vx, &self.bracket_vec(&vy, &vz))),
                        (y, x, self.bracket_vec(&vy, &self.bracket_vec(&vz, &vx))),
                        (z, y, self.bracket_vec(&vz, &self.bracket_vec(&vx, &vy))),
                    ];
                    for (p, q, term) in terms {
                        let sign = self.parity_of(p).sign_product(self.parity_of(q));
                        for (c, s) in term.iter().enumerate() {
                            let t = if sign < 0 { -s } else { s.clone() };
                            total[c] += &t;
                        }
                    }
                    if total.iter().any(|c| !c.is_zero()) {
                        jacobi_witness =
                            Some(format!("({}, {}, {})", self.name(x), self.name(y), self.name(z)));
                        break 'jacobi;
                    }
                }
            }
        }
        report.push(match jacobi_witness {
            None => CheckItem::pass("super Jacobi identity"),
            Some(w) => CheckItem::fail("super Jacobi identity", w),
        });

        report
    }

    /// Echelonized basis of `[g₁, g₁] ⊆ g₀` as coefficient vectors.
    pub fn odd_bracket_span(&self) -> Vec<Vec<Scalar>> {
        let mut ech = Echelon::new(self.dim());
        for i in 0..self.n_odd() {
            for l in 0..self.n_odd() {
                let mut vi = vec![Scalar::zero(); self.dim()];
                vi[self.odd_index(i)] = Scalar::one();
                let mut vl = vec![Scalar::zero(); self.dim()];
                vl[self.odd_index(l)] = Scalar::one();
                ech.insert(self.bracket_vec(&vi, &vl));
            }
        }
        ech.basis().map(|r| r.to_vec()).collect()
    }
}

/// A point of `L_g(A) = (A₀⊗g₀) ⊕ (A₁⊗g₁)`: one Weil coefficient per basis
/// element, with parity matching enforced.
#[derive(Clone)]
pub struct LiePoint {
    algebra: Arc<WeilAlgebra>,
    lie: Arc<LieSuperalgebra>,
    coeffs: Vec<WeilElement>,
}

impl LiePoint {
    pub fn new(
        algebra: &Arc<WeilAlgebra>,
        lie: &Arc<LieSuperalgebra>,
        coeffs: Vec<WeilElement>,
    ) -> Result<Self> {
        if coeffs.len() != lie.dim() {
            return Err(Error::Dimension("coefficient count != dim g".into()));
        }
        for (idx, c) in coeffs.iter().enumerate() {
            if !c.algebra().same_algebra(algebra) {
                return Err(Error::AlgebraMismatch(
                    algebra.descriptor().into(),
                    c.algebra().descriptor().into(),
                ));
            }
            let ok = match lie.parity_of(idx) {
                Parity::Even => c.is_even(),
                Parity::Odd => c.is_odd(),
            };
            if !ok {
                return Err(Error::Parity(format!(
                    "coefficient of {} has the wrong parity",
                    lie.name(idx)
                )));
            }
        }
        Ok(LiePoint { algebra: Arc::clone(algebra), lie: Arc::clone(lie), coeffs })
    }

    pub fn zero(algebra: &Arc<WeilAlgebra>, lie: &Arc<LieSuperalgebra>) -> Self {
        LiePoint {
            algebra: Arc::clone(algebra),
            lie: Arc::clone(lie),
            coeffs: vec![WeilElement::zero(algebra); lie.dim()],
        }
    }

    /// `a ⊗ e_idx` for a single basis element.
    pub fn from_basis(
        algebra: &Arc<WeilAlgebra>,
        lie: &Arc<LieSuperalgebra>,
        idx: usize,
        coeff: WeilElement,
    ) -> Result<Self> {
        let mut coeffs = vec![WeilElement::zero(algebra); lie.dim()];
        coeffs[idx] = coeff;
        Self::new(algebra, lie, coeffs)
    }

    pub fn algebra(&self) -> &Arc<WeilAlgebra> {
        &self.algebra
    }

    pub fn lie(&self) -> &Arc<LieSuperalgebra> {
        &self.lie
    }

    pub fn coeff(&self, idx: usize) -> &WeilElement {
        &self.coeffs[idx]
    }

    pub fn coeffs(&self) -> &[WeilElement] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(WeilElement::is_zero)
    }

    fn check_same(&self, rhs: &LiePoint) -> Result<()> {
        if !self.algebra.same_algebra(&rhs.algebra) {
            return Err(Error::AlgebraMismatch(
                self.algebra.descriptor().into(),
                rhs.algebra.descriptor().into(),
            ));
        }
        if !Arc::ptr_eq(&self.lie, &rhs.lie) && self.lie.dim() != rhs.lie.dim() {
            return Err(Error::Dimension("points of different Lie superalgebras".into()));
        }
        Ok(())
    }

    pub fn add(&self, rhs: &LiePoint) -> Result<LiePoint> {
        self.check_same(rhs)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| a.add(b))
            .collect::<Result<Vec<_>>>()?;
        Ok(LiePoint { algebra: Arc::clone(&self.algebra), lie: Arc::clone(&self.lie), coeffs })
    }

    pub fn sub(&self, rhs: &LiePoint) -> Result<LiePoint> {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> LiePoint {
        LiePoint {
            algebra: Arc::clone(&self.algebra),
            lie: Arc::clone(&self.lie),
            coeffs: self.coeffs.iter().map(WeilElement::neg).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> LiePoint {
        LiePoint {
            algebra: Arc::clone(&self.algebra),
            lie: Arc::clone(&self.lie),
            coeffs: self.coeffs.iter().map(|c| c.scale(s)).collect(),
        }
    }

    /// Scale by an even algebra element (keeps parity matching).
    pub fn scale_even(&self, a: &WeilElement) -> Result<LiePoint> {
        if !a.is_even() {
            return Err(Error::Parity("scaling a Lie point by an odd element".into()));
        }
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.mul(a))
            .collect::<Result<Vec<_>>>()?;
        Ok(LiePoint { algebra: Arc::clone(&self.algebra), lie: Arc::clone(&self.lie), coeffs })
    }

    /// Membership in `n_g(A)`: every even-basis coefficient augments to 0.
    pub fn in_nilpotent_kernel(&self) -> bool {
        (0..self.lie.n_even()).all(|j| self.coeffs[j].augment().is_zero())
    }

    /// The sign-rule bracket `[a⊗X, a′⊗X′] = (−1)^{|X||a′|} aa′ ⊗ [X,X′]`,
    /// which makes `L_g(A)` an ordinary Lie algebra.
    pub fn bracket(&self, rhs: &LiePoint) -> Result<LiePoint> {
        self.check_same(rhs)?;
        let lie = &self.lie;
        let mut coeffs = vec![WeilElement::zero(&self.algebra); lie.dim()];
        for a in 0..lie.dim() {
            if self.coeffs[a].is_zero() {
                continue;
            }
            for b in 0..lie.dim() {
                if rhs.coeffs[b].is_zero() {
                    continue;
                }
                // coefficient parities match basis parities, so the Koszul
                // sign is (−1)^{|e_a||e_b|}
                let sign = lie.parity_of(a).sign_product(lie.parity_of(b));
                let mut prod = self.coeffs[a].mul(&rhs.coeffs[b])?;
                if sign < 0 {
                    prod = prod.neg();
                }
                for (c, s) in lie.bracket_basis(a, b) {
                    coeffs[*c] = coeffs[*c].add(&prod.scale(s))?;
                }
            }
        }
        Ok(LiePoint { algebra: Arc::clone(&self.algebra), lie: Arc::clone(lie), coeffs })
    }

    /// Boseck splitting of a point: the `g₀`-part over the field (by
    /// augmentation) plus a remainder in `n_g(A)`; the sum reconstructs the
    /// point exactly.
    pub fn boseck_split(&self) -> (Vec<Scalar>, LiePoint) {
        let head: Vec<Scalar> = (0..self.lie.n_even()).map(|j| self.coeffs[j].augment()).collect();
        let mut coeffs = self.coeffs.clone();
        for (j, c) in head.iter().enumerate() {
            coeffs[j] = coeffs[j].sub(&WeilElement::scalar(&self.algebra, c.clone())).expect("same algebra");
        }
        let rest = LiePoint { algebra: Arc::clone(&self.algebra), lie: Arc::clone(&self.lie), coeffs };
        (head, rest)
    }

    /// Embeds the point as an operator `Σ x_b ⊗ ρ(b)`.
    pub fn embed(&self, rho: &RhoEmbedding) -> AOperator {
        let mut op = AOperator::zero(&self.algebra, rho.space());
        for (b, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            op = op.add(&AOperator::from_term(c, rho.matrix(b))).expect("same algebra");
        }
        op
    }
}

impl PartialEq for LiePoint {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_algebra(&other.algebra) && self.coeffs == other.coeffs
    }
}

impl Eq for LiePoint {}

impl fmt::Display for LiePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (idx, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})⊗{}", c, self.lie.name(idx))?;
        }
        Ok(())
    }
}

impl fmt::Debug for LiePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Pulls an operator back along a faithful embedding, monomial by monomial.
/// Fails when some coefficient matrix is outside `span ρ(g)` or the solution
/// violates parity matching.
pub fn pull_back_operator(
    op: &AOperator,
    lie: &Arc<LieSuperalgebra>,
    rho: &RhoEmbedding,
) -> Result<LiePoint> {
    let algebra = op.algebra();
    let mut coeffs = vec![WeilElement::zero(algebra); lie.dim()];
    for (mon, m) in op.terms() {
        let solution = rho.solve(m).ok_or_else(|| {
            Error::PullbackFailed(format!("coefficient of `{}`", algebra.label(mon)))
        })?;
        for (b, s) in solution.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            let mono = WeilElement::from_coeffs(algebra, [(mon, s.clone())]);
            coeffs[b] = coeffs[b].add(&mono).expect("same algebra");
        }
    }
    LiePoint::new(algebra, lie, coeffs)
}

/// Largest `d` with every coefficient of `x` inside `𝔞^d` (the ideal power
/// span from `gens`); 0 when some coefficient is outside `𝔞` itself, the
/// nilpotency bound when `x = 0`.
pub fn filtration_degree(x: &LiePoint, gens: &[WeilElement]) -> Result<usize> {
    if !x.in_nilpotent_kernel() {
        return Err(Error::Invalid("filtration degree needs a point of n_g(A)".into()));
    }
    let algebra = x.algebra();
    let bound = algebra.nilpotency();
    if x.is_zero() {
        return Ok(bound);
    }
    let mut best = 0;
    for d in 1..=bound {
        let basis = ideal_power_basis(algebra, gens, d)?;
        let mut ech = Echelon::new(algebra.dim());
        for v in &basis {
            ech.insert(v.to_dense());
        }
        let inside = x.coeffs().iter().all(|c| ech.contains(&c.to_dense()));
        if inside {
            best = d;
        } else {
            break;
        }
    }
    Ok(best)
}

/// The unique `z ∈ n_g(A)` with `exp(ρ(z)) = exp(ρ(x))·exp(ρ(y))`, computed
/// as an operator log pulled back along the faithful representation.
pub fn bch_log(x: &LiePoint, y: &LiePoint, rho: &RhoEmbedding) -> Result<LiePoint> {
    if !x.in_nilpotent_kernel() || !y.in_nilpotent_kernel() {
        return Err(Error::NotNilpotent("bch_log needs points of n_g(A)".into()));
    }
    let u = koszul_compose(&op_exp(&x.embed(rho))?, &op_exp(&y.embed(rho))?)?;
    pull_back_operator(&op_log(&u)?, x.lie(), rho)
}

//! The supergroup functor `G_P` built from a pair by generators and
//! relations: words in even points and odd factors `(1 + ηY)`, the
//! terminating rewrite onto the canonical split normal form
//! `(g₊, ordered odd coordinates)`, group operations, exp/log with the
//! nilpotent kernel `N_G(A)`, pushforward along algebra morphisms, and the
//! odd-subgroup factorization.
//!
//! The rewrite follows the re-ordering procedure behind the global splitting:
//! (i) odd factors with a `g₁`-vector expand into ordered basis factors,
//! (ii) even generators move left across odd factors by
//! `(1+ηY)·g = g·(1+η Ad(g⁻¹)Y)`, (iii) adjacent odd inversions are swapped,
//! emitting even correction factors `(1+η″η′[Y′,Y″])` or `(1+η″η′Y^⟨2⟩)` that
//! are folded into the even part. Every correction coefficient lies deeper in
//! the powers of the ideal generated by the word's odd coefficients, which
//! bounds the rewrite by the nilpotency index; the degree inequality is
//! checked at run time.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lie::{bch_log, pull_back_operator, LiePoint};
use crate::linalg::Echelon;
use crate::pair::{KFactor, SHCPair};
use crate::scalar::Scalar;
use crate::superlinear::{koszul_compose, op_exp, op_log, AOperator, SuperMatrix};
use crate::weil::{
    ideal_power_basis, nilradical_generators, odd_pair_span, Parity, WeilAlgebra, WeilElement,
    WeilMorphism,
};

/// A generator of `G_P(A)`.
#[derive(Clone)]
pub enum Generator {
    /// A word in the named K-point generators and their inverses.
    KPoint(Vec<KFactor>),
    /// `exp(Σ t_j X_j)` with `t_j ∈ nilrad(A)₀`.
    EvenExp(LiePoint),
    /// `(1 + η Y_i)` for the `i`-th odd basis element.
    OddFactor(WeilElement, usize),
    /// `(1 + η Y)` for a `g₁`-vector `Y = Σ c_i Y_i` over the field.
    OddFactorGeneral(WeilElement, Vec<Scalar>),
}

/// A finite product of generators; arbitrary words are allowed.
#[derive(Clone)]
pub struct GroupWord {
    pub pair: Arc<SHCPair>,
    pub algebra: Arc<WeilAlgebra>,
    pub gens: Vec<Generator>,
}

impl GroupWord {
    pub fn new(pair: &Arc<SHCPair>, algebra: &Arc<WeilAlgebra>, gens: Vec<Generator>) -> Self {
        GroupWord { pair: Arc::clone(pair), algebra: Arc::clone(algebra), gens }
    }
}

/// The canonical split form of a point of `G_P(A)`: an even part stored as
/// its K-point word with matrix together with an even nilpotent logarithm,
/// and the ordered odd coordinates `η: I → A₁`.
///
/// Equality is decided on the oracle image of the even part plus the
/// coordinate list; K-point words have no canonical form, the faithful
/// matrix does.
#[derive(Clone)]
pub struct SplitElement {
    pair: Arc<SHCPair>,
    algebra: Arc<WeilAlgebra>,
    kword: Vec<KFactor>,
    kmat: SuperMatrix,
    even_nil: LiePoint,
    coords: Vec<WeilElement>,
}

impl SplitElement {
    pub fn identity(pair: &Arc<SHCPair>, algebra: &Arc<WeilAlgebra>) -> Self {
        SplitElement {
            pair: Arc::clone(pair),
            algebra: Arc::clone(algebra),
            kword: Vec::new(),
            kmat: SuperMatrix::identity(pair.space()),
            even_nil: LiePoint::zero(algebra, pair.lie()),
            coords: vec![WeilElement::zero(algebra); pair.lie().n_odd()],
        }
    }

    pub fn pair(&self) -> &Arc<SHCPair> {
        &self.pair
    }

    pub fn algebra(&self) -> &Arc<WeilAlgebra> {
        &self.algebra
    }

    pub fn kword(&self) -> &[KFactor] {
        &self.kword
    }

    /// The K-point matrix, i.e. the augmentation of the even part.
    pub fn kmatrix(&self) -> &SuperMatrix {
        &self.kmat
    }

    /// The even nilpotent logarithm `T` with even part `= kmat·exp(T)`.
    pub fn even_log(&self) -> &LiePoint {
        &self.even_nil
    }

    pub fn coords(&self) -> &[WeilElement] {
        &self.coords
    }

    /// Membership in the Boseck kernel `N_G(A)`.
    pub fn is_kernel(&self) -> bool {
        self.kmat.is_identity()
    }

    /// Oracle image of the even part `g₊ = kmat · exp(ρ(T))`.
    pub fn even_oracle(&self) -> AOperator {
        let k = AOperator::from_matrix(&self.algebra, self.kmat.clone());
        let e = op_exp(&self.even_nil.embed(self.pair.rho())).expect("nilpotent log");
        koszul_compose(&k, &e).expect("same algebra")
    }

    /// Full oracle image `g₊ · ∏ (1 + η_i ρ(Y_i))`, ordered.
    pub fn oracle(&self) -> AOperator {
        let mut out = self.even_oracle();
        for (i, eta) in self.coords.iter().enumerate() {
            if eta.is_zero() {
                continue;
            }
            let factor = AOperator::identity(&self.algebra, self.pair.space())
                .add(&AOperator::from_term(eta, self.pair.rho().matrix(self.pair.lie().odd_index(i))))
                .expect("same algebra");
            out = koszul_compose(&out, &factor).expect("same algebra");
        }
        out
    }

    fn to_items(&self) -> Vec<Item> {
        let mut items: Vec<Item> = self.kword.iter().map(|f| Item::K(*f)).collect();
        if !self.even_nil.is_zero() {
            items.push(Item::Exp(self.even_nil.clone()));
        }
        for (i, eta) in self.coords.iter().enumerate() {
            if !eta.is_zero() {
                items.push(Item::Odd(eta.clone(), i));
            }
        }
        items
    }
}

impl PartialEq for SplitElement {
    fn eq(&self, other: &Self) -> bool {
        self.pair.name() == other.pair.name()
            && self.algebra.same_algebra(&other.algebra)
            && self.even_oracle() == other.even_oracle()
            && self.coords == other.coords
    }
}

impl Eq for SplitElement {}

impl fmt::Debug for SplitElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let words: Vec<String> = self
            .kword
            .iter()
            .map(|w| match w {
                KFactor::Gen(i) => self.pair.kpoints()[*i].name.clone(),
                KFactor::Inv(i) => format!("{}^-1", self.pair.kpoints()[*i].name),
            })
            .collect();
        write!(f, "Split(k=[{}], log={}, coords=[", words.join(" "), self.even_nil)?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "])")
    }
}

enum Item {
    K(KFactor),
    Exp(LiePoint),
    Odd(WeilElement, usize),
}

/// The rewrite engine; `kmat·exp(t)·∏ odds` is the running invariant shape.
struct Normalizer {
    pair: Arc<SHCPair>,
    algebra: Arc<WeilAlgebra>,
    kword: Vec<KFactor>,
    kmat: SuperMatrix,
    t: LiePoint,
    odds: Vec<(WeilElement, usize)>,
    /// spans of 𝔞^d for the termination measure (d = 1-based index)
    ideal_gens: Vec<WeilElement>,
    ideal_spans: Vec<Option<Echelon>>,
}

impl Normalizer {
    fn new(pair: &Arc<SHCPair>, algebra: &Arc<WeilAlgebra>, ideal_gens: Vec<WeilElement>) -> Self {
        let n = algebra.nilpotency();
        Normalizer {
            pair: Arc::clone(pair),
            algebra: Arc::clone(algebra),
            kword: Vec::new(),
            kmat: SuperMatrix::identity(pair.space()),
            t: LiePoint::zero(algebra, pair.lie()),
            odds: Vec::new(),
            ideal_gens,
            ideal_spans: (0..n).map(|_| None).collect(),
        }
    }

    /// 𝔞-adic degree of a coefficient: largest d with x ∈ 𝔞^d, the
    /// nilpotency bound for 0, and 0 when outside 𝔞.
    fn adeg(&mut self, x: &WeilElement) -> usize {
        let bound = self.algebra.nilpotency();
        if x.is_zero() {
            return bound;
        }
        if self.ideal_gens.is_empty() {
            return 0;
        }
        let mut best = 0;
        for d in 1..=bound {
            let span = self.ideal_spans[d - 1].get_or_insert_with(|| {
                let mut ech = Echelon::new(self.algebra.dim());
                for v in ideal_power_basis(&self.algebra, &self.ideal_gens, d)
                    .expect("ideal power basis")
                {
                    ech.insert(v.to_dense());
                }
                ech
            });
            if span.contains(&x.to_dense()) {
                best = d;
            } else {
                break;
            }
        }
        best
    }

    /// Expand a `g₁`-vector factor `(1 + η·(Σ_m w_m ⊗ Y_m))` into ordered
    /// basis factors. Exact because all summands pairwise multiply to zero,
    /// which is asserted.
    fn push_odd_vector(&mut self, point: &LiePoint) -> Result<()> {
        let lie = self.pair.lie();
        let coeffs: Vec<(WeilElement, usize)> = (0..lie.n_odd())
            .filter_map(|i| {
                let c = point.coeff(lie.odd_index(i));
                if c.is_zero() {
                    None
                } else {
                    Some((c.clone(), i))
                }
            })
            .collect();
        for (a, _) in &coeffs {
            for (b, _) in &coeffs {
                debug_assert!(
                    a.mul(b)?.is_zero(),
                    "odd vector expansion needs pairwise-vanishing coefficients"
                );
            }
        }
        self.odds.extend(coeffs);
        Ok(())
    }

    /// Move an even K-factor from the right end to the even part, crossing
    /// every odd factor via `F·k = k·(1 + η Ad(k⁻¹)Y)`.
    fn absorb_k(&mut self, f: KFactor) -> Result<()> {
        let lie = Arc::clone(self.pair.lie());
        let inv = match f {
            KFactor::Gen(i) => KFactor::Inv(i),
            KFactor::Inv(i) => KFactor::Gen(i),
        };
        let old = std::mem::take(&mut self.odds);
        for (eta, i) in old {
            let mut unit = vec![Scalar::zero(); lie.dim()];
            unit[lie.odd_index(i)] = Scalar::one();
            let image = self.pair.adjoint_action(&[inv], &unit)?;
            for (b, c) in image.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                if lie.parity_of(b) == Parity::Even {
                    return Err(Error::Parity(format!(
                        "Ad of an odd basis element hit {}; the pair is invalid",
                        lie.name(b)
                    )));
                }
                self.odds.push((eta.scale(c), b - lie.n_even()));
            }
        }
        // even part: kmat·exp(t)·k = kmat·k·exp(Ad(k⁻¹)t)
        let mut coeffs = vec![WeilElement::zero(&self.algebra); lie.dim()];
        for (b, c) in self.t.coeffs().iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mut unit = vec![Scalar::zero(); lie.dim()];
            unit[b] = Scalar::one();
            for (tgt, s) in self.pair.adjoint_action(&[inv], &unit)?.iter().enumerate() {
                if !s.is_zero() {
                    coeffs[tgt] = coeffs[tgt].add(&c.scale(s))?;
                }
            }
        }
        self.t = LiePoint::new(&self.algebra, &lie, coeffs)?;
        self.kword.push(f);
        let m = match f {
            KFactor::Gen(i) => self.pair.kpoints()[i].mat.clone(),
            KFactor::Inv(i) => self.pair.kpoints()[i].inv.clone(),
        };
        self.kmat = self.kmat.mul(&m);
        Ok(())
    }

    /// Move `exp(s)` from the right end into the even part, crossing odd
    /// factors via `Ad(exp(−s)) = exp(ad(−s))` and merging by BCH.
    fn absorb_exp(&mut self, s: &LiePoint) -> Result<()> {
        if s.is_zero() {
            return Ok(());
        }
        let lie = Arc::clone(self.pair.lie());
        let neg = s.neg();
        let old = std::mem::take(&mut self.odds);
        for (eta, i) in old {
            let p = LiePoint::from_basis(&self.algebra, &lie, lie.odd_index(i), eta)?;
            // exp(ad(−s)) applied to the factor's Lie point
            let mut acc = p.clone();
            let mut term = p;
            for k in 1..=self.algebra.nilpotency() {
                term = neg.bracket(&term)?.scale(&Scalar::recip_int(k as i64)?);
                if term.is_zero() {
                    break;
                }
                acc = acc.add(&term)?;
            }
            self.push_odd_vector(&acc)?;
        }
        self.t = bch_log(&self.t, s, self.pair.rho())?;
        Ok(())
    }

    fn absorb(&mut self, item: Item) -> Result<()> {
        match item {
            Item::K(f) => self.absorb_k(f),
            Item::Exp(s) => self.absorb_exp(&s),
            Item::Odd(eta, i) => {
                if i >= self.pair.lie().n_odd() {
                    return Err(Error::Invalid(format!("odd basis index {i} out of range")));
                }
                if !eta.is_zero() {
                    self.odds.push((eta, i));
                }
                Ok(())
            }
        }
    }

    /// Fix the leftmost inversion (equal or decreasing adjacent indices).
    /// The emitted correction crosses the prefix into the even part; the
    /// replaced pair and the suffix re-enter as fresh items. Returns `false`
    /// when the odd list is strictly ordered.
    fn sort_pass(&mut self) -> Result<bool> {
        let pos = match self.odds.windows(2).position(|w| w[0].1 >= w[1].1) {
            Some(p) => p,
            None => return Ok(false),
        };
        let lie = Arc::clone(self.pair.lie());
        let suffix: Vec<(WeilElement, usize)> = self.odds.split_off(pos + 2);
        let (eta_b, ib) = self.odds.pop().expect("pair");
        let (eta_a, ia) = self.odds.pop().expect("pair");

        let corr_coeff = eta_b.mul(&eta_a)?;
        let da = self.adeg(&eta_a);
        let db = self.adeg(&eta_b);
        let dc = self.adeg(&corr_coeff);
        let bound = self.algebra.nilpotency();
        if dc < (da + db).min(bound) {
            return Err(Error::Termination(format!(
                "correction degree {dc} < {da}+{db}"
            )));
        }

        let mut tail: Vec<(WeilElement, usize)> = Vec::new();
        let corr_vec: Vec<Scalar>;
        if ia == ib {
            // (1+ηₐY)(1+η_bY) = (1 + η_bηₐ Y^⟨2⟩)(1 + (ηₐ+η_b) Y)
            let mut unit = vec![Scalar::zero(); lie.dim()];
            unit[lie.odd_index(ia)] = Scalar::one();
            corr_vec = lie.odd_square(&unit)?;
            let merged = eta_a.add(&eta_b)?;
            if !merged.is_zero() {
                tail.push((merged, ia));
            }
        } else {
            // ia ≻ ib: (1+ηₐYₐ)(1+η_bY_b) = (1 + η_bηₐ[Y_b,Yₐ])(1+η_bY_b)(1+ηₐYₐ)
            let mut ua = vec![Scalar::zero(); lie.dim()];
            ua[lie.odd_index(ia)] = Scalar::one();
            let mut ub = vec![Scalar::zero(); lie.dim()];
            ub[lie.odd_index(ib)] = Scalar::one();
            corr_vec = lie.bracket_vec(&ub, &ua);
            tail.push((eta_b, ib));
            tail.push((eta_a, ia));
        }

        if !corr_coeff.is_zero() {
            let mut coeffs = vec![WeilElement::zero(&self.algebra); lie.dim()];
            for (c, s) in corr_vec.iter().enumerate() {
                if !s.is_zero() {
                    coeffs[c] = corr_coeff.scale(s);
                }
            }
            let corr = LiePoint::new(&self.algebra, &lie, coeffs)?;
            self.absorb_exp(&corr)?;
        }
        for (eta, i) in tail.into_iter().chain(suffix) {
            if !eta.is_zero() {
                self.odds.push((eta, i));
            }
        }
        Ok(true)
    }

    fn run(mut self, items: Vec<Item>) -> Result<SplitElement> {
        for item in items {
            self.absorb(item)?;
        }
        // generous bound: each fix either removes an inversion among current
        // factors or injects strictly deeper material, which dies at 𝔞^N
        let cap = 64
            + (self.odds.len() + 4) * (self.odds.len() + 4) * (self.algebra.nilpotency() + 2);
        let mut rounds = 0;
        while self.sort_pass()? {
            rounds += 1;
            if rounds > cap {
                return Err(Error::Termination(format!(
                    "rewrite did not terminate within {cap} passes"
                )));
            }
        }
        let mut coords = vec![WeilElement::zero(&self.algebra); self.pair.lie().n_odd()];
        for (eta, i) in self.odds {
            coords[i] = eta;
        }
        Ok(SplitElement {
            pair: self.pair,
            algebra: self.algebra,
            kword: self.kword,
            kmat: self.kmat,
            even_nil: self.t,
            coords,
        })
    }
}

fn word_to_items(word: &GroupWord) -> Result<(Vec<Item>, Vec<WeilElement>)> {
    let lie = word.pair.lie();
    let mut items = Vec::new();
    let mut odd_coeffs = Vec::new();
    for gen in &word.gens {
        match gen {
            Generator::KPoint(w) => {
                for f in w {
                    let idx = match f {
                        KFactor::Gen(i) | KFactor::Inv(i) => *i,
                    };
                    if idx >= word.pair.kpoints().len() {
                        return Err(Error::Invalid(format!("K-point index {idx} out of range")));
                    }
                    items.push(Item::K(*f));
                }
            }
            Generator::EvenExp(t) => {
                if !t.algebra().same_algebra(&word.algebra) {
                    return Err(Error::AlgebraMismatch(
                        word.algebra.descriptor().into(),
                        t.algebra().descriptor().into(),
                    ));
                }
                for i in 0..lie.n_odd() {
                    if !t.coeff(lie.odd_index(i)).is_zero() {
                        return Err(Error::Parity(
                            "even exponential with odd components".into(),
                        ));
                    }
                }
                if !t.in_nilpotent_kernel() {
                    return Err(Error::NotNilpotent(
                        "even exponential coefficients must augment to zero".into(),
                    ));
                }
                items.push(Item::Exp(t.clone()));
            }
            Generator::OddFactor(eta, i) => {
                if !eta.algebra().same_algebra(&word.algebra) {
                    return Err(Error::AlgebraMismatch(
                        word.algebra.descriptor().into(),
                        eta.algebra().descriptor().into(),
                    ));
                }
                if !eta.is_odd() {
                    return Err(Error::Parity("odd factor with an even coefficient".into()));
                }
                if *i >= lie.n_odd() {
                    return Err(Error::Invalid(format!("odd basis index {i} out of range")));
                }
                odd_coeffs.push(eta.clone());
                items.push(Item::Odd(eta.clone(), *i));
            }
            Generator::OddFactorGeneral(eta, v) => {
                if !eta.is_odd() {
                    return Err(Error::Parity("odd factor with an even coefficient".into()));
                }
                if v.len() != lie.n_odd() {
                    return Err(Error::Dimension("g₁-vector length != d₋".into()));
                }
                // (1 + η Σ c_i Y_i) = ∏ (1 + c_i η Y_i), any order
                for (i, c) in v.iter().enumerate() {
                    if c.is_zero() {
                        continue;
                    }
                    let coeff = eta.scale(c);
                    odd_coeffs.push(coeff.clone());
                    items.push(Item::Odd(coeff, i));
                }
            }
        }
    }
    Ok((items, odd_coeffs))
}

/// Rewrites a word into its unique split normal form.
pub fn normalize(word: &GroupWord) -> Result<SplitElement> {
    let (items, odd_coeffs) = word_to_items(word)?;
    let gens: Vec<WeilElement> = odd_coeffs.into_iter().filter(|c| !c.is_zero()).collect();
    Normalizer::new(&word.pair, &word.algebra, gens).run(items)
}

/// The plain Koszul-oracle product of a word's generators, with no
/// rewriting; the reference every normal form is compared against.
pub fn word_oracle(word: &GroupWord) -> Result<AOperator> {
    let pair = &word.pair;
    let algebra = &word.algebra;
    let lie = pair.lie();
    let rho = pair.rho();
    let mut out = AOperator::identity(algebra, pair.space());
    for gen in &word.gens {
        let factor = match gen {
            Generator::KPoint(w) => AOperator::from_matrix(algebra, pair.kword_matrix(w)),
            Generator::EvenExp(t) => op_exp(&t.embed(rho))?,
            Generator::OddFactor(eta, i) => AOperator::identity(algebra, pair.space())
                .add(&AOperator::from_term(eta, rho.matrix(lie.odd_index(*i))))?,
            Generator::OddFactorGeneral(eta, v) => {
                let mut f = AOperator::identity(algebra, pair.space());
                for (i, c) in v.iter().enumerate() {
                    if !c.is_zero() {
                        f = f.add(&AOperator::from_term(
                            &eta.scale(c),
                            rho.matrix(lie.odd_index(i)),
                        ))?;
                    }
                }
                f
            }
        };
        out = koszul_compose(&out, &factor)?;
    }
    Ok(out)
}

fn items_ideal_gens(s1: &SplitElement, s2: Option<&SplitElement>) -> Vec<WeilElement> {
    let mut gens: Vec<WeilElement> =
        s1.coords.iter().filter(|c| !c.is_zero()).cloned().collect();
    if let Some(s2) = s2 {
        gens.extend(s2.coords.iter().filter(|c| !c.is_zero()).cloned());
    }
    gens
}

/// Group multiplication: concatenate the underlying words and normalize.
pub fn gp_mul(s1: &SplitElement, s2: &SplitElement) -> Result<SplitElement> {
    if !s1.algebra.same_algebra(&s2.algebra) {
        return Err(Error::AlgebraMismatch(
            s1.algebra.descriptor().into(),
            s2.algebra.descriptor().into(),
        ));
    }
    let mut items = s1.to_items();
    items.extend(s2.to_items());
    Normalizer::new(&s1.pair, &s1.algebra, items_ideal_gens(s1, Some(s2))).run(items)
}

/// Group inverse by the reversed word.
pub fn gp_inv(s: &SplitElement) -> Result<SplitElement> {
    let mut items: Vec<Item> = Vec::new();
    for (i, eta) in s.coords.iter().enumerate().rev() {
        if !eta.is_zero() {
            items.push(Item::Odd(eta.neg(), i));
        }
    }
    if !s.even_nil.is_zero() {
        items.push(Item::Exp(s.even_nil.neg()));
    }
    for f in s.kword.iter().rev() {
        let inv = match f {
            KFactor::Gen(i) => KFactor::Inv(*i),
            KFactor::Inv(i) => KFactor::Gen(*i),
        };
        items.push(Item::K(inv));
    }
    Normalizer::new(&s.pair, &s.algebra, items_ideal_gens(s, None)).run(items)
}

/// The split form of `exp(Z)` for `Z ∈ n_g(A)`, by peeling leading factors
/// `∏ exp(t_j X_j) · ∏ (1 + η_i Y_i)` and recursing on the BCH remainder,
/// whose nilradical-adic degree strictly grows.
pub fn gp_exp(
    pair: &Arc<SHCPair>,
    algebra: &Arc<WeilAlgebra>,
    z: &LiePoint,
) -> Result<SplitElement> {
    if !z.in_nilpotent_kernel() {
        return Err(Error::NotNilpotent("gp_exp needs a point of n_g(A)".into()));
    }
    let lie = pair.lie();
    let rho = pair.rho();
    let nil_gens = nilradical_generators(algebra);
    let mut items: Vec<Item> = Vec::new();
    let mut remainder = op_exp(&z.embed(rho))?;
    let mut last_degree = 0usize;
    loop {
        let current = pull_back_operator(&op_log(&remainder)?, lie, rho)?;
        if current.is_zero() {
            break;
        }
        let degree = crate::lie::filtration_degree(&current, &nil_gens)?;
        if degree <= last_degree {
            return Err(Error::Termination(format!(
                "exp peeling stalled at nilradical degree {degree}"
            )));
        }
        last_degree = degree;
        // peel the even exponential, then the ordered odd factors
        let mut prefix = AOperator::identity(algebra, pair.space());
        let mut odd_factors: Vec<(WeilElement, usize)> = Vec::new();
        let mut even_coeffs = vec![WeilElement::zero(algebra); lie.dim()];
        for j in 0..lie.n_even() {
            even_coeffs[j] = current.coeff(j).clone();
        }
        let even = LiePoint::new(algebra, lie, even_coeffs)?;
        for i in 0..lie.n_odd() {
            let eta = current.coeff(lie.odd_index(i));
            if !eta.is_zero() {
                odd_factors.push((eta.clone(), i));
            }
        }
        if !even.is_zero() {
            items.push(Item::Exp(even.clone()));
            prefix = koszul_compose(&prefix, &op_exp(&even.embed(rho))?)?;
        }
        for (eta, i) in &odd_factors {
            items.push(Item::Odd(eta.clone(), *i));
            let f = AOperator::identity(algebra, pair.space())
                .add(&AOperator::from_term(eta, rho.matrix(lie.odd_index(*i))))?;
            prefix = koszul_compose(&prefix, &f)?;
        }
        // remainder ← prefix⁻¹ · remainder, built from the inverse factors
        let mut prefix_inv = AOperator::identity(algebra, pair.space());
        for (eta, i) in odd_factors.iter().rev() {
            let f = AOperator::identity(algebra, pair.space())
                .sub(&AOperator::from_term(eta, rho.matrix(lie.odd_index(*i))))?;
            prefix_inv = koszul_compose(&prefix_inv, &f)?;
        }
        if !even.is_zero() {
            prefix_inv = koszul_compose(&prefix_inv, &op_exp(&even.neg().embed(rho))?)?;
        }
        debug_assert_eq!(
            koszul_compose(&prefix_inv, &prefix).unwrap(),
            AOperator::identity(algebra, pair.space())
        );
        remainder = koszul_compose(&prefix_inv, &remainder)?;
    }
    let gens: Vec<WeilElement> = (0..lie.n_odd())
        .map(|i| z.coeff(lie.odd_index(i)).clone())
        .filter(|c| !c.is_zero())
        .collect();
    Normalizer::new(pair, algebra, gens).run(items)
}

/// The inverse of [`gp_exp`] on the Boseck kernel: the operator log of the
/// oracle image pulled back along `ρ`.
pub fn gp_log(s: &SplitElement) -> Result<LiePoint> {
    if !s.is_kernel() {
        return Err(Error::Invalid(
            "gp_log needs a kernel element (augmented even part = identity)".into(),
        ));
    }
    pull_back_operator(&op_log(&s.oracle())?, s.pair.lie(), s.pair.rho())
}

/// Functoriality in the algebra: apply a parity-preserving unital morphism
/// to every coefficient. A group homomorphism `G_P(A) → G_P(B)`.
pub fn gp_push(phi: &WeilMorphism, s: &SplitElement) -> Result<SplitElement> {
    if !phi.source().same_algebra(&s.algebra) {
        return Err(Error::AlgebraMismatch(
            phi.source().descriptor().into(),
            s.algebra.descriptor().into(),
        ));
    }
    let target = phi.target();
    let lie = s.pair.lie();
    let coeffs = s
        .even_nil
        .coeffs()
        .iter()
        .map(|c| phi.apply(c))
        .collect::<Result<Vec<_>>>()?;
    let even_nil = LiePoint::new(target, lie, coeffs)?;
    let coords = s.coords.iter().map(|c| phi.apply(c)).collect::<Result<Vec<_>>>()?;
    Ok(SplitElement {
        pair: Arc::clone(&s.pair),
        algebra: Arc::clone(target),
        kword: s.kword.clone(),
        kmat: s.kmat.clone(),
        even_nil,
        coords,
    })
}

/// Membership test for `A₁^[2] ⊗ [g₁,g₁]`, the home of the even corrections.
fn in_odd_square_sector(point: &LiePoint) -> Result<bool> {
    let algebra = point.algebra();
    let lie = point.lie();
    let adim = algebra.dim();
    let gdim = lie.dim();
    let weil_span = odd_pair_span(algebra);
    let lie_span = lie.odd_bracket_span();
    let mut ech = Echelon::new(adim * gdim);
    for w in &weil_span {
        for v in &lie_span {
            let mut flat = vec![Scalar::zero(); adim * gdim];
            for (m, c) in w.iter() {
                for (b, s) in v.iter().enumerate() {
                    if !s.is_zero() {
                        flat[m * gdim + b] = c * s;
                    }
                }
            }
            ech.insert(flat);
        }
    }
    let mut flat = vec![Scalar::zero(); adim * gdim];
    for (b, coeff) in point.coeffs().iter().enumerate() {
        for (m, c) in coeff.iter() {
            flat[m * gdim + b] = c.clone();
        }
    }
    Ok(ech.contains(&flat))
}

/// Factorization `G⁻(A) = N^[2](A) · G⁻^<(A)` of a word of odd factors and
/// `G₊^[2]` corrections: the even factor's logarithm (a point of
/// `A₁^[2]⊗[g₁,g₁]`, membership-checked) together with the ordered odd
/// coordinates.
pub fn factor_odd_subgroup(word: &GroupWord) -> Result<(LiePoint, Vec<WeilElement>)> {
    for gen in &word.gens {
        match gen {
            Generator::OddFactor(..) | Generator::OddFactorGeneral(..) => {}
            Generator::EvenExp(t) => {
                if !in_odd_square_sector(t)? {
                    return Err(Error::Invalid(
                        "even factor outside A₁^[2]⊗[g₁,g₁]".into(),
                    ));
                }
            }
            Generator::KPoint(_) => {
                return Err(Error::Invalid(
                    "factor_odd_subgroup takes only odd factors and G₊^[2] corrections".into(),
                ));
            }
        }
    }
    let split = normalize(word)?;
    debug_assert!(split.is_kernel());
    if !in_odd_square_sector(&split.even_nil)? {
        return Err(Error::Invalid(
            "normalized even part leaves A₁^[2]⊗[g₁,g₁]".into(),
        ));
    }
    Ok((split.even_nil.clone(), split.coords.clone()))
}

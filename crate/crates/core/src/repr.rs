//! Representations: PBW straightening in `U(g)`, the induced module
//! `V = ⋀g₁` with its `g`- and `G_P`-actions, the linear realization into
//! `GL(V)(A)`, induction from even modules, and the transfer of module
//! structures between pairs and groups.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lie::{LiePoint, LieSuperalgebra};
use crate::pair::{KFactor, SHCPair};
use crate::report::{CheckItem, Validation};
use crate::scalar::Scalar;
use crate::supergroup::{normalize, Generator, GroupWord, SplitElement};
use crate::superlinear::{koszul_compose, op_exp, AOperator, MatParity, SuperMatrix, SuperSpace};
use crate::weil::{adjoin_dual_number, build_grassmann, Parity, WeilElement};

/// A PBW normal-form monomial: strictly increasing odd basis indices (the
/// `⋀g₁` part) followed by a non-decreasing multiset of even basis indices
/// (the `U(g₀)` tail). The empty key is the unit.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub struct PBWKey {
    pub odd: Vec<usize>,
    pub even: Vec<usize>,
}

pub type PBWSum = BTreeMap<PBWKey, Scalar>;

fn pbw_add(sum: &mut PBWSum, key: PBWKey, c: Scalar) {
    if c.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match sum.entry(key) {
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

/// Rewrites a product of basis elements into the `⋀g₁ ⊗ U(g₀)` normal form
/// using `xy = (−1)^{|x||y|} yx + [x,y]` and `z² = z^⟨2⟩`.
pub fn pbw_straighten(lie: &LieSuperalgebra, word: &[usize]) -> Result<PBWSum> {
    for &idx in word {
        if idx >= lie.dim() {
            return Err(Error::Invalid(format!("unknown basis index {idx}")));
        }
    }
    let mut out = PBWSum::new();
    // worklist of pending terms; each rewrite strictly decreases
    // (length, inversions) lexicographically
    let mut work: Vec<(Scalar, Vec<usize>)> = vec![(Scalar::one(), word.to_vec())];
    while let Some((coeff, w)) = work.pop() {
        let violation = w.windows(2).position(|p| {
            let (l, r) = (p[0], p[1]);
            match (lie.parity_of(l), lie.parity_of(r)) {
                (Parity::Even, Parity::Odd) => true,
                (Parity::Odd, Parity::Odd) => l >= r,
                (Parity::Even, Parity::Even) => l > r,
                (Parity::Odd, Parity::Even) => false,
            }
        });
        let Some(p) = violation else {
            let split = w.iter().position(|&i| lie.parity_of(i) == Parity::Even).unwrap_or(w.len());
            let key = PBWKey { odd: w[..split].to_vec(), even: w[split..].to_vec() };
            pbw_add(&mut out, key, coeff);
            continue;
        };
        let (l, r) = (w[p], w[p + 1]);
        if lie.parity_of(l) == Parity::Odd && l == r {
            // z·z = z^⟨2⟩
            let mut unit = vec![Scalar::zero(); lie.dim()];
            unit[l] = Scalar::one();
            let sq = lie.odd_square(&unit)?;
            for (c, s) in sq.iter().enumerate() {
                if s.is_zero() {
                    continue;
                }
                let mut nw = w.clone();
                nw.splice(p..p + 2, [c]);
                work.push((&coeff * s, nw));
            }
            continue;
        }
        // swap with sign, then the bracket correction
        let sign = lie.parity_of(l).sign_product(lie.parity_of(r));
        let mut swapped = w.clone();
        swapped.swap(p, p + 1);
        work.push((if sign < 0 { -&coeff } else { coeff.clone() }, swapped));
        for (c, s) in lie.bracket_basis(l, r) {
            let mut nw = w.clone();
            nw.splice(p..p + 2, [*c]);
            work.push((&coeff * s, nw));
        }
    }
    Ok(out)
}

/// Matrices for a pair module: one per Lie basis element, one per K-point
/// generator.
#[derive(Clone)]
pub struct PairModule {
    pub space: SuperSpace,
    pub g_mats: Vec<SuperMatrix>,
    pub kpoint_mats: Vec<SuperMatrix>,
}

impl PairModule {
    fn kpoint_inverse(&self, i: usize) -> Result<SuperMatrix> {
        self.kpoint_mats[i].inverse()
    }
}

/// Matrices for an even (`G₊`-) module: the `g₀` basis and the K-points.
#[derive(Clone)]
pub struct EvenModule {
    pub space: SuperSpace,
    pub g0_mats: Vec<SuperMatrix>,
    pub kpoint_mats: Vec<SuperMatrix>,
}

/// The induced module `⋀g₁` with its action matrices and the designated
/// cyclic vector (the empty monomial).
pub struct InducedModule {
    pub module: PairModule,
    /// bitmask of odd basis positions per module basis index
    pub subsets: Vec<u32>,
    /// index of the cyclic vector `b̲`
    pub cyclic: usize,
}

/// Basis of `⋀g₁ ⊗ M₀` indexed by (odd subset, M₀ index), even vectors
/// first; subsets in subset-lexicographic order within each parity.
fn wedge_basis(d_minus: usize, m0: &SuperSpace) -> (SuperSpace, Vec<(u32, usize)>) {
    let mut subsets: Vec<u32> = (0..(1u32 << d_minus)).collect();
    subsets.sort_by_key(|m| {
        let bits: Vec<u32> = (0..32).filter(|i| m & (1 << i) != 0).collect();
        bits
    });
    let parity_of = |s: u32, v: usize| -> Parity {
        let sp = if s.count_ones() % 2 == 0 { Parity::Even } else { Parity::Odd };
        sp.add(m0.basis_parity(v))
    };
    let mut basis: Vec<(u32, usize)> = Vec::new();
    for want in [Parity::Even, Parity::Odd] {
        for &s in &subsets {
            for v in 0..m0.dim() {
                if parity_of(s, v) == want {
                    basis.push((s, v));
                }
            }
        }
    }
    let even = basis.iter().filter(|(s, v)| parity_of(*s, *v) == Parity::Even).count();
    (SuperSpace::new(even, basis.len() - even), basis)
}

fn mask_to_indices(lie: &LieSuperalgebra, mask: u32) -> Vec<usize> {
    (0..lie.n_odd()).filter(|i| mask & (1 << i) != 0).map(|i| lie.odd_index(i)).collect()
}

fn indices_to_mask(lie: &LieSuperalgebra, odd: &[usize]) -> u32 {
    odd.iter().map(|&b| 1u32 << (b - lie.n_even())).fold(0, |acc, bit| acc | bit)
}

/// Minor of the `Ad(k)|g₁` matrix: the coefficient of `y_T` in
/// `Λ(Ad k)(y_S)`.
fn exterior_minor(d: &[Vec<Scalar>], rows: &[usize], cols: &[usize]) -> Scalar {
    // Laplace expansion; the sets stay tiny
    if rows.is_empty() {
        return Scalar::one();
    }
    let mut det = Scalar::zero();
    for (k, &r) in rows.iter().enumerate() {
        let entry = &d[r][cols[0]];
        if entry.is_zero() {
            continue;
        }
        let sub_rows: Vec<usize> = rows.iter().copied().filter(|&x| x != r).collect();
        let minor = exterior_minor(d, &sub_rows, &cols[1..]);
        let signed = if k % 2 == 0 { entry * &minor } else { -&(entry * &minor) };
        det += &signed;
    }
    det
}

/// The action of `Λ(Ad k)` on the module basis, tensored with the `M₀`
/// action of the K-point.
fn exterior_kpoint_matrix(
    pair: &SHCPair,
    gen: usize,
    basis: &[(u32, usize)],
    space: &SuperSpace,
    m0_mat: &SuperMatrix,
) -> Result<SuperMatrix> {
    let lie = pair.lie();
    let d_minus = lie.n_odd();
    // D[m][i] = coefficient of Y_m in Ad(k)(Y_i)
    let mut d: Vec<Vec<Scalar>> = vec![vec![Scalar::zero(); d_minus]; d_minus];
    for i in 0..d_minus {
        let mut unit = vec![Scalar::zero(); lie.dim()];
        unit[lie.odd_index(i)] = Scalar::one();
        let image = pair.adjoint_action(&[KFactor::Gen(gen)], &unit)?;
        for m in 0..d_minus {
            d[m][i] = image[lie.odd_index(m)].clone();
        }
    }
    let index_of: BTreeMap<(u32, usize), usize> =
        basis.iter().enumerate().map(|(k, v)| (*v, k)).collect();
    let mut out = SuperMatrix::zero(space);
    for (col, (s_mask, v)) in basis.iter().enumerate() {
        let cols: Vec<usize> = (0..d_minus).filter(|i| s_mask & (1 << i) != 0).collect();
        // all subsets of the same size as images
        for (t_mask, w) in basis.iter() {
            if t_mask.count_ones() != s_mask.count_ones() {
                continue;
            }
            let rows: Vec<usize> = (0..d_minus).filter(|i| t_mask & (1 << i) != 0).collect();
            let det = exterior_minor(&d, &rows, &cols);
            if det.is_zero() {
                continue;
            }
            let m0_entry = m0_mat.at(*w, *v);
            if m0_entry.is_zero() {
                continue;
            }
            let row = index_of[&(*t_mask, *w)];
            *out.at_mut(row, col) += &(&det * m0_entry);
        }
    }
    Ok(out)
}

/// Induction of a `G₊`-module to the full pair: action matrices on
/// `⋀g₁ ⊗ M₀` for every basis element (by straightening, with `U(g₀)` tails
/// acting through `M₀`) and for every K-point generator (exterior adjoint
/// tensor `M₀`). The result is validated as a representation.
pub fn induce_from_even(pair: &Arc<SHCPair>, m0: &EvenModule) -> Result<InducedModule> {
    let lie = pair.lie();
    validate_even_module(pair, m0).into_result()?;
    let (space, basis) = wedge_basis(lie.n_odd(), &m0.space);
    let index_of: BTreeMap<(u32, usize), usize> =
        basis.iter().enumerate().map(|(k, v)| (*v, k)).collect();

    let mut g_mats = Vec::with_capacity(lie.dim());
    for b in 0..lie.dim() {
        let mut mat = SuperMatrix::zero(&space);
        for (col, (s_mask, v)) in basis.iter().enumerate() {
            let mut w = vec![b];
            w.extend(mask_to_indices(lie, *s_mask));
            for (key, c) in pbw_straighten(lie, &w)? {
                // the even tail acts on M₀ (left-to-right as matrices)
                let mut vec_v = vec![Scalar::zero(); m0.space.dim()];
                vec_v[*v] = Scalar::one();
                let mut tail = vec_v;
                for &e in key.even.iter().rev() {
                    let mat0 = &m0.g0_mats[e];
                    let mut next = vec![Scalar::zero(); m0.space.dim()];
                    for (i, row) in next.iter_mut().enumerate() {
                        for (j, t) in tail.iter().enumerate() {
                            if !t.is_zero() {
                                *row += &(mat0.at(i, j) * t);
                            }
                        }
                    }
                    tail = next;
                }
                let t_mask = indices_to_mask(lie, &key.odd);
                for (w_idx, t) in tail.iter().enumerate() {
                    if t.is_zero() {
                        continue;
                    }
                    let row = index_of[&(t_mask, w_idx)];
                    *mat.at_mut(row, col) += &(&c * t);
                }
            }
        }
        g_mats.push(mat);
    }

    let mut kpoint_mats = Vec::with_capacity(pair.kpoints().len());
    for gen in 0..pair.kpoints().len() {
        kpoint_mats.push(exterior_kpoint_matrix(pair, gen, &basis, &space, &m0.kpoint_mats[gen])?);
    }

    let module = PairModule { space, g_mats, kpoint_mats };
    validate_pair_module(pair, &module).into_result()?;
    let subsets: Vec<u32> = basis.iter().map(|(s, _)| *s).collect();
    let cyclic = index_of[&(0u32, 0usize)];
    Ok(InducedModule { module, subsets, cyclic })
}

/// The induced module of the trivial representation: `V = ⋀g₁`, cyclic
/// vector the empty monomial, `U(g₀)` tails acting as zero.
pub fn build_induced_trivial(pair: &Arc<SHCPair>) -> Result<InducedModule> {
    let trivial = EvenModule {
        space: SuperSpace::new(1, 0),
        g0_mats: vec![SuperMatrix::zero(&SuperSpace::new(1, 0)); pair.lie().n_even()],
        kpoint_mats: vec![SuperMatrix::identity(&SuperSpace::new(1, 0)); pair.kpoints().len()],
    };
    induce_from_even(pair, &trivial)
}

/// Super-commutator and odd-square identities for candidate action matrices.
pub fn validate_pair_module(pair: &SHCPair, module: &PairModule) -> Validation {
    let mut report = Validation::new("pair module");
    let lie = pair.lie();
    let dim = lie.dim();
    if module.g_mats.len() != dim || module.kpoint_mats.len() != pair.kpoints().len() {
        report.push(CheckItem::fail("matrix counts", "wrong number of action matrices"));
        return report;
    }

    let mut witness = None;
    for b in 0..dim {
        let want = match lie.parity_of(b) {
            Parity::Even => MatParity::Even,
            Parity::Odd => MatParity::Odd,
        };
        let got = module.g_mats[b].parity();
        if !(got == want || module.g_mats[b].is_zero()) {
            witness = Some(lie.name(b).to_string());
            break;
        }
    }
    report.push(match witness {
        None => CheckItem::pass("action parity blocks"),
        Some(w) => CheckItem::fail("action parity blocks", w),
    });

    let mut witness = None;
    'pairs: for a in 0..dim {
        for b in 0..dim {
            let mut want = SuperMatrix::zero(&module.space);
            for (c, s) in lie.bracket_basis(a, b) {
                want = want.add(&module.g_mats[*c].scale(s));
            }
            let ab = module.g_mats[a].mul(&module.g_mats[b]);
            let ba = module.g_mats[b].mul(&module.g_mats[a]);
            let got = if lie.parity_of(a).sign_product(lie.parity_of(b)) < 0 {
                ab.add(&ba)
            } else {
                ab.sub(&ba)
            };
            if got != want {
                witness = Some(format!("({}, {})", lie.name(a), lie.name(b)));
                break 'pairs;
            }
        }
    }
    report.push(match witness {
        None => CheckItem::pass("super-commutator identities"),
        Some(w) => CheckItem::fail("super-commutator identities", w),
    });

    let mut witness = None;
    for k in 0..lie.n_odd() {
        let z = lie.odd_index(k);
        let mut unit = vec![Scalar::zero(); dim];
        unit[z] = Scalar::one();
        let sq = lie.odd_square(&unit).expect("odd basis");
        let mut want = SuperMatrix::zero(&module.space);
        for (c, s) in sq.iter().enumerate() {
            want = want.add(&module.g_mats[c].scale(s));
        }
        if module.g_mats[z].mul(&module.g_mats[z]) != want {
            witness = Some(lie.name(z).to_string());
            break;
        }
    }
    report.push(match witness {
        None => CheckItem::pass("odd squares"),
        Some(w) => CheckItem::fail("odd squares", w),
    });

    let mut witness = None;
    'kp: for (i, k) in pair.kpoints().iter().enumerate() {
        let Ok(kinv) = module.kpoint_mats[i].inverse() else {
            witness = Some(format!("{} not invertible on the module", k.name));
            break 'kp;
        };
        for b in 0..dim {
            let mut unit = vec![Scalar::zero(); dim];
            unit[b] = Scalar::one();
            let Ok(image) = pair.adjoint_action(&[KFactor::Gen(i)], &unit) else {
                witness = Some(format!("Ad({}) undefined", k.name));
                break 'kp;
            };
            let mut want = SuperMatrix::zero(&module.space);
            for (c, s) in image.iter().enumerate() {
                want = want.add(&module.g_mats[c].scale(s));
            }
            let got = module.kpoint_mats[i].mul(&module.g_mats[b]).mul(&kinv);
            if got != want {
                witness = Some(format!("(k = {}, b = {})", k.name, lie.name(b)));
                break 'kp;
            }
        }
    }
    report.push(match witness {
        None => CheckItem::pass("K-point compatibility"),
        Some(w) => CheckItem::fail("K-point compatibility", w),
    });

    report
}

/// Restriction of an even module's axioms (a `g₀`-representation compatible
/// with the K-points).
pub fn validate_even_module(pair: &SHCPair, m0: &EvenModule) -> Validation {
    let mut report = Validation::new("even module");
    let lie = pair.lie();
    if m0.g0_mats.len() != lie.n_even() || m0.kpoint_mats.len() != pair.kpoints().len() {
        report.push(CheckItem::fail("matrix counts", "wrong number of matrices"));
        return report;
    }
    let mut witness = None;
    'pairs: for a in 0..lie.n_even() {
        for b in 0..lie.n_even() {
            let mut va = vec![Scalar::zero(); lie.dim()];
            va[a] = Scalar::one();
            let mut vb = vec![Scalar::zero(); lie.dim()];
            vb[b] = Scalar::one();
            let bracket = lie.bracket_vec(&va, &vb);
            let mut want = SuperMatrix::zero(&m0.space);
            for (c, s) in bracket.iter().enumerate().take(lie.n_even()) {
                want = want.add(&m0.g0_mats[c].scale(s));
            }
            let got = m0.g0_mats[a].mul(&m0.g0_mats[b]).sub(&m0.g0_mats[b].mul(&m0.g0_mats[a]));
            if got != want {
                witness = Some(format!("({}, {})", lie.name(a), lie.name(b)));
                break 'pairs;
            }
        }
    }
    report.push(match witness {
        None => CheckItem::pass("g₀ commutator identities"),
        Some(w) => CheckItem::fail("g₀ commutator identities", w),
    });

    let mut witness = None;
    'kp: for (i, k) in pair.kpoints().iter().enumerate() {
        let Ok(kinv) = m0.kpoint_mats[i].inverse() else {
            witness = Some(format!("{} not invertible on M₀", k.name));
            break 'kp;
        };
        for b in 0..lie.n_even() {
            let mut unit = vec![Scalar::zero(); lie.dim()];
            unit[b] = Scalar::one();
            let Ok(image) = pair.adjoint_action(&[KFactor::Gen(i)], &unit) else {
                witness = Some(format!("Ad({}) undefined", k.name));
                break 'kp;
            };
            let mut want = SuperMatrix::zero(&m0.space);
            for (c, s) in image.iter().enumerate().take(lie.n_even()) {
                want = want.add(&m0.g0_mats[c].scale(s));
            }
            let got = m0.kpoint_mats[i].mul(&m0.g0_mats[b]).mul(&kinv);
            if got != want {
                witness = Some(format!("(k = {}, X = {})", k.name, lie.name(b)));
                break 'kp;
            }
        }
    }
    report.push(match witness {
        None => CheckItem::pass("K-point compatibility on M₀"),
        Some(w) => CheckItem::fail("K-point compatibility on M₀", w),
    });
    report
}

/// The action of a split element on a module:
/// `(K-word) ∘ exp(Σ t_j ω(X_j)) ∘ ∏ (1 + η_i ⊗ ω(Y_i))`, ordered.
pub fn rp_operator(module: &PairModule, s: &SplitElement) -> Result<AOperator> {
    let pair = s.pair();
    let algebra = s.algebra();
    let lie = pair.lie();
    let mut kmat = SuperMatrix::identity(&module.space);
    for f in s.kword() {
        let m = match f {
            KFactor::Gen(i) => module.kpoint_mats[*i].clone(),
            KFactor::Inv(i) => module.kpoint_inverse(*i)?,
        };
        kmat = kmat.mul(&m);
    }
    let mut out = AOperator::from_matrix(algebra, kmat);
    let mut even = AOperator::zero(algebra, &module.space);
    for (b, c) in s.even_log().coeffs().iter().enumerate() {
        if !c.is_zero() {
            even = even.add(&AOperator::from_term(c, &module.g_mats[b]))?;
        }
    }
    out = koszul_compose(&out, &op_exp(&even)?)?;
    for (i, eta) in s.coords().iter().enumerate() {
        if eta.is_zero() {
            continue;
        }
        let factor = AOperator::identity(algebra, &module.space)
            .add(&AOperator::from_term(eta, &module.g_mats[lie.odd_index(i)]))?;
        out = koszul_compose(&out, &factor)?;
    }
    Ok(out)
}

/// The defining module: `ρ` itself with the K-point matrices.
pub fn defining_module(pair: &SHCPair) -> PairModule {
    PairModule {
        space: pair.space().clone(),
        g_mats: (0..pair.lie().dim()).map(|b| pair.rho().matrix(b).clone()).collect(),
        kpoint_mats: pair.kpoints().iter().map(|k| k.mat.clone()).collect(),
    }
}

/// The linear realization `Ω_A : G_P(A) → GL(V)(A)` on the defining space —
/// the separation oracle used throughout.
pub fn linearize(s: &SplitElement) -> Result<AOperator> {
    rp_operator(&defining_module(s.pair()), s)
}

/// A `G_P`-module presented by its action on split elements; the matrices
/// behind it are private so the pair structure can only be recovered through
/// the action, as the transfer theorem prescribes.
pub struct GroupModule {
    pair: Arc<SHCPair>,
    pm: PairModule,
}

impl GroupModule {
    pub fn space(&self) -> &SuperSpace {
        &self.pm.space
    }

    pub fn act(&self, s: &SplitElement) -> Result<AOperator> {
        if !Arc::ptr_eq(&self.pair, s.pair()) {
            return Err(Error::Invalid("module and element belong to different pairs".into()));
        }
        rp_operator(&self.pm, s)
    }
}

/// Pair module → group module: the generator formulas define the action.
pub fn pair_to_group(pair: &Arc<SHCPair>, pm: &PairModule) -> Result<GroupModule> {
    validate_pair_module(pair, pm).into_result()?;
    Ok(GroupModule { pair: Arc::clone(pair), pm: pm.clone() })
}

/// Group module → pair module, using only the action: K-points act over
/// `Λ₀`; even basis vectors are read off as the `ε`-coefficient of the
/// action of `exp(εX_j)` over `K[ε]`; odd basis vectors as the coefficient
/// of a fresh Grassmann generator in the action of `(1 + ξY_i)`.
pub fn group_to_pair(gm: &GroupModule) -> Result<PairModule> {
    let pair = &gm.pair;
    let lie = pair.lie();

    let l0 = build_grassmann(0);
    let kpoint_mats = (0..pair.kpoints().len())
        .map(|i| {
            let w = GroupWord::new(pair, &l0, vec![Generator::KPoint(vec![KFactor::Gen(i)])]);
            Ok(gm.act(&normalize(&w)?)?.augment())
        })
        .collect::<Result<Vec<_>>>()?;

    let keps = adjoin_dual_number(&l0)?;
    let eps = WeilElement::eps(&keps)?;
    let eps_idx = keps.monomial_index(crate::weil::Monomial { xi: 0, eps: true }).expect("eps");
    let l1 = build_grassmann(1);
    let x1 = WeilElement::generator(&l1, 1)?;
    let x1_idx = l1.monomial_index(crate::weil::Monomial { xi: 1, eps: false }).expect("xi1");

    let mut g_mats = Vec::with_capacity(lie.dim());
    for b in 0..lie.dim() {
        let mat = match lie.parity_of(b) {
            Parity::Even => {
                let t = LiePoint::from_basis(&keps, lie, b, eps.clone())?;
                let w = GroupWord::new(pair, &keps, vec![Generator::EvenExp(t)]);
                gm.act(&normalize(&w)?)?.coefficient(eps_idx)
            }
            Parity::Odd => {
                let i = b - lie.n_even();
                let w = GroupWord::new(
                    pair,
                    &l1,
                    vec![Generator::OddFactor(x1.clone(), i)],
                );
                gm.act(&normalize(&w)?)?.coefficient(x1_idx)
            }
        };
        g_mats.push(mat);
    }
    Ok(PairModule { space: gm.pm.space.clone(), g_mats, kpoint_mats })
}

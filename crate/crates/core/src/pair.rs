//! Super Harish-Chandra pairs in linear presentation: a Lie superalgebra
//! with a faithful matrix representation plus explicit K-point generators of
//! the even group, the adjoint action, and pair morphisms.
//!
//! The even group is modeled by its K-points as a generated matrix group
//! together with exponentials of even nilpotent points; no atlas is stored.
//! The unverifiable "Lie(G₊) = g₀" axiom is replaced by its two checkable
//! consequences: conjugation stability of `ρ(g)` under every generator, and
//! the dual-number differential identity `Ad(exp(εX)) = id + ε·ad(X)`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::lie::LieSuperalgebra;
use crate::report::{CheckItem, Validation};
use crate::scalar::Scalar;
use crate::superlinear::{
    koszul_compose, AOperator, MatParity, RhoEmbedding, SuperMatrix, SuperSpace,
};
use crate::weil::{adjoin_dual_number, build_grassmann, Parity, WeilElement};

/// One letter of a word in the K-point generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum KFactor {
    Gen(usize),
    Inv(usize),
}

/// A named K-point generator with its cached inverse and (when the pair is
/// valid) the adjoint action on `g` and its inverse.
pub struct KPointGen {
    pub name: String,
    pub mat: SuperMatrix,
    pub inv: SuperMatrix,
    ad: Option<Vec<Vec<Scalar>>>,
    ad_inv: Option<Vec<Vec<Scalar>>>,
}

pub struct SHCPair {
    name: String,
    lie: Arc<LieSuperalgebra>,
    space: SuperSpace,
    rho: RhoEmbedding,
    kpoints: Vec<KPointGen>,
}

impl fmt::Debug for SHCPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SHCPair({})", self.name)
    }
}

/// Conjugate `ρ(e_b)` by `k` and pull back; `None` when the conjugate leaves
/// the span of `ρ(g)`.
fn ad_matrix(rho: &RhoEmbedding, k: &SuperMatrix, k_inv: &SuperMatrix) -> Option<Vec<Vec<Scalar>>> {
    (0..rho.dim())
        .map(|b| {
            let conj = k.mul(rho.matrix(b)).mul(k_inv);
            rho.solve(&conj)
        })
        .collect()
}

impl SHCPair {
    /// Assembles a pair. Structural impossibilities (wrong dimensions, a
    /// dependent representation, a singular K-point) fail here; everything
    /// else is deferred to [`SHCPair::validate`].
    pub fn new(
        name: impl Into<String>,
        lie: Arc<LieSuperalgebra>,
        space: SuperSpace,
        rho_mats: Vec<SuperMatrix>,
        kpoints: Vec<(String, SuperMatrix)>,
    ) -> Result<Arc<Self>> {
        if rho_mats.len() != lie.dim() {
            return Err(Error::Dimension("one representation matrix per basis element".into()));
        }
        let rho = RhoEmbedding::new(space.clone(), rho_mats)?;
        let kpoints = kpoints
            .into_iter()
            .map(|(name, mat)| {
                let inv = mat.inverse().map_err(|_| {
                    Error::Invalid(format!("K-point generator `{name}` is not invertible"))
                })?;
                let ad = ad_matrix(&rho, &mat, &inv);
                let ad_inv = ad_matrix(&rho, &inv, &mat);
                Ok(KPointGen { name, mat, inv, ad, ad_inv })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Arc::new(SHCPair { name: name.into(), lie, space, rho, kpoints }))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn lie(&self) -> &Arc<LieSuperalgebra> {
        &self.lie
    }

    pub fn space(&self) -> &SuperSpace {
        &self.space
    }

    pub fn rho(&self) -> &RhoEmbedding {
        &self.rho
    }

    pub fn kpoints(&self) -> &[KPointGen] {
        &self.kpoints
    }

    pub fn kpoint_index(&self, name: &str) -> Option<usize> {
        self.kpoints.iter().position(|k| k.name == name)
    }

    /// Matrix of a word in the K-point generators.
    pub fn kword_matrix(&self, word: &[KFactor]) -> SuperMatrix {
        let mut out = SuperMatrix::identity(&self.space);
        for f in word {
            let m = match f {
                KFactor::Gen(i) => &self.kpoints[*i].mat,
                KFactor::Inv(i) => &self.kpoints[*i].inv,
            };
            out = out.mul(m);
        }
        out
    }

    fn ad_of(&self, f: KFactor) -> Result<&Vec<Vec<Scalar>>> {
        let (idx, table) = match f {
            KFactor::Gen(i) => (i, &self.kpoints[i].ad),
            KFactor::Inv(i) => (i, &self.kpoints[i].ad_inv),
        };
        table.as_ref().ok_or_else(|| {
            Error::Invalid(format!(
                "conjugation by `{}` leaves the span of ρ(g); the pair is invalid",
                self.kpoints[idx].name
            ))
        })
    }

    /// `Ad` of a word in the K-point generators on a coefficient vector:
    /// the coordinates of `ρ⁻¹(k·ρ(Z)·k⁻¹)`.
    pub fn adjoint_action(&self, word: &[KFactor], z: &[Scalar]) -> Result<Vec<Scalar>> {
        let mut v = z.to_vec();
        for f in word.iter().rev() {
            let table = self.ad_of(*f)?;
            let mut out = vec![Scalar::zero(); self.lie.dim()];
            for (b, c) in v.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (t, s) in table[b].iter().enumerate() {
                    let add = c * s;
                    out[t] += &add;
                }
            }
            v = out;
        }
        Ok(v)
    }

    /// Checks every pair axiom that is expressible as a finite matrix
    /// identity; failures carry a witness (basis pair or generator).
    pub fn validate(&self) -> Validation {
        let mut report = Validation::new(format!("pair {}", self.name));
        let lie = &self.lie;
        let dim = lie.dim();

        // underlying Lie superalgebra axioms
        for item in lie.validate().items {
            report.push(item);
        }

        // ρ respects the parity blocks of End(V)
        let mut witness = None;
        for b in 0..dim {
            let want = match lie.parity_of(b) {
                Parity::Even => MatParity::Even,
                Parity::Odd => MatParity::Odd,
            };
            let got = self.rho.matrix(b).parity();
            let ok = got == want || self.rho.matrix(b).is_zero();
            if !ok {
                witness = Some(format!("ρ({})", lie.name(b)));
                break;
            }
        }
        report.push(match witness {
            None => CheckItem::pass("rho parity blocks"),
            Some(w) => CheckItem::fail("rho parity blocks", w),
        });

        // ρ is a bracket morphism: ρ([a,b]) = ρ(a)ρ(b) − (−1)^{|a||b|} ρ(b)ρ(a)
        let mut witness = None;
        'outer: for a in 0..dim {
            for b in 0..dim {
                let mut want = SuperMatrix::zero(&self.space);
                for (c, s) in lie.bracket_basis(a, b) {
                    want = want.add(&self.rho.matrix(*c).scale(s));
                }
                let ab = self.rho.matrix(a).mul(self.rho.matrix(b));
                let ba = self.rho.matrix(b).mul(self.rho.matrix(a));
                let got = if lie.parity_of(a).sign_product(lie.parity_of(b)) < 0 {
                    ab.add(&ba)
                } else {
                    ab.sub(&ba)
                };
                if got != want {
                    witness = Some(format!("({}, {})", lie.name(a), lie.name(b)));
                    break 'outer;
                }
            }
        }
        report.push(match witness {
            None => CheckItem::pass("rho bracket morphism"),
            Some(w) => CheckItem::fail("rho bracket morphism", w),
        });

        // odd squares: ρ(z)² = ρ(z^⟨2⟩)
        let mut witness = None;
        for k in 0..lie.n_odd() {
            let z = lie.odd_index(k);
            let mut v = vec![Scalar::zero(); dim];
            v[z] = Scalar::one();
            let sq = lie.odd_square(&v).expect("odd basis element");
            let mut want = SuperMatrix::zero(&self.space);
            for (c, s) in sq.iter().enumerate() {
                want = want.add(&self.rho.matrix(c).scale(s));
            }
            let got = self.rho.matrix(z).mul(self.rho.matrix(z));
            if got != want {
                witness = Some(lie.name(z).to_string());
                break;
            }
        }
        report.push(match witness {
            None => CheckItem::pass("rho odd squares"),
            Some(w) => CheckItem::fail("rho odd squares", w),
        });

        // injectivity held by construction of the embedding
        report.push(CheckItem::pass("rho injective on g"));

        for (i, k) in self.kpoints.iter().enumerate() {
            let prefix = format!("K-point `{}`", k.name);
            report.push(if k.mat.parity() == MatParity::Even {
                CheckItem::pass(format!("{prefix} is even"))
            } else {
                CheckItem::fail(format!("{prefix} is even"), "off-diagonal block present")
            });

            match (&k.ad, &k.ad_inv) {
                (Some(ad), Some(_)) => {
                    // parity preservation of Ad(k)
                    let mut witness = None;
                    for b in 0..dim {
                        for (t, s) in ad[b].iter().enumerate() {
                            if !s.is_zero() && lie.parity_of(t) != lie.parity_of(b) {
                                witness = Some(format!("Ad({})({})", k.name, lie.name(b)));
                                break;
                            }
                        }
                    }
                    report.push(match witness {
                        None => CheckItem::pass(format!("{prefix} adjoint preserves parity")),
                        Some(w) => CheckItem::fail(format!("{prefix} adjoint preserves parity"), w),
                    });

                    // bracket compatibility on basis pairs
                    let mut witness = None;
                    'pairs: for a in 0..dim {
                        for b in 0..dim {
                            let mut va = vec![Scalar::zero(); dim];
                            va[a] = Scalar::one();
                            let mut vb = vec![Scalar::zero(); dim];
                            vb[b] = Scalar::one();
                            let word = [KFactor::Gen(i)];
                            let lhs = self
                                .adjoint_action(&word, &lie.bracket_vec(&va, &vb))
                                .expect("ad exists");
                            let rhs = lie.bracket_vec(
                                &self.adjoint_action(&word, &va).expect("ad exists"),
                                &self.adjoint_action(&word, &vb).expect("ad exists"),
                            );
                            if lhs != rhs {
                                witness = Some(format!("({}, {})", lie.name(a), lie.name(b)));
                                break 'pairs;
                            }
                        }
                    }
                    report.push(match witness {
                        None => CheckItem::pass(format!("{prefix} adjoint preserves brackets")),
                        Some(w) => CheckItem::fail(format!("{prefix} adjoint preserves brackets"), w),
                    });
                }
                _ => {
                    report.push(CheckItem::fail(
                        format!("{prefix} conjugation stabilizes ρ(g)"),
                        "some conjugate leaves the span",
                    ));
                }
            }
        }

        // differential identity over K[ε]: Ad(exp(εX))(Z) = Z + ε[X,Z]
        let keps = adjoin_dual_number(&build_grassmann(0)).expect("K[eps]");
        let eps = WeilElement::eps(&keps).expect("eps");
        let mut witness = None;
        'eps: for j in 0..lie.n_even() {
            let g = AOperator::identity(&keps, &self.space)
                .add(&AOperator::from_term(&eps, self.rho.matrix(j)))
                .expect("same algebra");
            let g_inv = AOperator::identity(&keps, &self.space)
                .sub(&AOperator::from_term(&eps, self.rho.matrix(j)))
                .expect("same algebra");
            for b in 0..dim {
                let z = AOperator::from_matrix(&keps, self.rho.matrix(b).clone());
                let conj = koszul_compose(&koszul_compose(&g, &z).expect("compose"), &g_inv)
                    .expect("compose");
                let mut vx = vec![Scalar::zero(); dim];
                vx[j] = Scalar::one();
                let mut vb = vec![Scalar::zero(); dim];
                vb[b] = Scalar::one();
                let mut bracket_mat = SuperMatrix::zero(&self.space);
                for (c, s) in lie.bracket_vec(&vx, &vb).iter().enumerate() {
                    bracket_mat = bracket_mat.add(&self.rho.matrix(c).scale(s));
                }
                let want = z
                    .add(&AOperator::from_term(&eps, &bracket_mat))
                    .expect("same algebra");
                if conj != want {
                    witness = Some(format!("(X = {}, Z = {})", lie.name(j), lie.name(b)));
                    break 'eps;
                }
            }
        }
        report.push(match witness {
            None => CheckItem::pass("differential identity Ad(exp(eps X)) = id + eps ad(X)"),
            Some(w) => CheckItem::fail("differential identity Ad(exp(eps X)) = id + eps ad(X)", w),
        });

        report
    }
}

/// A morphism of pairs: a linear map `ω` on the superalgebras, a map `Ω₊` of
/// K-point generators to words in the target generators, and the claimed
/// derivative `dΩ₊` on the even part, validated against `ω`.
pub struct PairMorphism {
    pub source: Arc<SHCPair>,
    pub target: Arc<SHCPair>,
    /// `omega[b]` = coefficients of `ω(e_b)` in the target basis.
    pub omega: Vec<Vec<Scalar>>,
    /// Per source K-point generator, a word in the target generators.
    pub omega_plus: Vec<Vec<KFactor>>,
    /// Per source even basis element, the supplied derivative image.
    pub d_omega_plus: Vec<Vec<Scalar>>,
}

impl PairMorphism {
    pub fn identity(pair: &Arc<SHCPair>) -> Self {
        let dim = pair.lie().dim();
        let unit = |b: usize| {
            let mut v = vec![Scalar::zero(); dim];
            v[b] = Scalar::one();
            v
        };
        PairMorphism {
            source: Arc::clone(pair),
            target: Arc::clone(pair),
            omega: (0..dim).map(unit).collect(),
            omega_plus: (0..pair.kpoints().len()).map(|i| vec![KFactor::Gen(i)]).collect(),
            d_omega_plus: (0..pair.lie().n_even()).map(unit).collect(),
        }
    }

    pub fn apply_omega(&self, v: &[Scalar]) -> Vec<Scalar> {
        let tdim = self.target.lie().dim();
        let mut out = vec![Scalar::zero(); tdim];
        for (b, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (t, s) in self.omega[b].iter().enumerate() {
                let add = c * s;
                out[t] += &add;
            }
        }
        out
    }

    /// Checks that `ω` is a graded bracket morphism and that condition (d)
    /// holds on all generators: `ω∘Ad(k) = Ad(Ω₊(k))∘ω` and `ω|g₀ = dΩ₊`.
    pub fn validate(&self) -> Validation {
        let mut report = Validation::new("pair morphism");
        let src = self.source.lie();
        let tgt = self.target.lie();
        let dim = src.dim();

        let mut witness = None;
        for b in 0..dim {
            for (t, s) in self.omega[b].iter().enumerate() {
                if !s.is_zero() && tgt.parity_of(t) != src.parity_of(b) {
                    witness = Some(format!("omega({})", src.name(b)));
                    break;
                }
            }
        }
        report.push(match witness {
            None => CheckItem::pass("omega parity preserving"),
            Some(w) => CheckItem::fail("omega parity preserving", w),
        });

        let mut witness = None;
        'pairs: for a in 0..dim {
            for b in 0..dim {
                let mut va = vec![Scalar::zero(); dim];
                va[a] = Scalar::one();
                let mut vb = vec![Scalar::zero(); dim];
                vb[b] = Scalar::one();
                let lhs = self.apply_omega(&src.bracket_vec(&va, &vb));
                let rhs = tgt.bracket_vec(&self.apply_omega(&va), &self.apply_omega(&vb));
                if lhs != rhs {
                    witness = Some(format!("({}, {})", src.name(a), src.name(b)));
                    break 'pairs;
                }
            }
        }
        report.push(match witness {
            None => CheckItem::pass("omega bracket morphism"),
            Some(w) => CheckItem::fail("omega bracket morphism", w),
        });

        // ω|g₀ = dΩ₊
        let mut witness = None;
        for j in 0..src.n_even() {
            if self.omega[j] != self.d_omega_plus[j] {
                witness = Some(src.name(j).to_string());
                break;
            }
        }
        report.push(match witness {
            None => CheckItem::pass("omega restricts to dOmega+"),
            Some(w) => CheckItem::fail("omega restricts to dOmega+", w),
        });

        // ω ∘ Ad(k) = Ad(Ω₊(k)) ∘ ω on generators
        let mut witness = None;
        'gens: for (i, k) in self.source.kpoints().iter().enumerate() {
            for b in 0..dim {
                let mut vb = vec![Scalar::zero(); dim];
                vb[b] = Scalar::one();
                let lhs = match self.source.adjoint_action(&[KFactor::Gen(i)], &vb) {
                    Ok(v) => self.apply_omega(&v),
                    Err(_) => {
                        witness = Some(format!("Ad({}) undefined", k.name));
                        break 'gens;
                    }
                };
                let rhs = match self.target.adjoint_action(&self.omega_plus[i], &self.apply_omega(&vb)) {
                    Ok(v) => v,
                    Err(_) => {
                        witness = Some(format!("Ad(Omega+({})) undefined", k.name));
                        break 'gens;
                    }
                };
                if lhs != rhs {
                    witness = Some(format!("(k = {}, Z = {})", k.name, src.name(b)));
                    break 'gens;
                }
            }
        }
        report.push(match witness {
            None => CheckItem::pass("condition (d) on generators"),
            Some(w) => CheckItem::fail("condition (d) on generators", w),
        });

        report
    }
}

//! File formats: pair files (structure constants + representation + K-point
//! generators), word files (token lists), Weil algebra descriptors, and the
//! JSON rendering of split normal forms and Lie points. All maps use sorted
//! keys so serialization is canonical.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expr::parse_coeff_expr;
use crate::lie::{LiePoint, LieSuperalgebra};
use crate::pair::{KFactor, SHCPair};
use crate::repr::EvenModule;
use crate::scalar::Scalar;
use crate::supergroup::{Generator, GroupWord, SplitElement};
use crate::superlinear::{SuperMatrix, SuperSpace};
use crate::weil::{adjoin_dual_number, build_grassmann, WeilAlgebra};

/// Parses `grassmann:<n>` or `dual:grassmann:<n>`.
pub fn parse_weil_descriptor(desc: &str) -> Result<Arc<WeilAlgebra>> {
    if let Some(rest) = desc.strip_prefix("dual:") {
        let base = parse_weil_descriptor(rest)?;
        return adjoin_dual_number(&base);
    }
    if let Some(n) = desc.strip_prefix("grassmann:") {
        let n: usize = n
            .parse()
            .map_err(|_| Error::Invalid(format!("bad generator count in `{desc}`")))?;
        if n > 16 {
            return Err(Error::Invalid("at most 16 odd generators are supported".into()));
        }
        return Ok(build_grassmann(n));
    }
    Err(Error::Invalid(format!(
        "unknown Weil descriptor `{desc}` (expected grassmann:<n> or dual:grassmann:<n>)"
    )))
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RepresentationBlock {
    pub even_dim: usize,
    pub odd_dim: usize,
    /// basis name → row-major matrix of rational strings
    pub matrices: BTreeMap<String, Vec<Vec<Scalar>>>,
}

/// The on-disk form of a super Harish-Chandra pair.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PairFile {
    pub name: String,
    /// `"Q"` or `"Q(i)"`
    pub field: String,
    pub even_basis: Vec<String>,
    pub odd_basis: Vec<String>,
    /// sparse bracket table: `"[a,b]"` → coefficient map on basis names;
    /// missing opposite pairs are filled in by super-antisymmetry
    pub brackets: BTreeMap<String, BTreeMap<String, Scalar>>,
    pub representation: RepresentationBlock,
    /// named invertible even matrices generating the working K-point group
    pub kpoints: BTreeMap<String, Vec<Vec<Scalar>>>,
}

fn parse_matrix(space: &SuperSpace, rows: &[Vec<Scalar>], what: &str) -> Result<SuperMatrix> {
    SuperMatrix::from_rows(space, rows.to_vec())
        .map_err(|_| Error::Invalid(format!("{what}: expected a {0}×{0} matrix", space.dim())))
}

impl PairFile {
    pub fn to_lie(&self) -> Result<Arc<LieSuperalgebra>> {
        let names: Vec<String> =
            self.even_basis.iter().chain(&self.odd_basis).cloned().collect();
        let index = |name: &str| -> Result<usize> {
            names
                .iter()
                .position(|n| n == name)
                .ok_or_else(|| Error::Invalid(format!("unknown basis name `{name}`")))
        };
        let mut entries = Vec::new();
        for (key, coeffs) in &self.brackets {
            let inner = key
                .strip_prefix('[')
                .and_then(|k| k.strip_suffix(']'))
                .ok_or_else(|| Error::Invalid(format!("bracket key `{key}` is not `[a,b]`")))?;
            let (a, b) = inner
                .split_once(',')
                .ok_or_else(|| Error::Invalid(format!("bracket key `{key}` is not `[a,b]`")))?;
            let value = coeffs
                .iter()
                .map(|(n, c)| Ok((index(n.trim())?, c.clone())))
                .collect::<Result<Vec<_>>>()?;
            entries.push(((index(a.trim())?, index(b.trim())?), value));
        }
        LieSuperalgebra::from_table(self.even_basis.clone(), self.odd_basis.clone(), entries)
    }

    fn check_field(&self) -> Result<()> {
        match self.field.as_str() {
            "Q" => {
                let rational = self
                    .representation
                    .matrices
                    .values()
                    .chain(self.kpoints.values())
                    .flatten()
                    .flatten()
                    .all(Scalar::is_rational);
                if !rational {
                    return Err(Error::Invalid(
                        "field tag is Q but an entry has an imaginary part".into(),
                    ));
                }
                Ok(())
            }
            "Q(i)" => Ok(()),
            other => Err(Error::Invalid(format!("unknown field tag `{other}`"))),
        }
    }

    /// Builds the pair without validating the axioms.
    pub fn to_pair(&self) -> Result<Arc<SHCPair>> {
        self.check_field()?;
        let lie = self.to_lie()?;
        let space = SuperSpace::new(self.representation.even_dim, self.representation.odd_dim);
        let mut rho_mats = Vec::with_capacity(lie.dim());
        for b in 0..lie.dim() {
            let name = lie.name(b);
            let rows = self.representation.matrices.get(name).ok_or_else(|| {
                Error::Invalid(format!("representation matrix for `{name}` is missing"))
            })?;
            rho_mats.push(parse_matrix(&space, rows, &format!("rho({name})"))?);
        }
        let kpoints = self
            .kpoints
            .iter()
            .map(|(name, rows)| Ok((name.clone(), parse_matrix(&space, rows, name)?)))
            .collect::<Result<Vec<_>>>()?;
        SHCPair::new(self.name.clone(), lie, space, rho_mats, kpoints)
    }
}

/// Loads and fully validates a pair file; failures list every violated
/// invariant with its witness.
pub fn load_pair(path: impl AsRef<Path>) -> Result<Arc<SHCPair>> {
    let text = std::fs::read_to_string(&path)?;
    load_pair_str(&text)
}

pub fn load_pair_str(text: &str) -> Result<Arc<SHCPair>> {
    let file: PairFile = serde_json::from_str(text)?;
    let pair = file.to_pair()?;
    pair.validate().into_result()?;
    Ok(pair)
}

/// The on-disk form of a generator word.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WordFile {
    /// optional consistency tag: the pair name this word was written for
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub pair: Option<String>,
    /// optional consistency tag: the Weil descriptor
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weil: Option<String>,
    /// `kpt:<name>` | `kptinv:<name>` | `odd:<Yname>:<expr>` |
    /// `oddgen:<g1-vector>:<expr>` | `evexp:<g0-vector>:<expr>`
    pub word: Vec<String>,
}

/// Parses a `c1*Name1+c2*Name2` combination over the given basis names.
fn parse_named_vector(src: &str, names: &[&str]) -> Result<Vec<Scalar>> {
    let mut out = vec![Scalar::zero(); names.len()];
    let mut rest = src.trim();
    let mut sign = Scalar::one();
    if rest.is_empty() {
        return Err(Error::Invalid("empty basis vector".into()));
    }
    while !rest.is_empty() {
        rest = rest.trim_start();
        if let Some(r) = rest.strip_prefix('+') {
            rest = r;
            continue;
        }
        if let Some(r) = rest.strip_prefix('-') {
            sign = -sign;
            rest = r;
            continue;
        }
        // term: optional rational '*' then a name, or a bare name
        let term_end = rest
            .find(['+', '-'])
            .unwrap_or(rest.len());
        let term = rest[..term_end].trim();
        rest = &rest[term_end..];
        let (coeff, name) = match term.split_once('*') {
            Some((c, n)) => (c.trim().parse::<Scalar>()?, n.trim()),
            None => (Scalar::one(), term),
        };
        let idx = names
            .iter()
            .position(|n| *n == name)
            .ok_or_else(|| Error::Invalid(format!("unknown basis name `{name}`")))?;
        out[idx] += &(&coeff * &sign);
        sign = Scalar::one();
    }
    Ok(out)
}

impl WordFile {
    pub fn to_word(&self, pair: &Arc<SHCPair>, algebra: &Arc<WeilAlgebra>) -> Result<GroupWord> {
        if let Some(tag) = &self.pair {
            if tag != pair.name() {
                return Err(Error::Invalid(format!(
                    "word file was written for pair `{tag}`, not `{}`",
                    pair.name()
                )));
            }
        }
        if let Some(tag) = &self.weil {
            if tag != algebra.descriptor() {
                return Err(Error::Invalid(format!(
                    "word file was written for `{tag}`, not `{}`",
                    algebra.descriptor()
                )));
            }
        }
        let lie = pair.lie();
        let odd_names: Vec<&str> = (0..lie.n_odd()).map(|i| lie.name(lie.odd_index(i))).collect();
        let even_names: Vec<&str> = (0..lie.n_even()).map(|j| lie.name(j)).collect();
        let mut gens = Vec::new();
        for token in &self.word {
            let mut parts = token.splitn(3, ':');
            let kind = parts.next().unwrap_or_default();
            match kind {
                "kpt" | "kptinv" => {
                    let name = parts
                        .next()
                        .ok_or_else(|| Error::Invalid(format!("`{token}`: missing name")))?;
                    let idx = pair
                        .kpoint_index(name)
                        .ok_or_else(|| Error::Invalid(format!("unknown K-point `{name}`")))?;
                    let f = if kind == "kpt" { KFactor::Gen(idx) } else { KFactor::Inv(idx) };
                    gens.push(Generator::KPoint(vec![f]));
                }
                "odd" => {
                    let name = parts
                        .next()
                        .ok_or_else(|| Error::Invalid(format!("`{token}`: missing basis name")))?;
                    let expr = parts
                        .next()
                        .ok_or_else(|| Error::Invalid(format!("`{token}`: missing coefficient")))?;
                    let i = odd_names
                        .iter()
                        .position(|n| *n == name)
                        .ok_or_else(|| Error::Invalid(format!("unknown odd basis `{name}`")))?;
                    let eta = parse_coeff_expr(expr, algebra)?;
                    if !eta.is_odd() {
                        return Err(Error::Parity(format!(
                            "`{token}`: coefficient must be odd"
                        )));
                    }
                    gens.push(Generator::OddFactor(eta, i));
                }
                "oddgen" => {
                    let vector = parts
                        .next()
                        .ok_or_else(|| Error::Invalid(format!("`{token}`: missing g1-vector")))?;
                    let expr = parts
                        .next()
                        .ok_or_else(|| Error::Invalid(format!("`{token}`: missing coefficient")))?;
                    let v = parse_named_vector(vector, &odd_names)?;
                    let eta = parse_coeff_expr(expr, algebra)?;
                    if !eta.is_odd() {
                        return Err(Error::Parity(format!(
                            "`{token}`: coefficient must be odd"
                        )));
                    }
                    gens.push(Generator::OddFactorGeneral(eta, v));
                }
                "evexp" => {
                    let vector = parts
                        .next()
                        .ok_or_else(|| Error::Invalid(format!("`{token}`: missing g0-vector")))?;
                    let expr = parts
                        .next()
                        .ok_or_else(|| Error::Invalid(format!("`{token}`: missing coefficient")))?;
                    let v = parse_named_vector(vector, &even_names)?;
                    let c = parse_coeff_expr(expr, algebra)?;
                    if !c.is_even() || !c.augment().is_zero() {
                        return Err(Error::Parity(format!(
                            "`{token}`: coefficient must be even with zero augmentation"
                        )));
                    }
                    let mut coeffs =
                        vec![crate::weil::WeilElement::zero(algebra); lie.dim()];
                    for (j, s) in v.iter().enumerate() {
                        if !s.is_zero() {
                            coeffs[j] = c.scale(s);
                        }
                    }
                    gens.push(Generator::EvenExp(LiePoint::new(algebra, lie, coeffs)?));
                }
                other => {
                    return Err(Error::Invalid(format!("unknown word token kind `{other}`")))
                }
            }
        }
        Ok(GroupWord::new(pair, algebra, gens))
    }
}

pub fn load_word(path: impl AsRef<Path>) -> Result<WordFile> {
    let text = std::fs::read_to_string(&path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Parses a comma-separated `name:expr` list into a point of `L_g(A)`.
pub fn parse_lie_point(
    src: &str,
    pair: &Arc<SHCPair>,
    algebra: &Arc<WeilAlgebra>,
) -> Result<LiePoint> {
    let lie = pair.lie();
    let mut coeffs = vec![crate::weil::WeilElement::zero(algebra); lie.dim()];
    for part in src.split(',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let (name, expr) = part
            .split_once(':')
            .ok_or_else(|| Error::Invalid(format!("`{part}`: expected name:expr")))?;
        let idx = lie
            .index_of(name.trim())
            .ok_or_else(|| Error::Invalid(format!("unknown basis name `{name}`")))?;
        coeffs[idx] = coeffs[idx].add(&parse_coeff_expr(expr, algebra)?)?;
    }
    LiePoint::new(algebra, lie, coeffs)
}

fn matrix_json(m: &SuperMatrix) -> serde_json::Value {
    let n = m.space().dim();
    serde_json::Value::Array(
        (0..n)
            .map(|i| {
                serde_json::Value::Array(
                    (0..n)
                        .map(|j| serde_json::Value::String(m.at(i, j).to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn lie_point_json(p: &LiePoint) -> serde_json::Value {
    let lie = p.lie();
    let mut map = serde_json::Map::new();
    for (b, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            map.insert(lie.name(b).to_string(), serde_json::Value::String(c.to_string()));
        }
    }
    serde_json::Value::Object(map)
}

/// Canonical JSON for a split normal form.
pub fn split_to_json(s: &SplitElement) -> serde_json::Value {
    let pair = s.pair();
    let kword: Vec<String> = s
        .kword()
        .iter()
        .map(|f| match f {
            KFactor::Gen(i) => pair.kpoints()[*i].name.clone(),
            KFactor::Inv(i) => format!("{}^-1", pair.kpoints()[*i].name),
        })
        .collect();
    let mut coords = serde_json::Map::new();
    for (i, c) in s.coords().iter().enumerate() {
        coords.insert(
            pair.lie().name(pair.lie().odd_index(i)).to_string(),
            serde_json::Value::String(c.to_string()),
        );
    }
    serde_json::json!({
        "schema_version": 1,
        "algebra": s.algebra().descriptor(),
        "kword": kword,
        "kmatrix": matrix_json(s.kmatrix()),
        "even_log": lie_point_json(s.even_log()),
        "coords": serde_json::Value::Object(coords),
    })
}

pub fn split_to_text(s: &SplitElement) -> String {
    let pair = s.pair();
    let kword: Vec<String> = s
        .kword()
        .iter()
        .map(|f| match f {
            KFactor::Gen(i) => pair.kpoints()[*i].name.clone(),
            KFactor::Inv(i) => format!("{}^-1", pair.kpoints()[*i].name),
        })
        .collect();
    let mut out = String::new();
    out.push_str(&format!(
        "k-word:   {}\n",
        if kword.is_empty() { "(empty)".into() } else { kword.join(" ") }
    ));
    out.push_str(&format!("k-matrix: {:?}\n", s.kmatrix()));
    out.push_str(&format!("even log: {}\n", s.even_log()));
    for (i, c) in s.coords().iter().enumerate() {
        out.push_str(&format!(
            "coord {}: {}\n",
            pair.lie().name(pair.lie().odd_index(i)),
            c
        ));
    }
    out
}

pub fn lie_point_to_json(p: &LiePoint) -> serde_json::Value {
    serde_json::json!({
        "schema_version": 1,
        "algebra": p.algebra().descriptor(),
        "coefficients": lie_point_json(p),
    })
}

/// The on-disk form of a pair morphism: the linear map `ω` on basis names,
/// the generator map `Ω₊` as words in the target's K-point names (a `^-1`
/// suffix inverts), and the claimed derivative `dΩ₊` on the even basis,
/// which validation compares against `ω|g₀`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismFile {
    /// source basis name → target coefficient map
    pub omega: BTreeMap<String, BTreeMap<String, Scalar>>,
    /// source K-point name → word in target K-point names
    pub omega_plus: BTreeMap<String, Vec<String>>,
    /// source even basis name → target coefficient map
    pub d_omega_plus: BTreeMap<String, BTreeMap<String, Scalar>>,
}

impl MorphismFile {
    pub fn to_morphism(
        &self,
        source: &Arc<SHCPair>,
        target: &Arc<SHCPair>,
    ) -> Result<crate::pair::PairMorphism> {
        let src = source.lie();
        let tgt = target.lie();
        let vector = |map: &BTreeMap<String, Scalar>| -> Result<Vec<Scalar>> {
            let mut v = vec![Scalar::zero(); tgt.dim()];
            for (name, c) in map {
                let idx = tgt
                    .index_of(name)
                    .ok_or_else(|| Error::Invalid(format!("unknown target basis `{name}`")))?;
                v[idx] = c.clone();
            }
            Ok(v)
        };
        let mut omega = Vec::with_capacity(src.dim());
        for b in 0..src.dim() {
            let name = src.name(b);
            let map = self
                .omega
                .get(name)
                .ok_or_else(|| Error::Invalid(format!("omega({name}) is missing")))?;
            omega.push(vector(map)?);
        }
        let mut omega_plus = Vec::with_capacity(source.kpoints().len());
        for k in source.kpoints() {
            let word = self
                .omega_plus
                .get(&k.name)
                .ok_or_else(|| Error::Invalid(format!("Omega+({}) is missing", k.name)))?;
            let factors = word
                .iter()
                .map(|w| {
                    let (name, inverse) = match w.strip_suffix("^-1") {
                        Some(n) => (n, true),
                        None => (w.as_str(), false),
                    };
                    let idx = target.kpoint_index(name).ok_or_else(|| {
                        Error::Invalid(format!("unknown target K-point `{name}`"))
                    })?;
                    Ok(if inverse { KFactor::Inv(idx) } else { KFactor::Gen(idx) })
                })
                .collect::<Result<Vec<_>>>()?;
            omega_plus.push(factors);
        }
        let mut d_omega_plus = Vec::with_capacity(src.n_even());
        for j in 0..src.n_even() {
            let name = src.name(j);
            let map = self
                .d_omega_plus
                .get(name)
                .ok_or_else(|| Error::Invalid(format!("dOmega+({name}) is missing")))?;
            d_omega_plus.push(vector(map)?);
        }
        Ok(crate::pair::PairMorphism {
            source: Arc::clone(source),
            target: Arc::clone(target),
            omega,
            omega_plus,
            d_omega_plus,
        })
    }
}

/// The on-disk form of an even (`G₊`-) module for `induce`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EvenModuleFile {
    pub even_dim: usize,
    pub odd_dim: usize,
    /// even basis name → matrix
    pub g0: BTreeMap<String, Vec<Vec<Scalar>>>,
    /// K-point generator name → matrix
    pub kpoints: BTreeMap<String, Vec<Vec<Scalar>>>,
}

impl EvenModuleFile {
    pub fn to_module(&self, pair: &SHCPair) -> Result<EvenModule> {
        let space = SuperSpace::new(self.even_dim, self.odd_dim);
        let lie = pair.lie();
        let mut g0_mats = Vec::with_capacity(lie.n_even());
        for j in 0..lie.n_even() {
            let name = lie.name(j);
            let rows = self
                .g0
                .get(name)
                .ok_or_else(|| Error::Invalid(format!("module matrix for `{name}` is missing")))?;
            g0_mats.push(parse_matrix(&space, rows, name)?);
        }
        let mut kpoint_mats = Vec::with_capacity(pair.kpoints().len());
        for k in pair.kpoints() {
            let rows = self.kpoints.get(&k.name).ok_or_else(|| {
                Error::Invalid(format!("module matrix for K-point `{}` is missing", k.name))
            })?;
            kpoint_mats.push(parse_matrix(&space, rows, &k.name)?);
        }
        Ok(EvenModule { space, g0_mats, kpoint_mats })
    }
}

pub fn load_even_module(path: impl AsRef<Path>, pair: &SHCPair) -> Result<EvenModule> {
    let text = std::fs::read_to_string(&path)?;
    let file: EvenModuleFile = serde_json::from_str(&text)?;
    file.to_module(pair)
}

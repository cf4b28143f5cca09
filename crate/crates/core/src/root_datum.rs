//! Split reductive root data in explicit lattice coordinates, together with
//! their Weyl groups acting on the cocharacter lattice.
//!
//! A datum stores roots as character vectors and coroots as cocharacter
//! vectors, both in `Z^r`, and an invertible `r x r` pairing matrix `P` with
//! `<x, λ> = x^T P λ`. Presets use the identity pairing except where noted.
//!
//! Weyl elements are matrices acting on cocharacters. Their action on
//! characters is the contragredient one, `<w·x, wλ> = <x, λ>`; for roots it is
//! exposed as a permutation of root indices.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::ops::{Add, Deref, Neg};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lattice::{self, dot, IntMatrix};

/// Largest rank accepted for presets.
pub const MAX_PRESET_RANK: usize = 8;

/// A cocharacter, as an integer vector in cocharacter coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cochar(pub Vec<i64>);

impl Cochar {
    pub fn zero(rank: usize) -> Self {
        Cochar(vec![0; rank])
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn scale(&self, k: i64) -> Cochar {
        Cochar(self.0.iter().map(|x| x * k).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }
}

impl Deref for Cochar {
    type Target = [i64];
    fn deref(&self) -> &[i64] {
        &self.0
    }
}

impl From<Vec<i64>> for Cochar {
    fn from(v: Vec<i64>) -> Self {
        Cochar(v)
    }
}

impl Add for &Cochar {
    type Output = Cochar;
    fn add(self, rhs: &Cochar) -> Cochar {
        assert_eq!(self.len(), rhs.len(), "cocharacter rank mismatch");
        Cochar(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Neg for &Cochar {
    type Output = Cochar;
    fn neg(self) -> Cochar {
        self.scale(-1)
    }
}

impl fmt::Display for Cochar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// Built-in families. The number is the size of the defining matrix
/// representation (`Sp(4)` has rank 2, `SO(5)` has rank 2).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Preset {
    GL(usize),
    SL(usize),
    Sp(usize),
    SO(usize),
    G2,
}

impl Preset {
    pub fn rank(self) -> usize {
        match self {
            Preset::GL(n) => n,
            Preset::SL(n) => n.saturating_sub(1),
            Preset::Sp(n) | Preset::SO(n) => n / 2,
            Preset::G2 => 2,
        }
    }

    fn check(self) -> Result<(), DatumError> {
        let bad = |why: &str| Err(DatumError::UnsupportedPreset(self.to_string(), why.to_string()));
        match self {
            Preset::GL(0) => bad("size must be at least 1"),
            Preset::SL(n) if n < 2 => bad("size must be at least 2"),
            Preset::Sp(n) if n < 2 || n % 2 != 0 => bad("size must be even and at least 2"),
            Preset::SO(n) if n < 3 => bad("size must be at least 3"),
            _ if self.rank() > MAX_PRESET_RANK => bad("rank exceeds 8"),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Preset::GL(n) => write!(f, "GL{n}"),
            Preset::SL(n) => write!(f, "SL{n}"),
            Preset::Sp(n) => write!(f, "Sp{n}"),
            Preset::SO(n) => write!(f, "SO{n}"),
            Preset::G2 => write!(f, "G2"),
        }
    }
}

impl FromStr for Preset {
    type Err = DatumError;

    /// Accepts `GL4`, `GL(4)`, `GL_4`, case-insensitively.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let norm: String = s
            .chars()
            .filter(|c| !matches!(c, '(' | ')' | '_' | ' '))
            .collect::<String>()
            .to_ascii_uppercase();
        if norm == "G2" {
            return Ok(Preset::G2);
        }
        let split = norm.find(|c: char| c.is_ascii_digit()).unwrap_or(norm.len());
        let (family, size) = norm.split_at(split);
        let unknown = || DatumError::UnsupportedPreset(s.to_string(), "unknown group name".into());
        let n: usize = size.parse().map_err(|_| unknown())?;
        let preset = match family {
            "GL" => Preset::GL(n),
            "SL" => Preset::SL(n),
            "SP" => Preset::Sp(n),
            "SO" => Preset::SO(n),
            _ => return Err(unknown()),
        };
        preset.check()?;
        Ok(preset)
    }
}

/// The named invariant a custom datum violated.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Invariant {
    Shape,
    RootCorootBijection,
    PairingInvertible,
    RootCorootPairing,
    NegationClosed,
    ReflectionClosed,
    SimpleRoots,
}

impl fmt::Display for Invariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Invariant::Shape => "shape",
            Invariant::RootCorootBijection => "root_coroot_bijection",
            Invariant::PairingInvertible => "pairing_invertible",
            Invariant::RootCorootPairing => "root_coroot_pairing_is_two",
            Invariant::NegationClosed => "roots_closed_under_negation",
            Invariant::ReflectionClosed => "reflections_permute_roots",
            Invariant::SimpleRoots => "simple_roots_form_a_base",
        })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DatumError {
    #[error("unsupported group {0}: {1}")]
    UnsupportedPreset(String, String),
    #[error("invalid root datum: invariant `{invariant}` violated: {detail}")]
    Invariant { invariant: Invariant, detail: String },
    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("simple reflection index {index} out of range ({count} simple roots)")]
    ReflectionIndex { index: usize, count: usize },
    #[error("matrix is not a Weyl element: {0}")]
    NotWeylElement(String),
}

fn violation(invariant: Invariant, detail: impl Into<String>) -> DatumError {
    DatumError::Invariant { invariant, detail: detail.into() }
}

/// The custom root datum file format.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DatumData {
    pub rank: usize,
    pub roots: Vec<Vec<i64>>,
    pub coroots: Vec<Vec<i64>>,
    /// Row-major `rank x rank` matrix.
    pub pairing: Vec<Vec<i64>>,
    /// Indices into `roots`.
    pub simple_roots: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct RootDatum {
    rank: usize,
    roots: Vec<Vec<i64>>,
    coroots: Vec<Vec<i64>>,
    pairing: IntMatrix,
    simple_roots: Vec<usize>,
    preset: Option<Preset>,
    // P^T α for each root, so that <α, λ> = forms[i] · λ
    forms: Vec<Vec<i64>>,
    form_index: HashMap<Vec<i64>, usize>,
    coroot_index: HashMap<Vec<i64>, usize>,
    negation: Vec<usize>,
    simple_coords: Vec<Vec<i64>>,
}

impl PartialEq for RootDatum {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.roots == other.roots
            && self.coroots == other.coroots
            && self.pairing == other.pairing
            && self.simple_roots == other.simple_roots
    }
}

impl Eq for RootDatum {}

impl RootDatum {
    pub fn preset(preset: Preset) -> Result<RootDatum, DatumError> {
        preset.check()?;
        let data = match preset {
            Preset::GL(n) => general_linear(n),
            Preset::SL(n) => from_cartan(&cartan_type_a(n - 1)),
            Preset::Sp(n) => symplectic(n / 2),
            Preset::SO(n) if n % 2 == 1 => odd_orthogonal(n / 2),
            Preset::SO(n) => even_orthogonal(n / 2),
            Preset::G2 => from_cartan(&[vec![2, -1], vec![-3, 2]]),
        };
        let mut datum = RootDatum::from_data(&data)?;
        datum.preset = Some(preset);
        Ok(datum)
    }

    /// Validates custom data against every root-datum invariant.
    pub fn from_data(data: &DatumData) -> Result<RootDatum, DatumError> {
        let r = data.rank;
        if r == 0 {
            return Err(violation(Invariant::Shape, "rank must be positive"));
        }
        let bad_len = |what: &str, i: usize, len: usize| {
            violation(Invariant::Shape, format!("{what} {i} has length {len}, expected {r}"))
        };
        for (i, v) in data.roots.iter().enumerate() {
            if v.len() != r {
                return Err(bad_len("root", i, v.len()));
            }
        }
        for (i, v) in data.coroots.iter().enumerate() {
            if v.len() != r {
                return Err(bad_len("coroot", i, v.len()));
            }
        }
        if data.pairing.len() != r || data.pairing.iter().any(|row| row.len() != r) {
            return Err(violation(Invariant::Shape, format!("pairing must be a {r}x{r} matrix")));
        }
        if data.roots.len() != data.coroots.len() {
            return Err(violation(
                Invariant::RootCorootBijection,
                format!("{} roots but {} coroots", data.roots.len(), data.coroots.len()),
            ));
        }
        let pairing = IntMatrix::from_rows(&data.pairing).expect("shape checked");
        if pairing.determinant() == 0 {
            return Err(violation(Invariant::PairingInvertible, "pairing matrix is singular"));
        }

        let root_set: HashSet<&Vec<i64>> = data.roots.iter().collect();
        if root_set.len() != data.roots.len() {
            return Err(violation(Invariant::RootCorootBijection, "roots are not distinct"));
        }
        let forms: Vec<Vec<i64>> = data.roots.iter().map(|a| pairing.vec_mul(a)).collect();
        let form_index: HashMap<Vec<i64>, usize> =
            forms.iter().cloned().enumerate().map(|(i, f)| (f, i)).collect();
        let coroot_index: HashMap<Vec<i64>, usize> =
            data.coroots.iter().cloned().enumerate().map(|(i, c)| (c, i)).collect();
        if coroot_index.len() != data.coroots.len() {
            return Err(violation(Invariant::RootCorootBijection, "coroots are not distinct"));
        }
        for (i, (f, c)) in forms.iter().zip(&data.coroots).enumerate() {
            let p = dot(f, c);
            if p != 2 {
                return Err(violation(
                    Invariant::RootCorootPairing,
                    format!("<root {i}, coroot {i}> = {p}"),
                ));
            }
        }

        let root_index: HashMap<&Vec<i64>, usize> =
            data.roots.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let mut negation = Vec::with_capacity(data.roots.len());
        for (i, a) in data.roots.iter().enumerate() {
            let neg: Vec<i64> = a.iter().map(|x| -x).collect();
            let j = root_index.get(&neg).copied().ok_or_else(|| {
                violation(Invariant::NegationClosed, format!("-root {i} is not a root"))
            })?;
            let neg_co: Vec<i64> = data.coroots[i].iter().map(|x| -x).collect();
            if data.coroots[j] != neg_co {
                return Err(violation(
                    Invariant::NegationClosed,
                    format!("coroot of -root {i} is not -coroot {i}"),
                ));
            }
            negation.push(j);
        }

        // s_α(β) = β - <β, α∨> α must be a root whose coroot is s_α(β∨) = β∨ - <α, β∨> α∨
        for (a, (alpha, alpha_co)) in data.roots.iter().zip(&data.coroots).enumerate() {
            for (b, (beta, beta_co)) in data.roots.iter().zip(&data.coroots).enumerate() {
                let k = dot(&forms[b], alpha_co);
                let image: Vec<i64> = beta.iter().zip(alpha).map(|(x, y)| x - k * y).collect();
                let Some(&c) = root_index.get(&image) else {
                    return Err(violation(
                        Invariant::ReflectionClosed,
                        format!("reflection in root {a} sends root {b} outside the root set"),
                    ));
                };
                let l = dot(&forms[a], beta_co);
                let co_image: Vec<i64> =
                    beta_co.iter().zip(alpha_co).map(|(x, y)| x - l * y).collect();
                if data.coroots[c] != co_image {
                    return Err(violation(
                        Invariant::ReflectionClosed,
                        format!("coreflection in coroot {a} sends coroot {b} to a non-matching coroot"),
                    ));
                }
            }
        }

        let k = data.simple_roots.len();
        let mut seen = HashSet::new();
        for &s in &data.simple_roots {
            if s >= data.roots.len() || !seen.insert(s) {
                return Err(violation(
                    Invariant::SimpleRoots,
                    format!("simple root index {s} is out of range or repeated"),
                ));
            }
        }
        let simple_vectors: Vec<Vec<i64>> =
            data.simple_roots.iter().map(|&s| data.roots[s].clone()).collect();
        let basis = IntMatrix::from_columns(r, &simple_vectors);
        if lattice::rank(&basis) != k {
            return Err(violation(Invariant::SimpleRoots, "simple roots are linearly dependent"));
        }
        let mut simple_coords = Vec::with_capacity(data.roots.len());
        for (i, a) in data.roots.iter().enumerate() {
            let coords = lattice::solve_integer(&basis, a).ok_or_else(|| {
                violation(
                    Invariant::SimpleRoots,
                    format!("root {i} is not an integer combination of the simple roots"),
                )
            })?;
            if !(coords.iter().all(|&c| c >= 0) || coords.iter().all(|&c| c <= 0)) {
                return Err(violation(
                    Invariant::SimpleRoots,
                    format!("root {i} mixes signs in simple-root coordinates"),
                ));
            }
            simple_coords.push(coords);
        }

        Ok(RootDatum {
            rank: r,
            roots: data.roots.clone(),
            coroots: data.coroots.clone(),
            pairing,
            simple_roots: data.simple_roots.clone(),
            preset: None,
            forms,
            form_index,
            coroot_index,
            negation,
            simple_coords,
        })
    }

    pub fn to_data(&self) -> DatumData {
        DatumData {
            rank: self.rank,
            roots: self.roots.clone(),
            coroots: self.coroots.clone(),
            pairing: self.pairing.to_rows(),
            simple_roots: self.simple_roots.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> String {
        self.preset.map_or_else(|| "custom".to_string(), |p| p.to_string())
    }

    pub fn preset_kind(&self) -> Option<Preset> {
        self.preset
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn coroots(&self) -> &[Vec<i64>] {
        &self.coroots
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn pairing_matrix(&self) -> &IntMatrix {
        &self.pairing
    }

    pub fn simple_roots(&self) -> &[usize] {
        &self.simple_roots
    }

    /// Index of `-α_i`.
    pub fn negation_of(&self, i: usize) -> usize {
        self.negation[i]
    }

    /// Coefficients of root `i` in the simple roots.
    pub fn simple_coordinates(&self, i: usize) -> &[i64] {
        &self.simple_coords[i]
    }

    pub fn is_positive(&self, i: usize) -> bool {
        self.simple_coords[i].iter().all(|&c| c >= 0)
    }

    pub fn positive_roots(&self) -> Vec<usize> {
        (0..self.roots.len()).filter(|&i| self.is_positive(i)).collect()
    }

    pub fn root_index(&self, root: &[i64]) -> Option<usize> {
        self.roots.iter().position(|a| a == root)
    }

    pub fn check_cochar(&self, lambda: &[i64]) -> Result<(), DatumError> {
        if lambda.len() != self.rank {
            return Err(DatumError::DimensionMismatch { expected: self.rank, actual: lambda.len() });
        }
        Ok(())
    }

    /// `<x, λ>` for an arbitrary character `x`.
    pub fn pair(&self, character: &[i64], cochar: &Cochar) -> Result<i64, DatumError> {
        if character.len() != self.rank {
            return Err(DatumError::DimensionMismatch {
                expected: self.rank,
                actual: character.len(),
            });
        }
        self.check_cochar(cochar)?;
        Ok(dot(&self.pairing.vec_mul(character), cochar))
    }

    /// `<α_i, λ>`; `λ` must have the datum's rank.
    pub fn root_pairing(&self, i: usize, lambda: &[i64]) -> i64 {
        dot(&self.forms[i], lambda)
    }

    pub fn root_pairings(&self, lambda: &[i64]) -> Vec<i64> {
        self.forms.iter().map(|f| dot(f, lambda)).collect()
    }

    /// First root (in datum order) killing `λ`, if any.
    pub fn killing_root(&self, lambda: &[i64]) -> Option<usize> {
        self.forms.iter().position(|f| dot(f, lambda) == 0)
    }

    pub fn is_regular_cochar(&self, lambda: &Cochar) -> bool {
        self.killing_root(lambda).is_none()
    }

    /// Matrix of the coreflection `λ ↦ λ - <α_i, λ> α_i∨` for root `i`.
    pub fn coreflection(&self, i: usize) -> IntMatrix {
        let mut m = IntMatrix::identity(self.rank);
        for a in 0..self.rank {
            for b in 0..self.rank {
                m[(a, b)] -= self.coroots[i][a] * self.forms[i][b];
            }
        }
        m
    }

    pub fn simple_reflection(&self, k: usize) -> Result<WeylElement, DatumError> {
        let &i = self
            .simple_roots
            .get(k)
            .ok_or(DatumError::ReflectionIndex { index: k, count: self.simple_roots.len() })?;
        Ok(WeylElement { matrix: self.coreflection(i), word: Some(vec![k]) })
    }

    /// `s_{i1} s_{i2} ... s_{ik}` for the word `[i1, ..., ik]`.
    pub fn weyl_from_word(&self, word: &[usize]) -> Result<WeylElement, DatumError> {
        let mut m = IntMatrix::identity(self.rank);
        for &k in word {
            m = &m * &self.simple_reflection(k)?.matrix;
        }
        Ok(WeylElement { matrix: m, word: Some(word.to_vec()) })
    }

    /// Accepts any integer matrix that permutes the coroots and whose
    /// contragredient permutes the roots.
    pub fn weyl_from_matrix(&self, matrix: IntMatrix) -> Result<WeylElement, DatumError> {
        if matrix.rows() != self.rank || !matrix.is_square() {
            return Err(DatumError::NotWeylElement(format!(
                "expected a {0}x{0} matrix",
                self.rank
            )));
        }
        if matrix.determinant().abs() != 1 {
            return Err(DatumError::NotWeylElement("matrix is not invertible over Z".into()));
        }
        for (i, c) in self.coroots.iter().enumerate() {
            if !self.coroot_index.contains_key(&matrix.mul_vec(c)) {
                return Err(DatumError::NotWeylElement(format!(
                    "image of coroot {i} is not a coroot"
                )));
            }
        }
        let w = WeylElement { matrix, word: None };
        if self.try_root_permutation(&w).is_none() {
            return Err(DatumError::NotWeylElement("contragredient does not permute the roots".into()));
        }
        Ok(w)
    }

    fn try_root_permutation(&self, w: &WeylElement) -> Option<Vec<usize>> {
        // w·α_i = α_j  iff  <α_j, wλ> = <α_i, λ> for all λ  iff  form_j · w = form_i
        let mut perm = vec![usize::MAX; self.roots.len()];
        for (j, f) in self.forms.iter().enumerate() {
            let i = *self.form_index.get(&w.matrix.vec_mul(f))?;
            perm[i] = j;
        }
        perm.iter().all(|&p| p != usize::MAX).then_some(perm)
    }

    /// `perm[i] = j` where `w·α_i = α_j`.
    pub fn root_permutation(&self, w: &WeylElement) -> Vec<usize> {
        self.try_root_permutation(w).expect("validated Weyl element permutes the roots")
    }

    /// The whole Weyl group by breadth-first closure, each element carrying a
    /// shortlex-minimal word.
    pub fn weyl_group(&self) -> Vec<WeylElement> {
        self.weyl_group_bounded(usize::MAX).expect("unbounded enumeration")
    }

    /// As [`weyl_group`](Self::weyl_group), but gives up (returning `None`) as
    /// soon as more than `limit` elements are found.
    pub fn weyl_group_bounded(&self, limit: usize) -> Option<Vec<WeylElement>> {
        let gens: Vec<IntMatrix> =
            self.simple_roots.iter().map(|&i| self.coreflection(i)).collect();
        let id = WeylElement::identity(self.rank);
        let mut seen: HashSet<IntMatrix> = HashSet::from([id.matrix.clone()]);
        let mut out = vec![id.clone()];
        let mut queue = VecDeque::from([id]);
        while let Some(w) = queue.pop_front() {
            for (k, g) in gens.iter().enumerate() {
                let m = &w.matrix * g;
                if seen.insert(m.clone()) {
                    if out.len() >= limit {
                        return None;
                    }
                    let mut word = w.word.clone().unwrap_or_default();
                    word.push(k);
                    let e = WeylElement { matrix: m, word: Some(word) };
                    out.push(e.clone());
                    queue.push_back(e);
                }
            }
        }
        Some(out)
    }

    /// Saturated `Z`-basis (Hermite normal form) of `{μ : wμ = μ}`.
    pub fn weyl_fixed_space(&self, w: &WeylElement) -> Vec<Cochar> {
        let a = w.matrix.sub(&IntMatrix::identity(self.rank));
        lattice::integer_kernel(&a).into_iter().map(Cochar).collect()
    }

    /// Saturated `Z`-basis of `{μ : <α, μ> = 0 for every root α}`.
    pub fn central_cochar_space(&self) -> Vec<Cochar> {
        let a = if self.forms.is_empty() {
            IntMatrix::zeros(0, self.rank)
        } else {
            IntMatrix::from_rows(&self.forms).expect("forms have equal length")
        };
        lattice::integer_kernel(&a).into_iter().map(Cochar).collect()
    }

    pub fn is_central(&self, mu: &[i64]) -> bool {
        self.forms.iter().all(|f| dot(f, mu) == 0)
    }
}

/// An element of the Weyl group, as a matrix on the cocharacter lattice.
/// Equality ignores the (optional) word.
#[derive(Clone, Debug)]
pub struct WeylElement {
    matrix: IntMatrix,
    word: Option<Vec<usize>>,
}

impl PartialEq for WeylElement {
    fn eq(&self, other: &Self) -> bool {
        self.matrix == other.matrix
    }
}

impl Eq for WeylElement {}

impl std::hash::Hash for WeylElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.matrix.hash(state);
    }
}

impl WeylElement {
    pub fn identity(rank: usize) -> Self {
        WeylElement { matrix: IntMatrix::identity(rank), word: Some(Vec::new()) }
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn word(&self) -> Option<&[usize]> {
        self.word.as_deref()
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix.is_identity()
    }

    pub fn apply(&self, lambda: &[i64]) -> Cochar {
        Cochar(self.matrix.mul_vec(lambda))
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &WeylElement) -> WeylElement {
        let word = match (&self.word, &other.word) {
            (Some(a), Some(b)) => Some([a.as_slice(), b.as_slice()].concat()),
            _ => None,
        };
        WeylElement { matrix: &self.matrix * &other.matrix, word }
    }

    pub fn pow(&self, k: u64) -> WeylElement {
        let word = self.word.as_ref().map(|w| w.repeat(k as usize));
        WeylElement { matrix: self.matrix.pow(k), word }
    }

    pub fn inverse(&self) -> WeylElement {
        let matrix = self.matrix.inverse_unimodular().expect("Weyl elements are unimodular");
        let word = self.word.as_ref().map(|w| w.iter().rev().copied().collect());
        WeylElement { matrix, word }
    }

    /// Multiplicative order, searching up to `limit`.
    pub fn order(&self, limit: u64) -> Option<u64> {
        let mut m = self.matrix.clone();
        for k in 1..=limit {
            if m.is_identity() {
                return Some(k);
            }
            m = &m * &self.matrix;
        }
        None
    }
}

fn unit(n: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; n];
    v[i] = 1;
    v
}

fn combo(n: usize, terms: &[(usize, i64)]) -> Vec<i64> {
    let mut v = vec![0; n];
    for &(i, c) in terms {
        v[i] += c;
    }
    v
}

/// Assembles a datum from positive (root, coroot) pairs plus simple roots,
/// listing positives first and then their negatives in the same order.
fn assemble(rank: usize, positives: Vec<(Vec<i64>, Vec<i64>)>, simple: &[Vec<i64>]) -> DatumData {
    let mut roots: Vec<Vec<i64>> = positives.iter().map(|p| p.0.clone()).collect();
    let mut coroots: Vec<Vec<i64>> = positives.iter().map(|p| p.1.clone()).collect();
    let negate = |v: &Vec<i64>| v.iter().map(|x| -x).collect::<Vec<i64>>();
    roots.extend(positives.iter().map(|p| negate(&p.0)));
    coroots.extend(positives.iter().map(|p| negate(&p.1)));
    let simple_roots = simple
        .iter()
        .map(|s| roots.iter().position(|r| r == s).expect("simple root listed"))
        .collect();
    DatumData {
        rank,
        roots,
        coroots,
        pairing: IntMatrix::identity(rank).to_rows(),
        simple_roots,
    }
}

fn general_linear(n: usize) -> DatumData {
    let mut pos = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let a = combo(n, &[(i, 1), (j, -1)]);
            pos.push((a.clone(), a));
        }
    }
    let simple: Vec<Vec<i64>> = (0..n.saturating_sub(1)).map(|i| combo(n, &[(i, 1), (i + 1, -1)])).collect();
    assemble(n, pos, &simple)
}

// e_i - e_j and e_i + e_j for i < j, with equal coroots
fn type_d_positives(n: usize) -> Vec<(Vec<i64>, Vec<i64>)> {
    let mut pos = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let a = combo(n, &[(i, 1), (j, -1)]);
            pos.push((a.clone(), a));
        }
    }
    for i in 0..n {
        for j in i + 1..n {
            let a = combo(n, &[(i, 1), (j, 1)]);
            pos.push((a.clone(), a));
        }
    }
    pos
}

fn type_a_simple(n: usize) -> Vec<Vec<i64>> {
    (0..n - 1).map(|i| combo(n, &[(i, 1), (i + 1, -1)])).collect()
}

fn symplectic(n: usize) -> DatumData {
    let mut pos = type_d_positives(n);
    pos.extend((0..n).map(|i| (combo(n, &[(i, 2)]), unit(n, i))));
    let mut simple = type_a_simple(n);
    simple.push(combo(n, &[(n - 1, 2)]));
    assemble(n, pos, &simple)
}

fn odd_orthogonal(n: usize) -> DatumData {
    let mut pos = type_d_positives(n);
    pos.extend((0..n).map(|i| (unit(n, i), combo(n, &[(i, 2)]))));
    let mut simple = type_a_simple(n);
    simple.push(unit(n, n - 1));
    assemble(n, pos, &simple)
}

fn even_orthogonal(n: usize) -> DatumData {
    let pos = type_d_positives(n);
    let mut simple = type_a_simple(n);
    simple.push(combo(n, &[(n - 2, 1), (n - 1, 1)]));
    assemble(n, pos, &simple)
}

fn cartan_type_a(n: usize) -> Vec<Vec<i64>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| match i.abs_diff(j) {
                    0 => 2,
                    1 => -1,
                    _ => 0,
                })
                .collect()
        })
        .collect()
}

/// Simply connected datum of a Cartan matrix `A[i][j] = <α_i, α_j∨>`:
/// cocharacters in the basis of simple coroots, characters in the dual basis
/// of fundamental weights, identity pairing.
fn from_cartan(cartan: &[Vec<i64>]) -> DatumData {
    let n = cartan.len();
    let start: Vec<(Vec<i64>, Vec<i64>, Vec<i64>)> =
        (0..n).map(|i| (cartan[i].clone(), unit(n, i), unit(n, i))).collect();
    let mut seen: HashSet<Vec<i64>> = start.iter().map(|t| t.0.clone()).collect();
    let mut all = start.clone();
    let mut queue: VecDeque<_> = start.into();
    while let Some((root, coroot, coords)) = queue.pop_front() {
        for i in 0..n {
            // s_i(x) = x - <x, α_i∨> α_i,  s_i(λ) = λ - <α_i, λ> α_i∨
            let k = root[i];
            let l = dot(&cartan[i], &coroot);
            let r2: Vec<i64> = root.iter().zip(&cartan[i]).map(|(x, a)| x - k * a).collect();
            let mut c2 = coroot.clone();
            c2[i] -= l;
            let mut s2 = coords.clone();
            s2[i] -= k;
            if seen.insert(r2.clone()) {
                all.push((r2.clone(), c2.clone(), s2.clone()));
                queue.push_back((r2, c2, s2));
            }
        }
    }
    let mut positives: Vec<_> = all.into_iter().filter(|t| t.2.iter().all(|&c| c >= 0)).collect();
    positives.sort_by_key(|t| (t.2.iter().sum::<i64>(), std::cmp::Reverse(t.2.clone())));
    let simple = cartan.to_vec();
    assemble(n, positives.into_iter().map(|t| (t.0, t.1)).collect(), &simple)
}

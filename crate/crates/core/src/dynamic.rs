//! Parabolic, Levi and unipotent root subsets attached to cocharacters.
//!
//! For a cocharacter `λ` the parabolic `P(λ)` has roots `<α, λ> >= 0`, its
//! Levi factor the roots with `<α, λ> = 0` and its unipotent radical those
//! with `<α, λ> > 0`. All parabolics here contain the fixed maximal torus.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::root_datum::{Cochar, RootDatum, WeylElement};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DynamicError {
    #[error("cocharacters {0} and {1} do not lie in a common open chamber")]
    ChamberMismatch(Cochar, Cochar),
}

/// Root subsets of a parabolic containing the torus, as sorted root indices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParabolicType {
    #[serde(rename = "cochar")]
    pub defining_cochar: Cochar,
    #[serde(rename = "nonneg")]
    pub nonneg_roots: Vec<usize>,
    #[serde(rename = "levi")]
    pub levi_roots: Vec<usize>,
    #[serde(rename = "unipotent")]
    pub unipotent_roots: Vec<usize>,
}

impl ParabolicType {
    /// Builds the type of a root subset known to be parabolic, splitting off
    /// the Levi part as `P ∩ -P`.
    pub fn from_nonneg(datum: &RootDatum, defining_cochar: Cochar, mut nonneg: Vec<usize>) -> Self {
        nonneg.sort_unstable();
        let member = membership(datum.num_roots(), &nonneg);
        let (levi, unipotent): (Vec<usize>, Vec<usize>) =
            nonneg.iter().partition(|&&i| member[datum.negation_of(i)]);
        ParabolicType {
            defining_cochar,
            nonneg_roots: nonneg,
            levi_roots: levi,
            unipotent_roots: unipotent,
        }
    }

    pub fn is_proper(&self) -> bool {
        !self.unipotent_roots.is_empty()
    }

    /// Borel type: proper with no Levi roots.
    pub fn is_borel(&self) -> bool {
        self.levi_roots.is_empty()
    }

    pub fn contains(&self, root: usize) -> bool {
        self.nonneg_roots.binary_search(&root).is_ok()
    }

    /// Same underlying root subset, ignoring the defining cocharacter.
    pub fn same_roots(&self, other: &ParabolicType) -> bool {
        self.nonneg_roots == other.nonneg_roots
    }

    /// Renders the subgroup shape for `GL(n)` in permutation coordinates:
    /// entry `(i, j)` is `*` when the root `e_i - e_j` belongs to `P`
    /// (diagonal always). `None` for non-`GL` data.
    pub fn gl_shape(&self, datum: &RootDatum) -> Option<Vec<String>> {
        let n = datum.rank();
        let is_gl = matches!(datum.preset_kind(), Some(crate::root_datum::Preset::GL(_)));
        if !is_gl {
            return None;
        }
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        if i == j {
                            return '*';
                        }
                        let mut root = vec![0; n];
                        root[i] = 1;
                        root[j] = -1;
                        let idx = datum.root_index(&root).expect("GL root");
                        if self.contains(idx) {
                            '*'
                        } else {
                            '.'
                        }
                    })
                    .collect()
            })
            .collect();
        Some(rows)
    }
}

fn membership(n: usize, indices: &[usize]) -> Vec<bool> {
    let mut m = vec![false; n];
    for &i in indices {
        m[i] = true;
    }
    m
}

pub fn parabolic_of(datum: &RootDatum, lambda: &Cochar) -> ParabolicType {
    let pairings = datum.root_pairings(lambda);
    let mut nonneg = Vec::new();
    let mut levi = Vec::new();
    let mut unipotent = Vec::new();
    for (i, &p) in pairings.iter().enumerate() {
        if p >= 0 {
            nonneg.push(i);
            if p == 0 {
                levi.push(i);
            } else {
                unipotent.push(i);
            }
        }
    }
    ParabolicType {
        defining_cochar: lambda.clone(),
        nonneg_roots: nonneg,
        levi_roots: levi,
        unipotent_roots: unipotent,
    }
}

pub fn is_proper(p: &ParabolicType) -> bool {
    p.is_proper()
}

pub fn same_parabolic(datum: &RootDatum, lambda: &Cochar, mu: &Cochar) -> bool {
    datum
        .root_pairings(lambda)
        .iter()
        .zip(datum.root_pairings(mu))
        .all(|(&a, b)| (a >= 0) == (b >= 0))
}

/// `λ + μ` for two cocharacters in the same open chamber; the sum defines
/// the same Borel type.
pub fn chamber_sum(datum: &RootDatum, lambda: &Cochar, mu: &Cochar) -> Result<Cochar, DynamicError> {
    if !same_parabolic(datum, lambda, mu) || !parabolic_of(datum, lambda).is_borel() {
        return Err(DynamicError::ChamberMismatch(lambda.clone(), mu.clone()));
    }
    Ok(lambda + mu)
}

/// `Σ_{i<d} w^i λ`, the commuting stand-in for the twisted product
/// `F^{d-1}(λ) ⋯ F(λ) λ`.
pub fn frobenius_orbit_sum(lambda: &Cochar, w: &WeylElement, d: u32) -> Cochar {
    let mut term = lambda.clone();
    let mut acc = Cochar::zero(lambda.len());
    for _ in 0..d {
        acc = &acc + &term;
        term = w.apply(&term);
    }
    acc
}

/// Whether `w` stabilizes the root subset of `P`, i.e. a torus-normalizing
/// lift of `w` lies in the parabolic.
pub fn normalizer_element_in_parabolic(datum: &RootDatum, w: &WeylElement, p: &ParabolicType) -> bool {
    let perm = datum.root_permutation(w);
    p.nonneg_roots.iter().all(|&i| p.contains(perm[i]))
}

/// All parabolics containing the torus, as distinct root subsets, obtained
/// as Weyl translates of the standard parabolics `P_J` (one per subset `J`
/// of the simple roots). Independent of [`parabolic_of`]: membership comes
/// from simple-root coordinates and root permutations only.
pub fn all_parabolics(datum: &RootDatum, weyl: &[WeylElement]) -> Vec<ParabolicType> {
    let simple = datum.simple_roots().len();
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << simple) {
        let in_j = |k: usize| mask & (1 << k) != 0;
        // P_J = positive roots ∪ negative roots supported on J
        let standard: Vec<usize> = (0..datum.num_roots())
            .filter(|&i| {
                datum.is_positive(i)
                    || datum
                        .simple_coordinates(i)
                        .iter()
                        .enumerate()
                        .all(|(k, &c)| c == 0 || in_j(k))
            })
            .collect();
        // Σ of coroots over the unipotent radical defines P_J
        let member = membership(datum.num_roots(), &standard);
        let mut lambda_j = Cochar::zero(datum.rank());
        for &i in &standard {
            if !member[datum.negation_of(i)] {
                lambda_j = &lambda_j + &Cochar(datum.coroots()[i].clone());
            }
        }
        for w in weyl {
            let perm = datum.root_permutation(w);
            let mut image: Vec<usize> = standard.iter().map(|&i| perm[i]).collect();
            image.sort_unstable();
            if seen.insert(image.clone()) {
                out.push(ParabolicType::from_nonneg(datum, w.apply(&lambda_j), image));
            }
        }
    }
    out.sort_by(|a, b| a.nonneg_roots.cmp(&b.nonneg_roots));
    out
}

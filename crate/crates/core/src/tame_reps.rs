//! Strongly semisimple tame representations as combinatorial pairs.
//!
//! A pair `(q, f, v̄, w)` records the inertia character through the niveau-`f`
//! fundamental character, as a cocharacter with entries in `Z/N` where
//! `N = q^f - 1`, together with the Weyl image `w` of Frobenius. Frobenius
//! acts on `X_*(T) ⊗ Z/N` as multiplication by `q`, so the pair extends to
//! the whole Galois group exactly when `w·v̄ ≡ q·v̄ (mod N)`.
//!
//! The torus part of the Frobenius image is quotiented away; it plays no role
//! in validity, irreducibility, or the lifting congruences.

use rand::Rng;
use serde::Serialize;
use thiserror::Error;

use crate::dynamic::{all_parabolics, normalizer_element_in_parabolic, ParabolicType};
use crate::lattice::{self, mul_mod, IntMatrix, ModKernel};
use crate::root_datum::{Cochar, DatumError, RootDatum, WeylElement};

/// Environment variable overriding the oracle's Weyl-group size guard.
pub const ORACLE_LIMIT_ENV: &str = "TAMELIFT_ORACLE_LIMIT";

/// Moduli are kept below this so products of two residues fit in `i64`.
pub const MAX_MODULUS: i64 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PairError {
    #[error("q = {0} is not a prime power >= 2")]
    InvalidQ(u64),
    #[error("f must be at least 1")]
    InvalidF,
    #[error("modulus q^f - 1 for q = {q}, f = {f} exceeds the supported range")]
    ModulusTooLarge { q: u64, f: u32 },
    #[error("pair does not satisfy w·v̄ ≡ q·v̄ (mod {modulus}) at coordinates {coordinates:?}")]
    Incompatible { modulus: i64, coordinates: Vec<usize> },
    #[error(transparent)]
    Datum(#[from] DatumError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("oracle out of range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Pair(#[from] PairError),
}

pub fn is_prime_power(q: u64) -> bool {
    if q < 2 {
        return false;
    }
    let mut p = 2;
    while p * p <= q && !q.is_multiple_of(p) {
        p += 1;
    }
    if !q.is_multiple_of(p) {
        return true; // q itself is prime
    }
    let mut m = q;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

/// `N = q^f - 1`.
pub fn modulus(q: u64, f: u32) -> Result<i64, PairError> {
    if !is_prime_power(q) {
        return Err(PairError::InvalidQ(q));
    }
    if f == 0 {
        return Err(PairError::InvalidF);
    }
    let too_large = PairError::ModulusTooLarge { q, f };
    let qf = (q as i64).checked_pow(f).ok_or(too_large.clone())?;
    if qf > MAX_MODULUS {
        return Err(too_large);
    }
    Ok(qf - 1)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TameInertialPair {
    q: u64,
    f: u32,
    modulus: i64,
    vbar: Vec<i64>,
    w: WeylElement,
}

impl TameInertialPair {
    /// Checks `q`, `f` and shapes; `v̄` is reduced into `[0, N)`. Compatibility
    /// is *not* checked here, see [`validate_pair`].
    pub fn new(datum: &RootDatum, q: u64, f: u32, vbar: Vec<i64>, w: WeylElement) -> Result<Self, PairError> {
        let modulus = modulus(q, f)?;
        datum.check_cochar(&vbar)?;
        if w.rank() != datum.rank() {
            return Err(DatumError::DimensionMismatch { expected: datum.rank(), actual: w.rank() }.into());
        }
        let vbar = vbar.into_iter().map(|x| x.rem_euclid(modulus)).collect();
        Ok(TameInertialPair { q, f, modulus, vbar, w })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn modulus(&self) -> i64 {
        self.modulus
    }

    pub fn vbar(&self) -> &[i64] {
        &self.vbar
    }

    pub fn weyl(&self) -> &WeylElement {
        &self.w
    }

    pub fn rank(&self) -> usize {
        self.vbar.len()
    }

    /// The pair `(q, f, u·v̄, u w u⁻¹)`.
    pub fn conjugate(&self, u: &WeylElement) -> TameInertialPair {
        let vbar = u.apply(&self.vbar).iter().map(|x| x.rem_euclid(self.modulus)).collect();
        let w = u.compose(&self.w).compose(&u.inverse());
        TameInertialPair { q: self.q, f: self.f, modulus: self.modulus, vbar, w }
    }

    fn reduce(&self, v: &[i64]) -> Vec<i64> {
        v.iter().map(|x| x.rem_euclid(self.modulus)).collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CongruenceFailure {
    pub coordinate: usize,
    /// `(w·v̄)_i mod N`
    pub weyl_side: i64,
    /// `(q·v̄)_i mod N`
    pub frobenius_side: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidityReport {
    pub valid: bool,
    pub modulus: i64,
    pub failures: Vec<CongruenceFailure>,
}

/// Checks `w·v̄ ≡ q·v̄ (mod N)` coordinate by coordinate.
pub fn validate_pair(pair: &TameInertialPair) -> ValidityReport {
    let n = pair.modulus;
    let wv = pair.reduce(&pair.w.apply(&pair.vbar));
    let qv: Vec<i64> = pair.vbar.iter().map(|&x| mul_mod(x, pair.q as i64, n)).collect();
    let failures: Vec<CongruenceFailure> = wv
        .iter()
        .zip(&qv)
        .enumerate()
        .filter(|(_, (a, b))| a != b)
        .map(|(i, (&a, &b))| CongruenceFailure { coordinate: i, weyl_side: a, frobenius_side: b })
        .collect();
    ValidityReport { valid: failures.is_empty(), modulus: n, failures }
}

fn require_valid(pair: &TameInertialPair) -> Result<(), PairError> {
    let report = validate_pair(pair);
    if report.valid {
        Ok(())
    } else {
        Err(PairError::Incompatible {
            modulus: pair.modulus,
            coordinates: report.failures.iter().map(|f| f.coordinate).collect(),
        })
    }
}

/// Smallest `f₀ >= 1` with `q^{f₀} v̄ ≡ v̄ (mod N)`.
pub fn niveau(pair: &TameInertialPair) -> Result<u32, PairError> {
    require_valid(pair)?;
    let n = pair.modulus;
    let mut qpow = 1i64;
    for f0 in 1..=pair.f {
        qpow = mul_mod(qpow, pair.q as i64, n);
        if pair.vbar.iter().all(|&x| mul_mod(x, qpow, n) == x) {
            return Ok(f0);
        }
    }
    unreachable!("q^f ≡ 1 mod N, so f₀ = f always works")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeylOrderReport {
    pub niveau: u32,
    /// `w^{f₀} = 1`
    pub niveau_power_trivial: bool,
    /// `w^f = 1`, the hypothesis of the lifting construction
    pub f_power_trivial: bool,
}

pub fn check_weyl_order(pair: &TameInertialPair) -> Result<WeylOrderReport, PairError> {
    let f0 = niveau(pair)?;
    Ok(WeylOrderReport {
        niveau: f0,
        niveau_power_trivial: pair.w.pow(u64::from(f0)).is_identity(),
        f_power_trivial: pair.w.pow(u64::from(pair.f)).is_identity(),
    })
}

/// Roots of the connected centralizer of the inertia image:
/// `{α : <α, v̄> ≡ 0 (mod N)}`.
pub fn inertia_centralizer_roots(datum: &RootDatum, pair: &TameInertialPair) -> Result<Vec<usize>, PairError> {
    require_valid(pair)?;
    Ok((0..datum.num_roots())
        .filter(|&i| datum.root_pairing(i, &pair.vbar).rem_euclid(pair.modulus) == 0)
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Certificate {
    /// A root killing `v̄` mod `N`: the inertia image centralizes a root
    /// subgroup.
    KillingRoot { index: usize, root: Vec<i64> },
    /// A non-central `w`-fixed cocharacter `μ`; `P(μ)` is a proper parabolic
    /// containing the image.
    FixedCochar { cochar: Cochar },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Irreducibility {
    pub irreducible: bool,
    pub certificate: Option<Certificate>,
}

/// Irreducible iff no root kills `v̄` mod `N` and the `w`-fixed cocharacters
/// are exactly the central ones (as rational subspaces).
pub fn is_g_irreducible(datum: &RootDatum, pair: &TameInertialPair) -> Result<Irreducibility, PairError> {
    let killing = inertia_centralizer_roots(datum, pair)?;
    if let Some(&index) = killing.first() {
        return Ok(Irreducibility {
            irreducible: false,
            certificate: Some(Certificate::KillingRoot { index, root: datum.roots()[index].clone() }),
        });
    }
    // central ⊆ fixed always, so a non-central fixed basis vector exists iff
    // the fixed space is strictly larger
    let fixed = datum.weyl_fixed_space(&pair.w);
    match fixed.into_iter().find(|mu| !datum.is_central(mu)) {
        Some(mu) => Ok(Irreducibility {
            irreducible: false,
            certificate: Some(Certificate::FixedCochar { cochar: mu }),
        }),
        None => Ok(Irreducibility { irreducible: true, certificate: None }),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OracleGuard {
    pub max_rank: usize,
    pub max_weyl_order: usize,
}

impl Default for OracleGuard {
    fn default() -> Self {
        OracleGuard { max_rank: 4, max_weyl_order: 1152 }
    }
}

impl OracleGuard {
    /// The default guard, with the Weyl-order bound taken from
    /// `TAMELIFT_ORACLE_LIMIT` when set to an integer.
    pub fn from_env() -> Self {
        let mut guard = OracleGuard::default();
        if let Some(limit) = std::env::var(ORACLE_LIMIT_ENV).ok().and_then(|s| s.trim().parse().ok()) {
            guard.max_weyl_order = limit;
        }
        guard
    }
}

/// Every parabolic containing the torus, precomputed once per datum.
#[derive(Clone, Debug)]
pub struct ParabolicCatalog {
    parabolics: Vec<ParabolicType>,
}

impl ParabolicCatalog {
    pub fn new(datum: &RootDatum, guard: OracleGuard) -> Result<Self, OracleError> {
        if datum.rank() > guard.max_rank {
            return Err(OracleError::OutOfRange(format!(
                "rank {} exceeds {}",
                datum.rank(),
                guard.max_rank
            )));
        }
        let weyl = datum.weyl_group_bounded(guard.max_weyl_order).ok_or_else(|| {
            OracleError::OutOfRange(format!("Weyl group larger than {}", guard.max_weyl_order))
        })?;
        Ok(ParabolicCatalog { parabolics: all_parabolics(datum, &weyl) })
    }

    pub fn parabolics(&self) -> &[ParabolicType] {
        &self.parabolics
    }

    /// Proper parabolics whose root set `w` stabilizes.
    pub fn stabilized_by(&self, datum: &RootDatum, w: &WeylElement) -> Vec<ParabolicType> {
        self.parabolics
            .iter()
            .filter(|p| p.is_proper() && normalizer_element_in_parabolic(datum, w, p))
            .cloned()
            .collect()
    }
}

/// Enumerates the proper parabolics containing the torus that also contain
/// the image of the pair. When no root kills `v̄` every parabolic containing
/// the image contains the torus, so an empty list means irreducible.
pub fn brute_force_parabolic_oracle(
    datum: &RootDatum,
    pair: &TameInertialPair,
    guard: OracleGuard,
) -> Result<Vec<ParabolicType>, OracleError> {
    require_valid(pair)?;
    let catalog = ParabolicCatalog::new(datum, guard)?;
    Ok(catalog.stabilized_by(datum, &pair.w))
}

/// The subgroup `{v̄ : (w - q) v̄ ≡ 0 (mod N)}` of compatible inertia data.
pub fn compatibility_kernel(w: &WeylElement, q: u64, f: u32) -> Result<ModKernel, PairError> {
    let n = modulus(q, f)?;
    let a = w.matrix().sub(&IntMatrix::identity(w.rank()).scale(q as i64));
    Ok(lattice::kernel_mod(&a, n))
}

/// A uniformly random element of the subgroup.
pub fn sample_compatible<R: Rng + ?Sized>(kernel: &ModKernel, rng: &mut R) -> Vec<i64> {
    let coeffs: Vec<i64> = kernel.orders.iter().map(|&o| rng.gen_range(0..o)).collect();
    kernel.combine(&coeffs)
}

/// Every element of the subgroup exactly once, in mixed-radix order of the
/// generator coefficients.
pub fn enumerate_compatible(kernel: &ModKernel) -> impl Iterator<Item = Vec<i64>> + '_ {
    let total = kernel.order();
    (0..total).map(move |mut idx| {
        let coeffs: Vec<i64> = kernel
            .orders
            .iter()
            .map(|&o| {
                let c = (idx % o as u128) as i64;
                idx /= o as u128;
                c
            })
            .collect();
        kernel.combine(&coeffs)
    })
}

//! Hodge-Tate types of crystalline tuples, regularization, and the calculus
//! of labeled and colabeled weight multisets.
//!
//! Sign convention: the Lubin-Tate character has weight `-1` at the identity
//! colabel, so the Hodge-Tate cocharacter at colabel `j` is `-λ_j`.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::crystalline_lift::{lift_inertia, xi_operator, CrysCharTuple, LiftError, LiftResult};
use crate::lattice::{self, IntMatrix};
use crate::root_datum::{Cochar, Preset, RootDatum, WeylElement};
use crate::tame_reps::TameInertialPair;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HodgeTateError {
    #[error("seed cocharacter {0} is not regular")]
    NonRegularSeed(Cochar),
    #[error("colabel {colabel} out of range for f = {f}")]
    ColabelOutOfRange { colabel: usize, f: u32 },
    #[error("multiplicity {count} of {value} is not divisible by {divisor}")]
    Division { value: i64, count: u64, divisor: u64 },
    #[error("divisor must be positive")]
    ZeroDivisor,
    #[error("invalid embedding profile: {0}")]
    Profile(String),
    #[error("twist is not a bijection of {0} colabels")]
    NotBijective(usize),
    #[error(transparent)]
    Lift(#[from] LiftError),
}

/// The colabeled Hodge-Tate cocharacter, one entry per colabel `j ∈ Z/f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HTType {
    cochars: Vec<Cochar>,
}

impl HTType {
    pub fn f(&self) -> u32 {
        self.cochars.len() as u32
    }

    pub fn cochars(&self) -> &[Cochar] {
        &self.cochars
    }

    pub fn at(&self, colabel: usize) -> &Cochar {
        &self.cochars[colabel]
    }
}

impl Serialize for HTType {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let map: BTreeMap<String, &Cochar> =
            self.cochars.iter().enumerate().map(|(j, c)| (j.to_string(), c)).collect();
        map.serialize(s)
    }
}

pub fn ht_type(v: &CrysCharTuple) -> HTType {
    HTType { cochars: v.slots().iter().map(|s| -s).collect() }
}

pub fn is_ht_regular(datum: &RootDatum, t: &HTType) -> bool {
    t.cochars.iter().all(|c| datum.is_regular_cochar(c))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ColabelRow {
    pub colabel: usize,
    pub cochar: Cochar,
    pub regular: bool,
    /// First root killing the cocharacter, by index.
    pub offending_root: Option<usize>,
}

pub fn regularity_table(datum: &RootDatum, t: &HTType) -> Vec<ColabelRow> {
    t.cochars
        .iter()
        .enumerate()
        .map(|(j, c)| {
            let offending_root = datum.killing_root(c);
            ColabelRow { colabel: j, cochar: c.clone(), regular: offending_root.is_none(), offending_root }
        })
        .collect()
}

/// A fixed regular cocharacter: `(n-1, ..., 1, 0)` on `GL(n)`, otherwise
/// the integral solution of `<α, λ> = 1` on simple roots when one exists,
/// otherwise the sum of positive coroots.
pub fn canonical_regular_cochar(datum: &RootDatum) -> Cochar {
    let r = datum.rank();
    if let Some(Preset::GL(n)) = datum.preset_kind() {
        return Cochar((0..n as i64).rev().collect());
    }
    let forms: Vec<Vec<i64>> = datum
        .simple_roots()
        .iter()
        .map(|&i| {
            (0..r)
                .map(|k| {
                    let mut e = vec![0; r];
                    e[k] = 1;
                    datum.root_pairing(i, &e)
                })
                .collect()
        })
        .collect();
    if let Some(a) = IntMatrix::from_rows(&forms) {
        if let Some(x) = lattice::solve_integer(&a, &vec![1; forms.len()]) {
            let c = Cochar(x);
            if datum.is_regular_cochar(&c) {
                return c;
            }
        }
    }
    let mut sum = Cochar::zero(r);
    for i in datum.positive_roots() {
        sum = &sum + &Cochar(datum.coroots()[i].clone());
    }
    sum
}

/// The tuple with `λ` at colabel `j0` and zero elsewhere.
pub fn regular_seed(
    datum: &RootDatum,
    q: u64,
    f: u32,
    j0: usize,
    lambda: &Cochar,
) -> Result<CrysCharTuple, HodgeTateError> {
    datum.check_cochar(lambda).map_err(|e| HodgeTateError::Lift(LiftError::Shape(e.to_string())))?;
    if !datum.is_regular_cochar(lambda) {
        return Err(HodgeTateError::NonRegularSeed(lambda.clone()));
    }
    if j0 >= f as usize {
        return Err(HodgeTateError::ColabelOutOfRange { colabel: j0, f });
    }
    let mut slots = vec![Cochar::zero(datum.rank()); f as usize];
    slots[j0] = lambda.clone();
    Ok(CrysCharTuple::new(q, f, slots)?)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegularLift {
    pub result: LiftResult,
    /// Smallest `C >= 0` making `v + C·N·Ξv₀` regular.
    pub c: u64,
    pub seed: Cochar,
}

/// `v + C·N·Ξv₀` for the least admissible `C`, where `v` is the canonical
/// lift and `v₀` the canonical seed at colabel 0.
pub fn regular_lift(datum: &RootDatum, pair: &TameInertialPair) -> Result<RegularLift, HodgeTateError> {
    let base = lift_inertia(datum, pair)?;
    let seed = canonical_regular_cochar(datum);
    let v0 = regular_seed(datum, pair.q(), pair.f(), 0, &seed)?;
    let step = xi_operator(pair.weyl(), &v0)?.scale(pair.modulus());
    // each (root, colabel) pairing is affine in C with nonzero slope, so it
    // vanishes for at most one C
    let bound = (datum.num_roots() * pair.f() as usize) as u64;
    let mut candidate = base.tuple().clone();
    for c in 0..=bound {
        if candidate.slots().iter().all(|s| datum.is_regular_cochar(s)) {
            let result = LiftResult::verify(datum, pair, candidate)?;
            let checks = result.checks();
            if !(checks.kernel && checks.reduction && checks.regular) {
                return Err(LiftError::Internal("regular lift failed re-verification".into()).into());
            }
            return Ok(RegularLift { result, c, seed });
        }
        candidate = candidate.add(&step)?;
    }
    Err(LiftError::Internal(format!("no regular translate with C <= {bound}")).into())
}

/// Slot `j` of `Ξv₀` for `v₀` concentrated at colabel 0 is `w^{f-1-j} λ`.
pub fn xi_seed_translate(w: &WeylElement, lambda: &Cochar, f: u32, j: usize) -> Cochar {
    w.pow((f as usize - 1 - j) as u64).apply(lambda)
}

/// A finite multiset of integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMultiset {
    counts: BTreeMap<i64, u64>,
}

impl IntMultiset {
    pub fn new() -> Self {
        IntMultiset::default()
    }

    pub fn from_values<I: IntoIterator<Item = i64>>(values: I) -> Self {
        let mut m = IntMultiset::new();
        for v in values {
            m.insert(v, 1);
        }
        m
    }

    pub fn insert(&mut self, value: i64, count: u64) {
        if count > 0 {
            *self.counts.entry(value).or_insert(0) += count;
        }
    }

    pub fn count(&self, value: i64) -> u64 {
        self.counts.get(&value).copied().unwrap_or(0)
    }

    pub fn size(&self) -> u64 {
        self.counts.values().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }

    pub fn union(&self, other: &IntMultiset) -> IntMultiset {
        let mut out = self.clone();
        for (&v, &c) in &other.counts {
            out.insert(v, c);
        }
        out
    }

    /// Values in increasing order, with repetition.
    pub fn to_sorted_vec(&self) -> Vec<i64> {
        self.counts.iter().flat_map(|(&v, &c)| std::iter::repeat_n(v, c as usize)).collect()
    }

    pub fn counts(&self) -> &BTreeMap<i64, u64> {
        &self.counts
    }
}

impl Serialize for IntMultiset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_sorted_vec().serialize(s)
    }
}

impl std::fmt::Display for IntMultiset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.to_sorted_vec().iter().map(i64::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

pub fn multiset_divide(m: &IntMultiset, s: u64) -> Result<IntMultiset, HodgeTateError> {
    if s == 0 {
        return Err(HodgeTateError::ZeroDivisor);
    }
    let mut out = IntMultiset::new();
    for (&value, &count) in &m.counts {
        if count % s != 0 {
            return Err(HodgeTateError::Division { value, count, divisor: s });
        }
        out.insert(value, count / s);
    }
    Ok(out)
}

/// Colabels (embeddings of the coefficient field) with their restriction to
/// labels; every fiber has `degree` elements.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingProfile {
    restriction: Vec<usize>,
    num_labels: usize,
    degree: usize,
}

impl EmbeddingProfile {
    pub fn new(restriction: Vec<usize>, num_labels: usize) -> Result<Self, HodgeTateError> {
        if num_labels == 0 {
            return Err(HodgeTateError::Profile("no labels".into()));
        }
        let mut sizes = vec![0usize; num_labels];
        for &t in &restriction {
            if t >= num_labels {
                return Err(HodgeTateError::Profile(format!("label {t} out of range")));
            }
            sizes[t] += 1;
        }
        let degree = sizes[0];
        if degree == 0 || sizes.iter().any(|&s| s != degree) {
            return Err(HodgeTateError::Profile(format!("fiber sizes {sizes:?} are not all equal and positive")));
        }
        Ok(EmbeddingProfile { restriction, num_labels, degree })
    }

    /// Colabel `τ·d + j` restricts to label `τ`.
    pub fn unramified(num_labels: usize, d: usize) -> Result<Self, HodgeTateError> {
        EmbeddingProfile::new((0..num_labels * d).map(|s| s / d.max(1)).collect(), num_labels)
    }

    pub fn num_colabels(&self) -> usize {
        self.restriction.len()
    }

    pub fn num_labels(&self) -> usize {
        self.num_labels
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn restrict(&self, colabel: usize) -> usize {
        self.restriction[colabel]
    }

    pub fn fiber(&self, label: usize) -> Vec<usize> {
        (0..self.restriction.len()).filter(|&s| self.restriction[s] == label).collect()
    }

    /// The label permutation `θ̄` with `restrict(θ(σ)) = θ̄(restrict(σ))`,
    /// when `θ` carries fibers to fibers.
    pub fn induced_label_permutation(&self, theta: &[usize]) -> Option<Vec<usize>> {
        let mut bar = vec![usize::MAX; self.num_labels];
        for (s, &t) in theta.iter().enumerate() {
            let (from, to) = (self.restriction[s], self.restriction[t]);
            if bar[from] == usize::MAX {
                bar[from] = to;
            } else if bar[from] != to {
                return None;
            }
        }
        Some(bar)
    }
}

/// `(1/[E:K]) ⋃_{σ over τ} HT^σ`.
pub fn labeled_from_colabeled(
    profile: &EmbeddingProfile,
    colabeled: &[IntMultiset],
    label: usize,
) -> Result<IntMultiset, HodgeTateError> {
    if colabeled.len() != profile.num_colabels() {
        return Err(HodgeTateError::Profile(format!(
            "{} colabeled multisets for {} colabels",
            colabeled.len(),
            profile.num_colabels()
        )));
    }
    if label >= profile.num_labels {
        return Err(HodgeTateError::Profile(format!("label {label} out of range")));
    }
    let union = profile.fiber(label).iter().fold(IntMultiset::new(), |acc, &s| acc.union(&colabeled[s]));
    multiset_divide(&union, profile.degree as u64)
}

/// Output at `σ` is the input at `θ(σ)`.
pub fn galois_twist(colabeled: &[IntMultiset], theta: &[usize]) -> Result<Vec<IntMultiset>, HodgeTateError> {
    let n = colabeled.len();
    let mut seen = vec![false; n];
    if theta.len() != n {
        return Err(HodgeTateError::NotBijective(n));
    }
    for &t in theta {
        if t >= n || seen[t] {
            return Err(HodgeTateError::NotBijective(n));
        }
        seen[t] = true;
    }
    Ok(theta.iter().map(|&t| colabeled[t].clone()).collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InducedLubinTate {
    pub profile: EmbeddingProfile,
    pub colabeled: Vec<IntMultiset>,
    pub labeled: Vec<IntMultiset>,
}

/// Weights of the induction to `K` of the Lubin-Tate character of the degree
/// `d` unramified extension. `HT^σ` of the `k`-th Frobenius translate is
/// `{-1}` when `σ` is the `k`-th embedding over the canonical label 0 and
/// `{0}` otherwise, and `HT^σ` of the induction is the union over `k < d`.
pub fn induced_lt_ht(num_labels: usize, d: usize) -> Result<InducedLubinTate, HodgeTateError> {
    if d == 0 {
        return Err(HodgeTateError::Profile("degree must be at least 1".into()));
    }
    let profile = EmbeddingProfile::unramified(num_labels, d)?;
    let colabeled: Vec<IntMultiset> = (0..profile.num_colabels())
        .map(|s| {
            let (tau, j) = (s / d, s % d);
            IntMultiset::from_values((0..d).map(|k| if tau == 0 && k == j { -1 } else { 0 }))
        })
        .collect();
    let labeled = (0..num_labels)
        .map(|t| labeled_from_colabeled(&profile, &colabeled, t))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(InducedLubinTate { profile, colabeled, labeled })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tame_reps::validate_pair;
    use proptest::prelude::*;

    fn gl(n: usize) -> RootDatum {
        RootDatum::preset(Preset::GL(n)).unwrap()
    }

    fn tuple(q: u64, slots: &[&[i64]]) -> CrysCharTuple {
        CrysCharTuple::new(q, slots.len() as u32, slots.iter().map(|s| Cochar(s.to_vec())).collect()).unwrap()
    }

    fn ms(v: &[i64]) -> IntMultiset {
        IntMultiset::from_values(v.iter().copied())
    }

    #[test]
    fn ht_examples() {
        let t = ht_type(&tuple(3, &[&[1, 0], &[0, 0]]));
        assert_eq!(t.cochars(), &[Cochar(vec![-1, 0]), Cochar(vec![0, 0])]);
        assert!(ht_type(&CrysCharTuple::zero(3, 3, 2)).cochars().iter().all(Cochar::is_zero));
        let t = ht_type(&tuple(3, &[&[1, 0], &[0, 1]]));
        assert_eq!(t.cochars(), &[Cochar(vec![-1, 0]), Cochar(vec![0, -1])]);
        assert_eq!(serde_json::to_string(&t).unwrap(), r#"{"0":[-1,0],"1":[0,-1]}"#);
    }

    #[test]
    fn regularity_examples() {
        let d = gl(2);
        assert!(is_ht_regular(&d, &ht_type(&tuple(3, &[&[1, 0], &[0, 1]]))));
        assert!(!is_ht_regular(&d, &ht_type(&CrysCharTuple::zero(3, 2, 2))));
        let d4 = gl(4);
        assert!(is_ht_regular(&d4, &ht_type(&tuple(3, &[&[3, 1, 2, 0], &[0, 2, 1, 3]]))));
        let rows = regularity_table(&d, &ht_type(&tuple(3, &[&[1, 0], &[2, 2]])));
        assert!(rows[0].regular && !rows[1].regular);
        assert_eq!(rows[1].offending_root, Some(0));
    }

    #[test]
    fn seed_examples() {
        let d = gl(2);
        assert_eq!(regular_seed(&d, 3, 2, 0, &Cochar(vec![1, 0])).unwrap(), tuple(3, &[&[1, 0], &[0, 0]]));
        assert_eq!(
            regular_seed(&d, 3, 3, 2, &Cochar(vec![2, 1])).unwrap(),
            tuple(3, &[&[0, 0], &[0, 0], &[2, 1]])
        );
        assert_eq!(
            regular_seed(&d, 3, 2, 0, &Cochar(vec![1, 1])),
            Err(HodgeTateError::NonRegularSeed(Cochar(vec![1, 1])))
        );
        assert!(matches!(
            regular_seed(&d, 3, 2, 2, &Cochar(vec![1, 0])),
            Err(HodgeTateError::ColabelOutOfRange { .. })
        ));
    }

    #[test]
    fn canonical_cochars_are_regular() {
        for p in ["GL1", "GL2", "GL4", "SL2", "SL3", "Sp4", "Sp6", "SO5", "SO6", "SO4", "G2"] {
            let d = RootDatum::preset(p.parse().unwrap()).unwrap();
            assert!(d.is_regular_cochar(&canonical_regular_cochar(&d)), "{p}");
        }
        assert_eq!(canonical_regular_cochar(&gl(3)), Cochar(vec![2, 1, 0]));
    }

    #[test]
    fn regular_lift_examples() {
        let d = gl(2);
        let s = d.weyl_from_word(&[0]).unwrap();
        let p = TameInertialPair::new(&d, 3, 2, vec![1, 3], s.clone()).unwrap();
        let r = regular_lift(&d, &p).unwrap();
        assert!(r.result.checks().regular && r.result.checks().kernel && r.result.checks().reduction);

        let p0 = TameInertialPair::new(&d, 3, 2, vec![0, 0], s).unwrap();
        let r0 = regular_lift(&d, &p0).unwrap();
        assert_eq!(r0.c, 1);
        assert_eq!(r0.seed, Cochar(vec![1, 0]));
        assert_eq!(r0.result.tuple(), &tuple(3, &[&[0, 8], &[8, 0]]));

        let p1 = TameInertialPair::new(&d, 3, 1, vec![0, 0], WeylElement::identity(2)).unwrap();
        let r1 = regular_lift(&d, &p1).unwrap();
        assert_eq!(r1.result.tuple(), &tuple(3, &[&[2, 0]]));
    }

    #[test]
    fn multiset_examples() {
        assert_eq!(multiset_divide(&ms(&[1, 1, 2, 2, 2, 2]), 2).unwrap(), ms(&[1, 2, 2]));
        let m = ms(&[3, -1, 3, 0]);
        assert_eq!(multiset_divide(&m, 1).unwrap(), m);
        assert_eq!(
            multiset_divide(&ms(&[1, 1, 2]), 2),
            Err(HodgeTateError::Division { value: 2, count: 1, divisor: 2 })
        );
        assert_eq!(serde_json::to_string(&ms(&[2, 1, 2])).unwrap(), "[1,2,2]");
        assert_eq!(ms(&[0, -1]).to_string(), "{-1,0}");
    }

    #[test]
    fn labeling_examples() {
        let p1 = EmbeddingProfile::unramified(3, 1).unwrap();
        let col = vec![ms(&[1]), ms(&[2, 5]), ms(&[])];
        for t in 0..3 {
            assert_eq!(labeled_from_colabeled(&p1, &col, t).unwrap(), col[t]);
        }
        let p2 = EmbeddingProfile::unramified(1, 2).unwrap();
        let col = vec![ms(&[-1, 0]), ms(&[-1, 0])];
        assert_eq!(labeled_from_colabeled(&p2, &col, 0).unwrap(), ms(&[-1, 0]));
        assert!(EmbeddingProfile::new(vec![0, 0, 1], 2).is_err());
    }

    #[test]
    fn twist_examples() {
        let m = vec![ms(&[1]), ms(&[2, 2])];
        assert_eq!(galois_twist(&m, &[0, 1]).unwrap(), m);
        assert_eq!(galois_twist(&m, &[1, 0]).unwrap(), vec![ms(&[2, 2]), ms(&[1])]);
        assert_eq!(galois_twist(&m, &[1, 1]), Err(HodgeTateError::NotBijective(2)));
        let m3 = vec![ms(&[1]), ms(&[2]), ms(&[3])];
        let theta = [1, 2, 0];
        let inv = [2, 0, 1];
        assert_eq!(galois_twist(&galois_twist(&m3, &theta).unwrap(), &inv).unwrap(), m3);
    }

    #[test]
    fn induced_examples() {
        let one = induced_lt_ht(1, 1).unwrap();
        assert_eq!(one.labeled, vec![ms(&[-1])]);
        let three = induced_lt_ht(2, 3).unwrap();
        assert_eq!(three.labeled, vec![ms(&[0, 0, -1]), ms(&[0, 0, 0])]);
        let two = induced_lt_ht(1, 2).unwrap();
        assert!(two.colabeled.iter().all(|m| *m == ms(&[-1, 0])));
    }

    #[test]
    fn xi_seed_translates_are_weyl_images() {
        let d = RootDatum::preset(Preset::G2).unwrap();
        let lambda = canonical_regular_cochar(&d);
        for w in d.weyl_group() {
            for f in 1..=3u32 {
                if !w.pow(u64::from(f)).is_identity() {
                    continue;
                }
                let v0 = regular_seed(&d, 2, f, 0, &lambda).unwrap();
                let xi = xi_operator(&w, &v0).unwrap();
                for j in 0..f as usize {
                    assert_eq!(xi.slot(j), &xi_seed_translate(&w, &lambda, f, j));
                }
                assert!(is_ht_regular(&d, &ht_type(&xi)));
            }
        }
    }

    fn labels_and_theta() -> impl Strategy<Value = (usize, usize, Vec<usize>, Vec<Vec<usize>>)> {
        (1usize..4, 1usize..4).prop_flat_map(|(k, d)| {
            let label_perm = Just((0..k).collect::<Vec<_>>()).prop_shuffle();
            let fiber_perms = prop::collection::vec(Just((0..d).collect::<Vec<_>>()).prop_shuffle(), k);
            (Just(k), Just(d), label_perm, fiber_perms)
        })
    }

    proptest! {
        #[test]
        fn twist_commutes_with_labeling((k, d, pi, within) in labels_and_theta(),
                                        raw in prop::collection::vec(prop::collection::vec(-3i64..3, 0..3), 9)) {
            let profile = EmbeddingProfile::unramified(k, d).unwrap();
            // a consistent colabeled family: each fiber carries d copies of one multiset
            let colabeled: Vec<IntMultiset> =
                (0..k * d).map(|s| IntMultiset::from_values(raw[s / d].iter().copied())).collect();
            let theta: Vec<usize> = (0..k * d).map(|s| pi[s / d] * d + within[s / d][s % d]).collect();
            let bar = profile.induced_label_permutation(&theta).unwrap();
            let twisted = galois_twist(&colabeled, &theta).unwrap();
            let sizes: u64 = colabeled.iter().map(IntMultiset::size).sum();
            prop_assert_eq!(twisted.iter().map(IntMultiset::size).sum::<u64>(), sizes);
            for (tau, &bt) in bar.iter().enumerate().take(k) {
                let lhs = labeled_from_colabeled(&profile, &twisted, tau).unwrap();
                let rhs = labeled_from_colabeled(&profile, &colabeled, bt).unwrap();
                prop_assert_eq!(lhs.size() * d as u64, profile.fiber(tau).iter().map(|&s| twisted[s].size()).sum::<u64>());
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn regular_lift_is_always_verified(preset in prop::sample::select(vec!["GL2", "GL3", "SL3", "Sp4", "G2"]),
                                           q in prop::sample::select(vec![2u64, 3, 5]), f in 1u32..=3,
                                           widx in 0usize..1000, seed in any::<u64>()) {
            use rand::SeedableRng;
            let d = RootDatum::preset(preset.parse().unwrap()).unwrap();
            let weyl = d.weyl_group();
            let w = weyl[widx % weyl.len()].clone();
            prop_assume!(w.pow(u64::from(f)).is_identity());
            let k = crate::tame_reps::compatibility_kernel(&w, q, f).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let v = crate::tame_reps::sample_compatible(&k, &mut rng);
            let p = TameInertialPair::new(&d, q, f, v, w).unwrap();
            prop_assert!(validate_pair(&p).valid);
            let r = regular_lift(&d, &p).unwrap();
            prop_assert!(is_ht_regular(&d, &ht_type(r.result.tuple())));
            prop_assert!(r.result.checks().kernel && r.result.checks().reduction);
        }

        #[test]
        fn gl_labeled_size_is_dimension(n in 1usize..5, f in 1u32..=3,
                                        entries in prop::collection::vec(-5i64..5, 12)) {
            // colabel j carries the n weights of slot j; each label fiber has one colabel
            let profile = EmbeddingProfile::unramified(f as usize, 1).unwrap();
            let colabeled: Vec<IntMultiset> = (0..f as usize)
                .map(|j| IntMultiset::from_values(entries[j * n..(j + 1) * n].iter().map(|x| -x)))
                .collect();
            for tau in 0..f as usize {
                prop_assert_eq!(labeled_from_colabeled(&profile, &colabeled, tau).unwrap().size(), n as u64);
            }
        }
    }
}

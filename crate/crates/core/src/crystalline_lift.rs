//! Crystalline lifts of tame inertia.
//!
//! The lattice `X_*(T)^f` stands in for crystalline torus characters that are
//! trivial on the unramified tower: slot `j` is the cocharacter attached to
//! the `j`-th embedding of `K_f`. Frobenius rotates slots to the right and the
//! Weyl group acts slotwise. A tuple is Frobenius-compatible for `w` when
//! `w·λ_j = λ_{j-1}`, and its reduction is `Σ q^j λ_j mod q^f - 1`, so that
//! reduction turns the rotation into multiplication by `q`.
//!
//! When `w^f = 1` the operator `Ξ = Σ_{i<f} w^i Φ^{f-1-i}` lands in the
//! compatible tuples, and its reduction `Ξ̄ = Σ w^i q^{f-1-i}` surjects onto
//! `ker(q - w)` mod `N`. Lifting a pair is therefore one linear solve over
//! `Z/N`.

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{self, mul_mod, IntMatrix};
use crate::root_datum::{Cochar, RootDatum, WeylElement};
use crate::tame_reps::{self, validate_pair, PairError, TameInertialPair};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LiftError {
    #[error("tuple shape mismatch: {0}")]
    Shape(String),
    #[error("lifting hypothesis fails: w^{f} is not the identity")]
    Hypothesis { f: u32 },
    #[error("exhaustive enumeration needs N^r = {size} vectors, above the limit {limit}")]
    GuardExceeded { size: u128, limit: u128 },
    #[error("internal consistency failure: {0}")]
    Internal(String),
    #[error(transparent)]
    Pair(#[from] PairError),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CrysCharTuple {
    q: u64,
    f: u32,
    slots: Vec<Cochar>,
}

impl CrysCharTuple {
    pub fn new(q: u64, f: u32, slots: Vec<Cochar>) -> Result<Self, LiftError> {
        if f == 0 {
            return Err(LiftError::Shape("f must be at least 1".into()));
        }
        if slots.len() != f as usize {
            return Err(LiftError::Shape(format!("expected {f} slots, got {}", slots.len())));
        }
        let rank = slots[0].len();
        if slots.iter().any(|s| s.len() != rank) {
            return Err(LiftError::Shape("slots have different ranks".into()));
        }
        Ok(CrysCharTuple { q, f, slots })
    }

    pub fn zero(q: u64, f: u32, rank: usize) -> Self {
        CrysCharTuple { q, f: f.max(1), slots: vec![Cochar::zero(rank); f.max(1) as usize] }
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn f(&self) -> u32 {
        self.f
    }

    pub fn rank(&self) -> usize {
        self.slots[0].len()
    }

    pub fn slots(&self) -> &[Cochar] {
        &self.slots
    }

    pub fn slot(&self, j: usize) -> &Cochar {
        &self.slots[j % self.slots.len()]
    }

    pub fn is_zero(&self) -> bool {
        self.slots.iter().all(Cochar::is_zero)
    }

    fn with_slots(&self, slots: Vec<Cochar>) -> Self {
        CrysCharTuple { q: self.q, f: self.f, slots }
    }

    pub fn add(&self, other: &CrysCharTuple) -> Result<CrysCharTuple, LiftError> {
        self.check_same_shape(other)?;
        Ok(self.with_slots(self.slots.iter().zip(&other.slots).map(|(a, b)| a + b).collect()))
    }

    pub fn scale(&self, k: i64) -> CrysCharTuple {
        self.with_slots(self.slots.iter().map(|s| s.scale(k)).collect())
    }

    fn check_same_shape(&self, other: &CrysCharTuple) -> Result<(), LiftError> {
        if self.f != other.f || self.rank() != other.rank() {
            return Err(LiftError::Shape(format!(
                "f = {}, rank {} against f = {}, rank {}",
                self.f,
                self.rank(),
                other.f,
                other.rank()
            )));
        }
        Ok(())
    }
}

/// Slot `j` of the output is slot `j - 1` of the input.
pub fn frobenius_shift(v: &CrysCharTuple) -> CrysCharTuple {
    let mut slots = v.slots.clone();
    slots.rotate_right(1);
    v.with_slots(slots)
}

pub fn weyl_act(w: &WeylElement, v: &CrysCharTuple) -> Result<CrysCharTuple, LiftError> {
    if w.rank() != v.rank() {
        return Err(LiftError::Shape(format!("Weyl element of rank {} on tuple of rank {}", w.rank(), v.rank())));
    }
    Ok(v.with_slots(v.slots.iter().map(|s| w.apply(s)).collect()))
}

/// `Ξv = Σ_{i<f} w^i Φ^{f-1-i} v`.
pub fn xi_operator(w: &WeylElement, v: &CrysCharTuple) -> Result<CrysCharTuple, LiftError> {
    let f = v.f as usize;
    let mut shifted = vec![v.clone()];
    for _ in 1..f {
        let next = frobenius_shift(shifted.last().unwrap());
        shifted.push(next);
    }
    let mut total = CrysCharTuple::zero(v.q, v.f, v.rank());
    let mut wi = WeylElement::identity(w.rank());
    for i in 0..f {
        total = total.add(&weyl_act(&wi, &shifted[f - 1 - i])?)?;
        wi = w.compose(&wi);
    }
    Ok(total)
}

/// `Σ_j q^j λ_j` with entries in `[0, N)`.
pub fn reduction(v: &CrysCharTuple) -> Result<Vec<i64>, LiftError> {
    let n = tame_reps::modulus(v.q, v.f)?;
    let mut out = vec![0i64; v.rank()];
    let mut qj = 1 % n;
    for slot in &v.slots {
        for (o, &x) in out.iter_mut().zip(slot.iter()) {
            *o = (*o + mul_mod(qj, x, n)).rem_euclid(n);
        }
        qj = mul_mod(qj, v.q as i64, n);
    }
    Ok(out)
}

/// `w·λ_j = λ_{j-1}` for every `j`.
pub fn kernel_membership(w: &WeylElement, v: &CrysCharTuple) -> bool {
    if w.rank() != v.rank() {
        return false;
    }
    let f = v.slots.len();
    (0..f).all(|j| w.apply(&v.slots[j]) == v.slots[(j + f - 1) % f])
}

/// `Ξ̄ = Σ_{i<f} w^i q^{f-1-i}`, reduced mod `N`.
pub fn xi_bar(w: &WeylElement, q: u64, f: u32, n: i64) -> IntMatrix {
    let r = w.rank();
    let mut acc = IntMatrix::zeros(r, r);
    let mut wi = IntMatrix::identity(r);
    let mut qpow = 1i64;
    let mut terms = Vec::with_capacity(f as usize);
    for _ in 0..f {
        terms.push(wi.clone());
        wi = (w.matrix() * &wi).reduce_mod(n);
    }
    for i in (0..f as usize).rev() {
        acc = acc.add(&terms[i].scale(qpow)).reduce_mod(n);
        qpow = mul_mod(qpow, q as i64, n);
    }
    acc
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftChecks {
    pub kernel: bool,
    pub reduction: bool,
    pub regular: bool,
}

/// A lift together with checks recomputed from the tuple itself.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftResult {
    tuple: CrysCharTuple,
    vbar: Vec<i64>,
    checks: LiftChecks,
}

impl LiftResult {
    pub fn verify(datum: &RootDatum, pair: &TameInertialPair, tuple: CrysCharTuple) -> Result<Self, LiftError> {
        let checks = LiftChecks {
            kernel: kernel_membership(pair.weyl(), &tuple),
            reduction: reduction(&tuple)? == pair.vbar(),
            regular: tuple.slots.iter().all(|s| datum.is_regular_cochar(s)),
        };
        Ok(LiftResult { tuple, vbar: pair.vbar().to_vec(), checks })
    }

    pub fn tuple(&self) -> &CrysCharTuple {
        &self.tuple
    }

    pub fn checks(&self) -> &LiftChecks {
        &self.checks
    }

    pub fn vbar(&self) -> &[i64] {
        &self.vbar
    }

    pub fn kernel_checked(&self) -> bool {
        self.checks.kernel
    }

    pub fn reduction_checked(&self) -> bool {
        self.checks.reduction
    }

    pub fn regular(&self) -> bool {
        self.checks.regular
    }
}

impl Serialize for LiftResult {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("LiftResult", 4)?;
        st.serialize_field("checks", &self.checks)?;
        st.serialize_field("f", &self.tuple.f)?;
        st.serialize_field("q", &self.tuple.q)?;
        st.serialize_field("slots", &self.tuple.slots)?;
        st.end()
    }
}

fn require_lift_hypothesis(pair: &TameInertialPair) -> Result<(), LiftError> {
    let report = validate_pair(pair);
    if !report.valid {
        return Err(PairError::Incompatible {
            modulus: pair.modulus(),
            coordinates: report.failures.iter().map(|f| f.coordinate).collect(),
        }
        .into());
    }
    if !pair.weyl().pow(u64::from(pair.f())).is_identity() {
        return Err(LiftError::Hypothesis { f: pair.f() });
    }
    Ok(())
}

/// Solves `Ξ̄ x ≡ v̄ (mod N)` with the canonical particular solution, places
/// `x` in slot 0 and returns `Ξ` of that tuple. Slot `j` of the result is
/// `w^{f-1-j} x`.
pub fn lift_inertia(datum: &RootDatum, pair: &TameInertialPair) -> Result<LiftResult, LiftError> {
    require_lift_hypothesis(pair)?;
    let n = pair.modulus();
    let xb = xi_bar(pair.weyl(), pair.q(), pair.f(), n);
    let x = lattice::solve_mod(&xb, pair.vbar(), n)
        .ok_or_else(|| LiftError::Internal(format!("Ξ̄ x ≡ {:?} has no solution mod {n}", pair.vbar())))?;
    let mut seed = CrysCharTuple::zero(pair.q(), pair.f(), pair.rank());
    seed.slots[0] = Cochar(x);
    let tuple = xi_operator(pair.weyl(), &seed)?;
    let result = LiftResult::verify(datum, pair, tuple)?;
    if !(result.checks.kernel && result.checks.reduction) {
        return Err(LiftError::Internal("constructed lift failed re-verification".into()));
    }
    Ok(result)
}

pub fn check_lift_hypothesis(pair: &TameInertialPair) -> Result<(), LiftError> {
    require_lift_hypothesis(pair)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TrickMode {
    /// Enumerate `(Z/N)^r`, failing when `N^r` exceeds the limit.
    Exhaustive { limit: u128 },
    /// Compare subgroup orders from Smith normal forms.
    Orders,
    /// Exhaustive up to the limit, orders beyond it.
    Auto { limit: u128 },
}

impl Default for TrickMode {
    fn default() -> Self {
        TrickMode::Auto { limit: 10_000_000 }
    }
}

/// Checks `ker(q - w) = im(Ξ̄)` inside `(Z/N)^r`.
pub fn simple_trick_check(
    datum: &RootDatum,
    q: u64,
    f: u32,
    w: &WeylElement,
    mode: TrickMode,
) -> Result<bool, LiftError> {
    let n = tame_reps::modulus(q, f)?;
    let r = datum.rank();
    if w.rank() != r {
        return Err(LiftError::Shape(format!("Weyl element of rank {} on datum of rank {r}", w.rank())));
    }
    if !w.pow(u64::from(f)).is_identity() {
        return Err(LiftError::Hypothesis { f });
    }
    let size = (n as u128).checked_pow(r as u32).unwrap_or(u128::MAX);
    let b = IntMatrix::identity(r).scale(q as i64).sub(w.matrix()).reduce_mod(n);
    let a = xi_bar(w, q, f, n);
    let exhaustive = match mode {
        TrickMode::Exhaustive { limit } if size > limit => return Err(LiftError::GuardExceeded { size, limit }),
        TrickMode::Exhaustive { .. } => true,
        TrickMode::Orders => false,
        TrickMode::Auto { limit } => size <= limit,
    };
    if exhaustive {
        Ok(exhaustive_trick(&a, &b, n, r, size as usize))
    } else {
        let contained = (&b * &a).reduce_mod(n) == IntMatrix::zeros(r, r);
        Ok(contained && lattice::kernel_mod(&b, n).order() == lattice::image_order_mod(&a, n))
    }
}

fn exhaustive_trick(a: &IntMatrix, b: &IntMatrix, n: i64, r: usize, size: usize) -> bool {
    let index = |v: &[i64]| v.iter().rev().fold(0usize, |acc, &x| acc * n as usize + x.rem_euclid(n) as usize);
    let mut in_kernel = vec![false; size];
    let mut in_image = vec![false; size];
    let mut x = vec![0i64; r];
    for (idx, member) in in_kernel.iter_mut().enumerate() {
        let mut t = idx;
        for e in x.iter_mut() {
            *e = (t % n as usize) as i64;
            t /= n as usize;
        }
        *member = b.mul_vec(&x).iter().all(|y| y.rem_euclid(n) == 0);
        in_image[index(&a.mul_vec(&x))] = true;
    }
    in_kernel == in_image
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::root_datum::Preset;
    use proptest::prelude::*;

    fn gl(n: usize) -> RootDatum {
        RootDatum::preset(Preset::GL(n)).unwrap()
    }

    fn tuple(q: u64, slots: &[&[i64]]) -> CrysCharTuple {
        CrysCharTuple::new(q, slots.len() as u32, slots.iter().map(|s| Cochar(s.to_vec())).collect()).unwrap()
    }

    #[test]
    fn shift_examples() {
        assert_eq!(frobenius_shift(&tuple(3, &[&[1, 0], &[0, 1]])), tuple(3, &[&[0, 1], &[1, 0]]));
        assert_eq!(frobenius_shift(&tuple(3, &[&[1], &[2], &[3]])), tuple(3, &[&[3], &[1], &[2]]));
        assert_eq!(frobenius_shift(&tuple(3, &[&[4, 5]])), tuple(3, &[&[4, 5]]));
    }

    #[test]
    fn weyl_act_examples() {
        let d = gl(2);
        let s = d.weyl_from_word(&[0]).unwrap();
        let v = tuple(3, &[&[1, 0], &[2, 3]]);
        assert_eq!(weyl_act(&s, &v).unwrap(), tuple(3, &[&[0, 1], &[3, 2]]));
        assert_eq!(weyl_act(&WeylElement::identity(2), &v).unwrap(), v);
        assert_eq!(weyl_act(&s, &weyl_act(&s, &v).unwrap()).unwrap(), v);
        assert!(weyl_act(&WeylElement::identity(3), &v).is_err());
    }

    #[test]
    fn xi_examples() {
        let d = gl(2);
        let s = d.weyl_from_word(&[0]).unwrap();
        let v = tuple(3, &[&[1, 0], &[0, 0]]);
        assert_eq!(xi_operator(&s, &v).unwrap(), tuple(3, &[&[0, 1], &[1, 0]]));
        let u = tuple(3, &[&[2, 5], &[7, 1]]);
        let id = WeylElement::identity(2);
        assert_eq!(xi_operator(&id, &u).unwrap(), frobenius_shift(&u).add(&u).unwrap());
        let single = tuple(3, &[&[2, 5]]);
        assert_eq!(xi_operator(&s, &single).unwrap(), single);
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(reduction(&tuple(3, &[&[1, 0], &[0, 1]])).unwrap(), vec![1, 3]);
        assert_eq!(reduction(&CrysCharTuple::zero(3, 2, 2)).unwrap(), vec![0, 0]);
        assert_eq!(reduction(&tuple(3, &[&[0, 0], &[8, 0]])).unwrap(), vec![0, 0]);
        assert_eq!(reduction(&tuple(3, &[&[-1, 0], &[0, 0]])).unwrap(), vec![7, 0]);
    }

    #[test]
    fn kernel_examples() {
        let s = gl(2).weyl_from_word(&[0]).unwrap();
        assert!(kernel_membership(&s, &tuple(3, &[&[1, 0], &[0, 1]])));
        assert!(!kernel_membership(&s, &tuple(3, &[&[1, 0], &[1, 0]])));
        assert!(kernel_membership(&s, &CrysCharTuple::zero(3, 2, 2)));
    }

    #[test]
    fn lift_examples() {
        let d = gl(2);
        let s = d.weyl_from_word(&[0]).unwrap();
        let p = TameInertialPair::new(&d, 3, 2, vec![1, 3], s.clone()).unwrap();
        let r = lift_inertia(&d, &p).unwrap();
        assert!(r.kernel_checked() && r.reduction_checked());
        // every solution of Ξ̄x ≡ (1,3) is (a, 1 - 3a) mod 8
        let x = r.tuple().slot(1);
        assert_eq!((x[1] + 3 * x[0]).rem_euclid(8), 1);
        // the canonical particular solution is x = (0, 1)
        assert_eq!(r.tuple(), &tuple(3, &[&[1, 0], &[0, 1]]));

        let p0 = TameInertialPair::new(&d, 3, 2, vec![0, 0], s.clone()).unwrap();
        assert!(lift_inertia(&d, &p0).unwrap().tuple().is_zero());

        let id = WeylElement::identity(2);
        let p1 = TameInertialPair::new(&d, 3, 1, vec![1, 0], id).unwrap();
        let r1 = lift_inertia(&d, &p1).unwrap();
        assert_eq!(r1.tuple(), &tuple(3, &[&[1, 0]]));
    }

    #[test]
    fn lift_rejects_bad_hypotheses() {
        let d = gl(3);
        let c = d.weyl_from_word(&[0, 1]).unwrap();
        let k = tame_reps::compatibility_kernel(&c, 2, 2).unwrap();
        let p = TameInertialPair::new(&d, 2, 2, k.combine(&[1]), c).unwrap();
        assert_eq!(lift_inertia(&d, &p), Err(LiftError::Hypothesis { f: 2 }));
        let d2 = gl(2);
        let s = d2.weyl_from_word(&[0]).unwrap();
        let bad = TameInertialPair::new(&d2, 3, 2, vec![1, 5], s).unwrap();
        assert!(matches!(lift_inertia(&d2, &bad), Err(LiftError::Pair(PairError::Incompatible { .. }))));
    }

    #[test]
    fn trick_examples() {
        let d = gl(2);
        let s = d.weyl_from_word(&[0]).unwrap();
        let id = WeylElement::identity(2);
        for mode in [TrickMode::Exhaustive { limit: 100 }, TrickMode::Orders] {
            assert_eq!(simple_trick_check(&d, 3, 2, &s, mode), Ok(true));
            assert_eq!(simple_trick_check(&d, 3, 2, &id, mode), Ok(true));
        }
        let d3 = gl(3);
        let c = d3.weyl_from_word(&[0, 1]).unwrap();
        assert_eq!(simple_trick_check(&d3, 2, 3, &c, TrickMode::Orders), Ok(true));
        assert_eq!(simple_trick_check(&d3, 2, 3, &c, TrickMode::Exhaustive { limit: 1000 }), Ok(true));
        assert!(matches!(
            simple_trick_check(&d3, 2, 3, &c, TrickMode::Exhaustive { limit: 10 }),
            Err(LiftError::GuardExceeded { size: 343, limit: 10 })
        ));
    }

    #[test]
    fn trick_detects_a_wrong_operator() {
        // replacing Ξ̄ by the identity makes the image everything
        let d = gl(2);
        let s = d.weyl_from_word(&[0]).unwrap();
        let b = IntMatrix::identity(2).scale(3).sub(s.matrix()).reduce_mod(8);
        assert!(!exhaustive_trick(&IntMatrix::identity(2), &b, 8, 2, 64));
    }

    fn preset_strategy() -> impl Strategy<Value = Preset> {
        prop_oneof![
            Just(Preset::GL(2)),
            Just(Preset::GL(3)),
            Just(Preset::SL(3)),
            Just(Preset::Sp(4)),
            Just(Preset::SO(5)),
            Just(Preset::G2),
        ]
    }

    fn pick(datum: &RootDatum, idx: usize) -> WeylElement {
        let w = datum.weyl_group();
        w[idx % w.len()].clone()
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn annihilation(preset in preset_strategy(), f in 1u32..=3, widx in 0usize..1000,
                        entries in prop::collection::vec(-20i64..20, 18)) {
            let d = RootDatum::preset(preset).unwrap();
            let w = pick(&d, widx);
            prop_assume!(w.pow(u64::from(f)).is_identity());
            let r = d.rank();
            let slots = (0..f as usize).map(|j| Cochar(entries[j * r..(j + 1) * r].to_vec())).collect();
            let v = CrysCharTuple::new(3, f, slots).unwrap();
            prop_assert!(kernel_membership(&w, &xi_operator(&w, &v).unwrap()));
        }

        #[test]
        fn reduction_equivariance(preset in preset_strategy(), q in prop::sample::select(vec![2u64, 3, 4, 5]),
                                  f in 1u32..=3, widx in 0usize..1000,
                                  entries in prop::collection::vec(-50i64..50, 18)) {
            let d = RootDatum::preset(preset).unwrap();
            let w = pick(&d, widx);
            let r = d.rank();
            let n = tame_reps::modulus(q, f).unwrap();
            let slots = (0..f as usize).map(|j| Cochar(entries[j * r..(j + 1) * r].to_vec())).collect();
            let v = CrysCharTuple::new(q, f, slots).unwrap();
            let red = reduction(&v).unwrap();
            let shifted = reduction(&frobenius_shift(&v)).unwrap();
            prop_assert_eq!(shifted, red.iter().map(|&x| mul_mod(x, q as i64, n)).collect::<Vec<_>>());
            let acted = reduction(&weyl_act(&w, &v).unwrap()).unwrap();
            prop_assert_eq!(acted, w.apply(&red).iter().map(|x| x.rem_euclid(n)).collect::<Vec<_>>());
        }

        #[test]
        fn lift_soundness(preset in preset_strategy(), q in prop::sample::select(vec![2u64, 3, 4, 5, 7]),
                          f in 1u32..=3, widx in 0usize..1000, seed in any::<u64>()) {
            use rand::SeedableRng;
            let d = RootDatum::preset(preset).unwrap();
            let w = pick(&d, widx);
            prop_assume!(w.pow(u64::from(f)).is_identity());
            let k = tame_reps::compatibility_kernel(&w, q, f).unwrap();
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
            let v = tame_reps::sample_compatible(&k, &mut rng);
            let p = TameInertialPair::new(&d, q, f, v.clone(), w.clone()).unwrap();
            let r = lift_inertia(&d, &p).unwrap();
            prop_assert!(kernel_membership(&w, r.tuple()));
            prop_assert_eq!(reduction(r.tuple()).unwrap(), v);
        }

        #[test]
        fn exactness_modes_agree(preset in preset_strategy(), q in prop::sample::select(vec![2u64, 3, 4, 5]),
                                 f in 1u32..=2, widx in 0usize..1000) {
            let d = RootDatum::preset(preset).unwrap();
            let w = pick(&d, widx);
            prop_assume!(w.pow(u64::from(f)).is_identity());
            let by_orders = simple_trick_check(&d, q, f, &w, TrickMode::Orders).unwrap();
            prop_assert!(by_orders);
            let auto = simple_trick_check(&d, q, f, &w, TrickMode::Auto { limit: 20_000 }).unwrap();
            prop_assert!(auto);
        }
    }
}

//! Which prime powers carry a zero coefficient, and where a form first
//! vanishes.
//!
//! Away from the level, write `1 - a_p X + p^{k-1} X² = (1 - αX)(1 - βX)`.
//! Then `a(p^r) = (α^{r+1} - β^{r+1}) / (α - β)` vanishes exactly when
//! `ζ = α/β` satisfies `ζ^{r+1} = 1`. The ratio is pinned down by the
//! rational invariant
//!
//! ```text
//! t = a_p² / p^{k-1} = ζ + ζ⁻¹ + 2
//! ```
//!
//! and only `t ∈ {0, 1, 2, 3}` makes `ζ` a root of unity other than 1. Those
//! are decided by comparing `a_p²` with `t · p^{k-1}` in exact integers, so no
//! algebraic numbers are ever formed.

use num_bigint::BigInt;
use num_traits::{Pow, Signed, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::forms::{delta_eta, delta_residues, FormSpec};
use crate::hecke::{qexp_from_primes, CoefficientOracle};
use crate::series::{QSeries, ResidueSeries, LANE_PRIMES};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VanishKind {
    /// `a_p = 0`: zeros exactly at odd `r`.
    ApZero,
    /// `ζ` of order 3, 4 or 6: zeros exactly at `r ≡ -1 (mod order)`.
    PeriodicZeros { order: u32 },
    /// `a(p^r) ≠ 0` for every `r >= 1`.
    NeverZero,
    /// `p | N`, so `a(p^r) = a_p^r`: zero for all `r >= 1` iff `a_p = 0`.
    BadPrimePower { ap_zero: bool },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VanishClass {
    pub kind: VanishKind,
    /// Smallest `r >= 1` with `a(p^r) = 0`.
    pub witness: Option<u32>,
}

/// Classifies the zero set of `r -> a(p^r)`.
///
/// Purely algebraic: `a_p` need not satisfy the Ramanujan bound.
pub fn classify(ap: &BigInt, p: u64, k: u32, p_divides_level: bool) -> Result<VanishClass> {
    if k % 2 == 1 {
        return Err(Error::OddWeight(k));
    }
    if k < 2 {
        return Err(Error::WeightTooSmall { got: k, min: 2 });
    }
    if !arith::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p_divides_level {
        let ap_zero = ap.is_zero();
        return Ok(VanishClass {
            kind: VanishKind::BadPrimePower { ap_zero },
            witness: ap_zero.then_some(1),
        });
    }
    if ap.is_zero() {
        return Ok(VanishClass {
            kind: VanishKind::ApZero,
            witness: Some(1),
        });
    }
    let square = ap * ap;
    let norm = BigInt::from(p).pow(k - 1);
    let order = if square == norm {
        // unreachable for integral a_p and even k
        Some(3)
    } else if square == &norm * 2u32 {
        Some(4)
    } else if square == &norm * 3u32 {
        Some(6)
    } else {
        None
    };
    Ok(match order {
        Some(order) => VanishClass {
            kind: VanishKind::PeriodicZeros { order },
            witness: Some(order - 1),
        },
        None => VanishClass {
            kind: VanishKind::NeverZero,
            witness: None,
        },
    })
}

/// Exponents `1 <= r <= max_r` with `a(p^r) = 0`.
pub fn zeros_up_to(vc: &VanishClass, max_r: u32) -> Vec<u32> {
    match vc.kind {
        VanishKind::ApZero => (1..=max_r).step_by(2).collect(),
        VanishKind::PeriodicZeros { order } => (order - 1..=max_r).step_by(order as usize).collect(),
        VanishKind::NeverZero | VanishKind::BadPrimePower { ap_zero: false } => Vec::new(),
        VanishKind::BadPrimePower { ap_zero: true } => (1..=max_r).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MfFactor {
    pub prime: u64,
    pub divides_level: bool,
    pub eigenvalue: BigInt,
    /// `a_p = ±p^{k/2}`
    pub exceptional: bool,
    pub kept: bool,
}

/// Smallest admissible modulus `M_f | 6`, with the reason for each of 2, 3.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MfResult {
    pub value: u64,
    pub factors_kept: Vec<u64>,
    pub justification: Vec<MfFactor>,
}

/// `M_f` for a form with trivial character and integral coefficients: keep
/// `p ∈ {2, 3}` iff `p ∤ N` and `a_p = ±p^{k/2}`.
pub fn compute_mf(level: u64, a2: &BigInt, a3: &BigInt, k: u32) -> MfResult {
    let mut value = 1;
    let mut factors_kept = Vec::new();
    let mut justification = Vec::new();
    for (p, ap) in [(2u64, a2), (3u64, a3)] {
        let divides_level = level % p == 0;
        let exceptional = ap.abs() == BigInt::from(p).pow(k / 2);
        let kept = !divides_level && exceptional;
        if kept {
            value *= p;
            factors_kept.push(p);
        }
        justification.push(MfFactor {
            prime: p,
            divides_level,
            eigenvalue: ap.clone(),
            exceptional,
            kept,
        });
    }
    MfResult {
        value,
        factors_kept,
        justification,
    }
}

/// Anything that can hand out coefficients of a form for scanning.
pub trait CoefficientSource {
    fn form(&self) -> &FormSpec;

    /// Optional residue lanes covering `1..=bound`; a nonzero residue
    /// certifies a nonzero coefficient.
    fn residue_lanes(&self, _bound: usize) -> Result<Vec<ResidueSeries>> {
        Ok(Vec::new())
    }

    /// Exact coefficients `0..=bound`.
    fn exact(&self, bound: usize) -> Result<QSeries>;
}

/// A precomputed exact series.
#[derive(Clone, Debug)]
pub struct SeriesSource {
    pub spec: FormSpec,
    pub series: QSeries,
}

impl CoefficientSource for SeriesSource {
    fn form(&self) -> &FormSpec {
        &self.spec
    }

    fn exact(&self, bound: usize) -> Result<QSeries> {
        self.series.truncate(bound)
    }
}

impl CoefficientSource for CoefficientOracle {
    fn form(&self) -> &FormSpec {
        self.spec()
    }

    fn exact(&self, bound: usize) -> Result<QSeries> {
        qexp_from_primes(self.primes(), bound)
    }
}

/// `Δ` with residue lanes from the Jacobi route and exact fallback from the
/// pentagonal route.
#[derive(Clone, Debug)]
pub struct DeltaSource {
    spec: FormSpec,
    moduli: Vec<u64>,
}

impl DeltaSource {
    pub fn new() -> Self {
        Self::with_moduli(LANE_PRIMES.to_vec())
    }

    pub fn with_moduli(moduli: Vec<u64>) -> Self {
        DeltaSource {
            spec: FormSpec::delta(),
            moduli,
        }
    }
}

impl Default for DeltaSource {
    fn default() -> Self {
        Self::new()
    }
}

impl CoefficientSource for DeltaSource {
    fn form(&self) -> &FormSpec {
        &self.spec
    }

    fn residue_lanes(&self, bound: usize) -> Result<Vec<ResidueSeries>> {
        self.moduli.iter().map(|&m| delta_residues(bound, m)).collect()
    }

    fn exact(&self, bound: usize) -> Result<QSeries> {
        delta_eta(bound)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Certification {
    /// Nonzero residue modulo this lane prime.
    Residue { modulus: u64 },
    /// Decided by the exact coefficient (zero or not).
    Exact,
}

/// Result of scanning `a(1), ..., a(bound)` for zeros.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub form: FormSpec,
    pub bound: usize,
    /// Every `n <= bound` with `a(n) = 0`, increasing.
    pub zeros: Vec<usize>,
    pub first_zero: Option<usize>,
    pub first_zero_is_prime: Option<bool>,
    pub coprime_to: Option<u64>,
    pub first_zero_coprime: Option<usize>,
    pub first_zero_coprime_is_prime: Option<bool>,
    /// Zeros explained by a prime `p | N` with `a_p = 0`.
    pub bad_prime_zeros: Vec<usize>,
    /// Method used for index `n` at position `n - 1`.
    pub certification: Vec<Certification>,
}

impl ScanReport {
    /// A first zero coprime to `M_f` must be prime. `false` signals a bug
    /// (or a `coprime_to` that is not an admissible `M_f`).
    pub fn guarantee_holds(&self) -> bool {
        self.first_zero_coprime_is_prime.unwrap_or(true)
    }

    pub fn residue_certified(&self) -> usize {
        self.certification
            .iter()
            .filter(|c| matches!(c, Certification::Residue { .. }))
            .count()
    }

    pub fn exact_checked(&self) -> usize {
        self.bound - self.residue_certified()
    }
}

/// Scans `a(1..=bound)` for zeros, certifying nonzero coefficients through
/// residue lanes where available and falling back to exact coefficients.
pub fn first_vanishing(
    source: &dyn CoefficientSource,
    bound: usize,
    coprime_to: Option<u64>,
) -> Result<ScanReport> {
    if bound == 0 {
        return Err(Error::ZeroBound);
    }
    let lanes = source.residue_lanes(bound)?;
    for lane in &lanes {
        if lane.trunc_bound() < bound {
            return Err(Error::InsufficientCoverage {
                index: bound,
                bound: lane.trunc_bound(),
            });
        }
    }
    let mut certification = Vec::with_capacity(bound);
    let mut pending = Vec::new();
    for n in 1..=bound {
        match lanes.iter().find(|l| l.coeffs()[n] != 0) {
            Some(l) => certification.push(Certification::Residue { modulus: l.modulus() }),
            None => {
                certification.push(Certification::Exact);
                pending.push(n);
            }
        }
    }
    let mut zeros = Vec::new();
    if let Some(&last) = pending.last() {
        let exact = source.exact(last.max(1))?;
        zeros.extend(pending.into_iter().filter(|&n| exact.coeffs()[n].is_zero()));
    }

    let is_prime = |n: usize| arith::is_prime(n as u64);
    let first_zero = zeros.first().copied();
    let first_zero_coprime = coprime_to
        .and_then(|m| zeros.iter().copied().find(|&n| arith::gcd(n as u64, m) == 1));
    let level = source.form().level();
    let bad_prime_zeros = zeros
        .iter()
        .copied()
        .filter(|&n| {
            arith::factorize(arith::gcd(n as u64, level))
                .iter()
                .any(|(p, _)| zeros.binary_search(&(*p as usize)).is_ok())
        })
        .collect();
    Ok(ScanReport {
        form: source.form().clone(),
        bound,
        first_zero,
        first_zero_is_prime: first_zero.map(is_prime),
        coprime_to,
        first_zero_coprime,
        first_zero_coprime_is_prime: first_zero_coprime.map(is_prime),
        zeros,
        bad_prime_zeros,
        certification,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ec::{prime_table, WeierstrassCurve};
    use crate::forms::FormSource;
    use num_traits::One;

    fn b(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Zero exponents of the Hecke recurrence, computed directly.
    fn recurrence_zeros(ap: &BigInt, p: u64, k: u32, max_r: u32) -> Vec<u32> {
        let norm = BigInt::from(p).pow(k - 1);
        let (mut prev, mut cur) = (BigInt::one(), ap.clone());
        let mut out = Vec::new();
        for r in 1..=max_r {
            if cur.is_zero() {
                out.push(r);
            }
            let next = ap * &cur - &norm * &prev;
            prev = std::mem::replace(&mut cur, next);
        }
        out
    }

    fn curve_oracle(label: &str, bound: u64) -> CoefficientOracle {
        let c = WeierstrassCurve::fixture(label).unwrap();
        let spec =
            FormSpec::new(2, c.level().unwrap(), label, FormSource::EllipticCurve(c.clone())).unwrap();
        CoefficientOracle::new(spec, prime_table(&c, bound).unwrap())
    }

    #[test]
    fn classify_examples() {
        let c = classify(&b(-2), 2, 2, false).unwrap();
        assert_eq!(c.kind, VanishKind::PeriodicZeros { order: 4 });
        assert_eq!(c.witness, Some(3));
        let c = classify(&b(-3), 3, 2, false).unwrap();
        assert_eq!(c.kind, VanishKind::PeriodicZeros { order: 6 });
        assert_eq!(c.witness, Some(5));
        let c = classify(&b(-24), 2, 12, false).unwrap();
        assert_eq!(c, VanishClass { kind: VanishKind::NeverZero, witness: None });
        assert!(recurrence_zeros(&b(-24), 2, 12, 100).is_empty());
        let c = classify(&b(0), 5, 2, false).unwrap();
        assert_eq!(c.kind, VanishKind::ApZero);
        assert_eq!(zeros_up_to(&c, 6), vec![1, 3, 5]);
    }

    #[test]
    fn classify_errors_and_bad_primes() {
        assert!(matches!(classify(&b(1), 2, 3, false), Err(Error::OddWeight(3))));
        assert!(matches!(classify(&b(1), 4, 2, false), Err(Error::NotPrime(4))));
        let c = classify(&b(0), 37, 2, true).unwrap();
        assert_eq!(c.kind, VanishKind::BadPrimePower { ap_zero: true });
        assert_eq!(zeros_up_to(&c, 4), vec![1, 2, 3, 4]);
        let c = classify(&b(-1), 37, 2, true).unwrap();
        assert_eq!(c.witness, None);
        assert!(zeros_up_to(&c, 40).is_empty());
    }

    #[test]
    fn order_three_unreachable() {
        // p^{k-1} is never a square for even k, so a_p² = p^{k-1} has no
        // integral solution
        for p in [2u64, 3, 5, 7, 11, 13] {
            for k in (2..=16).step_by(2) {
                let norm: BigInt = BigInt::from(p).pow(k - 1);
                let root = norm.sqrt();
                assert_ne!(&root * &root, norm);
                let c = classify(&root, p, k, false).unwrap();
                assert_ne!(c.kind, VanishKind::PeriodicZeros { order: 3 });
            }
        }
    }

    #[test]
    fn zeros_up_to_examples() {
        let c = VanishClass { kind: VanishKind::PeriodicZeros { order: 4 }, witness: Some(3) };
        assert_eq!(zeros_up_to(&c, 12), vec![3, 7, 11]);
        assert_eq!(recurrence_zeros(&b(-4), 2, 4, 12), vec![3, 7, 11]);
        let c = VanishClass { kind: VanishKind::NeverZero, witness: None };
        assert!(zeros_up_to(&c, 1000).is_empty());
        let c = VanishClass { kind: VanishKind::PeriodicZeros { order: 3 }, witness: Some(2) };
        assert_eq!(zeros_up_to(&c, 9), vec![2, 5, 8]);
    }

    #[test]
    fn sign_symmetry() {
        for p in [2u64, 3, 5, 7] {
            for k in (2..=8).step_by(2) {
                for ap in -200i64..=200 {
                    assert_eq!(
                        classify(&b(ap), p, k, false).unwrap(),
                        classify(&b(-ap), p, k, false).unwrap()
                    );
                }
            }
        }
    }

    #[test]
    fn mf_examples() {
        let r = compute_mf(37, &b(-2), &b(-3), 2);
        assert_eq!((r.value, r.factors_kept.clone()), (6, vec![2, 3]));
        let r = compute_mf(53, &b(-1), &b(-3), 2);
        assert_eq!((r.value, r.factors_kept.clone()), (3, vec![3]));
        assert!(!r.justification[0].exceptional);
        let r = compute_mf(1, &b(-24), &b(252), 12);
        assert_eq!(r.value, 1);
        // exceptional a_2 but 2 | N
        let r = compute_mf(2, &b(2), &b(0), 2);
        assert_eq!(r.value, 1);
        assert!(r.justification[0].divides_level && r.justification[0].exceptional);
        let r = compute_mf(35, &b(16), &b(-81), 8);
        assert_eq!(r.value, 6);
    }

    #[test]
    fn scan_37a1() {
        let o = curve_oracle("37a1", 100);
        let r = first_vanishing(&o, 100, None).unwrap();
        assert_eq!(r.first_zero, Some(8));
        assert_eq!(r.first_zero_is_prime, Some(false));
        assert_eq!(r.exact_checked(), 100);
        let r = first_vanishing(&o, 100, Some(6)).unwrap();
        assert!(r.guarantee_holds());
        if let Some(n) = r.first_zero_coprime {
            assert!(arith::is_prime(n as u64));
        }
    }

    #[test]
    fn scan_53a1_lists_243() {
        let o = curve_oracle("53a1", 300);
        let r = first_vanishing(&o, 300, Some(3)).unwrap();
        assert_eq!(r.first_zero, Some(5));
        assert!(r.zeros.contains(&243));
        assert!(r.guarantee_holds());
        assert!(r.bad_prime_zeros.is_empty());
    }

    #[test]
    fn delta_residue_fallback() {
        // mod 3 many τ(n) vanish, forcing exact checks
        let r = first_vanishing(&DeltaSource::with_moduli(vec![3]), 300, Some(1)).unwrap();
        assert_eq!(r.first_zero, None);
        assert!(r.exact_checked() > 0 && r.residue_certified() > 0);
        let full = first_vanishing(&DeltaSource::new(), 300, Some(1)).unwrap();
        assert_eq!(full.exact_checked(), 0);
        assert_eq!(full.zeros, r.zeros);
    }

    #[test]
    fn bad_prime_zero_flagged() {
        // a(2) = 0 with 2 | N: every even index vanishes
        let spec = FormSpec::new(2, 2, "toy", FormSource::DeltaEta).unwrap();
        let series = QSeries::from_i64s(&[0, 1, 0, 5, 0, 7]).unwrap();
        let src = SeriesSource { spec, series };
        let r = first_vanishing(&src, 5, None).unwrap();
        assert_eq!(r.zeros, vec![2, 4]);
        assert_eq!(r.bad_prime_zeros, vec![2, 4]);
    }
}

//! Trace of Frobenius of rational elliptic curves by point counting.
//!
//! Models are assumed minimal at every prime, so a prime is bad exactly when
//! it divides the discriminant of the given model.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::arith::{self, pow_mod};
use crate::error::{Error, Result};
use crate::hecke::{PrimeEigenvalues, PrimeEntry};

/// Long Weierstrass model `y² + a1·xy + a3·y = x³ + a2·x² + a4·x + a6`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeierstrassCurve {
    coeffs: [i64; 5],
    label: String,
    conductor: Option<u64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionType {
    Good,
    SplitMultiplicative,
    NonsplitMultiplicative,
    Additive,
}

impl WeierstrassCurve {
    pub fn new(coeffs: [i64; 5], label: impl Into<String>) -> Result<Self> {
        let curve = WeierstrassCurve {
            coeffs,
            label: label.into(),
            conductor: None,
        };
        if curve.discriminant().is_zero() {
            return Err(Error::SingularCurve(curve.coefficient_string()));
        }
        Ok(curve)
    }

    /// Named fixtures: `37a1` (`y² + y = x³ - x`) and `53a1`
    /// (`y² + xy + y = x³ - x²`).
    pub fn fixture(label: &str) -> Option<Self> {
        let (coeffs, conductor) = match label {
            "37a1" => ([0, 0, 1, -1, 0], 37),
            "53a1" => ([1, -1, 1, 0, 0], 53),
            _ => return None,
        };
        let mut curve = Self::new(coeffs, label).expect("fixture is nonsingular");
        curve.conductor = Some(conductor);
        Some(curve)
    }

    /// Parses `a1,a2,a3,a4,a6`.
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        let bad = || Error::SingularCurve(format!("cannot parse `{s}` as a1,a2,a3,a4,a6"));
        if parts.len() != 5 {
            return Err(bad());
        }
        let mut coeffs = [0i64; 5];
        for (c, p) in coeffs.iter_mut().zip(&parts) {
            *c = p.parse().map_err(|_| bad())?;
        }
        Self::new(coeffs, format!("[{}]", parts.join(",")))
    }

    pub fn coeffs(&self) -> [i64; 5] {
        self.coeffs
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn coefficient_string(&self) -> String {
        self.coeffs.map(|c| c.to_string()).join(",")
    }

    /// `(b2, b4, b6, b8)`.
    pub fn b_invariants(&self) -> [BigInt; 4] {
        let [a1, a2, a3, a4, a6] = self.coeffs.map(BigInt::from);
        let b2 = &a1 * &a1 + 4 * &a2;
        let b4 = 2 * &a4 + &a1 * &a3;
        let b6 = &a3 * &a3 + 4 * &a6;
        let b8 = &a1 * &a1 * &a6 + 4 * &a2 * &a6 - &a1 * &a3 * &a4 + &a2 * &a3 * &a3 - &a4 * &a4;
        [b2, b4, b6, b8]
    }

    /// `(c4, c6)`.
    pub fn c_invariants(&self) -> [BigInt; 2] {
        let [b2, b4, b6, _] = self.b_invariants();
        let c4 = &b2 * &b2 - 24 * &b4;
        let c6 = -(&b2 * &b2 * &b2) + 36 * &b2 * &b4 - 216 * &b6;
        [c4, c6]
    }

    pub fn discriminant(&self) -> BigInt {
        let [b2, b4, b6, b8] = self.b_invariants();
        -(&b2 * &b2 * &b8) - 8 * &b4 * &b4 * &b4 - 27 * &b6 * &b6 + 9 * &b2 * &b4 * &b6
    }

    pub fn is_bad_prime(&self, p: u64) -> bool {
        (self.discriminant() % BigInt::from(p)).is_zero()
    }

    /// The conductor for fixtures; otherwise the radical of the discriminant,
    /// which has the same prime support as the conductor of a minimal model.
    pub fn level(&self) -> Result<u64> {
        if let Some(n) = self.conductor {
            return Ok(n);
        }
        let mut d = self.discriminant().abs();
        let mut radical = BigInt::from(1);
        let mut p = BigInt::from(2);
        let limit = BigInt::from(1_000_000);
        while &p * &p <= d && p <= limit {
            if (&d % &p).is_zero() {
                radical *= &p;
                while (&d % &p).is_zero() {
                    d /= &p;
                }
            }
            p += 1;
        }
        if d > BigInt::from(1) {
            // cofactor beyond the trial-division limit is taken as prime
            radical *= d;
        }
        radical
            .to_u64()
            .ok_or_else(|| Error::SingularCurve(format!("level of {} exceeds u64", self.label)))
    }

    fn reduced(&self, p: u64) -> [u64; 5] {
        self.coeffs.map(|c| c.rem_euclid(p as i64) as u64)
    }
}

impl fmt::Display for WeierstrassCurve {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]", self.label, self.coefficient_string())
    }
}

/// Point-counting strategies. Each works for any prime where it is defined
/// and returns projective counts including the point at infinity.
pub mod count {
    use super::*;

    /// `F(x, y)` and its partial derivatives mod `p`, all reduced.
    fn eval(a: &[u64; 5], p: u64, x: u64, y: u64) -> (u64, u64, u64) {
        let [a1, a2, a3, a4, a6] = a.map(|c| c as u128);
        let (x, y, p) = (x as u128, y as u128, p as u128);
        let lhs = (y * y + a1 * x % p * y + a3 * y) % p;
        let rhs = (x * x % p * x + a2 * x % p * x + a4 * x + a6) % p;
        let f = (lhs + p - rhs) % p;
        // F_x = a1·y - 3x² - 2a2·x - a4
        let fx = (a1 * y + 3 * p * p - (3 * x * x % p + 2 * a2 * x % p + a4) % p) % p;
        // F_y = 2y + a1·x + a3
        let fy = (2 * y + a1 * x + a3) % p;
        (f as u64, fx as u64, fy as u64)
    }

    /// Every `(x, y) ∈ F_p²`, O(p²).
    pub fn enumeration(curve: &WeierstrassCurve, p: u64) -> u64 {
        let a = curve.reduced(p);
        let mut n = 1;
        for x in 0..p {
            for y in 0..p {
                if eval(&a, p, x, y).0 == 0 {
                    n += 1;
                }
            }
        }
        n
    }

    /// Nonsingular points by full enumeration, O(p²).
    pub fn nonsingular_enumeration(curve: &WeierstrassCurve, p: u64) -> u64 {
        let a = curve.reduced(p);
        let mut n = 1;
        for x in 0..p {
            for y in 0..p {
                let (f, fx, fy) = eval(&a, p, x, y);
                if f == 0 && (fx != 0 || fy != 0) {
                    n += 1;
                }
            }
        }
        n
    }

    /// Odd `p`: completing the square turns the equation into
    /// `(2y + a1·x + a3)² = 4x³ + b2·x² + 2b4·x + b6`, so each `x` contributes
    /// the number of square roots of the right-hand side. O(p).
    pub fn completed_square(curve: &WeierstrassCurve, p: u64) -> u64 {
        assert!(p % 2 == 1, "completing the square needs odd p");
        let [b2, b4, b6, _] = curve.b_invariants();
        let m = BigInt::from(p);
        let red = |b: &BigInt| b.mod_floor(&m).to_u64().unwrap() as u128;
        let (b2, b4, b6) = (red(&b2), red(&b4), red(&b6));
        let mut roots = vec![0u8; p as usize];
        for y in 0..p as u128 {
            roots[(y * y % p as u128) as usize] += 1;
        }
        let pp = p as u128;
        let mut n = 1u64;
        for x in 0..pp {
            let g = (((4 * x + b2) % pp * x + 2 * b4) % pp * x + b6) % pp;
            n += roots[g as usize] as u64;
        }
        n
    }

    /// `p >= 5`: `a_p = -Σ_x (x³ - 27c4·x - 54c6 | p)` on the short model,
    /// with Legendre symbols from Euler's criterion.
    pub fn ap_depressed_legendre(curve: &WeierstrassCurve, p: u64) -> i64 {
        assert!(p >= 5, "short Weierstrass form needs p >= 5");
        let [c4, c6] = curve.c_invariants();
        let m = BigInt::from(p);
        let a = (BigInt::from(-27) * c4).mod_floor(&m).to_u64().unwrap() as u128;
        let b = (BigInt::from(-54) * c6).mod_floor(&m).to_u64().unwrap() as u128;
        let pp = p as u128;
        let mut sum = 0i64;
        for x in 0..pp {
            let v = ((x * x % pp * x + a * x) % pp + b) % pp;
            if v != 0 {
                sum += if pow_mod(v as u64, (p - 1) / 2, p) == 1 { 1 } else { -1 };
            }
        }
        -sum
    }

    /// Nonsingular points in O(p): all points minus the (at most one)
    /// singular point, located where `F_y = 0`.
    pub fn nonsingular(curve: &WeierstrassCurve, p: u64) -> u64 {
        if p <= 3 {
            return nonsingular_enumeration(curve, p);
        }
        let a = curve.reduced(p);
        let total = completed_square(curve, p);
        let inv2 = p.div_ceil(2);
        let mut singular = 0;
        for x in 0..p {
            let s = ((a[0] as u128 * x as u128 + a[2] as u128) % p as u128) as u64;
            let y = arith::mul_mod(p - s % p, inv2, p) % p;
            let (f, fx, fy) = eval(&a, p, x, y);
            debug_assert_eq!(fy, 0);
            if f == 0 && fx == 0 {
                singular += 1;
            }
        }
        total - singular
    }

    /// Projective count on the reduction, choosing enumeration for `p <= 3`.
    pub fn points(curve: &WeierstrassCurve, p: u64) -> u64 {
        if p <= 3 {
            enumeration(curve, p)
        } else {
            completed_square(curve, p)
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if arith::is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `a_p = p + 1 - #E(F_p)` at a prime of good reduction.
pub fn ap_good(curve: &WeierstrassCurve, p: u64) -> Result<i64> {
    check_prime(p)?;
    if curve.is_bad_prime(p) {
        return Err(Error::BadPrime { p });
    }
    let ap = p as i64 + 1 - count::points(curve, p) as i64;
    if (ap * ap) as u64 > 4 * p {
        return Err(Error::HasseViolation { p, ap });
    }
    Ok(ap)
}

/// `a_p = p - #E_ns(F_p)` at a prime of bad reduction: 1 split, -1 nonsplit,
/// 0 additive.
pub fn ap_bad(curve: &WeierstrassCurve, p: u64) -> Result<i64> {
    check_prime(p)?;
    if !curve.is_bad_prime(p) {
        return Err(Error::GoodPrime { p });
    }
    let ap = p as i64 - count::nonsingular(curve, p) as i64;
    if !(-1..=1).contains(&ap) {
        return Err(Error::BadPrimeEigenvalue { p, ap: ap.into() });
    }
    Ok(ap)
}

pub fn reduction_type(curve: &WeierstrassCurve, p: u64) -> Result<ReductionType> {
    check_prime(p)?;
    if !curve.is_bad_prime(p) {
        return Ok(ReductionType::Good);
    }
    Ok(match ap_bad(curve, p)? {
        1 => ReductionType::SplitMultiplicative,
        -1 => ReductionType::NonsplitMultiplicative,
        _ => ReductionType::Additive,
    })
}

/// `a_p` for every prime `p <= bound`, weight 2 and level [`WeierstrassCurve::level`].
pub fn prime_table(curve: &WeierstrassCurve, bound: u64) -> Result<PrimeEigenvalues> {
    if bound < 2 {
        return Err(Error::InsufficientCoverage { index: 2, bound: bound as usize });
    }
    let disc = curve.discriminant();
    let mut table = BTreeMap::new();
    for p in arith::primes_up_to(bound as usize) {
        let bad = (&disc % BigInt::from(p)).is_zero();
        let ap = if bad { ap_bad(curve, p)? } else { ap_good(curve, p)? };
        table.insert(p, PrimeEntry { ap: ap.into(), bad });
    }
    PrimeEigenvalues::new(2, curve.level()?, table, bound)
}

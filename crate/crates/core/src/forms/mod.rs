//! Coefficient providers.
//!
//! Every provider yields an exact [`QSeries`]; the ones that name a form also
//! yield its [`FormSpec`].
//!
//! Only the normalized Eisenstein series `E_{2k} = G_{2k} / (2ζ(2k))` are
//! materialized. With `g2 = 60 G_4 = (4π⁴/3) E_4` and
//! `g3 = 140 G_6 = (8π⁶/27) E_6` one gets
//! `g2³ - 27 g3² = (64π¹²/27)(E_4³ - E_6²) = (2π)¹² (E_4³ - E_6²)/1728`,
//! so the normalized discriminant is `Δ = (E_4³ - E_6²)/1728`, which is what
//! [`delta_eisenstein`] computes.

mod bernoulli;
pub mod qexp;

use std::fmt;
use std::path::PathBuf;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Zero};

pub use bernoulli::{bernoulli, BernoulliCache};
pub use qexp::{ingest_qexp, parse_qexp, write_qexp};

use crate::ec::WeierstrassCurve;
use crate::error::{Error, Result};
use crate::series::{self, eta_cubed, eta_raw, QSeries, ResidueSeries};

/// Levels `N` for which `η(z)^a η(Nz)^a`, `a = 24/(N+1)`, is a newform.
pub const ETA_QUOTIENT_LEVELS: [u64; 4] = [2, 3, 5, 11];

/// Dirichlet character of a form. Only the trivial character mod N is
/// supported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Character {
    Trivial,
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("trivial")
    }
}

/// Where a form's coefficients come from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FormSource {
    DeltaEta,
    DeltaEisenstein,
    /// Normalized `E_weight` (not a cusp form).
    Eisenstein { weight: u32 },
    EtaQuotient(u64),
    EllipticCurve(WeierstrassCurve),
    File(PathBuf),
}

/// Arithmetic identity of a form: weight, level, character and provenance.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormSpec {
    weight: u32,
    level: u64,
    character: Character,
    label: String,
    source: FormSource,
}

impl FormSpec {
    pub fn new(
        weight: u32,
        level: u64,
        label: impl Into<String>,
        source: FormSource,
    ) -> Result<Self> {
        if weight % 2 == 1 {
            return Err(Error::OddWeight(weight));
        }
        if weight < 2 {
            return Err(Error::WeightTooSmall { got: weight, min: 2 });
        }
        if level == 0 {
            return Err(Error::ZeroLevel);
        }
        if let FormSource::EtaQuotient(n) = source {
            if !ETA_QUOTIENT_LEVELS.contains(&n) || level != n || weight as u64 != 24 / (n + 1) {
                return Err(Error::UnsupportedEtaLevel(n));
            }
        }
        Ok(FormSpec {
            weight,
            level,
            character: Character::Trivial,
            label: label.into(),
            source,
        })
    }

    pub fn delta() -> Self {
        Self::new(12, 1, "delta", FormSource::DeltaEta).expect("valid")
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn character(&self) -> Character {
        self.character
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn source(&self) -> &FormSource {
        &self.source
    }

    /// Stable textual description of the coefficient source, suitable as a
    /// cache key component.
    pub fn descriptor(&self) -> String {
        let src = match &self.source {
            FormSource::DeltaEta => "delta-eta".to_string(),
            FormSource::DeltaEisenstein => "delta-eisenstein".to_string(),
            FormSource::Eisenstein { weight } => format!("eisenstein:{weight}"),
            FormSource::EtaQuotient(n) => format!("eta-quotient:{n}"),
            FormSource::EllipticCurve(c) => format!("curve:{}", c.coefficient_string()),
            FormSource::File(p) => format!("file:{}", p.display()),
        };
        format!(
            "{src}|weight={}|level={}|character={}",
            self.weight, self.level, self.character
        )
    }
}

/// `σ_m(n)`, the sum of `m`-th powers of the positive divisors of `n`.
pub fn sigma(n: u64, m: u32) -> BigInt {
    assert!(n >= 1, "sigma is defined for n >= 1");
    let mut total = BigInt::zero();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            total += BigInt::from(d).pow(m);
            let e = n / d;
            if e != d {
                total += BigInt::from(e).pow(m);
            }
        }
        d += 1;
    }
    total
}

/// `σ_m(n)` for every `1 <= n <= bound` by a divisor sieve; index 0 is 0.
fn sigma_table(bound: usize, m: u32) -> Vec<BigInt> {
    let mut table = vec![BigInt::zero(); bound + 1];
    for d in 1..=bound {
        let power = BigInt::from(d).pow(m);
        for multiple in (d..=bound).step_by(d) {
            table[multiple] += &power;
        }
    }
    table
}

/// Normalized Eisenstein series
/// `E_{2k} = 1 - (4k / B_{2k}) Σ_{n>=1} σ_{2k-1}(n) q^n` for `k >= 2`.
///
/// Fails if a coefficient is not an integer (for instance `E_12`, whose
/// constant `65520/691` is not integral).
pub fn eisenstein_coeffs(k: u32, bound: usize) -> Result<QSeries> {
    if k < 2 {
        return Err(Error::WeightTooSmall { got: 2 * k, min: 4 });
    }
    series::check_bound(bound)?;
    let factor = -BigRational::from_integer(BigInt::from(4 * k)) / bernoulli(2 * k)?;
    let (numer, denom) = (factor.numer().clone(), factor.denom().clone());
    let mut coeffs = sigma_table(bound, 2 * k - 1);
    coeffs[0] = BigInt::one();
    for (n, c) in coeffs.iter_mut().enumerate().skip(1) {
        let (q, r) = (&numer * &*c).div_rem(&denom);
        if !r.is_zero() {
            return Err(Error::InexactNormalization { weight: 2 * k, index: n });
        }
        *c = q;
    }
    QSeries::from_coeffs(coeffs)
}

/// `Δ = q ∏ (1 - q^n)^24` via 24 sparse passes of the pentagonal expansion.
pub fn delta_eta(bound: usize) -> Result<QSeries> {
    let eta = eta_raw(bound)?;
    let mut acc = QSeries::one(bound)?;
    for _ in 0..24 {
        acc = acc.mul_sparse(&eta)?;
    }
    Ok(acc.shift_up(1))
}

/// `Δ = (E_4³ - E_6²) / 1728`; the division must be exact at every index.
pub fn delta_eisenstein(bound: usize) -> Result<QSeries> {
    let e4 = eisenstein_coeffs(2, bound)?;
    let e6 = eisenstein_coeffs(3, bound)?;
    e4.pow(3).sub(&e6.pow(2))?.div_exact(1728)
}

/// `Δ mod m` from eight passes of Jacobi's `∏(1 - q^n)^3`, independent of the
/// exact pentagonal route.
pub fn delta_residues(bound: usize, modulus: u64) -> Result<ResidueSeries> {
    let cube = eta_cubed(bound)?;
    let mut acc = ResidueSeries::one(bound, modulus)?;
    for _ in 0..8 {
        acc = acc.mul_sparse(&cube)?;
    }
    Ok(acc.shift_up(1))
}

/// The eta quotient `η(z)^a η(Nz)^a`, `a = 24/(N+1)`, of weight `a` and
/// level `N ∈ {2, 3, 5, 11}`.
pub fn eta_quotient(level: u64, bound: usize) -> Result<(FormSpec, QSeries)> {
    if !ETA_QUOTIENT_LEVELS.contains(&level) {
        return Err(Error::UnsupportedEtaLevel(level));
    }
    let a = (24 / (level + 1)) as u32;
    let spec = FormSpec::new(
        a,
        level,
        format!("eta-quotient:{level}"),
        FormSource::EtaQuotient(level),
    )?;
    let eta = eta_raw(bound)?;
    let dilated = eta.dilate(level as usize);
    let mut acc = QSeries::one(bound)?;
    for _ in 0..a {
        acc = acc.mul_sparse(&eta)?.mul_sparse(&dilated)?;
    }
    // leading exponent a(1 + N)/24 = 1
    Ok((spec, acc.shift_up(1)))
}

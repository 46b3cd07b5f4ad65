//! Truncated integer power series.
//!
//! [`QSeries`] is the dense exact carrier, [`SparseSeries`] holds the lacunary
//! eta expansions, and [`ResidueSeries`] is a coefficient lane modulo an odd
//! word-size prime. Truncation bounds are always explicit: every operation
//! requires matching bounds and never grows a series.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::arith;
use crate::error::{Error, Result};

/// Fixed word primes of the residue certification lane, each just below 2^62.
///
/// A coefficient is certified nonzero as soon as one residue is nonzero, so
/// an exact recomputation is needed only when all three vanish.
pub const LANE_PRIMES: [u64; 3] = [
    4_611_686_018_427_387_847,
    4_611_686_018_427_387_817,
    4_611_686_018_427_387_787,
];

/// Dense power series `Σ_{n=0}^{B} c_n q^n` with exact integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QSeries {
    coeffs: Vec<BigInt>,
}

impl QSeries {
    /// Builds a series from `coeffs[0..=B]`; the bound is `coeffs.len() - 1`.
    pub fn from_coeffs(coeffs: Vec<BigInt>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::ZeroBound);
        }
        Ok(QSeries { coeffs })
    }

    pub fn from_i64s(coeffs: &[i64]) -> Result<Self> {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero(bound: usize) -> Result<Self> {
        check_bound(bound)?;
        Ok(QSeries {
            coeffs: vec![BigInt::zero(); bound + 1],
        })
    }

    pub fn one(bound: usize) -> Result<Self> {
        let mut s = Self::zero(bound)?;
        s.coeffs[0] = BigInt::one();
        Ok(s)
    }

    /// Largest index with a known coefficient.
    pub fn trunc_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `q^n`, or `None` past the truncation bound.
    pub fn coeff(&self, n: usize) -> Option<&BigInt> {
        self.coeffs.get(n)
    }

    /// Smallest index with a nonzero coefficient; `None` for the zero series.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    /// Keeps coefficients `0..=bound`.
    pub fn truncate(&self, bound: usize) -> Result<Self> {
        check_bound(bound)?;
        if bound > self.trunc_bound() {
            return Err(Error::InsufficientCoverage {
                index: bound,
                bound: self.trunc_bound(),
            });
        }
        Ok(QSeries {
            coeffs: self.coeffs[..=bound].to_vec(),
        })
    }

    /// Multiplies by `q^shift`, keeping the same truncation bound.
    pub fn shift_up(&self, shift: usize) -> Self {
        let bound = self.trunc_bound();
        let mut coeffs = vec![BigInt::zero(); bound + 1];
        if shift <= bound {
            coeffs[shift..].clone_from_slice(&self.coeffs[..=bound - shift]);
        }
        QSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same_bound(self.trunc_bound(), other.trunc_bound())?;
        Ok(QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        same_bound(self.trunc_bound(), other.trunc_bound())?;
        Ok(QSeries {
            coeffs: self
                .coeffs
                .iter()
                .zip(&other.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    /// Divides every coefficient by `divisor`, failing if any division leaves
    /// a remainder.
    pub fn div_exact(&self, divisor: u64) -> Result<Self> {
        let d = BigInt::from(divisor);
        let mut coeffs = Vec::with_capacity(self.coeffs.len());
        for (index, c) in self.coeffs.iter().enumerate() {
            let (q, r) = c.div_rem(&d);
            if !r.is_zero() {
                return Err(Error::InexactDivision { divisor, index });
            }
            coeffs.push(q);
        }
        Ok(QSeries { coeffs })
    }

    /// Schoolbook product truncated at the common bound.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        let bound = self.trunc_bound();
        same_bound(bound, other.trunc_bound())?;
        let mut out = vec![BigInt::zero(); bound + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=bound - i].iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        Ok(QSeries { coeffs: out })
    }

    /// Product with a sparse series in O(B · #terms).
    pub fn mul_sparse(&self, s: &SparseSeries) -> Result<Self> {
        let bound = self.trunc_bound();
        same_bound(bound, s.trunc_bound())?;
        let mut out = vec![BigInt::zero(); bound + 1];
        for (shift, c) in &s.terms {
            let src = &self.coeffs[..=bound - shift];
            let dst = &mut out[*shift..];
            if c.is_one() {
                for (o, a) in dst.iter_mut().zip(src) {
                    *o += a;
                }
            } else if (-c).is_one() {
                for (o, a) in dst.iter_mut().zip(src) {
                    *o -= a;
                }
            } else {
                for (o, a) in dst.iter_mut().zip(src) {
                    if !a.is_zero() {
                        *o += a * c;
                    }
                }
            }
        }
        Ok(QSeries { coeffs: out })
    }

    /// `self^e` by binary exponentiation, `e >= 1`.
    pub fn pow(&self, e: u32) -> Self {
        assert!(e >= 1, "exponent must be positive");
        let mut base = self.clone();
        let mut acc: Option<QSeries> = None;
        let mut e = e;
        loop {
            if e & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base).expect("bounds agree"),
                });
            }
            e >>= 1;
            if e == 0 {
                break;
            }
            base = base.mul(&base).expect("bounds agree");
        }
        acc.expect("e >= 1")
    }

    /// Coefficientwise reduction modulo an odd word prime.
    pub fn reduce(&self, modulus: u64) -> Result<ResidueSeries> {
        check_odd_prime(modulus)?;
        let m = BigInt::from(modulus);
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| c.mod_floor(&m).to_u64().expect("residue below a u64 modulus"))
            .collect();
        Ok(ResidueSeries { modulus, coeffs })
    }
}

/// Lacunary series stored as strictly increasing `(index, coefficient)` pairs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseSeries {
    terms: Vec<(usize, BigInt)>,
    trunc_bound: usize,
}

impl SparseSeries {
    pub fn new(terms: Vec<(usize, BigInt)>, trunc_bound: usize) -> Result<Self> {
        check_bound(trunc_bound)?;
        let increasing = terms.windows(2).all(|w| w[0].0 < w[1].0);
        let in_range = terms.iter().all(|(i, c)| *i <= trunc_bound && !c.is_zero());
        if !increasing || !in_range {
            return Err(Error::InvalidSparseTerms { bound: trunc_bound });
        }
        Ok(SparseSeries { terms, trunc_bound })
    }

    pub fn empty(trunc_bound: usize) -> Result<Self> {
        Self::new(Vec::new(), trunc_bound)
    }

    pub fn trunc_bound(&self) -> usize {
        self.trunc_bound
    }

    pub fn terms(&self) -> &[(usize, BigInt)] {
        &self.terms
    }

    /// Coefficient at `n` (zero when no term sits there).
    pub fn coeff(&self, n: usize) -> BigInt {
        match self.terms.binary_search_by_key(&n, |(i, _)| *i) {
            Ok(pos) => self.terms[pos].1.clone(),
            Err(_) => BigInt::zero(),
        }
    }

    pub fn densify(&self) -> QSeries {
        let mut coeffs = vec![BigInt::zero(); self.trunc_bound + 1];
        for (i, c) in &self.terms {
            coeffs[*i] = c.clone();
        }
        QSeries { coeffs }
    }

    /// Substitutes `q -> q^factor`, dropping terms past the bound.
    pub fn dilate(&self, factor: usize) -> Self {
        assert!(factor >= 1);
        let terms = self
            .terms
            .iter()
            .filter_map(|(i, c)| {
                let j = i.checked_mul(factor)?;
                (j <= self.trunc_bound).then(|| (j, c.clone()))
            })
            .collect();
        SparseSeries {
            terms,
            trunc_bound: self.trunc_bound,
        }
    }
}

/// `∏_{n>=1} (1 - q^n)` truncated at `bound`, via Euler's pentagonal numbers:
/// `Σ_m (-1)^m q^{m(3m-1)/2}` over all integers `m`.
pub fn eta_raw(bound: usize) -> Result<SparseSeries> {
    check_bound(bound)?;
    let mut terms = vec![(0usize, BigInt::one())];
    for m in 1usize.. {
        let low = m * (3 * m - 1) / 2;
        if low > bound {
            break;
        }
        let sign = if m % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        terms.push((low, sign.clone()));
        let high = m * (3 * m + 1) / 2;
        if high <= bound {
            terms.push((high, sign));
        }
    }
    SparseSeries::new(terms, bound)
}

/// `∏_{n>=1} (1 - q^n)^3 = Σ_{m>=0} (-1)^m (2m+1) q^{m(m+1)/2}` (Jacobi).
pub fn eta_cubed(bound: usize) -> Result<SparseSeries> {
    check_bound(bound)?;
    let mut terms = Vec::new();
    for m in 0usize.. {
        let idx = m * (m + 1) / 2;
        if idx > bound {
            break;
        }
        let c = BigInt::from(2 * m as i64 + 1);
        terms.push((idx, if m % 2 == 0 { c } else { -c }));
    }
    SparseSeries::new(terms, bound)
}

/// Coefficients of a series modulo an odd word-size prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidueSeries {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl ResidueSeries {
    pub fn one(bound: usize, modulus: u64) -> Result<Self> {
        check_bound(bound)?;
        check_odd_prime(modulus)?;
        let mut coeffs = vec![0; bound + 1];
        coeffs[0] = 1;
        Ok(ResidueSeries { modulus, coeffs })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn trunc_bound(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Option<u64> {
        self.coeffs.get(n).copied()
    }

    pub fn shift_up(&self, shift: usize) -> Self {
        let bound = self.trunc_bound();
        let mut coeffs = vec![0; bound + 1];
        if shift <= bound {
            coeffs[shift..].copy_from_slice(&self.coeffs[..=bound - shift]);
        }
        ResidueSeries {
            modulus: self.modulus,
            coeffs,
        }
    }

    /// Product with a sparse series, reduced modulo the lane prime.
    ///
    /// Products with small sparse coefficients are accumulated unreduced in
    /// 128-bit sums and reduced once per output index.
    pub fn mul_sparse(&self, s: &SparseSeries) -> Result<Self> {
        let bound = self.trunc_bound();
        same_bound(bound, s.trunc_bound())?;
        let m = self.modulus;
        let mm = BigInt::from(m);
        // (index, negative?, magnitude); magnitude < 2^32 or already < m
        let terms: Vec<(usize, bool, u64, bool)> = s
            .terms
            .iter()
            .map(|(i, c)| {
                let small = c.abs().to_u64().filter(|v| *v < 1 << 32);
                match small {
                    Some(v) => (*i, c.is_negative(), v, true),
                    None => {
                        let r = c.mod_floor(&mm).to_u64().expect("reduced");
                        (*i, false, r, false)
                    }
                }
            })
            .collect();
        let m128 = m as u128;
        let mut coeffs = vec![0u64; bound + 1];
        for (n, out) in coeffs.iter_mut().enumerate() {
            let mut pos: u128 = 0;
            let mut neg: u128 = 0;
            for &(i, negative, mag, small) in &terms {
                if i > n {
                    break;
                }
                let a = self.coeffs[n - i] as u128;
                let prod = if small {
                    a * mag as u128
                } else {
                    (a * mag as u128) % m128
                };
                if negative {
                    neg += prod;
                } else {
                    pos += prod;
                }
            }
            let p = (pos % m128) as u64;
            let q = (neg % m128) as u64;
            *out = if p >= q { p - q } else { m - (q - p) };
        }
        Ok(ResidueSeries { modulus: m, coeffs })
    }
}

pub(crate) fn check_bound(bound: usize) -> Result<()> {
    if bound == 0 {
        Err(Error::ZeroBound)
    } else {
        Ok(())
    }
}

fn same_bound(left: usize, right: usize) -> Result<()> {
    if left == right {
        Ok(())
    } else {
        Err(Error::BoundMismatch { left, right })
    }
}

pub(crate) fn check_odd_prime(m: u64) -> Result<()> {
    if m > 2 && arith::is_prime(m) {
        Ok(())
    } else {
        Err(Error::NotOddPrime(m))
    }
}

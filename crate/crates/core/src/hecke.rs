//! Coefficients of a normalized eigenform from its prime eigenvalues.
//!
//! With trivial character mod N:
//!
//! - `a(1) = 1`
//! - `a(mn) = a(m) a(n)` for coprime `m, n`
//! - `a(p^r) = a(p) a(p^{r-1}) - p^{k-1} a(p^{r-2})` for `p ∤ N`
//! - `a(p^r) = a(p)^r` for `p | N`

use std::collections::{BTreeMap, HashMap};
use std::sync::RwLock;

use num_bigint::BigInt;
use num_traits::{One, Pow, Zero};

use crate::arith;
use crate::error::{Error, Result};
use crate::forms::FormSpec;
use crate::series::QSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeEntry {
    pub ap: BigInt,
    /// `p | N`
    pub bad: bool,
}

/// Table `p -> a(p)` covering every prime up to `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeEigenvalues {
    weight: u32,
    level: u64,
    table: BTreeMap<u64, PrimeEntry>,
    bound: u64,
}

impl PrimeEigenvalues {
    pub fn new(
        weight: u32,
        level: u64,
        table: BTreeMap<u64, PrimeEntry>,
        bound: u64,
    ) -> Result<Self> {
        if weight % 2 == 1 {
            return Err(Error::OddWeight(weight));
        }
        if level == 0 {
            return Err(Error::ZeroLevel);
        }
        for p in arith::primes_up_to(bound as usize) {
            match table.get(&p) {
                None => return Err(Error::MissingPrime { p }),
                Some(e) if e.bad != (level % p == 0) => {
                    return Err(Error::ProvenanceMismatch { p, level })
                }
                Some(_) => {}
            }
        }
        Ok(PrimeEigenvalues {
            weight,
            level,
            table,
            bound,
        })
    }

    /// Reads `a(p)` off a computed q-expansion for all primes up to its bound.
    pub fn from_series(series: &QSeries, weight: u32, level: u64) -> Result<Self> {
        let bound = series.trunc_bound() as u64;
        let table = arith::primes_up_to(bound as usize)
            .into_iter()
            .map(|p| {
                let entry = PrimeEntry {
                    ap: series.coeffs()[p as usize].clone(),
                    bad: level % p == 0,
                };
                (p, entry)
            })
            .collect();
        Self::new(weight, level, table, bound)
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn level(&self) -> u64 {
        self.level
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn get(&self, p: u64) -> Option<&PrimeEntry> {
        self.table.get(&p)
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, &PrimeEntry)> {
        self.table.iter().map(|(p, e)| (*p, e))
    }
}

/// `a(p^r)` by the Hecke recurrence (or `a_p^r` when `p | N`).
pub fn coeff_prime_power(ap: &BigInt, p: u64, r: u32, k: u32, p_divides_level: bool) -> BigInt {
    if p_divides_level {
        return ap.pow(r);
    }
    let norm = BigInt::from(p).pow(k - 1);
    let mut prev = BigInt::one();
    let mut cur = ap.clone();
    if r == 0 {
        return prev;
    }
    for _ in 1..r {
        let next = ap * &cur - &norm * &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Memoizing `n -> a(n)` lookup backed by a prime table.
#[derive(Debug)]
pub struct CoefficientOracle {
    spec: FormSpec,
    primes: PrimeEigenvalues,
    cache: RwLock<HashMap<u64, BigInt>>,
}

impl CoefficientOracle {
    pub fn new(spec: FormSpec, primes: PrimeEigenvalues) -> Self {
        CoefficientOracle {
            spec,
            primes,
            cache: RwLock::new(HashMap::new()),
        }
    }

    pub fn spec(&self) -> &FormSpec {
        &self.spec
    }

    pub fn primes(&self) -> &PrimeEigenvalues {
        &self.primes
    }

    /// `a(n)` for `1 <= n <= bound`.
    pub fn coeff(&self, n: u64) -> Result<BigInt> {
        if n == 0 || n > self.primes.bound {
            return Err(Error::InsufficientCoverage {
                index: n as usize,
                bound: self.primes.bound as usize,
            });
        }
        if let Some(v) = self.cache.read().expect("oracle lock poisoned").get(&n) {
            return Ok(v.clone());
        }
        let mut value = BigInt::one();
        for (p, e) in arith::factorize(n) {
            let entry = self.primes.get(p).ok_or(Error::MissingPrime { p })?;
            value *= coeff_prime_power(&entry.ap, p, e, self.primes.weight, entry.bad);
        }
        // racing writers store the same value
        self.cache
            .write()
            .expect("oracle lock poisoned")
            .insert(n, value.clone());
        Ok(value)
    }
}

/// `Σ_{n=1}^{bound} a(n) q^n` from the prime table, in O(bound) big-integer
/// multiplications.
pub fn qexp_from_primes(pe: &PrimeEigenvalues, bound: usize) -> Result<QSeries> {
    if bound as u64 > pe.bound {
        return Err(Error::InsufficientCoverage {
            index: bound,
            bound: pe.bound as usize,
        });
    }
    let spf = arith::smallest_prime_factors(bound);
    let mut a = vec![BigInt::zero(); bound + 1];
    if bound >= 1 {
        a[1] = BigInt::one();
    }
    let mut norms: HashMap<u64, BigInt> = HashMap::new();
    for n in 2..=bound {
        let p = spf[n] as usize;
        let mut m = n;
        while m % p == 0 {
            m /= p;
        }
        a[n] = if m > 1 {
            &a[n / m] * &a[m]
        } else {
            let entry = pe.get(p as u64).ok_or(Error::MissingPrime { p: p as u64 })?;
            if n == p {
                entry.ap.clone()
            } else if entry.bad {
                &entry.ap * &a[n / p]
            } else {
                let norm = norms
                    .entry(p as u64)
                    .or_insert_with(|| BigInt::from(p).pow(pe.weight - 1));
                &entry.ap * &a[n / p] - &*norm * &a[n / p / p]
            }
        };
    }
    QSeries::from_coeffs(a)
}

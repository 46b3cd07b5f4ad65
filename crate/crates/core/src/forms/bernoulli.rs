use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Process-wide table of Bernoulli numbers `B_0, B_1, ..., B_n` (with
/// `B_1 = -1/2`), extended on demand under a write lock.
pub struct BernoulliCache {
    values: RwLock<Vec<BigRational>>,
}

impl BernoulliCache {
    fn new() -> Self {
        BernoulliCache {
            values: RwLock::new(vec![BigRational::one()]),
        }
    }

    pub fn global() -> &'static BernoulliCache {
        static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
        CACHE.get_or_init(BernoulliCache::new)
    }

    /// `B_idx` for even `idx >= 2`.
    pub fn get(&self, idx: u32) -> Result<BigRational> {
        if idx % 2 == 1 || idx == 0 {
            return Err(Error::OddBernoulliIndex(idx));
        }
        let idx = idx as usize;
        {
            let values = self.values.read().expect("bernoulli lock poisoned");
            if let Some(b) = values.get(idx) {
                return Ok(b.clone());
            }
        }
        let mut values = self.values.write().expect("bernoulli lock poisoned");
        // another writer may have extended the table meanwhile
        while values.len() <= idx {
            let n = values.len();
            // Σ_{j=0}^{n} C(n+1, j) B_j = 0
            let mut binom = BigInt::one();
            let mut sum = BigRational::zero();
            for (j, b) in values.iter().enumerate() {
                sum += b * BigRational::from_integer(binom.clone());
                binom = binom * BigInt::from(n + 1 - j) / BigInt::from(j + 1);
            }
            // binom is now C(n+1, n)
            values.push(-sum / BigRational::from_integer(binom));
        }
        Ok(values[idx].clone())
    }
}

/// Exact Bernoulli number `B_idx`, `idx` even and positive.
pub fn bernoulli(idx: u32) -> Result<BigRational> {
    BernoulliCache::global().get(idx)
}

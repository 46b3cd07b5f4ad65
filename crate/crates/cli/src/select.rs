//! Resolution of the `--form/--curve/--fixture/--file` selectors.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Result};
use clap::Args;
use lehmer_core::ec::{self, WeierstrassCurve};
use lehmer_core::forms::{self, eisenstein_coeffs, ingest_qexp};
use lehmer_core::vanish::{CoefficientSource, DeltaSource, SeriesSource};
use lehmer_core::{CoefficientOracle, FormSource, FormSpec, QSeries};

use crate::cache::Cache;

#[derive(Args, Debug, Clone)]
#[group(required = true, multiple = false)]
pub struct Selector {
    /// delta | eta-quotient:N (N in 2,3,5,11) | e4 | e6
    #[arg(long)]
    pub form: Option<String>,
    /// Weierstrass coefficients a1,a2,a3,a4,a6 of a minimal model
    #[arg(long, allow_hyphen_values = true)]
    pub curve: Option<String>,
    /// Named curve: 37a1 or 53a1
    #[arg(long)]
    pub fixture: Option<String>,
    /// q-expansion file
    #[arg(long)]
    pub file: Option<PathBuf>,
}

pub enum Resolved {
    Delta,
    EtaQuotient(u64),
    Eisenstein(u32),
    Curve(WeierstrassCurve),
    File(PathBuf),
}

impl Selector {
    pub fn resolve(&self) -> Result<Resolved> {
        if let Some(f) = &self.form {
            return Ok(match f.as_str() {
                "delta" => Resolved::Delta,
                "e4" => Resolved::Eisenstein(4),
                "e6" => Resolved::Eisenstein(6),
                other => match other.strip_prefix("eta-quotient:").map(str::parse::<u64>) {
                    Some(Ok(n)) if forms::ETA_QUOTIENT_LEVELS.contains(&n) => Resolved::EtaQuotient(n),
                    _ => bail!("unknown form selector `{other}` (expected delta, eta-quotient:N, e4, e6)"),
                },
            });
        }
        if let Some(c) = &self.curve {
            return Ok(Resolved::Curve(WeierstrassCurve::parse(c)?));
        }
        if let Some(l) = &self.fixture {
            return WeierstrassCurve::fixture(l)
                .map(Resolved::Curve)
                .ok_or_else(|| anyhow!("unknown fixture `{l}` (expected 37a1 or 53a1)"));
        }
        if let Some(p) = &self.file {
            return Ok(Resolved::File(p.clone()));
        }
        bail!("no form selector given")
    }
}

impl Resolved {
    pub fn spec(&self) -> Result<FormSpec> {
        Ok(match self {
            Resolved::Delta => FormSpec::delta(),
            Resolved::EtaQuotient(n) => forms::eta_quotient(*n, 1)?.0,
            Resolved::Eisenstein(k) => {
                FormSpec::new(*k, 1, format!("e{k}"), FormSource::Eisenstein { weight: *k })?
            }
            Resolved::Curve(c) => {
                FormSpec::new(2, c.level()?, c.label(), FormSource::EllipticCurve(c.clone()))?
            }
            Resolved::File(p) => ingest_qexp(p)?.0,
        })
    }

    fn compute(&self, bound: usize) -> Result<QSeries> {
        Ok(match self {
            Resolved::Delta => forms::delta_eta(bound)?,
            Resolved::EtaQuotient(n) => forms::eta_quotient(*n, bound)?.1,
            Resolved::Eisenstein(k) => eisenstein_coeffs(k / 2, bound)?,
            Resolved::Curve(c) => {
                lehmer_core::hecke::qexp_from_primes(&ec::prime_table(c, bound.max(2) as u64)?, bound)?
            }
            Resolved::File(p) => ingest_qexp(p)?.1.truncate(bound)?,
        })
    }

    /// Exact coefficients `0..=bound`, through the cache when one is given.
    pub fn series(&self, bound: usize, cache: Option<&Cache>) -> Result<(FormSpec, QSeries)> {
        let spec = self.spec()?;
        let series = match (self, cache) {
            (Resolved::File(_), _) | (_, None) => self.compute(bound)?,
            (_, Some(c)) => c.get_or_compute(&spec, bound, || self.compute(bound))?,
        };
        Ok((spec, series))
    }

    /// Coefficient source for scanning up to `bound`.
    pub fn source(&self, bound: usize, cache: Option<&Cache>) -> Result<Box<dyn CoefficientSource>> {
        Ok(match self {
            Resolved::Delta => Box::new(DeltaSource::new()),
            Resolved::Curve(c) => {
                let table = ec::prime_table(c, bound.max(2) as u64)?;
                Box::new(CoefficientOracle::new(self.spec()?, table))
            }
            _ => {
                let (spec, series) = self.series(bound, cache)?;
                Box::new(SeriesSource { spec, series })
            }
        })
    }
}

use std::path::PathBuf;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::{FieldContext, QuadMap};
use crate::rng::Sampler;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            other => Err(Error::Io(format!("unknown format {other:?}"))),
        }
    }
}

/// Parameters shared by the sweeps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExperimentConfig {
    pub primes: Vec<u64>,
    pub r_min: u32,
    pub r_max: u32,
    pub samples: usize,
    pub seed: u64,
    /// Worker threads; 0 means the rayon default.
    pub threads: usize,
    pub output: Option<PathBuf>,
    pub format: Format,
}

impl ExperimentConfig {
    pub fn new(primes: Vec<u64>, r_min: u32, r_max: u32, samples: usize, seed: u64) -> Self {
        Self {
            primes,
            r_min,
            r_max,
            samples,
            seed,
            threads: 0,
            output: None,
            format: Format::Json,
        }
    }

    /// One field context per prime; fails on the first non-prime.
    pub fn contexts(&self) -> Result<Vec<FieldContext>> {
        self.primes.iter().map(|&p| FieldContext::new(p)).collect()
    }
}

/// Seeded maps `aX^2 + c` with `a` uniform in `[1, p-1]` then `c` uniform in
/// `[0, p-1]`. Every prime starts a fresh stream from the same seed.
pub struct MapSampler {
    ctx: FieldContext,
    rng: Sampler,
}

impl MapSampler {
    pub fn new(ctx: FieldContext, seed: u64) -> Self {
        Self {
            ctx,
            rng: Sampler::new(seed),
        }
    }
}

impl Iterator for MapSampler {
    type Item = QuadMap;

    fn next(&mut self) -> Option<QuadMap> {
        let p = self.ctx.p();
        let a = self.rng.range_inclusive(1, p - 1);
        let c = self.rng.below(p);
        Some(QuadMap::new(self.ctx, a, c).expect("a is nonzero"))
    }
}

/// Runs `f` on a pool of `threads` workers (0: rayon default).
pub(crate) fn with_threads<R: Send>(threads: usize, f: impl FnOnce() -> R + Send) -> Result<R> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .map_err(|e| Error::Io(e.to_string()))?;
    Ok(pool.install(f))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sampler_is_reproducible_and_in_range() {
        let ctx = FieldContext::new(101).unwrap();
        let a: Vec<(u64, u64)> = MapSampler::new(ctx, 7).take(50).map(|f| (f.a(), f.c())).collect();
        let b: Vec<(u64, u64)> = MapSampler::new(ctx, 7).take(50).map(|f| (f.a(), f.c())).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|&(a, c)| (1..101).contains(&a) && c < 101));
        let other: Vec<(u64, u64)> = MapSampler::new(ctx, 8).take(50).map(|f| (f.a(), f.c())).collect();
        assert_ne!(a, other);
    }

    #[test]
    fn formats_parse() {
        assert_eq!("csv".parse::<Format>().unwrap(), Format::Csv);
        assert!("xml".parse::<Format>().is_err());
    }

    #[test]
    fn contexts_reject_composites() {
        let cfg = ExperimentConfig::new(vec![101, 91], 0, 1, 1, 0);
        assert!(matches!(cfg.contexts(), Err(Error::NotPrime(91))));
    }
}

//! Seeded sweeps over maps `aX^2 + c`.
//!
//! Theorem-type sweeps compare `#f^r(F_p)` with `mu_r p`, lemma-type sweeps
//! compare `N(r; 2)` with `(r + 1) p`. Both only use maps whose critical
//! orbit `f^0(0), ..., f^{r_max}(0)` is free of repeats; rejected draws are
//! listed with their collision. Deviation thresholds `K 4^r sqrt(p)` are
//! tested exactly as `dev^2 <= K^2 16^r p`.

use num_bigint::{BigInt, BigUint};
use rayon::prelude::*;
use serde::Serialize;

use super::config::{with_threads, ExperimentConfig, MapSampler};
use crate::error::{Error, Result};
use crate::exact::{falling_coeffs, DyadicRational, MuSequence, MU_EXACT_CAP};
use crate::field::{verify_factorization, PolyMap, QuadMap};
use crate::image::{zero_count_from_histogram, ImageSet, PreimageHistogram};
use crate::orbit::{critical_orbit_distinct, first_recurrence, CollisionPair};

/// Calibration factor for `|#f^r - mu_r p| <= K 4^r sqrt(p)`.
pub const THEOREM1_FACTOR: u64 = 10;
/// Calibration factor for `|N(r;2) - (r+1) p| <= K 4^r sqrt(p)`.
pub const LEMMA1_FACTOR: u64 = 3;
/// At most this many draws per requested sample before giving up.
pub const DRAWS_PER_SAMPLE: usize = 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SweepKind {
    Theorem1,
    Lemma1,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepRecord {
    pub p: u64,
    pub a: u64,
    pub c: u64,
    pub r: u32,
    pub observed: String,
    pub main_term: String,
    /// Exact `observed - main_term`.
    pub deviation: String,
    pub deviation_f64: f64,
    /// `deviation / sqrt(p)`.
    pub scaled: f64,
    /// `deviation / (4^r sqrt(p))`.
    pub normalized: f64,
    pub within_threshold: bool,
    /// `|dev| <= 2^(4^r) sqrt(p)`; theorem sweeps only.
    pub within_proven: Option<bool>,
    /// `N(r; 1) = p`; lemma sweeps only.
    pub first_moment_exact: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SkippedSample {
    pub p: u64,
    pub a: u64,
    pub c: u64,
    pub collision: CollisionPair,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepSummary {
    pub p: u64,
    pub r: u32,
    pub samples: usize,
    pub max_abs_scaled: f64,
    pub mean_abs_scaled: f64,
    /// Empirical constant `max |dev| / (4^r sqrt(p))`.
    pub max_abs_normalized: f64,
    pub all_within_threshold: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SweepReport {
    pub kind: SweepKind,
    pub threshold_factor: u64,
    pub config: ExperimentConfig,
    pub summaries: Vec<SweepSummary>,
    pub skipped: Vec<SkippedSample>,
    pub records: Vec<SweepRecord>,
}

impl SweepReport {
    /// Every record meets the threshold and the exact side conditions.
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| {
            r.within_threshold && r.within_proven != Some(false) && r.first_moment_exact != Some(false)
        })
    }
}

/// `dev^2 <= factor^2 * 16^r * p`.
fn within_calibrated(dev: &DyadicRational, factor: u64, r: u32, p: u64) -> bool {
    let bound = (BigInt::from(factor * factor) * BigInt::from(p)) << (4 * r as u64);
    dev * dev <= DyadicRational::from_integer(bound)
}

/// `|dev| <= 2^(4^r) sqrt(p)`. Beyond `r = 6` the bound exceeds `2^64 > p`,
/// and `|dev| <= p` always holds.
fn within_proven(dev: &DyadicRational, r: u32, p: u64) -> bool {
    if r > 6 {
        return dev.abs() <= DyadicRational::from_integer(p);
    }
    let bound = BigInt::from(p) << (2u64 << (2 * r));
    dev * dev <= DyadicRational::from_integer(bound)
}

fn record(
    f: &QuadMap,
    r: u32,
    observed: DyadicRational,
    main: DyadicRational,
    factor: u64,
) -> SweepRecord {
    let p = f.context().p();
    let dev = &observed - &main;
    let dev_f = dev.to_f64();
    let sqrt_p = (p as f64).sqrt();
    SweepRecord {
        p,
        a: f.a(),
        c: f.c(),
        r,
        observed: observed.to_string(),
        main_term: main.to_string(),
        deviation: dev.to_string(),
        deviation_f64: dev_f,
        scaled: dev_f / sqrt_p,
        normalized: dev_f / (4f64.powi(r as i32) * sqrt_p),
        within_threshold: within_calibrated(&dev, factor, r, p),
        within_proven: None,
        first_moment_exact: None,
    }
}

/// Draws maps until `samples` pass the hypothesis at `r_max`.
fn draw_maps(cfg: &ExperimentConfig) -> Result<(Vec<QuadMap>, Vec<SkippedSample>)> {
    let mut maps = Vec::new();
    let mut skipped = Vec::new();
    for ctx in cfg.contexts()? {
        let mut taken = 0;
        let cap = cfg.samples * DRAWS_PER_SAMPLE + 100;
        for f in MapSampler::new(ctx, cfg.seed).take(cap) {
            if taken == cfg.samples {
                break;
            }
            match critical_orbit_distinct(&f, cfg.r_max as u64) {
                (true, _) => {
                    maps.push(f);
                    taken += 1;
                }
                (false, collision) => skipped.push(SkippedSample {
                    p: ctx.p(),
                    a: f.a(),
                    c: f.c(),
                    collision: collision.expect("collision reported"),
                }),
            }
        }
    }
    Ok((maps, skipped))
}

fn summarize(records: &[SweepRecord]) -> Vec<SweepSummary> {
    let mut keys: Vec<(u64, u32)> = records.iter().map(|r| (r.p, r.r)).collect();
    keys.sort_unstable();
    keys.dedup();
    keys.into_iter()
        .map(|(p, r)| {
            let group: Vec<&SweepRecord> = records.iter().filter(|x| x.p == p && x.r == r).collect();
            let n = group.len();
            let abs: Vec<f64> = group.iter().map(|x| x.scaled.abs()).collect();
            SweepSummary {
                p,
                r,
                samples: n,
                max_abs_scaled: abs.iter().cloned().fold(0.0, f64::max),
                mean_abs_scaled: abs.iter().sum::<f64>() / n.max(1) as f64,
                max_abs_normalized: group.iter().map(|x| x.normalized.abs()).fold(0.0, f64::max),
                all_within_threshold: group.iter().all(|x| x.within_threshold),
            }
        })
        .collect()
}

fn check_levels(cfg: &ExperimentConfig) -> Result<()> {
    if cfg.r_min > cfg.r_max {
        return Err(Error::InvalidLevel(cfg.r_min as i64));
    }
    if cfg.r_max > MU_EXACT_CAP {
        return Err(Error::CapExceeded {
            what: "sweep level",
            r: cfg.r_max,
            cap: MU_EXACT_CAP,
        });
    }
    Ok(())
}

/// `#f^r(F_p) - mu_r p` for `r_min <= r <= r_max`.
pub fn theorem1_sweep(cfg: &ExperimentConfig) -> Result<SweepReport> {
    check_levels(cfg)?;
    let mus: Vec<DyadicRational> = MuSequence::new()
        .take(cfg.r_max as usize + 1)
        .map(|m| m.value)
        .collect();
    let (maps, skipped) = draw_maps(cfg)?;
    let per_map: Vec<Vec<SweepRecord>> = with_threads(cfg.threads, || {
        maps.par_iter()
            .map(|f| {
                let p = f.context().p();
                let mut set = ImageSet::full(p);
                let mut out = Vec::new();
                for r in 0..=cfg.r_max {
                    if r > 0 {
                        set = set.step(f);
                    }
                    if r < cfg.r_min {
                        continue;
                    }
                    let main = &mus[r as usize] * &DyadicRational::from_integer(p);
                    let observed = DyadicRational::from_integer(set.size());
                    let dev = &observed - &main;
                    let mut rec = record(f, r, observed, main, THEOREM1_FACTOR);
                    rec.within_proven = Some(within_proven(&dev, r, p));
                    out.push(rec);
                }
                out
            })
            .collect()
    })?;
    let records: Vec<SweepRecord> = per_map.into_iter().flatten().collect();
    Ok(SweepReport {
        kind: SweepKind::Theorem1,
        threshold_factor: THEOREM1_FACTOR,
        config: cfg.clone(),
        summaries: summarize(&records),
        skipped,
        records,
    })
}

/// `N(r; 2) - (r + 1) p` for `r_min <= r <= r_max`, with `N(r; 1) = p`
/// checked alongside.
pub fn lemma1_sweep(cfg: &ExperimentConfig) -> Result<SweepReport> {
    check_levels(cfg)?;
    let (maps, skipped) = draw_maps(cfg)?;
    let per_map: Vec<Vec<SweepRecord>> = with_threads(cfg.threads, || {
        maps.par_iter()
            .map(|f| {
                let p = f.context().p();
                let mut rho = vec![1u32; p as usize];
                let mut next = vec![0u32; p as usize];
                let mut out = Vec::new();
                for r in 0..=cfg.r_max {
                    if r > 0 {
                        next.iter_mut().for_each(|v| *v = 0);
                        for (x, &n) in rho.iter().enumerate() {
                            next[f.apply(x as u64) as usize] += n;
                        }
                        std::mem::swap(&mut rho, &mut next);
                    }
                    if r < cfg.r_min {
                        continue;
                    }
                    let n1: u64 = rho.iter().map(|&v| v as u64).sum();
                    let n2: u128 = rho.iter().map(|&v| (v as u128) * (v as u128)).sum();
                    let observed = DyadicRational::from_integer(BigUint::from(n2));
                    let main = DyadicRational::from_integer((r as u64 + 1) * p);
                    let mut rec = record(f, r, observed, main, LEMMA1_FACTOR);
                    rec.first_moment_exact = Some(n1 == p);
                    out.push(rec);
                }
                out
            })
            .collect()
    })?;
    let records: Vec<SweepRecord> = per_map.into_iter().flatten().collect();
    Ok(SweepReport {
        kind: SweepKind::Lemma1,
        threshold_factor: LEMMA1_FACTOR,
        config: cfg.clone(),
        summaries: summarize(&records),
        skipped,
        records,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecurrenceRecord {
    pub p: u64,
    pub a: u64,
    pub c: u64,
    pub i: u64,
    pub j: u64,
    pub j_over_sqrt_p: f64,
    /// `j log log p / p`.
    pub scaled: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecurrenceSummary {
    pub p: u64,
    pub samples: usize,
    pub max_j: u64,
    pub max_scaled: f64,
    pub mean_j_over_sqrt_p: f64,
    pub max_j_over_sqrt_p: f64,
    pub all_within_p: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RecurrenceScan {
    pub config: ExperimentConfig,
    pub summaries: Vec<RecurrenceSummary>,
    pub records: Vec<RecurrenceRecord>,
}

impl RecurrenceScan {
    pub fn passed(&self) -> bool {
        self.summaries.iter().all(|s| s.all_within_p)
    }
}

/// First repeat `f^i(0) = f^j(0)` of the critical orbit for seeded maps.
pub fn corollary1_scan(cfg: &ExperimentConfig) -> Result<RecurrenceScan> {
    let mut records = Vec::new();
    let mut summaries = Vec::new();
    for ctx in cfg.contexts()? {
        let p = ctx.p();
        let maps: Vec<QuadMap> = MapSampler::new(ctx, cfg.seed).take(cfg.samples).collect();
        let sqrt_p = (p as f64).sqrt();
        let loglog = (p as f64).ln().ln();
        let recs: Vec<RecurrenceRecord> = with_threads(cfg.threads, || {
            maps.par_iter()
                .map(|f| {
                    let pair = first_recurrence(f);
                    RecurrenceRecord {
                        p,
                        a: f.a(),
                        c: f.c(),
                        i: pair.i,
                        j: pair.j,
                        j_over_sqrt_p: pair.j as f64 / sqrt_p,
                        scaled: pair.j as f64 * loglog / p as f64,
                    }
                })
                .collect()
        })?;
        let n = recs.len();
        summaries.push(RecurrenceSummary {
            p,
            samples: n,
            max_j: recs.iter().map(|r| r.j).max().unwrap_or(0),
            max_scaled: recs.iter().map(|r| r.scaled).fold(0.0, f64::max),
            mean_j_over_sqrt_p: recs.iter().map(|r| r.j_over_sqrt_p).sum::<f64>() / n.max(1) as f64,
            max_j_over_sqrt_p: recs.iter().map(|r| r.j_over_sqrt_p).fold(0.0, f64::max),
            all_within_p: recs.iter().all(|r| r.j <= p),
        });
        records.extend(recs);
    }
    Ok(RecurrenceScan {
        config: cfg.clone(),
        summaries,
        records,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityRecord {
    pub p: u64,
    pub a: u64,
    pub c: u64,
    pub r: u32,
    pub image_size: u64,
    /// `sum_k C_{r,k} N(r; k)`.
    pub zeros_via_moments: String,
    /// `p - #f^r(F_p)`.
    pub zeros_direct: u64,
    pub agree: bool,
    pub factorization: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IdentityReport {
    pub config: ExperimentConfig,
    pub records: Vec<IdentityRecord>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.agree && r.factorization)
    }
}

/// Checks `p - sum_k C_{r,k} N(r; k) = #f^r(F_p)` and the factorization of
/// `f^r(X) - f^r(Y)` for seeded maps, with no hypothesis on `f`.
pub fn identity_check(cfg: &ExperimentConfig) -> Result<IdentityReport> {
    if cfg.r_min > cfg.r_max {
        return Err(Error::InvalidLevel(cfg.r_min as i64));
    }
    let coeffs = (0..=cfg.r_max).map(falling_coeffs).collect::<Result<Vec<_>>>()?;
    let mut jobs = Vec::new();
    for ctx in cfg.contexts()? {
        jobs.extend(MapSampler::new(ctx, cfg.seed).take(cfg.samples));
    }
    let per_map: Vec<Result<Vec<IdentityRecord>>> = with_threads(cfg.threads, || {
        jobs.par_iter()
            .map(|f| {
                let p = f.context().p();
                let mut rho = vec![1u32; p as usize];
                let mut set = ImageSet::full(p);
                let mut out = Vec::new();
                for r in 0..=cfg.r_max {
                    if r > 0 {
                        let mut next = vec![0u32; p as usize];
                        for (x, &n) in rho.iter().enumerate() {
                            next[f.apply(x as u64) as usize] += n;
                        }
                        rho = next;
                        set = set.step(f);
                    }
                    if r < cfg.r_min {
                        continue;
                    }
                    let hist = PreimageHistogram::from_rho(p, r, &rho);
                    let zeros = zero_count_from_histogram(&hist, &coeffs[r as usize])?;
                    let zeros_direct = p - set.size();
                    out.push(IdentityRecord {
                        p,
                        a: f.a(),
                        c: f.c(),
                        r,
                        image_size: set.size(),
                        zeros_via_moments: zeros.to_string(),
                        zeros_direct,
                        agree: zeros == BigUint::from(zeros_direct),
                        factorization: verify_factorization(f, r),
                    });
                }
                Ok(out)
            })
            .collect()
    })?;
    let mut records = Vec::new();
    for r in per_map {
        records.extend(r?);
    }
    Ok(IdentityReport {
        config: cfg.clone(),
        records,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldContext;

    #[test]
    fn theorem1_low_levels_are_exact() {
        let cfg = ExperimentConfig::new(vec![101, 1009], 0, 2, 15, 3);
        let rep = theorem1_sweep(&cfg).unwrap();
        assert!(rep.passed());
        for rec in &rep.records {
            match rec.r {
                0 => assert_eq!(rec.deviation, "0"),
                1 => assert_eq!(rec.deviation, "1/2^1"),
                _ => {}
            }
        }
        assert_eq!(rep.records.len(), 2 * 15 * 3);
        assert_eq!(rep.summaries.len(), 6);
        for s in &rep.skipped {
            let f = QuadMap::new(FieldContext::new(s.p).unwrap(), s.a, s.c).unwrap();
            assert!(!critical_orbit_distinct(&f, 2).0);
        }
    }

    #[test]
    fn lemma1_low_levels_are_exact() {
        let cfg = ExperimentConfig::new(vec![1009], 0, 2, 10, 11);
        let rep = lemma1_sweep(&cfg).unwrap();
        assert!(rep.passed());
        for rec in &rep.records {
            assert_eq!(rec.first_moment_exact, Some(true));
            match rec.r {
                0 => assert_eq!(rec.deviation, "0"),
                1 => assert_eq!(rec.deviation, "-1"),
                _ => {}
            }
        }
    }

    #[test]
    fn sweeps_do_not_depend_on_threads() {
        let mut cfg = ExperimentConfig::new(vec![211], 1, 3, 12, 5);
        cfg.threads = 1;
        let a = lemma1_sweep(&cfg).unwrap();
        let t1 = theorem1_sweep(&cfg).unwrap();
        cfg.threads = 3;
        let b = lemma1_sweep(&cfg).unwrap();
        let t3 = theorem1_sweep(&cfg).unwrap();
        assert_eq!(a.records, b.records);
        assert_eq!(t1.records, t3.records);
    }

    #[test]
    fn calibrated_bound_is_exact() {
        // 10 * 4 * sqrt(100) = 400
        let p = 100;
        assert!(within_calibrated(&DyadicRational::from_integer(400), 10, 1, p));
        assert!(!within_calibrated(&DyadicRational::from_integer(401), 10, 1, p));
        assert!(within_calibrated(&DyadicRational::from_integer(-400), 10, 1, p));
        // 2^4 * 10 = 160
        assert!(within_proven(&DyadicRational::from_integer(160), 1, p));
        assert!(!within_proven(&DyadicRational::from_integer(161), 1, p));
    }

    #[test]
    fn recurrence_scan() {
        let cfg = ExperimentConfig::new(vec![101, 10007], 0, 0, 40, 9);
        let scan = corollary1_scan(&cfg).unwrap();
        assert!(scan.passed());
        assert_eq!(scan.records.len(), 80);
        let f = QuadMap::monic(FieldContext::new(101).unwrap(), 0);
        assert_eq!((first_recurrence(&f).i, first_recurrence(&f).j), (0, 1));
    }

    #[test]
    fn identity_holds_without_hypothesis() {
        let cfg = ExperimentConfig::new(vec![101, 211], 0, 4, 8, 1);
        let rep = identity_check(&cfg).unwrap();
        assert!(rep.passed());
        assert_eq!(rep.records.len(), 2 * 8 * 5);
    }
}

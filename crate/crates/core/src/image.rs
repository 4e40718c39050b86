//! Images of iterates, preimage counts `rho_r(m)` and their moments
//! `N(r; k) = sum_m rho_r(m)^k`.

use bitvec::prelude::*;
use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::CoefficientVector;
use crate::field::{PolyMap, QuadMap};
use crate::orbit::critical_orbit_distinct;

/// Default cap on working memory for the image and histogram passes.
pub const DEFAULT_MEMORY_BUDGET: u64 = 1 << 30;

/// Exact `N(r; k)`.
pub type MomentValue = BigUint;

/// A subset of `F_p` as a bit vector with cached population count.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImageSet {
    bits: BitVec<u64, Lsb0>,
    size: u64,
}

impl ImageSet {
    /// All of `F_p`.
    pub fn full(p: u64) -> Self {
        Self {
            bits: bitvec![u64, Lsb0; 1; p as usize],
            size: p,
        }
    }

    pub fn p(&self) -> u64 {
        self.bits.len() as u64
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    pub fn contains(&self, m: u64) -> bool {
        self.bits.get(m as usize).map(|b| *b).unwrap_or(false)
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.bits.iter_ones().map(|i| i as u64)
    }

    /// `f(S)`.
    pub fn step<M: PolyMap + ?Sized>(&self, f: &M) -> Self {
        let mut next = bitvec![u64, Lsb0; 0; self.bits.len()];
        for x in self.bits.iter_ones() {
            next.set(f.apply(x as u64) as usize, true);
        }
        let size = next.count_ones() as u64;
        Self { bits: next, size }
    }
}

fn check_budget(needed: u64, budget: u64) -> Result<()> {
    if needed > budget {
        return Err(Error::MemoryBudget { needed, budget });
    }
    Ok(())
}

/// `f^r(F_p)` by `r` image passes.
pub fn image_iterate<M: PolyMap + ?Sized>(f: &M, r: u32) -> Result<ImageSet> {
    image_iterate_with_budget(f, r, DEFAULT_MEMORY_BUDGET)
}

pub fn image_iterate_with_budget<M: PolyMap + ?Sized>(f: &M, r: u32, budget: u64) -> Result<ImageSet> {
    let p = f.context().p();
    // two live bit vectors
    check_budget(2 * p.div_ceil(8), budget)?;
    let mut set = ImageSet::full(p);
    for _ in 0..r {
        set = set.step(f);
    }
    Ok(set)
}

/// `rho_r(m)` for every `m`, by pushing counts forward `r` times.
pub fn rho_values<M: PolyMap + ?Sized>(f: &M, r: u32) -> Result<Vec<u32>> {
    let p = f.context().p();
    check_budget(8 * p, DEFAULT_MEMORY_BUDGET)?;
    let mut rho = vec![1u32; p as usize];
    let mut next = vec![0u32; p as usize];
    for _ in 0..r {
        next.iter_mut().for_each(|v| *v = 0);
        for (x, &n) in rho.iter().enumerate() {
            if n != 0 {
                next[f.apply(x as u64) as usize] += n;
            }
        }
        std::mem::swap(&mut rho, &mut next);
    }
    Ok(rho)
}

/// `counts[v] = #{m : rho_r(m) = v}` for `0 <= v <= min(2^r, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PreimageHistogram {
    pub p: u64,
    pub r: u32,
    pub counts: Vec<u64>,
}

impl PreimageHistogram {
    pub fn from_rho(p: u64, r: u32, rho: &[u32]) -> Self {
        let max = 1u64.checked_shl(r).unwrap_or(u64::MAX).min(p);
        let mut counts = vec![0u64; max as usize + 1];
        for &v in rho {
            counts[v as usize] += 1;
        }
        Self { p, r, counts }
    }

    pub fn zeros(&self) -> u64 {
        self.counts[0]
    }

    /// `N(r; k)`, with `0^0 = 1` so that `N(r; 0) = p`.
    pub fn moment(&self, k: u32) -> MomentValue {
        let v_max = self.counts.len() as u64 - 1;
        let v_bits = 64 - v_max.leading_zeros() as u64;
        let p_bits = 64 - self.p.leading_zeros() as u64;
        if v_bits * k as u64 + p_bits <= 126 {
            let s: u128 = self
                .counts
                .iter()
                .enumerate()
                .map(|(v, &n)| n as u128 * (v as u128).pow(k))
                .sum();
            return BigUint::from(s);
        }
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, &n)| n != 0)
            .map(|(v, &n)| BigUint::from(n) * BigUint::from(v).pow(k))
            .sum()
    }

    /// `N(r; 0), ..., N(r; k_max)`.
    pub fn moments(&self, k_max: u32) -> Vec<MomentValue> {
        (0..=k_max).map(|k| self.moment(k)).collect()
    }
}

pub fn rho_histogram<M: PolyMap + ?Sized>(f: &M, r: u32) -> Result<PreimageHistogram> {
    let rho = rho_values(f, r)?;
    Ok(PreimageHistogram::from_rho(f.context().p(), r, &rho))
}

pub fn moment<M: PolyMap + ?Sized>(f: &M, r: u32, k: u32) -> Result<MomentValue> {
    Ok(rho_histogram(f, r)?.moment(k))
}

/// `sum_k C_{r,k} N(r; k)`, the number of `m` with `rho_r(m) = 0`.
pub fn zero_count_via_moments<M: PolyMap + ?Sized>(
    f: &M,
    r: u32,
    coeffs: &CoefficientVector,
) -> Result<MomentValue> {
    zero_count_from_histogram(&rho_histogram(f, r)?, coeffs)
}

pub fn zero_count_from_histogram(
    hist: &PreimageHistogram,
    coeffs: &CoefficientVector,
) -> Result<MomentValue> {
    if coeffs.r() != hist.r {
        return Err(Error::CoefficientMismatch {
            expected: hist.r,
            found: coeffs.r(),
        });
    }
    let k_max = coeffs.coeffs().len() as u32 - 1;
    let total = coeffs.combine(&hist.moments(k_max))?;
    if !total.is_integer() || total.is_negative() {
        return Err(Error::NonIntegral("zero count from moments"));
    }
    Ok(total.to_integer().to_biguint().expect("nonnegative"))
}

/// `N(r; 2) - (r + 1) p`, refused unless `f^i(0)` are distinct for
/// `0 <= i <= r`.
pub fn lemma1_deviation(f: &QuadMap, r: u32) -> Result<i128> {
    if let (false, Some(pair)) = critical_orbit_distinct(f, r as u64) {
        return Err(Error::HypothesisFails(pair));
    }
    let n2 = moment(f, r, 2)?;
    let main = BigInt::from(r as u64 + 1) * BigInt::from(f.context().p());
    let dev = BigInt::from(n2) - main;
    Ok(dev.to_i128().expect("deviation fits i128"))
}

/// Fibres `{x : f^r(x) = m}` with at least two points, each sorted, in
/// increasing order of `m`.
pub fn fibres<M: PolyMap + ?Sized>(f: &M, r: u32) -> Vec<Vec<u64>> {
    let p = f.context().p();
    let mut tagged: Vec<(u64, u64)> = (0..p).map(|x| (f.iterate_raw(x, r as u64), x)).collect();
    tagged.sort_unstable();
    let mut out = Vec::new();
    let mut i = 0;
    while i < tagged.len() {
        let mut j = i + 1;
        while j < tagged.len() && tagged[j].0 == tagged[i].0 {
            j += 1;
        }
        if j - i >= 2 {
            out.push(tagged[i..j].iter().map(|&(_, x)| x).collect());
        }
        i = j;
    }
    out
}

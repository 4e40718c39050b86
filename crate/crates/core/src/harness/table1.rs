//! Cycle lengths of 0 under the cubic permutations `X^3 + c`.
//!
//! For `p = 2 mod 3` and each `c` in `1..p`, `l(c, p)` is the length of the
//! cycle through 0. The value `l / p` lies in `(0, 1]` and is counted in
//! bin `k = ceil(10 l / p)`, the interval `((k-1)/10, k/10]`.

use rayon::prelude::*;
use serde::Serialize;

use super::config::with_threads;
use crate::error::Result;
use crate::field::{CubicMap, FieldContext};
use crate::orbit::permutation_cycle_length;

pub const BINS: usize = 10;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Table1Report {
    pub p: u64,
    /// `bins[k-1]` counts `c` with `l(c, p) / p` in `((k-1)/10, k/10]`.
    pub bins: [u64; BINS],
    /// Pearson statistic against equal expected counts `(p-1)/10`.
    pub chi_square: f64,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Table1Row {
    pub p: u64,
    pub bin: usize,
    pub lower: f64,
    pub upper: f64,
    pub count: u64,
}

impl Table1Report {
    pub fn total(&self) -> u64 {
        self.bins.iter().sum()
    }

    pub fn rows(&self) -> Vec<Table1Row> {
        self.bins
            .iter()
            .enumerate()
            .map(|(i, &count)| Table1Row {
                p: self.p,
                bin: i + 1,
                lower: i as f64 / BINS as f64,
                upper: (i + 1) as f64 / BINS as f64,
                count,
            })
            .collect()
    }
}

/// Bin `ceil(10 l / p)` of a cycle length `1 <= l <= p`.
pub fn bin_index(l: u64, p: u64) -> usize {
    (BINS as u64 * l).div_ceil(p) as usize
}

/// `l(c, p)` for `c = 1..p-1`.
pub fn cycle_lengths(p: u64, threads: usize) -> Result<Vec<u64>> {
    let ctx = FieldContext::new(p)?;
    CubicMap::new(ctx, 0)?;
    with_threads(threads, || {
        (1..p)
            .into_par_iter()
            .map(|c| permutation_cycle_length(&CubicMap::new(ctx, c).expect("checked")))
            .collect()
    })
}

pub fn table1(p: u64, threads: usize) -> Result<Table1Report> {
    let mut bins = [0u64; BINS];
    for l in cycle_lengths(p, threads)? {
        bins[bin_index(l, p) - 1] += 1;
    }
    let expected = (p - 1) as f64 / BINS as f64;
    let chi_square = bins
        .iter()
        .map(|&b| (b as f64 - expected).powi(2) / expected)
        .sum();
    Ok(Table1Report { p, bins, chi_square })
}
